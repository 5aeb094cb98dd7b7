//! Exact integer kernel.
//!
//! Everything here works on [`BigUint`]. Factoring is trial division up to
//! 2^16 followed by Brent's variant of Pollard rho under a step budget;
//! primality is a strong-probable-prime test with a fixed base set that is
//! deterministic for every input below 3.3 * 10^24 (and so for all 64-bit
//! values).

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Trial division covers every prime up to this bound.
pub const TRIAL_DIVISION_BOUND: u64 = 1 << 16;

/// Rho iterations allowed by [`factorize`]. Ample for any 64-bit input.
pub const DEFAULT_FACTOR_BUDGET: u64 = 1 << 24;

/// Bases for the strong-probable-prime test. The first twelve make the test
/// exact below 3_317_044_064_679_887_385_961_981.
const SPRP_BASES: [u32; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

/// Canonical factorization: primes strictly increasing, exponents at least one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    factors: Vec<(BigUint, u32)>,
    value: BigUint,
}

impl Factorization {
    pub fn one() -> Self {
        Factorization {
            factors: Vec::new(),
            value: BigUint::one(),
        }
    }

    /// Builds a factorization from explicit prime powers, checking every
    /// invariant (ordering, exponents, primality).
    pub fn from_prime_powers<I>(powers: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BigUint, u32)>,
    {
        let mut factors: Vec<(BigUint, u32)> = Vec::new();
        for (p, a) in powers {
            if a == 0 {
                return Err(Error::invalid(format!("exponent of {p} must be positive")));
            }
            if !is_prime(&p) {
                return Err(Error::invalid(format!("{p} is not prime")));
            }
            if let Some((last, _)) = factors.last() {
                if *last >= p {
                    return Err(Error::invalid("primes must be strictly increasing"));
                }
            }
            factors.push((p, a));
        }
        Ok(Self::from_sorted(factors))
    }

    pub(crate) fn from_sorted(factors: Vec<(BigUint, u32)>) -> Self {
        let value = factors.iter().fold(BigUint::one(), |acc, (p, a)| {
            acc * num_traits::pow(p.clone(), *a as usize)
        });
        Factorization { factors, value }
    }

    fn from_map(map: BTreeMap<BigUint, u32>) -> Self {
        Self::from_sorted(map.into_iter().filter(|(_, a)| *a > 0).collect())
    }

    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, a)| *a == 1)
    }

    /// μ of the factored value.
    pub fn mobius(&self) -> i8 {
        if !self.is_squarefree() {
            0
        } else if self.factors.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Factorization of the lcm (exponent-wise maximum).
    pub fn lcm(&self, other: &Factorization) -> Factorization {
        let mut map: BTreeMap<BigUint, u32> = self.factors.iter().cloned().collect();
        for (p, a) in &other.factors {
            let slot = map.entry(p.clone()).or_insert(0);
            *slot = (*slot).max(*a);
        }
        Self::from_map(map)
    }

    /// Factorization of the product (exponent-wise sum).
    pub fn mul(&self, other: &Factorization) -> Factorization {
        let mut map: BTreeMap<BigUint, u32> = self.factors.iter().cloned().collect();
        for (p, a) in &other.factors {
            *map.entry(p.clone()).or_insert(0) += *a;
        }
        Self::from_map(map)
    }

    /// Factorization of `self.value() / d`, assuming `d` divides the value.
    pub(crate) fn quotient(&self, d: &BigUint) -> Factorization {
        let mut d = d.clone();
        let mut out = Vec::with_capacity(self.factors.len());
        for (p, a) in &self.factors {
            let mut a = *a;
            while a > 0 && d.is_multiple_of(p) {
                d /= p;
                a -= 1;
            }
            if a > 0 {
                out.push((p.clone(), a));
            }
        }
        debug_assert!(d.is_one(), "quotient by a non-divisor");
        Self::from_sorted(out)
    }

    /// Squarefree divisors `s` paired with μ(s), in increasing order of `s`.
    pub fn squarefree_divisors(&self) -> Vec<(BigUint, i8)> {
        let mut out = vec![(BigUint::one(), 1i8)];
        for (p, _) in &self.factors {
            let extra: Vec<_> = out.iter().map(|(s, mu)| (s * p, -mu)).collect();
            out.extend(extra);
        }
        out.sort();
        out
    }

    /// All divisors in strictly increasing order.
    pub fn divisors(&self) -> Vec<BigUint> {
        let mut out = vec![BigUint::one()];
        for (p, a) in &self.factors {
            let len = out.len();
            let mut power = BigUint::one();
            for _ in 0..*a {
                power *= p;
                for i in 0..len {
                    let d = &out[i] * &power;
                    out.push(d);
                }
            }
        }
        out.sort();
        out
    }
}

pub fn gcd(a: &BigUint, b: &BigUint) -> BigUint {
    // num-integer already returns gcd(0, m) = m.
    a.gcd(b)
}

pub fn lcm(a: &BigUint, b: &BigUint) -> BigUint {
    a.lcm(b)
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// `a * b mod m` without overflow.
pub fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn mod_pow(base: &BigUint, exp: &BigUint, modulus: &BigUint) -> Result<BigUint> {
    if *modulus < BigUint::from(2u32) {
        return Err(Error::invalid("modulus must be at least 2"));
    }
    Ok(base.modpow(exp, modulus))
}

/// Strong-probable-prime test; exact for every n below 3.3 * 10^24.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        if small < 2 {
            return false;
        }
        for &b in &SPRP_BASES {
            let b = b as u64;
            if small == b {
                return true;
            }
            if small % b == 0 {
                return false;
            }
        }
    } else if SPRP_BASES
        .iter()
        .any(|&b| n.is_multiple_of(&BigUint::from(b)))
    {
        return false;
    }

    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'bases: for &b in &SPRP_BASES {
        let mut x = BigUint::from(b).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = &x * &x % n;
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

pub fn factorize(n: &BigUint) -> Result<Factorization> {
    factorize_with_budget(n, DEFAULT_FACTOR_BUDGET)
}

pub fn factorize_u64(n: u64) -> Factorization {
    // Rho on a 64-bit composite needs ~2^16 steps; an unbounded budget cannot stall.
    factorize_with_budget(&BigUint::from(n), u64::MAX).expect("64-bit values always factor")
}

/// Trial division to [`TRIAL_DIVISION_BOUND`], then Pollard–Brent rho limited
/// to `budget` iterations in total.
pub fn factorize_with_budget(n: &BigUint, budget: u64) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::invalid("cannot factor zero"));
    }
    let mut found: BTreeMap<BigUint, u32> = BTreeMap::new();
    let rest = trial_divide(n, &mut found);

    let trial_square = BigUint::from(TRIAL_DIVISION_BOUND) * BigUint::from(TRIAL_DIVISION_BOUND);
    let mut steps_left = budget;
    let mut pending = vec![rest];
    while let Some(m) = pending.pop() {
        if m.is_one() {
            continue;
        }
        if m < trial_square || is_prime(&m) {
            *found.entry(m).or_insert(0) += 1;
            continue;
        }
        match pollard_brent(&m, &mut steps_left) {
            Some(d) => {
                let other = &m / &d;
                pending.push(d);
                pending.push(other);
            }
            None => {
                let remaining = pending.iter().fold(m, |acc, x| acc * x);
                return Err(Error::FactoringFailed {
                    partial: Factorization::from_map(found),
                    remaining,
                });
            }
        }
    }
    Ok(Factorization::from_map(found))
}

fn trial_divide(n: &BigUint, found: &mut BTreeMap<BigUint, u32>) -> BigUint {
    if let Some(mut m) = n.to_u64() {
        let mut d = 2u64;
        while d <= TRIAL_DIVISION_BOUND && d * d <= m {
            while m % d == 0 {
                m /= d;
                *found.entry(BigUint::from(d)).or_insert(0) += 1;
            }
            d += if d == 2 { 1 } else { 2 };
        }
        if m > 1 && m < (d * d) {
            *found.entry(BigUint::from(m)).or_insert(0) += 1;
            m = 1;
        }
        return BigUint::from(m);
    }
    let mut m = n.clone();
    let mut d = 2u32;
    while (d as u64) <= TRIAL_DIVISION_BOUND {
        let big_d = BigUint::from(d);
        while (&m % d).is_zero() {
            m /= &big_d;
            *found.entry(big_d.clone()).or_insert(0) += 1;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    m
}

/// Finds a nontrivial factor of the odd composite `n`, or `None` once
/// `steps_left` reaches zero.
fn pollard_brent(n: &BigUint, steps_left: &mut u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    const BATCH: u64 = 128;
    let one = BigUint::one();
    let abs_diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };

    for c in 1u32.. {
        let c = BigUint::from(c);
        let step = |v: &BigUint| (v * v + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut g = one.clone();
        let mut q = one.clone();
        let mut r: u64 = 1;

        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = step(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let batch = BATCH.min(r - k);
                if *steps_left < batch {
                    *steps_left = 0;
                    return None;
                }
                *steps_left -= batch;
                for _ in 0..batch {
                    y = step(&y);
                    q = q * abs_diff(&x, &y) % n;
                }
                g = q.gcd(n);
                k += batch;
            }
            r *= 2;
        }
        if g == *n {
            loop {
                ys = step(&ys);
                g = abs_diff(&x, &ys).gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if g != *n {
            return Some(g);
        }
    }
    unreachable!()
}

pub fn divisors(f: &Factorization) -> Vec<BigUint> {
    f.divisors()
}

pub fn mobius(n: u64) -> i8 {
    assert!(n >= 1, "mobius is defined for positive integers");
    factorize_u64(n).mobius()
}

pub fn euler_phi(f: &Factorization) -> BigUint {
    f.factors().iter().fold(BigUint::one(), |acc, (p, a)| {
        acc * num_traits::pow(p.clone(), (*a - 1) as usize) * (p - 1u32)
    })
}

/// Exponent of the unit group modulo `f.value()`.
pub fn carmichael_lambda(f: &Factorization) -> BigUint {
    let two = BigUint::from(2u32);
    f.factors().iter().fold(BigUint::one(), |acc, (p, a)| {
        let part = if *p == two && *a >= 3 {
            num_traits::pow(two.clone(), (*a - 2) as usize)
        } else {
            num_traits::pow(p.clone(), (*a - 1) as usize) * (p - 1u32)
        };
        acc.lcm(&part)
    })
}

/// Smallest `d >= 1` with `a^d ≡ 1 (mod m)`.
pub fn multiplicative_order(a: &BigUint, m: &BigUint) -> Result<BigUint> {
    if *m < BigUint::from(2u32) {
        return Err(Error::invalid("modulus must be at least 2"));
    }
    if !a.gcd(m).is_one() {
        return Err(Error::invalid(format!("{a} is not a unit modulo {m}")));
    }
    let lambda = carmichael_lambda(&factorize(m)?);
    let lambda_f = factorize(&lambda)?;
    Ok(order_dividing(a, m, &lambda_f).value().clone())
}

/// Order of `a` modulo `m`, given a factored exponent `multiple` with
/// `a^multiple ≡ 1`. Trims one prime at a time and returns the order
/// already factored. For `m = 1` the order is 1.
pub fn order_dividing(a: &BigUint, m: &BigUint, multiple: &Factorization) -> Factorization {
    if let (Some(a), Some(m), Some(_)) = (a.to_u64(), m.to_u64(), multiple.value().to_u64()) {
        return order_dividing_u64(a, m, multiple);
    }
    let target = BigUint::one() % m;
    debug_assert_eq!(a.modpow(multiple.value(), m), target);
    let mut order = multiple.value().clone();
    let mut out = Vec::with_capacity(multiple.factors().len());
    for (p, a_exp) in multiple.factors() {
        let mut kept = *a_exp;
        while kept > 0 {
            let candidate = &order / p;
            if a.modpow(&candidate, m) == target {
                order = candidate;
                kept -= 1;
            } else {
                break;
            }
        }
        if kept > 0 {
            out.push((p.clone(), kept));
        }
    }
    Factorization::from_sorted(out)
}

fn order_dividing_u64(a: u64, m: u64, multiple: &Factorization) -> Factorization {
    let target = 1 % m;
    let mut order = multiple.value().to_u64().expect("checked by caller");
    debug_assert_eq!(pow_mod_u64(a, order, m), target);
    let mut out = Vec::with_capacity(multiple.factors().len());
    for (p, a_exp) in multiple.factors() {
        let p_small = p.to_u64().expect("divides a u64");
        let mut kept = *a_exp;
        while kept > 0 && pow_mod_u64(a, order / p_small, m) == target {
            order /= p_small;
            kept -= 1;
        }
        if kept > 0 {
            out.push((p.clone(), kept));
        }
    }
    Factorization::from_sorted(out)
}

/// Unique `x` in `[0, ∏ moduli)` matching every `(residue, modulus)` pair.
pub fn crt_combine(congruences: &[(BigUint, BigUint)]) -> Result<BigUint> {
    let mut x = BigInt::zero();
    let mut modulus = BigInt::one();
    for (r, m) in congruences {
        if m.is_zero() {
            return Err(Error::invalid("moduli must be positive"));
        }
        let m = BigInt::from(m.clone());
        let ext = modulus.extended_gcd(&m);
        if !ext.gcd.is_one() {
            return Err(Error::invalid("moduli are not pairwise coprime"));
        }
        // x + modulus * t ≡ r (mod m)  with  t = (r - x) * modulus^{-1} mod m
        let r = BigInt::from(r.clone());
        let t = ((&r - &x) * ext.x).mod_floor(&m);
        x += &modulus * t;
        modulus *= &m;
        x = x.mod_floor(&modulus);
    }
    Ok(x.to_biguint().expect("reduced residue is nonnegative"))
}

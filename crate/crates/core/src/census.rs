//! Closed-form counts of periodic points of `x -> x^e (mod n)` and of the
//! related unit-group statistics, all obtained by Möbius inversion over
//! divisor lattices.
//!
//! Two of the textbook product formulas need care at the prime 2 and for
//! the "x^r ≡ x" census; the uncorrected versions are kept as
//! [`uncorrected_roots_of_unity_count`] and [`uncorrected_quasi_order_sum`]
//! so the discrepancy stays visible in tests.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{self, Factorization};
use crate::error::{Error, Result};

/// An RSA modulus `n = p q` together with a public exponent `e`.
///
/// Construction checks that `p` and `q` are distinct odd primes and that
/// `gcd(e, λ(n)) = 1`, which is exactly what makes `x -> x^e` a permutation
/// of `Z_n`. The classical requirement `gcd(e, φ(n)) = 1` is reported by
/// [`RsaInstance::gcd_e_phi_ok`]; since `λ(n)` and `φ(n)` have the same prime
/// divisors it holds on every constructed instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RsaInstance {
    p: BigUint,
    q: BigUint,
    n: BigUint,
    e: BigUint,
    phi: BigUint,
    lambda: BigUint,
    p_minus_1: Factorization,
    q_minus_1: Factorization,
    k_max: Factorization,
    gcd_e_phi_ok: bool,
}

impl RsaInstance {
    pub fn new(p: BigUint, q: BigUint, e: BigUint) -> Result<Self> {
        for prime in [&p, &q] {
            if !arith::is_prime(prime) || prime.is_even() {
                return Err(Error::invalid(format!("{prime} is not an odd prime")));
            }
        }
        if p == q {
            return Err(Error::invalid("p and q must be distinct"));
        }
        if e.is_zero() {
            return Err(Error::invalid("e must be positive"));
        }
        let p_minus_1 = arith::factorize(&(&p - 1u32))?;
        let q_minus_1 = arith::factorize(&(&q - 1u32))?;
        let lambda_f = p_minus_1.lcm(&q_minus_1);
        let lambda = lambda_f.value().clone();
        if !e.gcd(&lambda).is_one() {
            return Err(Error::invalid(format!(
                "gcd(e, λ(n)) = gcd({e}, {lambda}) ≠ 1"
            )));
        }
        let phi = p_minus_1.value() * q_minus_1.value();
        let gcd_e_phi_ok = e.gcd(&phi).is_one();

        // λ(λ(n)) is a multiple of ord_λ(e); factor it through the primes of λ.
        let mut lambda_of_lambda = Factorization::one();
        for (l, a) in lambda_f.factors() {
            let part = if *l == BigUint::from(2u32) {
                match a {
                    1 => Factorization::one(),
                    2 => arith::factorize_u64(2),
                    _ => Factorization::from_prime_powers([(l.clone(), a - 2)])?,
                }
            } else {
                let mut part = arith::factorize(&(l - 1u32))?;
                if *a > 1 {
                    part = part.mul(&Factorization::from_prime_powers([(l.clone(), a - 1)])?);
                }
                part
            };
            lambda_of_lambda = lambda_of_lambda.lcm(&part);
        }
        let k_max = arith::order_dividing(&(&e % &lambda), &lambda, &lambda_of_lambda);

        Ok(RsaInstance {
            n: &p * &q,
            p,
            q,
            e,
            phi,
            lambda,
            p_minus_1,
            q_minus_1,
            k_max,
            gcd_e_phi_ok,
        })
    }

    pub fn from_u64(p: u64, q: u64, e: u64) -> Result<Self> {
        Self::new(BigUint::from(p), BigUint::from(q), BigUint::from(e))
    }

    /// Factors `n` (default budget) and builds the instance; `n` must be a
    /// product of two distinct odd primes.
    pub fn from_modulus(n: &BigUint, e: BigUint) -> Result<Self> {
        Self::from_modulus_with_budget(n, e, arith::DEFAULT_FACTOR_BUDGET)
    }

    pub fn from_modulus_with_budget(n: &BigUint, e: BigUint, budget: u64) -> Result<Self> {
        let f = arith::factorize_with_budget(n, budget)?;
        match f.factors() {
            [(p, 1), (q, 1)] => Self::new(p.clone(), q.clone(), e),
            _ => Err(Error::invalid(format!(
                "{n} is not a product of two distinct primes"
            ))),
        }
    }

    pub fn p(&self) -> &BigUint {
        &self.p
    }
    pub fn q(&self) -> &BigUint {
        &self.q
    }
    pub fn n(&self) -> &BigUint {
        &self.n
    }
    pub fn e(&self) -> &BigUint {
        &self.e
    }
    pub fn phi(&self) -> &BigUint {
        &self.phi
    }
    pub fn lambda(&self) -> &BigUint {
        &self.lambda
    }
    pub fn gcd_e_phi_ok(&self) -> bool {
        self.gcd_e_phi_ok
    }
    pub(crate) fn p_minus_1(&self) -> &Factorization {
        &self.p_minus_1
    }
    pub(crate) fn q_minus_1(&self) -> &Factorization {
        &self.q_minus_1
    }

    /// Factorization of [`max_period`].
    pub fn max_period_factorization(&self) -> &Factorization {
        &self.k_max
    }

    /// Factorization of a period `k`, reusing the one of `K_max` when `k | K_max`.
    pub(crate) fn period_factorization(&self, k: &BigUint) -> Result<Factorization> {
        if k.is_zero() {
            return Err(Error::invalid("periods are positive"));
        }
        let k_max = self.k_max.value();
        if k_max.is_multiple_of(k) {
            Ok(self.k_max.quotient(&(k_max / k)))
        } else {
            arith::factorize(k)
        }
    }
}

/// Per-`k` counts of points of exact period `k`, over the units (`T_k`) and
/// over all of `Z_n` (`E_k`), for every `k | K_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactOrderCensus {
    pub k_max: BigUint,
    pub unit_counts: BTreeMap<BigUint, BigUint>,
    pub all_counts: BTreeMap<BigUint, BigUint>,
}

impl ExactOrderCensus {
    /// `(k, T_k, E_k)` in increasing `k`.
    pub fn rows(&self) -> impl Iterator<Item = (&BigUint, &BigUint, &BigUint)> {
        self.all_counts.iter().map(move |(k, e)| {
            let t = self
                .unit_counts
                .get(k)
                .expect("unit and total censuses share keys");
            (k, t, e)
        })
    }
}

/// `∑_{s | rad k} μ(s) g(k / s)`, i.e. the Möbius inverse of `g` evaluated at `k`.
fn mobius_invert<F>(k: &Factorization, mut g: F) -> BigInt
where
    F: FnMut(&BigUint) -> BigUint,
{
    let mut total = BigInt::zero();
    for (s, mu) in k.squarefree_divisors() {
        let term = BigInt::from(g(&(k.value() / &s)));
        if mu > 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn into_count(total: BigInt) -> BigUint {
    total
        .to_biguint()
        .expect("Möbius-inverted cardinality must be nonnegative")
}

/// `gcd(e^d - 1, m)` without materializing `e^d`.
fn gcd_power_minus_one(e: &BigUint, d: &BigUint, m: &BigUint) -> BigUint {
    if m.is_one() {
        return BigUint::one();
    }
    let r = e.modpow(d, m);
    let shifted = (r + m - 1u32) % m;
    shifted.gcd(m)
}

/// Number of units `x` modulo `f.value()` with `x^r ≡ 1`. Uses the actual
/// unit-group structure, so `2^a` with `a >= 3` contributes
/// `(r, 2) (r, 2^(a-2))` rather than `(r, 2^(a-1))`.
pub fn roots_of_unity_count(r: &BigUint, f: &Factorization) -> BigUint {
    let two = BigUint::from(2u32);
    f.factors().iter().fold(BigUint::one(), |acc, (p, a)| {
        let local = if *p == two && *a >= 3 {
            r.gcd(&two) * r.gcd(&num_traits::pow(two.clone(), (*a - 2) as usize))
        } else {
            let phi = num_traits::pow(p.clone(), (*a - 1) as usize) * (p - 1u32);
            r.gcd(&phi)
        };
        acc * local
    })
}

/// The plain product `∏ (r, φ(p^a))`. Wrong whenever `8 | n`; kept only to
/// document that discrepancy.
pub fn uncorrected_roots_of_unity_count(r: &BigUint, f: &Factorization) -> BigUint {
    f.factors().iter().fold(BigUint::one(), |acc, (p, a)| {
        let phi = num_traits::pow(p.clone(), (*a - 1) as usize) * (p - 1u32);
        acc * r.gcd(&phi)
    })
}

/// `|{x ∈ Z_n* : x^(e^k) ≡ x}| = (e^k - 1, p - 1)(e^k - 1, q - 1)`.
pub fn cumulative_unit_fixed_count(inst: &RsaInstance, k: &BigUint) -> BigUint {
    gcd_power_minus_one(inst.e(), k, inst.p_minus_1().value())
        * gcd_power_minus_one(inst.e(), k, inst.q_minus_1().value())
}

/// Units of exact period `k` under `x -> x^e`.
pub fn exact_order_unit_count(inst: &RsaInstance, k: &BigUint) -> Result<BigUint> {
    let kf = inst.period_factorization(k)?;
    Ok(into_count(mobius_invert(&kf, |d| {
        cumulative_unit_fixed_count(inst, d)
    })))
}

/// Residues of `Z_n` (units, multiples of `p` or `q`, and 0) of exact period `k`.
pub fn exact_order_all_count(inst: &RsaInstance, k: &BigUint) -> Result<BigUint> {
    let kf = inst.period_factorization(k)?;
    Ok(into_count(mobius_invert(&kf, |d| {
        (gcd_power_minus_one(inst.e(), d, inst.p_minus_1().value()) + 1u32)
            * (gcd_power_minus_one(inst.e(), d, inst.q_minus_1().value()) + 1u32)
    })))
}

/// Units modulo the odd prime `prime` of exact period `k` under `x -> x^e`.
pub fn per_prime_exact_order_count(prime: &BigUint, e: &BigUint, k: &BigUint) -> Result<BigUint> {
    if !arith::is_prime(prime) || prime.is_even() {
        return Err(Error::invalid(format!("{prime} is not an odd prime")));
    }
    let m = prime - 1u32;
    if !e.gcd(&m).is_one() {
        return Err(Error::invalid(format!("gcd({e}, {m}) ≠ 1")));
    }
    let kf = arith::factorize(k)?;
    Ok(into_count(mobius_invert(&kf, |d| {
        gcd_power_minus_one(e, d, &m)
    })))
}

/// `|{x ∈ Z_n* : ord_n(x) = r}|`.
pub fn elements_of_order_count(f: &Factorization, r: &BigUint) -> Result<BigUint> {
    let rf = arith::factorize(r)?;
    Ok(into_count(mobius_invert(&rf, |d| {
        roots_of_unity_count(d, f)
    })))
}

/// `|{x ∈ Z_n : x^d ≡ x}|`.
///
/// For `d >= 2` the only non-unit solution modulo a prime power is 0, so each
/// prime power contributes `1 + #{units with x^(d-1) = 1}`.
///
/// # Panics
/// If `d` is zero.
pub fn poly_fixed_count(d: &BigUint, f: &Factorization) -> BigUint {
    assert!(!d.is_zero(), "exponent must be positive");
    if d.is_one() {
        return f.value().clone();
    }
    let d_minus_1 = d - 1u32;
    f.factors().iter().fold(BigUint::one(), |acc, pa| {
        let single = Factorization::from_sorted(vec![pa.clone()]);
        acc * (roots_of_unity_count(&d_minus_1, &single) + 1u32)
    })
}

/// Number of `x ∈ Z_n` for which `r` is the smallest integer `>= 2` with
/// `x^r ≡ x`. Inverts [`poly_fixed_count`] over the divisors of `r - 1`.
pub fn exact_quasi_order_count(f: &Factorization, r: &BigUint) -> Result<BigUint> {
    if *r < BigUint::from(2u32) {
        return Err(Error::invalid("quasi-order is at least 2"));
    }
    let lf = arith::factorize(&(r - 1u32))?;
    Ok(into_count(mobius_invert(&lf, |l| {
        poly_fixed_count(&(l + 1u32), f)
    })))
}

/// `∑_{d | r} μ(r/d) ∏ (1 + (d - 1, φ(p^a)))`, inverted over divisors of `r`
/// instead of `r - 1`. Goes negative (e.g. -11 at n = 15, r = 2).
pub fn uncorrected_quasi_order_sum(f: &Factorization, r: &BigUint) -> Result<BigInt> {
    let rf = arith::factorize(r)?;
    Ok(mobius_invert(&rf, |d| {
        let d_minus_1 = d - 1u32;
        f.factors().iter().fold(BigUint::one(), |acc, (p, a)| {
            let phi = num_traits::pow(p.clone(), (*a - 1) as usize) * (p - 1u32);
            acc * (d_minus_1.gcd(&phi) + 1u32)
        })
    }))
}

/// `K_max = ord_λ(n)(e)`: every period divides it.
pub fn max_period(inst: &RsaInstance) -> BigUint {
    inst.max_period_factorization().value().clone()
}

/// `T_k` and `E_k` for every divisor `k` of `K_max`.
pub fn full_census(inst: &RsaInstance) -> ExactOrderCensus {
    let kf = inst.max_period_factorization();
    let mut cumulative: HashMap<BigUint, (BigUint, BigUint)> = HashMap::new();
    for d in kf.divisors() {
        let a = gcd_power_minus_one(inst.e(), &d, inst.p_minus_1().value());
        let b = gcd_power_minus_one(inst.e(), &d, inst.q_minus_1().value());
        cumulative.insert(d, (a, b));
    }

    let mut unit_counts = BTreeMap::new();
    let mut all_counts = BTreeMap::new();
    for k in kf.divisors() {
        let k_f = kf.quotient(&(kf.value() / &k));
        let t = mobius_invert(&k_f, |d| {
            let (a, b) = &cumulative[d];
            a * b
        });
        let e = mobius_invert(&k_f, |d| {
            let (a, b) = &cumulative[d];
            (a + 1u32) * (b + 1u32)
        });
        unit_counts.insert(k.clone(), into_count(t));
        all_counts.insert(k, into_count(e));
    }
    ExactOrderCensus {
        k_max: kf.value().clone(),
        unit_counts,
        all_counts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factorize_u64;
    use crate::oracle;
    use proptest::prelude::*;

    fn b(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn inst(p: u64, q: u64, e: u64) -> RsaInstance {
        RsaInstance::from_u64(p, q, e).unwrap()
    }

    fn brute_units_fixed(inst: &RsaInstance, k: u32) -> u64 {
        let n = inst.n();
        let exp = inst.e().pow(k);
        (1..n.iter_u64_digits().next().unwrap())
            .filter(|&x| BigUint::from(x).gcd(n).is_one())
            .filter(|&x| BigUint::from(x).modpow(&exp, n) == b(x))
            .count() as u64
    }

    #[test]
    fn instance_validation() {
        assert!(RsaInstance::from_u64(5, 7, 5).is_ok());
        assert!(RsaInstance::from_u64(5, 7, 4).is_err());
        assert!(RsaInstance::from_u64(5, 5, 5).is_err());
        assert!(RsaInstance::from_u64(2, 7, 5).is_err());
        assert!(RsaInstance::from_u64(9, 7, 5).is_err());
        assert!(RsaInstance::from_u64(5, 7, 0).is_err());
        let i = RsaInstance::from_u64(5, 11, 5).unwrap_err();
        assert!(matches!(i, Error::InvalidArgument(_)));
        assert!(RsaInstance::from_modulus(&b(35), b(5)).is_ok());
        assert!(RsaInstance::from_modulus(&b(45), b(5)).is_err());
    }

    #[test]
    fn lambda_and_phi_share_primes() {
        // λ(n) and φ(n) have the same prime divisors, so the flag can never
        // be false on a constructed instance.
        for e in 1..200u64 {
            if let Ok(i) = RsaInstance::from_u64(11, 31, e) {
                assert!(i.gcd_e_phi_ok());
            }
        }
    }

    #[test]
    fn roots_of_unity_examples() {
        assert_eq!(roots_of_unity_count(&b(1), &factorize_u64(35)), b(1));
        assert_eq!(roots_of_unity_count(&b(2), &factorize_u64(15)), b(4));
        assert_eq!(roots_of_unity_count(&b(2), &factorize_u64(8)), b(4));
        assert_eq!(
            uncorrected_roots_of_unity_count(&b(2), &factorize_u64(8)),
            b(2)
        );
    }

    #[test]
    fn cumulative_examples() {
        let i = inst(5, 7, 5);
        assert_eq!(
            cumulative_unit_fixed_count(&i, &b(1)),
            b(brute_units_fixed(&i, 1))
        );
        assert_eq!(cumulative_unit_fixed_count(&i, &b(1)), b(8));
        assert_eq!(
            cumulative_unit_fixed_count(&i, &b(2)),
            b(brute_units_fixed(&i, 2))
        );
        assert_eq!(cumulative_unit_fixed_count(&i, &b(2)), b(24));
        let id = inst(5, 7, 1);
        assert_eq!(cumulative_unit_fixed_count(&id, &b(1)), b(24));
    }

    #[test]
    fn exact_order_examples() {
        let i = inst(5, 7, 5);
        assert_eq!(exact_order_unit_count(&i, &b(1)).unwrap(), b(8));
        assert_eq!(exact_order_unit_count(&i, &b(2)).unwrap(), b(16));
        assert_eq!(exact_order_unit_count(&i, &b(3)).unwrap(), b(0));
        assert_eq!(exact_order_all_count(&i, &b(1)).unwrap(), b(15));
        assert_eq!(exact_order_all_count(&i, &b(2)).unwrap(), b(20));
        assert_eq!(exact_order_all_count(&inst(5, 7, 1), &b(1)).unwrap(), b(35));
        assert!(exact_order_all_count(&i, &b(0)).is_err());
    }

    #[test]
    fn per_prime_examples() {
        assert_eq!(
            per_prime_exact_order_count(&b(5), &b(5), &b(1)).unwrap(),
            b(4)
        );
        assert_eq!(
            per_prime_exact_order_count(&b(7), &b(5), &b(1)).unwrap(),
            b(2)
        );
        assert_eq!(
            per_prime_exact_order_count(&b(7), &b(5), &b(2)).unwrap(),
            b(4)
        );
        assert!(per_prime_exact_order_count(&b(7), &b(3), &b(1)).is_err());
        assert!(per_prime_exact_order_count(&b(9), &b(5), &b(1)).is_err());
    }

    #[test]
    fn element_order_examples() {
        assert_eq!(
            elements_of_order_count(&factorize_u64(7), &b(3)).unwrap(),
            b(2)
        );
        assert_eq!(
            elements_of_order_count(&factorize_u64(8), &b(2)).unwrap(),
            b(3)
        );
        for n in [5u64, 12, 35, 64] {
            assert_eq!(
                elements_of_order_count(&factorize_u64(n), &b(1)).unwrap(),
                b(1)
            );
        }
    }

    #[test]
    fn poly_fixed_examples() {
        let f = factorize_u64(15);
        assert_eq!(poly_fixed_count(&b(1), &f), b(15));
        assert_eq!(poly_fixed_count(&b(2), &f), b(4));
        assert_eq!(poly_fixed_count(&b(3), &f), b(9));
        assert_eq!(poly_fixed_count(&b(1), &factorize_u64(9)), b(9));
    }

    #[test]
    fn quasi_order_examples() {
        let f = factorize_u64(15);
        assert_eq!(exact_quasi_order_count(&f, &b(2)).unwrap(), b(4));
        assert_eq!(exact_quasi_order_count(&f, &b(3)).unwrap(), b(5));
        assert_eq!(exact_quasi_order_count(&f, &b(4)).unwrap(), b(0));
        assert!(exact_quasi_order_count(&f, &b(1)).is_err());
        assert_eq!(
            uncorrected_quasi_order_sum(&f, &b(2)).unwrap(),
            BigInt::from(-11)
        );
    }

    #[test]
    fn max_period_examples() {
        assert_eq!(max_period(&inst(5, 7, 5)), b(2));
        assert_eq!(max_period(&inst(5, 7, 13)), b(1));
        assert_eq!(max_period(&inst(3, 5, 7)), b(2));
        assert_eq!(max_period(&inst(5, 7, 11)), b(2));
    }

    #[test]
    fn census_examples() {
        let c = full_census(&inst(5, 7, 5));
        assert_eq!(c.k_max, b(2));
        assert_eq!(c.unit_counts, BTreeMap::from([(b(1), b(8)), (b(2), b(16))]));
        assert_eq!(c.all_counts, BTreeMap::from([(b(1), b(15)), (b(2), b(20))]));
        assert_eq!(
            c,
            oracle::brute_power_map_census(&inst(5, 7, 5), oracle::DEFAULT_LIMIT).unwrap()
        );

        let id = full_census(&inst(5, 7, 13));
        assert_eq!(id.unit_counts, BTreeMap::from([(b(1), b(24))]));
        assert_eq!(id.all_counts, BTreeMap::from([(b(1), b(35))]));

        let c = full_census(&inst(5, 7, 11));
        assert_eq!(c.k_max, b(2));
        assert_eq!(c.all_counts.values().sum::<BigUint>(), b(35));
    }

    #[test]
    fn large_exponent_does_not_overflow() {
        // e = 65537 and d = 4 would need 64+ bits for e^d - 1.
        let i = inst(1_000_003, 1_000_033, 65537);
        let c = full_census(&i);
        assert_eq!(c.all_counts.values().sum::<BigUint>(), i.n().clone());
        assert_eq!(c.unit_counts.values().sum::<BigUint>(), i.phi().clone());
    }

    #[test]
    fn beyond_k_max_is_zero() {
        let i = inst(5, 7, 5);
        for k in [3u64, 4, 5, 6, 12, 24] {
            assert!(
                exact_order_all_count(&i, &b(k)).unwrap().is_zero(),
                "k = {k}"
            );
            assert!(
                exact_order_unit_count(&i, &b(k)).unwrap().is_zero(),
                "k = {k}"
            );
        }
    }

    fn small_instances() -> impl Strategy<Value = RsaInstance> {
        let primes: Vec<u64> = (3..120u64).filter(|&p| arith::is_prime(&b(p))).collect();
        (
            prop::sample::select(primes.clone()),
            prop::sample::select(primes),
            1u64..500,
        )
            .prop_filter_map("valid instance", |(p, q, e)| {
                RsaInstance::from_u64(p, q, e).ok()
            })
    }

    proptest! {
        #[test]
        fn units_partition_cumulative(i in small_instances(), k in 1u64..=24) {
            let total: BigUint = arith::factorize_u64(k)
                .divisors()
                .iter()
                .map(|d| exact_order_unit_count(&i, d).unwrap())
                .sum();
            prop_assert_eq!(total, cumulative_unit_fixed_count(&i, &b(k)));
        }

        #[test]
        fn crt_decomposition_identity(i in small_instances(), k in 1u64..=24) {
            let k = b(k);
            let extra = if k.is_one() { 1u32 } else { 0 };
            let lhs = exact_order_all_count(&i, &k).unwrap();
            let rhs = exact_order_unit_count(&i, &k).unwrap()
                + per_prime_exact_order_count(i.p(), i.e(), &k).unwrap()
                + per_prime_exact_order_count(i.q(), i.e(), &k).unwrap()
                + extra;
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn lcm_convolution(i in small_instances(), k in 1u64..=24) {
            let divs = arith::factorize_u64(k).divisors();
            let mut total = BigUint::zero();
            for x in &divs {
                for y in &divs {
                    if x.lcm(y) == b(k) {
                        total += per_prime_exact_order_count(i.p(), i.e(), x).unwrap()
                            * per_prime_exact_order_count(i.q(), i.e(), y).unwrap();
                    }
                }
            }
            prop_assert_eq!(total, exact_order_unit_count(&i, &b(k)).unwrap());
        }

        #[test]
        fn counts_divisible_by_period(i in small_instances(), k in 1u64..=60) {
            let kb = b(k);
            prop_assert!(exact_order_unit_count(&i, &kb).unwrap().is_multiple_of(&kb));
            prop_assert!(exact_order_all_count(&i, &kb).unwrap().is_multiple_of(&kb));
        }

        #[test]
        fn census_is_complete(i in small_instances()) {
            let c = full_census(&i);
            prop_assert_eq!(c.all_counts.values().sum::<BigUint>(), i.n().clone());
            prop_assert_eq!(c.unit_counts.values().sum::<BigUint>(), i.phi().clone());
            for (k, t, e) in c.rows() {
                prop_assert!(e >= t);
                prop_assert_eq!(t, &exact_order_unit_count(&i, k).unwrap());
                prop_assert_eq!(e, &exact_order_all_count(&i, k).unwrap());
            }
        }

        #[test]
        fn at_least_nine_fixed_points(i in small_instances()) {
            prop_assume!(i.gcd_e_phi_ok() && !i.e().is_one());
            prop_assert!(exact_order_all_count(&i, &b(1)).unwrap() >= b(9));
        }
    }
}

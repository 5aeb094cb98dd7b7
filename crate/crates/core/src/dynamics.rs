//! The power map `f: x -> x^e (mod n)` as a permutation of `Z_n`.
//!
//! Periods are computed in closed form from the orders of the CRT
//! components: if `L` is the lcm of the orders of the nonzero components of
//! `x`, then the period of `x` is `ord_L(e)`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{self, Factorization};
use crate::census::{self, RsaInstance};
use crate::error::{Error, Result};

pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;

/// Multiplicative order of one CRT component, or `Zero` when the component
/// vanishes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ComponentOrder {
    Zero,
    Order(BigUint),
}

impl ComponentOrder {
    fn lcm_part(&self) -> BigUint {
        match self {
            ComponentOrder::Zero => BigUint::one(),
            ComponentOrder::Order(o) => o.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodRecord {
    pub point: BigUint,
    pub period: BigUint,
    /// Orders of `point mod p` and `point mod q`.
    pub component_orders: (ComponentOrder, ComponentOrder),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleCount {
    pub points: BigUint,
    pub cycles: BigUint,
}

/// Cycle length `k` mapped to the number of points on, and number of,
/// `k`-cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleStructure {
    pub n: BigUint,
    pub entries: BTreeMap<BigUint, CycleCount>,
}

/// `x^(e^steps) mod n`, by `steps` successive e-th powers.
pub fn iterate_power_map(x: &BigUint, inst: &RsaInstance, steps: u64) -> BigUint {
    let mut y = x % inst.n();
    for _ in 0..steps {
        y = y.modpow(inst.e(), inst.n());
    }
    y
}

fn component_order(
    residue: &BigUint,
    prime: &BigUint,
    prime_minus_1: &Factorization,
) -> ComponentOrder {
    if residue.is_zero() {
        ComponentOrder::Zero
    } else {
        let order = arith::order_dividing(residue, prime, prime_minus_1);
        ComponentOrder::Order(order.value().clone())
    }
}

/// Period of `e` acting on a cyclic group of exponent `l` (`l | λ(n)`).
fn period_for_exponent(inst: &RsaInstance, l: &BigUint) -> BigUint {
    arith::order_dividing(&(inst.e() % l), l, inst.max_period_factorization())
        .value()
        .clone()
}

/// Closed-form period of `x`; no iteration of the map.
pub fn period_of_point(x: &BigUint, inst: &RsaInstance) -> Result<PeriodRecord> {
    if x >= inst.n() {
        return Err(Error::invalid(format!(
            "{x} is not reduced modulo {}",
            inst.n()
        )));
    }
    let op = component_order(&(x % inst.p()), inst.p(), inst.p_minus_1());
    let oq = component_order(&(x % inst.q()), inst.q(), inst.q_minus_1());
    let l = op.lcm_part().lcm(&oq.lcm_part());
    Ok(PeriodRecord {
        point: x.clone(),
        period: period_for_exponent(inst, &l),
        component_orders: (op, oq),
    })
}

/// Cycle counts derived from `E_k`: `E_k / k` cycles of length `k`.
pub fn analytic_cycle_structure(inst: &RsaInstance) -> CycleStructure {
    let census = census::full_census(inst);
    let entries = census
        .all_counts
        .into_iter()
        .filter(|(_, points)| !points.is_zero())
        .map(|(k, points)| {
            let cycles = &points / &k;
            (k, CycleCount { points, cycles })
        })
        .collect();
    CycleStructure {
        n: inst.n().clone(),
        entries,
    }
}

/// Smallest primitive root modulo the odd prime `p`.
pub fn primitive_root(p: &BigUint, p_minus_1: &Factorization) -> BigUint {
    let m = p_minus_1.value();
    let mut g = BigUint::from(2u32);
    if *p == BigUint::from(3u32) {
        return g;
    }
    loop {
        if p_minus_1.primes().all(|l| !g.modpow(&(m / l), p).is_one()) {
            return g;
        }
        g += 1u32;
    }
}

/// Solutions of `x^(e^k) ≡ x (mod p)`: zero plus the subgroup of order
/// `m = (e^k - 1, p - 1)`, each with its component order.
fn local_solutions(
    inst: &RsaInstance,
    prime: &BigUint,
    prime_minus_1: &Factorization,
    k: &BigUint,
) -> Vec<(BigUint, ComponentOrder)> {
    let pm1 = prime_minus_1.value();
    let r = inst.e().modpow(k, pm1);
    let m = ((r + pm1 - 1u32) % pm1).gcd(pm1);
    let g = primitive_root(prime, prime_minus_1);
    let h = g.modpow(&(pm1 / &m), prime);

    let mut out = Vec::new();
    out.push((BigUint::zero(), ComponentOrder::Zero));
    let mut power = BigUint::one();
    let mut i = BigUint::zero();
    while i < m {
        // h has order m, so h^i has order m / (i, m)
        let order = &m / i.gcd(&m);
        out.push((power.clone(), ComponentOrder::Order(order)));
        power = power * &h % prime;
        i += 1u32;
    }
    out
}

/// Every residue of exact period `k`, ascending.
///
/// Pairs the per-prime solution sets through the CRT and keeps the pairs
/// whose component orders give period exactly `k`. Fails with
/// [`Error::CapExceeded`] before doing any work when the count exceeds `cap`.
pub fn enumerate_fixed_points(inst: &RsaInstance, k: &BigUint, cap: u64) -> Result<Vec<BigUint>> {
    let count = census::exact_order_all_count(inst, k)?;
    if count > BigUint::from(cap) {
        return Err(Error::CapExceeded { count, cap });
    }
    if count.is_zero() {
        return Ok(Vec::new());
    }
    let k_f = inst.period_factorization(k)?;
    let sols_p = local_solutions(inst, inst.p(), inst.p_minus_1(), k);
    let sols_q = local_solutions(inst, inst.q(), inst.q_minus_1(), k);

    // x = a * unit_p + b * unit_q with unit_p ≡ (1, 0) and unit_q ≡ (0, 1)
    let unit_p = arith::crt_combine(&[
        (BigUint::one(), inst.p().clone()),
        (BigUint::zero(), inst.q().clone()),
    ])?;
    let unit_q = arith::crt_combine(&[
        (BigUint::zero(), inst.p().clone()),
        (BigUint::one(), inst.q().clone()),
    ])?;

    let mut exact: HashMap<BigUint, bool> = HashMap::new();
    let mut out = Vec::with_capacity((&count).try_into().unwrap_or(0));
    for (a, oa) in &sols_p {
        for (b, ob) in &sols_q {
            let l = oa.lcm_part().lcm(&ob.lcm_part());
            let keep = *exact.entry(l.clone()).or_insert_with(|| {
                // e^k ≡ 1 (mod l) holds by construction; exactness means no k/ℓ works.
                let one = BigUint::one() % &l;
                k_f.primes()
                    .all(|ell| inst.e().modpow(&(k / ell), &l) != one)
            });
            if keep {
                out.push((a * &unit_p + b * &unit_q) % inst.n());
            }
        }
    }
    out.sort();
    debug_assert_eq!(BigUint::from(out.len()), count);
    Ok(out)
}

/// A nontrivial factor of `n` from `gcd(m, n)`, `gcd(m - 1, n)` or
/// `gcd(m + 1, n)`, tried in that order.
pub fn extract_factor_from_fixed_point(m: &BigUint, n: &BigUint) -> Option<BigUint> {
    if *n <= BigUint::one() {
        return None;
    }
    let m = m % n;
    let candidates = [m.clone(), (&m + n - 1u32) % n, (&m + 1u32) % n];
    candidates
        .iter()
        .map(|c| c.gcd(n))
        .find(|g| !g.is_one() && g != n)
}

/// A fixed point outside `{0, 1, n - 1}`, using the known factorization.
///
/// Enumerates the fixed points when there are at most `budget` of them;
/// otherwise falls back to the CRT point `(0 mod p, 1 mod q)`, which every
/// power map fixes. Returns `None` only if no such point exists.
pub fn find_nontrivial_fixed_point(inst: &RsaInstance, budget: u64) -> Option<BigUint> {
    let n_minus_1 = inst.n() - 1u32;
    let trivial = |x: &BigUint| x.is_zero() || x.is_one() || *x == n_minus_1;
    match enumerate_fixed_points(inst, &BigUint::one(), budget) {
        Ok(points) => points.into_iter().find(|x| !trivial(x)),
        Err(_) => {
            let x = arith::crt_combine(&[
                (BigUint::zero(), inst.p().clone()),
                (BigUint::one(), inst.q().clone()),
            ])
            .ok()?;
            (!trivial(&x)).then_some(x)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{self, DEFAULT_LIMIT};

    fn b(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn inst(p: u64, q: u64, e: u64) -> RsaInstance {
        RsaInstance::from_u64(p, q, e).unwrap()
    }

    #[test]
    fn iterate_examples() {
        let i = inst(5, 7, 5);
        assert_eq!(iterate_power_map(&b(2), &i, 0), b(2));
        assert_eq!(iterate_power_map(&b(2), &i, 1), b(32));
        assert_eq!(iterate_power_map(&b(2), &i, 2), b(2));
    }

    #[test]
    fn period_examples() {
        let i = inst(5, 7, 5);
        assert_eq!(period_of_point(&b(1), &i).unwrap().period, b(1));
        let two = period_of_point(&b(2), &i).unwrap();
        assert_eq!(two.period, b(2));
        assert_eq!(
            two.component_orders,
            (ComponentOrder::Order(b(4)), ComponentOrder::Order(b(3)))
        );
        let fifteen = period_of_point(&b(15), &i).unwrap();
        assert_eq!(fifteen.period, b(1));
        assert_eq!(
            fifteen.component_orders,
            (ComponentOrder::Zero, ComponentOrder::Order(b(1)))
        );
        assert_eq!(period_of_point(&b(0), &i).unwrap().period, b(1));
        assert!(period_of_point(&b(35), &i).is_err());
    }

    #[test]
    fn cycle_structure_examples() {
        let c = analytic_cycle_structure(&inst(5, 7, 5));
        assert_eq!(
            c.entries,
            BTreeMap::from([
                (
                    b(1),
                    CycleCount {
                        points: b(15),
                        cycles: b(15)
                    }
                ),
                (
                    b(2),
                    CycleCount {
                        points: b(20),
                        cycles: b(10)
                    }
                ),
            ])
        );
        assert_eq!(
            c,
            oracle::brute_cycle_structure(&inst(5, 7, 5), DEFAULT_LIMIT).unwrap()
        );

        let id = analytic_cycle_structure(&inst(5, 7, 13));
        assert_eq!(
            id.entries,
            BTreeMap::from([(
                b(1),
                CycleCount {
                    points: b(35),
                    cycles: b(35)
                }
            )])
        );

        let c = analytic_cycle_structure(&inst(3, 5, 7));
        assert_eq!(
            c.entries
                .values()
                .map(|v| v.points.clone())
                .sum::<BigUint>(),
            b(15)
        );
        assert_eq!(
            c,
            oracle::brute_cycle_structure(&inst(3, 5, 7), DEFAULT_LIMIT).unwrap()
        );
    }

    #[test]
    fn primitive_roots() {
        for p in [3u64, 5, 7, 11, 13, 23, 41, 71, 101] {
            let pf = arith::factorize_u64(p - 1);
            let g = primitive_root(&b(p), &pf);
            assert_eq!(arith::multiplicative_order(&g, &b(p)).unwrap(), b(p - 1));
            for smaller in 2..g.iter_u64_digits().next().unwrap() {
                assert_ne!(
                    arith::multiplicative_order(&b(smaller), &b(p)).unwrap(),
                    b(p - 1)
                );
            }
        }
    }

    #[test]
    fn enumeration_examples() {
        let i = inst(5, 7, 5);
        let fixed = enumerate_fixed_points(&i, &b(1), DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(fixed.len(), 15);
        for x in [0u64, 1, 6, 15, 34] {
            assert!(fixed.contains(&b(x)), "{x}");
        }
        let brute: Vec<BigUint> = oracle::brute_fixed_points(&i, 1, DEFAULT_LIMIT)
            .unwrap()
            .into_iter()
            .map(b)
            .collect();
        assert_eq!(fixed, brute);

        let period_two = enumerate_fixed_points(&i, &b(2), DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(period_two.len(), 20);
        assert!(period_two.iter().all(|x| !fixed.contains(x)));
        assert!(period_two.windows(2).all(|w| w[0] < w[1]));

        assert!(enumerate_fixed_points(&i, &b(3), 10).unwrap().is_empty());
        match enumerate_fixed_points(&i, &b(2), 19) {
            Err(Error::CapExceeded { count, cap }) => {
                assert_eq!(count, b(20));
                assert_eq!(cap, 19);
            }
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn trivial_fixed_points_always_present() {
        for (p, q, e) in [(3, 5, 3), (11, 17, 3), (101, 113, 65537), (7, 19, 5)] {
            let i = inst(p, q, e);
            let fixed = enumerate_fixed_points(&i, &b(1), DEFAULT_ENUMERATION_CAP).unwrap();
            for x in [b(0), b(1), i.n() - 1u32] {
                assert!(fixed.contains(&x));
            }
        }
    }

    #[test]
    fn factor_extraction_examples() {
        assert_eq!(extract_factor_from_fixed_point(&b(15), &b(35)), Some(b(5)));
        assert_eq!(extract_factor_from_fixed_point(&b(6), &b(35)), Some(b(5)));
        assert_eq!(extract_factor_from_fixed_point(&b(1), &b(35)), None);
        assert_eq!(extract_factor_from_fixed_point(&b(34), &b(35)), None);
        assert_eq!(extract_factor_from_fixed_point(&b(0), &b(35)), None);
    }

    #[test]
    fn nontrivial_fixed_point() {
        let i = inst(5, 7, 5);
        let m = find_nontrivial_fixed_point(&i, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(m, b(6));
        // too small a budget takes the CRT fallback, still a fixed point
        let m = find_nontrivial_fixed_point(&i, 3).unwrap();
        assert_eq!(m.modpow(i.e(), i.n()), m);
        assert!(extract_factor_from_fixed_point(&m, i.n()).is_some());
    }

    #[test]
    fn closed_form_periods_match_iteration() {
        for (p, q, e) in [
            (5, 7, 5),
            (11, 13, 7),
            (17, 29, 3),
            (23, 47, 65537),
            (3, 101, 7),
        ] {
            let i = inst(p, q, e);
            let brute = oracle::brute_periods(&i, DEFAULT_LIMIT).unwrap();
            for (x, k) in brute.into_iter().enumerate() {
                let rec = period_of_point(&b(x as u64), &i).unwrap();
                assert_eq!(rec.period, b(k), "x = {x}");
                assert_eq!(iterate_power_map(&b(x as u64), &i, k), b(x as u64));
            }
        }
    }

    #[test]
    fn map_is_a_unit_preserving_bijection() {
        for (p, q, e) in [(5, 7, 5), (11, 13, 7), (17, 29, 3), (3, 101, 7)] {
            let i = inst(p, q, e);
            let table = oracle::power_map_table(&i, DEFAULT_LIMIT).unwrap();
            let n = table.len() as u64;
            let mut image = table.clone();
            image.sort();
            assert_eq!(image, (0..n).collect::<Vec<_>>());
            for (x, &y) in table.iter().enumerate() {
                assert_eq!(arith::gcd_u64(x as u64, n) == 1, arith::gcd_u64(y, n) == 1);
            }
        }
    }
}

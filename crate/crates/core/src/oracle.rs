//! Brute-force reference implementations.
//!
//! Everything here scans residues one by one and uses nothing from the crate
//! beyond gcd and modular multiplication. Slow on purpose; the census and
//! dynamics modules are checked against these results.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::arith::{gcd_u64, mul_mod_u64};
use crate::census::{ExactOrderCensus, RsaInstance};
use crate::dynamics::{CycleCount, CycleStructure};
use crate::error::{Error, Result};

/// Largest modulus scanned unless the caller raises it.
pub const DEFAULT_LIMIT: u64 = 100_000;

fn small_modulus(n: &BigUint, limit: u64) -> Result<u64> {
    match n.to_u64() {
        Some(v) if v <= limit => Ok(v),
        _ => Err(Error::LimitExceeded {
            n: n.clone(),
            limit,
        }),
    }
}

fn check_limit(n: u64, limit: u64) -> Result<()> {
    if n > limit {
        return Err(Error::LimitExceeded {
            n: BigUint::from(n),
            limit,
        });
    }
    if n < 2 {
        return Err(Error::invalid("modulus must be at least 2"));
    }
    Ok(())
}

/// Left-to-right square and multiply over the bits of `exp`.
fn pow_mod(x: u64, exp: &BigUint, n: u64) -> u64 {
    let mut acc = 1 % n;
    for i in (0..exp.bits()).rev() {
        acc = mul_mod_u64(acc, acc, n);
        if exp.bit(i) {
            acc = mul_mod_u64(acc, x, n);
        }
    }
    acc
}

/// The table `x -> x^e mod n` for every `x` in `[0, n)`.
pub fn power_map_table(inst: &RsaInstance, limit: u64) -> Result<Vec<u64>> {
    let n = small_modulus(inst.n(), limit)?;
    Ok((0..n).map(|x| pow_mod(x, inst.e(), n)).collect())
}

/// Period of every residue, found by walking the table until it returns.
pub fn brute_periods(inst: &RsaInstance, limit: u64) -> Result<Vec<u64>> {
    let table = power_map_table(inst, limit)?;
    let n = table.len() as u64;
    let periods = (0..n)
        .map(|x| {
            let mut y = table[x as usize];
            let mut steps = 1;
            while y != x {
                y = table[y as usize];
                steps += 1;
                assert!(steps <= n, "power map is not a permutation");
            }
            steps
        })
        .collect();
    Ok(periods)
}

/// `T_k` (units) and `E_k` (all residues) by explicit iteration of every point.
/// Keys are all divisors of the observed lcm of periods, zeros included.
pub fn brute_power_map_census(inst: &RsaInstance, limit: u64) -> Result<ExactOrderCensus> {
    let periods = brute_periods(inst, limit)?;
    let n = periods.len() as u64;
    let k_max = periods
        .iter()
        .fold(1u64, |acc, &k| acc / gcd_u64(acc, k) * k);

    let mut units: BTreeMap<u64, u64> = BTreeMap::new();
    let mut all: BTreeMap<u64, u64> = BTreeMap::new();
    for k in (1..=k_max).filter(|k| k_max % k == 0) {
        units.insert(k, 0);
        all.insert(k, 0);
    }
    for (x, &k) in periods.iter().enumerate() {
        *all.get_mut(&k).unwrap() += 1;
        if gcd_u64(x as u64, n) == 1 {
            *units.get_mut(&k).unwrap() += 1;
        }
    }
    let big = |m: BTreeMap<u64, u64>| {
        m.into_iter()
            .map(|(k, c)| (BigUint::from(k), BigUint::from(c)))
            .collect()
    };
    Ok(ExactOrderCensus {
        k_max: BigUint::from(k_max),
        unit_counts: big(units),
        all_counts: big(all),
    })
}

/// Cycle decomposition of the permutation `x -> x^e`, visiting each cycle once.
pub fn brute_cycle_structure(inst: &RsaInstance, limit: u64) -> Result<CycleStructure> {
    let table = power_map_table(inst, limit)?;
    let mut seen = vec![false; table.len()];
    let mut lengths: BTreeMap<u64, u64> = BTreeMap::new();
    for start in 0..table.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = table[x] as usize;
            len += 1;
        }
        *lengths.entry(len).or_insert(0) += 1;
    }
    Ok(CycleStructure {
        n: inst.n().clone(),
        entries: lengths
            .into_iter()
            .map(|(k, cycles)| {
                let count = CycleCount {
                    points: BigUint::from(k * cycles),
                    cycles: BigUint::from(cycles),
                };
                (BigUint::from(k), count)
            })
            .collect(),
    })
}

/// All residues of exact period `k`, ascending.
pub fn brute_fixed_points(inst: &RsaInstance, k: u64, limit: u64) -> Result<Vec<u64>> {
    let periods = brute_periods(inst, limit)?;
    Ok((0..periods.len() as u64)
        .filter(|&x| periods[x as usize] == k)
        .collect())
}

/// The `m` in `1..=horizon` with `x^(e^m) ≡ x`, by iterating `x -> x^e`.
pub fn brute_return_times(
    x: u64,
    inst: &RsaInstance,
    horizon: u64,
    limit: u64,
) -> Result<Vec<u64>> {
    let n = small_modulus(inst.n(), limit)?;
    let mut y = x;
    let mut out = Vec::new();
    for m in 1..=horizon {
        y = pow_mod(y, inst.e(), n);
        if y == x {
            out.push(m);
        }
    }
    Ok(out)
}

/// `|{x ∈ [1, n) : x^r ≡ 1 (mod n)}|`.
pub fn brute_roots_of_unity(r: &BigUint, n: u64, limit: u64) -> Result<u64> {
    check_limit(n, limit)?;
    Ok((1..n).filter(|&x| pow_mod(x, r, n) == 1).count() as u64)
}

/// Histogram of multiplicative orders over the units modulo `n`.
pub fn brute_element_orders(n: u64, limit: u64) -> Result<BTreeMap<u64, u64>> {
    check_limit(n, limit)?;
    let mut hist = BTreeMap::new();
    for x in (1..n).filter(|&x| gcd_u64(x, n) == 1) {
        let mut y = x % n;
        let mut order = 1;
        while y != 1 % n {
            y = mul_mod_u64(y, x, n);
            order += 1;
        }
        *hist.entry(order).or_insert(0) += 1;
    }
    Ok(hist)
}

/// Count of `x ∈ [0, n)` with `x^d ≡ x`, and the histogram of the smallest
/// `r >= 2` with `x^r ≡ x` (residues with no such `r` are left out).
pub fn brute_poly_fixed(n: u64, d: u64, limit: u64) -> Result<(u64, BTreeMap<u64, u64>)> {
    check_limit(n, limit)?;
    let d_big = BigUint::from(d);
    let count = (0..n).filter(|&x| pow_mod(x, &d_big, n) == x).count() as u64;

    let mut hist = BTreeMap::new();
    for x in 0..n {
        // x^r for r = 2, 3, ..., n + 1; the smallest r, when it exists, is at most n.
        let mut power = mul_mod_u64(x, x, n);
        for r in 2..=n + 1 {
            if power == x {
                *hist.entry(r).or_insert(0) += 1;
                break;
            }
            power = mul_mod_u64(power, x, n);
        }
    }
    Ok((count, hist))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(p: u64, q: u64, e: u64) -> RsaInstance {
        RsaInstance::from_u64(p, q, e).unwrap()
    }

    fn b(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn census_of_reference_instance() {
        let c = brute_power_map_census(&inst(5, 7, 5), DEFAULT_LIMIT).unwrap();
        assert_eq!(c.unit_counts, BTreeMap::from([(b(1), b(8)), (b(2), b(16))]));
        assert_eq!(c.all_counts, BTreeMap::from([(b(1), b(15)), (b(2), b(20))]));
        assert_eq!(c.all_counts.values().sum::<BigUint>(), b(35));
        assert_eq!(c.k_max, crate::census::max_period(&inst(5, 7, 5)));

        let id = brute_power_map_census(&inst(5, 7, 25), DEFAULT_LIMIT).unwrap();
        assert_eq!(id.all_counts, BTreeMap::from([(b(1), b(35))]));
    }

    #[test]
    fn limit_is_enforced() {
        let big = inst(1009, 1013, 5);
        assert!(matches!(
            brute_power_map_census(&big, 1000),
            Err(Error::LimitExceeded { .. })
        ));
        assert!(brute_element_orders(600, 512).is_err());
        assert!(brute_roots_of_unity(&b(2), 600, 512).is_err());
        assert!(brute_poly_fixed(600, 2, 512).is_err());
    }

    #[test]
    fn roots_of_unity_scans() {
        assert_eq!(brute_roots_of_unity(&b(1), 35, DEFAULT_LIMIT).unwrap(), 1);
        assert_eq!(brute_roots_of_unity(&b(2), 8, DEFAULT_LIMIT).unwrap(), 4);
        assert_eq!(brute_roots_of_unity(&b(2), 15, DEFAULT_LIMIT).unwrap(), 4);
    }

    #[test]
    fn element_order_scans() {
        assert_eq!(
            brute_element_orders(7, DEFAULT_LIMIT).unwrap(),
            BTreeMap::from([(1, 1), (2, 1), (3, 2), (6, 2)])
        );
        assert_eq!(
            brute_element_orders(8, DEFAULT_LIMIT).unwrap(),
            BTreeMap::from([(1, 1), (2, 3)])
        );
        for n in 2..200u64 {
            let phi = (1..n).filter(|&x| gcd_u64(x, n) == 1).count() as u64;
            assert_eq!(
                brute_element_orders(n, DEFAULT_LIMIT)
                    .unwrap()
                    .values()
                    .sum::<u64>(),
                phi
            );
        }
    }

    #[test]
    fn poly_fixed_scans() {
        assert_eq!(brute_poly_fixed(15, 1, DEFAULT_LIMIT).unwrap().0, 15);
        let (count, hist) = brute_poly_fixed(15, 2, DEFAULT_LIMIT).unwrap();
        assert_eq!(count, 4);
        assert_eq!(hist, BTreeMap::from([(2, 4), (3, 5), (5, 6)]));
        assert_eq!(hist.values().sum::<u64>(), 15);
    }

    #[test]
    fn return_times_are_multiples_of_the_period() {
        for (p, q, e) in [(5, 7, 5), (3, 11, 3), (7, 13, 5), (11, 23, 7)] {
            let i = inst(p, q, e);
            let periods = brute_periods(&i, DEFAULT_LIMIT).unwrap();
            let horizon = 60;
            for (x, &k) in periods.iter().enumerate() {
                let expected: Vec<u64> = (1..=horizon).filter(|m| m % k == 0).collect();
                assert_eq!(
                    brute_return_times(x as u64, &i, horizon, DEFAULT_LIMIT).unwrap(),
                    expected
                );
            }
        }
    }
}

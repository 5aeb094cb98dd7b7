//! Two counting formulas that are easy to get wrong, with brute-force witnesses.

use num_bigint::BigUint;
use rsa_fixpoints::arith;
use rsa_fixpoints::census;
use rsa_fixpoints::oracle::{self, DEFAULT_LIMIT};

fn main() -> rsa_fixpoints::Result<()> {
    // Square roots of 1 mod 8: the unit group mod 2^a (a >= 3) is not cyclic.
    let eight = arith::factorize_u64(8);
    let two = BigUint::from(2u32);
    println!(
        "x^2 = 1 (mod 8): corrected {}, cyclic-group formula {}, brute force {}",
        census::roots_of_unity_count(&two, &eight),
        census::uncorrected_roots_of_unity_count(&two, &eight),
        oracle::brute_roots_of_unity(&two, 8, DEFAULT_LIMIT)?,
    );

    // Points whose smallest exponent r >= 2 with x^r = x is exactly r:
    // the sum runs over divisors of r - 1, not r.
    let fifteen = arith::factorize_u64(15);
    let (_, hist) = oracle::brute_poly_fixed(15, 1, DEFAULT_LIMIT)?;
    for r in 2..=5u64 {
        let r_big = BigUint::from(r);
        println!(
            "n = 15, r = {r}: corrected {}, sum over d | r {}, brute force {}",
            census::exact_quasi_order_count(&fifteen, &r_big)?,
            census::uncorrected_quasi_order_sum(&fifteen, &r_big)?,
            hist.get(&r).copied().unwrap_or(0),
        );
    }
    Ok(())
}

//! A nontrivial fixed point of the RSA map leaks a factor of `n`.
//!
//! For the fixed point `m`, `m^(e-1) ≡ 1` modulo one prime while `m ≡ 0`,
//! `1` or `-1` modulo the other, so one of `gcd(m, n)`, `gcd(m ± 1, n)`
//! splits `n`. Finding such an `m` without the factorization is the open
//! part; here the factorization is used to build one.

use num_bigint::BigUint;
use rsa_fixpoints::{dynamics, RsaInstance};

fn main() -> rsa_fixpoints::Result<()> {
    let inst = RsaInstance::from_u64(5, 7, 5)?;
    let fixed = dynamics::enumerate_fixed_points(&inst, &BigUint::from(1u32), 100)?;
    for m in &fixed {
        match dynamics::extract_factor_from_fixed_point(m, inst.n()) {
            Some(f) => println!("m = {m:>2}  ->  factor {f}"),
            None => println!("m = {m:>2}  ->  no factor"),
        }
    }

    let p = BigUint::from(2_147_483_647u64);
    let q = BigUint::from(2_305_843_009_213_693_951u64);
    let big = RsaInstance::new(p, q, BigUint::from(65537u32))?;
    let m = dynamics::find_nontrivial_fixed_point(&big, 1000).expect("pq always has one");
    let f = dynamics::extract_factor_from_fixed_point(&m, big.n()).expect("nontrivial");
    println!("n = {}: fixed point {m} gives factor {f}", big.n());
    Ok(())
}

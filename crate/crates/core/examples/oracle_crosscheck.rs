//! Cross-check every closed-form count against brute force on small moduli.

use num_bigint::BigUint;
use rsa_fixpoints::arith;
use rsa_fixpoints::census;
use rsa_fixpoints::oracle::{self, DEFAULT_LIMIT};
use rsa_fixpoints::RsaInstance;

fn main() -> rsa_fixpoints::Result<()> {
    let mut checked = 0;
    for (p, q) in [(3u64, 5u64), (5, 7), (7, 13), (11, 17), (17, 41)] {
        let lambda = num_integer::lcm(p - 1, q - 1);
        for e in (2..lambda).filter(|e| num_integer::gcd(*e, lambda) == 1) {
            let inst = RsaInstance::from_u64(p, q, e)?;
            assert_eq!(
                census::full_census(&inst),
                oracle::brute_power_map_census(&inst, DEFAULT_LIMIT)?
            );
            checked += 1;
        }
    }
    println!("{checked} (n, e) censuses agree with iteration");

    for n in 2..=200u64 {
        let f = arith::factorize_u64(n);
        let orders = oracle::brute_element_orders(n, DEFAULT_LIMIT)?;
        for (&r, &count) in &orders {
            assert_eq!(
                census::elements_of_order_count(&f, &BigUint::from(r))?,
                BigUint::from(count)
            );
        }
        for d in 1..=8u64 {
            let (fixed, _) = oracle::brute_poly_fixed(n, d, DEFAULT_LIMIT)?;
            assert_eq!(
                census::poly_fixed_count(&BigUint::from(d), &f),
                BigUint::from(fixed)
            );
        }
    }
    println!("element orders and x^d = x counts agree for n <= 200");
    Ok(())
}

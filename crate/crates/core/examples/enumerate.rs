//! List every residue of a given exact period by pairing per-prime
//! solutions through the Chinese remainder theorem.

use num_bigint::BigUint;
use rsa_fixpoints::{census, dynamics, RsaInstance};

fn main() -> rsa_fixpoints::Result<()> {
    let inst = RsaInstance::from_u64(5, 7, 5)?;
    for k in [1u32, 2] {
        let k = BigUint::from(k);
        let points =
            dynamics::enumerate_fixed_points(&inst, &k, dynamics::DEFAULT_ENUMERATION_CAP)?;
        let listed: Vec<String> = points.iter().map(ToString::to_string).collect();
        println!("period {k}: {} points: {}", points.len(), listed.join(" "));
        assert_eq!(
            BigUint::from(points.len()),
            census::exact_order_all_count(&inst, &k)?
        );
    }

    // counts are available long before listing becomes feasible
    let big = RsaInstance::from_u64(1_000_003, 1_000_033, 5)?;
    match dynamics::enumerate_fixed_points(&big, &BigUint::from(1u32), 10) {
        Ok(points) => println!("n = {}: fixed points {:?}", big.n(), points),
        Err(e) => println!("n = {}: {e}", big.n()),
    }
    Ok(())
}

//! Exact counts of points of each period for a small RSA key.
//!
//! `cargo run --example census -- [p q e]` (defaults to 5 7 5)

use num_bigint::BigUint;
use rsa_fixpoints::census;
use rsa_fixpoints::report::{self, Format};
use rsa_fixpoints::RsaInstance;

fn main() -> rsa_fixpoints::Result<()> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("integer argument"))
        .collect();
    let (p, q, e) = match args.as_slice() {
        [p, q, e] => (*p, *q, *e),
        _ => (5, 7, 5),
    };
    let inst = RsaInstance::from_u64(p, q, e)?;
    let c = census::full_census(&inst);

    println!(
        "n = {}, e = {}, λ(n) = {}, K_max = {}",
        inst.n(),
        inst.e(),
        inst.lambda(),
        c.k_max
    );
    print!(
        "{}",
        report::render_census(inst.n(), inst.e(), &c, Format::Table)
    );

    // every point has some period dividing K_max
    let total: BigUint = c.all_counts.values().sum();
    assert_eq!(&total, inst.n());
    Ok(())
}

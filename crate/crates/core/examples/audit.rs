//! Audit a public exponent: how much of `Z_n` sits on short cycles?

use num_bigint::BigUint;
use rsa_fixpoints::report::{audit, Format};
use rsa_fixpoints::{AuditConfig, RsaInstance};

fn main() -> rsa_fixpoints::Result<()> {
    let config = AuditConfig::default();
    let keys = [
        (5u64, 7u64, 5u64),  // tiny key, every point has period 1 or 2
        (5, 7, 13),          // e ≡ 1 (mod λ): the identity map
        (1019, 2027, 65537), // the usual exponent on a toy modulus
    ];
    for (p, q, e) in keys {
        let report = audit(&RsaInstance::from_u64(p, q, e)?, &config);
        println!(
            "p={p} q={q} e={e}: {:?}, K_max = {}, E_1 = {}",
            report.verdict, report.k_max, report.min_fixed_points
        );
        for note in &report.notes {
            println!("    {note}");
        }
    }

    // a 2^53-sized key still audits instantly; JSON carries the big numbers as strings
    let p = BigUint::from(4_294_967_311u64);
    let q = BigUint::from(4_294_967_357u64);
    let report = audit(&RsaInstance::new(p, q, BigUint::from(65537u32))?, &config);
    print!("{}", report.render(Format::Json));
    Ok(())
}

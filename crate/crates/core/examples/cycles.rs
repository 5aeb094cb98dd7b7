//! Cycle structure of `x -> x^e (mod n)`, closed form against brute force.

use rsa_fixpoints::report::{render_cycles, Format};
use rsa_fixpoints::{dynamics, oracle, RsaInstance};

fn main() -> rsa_fixpoints::Result<()> {
    let inst = RsaInstance::from_u64(11, 23, 3)?;
    let cycles = dynamics::analytic_cycle_structure(&inst);
    print!("{}", render_cycles(inst.e(), &cycles, Format::Table));

    let brute = oracle::brute_cycle_structure(&inst, oracle::DEFAULT_LIMIT)?;
    assert_eq!(cycles, brute);
    println!("matches the functional graph of all {} residues", inst.n());

    // the period of a single point comes from the orders of its CRT components
    let rec = dynamics::period_of_point(&2u32.into(), &inst)?;
    println!(
        "x = 2: component orders {:?}, period {}",
        rec.component_orders, rec.period
    );
    Ok(())
}

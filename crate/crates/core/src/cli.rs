//! `rsa-fixpoints` command line.
//!
//! Exit codes: 0 success, 2 invalid parameters, 3 factoring failed,
//! 4 enumeration cap or oracle limit exceeded.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;

use crate::arith;
use crate::census::{self, RsaInstance};
use crate::dynamics::{self, DEFAULT_ENUMERATION_CAP};
use crate::error::Error;
use crate::oracle::{self, DEFAULT_LIMIT};
use crate::report::{self, AuditConfig, FactorDemo, Format, Fraction};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_FACTORING_FAILED: i32 = 3;
pub const EXIT_LIMIT: i32 = 4;

pub const WARN_FRACTION_ENV: &str = "RSA_FIXPOINT_WARN_FRACTION";

fn big(s: &str) -> Result<BigUint, String> {
    report::parse_biguint(s).map_err(|e| e.to_string())
}

fn fraction(s: &str) -> Result<Fraction, String> {
    report::parse_fraction(s).map_err(|e| e.to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "rsa-fixpoints",
    version,
    about = "Periodic points of the RSA power map x -> x^e mod n"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct KeyArgs {
    #[arg(long, value_parser = big)]
    p: BigUint,
    #[arg(long, value_parser = big)]
    q: BigUint,
    #[arg(long, value_parser = big)]
    e: BigUint,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact counts T_k and E_k for every k dividing K_max.
    Census {
        #[command(flatten)]
        key: KeyArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Census plus weak-fraction metrics and a verdict on the exponent.
    Audit {
        #[arg(long, value_parser = big, requires = "q", conflicts_with = "n")]
        p: Option<BigUint>,
        #[arg(long, value_parser = big, requires = "p")]
        q: Option<BigUint>,
        /// Modulus to factor instead of giving p and q.
        #[arg(long, value_parser = big)]
        n: Option<BigUint>,
        #[arg(long, value_parser = big)]
        e: BigUint,
        /// Pollard rho steps allowed when factoring --n.
        #[arg(long, default_value_t = arith::DEFAULT_FACTOR_BUDGET)]
        factor_budget: u64,
        /// Comma-separated period bounds for the weak fraction.
        #[arg(long, value_parser = big, value_delimiter = ',', default_value = "1,2,16")]
        weak_bounds: Vec<BigUint>,
        /// Bound whose weak fraction is compared with --warn-fraction.
        #[arg(long, value_parser = big, default_value = "2")]
        warn_bound: BigUint,
        #[arg(long, value_parser = fraction, env = WARN_FRACTION_ENV, default_value = "1/1000")]
        warn_fraction: Fraction,
        /// WARN when K_max is below this floor.
        #[arg(long, value_parser = big, default_value = "16")]
        min_k_max: BigUint,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Analytic cycle structure of the power map.
    Cycles {
        #[command(flatten)]
        key: KeyArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// List every residue of exact period k.
    Enumerate {
        #[command(flatten)]
        key: KeyArgs,
        #[arg(long, value_parser = big)]
        k: BigUint,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Brute-force census by iterating every residue.
    Oracle {
        #[arg(long, value_parser = big)]
        n: BigUint,
        #[arg(long, value_parser = big)]
        e: BigUint,
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Find a nontrivial fixed point and recover a factor of n from it.
    FactorDemo {
        #[command(flatten)]
        key: KeyArgs,
        /// Enumerate at most this many fixed points.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        budget: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidArgument(_) => EXIT_INVALID,
        Error::FactoringFailed { .. } => EXIT_FACTORING_FAILED,
        Error::CapExceeded { .. } | Error::LimitExceeded { .. } => EXIT_LIMIT,
    }
}

fn instance(key: KeyArgs) -> Result<RsaInstance, Error> {
    RsaInstance::new(key.p, key.q, key.e)
}

fn execute(command: Command) -> Result<String, Error> {
    match command {
        Command::Census { key, format } => {
            let inst = instance(key)?;
            let census = census::full_census(&inst);
            Ok(report::render_census(inst.n(), inst.e(), &census, format))
        }
        Command::Audit {
            p,
            q,
            n,
            e,
            factor_budget,
            weak_bounds,
            warn_bound,
            warn_fraction,
            min_k_max,
            format,
        } => {
            let inst = match (p, q, n) {
                (Some(p), Some(q), None) => RsaInstance::new(p, q, e)?,
                (None, None, Some(n)) => {
                    RsaInstance::from_modulus_with_budget(&n, e, factor_budget)?
                }
                _ => {
                    return Err(Error::InvalidArgument(
                        "give either --p and --q, or --n".into(),
                    ))
                }
            };
            let config = AuditConfig {
                weak_bounds,
                warn_bound,
                warn_fraction,
                min_k_max,
            };
            Ok(report::audit(&inst, &config).render(format))
        }
        Command::Cycles { key, format } => {
            let inst = instance(key)?;
            let cycles = dynamics::analytic_cycle_structure(&inst);
            Ok(report::render_cycles(inst.e(), &cycles, format))
        }
        Command::Enumerate {
            key,
            k,
            cap,
            format,
        } => {
            let inst = instance(key)?;
            let points = dynamics::enumerate_fixed_points(&inst, &k, cap)?;
            Ok(report::render_points(&inst, &k, &points, format))
        }
        Command::Oracle {
            n,
            e,
            limit,
            format,
        } => {
            if n > BigUint::from(limit) {
                return Err(Error::LimitExceeded { n, limit });
            }
            let inst = RsaInstance::from_modulus(&n, e)?;
            let census = oracle::brute_power_map_census(&inst, limit)?;
            Ok(report::render_census(inst.n(), inst.e(), &census, format))
        }
        Command::FactorDemo {
            key,
            budget,
            format,
        } => {
            let inst = instance(key)?;
            let fixed_point = dynamics::find_nontrivial_fixed_point(&inst, budget);
            let demo = FactorDemo {
                n: inst.n().clone(),
                e: inst.e().clone(),
                components: fixed_point.as_ref().map(|m| (m % inst.p(), m % inst.q())),
                factor: fixed_point
                    .as_ref()
                    .and_then(|m| dynamics::extract_factor_from_fixed_point(m, inst.n())),
                fixed_point,
            };
            Ok(demo.render(format))
        }
    }
}

/// Parses `args` (program name first), runs the subcommand and writes the
/// report to `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command) {
        Ok(text) => match out.write_all(text.as_bytes()) {
            Ok(()) => EXIT_OK,
            Err(_) => 1,
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

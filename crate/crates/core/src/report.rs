//! Exponent audits and their JSON / CSV / table renderings.
//!
//! JSON output is pretty-printed with keys in a fixed order. Integers up to
//! 2^53 are JSON numbers, larger ones decimal strings; fractions are
//! `{"num", "den"}` objects in lowest terms. Identical inputs render to
//! identical bytes.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::census::{self, ExactOrderCensus, RsaInstance};
use crate::dynamics::CycleStructure;
use crate::error::{Error, Result};

pub type Fraction = Ratio<BigUint>;

/// Largest integer emitted as a bare JSON number.
const JSON_SAFE_MAX: u64 = 1 << 53;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Ok,
    Warn,
    Degenerate,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Ok => "OK",
            Verdict::Warn => "WARN",
            Verdict::Degenerate => "DEGENERATE",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceSummary {
    pub p: BigUint,
    pub q: BigUint,
    pub n: BigUint,
    pub e: BigUint,
    pub phi: BigUint,
    pub lambda: BigUint,
    pub gcd_e_phi_ok: bool,
}

impl From<&RsaInstance> for InstanceSummary {
    fn from(inst: &RsaInstance) -> Self {
        InstanceSummary {
            p: inst.p().clone(),
            q: inst.q().clone(),
            n: inst.n().clone(),
            e: inst.e().clone(),
            phi: inst.phi().clone(),
            lambda: inst.lambda().clone(),
            gcd_e_phi_ok: inst.gcd_e_phi_ok(),
        }
    }
}

/// Thresholds for [`audit`]. None of them is canonical; they are policy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditConfig {
    /// Bounds `B` at which the weak fraction is reported (`K_max` is always added).
    pub weak_bounds: Vec<BigUint>,
    /// The bound whose weak fraction is compared against `warn_fraction`.
    pub warn_bound: BigUint,
    pub warn_fraction: Fraction,
    /// WARN when `K_max` is below this.
    pub min_k_max: BigUint,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            weak_bounds: [1u32, 2, 16].into_iter().map(BigUint::from).collect(),
            warn_bound: BigUint::from(2u32),
            warn_fraction: Fraction::new(BigUint::one(), BigUint::from(1000u32)),
            min_k_max: BigUint::from(16u32),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub instance: InstanceSummary,
    pub k_max: BigUint,
    pub census: ExactOrderCensus,
    /// Fraction of `Z_n` whose period is at most `B`, keyed by `B`.
    pub weak_fraction: BTreeMap<BigUint, Fraction>,
    /// `E_1`.
    pub min_fixed_points: BigUint,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

/// `∑_{k <= bound, k | K_max} E_k / n`.
pub fn weak_fraction(census: &ExactOrderCensus, n: &BigUint, bound: &BigUint) -> Fraction {
    let weak: BigUint = census
        .all_counts
        .range(..=bound.clone())
        .map(|(_, count)| count)
        .sum();
    Fraction::new(weak, n.clone())
}

pub fn audit(inst: &RsaInstance, config: &AuditConfig) -> AuditReport {
    let census = census::full_census(inst);
    let n = inst.n();
    let k_max = census.k_max.clone();

    let mut bounds = config.weak_bounds.clone();
    bounds.push(k_max.clone());
    let weak: BTreeMap<BigUint, Fraction> = bounds
        .into_iter()
        .filter(|b| !b.is_zero())
        .map(|b| {
            let frac = weak_fraction(&census, n, &b);
            (b, frac)
        })
        .collect();
    let min_fixed_points = census
        .all_counts
        .get(&BigUint::one())
        .cloned()
        .unwrap_or_default();

    let mut notes = Vec::new();
    if !inst.gcd_e_phi_ok() {
        notes.push(format!("gcd(e, phi) != 1 for e = {}", inst.e()));
    }
    let verdict = if (inst.e() % inst.lambda()).is_one() {
        notes.push("e = 1 mod lambda(n): the power map is the identity".to_string());
        Verdict::Degenerate
    } else {
        let mut warn = false;
        let at_bound = weak_fraction(&census, n, &config.warn_bound);
        if at_bound > config.warn_fraction {
            notes.push(format!(
                "weak fraction at bound {} is {}, above the threshold {}",
                config.warn_bound, at_bound, config.warn_fraction
            ));
            warn = true;
        }
        if k_max < config.min_k_max {
            notes.push(format!(
                "K_max = {} is below the floor {}",
                k_max, config.min_k_max
            ));
            warn = true;
        }
        if warn {
            Verdict::Warn
        } else {
            Verdict::Ok
        }
    };

    AuditReport {
        instance: inst.into(),
        k_max,
        census,
        weak_fraction: weak,
        min_fixed_points,
        verdict,
        notes,
    }
}

/// Parses `a/b`, a plain decimal such as `0.001`, or an integer.
pub fn parse_fraction(s: &str) -> Result<Fraction> {
    let s = s.trim();
    let bad = || Error::invalid(format!("cannot parse fraction {s:?}"));
    if let Some((num, den)) = s.split_once('/') {
        let num = BigUint::from_str(num.trim()).map_err(|_| bad())?;
        let den = BigUint::from_str(den.trim()).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(Fraction::new(num, den));
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    if !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let num = BigUint::from_str(&digits).map_err(|_| bad())?;
    let den = num_traits::pow(BigUint::from(10u32), frac.len());
    Ok(Fraction::new(num, den))
}

/// Decimal or `0x`-prefixed hexadecimal.
pub fn parse_biguint(s: &str) -> Result<BigUint> {
    let s = s.trim();
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => BigUint::parse_bytes(hex.as_bytes(), 16),
        None => BigUint::parse_bytes(s.as_bytes(), 10),
    };
    parsed.ok_or_else(|| Error::invalid(format!("cannot parse integer {s:?}")))
}

// ---- JSON wire types -------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
struct JsonInt(BigUint);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_u64() {
            Some(v) if v <= JSON_SAFE_MAX => s.serialize_u64(v),
            _ => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct IntVisitor;
        impl Visitor<'_> for IntVisitor {
            type Value = JsonInt;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a nonnegative integer or decimal string")
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<JsonInt, E> {
                Ok(JsonInt(BigUint::from(v)))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<JsonInt, E> {
                BigUint::from_str(v).map(JsonInt).map_err(E::custom)
            }
        }
        d.deserialize_any(IntVisitor)
    }
}

fn ji(v: &BigUint) -> JsonInt {
    JsonInt(v.clone())
}

#[derive(Serialize, Deserialize)]
struct FractionJson {
    num: JsonInt,
    den: JsonInt,
}

#[derive(Serialize, Deserialize)]
struct CensusRowJson {
    k: JsonInt,
    #[serde(rename = "T_k")]
    t_k: JsonInt,
    #[serde(rename = "E_k")]
    e_k: JsonInt,
}

#[derive(Serialize, Deserialize)]
struct CensusJson {
    n: JsonInt,
    e: JsonInt,
    k_max: JsonInt,
    rows: Vec<CensusRowJson>,
}

#[derive(Serialize, Deserialize)]
struct InstanceJson {
    p: JsonInt,
    q: JsonInt,
    n: JsonInt,
    e: JsonInt,
    phi: JsonInt,
    lambda: JsonInt,
    gcd_e_phi_ok: bool,
}

#[derive(Serialize, Deserialize)]
struct WeakFractionJson {
    bound: JsonInt,
    fraction: FractionJson,
}

#[derive(Serialize, Deserialize)]
struct AuditJson {
    instance: InstanceJson,
    k_max: JsonInt,
    census: CensusJson,
    weak_fraction: Vec<WeakFractionJson>,
    min_fixed_points: JsonInt,
    verdict: Verdict,
    notes: Vec<String>,
}

fn census_rows(census: &ExactOrderCensus) -> Vec<CensusRowJson> {
    census
        .rows()
        .map(|(k, t, e)| CensusRowJson {
            k: ji(k),
            t_k: ji(t),
            e_k: ji(e),
        })
        .collect()
}

fn census_from_json(doc: CensusJson) -> ExactOrderCensus {
    let mut unit_counts = BTreeMap::new();
    let mut all_counts = BTreeMap::new();
    for row in doc.rows {
        unit_counts.insert(row.k.0.clone(), row.t_k.0);
        all_counts.insert(row.k.0, row.e_k.0);
    }
    ExactOrderCensus {
        k_max: doc.k_max.0,
        unit_counts,
        all_counts,
    }
}

fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types always serialize");
    s.push('\n');
    s
}

fn json_error(e: serde_json::Error) -> Error {
    Error::invalid(format!("malformed report: {e}"))
}

// ---- renderers -------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

pub fn render_census_json(n: &BigUint, e: &BigUint, census: &ExactOrderCensus) -> String {
    to_pretty(&CensusJson {
        n: ji(n),
        e: ji(e),
        k_max: ji(&census.k_max),
        rows: census_rows(census),
    })
}

/// Inverse of [`render_census_json`]: `(n, e, census)`.
pub fn parse_census_json(text: &str) -> Result<(BigUint, BigUint, ExactOrderCensus)> {
    let doc: CensusJson = serde_json::from_str(text).map_err(json_error)?;
    Ok((doc.n.0.clone(), doc.e.0.clone(), census_from_json(doc)))
}

/// Header `k,T_k,E_k`, one row per divisor of `K_max` in increasing order.
pub fn render_census_csv(census: &ExactOrderCensus) -> String {
    let mut out = String::from("k,T_k,E_k\n");
    for (k, t, e) in census.rows() {
        writeln!(out, "{k},{t},{e}").unwrap();
    }
    out
}

pub fn render_census_table(n: &BigUint, e: &BigUint, census: &ExactOrderCensus) -> String {
    let mut out = format!("n = {n}, e = {e}, K_max = {}\n", census.k_max);
    let rows: Vec<[String; 3]> = census
        .rows()
        .map(|(k, t, e)| [k.to_string(), t.to_string(), e.to_string()])
        .collect();
    out.push_str(&table(&["k", "T_k", "E_k"], &rows));
    out
}

pub fn render_census(
    n: &BigUint,
    e: &BigUint,
    census: &ExactOrderCensus,
    format: Format,
) -> String {
    match format {
        Format::Json => render_census_json(n, e, census),
        Format::Csv => render_census_csv(census),
        Format::Table => render_census_table(n, e, census),
    }
}

fn table<const N: usize>(header: &[&str; N], rows: &[[String; N]]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let line = |cells: Vec<&str>, out: &mut String| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        out.push_str(padded.join("  ").trim_end());
        out.push('\n');
    };
    line(header.to_vec(), &mut out);
    line(
        widths
            .iter()
            .map(|w| "-".repeat(*w))
            .collect::<Vec<_>>()
            .iter()
            .map(|s| s.as_str())
            .collect(),
        &mut out,
    );
    for row in rows {
        line(row.iter().map(|s| s.as_str()).collect(), &mut out);
    }
    out
}

impl AuditReport {
    fn to_wire(&self) -> AuditJson {
        let i = &self.instance;
        AuditJson {
            instance: InstanceJson {
                p: ji(&i.p),
                q: ji(&i.q),
                n: ji(&i.n),
                e: ji(&i.e),
                phi: ji(&i.phi),
                lambda: ji(&i.lambda),
                gcd_e_phi_ok: i.gcd_e_phi_ok,
            },
            k_max: ji(&self.k_max),
            census: CensusJson {
                n: ji(&i.n),
                e: ji(&i.e),
                k_max: ji(&self.census.k_max),
                rows: census_rows(&self.census),
            },
            weak_fraction: self
                .weak_fraction
                .iter()
                .map(|(b, f)| WeakFractionJson {
                    bound: ji(b),
                    fraction: FractionJson {
                        num: ji(f.numer()),
                        den: ji(f.denom()),
                    },
                })
                .collect(),
            min_fixed_points: ji(&self.min_fixed_points),
            verdict: self.verdict,
            notes: self.notes.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        to_pretty(&self.to_wire())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: AuditJson = serde_json::from_str(text).map_err(json_error)?;
        let i = doc.instance;
        let mut weak_fraction = BTreeMap::new();
        for w in doc.weak_fraction {
            if w.fraction.den.0.is_zero() {
                return Err(Error::invalid("zero denominator in weak_fraction"));
            }
            weak_fraction.insert(w.bound.0, Fraction::new(w.fraction.num.0, w.fraction.den.0));
        }
        Ok(AuditReport {
            instance: InstanceSummary {
                p: i.p.0,
                q: i.q.0,
                n: i.n.0,
                e: i.e.0,
                phi: i.phi.0,
                lambda: i.lambda.0,
                gcd_e_phi_ok: i.gcd_e_phi_ok,
            },
            k_max: doc.k_max.0,
            census: census_from_json(doc.census),
            weak_fraction,
            min_fixed_points: doc.min_fixed_points.0,
            verdict: doc.verdict,
            notes: doc.notes,
        })
    }

    pub fn to_table(&self) -> String {
        let i = &self.instance;
        let mut out = String::new();
        writeln!(out, "p = {}, q = {}, n = {}, e = {}", i.p, i.q, i.n, i.e).unwrap();
        writeln!(
            out,
            "phi = {}, lambda = {}, gcd(e, phi) = 1: {}",
            i.phi, i.lambda, i.gcd_e_phi_ok
        )
        .unwrap();
        writeln!(
            out,
            "K_max = {}, fixed points = {}",
            self.k_max, self.min_fixed_points
        )
        .unwrap();
        writeln!(out, "verdict: {}", self.verdict).unwrap();
        out.push('\n');
        out.push_str(&render_census_table(&i.n, &i.e, &self.census));
        out.push('\n');
        let rows: Vec<[String; 2]> = self
            .weak_fraction
            .iter()
            .map(|(b, f)| [b.to_string(), f.to_string()])
            .collect();
        out.push_str(&table(&["bound", "weak fraction"], &rows));
        for note in &self.notes {
            writeln!(out, "note: {note}").unwrap();
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => render_census_csv(&self.census),
            Format::Table => self.to_table(),
        }
    }
}

#[derive(Serialize)]
struct CycleJson {
    length: JsonInt,
    points: JsonInt,
    cycles: JsonInt,
}

#[derive(Serialize)]
struct CyclesJson {
    n: JsonInt,
    e: JsonInt,
    cycles: Vec<CycleJson>,
}

pub fn render_cycles(e: &BigUint, cycles: &CycleStructure, format: Format) -> String {
    match format {
        Format::Json => to_pretty(&CyclesJson {
            n: ji(&cycles.n),
            e: ji(e),
            cycles: cycles
                .entries
                .iter()
                .map(|(k, c)| CycleJson {
                    length: ji(k),
                    points: ji(&c.points),
                    cycles: ji(&c.cycles),
                })
                .collect(),
        }),
        Format::Csv => {
            let mut out = String::from("length,points,cycles\n");
            for (k, c) in &cycles.entries {
                writeln!(out, "{k},{},{}", c.points, c.cycles).unwrap();
            }
            out
        }
        Format::Table => {
            let rows: Vec<[String; 3]> = cycles
                .entries
                .iter()
                .map(|(k, c)| [k.to_string(), c.points.to_string(), c.cycles.to_string()])
                .collect();
            format!(
                "n = {}, e = {}\n{}",
                cycles.n,
                e,
                table(&["length", "points", "cycles"], &rows)
            )
        }
    }
}

#[derive(Serialize)]
struct PointsJson {
    n: JsonInt,
    e: JsonInt,
    k: JsonInt,
    count: usize,
    points: Vec<JsonInt>,
}

pub fn render_points(
    inst: &RsaInstance,
    k: &BigUint,
    points: &[BigUint],
    format: Format,
) -> String {
    match format {
        Format::Json => to_pretty(&PointsJson {
            n: ji(inst.n()),
            e: ji(inst.e()),
            k: ji(k),
            count: points.len(),
            points: points.iter().map(ji).collect(),
        }),
        Format::Csv | Format::Table => {
            let mut out = String::new();
            if format == Format::Csv {
                out.push_str("point\n");
            }
            for p in points {
                writeln!(out, "{p}").unwrap();
            }
            out
        }
    }
}

/// Result of the factoring demonstration: a nontrivial fixed point and what
/// the gcd extraction recovered from it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorDemo {
    pub n: BigUint,
    pub e: BigUint,
    pub fixed_point: Option<BigUint>,
    pub components: Option<(BigUint, BigUint)>,
    pub factor: Option<BigUint>,
}

#[derive(Serialize)]
struct FactorDemoJson {
    n: JsonInt,
    e: JsonInt,
    fixed_point: Option<JsonInt>,
    mod_p: Option<JsonInt>,
    mod_q: Option<JsonInt>,
    factor: Option<JsonInt>,
    cofactor: Option<JsonInt>,
}

impl FactorDemo {
    pub fn render(&self, format: Format) -> String {
        let cofactor = self.factor.as_ref().map(|f| &self.n / f);
        match format {
            Format::Json => to_pretty(&FactorDemoJson {
                n: ji(&self.n),
                e: ji(&self.e),
                fixed_point: self.fixed_point.as_ref().map(ji),
                mod_p: self.components.as_ref().map(|c| ji(&c.0)),
                mod_q: self.components.as_ref().map(|c| ji(&c.1)),
                factor: self.factor.as_ref().map(ji),
                cofactor: cofactor.as_ref().map(ji),
            }),
            Format::Csv | Format::Table => {
                let show =
                    |v: &Option<BigUint>| v.as_ref().map_or("-".to_string(), |x| x.to_string());
                let mut out = format!("n = {}, e = {}\n", self.n, self.e);
                writeln!(out, "fixed point: {}", show(&self.fixed_point)).unwrap();
                if let Some((a, b)) = &self.components {
                    writeln!(out, "components: ({a} mod p, {b} mod q)").unwrap();
                }
                writeln!(
                    out,
                    "factor: {}, cofactor: {}",
                    show(&self.factor),
                    show(&cofactor)
                )
                .unwrap();
                out
            }
        }
    }
}

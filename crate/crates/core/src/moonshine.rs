//! Weak moonshine modules built from a class-to-Hauptmodul assignment.
//!
//! Given McKay-Thompson series `T(1, C_j)` for every conjugacy class, the
//! multiplicity generating functions are
//!
//! ```text
//! M_i = (1/|G|) sum_j |C_j| conj(chi_i(C_j)) T(1, C_j)
//! ```
//!
//! and the width-r series are `T(r, g) = sum_i chi_i^(r)(g) M_i`. The module
//! does not construct the graded representation itself; it takes the
//! assignment as input and certifies what follows from it.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::chartab::CharacterTable;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::frobenius::{self, RCharacterValues};
use crate::group;
use crate::qseries::Hauptmodul;
use crate::report::Report;
use crate::series::LaurentSeries;

const D4_ASSIGNMENT: &str = include_str!("../data/d4_assignment.json");
const Q8_ASSIGNMENT: &str = include_str!("../data/q8_assignment.json");

/// Digits kept when rendering asymptotic ratios.
pub const DELTA_DIGITS: usize = 5;

/// On-disk form of an assignment: class representative label to level.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ModuleSpecFile {
    pub group: String,
    pub assignment: BTreeMap<String, LevelEntry>,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct LevelEntry {
    pub level: u64,
}

/// How classes without an explicit assignment get their series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AssignmentRule {
    /// The bundled assignment when the group has one (D4, Q8), otherwise
    /// [`AssignmentRule::ElementOrder`].
    Default,
    /// The Hauptmodul whose level is the order of the class elements.
    ElementOrder,
}

/// A group, its character table, and one Hauptmodul per conjugacy class.
#[derive(Clone, Debug)]
pub struct ModuleSpec {
    table: CharacterTable,
    assignment: Vec<Hauptmodul>,
    series: Vec<LaurentSeries>,
    precision: i64,
}

impl ModuleSpec {
    /// `assignment[j]` is the series of canonical class `j`.
    pub fn new(table: CharacterTable, assignment: Vec<Hauptmodul>, precision: i64) -> Result<Self> {
        if assignment.len() != table.classes().len() {
            return Err(Error::InvalidSpec(format!(
                "{} classes but {} assigned series",
                table.classes().len(),
                assignment.len()
            )));
        }
        let mut cache: BTreeMap<Hauptmodul, LaurentSeries> = BTreeMap::new();
        let series = assignment
            .iter()
            .map(|h| cache.entry(*h).or_insert_with(|| h.expansion(precision)).clone())
            .collect();
        Ok(Self {
            table,
            assignment,
            series,
            precision,
        })
    }

    pub fn with_rule(table: CharacterTable, rule: AssignmentRule, precision: i64) -> Result<Self> {
        if rule == AssignmentRule::Default {
            if let Some(file) = bundled_assignment(table.group().name()) {
                return Self::from_file_data(table, &file, precision);
            }
        }
        let classes = table.classes();
        let assignment = (0..classes.len())
            .map(|j| {
                let order = classes.order(j);
                Hauptmodul::from_level(order).map_err(|_| Error::UnsupportedOrder { class: j, order })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(table, assignment, precision)
    }

    /// Every class must be named by exactly one of its elements.
    pub fn from_file_data(table: CharacterTable, file: &ModuleSpecFile, precision: i64) -> Result<Self> {
        let group = table.group();
        let classes = table.classes();
        let mut assignment: Vec<Option<Hauptmodul>> = vec![None; classes.len()];
        for (label, entry) in &file.assignment {
            let g = group.element(label)?;
            let j = classes.class_of(g);
            if assignment[j].is_some() {
                return Err(Error::InvalidSpec(format!(
                    "class of `{label}` is assigned more than once"
                )));
            }
            assignment[j] = Some(Hauptmodul::from_level(entry.level)?);
        }
        let assignment = assignment
            .into_iter()
            .enumerate()
            .map(|(j, h)| {
                h.ok_or_else(|| {
                    Error::InvalidSpec(format!(
                        "class of `{}` has no assigned series",
                        group.label(classes.representative(j))
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(table, assignment, precision)
    }

    /// Reads an assignment file; the group is resolved by name or path.
    pub fn load(path: impl AsRef<Path>, precision: i64) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let file: ModuleSpecFile = serde_json::from_str(&text)?;
        let table = CharacterTable::for_group(group::resolve(&file.group)?)?;
        Self::from_file_data(table, &file, precision)
    }

    pub fn to_file_data(&self) -> ModuleSpecFile {
        let group = self.table.group();
        let classes = self.table.classes();
        ModuleSpecFile {
            group: group.name().to_string(),
            assignment: self
                .assignment
                .iter()
                .enumerate()
                .map(|(j, h)| {
                    (
                        group.label(classes.representative(j)).to_string(),
                        LevelEntry { level: h.level() },
                    )
                })
                .collect(),
        }
    }

    pub fn table(&self) -> &CharacterTable {
        &self.table
    }

    pub fn assignment(&self) -> &[Hauptmodul] {
        &self.assignment
    }

    /// `T(1, C_j)`.
    pub fn series(&self, j: usize) -> &LaurentSeries {
        &self.series[j]
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    /// The common pole order `d`: every series starts at `q^-d` or later.
    pub fn pole_order(&self) -> i64 {
        self.series
            .iter()
            .filter_map(LaurentSeries::valuation)
            .map(|v| -v)
            .max()
            .unwrap_or(0)
            .max(0)
    }

    /// Whether the identity class's series has the (weakly) largest
    /// coefficients of all assigned series across the window.
    pub fn identity_dominates(&self) -> bool {
        let e = self.table.classes().class_of(self.table.group().identity());
        let lo = -self.pole_order();
        (lo..self.precision).all(|k| {
            let top = self.series[e].coefficient(k).unwrap_or_default();
            self.series
                .iter()
                .all(|s| s.coefficient(k).unwrap_or_default() <= top)
        })
    }
}

/// Bundled assignment for groups that have one.
pub fn bundled_assignment(name: &str) -> Option<ModuleSpecFile> {
    let text = match name.to_ascii_lowercase().as_str() {
        "d4" => D4_ASSIGNMENT,
        "q8" => Q8_ASSIGNMENT,
        _ => return None,
    };
    Some(serde_json::from_str(text).expect("bundled assignment parses"))
}

/// [`ModuleSpec`] under [`AssignmentRule::Default`].
pub fn default_assignment(table: CharacterTable, precision: i64) -> Result<ModuleSpec> {
    ModuleSpec::with_rule(table, AssignmentRule::Default, precision)
}

/// Why a multiplicity coefficient is not a genuine multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Irregularity {
    Negative,
    Fractional,
    Irrational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityWitness {
    /// 0-based character index.
    pub character: usize,
    pub exponent: i64,
    pub value: String,
    pub kind: Irregularity,
}

/// The series `M_i` with integrality, sign and completeness diagnostics.
#[derive(Clone, Debug)]
pub struct MultiplicityTable {
    series: Vec<LaurentSeries<Cyclotomic>>,
    pub integral: bool,
    pub nonnegative: bool,
    pub complete: bool,
    pub witnesses: Vec<MultiplicityWitness>,
}

impl MultiplicityTable {
    pub fn len(&self) -> usize {
        self.series.len()
    }

    pub fn is_empty(&self) -> bool {
        self.series.is_empty()
    }

    /// `M_i` with exact cyclotomic coefficients.
    pub fn series(&self, i: usize) -> &LaurentSeries<Cyclotomic> {
        &self.series[i]
    }

    pub fn all_series(&self) -> &[LaurentSeries<Cyclotomic>] {
        &self.series
    }

    /// `M_i` over `Q`; fails if a coefficient is irrational.
    pub fn rational(&self, i: usize) -> Result<LaurentSeries> {
        let s = &self.series[i];
        s.to_rational().ok_or_else(|| {
            let exponent = s
                .coefficients()
                .find(|(_, c)| !c.is_rational())
                .map(|(k, _)| k)
                .unwrap_or_default();
            Error::NonRational { exponent }
        })
    }

    /// `m_i(n)` as an exact rational.
    pub fn coefficient(&self, i: usize, n: i64) -> Result<BigRational> {
        let c = self.series[i].coeff(n)?;
        c.to_rational().cloned().ok_or(Error::NonRational { exponent: n })
    }

    pub fn precision(&self) -> i64 {
        self.series
            .iter()
            .map(LaurentSeries::precision)
            .min()
            .unwrap_or(0)
    }

    /// Every multiplicity in the window is a nonnegative integer and every
    /// irreducible occurs.
    pub fn is_genuine(&self) -> bool {
        self.integral && self.nonnegative && self.complete
    }
}

/// The multiplicity generating functions of a spec.
pub fn multiplicities(spec: &ModuleSpec) -> MultiplicityTable {
    let table = spec.table();
    let classes = table.classes();
    let order = table.group().order() as i64;
    let t_cyc: Vec<LaurentSeries<Cyclotomic>> =
        (0..classes.len()).map(|j| spec.series(j).to_cyclotomic()).collect();
    let mut series = Vec::with_capacity(table.len());
    for i in 0..table.len() {
        let mut acc = LaurentSeries::<Cyclotomic>::zero(spec.precision());
        for (j, tj) in t_cyc.iter().enumerate() {
            let weight = table
                .class_value(i, j)
                .conj()
                .scale(&BigRational::new(BigInt::from(classes.size(j)), BigInt::from(order)));
            if !weight.is_zero() {
                acc = &acc + &tj.scale(&weight);
            }
        }
        series.push(acc);
    }
    classify(series)
}

fn classify(series: Vec<LaurentSeries<Cyclotomic>>) -> MultiplicityTable {
    let mut witnesses = Vec::new();
    let mut complete = true;
    for (i, s) in series.iter().enumerate() {
        if s.is_zero() {
            complete = false;
        }
        for (k, c) in s.terms() {
            let kind = match c.to_rational() {
                None => Some(Irregularity::Irrational),
                Some(q) if !q.is_integer() => Some(Irregularity::Fractional),
                Some(q) if q.is_negative() => Some(Irregularity::Negative),
                Some(_) => None,
            };
            if let Some(kind) = kind {
                witnesses.push(MultiplicityWitness {
                    character: i,
                    exponent: k,
                    value: c.to_string(),
                    kind,
                });
            }
        }
    }
    let integral = witnesses.iter().all(|w| w.kind == Irregularity::Negative);
    let nonnegative = !witnesses.iter().any(|w| {
        w.kind == Irregularity::Negative
            || (w.kind == Irregularity::Fractional && w.value.starts_with('-'))
    });
    MultiplicityTable {
        series,
        integral,
        nonnegative,
        complete,
        witnesses,
    }
}

/// `T(r, t) = sum_i chi_i^(r)(t) M_i` with `r = t.len()`.
pub fn frob_series(spec: &ModuleSpec, mult: &MultiplicityTable, t: &[usize]) -> LaurentSeries<Cyclotomic> {
    let table = spec.table();
    let mut acc = LaurentSeries::<Cyclotomic>::zero(mult.precision());
    for i in 0..table.len() {
        let c = frobenius::r_char_recursive(table, i, t);
        if !c.is_zero() {
            acc = &acc + &mult.series(i).scale(&c);
        }
    }
    acc
}

/// For every character `i`, `sum over G^(r) of conj(chi_i^(r)(g)) T(r, g)`.
fn recovery_sums(spec: &ModuleSpec, mult: &MultiplicityTable, r: usize) -> Result<Vec<LaurentSeries<Cyclotomic>>> {
    let table = spec.table();
    let values = (0..table.len())
        .map(|i| RCharacterValues::compute(table, i, r))
        .collect::<Result<Vec<_>>>()?;
    let precision = mult.precision();
    let mut sums = vec![LaurentSeries::<Cyclotomic>::zero(precision); table.len()];
    let count = values.first().map_or(0, |v| v.values().len());
    for idx in 0..count {
        let mut t = LaurentSeries::<Cyclotomic>::zero(precision);
        let mut nonzero = false;
        for (k, v) in values.iter().enumerate() {
            let c = &v.values()[idx];
            if !c.is_zero() {
                t = &t + &mult.series(k).scale(c);
                nonzero = true;
            }
        }
        if !nonzero {
            continue;
        }
        for (i, v) in values.iter().enumerate() {
            let c = &v.values()[idx];
            if !c.is_zero() {
                sums[i] = &sums[i] + &t.scale(&c.conj());
            }
        }
    }
    Ok(sums)
}

/// Recovers `M_i` from the width-r series:
/// `d^(r-1) / (r! |G|^r (d-1)...(d-r+1))` times
/// `sum over G^(r) of conj(chi_i^(r)(g)) T(r, g)`, with `d = dim chi_i >= r`.
pub fn recover_multiplicities(
    spec: &ModuleSpec,
    mult: &MultiplicityTable,
    r: usize,
    i: usize,
) -> Result<LaurentSeries<Cyclotomic>> {
    let table = spec.table();
    let dim = table.dim(i);
    if dim < r as u64 {
        return Err(Error::DimensionTooSmall { width: r, dim });
    }
    let sums = recovery_sums(spec, mult, r)?;
    Ok(sums[i].scale(&recovery_prefactor(table, i, r)))
}

fn recovery_prefactor(table: &CharacterTable, i: usize, r: usize) -> Cyclotomic {
    let rhs = frobenius::orthogonality_constant(table.group().order() as u64, table.dim(i), r, true);
    Cyclotomic::rational(rhs.recip())
}

/// `delta_i(n) = m_i(n) / sum_j m_j(n)` and the regular-representation limits
/// `dim chi_i / sum_j dim chi_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deltas {
    pub grade: i64,
    pub values: Vec<BigRational>,
    pub limits: Vec<BigRational>,
}

impl Deltas {
    /// Values cut (not rounded) to [`DELTA_DIGITS`] decimals.
    pub fn rendered(&self) -> Vec<String> {
        self.values
            .iter()
            .map(|q| truncate_decimal(q, DELTA_DIGITS))
            .collect()
    }
}

pub fn asymptotic_deltas(table: &CharacterTable, mult: &MultiplicityTable, n: i64) -> Result<Deltas> {
    let m = (0..mult.len())
        .map(|i| mult.coefficient(i, n))
        .collect::<Result<Vec<_>>>()?;
    let total: BigRational = m.iter().sum();
    if total.is_zero() {
        return Err(Error::ZeroTotalMultiplicity(n));
    }
    let dim_total: u64 = table.dims().iter().sum();
    Ok(Deltas {
        grade: n,
        values: m.iter().map(|x| x / &total).collect(),
        limits: table
            .dims()
            .iter()
            .map(|&d| BigRational::new(d.into(), dim_total.into()))
            .collect(),
    })
}

/// Decimal expansion of `q` cut after `digits` places, e.g. `0.16678`.
pub fn truncate_decimal(q: &BigRational, digits: usize) -> String {
    let scale = BigInt::from(10).pow(digits as u32);
    let scaled = (q.abs() * BigRational::from_integer(scale.clone())).to_integer();
    let int_part = &scaled / &scale;
    let frac = (&scaled % &scale).to_string();
    let sign = if q.is_negative() && !scaled.is_zero() { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{int_part}");
    }
    format!("{sign}{int_part}.{}{frac}", "0".repeat(digits - frac.len()))
}

/// Everything [`certify`] establishes about a spec at a given width.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub group: String,
    pub width: usize,
    pub precision: i64,
    pub multiplicities: MultiplicityTable,
    pub identity_dominates: bool,
    pub checks: Vec<Report>,
    pub deltas: Vec<Deltas>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.multiplicities.is_genuine() && self.checks.iter().all(Report::passed)
    }
}

/// Checks integrality, nonnegativity and completeness of the multiplicities,
/// and for every `r <= width` that the width-r series reproduce the `M_i`.
pub fn certify(spec: &ModuleSpec, width: usize) -> Result<Certificate> {
    let table = spec.table();
    let group = table.group();
    let classes = table.classes();
    let mult = multiplicities(spec);
    let mut checks = Vec::new();

    let mut dims = Report::new("graded dimension equals the identity series");
    let graded: LaurentSeries<Cyclotomic> = (0..table.len()).fold(
        LaurentSeries::zero(spec.precision()),
        |acc, i| &acc + &mult.series(i).scale(&Cyclotomic::from_integer(table.dim(i) as i64)),
    );
    let e_class = classes.class_of(group.identity());
    dims.check(|| "T(1, e)".into(), &graded, &spec.series(e_class).to_cyclotomic());
    checks.push(dims);

    let mut traces = Report::new("width-1 series reproduce the assigned series");
    for g in 0..group.order() {
        let lhs = frob_series(spec, &mult, &[g]);
        let rhs = spec.series(classes.class_of(g)).to_cyclotomic();
        traces.check(|| format!("g={}", group.label(g)), &lhs, &rhs);
    }
    checks.push(traces);

    for r in 1..=width {
        let mut rec = Report::new(format!("width-{r} series recover the multiplicities"));
        match recovery_sums(spec, &mult, r) {
            Ok(sums) => {
                for (i, sum) in sums.iter().enumerate() {
                    if table.dim(i) >= r as u64 {
                        let lhs = sum.scale(&recovery_prefactor(table, i, r));
                        rec.check(|| format!("chi{}", i + 1), &lhs, mult.series(i));
                    } else {
                        let zero = LaurentSeries::zero(mult.precision());
                        rec.check(|| format!("chi{} (degree below width)", i + 1), &sums[i], &zero);
                    }
                }
            }
            Err(e) => rec.fail(format!("r={r}"), e.to_string(), "within budget"),
        }
        checks.push(rec);
    }

    let mut deltas = Vec::new();
    for n in 1..spec.precision().min(5) {
        if let Ok(d) = asymptotic_deltas(table, &mult, n) {
            deltas.push(d);
        }
    }

    Ok(Certificate {
        group: group.name().to_string(),
        width,
        precision: spec.precision(),
        identity_dominates: spec.identity_dominates(),
        multiplicities: mult,
        checks,
        deltas,
    })
}

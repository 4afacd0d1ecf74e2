//! Command-line front end.
//!
//! Exit status: 0 on success (including a verification run with no
//! violations), 2 when a verification finds a violated identity, 1 on usage,
//! input or I/O errors. With `--json` every integer is emitted as a decimal
//! string.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::chartab::CharacterTable;
use crate::cyclotomic::Cyclotomic;
use crate::distinguish::{self, SearchLimits, Separation, Verdict};
use crate::error::{Error, Result};
use crate::frobenius::{self, Tuple};
use crate::group::{self, FiniteGroup};
use crate::moonshine::{self, AssignmentRule, ModuleSpec};
use crate::qseries::{self, Hauptmodul};
use crate::report::Report;
use crate::series::{render_rational, Coefficient, LaurentSeries};

/// Largest width accepted without `--unsafe-width`.
pub const SAFE_WIDTH: usize = 3;

/// Largest width accepted with `--unsafe-width`.
pub const UNSAFE_WIDTH: usize = frobenius::CYCLE_FORMULA_BOUND;

/// Default number of coefficients printed, counted from the pole.
pub const DEFAULT_TERMS: i64 = qseries::DEFAULT_PRECISION + 1;

#[derive(Parser, Debug)]
#[command(
    name = "weak-moonshine",
    version,
    about = "Frobenius r-characters, Hauptmoduln and width-s weak moonshine for small groups"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Allow widths above 3 (up to 6); cost grows like |G|^r.
    #[arg(long, global = true)]
    unsafe_width: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Inspect bundled or user-supplied groups.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Character tables.
    #[command(subcommand)]
    Chartab(ChartabCmd),
    /// Frobenius r-characters.
    #[command(subcommand)]
    Rchar(RcharCmd),
    /// Exact q-expansions.
    #[command(subcommand)]
    Series(SeriesCmd),
    /// Multiplicities and McKay-Thompson series of a weak moonshine module.
    #[command(subcommand)]
    Moonshine(MoonshineCmd),
    /// Decide whether two groups share all r-characters up to a width.
    Distinguish {
        first: String,
        second: String,
        #[arg(long, default_value_t = 2)]
        width: usize,
    },
    /// Run verification sweeps.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand, Debug)]
enum GroupCmd {
    /// List the bundled groups.
    List,
    /// Elements and multiplication table.
    Show { group: String },
    /// Conjugacy classes with sizes and element orders.
    Classes { group: String },
}

#[derive(Subcommand, Debug)]
enum ChartabCmd {
    /// Print the character table (bundled if available, else computed).
    Show {
        group: String,
        /// Read the table from a JSON file instead.
        #[arg(long)]
        table: Option<String>,
    },
    /// Check row orthogonality and column sums.
    Verify {
        group: String,
        #[arg(long)]
        table: Option<String>,
    },
    /// Compute the table from the multiplication table.
    Compute {
        group: String,
        /// Write the table as JSON to this path.
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum RcharCmd {
    /// Value of chi^(r) at a tuple; r is the tuple length.
    Eval {
        #[arg(long)]
        group: String,
        /// 1-based character index.
        #[arg(long = "char")]
        character: usize,
        /// Comma-separated element labels.
        #[arg(long, allow_hyphen_values = true)]
        tuple: String,
    },
    /// Orthogonality of r-characters against the closed form.
    VerifyOrthogonality {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 3)]
        max_width: usize,
    },
    /// Conjugation and translation sums, zero sums and vanishing above the degree.
    VerifyLemmas {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 3)]
        max_width: usize,
    },
}

#[derive(Subcommand, Debug)]
enum SeriesCmd {
    /// f1, f2 or f4.
    Hauptmodul {
        #[arg(long)]
        level: u64,
        /// Number of coefficients, starting at the pole.
        #[arg(long, default_value_t = DEFAULT_TERMS)]
        prec: i64,
    },
    /// A product of eta(M tau)^E.
    EtaQuotient {
        /// Factors `M:E`, comma separated, e.g. `1:24,2:-24`.
        #[arg(long, allow_hyphen_values = true)]
        spec: String,
        /// Number of coefficients, starting at the leading exponent.
        #[arg(long, default_value_t = DEFAULT_TERMS)]
        prec: i64,
    },
}

#[derive(Args, Debug)]
struct ModuleArgs {
    /// Group name or path; uses the default assignment.
    #[arg(long, required_unless_present = "spec")]
    group: Option<String>,
    /// Assignment file `{"group": .., "assignment": {rep: {"level": N}}}`.
    #[arg(long, conflicts_with = "group")]
    spec: Option<String>,
    /// How classes are assigned Hauptmoduln when no file is given.
    #[arg(long, value_enum, default_value_t = Rule::Default)]
    rule: Rule,
    /// Number of coefficients, starting at the pole.
    #[arg(long, default_value_t = DEFAULT_TERMS)]
    prec: i64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Rule {
    Default,
    ElementOrder,
}

#[derive(Subcommand, Debug)]
enum MoonshineCmd {
    /// The multiplicity generating functions M_i.
    Multiplicities(ModuleArgs),
    /// The width-r McKay-Thompson series at a tuple.
    Mt {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long)]
        width: usize,
        #[arg(long, allow_hyphen_values = true)]
        tuple: String,
    },
    /// Integrality, positivity, completeness and recovery checks.
    Certify {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long, default_value_t = 2)]
        width: usize,
    },
    /// Proportions m_i(n) / sum_j m_j(n).
    Deltas {
        #[command(flatten)]
        module: ModuleArgs,
        /// Grades as `a..b` (inclusive), `n`, or a comma list.
        #[arg(long, default_value = "1..4")]
        grades: String,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// Every identity on every bundled group up to the given order.
    All {
        #[arg(long, default_value_t = 8)]
        max_order: usize,
        #[arg(long, default_value_t = 3)]
        max_width: usize,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    1
                }
            };
        }
    };
    let mut ctx = Context {
        json: cli.json,
        max_width: if cli.unsafe_width { UNSAFE_WIDTH } else { SAFE_WIDTH },
        out,
    };
    match ctx.dispatch(cli.command) {
        Ok(status) => status,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

struct Context<'a> {
    json: bool,
    max_width: usize,
    out: &'a mut dyn Write,
}

/// Outcome of a command that ran to completion.
type Status = i32;

const OK: Status = 0;
const VIOLATED: Status = 2;

impl Context<'_> {
    fn dispatch(&mut self, command: Command) -> Result<Status> {
        match command {
            Command::Group(c) => self.group(c),
            Command::Chartab(c) => self.chartab(c),
            Command::Rchar(c) => self.rchar(c),
            Command::Series(c) => self.series(c),
            Command::Moonshine(c) => self.moonshine(c),
            Command::Distinguish {
                first,
                second,
                width,
            } => self.distinguish(&first, &second, width),
            Command::Verify(VerifyCmd::All {
                max_order,
                max_width,
            }) => self.verify_all(max_order, max_width),
        }
    }

    fn emit_json(&mut self, v: &Value) -> Result<()> {
        writeln!(self.out, "{}", serde_json::to_string_pretty(v)?)?;
        Ok(())
    }

    fn line(&mut self, s: impl AsRef<str>) -> Result<()> {
        writeln!(self.out, "{}", s.as_ref())?;
        Ok(())
    }

    fn check_width(&self, width: usize) -> Result<()> {
        if width == 0 {
            return Err(Error::Parse("width must be at least 1".into()));
        }
        if width > self.max_width {
            return Err(Error::BoundExceeded {
                what: "width (pass --unsafe-width to raise it)",
                limit: self.max_width as u128,
                actual: width as u128,
            });
        }
        Ok(())
    }

    fn group(&mut self, c: GroupCmd) -> Result<Status> {
        match c {
            GroupCmd::List => {
                let groups = group::all_bundled();
                if self.json {
                    let v: Vec<Value> = groups
                        .iter()
                        .map(|g| json!({"name": g.name(), "order": g.order().to_string()}))
                        .collect();
                    self.emit_json(&Value::Array(v))?;
                } else {
                    for g in &groups {
                        self.line(format!("{:<10} order {}", g.name(), g.order()))?;
                    }
                }
            }
            GroupCmd::Show { group } => {
                let g = group::resolve(&group)?;
                if self.json {
                    let file = g.to_file_data();
                    let table: Vec<Vec<String>> = file
                        .table
                        .iter()
                        .map(|row| row.iter().map(|x| x.to_string()).collect())
                        .collect();
                    self.emit_json(&json!({"name": file.name, "labels": file.labels, "table": table}))?;
                } else {
                    self.line(g.to_string())?;
                    let width = g.labels().iter().map(String::len).max().unwrap_or(1);
                    let header: Vec<String> = g.labels().iter().map(|l| format!("{l:>width$}")).collect();
                    self.line(format!("{:>width$} | {}", "*", header.join(" ")))?;
                    for a in 0..g.order() {
                        let row: Vec<String> = (0..g.order())
                            .map(|b| format!("{:>width$}", g.label(g.mul(a, b))))
                            .collect();
                        self.line(format!("{:>width$} | {}", g.label(a), row.join(" ")))?;
                    }
                }
            }
            GroupCmd::Classes { group } => {
                let g = group::resolve(&group)?;
                let classes = g.conjugacy_classes();
                if self.json {
                    let v: Vec<Value> = (0..classes.len())
                        .map(|j| {
                            json!({
                                "representative": g.label(classes.representative(j)),
                                "size": classes.size(j).to_string(),
                                "order": classes.order(j).to_string(),
                                "elements": classes.class(j).iter().map(|&x| g.label(x)).collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    self.emit_json(&json!({"group": g.name(), "classes": v}))?;
                } else {
                    self.line(format!("{g}: {} classes", classes.len()))?;
                    for j in 0..classes.len() {
                        let elems: Vec<&str> = classes.class(j).iter().map(|&x| g.label(x)).collect();
                        self.line(format!(
                            "C{}  size {}  order {}  {{{}}}",
                            j + 1,
                            classes.size(j),
                            classes.order(j),
                            elems.join(", ")
                        ))?;
                    }
                }
            }
        }
        Ok(OK)
    }

    fn load_table(&self, group: &str, table: Option<&str>) -> Result<CharacterTable> {
        let g = group::resolve(group)?;
        match table {
            Some(path) => CharacterTable::load(g, path),
            None => CharacterTable::for_group(g),
        }
    }

    fn print_table(&mut self, t: &CharacterTable) -> Result<()> {
        if self.json {
            let file = t.to_file_data();
            return self.emit_json(&json!({
                "group": file.group,
                "class_reps": file.class_reps,
                "class_sizes": file.class_sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                "values": file.values,
            }));
        }
        let g = t.group();
        let classes = t.classes();
        let mut cells: Vec<Vec<String>> = Vec::new();
        cells.push(
            std::iter::once(String::new())
                .chain((0..classes.len()).map(|j| g.label(classes.representative(j)).to_string()))
                .collect(),
        );
        cells.push(
            std::iter::once("size".to_string())
                .chain(classes.sizes().iter().map(|s| s.to_string()))
                .collect(),
        );
        cells.push(
            std::iter::once("order".to_string())
                .chain(classes.orders().iter().map(|o| o.to_string()))
                .collect(),
        );
        for i in 0..t.len() {
            cells.push(
                std::iter::once(format!("chi{}", i + 1))
                    .chain(t.row(i).iter().map(|v| v.to_string()))
                    .collect(),
            );
        }
        let cols = cells[0].len();
        let widths: Vec<usize> = (0..cols)
            .map(|c| cells.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
            .collect();
        self.line(g.to_string())?;
        for row in &cells {
            let text: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(s, &w)| format!("{s:>w$}"))
                .collect();
            self.line(text.join("  ").trim_end())?;
        }
        Ok(())
    }

    fn chartab(&mut self, c: ChartabCmd) -> Result<Status> {
        match c {
            ChartabCmd::Show { group, table } => {
                let t = self.load_table(&group, table.as_deref())?;
                self.print_table(&t)?;
                Ok(OK)
            }
            ChartabCmd::Verify { group, table } => {
                let t = self.load_table(&group, table.as_deref())?;
                let reports = vec![t.verify_row_orthogonality(), t.verify_column_sums()];
                self.print_reports(&reports)
            }
            ChartabCmd::Compute { group, out } => {
                let g = group::resolve(&group)?;
                let t = CharacterTable::compute(&g)?;
                if let Some(path) = out {
                    std::fs::write(&path, serde_json::to_string_pretty(&t.to_file_data())? + "\n")?;
                }
                self.print_table(&t)?;
                Ok(OK)
            }
        }
    }

    fn character_index(t: &CharacterTable, one_based: usize) -> Result<usize> {
        if one_based == 0 || one_based > t.len() {
            return Err(Error::IndexOutOfRange {
                index: one_based,
                limit: t.len(),
            });
        }
        Ok(one_based - 1)
    }

    fn rchar(&mut self, c: RcharCmd) -> Result<Status> {
        match c {
            RcharCmd::Eval {
                group,
                character,
                tuple,
            } => {
                let t = self.load_table(&group, None)?;
                let i = Self::character_index(&t, character)?;
                let tup = Tuple::parse(t.group(), &tuple)?;
                let value = frobenius::r_char_recursive(&t, i, tup.entries());
                if self.json {
                    self.emit_json(&json!({
                        "group": t.group().name(),
                        "character": character.to_string(),
                        "width": tup.width().to_string(),
                        "tuple": tup.entries().iter().map(|&g| t.group().label(g)).collect::<Vec<_>>(),
                        "value": value.to_json(),
                    }))?;
                } else {
                    self.line(value.to_string())?;
                }
                Ok(OK)
            }
            RcharCmd::VerifyOrthogonality { group, max_width } => {
                self.check_width(max_width)?;
                let t = self.load_table(&group, None)?;
                let report = frobenius::verify_orthogonality(&t, max_width)?;
                self.print_reports(&[report])
            }
            RcharCmd::VerifyLemmas { group, max_width } => {
                self.check_width(max_width)?;
                let t = self.load_table(&group, None)?;
                let reports = frobenius::verify_lemmas(&t, max_width)?;
                self.print_reports(&reports)
            }
        }
    }

    fn series(&mut self, c: SeriesCmd) -> Result<Status> {
        match c {
            SeriesCmd::Hauptmodul { level, prec } => {
                check_terms(prec)?;
                let h = Hauptmodul::from_level(level)?;
                let s = h.expansion(prec - 1);
                let extra = if h == Hauptmodul::F4 {
                    let bad = qseries::f4_even_coefficient_violations(&s);
                    json!({"odd_part_violations": bad.iter().map(|k| k.to_string()).collect::<Vec<_>>()})
                } else {
                    json!({})
                };
                self.print_series(h.name(), &s, extra)?;
                Ok(OK)
            }
            SeriesCmd::EtaQuotient { spec, prec } => {
                check_terms(prec)?;
                let factors = qseries::parse_eta_factors(&spec)?;
                let order = qseries::eta_quotient_order(&factors)?;
                let s = qseries::eta_quotient(&factors, order + prec)?;
                let name = factors.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(",");
                self.print_series(&format!("eta quotient {name}"), &s, json!({}))?;
                Ok(OK)
            }
        }
    }

    fn print_series<C: Coefficient + ToJson>(&mut self, name: &str, s: &LaurentSeries<C>, extra: Value) -> Result<()> {
        if self.json {
            let mut v = series_json(s);
            if let (Value::Object(map), Value::Object(more)) = (&mut v, extra) {
                map.insert("name".into(), Value::String(name.to_string()));
                map.extend(more);
            }
            return self.emit_json(&v);
        }
        self.line(format!("{name} = {s}"))?;
        for (k, c) in s.coefficients() {
            self.line(format!("q^{k}: {}", c.render()))?;
        }
        if let Some(Value::Array(bad)) = extra.get("odd_part_violations") {
            if !bad.is_empty() {
                self.line(format!("warning: nonzero even coefficients at {bad:?}"))?;
            }
        }
        Ok(())
    }

    fn module(&self, args: &ModuleArgs) -> Result<ModuleSpec> {
        check_terms(args.prec)?;
        let precision = args.prec - 1;
        match (&args.spec, &args.group) {
            (Some(path), _) => ModuleSpec::load(path, precision),
            (None, Some(name)) => {
                let table = self.load_table(name, None)?;
                let rule = match args.rule {
                    Rule::Default => AssignmentRule::Default,
                    Rule::ElementOrder => AssignmentRule::ElementOrder,
                };
                ModuleSpec::with_rule(table, rule, precision)
            }
            (None, None) => Err(Error::Parse("either --group or --spec is required".into())),
        }
    }

    fn moonshine(&mut self, c: MoonshineCmd) -> Result<Status> {
        match c {
            MoonshineCmd::Multiplicities(args) => {
                let spec = self.module(&args)?;
                let mult = moonshine::multiplicities(&spec);
                if self.json {
                    let series: Vec<Value> = mult.all_series().iter().map(series_json).collect();
                    self.emit_json(&json!({
                        "group": spec.table().group().name(),
                        "assignment": assignment_json(&spec),
                        "multiplicities": series,
                        "integral": mult.integral,
                        "nonnegative": mult.nonnegative,
                        "complete": mult.complete,
                        "witnesses": witnesses_json(&mult),
                    }))?;
                } else {
                    self.line(format!("{}; assignment {}", spec.table().group(), assignment_text(&spec)))?;
                    for i in 0..mult.len() {
                        self.line(format!("M{} = {}", i + 1, mult.series(i)))?;
                    }
                    self.line(format!(
                        "integral: {}  nonnegative: {}  complete: {}",
                        mult.integral, mult.nonnegative, mult.complete
                    ))?;
                    for w in &mult.witnesses {
                        self.line(format!(
                            "  {:?} coefficient {} of q^{} in M{}",
                            w.kind,
                            w.value,
                            w.exponent,
                            w.character + 1
                        ))?;
                    }
                }
                Ok(OK)
            }
            MoonshineCmd::Mt {
                module,
                width,
                tuple,
            } => {
                self.check_width(width)?;
                let spec = self.module(&module)?;
                let tup = Tuple::parse(spec.table().group(), &tuple)?;
                if tup.width() != width {
                    return Err(Error::Parse(format!(
                        "--width {width} but the tuple has {} entries",
                        tup.width()
                    )));
                }
                let mult = moonshine::multiplicities(&spec);
                let s = moonshine::frob_series(&spec, &mult, tup.entries());
                let name = format!("T({width},{})", tup.display(spec.table().group()));
                match s.to_rational() {
                    Some(q) => self.print_series(&name, &q, json!({}))?,
                    None => self.print_series(&name, &s, json!({}))?,
                }
                Ok(OK)
            }
            MoonshineCmd::Certify { module, width } => {
                self.check_width(width)?;
                let spec = self.module(&module)?;
                let cert = moonshine::certify(&spec, width)?;
                self.print_certificate(&spec, &cert)?;
                Ok(if cert.passed() { OK } else { VIOLATED })
            }
            MoonshineCmd::Deltas { module, grades } => {
                let spec = self.module(&module)?;
                let grades = parse_grades(&grades)?;
                let mult = moonshine::multiplicities(&spec);
                let rows = grades
                    .iter()
                    .map(|&n| moonshine::asymptotic_deltas(spec.table(), &mult, n))
                    .collect::<Result<Vec<_>>>()?;
                if self.json {
                    self.emit_json(&Value::Array(rows.iter().map(deltas_json).collect()))?;
                } else {
                    let header: Vec<String> = (1..=mult.len()).map(|i| format!("{:>9}", format!("d{i}"))).collect();
                    self.line(format!("{:>4}  {}", "n", header.join("")))?;
                    for d in &rows {
                        let cells: Vec<String> = d.rendered().iter().map(|s| format!("{s:>9}")).collect();
                        self.line(format!("{:>4}  {}", d.grade, cells.join("")))?;
                    }
                    if let Some(d) = rows.first() {
                        let limits: Vec<String> = d.limits.iter().map(|q| format!("{:>9}", render_rational(q))).collect();
                        self.line(format!("{:>4}  {}", "lim", limits.join("")))?;
                    }
                }
                Ok(OK)
            }
        }
    }

    fn print_certificate(&mut self, spec: &ModuleSpec, cert: &moonshine::Certificate) -> Result<()> {
        let m = &cert.multiplicities;
        if self.json {
            return self.emit_json(&json!({
                "group": cert.group,
                "width": cert.width.to_string(),
                "precision": cert.precision.to_string(),
                "assignment": assignment_json(spec),
                "passed": cert.passed(),
                "integral": m.integral,
                "nonnegative": m.nonnegative,
                "complete": m.complete,
                "identity_dominates": cert.identity_dominates,
                "witnesses": witnesses_json(m),
                "checks": cert.checks.iter().map(report_json).collect::<Vec<_>>(),
                "deltas": cert.deltas.iter().map(deltas_json).collect::<Vec<_>>(),
            }));
        }
        self.line(format!(
            "{} width {} to O(q^{}); assignment {}",
            cert.group,
            cert.width,
            cert.precision,
            assignment_text(spec)
        ))?;
        self.line(format!(
            "multiplicities: integral {}  nonnegative {}  complete {}",
            m.integral, m.nonnegative, m.complete
        ))?;
        for w in &m.witnesses {
            self.line(format!("  {:?} coefficient {} of q^{} in M{}", w.kind, w.value, w.exponent, w.character + 1))?;
        }
        if !cert.identity_dominates {
            self.line("note: some class series exceeds the identity series somewhere in the window")?;
        }
        self.report_lines(&cert.checks)?;
        for d in &cert.deltas {
            self.line(format!("delta n={}: {}", d.grade, d.rendered().join(" ")))?;
        }
        self.line(if cert.passed() { "certified" } else { "NOT certified" })
    }

    fn distinguish(&mut self, first: &str, second: &str, width: usize) -> Result<Status> {
        self.check_width(width)?;
        let a = self.load_table(first, None)?;
        let b = self.load_table(second, None)?;
        let limits = SearchLimits {
            max_width: self.max_width,
            ..SearchLimits::default()
        };
        let verdict = distinguish::equivalent_up_to_width_with(&a, &b, width, &limits)?;
        let (ga, gb) = (a.group(), b.group());
        const READING: &str = "element bijections refining a class matching of the character tables; \
             equivalence at a bounded width is not an isomorphism claim";
        if self.json {
            let body = match &verdict {
                Verdict::Equivalent { matching, bijection } => json!({
                    "verdict": "equivalent",
                    "class_matching": matching_json(matching),
                    "bijection": bijection.iter().enumerate()
                        .map(|(x, &y)| json!([ga.label(x), gb.label(y)])).collect::<Vec<_>>(),
                }),
                Verdict::Separated(Separation::CharacterTables) => json!({
                    "verdict": "separated",
                    "reason": "character tables differ",
                }),
                Verdict::Separated(Separation::Tuple(w)) => json!({
                    "verdict": "separated",
                    "reason": "r-characters differ",
                    "witness": {
                        "width": w.width.to_string(),
                        "tuple": labels(ga, &w.tuple),
                        "image": labels(gb, &w.image),
                        "character": (w.character + 1).to_string(),
                        "matched_character": (w.matched_character + 1).to_string(),
                        "values": w.values.iter().map(Cyclotomic::to_json).collect::<Vec<_>>(),
                        "image_values": w.image_values.iter().map(Cyclotomic::to_json).collect::<Vec<_>>(),
                        "class_matching": matching_json(&w.matching),
                        "reverified": distinguish::witness_holds(&a, &b, w),
                    },
                }),
            };
            let mut v = json!({"first": ga.name(), "second": gb.name(), "width": width.to_string(), "comparison": READING});
            if let (Value::Object(map), Value::Object(more)) = (&mut v, body) {
                map.extend(more);
            }
            self.emit_json(&v)?;
            return Ok(OK);
        }
        self.line(format!("comparing {} and {} up to width {width}", ga.name(), gb.name()))?;
        self.line(format!("comparison: {READING}"))?;
        match &verdict {
            Verdict::Equivalent { matching, bijection } => {
                self.line(format!("equivalent up to width {width}"))?;
                self.line(format!(
                    "class matching preserves element orders: {}, power maps: {}",
                    matching.preserves_orders, matching.preserves_power_maps
                ))?;
                let pairs: Vec<String> = bijection
                    .iter()
                    .enumerate()
                    .map(|(x, &y)| format!("{}->{}", ga.label(x), gb.label(y)))
                    .collect();
                self.line(format!("bijection: {}", pairs.join(" ")))?;
            }
            Verdict::Separated(Separation::CharacterTables) => {
                self.line("separated: the character tables differ")?;
            }
            Verdict::Separated(Separation::Tuple(w)) => {
                self.line(format!("separated at width {}", w.width))?;
                self.line(format!(
                    "witness: chi{}^({})({}) = {} in {} but chi{}^({})({}) = {} in {}",
                    w.character + 1,
                    w.width,
                    labels(ga, &w.tuple).join(","),
                    w.values[w.character],
                    ga.name(),
                    w.matched_character + 1,
                    w.width,
                    labels(gb, &w.image).join(","),
                    w.image_values[w.character],
                    gb.name()
                ))?;
                self.line(format!("re-verified: {}", distinguish::witness_holds(&a, &b, w)))?;
            }
        }
        Ok(OK)
    }

    fn verify_all(&mut self, max_order: usize, max_width: usize) -> Result<Status> {
        self.check_width(max_width)?;
        let mut reports: Vec<Report> = Vec::new();
        for g in group::all_bundled().into_iter().filter(|g| g.order() <= max_order) {
            let t = CharacterTable::for_group(g)?;
            reports.push(t.verify_row_orthogonality());
            reports.push(t.verify_column_sums());
            reports.push(frobenius::verify_orthogonality(&t, max_width)?);
            reports.extend(frobenius::verify_lemmas(&t, max_width)?);
            reports.push(frobenius::verify_cycle_formula(&t, max_width)?);
            reports.push(frobenius::verify_symmetry(&t)?);
            if let Ok(spec) = moonshine::default_assignment(t.clone(), qseries::DEFAULT_PRECISION) {
                let cert = moonshine::certify(&spec, max_width.min(2))?;
                let mut r = Report::new(format!("{} multiplicities are genuine", t.group().name()));
                let m = &cert.multiplicities;
                r.check(|| "integral, nonnegative, complete".into(), &m.is_genuine(), &true);
                reports.push(r);
                reports.extend(cert.checks);
            }
        }
        reports.push(frobenius::verify_omega(8, max_width.clamp(4, UNSAFE_WIDTH), 6)?);
        let mut golden = Report::new("Hauptmoduln are integral with vanishing even part of f4");
        for h in Hauptmodul::ALL {
            let s = h.expansion(qseries::DEFAULT_PRECISION);
            golden.check(|| format!("{h} integral"), &s.is_integral(), &true);
        }
        let f4 = Hauptmodul::F4.expansion(qseries::DEFAULT_PRECISION);
        golden.check(
            || "f4 even coefficients".into(),
            &qseries::f4_even_coefficient_violations(&f4).len(),
            &0,
        );
        reports.push(golden);
        self.print_reports(&reports)
    }

    fn report_lines(&mut self, reports: &[Report]) -> Result<()> {
        for r in reports {
            let tag = if r.passed() { "PASS" } else { "FAIL" };
            self.line(format!("{tag}  {} ({} checked)", r.identity, r.checked))?;
            for v in r.violations.iter().take(5) {
                self.line(format!("      {}: {} != {}", v.context, v.lhs, v.rhs))?;
            }
        }
        Ok(())
    }

    fn print_reports(&mut self, reports: &[Report]) -> Result<Status> {
        let checked: usize = reports.iter().map(|r| r.checked).sum();
        let violations: usize = reports.iter().map(|r| r.violations.len()).sum();
        if self.json {
            self.emit_json(&json!({
                "identities": reports.len().to_string(),
                "checked": checked.to_string(),
                "violations": violations.to_string(),
                "reports": reports.iter().map(report_json).collect::<Vec<_>>(),
            }))?;
        } else {
            self.report_lines(reports)?;
            self.line(format!(
                "{} identities, {checked} instances checked, {violations} violations",
                reports.len()
            ))?;
        }
        Ok(if violations == 0 { OK } else { VIOLATED })
    }
}

fn check_terms(prec: i64) -> Result<()> {
    if prec < 2 {
        return Err(Error::Parse(format!("--prec must be at least 2, got {prec}")));
    }
    Ok(())
}

/// Accepts `a..b` (inclusive), a single grade, or a comma list.
fn parse_grades(s: &str) -> Result<Vec<i64>> {
    let bad = || Error::Parse(format!("cannot read grades `{s}`"));
    if let Some((a, b)) = s.split_once("..") {
        let a: i64 = a.trim().parse().map_err(|_| bad())?;
        let b: i64 = b.trim().parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| bad()))
        .collect()
}

fn labels(g: &FiniteGroup, t: &[usize]) -> Vec<String> {
    t.iter().map(|&x| g.label(x).to_string()).collect()
}

/// Coefficient rendering shared by text and JSON output.
trait ToJson {
    fn render(&self) -> String;
    fn json(&self) -> Value;
}

impl ToJson for num_rational::BigRational {
    fn render(&self) -> String {
        render_rational(self)
    }
    fn json(&self) -> Value {
        Value::String(render_rational(self))
    }
}

impl ToJson for Cyclotomic {
    fn render(&self) -> String {
        self.to_string()
    }
    fn json(&self) -> Value {
        self.to_json()
    }
}

fn series_json<C: Coefficient + ToJson>(s: &LaurentSeries<C>) -> Value {
    json!({
        "leading": s.start().to_string(),
        "precision": s.precision().to_string(),
        "coefficients": s.coefficients().map(|(_, c)| c.json()).collect::<Vec<_>>(),
    })
}

fn assignment_text(spec: &ModuleSpec) -> String {
    let g = spec.table().group();
    let classes = spec.table().classes();
    spec.assignment()
        .iter()
        .enumerate()
        .map(|(j, h)| format!("{}->{}", g.label(classes.representative(j)), h))
        .collect::<Vec<_>>()
        .join(" ")
}

fn assignment_json(spec: &ModuleSpec) -> Value {
    serde_json::to_value(
        spec.to_file_data()
            .assignment
            .into_iter()
            .map(|(k, v)| (k, json!({"level": v.level.to_string()})))
            .collect::<serde_json::Map<_, _>>(),
    )
    .expect("maps serialize")
}

fn witnesses_json(m: &moonshine::MultiplicityTable) -> Value {
    Value::Array(
        m.witnesses
            .iter()
            .map(|w| {
                json!({
                    "character": (w.character + 1).to_string(),
                    "exponent": w.exponent.to_string(),
                    "value": w.value,
                    "kind": serde_json::to_value(w.kind).expect("enum serializes"),
                })
            })
            .collect(),
    )
}

fn deltas_json(d: &moonshine::Deltas) -> Value {
    json!({
        "grade": d.grade.to_string(),
        "exact": d.values.iter().map(render_rational).collect::<Vec<_>>(),
        "decimal": d.rendered(),
        "limits": d.limits.iter().map(render_rational).collect::<Vec<_>>(),
    })
}

fn report_json(r: &Report) -> Value {
    json!({
        "identity": r.identity,
        "checked": r.checked.to_string(),
        "passed": r.passed(),
        "violations": r.violations,
    })
}

fn matching_json(m: &distinguish::ClassMatching) -> Value {
    json!({
        "classes": m.classes.iter().map(|c| (c + 1).to_string()).collect::<Vec<_>>(),
        "characters": m.rows.iter().map(|c| (c + 1).to_string()).collect::<Vec<_>>(),
        "preserves_orders": m.preserves_orders,
        "preserves_power_maps": m.preserves_power_maps,
    })
}

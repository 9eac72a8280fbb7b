//! Command-line front end. `run` parses arguments, computes, and writes one
//! report; the return value is the process exit code.

pub mod corpus;
mod report;
pub mod suites;

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cutmaps::{h, Folding};
use crate::error::{Error, Result};
use crate::facecomb::Sign;
use crate::homology::{
    compare, fold_map, formal_complex, formal_quotient_map, full_chains, graded_nerve_complexes, h_minus_map,
    nerve_complex, nerve_quotient_map, normalized_chains, old_globular_complex, old_to_formal_map,
    reduced_chains, reduced_complex, ChainMap, Comparison, FormalVariant, HomologyGroup, OldDegreeZero,
    PresentedComplex,
};
use crate::nerves::{Nerve, NerveKind};
use crate::omegacat::{
    export_presentation, iso_check, load, BuildOptions, ElemId, OmegaCat, Shape, ShapeKind, DEFAULT_ELEMENT_CAP,
};
use report::{Report, Table};
pub use suites::{run_suite, Suite, SuiteOptions, SuiteReport};

#[derive(Parser, Debug)]
#[command(name = "globhom", version, about = "Exact globular and corner homology of finite strict ω-categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Input document: a path, or a bundled name such as cube3.doc.
    document: String,
    /// Nerve truncation D; nerve homology is exact up to theory degree D.
    #[arg(long, default_value_t = 4)]
    truncation: usize,
    /// Cap on category elements and on simplexes per nerve.
    #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP)]
    element_cap: usize,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ingest a document and check the category it presents.
    Build {
        #[command(flatten)]
        common: Common,
        /// Include the exported presentation.
        #[arg(long)]
        export: bool,
    },
    /// Integer homology in a range of degrees.
    Homology {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Theory::Gl)]
        theory: Theory,
        #[arg(long, default_value_t = 0)]
        min_degree: i64,
        /// Defaults to D for nerve theories, to the top degree otherwise.
        #[arg(long)]
        max_degree: Option<i64>,
        /// Restrict a nerve theory to the grade `α,β` (0-cell labels).
        #[arg(long)]
        grade: Option<String>,
        /// Degree 0 of the old globular complex.
        #[arg(long, value_enum, default_value_t = DegreeZero::Tensor)]
        degree_zero: DegreeZero,
    },
    /// Build a nerve and check its identities.
    Nerve {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Theory::Gl)]
        theory: Theory,
        /// Include every simplex table.
        #[arg(long)]
        export: bool,
    },
    /// Inspect the folding operators or the cut maps h⁻ and h⁺.
    Map {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        kind: MapKind,
        /// Only this morphism (an expression over generator names).
        #[arg(long)]
        element: Option<String>,
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Run a named invariant suite.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        suite: Suite,
        /// Truncation of the corner nerves, at most D.
        #[arg(long, default_value_t = 2)]
        corner_truncation: usize,
    },
    /// Old and new globular homology side by side, with the comparison maps.
    Compare {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        max_degree: Option<i64>,
        /// Truncation of the corner nerve used for h⁻, kept small since
        /// corner nerves grow fast.
        #[arg(long, default_value_t = 2)]
        corner_truncation: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Theory {
    Gl,
    Minus,
    Plus,
    OldGl,
    FormalGl,
    FormalMinus,
    FormalPlus,
    ReducedGl,
    ReducedMinus,
    ReducedPlus,
}

impl Theory {
    pub fn name(self) -> &'static str {
        match self {
            Theory::Gl => "gl",
            Theory::Minus => "minus",
            Theory::Plus => "plus",
            Theory::OldGl => "old-gl",
            Theory::FormalGl => "formal-gl",
            Theory::FormalMinus => "formal-minus",
            Theory::FormalPlus => "formal-plus",
            Theory::ReducedGl => "reduced-gl",
            Theory::ReducedMinus => "reduced-minus",
            Theory::ReducedPlus => "reduced-plus",
        }
    }

    /// The nerve behind a nerve-based theory.
    fn nerve_kind(self) -> Option<NerveKind> {
        match self {
            Theory::Gl | Theory::ReducedGl => Some(NerveKind::Globular),
            Theory::Minus | Theory::ReducedMinus => Some(NerveKind::Corner(Sign::Minus)),
            Theory::Plus | Theory::ReducedPlus => Some(NerveKind::Corner(Sign::Plus)),
            _ => None,
        }
    }

    fn is_reduced(self) -> bool {
        matches!(self, Theory::ReducedGl | Theory::ReducedMinus | Theory::ReducedPlus)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Structured,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DegreeZero {
    Tensor,
    Sum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MapKind {
    Fold,
    HMinus,
    HPlus,
}

/// Runs the command line `argv` (program name first) and writes the report
/// to `out`. Returns 0 on success, 1 on a violation, 2 on an input error
/// and 3 when a cap is hit.
pub fn run<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(out, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let (name, common) = match &cli.command {
        Command::Build { common, .. } => ("build", common),
        Command::Homology { common, .. } => ("homology", common),
        Command::Nerve { common, .. } => ("nerve", common),
        Command::Map { common, .. } => ("map", common),
        Command::Verify { common, .. } => ("verify", common),
        Command::Compare { common, .. } => ("compare", common),
    };
    let mut report = Report::new(name, &common.document, common.truncation, common.element_cap);
    if let Command::Verify { corner_truncation, .. } | Command::Compare { corner_truncation, .. } = &cli.command {
        report.corner_truncation = Some((*corner_truncation).min(common.truncation));
    }
    let code = match execute(&cli.command, common, &mut report) {
        Ok(()) => report.exit_code(),
        Err(e) => {
            report.error = Some(e.clone());
            e.exit_code()
        }
    };
    let text = match common.format {
        Format::Structured => report.structured(),
        Format::Table => report.table(),
    };
    let _ = writeln!(out, "{text}");
    code
}

fn execute(cmd: &Command, common: &Common, report: &mut Report) -> Result<()> {
    match cmd {
        Command::Build { export, .. } => build_cmd(common, *export, report),
        Command::Homology {
            theory,
            min_degree,
            max_degree,
            grade,
            degree_zero,
            ..
        } => homology_cmd(common, *theory, *min_degree, *max_degree, grade.as_deref(), *degree_zero, report),
        Command::Nerve { theory, export, .. } => nerve_cmd(common, *theory, *export, report),
        Command::Map {
            kind,
            element,
            max_degree,
            ..
        } => map_cmd(common, *kind, element.as_deref(), *max_degree, report),
        Command::Verify {
            suite,
            corner_truncation,
            ..
        } => verify_cmd(common, *suite, *corner_truncation, report),
        Command::Compare {
            max_degree,
            corner_truncation,
            ..
        } => compare_cmd(common, *max_degree, *corner_truncation, report),
    }
}

/// Reads a document from disk, falling back to the bundled corpus.
pub fn read_document(arg: &str) -> Result<String> {
    let path = Path::new(arg);
    if path.exists() {
        return std::fs::read_to_string(path).map_err(|e| Error::input(format!("{arg}: {e}")));
    }
    let file = path.file_name().and_then(|f| f.to_str()).unwrap_or(arg);
    corpus::get(file).map(str::to_string).ok_or_else(|| {
        let known: Vec<&str> = corpus::names().collect();
        Error::input(format!("no such file {arg}; bundled documents: {}", known.join(", ")))
    })
}

fn load_category(common: &Common) -> Result<OmegaCat> {
    let text = read_document(&common.document)?;
    load(
        &text,
        BuildOptions {
            element_cap: common.element_cap,
            ..Default::default()
        },
    )
}

fn build_nerve(cat: &OmegaCat, kind: NerveKind, d: usize, cap: usize) -> Result<Nerve> {
    suites::nerve(cat, kind, d, cap)
}

fn build_cmd(common: &Common, export: bool, report: &mut Report) -> Result<()> {
    let cat = load_category(common)?;
    let counts = cat.counts();
    let axioms = cat.check_axioms();
    let text = export_presentation(&cat);
    let round_trip = load(&text, BuildOptions { element_cap: common.element_cap, ..Default::default() })
        .map(|b| iso_check(&cat, &b).is_some());
    let contracting = cat.contraction_witness().map(|x| cat.label(x));
    if let Err(e) = &axioms {
        report.violation(format!("axioms: {e}"));
    }
    if !matches!(round_trip, Ok(true)) {
        report.violation("export does not re-ingest to an isomorphic category");
    }
    let mut t = Table::new("category", &["dimension", "morphisms"]);
    for (d, n) in counts.iter().enumerate() {
        t.row(vec![d.to_string(), n.to_string()]);
    }
    report.tables.push(t);
    let mut facts = Table::new("checks", &["property", "value"]);
    facts.row(vec!["name".into(), cat.name().into()]);
    facts.row(vec!["elements".into(), cat.len().to_string()]);
    facts.row(vec!["compositions".into(), cat.composition_count().to_string()]);
    facts.row(vec!["indecomposables".into(), cat.indecomposables().len().to_string()]);
    facts.row(vec!["axioms".into(), if axioms.is_ok() { "ok".into() } else { "violated".into() }]);
    facts.row(vec!["round trip".into(), matches!(round_trip, Ok(true)).to_string()]);
    facts.row(vec![
        "non-contracting".into(),
        contracting.as_ref().map_or("yes".into(), |w| format!("no, witness {w}")),
    ]);
    report.tables.push(facts);
    report.data = json!({
        "name": cat.name(),
        "counts": counts,
        "elements": cat.len(),
        "compositions": cat.composition_count(),
        "indecomposables": cat.indecomposables().len(),
        "axioms": axioms.is_ok(),
        "round_trip": matches!(round_trip, Ok(true)),
        "contraction_witness": contracting,
        "presentation": if export { serde_json::from_str::<Value>(&text).unwrap_or(Value::Null) } else { Value::Null },
    });
    Ok(())
}

fn parse_grade(cat: &OmegaCat, kind: NerveKind, text: &str) -> Result<(ElemId, ElemId)> {
    let names: Vec<&str> = text.split(',').map(str::trim).collect();
    let point = |n: &str| -> Result<ElemId> {
        let x = cat.eval(n)?;
        if cat.dim(x) != 0 {
            return Err(Error::input(format!("grade entry {n} is not a 0-cell")));
        }
        Ok(x)
    };
    match (kind, names.as_slice()) {
        (NerveKind::Globular, [a, b]) => Ok((point(a)?, point(b)?)),
        (NerveKind::Corner(_), [a]) => point(a).map(|a| (a, a)),
        (NerveKind::Corner(_), [a, b]) => {
            let (a, b) = (point(a)?, point(b)?);
            if a != b {
                return Err(Error::input("corner grades have the form α,α"));
            }
            Ok((a, b))
        }
        _ => Err(Error::input(format!("cannot read grade {text}"))),
    }
}

/// The chain complex of `theory` on `cat`; nerve theories use truncation
/// `d` and at most `cap` simplexes per nerve.
pub fn theory_complex(
    cat: &OmegaCat,
    theory: Theory,
    d: usize,
    cap: usize,
    zero: OldDegreeZero,
) -> Result<PresentedComplex> {
    if let Some(kind) = theory.nerve_kind() {
        let nv = build_nerve(cat, kind, d, cap)?;
        return Ok(if theory.is_reduced() { reduced_complex(&nv) } else { nerve_complex(&nv) });
    }
    match theory {
        Theory::OldGl => Ok(old_globular_complex(cat, zero)),
        Theory::FormalGl => formal_complex(cat, FormalVariant::Globular),
        Theory::FormalMinus => formal_complex(cat, FormalVariant::Minus),
        _ => formal_complex(cat, FormalVariant::Plus),
    }
}

fn homology_cmd(
    common: &Common,
    theory: Theory,
    min: i64,
    max: Option<i64>,
    grade: Option<&str>,
    zero: DegreeZero,
    report: &mut Report,
) -> Result<()> {
    let d = common.truncation;
    // validate the job before any computation
    if min < 0 {
        return Err(Error::input("degrees start at 0"));
    }
    if grade.is_some() && !matches!(theory, Theory::Gl | Theory::Minus | Theory::Plus) {
        return Err(Error::input(format!("--grade applies to gl, minus and plus, not {}", theory.name())));
    }
    if theory != Theory::OldGl && zero != DegreeZero::Tensor {
        return Err(Error::input("--degree-zero applies to old-gl only"));
    }
    if let (Some(_), Some(m)) = (theory.nerve_kind(), max) {
        if m > d as i64 {
            return Err(Error::Truncation {
                requested: m,
                truncation: d,
                valid: d as i64,
            });
        }
    }
    let cat = load_category(common)?;
    let grade = match (grade, theory.nerve_kind()) {
        (Some(g), Some(kind)) => Some(parse_grade(&cat, kind, g)?),
        _ => None,
    };
    let zero = if zero == DegreeZero::Sum { OldDegreeZero::Sum } else { OldDegreeZero::Tensor };
    let complex = match grade {
        Some(g) => {
            let nv = build_nerve(&cat, theory.nerve_kind().expect("validated"), d, common.element_cap)?;
            let mut parts = graded_nerve_complexes(&nv)?;
            parts.remove(&g).ok_or_else(|| Error::input("no such grade"))?
        }
        None => theory_complex(&cat, theory, d, common.element_cap, zero)?,
    };
    if let Err(e) = complex.check() {
        report.violation(format!("{}: {e}", complex.name));
    }
    let max = max.unwrap_or_else(|| complex.valid_theory_to().min(complex.top() + complex.shift));
    let mut degrees = Vec::new();
    let mut t = Table::new(&format!("H_p {}", complex.name), &["p", "H_p"]);
    for p in min..=max {
        let hp = complex.theory_homology(p)?;
        t.row(vec![p.to_string(), hp.to_string()]);
        degrees.push(json!({"degree": p, "group": hp.to_string(), "rank": hp.rank, "torsion": hp.torsion.iter().map(|x| x.to_string()).collect::<Vec<_>>()}));
    }
    report.tables.push(t);
    let mut sizes = Table::new("chain groups", &["theory degree", "generators", "relations"]);
    let mut chain_groups = Vec::new();
    for (k, g, r) in complex.sizes() {
        sizes.row(vec![(k + complex.shift).to_string(), g.to_string(), r.to_string()]);
        chain_groups.push(json!({"degree": k + complex.shift, "generators": g, "relations": r}));
    }
    report.tables.push(sizes);
    report.data = json!({
        "theory": theory.name(),
        "complex": complex.name,
        "grade": grade.map(|(a, b)| vec![cat.label(a), cat.label(b)]),
        "degree_zero": if theory == Theory::OldGl { Some(if zero == OldDegreeZero::Sum { "sum" } else { "tensor" }) } else { None },
        "homology": degrees,
        "chain_groups": chain_groups,
    });
    Ok(())
}

fn nerve_cmd(common: &Common, theory: Theory, export: bool, report: &mut Report) -> Result<()> {
    let kind = match theory {
        Theory::Gl => NerveKind::Globular,
        Theory::Minus => NerveKind::Corner(Sign::Minus),
        Theory::Plus => NerveKind::Corner(Sign::Plus),
        t => return Err(Error::input(format!("nerve takes gl, minus or plus, not {}", t.name()))),
    };
    let cat = load_category(common)?;
    let nv = build_nerve(&cat, kind, common.truncation, common.element_cap)?;
    let identities = nv.check_identities();
    let grades = nv.grade_decompose();
    if let Err(e) = &identities {
        report.violation(format!("identities: {e}"));
    }
    if let Err(e) = &grades {
        report.violation(format!("grading: {e}"));
    }
    let mut t = Table::new(&format!("{} nerve of {}", kind.name(), cat.name()), &["degree", "simplexes", "thin"]);
    let mut degrees = Vec::new();
    for n in -1..=common.truncation as i64 {
        let thin = if n < 0 { 0 } else { (0..nv.count(n)).filter(|&x| nv.is_thin(n as usize, x)).count() };
        t.row(vec![n.to_string(), nv.count(n).to_string(), thin.to_string()]);
        degrees.push(json!({"degree": n, "simplexes": nv.count(n), "thin": thin}));
    }
    report.tables.push(t);
    report.data = json!({
        "nerve": kind.name(),
        "degrees": degrees,
        "identities": identities.is_ok(),
        "grades": grades.as_ref().map(|g| g.len()).ok(),
        "export": if export { nv.export() } else { Value::Null },
    });
    Ok(())
}

fn map_cmd(
    common: &Common,
    kind: MapKind,
    element: Option<&str>,
    max_degree: Option<usize>,
    report: &mut Report,
) -> Result<()> {
    let d = common.truncation;
    if let Some(m) = max_degree {
        if m > d {
            return Err(Error::Truncation {
                requested: m as i64,
                truncation: d,
                valid: d as i64,
            });
        }
    }
    let cat = load_category(common)?;
    let element = element.map(|e| cat.eval(e)).transpose()?;
    let nv = build_nerve(&cat, NerveKind::Globular, d, common.element_cap)?;
    let label = |v: ElemId| cat.label(nv.to_c(v));
    let mut rows = Vec::new();
    match kind {
        MapKind::Fold => {
            let f = Folding::new(&nv)?;
            let mut t = Table::new("folds", &["morphism", "degree", "table"]);
            let targets: Vec<ElemId> = match element {
                Some(u) => vec![u],
                None => cat.ids().filter(|&u| cat.dim(u) >= 1).collect(),
            };
            for u in targets {
                let n = cat.dim(u);
                if n == 0 {
                    return Err(Error::input("only positive-dimensional morphisms can be folded"));
                }
                if n - 1 > d {
                    if element.is_some() {
                        return Err(Error::Truncation {
                            requested: n as i64 - 1,
                            truncation: d,
                            valid: d as i64,
                        });
                    }
                    continue;
                }
                let x = f.fold(u)?;
                let shape = Shape::cached(ShapeKind::Simplex, n - 1)?;
                let cells: Vec<String> = x.iter().enumerate().map(|(i, &v)| format!("{}={}", shape.face_name(i), label(v))).collect();
                t.row(vec![cat.label(u), (n - 1).to_string(), cells.join(" ")]);
                rows.push(json!({"morphism": cat.label(u), "degree": n - 1, "table": cells}));
            }
            report.tables.push(t);
        }
        MapKind::HMinus | MapKind::HPlus => {
            let eta = if kind == MapKind::HMinus { Sign::Minus } else { Sign::Plus };
            let mut t = Table::new(&format!("h{}", eta.symbol()), &["simplex", "image"]);
            for n in 0..=max_degree.unwrap_or(d) {
                for x in 0..nv.count(n as i64) {
                    if element.is_some_and(|u| nv.ev(n, x) != u) {
                        continue;
                    }
                    let name = format!("{n}.{x}:{}", cat.label(nv.ev(n, x)));
                    match h(&nv, eta, nv.table(n, x)) {
                        Ok(img) => {
                            let shape = Shape::cached(ShapeKind::Cube, n + 1)?;
                            let cells: Vec<String> = img.iter().enumerate().map(|(i, &v)| format!("{}={}", shape.face_name(i), cat.label(v))).collect();
                            t.row(vec![name.clone(), cells.join(" ")]);
                            rows.push(json!({"simplex": name, "image": cells}));
                        }
                        Err(e) if e.exit_code() == 1 => {
                            report.violation(format!("{name}: {e}"));
                            t.row(vec![name.clone(), format!("violation: {e}")]);
                            rows.push(json!({"simplex": name, "violation": e.to_string()}));
                        }
                        Err(e) => return Err(e),
                    }
                }
            }
            report.tables.push(t);
        }
    }
    report.data = json!({"map": match kind { MapKind::Fold => "fold", MapKind::HMinus => "h-minus", MapKind::HPlus => "h-plus" }, "rows": rows});
    Ok(())
}

fn verify_cmd(common: &Common, suite: Suite, corner_d: usize, report: &mut Report) -> Result<()> {
    let cat = load_category(common)?;
    let opts = SuiteOptions {
        truncation: common.truncation,
        corner_truncation: corner_d,
        cap: common.element_cap,
    };
    let reports = run_suite(suite, &cat, opts)?;
    let mut t = Table::new("suites", &["suite", "checks", "failures", "result"]);
    for r in &reports {
        t.row(vec![
            r.suite.clone(),
            r.checks.to_string(),
            r.failures.to_string(),
            if r.passed() { "pass".into() } else { "FAIL".into() },
        ]);
        for m in &r.messages {
            report.violation(format!("{}: {m}", r.suite));
        }
        if !r.passed() && r.messages.is_empty() {
            report.violation(format!("{} failed", r.suite));
        }
    }
    report.tables.push(t);
    let mut notes = Table::new("notes", &["suite", "note"]);
    for r in &reports {
        for n in &r.notes {
            notes.row(vec![r.suite.clone(), n.clone()]);
        }
    }
    if !notes.rows.is_empty() {
        report.tables.push(notes);
    }
    report.data = json!({ "corner_truncation": corner_d.min(common.truncation), "suites": reports });
    Ok(())
}

fn group_cell(h: &Result<HomologyGroup>) -> String {
    match h {
        Ok(g) => g.to_string(),
        Err(_) => "-".into(),
    }
}

fn compare_cmd(common: &Common, max: Option<i64>, corner_d: usize, report: &mut Report) -> Result<()> {
    let d = common.truncation;
    if let Some(m) = max {
        if m > d as i64 {
            return Err(Error::Truncation {
                requested: m,
                truncation: d,
                valid: d as i64,
            });
        }
    }
    let max = max.unwrap_or(d as i64);
    let corner_d = corner_d.min(d);
    let cat = load_category(common)?;
    let cap = common.element_cap;
    let gl = build_nerve(&cat, NerveKind::Globular, d, cap)?;
    let fold = Folding::new(&gl)?;
    let (full, norm, red) = (full_chains(&gl), normalized_chains(&gl), reduced_chains(&gl));
    let old = old_globular_complex(&cat, OldDegreeZero::Tensor);
    let cf = formal_complex(&cat, FormalVariant::Globular)?;
    let cfm = formal_complex(&cat, FormalVariant::Minus)?;
    let cfp = formal_complex(&cat, FormalVariant::Plus)?;

    let mut side = Table::new("homology", &["p", "old-gl", "formal-gl", "reduced-gl", "gl"]);
    let mut homology = Vec::new();
    for p in 0..=max {
        let cells = [&old, &cf, &red.complex, &full.complex].map(|c| group_cell(&c.theory_homology(p)));
        side.row(std::iter::once(p.to_string()).chain(cells.iter().cloned()).collect());
        homology.push(json!({"degree": p, "old_gl": cells[0], "formal_gl": cells[1], "reduced_gl": cells[2], "gl": cells[3]}));
    }
    report.tables.push(side);

    let mut maps: Vec<(String, ChainMap, &PresentedComplex, &PresentedComplex)> = vec![
        ("old-gl -> formal-gl".into(), old_to_formal_map(&cat), &old, &cf),
        ("formal-gl -> formal-minus".into(), formal_quotient_map(&cat, Sign::Minus), &cf, &cfm),
        ("formal-gl -> formal-plus".into(), formal_quotient_map(&cat, Sign::Plus), &cf, &cfp),
        ("fold: formal-gl -> reduced-gl".into(), fold_map(&fold, &red)?, &cf, &red.complex),
        ("fold: old-gl -> reduced-gl".into(), fold_map(&fold, &red)?, &old, &red.complex),
        ("fold: old-gl -> normalized gl".into(), fold_map(&fold, &norm)?, &old, &norm.complex),
        ("gl -> reduced-gl".into(), nerve_quotient_map(&full, &red), &full.complex, &red.complex),
        ("gl -> normalized gl".into(), nerve_quotient_map(&full, &norm), &full.complex, &norm.complex),
    ];
    // h⁻ on a smaller truncation
    let gl_c = build_nerve(&cat, NerveKind::Globular, corner_d, cap)?;
    let mi = build_nerve(&cat, NerveKind::Corner(Sign::Minus), corner_d, cap)?;
    let (cfull, cred) = (full_chains(&gl_c), reduced_chains(&gl_c));
    let (mfull, mred) = (full_chains(&mi), reduced_chains(&mi));
    maps.push(("h-minus: gl -> minus".into(), h_minus_map(&gl_c, &cfull, &mi, &mfull)?, &cfull.complex, &mfull.complex));
    maps.push(("h-minus: reduced-gl -> reduced-minus".into(), h_minus_map(&gl_c, &cred, &mi, &mred)?, &cred.complex, &mred.complex));

    let mut t = Table::new("maps", &["map", "p", "source", "target", "iso"]);
    let mut rows = Vec::new();
    for (name, f, src, tgt) in &maps {
        let f = ChainMap { name: name.clone(), maps: f.maps.clone() };
        match compare(&f, src, tgt, 0..=max) {
            Ok(cs) => {
                for Comparison { degree, source, target, isomorphism, .. } in cs {
                    t.row(vec![name.clone(), degree.to_string(), source.to_string(), target.to_string(), isomorphism.to_string()]);
                    rows.push(json!({"map": name, "degree": degree, "source": source.to_string(), "target": target.to_string(), "isomorphism": isomorphism}));
                }
            }
            Err(e) if e.exit_code() == 1 => {
                report.violation(format!("{name}: {e}"));
                t.row(vec![name.clone(), "-".into(), "-".into(), "-".into(), format!("not a chain map: {e}")]);
                rows.push(json!({"map": name, "violation": e.to_string()}));
            }
            Err(e) => return Err(e),
        }
    }
    report.tables.push(t);
    report.data = json!({
        "corner_truncation": corner_d,
        "homology": homology,
        "maps": rows,
    });
    Ok(())
}

//! Command-line front end. `run_cli` is the whole program; `main` only wires
//! it to the process streams and exit code.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::catalog::{self, AlgebraFile, CatalogError};
use crate::dtheory::DContext;
use crate::full_graph::{self, build_full_graph, ActionVariant, Checks, VerificationReport};
use crate::lie::LieAlgebra;
use crate::linalg::{format_scalar, Matrix};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "fullgraph",
    version,
    about = "Derivations, d-derivations and full graphs of Lie algebras"
)]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Negate the L(ad g) term of the H-action (mutation check for the verifier).
    #[arg(long, global = true, hide = true)]
    mutate_action_sign: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimensions of the center, derived algebra, Der, inner, 𝒟, inner-𝒟 and d-center.
    Info(AlgebraArg),
    /// Derivation basis and structure constants.
    Der(AlgebraArg),
    /// d-derivation basis and bracket table.
    Dder(AlgebraArg),
    /// Structure constants of the full graph C(G).
    FullGraph(AlgebraArg),
    /// Run the verifiers on one algebra.
    Verify {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long, value_enum, default_value = "all")]
        theorem: TheoremChoice,
    },
    /// Run every verifier on every catalog entry.
    CorpusVerify,
}

#[derive(Args, Debug)]
struct AlgebraArg {
    /// Catalog name, e.g. sl2 or abelian(2).
    name: Option<String>,
    /// Read the algebra from a JSON structure-constant file.
    #[arg(long, conflicts_with = "name")]
    file: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum TheoremChoice {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    Lemma,
    All,
}

impl TheoremChoice {
    fn checks(self) -> Checks {
        match self {
            TheoremChoice::One => Checks {
                theorem1: true,
                lemma: false,
                theorem2: false,
            },
            TheoremChoice::Two => Checks {
                theorem1: false,
                lemma: false,
                theorem2: true,
            },
            TheoremChoice::Lemma => Checks {
                theorem1: false,
                lemma: true,
                theorem2: false,
            },
            TheoremChoice::All => Checks::ALL,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
}

impl From<CatalogError> for Failure {
    fn from(e: CatalogError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(format!("i/o error: {e}"))
    }
}

pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(Failure::Usage(message)) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_USAGE
        }
    }
}

fn load(arg: &AlgebraArg) -> Result<(String, LieAlgebra), Failure> {
    match (&arg.name, &arg.file) {
        (Some(name), None) => Ok((name.clone(), catalog::lookup(name)?)),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            let g = catalog::parse_algebra_file(&text)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            Ok((path.display().to_string(), g))
        }
        _ => Err(Failure::Usage(
            "expected an algebra name or --file <path>".into(),
        )),
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let variant = if cli.mutate_action_sign {
        ActionVariant::FlippedAdTerm
    } else {
        ActionVariant::Standard
    };
    match &cli.command {
        Command::Info(arg) => {
            let (name, g) = load(arg)?;
            info(&name, &g, cli.json, out)?;
            Ok(EXIT_OK)
        }
        Command::Der(arg) => {
            let (name, g) = load(arg)?;
            der(&name, &g, cli.json, out)?;
            Ok(EXIT_OK)
        }
        Command::Dder(arg) => {
            let (name, g) = load(arg)?;
            dder(&name, &g, cli.json, out)?;
            Ok(EXIT_OK)
        }
        Command::FullGraph(arg) => {
            let (name, g) = load(arg)?;
            full(&name, &g, cli.json, out)?;
            Ok(EXIT_OK)
        }
        Command::Verify { algebra, theorem } => {
            let (name, g) = load(algebra)?;
            let report = full_graph::verify(&name, &g, theorem.checks(), variant)
                .map_err(|e| internal(&name, e))?;
            if cli.json {
                writeln!(out, "{}", to_json(&report))?;
            } else {
                write_report(&report, out)?;
            }
            Ok(if report.pass {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
        Command::CorpusVerify => {
            let entries = catalog::catalog();
            let reports = std::thread::scope(|scope| {
                let handles: Vec<_> = entries
                    .iter()
                    .map(|entry| {
                        scope.spawn(move || {
                            full_graph::verify(entry.name, &entry.algebra, Checks::ALL, variant)
                        })
                    })
                    .collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("verifier thread panicked"))
                    .collect::<Result<Vec<_>, _>>()
            })
            .map_err(|e| internal("catalog", e))?;
            if cli.json {
                writeln!(out, "{}", to_json(&reports))?;
            } else {
                for report in &reports {
                    write_report(report, out)?;
                    writeln!(out)?;
                }
                let passed = reports.iter().filter(|r| r.pass).count();
                writeln!(out, "{passed}/{} algebras pass", reports.len())?;
            }
            Ok(if reports.iter().all(|r| r.pass) {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
    }
}

fn internal(name: &str, e: crate::dtheory::DTheoryError) -> Failure {
    Failure::Usage(format!("{name}: internal consistency fault: {e}"))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}

fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(format_scalar).collect())
        .collect()
}

/// Matrix with column labels on top and row labels on the left.
fn write_matrix(
    out: &mut dyn Write,
    m: &Matrix,
    rows: &[String],
    cols: &[String],
) -> std::io::Result<()> {
    let cells = matrix_strings(m);
    let label_width = rows.iter().map(String::len).max().unwrap_or(0);
    let width = cells
        .iter()
        .flatten()
        .chain(cols.iter())
        .map(String::len)
        .max()
        .unwrap_or(1);
    write!(out, "  {:label_width$} ", "")?;
    for c in cols {
        write!(out, " {c:>width$}")?;
    }
    writeln!(out)?;
    for (label, row) in rows.iter().zip(&cells) {
        write!(out, "  {label:label_width$} ")?;
        for cell in row {
            write!(out, " {cell:>width$}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}

fn write_table(out: &mut dyn Write, g: &LieAlgebra) -> std::io::Result<()> {
    let names = g.basis_names();
    let brackets = g.nonzero_brackets();
    if brackets.is_empty() {
        writeln!(out, "  (abelian)")?;
    }
    for (i, j, v) in brackets {
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
            .map(|(k, c)| format!("{}*{}", format_scalar(c), names[k]))
            .collect();
        writeln!(
            out,
            "  [{}, {}] = {}",
            names[i],
            names[j],
            terms.join(" + ")
        )?;
    }
    Ok(())
}

fn info(name: &str, g: &LieAlgebra, as_json: bool, out: &mut dyn Write) -> Result<(), Failure> {
    let ctx = DContext::new(g);
    let space = ctx.d_derivations().map_err(|e| internal(name, e))?;
    let completeness = g.completeness_with(ctx.derivations());
    let d_completeness = ctx.d_completeness_with(&space);
    let value = json!({
        "algebra": name,
        "dim": g.dim(),
        "center_dim": completeness.center_dim,
        "derived_dim": g.derived_subalgebra().dim(),
        "der_dim": completeness.der_dim,
        "inner_der_dim": completeness.inner_dim,
        "d_space_dim": d_completeness.d_space_dim,
        "inner_d_dim": d_completeness.inner_d_dim,
        "d_center_dim": d_completeness.d_center_dim,
        "complete": completeness.complete,
        "d_complete": d_completeness.d_complete,
    });
    if as_json {
        writeln!(out, "{}", to_json(&value))?;
        return Ok(());
    }
    writeln!(out, "{name} (dim {})", g.dim())?;
    for key in [
        "center_dim",
        "derived_dim",
        "der_dim",
        "inner_der_dim",
        "d_space_dim",
        "inner_d_dim",
        "d_center_dim",
        "complete",
        "d_complete",
    ] {
        writeln!(out, "  {key:<14} {}", value[key])?;
    }
    Ok(())
}

fn der(name: &str, g: &LieAlgebra, as_json: bool, out: &mut dyn Write) -> Result<(), Failure> {
    let der = g.derivation_algebra();
    if as_json {
        let value = json!({
            "algebra": name,
            "der_dim": der.dim(),
            "basis": der.basis().iter().map(|d| matrix_strings(&d.matrix)).collect::<Vec<_>>(),
            "structure_constants": der.as_lie_algebra().map(AlgebraFile::from_algebra),
        });
        writeln!(out, "{}", to_json(&value))?;
        return Ok(());
    }
    writeln!(out, "Der({name}): dimension {}", der.dim())?;
    let names = g.basis_names();
    for (i, d) in der.basis().iter().enumerate() {
        writeln!(out, "D{i}:")?;
        write_matrix(out, &d.matrix, names, names)?;
    }
    if let Some(a) = der.as_lie_algebra() {
        writeln!(out, "brackets:")?;
        write_table(out, a)?;
    }
    Ok(())
}

fn dder(name: &str, g: &LieAlgebra, as_json: bool, out: &mut dyn Write) -> Result<(), Failure> {
    let ctx = DContext::new(g);
    let space = ctx.d_derivations().map_err(|e| internal(name, e))?;
    if as_json {
        let value = json!({
            "algebra": name,
            "der_dim": ctx.derivations().dim(),
            "d_space_dim": space.dim(),
            "inner_d_dim": space.inner().dim(),
            "basis": space.basis().iter().map(|l| matrix_strings(&l.matrix)).collect::<Vec<_>>(),
            "structure_constants": space.as_lie_algebra().map(AlgebraFile::from_algebra),
        });
        writeln!(out, "{}", to_json(&value))?;
        return Ok(());
    }
    writeln!(
        out,
        "d-derivations of {name}: dimension {} (inner {})",
        space.dim(),
        space.inner().dim()
    )?;
    let der_names = crate::lie::default_names("D", ctx.derivations().dim());
    for (i, l) in space.basis().iter().enumerate() {
        writeln!(out, "L{i}:")?;
        write_matrix(out, &l.matrix, g.basis_names(), &der_names)?;
    }
    if let Some(a) = space.as_lie_algebra() {
        writeln!(out, "brackets:")?;
        write_table(out, a)?;
    }
    Ok(())
}

fn full(name: &str, g: &LieAlgebra, as_json: bool, out: &mut dyn Write) -> Result<(), Failure> {
    let der = g.derivation_algebra();
    let cg = build_full_graph(&der).map_err(|e| internal(name, e))?;
    if as_json {
        let value = json!({
            "algebra": name,
            "der_dim": cg.der_dim,
            "g_dim": cg.g_dim,
            "full_graph": AlgebraFile::from_algebra(&cg.algebra),
        });
        writeln!(out, "{}", to_json(&value))?;
        return Ok(());
    }
    writeln!(
        out,
        "C({name}) = Der ⋉ G: dimension {} + {} = {}",
        cg.der_dim,
        cg.g_dim,
        cg.algebra.dim()
    )?;
    write_table(out, &cg.algebra)?;
    Ok(())
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

fn write_report(r: &VerificationReport, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(
        out,
        "{}: {} ({:.2?})",
        r.algebra_name,
        if r.pass { "PASS" } else { "FAIL" },
        r.elapsed
    )?;
    if let Some(t) = &r.theorem1 {
        writeln!(out, "  theorem 1")?;
        writeln!(
            out,
            "    generators are derivations  {}",
            mark(t.each_generator_is_derivation)
        )?;
        writeln!(
            out,
            "    bracket homomorphism        {}",
            mark(t.bracket_homomorphism)
        )?;
        writeln!(out, "    injective                   {}", mark(t.injective))?;
        writeln!(
            out,
            "    dim H = {}, dim Der(C(G)) = {}  {}",
            t.dim_h,
            t.dim_der_cg,
            mark(t.dim_h == t.dim_der_cg)
        )?;
        writeln!(
            out,
            "    image = Der(C(G))           {}",
            mark(t.image_equals_der_cg)
        )?;
    }
    if let Some(l) = &r.lemma {
        writeln!(out, "  center lemma")?;
        writeln!(
            out,
            "    dim Z(C(G)) = {}, dim C_d = {}  {}",
            l.center_cg_dim,
            l.d_center_dim,
            mark(l.pass())
        )?;
    }
    if let Some(t) = &r.theorem2 {
        writeln!(out, "  theorem 2")?;
        writeln!(
            out,
            "    d-complete = {}, C(G) complete = {}  {}",
            t.d_complete,
            t.full_graph_complete,
            mark(t.equivalent)
        )?;
    }
    Ok(())
}

//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a proven property failed, 2 unreadable or
//! malformed input, 3 invalid input, 4 usage error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::enumerate::{enumerate_structures, EnumerationQuery};
use crate::graph::{
    critical_group, keyes_reiter_operation, laplacian_structure, matrix_l, ArithmeticalStructure,
    CriticalGroup, GraphError, Multigraph,
};
use crate::io::{self, FormatError, JsonInt};
use crate::linalg::{minor_gcd_profile, smith_normal_form};
use crate::verify::{
    check_conjecture_alpha, check_conjecture_minors, fuzz_campaign, recheck,
    verify_minor_properties, verify_operation_theorems, BoundPosition, FuzzConfig, MatrixGenerator,
    OperationInvariants, PropertyReport, Status, Target, VerifyError, WitnessInput,
};

pub const EXIT_PROPERTY_FAILURE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_USAGE: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "critgroup",
    version,
    about = "Critical groups of arithmetical structures"
)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Critical group, Smith normal form and minor gcds of L.
    Critgroup {
        graph: PathBuf,
        #[arg(required_unless_present = "laplacian", conflicts_with = "laplacian")]
        structure: Option<PathBuf>,
        /// Use d = degrees, r = all ones.
        #[arg(long)]
        laplacian: bool,
    },
    /// Apply the star-clique operation at one vertex.
    ApplyOp {
        graph: PathBuf,
        structure: PathBuf,
        /// 1-based vertex.
        #[arg(long)]
        vertex: usize,
        /// Write `<prefix>.graph.json` and `<prefix>.structure.json`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check every statement on L and on the operation.
    Verify {
        graph: PathBuf,
        structure: PathBuf,
        #[command(flatten)]
        vertices: VertexChoice,
    },
    /// List structures with every r entry at most the bound.
    Enumerate {
        graph: PathBuf,
        #[arg(long)]
        rmax: u64,
    },
    /// Seeded random campaign.
    Fuzz(FuzzArgs),
    /// Re-run the check recorded in a witness file.
    Recheck { witness: PathBuf },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct VertexChoice {
    /// 1-based vertex.
    #[arg(long)]
    vertex: Option<usize>,
    #[arg(long)]
    all_vertices: bool,
}

#[derive(Debug, Args)]
struct FuzzArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    cases: u64,
    /// Inclusive row and column range, `a..b`.
    #[arg(long, default_value = "2..6", value_parser = parse_dims)]
    dims: RangeInclusive<usize>,
    /// Entries are drawn from `[-bound, bound]`.
    #[arg(long, default_value_t = 9)]
    bound: i64,
    /// Repeatable; all targets when omitted.
    #[arg(long, value_enum)]
    target: Vec<TargetArg>,
    /// Repeatable; all generators when omitted.
    #[arg(long, value_enum)]
    generator: Vec<GeneratorArg>,
    /// Directory for witness files.
    #[arg(long, default_value = "fuzz-witnesses")]
    archive: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TargetArg {
    Minors,
    Alpha,
    Theorems,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GeneratorArg {
    Uniform,
    LastRowGcd,
    Symmetric,
    Structure,
}

fn parse_dims(text: &str) -> Result<RangeInclusive<usize>, String> {
    let (a, b) = text
        .split_once("..")
        .ok_or_else(|| format!("expected a..b, got {text:?}"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: usize = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b: usize = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    if a == 0 || a > b {
        return Err(format!("need 1 <= a <= b, got {a}..{b}"));
    }
    Ok(a..=b)
}

#[derive(Debug)]
struct CliError {
    code: i32,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        Self {
            code: e.exit_code(),
            message: e.to_string(),
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        let code = match e {
            GraphError::VertexOutOfRange { .. } => EXIT_USAGE,
            GraphError::ConsistencyFailure { .. } => EXIT_PROPERTY_FAILURE,
            _ => EXIT_INVALID,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Graph(g) => g.into(),
            other => Self {
                code: EXIT_INVALID,
                message: other.to_string(),
            },
        }
    }
}

/// Output of one command: text for stdout and the exit code.
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

/// Parses `args` (including the program name) and runs the command.
/// Diagnostics go to the returned text for `--help`/`--version` and to
/// `stderr` otherwise.
pub fn run<I, T>(args: I) -> (Outcome, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                (Outcome { stdout: text, code }, String::new())
            } else {
                (
                    Outcome {
                        stdout: String::new(),
                        code,
                    },
                    text,
                )
            };
        }
    };
    match dispatch(&cli) {
        Ok(out) => (out, String::new()),
        Err(e) => (
            Outcome {
                stdout: String::new(),
                code: e.code,
            },
            format!("error: {}\n", e.message),
        ),
    }
}

pub fn main_entry() -> i32 {
    let (out, err) = run(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{err}");
    out.code
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Critgroup {
            graph,
            structure,
            laplacian,
        } => cmd_critgroup(graph, structure.as_deref(), *laplacian, cli.json),
        Command::ApplyOp {
            graph,
            structure,
            vertex,
            out,
        } => cmd_apply_op(graph, structure, *vertex, out.as_deref(), cli.json),
        Command::Verify {
            graph,
            structure,
            vertices,
        } => cmd_verify(graph, structure, vertices.vertex, cli.json),
        Command::Enumerate { graph, rmax } => cmd_enumerate(graph, *rmax, cli.json),
        Command::Fuzz(args) => cmd_fuzz(args, cli.json),
        Command::Recheck { witness } => cmd_recheck(witness, cli.json),
    }
}

fn ok(stdout: String) -> Result<Outcome, CliError> {
    Ok(Outcome { stdout, code: 0 })
}

fn json_out(value: Value, code: i32) -> Result<Outcome, CliError> {
    let mut stdout = serde_json::to_string_pretty(&value).expect("values serialize");
    stdout.push('\n');
    Ok(Outcome { stdout, code })
}

fn ints_json(xs: &[BigInt]) -> Value {
    serde_json::to_value(xs.iter().cloned().map(JsonInt).collect::<Vec<_>>())
        .expect("integers serialize")
}

fn int_json(x: &BigInt) -> Value {
    serde_json::to_value(JsonInt(x.clone())).expect("integers serialize")
}

fn join(xs: &[BigInt]) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn load(graph: &Path, structure: &Path) -> Result<(Multigraph, ArithmeticalStructure), CliError> {
    let g = io::read_graph(graph)?;
    let s = io::read_structure(structure, &g)?;
    Ok((g, s))
}

/// Converts a 1-based vertex argument.
fn vertex_index(v: usize, g: &Multigraph) -> Result<usize, CliError> {
    if v == 0 || v > g.n() {
        return Err(CliError::usage(format!("vertex {v} outside 1..={}", g.n())));
    }
    Ok(v - 1)
}

fn cmd_critgroup(
    graph: &Path,
    structure: Option<&Path>,
    laplacian: bool,
    as_json: bool,
) -> Result<Outcome, CliError> {
    let g = io::read_graph(graph)?;
    let s = match structure {
        Some(path) if !laplacian => io::read_structure(path, &g)?,
        _ => laplacian_structure(&g),
    };
    let group = critical_group(&g, &s)?;
    let l = matrix_l(&g, &s)?;
    let snf = smith_normal_form(&l);
    let profile = minor_gcd_profile(&l);
    if as_json {
        return json_out(
            json!({
                "invariant_factors": ints_json(&group.invariant_factors),
                "order": int_json(&group.order()),
                "group": group.to_string(),
                "snf_diagonal": ints_json(&snf.diag),
                "D": ints_json(&profile.dk),
                "D_star": ints_json(&profile.dk_star),
            }),
            0,
        );
    }
    let mut t = String::new();
    writeln!(t, "invariant factors: {}", join(&group.invariant_factors)).unwrap();
    writeln!(t, "group: {group}").unwrap();
    writeln!(t, "order: {}", group.order()).unwrap();
    writeln!(t, "SNF diagonal: {}", join(&snf.diag)).unwrap();
    writeln!(
        t,
        "D_k (k = 0..{}): {}",
        profile.min_dim(),
        join(&profile.dk)
    )
    .unwrap();
    writeln!(
        t,
        "D_k* (k = 1..{}): {}",
        profile.min_dim(),
        join(&profile.dk_star)
    )
    .unwrap();
    ok(t)
}

fn bound_line(inv: &OperationInvariants) -> String {
    let (lower, upper) = inv.order_bounds();
    let order = inv.order_prime();
    match inv.bound_position() {
        BoundPosition::Coincide => format!("bounds coincide: {order}"),
        BoundPosition::Lower => format!("lower bound achieved: {order}"),
        BoundPosition::Upper => format!("upper bound achieved: {order}"),
        BoundPosition::Interior => {
            format!("strictly between bounds: {lower} < {order} < {upper}")
        }
    }
}

fn bound_name(p: BoundPosition) -> &'static str {
    match p {
        BoundPosition::Coincide => "coincide",
        BoundPosition::Lower => "lower",
        BoundPosition::Upper => "upper",
        BoundPosition::Interior => "interior",
    }
}

fn cmd_apply_op(
    graph: &Path,
    structure: &Path,
    vertex: usize,
    out: Option<&Path>,
    as_json: bool,
) -> Result<Outcome, CliError> {
    let (g, s) = load(graph, structure)?;
    let v = vertex_index(vertex, &g)?;
    let result = keyes_reiter_operation(&g, &s, v)?;
    let before = critical_group(&g, &s)?;
    let after = critical_group(&result.graph, &result.structure)?;
    let inv = if g.n() >= 3 {
        Some(OperationInvariants::compute(&g, &s, v)?)
    } else {
        None
    };

    let mut written = Vec::new();
    if let Some(prefix) = out {
        let with_suffix = |suffix: &str| {
            let mut name = prefix.as_os_str().to_owned();
            name.push(suffix);
            PathBuf::from(name)
        };
        let graph_path = with_suffix(".graph.json");
        let structure_path = with_suffix(".structure.json");
        io::write_text(&graph_path, &io::graph_to_json(&result.graph))?;
        io::write_text(&structure_path, &io::structure_to_json(&result.structure))?;
        written.push(graph_path);
        written.push(structure_path);
    }

    if as_json {
        let bounds = inv.as_ref().map(|inv| {
            let (lower, upper) = inv.order_bounds();
            json!({
                "lower": int_json(&lower),
                "upper": int_json(&upper),
                "position": bound_name(inv.bound_position()),
            })
        });
        return json_out(
            json!({
                "vertex": vertex,
                "d_removed": int_json(&result.d_removed),
                "r_divisor": int_json(&result.r_divisor),
                "graph": serde_json::to_value(io::GraphFile::from_graph(&result.graph)).unwrap(),
                "structure": serde_json::to_value(io::StructureFile::from_structure(&result.structure)).unwrap(),
                "before": group_json(&before),
                "after": group_json(&after),
                "order_bounds": bounds,
                "written": written.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
            }),
            0,
        );
    }
    let mut t = String::new();
    writeln!(t, "operation at v{vertex} (d_n = {})", result.d_removed).unwrap();
    writeln!(t, "d' = ({})", join(result.structure.d())).unwrap();
    writeln!(t, "r' = ({})", join(result.structure.r())).unwrap();
    if result.r_divisor != BigInt::from(1) {
        writeln!(t, "r' divided by {}", result.r_divisor).unwrap();
    }
    writeln!(t, "before: {before} (order {})", before.order()).unwrap();
    writeln!(t, "after: {after} (order {})", after.order()).unwrap();
    match &inv {
        Some(inv) => writeln!(t, "{}", bound_line(inv)).unwrap(),
        None => writeln!(t, "order bounds need at least 3 vertices").unwrap(),
    }
    for p in &written {
        writeln!(t, "wrote {}", p.display()).unwrap();
    }
    ok(t)
}

fn group_json(g: &CriticalGroup) -> Value {
    json!({
        "invariant_factors": ints_json(&g.invariant_factors),
        "order": int_json(&g.order()),
        "group": g.to_string(),
    })
}

fn report_json(r: &PropertyReport) -> Value {
    json!({
        "property_id": r.property,
        "status": r.status,
        "degenerate": r.degenerate,
        "detail": r.detail,
        "witness": r.witness.as_ref().map(|w| serde_json::to_value(io::WitnessFile::from_witness(w)).unwrap()),
    })
}

fn cmd_verify(
    graph: &Path,
    structure: &Path,
    vertex: Option<usize>,
    as_json: bool,
) -> Result<Outcome, CliError> {
    let (g, s) = load(graph, structure)?;
    let vertices: Vec<usize> = match vertex {
        Some(v) => vec![vertex_index(v, &g)?],
        None => (0..g.n()).collect(),
    };
    let l = matrix_l(&g, &s)?;
    let mut sections: Vec<(String, Vec<PropertyReport>)> = Vec::new();
    let mut matrix_reports = verify_minor_properties(&l);
    if let Ok(r) = check_conjecture_minors(&l) {
        matrix_reports.push(r);
    }
    sections.push(("matrix L".to_string(), matrix_reports));
    for &v in &vertices {
        // The minor statements are about an arbitrary corner, so L with v
        // moved last is checked too.
        let mut reports = if v + 1 == g.n() {
            Vec::new()
        } else {
            verify_minor_properties(&l.move_index_last(v).expect("in range"))
        };
        reports.extend(verify_operation_theorems(&g, &s, v)?);
        reports.push(check_conjecture_alpha(&g, &s, v)?);
        sections.push((format!("operation at v{}", v + 1), reports));
    }

    let proven_fail = sections
        .iter()
        .flat_map(|(_, rs)| rs)
        .any(|r| r.is_fail() && !r.property.is_conjecture());
    let conjecture_fail = sections
        .iter()
        .flat_map(|(_, rs)| rs)
        .any(|r| r.is_fail() && r.property.is_conjecture());
    let code = if proven_fail {
        EXIT_PROPERTY_FAILURE
    } else {
        0
    };

    if as_json {
        let body: Vec<Value> = sections
            .iter()
            .map(|(name, rs)| json!({"section": name, "reports": rs.iter().map(report_json).collect::<Vec<_>>()}))
            .collect();
        return json_out(
            json!({"sections": body, "proven_failure": proven_fail, "conjecture_failure": conjecture_fail}),
            code,
        );
    }
    let mut t = String::new();
    for (name, reports) in &sections {
        writeln!(t, "== {name}").unwrap();
        for r in reports {
            writeln!(t, "  {r}").unwrap();
        }
    }
    let (mut pass, mut fail, mut na) = (0, 0, 0);
    for r in sections.iter().flat_map(|(_, rs)| rs) {
        match r.status {
            Status::Pass => pass += 1,
            Status::Fail => fail += 1,
            Status::NotApplicable => na += 1,
        }
    }
    writeln!(t, "{pass} pass, {fail} fail, {na} not applicable").unwrap();
    if conjecture_fail {
        writeln!(
            t,
            "conjecture counterexample candidate found; see FAIL lines"
        )
        .unwrap();
    }
    Ok(Outcome { stdout: t, code })
}

fn cmd_enumerate(graph: &Path, rmax: u64, as_json: bool) -> Result<Outcome, CliError> {
    let g = io::read_graph(graph)?;
    let q = EnumerationQuery::new(g, rmax).map_err(|e| CliError::usage(e.to_string()))?;
    let all = enumerate_structures(&q);
    if as_json {
        let list: Vec<Value> = all
            .iter()
            .map(|s| serde_json::to_value(io::StructureFile::from_structure(s)).unwrap())
            .collect();
        return json_out(
            json!({"r_max": rmax, "complete_only_up_to_r_max": true, "count": all.len(), "structures": list}),
            0,
        );
    }
    let mut t = String::new();
    writeln!(
        t,
        "BOUND: only structures with every r entry <= {rmax} are listed"
    )
    .unwrap();
    writeln!(t, "count: {}", all.len()).unwrap();
    for s in &all {
        writeln!(t, "r = ({})  d = ({})", join(s.r()), join(s.d())).unwrap();
    }
    ok(t)
}

fn cmd_fuzz(args: &FuzzArgs, as_json: bool) -> Result<Outcome, CliError> {
    let targets = if args.target.is_empty() {
        vec![Target::Theorems, Target::Minors, Target::Alpha]
    } else {
        args.target
            .iter()
            .map(|t| match t {
                TargetArg::Minors => Target::Minors,
                TargetArg::Alpha => Target::Alpha,
                TargetArg::Theorems => Target::Theorems,
            })
            .collect()
    };
    let generators = if args.generator.is_empty() {
        MatrixGenerator::ALL.to_vec()
    } else {
        args.generator
            .iter()
            .map(|g| match g {
                GeneratorArg::Uniform => MatrixGenerator::Uniform,
                GeneratorArg::LastRowGcd => MatrixGenerator::LastRowGcd,
                GeneratorArg::Symmetric => MatrixGenerator::Symmetric,
                GeneratorArg::Structure => MatrixGenerator::StructureL,
            })
            .collect()
    };
    let cfg = FuzzConfig {
        seed: args.seed,
        rows: args.dims.clone(),
        cols: args.dims.clone(),
        entry_bound: args.bound,
        case_count: args.cases,
        generators,
        targets,
        ..FuzzConfig::default()
    };
    let summary = fuzz_campaign(&cfg);
    let written = if summary.witnesses.is_empty() {
        Vec::new()
    } else {
        io::archive_witnesses(&summary.witnesses, &args.archive)?
    };
    let code = if summary.theorem_failures() > 0 || !summary.errors.is_empty() {
        EXIT_PROPERTY_FAILURE
    } else {
        0
    };
    if as_json {
        let counts: serde_json::Map<String, Value> = summary
            .counts
            .iter()
            .map(|(id, c)| {
                (
                    id.to_string(),
                    json!({"pass": c.pass, "fail": c.fail, "not_applicable": c.not_applicable, "degenerate": c.degenerate}),
                )
            })
            .collect();
        return json_out(
            json!({
                "seed": summary.seed,
                "cases": summary.case_count,
                "counts": counts,
                "theorem_failures": summary.theorem_failures(),
                "conjecture_failures": summary.conjecture_failures(),
                "errors": summary.errors,
                "witness_files": written.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
            }),
            code,
        );
    }
    let mut t = summary.to_string();
    t.push('\n');
    for p in &written {
        writeln!(t, "wrote {}", p.display()).unwrap();
    }
    Ok(Outcome { stdout: t, code })
}

fn cmd_recheck(path: &Path, as_json: bool) -> Result<Outcome, CliError> {
    let w = io::witness_from_json(&io::read_text(path)?)?;
    let Some(result) = recheck(&w) else {
        return Err(CliError::usage(format!(
            "{} has no library implementation to re-run",
            w.property
        )));
    };
    let report = result?;
    let code = if report.is_fail() && !report.property.is_conjecture() {
        EXIT_PROPERTY_FAILURE
    } else {
        0
    };
    if as_json {
        return json_out(report_json(&report), code);
    }
    let input = match &w.input {
        WitnessInput::Matrix(m) => format!("{}x{} matrix", m.rows(), m.cols()),
        WitnessInput::Operation { graph, vertex, .. } => {
            format!(
                "{}-vertex structure, operation at v{}",
                graph.n(),
                vertex + 1
            )
        }
    };
    Ok(Outcome {
        stdout: format!("{input}\n{report}\n"),
        code,
    })
}

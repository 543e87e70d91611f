//! Command-line front end. `run` parses arguments, dispatches, and returns
//! the rendered report together with the exit code, so the binary is a thin
//! wrapper and tests can compare output byte for byte.
//!
//! Exit codes: 0 on success, 2 when the library reports a domain error
//! (including malformed input files), 1 for usage and I/O errors.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::arrangement::{circuits, intersection_lattice, to_canonical, Arrangement};
use crate::constraints::{
    associated_field, constraint_space, contact_table, hidden_constraint, monomial_decomposition,
    search_critical_points, transport_derivation, verify_critical_point, ConstraintKind,
};
use crate::error::Error;
use crate::exact::{parse_polynomial_lines, parse_rational, Polynomial, Rational};
use crate::logderiv::{euler_multiple_dim, free_check, graded_component, k_vector, Derivation, FreenessVerdict};
use crate::syzygy::{build_system, canonical_generators, complete, derivation_from_k, verify_solution, GeneratorKind, SolutionTuple};
use crate::ziegler;

#[derive(Parser, Debug)]
#[command(name = "logderiv", version, about = "Logarithmic derivations of hyperplane arrangements, in exact arithmetic")]
struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Highest degree searched or solved for.
    #[arg(long, global = true, default_value_t = 12)]
    max_degree: u32,
    /// Height bound for the critical-point scan.
    #[arg(long, global = true, default_value_t = 3)]
    height: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Arrangement combinatorics.
    #[command(subcommand)]
    Arr(ArrCommand),
    /// Membership and graded pieces of D(A).
    #[command(subcommand)]
    Deriv(DerivCommand),
    /// Greedy freeness search.
    #[command(subcommand)]
    Free(FreeCommand),
    /// The equation system of a canonical-form arrangement.
    #[command(subcommand)]
    Syzygy(SyzygyCommand),
    /// Interior and exterior constraints of a derivation.
    Constraints(PairArgs),
    /// Zeros of the associated field in the complement.
    #[command(subcommand)]
    Critical(CriticalCommand),
    /// Carry a derivation to a lattice-equivalent arrangement.
    Transport(TransportArgs),
    /// Built-in fixtures.
    #[command(subcommand)]
    Example(ExampleCommand),
}

#[derive(Subcommand, Debug)]
enum ArrCommand {
    /// Flats of the intersection lattice by rank.
    Lattice { file: PathBuf },
    /// Change of coordinates making the first forms the coordinates.
    Canonical { file: PathBuf },
    /// Minimal linear dependencies among the forms.
    Circuits { file: PathBuf },
}

#[derive(Args, Debug)]
struct PairArgs {
    arrangement: PathBuf,
    derivation: PathBuf,
}

#[derive(Subcommand, Debug)]
enum DerivCommand {
    /// Checks membership and prints the quotients k_i.
    Check(PairArgs),
    /// Basis of the homogeneous degree-d logarithmic derivations.
    Graded {
        arrangement: PathBuf,
        #[arg(short = 'd', long = "degree")]
        degree: u32,
    },
}

#[derive(Subcommand, Debug)]
enum FreeCommand {
    Check { arrangement: PathBuf },
}

#[derive(Subcommand, Debug)]
enum SyzygyCommand {
    System {
        arrangement: PathBuf,
    },
    Gens {
        arrangement: PathBuf,
        #[arg(short = 'j')]
        j: usize,
    },
    /// Checks a tuple k_1..k_l (one polynomial per line).
    Verify {
        arrangement: PathBuf,
        tuple: PathBuf,
        #[arg(short = 'j')]
        j: Option<usize>,
    },
}

#[derive(Args, Debug)]
struct FieldArgs {
    arrangement: PathBuf,
    derivation: PathBuf,
    /// 1-based indices of independent forms, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 1)]
    basis: Vec<usize>,
}

#[derive(Subcommand, Debug)]
enum CriticalCommand {
    Verify {
        #[command(flatten)]
        field: FieldArgs,
        /// Comma separated rationals.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    Search {
        #[command(flatten)]
        field: FieldArgs,
    },
}

#[derive(Args, Debug)]
struct TransportArgs {
    source: PathBuf,
    target: PathBuf,
    /// File of n whitespace-separated 1-based indices: form i goes to entry i.
    #[arg(long)]
    perm: PathBuf,
    derivation: PathBuf,
}

#[derive(Subcommand, Debug)]
enum ExampleCommand {
    /// Ziegler's arrangement X2 with its degree-5 derivation.
    Ziegler {
        #[arg(long)]
        emit_files: Option<PathBuf>,
    },
}

/// Rendered output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// A command's output: resolved inputs, structured results, the text
/// rendering of those results, and warnings.
#[derive(Debug, Default)]
pub struct Report {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub results: Map<String, Value>,
    pub lines: Vec<String>,
    pub diagnostics: Vec<String>,
}

impl Report {
    fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            ..Default::default()
        }
    }

    fn input(&mut self, key: &str, value: impl Into<Value>) {
        self.inputs.insert(key.to_string(), value.into());
    }

    fn result(&mut self, key: &str, value: impl Into<Value>) {
        self.results.insert(key.to_string(), value.into());
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn render(&self, as_json: bool, error: Option<&Error>) -> String {
        if as_json {
            let mut obj = Map::new();
            obj.insert("command".into(), self.command.clone().into());
            obj.insert("inputs".into(), Value::Object(self.inputs.clone()));
            match error {
                Some(e) => {
                    obj.insert("error".into(), json!({ "name": e.name(), "message": e.to_string() }));
                }
                None => {
                    obj.insert("results".into(), Value::Object(self.results.clone()));
                }
            }
            obj.insert("diagnostics".into(), json!(self.diagnostics));
            let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("json values serialize");
            s.push('\n');
            return s;
        }
        let mut s = format!("{}\n", self.command);
        for (k, v) in &self.inputs {
            let shown = match v {
                Value::String(x) => x.clone(),
                other => other.to_string(),
            };
            s.push_str(&format!("  {k}: {shown}\n"));
        }
        match error {
            Some(e) => s.push_str(&format!("error[{}]: {e}\n", e.name())),
            None => {
                for l in &self.lines {
                    s.push_str(l);
                    s.push('\n');
                }
            }
        }
        for d in &self.diagnostics {
            s.push_str(&format!("note: {d}\n"));
        }
        s
    }
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut report = Report::new(command_name(&cli.command));
    match dispatch(&cli, &mut report) {
        Ok(()) => Outcome {
            code: 0,
            stdout: report.render(cli.json, None),
            stderr: String::new(),
        },
        Err(Failure::Domain(e)) => Outcome {
            code: 2,
            stdout: report.render(cli.json, Some(&e)),
            stderr: String::new(),
        },
        Err(Failure::Usage(m)) | Err(Failure::Io(m)) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {m}\n"),
        },
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Arr(ArrCommand::Lattice { .. }) => "arr lattice",
        Command::Arr(ArrCommand::Canonical { .. }) => "arr canonical",
        Command::Arr(ArrCommand::Circuits { .. }) => "arr circuits",
        Command::Deriv(DerivCommand::Check(_)) => "deriv check",
        Command::Deriv(DerivCommand::Graded { .. }) => "deriv graded",
        Command::Free(_) => "free check",
        Command::Syzygy(SyzygyCommand::System { .. }) => "syzygy system",
        Command::Syzygy(SyzygyCommand::Gens { .. }) => "syzygy gens",
        Command::Syzygy(SyzygyCommand::Verify { .. }) => "syzygy verify",
        Command::Constraints(_) => "constraints",
        Command::Critical(CriticalCommand::Verify { .. }) => "critical verify",
        Command::Critical(CriticalCommand::Search { .. }) => "critical search",
        Command::Transport(_) => "transport",
        Command::Example(_) => "example ziegler",
    }
}

fn dispatch(cli: &Cli, r: &mut Report) -> CliResult<()> {
    match &cli.command {
        Command::Arr(ArrCommand::Lattice { file }) => arr_lattice(r, file),
        Command::Arr(ArrCommand::Canonical { file }) => arr_canonical(r, file),
        Command::Arr(ArrCommand::Circuits { file }) => arr_circuits(r, file),
        Command::Deriv(DerivCommand::Check(p)) => deriv_check(r, p),
        Command::Deriv(DerivCommand::Graded { arrangement, degree }) => {
            deriv_graded(r, arrangement, *degree, cli.max_degree)
        }
        Command::Free(FreeCommand::Check { arrangement }) => free(r, arrangement, cli.max_degree),
        Command::Syzygy(SyzygyCommand::System { arrangement }) => syzygy_system(r, arrangement),
        Command::Syzygy(SyzygyCommand::Gens { arrangement, j }) => syzygy_gens(r, arrangement, *j),
        Command::Syzygy(SyzygyCommand::Verify { arrangement, tuple, j }) => syzygy_verify(r, arrangement, tuple, *j),
        Command::Constraints(p) => constraints(r, p),
        Command::Critical(CriticalCommand::Verify { field, point }) => critical_verify(r, field, point),
        Command::Critical(CriticalCommand::Search { field }) => critical_search(r, field, cli.height),
        Command::Transport(t) => transport(r, t),
        Command::Example(ExampleCommand::Ziegler { emit_files }) => example_ziegler(r, emit_files.as_deref()),
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))
}

fn load_arrangement(r: &mut Report, key: &str, path: &Path) -> CliResult<Arrangement> {
    r.input(key, path.display().to_string());
    Ok(Arrangement::parse(&read(path)?)?)
}

fn load_derivation(r: &mut Report, path: &Path, ell: usize) -> CliResult<Derivation> {
    r.input("derivation", path.display().to_string());
    Ok(Derivation::parse(&read(path)?, ell)?)
}

fn rat_json(x: &Rational) -> Value {
    Value::String(x.to_string())
}

fn poly_json(p: &Polynomial) -> Value {
    Value::String(p.to_string())
}

fn der_json(d: &Derivation) -> Value {
    Value::Array(d.coords().iter().map(poly_json).collect())
}

fn one_based(idx: &[usize]) -> Vec<usize> {
    idx.iter().map(|i| i + 1).collect()
}

fn set_text(idx: &[usize]) -> String {
    let parts: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn list_text<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

/// 1-based CLI indices to 0-based, rejecting 0 and values past `n`.
fn zero_based(idx: &[usize], n: usize) -> CliResult<Vec<usize>> {
    idx.iter()
        .map(|&i| {
            if i == 0 || i > n {
                Err(Failure::Domain(Error::IndexOutOfRange { index: i, lo: 1, hi: n }))
            } else {
                Ok(i - 1)
            }
        })
        .collect()
}

fn arr_lattice(r: &mut Report, file: &Path) -> CliResult<()> {
    let a = load_arrangement(r, "arrangement", file)?;
    let flats = intersection_lattice(&a);
    let mut by_rank = Vec::new();
    for rank in 1..=a.ell() {
        let of_rank: Vec<_> = flats.iter().filter(|f| f.rank == rank).collect();
        r.line(format!("rank {rank}: {} flats", of_rank.len()));
        for f in &of_rank {
            r.line(format!("  {}", set_text(&f.hyperplane_indices)));
        }
        by_rank.push(json!({
            "rank": rank,
            "count": of_rank.len(),
            "flats": of_rank.iter().map(|f| one_based(&f.hyperplane_indices)).collect::<Vec<_>>(),
        }));
    }
    r.result("ell", a.ell());
    r.result("n", a.len());
    r.result("ranks", by_rank);
    Ok(())
}

fn arr_canonical(r: &mut Report, file: &Path) -> CliResult<()> {
    let a = load_arrangement(r, "arrangement", file)?;
    let (c, basis) = to_canonical(&a)?;
    let basis_forms: Vec<usize> = basis.permutation[..a.ell()].to_vec();
    r.line(format!("coordinate forms: {}", list_text(&one_based(&basis_forms))));
    r.line(format!("form order: {}", list_text(&one_based(&basis.permutation))));
    r.line("canonical arrangement:");
    for l in c.to_arr_string().lines() {
        r.line(format!("  {l}"));
    }
    r.result("coordinate_forms", one_based(&basis_forms));
    r.result("form_order", one_based(&basis.permutation));
    r.result(
        "forms",
        c.forms()
            .iter()
            .map(|f| f.coeffs().iter().map(rat_json).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    );
    if basis.is_identity() {
        r.diagnostics.push("input is already canonical".into());
    }
    Ok(())
}

fn arr_circuits(r: &mut Report, file: &Path) -> CliResult<()> {
    let a = load_arrangement(r, "arrangement", file)?;
    let cs = circuits(&a);
    let mut out = Vec::new();
    for c in &cs {
        let terms: Vec<String> = c
            .indices
            .iter()
            .zip(&c.coefficients)
            .map(|(j, b)| format!("({b})*alpha_{}", j + 1))
            .collect();
        r.line(format!("{}: {} = 0", set_text(&c.indices), terms.join(" + ")));
        out.push(json!({
            "forms": one_based(&c.indices),
            "coefficients": c.coefficients.iter().map(rat_json).collect::<Vec<_>>(),
        }));
    }
    r.line(format!("{} circuits", cs.len()));
    r.result("circuits", out);
    Ok(())
}

fn deriv_check(r: &mut Report, p: &PairArgs) -> CliResult<()> {
    let a = load_arrangement(r, "arrangement", &p.arrangement)?;
    let theta = load_derivation(r, &p.derivation, a.ell())?;
    let k = k_vector(&a, &theta)?;
    // for a homogeneous theta every k_i lies in the graded piece one below
    let graded = theta.degree().map(|d| d.saturating_sub(1));
    let mut entries = Vec::new();
    let mut degrees = Vec::new();
    for (i, q) in k.entries.iter().enumerate() {
        let deg = graded.or(q.degree());
        degrees.push(deg);
        let deg_text = deg.map_or("-".to_string(), |d| d.to_string());
        let zero_note = if q.is_zero() { ", zero" } else { "" };
        r.line(format!("k{} = {q}  (degree {deg_text}{zero_note})", i + 1));
        entries.push(json!({ "index": i + 1, "k": poly_json(q), "degree": deg, "zero": q.is_zero() }));
    }
    let zeros: Vec<usize> = (0..k.entries.len()).filter(|&i| k.entries[i].is_zero()).collect();
    if !zeros.is_empty() {
        r.diagnostics.push(format!(
            "theta is tangent to form(s) {}: k_i = 0 there",
            list_text(&one_based(&zeros))
        ));
    }
    r.line(format!(
        "degrees: ({})",
        degrees.iter().map(|d| d.map_or("-".into(), |d| d.to_string())).collect::<Vec<_>>().join(",")
    ));
    r.line(format!("theta(Q)/Q = {}", k.sum()));
    r.result("logarithmic", true);
    r.result("derivation_degree", theta.degree());
    r.result("k", entries);
    r.result("k_sum", poly_json(&k.sum()));
    Ok(())
}

fn deriv_graded(r: &mut Report, file: &Path, d: u32, cap: u32) -> CliResult<()> {
    let a = load_arrangement(r, "arrangement", file)?;
    r.input("degree", d);
    if d > cap {
        return Err(Failure::Usage(format!("degree {d} exceeds --max-degree {cap}")));
    }
    let g = graded_component(&a, d);
    let euler = euler_multiple_dim(a.ell(), d);
    r.line(format!("dim D(A)_{d} = {}", g.dim()));
    r.line(format!("dim S_{} * theta_E = {euler}", d.saturating_sub(1)));
    for (idx, m) in g.members.iter().enumerate() {
        r.line(format!("  theta{} = {m}", idx + 1));
    }
    r.result("dim", g.dim());
    r.result("euler_multiples_dim", euler);
    r.result("basis", g.members.iter().map(der_json).collect::<Vec<_>>());
    Ok(())
}

fn free(r: &mut Report, file: &Path, cap: u32) -> CliResult<()> {
    let a = load_arrangement(r, "arrangement", file)?;
    r.input("max_degree", cap);
    let report = free_check(&a, cap);
    let mut steps = Vec::new();
    for s in &report.steps {
        r.line(format!(
            "degree {}: graded dim {}, from earlier generators {}, new {}",
            s.degree, s.graded_dim, s.inherited_dim, s.new_generators
        ));
        steps.push(json!({
            "degree": s.degree,
            "graded_dim": s.graded_dim,
            "inherited_dim": s.inherited_dim,
            "new_generators": s.new_generators,
        }));
    }
    r.result("steps", steps);
    match &report.verdict {
        FreenessVerdict::Free { exponents, basis, c } => {
            r.line(format!("verdict: free, exponents ({})", list_text(exponents)));
            r.line(format!("det = {c} * Q"));
            for (i, b) in basis.iter().enumerate() {
                r.line(format!("  theta{} = {b}", i + 1));
            }
            r.result(
                "verdict",
                json!({
                    "kind": "free",
                    "exponents": exponents,
                    "c": rat_json(c),
                    "basis": basis.iter().map(der_json).collect::<Vec<_>>(),
                }),
            );
        }
        FreenessVerdict::NotFree { generator_degrees, reason } => {
            r.line(format!("verdict: not free ({reason})"));
            r.line(format!("generator degrees: ({})", list_text(generator_degrees)));
            r.result(
                "verdict",
                json!({ "kind": "not_free", "generator_degrees": generator_degrees, "reason": reason }),
            );
        }
        FreenessVerdict::Inconclusive {
            max_degree,
            generator_degrees,
        } => {
            r.line(format!("verdict: inconclusive up to degree {max_degree}"));
            r.line(format!("generator degrees so far: ({})", list_text(generator_degrees)));
            r.diagnostics.push(format!("degree cap {max_degree} reached before l generators were found"));
            r.result(
                "verdict",
                json!({ "kind": "inconclusive", "max_degree": max_degree, "generator_degrees": generator_degrees }),
            );
        }
    }
    Ok(())
}

/// Loads an arrangement and moves it to canonical form, noting the change.
fn load_canonical(r: &mut Report, file: &Path) -> CliResult<Arrangement> {
    let a = load_arrangement(r, "arrangement", file)?;
    if a.is_canonical() {
        return Ok(a);
    }
    let (c, basis) = to_canonical(&a)?;
    r.diagnostics.push(format!(
        "input is not canonical; working in coordinates of forms {} (new form order {})",
        list_text(&one_based(&basis.permutation[..a.ell()])),
        list_text(&one_based(&basis.permutation))
    ));
    Ok(c)
}

fn syzygy_system(r: &mut Report, file: &Path) -> CliResult<()> {
    let a = load_canonical(r, file)?;
    let sys = build_system(&a)?;
    let mut eqs = Vec::new();
    for j in a.ell()..a.len() {
        let form = sys.form(j)?;
        r.line(format!("j={}: k{} * ({form}) = sum_i k_i a_ij x_i", j + 1, j + 1));
        eqs.push(json!({
            "j": j + 1,
            "coefficients": sys.rewrite_coeffs[j - a.ell()].iter().map(rat_json).collect::<Vec<_>>(),
        }));
    }
    if eqs.is_empty() {
        r.line("no equations (n = l)");
    }
    r.result("ell", sys.ell);
    r.result("n", sys.n);
    r.result("equations", eqs);
    Ok(())
}

fn kind_text(k: GeneratorKind) -> String {
    match k {
        GeneratorKind::AllOnes => "e".into(),
        GeneratorKind::Unit(i) => format!("e_{}", i + 1),
        GeneratorKind::Koszul(s, t) => format!("koszul({},{})", s + 1, t + 1),
    }
}

/// 1-based equation index to 0-based; range checks beyond zero happen in the library.
fn equation_index(j: usize, sys: &crate::syzygy::SyzygySystem) -> CliResult<usize> {
    if j == 0 {
        return Err(Failure::Domain(Error::IndexOutOfRange {
            index: 0,
            lo: sys.ell + 1,
            hi: sys.n,
        }));
    }
    Ok(j - 1)
}

fn syzygy_gens(r: &mut Report, file: &Path, j: usize) -> CliResult<()> {
    let a = load_canonical(r, file)?;
    r.input("j", j);
    let sys = build_system(&a)?;
    let gens = canonical_generators(&sys, equation_index(j, &sys)?)?;
    let mut out = Vec::new();
    for (kind, tuple, kj) in gens.members() {
        let entries: Vec<String> = tuple.entries.iter().map(ToString::to_string).collect();
        r.line(format!("{}: [{}]  k{j} = {kj}", kind_text(kind), entries.join(", ")));
        out.push(json!({
            "kind": kind_text(kind),
            "tuple": entries,
            "k_j": poly_json(&kj),
        }));
    }
    r.result("j", j);
    r.result("generators", out);
    Ok(())
}

fn syzygy_verify(r: &mut Report, file: &Path, tuple: &Path, j: Option<usize>) -> CliResult<()> {
    let a = load_arrangement(r, "arrangement", file)?;
    let sys = build_system(&a)?;
    r.input("tuple", tuple.display().to_string());
    let entries = parse_polynomial_lines(&read(tuple)?, a.ell())?;
    if entries.len() != a.ell() {
        return Err(Error::DimensionMismatch {
            expected: a.ell(),
            found: entries.len(),
        }
        .into());
    }
    let sol = SolutionTuple::new(entries);
    let js: Vec<usize> = match j {
        Some(j) => {
            r.input("j", j);
            vec![equation_index(j, &sys)?]
        }
        None => (a.ell()..a.len()).collect(),
    };
    let mut checks = Vec::new();
    let mut all_ok = true;
    for jj in js {
        let v = verify_solution(&sys, &sol, jj)?;
        all_ok &= v.ok;
        match &v.k_j {
            Some(k) => r.line(format!("j={}: ok, k{} = {k}", jj + 1, jj + 1)),
            None => r.line(format!("j={}: fails, alpha_{} does not divide the right-hand side", jj + 1, jj + 1)),
        }
        checks.push(json!({ "j": jj + 1, "ok": v.ok, "k_j": v.k_j.as_ref().map(poly_json) }));
    }
    r.result("checks", checks);
    if j.is_none() && all_ok {
        let done = complete(&sys, &sol)?;
        let theta = derivation_from_k(&sys, &done)?;
        r.line(format!("theta = {theta}"));
        r.result("derivation", der_json(&theta));
    }
    r.result("ok", all_ok);
    Ok(())
}

fn constraints(r: &mut Report, p: &PairArgs) -> CliResult<()> {
    let a = load_arrangement(r, "arrangement", &p.arrangement)?;
    let theta = load_derivation(r, &p.derivation, a.ell())?;
    let space = constraint_space(&a, &theta)?;
    let decomp = monomial_decomposition(&theta);
    let table = contact_table(&a, &decomp)?;
    r.line(format!("M = {} monomials", decomp.len()));
    for (k, (m, v)) in decomp.entries.iter().enumerate() {
        r.line(format!("  m{} = {m}  v = ({})  c = ({})", k + 1, list_text(v), list_text(&table.values[k])));
    }
    let interior: Vec<_> = space
        .generators
        .iter()
        .filter(|g| matches!(g.kind, ConstraintKind::Interior { .. }))
        .collect();
    let exterior: Vec<_> = space
        .generators
        .iter()
        .filter(|g| matches!(g.kind, ConstraintKind::Exterior { .. }))
        .collect();
    r.line(format!("interior rows: {}", interior.len()));
    for g in &interior {
        if let ConstraintKind::Interior { hyperplane } = g.kind {
            r.line(format!("  [H{}] {g}", hyperplane + 1));
        }
    }
    r.line(format!("exterior rows: {}", exterior.len()));
    for g in &exterior {
        if let ConstraintKind::Exterior { circuit, .. } = &g.kind {
            r.line(format!("  [{}] {g}", set_text(circuit)));
        }
    }
    let violated = space.generators.iter().filter(|g| !g.apply(&table).is_zero()).count();
    r.line(format!("rank {} of {} cells", space.rank(), space.ambient_dim()));
    r.line(format!("rows violated by the contact table: {violated}"));
    r.diagnostics
        .push("exterior rows come from fundamental circuits; all circuits span the same rows".into());
    let row_json = |g: &crate::constraints::ConstraintRow| {
        json!({
            "row": g.to_string(),
            "cells": g.coefficients.iter().map(|(&(k, j), b)| json!([k + 1, j + 1, rat_json(b)])).collect::<Vec<_>>(),
        })
    };
    r.result(
        "monomials",
        decomp.entries.iter().map(|(m, _)| m.to_string()).collect::<Vec<_>>(),
    );
    r.result(
        "contact_table",
        table
            .values
            .iter()
            .map(|row| row.iter().map(rat_json).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    );
    r.result("interior", interior.iter().map(|g| row_json(g)).collect::<Vec<_>>());
    r.result("exterior", exterior.iter().map(|g| row_json(g)).collect::<Vec<_>>());
    r.result("rank", space.rank());
    r.result("ambient", space.ambient_dim());
    r.result("violated", violated);
    Ok(())
}

fn parse_point(s: &str) -> CliResult<Vec<Rational>> {
    s.split(',')
        .map(|t| parse_rational(t.trim()).ok_or_else(|| Failure::Usage(format!("bad coordinate {t:?} in --point"))))
        .collect()
}

fn load_field(
    r: &mut Report,
    f: &FieldArgs,
) -> CliResult<(Arrangement, Derivation, crate::constraints::AssociatedField)> {
    let a = load_arrangement(r, "arrangement", &f.arrangement)?;
    let theta = load_derivation(r, &f.derivation, a.ell())?;
    r.input("basis", list_text(&f.basis));
    let basis = zero_based(&f.basis, a.len())?;
    let field = associated_field(&a, &theta, &basis)?;
    for (t, q) in field.q.iter().enumerate() {
        r.line(format!("q{} = k{} = {q}", t + 1, basis[t] + 1));
    }
    r.result("field", field.q.iter().map(poly_json).collect::<Vec<_>>());
    Ok((a, theta, field))
}

fn critical_verify(r: &mut Report, f: &FieldArgs, point: &str) -> CliResult<()> {
    let (a, theta, field) = load_field(r, f)?;
    r.input("point", point.to_string());
    let c = parse_point(point)?;
    let check = verify_critical_point(&a, &field, &c)?;
    r.line(format!("field vanishes: {}", check.is_zero));
    r.line(format!("in complement: {}", check.in_complement));
    r.result("is_zero", check.is_zero);
    r.result("in_complement", check.in_complement);
    if check.is_critical() {
        let decomp = monomial_decomposition(&theta);
        let row = hidden_constraint(&a, &decomp, &field, &c)?;
        let value = row.apply(&contact_table(&a, &decomp)?);
        r.line(format!("hidden constraint: {row}"));
        r.line(format!("value on the contact table: {value}"));
        r.result("hidden_constraint", row.to_string());
        r.result("hidden_value", rat_json(&value));
    }
    Ok(())
}

fn critical_search(r: &mut Report, f: &FieldArgs, height: u32) -> CliResult<()> {
    let (a, _, field) = load_field(r, f)?;
    r.input("height", height);
    if height == 0 {
        return Err(Failure::Usage("--height must be at least 1".into()));
    }
    let s = search_critical_points(&a, &field, height);
    r.line(format!("{} complement zeros found", s.points.len()));
    for p in &s.points {
        r.line(format!("  ({})", list_text(p)));
    }
    r.result(
        "points",
        s.points
            .iter()
            .map(|p| p.iter().map(rat_json).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    );
    r.result("projective", s.projective);
    r.diagnostics.push(format!(
        "search incomplete at height {height}: points outside the scanned grid are not examined"
    ));
    Ok(())
}

/// Reads `n` whitespace-separated 1-based indices, `#` comments allowed.
fn parse_perm(text: &str, n: usize) -> crate::Result<Vec<usize>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        for tok in body.split_whitespace() {
            let v: usize = tok
                .parse()
                .map_err(|_| Error::Parse { line: lineno + 1, message: format!("bad index {tok:?}") })?;
            if v == 0 || v > n {
                return Err(Error::IndexOutOfRange { index: v, lo: 1, hi: n });
            }
            out.push(v - 1);
        }
    }
    if out.len() != n {
        return Err(Error::Parse {
            line: 0,
            message: format!("expected {n} indices, got {}", out.len()),
        });
    }
    Ok(out)
}

fn transport(r: &mut Report, t: &TransportArgs) -> CliResult<()> {
    let a = load_arrangement(r, "source", &t.source)?;
    let b = load_arrangement(r, "target", &t.target)?;
    r.input("perm", t.perm.display().to_string());
    let perm = parse_perm(&read(&t.perm)?, a.len())?;
    let theta = load_derivation(r, &t.derivation, a.ell())?;
    let res = transport_derivation(&a, &b, &perm, &theta)?;
    r.line(format!("unknowns (support cells): {}", res.unknowns));
    r.line(format!("solution dimension: {}", res.solution_dim));
    match &res.witness {
        Some(w) => r.line(format!("witness: {w}")),
        None => r.line("witness: none"),
    }
    if let Some(ok) = res.satisfies_transported {
        r.line(format!("witness satisfies transported constraints: {ok}"));
    }
    r.result("unknowns", res.unknowns);
    r.result("solution_dim", res.solution_dim);
    r.result("witness", res.witness.as_ref().map(der_json));
    r.result("satisfies_transported", res.satisfies_transported);
    r.diagnostics
        .push("experiment only: support is fixed to theta's cells and no verdict is issued".into());
    Ok(())
}

fn example_ziegler(r: &mut Report, dir: Option<&Path>) -> CliResult<()> {
    let (a, theta) = ziegler::emit_ziegler_fixture();
    r.line(format!("Q = {}", a.forms().iter().map(|f| format!("({f})")).collect::<String>()));
    for (i, p) in theta.coords().iter().enumerate() {
        r.line(format!("theta_z[{}] = {p}", i + 1));
    }
    let k = k_vector(&a, &theta)?;
    r.line(format!("self-check: all {} quotients exact", k.entries.len()));
    r.result("arrangement", ziegler::ARR_TEXT);
    r.result("derivation", der_json(&theta));
    if let Some(dir) = dir {
        r.input("emit_files", dir.display().to_string());
        fs::create_dir_all(dir).map_err(|e| Failure::Io(format!("cannot create {}: {e}", dir.display())))?;
        let files = [("x2.arr", ziegler::ARR_TEXT), ("theta_z.der", ziegler::THETA_TEXT)];
        for (name, body) in files {
            let path = dir.join(name);
            fs::write(&path, body).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))?;
            r.line(format!("wrote {}", path.display()));
        }
        r.result("files", files.iter().map(|(n, _)| *n).collect::<Vec<_>>());
    }
    Ok(())
}

//! The `qproj` command line. Parsing and rendering live here rather than in
//! `main` so every subcommand can be driven from tests.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or format error,
//! 3 budget or cap exceeded.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Read as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use qproj_core::fqlinalg::{enumerate_subspaces, subspace_count};
use qproj_core::geometry::{
    build_boolean_geometry, build_projective_space, check_lemma1, collineation_order, point_count_check, point_name,
    subspace_census, validate_axioms, CheckVerdict, GeometryFile,
};
use qproj_core::gfarith::is_prime_power;
use qproj_core::grouporders::{brute_force_order, formula_order, psl_is_simple, GroupFamily};
use qproj_core::paths::area_generating_function;
use qproj_core::planes::{bruck_ryser, known_nonexistence, sum_of_two_squares, validate_plane};
use qproj_core::qcalc::{q_binomial_quotient, q_binomial_recurrence};
use qproj_core::qword::{expand_binomial, nc_coefficient};
use qproj_core::{BruckRyser, Error, IncidenceGeometry, Limits, NoncommPoly, PlaneStructure, QPoly};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFICATION: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

/// What a single invocation produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: u8,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Parser)]
#[command(name = "qproj", version, about = "q-analogues and finite projective geometry, computed exactly")]
struct Cli {
    /// Emit a JSON envelope instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Gaussian binomial [n, k]_q, computed by recurrence and by factorial quotient.
    Qbinom {
        n: u32,
        k: u32,
        /// Evaluate at this integer instead of printing coefficients.
        #[arg(long, allow_hyphen_values = true)]
        at: Option<BigInt>,
    },
    /// Expand (x + y)^n under yx = qxy, one term per line.
    Expand { n: u32 },
    /// Count (or list) the k-dimensional subspaces of F_q^n.
    Subspaces {
        q: u64,
        n: u32,
        k: u32,
        /// Print the canonical basis of every subspace.
        #[arg(long)]
        list: bool,
    },
    #[command(subcommand)]
    Geometry(GeometryCmd),
    #[command(subcommand)]
    Plane(PlaneCmd),
    #[command(subcommand)]
    Paths(PathsCmd),
    #[command(subcommand)]
    Group(GroupCmd),
}

#[derive(Debug, Subcommand)]
enum GeometryCmd {
    /// Write a geometry as JSON.
    Build(BuildArgs),
    /// Validate the axioms, Lemma 1, the point count and the subspace census. `-` reads stdin.
    Check { file: PathBuf },
    /// Count collineations by search.
    Collineations { file: PathBuf },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct BuildArgs {
    /// Projective space P^n(F_q).
    #[arg(long, num_args = 2, value_names = ["Q", "N"])]
    projective: Option<Vec<u64>>,
    /// Boolean geometry on n points.
    #[arg(long, value_name = "N")]
    boolean: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum PlaneCmd {
    /// Validate a plane given as points and lines. `-` reads stdin.
    Check { file: PathBuf },
    /// Bruck-Ryser test for a plane order.
    BruckRyser { order: u64 },
}

#[derive(Debug, Subcommand)]
enum PathsCmd {
    /// Area generating function of lattice paths in an m x n box.
    Gf { m: u32, n: u32 },
}

#[derive(Debug, Subcommand)]
enum GroupCmd {
    /// Order of GL, SL, PGL or PSL of degree n over F_q.
    Order {
        family: GroupFamily,
        n: u32,
        q: u64,
        /// Also count by enumerating matrices and compare.
        #[arg(long)]
        brute_force: bool,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Qbinom { .. } => "qbinom",
            Command::Expand { .. } => "expand",
            Command::Subspaces { .. } => "subspaces",
            Command::Geometry(GeometryCmd::Build(_)) => "geometry build",
            Command::Geometry(GeometryCmd::Check { .. }) => "geometry check",
            Command::Geometry(GeometryCmd::Collineations { .. }) => "geometry collineations",
            Command::Plane(PlaneCmd::Check { .. }) => "plane check",
            Command::Plane(PlaneCmd::BruckRyser { .. }) => "plane bruck-ryser",
            Command::Paths(PathsCmd::Gf { .. }) => "paths gf",
            Command::Group(GroupCmd::Order { .. }) => "group order",
        }
    }
}

struct Outcome {
    verified: bool,
    text: String,
    json: Value,
}

type CmdResult = Result<Outcome, Error>;

pub fn run<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let json_mode = args.iter().skip(1).any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            return CommandResult { exit_code: EXIT_OK, stdout: e.render().to_string(), stderr: String::new() };
        }
        Err(e) if json_mode => return envelope(None, EXIT_USAGE, None, Some(e.kind().to_string())),
        Err(e) => {
            return CommandResult { exit_code: EXIT_USAGE, stdout: String::new(), stderr: e.render().to_string() };
        }
    };

    let name = cli.command.name();
    match execute(&cli.command) {
        Ok(out) => {
            let code = if out.verified { EXIT_OK } else { EXIT_VERIFICATION };
            if cli.json {
                envelope(Some(name), code, Some(out.json), None)
            } else {
                CommandResult { exit_code: code, stdout: out.text, stderr: String::new() }
            }
        }
        Err(e) => {
            let code = exit_code_for(&e);
            if cli.json {
                envelope(Some(name), code, None, Some(e.to_string()))
            } else {
                CommandResult { exit_code: code, stdout: String::new(), stderr: format!("error: {e}\n") }
            }
        }
    }
}

pub fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } | Error::FieldTooLarge { .. } => EXIT_BUDGET,
        _ => EXIT_USAGE,
    }
}

fn envelope(command: Option<&str>, code: u8, result: Option<Value>, error: Option<String>) -> CommandResult {
    let status = match code {
        EXIT_OK => "ok",
        EXIT_VERIFICATION => "verification_failed",
        EXIT_BUDGET => "budget_exceeded",
        _ => "usage_error",
    };
    let doc = json!({
        "command": command,
        "status": status,
        "exit_code": code,
        "result": result,
        "error": error,
    });
    let mut stdout = serde_json::to_string_pretty(&doc).expect("envelope serializes");
    stdout.push('\n');
    CommandResult { exit_code: code, stdout, stderr: String::new() }
}

fn execute(cmd: &Command) -> CmdResult {
    match cmd {
        Command::Qbinom { n, k, at } => qbinom(*n, *k, at.as_ref()),
        Command::Expand { n } => expand(*n),
        Command::Subspaces { q, n, k, list } => subspaces(*q, *n, *k, *list),
        Command::Geometry(GeometryCmd::Build(args)) => geometry_build(args),
        Command::Geometry(GeometryCmd::Check { file }) => geometry_check(&load_geometry(file)?),
        Command::Geometry(GeometryCmd::Collineations { file }) => collineations(&load_geometry(file)?),
        Command::Plane(PlaneCmd::Check { file }) => plane_check(&PlaneStructure::from_json(&read_input(file)?)?),
        Command::Plane(PlaneCmd::BruckRyser { order }) => plane_bruck_ryser(*order),
        Command::Paths(PathsCmd::Gf { m, n }) => paths_gf(*m, *n),
        Command::Group(GroupCmd::Order { family, n, q, brute_force }) => group_order(*family, *n, *q, *brute_force),
    }
}

fn read_input(path: &Path) -> Result<String, Error> {
    let mut text = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    Ok(text)
}

fn load_geometry(path: &Path) -> Result<IncidenceGeometry, Error> {
    IncidenceGeometry::from_json(&read_input(path)?)
}

fn coeff_strings(p: &QPoly) -> Vec<String> {
    p.coeffs().iter().map(ToString::to_string).collect()
}

fn qbinom(n: u32, k: u32, at: Option<&BigInt>) -> CmdResult {
    let rec = q_binomial_recurrence(n, i64::from(k));
    let quo = q_binomial_quotient(n, i64::from(k))?;
    let agree = rec == quo;
    let value = at.map(|q0| rec.evaluate(q0));
    let text = if agree {
        match &value {
            Some(v) => format!("{v}\n"),
            None => format!("{}\n", rec.to_coeff_string()),
        }
    } else {
        format!(
            "MISMATCH between the two routes\nrecurrence: {}\nquotient:   {}\n",
            rec.to_coeff_string(),
            quo.to_coeff_string()
        )
    };
    let json = json!({
        "n": n,
        "k": k,
        "coefficients": coeff_strings(&rec),
        "quotient_coefficients": coeff_strings(&quo),
        "routes_agree": agree,
        "at": at.map(ToString::to_string),
        "value": value.map(|v| v.to_string()),
    });
    Ok(Outcome { verified: agree, text, json })
}

fn expand(n: u32) -> CmdResult {
    let e = expand_binomial(n);
    let mut text = String::new();
    let mut terms = Vec::new();
    for (a, b, c) in e.terms() {
        let _ = writeln!(text, "{}", NoncommPoly::term(a, b, c.clone()));
        terms.push(json!({ "x": a, "y": b, "coefficients": coeff_strings(c) }));
    }
    let mismatches: Vec<u32> =
        (0..=n).filter(|&k| nc_coefficient(&e, k, n - k) != q_binomial_recurrence(n, i64::from(k))).collect();
    let verified = mismatches.is_empty() && e.len() == n as usize + 1;
    for k in &mismatches {
        let _ = writeln!(text, "MISMATCH: coefficient of x^{k} y^{} is not [{n}, {k}]_q", n - k);
    }
    Ok(Outcome { verified, text, json: json!({ "n": n, "terms": terms, "matches_q_binomial": verified }) })
}

fn subspaces(q: u64, n: u32, k: u32, list: bool) -> CmdResult {
    if !is_prime_power(q) {
        return Err(Error::NotAPrimePower(q));
    }
    let count = subspace_count(q, n, i64::from(k));
    if !list && count > BigInt::from(Limits::default().subspace_budget) {
        let text = format!("{count}\n");
        let json = json!({ "q": q, "n": n, "k": k, "count": count.to_string(), "enumerated": false });
        return Ok(Outcome { verified: true, text, json });
    }
    let subs = enumerate_subspaces(q, n, i64::from(k))?;
    let verified = BigInt::from(subs.len()) == count;
    let mut text = if verified {
        format!("{count}\n")
    } else {
        format!("MISMATCH: enumerated {}, formula {count}\n", subs.len())
    };
    let mut bases = Vec::new();
    if list {
        for s in &subs {
            let rows: Vec<String> = s.basis_rows().map(point_name).collect();
            let _ = writeln!(text, "{}", rows.join(" "));
            bases.push(rows);
        }
    }
    let json = json!({
        "q": q,
        "n": n,
        "k": k,
        "count": count.to_string(),
        "enumerated": true,
        "enumerated_count": subs.len(),
        "bases": list.then_some(bases),
    });
    Ok(Outcome { verified, text, json })
}

fn geometry_build(args: &BuildArgs) -> CmdResult {
    let g = match (&args.projective, args.boolean) {
        (Some(qn), _) => {
            let n = u32::try_from(qn[1]).map_err(|_| Error::InvalidArgument(format!("dimension {} too large", qn[1])))?;
            build_projective_space(qn[0], n)?
        }
        (None, Some(n)) => build_boolean_geometry(n)?,
        (None, None) => unreachable!("clap requires one of --projective, --boolean"),
    };
    let file = GeometryFile::from_geometry(&g);
    let json = serde_json::to_value(&file).expect("geometry serializes");
    Ok(Outcome { verified: true, text: format!("{}\n", g.to_json()), json })
}

fn render_verdicts(text: &mut String, verdicts: &[CheckVerdict]) {
    for v in verdicts {
        let _ = writeln!(text, "  [{}] {} {}", if v.passed { "PASS" } else { "FAIL" }, v.id, v.name);
        if let Some(w) = &v.witness {
            let _ = writeln!(text, "         witness: {}", w.detail);
            if !w.subspaces.is_empty() {
                let sets: Vec<String> = w.subspaces.iter().map(|s| format!("{{{}}}", s.join(", "))).collect();
                let _ = writeln!(text, "         subspaces: {}", sets.join(" "));
            }
            if !w.points.is_empty() {
                let _ = writeln!(text, "         points: {}", w.points.join(", "));
            }
        }
    }
}

fn show<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(|| "unknown".to_string(), |v| v.to_string())
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn geometry_check(g: &IncidenceGeometry) -> CmdResult {
    let axioms = validate_axioms(g);
    let lemma1 = check_lemma1(g);
    let points = point_count_check(g);
    let census = subspace_census(g);
    let verified = axioms.all_passed() && lemma1.all_passed() && points.passed && census.passed;

    let mut text = String::new();
    let _ = writeln!(text, "axioms (order {}, dimension {}):", show(axioms.order), show(axioms.dimension));
    render_verdicts(&mut text, &axioms.axioms);
    let _ = writeln!(text, "lemma 1:");
    render_verdicts(&mut text, &lemma1.assertions);
    let _ = writeln!(
        text,
        "point count: {} (expected {}) {}",
        points.actual,
        show(points.expected.as_ref()),
        pass(points.passed)
    );
    let _ = writeln!(text, "census:");
    let _ = writeln!(text, "  {:>4} {:>10} {:>10} {:>10}", "dim", "actual", "expected", "recurrence");
    for row in &census.rows {
        let _ = writeln!(
            text,
            "  {:>4} {:>10} {:>10} {:>10} {}",
            row.dim,
            row.actual,
            row.expected,
            row.recurrence,
            pass(row.passed)
        );
    }
    if census.rows.is_empty() {
        let _ = writeln!(text, "  unavailable: {}", pass(census.passed));
    }
    let _ = writeln!(text, "verdict: {}", pass(verified));

    let json = json!({
        "axioms": serde_json::to_value(&axioms).expect("report serializes"),
        "lemma1": serde_json::to_value(&lemma1).expect("report serializes"),
        "point_count": serde_json::to_value(&points).expect("report serializes"),
        "census": serde_json::to_value(&census).expect("report serializes"),
        "passed": verified,
    });
    Ok(Outcome { verified, text, json })
}

fn collineations(g: &IncidenceGeometry) -> CmdResult {
    let count = collineation_order(g)?;
    Ok(Outcome {
        verified: true,
        text: format!("{count}\n"),
        json: json!({ "points": g.points().len(), "collineations": count.to_string() }),
    })
}

fn plane_check(p: &PlaneStructure) -> CmdResult {
    let report = validate_plane(p)?;
    let mut text = String::new();
    let _ = writeln!(text, "plane checks (order {}):", show(report.order));
    render_verdicts(&mut text, &report.checks);
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    let _ = writeln!(text, "uniform line size: {}", yes_no(report.uniform_line_size));
    let _ = writeln!(text, "every line has at least three points: {}", yes_no(report.lines_have_three_points));
    if report.degenerate {
        let _ = writeln!(text, "note: order 1, a degenerate plane");
    }
    let _ = writeln!(text, "verdict: {}", pass(report.valid));
    let json = serde_json::to_value(&report).expect("report serializes");
    Ok(Outcome { verified: report.valid, text, json })
}

fn plane_bruck_ryser(order: u64) -> CmdResult {
    let verdict = bruck_ryser(order)?;
    let r = order % 4;
    let squares = sum_of_two_squares(order);
    let mut text = match (verdict, squares) {
        (BruckRyser::Fails, _) => format!("FAILS ({order} ≡ {r} mod 4, not a sum of two squares)\n"),
        (BruckRyser::Passes, Some((a, b))) => {
            format!("PASSES ({order} ≡ {r} mod 4, {order} = {a}^2 + {b}^2; not excluded by this test)\n")
        }
        (BruckRyser::Passes, None) => unreachable!("a passing order is a sum of two squares"),
        (BruckRyser::NotApplicable, _) => format!("NOT APPLICABLE ({order} ≡ {r} mod 4)\n"),
    };
    let note = known_nonexistence(order);
    if let Some(note) = note {
        let _ = writeln!(text, "note: {note}");
    }
    let json = json!({
        "order": order,
        "residue_mod_4": r,
        "verdict": serde_json::to_value(verdict).expect("verdict serializes"),
        "squares": (verdict == BruckRyser::Passes).then_some(squares).flatten(),
        "note": note,
    });
    Ok(Outcome { verified: true, text, json })
}

fn paths_gf(m: u32, n: u32) -> CmdResult {
    let gf = area_generating_function(m, n)?;
    let expected = q_binomial_recurrence(m + n, i64::from(m));
    let verified = gf == expected;
    let text = if verified {
        format!("{}\nPASS: equals [{}, {m}]_q\n", gf.to_coeff_string(), m + n)
    } else {
        format!("{}\nFAIL: [{}, {m}]_q is {}\n", gf.to_coeff_string(), m + n, expected.to_coeff_string())
    };
    let json = json!({
        "m": m,
        "n": n,
        "coefficients": coeff_strings(&gf),
        "q_binomial": coeff_strings(&expected),
        "passed": verified,
    });
    Ok(Outcome { verified, text, json })
}

fn group_order(family: GroupFamily, n: u32, q: u64, brute: bool) -> CmdResult {
    let formula = formula_order(family, n, q)?;
    let mut text = format!("{family}_{n}({q}) = {} (formula)\n", formula.order);
    let mut json = json!({
        "family": family.to_string(),
        "n": n,
        "q": q,
        "order": formula.order.to_string(),
    });
    if family == GroupFamily::PSL {
        let simple = psl_is_simple(n, q);
        let _ = writeln!(text, "simple: {}", if simple { "yes" } else { "no" });
        json["simple"] = json!(simple);
    }
    let mut verified = true;
    if brute {
        let b = brute_force_order(family, n, q)?;
        verified = b.order == formula.order;
        let _ = writeln!(text, "brute force: {} ({})", b.order, if verified { "agrees" } else { "DISAGREES" });
        json["brute_force_order"] = json!(b.order.to_string());
        json["agrees"] = json!(verified);
    }
    Ok(Outcome { verified, text, json })
}

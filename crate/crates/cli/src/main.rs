//! `onsager`: JSON front end to the onsager library.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use onsager::chiralpotts::{
    build_chain, dg_check_exact, dg_check_numeric, fit_onsager_form, spectrum_sweep, Tolerances,
};
use onsager::combinat::{BernoulliCache, StirlingTable};
use onsager::ideals::{central_closure, ideal_member};
use onsager::quotients::{ad_spectrum_x0, build_quotient, efh_basis};
use onsager::reps::{build_rep, Spin};
use onsager::scalar::fmt_rational;
use onsager::verify::{run_all, run_criterion, Level, CRITERIA};
use onsager::{Error, LaurentPoly, OAElement, ReciprocalPoly, Scalar};

const SCHEMA: &str = "v1";

#[derive(Parser)]
#[command(name = "onsager", version, about = "Exact computations in the Onsager algebra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed ideals I_P for reciprocal P.
    #[command(subcommand)]
    Ideal(IdealCmd),
    /// Stirling and Bernoulli tables.
    #[command(subcommand)]
    Combinat(CombinatCmd),
    /// Finite quotients OA_{a,L}.
    #[command(subcommand)]
    Quotient(QuotientCmd),
    /// Evaluation representations.
    #[command(subcommand)]
    Rep(RepCmd),
    /// The superintegrable chiral Potts chain.
    #[command(subcommand)]
    Potts(PottsCmd),
    /// Run the acceptance checks.
    Verify {
        #[arg(long, value_enum, default_value_t = LevelArg::Fast)]
        level: LevelArg,
        /// Run a single criterion (1-12).
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=CRITERIA.len() as u64))]
        criterion: Option<u64>,
    },
}

#[derive(Subcommand)]
enum IdealCmd {
    /// Whether I_P is closed.
    IsClosed { poly: String },
    /// Whether the element stored in a JSON file lies in I_P.
    Member { element: PathBuf, poly: String },
    /// Z(I_P) as the pair of moduli (P̃ for p, P for q).
    Closure { poly: String },
}

#[derive(Subcommand)]
enum CombinatCmd {
    /// Stirling numbers of both kinds up to n.
    Stirling { n: usize },
    /// B_1 … B_j (positive convention) with the signed b_2 … b_2j.
    Bernoulli { j: usize },
}

#[derive(Subcommand)]
enum QuotientCmd {
    /// Structure constants of OA_{a,L}.
    Build {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long = "L", value_parser = clap::value_parser!(u64).range(1..))]
        order: u64,
    },
    /// The E/F/H basis of OA_{1,2l}.
    Efh {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        l: u64,
    },
    /// Eigen-decomposition of ad X0 on OA_{1,2l}.
    Adspec {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        l: u64,
    },
}

#[derive(Subcommand)]
enum RepCmd {
    /// Tensor product of evaluation representations.
    Build {
        /// Comma-separated nonzero points.
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        /// Comma-separated spins, e.g. 1/2,1.
        #[arg(long)]
        spins: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ChainArgs {
    #[arg(long = "N", value_parser = clap::value_parser!(u64).range(2..))]
    n: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    sites: u64,
}

#[derive(Subcommand)]
enum PottsCmd {
    /// Build H0, H1 and report their invariants.
    Build {
        #[command(flatten)]
        chain: ChainArgs,
    },
    /// Dolan-Grady check for A = -(2/N)H.
    Dg {
        #[command(flatten)]
        chain: ChainArgs,
        /// Also run the exact check (N = 2 or 4).
        #[arg(long)]
        exact: bool,
    },
    /// Fit the spectrum of H0 + k'H1 to the Onsager form.
    Fit {
        #[command(flatten)]
        chain: ChainArgs,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        kmin: f64,
        #[arg(long, default_value_t = 2.0, allow_hyphen_values = true)]
        kmax: f64,
        #[arg(long, default_value_t = 21, value_parser = clap::value_parser!(u64).range(2..))]
        samples: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Fast,
    Full,
}

/// A command result: the JSON payload plus whether its checks passed.
struct Outcome {
    body: Value,
    passed: bool,
}

impl Outcome {
    fn ok(body: Value) -> Self {
        Outcome { body, passed: true }
    }
}

fn reciprocal(s: &str) -> Result<ReciprocalPoly, Error> {
    ReciprocalPoly::from_poly(&s.parse::<LaurentPoly>()?)
}

fn ideal(cmd: IdealCmd) -> Result<Outcome, Error> {
    match cmd {
        IdealCmd::IsClosed { poly } => {
            let p = reciprocal(&poly)?;
            let z = central_closure(&p);
            Ok(Outcome::ok(json!({
                "poly": p.poly(),
                "closed": p.is_closed(),
                "mult_at_one": p.mult_at_one(),
                "mult_at_minus_one": p.mult_at_minus_one(),
                "p_modulus": z.p_modulus,
                "q_modulus": z.q_modulus,
            })))
        }
        IdealCmd::Member { element, poly } => {
            let text = fs::read_to_string(&element)
                .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", element.display())))?;
            let x: OAElement = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            let p = reciprocal(&poly)?;
            Ok(Outcome::ok(json!({
                "poly": p.poly(),
                "member": ideal_member(&x, &p),
                "closure_member": central_closure(&p).contains(&x),
            })))
        }
        IdealCmd::Closure { poly } => {
            let p = reciprocal(&poly)?;
            let z = central_closure(&p);
            Ok(Outcome::ok(json!({
                "poly": p.poly(),
                "closed": z.is_closed(),
                "p_modulus": z.p_modulus,
                "q_modulus": z.q_modulus,
            })))
        }
    }
}

fn rows<T: ToString>(m: &[Vec<T>]) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
}

fn combinat(cmd: CombinatCmd) -> Result<Outcome, Error> {
    match cmd {
        CombinatCmd::Stirling { n } => {
            let t = StirlingTable::build(n);
            Ok(Outcome::ok(json!({
                "n": n,
                "first_kind": rows(&t.first_kind),
                "second_kind": rows(&t.second_kind),
            })))
        }
        CombinatCmd::Bernoulli { j } => {
            let c = BernoulliCache::build(j);
            let positive: Vec<String> = (1..=j).map(|i| fmt_rational(&c.big_b[i])).collect();
            let signed: Vec<String> = (1..=j).map(|i| fmt_rational(&c.signed()[2 * i])).collect();
            Ok(Outcome::ok(json!({
                "j": j,
                "convention": "B_j = (-1)^(j-1) b_2j",
                "B": positive,
                "b_even": signed,
            })))
        }
    }
}

fn with_fields(mut v: Value, extra: Value) -> Value {
    if let (Value::Object(m), Value::Object(e)) = (&mut v, extra) {
        m.extend(e);
    }
    v
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types serialize to JSON")
}

fn vectors(vs: &[Vec<Scalar>]) -> Value {
    to_value(&vs)
}

fn quotient(cmd: QuotientCmd) -> Result<Outcome, Error> {
    match cmd {
        QuotientCmd::Build { a, order } => {
            let a: Scalar = a.parse()?;
            let q = build_quotient(&a, order as usize)?;
            Ok(Outcome::ok(with_fields(to_value(&q), json!({ "dim": q.dim() }))))
        }
        QuotientCmd::Efh { l } => {
            let b = efh_basis(l as usize)?;
            let ok = b.satisfies_relations();
            Ok(Outcome {
                body: json!({
                    "l": l,
                    "labels": b.labels,
                    "vectors": vectors(&b.vectors),
                    "source_basis": b.source.basis,
                    "algebra": b.algebra,
                    "relations_hold": ok,
                }),
                passed: ok,
            })
        }
        QuotientCmd::Adspec { l } => {
            let s = ad_spectrum_x0(l as usize)?;
            let (m0, mp, mm) = s.multiplicities();
            let spaces: Vec<Value> = s
                .eigenspaces
                .iter()
                .map(|(ev, basis)| json!({ "eigenvalue": ev, "dim": basis.len(), "basis": vectors(basis) }))
                .collect();
            Ok(Outcome {
                body: json!({
                    "l": l,
                    "multiplicities": { "0": m0, "4": mp, "-4": mm },
                    "diagonalizable": s.diagonalizable,
                    "eigenspaces": spaces,
                    "listed_vectors_ok": s.listed_vectors_ok && s.listed_vectors_span,
                    "zero_vectors_commute": s.zero_vectors_commute,
                    "holds": s.holds(),
                }),
                passed: s.holds(),
            })
        }
    }
}

fn split<T, E: std::fmt::Display>(s: &str, what: &str, f: impl Fn(&str) -> Result<T, E>) -> Result<Vec<T>, Error> {
    s.split(',')
        .map(|x| f(x.trim()).map_err(|e| Error::Parse(format!("{what} `{x}`: {e}"))))
        .collect()
}

fn write_json(path: &PathBuf, v: &Value) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(v).expect("JSON values serialize");
    fs::write(path, text + "\n").map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display())))
}

fn stamped(v: Value) -> Value {
    with_fields(json!({ "schema": SCHEMA }), v)
}

fn rep(cmd: RepCmd) -> Result<Outcome, Error> {
    let RepCmd::Build { points, spins, out } = cmd;
    let points: Vec<Scalar> = split(&points, "point", str::parse)?;
    let spins: Vec<Spin> = split(&spins, "spin", str::parse)?;
    let r = build_rep(&points, &spins)?;
    let summary = json!({
        "dim": r.dim(),
        "irreducible": onsager::reps::is_irreducible(&points)?,
        "kernel_polynomial": r.kernel_polynomial()?.poly(),
    });
    match out {
        Some(path) => {
            write_json(&path, &stamped(to_value(&r)))?;
            Ok(Outcome::ok(with_fields(summary, json!({ "out": path }))))
        }
        None => Ok(Outcome::ok(with_fields(summary, json!({ "rep": r })))),
    }
}

fn chain_dims(c: &ChainArgs) -> Result<(usize, usize), Error> {
    let n = usize::try_from(c.n).map_err(|_| Error::InvalidChain("N too large".into()))?;
    let sites = usize::try_from(c.sites).map_err(|_| Error::InvalidChain("too many sites".into()))?;
    Ok((n, sites))
}

fn potts(cmd: PottsCmd) -> Result<Outcome, Error> {
    let tol = Tolerances::from_env()?;
    match cmd {
        PottsCmd::Build { chain } => {
            let (n, sites) = chain_dims(&chain)?;
            let c = build_chain(n, sites)?;
            let (herm, clock, trans) = (c.hermitian_defect(), c.clock_relation_defect(), c.translation_defect());
            let passed = herm < tol.hermitian && clock < tol.hermitian && trans < tol.hermitian;
            Ok(Outcome {
                body: json!({
                    "N": n,
                    "sites": sites,
                    "dim": c.dim(),
                    "hermitian_defect": herm,
                    "clock_relation_defect": clock,
                    "translation_defect": trans,
                    "tolerance": tol.hermitian,
                    "passed": passed,
                }),
                passed,
            })
        }
        PottsCmd::Dg { chain, exact } => {
            let (n, sites) = chain_dims(&chain)?;
            let c = build_chain(n, sites)?;
            let r = dg_check_numeric(&c);
            let exact = if exact { Some(dg_check_exact(n, sites)?) } else { None };
            let passed = r.relative < tol.dg && exact != Some(false);
            Ok(Outcome {
                body: json!({
                    "N": n,
                    "sites": sites,
                    "absolute": r.absolute,
                    "relative": r.relative,
                    "tolerance": tol.dg,
                    "exact": exact,
                    "passed": passed,
                }),
                passed,
            })
        }
        PottsCmd::Fit { chain, kmin, kmax, samples, out } => {
            let (n, sites) = chain_dims(&chain)?;
            if !(kmin.is_finite() && kmax.is_finite() && kmin < kmax) {
                return Err(Error::Invalid(format!("need finite kmin < kmax, got {kmin} and {kmax}")));
            }
            let c = build_chain(n, sites)?;
            let m = samples as usize;
            let ks: Vec<f64> = (0..m).map(|i| kmin + (kmax - kmin) * i as f64 / (m - 1) as f64).collect();
            let sweep = spectrum_sweep(&c, &ks);
            let f = fit_onsager_form(&sweep, n, tol.fit)?;
            let body = with_fields(json!({ "N": n, "sites": sites, "samples": ks }), to_value(&f));
            if let Some(path) = &out {
                write_json(path, &stamped(body.clone()))?;
            }
            Ok(Outcome::ok(body))
        }
    }
}

fn verify(level: LevelArg, criterion: Option<u64>) -> Outcome {
    let level = match level {
        LevelArg::Fast => Level::Fast,
        LevelArg::Full => Level::Full,
    };
    let reports = match criterion {
        Some(id) => vec![run_criterion(id as usize, level)],
        None => run_all(level),
    };
    let passed = reports.iter().all(|r| r.passed);
    Outcome { body: json!({ "level": level, "passed": passed, "criteria": reports }), passed }
}

fn error_kind(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string()
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    match cli.command {
        Command::Ideal(c) => ideal(c),
        Command::Combinat(c) => combinat(c),
        Command::Quotient(c) => quotient(c),
        Command::Rep(c) => rep(c),
        Command::Potts(c) => potts(c),
        Command::Verify { level, criterion } => Ok(verify(level, criterion)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (body, code) = match run(cli) {
        Ok(o) => (o.body, if o.passed { 0 } else { 1 }),
        Err(e) => (json!({ "error": { "kind": error_kind(&e), "message": e.to_string() } }), 1),
    };
    let text = serde_json::to_string_pretty(&stamped(body)).expect("JSON values serialize");
    // a closed pipe downstream is not our failure
    let _ = writeln!(std::io::stdout(), "{text}");
    ExitCode::from(code)
}

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hyperspec::acceptance;
use hyperspec::beta::{dagger_g, f_iter, solve_beta_f3, solve_symmetric};
use hyperspec::classify::{admissibility, dagger_admissible, Admissibility};
use hyperspec::enumerate::verify_theorem;
use hyperspec::families::{build, certificate_for, FamilySpec};
use hyperspec::scalar::beta_star;
use hyperspec::spectral::{spectral_radius, SolverChoice, DEFAULT_TOL};
use hyperspec::{Error, Hypergraph};

#[derive(Parser)]
#[command(name = "hyperspec", version, about = "Spectral radius, labelings and structure of uniform hypergraphs")]
struct Cli {
    /// Suppress progress messages on stderr.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Auto,
    Power,
    Tree,
}

#[derive(Subcommand)]
enum Cmd {
    /// Spectral radius of a hypergraph read from a JSON file.
    Rho {
        file: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value = "auto")]
        method: Method,
    },
    /// Structural category and verdict against the threshold.
    Classify {
        file: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Certificate labeling of a catalogued family.
    Certify {
        name: String,
        params: Vec<usize>,
        /// Re-verify the certificate and fail if it does not hold.
        #[arg(long)]
        check: bool,
    },
    /// Build a named family (or a JSON family spec file).
    Family {
        name: String,
        params: Vec<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Scalar β-dynamics.
    Beta {
        #[command(subcommand)]
        op: BetaOp,
    },
    /// Enumerate connected hypergraphs and check the structural theorems.
    Enumerate {
        #[arg(short)]
        r: usize,
        #[arg(short)]
        m: usize,
        /// Write one CSV row per hypergraph.
        #[arg(long)]
        census: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Run the acceptance checks.
    VerifyPaper {
        /// Emit JSON instead of the table.
        #[arg(long)]
        json: bool,
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
}

#[derive(Subcommand)]
enum BetaOp {
    /// f_β^n(x).
    Iter { beta: f64, x: f64, n: usize },
    /// x in (fixed_lo, fixed_hi) with f_β^n(x) = 1 − x.
    Symmetric {
        n: usize,
        #[arg(long)]
        beta: Option<f64>,
    },
    /// β_{m,n,k} and the matching ρ for F_{m,n,k}.
    F3 { m: usize, n: usize, k: usize },
    /// Branching-edge product of the 4-dagger with arms i, j, k, l.
    DaggerG {
        i: usize,
        j: usize,
        k: usize,
        l: usize,
        #[arg(long)]
        beta: Option<f64>,
    },
}

/// Exit status plus what to say about it.
enum Fail {
    Usage(String),
    Verify(Value),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::NotConverged { lower, upper, iterations } => {
                Fail::Verify(json!({"error": "not-converged", "lower": lower, "upper": upper, "iterations": iterations}))
            }
            Error::Inconclusive { lower, upper, threshold } => {
                Fail::Verify(json!({"error": "inconclusive", "lower": lower, "upper": upper, "threshold": threshold}))
            }
            Error::NoCertificate(msg) => Fail::Verify(json!({"error": "no-certificate", "detail": msg})),
            other => Fail::Usage(other.to_string()),
        }
    }
}

type Outcome = Result<(Value, bool), Fail>;

fn default_tol(fallback: f64) -> Result<f64, Fail> {
    match std::env::var("HYPERSPEC_TOL") {
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
            _ => Err(Fail::Usage(format!("HYPERSPEC_TOL={s:?} is not a positive number"))),
        },
        Err(_) => Ok(fallback),
    }
}

fn tol_or(flag: Option<f64>, fallback: f64) -> Result<f64, Fail> {
    match flag {
        Some(t) if t > 0.0 && t.is_finite() => Ok(t),
        Some(t) => Err(Fail::Usage(format!("tolerance {t} must be positive"))),
        None => default_tol(fallback),
    }
}

fn read_hypergraph(path: &Path) -> Result<Hypergraph, Fail> {
    let text = fs::read_to_string(path).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))
}

fn family_spec(name: &str, params: &[usize]) -> Result<FamilySpec, Fail> {
    if name.ends_with(".json") {
        let text = fs::read_to_string(name).map_err(|e| Fail::Usage(format!("{name}: {e}")))?;
        return serde_json::from_str(&text).map_err(|e| Fail::Usage(format!("{name}: {e}")));
    }
    Ok(FamilySpec::from_name(name, params)?)
}

fn to_value<S: serde::Serialize>(x: &S) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn run(cli: &Cli) -> Outcome {
    let note = |msg: &str| {
        if !cli.quiet {
            eprintln!("{msg}");
        }
    };
    match &cli.cmd {
        Cmd::Rho { file, tol, method } => {
            let h = read_hypergraph(file)?;
            let tol = tol_or(*tol, DEFAULT_TOL)?;
            let choice = match method {
                Method::Auto => SolverChoice::Auto,
                Method::Power => SolverChoice::Power,
                Method::Tree => SolverChoice::Tree,
            };
            let res = spectral_radius::<f64>(&h, tol, choice)?;
            Ok((to_value(&res), true))
        }
        Cmd::Classify { file, tol } => {
            let h = read_hypergraph(file)?;
            let rep = admissibility(&h, tol_or(*tol, 1e-9)?)?;
            let ok = !matches!(rep.verdict, Admissibility::TheoremViolation | Admissibility::Inconclusive);
            Ok((to_value(&rep), ok))
        }
        Cmd::Certify { name, params, check } => {
            let spec = family_spec(name, params)?;
            let cert = certificate_for::<f64>(&spec)?;
            let mut out = json!({"family": to_value(&spec), "certificate": to_value(&cert)});
            let mut ok = true;
            if *check {
                let v = cert.verify(1e-9)?;
                ok = v.holds;
                out["check"] = to_value(&v);
            }
            Ok((out, ok))
        }
        Cmd::Family { name, params, output } => {
            let spec = family_spec(name, params)?;
            let built = build(&spec)?;
            let v = to_value(&built);
            if let Some(path) = output {
                let text = serde_json::to_string_pretty(&v).expect("serializable");
                fs::write(path, text + "\n").map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))?;
                note(&format!("wrote {}", path.display()));
                return Ok((Value::Null, true));
            }
            Ok((v, true))
        }
        Cmd::Beta { op } => beta(op),
        Cmd::Enumerate { r, m, census, jobs, tol } => {
            let tol = tol_or(*tol, 1e-9)?;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.unwrap_or(0))
                .build()
                .map_err(|e| Fail::Usage(e.to_string()))?;
            note(&format!("enumerating r={r}, up to {m} edges"));
            let (report, rows) = pool.install(|| verify_theorem(*r, *m, tol))?;
            if let Some(path) = census {
                let mut w = csv::Writer::from_path(path).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))?;
                for row in &rows {
                    w.serialize(row).map_err(|e| Fail::Usage(e.to_string()))?;
                }
                w.flush().map_err(|e| Fail::Usage(e.to_string()))?;
                note(&format!("wrote {} rows to {}", rows.len(), path.display()));
            }
            let ok = report.violations.is_empty();
            Ok((to_value(&report), ok))
        }
        Cmd::VerifyPaper { json, only } => {
            let ids: Vec<usize> = if only.is_empty() { (1..=11).collect() } else { only.clone() };
            if let Some(&bad) = ids.iter().find(|&&i| !(1..=11).contains(&i)) {
                return Err(Fail::Usage(format!("no criterion {bad}")));
            }
            let mut outcomes = Vec::new();
            for id in ids {
                let o = acceptance::run(id);
                if !*json {
                    emit(&o.to_string());
                }
                outcomes.push(o);
            }
            let ok = outcomes.iter().all(|o| o.passed);
            if *json {
                Ok((to_value(&outcomes), ok))
            } else {
                let passed = outcomes.iter().filter(|o| o.passed).count();
                emit(&format!("{passed}/{} criteria passed", outcomes.len()));
                Ok((Value::Null, ok))
            }
        }
    }
}

fn beta(op: &BetaOp) -> Outcome {
    let b0 = beta_star::<f64>();
    let value = match *op {
        BetaOp::Iter { beta, x, n } => json!({"beta": beta, "x": x, "n": n, "value": f_iter(beta, x, n)?}),
        BetaOp::Symmetric { n, beta } => {
            let beta = beta.unwrap_or(b0);
            json!({"beta": beta, "n": n, "value": solve_symmetric(beta, n)?})
        }
        BetaOp::F3 { m, n, k } => {
            let (b, rho) = solve_beta_f3::<f64>(m, n, k)?;
            json!({"m": m, "n": n, "k": k, "beta": b, "rho": rho})
        }
        BetaOp::DaggerG { i, j, k, l, beta } => {
            let beta = beta.unwrap_or(b0);
            let g = dagger_g(i, j, k, l, beta)?;
            let mut arms = [i, j, k, l];
            arms.sort_unstable();
            let verdict = if g >= beta { "admissible" } else { "inadmissible" };
            json!({
                "arms": arms,
                "beta": beta,
                "value": g,
                "margin": g - beta,
                "verdict": verdict,
                "listed": dagger_admissible(arms),
            })
        }
    };
    Ok((value, true))
}

/// Print to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((value, ok)) => {
            if !value.is_null() {
                emit(&serde_json::to_string_pretty(&value).expect("serializable"));
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Fail::Verify(v)) => {
            emit(&serde_json::to_string_pretty(&v).expect("serializable"));
            ExitCode::from(1)
        }
        Err(Fail::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

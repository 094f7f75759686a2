use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use planarbox::algebra::{Label, PAElement};
use planarbox::group::GroupAction;
use planarbox::par::Exec;
use planarbox::suites::{self, Suite, SuiteConfig};
use planarbox::tangle::{parse_expr, Colour};
use planarbox::{CrossedProduct, RadicalScalar};

const DEFAULT_HARD_LIMIT: usize = 5;
const HARD_LIMIT_VAR: &str = "PLANARBOX_KMAX_HARD_LIMIT";

#[derive(Parser)]
#[command(name = "planarbox", version, about = "Exact planar-algebra computations and verification suites")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print α(T) for a tangle expression together with its loop data.
    Alpha {
        /// An s-expression, or a path to a file holding one.
        expr: String,
        /// Base of α, normally [M:Q].
        #[arg(long, default_value_t = 2)]
        ratio: u64,
    },
    /// Run a verification suite and write a JSON report.
    Suite {
        /// base-algebra, crossed-product, biprojection, theorem-main, axioms,
        /// jones, trace, dual or all.
        name: String,
        /// Action spec (JSON). Defaults to Z3 with Z2 acting by inversion.
        #[arg(long)]
        action: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        kmax: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Report path; the report goes to stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Upper bound on basis input tuples per sampled tangle pair.
        #[arg(long, default_value_t = 64)]
        max_tuples: usize,
        /// Run without the thread pool.
        #[arg(long)]
        sequential: bool,
    },
    /// Multiply two basis elements with the closed-form product.
    Multiply {
        #[arg(long)]
        action: Option<PathBuf>,
        #[arg(long)]
        colour: usize,
        #[arg(long, value_enum, default_value_t = Basis::S)]
        basis: Basis,
        /// Comma-separated element indices, e.g. `1,2`.
        left: String,
        right: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Basis {
    /// S(ḡ) in P(G).
    S,
    /// Θ-orbit sums ΘS(ḡ) in P(G).
    Theta,
    /// U(ḡ) in P(G⋊Θ).
    U,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid tangle: {0}")]
    Tangle(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Compute(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) => 2,
            CliError::Tangle(_) => 3,
            CliError::Io(_) | CliError::Compute(_) => 1,
        }
    }
}

fn hard_limit() -> Result<usize, CliError> {
    match std::env::var(HARD_LIMIT_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{HARD_LIMIT_VAR} must be a non-negative integer, got '{v}'"))),
        Err(_) => Ok(DEFAULT_HARD_LIMIT),
    }
}

fn load_action(path: Option<&Path>) -> Result<GroupAction, CliError> {
    match path {
        None => Ok(GroupAction::cyclic_inversion(3)),
        Some(p) => {
            let src = std::fs::read_to_string(p)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", p.display())))?;
            GroupAction::from_json(&src).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))
        }
    }
}

fn parse_label(s: &str, order: usize) -> Result<Label, CliError> {
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|t| match t.trim().parse::<usize>() {
            Ok(x) if x < order => Ok(x),
            _ => Err(CliError::Usage(format!("bad group element '{t}' (group has order {order})"))),
        })
        .collect()
}

fn cmd_alpha(expr: &str, ratio: u64) -> Result<(), CliError> {
    if ratio == 0 {
        return Err(CliError::Usage("--ratio must be positive".into()));
    }
    let src = if Path::new(expr).is_file() { std::fs::read_to_string(expr)? } else { expr.to_string() };
    let e = parse_expr(&src).map_err(|e| CliError::Parse(e.to_string()))?;
    let t = e.realize().map_err(|e| CliError::Tangle(e.to_string()))?;
    let diag = t.validate();
    if !diag.is_ok() {
        return Err(CliError::Tangle(diag.to_string()));
    }
    println!("{}", t.alpha(ratio));
    println!("c = {}", t.c());
    println!("l = {}", t.loops_black());
    println!("outer colour = {}", t.outer());
    println!("disc colours = [{}]", t.discs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "));
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_suite(
    name: &str,
    action: Option<&Path>,
    kmax: usize,
    samples: usize,
    seed: u64,
    out: Option<&Path>,
    max_tuples: usize,
    sequential: bool,
) -> Result<bool, CliError> {
    let suite: Suite = name.parse().map_err(|e: suites::UnknownSuite| CliError::Usage(e.to_string()))?;
    let limit = hard_limit()?;
    if kmax > limit {
        return Err(CliError::Usage(format!("--kmax {kmax} exceeds the hard limit {limit} (set {HARD_LIMIT_VAR})")));
    }
    if samples == 0 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    let cp = CrossedProduct::new(load_action(action)?);
    let cfg = SuiteConfig {
        kmax,
        samples,
        seed,
        max_tuples: max_tuples.max(1),
        exec: if sequential { Exec::Sequential } else { Exec::Parallel },
    };
    let report = suites::run(suite, &cp, &cfg).map_err(|e| CliError::Compute(e.to_string()))?;
    let json = report.to_json();
    match out {
        Some(p) => std::fs::write(p, json + "\n")?,
        None => println!("{json}"),
    }
    for f in report.failures() {
        eprintln!("FAIL [{}] {}", f.suite, f.case);
    }
    eprintln!(
        "{suite}: {} passed, {} failed of {}",
        report.summary.passed, report.summary.failed, report.summary.total
    );
    Ok(report.all_passed())
}

fn show_coords(symbol: &str, coords: impl IntoIterator<Item = (Label, RadicalScalar)>) -> String {
    let terms: Vec<String> = coords
        .into_iter()
        .filter(|(_, a)| !a.is_zero())
        .map(|(g, a)| {
            let l = g.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
            if a.is_one() {
                format!("{symbol}({l})")
            } else {
                format!("{a}*{symbol}({l})")
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn cmd_multiply(action: Option<&Path>, k: usize, basis: Basis, left: &str, right: &str) -> Result<(), CliError> {
    if k == 0 {
        return Err(CliError::Usage("--colour must be at least 1".into()));
    }
    let cp = CrossedProduct::new(load_action(action)?);
    let c = Colour::new(k);
    let order = cp.g_order();
    let (g, h) = (parse_label(left, order)?, parse_label(right, order)?);
    if g.len() != k - 1 || h.len() != k - 1 {
        return Err(CliError::Usage(format!("colour {k} labels need {} entries", k - 1)));
    }
    let text = match basis {
        Basis::S => {
            let p = cp.base();
            let x = p.multiply(&PAElement::basis(c, g), &PAElement::basis(c, h)).map_err(|e| CliError::Compute(e.to_string()))?;
            x.to_string()
        }
        Basis::Theta => {
            let (g, h) = (cp.representative(&g), cp.representative(&h));
            let x = cp.theta_multiply_basis(c, &g, &h);
            show_coords("ΘS", cp.theta_coords(&x).map_err(|e| CliError::Compute(e.to_string()))?)
        }
        Basis::U => {
            let (g, h) = (cp.representative(&g), cp.representative(&h));
            show_coords("U", cp.u_coords(&cp.u_multiply_basis(c, &g, &h)))
        }
    };
    println!("{text}");
    Ok(())
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.cmd {
        Cmd::Alpha { expr, ratio } => cmd_alpha(&expr, ratio).map(|_| true),
        Cmd::Suite {
            name,
            action,
            kmax,
            samples,
            seed,
            out,
            max_tuples,
            sequential,
        } => cmd_suite(&name, action.as_deref(), kmax, samples, seed, out.as_deref(), max_tuples, sequential),
        Cmd::Multiply {
            action,
            colour,
            basis,
            left,
            right,
        } => cmd_multiply(action.as_deref(), colour, basis, &left, &right).map(|_| true),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lazard_witt::arith::{q_to_json_string, Op, QKey, QTable};
use lazard_witt::jets::{Expr, JetRing, TruncatedSeries};
use lazard_witt::verify::{run_suite, Suite, SuiteConfig};
use lazard_witt::{CoeffRing, Error, Integers, Params, Poly, PrimeField, Variable};
use serde_json::json;

const SUCCESS: u8 = 0;
const VERIFY_FAILED: u8 = 1;
const USAGE: u8 = 2;
const IO: u8 = 3;

/// Arithmetic polynomials of Lazardian Witt vectors, verification suites and
/// the universal residual perfection of truncated power series rings.
#[derive(Parser, Debug)]
#[command(name = "lwitt", version)]
struct Cli {
    /// Directory for the persistent Q table cache.
    #[arg(long, global = true, env = "LWITT_CACHE_DIR", default_value = ".lwitt-cache")]
    cache_dir: PathBuf,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the arithmetic polynomial Q_n for addition or multiplication.
    Qpoly(QpolyArgs),
    /// Run a seeded verification suite.
    Verify(VerifyArgs),
    /// Print the structure map into the universal residual perfection.
    Urp(UrpArgs),
}

#[derive(Args, Debug)]
struct RingArgs {
    #[arg(long, default_value_t = 2)]
    p: u64,
    /// Residue field size, a power of p; defaults to p.
    #[arg(long)]
    q: Option<u64>,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    t: i32,
}

impl RingArgs {
    fn q(&self) -> u64 {
        self.q.unwrap_or(self.p)
    }
}

#[derive(Args, Debug)]
struct QpolyArgs {
    #[command(flatten)]
    ring: RingArgs,
    #[arg(long, value_parser = parse_op)]
    op: Op,
    #[arg(long)]
    n: u32,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    suite: String,
    #[command(flatten)]
    ring: RingArgs,
    /// Largest m (windows up to m + 1, jets up to order m).
    #[arg(long, conflicts_with = "window")]
    m: Option<u32>,
    /// Largest Witt window, i.e. m + 1.
    #[arg(long)]
    window: Option<u32>,
    /// Largest level for Q tables and the universal jet identity.
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random inputs per checked law.
    #[arg(long)]
    samples: Option<usize>,
}

#[derive(Args, Debug)]
struct UrpArgs {
    /// Number of generators t1, …, tr of k.
    #[arg(long, short = 'r', default_value_t = 1)]
    generators: usize,
    /// Truncation order: A = k[π]/(π^{m+1}).
    #[arg(long)]
    m: u32,
    /// Work over F_p instead of the integers.
    #[arg(long)]
    p: Option<u64>,
    /// Additional elements of A, e.g. `t1*pi + t2`.
    elements: Vec<String>,
}

fn parse_op(s: &str) -> Result<Op, String> {
    s.parse::<Op>().map_err(|e| e.to_string())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io(_) | Error::Json(_) => IO,
        _ => USAGE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Qpoly(args) => qpoly(&cli, args),
        Command::Verify(args) => verify(&cli, args),
        Command::Urp(args) => urp(&cli, args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("lwitt: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn supported(p: u64, q: u64, n: u32) -> bool {
    match (p, q) {
        (2, 2) => n <= 4,
        _ => n <= 2,
    }
}

fn qpoly(cli: &Cli, args: &QpolyArgs) -> Result<u8, Error> {
    let (p, q, t) = (args.ring.p, args.ring.q(), args.ring.t);
    let key = QKey::new(args.op, args.n, p, q, t)?;
    if !supported(p, q, args.n) {
        eprintln!(
            "lwitt: warning: n = {} at p = {p}, q = {q} is beyond the tested range and may be slow",
            args.n
        );
    }
    if t < 0 {
        eprintln!("lwitt: warning: negative twists are experimental");
    }
    let table = QTable::with_cache_dir(&cli.cache_dir);
    let entry = table.get(key)?;
    match cli.format {
        Format::Text => println!("{}", entry.q.to_text()),
        Format::Latex => println!("{}", entry.q.to_latex()),
        Format::Json => print!("{}", q_to_json_string(&entry.q)),
    }
    Ok(SUCCESS)
}

fn verify(cli: &Cli, args: &VerifyArgs) -> Result<u8, Error> {
    let suite: Suite = args.suite.parse()?;
    let m = match (args.m, args.window) {
        (_, Some(0)) => return Err(Error::InvalidParams("window must be at least 1".into())),
        (_, Some(w)) => Some(w - 1),
        (m, None) => m,
    };
    let config = SuiteConfig {
        p: args.ring.p,
        q: args.ring.q(),
        t: args.ring.t,
        m,
        n: args.n,
        seed: args.seed,
        samples: args.samples,
    };
    let report = run_suite(suite, &config)?;
    match cli.format {
        Format::Json => println!("{}", report.to_json_string()),
        _ => {
            for c in &report.checks {
                println!("{suite}/{c}");
            }
            let failed = report.checks.iter().filter(|c| !c.passed).count();
            let summary = json!({
                "suite": suite.name(),
                "seed": args.seed,
                "checks": report.checks.len(),
                "failed": failed,
                "passed": report.passed,
            });
            println!("{summary}");
        }
    }
    Ok(if report.passed { SUCCESS } else { VERIFY_FAILED })
}

fn urp(cli: &Cli, args: &UrpArgs) -> Result<u8, Error> {
    match args.p {
        Some(p) => {
            Params::infinite(p, p, 0, 1)?;
            urp_over(cli, args, PrimeField::new(p), p)
        }
        None => urp_over(cli, args, Integers, 0),
    }
}

fn urp_over<R: CoeffRing>(cli: &Cli, args: &UrpArgs, ring: R, p: u64) -> Result<u8, Error> {
    if args.generators == 0 {
        return Err(Error::InvalidParams("at least one generator is needed".into()));
    }
    let names: Vec<Arc<str>> = (1..=args.generators)
        .map(|i| Arc::from(format!("t{i}").as_str()))
        .collect();
    let mut inputs: Vec<Expr> = names.iter().map(|g| Expr::Gen(g.clone())).collect();
    for s in &args.elements {
        let e = Expr::parse(s)?;
        if let Some(g) = e.generators().into_iter().find(|g| !names.contains(g)) {
            return Err(Error::Parse(format!("`{g}` is not one of t1..t{}", args.generators)));
        }
        inputs.push(e);
    }
    let jr = JetRing::new(ring.clone(), names, args.m);
    let mut rows = Vec::new();
    for e in &inputs {
        let poly = e.to_poly(&ring)?;
        if poly.variables().iter().any(|v| matches!(v, Variable::Omega(_))) {
            return Err(Error::Unsupported(format!("`{e}` is not an element of k[π]")));
        }
        let a = TruncatedSeries::from_poly(&poly, args.m)?;
        let image = jr.urp_structure_map(&a)?;
        rows.push((e, a, image));
    }
    match cli.format {
        Format::Json => {
            let to_json =
                |f: &Poly<R>| -> Result<serde_json::Value, Error> { Ok(serde_json::to_value(f.to_json(p)?)?) };
            let mut entries = Vec::new();
            for (e, a, image) in &rows {
                let jets = image.coeffs().iter().map(to_json).collect::<Result<Vec<_>, _>>()?;
                entries.push(json!({
                    "input": e.to_string(),
                    "element": a.to_string(),
                    "image": image.to_string(),
                    "coefficients": jets,
                }));
            }
            let base = if p == 0 { "Z".to_string() } else { format!("F_{p}") };
            let doc = json!({ "base": base, "m": args.m, "entries": entries });
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
        Format::Latex => {
            for (_, a, image) in &rows {
                let tex = |s: &TruncatedSeries<R>| {
                    let parts: Vec<String> = s
                        .coeffs()
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(j, c)| match j {
                            0 => c.to_latex(),
                            1 => format!("\\left({}\\right)\\pi", c.to_latex()),
                            _ => format!("\\left({}\\right)\\pi^{{{j}}}", c.to_latex()),
                        })
                        .collect();
                    if parts.is_empty() {
                        "0".to_string()
                    } else {
                        parts.join(" + ")
                    }
                };
                println!("{} \\mapsto {}", tex(a), tex(image));
            }
        }
        Format::Text => {
            for (_, a, image) in &rows {
                println!("{a} ↦ {image}");
            }
        }
    }
    Ok(SUCCESS)
}

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use secant_cli::batch::{self, Status};
use secant_cli::envelope::{Computation, EllRange, Payload};
use secant_cli::manifest::{self, parse_list};
use secant_cli::verify::{self, Suite};
use secant_cli::{compute, ResultEnvelope};
use secant_core::{
    validate_positivity, CohomologyTable, Points, Positivity, SecantEngine, SecantIndex, VarietySpec,
};

#[derive(Parser)]
#[command(name = "secant", version, about = "Hilbert polynomials of secant varieties")]
struct Cli {
    /// Worker threads for parallel work.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hilbert polynomial of a secant variety.
    Poly(PolyArgs),
    /// Dimension and degree only.
    Degree(PolyArgs),
    /// Raw interpolation nodes (ℓ, P(ℓ)).
    Nodes(PolyArgs),
    /// Cohomology table of S^ℓ of the tautological bundle, as CSV.
    Table(TableArgs),
    /// Run the self-verification suite.
    Verify(VerifyArgs),
    /// Run every computation listed in a manifest.
    Batch(BatchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Space {
    Curve,
    Pps,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct VarietyArgs {
    #[arg(long, value_enum)]
    space: Space,
    #[arg(long)]
    genus: Option<u32>,
    #[arg(long)]
    degree: Option<u32>,
    /// Comma-separated factor dimensions, e.g. 1,1.
    #[arg(long)]
    dims: Option<String>,
    /// Comma-separated multidegree, e.g. 4,4.
    #[arg(long)]
    degrees: Option<String>,
}

impl VarietyArgs {
    fn spec(&self) -> anyhow::Result<VarietySpec> {
        Ok(match self.space {
            Space::Curve => {
                let (Some(g), Some(d)) = (self.genus, self.degree) else {
                    bail!("--space curve needs --genus and --degree");
                };
                if self.dims.is_some() || self.degrees.is_some() {
                    bail!("--dims/--degrees only apply to --space pps");
                }
                VarietySpec::curve(g, d)?
            }
            Space::Pps => {
                let (Some(n), Some(d)) = (&self.dims, &self.degrees) else {
                    bail!("--space pps needs --dims and --degrees");
                };
                if self.genus.is_some() || self.degree.is_some() {
                    bail!("--genus/--degree only apply to --space curve");
                }
                VarietySpec::product(parse_list(n)?, parse_list(d)?)?
            }
        })
    }
}

#[derive(Args)]
struct PolyArgs {
    #[command(flatten)]
    variety: VarietyArgs,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    secant: u8,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Fail with exit code 2 if the embedding may not be positive enough.
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    variety: VarietyArgs,
    #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
    k: u8,
    /// Inclusive range A..B of positive twists.
    #[arg(long, default_value = "1..6")]
    ell: String,
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "default")]
    suite: Suite,
    /// Also recompute and compare every entry of this cache.
    #[arg(long, env = "SECANT_CACHE")]
    cache: Option<PathBuf>,
}

#[derive(Args)]
struct BatchArgs {
    manifest: PathBuf,
    #[arg(long, short, default_value = "secant-out")]
    out: PathBuf,
    #[arg(long, env = "SECANT_CACHE")]
    cache: Option<PathBuf>,
}

/// Failure with a specific exit code.
struct Exit(u8, String);

impl From<anyhow::Error> for Exit {
    fn from(e: anyhow::Error) -> Self {
        let code = match e.downcast_ref::<secant_core::Error>() {
            Some(secant_core::Error::Consistency(_)) => 3,
            _ => 1,
        };
        Exit(code, format!("{e:#}"))
    }
}

fn gate(p: &Positivity, strict: bool) -> Result<(), Exit> {
    if let Positivity::Warning { message, .. } = p {
        if strict {
            return Err(Exit(2, message.clone()));
        }
        eprintln!("warning: {message}");
    }
    Ok(())
}

fn secant_of(n: u8) -> SecantIndex {
    SecantIndex::try_from(n).expect("clap restricts the range")
}

fn poly_like(args: &PolyArgs, computation: fn(SecantIndex) -> Computation) -> Result<(), Exit> {
    let variety = args.variety.spec()?;
    let secant = secant_of(args.secant);
    gate(&validate_positivity(&variety, secant), args.strict)?;
    let computation = computation(secant);
    let engine = SecantEngine::new(variety);
    let env = compute(&engine, &computation).map_err(anyhow::Error::from)?;
    match args.format {
        Format::Json => print!("{}", env.to_json()),
        Format::Text => println!("{}", text(&engine, &env)?),
    }
    Ok(())
}

fn text(engine: &SecantEngine, env: &ResultEnvelope) -> Result<String, Exit> {
    Ok(match &env.payload {
        Payload::Polynomial { dimension, degree, .. } => {
            let p = engine
                .polynomial(env.computation.secant())
                .map_err(anyhow::Error::from)?;
            format!("dim {dimension}, degree {}, P(ℓ) = {}", degree.0, p.render())
        }
        Payload::Degree { dimension, degree, .. } => format!("dim {dimension}, degree {}", degree.0),
        Payload::Nodes { nodes } => {
            let mut s = String::from("ell,value");
            for n in nodes {
                s.push_str(&format!("\n{},{}", n.ell, n.value.0));
            }
            s
        }
        Payload::Table { .. } => unreachable!("tables are printed as CSV"),
    })
}

fn table(args: &TableArgs) -> Result<(), Exit> {
    let variety = args.variety.spec()?;
    let ell: EllRange = args.ell.parse().map_err(|e: String| Exit(1, e))?;
    let points = Points::try_from(args.k).map_err(anyhow::Error::from)?;
    gate(&validate_positivity(&variety, points.secant()), args.strict)?;
    let engine = SecantEngine::new(variety);
    let t = CohomologyTable::build(&engine, points, &ell.values()).map_err(anyhow::Error::from)?;
    t.check_entries().map_err(anyhow::Error::from)?;
    let mut out = String::from("i,ell,dim\n");
    for row in t.rows() {
        out.push_str(&format!("{},{},{}\n", row.i, row.ell, row.dim));
    }
    print!("{out}");
    Ok(())
}

fn run_verify(args: &VerifyArgs) -> Result<(), Exit> {
    let results = verify::run(args.suite, args.cache.as_deref());
    for r in &results {
        println!("{}", r.line());
    }
    match results.iter().find(|r| !r.passed()) {
        Some(r) => Err(Exit(3, r.line())),
        None => Ok(()),
    }
}

fn run_batch(args: &BatchArgs) -> Result<(), Exit> {
    let text = std::fs::read_to_string(&args.manifest)
        .with_context(|| format!("reading {}", args.manifest.display()))?;
    let m = manifest::parse(&text).with_context(|| format!("parsing {}", args.manifest.display()))?;
    let reports = batch::run(&m, &args.out, args.cache.as_deref())
        .with_context(|| format!("preparing {}", args.out.display()))?;
    let (mut computed, mut cached, mut failed) = (0, 0, 0);
    for r in &reports {
        let what = format!("{} {}", r.variety, r.computation.name());
        match &r.status {
            Status::Computed(p) => {
                computed += 1;
                println!("computed {what} -> {}", p.display());
            }
            Status::Cached(p) => {
                cached += 1;
                println!("cached {what} -> {}", p.display());
            }
            Status::Failed(e) => {
                failed += 1;
                println!("failed {what}: {e}");
            }
        }
    }
    println!("{computed} computed, {cached} from cache, {failed} failed");
    if failed > 0 {
        return Err(Exit(4, format!("{failed} of {} jobs failed", reports.len())));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let result = match &cli.command {
        Command::Poly(a) => poly_like(a, |s| match s {
            SecantIndex::First => Computation::Poly1,
            SecantIndex::Second => Computation::Poly2,
        }),
        Command::Degree(a) => poly_like(a, |secant| Computation::Degree { secant }),
        Command::Nodes(a) => poly_like(a, |secant| Computation::Nodes { secant }),
        Command::Table(a) => table(a),
        Command::Verify(a) => run_verify(a),
        Command::Batch(a) => run_batch(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Exit(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

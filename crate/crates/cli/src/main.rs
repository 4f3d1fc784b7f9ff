use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use isoray::catalog;
use isoray::group::{analyze_group, AnalysisOptions, GeneratorSet};
use isoray::json::{self as ijson, GroupJson, IsometryJson, LatticeJson};
use isoray::spectral::{char_poly, spectral_radius};
use isoray::Isometry;

mod render;

#[derive(Parser, Debug)]
#[command(name = "isoray", version, about = "Entropy and null-entropy group analysis for hyperbolic lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Target width of the certified spectral-radius bracket.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Maximum reduced word length explored in group analysis.
    #[arg(long, global = true, default_value_t = 6)]
    word_depth: usize,

    /// Upper bound on the size of the finite image group.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    closure_cap: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Spectral radius and entropy of a single isometry.
    Entropy {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        isometry: PathBuf,
    },
    /// Fixed ray, quotient descent and phi rank of a generated group.
    Analyze {
        #[arg(long)]
        group: PathBuf,
    },
    /// Emit a named lattice as JSON (U, A<n>, D<n>, E<n>, "(-1)" twists,
    /// K3, NS20:<N>, "+"-joined sums).
    Catalog { name: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Validated run settings.
#[derive(Clone, Copy, Debug)]
struct Config {
    tolerance: f64,
    word_depth: usize,
    closure_cap: usize,
    output_format: Format,
}

impl Config {
    fn from_cli(cli: &Cli) -> Result<Self> {
        if !(cli.tol.is_finite() && cli.tol > 0.0) {
            bail!("invalid configuration: --tol must be a positive real");
        }
        if cli.word_depth == 0 {
            bail!("invalid configuration: --word-depth must be at least 1");
        }
        if cli.closure_cap == 0 {
            bail!("invalid configuration: --closure-cap must be at least 1");
        }
        Ok(Config { tolerance: cli.tol, word_depth: cli.word_depth, closure_cap: cli.closure_cap, output_format: cli.format })
    }

    fn options(&self) -> AnalysisOptions {
        AnalysisOptions { word_depth: self.word_depth, closure_cap: self.closure_cap, tol: self.tolerance }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn cmd_entropy(lattice: &Path, isometry: &Path, cfg: &Config) -> Result<i32> {
    let lj: LatticeJson = ijson::parse(&read(lattice)?).with_context(|| format!("in {}", lattice.display()))?;
    let gj: IsometryJson = ijson::parse(&read(isometry)?).with_context(|| format!("in {}", isometry.display()))?;
    let l = Arc::new(lj.to_lattice()?);
    let g = Isometry::new(l, gj.matrix)?;
    let ev = spectral_radius(g.matrix(), cfg.tolerance)?;
    let poly = char_poly(g.matrix()).to_string();
    match cfg.output_format {
        Format::Text => {
            println!("delta={}, entropy={}, exact_zero={}", ev.delta_decimal(), ev.entropy_decimal(), ev.is_exactly_zero);
            println!("char_poly={poly}");
            println!("tol={}", ev.tol_decimal());
        }
        Format::Json => {
            let out = json!({
                "delta": ev.delta_decimal(),
                "entropy": ev.entropy_decimal(),
                "exact_zero": ev.is_exactly_zero,
                "char_poly": poly,
                "tol": ev.tol_decimal(),
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
    }
    Ok(0)
}

fn cmd_analyze(group: &Path, cfg: &Config) -> Result<i32> {
    let gj: GroupJson = ijson::parse(&read(group)?).with_context(|| format!("in {}", group.display()))?;
    let s = GeneratorSet::from_json(&gj)?;
    let report = analyze_group(&s, &cfg.options())?;
    match cfg.output_format {
        Format::Text => print!("{}", render::report_text(&report)),
        Format::Json => println!("{}", ijson::to_string_pretty(&report)),
    }
    Ok(report.exit_code())
}

fn cmd_catalog(name: &str) -> Result<i32> {
    let entry = catalog::lookup(name)?;
    println!("{}", ijson::to_string_pretty(&LatticeJson::from_lattice(&entry.lattice)));
    Ok(0)
}

fn run(cli: &Cli) -> Result<i32> {
    let cfg = Config::from_cli(cli)?;
    match &cli.command {
        Command::Entropy { lattice, isometry } => cmd_entropy(lattice, isometry, &cfg),
        Command::Analyze { group } => cmd_analyze(group, &cfg),
        Command::Catalog { name } => cmd_catalog(name),
    }
}

fn main() -> ExitCode {
    // Usage errors are input errors (exit 1); 2 is reserved for positive entropy.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

//! Command-line front end: evaluate cascades, sweep error bounds, search
//! frequency combinations, verify the built-in claims and evaluate
//! uniform retarder chains.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

mod commands;
mod config;
mod output;
mod parse;

use commands::chain::{default_chain, ChainConfig};
use commands::eval::{EvalConfig, Phases};
use commands::search::SearchConfig;
use commands::sweep::SweepConfig;
use commands::verify::{Section, VerifyConfig};
use config::FileConfig;

#[derive(Parser)]
#[command(
    name = "depol",
    version,
    about = "Rotating-waveplate depolarizer simulation and design search"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate one cascade: mean matrix, singular values, DOP figures
    Eval(EvalArgs),
    /// Sweep xi_max geometrically and fit the error-scaling slope
    Sweep(SweepArgs),
    /// Enumerate frequency combinations and report the quadratic set
    Search(SearchArgs),
    /// Run the built-in verification suite
    Verify(VerifyArgs),
    /// Evaluate uniform arccos(-1/3) retarder chains
    Chain(ChainArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Line-oriented `key = value` config file; flags override it
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Seed for all pseudo-random sampling
    #[arg(long, value_name = "N")]
    seed: Option<String>,
    /// Write CSV/report output to this path
    #[arg(long, value_name = "PATH")]
    out: Option<String>,
    /// Interpret angle-valued inputs (xi, zeta, xi-max, grid) as degrees
    #[arg(long)]
    degrees: bool,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Plate sequence, one letter per plate (h or q), e.g. hqq
    #[arg(long)]
    arrangement: Option<String>,
    /// Comma-separated integer drive frequencies, one per plate
    #[arg(long)]
    m: Option<String>,
    /// Comma-separated retardation errors, one per plate (default 0)
    #[arg(long)]
    xi: Option<String>,
    /// Comma-separated start phases, one per plate (default 0)
    #[arg(long, conflicts_with = "zeta_samples")]
    zeta: Option<String>,
    /// Worst-case over this many random phase tuples plus the zero tuple
    #[arg(long)]
    zeta_samples: Option<String>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Plate sequence, one letter per plate (h or q)
    #[arg(long)]
    arrangement: Option<String>,
    /// Comma-separated integer drive frequencies, one per plate
    #[arg(long)]
    m: Option<String>,
    /// Geometric xi_max grid as lo:hi:points
    #[arg(long)]
    grid: Option<String>,
    /// Random phase tuples per grid point (default 32)
    #[arg(long)]
    zeta_samples: Option<String>,
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Three-plate arrangement: hqq or qhq
    #[arg(long)]
    arrangement: Option<String>,
    /// Frequency bound |m_i| <= max_m (at most 12)
    #[arg(long)]
    max_m: Option<String>,
    /// Error box for the quadratic verdict (default 0.02)
    #[arg(long)]
    xi_max: Option<String>,
    /// Exit 1 unless every published row within the bound is quadratic
    #[arg(long)]
    expect_table1: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Error box for the table checks (default 0.02)
    #[arg(long)]
    xi_max: Option<String>,
    /// Comma-separated subset of sections: table1, halfharmonic,
    /// equivalence, phases, chain, minimal
    #[arg(long)]
    only: Option<String>,
    /// Override the quadratic slope acceptance band, as lo:hi
    #[arg(long)]
    slope_band: Option<String>,
}

#[derive(Args)]
struct ChainArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Comma-separated chain frequencies, e.g. 1,3,9
    #[arg(long, conflicts_with = "n")]
    m: Option<String>,
    /// Evaluate default chains (powers of three) for 1..=n plates
    #[arg(long)]
    n: Option<String>,
}

struct Common {
    seed: u64,
    out: Option<PathBuf>,
    degrees: bool,
}

fn resolve_common(args: &CommonArgs) -> Result<(FileConfig, Common), String> {
    let cfg = FileConfig::load(args.config.as_deref())?;
    let seed = match cfg.merge(args.seed.clone(), "seed") {
        Some(s) => parse::u64_value(&s, "--seed")?,
        None => 42,
    };
    let out = cfg.merge(args.out.clone(), "out").map(PathBuf::from);
    let degrees = cfg.merge_switch(args.degrees, "degrees")?;
    Ok((cfg, Common { seed, out, degrees }))
}

fn to_radians(values: Vec<f64>, degrees: bool) -> Vec<f64> {
    if degrees {
        values.into_iter().map(f64::to_radians).collect()
    } else {
        values
    }
}

fn required(value: Option<String>, flag: &str) -> Result<String, String> {
    value.ok_or_else(|| format!("missing required {flag} (flag or config key)"))
}

fn resolve_eval(args: EvalArgs) -> Result<EvalConfig, String> {
    let (cfg, common) = resolve_common(&args.common)?;
    let kinds = parse::plate_kinds(&required(
        cfg.merge(args.arrangement, "arrangement"),
        "--arrangement",
    )?)?;
    let m = parse::i32_list(&required(cfg.merge(args.m, "m"), "--m")?, "--m")?;
    let xi = match cfg.merge(args.xi, "xi") {
        Some(s) => to_radians(parse::f64_list(&s, "--xi")?, common.degrees),
        None => vec![0.0; kinds.len()],
    };
    // A phase flag silences both config keys, so flags override the file
    // as a pair.
    let (zeta, zeta_samples) = if args.zeta.is_some() || args.zeta_samples.is_some() {
        (args.zeta, args.zeta_samples)
    } else {
        (cfg.merge(None, "zeta"), cfg.merge(None, "zeta-samples"))
    };
    let phases = match (zeta, zeta_samples) {
        (Some(_), Some(_)) => return Err("--zeta and --zeta-samples are mutually exclusive".into()),
        (Some(list), None) => Phases::Explicit(to_radians(
            parse::f64_list(&list, "--zeta")?,
            common.degrees,
        )),
        (None, Some(n)) => {
            let n = parse::usize_value(&n, "--zeta-samples")?;
            if n == 0 {
                return Err("--zeta-samples: need at least one sample".into());
            }
            Phases::Sampled(n)
        }
        (None, None) => Phases::Explicit(vec![0.0; kinds.len()]),
    };
    Ok(EvalConfig {
        kinds,
        m,
        xi,
        phases,
        seed: common.seed,
        out: common.out,
    })
}

fn resolve_sweep(args: SweepArgs) -> Result<SweepConfig, String> {
    let (cfg, common) = resolve_common(&args.common)?;
    let kinds = parse::plate_kinds(&required(
        cfg.merge(args.arrangement, "arrangement"),
        "--arrangement",
    )?)?;
    let m = parse::i32_list(&required(cfg.merge(args.m, "m"), "--m")?, "--m")?;
    let mut grid = parse::grid(&required(cfg.merge(args.grid, "grid"), "--grid")?)?;
    if common.degrees {
        grid.lo = grid.lo.to_radians();
        grid.hi = grid.hi.to_radians();
    }
    let zeta_samples = match cfg.merge(args.zeta_samples, "zeta-samples") {
        Some(s) => parse::usize_value(&s, "--zeta-samples")?,
        None => 32,
    };
    if zeta_samples == 0 {
        return Err("--zeta-samples: need at least one sample".into());
    }
    Ok(SweepConfig {
        kinds,
        m,
        grid,
        zeta_samples,
        seed: common.seed,
        out: common.out,
    })
}

fn resolve_search(args: SearchArgs) -> Result<SearchConfig, String> {
    let (cfg, common) = resolve_common(&args.common)?;
    let arrangement = required(cfg.merge(args.arrangement, "arrangement"), "--arrangement")?
        .parse()
        .map_err(|e: String| e)?;
    let max_m = parse::i32_value(
        &required(cfg.merge(args.max_m, "max-m"), "--max-m")?,
        "--max-m",
    )?;
    let xi_max = match cfg.merge(args.xi_max, "xi-max") {
        Some(s) => {
            let v = parse::f64_value(&s, "--xi-max")?;
            if common.degrees {
                v.to_radians()
            } else {
                v
            }
        }
        None => 0.02,
    };
    let expect_table1 = cfg.merge_switch(args.expect_table1, "expect-table1")?;
    Ok(SearchConfig {
        arrangement,
        max_m,
        xi_max,
        expect_table1,
        seed: common.seed,
        out: common.out,
    })
}

fn resolve_verify(args: VerifyArgs) -> Result<VerifyConfig, String> {
    let (cfg, common) = resolve_common(&args.common)?;
    let xi_max = match cfg.merge(args.xi_max, "xi-max") {
        Some(s) => {
            let v = parse::f64_value(&s, "--xi-max")?;
            if common.degrees {
                v.to_radians()
            } else {
                v
            }
        }
        None => 0.02,
    };
    let only = match cfg.merge(args.only, "only") {
        Some(list) => Some(
            list.split(',')
                .map(Section::parse)
                .collect::<Result<Vec<_>, _>>()?,
        ),
        None => None,
    };
    let slope_band = match cfg.merge(args.slope_band, "slope-band") {
        Some(s) => Some(parse::band(&s)?),
        None => None,
    };
    Ok(VerifyConfig {
        xi_max,
        only,
        slope_band,
        seed: common.seed,
        out: common.out,
    })
}

fn resolve_chain(args: ChainArgs) -> Result<ChainConfig, String> {
    let (cfg, common) = resolve_common(&args.common)?;
    let (m, n) = if args.m.is_some() || args.n.is_some() {
        (args.m, args.n)
    } else {
        (cfg.merge(None, "m"), cfg.merge(None, "n"))
    };
    let m_lists = match (m, n) {
        (Some(_), Some(_)) => return Err("--m and --n are mutually exclusive".into()),
        (Some(list), None) => {
            let m = parse::i32_list(&list, "--m")?;
            if m.is_empty() {
                return Err("--m: need at least one frequency".into());
            }
            vec![m]
        }
        (None, Some(n)) => {
            let n = parse::usize_value(&n, "--n")?;
            if n == 0 {
                return Err("--n: need at least one plate".into());
            }
            if n > 10 {
                return Err("--n: collision search supports at most 10 plates".into());
            }
            (1..=n).map(default_chain).collect()
        }
        (None, None) => return Err("missing --m or --n".into()),
    };
    Ok(ChainConfig {
        m_lists,
        out: common.out,
    })
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Cmd::Eval(args) => commands::eval::run(resolve_eval(args)?),
        Cmd::Sweep(args) => commands::sweep::run(resolve_sweep(args)?),
        Cmd::Search(args) => commands::search::run(resolve_search(args)?),
        Cmd::Verify(args) => commands::verify::run(resolve_verify(args)?),
        Cmd::Chain(args) => commands::chain::run(resolve_chain(args)?),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

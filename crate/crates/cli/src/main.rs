//! `wavephy`: run BER sweeps and inspect pilot patterns.

mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};

use wavephy::channel::ChannelKind;
use wavephy::params::{max_unestimated_run, spectral_efficiency_pilots, EstimatorKind, McsScheme};
use wavephy::{FftGeometry, PilotScheme};

#[derive(Parser)]
#[command(name = "wavephy", version, about = "802.11p OFDM BER simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a BER-vs-SNR sweep and write CSV, gnuplot data and a manifest.
    Sweep(SweepArgs),
    /// Print max non-estimated run and pilot overhead per pilot scheme.
    Patterns(PatternArgs),
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long)]
    config: PathBuf,
    /// Output directory.
    #[arg(long, env = "WAVEPHY_OUT", default_value = "wavephy-out")]
    out: PathBuf,
    /// Payload bits per point.
    #[arg(long)]
    bits: Option<u64>,
    /// Comma-separated SNR points in dB.
    #[arg(long, value_delimiter = ',', conflicts_with = "snr")]
    snr_list: Option<Vec<f64>>,
    /// A single SNR point in dB.
    #[arg(long)]
    snr: Option<f64>,
    /// Comma-separated pilot schemes.
    #[arg(long, value_delimiter = ',')]
    scheme: Option<Vec<String>>,
    /// Comma-separated estimators (LS, MMSE, IDEAL).
    #[arg(long, value_delimiter = ',')]
    estimator: Option<Vec<String>>,
    #[arg(long)]
    seed: Option<u64>,
    /// AWGN or RayleighTdl.
    #[arg(long)]
    channel: Option<String>,
    /// Comma-separated MCS labels such as QPSK-1/2.
    #[arg(long, value_delimiter = ',')]
    mcs: Option<Vec<String>>,
}

#[derive(Args, Debug)]
struct PatternArgs {
    /// Config whose custom pattern and geometry are reported too.
    #[arg(long)]
    config: Option<PathBuf>,
}

/// Config problems exit 1, simulation failures exit 2.
enum Failure {
    Config(anyhow::Error),
    Simulation(anyhow::Error),
}

fn list_string<T: std::fmt::Display>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn apply_overrides(
    args: &SweepArgs,
    loaded: &mut config::Loaded,
) -> Result<Vec<(String, String)>> {
    let mut applied = Vec::new();
    let plan = &mut loaded.plan;
    if let Some(bits) = args.bits {
        plan.bits_per_point = bits;
        plan.base.total_bits = bits;
        applied.push(("bits".into(), bits.to_string()));
    }
    if let Some(list) = &args.snr_list {
        plan.snr_points_db = list.clone();
        applied.push(("snr_list".into(), list_string(list)));
    }
    if let Some(snr) = args.snr {
        plan.snr_points_db = vec![snr];
        applied.push(("snr".into(), snr.to_string()));
    }
    if let Some(seed) = args.seed {
        plan.base.rng_seed = seed;
        applied.push(("seed".into(), seed.to_string()));
    }
    if let Some(ch) = &args.channel {
        let kind: ChannelKind = ch.parse()?;
        let pdp = plan.base.channel.pdp.clone();
        let mut spec = match kind {
            ChannelKind::Awgn => wavephy::ChannelSpec::awgn(0.0),
            ChannelKind::RayleighTdl => wavephy::ChannelSpec::rayleigh(0.0, pdp),
        };
        spec.speed_kmh = plan.base.channel.speed_kmh;
        spec.carrier_hz = plan.base.channel.carrier_hz;
        plan.base.channel = spec;
        applied.push(("channel".into(), kind.name().into()));
    }
    if let Some(mcs) = &args.mcs {
        let list = mcs
            .iter()
            .map(|m| m.parse::<McsScheme>())
            .collect::<wavephy::Result<Vec<_>>>()?;
        plan.mcs_list = list;
        applied.push(("mcs".into(), mcs.join(",")));
    }
    if args.scheme.is_some() || args.estimator.is_some() {
        let pilots = args.scheme.clone().unwrap_or_else(|| loaded.pilot_names.clone());
        let estimators = match &args.estimator {
            Some(e) => e
                .iter()
                .map(|s| s.parse::<EstimatorKind>())
                .collect::<wavephy::Result<Vec<_>>>()?,
            None => loaded.estimators.clone(),
        };
        if let Some(s) = &args.scheme {
            applied.push(("scheme".into(), s.join(",")));
        }
        if let Some(e) = &args.estimator {
            applied.push(("estimator".into(), e.join(",")));
        }
        loaded.set_schemes(pilots, estimators)?;
    }
    Ok(applied)
}

fn cmd_sweep(args: &SweepArgs) -> std::result::Result<(), Failure> {
    let mut loaded = config::load(&args.config).map_err(Failure::Config)?;
    let overrides = apply_overrides(args, &mut loaded).map_err(Failure::Config)?;
    loaded.plan.validate().map_err(|e| Failure::Config(e.into()))?;

    let records = wavephy::run_sweep(&loaded.plan).map_err(|e| Failure::Simulation(e.into()))?;
    let failed: Vec<_> = records.iter().filter(|r| r.error.is_some()).collect();
    for r in &failed {
        eprintln!(
            "point {} dB {} {} {}: {}",
            r.snr_db,
            r.modulation,
            r.pilot_scheme,
            r.estimator,
            r.error.as_deref().unwrap_or_default()
        );
    }
    let run = output::RunInfo {
        config: args.config.clone(),
        out: args.out.clone(),
        overrides,
    };
    output::write_all(&run, &records).map_err(Failure::Simulation)?;
    if !failed.is_empty() {
        return Err(Failure::Simulation(anyhow::anyhow!(
            "{} of {} points failed",
            failed.len(),
            records.len()
        )));
    }
    Ok(())
}

fn cmd_patterns(args: &PatternArgs) -> std::result::Result<(), Failure> {
    let (geometry, custom) = match &args.config {
        Some(path) => {
            let l = config::load(path).map_err(Failure::Config)?;
            (l.plan.base.geometry, l.custom)
        }
        None => (FftGeometry::default(), None),
    };
    let table = || -> wavephy::Result<Vec<(PilotScheme, usize)>> {
        let mut rows = vec![
            PilotScheme::standard4(),
            PilotScheme::regular4(&geometry)?,
            PilotScheme::extended6(),
        ];
        if let Some(c) = &custom {
            rows.push(PilotScheme::custom(c.clone())?);
        }
        rows.into_iter()
            .map(|p| max_unestimated_run(&geometry, &p).map(|r| (p, r)))
            .collect()
    };
    let rows = table().map_err(|e| Failure::Config(e.into()))?;
    println!("{:<10} {:<28} {:>7} {:>7} {:>8}", "scheme", "positions", "max_run", "sef", "reported");
    for (p, run) in rows {
        let sef = spectral_efficiency_pilots(&p, &geometry);
        println!(
            "{:<10} {:<28} {:>7} {:>7.4} {:>8.3}",
            p.kind.name(),
            format!("[{}]", list_string(p.positions())),
            run,
            sef.value(),
            sef.reported()
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match &cli.command {
        Command::Sweep(a) => cmd_sweep(a),
        Command::Patterns(a) => cmd_patterns(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Simulation(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

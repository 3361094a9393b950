//! TOML configuration for sweeps.
//!
//! Every key is optional; an empty file gives the reference scenario
//! (4e6 bits per point, 50 km/h, AWGN, MMSE, all eight MCS, three pilot
//! schemes, 0 to 30 dB in 2 dB steps).
//!
//! ```toml
//! [geometry]
//! fft_size = 64
//! cp_len = 16
//! subcarrier_spacing_hz = 156250.0
//! used = [-26, -25, ...]        # default: -26..=26 without DC
//!
//! [pilots]
//! schemes = ["Standard4", "Regular4", "Extended6"]   # or "Custom"
//! custom = [-20, -7, 7, 20]     # positions for "Custom"
//!
//! [mcs]
//! list = ["BPSK-1/2", "16QAM-3/4"]   # default: all eight
//! coding = "convolutional"      # or "uncoded"
//! scrambler_seed = 93
//!
//! [channel]
//! kind = "AWGN"                 # or "RayleighTdl"
//! speed_kmh = 50.0
//! carrier_hz = 5.9e9
//! pdp = [[0, 0.5], [1, 0.25], [2, 0.25]]   # (delay in samples, power)
//!
//! [estimator]
//! kinds = ["MMSE"]              # any of "LS", "MMSE", "IDEAL"
//! interpolation = "linear"      # or "dft"
//! source = "comb"               # or "lts"
//! loading = 1e-6                # diagonal loading, off when absent
//! max_condition = 1e12
//!
//! [sim]
//! bits_per_point = 4000000
//! frame_bits = 800
//! seed = 1
//! snr_db = [0, 5, 10]
//! ```

use std::path::Path;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use serde::Deserialize;

use wavephy::channel::{default_pdp, ChannelKind, ChannelSpec, Tap};
use wavephy::params::{Coding, EstimateSource, EstimatorKind, FftGeometry, Interpolation, McsScheme};
use wavephy::params::{PilotScheme, PilotSchemeKind};
use wavephy::sim::default_snr_points;
use wavephy::{PhyConfig, SweepPlan};

pub const REFERENCE_BITS: u64 = 4_000_000;

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawConfig {
    geometry: RawGeometry,
    pilots: RawPilots,
    mcs: RawMcs,
    channel: RawChannel,
    estimator: RawEstimator,
    sim: RawSim,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawGeometry {
    fft_size: Option<usize>,
    cp_len: Option<usize>,
    subcarrier_spacing_hz: Option<f64>,
    used: Option<Vec<i32>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawPilots {
    schemes: Option<Vec<String>>,
    custom: Option<Vec<i32>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawMcs {
    list: Option<Vec<String>>,
    coding: Option<String>,
    scrambler_seed: Option<u8>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawChannel {
    kind: Option<String>,
    speed_kmh: Option<f64>,
    carrier_hz: Option<f64>,
    pdp: Option<Vec<(usize, f64)>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawEstimator {
    kinds: Option<Vec<String>>,
    interpolation: Option<String>,
    source: Option<String>,
    loading: Option<f64>,
    max_condition: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct RawSim {
    bits_per_point: Option<u64>,
    frame_bits: Option<usize>,
    seed: Option<u64>,
    snr_db: Option<Vec<f64>>,
}

/// A loaded sweep together with the custom pilot positions, if any.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub plan: SweepPlan,
    pub pilot_names: Vec<String>,
    pub estimators: Vec<EstimatorKind>,
    pub custom: Option<Vec<i32>>,
}

fn parse_list<T: FromStr>(items: &[String], what: &str) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    items
        .iter()
        .map(|s| s.parse::<T>().map_err(|e| anyhow::anyhow!("bad {what} {s:?}: {e}")))
        .collect()
}

pub fn pilot_scheme(name: &str, geometry: &FftGeometry, custom: Option<&[i32]>) -> Result<PilotScheme> {
    let kind: PilotSchemeKind = name.parse().map_err(|e| anyhow::anyhow!("{e}"))?;
    Ok(match kind {
        PilotSchemeKind::Standard4 => PilotScheme::standard4(),
        PilotSchemeKind::Regular4 => PilotScheme::regular4(geometry)?,
        PilotSchemeKind::Extended6 => PilotScheme::extended6(),
        PilotSchemeKind::Custom => match custom {
            Some(p) => PilotScheme::custom(p.to_vec())?,
            None => bail!("scheme Custom needs [pilots] custom = [...]"),
        },
    })
}

impl Loaded {
    /// Rebuilds the (scheme, estimator) pairs after the lists changed.
    pub fn set_schemes(&mut self, pilots: Vec<String>, estimators: Vec<EstimatorKind>) -> Result<()> {
        let geometry = self.plan.base.geometry.clone();
        let mut schemes = Vec::new();
        for name in &pilots {
            let scheme = pilot_scheme(name, &geometry, self.custom.as_deref())?;
            for &e in &estimators {
                schemes.push((scheme.clone(), e));
            }
        }
        self.plan.schemes = schemes;
        self.pilot_names = pilots;
        self.estimators = estimators;
        Ok(())
    }
}

pub fn parse(text: &str) -> Result<Loaded> {
    let raw: RawConfig = toml::from_str(text).context("invalid config")?;
    let mut base = PhyConfig::default();

    let g = &raw.geometry;
    let mut geometry = FftGeometry::default();
    if let Some(n) = g.fft_size {
        geometry.fft_size = n;
    }
    if let Some(cp) = g.cp_len {
        geometry.cp_len = cp;
    }
    if let Some(df) = g.subcarrier_spacing_hz {
        geometry.subcarrier_spacing_hz = df;
    }
    if let Some(used) = &g.used {
        geometry.used = used.clone();
    }
    geometry.validate()?;
    base.geometry = geometry;

    let kind = match &raw.channel.kind {
        Some(k) => k.parse::<ChannelKind>()?,
        None => ChannelKind::Awgn,
    };
    let pdp = match &raw.channel.pdp {
        Some(p) => p.iter().map(|&(delay, power)| Tap { delay, power }).collect(),
        None => default_pdp(),
    };
    base.channel = match kind {
        ChannelKind::Awgn => ChannelSpec::awgn(0.0),
        ChannelKind::RayleighTdl => ChannelSpec::rayleigh(0.0, pdp),
    };
    if let Some(v) = raw.channel.speed_kmh {
        base.channel.speed_kmh = v;
    }
    if let Some(fc) = raw.channel.carrier_hz {
        base.channel.carrier_hz = fc;
    }

    if let Some(c) = &raw.mcs.coding {
        base.coding = c.parse::<Coding>()?;
    }
    if let Some(s) = raw.mcs.scrambler_seed {
        base.scrambler_seed = s;
    }
    let mcs_list = match &raw.mcs.list {
        Some(l) => parse_list::<McsScheme>(l, "MCS")?,
        None => McsScheme::all(),
    };
    if let Some(mcs) = mcs_list.first() {
        base.mcs = *mcs;
    }

    let e = &raw.estimator;
    if let Some(i) = &e.interpolation {
        base.interpolation = i.parse::<Interpolation>()?;
    }
    if let Some(s) = &e.source {
        base.source = s.parse::<EstimateSource>()?;
    }
    base.mmse_loading = e.loading;
    if let Some(c) = e.max_condition {
        base.max_condition = c;
    }
    let estimators = match &e.kinds {
        Some(k) => parse_list::<EstimatorKind>(k, "estimator")?,
        None => vec![EstimatorKind::Mmse],
    };

    let s = &raw.sim;
    base.total_bits = s.bits_per_point.unwrap_or(REFERENCE_BITS);
    if let Some(f) = s.frame_bits {
        base.frame_bits = f;
    }
    if let Some(seed) = s.seed {
        base.rng_seed = seed;
    }

    let pilot_names = raw
        .pilots
        .schemes
        .clone()
        .unwrap_or_else(|| vec!["Standard4".into(), "Regular4".into(), "Extended6".into()]);

    let mut loaded = Loaded {
        plan: SweepPlan {
            bits_per_point: base.total_bits,
            snr_points_db: s.snr_db.clone().unwrap_or_else(default_snr_points),
            schemes: Vec::new(),
            mcs_list,
            base,
        },
        pilot_names: Vec::new(),
        estimators: Vec::new(),
        custom: raw.pilots.custom.clone(),
    };
    loaded.set_schemes(pilot_names, estimators)?;
    Ok(loaded)
}

pub fn load(path: &Path) -> Result<Loaded> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read config {}", path.display()))?;
    parse(&text).with_context(|| format!("in {}", path.display()))
}

//! Monte Carlo BER engine: one end-to-end link per configuration, frames
//! with block fading, and parallel SNR sweeps with deterministic output.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bitpipe::FrameCoder;
use crate::channel::{self, ChannelKind, ChannelRealization};
use crate::error::{Error, Result};
use crate::estimator::{
    equalize, lts_estimate, ls_estimate, ChannelEstimate, Interpolator, MmseContext, MmseSmoother,
};
use crate::modem::{demap_hard, map_bits};
use crate::ofdm::{assemble_grid, gen_preamble, OfdmGrid, OfdmTransform, PreambleSpec, SubcarrierLayout, TimeFrame};
use crate::params::{
    max_unestimated_run, ratio_f64, spectral_efficiency_pilots, CodeRate, Coding, EstimateSource,
    EstimatorKind, McsScheme, Modulation, PhyConfig, PilotScheme,
};
use crate::scalar::{Cpx, Real};

/// Result of one simulated operating point.
#[derive(Debug, Clone, PartialEq)]
pub struct BerRecord {
    pub snr_db: f64,
    pub ebn0_db: f64,
    pub modulation: Modulation,
    /// `None` when channel coding is bypassed.
    pub code_rate: Option<CodeRate>,
    pub pilot_scheme: String,
    pub estimator: EstimatorKind,
    pub channel: ChannelKind,
    pub bits: u64,
    pub bit_errors: u64,
    pub ber: f64,
    pub seed: u64,
    pub max_run: usize,
    pub sef: f64,
    pub error: Option<String>,
}

impl BerRecord {
    fn header(config: &PhyConfig, snr_db: f64) -> Self {
        let k = config.mcs.modulation().bits_per_symbol() as f64;
        let rate = match config.coding {
            Coding::Convolutional => ratio_f64(config.mcs.code_rate().ratio()),
            Coding::Uncoded => 1.0,
        };
        Self {
            snr_db,
            ebn0_db: snr_db - 10.0 * (k * rate).log10(),
            modulation: config.mcs.modulation(),
            code_rate: match config.coding {
                Coding::Convolutional => Some(config.mcs.code_rate()),
                Coding::Uncoded => None,
            },
            pilot_scheme: config.pilots.kind.name().to_string(),
            estimator: config.estimator,
            channel: config.channel.kind,
            bits: 0,
            bit_errors: 0,
            ber: 0.0,
            seed: config.rng_seed,
            max_run: max_unestimated_run(&config.geometry, &config.pilots).unwrap_or(0),
            sef: spectral_efficiency_pilots(&config.pilots, &config.geometry).value(),
            error: None,
        }
    }
}

enum Estimation<T: Real> {
    Ideal,
    Comb {
        smoother: Option<MmseSmoother<T>>,
        interpolator: Interpolator<T>,
    },
    Lts {
        smoother: Option<MmseSmoother<T>>,
    },
}

/// Transmitter, channel and receiver for one configuration, with every
/// per-configuration precomputation done once.
pub struct Link<T: Real> {
    config: PhyConfig,
    coder: FrameCoder,
    layout: SubcarrierLayout<T>,
    transform: OfdmTransform<T>,
    preamble: Vec<Cpx<T>>,
    long_start: usize,
    long_ref: Vec<Cpx<T>>,
    estimation: Estimation<T>,
}

impl<T: Real> Link<T> {
    pub fn new(config: &PhyConfig) -> Result<Self> {
        config.validate()?;
        let geometry = &config.geometry;
        let coder = FrameCoder::new(config)?;
        let layout = SubcarrierLayout::new(geometry, &config.pilots)?;
        let transform = OfdmTransform::new(geometry.fft_size);
        let spec = PreambleSpec::standard(geometry)?;
        let preamble = gen_preamble(&spec, &transform);
        let sigma2 = config.channel.noise_variance();
        let mmse = |at: &[i32], sigma2: f64| -> Result<Option<MmseSmoother<T>>> {
            if config.estimator != EstimatorKind::Mmse {
                return Ok(None);
            }
            let ctx = MmseContext::from_pdp(&config.channel.prior_pdp(), geometry.fft_size, T::lit(sigma2))?
                .with_loading(config.mmse_loading.map(T::lit))
                .with_max_condition(config.max_condition);
            MmseSmoother::new(&ctx, at).map(Some)
        };
        let estimation = match (config.estimator, config.source) {
            (EstimatorKind::Ideal, _) => Estimation::Ideal,
            (_, EstimateSource::CombPilots) => Estimation::Comb {
                smoother: mmse(layout.pilots(), sigma2)?,
                interpolator: Interpolator::new(
                    config.interpolation,
                    layout.pilots(),
                    layout.data(),
                    geometry,
                )?,
            },
            // two long symbols averaged: half the noise
            (_, EstimateSource::LtsBlock) => Estimation::Lts {
                smoother: mmse(&geometry.used, sigma2 / 2.0)?,
            },
        };
        Ok(Self {
            config: config.clone(),
            coder,
            layout,
            transform,
            long_start: spec.long_start(),
            long_ref: spec.long.clone(),
            preamble,
            estimation,
        })
    }

    pub fn config(&self) -> &PhyConfig {
        &self.config
    }

    /// Sends one frame and returns the decoded payload.
    pub fn run_frame<R: Rng + ?Sized>(&self, payload: &[u8], rng: &mut R) -> Result<Vec<u8>> {
        let m = self.config.mcs.modulation();
        let coded = self.coder.encode(payload)?;
        let symbols = map_bits::<T>(&coded.bits, m)?;
        let n_data = self.layout.data().len();
        let grids = symbols
            .chunks(n_data)
            .map(|c| assemble_grid(c, &self.layout))
            .collect::<Result<Vec<_>>>()?;
        let frame = TimeFrame::build(
            &self.preamble,
            self.long_start,
            &grids,
            &self.transform,
            self.config.geometry.cp_len,
        )?;
        let (rx, real) = channel::apply(&frame.samples, &self.config.channel, self.transform.size(), rng);
        let rx_grids = frame.demodulate(&rx, &self.transform, self.layout.roles())?;

        let lts = match &self.estimation {
            Estimation::Lts { smoother } => {
                let long = frame.long_symbols(&rx, &self.transform)?;
                let ls = lts_estimate(&long, &self.long_ref, &self.config.geometry.used)?;
                Some(match smoother {
                    Some(s) => s.apply(&ls)?,
                    None => ls,
                })
            }
            _ => None,
        };

        let mut hard = Vec::with_capacity(coded.bits.len());
        for (rx_grid, tx_grid) in rx_grids.iter().zip(&grids) {
            let estimate = match &lts {
                Some(e) => e.clone(),
                None => self.symbol_estimate(rx_grid, tx_grid, &real)?,
            };
            let eq = equalize(rx_grid, &estimate, self.layout.data())?;
            hard.extend(demap_hard(&eq.symbols, m));
        }
        self.coder.decode(&hard, payload.len())
    }

    fn symbol_estimate(
        &self,
        rx: &OfdmGrid<T>,
        tx: &OfdmGrid<T>,
        real: &ChannelRealization<T>,
    ) -> Result<ChannelEstimate<T>> {
        match &self.estimation {
            Estimation::Ideal => Ok(ChannelEstimate::ideal(real, self.layout.data())),
            Estimation::Comb {
                smoother,
                interpolator,
            } => {
                let ls = ls_estimate(rx, tx, self.layout.pilots())?;
                let at_pilots = match smoother {
                    Some(s) => s.apply(&ls)?,
                    None => ls,
                };
                interpolator.apply(&at_pilots)
            }
            Estimation::Lts { .. } => unreachable!("block estimate is computed per frame"),
        }
    }
}

fn random_bits<R: RngCore + ?Sized>(n: usize, rng: &mut R) -> Vec<u8> {
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let w = rng.next_u64();
        out.extend((0..64.min(n - out.len())).map(|i| ((w >> i) & 1) as u8));
    }
    out
}

/// Payload and channel streams for one point; `stream` selects an
/// independent ChaCha stream pair under the master seed.
fn point_rngs(seed: u64, stream: u64) -> (ChaCha8Rng, ChaCha8Rng) {
    let mut bits = ChaCha8Rng::seed_from_u64(seed);
    bits.set_stream(2 * stream);
    let mut chan = ChaCha8Rng::seed_from_u64(seed);
    chan.set_stream(2 * stream + 1);
    (bits, chan)
}

/// Simulates `config.total_bits` payload bits at `snr_db` on stream 0.
pub fn run_point<T: Real>(config: &PhyConfig, snr_db: f64) -> Result<BerRecord> {
    run_point_on_stream::<T>(config, snr_db, 0)
}

/// As [`run_point`], drawing randomness from stream `stream` of the seed.
pub fn run_point_on_stream<T: Real>(config: &PhyConfig, snr_db: f64, stream: u64) -> Result<BerRecord> {
    let mut config = config.clone();
    config.channel.snr_db = snr_db;
    let link = Link::<T>::new(&config)?;
    let (mut bit_rng, mut chan_rng) = point_rngs(config.rng_seed, stream);
    let mut record = BerRecord::header(&config, snr_db);
    let mut remaining = config.total_bits;
    while remaining > 0 {
        let n = remaining.min(config.frame_bits as u64) as usize;
        let payload = random_bits(n, &mut bit_rng);
        let decoded = link.run_frame(&payload, &mut chan_rng)?;
        record.bit_errors += payload.iter().zip(&decoded).filter(|(a, b)| a != b).count() as u64;
        record.bits += n as u64;
        remaining -= n as u64;
    }
    record.ber = record.bit_errors as f64 / record.bits as f64;
    Ok(record)
}

/// The experiment matrix: every (SNR, scheme/estimator pair, MCS).
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPlan {
    pub base: PhyConfig,
    pub snr_points_db: Vec<f64>,
    pub schemes: Vec<(PilotScheme, EstimatorKind)>,
    pub mcs_list: Vec<McsScheme>,
    pub bits_per_point: u64,
}

/// 0, 2, ..., 30 dB.
pub fn default_snr_points() -> Vec<f64> {
    (0..=15).map(|i| 2.0 * i as f64).collect()
}

impl SweepPlan {
    pub fn new(base: PhyConfig) -> Self {
        let bits = base.total_bits;
        Self {
            snr_points_db: default_snr_points(),
            schemes: vec![(base.pilots.clone(), base.estimator)],
            mcs_list: vec![base.mcs],
            bits_per_point: bits,
            base,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.snr_points_db.is_empty() {
            return Err(Error::Config("no SNR points".into()));
        }
        if self.snr_points_db.iter().any(|s| s.is_nan()) {
            return Err(Error::Config("SNR point is NaN".into()));
        }
        if self.snr_points_db.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("SNR points must be strictly increasing".into()));
        }
        if self.bits_per_point == 0 {
            return Err(Error::Config("bits_per_point must be positive".into()));
        }
        if self.schemes.is_empty() || self.mcs_list.is_empty() {
            return Err(Error::Config("sweep needs at least one scheme and one MCS".into()));
        }
        for c in self.configs() {
            c.validate()?;
        }
        Ok(())
    }

    /// Per-(scheme, MCS) configurations in output order.
    pub fn configs(&self) -> Vec<PhyConfig> {
        let mut out = Vec::new();
        for mcs in &self.mcs_list {
            for (pilots, estimator) in &self.schemes {
                let mut c = self.base.clone();
                c.mcs = *mcs;
                c.pilots = pilots.clone();
                c.estimator = *estimator;
                c.total_bits = self.bits_per_point;
                out.push(c);
            }
        }
        out
    }

    /// Number of records `run_sweep` returns.
    pub fn len(&self) -> usize {
        self.snr_points_db.len() * self.schemes.len() * self.mcs_list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Runs every point of the plan, in parallel, returning records ordered by
/// MCS, then scheme, then SNR. Point `i` of the SNR list uses stream `i`, so
/// all schemes and MCS at one SNR see common random numbers. A failing point
/// keeps its place in the output with `error` set.
pub fn run_sweep<T: Real>(plan: &SweepPlan) -> Result<Vec<BerRecord>> {
    plan.validate()?;
    let jobs: Vec<(PhyConfig, usize, f64)> = plan
        .configs()
        .into_iter()
        .flat_map(|c| {
            plan.snr_points_db
                .iter()
                .enumerate()
                .map(move |(i, &s)| (c.clone(), i, s))
        })
        .collect();
    Ok(jobs
        .into_par_iter()
        .map(|(config, i, snr)| {
            run_point_on_stream::<T>(&config, snr, i as u64).unwrap_or_else(|e| {
                let mut r = BerRecord::header(&config, snr);
                r.error = Some(e.to_string());
                r
            })
        })
        .collect())
}

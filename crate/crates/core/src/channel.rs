//! AWGN and block-fading Rayleigh tapped-delay-line channels.

use std::fmt;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Cpx, Real};

/// Speed of light in m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChannelKind {
    Awgn,
    RayleighTdl,
}

impl ChannelKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Awgn => "AWGN",
            Self::RayleighTdl => "RayleighTdl",
        }
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for ChannelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "awgn" => Ok(Self::Awgn),
            "rayleigh" | "rayleightdl" | "tdl" => Ok(Self::RayleighTdl),
            _ => Err(Error::Config(format!("unknown channel '{s}'"))),
        }
    }
}

/// One path of a power delay profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tap {
    /// Delay in samples.
    pub delay: usize,
    /// Mean power.
    pub power: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSpec {
    pub kind: ChannelKind,
    /// Es/N0 per used subcarrier; `f64::INFINITY` disables noise.
    pub snr_db: f64,
    pub speed_kmh: f64,
    pub carrier_hz: f64,
    /// Normalized to unit total power.
    pub pdp: Vec<Tap>,
}

impl Default for ChannelSpec {
    fn default() -> Self {
        Self {
            kind: ChannelKind::Awgn,
            snr_db: 10.0,
            speed_kmh: 50.0,
            carrier_hz: 5.9e9,
            pdp: default_pdp(),
        }
    }
}

/// Four taps at delays 0..=3 decaying by 3 dB per sample.
pub fn default_pdp() -> Vec<Tap> {
    exponential_pdp(4, 3.0)
}

/// `n` consecutive taps decaying by `decay_db` per sample, normalized.
pub fn exponential_pdp(n: usize, decay_db: f64) -> Vec<Tap> {
    normalize_pdp(
        (0..n)
            .map(|d| Tap {
                delay: d,
                power: 10f64.powf(-decay_db * d as f64 / 10.0),
            })
            .collect(),
    )
}

/// Scales tap powers to sum to one and sorts by delay.
pub fn normalize_pdp(mut pdp: Vec<Tap>) -> Vec<Tap> {
    let total: f64 = pdp.iter().map(|t| t.power).sum();
    if total > 0.0 {
        pdp.iter_mut().for_each(|t| t.power /= total);
    }
    pdp.sort_by_key(|t| t.delay);
    pdp
}

impl ChannelSpec {
    pub fn awgn(snr_db: f64) -> Self {
        Self {
            kind: ChannelKind::Awgn,
            snr_db,
            ..Self::default()
        }
    }

    /// Rayleigh block fading over `pdp` (normalized here).
    pub fn rayleigh(snr_db: f64, pdp: Vec<Tap>) -> Self {
        Self {
            kind: ChannelKind::RayleighTdl,
            snr_db,
            pdp: normalize_pdp(pdp),
            ..Self::default()
        }
    }

    /// Single-tap Rayleigh: frequency-flat fading.
    pub fn flat_rayleigh(snr_db: f64) -> Self {
        Self::rayleigh(snr_db, vec![Tap { delay: 0, power: 1.0 }])
    }

    pub fn noiseless(mut self) -> Self {
        self.snr_db = f64::INFINITY;
        self
    }

    pub fn validate(&self, cp_len: usize) -> Result<()> {
        if self.snr_db.is_nan() {
            return Err(Error::Channel("snr_db is NaN".into()));
        }
        if !(self.speed_kmh >= 0.0) {
            return Err(Error::Channel("speed must be non-negative".into()));
        }
        if self.pdp.is_empty() {
            return Err(Error::Channel("empty power delay profile".into()));
        }
        if self.pdp.iter().any(|t| !(t.power >= 0.0)) {
            return Err(Error::Channel("tap powers must be non-negative".into()));
        }
        if self.pdp.windows(2).any(|w| w[0].delay >= w[1].delay) {
            return Err(Error::Channel("tap delays must be unique and sorted".into()));
        }
        let total: f64 = self.pdp.iter().map(|t| t.power).sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::Channel(format!("tap powers sum to {total}, expected 1")));
        }
        let spread = self.pdp.last().map_or(0, |t| t.delay);
        if self.kind == ChannelKind::RayleighTdl && spread >= cp_len {
            return Err(Error::Channel(format!(
                "delay spread {spread} must be shorter than the cyclic prefix {cp_len}"
            )));
        }
        Ok(())
    }

    /// Noise variance per complex sample (and per unitary-FFT bin).
    pub fn noise_variance(&self) -> f64 {
        noise_variance(self.snr_db)
    }

    /// Power delay profile the receiver assumes for this channel.
    pub fn prior_pdp(&self) -> Vec<Tap> {
        match self.kind {
            ChannelKind::Awgn => vec![Tap { delay: 0, power: 1.0 }],
            ChannelKind::RayleighTdl => self.pdp.clone(),
        }
    }

    pub fn doppler_hz(&self) -> f64 {
        doppler_hz(self.speed_kmh, self.carrier_hz)
    }
}

/// `10^(-snr/10)`; zero for infinite SNR.
pub fn noise_variance(snr_db: f64) -> f64 {
    if snr_db == f64::INFINITY {
        0.0
    } else {
        10f64.powf(-snr_db / 10.0)
    }
}

/// Maximum Doppler shift `v f_c / c`.
pub fn doppler_hz(speed_kmh: f64, carrier_hz: f64) -> f64 {
    speed_kmh / 3.6 * carrier_hz / SPEED_OF_LIGHT
}

/// Taps actually applied to one frame and their frequency response.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization<T: Real> {
    pub taps: Vec<(usize, Cpx<T>)>,
    /// DFT of the taps, indexed by FFT bin.
    pub freq_response: Vec<Cpx<T>>,
}

impl<T: Real> ChannelRealization<T> {
    pub fn from_taps(taps: Vec<(usize, Cpx<T>)>, fft_size: usize) -> Self {
        let freq_response = (0..fft_size)
            .map(|k| {
                taps.iter()
                    .map(|&(d, g)| {
                        let phase = -T::TAU() * T::lit(((k * d) % fft_size) as f64) / T::lit(fft_size as f64);
                        g * Cpx::from_polar(T::one(), phase)
                    })
                    .fold(Cpx::new(T::zero(), T::zero()), |a, b| a + b)
            })
            .collect();
        Self {
            taps,
            freq_response,
        }
    }

    pub fn identity(fft_size: usize) -> Self {
        Self::from_taps(vec![(0, Cpx::new(T::one(), T::zero()))], fft_size)
    }

    /// Response on signed subcarrier `k`.
    pub fn at(&self, k: i32) -> Cpx<T> {
        self.freq_response[k.rem_euclid(self.freq_response.len() as i32) as usize]
    }

    /// Linear convolution truncated to the input length.
    pub fn convolve(&self, samples: &[Cpx<T>]) -> Vec<Cpx<T>> {
        let mut out = vec![Cpx::new(T::zero(), T::zero()); samples.len()];
        for &(d, g) in &self.taps {
            for (o, &s) in out[d.min(samples.len())..].iter_mut().zip(samples) {
                *o = *o + g * s;
            }
        }
        out
    }
}

#[inline]
pub(crate) fn complex_gaussian<T: Real, R: Rng + ?Sized>(rng: &mut R, variance: f64) -> Cpx<T> {
    let s = (variance / 2.0).sqrt();
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Cpx::new(T::lit(s * re), T::lit(s * im))
}

/// Draws the taps for one frame (all-pass for AWGN).
pub fn draw_realization<T: Real, R: Rng + ?Sized>(
    spec: &ChannelSpec,
    fft_size: usize,
    rng: &mut R,
) -> ChannelRealization<T> {
    match spec.kind {
        ChannelKind::Awgn => ChannelRealization::identity(fft_size),
        ChannelKind::RayleighTdl => {
            let taps = spec
                .pdp
                .iter()
                .map(|t| (t.delay, complex_gaussian(rng, t.power)))
                .collect();
            ChannelRealization::from_taps(taps, fft_size)
        }
    }
}

/// Adds circular complex Gaussian noise of the given per-sample variance.
pub fn add_noise<T: Real, R: Rng + ?Sized>(samples: &mut [Cpx<T>], variance: f64, rng: &mut R) {
    if variance > 0.0 {
        for s in samples {
            *s = *s + complex_gaussian(rng, variance);
        }
    }
}

/// Passes one frame through the channel: draw taps, convolve, add noise.
pub fn apply<T: Real, R: Rng + ?Sized>(
    samples: &[Cpx<T>],
    spec: &ChannelSpec,
    fft_size: usize,
    rng: &mut R,
) -> (Vec<Cpx<T>>, ChannelRealization<T>) {
    let real = draw_realization(spec, fft_size, rng);
    let mut out = match spec.kind {
        ChannelKind::Awgn => samples.to_vec(),
        ChannelKind::RayleighTdl => real.convolve(samples),
    };
    add_noise(&mut out, spec.noise_variance(), rng);
    (out, real)
}

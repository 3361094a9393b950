//! Pilot-aided channel estimation: least squares at the reference bins,
//! MMSE smoothing with the channel's frequency correlation, interpolation
//! over the data bins and zero-forcing equalization.

mod interpolate;
mod mmse;

pub use interpolate::{interpolate, Interpolator};
pub use mmse::{mmse_estimate, MmseContext, MmseSmoother};

use crate::channel::ChannelRealization;
use crate::error::{Error, Result};
use crate::ofdm::OfdmGrid;
use crate::params::{EstimateSource, EstimatorKind};
use crate::scalar::{Cpx, Real};

/// Channel frequency response on a set of subcarriers.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelEstimate<T: Real> {
    subcarriers: Vec<i32>,
    values: Vec<Cpx<T>>,
    pub method: EstimatorKind,
    pub source: EstimateSource,
}

impl<T: Real> ChannelEstimate<T> {
    /// `subcarriers` must be strictly increasing.
    pub fn new(
        subcarriers: Vec<i32>,
        values: Vec<Cpx<T>>,
        method: EstimatorKind,
        source: EstimateSource,
    ) -> Result<Self> {
        if subcarriers.len() != values.len() {
            return Err(Error::Count {
                expected: subcarriers.len(),
                got: values.len(),
            });
        }
        if subcarriers.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("estimate subcarriers must be strictly increasing".into()));
        }
        Ok(Self {
            subcarriers,
            values,
            method,
            source,
        })
    }

    /// True response read off a channel realization.
    pub fn ideal(real: &ChannelRealization<T>, subcarriers: &[i32]) -> Self {
        Self {
            subcarriers: subcarriers.to_vec(),
            values: subcarriers.iter().map(|&k| real.at(k)).collect(),
            method: EstimatorKind::Ideal,
            source: EstimateSource::CombPilots,
        }
    }

    pub fn subcarriers(&self) -> &[i32] {
        &self.subcarriers
    }

    pub fn values(&self) -> &[Cpx<T>] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, k: i32) -> Option<Cpx<T>> {
        self.subcarriers
            .binary_search(&k)
            .ok()
            .map(|i| self.values[i])
    }

    pub(crate) fn with_values(&self, values: Vec<Cpx<T>>, method: EstimatorKind) -> Self {
        Self {
            subcarriers: self.subcarriers.clone(),
            values,
            method,
            source: self.source,
        }
    }
}

/// `Y_k / X_k` on the requested subcarriers.
pub fn ls_estimate<T: Real>(
    received: &OfdmGrid<T>,
    reference: &OfdmGrid<T>,
    at: &[i32],
) -> Result<ChannelEstimate<T>> {
    let mut values = Vec::with_capacity(at.len());
    for &k in at {
        let x = reference.at(k);
        if x.norm_sqr() == T::zero() {
            return Err(Error::ZeroReference(k));
        }
        values.push(received.at(k) / x);
    }
    ChannelEstimate::new(at.to_vec(), values, EstimatorKind::Ls, EstimateSource::CombPilots)
}

/// LS estimate from the two long training symbols, averaged before the
/// division. `long_ref` is `L_k` indexed by FFT bin.
pub fn lts_estimate<T: Real>(
    long_rx: &[Vec<Cpx<T>>; 2],
    long_ref: &[Cpx<T>],
    at: &[i32],
) -> Result<ChannelEstimate<T>> {
    let n = long_ref.len() as i32;
    let half = T::lit(0.5);
    let mut values = Vec::with_capacity(at.len());
    for &k in at {
        let b = k.rem_euclid(n) as usize;
        let x = long_ref[b];
        if x.norm_sqr() == T::zero() {
            return Err(Error::ZeroReference(k));
        }
        values.push((long_rx[0][b] + long_rx[1][b]) * half / x);
    }
    ChannelEstimate::new(at.to_vec(), values, EstimatorKind::Ls, EstimateSource::LtsBlock)
}

/// Zero-forced data symbols.
#[derive(Debug, Clone, PartialEq)]
pub struct Equalized<T: Real> {
    pub symbols: Vec<Cpx<T>>,
    /// Subcarriers whose estimate fell below the magnitude floor.
    pub weak: Vec<i32>,
}

/// Relative floor on `|H_k|` below which a bin is flagged.
pub const EQUALIZER_FLOOR: f64 = 1e-6;

/// `Y_k / H_k` on `data` in the given order. Bins whose estimate is below
/// `EQUALIZER_FLOOR` times the RMS estimate magnitude are reported in
/// `weak` but still divided.
pub fn equalize<T: Real>(
    received: &OfdmGrid<T>,
    estimate: &ChannelEstimate<T>,
    data: &[i32],
) -> Result<Equalized<T>> {
    let h: Vec<Cpx<T>> = data
        .iter()
        .map(|&k| estimate.get(k).ok_or(Error::MissingEstimate(k)))
        .collect::<Result<_>>()?;
    let rms = if h.is_empty() {
        T::zero()
    } else {
        (h.iter().map(|v| v.norm_sqr()).sum::<T>() / T::lit(h.len() as f64)).sqrt()
    };
    let floor = rms * T::lit(EQUALIZER_FLOOR);
    let mut weak = Vec::new();
    let symbols = data
        .iter()
        .zip(&h)
        .map(|(&k, &hk)| {
            if !(hk.norm() >= floor) || hk.norm() == T::zero() {
                weak.push(k);
            }
            received.at(k) / hk
        })
        .collect();
    Ok(Equalized { symbols, weak })
}

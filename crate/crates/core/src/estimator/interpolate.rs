use super::ChannelEstimate;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::params::{FftGeometry, Interpolation};
use crate::scalar::{Cpx, Real};

/// Linear map from estimates on `known` subcarriers to `targets`.
#[derive(Debug, Clone, PartialEq)]
pub struct Interpolator<T: Real> {
    known: Vec<i32>,
    targets: Vec<i32>,
    matrix: CMatrix<T>,
}

impl<T: Real> Interpolator<T> {
    /// `Linear` interpolates along the subcarrier axis and holds the edge
    /// value outside the outermost known bins. `DftBased` fits a delay
    /// response of `min(cp_len, known)` taps to the known bins by least
    /// squares and evaluates it on the targets.
    pub fn new(
        method: Interpolation,
        known: &[i32],
        targets: &[i32],
        geometry: &FftGeometry,
    ) -> Result<Self> {
        if known.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("known subcarriers must be strictly increasing".into()));
        }
        let matrix = match method {
            Interpolation::Linear => linear_weights(known, targets)?,
            Interpolation::DftBased => dft_weights(known, targets, geometry)?,
        };
        Ok(Self {
            known: known.to_vec(),
            targets: targets.to_vec(),
            matrix,
        })
    }

    pub fn targets(&self) -> &[i32] {
        &self.targets
    }

    pub fn apply(&self, partial: &ChannelEstimate<T>) -> Result<ChannelEstimate<T>> {
        if partial.subcarriers() != self.known.as_slice() {
            return Err(Error::Config(
                "estimate does not match the interpolator's known subcarriers".into(),
            ));
        }
        ChannelEstimate::new(
            self.targets.clone(),
            self.matrix.mul_vec(partial.values()),
            partial.method,
            partial.source,
        )
    }
}

fn linear_weights<T: Real>(known: &[i32], targets: &[i32]) -> Result<CMatrix<T>> {
    if known.len() < 2 {
        return Err(Error::TooFewPilots {
            needed: 2,
            got: known.len(),
        });
    }
    let one = Cpx::new(T::one(), T::zero());
    let mut m = CMatrix::zeros(targets.len(), known.len());
    let last = known.len() - 1;
    for (row, &t) in targets.iter().enumerate() {
        if t <= known[0] {
            m[(row, 0)] = one;
        } else if t >= known[last] {
            m[(row, last)] = one;
        } else {
            let i = known.partition_point(|&k| k <= t) - 1;
            let (a, b) = (known[i], known[i + 1]);
            let w = T::lit((t - a) as f64 / (b - a) as f64);
            m[(row, i)] = Cpx::new(T::one() - w, T::zero());
            m[(row, i + 1)] = Cpx::new(w, T::zero());
        }
    }
    Ok(m)
}

fn dft_weights<T: Real>(known: &[i32], targets: &[i32], geometry: &FftGeometry) -> Result<CMatrix<T>> {
    if known.is_empty() {
        return Err(Error::TooFewPilots { needed: 1, got: 0 });
    }
    let taps = geometry.cp_len.max(1).min(known.len());
    let n = geometry.fft_size as i64;
    let rows = |ks: &[i32]| {
        CMatrix::from_fn(ks.len(), taps, |i, d| {
            let kd = (ks[i] as i64 * d as i64).rem_euclid(n);
            Cpx::from_polar(T::one(), -T::TAU() * T::lit(kd as f64) / T::lit(n as f64))
        })
    };
    let a = rows(known);
    let ah = a.conj_transpose();
    let (gram_inv, _) = ah.mul(&a).inverse_checked(1e12)?;
    Ok(rows(targets).mul(&gram_inv.mul(&ah)))
}

/// One-shot interpolation of `partial` onto `targets`.
pub fn interpolate<T: Real>(
    partial: &ChannelEstimate<T>,
    method: Interpolation,
    geometry: &FftGeometry,
    targets: &[i32],
) -> Result<ChannelEstimate<T>> {
    Interpolator::new(method, partial.subcarriers(), targets, geometry)?.apply(partial)
}

use std::sync::Arc;

use rustfft::{Fft, FftPlanner};

use super::grid::OfdmGrid;
use crate::error::{Error, Result};
use crate::scalar::{Cpx, Real};

/// Unitary FFT/IFFT pair of a fixed size.
#[derive(Clone)]
pub struct OfdmTransform<T: Real> {
    forward: Arc<dyn Fft<T>>,
    inverse: Arc<dyn Fft<T>>,
    scale: T,
}

impl<T: Real> std::fmt::Debug for OfdmTransform<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("OfdmTransform").field("size", &self.size()).finish()
    }
}

impl<T: Real> OfdmTransform<T> {
    pub fn new(fft_size: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            forward: planner.plan_fft_forward(fft_size),
            inverse: planner.plan_fft_inverse(fft_size),
            scale: T::one() / T::lit(fft_size as f64).sqrt(),
        }
    }

    pub fn size(&self) -> usize {
        self.forward.len()
    }

    /// Frequency bins to time samples.
    pub fn to_time(&self, grid: &OfdmGrid<T>) -> Vec<Cpx<T>> {
        self.ifft(grid.bins())
    }

    pub fn ifft(&self, bins: &[Cpx<T>]) -> Vec<Cpx<T>> {
        let mut buf = bins.to_vec();
        self.inverse.process(&mut buf);
        buf.iter_mut().for_each(|x| *x = *x * self.scale);
        buf
    }

    pub fn fft(&self, samples: &[Cpx<T>]) -> Result<Vec<Cpx<T>>> {
        if samples.len() != self.size() {
            return Err(Error::Count {
                expected: self.size(),
                got: samples.len(),
            });
        }
        let mut buf = samples.to_vec();
        self.forward.process(&mut buf);
        buf.iter_mut().for_each(|x| *x = *x * self.scale);
        Ok(buf)
    }

    /// Time samples (CP already removed) to a grid with the given roles.
    pub fn to_freq(&self, samples: &[Cpx<T>], roles: &[super::BinRole]) -> Result<OfdmGrid<T>> {
        OfdmGrid::from_bins(self.fft(samples)?, roles.to_vec())
    }
}

/// Prepends the last `cp_len` samples.
pub fn add_cp<T: Real>(samples: &[Cpx<T>], cp_len: usize) -> Result<Vec<Cpx<T>>> {
    if cp_len >= samples.len() {
        return Err(Error::CyclicPrefix {
            cp_len,
            fft_size: samples.len(),
        });
    }
    let mut out = Vec::with_capacity(samples.len() + cp_len);
    out.extend_from_slice(&samples[samples.len() - cp_len..]);
    out.extend_from_slice(samples);
    Ok(out)
}

/// Drops the first `cp_len` samples.
pub fn remove_cp<T: Real>(samples: &[Cpx<T>], cp_len: usize) -> Result<Vec<Cpx<T>>> {
    if cp_len >= samples.len() {
        return Err(Error::CyclicPrefix {
            cp_len,
            fft_size: samples.len(),
        });
    }
    Ok(samples[cp_len..].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ofdm::BinRole;
    use proptest::prelude::*;

    fn cvec(v: &[(f64, f64)]) -> Vec<Cpx<f64>> {
        v.iter().map(|&(a, b)| Cpx::new(a, b)).collect()
    }

    #[test]
    fn dc_impulse_is_constant() {
        let t = OfdmTransform::<f64>::new(64);
        let mut bins = vec![Cpx::new(0.0, 0.0); 64];
        bins[0] = Cpx::new(1.0, 0.0);
        let x = t.ifft(&bins);
        for s in x {
            assert!((s - Cpx::new(0.125, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn cp_basics() {
        let x = cvec(&[(1.0, 0.0), (2.0, 0.0), (3.0, 0.0), (4.0, 0.0)]);
        assert_eq!(add_cp(&x, 0).unwrap(), x);
        let y = add_cp(&x, 2).unwrap();
        assert_eq!(y.len(), 6);
        assert_eq!(&y[..2], &x[2..]);
        assert_eq!(remove_cp(&y, 2).unwrap(), x);
        assert!(add_cp(&x, 4).is_err());
        assert!(remove_cp(&x, 5).is_err());
    }

    #[test]
    fn wrong_fft_length() {
        let t = OfdmTransform::<f64>::new(16);
        assert!(t.fft(&[Cpx::new(0.0, 0.0); 15]).is_err());
    }

    proptest! {
        #[test]
        fn round_trip_and_parseval(vals in prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 64)) {
            let t = OfdmTransform::<f64>::new(64);
            let bins = cvec(&vals);
            let roles = vec![BinRole::Data; 64];
            let g = OfdmGrid::from_bins(bins.clone(), roles.clone()).unwrap();
            let x = t.to_time(&g);
            let back = t.to_freq(&x, &roles).unwrap();
            for (a, b) in back.bins().iter().zip(&bins) {
                prop_assert!((a - b).norm() < 1e-10);
            }
            let e_f: f64 = bins.iter().map(|v| v.norm_sqr()).sum();
            let e_t: f64 = x.iter().map(|v| v.norm_sqr()).sum();
            prop_assert!((e_f - e_t).abs() < 1e-9 * e_f.max(1.0));
        }

        #[test]
        fn f32_round_trip(vals in prop::collection::vec((-1.0f32..1.0, -1.0f32..1.0), 64)) {
            let t = OfdmTransform::<f32>::new(64);
            let bins: Vec<Cpx<f32>> = vals.iter().map(|&(a, b)| Cpx::new(a, b)).collect();
            let back = t.fft(&t.ifft(&bins)).unwrap();
            for (a, b) in back.iter().zip(&bins) {
                prop_assert!((a - b).norm() < 1e-5);
            }
        }

        /// With the channel shorter than the CP, linear convolution followed by
        /// CP removal acts on each subcarrier as a single multiplication.
        #[test]
        fn cp_makes_convolution_circular(
            vals in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 64),
            h0 in (-1.0f64..1.0, -1.0f64..1.0),
            h1 in (-1.0f64..1.0, -1.0f64..1.0),
            delay in 1usize..16,
        ) {
            let t = OfdmTransform::<f64>::new(64);
            let x = t.ifft(&cvec(&vals));
            let tx = add_cp(&x, 16).unwrap();
            let taps = [(0usize, Cpx::new(h0.0, h0.1)), (delay, Cpx::new(h1.0, h1.1))];
            // direct linear convolution, truncated to the transmitted length
            let rx: Vec<Cpx<f64>> = (0..tx.len())
                .map(|n| taps.iter().filter(|(d, _)| *d <= n).map(|(d, g)| g * tx[n - d]).sum())
                .collect();
            let y = t.fft(&remove_cp(&rx, 16).unwrap()).unwrap();
            for (k, (yk, xk)) in y.iter().zip(cvec(&vals)).enumerate() {
                let hk: Cpx<f64> = taps
                    .iter()
                    .map(|(d, g)| g * Cpx::from_polar(1.0, -std::f64::consts::TAU * (k * d) as f64 / 64.0))
                    .sum();
                prop_assert!((yk - hk * xk).norm() < 1e-10);
            }
        }
    }
}

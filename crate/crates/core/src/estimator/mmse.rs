use super::ChannelEstimate;
use crate::channel::Tap;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::params::EstimatorKind;
use crate::scalar::{Cpx, Real};

/// Second-order channel statistics and noise level used by the MMSE
/// smoother.
///
/// The taps `g` sit at `delays`; `r_gg` is their covariance. The frequency
/// response on subcarrier `k` is `sum_l g_l exp(-j 2 pi k d_l / N)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MmseContext<T: Real> {
    pub delays: Vec<usize>,
    pub r_gg: CMatrix<T>,
    /// Noise variance on each LS estimate (unit-magnitude references).
    pub sigma2: T,
    pub fft_size: usize,
    /// Diagonal loading added to the inverted matrix, off by default.
    pub loading: Option<T>,
    pub max_condition: f64,
}

impl<T: Real> MmseContext<T> {
    /// Uncorrelated scattering: diagonal `r_gg` from the tap powers.
    pub fn from_pdp(pdp: &[Tap], fft_size: usize, sigma2: T) -> Result<Self> {
        let n = pdp.len();
        let r_gg = CMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Cpx::new(T::lit(pdp[i].power), T::zero())
            } else {
                Cpx::new(T::zero(), T::zero())
            }
        });
        let ctx = Self {
            delays: pdp.iter().map(|t| t.delay).collect(),
            r_gg,
            sigma2,
            fft_size,
            loading: None,
            max_condition: 1e12,
        };
        ctx.validate()?;
        Ok(ctx)
    }

    pub fn with_loading(mut self, loading: Option<T>) -> Self {
        self.loading = loading;
        self
    }

    pub fn with_max_condition(mut self, max_condition: f64) -> Self {
        self.max_condition = max_condition;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.delays.len();
        if self.r_gg.rows() != n || self.r_gg.cols() != n {
            return Err(Error::Config(format!(
                "covariance is {}x{} for {n} taps",
                self.r_gg.rows(),
                self.r_gg.cols()
            )));
        }
        let tol = T::lit(1e-9) * (self.r_gg.norm_one() + T::one());
        if self.r_gg.hermitian_defect() > tol {
            return Err(Error::Config("tap covariance is not Hermitian".into()));
        }
        if (0..n).any(|i| self.r_gg[(i, i)].re < T::zero()) {
            return Err(Error::Config("tap covariance has a negative variance".into()));
        }
        if !(self.sigma2 >= T::zero()) {
            return Err(Error::Config("noise variance must be non-negative".into()));
        }
        Ok(())
    }

    /// `F_a R_gg F_b^H`: covariance between the responses on `a` and `b`.
    pub fn freq_correlation(&self, a: &[i32], b: &[i32]) -> CMatrix<T> {
        let fa = self.dft_rows(a);
        let fb = self.dft_rows(b);
        fa.mul(&self.r_gg).mul(&fb.conj_transpose())
    }

    fn dft_rows(&self, subcarriers: &[i32]) -> CMatrix<T> {
        let n = self.fft_size as i64;
        CMatrix::from_fn(subcarriers.len(), self.delays.len(), |i, l| {
            let kd = (subcarriers[i] as i64 * self.delays[l] as i64).rem_euclid(n);
            Cpx::from_polar(T::one(), -T::TAU() * T::lit(kd as f64) / T::lit(n as f64))
        })
    }
}

/// Precomputed MMSE weights `R (R + sigma2 I)^-1` for one subcarrier set.
///
/// With `R = F R_gg F^H` the weights are evaluated as
/// `F (R_gg F^H F + sigma2 I)^-1 R_gg F^H`, which only inverts a
/// taps-by-taps matrix. The two forms agree for `sigma2 > 0`; the second
/// stays well defined at `sigma2 = 0` when there are more subcarriers than
/// taps, where it reduces to the least-squares projection onto the taps.
#[derive(Debug, Clone, PartialEq)]
pub struct MmseSmoother<T: Real> {
    subcarriers: Vec<i32>,
    weights: CMatrix<T>,
    condition: f64,
}

impl<T: Real> MmseSmoother<T> {
    pub fn new(ctx: &MmseContext<T>, subcarriers: &[i32]) -> Result<Self> {
        ctx.validate()?;
        let f = ctx.dft_rows(subcarriers);
        let fh = f.conj_transpose();
        let mut system = ctx.r_gg.mul(&fh).mul(&f);
        system.add_diagonal(ctx.sigma2 + ctx.loading.unwrap_or_else(T::zero));
        let (inv, condition) = system.inverse_checked(ctx.max_condition)?;
        Ok(Self {
            subcarriers: subcarriers.to_vec(),
            weights: f.mul(&inv).mul(&ctx.r_gg).mul(&fh),
            condition,
        })
    }

    pub fn condition(&self) -> f64 {
        self.condition
    }

    pub fn weights(&self) -> &CMatrix<T> {
        &self.weights
    }

    pub fn apply(&self, ls: &ChannelEstimate<T>) -> Result<ChannelEstimate<T>> {
        if ls.subcarriers() != self.subcarriers.as_slice() {
            return Err(Error::Config(
                "LS estimate does not match the smoother's subcarriers".into(),
            ));
        }
        Ok(ls.with_values(self.weights.mul_vec(ls.values()), EstimatorKind::Mmse))
    }
}

/// Smooths an LS estimate with the channel's frequency correlation.
pub fn mmse_estimate<T: Real>(ls: &ChannelEstimate<T>, ctx: &MmseContext<T>) -> Result<ChannelEstimate<T>> {
    MmseSmoother::new(ctx, ls.subcarriers())?.apply(ls)
}

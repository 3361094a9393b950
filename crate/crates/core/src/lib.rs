//! Baseband OFDM physical layer for vehicular links: bit pipeline, Gray
//! QAM, 64-point OFDM with pilots and preamble, AWGN and tapped-delay-line
//! Rayleigh channels, LS/MMSE pilot-aided estimation and a Monte Carlo BER
//! engine.
//!
//! The numeric code is generic over [`Real`] (`f32` or `f64`). The aliases
//! at the crate root fix the scalar to `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bitpipe;
pub mod channel;
pub mod error;
pub mod estimator;
pub mod linalg;
pub mod modem;
pub mod ofdm;
pub mod params;
pub mod scalar;
pub mod sim;

pub use error::{Error, Result};
pub use scalar::{Cpx, Real};

pub use channel::{ChannelKind, ChannelSpec, Tap};
pub use params::{
    Coding, CodeRate, EstimateSource, EstimatorKind, FftGeometry, Interpolation, McsScheme,
    Modulation, PhyConfig, PilotOverhead, PilotScheme, PilotSchemeKind,
};

pub type Complex = Cpx<f64>;
pub type OfdmGrid = ofdm::OfdmGrid<f64>;
pub type SubcarrierLayout = ofdm::SubcarrierLayout<f64>;
pub type OfdmTransform = ofdm::OfdmTransform<f64>;
pub type PreambleSpec = ofdm::PreambleSpec<f64>;
pub type TimeFrame = ofdm::TimeFrame<f64>;
pub type ChannelRealization = channel::ChannelRealization<f64>;
pub type ChannelEstimate = estimator::ChannelEstimate<f64>;
pub type MmseContext = estimator::MmseContext<f64>;
pub type MmseSmoother = estimator::MmseSmoother<f64>;
pub type Interpolator = estimator::Interpolator<f64>;
pub type CMatrix = linalg::CMatrix<f64>;

pub use sim::{BerRecord, SweepPlan};

pub type Link = sim::Link<f64>;

/// [`sim::run_point`] in double precision.
pub fn run_point(config: &PhyConfig, snr_db: f64) -> Result<BerRecord> {
    sim::run_point::<f64>(config, snr_db)
}

/// [`sim::run_sweep`] in double precision.
pub fn run_sweep(plan: &SweepPlan) -> Result<Vec<BerRecord>> {
    sim::run_sweep::<f64>(plan)
}

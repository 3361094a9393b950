use thiserror::Error;

/// Everything that can go wrong while configuring or running a link.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid geometry: {0}")]
    Geometry(String),
    #[error("invalid pilot scheme: {0}")]
    Pilots(String),
    #[error("invalid modulation/code-rate combination: {0}")]
    Mcs(String),
    #[error("invalid channel specification: {0}")]
    Channel(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("scrambler initial state must be a non-zero 7-bit value, got {0:#x}")]
    ScramblerState(u8),
    #[error("block length {len} is not a multiple of {multiple}")]
    BlockLength { len: usize, multiple: usize },
    #[error("expected {expected} items, got {got}")]
    Count { expected: usize, got: usize },
    #[error("cyclic prefix length {cp_len} must be shorter than the FFT size {fft_size}")]
    CyclicPrefix { cp_len: usize, fft_size: usize },
    #[error("reference symbol is zero at subcarrier {0}")]
    ZeroReference(i32),
    #[error("need at least {needed} known subcarriers for interpolation, got {got}")]
    TooFewPilots { needed: usize, got: usize },
    #[error("matrix is singular or ill-conditioned (condition number {0:e})")]
    IllConditioned(f64),
    #[error("subcarrier {0} has no channel estimate")]
    MissingEstimate(i32),
}

pub type Result<T> = std::result::Result<T, Error>;

//! Short and long training fields.

use super::transform::OfdmTransform;
use crate::error::{Error, Result};
use crate::params::FftGeometry;
use crate::scalar::{Cpx, Real};

/// Long training sequence on subcarriers -26..=26.
pub const LONG_TRAINING: [i8; 53] = [
    1, 1, -1, -1, 1, 1, -1, 1, -1, 1, 1, 1, 1, 1, 1, -1, -1, 1, 1, -1, 1, -1, 1, 1, 1, 1, //
    0, //
    1, -1, -1, 1, 1, -1, 1, -1, 1, -1, -1, -1, -1, -1, 1, 1, -1, -1, 1, -1, 1, -1, 1, 1, 1, 1,
];

/// Short training sequence on subcarriers -26..=26, in units of
/// `sqrt(13/6) * (1 + j)`.
pub const SHORT_TRAINING: [i8; 53] = [
    0, 0, 1, 0, 0, 0, -1, 0, 0, 0, 1, 0, 0, 0, -1, 0, 0, 0, -1, 0, 0, 0, 1, 0, 0, 0, //
    0, //
    0, 0, 0, -1, 0, 0, 0, -1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0,
];

const TRAINING_EDGE: i32 = 26;

/// Time window applied sample by sample over each training field.
#[derive(Debug, Clone, Copy)]
pub enum Window {
    Rectangular,
    /// `f(n, len)` gives the weight of sample `n` in a field of `len` samples.
    Custom(fn(usize, usize) -> f64),
}

impl PartialEq for Window {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Window::Rectangular, Window::Rectangular) => true,
            (Window::Custom(a), Window::Custom(b)) => std::ptr::fn_addr_eq(*a, *b),
            _ => false,
        }
    }
}

impl Window {
    fn weight(&self, n: usize, len: usize) -> f64 {
        match self {
            Window::Rectangular => 1.0,
            Window::Custom(f) => f(n, len),
        }
    }
}

/// Frequency-domain training sequences and the timing of the preamble.
#[derive(Debug, Clone, PartialEq)]
pub struct PreambleSpec<T: Real> {
    pub fft_size: usize,
    /// `S_k` indexed by FFT bin.
    pub short: Vec<Cpx<T>>,
    /// `L_k` indexed by FFT bin.
    pub long: Vec<Cpx<T>>,
    /// Subcarriers carrying `L_k`.
    pub n_st: usize,
    pub subcarrier_spacing_hz: f64,
    pub short_repetitions: usize,
    /// Guard interval before the two long symbols, in samples.
    pub long_guard: usize,
    pub window: Window,
}

impl<T: Real> PreambleSpec<T> {
    /// 802.11a/p training fields for `geometry`.
    pub fn standard(geometry: &FftGeometry) -> Result<Self> {
        let n = geometry.fft_size;
        if !n.is_multiple_of(4) || (n as i32) / 2 <= TRAINING_EDGE {
            return Err(Error::Geometry(format!(
                "training fields need an FFT size divisible by 4 and above 53, got {n}"
            )));
        }
        let a = (13.0f64 / 6.0).sqrt();
        let mut short = vec![Cpx::new(T::zero(), T::zero()); n];
        let mut long = short.clone();
        for (i, (&s, &l)) in SHORT_TRAINING.iter().zip(&LONG_TRAINING).enumerate() {
            let k = i as i32 - TRAINING_EDGE;
            let bin = geometry.bin(k);
            short[bin] = Cpx::new(T::lit(a * s as f64), T::lit(a * s as f64));
            long[bin] = Cpx::new(T::lit(l as f64), T::zero());
        }
        Ok(Self {
            fft_size: n,
            short,
            long,
            n_st: LONG_TRAINING.iter().filter(|&&l| l != 0).count(),
            subcarrier_spacing_hz: geometry.subcarrier_spacing_hz,
            short_repetitions: 10,
            long_guard: n / 2,
            window: Window::Rectangular,
        })
    }

    pub fn short_len(&self) -> usize {
        self.short_repetitions * self.fft_size / 4
    }

    pub fn long_len(&self) -> usize {
        self.long_guard + 2 * self.fft_size
    }

    pub fn len(&self) -> usize {
        self.short_len() + self.long_len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Offset of the first of the two long symbols.
    pub fn long_start(&self) -> usize {
        self.short_len() + self.long_guard
    }

    pub fn duration_s(&self) -> f64 {
        self.len() as f64 / (self.fft_size as f64 * self.subcarrier_spacing_hz)
    }
}

/// Short field (periodic with period `fft_size / 4`) followed by the long
/// guard and two identical long symbols.
pub fn gen_preamble<T: Real>(spec: &PreambleSpec<T>, transform: &OfdmTransform<T>) -> Vec<Cpx<T>> {
    let n = spec.fft_size;
    let short = transform.ifft(&spec.short);
    let long = transform.ifft(&spec.long);
    let mut out = Vec::with_capacity(spec.len());
    let slen = spec.short_len();
    out.extend((0..slen).map(|i| short[i % n] * T::lit(spec.window.weight(i, slen))));
    let llen = spec.long_len();
    // the guard is the cyclic tail of the long symbol, i.e. the (t - T_GI2) shift
    out.extend((0..llen).map(|i| {
        let src = (i + n - spec.long_guard % n) % n;
        long[src] * T::lit(spec.window.weight(i, llen))
    }));
    out
}

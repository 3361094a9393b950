//! Gray-coded BPSK/QPSK/16QAM/64QAM mapping and hard-decision demapping.
//!
//! Each square constellation is two independent Gray-coded PAM axes. The
//! first half of a symbol's bits selects the in-phase level, the second half
//! the quadrature level (BPSK only uses the in-phase axis). Levels are
//! `-(M-1), ..., -1, 1, ..., M-1` scaled so the mean symbol energy is one.

use crate::error::{Error, Result};
use crate::params::Modulation;
use crate::scalar::{Cpx, Real};

/// Energy normalization: 1, 1/sqrt(2), 1/sqrt(10), 1/sqrt(42).
pub fn normalization<T: Real>(m: Modulation) -> T {
    let e = match m {
        Modulation::Bpsk => 1.0,
        Modulation::Qpsk => 2.0,
        Modulation::Qam16 => 10.0,
        Modulation::Qam64 => 42.0,
    };
    T::lit(1.0 / f64::sqrt(e))
}

fn bits_per_axis(m: Modulation) -> usize {
    match m {
        Modulation::Bpsk => 1,
        other => other.bits_per_symbol() / 2,
    }
}

#[inline]
fn gray(n: usize) -> usize {
    n ^ (n >> 1)
}

#[inline]
fn gray_inverse(mut g: usize) -> usize {
    let mut n = 0;
    while g != 0 {
        n ^= g;
        g >>= 1;
    }
    n
}

/// Unnormalized PAM level for the MSB-first label bits.
fn axis_level(bits: &[u8]) -> i32 {
    let label = bits.iter().fold(0usize, |acc, &b| (acc << 1) | (b & 1) as usize);
    let m = 1i32 << bits.len();
    2 * gray_inverse(label) as i32 - (m - 1)
}

/// Nearest PAM level index for an unnormalized coordinate, ties upward.
fn axis_decide<T: Real>(x: T, nbits: usize) -> usize {
    let m = 1usize << nbits;
    let pos = ((x + T::lit((m - 1) as f64)) / T::lit(2.0) + T::lit(0.5)).floor();
    let idx = pos.to_i64().unwrap_or(0).clamp(0, m as i64 - 1);
    idx as usize
}

fn push_label(out: &mut Vec<u8>, idx: usize, nbits: usize) {
    let g = gray(idx);
    for i in (0..nbits).rev() {
        out.push(((g >> i) & 1) as u8);
    }
}

/// Maps bits to constellation symbols.
pub fn map_bits<T: Real>(bits: &[u8], m: Modulation) -> Result<Vec<Cpx<T>>> {
    let k = m.bits_per_symbol();
    if !bits.len().is_multiple_of(k) {
        return Err(Error::BlockLength {
            len: bits.len(),
            multiple: k,
        });
    }
    let norm = normalization::<T>(m);
    let half = bits_per_axis(m);
    Ok(bits
        .chunks(k)
        .map(|c| {
            let i = axis_level(&c[..half]);
            let q = if m == Modulation::Bpsk { 0 } else { axis_level(&c[half..]) };
            Cpx::new(T::lit(i as f64) * norm, T::lit(q as f64) * norm)
        })
        .collect())
}

/// Nearest-point decision, returning the Gray labels.
pub fn demap_hard<T: Real>(symbols: &[Cpx<T>], m: Modulation) -> Vec<u8> {
    let norm = normalization::<T>(m);
    let half = bits_per_axis(m);
    let mut out = Vec::with_capacity(symbols.len() * m.bits_per_symbol());
    for s in symbols {
        push_label(&mut out, axis_decide(s.re / norm, half), half);
        if m != Modulation::Bpsk {
            push_label(&mut out, axis_decide(s.im / norm, half), half);
        }
    }
    out
}

/// Every constellation point, indexed by its label read as an integer.
pub fn constellation<T: Real>(m: Modulation) -> Vec<Cpx<T>> {
    let k = m.bits_per_symbol();
    let bits: Vec<u8> = (0..1usize << k)
        .flat_map(|label| (0..k).rev().map(move |i| ((label >> i) & 1) as u8))
        .collect();
    map_bits(&bits, m).expect("whole labels")
}

/// Smallest distance between two constellation points.
pub fn min_distance<T: Real>(m: Modulation) -> T {
    T::lit(2.0) * normalization::<T>(m)
}

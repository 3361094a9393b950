//! OFDM symbol assembly, unitary transforms, cyclic prefix, preamble and
//! frame (de)framing.

mod grid;
mod preamble;
mod transform;

pub use grid::{assemble_grid, BinRole, OfdmGrid, SubcarrierLayout};
pub use preamble::{gen_preamble, PreambleSpec, Window, LONG_TRAINING, SHORT_TRAINING};
pub use transform::{add_cp, remove_cp, OfdmTransform};

use crate::error::{Error, Result};
use crate::scalar::{Cpx, Real};

/// Time-domain frame with the sample offsets of its parts.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeFrame<T: Real> {
    pub samples: Vec<Cpx<T>>,
    pub preamble_len: usize,
    /// Offset of the first long training symbol.
    pub long_start: usize,
    /// Offset of each data symbol's cyclic prefix.
    pub symbol_starts: Vec<usize>,
    pub cp_len: usize,
    pub fft_size: usize,
}

impl<T: Real> TimeFrame<T> {
    /// Concatenates the preamble and each grid with its cyclic prefix.
    pub fn build(
        preamble: &[Cpx<T>],
        long_start: usize,
        grids: &[OfdmGrid<T>],
        transform: &OfdmTransform<T>,
        cp_len: usize,
    ) -> Result<Self> {
        let n = transform.size();
        let mut samples = Vec::with_capacity(preamble.len() + grids.len() * (n + cp_len));
        samples.extend_from_slice(preamble);
        let mut symbol_starts = Vec::with_capacity(grids.len());
        for g in grids {
            if g.fft_size() != n {
                return Err(Error::Count {
                    expected: n,
                    got: g.fft_size(),
                });
            }
            symbol_starts.push(samples.len());
            samples.extend(add_cp(&transform.to_time(g), cp_len)?);
        }
        Ok(Self {
            samples,
            preamble_len: preamble.len(),
            long_start,
            symbol_starts,
            cp_len,
            fft_size: n,
        })
    }

    /// Received counterpart of `self.samples` cut into data grids.
    pub fn demodulate(
        &self,
        received: &[Cpx<T>],
        transform: &OfdmTransform<T>,
        roles: &[BinRole],
    ) -> Result<Vec<OfdmGrid<T>>> {
        if received.len() != self.samples.len() {
            return Err(Error::Count {
                expected: self.samples.len(),
                got: received.len(),
            });
        }
        let len = self.cp_len + self.fft_size;
        self.symbol_starts
            .iter()
            .map(|&s| transform.to_freq(&remove_cp(&received[s..s + len], self.cp_len)?, roles))
            .collect()
    }

    /// FFT of the two received long training symbols.
    pub fn long_symbols(
        &self,
        received: &[Cpx<T>],
        transform: &OfdmTransform<T>,
    ) -> Result<[Vec<Cpx<T>>; 2]> {
        let a = self.long_start;
        let n = self.fft_size;
        if received.len() < a + 2 * n {
            return Err(Error::Count {
                expected: a + 2 * n,
                got: received.len(),
            });
        }
        Ok([
            transform.fft(&received[a..a + n])?,
            transform.fft(&received[a + n..a + 2 * n])?,
        ])
    }
}

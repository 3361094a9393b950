//! Two-step block interleaver operating on one OFDM symbol of coded bits.

use crate::error::{Error, Result};

/// Precomputed permutation for a given `(n_cbps, n_bpsc)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interleaver {
    /// `forward[k]` is the output index of input bit `k`.
    forward: Vec<usize>,
    inverse: Vec<usize>,
}

impl Interleaver {
    /// `n_cbps` coded bits per symbol, `n_bpsc` bits per subcarrier.
    ///
    /// The first step spreads adjacent bits over non-adjacent subcarriers,
    /// the second rotates bits within each subcarrier group so neighbours
    /// alternate between more and less reliable constellation bits.
    pub fn new(n_cbps: usize, n_bpsc: usize) -> Result<Self> {
        if n_cbps == 0 || !n_cbps.is_multiple_of(16) {
            return Err(Error::BlockLength {
                len: n_cbps,
                multiple: 16,
            });
        }
        let s = (n_bpsc / 2).max(1);
        let mut forward = vec![0; n_cbps];
        for (k, slot) in forward.iter_mut().enumerate() {
            let i = (n_cbps / 16) * (k % 16) + k / 16;
            let j = s * (i / s) + (i + n_cbps - (16 * i) / n_cbps) % s;
            *slot = j;
        }
        let mut inverse = vec![0; n_cbps];
        for (k, &j) in forward.iter().enumerate() {
            inverse[j] = k;
        }
        Ok(Self { forward, inverse })
    }

    pub fn block_len(&self) -> usize {
        self.forward.len()
    }

    pub fn interleave<B: Copy + Default>(&self, block: &[B]) -> Result<Vec<B>> {
        self.check(block.len())?;
        let mut out = vec![B::default(); block.len()];
        for (k, &b) in block.iter().enumerate() {
            out[self.forward[k]] = b;
        }
        Ok(out)
    }

    pub fn deinterleave<B: Copy + Default>(&self, block: &[B]) -> Result<Vec<B>> {
        self.check(block.len())?;
        let mut out = vec![B::default(); block.len()];
        for (j, &b) in block.iter().enumerate() {
            out[self.inverse[j]] = b;
        }
        Ok(out)
    }

    /// Applies [`Self::interleave`] to each symbol-sized chunk.
    pub fn interleave_all<B: Copy + Default>(&self, bits: &[B]) -> Result<Vec<B>> {
        self.chunked(bits, |c| self.interleave(c))
    }

    pub fn deinterleave_all<B: Copy + Default>(&self, bits: &[B]) -> Result<Vec<B>> {
        self.chunked(bits, |c| self.deinterleave(c))
    }

    fn chunked<B: Copy>(&self, bits: &[B], f: impl Fn(&[B]) -> Result<Vec<B>>) -> Result<Vec<B>> {
        if !bits.len().is_multiple_of(self.block_len()) {
            return Err(Error::BlockLength {
                len: bits.len(),
                multiple: self.block_len(),
            });
        }
        let mut out = Vec::with_capacity(bits.len());
        for chunk in bits.chunks(self.block_len()) {
            out.extend(f(chunk)?);
        }
        Ok(out)
    }

    fn check(&self, len: usize) -> Result<()> {
        if len != self.block_len() {
            return Err(Error::Count {
                expected: self.block_len(),
                got: len,
            });
        }
        Ok(())
    }
}

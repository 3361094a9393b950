//! Frame-synchronous scrambler, generator polynomial x^7 + x^4 + 1.

use crate::error::{Error, Result};

/// XORs `bits` with the LFSR sequence started from `init_state`.
///
/// The state holds x1..x7 in bits 0..6. Each step outputs x7 ^ x4 and
/// shifts that bit in at x1. Descrambling is the same operation.
pub fn scramble(bits: &[u8], init_state: u8) -> Result<Vec<u8>> {
    let mut lfsr = Lfsr::new(init_state)?;
    Ok(bits.iter().map(|&b| b ^ lfsr.next_bit()).collect())
}

/// Inverse of [`scramble`].
pub fn descramble(bits: &[u8], init_state: u8) -> Result<Vec<u8>> {
    scramble(bits, init_state)
}

#[derive(Debug, Clone)]
pub struct Lfsr {
    state: u8,
}

impl Lfsr {
    pub fn new(init_state: u8) -> Result<Self> {
        if init_state == 0 || init_state > 0x7f {
            return Err(Error::ScramblerState(init_state));
        }
        Ok(Self { state: init_state })
    }

    #[inline]
    pub fn next_bit(&mut self) -> u8 {
        let out = ((self.state >> 6) ^ (self.state >> 3)) & 1;
        self.state = ((self.state << 1) | out) & 0x7f;
        out
    }
}

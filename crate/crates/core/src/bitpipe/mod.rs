//! Bit-domain transmit chain and its receive-side inverse: scrambling,
//! convolutional coding, puncturing and per-symbol interleaving.

mod conv;
mod interleave;
mod puncture;
mod scrambler;
mod viterbi;

pub use conv::{conv_encode, G0, G1, NUM_STATES, TAIL_BITS};
pub use interleave::Interleaver;
pub use puncture::{MaybeBit, PunctureMap};
pub use scrambler::{descramble, scramble, Lfsr};
pub use viterbi::{path_metric, viterbi_decode};

use crate::error::{Error, Result};
use crate::params::{Coding, PhyConfig};

/// Processing stage a [`BitBlock`] has reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Raw,
    Scrambled,
    Coded,
    Punctured,
    Interleaved,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitBlock {
    pub bits: Vec<u8>,
    pub stage: Stage,
}

impl BitBlock {
    pub fn new(bits: Vec<u8>, stage: Stage) -> Self {
        Self { bits, stage }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
}

/// Turns a frame payload into whole OFDM symbols of interleaved coded bits
/// and back.
///
/// Coded frame layout before encoding: scrambled payload, zero padding up
/// to a whole number of symbols, then six zero tail bits.
#[derive(Debug, Clone)]
pub struct FrameCoder {
    coding: Coding,
    scrambler_seed: u8,
    puncture: PunctureMap,
    interleaver: Interleaver,
    n_cbps: usize,
    n_dbps: usize,
}

impl FrameCoder {
    pub fn new(config: &PhyConfig) -> Result<Self> {
        config.validate()?;
        let n_cbps = config.n_cbps();
        Ok(Self {
            coding: config.coding,
            scrambler_seed: config.scrambler_seed,
            puncture: PunctureMap::for_rate(config.mcs.code_rate()),
            interleaver: Interleaver::new(n_cbps, config.mcs.modulation().bits_per_symbol())?,
            n_cbps,
            n_dbps: config.n_dbps(),
        })
    }

    pub fn n_cbps(&self) -> usize {
        self.n_cbps
    }

    pub fn n_dbps(&self) -> usize {
        self.n_dbps
    }

    /// OFDM symbols needed for `payload_len` bits.
    pub fn symbols_for(&self, payload_len: usize) -> usize {
        let overhead = match self.coding {
            Coding::Convolutional => TAIL_BITS,
            Coding::Uncoded => 0,
        };
        (payload_len + overhead).div_ceil(self.n_dbps).max(1)
    }

    pub fn encode(&self, payload: &[u8]) -> Result<BitBlock> {
        let n_sym = self.symbols_for(payload.len());
        let total = n_sym * self.n_dbps;
        let coded = match self.coding {
            Coding::Uncoded => {
                let mut bits = payload.to_vec();
                bits.resize(total, 0);
                bits
            }
            Coding::Convolutional => {
                let mut bits = scramble(payload, self.scrambler_seed)?;
                bits.resize(total, 0);
                let coded = conv_encode(&bits);
                self.puncture.puncture(&coded)?
            }
        };
        debug_assert_eq!(coded.len(), n_sym * self.n_cbps);
        Ok(BitBlock::new(
            self.interleaver.interleave_all(&coded)?,
            Stage::Interleaved,
        ))
    }

    /// Recovers `payload_len` bits from hard-decided interleaved bits.
    pub fn decode(&self, received: &[u8], payload_len: usize) -> Result<Vec<u8>> {
        let n_sym = self.symbols_for(payload_len);
        if received.len() != n_sym * self.n_cbps {
            return Err(Error::Count {
                expected: n_sym * self.n_cbps,
                got: received.len(),
            });
        }
        let bits = self.interleaver.deinterleave_all(received)?;
        match self.coding {
            Coding::Uncoded => Ok(bits[..payload_len].to_vec()),
            Coding::Convolutional => {
                let soft = self.puncture.depuncture(&bits)?;
                let decoded = viterbi_decode(&soft);
                descramble(&decoded[..payload_len], self.scrambler_seed)
            }
        }
    }
}

//! Puncturing of the rate-1/2 mother code up to rates 2/3 and 3/4.

use crate::error::{Error, Result};
use crate::params::CodeRate;

/// A coded bit after depuncturing: `None` marks a deleted position.
pub type MaybeBit = Option<u8>;

/// Keep/delete mask over one period of serialized coded bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PunctureMap {
    pub rate: CodeRate,
    keep: Vec<bool>,
}

impl PunctureMap {
    /// Builds the mask from a puncturing matrix written as its two rows
    /// concatenated: the first half applies to the first output of each pair,
    /// the second half to the second output. `"1110"` is `[11; 10]` and
    /// `"110101"` is `[110; 101]`.
    pub fn from_rows(rate: CodeRate, rows: &str) -> Result<Self> {
        let digits: Vec<bool> = rows
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Config(format!("bad puncturing pattern '{rows}'"))),
            })
            .collect::<Result<_>>()?;
        if digits.is_empty() || !digits.len().is_multiple_of(2) {
            return Err(Error::Config(format!("bad puncturing pattern '{rows}'")));
        }
        let cols = digits.len() / 2;
        let keep = (0..cols)
            .flat_map(|j| [digits[j], digits[cols + j]])
            .collect();
        Ok(Self { rate, keep })
    }

    pub fn for_rate(rate: CodeRate) -> Self {
        let rows = match rate {
            CodeRate::R12 => "11",
            CodeRate::R23 => "1110",
            CodeRate::R34 => "110101",
        };
        Self::from_rows(rate, rows).expect("built-in pattern")
    }

    /// Serialized mask, one entry per mother-code output bit.
    pub fn keep_pattern(&self) -> &[bool] {
        &self.keep
    }

    pub fn period(&self) -> usize {
        self.keep.len()
    }

    pub fn kept_per_period(&self) -> usize {
        self.keep.iter().filter(|&&k| k).count()
    }

    /// Deletes the masked bits; survivors keep their order.
    pub fn puncture(&self, coded: &[u8]) -> Result<Vec<u8>> {
        if !coded.len().is_multiple_of(self.period()) {
            return Err(Error::BlockLength {
                len: coded.len(),
                multiple: self.period(),
            });
        }
        Ok(coded
            .iter()
            .zip(self.keep.iter().cycle())
            .filter_map(|(&b, &k)| k.then_some(b))
            .collect())
    }

    /// Re-expands to mother-code length with erasures at deleted positions.
    pub fn depuncture(&self, bits: &[u8]) -> Result<Vec<MaybeBit>> {
        let kept = self.kept_per_period();
        if !bits.len().is_multiple_of(kept) {
            return Err(Error::BlockLength {
                len: bits.len(),
                multiple: kept,
            });
        }
        let mut out = Vec::with_capacity(bits.len() / kept * self.period());
        let mut src = bits.iter();
        while src.len() > 0 {
            for &k in &self.keep {
                out.push(if k { src.next().copied() } else { None });
            }
        }
        Ok(out)
    }
}

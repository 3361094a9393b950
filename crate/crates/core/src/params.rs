//! Link parameters, pilot geometries and the pilot-pattern metrics.
//!
//! Subcarriers are addressed by their signed index `k` relative to DC, the
//! way the 802.11 tables list them. The FFT bin of a subcarrier is
//! `k mod fft_size`.

use std::collections::BTreeSet;
use std::fmt;

use num_complex::Complex64;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::channel::ChannelSpec;
use crate::error::{Error, Result};

/// Standard 802.11a/p pilot subcarriers.
pub const STANDARD_PILOTS: [i32; 4] = [-21, -7, 7, 21];
/// Pilot polarity of the standard pattern, in ascending subcarrier order.
pub const STANDARD_POLARITY: [f64; 4] = [1.0, 1.0, 1.0, -1.0];
/// Bins activated by the six-pilot scheme: the first null bins outside the
/// used band.
pub const EXTENSION_PILOTS: [i32; 2] = [-27, 27];

/// FFT size, used subcarriers and cyclic prefix of one OFDM symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct FftGeometry {
    pub fft_size: usize,
    /// Sorted, DC excluded.
    pub used: Vec<i32>,
    pub cp_len: usize,
    pub subcarrier_spacing_hz: f64,
}

impl Default for FftGeometry {
    /// 802.11p 10 MHz channelization: 64 bins, 52 used, 16-sample CP.
    fn default() -> Self {
        Self {
            fft_size: 64,
            used: (-26..=26).filter(|&k| k != 0).collect(),
            cp_len: 16,
            subcarrier_spacing_hz: 156_250.0,
        }
    }
}

impl FftGeometry {
    pub fn new(
        fft_size: usize,
        used: Vec<i32>,
        cp_len: usize,
        subcarrier_spacing_hz: f64,
    ) -> Result<Self> {
        let g = Self {
            fft_size,
            used,
            cp_len,
            subcarrier_spacing_hz,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.fft_size < 2 {
            return Err(Error::Geometry(format!("fft_size {} too small", self.fft_size)));
        }
        if self.cp_len >= self.fft_size {
            return Err(Error::CyclicPrefix {
                cp_len: self.cp_len,
                fft_size: self.fft_size,
            });
        }
        if !(self.subcarrier_spacing_hz > 0.0) {
            return Err(Error::Geometry("subcarrier spacing must be positive".into()));
        }
        if self.used.is_empty() {
            return Err(Error::Geometry("no used subcarriers".into()));
        }
        if self.used.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Geometry("used subcarriers must be unique and sorted".into()));
        }
        for &k in &self.used {
            if k == 0 {
                return Err(Error::Geometry("DC subcarrier cannot be used".into()));
            }
            if !self.in_range(k) {
                return Err(Error::Geometry(format!(
                    "subcarrier {k} outside [-{h}, {h}-1]",
                    h = self.fft_size / 2
                )));
            }
        }
        Ok(())
    }

    pub fn in_range(&self, k: i32) -> bool {
        let half = (self.fft_size / 2) as i32;
        k >= -half && k < half
    }

    /// FFT bin holding subcarrier `k`.
    #[inline]
    pub fn bin(&self, k: i32) -> usize {
        k.rem_euclid(self.fft_size as i32) as usize
    }

    pub fn sample_rate_hz(&self) -> f64 {
        self.fft_size as f64 * self.subcarrier_spacing_hz
    }

    pub fn symbol_len(&self) -> usize {
        self.fft_size + self.cp_len
    }
}

/// Named pilot layouts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PilotSchemeKind {
    Standard4,
    Regular4,
    Extended6,
    Custom,
}

impl PilotSchemeKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Standard4 => "Standard4",
            Self::Regular4 => "Regular4",
            Self::Extended6 => "Extended6",
            Self::Custom => "Custom",
        }
    }
}

impl fmt::Display for PilotSchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for PilotSchemeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "standard4" | "standard" => Ok(Self::Standard4),
            "regular4" | "regular" => Ok(Self::Regular4),
            "extended6" | "extended" => Ok(Self::Extended6),
            "custom" => Ok(Self::Custom),
            _ => Err(Error::Config(format!("unknown pilot scheme '{s}'"))),
        }
    }
}

/// Pilot subcarrier positions with their (unit magnitude) reference values.
#[derive(Debug, Clone, PartialEq)]
pub struct PilotScheme {
    pub kind: PilotSchemeKind,
    positions: Vec<i32>,
    values: Vec<Complex64>,
}

impl PilotScheme {
    /// Positions are sorted on construction, values follow their position.
    pub fn new(kind: PilotSchemeKind, positions: Vec<i32>, values: Vec<Complex64>) -> Result<Self> {
        if positions.len() != values.len() {
            return Err(Error::Pilots(format!(
                "{} positions but {} values",
                positions.len(),
                values.len()
            )));
        }
        let mut pairs: Vec<_> = positions.into_iter().zip(values).collect();
        pairs.sort_by_key(|p| p.0);
        if pairs.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Pilots("duplicate pilot position".into()));
        }
        if let Some((k, v)) = pairs.iter().find(|(_, v)| (v.norm() - 1.0).abs() > 1e-9) {
            return Err(Error::Pilots(format!(
                "pilot at {k} has magnitude {}, expected 1",
                v.norm()
            )));
        }
        let (positions, values) = pairs.into_iter().unzip();
        Ok(Self {
            kind,
            positions,
            values,
        })
    }

    /// Pilots at -21, -7, 7, 21 with polarity +1, +1, +1, -1.
    pub fn standard4() -> Self {
        Self::with_polarity(PilotSchemeKind::Standard4, STANDARD_PILOTS.to_vec())
    }

    /// Four uniformly spaced pilots minimizing the unestimated run.
    pub fn regular4(geometry: &FftGeometry) -> Result<Self> {
        let mut s = derive_regular_pattern(geometry, 4)?;
        s.kind = PilotSchemeKind::Regular4;
        Ok(s)
    }

    /// Standard pattern plus two pilots on the null bins next to the band edges.
    pub fn extended6() -> Self {
        Self::extend(&Self::standard4(), &EXTENSION_PILOTS)
            .expect("extension bins are disjoint from the standard pilots")
    }

    /// `base` with extra +1 pilots at `extra`.
    pub fn extend(base: &PilotScheme, extra: &[i32]) -> Result<Self> {
        let mut positions = base.positions.clone();
        let mut values = base.values.clone();
        positions.extend_from_slice(extra);
        values.extend(extra.iter().map(|_| Complex64::new(1.0, 0.0)));
        Self::new(PilotSchemeKind::Extended6, positions, values)
    }

    /// Custom positions with the standard polarity sequence repeated.
    pub fn custom(positions: Vec<i32>) -> Result<Self> {
        let mut positions = positions;
        positions.sort_unstable();
        let values = polarity(positions.len());
        Self::new(PilotSchemeKind::Custom, positions, values)
    }

    fn with_polarity(kind: PilotSchemeKind, positions: Vec<i32>) -> Self {
        let values = polarity(positions.len());
        Self::new(kind, positions, values).expect("valid built-in pilot scheme")
    }

    pub fn positions(&self) -> &[i32] {
        &self.positions
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Checks that every pilot is a transmittable bin of `geometry`: inside
    /// the FFT, off DC, with room left for the extra activated bins.
    pub fn validate_for(&self, geometry: &FftGeometry) -> Result<()> {
        for &k in &self.positions {
            if k == 0 || !geometry.in_range(k) {
                return Err(Error::Pilots(format!(
                    "subcarrier {k} is not a transmitted bin"
                )));
            }
        }
        let active = active_subcarriers(geometry, self);
        if active.len() > geometry.fft_size - 1 {
            return Err(Error::Pilots(format!(
                "{} active subcarriers exceed fft_size - 1",
                active.len()
            )));
        }
        Ok(())
    }
}

fn polarity(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|i| Complex64::new(STANDARD_POLARITY[i % STANDARD_POLARITY.len()], 0.0))
        .collect()
}

/// Sorted union of the used subcarriers and the pilot positions.
pub fn active_subcarriers(geometry: &FftGeometry, pilots: &PilotScheme) -> Vec<i32> {
    let set: BTreeSet<i32> = geometry
        .used
        .iter()
        .chain(pilots.positions.iter())
        .copied()
        .collect();
    set.into_iter().collect()
}

/// Used subcarriers that carry data, ascending.
pub fn data_subcarriers(geometry: &FftGeometry, pilots: &PilotScheme) -> Vec<i32> {
    geometry
        .used
        .iter()
        .copied()
        .filter(|k| pilots.positions.binary_search(k).is_err())
        .collect()
}

/// Longest stretch of consecutive active non-pilot subcarriers.
///
/// Consecutive means adjacent in the sorted active list, so the DC hole does
/// not break a run, and null guard bins never contribute.
pub fn max_unestimated_run(geometry: &FftGeometry, pilots: &PilotScheme) -> Result<usize> {
    pilots.validate_for(geometry)?;
    let active = active_subcarriers(geometry, pilots);
    Ok(longest_gap(&active, pilots.positions()))
}

fn longest_gap(active: &[i32], pilots: &[i32]) -> usize {
    let mut best = 0;
    let mut run = 0;
    for k in active {
        if pilots.binary_search(k).is_ok() {
            run = 0;
        } else {
            run += 1;
            best = best.max(run);
        }
    }
    best
}

/// Uniformly spaced pilot pattern over the used-subcarrier list.
///
/// Enumerates every `(offset, stride)` placement of `n_pilots` pilots on the
/// ordered used list and keeps the one with the shortest unestimated run.
/// Ties go to the placement most symmetric about DC, then to the smallest
/// offset.
pub fn derive_regular_pattern(geometry: &FftGeometry, n_pilots: usize) -> Result<PilotScheme> {
    geometry.validate()?;
    let used = &geometry.used;
    let n = used.len();
    if n_pilots == 0 || n_pilots > n {
        return Err(Error::Pilots(format!(
            "cannot place {n_pilots} pilots on {n} used subcarriers"
        )));
    }
    let max_stride = if n_pilots == 1 { 1 } else { (n - 1) / (n_pilots - 1) };
    let mut best: Option<((usize, i64, usize), Vec<i32>)> = None;
    for stride in 1..=max_stride {
        let span = stride * (n_pilots - 1);
        for offset in 0..n - span {
            let positions: Vec<i32> = (0..n_pilots).map(|i| used[offset + i * stride]).collect();
            let run = longest_gap(used, &positions);
            let asymmetry: i64 = (0..n_pilots)
                .map(|i| (positions[i] as i64 + positions[n_pilots - 1 - i] as i64).abs())
                .sum();
            let key = (run, asymmetry, offset);
            if best.as_ref().is_none_or(|(b, _)| key < *b) {
                best = Some((key, positions));
            }
        }
    }
    let (_, positions) = best.expect("at least one placement exists");
    let values = polarity(positions.len());
    PilotScheme::new(PilotSchemeKind::Custom, positions, values)
}

/// Pilot overhead as exact fractions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PilotOverhead {
    /// Pilots over the nominal used-subcarrier count (52 by default).
    pub per_used: Ratio<u32>,
    /// Pilots over pilots plus data subcarriers.
    pub per_occupied: Ratio<u32>,
}

impl PilotOverhead {
    pub fn value(&self) -> f64 {
        ratio_f64(self.per_used)
    }

    /// Three decimals, truncated, the way the overhead is usually quoted.
    pub fn reported(&self) -> f64 {
        (self.value() * 1000.0).floor() / 1000.0
    }
}

pub(crate) fn ratio_f64(r: Ratio<u32>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Spectral efficiency cost of the pilots.
pub fn spectral_efficiency_pilots(pilots: &PilotScheme, geometry: &FftGeometry) -> PilotOverhead {
    let n = pilots.len() as u32;
    let data = data_subcarriers(geometry, pilots).len() as u32;
    PilotOverhead {
        per_used: Ratio::new(n, geometry.used.len() as u32),
        per_occupied: if n + data == 0 {
            Ratio::from_integer(0)
        } else {
            Ratio::new(n, n + data)
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Modulation {
    Bpsk,
    Qpsk,
    Qam16,
    Qam64,
}

impl Modulation {
    pub const ALL: [Modulation; 4] = [Self::Bpsk, Self::Qpsk, Self::Qam16, Self::Qam64];

    pub fn bits_per_symbol(self) -> usize {
        match self {
            Self::Bpsk => 1,
            Self::Qpsk => 2,
            Self::Qam16 => 4,
            Self::Qam64 => 6,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Bpsk => "BPSK",
            Self::Qpsk => "QPSK",
            Self::Qam16 => "16QAM",
            Self::Qam64 => "64QAM",
        }
    }
}

impl fmt::Display for Modulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Modulation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().replace(['-', '_'], "").as_str() {
            "BPSK" => Ok(Self::Bpsk),
            "QPSK" => Ok(Self::Qpsk),
            "16QAM" | "QAM16" => Ok(Self::Qam16),
            "64QAM" | "QAM64" => Ok(Self::Qam64),
            _ => Err(Error::Config(format!("unknown modulation '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CodeRate {
    R12,
    R23,
    R34,
}

impl CodeRate {
    pub fn ratio(self) -> Ratio<u32> {
        match self {
            Self::R12 => Ratio::new(1, 2),
            Self::R23 => Ratio::new(2, 3),
            Self::R34 => Ratio::new(3, 4),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::R12 => "1/2",
            Self::R23 => "2/3",
            Self::R34 => "3/4",
        }
    }
}

impl fmt::Display for CodeRate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for CodeRate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "1/2" | "R12" | "12" => Ok(Self::R12),
            "2/3" | "R23" | "23" => Ok(Self::R23),
            "3/4" | "R34" | "34" => Ok(Self::R34),
            _ => Err(Error::Config(format!("unknown code rate '{s}'"))),
        }
    }
}

/// One of the eight 802.11p modulation and coding schemes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct McsScheme {
    modulation: Modulation,
    code_rate: CodeRate,
}

impl McsScheme {
    pub fn new(modulation: Modulation, code_rate: CodeRate) -> Result<Self> {
        use CodeRate::*;
        use Modulation::*;
        let ok = matches!(
            (modulation, code_rate),
            (Bpsk, R12)
                | (Bpsk, R34)
                | (Qpsk, R12)
                | (Qpsk, R34)
                | (Qam16, R12)
                | (Qam16, R34)
                | (Qam64, R23)
                | (Qam64, R34)
        );
        if ok {
            Ok(Self {
                modulation,
                code_rate,
            })
        } else {
            Err(Error::Mcs(format!("{modulation} at rate {code_rate}")))
        }
    }

    /// All eight schemes, ordered by data rate.
    pub fn all() -> Vec<McsScheme> {
        use CodeRate::*;
        use Modulation::*;
        [
            (Bpsk, R12),
            (Bpsk, R34),
            (Qpsk, R12),
            (Qpsk, R34),
            (Qam16, R12),
            (Qam16, R34),
            (Qam64, R23),
            (Qam64, R34),
        ]
        .into_iter()
        .map(|(m, r)| Self::new(m, r).unwrap())
        .collect()
    }

    pub fn modulation(&self) -> Modulation {
        self.modulation
    }

    pub fn code_rate(&self) -> CodeRate {
        self.code_rate
    }

    /// Short label such as `16QAM-1/2`.
    pub fn label(&self) -> String {
        format!("{}-{}", self.modulation, self.code_rate)
    }
}

impl fmt::Display for McsScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.modulation, self.code_rate)
    }
}

impl std::str::FromStr for McsScheme {
    type Err = Error;

    /// Parses `BPSK-1/2`, `64QAM-3/4`, ...
    fn from_str(s: &str) -> Result<Self> {
        let (m, r) = s
            .split_once(['-', ':', ' '])
            .ok_or_else(|| Error::Config(format!("expected MODULATION-RATE, got '{s}'")))?;
        Self::new(m.parse()?, r.parse()?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EstimatorKind {
    Ls,
    Mmse,
    /// Genie receiver handed the true frequency response.
    Ideal,
}

impl EstimatorKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Ls => "LS",
            Self::Mmse => "MMSE",
            Self::Ideal => "IDEAL",
        }
    }
}

impl fmt::Display for EstimatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for EstimatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ls" => Ok(Self::Ls),
            "mmse" | "lmmse" => Ok(Self::Mmse),
            "ideal" | "perfect" => Ok(Self::Ideal),
            _ => Err(Error::Config(format!("unknown estimator '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Interpolation {
    Linear,
    DftBased,
}

impl std::str::FromStr for Interpolation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "linear" => Ok(Self::Linear),
            "dft" | "dftbased" | "dft_based" => Ok(Self::DftBased),
            _ => Err(Error::Config(format!("unknown interpolation '{s}'"))),
        }
    }
}

/// Which reference symbols feed the estimator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EstimateSource {
    /// Per-symbol comb pilots, interpolated over the data bins.
    CombPilots,
    /// Once per frame from the two long training symbols.
    LtsBlock,
}

impl std::str::FromStr for EstimateSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "comb" | "combpilots" | "pilots" => Ok(Self::CombPilots),
            "lts" | "ltsblock" | "block" => Ok(Self::LtsBlock),
            _ => Err(Error::Config(format!("unknown estimate source '{s}'"))),
        }
    }
}

/// Whether the scrambler, convolutional code and puncturing are in the chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Coding {
    Convolutional,
    Uncoded,
}

impl std::str::FromStr for Coding {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "convolutional" | "coded" => Ok(Self::Convolutional),
            "uncoded" | "none" => Ok(Self::Uncoded),
            _ => Err(Error::Config(format!("unknown coding '{s}'"))),
        }
    }
}

/// Full parameterization of one simulated link.
#[derive(Debug, Clone, PartialEq)]
pub struct PhyConfig {
    pub geometry: FftGeometry,
    pub pilots: PilotScheme,
    pub mcs: McsScheme,
    pub channel: ChannelSpec,
    pub estimator: EstimatorKind,
    pub interpolation: Interpolation,
    pub source: EstimateSource,
    pub coding: Coding,
    pub total_bits: u64,
    pub rng_seed: u64,
    /// Payload bits carried by one frame (the block-fading unit).
    pub frame_bits: usize,
    pub scrambler_seed: u8,
    /// Diagonal loading added to the MMSE system; `None` disables it.
    pub mmse_loading: Option<f64>,
    /// Largest condition number accepted for the MMSE solve.
    pub max_condition: f64,
}

impl Default for PhyConfig {
    fn default() -> Self {
        Self {
            geometry: FftGeometry::default(),
            pilots: PilotScheme::standard4(),
            mcs: McsScheme::new(Modulation::Qpsk, CodeRate::R12).unwrap(),
            channel: ChannelSpec::default(),
            estimator: EstimatorKind::Mmse,
            interpolation: Interpolation::Linear,
            source: EstimateSource::CombPilots,
            coding: Coding::Convolutional,
            total_bits: 100_000,
            rng_seed: 1,
            frame_bits: 800,
            scrambler_seed: 0b101_1101,
            mmse_loading: None,
            max_condition: 1e12,
        }
    }
}

impl PhyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.total_bits == 0 {
            return Err(Error::Config("total_bits must be positive".into()));
        }
        if self.frame_bits == 0 {
            return Err(Error::Config("frame_bits must be positive".into()));
        }
        if self.scrambler_seed == 0 || self.scrambler_seed > 0x7f {
            return Err(Error::ScramblerState(self.scrambler_seed));
        }
        self.geometry.validate()?;
        self.pilots.validate_for(&self.geometry)?;
        self.channel.validate(self.geometry.cp_len)?;
        let n_data = data_subcarriers(&self.geometry, &self.pilots).len();
        if n_data == 0 {
            return Err(Error::Pilots("no data subcarriers left".into()));
        }
        let n_cbps = n_data * self.mcs.modulation().bits_per_symbol();
        if !n_cbps.is_multiple_of(16) {
            return Err(Error::Config(format!(
                "{n_cbps} coded bits per symbol is not a multiple of 16 (interleaver)"
            )));
        }
        if self.coding == Coding::Convolutional {
            let kept = crate::bitpipe::PunctureMap::for_rate(self.mcs.code_rate()).kept_per_period();
            if !n_cbps.is_multiple_of(kept) {
                return Err(Error::Config(format!(
                    "{n_cbps} coded bits per symbol incompatible with rate {}",
                    self.mcs.code_rate()
                )));
            }
        }
        if !(self.max_condition > 1.0) {
            return Err(Error::Config("max_condition must exceed 1".into()));
        }
        Ok(())
    }

    pub fn data_subcarriers(&self) -> Vec<i32> {
        data_subcarriers(&self.geometry, &self.pilots)
    }

    /// Coded bits per OFDM symbol.
    pub fn n_cbps(&self) -> usize {
        self.data_subcarriers().len() * self.mcs.modulation().bits_per_symbol()
    }

    /// Information bits per OFDM symbol.
    pub fn n_dbps(&self) -> usize {
        match self.coding {
            Coding::Uncoded => self.n_cbps(),
            Coding::Convolutional => {
                let r = self.mcs.code_rate().ratio();
                self.n_cbps() * *r.numer() as usize / *r.denom() as usize
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_geometry_has_52_used() {
        let g = FftGeometry::default();
        assert_eq!(g.used.len(), 52);
        assert!(!g.used.contains(&0));
        assert_eq!(g.bin(-1), 63);
        assert_eq!(g.bin(26), 26);
        g.validate().unwrap();
    }

    #[test]
    fn geometry_rejects_dc_and_out_of_range() {
        assert!(FftGeometry::new(64, vec![-1, 0, 1], 16, 1.0).is_err());
        assert!(FftGeometry::new(64, vec![-33, 1], 16, 1.0).is_err());
        assert!(FftGeometry::new(64, vec![1, -1], 16, 1.0).is_err());
        assert!(FftGeometry::new(64, vec![-1, 1], 64, 1.0).is_err());
    }

    #[test]
    fn standard_run_is_13() {
        let g = FftGeometry::default();
        assert_eq!(max_unestimated_run(&g, &PilotScheme::standard4()).unwrap(), 13);
    }

    #[test]
    fn all_pilots_run_is_zero() {
        let g = FftGeometry::default();
        let p = PilotScheme::custom(g.used.clone()).unwrap();
        assert_eq!(max_unestimated_run(&g, &p).unwrap(), 0);
    }

    #[test]
    fn pilot_on_dc_is_rejected() {
        let g = FftGeometry::default();
        let p = PilotScheme::custom(vec![0, 7]).unwrap();
        assert!(max_unestimated_run(&g, &p).is_err());
        let p = PilotScheme::custom(vec![-40, 7]).unwrap();
        assert!(max_unestimated_run(&g, &p).is_err());
    }

    #[test]
    fn toy_geometry_single_pilot_goes_to_middle() {
        let g = FftGeometry::new(8, vec![-1, 1, 2], 2, 1.0).unwrap();
        let p = derive_regular_pattern(&g, 1).unwrap();
        assert_eq!(p.positions(), &[1]);
        assert_eq!(max_unestimated_run(&g, &p).unwrap(), 1);
    }

    #[test]
    fn regular_pattern_with_every_bin() {
        let g = FftGeometry::default();
        let p = derive_regular_pattern(&g, 52).unwrap();
        assert_eq!(p.positions(), g.used.as_slice());
        assert_eq!(max_unestimated_run(&g, &p).unwrap(), 0);
    }

    #[test]
    fn regular4_is_symmetric() {
        let g = FftGeometry::default();
        let p = PilotScheme::regular4(&g).unwrap();
        assert_eq!(p.positions(), &[-17, -6, 6, 17]);
        assert_eq!(max_unestimated_run(&g, &p).unwrap(), 10);
    }

    #[test]
    fn regular_pattern_rejects_bad_counts() {
        let g = FftGeometry::default();
        assert!(derive_regular_pattern(&g, 0).is_err());
        assert!(derive_regular_pattern(&g, 53).is_err());
    }

    #[test]
    fn extended6_keeps_48_data() {
        let g = FftGeometry::default();
        let p = PilotScheme::extended6();
        assert_eq!(p.len(), 6);
        assert_eq!(data_subcarriers(&g, &p).len(), 48);
        assert_eq!(active_subcarriers(&g, &p).len(), 54);
    }

    #[test]
    fn overhead_values() {
        let g = FftGeometry::default();
        let s = spectral_efficiency_pilots(&PilotScheme::standard4(), &g);
        assert_eq!(s.per_used, Ratio::new(1, 13));
        assert_eq!(s.reported(), 0.076);
        let e = spectral_efficiency_pilots(&PilotScheme::extended6(), &g);
        assert_eq!(e.per_used, Ratio::new(3, 26));
        assert_eq!(e.reported(), 0.115);
        assert_eq!(e.per_occupied, Ratio::new(6, 54));
        let none = PilotScheme::custom(vec![]).unwrap();
        assert_eq!(spectral_efficiency_pilots(&none, &g).value(), 0.0);
    }

    #[test]
    fn mcs_table() {
        assert_eq!(McsScheme::all().len(), 8);
        assert!(McsScheme::new(Modulation::Qam64, CodeRate::R12).is_err());
        assert!(McsScheme::new(Modulation::Bpsk, CodeRate::R23).is_err());
        let m: McsScheme = "16QAM-3/4".parse().unwrap();
        assert_eq!(m.modulation(), Modulation::Qam16);
        assert_eq!(m.to_string(), "16QAM-3/4");
    }

    #[test]
    fn pilot_values_must_be_unit() {
        let r = PilotScheme::new(
            PilotSchemeKind::Custom,
            vec![1],
            vec![Complex64::new(0.5, 0.0)],
        );
        assert!(r.is_err());
        let r = PilotScheme::new(PilotSchemeKind::Custom, vec![1, 1], polarity(2));
        assert!(r.is_err());
    }

    #[test]
    fn default_config_is_valid() {
        let c = PhyConfig::default();
        c.validate().unwrap();
        assert_eq!(c.n_cbps(), 96);
        assert_eq!(c.n_dbps(), 48);
    }
}

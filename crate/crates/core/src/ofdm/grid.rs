use crate::error::{Error, Result};
use crate::params::{active_subcarriers, data_subcarriers, FftGeometry, PilotScheme};
use crate::scalar::{Cpx, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinRole {
    Data,
    Pilot,
    Null,
}

/// Role of every FFT bin for one `(geometry, pilot scheme)` pair.
#[derive(Debug, Clone, PartialEq)]
pub struct SubcarrierLayout<T: Real> {
    fft_size: usize,
    data: Vec<i32>,
    pilots: Vec<i32>,
    pilot_values: Vec<Cpx<T>>,
    active: Vec<i32>,
    roles: Vec<BinRole>,
}

impl<T: Real> SubcarrierLayout<T> {
    pub fn new(geometry: &FftGeometry, scheme: &PilotScheme) -> Result<Self> {
        geometry.validate()?;
        scheme.validate_for(geometry)?;
        let data = data_subcarriers(geometry, scheme);
        let mut roles = vec![BinRole::Null; geometry.fft_size];
        for &k in &data {
            roles[geometry.bin(k)] = BinRole::Data;
        }
        for &k in scheme.positions() {
            roles[geometry.bin(k)] = BinRole::Pilot;
        }
        Ok(Self {
            fft_size: geometry.fft_size,
            data,
            pilots: scheme.positions().to_vec(),
            pilot_values: scheme
                .values()
                .iter()
                .map(|v| Cpx::new(T::lit(v.re), T::lit(v.im)))
                .collect(),
            active: active_subcarriers(geometry, scheme),
            roles,
        })
    }

    pub fn fft_size(&self) -> usize {
        self.fft_size
    }

    /// Data subcarriers, ascending.
    pub fn data(&self) -> &[i32] {
        &self.data
    }

    pub fn pilots(&self) -> &[i32] {
        &self.pilots
    }

    pub fn pilot_values(&self) -> &[Cpx<T>] {
        &self.pilot_values
    }

    /// Data and pilot subcarriers, ascending.
    pub fn active(&self) -> &[i32] {
        &self.active
    }

    pub fn roles(&self) -> &[BinRole] {
        &self.roles
    }

    #[inline]
    pub fn bin(&self, k: i32) -> usize {
        k.rem_euclid(self.fft_size as i32) as usize
    }
}

/// One OFDM symbol in the frequency domain, indexed by FFT bin.
#[derive(Debug, Clone, PartialEq)]
pub struct OfdmGrid<T: Real> {
    bins: Vec<Cpx<T>>,
    roles: Vec<BinRole>,
}

impl<T: Real> OfdmGrid<T> {
    pub fn from_bins(bins: Vec<Cpx<T>>, roles: Vec<BinRole>) -> Result<Self> {
        if bins.len() != roles.len() {
            return Err(Error::Count {
                expected: roles.len(),
                got: bins.len(),
            });
        }
        Ok(Self { bins, roles })
    }

    pub fn fft_size(&self) -> usize {
        self.bins.len()
    }

    pub fn bins(&self) -> &[Cpx<T>] {
        &self.bins
    }

    pub fn roles(&self) -> &[BinRole] {
        &self.roles
    }

    /// Value on signed subcarrier `k`.
    #[inline]
    pub fn at(&self, k: i32) -> Cpx<T> {
        self.bins[k.rem_euclid(self.bins.len() as i32) as usize]
    }

    pub fn role(&self, k: i32) -> BinRole {
        self.roles[k.rem_euclid(self.bins.len() as i32) as usize]
    }

    pub fn into_bins(self) -> Vec<Cpx<T>> {
        self.bins
    }
}

/// Places data on the data bins (ascending subcarrier order) and the pilot
/// values on the pilot bins; every other bin is zero.
pub fn assemble_grid<T: Real>(data: &[Cpx<T>], layout: &SubcarrierLayout<T>) -> Result<OfdmGrid<T>> {
    if data.len() != layout.data().len() {
        return Err(Error::Count {
            expected: layout.data().len(),
            got: data.len(),
        });
    }
    let mut bins = vec![Cpx::new(T::zero(), T::zero()); layout.fft_size()];
    for (&k, &d) in layout.data().iter().zip(data) {
        bins[layout.bin(k)] = d;
    }
    for (&k, &p) in layout.pilots().iter().zip(layout.pilot_values()) {
        bins[layout.bin(k)] = p;
    }
    OfdmGrid::from_bins(bins, layout.roles().to_vec())
}

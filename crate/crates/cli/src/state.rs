//! State files: a system descriptor plus amplitudes or density-matrix entries.

use qmarginal::catalog::Spectra;
use qmarginal::fermion::{one_rdm, one_rdm_mixed, FermionBasis, FermionState};
use qmarginal::tensor::{CMatrix, DensityMatrix, PureState, C64};
use qmarginal::{Error, Result, System};
use serde::{Deserialize, Serialize};

pub const STATE_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub version: u32,
    pub system: System,
    /// Pure-state amplitudes as `[re, im]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitudes: Option<Vec<[f64; 2]>>,
    /// Density-matrix rows of `[re, im]` entries.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

fn complex(v: &[[f64; 2]]) -> Vec<C64> {
    v.iter().map(|&[re, im]| C64::new(re, im)).collect()
}

impl StateFile {
    pub fn pure(system: System, amps: &[C64], seed: Option<u64>) -> Self {
        Self { version: STATE_VERSION, system, amplitudes: Some(amps.iter().map(|a| [a.re, a.im]).collect()), matrix: None, seed }
    }

    fn global_dim(&self) -> Result<usize> {
        match &self.system {
            System::Tensor { dims, .. } => Ok(dims.iter().product()),
            System::Fermion { r, n, .. } => Ok(FermionBasis::new(*r, *n)?.dim()),
            System::Correlations => Err(Error::UnknownSystem("correlations have no state".into())),
        }
    }

    fn density(&self, dims: Vec<usize>) -> Result<DensityMatrix> {
        let rows = self.matrix.as_ref().expect("checked by caller");
        let d: usize = dims.iter().product();
        if rows.len() != d || rows.iter().any(|r| r.len() != d) {
            return Err(Error::DimensionMismatch(format!("matrix is not {d}x{d}")));
        }
        let flat: Vec<C64> = rows.iter().flat_map(|r| complex(r)).collect();
        DensityMatrix::state(CMatrix::from_row_slice(d, d, &flat), dims)
    }

    /// Marginal spectra: one per tensor factor, or the one-particle spectrum.
    pub fn spectra(&self) -> Result<Spectra> {
        if self.version != STATE_VERSION {
            return Err(Error::Unsupported(format!("state file version {}", self.version)));
        }
        let d = self.global_dim()?;
        match (&self.amplitudes, &self.matrix, &self.system) {
            (Some(a), None, System::Tensor { dims, mixed: false }) => {
                let psi = PureState::new(complex(a), dims.clone())?;
                Ok(Spectra::pure(psi.site_spectra()?.into_iter().map(|s| s.into_values()).collect()))
            }
            (Some(a), None, System::Fermion { r, n, mixed: false }) => {
                let psi = FermionState::new(*r, *n, complex(a))?;
                Ok(Spectra::single(one_rdm(&psi).spectrum()?.into_values()))
            }
            (None, Some(_), System::Tensor { dims, mixed: true }) => {
                let rho = self.density(dims.clone())?;
                let sites = (0..dims.len())
                    .map(|k| Ok(rho.partial_trace(&[k])?.spectrum()?.into_values()))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Spectra::mixed(sites, rho.spectrum()?.into_values()))
            }
            (None, Some(_), System::Fermion { r, n, mixed: true }) => {
                let rho = self.density(vec![d])?;
                let site = one_rdm_mixed(&FermionBasis::new(*r, *n)?, &rho)?.spectrum()?.into_values();
                Ok(Spectra::mixed(vec![site], rho.spectrum()?.into_values()))
            }
            _ => Err(Error::DimensionMismatch(format!(
                "{} needs {}",
                self.system,
                if self.system.is_mixed() { "a matrix" } else { "amplitudes" }
            ))),
        }
    }
}

//! Runtime-selectable spectrum models.
//!
//! Each entry computes periodic-zone and strip spectra behind one trait, so
//! the command-line layer can resolve `--model` by name and drive every
//! model through the same sweep code.

use crate::error::CoreError;
use crate::floquet;
use crate::numerics::hermitian_eig;
use crate::params::{ModelParams, MomentumPoint, OpenDirection};
use crate::spectrum::{SpectrumKind, SpectrumTable, StripSpectrum};
use crate::staticlat;

/// A family member producing eigenvalue tables over momentum space.
pub trait SpectrumModel: Sync {
    /// Registry name, also the CLI `--model` value.
    fn name(&self) -> &'static str;
    /// Values per momentum point with periodic boundaries.
    fn bands(&self) -> usize;
    fn kind(&self) -> SpectrumKind;
    /// Sorted eigenvalues at one periodic-zone momentum, units 1/T.
    fn pbc_values(&self, k: MomentumPoint, p: &ModelParams) -> Result<Vec<f64>, CoreError>;
    /// Strip spectrum over a grid of conserved momenta.
    fn strip(
        &self,
        grid: &[f64],
        open: OpenDirection,
        p: &ModelParams,
        with_states: bool,
    ) -> Result<StripSpectrum, CoreError>;
}

/// The driven model, spectra from the one-period evolution operator.
pub struct DrivenModel;

impl SpectrumModel for DrivenModel {
    fn name(&self) -> &'static str {
        "floquet"
    }

    fn bands(&self) -> usize {
        2
    }

    fn kind(&self) -> SpectrumKind {
        SpectrumKind::FloquetQuasienergy
    }

    fn pbc_values(&self, k: MomentumPoint, p: &ModelParams) -> Result<Vec<f64>, CoreError> {
        let (ep, em) = floquet::quasienergy_numeric(k, p)?;
        Ok(vec![em, ep])
    }

    fn strip(
        &self,
        grid: &[f64],
        open: OpenDirection,
        p: &ModelParams,
        with_states: bool,
    ) -> Result<StripSpectrum, CoreError> {
        floquet::strip_quasienergies(grid, p, open, with_states)
    }
}

/// One static discrete-time variant.
pub struct StaticModel {
    variant: crate::params::Variant,
    name: &'static str,
}

impl StaticModel {
    const fn new(variant: crate::params::Variant, name: &'static str) -> Self {
        Self { variant, name }
    }

    fn with_variant(&self, p: &ModelParams) -> ModelParams {
        ModelParams {
            variant: self.variant,
            ..*p
        }
    }
}

impl SpectrumModel for StaticModel {
    fn name(&self) -> &'static str {
        self.name
    }

    fn bands(&self) -> usize {
        4
    }

    fn kind(&self) -> SpectrumKind {
        SpectrumKind::StaticEnergy
    }

    fn pbc_values(&self, k: MomentumPoint, p: &ModelParams) -> Result<Vec<f64>, CoreError> {
        let h = staticlat::hs_bloch(k, &self.with_variant(p))?;
        Ok(hermitian_eig(&h)?.values)
    }

    fn strip(
        &self,
        grid: &[f64],
        open: OpenDirection,
        p: &ModelParams,
        with_states: bool,
    ) -> Result<StripSpectrum, CoreError> {
        staticlat::strip_energies(grid, &self.with_variant(p), open, with_states)
    }
}

static DRIVEN: DrivenModel = DrivenModel;
static STATIC_A: StaticModel = StaticModel::new(crate::params::Variant::A, "static-a");
static STATIC_B: StaticModel = StaticModel::new(crate::params::Variant::B, "static-b");

/// All registered models.
pub fn registry() -> [&'static dyn SpectrumModel; 3] {
    [&DRIVEN, &STATIC_A, &STATIC_B]
}

/// Resolve a model by registry name.
pub fn lookup(name: &str) -> Result<&'static dyn SpectrumModel, CoreError> {
    registry()
        .into_iter()
        .find(|m| m.name() == name)
        .ok_or_else(|| CoreError::UnknownModel(name.to_string()))
}

/// Periodic-zone sweep over an even n x n momentum grid, k+ major.
pub fn pbc_table(
    model: &dyn SpectrumModel,
    grid_n: usize,
    p: &ModelParams,
) -> Result<SpectrumTable, CoreError> {
    let grid = crate::params::momentum_grid(grid_n);
    let mut points = Vec::with_capacity(grid_n * grid_n);
    let mut values = Vec::with_capacity(grid_n * grid_n);
    for &kp in &grid {
        for &km in &grid {
            let k = MomentumPoint::new(kp, km);
            points.push(k);
            values.push(model.pbc_values(k, p)?);
        }
    }
    Ok(SpectrumTable {
        kind: model.kind(),
        points,
        values,
    })
}

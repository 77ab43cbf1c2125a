//! Spectrum containers produced by the sweep drivers.

use crate::numerics::{ComplexMatrix, C64};
use crate::params::{MomentumPoint, OpenDirection};

/// What the eigenvalues in a table mean, and therefore where its gap sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumKind {
    /// Drive quasienergies in (-pi/T, pi/T]; the topological gap is at pi/T.
    FloquetQuasienergy,
    /// Static discrete-time energies; the gap is at zero.
    StaticEnergy,
}

/// Per-momentum eigenvalue lists over the periodic Brillouin zone.
///
/// `values[i]` is sorted ascending and has the same length at every point.
/// All entries are in units of 1/T.
#[derive(Debug, Clone)]
pub struct SpectrumTable {
    pub kind: SpectrumKind,
    pub points: Vec<MomentumPoint>,
    pub values: Vec<Vec<f64>>,
}

impl SpectrumTable {
    pub fn bands(&self) -> usize {
        self.values.first().map_or(0, Vec::len)
    }
}

/// Eigenvalues (and optionally eigenvectors) of a strip, indexed by the
/// conserved momentum along the periodic direction.
#[derive(Debug, Clone)]
pub struct StripSpectrum {
    pub kind: SpectrumKind,
    pub open: OpenDirection,
    /// Transverse cell count.
    pub cells: usize,
    /// Conserved momenta, one entry per column of `values`.
    pub momenta: Vec<f64>,
    /// Sorted eigenvalues at each momentum, in units of 1/T.
    pub values: Vec<Vec<f64>>,
    /// Eigenvector columns matching `values`, when requested.
    pub states: Option<Vec<ComplexMatrix>>,
}

impl StripSpectrum {
    pub fn levels(&self) -> usize {
        self.values.first().map_or(0, Vec::len)
    }

    /// Probability weight per transverse cell for one eigenstate.
    ///
    /// Works for both layouts used in this crate: the driven strip stores
    /// (cell, sublattice) and the static strip stores (x+ sublattice) x
    /// (chain index), so in either case consecutive pairs of chain-side
    /// components belong to one cell.
    pub fn cell_density(&self, point: usize, state: usize) -> Option<Vec<f64>> {
        let states = self.states.as_ref()?;
        let m = &states[point];
        Some(density_per_cell(self.kind, self.cells, &m.column(state)))
    }
}

/// Collapse one eigenvector onto transverse-cell probability weights.
///
/// The driven strip stores components as (cell, sublattice); the static
/// strip as (x+ sublattice) x (chain index). In both layouts consecutive
/// pairs of chain-side components belong to one cell.
pub fn density_per_cell(kind: SpectrumKind, cells: usize, column: &[C64]) -> Vec<f64> {
    let dim = column.len();
    let mut density = vec![0.0; cells];
    for (i, z) in column.iter().enumerate() {
        let cell = match kind {
            SpectrumKind::FloquetQuasienergy => i / 2,
            SpectrumKind::StaticEnergy => (i % (dim / 2)) / 2,
        };
        density[cell] += z.norm_sqr();
    }
    density
}

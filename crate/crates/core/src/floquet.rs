//! The four-step driven square-lattice model.
//!
//! One drive period applies four hopping pulses, each connecting the A
//! sublattice to one of its four B neighbors for a quarter period. In the
//! periodic gauge the Bloch phase of step n depends only on the unit-cell
//! displacement d_n of the target B site, with
//!
//! ```text
//! d_1 = ( 0,  0)    d_2 = ( 0, -1)    d_3 = (-1, -1)    d_4 = (-1,  0)
//! ```
//!
//! in (x+, x-) cell units. Integer displacements make strip truncation
//! unambiguous; the spectrum is gauge invariant.

use std::f64::consts::PI;

use crate::error::CoreError;
use crate::numerics::{unitary_eigenphases, ComplexMatrix, C64};
use crate::params::{ModelParams, MomentumPoint, OpenDirection};
use crate::spectrum::{SpectrumKind, StripSpectrum};

/// Unit-cell displacement of the B partner during steps 1..4.
pub const STEP_CELL_SHIFTS: [(i32, i32); 4] = [(0, 0), (0, -1), (-1, -1), (-1, 0)];

fn step_phase(step: usize, k: MomentumPoint) -> f64 {
    let (dp, dm) = STEP_CELL_SHIFTS[step - 1];
    k.k_plus * dp as f64 + k.k_minus * dm as f64
}

/// Bloch Hamiltonian of one drive step: J (e^{i k.d_n} sigma_+ + h.c.).
///
/// Hermitian, zero diagonal, off-diagonal magnitude J for every momentum.
pub fn step_bloch_hamiltonian(
    step: usize,
    k: MomentumPoint,
    p: &ModelParams,
) -> Result<ComplexMatrix, CoreError> {
    if !(1..=4).contains(&step) {
        return Err(CoreError::InvalidStep(step));
    }
    let phi = step_phase(step, k);
    let j = p.hopping();
    let z = C64::new(0.0, 0.0);
    Ok(ComplexMatrix::two_by_two(
        z,
        C64::from_polar(j, phi),
        C64::from_polar(j, -phi),
        z,
    ))
}

/// One quarter-period pulse in Bloch form:
/// cos(JT/4) - i sin(JT/4) [cos(phi) sigma_x - sin(phi) sigma_y].
fn step_unitary(theta: f64, phi: f64) -> ComplexMatrix {
    let c = C64::new(theta.cos(), 0.0);
    let s = C64::new(0.0, -theta.sin());
    ComplexMatrix::two_by_two(
        c,
        s * C64::from_polar(1.0, phi),
        s * C64::from_polar(1.0, -phi),
        c,
    )
}

/// One-period Bloch evolution operator U(T) = U4 U3 U2 U1.
pub fn floquet_bloch(k: MomentumPoint, p: &ModelParams) -> ComplexMatrix {
    let theta = p.jt / 4.0;
    let mut u = ComplexMatrix::identity(2);
    for step in 1..=4 {
        u = &step_unitary(theta, step_phase(step, k)) * &u;
    }
    u
}

/// Right-hand side of the closed-form dispersion: cos(eps T) as a function of
/// momentum,
///
/// ```text
/// cos(eps T) = [3 + cos JT - (1 - cos JT)(cos k+ + cos k- + cos k+ cos k-)] / 4
/// ```
pub fn quasienergy_rhs(k: MomentumPoint, p: &ModelParams) -> f64 {
    let c = p.jt.cos();
    let (u, v) = (k.k_plus.cos(), k.k_minus.cos());
    0.25 * (3.0 + c - (1.0 - c) * (u + v + u * v))
}

/// Closed-form quasienergy pair (eps_+, eps_-) with eps_+ in [0, pi/T] and
/// eps_- = -eps_+.
pub fn quasienergy_analytic(k: MomentumPoint, p: &ModelParams) -> Result<(f64, f64), CoreError> {
    let rhs = quasienergy_rhs(k, p);
    if rhs.abs() > 1.0 + 1e-12 {
        return Err(CoreError::DispersionOutOfRange(rhs));
    }
    let eps = rhs.clamp(-1.0, 1.0).acos() / p.t;
    Ok((eps, -eps))
}

/// Map an eigenphase theta of U(T) to a quasienergy in (-pi/T, pi/T].
fn phase_to_quasienergy(theta: f64, t: f64) -> f64 {
    let mut eps_t = -theta;
    if eps_t <= -PI {
        eps_t += 2.0 * PI;
    }
    eps_t / t
}

/// Quasienergy pair extracted from the Bloch evolution operator.
pub fn quasienergy_numeric(k: MomentumPoint, p: &ModelParams) -> Result<(f64, f64), CoreError> {
    let u = floquet_bloch(k, p);
    let decomp = unitary_eigenphases(&u)?;
    let mut eps: Vec<f64> = decomp
        .values
        .iter()
        .map(|&th| phase_to_quasienergy(th, p.t))
        .collect();
    eps.sort_by(f64::total_cmp);
    Ok((eps[1], eps[0]))
}

/// One-period evolution operator of a strip, dimension 2N x 2N.
///
/// Each step Hamiltonian on the strip is a disjoint union of two-site bonds
/// plus boundary sites whose hop was cut, so the quarter-period exponential
/// is exact: cos(JT/4) on bond diagonals, -i sin(JT/4) times the hopping
/// phase off-diagonal, and 1 on cut sites.
pub fn floquet_strip(k_conserved: f64, p: &ModelParams, open: OpenDirection) -> ComplexMatrix {
    let n = p.cells(open);
    let theta = p.jt / 4.0;
    let mut u = ComplexMatrix::identity(2 * n);
    for (dp, dm) in STEP_CELL_SHIFTS {
        let (d_open, d_periodic) = match open {
            OpenDirection::XMinus => (dm, dp),
            OpenDirection::XPlus => (dp, dm),
        };
        let phi = k_conserved * d_periodic as f64;
        let mut un = ComplexMatrix::identity(2 * n);
        for cell in 0..n as i32 {
            let partner = cell + d_open;
            if partner < 0 || partner >= n as i32 {
                continue; // cut hop: both sites idle this quarter period
            }
            let ia = 2 * cell as usize;
            let ib = 2 * partner as usize + 1;
            un[(ia, ia)] = C64::new(theta.cos(), 0.0);
            un[(ib, ib)] = C64::new(theta.cos(), 0.0);
            un[(ia, ib)] = C64::new(0.0, -theta.sin()) * C64::from_polar(1.0, phi);
            un[(ib, ia)] = C64::new(0.0, -theta.sin()) * C64::from_polar(1.0, -phi);
        }
        u = &un * &u;
    }
    u
}

/// Quasienergy spectrum of the strip over a grid of conserved momenta.
pub fn strip_quasienergies(
    grid: &[f64],
    p: &ModelParams,
    open: OpenDirection,
    with_states: bool,
) -> Result<StripSpectrum, CoreError> {
    let mut values = Vec::with_capacity(grid.len());
    let mut states = with_states.then(Vec::new);
    for &k in grid {
        let u = floquet_strip(k, p, open);
        let decomp = unitary_eigenphases(&u)?;
        let mut pairs: Vec<(f64, usize)> = decomp
            .values
            .iter()
            .enumerate()
            .map(|(i, &th)| (phase_to_quasienergy(th, p.t), i))
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        values.push(pairs.iter().map(|&(e, _)| e).collect());
        if let Some(states) = states.as_mut() {
            let mut cols = ComplexMatrix::zeros(u.rows(), u.rows());
            for (dst, &(_, src)) in pairs.iter().enumerate() {
                cols.set_column(dst, &decomp.vectors.column(src));
            }
            states.push(cols);
        }
    }
    Ok(StripSpectrum {
        kind: SpectrumKind::FloquetQuasienergy,
        open,
        cells: p.cells(open),
        momenta: grid.to_vec(),
        values,
        states,
    })
}

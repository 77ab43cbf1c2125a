//! Spectral decompositions of Hermitian and unitary matrices.
//!
//! Hermitian matrices go through cyclic complex Jacobi rotations. Unitary
//! matrices are normal, so their eigenphases are recovered from the two
//! commuting Hermitian parts (U + U^H)/2 and (U - U^H)/(2i): diagonalize the
//! first, then resolve clusters of equal cosines by diagonalizing the second
//! within each cluster. This avoids a general non-symmetric eigensolver
//! entirely.

use crate::error::NumericsError;
use crate::numerics::matrix::{ComplexMatrix, C64};

/// Hermiticity acceptance threshold, max|A - A^H|.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Unitarity acceptance threshold, max|U^H U - I|.
pub const UNITARITY_TOL: f64 = 1e-10;
/// Cosine clusters tighter than this are resolved through the sine part.
pub const PHASE_CLUSTER_TOL: f64 = 1e-8;

const OFF_DIAG_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 100;

/// Result of [`hermitian_eig`] or [`unitary_eigenphases`].
///
/// `values` are real eigenvalues sorted ascending (eigenphases in (-pi, pi]
/// for the unitary case). `vectors` holds the matching orthonormal
/// eigenvectors as columns. `residual` is the largest |M v - lambda v| (or
/// |U v - e^{i theta} v|) over all columns.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
    pub residual: f64,
}

/// Kronecker product of two matrices.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kron(b)
}

fn require_square(m: &ComplexMatrix) -> Result<usize, NumericsError> {
    if m.rows() == 0 || m.cols() == 0 {
        return Err(NumericsError::Empty);
    }
    if !m.is_square() {
        return Err(NumericsError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(m.rows())
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// One complex Jacobi rotation zeroing the (p, q) entry of `a`, accumulated
/// into `v`.
fn jacobi_rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let n = a.rows();
    let apq = a[(p, q)];
    let r = apq.norm();
    if r < 1e-300 {
        a[(p, q)] = C64::new(0.0, 0.0);
        a[(q, p)] = C64::new(0.0, 0.0);
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let u = apq / r; // e^{i phi}
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau == 0.0 {
        1.0
    } else {
        tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let su = u * s;

    // A <- A G with G = [[c, s u], [-s conj(u), c]] on columns (p, q)
    for i in 0..n {
        let aip = a[(i, p)];
        let aiq = a[(i, q)];
        a[(i, p)] = aip * c - aiq * su.conj();
        a[(i, q)] = aip * su + aiq * c;
    }
    // A <- G^H A on rows (p, q)
    for j in 0..n {
        let apj = a[(p, j)];
        let aqj = a[(q, j)];
        a[(p, j)] = apj * c - aqj * su;
        a[(q, j)] = apj * su.conj() + aqj * c;
    }
    // The rotation makes these exact; scrub numerical residue.
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

    for i in 0..v.rows() {
        let vip = v[(i, p)];
        let viq = v[(i, q)];
        v[(i, p)] = vip * c - viq * su.conj();
        v[(i, q)] = vip * su + viq * c;
    }
}

/// Cyclic Jacobi on a Hermitian matrix. Returns unsorted eigenvalues and
/// the accumulated eigenvector columns.
fn jacobi_hermitian(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix), NumericsError> {
    let n = m.rows();
    let mut a = m.clone();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm().max(1.0);
    let mut off = off_diagonal_norm(&a);
    let mut sweeps = 0;
    while off > OFF_DIAG_TOL * scale {
        if sweeps >= MAX_SWEEPS {
            return Err(NumericsError::NoConvergence { off });
        }
        for p in 0..n {
            for q in p + 1..n {
                jacobi_rotate(&mut a, &mut v, p, q);
            }
        }
        off = off_diagonal_norm(&a);
        sweeps += 1;
    }
    let values = (0..n).map(|i| a[(i, i)].re).collect();
    Ok((values, v))
}

/// Sort (value, column) pairs ascending and fix each column's global phase so
/// the first component above 1e-9 in magnitude is real positive. Ties keep
/// their relative order, so output is deterministic.
fn canonical_order(values: Vec<f64>, vectors: ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let mut out_vals = Vec::with_capacity(n);
    let mut out_vecs = ComplexMatrix::zeros(vectors.rows(), n);
    for (dst, &src) in order.iter().enumerate() {
        out_vals.push(values[src]);
        let mut col = vectors.column(src);
        if let Some(lead) = col.iter().find(|z| z.norm() > 1e-9) {
            let phase = lead / lead.norm();
            for z in &mut col {
                *z *= phase.conj();
            }
        }
        out_vecs.set_column(dst, &col);
    }
    (out_vals, out_vecs)
}

fn max_residual(
    m: &ComplexMatrix,
    values: &[f64],
    vectors: &ComplexMatrix,
    unitary_phase: bool,
) -> f64 {
    let mut worst: f64 = 0.0;
    for (j, &value) in values.iter().enumerate() {
        let col = vectors.column(j);
        let mv = m.matvec(&col);
        let lambda = if unitary_phase {
            C64::new(0.0, value).exp()
        } else {
            C64::new(value, 0.0)
        };
        let res: f64 = mv
            .iter()
            .zip(&col)
            .map(|(a, b)| (a - lambda * b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        worst = worst.max(res);
    }
    worst
}

/// Full eigendecomposition of a Hermitian matrix, eigenvalues ascending.
pub fn hermitian_eig(m: &ComplexMatrix) -> Result<EigenDecomposition, NumericsError> {
    require_square(m)?;
    let dev = m.hermiticity_error();
    if dev > HERMITICITY_TOL {
        return Err(NumericsError::NotHermitian { dev });
    }
    // Work on the symmetrized matrix so the sub-tolerance asymmetry cannot
    // leak into the rotations.
    let sym = (m + &m.dagger()).scale(C64::new(0.5, 0.0));
    let (values, vectors) = jacobi_hermitian(&sym)?;
    let (values, vectors) = canonical_order(values, vectors);
    let residual = max_residual(&sym, &values, &vectors, false);
    Ok(EigenDecomposition {
        values,
        vectors,
        residual,
    })
}

/// Eigenphases of a unitary matrix, sorted ascending in (-pi, pi].
///
/// Degenerate phase clusters return an arbitrary orthonormal basis of the
/// cluster subspace.
pub fn unitary_eigenphases(u: &ComplexMatrix) -> Result<EigenDecomposition, NumericsError> {
    let n = require_square(u)?;
    let dev = u.unitarity_error();
    if dev > UNITARITY_TOL {
        return Err(NumericsError::NotUnitary { dev });
    }
    let ud = u.dagger();
    let re = (u + &ud).scale(C64::new(0.5, 0.0));
    let im = (u - &ud).scale(C64::new(0.0, -0.5));

    let (cos_vals, cos_vecs) = jacobi_hermitian(&re)?;
    let (cos_vals, cos_vecs) = canonical_order(cos_vals, cos_vecs);

    // Resolve each cluster of equal cosines through the sine part.
    let mut vectors = ComplexMatrix::zeros(n, n);
    let mut filled = 0;
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && cos_vals[end] - cos_vals[end - 1] <= PHASE_CLUSTER_TOL {
            end += 1;
        }
        let width = end - start;
        if width == 1 {
            vectors.set_column(filled, &cos_vecs.column(start));
            filled += 1;
        } else {
            let mut w = ComplexMatrix::zeros(n, width);
            for (jj, src) in (start..end).enumerate() {
                w.set_column(jj, &cos_vecs.column(src));
            }
            let projected = &(&w.dagger() * &im) * &w;
            let (_, rot) = jacobi_hermitian(&projected)?;
            let resolved = &w * &rot;
            for jj in 0..width {
                vectors.set_column(filled, &resolved.column(jj));
                filled += 1;
            }
        }
        start = end;
    }

    // The Rayleigh phase arg(v^H U v) is exact on eigenvectors and immune to
    // the cluster tolerance.
    let mut phases = Vec::with_capacity(n);
    for j in 0..n {
        let col = vectors.column(j);
        let uv = u.matvec(&col);
        let z: C64 = col.iter().zip(&uv).map(|(a, b)| a.conj() * b).sum();
        let mut theta = z.arg();
        if theta <= -std::f64::consts::PI {
            theta = std::f64::consts::PI;
        }
        phases.push(theta);
    }
    let (values, vectors) = canonical_order(phases, vectors);
    let residual = max_residual(u, &values, &vectors, true);
    Ok(EigenDecomposition {
        values,
        vectors,
        residual,
    })
}

//! Static discrete-time lattice operators.
//!
//! The target Hamiltonian is quasi-one-dimensional: a staggered pair h1, h2
//! living on the x+ lattice, tensored with a two-band chain living on the x-
//! lattice,
//!
//! ```text
//! H_s = (h1 (x) 1 + h2 (x) H_chain) / T .
//! ```
//!
//! In Bloch form h1^2 = sin^2(k+/2), h2^2 = cos^2(k+/2) and h1 h2 + h2 h1 = 0,
//! so (T H_s)^2 = sin^2(k+/2) + cos^2(k+/2) eps_chain^2(k-) on the nose.

use std::f64::consts::PI;

use crate::error::CoreError;
use crate::numerics::{kron, ComplexMatrix, C64};
use crate::params::{ModelParams, MomentumPoint, OpenDirection, Variant};
use crate::spectrum::{SpectrumKind, StripSpectrum};

/// The two staggered operators on a two-site unit cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StaggerKind {
    /// h1, eigenvalues +/- |sin(k/2)|; the staggered derivative shape.
    SinType,
    /// h2, eigenvalues +/- |cos(k/2)|.
    CosType,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    Periodic,
    Open,
}

/// Bloch form of h1 or h2:
///
/// ```text
/// h1 = [[0, (1 - e^{ik})/2], [(1 - e^{-ik})/2, 0]]
/// h2 = [[0, (1 + e^{ik})/2], [(1 + e^{-ik})/2, 0]]
/// ```
pub fn stagger_bloch(kind: StaggerKind, k: f64) -> ComplexMatrix {
    let phase = C64::from_polar(1.0, k);
    let one = C64::new(1.0, 0.0);
    let off = match kind {
        StaggerKind::SinType => (one - phase) * 0.5,
        StaggerKind::CosType => (one + phase) * 0.5,
    };
    ComplexMatrix::two_by_two(C64::new(0.0, 0.0), off, off.conj(), C64::new(0.0, 0.0))
}

/// Position form of h1 or h2 on `n_cells` two-site cells (dimension 2n):
/// (h1)_{ij} = (-1)^i (d_{i,j-1} - d_{i,j+1})/2 and
/// (h2)_{ij} = (d_{i,j-1} + d_{i,j+1})/2, sites 0-indexed.
pub fn stagger_position(
    kind: StaggerKind,
    n_cells: usize,
    boundary: Boundary,
) -> Result<ComplexMatrix, CoreError> {
    if n_cells < 2 {
        return Err(CoreError::TooFewCells(n_cells));
    }
    let m = 2 * n_cells;
    let mut h = ComplexMatrix::zeros(m, m);
    for i in 0..m {
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        let (fwd, bwd) = match kind {
            StaggerKind::SinType => (0.5 * sign, -0.5 * sign),
            StaggerKind::CosType => (0.5, 0.5),
        };
        let j_fwd = (i + 1) % m;
        if i + 1 < m || boundary == Boundary::Periodic {
            h[(i, j_fwd)] += C64::new(fwd, 0.0);
        }
        if i > 0 || boundary == Boundary::Periodic {
            let j_bwd = (i + m - 1) % m;
            h[(i, j_bwd)] += C64::new(bwd, 0.0);
        }
    }
    Ok(h)
}

/// Chain content of a one-dimensional two-band lattice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChainKind {
    /// 1D lattice Dirac chain with a momentum-dependent (Wilson) mass:
    /// sigma_1 R sin k + sigma_2 [m0 + R (1 - cos k)].
    WilsonDirac { m0: f64, r: f64 },
    /// Alternating-hopping two-band chain, off-diagonal v + w e^{ik}.
    Ssh { v: f64, w: f64 },
}

/// A concrete chain: kind, cell count and boundary. Matrix dimension 2n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainSpec {
    pub kind: ChainKind,
    pub n_cells: usize,
    pub boundary: Boundary,
}

/// Bloch matrix (2x2) of a chain at momentum k.
pub fn chain_bloch(kind: ChainKind, k: f64) -> ComplexMatrix {
    match kind {
        ChainKind::WilsonDirac { m0, r } => {
            let sx = ComplexMatrix::pauli_x().scale(C64::new(r * k.sin(), 0.0));
            let sy = ComplexMatrix::pauli_y().scale(C64::new(m0 + r * (1.0 - k.cos()), 0.0));
            &sx + &sy
        }
        ChainKind::Ssh { v, w } => {
            let off = C64::new(v, 0.0) + C64::from_polar(w, k);
            ComplexMatrix::two_by_two(C64::new(0.0, 0.0), off, off.conj(), C64::new(0.0, 0.0))
        }
    }
}

/// Position-space chain of dimension 2 n_cells.
///
/// Wilson-Dirac sites carry a two-component spinor, index (site, spin);
/// the alternating-hopping chain carries one fermion per site, index
/// (cell, sublattice). Either way consecutive index pairs form one cell.
pub fn chain_build(spec: &ChainSpec) -> Result<ComplexMatrix, CoreError> {
    if spec.n_cells < 2 {
        return Err(CoreError::TooFewCells(spec.n_cells));
    }
    let n = spec.n_cells;
    let dim = 2 * n;
    let mut h = ComplexMatrix::zeros(dim, dim);
    match spec.kind {
        ChainKind::WilsonDirac { m0, r } => {
            // on-site sigma_2 (m0 + R); neighbor block i R/2 sigma_1 - R/2 sigma_2
            for site in 0..n {
                let d = C64::new(0.0, -(m0 + r));
                h[(2 * site, 2 * site + 1)] = d;
                h[(2 * site + 1, 2 * site)] = d.conj();
            }
            for site in 0..n {
                let next = site + 1;
                if next >= n && spec.boundary == Boundary::Open {
                    continue;
                }
                let next = next % n;
                // neighbor block i R/2 sigma_1 - R/2 sigma_2: its (0,1) entry
                // is i R/2 - R/2 (-i) = i R, its (1,0) entry cancels to zero
                let e01 = C64::new(0.0, r);
                h[(2 * site, 2 * next + 1)] = e01;
                h[(2 * next + 1, 2 * site)] = e01.conj();
            }
        }
        ChainKind::Ssh { v, w } => {
            for cell in 0..n {
                let (a, b) = (2 * cell, 2 * cell + 1);
                h[(a, b)] = C64::new(v, 0.0);
                h[(b, a)] = C64::new(v, 0.0);
                let next_a = 2 * ((cell + 1) % n);
                if cell + 1 < n || spec.boundary == Boundary::Periodic {
                    h[(b, next_a)] = C64::new(w, 0.0);
                    h[(next_a, b)] = C64::new(w, 0.0);
                }
            }
        }
    }
    Ok(h)
}

/// Chain parameters reproducing the drive's edge behavior for each variant:
/// A -> (m0 = m, R = (1 - m)/2); B -> (v = (1 + m)/2, w = (m - 1)/2).
///
/// A has open-boundary zero modes iff m0 / R < 0 (m < 0); B iff |w| > |v|
/// (again m < 0), which is exactly where the driven strip carries gap
/// crossing modes.
pub fn variant_params(variant: Variant, m: f64) -> Result<ChainKind, CoreError> {
    if m.abs() > 1.0 {
        return Err(CoreError::MassOutOfRange(m));
    }
    Ok(match variant {
        Variant::A => ChainKind::WilsonDirac {
            m0: m,
            r: (1.0 - m) / 2.0,
        },
        Variant::B => ChainKind::Ssh {
            v: (1.0 + m) / 2.0,
            w: (m - 1.0) / 2.0,
        },
    })
}

/// Positive branch of the periodic-boundary dispersion of the target
/// Hamiltonian,
///
/// ```text
/// zeta = (1/T) sqrt[(3 + m^2)/4
///        - (1 - m^2)/4 (cos k+ + cos k- + cos k+ cos k-)],  m = cos(JT/2).
/// ```
pub fn zeta(k: MomentumPoint, p: &ModelParams) -> Result<f64, CoreError> {
    let m2 = p.mass() * p.mass();
    let (u, v) = (k.k_plus.cos(), k.k_minus.cos());
    let mut radicand = (3.0 + m2) / 4.0 - (1.0 - m2) / 4.0 * (u + v + u * v);
    if radicand < -1e-12 {
        return Err(CoreError::NegativeRadicand(radicand));
    }
    if radicand < 0.0 {
        radicand = 0.0;
    }
    Ok(radicand.sqrt() / p.t)
}

/// Both branches of the chain dispersion,
/// eps(k-) = +/- sqrt[(1 + m^2)/2 - (1 - m^2)/2 cos k-].
pub fn chain_dispersion(k_minus: f64, m: f64) -> Result<(f64, f64), CoreError> {
    if m.abs() > 1.0 {
        return Err(CoreError::MassOutOfRange(m));
    }
    let e = ((1.0 + m * m) / 2.0 - (1.0 - m * m) / 2.0 * k_minus.cos()).sqrt();
    Ok((e, -e))
}

/// Bloch form of the full static Hamiltonian, 4x4 Hermitian with eigenvalues
/// {-zeta, -zeta, +zeta, +zeta} at every momentum for both variants.
pub fn hs_bloch(k: MomentumPoint, p: &ModelParams) -> Result<ComplexMatrix, CoreError> {
    let kind = variant_params(p.variant, p.mass())?;
    let h1 = stagger_bloch(StaggerKind::SinType, k.k_plus);
    let h2 = stagger_bloch(StaggerKind::CosType, k.k_plus);
    let chain = chain_bloch(kind, k.k_minus);
    let sum = &kron(&h1, &ComplexMatrix::identity(2)) + &kron(&h2, &chain);
    Ok(sum.scale(C64::new(1.0 / p.t, 0.0)))
}

/// Strip form of the static Hamiltonian.
///
/// Open x-: Bloch h1, h2 at the conserved k+ tensored with the open position
/// chain, dimension 4 N-. Open x+: open position h1, h2 tensored with the
/// Bloch chain at the conserved k-, dimension 4 N+.
pub fn hs_strip(
    open: OpenDirection,
    k_conserved: f64,
    p: &ModelParams,
) -> Result<ComplexMatrix, CoreError> {
    let kind = variant_params(p.variant, p.mass())?;
    let sum = match open {
        OpenDirection::XMinus => {
            let n = p.n_minus;
            let chain = chain_build(&ChainSpec {
                kind,
                n_cells: n,
                boundary: Boundary::Open,
            })?;
            let h1 = stagger_bloch(StaggerKind::SinType, k_conserved);
            let h2 = stagger_bloch(StaggerKind::CosType, k_conserved);
            &kron(&h1, &ComplexMatrix::identity(2 * n)) + &kron(&h2, &chain)
        }
        OpenDirection::XPlus => {
            let n = p.n_plus;
            let h1 = stagger_position(StaggerKind::SinType, n, Boundary::Open)?;
            let h2 = stagger_position(StaggerKind::CosType, n, Boundary::Open)?;
            let chain = chain_bloch(kind, k_conserved);
            &kron(&h1, &ComplexMatrix::identity(2)) + &kron(&h2, &chain)
        }
    };
    Ok(sum.scale(C64::new(1.0 / p.t, 0.0)))
}

/// Static strip spectrum over a grid of conserved momenta.
pub fn strip_energies(
    grid: &[f64],
    p: &ModelParams,
    open: OpenDirection,
    with_states: bool,
) -> Result<StripSpectrum, CoreError> {
    let mut values = Vec::with_capacity(grid.len());
    let mut states = with_states.then(Vec::new);
    for &k in grid {
        let h = hs_strip(open, k, p)?;
        let decomp = crate::numerics::hermitian_eig(&h)?;
        values.push(decomp.values);
        if let Some(states) = states.as_mut() {
            states.push(decomp.vectors);
        }
    }
    Ok(StripSpectrum {
        kind: SpectrumKind::StaticEnergy,
        open,
        cells: p.cells(open),
        momenta: grid.to_vec(),
        values,
        states,
    })
}

/// Time-derivative discretization scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimeScheme {
    /// Symmetric difference; frequency equation sin(k0 T)/T = eps_s.
    Naive,
    /// Two-site staggered cell; frequency equation sin(k0 T/2)/T = eps_s up
    /// to the similarity transform, single solution per energy.
    Staggered,
}

/// Bloch matrix of the staggered time derivative,
/// d(k0) = [[0, (1 - e^{i k0 T})], [(1 - e^{-i k0 T}), 0]] / (2T),
/// eigenvalues +/- |sin(k0 T / 2)| / T.
pub fn time_derivative_bloch(k0: f64, t: f64) -> ComplexMatrix {
    stagger_bloch(StaggerKind::SinType, k0 * t).scale(C64::new(1.0 / t, 0.0))
}

/// Frequencies solving the discrete-time equation of motion for a static
/// energy `eps_s`, returned inside (-pi/T, pi/T].
///
/// The naive scheme returns the doubler pair {k0, pi/T - k0}; the staggered
/// scheme returns the single principal-branch solution (2/T) asin(eps_s T).
pub fn discrete_time_frequencies(
    eps_s: f64,
    t: f64,
    scheme: TimeScheme,
) -> Result<Vec<f64>, CoreError> {
    let x = eps_s * t;
    if x.abs() > 1.0 + 1e-12 {
        return Err(CoreError::OutOfBand(x.abs()));
    }
    let x = x.clamp(-1.0, 1.0);
    match scheme {
        TimeScheme::Staggered => Ok(vec![2.0 * x.asin() / t]),
        TimeScheme::Naive => {
            let k1 = x.asin() / t;
            let mut k2 = PI / t - k1;
            if k2 > PI / t {
                k2 -= 2.0 * PI / t;
            }
            let mut out = vec![k1, k2];
            out.sort_by(f64::total_cmp);
            Ok(out)
        }
    }
}

/// Outcome of forcing an isotropic 2+1d Wilson-Dirac Hamiltonian onto the
/// target dispersion.
#[derive(Debug, Clone, Copy)]
pub struct NoGoReport {
    pub m: f64,
    pub t: f64,
    /// (M, R) pairs forced by flatness of the zone-boundary line together
    /// with its value 1/T: M = -3R and R = +/- 1/T.
    pub forced: [(f64, f64); 2],
    /// |m| that the zone-center gap would then require. Always 3.
    pub required_mass: f64,
    /// Whether the three constraints are simultaneously satisfiable.
    pub compatible: bool,
}

/// Constraint check ruling out the isotropic Wilson-Dirac candidate.
///
/// Its dispersion at k+ = +/- pi is
/// sqrt(M^2 + 6MR + 10R^2 - 2R(M + 3R) cos k-); k- independence forces
/// M = -3R, the boundary value 1/T then forces R^2 = 1/T^2, and the zone
/// center would need |M| = |m|/T. Together: |m| = 3, impossible for |m| <= 1.
pub fn wd2p1_nogo(m: f64, t: f64) -> Result<NoGoReport, CoreError> {
    if m.abs() > 1.0 {
        return Err(CoreError::MassOutOfRange(m));
    }
    let r = 1.0 / t;
    let required_mass = 3.0;
    Ok(NoGoReport {
        m,
        t,
        forced: [(-3.0 * r, r), (3.0 * r, -r)],
        required_mass,
        compatible: (m.abs() - required_mass).abs() < 1e-9,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::hermitian_eig;
    use crate::params::momentum_grid;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const M_EX: f64 = -0.707_106_781_186_547_5; // cos(0.75 pi)

    fn sorted_eigs(h: &ComplexMatrix) -> Vec<f64> {
        hermitian_eig(h).unwrap().values
    }

    #[test]
    fn stagger_bloch_limits() {
        assert!(stagger_bloch(StaggerKind::SinType, 0.0).max_abs() < 1e-15);
        assert!(stagger_bloch(StaggerKind::CosType, PI).max_abs() < 1e-15);
        for &k in &[0.3, -2.0, 1.1] {
            let e1 = sorted_eigs(&stagger_bloch(StaggerKind::SinType, k));
            assert!((e1[1] - (k / 2.0).sin().abs()).abs() < 1e-14);
            let e2 = sorted_eigs(&stagger_bloch(StaggerKind::CosType, k));
            assert!((e2[1] - (k / 2.0).cos().abs()).abs() < 1e-14);
        }
    }

    #[test]
    fn stagger_bloch_algebra() {
        // h1^2 = sin^2(k/2), h2^2 = cos^2(k/2), {h1, h2} = 0
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let k = rng.gen_range(-PI..PI);
            let h1 = stagger_bloch(StaggerKind::SinType, k);
            let h2 = stagger_bloch(StaggerKind::CosType, k);
            let s2 = (k / 2.0).sin().powi(2);
            let c2 = (k / 2.0).cos().powi(2);
            let dev1 =
                (&(&h1 * &h1) - &ComplexMatrix::identity(2).scale(C64::new(s2, 0.0))).max_abs();
            let dev2 =
                (&(&h2 * &h2) - &ComplexMatrix::identity(2).scale(C64::new(c2, 0.0))).max_abs();
            let anti = (&(&h1 * &h2) + &(&h2 * &h1)).max_abs();
            assert!(dev1 < 1e-12 && dev2 < 1e-12 && anti < 1e-12);
        }
    }

    #[test]
    fn stagger_position_entry_patterns() {
        let h2 = stagger_position(StaggerKind::CosType, 4, Boundary::Open).unwrap();
        for i in 0..7 {
            assert_eq!(h2[(i, i + 1)], C64::new(0.5, 0.0));
            assert_eq!(h2[(i + 1, i)], C64::new(0.5, 0.0));
        }
        let h1 = stagger_position(StaggerKind::SinType, 4, Boundary::Open).unwrap();
        for i in 0..7usize {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(h1[(i, i + 1)], C64::new(0.5 * sign, 0.0));
        }
        assert!(h1.hermiticity_error() < 1e-15);
    }

    #[test]
    fn stagger_position_matches_bloch_spectrum() {
        // periodic position operator block-diagonalizes into the Bloch form
        // on the even grid k = 2 pi K / n
        for kind in [StaggerKind::SinType, StaggerKind::CosType] {
            let n = 4;
            let pos = stagger_position(kind, n, Boundary::Periodic).unwrap();
            let mut direct = sorted_eigs(&pos);
            let mut from_bloch = Vec::new();
            for &k in &momentum_grid(n) {
                from_bloch.extend(sorted_eigs(&stagger_bloch(kind, k)));
            }
            from_bloch.sort_by(f64::total_cmp);
            direct.sort_by(f64::total_cmp);
            for (a, b) in direct.iter().zip(&from_bloch) {
                assert!((a - b).abs() < 1e-12, "{kind:?}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn too_few_cells_rejected() {
        assert!(matches!(
            stagger_position(StaggerKind::SinType, 1, Boundary::Open),
            Err(CoreError::TooFewCells(1))
        ));
        let spec = ChainSpec {
            kind: ChainKind::Ssh { v: 0.5, w: 0.5 },
            n_cells: 1,
            boundary: Boundary::Open,
        };
        assert!(matches!(chain_build(&spec), Err(CoreError::TooFewCells(1))));
    }

    #[test]
    fn wilson_dirac_bloch_dispersion() {
        let kind = ChainKind::WilsonDirac { m0: -0.4, r: 0.7 };
        let e0 = sorted_eigs(&chain_bloch(kind, 0.0));
        assert!((e0[1] - 0.4).abs() < 1e-14);
        for &k in &[0.5, -1.7, 2.9] {
            let e = sorted_eigs(&chain_bloch(kind, k));
            let want = ((0.7 * k.sin()).powi(2) + (-0.4 + 0.7 * (1.0 - k.cos())).powi(2)).sqrt();
            assert!((e[1] - want).abs() < 1e-12);
        }
    }

    #[test]
    fn wilson_dirac_position_matches_bloch() {
        let kind = ChainKind::WilsonDirac {
            m0: M_EX,
            r: (1.0 - M_EX) / 2.0,
        };
        let n = 6;
        let pos = chain_build(&ChainSpec {
            kind,
            n_cells: n,
            boundary: Boundary::Periodic,
        })
        .unwrap();
        assert!(pos.hermiticity_error() < 1e-15);
        assert!(pos.trace().norm() < 1e-15);
        let mut direct = sorted_eigs(&pos);
        let mut from_bloch = Vec::new();
        for &k in &momentum_grid(n) {
            from_bloch.extend(sorted_eigs(&chain_bloch(kind, k)));
        }
        from_bloch.sort_by(f64::total_cmp);
        direct.sort_by(f64::total_cmp);
        for (a, b) in direct.iter().zip(&from_bloch) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn fully_dimerized_chain_has_two_exact_zero_modes() {
        let h = chain_build(&ChainSpec {
            kind: ChainKind::Ssh { v: 0.0, w: 1.0 },
            n_cells: 4,
            boundary: Boundary::Open,
        })
        .unwrap();
        let e = sorted_eigs(&h);
        let zeros = e.iter().filter(|x| x.abs() < 1e-14).count();
        assert_eq!(zeros, 2);
    }

    #[test]
    fn ssh_chain_is_bipartite_with_zero_diagonal() {
        let h = chain_build(&ChainSpec {
            kind: ChainKind::Ssh { v: 0.3, w: -0.9 },
            n_cells: 5,
            boundary: Boundary::Periodic,
        })
        .unwrap();
        for i in 0..10 {
            assert_eq!(h[(i, i)], C64::new(0.0, 0.0));
            for j in 0..10 {
                if i % 2 == j % 2 {
                    assert_eq!(h[(i, j)], C64::new(0.0, 0.0), "same-sublattice entry");
                }
            }
        }
    }

    #[test]
    fn topological_chain_zero_modes_at_example_mass() {
        let kind = variant_params(Variant::A, M_EX).unwrap();
        match kind {
            ChainKind::WilsonDirac { m0, r } => {
                assert!((m0 - M_EX).abs() < 1e-12);
                assert!((r - 0.853_553_390_593_273_8).abs() < 1e-12);
            }
            _ => unreachable!(),
        }
        let h = chain_build(&ChainSpec {
            kind,
            n_cells: 6,
            boundary: Boundary::Open,
        })
        .unwrap();
        let e = sorted_eigs(&h);
        let small = e.iter().filter(|x| x.abs() <= 1e-2).count();
        assert_eq!(small, 2, "expected a split zero-mode doublet: {e:?}");
    }

    #[test]
    fn trivial_side_has_no_zero_modes() {
        let m = 0.707_106_781_186_547_5;
        for variant in [Variant::A, Variant::B] {
            let h = chain_build(&ChainSpec {
                kind: variant_params(variant, m).unwrap(),
                n_cells: 6,
                boundary: Boundary::Open,
            })
            .unwrap();
            let e = sorted_eigs(&h);
            assert!(
                e.iter().all(|x| x.abs() > 0.3),
                "{variant:?} should be gapped at m > 0: {e:?}"
            );
        }
    }

    #[test]
    fn variant_b_keeps_topology_criterion() {
        match variant_params(Variant::B, M_EX).unwrap() {
            ChainKind::Ssh { v, w } => {
                assert!((v - 0.146_446_609_406_726_24).abs() < 1e-12);
                assert!((w.abs() - 0.853_553_390_593_273_8).abs() < 1e-12);
                assert!(w.abs() > v.abs(), "must sit in the zero-mode phase");
            }
            _ => unreachable!(),
        }
        assert!(matches!(
            variant_params(Variant::A, 1.5),
            Err(CoreError::MassOutOfRange(_))
        ));
    }

    #[test]
    fn chain_variants_agree_pointwise_in_momentum() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..40 {
            let m = rng.gen_range(-1.0..1.0);
            let k = rng.gen_range(-PI..PI);
            let ea = sorted_eigs(&chain_bloch(variant_params(Variant::A, m).unwrap(), k));
            let eb = sorted_eigs(&chain_bloch(variant_params(Variant::B, m).unwrap(), k));
            let (dp, dm) = chain_dispersion(k, m).unwrap();
            assert!((ea[0] - eb[0]).abs() < 1e-12);
            assert!((ea[1] - eb[1]).abs() < 1e-12);
            assert!((ea[1] - dp).abs() < 1e-12);
            assert!((ea[0] - dm).abs() < 1e-12);
        }
    }

    #[test]
    fn chain_dispersion_reference_points() {
        assert!((chain_dispersion(0.0, M_EX).unwrap().0 - M_EX.abs()).abs() < 1e-14);
        assert!((chain_dispersion(PI, M_EX).unwrap().0 - 1.0).abs() < 1e-14);
        let (e, _) = chain_dispersion(PI / 2.0, M_EX).unwrap();
        assert!((e - 0.75f64.sqrt()).abs() < 1e-5, "{e}");
    }

    #[test]
    fn zeta_reference_points() {
        let p = ModelParams::new(1.5 * PI, 1.0);
        let z0 = zeta(MomentumPoint::new(0.0, 0.0), &p).unwrap();
        assert!((z0 - M_EX.abs()).abs() < 1e-12);
        for &km in &[0.0, 1.1, -2.6] {
            let z = zeta(MomentumPoint::new(PI, km), &p).unwrap();
            assert!((z - 1.0).abs() < 1e-12);
        }
        let pc = ModelParams::new(PI, 1.0); // m = 0, gap closes
        assert!(zeta(MomentumPoint::new(0.0, 0.0), &pc).unwrap() < 1e-7);
    }

    #[test]
    fn hs_bloch_spectrum_is_doubly_degenerate_zeta() {
        let p = ModelParams::new(1.5 * PI, 1.0);
        // k+ = pi: h2 vanishes, eigenvalues +/- 1/T twice
        let e = sorted_eigs(&hs_bloch(MomentumPoint::new(PI, 0.37), &p).unwrap());
        for (got, want) in e.iter().zip(&[-1.0, -1.0, 1.0, 1.0]) {
            assert!((got - want).abs() < 1e-12);
        }
        // k = 0 at JT = 1.5 pi: +/- |m| twice
        let e = sorted_eigs(&hs_bloch(MomentumPoint::new(0.0, 0.0), &p).unwrap());
        assert!((e[1] + M_EX.abs()).abs() < 1e-12);
        assert!((e[2] - M_EX.abs()).abs() < 1e-12);
    }

    #[test]
    fn hs_bloch_variants_agree_at_random_momenta() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..20 {
            let jt = rng.gen_range(0.05..(2.0 * PI - 0.05));
            let k = MomentumPoint::new(rng.gen_range(-PI..PI), rng.gen_range(-PI..PI));
            let pa = ModelParams::new(jt, 1.0).with_variant(Variant::A);
            let pb = ModelParams::new(jt, 1.0).with_variant(Variant::B);
            let ea = sorted_eigs(&hs_bloch(k, &pa).unwrap());
            let eb = sorted_eigs(&hs_bloch(k, &pb).unwrap());
            let z = zeta(k, &pa).unwrap();
            for i in 0..4 {
                assert!((ea[i] - eb[i]).abs() < 1e-10);
            }
            assert!((ea[3] - z).abs() < 1e-10);
            assert!((ea[0] + z).abs() < 1e-10);
        }
    }

    #[test]
    fn hs_bloch_isotropic_under_momentum_exchange() {
        let p = ModelParams::new(1.7 * PI, 1.0).with_variant(Variant::B);
        for &(a, b) in &[(0.9, -2.1), (0.0, 1.3), (2.8, 2.8)] {
            let e1 = sorted_eigs(&hs_bloch(MomentumPoint::new(a, b), &p).unwrap());
            let e2 = sorted_eigs(&hs_bloch(MomentumPoint::new(b, a), &p).unwrap());
            for i in 0..4 {
                assert!((e1[i] - e2[i]).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn squared_hamiltonian_sum_rule() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..30 {
            let jt = rng.gen_range(0.05..(2.0 * PI - 0.05));
            let kp = rng.gen_range(-PI..PI);
            let km = rng.gen_range(-PI..PI);
            for variant in [Variant::A, Variant::B] {
                let p = ModelParams::new(jt, 1.0).with_variant(variant);
                let h = hs_bloch(MomentumPoint::new(kp, km), &p).unwrap();
                let ht = h.scale(C64::new(p.t, 0.0));
                let sq = &ht * &ht;
                let (e, _) = chain_dispersion(km, p.mass()).unwrap();
                let target = (kp / 2.0).sin().powi(2) + (kp / 2.0).cos().powi(2) * e * e;
                let dev =
                    (&sq - &ComplexMatrix::identity(4).scale(C64::new(target, 0.0))).max_abs();
                assert!(dev < 1e-10, "{variant:?} dev {dev}");
            }
        }
    }

    #[test]
    fn open_strip_factorizes_through_chain_levels() {
        // eigenvalues of the x- strip are +/- sqrt(sin^2(k/2) + cos^2(k/2) l^2)/T
        // over the open-chain levels l
        let p = ModelParams::new(1.5 * PI, 1.0).with_sites(6, 6);
        let kind = variant_params(p.variant, p.mass()).unwrap();
        let chain = chain_build(&ChainSpec {
            kind,
            n_cells: 6,
            boundary: Boundary::Open,
        })
        .unwrap();
        let levels = sorted_eigs(&chain);
        for &k in &[0.25_f64, -1.4] {
            let mut expected: Vec<f64> = levels
                .iter()
                .flat_map(|l| {
                    let v = ((k / 2.0).sin().powi(2) + (k / 2.0).cos().powi(2) * l * l).sqrt();
                    [v, -v]
                })
                .collect();
            expected.sort_by(f64::total_cmp);
            let got = sorted_eigs(&hs_strip(OpenDirection::XMinus, k, &p).unwrap());
            for (g, w) in got.iter().zip(&expected) {
                assert!((g - w).abs() < 1e-10, "{g} vs {w}");
            }
        }
    }

    #[test]
    fn open_strip_in_gap_branches_track_sin_half_k() {
        let p = ModelParams::new(1.5 * PI, 1.0).with_sites(6, 6);
        let k = 0.45;
        let e = sorted_eigs(&hs_strip(OpenDirection::XMinus, k, &p).unwrap());
        let target = (k / 2.0).sin().abs();
        let in_gap: Vec<f64> = e.iter().copied().filter(|x| x.abs() < M_EX.abs()).collect();
        assert_eq!(in_gap.len(), 4, "two branches, each twice: {in_gap:?}");
        for x in in_gap {
            assert!((x.abs() - target).abs() < 2e-3, "{x} vs {target}");
        }

        let p_trivial = ModelParams::new(0.5 * PI, 1.0).with_sites(6, 6);
        let e = sorted_eigs(&hs_strip(OpenDirection::XMinus, k, &p_trivial).unwrap());
        let m = p_trivial.mass();
        assert!(
            e.iter().all(|x| x.abs() > m / 2.0),
            "no in-gap states expected"
        );
    }

    #[test]
    fn open_x_plus_strip_carries_flat_zero_band() {
        let p = ModelParams::new(1.5 * PI, 1.0)
            .with_sites(6, 6)
            .with_variant(Variant::B);
        for &km in &[-2.9, -0.6, 0.0, 1.8, PI] {
            let e = sorted_eigs(&hs_strip(OpenDirection::XPlus, km, &p).unwrap());
            let zeros = e.iter().filter(|x| x.abs() < 1e-3).count();
            assert!(zeros >= 2, "flat band missing at k- = {km}: {e:?}");
        }
    }

    #[test]
    fn anticommutation_of_position_staggers() {
        let h1 = stagger_position(StaggerKind::SinType, 6, Boundary::Periodic).unwrap();
        let h2 = stagger_position(StaggerKind::CosType, 6, Boundary::Periodic).unwrap();
        assert!((&(&h1 * &h2) + &(&h2 * &h1)).max_abs() < 1e-12);
    }

    #[test]
    fn flavor_doubling_in_bloch_and_x_minus_strip() {
        let p = ModelParams::new(1.3 * PI, 1.0).with_sites(6, 6);
        let e = sorted_eigs(&hs_bloch(MomentumPoint::new(0.77, -0.2), &p).unwrap());
        assert!((e[1] - e[0]).abs() < 1e-9 && (e[3] - e[2]).abs() < 1e-9);
        let e = sorted_eigs(&hs_strip(OpenDirection::XMinus, 0.77, &p).unwrap());
        for pair in e.chunks(2) {
            assert!((pair[1] - pair[0]).abs() < 1e-9, "unpaired level {pair:?}");
        }
    }

    #[test]
    fn time_derivative_bloch_dispersion() {
        for &(k0, t) in &[(0.3, 1.0), (-1.2, 0.7), (2.0, 2.0)] {
            let d = time_derivative_bloch(k0, t);
            assert!(d.hermiticity_error() < 1e-15);
            let e = sorted_eigs(&d);
            assert!((e[1] - (k0 * t / 2.0).sin().abs() / t).abs() < 1e-12);
        }
    }

    #[test]
    fn staggered_frequencies_are_single_valued() {
        assert_eq!(
            discrete_time_frequencies(0.0, 1.0, TimeScheme::Staggered).unwrap(),
            vec![0.0]
        );
        // eps_s = sin(eps' T)/T with eps' T = -pi/4 inverts to k0 = 2 eps'
        let eps = -(PI / 4.0).sin();
        let k0 = discrete_time_frequencies(eps, 1.0, TimeScheme::Staggered).unwrap();
        assert!((k0[0] + PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn naive_frequencies_come_in_doubler_pairs() {
        let sols = discrete_time_frequencies(0.0, 1.0, TimeScheme::Naive).unwrap();
        assert_eq!(sols.len(), 2);
        assert!(sols[0].abs() < 1e-15 && (sols[1] - PI).abs() < 1e-15);
        let t = 0.5;
        for &eps in &[0.9, -1.3, 0.0] {
            let sols = discrete_time_frequencies(eps, t, TimeScheme::Naive).unwrap();
            for &k0 in &sols {
                assert!(((k0 * t).sin() / t - eps).abs() < 1e-12);
                assert!(k0 > -PI / t && k0 <= PI / t + 1e-15);
            }
        }
        assert!(matches!(
            discrete_time_frequencies(1.5, 1.0, TimeScheme::Naive),
            Err(CoreError::OutOfBand(_))
        ));
    }

    #[test]
    fn nogo_reports_incompatibility() {
        let r = wd2p1_nogo(M_EX, 1.0).unwrap();
        assert!(!r.compatible);
        assert_eq!(r.required_mass, 3.0);
        assert_eq!(r.forced[0], (-3.0, 1.0));
        let r0 = wd2p1_nogo(0.0, 1.0).unwrap();
        assert!(!r0.compatible);
        assert!(wd2p1_nogo(1.2, 1.0).is_err());
    }
}

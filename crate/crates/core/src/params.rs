//! Model parameters and momentum-space coordinates.

use std::f64::consts::PI;

/// Static-chain flavor of the discrete-time construction.
///
/// `A` backs the chain with a 1D lattice Dirac (Wilson) Hamiltonian, `B`
/// with an alternating-hopping (SSH) chain. Both have identical spectra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    A,
    B,
}

impl Variant {
    pub fn label(self) -> &'static str {
        match self {
            Variant::A => "a",
            Variant::B => "b",
        }
    }
}

/// Which lattice direction a strip leaves open.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpenDirection {
    XMinus,
    XPlus,
}

impl OpenDirection {
    pub fn label(self) -> &'static str {
        match self {
            OpenDirection::XMinus => "x-minus",
            OpenDirection::XPlus => "x-plus",
        }
    }
}

/// Drive and lattice parameters shared by every builder.
///
/// The derived mass `m = cos(JT/2)` is always recomputed from `jt`, never
/// stored, so it cannot drift out of sync.
#[derive(Debug, Clone, Copy)]
pub struct ModelParams {
    /// Dimensionless drive strength times period, J*T.
    pub jt: f64,
    /// Drive period; doubles as the time-lattice spacing. Must be positive.
    pub t: f64,
    /// Static-chain variant used by the discrete-time builders.
    pub variant: Variant,
    /// Transverse cell count for strips open in x-.
    pub n_minus: usize,
    /// Transverse cell count for strips open in x+.
    pub n_plus: usize,
}

impl ModelParams {
    pub fn new(jt: f64, t: f64) -> Self {
        assert!(t > 0.0, "drive period must be positive");
        Self {
            jt,
            t,
            variant: Variant::A,
            n_minus: 6,
            n_plus: 6,
        }
    }

    pub fn with_variant(mut self, variant: Variant) -> Self {
        self.variant = variant;
        self
    }

    pub fn with_sites(mut self, n_minus: usize, n_plus: usize) -> Self {
        assert!(n_minus >= 2 && n_plus >= 2, "strips need at least 2 cells");
        self.n_minus = n_minus;
        self.n_plus = n_plus;
        self
    }

    /// Derived mass m = cos(JT/2).
    pub fn mass(&self) -> f64 {
        (self.jt / 2.0).cos()
    }

    /// Hopping amplitude J = (JT)/T.
    pub fn hopping(&self) -> f64 {
        self.jt / self.t
    }

    pub fn cells(&self, open: OpenDirection) -> usize {
        match open {
            OpenDirection::XMinus => self.n_minus,
            OpenDirection::XPlus => self.n_plus,
        }
    }
}

/// A point of the rotated Brillouin zone, both components in (-pi, pi].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumPoint {
    pub k_plus: f64,
    pub k_minus: f64,
}

impl MomentumPoint {
    /// Wraps both components into the principal zone (-pi, pi].
    pub fn new(k_plus: f64, k_minus: f64) -> Self {
        Self {
            k_plus: wrap_momentum(k_plus),
            k_minus: wrap_momentum(k_minus),
        }
    }
}

/// Reduce a momentum to (-pi, pi].
pub fn wrap_momentum(k: f64) -> f64 {
    let k = (k + PI).rem_euclid(2.0 * PI) - PI;
    // rem_euclid lands on -pi for inputs of the form -pi + 2*pi*n
    if k <= -PI {
        PI
    } else {
        k
    }
}

/// Even momentum grid k = 2 pi K / n with K in {-n/2, ..., n/2 - 1}.
pub fn momentum_grid(n: usize) -> Vec<f64> {
    assert!(
        n >= 2 && n.is_multiple_of(2),
        "momentum grids must be even, got {n}"
    );
    let half = (n / 2) as i64;
    (-half..half)
        .map(|k| 2.0 * PI * k as f64 / n as f64)
        .collect()
}

/// Grid shifted off the zone boundary: k = 2 pi (K + 1/2) / n. Useful when a
/// sweep must avoid the exactly dimerized k = +/- pi lines.
pub fn offset_momentum_grid(n: usize) -> Vec<f64> {
    assert!(
        n >= 2 && n.is_multiple_of(2),
        "momentum grids must be even, got {n}"
    );
    let half = (n / 2) as i64;
    (-half..half)
        .map(|k| 2.0 * PI * (k as f64 + 0.5) / n as f64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mass_is_recomputed() {
        let p = ModelParams::new(1.5 * PI, 1.0);
        assert!((p.mass() - (0.75 * PI).cos()).abs() < 1e-15);
        assert!((p.mass() + 0.7071067811865475).abs() < 1e-12);
    }

    #[test]
    fn momentum_wraps_into_principal_zone() {
        assert_eq!(wrap_momentum(-PI), PI);
        assert!((wrap_momentum(3.0 * PI) - PI).abs() < 1e-12);
        assert!((wrap_momentum(0.4) - 0.4).abs() < 1e-15);
        let p = MomentumPoint::new(-PI, 2.0 * PI);
        assert_eq!(p.k_plus, PI);
        assert!(p.k_minus.abs() < 1e-12);
    }

    #[test]
    fn grid_covers_zone_without_duplicates() {
        let g = momentum_grid(8);
        assert_eq!(g.len(), 8);
        assert!((g[0] + PI).abs() < 1e-15);
        assert!(g.last().unwrap() < &PI);
        let o = offset_momentum_grid(8);
        assert!(o.iter().all(|k| k.abs() < PI));
    }
}

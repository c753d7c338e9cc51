//! Exact Clifford algebra kernel for Cl(p,q), n = p + q <= 4.
//!
//! Basis blades are bitmasks over the generators; generator `k` squares to
//! +1 for `k < p` and -1 otherwise (positive-norm generators first, so the
//! timelike gamma0 of Cl(1,3) is generator 0 and the metric reads
//! diag(+,-,-,-)). Multivectors are dense: one coefficient per blade, any
//! coefficient ring.

mod blade;
pub(crate) mod multivector;
mod split;

pub use blade::{blade_grade, blade_product};
pub use multivector::{Multivector, Ring};
pub use split::{
    apply_rotor, boost_rotor, component_on, duality_rotor, field_bivector, field_components,
    pseudoscalar_commutation, relative_basis, relative_vector, PseudoscalarParity, SpacetimeSplit,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("unsupported signature Cl({p},{q}): need 1 <= p+q <= 4")]
    BadSignature { p: u32, q: u32 },
    #[error("operation needs a homogeneous multivector, found mixed grades")]
    NotHomogeneous,
    #[error("duality rotor needs a pseudoscalar squaring to -1; in Cl({p},{q}) it squares to {sq}. Use the discrete E/B swap in Euclidean signature")]
    NoDualityRotor { p: u32, q: u32, sq: i32 },
    #[error("operation needs at least one positive-norm generator (p >= 1)")]
    NeedsTimeAxis,
    #[error("direction argument must be a homogeneous grade-1 vector, found grade {found}")]
    ExpectedVector { found: u32 },
}

/// Metric signature (p, q): p positive-norm generators, then q negative-norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Signature {
    p: u8,
    q: u8,
}

/// Cl(1,3), metric diag(+,-,-,-); generator 0 is the time axis gamma0.
pub const MINKOWSKI: Signature = Signature { p: 1, q: 3 };
/// Cl(4,0), all generators square to +1.
pub const EUCLIDEAN4: Signature = Signature { p: 4, q: 0 };
/// Cl(3,1), metric diag(+,+,+,-).
pub const CL31: Signature = Signature { p: 3, q: 1 };
/// Cl(2,2), split signature.
pub const CL22: Signature = Signature { p: 2, q: 2 };

impl Signature {
    pub fn new(p: u32, q: u32) -> Result<Self, AlgebraError> {
        let n = p + q;
        if n == 0 || n > 4 {
            return Err(AlgebraError::BadSignature { p, q });
        }
        Ok(Signature { p: p as u8, q: q as u8 })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p as u32
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q as u32
    }

    /// Number of generators n = p + q.
    #[inline]
    pub fn dim(&self) -> u32 {
        (self.p + self.q) as u32
    }

    /// Number of basis blades, 2^n.
    #[inline]
    pub fn blade_count(&self) -> usize {
        1usize << self.dim()
    }

    /// Square of generator `k`: +1 or -1.
    #[inline]
    pub fn metric(&self, k: u32) -> i32 {
        debug_assert!(k < self.dim());
        if k < self.p as u32 {
            1
        } else {
            -1
        }
    }

    /// Letter used when printing generators: `e` for definite signatures,
    /// `g` otherwise (so Cl(1,3) blades read g0^g1 and Cl(4,0) blades e0^e1).
    pub fn generator_letter(&self) -> char {
        if self.q == 0 {
            'e'
        } else {
            'g'
        }
    }
}

impl std::fmt::Display for Signature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Cl({},{})", self.p, self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signature_validation() {
        assert!(Signature::new(1, 3).is_ok());
        assert!(Signature::new(4, 0).is_ok());
        assert!(Signature::new(0, 0).is_err());
        assert!(Signature::new(3, 2).is_err());
    }

    #[test]
    fn minkowski_metric_is_time_first() {
        assert_eq!(MINKOWSKI.metric(0), 1);
        assert_eq!(MINKOWSKI.metric(1), -1);
        assert_eq!(MINKOWSKI.metric(2), -1);
        assert_eq!(MINKOWSKI.metric(3), -1);
    }

    #[test]
    fn split_signature_metric() {
        assert_eq!(CL22.metric(0), 1);
        assert_eq!(CL22.metric(1), 1);
        assert_eq!(CL22.metric(2), -1);
        assert_eq!(CL22.metric(3), -1);
    }
}

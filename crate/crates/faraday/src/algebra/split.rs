//! Relative-frame machinery: the split along generator 0, relative basis
//! vectors, the field bivector, and the duality / boost rotors.

use super::multivector::Ring;
use super::{AlgebraError, Multivector, Signature};

/// Relative basis vector sigma_k = g_k g0, k in 1..=3.
///
/// In Cl(1,3) these square to +1 and behave like a Euclidean 3-frame inside
/// the even subalgebra; in Cl(4,0) they square to -1 (no bivector there
/// squares to +1), which is where the elliptic behavior of that signature
/// shows up.
pub fn relative_basis<S: Ring>(sig: Signature, k: u32) -> Multivector<S> {
    assert!((1..sig.dim()).contains(&k), "relative index {k} out of range for {sig}");
    Multivector::basis_vector(sig, k).geometric(&Multivector::basis_vector(sig, 0))
}

/// Component of `m` along a single unit blade `u`, i.e. x in m = ... + x u.
/// `u` must be a blade (one nonzero coefficient); works in any signature
/// because the projection is rescaled by the blade's scalar square.
pub fn component_on<S: Ring>(m: &Multivector<S>, u: &Multivector<S>) -> S {
    let sq = u.geometric(u).scalar_part();
    assert!(!sq.is_zero(), "component_on needs a non-null unit blade");
    m.geometric(u).scalar_part() * sq
}

/// A vector split against the time axis: a g0 = time + spatial, with the
/// spatial part living on the relative basis sigma_k.
#[derive(Debug, Clone, PartialEq)]
pub struct SpacetimeSplit<S> {
    pub time: S,
    pub spatial: [S; 3],
}

impl<S: Ring> SpacetimeSplit<S> {
    /// Split a grade-1 vector. Errors on non-vectors.
    pub fn of(a: &Multivector<S>) -> Result<Self, AlgebraError> {
        let sig = a.sig();
        assert_eq!(sig.dim(), 4, "spacetime split needs a 4-dimensional algebra");
        if a.homogeneous_grade()? > 1 {
            return Err(AlgebraError::NotHomogeneous);
        }
        let g0 = Multivector::basis_vector(sig, 0);
        let w = a.geometric(&g0);
        let time = w.scalar_part();
        let spatial = std::array::from_fn(|j| {
            component_on(&w.grade(2), &relative_basis(sig, j as u32 + 1))
        });
        Ok(SpacetimeSplit { time, spatial })
    }

    /// Rebuild the vector: (time + spatial) g0.
    pub fn recombine(&self, sig: Signature) -> Multivector<S> {
        let mut rel = Multivector::scalar(sig, self.time.clone());
        for (j, v) in self.spatial.iter().enumerate() {
            rel = &rel + &relative_basis(sig, j as u32 + 1).scale(v);
        }
        rel.geometric(&Multivector::basis_vector(sig, 0))
    }
}

/// Build a relative 3-vector sum v_k sigma_k.
pub fn relative_vector<S: Ring>(sig: Signature, v: &[S; 3]) -> Multivector<S> {
    let mut out = Multivector::zero(sig);
    for (j, c) in v.iter().enumerate() {
        out = &out + &relative_basis(sig, j as u32 + 1).scale(c);
    }
    out
}

/// Field bivector F = E + I B on the relative basis: E^k sigma_k plus the
/// pseudoscalar times B^k sigma_k.
pub fn field_bivector<S: Ring>(sig: Signature, e: &[S; 3], b: &[S; 3]) -> Multivector<S> {
    let i = Multivector::pseudoscalar(sig);
    &relative_vector(sig, e) + &i.geometric(&relative_vector(sig, b))
}

/// Read (E, B) components back off a bivector in the F = E + I B layout.
pub fn field_components<S: Ring>(f: &Multivector<S>) -> ([S; 3], [S; 3]) {
    let sig = f.sig();
    let i = Multivector::pseudoscalar(sig);
    let e = std::array::from_fn(|j| component_on(f, &relative_basis(sig, j as u32 + 1)));
    let b = std::array::from_fn(|j| {
        component_on(f, &i.geometric(&relative_basis(sig, j as u32 + 1)))
    });
    (e, b)
}

/// How a homogeneous multivector passes the pseudoscalar.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PseudoscalarParity {
    Commutes,
    Anticommutes,
}

/// Whether I a = +a I or I a = -a I. Errors on mixed-grade input, where no
/// single sign applies.
pub fn pseudoscalar_commutation<S: Ring>(
    a: &Multivector<S>,
) -> Result<PseudoscalarParity, AlgebraError> {
    a.homogeneous_grade()?;
    let i = Multivector::pseudoscalar(a.sig());
    let left = i.geometric(a);
    let right = a.geometric(&i);
    if left == right {
        Ok(PseudoscalarParity::Commutes)
    } else {
        debug_assert!(left == -&right);
        Ok(PseudoscalarParity::Anticommutes)
    }
}

/// Rotor exp(-I alpha) = cos(alpha) - I sin(alpha), evaluated in closed form
/// (the pseudoscalar must square to -1; Euclidean duality is a discrete swap
/// instead). Quarter turns snap to exact coefficients {0, +-1} so that the
/// alpha = pi/2 rotation negates the Lagrangian-type density exactly.
pub fn duality_rotor(sig: Signature, alpha: f64) -> Result<Multivector<f64>, AlgebraError> {
    let i = Multivector::<f64>::pseudoscalar(sig);
    let sq = i.geometric(&i).scalar_part();
    if sq != -1.0 {
        return Err(AlgebraError::NoDualityRotor { p: sig.p(), q: sig.q(), sq: sq as i32 });
    }
    let turns = alpha / std::f64::consts::FRAC_PI_2;
    let (c, s) = if turns == turns.round() && turns.abs() < 1e15 {
        match (turns.round() as i64).rem_euclid(4) {
            0 => (1.0, 0.0),
            1 => (0.0, 1.0),
            2 => (-1.0, 0.0),
            _ => (0.0, -1.0),
        }
    } else {
        (alpha.cos(), alpha.sin())
    };
    Ok(&Multivector::scalar(sig, c) - &i.scale(&s))
}

/// Boost rotor exp(-(beta/2) g_axis g0) = cosh(beta/2) - sinh(beta/2) g_axis g0,
/// in closed form (the boost plane squares to +1). `beta` is the rapidity.
pub fn boost_rotor(sig: Signature, axis: u32, beta: f64) -> Multivector<f64> {
    let plane = relative_basis::<f64>(sig, axis);
    let sq = plane.geometric(&plane).scalar_part();
    assert_eq!(sq, 1.0, "boost plane g{axis} g0 must square to +1 in {sig}");
    &Multivector::scalar(sig, (beta / 2.0).cosh()) - &plane.scale(&(beta / 2.0).sinh())
}

/// Conjugate by a rotor: R m R~.
pub fn apply_rotor<S: Ring>(r: &Multivector<S>, m: &Multivector<S>) -> Multivector<S> {
    r.geometric(m).geometric(&r.reverse())
}

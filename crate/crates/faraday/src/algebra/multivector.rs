//! Dense multivectors with generic coefficient ring.

use super::blade::{blade_grade, blade_product};
use super::{AlgebraError, Signature};
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Coefficient ring: exact rationals, f64, or symbolic polynomials.
pub trait Ring:
    Clone + PartialEq + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone + PartialEq + Zero + One + Neg<Output = T> + Sub<Output = T>
{
}

pub(crate) const SLOTS: usize = 16;

/// Dense multivector: one coefficient per basis blade, 2^n slots used.
///
/// All binary operations panic if the two operands live in different
/// signatures; that is a programming error, not recoverable input.
#[derive(Debug, Clone, PartialEq)]
pub struct Multivector<S> {
    sig: Signature,
    coeffs: [S; SLOTS],
}

impl<S: Copy> Copy for Multivector<S> {}

/// Bit `i` of the result equals bit `i ^ t` of `m`: the occupancy mask of
/// a multivector whose blade indices have all been XORed with `t`.
fn xor_shuffle(mut m: u16, t: u16) -> u16 {
    if t & 1 != 0 {
        m = ((m & 0xAAAA) >> 1) | ((m & 0x5555) << 1);
    }
    if t & 2 != 0 {
        m = ((m & 0xCCCC) >> 2) | ((m & 0x3333) << 2);
    }
    if t & 4 != 0 {
        m = ((m & 0xF0F0) >> 4) | ((m & 0x0F0F) << 4);
    }
    if t & 8 != 0 {
        m = ((m & 0xFF00) >> 8) | ((m & 0x00FF) << 8);
    }
    m
}

impl<S: Ring> Multivector<S> {
    pub fn zero(sig: Signature) -> Self {
        Multivector { sig, coeffs: std::array::from_fn(|_| S::zero()) }
    }

    pub fn scalar(sig: Signature, value: S) -> Self {
        let mut m = Self::zero(sig);
        m.coeffs[0] = value;
        m
    }

    /// Single blade with the given generator bitmask.
    pub fn blade(sig: Signature, mask: u16, value: S) -> Self {
        assert!((mask as usize) < sig.blade_count(), "blade mask out of range for {sig}");
        let mut m = Self::zero(sig);
        m.coeffs[mask as usize] = value;
        m
    }

    /// Basis vector (generator) k.
    pub fn basis_vector(sig: Signature, k: u32) -> Self {
        assert!(k < sig.dim(), "generator {k} out of range for {sig}");
        Self::blade(sig, 1 << k, S::one())
    }

    /// Unit pseudoscalar: product of all generators in ascending order.
    pub fn pseudoscalar(sig: Signature) -> Self {
        Self::blade(sig, (sig.blade_count() - 1) as u16, S::one())
    }

    /// Dense construction; `coeffs[mask]` is the coefficient of that blade.
    pub fn from_coeffs(sig: Signature, coeffs: &[S]) -> Self {
        assert_eq!(coeffs.len(), sig.blade_count(), "need one coefficient per blade of {sig}");
        let mut m = Self::zero(sig);
        m.coeffs[..coeffs.len()].clone_from_slice(coeffs);
        m
    }

    #[inline]
    pub fn sig(&self) -> Signature {
        self.sig
    }

    #[inline]
    pub fn coeff(&self, mask: u16) -> &S {
        &self.coeffs[mask as usize]
    }

    pub fn set_coeff(&mut self, mask: u16, value: S) {
        assert!((mask as usize) < self.sig.blade_count(), "blade mask out of range for {}", self.sig);
        self.coeffs[mask as usize] = value;
    }

    pub fn scalar_part(&self) -> S {
        self.coeffs[0].clone()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = self.clone();
        for c in &mut out.coeffs {
            *c = c.clone() * s.clone();
        }
        out
    }

    fn assert_same_sig(&self, other: &Self) {
        assert_eq!(self.sig, other.sig, "mixed signatures: {} vs {}", self.sig, other.sig);
    }

    /// Shared product kernel. Zero coefficients never contribute, so sparse
    /// operands (basis vectors, rotors, field bivectors) cost only their
    /// live blade pairs; per-operand occupancy masks find those pairs with
    /// bit tricks instead of a dense scan.
    ///
    /// Each target sum combines the slots `a` and `top ^ a` before folding
    /// into the running total. That pairing is a fixed point of the blade
    /// complement permutation `a -> a ^ top`, and float addition commutes,
    /// so multiplying an operand by the pseudoscalar (which sends every
    /// blade to its complement) negates or preserves each target sum
    /// bit-exactly. The exact quarter-turn duality claims rest on this;
    /// the fixed order also keeps results reproducible run to run.
    fn product_filtered(&self, rhs: &Self, keep: impl Fn(u32, u32, u32) -> bool) -> Self {
        self.assert_same_sig(rhs);
        let dim = self.sig.blade_count();
        let mut live_a: u16 = 0;
        for (a, c) in self.coeffs.iter().enumerate().take(dim) {
            if !c.is_zero() {
                live_a |= 1 << a;
            }
        }
        let mut live_b: u16 = 0;
        for (b, c) in rhs.coeffs.iter().enumerate().take(dim) {
            if !c.is_zero() {
                live_b |= 1 << b;
            }
        }
        let top = (dim - 1) as u16;
        let mut out = Self::zero(self.sig);
        for t in 0..dim as u16 {
            let pairs = live_a & xor_shuffle(live_b, t);
            if pairs == 0 {
                continue;
            }
            let gt = blade_grade(t);
            let term = |a: u16| -> Option<S> {
                if pairs & (1 << a) == 0 {
                    return None;
                }
                let b = a ^ t;
                if !keep(blade_grade(a), blade_grade(b), gt) {
                    return None;
                }
                let (sign, m) = blade_product(self.sig, a, b);
                debug_assert_eq!(m, t);
                let v = self.coeffs[a as usize].clone() * rhs.coeffs[b as usize].clone();
                Some(if sign < 0 { -v } else { v })
            };
            let mut acc = S::zero();
            for a in 0..(dim / 2) as u16 {
                let pair = match (term(a), term(top ^ a)) {
                    (Some(x), Some(y)) => x + y,
                    (Some(x), None) | (None, Some(x)) => x,
                    (None, None) => continue,
                };
                acc = acc + pair;
            }
            out.coeffs[t as usize] = acc;
        }
        out
    }

    /// Geometric (Clifford) product.
    pub fn geometric(&self, rhs: &Self) -> Self {
        self.product_filtered(rhs, |_, _, _| true)
    }

    /// Outer product: grade-(r+s) part of the geometric product, extended
    /// bilinearly over blades.
    pub fn outer(&self, rhs: &Self) -> Self {
        self.product_filtered(rhs, |ga, gb, gt| gt == ga + gb)
    }

    /// Inner product: grade-|r-s| part of the geometric product per blade
    /// pair, with any grade-0 factor contracting to zero.
    pub fn inner(&self, rhs: &Self) -> Self {
        self.product_filtered(rhs, |ga, gb, gt| ga != 0 && gb != 0 && gt == ga.abs_diff(gb))
    }

    /// Grade-k projection.
    pub fn grade(&self, k: u32) -> Self {
        assert!(k <= self.sig.dim(), "grade {k} out of range for {}", self.sig);
        let mut out = Self::zero(self.sig);
        for mask in 0..self.sig.blade_count() {
            if blade_grade(mask as u16) == k {
                out.coeffs[mask] = self.coeffs[mask].clone();
            }
        }
        out
    }

    /// The single grade this multivector occupies, if it is homogeneous.
    /// Zero is homogeneous of every grade; report it as grade 0.
    pub fn homogeneous_grade(&self) -> Result<u32, AlgebraError> {
        let mut found: Option<u32> = None;
        for mask in 0..self.sig.blade_count() {
            if !self.coeffs[mask].is_zero() {
                let g = blade_grade(mask as u16);
                match found {
                    None => found = Some(g),
                    Some(prev) if prev != g => return Err(AlgebraError::NotHomogeneous),
                    _ => {}
                }
            }
        }
        Ok(found.unwrap_or(0))
    }

    /// Reversion: grade-k blades pick up (-1)^(k(k-1)/2).
    pub fn reverse(&self) -> Self {
        let mut out = self.clone();
        for mask in 0..self.sig.blade_count() {
            let k = blade_grade(mask as u16);
            if (k * (k.saturating_sub(1)) / 2) % 2 == 1 {
                out.coeffs[mask] = -out.coeffs[mask].clone();
            }
        }
        out
    }

    /// Hermitian adjoint: reversion conjugated by generator 0, g0 M~ g0.
    ///
    /// This is the relative reverse picked out by the time axis; it fixes
    /// relative vectors g_k g0 and flips their duals, which is the adjoint
    /// under which the energy-type density <F F†> comes out positive.
    pub fn hermitian_adjoint(&self) -> Self {
        let g0 = Self::basis_vector(self.sig, 0);
        g0.geometric(&self.reverse()).geometric(&g0)
    }

    /// Right-multiplication by the unit pseudoscalar (the dual map).
    pub fn dual(&self) -> Self {
        self.geometric(&Self::pseudoscalar(self.sig))
    }
}

impl<S: Ring> Add for &Multivector<S> {
    type Output = Multivector<S>;
    fn add(self, rhs: Self) -> Multivector<S> {
        self.assert_same_sig(rhs);
        let mut out = self.clone();
        for (o, r) in out.coeffs.iter_mut().zip(&rhs.coeffs) {
            *o = o.clone() + r.clone();
        }
        out
    }
}

impl<S: Ring> Sub for &Multivector<S> {
    type Output = Multivector<S>;
    fn sub(self, rhs: Self) -> Multivector<S> {
        self.assert_same_sig(rhs);
        let mut out = self.clone();
        for (o, r) in out.coeffs.iter_mut().zip(&rhs.coeffs) {
            *o = o.clone() - r.clone();
        }
        out
    }
}

impl<S: Ring> Neg for &Multivector<S> {
    type Output = Multivector<S>;
    fn neg(self) -> Multivector<S> {
        let mut out = self.clone();
        for o in &mut out.coeffs {
            *o = -o.clone();
        }
        out
    }
}

impl<S: Ring> Mul for &Multivector<S> {
    type Output = Multivector<S>;
    fn mul(self, rhs: Self) -> Multivector<S> {
        self.geometric(rhs)
    }
}

impl Multivector<f64> {
    /// Largest absolute coefficient; handy as an error measure.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }
}

pub(crate) fn blade_name(sig: Signature, mask: u16) -> String {
    let letter = sig.generator_letter();
    let mut parts = Vec::new();
    for k in 0..sig.dim() {
        if mask & (1 << k) != 0 {
            parts.push(format!("{letter}{k}"));
        }
    }
    parts.join("^")
}

impl<S: Ring + fmt::Display> fmt::Display for Multivector<S> {
    /// Renders in the grammar the symbolic parser accepts, so exact-coefficient
    /// multivectors round-trip: `3/2 g0^g1 - 2 g2 + 1`. Composite coefficients
    /// are parenthesized.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for mask in 0..self.sig.blade_count() {
            let c = &self.coeffs[mask];
            if c.is_zero() {
                continue;
            }
            let mut body = c.to_string();
            let mut negative = false;
            if let Some(stripped) = body.strip_prefix('-') {
                if !stripped.contains(['+', '-', ' ']) {
                    negative = true;
                    body = stripped.to_string();
                }
            }
            if body.contains(['+', '-', ' ']) {
                body = format!("({body})");
            }
            let name = blade_name(self.sig, mask as u16);
            let term = if name.is_empty() {
                body
            } else if body == "1" {
                name
            } else {
                format!("{body} {name}")
            };
            if first {
                if negative {
                    write!(f, "-{term}")?;
                } else {
                    write!(f, "{term}")?;
                }
                first = false;
            } else if negative {
                write!(f, " - {term}")?;
            } else {
                write!(f, " + {term}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{CL22, EUCLIDEAN4, MINKOWSKI};
    use num::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    type Mq = Multivector<BigRational>;

    #[test]
    fn geometric_product_examples() {
        // g0 g0 = 1
        let g0 = Mq::basis_vector(MINKOWSKI, 0);
        assert_eq!(g0.geometric(&g0), Mq::scalar(MINKOWSKI, q(1)));
        // g1 g1 = -1
        let g1 = Mq::basis_vector(MINKOWSKI, 1);
        assert_eq!(g1.geometric(&g1), Mq::scalar(MINKOWSKI, q(-1)));
        // g0 g1 = -(g1 g0)
        let a = g0.geometric(&g1);
        let b = g1.geometric(&g0);
        assert_eq!(a, -&b);
        // (g1 g0)^2 = +1: the relative vector squares like a Euclidean unit.
        let s1 = g1.geometric(&g0);
        assert_eq!(s1.geometric(&s1), Mq::scalar(MINKOWSKI, q(1)));
    }

    #[test]
    fn inner_product_convention() {
        // Vector dot: g0 . g0 = 1, g0 . g1 = 0.
        let g0 = Mq::basis_vector(MINKOWSKI, 0);
        let g1 = Mq::basis_vector(MINKOWSKI, 1);
        assert_eq!(g0.inner(&g0), Mq::scalar(MINKOWSKI, q(1)));
        assert!(g0.inner(&g1).is_zero());
        // Mixed grade: g0 . (g0 g1) = g1 contracted through the metric.
        let g0g1 = g0.geometric(&g1);
        assert_eq!(g0.inner(&g0g1), g1);
        // Scalars annihilate under the inner product.
        let s = Mq::scalar(MINKOWSKI, q(3));
        assert!(s.inner(&g1).is_zero());
        assert!(g1.inner(&s).is_zero());
        assert!(s.inner(&s).is_zero());
    }

    #[test]
    fn outer_product_examples() {
        let g0 = Mq::basis_vector(MINKOWSKI, 0);
        let g1 = Mq::basis_vector(MINKOWSKI, 1);
        // g0 ^ g1 keeps the grade-2 part only; g0 ^ g0 = 0.
        assert_eq!(g0.outer(&g1), g0.geometric(&g1));
        assert!(g0.outer(&g0).is_zero());
        // Scalar outer anything = plain scaling.
        let s = Mq::scalar(MINKOWSKI, q(2));
        assert_eq!(s.outer(&g1), g1.scale(&q(2)));
    }

    #[test]
    fn vector_product_splits_into_dot_plus_wedge() {
        let a = Mq::from_coeffs(
            MINKOWSKI,
            &[q(0), q(2), q(-1), q(0), q(3), q(0), q(0), q(0), q(5), q(0), q(0), q(0), q(0), q(0), q(0), q(0)],
        )
        .grade(1);
        let b = Mq::from_coeffs(
            MINKOWSKI,
            &[q(0), q(-7), q(4), q(0), q(1), q(0), q(0), q(0), q(2), q(0), q(0), q(0), q(0), q(0), q(0), q(0)],
        )
        .grade(1);
        let lhs = a.geometric(&b);
        let rhs = &a.inner(&b) + &a.outer(&b);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn grade_projection_reconstructs() {
        let m = Mq::from_coeffs(
            MINKOWSKI,
            &(0..16).map(q).collect::<Vec<_>>(),
        );
        let mut sum = Mq::zero(MINKOWSKI);
        for k in 0..=4 {
            sum = &sum + &m.grade(k);
        }
        assert_eq!(sum, m);
    }

    #[test]
    fn reverse_signs_by_grade() {
        // (g1 g2)~ = g2 g1 = -(g1 g2)
        let g1 = Mq::basis_vector(MINKOWSKI, 1);
        let g2 = Mq::basis_vector(MINKOWSKI, 2);
        let b = g1.geometric(&g2);
        assert_eq!(b.reverse(), -&b);
        // Pseudoscalar in n=4 reverses to itself: (-1)^(4*3/2) = +1.
        let i = Mq::pseudoscalar(MINKOWSKI);
        assert_eq!(i.reverse(), i);
        // Vectors are fixed.
        assert_eq!(g1.reverse(), g1);
    }

    #[test]
    fn pseudoscalar_squares() {
        // i^2 = -1 in Cl(1,3) and Cl(3,1), +1 in Cl(4,0) and Cl(2,2).
        for (sig, want) in [
            (MINKOWSKI, q(-1)),
            (crate::algebra::CL31, q(-1)),
            (EUCLIDEAN4, q(1)),
            (CL22, q(1)),
        ] {
            let i = Mq::pseudoscalar(sig);
            assert_eq!(i.geometric(&i), Mq::scalar(sig, want.clone()), "{sig}");
        }
    }

    #[test]
    fn pseudoscalar_has_unit_magnitude() {
        // <I~ I>_0 = I^2 = -1 in Cl(1,3) (I~ = I for grade 4), so the
        // magnitude is its absolute value; the Hermitian pairing is +1.
        let i = Mq::pseudoscalar(MINKOWSKI);
        assert_eq!(i.reverse().geometric(&i).scalar_part(), q(-1));
        assert_eq!(i.hermitian_adjoint().geometric(&i).scalar_part(), q(1));
    }

    #[test]
    fn hermitian_adjoint_behavior() {
        // Relative vectors g_k g0 are fixed, their duals flip.
        let g0 = Mq::basis_vector(MINKOWSKI, 0);
        let g1 = Mq::basis_vector(MINKOWSKI, 1);
        let s1 = g1.geometric(&g0);
        assert_eq!(s1.hermitian_adjoint(), s1);
        let i = Mq::pseudoscalar(MINKOWSKI);
        let is1 = i.geometric(&s1);
        assert_eq!(is1.hermitian_adjoint(), -&is1);
        // Involution.
        let m = Mq::from_coeffs(MINKOWSKI, &(0..16).map(q).collect::<Vec<_>>());
        assert_eq!(m.hermitian_adjoint().hermitian_adjoint(), m);
    }

    #[test]
    fn homogeneous_grade_detection() {
        let g1 = Mq::basis_vector(MINKOWSKI, 1);
        let g2 = Mq::basis_vector(MINKOWSKI, 2);
        assert_eq!(g1.homogeneous_grade(), Ok(1));
        assert_eq!(g1.geometric(&g2).homogeneous_grade(), Ok(2));
        let mixed = &g1 + &g1.geometric(&g2);
        assert_eq!(mixed.homogeneous_grade(), Err(AlgebraError::NotHomogeneous));
    }

    #[test]
    fn display_round_trip_shape() {
        let g0 = Mq::basis_vector(MINKOWSKI, 0);
        let g1 = Mq::basis_vector(MINKOWSKI, 1);
        let m = &g0.geometric(&g1).scale(&BigRational::new(3.into(), 2.into()))
            - &Mq::scalar(MINKOWSKI, q(2));
        assert_eq!(m.to_string(), "-2 + 3/2 g0^g1");
        assert_eq!(Mq::zero(MINKOWSKI).to_string(), "0");
        let e = Multivector::<f64>::basis_vector(EUCLIDEAN4, 2);
        assert_eq!(e.to_string(), "e2");
    }

    #[test]
    #[should_panic(expected = "mixed signatures")]
    fn mixed_signature_panics() {
        let a = Mq::basis_vector(MINKOWSKI, 0);
        let b = Mq::basis_vector(EUCLIDEAN4, 0);
        let _ = a.geometric(&b);
    }
}

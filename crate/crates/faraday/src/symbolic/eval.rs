//! Canonicalization: parsed expressions become dense multivectors over the
//! polynomial ring, where equality is decidable term by term.

use super::parser::Expr;
use super::poly::Poly;
use super::SymbolicError;
use crate::algebra::{self, Multivector, Signature};
use num_traits::One;
use std::collections::BTreeMap;
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymbolKind {
    Scalar,
    /// Spatial 3-vector `V`: expands to V1..V3 on the relative basis
    /// (generator_k generator_0).
    Vector3,
    /// Full vector `v`: expands to v0..v3 on the generators.
    Vector4,
}

#[derive(Debug, Clone, Default)]
pub struct SymbolTable {
    entries: BTreeMap<String, SymbolKind>,
}

fn reserved(name: &str) -> bool {
    if name == "I" {
        return true;
    }
    let mut chars = name.chars();
    matches!(chars.next(), Some('e' | 'g')) && chars.as_str().chars().all(|c| c.is_ascii_digit())
        && name.len() > 1
}

impl SymbolTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn declare(&mut self, name: &str, kind: SymbolKind) -> Result<(), SymbolicError> {
        if reserved(name) {
            return Err(SymbolicError::ReservedName(name.to_string()));
        }
        if self.entries.insert(name.to_string(), kind).is_some() {
            return Err(SymbolicError::DuplicateSymbol(name.to_string()));
        }
        Ok(())
    }

    /// Component lookup: `E2` is a scalar when `E` is a declared vector.
    fn component_base(&self, name: &str) -> Option<SymbolKind> {
        let (base, last) = name.split_at(name.len().checked_sub(1)?);
        let digit = last.chars().next()?;
        match self.entries.get(base)? {
            SymbolKind::Vector3 if ('1'..='3').contains(&digit) => Some(SymbolKind::Vector3),
            SymbolKind::Vector4 if ('0'..='3').contains(&digit) => Some(SymbolKind::Vector4),
            _ => None,
        }
    }
}

fn generator_index(name: &str, sig: Signature) -> Option<Result<u32, SymbolicError>> {
    let mut chars = name.chars();
    if !matches!(chars.next(), Some('e' | 'g')) {
        return None;
    }
    let digits = chars.as_str();
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let k: u32 = digits.parse().ok()?;
    Some(if k < sig.dim() {
        Ok(k)
    } else {
        Err(SymbolicError::BadGenerator { name: name.to_string(), dim: sig.dim() })
    })
}

type Mv = Multivector<Poly>;

fn resolve(name: &str, sig: Signature, table: &SymbolTable) -> Result<Mv, SymbolicError> {
    if name == "I" {
        return Ok(Mv::pseudoscalar(sig));
    }
    if let Some(idx) = generator_index(name, sig) {
        return Ok(Mv::basis_vector(sig, idx?));
    }
    match table.entries.get(name) {
        Some(SymbolKind::Scalar) => Ok(Mv::scalar(sig, Poly::var(name))),
        Some(SymbolKind::Vector3) => {
            if sig.dim() != 4 {
                return Err(SymbolicError::NeedsFourDims(name.to_string()));
            }
            let mut out = Mv::zero(sig);
            for k in 1..=3u32 {
                let comp = algebra::relative_basis::<Poly>(sig, k).scale(&Poly::var(&format!("{name}{k}")));
                out = &out + &comp;
            }
            Ok(out)
        }
        Some(SymbolKind::Vector4) => {
            if sig.dim() != 4 {
                return Err(SymbolicError::NeedsFourDims(name.to_string()));
            }
            let mut out = Mv::zero(sig);
            for k in 0..4u32 {
                let comp = Mv::basis_vector(sig, k).scale(&Poly::var(&format!("{name}{k}")));
                out = &out + &comp;
            }
            Ok(out)
        }
        None => {
            if table.component_base(name).is_some() {
                Ok(Mv::scalar(sig, Poly::var(name)))
            } else {
                Err(SymbolicError::UnknownSymbol(name.to_string()))
            }
        }
    }
}

/// Evaluate an expression to its canonical form: a multivector whose
/// coefficients are polynomials in the declared symbols.
pub fn canonicalize(expr: &Expr, sig: Signature, table: &SymbolTable) -> Result<Mv, SymbolicError> {
    Ok(match expr {
        Expr::Rational(r) => Mv::scalar(sig, Poly::constant(r.clone())),
        Expr::Ident(name) => resolve(name, sig, table)?,
        Expr::Neg(e) => -&canonicalize(e, sig, table)?,
        Expr::Reverse(e) => canonicalize(e, sig, table)?.reverse(),
        Expr::Adjoint(e) => canonicalize(e, sig, table)?.hermitian_adjoint(),
        Expr::Power(e, n) => {
            let base = canonicalize(e, sig, table)?;
            let mut acc = Mv::scalar(sig, Poly::one());
            for _ in 0..*n {
                acc = acc.geometric(&base);
            }
            acc
        }
        Expr::Grade(e, k) => {
            if *k > sig.dim() {
                return Err(SymbolicError::BadGrade { grade: *k, dim: sig.dim() });
            }
            canonicalize(e, sig, table)?.grade(*k)
        }
        Expr::Geometric(a, b) => canonicalize(a, sig, table)?.geometric(&canonicalize(b, sig, table)?),
        Expr::Wedge(a, b) => canonicalize(a, sig, table)?.outer(&canonicalize(b, sig, table)?),
        Expr::Dot(a, b) => canonicalize(a, sig, table)?.inner(&canonicalize(b, sig, table)?),
        Expr::Add(a, b) => &canonicalize(a, sig, table)? + &canonicalize(b, sig, table)?,
        Expr::Sub(a, b) => &canonicalize(a, sig, table)? - &canonicalize(b, sig, table)?,
    })
}

/// Outcome of comparing two canonical forms blade by blade.
#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub equal: bool,
    pub lhs_canonical: String,
    pub rhs_canonical: String,
    /// One line per blade whose coefficients differ.
    pub mismatches: Vec<String>,
}

pub fn verify_identity(
    lhs_src: &str,
    rhs_src: &str,
    sig: Signature,
    table: &SymbolTable,
) -> Result<IdentityCheck, SymbolicError> {
    let lhs = canonicalize(&super::parser::parse(lhs_src)?, sig, table)?;
    let rhs = canonicalize(&super::parser::parse(rhs_src)?, sig, table)?;
    let mut mismatches = Vec::new();
    for mask in 0..sig.blade_count() as u16 {
        let (cl, cr) = (lhs.coeff(mask), rhs.coeff(mask));
        if cl != cr {
            let name = if mask == 0 {
                "scalar".to_string()
            } else {
                crate::algebra::multivector::blade_name(sig, mask)
            };
            let mut line = String::new();
            let _ = write!(line, "{name}: lhs = {cl}, rhs = {cr}");
            mismatches.push(line);
        }
    }
    Ok(IdentityCheck {
        equal: mismatches.is_empty(),
        lhs_canonical: lhs.to_string(),
        rhs_canonical: rhs.to_string(),
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{EUCLIDEAN4, MINKOWSKI};

    fn table(scalars: &[&str], vec3: &[&str]) -> SymbolTable {
        let mut t = SymbolTable::new();
        for s in scalars {
            t.declare(s, SymbolKind::Scalar).unwrap();
        }
        for v in vec3 {
            t.declare(v, SymbolKind::Vector3).unwrap();
        }
        t
    }

    fn check(lhs: &str, rhs: &str, sig: Signature, t: &SymbolTable) -> IdentityCheck {
        verify_identity(lhs, rhs, sig, t).unwrap()
    }

    #[test]
    fn generator_arithmetic() {
        let t = SymbolTable::new();
        assert!(check("g0 g0", "1", MINKOWSKI, &t).equal);
        assert!(check("g1 g1", "-1", MINKOWSKI, &t).equal);
        assert!(check("e1 e1", "1", EUCLIDEAN4, &t).equal);
        assert!(check("I I", "-1", MINKOWSKI, &t).equal);
        assert!(check("I I", "1", EUCLIDEAN4, &t).equal);
    }

    #[test]
    fn symbolic_vectors_expand_on_relative_basis() {
        let t = table(&[], &["E"]);
        // E = E1 g1 g0 + E2 g2 g0 + E3 g3 g0, and (g_k g0)^2 = +1 there.
        let c = check("E E", "E1 E1 + E2 E2 + E3 E3", MINKOWSKI, &t);
        assert!(c.equal, "{:?}", c.mismatches);
        // Same symbol in the definite signature squares negative.
        let c = check("E E", "-(E1 E1 + E2 E2 + E3 E3)", EUCLIDEAN4, &t);
        assert!(c.equal, "{:?}", c.mismatches);
    }

    #[test]
    fn four_vector_split() {
        let mut t = SymbolTable::new();
        t.declare("a", SymbolKind::Vector4).unwrap();
        t.declare("b", SymbolKind::Vector4).unwrap();
        let c = check("a b", "a|b + a^b", MINKOWSKI, &t);
        assert!(c.equal, "{:?}", c.mismatches);
        let c = check("a^b + b^a", "0", MINKOWSKI, &t);
        assert!(c.equal, "{:?}", c.mismatches);
    }

    #[test]
    fn mismatch_reporting_names_blades() {
        let t = SymbolTable::new();
        let c = check("g0 g1", "g1 g0", MINKOWSKI, &t);
        assert!(!c.equal);
        assert_eq!(c.mismatches.len(), 1);
        assert!(c.mismatches[0].starts_with("g0^g1:"), "{}", c.mismatches[0]);
    }

    #[test]
    fn rejects_unknown_and_reserved() {
        let mut t = SymbolTable::new();
        assert!(matches!(
            verify_identity("q", "0", MINKOWSKI, &t),
            Err(SymbolicError::UnknownSymbol(_))
        ));
        assert!(matches!(
            verify_identity("g7", "0", MINKOWSKI, &t),
            Err(SymbolicError::BadGenerator { .. })
        ));
        assert!(matches!(
            t.declare("g1", SymbolKind::Scalar),
            Err(SymbolicError::ReservedName(_))
        ));
        assert!(matches!(
            verify_identity("<g0>_5", "0", MINKOWSKI, &t),
            Err(SymbolicError::BadGrade { .. })
        ));
    }

    #[test]
    fn canonical_display_round_trips_through_parser() {
        let t = table(&["c"], &["E", "B"]);
        let src = "(E + I B)(E + I B) - 3/2 c g0^g1";
        let first = canonicalize(&crate::symbolic::parse(src).unwrap(), MINKOWSKI, &t).unwrap();
        let printed = first.to_string();
        let second = canonicalize(&crate::symbolic::parse(&printed).unwrap(), MINKOWSKI, &t).unwrap();
        assert_eq!(first, second, "printed form was: {printed}");
    }
}

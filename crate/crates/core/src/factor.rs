//! Factorization of polynomials over `F_q` into monic irreducibles.
//!
//! Inputs here are desk-scale (numerators and denominators of module
//! coefficients and points), so plain trial division by monic polynomials
//! of increasing degree is used: once all factors of degree `< d` have been
//! divided out, any degree-`d` divisor found is automatically irreducible,
//! and a nontrivial remainder with no factor of degree at most half its own
//! is irreducible as well.

use crate::error::{Error, Result};
use crate::field::Fq;
use crate::poly::{Poly, Var};

/// Iterator over all monic polynomials of exact degree `d`.
pub fn monic_polys_of_degree(field: &Fq, var: Var, d: usize) -> impl Iterator<Item = Poly> {
    let q = field.q();
    let field = field.clone();
    let count = q.checked_pow(d as u32).expect("degree too large to enumerate");
    (0..count).map(move |mut idx| {
        let mut coeffs = Vec::with_capacity(d + 1);
        for _ in 0..d {
            coeffs.push(idx % q);
            idx /= q;
        }
        coeffs.push(1);
        Poly::from_reps(&field, var, coeffs)
    })
}

/// Multiset of `(monic irreducible, multiplicity)` factors, canonically
/// sorted. The product of the factors times the leading coefficient of the
/// input reproduces the input.
pub fn factor_into_irreducibles(a: &Poly) -> Result<Vec<(Poly, usize)>> {
    if a.is_zero() {
        return Err(Error::FactorZero);
    }
    let field = a.field().clone();
    let var = a.var();
    let mut rest = a.monic();
    let mut factors: Vec<(Poly, usize)> = Vec::new();
    let mut d = 1usize;
    while rest.degree().unwrap_or(0) >= 2 * d {
        for cand in monic_polys_of_degree(&field, var, d) {
            let mut mult = 0usize;
            loop {
                let (q, r) = rest.div_rem(&cand).expect("nonzero candidate");
                if !r.is_zero() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                factors.push((cand, mult));
                if rest.degree().unwrap_or(0) < 2 * d {
                    break;
                }
            }
        }
        d += 1;
    }
    if rest.degree().unwrap_or(0) >= 1 {
        factors.push((rest, 1));
    }
    factors.sort_by(|(a, _), (b, _)| a.canonical_cmp(b));
    Ok(factors)
}

/// Trial-division irreducibility test.
pub fn is_irreducible(a: &Poly) -> bool {
    let deg = match a.degree() {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    for d in 1..=deg / 2 {
        for cand in monic_polys_of_degree(a.field(), a.var(), d) {
            if cand.divides(a) {
                return false;
            }
        }
    }
    true
}

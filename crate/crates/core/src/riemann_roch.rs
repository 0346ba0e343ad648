//! Riemann-Roch spaces `L(D)` on the genus-0 model underlying `k = F_q(T)`.
//!
//! With genus 0 hard-wired, the dimension degenerates to `deg(D) + 1` for
//! `deg(D) >= 0` and the spaces have an explicit monomial-style basis:
//! writing `D = sum n_v (pi_v) + n_inf (inf)`, put `Den = prod_{n_v > 0}
//! pi_v^{n_v}` and `N = prod_{n_v < 0} pi_v^{-n_v}`; then `{ N T^s / Den :
//! 0 <= s <= deg Den + n_inf - deg N }` is an `F_q`-basis.

use crate::error::{Error, Result};
use crate::field::Fq;
use crate::linalg::FqMatrix;
use crate::places::{candidate_places, ord_at_place, Divisor, Place};
use crate::poly::{Poly, Var};
use crate::ratfunc::RatFunc;

/// An explicit `F_q`-basis of `L(D)`, ordered by increasing numerator
/// power so coordinates are reproducible.
#[derive(Clone, Debug)]
pub struct RrBasis {
    divisor: Divisor,
    elements: Vec<RatFunc>,
}

impl RrBasis {
    pub fn divisor(&self) -> &Divisor {
        &self.divisor
    }

    pub fn elements(&self) -> &[RatFunc] {
        &self.elements
    }

    pub fn dimension(&self) -> usize {
        self.elements.len()
    }
}

/// `dim L(D)` on the genus-0 curve: 0 for negative degree, else deg + 1.
pub fn rr_dimension(d: &Divisor) -> i64 {
    let deg = d.degree();
    if deg < 0 {
        0
    } else {
        deg + 1
    }
}

/// Construct the explicit basis described in the module docs.
pub fn rr_basis(field: &Fq, d: &Divisor) -> RrBasis {
    let mut den = Poly::one(field, Var::Theta);
    let mut num = Poly::one(field, Var::Theta);
    let mut n_inf: i64 = 0;
    for (v, c) in d.entries() {
        match v {
            Place::Infinity => n_inf = c,
            Place::Finite(pi) => {
                if c > 0 {
                    den = den.mul(&pi.pow(c as u64));
                } else {
                    num = num.mul(&pi.pow((-c) as u64));
                }
            }
        }
    }
    let top = den.degree().unwrap() as i64 + n_inf - num.degree().unwrap() as i64;
    let mut elements = Vec::new();
    let mut s: i64 = 0;
    while s <= top {
        let numerator = num.shift(s as usize);
        elements.push(RatFunc::new(numerator, den.clone()).expect("nonzero denominator"));
        s += 1;
    }
    debug_assert_eq!(elements.len() as i64, rr_dimension(d));
    RrBasis { divisor: d.clone(), elements }
}

/// Membership test: `f = 0` or `ord_v(f) >= -coeff_D(v)` at every place in
/// the union of the supports of `f` and `D`.
pub fn rr_contains(d: &Divisor, f: &RatFunc) -> bool {
    if f.is_zero() {
        return true;
    }
    let mut places: Vec<Place> =
        candidate_places(std::slice::from_ref(f)).expect("nonzero input");
    for v in d.support() {
        if !places.contains(v) {
            places.push(v.clone());
        }
    }
    places.into_iter().all(|v| {
        ord_at_place(f, &v).expect("nonzero") >= -d.coeff(&v)
    })
}

/// Coordinates of `f` in the given basis, solving over `F_q` after
/// clearing to a common denominator and matching coefficients of powers of
/// the base variable.
pub fn rr_coordinates(basis: &RrBasis, f: &RatFunc) -> Result<Vec<u64>> {
    let field = f.field().clone();
    if basis.elements.is_empty() {
        return if f.is_zero() {
            Ok(Vec::new())
        } else {
            Err(Error::NotInRiemannRochSpace)
        };
    }
    // common denominator of the basis elements and f
    let mut common = Poly::one(&field, Var::Theta);
    for e in basis.elements.iter().map(RatFunc::den).chain([f.den()]) {
        let g = Poly::gcd(&common, e)?;
        let (cofactor, _) = e.div_rem(&g)?;
        common = common.mul(&cofactor);
    }
    let cleared: Vec<Poly> = basis
        .elements
        .iter()
        .chain([f])
        .map(|r| {
            let (cofactor, rem) = common.div_rem(r.den())?;
            debug_assert!(rem.is_zero());
            Ok(r.num().mul(&cofactor))
        })
        .collect::<Result<_>>()?;
    let max_deg = cleared
        .iter()
        .filter_map(Poly::degree)
        .max()
        .unwrap_or(0);
    let ncols = basis.elements.len();
    let mut m = FqMatrix::zero(&field, max_deg + 1, ncols);
    for (c, poly) in cleared[..ncols].iter().enumerate() {
        for r in 0..=max_deg {
            m.set(r, c, poly.coeff(r));
        }
    }
    let rhs: Vec<u64> = (0..=max_deg).map(|r| cleared[ncols].coeff(r)).collect();
    m.solve(&rhs).ok_or(Error::NotInRiemannRochSpace)
}

//! Places of `k = F_q(T)`, valuations, divisors, and heights.
//!
//! A place is a closed point of the projective line over `F_q`: either the
//! infinite place or a monic irreducible polynomial in the base variable.
//! Divisors are finite formal integer combinations of places. The set of
//! places is infinite, so there is deliberately no "iterate over all
//! places" primitive: every divisor support is derived from explicit
//! factorizations of the finitely many inputs at hand.

use crate::error::{Error, Result};
use crate::factor::factor_into_irreducibles;
use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::tpoly::TPoly;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// The infinite place or a finite place given by a monic irreducible.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Place {
    Infinity,
    Finite(Poly),
}

impl Place {
    /// Wrap a monic irreducible polynomial as a finite place. Monicity and
    /// non-constancy are enforced; irreducibility is the caller's burden
    /// (places built from factorizations satisfy it by construction).
    pub fn finite(pi: Poly) -> Place {
        assert!(pi.is_monic() && !pi.is_constant(), "finite place needs a monic nonconstant");
        Place::Finite(pi)
    }

    /// Residue degree: 1 at infinity, `deg pi` at a finite place.
    pub fn degree(&self) -> i64 {
        match self {
            Place::Infinity => 1,
            Place::Finite(pi) => pi.degree().expect("nonzero") as i64,
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: infinity first, then finite places by degree and
/// coefficient order.
impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Place::Infinity, Place::Infinity) => Ordering::Equal,
            (Place::Infinity, Place::Finite(_)) => Ordering::Less,
            (Place::Finite(_), Place::Infinity) => Ordering::Greater,
            (Place::Finite(a), Place::Finite(b)) => a.canonical_cmp(b),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "inf"),
            Place::Finite(pi) => write!(f, "{pi}"),
        }
    }
}

/// Finite formal integer combination of places; zero coefficients are
/// never stored, so equality is support equality.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct Divisor {
    coeffs: BTreeMap<Place, i64>,
}

impl Divisor {
    pub fn zero() -> Divisor {
        Divisor { coeffs: BTreeMap::new() }
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (Place, i64)>) -> Divisor {
        let mut d = Divisor::zero();
        for (v, c) in entries {
            let total = d.coeff_ref(&v) + c;
            d.set(v, total);
        }
        d
    }

    fn coeff_ref(&self, v: &Place) -> i64 {
        self.coeffs.get(v).copied().unwrap_or(0)
    }

    pub fn coeff(&self, v: &Place) -> i64 {
        self.coeff_ref(v)
    }

    pub fn set(&mut self, v: Place, c: i64) {
        if c == 0 {
            self.coeffs.remove(&v);
        } else {
            self.coeffs.insert(v, c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Entries in canonical place order.
    pub fn entries(&self) -> impl Iterator<Item = (&Place, i64)> {
        self.coeffs.iter().map(|(v, &c)| (v, c))
    }

    pub fn support(&self) -> impl Iterator<Item = &Place> {
        self.coeffs.keys()
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        let mut out = self.clone();
        for (v, c) in other.entries() {
            out.set(v.clone(), out.coeff(v) + c);
        }
        out
    }

    pub fn neg(&self) -> Divisor {
        Divisor {
            coeffs: self.coeffs.iter().map(|(v, &c)| (v.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Divisor) -> Divisor {
        self.add(&other.neg())
    }

    /// Placewise maximum (the join `D1 v D2`); absent places count as 0.
    pub fn join(&self, other: &Divisor) -> Divisor {
        let mut out = Divisor::zero();
        for v in self.coeffs.keys().chain(other.coeffs.keys()) {
            let c = self.coeff(v).max(other.coeff(v));
            out.set(v.clone(), c);
        }
        out
    }

    /// Degree: coefficient-weighted sum of residue degrees.
    pub fn degree(&self) -> i64 {
        self.entries().map(|(v, c)| c * v.degree()).sum()
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|&c| c >= 0)
    }

    /// Placewise `self <= other`.
    pub fn le(&self, other: &Divisor) -> bool {
        self.coeffs
            .keys()
            .chain(other.coeffs.keys())
            .all(|v| self.coeff(v) <= other.coeff(v))
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (v, c) in self.entries() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}*({v})")?;
        }
        Ok(())
    }
}

/// Normalized valuation of a nonzero rational function at a place.
pub fn ord_at_place(f: &RatFunc, v: &Place) -> Result<i64> {
    if f.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    Ok(match v {
        Place::Infinity => {
            f.den().degree().unwrap() as i64 - f.num().degree().unwrap() as i64
        }
        Place::Finite(pi) => {
            f.num().multiplicity_of(pi) as i64 - f.den().multiplicity_of(pi) as i64
        }
    })
}

/// Minimum valuation over the nonzero coordinates of a vector.
pub fn ord_vector(xs: &[RatFunc], v: &Place) -> Result<i64> {
    xs.iter()
        .filter(|x| !x.is_zero())
        .map(|x| ord_at_place(x, v))
        .try_fold(None::<i64>, |acc, o| {
            let o = o?;
            Ok(Some(acc.map_or(o, |a| a.min(o))))
        })?
        .ok_or(Error::ValuationOfZero)
}

/// Minimum valuation over the nonzero `t`-coefficients of a polynomial in
/// `k[t]`.
pub fn ord_tpoly(h: &TPoly, v: &Place) -> Result<i64> {
    if h.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    ord_vector(h.coeffs(), v)
}

/// Candidate support of a family of nonzero rational functions: infinity
/// plus the irreducible factors of all numerators and denominators.
pub fn candidate_places(xs: &[RatFunc]) -> Result<Vec<Place>> {
    let mut places = vec![Place::Infinity];
    let mut seen: Vec<Poly> = Vec::new();
    for x in xs {
        if x.is_zero() {
            continue;
        }
        for poly in [x.num(), x.den()] {
            if poly.is_constant() {
                continue;
            }
            for (pi, _) in factor_into_irreducibles(poly)? {
                if !seen.contains(&pi) {
                    seen.push(pi.clone());
                    places.push(Place::finite(pi));
                }
            }
        }
    }
    Ok(places)
}

/// The divisor of a vector: coefficient `min_i ord_v(x_i)` at each place,
/// zero coefficients dropped.
pub fn div_of_vector(xs: &[RatFunc]) -> Result<Divisor> {
    if xs.iter().all(RatFunc::is_zero) {
        return Err(Error::ValuationOfZero);
    }
    let mut d = Divisor::zero();
    for v in candidate_places(xs)? {
        let c = ord_vector(xs, &v)?;
        d.set(v, c);
    }
    Ok(d)
}

/// Height of a nonzero vector: `-deg(div(x))`. The ground field is `k`
/// itself, so the height is an integer.
pub fn height(xs: &[RatFunc]) -> Result<i64> {
    Ok(-div_of_vector(xs)?.degree())
}

//! Sparse univariate polynomials over `F_q`.
//!
//! Drinfeld-module values `phi_{t^e}(P)` have degrees that grow like
//! `q^(r e)` but term counts that grow far slower, because the Frobenius
//! power of a polynomial only spreads exponents. The brute-force relation
//! oracle and relation verification work on this representation when the
//! instance data is polynomial, keeping exact arithmetic feasible at
//! degrees in the millions.

use crate::field::Fq;
use crate::poly::{Poly, Var};

/// Terms sorted by exponent, coefficients nonzero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparsePoly {
    field: Fq,
    var: Var,
    terms: Vec<(u64, u64)>,
}

impl SparsePoly {
    pub fn zero(field: &Fq, var: Var) -> SparsePoly {
        SparsePoly { field: field.clone(), var, terms: Vec::new() }
    }

    pub fn from_dense(p: &Poly) -> SparsePoly {
        let terms = p
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i as u64, c))
            .collect();
        SparsePoly { field: p.field().clone(), var: p.var(), terms }
    }

    /// Dense form; only sensible for small degrees (tests, cross-checks).
    pub fn to_dense(&self) -> Poly {
        let deg = self.degree().unwrap_or(0) as usize;
        let mut coeffs = vec![0u64; deg + 1];
        for &(e, c) in &self.terms {
            coeffs[e as usize] = c;
        }
        Poly::from_reps(&self.field, self.var, coeffs)
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u64> {
        self.terms.last().map(|&(e, _)| e)
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[(u64, u64)] {
        &self.terms
    }

    fn from_sorted(field: &Fq, var: Var, terms: Vec<(u64, u64)>) -> SparsePoly {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        SparsePoly { field: field.clone(), var, terms }
    }

    pub fn add(&self, other: &SparsePoly) -> SparsePoly {
        assert_eq!(self.field, other.field, "field mismatch");
        assert_eq!(self.var, other.var, "variable mismatch");
        let f = &self.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let (e, c) = match (self.terms.get(i), other.terms.get(j)) {
                (Some(&(ea, ca)), Some(&(eb, cb))) => {
                    if ea < eb {
                        i += 1;
                        (ea, ca)
                    } else if eb < ea {
                        j += 1;
                        (eb, cb)
                    } else {
                        i += 1;
                        j += 1;
                        (ea, f.add(ca, cb))
                    }
                }
                (Some(&(ea, ca)), None) => {
                    i += 1;
                    (ea, ca)
                }
                (None, Some(&(eb, cb))) => {
                    j += 1;
                    (eb, cb)
                }
                (None, None) => unreachable!(),
            };
            if c != 0 {
                out.push((e, c));
            }
        }
        SparsePoly::from_sorted(f, self.var, out)
    }

    pub fn mul(&self, other: &SparsePoly) -> SparsePoly {
        assert_eq!(self.field, other.field, "field mismatch");
        assert_eq!(self.var, other.var, "variable mismatch");
        let f = self.field.clone();
        if self.is_zero() || other.is_zero() {
            return SparsePoly::zero(&f, self.var);
        }
        let mut raw: Vec<(u64, u64)> =
            Vec::with_capacity(self.terms.len() * other.terms.len());
        for &(ea, ca) in &self.terms {
            for &(eb, cb) in &other.terms {
                raw.push((ea + eb, f.mul(ca, cb)));
            }
        }
        raw.sort_unstable_by_key(|&(e, _)| e);
        let mut out: Vec<(u64, u64)> = Vec::with_capacity(raw.len());
        for (e, c) in raw {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc = f.add(*lc, c),
                _ => out.push((e, c)),
            }
            if let Some(&(_, 0)) = out.last() {
                out.pop();
            }
        }
        SparsePoly::from_sorted(&f, self.var, out)
    }

    pub fn mul_scalar(&self, rep: u64) -> SparsePoly {
        if rep == 0 {
            return SparsePoly::zero(&self.field, self.var);
        }
        let f = &self.field;
        let terms = self.terms.iter().map(|&(e, c)| (e, f.mul(c, rep))).collect();
        SparsePoly::from_sorted(f, self.var, terms)
    }

    pub fn neg(&self) -> SparsePoly {
        let f = &self.field;
        let terms = self.terms.iter().map(|&(e, c)| (e, f.neg(c))).collect();
        SparsePoly::from_sorted(f, self.var, terms)
    }

    /// `self^(q^n)` by exponent spreading.
    pub fn pow_q(&self, n: u32) -> SparsePoly {
        if n == 0 {
            return self.clone();
        }
        let stride = self
            .field
            .q()
            .checked_pow(n)
            .expect("Frobenius power overflows");
        let terms = self
            .terms
            .iter()
            .map(|&(e, c)| (e.checked_mul(stride).expect("degree overflow"), c))
            .collect();
        SparsePoly::from_sorted(&self.field, self.var, terms)
    }
}

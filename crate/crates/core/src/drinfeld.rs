//! The twisted polynomial ring `k[tau]` and Drinfeld `F_q[t]`-modules.
//!
//! `tau` is the q-power Frobenius, so multiplication obeys
//! `tau * c = c^q * tau`. A Drinfeld module here is normalized to
//! `phi_t = T + kappa_1 tau + ... + kappa_r tau^r` (the degree-0
//! coefficient is the field generator itself); the points of the module
//! are the elements of `k` with `a . P := phi_a(P)`.

use crate::error::{Error, Result};
use crate::field::Fq;
use crate::poly::{Poly, Var};
use crate::ratfunc::RatFunc;
use crate::sparse::SparsePoly;
use std::fmt;

/// Element of `k[tau]`, coefficients indexed by powers of `tau`.
#[derive(Clone, PartialEq, Eq)]
pub struct TwistedPoly {
    field: Fq,
    coeffs: Vec<RatFunc>,
}

impl TwistedPoly {
    pub fn zero(field: &Fq) -> TwistedPoly {
        TwistedPoly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Fq) -> TwistedPoly {
        TwistedPoly::from_coeffs(field, vec![RatFunc::one(field)])
    }

    pub fn from_coeffs(field: &Fq, mut coeffs: Vec<RatFunc>) -> TwistedPoly {
        while coeffs.last().map_or(false, RatFunc::is_zero) {
            coeffs.pop();
        }
        TwistedPoly { field: field.clone(), coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `tau`; `None` for the zero operator.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> RatFunc {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| RatFunc::zero(&self.field))
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn add(&self, other: &TwistedPoly) -> TwistedPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect();
        TwistedPoly::from_coeffs(&self.field, coeffs)
    }

    pub fn neg(&self) -> TwistedPoly {
        TwistedPoly {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(RatFunc::neg).collect(),
        }
    }

    pub fn scale(&self, c: &RatFunc) -> TwistedPoly {
        if c.is_zero() {
            return TwistedPoly::zero(&self.field);
        }
        TwistedPoly {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect(),
        }
    }

    /// Twisted product: `(sum a_i tau^i)(sum b_j tau^j) =
    /// sum a_i b_j^(q^i) tau^(i+j)`.
    pub fn mul(&self, other: &TwistedPoly) -> TwistedPoly {
        if self.is_zero() || other.is_zero() {
            return TwistedPoly::zero(&self.field);
        }
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        let mut out = vec![RatFunc::zero(&self.field); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let term = a.mul(&b.pow_q(i as u32));
                out[i + j] = out[i + j].add(&term);
            }
        }
        TwistedPoly::from_coeffs(&self.field, out)
    }

    /// Evaluate at a point: `sum c_i P^(q^i)`.
    pub fn evaluate(&self, p: &RatFunc) -> RatFunc {
        let mut acc = RatFunc::zero(&self.field);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&c.mul(&p.pow_q(i as u32)));
        }
        acc
    }
}

impl fmt::Display for TwistedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let cs = c.to_string();
            let wrapped = if cs.contains('+') || cs.contains('/') {
                format!("({cs})")
            } else {
                cs
            };
            match i {
                0 => write!(f, "{wrapped}")?,
                1 if c.is_one() => write!(f, "tau")?,
                1 => write!(f, "{wrapped}*tau")?,
                _ if c.is_one() => write!(f, "tau^{i}")?,
                _ => write!(f, "{wrapped}*tau^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TwistedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A Drinfeld `F_q[t]`-module of rank `r`, determined by the coefficients
/// `kappa_1, ..., kappa_r` of `phi_t = T + kappa_1 tau + ... +
/// kappa_r tau^r`.
#[derive(Clone, PartialEq, Eq)]
pub struct DrinfeldModule {
    field: Fq,
    kappa: Vec<RatFunc>,
}

impl DrinfeldModule {
    pub fn new(field: &Fq, kappa: Vec<RatFunc>) -> Result<DrinfeldModule> {
        if kappa.is_empty() {
            return Err(Error::InvalidModule("rank must be at least 1".into()));
        }
        if kappa.last().unwrap().is_zero() {
            return Err(Error::InvalidModule("top coefficient must be nonzero".into()));
        }
        if kappa.iter().any(|k| k.field() != field) {
            return Err(Error::InvalidModule("coefficient field mismatch".into()));
        }
        // Newton-slope arithmetic needs q^r to stay within exact integer range
        let r = kappa.len() as u32;
        if (field.q() as i128).checked_pow(r).is_none() {
            return Err(Error::InvalidModule("q^r too large for slope arithmetic".into()));
        }
        Ok(DrinfeldModule { field: field.clone(), kappa })
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.kappa.len()
    }

    /// `kappa_j` for `1 <= j <= r`.
    pub fn kappa(&self, j: usize) -> &RatFunc {
        &self.kappa[j - 1]
    }

    pub fn kappas(&self) -> &[RatFunc] {
        &self.kappa
    }

    /// The defining operator `phi_t`.
    pub fn phi_t(&self) -> TwistedPoly {
        let mut coeffs = Vec::with_capacity(self.rank() + 1);
        coeffs.push(RatFunc::theta(&self.field));
        coeffs.extend(self.kappa.iter().cloned());
        TwistedPoly::from_coeffs(&self.field, coeffs)
    }

    /// Image `phi_a` of `a` in `F_q[t]` under the module map: powers of
    /// `phi_t` are built once, bottom up, and reused across coefficients.
    pub fn phi_of_a(&self, a: &Poly) -> TwistedPoly {
        assert_eq!(a.var(), Var::T, "expected an operator polynomial in t");
        let mut acc = TwistedPoly::zero(&self.field);
        let mut power = TwistedPoly::one(&self.field);
        let phi_t = self.phi_t();
        for (i, &c) in a.coeffs().iter().enumerate() {
            if i > 0 {
                power = power.mul(&phi_t);
            }
            if c != 0 {
                acc = acc.add(&power.scale(&RatFunc::constant(&self.field, c)));
            }
        }
        acc
    }

    /// One application of `phi_t` to a point value:
    /// `v -> T v + sum_j kappa_j v^(q^j)`.
    pub fn phi_t_value(&self, v: &RatFunc) -> RatFunc {
        let mut acc = RatFunc::theta(&self.field).mul(v);
        for (j, kappa) in self.kappa.iter().enumerate() {
            if kappa.is_zero() {
                continue;
            }
            acc = acc.add(&kappa.mul(&v.pow_q(j as u32 + 1)));
        }
        acc
    }

    /// The values `phi_{t^e}(p)` for `e = 0..=max_e`, by iterating
    /// `phi_t` (the module law makes iteration and operator powers agree).
    pub fn phi_value_iterates(&self, p: &RatFunc, max_e: usize) -> Vec<RatFunc> {
        let mut out = Vec::with_capacity(max_e + 1);
        out.push(p.clone());
        for e in 0..max_e {
            let next = self.phi_t_value(&out[e]);
            out.push(next);
        }
        out
    }

    /// Evaluate `phi_a(p)` through value iteration, avoiding the huge
    /// operator coefficients of `phi_a` itself.
    pub fn phi_value(&self, a: &Poly, p: &RatFunc) -> RatFunc {
        assert_eq!(a.var(), Var::T);
        let max_e = match a.degree() {
            None => return RatFunc::zero(&self.field),
            Some(d) => d,
        };
        let iterates = self.phi_value_iterates(p, max_e);
        let mut acc = RatFunc::zero(&self.field);
        for (e, w) in iterates.iter().enumerate() {
            let c = a.coeff(e);
            if c != 0 {
                acc = acc.add(&w.mul_scalar(c));
            }
        }
        acc
    }

    /// True when every module coefficient and every given point is a
    /// polynomial, so value iteration can stay in sparse polynomial form.
    pub fn is_polynomial_instance(&self, points: &[RatFunc]) -> bool {
        self.kappa.iter().chain(points).all(RatFunc::is_polynomial)
    }

    /// Sparse analogue of [`Self::phi_t_value`] for polynomial instances.
    pub fn phi_t_value_sparse(&self, v: &SparsePoly) -> SparsePoly {
        let theta = SparsePoly::from_dense(&Poly::var_poly(&self.field, Var::Theta));
        let mut acc = theta.mul(v);
        for (j, kappa) in self.kappa.iter().enumerate() {
            if kappa.is_zero() {
                continue;
            }
            debug_assert!(kappa.is_polynomial());
            let kd = SparsePoly::from_dense(kappa.num());
            acc = acc.add(&kd.mul(&v.pow_q(j as u32 + 1)));
        }
        acc
    }

    pub fn phi_value_iterates_sparse(&self, p: &SparsePoly, max_e: usize) -> Vec<SparsePoly> {
        let mut out = Vec::with_capacity(max_e + 1);
        out.push(p.clone());
        for e in 0..max_e {
            let next = self.phi_t_value_sparse(&out[e]);
            out.push(next);
        }
        out
    }

    /// `kappa_1^(q+1) / kappa_2`, defined for rank 2 only.
    pub fn j_invariant(&self) -> Result<RatFunc> {
        if self.rank() != 2 {
            return Err(Error::JInvariantRank(self.rank()));
        }
        let q = self.field.q();
        self.kappa[0].pow(q + 1).div(&self.kappa[1])
    }

    /// The module `E'` with `u phi_t = phi'_t u`, i.e.
    /// `kappa'_j = kappa_j / u^(q^j - 1)`. Points map along `P -> u P`.
    pub fn twist_by_unit(&self, u: &RatFunc) -> Result<DrinfeldModule> {
        if u.is_zero() {
            return Err(Error::ZeroUnit);
        }
        let q = self.field.q();
        let kappa = self
            .kappa
            .iter()
            .enumerate()
            .map(|(j, k)| {
                let exp = q.pow(j as u32 + 1) - 1;
                k.div(&u.pow(exp))
            })
            .collect::<Result<Vec<_>>>()?;
        DrinfeldModule::new(&self.field, kappa)
    }
}

impl fmt::Debug for DrinfeldModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "phi_t = {}", self.phi_t())
    }
}

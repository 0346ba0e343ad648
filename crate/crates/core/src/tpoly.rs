//! Polynomials in `t` with coefficients in `k = F_q(T)`.

use crate::error::{Error, Result};
use crate::field::Fq;
use crate::poly::{Poly, Var};
use crate::ratfunc::RatFunc;
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct TPoly {
    field: Fq,
    coeffs: Vec<RatFunc>,
}

impl TPoly {
    pub fn zero(field: &Fq) -> TPoly {
        TPoly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn from_coeffs(field: &Fq, mut coeffs: Vec<RatFunc>) -> TPoly {
        while coeffs.last().map_or(false, RatFunc::is_zero) {
            coeffs.pop();
        }
        TPoly { field: field.clone(), coeffs }
    }

    pub fn constant(c: RatFunc) -> TPoly {
        let field = c.field().clone();
        TPoly::from_coeffs(&field, vec![c])
    }

    /// The polynomial `t - T` (the variable minus the field generator).
    pub fn t_minus_theta(field: &Fq) -> TPoly {
        TPoly::from_coeffs(
            field,
            vec![RatFunc::theta(field).neg(), RatFunc::one(field)],
        )
    }

    /// Lift `a` from `F_q[t]` and scale by the point `p`, giving `a * p` in
    /// `k[t]`.
    pub fn from_fqt_scaled(a: &Poly, p: &RatFunc) -> TPoly {
        assert_eq!(a.var(), Var::T, "expected a polynomial in t");
        let field = p.field();
        let coeffs = a
            .coeffs()
            .iter()
            .map(|&c| p.mul_scalar(c))
            .collect();
        TPoly::from_coeffs(field, coeffs)
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

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

    pub fn add(&self, other: &TPoly) -> TPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect();
        TPoly::from_coeffs(&self.field, coeffs)
    }

    pub fn sub(&self, other: &TPoly) -> TPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TPoly {
        TPoly {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(RatFunc::neg).collect(),
        }
    }

    pub fn mul(&self, other: &TPoly) -> TPoly {
        if self.is_zero() || other.is_zero() {
            return TPoly::zero(&self.field);
        }
        let mut out = vec![RatFunc::zero(&self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        TPoly::from_coeffs(&self.field, out)
    }

    pub fn scale(&self, c: &RatFunc) -> TPoly {
        if c.is_zero() {
            return TPoly::zero(&self.field);
        }
        TPoly {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect(),
        }
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> TPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![RatFunc::zero(&self.field); k];
        coeffs.extend_from_slice(&self.coeffs);
        TPoly { field: self.field.clone(), coeffs }
    }

    /// Coefficientwise `n`-fold Frobenius twist.
    pub fn frobenius_twist(&self, n: i64) -> Result<TPoly> {
        if n < 0 {
            return Err(Error::NegativeTwist);
        }
        Ok(self.pow_q_coeffwise(n as u32))
    }

    pub fn pow_q_coeffwise(&self, n: u32) -> TPoly {
        TPoly {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c.pow_q(n)).collect(),
        }
    }
}

impl fmt::Display for TPoly {
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
            let needs_parens = cs.contains('+') || cs.contains('/');
            let wrapped = if needs_parens { format!("({cs})") } else { cs };
            match i {
                0 => write!(f, "{wrapped}")?,
                1 if c.is_one() => write!(f, "t")?,
                1 => write!(f, "{wrapped}*t")?,
                _ if c.is_one() => write!(f, "t^{i}")?,
                _ => write!(f, "{wrapped}*t^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

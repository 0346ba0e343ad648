//! Dense univariate polynomials over `F_q`.
//!
//! A [`Poly`] carries its field handle once and stores coefficients as raw
//! packed reps low-to-high, with the invariant that the top coefficient is
//! nonzero unless the polynomial is zero. The degree of the zero polynomial
//! is the distinguished marker `None`, never an integer, so arithmetic on
//! it cannot silently go wrong.
//!
//! The same type serves `F_q[T]` (the base ring of the rational function
//! field, variable tag [`Var::Theta`]) and `F_q[t]` (the operator variable,
//! tag [`Var::T`]); mixing tags in one operation is a programming error and
//! panics.

use crate::error::{Error, Result};
use crate::field::{Fq, FqElem};
use std::cmp::Ordering;
use std::fmt;

/// Variable tag: `Theta` displays as `T`, `T` displays as `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    Theta,
    T,
}

impl Var {
    pub fn symbol(self) -> char {
        match self {
            Var::Theta => 'T',
            Var::T => 't',
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Fq,
    var: Var,
    coeffs: Vec<u64>,
}

impl Poly {
    pub fn zero(field: &Fq, var: Var) -> Poly {
        Poly { field: field.clone(), var, coeffs: Vec::new() }
    }

    pub fn one(field: &Fq, var: Var) -> Poly {
        Poly::constant(field, var, 1)
    }

    pub fn constant(field: &Fq, var: Var, rep: u64) -> Poly {
        let coeffs = if rep == 0 { Vec::new() } else { vec![rep] };
        Poly { field: field.clone(), var, coeffs }
    }

    /// The variable itself.
    pub fn var_poly(field: &Fq, var: Var) -> Poly {
        Poly { field: field.clone(), var, coeffs: vec![0, 1] }
    }

    pub fn monomial(field: &Fq, var: Var, rep: u64, deg: usize) -> Poly {
        if rep == 0 {
            return Poly::zero(field, var);
        }
        let mut coeffs = vec![0u64; deg + 1];
        coeffs[deg] = rep;
        Poly { field: field.clone(), var, coeffs }
    }

    pub fn from_reps(field: &Fq, var: Var, mut coeffs: Vec<u64>) -> Poly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field: field.clone(), var, coeffs }
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial mapped to `None`.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Raw rep of the coefficient of the `i`-th power (0 beyond the end).
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff_elem(&self, i: usize) -> FqElem {
        self.field.elem(self.coeff(i))
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    fn assert_compatible(&self, other: &Poly) {
        assert_eq!(self.field, other.field, "field mismatch");
        assert_eq!(self.var, other.var, "variable mismatch");
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.assert_compatible(other);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(f.add(self.coeff(i), other.coeff(i)));
        }
        Poly::from_reps(f, self.var, out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        let coeffs = self.coeffs.iter().map(|&c| f.neg(c)).collect();
        Poly { field: f.clone(), var: self.var, coeffs }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.assert_compatible(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field, self.var);
        }
        let f = &self.field;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::from_reps(f, self.var, out)
    }

    pub fn mul_scalar(&self, rep: u64) -> Poly {
        if rep == 0 {
            return Poly::zero(&self.field, self.var);
        }
        let f = &self.field;
        let coeffs = self.coeffs.iter().map(|&c| f.mul(c, rep)).collect();
        Poly::from_reps(f, self.var, coeffs)
    }

    /// Multiply by the `k`-th power of the variable.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0u64; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { field: self.field.clone(), var: self.var, coeffs }
    }

    pub fn pow(&self, mut n: u64) -> Poly {
        let mut acc = Poly::one(&self.field, self.var);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    /// `self^(q^n)`: since the coefficients lie in `F_q`, the `q^n`-th power
    /// map just spreads exponents by a factor of `q^n`.
    pub fn pow_q(&self, n: u32) -> Poly {
        if self.is_zero() || n == 0 {
            return self.clone();
        }
        let stride = self
            .field
            .q()
            .checked_pow(n)
            .expect("Frobenius power overflows") as usize;
        let mut out = vec![0u64; (self.coeffs.len() - 1) * stride + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i * stride] = c;
        }
        Poly { field: self.field.clone(), var: self.var, coeffs: out }
    }

    pub fn monic(&self) -> Poly {
        let lead = self.leading();
        if lead == 0 || lead == 1 {
            return self.clone();
        }
        let inv = self.field.inv(lead).expect("nonzero leading coefficient");
        self.mul_scalar(inv)
    }

    /// Division with remainder by a nonzero divisor.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        self.assert_compatible(d);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() < d.coeffs.len() {
            return Ok((Poly::zero(f, self.var), self.clone()));
        }
        let lead_inv = f.inv(d.leading())?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let qc = f.mul(c, lead_inv);
            quot[i - dd] = qc;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = f.sub(rem[idx], f.mul(qc, dc));
            }
        }
        rem.truncate(dd);
        Ok((
            Poly::from_reps(f, self.var, quot),
            Poly::from_reps(f, self.var, rem),
        ))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.div_rem(d)?.1)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        match other.div_rem(self) {
            Ok((_, r)) => r.is_zero(),
            Err(_) => false,
        }
    }

    /// Monic gcd. Errors when both inputs are zero.
    pub fn gcd(a: &Poly, b: &Poly) -> Result<Poly> {
        a.assert_compatible(b);
        if a.is_zero() && b.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let r = x.rem(&y)?;
            x = y;
            y = r;
        }
        Ok(x.monic())
    }

    /// Multiplicity of the factor `pi` in `self` (0 when `pi` does not divide).
    pub fn multiplicity_of(&self, pi: &Poly) -> usize {
        assert!(!pi.is_constant(), "multiplicity of a constant factor");
        let mut count = 0;
        let mut cur = self.clone();
        if cur.is_zero() {
            return 0;
        }
        loop {
            let (q, r) = cur.div_rem(pi).expect("nonzero divisor");
            if !r.is_zero() {
                return count;
            }
            count += 1;
            cur = q;
        }
    }

    /// Evaluate at a field element (by rep).
    pub fn eval_rep(&self, x: u64) -> u64 {
        let f = &self.field;
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    /// Total ordering used for canonical display of places: degree first,
    /// then coefficient reps from the highest power down.
    pub fn canonical_cmp(&self, other: &Poly) -> Ordering {
        match self.coeffs.len().cmp(&other.coeffs.len()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in (0..self.coeffs.len()).rev() {
            match self.coeffs[i].cmp(&other.coeffs[i]) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let sym = self.var.symbol();
        let p = self.field.p();
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = self.coeffs[k];
            if c == 0 {
                continue;
            }
            // expand the packed rep into w-digit terms, highest power first
            let mut digits = Vec::new();
            let mut r = c;
            while r > 0 {
                digits.push(r % p);
                r /= p;
            }
            for (i, &d) in digits.iter().enumerate().rev() {
                if d == 0 {
                    continue;
                }
                if !first {
                    write!(f, "+")?;
                }
                first = false;
                let mut parts: Vec<String> = Vec::new();
                if d != 1 || (i == 0 && k == 0) {
                    parts.push(format!("{d}"));
                }
                if i == 1 {
                    parts.push("w".to_string());
                } else if i > 1 {
                    parts.push(format!("w^{i}"));
                }
                if k == 1 {
                    parts.push(format!("{sym}"));
                } else if k > 1 {
                    parts.push(format!("{sym}^{k}"));
                }
                write!(f, "{}", parts.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

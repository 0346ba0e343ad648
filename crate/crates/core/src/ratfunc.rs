//! The rational function field `k = F_q(T)`.
//!
//! Values are kept in the canonical reduced form: monic denominator,
//! coprime numerator and denominator, zero stored as `0/1`. Structural
//! equality therefore coincides with field equality.

use crate::error::{Error, Result};
use crate::field::Fq;
use crate::poly::{Poly, Var};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Reduce `num/den` to canonical form. This is the only constructor
    /// that performs normalization; equal inputs yield structurally
    /// identical outputs.
    pub fn new(num: Poly, den: Poly) -> Result<RatFunc> {
        assert_eq!(num.var(), Var::Theta, "rational functions live over F_q(T)");
        assert_eq!(den.var(), Var::Theta, "rational functions live over F_q(T)");
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc {
                num,
                den: Poly::one(den.field(), Var::Theta),
            });
        }
        let g = Poly::gcd(&num, &den)?;
        let (num, _) = num.div_rem(&g)?;
        let (den, _) = den.div_rem(&g)?;
        let lead_inv = den.field().inv(den.leading())?;
        Ok(RatFunc {
            num: num.mul_scalar(lead_inv),
            den: den.mul_scalar(lead_inv),
        })
    }

    pub fn from_poly(num: Poly) -> RatFunc {
        let one = Poly::one(num.field(), Var::Theta);
        RatFunc { num, den: one }
    }

    pub fn zero(field: &Fq) -> RatFunc {
        RatFunc::from_poly(Poly::zero(field, Var::Theta))
    }

    pub fn one(field: &Fq) -> RatFunc {
        RatFunc::from_poly(Poly::one(field, Var::Theta))
    }

    pub fn constant(field: &Fq, rep: u64) -> RatFunc {
        RatFunc::from_poly(Poly::constant(field, Var::Theta, rep))
    }

    /// The generator `T` of the field.
    pub fn theta(field: &Fq) -> RatFunc {
        RatFunc::from_poly(Poly::var_poly(field, Var::Theta))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn field(&self) -> &Fq {
        self.num.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Constant polynomials are exactly the elements of `F_q`.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        RatFunc::new(num, den).expect("nonzero denominator")
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        let num = self.num.mul(&other.num);
        let den = self.den.mul(&other.den);
        RatFunc::new(num, den).expect("nonzero denominator")
    }

    pub fn mul_scalar(&self, rep: u64) -> RatFunc {
        if rep == 0 {
            return RatFunc::zero(self.field());
        }
        RatFunc { num: self.num.mul_scalar(rep), den: self.den.clone() }
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFunc::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, n: u64) -> RatFunc {
        let mut acc = RatFunc::one(self.field());
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    /// `self^(q^n)`. Reduced form is preserved: powering keeps the
    /// numerator and denominator coprime and the denominator monic.
    pub fn pow_q(&self, n: u32) -> RatFunc {
        RatFunc { num: self.num.pow_q(n), den: self.den.pow_q(n) }
    }

    /// The `n`-fold Frobenius twist `a -> a^(q^n)`. Negative twists would
    /// require q-th roots and are rejected.
    pub fn frobenius_twist(&self, n: i64) -> Result<RatFunc> {
        if n < 0 {
            return Err(Error::NegativeTwist);
        }
        Ok(self.pow_q(n as u32))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn f2() -> Fq {
        Fq::prime(2).unwrap()
    }

    fn th(field: &Fq) -> Poly {
        Poly::var_poly(field, Var::Theta)
    }

    #[test]
    fn normalize_cancels_common_factors() {
        let f = f2();
        let theta = th(&f);
        let one = Poly::one(&f, Var::Theta);
        // (T^2 + T) / T = (T + 1)/1
        let r = RatFunc::new(theta.mul(&theta).add(&theta), theta.clone()).unwrap();
        assert_eq!(r.num(), &theta.add(&one));
        assert!(r.den().is_one());
        // zero case: (0, T+1) -> 0/1
        let z = RatFunc::new(Poly::zero(&f, Var::Theta), theta.add(&one)).unwrap();
        assert!(z.is_zero());
        assert!(z.den().is_one());
        // (T, T^2) -> 1/T; cross-multiplication oracle: 1 * T^2 == T * T
        let r2 = RatFunc::new(theta.clone(), theta.mul(&theta)).unwrap();
        assert_eq!(r2.num(), &one);
        assert_eq!(r2.den(), &theta);
        assert_eq!(r2.num().mul(&theta.mul(&theta)), theta.mul(&theta.clone()));
        // zero denominator
        assert_eq!(
            RatFunc::new(one.clone(), Poly::zero(&f, Var::Theta)),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn normalize_is_idempotent() {
        let f = Fq::prime(3).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let num = Poly::from_reps(
                &f,
                Var::Theta,
                (0..rng.gen_range(1..5)).map(|_| rng.gen_range(0..3)).collect(),
            );
            let den = Poly::from_reps(
                &f,
                Var::Theta,
                (0..rng.gen_range(1..5)).map(|_| rng.gen_range(0..3)).collect(),
            );
            if den.is_zero() {
                continue;
            }
            let r = RatFunc::new(num, den).unwrap();
            let again = RatFunc::new(r.num().clone(), r.den().clone()).unwrap();
            assert_eq!(r, again);
        }
    }

    #[test]
    fn field_operations() {
        let f = f2();
        let theta = RatFunc::theta(&f);
        let one = RatFunc::one(&f);
        // 1/T + 1 = (T+1)/T
        let r = theta.inv().unwrap().add(&one);
        assert_eq!(r.to_string(), "(T+1)/(T)");
        // (1/T) * T = 1
        assert!(theta.inv().unwrap().mul(&theta).is_one());
        // division by zero
        assert_eq!(one.div(&RatFunc::zero(&f)), Err(Error::DivisionByZero));
    }

    #[test]
    fn frobenius_twist_examples() {
        let f = f2();
        let theta = RatFunc::theta(&f);
        // T twisted once over F_2 is T^2
        assert_eq!(theta.frobenius_twist(1).unwrap(), theta.mul(&theta));
        // constants are fixed
        let c = RatFunc::one(&f);
        assert_eq!(c.frobenius_twist(3).unwrap(), c);
        // negative twist is rejected
        assert_eq!(theta.frobenius_twist(-1), Err(Error::NegativeTwist));
    }

    #[test]
    fn twist_is_ring_homomorphism() {
        let fields = [f2(), Fq::prime(3).unwrap()];
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for f in &fields {
            let q = f.q();
            for _ in 0..60 {
                let rand_rf = |rng: &mut rand_chacha::ChaCha8Rng| {
                    let num = Poly::from_reps(
                        f,
                        Var::Theta,
                        (0..rng.gen_range(1..4)).map(|_| rng.gen_range(0..q)).collect(),
                    );
                    let mut den = Poly::from_reps(
                        f,
                        Var::Theta,
                        (0..rng.gen_range(1..4)).map(|_| rng.gen_range(0..q)).collect(),
                    );
                    if den.is_zero() {
                        den = Poly::one(f, Var::Theta);
                    }
                    RatFunc::new(num, den).unwrap()
                };
                let a = rand_rf(&mut rng);
                let b = rand_rf(&mut rng);
                let (n, m) = (rng.gen_range(0..3u32), rng.gen_range(0..3u32));
                assert_eq!(a.mul(&b).pow_q(n), a.pow_q(n).mul(&b.pow_q(n)));
                assert_eq!(a.add(&b).pow_q(n), a.pow_q(n).add(&b.pow_q(n)));
                assert_eq!(a.pow_q(m).pow_q(n), a.pow_q(m + n));
            }
        }
    }
}

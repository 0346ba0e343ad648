//! Text grammar for polynomials and rational functions.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! ratfunc := poly | '(' poly ')' '/' '(' poly ')'
//! poly    := ['+'|'-'] term (('+'|'-') term)*
//! term    := atom ('*' atom)*
//! atom    := INT | 'w' ['^' INT] | VAR ['^' INT]
//! ```
//!
//! `VAR` is `T` for polynomials over the base field and `t` for operator
//! polynomials in `F_q[t]`. Coefficients in `F_p` are decimal integers;
//! coefficients in `F_{p^e}` are written through powers of the generator
//! `w`, reduced modulo the declared modulus. Parse errors carry the
//! 1-based position of the offending byte.

use crate::error::{Error, Result};
use crate::field::Fq;
use crate::poly::{Poly, Var};
use crate::ratfunc::RatFunc;

const MAX_EXPONENT: u64 = 9999;

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    field: Fq,
    var: Var,
    // symbol for the main variable; 'w' atoms are only valid when the
    // field is a proper extension and the symbol itself is not 'w'
    symbol: u8,
    allow_w: bool,
}

impl<'a> Parser<'a> {
    fn new(field: &Fq, input: &'a str, var: Var, symbol: u8, allow_w: bool) -> Parser<'a> {
        Parser {
            bytes: input.as_bytes(),
            pos: 0,
            field: field.clone(),
            var,
            symbol,
            allow_w,
        }
    }

    fn err<T>(&self, at: usize, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: at + 1, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        Some(b)
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        let at = {
            self.skip_ws();
            self.pos
        };
        match self.bump() {
            Some(got) if got == b => Ok(()),
            Some(got) => self.err(at, format!("expected '{}', found '{}'", b as char, got as char)),
            None => self.err(at, format!("expected '{}', found end of input", b as char)),
        }
    }

    fn parse_uint(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        let mut val: u64 = 0;
        let mut any = false;
        while let Some(&b) = self.bytes.get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            any = true;
            val = val
                .checked_mul(10)
                .and_then(|v| v.checked_add((b - b'0') as u64))
                .ok_or(Error::Parse { pos: start + 1, msg: "integer too large".into() })?;
            self.pos += 1;
        }
        if !any {
            return self.err(start, "expected an integer");
        }
        Ok(val)
    }

    fn parse_exponent(&mut self) -> Result<u64> {
        if self.peek() == Some(b'^') {
            self.bump();
            let at = {
                self.skip_ws();
                self.pos
            };
            let e = self.parse_uint()?;
            if e > MAX_EXPONENT {
                return self.err(at, "exponent too large");
            }
            Ok(e)
        } else {
            Ok(1)
        }
    }

    /// One term: product of atoms, yielding a monomial `coeff * var^exp`.
    fn parse_term(&mut self) -> Result<(u64, u64)> {
        let mut coeff: u64 = 1;
        let mut exp: u64 = 0;
        loop {
            let at = {
                self.skip_ws();
                self.pos
            };
            match self.peek() {
                Some(b) if b.is_ascii_digit() => {
                    let n = self.parse_uint()?;
                    coeff = self.field.mul(coeff, n % self.field.p());
                }
                Some(b) if b == self.symbol => {
                    self.bump();
                    let e = self.parse_exponent()?;
                    exp = exp.checked_add(e).filter(|&e| e <= MAX_EXPONENT).ok_or(
                        Error::Parse { pos: at + 1, msg: "exponent too large".into() },
                    )?;
                }
                Some(b'w') if self.allow_w => {
                    if self.field.e() == 1 {
                        return self.err(at, "generator w requires an extension field (e > 1)");
                    }
                    self.bump();
                    let e = self.parse_exponent()?;
                    coeff = self.field.mul(coeff, self.field.pow(self.field.gen_rep(), e));
                }
                Some(b) => {
                    return self.err(at, format!("unexpected character '{}'", b as char))
                }
                None => return self.err(at, "unexpected end of input"),
            }
            if self.peek() == Some(b'*') {
                self.bump();
            } else {
                break;
            }
        }
        Ok((coeff, exp))
    }

    fn parse_poly(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero(&self.field, self.var);
        let mut sign_neg = false;
        match self.peek() {
            Some(b'+') => {
                self.bump();
            }
            Some(b'-') => {
                self.bump();
                sign_neg = true;
            }
            _ => {}
        }
        loop {
            let (coeff, exp) = self.parse_term()?;
            let coeff = if sign_neg { self.field.neg(coeff) } else { coeff };
            let mono = Poly::monomial(&self.field, self.var, coeff, exp as usize);
            acc = acc.add(&mono);
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    sign_neg = false;
                }
                Some(b'-') => {
                    self.bump();
                    sign_neg = true;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn finish(&mut self) -> Result<()> {
        if let Some(b) = self.peek() {
            let at = self.pos;
            return self.err(at, format!("unexpected trailing input '{}'", b as char));
        }
        Ok(())
    }
}

/// Parse a polynomial over `F_q` in the base variable `T`.
pub fn parse_theta_poly(field: &Fq, input: &str) -> Result<Poly> {
    let mut p = Parser::new(field, input, Var::Theta, b'T', true);
    let poly = p.parse_poly()?;
    p.finish()?;
    Ok(poly)
}

/// Parse an operator polynomial in `F_q[t]`.
pub fn parse_t_poly(field: &Fq, input: &str) -> Result<Poly> {
    let mut p = Parser::new(field, input, Var::T, b't', true);
    let poly = p.parse_poly()?;
    p.finish()?;
    Ok(poly)
}

/// Parse a rational function: `<poly>` or `(<poly>)/(<poly>)`.
pub fn parse_ratfunc(field: &Fq, input: &str) -> Result<RatFunc> {
    let mut p = Parser::new(field, input, Var::Theta, b'T', true);
    if p.peek() == Some(b'(') {
        p.expect(b'(')?;
        let num = p.parse_poly()?;
        p.expect(b')')?;
        p.expect(b'/')?;
        p.expect(b'(')?;
        let den = p.parse_poly()?;
        p.expect(b')')?;
        p.finish()?;
        let at = 0;
        RatFunc::new(num, den).map_err(|e| match e {
            Error::DivisionByZero => Error::Parse {
                pos: at + 1,
                msg: "zero denominator in rational function".into(),
            },
            other => other,
        })
    } else {
        let num = p.parse_poly()?;
        p.finish()?;
        Ok(RatFunc::from_poly(num))
    }
}

/// Parse a field modulus: a polynomial in `w` with integer coefficients
/// over `F_p`, returned as coefficients low-to-high.
pub fn parse_modulus(p: u64, input: &str) -> Result<Vec<u64>> {
    let field = Fq::prime(p)?;
    let mut parser = Parser::new(&field, input, Var::Theta, b'w', false);
    let poly = parser.parse_poly()?;
    parser.finish()?;
    Ok(poly.coeffs().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldDesc;

    fn f2() -> Fq {
        Fq::prime(2).unwrap()
    }

    fn f4() -> Fq {
        Fq::new(FieldDesc { p: 2, e: 2, modulus: Some(vec![1, 1, 1]) }).unwrap()
    }

    #[test]
    fn parses_simple_polys() {
        let f = f2();
        let th = Poly::var_poly(&f, Var::Theta);
        assert_eq!(parse_theta_poly(&f, "T").unwrap(), th);
        assert_eq!(parse_theta_poly(&f, " T ^ 2 + T + 1 ").unwrap().to_string(), "T^2+T+1");
        assert_eq!(parse_theta_poly(&f, "0").unwrap(), Poly::zero(&f, Var::Theta));
        // characteristic folds coefficients
        assert_eq!(parse_theta_poly(&f, "2*T + 3").unwrap().to_string(), "1");
    }

    #[test]
    fn parses_extension_coefficients() {
        let f = f4();
        let p = parse_theta_poly(&f, "T^3 + w^2*T + 1").unwrap();
        assert_eq!(p.degree(), Some(3));
        // w^2 = w + 1 under w^2 + w + 1
        assert_eq!(p.coeff(1), f.add(f.gen_rep(), 1));
        assert_eq!(p.to_string(), "T^3+w*T+T+1");
        // digit-expanded display reparses to the same value
        assert_eq!(parse_theta_poly(&f, &p.to_string()).unwrap(), p);
    }

    #[test]
    fn parses_ratfuncs() {
        let f = f2();
        let r = parse_ratfunc(&f, "(T^2+T)/(T)").unwrap();
        assert_eq!(r.to_string(), "T+1");
        let r2 = parse_ratfunc(&f, "(1)/(T)").unwrap();
        assert_eq!(r2.to_string(), "(1)/(T)");
        assert_eq!(parse_ratfunc(&f, "T+1").unwrap().to_string(), "T+1");
    }

    #[test]
    fn errors_carry_position() {
        let f = f2();
        match parse_theta_poly(&f, "T^2 + %") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 7),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_ratfunc(&f, "(T)/(0)") {
            Err(Error::Parse { .. }) => {}
            other => panic!("expected parse error, got {other:?}"),
        }
        // w in a prime field
        match parse_theta_poly(&f, "w*T") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 1),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn parses_t_polys_and_modulus() {
        let f = f2();
        let a = parse_t_poly(&f, "t^2+t+1").unwrap();
        assert_eq!(a.var(), Var::T);
        assert_eq!(a.degree(), Some(2));
        assert_eq!(parse_modulus(2, "w^2+w+1").unwrap(), vec![1, 1, 1]);
        assert_eq!(parse_modulus(3, "w^2+1").unwrap(), vec![1, 0, 1]);
    }

    #[test]
    fn negative_signs_fold_into_field() {
        let f = Fq::prime(3).unwrap();
        let p = parse_theta_poly(&f, "-T + 1 - 2").unwrap();
        // -T + 1 - 2 = 2T + 2 over F_3
        assert_eq!(p.coeff(1), 2);
        assert_eq!(p.coeff(0), 2);
    }
}

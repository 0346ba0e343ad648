//! The base field `F_q` with `q = p^e`.
//!
//! Elements are stored packed: the residue polynomial `c_0 + c_1 x + ... +
//! c_{e-1} x^{e-1}` over `F_p` is encoded as the integer `c_0 + c_1 p + ...
//! + c_{e-1} p^{e-1}`. The packing is a bijection between `[0, q)` and the
//! field, so `0..q` enumerates all elements and `p` encodes the generator
//! `w` (the class of `x`) when `e > 1`. Hot loops work on raw `u64` reps
//! through [`Fq`]; [`FqElem`] bundles a rep with its field for the public
//! value-level API.

use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;

/// Description of a finite field `F_{p^e}`.
///
/// `modulus` is the monic degree-`e` irreducible over `F_p` defining the
/// extension, stored as coefficients low-to-high (length `e + 1`). It is
/// `None` exactly when `e == 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldDesc {
    pub p: u64,
    pub e: u32,
    pub modulus: Option<Vec<u64>>,
}

/// Handle to a validated field; cheap to clone and compare.
#[derive(Clone)]
pub struct Fq(Arc<FieldDesc>);

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}
impl Eq for Fq {}

impl std::hash::Hash for Fq {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state);
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.e == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{{{}^{}}}", self.0.p, self.0.e)
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

// --- F_p[x] helpers on raw digit vectors (coefficients low-to-high) ---

fn fp_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_mul(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = ((out[i + j] as u128 + ai as u128 * bj as u128) % p as u128) as u64;
        }
    }
    fp_trim(&mut out);
    out
}

/// Remainder of `a` modulo monic `m`.
fn fp_rem(p: u64, a: &[u64], m: &[u64]) -> Vec<u64> {
    debug_assert_eq!(*m.last().unwrap(), 1);
    let mut r: Vec<u64> = a.to_vec();
    fp_trim(&mut r);
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (j, &mj) in m.iter().enumerate() {
                let idx = shift + j;
                let sub = (lead as u128 * mj as u128 % p as u128) as u64;
                r[idx] = (r[idx] + p - sub) % p;
            }
        }
        r.pop();
        fp_trim(&mut r);
        if r.len() <= dm {
            break;
        }
    }
    r
}

fn fp_gcd(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    fp_trim(&mut a);
    fp_trim(&mut b);
    while !b.is_empty() {
        // scale b monic before using it as a divisor
        let lead = *b.last().unwrap();
        if lead != 1 {
            let inv = mod_inv(lead, p);
            for c in b.iter_mut() {
                *c = (*c as u128 * inv as u128 % p as u128) as u64;
            }
        }
        let r = fp_rem(p, &a, &b);
        a = b;
        b = r;
    }
    a
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat; p prime and a != 0 mod p.
    mod_pow(a, p - 2, p)
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    base %= p;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// `x^(p^j) mod m` by iterating the p-power map.
fn fp_x_pow_p_iter(p: u64, j: u32, m: &[u64]) -> Vec<u64> {
    let mut cur = vec![0u64, 1]; // x
    cur = fp_rem(p, &cur, m);
    for _ in 0..j {
        cur = fp_poly_pow(p, &cur, p, m);
    }
    cur
}

fn fp_poly_pow(p: u64, base: &[u64], mut exp: u64, m: &[u64]) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = base.to_vec();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = fp_rem(p, &fp_mul(p, &acc, &b), m);
        }
        b = fp_rem(p, &fp_mul(p, &b, &b), m);
        exp >>= 1;
    }
    acc
}

/// Rabin irreducibility test for a monic polynomial over `F_p`.
fn fp_is_irreducible(p: u64, m: &[u64]) -> bool {
    let n = (m.len() - 1) as u32;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    // x^(p^n) == x mod m
    let xpn = fp_x_pow_p_iter(p, n, m);
    let mut diff = xpn.clone();
    while diff.len() < 2 {
        diff.push(0);
    }
    diff[1] = (diff[1] + p - 1) % p;
    fp_trim(&mut diff);
    if !diff.is_empty() {
        return false;
    }
    // gcd(x^(p^(n/s)) - x, m) == 1 for each prime s | n
    let mut primes = Vec::new();
    let mut nn = n;
    let mut s = 2;
    while s * s <= nn {
        if nn % s == 0 {
            primes.push(s);
            while nn % s == 0 {
                nn /= s;
            }
        }
        s += 1;
    }
    if nn > 1 {
        primes.push(nn);
    }
    for s in primes {
        let mut d = fp_x_pow_p_iter(p, n / s, m);
        while d.len() < 2 {
            d.push(0);
        }
        d[1] = (d[1] + p - 1) % p;
        fp_trim(&mut d);
        let g = fp_gcd(p, &d, m);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

impl Fq {
    /// Validate a field description and build a handle.
    pub fn new(desc: FieldDesc) -> Result<Fq> {
        if !is_prime(desc.p) {
            return Err(Error::InvalidField(format!("{} is not prime", desc.p)));
        }
        if desc.e == 0 {
            return Err(Error::InvalidField("extension degree must be >= 1".into()));
        }
        let q = (desc.p as u128).checked_pow(desc.e);
        match q {
            Some(q) if q <= (1u128 << 31) => {}
            _ => {
                return Err(Error::InvalidField(
                    "field size p^e exceeds the supported bound 2^31".into(),
                ))
            }
        }
        match (&desc.modulus, desc.e) {
            (None, 1) => {}
            (Some(_), 1) => {
                return Err(Error::InvalidField(
                    "modulus must be absent when e = 1".into(),
                ))
            }
            (None, _) => {
                return Err(Error::InvalidField(
                    "modulus required when e > 1".into(),
                ))
            }
            (Some(m), e) => {
                if m.len() != e as usize + 1 {
                    return Err(Error::InvalidField(format!(
                        "modulus must have degree {e}"
                    )));
                }
                if m.iter().any(|&c| c >= desc.p) {
                    return Err(Error::InvalidField(
                        "modulus coefficients must be reduced mod p".into(),
                    ));
                }
                if *m.last().unwrap() != 1 {
                    return Err(Error::InvalidField("modulus must be monic".into()));
                }
                if !fp_is_irreducible(desc.p, m) {
                    return Err(Error::InvalidField(
                        "modulus is reducible over F_p".into(),
                    ));
                }
            }
        }
        Ok(Fq(Arc::new(desc)))
    }

    /// Prime field `F_p`.
    pub fn prime(p: u64) -> Result<Fq> {
        Fq::new(FieldDesc { p, e: 1, modulus: None })
    }

    pub fn desc(&self) -> &FieldDesc {
        &self.0
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn e(&self) -> u32 {
        self.0.e
    }

    /// Field size `q = p^e`.
    pub fn q(&self) -> u64 {
        self.0.p.pow(self.0.e)
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    // --- raw-rep arithmetic ---

    fn unpack(&self, rep: u64) -> Vec<u64> {
        let p = self.0.p;
        let e = self.0.e as usize;
        let mut digits = vec![0u64; e];
        let mut r = rep;
        for d in digits.iter_mut() {
            *d = r % p;
            r /= p;
        }
        debug_assert_eq!(r, 0, "rep out of range for field");
        digits
    }

    fn pack(&self, digits: &[u64]) -> u64 {
        let p = self.0.p;
        let mut rep = 0u64;
        for &d in digits.iter().rev() {
            rep = rep * p + d;
        }
        rep
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let p = self.0.p;
        if self.0.e == 1 {
            return (a + b) % p;
        }
        let mut da = self.unpack(a);
        let db = self.unpack(b);
        for (x, y) in da.iter_mut().zip(db) {
            *x = (*x + y) % p;
        }
        self.pack(&da)
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn neg(&self, a: u64) -> u64 {
        let p = self.0.p;
        if self.0.e == 1 {
            return (p - a) % p;
        }
        let mut d = self.unpack(a);
        for x in d.iter_mut() {
            *x = (p - *x) % p;
        }
        self.pack(&d)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let p = self.0.p;
        if self.0.e == 1 {
            return (a as u128 * b as u128 % p as u128) as u64;
        }
        if a == 0 || b == 0 {
            return 0;
        }
        let da = self.unpack(a);
        let db = self.unpack(b);
        let prod = fp_mul(p, &da, &db);
        let r = fp_rem(p, &prod, self.0.modulus.as_ref().unwrap());
        let mut digits = r;
        digits.resize(self.0.e as usize, 0);
        self.pack(&digits)
    }

    pub fn pow(&self, a: u64, mut n: u64) -> u64 {
        let mut acc = 1u64;
        let mut base = a;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.q() - 2))
    }

    /// Embed an integer via the prime subfield.
    pub fn from_int(&self, n: i64) -> u64 {
        let p = self.0.p as i64;
        (n.rem_euclid(p)) as u64
    }

    /// The generator `w` (class of `x` modulo the defining polynomial).
    /// Only meaningful when `e > 1`.
    pub fn gen_rep(&self) -> u64 {
        self.0.p
    }

    /// Wrap a raw rep as a value-level element.
    pub fn elem(&self, rep: u64) -> FqElem {
        debug_assert!(rep < self.q());
        FqElem { field: self.clone(), rep }
    }

    pub fn zero(&self) -> FqElem {
        self.elem(0)
    }

    pub fn one(&self) -> FqElem {
        self.elem(1)
    }

    /// All element reps, in canonical order.
    pub fn reps(&self) -> impl Iterator<Item = u64> {
        0..self.q()
    }
}

/// An element of `F_q`, tagged with its field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FqElem {
    field: Fq,
    rep: u64,
}

impl FqElem {
    pub fn field(&self) -> &Fq {
        &self.field
    }

    pub fn rep(&self) -> u64 {
        self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep == 0
    }

    pub fn inv(&self) -> Result<FqElem> {
        Ok(self.field.elem(self.field.inv(self.rep)?))
    }

    pub fn pow(&self, n: u64) -> FqElem {
        self.field.elem(self.field.pow(self.rep, n))
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.e() == 1 {
            return write!(f, "{}", self.rep);
        }
        let p = self.field.p();
        let mut r = self.rep;
        let mut digits = Vec::new();
        while r > 0 {
            digits.push(r % p);
            r /= p;
        }
        if digits.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &d) in digits.iter().enumerate().rev() {
            if d == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (d, i) {
                (d, 0) => write!(f, "{d}")?,
                (1, 1) => write!(f, "w")?,
                (1, i) => write!(f, "w^{i}")?,
                (d, 1) => write!(f, "{d}*w")?,
                (d, i) => write!(f, "{d}*w^{i}")?,
            }
        }
        Ok(())
    }
}

macro_rules! elem_binop {
    ($trait:ident, $method:ident, $raw:ident) => {
        impl std::ops::$trait for &FqElem {
            type Output = FqElem;
            fn $method(self, rhs: &FqElem) -> FqElem {
                assert_eq!(self.field, rhs.field, "field mismatch");
                self.field.elem(self.field.$raw(self.rep, rhs.rep))
            }
        }
    };
}
elem_binop!(Add, add, add);
elem_binop!(Sub, sub, sub);
elem_binop!(Mul, mul, mul);

impl std::ops::Neg for &FqElem {
    type Output = FqElem;
    fn neg(self) -> FqElem {
        self.field.elem(self.field.neg(self.rep))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    pub(crate) fn f2() -> Fq {
        Fq::prime(2).unwrap()
    }

    pub(crate) fn f4() -> Fq {
        // F_4 = F_2[w]/(w^2 + w + 1)
        Fq::new(FieldDesc { p: 2, e: 2, modulus: Some(vec![1, 1, 1]) }).unwrap()
    }

    #[test]
    fn rejects_bad_fields() {
        assert!(Fq::prime(4).is_err());
        assert!(Fq::new(FieldDesc { p: 2, e: 0, modulus: None }).is_err());
        // w^2 + 1 = (w+1)^2 over F_2 is reducible
        assert!(Fq::new(FieldDesc { p: 2, e: 2, modulus: Some(vec![1, 0, 1]) }).is_err());
        // modulus must be absent for prime fields
        assert!(Fq::new(FieldDesc { p: 3, e: 1, modulus: Some(vec![1, 1]) }).is_err());
    }

    #[test]
    fn f4_multiplication_table() {
        let f = f4();
        let w = f.gen_rep();
        // w^2 = w + 1 under w^2 + w + 1 = 0
        assert_eq!(f.mul(w, w), f.add(w, 1));
        // w^3 = 1
        assert_eq!(f.pow(w, 3), 1);
        assert_eq!(f.inv(w).unwrap(), f.mul(w, w));
    }

    #[test]
    fn field_axioms_random() {
        let fields = [f2(), f4(), Fq::prime(3).unwrap(), Fq::prime(7).unwrap()];
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for f in &fields {
            let q = f.q();
            for _ in 0..200 {
                let a = rng.gen_range(0..q);
                let b = rng.gen_range(0..q);
                let c = rng.gen_range(0..q);
                // associativity and commutativity
                assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                // distributivity
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                // inverses
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                assert_eq!(f.add(a, f.neg(a)), 0);
            }
        }
    }

    #[test]
    fn frobenius_fixes_prime_subfield() {
        let f = f4();
        for rep in [0u64, 1] {
            assert_eq!(f.pow(rep, f.q()), rep);
        }
        // and q-power is the identity on all of F_q
        for rep in f.reps() {
            assert_eq!(f.pow(rep, f.q()), rep);
        }
    }

    #[test]
    fn zero_inverse_is_error() {
        assert_eq!(f2().inv(0), Err(Error::DivisionByZero));
    }

    #[test]
    fn f9_arithmetic() {
        // F_9 = F_3[w]/(w^2 + 1)
        let f = Fq::new(FieldDesc { p: 3, e: 2, modulus: Some(vec![1, 0, 1]) }).unwrap();
        let w = f.gen_rep();
        // w^2 = -1 = 2
        assert_eq!(f.mul(w, w), 2);
        assert_eq!(f.pow(w, 4), 1);
        for rep in f.reps() {
            if rep != 0 {
                assert_eq!(f.mul(rep, f.inv(rep).unwrap()), 1);
            }
        }
    }
}

//! Exact scalar arithmetic over the two supported ground fields: the
//! rationals and prime fields `F_p` for machine-word primes `p`.
//!
//! Every scalar is stored in a canonical form (rationals in lowest terms
//! with positive denominator, `F_p` elements as residues in `0..p`), so
//! structural equality of values is equality in the field.

use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

use crate::error::{Error, Result};

/// Largest admissible prime characteristic. Keeping `p < 2^31` means that
/// products and sums of residues fit in `u64` without overflow.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// The ground field of a computation: `Q` or `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    /// Builds the prime field `F_p`, rejecting composite or oversized `p`.
    pub fn prime(p: u64) -> Result<Self> {
        if p < 2 || p > MAX_PRIME {
            return Err(Error::Invalid(format!(
                "characteristic must be a prime in 2..={MAX_PRIME}, got {p}"
            )));
        }
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::zero()),
            FieldSpec::Prime(_) => Scalar::Fp(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::one()),
            FieldSpec::Prime(_) => Scalar::Fp(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Prime(p) => {
                let m = n.rem_euclid(*p as i64);
                Scalar::Fp(m as u64)
            }
        }
    }

    /// Residue constructor for `F_p` enumeration loops; `r` must already lie in `0..p`.
    pub fn from_residue(&self, r: u64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(r))),
            FieldSpec::Prime(p) => {
                debug_assert!(r < *p);
                Scalar::Fp(r)
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (FieldSpec::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((x + y) % p),
            _ => panic!("scalar does not belong to field {self}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x - y),
            (FieldSpec::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((x + p - y) % p),
            _ => panic!("scalar does not belong to field {self}"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (FieldSpec::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((x * y) % p),
            _ => panic!("scalar does not belong to field {self}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Rationals, Scalar::Rat(x)) => Scalar::Rat(-x),
            (FieldSpec::Prime(p), Scalar::Fp(x)) => Scalar::Fp((p - x) % p),
            _ => panic!("scalar does not belong to field {self}"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        match (self, a) {
            (FieldSpec::Rationals, Scalar::Rat(x)) => {
                if x.is_zero() {
                    None
                } else {
                    Some(Scalar::Rat(x.recip()))
                }
            }
            (FieldSpec::Prime(p), Scalar::Fp(x)) => {
                if *x == 0 {
                    None
                } else {
                    Some(Scalar::Fp(mod_inverse(*x, *p)))
                }
            }
            _ => panic!("scalar does not belong to field {self}"),
        }
    }

    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let bad = |t: &str| Error::Invalid(format!("cannot parse `{t}` as an element of {self}"));
        match self {
            FieldSpec::Rationals => {
                if let Some((num, den)) = text.split_once('/') {
                    let n = BigInt::from_str(num.trim()).map_err(|_| bad(text))?;
                    let d = BigInt::from_str(den.trim()).map_err(|_| bad(text))?;
                    if d.is_zero() {
                        return Err(Error::Invalid(format!("zero denominator in `{text}`")));
                    }
                    Ok(Scalar::Rat(BigRational::new(n, d)))
                } else {
                    let n = BigInt::from_str(text.trim()).map_err(|_| bad(text))?;
                    Ok(Scalar::Rat(BigRational::from_integer(n)))
                }
            }
            FieldSpec::Prime(p) => {
                let n = i128::from_str(text.trim()).map_err(|_| bad(text))?;
                Ok(Scalar::Fp(n.rem_euclid(*p as i128) as u64))
            }
        }
    }
}

impl FieldSpec {
    /// Parses the textual field tokens used in files and on the command
    /// line: `Q` for the rationals, `gf<p>` for a prime field.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(ptext) = t.strip_prefix("gf") {
            let p: u64 = ptext
                .parse()
                .map_err(|_| Error::Invalid(format!("bad field token `{t}`")))?;
            return FieldSpec::prime(p);
        }
        Err(Error::Invalid(format!(
            "bad field token `{t}` (expected `Q` or `gf<p>`)"
        )))
    }

    /// The token form accepted back by [`FieldSpec::parse`].
    pub fn token(&self) -> String {
        match self {
            FieldSpec::Rationals => "Q".to_string(),
            FieldSpec::Prime(p) => format!("gf{p}"),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// An element of one of the supported fields, always in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Rat(BigRational),
    Fp(u64),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(x) => x.is_zero(),
            Scalar::Fp(x) => *x == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(x) => x.is_one(),
            Scalar::Fp(x) => *x == 1,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(x) => {
                if x.denom().is_one() {
                    write!(f, "{}", x.numer())
                } else {
                    write!(f, "{}/{}", x.numer(), x.denom())
                }
            }
            Scalar::Fp(x) => write!(f, "{x}"),
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
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Inverse of `a` mod `p` by the extended Euclidean algorithm.
fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "not invertible mod p");
    old_s.rem_euclid(p as i128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_validation() {
        assert!(FieldSpec::prime(2).is_ok());
        assert!(FieldSpec::prime(97).is_ok());
        assert!(FieldSpec::prime(1).is_err());
        assert!(FieldSpec::prime(91).is_err()); // 7*13
    }

    #[test]
    fn fp_inverses() {
        let f = FieldSpec::prime(7).unwrap();
        for a in 1..7 {
            let x = Scalar::Fp(a);
            let inv = f.inv(&x).unwrap();
            assert!(f.mul(&x, &inv).is_one());
        }
        assert!(f.inv(&Scalar::Fp(0)).is_none());
    }

    #[test]
    fn rational_canonical_form() {
        let f = FieldSpec::Rationals;
        let a = f.parse_scalar("2/4").unwrap();
        let b = f.parse_scalar("1/2").unwrap();
        assert_eq!(a, b);
        let c = f.parse_scalar("3/-6").unwrap();
        assert_eq!(c.to_string(), "-1/2");
    }

    #[test]
    fn scalar_display_roundtrip() {
        let q = FieldSpec::Rationals;
        for t in ["0", "-3", "5/7", "-11/4"] {
            let s = q.parse_scalar(t).unwrap();
            assert_eq!(q.parse_scalar(&s.to_string()).unwrap(), s);
        }
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(f5.parse_scalar("-1").unwrap(), Scalar::Fp(4));
    }
}

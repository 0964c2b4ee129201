use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The base field: the rationals or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Prime field with modulus `p`; rejects composite or out-of-range moduli.
    pub fn prime(p: u64) -> Result<Field> {
        if p < 2 || p >= (1 << 32) || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^32")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::zero()),
            Field::Prime(p) => Scalar::Fp { p, v: 0 },
        }
    }

    pub fn one(self) -> Scalar {
        self.int(1)
    }

    pub fn int(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Fp { p, v: n.rem_euclid(p as i64) as u64 },
        }
    }

    /// Field tag as written in files: `Q` or `Fp:<p>`.
    pub fn tag(self) -> String {
        match self {
            Field::Rational => "Q".to_string(),
            Field::Prime(p) => format!("Fp:{p}"),
        }
    }

    pub fn parse_tag(s: &str) -> Result<Field> {
        let s = s.trim();
        if s == "Q" {
            return Ok(Field::Rational);
        }
        if let Some(rest) = s.strip_prefix("Fp:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::InvalidField(format!("bad modulus in {s:?}")))?;
            return Field::prime(p);
        }
        Err(Error::InvalidField(format!("unknown field tag {s:?}")))
    }

    /// Parse a scalar written as `n`, `n/d` (rationals) or a residue.
    pub fn parse_scalar(self, s: &str) -> Result<Scalar> {
        let t = s.trim().replace('\u{2212}', "-");
        let bad = || Error::parse(format!("scalar {s:?}"), "not a number");
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (
                BigInt::from_str(n.trim()).map_err(|_| bad())?,
                BigInt::from_str(d.trim()).map_err(|_| bad())?,
            ),
            None => (BigInt::from_str(&t).map_err(|_| bad())?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(Error::parse(format!("scalar {s:?}"), "zero denominator"));
        }
        match self {
            Field::Rational => Ok(Scalar::Q(BigRational::new(num, den))),
            Field::Prime(p) => {
                let pm = BigInt::from(p);
                let n = ((num % &pm) + &pm) % &pm;
                let d = ((den % &pm) + &pm) % &pm;
                let n = Scalar::Fp { p, v: n.to_u64().unwrap() };
                let d = Scalar::Fp { p, v: d.to_u64().unwrap() };
                let di = d
                    .inv()
                    .ok_or_else(|| Error::parse(format!("scalar {s:?}"), "denominator divisible by p"))?;
                Ok(&n * &di)
            }
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A field element. Rationals are always kept in lowest terms with a positive
/// denominator (guaranteed by `BigRational`); residues live in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp { p: u64, v: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::Fp { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Q(q) => Scalar::Q(q.recip()),
            Scalar::Fp { p, v } => Scalar::Fp { p: *p, v: pow_mod(*v, *p - 2, *p) },
        })
    }

    /// Bit size of the numerator, used as the pivot tie-break.
    pub fn bits(&self) -> u64 {
        match self {
            Scalar::Q(q) => q.numer().bits() + q.denom().bits(),
            Scalar::Fp { .. } => 0,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Q(q) => Some(q),
            Scalar::Fp { .. } => None,
        }
    }

    pub(crate) fn check_same(&self, other: &Scalar) {
        assert_eq!(self.field(), other.field(), "scalar field mismatch");
    }
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    r
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { p, v }, Scalar::Fp { v: w, .. }) => {
                self.check_same(o);
                Scalar::Fp { p: *p, v: (v + w) % p }
            }
            _ => panic!("scalar field mismatch"),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a - b),
            (Scalar::Fp { p, v }, Scalar::Fp { v: w, .. }) => {
                self.check_same(o);
                Scalar::Fp { p: *p, v: (v + p - w) % p }
            }
            _ => panic!("scalar field mismatch"),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { p, v }, Scalar::Fp { v: w, .. }) => {
                self.check_same(o);
                Scalar::Fp { p: *p, v: ((*v as u128 * *w as u128) % *p as u128) as u64 }
            }
            _ => panic!("scalar field mismatch"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { p, v } => Scalar::Fp { p: *p, v: (p - v) % p },
        }
    }
}

impl Scalar {
    /// Absolute value of a rational; identity on residues.
    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(a.abs()),
            s => s.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parse_and_print() {
        let f = Field::Rational;
        let a = f.parse_scalar("-6/4").unwrap();
        assert_eq!(a.to_string(), "-3/2");
        assert_eq!(f.parse_scalar("\u{2212}3/2").unwrap(), a);
        assert_eq!(f.parse_scalar("7").unwrap().to_string(), "7");
        assert!(f.parse_scalar("1/0").is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(5).unwrap();
        let two = f.int(2);
        let four = two.inv().unwrap();
        assert_eq!(four, f.int(3));
        assert_eq!((&two * &f.int(4)).to_string(), "3");
        assert_eq!(f.parse_scalar("1/2").unwrap(), f.int(3));
        assert!(Field::prime(6).is_err());
        assert_eq!(Field::parse_tag("Fp:7").unwrap(), Field::Prime(7));
        assert_eq!(Field::Prime(7).tag(), "Fp:7");
    }
}

//! Exact scalars: arbitrary-precision rationals and residues modulo an odd prime.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// The base field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// The prime field `F_p`. Rejects 2, composites and `p >= 2^31`.
    pub fn prime(p: u64) -> Result<Field> {
        if p == 2 {
            return Err(Error::CharacteristicTwo);
        }
        if p < 3 || p >= (1 << 31) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some(*p),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Field::Prime(_))
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Mod { value: n.rem_euclid(*p as i64) as u64, p: *p },
        }
    }

    /// `num/den` as a field element; `den` must be invertible.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        let d = self.from_i64(den);
        let inv = d.inv().ok_or_else(|| Error::InvalidInput(format!("{den} is not invertible")))?;
        Ok(&self.from_i64(num) * &inv)
    }

    /// Enumerates every element of a finite field in the order `0, 1, ..., p-1`.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some((0..*p).map(|v| Scalar::Mod { value: v, p: *p }).collect()),
        }
    }

    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let v: Scalar = s.parse()?;
        match (self, &v) {
            (Field::Rational, Scalar::Rat(_)) => Ok(v),
            (Field::Prime(p), Scalar::Mod { p: q, .. }) if p == q => Ok(v),
            // bare integers are read into whichever field is in use
            (Field::Prime(_), Scalar::Rat(r)) if r.is_integer() => {
                let n = r.to_integer();
                let p = BigInt::from(self.characteristic());
                let m = ((n % &p) + &p) % &p;
                Ok(self.from_i64(m.to_i64().unwrap()))
            }
            (Field::Prime(_), Scalar::Rat(r)) => {
                let num = self.parse_scalar(&r.numer().to_string())?;
                let den = self.parse_scalar(&r.denom().to_string())?;
                let inv = den.inv().ok_or_else(|| Error::Parse(format!("{s}: denominator vanishes")))?;
                Ok(&num * &inv)
            }
            _ => Err(Error::FieldMismatch(self.to_string(), v.field().to_string())),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let t = s.trim();
        if t == "Q" || t == "QQ" || t.eq_ignore_ascii_case("rational") {
            return Ok(Field::Rational);
        }
        let digits = t
            .strip_prefix("F_")
            .or_else(|| t.strip_prefix('F'))
            .or_else(|| t.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')))
            .ok_or_else(|| Error::Parse(format!("unknown field {t:?}")))?;
        let p: u64 = digits.parse().map_err(|_| Error::Parse(format!("unknown field {t:?}")))?;
        Field::prime(p)
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element. Rationals are kept in lowest terms with positive denominator,
/// residues in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod { value: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rational,
            Scalar::Mod { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
            Scalar::Mod { value, p } => Scalar::Mod { value: pow_mod(*value, p - 2, *p), p: *p },
        })
    }

    /// Nonnegative integer power.
    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Residue value for prime fields.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Mod { value, .. } => Some(*value),
            Scalar::Rat(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Mod { .. } => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rat(r) => r.to_f64().unwrap_or(f64::NAN),
            Scalar::Mod { value, .. } => *value as f64,
        }
    }

    fn mismatch(&self, other: &Scalar) -> ! {
        panic!("scalar field mismatch: {} vs {}", self.field(), other.field())
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod { value, p } => write!(f, "{value} mod {p}"),
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `"num"`, `"num/den"` and `"r mod p"`.
    fn from_str(s: &str) -> Result<Scalar> {
        let t = s.trim();
        if let Some((r, p)) = t.split_once("mod") {
            let p: u64 = p.trim().parse().map_err(|_| Error::Parse(format!("bad modulus in {t:?}")))?;
            let field = Field::prime(p)?;
            let r: i64 = r.trim().parse().map_err(|_| Error::Parse(format!("bad residue in {t:?}")))?;
            return Ok(field.from_i64(r));
        }
        let parse_int = |x: &str| -> Result<BigInt> {
            x.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad rational {t:?}")))
        };
        let r = match t.split_once('/') {
            Some((n, d)) => {
                let d = parse_int(d)?;
                if d.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in {t:?}")));
                }
                BigRational::new(parse_int(n)?, d)
            }
            None => BigRational::from_integer(parse_int(t)?),
        };
        Ok(Scalar::Rat(r))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            S(String),
            I(i64),
        }
        match Raw::deserialize(d)? {
            Raw::S(s) => s.parse().map_err(serde::de::Error::custom),
            Raw::I(i) => Ok(Field::Rational.from_i64(i)),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => {
                Scalar::Mod { value: (a + b) % p, p: *p }
            }
            _ => self.mismatch(rhs),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => {
                Scalar::Mod { value: (a + p - b) % p, p: *p }
            }
            _ => self.mismatch(rhs),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => {
                Scalar::Mod { value: a * b % p, p: *p }
            }
            _ => self.mismatch(rhs),
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    /// Panics on division by zero.
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { value, p } => Scalar::Mod { value: (p - value) % p, p: *p },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => *a += b,
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => *a = (*a + b) % *p,
            _ => {
                let s = &*self;
                s.mismatch(rhs)
            }
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => *a -= b,
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => *a = (*a + *p - b) % *p,
            _ => {
                let s = &*self;
                s.mismatch(rhs)
            }
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => *a *= b,
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => *a = *a * b % *p,
            _ => {
                let s = &*self;
                s.mismatch(rhs)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_char_two_and_composites() {
        assert_eq!(Field::prime(2), Err(Error::CharacteristicTwo));
        assert_eq!(Field::prime(9), Err(Error::NotPrime(9)));
        assert!(Field::prime(5).is_ok());
    }

    #[test]
    fn rationals_normalize() {
        let q = Field::Rational;
        let a = q.from_ratio(2, -4).unwrap();
        assert_eq!(a.to_string(), "-1/2");
        let b: Scalar = "3/6".parse().unwrap();
        assert_eq!(b.to_string(), "1/2");
        assert!((&a + &b).is_zero());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = f.from_i64(3);
        assert_eq!((&a * &a.inv().unwrap()), f.one());
        assert_eq!(f.from_i64(-1).residue(), Some(6));
        assert_eq!("4 mod 7".parse::<Scalar>().unwrap(), f.from_i64(4));
        assert_eq!(f.parse_scalar("1/2").unwrap(), f.from_i64(4));
    }

    #[test]
    fn serialization_strings() {
        let s = Field::Rational.from_ratio(5, 3).unwrap();
        assert_eq!(serde_json::to_string(&s).unwrap(), "\"5/3\"");
        let f = Field::prime(5).unwrap();
        assert_eq!(serde_json::to_string(&f.from_i64(7)).unwrap(), "\"2 mod 5\"");
        let back: Scalar = serde_json::from_str("\"2 mod 5\"").unwrap();
        assert_eq!(back, f.from_i64(2));
    }

    #[test]
    fn field_parsing() {
        assert_eq!("Q".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("F_5".parse::<Field>().unwrap(), Field::Prime(5));
        assert_eq!("GF(3)".parse::<Field>().unwrap(), Field::Prime(3));
        assert!("F_2".parse::<Field>().is_err());
    }
}

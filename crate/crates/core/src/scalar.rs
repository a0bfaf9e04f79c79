//! Exact scalars over the rationals or a prime field.
//!
//! A [`Scalar`] carries enough information to know which field it lives in,
//! so arithmetic between scalars of different fields is a programming error
//! and panics. Containers ([`Matrix`](crate::Matrix), [`Algebra`](crate::Algebra))
//! validate the field once at construction.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ground field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    /// The rational numbers.
    Rational,
    /// The prime field GF(p).
    Prime(u64),
}

impl Field {
    /// Largest accepted prime; keeps products of residues inside `u128` comfortably.
    pub const MAX_PRIME: u64 = u32::MAX as u64;

    /// GF(p), checking that `p` is a prime below [`Field::MAX_PRIME`].
    pub fn prime(p: u64) -> Result<Field> {
        if p > Self::MAX_PRIME || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a supported prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    /// Number of elements for finite fields.
    pub fn order(self) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some(p),
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Residue { value: (v as i128).rem_euclid(p as i128) as u64, modulus: p },
        }
    }

    /// Maps a rational number into this field. Fails when the denominator
    /// vanishes modulo the characteristic.
    pub fn from_rational(self, q: &BigRational) -> Result<Scalar> {
        match self {
            Field::Rational => Ok(Scalar::Rational(q.clone())),
            Field::Prime(p) => {
                let m = BigInt::from(p);
                let num = q.numer().mod_floor(&m).to_u64().unwrap_or(0);
                let den = q.denom().mod_floor(&m).to_u64().unwrap_or(0);
                if den == 0 {
                    return Err(Error::ParseScalar {
                        input: q.to_string(),
                        reason: format!("denominator is divisible by {p}"),
                    });
                }
                let num = Scalar::Residue { value: num, modulus: p };
                let den = Scalar::Residue { value: den, modulus: p };
                Ok(&num * &den.inv().expect("nonzero residue"))
            }
        }
    }

    /// Parses `"p/q"`, `"p"` or a decimal residue into this field.
    pub fn parse_scalar(self, s: &str) -> Result<Scalar> {
        let q = parse_rational(s)?;
        self.from_rational(&q)
    }

    /// All elements of a finite field, in residue order.
    pub fn elements(self) -> Option<impl Iterator<Item = Scalar>> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some((0..p).map(move |value| Scalar::Residue { value, modulus: p })),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "GF{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `Q`, `GFp`, `GF(p)` and `GF p` (case-insensitive).
    fn from_str(s: &str) -> Result<Field> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(Field::Rational);
        }
        let upper = t.to_ascii_uppercase();
        let digits = upper
            .strip_prefix("GF")
            .map(|r| r.trim().trim_start_matches('(').trim_end_matches(')').trim())
            .ok_or_else(|| Error::InvalidField(s.to_string()))?;
        let p: u64 = digits.parse().map_err(|_| Error::InvalidField(s.to_string()))?;
        Field::prime(p)
    }
}

/// Serialized field descriptor: `"Q"` or `{"GF": p}`.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum FieldRepr {
    Named(String),
    Prime {
        #[serde(rename = "GF")]
        gf: u64,
    },
}

impl Serialize for Field {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            Field::Rational => FieldRepr::Named("Q".into()),
            Field::Prime(gf) => FieldRepr::Prime { gf },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Field, D::Error> {
        use serde::de::Error as _;
        match FieldRepr::deserialize(d)? {
            FieldRepr::Named(s) => s.parse().map_err(D::Error::custom),
            FieldRepr::Prime { gf } => Field::prime(gf).map_err(D::Error::custom),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let err = |reason: &str| Error::ParseScalar { input: s.to_string(), reason: reason.to_string() };
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err("malformed numerator"))?;
    let den: BigInt = den.parse().map_err(|_| err("malformed denominator"))?;
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

/// An exact element of a [`Field`].
///
/// Rationals stay in lowest terms with a positive denominator; residues lie in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Residue { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, absent for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { value, modulus } => {
                // Extended Euclid on (value, modulus).
                let (mut r0, mut r1) = (*modulus as i128, *value as i128);
                let (mut t0, mut t1) = (0i128, 1i128);
                while r1 != 0 {
                    let q = r0 / r1;
                    (r0, r1) = (r1, r0 - q * r1);
                    (t0, t1) = (t1, t0 - q * t1);
                }
                Scalar::Residue { value: t0.rem_euclid(*modulus as i128) as u64, modulus: *modulus }
            }
        })
    }

    /// `self / rhs`, absent when `rhs` is zero.
    pub fn checked_div(&self, rhs: &Scalar) -> Option<Scalar> {
        rhs.inv().map(|r| self * &r)
    }

    /// The underlying rational, when this scalar is one.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Residue { .. } => None,
        }
    }

    /// Re-reads this scalar in another field (rationals reduce mod p; residues
    /// lift to their representative in `[0, p)`).
    pub fn to_field(&self, field: Field) -> Result<Scalar> {
        match self {
            Scalar::Rational(q) => field.from_rational(q),
            Scalar::Residue { value, .. } => Ok(field.from_i64(*value as i64)),
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_negative())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[inline]
fn same_modulus(a: u64, b: u64) -> u64 {
    assert_eq!(a, b, "scalar field mismatch: GF{a} vs GF{b}");
    a
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) => {
                let p = same_modulus(*p, *q);
                Scalar::Residue { value: ((*a as u128 + *b as u128) % p as u128) as u64, modulus: p }
            }
            _ => panic!("scalar field mismatch: {} vs {}", self.field(), rhs.field()),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) => {
                let p = same_modulus(*p, *q);
                Scalar::Residue { value: ((*a as u128 + p as u128 - *b as u128) % p as u128) as u64, modulus: p }
            }
            _ => panic!("scalar field mismatch: {} vs {}", self.field(), rhs.field()),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) => {
                let p = same_modulus(*p, *q);
                Scalar::Residue { value: ((*a as u128 * *b as u128) % p as u128) as u64, modulus: p }
            }
            _ => panic!("scalar field mismatch: {} vs {}", self.field(), rhs.field()),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => {
                Scalar::Residue { value: (modulus - value) % modulus, modulus: *modulus }
            }
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_and_formats() {
        let q = Field::Rational;
        assert_eq!(q.parse_scalar("6/4").unwrap().to_string(), "3/2");
        assert_eq!(q.parse_scalar("-2/-4").unwrap().to_string(), "1/2");
        assert_eq!(q.parse_scalar("3/-6").unwrap().to_string(), "-1/2");
        assert_eq!(q.parse_scalar("5").unwrap().to_string(), "5");
        assert!(q.parse_scalar("1/0").is_err());
        assert!(q.parse_scalar("x").is_err());

        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.parse_scalar("7").unwrap().to_string(), "2");
        assert_eq!(f5.parse_scalar("-1").unwrap().to_string(), "4");
        assert_eq!(f5.parse_scalar("1/2").unwrap().to_string(), "3");
        assert!(f5.parse_scalar("1/5").is_err());
    }

    #[test]
    fn field_names() {
        assert_eq!("Q".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("GF2".parse::<Field>().unwrap(), Field::Prime(2));
        assert_eq!("gf(7)".parse::<Field>().unwrap(), Field::Prime(7));
        assert!("GF4".parse::<Field>().is_err());
        assert!("R".parse::<Field>().is_err());
        let json = serde_json::to_string(&Field::Prime(3)).unwrap();
        assert_eq!(json, r#"{"GF":3}"#);
        assert_eq!(serde_json::from_str::<Field>(r#""Q""#).unwrap(), Field::Rational);
        assert_eq!(serde_json::from_str::<Field>(&json).unwrap(), Field::Prime(3));
    }

    #[test]
    fn division_exact() {
        let q = Field::Rational;
        let half = q.one().checked_div(&q.from_i64(2)).unwrap();
        assert_eq!(half.to_string(), "1/2");
        assert!(q.one().checked_div(&q.zero()).is_none());
    }

    fn residue(p: u64) -> impl Strategy<Value = Scalar> {
        (0..p).prop_map(move |v| Field::Prime(p).from_i64(v as i64))
    }

    fn rational() -> impl Strategy<Value = Scalar> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| Scalar::Rational(BigRational::new(BigInt::from(n), BigInt::from(d))))
    }

    fn check_axioms(a: &Scalar, b: &Scalar, c: &Scalar) -> std::result::Result<(), TestCaseError> {
        let zero = a.field().zero();
        let one = a.field().one();
        prop_assert_eq!(&(a + b) + c, a + &(b + c));
        prop_assert_eq!(&(a * b) * c, a * &(b * c));
        prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
        prop_assert_eq!(a + b, b + a);
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!(a + &(-a), zero.clone());
        prop_assert_eq!(a - a, zero);
        if let Some(inv) = a.inv() {
            prop_assert_eq!(a * &inv, one);
        } else {
            prop_assert!(a.is_zero());
        }
        Ok(())
    }

    proptest! {
        #[test]
        fn gf5_axioms(a in residue(5), b in residue(5), c in residue(5)) {
            check_axioms(&a, &b, &c)?;
        }

        #[test]
        fn gf7919_axioms(a in residue(7919), b in residue(7919), c in residue(7919)) {
            check_axioms(&a, &b, &c)?;
        }

        #[test]
        fn rational_axioms(a in rational(), b in rational(), c in rational()) {
            check_axioms(&a, &b, &c)?;
            if let Scalar::Rational(q) = &(&a * &b) {
                prop_assert!(q.denom().is_positive());
                let g = q.numer().gcd(q.denom());
                prop_assert!(g.is_one());
            }
        }

        #[test]
        fn residues_in_range(a in residue(11), b in residue(11)) {
            for s in [&a + &b, &a - &b, &a * &b, -&a] {
                match s {
                    Scalar::Residue { value, modulus } => prop_assert!(value < modulus),
                    _ => prop_assert!(false),
                }
            }
        }
    }
}

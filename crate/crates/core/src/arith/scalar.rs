use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ground field of a computation: the rationals or a prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u32),
}

pub const DEFAULT_PRIME: u32 = 32003;

impl Field {
    /// Prime field of characteristic `p`. Moduli must be below 2^31.
    pub fn prime(p: u64) -> Result<Field> {
        if !(2..1 << 31).contains(&p) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn characteristic(self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
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
            Field::Rational => Scalar::Rational(Box::new(BigRational::from_integer(BigInt::from(v)))),
            Field::Prime(p) => Scalar::Mod { residue: v.rem_euclid(p as i64) as u32, modulus: p },
        }
    }

    pub fn from_bigint(self, v: &BigInt) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(Box::new(BigRational::from_integer(v.clone()))),
            Field::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                Scalar::Mod { residue: r.to_u32().expect("residue below modulus"), modulus: p }
            }
        }
    }

    /// `num / den` as a field element; fails when `den` vanishes in the field.
    pub fn from_ratio(self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        let n = self.from_bigint(num);
        let d = self.from_bigint(den);
        n.checked_div(&d)
    }

    /// Parses `Q` or `F p`.
    pub fn parse(text: &str) -> Result<Field> {
        let t = text.trim();
        if t == "Q" {
            return Ok(Field::Rational);
        }
        let p = t
            .strip_prefix('F')
            .map(str::trim)
            .and_then(|n| n.parse::<u64>().ok())
            .ok_or_else(|| Error::Invalid(format!("bad field `{t}` (expected `Q` or `F p`)")))?;
        Field::prime(p)
    }

    /// Parses an integer or a fraction `a/b`.
    pub fn parse_scalar(self, text: &str) -> Result<Scalar> {
        let t = text.trim();
        let bad = || Error::Parse { pos: 0, msg: format!("bad number `{t}`") };
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim().parse::<BigInt>().map_err(|_| bad())?, d.trim().parse::<BigInt>().map_err(|_| bad())?),
            None => (t.parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
        };
        self.from_ratio(&n, &d)
    }

    /// Field of `n` elements when finite.
    pub fn size(self) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some(p as u64),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F {p}"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element.
///
/// Rationals are kept normalized by `BigRational`; residues satisfy
/// `0 <= residue < modulus`. Binary operators panic on mixed fields, the
/// `checked_*` methods report the mismatch instead.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(Box<BigRational>),
    Mod { residue: u32, modulus: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Applies `op` exactly, rejecting mixed fields and division by zero.
pub fn field_op(a: &Scalar, b: &Scalar, op: FieldOp) -> Result<Scalar> {
    match op {
        FieldOp::Add => a.checked_add(b),
        FieldOp::Sub => a.checked_sub(b),
        FieldOp::Mul => a.checked_mul(b),
        FieldOp::Div => a.checked_div(b),
    }
}

#[inline]
fn mod_inv(a: u32, p: u32) -> u32 {
    // Fermat; p < 2^31
    let mut base = a as u64;
    let mut e = p as u64 - 2;
    let m = p as u64;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc as u32
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Mod { modulus, .. } => Field::Prime(*modulus),
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Mod { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Mod { residue, .. } => *residue == 1,
        }
    }

    fn mismatch(&self, other: &Scalar) -> Error {
        Error::FieldMismatch(self.field().to_string(), other.field().to_string())
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(Box::new(&**a + &**b))),
            (Scalar::Mod { residue: a, modulus: p }, Scalar::Mod { residue: b, modulus: q }) if p == q => {
                let s = *a as u64 + *b as u64;
                Ok(Scalar::Mod { residue: (s % *p as u64) as u32, modulus: *p })
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(Box::new(&**a - &**b))),
            (Scalar::Mod { residue: a, modulus: p }, Scalar::Mod { residue: b, modulus: q }) if p == q => {
                let s = *a as u64 + *p as u64 - *b as u64;
                Ok(Scalar::Mod { residue: (s % *p as u64) as u32, modulus: *p })
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(Box::new(&**a * &**b))),
            (Scalar::Mod { residue: a, modulus: p }, Scalar::Mod { residue: b, modulus: q }) if p == q => {
                Ok(Scalar::Mod { residue: (*a as u64 * *b as u64 % *p as u64) as u32, modulus: *p })
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        if self.field() != other.field() {
            return Err(self.mismatch(other));
        }
        let inv = other.inv()?;
        self.checked_mul(&inv)
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(Box::new(q.recip())),
            Scalar::Mod { residue, modulus } => Scalar::Mod { residue: mod_inv(*residue, *modulus), modulus: *modulus },
        })
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(Box::new(-&**q)),
            Scalar::Mod { residue, modulus } => {
                Scalar::Mod { residue: if *residue == 0 { 0 } else { modulus - residue }, modulus: *modulus }
            }
        }
    }

    /// `self - a * b`, the inner update of every elimination loop.
    #[inline]
    pub fn sub_mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Scalar::Mod { residue: s, modulus: p }, Scalar::Mod { residue: x, .. }, Scalar::Mod { residue: y, .. }) => {
                let m = *p as u64;
                let prod = *x as u64 * *y as u64 % m;
                Scalar::Mod { residue: ((*s as u64 + m - prod) % m) as u32, modulus: *p }
            }
            _ => self - &(a * b),
        }
    }

    /// Numerator and denominator (residues are reported over denominator 1).
    pub fn to_ratio(&self) -> (BigInt, BigInt) {
        match self {
            Scalar::Rational(q) => (q.numer().clone(), q.denom().clone()),
            Scalar::Mod { residue, .. } => (BigInt::from(*residue), BigInt::one()),
        }
    }

    /// True when the printed form starts with a minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_negative(),
            Scalar::Mod { .. } => false,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Mod { residue, .. } => write!(f, "{residue}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(_) => write!(f, "{self}"),
            Scalar::Mod { residue, modulus } => write!(f, "{residue} mod {modulus}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl std::ops::$tr<&Scalar> for &Scalar {
            type Output = Scalar;
            #[inline]
            fn $m(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar operands from one field")
            }
        }
    };
}
binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Field::Rational.from_ratio(&BigInt::from(n), &BigInt::from(d)).unwrap()
    }

    #[test]
    fn rational_sum() {
        assert_eq!(field_op(&q(1, 2), &q(1, 3), FieldOp::Add).unwrap(), q(5, 6));
    }

    #[test]
    fn rationals_are_normalized() {
        let x = q(4, -6);
        let (n, d) = x.to_ratio();
        assert_eq!((n, d), (BigInt::from(-2), BigInt::from(3)));
        assert_eq!(x.to_string(), "-2/3");
    }

    #[test]
    fn prime_field_product() {
        let f7 = Field::prime(7).unwrap();
        assert_eq!(field_op(&f7.from_i64(3), &f7.from_i64(5), FieldOp::Mul).unwrap(), f7.one());
    }

    #[test]
    fn division_by_zero_rejected() {
        let f7 = Field::prime(7).unwrap();
        assert_eq!(field_op(&f7.one(), &f7.zero(), FieldOp::Div), Err(Error::DivisionByZero));
        assert_eq!(q(1, 1).inv().unwrap(), q(1, 1));
        assert_eq!(Field::Rational.zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn mixed_fields_rejected() {
        let f7 = Field::prime(7).unwrap();
        let f11 = Field::prime(11).unwrap();
        assert!(matches!(field_op(&f7.one(), &f11.one(), FieldOp::Add), Err(Error::FieldMismatch(..))));
        assert!(matches!(field_op(&f7.one(), &q(1, 2), FieldOp::Mul), Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn residues_stay_in_range() {
        let f = Field::prime(32003).unwrap();
        let a = f.from_i64(-1);
        assert_eq!(a, Scalar::Mod { residue: 32002, modulus: 32003 });
        assert!((&a + &f.one()).is_zero());
        assert_eq!(f.from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap(), f.from_i64(16002));
        assert!(f.from_ratio(&BigInt::from(1), &BigInt::from(32003)).is_err());
    }

    #[test]
    fn non_primes_rejected() {
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(32004).is_err());
        assert!(Field::prime(2).is_ok());
    }

    #[test]
    fn sub_mul_matches_ops() {
        let f = Field::prime(101).unwrap();
        let (s, a, b) = (f.from_i64(5), f.from_i64(77), f.from_i64(93));
        assert_eq!(s.sub_mul(&a, &b), &s - &(&a * &b));
        let (s, a, b) = (q(1, 2), q(3, 4), q(-5, 7));
        assert_eq!(s.sub_mul(&a, &b), &s - &(&a * &b));
    }
}

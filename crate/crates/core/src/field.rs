//! Exact scalars over the rationals and over prime fields `F_p`, `p` odd.
//!
//! A [`Scalar`] carries its field with it. Arithmetic between scalars of
//! different fields is an error ([`Error::FieldMismatch`]); reduction of a
//! rational into `F_p` is always an explicit call to [`Field::reduce`].
//!
//! The checked operations (`try_add`, `try_mul`, ...) are the primary API. The
//! `std::ops` impls on references panic on mismatch and exist for internal
//! code that has already validated that all operands share one field.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ground field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
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

impl Field {
    /// `F_p`; rejects even and composite moduli.
    pub fn prime(p: u64) -> Result<Field> {
        if p % 2 == 0 || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some(*p),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Residue { value: n.rem_euclid(*p as i64) as u64, modulus: *p },
        }
    }

    /// Maps a rational into this field. Fails when the denominator is
    /// divisible by `p`.
    pub fn reduce(&self, q: &BigRational) -> Result<Scalar> {
        match self {
            Field::Rational => Ok(Scalar::Rational(q.clone())),
            Field::Prime(p) => {
                let m = BigInt::from(*p);
                let num = q.numer().mod_floor(&m).to_u64().unwrap();
                let den = q.denom().mod_floor(&m).to_u64().unwrap();
                if den == 0 {
                    return Err(Error::BadReduction(format!("{q} has denominator divisible by {p}")));
                }
                let num = Scalar::Residue { value: num, modulus: *p };
                let den = Scalar::Residue { value: den, modulus: *p };
                num.try_div(&den)
            }
        }
    }

    /// Parses `"n"`, `"-n"`, `"n/d"` (a Unicode minus is accepted) and maps
    /// the result into this field.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        self.reduce(&parse_rational(s)?)
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim().replace('\u{2212}', "-");
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t.as_str(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(n, d))
}

/// An exact field element.
///
/// Rationals are kept in lowest terms with a positive denominator (the
/// `BigRational` invariant); residues satisfy `0 <= value < modulus`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

fn rational_mul(a: &BigRational, b: &BigRational) -> BigRational {
    let unit = |r: &BigRational| r.is_integer() && r.numer().magnitude().is_one();
    if a.is_zero() || b.is_zero() {
        BigRational::zero()
    } else if unit(a) {
        if a.numer() > &BigInt::zero() {
            b.clone()
        } else {
            -b
        }
    } else if unit(b) {
        if b.numer() > &BigInt::zero() {
            a.clone()
        } else {
            -a
        }
    } else {
        a * b
    }
}

impl Scalar {
    pub fn rational(n: i64, d: i64) -> Scalar {
        Scalar::Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// Residue of `n` mod `p`. Does not check that `p` is prime.
    pub fn residue(n: i64, p: u64) -> Scalar {
        Field::Prime(p).from_i64(n)
    }

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

    /// The residue as an integer in `0..p`, or `None` for rationals.
    pub fn residue_value(&self) -> Option<u64> {
        match self {
            Scalar::Residue { value, .. } => Some(*value),
            Scalar::Rational(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Residue { .. } => None,
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<()> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(Error::FieldMismatch { left: self.field(), right: other.field() })
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) if a.is_zero() => Scalar::Rational(b.clone()),
            (Scalar::Rational(a), Scalar::Rational(b)) if b.is_zero() => Scalar::Rational(a.clone()),
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue { value: (a + b) % p, modulus: *p }
            }
            _ => unreachable!(),
        })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(rational_mul(a, b)),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, .. }) => {
                let v = (*a as u128 * *b as u128) % *p as u128;
                Scalar::Residue { value: v as u64, modulus: *p }
            }
            _ => unreachable!(),
        })
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        self.try_mul(&other.inv()?)
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => {
                Scalar::Residue { value: (modulus - value) % modulus, modulus: *modulus }
            }
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::Residue { value, modulus } => {
                // Fermat: a^(p-2)
                let p = *modulus as u128;
                let mut base = *value as u128;
                let mut e = modulus - 2;
                let mut acc = 1u128;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * base % p;
                    }
                    base = base * base % p;
                    e >>= 1;
                }
                Scalar::Residue { value: acc as u64, modulus: *modulus }
            }
        })
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut acc = self.field().one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            Scalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Ord for Scalar {
    /// Residues in `0 < 1 < ... < p-1` order; rationals lexicographically by
    /// (numerator, denominator). Scalars of different fields order by field.
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) => {
                p.cmp(q).then(a.cmp(b))
            }
            (Scalar::Rational(a), Scalar::Rational(b)) => {
                a.numer().cmp(b.numer()).then_with(|| a.denom().cmp(b.denom()))
            }
            _ => self.field().cmp(&other.field()),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.try_add(rhs).expect("scalar addition across fields")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.try_sub(rhs).expect("scalar subtraction across fields")
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.try_mul(rhs).expect("scalar multiplication across fields")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

/// All elements of `F_p` in ascending residue order.
pub fn enumerate_field(p: u64) -> Result<Vec<Scalar>> {
    let field = Field::prime(p)?;
    Ok((0..p as i64).map(|n| field.from_i64(n)).collect())
}

//! Exact scalar arithmetic over the rationals or a prime field 𝔽_p,
//! together with the loop parameter δ = ±n·1_k used by the diagram algebra.
//!
//! No floating point anywhere: characteristic 0 values are arbitrary-precision
//! rationals, characteristic p values are canonical residues in `[0, p)`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("characteristic {0} is neither 0 nor prime")]
    BadCharacteristic(u64),
    #[error("not invertible")]
    NotInvertible,
    #[error("skew form requires even dimension, got n = {0}")]
    SkewOddDimension(usize),
    #[error("symmetric form is not defined over characteristic 2")]
    SymmetricCharTwo,
    #[error("unknown form kind {0:?}, expected \"symmetric\" or \"skew\"")]
    UnknownFormKind(String),
    #[error("cannot parse {0:?} as a scalar")]
    ParseError(String),
}

/// Which nondegenerate bilinear form defines the tensor action.
///
/// `Symmetric` pairs with the algebra at parameter `n`, `Skew` with `-n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    Symmetric,
    Skew,
}

impl fmt::Display for FormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormKind::Symmetric => write!(f, "symmetric"),
            FormKind::Skew => write!(f, "skew"),
        }
    }
}

impl std::str::FromStr for FormKind {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "symmetric" => Ok(FormKind::Symmetric),
            "skew" => Ok(FormKind::Skew),
            other => Err(ScalarError::UnknownFormKind(other.to_string())),
        }
    }
}

/// The ground field: characteristic 0 means ℚ, otherwise 𝔽_p for a prime p.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct FieldSpec {
    characteristic: u64,
}

impl FieldSpec {
    /// The rationals.
    pub fn rationals() -> Self {
        FieldSpec { characteristic: 0 }
    }

    /// The prime field 𝔽_p.
    pub fn prime(p: u64) -> Result<Self, ScalarError> {
        if is_prime(p) {
            Ok(FieldSpec { characteristic: p })
        } else {
            Err(ScalarError::BadCharacteristic(p))
        }
    }

    /// Field from a characteristic: 0 for ℚ, a prime for 𝔽_p.
    pub fn new(characteristic: u64) -> Result<Self, ScalarError> {
        if characteristic == 0 {
            Ok(Self::rationals())
        } else {
            Self::prime(characteristic)
        }
    }

    pub fn characteristic(self) -> u64 {
        self.characteristic
    }

    pub fn is_rationals(self) -> bool {
        self.characteristic == 0
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.characteristic == 0 {
            write!(f, "Q")
        } else {
            write!(f, "F{}", self.characteristic)
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Repr {
    Rational(BigRational),
    Residue(u64),
}

/// An exact field element tagged with its field.
///
/// Arithmetic between scalars of different fields is a programming error and
/// panics; fallible operations (inversion) return `Result`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    repr: Repr,
    field: FieldSpec,
}

/// Reduces an integer into the field: `m · 1_k`.
pub fn reduce_int(m: i64, field: FieldSpec) -> Scalar {
    Scalar::from_int(m, field)
}

/// The loop parameter of the diagram algebra: `n·1_k` for the symmetric
/// form, `-n·1_k` for the skew form.
///
/// The skew form needs even `n`; the symmetric form excludes characteristic
/// 2. A zero result (p dividing n) is a legitimate degenerate parameter.
pub fn delta_parameter(kind: FormKind, n: usize, field: FieldSpec) -> Result<Scalar, ScalarError> {
    match kind {
        FormKind::Symmetric => {
            if field.characteristic() == 2 {
                return Err(ScalarError::SymmetricCharTwo);
            }
            Ok(reduce_int(n as i64, field))
        }
        FormKind::Skew => {
            if n % 2 != 0 {
                return Err(ScalarError::SkewOddDimension(n));
            }
            Ok(reduce_int(-(n as i64), field))
        }
    }
}

impl Scalar {
    pub fn zero(field: FieldSpec) -> Self {
        match field.characteristic() {
            0 => Scalar {
                repr: Repr::Rational(BigRational::zero()),
                field,
            },
            _ => Scalar {
                repr: Repr::Residue(0),
                field,
            },
        }
    }

    pub fn one(field: FieldSpec) -> Self {
        Scalar::from_int(1, field)
    }

    pub fn from_int(m: i64, field: FieldSpec) -> Self {
        Scalar::from_bigint(&BigInt::from(m), field)
    }

    pub fn from_bigint(m: &BigInt, field: FieldSpec) -> Self {
        match field.characteristic() {
            0 => Scalar {
                repr: Repr::Rational(BigRational::from_integer(m.clone())),
                field,
            },
            p => {
                let p_big = BigInt::from(p);
                let mut r = m % &p_big;
                if r.is_negative() {
                    r += &p_big;
                }
                let digits = r.to_u64_digits().1;
                let v = digits.first().copied().unwrap_or(0);
                Scalar {
                    repr: Repr::Residue(v),
                    field,
                }
            }
        }
    }

    /// Parses a scalar: an integer or `a/b` in characteristic 0, an integer
    /// residue mod p otherwise. Negative inputs are reduced.
    pub fn parse(s: &str, field: FieldSpec) -> Result<Self, ScalarError> {
        let bad = || ScalarError::ParseError(s.to_string());
        if field.is_rationals() {
            if let Some((num, den)) = s.split_once('/') {
                let num: BigInt = num.trim().parse().map_err(|_| bad())?;
                let den: BigInt = den.trim().parse().map_err(|_| bad())?;
                if den.is_zero() {
                    return Err(bad());
                }
                return Ok(Scalar {
                    repr: Repr::Rational(BigRational::new(num, den)),
                    field,
                });
            }
        }
        let m: BigInt = s.trim().parse().map_err(|_| bad())?;
        Ok(Scalar::from_bigint(&m, field))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rational(q) => q.is_zero(),
            Repr::Residue(v) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Rational(q) => q.is_one(),
            Repr::Residue(v) => *v == 1,
        }
    }

    /// The canonical residue in `[0, p)`; `None` in characteristic 0.
    pub fn residue(&self) -> Option<u64> {
        match &self.repr {
            Repr::Residue(v) => Some(*v),
            Repr::Rational(_) => None,
        }
    }

    /// The rational value; `None` in positive characteristic.
    pub fn rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rational(q) => Some(q),
            Repr::Residue(_) => None,
        }
    }

    fn check_same_field(&self, other: &Scalar) {
        assert_eq!(
            self.field, other.field,
            "scalar arithmetic across distinct fields"
        );
    }

    /// Multiplicative inverse; errors on zero.
    pub fn invert(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::NotInvertible);
        }
        let repr = match &self.repr {
            Repr::Rational(q) => Repr::Rational(q.recip()),
            Repr::Residue(v) => {
                let p = self.field.characteristic();
                Repr::Residue(pow_mod(*v, p - 2, p))
            }
        };
        Ok(Scalar {
            repr,
            field: self.field,
        })
    }

    /// `self` raised to a non-negative integer power.
    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one(self.field);
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
        match &self.repr {
            Repr::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Repr::Residue(v) => write!(f, "{v}"),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        self.check_same_field(rhs);
        let repr = match (&self.repr, &rhs.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => Repr::Rational(a + b),
            (Repr::Residue(a), Repr::Residue(b)) => {
                Repr::Residue(add_mod(*a, *b, self.field.characteristic()))
            }
            _ => unreachable!(),
        };
        Scalar {
            repr,
            field: self.field,
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check_same_field(rhs);
        let repr = match (&self.repr, &rhs.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => Repr::Rational(a * b),
            (Repr::Residue(a), Repr::Residue(b)) => {
                Repr::Residue(mul_mod(*a, *b, self.field.characteristic()))
            }
            _ => unreachable!(),
        };
        Scalar {
            repr,
            field: self.field,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        let repr = match &self.repr {
            Repr::Rational(q) => Repr::Rational(-q),
            Repr::Residue(v) => {
                let p = self.field.characteristic();
                Repr::Residue(if *v == 0 { 0 } else { p - *v })
            }
        };
        Scalar {
            repr,
            field: self.field,
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
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
        *self = &*self + rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin over the u64 range.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

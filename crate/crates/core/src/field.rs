//! Exact scalars: arbitrary-precision rationals or a prime field `F_p`.
//!
//! Every arithmetic operation is exact; there are no tolerances anywhere in
//! this crate. The field is chosen once per session and all scalars carry
//! enough information to dispatch their own arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::LinAlgError;

/// Which exact field a session computes over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    Prime(u64),
}

impl FieldKind {
    /// Validates the field choice (primality of `p`).
    pub fn validate(self) -> Result<Self, LinAlgError> {
        match self {
            FieldKind::Rationals => Ok(self),
            FieldKind::Prime(p) => {
                if p >= 2 && is_prime_u64(p) && p < (1 << 31) {
                    Ok(self)
                } else {
                    Err(LinAlgError::BadPrime(p))
                }
            }
        }
    }

    pub fn zero(self) -> Scalar {
        match self {
            FieldKind::Rationals => Scalar::Rat(BigRational::zero()),
            FieldKind::Prime(p) => Scalar::Fp { v: 0, p },
        }
    }

    pub fn one(self) -> Scalar {
        match self {
            FieldKind::Rationals => Scalar::Rat(BigRational::one()),
            FieldKind::Prime(p) => Scalar::Fp { v: 1 % p, p },
        }
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            FieldKind::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            FieldKind::Prime(p) => {
                let m = n.rem_euclid(p as i64) as u64;
                Scalar::Fp { v: m, p }
            }
        }
    }

    /// Builds `num/den` in the field. Fails if `den` maps to zero.
    pub fn from_ratio(self, num: i64, den: i64) -> Result<Scalar, LinAlgError> {
        if den == 0 {
            return Err(LinAlgError::DivisionByZero);
        }
        match self {
            FieldKind::Rationals => Ok(Scalar::Rat(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            ))),
            FieldKind::Prime(_) => {
                let d = self.from_i64(den);
                let d = d.inv()?;
                Ok(&self.from_i64(num) * &d)
            }
        }
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = 37u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// An exact field element. Prime-field values store their modulus so scalars
/// are self-contained; mixing modulii or mixing backends is a programming
/// error and panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Fp { v: u64, p: u64 },
}

impl Scalar {
    pub fn kind(&self) -> FieldKind {
        match self {
            Scalar::Rat(_) => FieldKind::Rationals,
            Scalar::Fp { p, .. } => FieldKind::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp { v, p } => *v == 1 % *p,
        }
    }

    /// Multiplicative inverse; rejects zero.
    pub fn inv(&self) -> Result<Scalar, LinAlgError> {
        if self.is_zero() {
            return Err(LinAlgError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
            Scalar::Fp { v, p } => Scalar::Fp {
                v: mod_inv(*v, *p),
                p: *p,
            },
        })
    }

    /// Pivot preference: smaller values are cheaper pivots. For rationals
    /// this measures bit size to damp coefficient growth; for `F_p` all
    /// nonzero entries are equally good.
    pub fn pivot_weight(&self) -> u64 {
        match self {
            Scalar::Rat(r) => (r.numer().bits() + r.denom().bits()) as u64,
            Scalar::Fp { .. } => 1,
        }
    }

    /// Exact integer value if the scalar is an integer rational (used by
    /// emitters); `None` for proper fractions.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    Some(r.numer().clone())
                } else {
                    None
                }
            }
            Scalar::Fp { v, .. } => Some(BigInt::from(*v)),
        }
    }
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // extended Euclid on (a, p), p prime, a != 0 mod p
    let (mut r0, mut r1) = (a as i128, p as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    s0.rem_euclid(p as i128) as u64
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $ratop:tt, $fpexpr:expr) => {
        impl std::ops::$trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a $ratop b),
                    (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) => {
                        assert_eq!(p, q, "mixed prime fields");
                        let f: fn(u64, u64, u64) -> u64 = $fpexpr;
                        Scalar::Fp { v: f(*a, *b, *p), p: *p }
                    }
                    _ => panic!("mixed scalar backends"),
                }
            }
        }
    };
}

scalar_binop!(Add, add, +, |a, b, p| {
    let s = a + b;
    if s >= p { s - p } else { s }
});
scalar_binop!(Sub, sub, -, |a, b, p| if a >= b { a - b } else { a + p - b });
scalar_binop!(Mul, mul, *, |a, b, p| ((a as u128 * b as u128) % p as u128) as u64);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Fp { v, p } => Scalar::Fp {
                v: if *v == 0 { 0 } else { p - v },
                p: *p,
            },
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { v, .. } => write!(f, "{}", v),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses a scalar literal: an integer or `a/b`.
pub fn parse_scalar(kind: FieldKind, text: &str) -> Result<Scalar, LinAlgError> {
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| LinAlgError::BadScalar(text.into()))?;
        let d: i64 = d.trim().parse().map_err(|_| LinAlgError::BadScalar(text.into()))?;
        kind.from_ratio(n, d)
    } else {
        let n: i64 = text.parse().map_err(|_| LinAlgError::BadScalar(text.into()))?;
        Ok(kind.from_i64(n))
    }
}

/// Signed magnitude of a rational scalar, used when printing rational data
/// in reports with a canonical sign.
pub fn scalar_is_negative(s: &Scalar) -> bool {
    match s {
        Scalar::Rat(r) => r.is_negative(),
        Scalar::Fp { .. } => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic_is_exact() {
        let k = FieldKind::Rationals;
        let third = k.from_ratio(1, 3).unwrap();
        let sum = &(&third + &third) + &third;
        assert!(sum.is_one());
    }

    #[test]
    fn prime_field_inverse() {
        let k = FieldKind::Prime(32003).validate().unwrap();
        for n in 1..50i64 {
            let x = k.from_i64(n);
            let prod = &x * &x.inv().unwrap();
            assert!(prod.is_one());
        }
    }

    #[test]
    fn division_by_zero_rejected() {
        let k = FieldKind::Rationals;
        assert!(k.zero().inv().is_err());
        assert!(FieldKind::Prime(7).zero().inv().is_err());
    }

    #[test]
    fn bad_prime_rejected() {
        assert!(FieldKind::Prime(1).validate().is_err());
        assert!(FieldKind::Prime(91).validate().is_err());
        assert!(FieldKind::Prime(2).validate().is_ok());
        assert!(FieldKind::Prime(1073741789).validate().is_ok());
    }

    #[test]
    fn parse_scalar_literals() {
        let k = FieldKind::Rationals;
        assert!(parse_scalar(k, "-3").unwrap() == k.from_i64(-3));
        assert!(parse_scalar(k, "2/4").unwrap() == k.from_ratio(1, 2).unwrap());
        assert!(parse_scalar(k, "x").is_err());
    }
}

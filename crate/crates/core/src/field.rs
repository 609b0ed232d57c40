//! Exact coefficient fields: the rationals and prime fields `F_p`.
//!
//! Every [`FieldElem`] carries its field, so mixing elements of different
//! fields is detected at runtime. Prime field elements are kept in `[0, p)`,
//! rationals in lowest terms with a positive denominator (guaranteed by
//! `num_rational`).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest admissible prime modulus (exclusive).
pub const PRIME_LIMIT: u64 = 1 << 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// A prime field, checking that `p` is a prime below 2^31.
    pub fn prime(p: u64) -> Result<Field> {
        if p < PRIME_LIMIT && is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::InvalidPrime(p))
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> FieldElem {
        self.from_i64(0)
    }

    pub fn one(self) -> FieldElem {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> FieldElem {
        match self {
            Field::Rational => FieldElem::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => FieldElem::Prime {
                value: n.rem_euclid(p as i64) as u64,
                p,
            },
        }
    }

    pub fn from_bigint(self, n: &BigInt) -> FieldElem {
        match self {
            Field::Rational => FieldElem::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                FieldElem::Prime {
                    value: r.to_u64().expect("residue fits in u64"),
                    p,
                }
            }
        }
    }

    /// Maps a rational into this field; fails in `F_p` when `p` divides the denominator.
    pub fn from_rational(self, q: &BigRational) -> Result<FieldElem> {
        match self {
            Field::Rational => Ok(FieldElem::Rational(q.clone())),
            Field::Prime(_) => {
                let num = self.from_bigint(q.numer());
                let den = self.from_bigint(q.denom());
                num.div(&den)
            }
        }
    }

    pub fn check(self, other: Field) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self, other))
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

/// Deterministic trial division; moduli here are below 2^31.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Rational(BigRational),
    Prime { value: u64, p: u64 },
}

impl FieldElem {
    pub fn field(&self) -> Field {
        match self {
            FieldElem::Rational(_) => Field::Rational,
            FieldElem::Prime { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rational(q) => q.is_zero(),
            FieldElem::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Rational(q) => q.is_one(),
            FieldElem::Prime { value, .. } => *value == 1,
        }
    }

    /// True when the element prints with a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            FieldElem::Rational(q) => q.is_negative(),
            FieldElem::Prime { .. } => false,
        }
    }

    pub fn add(&self, other: &FieldElem) -> Result<FieldElem> {
        match (self, other) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => Ok(FieldElem::Rational(a + b)),
            (FieldElem::Prime { value: a, p }, FieldElem::Prime { value: b, p: q }) if p == q => {
                Ok(FieldElem::Prime {
                    value: (a + b) % p,
                    p: *p,
                })
            }
            _ => Err(Error::FieldMismatch(self.field(), other.field())),
        }
    }

    pub fn sub(&self, other: &FieldElem) -> Result<FieldElem> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FieldElem) -> Result<FieldElem> {
        match (self, other) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => Ok(FieldElem::Rational(a * b)),
            (FieldElem::Prime { value: a, p }, FieldElem::Prime { value: b, p: q }) if p == q => {
                Ok(FieldElem::Prime {
                    value: a * b % p,
                    p: *p,
                })
            }
            _ => Err(Error::FieldMismatch(self.field(), other.field())),
        }
    }

    pub fn div(&self, other: &FieldElem) -> Result<FieldElem> {
        self.field().check(other.field())?;
        self.mul(&other.inv()?)
    }

    pub fn neg(&self) -> FieldElem {
        match self {
            FieldElem::Rational(a) => FieldElem::Rational(-a),
            FieldElem::Prime { value, p } => FieldElem::Prime {
                value: (p - value) % p,
                p: *p,
            },
        }
    }

    pub fn inv(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            FieldElem::Rational(a) => Ok(FieldElem::Rational(a.recip())),
            FieldElem::Prime { value, p } => Ok(FieldElem::Prime {
                value: inv_mod(*value, *p),
                p: *p,
            }),
        }
    }

    pub fn pow(&self, mut e: u64) -> FieldElem {
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

    /// Residue in `[0, p)` for prime field elements.
    pub fn residue(&self) -> Option<u64> {
        match self {
            FieldElem::Prime { value, .. } => Some(*value),
            FieldElem::Rational(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElem::Rational(q) => Some(q),
            FieldElem::Prime { .. } => None,
        }
    }
}

/// Inverse of a nonzero residue by the extended Euclidean algorithm.
fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(p as i64) as u64
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rational(q) => write!(f, "{q}"),
            FieldElem::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

// Operator forms panic on mismatched fields. They are used on values whose
// field has already been checked by the caller.

impl Add for &FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        FieldElem::add(self, rhs).expect("field mismatch in +")
    }
}

impl Sub for &FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        FieldElem::sub(self, rhs).expect("field mismatch in -")
    }
}

impl Mul for &FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        FieldElem::mul(self, rhs).expect("field mismatch in *")
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn division_in_f7() {
        let f = Field::prime(7).unwrap();
        let q = f.from_i64(3).div(&f.from_i64(5)).unwrap();
        assert_eq!(q, f.from_i64(2));
    }

    #[test]
    fn rational_sum() {
        let q = Field::Rational;
        let third = q.one().div(&q.from_i64(3)).unwrap();
        let sixth = q.one().div(&q.from_i64(6)).unwrap();
        let half = q.one().div(&q.from_i64(2)).unwrap();
        assert_eq!(&third + &sixth, half);
    }

    #[test]
    fn rational_lowest_terms() {
        let q = Field::Rational;
        let x = q.from_i64(4).div(&q.from_i64(-6)).unwrap();
        let r = x.as_rational().unwrap();
        assert_eq!(r.numer(), &BigInt::from(-2));
        assert_eq!(r.denom(), &BigInt::from(3));
    }

    #[test]
    fn errors() {
        let f7 = Field::prime(7).unwrap();
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f7.one().div(&f7.zero()), Err(Error::DivisionByZero));
        assert!(matches!(
            f7.one().add(&f5.one()),
            Err(Error::FieldMismatch(..))
        ));
        assert!(matches!(
            f7.one().mul(&Field::Rational.one()),
            Err(Error::FieldMismatch(..))
        ));
        assert_eq!(Field::prime(9), Err(Error::InvalidPrime(9)));
        assert_eq!(Field::prime(1 << 31), Err(Error::InvalidPrime(1 << 31)));
    }

    #[test]
    fn canonical_residues() {
        let f = Field::prime(11).unwrap();
        assert_eq!(f.from_i64(-1).residue(), Some(10));
        assert_eq!(f.from_i64(23).residue(), Some(1));
        assert_eq!(f.zero().neg().residue(), Some(0));
    }

    #[test]
    fn rational_reduction_mod_p() {
        let f = Field::prime(7).unwrap();
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(f.from_rational(&half).unwrap(), f.from_i64(4));
        let seventh = BigRational::new(BigInt::from(1), BigInt::from(7));
        assert_eq!(f.from_rational(&seventh), Err(Error::DivisionByZero));
    }

    proptest! {
        #[test]
        fn additive_identity(a in 0u64..101) {
            let f = Field::prime(101).unwrap();
            let x = f.from_i64(a as i64);
            prop_assert_eq!(&x + &f.zero(), x);
        }

        #[test]
        fn fermat(a in any::<i64>(), pi in 0usize..5) {
            let p = [3u64, 7, 11, 101, 2147483647][pi];
            let f = Field::prime(p).unwrap();
            let x = f.from_i64(a);
            prop_assert_eq!(x.pow(p), x);
        }

        #[test]
        fn inverse_roundtrip(a in 1i64..2147483647) {
            let f = Field::prime(2147483647).unwrap();
            let x = f.from_i64(a);
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
    }
}

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

use crate::error::{Error, Result};

/// The coefficient ring. Every computation in the engine is exact; there is
/// no floating point anywhere in the system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoefficientRing {
    Integers,
    PrimeField(u64),
    Rationals,
}

impl CoefficientRing {
    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::ExprParse {
                reason: format!("{p} is not prime"),
            });
        }
        Ok(CoefficientRing::PrimeField(p))
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, CoefficientRing::Integers)
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            CoefficientRing::PrimeField(p) => *p,
            _ => 0,
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Integers => write!(f, "Z"),
            CoefficientRing::PrimeField(p) => write!(f, "F{p}"),
            CoefficientRing::Rationals => write!(f, "Q"),
        }
    }
}

/// An exact ring element. Values are kept canonical: `Big` only appears when
/// the value does not fit in an `i64`, `Rat` only when the denominator is not 1,
/// and prime-field values are reduced to `0..p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Int(i64),
    Big(BigInt),
    Rat(BigRational),
}

impl Scalar {
    pub const ZERO: Scalar = Scalar::Int(0);
    pub const ONE: Scalar = Scalar::Int(1);

    pub fn from_i64(v: i64) -> Self {
        Scalar::Int(v)
    }

    pub fn from_bigint(v: BigInt) -> Self {
        match v.to_i64() {
            Some(n) => Scalar::Int(n),
            None => Scalar::Big(v),
        }
    }

    pub fn from_rational(v: BigRational) -> Self {
        if v.denom().is_one() {
            Scalar::from_bigint(v.numer().clone())
        } else {
            Scalar::Rat(v)
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Int(v) => *v == 0,
            Scalar::Big(v) => v.is_zero(),
            Scalar::Rat(v) => v.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Int(v) => *v == 1,
            Scalar::Big(v) => v.is_one(),
            Scalar::Rat(v) => v.is_one(),
        }
    }

    /// Integer content, failing on genuine fractions.
    pub fn to_bigint(&self) -> Option<BigInt> {
        match self {
            Scalar::Int(v) => Some(BigInt::from(*v)),
            Scalar::Big(v) => Some(v.clone()),
            Scalar::Rat(v) => {
                if v.denom().is_one() {
                    Some(v.numer().clone())
                } else {
                    None
                }
            }
        }
    }

    pub fn to_rational(&self) -> BigRational {
        match self {
            Scalar::Int(v) => BigRational::from_integer(BigInt::from(*v)),
            Scalar::Big(v) => BigRational::from_integer(v.clone()),
            Scalar::Rat(v) => v.clone(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(v) => write!(f, "{v}"),
            Scalar::Big(v) => write!(f, "{v}"),
            Scalar::Rat(v) => write!(f, "{v}"),
        }
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::Int(v)
    }
}

impl CoefficientRing {
    /// Canonical form of an arbitrary scalar in this ring.
    pub fn normalize(&self, s: Scalar) -> Scalar {
        match self {
            CoefficientRing::PrimeField(p) => {
                let p = *p as i64;
                match s {
                    Scalar::Int(v) => Scalar::Int(v.rem_euclid(p)),
                    Scalar::Big(v) => {
                        let m = v % p;
                        Scalar::Int(m.to_i64().unwrap().rem_euclid(p))
                    }
                    Scalar::Rat(v) => {
                        // a/b mod p; b must be invertible.
                        let num = self.normalize(Scalar::from_bigint(v.numer().clone()));
                        let den = self.normalize(Scalar::from_bigint(v.denom().clone()));
                        let inv = self.inv(&den).expect("denominator divisible by p");
                        self.mul(&num, &inv)
                    }
                }
            }
            _ => match s {
                Scalar::Big(v) => Scalar::from_bigint(v),
                Scalar::Rat(v) => Scalar::from_rational(v),
                s => s,
            },
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.normalize(Scalar::Int(v))
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        if let (Scalar::Int(x), Scalar::Int(y)) = (a, b) {
            if let Some(s) = x.checked_add(*y) {
                return self.normalize(Scalar::Int(s));
            }
        }
        match self {
            CoefficientRing::Rationals => Scalar::from_rational(a.to_rational() + b.to_rational()),
            _ => {
                let s = a.to_bigint().unwrap() + b.to_bigint().unwrap();
                self.normalize(Scalar::from_bigint(s))
            }
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        let v = match a {
            Scalar::Int(v) => {
                if let Some(n) = v.checked_neg() {
                    Scalar::Int(n)
                } else {
                    Scalar::Big(-BigInt::from(*v))
                }
            }
            Scalar::Big(v) => Scalar::from_bigint(-v.clone()),
            Scalar::Rat(v) => Scalar::Rat(-v.clone()),
        };
        self.normalize(v)
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        if a.is_zero() || b.is_zero() {
            return Scalar::ZERO;
        }
        if let (Scalar::Int(x), Scalar::Int(y)) = (a, b) {
            if let Some(p) = x.checked_mul(*y) {
                return self.normalize(Scalar::Int(p));
            }
        }
        match self {
            CoefficientRing::Rationals => Scalar::from_rational(a.to_rational() * b.to_rational()),
            _ => {
                let p = a.to_bigint().unwrap() * b.to_bigint().unwrap();
                self.normalize(Scalar::from_bigint(p))
            }
        }
    }

    /// Multiplicative inverse; `None` when not a unit.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        match self {
            CoefficientRing::Rationals => Some(Scalar::from_rational(a.to_rational().recip())),
            CoefficientRing::PrimeField(p) => {
                let v = match self.normalize(a.clone()) {
                    Scalar::Int(v) => v,
                    _ => unreachable!("prime-field scalars are small"),
                };
                if v == 0 {
                    return None;
                }
                // extended Euclid on (v, p)
                let (mut r0, mut r1) = (*p as i64, v);
                let (mut t0, mut t1) = (0i64, 1i64);
                while r1 != 0 {
                    let q = r0 / r1;
                    (r0, r1) = (r1, r0 - q * r1);
                    (t0, t1) = (t1, t0 - q * t1);
                }
                debug_assert_eq!(r0, 1);
                Some(self.from_i64(t0))
            }
            CoefficientRing::Integers => {
                let v = a.to_bigint().unwrap();
                if v.is_one() {
                    Some(Scalar::ONE)
                } else if (-&v).is_one() {
                    Some(Scalar::Int(-1))
                } else {
                    None
                }
            }
        }
    }

    /// Exact division a/b; `None` when b does not divide a in this ring.
    pub fn div_exact(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        if b.is_zero() {
            return None;
        }
        if a.is_zero() {
            return Some(Scalar::ZERO);
        }
        match self {
            CoefficientRing::Integers => {
                let x = a.to_bigint().unwrap();
                let y = b.to_bigint().unwrap();
                let (q, r) = num_integer::Integer::div_rem(&x, &y);
                if r.is_zero() {
                    Some(Scalar::from_bigint(q))
                } else {
                    None
                }
            }
            _ => Some(self.mul(a, &self.inv(b)?)),
        }
    }

    /// |a| as a BigInt, used for pivot selection over the integers.
    pub fn abs_bigint(&self, a: &Scalar) -> BigInt {
        a.to_bigint().expect("integer scalar").abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_arithmetic_is_reduced() {
        let f5 = CoefficientRing::PrimeField(5);
        assert_eq!(f5.add(&Scalar::Int(3), &Scalar::Int(4)), Scalar::Int(2));
        assert_eq!(f5.mul(&Scalar::Int(3), &Scalar::Int(4)), Scalar::Int(2));
        assert_eq!(f5.neg(&Scalar::Int(2)), Scalar::Int(3));
        assert_eq!(f5.inv(&Scalar::Int(3)), Some(Scalar::Int(2)));
    }

    #[test]
    fn integer_overflow_promotes() {
        let z = CoefficientRing::Integers;
        let big = Scalar::Int(i64::MAX);
        let sum = z.add(&big, &Scalar::Int(1));
        assert_eq!(sum.to_bigint().unwrap(), BigInt::from(i64::MAX) + 1);
        let back = z.sub(&sum, &Scalar::Int(1));
        assert_eq!(back, big);
    }

    #[test]
    fn rationals_reduce() {
        let q = CoefficientRing::Rationals;
        let half = q.div_exact(&Scalar::Int(1), &Scalar::Int(2)).unwrap();
        let one = q.add(&half, &half);
        assert_eq!(one, Scalar::ONE);
    }

    #[test]
    fn exact_division_over_z() {
        let z = CoefficientRing::Integers;
        assert_eq!(
            z.div_exact(&Scalar::Int(6), &Scalar::Int(3)),
            Some(Scalar::Int(2))
        );
        assert_eq!(z.div_exact(&Scalar::Int(7), &Scalar::Int(3)), None);
    }
}

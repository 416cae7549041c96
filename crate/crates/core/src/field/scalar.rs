use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{FieldError, FieldSpec, Polynomial, RatFn};

/// An element of one of the supported coefficient fields.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u32, modulus: u32 },
    Function(Box<RatFn>),
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn bigint_mod(v: &BigInt, p: u32) -> u32 {
    v.mod_floor(&BigInt::from(p)).to_u32().expect("reduced below p")
}

impl Scalar {
    pub fn zero(field: &FieldSpec) -> Scalar {
        Scalar::from_i64(field, 0)
    }

    pub fn one(field: &FieldSpec) -> Scalar {
        Scalar::from_i64(field, 1)
    }

    pub fn from_i64(field: &FieldSpec, v: i64) -> Scalar {
        Scalar::from_bigint(field, &BigInt::from(v))
    }

    pub fn from_bigint(field: &FieldSpec, v: &BigInt) -> Scalar {
        match field {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(v.clone())),
            FieldSpec::PrimeField(p) => Scalar::Modular { value: bigint_mod(v, *p), modulus: *p },
            FieldSpec::RationalFunctions(ring) => {
                let c = Scalar::from_bigint(&ring.field, v);
                Scalar::Function(Box::new(RatFn::from_poly(Polynomial::constant(ring, c))))
            }
        }
    }

    /// Image of a rational number; fails in `F_p` when `p` divides the denominator.
    pub fn from_rational(field: &FieldSpec, v: &BigRational) -> Result<Scalar, FieldError> {
        let num = Scalar::from_bigint(field, v.numer());
        let den = Scalar::from_bigint(field, v.denom());
        let inv = den
            .inv()
            .ok_or_else(|| FieldError::NotRepresentable(v.to_string(), field.to_string()))?;
        Ok(&num * &inv)
    }

    pub fn rational(n: i64, d: i64) -> Scalar {
        Scalar::Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Modular { modulus, .. } => FieldSpec::PrimeField(*modulus),
            Scalar::Function(f) => FieldSpec::RationalFunctions(f.ring().clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
            Scalar::Function(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
            Scalar::Function(f) => f.is_one(),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_function(&self) -> Option<&RatFn> {
        match self {
            Scalar::Function(f) => Some(f),
            _ => None,
        }
    }

    /// Scalar as an element of the constant subfield, when it is constant.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self {
            Scalar::Function(f) => f.as_constant(),
            other => Some(other.clone()),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: mod_pow(*value as u64, *modulus as u64 - 2, *modulus as u64) as u32,
                modulus: *modulus,
            },
            Scalar::Function(f) => Scalar::Function(Box::new(f.inv()?)),
        })
    }

    pub fn div(&self, other: &Scalar) -> Option<Scalar> {
        Some(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Option<Scalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Scalar::one(&self.field());
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        Some(acc)
    }

    /// Whether the canonical printed form starts with a minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_negative(),
            Scalar::Modular { .. } => false,
            Scalar::Function(f) => f.is_negative(),
        }
    }

    /// Numerator and denominator strings; exact serialization without loss.
    pub fn to_fraction_strings(&self) -> (String, String) {
        match self {
            Scalar::Rational(r) => (r.numer().to_string(), r.denom().to_string()),
            Scalar::Modular { value, .. } => (value.to_string(), "1".into()),
            Scalar::Function(f) => (f.numer().to_string(), f.denom().to_string()),
        }
    }

    /// The same value viewed in `field`; base constants embed into function fields.
    pub fn lift(&self, field: &FieldSpec) -> Scalar {
        match (self, field) {
            (Scalar::Rational(_) | Scalar::Modular { .. }, FieldSpec::RationalFunctions(ring)) => {
                let c = self.lift(&ring.field);
                Scalar::Function(Box::new(RatFn::from_poly(Polynomial::constant(ring, c))))
            }
            (Scalar::Rational(r), FieldSpec::PrimeField(_)) => {
                Scalar::from_rational(field, r).expect("rational constant not representable mod p")
            }
            _ => {
                debug_assert_eq!(&self.field(), field, "scalar does not belong to {field}");
                self.clone()
            }
        }
    }

    /// Lift constants of the base field into a function field when mixed.
    fn unify(a: &Scalar, b: &Scalar) -> Option<(Scalar, Scalar)> {
        match (a, b) {
            (Scalar::Function(f), Scalar::Rational(_) | Scalar::Modular { .. }) => {
                let lifted = Polynomial::constant(f.ring(), b.clone());
                Some((a.clone(), Scalar::Function(Box::new(RatFn::from_poly(lifted)))))
            }
            (Scalar::Rational(_) | Scalar::Modular { .. }, Scalar::Function(f)) => {
                let lifted = Polynomial::constant(f.ring(), a.clone());
                Some((Scalar::Function(Box::new(RatFn::from_poly(lifted))), b.clone()))
            }
            _ => None,
        }
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar field mismatch: {} vs {}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q })
                if p == q =>
            {
                Scalar::Modular { value: ((*a as u64 + *b as u64) % *p as u64) as u32, modulus: *p }
            }
            (Scalar::Function(a), Scalar::Function(b)) => Scalar::Function(Box::new(a.add(b))),
            _ => match Scalar::unify(self, rhs) {
                Some((a, b)) => &a + &b,
                None => mismatch(self, rhs),
            },
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { value, modulus } => {
                Scalar::Modular { value: (*modulus - *value) % *modulus, modulus: *modulus }
            }
            Scalar::Function(f) => Scalar::Function(Box::new(f.neg())),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q })
                if p == q =>
            {
                Scalar::Modular { value: ((*a as u64 * *b as u64) % *p as u64) as u32, modulus: *p }
            }
            (Scalar::Function(a), Scalar::Function(b)) => Scalar::Function(Box::new(a.mul(b))),
            _ => match Scalar::unify(self, rhs) {
                Some((a, b)) => &a * &b,
                None => mismatch(self, rhs),
            },
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Modular { value, .. } => write!(f, "{value}"),
            Scalar::Function(r) => write!(f, "{r}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_inverse_and_negation() {
        let f7 = FieldSpec::prime(7).unwrap();
        let three = Scalar::from_i64(&f7, 3);
        assert_eq!(&three * &three.inv().unwrap(), Scalar::one(&f7));
        assert_eq!(Scalar::from_i64(&f7, -1), Scalar::from_i64(&f7, 6));
        assert_eq!(-&Scalar::zero(&f7), Scalar::zero(&f7));
    }

    #[test]
    fn rational_into_prime_field() {
        let f5 = FieldSpec::prime(5).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(Scalar::from_rational(&f5, &half).unwrap(), Scalar::from_i64(&f5, 3));
        let fifth = BigRational::new(1.into(), 5.into());
        assert!(Scalar::from_rational(&f5, &fifth).is_err());
    }

    #[test]
    fn negative_powers() {
        let q = FieldSpec::Rationals;
        let two = Scalar::from_i64(&q, 2);
        assert_eq!(two.pow(-3).unwrap(), Scalar::rational(1, 8));
        assert!(Scalar::zero(&q).pow(-1).is_none());
    }
}

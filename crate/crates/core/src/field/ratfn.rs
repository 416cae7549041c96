use std::fmt;

use super::{gcd, FieldError, Polynomial, RingRef, Scalar};

/// Reduced quotient of two polynomials over `Q` or `F_p`.
///
/// The numerator and denominator are coprime and the denominator's leading
/// coefficient is one, so structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFn {
    num: Polynomial,
    den: Polynomial,
}

impl RatFn {
    pub fn from_poly(p: Polynomial) -> RatFn {
        let den = Polynomial::one(p.ring());
        RatFn { num: p, den }
    }

    pub fn new(num: Polynomial, den: Polynomial) -> Result<RatFn, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if num.ring() != den.ring() {
            return Err(FieldError::ContextMismatch(num.ring().to_string(), den.ring().to_string()));
        }
        Ok(RatFn::reduce(num, den))
    }

    fn reduce(num: Polynomial, den: Polynomial) -> RatFn {
        if num.is_zero() {
            return RatFn::from_poly(num);
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_constant() {
                (num, den)
            } else {
                (
                    super::gcd::div_exact(&num, &g).expect("gcd divides numerator"),
                    super::gcd::div_exact(&den, &g).expect("gcd divides denominator"),
                )
            }
        };
        let lc = den.leading_coeff().inv().expect("nonzero denominator");
        RatFn { num: num.scale(&lc), den: den.scale(&lc) }
    }

    pub fn ring(&self) -> &RingRef {
        self.num.ring()
    }

    pub fn numer(&self) -> &Polynomial {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Value in the constant field, if the function is constant.
    pub fn as_constant(&self) -> Option<Scalar> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_negative(&self) -> bool {
        self.num.leading_coeff().is_negative()
    }

    pub fn inv(&self) -> Option<RatFn> {
        if self.is_zero() {
            return None;
        }
        Some(RatFn::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn add(&self, other: &RatFn) -> RatFn {
        if self.den == other.den {
            return RatFn::reduce(&self.num + &other.num, self.den.clone());
        }
        RatFn::reduce(&(&self.num * &other.den) + &(&other.num * &self.den), &self.den * &other.den)
    }

    pub fn neg(&self) -> RatFn {
        RatFn { num: -&self.num, den: self.den.clone() }
    }

    pub fn mul(&self, other: &RatFn) -> RatFn {
        if self.is_zero() || other.is_zero() {
            return RatFn::from_poly(Polynomial::zero(self.ring()));
        }
        RatFn::reduce(&self.num * &other.num, &self.den * &other.den)
    }

    /// Evaluation at a point of the constant field; `None` at a pole.
    pub fn eval(&self, point: &[Scalar]) -> Option<Scalar> {
        self.num.eval(point).div(&self.den.eval(point))
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{FieldSpec, Ring};
    use super::*;

    #[test]
    fn reduces_common_factors() {
        let r = Ring::new(FieldSpec::Rationals, &["t"]);
        let t = Polynomial::var(&r, 0);
        let one = Polynomial::one(&r);
        let num = &t.pow(2) - &one;
        let den = (&t - &one).scale(&Scalar::from_i64(&r.field, 2));
        let q = RatFn::new(num, den).unwrap();
        assert_eq!(q.numer(), &(&t + &one).scale(&Scalar::rational(1, 2)));
        assert!(q.denom().is_one());
    }

    #[test]
    fn field_operations() {
        let r = Ring::new(FieldSpec::Rationals, &["t"]);
        let t = Polynomial::var(&r, 0);
        let a = RatFn::new(Polynomial::one(&r), t.clone()).unwrap();
        let b = RatFn::from_poly(t.clone());
        assert!(a.mul(&b).is_one());
        assert!(a.add(&a.neg()).is_zero());
        assert_eq!(a.inv().unwrap(), b);
        assert!(RatFn::new(t, Polynomial::zero(&r)).is_err());
    }
}

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::{FieldError, FieldSpec, RingRef, Scalar};

/// Exponent vector, one entry per ring variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub SmallVec<[u32; 4]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize, e: u32) -> Self {
        let mut m = Monomial::one(nvars);
        m.0[i] = e;
        m
    }

    pub fn from_exps(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = SmallVec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Monomial(out))
    }
}

/// Graded lexicographic: total degree first, then exponents in declared order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial; terms are kept in ascending grlex order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: RingRef,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &RingRef) -> Self {
        Polynomial::constant(ring, Scalar::one(&ring.field))
    }

    pub fn constant(ring: &RingRef, c: Scalar) -> Self {
        Polynomial::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn from_i64(ring: &RingRef, c: i64) -> Self {
        Polynomial::constant(ring, Scalar::from_i64(&ring.field, c))
    }

    pub fn var(ring: &RingRef, i: usize) -> Self {
        Polynomial::monomial(ring, Monomial::var(ring.nvars(), i, 1), Scalar::one(&ring.field))
    }

    pub fn var_named(ring: &RingRef, name: &str) -> Option<Self> {
        ring.var_index(name).map(|i| Polynomial::var(ring, i))
    }

    pub fn monomial(ring: &RingRef, m: Monomial, c: Scalar) -> Self {
        Polynomial::from_terms(ring, std::iter::once((m, c)))
    }

    /// Sums the given terms; zero coefficients and squares of the odd variable vanish.
    pub fn from_terms<I>(ring: &RingRef, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut p = Polynomial::zero(ring);
        for (m, c) in terms {
            assert_eq!(m.0.len(), ring.nvars(), "monomial arity does not match {ring}");
            if ring.odd.is_some_and(|o| m.0[o] > 1) {
                continue;
            }
            p.add_term(m, c.lift(&ring.field));
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn field(&self) -> &FieldSpec {
        &self.ring.field
    }

    /// Terms in ascending grlex order; `.rev()` gives the printing order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&Monomial::one(self.ring.nvars()))
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| Scalar::zero(&self.ring.field))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Scalar {
        self.leading_term().map(|(_, c)| c.clone()).unwrap_or_else(|| Scalar::zero(&self.ring.field))
    }

    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Top-degree homogeneous component.
    pub fn leading_form(&self) -> Polynomial {
        match self.degree() {
            Some(d) => self.homogeneous_part(d),
            None => self.clone(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        let c = c.lift(&self.ring.field);
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * &c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        let c = c.lift(&self.ring.field);
        Polynomial::from_terms(&self.ring, self.terms.iter().map(|(n, a)| (n.mul(m), a * &c)))
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, FieldError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, FieldError> {
        self.check_ring(other)?;
        let mut out = Polynomial::zero(&self.ring);
        let odd = self.ring.odd;
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some(o) = odd {
                    if m1.0[o] + m2.0[o] > 1 {
                        continue;
                    }
                }
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    fn check_ring(&self, other: &Polynomial) -> Result<(), FieldError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(FieldError::ContextMismatch(self.ring.to_string(), other.ring.to_string()))
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Replaces variable `i` by `images[i]`; all images share one target ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.ring.nvars(), "substitution must cover every variable");
        let target = images.first().expect("ring has at least one variable").ring().clone();
        let mut powers: Vec<Vec<Polynomial>> = vec![vec![Polynomial::one(&target)]; images.len()];
        let mut out = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(&target, c.lift(&target.field));
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            out = &out + &term;
        }
        out
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.ring.nvars());
        let mut acc = Scalar::zero(&self.ring.field);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.0.iter()) {
                if e > 0 {
                    t = &t * &x.pow(e as i64).expect("nonnegative power");
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let f = &self.ring.field;
        Polynomial::from_terms(
            &self.ring,
            self.terms.iter().filter(|(m, _)| m.0[var] > 0).map(|(m, c)| {
                let mut n = m.clone();
                n.0[var] -= 1;
                (n, c * &Scalar::from_i64(f, m.0[var] as i64))
            }),
        )
    }

    /// Coefficients as a univariate polynomial in `var`, index = power.
    pub fn coeffs_in(&self, var: usize) -> Vec<Polynomial> {
        let mut out = vec![Polynomial::zero(&self.ring); self.degree_in(var) as usize + 1];
        if self.is_zero() {
            return out;
        }
        for (m, c) in &self.terms {
            let mut n = m.clone();
            let e = std::mem::replace(&mut n.0[var], 0) as usize;
            out[e].add_term(n, c.clone());
        }
        out
    }

    /// Inverse of [`Polynomial::coeffs_in`].
    pub fn from_coeffs_in(ring: &RingRef, var: usize, coeffs: &[Polynomial]) -> Polynomial {
        let mut out = Polynomial::zero(ring);
        for (e, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                let mut n = m.clone();
                n.0[var] += e as u32;
                out.add_term(n, a.clone());
            }
        }
        out
    }

    /// Over `Q`: `(content, primitive)` with integer coprime coefficients and
    /// positive leading coefficient, so that `self = content * primitive`.
    pub fn integer_primitive(&self) -> Option<(BigRational, Polynomial)> {
        if self.is_zero() {
            return None;
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            let r = c.as_rational()?;
            num_gcd = num_gcd.gcd(r.numer());
            den_lcm = den_lcm.lcm(r.denom());
        }
        let mut content = BigRational::new(num_gcd, den_lcm);
        if self.leading_coeff().as_rational()?.is_negative() {
            content = -content;
        }
        let inv = Scalar::Rational(content.recip());
        Some((content, self.scale(&inv)))
    }

    /// Re-expresses the polynomial in another ring with the same field.
    pub fn map_vars(&self, target: &RingRef, var_map: &[usize]) -> Polynomial {
        let images: Vec<Polynomial> = var_map.iter().map(|&i| Polynomial::var(target, i)).collect();
        self.substitute(&images)
    }
}

pub fn poly_mul(a: &Polynomial, b: &Polynomial) -> Result<Polynomial, FieldError> {
    a.try_mul(b)
}

fn mismatch(a: &Polynomial, b: &Polynomial) -> ! {
    panic!("polynomial ring mismatch: {} vs {}", a.ring, b.ring)
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).unwrap_or_else(|_| mismatch(self, rhs))
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).unwrap_or_else(|_| mismatch(self, rhs))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {}", self.ring)
    }
}

//! Exponent profiles of finitely generated subgroups of `Q(t₁, …, t_m)*`.
//!
//! Each generator is written as `±Π qᵢ^aᵢ · Π Pⱼ^bⱼ` over a pairwise coprime
//! base of positive integers `qᵢ` and primitive integer polynomials `Pⱼ`.
//! Coprime bases stand in for prime and irreducible factorizations: their
//! elements are multiplicatively independent, which is all rank needs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::linalg::{integer_row_reduce, RowReduction};
use super::{CharLabError, LatticeSubgroup};
use crate::field::{base_exponents, coprime_base, Polynomial, RingRef, Scalar};

/// Pairwise coprime integers `> 1` generating the same multiplicative
/// monoid content as the inputs.
pub fn integer_coprime_base(values: &[BigInt]) -> Vec<BigInt> {
    let mut work: Vec<BigInt> = values.iter().map(|v| v.abs()).filter(|v| *v > BigInt::one()).collect();
    work.sort();
    work.dedup();
    'refine: loop {
        for i in 0..work.len() {
            for j in i + 1..work.len() {
                let g = work[i].gcd(&work[j]);
                if g.is_one() {
                    continue;
                }
                let a = &work[i] / &g;
                let b = &work[j] / &g;
                work.remove(j);
                work.remove(i);
                work.extend([a, b, g].into_iter().filter(|v| *v > BigInt::one()));
                work.sort();
                work.dedup();
                continue 'refine;
            }
        }
        break;
    }
    work
}

fn integer_exponents(v: &BigInt, base: &[BigInt]) -> Vec<i64> {
    let mut rest = v.abs();
    base.iter()
        .map(|b| {
            let mut e = 0;
            while (&rest % b).is_zero() {
                rest /= b;
                e += 1;
            }
            e
        })
        .collect()
}

/// Numerator and denominator of a generator in `Q[t₁, …, t_m]`.
pub fn fraction(ring: &RingRef, g: &Scalar) -> (Polynomial, Polynomial) {
    match g {
        Scalar::Function(f) => (f.numer().clone(), f.denom().clone()),
        other => {
            let r = other.as_rational().expect("rational generator");
            let c = |v: &BigInt| Polynomial::constant(ring, Scalar::Rational(BigRational::from_integer(v.clone())));
            (c(r.numer()), c(r.denom()))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileRow {
    pub negative: bool,
    pub int_exps: Vec<i64>,
    pub poly_exps: Vec<i64>,
}

impl ProfileRow {
    fn free_part(&self) -> Vec<BigInt> {
        self.int_exps.iter().chain(&self.poly_exps).map(|&e| BigInt::from(e)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    pub int_base: Vec<BigInt>,
    pub poly_base: Vec<Polynomial>,
    pub rows: Vec<ProfileRow>,
}

impl Profile {
    pub fn build(lambda: &LatticeSubgroup) -> Result<Profile, CharLabError> {
        let ring = lambda.poly_ring();
        let mut units = Vec::new();
        let mut parts = Vec::new();
        for g in lambda.generators() {
            let (num, den) = fraction(&ring, g);
            let (cn, pn) = num.integer_primitive().ok_or_else(|| CharLabError::UnsupportedField(g.field().to_string()))?;
            let (cd, pd) = den.integer_primitive().ok_or_else(|| CharLabError::UnsupportedField(g.field().to_string()))?;
            units.push(cn / cd);
            parts.push((pn, pd));
        }
        let all: Vec<Polynomial> = parts.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
        let poly_base: Vec<Polynomial> = coprime_base(&all)
            .into_iter()
            .map(|b| b.integer_primitive().expect("nonzero").1)
            .collect();
        let mut rows = Vec::new();
        for (unit, (pn, pd)) in units.iter_mut().zip(&parts) {
            let (sn, en) = base_exponents(pn, &poly_base).expect("coprime base covers the numerator");
            let (sd, ed) = base_exponents(pd, &poly_base).expect("coprime base covers the denominator");
            let extra = sn.div(&sd).expect("nonzero").as_rational().cloned().expect("rational leftover");
            *unit = &*unit * &extra;
            let poly_exps = en.iter().zip(&ed).map(|(&a, &b)| a as i64 - b as i64).collect();
            rows.push((unit.is_negative(), poly_exps));
        }
        let ints: Vec<BigInt> = units.iter().flat_map(|u| [u.numer().clone(), u.denom().clone()]).collect();
        let int_base = integer_coprime_base(&ints);
        let rows = rows
            .into_iter()
            .zip(&units)
            .map(|((negative, poly_exps), u)| {
                let n = integer_exponents(u.numer(), &int_base);
                let d = integer_exponents(u.denom(), &int_base);
                ProfileRow { negative, int_exps: n.iter().zip(&d).map(|(a, b)| a - b).collect(), poly_exps }
            })
            .collect();
        Ok(Profile { int_base, poly_base, rows })
    }

    pub fn ncols(&self) -> usize {
        self.int_base.len() + self.poly_base.len()
    }

    /// Row reduction of the exponent matrix with the sign column dropped.
    pub fn reduction(&self) -> RowReduction {
        let a: Vec<Vec<BigInt>> = self.rows.iter().map(ProfileRow::free_part).collect();
        integer_row_reduce(&a, self.ncols())
    }

    /// `dim Λ ⊗ Q`.
    pub fn rank(&self) -> usize {
        self.reduction().rank
    }

    /// Whether some product of generators with trivial free part has odd sign.
    pub fn contains_minus_one(&self) -> bool {
        let red = self.reduction();
        red.u[red.rank..].iter().any(|k| {
            let parity: BigInt = k.iter().zip(&self.rows).filter(|(_, r)| r.negative).map(|(c, _)| c.clone()).sum();
            parity.is_odd()
        })
    }
}

//! Normalized generators of the relation ideals
//! `I_n(Λ) = {P : P(λ₁ⁿ, …, λ_rⁿ) = 0}` for rank one, and for rank two over
//! one function-field variable.

use std::fmt;

use super::lattice::fraction;
use super::{CharLabError, LatticeSubgroup};
use crate::field::{
    div_exact, gcd, resultant, squarefree_part, FieldSpec, Monomial, Polynomial, Ring, RingRef, Scalar,
};

/// `P_n`: constant term `1`, nonnegative exponents, vanishing at `(λᵢⁿ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationGen {
    pub poly: Polynomial,
    pub n: u32,
}

impl RelationGen {
    /// Exponent vectors of the support, in ascending monomial order.
    pub fn support(&self) -> Vec<Vec<u32>> {
        self.poly.terms().map(|(m, _)| m.exps().to_vec()).collect()
    }

    /// Constant term one; exponents are nonnegative by construction.
    pub fn is_normalized(&self) -> bool {
        self.poly.coefficient(&Monomial::one(self.poly.ring().nvars())).is_one()
    }
}

impl fmt::Display for RelationGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

fn relation_ring(r: usize) -> RingRef {
    match r {
        1 => Ring::new(FieldSpec::Rationals, &["x"]),
        _ => {
            let names: Vec<String> = (1..=r).map(|i| format!("x{i}")).collect();
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            Ring::new(FieldSpec::Rationals, &refs)
        }
    }
}

fn normalize(p: &Polynomial, n: u32) -> Result<RelationGen, CharLabError> {
    let c0 = p.constant_term();
    let Some(inv) = c0.inv() else {
        return Err(CharLabError::ScopeExceeded(format!("relation {p} has zero constant term")));
    };
    Ok(RelationGen { poly: p.scale(&inv), n })
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `var`.
fn content_in(p: &Polynomial, var: usize) -> Polynomial {
    p.coeffs_in(var)
        .into_iter()
        .filter(|c| !c.is_zero())
        .reduce(|a, b| gcd(&a, &b))
        .unwrap_or_else(|| Polynomial::zero(p.ring()))
}

pub fn relation_gen(lambda: &LatticeSubgroup, n: u32) -> Result<RelationGen, CharLabError> {
    if n == 0 {
        return Err(CharLabError::ScopeExceeded("n must be positive".into()));
    }
    let gens = lambda.generators();
    let r = gens.len();
    let rank = lambda.rank();
    if rank != r {
        return Err(CharLabError::NotABasis { rank, count: r });
    }
    let m = lambda.field().function_vars().len();
    match r {
        1 => {
            let Some(c) = gens[0].as_constant() else { return Err(CharLabError::NoRelation) };
            let ring = relation_ring(1);
            let cn = c.pow(n as i64).expect("nonzero");
            let x = Polynomial::var(&ring, 0);
            normalize(&(&Polynomial::constant(&ring, cn) - &x), n)
        }
        2 if m == 1 => eliminate_pair(lambda, n),
        2 if m == 0 => Err(CharLabError::ScopeExceeded("two constant generators give a non-principal ideal".into())),
        _ => Err(CharLabError::ScopeExceeded(format!("rank {r} over {m} variables"))),
    }
}

/// Eliminates `t` from `xᵢ·denᵢ(t)ⁿ − numᵢ(t)ⁿ` and keeps the factor that
/// vanishes at `(λ₁ⁿ, λ₂ⁿ)`.
fn eliminate_pair(lambda: &LatticeSubgroup, n: u32) -> Result<RelationGen, CharLabError> {
    let base = lambda.poly_ring();
    let big = Ring::new(FieldSpec::Rationals, &["x1", "x2", &base.vars[0]]);
    let target = relation_ring(2);
    let mut eqs = Vec::new();
    for (i, g) in lambda.generators().iter().enumerate() {
        let (num, den) = fraction(&base, g);
        let num = num.pow(n).map_vars(&big, &[2]);
        let den = den.pow(n).map_vars(&big, &[2]);
        eqs.push(&(&Polynomial::var(&big, i) * &den) - &num);
    }
    let res = resultant(&eqs[0], &eqs[1], 2)?;
    if res.is_zero() {
        return Err(CharLabError::EliminationFailed("resultant vanishes identically".into()));
    }
    let images = [Polynomial::var(&target, 0), Polynomial::var(&target, 1), Polynomial::zero(&target)];
    let s = squarefree_part(&res.substitute(&images));
    let c2 = content_in(&s, 1);
    let s1 = div_exact(&s, &c2).expect("content divides");
    let c1 = content_in(&s1, 0);
    let core = div_exact(&s1, &c1).expect("content divides");
    let point: Vec<Scalar> = lambda.generators().iter().map(|g| g.pow(n as i64).expect("nonzero")).collect();
    let chosen = [core, c2, c1]
        .into_iter()
        .filter(|p| !p.is_constant())
        .find(|p| p.eval(&point).is_zero())
        .ok_or_else(|| CharLabError::EliminationFailed("no factor of the resultant vanishes at the point".into()))?;
    normalize(&chosen, n)
}

/// Evaluates `P` at `(λ₁ⁿ, …, λ_rⁿ)`.
pub fn eval_relation(rel: &RelationGen, lambda: &LatticeSubgroup) -> Scalar {
    let point: Vec<Scalar> =
        lambda.generators().iter().map(|g| g.pow(rel.n as i64).expect("nonzero")).collect();
    rel.poly.eval(&point)
}

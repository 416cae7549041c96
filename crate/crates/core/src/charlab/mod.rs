//! Finitely generated subgroups `Λ ⊂ Q(t₁, …, t_m)*`: rank, transcendence
//! degree, good/bad classification, relation ideals `I_n(Λ)` with their
//! Newton polygons, and the linearity verdicts built on them.

mod lattice;
pub mod linalg;
mod newton;
mod relation;
mod trdeg;
mod verdict;

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::field::text::Parser;
use crate::field::{FieldError, FieldSpec, Ring, RingRef, Scalar};

pub use lattice::{integer_coprime_base, Profile, ProfileRow};
pub use newton::{convex_hull, newton_data, newton_scaling_check, NewtonData, NewtonReport};
pub use relation::{eval_relation, relation_gen, RelationGen};
pub use trdeg::{trdeg_report, TrdegReport, TRDEG_ATTEMPTS};
pub use verdict::{verdict, Verdict, VerdictResult, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharLabError {
    #[error("generator is zero")]
    ZeroGenerator,
    #[error("unsupported coefficient field {0}: generators must lie in Q(t1, ..., tm)")]
    UnsupportedField(String),
    #[error("every Jacobian sample point hit a pole ({0} attempts)")]
    SamplingFailed(usize),
    #[error("the subgroup is good")]
    NotBad,
    #[error("generators are not a basis of the free part (rank {rank}, {count} generators)")]
    NotABasis { rank: usize, count: usize },
    #[error("no polynomial relation holds among the generators")]
    NoRelation,
    #[error("outside the supported scope: {0}")]
    ScopeExceeded(String),
    #[error("elimination failed: {0}")]
    EliminationFailed(String),
    #[error("Newton polygon scaling fails: {0}")]
    ScalingViolated(String),
    #[error("unsupported descriptor: {0}")]
    UnsupportedDescriptor(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Seed for the Jacobian sample points behind [`LatticeSubgroup::trdeg`].
pub const DEFAULT_TRDEG_SEED: u64 = 0x7d3e;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Class {
    Good,
    Bad,
}

/// The subgroup of `K*` generated by finitely many nonzero elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeSubgroup {
    field: FieldSpec,
    gens: Vec<Scalar>,
}

impl LatticeSubgroup {
    pub fn new(field: &FieldSpec, gens: Vec<Scalar>) -> Result<LatticeSubgroup, CharLabError> {
        if field.base() != &FieldSpec::Rationals {
            return Err(CharLabError::UnsupportedField(field.to_string()));
        }
        let gens: Vec<Scalar> = gens.into_iter().map(|g| g.lift(field)).collect();
        if gens.iter().any(Scalar::is_zero) {
            return Err(CharLabError::ZeroGenerator);
        }
        Ok(LatticeSubgroup { field: field.clone(), gens })
    }

    /// Parses each generator as an element of `field`, e.g. `"(t + 1)/t"`.
    pub fn parse(field: &FieldSpec, gens: &[&str]) -> Result<LatticeSubgroup, CharLabError> {
        let ring = Ring::new(field.clone(), &[]);
        let mut out = Vec::with_capacity(gens.len());
        for g in gens {
            let mut p = Parser::new(&ring, g);
            let value = p.expr()?;
            p.finish()?;
            out.push(value.constant_term());
        }
        LatticeSubgroup::new(field, out)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn generators(&self) -> &[Scalar] {
        &self.gens
    }

    /// `Q[t₁, …, t_m]`, holding numerators and denominators.
    pub fn poly_ring(&self) -> RingRef {
        match &self.field {
            FieldSpec::RationalFunctions(r) => r.clone(),
            other => Ring::new(other.clone(), &[]),
        }
    }

    pub fn profile(&self) -> Profile {
        Profile::build(self).expect("generators over Q")
    }

    /// `dim Λ ⊗ Q`.
    pub fn rank(&self) -> usize {
        self.profile().rank()
    }

    pub fn trdeg(&self) -> Result<usize, CharLabError> {
        Ok(trdeg_report(self, DEFAULT_TRDEG_SEED)?.trdeg)
    }

    /// Number of `n` with a primitive `n`-th root of unity in `Λ`: `2` when
    /// `−1 ∈ Λ`, else `1`.
    pub fn d(&self) -> usize {
        if self.profile().contains_minus_one() { 2 } else { 1 }
    }

    /// `Card Λ ∩ μ_∞`; the only roots of unity in `Q(t₁, …, t_m)` are `±1`.
    pub fn torsion(&self) -> usize {
        self.d()
    }

    /// Elements whose classes form a basis of `Λ / torsion`.
    pub fn lattice_basis(&self) -> Vec<Scalar> {
        let red = self.profile().reduction();
        red.u[..red.rank].iter().map(|row| self.power_product(row)).collect()
    }

    /// `Π λᵢ^{kᵢ}`.
    pub fn power_product(&self, exps: &[BigInt]) -> Scalar {
        let one = Scalar::one(&self.field);
        self.gens.iter().zip(exps).fold(one, |acc, (g, k)| {
            let k = i64::try_from(k).expect("exponent fits in i64");
            &acc * &g.pow(k).expect("nonzero generator")
        })
    }

    fn subgroup(&self, gens: Vec<Scalar>) -> LatticeSubgroup {
        LatticeSubgroup { field: self.field.clone(), gens }
    }

    /// First subset of the lattice basis, by size then position, whose rank
    /// exceeds its transcendence degree.
    fn first_bad_subset(&self) -> Result<Option<LatticeSubgroup>, CharLabError> {
        let basis = self.lattice_basis();
        let r = basis.len();
        for size in 1..=r {
            for subset in subsets(r, size) {
                let sub = self.subgroup(subset.iter().map(|&i| basis[i].clone()).collect());
                let t = sub.trdeg()?;
                assert!(t <= size, "trdeg {t} exceeds rank {size}");
                if t < size {
                    return Ok(Some(sub));
                }
            }
        }
        Ok(None)
    }

    pub fn classify(&self) -> Result<ClassReport, CharLabError> {
        let rank = self.rank();
        let trdeg = self.trdeg()?;
        assert!(trdeg <= rank, "trdeg {trdeg} exceeds rank {rank}");
        let witness = self.first_bad_subset()?;
        let class = if witness.is_some() || trdeg < rank { Class::Bad } else { Class::Good };
        Ok(ClassReport { class, rank, trdeg, witness })
    }

    /// A bad subgroup of rank `1 + trdeg` whose relation support spans its
    /// whole exponent lattice.
    pub fn minimally_bad(&self) -> Result<MinimallyBad, CharLabError> {
        let Some(sub) = self.first_bad_subset()? else { return Err(CharLabError::NotBad) };
        let r = sub.gens.len();
        let rel = match relation_gen(&sub, 1) {
            Ok(rel) => rel,
            Err(CharLabError::ScopeExceeded(_)) => {
                return Ok(MinimallyBad { subgroup: sub, support: None, support_index: None })
            }
            Err(e) => return Err(e),
        };
        let mut support: Vec<Vec<u32>> = rel.support();
        support.sort_by_key(|a| (a.iter().sum::<u32>(), std::cmp::Reverse(a.clone())));
        let vectors: Vec<Vec<BigInt>> =
            support.iter().map(|a| a.iter().map(|&e| BigInt::from(e)).collect()).collect();
        let index = linalg::lattice_index(&vectors, r);
        let gens = vectors.iter().filter(|a| a.iter().any(|e| *e != BigInt::from(0))).map(|a| sub.power_product(a)).collect();
        Ok(MinimallyBad { subgroup: self.subgroup(gens), support: Some(support), support_index: index })
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

impl fmt::Display for LatticeSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassReport {
    pub class: Class,
    pub rank: usize,
    pub trdeg: usize,
    /// A subgroup generated by part of a lattice basis with rank above trdeg.
    pub witness: Option<LatticeSubgroup>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimallyBad {
    pub subgroup: LatticeSubgroup,
    /// Exponent support of the degree-one relation, when it was computed.
    pub support: Option<Vec<Vec<u32>>>,
    /// Index of the lattice spanned by that support.
    pub support_index: Option<BigInt>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(field: &FieldSpec, gens: &[&str]) -> LatticeSubgroup {
        LatticeSubgroup::parse(field, gens).unwrap()
    }

    #[test]
    fn ranks() {
        let q = FieldSpec::Rationals;
        assert_eq!(lam(&q, &["4", "2"]).rank(), 1);
        assert_eq!(lam(&q, &["2", "3"]).rank(), 2);
        assert_eq!(lam(&q, &["6", "4", "9"]).rank(), 2);
        assert_eq!(lam(&q, &["-1"]).rank(), 0);
        assert_eq!(lam(&FieldSpec::qt(), &["t", "t + 1"]).rank(), 2);
        assert_eq!(lam(&FieldSpec::qt(), &["t^2 + t", "t", "t + 1"]).rank(), 2);
    }

    #[test]
    fn roots_of_unity() {
        let q = FieldSpec::Rationals;
        assert_eq!(lam(&q, &["-1", "2"]).d(), 2);
        assert_eq!(lam(&q, &["2"]).d(), 1);
        assert_eq!(lam(&FieldSpec::qt(), &["t"]).d(), 1);
        assert_eq!(lam(&q, &["-2", "2"]).d(), 2);
        assert_eq!(lam(&q, &["-4", "2"]).d(), 2);
        assert_eq!(lam(&q, &["-4", "16"]).d(), 1);
        assert_eq!(lam(&q, &["-8", "4"]).d(), 1);
        assert_eq!(lam(&q, &["-8", "2"]).d(), 2);
    }

    #[test]
    fn classification() {
        let q = FieldSpec::Rationals;
        let qt = FieldSpec::qt();
        assert_eq!(lam(&q, &["2"]).classify().unwrap().class, Class::Bad);
        assert_eq!(lam(&qt, &["t", "t + 1"]).classify().unwrap().class, Class::Bad);
        assert_eq!(lam(&qt, &["t"]).classify().unwrap().class, Class::Good);
        assert_eq!(lam(&qt, &["-1"]).classify().unwrap().class, Class::Good);
        let r = lam(&qt, &["t^2", "-t^3"]).classify().unwrap();
        assert_eq!((r.class, r.rank, r.trdeg), (Class::Good, 1, 1));
    }

    #[test]
    fn minimally_bad_subgroups() {
        let q = FieldSpec::Rationals;
        let qt = FieldSpec::qt();
        let m = lam(&q, &["2", "3"]).minimally_bad().unwrap();
        assert_eq!(m.subgroup.to_string(), "<2>");
        let m = lam(&qt, &["t", "t + 1"]).minimally_bad().unwrap();
        assert_eq!(m.subgroup.to_string(), "<t, t + 1>");
        assert_eq!(m.support_index, Some(BigInt::from(1)));
        assert_eq!(lam(&qt, &["t"]).minimally_bad(), Err(CharLabError::NotBad));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(LatticeSubgroup::parse(&FieldSpec::Rationals, &["0"]), Err(CharLabError::ZeroGenerator));
        assert!(matches!(
            LatticeSubgroup::parse(&FieldSpec::prime(5).unwrap(), &["2"]),
            Err(CharLabError::UnsupportedField(_))
        ));
    }
}

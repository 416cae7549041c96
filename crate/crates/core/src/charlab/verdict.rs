//! Linearity verdicts for `Aut_S 𝔸²_K` from the eigenvalue groups `Λ_δ` of
//! the line stabilizers `S_δ`.
//!
//! Rules, in order:
//! - finite `K`: the whole automorphism group is linear over `K(t)`;
//! - some `Λ_δ` bad: not linear, even over a ring;
//! - every `Λ_δ` good and torsion-free: linear over a field;
//! - every `Λ_δ` good with bounded torsion, characteristic zero: linear over
//!   a field extension.
//!
//! Unbounded `d(Λ_δ)` only arises over infinite algebraic extensions of
//! `F_p`, which no descriptor here reaches.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use super::{CharLabError, Class, LatticeSubgroup};
use crate::field::{FieldSpec, Scalar};
use crate::planeaut::{closure, Direction, Mat2, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VerdictResult {
    LinearOverField,
    NonlinearEvenOverRing,
    Unknown,
}

/// Summary of one `Λ_δ`. For `Λ_δ = K*` the numbers describe the finitely
/// generated witness `⟨2⟩ ⊂ K*`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub delta: String,
    pub subgroup: String,
    pub rank: usize,
    pub trdeg: usize,
    pub torsion: usize,
    pub d: usize,
    pub class: Class,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub result: VerdictResult,
    pub rule: String,
    pub witnesses: Vec<Witness>,
}

const RULE_FINITE: &str = "finite coefficient field: Aut A^2_K is linear over K(t)";
const RULE_BAD: &str = "nonlinearity criterion: some eigenvalue group is bad";
const RULE_TORSION_FREE: &str = "first linearity criterion: every eigenvalue group is good and torsion-free";
const RULE_BOUNDED: &str =
    "second linearity criterion: every eigenvalue group is good with bounded torsion, characteristic zero";

enum Lambda {
    /// All of `K*`.
    Full,
    Generated(LatticeSubgroup),
    /// A finite group of roots of unity of the given order.
    Finite(usize),
}

fn summarize(delta: &Direction, lam: &Lambda, field: &FieldSpec) -> Result<Witness, CharLabError> {
    let delta = delta.to_string();
    match lam {
        Lambda::Full => {
            let two = LatticeSubgroup::new(field, vec![Scalar::from_i64(field, 2)])?;
            let c = two.classify()?;
            Ok(Witness {
                delta,
                subgroup: format!("K* contains {two}"),
                rank: c.rank,
                trdeg: c.trdeg,
                torsion: two.torsion(),
                d: two.d(),
                class: c.class,
            })
        }
        Lambda::Generated(g) => {
            let c = g.classify()?;
            Ok(Witness {
                delta,
                subgroup: g.to_string(),
                rank: c.rank,
                trdeg: c.trdeg,
                torsion: g.torsion(),
                d: g.d(),
                class: c.class,
            })
        }
        Lambda::Finite(order) => Ok(Witness {
            delta,
            subgroup: if *order == 1 { "<1>".into() } else { format!("mu_{order}") },
            rank: 0,
            trdeg: 0,
            torsion: *order,
            d: (1..=*order).filter(|k| order % k == 0).count(),
            class: Class::Good,
        }),
    }
}

fn decide(witnesses: Vec<Witness>) -> Verdict {
    let (result, rule) = if witnesses.iter().any(|w| w.class == Class::Bad) {
        (VerdictResult::NonlinearEvenOverRing, RULE_BAD)
    } else if witnesses.iter().all(|w| w.torsion == 1) {
        (VerdictResult::LinearOverField, RULE_TORSION_FREE)
    } else {
        (VerdictResult::LinearOverField, RULE_BOUNDED)
    };
    Verdict { result, rule: rule.into(), witnesses }
}

fn unknown(rule: impl Into<String>) -> Verdict {
    Verdict { result: VerdictResult::Unknown, rule: rule.into(), witnesses: Vec::new() }
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer().sqrt(), q.denom().sqrt());
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| BigRational::new(n, d))
}

/// An isotropic line of `αx² + βxy + γy²` over `Q`, if any.
fn isotropic_direction(field: &FieldSpec, alpha: &Scalar, beta: &Scalar, gamma: &Scalar) -> Option<Direction> {
    if alpha.is_zero() {
        return Some(Direction::delta_inf(field));
    }
    // q(1, b) = α + βb + γb²
    let b = if gamma.is_zero() {
        (-alpha).div(beta)?
    } else {
        let (a, bq, g) = (alpha.as_rational()?, beta.as_rational()?, gamma.as_rational()?);
        let disc = bq * bq - BigRational::from_integer(BigInt::from(4)) * a * g;
        let root = rational_sqrt(&disc)?;
        Scalar::Rational((root - bq) / (BigRational::from_integer(BigInt::from(2)) * g))
    };
    Some(Direction::affine(b))
}

/// Eigenvalues `±1` of elements of a finite group, grouped by fixed line.
fn finite_group_lambdas(field: &FieldSpec, elements: &[Mat2]) -> Vec<(Direction, Lambda)> {
    let one = Scalar::one(field);
    let minus = -&one;
    let mut generic = vec![one.clone()];
    let mut lines: Vec<(Direction, Vec<Scalar>)> = Vec::new();
    for g in elements {
        if let Some(c) = g.as_scalar() {
            if !generic.contains(&c) {
                generic.push(c);
            }
            continue;
        }
        for lam in [&one, &minus] {
            let shifted = Mat2::new(
                g.entries()[0] - lam,
                g.entries()[1].clone(),
                g.entries()[2].clone(),
                g.entries()[3] - lam,
            );
            if !shifted.det().is_zero() {
                continue;
            }
            // kernel of [[p, q], [r, s]]: (q; -p) or (s; -r)
            let [p, q, r, s] = shifted.entries();
            let (a, b) = if !p.is_zero() || !q.is_zero() { (-q, p.clone()) } else { (-s, r.clone()) };
            let Some(dir) = Direction::new(&a, &b) else { continue };
            let other = g.det().div(lam).expect("nonzero");
            let entry = match lines.iter_mut().find(|(d, _)| *d == dir) {
                Some(e) => e,
                None => {
                    lines.push((dir, Vec::new()));
                    lines.last_mut().expect("just pushed")
                }
            };
            for v in [lam.clone(), other] {
                if !entry.1.contains(&v) {
                    entry.1.push(v);
                }
            }
        }
    }
    let order = |vals: &[Scalar]| if vals.iter().chain(&generic).any(|v| *v == minus) { 2 } else { 1 };
    let mut out = vec![(Direction::delta0(field), Lambda::Finite(order(&[])))];
    for (dir, vals) in lines {
        let lam = Lambda::Finite(order(&vals));
        if dir.is_delta0() {
            out[0].1 = lam;
        } else {
            out.push((dir, lam));
        }
    }
    out
}

/// Verdict for `Aut_S 𝔸²_K` with `S` given by a descriptor over `field`.
pub fn verdict(field: &FieldSpec, s: &Subgroup) -> Result<Verdict, CharLabError> {
    if field.is_finite() {
        return Ok(Verdict { result: VerdictResult::LinearOverField, rule: RULE_FINITE.into(), witnesses: Vec::new() });
    }
    if field.characteristic() != 0 {
        return Err(CharLabError::UnsupportedDescriptor(format!("{s} over {field}")));
    }
    let d0 = Direction::delta0(field);
    let lambdas: Vec<(Direction, Lambda)> = match s {
        Subgroup::Trivial | Subgroup::Unipotent => vec![(d0, Lambda::Finite(1))],
        Subgroup::PlusMinusId => vec![(d0, Lambda::Finite(2))],
        Subgroup::Borel | Subgroup::Sl2 | Subgroup::Gl2 => vec![(d0, Lambda::Full)],
        Subgroup::So { alpha, beta, gamma } => {
            let coeffs = [alpha, beta, gamma];
            if coeffs.iter().any(|c| c.as_rational().is_none()) {
                return Ok(unknown("isotropy of a form with non-constant coefficients is not decided"));
            }
            match isotropic_direction(field, alpha, beta, gamma) {
                Some(dir) => vec![(dir, Lambda::Full)],
                None => vec![(d0, Lambda::Finite(2))],
            }
        }
        Subgroup::DiagonalCyclic(lam) => {
            let g = LatticeSubgroup::new(field, vec![lam.clone()])?;
            let minus_one = g.d() == 2;
            vec![
                (d0, Lambda::Generated(g.clone())),
                (Direction::delta_inf(field), Lambda::Generated(g)),
                (Direction::affine(Scalar::one(field)), Lambda::Finite(if minus_one { 2 } else { 1 })),
            ]
        }
        Subgroup::FiniteList(gens) => match closure(gens) {
            Some(elements) => finite_group_lambdas(field, &elements),
            None => return Ok(unknown("the generated group is too large to enumerate")),
        },
        Subgroup::QuadraticIntegers(_) => {
            return Ok(unknown("eigenvalue groups need unit groups of quadratic orders, which are not computed"))
        }
    };
    let witnesses = lambdas.iter().map(|(d, l)| summarize(d, l, field)).collect::<Result<Vec<_>, _>>()?;
    Ok(decide(witnesses))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(field: &FieldSpec, text: &str) -> Verdict {
        verdict(field, &Subgroup::parse(field, text).unwrap()).unwrap()
    }

    #[test]
    fn catalog_over_q() {
        let q = FieldSpec::Rationals;
        let v = run(&q, "SL2");
        assert_eq!(v.result, VerdictResult::NonlinearEvenOverRing);
        assert_eq!((v.witnesses[0].rank, v.witnesses[0].trdeg), (1, 0));
        let v = run(&q, "SO(x^2 + y^2)");
        assert_eq!(v.result, VerdictResult::LinearOverField);
        assert!(v.witnesses.iter().all(|w| w.torsion <= 4));
        assert_eq!(run(&q, "SO(x*y)").result, VerdictResult::NonlinearEvenOverRing);
        assert_eq!(run(&q, "SO(x^2 - 4*y^2)").result, VerdictResult::NonlinearEvenOverRing);
        assert_eq!(run(&q, "SO(x^2 - 2*y^2)").result, VerdictResult::LinearOverField);
        assert_eq!(run(&q, "U").rule, RULE_TORSION_FREE);
        assert_eq!(run(&q, "pm").rule, RULE_BOUNDED);
        assert_eq!(run(&q, "cyclic(2)").result, VerdictResult::NonlinearEvenOverRing);
        assert_eq!(run(&q, "SL2(Z[sqrt(2)])").result, VerdictResult::Unknown);
    }

    #[test]
    fn catalog_over_q_t() {
        let qt = FieldSpec::qt();
        assert_eq!(run(&qt, "cyclic(t)").rule, RULE_TORSION_FREE);
        assert_eq!(run(&qt, "cyclic(-t)").result, VerdictResult::LinearOverField);
        assert_eq!(run(&qt, "B").result, VerdictResult::NonlinearEvenOverRing);
    }

    #[test]
    fn finite_groups() {
        let q = FieldSpec::Rationals;
        let v = run(&q, "finite([[0, -1], [1, 0]])");
        assert_eq!(v.result, VerdictResult::LinearOverField);
        assert_eq!(v.rule, RULE_BOUNDED);
        let v = run(&q, "finite([[-1, 0], [0, 1]])");
        assert_eq!(v.result, VerdictResult::LinearOverField);
        assert!(v.witnesses.len() >= 2);
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(run(&f5, "SL2").rule, RULE_FINITE);
    }
}

//! Subgroups `S ⊂ GL(2, K)` used as linear parts of mixed words.

use std::collections::HashSet;
use std::fmt;

use num_traits::Signed;

use crate::field::text::Parser;
use crate::field::{FieldSpec, Polynomial, Ring, Scalar};

use super::{letter_ring, plane_ring, Direction, Letter, Mat2, PlaneAut, PlaneAutError};

/// Cap on the size of groups generated by [`Subgroup::FiniteList`].
pub const FINITE_CLOSURE_CAP: usize = 10_000;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Subgroup {
    Trivial,
    /// `{±id}`.
    PlusMinusId,
    /// `U(K)`: lower unitriangular matrices `[[1, 0], [a, 1]]`.
    Unipotent,
    /// `B(K)`: lower triangular matrices of determinant one.
    Borel,
    Sl2,
    Gl2,
    /// Special orthogonal group of the binary form `αx² + βxy + γy²`.
    So { alpha: Scalar, beta: Scalar, gamma: Scalar },
    /// Group generated by finitely many matrices.
    FiniteList(Vec<Mat2>),
    /// `⟨diag(λ⁻¹, λ)⟩`.
    DiagonalCyclic(Scalar),
    /// `SL(2, O)` for the ring of integers `O` of `Q(√d)`; only its points
    /// over `K` are testable.
    QuadraticIntegers(i64),
}

fn is_integer(s: &Scalar) -> bool {
    s.as_rational().is_some_and(|r| r.is_integer())
}

fn height(s: &Scalar) -> Option<num_bigint::BigInt> {
    s.as_rational().map(|r| r.numer().abs().max(r.denom().clone()))
}

/// Whether a rational number is a square; `None` outside `Q`.
pub(crate) fn is_rational_square(s: &Scalar) -> Option<bool> {
    let r = s.as_rational()?;
    if r.is_negative() {
        return Some(false);
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    Some(&sn * &sn == *n && &sd * &sd == *d)
}

impl Subgroup {
    /// Membership; `None` when it cannot be decided.
    pub fn contains(&self, g: &Mat2) -> Option<bool> {
        let det_one = g.det().is_one();
        match self {
            Subgroup::Trivial => Some(g.is_identity()),
            Subgroup::PlusMinusId => Some(g.is_identity() || g.neg().is_identity()),
            Subgroup::Unipotent => Some(g.a.is_one() && g.d.is_one() && g.b.is_zero()),
            Subgroup::Borel => Some(det_one && g.b.is_zero()),
            Subgroup::Sl2 => Some(det_one),
            Subgroup::Gl2 => Some(!g.det().is_zero()),
            Subgroup::So { .. } => {
                let q = self.quadratic_form().expect("SO has a form");
                let aut = PlaneAut::linear(g);
                Some(det_one && q.substitute(&[aut.p().clone(), aut.q().clone()]) == q)
            }
            Subgroup::FiniteList(gens) => closure(gens).map(|els| els.contains(g)),
            Subgroup::DiagonalCyclic(l) => {
                if !(g.b.is_zero() && g.c.is_zero() && det_one) {
                    return Some(false);
                }
                let mut pos = Scalar::one(&l.field());
                let mut neg = pos.clone();
                let li = l.inv()?;
                let target = height(&g.d);
                for _ in 0..=256 {
                    if pos == g.d || neg == g.d {
                        return Some(true);
                    }
                    pos = &pos * l;
                    neg = &neg * &li;
                    if pos.is_one() {
                        return Some(false);
                    }
                    // rational powers of λ ≠ ±1 grow in height without bound
                    if let (Some(t), Some(hp), Some(hn)) = (&target, height(&pos), height(&neg)) {
                        if hp > *t && hn > *t {
                            return Some(false);
                        }
                    }
                }
                None
            }
            Subgroup::QuadraticIntegers(_) => {
                g.a.as_rational()?;
                Some(det_one && g.entries().iter().all(|e| is_integer(e)))
            }
        }
    }

    /// `αx² + βxy + γy²` for `SO` descriptors.
    pub fn quadratic_form(&self) -> Option<Polynomial> {
        let Subgroup::So { alpha, beta, gamma } = self else {
            return None;
        };
        let ring = plane_ring(&alpha.field());
        let (x, y) = (Polynomial::var(&ring, 0), Polynomial::var(&ring, 1));
        Some(&(&x.pow(2).scale(alpha) + &(&x * &y).scale(beta)) + &y.pow(2).scale(gamma))
    }

    /// Whether the form of an `SO` descriptor has a nontrivial zero over `Q`.
    pub fn is_isotropic(&self) -> Option<bool> {
        let Subgroup::So { alpha, beta, gamma } = self else {
            return None;
        };
        let four = Scalar::from_i64(&alpha.field(), 4);
        let disc = &(beta * beta) - &(&four * &(alpha * gamma));
        is_rational_square(&disc)
    }

    /// Parses `trivial`, `pm`, `U`, `B`, `SL2`, `GL2`, `SO(<form>)`,
    /// `cyclic(<λ>)`, `finite(<matrix>, ...)` or `SL2(Z[sqrt(<d>)])`.
    pub fn parse(field: &FieldSpec, text: &str) -> Result<Subgroup, PlaneAutError> {
        let ring = plane_ring(field);
        let mut p = Parser::new(&ring, text);
        let start = p.pos();
        let name = p.identifier().unwrap_or("");
        let sg = match name {
            "trivial" => Subgroup::Trivial,
            "pm" => Subgroup::PlusMinusId,
            "U" => Subgroup::Unipotent,
            "B" => Subgroup::Borel,
            "GL2" => Subgroup::Gl2,
            "SL2" if p.peek() == Some('(') => {
                p.expect('(')?;
                if !(p.eat_word("Z") && p.eat('[') && p.eat_word("sqrt") && p.eat('(')) {
                    return Err(p.error::<()>("expected Z[sqrt(d)]").unwrap_err().into());
                }
                let neg = p.eat('-');
                let d = p.integer().ok_or_else(|| p.error::<()>("expected an integer").unwrap_err())?;
                p.expect(')')?;
                p.expect(']')?;
                p.expect(')')?;
                let d: i64 = d.try_into().map_err(|_| p.error::<()>("integer too large").unwrap_err())?;
                Subgroup::QuadraticIntegers(if neg { -d } else { d })
            }
            "SL2" => Subgroup::Sl2,
            "SO" => {
                p.expect('(')?;
                let at = p.pos();
                let q = p.expr()?;
                p.expect(')')?;
                if q.is_zero() || q.terms().any(|(m, _)| m.degree() != 2) {
                    return Err(crate::field::FieldError::Parse { pos: at, msg: "expected a binary quadratic form".into() }.into());
                }
                let c = |e: [u32; 2]| q.coefficient(&crate::field::Monomial::from_exps(&e));
                Subgroup::So { alpha: c([2, 0]), beta: c([1, 1]), gamma: c([0, 2]) }
            }
            "cyclic" => {
                p.expect('(')?;
                let at = p.pos();
                let l = p.expr_in(&Ring::new(field.clone(), &[]))?;
                p.expect(')')?;
                match l.as_constant().filter(|c| !c.is_zero()) {
                    Some(c) => Subgroup::DiagonalCyclic(c),
                    None => {
                        return Err(crate::field::FieldError::Parse { pos: at, msg: "expected a nonzero constant".into() }.into())
                    }
                }
            }
            "finite" => {
                p.expect('(')?;
                let mut gens = vec![Mat2::parse_with(&mut p, field)?];
                while p.eat(',') {
                    gens.push(Mat2::parse_with(&mut p, field)?);
                }
                p.expect(')')?;
                if gens.iter().any(|g| g.det().is_zero()) {
                    return Err(PlaneAutError::Singular);
                }
                Subgroup::FiniteList(gens)
            }
            _ => {
                p.reset(start);
                return Err(p.error::<()>(format!("unknown subgroup '{name}'")).unwrap_err().into());
            }
        };
        p.finish()?;
        Ok(sg)
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subgroup::Trivial => write!(f, "trivial"),
            Subgroup::PlusMinusId => write!(f, "pm"),
            Subgroup::Unipotent => write!(f, "U"),
            Subgroup::Borel => write!(f, "B"),
            Subgroup::Sl2 => write!(f, "SL2"),
            Subgroup::Gl2 => write!(f, "GL2"),
            Subgroup::So { .. } => write!(f, "SO({})", self.quadratic_form().expect("SO has a form")),
            Subgroup::FiniteList(gens) => {
                write!(f, "finite(")?;
                for (i, g) in gens.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{g}")?;
                }
                write!(f, ")")
            }
            Subgroup::DiagonalCyclic(l) => {
                write!(f, "cyclic({})", Polynomial::constant(&Ring::new(l.field(), &[]), l.clone()))
            }
            Subgroup::QuadraticIntegers(d) => write!(f, "SL2(Z[sqrt({d})])"),
        }
    }
}

/// All elements of the group generated by `gens`, or `None` past the cap.
pub fn closure(gens: &[Mat2]) -> Option<Vec<Mat2>> {
    let field = gens.first().map(Mat2::field).unwrap_or(FieldSpec::Rationals);
    let id = Mat2::identity(&field);
    let mut seen: HashSet<Mat2> = HashSet::from([id.clone()]);
    let mut order = vec![id];
    let mut frontier = 0;
    while frontier < order.len() {
        let g = order[frontier].clone();
        frontier += 1;
        for h in gens {
            let gh = g.mul(h);
            if seen.insert(gh.clone()) {
                if order.len() >= FINITE_CLOSURE_CAP {
                    return None;
                }
                order.push(gh);
            }
        }
    }
    Some(order)
}

/// Evidence that a linear map is not in the core of the amalgam.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CoreWitness {
    /// `g = id` lies in every conjugate.
    Identity,
    /// A scalar `g ≠ id` moves the letter `τ = (x, y + x²)` under conjugation.
    Conjugation { tau: PlaneAut, conjugate: PlaneAut },
    /// `g` does not fix the line `direction`.
    MovesDirection { direction: Direction, image: Direction },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoreReport {
    pub g: Mat2,
    pub in_subgroup: Option<bool>,
    pub witness: CoreWitness,
}

/// For each candidate, a witness that it is not in the core (or that it is the identity).
pub fn core_probe(subgroup: &Subgroup, candidates: &[Mat2]) -> Vec<CoreReport> {
    candidates
        .iter()
        .map(|g| {
            let field = g.field();
            let witness = if g.is_identity() {
                CoreWitness::Identity
            } else if g.as_scalar().is_some() {
                let lr = letter_ring(&field);
                let t2 = Polynomial::var(&lr, 0).pow(2);
                let tau = Letter::new(Direction::delta0(&field), t2).expect("valid letter");
                let conj = tau.conjugate(g);
                CoreWitness::Conjugation { tau: tau.to_aut(), conjugate: conj.to_aut() }
            } else {
                let mut k = 1;
                let mut candidates = vec![Direction::delta0(&field), Direction::delta_inf(&field)];
                loop {
                    if let Some(d) = candidates.iter().find(|d| d.image(g) != **d) {
                        break CoreWitness::MovesDirection { direction: d.clone(), image: d.image(g) };
                    }
                    candidates = vec![Direction::affine(Scalar::from_i64(&field, k))];
                    k += 1;
                }
            };
            CoreReport { g: g.clone(), in_subgroup: subgroup.contains(g), witness }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn membership() {
        let g = Mat2::from_i64(&q(), [[1, 0], [3, 1]]);
        assert_eq!(Subgroup::Unipotent.contains(&g), Some(true));
        assert_eq!(Subgroup::Borel.contains(&g), Some(true));
        assert_eq!(Subgroup::Unipotent.contains(&Mat2::from_i64(&q(), [[1, 1], [0, 1]])), Some(false));
        let rot = Mat2::from_i64(&q(), [[0, -1], [1, 0]]);
        let so = Subgroup::parse(&q(), "SO(x^2 + y^2)").unwrap();
        assert_eq!(so.contains(&rot), Some(true));
        assert_eq!(so.contains(&g), Some(false));
        assert_eq!(so.is_isotropic(), Some(false));
        assert_eq!(Subgroup::parse(&q(), "SO(x*y)").unwrap().is_isotropic(), Some(true));
        let fin = Subgroup::FiniteList(vec![rot.clone()]);
        assert_eq!(closure(std::slice::from_ref(&rot)).unwrap().len(), 4);
        assert_eq!(fin.contains(&rot.neg()), Some(true));
        let cyc = Subgroup::DiagonalCyclic(Scalar::from_i64(&q(), 2));
        assert_eq!(cyc.contains(&Mat2::diag(Scalar::from_i64(&q(), 8), Scalar::rational(1, 8))), Some(true));
        assert_eq!(cyc.contains(&Mat2::diag(Scalar::from_i64(&q(), 3), Scalar::rational(1, 3))), Some(false));
    }

    #[test]
    fn parse_print_round_trip() {
        for text in ["trivial", "pm", "U", "B", "SL2", "GL2", "SO(x^2 + y^2)", "cyclic(3/2)", "SL2(Z[sqrt(-1)])", "finite([[0, -1], [1, 0]])"] {
            assert_eq!(Subgroup::parse(&q(), text).unwrap().to_string(), text);
        }
        assert!(Subgroup::parse(&q(), "SO(x + y)").is_err());
        assert!(Subgroup::parse(&q(), "SP4").is_err());
    }

    #[test]
    fn core_witnesses() {
        let reports = core_probe(
            &Subgroup::Sl2,
            &[
                Mat2::identity(&q()),
                Mat2::identity(&q()).neg(),
                Mat2::diag(Scalar::from_i64(&q(), 2), Scalar::rational(1, 2)),
            ],
        );
        assert_eq!(reports[0].witness, CoreWitness::Identity);
        match &reports[1].witness {
            CoreWitness::Conjugation { conjugate, .. } => {
                assert_eq!(conjugate, &PlaneAut::parse(&q(), "(x, y - x^2)").unwrap());
            }
            other => panic!("unexpected {other:?}"),
        }
        match &reports[2].witness {
            CoreWitness::MovesDirection { direction, .. } => assert_eq!(direction.to_string(), "(1;1)"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(reports.iter().all(|r| r.in_subgroup == Some(true)));
    }
}

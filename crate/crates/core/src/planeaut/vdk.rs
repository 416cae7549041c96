//! Factorization into affine and triangular maps by degree reduction.

use std::fmt;

use crate::field::{FieldSpec, Polynomial, Scalar};

use super::{plane_ring, Mat2, PlaneAut, PlaneAutError};

/// `v -> m·v + t`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Affine {
    pub m: Mat2,
    pub t: (Scalar, Scalar),
}

impl Affine {
    pub fn linear(m: Mat2) -> Affine {
        let f = m.field();
        Affine { m, t: (Scalar::zero(&f), Scalar::zero(&f)) }
    }

    pub fn identity(field: &FieldSpec) -> Affine {
        Affine::linear(Mat2::identity(field))
    }

    pub fn is_identity(&self) -> bool {
        self.m.is_identity() && self.t.0.is_zero() && self.t.1.is_zero()
    }

    /// Whether the map is also triangular, i.e. its first coordinate ignores `y`.
    pub fn is_triangular(&self) -> bool {
        self.m.is_lower_triangular()
    }

    pub fn to_aut(&self) -> PlaneAut {
        let ring = plane_ring(&self.m.field());
        let (p, q) = self.m.images(&ring);
        let p = &p + &Polynomial::constant(&ring, self.t.0.clone());
        let q = &q + &Polynomial::constant(&ring, self.t.1.clone());
        PlaneAut::new(p, q).expect("plane ring")
    }

    /// Reads an affine map off a map of degree at most one.
    pub fn from_aut(phi: &PlaneAut) -> Option<Affine> {
        if phi.degree() > 1 {
            return None;
        }
        let m = phi.linear_part();
        Some(Affine { m, t: (phi.p().constant_term(), phi.q().constant_term()) })
    }

    pub fn compose(&self, other: &Affine) -> Affine {
        let (u, v) = self.m.apply(&other.t);
        Affine { m: self.m.mul(&other.m), t: (&u + &self.t.0, &v + &self.t.1) }
    }

    pub fn inverse(&self) -> Option<Affine> {
        let mi = self.m.inverse()?;
        let (u, v) = mi.apply(&self.t);
        Some(Affine { m: mi, t: (-&u, -&v) })
    }
}

/// Triangular map `(αx + β, γy + g(x))` with `αγ ≠ 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Elementary {
    pub alpha: Scalar,
    pub beta: Scalar,
    pub gamma: Scalar,
    /// Polynomial in `x` only, in the plane ring.
    pub g: Polynomial,
}

impl Elementary {
    /// `(x, y + g(x))`.
    pub fn shear(g: Polynomial) -> Elementary {
        let f = g.field().clone();
        Elementary { alpha: Scalar::one(&f), beta: Scalar::zero(&f), gamma: Scalar::one(&f), g }
    }

    pub fn degree(&self) -> u32 {
        self.g.degree().unwrap_or(0).max(1)
    }

    pub fn to_aut(&self) -> PlaneAut {
        let ring = self.g.ring();
        let (x, y) = (Polynomial::var(ring, 0), Polynomial::var(ring, 1));
        let p = &x.scale(&self.alpha) + &Polynomial::constant(ring, self.beta.clone());
        let q = &y.scale(&self.gamma) + &self.g;
        PlaneAut::new(p, q).expect("plane ring")
    }

    /// Recognizes `(αx + β, γy + g(x))`.
    pub fn from_aut(phi: &PlaneAut) -> Option<Elementary> {
        let (p, q) = (phi.p(), phi.q());
        if p.degree().unwrap_or(0) > 1 || p.uses_var(1) || q.degree_in(1) != 1 {
            return None;
        }
        let lin = phi.linear_part();
        let gamma = lin.d.clone();
        let ring = phi.ring();
        let g = q - &Polynomial::var(ring, 1).scale(&gamma);
        if g.uses_var(1) || lin.a.is_zero() || gamma.is_zero() {
            return None;
        }
        Some(Elementary { alpha: lin.a, beta: p.constant_term(), gamma, g })
    }

    pub fn inverse(&self) -> Elementary {
        // x' = (x - β)/α, y' = (y - g(x'))/γ
        let ring = self.g.ring();
        let ai = self.alpha.inv().expect("α ≠ 0");
        let gi = self.gamma.inv().expect("γ ≠ 0");
        let x = Polynomial::var(ring, 0);
        let xp = (&x - &Polynomial::constant(ring, self.beta.clone())).scale(&ai);
        let g = self.g.substitute(&[xp, Polynomial::var(ring, 1)]).scale(&gi);
        Elementary { alpha: ai.clone(), beta: -&(&self.beta * &ai), gamma: gi, g: -&g }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Factor {
    Affine(Affine),
    Elementary(Elementary),
}

impl Factor {
    pub fn to_aut(&self) -> PlaneAut {
        match self {
            Factor::Affine(a) => a.to_aut(),
            Factor::Elementary(e) => e.to_aut(),
        }
    }

    pub fn inverse(&self) -> Factor {
        match self {
            Factor::Affine(a) => Factor::Affine(a.inverse().expect("factors are invertible")),
            Factor::Elementary(e) => Factor::Elementary(e.inverse()),
        }
    }

    /// Triangular maps of degree one become affine.
    fn simplify(self) -> Factor {
        match self {
            Factor::Elementary(e) if e.g.degree().unwrap_or(0) <= 1 => {
                Factor::Affine(Affine::from_aut(&e.to_aut()).expect("degree one"))
            }
            other => other,
        }
    }

    fn is_identity(&self) -> bool {
        matches!(self, Factor::Affine(a) if a.is_identity())
    }

    /// `self ∘ other` when both lie in a common factor group.
    fn combine(&self, other: &Factor) -> Option<Factor> {
        match (self, other) {
            (Factor::Affine(a), Factor::Affine(b)) => return Some(Factor::Affine(a.compose(b))),
            (Factor::Elementary(_), Factor::Elementary(_)) => {}
            (Factor::Affine(a), Factor::Elementary(_)) if a.is_triangular() => {}
            (Factor::Elementary(_), Factor::Affine(b)) if b.is_triangular() => {}
            _ => return None,
        }
        Elementary::from_aut(&self.to_aut().compose(&other.to_aut())).map(Factor::Elementary)
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Affine(a) => write!(f, "affine {}", a.to_aut()),
            Factor::Elementary(e) => write!(f, "elem {}", e.to_aut()),
        }
    }
}

/// `φ = F₁ ∘ F₂ ∘ … ∘ F_k`, alternating between affine maps outside the
/// triangular subgroup and triangular maps of degree at least two.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VdkFactorization {
    pub factors: Vec<Factor>,
}

impl VdkFactorization {
    /// Merges neighbours from a common factor group and drops identities.
    pub fn normalized(factors: impl IntoIterator<Item = Factor>, field: &FieldSpec) -> VdkFactorization {
        fn push(stack: &mut Vec<Factor>, f: Factor) {
            let f = f.simplify();
            if f.is_identity() {
                return;
            }
            if let Some(c) = stack.last().and_then(|top| top.combine(&f)) {
                stack.pop();
                push(stack, c);
                return;
            }
            stack.push(f);
        }
        let mut stack = Vec::new();
        for f in factors {
            push(&mut stack, f);
        }
        if stack.is_empty() {
            stack.push(Factor::Affine(Affine::identity(field)));
        }
        VdkFactorization { factors: stack }
    }

    pub fn recompose(&self, field: &FieldSpec) -> PlaneAut {
        self.factors.iter().fold(PlaneAut::identity(field), |acc, f| acc.compose(&f.to_aut()))
    }

    pub fn inverse(&self) -> VdkFactorization {
        let field = self.factors[0].to_aut().field().clone();
        VdkFactorization::normalized(self.factors.iter().rev().map(Factor::inverse), &field)
    }

    /// Degrees of the triangular factors.
    pub fn elementary_degrees(&self) -> Vec<u32> {
        self.factors
            .iter()
            .filter_map(|f| match f {
                Factor::Elementary(e) => Some(e.degree()),
                Factor::Affine(_) => None,
            })
            .collect()
    }
}

impl fmt::Display for VdkFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " o ")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

fn stuck(phi: &PlaneAut) -> PlaneAutError {
    PlaneAutError::NotAnAutomorphism(format!("no degree reduction applies to {phi}"))
}

/// If `lead(a) = c·lead(b)^k` for an integer `k`, returns `(c, k)`.
fn power_ratio(a: &Polynomial, b: &Polynomial) -> Option<(Scalar, u32)> {
    let (da, db) = (a.degree()?, b.degree()?);
    if db == 0 || da % db != 0 {
        return None;
    }
    let k = da / db;
    let la = a.leading_form();
    let lbk = b.leading_form().pow(k);
    let c = la.leading_coeff().div(&lbk.leading_coeff())?;
    (la == lbk.scale(&c)).then_some((c, k))
}

/// Degree-reduction factorization. Fails with `NotAnAutomorphism` when the
/// Jacobian is not a nonzero constant or no reduction step applies.
pub fn factor_vdk(phi: &PlaneAut) -> Result<VdkFactorization, PlaneAutError> {
    phi.check_jacobian()?;
    let field = phi.field().clone();
    let ring = phi.ring().clone();
    let x = Polynomial::var(&ring, 0);
    let swap = Factor::Affine(Affine::linear(Mat2::swap(&field)));
    let mut cur = phi.clone();
    let mut steps: Vec<Factor> = Vec::new();
    while cur.degree() > 1 {
        let (p, q) = (cur.p().clone(), cur.q().clone());
        let (dp, dq) = (p.degree().unwrap_or(0), q.degree().unwrap_or(0));
        let y_step = if dq >= dp { power_ratio(&q, &p) } else { None };
        if let Some((c, k)) = y_step {
            // (x, y - c x^k) ∘ φ lowers deg Q; record its inverse.
            cur = PlaneAut::new(p.clone(), &q - &p.pow(k).scale(&c))?;
            steps.push(Factor::Elementary(Elementary::shear(x.pow(k).scale(&c))));
            continue;
        }
        let x_step = if dp >= dq { power_ratio(&p, &q) } else { None };
        if let Some((c, k)) = x_step {
            cur = PlaneAut::new(&p - &q.pow(k).scale(&c), q.clone())?;
            steps.push(swap.clone());
            steps.push(Factor::Elementary(Elementary::shear(x.pow(k).scale(&c))));
            steps.push(swap.clone());
            continue;
        }
        return Err(stuck(&cur));
    }
    let last = Affine::from_aut(&cur).expect("degree at most one");
    if last.m.det().is_zero() {
        return Err(PlaneAutError::NotAnAutomorphism(format!("affine remainder {cur} is singular")));
    }
    steps.push(Factor::Affine(last));
    Ok(VdkFactorization::normalized(steps, &field))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn aut(text: &str) -> PlaneAut {
        PlaneAut::parse(&FieldSpec::Rationals, text).unwrap()
    }

    #[test]
    fn swap_then_shear() {
        let phi = aut("(y, x + y^2)");
        let fac = factor_vdk(&phi).unwrap();
        assert_eq!(fac.to_string(), "elem (x, x^2 + y) o affine (y, x)");
        assert_eq!(fac.recompose(&FieldSpec::Rationals), phi);
    }

    #[test]
    fn affine_input_is_one_factor() {
        let phi = aut("(2*x + y + 1, x - 3)");
        let fac = factor_vdk(&phi).unwrap();
        assert_eq!(fac.factors.len(), 1);
        assert!(matches!(fac.factors[0], Factor::Affine(_)));
        let id = factor_vdk(&PlaneAut::identity(&FieldSpec::Rationals)).unwrap();
        assert_eq!(id.factors.len(), 1);
    }

    #[test]
    fn rejects_non_automorphisms() {
        assert!(matches!(factor_vdk(&aut("(x, x*y)")), Err(PlaneAutError::NotAnAutomorphism(_))));
        assert!(matches!(factor_vdk(&aut("(x + y, x + y)")), Err(PlaneAutError::NotAnAutomorphism(_))));
    }

    #[test]
    fn degrees_multiply() {
        let phi = aut("(x, y + x^2)").compose(&aut("(x + y^3, y)")).compose(&aut("(x, y - 2*x^2)"));
        let fac = factor_vdk(&phi).unwrap();
        assert_eq!(fac.elementary_degrees(), vec![2, 3, 2]);
        assert_eq!(phi.degree(), 12);
        assert_eq!(fac.recompose(&FieldSpec::Rationals), phi);
    }

    #[test]
    fn triangular_affine_merges_into_shear() {
        let phi = aut("(x, y + x^2)").compose(&aut("(x + 1, 2*y + x)")).compose(&aut("(x, y + x^3)"));
        let fac = factor_vdk(&phi).unwrap();
        assert_eq!(fac.elementary_degrees(), vec![3]);
        assert_eq!(fac.recompose(&FieldSpec::Rationals), phi);
    }

    #[test]
    fn over_a_function_field() {
        let k = FieldSpec::qt();
        let phi = PlaneAut::parse(&k, "(x + t*y^2, y)").unwrap().compose(&PlaneAut::parse(&k, "(t*y, x/t)").unwrap());
        let fac = factor_vdk(&phi).unwrap();
        assert_eq!(fac.recompose(&k), phi);
        assert!(phi.compose(&phi.invert().unwrap()).is_identity());
    }
}

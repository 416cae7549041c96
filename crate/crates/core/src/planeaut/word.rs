//! Normal forms `s ∘ u₁ ∘ … ∘ u_m` with `s` linear and each `u_i` a
//! translation `(x, y) + f(b x − a y)·(a, b)` along a direction `(a; b)`.

use std::fmt;

use crate::field::text::Parser;
use crate::field::{FieldError, FieldSpec, Monomial, Polynomial, Ring, RingRef};

use super::{plane_ring, Direction, Mat2, PlaneAut, PlaneAutError, Subgroup};

/// Univariate ring holding letter polynomials. The variable is `t`, or `s`
/// when the coefficient field already uses `t`.
pub fn letter_ring(field: &FieldSpec) -> RingRef {
    let name = if field.function_vars().iter().any(|v| v == "t") { "s" } else { "t" };
    Ring::new(field.clone(), &[name])
}

/// One translation `(x, y) + f(b x − a y)·(a, b)` with `f ∈ t²K[t]`, `f ≠ 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Letter {
    pub dir: Direction,
    pub f: Polynomial,
}

fn check_letter_poly(f: &Polynomial) -> Result<(), PlaneAutError> {
    if f.ring().nvars() != 1 {
        return Err(PlaneAutError::InvalidLetter(format!("{f} is not univariate")));
    }
    if f.is_zero() {
        return Err(PlaneAutError::InvalidLetter("zero polynomial".into()));
    }
    if f.terms().any(|(m, _)| m.degree() < 2) {
        return Err(PlaneAutError::InvalidLetter(format!("{f} has constant or linear terms")));
    }
    Ok(())
}

impl Letter {
    pub fn new(dir: Direction, f: Polynomial) -> Result<Letter, PlaneAutError> {
        check_letter_poly(&f)?;
        Ok(Letter { dir, f })
    }

    pub fn degree(&self) -> u32 {
        self.f.degree().unwrap_or(0)
    }

    pub fn to_aut(&self) -> PlaneAut {
        let field = self.dir.field();
        let ring = plane_ring(&field);
        let fl = self.f.substitute(&[self.dir.linear_form(&ring)]);
        let p = &Polynomial::var(&ring, 0) + &fl.scale(self.dir.a());
        let q = &Polynomial::var(&ring, 1) + &fl.scale(self.dir.b());
        PlaneAut::new(p, q).expect("plane ring")
    }

    /// `g⁻¹ ∘ u ∘ g`. With `g⁻¹(a, b) = c·(a', b')` canonical, this is the
    /// letter along `(a'; b')` with `f'(t) = c·f(det(g)·c·t)`.
    pub fn conjugate(&self, g: &Mat2) -> Letter {
        let gi = g.inverse().expect("invertible");
        let (u, v) = gi.apply(&(self.dir.a().clone(), self.dir.b().clone()));
        let (dir, c) = Direction::from_vector(&u, &v).expect("nonzero image");
        let ring = self.f.ring();
        let t = Polynomial::var(ring, 0);
        let f = self.f.substitute(&[t.scale(&(&g.det() * &c))]).scale(&c);
        Letter { dir, f }
    }

    pub fn inverse(&self) -> Letter {
        Letter { dir: self.dir.clone(), f: -&self.f }
    }
}

/// `s ∘ u₁ ∘ … ∘ u_m`, reduced: neighbouring letters have distinct directions.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MixedWord {
    pub s: Mat2,
    pub letters: Vec<Letter>,
}

impl MixedWord {
    pub fn identity(field: &FieldSpec) -> MixedWord {
        MixedWord { s: Mat2::identity(field), letters: Vec::new() }
    }

    pub fn linear(s: Mat2) -> MixedWord {
        MixedWord { s, letters: Vec::new() }
    }

    /// Builds a word and reduces it.
    pub fn new(s: Mat2, letters: impl IntoIterator<Item = Letter>) -> MixedWord {
        MixedWord { s, letters: reduce(letters) }
    }

    pub fn single(dir: Direction, f: Polynomial) -> Result<MixedWord, PlaneAutError> {
        let field = dir.field();
        Ok(MixedWord::new(Mat2::identity(&field), [Letter::new(dir, f)?]))
    }

    pub fn field(&self) -> FieldSpec {
        self.s.field()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty() && self.s.is_identity()
    }

    /// Product of letter degrees; equals the degree of the automorphism.
    pub fn degree(&self) -> u32 {
        self.letters.iter().map(Letter::degree).product()
    }

    pub fn to_aut(&self) -> PlaneAut {
        self.letters.iter().fold(PlaneAut::linear(&self.s), |acc, l| acc.compose(&l.to_aut()))
    }

    /// `w₁ · w₂ = s₁s₂ · (s₂⁻¹ U₁ s₂) · U₂`.
    pub fn mul(&self, other: &MixedWord) -> MixedWord {
        let conj = self.letters.iter().map(|l| l.conjugate(&other.s));
        MixedWord::new(self.s.mul(&other.s), conj.chain(other.letters.iter().cloned()))
    }

    /// `(s U)⁻¹ = s⁻¹ · (s U⁻¹ s⁻¹)`.
    pub fn inverse(&self) -> MixedWord {
        let si = self.s.inverse().expect("invertible linear part");
        let letters: Vec<Letter> = self.letters.iter().rev().map(|l| l.inverse().conjugate(&si)).collect();
        MixedWord::new(si, letters)
    }

    /// `γ · w · γ⁻¹`.
    pub fn conjugate_by(&self, gamma: &Mat2) -> MixedWord {
        let gi = gamma.inverse().expect("invertible");
        MixedWord::new(
            gamma.mul(&self.s).mul(&gi),
            self.letters.iter().map(|l| l.conjugate(&gi)).collect::<Vec<_>>(),
        )
    }

    /// Parses `[[a,b],[c,d]] [(d0, t^2), ((1;1), -2*t^2)]`; the matrix prefix is optional.
    pub fn parse(field: &FieldSpec, text: &str) -> Result<MixedWord, PlaneAutError> {
        let lr = letter_ring(field);
        let mut p = Parser::new(&lr, text);
        let w = MixedWord::parse_with(&mut p, field)?;
        p.finish()?;
        Ok(w)
    }

    pub fn parse_with(p: &mut Parser<'_>, field: &FieldSpec) -> Result<MixedWord, PlaneAutError> {
        let lr = letter_ring(field);
        let start = p.pos();
        let mut s = Mat2::identity(field);
        p.expect('[')?;
        if p.peek() == Some('[') {
            p.reset(start);
            s = Mat2::parse_with(p, field)?;
            p.expect('[')?;
        }
        let mut letters = Vec::new();
        if !p.eat(']') {
            loop {
                p.expect('(')?;
                let dir = Direction::parse_with(p, field)?;
                p.expect(',')?;
                let at = p.pos();
                let f = p.expr_in(&lr)?;
                p.expect(')')?;
                let letter = Letter::new(dir, f).map_err(|e| FieldError::Parse { pos: at, msg: e.to_string() })?;
                letters.push(letter);
                if p.eat(']') {
                    break;
                }
                p.expect(',')?;
            }
        }
        if s.det().is_zero() {
            return Err(PlaneAutError::Singular);
        }
        Ok(MixedWord::new(s, letters))
    }
}

fn reduce(letters: impl IntoIterator<Item = Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        match out.last_mut() {
            Some(top) if top.dir == l.dir => {
                let f = &top.f + &l.f;
                if f.is_zero() {
                    out.pop();
                } else {
                    top.f = f;
                }
            }
            _ => out.push(l),
        }
    }
    out
}

impl fmt::Display for MixedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.s.is_identity() {
            write!(f, "{} ", self.s)?;
        }
        write!(f, "[")?;
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({}, {})", l.dir, l.f)?;
        }
        write!(f, "]")
    }
}

fn not_aut(msg: impl Into<String>) -> PlaneAutError {
    PlaneAutError::NotAnAutomorphism(msg.into())
}

/// Peels letters off `s⁻¹ ∘ φ` from the outside in. Requires `φ(0) = 0`
/// and, when `subgroup` decides membership, `dφ(0) ∈ subgroup`.
pub fn to_mixed_word(phi: &PlaneAut, subgroup: &Subgroup) -> Result<MixedWord, PlaneAutError> {
    if !phi.fixes_origin() {
        return Err(PlaneAutError::OriginNotFixed);
    }
    let field = phi.field().clone();
    let s = phi.linear_part();
    let si = s.inverse().ok_or(PlaneAutError::Singular)?;
    if subgroup.contains(&s) == Some(false) {
        return Err(PlaneAutError::LinearPartNotInS(s.to_string(), subgroup.to_string()));
    }
    let lr = letter_ring(&field);
    let mut psi = PlaneAut::linear(&si).compose(phi);
    let mut letters = Vec::new();
    while psi.degree() > 1 {
        let d = psi.degree();
        let (pd, qd) = (psi.p().homogeneous_part(d), psi.q().homogeneous_part(d));
        let dir = if pd.is_zero() {
            Direction::delta0(&field)
        } else {
            let r = qd.leading_coeff().div(&pd.leading_coeff()).expect("nonzero");
            if qd != pd.scale(&r) {
                return Err(not_aut(format!("top-degree part of {psi} is not along a line")));
            }
            Direction::affine(r)
        };
        let l = &psi.p().scale(dir.b()) - &psi.q().scale(dir.a());
        let dl = match l.degree() {
            Some(dl) if dl > 0 => dl,
            _ => return Err(not_aut(format!("{psi} collapses a line"))),
        };
        let mut m = if dir.is_delta0() { psi.q().clone() } else { psi.p().clone() };
        let mut f = Polynomial::zero(&lr);
        let l_top = l.leading_form();
        while m.degree().unwrap_or(0) > dl {
            let dm = m.degree().unwrap_or(0);
            if dm % dl != 0 {
                return Err(not_aut(format!("degree {dm} is not a multiple of {dl}")));
            }
            let k = dm / dl;
            let lk_top = l_top.pow(k);
            let m_top = m.homogeneous_part(dm);
            let c = m_top.leading_coeff().div(&lk_top.leading_coeff()).expect("nonzero");
            if k < 2 || m_top != lk_top.scale(&c) {
                return Err(not_aut(format!("{m} is not a polynomial in {l}")));
            }
            m = &m - &l.pow(k).scale(&c);
            f = &f + &Polynomial::monomial(&lr, Monomial::var(1, 0, k), c);
        }
        if f.is_zero() {
            return Err(not_aut(format!("no letter can be peeled from {psi}")));
        }
        let fl = f.substitute(std::slice::from_ref(&l));
        psi = PlaneAut::new(psi.p() - &fl.scale(dir.a()), psi.q() - &fl.scale(dir.b()))?;
        letters.push(Letter { dir, f });
    }
    if psi != PlaneAut::identity(&field) {
        return Err(not_aut(format!("remainder {psi} is not the identity")));
    }
    Ok(MixedWord::new(s, letters))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Scalar;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn aut(text: &str) -> PlaneAut {
        PlaneAut::parse(&q(), text).unwrap()
    }

    fn word(text: &str) -> MixedWord {
        MixedWord::parse(&q(), text).unwrap()
    }

    #[test]
    fn letters_as_maps() {
        assert_eq!(word("[(d0, t^2)]").to_aut(), aut("(x, y + x^2)"));
        assert_eq!(word("[(dinf, t^2)]").to_aut(), aut("(x + y^2, y)"));
        assert_eq!(word("[((1;1), t^2)]").to_aut(), aut("(x + (x - y)^2, y + (x - y)^2)"));
    }

    #[test]
    fn peel_product_of_two_shears() {
        let u = aut("(x, y + x^2)").compose(&aut("(x + y^2, y)"));
        let w = to_mixed_word(&u, &Subgroup::Trivial).unwrap();
        assert_eq!(w.to_string(), "[(d0, t^2), (dinf, t^2)]");
        assert_eq!(w.degree(), 4);
        assert_eq!(w.to_aut(), u);
        let single = to_mixed_word(&aut("(x, y + x^2)"), &Subgroup::Trivial).unwrap();
        assert_eq!(single.to_string(), "[(d0, t^2)]");
    }

    #[test]
    fn torus_conjugation_scales_by_cube() {
        let lambda = Scalar::from_i64(&q(), 3);
        let gamma = Mat2::diag(lambda.inv().unwrap(), lambda.clone());
        let w = word("[(d0, t^2)]").conjugate_by(&gamma);
        assert_eq!(w.letters[0].f.to_string(), "27*t^2");
        assert_eq!(w.to_aut(), PlaneAut::linear(&gamma).compose(&aut("(x, y + x^2)")).compose(&PlaneAut::linear(&gamma.inverse().unwrap())));
    }

    #[test]
    fn errors() {
        assert_eq!(to_mixed_word(&aut("(x + 1, y)"), &Subgroup::Sl2), Err(PlaneAutError::OriginNotFixed));
        assert!(matches!(
            to_mixed_word(&aut("(2*x, y)"), &Subgroup::Sl2),
            Err(PlaneAutError::LinearPartNotInS(_, _))
        ));
        assert!(matches!(to_mixed_word(&aut("(x, x*y + y)"), &Subgroup::Gl2), Err(PlaneAutError::NotAnAutomorphism(_))));
    }

    #[test]
    fn multiplication_and_cancellation() {
        let a = word("[(d0, t^2)]");
        let b = word("[(d0, -t^2)]");
        assert!(a.mul(&b).is_identity());
        let c = word("[(dinf, t^3)]");
        assert_eq!(a.mul(&c).len(), 2);
        let w = word("[[0, 1], [-1, 2]] [(d0, t^2), ((1;1), -2*t^3), (dinf, t^2)]");
        assert!(w.mul(&w.inverse()).is_identity());
        assert_eq!(w.mul(&c).to_aut(), w.to_aut().compose(&c.to_aut()));
        assert_eq!(c.mul(&w).to_aut(), c.to_aut().compose(&w.to_aut()));
    }

    #[test]
    fn parse_print_round_trip() {
        for text in ["[]", "[(d0, t^2)]", "[[2, 0], [0, 1/2]] [((1;-1/3), t^3 - t^2), (d0, 5*t^2)]"] {
            assert_eq!(word(text).to_string(), text);
        }
        assert!(MixedWord::parse(&q(), "[(d0, t)]").is_err());
        assert!(MixedWord::parse(&q(), "[(d0, t^2 + 1)]").is_err());
    }
}

use std::fmt;

use crate::field::text::Parser;
use crate::field::{FieldError, FieldSpec, Polynomial, Ring, RingRef, Scalar};

use super::Mat2;

/// A line through the origin of `K²`, stored in canonical projective
/// coordinates: `(1; b)` when the first coordinate is nonzero, else `(0; 1)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Direction {
    a: Scalar,
    b: Scalar,
}

impl Direction {
    /// Canonical line through `(a, b)`, together with the factor `c` such
    /// that `(a, b) = c·(a', b')`.
    pub fn from_vector(a: &Scalar, b: &Scalar) -> Option<(Direction, Scalar)> {
        if !a.is_zero() {
            let f = a.field();
            let dir = Direction { a: Scalar::one(&f), b: b.div(a)? };
            Some((dir, a.clone()))
        } else if !b.is_zero() {
            let f = b.field();
            Some((Direction { a: Scalar::zero(&f), b: Scalar::one(&f) }, b.clone()))
        } else {
            None
        }
    }

    pub fn new(a: &Scalar, b: &Scalar) -> Option<Direction> {
        Direction::from_vector(a, b).map(|(d, _)| d)
    }

    /// `(1; b)`.
    pub fn affine(b: Scalar) -> Direction {
        Direction { a: Scalar::one(&b.field()), b }
    }

    /// `δ₀ = (0; 1)`, the direction of `(x, y + f(x))`.
    pub fn delta0(field: &FieldSpec) -> Direction {
        Direction { a: Scalar::zero(field), b: Scalar::one(field) }
    }

    /// `δ∞ = (1; 0)`, the direction of `(x + f(-y), y)`.
    pub fn delta_inf(field: &FieldSpec) -> Direction {
        Direction { a: Scalar::one(field), b: Scalar::zero(field) }
    }

    pub fn a(&self) -> &Scalar {
        &self.a
    }

    pub fn b(&self) -> &Scalar {
        &self.b
    }

    pub fn field(&self) -> FieldSpec {
        self.a.field()
    }

    pub fn is_delta0(&self) -> bool {
        self.a.is_zero()
    }

    pub fn is_delta_inf(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// The transverse form `ℓ(x, y) = b·x − a·y`, vanishing on the line.
    pub fn linear_form(&self, ring: &RingRef) -> Polynomial {
        let (x, y) = (Polynomial::var(ring, 0), Polynomial::var(ring, 1));
        &x.scale(&self.b) - &y.scale(&self.a)
    }

    /// Image of the line under `g`.
    pub fn image(&self, g: &Mat2) -> Direction {
        let (a, b) = g.apply(&(self.a.clone(), self.b.clone()));
        Direction::new(&a, &b).expect("invertible matrix maps lines to lines")
    }

    /// Canonical `γ_δ ∈ SL(2, K)` with `γ_δ(δ₀) = δ`: the identity for `δ₀`
    /// and `[[0, 1], [-1, b]]` for `(1; b)`.
    pub fn gamma(&self) -> Mat2 {
        let f = self.field();
        if self.is_delta0() {
            Mat2::identity(&f)
        } else {
            Mat2::new(Scalar::zero(&f), Scalar::one(&f), Scalar::from_i64(&f, -1), self.b.clone())
        }
    }

    /// Parses `d0`, `dinf`, or `(a; b)`.
    pub fn parse_with(p: &mut Parser<'_>, field: &FieldSpec) -> Result<Direction, FieldError> {
        let start = p.pos();
        if p.eat('(') {
            let ring = Ring::new(field.clone(), &[]);
            let a = p.expr_in(&ring)?;
            p.expect(';')?;
            let b = p.expr_in(&ring)?;
            p.expect(')')?;
            let bad = || FieldError::Parse { pos: start, msg: "direction needs constant, not both zero".into() };
            let (a, b) = (a.as_constant().ok_or_else(bad)?, b.as_constant().ok_or_else(bad)?);
            return Direction::new(&a, &b).ok_or_else(bad);
        }
        match p.identifier() {
            Some("d0") => Ok(Direction::delta0(field)),
            Some("dinf") => Ok(Direction::delta_inf(field)),
            _ => Err(FieldError::Parse { pos: start, msg: "expected d0, dinf or (a;b)".into() }),
        }
    }

    pub fn parse(field: &FieldSpec, text: &str) -> Result<Direction, FieldError> {
        let ring = Ring::new(field.clone(), &[]);
        let mut p = Parser::new(&ring, text);
        let d = Direction::parse_with(&mut p, field)?;
        p.finish()?;
        Ok(d)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_delta0() {
            return write!(f, "d0");
        }
        if self.is_delta_inf() {
            return write!(f, "dinf");
        }
        let ring = Ring::new(self.field(), &[]);
        write!(f, "(1;{})", Polynomial::constant(&ring, self.b.clone()))
    }
}

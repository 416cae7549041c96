//! Polynomial automorphisms of the affine plane.
//!
//! A [`PlaneAut`] stores the images `(P, Q)` of `x` and `y`. Composition
//! follows function notation: `phi.compose(&psi)` applies `psi` first.
//! Matrices act on column vectors, so `[[a, b], [c, d]]` is the map
//! `(x, y) -> (a x + b y, c x + d y)`.

mod direction;
mod linear;
mod subgroup;
mod vdk;
mod word;

use std::fmt;

use thiserror::Error;

use crate::field::text::Parser;
use crate::field::{FieldError, FieldSpec, Polynomial, Ring, RingRef, Scalar};

pub use direction::Direction;
pub use linear::Mat2;
pub use subgroup::{closure, core_probe, CoreReport, CoreWitness, Subgroup, FINITE_CLOSURE_CAP};
pub use vdk::{factor_vdk, Affine, Elementary, Factor, VdkFactorization};
pub use word::{letter_ring, to_mixed_word, Letter, MixedWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlaneAutError {
    #[error("not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("the map does not fix the origin")]
    OriginNotFixed,
    #[error("linear part {0} is not in {1}")]
    LinearPartNotInS(String, String),
    #[error("invalid letter: {0}")]
    InvalidLetter(String),
    #[error("singular linear part")]
    Singular,
    #[error("unsupported subgroup: {0}")]
    UnsupportedSubgroup(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// The polynomial ring `K[x, y]` that automorphisms over `K` live in.
pub fn plane_ring(field: &FieldSpec) -> RingRef {
    Ring::new(field.clone(), &["x", "y"])
}

/// A polynomial self-map `(x, y) -> (P, Q)` of the plane.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PlaneAut {
    p: Polynomial,
    q: Polynomial,
}

impl PlaneAut {
    /// Builds the map from coordinate images in `K[x, y]`. Invertibility is
    /// not checked here; see [`PlaneAut::check_jacobian`] and [`factor_vdk`].
    pub fn new(p: Polynomial, q: Polynomial) -> Result<PlaneAut, PlaneAutError> {
        let ring = p.ring();
        if ring.nvars() != 2 || ring.odd.is_some() || q.ring() != ring {
            return Err(FieldError::ContextMismatch(ring.to_string(), q.ring().to_string()).into());
        }
        Ok(PlaneAut { p, q })
    }

    pub fn identity(field: &FieldSpec) -> PlaneAut {
        let r = plane_ring(field);
        PlaneAut { p: Polynomial::var(&r, 0), q: Polynomial::var(&r, 1) }
    }

    pub fn linear(g: &Mat2) -> PlaneAut {
        let (p, q) = g.images(&plane_ring(&g.field()));
        PlaneAut { p, q }
    }

    pub fn p(&self) -> &Polynomial {
        &self.p
    }

    pub fn q(&self) -> &Polynomial {
        &self.q
    }

    pub fn ring(&self) -> &RingRef {
        self.p.ring()
    }

    pub fn field(&self) -> &FieldSpec {
        self.p.field()
    }

    pub fn degree(&self) -> u32 {
        self.p.degree().unwrap_or(0).max(self.q.degree().unwrap_or(0))
    }

    pub fn is_identity(&self) -> bool {
        *self == PlaneAut::identity(self.field())
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &PlaneAut) -> PlaneAut {
        let images = [other.p.clone(), other.q.clone()];
        PlaneAut { p: self.p.substitute(&images), q: self.q.substitute(&images) }
    }

    /// Inverse obtained by inverting the van der Kulk factors in reverse order.
    pub fn invert(&self) -> Result<PlaneAut, PlaneAutError> {
        Ok(factor_vdk(self)?.inverse().recompose(self.field()))
    }

    pub fn jacobian(&self) -> Polynomial {
        &(&self.p.derivative(0) * &self.q.derivative(1)) - &(&self.p.derivative(1) * &self.q.derivative(0))
    }

    /// Errors unless the Jacobian determinant is a nonzero constant.
    pub fn check_jacobian(&self) -> Result<Scalar, PlaneAutError> {
        match self.jacobian().as_constant() {
            Some(c) if !c.is_zero() => Ok(c),
            _ => Err(PlaneAutError::NotAnAutomorphism(format!("Jacobian {} is not a nonzero constant", self.jacobian()))),
        }
    }

    pub fn fixes_origin(&self) -> bool {
        self.p.constant_term().is_zero() && self.q.constant_term().is_zero()
    }

    /// Differential at the origin.
    pub fn linear_part(&self) -> Mat2 {
        let n = self.ring().nvars();
        let coeff = |p: &Polynomial, i| p.coefficient(&crate::field::Monomial::var(n, i, 1));
        Mat2::new(coeff(&self.p, 0), coeff(&self.p, 1), coeff(&self.q, 0), coeff(&self.q, 1))
    }

    pub fn eval(&self, point: &(Scalar, Scalar)) -> (Scalar, Scalar) {
        let pt = [point.0.clone(), point.1.clone()];
        (self.p.eval(&pt), self.q.eval(&pt))
    }

    /// Parses `(expr, expr)` over `x`, `y`.
    pub fn parse(field: &FieldSpec, text: &str) -> Result<PlaneAut, PlaneAutError> {
        let ring = plane_ring(field);
        let mut parser = Parser::new(&ring, text);
        let aut = PlaneAut::parse_with(&mut parser)?;
        parser.finish()?;
        Ok(aut)
    }

    pub fn parse_with(parser: &mut Parser<'_>) -> Result<PlaneAut, PlaneAutError> {
        parser.expect('(')?;
        let p = parser.expr()?;
        parser.expect(',')?;
        let q = parser.expr()?;
        parser.expect(')')?;
        PlaneAut::new(p, q)
    }
}

impl fmt::Display for PlaneAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

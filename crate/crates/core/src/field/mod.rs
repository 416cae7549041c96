//! Exact coefficient fields and sparse multivariate polynomials.
//!
//! Three kinds of coefficient field are supported: the rationals, prime
//! fields `F_p` with `p < 2^31`, and rational function fields over either of
//! those. Every polynomial lives in a [`Ring`], which fixes the coefficient
//! field, the ordered list of variables, and optionally one *odd* variable
//! whose square is truncated to zero.
//!
//! Terms are kept in graded lexicographic order with respect to the declared
//! variable order, so printing and leading-term extraction are
//! deterministic.

mod gcd;
mod matrix;
mod poly;
mod ratfn;
mod resultant;
mod scalar;
pub mod text;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use gcd::{base_exponents, coprime_base, div_exact, gcd, prem, squarefree_part};
pub use matrix::{exp_nilpotent, hdc_vector, PolyMatrix};
pub use poly::{poly_mul, Monomial, Polynomial};
pub use ratfn::RatFn;
pub use resultant::{determinant, resultant};
pub use scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("polynomials live in different rings: {0} vs {1}")]
    ContextMismatch(String, String),
    #[error("{0} is not a prime below 2^31")]
    BadModulus(u64),
    #[error("nested rational function fields are not supported")]
    NestedFunctionField,
    #[error("division by zero")]
    DivisionByZero,
    #[error("value {0} cannot be represented in {1}")]
    NotRepresentable(String, String),
    #[error("resultant of two zero polynomials is undefined")]
    BothZero,
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("operation requires characteristic zero, field has characteristic {0}")]
    PositiveCharacteristic(u32),
    #[error("matrix dimensions do not match")]
    DimensionMismatch,
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// A coefficient field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u32),
    /// `base(vars)`; the ring stores the base field and the variable names.
    RationalFunctions(Arc<Ring>),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if p >= (1 << 31) || !is_prime(p) {
            return Err(FieldError::BadModulus(p));
        }
        Ok(FieldSpec::PrimeField(p as u32))
    }

    /// `base(v1, ..., vm)`. The base must itself be `Q` or `F_p`.
    pub fn rational_functions(base: FieldSpec, vars: &[&str]) -> Result<Self, FieldError> {
        if matches!(base, FieldSpec::RationalFunctions(_)) {
            return Err(FieldError::NestedFunctionField);
        }
        Ok(FieldSpec::RationalFunctions(Ring::new(base, vars)))
    }

    /// `Q(t)`.
    pub fn qt() -> Self {
        FieldSpec::rational_functions(FieldSpec::Rationals, &["t"]).expect("Q is not nested")
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
            FieldSpec::RationalFunctions(r) => r.field.characteristic(),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::PrimeField(_))
    }

    /// The field of constants (`Q` or `F_p`).
    pub fn base(&self) -> &FieldSpec {
        match self {
            FieldSpec::RationalFunctions(r) => &r.field,
            other => other,
        }
    }

    /// Variable names of a rational function field; empty otherwise.
    pub fn function_vars(&self) -> &[String] {
        match self {
            FieldSpec::RationalFunctions(r) => &r.vars,
            _ => &[],
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F{p}"),
            FieldSpec::RationalFunctions(r) => write!(f, "{}({})", r.field, r.vars.join(",")),
        }
    }
}

/// Polynomial ring context: coefficient field, ordered variables, and an
/// optional odd variable `e` with `e^2 = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    pub field: FieldSpec,
    pub vars: Vec<String>,
    pub odd: Option<usize>,
}

pub type RingRef = Arc<Ring>;

impl Ring {
    pub fn new(field: FieldSpec, vars: &[&str]) -> RingRef {
        Arc::new(Ring { field, vars: vars.iter().map(|s| s.to_string()).collect(), odd: None })
    }

    /// Ring whose variable at index `odd` squares to zero.
    pub fn with_odd(field: FieldSpec, vars: &[&str], odd: usize) -> RingRef {
        assert!(odd < vars.len());
        Arc::new(Ring {
            field,
            vars: vars.iter().map(|s| s.to_string()).collect(),
            odd: Some(odd),
        })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field, self.vars.join(","))
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_characteristics() {
        assert_eq!(FieldSpec::Rationals.characteristic(), 0);
        assert_eq!(FieldSpec::prime(7).unwrap().characteristic(), 7);
        assert_eq!(FieldSpec::qt().characteristic(), 0);
        let f5t = FieldSpec::rational_functions(FieldSpec::prime(5).unwrap(), &["t"]).unwrap();
        assert_eq!(f5t.characteristic(), 5);
    }

    #[test]
    fn rejects_bad_fields() {
        assert_eq!(FieldSpec::prime(9), Err(FieldError::BadModulus(9)));
        assert!(FieldSpec::prime(1 << 31).is_err());
        assert_eq!(
            FieldSpec::rational_functions(FieldSpec::qt(), &["s"]),
            Err(FieldError::NestedFunctionField)
        );
    }
}

use std::fmt;

use crate::field::text::Parser;
use crate::field::{FieldError, FieldSpec, Polynomial, Ring, RingRef, Scalar};

/// 2×2 matrix over a field, acting on column vectors.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat2 {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub d: Scalar,
}

impl Mat2 {
    pub fn new(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn from_i64(field: &FieldSpec, [[a, b], [c, d]]: [[i64; 2]; 2]) -> Self {
        let s = |v| Scalar::from_i64(field, v);
        Mat2::new(s(a), s(b), s(c), s(d))
    }

    pub fn identity(field: &FieldSpec) -> Self {
        Mat2::from_i64(field, [[1, 0], [0, 1]])
    }

    pub fn swap(field: &FieldSpec) -> Self {
        Mat2::from_i64(field, [[0, 1], [1, 0]])
    }

    pub fn diag(l1: Scalar, l2: Scalar) -> Self {
        let f = l1.field();
        Mat2::new(l1, Scalar::zero(&f), Scalar::zero(&f), l2)
    }

    pub fn scalar(l: Scalar) -> Self {
        Mat2::diag(l.clone(), l)
    }

    pub fn field(&self) -> FieldSpec {
        self.a.field()
    }

    pub fn det(&self) -> Scalar {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn inverse(&self) -> Option<Mat2> {
        let inv = self.det().inv()?;
        Some(Mat2::new(&self.d * &inv, -&(&self.b * &inv), -&(&self.c * &inv), &self.a * &inv))
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2::new(
            &(&self.a * &o.a) + &(&self.b * &o.c),
            &(&self.a * &o.b) + &(&self.b * &o.d),
            &(&self.c * &o.a) + &(&self.d * &o.c),
            &(&self.c * &o.b) + &(&self.d * &o.d),
        )
    }

    pub fn neg(&self) -> Mat2 {
        Mat2::new(-&self.a, -&self.b, -&self.c, -&self.d)
    }

    pub fn apply(&self, v: &(Scalar, Scalar)) -> (Scalar, Scalar) {
        (&(&self.a * &v.0) + &(&self.b * &v.1), &(&self.c * &v.0) + &(&self.d * &v.1))
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.d.is_one() && self.b.is_zero() && self.c.is_zero()
    }

    /// `Some(l)` when the matrix is `l·id`.
    pub fn as_scalar(&self) -> Option<Scalar> {
        (self.b.is_zero() && self.c.is_zero() && self.a == self.d).then(|| self.a.clone())
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.b.is_zero()
    }

    pub fn entries(&self) -> [&Scalar; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// The linear map `(x, y) -> (a x + b y, c x + d y)` as polynomials in `ring`.
    pub fn images(&self, ring: &RingRef) -> (Polynomial, Polynomial) {
        let (x, y) = (Polynomial::var(ring, 0), Polynomial::var(ring, 1));
        (&x.scale(&self.a) + &y.scale(&self.b), &x.scale(&self.c) + &y.scale(&self.d))
    }

    /// Parses `[[a, b], [c, d]]` with constant entries.
    pub fn parse_with(p: &mut Parser<'_>, field: &FieldSpec) -> Result<Mat2, FieldError> {
        let ring = Ring::new(field.clone(), &[]);
        let mut entries = Vec::with_capacity(4);
        p.expect('[')?;
        for row in 0..2 {
            if row > 0 {
                p.expect(',')?;
            }
            p.expect('[')?;
            for col in 0..2 {
                if col > 0 {
                    p.expect(',')?;
                }
                let start = p.pos();
                let e = p.expr_in(&ring)?;
                match e.as_constant() {
                    Some(c) => entries.push(c),
                    None => return Err(FieldError::Parse { pos: start, msg: "matrix entries must be constants".into() }),
                }
            }
            p.expect(']')?;
        }
        p.expect(']')?;
        let [a, b, c, d]: [Scalar; 4] = entries.try_into().expect("four entries");
        Ok(Mat2::new(a, b, c, d))
    }

    pub fn parse(field: &FieldSpec, text: &str) -> Result<Mat2, FieldError> {
        let ring = Ring::new(field.clone(), &[]);
        let mut p = Parser::new(&ring, text);
        let m = Mat2::parse_with(&mut p, field)?;
        p.finish()?;
        Ok(m)
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = Ring::new(self.field(), &[]);
        let show = |s: &Scalar| Polynomial::constant(&ring, s.clone()).to_string();
        write!(f, "[[{}, {}], [{}, {}]]", show(&self.a), show(&self.b), show(&self.c), show(&self.d))
    }
}

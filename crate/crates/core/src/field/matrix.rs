use std::fmt;

use num_bigint::BigInt;

use super::{determinant, FieldError, Monomial, Polynomial, RingRef, Scalar};

/// Square matrix with polynomial entries, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyMatrix {
    n: usize,
    ring: RingRef,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zero(ring: &RingRef, n: usize) -> Self {
        PolyMatrix { n, ring: ring.clone(), entries: vec![Polynomial::zero(ring); n * n] }
    }

    pub fn identity(ring: &RingRef, n: usize) -> Self {
        let mut m = PolyMatrix::zero(ring, n);
        for i in 0..n {
            m.entries[i * n + i] = Polynomial::one(ring);
        }
        m
    }

    pub fn from_rows(ring: &RingRef, rows: Vec<Vec<Polynomial>>) -> Result<Self, FieldError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(FieldError::DimensionMismatch);
        }
        if rows.iter().flatten().any(|p| p.ring() != ring) {
            return Err(FieldError::ContextMismatch(ring.to_string(), "matrix entry ring".into()));
        }
        Ok(PolyMatrix { n, ring: ring.clone(), entries: rows.into_iter().flatten().collect() })
    }

    /// Matrix with constant entries.
    pub fn from_scalars(ring: &RingRef, rows: &[Vec<Scalar>]) -> Result<Self, FieldError> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|c| Polynomial::constant(ring, c.clone())).collect())
            .collect();
        PolyMatrix::from_rows(ring, rows)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        assert_eq!(p.ring(), &self.ring);
        self.entries[i * self.n + j] = p;
    }

    pub fn rows(&self) -> Vec<Vec<Polynomial>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial> {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == PolyMatrix::identity(&self.ring, self.n)
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix, FieldError> {
        if self.n != other.n {
            return Err(FieldError::DimensionMismatch);
        }
        if self.ring != other.ring {
            return Err(FieldError::ContextMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        let n = self.n;
        let mut out = PolyMatrix::zero(&self.ring, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * n + j;
                    out.entries[idx] = &out.entries[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix, FieldError> {
        if self.n != other.n {
            return Err(FieldError::DimensionMismatch);
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.try_add(b)).collect::<Result<_, _>>()?;
        Ok(PolyMatrix { n: self.n, ring: self.ring.clone(), entries })
    }

    pub fn neg(&self) -> PolyMatrix {
        self.map(|p| -p)
    }

    pub fn scale(&self, c: &Polynomial) -> PolyMatrix {
        self.map(|p| p * c)
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> PolyMatrix {
        PolyMatrix { n: self.n, ring: self.ring.clone(), entries: self.entries.iter().map(f).collect() }
    }

    pub fn pow(&self, e: u32) -> PolyMatrix {
        let mut acc = PolyMatrix::identity(&self.ring, self.n);
        for _ in 0..e {
            acc = acc.mul(self).expect("square matrix");
        }
        acc
    }

    pub fn apply(&self, v: &[Polynomial]) -> Result<Vec<Polynomial>, FieldError> {
        if v.len() != self.n {
            return Err(FieldError::DimensionMismatch);
        }
        Ok((0..self.n)
            .map(|i| {
                (0..self.n).fold(Polynomial::zero(&self.ring), |acc, j| &acc + &(self.get(i, j) * &v[j]))
            })
            .collect())
    }

    pub fn determinant(&self) -> Polynomial {
        determinant(&self.ring, &self.rows()).expect("square matrix")
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut out = PolyMatrix::zero(&self.ring, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.entries[j * self.n + i] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Largest total degree among the entries; `None` for the zero matrix.
    pub fn degree(&self) -> Option<u32> {
        self.entries.iter().filter_map(Polynomial::degree).max()
    }

    /// Highest degree component over a univariate ring: the top degree `d`
    /// and the constant matrix of `z^d` coefficients.
    pub fn hdc(&self) -> Option<(u32, PolyMatrix)> {
        assert_eq!(self.ring.nvars(), 1, "hdc needs a univariate ring");
        let d = self.degree()?;
        let m = Monomial::var(1, 0, d);
        Some((d, self.map(|p| Polynomial::constant(&self.ring, p.coefficient(&m)))))
    }

    /// Entries evaluated with every variable set to zero.
    pub fn constant_part(&self) -> PolyMatrix {
        self.map(|p| Polynomial::constant(&self.ring, p.constant_term()))
    }

    /// Inverse of a matrix whose determinant is a nonzero constant, by cofactors.
    pub fn inverse_unimodular(&self) -> Option<PolyMatrix> {
        let det_inv = self.determinant().as_constant()?.inv()?;
        let n = self.n;
        let mut out = PolyMatrix::zero(&self.ring, n);
        let rows = self.rows();
        for i in 0..n {
            for j in 0..n {
                let minor: Vec<Vec<Polynomial>> = rows
                    .iter()
                    .enumerate()
                    .filter(|(r, _)| *r != j)
                    .map(|(_, row)| row.iter().enumerate().filter(|(c, _)| *c != i).map(|(_, p)| p.clone()).collect())
                    .collect();
                let mut cof = determinant(&self.ring, &minor).expect("square minor");
                if (i + j) % 2 == 1 {
                    cof = -&cof;
                }
                out.entries[i * n + j] = cof.scale(&det_inv);
            }
        }
        Some(out)
    }
}

/// Highest degree component of a vector over a univariate ring.
pub fn hdc_vector(v: &[Polynomial]) -> Option<(u32, Vec<Scalar>)> {
    let d = v.iter().filter_map(Polynomial::degree).max()?;
    let m = Monomial::var(1, 0, d);
    Some((d, v.iter().map(|p| p.coefficient(&m)).collect()))
}

/// `exp(m) = sum m^k / k!` for a nilpotent matrix in characteristic zero.
pub fn exp_nilpotent(m: &PolyMatrix) -> Result<PolyMatrix, FieldError> {
    let field = &m.ring.field;
    let ch = field.characteristic();
    if ch != 0 {
        return Err(FieldError::PositiveCharacteristic(ch));
    }
    let mut acc = PolyMatrix::identity(&m.ring, m.n);
    let mut power = PolyMatrix::identity(&m.ring, m.n);
    let mut factorial = BigInt::from(1);
    for k in 1..=m.n {
        power = power.mul(m)?;
        if power.is_zero() {
            return Ok(acc);
        }
        factorial *= k;
        let inv = Scalar::from_bigint(field, &factorial).inv().expect("characteristic zero");
        let c = Polynomial::constant(&m.ring, inv);
        acc = acc.add(&power.scale(&c))?;
    }
    if power.is_zero() {
        Ok(acc)
    } else {
        Err(FieldError::NotNilpotent)
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.chunks(self.n).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, p) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

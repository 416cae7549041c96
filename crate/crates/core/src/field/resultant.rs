use super::gcd::div_exact;
use super::{FieldError, Polynomial, RingRef};

/// Determinant of a square matrix of polynomials by fraction-free
/// (Bareiss) elimination. The empty matrix has determinant one.
pub fn determinant(ring: &RingRef, rows: &[Vec<Polynomial>]) -> Result<Polynomial, FieldError> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(FieldError::DimensionMismatch);
    }
    if n == 0 {
        return Ok(Polynomial::one(ring));
    }
    let mut m: Vec<Vec<Polynomial>> = rows.to_vec();
    let mut negate = false;
    let mut prev = Polynomial::one(ring);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(Polynomial::zero(ring)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = div_exact(&num, &prev).expect("Bareiss division is exact");
            }
            m[i][k] = Polynomial::zero(ring);
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if negate { -&d } else { d })
}

/// Sylvester resultant of `p` and `q` with respect to variable `var`.
pub fn resultant(p: &Polynomial, q: &Polynomial, var: usize) -> Result<Polynomial, FieldError> {
    if p.ring() != q.ring() {
        return Err(FieldError::ContextMismatch(p.ring().to_string(), q.ring().to_string()));
    }
    if p.is_zero() && q.is_zero() {
        return Err(FieldError::BothZero);
    }
    let ring = p.ring();
    if p.is_zero() || q.is_zero() {
        return Ok(Polynomial::zero(ring));
    }
    let a = p.coeffs_in(var);
    let b = q.coeffs_in(var);
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    let zero = Polynomial::zero(ring);
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![zero.clone(); size];
        for (k, c) in a.iter().rev().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![zero.clone(); size];
        for (k, c) in b.iter().rev().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    determinant(ring, &rows)
}

#[cfg(test)]
mod tests {
    use super::super::{FieldSpec, Ring};
    use super::*;

    #[test]
    fn linear_resultant() {
        let r = Ring::new(FieldSpec::Rationals, &["t", "a", "b"]);
        let (t, a, b) = (Polynomial::var(&r, 0), Polynomial::var(&r, 1), Polynomial::var(&r, 2));
        assert_eq!(resultant(&(&t - &a), &(&t - &b), 0).unwrap(), &a - &b);
    }

    #[test]
    fn cusp_elimination() {
        let r = Ring::new(FieldSpec::Rationals, &["t", "u", "v"]);
        let (t, u, v) = (Polynomial::var(&r, 0), Polynomial::var(&r, 1), Polynomial::var(&r, 2));
        let res = resultant(&(&u - &t.pow(2)), &(&v - &t.pow(3)), 0).unwrap();
        let expected = &u.pow(3) - &v.pow(2);
        assert!(res == expected || res == -&expected, "got {res}");
    }

    #[test]
    fn zero_inputs() {
        let r = Ring::new(FieldSpec::Rationals, &["t"]);
        let z = Polynomial::zero(&r);
        assert_eq!(resultant(&z, &z, 0), Err(FieldError::BothZero));
        assert!(resultant(&z, &Polynomial::var(&r, 0), 0).unwrap().is_zero());
    }

    #[test]
    fn determinant_with_pivoting() {
        let r = Ring::new(FieldSpec::Rationals, &["x"]);
        let x = Polynomial::var(&r, 0);
        let c = |v| Polynomial::from_i64(&r, v);
        let rows = vec![vec![c(0), x.clone()], vec![c(1), c(2)]];
        assert_eq!(determinant(&r, &rows).unwrap(), -&x);
    }
}

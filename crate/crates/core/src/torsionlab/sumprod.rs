//! Exhaustive checks of `Σ_{u∈E} u^{pʳ−1} = Π_{u∈E∖0} u` for an
//! `r`-dimensional `F_p`-subspace `E`.

use serde::Serialize;

use super::{GaloisField, TorsionError, MAX_FIELD_ORDER};
use crate::field::{FieldSpec, Polynomial, Ring, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Algebra {
    /// `F_p[a₁, …, a_r]` with `E` spanned by the variables.
    Polynomial,
    /// `A = E = GF(pʳ)`.
    GaloisField,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SumProductReport {
    pub p: u32,
    pub r: u32,
    pub algebra: Algebra,
    /// Number of elements of `E` summed over.
    pub elements: usize,
    pub sum: String,
    pub product: String,
    pub holds: bool,
}

fn var_names(r: u32) -> Vec<String> {
    if r <= 4 {
        ["a", "b", "c", "d"][..r as usize].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=r).map(|i| format!("a{i}")).collect()
    }
}

pub fn sum_product_check(p: u32, r: u32, algebra: Algebra) -> Result<SumProductReport, TorsionError> {
    if r == 0 || p.checked_pow(r).is_none_or(|q| q > MAX_FIELD_ORDER) {
        return Err(TorsionError::TooLarge(format!("{p}^{r} exceeds {MAX_FIELD_ORDER}")));
    }
    let q = p.pow(r);
    match algebra {
        Algebra::Polynomial => {
            let field = FieldSpec::prime(p as u64).map_err(|_| TorsionError::NotPrime(p as u64))?;
            let names = var_names(r);
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let ring = Ring::new(field.clone(), &refs);
            let mut sum = Polynomial::zero(&ring);
            let mut product = Polynomial::one(&ring);
            for code in 1..q {
                let u = (0..r).fold(Polynomial::zero(&ring), |acc, i| {
                    let c = (code / p.pow(i)) % p;
                    &acc + &Polynomial::var(&ring, i as usize).scale(&Scalar::from_i64(&field, c as i64))
                });
                sum = &sum + &u.pow(q - 1);
                product = &product * &u;
            }
            Ok(SumProductReport {
                p,
                r,
                algebra,
                elements: q as usize,
                holds: sum == product,
                sum: sum.to_string(),
                product: product.to_string(),
            })
        }
        Algebra::GaloisField => {
            let gf = GaloisField::new(p, r)?;
            let sum = gf.elements().fold(0, |acc, u| gf.add(acc, gf.pow(u, (q - 1) as u64)));
            let product = gf.elements().skip(1).fold(1, |acc, u| gf.mul(acc, u));
            Ok(SumProductReport {
                p,
                r,
                algebra,
                elements: q as usize,
                holds: sum == product,
                sum: gf.format(sum),
                product: gf.format(product),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let rep = sum_product_check(2, 2, Algebra::Polynomial).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.product, "a^2*b + a*b^2");
        let rep = sum_product_check(3, 1, Algebra::Polynomial).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.sum, "2*a^2");
        for (p, r) in [(2, 1), (3, 2)] {
            assert!(sum_product_check(p, r, Algebra::Polynomial).unwrap().holds);
        }
    }

    #[test]
    fn galois_field_gives_minus_one() {
        for (p, r) in [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1), (2, 3)] {
            let rep = sum_product_check(p, r, Algebra::GaloisField).unwrap();
            assert!(rep.holds);
            assert_eq!(rep.sum, (p - 1).to_string());
        }
    }
}

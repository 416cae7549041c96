//! Small Galois fields `GF(p^r)` with precomputed tables.
//!
//! Elements are indices `0..p^r` whose base-`p` digits are the coefficients
//! of a polynomial in the generator, lowest degree first. Addition is
//! digitwise, so the additive group is `(Z/p)^r` on the same indices.

use super::TorsionError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisField {
    p: u32,
    r: u32,
    q: u32,
    /// Monic modulus, coefficients lowest degree first (length `r + 1`).
    modulus: Vec<u32>,
    mul_table: Vec<u32>,
}

/// Largest field order accepted.
pub const MAX_FIELD_ORDER: u32 = 81;

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn poly_mod(mut a: Vec<u32>, m: &[u32], p: u32) -> Vec<u32> {
    let r = m.len() - 1;
    while a.len() > r {
        let lead = a.pop().expect("nonempty");
        let shift = a.len() - r;
        for (i, &c) in m[..r].iter().enumerate() {
            a[shift + i] = (a[shift + i] + p - (lead * c) % p) % p;
        }
    }
    a.resize(r, 0);
    a
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

/// Whether the monic polynomial `m` of degree `r ≤ 4` has no factor of
/// degree `1..=r/2`.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let r = m.len() - 1;
    for d in 1..=r / 2 {
        for code in 0..p.pow(d as u32) {
            let mut f: Vec<u32> = (0..d).map(|i| (code / p.pow(i as u32)) % p).collect();
            f.push(1);
            if poly_mod(m.to_vec(), &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl GaloisField {
    /// `GF(p^r)` built on the smallest monic irreducible modulus in the
    /// order of coefficient codes.
    pub fn new(p: u32, r: u32) -> Result<GaloisField, TorsionError> {
        if !is_prime(p) {
            return Err(TorsionError::NotPrime(p as u64));
        }
        if r == 0 || p.checked_pow(r).is_none_or(|q| q > MAX_FIELD_ORDER) {
            return Err(TorsionError::TooLarge(format!("{p}^{r} exceeds {MAX_FIELD_ORDER}")));
        }
        let q = p.pow(r);
        let modulus = (0..q)
            .map(|code| {
                let mut m: Vec<u32> = (0..r).map(|i| (code / p.pow(i)) % p).collect();
                m.push(1);
                m
            })
            .find(|m| r == 1 || (m[0] != 0 && is_irreducible(m, p)))
            .expect("an irreducible polynomial exists in every degree");
        let mut gf = GaloisField { p, r, q, modulus, mul_table: Vec::new() };
        let mut table = vec![0; (q * q) as usize];
        for a in 0..q {
            for b in 0..q {
                let prod = poly_mod(poly_mul(&gf.digits(a), &gf.digits(b), p), &gf.modulus, p);
                table[(a * q + b) as usize] = gf.from_digits(&prod);
            }
        }
        gf.mul_table = table;
        Ok(gf)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn digits(&self, a: u32) -> Vec<u32> {
        (0..self.r).map(|i| (a / self.p.pow(i)) % self.p).collect()
    }

    pub fn from_digits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c % self.p)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        self.from_digits(&da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect::<Vec<_>>())
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.from_digits(&self.digits(a).iter().map(|x| (self.p - x) % self.p).collect::<Vec<_>>())
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul_table[(a * self.q + b) as usize]
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    /// Index of the prime-field element `c mod p`.
    pub fn constant(&self, c: u32) -> u32 {
        c % self.p
    }

    /// Elements `p^i`, an `F_p`-basis of the additive group.
    pub fn additive_basis(&self) -> Vec<u32> {
        (0..self.r).map(|i| self.p.pow(i)).collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    /// Polynomial text of an element in the generator `g`.
    pub fn format(&self, a: u32) -> String {
        if a == 0 {
            return "0".into();
        }
        let terms: Vec<String> = self
            .digits(a)
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "g".into(),
                (1, c) => format!("{c}*g"),
                (i, 1) => format!("g^{i}"),
                (i, c) => format!("{c}*g^{i}"),
            })
            .collect();
        terms.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small() {
        for (p, r) in [(2, 1), (2, 2), (3, 2), (2, 3), (5, 1)] {
            let gf = GaloisField::new(p, r).unwrap();
            let q = gf.order();
            for a in 0..q {
                assert_eq!(gf.add(a, gf.neg(a)), 0);
                assert_eq!(gf.mul(a, 1), a);
                if a != 0 {
                    assert!((1..q).any(|b| gf.mul(a, b) == 1), "no inverse for {a} in GF({p}^{r})");
                    assert_eq!(gf.pow(a, (q - 1) as u64), 1);
                }
                for b in 0..q {
                    for c in [0, 1, q - 1] {
                        assert_eq!(gf.mul(a, gf.add(b, c)), gf.add(gf.mul(a, b), gf.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn moduli() {
        assert_eq!(GaloisField::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(GaloisField::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert!(GaloisField::new(4, 1).is_err());
        assert!(GaloisField::new(3, 5).is_err());
        assert_eq!(GaloisField::new(3, 2).unwrap().format(5), "g + 2");
    }
}

//! Multivariate gcd by recursive primitive pseudo-remainder sequences.

use super::{Monomial, Polynomial, Scalar};

/// Exact quotient `a / b`, or `None` when `b` does not divide `a`.
pub fn div_exact(a: &Polynomial, b: &Polynomial) -> Option<Polynomial> {
    let (lm_b, lc_b) = b.leading_term()?;
    let lc_inv = lc_b.inv()?;
    let mut rem = a.clone();
    let mut quot = Polynomial::zero(a.ring());
    while let Some((m, c)) = rem.leading_term() {
        let mq = m.div(lm_b)?;
        let cq = c * &lc_inv;
        rem = &rem - &b.mul_term(&mq, &cq);
        quot = &quot + &Polynomial::monomial(a.ring(), mq, cq);
    }
    Some(quot)
}

/// Pseudo-remainder of `a` by `b` as polynomials in `var`.
pub fn prem(a: &Polynomial, b: &Polynomial, var: usize) -> Polynomial {
    let db = b.degree_in(var);
    let lb = b.coeffs_in(var).swap_remove(db as usize);
    let n = a.ring().nvars();
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(var) >= db {
        let dr = r.degree_in(var);
        let lr = r.coeffs_in(var).swap_remove(dr as usize);
        let shift = Monomial::var(n, var, dr - db);
        let one = Scalar::one(a.field());
        r = &(&lb * &r) - &(&lr * &b.mul_term(&shift, &one));
    }
    r
}

fn first_var(a: &Polynomial, b: &Polynomial) -> Option<usize> {
    (0..a.ring().nvars()).find(|&i| a.uses_var(i) || b.uses_var(i))
}

/// Gcd of the coefficients of `a` viewed as a polynomial in `var`.
fn content_in(a: &Polynomial, var: usize) -> Polynomial {
    let mut g = Polynomial::zero(a.ring());
    for c in a.coeffs_in(var).into_iter().filter(|c| !c.is_zero()) {
        g = gcd(&g, &c);
        if g.is_constant() {
            break;
        }
    }
    g
}

fn primitive_in(a: &Polynomial, var: usize) -> Polynomial {
    let c = content_in(a, var);
    div_exact(a, &c).expect("content divides").monic()
}

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let Some(v) = first_var(a, b) else {
        return Polynomial::one(a.ring());
    };
    if !a.uses_var(v) {
        return gcd(a, &content_in(b, v));
    }
    if !b.uses_var(v) {
        return gcd(&content_in(a, v), b);
    }
    let (ca, cb) = (content_in(a, v), content_in(b, v));
    let c = gcd(&ca, &cb);
    let mut p = div_exact(a, &ca).expect("content divides").monic();
    let mut q = div_exact(b, &cb).expect("content divides").monic();
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        let r = prem(&p, &q, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == 0 {
            return c.monic();
        }
        p = q;
        q = primitive_in(&r, v);
    }
    (&c * &primitive_in(&q, v)).monic()
}

/// Product of the distinct irreducible factors (characteristic zero).
pub fn squarefree_part(p: &Polynomial) -> Polynomial {
    if p.is_zero() || p.is_constant() {
        return p.monic();
    }
    let mut g = p.clone();
    for i in 0..p.ring().nvars() {
        if p.uses_var(i) {
            g = gcd(&g, &p.derivative(i));
        }
    }
    div_exact(p, &g).expect("gcd divides").monic()
}

/// Pairwise coprime monic nonconstant polynomials such that every input is a
/// constant times a product of powers of them.
pub fn coprime_base(polys: &[Polynomial]) -> Vec<Polynomial> {
    let mut work: Vec<Polynomial> =
        polys.iter().filter(|p| !p.is_zero() && !p.is_constant()).map(Polynomial::monic).collect();
    'refine: loop {
        for i in 0..work.len() {
            for j in i + 1..work.len() {
                let g = gcd(&work[i], &work[j]);
                if g.is_constant() {
                    continue;
                }
                let a = div_exact(&work[i], &g).expect("gcd divides");
                let b = div_exact(&work[j], &g).expect("gcd divides");
                work.remove(j);
                work.remove(i);
                work.extend([a, b, g].into_iter().filter(|p| !p.is_constant()).map(|p| p.monic()));
                continue 'refine;
            }
        }
        break;
    }
    work.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.to_string().cmp(&b.to_string())));
    work
}

/// Exponents of `p` over a coprime base and the leftover constant.
pub fn base_exponents(p: &Polynomial, base: &[Polynomial]) -> Option<(Scalar, Vec<u32>)> {
    let mut rest = p.clone();
    let mut exps = Vec::with_capacity(base.len());
    for b in base {
        let mut e = 0;
        while let Some(q) = div_exact(&rest, b) {
            rest = q;
            e += 1;
        }
        exps.push(e);
    }
    rest.as_constant().filter(|c| !c.is_zero()).map(|c| (c, exps))
}

#[cfg(test)]
mod tests {
    use super::super::{FieldSpec, Ring, RingRef};
    use super::*;

    fn ring() -> RingRef {
        Ring::new(FieldSpec::Rationals, &["x", "y"])
    }

    #[test]
    fn gcd_of_products() {
        let r = ring();
        let (x, y) = (Polynomial::var(&r, 0), Polynomial::var(&r, 1));
        let one = Polynomial::one(&r);
        let f = &(&x * &y) + &one;
        let a = &f * &(&x - &y);
        let b = &(&f * &f) * &(&x + &y.pow(2));
        assert_eq!(gcd(&a, &b), f.monic());
        assert!(gcd(&(&x + &one), &(&x - &one)).is_one());
    }

    #[test]
    fn gcd_over_prime_field() {
        let r = Ring::new(FieldSpec::prime(3).unwrap(), &["t"]);
        let t = Polynomial::var(&r, 0);
        let one = Polynomial::one(&r);
        // t^3 - t = t(t-1)(t+1) over F_3
        let a = &t.pow(3) - &t;
        let b = &t.pow(2) - &one;
        assert_eq!(gcd(&a, &b), b);
    }

    #[test]
    fn exact_division_detects_remainders() {
        let r = ring();
        let (x, y) = (Polynomial::var(&r, 0), Polynomial::var(&r, 1));
        let p = &x.pow(2) - &y.pow(2);
        assert_eq!(div_exact(&p, &(&x - &y)).unwrap(), &x + &y);
        assert!(div_exact(&p, &(&x + &Polynomial::one(&r))).is_none());
    }

    #[test]
    fn squarefree_and_coprime_base() {
        let r = ring();
        let (x, y) = (Polynomial::var(&r, 0), Polynomial::var(&r, 1));
        let p = &(&x + &y).pow(3) * &x.pow(2);
        assert_eq!(squarefree_part(&p), (&(&x + &y) * &x).monic());
        let base = coprime_base(&[x.pow(2), &x * &y, y.pow(3)]);
        assert_eq!(base, vec![x.clone(), y.clone()]);
        let (c, e) = base_exponents(&(&x.pow(2) * &y).scale(&Scalar::from_i64(&r.field, 5)), &base).unwrap();
        assert_eq!(e, vec![2, 1]);
        assert_eq!(c, Scalar::from_i64(&r.field, 5));
    }
}

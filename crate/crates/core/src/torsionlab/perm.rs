//! The action of `Γ = ⟨σ, τ⟩` on `F_p²` through `σ = S⁻¹`, `τ = T` with
//! `S(x, y) = (y, 2x)` and `T(x, y) = (x, y + x²)`.

use std::fmt;

use super::TorsionError;
use crate::field::FieldSpec;
use crate::planeaut::PlaneAut;

/// A permutation of the `p²` points of `F_p²`; point `(x, y)` has index `x·p + y`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FinitePerm {
    p: u32,
    table: Vec<u32>,
}

impl FinitePerm {
    pub fn identity(p: u32) -> FinitePerm {
        FinitePerm { p, table: (0..p * p).collect() }
    }

    pub fn from_map(p: u32, f: impl Fn(u32, u32) -> (u32, u32)) -> FinitePerm {
        let table = (0..p * p)
            .map(|i| {
                let (x, y) = f(i / p, i % p);
                (x % p) * p + y % p
            })
            .collect();
        FinitePerm { p, table }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn apply(&self, x: u32, y: u32) -> (u32, u32) {
        let j = self.table[(x * self.p + y) as usize];
        (j / self.p, j % self.p)
    }

    pub fn is_bijection(&self) -> bool {
        let mut seen = vec![false; self.table.len()];
        self.table.iter().all(|&j| !std::mem::replace(&mut seen[j as usize], true))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FinitePerm) -> FinitePerm {
        assert_eq!(self.p, other.p);
        FinitePerm { p: self.p, table: other.table.iter().map(|&j| self.table[j as usize]).collect() }
    }

    pub fn inverse(&self) -> FinitePerm {
        let mut table = vec![0; self.table.len()];
        for (i, &j) in self.table.iter().enumerate() {
            table[j as usize] = i as u32;
        }
        FinitePerm { p: self.p, table }
    }

    pub fn pow(&self, k: i64) -> FinitePerm {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(FinitePerm::identity(self.p), |acc, _| acc.compose(&base))
    }

    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// Number of points moved.
    pub fn support_size(&self) -> usize {
        self.table.iter().enumerate().filter(|(i, &j)| *i as u32 != j).count()
    }
}

fn check_odd_prime(p: u32) -> Result<(), TorsionError> {
    if p == 2 {
        return Err(TorsionError::EvenPrime);
    }
    if p < 2 || (2..).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
        return Err(TorsionError::NotPrime(p as u64));
    }
    Ok(())
}

/// `(σ, τ)` acting on `F_p²` for an odd prime `p`.
pub fn bs_action(p: u32) -> Result<(FinitePerm, FinitePerm), TorsionError> {
    check_odd_prime(p)?;
    let half = p.div_ceil(2);
    let sigma = FinitePerm::from_map(p, |x, y| (y * half, x));
    let tau = FinitePerm::from_map(p, |x, y| (x, y + x * x));
    Ok((sigma, tau))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    Sigma,
    Tau,
}

/// A word `g₁^{k₁} ⋯ g_m^{k_m}` in `σ, τ`, read as the composition
/// `g₁^{k₁} ∘ ⋯ ∘ g_m^{k_m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BsWord(pub Vec<(Gen, i64)>);

impl BsWord {
    /// Parses whitespace-separated tokens `s`, `t` (σ, τ) and `S`, `T` (their
    /// inverses), each optionally followed by `^k`.
    pub fn parse(text: &str) -> Result<BsWord, TorsionError> {
        let mut out: Vec<(Gen, i64)> = Vec::new();
        for tok in text.split_whitespace() {
            let (head, exp) = match tok.split_once('^') {
                Some((h, e)) => (h, e.parse::<i64>().map_err(|_| TorsionError::BadWord(tok.into()))?),
                None => (tok, 1),
            };
            let (g, sign) = match head {
                "s" => (Gen::Sigma, 1),
                "S" => (Gen::Sigma, -1),
                "t" => (Gen::Tau, 1),
                "T" => (Gen::Tau, -1),
                _ => return Err(TorsionError::BadWord(tok.into())),
            };
            match out.last_mut() {
                Some((last, k)) if *last == g => *k += sign * exp,
                _ => out.push((g, sign * exp)),
            }
            if out.last().is_some_and(|(_, k)| *k == 0) {
                out.pop();
            }
        }
        Ok(BsWord(out))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn eval(&self, p: u32) -> Result<FinitePerm, TorsionError> {
        let (sigma, tau) = bs_action(p)?;
        Ok(self.0.iter().fold(FinitePerm::identity(p), |acc, (g, k)| {
            acc.compose(&match g {
                Gen::Sigma => sigma.pow(*k),
                Gen::Tau => tau.pow(*k),
            })
        }))
    }

    /// The same word in `S⁻¹` and `T` as an automorphism over `Q`.
    pub fn eval_symbolic(&self) -> PlaneAut {
        let q = FieldSpec::Rationals;
        let sigma = PlaneAut::parse(&q, "(y/2, x)").expect("valid");
        let sigma_inv = PlaneAut::parse(&q, "(y, 2*x)").expect("valid");
        let tau = PlaneAut::parse(&q, "(x, y + x^2)").expect("valid");
        let tau_inv = PlaneAut::parse(&q, "(x, y - x^2)").expect("valid");
        self.0.iter().fold(PlaneAut::identity(&q), |acc, (g, k)| {
            let base = match (g, *k > 0) {
                (Gen::Sigma, true) => &sigma,
                (Gen::Sigma, false) => &sigma_inv,
                (Gen::Tau, true) => &tau,
                (Gen::Tau, false) => &tau_inv,
            };
            (0..k.unsigned_abs()).fold(acc, |a, _| a.compose(base))
        })
    }
}

impl fmt::Display for BsWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self
            .0
            .iter()
            .map(|(g, k)| {
                let c = match g {
                    Gen::Sigma => 's',
                    Gen::Tau => 't',
                };
                if *k == 1 { c.to_string() } else { format!("{c}^{k}") }
            })
            .collect();
        write!(f, "{}", if toks.is_empty() { "1".into() } else { toks.join(" ") })
    }
}

/// First prime in `primes` where `word` acts nontrivially, with the per-prime
/// outcomes checked so far.
pub fn separate(word: &BsWord, primes: &[u32]) -> Result<(Option<u32>, Vec<(u32, bool)>), TorsionError> {
    let mut log = Vec::new();
    for &p in primes {
        let moved = !word.eval(p)?.is_identity();
        log.push((p, moved));
        if moved {
            return Ok((Some(p), log));
        }
    }
    Ok((None, log))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relation_holds_mod_p() {
        let rel = BsWord::parse("s^2 t S^2").unwrap();
        let rhs = BsWord::parse("t^2").unwrap();
        for p in [3, 5, 7, 11] {
            let (sigma, tau) = bs_action(p).unwrap();
            assert!(sigma.is_bijection() && tau.is_bijection());
            assert_eq!(rel.eval(p).unwrap(), rhs.eval(p).unwrap(), "p = {p}");
            let s2 = sigma.inverse().pow(2);
            assert_eq!(s2, FinitePerm::from_map(p, |x, y| (2 * x, 2 * y)));
        }
        assert_eq!(bs_action(2), Err(TorsionError::EvenPrime));
        assert_eq!(bs_action(9), Err(TorsionError::NotPrime(9)));
    }

    #[test]
    fn relation_holds_over_q() {
        let lhs = BsWord::parse("s s t S S").unwrap().eval_symbolic();
        assert_eq!(lhs, BsWord::parse("t t").unwrap().eval_symbolic());
        assert_eq!(lhs.to_string(), "(x, 2*x^2 + y)");
    }

    #[test]
    fn separation() {
        let t = BsWord::parse("t").unwrap();
        assert_eq!(separate(&t, &[3]).unwrap().0, Some(3));
        let comm = BsWord::parse("s t S T").unwrap();
        assert!(separate(&comm, &[3, 5]).unwrap().0.is_some());
        let trivial = BsWord::parse("s^2 t S^2 T^2").unwrap();
        let (found, log) = separate(&trivial, &[3, 5, 7]).unwrap();
        assert_eq!(found, None);
        assert_eq!(log.len(), 3);
        // σ⁴ acts as the scalar 1/4, trivial exactly when 4 ≡ 1 mod p
        let s4 = BsWord::parse("s^4").unwrap();
        assert_eq!(separate(&s4, &[3, 5]).unwrap().0, Some(5));
        assert!(s4.eval(3).unwrap().is_identity());
    }

    #[test]
    fn word_parsing() {
        assert_eq!(BsWord::parse("s s S t").unwrap().to_string(), "s t");
        assert!(BsWord::parse("s t T S").unwrap().is_empty());
        assert!(BsWord::parse("x").is_err());
        assert_eq!(BsWord::parse("t^-2 s").unwrap().to_string(), "t^-2 s");
    }
}

//! The representation `ρ_N` of tame automorphisms of bounded letter degree
//! on `L(N) ⊕ L(N−1)ε ⊗ K[z]`.
//!
//! The space is spanned by the even monomials `x^i y^{N−i}` followed by the
//! odd monomials `x^i y^{N−1−i} ε`. The odd operator `η = x∂/∂ε + ε∂/∂y`
//! squares to `x∂/∂y` and a letter along `δ₀` with polynomial `f` maps to
//! `exp(z·η·f(η))`. Linear maps act by `P ↦ P(g⁻¹(x, y), ε)`.

use std::collections::HashMap;
use std::sync::Mutex;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::field::{
    exp_nilpotent, hdc_vector, FieldError, FieldSpec, Monomial, PolyMatrix, Polynomial, Ring, RingRef, Scalar,
};
use crate::planeaut::{letter_ring, Direction, Letter, Mat2, MixedWord, PlaneAutError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuperRepError {
    #[error("N must be at least 1")]
    InvalidN,
    #[error("the representation needs characteristic 0, got characteristic {0}")]
    PositiveCharacteristic(u32),
    #[error("linear part {0} has determinant {1}, expected 1")]
    NotSpecialLinear(String, String),
    #[error("letter degree {degree} is not below n = {n}")]
    DegreeOutOfRange { degree: u32, n: u32 },
    #[error("{divisor} does not divide 2N = {two_n}")]
    DivisibilityViolated { divisor: u64, two_n: u64 },
    #[error("{0} is not in t^2 K[t]")]
    NotInSquareIdeal(String),
    #[error("directions must differ, both are {0}")]
    SameDirection(String),
    #[error(transparent)]
    PlaneAut(#[from] PlaneAutError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// `lcm(1, …, n)`.
pub fn lcm_upto(n: u32) -> u64 {
    (1..=n as u64).fold(1, |acc, k| acc.lcm(&k))
}

/// Smallest `N` with `lcm(1, …, n) | 2N`.
pub fn minimal_weight(n: u32) -> usize {
    let l = lcm_upto(n);
    (if l.is_multiple_of(2) { l / 2 } else { l }) as usize
}

/// `ρ_N` restricted to words whose letters have degree below `n`.
/// Letter matrices are memoised.
pub struct SuperRep {
    big_n: usize,
    n: u32,
    field: FieldSpec,
    space: RingRef,
    zring: RingRef,
    basis: Vec<Polynomial>,
    eta_powers: Vec<PolyMatrix>,
    cache: Mutex<HashMap<Letter, PolyMatrix>>,
}

impl SuperRep {
    pub fn new(big_n: usize, n: u32, field: &FieldSpec) -> Result<SuperRep, SuperRepError> {
        if big_n == 0 {
            return Err(SuperRepError::InvalidN);
        }
        let ch = field.characteristic();
        if ch != 0 {
            return Err(SuperRepError::PositiveCharacteristic(ch));
        }
        let two_n = 2 * big_n as u64;
        let l = lcm_upto(n);
        if !two_n.is_multiple_of(l) {
            return Err(SuperRepError::DivisibilityViolated { divisor: l, two_n });
        }
        let space = Ring::with_odd(field.clone(), &["x", "y", "e"], 2);
        let zring = Ring::new(field.clone(), &["z"]);
        let x = Polynomial::var(&space, 0);
        let y = Polynomial::var(&space, 1);
        let e = Polynomial::var(&space, 2);
        let mut basis = Vec::with_capacity(2 * big_n + 1);
        for i in 0..=big_n as u32 {
            basis.push(&x.pow(i) * &y.pow(big_n as u32 - i));
        }
        for i in 0..big_n as u32 {
            basis.push(&(&x.pow(i) * &y.pow(big_n as u32 - 1 - i)) * &e);
        }
        let mut rep = SuperRep {
            big_n,
            n,
            field: field.clone(),
            space,
            zring,
            basis,
            eta_powers: Vec::new(),
            cache: Mutex::new(HashMap::new()),
        };
        let eta = rep.operator_matrix(|p| &(&x * &p.derivative(2)) + &(&e * &p.derivative(1)))?;
        let dim = rep.dim();
        let mut powers = vec![PolyMatrix::identity(&rep.zring, dim)];
        for k in 1..dim {
            powers.push(powers[k - 1].mul(&eta)?);
        }
        rep.eta_powers = powers;
        Ok(rep)
    }

    /// `ρ_N` with the smallest `N` admissible for letter degrees below `n`.
    pub fn for_degree(n: u32, field: &FieldSpec) -> Result<SuperRep, SuperRepError> {
        SuperRep::new(minimal_weight(n), n, field)
    }

    pub fn weight(&self) -> usize {
        self.big_n
    }

    pub fn degree_bound(&self) -> u32 {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.big_n + 1
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// `K[x, y, e]` with `e` odd.
    pub fn space_ring(&self) -> &RingRef {
        &self.space
    }

    /// `K[z]`.
    pub fn z_ring(&self) -> &RingRef {
        &self.zring
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn eta(&self) -> &PolyMatrix {
        &self.eta_powers[1]
    }

    /// Coordinates of an element of the space, `None` if it lies outside.
    pub fn coords(&self, p: &Polynomial) -> Option<Vec<Scalar>> {
        let nn = self.big_n as u32;
        let mut out = vec![Scalar::zero(&self.field); self.dim()];
        for (m, c) in p.terms() {
            let [i, j, k] = [m.exps()[0], m.exps()[1], m.exps()[2]];
            let idx = match k {
                0 if i + j == nn => i as usize,
                1 if i + j + 1 == nn => self.big_n + 1 + i as usize,
                _ => return None,
            };
            out[idx] = c.clone();
        }
        Some(out)
    }

    pub fn vector_to_poly(&self, v: &[Scalar]) -> Polynomial {
        self.basis.iter().zip(v).fold(Polynomial::zero(&self.space), |acc, (b, c)| &acc + &b.scale(c))
    }

    fn operator_matrix(&self, op: impl Fn(&Polynomial) -> Polynomial) -> Result<PolyMatrix, SuperRepError> {
        let dim = self.dim();
        let mut rows = vec![vec![Scalar::zero(&self.field); dim]; dim];
        for (j, b) in self.basis.iter().enumerate() {
            let col = self.coords(&op(b)).expect("operator preserves the space");
            for (i, c) in col.into_iter().enumerate() {
                rows[i][j] = c;
            }
        }
        Ok(PolyMatrix::from_scalars(&self.zring, &rows)?)
    }

    fn scalars_matrix(&self, m: &PolyMatrix, c: &Scalar) -> PolyMatrix {
        m.map(|p| p.scale(c))
    }

    /// Action of `g ∈ SL(2, K)` by `P ↦ P(g⁻¹(x, y), ε)`.
    pub fn linear(&self, g: &Mat2) -> Result<PolyMatrix, SuperRepError> {
        let det = g.det();
        if !det.is_one() {
            return Err(SuperRepError::NotSpecialLinear(g.to_string(), det.to_string()));
        }
        let gi = g.inverse().expect("determinant one");
        let [a, b, c, d] = gi.entries();
        let x = Polynomial::var(&self.space, 0);
        let y = Polynomial::var(&self.space, 1);
        let images = [
            &x.scale(a) + &y.scale(b),
            &x.scale(c) + &y.scale(d),
            Polynomial::var(&self.space, 2),
        ];
        self.operator_matrix(|p| p.substitute(&images))
    }

    /// `exp(z·η·f(η))` for `f ∈ t²K[t]`; `f = 0` gives the identity.
    pub fn elementary(&self, f: &Polynomial) -> Result<PolyMatrix, SuperRepError> {
        if f.ring().nvars() != 1 || f.terms().any(|(m, _)| m.degree() < 2) {
            return Err(SuperRepError::NotInSquareIdeal(f.to_string()));
        }
        let dim = self.dim();
        let mut gen = PolyMatrix::zero(&self.zring, dim);
        for (m, c) in f.terms() {
            let k = m.degree() as usize + 1;
            if k < dim {
                gen = gen.add(&self.scalars_matrix(&self.eta_powers[k], c))?;
            }
        }
        let z = Polynomial::var(&self.zring, 0);
        Ok(exp_nilpotent(&gen.scale(&z))?)
    }

    fn check_letter(&self, f: &Polynomial) -> Result<(), SuperRepError> {
        let two_n = 2 * self.big_n as u64;
        for (m, _) in f.terms() {
            let k = m.degree();
            if k >= self.n {
                return Err(SuperRepError::DegreeOutOfRange { degree: f.degree().unwrap_or(k), n: self.n });
            }
            if !two_n.is_multiple_of(k as u64 + 1) {
                return Err(SuperRepError::DivisibilityViolated { divisor: k as u64 + 1, two_n });
            }
        }
        Ok(())
    }

    /// `ρ(γ_δ)·exp(z·η·f(η))·ρ(γ_δ)⁻¹` for the letter `(δ, f)`.
    pub fn letter(&self, letter: &Letter) -> Result<PolyMatrix, SuperRepError> {
        if let Some(m) = self.cache.lock().expect("cache lock").get(letter) {
            return Ok(m.clone());
        }
        self.check_letter(&letter.f)?;
        let elem = self.elementary(&letter.f)?;
        let m = if letter.dir.is_delta0() {
            elem
        } else {
            let g = letter.dir.gamma();
            let gi = g.inverse().expect("determinant one");
            self.linear(&g)?.mul(&elem)?.mul(&self.linear(&gi)?)?
        };
        self.cache.lock().expect("cache lock").insert(letter.clone(), m.clone());
        Ok(m)
    }

    pub fn word(&self, w: &MixedWord) -> Result<PolyMatrix, SuperRepError> {
        let mut acc = self.linear(&w.s)?;
        for l in &w.letters {
            acc = acc.mul(&self.letter(l)?)?;
        }
        Ok(acc)
    }

    /// Coordinates of `ℓ_δ^N` with `ℓ_δ = b x − a y`, spanning the line `L_δ`.
    pub fn line_vector(&self, dir: &Direction) -> Vec<Scalar> {
        let l = dir.linear_form(&self.space);
        self.coords(&l.pow(self.big_n as u32)).expect("even part")
    }

    /// Whether `v` is a nonzero multiple of `ℓ_δ^N`.
    pub fn in_line(&self, v: &[Scalar], dir: &Direction) -> bool {
        let u = self.line_vector(dir);
        let Some(i) = u.iter().position(|c| !c.is_zero()) else { return false };
        let lambda = v[i].div(&u[i]).expect("nonzero pivot");
        !lambda.is_zero() && u.iter().zip(v).all(|(a, b)| &(a * &lambda) == b)
    }

    /// Samples `τ ∈ F*_δ` and vectors `v(z)` with top coefficient on `L_δ'`,
    /// and records every case where the top coefficient of `ρ(τ)·v` leaves `L_δ`.
    pub fn pingpong(
        &self,
        delta: &Direction,
        delta_prime: &Direction,
        samples: usize,
        seed: u64,
    ) -> Result<PingPongReport, SuperRepError> {
        if delta == delta_prime {
            return Err(SuperRepError::SameDirection(delta.to_string()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let two_n = 2 * self.big_n as u32;
        let degrees: Vec<u32> = (2..self.n).filter(|k| two_n.is_multiple_of(k + 1)).collect();
        let lring = letter_ring(&self.field);
        let top = self.line_vector(delta_prime);
        let mut report = PingPongReport { checked: 0, failures: Vec::new() };
        if degrees.is_empty() {
            return Ok(report);
        }
        let nonzero = |rng: &mut ChaCha8Rng| {
            let v = rng.gen_range(1..=3i64);
            if rng.gen_bool(0.5) { -v } else { v }
        };
        for _ in 0..samples {
            let mut f = Polynomial::zero(&lring);
            while f.is_zero() {
                for &k in &degrees {
                    let c = rng.gen_range(-3..=3i64);
                    f = &f + &Polynomial::monomial(&lring, Monomial::var(1, 0, k), Scalar::from_i64(&self.field, c));
                }
            }
            let letter = Letter::new(delta.clone(), f)?;
            let d = rng.gen_range(0..=2u32);
            let lead = Scalar::from_i64(&self.field, nonzero(&mut rng));
            let z = Polynomial::var(&self.zring, 0);
            let v: Vec<Polynomial> = (0..self.dim())
                .map(|i| {
                    let mut p = Polynomial::constant(&self.zring, &top[i] * &lead).mul_term(&Monomial::var(1, 0, d), &Scalar::one(&self.field));
                    for e in 0..d {
                        let c = Scalar::from_i64(&self.field, rng.gen_range(-3..=3i64));
                        p = &p + &(&Polynomial::constant(&self.zring, c) * &z.pow(e));
                    }
                    p
                })
                .collect();
            let image = self.letter(&letter)?.apply(&v)?;
            report.checked += 1;
            let ok = hdc_vector(&image).is_some_and(|(_, w)| self.in_line(&w, delta));
            if !ok {
                report.failures.push(format!("{letter:?} on {}", v.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")));
            }
        }
        Ok(report)
    }

    /// Evaluates every reduced word of length `1..=max_len` whose letters are
    /// drawn from `dirs × polys` and collects the ones mapped to the identity.
    pub fn faithfulness_sweep(
        &self,
        dirs: &[Direction],
        polys: &[Polynomial],
        max_len: usize,
    ) -> Result<SweepReport, SuperRepError> {
        let mut letters = Vec::new();
        for (di, d) in dirs.iter().enumerate() {
            for f in polys {
                let l = Letter::new(d.clone(), f.clone())?;
                letters.push((di, self.letter(&l)?, l));
            }
        }
        let mut report = SweepReport { words: 0, trivial: Vec::new() };
        let id = PolyMatrix::identity(&self.zring, self.dim());
        let mut stack: Vec<(Option<usize>, Vec<Letter>, PolyMatrix)> = vec![(None, Vec::new(), id)];
        while let Some((last, word, m)) = stack.pop() {
            if word.len() == max_len {
                continue;
            }
            for (di, lm, l) in &letters {
                if Some(*di) == last {
                    continue;
                }
                let next = m.mul(lm)?;
                let mut w = word.clone();
                w.push(l.clone());
                report.words += 1;
                if next.is_identity() {
                    report.trivial.push(MixedWord::new(Mat2::identity(&self.field), w.clone()));
                }
                stack.push((Some(*di), w, next));
            }
        }
        Ok(report)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PingPongReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub words: usize,
    pub trivial: Vec<MixedWord>,
}

pub fn eta_matrix(big_n: usize) -> Result<PolyMatrix, SuperRepError> {
    Ok(SuperRep::new(big_n, 1, &FieldSpec::Rationals)?.eta().clone())
}

pub fn rep_linear(big_n: usize, g: &Mat2) -> Result<PolyMatrix, SuperRepError> {
    SuperRep::new(big_n, 1, &g.field())?.linear(g)
}

pub fn rep_elementary(big_n: usize, f: &Polynomial) -> Result<PolyMatrix, SuperRepError> {
    SuperRep::new(big_n, 1, f.field())?.elementary(f)
}

/// `ρ_N(w)` with letter degrees bounded by `n`.
pub fn rep_word(big_n: usize, n: u32, w: &MixedWord) -> Result<PolyMatrix, SuperRepError> {
    SuperRep::new(big_n, n, &w.field())?.word(w)
}

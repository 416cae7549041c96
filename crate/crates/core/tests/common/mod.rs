//! Seeded random generators shared by the integration tests.
#![allow(dead_code)]

use autlin::field::{FieldSpec, Monomial, Polynomial, Scalar};
use autlin::planeaut::{letter_ring, plane_ring, Affine, Direction, Elementary, Factor, Letter, Mat2, MixedWord};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q() -> FieldSpec {
    FieldSpec::Rationals
}

pub fn qi(v: i64) -> Scalar {
    Scalar::from_i64(&q(), v)
}

pub fn nonzero(rng: &mut ChaCha8Rng, h: i64) -> i64 {
    let v = rng.gen_range(1..=h);
    if rng.gen_bool(0.5) {
        -v
    } else {
        v
    }
}

/// Product of a few unipotent generators of `SL₂(Z)`.
pub fn random_sl2(rng: &mut ChaCha8Rng) -> Mat2 {
    let mut m = Mat2::identity(&q());
    for _ in 0..rng.gen_range(0..=3) {
        let k = rng.gen_range(-2..=2);
        let g = if rng.gen_bool(0.5) {
            Mat2::from_i64(&q(), [[1, k], [0, 1]])
        } else {
            Mat2::from_i64(&q(), [[1, 0], [k, 1]])
        };
        m = m.mul(&g);
    }
    m
}

pub fn directions() -> Vec<Direction> {
    let mut out = vec![Direction::delta0(&q()), Direction::delta_inf(&q())];
    out.extend([-2, -1, 1, 2].map(|b| Direction::affine(qi(b))));
    out
}

/// `f = Σ c_k t^k` over `degrees`, nonzero, coefficients of height at most 3.
pub fn random_letter_poly(rng: &mut ChaCha8Rng, degrees: &[u32]) -> Polynomial {
    let ring = letter_ring(&q());
    loop {
        let mut f = Polynomial::zero(&ring);
        for &k in degrees {
            f = &f + &Polynomial::monomial(&ring, Monomial::var(1, 0, k), qi(rng.gen_range(-3..=3)));
        }
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn random_letter(rng: &mut ChaCha8Rng, degrees: &[u32]) -> Letter {
    let dirs = directions();
    let d = dirs[rng.gen_range(0..dirs.len())].clone();
    Letter::new(d, random_letter_poly(rng, degrees)).expect("valid letter")
}

/// A reduced word with up to `max_len` letters; the linear part is random in
/// `SL₂(Z)` when `linear` is set.
pub fn random_word(rng: &mut ChaCha8Rng, max_len: usize, degrees: &[u32], linear: bool) -> MixedWord {
    let s = if linear { random_sl2(rng) } else { Mat2::identity(&q()) };
    let len = rng.gen_range(0..=max_len);
    MixedWord::new(s, (0..len).map(|_| random_letter(rng, degrees)).collect::<Vec<_>>())
}

pub fn random_affine(rng: &mut ChaCha8Rng) -> Affine {
    loop {
        let e: Vec<i64> = (0..4).map(|_| rng.gen_range(-3..=3)).collect();
        let m = Mat2::from_i64(&q(), [[e[0], e[1]], [e[2], e[3]]]);
        if !m.det().is_zero() {
            return Affine { m, t: (qi(rng.gen_range(-3..=3)), qi(rng.gen_range(-3..=3))) };
        }
    }
}

pub fn random_elementary(rng: &mut ChaCha8Rng) -> Elementary {
    let ring = plane_ring(&q());
    let deg = rng.gen_range(2..=3);
    let mut g = Polynomial::monomial(&ring, Monomial::var(2, 0, deg), qi(nonzero(rng, 3)));
    for k in 0..deg {
        g = &g + &Polynomial::monomial(&ring, Monomial::var(2, 0, k), qi(rng.gen_range(-3..=3)));
    }
    Elementary { alpha: qi(nonzero(rng, 3)), beta: qi(rng.gen_range(-3..=3)), gamma: qi(nonzero(rng, 3)), g }
}

/// Up to `max` factors, each affine or triangular with equal odds.
pub fn random_factors(rng: &mut ChaCha8Rng, max: usize) -> Vec<Factor> {
    let k = rng.gen_range(1..=max);
    (0..k)
        .map(|_| {
            if rng.gen_bool(0.5) {
                Factor::Affine(random_affine(rng))
            } else {
                Factor::Elementary(random_elementary(rng))
            }
        })
        .collect()
}

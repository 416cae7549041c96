//! Embeddings of tame automorphism groups into `SL(2, K[z])`.
//!
//! A letter `(δ, f)` goes to the unipotent `id + (f(z)/z)·e_δ`, where
//! `e_δ = (a, b)ᵀ(b, −a)` is the nilpotent with image `δ`. Words with trivial
//! linear part land in the congruence subgroup `id + z·M₂(K[z])`; a linear
//! part `(x, y + a x)` maps to `id + a·e_δ₀`.

use std::collections::HashMap;

use thiserror::Error;

use crate::field::{FieldError, FieldSpec, Monomial, PolyMatrix, Polynomial, Ring, RingRef, Scalar};
use crate::planeaut::{letter_ring, Direction, Letter, Mat2, MixedWord, PlaneAutError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NagaoError {
    #[error("linear part {0} is not the identity")]
    NontrivialLinearPart(String),
    #[error("linear part {0} is not of the form (x, y + a*x)")]
    LinearPartNotInU(String),
    #[error(transparent)]
    PlaneAut(#[from] PlaneAutError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

pub fn z_ring(field: &FieldSpec) -> RingRef {
    Ring::new(field.clone(), &["z"])
}

/// `e_δ = (a, b)ᵀ·(b, −a)` as a constant matrix over `K[z]`.
pub fn e_delta(dir: &Direction) -> PolyMatrix {
    let (a, b) = (dir.a(), dir.b());
    let rows = vec![vec![a * b, -&(a * a)], vec![b * b, -&(a * b)]];
    PolyMatrix::from_scalars(&z_ring(&dir.field()), &rows).expect("2x2")
}

/// `ψ(f)(z) = f(z)/z`, a linear bijection `t²K[t] → zK[z]`.
pub fn psi(f: &Polynomial, ring: &RingRef) -> Polynomial {
    Polynomial::from_terms(
        ring,
        f.terms().map(|(m, c)| (Monomial::var(1, 0, m.degree().saturating_sub(1)), c.clone())),
    )
}

pub fn embed_letter(letter: &Letter) -> PolyMatrix {
    let ring = z_ring(&letter.dir.field());
    let e = e_delta(&letter.dir).scale(&psi(&letter.f, &ring));
    PolyMatrix::identity(&ring, 2).add(&e).expect("2x2")
}

fn letters_product(field: &FieldSpec, letters: &[Letter]) -> PolyMatrix {
    letters
        .iter()
        .fold(PolyMatrix::identity(&z_ring(field), 2), |acc, l| acc.mul(&embed_letter(l)).expect("2x2"))
}

/// Image of a word with trivial linear part; congruent to the identity mod `z`.
pub fn embed_aut1(w: &MixedWord) -> Result<PolyMatrix, NagaoError> {
    if !w.s.is_identity() {
        return Err(NagaoError::NontrivialLinearPart(w.s.to_string()));
    }
    Ok(letters_product(&w.field(), &w.letters))
}

/// Image of a word whose linear part is `(x, y + a x)`; the value at `z = 0`
/// is `[[1, 0], [a, 1]]`.
pub fn embed_aut_u(w: &MixedWord) -> Result<PolyMatrix, NagaoError> {
    let [p, q, _, r] = w.s.entries();
    if !(p.is_one() && q.is_zero() && r.is_one()) {
        return Err(NagaoError::LinearPartNotInU(w.s.to_string()));
    }
    let field = w.field();
    let ring = z_ring(&field);
    let a = w.s.entries()[2].clone();
    let s = PolyMatrix::identity(&ring, 2)
        .add(&e_delta(&Direction::delta0(&field)).map(|p| p.scale(&a)))
        .expect("2x2");
    Ok(s.mul(&letters_product(&field, &w.letters))?)
}

/// Whether `m` is congruent to the identity modulo `z`.
pub fn is_congruent_to_identity(m: &PolyMatrix) -> bool {
    m.constant_part().is_identity()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreenessReport {
    pub words: usize,
    /// Pairs of distinct reduced words with equal images.
    pub collisions: Vec<(MixedWord, MixedWord)>,
}

/// Maps every reduced word of length at most `depth` over the letters
/// `(δ, c·t²)` to `SL(2, K[z])` and reports coinciding images. The empty word
/// is included.
pub fn verify_free(depth: usize, coeffs: &[Scalar], dirs: &[Direction]) -> Result<FreenessReport, NagaoError> {
    let Some(field) = dirs.first().map(Direction::field) else {
        return Ok(FreenessReport { words: 1, collisions: Vec::new() });
    };
    let lring = letter_ring(&field);
    let mut alphabet = Vec::new();
    for (di, d) in dirs.iter().enumerate() {
        for c in coeffs {
            let f = Polynomial::monomial(&lring, Monomial::var(1, 0, 2), c.clone());
            alphabet.push((di, Letter::new(d.clone(), f)?));
        }
    }
    let ring = z_ring(&field);
    let mut seen: HashMap<PolyMatrix, Vec<Letter>> = HashMap::new();
    let mut collisions = Vec::new();
    let mut frontier: Vec<(Option<usize>, Vec<Letter>, PolyMatrix)> =
        vec![(None, Vec::new(), PolyMatrix::identity(&ring, 2))];
    let mut words = 0;
    let wrap = |ls: Vec<Letter>| MixedWord { s: Mat2::identity(&field), letters: ls };
    while let Some((last, word, m)) = frontier.pop() {
        words += 1;
        if let Some(prev) = seen.get(&m) {
            collisions.push((wrap(prev.clone()), wrap(word.clone())));
        } else {
            seen.insert(m.clone(), word.clone());
        }
        if word.len() == depth {
            continue;
        }
        for (di, l) in &alphabet {
            if Some(*di) == last {
                continue;
            }
            let mut next = word.clone();
            next.push(l.clone());
            frontier.push((Some(*di), next, m.mul(&embed_letter(l))?));
        }
    }
    Ok(FreenessReport { words, collisions })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn mat(rows: &[[&str; 2]; 2]) -> PolyMatrix {
        let r = z_ring(&q());
        let p = |s: &str| crate::field::text::parse_polynomial(&r, s).unwrap();
        PolyMatrix::from_rows(&r, rows.iter().map(|row| row.iter().map(|s| p(s)).collect()).collect()).unwrap()
    }

    fn word(text: &str) -> MixedWord {
        MixedWord::parse(&q(), text).unwrap()
    }

    #[test]
    fn nilpotents() {
        assert_eq!(e_delta(&Direction::delta0(&q())), mat(&[["0", "0"], ["1", "0"]]));
        assert_eq!(e_delta(&Direction::delta_inf(&q())), mat(&[["0", "-1"], ["0", "0"]]));
        let e = e_delta(&Direction::affine(Scalar::one(&q())));
        assert!(e.mul(&e).unwrap().is_zero());
    }

    #[test]
    fn congruence_images() {
        assert_eq!(embed_aut1(&word("[(d0, t^2)]")).unwrap(), mat(&[["1", "0"], ["z", "1"]]));
        let m = embed_aut1(&word("[(d0, t^2), (dinf, t^2)]")).unwrap();
        assert_eq!(m, mat(&[["1", "-z"], ["z", "1 - z^2"]]));
        assert!(is_congruent_to_identity(&m));
        assert!(m.determinant().is_one());
        assert!(embed_aut1(&MixedWord::identity(&q())).unwrap().is_identity());
        assert!(matches!(
            embed_aut1(&word("[[1, 0], [1, 1]] [(d0, t^2)]")),
            Err(NagaoError::NontrivialLinearPart(_))
        ));
    }

    #[test]
    fn unipotent_linear_part() {
        assert_eq!(embed_aut_u(&word("[[1, 0], [3, 1]] []")).unwrap(), mat(&[["1", "0"], ["3", "1"]]));
        let m = embed_aut_u(&word("[[1, 0], [2, 1]] [(dinf, -t^3)]")).unwrap();
        assert!(m.determinant().is_one());
        assert_eq!(m.constant_part(), mat(&[["1", "0"], ["2", "1"]]));
        let u = embed_aut_u(&word("[[1, 0], [2, 1]] []")).unwrap();
        let e = embed_aut1(&word("[(d0, t^2)]")).unwrap();
        assert_eq!(u.mul(&e).unwrap(), e.mul(&u).unwrap());
        assert!(matches!(embed_aut_u(&word("[[2, 0], [0, 1/2]] []")), Err(NagaoError::LinearPartNotInU(_))));
    }

    #[test]
    fn inverse_words_give_inverse_matrices() {
        let w = word("[(d0, t^2 - t^3), ((1;2), 5*t^2), (dinf, t^4)]");
        let m = embed_aut1(&w).unwrap();
        let mi = embed_aut1(&w.inverse()).unwrap();
        assert!(m.mul(&mi).unwrap().is_identity());
    }

    #[test]
    fn free_at_depth_two() {
        let coeffs = [Scalar::from_i64(&q(), 1), Scalar::from_i64(&q(), -1)];
        let dirs = [Direction::delta0(&q()), Direction::delta_inf(&q())];
        let report = verify_free(2, &coeffs, &dirs).unwrap();
        assert_eq!(report.words, 1 + 4 + 8);
        assert!(report.collisions.is_empty());
    }
}

mod common;

use autlin::field::text::parse_polynomial;
use autlin::field::PolyMatrix;
use autlin::nagao::{embed_aut1, embed_aut_u, embed_letter, is_congruent_to_identity, verify_free, z_ring};
use autlin::planeaut::{Direction, Letter, Mat2, MixedWord};
use common::*;
use proptest::prelude::*;
use rand::Rng;

fn matrix(rows: [[&str; 2]; 2]) -> PolyMatrix {
    let r = z_ring(&q());
    let rows = rows.iter().map(|row| row.iter().map(|s| parse_polynomial(&r, s).unwrap()).collect()).collect();
    PolyMatrix::from_rows(&r, rows).unwrap()
}

#[test]
fn letters_along_axes() {
    let lr = autlin::planeaut::letter_ring(&q());
    let f = parse_polynomial(&lr, "3*t^2 - t^4").unwrap();
    // (x, y + f(x)) ↦ [[1, 0], [f(z)/z, 1]]
    let l = Letter::new(Direction::delta0(&q()), f.clone()).unwrap();
    assert_eq!(embed_letter(&l), matrix([["1", "0"], ["3*z - z^3", "1"]]));
    // (x + f(-y), y) ↦ [[1, -f(z)/z], [0, 1]]
    let l = Letter::new(Direction::delta_inf(&q()), f).unwrap();
    assert_eq!(embed_letter(&l), matrix([["1", "-3*z + z^3"], ["0", "1"]]));
}

#[test]
fn longer_words_stay_distinct() {
    let dirs = [Direction::delta0(&q()), Direction::delta_inf(&q()), Direction::affine(qi(1))];
    let report = verify_free(3, &[qi(1), qi(-1)], &dirs).unwrap();
    assert_eq!(report.words, 1 + 6 + 6 * 4 + 6 * 4 * 4);
    assert!(report.collisions.is_empty(), "{:?}", report.collisions);
}

fn random_u(rng: &mut rand_chacha::ChaCha8Rng) -> Mat2 {
    Mat2::from_i64(&q(), [[1, 0], [rng.gen_range(-3..=3), 1]])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn congruence_embedding_is_a_homomorphism(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let a = random_word(&mut rng, 4, &[2, 3, 4], false);
        let b = random_word(&mut rng, 4, &[2, 3, 4], false);
        let ab = embed_aut1(&a.mul(&b)).unwrap();
        prop_assert_eq!(embed_aut1(&a).unwrap().mul(&embed_aut1(&b).unwrap()).unwrap(), ab.clone());
        prop_assert!(ab.determinant().is_one());
        prop_assert!(is_congruent_to_identity(&ab));
    }

    #[test]
    fn unipotent_embedding_is_a_homomorphism(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let a = random_word(&mut rng, 3, &[2, 3], false);
        let a = MixedWord::new(random_u(&mut rng), a.letters);
        let b = random_word(&mut rng, 3, &[2, 3], false);
        let b = MixedWord::new(random_u(&mut rng), b.letters);
        let lhs = embed_aut_u(&a).unwrap().mul(&embed_aut_u(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, embed_aut_u(&a.mul(&b)).unwrap());
    }

    #[test]
    fn nontrivial_words_embed_nontrivially(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let w = random_word(&mut rng, 5, &[2, 3], false);
        prop_assume!(!w.is_empty());
        let m = embed_aut1(&w).unwrap();
        prop_assert!(!m.is_identity());
        // top z-degree of the product is the sum of the letter contributions
        let expected: u32 = w.letters.iter().map(|l| l.degree() - 1).sum();
        prop_assert_eq!(m.degree(), Some(expected));
    }
}

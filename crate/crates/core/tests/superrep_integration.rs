mod common;

use autlin::field::{PolyMatrix, Polynomial, Scalar};
use autlin::planeaut::{Direction, Letter, Mat2, MixedWord};
use autlin::superrep::{SuperRep, SuperRepError};
use common::*;
use proptest::prelude::*;

fn rep3() -> SuperRep {
    SuperRep::new(3, 3, &q()).unwrap()
}

/// Coordinates read off by matching monomials against the basis.
fn basis_coords(rep: &SuperRep, p: &Polynomial) -> Vec<Scalar> {
    let mut out = vec![qi(0); rep.dim()];
    for (m, c) in p.terms() {
        let i = rep
            .basis()
            .iter()
            .position(|b| b.num_terms() == 1 && b.leading_term().unwrap().0 == m)
            .unwrap_or_else(|| panic!("{p} leaves the space"));
        out[i] = c.clone();
    }
    out
}

#[test]
fn eta_is_the_odd_derivation() {
    for nn in 1..=4 {
        let rep = SuperRep::new(nn, 1, &q()).unwrap();
        let ring = rep.space_ring();
        let (x, e) = (Polynomial::var(ring, 0), Polynomial::var(ring, 2));
        for (j, b) in rep.basis().iter().enumerate() {
            let image = &(&x * &b.derivative(2)) + &(&e * &b.derivative(1));
            let col: Vec<Scalar> = rep.eta().column(j).iter().map(Polynomial::constant_term).collect();
            assert_eq!(col, basis_coords(&rep, &image), "N = {nn}, column {j}");
        }
    }
}

#[test]
fn dimension_is_one_more_than_weight() {
    for n in 2..=5u32 {
        let rep = SuperRep::for_degree(n, &q()).unwrap();
        assert_eq!(rep.dim(), 2 * rep.weight() + 1);
    }
    assert_eq!(rep3().dim(), 7);
}

#[test]
fn letters_are_unipotent() {
    let rep = rep3();
    let id = PolyMatrix::identity(rep.z_ring(), 7);
    for d in directions() {
        for c in [1, -1, 2, -2] {
            let l = Letter::new(d.clone(), random_letter_poly(&mut rng(c as u64), &[2]).scale(&qi(c))).unwrap();
            let m = rep.letter(&l).unwrap();
            assert!(m.determinant().is_one());
            let nil = m.add(&id.neg()).unwrap();
            assert!(nil.pow(7).is_zero(), "{l:?}");
        }
    }
}

#[test]
fn odd_degree_needs_divisibility() {
    let rep = SuperRep::new(3, 4, &q());
    assert!(matches!(rep, Err(SuperRepError::DivisibilityViolated { .. })));
    let rep = SuperRep::new(6, 4, &q()).unwrap();
    let l = Letter::new(Direction::delta_inf(&q()), random_letter_poly(&mut rng(1), &[2, 3])).unwrap();
    assert!(rep.letter(&l).unwrap().determinant().is_one());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn linear_part_is_a_homomorphism(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let rep = rep3();
        let (g, h) = (random_sl2(&mut rng), random_sl2(&mut rng));
        let lhs = rep.linear(&g).unwrap().mul(&rep.linear(&h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rep.linear(&g.mul(&h)).unwrap());
    }

    #[test]
    fn words_multiply(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let rep = rep3();
        let a = random_word(&mut rng, 3, &[2], true);
        let b = random_word(&mut rng, 3, &[2], true);
        let lhs = rep.word(&a).unwrap().mul(&rep.word(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rep.word(&a.mul(&b)).unwrap());
        prop_assert!(rep.word(&a).unwrap().mul(&rep.word(&a.inverse()).unwrap()).unwrap().is_identity());
    }

    #[test]
    fn conjugation_equivariance(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let rep = rep3();
        let w = random_word(&mut rng, 3, &[2], false);
        let g = random_sl2(&mut rng);
        let gi = g.inverse().unwrap();
        let lhs = rep.linear(&g).unwrap().mul(&rep.word(&w).unwrap()).unwrap().mul(&rep.linear(&gi).unwrap()).unwrap();
        prop_assert_eq!(lhs, rep.word(&w.conjugate_by(&g)).unwrap());
    }

    #[test]
    fn nontrivial_words_have_nontrivial_images(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let rep = rep3();
        let w = random_word(&mut rng, 5, &[2], false);
        prop_assume!(!w.is_empty());
        prop_assert!(!rep.word(&w).unwrap().is_identity(), "{}", w);
    }
}

#[test]
fn larger_weight_sweep() {
    // N = 6 admits letters of degree 2 and 3
    let rep = SuperRep::new(6, 4, &q()).unwrap();
    let lring = autlin::planeaut::letter_ring(&q());
    let polys = vec![
        autlin::field::text::parse_polynomial(&lring, "t^2").unwrap(),
        autlin::field::text::parse_polynomial(&lring, "-t^3").unwrap(),
    ];
    let dirs = [Direction::delta0(&q()), Direction::delta_inf(&q())];
    let sweep = rep.faithfulness_sweep(&dirs, &polys, 3).unwrap();
    assert_eq!(sweep.words, 4 + 4 * 2 + 4 * 2 * 2);
    assert!(sweep.trivial.is_empty());
    let w = MixedWord::new(Mat2::identity(&q()), []);
    assert!(rep.word(&w).unwrap().is_identity());
}

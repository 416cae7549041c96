use autlin::field::{FieldSpec, Scalar};
use autlin::torsionlab::{
    build_em, build_g_r, check_axioms, enumerate, lower_central_series, nilpotency_class, separate, sum_product_check,
    Algebra, BsWord, FiniteGroup, GaloisField, TorsionError,
};
use proptest::prelude::*;

fn word_strategy() -> impl Strategy<Value = String> {
    prop::collection::vec((prop::sample::select(vec!["s", "S", "t", "T"]), 1i64..=3), 0..6)
        .prop_map(|toks| toks.into_iter().map(|(g, k)| format!("{g}^{k}")).collect::<Vec<_>>().join(" "))
}

fn inverse_text(w: &str) -> String {
    w.split_whitespace()
        .rev()
        .map(|tok| {
            let (g, k) = tok.split_once('^').unwrap();
            let g = if g.chars().all(char::is_lowercase) { g.to_uppercase() } else { g.to_lowercase() };
            format!("{g}^{k}")
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn reduce_mod(s: &Scalar, p: u32) -> u32 {
    let fp = FieldSpec::prime(p as u64).unwrap();
    let v = Scalar::from_rational(&fp, s.as_rational().unwrap()).unwrap();
    v.to_fraction_strings().0.parse().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn word_times_inverse_is_trivial(w in word_strategy(), p in prop::sample::select(vec![3u32, 5, 7, 11])) {
        let word = BsWord::parse(&w).unwrap();
        let inv = BsWord::parse(&inverse_text(&w)).unwrap();
        prop_assert!(word.eval(p).unwrap().compose(&inv.eval(p).unwrap()).is_identity());
        prop_assert!(word.eval(p).unwrap().is_bijection());
    }

    #[test]
    fn evaluation_is_multiplicative(a in word_strategy(), b in word_strategy(), p in prop::sample::select(vec![3u32, 5, 7])) {
        let ab = BsWord::parse(&format!("{a} {b}")).unwrap().eval(p).unwrap();
        let (wa, wb) = (BsWord::parse(&a).unwrap(), BsWord::parse(&b).unwrap());
        prop_assert_eq!(wa.eval(p).unwrap().compose(&wb.eval(p).unwrap()), ab);
    }

    #[test]
    fn permutations_are_reductions_of_automorphisms(w in word_strategy(), p in prop::sample::select(vec![3u32, 5, 7])) {
        let word = BsWord::parse(&w).unwrap();
        let perm = word.eval(p).unwrap();
        let phi = word.eval_symbolic();
        let q = FieldSpec::Rationals;
        for x in 0..p {
            for y in 0..p {
                let (u, v) = phi.eval(&(Scalar::from_i64(&q, x as i64), Scalar::from_i64(&q, y as i64)));
                prop_assert_eq!(perm.apply(x, y), (reduce_mod(&u, p), reduce_mod(&v, p)));
            }
        }
    }
}

#[test]
fn separation_reports_each_prime() {
    let w = BsWord::parse("s^4").unwrap();
    let (found, log) = separate(&w, &[3, 5, 7]).unwrap();
    assert_eq!(found, Some(5));
    assert_eq!(log, vec![(3, false), (5, true)]);
    assert_eq!(separate(&w, &[2]), Err(TorsionError::EvenPrime));
}

#[test]
fn groups_satisfy_axioms() {
    for (p, r) in [(2, 1), (2, 2), (3, 1)] {
        assert!(check_axioms(&build_g_r(p, r).unwrap(), 300, 17).unwrap());
        let q = p.pow(r);
        for a in 1..q {
            let g = build_em(p, r, a).unwrap();
            assert!(check_axioms(&g, 100, a as u64).unwrap());
            assert_eq!(nilpotency_class(&g).unwrap(), 1 + (p as usize - 1) * r as usize);
        }
    }
}

#[test]
fn em_with_zero_coefficient_is_abelian() {
    let g = build_em(3, 1, 0).unwrap();
    assert_eq!(enumerate(&g).unwrap().len(), 3);
    assert_eq!(nilpotency_class(&g).unwrap(), 1);
}

#[test]
fn series_orders_divide() {
    let g = build_g_r(2, 2).unwrap();
    let orders = lower_central_series(&g).unwrap();
    assert_eq!(orders[0], 64);
    assert!(orders.windows(2).all(|w| w[0] % w[1] == 0 && w[0] > w[1]));
    assert_eq!(*orders.last().unwrap(), 1);
    // generators of G(r) commute with neither translations nor each other in general
    let gens = g.generators();
    assert!(gens.iter().any(|a| gens.iter().any(|b| g.mul(a, b) != g.mul(b, a))));
}

#[test]
fn sum_product_out_of_range() {
    assert!(matches!(sum_product_check(3, 5, Algebra::GaloisField), Err(TorsionError::TooLarge(_))));
    assert!(matches!(GaloisField::new(6, 1), Err(TorsionError::NotPrime(6))));
}

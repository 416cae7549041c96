//! Finite groups given by generators and an exact multiplication, with
//! subgroup closures and the lower central series.
//!
//! The concrete family is `E ⋉ M`: `E` the additive group of `GF(pʳ)` acting
//! by translation on a module `M` of functions `E → V`.

use std::collections::{HashSet, VecDeque};
use std::hash::Hash;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{GaloisField, TorsionError};

/// Largest group order enumerated.
pub const GROUP_ORDER_CAP: usize = 10_000;

pub trait FiniteGroup {
    type Elem: Clone + Eq + Hash;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn generators(&self) -> Vec<Self::Elem>;

    /// `a⁻¹ b⁻¹ a b`.
    fn commutator(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(&self.inv(&ba), &ab)
    }
}

/// Subgroup generated by `gens`, or `TooLarge` past [`GROUP_ORDER_CAP`].
pub fn subgroup_closure<G: FiniteGroup>(g: &G, gens: &[G::Elem]) -> Result<Vec<G::Elem>, TorsionError> {
    let e = g.identity();
    let gens: Vec<G::Elem> = gens.iter().filter(|x| **x != e).cloned().collect();
    let mut seen: HashSet<G::Elem> = HashSet::from([e.clone()]);
    let mut out = vec![e.clone()];
    let mut queue = VecDeque::from([e]);
    while let Some(x) = queue.pop_front() {
        for s in &gens {
            let y = g.mul(&x, s);
            if seen.insert(y.clone()) {
                if out.len() >= GROUP_ORDER_CAP {
                    return Err(TorsionError::TooLarge(format!("group order exceeds {GROUP_ORDER_CAP}")));
                }
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(out)
}

pub fn enumerate<G: FiniteGroup>(g: &G) -> Result<Vec<G::Elem>, TorsionError> {
    subgroup_closure(g, &g.generators())
}

/// Smallest normal subgroup of `g` containing `elems`.
pub fn normal_closure<G: FiniteGroup>(g: &G, elems: &[G::Elem]) -> Result<Vec<G::Elem>, TorsionError> {
    let gens = g.generators();
    let inverses: Vec<G::Elem> = gens.iter().map(|x| g.inv(x)).collect();
    let mut seen: HashSet<G::Elem> = elems.iter().cloned().collect();
    let mut queue: VecDeque<G::Elem> = seen.iter().cloned().collect();
    while let Some(h) = queue.pop_front() {
        for (x, xi) in gens.iter().zip(&inverses) {
            let c = g.mul(&g.mul(xi, &h), x);
            if seen.insert(c.clone()) {
                if seen.len() > GROUP_ORDER_CAP {
                    return Err(TorsionError::TooLarge(format!("conjugacy orbits exceed {GROUP_ORDER_CAP}")));
                }
                queue.push_back(c);
            }
        }
    }
    subgroup_closure(g, &seen.into_iter().collect::<Vec<_>>())
}

/// Orders of `γ₁ = G ⊇ γ₂ ⊇ ⋯`, stopping at the trivial group or where the
/// series stabilizes.
pub fn lower_central_series<G: FiniteGroup>(g: &G) -> Result<Vec<usize>, TorsionError> {
    let gens = g.generators();
    let mut current = enumerate(g)?;
    let mut orders = vec![current.len()];
    while current.len() > 1 {
        let mut comms: HashSet<G::Elem> = HashSet::new();
        for x in &gens {
            for h in &current {
                comms.insert(g.commutator(x, h));
            }
        }
        let next = normal_closure(g, &comms.into_iter().collect::<Vec<_>>())?;
        if next.len() == current.len() {
            break;
        }
        orders.push(next.len());
        current = next;
    }
    Ok(orders)
}

/// Smallest `c` with `γ_{c+1} = 1`; the trivial group has class 0.
pub fn nilpotency_class<G: FiniteGroup>(g: &G) -> Result<usize, TorsionError> {
    let orders = lower_central_series(g)?;
    match orders.last() {
        Some(1) => Ok(orders.len() - 1),
        Some(&n) => Err(TorsionError::NotNilpotent(n)),
        None => unreachable!("series starts with the group"),
    }
}

/// Associativity, identity and inverses on `samples` random triples.
pub fn check_axioms<G: FiniteGroup>(g: &G, samples: usize, seed: u64) -> Result<bool, TorsionError> {
    let elems = enumerate(g)?;
    let e = g.identity();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let [a, b, c] = [0; 3].map(|_| &elems[rng.gen_range(0..elems.len())]);
        if g.mul(&g.mul(a, b), c) != g.mul(a, &g.mul(b, c)) {
            return Ok(false);
        }
        if g.mul(a, &e) != *a || g.mul(&e, a) != *a || g.mul(a, &g.inv(a)) != e {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(u, g)` acting by `(x, y) ↦ (x + u, y + g(x))`; `g` lists values at
/// `x = 0, 1, …` in the index order of the domain field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TranslationElem {
    pub u: u32,
    pub g: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct TranslationGroup {
    domain: GaloisField,
    values: GaloisField,
    gens: Vec<TranslationElem>,
    /// `add[x][u]` = index of `x + u` in the domain.
    add: Vec<Vec<u32>>,
}

impl TranslationGroup {
    pub fn new(domain: GaloisField, values: GaloisField, gens: Vec<TranslationElem>) -> TranslationGroup {
        let q = domain.order();
        let add = (0..q).map(|x| (0..q).map(|u| domain.add(x, u)).collect()).collect();
        TranslationGroup { domain, values, gens, add }
    }

    pub fn domain(&self) -> &GaloisField {
        &self.domain
    }

    pub fn values(&self) -> &GaloisField {
        &self.values
    }

    /// `x ↦ g(x + u)`.
    fn shift(&self, g: &[u32], u: u32) -> Vec<u32> {
        (0..g.len()).map(|x| g[self.add[x][u as usize] as usize]).collect()
    }

    /// Applies an element to a point of `E × V`.
    pub fn act(&self, a: &TranslationElem, x: u32, y: u32) -> (u32, u32) {
        (self.add[x as usize][a.u as usize], self.values.add(y, a.g[x as usize]))
    }
}

impl FiniteGroup for TranslationGroup {
    type Elem = TranslationElem;

    fn identity(&self) -> TranslationElem {
        TranslationElem { u: 0, g: vec![0; self.domain.order() as usize] }
    }

    /// `a ∘ b`.
    fn mul(&self, a: &TranslationElem, b: &TranslationElem) -> TranslationElem {
        let shifted = self.shift(&a.g, b.u);
        TranslationElem {
            u: self.add[a.u as usize][b.u as usize],
            g: b.g.iter().zip(&shifted).map(|(&x, &y)| self.values.add(x, y)).collect(),
        }
    }

    fn inv(&self, a: &TranslationElem) -> TranslationElem {
        let minus_u = self.domain.neg(a.u);
        TranslationElem { u: minus_u, g: self.shift(&a.g, minus_u).into_iter().map(|v| self.values.neg(v)).collect() }
    }

    fn generators(&self) -> Vec<TranslationElem> {
        self.gens.clone()
    }
}

fn translations(domain: &GaloisField) -> Vec<TranslationElem> {
    domain
        .additive_basis()
        .into_iter()
        .map(|u| TranslationElem { u, g: vec![0; domain.order() as usize] })
        .collect()
}

/// `G(r) = E ⋉ F_p[E]` with `E = (Z/p)ʳ`, generated by the translations and
/// the indicator of `0`. Its order is `pʳ · p^{pʳ}`.
pub fn build_g_r(p: u32, r: u32) -> Result<TranslationGroup, TorsionError> {
    let domain = GaloisField::new(p, r)?;
    let q = domain.order();
    let order = (p as f64).powf(q as f64) * q as f64;
    if order > GROUP_ORDER_CAP as f64 {
        return Err(TorsionError::TooLarge(format!("G({r}) over F_{p} has order {order}")));
    }
    let values = GaloisField::new(p, 1)?;
    let mut gens = translations(&domain);
    let mut delta = vec![0; q as usize];
    delta[0] = 1;
    gens.push(TranslationElem { u: 0, g: delta });
    Ok(TranslationGroup::new(domain, values, gens))
}

/// `E ⋉ M` over `A = E = GF(pʳ)`, generated by the translations and
/// `f(x) = a·x^{pʳ−1}`; `a` is an element index of `GF(pʳ)`.
pub fn build_em(p: u32, r: u32, a: u32) -> Result<TranslationGroup, TorsionError> {
    let domain = GaloisField::new(p, r)?;
    if domain.order() > 27 {
        return Err(TorsionError::TooLarge(format!("{p}^{r} exceeds 27")));
    }
    let q = domain.order();
    let a = a % q;
    let f: Vec<u32> = (0..q).map(|x| domain.mul(a, domain.pow(x, (q - 1) as u64))).collect();
    let mut gens = translations(&domain);
    gens.push(TranslationElem { u: 0, g: f });
    Ok(TranslationGroup::new(domain.clone(), domain, gens))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_r_orders_and_classes() {
        for (p, r, order, class) in [(2, 1, 8, 2), (2, 2, 64, 3), (3, 1, 81, 3)] {
            let g = build_g_r(p, r).unwrap();
            assert_eq!(enumerate(&g).unwrap().len(), order);
            assert!(check_axioms(&g, 200, 5).unwrap());
            assert_eq!(nilpotency_class(&g).unwrap(), class, "G({r}) over F_{p}");
        }
        assert!(matches!(build_g_r(3, 2), Err(TorsionError::TooLarge(_))));
    }

    #[test]
    fn g_2_1_is_dihedral() {
        // order 8, class 2, center of order 2
        let g = build_g_r(2, 1).unwrap();
        assert_eq!(lower_central_series(&g).unwrap(), vec![8, 2, 1]);
    }

    #[test]
    fn abelian_has_class_one() {
        let domain = GaloisField::new(3, 2).unwrap();
        let g = TranslationGroup::new(domain.clone(), GaloisField::new(3, 1).unwrap(), translations(&domain));
        assert_eq!(enumerate(&g).unwrap().len(), 9);
        assert_eq!(nilpotency_class(&g).unwrap(), 1);
    }

    #[test]
    fn action_matches_multiplication() {
        let g = build_g_r(3, 1).unwrap();
        let elems = enumerate(&g).unwrap();
        for a in elems.iter().step_by(7) {
            for b in elems.iter().step_by(11) {
                let ab = g.mul(a, b);
                for x in 0..3 {
                    for y in 0..3 {
                        let (x1, y1) = g.act(b, x, y);
                        assert_eq!(g.act(a, x1, y1), g.act(&ab, x, y));
                    }
                }
            }
        }
    }

    #[test]
    fn em_classes() {
        for (p, r, class) in [(2, 1, 2), (2, 2, 3), (3, 1, 3)] {
            let g = build_em(p, r, 1).unwrap();
            assert!(check_axioms(&g, 100, 9).unwrap());
            assert_eq!(nilpotency_class(&g).unwrap(), class, "E ⋉ M over GF({p}^{r})");
        }
        let g = build_em(2, 2, 2).unwrap();
        assert_eq!(nilpotency_class(&g).unwrap(), 3);
    }
}

use proptest::prelude::*;

use effrel::relcore::{flat, std_cap, std_cup, swap, unflat};
use effrel::FinRel;

fn rel(src: usize, dst: usize) -> impl Strategy<Value = FinRel> {
    proptest::collection::vec(any::<bool>(), src * dst)
        .prop_map(move |bits| FinRel::from_fn(src, dst, |i, j| bits[i * dst + j]))
}

/// Four relations `a -> b -> c -> d`, plus `e -> f`.
fn chain() -> impl Strategy<Value = (FinRel, FinRel, FinRel, FinRel)> {
    (
        0usize..5,
        0usize..5,
        0usize..5,
        0usize..5,
        0usize..4,
        0usize..4,
    )
        .prop_flat_map(|(a, b, c, d, e, f)| (rel(a, b), rel(b, c), rel(c, d), rel(e, f)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn composition_is_associative((f, g, h, _) in chain()) {
        let l = f.compose(&g).unwrap().compose(&h).unwrap();
        let r = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn identities_are_units((f, _, _, _) in chain()) {
        let a = f.src().size();
        let b = f.dst().size();
        prop_assert_eq!(FinRel::identity(a).compose(&f).unwrap(), f.clone());
        prop_assert_eq!(f.compose(&FinRel::identity(b)).unwrap(), f);
    }

    #[test]
    fn dagger_is_an_involutive_antihomomorphism((f, g, _, _) in chain()) {
        prop_assert_eq!(f.dagger().dagger(), f.clone());
        let l = f.compose(&g).unwrap().dagger();
        let r = g.dagger().compose(&f.dagger()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn tensor_interchange((f, g, _, k) in chain()) {
        // (f ; g) ⊗ (k ; k‡) = (f ⊗ k) ; (g ⊗ k‡)
        let kk = k.compose(&k.dagger()).unwrap();
        let l = f.compose(&g).unwrap().tensor(&kk);
        let r = f.tensor(&k).compose(&g.tensor(&k.dagger())).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn tensor_is_pointwise((f, _, _, k) in chain()) {
        let t = f.tensor(&k);
        let (kn, km) = (k.src().size(), k.dst().size());
        for i in 0..t.src().size() {
            for j in 0..t.dst().size() {
                prop_assert_eq!(t.get(i, j), f.get(i / kn, j / km) && k.get(i % kn, j % km));
            }
        }
    }

    #[test]
    fn dagger_commutes_with_tensor((f, _, _, k) in chain()) {
        prop_assert_eq!(f.tensor(&k).dagger(), f.dagger().tensor(&k.dagger()));
    }

    #[test]
    fn swap_is_natural((f, _, _, k) in chain()) {
        let (a, b) = (f.src().size(), f.dst().size());
        let (c, d) = (k.src().size(), k.dst().size());
        let l = f.tensor(&k).compose(&swap(b, d)).unwrap();
        let r = swap(a, c).compose(&k.tensor(&f)).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn lattice_laws((f, _, _, _) in chain(), seed in any::<u64>()) {
        let (a, b) = (f.src().size(), f.dst().size());
        let g = FinRel::from_fn(a, b, |i, j| (seed >> ((i * b + j) % 64)) & 1 == 1);
        let meet = f.meet(&g).unwrap();
        let join = f.join(&g).unwrap();
        prop_assert!(meet.leq(&f).unwrap() && meet.leq(&g).unwrap());
        prop_assert!(f.leq(&join).unwrap() && g.leq(&join).unwrap());
        prop_assert_eq!(f.meet(&join).unwrap(), f.clone());
        prop_assert_eq!(f.leq(&g).unwrap(), meet == f);
    }

    #[test]
    fn composition_is_monotone((f, g, _, _) in chain(), mask in any::<u64>()) {
        let (b, c) = (g.src().size(), g.dst().size());
        let smaller = g.meet(&FinRel::from_fn(b, c, |i, j| mask >> ((i * c + j) % 64) & 1 == 1)).unwrap();
        prop_assert!(f.compose(&smaller).unwrap().leq(&f.compose(&g).unwrap()).unwrap());
    }

    #[test]
    fn json_round_trip((f, _, _, _) in chain()) {
        let text = serde_json::to_string(&f).unwrap();
        let back: FinRel = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn flat_inverts_unflat(n in 1usize..6, k in 0u32..4, seed in any::<usize>()) {
        let total = n.pow(k);
        let index = seed % total.max(1);
        let tuple = unflat(index, n, k as usize);
        prop_assert_eq!(tuple.len(), k as usize);
        prop_assert_eq!(flat(&tuple, n), index);
    }
}

#[test]
fn snakes_for_every_small_object() {
    for n in 0..=7 {
        let id = FinRel::identity(n);
        let cup = std_cup(n);
        let cap = std_cap(n);
        let l = id.tensor(&cup).compose(&cap.tensor(&id)).unwrap();
        let r = cup.tensor(&id).compose(&id.tensor(&cap)).unwrap();
        assert_eq!(l, id);
        assert_eq!(r, id);
    }
}

#[test]
fn compose_rejects_mismatched_endpoints() {
    let f = FinRel::empty(2, 3);
    let g = FinRel::empty(2, 2);
    assert!(f.compose(&g).is_err());
    assert!(f.meet(&g).is_err());
}

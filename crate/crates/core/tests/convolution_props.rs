mod common;

use proptest::prelude::*;

use effrel::classical::{enumerate_classical, validate_classical, ClassicalStructure};
use effrel::convolution::{
    check_sveq, is_map, is_single_valued, is_single_valued_preorder, is_total, is_total_preorder,
    HomConvolution, PreorderReading,
};
use effrel::search::lemmas::partial_maps;
use effrel::FinRel;

use common::{all_relations, group_convolution};

fn structures() -> Vec<ClassicalStructure> {
    (0..=3)
        .flat_map(|n| enumerate_classical(n).unwrap())
        .collect()
}

fn structure_and_rels() -> impl Strategy<Value = (ClassicalStructure, FinRel, FinRel, FinRel)> {
    let all = structures();
    (0..all.len()).prop_flat_map(move |k| {
        let cs = all[k].clone();
        let n = cs.size();
        let bits = proptest::collection::vec(any::<bool>(), 3 * n * n);
        bits.prop_map(move |b| {
            let r = |o: usize| FinRel::from_fn(n, n, |i, j| b[o + i * n + j]);
            (cs.clone(), r(0), r(n * n), r(2 * n * n))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn convolution_is_a_commutative_monoid((cs, f, g, h) in structure_and_rels()) {
        let ctx = HomConvolution::from_classical(&cs, &cs);
        let fg = ctx.convolve(&f, &g).unwrap();
        prop_assert_eq!(&fg, &ctx.convolve(&g, &f).unwrap());
        let l = ctx.convolve(&fg, &h).unwrap();
        let r = ctx.convolve(&f, &ctx.convolve(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(l, r);
        let unit = ctx.conv_unit();
        prop_assert_eq!(ctx.convolve(&f, &unit).unwrap(), f);
    }

    #[test]
    fn convolution_matches_group_formula((cs, f, g, _) in structure_and_rels()) {
        let ctx = HomConvolution::from_classical(&cs, &cs);
        prop_assert_eq!(ctx.convolve(&f, &g).unwrap(), group_convolution(&cs, &f, &g));
    }

    #[test]
    fn convolution_is_monotone((cs, f, g, h) in structure_and_rels()) {
        let ctx = HomConvolution::from_classical(&cs, &cs);
        let small = f.meet(&h).unwrap();
        let lhs = ctx.convolve(&small, &g).unwrap();
        prop_assert!(lhs.leq(&ctx.convolve(&f, &g).unwrap()).unwrap());
    }
}

#[test]
fn every_enumerated_structure_validates() {
    for cs in (0..=4).flat_map(|n| enumerate_classical(n).unwrap()) {
        let report = validate_classical(&cs).unwrap();
        assert!(report.all_pass(), "{cs:?}: {report}");
    }
}

#[test]
fn map_predicates_match_pointwise_definitions() {
    for a in 0..=3 {
        for b in 0..=3 {
            let (sa, sb) = (
                ClassicalStructure::standard(a),
                ClassicalStructure::standard(b),
            );
            for f in all_relations(a, b) {
                let total = (0..a).all(|i| f.image(i).count() >= 1);
                let single = (0..a).all(|i| f.image(i).count() <= 1);
                assert_eq!(is_total(&f, &sa, &sb).unwrap(), total, "{f:?}");
                assert_eq!(is_single_valued(&f, &sa, &sb).unwrap(), single, "{f:?}");
                assert_eq!(is_map(&f, &sa, &sb).unwrap(), total && single);
                // the inclusion reading of the preorder agrees with both
                let inc = PreorderReading::Inclusion;
                assert_eq!(is_total_preorder(&f, &sa, inc).unwrap(), total);
                assert_eq!(is_single_valued_preorder(&f, &sb, inc).unwrap(), single);
            }
        }
    }
}

#[test]
fn convolution_preorder_reading_measures_injectivity() {
    // for the standard structure x ≤ y under convolution means y ⊆ x, so
    // the totality predicate asks for f‡∘f ⊆ id, i.e. injectivity
    for n in 1..=3 {
        let s = ClassicalStructure::standard(n);
        for f in all_relations(n, n) {
            let injective =
                (0..n).all(|i| (0..n).all(|j| j == i || f.image(i).all(|y| !f.get(j, y))));
            let conv = is_total_preorder(&f, &s, PreorderReading::Convolution).unwrap();
            assert_eq!(conv, injective, "{f:?}");
        }
    }
}

#[test]
fn one_sided_sveq_reading_fails_for_strict_inclusion() {
    let (a, b) = (
        ClassicalStructure::standard(2),
        ClassicalStructure::standard(2),
    );
    let f = FinRel::from_partial_map(2, &[Some(0), None]).unwrap();
    let g = FinRel::from_partial_map(2, &[Some(0), Some(1)]).unwrap();
    let report = check_sveq(&f, &g, &a, &b).unwrap();
    assert!(report.get("sveq-identity").unwrap().pass);
    assert!(report.get("sveq-inclusion").unwrap().pass);
    assert!(report.get("sveq-symmetric").unwrap().pass);
    assert!(!report.get("sveq-one-sided").unwrap().pass);
}

#[test]
fn one_sided_sveq_fails_exactly_on_strict_inclusions() {
    for n in 1..=3 {
        let s = ClassicalStructure::standard(n);
        let maps = partial_maps(n, n);
        for f in &maps {
            for g in &maps {
                let row = check_sveq(f, g, &s, &s).unwrap();
                let strict = f.leq(g).unwrap() && f != g;
                assert_eq!(!row.get("sveq-one-sided").unwrap().pass, strict);
            }
        }
    }
}

//! Exhaustive checks of the supporting lemmas on small carriers.

use serde::{Deserialize, Serialize};

use super::monoids::{comm_relational_monoids, comm_single_valued_monoids};
use super::{enumerate_tables, SizeLimit};
use crate::classical::ClassicalStructure;
use crate::convolution::{check_sveq, is_special, ConvolutionAlgebra};
use crate::effectlaw::table_to_ortho;
use crate::error::Result;
use crate::frobmod::frobenius_variants_hold;
use crate::ortho::{demorgan_dual, derive_neg, derive_one, is_orthocomplement, is_unbiased};
use crate::relcore::FinRel;

/// Carrier bound for the suites over arbitrary relations.
pub const LEMMA_RELATION_BOUND: usize = 3;
/// Carrier bound for the suites over single-valued monoids.
pub const LEMMA_MONOID_BOUND: usize = 4;

/// Tally of one suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaOutcome {
    pub lemma: String,
    pub max_size: usize,
    pub cases: usize,
    pub failures: usize,
    /// First failing case.
    pub witness: Option<String>,
}

impl LemmaOutcome {
    fn new(lemma: &str, max_size: usize) -> Self {
        LemmaOutcome {
            lemma: lemma.into(),
            max_size,
            cases: 0,
            failures: 0,
            witness: None,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }

    pub fn pass(&self) -> bool {
        self.failures == 0
    }
}

/// All partial maps `0..a -> 0..b` as relations.
pub fn partial_maps(a: usize, b: usize) -> Vec<FinRel> {
    let choices = b + 1;
    (0..choices.pow(a as u32))
        .map(|mut code| {
            let map: Vec<Option<usize>> = (0..a)
                .map(|_| {
                    let c = code % choices;
                    code /= choices;
                    (c < b).then_some(c)
                })
                .collect();
            FinRel::from_partial_map(b, &map).expect("values below b")
        })
        .collect()
}

/// Involutive permutations of `0..n` as relations.
pub fn involutions(n: usize) -> Vec<FinRel> {
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; n];
    fn go(i: usize, map: &mut Vec<usize>, out: &mut Vec<FinRel>) {
        let n = map.len();
        if i == n {
            let pm: Vec<Option<usize>> = map.iter().map(|&v| Some(v)).collect();
            out.push(FinRel::from_partial_map(n, &pm).expect("a permutation"));
            return;
        }
        if map[i] != usize::MAX {
            return go(i + 1, map, out);
        }
        for j in i..n {
            if map[j] == usize::MAX {
                map[i] = j;
                map[j] = i;
                go(i + 1, map, out);
                map[i] = usize::MAX;
                map[j] = usize::MAX;
            }
        }
    }
    go(0, &mut map, &mut out);
    out
}

/// The three readings of the single-valued equality criterion that hold,
/// over all pairs of partial maps between standard carriers of size `≤ max_n`.
pub fn sveq_suite(max_n: usize) -> Result<Vec<LemmaOutcome>> {
    let max_n = max_n.min(LEMMA_RELATION_BOUND);
    let names = ["sveq-identity", "sveq-inclusion", "sveq-symmetric"];
    let mut outcomes: Vec<LemmaOutcome> =
        names.iter().map(|n| LemmaOutcome::new(n, max_n)).collect();
    for a in 1..=max_n {
        for b in 1..=max_n {
            let (sa, sb) = (
                ClassicalStructure::standard(a),
                ClassicalStructure::standard(b),
            );
            let maps = partial_maps(a, b);
            for f in &maps {
                for g in &maps {
                    let report = check_sveq(f, g, &sa, &sb)?;
                    for (name, outcome) in names.iter().zip(outcomes.iter_mut()) {
                        let row = report.get(name).expect("row present");
                        outcome.record(row.pass, || row.witness.clone().unwrap_or_default());
                    }
                }
            }
        }
    }
    Ok(outcomes)
}

/// `⊛` single-valued iff `(⊛, 0, ⊛‡, 0‡)` is special, over every commutative
/// monoid relation on carriers of size `≤ max_n`.
pub fn sing_spec_suite(max_n: usize) -> Result<LemmaOutcome> {
    let max_n = max_n.min(LEMMA_RELATION_BOUND);
    let mut out = LemmaOutcome::new("sing-spec", max_n);
    for n in 0..=max_n {
        for m in comm_relational_monoids(n)? {
            let ca = ConvolutionAlgebra::from_monoids(n, m.op(), m.zero(), m.op(), m.zero())?;
            let sv = m.is_single_valued();
            let sp = is_special(&ca);
            out.record(sv == sp, || {
                format!("single-valued={sv} special={sp} op={:?}", m.op().pairs())
            });
        }
    }
    Ok(out)
}

/// Over every single-valued commutative monoid on carriers of size `≤ max_n`:
/// unbiased vectors and orthocomplements correspond, and the De Morgan dual
/// is a commutative monoid whose own dual is the original.
pub fn ortho_suites(max_n: usize) -> Result<Vec<LemmaOutcome>> {
    let max_n = max_n.min(LEMMA_MONOID_BOUND);
    let mut bijection = LemmaOutcome::new("ortho-bijection", max_n);
    let mut de_morgan = LemmaOutcome::new("de-morgan", max_n);
    for n in 0..=max_n {
        let invs = involutions(n);
        for m in comm_single_valued_monoids(n)? {
            let mut unbiased = 0;
            for mask in 0u64..1 << n {
                let iota = FinRel::from_mask(1, n, mask);
                if !is_unbiased(&m, &iota)? {
                    continue;
                }
                unbiased += 1;
                let neg = derive_neg(&m, &iota)?;
                let round = is_orthocomplement(&m, &neg) && derive_one(&m, &neg)? == iota;
                bijection.record(round, || {
                    format!("ι={:?} op={:?}", iota.vector_support(), m.op().pairs())
                });
                let dual = demorgan_dual(&m, &neg);
                let ok = match &dual {
                    Ok(d) => demorgan_dual(d, &neg).is_ok_and(|dd| dd == m),
                    Err(_) => false,
                };
                de_morgan.record(ok, || {
                    format!("¬={:?} op={:?}", neg.pairs(), m.op().pairs())
                });
            }
            // a relation with ¬∘¬ = id is a permutation, so involutions suffice
            let complements = invs
                .iter()
                .filter(|neg| is_orthocomplement(&m, neg))
                .count();
            bijection.record(complements == unbiased, || {
                format!(
                    "{unbiased} unbiased vectors, {complements} orthocomplements, op={:?}",
                    m.op().pairs()
                )
            });
        }
    }
    Ok(vec![bijection, de_morgan])
}

/// The four forms of the Frobenius condition agree on every effect algebra of
/// size `≤ max_n`.
pub fn frobenius_forms_suite(max_n: usize, limit: SizeLimit) -> Result<LemmaOutcome> {
    limit.check(max_n)?;
    let mut out = LemmaOutcome::new("frobenius-forms", max_n);
    for n in 1..=max_n {
        for t in enumerate_tables(n, limit)? {
            let report = frobenius_variants_hold(&table_to_ortho(&t)?);
            let row = report.get("frobenius-forms-agree").expect("row present");
            out.record(row.pass, || format!("{t:?}"));
        }
    }
    Ok(out)
}

/// Every suite, in a fixed order.
pub fn all_suites(max_n: usize, limit: SizeLimit) -> Result<Vec<LemmaOutcome>> {
    let mut out = sveq_suite(max_n)?;
    out.push(sing_spec_suite(max_n)?);
    out.extend(ortho_suites(max_n)?);
    out.push(frobenius_forms_suite(max_n, limit)?);
    Ok(out)
}

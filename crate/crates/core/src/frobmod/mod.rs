//! The Frobenius condition between `⊛` and `⊙‡`, its bent variants, and
//! modularity in pointwise and relational form.

pub mod wiring;

use serde::{Deserialize, Serialize};

use crate::effectlaw::{is_superspecial, relation_to_table, PartialBinOpTable};
use crate::error::{Error, Result};
use crate::ortho::OrthoAlgebra;
use crate::relcore::FinRel;
use crate::report::{LawRow, Report};

use wiring::{evaluate, Interpretation, Wiring};

/// `u ≤ w` iff `u ⊛ v = w` for some `v`.
pub fn elem_leq(t: &PartialBinOpTable, u: usize, w: usize) -> Result<bool> {
    let n = t.size();
    for x in [u, w] {
        if x >= n {
            return Err(Error::IndexOutOfRange { index: x, size: n });
        }
    }
    Ok((0..n).any(|v| t.get(u, v) == Some(w)))
}

fn require_neg(t: &PartialBinOpTable) -> Result<Vec<usize>> {
    t.derived_neg()
        .ok_or_else(|| Error::Precondition("table has no well-defined complement".into()))
}

/// Least triple `(x, y, z)` with `x ≤ ¬y ≤ z` on which `(x⊛y)⊙z` and
/// `x⊛(y⊙z)` are not Kleene-equal; `None` when the table is modular.
pub fn modularity_counterexample(t: &PartialBinOpTable) -> Result<Option<(usize, usize, usize)>> {
    let neg = require_neg(t)?;
    let n = t.size();
    let leq = |u: usize, w: usize| (0..n).any(|v| t.get(u, v) == Some(w));
    let wedge = |a: Option<usize>, b: Option<usize>| t.wedge_with(&neg, a?, b?);
    for x in 0..n {
        for (y, &ny) in neg.iter().enumerate() {
            if !leq(x, ny) {
                continue;
            }
            for z in 0..n {
                if !leq(ny, z) {
                    continue;
                }
                let l = wedge(t.get(x, y), Some(z));
                let r = t.plus(Some(x), wedge(Some(y), Some(z)));
                if l != r {
                    return Ok(Some((x, y, z)));
                }
            }
        }
    }
    Ok(None)
}

pub fn is_modular_pointwise(t: &PartialBinOpTable) -> Result<bool> {
    Ok(modularity_counterexample(t)?.is_none())
}

fn interpretation(alg: &OrthoAlgebra) -> Interpretation<'_> {
    Interpretation {
        n: alg.size(),
        generators: [
            ("plus", alg.plus()),
            ("wedge", alg.wedge()),
            ("neg", alg.neg()),
            ("zero", alg.zero()),
            ("one", alg.one()),
        ]
        .into_iter()
        .collect(),
    }
}

/// Evaluates one named equation of the bundled wiring table.
pub fn equation_holds(alg: &OrthoAlgebra, name: &str) -> Result<bool> {
    let eq = Wiring::standard().equation(name)?;
    let (lhs, rhs) = evaluate(eq, &interpretation(alg))?;
    Ok(lhs == rhs)
}

fn holds(alg: &OrthoAlgebra, name: &str) -> bool {
    equation_holds(alg, name).expect("bundled equation names are valid")
}

/// Relational modularity over the pair `(x, z)`.
pub fn is_modular_relational(alg: &OrthoAlgebra) -> bool {
    holds(alg, "modular")
}

/// Relational modularity with the middle wire exposed.
pub fn is_modular_open_middle(alg: &OrthoAlgebra) -> bool {
    holds(alg, "modular-open-middle")
}

/// `⊙‡ ∘ ⊛ = (⊛ ⊗ id) ∘ (id ⊗ ⊙‡)`.
pub fn frobenius_holds(alg: &OrthoAlgebra) -> bool {
    holds(alg, "frobenius")
}

/// The same equation assembled directly from compose, tensor and dagger.
pub fn frobenius_composites(alg: &OrthoAlgebra) -> Result<(FinRel, FinRel)> {
    let id = FinRel::identity(alg.size());
    let co = alg.wedge().dagger();
    let lhs = alg.plus().compose(&co)?;
    let rhs = id.tensor(&co).compose(&alg.plus().tensor(&id))?;
    Ok((lhs, rhs))
}

/// The Frobenius equation, its mirror image and both bent forms, plus a row
/// asserting that all four agree.
pub fn frobenius_variants_hold(alg: &OrthoAlgebra) -> Report {
    let names = [
        "frobenius",
        "frobenius-mirrored",
        "frobenius-bent-1",
        "frobenius-bent-2",
    ];
    let values: Vec<bool> = names.iter().map(|n| holds(alg, n)).collect();
    let mut report: Report = names
        .iter()
        .zip(&values)
        .map(|(name, &v)| LawRow::check(*name, v, || "sides differ".into()))
        .collect();
    let agree = values.iter().all(|&v| v == values[0]);
    report.push(LawRow::check("frobenius-forms-agree", agree, || {
        format!("{names:?} = {values:?}")
    }));
    report
}

/// Both sides of the Frobenius/modularity equivalence on a superspecial algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollaryRecord {
    pub frobenius: bool,
    pub modular: bool,
    pub agree: bool,
    /// Relational modularity, compared with the Frobenius condition.
    pub relational_modular: bool,
    pub relational_agree: bool,
    pub witness: Option<String>,
}

/// Requires a superspecial algebra.
pub fn verify_corollary(alg: &OrthoAlgebra) -> Result<CorollaryRecord> {
    if !is_superspecial(alg) {
        return Err(Error::Precondition("algebra is not superspecial".into()));
    }
    let table = relation_to_table(alg.monoid(), alg.one())?;
    verify_corollary_with_table(alg, &table)
}

/// As [`verify_corollary`], with the table supplied and superspecialty
/// already established by the caller.
pub fn verify_corollary_with_table(
    alg: &OrthoAlgebra,
    table: &PartialBinOpTable,
) -> Result<CorollaryRecord> {
    let frobenius = frobenius_holds(alg);
    let counterexample = modularity_counterexample(table)?;
    let modular = counterexample.is_none();
    let relational_modular = is_modular_relational(alg);
    Ok(CorollaryRecord {
        frobenius,
        modular,
        agree: frobenius == modular,
        relational_modular,
        relational_agree: frobenius == relational_modular,
        witness: counterexample.map(|(x, y, z)| format!("x={x} y={y} z={z}")),
    })
}

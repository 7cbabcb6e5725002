//! Orthocomplements, unbiased vectors and De Morgan duals of commutative
//! monoids in `Rel`.
//!
//! Throughout, the ambient self-duality on the carrier is the standard
//! copy/compare structure.

use serde::{Deserialize, Serialize};

use crate::classical::ClassicalStructure;
use crate::convolution::is_unitary;
use crate::error::{Error, Result};
use crate::monoid::{comm_monoid_report, equation_row};
use crate::relcore::{covector_to_operator, name_to_operator, FinObj, FinRel};
use crate::report::{LawRow, Report};

/// A commutative monoid `(⊛, 0)` on a finite carrier, as relations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MonoidJson", into = "MonoidJson")]
pub struct CommMonoidRel {
    carrier: FinObj,
    op: FinRel,
    zero: FinRel,
}

#[derive(Serialize, Deserialize)]
struct MonoidJson {
    carrier: usize,
    op: FinRel,
    zero: FinRel,
}

impl TryFrom<MonoidJson> for CommMonoidRel {
    type Error = Error;
    fn try_from(j: MonoidJson) -> Result<Self> {
        CommMonoidRel::new(j.carrier, j.op, j.zero)
    }
}

impl From<CommMonoidRel> for MonoidJson {
    fn from(m: CommMonoidRel) -> Self {
        MonoidJson {
            carrier: m.carrier.size(),
            op: m.op,
            zero: m.zero,
        }
    }
}

impl CommMonoidRel {
    pub fn new(carrier: impl Into<FinObj>, op: FinRel, zero: FinRel) -> Result<Self> {
        let carrier = carrier.into();
        let report = comm_monoid_report("", carrier.size(), &op, &zero)
            .map_err(|e| Error::InvalidMonoid(e.to_string()))?;
        if let Some(bad) = report.failures().next() {
            return Err(Error::InvalidMonoid(format!(
                "{} fails: {}",
                bad.law,
                bad.witness.as_deref().unwrap_or("")
            )));
        }
        Ok(CommMonoidRel { carrier, op, zero })
    }

    /// Skips the law checks; the caller guarantees them.
    pub(crate) fn new_trusted(n: usize, op: FinRel, zero: FinRel) -> Self {
        CommMonoidRel {
            carrier: FinObj::new(n),
            op,
            zero,
        }
    }

    /// `(▽, ¡)` of a classical structure.
    pub fn from_classical(cs: &ClassicalStructure) -> Self {
        CommMonoidRel::new_trusted(cs.size(), cs.mult(), cs.unit())
    }

    pub fn size(&self) -> usize {
        self.carrier.size()
    }

    pub fn carrier(&self) -> &FinObj {
        &self.carrier
    }

    pub fn op(&self) -> &FinRel {
        &self.op
    }

    pub fn zero(&self) -> &FinRel {
        &self.zero
    }

    pub fn is_single_valued(&self) -> bool {
        self.op.is_functional()
    }
}

fn check_vector(m: &CommMonoidRel, v: &FinRel, what: &'static str) -> Result<()> {
    if v.src().size() != 1 || v.dst().size() != m.size() {
        return Err(Error::DimensionMismatch {
            op: what,
            left: v.dst().size(),
            right: m.size(),
        });
    }
    Ok(())
}

fn check_endo(m: &CommMonoidRel, e: &FinRel, what: &'static str) -> Result<()> {
    if e.src().size() != m.size() || e.dst().size() != m.size() {
        return Err(Error::NotSquare {
            op: what,
            src: e.src().size(),
            dst: e.dst().size(),
        });
    }
    Ok(())
}

/// `η = ⊛‡ ∘ ι : I -> A ⊗ A`.
pub fn entangler(m: &CommMonoidRel, iota: &FinRel) -> Result<FinRel> {
    check_vector(m, iota, "entangler")?;
    iota.compose(&m.op.dagger())
}

/// Whether `⊛‡ ∘ ι` satisfies both snake equations.
pub fn is_unbiased(m: &CommMonoidRel, iota: &FinRel) -> Result<bool> {
    let eta = entangler(m, iota)?;
    let n = m.size();
    let id = FinRel::identity(n);
    let left = id.tensor(&eta).compose(&eta.dagger().tensor(&id))?;
    let right = eta.tensor(&id).compose(&id.tensor(&eta.dagger()))?;
    Ok(left == id && right == id)
}

/// `x ¬ y` iff `ι ∈ x ⊛ y`.
pub fn derive_neg(m: &CommMonoidRel, one: &FinRel) -> Result<FinRel> {
    if !is_unbiased(m, one)? {
        return Err(Error::NotUnbiased);
    }
    name_to_operator(&entangler(m, one)?, m.carrier())
}

/// The relation `x ↦ {y : ι ∈ ¬x ⊛ y}` obtained by bending `ι‡ ∘ ⊛ ∘ (¬ ⊗ id)`.
/// The orthocomplement law asks for it to be the identity.
pub fn complement_operator(m: &CommMonoidRel, neg: &FinRel, iota: &FinRel) -> Result<FinRel> {
    check_endo(m, neg, "complement_operator")?;
    check_vector(m, iota, "complement_operator")?;
    let n = m.size();
    let covector = neg
        .tensor(&FinRel::identity(n))
        .compose(&m.op)?
        .compose(&iota.dagger())?;
    covector_to_operator(&covector, m.carrier())
}

/// The same law with `¬` on the other input of `⊛`. By commutativity this
/// is the converse of [`complement_operator`], so both laws hold together.
pub fn complement_operator_mirrored(
    m: &CommMonoidRel,
    neg: &FinRel,
    iota: &FinRel,
) -> Result<FinRel> {
    check_endo(m, neg, "complement_operator")?;
    check_vector(m, iota, "complement_operator")?;
    let n = m.size();
    let covector = FinRel::identity(n)
        .tensor(neg)
        .compose(&m.op)?
        .compose(&iota.dagger())?;
    covector_to_operator(&covector, m.carrier())
}

/// The unit `ι = ¬ ∘ 0` determined by a candidate orthocomplement, provided
/// the orthocomplement law holds for it.
pub fn derive_one(m: &CommMonoidRel, neg: &FinRel) -> Result<FinRel> {
    check_endo(m, neg, "derive_one")?;
    let iota = m.zero.compose(neg)?;
    if complement_operator(m, neg, &iota)? != FinRel::identity(m.size()) {
        return Err(Error::NoConsistentUnit(format!(
            "¬∘0 = {:?} does not satisfy the complement law",
            iota.vector_support()
        )));
    }
    Ok(iota)
}

/// The pointwise reading `x ⊛ ¬x = ι` for a constant singleton `ι`, i.e.
/// `⊛ ∘ (id ⊗ ¬) ∘ ▲ = ι ∘ !` for the standard copy `▲`.
pub fn constant_complement_unit(m: &CommMonoidRel, neg: &FinRel) -> Result<FinRel> {
    check_endo(m, neg, "constant_complement_unit")?;
    let n = m.size();
    let copy = ClassicalStructure::standard(n).copy();
    let sums = copy
        .compose(&FinRel::identity(n).tensor(neg))?
        .compose(&m.op)?;
    let mut value = None;
    for x in 0..n {
        let img: Vec<usize> = sums.image(x).collect();
        match (img.as_slice(), value) {
            ([v], None) => value = Some(*v),
            ([v], Some(u)) if *v == u => {}
            _ => {
                return Err(Error::NoConsistentUnit(format!(
                    "x ⊛ ¬x = {img:?} at x = {x}"
                )))
            }
        }
    }
    FinRel::from_pairs(1, n, value.map(|v| (0, v)))
}

pub fn is_orthocomplement(m: &CommMonoidRel, neg: &FinRel) -> bool {
    if check_endo(m, neg, "is_orthocomplement").is_err() {
        return false;
    }
    let involutive = neg.compose(neg).map(|nn| nn == FinRel::identity(m.size()));
    matches!(involutive, Ok(true)) && derive_one(m, neg).is_ok()
}

/// `⊙ = ¬ ∘ ⊛ ∘ (¬ ⊗ ¬)`.
pub fn de_morgan_op(m: &CommMonoidRel, neg: &FinRel) -> Result<FinRel> {
    check_endo(m, neg, "de_morgan_op")?;
    neg.tensor(neg).compose(&m.op)?.compose(neg)
}

/// `(A, ⊙, ¬∘0)`.
pub fn demorgan_dual(m: &CommMonoidRel, neg: &FinRel) -> Result<CommMonoidRel> {
    if !is_orthocomplement(m, neg) {
        return Err(Error::Precondition("not an orthocomplement".into()));
    }
    let one = derive_one(m, neg)?;
    CommMonoidRel::new(m.size(), de_morgan_op(m, neg)?, one)
}

/// `(A, ⊛, ⊙, 0, 1, ¬)` as relations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrthoAlgebra {
    monoid: CommMonoidRel,
    one: FinRel,
    neg: FinRel,
    wedge: FinRel,
}

#[derive(Deserialize)]
struct OrthoJson {
    monoid: CommMonoidRel,
    one: FinRel,
    neg: FinRel,
    #[serde(default)]
    wedge: Option<FinRel>,
}

impl<'de> Deserialize<'de> for OrthoAlgebra {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = OrthoJson::deserialize(d)?;
        let wedge = match j.wedge {
            Some(w) => w,
            None => de_morgan_op(&j.monoid, &j.neg).map_err(serde::de::Error::custom)?,
        };
        OrthoAlgebra::new(j.monoid, j.one, j.neg, wedge).map_err(serde::de::Error::custom)
    }
}

impl OrthoAlgebra {
    pub fn new(monoid: CommMonoidRel, one: FinRel, neg: FinRel, wedge: FinRel) -> Result<Self> {
        let alg = OrthoAlgebra::new_unchecked(monoid, one, neg, wedge)?;
        let report = validate_ortho_algebra(&alg);
        if let Some(bad) = report.failures().next() {
            return Err(Error::InvalidOrthoAlgebra(format!(
                "{} fails: {}",
                bad.law,
                bad.witness.as_deref().unwrap_or("")
            )));
        }
        Ok(alg)
    }

    /// Checks shapes only; [`validate_ortho_algebra`] reports the laws.
    pub fn new_unchecked(
        monoid: CommMonoidRel,
        one: FinRel,
        neg: FinRel,
        wedge: FinRel,
    ) -> Result<Self> {
        let n = monoid.size();
        check_vector(&monoid, &one, "one")?;
        check_endo(&monoid, &neg, "neg")?;
        if wedge.src().size() != n * n || wedge.dst().size() != n {
            return Err(Error::DimensionMismatch {
                op: "wedge",
                left: wedge.dst().size(),
                right: n,
            });
        }
        Ok(OrthoAlgebra {
            monoid,
            one,
            neg,
            wedge,
        })
    }

    /// Derives `¬` and `⊙` from an unbiased `one`.
    pub fn from_monoid_and_one(monoid: CommMonoidRel, one: FinRel) -> Result<Self> {
        let neg = derive_neg(&monoid, &one)?;
        let wedge = de_morgan_op(&monoid, &neg)?;
        OrthoAlgebra::new(monoid, one, neg, wedge)
    }

    pub fn size(&self) -> usize {
        self.monoid.size()
    }

    pub fn monoid(&self) -> &CommMonoidRel {
        &self.monoid
    }

    pub fn plus(&self) -> &FinRel {
        self.monoid.op()
    }

    pub fn zero(&self) -> &FinRel {
        self.monoid.zero()
    }

    pub fn one(&self) -> &FinRel {
        &self.one
    }

    pub fn neg(&self) -> &FinRel {
        &self.neg
    }

    pub fn wedge(&self) -> &FinRel {
        &self.wedge
    }

    /// The De Morgan dual `(A, ⊙, ⊛, 1, 0, ¬)`.
    pub fn dual(&self) -> OrthoAlgebra {
        OrthoAlgebra {
            monoid: CommMonoidRel::new_trusted(self.size(), self.wedge.clone(), self.one.clone()),
            one: self.zero().clone(),
            neg: self.neg.clone(),
            wedge: self.plus().clone(),
        }
    }
}

/// Re-checks every law of an orthocomplemented algebra, for both monoids.
pub fn validate_ortho_algebra(alg: &OrthoAlgebra) -> Report {
    let n = alg.size();
    let id = FinRel::identity(n);
    let mut report = Report::new();
    let monoid_laws =
        comm_monoid_report("plus-", n, alg.plus(), alg.zero()).expect("shapes checked");
    report.extend(monoid_laws);
    let nn = alg.neg.compose(&alg.neg).expect("square");
    report.push(equation_row("neg-involution", &nn, &id));
    report.push(LawRow::check(
        "neg-map",
        alg.neg.is_functional() && alg.neg.is_left_total(),
        || format!("neg = {:?}", alg.neg.pairs()),
    ));
    report.push(LawRow::check("zero-total", !alg.zero().is_empty(), || {
        "0 is empty".into()
    }));
    report.push(LawRow::check("one-total", !alg.one.is_empty(), || {
        "1 is empty".into()
    }));
    report.push(LawRow::check(
        "one-unbiased",
        is_unbiased(&alg.monoid, &alg.one).unwrap_or(false),
        || format!("1 = {:?}", alg.one.vector_support()),
    ));
    let comp = complement_operator(&alg.monoid, &alg.neg, &alg.one).expect("shapes checked");
    report.push(equation_row("orthocomplement", &comp, &id));
    let unit_from_neg = alg.zero().compose(&alg.neg).expect("shapes checked");
    report.push(equation_row("one-is-neg-zero", &unit_from_neg, &alg.one));
    let wedge = de_morgan_op(&alg.monoid, &alg.neg).expect("shapes checked");
    report.push(equation_row("de-morgan", &alg.wedge, &wedge));

    let dual = CommMonoidRel::new_trusted(n, alg.wedge.clone(), alg.one.clone());
    report.extend(comm_monoid_report("wedge-", n, &alg.wedge, &alg.one).expect("shapes checked"));
    report.push(LawRow::check(
        "zero-unbiased-for-wedge",
        is_unbiased(&dual, alg.zero()).unwrap_or(false),
        || format!("0 = {:?}", alg.zero().vector_support()),
    ));
    let dual_comp = complement_operator(&dual, &alg.neg, alg.zero()).expect("shapes checked");
    report.push(equation_row("wedge-orthocomplement", &dual_comp, &id));
    report
}

/// `⊛‡ ∘ ι` bent into an operator, then checked against the snake form:
/// both snakes hold iff this operator is unitary.
pub fn unbiased_via_operator(m: &CommMonoidRel, iota: &FinRel) -> Result<bool> {
    let eta = entangler(m, iota)?;
    is_unitary(&name_to_operator(&eta, m.carrier())?)
}

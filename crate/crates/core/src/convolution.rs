//! Convolution on hom-sets, the convolution preorder, map predicates and the
//! special/antispecial tests.

use serde::{Deserialize, Serialize};

use crate::classical::ClassicalStructure;
use crate::error::{Error, Result};
use crate::monoid::{comm_comonoid_report, comm_monoid_report};
use crate::relcore::{FinObj, FinRel};
use crate::report::{LawRow, Report};

/// Default cap on `|A| * |B|` for the witness search in [`conv_leq`].
pub const CONV_LEQ_CAP: usize = 16;

/// A commutative monoid `(μ, ι)` and commutative comonoid `(λ, ε)` on one carrier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "AlgebraJson", into = "AlgebraJson")]
pub struct ConvolutionAlgebra {
    carrier: FinObj,
    mult: FinRel,
    unit: FinRel,
    comult: FinRel,
    counit: FinRel,
}

#[derive(Serialize, Deserialize)]
struct AlgebraJson {
    carrier: usize,
    mult: FinRel,
    unit: FinRel,
    comult: FinRel,
    counit: FinRel,
}

impl TryFrom<AlgebraJson> for ConvolutionAlgebra {
    type Error = Error;
    fn try_from(j: AlgebraJson) -> Result<Self> {
        ConvolutionAlgebra::new(j.carrier, j.mult, j.unit, j.comult, j.counit)
    }
}

impl From<ConvolutionAlgebra> for AlgebraJson {
    fn from(c: ConvolutionAlgebra) -> Self {
        AlgebraJson {
            carrier: c.carrier.size(),
            mult: c.mult,
            unit: c.unit,
            comult: c.comult,
            counit: c.counit,
        }
    }
}

impl ConvolutionAlgebra {
    pub fn new(
        carrier: impl Into<FinObj>,
        mult: FinRel,
        unit: FinRel,
        comult: FinRel,
        counit: FinRel,
    ) -> Result<Self> {
        let carrier = carrier.into();
        let n = carrier.size();
        let wrap = |e: Error| Error::InvalidConvolutionAlgebra(e.to_string());
        let mut report = comm_monoid_report("monoid-", n, &mult, &unit).map_err(wrap)?;
        report.extend(comm_comonoid_report("comonoid-", n, &comult, &counit).map_err(wrap)?);
        if let Some(bad) = report.failures().next() {
            return Err(Error::InvalidConvolutionAlgebra(format!(
                "{} fails: {}",
                bad.law,
                bad.witness.as_deref().unwrap_or("")
            )));
        }
        Ok(ConvolutionAlgebra {
            carrier,
            mult,
            unit,
            comult,
            counit,
        })
    }

    /// `(▽, ¡, ▲, ¡‡)` of a classical structure.
    pub fn from_classical(cs: &ClassicalStructure) -> Self {
        ConvolutionAlgebra {
            carrier: cs.carrier().clone(),
            mult: cs.mult(),
            unit: cs.unit(),
            comult: cs.copy(),
            counit: cs.counit(),
        }
    }

    /// A monoid `(μ, ι)` paired with the dagger of another monoid `(ν, κ)`.
    pub fn from_monoids(
        n: usize,
        mult: &FinRel,
        unit: &FinRel,
        co_mult: &FinRel,
        co_unit: &FinRel,
    ) -> Result<Self> {
        ConvolutionAlgebra::new(
            n,
            mult.clone(),
            unit.clone(),
            co_mult.dagger(),
            co_unit.dagger(),
        )
    }

    pub fn size(&self) -> usize {
        self.carrier.size()
    }

    pub fn mult(&self) -> &FinRel {
        &self.mult
    }

    pub fn unit(&self) -> &FinRel {
        &self.unit
    }

    pub fn comult(&self) -> &FinRel {
        &self.comult
    }

    pub fn counit(&self) -> &FinRel {
        &self.counit
    }

    /// The convolution context on `End(A)` given by this algebra.
    pub fn hom(&self) -> HomConvolution {
        HomConvolution {
            comult: self.comult.clone(),
            counit: self.counit.clone(),
            mult: self.mult.clone(),
            unit: self.unit.clone(),
        }
    }
}

/// A comonoid on `A` and a monoid on `B`, making `Rel(A, B)` a monoid under
/// `f ⋆ g = μ ∘ (f ⊗ g) ∘ λ`.
#[derive(Clone, Debug)]
pub struct HomConvolution {
    comult: FinRel,
    counit: FinRel,
    mult: FinRel,
    unit: FinRel,
}

impl HomConvolution {
    pub fn new(comult: FinRel, counit: FinRel, mult: FinRel, unit: FinRel) -> Self {
        HomConvolution {
            comult,
            counit,
            mult,
            unit,
        }
    }

    /// Copy on `A` and multiplication on `B` from two classical structures.
    pub fn from_classical(a: &ClassicalStructure, b: &ClassicalStructure) -> Self {
        HomConvolution::new(a.copy(), a.counit(), b.mult(), b.unit())
    }

    pub fn src(&self) -> usize {
        self.counit.src().size()
    }

    pub fn dst(&self) -> usize {
        self.unit.dst().size()
    }

    fn check(&self, f: &FinRel) -> Result<()> {
        if f.src().size() != self.src() || f.dst().size() != self.dst() {
            return Err(Error::EndpointMismatch {
                op: "convolve",
                left_src: f.src().size(),
                left_dst: f.dst().size(),
                right_src: self.src(),
                right_dst: self.dst(),
            });
        }
        Ok(())
    }

    pub fn convolve(&self, f: &FinRel, g: &FinRel) -> Result<FinRel> {
        self.check(f)?;
        self.check(g)?;
        self.comult.compose(&f.tensor(g))?.compose(&self.mult)
    }

    /// The convolution unit `ι_B ∘ ε_A`.
    pub fn conv_unit(&self) -> FinRel {
        self.counit
            .compose(&self.unit)
            .expect("counit and unit meet at I")
    }
}

/// Free-standing form of [`HomConvolution::convolve`].
pub fn convolve(
    f: &FinRel,
    g: &FinRel,
    comonoid_a: (&FinRel, &FinRel),
    monoid_b: (&FinRel, &FinRel),
) -> Result<FinRel> {
    HomConvolution::new(
        comonoid_a.0.clone(),
        comonoid_a.1.clone(),
        monoid_b.0.clone(),
        monoid_b.1.clone(),
    )
    .convolve(f, g)
}

/// `Υb = μ ∘ (b ⊗ id)`.
pub fn cayley(mult: &FinRel, b: &FinRel) -> Result<FinRel> {
    let n = mult.dst().size();
    if b.src().size() != 1 || b.dst().size() != n || mult.src().size() != n * n {
        return Err(Error::DimensionMismatch {
            op: "cayley",
            left: b.dst().size(),
            right: n,
        });
    }
    b.tensor(&FinRel::identity(n)).compose(mult)
}

fn require_square(e: &FinRel, op: &'static str) -> Result<()> {
    if e.src().size() != e.dst().size() {
        return Err(Error::NotSquare {
            op,
            src: e.src().size(),
            dst: e.dst().size(),
        });
    }
    Ok(())
}

/// Graph of a bijection.
pub fn is_unitary(e: &FinRel) -> Result<bool> {
    require_square(e, "is_unitary")?;
    Ok(e.is_functional() && e.is_left_total() && e.dagger().is_functional())
}

/// `e = dom(e) × ran(e)`, i.e. `e = a ∘ b‡` for vectors `a`, `b`.
pub fn is_scaled_projector(e: &FinRel) -> Result<bool> {
    require_square(e, "is_scaled_projector")?;
    let dom = e.domain();
    let ran = e.range();
    Ok(e.count() == dom.len() * ran.len())
}

/// `id ⋆ id = μ ∘ λ`.
pub fn specialty_endo(ca: &ConvolutionAlgebra) -> FinRel {
    let id = FinRel::identity(ca.size());
    ca.hom()
        .convolve(&id, &id)
        .expect("endomorphisms of the carrier")
}

pub fn is_special(ca: &ConvolutionAlgebra) -> bool {
    is_unitary(&specialty_endo(ca)).expect("square")
}

pub fn is_antispecial(ca: &ConvolutionAlgebra) -> bool {
    is_scaled_projector(&specialty_endo(ca)).expect("square")
}

/// Options for [`conv_leq`].
#[derive(Clone, Copy, Debug)]
pub struct ConvLeqOptions {
    /// Largest `|A| * |B|` for which witnesses are searched.
    pub cap: usize,
    /// Use the subset test when both structures are standard.
    pub shortcut: bool,
}

impl Default for ConvLeqOptions {
    fn default() -> Self {
        ConvLeqOptions {
            cap: CONV_LEQ_CAP,
            shortcut: true,
        }
    }
}

/// Masks of `bits` bits ordered by population count, then numerically.
fn masks_by_popcount(bits: usize) -> impl Iterator<Item = u64> {
    (0..=bits).flat_map(move |k| {
        let limit: u64 = 1 << bits;
        let mut next = if k == 0 { 0 } else { (1u64 << k) - 1 };
        let mut done = false;
        std::iter::from_fn(move || {
            if done || next >= limit {
                return None;
            }
            let cur = next;
            if k == 0 {
                done = true;
            } else {
                // next combination with the same popcount
                let c = cur & cur.wrapping_neg();
                let r = cur + c;
                next = (((r ^ cur) >> 2) / c) | r;
            }
            Some(cur)
        })
    })
}

/// `f ≤ g` iff some `ℓ` has `f ⋆ ℓ = g`.
pub fn conv_leq(
    f: &FinRel,
    g: &FinRel,
    ctx: &HomConvolution,
    standard: bool,
    opts: ConvLeqOptions,
) -> Result<bool> {
    ctx.check(f)?;
    ctx.check(g)?;
    if standard && opts.shortcut {
        return g.leq(f);
    }
    conv_leq_witness(f, g, ctx, opts.cap).map(|w| w.is_some())
}

/// The first witness `ℓ` in population-count order.
pub fn conv_leq_witness(
    f: &FinRel,
    g: &FinRel,
    ctx: &HomConvolution,
    cap: usize,
) -> Result<Option<FinRel>> {
    let (a, b) = (ctx.src(), ctx.dst());
    let bits = a * b;
    if bits > cap || bits > 63 {
        return Err(Error::SearchInfeasible { bits, cap });
    }
    for mask in masks_by_popcount(bits) {
        let l = FinRel::from_mask(a, b, mask);
        if ctx.convolve(f, &l)? == *g {
            return Ok(Some(l));
        }
    }
    Ok(None)
}

/// `!_B ∘ f = !_A`.
pub fn is_total(f: &FinRel, a: &ClassicalStructure, b: &ClassicalStructure) -> Result<bool> {
    Ok(f.compose(&b.counit())? == a.counit())
}

/// `▲_B ∘ f = (f ⊗ f) ∘ ▲_A`.
pub fn is_single_valued(
    f: &FinRel,
    a: &ClassicalStructure,
    b: &ClassicalStructure,
) -> Result<bool> {
    Ok(f.compose(&b.copy())? == a.copy().compose(&f.tensor(f))?)
}

pub fn is_map(f: &FinRel, a: &ClassicalStructure, b: &ClassicalStructure) -> Result<bool> {
    Ok(is_total(f, a, b)? && is_single_valued(f, a, b)?)
}

/// Which order compares `id` with `f‡ ∘ f` in the preorder-based predicates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PreorderReading {
    /// `x ≤ y` iff `∃ℓ. x ⋆ ℓ = y`.
    Convolution,
    /// `x ≤ y` iff `x ⊆ y`.
    Inclusion,
}

fn endo_leq(
    x: &FinRel,
    y: &FinRel,
    cs: &ClassicalStructure,
    reading: PreorderReading,
) -> Result<bool> {
    match reading {
        PreorderReading::Inclusion => x.leq(y),
        PreorderReading::Convolution => conv_leq(
            x,
            y,
            &HomConvolution::from_classical(cs, cs),
            cs.is_standard(),
            ConvLeqOptions::default(),
        ),
    }
}

/// Totality as `id ≤ f‡ ∘ f` under the chosen reading of `≤`.
pub fn is_total_preorder(
    f: &FinRel,
    a: &ClassicalStructure,
    reading: PreorderReading,
) -> Result<bool> {
    let ff = f.compose(&f.dagger())?;
    endo_leq(&FinRel::identity(a.size()), &ff, a, reading)
}

/// Single-valuedness as `f ∘ f‡ ≤ id` under the chosen reading of `≤`.
pub fn is_single_valued_preorder(
    f: &FinRel,
    b: &ClassicalStructure,
    reading: PreorderReading,
) -> Result<bool> {
    let ff = f.dagger().compose(f)?;
    endo_leq(&ff, &FinRel::identity(b.size()), b, reading)
}

/// Evaluates the single-valued equality criterion on one pair `f, g : A -> B`
/// of partial functions, standard structures on both sides.
///
/// Rows:
/// * `sveq-identity`: `ε∘((g‡∘f)⋆id) = ε∘(f⋆g)`.
/// * `sveq-inclusion`: `ε∘(f⋆g) = ε∘f` iff `f ⊆ g`.
/// * `sveq-symmetric`: `f = g` iff both `ε∘(f⋆g) = ε∘f` and `ε∘(f⋆g) = ε∘g`.
/// * `sveq-one-sided`: `f = g` iff `ε∘((g‡∘f)⋆id) = ε∘(f⋆g) = ε∘f`.
pub fn check_sveq(
    f: &FinRel,
    g: &FinRel,
    a: &ClassicalStructure,
    b: &ClassicalStructure,
) -> Result<Report> {
    if !a.is_standard() || !b.is_standard() {
        return Err(Error::Precondition(
            "check_sveq needs standard structures".into(),
        ));
    }
    if !f.is_functional() || !g.is_functional() {
        return Err(Error::Precondition(
            "check_sveq needs single-valued f and g".into(),
        ));
    }
    let on_a = HomConvolution::from_classical(a, a);
    let ab = HomConvolution::from_classical(a, b);
    let eps_a = a.counit();
    let eps_b = b.counit();
    let id = FinRel::identity(a.size());

    let gf = f.compose(&g.dagger())?;
    let outer = on_a.convolve(&gf, &id)?.compose(&eps_a)?;
    let fg = ab.convolve(f, g)?;
    let middle = fg.compose(&eps_b)?;
    let right_f = f.compose(&eps_b)?;
    let right_g = g.compose(&eps_b)?;
    let equal = f == g;

    let mut report = Report::new();
    report.push(LawRow::check("sveq-identity", outer == middle, || {
        format!("f={:?} g={:?}", f.pairs(), g.pairs())
    }));
    let included = f.leq(g)?;
    report.push(LawRow::check(
        "sveq-inclusion",
        (middle == right_f) == included,
        || format!("f={:?} g={:?}", f.pairs(), g.pairs()),
    ));
    let symmetric = middle == right_f && middle == right_g;
    report.push(LawRow::check("sveq-symmetric", symmetric == equal, || {
        format!("f={:?} g={:?}", f.pairs(), g.pairs())
    }));
    let one_sided = outer == middle && middle == right_f;
    report.push(LawRow::check("sveq-one-sided", one_sided == equal, || {
        format!("f={:?} g={:?}", f.pairs(), g.pairs())
    }));
    Ok(report)
}

//! Pointwise effect-algebra axioms, pullbacks of partial functions, and the
//! comparison between superspecial algebras and general effect algebras.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::convolution::{is_antispecial, is_special, ConvolutionAlgebra};
use crate::error::{Error, Result};
use crate::ortho::{CommMonoidRel, OrthoAlgebra};
use crate::relcore::{unit_vector, FinRel};
use crate::report::{LawRow, Report};

/// A partial binary operation on `0..size` with chosen `zero` and `one`.
///
/// The constructor checks shape only, so that candidates failing the axioms
/// can still be reported on; see [`check_effect_axioms`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "TableJson", into = "TableJson")]
pub struct PartialBinOpTable {
    size: usize,
    zero: usize,
    one: usize,
    table: Vec<Vec<Option<usize>>>,
    neg: Option<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    size: usize,
    zero: usize,
    one: usize,
    table: Vec<Vec<Option<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    neg: Option<Vec<usize>>,
}

impl TryFrom<TableJson> for PartialBinOpTable {
    type Error = Error;
    fn try_from(j: TableJson) -> Result<Self> {
        let mut t = PartialBinOpTable::candidate(j.size, j.table, j.zero, j.one)?;
        if let Some(neg) = j.neg {
            if neg.len() != j.size || neg.iter().any(|&v| v >= j.size) {
                return Err(Error::InvalidTable("stored neg has the wrong shape".into()));
            }
            t.neg = Some(neg);
        }
        Ok(t)
    }
}

impl From<PartialBinOpTable> for TableJson {
    fn from(t: PartialBinOpTable) -> Self {
        TableJson {
            size: t.size,
            zero: t.zero,
            one: t.one,
            table: t.table,
            neg: t.neg,
        }
    }
}

impl fmt::Debug for PartialBinOpTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Table(n={}, 0={}, 1={}, [",
            self.size, self.zero, self.one
        )?;
        for (i, row) in self.table.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            for e in row {
                match e {
                    Some(v) => write!(f, "{v}")?,
                    None => write!(f, "-")?,
                }
            }
        }
        write!(f, "])")
    }
}

impl PartialBinOpTable {
    /// Shape-checked candidate.
    pub fn candidate(
        size: usize,
        table: Vec<Vec<Option<usize>>>,
        zero: usize,
        one: usize,
    ) -> Result<Self> {
        if table.len() != size || table.iter().any(|r| r.len() != size) {
            return Err(Error::InvalidTable(format!("table is not {size}x{size}")));
        }
        if size == 0 {
            return Err(Error::InvalidTable("a table needs a zero element".into()));
        }
        if zero >= size || one >= size || table.iter().flatten().flatten().any(|&v| v >= size) {
            return Err(Error::InvalidTable("entry out of range".into()));
        }
        Ok(PartialBinOpTable {
            size,
            zero,
            one,
            table,
            neg: None,
        })
    }

    /// Candidate that must also be a commutative, Kleene-associative partial
    /// monoid with unit `zero`.
    pub fn new(
        size: usize,
        table: Vec<Vec<Option<usize>>>,
        zero: usize,
        one: usize,
    ) -> Result<Self> {
        let t = PartialBinOpTable::candidate(size, table, zero, one)?;
        let report = monoid_rows(&t);
        if let Some(bad) = report.failures().next() {
            return Err(Error::InvalidTable(format!(
                "{} fails: {}",
                bad.law,
                bad.witness.as_deref().unwrap_or("")
            )));
        }
        Ok(t)
    }

    /// Attaches an explicitly stored complement map, validated by
    /// [`check_effect_axioms`] against the derived one.
    pub fn with_neg(mut self, neg: Vec<usize>) -> Result<Self> {
        if neg.len() != self.size || neg.iter().any(|&v| v >= self.size) {
            return Err(Error::InvalidTable("stored neg has the wrong shape".into()));
        }
        self.neg = Some(neg);
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn stored_neg(&self) -> Option<&[usize]> {
        self.neg.as_deref()
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> Option<usize> {
        self.table[x][y]
    }

    pub fn rows(&self) -> &[Vec<Option<usize>>] {
        &self.table
    }

    /// `x ⊛ y` with undefined operands propagating.
    pub fn plus(&self, x: Option<usize>, y: Option<usize>) -> Option<usize> {
        self.table[x?][y?]
    }

    /// `¬x` as the unique `y` with `x ⊛ y = 1`, for every `x`.
    pub fn derived_neg(&self) -> Option<Vec<usize>> {
        (0..self.size)
            .map(|x| {
                let mut it = (0..self.size).filter(|&y| self.get(x, y) == Some(self.one));
                let y = it.next()?;
                it.next().is_none().then_some(y)
            })
            .collect()
    }

    /// `x ⊙ y = ¬(¬x ⊛ ¬y)` with a given complement map.
    pub fn wedge_with(&self, neg: &[usize], x: usize, y: usize) -> Option<usize> {
        self.get(neg[x], neg[y]).map(|v| neg[v])
    }

    /// The same table with elements renamed by `perm` (old index -> new index).
    pub fn relabel(&self, perm: &[usize]) -> PartialBinOpTable {
        let n = self.size;
        let mut table = vec![vec![None; n]; n];
        for x in 0..n {
            for y in 0..n {
                table[perm[x]][perm[y]] = self.table[x][y].map(|v| perm[v]);
            }
        }
        let neg = self.neg.as_ref().map(|neg| {
            let mut out = vec![0; n];
            for x in 0..n {
                out[perm[x]] = perm[neg[x]];
            }
            out
        });
        PartialBinOpTable {
            size: n,
            zero: perm[self.zero],
            one: perm[self.one],
            table,
            neg,
        }
    }
}

fn monoid_rows(t: &PartialBinOpTable) -> Report {
    let n = t.size;
    let mut report = Report::new();
    let comm = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| t.get(x, y) != t.get(y, x));
    report.push(LawRow::from_witness(
        "commutativity",
        comm.map(|(x, y)| format!("x={x} y={y}")),
    ));
    report.push(LawRow::from_witness(
        "associativity",
        kleene_associativity_witness(t).map(|(x, y, z)| format!("x={x} y={y} z={z}")),
    ));
    let unit = (0..n).find(|&x| t.get(x, t.zero) != Some(x) || t.get(t.zero, x) != Some(x));
    report.push(LawRow::from_witness(
        "zero-unit",
        unit.map(|x| format!("x={x}")),
    ));
    report
}

/// Lexicographically least triple on which `(x⊛y)⊛z` and `x⊛(y⊛z)` are not
/// Kleene-equal.
pub fn kleene_associativity_witness(t: &PartialBinOpTable) -> Option<(usize, usize, usize)> {
    let n = t.size;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let l = t.plus(t.get(x, y), Some(z));
                let r = t.plus(Some(x), t.get(y, z));
                if l != r {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

/// Monoid laws, the complement condition `x⊛y = 1 ⟺ x = ¬y` and the unit
/// condition `x⊛1 = 1 ⟺ x = 0`, each with its least witness.
pub fn check_effect_axioms(t: &PartialBinOpTable) -> Report {
    let n = t.size;
    let mut report = monoid_rows(t);
    let bad_complement = (0..n).find_map(|x| {
        let count = (0..n).filter(|&y| t.get(x, y) == Some(t.one)).count();
        (count != 1).then(|| format!("x={x} has {count} elements y with x⊛y=1"))
    });
    report.push(LawRow::from_witness("complement-unique", bad_complement));
    let derived = t.derived_neg();
    match &derived {
        Some(neg) => {
            let bad = (0..n).find(|&x| neg[neg[x]] != x);
            report.push(LawRow::from_witness(
                "neg-involution",
                bad.map(|x| format!("x={x} ¬x={} ¬¬x={}", neg[x], neg[neg[x]])),
            ));
        }
        None => report.push(LawRow::fail("neg-involution", "¬ is not total")),
    }
    let bad_unit = (0..n).find(|&x| (t.get(x, t.one) == Some(t.one)) != (x == t.zero));
    report.push(LawRow::from_witness(
        "one-absorbs-only-zero",
        bad_unit.map(|x| format!("x={x}")),
    ));
    if let Some(stored) = &t.neg {
        let agrees = derived.as_deref() == Some(stored.as_slice());
        report.push(LawRow::check("stored-neg", agrees, || {
            format!("stored {stored:?}, derived {derived:?}")
        }));
    }
    report
}

pub fn is_effect_algebra(t: &PartialBinOpTable) -> bool {
    check_effect_axioms(t).all_pass()
}

/// `x ⊛ y = 0 ⟺ x = 0 = y`.
pub fn is_torsion_free(t: &PartialBinOpTable) -> bool {
    torsion_witness(t).is_none()
}

pub fn torsion_witness(t: &PartialBinOpTable) -> Option<(usize, usize)> {
    let n = t.size;
    (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| (t.get(x, y) == Some(t.zero)) != (x == t.zero && y == t.zero))
}

/// `x ⊛ 1` is defined only for `x = 0`.
pub fn one_is_maximal(t: &PartialBinOpTable) -> bool {
    (0..t.size).all(|x| t.get(x, t.one).is_none() || x == t.zero)
}

/// The relational presentation of a table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRelations {
    pub monoid: CommMonoidRel,
    pub zero: FinRel,
    pub one: FinRel,
    pub neg: Option<FinRel>,
}

/// Graph of `⊛` on flat indices, plus the constants and the derived `¬`.
pub fn table_to_relation(t: &PartialBinOpTable) -> Result<TableRelations> {
    let n = t.size;
    let op = FinRel::from_fn(n * n, n, |xy, z| t.get(xy / n, xy % n) == Some(z));
    let zero = unit_vector(n, &[t.zero])?;
    let one = unit_vector(n, &[t.one])?;
    let monoid = CommMonoidRel::new(n, op, zero.clone())?;
    let neg = t
        .derived_neg()
        .map(|neg| FinRel::from_pairs(n, n, neg.into_iter().enumerate()))
        .transpose()?;
    Ok(TableRelations {
        monoid,
        zero,
        one,
        neg,
    })
}

fn singleton(v: &FinRel, what: &str) -> Result<usize> {
    match v.vector_support().as_slice() {
        [x] => Ok(*x),
        other => Err(Error::NotSingleValued(format!("{what} selects {other:?}"))),
    }
}

/// Reads a single-valued monoid relation back as a table.
pub fn relation_to_table(m: &CommMonoidRel, one: &FinRel) -> Result<PartialBinOpTable> {
    let n = m.size();
    let map = m
        .op()
        .as_partial_map()
        .ok_or_else(|| Error::NotSingleValued("⊛ relates a pair to two elements".into()))?;
    let zero = singleton(m.zero(), "0")?;
    let one = singleton(one, "1")?;
    let table = (0..n).map(|x| map[x * n..(x + 1) * n].to_vec()).collect();
    PartialBinOpTable::new(n, table, zero, one)
}

/// The relational algebra of a table satisfying the complement condition.
pub fn table_to_ortho(t: &PartialBinOpTable) -> Result<OrthoAlgebra> {
    let rels = table_to_relation(t)?;
    OrthoAlgebra::from_monoid_and_one(rels.monoid, rels.one)
}

/// A partial function `0..map.len() -> 0..dst`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFn {
    dst: usize,
    map: Vec<Option<usize>>,
}

impl PartialFn {
    pub fn new(dst: usize, map: Vec<Option<usize>>) -> Result<Self> {
        if let Some(&v) = map.iter().flatten().find(|&&v| v >= dst) {
            return Err(Error::IndexOutOfRange {
                index: v,
                size: dst,
            });
        }
        Ok(PartialFn { dst, map })
    }

    pub fn total(dst: usize, map: Vec<usize>) -> Result<Self> {
        PartialFn::new(dst, map.into_iter().map(Some).collect())
    }

    pub fn from_relation(r: &FinRel) -> Result<Self> {
        let map = r
            .as_partial_map()
            .ok_or_else(|| Error::NotSingleValued(format!("{r:?}")))?;
        PartialFn::new(r.dst().size(), map)
    }

    pub fn src(&self) -> usize {
        self.map.len()
    }

    pub fn dst(&self) -> usize {
        self.dst
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        self.map[x]
    }

    pub fn is_total(&self) -> bool {
        self.map.iter().all(Option::is_some)
    }

    /// Diagrammatic composite: first `self`, then `next`.
    pub fn then(&self, next: &PartialFn) -> PartialFn {
        PartialFn {
            dst: next.dst,
            map: self
                .map
                .iter()
                .map(|x| x.and_then(|x| next.map[x]))
                .collect(),
        }
    }
}

/// A commuting square `f ∘ p = g ∘ q` of partial functions.
#[derive(Clone, Debug)]
pub struct PfnSquare {
    pub p: PartialFn,
    pub q: PartialFn,
    pub f: PartialFn,
    pub g: PartialFn,
}

impl PfnSquare {
    pub fn new(p: PartialFn, q: PartialFn, f: PartialFn, g: PartialFn) -> Result<Self> {
        if p.src() != q.src() || p.dst() != f.src() || q.dst() != g.src() || f.dst() != g.dst() {
            return Err(Error::Precondition("square maps do not line up".into()));
        }
        let (fp, gq) = (p.then(&f), q.then(&g));
        if let Some(x) = (0..p.src()).find(|&x| fp.apply(x) != gq.apply(x)) {
            return Err(Error::NonCommutingSquare(format!(
                "at {x}: f∘p = {:?}, g∘q = {:?}",
                fp.apply(x),
                gq.apply(x)
            )));
        }
        Ok(PfnSquare { p, q, f, g })
    }
}

/// How a square of partial functions is tested for being a pullback.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PullbackMode {
    /// Pullback in pointed sets after adjoining a base point to every carrier.
    Pointed,
    /// Pullback of the defined parts: `p`, `q` and `f∘p` are total, and `P`
    /// is in bijection with `{(x, y) : f(x) = g(y), both defined}`.
    Total,
}

/// Whether `sq` is a pullback under `mode`, by comparison with the canonical
/// pullback.
pub fn pfn_pullback_check(sq: &PfnSquare, mode: PullbackMode) -> bool {
    let (nx, ny) = (sq.f.src(), sq.g.src());
    match mode {
        PullbackMode::Pointed => {
            // None plays the base point
            let fx = |x: Option<usize>| x.and_then(|x| sq.f.apply(x));
            let gy = |y: Option<usize>| y.and_then(|y| sq.g.apply(y));
            let points = || std::iter::once(None).chain((0..nx).map(Some));
            let canonical: Vec<(Option<usize>, Option<usize>)> = points()
                .flat_map(|x| {
                    std::iter::once(None)
                        .chain((0..ny).map(Some))
                        .map(move |y| (x, y))
                })
                .filter(|&(x, y)| fx(x) == gy(y))
                .collect();
            let mut image: Vec<_> = std::iter::once((None, None))
                .chain((0..sq.p.src()).map(|e| (sq.p.apply(e), sq.q.apply(e))))
                .collect();
            let count = image.len();
            image.sort();
            image.dedup();
            image.len() == count && image.len() == canonical.len()
        }
        PullbackMode::Total => {
            if !sq.p.is_total() || !sq.q.is_total() || !sq.p.then(&sq.f).is_total() {
                return false;
            }
            let canonical = (0..nx)
                .flat_map(|x| (0..ny).map(move |y| (x, y)))
                .filter(|&(x, y)| sq.f.apply(x).is_some() && sq.f.apply(x) == sq.g.apply(y))
                .count();
            let mut image: Vec<_> = (0..sq.p.src())
                .map(|e| (sq.p.apply(e), sq.q.apply(e)))
                .collect();
            image.sort();
            image.dedup();
            image.len() == sq.p.src() && image.len() == canonical
        }
    }
}

fn all_maps(src: usize, dst: usize, partial: bool) -> Vec<PartialFn> {
    let choices = dst + usize::from(partial);
    let mut out = Vec::new();
    let total = choices.checked_pow(src as u32).unwrap_or(0);
    for mut code in 0..total {
        let map = (0..src)
            .map(|_| {
                let c = code % choices;
                code /= choices;
                (c < dst).then_some(c)
            })
            .collect();
        out.push(PartialFn { dst, map });
    }
    out
}

/// Universal-property check against every cone with apex of size at most
/// `max_test`: each cone must factor through `P` in exactly one way.
pub fn pfn_pullback_universal(sq: &PfnSquare, mode: PullbackMode, max_test: usize) -> bool {
    let partial = mode == PullbackMode::Pointed;
    if !partial && (!sq.p.is_total() || !sq.q.is_total() || !sq.p.then(&sq.f).is_total()) {
        return false;
    }
    let (np, nx, ny) = (sq.p.src(), sq.f.src(), sq.g.src());
    for t in 0..=max_test {
        let xs = all_maps(t, nx, partial);
        let ys = all_maps(t, ny, partial);
        let us = all_maps(t, np, partial);
        for a in &xs {
            let fa = a.then(&sq.f);
            if !partial && !fa.is_total() {
                continue;
            }
            for b in &ys {
                if fa != b.then(&sq.g) {
                    continue;
                }
                let factorizations = us
                    .iter()
                    .filter(|u| u.then(&sq.p) == *a && u.then(&sq.q) == *b)
                    .take(2)
                    .count();
                if factorizations != 1 {
                    return false;
                }
            }
        }
    }
    true
}

/// The two squares: `⟨id,¬⟩ ; ⊛ = ! ; 1` and `⟨0,0⟩ ; ⊛ = id ; 0`.
pub fn effect_squares(
    op: &PartialFn,
    n: usize,
    zero: usize,
    one: usize,
    neg: &PartialFn,
) -> (Result<PfnSquare>, Result<PfnSquare>) {
    let pair = PartialFn {
        dst: n * n,
        map: (0..n).map(|x| neg.apply(x).map(|y| x * n + y)).collect(),
    };
    let bang = PartialFn {
        dst: 1,
        map: vec![Some(0); n],
    };
    let one_fn = PartialFn {
        dst: n,
        map: vec![Some(one)],
    };
    let left = PfnSquare::new(pair, bang, op.clone(), one_fn);
    let zz = PartialFn {
        dst: n * n,
        map: vec![Some(zero * n + zero)],
    };
    let id_i = PartialFn {
        dst: 1,
        map: vec![Some(0)],
    };
    let zero_fn = PartialFn {
        dst: n,
        map: vec![Some(zero)],
    };
    let right = PfnSquare::new(zz, id_i, op.clone(), zero_fn);
    (left, right)
}

/// Full pipeline for general effect algebras, one row per requirement.
pub fn general_effect_report(
    m: &CommMonoidRel,
    zero: &FinRel,
    one: &FinRel,
    neg: &FinRel,
    mode: PullbackMode,
) -> Report {
    let n = m.size();
    let mut report = Report::new();
    let op = PartialFn::from_relation(m.op());
    report.push(LawRow::check("plus-single-valued", op.is_ok(), || {
        "⊛ is multi-valued".into()
    }));
    let z = singleton(zero, "0");
    let o = singleton(one, "1");
    report.push(LawRow::check("zero-map", z.is_ok(), || {
        format!("0 = {:?}", zero.vector_support())
    }));
    report.push(LawRow::check("one-map", o.is_ok(), || {
        format!("1 = {:?}", one.vector_support())
    }));
    let ng = PartialFn::from_relation(neg)
        .ok()
        .filter(PartialFn::is_total);
    report.push(LawRow::check("neg-map", ng.is_some(), || {
        format!("¬ = {:?}", neg.pairs())
    }));
    let (Ok(op), Ok(z), Ok(o), Some(ng)) = (op, z, o, ng) else {
        return report;
    };
    let (left, right) = effect_squares(&op, n, z, o, &ng);
    for (name, sq) in [("left-pullback", left), ("right-pullback", right)] {
        match sq {
            Ok(sq) => report.push(LawRow::check(name, pfn_pullback_check(&sq, mode), || {
                "comparison map is not a bijection".into()
            })),
            Err(e) => report.push(LawRow::fail(name, e.to_string())),
        }
    }
    report
}

/// Both squares of an algebra whose operations are partial functions, each
/// tested by comparison and by the universal property with apexes of size at
/// most `max_test`.
pub fn pullback_report(
    m: &CommMonoidRel,
    zero: &FinRel,
    one: &FinRel,
    neg: &FinRel,
    mode: PullbackMode,
    max_test: usize,
) -> Result<Report> {
    let n = m.size();
    let op = PartialFn::from_relation(m.op())?;
    let z = singleton(zero, "0")?;
    let o = singleton(one, "1")?;
    let ng = PartialFn::from_relation(neg)?;
    let (left, right) = effect_squares(&op, n, z, o, &ng);
    let mut report = Report::new();
    for (name, sq) in [("left", left), ("right", right)] {
        let sq = match sq {
            Ok(sq) => sq,
            Err(e) => {
                report.push(LawRow::fail(format!("{name}-commutes"), e.to_string()));
                continue;
            }
        };
        let direct = pfn_pullback_check(&sq, mode);
        let universal = pfn_pullback_universal(&sq, mode, max_test);
        report.push(LawRow::check(format!("{name}-pullback"), direct, || {
            "comparison map is not a bijection".into()
        }));
        report.push(LawRow::check(
            format!("{name}-universal"),
            universal,
            || format!("a cone with apex of size at most {max_test} does not factor uniquely"),
        ));
    }
    Ok(report)
}

/// `⊛, 0, 1, ¬` single-valued (and the constants and `¬` total), and both
/// squares pullbacks of their defined parts.
pub fn is_general_effect_algebra(
    m: &CommMonoidRel,
    zero: &FinRel,
    one: &FinRel,
    neg: &FinRel,
) -> bool {
    general_effect_report(m, zero, one, neg, PullbackMode::Total).all_pass()
}

/// Outcome of the superspecial test, with the dual specialty recorded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Superspecial {
    /// `(⊛, 0, ⊛‡, 0‡)` is special.
    pub special: bool,
    /// `(⊛, 0, ⊙‡, 1‡)` is antispecial.
    pub antispecial: bool,
    /// `(⊙, 1, ⊙‡, 1‡)` is special.
    pub dual_special: bool,
}

impl Superspecial {
    pub fn holds(&self) -> bool {
        self.special && self.antispecial
    }

    /// The two specialty conditions agree.
    pub fn duality_consistent(&self) -> bool {
        self.special == self.dual_special
    }
}

pub fn superspecial_parts(alg: &OrthoAlgebra) -> Superspecial {
    let n = alg.size();
    let (plus, zero, wedge, one) = (alg.plus(), alg.zero(), alg.wedge(), alg.one());
    let build = |m: &FinRel, u: &FinRel, cm: &FinRel, cu: &FinRel| {
        ConvolutionAlgebra::from_monoids(n, m, u, cm, cu).expect("monoids of a validated algebra")
    };
    Superspecial {
        special: is_special(&build(plus, zero, plus, zero)),
        antispecial: is_antispecial(&build(plus, zero, wedge, one)),
        dual_special: is_special(&build(wedge, one, wedge, one)),
    }
}

pub fn is_superspecial(alg: &OrthoAlgebra) -> bool {
    superspecial_parts(alg).holds()
}

/// Both sides of the superspecial / general-effect equivalence on one algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropEffRecord {
    pub superspecial: bool,
    pub general_effect: bool,
    pub agree: bool,
    pub witness: Option<String>,
}

pub fn verify_prop_eff(alg: &OrthoAlgebra) -> PropEffRecord {
    let parts = superspecial_parts(alg);
    let ge = general_effect_report(
        alg.monoid(),
        alg.zero(),
        alg.one(),
        alg.neg(),
        PullbackMode::Total,
    );
    let superspecial = parts.holds();
    let general_effect = ge.all_pass();
    let mut failing: Vec<String> = Vec::new();
    if !parts.special {
        failing.push("special".into());
    }
    if !parts.antispecial {
        failing.push("antispecial".into());
    }
    if !parts.duality_consistent() {
        failing.push("dual-special".into());
    }
    failing.extend(ge.failures().map(|r| r.law.clone()));
    PropEffRecord {
        superspecial,
        general_effect,
        agree: superspecial == general_effect && parts.duality_consistent(),
        witness: (!failing.is_empty()).then(|| failing.join(",")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::ClassicalStructure;

    fn table(rows: &[&[Option<usize>]], zero: usize, one: usize) -> PartialBinOpTable {
        PartialBinOpTable::candidate(
            rows.len(),
            rows.iter().map(|r| r.to_vec()).collect(),
            zero,
            one,
        )
        .unwrap()
    }

    fn chain2() -> PartialBinOpTable {
        table(&[&[Some(0), Some(1)], &[Some(1), None]], 0, 1)
    }

    #[test]
    fn chain2_axioms() {
        let t = chain2();
        assert!(check_effect_axioms(&t).all_pass());
        assert_eq!(t.derived_neg(), Some(vec![1, 0]));
        assert!(is_torsion_free(&t));
    }

    #[test]
    fn missing_complement() {
        // a⊛a undefined, nothing sums to 1 with a
        let t = table(
            &[
                &[Some(0), Some(1), Some(2)],
                &[Some(1), None, None],
                &[Some(2), None, None],
            ],
            0,
            2,
        );
        let report = check_effect_axioms(&t);
        let row = report.get("complement-unique").unwrap();
        assert!(!row.pass);
        assert!(row.witness.as_deref().unwrap().starts_with("x=1 "));
    }

    #[test]
    fn idempotent_one() {
        let t = table(&[&[Some(0), Some(1)], &[Some(1), Some(1)]], 0, 1);
        let row = check_effect_axioms(&t)
            .get("one-absorbs-only-zero")
            .cloned()
            .unwrap();
        assert_eq!(row.witness.as_deref(), Some("x=1"));
    }

    #[test]
    fn torsion() {
        let z2 = table(&[&[Some(0), Some(1)], &[Some(1), Some(0)]], 0, 1);
        assert_eq!(torsion_witness(&z2), Some((1, 1)));
        let one = table(&[&[Some(0)]], 0, 0);
        assert!(is_torsion_free(&one));
        assert!(check_effect_axioms(&one).all_pass());
    }

    #[test]
    fn stored_neg_validated() {
        let good = chain2().with_neg(vec![1, 0]).unwrap();
        assert!(check_effect_axioms(&good).all_pass());
        let bad = chain2().with_neg(vec![0, 1]).unwrap();
        assert!(!check_effect_axioms(&bad).get("stored-neg").unwrap().pass);
    }

    #[test]
    fn relation_round_trip() {
        let t = chain2();
        let rels = table_to_relation(&t).unwrap();
        assert_eq!(relation_to_table(&rels.monoid, &rels.one).unwrap(), t);
        let cs = ClassicalStructure::standard(2);
        let m = CommMonoidRel::from_classical(&cs);
        let multi = relation_to_table(&m, &cs.unit());
        assert!(matches!(multi, Err(Error::NotSingleValued(_))));
        let z2 =
            ClassicalStructure::from_group(crate::classical::AbelianGroupTable::cyclic(2).unwrap());
        let rel = CommMonoidRel::new(2, z2.copy(), z2.unit());
        assert!(rel.is_err());
    }

    #[test]
    fn chain2_pullbacks() {
        let t = chain2();
        let rels = table_to_relation(&t).unwrap();
        let op = PartialFn::from_relation(rels.monoid.op()).unwrap();
        let neg = PartialFn::total(2, vec![1, 0]).unwrap();
        let (left, right) = effect_squares(&op, 2, 0, 1, &neg);
        let (left, right) = (left.unwrap(), right.unwrap());
        assert!(pfn_pullback_check(&left, PullbackMode::Total));
        assert!(pfn_pullback_check(&right, PullbackMode::Total));
        // (1,1) is undefined, so the pointed completion picks up an extra point
        assert!(!pfn_pullback_check(&left, PullbackMode::Pointed));
        for mode in [PullbackMode::Total, PullbackMode::Pointed] {
            assert_eq!(
                pfn_pullback_check(&left, mode),
                pfn_pullback_universal(&left, mode, 2)
            );
        }
        let id = PartialFn::total(2, vec![0, 1]).unwrap();
        let (bad, _) = effect_squares(&op, 2, 0, 1, &id);
        assert!(matches!(bad, Err(Error::NonCommutingSquare(_))));
    }

    #[test]
    fn canonical_square_is_pullback() {
        let f = PartialFn::new(2, vec![Some(0), Some(1), None]).unwrap();
        let g = PartialFn::new(2, vec![Some(1), Some(1)]).unwrap();
        let p = PartialFn::total(3, vec![1, 1]).unwrap();
        let q = PartialFn::total(2, vec![0, 1]).unwrap();
        let sq = PfnSquare::new(p, q, f, g).unwrap();
        assert!(pfn_pullback_check(&sq, PullbackMode::Total));
        assert!(pfn_pullback_universal(&sq, PullbackMode::Total, 2));
    }

    #[test]
    fn general_effect_and_superspecial() {
        let t = chain2();
        let alg = table_to_ortho(&t).unwrap();
        let rels = table_to_relation(&t).unwrap();
        assert!(is_general_effect_algebra(
            &rels.monoid,
            &rels.zero,
            &rels.one,
            alg.neg()
        ));
        assert!(is_superspecial(&alg));
        let rec = verify_prop_eff(&alg);
        assert!(rec.agree && rec.superspecial && rec.general_effect);

        let cs = ClassicalStructure::standard(2);
        let m = CommMonoidRel::from_classical(&cs);
        let degenerate = OrthoAlgebra::from_monoid_and_one(m.clone(), cs.unit()).unwrap();
        assert!(!is_superspecial(&degenerate));
        assert!(!superspecial_parts(&degenerate).antispecial);
        assert!(!is_general_effect_algebra(
            &m,
            &cs.unit(),
            &cs.unit(),
            degenerate.neg()
        ));
        let rec = verify_prop_eff(&degenerate);
        assert!(rec.agree && !rec.superspecial && !rec.general_effect);

        let one = table_to_ortho(&table(&[&[Some(0)]], 0, 0)).unwrap();
        assert!(is_superspecial(&one));
        assert!(verify_prop_eff(&one).general_effect);
    }
}

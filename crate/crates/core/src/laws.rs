//! Named laws checkable on structures read from JSON.

use std::borrow::Cow;

use serde_json::Value;

use crate::classical::{validate_classical, ClassicalStructure};
use crate::convolution::{is_scaled_projector, is_unitary, specialty_endo, ConvolutionAlgebra};
use crate::effectlaw::{
    check_effect_axioms, general_effect_report, pullback_report, relation_to_table,
    superspecial_parts, table_to_ortho, verify_prop_eff, PartialBinOpTable, PullbackMode,
};
use crate::error::{Error, Result};
use crate::frobmod::{
    frobenius_variants_hold, is_modular_open_middle, is_modular_relational,
    modularity_counterexample, verify_corollary,
};
use crate::monoid::{comm_comonoid_report, comm_monoid_report};
use crate::ortho::{is_unbiased, validate_ortho_algebra, CommMonoidRel, OrthoAlgebra};
use crate::relcore::FinRel;
use crate::report::{LawRow, Report};

/// Largest apex tried by the universal-property pullback check.
pub const PULLBACK_TEST_SIZE: usize = 2;

/// Any of the JSON input shapes.
#[derive(Clone, Debug)]
pub enum Structure {
    Relation(FinRel),
    Classical(ClassicalStructure),
    Convolution(ConvolutionAlgebra),
    Monoid(CommMonoidRel),
    Ortho(OrthoAlgebra),
    Table(PartialBinOpTable),
}

impl Structure {
    /// Picks the schema by its distinguishing key and parses it.
    pub fn from_json(v: Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Precondition("input must be a JSON object".into()))?;
        let parse_err = |e: serde_json::Error| Error::Parse(e.to_string());
        let s = if obj.contains_key("pairs") {
            Structure::Relation(serde_json::from_value(v).map_err(parse_err)?)
        } else if obj.contains_key("blocks") {
            Structure::Classical(serde_json::from_value(v).map_err(parse_err)?)
        } else if obj.contains_key("comult") {
            Structure::Convolution(serde_json::from_value(v).map_err(parse_err)?)
        } else if obj.contains_key("monoid") {
            Structure::Ortho(serde_json::from_value(v).map_err(parse_err)?)
        } else if obj.contains_key("table") {
            Structure::Table(serde_json::from_value(v).map_err(parse_err)?)
        } else if obj.contains_key("op") {
            Structure::Monoid(serde_json::from_value(v).map_err(parse_err)?)
        } else {
            return Err(Error::Precondition(
                "unrecognized schema: expected one of pairs, blocks, comult, monoid, table, op"
                    .into(),
            ));
        };
        Ok(s)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Structure::from_json(v)
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Relation(_) => "relation",
            Structure::Classical(_) => "classical structure",
            Structure::Convolution(_) => "convolution algebra",
            Structure::Monoid(_) => "monoid",
            Structure::Ortho(_) => "ortho algebra",
            Structure::Table(_) => "table",
        }
    }

    /// Carrier size; for a relation, the larger endpoint.
    pub fn size(&self) -> usize {
        match self {
            Structure::Relation(r) => r.src().size().max(r.dst().size()),
            Structure::Classical(c) => c.size(),
            Structure::Convolution(c) => c.size(),
            Structure::Monoid(m) => m.size(),
            Structure::Ortho(a) => a.size(),
            Structure::Table(t) => t.size(),
        }
    }

    fn ortho(&self) -> Option<Result<Cow<'_, OrthoAlgebra>>> {
        match self {
            Structure::Ortho(a) => Some(Ok(Cow::Borrowed(a))),
            Structure::Table(t) => Some(table_to_ortho(t).map(Cow::Owned)),
            _ => None,
        }
    }

    fn table(&self) -> Option<Result<Cow<'_, PartialBinOpTable>>> {
        match self {
            Structure::Table(t) => Some(Ok(Cow::Borrowed(t))),
            Structure::Ortho(a) => Some(relation_to_table(a.monoid(), a.one()).map(Cow::Owned)),
            _ => None,
        }
    }
}

type CheckFn = fn(&Structure) -> Result<Report>;

/// A property that can be checked on some kinds of [`Structure`].
pub trait Law: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    /// `Err` when the law does not apply to this kind of structure or the
    /// structure lacks what the law needs.
    fn check(&self, s: &Structure) -> Result<Report>;
}

fn unsupported(law: &str, s: &Structure) -> Error {
    Error::Precondition(format!("law {law} does not apply to a {}", s.kind()))
}

fn need_ortho<'a>(law: &str, s: &'a Structure) -> Result<Cow<'a, OrthoAlgebra>> {
    s.ortho().ok_or_else(|| unsupported(law, s))?
}

fn need_table<'a>(law: &str, s: &'a Structure) -> Result<Cow<'a, PartialBinOpTable>> {
    s.table().ok_or_else(|| unsupported(law, s))?
}

fn endo_row(law: &str, e: &FinRel, ok: bool) -> LawRow {
    LawRow::check(law, ok, || format!("id ⋆ id = {:?}", e.pairs()))
}

/// Specialty of `id ⋆ id` in the algebra that the structure carries.
fn specialty(law: &'static str, s: &Structure, anti: bool) -> Result<Report> {
    let ca = match s {
        Structure::Classical(c) => ConvolutionAlgebra::from_classical(c),
        Structure::Convolution(c) => c.clone(),
        Structure::Monoid(m) => {
            ConvolutionAlgebra::from_monoids(m.size(), m.op(), m.zero(), m.op(), m.zero())?
        }
        _ => {
            let alg = need_ortho(law, s)?;
            let (co, co_unit) = if anti {
                (alg.wedge(), alg.one())
            } else {
                (alg.plus(), alg.zero())
            };
            ConvolutionAlgebra::from_monoids(alg.size(), alg.plus(), alg.zero(), co, co_unit)?
        }
    };
    let e = specialty_endo(&ca);
    let ok = if anti {
        is_scaled_projector(&e)?
    } else {
        is_unitary(&e)?
    };
    Ok(Report::from_iter([endo_row(law, &e, ok)]))
}

fn axioms(s: &Structure) -> Result<Report> {
    match s {
        Structure::Relation(_) => Err(unsupported("axioms", s)),
        Structure::Classical(c) => validate_classical(c),
        Structure::Convolution(c) => {
            // construction already validated; report the laws explicitly
            let mut r = comm_monoid_report("monoid-", c.size(), c.mult(), c.unit())?;
            r.extend(comm_comonoid_report(
                "comonoid-",
                c.size(),
                c.comult(),
                c.counit(),
            )?);
            Ok(r)
        }
        Structure::Monoid(m) => comm_monoid_report("", m.size(), m.op(), m.zero()),
        Structure::Ortho(a) => Ok(validate_ortho_algebra(a)),
        Structure::Table(t) => Ok(check_effect_axioms(t)),
    }
}

fn unbiased(s: &Structure) -> Result<Report> {
    let alg = need_ortho("unbiased", s)?;
    let ok = is_unbiased(alg.monoid(), alg.one())?;
    Ok(Report::from_iter([LawRow::check(
        "one-unbiased",
        ok,
        || format!("1 = {:?}", alg.one().vector_support()),
    )]))
}

fn relation_law(law: &'static str, s: &Structure, unitary: bool) -> Result<Report> {
    let Structure::Relation(r) = s else {
        return Err(unsupported(law, s));
    };
    let ok = if unitary {
        is_unitary(r)?
    } else {
        is_scaled_projector(r)?
    };
    Ok(Report::from_iter([LawRow::check(law, ok, || {
        format!("{:?}", r.pairs())
    })]))
}

fn superspecial(s: &Structure) -> Result<Report> {
    let alg = need_ortho("superspecial", s)?;
    let p = superspecial_parts(&alg);
    Ok(Report::from_iter([
        LawRow::check("special", p.special, || "id ⋆ id is not unitary".into()),
        LawRow::check("antispecial", p.antispecial, || {
            "id ⋆ id is not a scaled projector".into()
        }),
        LawRow::check("dual-special", p.dual_special, || {
            "the dual monoid is not special".into()
        }),
    ]))
}

fn general_effect(s: &Structure) -> Result<Report> {
    let alg = need_ortho("general-effect", s)?;
    Ok(general_effect_report(
        alg.monoid(),
        alg.zero(),
        alg.one(),
        alg.neg(),
        PullbackMode::Total,
    ))
}

fn pullback(s: &Structure, mode: PullbackMode) -> Result<Report> {
    let alg = need_ortho("pullback", s)?;
    pullback_report(
        alg.monoid(),
        alg.zero(),
        alg.one(),
        alg.neg(),
        mode,
        PULLBACK_TEST_SIZE,
    )
}

fn frobenius(s: &Structure) -> Result<Report> {
    let alg = need_ortho("frobenius", s)?;
    Ok(frobenius_variants_hold(&alg))
}

fn modular(s: &Structure) -> Result<Report> {
    let t = need_table("modular", s)?;
    let alg = need_ortho("modular", s)?;
    let cx = modularity_counterexample(&t)?;
    Ok(Report::from_iter([
        LawRow::from_witness("modular", cx.map(|(x, y, z)| format!("x={x} y={y} z={z}"))),
        LawRow::check("modular-relational", is_modular_relational(&alg), || {
            "sides differ".into()
        }),
        LawRow::check("modular-open-middle", is_modular_open_middle(&alg), || {
            "sides differ".into()
        }),
    ]))
}

fn prop_eff(s: &Structure) -> Result<Report> {
    let alg = need_ortho("prop-eff", s)?;
    let rec = verify_prop_eff(&alg);
    Ok(Report::from_iter([LawRow::check(
        "prop-eff",
        rec.agree,
        || {
            format!(
                "superspecial={} general-effect={} failing: {}",
                rec.superspecial,
                rec.general_effect,
                rec.witness.clone().unwrap_or_default()
            )
        },
    )]))
}

fn corollary(s: &Structure) -> Result<Report> {
    let alg = need_ortho("corollary", s)?;
    let rec = verify_corollary(&alg)?;
    Ok(Report::from_iter([LawRow::check(
        "corollary",
        rec.agree,
        || {
            format!(
                "frobenius={} modular={} {}",
                rec.frobenius,
                rec.modular,
                rec.witness.clone().unwrap_or_default()
            )
        },
    )]))
}

/// A law given by a plain function.
struct FnLaw {
    name: &'static str,
    description: &'static str,
    run: fn(&Structure) -> Result<Report>,
}

impl Law for FnLaw {
    fn name(&self) -> &'static str {
        self.name
    }

    fn description(&self) -> &'static str {
        self.description
    }

    fn check(&self, s: &Structure) -> Result<Report> {
        (self.run)(s)
    }
}

/// Laws looked up by name.
pub struct LawRegistry {
    laws: Vec<Box<dyn Law>>,
}

impl LawRegistry {
    pub fn empty() -> Self {
        LawRegistry { laws: Vec::new() }
    }

    /// Later registrations shadow earlier ones with the same name.
    pub fn register(&mut self, law: Box<dyn Law>) {
        self.laws.retain(|l| l.name() != law.name());
        self.laws.push(law);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Law> {
        self.laws
            .iter()
            .find(|l| l.name() == name)
            .map(|b| b.as_ref())
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.laws.iter().map(|l| l.name())
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Law> {
        self.laws.iter().map(|b| b.as_ref())
    }

    pub fn check(&self, name: &str, s: &Structure) -> Result<Report> {
        let law = self.get(name).ok_or_else(|| {
            let known: Vec<_> = self.names().collect();
            Error::Precondition(format!(
                "unknown law {name}; known laws: {}",
                known.join(", ")
            ))
        })?;
        law.check(s)
    }

    pub fn standard() -> Self {
        let table: [(&'static str, &'static str, CheckFn); 15] = [
            ("axioms", "defining laws of the structure", axioms),
            ("special", "id ⋆ id is unitary", |s| {
                specialty("special", s, false)
            }),
            ("antispecial", "id ⋆ id is a scaled projector", |s| {
                specialty("antispecial", s, true)
            }),
            ("unbiased", "the unit 1 is unbiased for ⊛", unbiased),
            ("ortho", "ortho-algebra laws", |s| {
                let alg = need_ortho("ortho", s)?;
                Ok(validate_ortho_algebra(&alg))
            }),
            ("superspecial", "special and antispecial", superspecial),
            (
                "general-effect",
                "partial functions with both pullback squares",
                general_effect,
            ),
            (
                "frobenius",
                "interchange of ⊛ and ⊙‡ in all four forms",
                frobenius,
            ),
            ("modular", "modularity, pointwise and relational", modular),
            ("pullback", "pullback squares of the defined parts", |s| {
                pullback(s, PullbackMode::Total)
            }),
            (
                "pullback-pointed",
                "pullback squares in pointed sets",
                |s| pullback(s, PullbackMode::Pointed),
            ),
            (
                "prop-eff",
                "superspecial iff general effect algebra",
                prop_eff,
            ),
            (
                "corollary",
                "Frobenius iff modular, for superspecial algebras",
                corollary,
            ),
            ("unitary", "a relation is the graph of a bijection", |s| {
                relation_law("unitary", s, true)
            }),
            ("scaled-projector", "a relation is a rectangle", |s| {
                relation_law("scaled-projector", s, false)
            }),
        ];
        let mut reg = LawRegistry::empty();
        for (name, description, run) in table {
            reg.register(Box::new(FnLaw {
                name,
                description,
                run,
            }));
        }
        reg
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CHAIN2: &str = r#"{"size":2,"zero":0,"one":1,"table":[[0,1],[1,null]]}"#;

    #[test]
    fn schema_detection() {
        let s = Structure::parse(CHAIN2).unwrap();
        assert_eq!(s.kind(), "table");
        let r = Structure::parse(r#"{"src":2,"dst":2,"pairs":[[0,1],[1,0]]}"#).unwrap();
        assert_eq!(r.kind(), "relation");
        assert!(Structure::parse(r#"{"x":1}"#).is_err());
        assert!(Structure::parse("not json").is_err());
    }

    #[test]
    fn chain2_passes_everything_it_supports() {
        let reg = LawRegistry::standard();
        let s = Structure::parse(CHAIN2).unwrap();
        for law in [
            "axioms",
            "special",
            "antispecial",
            "unbiased",
            "ortho",
            "superspecial",
            "general-effect",
            "frobenius",
            "modular",
            "pullback",
            "prop-eff",
            "corollary",
        ] {
            let rep = reg.check(law, &s).unwrap();
            assert!(rep.all_pass(), "{law}: {rep}");
        }
        // the pointed reading rejects the first square
        assert!(!reg.check("pullback-pointed", &s).unwrap().all_pass());
        assert!(reg.check("unitary", &s).is_err());
        assert!(reg.check("no-such-law", &s).is_err());
    }

    #[test]
    fn relation_laws() {
        let reg = LawRegistry::standard();
        let swap = Structure::parse(r#"{"src":2,"dst":2,"pairs":[[0,1],[1,0]]}"#).unwrap();
        assert!(reg.check("unitary", &swap).unwrap().all_pass());
        assert!(!reg.check("scaled-projector", &swap).unwrap().all_pass());
    }
}

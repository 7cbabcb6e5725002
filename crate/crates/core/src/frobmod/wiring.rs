//! Evaluation of string diagrams given as wiring tables.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::relcore::{flat, FinRel};

const STANDARD: &str = include_str!("../../data/wiring.json");

#[derive(Clone, Debug, Deserialize)]
pub struct GeneratorSpec {
    pub inputs: usize,
    pub outputs: usize,
    #[serde(default)]
    pub description: String,
}

/// `[generator, input wires, output wires]`.
#[derive(Clone, Debug, Deserialize)]
pub struct BoxSpec(pub String, pub Vec<String>, pub Vec<String>);

#[derive(Clone, Debug, Deserialize)]
pub struct Equation {
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub lhs: Vec<BoxSpec>,
    pub rhs: Vec<BoxSpec>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Wiring {
    #[serde(default)]
    pub description: String,
    pub generators: BTreeMap<String, GeneratorSpec>,
    pub equations: Vec<Equation>,
}

impl Wiring {
    pub fn parse(text: &str) -> Result<Self> {
        let w: Wiring = serde_json::from_str(text).map_err(|e| Error::Wiring(e.to_string()))?;
        w.validate()?;
        Ok(w)
    }

    /// The table shipped with the crate.
    pub fn standard() -> &'static Wiring {
        static CELL: OnceLock<Wiring> = OnceLock::new();
        CELL.get_or_init(|| Wiring::parse(STANDARD).expect("bundled wiring table is valid"))
    }

    fn validate(&self) -> Result<()> {
        for eq in &self.equations {
            for side in [&eq.lhs, &eq.rhs] {
                for BoxSpec(gen, ins, outs) in side {
                    let spec = self.generators.get(gen).ok_or_else(|| {
                        Error::Wiring(format!("{}: unknown generator {gen}", eq.name))
                    })?;
                    if spec.inputs != ins.len() || spec.outputs != outs.len() {
                        return Err(Error::Wiring(format!(
                            "{}: {gen} used with arity {}->{}",
                            eq.name,
                            ins.len(),
                            outs.len()
                        )));
                    }
                }
            }
            let mut boundary = eq.inputs.clone();
            boundary.extend(eq.outputs.iter().cloned());
            let count = boundary.len();
            boundary.sort();
            boundary.dedup();
            if boundary.len() != count {
                return Err(Error::Wiring(format!(
                    "{}: repeated boundary wire",
                    eq.name
                )));
            }
        }
        Ok(())
    }

    pub fn equation(&self, name: &str) -> Result<&Equation> {
        self.equations
            .iter()
            .find(|e| e.name == name)
            .ok_or_else(|| Error::Wiring(format!("no equation named {name}")))
    }
}

/// Interpretation of generator names as relations on an `n`-element carrier.
pub struct Interpretation<'a> {
    pub n: usize,
    pub generators: BTreeMap<&'a str, &'a FinRel>,
}

struct Compiled<'r> {
    rel: &'r FinRel,
    ins: Vec<usize>,
    outs: Vec<usize>,
}

/// The relation from the flattened inputs to the flattened outputs described
/// by one side of an equation.
pub fn evaluate_side(
    eq: &Equation,
    side: &[BoxSpec],
    interp: &Interpretation<'_>,
) -> Result<FinRel> {
    let n = interp.n;
    let mut wires: Vec<&str> = eq
        .inputs
        .iter()
        .chain(&eq.outputs)
        .map(String::as_str)
        .collect();
    let boundary = wires.len();
    for BoxSpec(_, ins, outs) in side {
        for w in ins.iter().chain(outs) {
            if !wires.contains(&w.as_str()) {
                wires.push(w);
            }
        }
    }
    let index = |w: &str| wires.iter().position(|v| *v == w).expect("collected above");
    let boxes = side
        .iter()
        .map(|BoxSpec(gen, ins, outs)| {
            let rel = interp
                .generators
                .get(gen.as_str())
                .copied()
                .ok_or_else(|| Error::Wiring(format!("generator {gen} not interpreted")))?;
            Ok(Compiled {
                rel,
                ins: ins.iter().map(|w| index(w)).collect(),
                outs: outs.iter().map(|w| index(w)).collect(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    // boxes become checkable at the depth of their last wire
    let mut due: Vec<Vec<&Compiled>> = vec![Vec::new(); wires.len() + 1];
    for b in &boxes {
        let last = b
            .ins
            .iter()
            .chain(&b.outs)
            .copied()
            .max()
            .map_or(0, |m| m + 1);
        due[last.max(boundary)].push(b);
    }

    let (ni, no) = (eq.inputs.len(), eq.outputs.len());
    let mut out = FinRel::empty(n.pow(ni as u32), n.pow(no as u32));
    let mut vals = vec![0usize; wires.len()];
    let holds = |b: &Compiled, vals: &[usize]| {
        let i: Vec<usize> = b.ins.iter().map(|&w| vals[w]).collect();
        let o: Vec<usize> = b.outs.iter().map(|&w| vals[w]).collect();
        b.rel.get(flat(&i, n), flat(&o, n))
    };
    fn search(
        depth: usize,
        n: usize,
        vals: &mut [usize],
        due: &[Vec<&Compiled>],
        holds: &dyn Fn(&Compiled, &[usize]) -> bool,
    ) -> bool {
        if depth == vals.len() {
            return true;
        }
        for v in 0..n {
            vals[depth] = v;
            if due[depth + 1].iter().all(|b| holds(b, vals))
                && search(depth + 1, n, vals, due, holds)
            {
                return true;
            }
        }
        false
    }
    let total = n.pow(boundary as u32);
    for code in 0..total {
        let mut c = code;
        for slot in vals[..boundary].iter_mut().rev() {
            *slot = c % n;
            c /= n;
        }
        if !due[boundary].iter().all(|b| holds(b, &vals)) {
            continue;
        }
        if search(boundary, n, &mut vals, &due, &holds) {
            out.insert(flat(&vals[..ni], n), flat(&vals[ni..boundary], n));
        }
    }
    Ok(out)
}

/// Both sides of an equation.
pub fn evaluate(eq: &Equation, interp: &Interpretation<'_>) -> Result<(FinRel, FinRel)> {
    Ok((
        evaluate_side(eq, &eq.lhs, interp)?,
        evaluate_side(eq, &eq.rhs, interp)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_table_parses() {
        let w = Wiring::standard();
        for name in [
            "frobenius",
            "frobenius-mirrored",
            "frobenius-bent-1",
            "frobenius-bent-2",
            "modular",
            "modular-open-middle",
        ] {
            assert!(w.equation(name).is_ok(), "{name}");
        }
    }

    #[test]
    fn rejects_bad_arity() {
        let text = r#"{"generators":{"plus":{"inputs":2,"outputs":1}},
            "equations":[{"name":"e","inputs":["a"],"outputs":["b"],
            "lhs":[["plus",["a"],["b"]]],"rhs":[]}]}"#;
        assert!(matches!(Wiring::parse(text), Err(Error::Wiring(_))));
    }

    #[test]
    fn composition_by_shared_wire() {
        // a -> m -> b through two copies of a relation equals the composite
        let text = r#"{"generators":{"r":{"inputs":1,"outputs":1}},
            "equations":[{"name":"e","inputs":["a"],"outputs":["b"],
            "lhs":[["r",["a"],["m"]],["r",["m"],["b"]]],"rhs":[["r",["a"],["b"]]]}]}"#;
        let w = Wiring::parse(text).unwrap();
        let r = FinRel::from_pairs(3, 3, [(0, 1), (1, 2), (2, 2)]).unwrap();
        let interp = Interpretation {
            n: 3,
            generators: [("r", &r)].into_iter().collect(),
        };
        let (lhs, rhs) = evaluate(w.equation("e").unwrap(), &interp).unwrap();
        assert_eq!(lhs, r.compose(&r).unwrap());
        assert_eq!(rhs, r);
    }
}

//! Exhaustive enumeration of small effect algebras up to isomorphism, and
//! the sweep that checks the structural characterizations on all of them.

pub mod canon;
mod effect;
pub mod lemmas;
pub mod monoids;
pub mod sweep;

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::effectlaw::{
    is_general_effect_algebra, is_superspecial, is_torsion_free, table_to_ortho, PartialBinOpTable,
};
use crate::error::{Error, Result};
use crate::frobmod::{frobenius_holds, is_modular_pointwise};

pub use canon::{canonicalize, is_canonical};

/// Sizes up to this are enumerated without asking.
pub const DEFAULT_SIZE_BOUND: usize = 6;
/// Largest size reachable with an explicit override.
pub const OVERRIDE_SIZE_BOUND: usize = 7;

/// Guard on enumeration sizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeLimit {
    bound: usize,
}

impl Default for SizeLimit {
    fn default() -> Self {
        SizeLimit {
            bound: DEFAULT_SIZE_BOUND,
        }
    }
}

impl SizeLimit {
    /// The default guard, or the raised one when `allow_large` is set.
    pub fn new(allow_large: bool) -> Self {
        SizeLimit {
            bound: if allow_large {
                OVERRIDE_SIZE_BOUND
            } else {
                DEFAULT_SIZE_BOUND
            },
        }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn check(&self, n: usize) -> Result<()> {
        if n <= self.bound {
            return Ok(());
        }
        let hint = if self.bound < OVERRIDE_SIZE_BOUND && n <= OVERRIDE_SIZE_BOUND {
            "; pass --allow-large to raise it"
        } else {
            "; sizes this large are not supported"
        };
        Err(Error::BoundExceeded {
            requested: n,
            bound: self.bound,
            hint,
        })
    }
}

/// Properties recorded for each catalogued algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Attributes {
    pub modular: bool,
    pub frobenius: bool,
    pub superspecial: bool,
    pub general_effect: bool,
    /// `0 = 1`.
    pub degenerate: bool,
    /// No `x ≠ 0` with `x ⊛ y = 1` and `x ⊛ 1` defined.
    pub torsion_free: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalAlgebra {
    pub table: PartialBinOpTable,
    pub attributes: Attributes,
}

/// Computes the attributes of an effect-algebra table.
pub fn classify(t: &PartialBinOpTable) -> Result<Attributes> {
    let alg = table_to_ortho(t)?;
    Ok(Attributes {
        modular: is_modular_pointwise(t)?,
        frobenius: frobenius_holds(&alg),
        superspecial: is_superspecial(&alg),
        general_effect: is_general_effect_algebra(alg.monoid(), alg.zero(), alg.one(), alg.neg()),
        degenerate: t.zero() == t.one(),
        torsion_free: is_torsion_free(t),
    })
}

/// Every effect-algebra table on `n` elements up to relabeling, in canonical
/// form and sorted by canonical key.
pub fn enumerate_tables(n: usize, limit: SizeLimit) -> Result<Vec<PartialBinOpTable>> {
    limit.check(n)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let found: BTreeSet<(Vec<usize>, PartialBinOpTable)> = effect::branches(n)
        .into_par_iter()
        .flat_map_iter(|(one, first)| effect::run_branch(n, one, first))
        .map(|t| {
            let c = canonicalize(&t);
            (canon::table_key(&c), c)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    Ok(found.into_iter().map(|(_, t)| t).collect())
}

/// [`enumerate_tables`] with every algebra classified.
pub fn enumerate_effect_algebras(n: usize, limit: SizeLimit) -> Result<Vec<CanonicalAlgebra>> {
    enumerate_tables(n, limit)?
        .into_par_iter()
        .map(|table| {
            let attributes = classify(&table)?;
            Ok(CanonicalAlgebra { table, attributes })
        })
        .collect()
}

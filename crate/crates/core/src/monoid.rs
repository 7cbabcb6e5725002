//! Relation-level monoid and comonoid laws shared by every algebra type.

use crate::error::{Error, Result};
use crate::relcore::{swap, FinRel};
use crate::report::{LawRow, Report};

/// Lexicographically least pair on which two relations with equal endpoints differ.
pub fn first_difference(lhs: &FinRel, rhs: &FinRel) -> Option<String> {
    for i in 0..lhs.src().size() {
        for j in 0..lhs.dst().size() {
            let (l, r) = (lhs.get(i, j), rhs.get(i, j));
            if l != r {
                return Some(format!("({i},{j}): lhs={l} rhs={r}"));
            }
        }
    }
    None
}

/// Compares two relations as an equation, producing a report row.
pub fn equation_row(law: &str, lhs: &FinRel, rhs: &FinRel) -> LawRow {
    if lhs.src().size() != rhs.src().size() || lhs.dst().size() != rhs.dst().size() {
        return LawRow::fail(
            law,
            format!(
                "shape {}->{} vs {}->{}",
                lhs.src().size(),
                lhs.dst().size(),
                rhs.src().size(),
                rhs.dst().size()
            ),
        );
    }
    LawRow::from_witness(law, first_difference(lhs, rhs))
}

pub(crate) fn check_shape(mult: &FinRel, unit: &FinRel, n: usize) -> Result<()> {
    if mult.src().size() != n * n || mult.dst().size() != n {
        return Err(Error::DimensionMismatch {
            op: "monoid multiplication",
            left: mult.src().size(),
            right: n * n,
        });
    }
    if unit.src().size() != 1 || unit.dst().size() != n {
        return Err(Error::DimensionMismatch {
            op: "monoid unit",
            left: unit.dst().size(),
            right: n,
        });
    }
    Ok(())
}

/// Associativity, commutativity and both unit laws of `(mult, unit)` on an
/// `n`-element carrier, evaluated as relation equations.
pub fn comm_monoid_report(prefix: &str, n: usize, mult: &FinRel, unit: &FinRel) -> Result<Report> {
    check_shape(mult, unit, n)?;
    let id = FinRel::identity(n);
    let mut report = Report::new();
    let left = mult.tensor(&id).compose(mult)?;
    let right = id.tensor(mult).compose(mult)?;
    report.push(equation_row(
        &format!("{prefix}associativity"),
        &left,
        &right,
    ));
    let swapped = swap(n, n).compose(mult)?;
    report.push(equation_row(
        &format!("{prefix}commutativity"),
        &swapped,
        mult,
    ));
    let lu = unit.tensor(&id).compose(mult)?;
    report.push(equation_row(&format!("{prefix}left-unit"), &lu, &id));
    let ru = id.tensor(unit).compose(mult)?;
    report.push(equation_row(&format!("{prefix}right-unit"), &ru, &id));
    Ok(report)
}

/// Comonoid laws, checked as the monoid laws of the daggered pair.
pub fn comm_comonoid_report(
    prefix: &str,
    n: usize,
    comult: &FinRel,
    counit: &FinRel,
) -> Result<Report> {
    comm_monoid_report(prefix, n, &comult.dagger(), &counit.dagger())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relcore::unit_vector;

    #[test]
    fn comparison_monoid_with_all_unit() {
        let n = 3;
        let mult = FinRel::from_fn(9, 3, |i, c| i == c * 3 + c);
        let unit = unit_vector(3, &[0, 1, 2]).unwrap();
        assert!(comm_monoid_report("", n, &mult, &unit).unwrap().all_pass());
        let bad_unit = unit_vector(3, &[0]).unwrap();
        let report = comm_monoid_report("", n, &mult, &bad_unit).unwrap();
        assert!(!report.get("left-unit").unwrap().pass);
    }

    #[test]
    fn shape_errors() {
        let mult = FinRel::empty(4, 2);
        assert!(comm_monoid_report("", 3, &mult, &FinRel::empty(1, 3)).is_err());
    }
}

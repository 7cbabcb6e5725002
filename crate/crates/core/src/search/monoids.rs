//! Exhaustive lists of small commutative monoids in `Rel`, labeled.

use crate::error::{Error, Result};
use crate::monoid::comm_monoid_report;
use crate::ortho::CommMonoidRel;
use crate::relcore::{unit_vector, FinRel};

/// Largest carrier for [`comm_relational_monoids`].
pub const RELATIONAL_MONOID_BOUND: usize = 3;
/// Largest carrier for [`comm_single_valued_monoids`].
pub const SINGLE_VALUED_MONOID_BOUND: usize = 4;

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n).map(move |m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
}

struct Search<'a> {
    n: usize,
    zeros: &'a [usize],
    cells: Vec<Option<Option<usize>>>,
    order: Vec<(usize, usize)>,
}

impl Search<'_> {
    fn at(&self, x: usize, y: usize) -> Option<Option<usize>> {
        self.cells[x * self.n + y]
    }

    fn set(&mut self, x: usize, y: usize, v: Option<Option<usize>>) {
        self.cells[x * self.n + y] = v;
        self.cells[y * self.n + x] = v;
    }

    fn sum(&self, x: Option<usize>, y: Option<usize>) -> Option<Option<usize>> {
        match (x, y) {
            (Some(x), Some(y)) => self.at(x, y),
            _ => Some(None),
        }
    }

    fn associative_so_far(&self) -> bool {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                let Some(xy) = self.at(x, y) else { continue };
                for z in 0..n {
                    let Some(l) = self.sum(xy, Some(z)) else {
                        continue;
                    };
                    let Some(yz) = self.at(y, z) else { continue };
                    let Some(r) = self.sum(Some(x), yz) else {
                        continue;
                    };
                    if l != r {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn unit_law(&self) -> bool {
        (0..self.n).all(|x| self.zeros.iter().any(|&z| self.at(z, x) == Some(Some(x))))
    }

    fn domain(&self, i: usize, j: usize) -> Vec<Option<usize>> {
        // a unit element may only fix the other operand or be undefined
        let forced: Vec<usize> = [(i, j), (j, i)]
            .iter()
            .filter(|(z, _)| self.zeros.contains(z))
            .map(|&(_, x)| x)
            .collect();
        let mut dom: Vec<Option<usize>> = (0..self.n)
            .filter(|v| forced.iter().all(|x| x == v))
            .map(Some)
            .collect();
        dom.push(None);
        dom
    }

    fn run(&mut self, k: usize, out: &mut Vec<Vec<Option<usize>>>) {
        if k == self.order.len() {
            if self.unit_law() {
                out.push(
                    self.cells
                        .iter()
                        .map(|c| c.expect("all cells set"))
                        .collect(),
                );
            }
            return;
        }
        let (i, j) = self.order[k];
        for v in self.domain(i, j) {
            self.set(i, j, Some(v));
            if self.associative_so_far() {
                self.run(k + 1, out);
            }
        }
        self.set(i, j, None);
    }
}

/// Every commutative monoid `(⊛, 0)` on `0..n` whose `⊛` is single-valued.
/// The unit may select any set of elements.
pub fn comm_single_valued_monoids(n: usize) -> Result<Vec<CommMonoidRel>> {
    if n > SINGLE_VALUED_MONOID_BOUND {
        return Err(Error::BoundExceeded {
            requested: n,
            bound: SINGLE_VALUED_MONOID_BOUND,
            hint: "",
        });
    }
    let mut out = Vec::new();
    for zeros in subsets(n) {
        if n > 0 && zeros.is_empty() {
            continue;
        }
        let order = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let mut s = Search {
            n,
            zeros: &zeros,
            cells: vec![None; n * n],
            order,
        };
        let mut tables = Vec::new();
        s.run(0, &mut tables);
        let zero = unit_vector(n, &zeros)?;
        for cells in tables {
            let op = FinRel::from_fn(n * n, n, |xy, z| cells[xy] == Some(z));
            out.push(CommMonoidRel::new(n, op, zero.clone())?);
        }
    }
    Ok(out)
}

/// Every commutative monoid relation `(⊛, 0)` on `0..n`, single-valued or not.
pub fn comm_relational_monoids(n: usize) -> Result<Vec<CommMonoidRel>> {
    if n > RELATIONAL_MONOID_BOUND {
        return Err(Error::BoundExceeded {
            requested: n,
            bound: RELATIONAL_MONOID_BOUND,
            hint: "",
        });
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let per_pair = 1usize << n;
    let total = per_pair.pow(pairs.len() as u32);
    let zeros: Vec<Vec<usize>> = subsets(n).filter(|z| n == 0 || !z.is_empty()).collect();
    let mut out = Vec::new();
    for code in 0..total {
        let mut images = vec![0usize; n * n];
        let mut c = code;
        for &(i, j) in &pairs {
            images[i * n + j] = c % per_pair;
            images[j * n + i] = c % per_pair;
            c /= per_pair;
        }
        for z in &zeros {
            // ∪_{u∈0} u ⊛ x = {x}
            let unit_ok = (0..n).all(|x| {
                let union = z.iter().fold(0, |acc, &u| acc | images[u * n + x]);
                union == 1 << x
            });
            if !unit_ok {
                continue;
            }
            let op = FinRel::from_fn(n * n, n, |xy, w| images[xy] >> w & 1 == 1);
            let zero = unit_vector(n, z)?;
            if comm_monoid_report("", n, &op, &zero)?.all_pass() {
                out.push(CommMonoidRel::new(n, op, zero)?);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_counts() {
        // n = 1: zero = {0}, 0⊛0 = 0 forced
        assert_eq!(comm_single_valued_monoids(1).unwrap().len(), 1);
        assert_eq!(comm_relational_monoids(1).unwrap().len(), 1);
        assert_eq!(comm_single_valued_monoids(0).unwrap().len(), 1);
    }

    #[test]
    fn two_elements() {
        let sv = comm_single_valued_monoids(2).unwrap();
        assert!(sv.iter().all(CommMonoidRel::is_single_valued));
        let all = comm_relational_monoids(2).unwrap();
        assert!(all.len() > sv.len());
        for m in &sv {
            assert!(all.contains(m));
        }
        // the comparison monoid with the all-elements unit is among them
        assert!(sv.iter().any(|m| m.zero().vector_support() == vec![0, 1]));
    }
}

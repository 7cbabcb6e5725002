//! Backtracking enumeration of effect-algebra tables on `0..n` with zero 0.

use crate::effectlaw::{is_effect_algebra, PartialBinOpTable};

const UNSET: i8 = -2;
const UNDEF: i8 = -1;

/// Search state: a symmetric table of cells, each unset, undefined or a value.
#[derive(Clone)]
pub(crate) struct Partial {
    n: usize,
    one: usize,
    cells: Vec<i8>,
}

impl Partial {
    fn new(n: usize, one: usize) -> Self {
        let mut cells = vec![UNSET; n * n];
        for x in 0..n {
            cells[x] = x as i8;
            cells[x * n] = x as i8;
        }
        Partial { n, one, cells }
    }

    #[inline]
    fn at(&self, x: usize, y: usize) -> i8 {
        self.cells[x * self.n + y]
    }

    fn set(&mut self, x: usize, y: usize, v: i8) {
        self.cells[x * self.n + y] = v;
        self.cells[y * self.n + x] = v;
    }

    /// `None` when the sum is not yet determined.
    #[inline]
    fn sum(&self, x: i8, y: i8) -> Option<i8> {
        if x == UNDEF || y == UNDEF {
            return Some(UNDEF);
        }
        let v = self.at(x as usize, y as usize);
        (v != UNSET).then_some(v)
    }

    /// Row `x` takes each value at most once and `one` at most once.
    fn row_ok(&self, x: usize) -> bool {
        let mut seen = 0u64;
        for y in 0..self.n {
            let v = self.at(x, y);
            if v >= 0 {
                let bit = 1u64 << v;
                if seen & bit != 0 {
                    return false;
                }
                seen |= bit;
            }
        }
        true
    }

    fn row_has_one(&self, x: usize) -> bool {
        (0..self.n).any(|y| self.at(x, y) == self.one as i8)
    }

    /// Kleene associativity on every triple whose two sides are determined.
    fn associative_so_far(&self) -> bool {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                let xy = self.at(x, y);
                if xy == UNSET {
                    continue;
                }
                for z in 0..n {
                    let Some(l) = self.sum(xy, z as i8) else {
                        continue;
                    };
                    let yz = self.at(y, z);
                    if yz == UNSET {
                        continue;
                    }
                    let Some(r) = self.sum(x as i8, yz) else {
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

    fn to_table(&self) -> PartialBinOpTable {
        let n = self.n;
        let rows = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        let v = self.at(x, y);
                        (v >= 0).then_some(v as usize)
                    })
                    .collect()
            })
            .collect();
        PartialBinOpTable::candidate(n, rows, 0, self.one).expect("search tables are well-shaped")
    }
}

/// The free cells `(i, j)` with `1 ≤ i ≤ j < n`, row by row.
fn free_cells(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
}

/// Values tried for a cell: elements first, undefined last.
fn domain(n: usize) -> impl Iterator<Item = i8> {
    (0..n as i8).chain(std::iter::once(UNDEF))
}

fn consistent(p: &Partial, i: usize, j: usize) -> bool {
    let n = p.n;
    let one = p.one as i8;
    let v = p.at(i, j);
    // x ⊛ 1 = 1 only for x = 0
    if v == one && (i == p.one || j == p.one) {
        return false;
    }
    if !p.row_ok(i) || !p.row_ok(j) {
        return false;
    }
    // a completed row needs its complement
    if j == n - 1 && !p.row_has_one(i) {
        return false;
    }
    p.associative_so_far()
}

fn extend(p: &mut Partial, cells: &[(usize, usize)], k: usize, out: &mut Vec<PartialBinOpTable>) {
    if k == cells.len() {
        let t = p.to_table();
        if is_effect_algebra(&t) {
            out.push(t);
        }
        return;
    }
    let (i, j) = cells[k];
    for v in domain(p.n) {
        p.set(i, j, v);
        if consistent(p, i, j) {
            extend(p, cells, k + 1, out);
        }
    }
    p.set(i, j, UNSET);
}

/// Independent subproblems: the choice of `one` and of the first free cell.
pub(crate) fn branches(n: usize) -> Vec<(usize, Option<i8>)> {
    let first = !free_cells(n).is_empty();
    (0..n)
        .flat_map(|one| {
            let firsts: Vec<Option<i8>> = if first {
                domain(n).map(Some).collect()
            } else {
                vec![None]
            };
            firsts.into_iter().map(move |f| (one, f))
        })
        .collect()
}

/// All labeled effect-algebra tables in one branch.
pub(crate) fn run_branch(n: usize, one: usize, first: Option<i8>) -> Vec<PartialBinOpTable> {
    let cells = free_cells(n);
    let mut p = Partial::new(n, one);
    let mut out = Vec::new();
    match first {
        None => {
            // n = 1: the table is forced
            if p.row_has_one(0) || n == 0 {
                extend(&mut p, &cells, 0, &mut out);
            }
        }
        Some(v) => {
            let (i, j) = cells[0];
            p.set(i, j, v);
            if consistent(&p, i, j) {
                extend(&mut p, &cells, 1, &mut out);
            }
        }
    }
    out
}

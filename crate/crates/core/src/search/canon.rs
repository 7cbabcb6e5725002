//! Canonical forms of partial operation tables up to relabeling.

use crate::effectlaw::PartialBinOpTable;

/// Calls `visit` with every permutation of `0..n` that sends `fixed` to 0.
pub fn for_each_perm_fixing(n: usize, fixed: usize, mut visit: impl FnMut(&[usize])) {
    if n == 0 {
        return;
    }
    let others: Vec<usize> = (0..n).filter(|&x| x != fixed).collect();
    let mut targets: Vec<usize> = (1..n).collect();
    let mut perm = vec![0; n];
    // Heap's algorithm over the targets of the non-fixed elements
    let k = targets.len();
    let mut c = vec![0; k];
    let mut emit = |targets: &[usize], perm: &mut Vec<usize>| {
        perm[fixed] = 0;
        for (&src, &dst) in others.iter().zip(targets) {
            perm[src] = dst;
        }
        visit(perm);
    };
    emit(&targets, &mut perm);
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                targets.swap(0, i);
            } else {
                targets.swap(c[i], i);
            }
            emit(&targets, &mut perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Sort key: the table row-major with "undefined" encoded as `n`, then `one`.
pub fn table_key(t: &PartialBinOpTable) -> Vec<usize> {
    let n = t.size();
    let mut key: Vec<usize> = t.rows().iter().flatten().map(|e| e.unwrap_or(n)).collect();
    key.push(t.one());
    key
}

fn relabeled_key(t: &PartialBinOpTable, perm: &[usize], out: &mut [usize]) {
    let n = t.size();
    for x in 0..n {
        for y in 0..n {
            out[perm[x] * n + perm[y]] = t.get(x, y).map_or(n, |v| perm[v]);
        }
    }
    out[n * n] = perm[t.one()];
}

/// The relabeling with zero at 0 whose [`table_key`] is least. A stored
/// complement map is dropped, since it is determined by the table.
pub fn canonicalize(t: &PartialBinOpTable) -> PartialBinOpTable {
    let n = t.size();
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    let mut scratch = vec![0; n * n + 1];
    for_each_perm_fixing(n, t.zero(), |perm| {
        relabeled_key(t, perm, &mut scratch);
        if best.as_ref().is_none_or(|(k, _)| scratch < *k) {
            best = Some((scratch.clone(), perm.to_vec()));
        }
    });
    let (_, perm) = best.expect("a table has at least one element");
    let mut out = t.relabel(&perm);
    if out.stored_neg().is_some() {
        out = PartialBinOpTable::candidate(n, out.rows().to_vec(), out.zero(), out.one())
            .expect("relabeling preserves shape");
    }
    out
}

pub fn is_canonical(t: &PartialBinOpTable) -> bool {
    t.zero() == 0 && canonicalize(t) == *t
}

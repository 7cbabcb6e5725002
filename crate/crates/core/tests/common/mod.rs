//! Brute-force oracles shared by the integration tests. They work directly
//! on plain arrays and use the library only for the types they compare with.
#![allow(dead_code)]

use std::collections::BTreeSet;

use effrel::classical::ClassicalStructure;
use effrel::effectlaw::PartialBinOpTable;
use effrel::FinRel;

/// A table as `cells[x * n + y]`, `None` for undefined.
pub type Cells = Vec<Option<usize>>;

/// The effect-algebra axioms read literally.
pub fn is_effect(n: usize, cells: &[Option<usize>], zero: usize, one: usize) -> bool {
    let at = |x: usize, y: usize| cells[x * n + y];
    let plus = |x: Option<usize>, y: Option<usize>| match (x, y) {
        (Some(x), Some(y)) => at(x, y),
        _ => None,
    };
    for x in 0..n {
        // exactly one complement
        if (0..n).filter(|&y| at(x, y) == Some(one)).count() != 1 {
            return false;
        }
        if at(x, one) == Some(one) && x != zero {
            return false;
        }
        if at(zero, x) != Some(x) {
            return false;
        }
        for y in 0..n {
            if at(x, y) != at(y, x) {
                return false;
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if plus(at(x, y), Some(z)) != plus(Some(x), at(y, z)) {
                    return false;
                }
            }
        }
    }
    true
}

/// All permutations of `0..n`.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Least relabeled key over permutations sending `zero` to 0: the table
/// row-major with undefined as `n`, then `one`.
pub fn canonical_key(n: usize, cells: &[Option<usize>], zero: usize, one: usize) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    for perm in permutations(n) {
        if perm[zero] != 0 {
            continue;
        }
        let mut key = vec![0; n * n + 1];
        for x in 0..n {
            for y in 0..n {
                key[perm[x] * n + perm[y]] = cells[x * n + y].map_or(n, |v| perm[v]);
            }
        }
        key[n * n] = perm[one];
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    }
    best.expect("n > 0")
}

pub fn key_of(t: &PartialBinOpTable) -> Vec<usize> {
    let n = t.size();
    let cells: Cells = t.rows().iter().flatten().copied().collect();
    canonical_key(n, &cells, t.zero(), t.one())
}

/// Canonical keys of every effect algebra on `n` elements, by trying every
/// table whose zero row is the identity. With `symmetric` only the upper
/// triangle is chosen freely.
pub fn brute_effect_keys(n: usize, symmetric: bool) -> BTreeSet<Vec<usize>> {
    let free: Vec<(usize, usize)> = (1..n)
        .flat_map(|i| (1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !symmetric || i <= j)
        .collect();
    let choices = n + 1;
    let total = choices.pow(free.len() as u32);
    let mut keys = BTreeSet::new();
    let mut cells: Cells = vec![None; n * n];
    for x in 0..n {
        cells[x] = Some(x);
        cells[x * n] = Some(x);
    }
    for one in 0..n {
        for code in 0..total {
            let mut c = code;
            for &(i, j) in &free {
                let v = c % choices;
                c /= choices;
                let v = (v < n).then_some(v);
                cells[i * n + j] = v;
                if symmetric {
                    cells[j * n + i] = v;
                }
            }
            if is_effect(n, &cells, 0, one) {
                keys.insert(canonical_key(n, &cells, 0, one));
            }
        }
    }
    keys
}

/// A table from a canonical key.
pub fn table_from_key(n: usize, key: &[usize]) -> PartialBinOpTable {
    let rows = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| Some(key[x * n + y]).filter(|&v| v < n))
                .collect()
        })
        .collect();
    PartialBinOpTable::new(n, rows, 0, key[n * n]).expect("oracle tables are monoids")
}

/// `f ⋆ g` over the group blocks of `cs`, pointwise: `b ∈ (f⋆g)(a)` iff
/// `a = a1 + a2`, `b1 ∈ f(a1)`, `b2 ∈ g(a2)` and `b = b1 + b2`.
pub fn group_convolution(cs: &ClassicalStructure, f: &FinRel, g: &FinRel) -> FinRel {
    let n = cs.size();
    // sum within a block, through the block's group table
    let mut sum = vec![None; n * n];
    for block in cs.blocks() {
        let e = &block.elements;
        for (i, &x) in e.iter().enumerate() {
            for (j, &y) in e.iter().enumerate() {
                sum[x * n + y] = Some(e[block.group.add(i, j)]);
            }
        }
    }
    FinRel::from_fn(n, n, |a, b| {
        (0..n).any(|a1| {
            (0..n).any(|a2| {
                sum[a1 * n + a2] == Some(a)
                    && (0..n).any(|b1| {
                        f.get(a1, b1)
                            && (0..n).any(|b2| g.get(a2, b2) && sum[b1 * n + b2] == Some(b))
                    })
            })
        })
    })
}

/// Every relation `0..a -> 0..b`.
pub fn all_relations(a: usize, b: usize) -> Vec<FinRel> {
    (0u64..1 << (a * b))
        .map(|m| FinRel::from_fn(a, b, |i, j| m >> (i * b + j) & 1 == 1))
        .collect()
}

/// Relational monoid laws checked through image sets.
pub fn is_comm_monoid(n: usize, images: &[u32], zeros: u32) -> bool {
    let img = |x: usize, y: usize| images[x * n + y];
    let lift = |set: u32, z: usize, left: bool| {
        (0..n)
            .filter(|&w| set >> w & 1 == 1)
            .fold(0, |acc, w| acc | if left { img(w, z) } else { img(z, w) })
    };
    for x in 0..n {
        let unit = (0..n)
            .filter(|&u| zeros >> u & 1 == 1)
            .fold(0, |acc, u| acc | img(u, x));
        if unit != 1 << x {
            return false;
        }
        for y in 0..n {
            if img(x, y) != img(y, x) {
                return false;
            }
            for z in 0..n {
                if lift(img(x, y), z, true) != lift(img(y, z), x, false) {
                    return false;
                }
            }
        }
    }
    true
}

/// Every commutative monoid relation on `0..n`: `(image sets, unit set)`.
pub fn brute_comm_monoids(n: usize) -> Vec<(Vec<u32>, u32)> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let per = 1usize << n;
    let mut out = Vec::new();
    for code in 0..per.pow(pairs.len() as u32) {
        let mut images = vec![0u32; n * n];
        let mut c = code;
        for &(i, j) in &pairs {
            images[i * n + j] = (c % per) as u32;
            images[j * n + i] = (c % per) as u32;
            c /= per;
        }
        for zeros in 1..(1u32 << n) {
            if is_comm_monoid(n, &images, zeros) {
                out.push((images.clone(), zeros));
            }
        }
        if n == 0 && is_comm_monoid(0, &images, 0) {
            out.push((images, 0));
        }
    }
    out
}

pub fn monoid_op(n: usize, images: &[u32]) -> FinRel {
    FinRel::from_fn(n * n, n, |xy, w| images[xy] >> w & 1 == 1)
}

pub fn vector(n: usize, set: u32) -> FinRel {
    FinRel::from_fn(1, n, |_, w| set >> w & 1 == 1)
}

/// `{(x, y) : x ⊛ y meets ι}` is an involutive permutation.
pub fn is_unbiased_pointwise(n: usize, images: &[u32], iota: u32) -> bool {
    (0..n).all(|x| {
        let partners: Vec<usize> = (0..n).filter(|&y| images[x * n + y] & iota != 0).collect();
        partners.len() == 1
    })
}

/// `ν` involutive with `{y : ν(x) ⊛ y meets ν(0)} = {x}` for every `x`.
pub fn is_orthocomplement_pointwise(n: usize, images: &[u32], zeros: u32, nu: &[usize]) -> bool {
    if (0..n).any(|x| nu[nu[x]] != x) {
        return false;
    }
    let iota = (0..n)
        .filter(|&z| zeros >> z & 1 == 1)
        .fold(0u32, |acc, z| acc | 1 << nu[z]);
    (0..n).all(|x| {
        let hits: Vec<usize> = (0..n)
            .filter(|&y| images[nu[x] * n + y] & iota != 0)
            .collect();
        hits == [x]
    })
}

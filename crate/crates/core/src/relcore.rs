//! The category of finite sets and relations.
//!
//! Objects are ordinals `0..size`; a morphism is a dense boolean incidence
//! matrix stored as packed `u64` rows. The monoidal product is strict: the
//! pair `(i, j)` of `A ⊗ B` lives at flat index `i * |B| + j`, and every
//! serialized relation on a tensor carrier uses those flat indices.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite object: the ordinal `0..size`, optionally with display names.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinObj {
    size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl FinObj {
    pub fn new(size: usize) -> Self {
        FinObj { size, labels: None }
    }

    /// The monoidal unit `I`.
    pub fn unit() -> Self {
        FinObj::new(1)
    }

    pub fn with_labels(labels: Vec<String>) -> Self {
        FinObj {
            size: labels.len(),
            labels: Some(labels),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn tensor(&self, other: &FinObj) -> FinObj {
        FinObj::new(self.size * other.size)
    }

    /// `A ⊗ A ⊗ ... ⊗ A` with `k` factors; `k = 0` gives `I`.
    pub fn power(&self, k: u32) -> FinObj {
        FinObj::new(self.size.pow(k))
    }
}

impl From<usize> for FinObj {
    fn from(size: usize) -> Self {
        FinObj::new(size)
    }
}

const WORD: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// A relation `src -> dst`.
///
/// Equality compares endpoint sizes and incidence; labels are ignored.
#[derive(Clone, Serialize, Deserialize)]
#[serde(into = "RelJson", try_from = "RelJson")]
pub struct FinRel {
    src: FinObj,
    dst: FinObj,
    stride: usize,
    bits: Vec<u64>,
}

impl PartialEq for FinRel {
    fn eq(&self, other: &Self) -> bool {
        self.src.size == other.src.size
            && self.dst.size == other.dst.size
            && self.bits == other.bits
    }
}

impl Eq for FinRel {}

impl std::hash::Hash for FinRel {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.src.size.hash(state);
        self.dst.size.hash(state);
        self.bits.hash(state);
    }
}

impl fmt::Debug for FinRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FinRel({}->{}, {:?})",
            self.src.size,
            self.dst.size,
            self.pairs()
        )
    }
}

impl FinRel {
    pub fn empty(src: impl Into<FinObj>, dst: impl Into<FinObj>) -> Self {
        let (src, dst) = (src.into(), dst.into());
        let stride = words_for(dst.size);
        FinRel {
            bits: vec![0; stride * src.size],
            src,
            dst,
            stride,
        }
    }

    pub fn full(src: impl Into<FinObj>, dst: impl Into<FinObj>) -> Self {
        let mut r = FinRel::empty(src, dst);
        for i in 0..r.src.size {
            for j in 0..r.dst.size {
                r.insert(i, j);
            }
        }
        r
    }

    pub fn identity(obj: impl Into<FinObj>) -> Self {
        let obj = obj.into();
        let mut r = FinRel::empty(obj.clone(), obj);
        for i in 0..r.src.size {
            r.insert(i, i);
        }
        r
    }

    pub fn from_pairs(
        src: impl Into<FinObj>,
        dst: impl Into<FinObj>,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut r = FinRel::empty(src, dst);
        for (i, j) in pairs {
            if i >= r.src.size {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    size: r.src.size,
                });
            }
            if j >= r.dst.size {
                return Err(Error::IndexOutOfRange {
                    index: j,
                    size: r.dst.size,
                });
            }
            r.insert(i, j);
        }
        Ok(r)
    }

    pub fn from_fn(
        src: impl Into<FinObj>,
        dst: impl Into<FinObj>,
        mut related: impl FnMut(usize, usize) -> bool,
    ) -> Self {
        let mut r = FinRel::empty(src, dst);
        for i in 0..r.src.size {
            for j in 0..r.dst.size {
                if related(i, j) {
                    r.insert(i, j);
                }
            }
        }
        r
    }

    /// Graph of a partial function given as a lookup table.
    pub fn from_partial_map(dst: impl Into<FinObj>, map: &[Option<usize>]) -> Result<Self> {
        FinRel::from_pairs(
            map.len(),
            dst,
            map.iter()
                .enumerate()
                .filter_map(|(i, img)| img.map(|j| (i, j))),
        )
    }

    /// Builds a relation from the low `src * dst` bits of `mask`, row-major.
    /// Used by exhaustive enumerations over small hom-sets.
    pub fn from_mask(src: usize, dst: usize, mask: u64) -> Self {
        debug_assert!(src * dst <= 64);
        FinRel::from_fn(src, dst, |i, j| mask >> (i * dst + j) & 1 == 1)
    }

    pub fn src(&self) -> &FinObj {
        &self.src
    }

    pub fn dst(&self) -> &FinObj {
        &self.dst
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.stride + j / WORD] >> (j % WORD) & 1 == 1
    }

    #[inline]
    pub(crate) fn insert(&mut self, i: usize, j: usize) {
        self.bits[i * self.stride + j / WORD] |= 1 << (j % WORD);
    }

    #[inline]
    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.stride..(i + 1) * self.stride]
    }

    /// Elements related to `i`, ascending.
    pub fn image(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(i).iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let bit = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * WORD + bit)
            })
        })
    }

    /// All related pairs in lexicographic order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.src.size)
            .flat_map(|i| self.image(i).map(move |j| (i, j)))
            .collect()
    }

    pub fn count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Diagrammatic composition: the result is `next ∘ self`.
    pub fn compose(&self, next: &FinRel) -> Result<FinRel> {
        if self.dst.size != next.src.size {
            return Err(Error::DimensionMismatch {
                op: "compose",
                left: self.dst.size,
                right: next.src.size,
            });
        }
        let mut out = FinRel::empty(self.src.clone(), next.dst.clone());
        for i in 0..self.src.size {
            let start = i * out.stride;
            for b in self.image(i) {
                for (acc, &w) in out.bits[start..start + out.stride]
                    .iter_mut()
                    .zip(next.row(b))
                {
                    *acc |= w;
                }
            }
        }
        Ok(out)
    }

    pub fn dagger(&self) -> FinRel {
        let mut out = FinRel::empty(self.dst.clone(), self.src.clone());
        for (i, j) in self.pairs() {
            out.insert(j, i);
        }
        out
    }

    /// `self ⊗ other`, with `(a, c) ↦ a * |C| + c` on both sides.
    pub fn tensor(&self, other: &FinRel) -> FinRel {
        let (c, d) = (other.src.size, other.dst.size);
        let mut out = FinRel::empty(self.src.tensor(&other.src), self.dst.tensor(&other.dst));
        for (a, b) in self.pairs() {
            for (ci, di) in other.pairs() {
                out.insert(a * c + ci, b * d + di);
            }
        }
        out
    }

    fn check_same_endpoints(&self, other: &FinRel, op: &'static str) -> Result<()> {
        if self.src.size != other.src.size || self.dst.size != other.dst.size {
            return Err(Error::EndpointMismatch {
                op,
                left_src: self.src.size,
                left_dst: self.dst.size,
                right_src: other.src.size,
                right_dst: other.dst.size,
            });
        }
        Ok(())
    }

    /// `self ⊆ other`.
    pub fn leq(&self, other: &FinRel) -> Result<bool> {
        self.check_same_endpoints(other, "leq")?;
        Ok(self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0))
    }

    pub fn meet(&self, other: &FinRel) -> Result<FinRel> {
        self.check_same_endpoints(other, "meet")?;
        let mut out = self.clone();
        out.bits
            .iter_mut()
            .zip(&other.bits)
            .for_each(|(a, b)| *a &= b);
        Ok(out)
    }

    pub fn join(&self, other: &FinRel) -> Result<FinRel> {
        self.check_same_endpoints(other, "join")?;
        let mut out = self.clone();
        out.bits
            .iter_mut()
            .zip(&other.bits)
            .for_each(|(a, b)| *a |= b);
        Ok(out)
    }

    /// Source elements with at least one image.
    pub fn domain(&self) -> Vec<usize> {
        (0..self.src.size)
            .filter(|&i| self.row(i).iter().any(|&w| w != 0))
            .collect()
    }

    /// Target elements hit by at least one source element.
    pub fn range(&self) -> Vec<usize> {
        let mut hit = vec![0u64; self.stride];
        for i in 0..self.src.size {
            hit.iter_mut().zip(self.row(i)).for_each(|(h, w)| *h |= w);
        }
        (0..self.dst.size)
            .filter(|&j| hit[j / WORD] >> (j % WORD) & 1 == 1)
            .collect()
    }

    /// Each source element has at most one image.
    pub fn is_functional(&self) -> bool {
        (0..self.src.size).all(|i| self.image(i).nth(1).is_none())
    }

    /// Each source element has at least one image.
    pub fn is_left_total(&self) -> bool {
        self.domain().len() == self.src.size
    }

    /// The lookup table of a single-valued relation.
    pub fn as_partial_map(&self) -> Option<Vec<Option<usize>>> {
        let mut map = Vec::with_capacity(self.src.size);
        for i in 0..self.src.size {
            let mut it = self.image(i);
            let first = it.next();
            if it.next().is_some() {
                return None;
            }
            map.push(first);
        }
        Some(map)
    }

    /// Reads a covector `A -> I` as the subset of `A` it accepts.
    pub fn covector_support(&self) -> Vec<usize> {
        self.domain()
    }

    /// Reads a vector `I -> A` as the subset of `A` it selects.
    pub fn vector_support(&self) -> Vec<usize> {
        if self.src.size == 0 {
            return Vec::new();
        }
        self.image(0).collect()
    }
}

/// The symmetry `A ⊗ B -> B ⊗ A`.
pub fn swap(a: impl Into<FinObj>, b: impl Into<FinObj>) -> FinRel {
    let (a, b) = (a.into(), b.into());
    let (n, m) = (a.size, b.size);
    let mut out = FinRel::empty(a.tensor(&b), b.tensor(&a));
    for i in 0..n {
        for j in 0..m {
            out.insert(i * m + j, j * n + i);
        }
    }
    out
}

pub fn identity(a: impl Into<FinObj>) -> FinRel {
    FinRel::identity(a)
}

/// The vector `I -> A` selecting exactly `members`.
pub fn unit_vector(a: impl Into<FinObj>, members: &[usize]) -> Result<FinRel> {
    FinRel::from_pairs(FinObj::unit(), a, members.iter().map(|&m| (0, m)))
}

/// The covector `A -> I` accepting exactly `members`.
pub fn unit_covector(a: impl Into<FinObj>, members: &[usize]) -> Result<FinRel> {
    FinRel::from_pairs(a, FinObj::unit(), members.iter().map(|&m| (m, 0)))
}

/// The self-duality vector `η : I -> A ⊗ A` of the standard classical structure.
pub fn std_cup(a: impl Into<FinObj>) -> FinRel {
    let a = a.into();
    let n = a.size;
    let mut out = FinRel::empty(FinObj::unit(), a.tensor(&a));
    for i in 0..n {
        out.insert(0, i * n + i);
    }
    out
}

/// `η‡ : A ⊗ A -> I`.
pub fn std_cap(a: impl Into<FinObj>) -> FinRel {
    std_cup(a).dagger()
}

/// Bends a vector `v : I -> A ⊗ B` into the operator `A -> B` it names,
/// `(η‡ ⊗ id_B) ∘ (id_A ⊗ v)`.
pub fn name_to_operator(v: &FinRel, a: &FinObj) -> Result<FinRel> {
    if v.src.size != 1 || !v.dst.size.is_multiple_of(a.size) {
        return Err(Error::DimensionMismatch {
            op: "name_to_operator",
            left: v.dst.size,
            right: a.size,
        });
    }
    let b = FinObj::new(v.dst.size.checked_div(a.size).unwrap_or(0));
    FinRel::identity(a.clone())
        .tensor(v)
        .compose(&std_cap(a.clone()).tensor(&FinRel::identity(b)))
}

/// Bends a covector `c : A ⊗ B -> I` into the operator `A -> B` relating
/// `x` to `y` exactly when `c` accepts `(x, y)`.
pub fn covector_to_operator(c: &FinRel, a: &FinObj) -> Result<FinRel> {
    name_to_operator(&c.dagger(), a)
}

/// Flat index of a tuple of elements of `A^k`, most significant first.
pub fn flat(tuple: &[usize], n: usize) -> usize {
    tuple.iter().fold(0, |acc, &x| acc * n + x)
}

/// Inverse of [`flat`] for `k` factors.
pub fn unflat(mut index: usize, n: usize, k: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for slot in out.iter_mut().rev() {
        *slot = index % n;
        index /= n;
    }
    out
}

#[derive(Serialize, Deserialize)]
struct RelJson {
    src: usize,
    dst: usize,
    pairs: Vec<[usize; 2]>,
}

impl From<FinRel> for RelJson {
    fn from(r: FinRel) -> Self {
        RelJson {
            src: r.src.size,
            dst: r.dst.size,
            pairs: r.pairs().into_iter().map(|(i, j)| [i, j]).collect(),
        }
    }
}

impl TryFrom<RelJson> for FinRel {
    type Error = Error;

    fn try_from(j: RelJson) -> Result<Self> {
        FinRel::from_pairs(j.src, j.dst, j.pairs.into_iter().map(|[i, k]| (i, k)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(n: usize, m: usize, pairs: &[(usize, usize)]) -> FinRel {
        FinRel::from_pairs(n, m, pairs.iter().copied()).unwrap()
    }

    #[test]
    fn compose_examples() {
        let r = rel(2, 2, &[(0, 1)]);
        let s = rel(2, 2, &[(1, 0)]);
        assert_eq!(r.compose(&s).unwrap(), rel(2, 2, &[(0, 0)]));
        assert_eq!(r.compose(&FinRel::identity(2)).unwrap(), r);
        let zero = FinRel::empty(2, 3);
        assert_eq!(
            zero.compose(&FinRel::full(3, 2)).unwrap(),
            FinRel::empty(2, 2)
        );
    }

    #[test]
    fn compose_rejects_mismatch() {
        let err = FinRel::empty(2, 3)
            .compose(&FinRel::empty(2, 2))
            .unwrap_err();
        assert_eq!(
            err,
            Error::DimensionMismatch {
                op: "compose",
                left: 3,
                right: 2
            }
        );
    }

    #[test]
    fn dagger_examples() {
        let r = rel(2, 2, &[(0, 1), (1, 1)]);
        assert_eq!(r.dagger(), rel(2, 2, &[(1, 0), (1, 1)]));
        assert_eq!(r.dagger().dagger(), r);
        assert_eq!(FinRel::identity(4).dagger(), FinRel::identity(4));
    }

    #[test]
    fn tensor_examples() {
        let f = rel(1, 2, &[(0, 0)]);
        let g = rel(2, 2, &[(0, 1)]);
        assert_eq!(f.tensor(&g), rel(2, 4, &[(0, 1)]));
        assert_eq!(
            FinRel::identity(2).tensor(&FinRel::identity(3)),
            FinRel::identity(6)
        );
        assert!(FinRel::full(2, 2).tensor(&FinRel::empty(3, 1)).is_empty());
    }

    #[test]
    fn swap_examples() {
        let s = swap(2, 3);
        // (0, 1) sits at 0*3+1 and goes to (1, 0) at 1*2+0
        assert!(s.get(1, 2));
        assert_eq!(s.count(), 6);
        assert_eq!(s.compose(&swap(3, 2)).unwrap(), FinRel::identity(6));
        assert!(unit_vector(3, &[]).unwrap().is_empty());
    }

    #[test]
    fn cup_examples() {
        assert_eq!(std_cup(2), rel(1, 4, &[(0, 0), (0, 3)]));
        assert!(std_cup(0).is_empty());
        assert_eq!(std_cup(0).dst().size(), 0);
    }

    #[test]
    fn snake_equations_for_small_objects() {
        for n in 0..=6 {
            let a = FinObj::new(n);
            let id = FinRel::identity(n);
            let left = id
                .tensor(&std_cup(n))
                .compose(&std_cap(n).tensor(&id))
                .unwrap();
            let right = std_cup(n)
                .tensor(&id)
                .compose(&id.tensor(&std_cap(n)))
                .unwrap();
            assert_eq!(left, id, "n = {n}");
            assert_eq!(right, id, "n = {n}");
            assert_eq!(name_to_operator(&std_cup(n), &a).unwrap(), id);
        }
    }

    #[test]
    fn lattice_examples() {
        let r = rel(2, 2, &[(0, 0), (0, 1)]);
        let s = rel(2, 2, &[(0, 1), (1, 1)]);
        assert_eq!(r.meet(&s).unwrap(), rel(2, 2, &[(0, 1)]));
        assert_eq!(r.meet(&r).unwrap(), r);
        assert!(FinRel::empty(2, 2).leq(&r).unwrap());
        assert_eq!(r.join(&s).unwrap().count(), 3);
        assert!(r.meet(&FinRel::empty(2, 3)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let r = rel(3, 2, &[(2, 1), (0, 0)]);
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(text, r#"{"src":3,"dst":2,"pairs":[[0,0],[2,1]]}"#);
        let back: FinRel = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert!(serde_json::from_str::<FinRel>(r#"{"src":1,"dst":1,"pairs":[[0,3]]}"#).is_err());
    }

    #[test]
    fn wide_rows_cross_word_boundaries() {
        let n = 9;
        let cube = FinObj::new(n).power(2);
        let r = FinRel::from_fn(cube.clone(), cube.clone(), |i, j| (i * 7 + j) % 5 == 0);
        assert_eq!(r.compose(&FinRel::identity(cube)).unwrap(), r);
        assert_eq!(r.dagger().dagger(), r);
    }
}

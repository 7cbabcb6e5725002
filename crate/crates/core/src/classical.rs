//! Classical structures in `Rel`: partitions of a carrier into finite abelian
//! groups, and the copy/compare relations they generate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monoid::{comm_comonoid_report, comm_monoid_report, equation_row};
use crate::relcore::{FinObj, FinRel};
use crate::report::Report;

/// Default upper bound on carrier size for [`enumerate_classical`].
pub const CLASSICAL_BOUND: usize = 8;

/// A finite abelian group given by its Cayley table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GroupJson", into = "GroupJson")]
pub struct AbelianGroupTable {
    order: usize,
    add: Vec<Vec<usize>>,
    zero: usize,
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    order: usize,
    add: Vec<Vec<usize>>,
    zero: usize,
}

impl TryFrom<GroupJson> for AbelianGroupTable {
    type Error = Error;
    fn try_from(g: GroupJson) -> Result<Self> {
        AbelianGroupTable::new(g.order, g.add, g.zero)
    }
}

impl From<AbelianGroupTable> for GroupJson {
    fn from(g: AbelianGroupTable) -> Self {
        GroupJson {
            order: g.order,
            add: g.add,
            zero: g.zero,
        }
    }
}

impl AbelianGroupTable {
    pub fn new(order: usize, add: Vec<Vec<usize>>, zero: usize) -> Result<Self> {
        let g = AbelianGroupTable::new_unchecked(order, add, zero)?;
        g.check_group_laws()?;
        Ok(g)
    }

    /// Checks only the table shape. Meant for mutation tests that need a
    /// broken operation.
    pub fn new_unchecked(order: usize, add: Vec<Vec<usize>>, zero: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidGroup("order must be positive".into()));
        }
        if add.len() != order || add.iter().any(|r| r.len() != order) {
            return Err(Error::InvalidGroup(format!("table is not {order}x{order}")));
        }
        if zero >= order || add.iter().flatten().any(|&v| v >= order) {
            return Err(Error::InvalidGroup("entry out of range".into()));
        }
        Ok(AbelianGroupTable { order, add, zero })
    }

    fn check_group_laws(&self) -> Result<()> {
        let n = self.order;
        let a = &self.add;
        for x in 0..n {
            if a[self.zero][x] != x {
                return Err(Error::InvalidGroup(format!("zero is not a unit at {x}")));
            }
            if !(0..n).any(|y| a[x][y] == self.zero) {
                return Err(Error::InvalidGroup(format!("{x} has no inverse")));
            }
            for y in 0..n {
                if a[x][y] != a[y][x] {
                    return Err(Error::InvalidGroup(format!("not commutative at ({x},{y})")));
                }
                for z in 0..n {
                    if a[a[x][y]][z] != a[x][a[y][z]] {
                        return Err(Error::InvalidGroup(format!(
                            "not associative at ({x},{y},{z})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn cyclic(order: usize) -> Result<Self> {
        let add = (0..order)
            .map(|x| (0..order).map(|y| (x + y) % order).collect())
            .collect();
        AbelianGroupTable::new(order, add, 0)
    }

    /// Direct product, element `(g, h)` at index `g * |H| + h`.
    pub fn product(&self, other: &AbelianGroupTable) -> Self {
        let m = other.order;
        let n = self.order * m;
        let add = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| self.add[x / m][y / m] * m + other.add[x % m][y % m])
                    .collect()
            })
            .collect();
        AbelianGroupTable {
            order: n,
            add,
            zero: self.zero * m + other.zero,
        }
    }

    /// One representative per isomorphism class, for orders 1 through 8.
    pub fn groups_of_order(order: usize) -> Result<Vec<Self>> {
        let z = |k| AbelianGroupTable::cyclic(k);
        Ok(match order {
            1 | 2 | 3 | 5 | 6 | 7 => vec![z(order)?],
            4 => vec![z(4)?, z(2)?.product(&z(2)?)],
            8 => vec![
                z(8)?,
                z(4)?.product(&z(2)?),
                z(2)?.product(&z(2)?).product(&z(2)?),
            ],
            _ => {
                return Err(Error::BoundExceeded {
                    requested: order,
                    bound: CLASSICAL_BOUND,
                    hint: "; group tables are tabulated for orders 1 to 8",
                })
            }
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x][y]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.add
    }
}

/// One block of a classical structure: a set of carrier elements identified,
/// in ascending order, with the elements of `group`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub elements: Vec<usize>,
    pub group: AbelianGroupTable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ClassicalJson", into = "ClassicalJson")]
pub struct ClassicalStructure {
    carrier: FinObj,
    blocks: Vec<Block>,
    /// element -> (block index, position inside the block)
    locate: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct ClassicalJson {
    carrier: usize,
    blocks: Vec<Block>,
}

impl TryFrom<ClassicalJson> for ClassicalStructure {
    type Error = Error;
    fn try_from(c: ClassicalJson) -> Result<Self> {
        ClassicalStructure::new(c.carrier, c.blocks)
    }
}

impl From<ClassicalStructure> for ClassicalJson {
    fn from(c: ClassicalStructure) -> Self {
        ClassicalJson {
            carrier: c.carrier.size(),
            blocks: c.blocks,
        }
    }
}

impl ClassicalStructure {
    pub fn new(carrier: impl Into<FinObj>, blocks: Vec<Block>) -> Result<Self> {
        let carrier = carrier.into();
        let n = carrier.size();
        let mut locate = vec![None; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.elements.len() != block.group.order() {
                return Err(Error::InvalidClassical(format!(
                    "block {b} has {} elements but its group has order {}",
                    block.elements.len(),
                    block.group.order()
                )));
            }
            for (pos, &e) in block.elements.iter().enumerate() {
                let slot = locate
                    .get_mut(e)
                    .ok_or(Error::IndexOutOfRange { index: e, size: n })?;
                if slot.is_some() {
                    return Err(Error::InvalidClassical(format!(
                        "element {e} in two blocks"
                    )));
                }
                *slot = Some((b, pos));
            }
        }
        let locate = locate
            .into_iter()
            .enumerate()
            .map(|(e, s)| {
                s.ok_or_else(|| Error::InvalidClassical(format!("element {e} uncovered")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ClassicalStructure {
            carrier,
            blocks,
            locate,
        })
    }

    /// The copy/compare structure: every element is its own trivial group.
    pub fn standard(n: usize) -> Self {
        let trivial = AbelianGroupTable::cyclic(1).expect("trivial group");
        let blocks = (0..n)
            .map(|e| Block {
                elements: vec![e],
                group: trivial.clone(),
            })
            .collect();
        ClassicalStructure::new(n, blocks).expect("standard structure is valid")
    }

    /// A single group block on `0..order`.
    pub fn from_group(group: AbelianGroupTable) -> Self {
        let n = group.order();
        ClassicalStructure::new(
            n,
            vec![Block {
                elements: (0..n).collect(),
                group,
            }],
        )
        .expect("single block covers the carrier")
    }

    pub fn carrier(&self) -> &FinObj {
        &self.carrier
    }

    pub fn size(&self) -> usize {
        self.carrier.size()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn is_standard(&self) -> bool {
        self.blocks.iter().all(|b| b.group.order() == 1)
    }

    /// Sum of two elements, defined only inside one block.
    pub fn sum(&self, a: usize, b: usize) -> Option<usize> {
        let (ba, pa) = self.locate[a];
        let (bb, pb) = self.locate[b];
        (ba == bb).then(|| {
            let block = &self.blocks[ba];
            block.elements[block.group.add(pa, pb)]
        })
    }

    pub fn zeros(&self) -> Vec<usize> {
        let mut z: Vec<usize> = self
            .blocks
            .iter()
            .map(|b| b.elements[b.group.zero()])
            .collect();
        z.sort_unstable();
        z
    }

    /// `▽ : A ⊗ A -> A`.
    pub fn mult(&self) -> FinRel {
        let n = self.size();
        FinRel::from_fn(n * n, n, |ab, c| self.sum(ab / n, ab % n) == Some(c))
    }

    /// `▲ = ▽‡`.
    pub fn copy(&self) -> FinRel {
        self.mult().dagger()
    }

    /// `¡ : I -> A`, the zero of every block.
    pub fn unit(&self) -> FinRel {
        FinRel::from_pairs(1, self.size(), self.zeros().into_iter().map(|z| (0, z)))
            .expect("zeros are in range")
    }

    /// `¡‡ : A -> I`. On the standard structure this accepts every element.
    pub fn counit(&self) -> FinRel {
        self.unit().dagger()
    }
}

/// Checks the structure relations against the laws of a special commutative
/// Frobenius algebra.
pub fn validate_classical(cs: &ClassicalStructure) -> Result<Report> {
    let n = cs.size();
    let (mult, copy, unit, counit) = (cs.mult(), cs.copy(), cs.unit(), cs.counit());
    let id = FinRel::identity(n);
    let mut report = comm_monoid_report("monoid-", n, &mult, &unit)?;
    report.extend(comm_comonoid_report("comonoid-", n, &copy, &counit)?);
    report.push(equation_row("comonoid-is-dagger", &copy, &mult.dagger()));
    let middle = mult.compose(&copy)?;
    let left = id.tensor(&copy).compose(&mult.tensor(&id))?;
    let right = copy.tensor(&id).compose(&id.tensor(&mult))?;
    report.push(equation_row("frobenius-left", &left, &middle));
    report.push(equation_row("frobenius-right", &right, &middle));
    report.push(equation_row("special", &copy.compose(&mult)?, &id));
    Ok(report)
}

/// Set partitions of `0..n` in restricted-growth-string order.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(i: usize, n: usize, rgs: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            let mut blocks = vec![Vec::new(); max];
            for (e, &b) in rgs.iter().enumerate() {
                blocks[b].push(e);
            }
            out.push(blocks);
            return;
        }
        for b in 0..=max {
            rgs.push(b);
            go(i + 1, n, rgs, max.max(b + 1), out);
            rgs.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), 0, &mut out);
    out
}

/// Every classical structure on an `n`-element carrier, groups taken up to
/// isomorphism per block.
pub fn enumerate_classical(n: usize) -> Result<Vec<ClassicalStructure>> {
    enumerate_classical_bounded(n, CLASSICAL_BOUND)
}

pub fn enumerate_classical_bounded(n: usize, bound: usize) -> Result<Vec<ClassicalStructure>> {
    if n > bound.min(CLASSICAL_BOUND) {
        return Err(Error::BoundExceeded {
            requested: n,
            bound: bound.min(CLASSICAL_BOUND),
            hint: "",
        });
    }
    let mut out = Vec::new();
    for partition in set_partitions(n) {
        let choices = partition
            .iter()
            .map(|b| AbelianGroupTable::groups_of_order(b.len()))
            .collect::<Result<Vec<_>>>()?;
        let mut pick = vec![0; partition.len()];
        loop {
            let blocks = partition
                .iter()
                .zip(&pick)
                .zip(&choices)
                .map(|((elements, &k), groups)| Block {
                    elements: elements.clone(),
                    group: groups[k].clone(),
                })
                .collect();
            out.push(ClassicalStructure::new(n, blocks)?);
            // odometer over the group choice of each block
            let mut i = 0;
            while i < pick.len() {
                pick[i] += 1;
                if pick[i] < choices[i].len() {
                    break;
                }
                pick[i] = 0;
                i += 1;
            }
            if i == pick.len() {
                break;
            }
        }
    }
    Ok(out)
}

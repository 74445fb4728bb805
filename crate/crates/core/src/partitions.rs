//! Set partitions of `[n] = {1, ..., n}`, non-crossing partitions, non-crossing
//! pair partitions and the nesting forest (nearest-outer-block relation).
//!
//! Legs are 1-based. A [`Partition`] is always stored canonically: legs sorted
//! within each block, blocks sorted by their least leg. Structural equality is
//! therefore partition equality.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A partition of `[n]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Builds a partition from blocks listed in any order; legs within a block
    /// may also be unsorted. Rejects empty blocks, legs outside `[n]`, repeated
    /// legs and uncovered legs.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        let mut blocks = blocks;
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            block.sort_unstable();
            for &leg in block.iter() {
                if leg == 0 || leg > n {
                    return Err(Error::InvalidPartition(format!(
                        "leg {leg} outside [1, {n}]"
                    )));
                }
                if seen[leg] {
                    return Err(Error::InvalidPartition(format!("leg {leg} appears twice")));
                }
                seen[leg] = true;
            }
        }
        if let Some(missing) = (1..=n).find(|&leg| !seen[leg]) {
            return Err(Error::InvalidPartition(format!(
                "leg {missing} is not covered"
            )));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Partition { n, blocks })
    }

    /// The empty partition of the empty set.
    pub fn empty() -> Self {
        Partition {
            n: 0,
            blocks: Vec::new(),
        }
    }

    /// Partition into singletons.
    pub fn singletons(n: usize) -> Self {
        Partition {
            n,
            blocks: (1..=n).map(|k| vec![k]).collect(),
        }
    }

    /// Builds the partition whose blocks are the classes of `key`: legs `p` and
    /// `q` share a block iff `key[p - 1] == key[q - 1]`.
    pub fn from_kernel<T: PartialEq>(key: &[T]) -> Self {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut reps: Vec<&T> = Vec::new();
        for (i, k) in key.iter().enumerate() {
            match reps.iter().position(|r| *r == k) {
                Some(b) => blocks[b].push(i + 1),
                None => {
                    reps.push(k);
                    blocks.push(vec![i + 1]);
                }
            }
        }
        Partition {
            n: key.len(),
            blocks,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Number of blocks, `|π|`.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `block_of()[leg - 1]` is the index of the block containing `leg`.
    pub fn block_of(&self) -> Vec<usize> {
        let mut owner = vec![0; self.n];
        for (b, block) in self.blocks.iter().enumerate() {
            for &leg in block {
                owner[leg - 1] = b;
            }
        }
        owner
    }

    pub fn is_pair_partition(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 2)
    }

    /// True iff no two blocks interleave as `l1 < l1' < l2 < l2'`.
    pub fn is_non_crossing(&self) -> bool {
        self.nesting_parents().is_ok()
    }

    /// The nesting forest; fails on crossing partitions.
    pub fn nesting_forest(&self) -> Result<NestingForest> {
        let parent = self.nesting_parents()?;
        let mut children = vec![Vec::new(); self.blocks.len()];
        let mut roots = Vec::new();
        for (b, p) in parent.iter().enumerate() {
            match p {
                Some(p) => children[*p].push(b),
                None => roots.push(b),
            }
        }
        Ok(NestingForest {
            partition: self.clone(),
            parent,
            children,
            roots,
        })
    }

    // Single left-to-right scan: the stack holds blocks whose least leg has been
    // seen but whose greatest leg has not. A non-crossing partition requires every
    // non-initial leg to belong to the block on top of the stack.
    fn nesting_parents(&self) -> Result<Vec<Option<usize>>> {
        let owner = self.block_of();
        let mut parent = vec![None; self.blocks.len()];
        let mut stack: Vec<usize> = Vec::new();
        for leg in 1..=self.n {
            let b = owner[leg - 1];
            let block = &self.blocks[b];
            let first = block[0] == leg;
            let last = *block.last().unwrap() == leg;
            if first {
                parent[b] = stack.last().copied();
                if !last {
                    stack.push(b);
                }
            } else {
                if stack.last() != Some(&b) {
                    return Err(Error::Crossing);
                }
                if last {
                    stack.pop();
                }
            }
        }
        Ok(parent)
    }

    /// Splits a non-crossing pair partition `π` as `{1, 2m+2}` joined with `π'`
    /// (shifted into `[2, 2m+1]`) and `π''` (shifted into `[2m+3, 2n]`). Returns
    /// `None` for the empty partition.
    pub fn split_first_pair(&self) -> Result<Option<(Partition, Partition)>> {
        if !self.is_pair_partition() {
            return Err(Error::NotPairPartition);
        }
        if !self.is_non_crossing() {
            return Err(Error::Crossing);
        }
        let Some(first) = self.blocks.first() else {
            return Ok(None);
        };
        let close = first[1];
        let inner = self.restrict(2, close - 1);
        let outer = self.restrict(close + 1, self.n);
        Ok(Some((inner, outer)))
    }

    /// Inverse of [`Partition::split_first_pair`].
    pub fn join_pair(inner: &Partition, outer: &Partition) -> Partition {
        let close = inner.n + 2;
        let mut blocks = Vec::with_capacity(inner.len() + outer.len() + 1);
        blocks.push(vec![1, close]);
        blocks.extend(
            inner
                .blocks
                .iter()
                .map(|b| b.iter().map(|l| l + 1).collect()),
        );
        blocks.extend(
            outer
                .blocks
                .iter()
                .map(|b| b.iter().map(|l| l + close).collect()),
        );
        blocks.sort_unstable_by_key(|b: &Vec<usize>| b[0]);
        Partition {
            n: inner.n + outer.n + 2,
            blocks,
        }
    }

    // The blocks lying inside [lo, hi], relabelled to start at 1. Only valid for
    // intervals that are unions of blocks.
    fn restrict(&self, lo: usize, hi: usize) -> Partition {
        if lo > hi {
            return Partition::empty();
        }
        let blocks = self
            .blocks
            .iter()
            .filter(|b| b[0] >= lo && b[0] <= hi)
            .map(|b| b.iter().map(|l| l + 1 - lo).collect())
            .collect();
        Partition {
            n: hi + 1 - lo,
            blocks,
        }
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (j, l) in b.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{l}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.blocks.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let blocks = Vec::<Vec<usize>>::deserialize(deserializer)?;
        let n = blocks.iter().map(Vec::len).sum();
        Partition::new(n, blocks).map_err(D::Error::custom)
    }
}

/// Nearest-outer-block structure of a non-crossing partition. Block indices
/// refer to the canonical block order of the underlying partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NestingForest {
    partition: Partition,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    roots: Vec<usize>,
}

impl NestingForest {
    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    /// Nearest outer block of block `b`, or `None` for outer blocks.
    pub fn parent(&self, b: usize) -> Option<usize> {
        self.parent[b]
    }

    pub fn children(&self, b: usize) -> &[usize] {
        &self.children[b]
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    /// Blocks with no inner blocks.
    pub fn leaves(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.parent.len()).filter(|&b| self.children[b].is_empty())
    }

    /// Chain from the outermost ancestor down to `b`.
    pub fn path_to(&self, b: usize) -> Vec<usize> {
        let mut path = vec![b];
        let mut cur = b;
        while let Some(p) = self.parent[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    /// Every maximal root-to-leaf chain `B1 ≺ B2 ≺ ... ≺ Br`.
    pub fn maximal_chains(&self) -> Vec<Vec<usize>> {
        self.leaves().map(|b| self.path_to(b)).collect()
    }
}

/// A partition with one positive integer label per block (parallel to the
/// canonical block order).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct LabeledPartition {
    #[serde(rename = "blocks")]
    partition: Partition,
    labels: Vec<u64>,
}

impl LabeledPartition {
    pub fn new(partition: Partition, labels: Vec<u64>) -> Result<Self> {
        if labels.len() != partition.len() {
            return Err(Error::LengthMismatch {
                expected: partition.len(),
                found: labels.len(),
            });
        }
        if labels.contains(&0) {
            return Err(Error::OutOfRange("labels must be positive".into()));
        }
        Ok(LabeledPartition { partition, labels })
    }

    /// Builds a labeled partition from `(block, label)` pairs in any order.
    pub fn from_blocks(n: usize, labeled: Vec<(Vec<usize>, u64)>) -> Result<Self> {
        let mut labeled = labeled;
        for (b, _) in &mut labeled {
            b.sort_unstable();
        }
        labeled.sort_by_key(|(b, _)| b.first().copied().unwrap_or(0));
        let (blocks, labels): (Vec<_>, Vec<_>) = labeled.into_iter().unzip();
        LabeledPartition::new(Partition::new(n, blocks)?, labels)
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn label(&self, block: usize) -> u64 {
        self.labels[block]
    }

    /// True iff the labeling is a bijection onto `[|π|]`.
    pub fn is_ordered(&self) -> bool {
        let mut seen = vec![false; self.labels.len() + 1];
        for &l in &self.labels {
            let l = l as usize;
            if l > self.labels.len() || seen[l] {
                return false;
            }
            seen[l] = true;
        }
        true
    }

    /// The index sequence adapted to this labeled partition.
    pub fn adapted_sequence(&self) -> Vec<u64> {
        let mut seq = vec![0; self.partition.n()];
        for (block, &label) in self.partition.blocks().iter().zip(&self.labels) {
            for &leg in block {
                seq[leg - 1] = label;
            }
        }
        seq
    }
}

/// Catalan number `C_n`.
pub fn catalan(n: usize) -> u128 {
    (0..n).fold(1u128, |c, k| c * 2 * (2 * k as u128 + 1) / (k as u128 + 2))
}

/// All non-crossing partitions of `[n]`; `n = 0` yields the empty partition.
pub fn enumerate_nc(n: usize) -> impl Iterator<Item = Partition> {
    enumerate_nc_where(n, |_, _| true).into_iter()
}

/// All non-crossing partitions of `[n]` in which legs `p < q` share a block only
/// if `joinable(p, q)`. The relation must be an equivalence (block constancy of
/// some labeling), which the recursion relies on to check only consecutive legs.
pub fn enumerate_nc_where<F>(n: usize, joinable: F) -> Vec<Partition>
where
    F: Fn(usize, usize) -> bool,
{
    let mut out = Vec::new();
    let mut blocks = Vec::new();
    fill_interval(1, n, &joinable, &mut blocks, &mut |blocks| {
        out.push(Partition::new(n, blocks.to_vec()).expect("generated partition is valid"));
    });
    out
}

// Enumerates non-crossing partitions of the interval [lo, hi], calling `emit`
// for each completion of `acc`.
fn fill_interval<F, E>(lo: usize, hi: usize, joinable: &F, acc: &mut Vec<Vec<usize>>, emit: &mut E)
where
    F: Fn(usize, usize) -> bool,
    E: FnMut(&[Vec<usize>]),
{
    if lo > hi {
        emit(acc);
        return;
    }
    let mut block = vec![lo];
    grow_block(lo, hi, joinable, &mut block, acc, emit);
}

// Extends the block whose least leg is block[0]: either close it (and fill the
// rest of the interval) or add a next leg t, filling the gap before t first.
fn grow_block<F, E>(
    _lo: usize,
    hi: usize,
    joinable: &F,
    block: &mut Vec<usize>,
    acc: &mut Vec<Vec<usize>>,
    emit: &mut E,
) where
    F: Fn(usize, usize) -> bool,
    E: FnMut(&[Vec<usize>]),
{
    let last = *block.last().unwrap();
    // Close the block here.
    acc.push(block.clone());
    let mark = acc.len();
    fill_interval(last + 1, hi, joinable, acc, emit);
    acc.truncate(mark);
    acc.pop();

    for t in last + 1..=hi {
        if !joinable(last, t) {
            continue;
        }
        // Gap (last, t) is partitioned independently of everything else.
        let gaps = gap_partitions(last + 1, t - 1, joinable);
        block.push(t);
        for gap in &gaps {
            let mark = acc.len();
            acc.extend(gap.iter().cloned());
            grow_block(_lo, hi, joinable, block, acc, emit);
            acc.truncate(mark);
        }
        block.pop();
    }
}

fn gap_partitions<F>(lo: usize, hi: usize, joinable: &F) -> Vec<Vec<Vec<usize>>>
where
    F: Fn(usize, usize) -> bool,
{
    let mut out = Vec::new();
    let mut acc = Vec::new();
    fill_interval(lo, hi, joinable, &mut acc, &mut |b| out.push(b.to_vec()));
    out
}

/// All non-crossing pair partitions of `[two_n]`, generated by matching leg 1
/// with leg `2m + 2` and recursing on the inside and the right-hand remainder.
pub fn enumerate_nc_pair(two_n: usize) -> Result<impl Iterator<Item = Partition>> {
    if two_n % 2 != 0 {
        return Err(Error::OddSize(two_n));
    }
    Ok(nc_pairs(two_n / 2).into_iter())
}

fn nc_pairs(n: usize) -> Vec<Partition> {
    if n == 0 {
        return vec![Partition::empty()];
    }
    let mut out = Vec::new();
    for m in 0..n {
        let inner = nc_pairs(m);
        let outer = nc_pairs(n - 1 - m);
        for a in &inner {
            for b in &outer {
                out.push(Partition::join_pair(a, b));
            }
        }
    }
    out
}

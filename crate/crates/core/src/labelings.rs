//! Valley sequences, adaptedness, and the V-monotone, monotone and free labeling
//! predicates, together with enumeration of the labeled classes built on them.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::partitions::{
    enumerate_nc, enumerate_nc_pair, enumerate_nc_where, LabeledPartition, NestingForest, Partition,
};

/// True iff `seq` is strictly decreasing up to some pivot and strictly
/// increasing after it. The empty sequence and singletons qualify.
pub fn is_valley<T: Ord>(seq: &[T]) -> bool {
    let mut rising = false;
    for w in seq.windows(2) {
        match w[0].cmp(&w[1]) {
            std::cmp::Ordering::Greater if !rising => {}
            std::cmp::Ordering::Less => rising = true,
            _ => return false,
        }
    }
    true
}

/// Whether `seq` followed by `i` is still a valley.
pub fn extends_valley<T: Ord + Clone>(seq: &[T], i: T) -> Result<bool> {
    if !is_valley(seq) {
        return Err(Error::NotValley);
    }
    let n = seq.len();
    Ok(match n {
        0 => true,
        1 => seq[0] != i,
        _ => {
            let rising = seq[n - 2] < seq[n - 1];
            if rising {
                i > seq[n - 1]
            } else {
                i != seq[n - 1]
            }
        }
    })
}

/// Length of the longest valley prefix of `seq`.
pub fn cutoff<T: Ord>(seq: &[T]) -> Result<usize> {
    if seq.is_empty() {
        return Err(Error::Empty);
    }
    if let Some(p) = seq.windows(2).position(|w| w[0] == w[1]) {
        return Err(Error::EqualNeighbors(p + 1));
    }
    let mut rising = false;
    for (k, w) in seq.windows(2).enumerate() {
        if w[0] < w[1] {
            rising = true;
        } else if rising {
            return Ok(k + 1);
        }
    }
    Ok(seq.len())
}

/// True iff `seq` is constant on every block and equals the block's label there.
pub fn is_adapted(lp: &LabeledPartition, seq: &[u64]) -> Result<bool> {
    let n = lp.partition().n();
    if seq.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: seq.len(),
        });
    }
    Ok(lp
        .partition()
        .blocks()
        .iter()
        .zip(lp.labels())
        .all(|(block, &label)| block.iter().all(|&leg| seq[leg - 1] == label)))
}

// Walks the forest from every root, tracking whether the chain so far is still
// falling. `top` acts as an extra block enclosing all roots. A chain through
// the forest is a contiguous piece of some root-to-leaf path, and valleys are
// closed under contiguous pieces, so root-to-leaf paths suffice.
fn chains_are_valleys<L: Ord + Copy>(forest: &NestingForest, labels: &[L], top: Option<L>) -> bool {
    // (block, label of parent, still falling)
    let mut stack: Vec<(usize, Option<L>, bool)> =
        forest.roots().iter().map(|&r| (r, top, true)).collect();
    while let Some((b, parent, falling)) = stack.pop() {
        let l = labels[b];
        let falling = match parent {
            None => true,
            Some(p) if l < p && falling => true,
            Some(p) if l > p => false,
            Some(_) => return false,
        };
        for &c in forest.children(b) {
            stack.push((c, Some(l), falling));
        }
    }
    true
}

fn forest_of(lp: &LabeledPartition) -> Result<NestingForest> {
    lp.partition().nesting_forest()
}

/// True iff every nesting chain of blocks carries a valley of labels.
pub fn is_v_monotone(lp: &LabeledPartition) -> Result<bool> {
    Ok(chains_are_valleys(&forest_of(lp)?, lp.labels(), None))
}

/// Every block's label exceeds that of its nearest outer block.
pub fn is_monotone(lp: &LabeledPartition) -> Result<bool> {
    let f = forest_of(lp)?;
    Ok((0..lp.labels().len()).all(|b| f.parent(b).is_none_or(|p| lp.label(b) > lp.label(p))))
}

/// Every block's label differs from that of its nearest outer block.
pub fn is_free(lp: &LabeledPartition) -> Result<bool> {
    let f = forest_of(lp)?;
    Ok((0..lp.labels().len()).all(|b| f.parent(b).is_none_or(|p| lp.label(b) != lp.label(p))))
}

/// Block-constant labeled non-crossing partitions adapted to `seq`, filtered by
/// `keep`. Labels are forced by adaptedness.
pub fn enumerate_adapted_where<F>(seq: &[u64], keep: F) -> Vec<LabeledPartition>
where
    F: Fn(&LabeledPartition) -> bool,
{
    enumerate_nc_where(seq.len(), |p, q| seq[p - 1] == seq[q - 1])
        .into_iter()
        .map(|pi| {
            let labels = pi.blocks().iter().map(|b| seq[b[0] - 1]).collect();
            LabeledPartition::new(pi, labels).expect("one label per block")
        })
        .filter(|lp| keep(lp))
        .collect()
}

/// The class `V(seq)`: V-monotone labeled non-crossing partitions to which
/// `seq` is adapted. Equal neighboring indices are allowed.
pub fn enumerate_adapted_v(seq: &[u64]) -> Vec<LabeledPartition> {
    enumerate_adapted_where(seq, |lp| is_v_monotone(lp).expect("non-crossing"))
}

/// Free-labeled analogue of [`enumerate_adapted_v`].
pub fn enumerate_adapted_free(seq: &[u64]) -> Vec<LabeledPartition> {
    enumerate_adapted_where(seq, |lp| is_free(lp).expect("non-crossing"))
}

fn ordered_labelings(pi: &Partition) -> impl Iterator<Item = Vec<u64>> {
    let k = pi.len() as u64;
    (1..=k).permutations(pi.len())
}

/// All ordered (bijectively labeled) non-crossing partitions of `[n]`.
pub fn enumerate_onc(n: usize) -> Vec<LabeledPartition> {
    enumerate_nc(n)
        .flat_map(|pi| {
            ordered_labelings(&pi)
                .map(move |labels| LabeledPartition::new(pi.clone(), labels).expect("sized"))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// `OV(n)`: the V-monotone members of [`enumerate_onc`].
pub fn enumerate_ov(n: usize) -> Vec<LabeledPartition> {
    enumerate_onc(n)
        .into_iter()
        .filter(|lp| is_v_monotone(lp).expect("non-crossing"))
        .collect()
}

// Ordered labelings of each non-crossing pair partition of [2n] whose chains,
// with `top` (in doubled units) prepended, are valleys.
fn ov2_filtered(two_n: usize, top: Option<u64>) -> Result<Vec<LabeledPartition>> {
    let mut out = Vec::new();
    for pi in enumerate_nc_pair(two_n)? {
        let forest = pi.nesting_forest()?;
        for labels in ordered_labelings(&pi) {
            let doubled: Vec<u64> = labels.iter().map(|l| 2 * l).collect();
            if chains_are_valleys(&forest, &doubled, top) {
                out.push(LabeledPartition::new(pi.clone(), labels)?);
            }
        }
    }
    Ok(out)
}

/// `OV²(2n)`: ordered V-monotone non-crossing pair partitions.
pub fn enumerate_ov2(two_n: usize) -> Result<Vec<LabeledPartition>> {
    ov2_filtered(two_n, None)
}

/// `|OV²(2n)|` by brute force.
pub fn count_ov2(two_n: usize) -> Result<usize> {
    count_filtered(two_n, None)
}

/// Members of `OV²(2n)` that stay V-monotone under an extra enclosing block
/// labeled `k - 1/2`, for `1 <= k <= n + 1`.
pub fn enumerate_ov2_k(two_n: usize, k: usize) -> Result<Vec<LabeledPartition>> {
    ov2_filtered(two_n, Some(enclosing_label(two_n, k)?))
}

/// Cardinality of [`enumerate_ov2_k`], without materializing the members.
pub fn count_ov2_k(two_n: usize, k: usize) -> Result<usize> {
    count_filtered(two_n, Some(enclosing_label(two_n, k)?))
}

fn enclosing_label(two_n: usize, k: usize) -> Result<u64> {
    if two_n % 2 != 0 {
        return Err(Error::OddSize(two_n));
    }
    if k == 0 || k > two_n / 2 + 1 {
        return Err(Error::OutOfRange(format!(
            "k = {k} not in [1, {}]",
            two_n / 2 + 1
        )));
    }
    Ok(2 * k as u64 - 1)
}

fn count_filtered(two_n: usize, top: Option<u64>) -> Result<usize> {
    let mut count = 0;
    for pi in enumerate_nc_pair(two_n)? {
        let forest = pi.nesting_forest()?;
        let k = pi.len() as u64;
        count += (1..=k)
            .map(|l| 2 * l)
            .permutations(pi.len())
            .filter(|labels| chains_are_valleys(&forest, labels, top))
            .count();
    }
    Ok(count)
}

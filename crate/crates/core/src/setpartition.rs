//! Setpartitions: splitting a sequence into `n` nonempty blocks without
//! repeated elements inside a block.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetPartition<T> {
    pub blocks: Vec<Vec<T>>,
}

impl<T: Ord + Clone> SetPartition<T> {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// The partitioned sequence, sorted.
    pub fn sequence(&self) -> Vec<T> {
        let mut all: Vec<T> = self.blocks.iter().flatten().cloned().collect();
        all.sort();
        all
    }

    /// Blocks are nonempty sets.
    pub fn is_valid(&self) -> bool {
        self.blocks.iter().all(|b| {
            let mut sorted = b.clone();
            sorted.sort();
            !b.is_empty() && sorted.windows(2).all(|w| w[0] != w[1])
        })
    }

    /// Every block size is `⌊|S|/n⌋` or `⌈|S|/n⌉`.
    pub fn is_near_equal(&self) -> bool {
        let n = self.blocks.len();
        if n == 0 {
            return true;
        }
        let total: usize = self.blocks.iter().map(Vec::len).sum();
        let (lo, hi) = (total / n, total.div_ceil(n));
        self.blocks.iter().all(|b| b.len() == lo || b.len() == hi)
    }
}

/// `(element, multiplicity)` sorted by decreasing multiplicity, then element.
pub fn multiplicities<T: Ord + Clone>(s: &[T]) -> Vec<(T, usize)> {
    let mut counts: BTreeMap<T, usize> = BTreeMap::new();
    for x in s {
        *counts.entry(x.clone()).or_default() += 1;
    }
    let mut out: Vec<(T, usize)> = counts.into_iter().collect();
    out.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    out
}

/// `h(S) ≤ n ≤ |S|`.
pub fn has_n_setpartition<T: Ord + Clone>(s: &[T], n: usize) -> bool {
    let h = multiplicities(s).first().map_or(0, |m| m.1);
    h <= n && n <= s.len()
}

/// Largest `|X|` the counting condition quantifies over, `⌊(ℓ-1)/n⌋ + 1`, or 0 when `ℓ = 0`.
fn subset_size_bound(ell: usize, n: usize) -> usize {
    if ell == 0 {
        0
    } else {
        (ell - 1) / n + 1
    }
}

/// Whether some `S' | S` with `|S'| = ℓ + n` has an `n`-setpartition: `|S| ≥ ℓ + n`
/// and every nonempty `X` with `|X| ≤ (ℓ-1)/n + 1` holds at most
/// `|S| - ℓ + (|X|-1)n` terms of `S`. Only the sets of the `k` most frequent
/// elements need checking, since they maximize the term count for each size.
pub fn setpartition_criterion<T: Ord + Clone>(s: &[T], ell: usize, n: usize) -> bool {
    if n == 0 || s.len() < ell + n {
        return false;
    }
    let mult = multiplicities(s);
    let bound = subset_size_bound(ell, n).min(mult.len());
    let mut in_x = 0;
    for (k, (_, v)) in mult.iter().take(bound).enumerate() {
        in_x += v;
        if in_x + ell > s.len() + k * n {
            return false;
        }
    }
    true
}

/// The same condition, quantified over every nonempty subset of `ground`.
pub fn setpartition_criterion_all_subsets<T: Ord + Clone>(s: &[T], ground: &[T], ell: usize, n: usize) -> bool {
    if n == 0 || s.len() < ell + n {
        return false;
    }
    let bound = subset_size_bound(ell, n);
    let counts: Vec<usize> = ground.iter().map(|p| s.iter().filter(|x| *x == p).count()).collect();
    (1u64..1 << ground.len()).all(|mask| {
        let size = mask.count_ones() as usize;
        if size > bound {
            return true;
        }
        let in_x: usize = (0..ground.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| counts[i])
            .sum();
        in_x + ell <= s.len() + (size - 1) * n
    })
}

/// Constructs `S'` and a near-equal `n`-setpartition of it when the criterion holds:
/// keep at most `n` copies of each element, most frequent first, truncate to
/// `ℓ + n` terms and deal them round-robin.
pub fn find_subsequence_with_setpartition<T: Ord + Clone>(
    s: &[T],
    ell: usize,
    n: usize,
) -> Option<(Vec<T>, SetPartition<T>)> {
    if !setpartition_criterion(s, ell, n) {
        return None;
    }
    let items: Vec<T> = multiplicities(s)
        .into_iter()
        .flat_map(|(x, v)| std::iter::repeat_n(x, v.min(n)))
        .take(ell + n)
        .collect();
    if items.len() < ell + n {
        return None;
    }
    let mut blocks = vec![Vec::new(); n];
    for (i, x) in items.iter().enumerate() {
        blocks[i % n].push(x.clone());
    }
    let mut chosen = items;
    chosen.sort();
    Some((chosen, SetPartition { blocks }))
}

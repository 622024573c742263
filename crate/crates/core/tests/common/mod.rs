//! Brute-force oracles shared by the integration tests. They avoid the
//! library's dynamic programs entirely: products come from explicit
//! permutations and subsequences from index subsets.

#![allow(dead_code)]

use std::collections::BTreeSet;

use davlab_core::index2::{build_group, enumerate_groups};
use davlab_core::FiniteGroup;

/// Every index-2 group up to `max_order`, with its display name.
pub fn catalog(max_order: usize) -> Vec<(String, FiniteGroup)> {
    enumerate_groups(max_order)
        .into_iter()
        .map(|p| {
            let g = build_group(p).unwrap();
            (g.name(), g.group().clone())
        })
        .collect()
}

/// Products over all orderings, by Heap's algorithm.
pub fn permutation_products(g: &FiniteGroup, terms: &[usize]) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    let mut a = terms.to_vec();
    let product = |a: &[usize]| a.iter().fold(g.identity(), |acc, &x| g.mul(acc, x));
    out.insert(product(&a));
    let n = a.len();
    let mut c = vec![0; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.insert(product(&a));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

pub fn pick(terms: &[usize], mask: u32) -> Vec<usize> {
    (0..terms.len())
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| terms[i])
        .collect()
}

pub fn brute_product_one(g: &FiniteGroup, terms: &[usize]) -> bool {
    permutation_products(g, terms).contains(&g.identity())
}

/// No nonempty subsequence multiplies to 1 in any order.
pub fn brute_product_one_free(g: &FiniteGroup, terms: &[usize]) -> bool {
    (1u32..1 << terms.len()).all(|mask| !brute_product_one(g, &pick(terms, mask)))
}

/// Nonempty, product-one, and no split into two nonempty product-one parts.
pub fn brute_is_atom(g: &FiniteGroup, terms: &[usize]) -> bool {
    let full = (1u32 << terms.len()) - 1;
    !terms.is_empty()
        && brute_product_one(g, terms)
        && (1..full)
            .all(|mask| !(brute_product_one(g, &pick(terms, mask)) && brute_product_one(g, &pick(terms, full ^ mask))))
}

/// Every multiset of size `len` over `0..k`, as sorted vectors.
pub fn multisets(k: usize, len: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, len: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for x in start..k {
            cur.push(x);
            go(k, len, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, len, 0, &mut Vec::new(), &mut out);
    out
}

/// Whether the multiset can be dealt into `n` nonempty blocks with no
/// repeated element in a block, by explicit backtracking.
pub fn brute_setpartition<T: PartialEq + Clone>(terms: &[T], n: usize) -> bool {
    fn place<T: PartialEq + Clone>(terms: &[T], i: usize, blocks: &mut Vec<Vec<T>>, n: usize) -> bool {
        if i == terms.len() {
            return blocks.len() == n && blocks.iter().all(|b| !b.is_empty());
        }
        let remaining = terms.len() - i;
        let empty = n - blocks.len();
        if remaining < empty {
            return false;
        }
        for b in 0..blocks.len() {
            if !blocks[b].contains(&terms[i]) {
                blocks[b].push(terms[i].clone());
                if place(terms, i + 1, blocks, n) {
                    return true;
                }
                blocks[b].pop();
            }
        }
        if blocks.len() < n {
            blocks.push(vec![terms[i].clone()]);
            if place(terms, i + 1, blocks, n) {
                return true;
            }
            blocks.pop();
        }
        false
    }
    n >= 1 && place(terms, 0, &mut Vec::new(), n)
}

/// Some sub-multiset of size `ell + n` has an `n`-setpartition, by
/// enumerating sub-multisets through their multiplicity vectors.
pub fn brute_setpartition_subsequence(counts: &[usize], ell: usize, n: usize) -> bool {
    fn go(counts: &[usize], i: usize, chosen: &mut Vec<usize>, target: usize, n: usize) -> bool {
        let size: usize = chosen.iter().sum();
        if i == counts.len() {
            if size != target {
                return false;
            }
            let terms: Vec<usize> = chosen
                .iter()
                .enumerate()
                .flat_map(|(e, &c)| std::iter::repeat_n(e, c))
                .collect();
            return brute_setpartition(&terms, n);
        }
        for c in 0..=counts[i].min(target - size) {
            chosen.push(c);
            if go(counts, i + 1, chosen, target, n) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    go(counts, 0, &mut Vec::new(), ell + n, n)
}

/// `π` of every index subset of `terms`, as bitmasks over the group,
/// by peeling off one term at a time.
pub fn subset_product_table(g: &FiniteGroup, terms: &[usize]) -> Vec<u64> {
    assert!(g.order() <= 64);
    let mut table = vec![0u64; 1 << terms.len()];
    table[0] = 1 << g.identity();
    for mask in 1usize..table.len() {
        let mut acc = 0u64;
        for (i, &t) in terms.iter().enumerate() {
            if mask >> i & 1 == 1 {
                let rest = table[mask ^ (1 << i)];
                for x in 0..g.order() {
                    if rest >> x & 1 == 1 {
                        acc |= 1 << g.mul(x, t);
                    }
                }
            }
        }
        table[mask] = acc;
    }
    table
}

pub fn table_is_atom(g: &FiniteGroup, table: &[u64]) -> bool {
    let one = 1u64 << g.identity();
    let full = table.len() - 1;
    full > 0 && table[full] & one != 0 && (1..full).all(|m| table[m] & one == 0 || table[full ^ m] & one == 0)
}

pub fn table_is_free(g: &FiniteGroup, table: &[u64]) -> bool {
    let one = 1u64 << g.identity();
    table[1..].iter().all(|&p| p & one == 0)
}

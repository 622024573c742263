//! Unordered and ordered sequences over a finite group, and their product sets.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Element, ElementSet, FiniteGroup};

/// Largest sub-multiset lattice the product-set DP will allocate.
pub const MAX_LATTICE: usize = 1 << 24;

/// A multiset of group elements, stored as a multiplicity vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequence {
    order: usize,
    mult: Vec<u32>,
}

impl Sequence {
    /// The trivial (empty) sequence over a group of the given order.
    pub fn new(order: usize) -> Self {
        Self {
            order,
            mult: vec![0; order],
        }
    }

    pub fn from_elements<I: IntoIterator<Item = Element>>(order: usize, elements: I) -> Self {
        let mut s = Self::new(order);
        for g in elements {
            s.push(g);
        }
        s
    }

    pub fn from_pairs(order: usize, pairs: &[(Element, u32)]) -> Self {
        let mut s = Self::new(order);
        for &(g, k) in pairs {
            s.push_n(g, k);
        }
        s
    }

    /// `g^{[k]}`.
    pub fn repeated(order: usize, g: Element, k: u32) -> Self {
        Self::from_pairs(order, &[(g, k)])
    }

    pub fn group_order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.mult.iter().map(|&v| v as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.mult.iter().all(|&v| v == 0)
    }

    pub fn multiplicity(&self, g: Element) -> u32 {
        self.mult[g]
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.mult
    }

    /// `h(S)`, the largest multiplicity.
    pub fn max_multiplicity(&self) -> u32 {
        self.mult.iter().copied().max().unwrap_or(0)
    }

    pub fn support(&self) -> Vec<Element> {
        (0..self.order).filter(|&g| self.mult[g] > 0).collect()
    }

    /// Terms in non-decreasing index order.
    pub fn elements(&self) -> Vec<Element> {
        let mut out = Vec::with_capacity(self.len());
        for (g, &v) in self.mult.iter().enumerate() {
            out.extend(std::iter::repeat_n(g, v as usize));
        }
        out
    }

    pub fn pairs(&self) -> Vec<(Element, u32)> {
        self.support().into_iter().map(|g| (g, self.mult[g])).collect()
    }

    pub fn push(&mut self, g: Element) {
        self.push_n(g, 1);
    }

    pub fn push_n(&mut self, g: Element, k: u32) {
        assert!(g < self.order, "element {g} outside group of order {}", self.order);
        self.mult[g] += k;
    }

    /// Removes one copy of `g`; false if `g` is absent.
    pub fn remove_one(&mut self, g: Element) -> bool {
        if self.mult[g] == 0 {
            return false;
        }
        self.mult[g] -= 1;
        true
    }

    pub fn divides(&self, other: &Sequence) -> bool {
        self.order == other.order && self.mult.iter().zip(&other.mult).all(|(a, b)| a <= b)
    }

    /// `self · other`.
    pub fn concat(&self, other: &Sequence) -> Result<Sequence> {
        self.same_group(other)?;
        let mult = self.mult.iter().zip(&other.mult).map(|(a, b)| a + b).collect();
        Ok(Sequence {
            order: self.order,
            mult,
        })
    }

    /// `T^{[-1]} · self`.
    pub fn minus(&self, t: &Sequence) -> Result<Sequence> {
        self.same_group(t)?;
        if !t.divides(self) {
            return Err(Error::NotSubsequence);
        }
        let mult = self.mult.iter().zip(&t.mult).map(|(a, b)| a - b).collect();
        Ok(Sequence {
            order: self.order,
            mult,
        })
    }

    fn same_group(&self, other: &Sequence) -> Result<()> {
        if self.order != other.order {
            return Err(Error::GroupMismatch {
                expected: self.order,
                found: other.order,
            });
        }
        Ok(())
    }

    pub fn check_group(&self, g: &FiniteGroup) -> Result<()> {
        if self.order != g.order() {
            return Err(Error::GroupMismatch {
                expected: g.order(),
                found: self.order,
            });
        }
        Ok(())
    }

    /// `[label, multiplicity]` pairs in index order.
    pub fn to_label_pairs(&self, g: &FiniteGroup) -> Vec<(String, u32)> {
        self.pairs()
            .into_iter()
            .map(|(e, k)| (g.label(e).to_string(), k))
            .collect()
    }

    /// Parses the literal form `[["t*a",2],["a",4]]`.
    pub fn parse(g: &FiniteGroup, literal: &str) -> Result<Sequence> {
        let pairs: Vec<(String, u32)> =
            serde_json::from_str(literal).map_err(|e| Error::Parse(format!("sequence literal: {e}")))?;
        Self::from_label_pairs(g, &pairs)
    }

    pub fn from_label_pairs(g: &FiniteGroup, pairs: &[(String, u32)]) -> Result<Sequence> {
        let mut s = Sequence::new(g.order());
        for (label, k) in pairs {
            let e = g
                .find_label(label)
                .ok_or_else(|| Error::Parse(format!("unknown element label {label:?}")))?;
            s.push_n(e, *k);
        }
        Ok(s)
    }
}

/// A tuple of group elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrderedSequence {
    order: usize,
    terms: Vec<Element>,
}

impl OrderedSequence {
    pub fn new(order: usize, terms: Vec<Element>) -> Self {
        assert!(terms.iter().all(|&g| g < order), "term outside group of order {order}");
        Self { order, terms }
    }

    pub fn terms(&self) -> &[Element] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `π(S*)`, the product in the given order.
    pub fn product(&self, g: &FiniteGroup) -> Element {
        self.terms.iter().fold(g.identity(), |acc, &x| g.mul(acc, x))
    }

    /// `[S*]`.
    pub fn abelianize(&self) -> Sequence {
        Sequence::from_elements(self.order, self.terms.iter().copied())
    }

    /// Rotation `S*(j, |S*|) S*(1, j-1)`, with `j` one-based.
    pub fn cyclic_shift(&self, j: usize) -> Result<OrderedSequence> {
        if j < 1 || j > self.terms.len() {
            return Err(Error::OutOfRange {
                what: "shift position",
                value: j,
                min: 1,
                max: self.terms.len(),
            });
        }
        let mut terms = self.terms[j - 1..].to_vec();
        terms.extend_from_slice(&self.terms[..j - 1]);
        Ok(OrderedSequence {
            order: self.order,
            terms,
        })
    }

    /// First one-based interval `[j, k]` whose terms multiply to 1, found by
    /// matching prefix products. Guaranteed to exist when `|S*| ≥ |G|`.
    pub fn consecutive_product_one_scan(&self, g: &FiniteGroup) -> Option<(usize, usize)> {
        let mut seen = vec![usize::MAX; g.order()];
        seen[g.identity()] = 0;
        let mut prefix = g.identity();
        for (k, &x) in self.terms.iter().enumerate() {
            prefix = g.mul(prefix, x);
            let k = k + 1;
            if seen[prefix] != usize::MAX {
                return Some((seen[prefix] + 1, k));
            }
            seen[prefix] = k;
        }
        None
    }
}

/// Every sub-multiset of a sequence, indexed in mixed radix over its support,
/// with `π` of each.
#[derive(Clone, Debug)]
pub struct SubsequenceLattice {
    order: usize,
    support: Vec<Element>,
    caps: Vec<u32>,
    weights: Vec<usize>,
    products: Vec<ElementSet>,
}

impl SubsequenceLattice {
    pub fn build(g: &FiniteGroup, s: &Sequence) -> Result<Self> {
        s.check_group(g)?;
        let support = s.support();
        let caps: Vec<u32> = support.iter().map(|&e| s.multiplicity(e)).collect();
        let mut weights = Vec::with_capacity(caps.len());
        let mut size = 1usize;
        for &c in &caps {
            weights.push(size);
            size = size
                .checked_mul(c as usize + 1)
                .filter(|&x| x <= MAX_LATTICE)
                .ok_or_else(|| Error::Precondition(format!("sub-multiset lattice exceeds {MAX_LATTICE} states")))?;
        }
        let mut products = Vec::with_capacity(size);
        products.push(g.set_of([g.identity()]));
        let mut digits = vec![0u32; caps.len()];
        for idx in 1..size {
            // increment the mixed-radix counter
            for (d, &c) in digits.iter_mut().zip(&caps) {
                if *d < c {
                    *d += 1;
                    break;
                }
                *d = 0;
            }
            let mut set = g.empty_set();
            for (i, &d) in digits.iter().enumerate() {
                if d > 0 {
                    set.union_with(&g.right_translate(&products[idx - weights[i]], support[i]));
                }
            }
            products.push(set);
        }
        Ok(Self {
            order: g.order(),
            support,
            caps,
            weights,
            products,
        })
    }

    pub fn size(&self) -> usize {
        self.products.len()
    }

    /// Index of the full sequence.
    pub fn top(&self) -> usize {
        self.size() - 1
    }

    pub fn products(&self, idx: usize) -> &ElementSet {
        &self.products[idx]
    }

    pub fn digits(&self, mut idx: usize) -> Vec<u32> {
        self.caps
            .iter()
            .map(|&c| {
                let d = idx % (c as usize + 1);
                idx /= c as usize + 1;
                d as u32
            })
            .collect()
    }

    pub fn length(&self, idx: usize) -> usize {
        self.digits(idx).iter().map(|&d| d as usize).sum()
    }

    /// Index of `T^{[-1]} S` where `idx` is the index of `T`.
    pub fn complement(&self, idx: usize) -> usize {
        self.top() - idx
    }

    pub fn index_of(&self, t: &Sequence) -> Result<usize> {
        let mut idx = 0;
        for (g, &v) in t.multiplicities().iter().enumerate() {
            if v == 0 {
                continue;
            }
            match self.support.binary_search(&g) {
                Ok(i) if v <= self.caps[i] => idx += v as usize * self.weights[i],
                _ => return Err(Error::NotSubsequence),
            }
        }
        Ok(idx)
    }

    pub fn sequence(&self, idx: usize) -> Sequence {
        let pairs: Vec<(Element, u32)> = self.support.iter().copied().zip(self.digits(idx)).collect();
        Sequence::from_pairs(self.order, &pairs)
    }
}

/// `π(S)`; `π` of the trivial sequence is `{1}`.
pub fn product_set(g: &FiniteGroup, s: &Sequence) -> Result<ElementSet> {
    let lattice = SubsequenceLattice::build(g, s)?;
    Ok(lattice.products(lattice.top()).clone())
}

/// `Πₙ(S) = ∪_{T|S, |T|=n} π(T)`.
pub fn n_products(g: &FiniteGroup, s: &Sequence, n: usize) -> Result<ElementSet> {
    if n > s.len() {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            min: 0,
            max: s.len(),
        });
    }
    let lattice = SubsequenceLattice::build(g, s)?;
    let mut out = g.empty_set();
    for idx in 0..lattice.size() {
        if lattice.length(idx) == n {
            out.union_with(lattice.products(idx));
        }
    }
    Ok(out)
}

/// `Π(S)`, products of all nontrivial subsequences.
pub fn subsequence_products(g: &FiniteGroup, s: &Sequence) -> Result<ElementSet> {
    let lattice = SubsequenceLattice::build(g, s)?;
    let mut out = g.empty_set();
    for idx in 1..lattice.size() {
        out.union_with(lattice.products(idx));
    }
    Ok(out)
}

/// `Σₙ(S)` in an abelian group, by DP over (terms scanned, terms chosen).
pub fn n_sums(g: &FiniteGroup, s: &Sequence, n: usize) -> Result<ElementSet> {
    s.check_group(g)?;
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    if n > s.len() {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            min: 0,
            max: s.len(),
        });
    }
    let mut reach = vec![g.empty_set(); n + 1];
    reach[0].insert(g.identity());
    let mut scanned = 0;
    for x in s.elements() {
        scanned += 1;
        for c in (0..n.min(scanned)).rev() {
            let shifted = g.right_translate(&reach[c], x);
            reach[c + 1].union_with(&shifted);
        }
    }
    Ok(reach.swap_remove(n))
}

/// `1 ∈ π(S)`.
pub fn is_product_one(g: &FiniteGroup, s: &Sequence) -> Result<bool> {
    Ok(product_set(g, s)?.contains(g.identity()))
}

/// `1 ∉ Π(S)`: no nontrivial subsequence has product one.
pub fn is_product_one_free(g: &FiniteGroup, s: &Sequence) -> Result<bool> {
    Ok(!subsequence_products(g, s)?.contains(g.identity()))
}

/// Whether `U` is a minimal product-one sequence.
pub fn is_atom(g: &FiniteGroup, u: &Sequence) -> Result<bool> {
    if u.is_empty() {
        return Ok(false);
    }
    let lattice = SubsequenceLattice::build(g, u)?;
    Ok(lattice_is_atom(g, &lattice))
}

pub(crate) fn lattice_is_atom(g: &FiniteGroup, lattice: &SubsequenceLattice) -> bool {
    let one = g.identity();
    let top = lattice.top();
    top > 0
        && lattice.products(top).contains(one)
        && !(1..top).any(|i| lattice.products(i).contains(one) && lattice.products(top - i).contains(one))
}

/// For `T | S`, whether `π(T^{[-1]} S) ⊆ G'`.
pub fn g_prime_complement_check(g: &FiniteGroup, s: &Sequence, t: &Sequence) -> Result<bool> {
    let rest = s.minus(t)?;
    let commutator = g.commutator_subgroup();
    Ok(product_set(g, &rest)?.is_subset(commutator.members()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index2::{build_group, Index2Params, PresentationType};

    fn s3() -> FiniteGroup {
        build_group(Index2Params::new(0, 3, 2, PresentationType::A))
            .unwrap()
            .group()
            .clone()
    }

    #[test]
    fn product_set_of_tau_alpha() {
        let g = s3();
        let t = g.find_label("t").unwrap();
        let a = g.find_label("a").unwrap();
        let s = Sequence::from_elements(6, [t, a]);
        let pi = product_set(&g, &s).unwrap();
        let expected = g.set_of([g.find_label("t*a").unwrap(), g.find_label("t*a^2").unwrap()]);
        assert_eq!(pi, expected);
        let big_pi = subsequence_products(&g, &s).unwrap();
        assert_eq!(big_pi.len(), 4);
        assert!(big_pi.contains(t) && big_pi.contains(a));
    }

    #[test]
    fn trivial_sequence_conventions() {
        let g = FiniteGroup::cyclic(3);
        let empty = Sequence::new(3);
        assert!(is_product_one(&g, &empty).unwrap());
        assert!(is_product_one_free(&g, &empty).unwrap());
        assert!(!is_atom(&g, &empty).unwrap());
    }

    #[test]
    fn atoms_in_c3() {
        let g = FiniteGroup::cyclic(3);
        assert!(is_atom(&g, &Sequence::repeated(3, 1, 3)).unwrap());
        let with_one = Sequence::from_pairs(3, &[(0, 1), (1, 3)]);
        assert!(!is_atom(&g, &with_one).unwrap());
        assert!(is_product_one_free(&g, &Sequence::repeated(3, 1, 2)).unwrap());
    }

    #[test]
    fn n_sums_example() {
        let g = FiniteGroup::cyclic(5);
        let s = Sequence::from_elements(5, [1, 1, 2, 3]);
        assert_eq!(n_sums(&g, &s, 2).unwrap().to_vec(), vec![0, 2, 3, 4]);
        assert_eq!(n_sums(&g, &s, 4).unwrap().to_vec(), vec![2]);
        assert_eq!(n_sums(&g, &s, 1).unwrap().to_vec(), vec![1, 2, 3]);
        assert!(matches!(n_sums(&s3(), &Sequence::new(6), 0), Err(Error::NotAbelian)));
        assert!(matches!(n_sums(&g, &s, 5), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn scan_and_shift() {
        let g = FiniteGroup::cyclic(3);
        let s = OrderedSequence::new(3, vec![1, 1, 1]);
        assert_eq!(s.consecutive_product_one_scan(&g), Some((1, 3)));
        assert_eq!(OrderedSequence::new(3, vec![1]).consecutive_product_one_scan(&g), None);
        assert_eq!(s.cyclic_shift(1).unwrap(), s);
        assert!(s.cyclic_shift(4).is_err());
        let t = OrderedSequence::new(3, vec![0, 1, 2]);
        assert_eq!(t.cyclic_shift(2).unwrap().terms(), &[1, 2, 0]);
    }

    #[test]
    fn complement_in_commutator() {
        let g = s3();
        let ta = g.find_label("t*a").unwrap();
        let a = g.find_label("a").unwrap();
        let s = Sequence::from_pairs(6, &[(ta, 2), (a, 4)]);
        let t = Sequence::repeated(6, a, 3);
        assert!(g_prime_complement_check(&g, &s, &t).unwrap());
        assert!(g_prime_complement_check(&g, &s, &s).unwrap());
        let too_many = Sequence::repeated(6, a, 5);
        assert!(matches!(
            g_prime_complement_check(&g, &s, &too_many),
            Err(Error::NotSubsequence)
        ));
    }

    #[test]
    fn literal_round_trip() {
        let g = s3();
        let s = Sequence::parse(&g, r#"[["t*a",2],["a",4]]"#).unwrap();
        assert_eq!(s.len(), 6);
        let pairs = s.to_label_pairs(&g);
        assert_eq!(pairs, vec![("a".to_string(), 4), ("t*a".to_string(), 2)]);
        assert!(Sequence::parse(&g, r#"[["x",1]]"#).is_err());
    }

    #[test]
    fn lattice_indexing() {
        let g = FiniteGroup::cyclic(4);
        let s = Sequence::from_pairs(4, &[(1, 2), (3, 1)]);
        let lat = SubsequenceLattice::build(&g, &s).unwrap();
        assert_eq!(lat.size(), 6);
        let t = Sequence::from_pairs(4, &[(1, 1), (3, 1)]);
        let idx = lat.index_of(&t).unwrap();
        assert_eq!(lat.sequence(idx), t);
        assert_eq!(lat.sequence(lat.complement(idx)), Sequence::repeated(4, 1, 1));
        assert_eq!(lat.products(idx).to_vec(), vec![0]);
    }
}

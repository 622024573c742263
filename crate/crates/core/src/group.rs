//! Finite groups given by a precomputed Cayley table.
//!
//! Elements are dense indices `0..order` and index `0` is always the
//! identity. Element sets are bit-vectors over those indices, so product
//! sets, stabilizers and subgroup closures reduce to word operations.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of an element inside its [`FiniteGroup`].
pub type Element = usize;

/// A subset of a finite group, stored as a bit-vector sized to the group order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    universe: usize,
    words: Vec<u64>,
}

impl ElementSet {
    pub fn new(universe: usize) -> Self {
        Self {
            universe,
            words: vec![0; universe.div_ceil(64).max(1)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut set = Self::new(universe);
        for g in 0..universe {
            set.insert(g);
        }
        set
    }

    pub fn singleton(universe: usize, g: Element) -> Self {
        let mut set = Self::new(universe);
        set.insert(g);
        set
    }

    pub fn from_elements<I: IntoIterator<Item = Element>>(universe: usize, elements: I) -> Self {
        let mut set = Self::new(universe);
        for g in elements {
            set.insert(g);
        }
        set
    }

    /// Builds a set from a single 64-bit mask (groups of order at most 64).
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        assert!(universe <= 64, "mask conversion needs order <= 64");
        let mut set = Self::new(universe);
        set.words[0] = mask;
        set
    }

    /// The low 64 bits; exact whenever the universe has at most 64 elements.
    pub fn mask(&self) -> u64 {
        self.words[0]
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, g: Element) {
        assert!(g < self.universe, "element {g} outside universe {}", self.universe);
        self.words[g / 64] |= 1 << (g % 64);
    }

    pub fn remove(&mut self, g: Element) {
        if g < self.universe {
            self.words[g / 64] &= !(1 << (g % 64));
        }
    }

    pub fn contains(&self, g: Element) -> bool {
        g < self.universe && self.words[g / 64] & (1 << (g % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let bit = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + bit)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<Element> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<Element> {
        self.iter().next()
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
        out
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A subgroup, represented by its member set inside the parent group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    members: ElementSet,
}

impl Subgroup {
    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: Element) -> bool {
        self.members.contains(g)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn elements(&self) -> Vec<Element> {
        self.members.to_vec()
    }
}

/// JSON form of a Cayley table: `{order, table, labels?}` with `table` row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleyJson {
    pub order: usize,
    pub table: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// The group `G/H` together with the canonical projection `G -> G/H`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    pub projection: Vec<Element>,
}

impl Quotient {
    pub fn project(&self, g: Element) -> Element {
        self.projection[g]
    }
}

/// An immutable finite group with a precomputed multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<Element>,
    inverses: Vec<Element>,
    orders: Vec<usize>,
    labels: Vec<String>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("labels", &self.labels)
            .finish()
    }
}

impl FiniteGroup {
    /// Validates and builds a group from a row-major table.
    ///
    /// Index 0 must be the identity. Every row and column must be a
    /// permutation and the operation must be associative (checked exhaustively).
    pub fn from_table(order: usize, table: Vec<Element>, labels: Option<Vec<String>>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidTable("order must be positive".into()));
        }
        if table.len() != order * order {
            return Err(Error::InvalidTable(format!(
                "expected {} entries, found {}",
                order * order,
                table.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&x| x >= order) {
            return Err(Error::InvalidTable(format!("entry {bad} out of range")));
        }
        let labels = match labels {
            Some(labels) => {
                if labels.len() != order {
                    return Err(Error::InvalidTable(format!(
                        "expected {order} labels, found {}",
                        labels.len()
                    )));
                }
                let distinct: BTreeSet<&String> = labels.iter().collect();
                if distinct.len() != order {
                    return Err(Error::InvalidTable("labels are not distinct".into()));
                }
                labels
            }
            None => (0..order).map(|g| format!("g{g}")).collect(),
        };
        for g in 0..order {
            if table[g] != g || table[g * order] != g {
                return Err(Error::InvalidTable("element 0 is not a two-sided identity".into()));
            }
        }
        let mut seen = vec![false; order];
        for row in 0..order {
            seen.iter_mut().for_each(|s| *s = false);
            for col in 0..order {
                seen[table[row * order + col]] = true;
            }
            if seen.iter().any(|s| !s) {
                return Err(Error::InvalidTable(format!("row {row} is not a permutation")));
            }
        }
        for col in 0..order {
            seen.iter_mut().for_each(|s| *s = false);
            for row in 0..order {
                seen[table[row * order + col]] = true;
            }
            if seen.iter().any(|s| !s) {
                return Err(Error::InvalidTable(format!("column {col} is not a permutation")));
            }
        }
        for a in 0..order {
            for b in 0..order {
                let ab = table[a * order + b];
                for c in 0..order {
                    if table[ab * order + c] != table[a * order + table[b * order + c]] {
                        return Err(Error::InvalidTable(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(Self::assemble(order, table, labels))
    }

    fn assemble(order: usize, table: Vec<Element>, labels: Vec<String>) -> Self {
        let mut inverses = vec![0; order];
        for a in 0..order {
            inverses[a] = (0..order)
                .find(|&b| table[a * order + b] == 0)
                .expect("latin square has an inverse in every row");
        }
        let mut orders = vec![1; order];
        for (a, ord) in orders.iter_mut().enumerate() {
            let mut x = a;
            while x != 0 {
                x = table[x * order + a];
                *ord += 1;
            }
        }
        Self {
            order,
            table,
            inverses,
            orders,
            labels,
        }
    }

    /// The additive cyclic group `Z_k`; element `i` is the residue `i`.
    pub fn cyclic(k: usize) -> Self {
        assert!(k > 0);
        let table = (0..k * k).map(|i| (i / k + i % k) % k).collect();
        let labels = (0..k).map(|i| i.to_string()).collect();
        Self::assemble(k, table, labels)
    }

    pub fn from_cayley_json(json: &CayleyJson) -> Result<Self> {
        Self::from_table(json.order, json.table.clone(), json.labels.clone())
    }

    pub fn to_cayley_json(&self) -> CayleyJson {
        CayleyJson {
            order: self.order,
            table: self.table.clone(),
            labels: Some(self.labels.clone()),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Element {
        0
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, g: Element, h: Element) -> Element {
        self.table[g * self.order + h]
    }

    /// Checked multiplication.
    pub fn multiply(&self, g: Element, h: Element) -> Result<Element> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.mul(g, h))
    }

    pub fn check(&self, g: Element) -> Result<()> {
        if g < self.order {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                index: g,
                order: self.order,
            })
        }
    }

    #[inline]
    pub fn inverse(&self, g: Element) -> Element {
        self.inverses[g]
    }

    /// Least `k >= 1` with `g^k = 1`.
    pub fn element_order(&self, g: Element) -> usize {
        self.orders[g]
    }

    pub fn pow(&self, g: Element, k: i64) -> Element {
        let base = if k < 0 { self.inverse(g) } else { g };
        let k = k.unsigned_abs() as usize % self.orders[g];
        (0..k).fold(0, |acc, _| self.mul(acc, base))
    }

    pub fn label(&self, g: Element) -> &str {
        &self.labels[g]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn find_label(&self, label: &str) -> Option<Element> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn commutator(&self, x: Element, y: Element) -> Element {
        let xi = self.inverse(x);
        let yi = self.inverse(y);
        self.mul(self.mul(xi, yi), self.mul(x, y))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        self.orders.contains(&self.order)
    }

    pub fn empty_set(&self) -> ElementSet {
        ElementSet::new(self.order)
    }

    pub fn set_of<I: IntoIterator<Item = Element>>(&self, elements: I) -> ElementSet {
        ElementSet::from_elements(self.order, elements)
    }

    /// `Ag` for a set `A`.
    pub fn right_translate(&self, set: &ElementSet, g: Element) -> ElementSet {
        self.set_of(set.iter().map(|a| self.mul(a, g)))
    }

    /// `gA` for a set `A`.
    pub fn left_translate(&self, g: Element, set: &ElementSet) -> ElementSet {
        self.set_of(set.iter().map(|a| self.mul(g, a)))
    }

    /// The product set `AB`.
    pub fn product_of_sets(&self, a: &ElementSet, b: &ElementSet) -> ElementSet {
        let mut out = self.empty_set();
        for x in a.iter() {
            for y in b.iter() {
                out.insert(self.mul(x, y));
            }
        }
        out
    }

    fn check_set(&self, set: &ElementSet) -> Result<()> {
        if set.universe() != self.order {
            return Err(Error::GroupMismatch {
                expected: self.order,
                found: set.universe(),
            });
        }
        Ok(())
    }

    fn closure(&self, generators: &ElementSet) -> ElementSet {
        let gens: Vec<Element> = generators.iter().collect();
        let mut members = self.set_of([0]);
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !members.contains(y) {
                    members.insert(y);
                    queue.push_back(y);
                }
            }
        }
        members
    }

    /// `<A>`, the least subgroup containing `A`.
    pub fn generated_subgroup(&self, set: &ElementSet) -> Result<Subgroup> {
        self.check_set(set)?;
        if set.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(Subgroup {
            members: self.closure(set),
        })
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup {
            members: self.set_of([0]),
        }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            members: ElementSet::full(self.order),
        }
    }

    /// Wraps an element set as a subgroup after checking closure.
    pub fn subgroup_from_set(&self, set: ElementSet) -> Result<Subgroup> {
        self.check_set(&set)?;
        if !set.contains(0) {
            return Err(Error::Precondition("subgroup must contain the identity".into()));
        }
        for a in set.iter() {
            if !set.contains(self.inverse(a)) || set.iter().any(|b| !set.contains(self.mul(a, b))) {
                return Err(Error::Precondition(
                    "set is not closed under the group operation".into(),
                ));
            }
        }
        Ok(Subgroup { members: set })
    }

    /// `G' = <x^-1 y^-1 x y>`.
    pub fn commutator_subgroup(&self) -> Subgroup {
        let commutators = self.set_of(
            (0..self.order)
                .flat_map(|x| (0..self.order).map(move |y| (x, y)))
                .map(|(x, y)| self.commutator(x, y)),
        );
        Subgroup {
            members: self.closure(&commutators),
        }
    }

    pub fn center(&self) -> Subgroup {
        Subgroup {
            members: self
                .set_of((0..self.order).filter(|&z| (0..self.order).all(|x| self.mul(z, x) == self.mul(x, z)))),
        }
    }

    /// `C_G(A) = {g : ga = ag for all a in A}`.
    pub fn centralizer(&self, set: &ElementSet) -> Result<Subgroup> {
        self.check_set(set)?;
        if set.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(Subgroup {
            members: self.set_of((0..self.order).filter(|&g| set.iter().all(|a| self.mul(g, a) == self.mul(a, g)))),
        })
    }

    /// Left stabilizer `H(A) = {g : gA = A}`.
    pub fn left_stabilizer(&self, set: &ElementSet) -> Result<Subgroup> {
        self.check_set(set)?;
        if set.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(Subgroup {
            members: self.set_of((0..self.order).filter(|&g| set.iter().all(|a| set.contains(self.mul(g, a))))),
        })
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        h.members
            .iter()
            .all(|x| (0..self.order).all(|g| h.contains(self.mul(self.mul(self.inverse(g), x), g))))
    }

    /// `G/H` on left cosets, ordered by their least element, with the projection map.
    pub fn quotient(&self, h: &Subgroup) -> Result<Quotient> {
        self.check_set(&h.members)?;
        if !self.is_normal(h) {
            return Err(Error::NotNormal);
        }
        let mut projection = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in 0..self.order {
            if projection[g] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(g);
            for x in h.members.iter() {
                projection[self.mul(g, x)] = idx;
            }
        }
        let k = reps.len();
        let mut table = vec![0; k * k];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                table[i * k + j] = projection[self.mul(a, b)];
            }
        }
        let labels = reps.iter().map(|&g| format!("[{}]", self.label(g))).collect();
        Ok(Quotient {
            group: Self::assemble(k, table, labels),
            projection,
        })
    }

    /// The subgroup `H` as a group in its own right, plus the embedding `H -> G`.
    pub fn induced_group(&self, h: &Subgroup) -> (FiniteGroup, Vec<Element>) {
        let embedding: Vec<Element> = h.members.to_vec();
        let mut local = vec![usize::MAX; self.order];
        for (i, &g) in embedding.iter().enumerate() {
            local[g] = i;
        }
        let k = embedding.len();
        let mut table = vec![0; k * k];
        for (i, &a) in embedding.iter().enumerate() {
            for (j, &b) in embedding.iter().enumerate() {
                table[i * k + j] = local[self.mul(a, b)];
            }
        }
        let labels = embedding.iter().map(|&g| self.labels[g].clone()).collect();
        (Self::assemble(k, table, labels), embedding)
    }

    /// Every subgroup, as joins of cyclic subgroups, sorted by order then members.
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let cyclic: BTreeSet<ElementSet> = (0..self.order).map(|g| self.closure(&self.set_of([g]))).collect();
        let mut all = cyclic.clone();
        let mut frontier: Vec<ElementSet> = cyclic.iter().cloned().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for h in &frontier {
                for c in &cyclic {
                    if c.is_subset(h) {
                        continue;
                    }
                    let join = self.closure(&h.union(c));
                    if all.insert(join.clone()) {
                        next.push(join);
                    }
                }
            }
            frontier = next;
        }
        let mut subgroups: Vec<Subgroup> = all.into_iter().map(|members| Subgroup { members }).collect();
        subgroups.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members.cmp(&b.members)));
        subgroups
    }

    /// Histogram of element orders, indexed by order.
    pub fn order_histogram(&self) -> Vec<usize> {
        let mut hist = vec![0; self.order + 1];
        for &o in &self.orders {
            hist[o] += 1;
        }
        hist
    }
}

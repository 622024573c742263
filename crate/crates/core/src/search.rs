//! Exhaustive computation of the small and large Davenport constants.
//!
//! Sequences are enumerated as multisets in non-decreasing element order.
//! Each worker keeps an arena holding `π(T)` (as a 64-bit mask) for every
//! sub-multiset `T` of the current sequence `S`, indexed in mixed radix over
//! `supp(S)`. Appending a term appends one block to the arena and
//! backtracking truncates it, so the product-set DP is never recomputed.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Element, FiniteGroup};
use crate::index2::{build_group, Index2Params};
use crate::sequence::Sequence;

/// Default largest group order searched.
pub const DEFAULT_CAP: usize = 12;
/// Largest group order searched with `--deep`.
pub const DEEP_CAP: usize = 16;
/// Hard limit of the 64-bit product-set representation.
pub const MAX_ENGINE_ORDER: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOptions {
    /// Worker threads; 0 lets rayon decide.
    pub threads: usize,
    /// Largest group order accepted.
    pub cap: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            threads: 0,
            cap: DEFAULT_CAP,
        }
    }
}

impl SearchOptions {
    pub fn deep() -> Self {
        Self {
            cap: DEEP_CAP,
            ..Self::default()
        }
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    fn check(&self, order: usize) -> Result<()> {
        let cap = self.cap.min(MAX_ENGINE_ORDER);
        if order > cap {
            return Err(Error::CapExceeded { order, cap });
        }
        Ok(())
    }

    fn run<T: Send>(&self, job: impl FnOnce() -> T + Send) -> T {
        if self.threads == 0 {
            return job();
        }
        match rayon::ThreadPoolBuilder::new().num_threads(self.threads).build() {
            Ok(pool) => pool.install(job),
            Err(_) => job(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub prunes: u64,
    pub elapsed_ms: u64,
}

/// Result of one extremal search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extremal {
    pub value: usize,
    pub witness: Sequence,
    pub stats: SearchStats,
}

/// Precomputed right-multiplication tables and the `G/G'` projection.
pub struct SearchEngine {
    order: usize,
    chunks: usize,
    rmul: Vec<u64>,
    inverse: Vec<Element>,
    coset_of: Vec<usize>,
    coset_mul: Vec<usize>,
    coset_count: usize,
    commutator_order: u32,
}

struct Arena {
    pi: Vec<u64>,
    po: Vec<bool>,
    lens: Vec<u16>,
    elems: Vec<Element>,
    mults: Vec<u32>,
    weights: Vec<usize>,
    history: Vec<(usize, bool)>,
    path: Vec<Element>,
    cosets: Vec<usize>,
}

impl Arena {
    fn new() -> Self {
        Self {
            pi: vec![1],
            po: vec![false],
            lens: vec![0],
            elems: Vec::new(),
            mults: Vec::new(),
            weights: Vec::new(),
            history: Vec::new(),
            path: Vec::new(),
            cosets: vec![0],
        }
    }

    fn top(&self) -> usize {
        self.pi.len() - 1
    }

    fn len(&self) -> usize {
        self.path.len()
    }

    fn last(&self) -> Option<Element> {
        self.path.last().copied()
    }

    fn coset(&self) -> usize {
        *self.cosets.last().expect("root coset")
    }

    /// Appends `e` and returns the union of the new products.
    fn push(&mut self, eng: &SearchEngine, e: Element) -> u64 {
        let l = self.pi.len();
        let fresh = self.elems.last() != Some(&e);
        if fresh {
            self.elems.push(e);
            self.mults.push(1);
            self.weights.push(l);
        } else {
            *self.mults.last_mut().expect("nonempty") += 1;
        }
        let k = self.elems.len() - 1;
        let w = self.weights[k];
        // entry l + b is T·e with T the sub-multiset of the earlier elements at b
        for b in 0..w {
            let j = l + b - w;
            self.pi.push(eng.translate(self.pi[j], e));
            self.po.push(self.po[j]);
            self.lens.push(self.lens[j] + 1);
        }
        // π(M) = ∪ π(M - g)·g over g ∈ supp(M): entries whose digit i is positive
        for i in 0..k {
            let (wi, ei) = (self.weights[i], self.elems[i]);
            let period = wi * (self.mults[i] as usize + 1);
            for run in (0..w).step_by(period) {
                for b in run + wi..run + period {
                    let idx = l + b;
                    let mask = eng.translate(self.pi[idx - wi], ei);
                    self.pi[idx] |= mask;
                    let po = self.po[idx - wi];
                    self.po[idx] |= po;
                }
            }
        }
        let mut block_union = 0;
        for idx in l..l + w {
            block_union |= self.pi[idx];
            self.po[idx] |= self.pi[idx] & 1 != 0;
        }
        self.history.push((l, fresh));
        self.path.push(e);
        let c = eng.coset_mul[self.coset() * eng.coset_count + eng.coset_of[e]];
        self.cosets.push(c);
        block_union
    }

    fn pop(&mut self) {
        let (l, fresh) = self.history.pop().expect("push before pop");
        self.pi.truncate(l);
        self.po.truncate(l);
        self.lens.truncate(l);
        if fresh {
            self.elems.pop();
            self.mults.pop();
            self.weights.pop();
        } else {
            *self.mults.last_mut().expect("nonempty") -= 1;
        }
        self.path.pop();
        self.cosets.pop();
    }

    /// `1 ∈ π(S)` and no split into two nontrivial product-one parts.
    fn is_atom(&self) -> bool {
        let top = self.top();
        top > 0 && self.pi[top] & 1 != 0 && !(1..top).any(|i| self.pi[i] & self.pi[top - i] & 1 != 0)
    }

    /// Scans the nontrivial `T | S` whose `π(T)` is a full `G'`-coset.
    ///
    /// For an atom `U` containing `S`, `π(T^{[-1]} U)` contains a full coset
    /// and lies in `G'`, so `T^{[-1]} U` is product-one; hence `U - T` must be
    /// product-one free. Returns `None` when some `S - T` already fails this
    /// (no superset of `S` is an atom), else the least such `|T|`, which
    /// bounds `|U| ≤ |T| + d(G)`.
    fn coset_filling_scan(&self, commutator_order: u32) -> Option<usize> {
        let top = self.top();
        let mut shortest = usize::MAX;
        for i in 1..=top {
            if self.pi[i].count_ones() == commutator_order {
                if self.po[top - i] {
                    return None;
                }
                shortest = shortest.min(self.lens[i] as usize);
            }
        }
        Some(shortest)
    }

    fn sequence(&self, order: usize) -> Sequence {
        Sequence::from_elements(order, self.path.iter().copied())
    }
}

#[derive(Default)]
struct Outcome {
    best: Option<Vec<Element>>,
    nodes: u64,
    prunes: u64,
}

impl Outcome {
    fn offer(&mut self, candidate: &[Element]) {
        let better = match &self.best {
            None => true,
            Some(b) => candidate.len() > b.len() || (candidate.len() == b.len() && candidate < b.as_slice()),
        };
        if better {
            self.best = Some(candidate.to_vec());
        }
    }

    fn merge(mut self, other: Outcome) -> Outcome {
        if let Some(b) = &other.best {
            self.offer(b);
        }
        self.nodes += other.nodes;
        self.prunes += other.prunes;
        self
    }
}

/// Canonical prefixes of length 2 handed to workers.
fn task_prefixes(order: usize) -> Vec<(Element, Element)> {
    (1..order).flat_map(|a| (a..order).map(move |b| (a, b))).collect()
}

impl SearchEngine {
    pub fn new(g: &FiniteGroup) -> Result<Self> {
        let order = g.order();
        if order > MAX_ENGINE_ORDER {
            return Err(Error::CapExceeded {
                order,
                cap: MAX_ENGINE_ORDER,
            });
        }
        let chunks = order.div_ceil(8);
        let mut rmul = vec![0u64; order * chunks * 256];
        for e in 0..order {
            for c in 0..chunks {
                let base = (e * chunks + c) * 256;
                for byte in 1..256usize {
                    let low = byte.trailing_zeros() as usize;
                    let x = c * 8 + low;
                    let bit = if x < order { 1u64 << g.mul(x, e) } else { 0 };
                    rmul[base + byte] = rmul[base + (byte & (byte - 1))] | bit;
                }
            }
        }
        let commutator = g.commutator_subgroup();
        let quotient = g.quotient(&commutator)?;
        let coset_count = quotient.group.order();
        let mut coset_mul = vec![0; coset_count * coset_count];
        for a in 0..coset_count {
            for b in 0..coset_count {
                coset_mul[a * coset_count + b] = quotient.group.mul(a, b);
            }
        }
        Ok(Self {
            order,
            chunks,
            rmul,
            inverse: (0..order).map(|x| g.inverse(x)).collect(),
            coset_of: quotient.projection,
            coset_mul,
            coset_count,
            commutator_order: commutator.order() as u32,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    fn translate(&self, mask: u64, e: Element) -> u64 {
        let base = e * self.chunks * 256;
        let mut out = 0;
        let mut m = mask;
        let mut c = 0;
        while m != 0 {
            out |= self.rmul[base + c * 256 + (m & 0xff) as usize];
            m >>= 8;
            c += 1;
        }
        out
    }

    /// `d(G)` with the lexicographically first longest product-one free sequence.
    pub fn small_davenport(&self) -> Extremal {
        let start = Instant::now();
        let mut arena = Arena::new();
        let mut root = Outcome::default();
        self.small_dfs(&mut arena, 1, 1, &mut root);
        let merged = task_prefixes(self.order)
            .into_par_iter()
            .map(|(a, b)| {
                let mut out = Outcome::default();
                let mut arena = Arena::new();
                let u = self.small_extend(&mut arena, 1, a);
                if let Some(u) = u {
                    if let Some(u) = self.small_extend(&mut arena, u, b) {
                        self.small_dfs(&mut arena, u, self.order, &mut out);
                    }
                }
                out
            })
            .collect::<Vec<_>>()
            .into_iter()
            .fold(root, Outcome::merge);
        self.finish(merged, start)
    }

    /// Pushes `e` if `S·e` stays product-one free. Returns the new `Π(S) ∪ {1}`.
    fn small_extend(&self, arena: &mut Arena, union: u64, e: Element) -> Option<u64> {
        // 1 ∈ π(T·e) for some T | S iff e⁻¹ ∈ π(T), by cyclic shifting
        if e == 0 || union >> self.inverse[e] & 1 != 0 {
            return None;
        }
        Some(union | arena.push(self, e))
    }

    fn small_dfs(&self, arena: &mut Arena, union: u64, max_len: usize, out: &mut Outcome) {
        out.nodes += 1;
        out.offer(&arena.path);
        if arena.len() >= max_len {
            return;
        }
        for e in arena.last().unwrap_or(1)..self.order {
            match self.small_extend(arena, union, e) {
                Some(u) => {
                    self.small_dfs(arena, u, max_len, out);
                    arena.pop();
                }
                None => out.prunes += 1,
            }
        }
    }

    /// `D(G)` with the lexicographically first longest atom.
    pub fn large_davenport(&self) -> Extremal {
        let start = Instant::now();
        let d = self.small_davenport().value;
        let mut root = Outcome::default();
        self.large_children(&mut Arena::new(), 1, d, &mut root);
        let merged = task_prefixes(self.order)
            .into_par_iter()
            .map(|(a, b)| {
                let mut out = Outcome::default();
                let mut arena = Arena::new();
                arena.push(self, a);
                if arena.coset_filling_scan(self.commutator_order).is_some() {
                    arena.push(self, b);
                    self.large_node(&mut arena, self.order, d, &mut out);
                }
                out
            })
            .collect::<Vec<_>>()
            .into_iter()
            .fold(root, Outcome::merge);
        let mut merged = merged;
        // the sequence 1 is always an atom
        merged.offer(&[0]);
        self.finish(merged, start)
    }

    fn large_children(&self, arena: &mut Arena, max_len: usize, d: usize, out: &mut Outcome) {
        if arena.len() >= max_len {
            return;
        }
        // the identity never occurs in an atom of length ≥ 2
        for e in arena.last().unwrap_or(1)..self.order {
            arena.push(self, e);
            self.large_node(arena, max_len, d, out);
            arena.pop();
        }
    }

    fn large_node(&self, arena: &mut Arena, max_len: usize, d: usize, out: &mut Outcome) {
        out.nodes += 1;
        let Some(shortest) = arena.coset_filling_scan(self.commutator_order) else {
            out.prunes += 1;
            return;
        };
        // d + 1 is always attained, so only branches that can reach it matter
        let floor = out.best.as_ref().map_or(0, Vec::len).max(d + 1);
        if shortest.saturating_add(d) < floor {
            out.prunes += 1;
            return;
        }
        if arena.coset() == 0 && arena.is_atom() {
            out.offer(&arena.path);
        }
        self.large_children(arena, max_len, d, out);
    }

    /// The lexicographically first atom of length exactly `len`, if any.
    pub fn find_atom_of_length(&self, len: usize) -> Option<Sequence> {
        if len == 1 {
            return Some(Sequence::repeated(self.order, 0, 1));
        }
        let mut arena = Arena::new();
        self.first_atom(&mut arena, len).then(|| arena.sequence(self.order))
    }

    fn first_atom(&self, arena: &mut Arena, len: usize) -> bool {
        if arena.len() == len {
            return arena.coset() == 0 && arena.is_atom();
        }
        for e in arena.last().unwrap_or(1)..self.order {
            arena.push(self, e);
            if arena.coset_filling_scan(self.commutator_order).is_some() && self.first_atom(arena, len) {
                return true;
            }
            arena.pop();
        }
        false
    }

    fn finish(&self, out: Outcome, start: Instant) -> Extremal {
        let path = out.best.unwrap_or_default();
        Extremal {
            value: path.len(),
            witness: Sequence::from_elements(self.order, path),
            stats: SearchStats {
                nodes: out.nodes,
                prunes: out.prunes,
                elapsed_ms: start.elapsed().as_millis() as u64,
            },
        }
    }

    /// Every `S` with `|S| ∈ [lo, hi]` (identity allowed) and every
    /// `x ∈ π(S)` admit a nontrivial product-one `T | S`, `|T| ≤ bound`,
    /// with `x ∈ π(T^{[-1]} S)`. Returns the first failure and the count checked.
    fn characterization_scan(&self, lo: usize, hi: usize, bound: usize) -> (Option<(Vec<Element>, Element)>, u64) {
        let results: Vec<_> = (0..self.order)
            .into_par_iter()
            .map(|first| {
                let mut arena = Arena::new();
                let mut checked = 0;
                let mut failure = None;
                if lo == 0 && first == 0 {
                    checked += 1;
                    failure = self.characterization_failure(&arena, bound).map(|x| (Vec::new(), x));
                }
                if failure.is_none() && hi > 0 {
                    arena.push(self, first);
                    failure = self.characterization_dfs(&mut arena, lo, hi, bound, &mut checked);
                }
                (failure, checked)
            })
            .collect();
        let checked = results.iter().map(|r| r.1).sum();
        (results.into_iter().find_map(|r| r.0), checked)
    }

    fn characterization_dfs(
        &self,
        arena: &mut Arena,
        lo: usize,
        hi: usize,
        bound: usize,
        checked: &mut u64,
    ) -> Option<(Vec<Element>, Element)> {
        if arena.len() >= lo {
            *checked += 1;
            if let Some(x) = self.characterization_failure(arena, bound) {
                return Some((arena.path.clone(), x));
            }
        }
        if arena.len() < hi {
            for e in arena.last().unwrap_or(0)..self.order {
                arena.push(self, e);
                let found = self.characterization_dfs(arena, lo, hi, bound, checked);
                arena.pop();
                if found.is_some() {
                    return found;
                }
            }
        }
        None
    }

    fn characterization_failure(&self, arena: &Arena, bound: usize) -> Option<Element> {
        let missing = self.missing_products(arena, bound);
        (missing != 0).then(|| missing.trailing_zeros() as Element)
    }

    fn missing_products(&self, arena: &Arena, bound: usize) -> u64 {
        let top = arena.top();
        let mut reachable = 0u64;
        for i in 1..=top {
            if arena.pi[i] & 1 != 0 && (arena.lens[i] as usize) <= bound {
                reachable |= arena.pi[top - i];
            }
        }
        arena.pi[top] & !reachable
    }

    /// Products `x ∈ π(S)` with no admissible `T`.
    fn characterization_missing(&self, s: &Sequence, bound: usize) -> u64 {
        let mut arena = Arena::new();
        for e in s.elements() {
            arena.push(self, e);
        }
        self.missing_products(&arena, bound)
    }
}

pub fn small_davenport(g: &FiniteGroup, opts: &SearchOptions) -> Result<Extremal> {
    opts.check(g.order())?;
    let eng = SearchEngine::new(g)?;
    Ok(opts.run(|| eng.small_davenport()))
}

pub fn large_davenport(g: &FiniteGroup, opts: &SearchOptions) -> Result<Extremal> {
    opts.check(g.order())?;
    let eng = SearchEngine::new(g)?;
    Ok(opts.run(|| eng.large_davenport()))
}

/// `d(G)` and `D(G)` compared against the closed forms
/// `d = |G| - 1` (cyclic) or `|G|/2`, and `D = d + |G'|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DavenportReport {
    pub group: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<Index2Params>,
    pub order: usize,
    pub commutator_order: usize,
    pub cyclic: bool,
    pub d: usize,
    #[serde(rename = "D")]
    pub big_d: usize,
    pub d_formula: usize,
    #[serde(rename = "D_formula")]
    pub big_d_formula: usize,
    pub d_matches: bool,
    #[serde(rename = "D_matches")]
    pub big_d_matches: bool,
    /// `d + 1 = D`, recorded as data.
    pub d_plus_one_equals_big_d: bool,
    pub witness_free: Vec<(String, u32)>,
    pub witness_atom: Vec<(String, u32)>,
    pub small_stats: SearchStats,
    pub large_stats: SearchStats,
}

impl DavenportReport {
    pub fn matches(&self) -> bool {
        self.d_matches && self.big_d_matches
    }
}

pub fn d_formula(g: &FiniteGroup) -> usize {
    if g.is_cyclic() {
        g.order() - 1
    } else {
        g.order() / 2
    }
}

/// Searches both constants of `g` and compares them with the closed forms.
pub fn davenport_report(g: &FiniteGroup, name: &str, opts: &SearchOptions) -> Result<DavenportReport> {
    opts.check(g.order())?;
    let eng = SearchEngine::new(g)?;
    let (small, large) = opts.run(|| (eng.small_davenport(), eng.large_davenport()));
    let commutator_order = g.commutator_subgroup().order();
    let d_f = d_formula(g);
    let big_f = d_f + commutator_order;
    Ok(DavenportReport {
        group: name.to_string(),
        params: None,
        order: g.order(),
        commutator_order,
        cyclic: g.is_cyclic(),
        d: small.value,
        big_d: large.value,
        d_formula: d_f,
        big_d_formula: big_f,
        d_matches: small.value == d_f,
        big_d_matches: large.value == big_f,
        d_plus_one_equals_big_d: small.value + 1 == large.value,
        witness_free: small.witness.to_label_pairs(g),
        witness_atom: large.witness.to_label_pairs(g),
        small_stats: small.stats,
        large_stats: large.stats,
    })
}

pub fn verify_davenport_formulas(p: Index2Params, opts: &SearchOptions) -> Result<DavenportReport> {
    let g = build_group(p)?;
    let mut report = davenport_report(g.group(), &g.name(), opts)?;
    report.params = Some(p);
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterizationReport {
    pub ell: usize,
    pub max_extra: usize,
    pub sequences_checked: u64,
    pub property_holds: bool,
    /// A sequence and product `x` with no valid `T`, if the property fails at `ell`.
    pub failure: Option<(Vec<String>, String)>,
    /// Such a pair for bound `ell - 1`, showing minimality.
    pub counterexample_below: Option<(Vec<String>, String)>,
    pub counterexample_from_atom: bool,
}

impl CharacterizationReport {
    pub fn verified(&self) -> bool {
        self.property_holds && self.counterexample_below.is_some()
    }
}

/// Tests the characterization of `D(G)` as the least `ℓ` for which every
/// long enough `S` and `x ∈ π(S)` admit a short product-one `T | S` with
/// `x ∈ π(T^{[-1]} S)`. Lengths are truncated to `[ℓ, ℓ + max_extra]`.
pub fn characterization_report(
    g: &FiniteGroup,
    ell: usize,
    max_extra: usize,
    opts: &SearchOptions,
) -> Result<CharacterizationReport> {
    opts.check(g.order())?;
    if ell == 0 {
        return Err(Error::Precondition("ℓ must be at least 1".into()));
    }
    let eng = SearchEngine::new(g)?;
    let labels = |path: &[Element], x: Element| {
        (
            path.iter().map(|&e| g.label(e).to_string()).collect(),
            g.label(x).to_string(),
        )
    };
    let (failure, checked) = opts.run(|| eng.characterization_scan(ell, ell + max_extra, ell));
    let mut from_atom = false;
    let mut below = None;
    if let Some(u) = opts.run(|| eng.find_atom_of_length(ell)) {
        // U = S·y with x = y⁻¹ ∈ π(S) and no admissible T
        let y = u.support()[0];
        let mut s = u.clone();
        s.remove_one(y);
        let x = g.inverse(y);
        if eng.characterization_missing(&s, ell - 1) >> x & 1 != 0 {
            from_atom = true;
            below = Some(labels(&s.elements(), x));
        }
    }
    if below.is_none() {
        let (f, _) = opts.run(|| eng.characterization_scan(ell - 1, ell - 1 + max_extra, ell - 1));
        below = f.map(|(path, x)| labels(&path, x));
    }
    Ok(CharacterizationReport {
        ell,
        max_extra,
        sequences_checked: checked,
        property_holds: failure.is_none(),
        failure: failure.map(|(path, x)| labels(&path, x)),
        counterexample_below: below,
        counterexample_from_atom: from_atom,
    })
}

pub fn check_characterization(g: &FiniteGroup, ell: usize, max_extra: usize, opts: &SearchOptions) -> Result<bool> {
    Ok(characterization_report(g, ell, max_extra, opts)?.verified())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub bound: String,
    pub detail: String,
    pub lhs: usize,
    pub rhs: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperBoundReport {
    pub d: usize,
    #[serde(rename = "D")]
    pub big_d: usize,
    pub checks: Vec<BoundCheck>,
}

impl UpperBoundReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// Checks the subgroup, quotient, small-commutator and non-cyclic bounds
/// against computed constants of `g`, its subgroups and quotients.
pub fn check_upper_bounds(g: &FiniteGroup, opts: &SearchOptions) -> Result<UpperBoundReport> {
    opts.check(g.order())?;
    let eng = SearchEngine::new(g)?;
    let (small, large) = opts.run(|| (eng.small_davenport(), eng.large_davenport()));
    let (d, big_d) = (small.value, large.value);
    let large_of = |h: &FiniteGroup| -> Result<usize> {
        if h.order() == g.order() {
            return Ok(big_d);
        }
        large_davenport(h, opts).map(|x| x.value)
    };
    let mut checks = Vec::new();
    let commutator = g.commutator_subgroup();
    let describe = |h: &crate::group::Subgroup| {
        let names: Vec<&str> = h.elements().iter().map(|&e| g.label(e)).collect();
        format!("{{{}}}", names.join(","))
    };
    for h in g.all_subgroups() {
        let (local, _) = g.induced_group(&h);
        let dh = large_of(&local)?;
        let index = g.order() / h.order();
        checks.push(BoundCheck {
            bound: "subgroup".into(),
            detail: format!("D(G) ≤ D(H)·|G:H|, H = {}", describe(&h)),
            lhs: big_d,
            rhs: dh * index,
            holds: big_d <= dh * index,
        });
        let meets_commutator = h.members().intersection(commutator.members()).len() > 1;
        if g.is_normal(&h) && !meets_commutator {
            let q = g.quotient(&h)?;
            let dq = large_of(&q.group)?;
            checks.push(BoundCheck {
                bound: "quotient".into(),
                detail: format!("D(G) ≤ D(H)·D(G/H), H = {}", describe(&h)),
                lhs: big_d,
                rhs: dh * dq,
                holds: big_d <= dh * dq,
            });
        }
    }
    if commutator.order() <= 2 {
        checks.push(BoundCheck {
            bound: "small-commutator".into(),
            detail: "D(G) ≤ d(G) + |G'|".into(),
            lhs: big_d,
            rhs: d + commutator.order(),
            holds: big_d <= d + commutator.order(),
        });
    }
    if !g.is_cyclic() {
        checks.push(BoundCheck {
            bound: "non-cyclic".into(),
            detail: "d(G) ≤ |G|/2".into(),
            lhs: d,
            rhs: g.order() / 2,
            holds: 2 * d <= g.order(),
        });
    }
    Ok(UpperBoundReport { d, big_d, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index2::PresentationType::*;
    use crate::sequence::{is_atom, is_product_one_free};

    fn group(s: u32, m: usize, r: usize, t: crate::index2::PresentationType) -> FiniteGroup {
        build_group(Index2Params::new(s, m, r, t)).unwrap().group().clone()
    }

    #[test]
    fn translate_matches_table() {
        let g = group(1, 3, 5, B);
        let eng = SearchEngine::new(&g).unwrap();
        for mask in [1u64, 0b1011, 0xfff, 0x8a1] {
            for e in 0..12 {
                let expected = g
                    .right_translate(&crate::group::ElementSet::from_mask(12, mask), e)
                    .mask();
                assert_eq!(eng.translate(mask, e), expected);
            }
        }
    }

    #[test]
    fn cyclic_constants() {
        for k in 1..=8 {
            let g = FiniteGroup::cyclic(k);
            let opts = SearchOptions::default();
            let small = small_davenport(&g, &opts).unwrap();
            let large = large_davenport(&g, &opts).unwrap();
            assert_eq!(small.value, k - 1, "d(C{k})");
            assert_eq!(large.value, k, "D(C{k})");
            assert!(is_product_one_free(&g, &small.witness).unwrap());
            assert!(is_atom(&g, &large.witness).unwrap());
        }
    }

    #[test]
    fn s3_constants() {
        let g = group(0, 3, 2, A);
        let opts = SearchOptions::default();
        assert_eq!(small_davenport(&g, &opts).unwrap().value, 3);
        let large = large_davenport(&g, &opts).unwrap();
        assert_eq!(large.value, 6);
        assert!(is_atom(&g, &large.witness).unwrap());
    }

    #[test]
    fn cap_is_enforced() {
        let g = FiniteGroup::cyclic(13);
        assert!(matches!(
            small_davenport(&g, &SearchOptions::default()),
            Err(Error::CapExceeded { order: 13, cap: 12 })
        ));
    }

    #[test]
    fn first_atom_of_length() {
        let g = FiniteGroup::cyclic(3);
        let eng = SearchEngine::new(&g).unwrap();
        assert_eq!(eng.find_atom_of_length(3), Some(Sequence::repeated(3, 1, 3)));
        assert_eq!(eng.find_atom_of_length(4), None);
    }

    #[test]
    fn characterization_c3() {
        let g = FiniteGroup::cyclic(3);
        let opts = SearchOptions::default();
        assert!(check_characterization(&g, 3, 2, &opts).unwrap());
        assert!(!check_characterization(&g, 2, 2, &opts).unwrap());
    }
}

//! Additive tools over abelian groups written additively: sumset bounds,
//! the stabilizer bound for `n`-sums, and the reductions used for the
//! dicyclic groups `Q_{4p}`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Element, ElementSet, FiniteGroup, Subgroup};
use crate::index2::{is_prime, Index2Group, PresentationType};
use crate::sequence::{n_sums, product_set, Sequence};

/// A sequence over an abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianSequence {
    seq: Sequence,
}

impl AbelianSequence {
    pub fn new(g: &FiniteGroup, seq: Sequence) -> Result<Self> {
        seq.check_group(g)?;
        if !g.is_abelian() {
            return Err(Error::NotAbelian);
        }
        Ok(Self { seq })
    }

    pub fn sequence(&self) -> &Sequence {
        &self.seq
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// `σ(S)`.
    pub fn sigma(&self, g: &FiniteGroup) -> Element {
        sigma(g, &self.seq)
    }

    /// `2S = 2g₁ · … · 2g_ℓ`.
    pub fn doubled(&self, g: &FiniteGroup) -> Sequence {
        doubled(g, &self.seq)
    }
}

pub fn sigma(g: &FiniteGroup, s: &Sequence) -> Element {
    s.elements().into_iter().fold(g.identity(), |acc, x| g.mul(acc, x))
}

pub fn doubled(g: &FiniteGroup, s: &Sequence) -> Sequence {
    Sequence::from_elements(g.order(), s.elements().into_iter().map(|x| g.mul(x, x)))
}

fn subtract(g: &FiniteGroup, a: Element, b: Element) -> Element {
    g.mul(a, g.inverse(b))
}

/// `(|A₁ + … + Aₙ|, min{p, Σ|Aᵢ| - n + 1})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CauchyDavenport {
    pub sumset_size: usize,
    pub bound: usize,
    pub ok: bool,
}

/// Sets are residues modulo the prime `p`.
pub fn cauchy_davenport_check(p: usize, sets: &[Vec<usize>]) -> Result<CauchyDavenport> {
    if !is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    if sets.is_empty() || sets.iter().any(|a| a.is_empty()) {
        return Err(Error::EmptySet);
    }
    let g = FiniteGroup::cyclic(p);
    let as_set = |a: &Vec<usize>| g.set_of(a.iter().map(|&x| x % p));
    let mut sum = as_set(&sets[0]);
    let mut total = sum.len();
    for a in &sets[1..] {
        let b = as_set(a);
        total += b.len();
        sum = g.product_of_sets(&sum, &b);
    }
    let bound = p.min(total + 1 - sets.len());
    Ok(CauchyDavenport {
        sumset_size: sum.len(),
        bound,
        ok: sum.len() >= bound,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgmReport {
    pub sums: ElementSet,
    pub stabilizer: Subgroup,
    /// `(Σ_{g ∈ G/H} min{n, v_g(φ_H(S))} - n + 1)·|H|`; may be negative.
    pub bound: i64,
    pub ok: bool,
}

/// Compares `|Σₙ(S)|` with the lower bound in terms of `H = H(Σₙ(S))`.
pub fn dgm_check(g: &FiniteGroup, s: &AbelianSequence, n: usize) -> Result<DgmReport> {
    if n < 1 || n > s.len() {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            min: 1,
            max: s.len(),
        });
    }
    let sums = n_sums(g, s.sequence(), n)?;
    let stabilizer = g.left_stabilizer(&sums)?;
    let quotient = g.quotient(&stabilizer)?;
    let mut per_coset = vec![0i64; quotient.group.order()];
    for (x, &v) in s.sequence().multiplicities().iter().enumerate() {
        per_coset[quotient.project(x)] += v as i64;
    }
    let n = n as i64;
    let bound = (per_coset.iter().map(|&v| v.min(n)).sum::<i64>() - n + 1) * stabilizer.order() as i64;
    Ok(DgmReport {
        ok: sums.len() as i64 >= bound,
        sums,
        stabilizer,
        bound,
    })
}

/// Both sides of `∪_{T|S, |T|=n} (σ(T) - σ(T^{[-1]}S)) = Σₙ(2S) - σ(S)`.
pub fn key_equivalence_sides(g: &FiniteGroup, s: &AbelianSequence, n: usize) -> Result<(ElementSet, ElementSet)> {
    if n < 1 || n > s.len() {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            min: 1,
            max: s.len(),
        });
    }
    let pairs = s.sequence().pairs();
    let total = s.sigma(g);
    let mut lhs = g.empty_set();
    // enumerate sub-multisets by their multiplicity vectors
    let mut digits = vec![0u32; pairs.len()];
    loop {
        let size: u32 = digits.iter().sum();
        if size as usize == n {
            let t = pairs
                .iter()
                .zip(&digits)
                .fold(g.identity(), |acc, (&(x, _), &d)| g.mul(acc, g.pow(x, d as i64)));
            lhs.insert(subtract(g, t, subtract(g, total, t)));
        }
        let mut i = 0;
        while i < pairs.len() && digits[i] == pairs[i].1 {
            digits[i] = 0;
            i += 1;
        }
        if i == pairs.len() {
            break;
        }
        digits[i] += 1;
    }
    let sums = n_sums(g, &s.doubled(g), n)?;
    let rhs = g.right_translate(&sums, g.inverse(total));
    Ok((lhs, rhs))
}

pub fn key_equivalence_check(g: &FiniteGroup, s: &AbelianSequence, n: usize) -> Result<bool> {
    let (lhs, rhs) = key_equivalence_sides(g, s, n)?;
    Ok(lhs == rhs)
}

/// Which construction produced a factorization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FactorizationRule {
    /// `U₁ = g ∈ T₁`, `U₂ = g + x ∈ T₂`.
    ShiftedPair,
    /// `U₁ = U₂ = g^{[2]}` with `g` twice in both `T₁` and `T₂`.
    DoubledPair,
    /// Small `U₁, U₂` from `S`, remainder split through `Σ_{ℓ'}(2R)`.
    SumsetSplit,
}

/// `S = U₁·U₂·V₁·V₂` with `|U₁| = |U₂|`, `|V₁| = |V₂|`,
/// `σ(U₁) - σ(U₂) = |U₁|x` and `σ(V₁) - σ(V₂) = |V₁|x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationQuad {
    pub u1: Sequence,
    pub u2: Sequence,
    pub v1: Sequence,
    pub v2: Sequence,
    pub rule: FactorizationRule,
}

impl FactorizationQuad {
    /// Checks every defining condition against `S` in `C_{2p}`.
    pub fn is_valid(&self, g: &FiniteGroup, s: &Sequence) -> bool {
        let x = g.order() / 2;
        let mult = |k: usize| (k * x) % g.order();
        let parts = [&self.u1, &self.u2, &self.v1, &self.v2];
        let whole = parts.iter().skip(1).try_fold(self.u1.clone(), |acc, p| acc.concat(p));
        parts.iter().all(|p| !p.is_empty())
            && whole.as_ref() == Ok(s)
            && self.u1.len() == self.u2.len()
            && self.v1.len() == self.v2.len()
            && subtract(g, sigma(g, &self.u1), sigma(g, &self.u2)) == mult(self.u1.len())
            && subtract(g, sigma(g, &self.v1), sigma(g, &self.v2)) == mult(self.v1.len())
    }
}

/// Checks the hypotheses on `S = T₁·T₂` over `C_{2p}` (given as `Z_{2p}`).
pub fn balanced_factorization_hypotheses(p: usize, t1: &Sequence, t2: &Sequence) -> Result<()> {
    let bad = |m: String| Err(Error::Precondition(m));
    if !is_prime(p) {
        return bad(format!("{p} is not prime"));
    }
    let order = 2 * p;
    if t1.group_order() != order || t2.group_order() != order {
        return Err(Error::GroupMismatch {
            expected: order,
            found: if t1.group_order() != order {
                t1.group_order()
            } else {
                t2.group_order()
            },
        });
    }
    if t1.len() != t2.len() {
        return bad(format!("|T₁| = {} ≠ |T₂| = {}", t1.len(), t2.len()));
    }
    if t1.len() + t2.len() < 2 * p + 4 {
        return bad(format!("|S| = {} < 2p + 4 = {}", t1.len() + t2.len(), 2 * p + 4));
    }
    let g = FiniteGroup::cyclic(order);
    let diff = subtract(&g, sigma(&g, t1), sigma(&g, t2));
    if diff != (t1.len() * p) % order {
        return bad(format!("σ(T₁) - σ(T₂) = {diff} ≠ |T₁|x"));
    }
    Ok(())
}

/// Finds the factorization promised for `C_{2p}`, with `|U₁| = |U₂| ≤ 2`.
pub fn balanced_factorization(p: usize, t1: &Sequence, t2: &Sequence) -> Result<FactorizationQuad> {
    balanced_factorization_hypotheses(p, t1, t2)?;
    let g = FiniteGroup::cyclic(2 * p);
    let x = p;
    let order = 2 * p;
    let single = |e: Element| Sequence::repeated(order, e, 1);

    for e in t1.support() {
        let shifted = (e + x) % order;
        if t2.multiplicity(shifted) > 0 {
            return Ok(FactorizationQuad {
                u1: single(e),
                u2: single(shifted),
                v1: t1.minus(&single(e))?,
                v2: t2.minus(&single(shifted))?,
                rule: FactorizationRule::ShiftedPair,
            });
        }
    }
    for e in t1.support() {
        if t1.multiplicity(e) >= 2 && t2.multiplicity(e) >= 2 {
            let pair = Sequence::repeated(order, e, 2);
            return Ok(FactorizationQuad {
                u1: pair.clone(),
                u2: pair.clone(),
                v1: t1.minus(&pair)?,
                v2: t2.minus(&pair)?,
                rule: FactorizationRule::DoubledPair,
            });
        }
    }
    let s = t1.concat(t2)?;
    for k in 1..=2 {
        for (u1, u2) in balanced_pairs(&g, &s, k, x) {
            let rest = s.minus(&u1.concat(&u2)?)?;
            if let Some((v1, v2)) = split_remainder(&g, &rest, x) {
                return Ok(FactorizationQuad {
                    u1,
                    u2,
                    v1,
                    v2,
                    rule: FactorizationRule::SumsetSplit,
                });
            }
        }
    }
    Err(Error::Mismatch(format!(
        "no factorization with |U₁| = |U₂| ≤ 2 exists for p = {p}, S = {:?}",
        s.elements()
    )))
}

/// Disjoint `U₁, U₂ | S` of size `k` with `σ(U₁) - σ(U₂) = kx`.
fn balanced_pairs(g: &FiniteGroup, s: &Sequence, k: usize, x: Element) -> Vec<(Sequence, Sequence)> {
    let order = g.order();
    let target = (k * x) % order;
    let subs = sub_multisets_of_size(s, k);
    let mut out = Vec::new();
    for u1 in &subs {
        let Ok(rest) = s.minus(u1) else { continue };
        for u2 in &subs {
            if u2.divides(&rest) && subtract(g, sigma(g, u1), sigma(g, u2)) == target {
                out.push((u1.clone(), u2.clone()));
            }
        }
    }
    out
}

fn sub_multisets_of_size(s: &Sequence, k: usize) -> Vec<Sequence> {
    fn go(pairs: &[(Element, u32)], k: usize, cur: &mut Sequence, out: &mut Vec<Sequence>) {
        if k == 0 {
            out.push(cur.clone());
            return;
        }
        let Some((&(e, v), rest)) = pairs.split_first() else {
            return;
        };
        for take in (0..=v.min(k as u32)).rev() {
            cur.push_n(e, take);
            go(rest, k - take as usize, cur, out);
            for _ in 0..take {
                cur.remove_one(e);
            }
        }
    }
    let mut out = Vec::new();
    go(&s.pairs(), k, &mut Sequence::new(s.group_order()), &mut out);
    out
}

/// Splits `R` into halves `V₁·V₂` with `σ(V₁) - σ(V₂) = |V₁|x`, via
/// `2σ(V₁) = σ(R) + ℓ'x` with `ℓ' = |R|/2`.
fn split_remainder(g: &FiniteGroup, r: &Sequence, x: Element) -> Option<(Sequence, Sequence)> {
    if r.len() % 2 == 1 || r.is_empty() {
        return None;
    }
    let half = r.len() / 2;
    let target = g.mul(sigma(g, r), (half * x) % g.order());
    let terms = r.elements();
    let doubled: Vec<Element> = terms.iter().map(|&e| g.mul(e, e)).collect();
    // reach[i][c]: sums of c terms of 2R chosen among the first i
    let mut reach = vec![vec![g.empty_set(); half + 1]];
    reach[0][0].insert(g.identity());
    for (i, &d) in doubled.iter().enumerate() {
        let mut next = reach[i].clone();
        for c in 0..half {
            let shifted = g.right_translate(&reach[i][c], d);
            next[c + 1].union_with(&shifted);
        }
        reach.push(next);
    }
    if !reach[terms.len()][half].contains(target) {
        return None;
    }
    let mut v1 = Sequence::new(g.order());
    let (mut c, mut sum) = (half, target);
    for i in (0..terms.len()).rev() {
        if reach[i][c].contains(sum) {
            continue;
        }
        // term i must be taken
        v1.push(terms[i]);
        sum = subtract(g, sum, doubled[i]);
        c -= 1;
    }
    let v2 = r.minus(&v1).ok()?;
    Some((v1, v2))
}

/// A random valid pair `(T₁, T₂)` over `Z_{2p}` with `|T₁| = |T₂| = ℓ`,
/// `p + 2 ≤ ℓ ≤ p + 2 + extra`: `T₂` is free and one term of `T₁` is solved for.
pub fn random_balanced_instance<R: Rng>(p: usize, extra: usize, rng: &mut R) -> (Sequence, Sequence) {
    let order = 2 * p;
    let ell = p + 2 + rng.random_range(0..=extra);
    let t2 = Sequence::from_elements(order, (0..ell).map(|_| rng.random_range(0..order)));
    let mut t1 = Sequence::from_elements(order, (0..ell - 1).map(|_| rng.random_range(0..order)));
    let g = FiniteGroup::cyclic(order);
    let need = (ell * p + sigma(&g, &t2)) % order;
    t1.push(subtract(&g, need, sigma(&g, &t1)));
    (t1, t2)
}

/// Checks that `g` is `Q_{4p}` for an odd prime `p`, returning `p`.
fn dicyclic_prime(g: &Index2Group) -> Result<usize> {
    let params = g.params();
    let p = params.m;
    if params.s == 1 && params.ptype == PresentationType::B && is_prime(p) && params.r == 2 * p - 1 {
        Ok(p)
    } else {
        Err(Error::Precondition(format!(
            "{} is not a dicyclic group Q_4p with p an odd prime",
            g.name()
        )))
    }
}

/// Decides whether `R ⊆ τ<α>` over `Q_{4p}` is product-one through
/// `C_{2p}`: `|R|` even and `σ(R̄⁻) - σ(R̄⁺) = ½|R|p` for some equal split,
/// i.e. `½|R|p + σ(R̄) ∈ Σ_{|R|/2}(2R̄)`, where `τα^x ↦ x`.
pub fn dicyclic_product_one_check(g: &Index2Group, r: &Sequence) -> Result<bool> {
    let p = dicyclic_prime(g)?;
    r.check_group(g.group())?;
    if let Some(bad) = r.support().into_iter().find(|&e| g.in_alpha_subgroup(e)) {
        return Err(Error::Precondition(format!(
            "term {} lies outside τ<α>",
            g.group().label(bad)
        )));
    }
    if r.len() % 2 == 1 {
        return Ok(false);
    }
    let zp = FiniteGroup::cyclic(2 * p);
    let bar = Sequence::from_elements(2 * p, r.elements().into_iter().map(|e| g.normal_form(e).1));
    let w = r.len() / 2;
    let target = (w * p + sigma(&zp, &bar)) % (2 * p);
    Ok(n_sums(&zp, &doubled(&zp, &bar), w)?.contains(target))
}

/// `1 ∈ π(R)` computed directly, for comparison.
pub fn dicyclic_direct(g: &Index2Group, r: &Sequence) -> Result<bool> {
    Ok(product_set(g.group(), r)?.contains(g.group().identity()))
}

//! The explicit long atom `U = (τ⁻¹α)·α^{[n⁺-1]}·(τα^{1-n⁺})·α^{[n-1]}`
//! of length `n + n⁺`, and splitting certificates for long product-one
//! sequences.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::Element;
use crate::index2::{build_group, enumerate_groups, is_prime, Index2Group, Index2Params};
use crate::sequence::{lattice_is_atom, OrderedSequence, Sequence, SubsequenceLattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessChecks {
    pub is_product_one: bool,
    pub is_atom: bool,
    pub length_ok: bool,
    /// No `k ∈ [0, n⁺-2]` has `(r-1)(k+1) ≡ 0 mod n`.
    pub congruence_ok: bool,
}

impl WitnessChecks {
    pub fn all(&self) -> bool {
        self.is_product_one && self.is_atom && self.length_ok && self.congruence_ok
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub params: Index2Params,
    pub name: String,
    pub witness: Vec<(String, u32)>,
    pub length: usize,
    pub claimed_length: usize,
    pub checks: WitnessChecks,
}

/// The long atom as a sequence over the constructed group.
pub fn lower_bound_sequence(g: &Index2Group) -> Result<Sequence> {
    let p = g.params();
    if p.is_abelian() {
        return Err(Error::Precondition(format!("{} is abelian (r = 1)", g.name())));
    }
    let grp = g.group();
    let (n, n_plus) = (p.n(), p.n_plus());
    let alpha = g.alpha_pow(1);
    let tau_inv_alpha = grp.mul(grp.inverse(g.tau()), alpha);
    let mut u = Sequence::new(grp.order());
    u.push(tau_inv_alpha);
    u.push_n(alpha, (n_plus - 1) as u32);
    u.push(g.tau_alpha(1 - n_plus as i64));
    u.push_n(alpha, (n - 1) as u32);
    Ok(u)
}

fn congruence_holds(p: &Index2Params) -> bool {
    let n = p.n();
    (0..p.n_plus().saturating_sub(1)).all(|k| !((p.r - 1) * (k + 1)).is_multiple_of(n))
}

pub fn lower_bound_witness(params: Index2Params) -> Result<WitnessRecord> {
    let g = build_group(params)?;
    let u = lower_bound_sequence(&g)?;
    let lattice = SubsequenceLattice::build(g.group(), &u)?;
    let claimed_length = params.n() + params.n_plus();
    let checks = WitnessChecks {
        is_product_one: lattice.products(lattice.top()).contains(g.group().identity()),
        is_atom: lattice_is_atom(g.group(), &lattice),
        length_ok: u.len() == claimed_length,
        congruence_ok: congruence_holds(&params),
    };
    Ok(WitnessRecord {
        params,
        name: g.name(),
        witness: u.to_label_pairs(g.group()),
        length: u.len(),
        claimed_length,
        checks,
    })
}

/// Witness records for every non-abelian group of order at most `max_order`.
pub fn check_all_upto(max_order: usize) -> Result<Vec<WitnessRecord>> {
    enumerate_groups(max_order)
        .into_iter()
        .filter(|p| !p.is_abelian())
        .map(lower_bound_witness)
        .collect()
}

/// Terms of `⟨α⟩ ∖ Z(G)` in `S`, for a non-abelian group.
fn noncentral_alpha_terms(g: &Index2Group, s: &Sequence) -> usize {
    let n_plus = g.params().n_plus();
    s.pairs()
        .into_iter()
        .filter(|&(e, _)| g.in_alpha_subgroup(e) && !g.normal_form(e).1.is_multiple_of(n_plus))
        .map(|(_, k)| k as usize)
        .sum()
}

/// Splits a long product-one `S` into two nontrivial product-one parts,
/// searching parts `T` with `|T| ≤ d(G) + 1 = n + 1`.
///
/// Requires `n⁺` prime, `|S| ≥ n + n⁺ + 1` and at least `n⁺ - 1` terms
/// from `⟨α⟩ ∖ Z(G)`; not finding a split is reported as a mismatch.
pub fn nonatom_certificate(g: &Index2Group, s: &Sequence) -> Result<(Sequence, Sequence)> {
    let p = g.params();
    let grp = g.group();
    s.check_group(grp)?;
    let (n, n_plus) = (p.n(), p.n_plus());
    if p.is_abelian() || !is_prime(n_plus) {
        return Err(Error::Precondition(format!("n⁺ = {n_plus} is not prime")));
    }
    if s.len() < n + n_plus + 1 {
        return Err(Error::Precondition(format!(
            "|S| = {} < n + n⁺ + 1 = {}",
            s.len(),
            n + n_plus + 1
        )));
    }
    let noncentral = noncentral_alpha_terms(g, s);
    if noncentral + 1 < n_plus {
        return Err(Error::Precondition(format!(
            "only {noncentral} terms from ⟨α⟩ ∖ Z(G), need {}",
            n_plus - 1
        )));
    }
    let lattice = SubsequenceLattice::build(grp, s)?;
    let one = grp.identity();
    if !lattice.products(lattice.top()).contains(one) {
        return Err(Error::Precondition("S is not product-one".into()));
    }
    let top = lattice.top();
    (1..top)
        .find(|&i| {
            lattice.length(i) <= n + 1 && lattice.products(i).contains(one) && lattice.products(top - i).contains(one)
        })
        .map(|i| (lattice.sequence(i), lattice.sequence(top - i)))
        .ok_or_else(|| Error::Mismatch(format!("no split found for S = {:?}", s.to_label_pairs(grp))))
}

/// A random product-one sequence meeting the splitting preconditions:
/// `n⁺ - 1` terms from `⟨α⟩ ∖ Z(G)`, random filler, and a final term closing
/// one ordering to 1. Length is `n + n⁺ + 1 + extra`.
pub fn random_long_product_one<R: Rng>(g: &Index2Group, extra: usize, rng: &mut R) -> Sequence {
    let p = g.params();
    let grp = g.group();
    let (n, n_plus) = (p.n(), p.n_plus());
    let len = n + n_plus + 1 + extra;
    let mut terms: Vec<Element> = (0..n_plus - 1)
        .map(|_| loop {
            let x = rng.random_range(1..n);
            if x % n_plus != 0 {
                break g.alpha_pow(x as i64);
            }
        })
        .collect();
    while terms.len() < len - 1 {
        terms.push(rng.random_range(0..grp.order()));
    }
    let product = OrderedSequence::new(grp.order(), terms.clone()).product(grp);
    terms.push(grp.inverse(product));
    Sequence::from_elements(grp.order(), terms)
}

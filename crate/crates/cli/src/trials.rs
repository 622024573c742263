//! Random instance generators for the `--random` modes.

use rand::Rng;

use davlab_core::index2::Index2Group;
use davlab_core::Sequence;

/// Two to four nonempty residue sets modulo `p`.
pub fn random_sets<R: Rng>(p: usize, rng: &mut R) -> Vec<Vec<usize>> {
    let count = rng.random_range(2..=4);
    (0..count)
        .map(|_| {
            let size = rng.random_range(1..=p);
            let mut a: Vec<usize> = (0..size).map(|_| rng.random_range(0..p)).collect();
            a.sort_unstable();
            a.dedup();
            a
        })
        .collect()
}

/// A sequence over `Z_k` of length in `[1, max_len]` and an `n` in `[1, |S|]`.
pub fn random_sequence_and_n<R: Rng>(k: usize, max_len: usize, rng: &mut R) -> (Sequence, usize) {
    let len = rng.random_range(1..=max_len);
    let s = Sequence::from_elements(k, (0..len).map(|_| rng.random_range(0..k)));
    let n = rng.random_range(1..=len);
    (s, n)
}

/// Up to `max_len` terms drawn from the coset `τ⟨α⟩`.
pub fn random_tau_coset_sequence<R: Rng>(g: &Index2Group, max_len: usize, rng: &mut R) -> Sequence {
    let len = rng.random_range(0..=max_len);
    let n = g.n() as i64;
    Sequence::from_elements(g.group().order(), (0..len).map(|_| g.tau_alpha(rng.random_range(0..n))))
}

//! Seeded random inputs for property tests and the `gen` command.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::term::{Term, TermSet, Var, VariableOrdering};

/// A set of `size` distinct terms in `n` variables with exponents at most
/// `max_exp`. `size` is clamped to the number of such terms.
pub fn random_term_set<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    size: usize,
    max_exp: u32,
) -> TermSet {
    let available = (max_exp as usize + 1)
        .checked_pow(n as u32)
        .unwrap_or(usize::MAX);
    let size = size.min(available);
    let mut picked: BTreeSet<Vec<u32>> = BTreeSet::new();
    while picked.len() < size {
        picked.insert((0..n).map(|_| rng.gen_range(0..=max_exp)).collect());
    }
    TermSet::from_exponents(n, picked).expect("distinct vectors of length n")
}

/// The order ideal generated by `generators` random terms: every divisor of
/// each of them.
pub fn random_order_ideal<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    generators: usize,
    max_exp: u32,
) -> TermSet {
    let mut all: BTreeSet<Vec<u32>> = BTreeSet::new();
    for _ in 0..generators.max(1) {
        let top: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
        add_divisors(&top, 0, &mut vec![0; n], &mut all);
    }
    TermSet::from_exponents(n, all).expect("distinct vectors of length n")
}

fn add_divisors(top: &[u32], i: usize, cur: &mut Vec<u32>, out: &mut BTreeSet<Vec<u32>>) {
    if i == top.len() {
        out.insert(cur.clone());
        return;
    }
    for e in 0..=top[i] {
        cur[i] = e;
        add_divisors(top, i + 1, cur, out);
    }
}

pub fn random_ordering<R: Rng + ?Sized>(rng: &mut R, n: usize) -> VariableOrdering {
    let mut vars: Vec<Var> = (0..n).map(Var).collect();
    vars.shuffle(rng);
    VariableOrdering::from_min_to_max(vars).expect("a shuffle is a permutation")
}

/// A term with exponents at most `max_exp`.
pub fn random_term<R: Rng + ?Sized>(rng: &mut R, n: usize, max_exp: u32) -> Term {
    Term::new((0..n).map(|_| rng.gen_range(0..=max_exp)).collect()).expect("n >= 1")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::is_order_ideal;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sizes_and_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let s = random_term_set(&mut rng, 3, 10, 2);
        assert_eq!(s.len(), 10);
        assert!(s.iter().all(|t| t.exponents().iter().all(|&e| e <= 2)));
        assert_eq!(random_term_set(&mut rng, 2, 100, 1).len(), 4);
    }

    #[test]
    fn ideals_are_closed() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            assert!(is_order_ideal(&random_order_ideal(&mut rng, 3, 2, 3)));
        }
    }

    #[test]
    fn seeded_is_reproducible() {
        let a = random_term_set(&mut ChaCha8Rng::seed_from_u64(3), 4, 8, 4);
        let b = random_term_set(&mut ChaCha8Rng::seed_from_u64(3), 4, 8, 4);
        assert_eq!(a.terms(), b.terms());
    }
}

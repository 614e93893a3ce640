#![allow(dead_code)]

use std::sync::Arc;

use magnus_core::{Alphabet, ExpWord, GroupWord, Series};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::Rng;

/// Letter-by-letter random word; free reduction may shorten it.
pub fn random_word<R: Rng>(rng: &mut R, alphabet: &Arc<Alphabet>, max_len: usize) -> GroupWord {
    let len = rng.gen_range(0..=max_len);
    let letters: Vec<(usize, i64)> = (0..len)
        .map(|_| (rng.gen_range(0..alphabet.rank()), if rng.gen() { 1 } else { -1 }))
        .collect();
    GroupWord::reduce(alphabet, letters).unwrap()
}

pub fn random_exp_word<R: Rng>(rng: &mut R, alphabet: &Arc<Alphabet>, max_syllables: usize) -> ExpWord {
    let n = rng.gen_range(0..=max_syllables);
    let syllables: Vec<(usize, BigRational)> = (0..n)
        .map(|_| {
            let num = rng.gen_range(-3i64..=3);
            let den = rng.gen_range(1i64..=4);
            (
                rng.gen_range(0..alphabet.rank()),
                BigRational::new(num.into(), den.into()),
            )
        })
        .collect();
    ExpWord::reduce(alphabet, syllables).unwrap()
}

pub fn small_rational<R: Rng>(rng: &mut R) -> BigRational {
    BigRational::new(
        BigInt::from(rng.gen_range(-5i64..=5)),
        BigInt::from(rng.gen_range(1i64..=3)),
    )
}

/// Sparse random series with small rational coefficients.
pub fn random_series<R: Rng>(rng: &mut R, rank: usize, trunc: usize, scalar: Option<BigRational>) -> Series {
    let count = rng.gen_range(0..6);
    let mut terms: Vec<(Vec<usize>, BigRational)> = (0..count)
        .map(|_| {
            let deg = rng.gen_range(1..=trunc);
            let ix = (0..deg).map(|_| rng.gen_range(0..rank)).collect();
            (ix, small_rational(rng))
        })
        .collect();
    if let Some(c) = scalar {
        terms.push((vec![], c));
    }
    Series::from_terms(rank, trunc, terms).unwrap()
}

pub fn letters(rank: usize, max_len: usize) -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0..rank, prop_oneof![Just(1i64), Just(-1i64)]), 0..=max_len)
}

pub fn word_strategy(alphabet: Arc<Alphabet>, max_len: usize) -> impl Strategy<Value = GroupWord> {
    letters(alphabet.rank(), max_len).prop_map(move |l| GroupWord::reduce(&alphabet, l).unwrap())
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Lyndon words of each length `1..=max_len` over `q` letters, by Duval's
/// successor algorithm.
pub fn lyndon_counts(q: usize, max_len: usize) -> Vec<usize> {
    let mut counts = vec![0; max_len];
    let mut w: Vec<usize> = vec![0];
    loop {
        counts[w.len() - 1] += 1;
        let n = w.len();
        let mut next: Vec<usize> = (0..max_len).map(|i| w[i % n]).collect();
        while next.last() == Some(&(q - 1)) {
            next.pop();
        }
        match next.last_mut() {
            None => return counts,
            Some(x) => *x += 1,
        }
        w = next;
    }
}

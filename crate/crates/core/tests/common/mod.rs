#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::prelude::*;
use scover::{oracle_split, Letter, Word};

pub fn w(s: &str) -> Word {
    Word::from_ascii(s)
}

/// Every word of length `n` over `k` letters.
pub fn all_words(n: usize, k: u32) -> Vec<Word> {
    let mut out = Vec::new();
    let mut buf = vec![0u32; n];
    loop {
        out.push(Word::from_ids(buf.iter().copied()));
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            buf[i] += 1;
            if buf[i] < k {
                break;
            }
            buf[i] = 0;
        }
    }
}

/// Words of length `n` over at most `k` letters whose letters appear in
/// order `0, 1, …`.
pub fn canonical_words(n: usize, k: u32) -> Vec<Word> {
    fn rec(buf: &mut Vec<u32>, used: u32, n: usize, k: u32, out: &mut Vec<Word>) {
        if buf.len() == n {
            out.push(Word::from_ids(buf.iter().copied()));
            return;
        }
        for c in 0..(used + 1).min(k) {
            buf.push(c);
            rec(buf, used.max(c + 1), n, k, out);
            buf.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), 0, n, k, &mut out);
    out
}

pub fn random_word(rng: &mut StdRng, lens: std::ops::RangeInclusive<usize>, k: u32) -> Word {
    let len = rng.random_range(lens);
    (0..len).map(|_| Letter::new(rng.random_range(0..k))).collect()
}

pub fn random_square_free(rng: &mut StdRng, len: usize, k: u32) -> Option<Word> {
    fn rec(rng: &mut StdRng, buf: &mut Vec<Letter>, len: usize, k: u32, budget: &mut u32) -> bool {
        if buf.len() == len {
            return true;
        }
        let mut letters: Vec<u32> = (0..k).collect();
        letters.shuffle(rng);
        for c in letters {
            if *budget == 0 {
                return false;
            }
            *budget -= 1;
            buf.push(Letter::new(c));
            if !scover::word::has_square_suffix(buf) && rec(rng, buf, len, k, budget) {
                return true;
            }
            buf.pop();
        }
        false
    }
    let mut buf = Vec::new();
    let mut budget = 100_000;
    rec(rng, &mut buf, len, k, &mut budget).then(|| Word::new(buf))
}

pub fn random_subsequence(rng: &mut StdRng, s: &[Letter]) -> Word {
    loop {
        let c: Word = s.iter().copied().filter(|_| rng.random_bool(0.5)).collect();
        if !c.is_empty() {
            return c;
        }
    }
}

/// Applies a letter permutation given as a lookup table.
pub fn rename(word: &[Letter], perm: &[u32]) -> Word {
    word.iter().map(|l| Letter::new(perm[l.index()])).collect()
}

pub fn random_permutation(rng: &mut StdRng, k: usize) -> Vec<u32> {
    let mut p: Vec<u32> = (0..k as u32).collect();
    p.shuffle(rng);
    p
}

/// All distinct subsequences of `s`, bucketed by length.
pub fn subsequences_by_length(s: &[Letter]) -> Vec<BTreeSet<Vec<Letter>>> {
    let n = s.len();
    let mut out = vec![BTreeSet::new(); n + 1];
    for mask in 0u32..(1 << n) {
        let sub: Vec<Letter> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
        out[sub.len()].insert(sub);
    }
    out
}

/// Shortest s-covers by trying every subsequence, judged by the split
/// oracle.
pub fn brute_shortest(s: &[Letter]) -> (usize, BTreeSet<Vec<Letter>>) {
    for (len, subs) in subsequences_by_length(s).into_iter().enumerate().skip(1) {
        let covers: BTreeSet<_> = subs
            .into_iter()
            .filter(|c| oracle_split(c, s).unwrap().is_cover)
            .collect();
        if !covers.is_empty() {
            return (len, covers);
        }
    }
    unreachable!("a nonempty word covers itself")
}

/// No proper subsequence is an s-cover.
pub fn brute_primitive(s: &[Letter]) -> bool {
    let subs = subsequences_by_length(s);
    subs[1..s.len()]
        .iter()
        .flatten()
        .all(|c| !oracle_split(c, s).unwrap().is_cover)
}

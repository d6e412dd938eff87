//! Word families: long s-primitive words and words with many shortest
//! s-covers.

use crate::error::{Error, Result};
use crate::word::{Letter, Word};

pub const LOWER_BOUND_K_MAX: usize = 12;
pub const MULTICOVER_MAX_LEN: usize = 1 << 20;

const BASES: [&str; 4] = ["a", "aba", "abcabacb", "abacadbabdcabcbadac"];
const MULTICOVER_SEED: &str = "abcadbcacbdacba";

/// A long s-primitive word over `k` letters: the known extremal words for
/// `k ≤ 4`, then `S_k = S_{k-1} · x · S_{k-1}` with `x` fresh.
pub fn lower_bound_word(k: usize) -> Result<Word> {
    if !(1..=LOWER_BOUND_K_MAX).contains(&k) {
        return Err(Error::Input(format!("k must be in 1..={LOWER_BOUND_K_MAX}, got {k}")));
    }
    let mut s = Word::from_ascii(BASES[k.min(4) - 1]);
    for fresh in 4..k {
        s = double_with(&s, Letter::new(fresh as u32));
    }
    Ok(s)
}

/// The length-`n` prefix of the limit of `T_0 = abcadbcacbdacba`,
/// `T_i = T_{i-1} · x_i · T_{i-1}` where `x_i` is the `(3+i)`-th letter.
pub fn multicover_word(n: usize) -> Result<Word> {
    if !(1..=MULTICOVER_MAX_LEN).contains(&n) {
        return Err(Error::Input(format!("n must be in 1..={MULTICOVER_MAX_LEN}, got {n}")));
    }
    let mut t = Word::from_ascii(MULTICOVER_SEED);
    let mut i = 1u32;
    while t.len() < n {
        t = double_with(&t, Letter::new(3 + i));
        i += 1;
    }
    Ok(Word::from(&t[..n]))
}

fn double_with(s: &Word, mid: Letter) -> Word {
    let mut out = Vec::with_capacity(2 * s.len() + 1);
    out.extend_from_slice(s);
    out.push(mid);
    out.extend_from_slice(s);
    Word::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lower_bound_lengths() {
        assert_eq!(lower_bound_word(2).unwrap(), Word::from_ascii("aba"));
        assert_eq!(lower_bound_word(4).unwrap().render(), "abacadbabdcabcbadac");
        for k in 4..=LOWER_BOUND_K_MAX {
            let w = lower_bound_word(k).unwrap();
            assert_eq!(w.len(), 5 * (1 << (k - 2)) - 1);
            assert_eq!(w.alphabet_size(), k);
        }
        let s4 = lower_bound_word(4).unwrap();
        let s5 = lower_bound_word(5).unwrap();
        assert_eq!(&s5[..19], &s4[..]);
        assert_eq!(s5[19], Letter::new(4));
        assert!(lower_bound_word(0).is_err());
        assert!(lower_bound_word(13).is_err());
    }

    #[test]
    fn multicover_prefixes() {
        assert_eq!(multicover_word(15).unwrap().render(), MULTICOVER_SEED);
        let t1 = multicover_word(31).unwrap();
        assert_eq!(t1.render(), format!("{MULTICOVER_SEED}e{MULTICOVER_SEED}"));
        assert_eq!(multicover_word(16).unwrap().render(), "abcadbcacbdacbae");
        assert_eq!(multicover_word(63).unwrap().alphabet_size(), 6);
        assert_eq!(multicover_word(3).unwrap().render(), "abc");
        assert!(multicover_word(0).is_err());
        assert_eq!(multicover_word(MULTICOVER_MAX_LEN).unwrap().len(), MULTICOVER_MAX_LEN);
    }
}

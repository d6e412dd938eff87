//! Words over a dense integer alphabet, alphabet maps for text round-trips,
//! structural predicates and the generators for the classic word families.

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A letter, identified by a dense id `0..k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
#[repr(transparent)]
pub struct Letter(u32);

impl Letter {
    #[inline]
    pub const fn new(id: u32) -> Self {
        Letter(id)
    }

    #[inline]
    pub const fn id(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

/// A finite sequence of letters.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn empty() -> Self {
        Word::default()
    }

    pub fn from_ids<I: IntoIterator<Item = u32>>(ids: I) -> Self {
        Word {
            letters: ids.into_iter().map(Letter).collect(),
        }
    }

    /// Builds a word from lowercase ASCII letters, `a` being id 0. Meant for
    /// literals in code and tests; use [`parse_word`] for user input.
    pub fn from_ascii(s: &str) -> Self {
        Word::from_ids(s.bytes().map(|b| {
            assert!(b.is_ascii_lowercase(), "from_ascii expects a..z, got {:?}", b as char);
            (b - b'a') as u32
        }))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn ids(&self) -> Vec<u32> {
        self.letters.iter().map(|l| l.0).collect()
    }

    pub fn push(&mut self, letter: Letter) {
        self.letters.push(letter);
    }

    /// Number of distinct letters, `|Alph(S)|`.
    pub fn alphabet_size(&self) -> usize {
        alphabet_size(&self.letters)
    }

    /// One more than the largest id in use (0 for the empty word).
    pub fn id_bound(&self) -> usize {
        id_bound(&self.letters)
    }

    pub fn reversed(&self) -> Word {
        Word::new(self.letters.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &[Letter]) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(other);
        Word::new(letters)
    }

    /// Renders with `a, b, c, …` when every id is below 26, otherwise as
    /// comma-separated integer ids.
    pub fn render(&self) -> String {
        render_letters(&self.letters)
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.letters
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word::new(letters)
    }
}

impl From<&[Letter]> for Word {
    fn from(letters: &[Letter]) -> Self {
        Word::new(letters.to_vec())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word::new(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub fn render_letters(letters: &[Letter]) -> String {
    if letters.iter().all(|l| l.0 < 26) {
        letters.iter().map(|l| (b'a' + l.0 as u8) as char).collect()
    } else {
        letters.iter().map(|l| l.0.to_string()).collect::<Vec<_>>().join(",")
    }
}

pub fn alphabet_size(letters: &[Letter]) -> usize {
    let mut seen = vec![false; id_bound(letters)];
    let mut count = 0;
    for l in letters {
        if !seen[l.index()] {
            seen[l.index()] = true;
            count += 1;
        }
    }
    count
}

pub fn id_bound(letters: &[Letter]) -> usize {
    letters.iter().map(|l| l.index() + 1).max().unwrap_or(0)
}

/// How a text argument is split into letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ParseMode {
    /// Every byte is a letter; printable ASCII only.
    #[default]
    Chars,
    /// Letters are tokens separated by commas and/or whitespace.
    Tokens,
}

/// Bijection between external tokens and letter ids. Ids are handed out in
/// order of first appearance, so a map can be shared by several words.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AlphabetMap {
    mode: ParseMode,
    tokens: Vec<String>,
    ids: HashMap<String, u32>,
}

impl AlphabetMap {
    pub fn new(mode: ParseMode) -> Self {
        AlphabetMap {
            mode,
            ..Default::default()
        }
    }

    pub fn mode(&self) -> ParseMode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Tokens in id order.
    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn token(&self, letter: Letter) -> Option<&str> {
        self.tokens.get(letter.index()).map(String::as_str)
    }

    pub fn id_of(&self, token: &str) -> Option<Letter> {
        self.ids.get(token).copied().map(Letter)
    }

    fn intern(&mut self, token: &str) -> Letter {
        if let Some(&id) = self.ids.get(token) {
            return Letter(id);
        }
        let id = self.tokens.len() as u32;
        self.tokens.push(token.to_owned());
        self.ids.insert(token.to_owned(), id);
        Letter(id)
    }

    /// Parses `text` into a word, extending this map with unseen tokens.
    pub fn parse(&mut self, text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        match self.mode {
            ParseMode::Chars => {
                for (pos, b) in text.bytes().enumerate() {
                    if !(b.is_ascii_graphic() || b == b' ') {
                        return Err(Error::Input(format!(
                            "byte 0x{b:02x} at offset {pos} is not printable ASCII"
                        )));
                    }
                    let tok = [b];
                    // ASCII, so always valid UTF-8
                    letters.push(self.intern(std::str::from_utf8(&tok).unwrap()));
                }
            }
            ParseMode::Tokens => {
                for (pos, chunk) in text.split(',').enumerate() {
                    let mut parts = chunk.split_whitespace().peekable();
                    if parts.peek().is_none() {
                        // "a,,b" or a trailing comma; a fully blank input is
                        // reported as empty below
                        if text.contains(',') {
                            return Err(Error::Input(format!(
                                "empty token in comma-separated list (field {pos})"
                            )));
                        }
                        continue;
                    }
                    for tok in parts {
                        if tok.chars().any(|c| c.is_control()) {
                            return Err(Error::Input(format!("malformed token {tok:?}")));
                        }
                        letters.push(self.intern(tok));
                    }
                }
            }
        }
        if letters.is_empty() {
            return Err(Error::Input("empty word".into()));
        }
        Ok(Word::new(letters))
    }

    /// Renders a word through this map. Letters without a token fall back to
    /// their numeric id.
    pub fn render(&self, word: &[Letter]) -> String {
        let tok = |l: &Letter| self.token(*l).map(str::to_owned).unwrap_or_else(|| format!("#{}", l.0));
        match self.mode {
            ParseMode::Chars if word.iter().all(|l| self.token(*l).is_some()) => word.iter().map(tok).collect(),
            _ => word.iter().map(tok).collect::<Vec<_>>().join(","),
        }
    }
}

/// Parses a word with a fresh alphabet map.
pub fn parse_word(text: &str, mode: ParseMode) -> Result<(Word, AlphabetMap)> {
    let mut map = AlphabetMap::new(mode);
    let word = map.parse(text)?;
    Ok((word, map))
}

/// Renames letters so that they are introduced in increasing order
/// `0, 1, 2, …` when read left to right.
pub fn canonicalize(word: &[Letter]) -> Word {
    let mut rename: Vec<Option<u32>> = vec![None; id_bound(word)];
    let mut next = 0u32;
    word.iter()
        .map(|l| {
            let slot = &mut rename[l.index()];
            Letter(*slot.get_or_insert_with(|| {
                next += 1;
                next - 1
            }))
        })
        .collect()
}

pub fn is_canonical(word: &[Letter]) -> bool {
    let mut next = 0u32;
    for l in word {
        if l.0 == next {
            next += 1;
        } else if l.0 > next {
            return false;
        }
    }
    true
}

/// Letters of `word` in order of first occurrence.
pub fn first_word(word: &[Letter]) -> Word {
    let mut seen = vec![false; id_bound(word)];
    word.iter()
        .filter(|l| !std::mem::replace(&mut seen[l.index()], true))
        .copied()
        .collect()
}

/// Letters of `word` in order of last occurrence.
pub fn last_word(word: &[Letter]) -> Word {
    let mut seen = vec![false; id_bound(word)];
    let mut rev: Vec<Letter> = word
        .iter()
        .rev()
        .filter(|l| !std::mem::replace(&mut seen[l.index()], true))
        .copied()
        .collect();
    rev.reverse();
    Word::new(rev)
}

/// `first(S)` followed by `last(S)`, dropping the first letter of `last(S)`
/// when it repeats the final letter of `first(S)`. The result has no two
/// equal adjacent letters.
pub fn fl_word(word: &[Letter]) -> Word {
    let f = first_word(word);
    let l = last_word(word);
    let skip = usize::from(f.last().is_some() && f.last() == l.first());
    f.concat(&l[skip..])
}

/// A square `XX` located at `start` with total length `len = 2|X|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Square {
    pub start: usize,
    pub len: usize,
}

/// Leftmost square (shortest among those starting there), if any.
pub fn find_square(word: &[Letter]) -> Option<Square> {
    let n = word.len();
    for start in 0..n {
        for half in 1..=(n - start) / 2 {
            if word[start..start + half] == word[start + half..start + 2 * half] {
                return Some(Square { start, len: 2 * half });
            }
        }
    }
    None
}

pub fn is_square_free(word: &[Letter]) -> bool {
    find_square(word).is_none()
}

/// Whether some square is a suffix of `word`. Extending a square-free word
/// by one letter keeps it square-free iff this is false.
pub fn has_square_suffix(word: &[Letter]) -> bool {
    let n = word.len();
    (1..=n / 2).any(|half| word[n - 2 * half..n - half] == word[n - half..])
}

/// A factor `U V U` with `Alph(V) ⊆ Alph(U)`; `v_len == 0` is a square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GappedRepeatWitness {
    pub start: usize,
    pub u_len: usize,
    pub v_len: usize,
}

impl GappedRepeatWitness {
    pub fn len(&self) -> usize {
        2 * self.u_len + self.v_len
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn u<'a>(&self, word: &'a [Letter]) -> &'a [Letter] {
        &word[self.start..self.start + self.u_len]
    }

    pub fn v<'a>(&self, word: &'a [Letter]) -> &'a [Letter] {
        &word[self.start + self.u_len..self.start + self.u_len + self.v_len]
    }
}

/// Words up to this length are searched for gapped repeats exhaustively.
pub const GAPPED_REPEAT_EXHAUSTIVE_LEN: usize = 64;

/// Bound on `|U|` used by [`find_gapped_repeat_cover`] on longer words.
pub const GAPPED_REPEAT_DEFAULT_MAX_U: usize = 16;

fn gapped_repeat_at(word: &[Letter], start: usize, u_len: usize, v_len: usize) -> bool {
    let second = start + u_len + v_len;
    let u = &word[start..start + u_len];
    if u != &word[second..second + u_len] {
        return false;
    }
    word[start + u_len..second].iter().all(|c| u.contains(c))
}

/// Finds a gapped repeat `UVU` with `Alph(V) ⊆ Alph(U)`, scanning starts left
/// to right, then `|U|`, then `|V|`. Exhaustive up to
/// [`GAPPED_REPEAT_EXHAUSTIVE_LEN`] letters, otherwise `|U|` is capped.
pub fn find_gapped_repeat_cover(word: &[Letter]) -> Option<GappedRepeatWitness> {
    let max_u = if word.len() <= GAPPED_REPEAT_EXHAUSTIVE_LEN {
        word.len() / 2
    } else {
        GAPPED_REPEAT_DEFAULT_MAX_U
    };
    find_gapped_repeat_bounded(word, max_u)
}

pub fn find_gapped_repeat_bounded(word: &[Letter], max_u: usize) -> Option<GappedRepeatWitness> {
    let n = word.len();
    for start in 0..n {
        for u_len in 1..=max_u.min((n - start) / 2) {
            for v_len in 0..=(n - start - 2 * u_len) {
                if gapped_repeat_at(word, start, u_len, v_len) {
                    return Some(GappedRepeatWitness { start, u_len, v_len });
                }
            }
        }
    }
    None
}

/// Gapped repeat (or square) that ends at the last position of `word`.
pub fn gapped_repeat_suffix(word: &[Letter]) -> Option<GappedRepeatWitness> {
    let n = word.len();
    for u_len in 1..=n / 2 {
        for v_len in 0..=(n - 2 * u_len) {
            let start = n - 2 * u_len - v_len;
            if gapped_repeat_at(word, start, u_len, v_len) {
                return Some(GappedRepeatWitness { start, u_len, v_len });
            }
        }
    }
    None
}

/// Finds a factor `a b X b c` with `a, b, c` pairwise distinct, in a word
/// over exactly three letters. Returns the half-open factor bounds. Words
/// over any other number of letters yield `None`.
pub fn find_ab_x_bc(word: &[Letter]) -> Option<(usize, usize)> {
    if alphabet_size(word) != 3 {
        return None;
    }
    let n = word.len();
    for start in 0..n.saturating_sub(3) {
        let (a, b) = (word[start], word[start + 1]);
        if a == b {
            continue;
        }
        for end in start + 3..n {
            let c = word[end];
            if word[end - 1] == b && c != a && c != b {
                return Some((start, end + 1));
            }
        }
    }
    None
}

/// Whether `word` (over exactly three letters) has a factor `abXbc` ending
/// at its last position.
pub fn ab_x_bc_suffix(word: &[Letter]) -> bool {
    let n = word.len();
    if n < 4 || alphabet_size(word) != 3 {
        return false;
    }
    let (b, c) = (word[n - 2], word[n - 1]);
    if b == c {
        return false;
    }
    (0..=n - 4).any(|start| word[start + 1] == b && word[start] != b && word[start] != c)
}

/// Maximum Zimin index accepted by [`zimin`].
pub const ZIMIN_MAX: usize = 26;

/// Zimin word `Z_k`: `Z_1 = 1`, `Z_i = Z_{i-1} i Z_{i-1}`. Letter `i` is id `i - 1`.
pub fn zimin(k: usize) -> Result<Word> {
    if !(1..=ZIMIN_MAX).contains(&k) {
        return Err(Error::Input(format!("Zimin index must be in 1..={ZIMIN_MAX}, got {k}")));
    }
    let mut letters = vec![Letter(0)];
    for i in 1..k {
        let prev = letters.clone();
        letters.push(Letter(i as u32));
        letters.extend_from_slice(&prev);
    }
    Ok(Word::new(letters))
}

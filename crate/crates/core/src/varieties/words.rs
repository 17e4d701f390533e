//! Words over loop elements and the products they admit under all
//! parenthesizations.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::loops::CayleyLoop;

pub const DEFAULT_LENGTH_CAP: usize = 10;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("word length {len} exceeds cap {cap}")]
    LengthCap { len: usize, cap: usize },
    #[error("split point {k} invalid for a word of length {len}")]
    BadSplit { k: usize, len: usize },
    #[error("element {element} has no two-sided inverse (loop is not IP)")]
    NotIP { element: usize },
    #[error("element {element} out of range for order {order}")]
    OutOfRange { element: usize, order: usize },
}

/// A finite sequence of loop elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn new(entries: impl Into<Vec<usize>>) -> Word {
        Word(entries.into())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word([self.0.as_slice(), other.0.as_slice()].concat())
    }

    fn check(&self, l: &CayleyLoop) -> Result<(), WordError> {
        match self.0.iter().find(|&&x| x >= l.order()) {
            Some(&element) => Err(WordError::OutOfRange {
                element,
                order: l.order(),
            }),
            None => Ok(()),
        }
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Word {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All values of `w` under every parenthesization, with the default length
/// cap. The empty word gives `{1}`.
pub fn pi_all(l: &CayleyLoop, w: &Word) -> Result<BTreeSet<usize>, WordError> {
    pi_all_capped(l, w, DEFAULT_LENGTH_CAP)
}

pub fn pi_all_capped(l: &CayleyLoop, w: &Word, cap: usize) -> Result<BTreeSet<usize>, WordError> {
    w.check(l)?;
    let len = w.len();
    if len > cap {
        return Err(WordError::LengthCap { len, cap });
    }
    if len == 0 {
        return Ok(BTreeSet::from([0]));
    }
    // sets[i][j] holds the values of w[i..=j]
    let mut sets: Vec<Vec<BTreeSet<usize>>> = vec![vec![BTreeSet::new(); len]; len];
    for (i, &x) in w.0.iter().enumerate() {
        sets[i][i].insert(x);
    }
    for span in 1..len {
        for i in 0..len - span {
            let j = i + span;
            let mut acc = BTreeSet::new();
            for k in i..j {
                for &a in &sets[i][k] {
                    for &b in &sets[k + 1][j] {
                        acc.insert(l.mul(a, b));
                    }
                }
            }
            sets[i][j] = acc;
        }
    }
    Ok(std::mem::take(&mut sets[0][len - 1]))
}

/// Right-associated product `a1 (a2 (... an))`; the empty word gives `1`.
pub fn pi_r(l: &CayleyLoop, w: &Word) -> Result<usize, WordError> {
    w.check(l)?;
    Ok(right_product(l, &w.0))
}

fn right_product(l: &CayleyLoop, entries: &[usize]) -> usize {
    match entries.split_last() {
        None => 0,
        Some((&last, rest)) => rest.iter().rev().fold(last, |acc, &x| l.mul(x, acc)),
    }
}

/// `pi_r(a1..ak) * pi_r(a(k+1)..an)` for `1 <= k <= n-1`.
pub fn pi_k(l: &CayleyLoop, w: &Word, k: usize) -> Result<usize, WordError> {
    w.check(l)?;
    if k == 0 || k >= w.len() {
        return Err(WordError::BadSplit { k, len: w.len() });
    }
    Ok(l.mul(right_product(l, &w.0[..k]), right_product(l, &w.0[k..])))
}

fn inverse(l: &CayleyLoop, x: usize) -> Result<usize, WordError> {
    l.inverse(x).map_err(|_| WordError::NotIP { element: x })
}

fn block_length_of(l: &CayleyLoop, entries: &[usize]) -> Result<usize, WordError> {
    if entries.is_empty() {
        return Ok(0);
    }
    let mut blocks = 1;
    for pair in entries.windows(2) {
        let (x, y) = (pair[0], pair[1]);
        if x != y && x != inverse(l, y)? {
            blocks += 1;
        }
    }
    Ok(blocks)
}

/// Number of maximal runs drawn from a single `{y, y^-1}` pair.
pub fn block_length(l: &CayleyLoop, w: &Word) -> Result<usize, WordError> {
    w.check(l)?;
    for &x in &w.0 {
        inverse(l, x)?;
    }
    block_length_of(l, &w.0)
}

/// Association behaviour of all two-generator words up to a length bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DAssociativity {
    pub max_len: usize,
    /// Least block length among words over `{a, b, a^-1, b^-1}` that do not
    /// associate, or `None` when every word up to `max_len` associates.
    pub min_failing_block_length: Option<usize>,
    /// `(a, b, word)` realizing the minimum.
    pub witness: Option<(usize, usize, Word)>,
    pub words_checked: u64,
}

impl DAssociativity {
    /// Every tested word of block length at most `d` associates.
    pub fn holds_for(&self, d: usize) -> bool {
        self.min_failing_block_length.is_none_or(|b| b > d)
    }
}

/// Checks every word of length `1..=max_len` over `{a, b, a^-1, b^-1}` for
/// every pair `a <= b`, by extending words one letter at a time and keeping
/// the single value of each subword. A word with a non-associating subword
/// does not associate and its block length is at least that of the
/// subword, so branches stop at the first failure.
pub fn association_profile(l: &CayleyLoop, max_len: usize) -> Result<DAssociativity, WordError> {
    let n = l.order();
    let inv = (0..n)
        .map(|x| inverse(l, x))
        .collect::<Result<Vec<_>, _>>()?;
    let mut search = ProfileSearch {
        l,
        inv: &inv,
        max_len,
        word: Vec::with_capacity(max_len),
        vals: vec![0; max_len * max_len],
        best: None,
        checked: 0,
    };
    for a in 0..n {
        for b in a..n {
            let mut symbols = vec![a, b, inv[a], inv[b]];
            symbols.sort_unstable();
            symbols.dedup();
            search.run(a, b, &symbols);
        }
    }
    let (min_failing_block_length, witness) = match search.best {
        Some((bl, a, b, w)) => (Some(bl), Some((a, b, Word(w)))),
        None => (None, None),
    };
    Ok(DAssociativity {
        max_len,
        min_failing_block_length,
        witness,
        words_checked: search.checked,
    })
}

struct ProfileSearch<'a> {
    l: &'a CayleyLoop,
    inv: &'a [usize],
    max_len: usize,
    word: Vec<usize>,
    /// vals[i * max_len + j] is the value of word[i..=j]
    vals: Vec<usize>,
    best: Option<(usize, usize, usize, Vec<usize>)>,
    checked: u64,
}

impl ProfileSearch<'_> {
    fn run(&mut self, a: usize, b: usize, symbols: &[usize]) {
        self.word.clear();
        self.extend(a, b, symbols);
    }

    fn block_length(&self, entries: &[usize]) -> usize {
        1 + entries
            .windows(2)
            .filter(|p| p[0] != p[1] && p[0] != self.inv[p[1]])
            .count()
    }

    fn extend(&mut self, a: usize, b: usize, symbols: &[usize]) {
        if self.word.len() == self.max_len {
            return;
        }
        let m = self.max_len;
        for &s in symbols {
            let j = self.word.len();
            self.word.push(s);
            self.checked += 1;
            self.vals[j * m + j] = s;
            let mut failed = None;
            for i in (0..j).rev() {
                let first = self.l.mul(self.vals[i * m + i], self.vals[(i + 1) * m + j]);
                let uniform = (i + 1..j)
                    .all(|k| self.l.mul(self.vals[i * m + k], self.vals[(k + 1) * m + j]) == first);
                if !uniform {
                    failed = Some(i);
                    break;
                }
                self.vals[i * m + j] = first;
            }
            match failed {
                Some(i) => {
                    let sub = &self.word[i..=j];
                    let bl = self.block_length(sub);
                    if self.best.as_ref().is_none_or(|best| bl < best.0) {
                        self.best = Some((bl, a, b, sub.to_vec()));
                    }
                }
                None => self.extend(a, b, symbols),
            }
            self.word.pop();
        }
    }
}

/// `(a, b, word)`: a non-associating word over `{a, b, a^-1, b^-1}`.
pub type WordWitness = (usize, usize, Word);

/// True iff every word over `{a, b, a^-1, b^-1}` with block length at most
/// `d` and length at most `max_len` associates. On failure the witness is
/// `(a, b, word)`.
pub fn d_associative(
    l: &CayleyLoop,
    d: usize,
    max_len: usize,
) -> Result<(bool, Option<WordWitness>), WordError> {
    let profile = association_profile(l, max_len)?;
    if profile.holds_for(d) {
        Ok((true, None))
    } else {
        Ok((false, profile.witness))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_and_singleton_words() {
        let z5 = CayleyLoop::cyclic(5);
        assert_eq!(pi_all(&z5, &Word::default()).unwrap(), BTreeSet::from([0]));
        assert_eq!(pi_all(&z5, &Word::new([3])).unwrap(), BTreeSet::from([3]));
        assert_eq!(pi_r(&z5, &Word::new([3])).unwrap(), 3);
        assert_eq!(pi_r(&z5, &Word::default()).unwrap(), 0);
        assert_eq!(block_length(&z5, &Word::default()).unwrap(), 0);
    }

    #[test]
    fn caps_and_splits() {
        let z2 = CayleyLoop::cyclic(2);
        let long = Word::new(vec![1; 11]);
        assert_eq!(
            pi_all(&z2, &long),
            Err(WordError::LengthCap { len: 11, cap: 10 })
        );
        assert!(pi_all_capped(&z2, &long, 11).is_ok());
        let w = Word::new([1, 1, 1]);
        assert_eq!(pi_k(&z2, &w, 0), Err(WordError::BadSplit { k: 0, len: 3 }));
        assert_eq!(pi_k(&z2, &w, 3), Err(WordError::BadSplit { k: 3, len: 3 }));
        assert_eq!(pi_k(&z2, &w, 2), Ok(1));
        assert!(matches!(
            pi_r(&z2, &Word::new([2])),
            Err(WordError::OutOfRange { element: 2, .. })
        ));
    }

    #[test]
    fn block_lengths() {
        let z7 = CayleyLoop::cyclic(7);
        let (a, b) = (1, 2);
        let w = Word::new([a, a, 6, b, 5, b, a]);
        assert_eq!(block_length(&z7, &w).unwrap(), 3);
        assert_eq!(block_length(&z7, &Word::new([3, 3, 3])).unwrap(), 1);
    }

    #[test]
    fn non_associating_word() {
        // chein double of S3 is diassociative but not a group
        let l = CayleyLoop::chein_double(&CayleyLoop::symmetric_group(3)).unwrap();
        let (x, y, z) = l.associativity_witness().unwrap();
        let vals = pi_all(&l, &Word::new([x, y, z])).unwrap();
        assert_eq!(vals.len(), 2);
        assert!(vals.contains(&pi_k(&l, &Word::new([x, y, z]), 1).unwrap()));
        assert!(vals.contains(&pi_k(&l, &Word::new([x, y, z]), 2).unwrap()));
        let profile = association_profile(&l, 5).unwrap();
        assert_eq!(profile.min_failing_block_length, None);
        assert!(d_associative(&l, 5, 5).unwrap().0);
    }

    #[test]
    fn steiner_loop_words() {
        // Steiner loop of the affine plane of order 3
        let mut rows = vec![vec![0usize; 10]; 10];
        let fano_free: [[usize; 3]; 12] = [
            [1, 2, 3],
            [4, 5, 6],
            [7, 8, 9],
            [1, 4, 7],
            [2, 5, 8],
            [3, 6, 9],
            [1, 5, 9],
            [2, 6, 7],
            [3, 4, 8],
            [1, 6, 8],
            [2, 4, 9],
            [3, 5, 7],
        ];
        for (i, row) in rows.iter_mut().enumerate() {
            row[0] = i;
            row[i] = 0;
        }
        rows[0] = (0..10).collect();
        for t in fano_free {
            for a in 0..3 {
                for b in 0..3 {
                    if a != b {
                        rows[t[a]][t[b]] = t[3 - a - b];
                    }
                }
            }
        }
        let l = CayleyLoop::from_table(&rows).unwrap();
        let profile = association_profile(&l, 4).unwrap();
        // two elements of a Steiner loop generate a group of order at most 4
        assert_eq!(profile.min_failing_block_length, None);
        let w = Word::new([1, 2, 4]);
        assert!(pi_all(&l, &w).unwrap().len() > 1);
    }
}

//! Finite-support permutations of the integers and their Coxeter combinatorics.
//!
//! A [`Permutation`] is a bijection of the integers that fixes all but finitely
//! many points. The simple reflection `r_i` swaps `i` and `i+1`; letters may be
//! any integer, so the group here is the direct limit of all finite symmetric
//! groups along the number line. Products compose as functions:
//! `(p * q)(i) = p(q(i))`, and a word `(q_1, ..., q_l)` multiplies out left to
//! right as `r_{q_1} ∘ ... ∘ r_{q_l}`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::SchubertError;

/// A word in the simple reflections: letter `i` stands for `r_i` (swap of
/// `i` and `i+1`). Letters are arbitrary integers.
pub type Word = Vec<i64>;

/// A finite-support permutation of ℤ, stored in one-line notation on a
/// canonical window.
///
/// The permutation maps `window_lo + k` to `images[k]` and fixes everything
/// outside the window. The window is trimmed so that neither endpoint is a
/// fixed point, which makes equality and hashing structural. The identity is
/// the empty window.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    window_lo: i64,
    images: Vec<i64>,
}

impl Permutation {
    /// The identity permutation.
    pub fn identity() -> Self {
        Permutation { window_lo: 0, images: Vec::new() }
    }

    /// The simple reflection `r_i`, swapping `i` and `i+1`.
    pub fn simple(i: i64) -> Self {
        Permutation { window_lo: i, images: vec![i + 1, i] }
    }

    /// Builds a permutation from one-line images of `offset..offset+n`.
    ///
    /// Fails unless `images` is a rearrangement of that interval.
    pub fn from_window(images: &[i64], offset: i64) -> Result<Self, SchubertError> {
        let mut sorted: Vec<i64> = images.to_vec();
        sorted.sort_unstable();
        let expected: Vec<i64> = (offset..offset + images.len() as i64).collect();
        if sorted != expected {
            return Err(SchubertError::InvalidPermutation(format!(
                "images {:?} are not a rearrangement of {}..{}",
                images,
                offset,
                offset + images.len() as i64
            )));
        }
        let mut p = Permutation { window_lo: offset, images: images.to_vec() };
        p.canonicalize();
        Ok(p)
    }

    /// The product of simple reflections `r_{w_1} ∘ r_{w_2} ∘ ... ∘ r_{w_l}`.
    pub fn from_word(word: &[i64]) -> Self {
        let mut p = Permutation::identity();
        for &i in word {
            p = p.multiply(&Permutation::simple(i));
        }
        p
    }

    fn canonicalize(&mut self) {
        let mut start = 0usize;
        let mut end = self.images.len();
        while start < end && self.images[start] == self.window_lo + start as i64 {
            start += 1;
        }
        while end > start && self.images[end - 1] == self.window_lo + end as i64 - 1 {
            end -= 1;
        }
        self.images.drain(end..);
        self.images.drain(..start);
        self.window_lo += start as i64;
        if self.images.is_empty() {
            self.window_lo = 0;
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.is_empty()
    }

    /// Lowest point of the canonical window (0 for the identity).
    pub fn window_lo(&self) -> i64 {
        self.window_lo
    }

    /// Highest point of the canonical window (-1 for the identity).
    pub fn window_hi(&self) -> i64 {
        self.window_lo + self.images.len() as i64 - 1
    }

    /// Image of an arbitrary integer.
    pub fn apply(&self, k: i64) -> i64 {
        if k >= self.window_lo && k < self.window_lo + self.images.len() as i64 {
            self.images[(k - self.window_lo) as usize]
        } else {
            k
        }
    }

    /// One-line images on an explicit window (padding with fixed points).
    pub fn one_line(&self, lo: i64, hi: i64) -> Vec<i64> {
        (lo..=hi).map(|k| self.apply(k)).collect()
    }

    /// Group product as function composition: `(self * other)(i) = self(other(i))`.
    pub fn multiply(&self, other: &Permutation) -> Permutation {
        if self.is_identity() {
            return other.clone();
        }
        if other.is_identity() {
            return self.clone();
        }
        let lo = self.window_lo.min(other.window_lo);
        let hi = self.window_hi().max(other.window_hi());
        let images: Vec<i64> = (lo..=hi).map(|k| self.apply(other.apply(k))).collect();
        let mut p = Permutation { window_lo: lo, images };
        p.canonicalize();
        p
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0i64; self.images.len()];
        for (k, &v) in self.images.iter().enumerate() {
            images[(v - self.window_lo) as usize] = self.window_lo + k as i64;
        }
        Permutation { window_lo: self.window_lo, images }
    }

    /// Coxeter length = number of inversions, i.e. pairs `i < j` with
    /// `π(i) > π(j)`.
    pub fn length(&self) -> usize {
        let mut inv = 0usize;
        for i in 0..self.images.len() {
            for j in i + 1..self.images.len() {
                if self.images[i] > self.images[j] {
                    inv += 1;
                }
            }
        }
        inv
    }

    /// Letters `i` with `π(i) > π(i+1)`, equivalently `length(π r_i) < length(π)`.
    pub fn right_descents(&self) -> Vec<i64> {
        let mut out = Vec::new();
        for k in 0..self.images.len().saturating_sub(1) {
            if self.images[k] > self.images[k + 1] {
                out.push(self.window_lo + k as i64);
            }
        }
        out
    }

    /// Letters `i` with `length(r_i π) < length(π)`; these are the right
    /// descents of the inverse.
    pub fn left_descents(&self) -> Vec<i64> {
        self.inverse().right_descents()
    }

    /// Conjugation by the shift `i ↦ i+N`: every letter of a reduced word
    /// increases by `N`, and the length is unchanged.
    pub fn shift(&self, n: i64) -> Permutation {
        if self.is_identity() {
            return self.clone();
        }
        Permutation {
            window_lo: self.window_lo + n,
            images: self.images.iter().map(|&v| v + n).collect(),
        }
    }

    /// Letters used by the reduced words of `π` (the same set for every
    /// reduced word): `i` is used iff some `a ≤ i` has `π(a) > i`.
    pub fn support(&self) -> BTreeSet<i64> {
        let mut out = BTreeSet::new();
        let mut prefix_max = i64::MIN;
        for k in 0..self.images.len().saturating_sub(1) {
            prefix_max = prefix_max.max(self.images[k]);
            let i = self.window_lo + k as i64;
            if prefix_max > i {
                out.insert(i);
            }
        }
        out
    }

    /// All permutations of the window values `lo..=hi` (as elements of the
    /// infinite group), in lexicographic one-line order.
    pub fn all_in_window(lo: i64, hi: i64) -> Vec<Permutation> {
        let values: Vec<i64> = (lo..=hi).collect();
        let mut out = Vec::new();
        let mut current = values.clone();
        loop {
            let mut p = Permutation { window_lo: lo, images: current.clone() };
            p.canonicalize();
            out.push(p);
            if !next_permutation(&mut current) {
                break;
            }
        }
        out
    }

    /// All reduced words, in lexicographic order. Memoized globally since the
    /// genus and q-statistic computations revisit the same permutations
    /// constantly.
    pub fn reduced_words(&self) -> Arc<Vec<Word>> {
        if let Some(hit) = reduced_word_cache().lock().unwrap().get(self) {
            return hit.clone();
        }
        let words = if self.is_identity() {
            vec![Vec::new()]
        } else {
            let mut words = Vec::new();
            for i in self.right_descents() {
                let shorter = self.multiply(&Permutation::simple(i));
                for w in shorter.reduced_words().iter() {
                    let mut word = w.clone();
                    word.push(i);
                    words.push(word);
                }
            }
            words.sort();
            words
        };
        let arc = Arc::new(words);
        reduced_word_cache().lock().unwrap().insert(self.clone(), arc.clone());
        arc
    }

    pub fn reduced_word_count(&self) -> usize {
        self.reduced_words().len()
    }

    /// Parses the CLI text forms: a digit string (`12463578`), a comma list
    /// interpreted at `offset`, or a word form `w:3,5,4`.
    pub fn parse(text: &str, offset: i64) -> Result<Self, SchubertError> {
        let text = text.trim();
        if let Some(word_part) = text.strip_prefix("w:") {
            if word_part.is_empty() {
                return Ok(Permutation::identity());
            }
            let letters = word_part
                .split(',')
                .map(|t| t.trim().parse::<i64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| {
                    SchubertError::InvalidPermutation(format!("bad word form {text:?}"))
                })?;
            return Ok(Permutation::from_word(&letters));
        }
        if text.contains(',') {
            let images = text
                .split(',')
                .map(|t| t.trim().parse::<i64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| {
                    SchubertError::InvalidPermutation(format!("bad comma list {text:?}"))
                })?;
            return Permutation::from_window(&images, offset);
        }
        if text.is_empty() || !text.chars().all(|c| c.is_ascii_digit() && c != '0') {
            return Err(SchubertError::InvalidPermutation(format!(
                "expected digits 1-9, a comma list, or w:..., got {text:?}"
            )));
        }
        let images: Vec<i64> = text.chars().map(|c| c.to_digit(10).unwrap() as i64).collect();
        Permutation::from_window(&images, offset)
    }
}

fn reduced_word_cache() -> &'static Mutex<HashMap<Permutation, Arc<Vec<Word>>>> {
    static CACHE: OnceLock<Mutex<HashMap<Permutation, Arc<Vec<Word>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Snapshot of the reduced-word cache, for optional persistence.
pub(crate) fn reduced_word_cache_entries() -> Vec<(Permutation, Vec<Word>)> {
    let guard = reduced_word_cache().lock().unwrap();
    guard.iter().map(|(p, w)| (p.clone(), w.as_ref().clone())).collect()
}

pub(crate) fn seed_reduced_word_cache(entries: Vec<(Permutation, Vec<Word>)>) {
    let mut guard = reduced_word_cache().lock().unwrap();
    for (p, w) in entries {
        guard.entry(p).or_insert_with(|| Arc::new(w));
    }
}

/// Steps `values` to the next lexicographic arrangement in place.
fn next_permutation(values: &mut [i64]) -> bool {
    if values.len() < 2 {
        return false;
    }
    let mut i = values.len() - 1;
    while i > 0 && values[i - 1] >= values[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = values.len() - 1;
    while values[j] <= values[i - 1] {
        j -= 1;
    }
    values.swap(i - 1, j);
    values[i..].reverse();
    true
}

/// comaj of a word: the sum of the 1-indexed positions `i` with `w_i < w_{i+1}`.
pub fn comaj(word: &[i64]) -> i64 {
    word.windows(2)
        .enumerate()
        .filter(|(_, pair)| pair[0] < pair[1])
        .map(|(k, _)| k as i64 + 1)
        .sum()
}

/// Inversion number of a sequence: pairs `i < j` with `w_i > w_j`.
pub fn inversions(word: &[i64]) -> i64 {
    let mut count = 0;
    for i in 0..word.len() {
        for j in i + 1..word.len() {
            if word[i] > word[j] {
                count += 1;
            }
        }
    }
    count
}

/// Checks whether a word is reduced: its product must have length equal to
/// the word length.
pub fn is_reduced(word: &[i64]) -> bool {
    Permutation::from_word(word).length() == word.len()
}

impl fmt::Display for Permutation {
    /// Digit string on the window `[1, hi]` when that is faithful, otherwise
    /// a comma list prefixed with the window offset.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "e");
        }
        if self.window_lo >= 1 && self.window_hi() <= 9 {
            for v in self.one_line(1, self.window_hi()) {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let images: Vec<String> = self.images.iter().map(|v| v.to_string()).collect();
            write!(f, "[{}]@{}", images.join(","), self.window_lo)
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Permutation {
    type Err = SchubertError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(rest) = s.strip_prefix('[') {
            // Round-trips the Display form for windows outside [1,9].
            let (imgs, off) = rest
                .split_once("]@")
                .ok_or_else(|| SchubertError::InvalidPermutation(s.to_string()))?;
            let offset: i64 = off
                .parse()
                .map_err(|_| SchubertError::InvalidPermutation(s.to_string()))?;
            return Permutation::parse(imgs, offset);
        }
        if s == "e" {
            return Ok(Permutation::identity());
        }
        Permutation::parse(s, 1)
    }
}

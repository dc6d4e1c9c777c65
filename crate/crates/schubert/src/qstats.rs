//! Barred words, shuffles, and the q-statistic counting identities.
//!
//! A barred word is a reduced word with a marked subset of letters; its
//! q-statistic is `comaj` of the underlying word plus the sum of the barred
//! letter values. A shuffle of two barred words adds the number of
//! inversions (right-hand letters standing left of left-hand letters). The
//! counting theorem says the distribution of `(bar count, statistic)` over
//! all shuffles of all barred-word pairs for `π, ρ` equals the same
//! distribution over barred words of the product terms `σ`, weighted by the
//! structure constants — and a bar- and statistic-preserving bijection is
//! produced here explicitly by bipartite matching, since the proof only
//! guarantees existence.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::{BigInt, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Result, SchubertError};
use crate::genus::{q_binomial, q_klyachko_genus};
use crate::matching::maximum_bipartite_matching;
use crate::perm::{comaj, Permutation, Word};
use crate::poly::{structure_constants, MultiPoly};
use crate::ring::binomial;

/// A reduced word with an overline mask.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct BarredWord {
    pub word: Word,
    pub bars: Vec<bool>,
}

impl BarredWord {
    pub fn new(word: Word, bars: Vec<bool>) -> Result<BarredWord> {
        if word.len() != bars.len() {
            return Err(SchubertError::Validation(format!(
                "bar mask length {} does not match word length {}",
                bars.len(),
                word.len()
            )));
        }
        Ok(BarredWord { word, bars })
    }

    pub fn bar_count(&self) -> usize {
        self.bars.iter().filter(|&&b| b).count()
    }

    /// comaj of the word plus the sum of the barred letters. Bars do not
    /// move ascent positions; they only contribute their letter values.
    pub fn q_statistic(&self) -> i64 {
        let barred_sum: i64 = self
            .word
            .iter()
            .zip(&self.bars)
            .filter(|(_, &b)| b)
            .map(|(&l, _)| l)
            .sum();
        comaj(&self.word) + barred_sum
    }
}

impl fmt::Display for BarredWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .word
            .iter()
            .zip(&self.bars)
            .map(|(l, &b)| if b { format!("{l}*") } else { l.to_string() })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Which bar masks to enumerate.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BarSelect {
    All,
    Exactly(usize),
}

/// All barred words of `π` with the requested number of bars; the count is
/// `#RW(π) · C(ℓ, k)` per word for `Exactly(k)`.
pub fn barred_words(p: &Permutation, select: BarSelect) -> Vec<BarredWord> {
    let len = p.length();
    let mut out = Vec::new();
    for word in p.reduced_words().iter() {
        for mask in 0u32..(1 << len) {
            let bars: Vec<bool> = (0..len).map(|t| mask >> t & 1 == 1).collect();
            let keep = match select {
                BarSelect::All => true,
                BarSelect::Exactly(k) => bars.iter().filter(|&&b| b).count() == k,
            };
            if keep {
                out.push(BarredWord { word: word.clone(), bars });
            }
        }
    }
    out
}

/// One interleaving of a left and a right barred word.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Shuffle {
    pub left: BarredWord,
    pub right: BarredWord,
    pub sources: Vec<Side>,
}

impl Shuffle {
    /// Pairs where a right-hand letter stands left of a left-hand letter.
    pub fn inversions(&self) -> i64 {
        let mut count = 0;
        for i in 0..self.sources.len() {
            for j in i + 1..self.sources.len() {
                if self.sources[i] == Side::Right && self.sources[j] == Side::Left {
                    count += 1;
                }
            }
        }
        count
    }

    /// The interleaved barred word.
    pub fn merged(&self) -> BarredWord {
        let mut word = Vec::with_capacity(self.sources.len());
        let mut bars = Vec::with_capacity(self.sources.len());
        let (mut l, mut r) = (0, 0);
        for side in &self.sources {
            match side {
                Side::Left => {
                    word.push(self.left.word[l]);
                    bars.push(self.left.bars[l]);
                    l += 1;
                }
                Side::Right => {
                    word.push(self.right.word[r]);
                    bars.push(self.right.bars[r]);
                    r += 1;
                }
            }
        }
        BarredWord { word, bars }
    }

    pub fn bar_count(&self) -> usize {
        self.left.bar_count() + self.right.bar_count()
    }

    /// Sum of the two q-statistics plus the inversion count.
    pub fn q_statistic(&self) -> i64 {
        self.left.q_statistic() + self.right.q_statistic() + self.inversions()
    }
}

/// All `C(|P|+|R|, |P|)` interleavings of the pair.
pub fn shuffles(left: &BarredWord, right: &BarredWord) -> Vec<Shuffle> {
    source_patterns(left.word.len(), right.word.len())
        .into_iter()
        .map(|sources| Shuffle { left: left.clone(), right: right.clone(), sources })
        .collect()
}

fn source_patterns(left_len: usize, right_len: usize) -> Vec<Vec<Side>> {
    let total = left_len + right_len;
    let mut out = Vec::new();
    let mut pattern = Vec::with_capacity(total);
    fn rec(pattern: &mut Vec<Side>, l: usize, r: usize, out: &mut Vec<Vec<Side>>) {
        if l == 0 && r == 0 {
            out.push(pattern.clone());
            return;
        }
        if l > 0 {
            pattern.push(Side::Left);
            rec(pattern, l - 1, r, out);
            pattern.pop();
        }
        if r > 0 {
            pattern.push(Side::Right);
            rec(pattern, l, r - 1, out);
            pattern.pop();
        }
    }
    rec(&mut pattern, left_len, right_len, &mut out);
    out
}

/// `(bar count, statistic) → count`.
pub type Distribution = BTreeMap<(usize, i64), u64>;

/// Histogram of `(bars, q-statistic)` over all barred words of `π`.
pub fn barred_word_histogram(p: &Permutation, select: BarSelect) -> Distribution {
    let mut out = Distribution::new();
    for bw in barred_words(p, select) {
        *out.entry((bw.bar_count(), bw.q_statistic())).or_insert(0) += 1;
    }
    out
}

/// Histogram of inversion counts over all interleaving patterns, by direct
/// enumeration.
fn inversion_histogram(left_len: usize, right_len: usize) -> BTreeMap<i64, u64> {
    let mut out = BTreeMap::new();
    for pattern in source_patterns(left_len, right_len) {
        let shuffle = Shuffle {
            left: BarredWord { word: vec![0; left_len], bars: vec![false; left_len] },
            right: BarredWord { word: vec![0; right_len], bars: vec![false; right_len] },
            sources: pattern,
        };
        *out.entry(shuffle.inversions()).or_insert(0) += 1;
    }
    out
}

/// Both sides of the counting identity, over all bar counts:
/// the left map aggregates `(bars, statistic)` over every shuffle of every
/// barred-word pair for `(π, ρ)`; the right map aggregates barred words of
/// each product term `σ` weighted by `c_{πρ}^σ`. The theorem asserts the
/// maps are equal; callers compare.
pub fn q_nenashev_distributions(
    pi: &Permutation,
    rho: &Permutation,
) -> Result<(Distribution, Distribution)> {
    for p in [pi, rho] {
        if let Some(&lo) = p.support().iter().next() {
            if lo < 1 {
                return Err(SchubertError::Validation(format!(
                    "the counting identity needs positive letters; {p} uses {lo}"
                )));
            }
        }
    }

    let left_hist = barred_word_histogram(pi, BarSelect::All);
    let right_hist = barred_word_histogram(rho, BarSelect::All);
    let inv_hist = inversion_histogram(pi.length(), rho.length());
    let mut lhs = Distribution::new();
    for (&(bars_p, stat_p), &count_p) in &left_hist {
        for (&(bars_r, stat_r), &count_r) in &right_hist {
            for (&inv, &n) in &inv_hist {
                *lhs.entry((bars_p + bars_r, stat_p + stat_r + inv)).or_insert(0) +=
                    count_p * count_r * n;
            }
        }
    }

    let mut rhs = Distribution::new();
    for (sigma, c) in structure_constants(pi, rho).iter() {
        let mult = c.to_integer();
        let mult = u64::try_from(&mult).expect("structure constants are small nonnegatives");
        for ((bars, stat), count) in barred_word_histogram(sigma, BarSelect::All) {
            *rhs.entry((bars, stat)).or_insert(0) += mult * count;
        }
    }
    Ok((lhs, rhs))
}

/// The bare counting identity:
/// `#RW(π) · #RW(ρ) · C(ℓπ+ℓρ, ℓπ) = Σ_σ c_{πρ}^σ #RW(σ)`.
pub fn nenashev_count_check(pi: &Permutation, rho: &Permutation) -> bool {
    let lhs = BigInt::from(pi.reduced_word_count())
        * BigInt::from(rho.reduced_word_count())
        * binomial(pi.length() + rho.length(), pi.length());
    let mut rhs = BigInt::zero();
    for (sigma, c) in structure_constants(pi, rho).iter() {
        rhs += c.to_integer() * BigInt::from(sigma.reduced_word_count());
    }
    lhs == rhs
}

/// The cleared-denominator polynomial identity in `ℤ[q^±1, α, β]`:
/// `[ℓπ+ℓρ choose ℓπ]_q · num_q(π) · num_q(ρ) = Σ_σ c_{πρ}^σ num_q(σ)`.
pub fn multiplied_identity_check(pi: &Permutation, rho: &Permutation) -> bool {
    let lhs = q_binomial(pi.length() + rho.length(), pi.length())
        .mul_ref(&q_klyachko_genus(pi).numerator)
        .mul_ref(&q_klyachko_genus(rho).numerator);
    let mut rhs = MultiPoly::zero();
    for (sigma, c) in structure_constants(pi, rho).iter() {
        rhs = rhs.add_ref(&q_klyachko_genus(sigma).numerator.scale(c));
    }
    lhs == rhs
}

// ---------------------------------------------------------------------------
// Rectification witnesses
// ---------------------------------------------------------------------------

/// One explicit image of the rectification map.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WitnessPair {
    pub left_word: Word,
    pub left_bars: Vec<bool>,
    pub right_word: Word,
    pub right_bars: Vec<bool>,
    /// Interleaving pattern, `L`/`R` per position.
    pub sources: String,
    pub sigma: String,
    pub copy: u64,
    pub target_word: Word,
    pub target_bars: Vec<bool>,
    pub bar_count: usize,
    pub statistic: i64,
}

/// An explicit bar- and statistic-preserving bijection from shuffles onto
/// product-side barred words with multiplicities.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RectificationWitness {
    pub pi: String,
    pub rho: String,
    pub shuffle_count: usize,
    pub class_count: usize,
    pub pairs: Vec<WitnessPair>,
}

/// Builds a rectification witness: shuffles of barred-word pairs for
/// `(π, ρ)` are matched, within each `(bars, statistic)` class, to barred
/// words of the product terms `σ` cloned `c_{πρ}^σ` times. A perfect
/// matching must exist by the counting theorem; a deficit is reported as an
/// inconsistency (it would be a counterexample).
pub fn rectification_witness(
    pi: &Permutation,
    rho: &Permutation,
    select: BarSelect,
) -> Result<RectificationWitness> {
    // The bar count of a shuffle is the total over both parts, so a
    // requested count k splits in every way across the pair.
    let mut lhs_items: Vec<Shuffle> = Vec::new();
    match select {
        BarSelect::All => {
            for left in barred_words(pi, BarSelect::All) {
                for right in barred_words(rho, BarSelect::All) {
                    lhs_items.extend(shuffles(&left, &right));
                }
            }
        }
        BarSelect::Exactly(k) => {
            for k_left in 0..=k.min(pi.length()) {
                let k_right = k - k_left;
                if k_right > rho.length() {
                    continue;
                }
                for left in barred_words(pi, BarSelect::Exactly(k_left)) {
                    for right in barred_words(rho, BarSelect::Exactly(k_right)) {
                        lhs_items.extend(shuffles(&left, &right));
                    }
                }
            }
        }
    }

    struct Target {
        sigma: Permutation,
        copy: u64,
        word: BarredWord,
    }
    let mut rhs_items: Vec<Target> = Vec::new();
    for (sigma, c) in structure_constants(pi, rho).iter() {
        let mult = u64::try_from(&c.to_integer()).expect("small multiplicity");
        for word in barred_words(sigma, select) {
            for copy in 0..mult {
                rhs_items.push(Target { sigma: sigma.clone(), copy, word: word.clone() });
            }
        }
    }

    // Group by (bars, statistic) and match each class separately.
    let mut classes: BTreeMap<(usize, i64), (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for (idx, s) in lhs_items.iter().enumerate() {
        classes.entry((s.bar_count(), s.q_statistic())).or_default().0.push(idx);
    }
    for (idx, t) in rhs_items.iter().enumerate() {
        classes
            .entry((t.word.bar_count(), t.word.q_statistic()))
            .or_default()
            .1
            .push(idx);
    }

    let mut pairs = Vec::with_capacity(lhs_items.len());
    for ((bars, stat), (lhs_class, rhs_class)) in &classes {
        if lhs_class.len() != rhs_class.len() {
            return Err(SchubertError::Inconsistency(format!(
                "class (bars={bars}, stat={stat}) has {} shuffles but {} targets",
                lhs_class.len(),
                rhs_class.len()
            )));
        }
        // Any member of the class is a legal image; the matcher still runs
        // so a deficit could only come from a genuine count mismatch. Each
        // left item tries its own index first, which keeps the matching the
        // positional zip (in particular the identity map when ρ = e).
        let n = rhs_class.len();
        let adjacency: Vec<Vec<usize>> = (0..lhs_class.len())
            .map(|i| (i.min(n)..n).chain(0..i.min(n)).collect())
            .collect();
        let matching = maximum_bipartite_matching(lhs_class.len(), rhs_class.len(), &adjacency);
        for (li, m) in matching.iter().enumerate() {
            let ri = m.ok_or_else(|| {
                SchubertError::Inconsistency(format!(
                    "no perfect matching in class (bars={bars}, stat={stat})"
                ))
            })?;
            let shuffle = &lhs_items[lhs_class[li]];
            let target = &rhs_items[rhs_class[ri]];
            pairs.push(WitnessPair {
                left_word: shuffle.left.word.clone(),
                left_bars: shuffle.left.bars.clone(),
                right_word: shuffle.right.word.clone(),
                right_bars: shuffle.right.bars.clone(),
                sources: shuffle
                    .sources
                    .iter()
                    .map(|s| if *s == Side::Left { 'L' } else { 'R' })
                    .collect(),
                sigma: target.sigma.to_string(),
                copy: target.copy,
                target_word: target.word.word.clone(),
                target_bars: target.word.bars.clone(),
                bar_count: *bars,
                statistic: *stat,
            });
        }
    }

    Ok(RectificationWitness {
        pi: pi.to_string(),
        rho: rho.to_string(),
        shuffle_count: lhs_items.len(),
        class_count: classes.len(),
        pairs,
    })
}

// ---------------------------------------------------------------------------
// The fully-barred table
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QTableRow {
    pub sigma: String,
    pub counts: Vec<u64>,
}

/// The fully-barred counting table: one column per statistic value, a
/// totals row counting shuffles, and one row per `(σ, copy)` counting the
/// fully barred words of `σ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QTable {
    pub statistics: Vec<i64>,
    pub totals: Vec<u64>,
    pub rows: Vec<QTableRow>,
}

/// Builds the fully-barred table for `𝒮_π 𝒮_ρ`. Rows are sorted by the
/// one-line string of `σ`; a coefficient `c > 1` repeats its row `c` times.
pub fn table_egg(pi: &Permutation, rho: &Permutation) -> Result<QTable> {
    let full = |p: &Permutation| BarSelect::Exactly(p.length());

    let mut shuffle_hist: BTreeMap<i64, u64> = BTreeMap::new();
    for left in barred_words(pi, full(pi)) {
        for right in barred_words(rho, full(rho)) {
            for s in shuffles(&left, &right) {
                *shuffle_hist.entry(s.q_statistic()).or_insert(0) += 1;
            }
        }
    }
    let (&lo, &hi) = match (
        shuffle_hist.keys().next(),
        shuffle_hist.keys().next_back(),
    ) {
        (Some(lo), Some(hi)) => (lo, hi),
        _ => {
            return Err(SchubertError::Validation(
                "empty table: no shuffles (are both factors the identity?)".into(),
            ))
        }
    };
    let statistics: Vec<i64> = (lo..=hi).collect();
    let totals: Vec<u64> = statistics
        .iter()
        .map(|s| shuffle_hist.get(s).copied().unwrap_or(0))
        .collect();

    let constants = structure_constants(pi, rho);
    let ambient = constants
        .support()
        .map(Permutation::window_hi)
        .chain([pi.window_hi(), rho.window_hi()])
        .max()
        .unwrap_or(1);
    let mut rows = Vec::new();
    for (sigma, c) in constants.iter() {
        let mut hist: BTreeMap<i64, u64> = BTreeMap::new();
        for bw in barred_words(sigma, BarSelect::Exactly(sigma.length())) {
            *hist.entry(bw.q_statistic()).or_insert(0) += 1;
        }
        for (&stat, _) in &hist {
            if stat < lo || stat > hi {
                return Err(SchubertError::Inconsistency(format!(
                    "product term {sigma} has statistic {stat} outside the shuffle range"
                )));
            }
        }
        let counts: Vec<u64> = statistics
            .iter()
            .map(|s| hist.get(s).copied().unwrap_or(0))
            .collect();
        let label: String = sigma
            .one_line(1, ambient)
            .iter()
            .map(|v| v.to_string())
            .collect();
        let mult = u64::try_from(&c.to_integer()).expect("small multiplicity");
        for _ in 0..mult {
            rows.push(QTableRow { sigma: label.clone(), counts: counts.clone() });
        }
    }
    rows.sort_by(|a, b| a.sigma.cmp(&b.sigma));

    Ok(QTable { statistics, totals, rows })
}

impl QTable {
    /// CSV in the table layout: header of statistics, a totals row, then one
    /// row per `(σ, copy)`. Zero cells are left blank.
    pub fn to_csv(&self) -> String {
        let cell = |n: &u64| if *n == 0 { String::new() } else { n.to_string() };
        let mut out = String::from("q-statistic");
        for s in &self.statistics {
            out.push(',');
            out.push_str(&s.to_string());
        }
        out.push('\n');
        out.push_str("total");
        for t in &self.totals {
            out.push(',');
            out.push_str(&cell(t));
        }
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.sigma);
            for c in &row.counts {
                out.push(',');
                out.push_str(&cell(c));
            }
            out.push('\n');
        }
        out
    }

    /// Parses the CSV produced by [`QTable::to_csv`].
    pub fn from_csv(text: &str) -> Result<QTable> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| SchubertError::Parse("empty table".into()))?;
        let parse_count = |cell: &str| -> Result<u64> {
            if cell.is_empty() {
                Ok(0)
            } else {
                cell.parse()
                    .map_err(|_| SchubertError::Parse(format!("bad count {cell:?}")))
            }
        };
        let statistics: Vec<i64> = header
            .split(',')
            .skip(1)
            .map(|s| {
                s.parse()
                    .map_err(|_| SchubertError::Parse(format!("bad statistic {s:?}")))
            })
            .collect::<Result<_>>()?;
        let totals_line = lines
            .next()
            .ok_or_else(|| SchubertError::Parse("missing totals row".into()))?;
        let totals: Vec<u64> = totals_line
            .split(',')
            .skip(1)
            .map(parse_count)
            .collect::<Result<_>>()?;
        let mut rows = Vec::new();
        for line in lines {
            if line.is_empty() {
                continue;
            }
            let mut cells = line.split(',');
            let sigma = cells.next().unwrap_or_default().to_string();
            let counts: Vec<u64> = cells.map(parse_count).collect::<Result<_>>()?;
            rows.push(QTableRow { sigma, counts });
        }
        Ok(QTable { statistics, totals, rows })
    }

    /// Column sums of the σ rows must reproduce the totals row; this is the
    /// content of the counting theorem for the fully barred case.
    pub fn columns_balance(&self) -> bool {
        self.statistics.iter().enumerate().all(|(j, _)| {
            let col: u64 = self.rows.iter().map(|r| r.counts[j]).sum();
            col == self.totals[j]
        })
    }
}

// ---------------------------------------------------------------------------
// Equidistribution
// ---------------------------------------------------------------------------

/// `Σ_{w∈S_n} q^{inv(w)} = Σ_{w∈S_n} q^{comaj(w)}`, with each permutation
/// read as the word of its one-line values.
pub fn equidistribution_sn(n: usize) -> bool {
    let mut inv_hist: BTreeMap<i64, u64> = BTreeMap::new();
    let mut comaj_hist: BTreeMap<i64, u64> = BTreeMap::new();
    for p in Permutation::all_in_window(1, n as i64) {
        let word = p.one_line(1, n as i64);
        *inv_hist.entry(crate::perm::inversions(&word)).or_insert(0) += 1;
        *comaj_hist.entry(comaj(&word)).or_insert(0) += 1;
    }
    inv_hist == comaj_hist
}

/// For fixed words `P`, `R` with no repeated letters between them: the
/// multiset of `comaj(P) + comaj(R) + inversions(shuffle)` over shuffles
/// equals the multiset of `comaj(merged shuffle)`.
pub fn garsia_gessel_check(left: &Word, right: &Word) -> Result<bool> {
    let mut seen = BTreeSet::new();
    for l in left.iter().chain(right) {
        if !seen.insert(*l) {
            return Err(SchubertError::Validation(format!(
                "letters must be distinct across both words; {l} repeats"
            )));
        }
    }
    let base = comaj(left) + comaj(right);
    let left_bw = BarredWord { word: left.clone(), bars: vec![false; left.len()] };
    let right_bw = BarredWord { word: right.clone(), bars: vec![false; right.len()] };
    let mut lhs: BTreeMap<i64, u64> = BTreeMap::new();
    let mut rhs: BTreeMap<i64, u64> = BTreeMap::new();
    for s in shuffles(&left_bw, &right_bw) {
        *lhs.entry(base + s.inversions()).or_insert(0) += 1;
        *rhs.entry(comaj(&s.merged().word)).or_insert(0) += 1;
    }
    Ok(lhs == rhs)
}

/// Whether the identity insertion preserves the statistic shuffle by
/// shuffle (it does not in general, even when the distributions agree).
pub fn naive_insertion_preserves(left: &Word, right: &Word) -> bool {
    let base = comaj(left) + comaj(right);
    let left_bw = BarredWord { word: left.clone(), bars: vec![false; left.len()] };
    let right_bw = BarredWord { word: right.clone(), bars: vec![false; right.len()] };
    shuffles(&left_bw, &right_bw)
        .iter()
        .all(|s| base + s.inversions() == comaj(&s.merged().word))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn perm(s: &str) -> Permutation {
        Permutation::parse(s, 1).unwrap()
    }

    #[test]
    fn barred_word_counts() {
        let r1 = Permutation::simple(1);
        let all = barred_words(&r1, BarSelect::All);
        assert_eq!(all.len(), 2);

        let egg = perm("12463578");
        assert_eq!(barred_words(&egg, BarSelect::Exactly(3)).len(), 2);
        assert_eq!(barred_words(&egg, BarSelect::All).len(), 2 * 8);
        assert_eq!(
            barred_words(&Permutation::identity(), BarSelect::All),
            vec![BarredWord { word: vec![], bars: vec![] }]
        );

        // #RW(π)·C(ℓ,k) for every k.
        let p = perm("321");
        for k in 0..=3usize {
            let expected = 2 * binomial(3, k);
            assert_eq!(
                BigInt::from(barred_words(&p, BarSelect::Exactly(k)).len()),
                expected
            );
        }
    }

    #[test]
    fn q_statistics() {
        let fully = BarredWord::new(vec![3, 5, 4], vec![true; 3]).unwrap();
        assert_eq!(fully.q_statistic(), 1 + 12);
        let other = BarredWord::new(vec![5, 3, 4], vec![true; 3]).unwrap();
        assert_eq!(other.q_statistic(), 2 + 12);
        assert_eq!(BarredWord::new(vec![], vec![]).unwrap().q_statistic(), 0);
        assert!(BarredWord::new(vec![1], vec![]).is_err());

        // Extreme shuffles of the fully barred pair: 26 and 37.
        let min_shuffle = Shuffle {
            left: fully.clone(),
            right: fully.clone(),
            sources: vec![
                Side::Left,
                Side::Left,
                Side::Left,
                Side::Right,
                Side::Right,
                Side::Right,
            ],
        };
        assert_eq!(min_shuffle.inversions(), 0);
        assert_eq!(min_shuffle.q_statistic(), 26);
        let max_shuffle = Shuffle {
            left: other.clone(),
            right: other.clone(),
            sources: vec![
                Side::Right,
                Side::Right,
                Side::Right,
                Side::Left,
                Side::Left,
                Side::Left,
            ],
        };
        assert_eq!(max_shuffle.inversions(), 9);
        assert_eq!(max_shuffle.q_statistic(), 37);
    }

    #[test]
    fn shuffle_counts() {
        let bw = |letters: &[i64]| BarredWord {
            word: letters.to_vec(),
            bars: vec![false; letters.len()],
        };
        assert_eq!(shuffles(&bw(&[3, 5, 4]), &bw(&[3, 5, 4])).len(), 20);
        assert_eq!(shuffles(&bw(&[1, 2]), &bw(&[])).len(), 1);
        assert_eq!(shuffles(&bw(&[1, 2]), &bw(&[]))[0].inversions(), 0);
        let two = shuffles(&bw(&[1]), &bw(&[3]));
        let mut invs: Vec<i64> = two.iter().map(Shuffle::inversions).collect();
        invs.sort_unstable();
        assert_eq!(invs, vec![0, 1]);
        // Merging restores the parts in order.
        for s in &two {
            let merged = s.merged();
            assert_eq!(merged.word.len(), 2);
        }
    }

    #[test]
    fn distributions_for_the_unit() {
        let p = perm("321");
        let (lhs, rhs) =
            q_nenashev_distributions(&p, &Permutation::identity()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, barred_word_histogram(&p, BarSelect::All));
    }

    #[test]
    fn distributions_small_pairs() {
        let r1 = Permutation::simple(1);
        let (lhs, rhs) = q_nenashev_distributions(&r1, &r1).unwrap();
        assert_eq!(lhs, rhs);
        // Hand-checked table for r_1 · r_1.
        let expected: Distribution = [
            ((0, 0), 1),
            ((0, 1), 1),
            ((1, 1), 2),
            ((1, 2), 2),
            ((2, 2), 1),
            ((2, 3), 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(lhs, expected);

        for (p, q) in [
            (perm("321"), Permutation::simple(2)),
            (perm("231"), perm("312")),
            (perm("2143"), Permutation::simple(1)),
        ] {
            let (lhs, rhs) = q_nenashev_distributions(&p, &q).unwrap();
            assert_eq!(lhs, rhs, "{p} {q}");
        }

        assert!(q_nenashev_distributions(&Permutation::simple(0), &r1).is_err());
    }

    #[test]
    fn count_and_identity_checks() {
        let egg = perm("12463578");
        assert!(nenashev_count_check(&egg, &egg));
        assert!(nenashev_count_check(&egg, &Permutation::identity()));
        let r1 = Permutation::simple(1);
        assert!(nenashev_count_check(&r1, &r1));

        assert!(multiplied_identity_check(&egg, &egg));
        assert!(multiplied_identity_check(&egg, &Permutation::identity()));
        let r2 = Permutation::simple(2);
        assert!(multiplied_identity_check(&r2, &r2));
    }

    #[test]
    fn egg_total_is_eighty() {
        // 2·2·C(6,3) = 80 fully barred shuffles for the running example.
        let egg = perm("12463578");
        let table = table_egg(&egg, &egg).unwrap();
        assert_eq!(table.totals.iter().sum::<u64>(), 80);
        assert_eq!(table.statistics.first(), Some(&26));
        assert_eq!(table.statistics.last(), Some(&37));
        assert_eq!(table.rows.len(), 8);
        assert!(table.columns_balance());

        // CSV round-trips.
        let csv = table.to_csv();
        assert_eq!(QTable::from_csv(&csv).unwrap(), table);
    }

    #[test]
    fn rectification_small() {
        let r1 = Permutation::simple(1);
        let witness = rectification_witness(&r1, &r1, BarSelect::All).unwrap();
        // 2 barred words each side × 2 shuffles = 8 items.
        assert_eq!(witness.shuffle_count, 8);
        assert_eq!(witness.pairs.len(), 8);

        // ρ = identity: everything matches trivially, preserving statistics.
        let p = perm("321");
        let witness = rectification_witness(&p, &Permutation::identity(), BarSelect::All).unwrap();
        assert_eq!(witness.pairs.len(), barred_words(&p, BarSelect::All).len());
        for pair in &witness.pairs {
            assert_eq!(pair.left_word, pair.target_word);
            assert_eq!(pair.left_bars, pair.target_bars);
        }
    }

    #[test]
    fn rectification_preserves_bars_and_statistic() {
        let p = perm("321");
        let q = Permutation::simple(2);
        for select in [BarSelect::All, BarSelect::Exactly(2)] {
            let witness = rectification_witness(&p, &q, select).unwrap();
            for pair in &witness.pairs {
                let left = BarredWord::new(pair.left_word.clone(), pair.left_bars.clone()).unwrap();
                let right =
                    BarredWord::new(pair.right_word.clone(), pair.right_bars.clone()).unwrap();
                let target =
                    BarredWord::new(pair.target_word.clone(), pair.target_bars.clone()).unwrap();
                let sources: Vec<Side> = pair
                    .sources
                    .chars()
                    .map(|c| if c == 'L' { Side::Left } else { Side::Right })
                    .collect();
                let shuffle = Shuffle { left, right, sources };
                assert_eq!(shuffle.bar_count(), target.bar_count());
                assert_eq!(shuffle.q_statistic(), target.q_statistic());
                assert_eq!(shuffle.q_statistic(), pair.statistic);
            }
        }
    }

    #[test]
    fn equidistribution() {
        // n = 3: both sides are 1 + 2q + 2q² + q³.
        for n in 1..=5 {
            assert!(equidistribution_sn(n), "n = {n}");
        }
    }

    #[test]
    fn garsia_gessel() {
        assert!(garsia_gessel_check(&vec![1], &vec![3]).unwrap());
        assert!(garsia_gessel_check(&vec![2, 4], &vec![6]).unwrap());
        assert!(garsia_gessel_check(&vec![], &vec![5]).unwrap());
        assert!(garsia_gessel_check(&vec![1], &vec![1]).is_err());

        // The prediction holds, yet the naive insertion map fails pointwise.
        assert!(!naive_insertion_preserves(&vec![2, 4], &vec![6]));
    }

    #[test]
    fn disjoint_letter_products() {
        // J with no two adjacent letters: a single product term with c = 1,
        // and reduced words of the product correspond to shuffles.
        let j: Vec<i64> = vec![1, 3, 6];
        for split in 0..(1u32 << j.len()) {
            let (mut k, mut rest) = (Vec::new(), Vec::new());
            for (t, &letter) in j.iter().enumerate() {
                if split >> t & 1 == 1 {
                    k.push(letter);
                } else {
                    rest.push(letter);
                }
            }
            let rho = Permutation::from_word(&k);
            let pi = Permutation::from_word(&rest);
            let c = structure_constants(&pi, &rho);
            let composite = pi.multiply(&rho);
            assert_eq!(c.iter().count(), 1);
            assert_eq!(c.coefficient(&composite), rat(1));
            let expected =
                binomial(j.len(), k.len()) * pi.reduced_word_count() * rho.reduced_word_count();
            assert_eq!(BigInt::from(composite.reduced_word_count()), expected);
        }
    }
}

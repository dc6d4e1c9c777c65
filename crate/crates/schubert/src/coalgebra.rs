//! The coproduct dual to nil Hecke multiplication, its failure to be a ring
//! map, the Stanley genus, and the Fomin–Greene–Nenashev operators `ξ^λ`.
//!
//! Transposing `d_π d_ρ = d_{πρ}` gives
//! `Δ(𝒮_σ) = Σ 𝒮_π ⊗ 𝒮_ρ` over the length-additive factorizations
//! `σ = πρ`. The coproduct is coassociative but not a ring homomorphism;
//! the defect `Δ(pq) − Δ(p)Δ(q)` is nevertheless killed leg-wise by the
//! Stanley genus, which sends `𝒮_π` to its Stanley symmetric function
//! `St_π = Σ_λ a_π^λ Schur_λ`. Transposing the Stanley genus yields the
//! operators `ξ^λ = Σ_π a_π^λ 𝔪_π`, which multiply and comultiply through
//! Littlewood–Richardson coefficients.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num::{BigInt, One, Signed, Zero};

use crate::error::{Result, SchubertError};
use crate::nilhecke::SchubertVector;
use crate::perm::Permutation;
use crate::poly::{product, structure_constants, Monomial, MultiPoly, Var};
use crate::ring::{factorial, Rat};

// ---------------------------------------------------------------------------
// Partitions
// ---------------------------------------------------------------------------

/// An integer partition: weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Partition {
    parts: Vec<i64>,
}

impl Partition {
    pub fn new(parts: Vec<i64>) -> Result<Partition> {
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.iter().any(|&p| p <= 0) {
            return Err(SchubertError::InvalidPartition(format!(
                "parts must be weakly decreasing and positive: {parts:?}"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Partition {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    pub fn size(&self) -> i64 {
        self.parts.iter().sum()
    }

    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    pub fn part(&self, row: usize) -> i64 {
        self.parts.get(row).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0);
        let parts = (1..=cols)
            .map(|c| self.parts.iter().filter(|&&p| p >= c).count() as i64)
            .collect();
        Partition { parts }
    }

    /// All partitions of `n`, in lexicographically decreasing order.
    pub fn all_of_size(n: i64) -> Vec<Partition> {
        fn rec(remaining: i64, max_part: i64, prefix: &mut Vec<i64>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition { parts: prefix.clone() });
                return;
            }
            for p in (1..=max_part.min(remaining)).rev() {
                prefix.push(p);
                rec(remaining - p, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// Number of standard tableaux, by the hook length formula.
    pub fn standard_tableaux_count(&self) -> BigInt {
        let mut hooks = BigInt::one();
        let conj = self.conjugate();
        for (r, &len) in self.parts.iter().enumerate() {
            for c in 0..len {
                let arm = len - c - 1;
                let leg = conj.part(c as usize) - r as i64 - 1;
                hooks *= BigInt::from(arm + leg + 1);
            }
        }
        factorial(self.size() as usize) / hooks
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

// ---------------------------------------------------------------------------
// Pair vectors and the coproduct
// ---------------------------------------------------------------------------

/// An element of `H ⊗ H`: a finite sum of `𝒮_π ⊗ 𝒮_ρ`.
#[derive(Clone, PartialEq, Default)]
pub struct PairVector {
    terms: BTreeMap<(Permutation, Permutation), Rat>,
}

impl PairVector {
    pub fn zero() -> PairVector {
        PairVector::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: (Permutation, Permutation), c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Permutation, Permutation), &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, key: &(Permutation, Permutation)) -> Rat {
        self.terms.get(key).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, other: &PairVector) -> PairVector {
        let mut out = self.clone();
        for (k, c) in other.iter() {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &PairVector) -> PairVector {
        let mut out = self.clone();
        for (k, c) in other.iter() {
            out.add_term(k.clone(), -c.clone());
        }
        out
    }

    pub fn tensor(v: &SchubertVector<Rat>, w: &SchubertVector<Rat>) -> PairVector {
        let mut out = PairVector::zero();
        for (p, a) in v.iter() {
            for (q, b) in w.iter() {
                out.add_term((p.clone(), q.clone()), a * b);
            }
        }
        out
    }

    /// Component-wise product through the structure constants.
    pub fn multiply(&self, other: &PairVector) -> PairVector {
        let mut out = PairVector::zero();
        for ((p1, q1), a) in self.iter() {
            for ((p2, q2), b) in other.iter() {
                let ab = a * b;
                for (s1, c1) in structure_constants(p1, p2).iter() {
                    for (s2, c2) in structure_constants(q1, q2).iter() {
                        out.add_term((s1.clone(), s2.clone()), &ab * &(c1 * c2));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for PairVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, ((p, q), c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*S[{p}](x)S[{q}]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PairVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn factorization_cache(
) -> &'static Mutex<HashMap<Permutation, Arc<Vec<(Permutation, Permutation)>>>> {
    static CACHE: OnceLock<Mutex<HashMap<Permutation, Arc<Vec<(Permutation, Permutation)>>>>> =
        OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The distinct length-additive factorizations `σ = u · v`, enumerated by
/// splitting reduced words at every position. Memoized; both the coproduct
/// and the `ξ^λ` sweeps hit the same permutations repeatedly.
pub fn left_factorizations(sigma: &Permutation) -> Arc<Vec<(Permutation, Permutation)>> {
    if let Some(hit) = factorization_cache().lock().unwrap().get(sigma) {
        return hit.clone();
    }
    let mut seen: BTreeSet<(Permutation, Permutation)> = BTreeSet::new();
    for word in sigma.reduced_words().iter() {
        for cut in 0..=word.len() {
            let left = Permutation::from_word(&word[..cut]);
            let right = Permutation::from_word(&word[cut..]);
            seen.insert((left, right));
        }
    }
    let arc = Arc::new(seen.into_iter().collect::<Vec<_>>());
    factorization_cache()
        .lock()
        .unwrap()
        .insert(sigma.clone(), arc.clone());
    arc
}

/// The coproduct `Δ(𝒮_σ) = Σ {𝒮_π ⊗ 𝒮_ρ : σ = πρ, lengths add}`, extended
/// linearly.
pub fn coproduct(v: &SchubertVector<Rat>) -> PairVector {
    let mut out = PairVector::zero();
    for (sigma, c) in v.iter() {
        for (left, right) in left_factorizations(sigma).iter() {
            out.add_term((left.clone(), right.clone()), c.clone());
        }
    }
    out
}

/// The Hopf-failure defect `Δ(pq) − Δ(p)Δ(q)`.
pub fn hopf_defect(p: &SchubertVector<Rat>, q: &SchubertVector<Rat>) -> PairVector {
    let lhs = coproduct(&product(p, q));
    let rhs = coproduct(p).multiply(&coproduct(q));
    lhs.sub(&rhs)
}

/// Separated Hopfness: after shifting `ρ` up by `N`, is the defect of
/// `𝒮_π, 𝒮_{ρ[N]}` zero?
///
/// When the supports are separated by a gap of at least two the theorem also
/// gives `𝒮_π·𝒮_{ρ[N]} = 𝒮_{π·ρ[N]}`, and that identity is asserted here.
/// For smaller `N` the function simply reports whether the defect vanishes
/// (the `N = 0` square of `r_2` is the standard counterexample).
pub fn separated_hopfness(pi: &Permutation, rho: &Permutation, n: i64) -> bool {
    let shifted = rho.shift(n);
    let separated = match (pi.support().iter().max(), shifted.support().iter().min()) {
        (Some(&hi), Some(&lo)) => lo >= hi + 2,
        _ => true,
    };
    if separated {
        let prod = product(
            &SchubertVector::basis(pi.clone()),
            &SchubertVector::basis(shifted.clone()),
        );
        assert_eq!(
            prod,
            SchubertVector::basis(pi.multiply(&shifted)),
            "separated product must be a single symbol"
        );
    }
    hopf_defect(
        &SchubertVector::basis(pi.clone()),
        &SchubertVector::basis(shifted),
    )
    .is_zero()
}

// ---------------------------------------------------------------------------
// Schur polynomials and expansions
// ---------------------------------------------------------------------------

fn schur_cache() -> &'static Mutex<HashMap<(Partition, i64), Arc<MultiPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<(Partition, i64), Arc<MultiPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The Schur polynomial `s_λ(x_1..x_m)`, by summing over semistandard
/// tableaux with entries at most `m`.
pub fn schur_polynomial(shape: &Partition, m: i64) -> Arc<MultiPoly> {
    let key = (shape.clone(), m);
    if let Some(hit) = schur_cache().lock().unwrap().get(&key) {
        return hit.clone();
    }

    fn fill(
        shape: &Partition,
        m: i64,
        rows: &mut Vec<Vec<i64>>,
        r: usize,
        c: usize,
        weight: &mut Vec<i64>,
        out: &mut MultiPoly,
    ) {
        if r == shape.rows() {
            let pairs: Vec<(Var, i64)> = weight
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| (Var::x(i as i64 + 1), e))
                .collect();
            out.add_term(Monomial::from_pairs(pairs), Rat::one());
            return;
        }
        if c as i64 == shape.part(r) {
            fill(shape, m, rows, r + 1, 0, weight, out);
            return;
        }
        let min_left = if c > 0 { rows[r][c - 1] } else { 1 };
        let min_above = if r > 0 { rows[r - 1][c] + 1 } else { 1 };
        for entry in min_left.max(min_above)..=m {
            rows[r].push(entry);
            weight[(entry - 1) as usize] += 1;
            fill(shape, m, rows, r, c + 1, weight, out);
            weight[(entry - 1) as usize] -= 1;
            rows[r].pop();
        }
    }

    let mut out = MultiPoly::zero();
    if (shape.rows() as i64) <= m {
        let mut rows = vec![Vec::new(); shape.rows()];
        let mut weight = vec![0i64; m as usize];
        fill(shape, m, &mut rows, 0, 0, &mut weight, &mut out);
    }

    let arc = Arc::new(out);
    schur_cache().lock().unwrap().insert(key, arc.clone());
    arc
}

/// Expands a symmetric polynomial in `x_1..x_m` over the Schur basis by
/// repeatedly subtracting the Schur polynomial of the lexicographic leading
/// monomial; unambiguous, since the leading monomial of `s_λ` is `x^λ`.
pub fn expand_schur_basis(f: &MultiPoly, m: i64) -> Result<BTreeMap<Partition, Rat>> {
    let mut out = BTreeMap::new();
    let mut residual = f.clone();
    while !residual.is_zero() {
        let (exps, coeff) = residual.leading_x_term_lex(m).expect("nonzero polynomial");
        let mut parts = exps.clone();
        while parts.last() == Some(&0) {
            parts.pop();
        }
        let shape = Partition::new(parts).map_err(|_| {
            SchubertError::Inconsistency(format!(
                "leading exponent {exps:?} of {residual} is not a partition; input not symmetric?"
            ))
        })?;
        residual = residual.sub_ref(&schur_polynomial(&shape, m).scale(&coeff));
        out.insert(shape, coeff);
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

// ---------------------------------------------------------------------------
// Stanley coefficients
// ---------------------------------------------------------------------------

fn stanley_cache() -> &'static Mutex<HashMap<Permutation, Arc<BTreeMap<Partition, BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<Permutation, Arc<BTreeMap<Partition, BigInt>>>>> =
        OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `S_{π[n]}` with `x_j = 0` for `j > m`, computed from the compatible
/// sequences of the shifted reduced words. The cap `m` prunes the
/// enumeration, which keeps large shifts cheap.
fn shifted_schubert_restricted(p: &Permutation, n: i64, m: i64) -> MultiPoly {
    fn rec(
        word: &[i64],
        t: usize,
        min: i64,
        m: i64,
        weight: &mut Vec<i64>,
        out: &mut MultiPoly,
    ) {
        if t == word.len() {
            let pairs: Vec<(Var, i64)> = weight
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| (Var::x(i as i64 + 1), e))
                .collect();
            out.add_term(Monomial::from_pairs(pairs), Rat::one());
            return;
        }
        let strict = t + 1 < word.len() && word[t] < word[t + 1];
        for i in min..=word[t].min(m) {
            weight[(i - 1) as usize] += 1;
            rec(word, t + 1, i + i64::from(strict), m, weight, out);
            weight[(i - 1) as usize] -= 1;
        }
    }

    let mut out = MultiPoly::zero();
    let mut weight = vec![0i64; m as usize];
    for word in p.reduced_words().iter() {
        let shifted: Vec<i64> = word.iter().map(|l| l + n).collect();
        rec(&shifted, 0, 1, m, &mut weight, &mut out);
    }
    out
}

/// Stanley symmetric function coefficients: `St_π = Σ_λ a_π^λ Schur_λ`.
///
/// Computed by the shift-stabilization route: restrict `S_{π[N]}` to the
/// first `ℓ(π)` variables and grow `N` until two consecutive truncations
/// agree and are symmetric, then expand in the Schur basis. Stabilization is
/// guaranteed — once `N` pushes every letter past the variable cap the
/// restriction stops changing — and the hook-length count
/// `Σ_λ a_π^λ f^λ = #RW(π)` is asserted on every call.
pub fn stanley_coefficients(p: &Permutation) -> Arc<BTreeMap<Partition, BigInt>> {
    if let Some(hit) = stanley_cache().lock().unwrap().get(p) {
        return hit.clone();
    }
    let len = p.length() as i64;
    let mut out = BTreeMap::new();
    if len == 0 {
        out.insert(Partition::empty(), BigInt::one());
    } else {
        let m = len;
        let start = (1 - p.window_lo()).max(1);
        let mut n = start;
        let mut here = shifted_schubert_restricted(p, n, m);
        let stable = loop {
            let next = shifted_schubert_restricted(p, n + 1, m);
            if here == next && here.is_symmetric_in_x(m) {
                break here;
            }
            here = next;
            n += 1;
            assert!(
                n <= start + m + p.window_hi() - p.window_lo() + 2,
                "stabilization must be reached once the letters clear the cap"
            );
        };
        for (shape, c) in expand_schur_basis(&stable, m).expect("stable limit is symmetric") {
            assert!(
                c.denom().is_one() && c.numer().is_positive(),
                "Stanley coefficients are nonnegative integers, got {c} at {shape}"
            );
            out.insert(shape, c.numer().clone());
        }
        let rw_count: BigInt = out
            .iter()
            .map(|(shape, a)| a * shape.standard_tableaux_count())
            .sum();
        assert_eq!(
            rw_count,
            BigInt::from(p.reduced_word_count()),
            "hook-length count must match the number of reduced words of {p}"
        );
    }
    let arc = Arc::new(out);
    stanley_cache().lock().unwrap().insert(p.clone(), arc.clone());
    arc
}

// ---------------------------------------------------------------------------
// Littlewood–Richardson coefficients and the ξ^λ operators
// ---------------------------------------------------------------------------

fn lr_cache() -> &'static Mutex<HashMap<(Partition, Partition), Arc<BTreeMap<Partition, BigInt>>>>
{
    static CACHE: OnceLock<
        Mutex<HashMap<(Partition, Partition), Arc<BTreeMap<Partition, BigInt>>>>,
    > = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Littlewood–Richardson coefficients `s_λ s_μ = Σ_ν c_{λμ}^ν s_ν`, by
/// multiplying Schur polynomials in `|λ|+|μ|` variables and expanding.
pub fn lr_coefficients(lambda: &Partition, mu: &Partition) -> Arc<BTreeMap<Partition, BigInt>> {
    let key = (lambda.clone(), mu.clone());
    if let Some(hit) = lr_cache().lock().unwrap().get(&key) {
        return hit.clone();
    }
    let m = (lambda.size() + mu.size()).max(1);
    let f = schur_polynomial(lambda, m).mul_ref(&schur_polynomial(mu, m));
    let mut out = BTreeMap::new();
    for (shape, c) in expand_schur_basis(&f, m).expect("Schur products are symmetric") {
        assert!(
            c.denom().is_one() && c.numer().is_positive(),
            "LR coefficients are nonnegative integers"
        );
        out.insert(shape, c.numer().clone());
    }
    let arc = Arc::new(out);
    lr_cache().lock().unwrap().insert(key, arc.clone());
    arc
}

/// The operator `ξ^λ = Σ_π a_π^λ 𝔪_π` applied to a vector. For each basis
/// symbol the sum is finite: `𝔪_π 𝒮_σ` survives only when `π⁻¹` is a
/// length-additive left factor `u` of `σ` with `ℓ(u) = |λ|`, contributing
/// `a_{u⁻¹}^λ 𝒮_{u⁻¹σ}`.
pub fn xi_apply(shape: &Partition, v: &SchubertVector<Rat>) -> SchubertVector<Rat> {
    let degree = shape.size() as usize;
    let mut out = SchubertVector::zero();
    for (sigma, c) in v.iter() {
        for (u, rest) in left_factorizations(sigma).iter() {
            if u.length() != degree {
                continue;
            }
            let a = stanley_coefficients(&u.inverse())
                .get(shape)
                .cloned()
                .unwrap_or_else(BigInt::zero);
            if !a.is_zero() {
                out.add_term(rest.clone(), c * Rat::from_integer(a));
            }
        }
    }
    out
}

/// Applies the Stanley genus to both legs of the Hopf defect of `p, q` and
/// reports whether the result vanishes in `Symm ⊗ Symm` — the computable
/// consequence of the defect lying in `𝔪⊗H + H⊗𝔪`.
pub fn stanley_kills_defect(p: &SchubertVector<Rat>, q: &SchubertVector<Rat>) -> bool {
    let defect = hopf_defect(p, q);
    let mut acc: BTreeMap<(Partition, Partition), Rat> = BTreeMap::new();
    for ((pi, rho), c) in defect.iter() {
        for (lam, a) in stanley_coefficients(pi).iter() {
            for (mu, b) in stanley_coefficients(rho).iter() {
                let entry = acc.entry((lam.clone(), mu.clone())).or_insert_with(Rat::zero);
                *entry += c * Rat::from_integer(a * b);
            }
        }
    }
    acc.values().all(Rat::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilhecke::CoefficientFunction;
    use crate::poly::code_of;
    use crate::ring::rat;

    fn perm(s: &str) -> Permutation {
        Permutation::parse(s, 1).unwrap()
    }

    fn basis(p: &Permutation) -> SchubertVector<Rat> {
        SchubertVector::basis(p.clone())
    }

    fn shape(parts: &[i64]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn partition_basics() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(shape(&[3, 1]).conjugate(), shape(&[2, 1, 1]));
        assert_eq!(Partition::all_of_size(4).len(), 5);
        assert_eq!(shape(&[2, 1]).standard_tableaux_count(), BigInt::from(2));
        assert_eq!(shape(&[3, 2]).standard_tableaux_count(), BigInt::from(5));
    }

    /// Explicit standard-tableaux enumeration, as an oracle for the hook
    /// length formula.
    fn brute_syt(shape: &Partition) -> usize {
        fn rec(shape: &Partition, filled: &mut Vec<i64>, next: i64) -> usize {
            if next > shape.size() {
                return 1;
            }
            let mut total = 0;
            for r in 0..shape.rows() {
                let row_len = filled[r];
                let can_row = row_len < shape.part(r);
                let can_col = r == 0 || filled[r - 1] > row_len;
                if can_row && can_col {
                    filled[r] += 1;
                    total += rec(shape, filled, next + 1);
                    filled[r] -= 1;
                }
            }
            total
        }
        rec(shape, &mut vec![0; shape.rows()], 1)
    }

    #[test]
    fn hook_length_matches_enumeration() {
        for n in 1..=6 {
            for shape in Partition::all_of_size(n) {
                assert_eq!(
                    shape.standard_tableaux_count(),
                    BigInt::from(brute_syt(&shape)),
                    "{shape}"
                );
            }
        }
    }

    #[test]
    fn coproduct_examples() {
        // Δ(𝒮_e) = 𝒮_e ⊗ 𝒮_e.
        let e = Permutation::identity();
        let delta = coproduct(&basis(&e));
        assert_eq!(delta.coefficient(&(e.clone(), e.clone())), rat(1));
        assert_eq!(delta.iter().count(), 1);

        // Degree-1 symbols are primitive.
        let r3 = Permutation::simple(3);
        let delta = coproduct(&basis(&r3));
        assert_eq!(delta.iter().count(), 2);
        assert_eq!(delta.coefficient(&(r3.clone(), e.clone())), rat(1));
        assert_eq!(delta.coefficient(&(e.clone(), r3.clone())), rat(1));

        // Δ(𝒮_{r_1 r_2}) = 𝒮_{r_1r_2}⊗1 + 𝒮_{r_1}⊗𝒮_{r_2} + 1⊗𝒮_{r_1r_2}.
        let w = Permutation::from_word(&[1, 2]);
        let delta = coproduct(&basis(&w));
        assert_eq!(delta.iter().count(), 3);
        assert_eq!(
            delta.coefficient(&(Permutation::simple(1), Permutation::simple(2))),
            rat(1)
        );
        assert_eq!(delta.coefficient(&(w.clone(), e.clone())), rat(1));
        assert_eq!(delta.coefficient(&(e.clone(), w.clone())), rat(1));
    }

    #[test]
    fn coassociativity_small() {
        // (Δ⊗id)Δ = (id⊗Δ)Δ on S_4 symbols.
        for sigma in Permutation::all_in_window(1, 4) {
            let mut lhs: BTreeMap<(Permutation, Permutation, Permutation), Rat> = BTreeMap::new();
            let mut rhs = lhs.clone();
            for ((p, q), c) in coproduct(&basis(&sigma)).iter() {
                for (p1, p2) in left_factorizations(p).iter() {
                    *lhs.entry((p1.clone(), p2.clone(), q.clone()))
                        .or_insert_with(Rat::zero) += c;
                }
                for (q1, q2) in left_factorizations(q).iter() {
                    *rhs.entry((p.clone(), q1.clone(), q2.clone()))
                        .or_insert_with(Rat::zero) += c;
                }
            }
            assert_eq!(lhs, rhs, "{sigma}");
        }
    }

    #[test]
    fn hopf_defect_of_r2_squared() {
        // Δ(𝒮_{r_2}²) − Δ(𝒮_{r_2})² = r_1⊗r_2 + r_3⊗r_2 − 2·r_2⊗r_2.
        let r = Permutation::simple;
        let defect = hopf_defect(&basis(&r(2)), &basis(&r(2)));
        let mut expected = PairVector::zero();
        expected.add_term((r(1), r(2)), rat(1));
        expected.add_term((r(3), r(2)), rat(1));
        expected.add_term((r(2), r(2)), rat(-2));
        assert_eq!(defect, expected);

        // Unit legs never create a defect.
        assert!(hopf_defect(&SchubertVector::unit(), &basis(&perm("321"))).is_zero());

        // Disjoint, non-adjacent supports commute cleanly.
        assert!(hopf_defect(&basis(&r(1)), &basis(&r(4))).is_zero());
    }

    #[test]
    fn separated_hopfness_examples() {
        let r2 = Permutation::simple(2);
        assert!(!separated_hopfness(&r2, &r2, 0));
        assert!(separated_hopfness(&r2, &r2, 2));
        for n in 3..=5 {
            assert!(separated_hopfness(&r2, &r2, n));
        }
        assert!(separated_hopfness(&Permutation::identity(), &r2, 0));
    }

    #[test]
    fn schur_polynomials() {
        // s_(1) = e_1, s_(1,1) = e_2, s_(2) = h_2 in three variables.
        let m = 3;
        let x = |i| MultiPoly::var(Var::x(i));
        assert_eq!(
            schur_polynomial(&shape(&[1]), m).as_ref(),
            &x(1).add_ref(&x(2)).add_ref(&x(3))
        );
        let e2 = x(1)
            .mul_ref(&x(2))
            .add_ref(&x(1).mul_ref(&x(3)))
            .add_ref(&x(2).mul_ref(&x(3)));
        assert_eq!(schur_polynomial(&shape(&[1, 1]), m).as_ref(), &e2);
        let h2 = x(1)
            .pow(2)
            .add_ref(&x(2).pow(2))
            .add_ref(&x(3).pow(2))
            .add_ref(&e2);
        assert_eq!(schur_polynomial(&shape(&[2]), m).as_ref(), &h2);
        // Too few variables: zero.
        assert!(schur_polynomial(&shape(&[1, 1, 1]), 2).is_zero());
    }

    #[test]
    fn lr_examples() {
        // Pieri: s_1·s_1 = s_2 + s_11.
        let c = lr_coefficients(&shape(&[1]), &shape(&[1]));
        assert_eq!(c.len(), 2);
        assert_eq!(c[&shape(&[2])], BigInt::one());
        assert_eq!(c[&shape(&[1, 1])], BigInt::one());

        // Unit.
        let c = lr_coefficients(&shape(&[2, 1]), &Partition::empty());
        assert_eq!(c.len(), 1);
        assert_eq!(c[&shape(&[2, 1])], BigInt::one());

        // s_21·s_21: the classical expansion with a single multiplicity 2.
        let c = lr_coefficients(&shape(&[2, 1]), &shape(&[2, 1]));
        let expected: Vec<(&[i64], i64)> = vec![
            (&[4, 2], 1),
            (&[4, 1, 1], 1),
            (&[3, 3], 1),
            (&[3, 2, 1], 2),
            (&[3, 1, 1, 1], 1),
            (&[2, 2, 2], 1),
            (&[2, 2, 1, 1], 1),
        ];
        assert_eq!(c.len(), expected.len());
        for (parts, mult) in expected {
            assert_eq!(c[&shape(parts)], BigInt::from(mult), "{parts:?}");
        }
    }

    #[test]
    fn stanley_examples() {
        // Simple reflections: a single box.
        for i in [-2, 1, 4] {
            let st = stanley_coefficients(&Permutation::simple(i));
            assert_eq!(st.len(), 1);
            assert_eq!(st[&shape(&[1])], BigInt::one());
        }

        // (1 3) = 321: two reduced words, f^(2,1) = 2.
        let st = stanley_coefficients(&perm("321"));
        assert_eq!(st.len(), 1);
        assert_eq!(st[&shape(&[2, 1])], BigInt::one());

        // Dominant permutations: a single Schur function at the sorted code.
        for p in Permutation::all_in_window(1, 5) {
            let code = code_of(&p);
            let dominant = code.windows(2).all(|w| w[0] >= w[1]);
            if !dominant || p.is_identity() || p.length() > 7 {
                continue;
            }
            let st = stanley_coefficients(&p);
            assert_eq!(st.len(), 1, "{p}");
            assert_eq!(st[&Partition::new(code).unwrap()], BigInt::one(), "{p}");
        }
    }

    #[test]
    fn stanley_shift_invariance() {
        for p in [perm("321"), perm("2143"), perm("1432")] {
            let base = stanley_coefficients(&p);
            for n in [1, 2, -2] {
                assert_eq!(stanley_coefficients(&p.shift(n)), base, "{p} shift {n}");
            }
        }
    }

    #[test]
    fn xi_examples() {
        // ξ^(1) is ξ = Σ 𝔪_i.
        let xi1 = shape(&[1]);
        let xi = CoefficientFunction::<Rat>::xi();
        for p in Permutation::all_in_window(1, 4) {
            assert_eq!(xi_apply(&xi1, &basis(&p)), xi.apply(&basis(&p)), "{p}");
        }

        // ξ^λ kills the unit for |λ| ≥ 1.
        for n in 1..=3 {
            for lam in Partition::all_of_size(n) {
                assert!(xi_apply(&lam, &SchubertVector::unit()).is_zero());
            }
        }

        // ξ^{(2,1)} 𝒮_{(1 3)} = a_{(1 3)}^{(2,1)} 𝒮_e = 𝒮_e.
        assert_eq!(
            xi_apply(&shape(&[2, 1]), &basis(&perm("321"))),
            SchubertVector::unit()
        );
    }

    #[test]
    fn nenashev_product_formula_small() {
        // ξ^λ ξ^μ = Σ_ν c_{λμ}^ν ξ^ν on S_4 symbols for |λ|+|μ| ≤ 3.
        for total in 2..=3 {
            for a in 1..total {
                for lam in Partition::all_of_size(a) {
                    for mu in Partition::all_of_size(total - a) {
                        let c = lr_coefficients(&lam, &mu);
                        for sigma in Permutation::all_in_window(1, 4) {
                            let v = basis(&sigma);
                            let lhs = xi_apply(&lam, &xi_apply(&mu, &v));
                            let mut rhs = SchubertVector::zero();
                            for (nu, mult) in c.iter() {
                                rhs = rhs
                                    .add(&xi_apply(nu, &v).scale(&Rat::from_integer(mult.clone())));
                            }
                            assert_eq!(lhs, rhs, "xi^{lam} xi^{mu} on {sigma}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn stanley_kills_defect_examples() {
        let r2 = Permutation::simple(2);
        assert!(stanley_kills_defect(&basis(&r2), &basis(&r2)));
        assert!(stanley_kills_defect(&SchubertVector::unit(), &basis(&perm("321"))));
        assert!(stanley_kills_defect(&basis(&perm("231")), &basis(&perm("312"))));
    }
}

//! Exact sparse multivariate polynomials and the Schubert polynomial toolkit.
//!
//! Variables live in named families — `x_i` (the polynomial realization of
//! `H`), `k_i` (Klyachko), `a`, `b` (the affine-linear genus), and `q`,
//! `alpha`, `beta` (the q-Klyachko genus) — with integer indices that may be
//! negative. Coefficients are arbitrary-precision rationals and every
//! operation is exact. Only the `q` variable is allowed negative exponents.
//!
//! On top of the raw arithmetic this module provides Newton's divided
//! difference `∂_i f = (f − s_i f)/(x_i − x_{i+1})`, Schubert polynomials via
//! a divided-difference chain from the staircase monomial, expansion of a
//! polynomial in the Schubert basis through the `∫ ∂_σ f` functional,
//! structure constants for the product of Schubert symbols, Monk's rule as an
//! independent oracle, back-stable truncations, and the disjoint
//! factorization trichotomy.

use std::collections::{btree_map, BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num::{BigInt, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Result, SchubertError};
use crate::nilhecke::SchubertVector;
use crate::perm::Permutation;
use crate::ring::{rat, Rat, Ring};

/// Variable family tag. Display names are lowercase; `x` and `k` carry their
/// index, the rest are scalars.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Family {
    X,
    K,
    A,
    B,
    Q,
    Alpha,
    Beta,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::X => "x",
            Family::K => "k",
            Family::A => "a",
            Family::B => "b",
            Family::Q => "q",
            Family::Alpha => "alpha",
            Family::Beta => "beta",
        }
    }

    fn indexed(self) -> bool {
        matches!(self, Family::X | Family::K)
    }
}

/// A variable: a family tag plus an integer index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Var {
    pub family: Family,
    pub index: i64,
}

impl Var {
    pub fn x(i: i64) -> Var {
        Var { family: Family::X, index: i }
    }

    pub fn k(i: i64) -> Var {
        Var { family: Family::K, index: i }
    }

    pub fn a() -> Var {
        Var { family: Family::A, index: 0 }
    }

    pub fn b() -> Var {
        Var { family: Family::B, index: 0 }
    }

    pub fn q() -> Var {
        Var { family: Family::Q, index: 0 }
    }

    pub fn alpha() -> Var {
        Var { family: Family::Alpha, index: 0 }
    }

    pub fn beta() -> Var {
        Var { family: Family::Beta, index: 0 }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.family.indexed() {
            write!(f, "{}_{}", self.family.name(), self.index)
        } else {
            write!(f, "{}", self.family.name())
        }
    }
}

/// A monomial: sorted `(variable, exponent)` pairs with nonzero exponents.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial(Vec<(Var, i64)>);

impl Monomial {
    pub fn unit() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(v: Var, exp: i64) -> Monomial {
        if exp == 0 {
            Monomial::unit()
        } else {
            Monomial(vec![(v, exp)])
        }
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, v: Var) -> i64 {
        self.0
            .iter()
            .find(|(w, _)| *w == v)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn vars(&self) -> impl Iterator<Item = (Var, i64)> + '_ {
        self.0.iter().copied()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let e = self.0[i].1 + other.0[j].1;
                    if e != 0 {
                        out.push((self.0[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// Replaces each variable through `f`, dropping zero exponents.
    fn map_vars(&self, f: impl Fn(Var) -> Var) -> Monomial {
        let mut pairs: Vec<(Var, i64)> = self.0.iter().map(|&(v, e)| (f(v), e)).collect();
        pairs.sort();
        Monomial(pairs)
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs,
    /// dropping zero exponents.
    pub fn from_pairs(mut pairs: Vec<(Var, i64)>) -> Monomial {
        pairs.retain(|&(_, e)| e != 0);
        pairs.sort();
        Monomial(pairs)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        for (n, (v, e)) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, " ")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A sparse multivariate polynomial over exact rationals.
#[derive(Clone, PartialEq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl MultiPoly {
    pub fn zero() -> MultiPoly {
        MultiPoly::default()
    }

    pub fn one() -> MultiPoly {
        MultiPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> MultiPoly {
        let mut p = MultiPoly::zero();
        p.add_term(Monomial::unit(), c);
        p
    }

    pub fn int(n: i64) -> MultiPoly {
        MultiPoly::constant(rat(n))
    }

    pub fn var(v: Var) -> MultiPoly {
        MultiPoly::monomial(Monomial::var(v, 1), Rat::one())
    }

    pub fn monomial(m: Monomial, c: Rat) -> MultiPoly {
        let mut p = MultiPoly::zero();
        p.add_term(m, c);
        p
    }

    /// `scale·v + shift`, the building block for factors like `a·i + b`.
    pub fn linear(v: Var, scale: i64, shift: i64) -> MultiPoly {
        let mut p = MultiPoly::monomial(Monomial::var(v, 1), rat(scale));
        p.add_term(Monomial::unit(), rat(shift));
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coefficient(&Monomial::unit())
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
    }

    pub fn add_ref(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub_ref(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn mul_ref(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        let mut out = MultiPoly::zero();
        for (m, v) in self.terms() {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut out = MultiPoly::one();
        for _ in 0..e {
            out = out.mul_ref(self);
        }
        out
    }

    pub fn total_degree(&self) -> i64 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    /// Largest exponent of `v` over all terms.
    pub fn max_exponent(&self, v: Var) -> i64 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    /// Per-index upper bounds of the `x` exponents, keyed by index.
    pub fn x_exponent_bounds(&self) -> BTreeMap<i64, i64> {
        let mut out: BTreeMap<i64, i64> = BTreeMap::new();
        for m in self.terms.keys() {
            for (v, e) in m.vars() {
                if v.family == Family::X {
                    let slot = out.entry(v.index).or_insert(0);
                    *slot = (*slot).max(e);
                }
            }
        }
        out
    }

    /// True when only the listed families occur.
    pub fn uses_only(&self, families: &[Family]) -> bool {
        self.terms
            .keys()
            .all(|m| m.vars().all(|(v, _)| families.contains(&v.family)))
    }

    /// Swaps `x_i` and `x_{i+1}` in every term.
    fn swap_x(&self, i: i64) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in self.terms() {
            let swapped = m.map_vars(|v| {
                if v == Var::x(i) {
                    Var::x(i + 1)
                } else if v == Var::x(i + 1) {
                    Var::x(i)
                } else {
                    v
                }
            });
            out.add_term(swapped, c.clone());
        }
        out
    }

    /// Newton's divided difference `(f − s_i f)/(x_i − x_{i+1})`.
    ///
    /// Computed per monomial from the telescoping quotient
    /// `(x^a y^b − x^b y^a)/(x − y) = ± x^min y^min Σ_t x^t y^{|a−b|−1−t}`,
    /// so the division is exact by construction; the formal definition can
    /// never leave a remainder and no run-time division is performed.
    pub fn divided_difference(&self, i: i64) -> MultiPoly {
        let xi = Var::x(i);
        let xj = Var::x(i + 1);
        let mut out = MultiPoly::zero();
        for (m, c) in self.terms() {
            let a = m.exponent(xi);
            let b = m.exponent(xj);
            if a == b {
                continue;
            }
            debug_assert!(a >= 0 && b >= 0, "divided difference needs polynomial x exponents");
            let rest: Vec<(Var, i64)> =
                m.vars().filter(|&(v, _)| v != xi && v != xj).collect();
            let (lo, diff, coeff) = if a > b {
                (b, a - b, c.clone())
            } else {
                (a, b - a, -c.clone())
            };
            for t in 0..diff {
                let mut pairs = rest.clone();
                pairs.push((xi, lo + t));
                pairs.push((xj, lo + diff - 1 - t));
                out.add_term(Monomial::from_pairs(pairs), coeff.clone());
            }
        }
        out
    }

    /// The formal sum `Σ_i d/dx_i`, applied term-wise.
    pub fn x_derivative_sum(&self) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in self.terms() {
            for (v, e) in m.vars() {
                if v.family != Family::X {
                    continue;
                }
                let mut pairs: Vec<(Var, i64)> = m.vars().collect();
                for p in pairs.iter_mut() {
                    if p.0 == v {
                        p.1 -= 1;
                    }
                }
                out.add_term(Monomial::from_pairs(pairs), c * rat(e));
            }
        }
        out
    }

    /// Substitutes whole polynomials for variables. Variables mapped to
    /// `None` stay put. Panics on a negative exponent of a substituted
    /// variable; that never arises here because only `q` carries negative
    /// exponents and `q` is only ever specialized to a nonzero rational.
    pub fn substitute(&self, f: impl Fn(Var) -> Option<MultiPoly>) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in self.terms() {
            let mut acc = MultiPoly::constant(c.clone());
            let mut kept: Vec<(Var, i64)> = Vec::new();
            for (v, e) in m.vars() {
                match f(v) {
                    Some(rep) => {
                        assert!(e >= 0, "cannot substitute into negative exponent of {v}");
                        acc = acc.mul_ref(&rep.pow(e as u32));
                    }
                    None => kept.push((v, e)),
                }
            }
            out = out.add_ref(&acc.mul_ref(&MultiPoly::monomial(
                Monomial::from_pairs(kept),
                Rat::one(),
            )));
        }
        out
    }

    /// Evaluates one variable at a rational (nonzero whenever negative
    /// exponents are present).
    pub fn specialize(&self, v: Var, value: &Rat) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in self.terms() {
            let e = m.exponent(v);
            let rest = Monomial::from_pairs(m.vars().filter(|&(w, _)| w != v).collect());
            out.add_term(rest, c * rat_pow(value, e));
        }
        out
    }

    /// Relabels `x_i ↦ x_{i+shift}`.
    pub fn relabel_x(&self, shift: i64) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in self.terms() {
            let moved = m.map_vars(|v| {
                if v.family == Family::X {
                    Var::x(v.index + shift)
                } else {
                    v
                }
            });
            out.add_term(moved, c.clone());
        }
        out
    }

    /// Keeps the terms whose `x` variables all lie in `[lo, hi]`.
    pub fn filter_x_window(&self, lo: i64, hi: i64) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in self.terms() {
            let inside = m
                .vars()
                .all(|(v, _)| v.family != Family::X || (lo <= v.index && v.index <= hi));
            if inside {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Sets `x_j = 0` for every `j > hi`.
    pub fn truncate_x_above(&self, hi: i64) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in self.terms() {
            let survives = m.vars().all(|(v, _)| v.family != Family::X || v.index <= hi);
            if survives {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Invariance under each adjacent swap of `x_1..x_m`.
    pub fn is_symmetric_in_x(&self, m: i64) -> bool {
        (1..m).all(|i| self.swap_x(i) == *self)
    }

    /// Lexicographic leading term over `x_1..x_m`: the exponent vector with
    /// the highest power of `x_1`, then `x_2`, and so on.
    pub fn leading_x_term_lex(&self, m: i64) -> Option<(Vec<i64>, Rat)> {
        self.terms
            .iter()
            .map(|(mono, c)| {
                let exps: Vec<i64> = (1..=m).map(|i| mono.exponent(Var::x(i))).collect();
                (exps, c.clone())
            })
            .max_by(|a, b| a.0.cmp(&b.0))
    }

    /// Canonical text form, e.g. `1/2 * x_1^2 x_3 + -1 * k_2`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(m, c)| {
                if m.is_unit() {
                    format!("{c}")
                } else {
                    format!("{c} * {m}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Parses the canonical text form produced by [`MultiPoly::to_text`].
    pub fn from_text(text: &str) -> Result<MultiPoly> {
        let text = text.trim();
        if text == "0" {
            return Ok(MultiPoly::zero());
        }
        let mut out = MultiPoly::zero();
        for chunk in text.split(" + ") {
            let (coef_text, mono_text) = match chunk.split_once(" * ") {
                Some((c, m)) => (c.trim(), Some(m.trim())),
                None => (chunk.trim(), None),
            };
            let coef = parse_rat(coef_text)?;
            let mono = match mono_text {
                None => Monomial::unit(),
                Some(m) => parse_monomial(m)?,
            };
            out.add_term(mono, coef);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Vec<PolyTermJson> {
        self.terms
            .iter()
            .map(|(m, c)| PolyTermJson {
                monomial: if m.is_unit() { String::new() } else { m.to_string() },
                numerator: c.numer().to_string(),
                denominator: c.denom().to_string(),
            })
            .collect()
    }

    pub fn from_json(terms: &[PolyTermJson]) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero();
        for t in terms {
            let numer: BigInt = t
                .numerator
                .parse()
                .map_err(|_| SchubertError::Parse(format!("bad numerator {:?}", t.numerator)))?;
            let denom: BigInt = t
                .denominator
                .parse()
                .map_err(|_| SchubertError::Parse(format!("bad denominator {:?}", t.denominator)))?;
            if denom.is_zero() {
                return Err(SchubertError::Parse("zero denominator".into()));
            }
            let mono = if t.monomial.is_empty() {
                Monomial::unit()
            } else {
                parse_monomial(&t.monomial)?
            };
            out.add_term(mono, Rat::new(numer, denom));
        }
        Ok(out)
    }
}

/// JSON form of one polynomial term; the numbers ride as decimal strings
/// since they routinely exceed machine precision.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolyTermJson {
    pub monomial: String,
    pub numerator: String,
    pub denominator: String,
}

fn parse_rat(text: &str) -> Result<Rat> {
    let parse_int = |t: &str| -> Result<BigInt> {
        t.parse()
            .map_err(|_| SchubertError::Parse(format!("bad rational {text:?}")))
    };
    match text.split_once('/') {
        Some((n, d)) => Ok(Rat::new(parse_int(n.trim())?, parse_int(d.trim())?)),
        None => Ok(Rat::from_integer(parse_int(text)?)),
    }
}

fn parse_var(text: &str) -> Result<Var> {
    for family in [
        Family::Alpha,
        Family::Beta,
        Family::X,
        Family::K,
        Family::A,
        Family::B,
        Family::Q,
    ] {
        let name = family.name();
        if family.indexed() {
            if let Some(idx) = text.strip_prefix(name).and_then(|r| r.strip_prefix('_')) {
                let index: i64 = idx
                    .parse()
                    .map_err(|_| SchubertError::Parse(format!("bad variable {text:?}")))?;
                return Ok(Var { family, index });
            }
        } else if text == name {
            return Ok(Var { family, index: 0 });
        }
    }
    Err(SchubertError::Parse(format!("unknown variable {text:?}")))
}

fn parse_monomial(text: &str) -> Result<Monomial> {
    let mut pairs = Vec::new();
    for factor in text.split_whitespace() {
        let (var_text, exp) = match factor.split_once('^') {
            Some((v, e)) => {
                let exp: i64 = e
                    .parse()
                    .map_err(|_| SchubertError::Parse(format!("bad exponent in {factor:?}")))?;
                (v, exp)
            }
            None => (factor, 1),
        };
        pairs.push((parse_var(var_text)?, exp));
    }
    Ok(Monomial::from_pairs(pairs))
}

fn rat_pow(base: &Rat, exp: i64) -> Rat {
    if exp == 0 {
        return Rat::one();
    }
    if base.is_zero() {
        assert!(exp > 0, "negative power of zero");
        return Rat::zero();
    }
    let mut out = Rat::one();
    for _ in 0..exp.unsigned_abs() {
        out *= base;
    }
    if exp < 0 {
        out = out.recip();
    }
    out
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: MultiPoly) -> MultiPoly {
        self.add_ref(&rhs)
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        self.sub_ref(&rhs)
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        self.mul_ref(&rhs)
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        MultiPoly::zero().sub_ref(&self)
    }
}

impl Zero for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }

    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
}

impl One for MultiPoly {
    fn one() -> Self {
        MultiPoly::one()
    }
}

impl Ring for MultiPoly {
    fn from_int(n: i64) -> Self {
        MultiPoly::int(n)
    }
}

// ---------------------------------------------------------------------------
// Schubert polynomials
// ---------------------------------------------------------------------------

/// The Lehmer code of a positively-supported permutation:
/// `c_i = #{j > i : π(j) < π(i)}`, trailing zeros trimmed.
pub fn code_of(p: &Permutation) -> Vec<i64> {
    if p.is_identity() {
        return Vec::new();
    }
    assert!(p.window_lo() >= 1, "code requires support in the positive integers");
    let hi = p.window_hi();
    let line = p.one_line(1, hi);
    let mut code: Vec<i64> = (0..line.len())
        .map(|i| (i + 1..line.len()).filter(|&j| line[j] < line[i]).count() as i64)
        .collect();
    while code.last() == Some(&0) {
        code.pop();
    }
    code
}

/// The unique permutation with the given Lehmer code.
pub fn permutation_from_code(code: &[i64]) -> Permutation {
    let max = code.iter().copied().max().unwrap_or(0);
    let n = code.len() as i64 + max;
    let mut pool: Vec<i64> = (1..=n).collect();
    let mut images = Vec::with_capacity(n as usize);
    for &c in code {
        images.push(pool.remove(c as usize));
    }
    images.extend(pool);
    Permutation::from_window(&images, 1).expect("code construction is bijective")
}

fn schubert_cache() -> &'static Mutex<HashMap<Permutation, Arc<MultiPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<Permutation, Arc<MultiPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub(crate) fn schubert_cache_entries() -> Vec<(Permutation, MultiPoly)> {
    let guard = schubert_cache().lock().unwrap();
    guard.iter().map(|(p, f)| (p.clone(), f.as_ref().clone())).collect()
}

pub(crate) fn seed_schubert_cache(entries: Vec<(Permutation, MultiPoly)>) {
    let mut guard = schubert_cache().lock().unwrap();
    for (p, f) in entries {
        guard.entry(p).or_insert_with(|| Arc::new(f));
    }
}

/// The Schubert polynomial `S_π` for `π` fixing all non-positive integers,
/// computed by a divided-difference chain from the staircase monomial
/// `x_1^{n−1} x_2^{n−2} ⋯` of the longest element above `π`. Independent of
/// the window padding and of the chain chosen (both exercised in tests).
pub fn schubert_polynomial(p: &Permutation) -> Result<Arc<MultiPoly>> {
    if p.is_identity() {
        return Ok(Arc::new(MultiPoly::one()));
    }
    if p.window_lo() < 1 {
        return Err(SchubertError::Validation(format!(
            "Schubert polynomial needs support in the positive integers, got window starting at {}",
            p.window_lo()
        )));
    }
    if let Some(hit) = schubert_cache().lock().unwrap().get(p) {
        return Ok(hit.clone());
    }
    let n = p.window_hi();
    let result = if (1..=n).all(|k| p.apply(k) == n + 1 - k) {
        // The longest element of its own window: the staircase monomial.
        let pairs: Vec<(Var, i64)> = (1..n).map(|k| (Var::x(k), n - k)).collect();
        MultiPoly::monomial(Monomial::from_pairs(pairs), Rat::one())
    } else {
        let i = (1..n)
            .find(|&k| p.apply(k) < p.apply(k + 1))
            .expect("a non-longest element has an ascent");
        let longer = p.multiply(&Permutation::simple(i));
        debug_assert_eq!(longer.length(), p.length() + 1);
        schubert_polynomial(&longer)?.divided_difference(i)
    };
    let arc = Arc::new(result);
    schubert_cache().lock().unwrap().insert(p.clone(), arc.clone());
    Ok(arc)
}

/// Second, independent route to `S_π`: the sum over reduced words of the
/// monomials of their compatible sequences (`i_1 ≤ ⋯ ≤ i_ℓ`, `i_t ≤ w_t`,
/// strictly increasing across ascents of the word). Far cheaper than the
/// chain when `π` is a high shift of a short element, which is exactly the
/// regime of the back-stable computations.
pub fn schubert_polynomial_via_words(p: &Permutation) -> Result<MultiPoly> {
    if p.is_identity() {
        return Ok(MultiPoly::one());
    }
    if p.window_lo() < 1 {
        return Err(SchubertError::Validation(format!(
            "Schubert polynomial needs support in the positive integers, got window starting at {}",
            p.window_lo()
        )));
    }
    let mut out = MultiPoly::zero();
    for word in p.reduced_words().iter() {
        let mut stack: Vec<(usize, i64, Vec<(Var, i64)>)> = vec![(0, 1, Vec::new())];
        while let Some((t, min, pairs)) = stack.pop() {
            if t == word.len() {
                out.add_term(Monomial::from_pairs(pairs), Rat::one());
                continue;
            }
            for i in min..=word[t] {
                let mut next = pairs.clone();
                match next.iter_mut().find(|(v, _)| *v == Var::x(i)) {
                    Some(slot) => slot.1 += 1,
                    None => next.push((Var::x(i), 1)),
                }
                let strict = t + 1 < word.len() && word[t] < word[t + 1];
                stack.push((t + 1, i + i64::from(strict), next));
            }
        }
    }
    Ok(out)
}

/// Expands a polynomial in positively-indexed `x` variables over the
/// Schubert basis via the functional `c_σ = ∫ ∂_σ f` (the constant term of
/// the divided-difference chain). Candidate `σ` are enumerated from the
/// Lehmer codes dominated by the exponent bounds of `f`; the expansion is
/// then re-synthesized and compared against `f`, so an incomplete candidate
/// set or any arithmetic slip surfaces as an inconsistency error.
pub fn expand_schubert_basis(f: &MultiPoly) -> Result<SchubertVector<Rat>> {
    if !f.uses_only(&[Family::X])
        || f
            .terms()
            .any(|(m, _)| m.vars().any(|(v, e)| v.index < 1 || e < 0))
    {
        return Err(SchubertError::Validation(
            "expansion needs a polynomial in x variables with positive indices".into(),
        ));
    }
    if f.is_zero() {
        return Ok(SchubertVector::zero());
    }

    let bounds = f.x_exponent_bounds();
    let max_index = bounds.keys().max().copied().unwrap_or(0);
    let bound_vec: Vec<i64> = (1..=max_index)
        .map(|i| bounds.get(&i).copied().unwrap_or(0))
        .collect();
    let max_degree = f.total_degree();

    // All codes dominated componentwise by the exponent bounds.
    let mut codes: Vec<Vec<i64>> = Vec::new();
    let mut stack: Vec<Vec<i64>> = vec![Vec::new()];
    while let Some(prefix) = stack.pop() {
        if prefix.len() == bound_vec.len() {
            codes.push(prefix);
            continue;
        }
        let used: i64 = prefix.iter().sum();
        for c in 0..=bound_vec[prefix.len()].min(max_degree - used) {
            let mut next = prefix.clone();
            next.push(c);
            stack.push(next);
        }
    }

    // ∂_w f, memoized over the left-descent recursion ∂_w = ∂_i ∘ ∂_{r_i w}.
    fn chain(p: &Permutation, memo: &mut HashMap<Permutation, MultiPoly>) -> MultiPoly {
        if let Some(hit) = memo.get(p) {
            return hit.clone();
        }
        let i = p.left_descents()[0];
        let shorter = Permutation::simple(i).multiply(p);
        let value = chain(&shorter, memo).divided_difference(i);
        memo.insert(p.clone(), value.clone());
        value
    }
    let mut chains: HashMap<Permutation, MultiPoly> = HashMap::new();
    chains.insert(Permutation::identity(), f.clone());

    let mut expansion = SchubertVector::zero();
    for code in codes {
        let sigma = permutation_from_code(&code);
        let c = chain(&sigma, &mut chains).constant_term();
        expansion.add_term(sigma, c);
    }

    let mut residual = f.clone();
    for (sigma, c) in expansion.iter() {
        residual = residual.sub_ref(&schubert_polynomial_via_words(sigma)?.scale(c));
    }
    if !residual.is_zero() {
        return Err(SchubertError::Inconsistency(format!(
            "Schubert expansion left a residual {residual} for input {f}"
        )));
    }
    Ok(expansion)
}

// ---------------------------------------------------------------------------
// Structure constants and products
// ---------------------------------------------------------------------------

type PairKey = (Permutation, Permutation);

fn structure_cache() -> &'static Mutex<HashMap<PairKey, Arc<SchubertVector<Rat>>>> {
    static CACHE: OnceLock<Mutex<HashMap<PairKey, Arc<SchubertVector<Rat>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Shifts every basis permutation of a vector by `n`.
pub fn shift_vector(v: &SchubertVector<Rat>, n: i64) -> SchubertVector<Rat> {
    let mut out = SchubertVector::zero();
    for (p, c) in v.iter() {
        out.add_term(p.shift(n), c.clone());
    }
    out
}

/// Structure constants of the Schubert-symbol product in the bi-infinite
/// setting: `𝒮_π 𝒮_ρ = Σ_σ c_{πρ}^σ 𝒮_σ`, where the support of `σ` may dip
/// below the support of both factors (already `𝒮_{r_1}² = 𝒮_{r_0 r_1} +
/// 𝒮_{r_2 r_1}`).
///
/// Both factors are shifted into positive support by a common `N`, the
/// Schubert polynomials are multiplied and expanded, and the answer is
/// shifted back; the result is independent of `N` once `N` clears the
/// downward reach of the product (a tested invariant). That reach is
/// bounded: a term has `σ ≥ π` through `ℓ(ρ)` Bruhat covers, and one cover
/// `π' ⋖ π' t_{ij}` can extend the window down by at most one step (for
/// `i < lo − 1` the fixed point `i+1` sits strictly between `π'(i)` and
/// `π'(j)`, so the length rises by more than one). Hence
/// `lo(σ) ≥ max(lo_π − ℓ(ρ), lo_ρ − ℓ(π))`, and the shift below clears the
/// wall of positive letters. The coefficients are asserted — not assumed —
/// to be nonnegative integers concentrated in length `ℓ(π)+ℓ(ρ)`.
pub fn structure_constants(pi: &Permutation, rho: &Permutation) -> Arc<SchubertVector<Rat>> {
    if pi.is_identity() {
        return Arc::new(SchubertVector::basis(rho.clone()));
    }
    if rho.is_identity() {
        return Arc::new(SchubertVector::basis(pi.clone()));
    }
    let key = (pi.clone(), rho.clone());
    if let Some(hit) = structure_cache().lock().unwrap().get(&key) {
        return hit.clone();
    }

    let deepest = (pi.window_lo() - rho.length() as i64)
        .max(rho.window_lo() - pi.length() as i64);
    let shift = (1 - deepest).max(0);
    let f = schubert_polynomial_via_words(&pi.shift(shift))
        .expect("shifted factor has positive support")
        .mul_ref(
            &schubert_polynomial_via_words(&rho.shift(shift))
                .expect("shifted factor has positive support"),
        );
    let expansion = expand_schubert_basis(&f).expect("Schubert products expand exactly");
    let result = shift_vector(&expansion, -shift);

    let target = pi.length() + rho.length();
    for (sigma, c) in result.iter() {
        assert!(
            c.denom().is_one() && c.numer().is_positive() && sigma.length() == target,
            "structure constants must be positive integers in length {target}: got {c} at {sigma}"
        );
    }

    let arc = Arc::new(result);
    let mut guard = structure_cache().lock().unwrap();
    guard.insert(key, arc.clone());
    guard.insert((rho.clone(), pi.clone()), arc.clone());
    arc
}

/// Bilinear product of Schubert vectors through the structure constants.
pub fn product(v: &SchubertVector<Rat>, w: &SchubertVector<Rat>) -> SchubertVector<Rat> {
    let mut out = SchubertVector::zero();
    for (p, a) in v.iter() {
        for (q, b) in w.iter() {
            let ab = a * b;
            for (sigma, c) in structure_constants(p, q).iter() {
                out.add_term(sigma.clone(), &ab * c);
            }
        }
    }
    out
}

/// Monk's rule, as an oracle independent of the polynomial route:
/// `𝒮_{r_k}·𝒮_π = Σ 𝒮_{π t_{ij}}` over transpositions with `i ≤ k < j` and
/// `ℓ(π t_{ij}) = ℓ(π) + 1`.
pub fn monk_product(k: i64, p: &Permutation) -> SchubertVector<Rat> {
    let lo = p.window_lo().min(k) - 2;
    let hi = p.window_hi().max(k + 1) + 2;
    let mut out = SchubertVector::zero();
    for i in lo..=k {
        for j in k + 1..=hi {
            let t = transposition(i, j);
            let moved = p.multiply(&t);
            if moved.length() == p.length() + 1 {
                out.add_term(moved, Rat::one());
            }
        }
    }
    out
}

/// The transposition swapping `i` and `j`.
pub fn transposition(i: i64, j: i64) -> Permutation {
    assert!(i < j);
    let mut images: Vec<i64> = (i..=j).collect();
    images[0] = j;
    *images.last_mut().unwrap() = i;
    Permutation::from_window(&images, i).expect("transposition window")
}

// ---------------------------------------------------------------------------
// Back-stable truncation
// ---------------------------------------------------------------------------

/// One truncation step of the back-stable Schubert function.
#[derive(Clone, Debug)]
pub struct BackStableTruncation {
    /// `S_{π[N]}` with variables relabeled `x_i ↦ x_{i−N}`.
    pub poly: MultiPoly,
    /// Whether the coefficients inside the requested variable window agree
    /// between the `N` and `N+1` truncations.
    pub window_stable: bool,
}

/// Computes `S_{π[N]}` relabeled back by `N`, reporting whether the
/// coefficients on monomials inside `var_window` have stabilized between `N`
/// and `N+1`. Errors if `N` is too small for `π[N]` to fix the non-positive
/// integers.
pub fn back_stable_truncation(
    p: &Permutation,
    n: i64,
    var_window: (i64, i64),
) -> Result<BackStableTruncation> {
    let shifted = p.shift(n);
    if !shifted.is_identity() && shifted.window_lo() < 1 {
        return Err(SchubertError::Validation(format!(
            "shift {n} leaves window start at {}; need at least {}",
            shifted.window_lo(),
            1 - p.window_lo()
        )));
    }
    let at = |m: i64| -> Result<MultiPoly> {
        Ok(schubert_polynomial_via_words(&p.shift(m))?.relabel_x(-m))
    };
    let poly = at(n)?;
    let next = at(n + 1)?;
    let window_stable = poly.filter_x_window(var_window.0, var_window.1)
        == next.filter_x_window(var_window.0, var_window.1);
    Ok(BackStableTruncation { poly, window_stable })
}

// ---------------------------------------------------------------------------
// Disjoint factorization
// ---------------------------------------------------------------------------

/// Outcome of probing `π` against a missing letter `m`.
#[derive(Clone, Debug, PartialEq)]
pub enum Factorization {
    /// Every reduced word uses letters on both sides of `m`; the symbol
    /// factors as `𝒮_π = 𝒮_left · 𝒮_right` (verified through the structure
    /// constants before returning).
    Split { left: Permutation, right: Permutation },
    /// `m` occurs in the reduced words (hence in all of them); the symbol
    /// dies in any quotient with `k_m = 0`.
    LetterUsed,
    /// All letters lie on one side of `m`; nothing is gained by the split.
    OneSided,
}

/// The three-way trichotomy for a letter `m` against the support of `π`.
pub fn disjoint_factorization(p: &Permutation, m: i64) -> Factorization {
    let support = p.support();
    if support.contains(&m) {
        return Factorization::LetterUsed;
    }
    let below = support.iter().any(|&s| s < m);
    let above = support.iter().any(|&s| s > m);
    if !(below && above) {
        return Factorization::OneSided;
    }

    // m unused means π preserves the split of the line at m; restrict.
    let lo = p.window_lo();
    let hi = p.window_hi();
    let left_images: Vec<i64> = (lo..=m).map(|k| p.apply(k)).collect();
    let right_images: Vec<i64> = (m + 1..=hi).map(|k| p.apply(k)).collect();
    let left = Permutation::from_window(&left_images, lo).expect("left block is closed");
    let right = Permutation::from_window(&right_images, m + 1).expect("right block is closed");

    debug_assert_eq!(left.multiply(&right), *p);
    let check = structure_constants(&left, &right);
    assert_eq!(
        check.as_ref(),
        &SchubertVector::basis(p.clone()),
        "disjoint split must multiply back to a single symbol"
    );
    Factorization::Split { left, right }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilhecke::{apply_partial, CoefficientFunction};
    use crate::ring::rat;

    fn perm(s: &str) -> Permutation {
        Permutation::parse(s, 1).unwrap()
    }

    fn x(i: i64) -> MultiPoly {
        MultiPoly::var(Var::x(i))
    }

    #[test]
    fn divided_difference_basics() {
        assert_eq!(x(1).divided_difference(1), MultiPoly::one());
        assert!(x(1).mul_ref(&x(2)).divided_difference(1).is_zero());
        assert_eq!(x(1).pow(2).divided_difference(1), x(1).add_ref(&x(2)));
        // ∂_i ∂_i = 0.
        let f = x(1).pow(3).mul_ref(&x(2)).add_ref(&x(3).pow(2));
        assert!(f.divided_difference(1).divided_difference(1).is_zero());
    }

    #[test]
    fn divided_difference_matches_definition() {
        // Cross-check the telescoped form against literal (f − s_i f):
        // multiply the quotient back by (x_i − x_{i+1}) and compare.
        let f = x(1).pow(3).mul_ref(&x(2)).add_ref(&x(2).pow(2).mul_ref(&x(3)));
        for i in 1..=2 {
            let quotient = f.divided_difference(i);
            let back = quotient.mul_ref(&x(i).sub_ref(&x(i + 1)));
            assert_eq!(back, f.sub_ref(&f.swap_x(i)));
        }
    }

    #[test]
    fn codes_round_trip() {
        for p in Permutation::all_in_window(1, 5) {
            assert_eq!(permutation_from_code(&code_of(&p)), p);
        }
        assert_eq!(code_of(&perm("12463578")), vec![0, 0, 1, 2]);
    }

    #[test]
    fn schubert_polynomial_examples() {
        assert!(schubert_polynomial(&Permutation::identity())
            .unwrap()
            .sub_ref(&MultiPoly::one())
            .is_zero());
        // S_{r_1} = x_1, S_{r_2} = x_1 + x_2.
        assert_eq!(
            schubert_polynomial(&Permutation::simple(1)).unwrap().as_ref(),
            &x(1)
        );
        assert_eq!(
            schubert_polynomial(&Permutation::simple(2)).unwrap().as_ref(),
            &x(1).add_ref(&x(2))
        );
        // (1 3) = 321 is the longest element of S_3: the staircase x_1^2 x_2.
        assert_eq!(
            schubert_polynomial(&perm("321")).unwrap().as_ref(),
            &x(1).pow(2).mul_ref(&x(2))
        );
        // Negative support is rejected.
        assert!(schubert_polynomial(&Permutation::simple(0)).is_err());
        assert!(schubert_polynomial(&Permutation::simple(-3)).is_err());
    }

    #[test]
    fn schubert_polynomial_padding_invariant() {
        // Descending from a larger staircase must give the same polynomial.
        let p = perm("1432");
        let w0 = Permutation::from_window(&[5, 4, 3, 2, 1], 1).unwrap();
        let mut f = schubert_polynomial(&w0).unwrap().as_ref().clone();
        let chain = p.inverse().multiply(&w0);
        let word = chain.reduced_words()[0].clone();
        for &i in word.iter().rev() {
            f = f.divided_difference(i);
        }
        assert_eq!(&f, schubert_polynomial(&p).unwrap().as_ref());
    }

    #[test]
    fn word_route_matches_chain_route() {
        for p in Permutation::all_in_window(1, 4) {
            assert_eq!(
                &schubert_polynomial_via_words(&p).unwrap(),
                schubert_polynomial(&p).unwrap().as_ref(),
                "{p}"
            );
        }
    }

    #[test]
    fn expansion_round_trip() {
        for p in Permutation::all_in_window(1, 4) {
            let f = schubert_polynomial(&p).unwrap();
            assert_eq!(
                expand_schubert_basis(&f).unwrap(),
                SchubertVector::basis(p.clone()),
                "{p}"
            );
        }
        assert_eq!(
            expand_schubert_basis(&MultiPoly::one()).unwrap(),
            SchubertVector::unit()
        );
        // x_1^2 = S_{312}, the single dominant term of code (2,0).
        assert_eq!(
            expand_schubert_basis(&x(1).pow(2)).unwrap(),
            SchubertVector::basis(perm("312"))
        );
        assert!(expand_schubert_basis(&MultiPoly::var(Var::k(1))).is_err());
    }

    #[test]
    fn square_of_r2_expands_per_the_display() {
        // S_{r_2}² = S_{r_1 r_2} + S_{r_3 r_2}.
        let r2 = Permutation::simple(2);
        let f = schubert_polynomial(&r2).unwrap().pow(2);
        let mut expected = SchubertVector::zero();
        expected.add_term(Permutation::from_word(&[1, 2]), rat(1));
        expected.add_term(Permutation::from_word(&[3, 2]), rat(1));
        assert_eq!(expand_schubert_basis(&f).unwrap(), expected);
        assert_eq!(structure_constants(&r2, &r2).as_ref(), &expected);
    }

    #[test]
    fn unit_structure_constants() {
        let e = Permutation::identity();
        for p in Permutation::all_in_window(1, 4) {
            assert_eq!(
                structure_constants(&p, &e).as_ref(),
                &SchubertVector::basis(p.clone())
            );
        }
    }

    #[test]
    fn egg_example_structure_constants() {
        // π = ρ = 12463578: seven distinct σ, one carrying coefficient 2.
        let p = perm("12463578");
        let c = structure_constants(&p, &p);
        assert_eq!(c.iter().count(), 7);
        assert_eq!(c.coefficient(&perm("13572468")), rat(2));
        let ones = c.iter().filter(|(_, v)| **v == rat(1)).count();
        assert_eq!(ones, 6);
    }

    #[test]
    fn monk_oracle_agrees() {
        for p in Permutation::all_in_window(1, 4) {
            for k in 1..=3 {
                assert_eq!(
                    structure_constants(&Permutation::simple(k), &p).as_ref(),
                    &monk_product(k, &p),
                    "k={k} π={p}"
                );
            }
        }
        // Monk for the identity.
        assert_eq!(
            monk_product(5, &Permutation::identity()),
            SchubertVector::basis(Permutation::simple(5))
        );
        // k=1 on r_1: the enumeration of qualifying t_{ij} finds t_{13}
        // above and t_{02} below; both raise the length by one.
        let mut expected = SchubertVector::zero();
        expected.add_term(Permutation::from_word(&[2, 1]), rat(1));
        expected.add_term(Permutation::from_word(&[0, 1]), rat(1));
        assert_eq!(monk_product(1, &Permutation::simple(1)), expected);
    }

    #[test]
    fn structure_constants_shift_invariant() {
        let pairs = [
            (perm("1432"), perm("132")),
            (perm("321"), perm("321")),
            (Permutation::simple(2), perm("231")),
        ];
        for (p, q) in pairs {
            let base = structure_constants(&p, &q);
            for n in [1, 2, -3] {
                let shifted = structure_constants(&p.shift(n), &q.shift(n));
                assert_eq!(shifted.as_ref(), &shift_vector(&base, n));
            }
        }
    }

    #[test]
    fn products_with_negative_letters() {
        let p = Permutation::simple(-1);
        let c = structure_constants(&p, &p);
        let mut expected = SchubertVector::zero();
        expected.add_term(Permutation::from_word(&[-2, -1]), rat(1));
        expected.add_term(Permutation::from_word(&[0, -1]), rat(1));
        assert_eq!(c.as_ref(), &expected);
    }

    #[test]
    fn ls_genus_equivariance() {
        // ∂ on symbols matches the divided difference on polynomials.
        for p in Permutation::all_in_window(1, 4) {
            let f = schubert_polynomial(&p).unwrap();
            for i in 1..=3 {
                let lhs = f.divided_difference(i);
                let dropped =
                    apply_partial(&Permutation::simple(i), &SchubertVector::basis(p.clone()));
                let mut rhs = MultiPoly::zero();
                for (sigma, c) in dropped.iter() {
                    rhs = rhs.add_ref(&schubert_polynomial(sigma).unwrap().scale(c));
                }
                assert_eq!(lhs, rhs, "∂_{i} on {p}");
            }
        }
    }

    #[test]
    fn nabla_pullback() {
        // Σ d/dx_i on S_π expands to Σ i·𝔪_i applied to 𝒮_π.
        let nabla = CoefficientFunction::<Rat>::nabla();
        for p in Permutation::all_in_window(1, 4) {
            let f = schubert_polynomial(&p).unwrap().x_derivative_sum();
            let lhs = expand_schubert_basis(&f).unwrap();
            let rhs = nabla.apply(&SchubertVector::basis(p.clone()));
            assert_eq!(lhs, rhs, "{p}");
        }
    }

    #[test]
    fn back_stable_examples() {
        let id = Permutation::identity();
        let t = back_stable_truncation(&id, 3, (-2, 1)).unwrap();
        assert_eq!(t.poly, MultiPoly::one());
        assert!(t.window_stable);

        // r_1 shifted: the truncations are x_{-N+1} + ... + x_1.
        let r1 = Permutation::simple(1);
        let t = back_stable_truncation(&r1, 4, (-2, 1)).unwrap();
        assert!(t.window_stable);
        let expected: MultiPoly =
            (-3..=1).map(x).fold(MultiPoly::zero(), |acc, v| acc.add_ref(&v));
        assert_eq!(t.poly, expected);

        // Homogeneity: degree equals length at every N.
        let p = perm("1432");
        for n in 1..4 {
            let t = back_stable_truncation(&p, n, (-1, 2)).unwrap();
            assert_eq!(t.poly.total_degree() as usize, p.length());
        }

        assert!(back_stable_truncation(&Permutation::simple(-3), 1, (0, 1)).is_err());
    }

    #[test]
    fn factorization_trichotomy() {
        let split = disjoint_factorization(&Permutation::from_word(&[1, 4]), 2);
        assert_eq!(
            split,
            Factorization::Split {
                left: Permutation::simple(1),
                right: Permutation::simple(4),
            }
        );
        assert_eq!(disjoint_factorization(&perm("321"), 5), Factorization::OneSided);
        assert_eq!(disjoint_factorization(&perm("321"), 2), Factorization::LetterUsed);

        // A wider split block.
        let p = Permutation::from_word(&[1, 2, 5, 6, 5]);
        for m in [3, 4] {
            assert_eq!(
                disjoint_factorization(&p, m),
                Factorization::Split {
                    left: Permutation::from_word(&[1, 2]),
                    right: Permutation::from_word(&[5, 6, 5]),
                },
                "m={m}"
            );
        }
    }

    #[test]
    fn serialization_round_trips() {
        let f = x(1)
            .pow(2)
            .mul_ref(&MultiPoly::var(Var::k(-1)))
            .scale(&crate::ring::ratio(-3, 2))
            .add_ref(&MultiPoly::linear(Var::a(), 2, 5))
            .add_ref(&MultiPoly::monomial(Monomial::var(Var::q(), -2), rat(7)));
        let text = f.to_text();
        assert_eq!(MultiPoly::from_text(&text).unwrap(), f);
        let json = f.to_json();
        assert_eq!(MultiPoly::from_json(&json).unwrap(), f);
        assert_eq!(MultiPoly::from_text("0").unwrap(), MultiPoly::zero());
    }

    #[test]
    fn specialization_and_substitution() {
        // k_2 ↦ a·2 + b.
        let f = MultiPoly::var(Var::k(2)).pow(2);
        let sub = f.substitute(|v| {
            (v.family == Family::K).then(|| {
                MultiPoly::linear(Var::a(), v.index, 0).add_ref(&MultiPoly::var(Var::b()))
            })
        });
        let expected = MultiPoly::linear(Var::a(), 2, 0)
            .add_ref(&MultiPoly::var(Var::b()))
            .pow(2);
        assert_eq!(sub, expected);

        // q ↦ 1 collapses negative exponents too.
        let g = MultiPoly::monomial(Monomial::var(Var::q(), -3), rat(4))
            .add_ref(&MultiPoly::monomial(Monomial::var(Var::q(), 2), rat(1)));
        assert_eq!(g.specialize(Var::q(), &rat(1)), MultiPoly::int(5));
    }
}

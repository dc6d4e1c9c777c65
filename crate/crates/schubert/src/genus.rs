//! Genera: ring homomorphisms out of the ring of Schubert symbols.
//!
//! * The Klyachko genus sends `𝒮_π` to
//!   `(1/ℓ(π)!) Σ_{Q ∈ RW(π)} Π_{q∈Q} k_q`, landing in the quotient of
//!   `ℚ[k]` by the relations `k_i(−k_{i−1} + 2k_i − k_{i+1}) = 0`.
//! * Substituting a parametrized solution family of those equations kills
//!   the ideal, giving honest polynomial-valued genera: the affine-linear
//!   genus `γ` (`k_m = a·m + b`) and the two-slope components
//!   (`k_m = x(m−i)` below `i`, `0` on `[i,j]`, `y(m−j)` above `j`).
//! * The q-Klyachko genus replaces each factor by `α q^i + β` and weights a
//!   word by `q^comaj`, with denominator the q-torial `[ℓ]_q!`.
//! * `γ` is recovered a second way as the `𝒮_e`-coefficient of
//!   `e^{a∇ + bξ}·𝒮_π`; the exponential terminates because each application
//!   lowers length by one.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Result, SchubertError};
use crate::nilhecke::SchubertVector;
use crate::perm::{comaj, Permutation};
use crate::poly::{Family, Monomial, MultiPoly, Var};
use crate::ring::{factorial, Rat, Ring};

use num::One;

/// `1/n!` as a rational.
fn inverse_factorial(n: usize) -> Rat {
    Rat::new(1.into(), factorial(n))
}

fn genus_cache(
    which: usize,
) -> &'static Mutex<HashMap<Permutation, Arc<MultiPoly>>> {
    static CACHES: OnceLock<[Mutex<HashMap<Permutation, Arc<MultiPoly>>>; 3]> = OnceLock::new();
    &CACHES.get_or_init(|| [const { Mutex::new(HashMap::new()) }; 3])[which]
}

fn memoized(
    which: usize,
    p: &Permutation,
    compute: impl FnOnce() -> MultiPoly,
) -> Arc<MultiPoly> {
    if let Some(hit) = genus_cache(which).lock().unwrap().get(p) {
        return hit.clone();
    }
    let value = Arc::new(compute());
    genus_cache(which).lock().unwrap().insert(p.clone(), value.clone());
    value
}

/// The Klyachko genus of `𝒮_π` as a polynomial in the `k_i`.
pub fn klyachko_genus(p: &Permutation) -> MultiPoly {
    memoized(0, p, || {
        let mut sum = MultiPoly::zero();
        for word in p.reduced_words().iter() {
            let mut multiplicity = std::collections::BTreeMap::new();
            for &letter in word {
                *multiplicity.entry(letter).or_insert(0i64) += 1;
            }
            let pairs: Vec<(Var, i64)> =
                multiplicity.into_iter().map(|(i, e)| (Var::k(i), e)).collect();
            sum.add_term(Monomial::from_pairs(pairs), Rat::one());
        }
        sum.scale(&inverse_factorial(p.length()))
    })
    .as_ref()
    .clone()
}

/// The affine-linear genus `γ(𝒮_π) = (1/ℓ!) Σ_{P∈RW(π)} Π_{i∈P} (a·i + b)`.
pub fn affine_linear_genus(p: &Permutation) -> MultiPoly {
    memoized(1, p, || {
        let mut sum = MultiPoly::zero();
        for word in p.reduced_words().iter() {
            let mut prod = MultiPoly::one();
            for &i in word {
                prod = prod.mul_ref(&affine_factor(i));
            }
            sum = sum.add_ref(&prod);
        }
        sum.scale(&inverse_factorial(p.length()))
    })
    .as_ref()
    .clone()
}

/// `a·i + b`.
pub fn affine_factor(i: i64) -> MultiPoly {
    let mut f = MultiPoly::linear(Var::a(), i, 0);
    f.add_term(Monomial::var(Var::b(), 1), Rat::one());
    f
}

/// A value of the q-Klyachko genus: an integer-coefficient numerator in
/// `q, α, β` (with `q` exponents possibly negative) over the structural
/// denominator `[ℓ]_q!`.
#[derive(Clone, PartialEq)]
pub struct QGenusValue {
    pub numerator: MultiPoly,
    pub denom_length: usize,
}

impl QGenusValue {
    /// The denominator `[ℓ]_q!` as a polynomial.
    pub fn denominator(&self) -> MultiPoly {
        q_factorial(self.denom_length)
    }

    /// Specializes the numerator at `q = 1` and divides by `ℓ!`, landing in
    /// `ℚ[α, β]`. Every factor `αq^i + β` collapses to `α + β`, so this is
    /// the affine-linear genus at slope zero: `γ` with `a ↦ 0, b ↦ α + β`.
    pub fn at_q_one(&self) -> MultiPoly {
        self.numerator
            .specialize(Var::q(), &Rat::one())
            .scale(&inverse_factorial(self.denom_length))
    }
}

impl fmt::Display for QGenusValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / [{}]_q!", self.numerator, self.denom_length)
    }
}

impl fmt::Debug for QGenusValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The q-Klyachko genus:
/// numerator `Σ_{Q∈RW(π)} q^{comaj(Q)} Π_{i∈Q} (α q^i + β)` over `[ℓ]_q!`.
/// Negative letters contribute negative powers of `q`.
pub fn q_klyachko_genus(p: &Permutation) -> QGenusValue {
    let numerator = memoized(2, p, || {
        let mut numerator = MultiPoly::zero();
        for word in p.reduced_words().iter() {
            let mut prod = MultiPoly::monomial(Monomial::var(Var::q(), comaj(word)), Rat::one());
            for &i in word {
                prod = prod.mul_ref(&q_factor(i));
            }
            numerator = numerator.add_ref(&prod);
        }
        numerator
    })
    .as_ref()
    .clone();
    QGenusValue { numerator, denom_length: p.length() }
}

/// `α q^i + β`.
pub fn q_factor(i: i64) -> MultiPoly {
    let mut f = MultiPoly::monomial(
        Monomial::from_pairs(vec![(Var::alpha(), 1), (Var::q(), i)]),
        Rat::one(),
    );
    f.add_term(Monomial::var(Var::beta(), 1), Rat::one());
    f
}

/// `[m]_q = 1 + q + ⋯ + q^{m−1}`.
pub fn q_integer(m: usize) -> MultiPoly {
    let mut out = MultiPoly::zero();
    for e in 0..m {
        out.add_term(Monomial::var(Var::q(), e as i64), Rat::one());
    }
    out
}

/// The q-torial `[m]_q! = Π_{j=1}^m [j]_q`.
pub fn q_factorial(m: usize) -> MultiPoly {
    let mut out = MultiPoly::one();
    for j in 1..=m {
        out = out.mul_ref(&q_integer(j));
    }
    out
}

/// The Gaussian binomial `[n choose k]_q`, by the Pascal recurrence
/// `[n k] = [n−1 k−1] + q^k [n−1 k]` (division-free).
pub fn q_binomial(n: usize, k: usize) -> MultiPoly {
    if k > n {
        return MultiPoly::zero();
    }
    if k == 0 || k == n {
        return MultiPoly::one();
    }
    let left = q_binomial(n - 1, k - 1);
    let right = q_binomial(n - 1, k)
        .mul_ref(&MultiPoly::monomial(Monomial::var(Var::q(), k as i64), Rat::one()));
    left.add_ref(&right)
}

// ---------------------------------------------------------------------------
// Solution components of the Klyachko equations
// ---------------------------------------------------------------------------

/// A parametrized solution family of `k_i(−k_{i−1} + 2k_i − k_{i+1}) = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentSpec {
    /// `k_m = a·m + b`.
    AffineLinear,
    /// `k_m = x·(m−i)` for `m ≤ i`, `0` on `[i, j]`, `y·(m−j)` for `m ≥ j`.
    /// The slope parameters `x, y` are exposed as the `a` and `b` variables.
    TwoSlope { i: i64, j: i64 },
}

impl ComponentSpec {
    pub fn two_slope(i: i64, j: i64) -> Result<ComponentSpec> {
        if i > j {
            return Err(SchubertError::Validation(format!(
                "two-slope component needs i <= j, got i={i}, j={j}"
            )));
        }
        Ok(ComponentSpec::TwoSlope { i, j })
    }

    /// The substituted value of `k_m`.
    pub fn k_value(&self, m: i64) -> MultiPoly {
        match *self {
            ComponentSpec::AffineLinear => affine_factor(m),
            ComponentSpec::TwoSlope { i, j } => {
                if m <= i {
                    MultiPoly::linear(Var::a(), m - i, 0)
                } else if m >= j {
                    MultiPoly::linear(Var::b(), m - j, 0)
                } else {
                    MultiPoly::zero()
                }
            }
        }
    }

    /// `k_m(−k_{m−1} + 2k_m − k_{m+1})` under the substitution; identically
    /// zero for every solution component.
    pub fn klyachko_equation(&self, m: i64) -> MultiPoly {
        let k = |m| self.k_value(m);
        let second_difference =
            k(m).scale(&Ring::from_int(2)).sub_ref(&k(m - 1)).sub_ref(&k(m + 1));
        k(m).mul_ref(&second_difference)
    }
}

/// Evaluates the Klyachko genus of `𝒮_π` on a solution component by
/// substituting the component's `k_m` values.
pub fn component_evaluate(spec: &ComponentSpec, p: &Permutation) -> MultiPoly {
    klyachko_genus(p).substitute(|v| (v.family == Family::K).then(|| spec.k_value(v.index)))
}

// ---------------------------------------------------------------------------
// The exponential triangle
// ---------------------------------------------------------------------------

/// One application of `a∇ + bξ` with polynomial coefficients: each basis
/// symbol moves down through its left descents, picking up `a·i + b`.
fn apply_nabla_xi(v: &SchubertVector<MultiPoly>) -> SchubertVector<MultiPoly> {
    let mut out = SchubertVector::zero();
    for (sigma, c) in v.iter() {
        for i in sigma.left_descents() {
            let target = Permutation::simple(i).multiply(sigma);
            out.add_term(target, c.mul_ref(&affine_factor(i)));
        }
    }
    out
}

/// The terms `(a∇ + bξ)^n 𝒮_π / n!` of the exponential series, up to the
/// first vanishing power. Exactly `ℓ(π) + 1` terms are nonzero: the
/// operator lowers length by one each time.
pub fn exp_series(p: &Permutation) -> Vec<SchubertVector<MultiPoly>> {
    let mut terms = Vec::new();
    let mut power: SchubertVector<MultiPoly> = SchubertVector::basis(p.clone());
    let mut n = 0usize;
    while !power.is_zero() {
        let inv = inverse_factorial(n);
        terms.push(power.map_coefficients(|c| c.scale(&inv)));
        power = apply_nabla_xi(&power);
        n += 1;
    }
    terms
}

/// The `𝒮_e`-coefficient of `e^{a∇ + bξ}·𝒮_π`, a polynomial in `a, b`.
/// Equals the affine-linear genus of `π` — the commuting triangle — which
/// the test sweeps verify rather than assume.
pub fn exp_triangle(p: &Permutation) -> MultiPoly {
    exp_series(p)
        .iter()
        .fold(MultiPoly::zero(), |acc, term| acc.add_ref(&term.integral()))
}

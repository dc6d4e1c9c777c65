//! Exact computations in the ring of Schubert symbols.
//!
//! The ring `H` has basis `{𝒮_π}` indexed by finite permutations of ℤ. This
//! crate implements, entirely in exact arithmetic:
//!
//! * the Coxeter combinatorics of finite-support permutations — reduced
//!   words, descents, shifts, and the comaj statistic ([`perm`]);
//! * the nil Hecke algebra acting on `H` from both sides: the divided
//!   difference operators `∂` and their full commutant, the martial
//!   operators `𝔪`, including reconstruction of a black-box commuting
//!   operator ([`nilhecke`]);
//! * Schubert polynomials, Newton divided differences, Schubert-basis
//!   expansion and structure constants, Monk's rule, and back-stable
//!   truncations ([`poly`]);
//! * the coproduct dual to nil Hecke multiplication, its failure to be a
//!   ring map, Stanley symmetric function coefficients, and the
//!   Fomin–Greene–Nenashev operators `ξ^λ` ([`coalgebra`]);
//! * genera (ring homomorphisms out of `H`): Klyachko's, the affine-linear
//!   genus `γ`, its q-analogue, and the exponential `e^{a∇+bξ}` route to `γ`
//!   ([`genus`]);
//! * barred words, shuffles, and the q-statistic counting identities with
//!   explicit rectification witnesses ([`qstats`]);
//! * a verification harness that sweeps every identity at desk scale
//!   ([`verify`]) behind a thin CLI ([`cli`]).
//!
//! Every runnable capability has a corresponding program under `examples/`.

pub mod cache;
pub mod cli;
pub mod coalgebra;
pub mod error;
pub mod genus;
pub mod matching;
pub mod nilhecke;
pub mod perm;
pub mod poly;
pub mod qstats;
pub mod ring;
pub mod verify;

pub use error::{Result, SchubertError};
pub use nilhecke::{
    apply_martial, apply_partial, CoefficientFunction, NilHeckeElement, SchubertVector,
};
pub use perm::{comaj, Permutation, Word};
pub use poly::MultiPoly;
pub use ring::{Rat, Ring};

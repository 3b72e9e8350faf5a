//! Exact branching laws for the unitary principal series `π_{iλ,k}` of
//! `GL(n,ℂ)` induced from a maximal parabolic, restricted to `U(n)` and to
//! the symmetric subgroups `GL(p,ℂ)×GL(q,ℂ)`, `U(p,q)`, `Sp(m,ℂ)`, `GL(m,ℍ)`,
//! `O(n,ℂ)` and `GL(n,ℝ)`.
//!
//! Compact-group computations run on an exact Weyl-character engine over
//! integer Laurent polynomials; spectra are symbolic and serialise to JSON.

pub mod character;
pub mod cli;
pub mod error;
pub mod harmonics;
pub mod laurent;
pub mod spectrum;
pub mod theorems;
pub mod verify;
pub mod weights;

pub use character::{decompose, irreducible_character, IrrepDecomposition, TorusEmbedding};
pub use error::{Error, Result};
pub use harmonics::{harmonic_dim, HarmonicLabel};
pub use laurent::LaurentChar;
pub use spectrum::{ParamSet, Series, Spectrum, SpectrumComponent};
pub use theorems::{branch, branch_with, ktype_support, BranchRequest, Subgroup};
pub use verify::{run_suite, Report, Suite};
pub use weights::{weyl_dim, Classical, GroupLabel, Weight};

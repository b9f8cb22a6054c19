//! Pendant paths and the Laplacian / signless Laplacian eigenvalues they force.
//!
//! A pendant path of length `k` hanging off an anchor vertex of degree at
//! least three forces `4cos²(πi/(2k+1))`, `i = 1..=k`, into the spectra of
//! both `L = Δ − A` and `Q = Δ + A`, with multiplicity at least
//! `p_k − q_k` (paths minus distinct anchors). This crate detects pendant
//! paths, builds every matrix involved, and checks those multiplicities both
//! numerically and with exact integer arithmetic.
//!
//! The crate is `no_std` and only needs `alloc`. Text formats, reports and the
//! command-line front end live in the `pendant-spectra` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;

pub mod exact;
pub mod generate;
pub mod graph;
pub mod matrices;
pub mod pendant;
pub mod spectra;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{
    aggregate_multiplicity_check, chebyshev_monic, evaluate_poly_at_matrix, exact_nullity,
    pendant_polynomial, AggregateCheck, BigMatrix, IntPolynomial,
};
pub use generate::{generate, GeneratorRecipe};
pub use graph::Graph;
pub use matrices::{IntMatrix, Orientation};
pub use pendant::{find_pendant_paths, pendant_bound, PendantPath, PendantProfile};
pub use spectra::{
    check_interlacing, eigenvalues_symmetric, multiplicity_of, path_adjacency_spectrum,
    target_value, Spectrum, SymMatrix, TargetValue, Tolerance,
};
pub use verify::{
    verify_conjecture, verify_lemma1, verify_lemma2, verify_theorem, LemmaReport,
    TheoremReport, TightnessSummary, VerifyConfig,
};

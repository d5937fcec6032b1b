//! Spectral solver for quadratic, number-conserving bosonic Lindblad master
//! equations.
//!
//! For a Hamiltonian H = Σ h_ij α†_i α_j and gain/loss dissipators with rate
//! matrices 2Λ⁺ and 2Λ⁻, the full many-body Liouvillian is equivalent to the
//! L×L non-Hermitian drift matrix
//!
//! P = (−i h + Λ⁺ − (Λ⁻)ᵗ) / 2,
//!
//! whose eigenvalues λ (the rapidities) build every decay rate of the model
//! and whose eigenbasis turns the steady-state Lyapunov equation
//! P Ω + Ω P† = Λ⁺ into division by λ_m + λ_n*. Everything in this crate is
//! a consequence of that reduction:
//!
//! - [`model`] — model assembly (Hermiticity/PSD validation, boundary-driven
//!   chains, flux ladders, JSON (de)serialization) and the P and
//!   M = [[K, Λ⁺], [(Λ⁻)ᵗ, K†]] matrices.
//! - [`spectral`] — rapidities, dark modes and the relaxation gap, the
//!   {λ} ∪ {−λ*} pairing of spec(Z_L M), the trace identity, and the
//!   structured similarity transform W₁ with its closed-form inverse.
//! - [`lyapunov`] — steady-state two-point functions ⟨α†_i α_j⟩ via the
//!   spectral solve, plus two independent oracles (dense Kronecker solve,
//!   truncated-Fock Liouvillian) and observables: occupations, bond
//!   currents, chiral ladder currents.
//! - [`analytic_chain`] — closed-form rapidities, eigenvectors and gap of
//!   the boundary-driven chain in its solvable regime Γ₁Γ_L = J², and the
//!   matcher that pins the numerics against them.
//! - [`transform`] — the quadratic generator W = −Z_L log W₁ of the
//!   steady-state similarity transformation, with branch and roundtrip
//!   diagnostics.
//! - [`experiments`] — batch runners over these primitives (spectrum match,
//!   gap-vs-size power laws, flux–ratio phase diagrams, steady-state and
//!   transform reports) writing deterministic CSV/JSON/SVG artifacts.
//!
//! The `examples/` directory is the front door: each example is a runnable
//! study built on one of the runners. A thin `lindblad` binary exposes the
//! same runners as subcommands for scripting.

pub mod analytic_chain;
pub mod error;
pub mod experiments;
pub mod io;
mod linalg;
pub mod lyapunov;
pub mod model;
pub mod spectral;
pub mod transform;

pub use error::{Error, Result};

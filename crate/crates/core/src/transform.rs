//! Similarity transform onto the steady state: Ŝ = e^{T̂}.
//!
//! The structured eigenvector matrix W₁ of Z_L M conjugates the Liouvillian
//! into normal-mode form. Writing W₁ = exp(−Z_L W) defines the coefficient
//! matrix W of the quadratic generator
//!
//!   T̂ = Σ_{ij} [U_ij α†_i α_j + V_ij α†_i α†_j + I_ij α_i α_j + J_ij α_i α_j†]
//!
//! with W = [[U, V], [I, J]] — the operator Ŝ is never materialized, the
//! L×L coefficient blocks carry all of it. W is obtained from the principal
//! matrix logarithm, W = −Z_L log W₁, and certified by the round trip
//! exp(−Z_L W) = W₁.
//!
//! The defining property of W₁ is the conjugation identity
//!
//!   W₁⁻¹ (Z_L M) W₁ = diag(Λ_P, −Λ_P*),
//!
//! which `verify_transform_action` checks at matrix level: it ties together
//! the eigendecomposition of P, the Lyapunov kernel Q inside W₁, and the
//! ±pairing of the rapidity spectrum.

use ndarray::{s, Array2};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{expm, fro, logm};
use crate::model::{bath_superoperator_matrix, QuadraticLindbladModel};
use crate::spectral::{z_matrix, EigenSystem, StructuredW1};

/// Relative tolerance for the exp/log round trip and the conjugation check.
pub const TRANSFORM_TOL: f64 = 1e-8;

/// Coefficient matrix W of the quadratic generator T̂, with its L×L blocks.
#[derive(Debug, Clone)]
pub struct GeneratorCoefficients {
    /// W = −Z_L log W₁, the full 2L×2L coefficient matrix.
    pub w: Array2<C64>,
    /// Upper-left block U (α†α coefficients).
    pub u: Array2<C64>,
    /// Upper-right block V (α†α† coefficients).
    pub v: Array2<C64>,
    /// Lower-left block I (αα coefficients).
    pub i_block: Array2<C64>,
    /// Lower-right block J (αα† coefficients).
    pub j_block: Array2<C64>,
    /// True when an eigenvalue of W₁ sits on (or hugs) the negative real
    /// axis, where the principal logarithm is discontinuous.
    pub branch_warning: bool,
    /// ‖exp(−Z_L W) − W₁‖_F, the certified round-trip error.
    pub roundtrip_residual: f64,
}

impl GeneratorCoefficients {
    /// Number of modes L (W is 2L×2L).
    pub fn l(&self) -> usize {
        self.u.nrows()
    }
}

/// Compute W = −Z_L log W₁ on the principal branch and certify the round
/// trip exp(−Z_L W) = W₁ to within `TRANSFORM_TOL`·‖W₁‖.
pub fn generator_matrix(w1: &StructuredW1) -> Result<GeneratorCoefficients> {
    let l = w1.l();
    let z = z_matrix(l);
    let lg = logm(&w1.w1)?;
    // An eigenvalue of W₁ on the cut makes the principal branch a choice,
    // not a limit; surface it but keep the upper-half-plane convention.
    let branch_warning = lg.branch_cut_distance < 1e-9 * fro(&w1.w1).max(1.0);
    let w = z.dot(&lg.log).mapv(|x| -x);
    // exp(−Z W) = exp(Z Z log W₁) must reproduce W₁ through both algorithms.
    let minus_zw = z.dot(&w).mapv(|x| -x);
    let roundtrip = expm(&minus_zw)?;
    let scale = fro(&w1.w1);
    let roundtrip_residual = fro(&(&roundtrip - &w1.w1));
    if roundtrip_residual > TRANSFORM_TOL * scale {
        return Err(Error::ResidualTooLarge {
            what: "similarity-transform round trip exp(−Z_L W) = W₁",
            residual: roundtrip_residual,
            tol: TRANSFORM_TOL * scale,
        });
    }
    Ok(GeneratorCoefficients {
        u: w.slice(s![..l, ..l]).to_owned(),
        v: w.slice(s![..l, l..]).to_owned(),
        i_block: w.slice(s![l.., ..l]).to_owned(),
        j_block: w.slice(s![l.., l..]).to_owned(),
        w,
        branch_warning,
        roundtrip_residual,
    })
}

/// Verify the conjugation identity W₁⁻¹ (Z_L M) W₁ = diag(Λ_P, −Λ_P*).
///
/// `es` must be the eigensystem the W₁ was assembled from (same model, same
/// mode order). Returns the Frobenius residual; above `TRANSFORM_TOL`·‖M‖ it
/// is an inconsistency error signalling a W₁ assembly bug.
pub fn verify_transform_action(
    w1: &StructuredW1,
    model: &QuadraticLindbladModel,
    es: &EigenSystem,
) -> Result<f64> {
    let l = w1.l();
    if es.l() != l || model.l != l {
        return Err(Error::Dimension(format!(
            "mismatched sizes: W₁ has L = {l}, eigensystem L = {}, model L = {}",
            es.l(),
            model.l
        )));
    }
    let m = bath_superoperator_matrix(model);
    let z = z_matrix(l);
    let conjugated = w1.w1_inv.dot(&z.dot(&m)).dot(&w1.w1);
    // diag(Λ_P, −Λ_P*) in the eigensystem's mode order.
    let mut expected = Array2::<C64>::zeros((2 * l, 2 * l));
    for (k, &lambda) in es.eigenvalues.iter().enumerate() {
        expected[[k, k]] = lambda;
        expected[[l + k, l + k]] = -lambda.conj();
    }
    let residual = fro(&(&conjugated - &expected));
    let tol = TRANSFORM_TOL * fro(&m);
    if residual > tol {
        return Err(Error::ResidualTooLarge {
            what: "conjugation W₁⁻¹ (Z_L M) W₁ = diag(Λ_P, −Λ_P*)",
            residual,
            tol,
        });
    }
    Ok(residual)
}

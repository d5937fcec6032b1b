//! Spectral reduction of the Liouvillian to the L×L drift matrix.
//!
//! For a quadratic number-conserving model the full many-body spectrum is
//! generated by the 2L rapidities, which come in pairs {λ_P} ∪ {−λ_P*}
//! where λ_P are the eigenvalues of the drift matrix
//!
//!   P = (−ih + Λ⁺ − (Λ⁻)ᵗ)/2.
//!
//! The pairing is inherited from the pseudo-Hermiticity X_L M X_L = M† of
//! the bath superoperator matrix M: the 2L×2L matrix Z_L M has exactly the
//! rapidity spectrum, with right eigenvectors [w; w] and left eigenvectors
//! [w†, −w†] built from the eigenvectors w of P. This module performs the
//! eigendecomposition, classifies dark modes, extracts the relaxation gap,
//! and assembles the structured similarity transform W₁.

use ndarray::{s, Array2};
use ndarray_linalg::Eig;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{cond_2, dagger, eig_sorted, fro, greedy_match, hermiticity_residual, inv};
use crate::model::QuadraticLindbladModel;

/// Default relative tolerance on the eigendecomposition residual.
pub const DEFAULT_TOL_EIG: f64 = 1e-9;
/// Default relative tolerance below which |Re λ| counts as a dark mode.
pub const DEFAULT_DARK_TOL: f64 = 1e-10;
/// Eigenvector matrices with condition number above this are refused.
pub const COND_LIMIT: f64 = 1e12;

/// Z_L = diag(I_L, −I_L).
pub fn z_matrix(l: usize) -> Array2<C64> {
    let mut z = Array2::<C64>::zeros((2 * l, 2 * l));
    for i in 0..l {
        z[[i, i]] = C64::new(1.0, 0.0);
        z[[l + i, l + i]] = C64::new(-1.0, 0.0);
    }
    z
}

/// X_L = antidiag(I_L, I_L), i.e. [[0, I], [I, 0]].
pub fn x_matrix(l: usize) -> Array2<C64> {
    let mut x = Array2::<C64>::zeros((2 * l, 2 * l));
    for i in 0..l {
        x[[i, l + i]] = C64::new(1.0, 0.0);
        x[[l + i, i]] = C64::new(1.0, 0.0);
    }
    x
}

/// Y_L = −i [[0, I], [−I, 0]] = −i Z_L X_L.
pub fn y_matrix(l: usize) -> Array2<C64> {
    let mut y = Array2::<C64>::zeros((2 * l, 2 * l));
    for i in 0..l {
        y[[i, l + i]] = C64::new(0.0, -1.0);
        y[[l + i, i]] = C64::new(0.0, 1.0);
    }
    y
}

/// Eigendecomposition of a drift matrix P = W_P diag(λ) W_P⁻¹.
///
/// Eigenpairs are sorted by descending Re λ (slowest modes first), ties by
/// ascending Im λ. Rows of `w_p_left` are left eigenvectors normalized so
/// that `w_p_left · w_p = I`.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    /// The decomposed drift matrix.
    pub p: Array2<C64>,
    /// Sorted eigenvalues λ_P.
    pub eigenvalues: Vec<C64>,
    /// Right eigenvectors as columns, unit norm.
    pub w_p: Array2<C64>,
    /// W_P⁻¹; its rows are the biorthogonal left eigenvectors.
    pub w_p_left: Array2<C64>,
    /// Frobenius norm of P, the scale for relative tolerances downstream.
    pub p_norm: f64,
}

impl EigenSystem {
    /// Number of modes L.
    pub fn l(&self) -> usize {
        self.eigenvalues.len()
    }
}

/// Diagonalize the drift matrix, refusing near-defective eigenbases.
pub fn eigendecompose_p(p: &Array2<C64>, tol_eig: f64) -> Result<EigenSystem> {
    if p.nrows() != p.ncols() {
        return Err(Error::Dimension(format!(
            "drift matrix must be square, got {}x{}",
            p.nrows(),
            p.ncols()
        )));
    }
    let (vals, w_p) = eig_sorted(p)?;
    let cond = cond_2(&w_p)?;
    if !cond.is_finite() || cond > COND_LIMIT {
        return Err(Error::DegenerateEigenbasis {
            cond,
            limit: COND_LIMIT,
        });
    }
    let w_p_left = inv(&w_p, "eigenvector matrix W_P")?;
    let p_norm = fro(p);
    // Residual ‖P W − W Λ‖ must vanish relative to ‖P‖.
    let mut wl = w_p.clone();
    for (k, mut col) in wl.columns_mut().into_iter().enumerate() {
        let lam = vals[k];
        col.mapv_inplace(|z| z * lam);
    }
    let residual = fro(&(p.dot(&w_p) - &wl));
    if residual > tol_eig * p_norm {
        return Err(Error::ResidualTooLarge {
            what: "eigendecomposition of P",
            residual,
            tol: tol_eig * p_norm,
        });
    }
    Ok(EigenSystem {
        p: p.clone(),
        eigenvalues: vals.to_vec(),
        w_p,
        w_p_left,
        p_norm,
    })
}

/// Rapidity classification: dark modes (Re λ ≈ 0) and the relaxation gap.
#[derive(Debug, Clone)]
pub struct Rapidities {
    /// Drift eigenvalues, same order as the EigenSystem.
    pub eigenvalues: Vec<C64>,
    /// Indices of dark modes: |Re λ| ≤ dark_tol · ‖P‖.
    pub dark: Vec<usize>,
    /// Relaxation gap Δ = min |Re λ| over non-dark modes; `None` when every
    /// mode is dark (no relaxation at this order).
    pub gap: Option<f64>,
}

/// Classify dark modes and extract the relaxation gap.
pub fn rapidities(es: &EigenSystem, dark_tol: f64) -> Rapidities {
    let threshold = dark_tol * es.p_norm;
    let mut dark = Vec::new();
    let mut gap: Option<f64> = None;
    for (k, lam) in es.eigenvalues.iter().enumerate() {
        if lam.re.abs() <= threshold {
            dark.push(k);
        } else {
            let g = lam.re.abs();
            gap = Some(match gap {
                Some(cur) => cur.min(g),
                None => g,
            });
        }
    }
    Rapidities {
        eigenvalues: es.eigenvalues.clone(),
        dark,
        gap,
    }
}

/// Outcome of the four structural pairing checks on Z_L M.
#[derive(Debug, Clone)]
pub struct PairingReport {
    /// Max distance in the greedy matching of spec(Z_L M) to {λ} ∪ {−λ*}.
    pub spectrum_mismatch: f64,
    /// ‖(Z_L M)[W; W] − [W; W] diag(λ)‖.
    pub right_residual: f64,
    /// ‖[W†, −W†](Z_L M) − diag(−λ*)[W†, −W†]‖.
    pub left_residual: f64,
    /// Max |x_i† Y_L x_j| over eigenvector pairs with ω_i + ω_j* ≠ 0.
    pub max_biorthogonality: f64,
    /// Human-readable description of each failed check.
    pub failures: Vec<String>,
}

impl PairingReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Verify the rapidity pairing structure of the bath superoperator matrix.
///
/// Checks, with all residuals measured against `tol · ‖M‖_F`:
/// 1. spec(Z_L M) equals {λ_P} ∪ {−λ_P*} as a multiset;
/// 2. the stacked columns [w; w] are right eigenvectors of Z_L M;
/// 3. the rows [w†, −w†] are left eigenvectors with eigenvalue −λ*;
/// 4. eigenvectors of Z_L M are Y_L-orthogonal unless their eigenvalues
///    form a conjugate-opposite pair (ω_i + ω_j* = 0).
pub fn verify_pairing(m: &Array2<C64>, es: &EigenSystem, tol: f64) -> Result<PairingReport> {
    let l = es.l();
    if m.nrows() != 2 * l || m.ncols() != 2 * l {
        return Err(Error::Dimension(format!(
            "bath superoperator must be {}x{}, got {}x{}",
            2 * l,
            2 * l,
            m.nrows(),
            m.ncols()
        )));
    }
    let scale = fro(m).max(f64::MIN_POSITIVE);
    let zm = z_matrix(l).dot(m);
    let mut failures = Vec::new();

    // 1. Spectrum as a multiset.
    let (omegas, xvecs) = zm.eig()?;
    let predicted: Vec<C64> = es
        .eigenvalues
        .iter()
        .cloned()
        .chain(es.eigenvalues.iter().map(|lam| -lam.conj()))
        .collect();
    let (pairs, _, _) = greedy_match(omegas.as_slice().unwrap(), &predicted);
    let spectrum_mismatch = pairs.iter().map(|&(_, _, d)| d).fold(0.0, f64::max);
    if spectrum_mismatch > tol * scale {
        failures.push(format!(
            "spectrum of Z_L M deviates from {{λ}} ∪ {{−λ*}} by {spectrum_mismatch:.3e}"
        ));
    }

    // 2. Stacked right eigenvectors.
    let mut stack = Array2::<C64>::zeros((2 * l, l));
    stack.slice_mut(s![..l, ..]).assign(&es.w_p);
    stack.slice_mut(s![l.., ..]).assign(&es.w_p);
    let mut stack_lam = stack.clone();
    for (k, mut col) in stack_lam.columns_mut().into_iter().enumerate() {
        let lam = es.eigenvalues[k];
        col.mapv_inplace(|z| z * lam);
    }
    let right_residual = fro(&(zm.dot(&stack) - &stack_lam));
    if right_residual > tol * scale {
        failures.push(format!(
            "[w; w] fail to be right eigenvectors of Z_L M (residual {right_residual:.3e})"
        ));
    }

    // 3. Left eigenvectors with eigenvalue −λ*.
    let wd = dagger(&es.w_p);
    let mut rows = Array2::<C64>::zeros((l, 2 * l));
    rows.slice_mut(s![.., ..l]).assign(&wd);
    rows.slice_mut(s![.., l..]).assign(&wd.mapv(|z| -z));
    let mut lam_rows = rows.clone();
    for (k, mut row) in lam_rows.rows_mut().into_iter().enumerate() {
        let neg_conj = -es.eigenvalues[k].conj();
        row.mapv_inplace(|z| z * neg_conj);
    }
    let left_residual = fro(&(rows.dot(&zm) - &lam_rows));
    if left_residual > tol * scale {
        failures.push(format!(
            "[w†, −w†] fail to be left eigenvectors of Z_L M (residual {left_residual:.3e})"
        ));
    }

    // 4. Y_L-biorthogonality of independently computed eigenvectors.
    let y = y_matrix(l);
    let radius = omegas.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let pair_threshold = 1e-8 * radius.max(1.0);
    let mut max_biorthogonality = 0.0_f64;
    let yx = y.dot(&xvecs);
    for i in 0..2 * l {
        for j in 0..2 * l {
            if (omegas[i] + omegas[j].conj()).norm() <= pair_threshold {
                continue;
            }
            let xi = xvecs.column(i);
            let overlap: C64 = xi
                .iter()
                .zip(yx.column(j).iter())
                .map(|(a, b)| a.conj() * b)
                .sum();
            max_biorthogonality = max_biorthogonality.max(overlap.norm());
        }
    }
    if max_biorthogonality > tol {
        failures.push(format!(
            "eigenvectors violate Y_L-biorthogonality (max overlap {max_biorthogonality:.3e})"
        ));
    }

    Ok(PairingReport {
        spectrum_mismatch,
        right_residual,
        left_residual,
        max_biorthogonality,
        failures,
    })
}

/// Both sides of the rapidity sum rule Σ(λ + λ*) = tr(Λ⁺ − (Λ⁻)ᵗ).
#[derive(Debug, Clone, Copy)]
pub struct TraceIdentity {
    /// Σ_i (λ_i + λ_i*) = 2 Σ Re λ_i.
    pub rapidity_sum: f64,
    /// tr(Λ⁺ − (Λ⁻)ᵗ), the net bath rate.
    pub bath_trace: f64,
    /// |rapidity_sum − bath_trace|.
    pub residual: f64,
}

/// Check the trace identity linking the rapidity sum to the bath matrices.
pub fn check_trace_identity(model: &QuadraticLindbladModel, es: &EigenSystem) -> TraceIdentity {
    let rapidity_sum: f64 = es.eigenvalues.iter().map(|lam| 2.0 * lam.re).sum();
    let bath_trace: f64 = (0..model.l)
        .map(|i| (model.lambda_plus[[i, i]] - model.lambda_minus[[i, i]]).re)
        .sum();
    TraceIdentity {
        rapidity_sum,
        bath_trace,
        residual: (rapidity_sum - bath_trace).abs(),
    }
}

/// The structured similarity transform W₁ of the steady state and its
/// closed-form inverse.
///
/// W₁ = [[W_P, C], [W_P, D]] with C = W_P Q and D = C − (W_P†)⁻¹, where Q is
/// the Hermitian Lyapunov kernel. The inverse is available in closed form,
/// W₁⁻¹ = [[−D†, C†], [W_P†, −W_P†]], because the blocks satisfy
/// C†W_P − D†W_P = I and C†D = D†C (Hermiticity of Q).
#[derive(Debug, Clone)]
pub struct StructuredW1 {
    pub w_p: Array2<C64>,
    pub q: Array2<C64>,
    pub c: Array2<C64>,
    pub d: Array2<C64>,
    pub w1: Array2<C64>,
    pub w1_inv: Array2<C64>,
}

impl StructuredW1 {
    /// Number of modes L (W₁ is 2L×2L).
    pub fn l(&self) -> usize {
        self.w_p.nrows()
    }

    /// The partner transform W₂ = −X_L W̄₁ X_L.
    pub fn w2(&self) -> Array2<C64> {
        let x = x_matrix(self.l());
        x.dot(&self.w1.mapv(|z| -z.conj())).dot(&x)
    }
}

/// Assemble W₁ from an eigensystem and the Hermitian kernel Q, verifying the
/// closed-form inverse.
pub fn assemble_w1(es: &EigenSystem, q: &Array2<C64>) -> Result<StructuredW1> {
    let l = es.l();
    if q.nrows() != l || q.ncols() != l {
        return Err(Error::Dimension(format!(
            "Q must be {l}x{l}, got {}x{}",
            q.nrows(),
            q.ncols()
        )));
    }
    let herm = hermiticity_residual(q);
    if herm > 1e-10 {
        return Err(Error::NotHermitian {
            name: "Q",
            residual: herm,
            tol: 1e-10,
        });
    }
    let c = es.w_p.dot(q);
    let d = &c - &dagger(&es.w_p_left);
    let mut w1 = Array2::<C64>::zeros((2 * l, 2 * l));
    w1.slice_mut(s![..l, ..l]).assign(&es.w_p);
    w1.slice_mut(s![..l, l..]).assign(&c);
    w1.slice_mut(s![l.., ..l]).assign(&es.w_p);
    w1.slice_mut(s![l.., l..]).assign(&d);
    let cd = dagger(&c);
    let dd = dagger(&d);
    let wd = dagger(&es.w_p);
    let mut w1_inv = Array2::<C64>::zeros((2 * l, 2 * l));
    w1_inv.slice_mut(s![..l, ..l]).assign(&dd.mapv(|z| -z));
    w1_inv.slice_mut(s![..l, l..]).assign(&cd);
    w1_inv.slice_mut(s![l.., ..l]).assign(&wd);
    w1_inv.slice_mut(s![l.., l..]).assign(&wd.mapv(|z| -z));
    let eye = Array2::<C64>::eye(2 * l);
    let residual = fro(&(w1.dot(&w1_inv) - &eye));
    let tol = 1e-10 * fro(&w1) * fro(&w1_inv);
    if residual > tol {
        return Err(Error::ResidualTooLarge {
            what: "closed-form inverse of W₁",
            residual,
            tol,
        });
    }
    Ok(StructuredW1 {
        w_p: es.w_p.clone(),
        q: q.clone(),
        c,
        d,
        w1,
        w1_inv,
    })
}

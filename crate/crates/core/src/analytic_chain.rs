//! Closed-form spectrum of the boundary-driven uniform chain.
//!
//! For the open chain with uniform hopping J and edge baths Γ₁, Γ_L the drift
//! matrix P is tridiagonal bordered-Toeplitz and its eigenvalues λ = iJ cos θ
//! are roots of the transcendental secular equation
//!
//!   −J² sin((L+1)θ) + iJ(Γ₁+Γ_L) sin(Lθ) + Γ₁Γ_L sin((L−1)θ) = 0.
//!
//! In the exactly solvable regime J² = Γ₁Γ_L the equation closes: writing
//! θ = α + iβ, the L−1 damped modes are
//!
//!   α = kπ/L,   β = (1/2L) ln[(1−s)/(1+s)],   s = 2√κ sin α/(κ+1),
//!   λ = J(sin α sinh β + i cos α cosh β),     κ = J²/Γ₁²,
//!
//! valid for s < 1 (the k with s ≥ 1 has no real-β solution and is dropped;
//! the one remaining eigenvalue of P is an isolated fast boundary mode). The
//! closed forms are asymptotic in L — sinh/cosh((L±1)β) ≈ sinh/cosh(Lβ) — so
//! agreement with the numeric spectrum tightens as L grows.
//!
//! The slowest mode k = 1 yields the relaxation gap
//!
//!   Δ = J sin(π/L) sinh[(1/2L) ln((1+s)/(1−s))]  →  2π²√κ J / ((κ+1) L³),
//!
//! the 1/L³ scaling law of diffusive boundary-driven transport.

use ndarray::Array1;
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::greedy_match;
use crate::model::{build_chain, drift_matrix, ChainParams};
use crate::spectral::{eigendecompose_p, EigenSystem, DEFAULT_TOL_EIG};

/// Relative tolerance on |J² − Γ₁Γ_L| for the exactly solvable regime.
pub const SOLVABLE_REGIME_TOL: f64 = 1e-9;

/// One closed-form mode θ_k = α + iβ of the solvable chain.
#[derive(Debug, Clone, Copy)]
pub struct ChainThetaSolution {
    /// Mode index, 1 ≤ k ≤ L−1.
    pub k: usize,
    /// Re θ = kπ/L.
    pub alpha: f64,
    /// Im θ ≤ 0, the damping exponent.
    pub beta: f64,
    /// θ = α + iβ.
    pub theta: C64,
    /// Eigenvalue λ = J(sin α sinh β + i cos α cosh β) of P.
    pub lambda: C64,
    /// Coupling ratio κ = J²/Γ₁².
    pub kappa: f64,
}

/// Exact and asymptotic closed forms for the relaxation gap.
#[derive(Debug, Clone, Copy)]
pub struct GapClosedForm {
    /// Δ = J sin(π/L) sinh[(1/2L) ln((1+s)/(1−s))], the k = 1 mode.
    pub exact: f64,
    /// 2π²√κ J / ((κ+1) L³), the large-L limit of `exact`.
    pub asymptote: f64,
}

/// Result of matching the closed-form spectrum against the numeric one.
#[derive(Debug, Clone)]
pub struct MatchReport {
    /// (k, analytic λ, numeric λ, |difference|), one row per analytic mode.
    pub matched: Vec<(usize, C64, C64, f64)>,
    /// Largest matched distance.
    pub max_distance: f64,
    /// Mean matched distance.
    pub mean_distance: f64,
    /// Numeric eigenvalues no analytic mode claimed (the boundary mode, plus
    /// partners of any dropped s ≥ 1 indices).
    pub unmatched_numeric: Vec<C64>,
    /// Threshold the matching was judged against.
    pub tol_match: f64,
}

impl MatchReport {
    /// True when every analytic mode found a numeric partner within tolerance.
    pub fn pass(&self) -> bool {
        self.max_distance <= self.tol_match
    }
}

/// Require J² = Γ₁Γ_L (up to `SOLVABLE_REGIME_TOL`) and L ≥ 2.
fn require_solvable(params: &ChainParams) -> Result<()> {
    if params.l < 2 {
        return Err(Error::InvalidParameter(format!(
            "closed forms need a chain of length L ≥ 2, got L = {}",
            params.l
        )));
    }
    let j2 = params.j * params.j;
    let mismatch = (j2 - params.gamma_1 * params.gamma_l).abs();
    if mismatch > SOLVABLE_REGIME_TOL * j2 {
        return Err(Error::InvalidParameter(format!(
            "chain is not in the solvable regime J² = Γ₁Γ_L \
             (|J² − Γ₁Γ_L| = {mismatch:.3e}, J² = {j2:.3e}); \
             use the numeric eigendecomposition instead"
        )));
    }
    Ok(())
}

fn mode_solution(params: &ChainParams, k: usize) -> Option<ChainThetaSolution> {
    let l = params.l as f64;
    let kappa = (params.j / params.gamma_1).powi(2);
    let alpha = k as f64 * PI / l;
    let s = 2.0 * kappa.sqrt() * alpha.sin() / (kappa + 1.0);
    if s >= 1.0 {
        // No real β: this index sits outside the damped-mode family.
        return None;
    }
    let beta = ((1.0 - s) / (1.0 + s)).ln() / (2.0 * l);
    // λ = J(sin α sinh β + i cos α cosh β)
    let lambda = C64::new(
        params.j * alpha.sin() * beta.sinh(),
        params.j * alpha.cos() * beta.cosh(),
    );
    Some(ChainThetaSolution {
        k,
        alpha,
        beta,
        theta: C64::new(alpha, beta),
        lambda,
        kappa,
    })
}

/// All closed-form modes k = 1..L−1 with s < 1, slowest (k = 1) first.
pub fn analytic_spectrum(params: &ChainParams) -> Result<Vec<ChainThetaSolution>> {
    require_solvable(params)?;
    Ok((1..params.l)
        .filter_map(|k| mode_solution(params, k))
        .collect())
}

/// Eigenvector u_j = (1/sin θ)[sin(jθ) − i(Γ₁/J) sin((j−1)θ)], unit norm.
pub fn analytic_eigenvector(theta: C64, params: &ChainParams) -> Result<Array1<C64>> {
    let sin_theta = theta.sin();
    if sin_theta.norm() < 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "degenerate θ = {theta}: sin θ = {sin_theta} is too small to fix \
             the eigenvector normalization"
        )));
    }
    let ratio = C64::new(0.0, -params.gamma_1 / params.j);
    let mut u = Array1::<C64>::zeros(params.l);
    for (idx, entry) in u.iter_mut().enumerate() {
        let j = (idx + 1) as f64;
        // u_j ∝ sin(jθ) − i(Γ₁/J) sin((j−1)θ)
        *entry = ((theta * j).sin() + ratio * (theta * (j - 1.0)).sin()) / sin_theta;
    }
    let norm = u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    Ok(u.mapv(|z| z / norm))
}

/// The secular polynomial −J² sin((L+1)θ) + iJ(Γ₁+Γ_L) sin(Lθ) + Γ₁Γ_L sin((L−1)θ).
///
/// Exact roots θ of the characteristic equation of P make this vanish; the
/// closed-form θ of `analytic_spectrum` only do so asymptotically in L.
pub fn secular_residual(theta: C64, params: &ChainParams) -> C64 {
    let l = params.l as f64;
    let j2 = params.j * params.j;
    let drive = C64::new(0.0, params.j * (params.gamma_1 + params.gamma_l));
    -j2 * (theta * (l + 1.0)).sin() + drive * (theta * l).sin()
        + params.gamma_1 * params.gamma_l * (theta * (l - 1.0)).sin()
}

/// Magnitude of the largest of the three secular terms, the natural scale
/// for judging how small a residual is.
pub fn secular_scale(theta: C64, params: &ChainParams) -> f64 {
    let l = params.l as f64;
    let j2 = params.j * params.j;
    let t1 = j2 * (theta * (l + 1.0)).sin().norm();
    let t2 = params.j * (params.gamma_1 + params.gamma_l) * (theta * l).sin().norm();
    let t3 = params.gamma_1 * params.gamma_l * (theta * (l - 1.0)).sin().norm();
    t1.max(t2).max(t3)
}

/// Invert λ = iJ cos θ on the principal branch, so Re θ ∈ [0, π].
pub fn theta_from_lambda(lambda: C64, params: &ChainParams) -> C64 {
    (lambda / C64::new(0.0, params.j)).acos()
}

/// Exact closed-form gap and its 2π²√κ J/((κ+1)L³) asymptote.
pub fn closed_form_gap(params: &ChainParams) -> Result<GapClosedForm> {
    require_solvable(params)?;
    let l = params.l as f64;
    let kappa = (params.j / params.gamma_1).powi(2);
    let s = 2.0 * kappa.sqrt() * (PI / l).sin() / (kappa + 1.0);
    if s >= 1.0 {
        return Err(Error::InvalidParameter(format!(
            "slowest mode has s = {s} ≥ 1; the closed-form gap does not exist"
        )));
    }
    // Δ = J sin(π/L) sinh[(1/2L) ln((1+s)/(1−s))] — minus the Re of the k=1 λ.
    let exact = params.j * (PI / l).sin() * (((1.0 + s) / (1.0 - s)).ln() / (2.0 * l)).sinh();
    let asymptote = 2.0 * PI * PI * kappa.sqrt() * params.j / ((kappa + 1.0) * l.powi(3));
    Ok(GapClosedForm { exact, asymptote })
}

/// Diagonalize P numerically and greedily pair each closed-form λ with its
/// nearest numeric eigenvalue (unique assignment).
///
/// The L−1 (or fewer, if modes were dropped) analytic values all receive a
/// partner; the report lists the numeric leftovers — for a clean solvable
/// chain exactly one, the isolated fast boundary mode.
pub fn compare_with_numeric(params: &ChainParams, tol_match: f64) -> Result<MatchReport> {
    let analytic = analytic_spectrum(params)?;
    let model = build_chain(params)?;
    let es = eigendecompose_p(&drift_matrix(&model), DEFAULT_TOL_EIG)?;
    compare_spectra(&analytic, &es, tol_match)
}

/// Match a precomputed closed-form spectrum against an eigensystem of P.
pub fn compare_spectra(
    analytic: &[ChainThetaSolution],
    es: &EigenSystem,
    tol_match: f64,
) -> Result<MatchReport> {
    if analytic.is_empty() {
        return Err(Error::InvalidParameter(
            "cannot match an empty analytic spectrum".into(),
        ));
    }
    let xs: Vec<C64> = analytic.iter().map(|m| m.lambda).collect();
    let (pairs, leftover_x, leftover_y) = greedy_match(&xs, &es.eigenvalues);
    debug_assert!(leftover_x.is_empty(), "L−1 analytic modes ≤ L numeric ones");
    let _ = leftover_x;
    let mut matched: Vec<(usize, C64, C64, f64)> = pairs
        .into_iter()
        .map(|(i, j, d)| (analytic[i].k, xs[i], es.eigenvalues[j], d))
        .collect();
    matched.sort_by_key(|row| row.0);
    let max_distance = matched.iter().map(|r| r.3).fold(0.0, f64::max);
    let mean_distance = matched.iter().map(|r| r.3).sum::<f64>() / matched.len() as f64;
    let unmatched_numeric = leftover_y.into_iter().map(|j| es.eigenvalues[j]).collect();
    Ok(MatchReport {
        matched,
        max_distance,
        mean_distance,
        unmatched_numeric,
        tol_match,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::rapidities;

    fn solvable_chain(l: usize, j: f64, gamma_1: f64) -> ChainParams {
        ChainParams {
            l,
            j,
            gamma_1,
            gamma_l: j * j / gamma_1,
            nbar_1: 0.0,
            nbar_l: 0.0,
        }
    }

    fn long_solvable_chain() -> ChainParams {
        // L = 100, Γ₁ = 5, Γ_L = 1/5 in units of J: κ = 1/25.
        solvable_chain(100, 1.0, 5.0)
    }

    #[test]
    fn l4_kappa1_k1_matches_frozen_closed_form() {
        let params = solvable_chain(4, 1.0, 1.0);
        let modes = analytic_spectrum(&params).expect("solvable regime");
        let k1 = modes.iter().find(|m| m.k == 1).expect("k = 1 present");
        assert!(
            (k1.alpha - PI / 4.0).abs() < 1e-15,
            "α should be π/4, got {}",
            k1.alpha
        );
        assert!(
            (k1.beta - (-0.2203433967548857)).abs() < 1e-12,
            "β = (1/8)ln((1−sin π/4)/(1+sin π/4)) should be −0.220343, got {}",
            k1.beta
        );
        let expect = C64::new(-0.15707013836803121, 0.7243417897422132);
        assert!(
            (k1.lambda - expect).norm() < 1e-12,
            "λ(k=1) should be {expect}, got {}",
            k1.lambda
        );
        assert!((k1.kappa - 1.0).abs() < 1e-15, "κ = J²/Γ₁² should be 1");
    }

    #[test]
    fn l4_kappa1_divergent_k2_mode_is_dropped() {
        // At κ = 1, k = L/2 has s = sin(π/2) = 1 exactly: β diverges and the
        // closed form produces no eigenvalue for that index.
        let params = solvable_chain(4, 1.0, 1.0);
        let modes = analytic_spectrum(&params).expect("solvable regime");
        let ks: Vec<usize> = modes.iter().map(|m| m.k).collect();
        assert_eq!(ks, vec![1, 3], "k = 2 has s = 1 and must be omitted");
    }

    #[test]
    fn band_edge_modes_become_weakly_damped() {
        // sin(kπ/L) → 0⁺ gives β → 0 and λ → iJ cos(kπ/L).
        let params = solvable_chain(400, 1.0, 1.0);
        let modes = analytic_spectrum(&params).expect("solvable regime");
        let k1 = modes.iter().find(|m| m.k == 1).expect("k = 1 present");
        assert!(
            k1.beta.abs() < 1e-4,
            "β should vanish at the band edge, got {}",
            k1.beta
        );
        let band_edge = C64::new(0.0, (PI / 400.0).cos());
        assert!(
            (k1.lambda - band_edge).norm() < 1e-4,
            "λ should approach iJ cos(π/L), got {}",
            k1.lambda
        );
    }

    #[test]
    fn mode_reflection_symmetry_about_imaginary_axis() {
        // k → L−k sends α → π−α with β unchanged, so λ → −λ̄.
        let params = solvable_chain(17, 1.3, 2.0);
        let modes = analytic_spectrum(&params).expect("solvable regime");
        for m in &modes {
            let partner = modes
                .iter()
                .find(|p| p.k == params.l - m.k)
                .expect("reflected index present");
            assert!(
                (m.lambda.re - partner.lambda.re).abs() < 1e-12,
                "Re λ must be symmetric under k → L−k"
            );
            assert!(
                (m.lambda.im + partner.lambda.im).abs() < 1e-12,
                "Im λ must be antisymmetric under k → L−k"
            );
        }
    }

    #[test]
    fn every_analytic_rapidity_is_nonpositive() {
        for (l, j, g1) in [(7, 1.0, 1.0), (24, 0.7, 2.5), (100, 1.0, 5.0)] {
            let modes = analytic_spectrum(&solvable_chain(l, j, g1)).expect("solvable");
            for m in modes {
                assert!(
                    m.lambda.re <= 0.0,
                    "closed-form mode k = {} of L = {l} has Re λ = {} > 0",
                    m.k,
                    m.lambda.re
                );
            }
        }
    }

    #[test]
    fn secular_residual_vanishes_at_trivial_root_pi() {
        let params = solvable_chain(100, 1.0, 5.0);
        let r = secular_residual(C64::new(PI, 0.0), &params);
        assert!(
            r.norm() < 1e-10,
            "θ = π zeroes every sine, residual should vanish, got {r}"
        );
    }

    #[test]
    fn secular_residual_tiny_for_theta_from_numeric_eigenvalues() {
        // The transcendental equation is exact, so θ reconstructed from exact
        // numeric eigenvalues must satisfy it to eigensolver accuracy.
        let params = long_solvable_chain();
        let model = build_chain(&params).unwrap();
        let es = eigendecompose_p(&drift_matrix(&model), DEFAULT_TOL_EIG).unwrap();
        for &lambda in &es.eigenvalues {
            let theta = theta_from_lambda(lambda, &params);
            let rel = secular_residual(theta, &params).norm() / secular_scale(theta, &params);
            assert!(
                rel < 1e-8,
                "numeric θ for λ = {lambda} leaves relative residual {rel:.3e}"
            );
        }
    }

    #[test]
    fn secular_residual_small_for_asymptotic_closed_form() {
        // α, β are asymptotic in L: at L = 100 the relative residual sits at
        // the percent level, far below the O(1) value of a non-root.
        let params = long_solvable_chain();
        for m in analytic_spectrum(&params).unwrap() {
            let rel = secular_residual(m.theta, &params).norm() / secular_scale(m.theta, &params);
            assert!(
                rel < 1e-2,
                "closed-form θ (k = {}) leaves relative residual {rel:.3e}",
                m.k
            );
        }
    }

    #[test]
    fn closed_form_gap_approaches_cubic_asymptote() {
        // κ = 1, L = 10: Δ ≈ π²/1000 within 2%, and the asymptote is exactly
        // 2π²·1/(2L³) = π²/1000.
        let gap = closed_form_gap(&solvable_chain(10, 1.0, 1.0)).expect("solvable");
        let reference = PI * PI / 1000.0;
        assert!(
            (gap.exact - reference).abs() < 0.02 * reference,
            "exact gap {} should be within 2% of π²/1000 = {reference}",
            gap.exact
        );
        assert!(
            (gap.asymptote - reference).abs() < 1e-15,
            "κ = 1 asymptote should equal π²/L³ exactly"
        );
    }

    #[test]
    fn gap_ratio_converges_monotonically_to_one() {
        let mut previous = f64::INFINITY;
        for l in [10usize, 30, 100, 300] {
            let gap = closed_form_gap(&solvable_chain(l, 1.0, 1.0)).expect("solvable");
            let deviation = (gap.exact / gap.asymptote - 1.0).abs();
            assert!(
                deviation < previous,
                "ratio deviation should shrink with L, got {deviation:.3e} at L = {l}"
            );
            previous = deviation;
        }
        assert!(
            previous < 1e-3,
            "at L = 300 the exact/asymptote ratio should be within 1e-3 of 1"
        );
    }

    #[test]
    fn long_chain_spectrum_matches_numerics_with_one_boundary_mode_left() {
        let params = long_solvable_chain();
        let report = compare_with_numeric(&params, 0.01).expect("solvable");
        assert_eq!(report.matched.len(), 99, "all k = 1..99 modes get partners");
        assert!(report.pass(), "max distance {} > 0.01", report.max_distance);
        assert!(
            report.max_distance > 6.0e-6 && report.max_distance < 7.0e-6,
            "frozen max matched distance ≈ 6.56e-6, got {:.3e}",
            report.max_distance
        );
        assert!(
            report.mean_distance > 3.5e-6 && report.mean_distance < 3.7e-6,
            "frozen mean matched distance ≈ 3.60e-6, got {:.3e}",
            report.mean_distance
        );
        assert_eq!(
            report.unmatched_numeric.len(),
            1,
            "exactly one numeric eigenvalue (the fast boundary mode) is left over"
        );
        // Trace identity splits Σ Re λ = −(Γ₁+Γ_L)/2 = −2.6 into −0.2 carried
        // by the damped band and −2.4 by the isolated boundary mode.
        let boundary = report.unmatched_numeric[0];
        assert!(
            (boundary - C64::new(-2.4, 0.0)).norm() < 1e-6,
            "boundary mode should sit at −2.4, got {boundary}"
        );
    }

    #[test]
    fn gap_agrees_across_all_three_methods() {
        let params = long_solvable_chain();
        let gap = closed_form_gap(&params).expect("solvable");
        assert!(
            (gap.asymptote - 3.796002e-6).abs() < 1e-11,
            "frozen asymptote 2π²(0.2/1.04)·10⁻⁶, got {:.6e}",
            gap.asymptote
        );
        assert!(
            (gap.exact / gap.asymptote - 1.0).abs() < 0.01,
            "exact and asymptotic gaps should agree to 1% at L = 100"
        );
        let model = build_chain(&params).unwrap();
        let es = eigendecompose_p(&drift_matrix(&model), DEFAULT_TOL_EIG).unwrap();
        let numeric = rapidities(&es, 1e-13).gap.expect("damped spectrum");
        assert!(
            (numeric / gap.exact - 1.0).abs() < 1e-3,
            "numeric gap {numeric:.6e} should match the closed form {:.6e}",
            gap.exact
        );
    }

    #[test]
    fn l4_kappa1_match_pairs_two_modes_and_reports_two_leftovers() {
        // With k = 2 dropped only two analytic modes exist; at L = 4 the
        // asymptotic closed form is crude, so distances sit near 0.05.
        let report = compare_with_numeric(&solvable_chain(4, 1.0, 1.0), 0.06).expect("solvable");
        assert_eq!(report.matched.len(), 2, "modes k = 1, 3 get partners");
        assert_eq!(report.unmatched_numeric.len(), 2);
        for (k, _, _, d) in &report.matched {
            assert!(
                (0.045..0.055).contains(d),
                "frozen matched distance ≈ 0.0493 for k = {k}, got {d}"
            );
        }
    }

    #[test]
    fn exact_theta_reconstructs_numeric_eigenvector() {
        // Given an exact θ the eigenvector formula is exact: reconstruct θ
        // from a matched numeric eigenvalue and compare eigenvectors.
        let params = solvable_chain(4, 1.0, 1.0);
        let model = build_chain(&params).unwrap();
        let es = eigendecompose_p(&drift_matrix(&model), DEFAULT_TOL_EIG).unwrap();
        let report = compare_with_numeric(&params, 0.06).unwrap();
        let (_, _, numeric_lambda, _) = report.matched[0];
        let idx = es
            .eigenvalues
            .iter()
            .position(|&l| (l - numeric_lambda).norm() < 1e-12)
            .expect("matched eigenvalue present");
        let u = analytic_eigenvector(theta_from_lambda(numeric_lambda, &params), &params).unwrap();
        let v = es.w_p.column(idx);
        let overlap = u
            .iter()
            .zip(v.iter())
            .map(|(a, b)| a.conj() * b)
            .sum::<C64>()
            .norm();
        assert!(
            overlap > 1.0 - 1e-10,
            "exact-θ eigenvector should be collinear with the numeric one, \
             overlap = {overlap}"
        );
    }

    #[test]
    fn asymptotic_theta_eigenvector_overlap_at_l100() {
        let params = long_solvable_chain();
        let model = build_chain(&params).unwrap();
        let es = eigendecompose_p(&drift_matrix(&model), DEFAULT_TOL_EIG).unwrap();
        let k1 = analytic_spectrum(&params).unwrap()[0];
        let u = analytic_eigenvector(k1.theta, &params).unwrap();
        let idx = (0..es.l())
            .min_by(|&a, &b| {
                let da = (es.eigenvalues[a] - k1.lambda).norm();
                let db = (es.eigenvalues[b] - k1.lambda).norm();
                da.partial_cmp(&db).unwrap()
            })
            .unwrap();
        let v = es.w_p.column(idx);
        let overlap = u
            .iter()
            .zip(v.iter())
            .map(|(a, b)| a.conj() * b)
            .sum::<C64>()
            .norm();
        assert!(
            overlap > 1.0 - 1e-6,
            "asymptotic-θ eigenvector overlap at L = 100 should exceed 1 − 1e-6, \
             got {overlap}"
        );
    }

    #[test]
    fn eigenvector_rejects_degenerate_theta() {
        let params = solvable_chain(6, 1.0, 1.0);
        assert!(
            analytic_eigenvector(C64::new(0.0, 0.0), &params).is_err(),
            "sin θ = 0 cannot normalize the eigenvector"
        );
    }

    #[test]
    fn eigenvector_without_drive_is_a_pure_standing_wave() {
        // Γ₁ = 0 removes the second term: u_j ∝ sin(jθ).
        let params = ChainParams {
            l: 9,
            j: 1.0,
            gamma_1: 0.0,
            gamma_l: 0.4,
            nbar_1: 0.0,
            nbar_l: 0.0,
        };
        let theta = C64::new(0.7, 0.1);
        let u = analytic_eigenvector(theta, &params).unwrap();
        let wave: Vec<C64> = (1..=9).map(|j| (theta * j as f64).sin()).collect();
        let norm = wave.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let overlap = u
            .iter()
            .zip(wave.iter())
            .map(|(a, b)| a.conj() * b / norm)
            .sum::<C64>()
            .norm();
        assert!(
            overlap > 1.0 - 1e-12,
            "Γ₁ = 0 eigenvector should be sin(jθ) up to phase, overlap {overlap}"
        );
    }

    #[test]
    fn degenerate_chain_without_hopping_is_rejected() {
        let params = ChainParams {
            l: 5,
            j: 0.0,
            gamma_1: 1.0,
            gamma_l: 1.0,
            nbar_1: 0.0,
            nbar_l: 0.0,
        };
        assert!(analytic_spectrum(&params).is_err(), "J = 0 is not solvable");
        assert!(closed_form_gap(&params).is_err());
        assert!(compare_with_numeric(&params, 0.01).is_err());
    }

    #[test]
    fn detuned_rates_leave_the_solvable_regime() {
        let params = ChainParams {
            l: 12,
            j: 1.0,
            gamma_1: 2.0,
            gamma_l: 2.0, // Γ₁Γ_L = 4 ≠ 1 = J²
            nbar_1: 0.0,
            nbar_l: 0.0,
        };
        let err = analytic_spectrum(&params).unwrap_err();
        assert!(
            err.to_string().contains("numeric eigendecomposition"),
            "regime error should point at the numeric path, got: {err}"
        );
    }
}

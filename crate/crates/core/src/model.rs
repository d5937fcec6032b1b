//! Model types for quadratic, number-conserving bosonic Lindblad equations.
//!
//! A model is the triple (h, Λ⁺, Λ⁻) of L×L matrices entering
//!
//!   dρ/dt = −i[H, ρ] + Σ_{ij} [ Λ⁺_{ij}(α†_i ρ α_j − α_j α†_i ρ)
//!                             + Λ⁻_{ij}(α_i ρ α†_j − α†_j α_i ρ) + H.c. ],
//!
//! with H = Σ_{ij} h_{ij} α†_i α_j. h must be Hermitian and Λ± Hermitian
//! positive semidefinite. Everything downstream (spectrum, steady state,
//! transform) is a function of these three matrices only.
//!
//! Two concrete families are built here: the boundary-driven open chain and
//! the boundary-driven flux ladder (two legs of length L with a uniform
//! plaquette phase φπ, in units where ħ = 1).

use ndarray::Array2;
use ndarray_linalg::{EigValsh, UPLO};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::path::Path;

use crate::error::{Error, Result};
use crate::linalg::{dagger, fro, hermiticity_residual};

/// Relative tolerance for Hermiticity of h and Λ±.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Eigenvalues of Λ± may be negative by at most this times ‖Λ‖_F.
pub const PSD_TOL: f64 = 1e-12;

/// A quadratic number-conserving Lindblad model (h, Λ⁺, Λ⁻).
#[derive(Debug, Clone)]
pub struct QuadraticLindbladModel {
    /// Number of bosonic modes L.
    pub l: usize,
    /// Human-readable tag carried through to output artifacts.
    pub label: String,
    /// Hermitian single-particle Hamiltonian matrix, L×L.
    pub h: Array2<C64>,
    /// Heating-bath matrix Λ⁺ (Hermitian PSD), L×L.
    pub lambda_plus: Array2<C64>,
    /// Cooling-bath matrix Λ⁻ (Hermitian PSD), L×L.
    pub lambda_minus: Array2<C64>,
}

/// Parameters of the boundary-driven chain: tunnelling J, bath coupling
/// rates Γ₁, Γ_L and thermal occupations n̄₁, n̄_L at the two ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainParams {
    pub l: usize,
    pub j: f64,
    pub gamma_1: f64,
    pub gamma_l: f64,
    pub nbar_1: f64,
    pub nbar_l: f64,
}

/// Parameters of the boundary-driven flux ladder: leg tunnelling J∥, rung
/// tunnelling J⊥, plaquette phase φ in units of π (0 ≤ φ ≤ 1), and a common
/// bath rate Γ acting on the two extremities (j = 1, L) of the upper leg.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderParams {
    /// Number of rungs; the ladder has 2L modes.
    pub l: usize,
    pub j_par: f64,
    pub j_perp: f64,
    /// Plaquette phase in units of π.
    pub phi: f64,
    pub gamma: f64,
    pub nbar_first: f64,
    pub nbar_last: f64,
}

/// Bijection between ladder coordinates (j, p) and flat mode indices.
///
/// j ∈ 1..=L is the rung, p ∈ {1, 2} the leg (1 = upper); the flat index is
/// i = 2(j−1) + (p−1), so each rung's two modes are adjacent.
#[derive(Debug, Clone, Copy)]
pub struct SiteIndexMap {
    pub l: usize,
}

impl SiteIndexMap {
    pub fn new(l: usize) -> Self {
        Self { l }
    }

    /// Flat index of site (j, p). Panics on out-of-range coordinates.
    pub fn flat(&self, j: usize, p: usize) -> usize {
        assert!(
            (1..=self.l).contains(&j) && (p == 1 || p == 2),
            "site (j={j}, p={p}) out of range for a ladder with {} rungs",
            self.l
        );
        2 * (j - 1) + (p - 1)
    }

    /// Inverse map: flat index → (j, p). Panics on out-of-range index.
    pub fn site(&self, i: usize) -> (usize, usize) {
        assert!(i < 2 * self.l, "flat index {i} out of range");
        (i / 2 + 1, i % 2 + 1)
    }
}

/// Result of validating a model: a list of violated invariants (empty for a
/// valid model). Dimension mismatches are reported as hard errors instead,
/// since no other check is meaningful without consistent shapes.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_square(name: &str, m: &Array2<C64>, l: usize) -> Result<()> {
    if m.nrows() != l || m.ncols() != l {
        return Err(Error::Dimension(format!(
            "{name} has shape {}x{}, expected {l}x{l}",
            m.nrows(),
            m.ncols()
        )));
    }
    Ok(())
}

/// Check Hermiticity of h and Λ±, and positive semidefiniteness of Λ±.
pub fn validate_model(model: &QuadraticLindbladModel) -> Result<ValidationReport> {
    if model.l == 0 {
        return Err(Error::Dimension("model must have at least one mode".into()));
    }
    check_square("h", &model.h, model.l)?;
    check_square("lambda_plus", &model.lambda_plus, model.l)?;
    check_square("lambda_minus", &model.lambda_minus, model.l)?;

    let mut report = ValidationReport::default();
    let rh = hermiticity_residual(&model.h);
    if rh > HERMITICITY_TOL {
        report
            .violations
            .push(format!("h is not Hermitian (relative residual {rh:.3e})"));
    }
    for (name, lam) in [
        ("Λ⁺", &model.lambda_plus),
        ("Λ⁻", &model.lambda_minus),
    ] {
        let r = hermiticity_residual(lam);
        if r > HERMITICITY_TOL {
            report
                .violations
                .push(format!("{name} is not Hermitian (relative residual {r:.3e})"));
            // An eigh-based PSD check would be meaningless on this input.
            continue;
        }
        let eigs = lam.eigvalsh(UPLO::Lower)?;
        let min_eig = eigs.iter().cloned().fold(f64::INFINITY, f64::min);
        if min_eig < -PSD_TOL * fro(lam) {
            report.violations.push(format!(
                "{name} is not positive semidefinite (min eigenvalue {min_eig:.6e})"
            ));
        }
    }
    Ok(report)
}

fn require(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg.into()))
    }
}

/// Build the boundary-driven chain: H = −J Σ_l (α†_{l+1} α_l + h.c.) with
/// thermal baths Λ⁺_{ll} = Γ_l n̄_l, Λ⁻_{ll} = Γ_l (n̄_l + 1) on l = 1, L.
pub fn build_chain(params: &ChainParams) -> Result<QuadraticLindbladModel> {
    require(params.l >= 2, "chain needs at least 2 sites")?;
    require(params.j.is_finite(), "J must be finite")?;
    require(
        params.gamma_1 > 0.0 && params.gamma_l > 0.0,
        "bath rates Γ₁, Γ_L must be positive",
    )?;
    require(
        params.nbar_1 >= 0.0 && params.nbar_l >= 0.0,
        "thermal occupations n̄ must be non-negative",
    )?;
    let l = params.l;
    let mut h = Array2::<C64>::zeros((l, l));
    for i in 0..l - 1 {
        h[[i, i + 1]] = C64::new(-params.j, 0.0);
        h[[i + 1, i]] = C64::new(-params.j, 0.0);
    }
    let mut lambda_plus = Array2::<C64>::zeros((l, l));
    let mut lambda_minus = Array2::<C64>::zeros((l, l));
    lambda_plus[[0, 0]] = C64::new(params.gamma_1 * params.nbar_1, 0.0);
    lambda_plus[[l - 1, l - 1]] = C64::new(params.gamma_l * params.nbar_l, 0.0);
    lambda_minus[[0, 0]] = C64::new(params.gamma_1 * (params.nbar_1 + 1.0), 0.0);
    lambda_minus[[l - 1, l - 1]] = C64::new(params.gamma_l * (params.nbar_l + 1.0), 0.0);
    Ok(QuadraticLindbladModel {
        l,
        label: format!(
            "chain L={} J={} gamma1={} gammaL={} nbar1={} nbarL={}",
            l, params.j, params.gamma_1, params.gamma_l, params.nbar_1, params.nbar_l
        ),
        h,
        lambda_plus,
        lambda_minus,
    })
}

/// Build the boundary-driven flux ladder.
///
/// Legs carry H_{(j,p),(j+1,p)} = −J∥ e^{i(−1)^{p+1} φπ/2}, rungs −J⊥, and
/// the baths act on the upper-leg extremities (1,1) and (L,1) with rates
/// Λ⁺ = 2Γ n̄ and Λ⁻ = 2Γ(n̄+1), so the drift matrix picks up −Γ there.
pub fn build_ladder(params: &LadderParams) -> Result<QuadraticLindbladModel> {
    require(params.l >= 2, "ladder needs at least 2 rungs")?;
    require(
        params.j_par.is_finite() && params.j_perp.is_finite(),
        "tunnelling amplitudes must be finite",
    )?;
    require(
        (0.0..=1.0).contains(&params.phi),
        "plaquette phase φ must lie in [0, 1] (units of π)",
    )?;
    require(params.gamma > 0.0, "bath rate Γ must be positive")?;
    require(
        params.nbar_first >= 0.0 && params.nbar_last >= 0.0,
        "thermal occupations n̄ must be non-negative",
    )?;
    let l = params.l;
    let map = SiteIndexMap::new(l);
    let n = 2 * l;
    let mut h = Array2::<C64>::zeros((n, n));
    for j in 1..=l {
        // Rung (j,1)–(j,2).
        let a = map.flat(j, 1);
        let b = map.flat(j, 2);
        h[[a, b]] = C64::new(-params.j_perp, 0.0);
        h[[b, a]] = C64::new(-params.j_perp, 0.0);
        if j < l {
            for p in [1usize, 2] {
                // Leg bond (j,p)–(j+1,p) with Peierls phase ±φπ/2.
                let sign = if p == 1 { 1.0 } else { -1.0 };
                let phase = C64::from_polar(1.0, sign * params.phi * std::f64::consts::PI / 2.0);
                let u = map.flat(j, p);
                let v = map.flat(j + 1, p);
                h[[u, v]] = -params.j_par * phase;
                h[[v, u]] = -params.j_par * phase.conj();
            }
        }
    }
    let mut lambda_plus = Array2::<C64>::zeros((n, n));
    let mut lambda_minus = Array2::<C64>::zeros((n, n));
    for (j, nbar) in [(1, params.nbar_first), (l, params.nbar_last)] {
        let i = map.flat(j, 1);
        lambda_plus[[i, i]] = C64::new(2.0 * params.gamma * nbar, 0.0);
        lambda_minus[[i, i]] = C64::new(2.0 * params.gamma * (nbar + 1.0), 0.0);
    }
    Ok(QuadraticLindbladModel {
        l: n,
        label: format!(
            "ladder L={} Jpar={} Jperp={} phi={} gamma={} nbar1={} nbarL={}",
            l,
            params.j_par,
            params.j_perp,
            params.phi,
            params.gamma,
            params.nbar_first,
            params.nbar_last
        ),
        h,
        lambda_plus,
        lambda_minus,
    })
}

/// Drift matrix P = (−ih + Λ⁺ − (Λ⁻)ᵗ)/2 governing d⟨α†α⟩/dt.
///
/// Its spectrum {λ_P} carries the full relaxation information of the
/// Liouvillian: all rapidities are {λ_P} ∪ {−λ_P*}.
pub fn drift_matrix(model: &QuadraticLindbladModel) -> Array2<C64> {
    let i = C64::new(0.0, 1.0);
    let lt = model.lambda_minus.t().to_owned();
    (model.h.mapv(|z| -i * z) + &model.lambda_plus - &lt).mapv(|z| z / 2.0)
}

/// Bath superoperator matrix M = [[K, Λ⁺], [(Λ⁻)ᵗ, K†]] with
/// K = (−ih − Λ⁺ − (Λ⁻)ᵗ)/2. Satisfies X_L M X_L = M† (pseudo-Hermiticity).
pub fn bath_superoperator_matrix(model: &QuadraticLindbladModel) -> Array2<C64> {
    let l = model.l;
    let i = C64::new(0.0, 1.0);
    let lt = model.lambda_minus.t().to_owned();
    let k = (model.h.mapv(|z| -i * z) - &model.lambda_plus - &lt).mapv(|z| z / 2.0);
    let kd = dagger(&k);
    let mut m = Array2::<C64>::zeros((2 * l, 2 * l));
    m.slice_mut(ndarray::s![..l, ..l]).assign(&k);
    m.slice_mut(ndarray::s![..l, l..]).assign(&model.lambda_plus);
    m.slice_mut(ndarray::s![l.., ..l]).assign(&lt);
    m.slice_mut(ndarray::s![l.., l..]).assign(&kd);
    m
}

// --- JSON (de)serialization -------------------------------------------------
//
// Matrices are stored row-major as nested arrays of [re, im] pairs so files
// are language-agnostic and easy to generate from any scripting environment.

#[derive(Serialize, Deserialize)]
struct ModelFile {
    #[serde(rename = "L")]
    l: usize,
    label: String,
    h: Vec<Vec<[f64; 2]>>,
    lambda_plus: Vec<Vec<[f64; 2]>>,
    lambda_minus: Vec<Vec<[f64; 2]>>,
}

pub(crate) fn matrix_to_rows(m: &Array2<C64>) -> Vec<Vec<[f64; 2]>> {
    m.rows()
        .into_iter()
        .map(|r| r.iter().map(|z| [z.re, z.im]).collect())
        .collect()
}

fn rows_to_matrix(name: &str, rows: &[Vec<[f64; 2]>], l: usize) -> Result<Array2<C64>> {
    if rows.len() != l || rows.iter().any(|r| r.len() != l) {
        return Err(Error::Dimension(format!(
            "{name} in model file does not form an {l}x{l} matrix"
        )));
    }
    let mut m = Array2::<C64>::zeros((l, l));
    for (i, row) in rows.iter().enumerate() {
        for (j, &[re, im]) in row.iter().enumerate() {
            m[[i, j]] = C64::new(re, im);
        }
    }
    Ok(m)
}

/// Serialize a model to a JSON file.
pub fn save_model(model: &QuadraticLindbladModel, path: &Path) -> Result<()> {
    let file = ModelFile {
        l: model.l,
        label: model.label.clone(),
        h: matrix_to_rows(&model.h),
        lambda_plus: matrix_to_rows(&model.lambda_plus),
        lambda_minus: matrix_to_rows(&model.lambda_minus),
    };
    let json = serde_json::to_string_pretty(&file).expect("model serialization cannot fail");
    std::fs::write(path, json)?;
    Ok(())
}

/// Deserialize a model from a JSON file, checking dimensional consistency.
pub fn load_model(path: &Path) -> Result<QuadraticLindbladModel> {
    let text = std::fs::read_to_string(path)?;
    let file: ModelFile = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    if file.l == 0 {
        return Err(Error::Dimension("model file declares L = 0".into()));
    }
    Ok(QuadraticLindbladModel {
        l: file.l,
        label: file.label.clone(),
        h: rows_to_matrix("h", &file.h, file.l)?,
        lambda_plus: rows_to_matrix("lambda_plus", &file.lambda_plus, file.l)?,
        lambda_minus: rows_to_matrix("lambda_minus", &file.lambda_minus, file.l)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::fro;
    use ndarray::array;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn driven_chain() -> ChainParams {
        ChainParams {
            l: 4,
            j: 1.0,
            gamma_1: 5.0,
            gamma_l: 0.2,
            nbar_1: 1.0,
            nbar_l: 0.5,
        }
    }

    #[test]
    fn chain_drift_matrix_has_expected_structure() {
        let model = build_chain(&driven_chain()).unwrap();
        let p = drift_matrix(&model);
        // Boundary decay rates −Γ/2 on the diagonal.
        assert!((p[[0, 0]] - c(-2.5, 0.0)).norm() < 1e-15);
        assert!((p[[3, 3]] - c(-0.1, 0.0)).norm() < 1e-15);
        assert_eq!(p[[1, 1]], c(0.0, 0.0));
        // Tunnelling enters as +iJ/2 on both off-diagonals.
        for i in 0..3 {
            assert!((p[[i, i + 1]] - c(0.0, 0.5)).norm() < 1e-15);
            assert!((p[[i + 1, i]] - c(0.0, 0.5)).norm() < 1e-15);
        }
    }

    #[test]
    fn chain_trace_of_bath_difference_matches_total_rate() {
        let model = build_chain(&driven_chain()).unwrap();
        let diff = &model.lambda_plus - &model.lambda_minus.t();
        let tr: C64 = (0..model.l).map(|i| diff[[i, i]]).sum();
        assert!((tr - c(-5.2, 0.0)).norm() < 1e-14, "tr(Λ⁺ − Λ⁻ᵗ) = −Γ₁ − Γ_L");
    }

    #[test]
    fn bath_superoperator_is_pseudo_hermitian_under_x() {
        let model = build_chain(&driven_chain()).unwrap();
        let m = bath_superoperator_matrix(&model);
        let x = crate::spectral::x_matrix(model.l);
        let lhs = x.dot(&m).dot(&x);
        let res = fro(&(&lhs - &dagger(&m))) / fro(&m);
        assert!(res < 1e-15, "X_L M X_L = M† violated: {res:.3e}");
    }

    #[test]
    fn site_index_map_is_a_bijection() {
        let map = SiteIndexMap::new(7);
        for j in 1..=7 {
            for p in [1, 2] {
                let i = map.flat(j, p);
                assert_eq!(map.site(i), (j, p));
            }
        }
        assert_eq!(map.flat(1, 1), 0);
        assert_eq!(map.flat(1, 2), 1);
        assert_eq!(map.flat(7, 1), 12);
    }

    #[test]
    fn ladder_dissipation_sits_on_upper_leg_extremities() {
        let params = LadderParams {
            l: 5,
            j_par: 1.0,
            j_perp: 1.7,
            phi: 0.3,
            gamma: 1.0,
            nbar_first: 1.0,
            nbar_last: 1.0,
        };
        let model = build_ladder(&params).unwrap();
        let p = drift_matrix(&model);
        let map = SiteIndexMap::new(5);
        for i in 0..model.l {
            let expected = if i == map.flat(1, 1) || i == map.flat(5, 1) {
                c(-1.0, 0.0)
            } else {
                c(0.0, 0.0)
            };
            assert!(
                (p[[i, i]] - expected).norm() < 1e-15,
                "drift diagonal at mode {i}"
            );
        }
        // Upper leg carries phase +φπ/2, lower leg the conjugate.
        let up = p[[map.flat(1, 1), map.flat(2, 1)]];
        let dn = p[[map.flat(1, 2), map.flat(2, 2)]];
        let expect_up = c(0.0, 0.5) * C64::from_polar(1.0, 0.3 * std::f64::consts::PI / 2.0);
        assert!((up - expect_up).norm() < 1e-15);
        assert!((dn - c(0.0, 0.5) * C64::from_polar(1.0, -0.3 * std::f64::consts::PI / 2.0)).norm() < 1e-15);
    }

    #[test]
    fn ladder_hamiltonian_is_hermitian_and_valid() {
        let params = LadderParams {
            l: 4,
            j_par: 1.0,
            j_perp: 0.8,
            phi: 0.6,
            gamma: 1.0,
            nbar_first: 0.2,
            nbar_last: 0.1,
        };
        let model = build_ladder(&params).unwrap();
        let report = validate_model(&model).unwrap();
        assert!(report.is_valid(), "violations: {:?}", report.violations);
    }

    #[test]
    fn validate_flags_non_hermitian_hamiltonian() {
        let mut model = build_chain(&driven_chain()).unwrap();
        model.h[[0, 1]] = c(1.0, 1.0); // break Hermiticity
        let report = validate_model(&model).unwrap();
        assert!(!report.is_valid());
        assert!(report.violations[0].contains("h is not Hermitian"));
    }

    #[test]
    fn validate_flags_negative_bath_matrix() {
        let mut model = build_chain(&driven_chain()).unwrap();
        model.lambda_plus[[1, 1]] = c(-0.5, 0.0);
        let report = validate_model(&model).unwrap();
        assert!(report
            .violations
            .iter()
            .any(|v| v.contains("not positive semidefinite")));
    }

    #[test]
    fn validate_rejects_mismatched_dimensions() {
        let model = QuadraticLindbladModel {
            l: 3,
            label: "broken".into(),
            h: Array2::zeros((2, 2)),
            lambda_plus: Array2::zeros((3, 3)),
            lambda_minus: Array2::zeros((3, 3)),
        };
        assert!(matches!(validate_model(&model), Err(Error::Dimension(_))));
    }

    #[test]
    fn model_roundtrips_through_json() {
        let params = LadderParams {
            l: 3,
            j_par: 1.0,
            j_perp: 1.7,
            phi: 0.45,
            gamma: 1.0,
            nbar_first: 1.0,
            nbar_last: 1.0,
        };
        let model = build_ladder(&params).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.json");
        save_model(&model, &path).unwrap();
        let loaded = load_model(&path).unwrap();
        assert_eq!(loaded.l, model.l);
        assert_eq!(loaded.label, model.label);
        assert!(fro(&(&loaded.h - &model.h)) == 0.0, "h must roundtrip exactly");
        assert!(fro(&(&loaded.lambda_plus - &model.lambda_plus)) == 0.0);
        assert!(fro(&(&loaded.lambda_minus - &model.lambda_minus)) == 0.0);
    }

    #[test]
    fn load_rejects_ragged_matrix() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.json");
        std::fs::write(
            &path,
            r#"{"L": 2, "label": "bad", "h": [[[0,0],[0,0]],[[0,0]]],
               "lambda_plus": [[[0,0],[0,0]],[[0,0],[0,0]]],
               "lambda_minus": [[[0,0],[0,0]],[[0,0],[0,0]]]}"#,
        )
        .unwrap();
        assert!(matches!(load_model(&path), Err(Error::Dimension(_))));
    }

    #[test]
    fn load_rejects_malformed_json() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("junk.json");
        std::fs::write(&path, "{not json").unwrap();
        assert!(matches!(load_model(&path), Err(Error::Parse(_))));
    }

    #[test]
    fn chain_builder_rejects_bad_parameters() {
        let mut p = driven_chain();
        p.l = 1;
        assert!(build_chain(&p).is_err());
        let mut p = driven_chain();
        p.gamma_1 = 0.0;
        assert!(build_chain(&p).is_err());
        let mut p = driven_chain();
        p.nbar_l = -0.1;
        assert!(build_chain(&p).is_err());
    }

    #[test]
    fn ladder_builder_rejects_phase_outside_unit_interval() {
        let params = LadderParams {
            l: 4,
            j_par: 1.0,
            j_perp: 1.0,
            phi: 1.2,
            gamma: 1.0,
            nbar_first: 1.0,
            nbar_last: 1.0,
        };
        assert!(build_ladder(&params).is_err());
    }

    #[test]
    fn single_site_drift_reduces_to_scalar_rate() {
        let model = QuadraticLindbladModel {
            l: 1,
            label: "single".into(),
            h: array![[c(0.7, 0.0)]],
            lambda_plus: array![[c(1.0, 0.0)]],
            lambda_minus: array![[c(3.0, 0.0)]],
        };
        let p = drift_matrix(&model);
        // P = (−ih + Λ⁺ − Λ⁻)/2 = (−0.7i − 2)/2
        assert!((p[[0, 0]] - c(-1.0, -0.35)).norm() < 1e-15);
    }
}

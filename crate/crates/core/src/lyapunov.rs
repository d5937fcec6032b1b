//! Steady-state two-point correlations from a spectral Lyapunov solve.
//!
//! The steady state of a quadratic number-conserving model is Gaussian and
//! fully characterized by O_{ij} = ⟨α†_i α_j⟩. Writing the continuous
//! Lyapunov equation P Ω + Ω P† = Λ⁺ in the eigenbasis of P diagonalizes
//! it entrywise:
//!
//!   Q_{mn} = (W_P⁻¹ Λ⁺ W_P⁻†)_{mn} / (λ_m + λ_n*),   Ω = W_P Q W_P†,
//!
//! and O = −Ωᵗ. The denominators λ_m + λ_n* vanish exactly when dark modes
//! pair up, in which case the steady state is not unique and the solve is
//! refused. Two independent oracles are provided: a dense Kronecker-product
//! solve of the same Lyapunov equation, and a brute-force steady state in a
//! truncated Fock space that never sees the drift matrix at all.

use ndarray::{Array1, Array2, ShapeBuilder};
use ndarray_linalg::{Factorize, Norm, Solve};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{dagger, fro, kron, solve_vec};
use crate::model::{
    drift_matrix, validate_model, ChainParams, LadderParams, QuadraticLindbladModel, SiteIndexMap,
};
use crate::spectral::{eigendecompose_p, EigenSystem, DEFAULT_TOL_EIG};

/// Default factor for the resonance threshold: |λ_m + λ_n*| must exceed
/// this times ‖P‖.
pub const DEFAULT_DENOM_TOL_FACTOR: f64 = 1e-12;
/// Relative tolerance on the Lyapunov reconstruction residual.
pub const RESIDUAL_TOL: f64 = 1e-8;
/// Hard budget on the superoperator dimension (n_max + 1)^(2L) of the
/// truncated-Fock oracle.
pub const FOCK_DIM_BUDGET: usize = 16384;

/// Default resonance threshold for an eigensystem, 1e-12·‖P‖.
pub fn default_denom_tol(es: &EigenSystem) -> f64 {
    DEFAULT_DENOM_TOL_FACTOR * es.p_norm
}

/// Solve the Lyapunov equation in the eigenbasis of P: the Hermitian kernel
/// Q with Q_{mn} = (W⁻¹ Λ⁺ W⁻†)_{mn} / (λ_m + λ_n*).
///
/// Fails with a resonance error if any denominator falls below `denom_tol`,
/// naming the offending eigenvalue pair; this happens exactly when the
/// steady state fails to be unique (paired dark modes).
pub fn solve_q(
    es: &EigenSystem,
    lambda_plus: &Array2<C64>,
    denom_tol: f64,
) -> Result<Array2<C64>> {
    let l = es.l();
    if lambda_plus.nrows() != l || lambda_plus.ncols() != l {
        return Err(Error::Dimension(format!(
            "Λ⁺ must be {l}x{l}, got {}x{}",
            lambda_plus.nrows(),
            lambda_plus.ncols()
        )));
    }
    let s = es.w_p_left.dot(lambda_plus).dot(&dagger(&es.w_p_left));
    let mut q = Array2::<C64>::zeros((l, l));
    for m in 0..l {
        for n in 0..l {
            let denom = es.eigenvalues[m] + es.eigenvalues[n].conj();
            if denom.norm() < denom_tol {
                return Err(Error::ResonantPair {
                    m,
                    n,
                    denom: denom.norm(),
                    tol: denom_tol,
                });
            }
            q[[m, n]] = s[[m, n]] / denom;
        }
    }
    Ok(q)
}

/// Steady-state correlation data: the kernel Q, the Lyapunov solution Ω,
/// and the physical correlation matrix O_{ij} = ⟨α†_i α_j⟩ = −Ωᵗ.
#[derive(Debug, Clone)]
pub struct SteadyStateCorrelations {
    pub q: Array2<C64>,
    pub omega: Array2<C64>,
    pub o: Array2<C64>,
    /// ‖P Ω + Ω P† − Λ⁺‖_F, the reconstruction residual.
    pub residual: f64,
}

/// Reconstruct Ω = W Q W† and O = −Ωᵗ, verifying the Lyapunov residual.
pub fn correlations(
    es: &EigenSystem,
    lambda_plus: &Array2<C64>,
    q: &Array2<C64>,
) -> Result<SteadyStateCorrelations> {
    let omega = es.w_p.dot(q).dot(&dagger(&es.w_p));
    let o = omega.t().mapv(|z| -z);
    let lhs = es.p.dot(&omega) + omega.dot(&dagger(&es.p));
    let residual = fro(&(&lhs - lambda_plus));
    let lam_norm = fro(lambda_plus);
    // For a driven system the natural scale is ‖Λ⁺‖; for an undriven one
    // (Λ⁺ = 0, empty steady state) fall back to ‖P‖·‖Ω‖.
    let scale = if lam_norm > 0.0 {
        lam_norm
    } else {
        (es.p_norm * fro(&omega)).max(f64::MIN_POSITIVE)
    };
    if residual > RESIDUAL_TOL * scale {
        return Err(Error::ResidualTooLarge {
            what: "Lyapunov reconstruction P Ω + Ω P† − Λ⁺",
            residual,
            tol: RESIDUAL_TOL * scale,
        });
    }
    Ok(SteadyStateCorrelations {
        q: q.clone(),
        omega,
        o,
        residual,
    })
}

/// Full pipeline: validate the model, diagonalize P and solve for the
/// steady-state correlations with default tolerances.
pub fn steady_state(model: &QuadraticLindbladModel) -> Result<SteadyStateCorrelations> {
    let report = validate_model(model)?;
    if !report.is_valid() {
        return Err(Error::InvalidParameter(report.violations.join("; ")));
    }
    let p = drift_matrix(model);
    let es = eigendecompose_p(&p, DEFAULT_TOL_EIG)?;
    let q = solve_q(&es, &model.lambda_plus, default_denom_tol(&es))?;
    correlations(&es, &model.lambda_plus, &q)
}

/// Independent dense solve of P Ω + Ω P† = Λ⁺ via the Kronecker identity
/// (I ⊗ P + P̄ ⊗ I) vec(Ω) = vec(Λ⁺) (column-major vec). O(L⁶) memory and
/// time; restricted to L ≤ 64.
pub fn kronecker_oracle(p: &Array2<C64>, lambda_plus: &Array2<C64>) -> Result<Array2<C64>> {
    let l = p.nrows();
    if p.ncols() != l || lambda_plus.nrows() != l || lambda_plus.ncols() != l {
        return Err(Error::Dimension(
            "kronecker oracle needs square P and Λ⁺ of equal size".into(),
        ));
    }
    if l > 64 {
        return Err(Error::InvalidParameter(format!(
            "kronecker oracle limited to L ≤ 64, got L = {l}"
        )));
    }
    let eye = Array2::<C64>::eye(l);
    let big = kron(&eye, p) + kron(&p.mapv(|z| z.conj()), &eye);
    // Column-major vec: entry (i, j) goes to position i + l·j.
    let mut b = Array1::<C64>::zeros(l * l);
    for j in 0..l {
        for i in 0..l {
            b[i + l * j] = lambda_plus[[i, j]];
        }
    }
    let x = solve_vec(&big, &b, "Kronecker-product Lyapunov matrix")?;
    let mut omega = Array2::<C64>::zeros((l, l));
    for j in 0..l {
        for i in 0..l {
            omega[[i, j]] = x[i + l * j];
        }
    }
    Ok(omega)
}

/// Dense single-site ladder operator a on a Fock space truncated at n_max.
fn fock_annihilator(n_max: usize) -> Array2<C64> {
    let d = n_max + 1;
    let mut a = Array2::<C64>::zeros((d, d));
    for n in 1..d {
        a[[n - 1, n]] = C64::new((n as f64).sqrt(), 0.0);
    }
    a
}

/// Site annihilation operators on the full L-mode truncated Fock space.
fn fock_site_ops(l: usize, n_max: usize) -> Vec<Array2<C64>> {
    let local = fock_annihilator(n_max);
    let d = n_max + 1;
    (0..l)
        .map(|site| {
            let mut op = Array2::<C64>::eye(1);
            for k in 0..l {
                let factor = if k == site {
                    local.clone()
                } else {
                    Array2::<C64>::eye(d)
                };
                op = kron(&op, &factor);
            }
            op
        })
        .collect()
}

/// Brute-force steady-state correlations in a truncated Fock space.
///
/// Builds the full Liouvillian superoperator for the master equation (the
/// +H.c. in the dissipator makes the effective jump rates 2Λ±), finds its
/// null vector by shifted inverse iteration, and reads off ⟨α†_i α_j⟩ from
/// the density matrix. Completely independent of the drift-matrix pipeline.
///
/// Refused when (n_max + 1)^(2L) exceeds the size budget, and fails after
/// the fact if any mode occupation comes within 1% of n_max (the truncation
/// would no longer be trustworthy).
pub fn truncated_fock_oracle(
    model: &QuadraticLindbladModel,
    n_max: usize,
) -> Result<Array2<C64>> {
    let report = validate_model(model)?;
    if !report.is_valid() {
        return Err(Error::InvalidParameter(report.violations.join("; ")));
    }
    if n_max == 0 {
        return Err(Error::FockOracle("n_max must be at least 1".into()));
    }
    let l = model.l;
    let d = (n_max + 1) as f64;
    let super_dim_f = d.powi(2 * l as i32);
    if super_dim_f > FOCK_DIM_BUDGET as f64 {
        return Err(Error::FockOracle(format!(
            "superoperator dimension (n_max+1)^(2L) = {super_dim_f:.0} exceeds budget {FOCK_DIM_BUDGET}; \
             reduce n_max or the number of modes"
        )));
    }
    let dim = (n_max + 1).pow(l as u32);
    let a = fock_site_ops(l, n_max);
    let ad: Vec<Array2<C64>> = a.iter().map(dagger).collect();

    let mut h_op = Array2::<C64>::zeros((dim, dim));
    for i in 0..l {
        for j in 0..l {
            let hij = model.h[[i, j]];
            if hij != C64::new(0.0, 0.0) {
                h_op = h_op + ad[i].dot(&a[j]).mapv(|z| hij * z);
            }
        }
    }

    let eye = Array2::<C64>::eye(dim);
    let minus_i = C64::new(0.0, -1.0);
    // vec(A ρ B) = (Bᵗ ⊗ A) vec(ρ), column-major.
    let mut s = kron(&eye, &h_op.mapv(|z| minus_i * z))
        + kron(&h_op.t().to_owned(), &eye).mapv(|z| -minus_i * z);
    for i in 0..l {
        for j in 0..l {
            // Gain: 2Λ⁺_ij (α†_i ρ α_j − ½{α_j α†_i, ρ}).
            let g = 2.0 * model.lambda_plus[[i, j]];
            if g != C64::new(0.0, 0.0) {
                let sandwich = kron(&a[j].t().to_owned(), &ad[i]);
                let anti = a[j].dot(&ad[i]);
                let term = sandwich
                    - kron(&eye, &anti).mapv(|z| 0.5 * z)
                    - kron(&anti.t().to_owned(), &eye).mapv(|z| 0.5 * z);
                s = s + term.mapv(|z| g * z);
            }
            // Loss: 2Λ⁻_ij (α_i ρ α†_j − ½{α†_j α_i, ρ}).
            let lo = 2.0 * model.lambda_minus[[i, j]];
            if lo != C64::new(0.0, 0.0) {
                let sandwich = kron(&ad[j].t().to_owned(), &a[i]);
                let anti = ad[j].dot(&a[i]);
                let term = sandwich
                    - kron(&eye, &anti).mapv(|z| 0.5 * z)
                    - kron(&anti.t().to_owned(), &eye).mapv(|z| 0.5 * z);
                s = s + term.mapv(|z| lo * z);
            }
        }
    }

    // Null vector by shifted inverse iteration, seeded with vec(I) (which
    // always overlaps the steady state since tr(ρ_ss) = 1 > 0).
    let shift = C64::new(1e-9, 0.0);
    for k in 0..dim * dim {
        s[[k, k]] -= shift;
    }
    let lu = s
        .factorize()
        .map_err(|_| Error::Singular("shifted Liouvillian superoperator"))?;
    let mut v = Array1::<C64>::zeros(dim * dim);
    for i in 0..dim {
        v[i + dim * i] = C64::new(1.0, 0.0);
    }
    let mut nrm = v.norm_l2();
    v.mapv_inplace(|z| z / nrm);
    for _ in 0..3 {
        v = lu
            .solve(&v)
            .map_err(|_| Error::Singular("inverse-iteration solve"))?;
        nrm = v.norm_l2();
        if !nrm.is_finite() || nrm == 0.0 {
            return Err(Error::Singular("inverse iteration diverged"));
        }
        v.mapv_inplace(|z| z / nrm);
    }
    let rho_raw = Array2::from_shape_vec((dim, dim).f(), v.to_vec())
        .expect("vector length matches dim²");
    let mut rho = (&rho_raw + &dagger(&rho_raw)).mapv(|z| 0.5 * z);
    let trace: C64 = (0..dim).map(|i| rho[[i, i]]).sum();
    if trace.norm() < 1e-14 {
        return Err(Error::Singular("steady-state density matrix has zero trace"));
    }
    rho.mapv_inplace(|z| z / trace);

    // Occupations must stay well below the truncation level.
    let mut o = Array2::<C64>::zeros((l, l));
    for i in 0..l {
        for j in 0..l {
            let op = ad[i].dot(&a[j]);
            let val: C64 = (0..dim)
                .map(|r| rho.row(r).dot(&op.column(r)))
                .sum();
            o[[i, j]] = val;
        }
    }
    for i in 0..l {
        let occ = o[[i, i]].re;
        if occ >= 0.99 * n_max as f64 {
            return Err(Error::FockOracle(format!(
                "mode {i} occupation {occ:.4} is within 1% of the truncation level n_max = {n_max}; \
                 increase n_max"
            )));
        }
    }
    Ok(o)
}

/// Mode occupations n_i = O_{ii}; fails on significantly negative values.
pub fn densities(ss: &SteadyStateCorrelations) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(ss.o.nrows());
    for i in 0..ss.o.nrows() {
        let n = ss.o[[i, i]].re;
        if n < -1e-8 {
            return Err(Error::Unphysical(format!(
                "density at mode {i} is negative: {n:.6e}"
            )));
        }
        out.push(n);
    }
    Ok(out)
}

/// Bond particle currents of the chain, J_l = 2 Re[i J O_{l,l+1}].
///
/// In the steady state all bonds carry the same current, fixed by the bath
/// balance J_1 = −2Γ₁(n̄₁ − ⟨n₁⟩) = 2Γ_L(n̄_L − ⟨n_L⟩).
pub fn chain_bond_currents(ss: &SteadyStateCorrelations, params: &ChainParams) -> Result<Vec<f64>> {
    if ss.o.nrows() != params.l {
        return Err(Error::Dimension(format!(
            "correlation matrix is {}x{} but chain has L = {}",
            ss.o.nrows(),
            ss.o.ncols(),
            params.l
        )));
    }
    let i = C64::new(0.0, 1.0);
    Ok((0..params.l - 1)
        .map(|l| 2.0 * (i * params.j * ss.o[[l, l + 1]]).re)
        .collect())
}

/// Leg-resolved currents of the flux ladder.
#[derive(Debug, Clone)]
pub struct CurrentProfile {
    /// Upper-leg bond currents J_{j,1}, j = 1..L−1.
    pub upper: Vec<f64>,
    /// Lower-leg bond currents J_{j,2}.
    pub lower: Vec<f64>,
    /// Chiral current J_c = (1/L) Σ_j (J_{j,1} − J_{j,2}).
    pub chiral: f64,
}

/// Compute leg currents J_{j,p} = 2 Re[i J∥ e^{i(−1)^{p+1}φπ/2} O_{(j,p),(j+1,p)}]
/// and the chiral current of the ladder.
pub fn leg_currents(ss: &SteadyStateCorrelations, params: &LadderParams) -> Result<CurrentProfile> {
    let map = SiteIndexMap::new(params.l);
    if ss.o.nrows() != 2 * params.l {
        return Err(Error::Dimension(format!(
            "correlation matrix is {}x{} but ladder has 2L = {}",
            ss.o.nrows(),
            ss.o.ncols(),
            2 * params.l
        )));
    }
    let i = C64::new(0.0, 1.0);
    let mut upper = Vec::with_capacity(params.l - 1);
    let mut lower = Vec::with_capacity(params.l - 1);
    for j in 1..params.l {
        for (p, acc) in [(1usize, &mut upper), (2usize, &mut lower)] {
            let sign = if p == 1 { 1.0 } else { -1.0 };
            let phase = C64::from_polar(1.0, sign * params.phi * std::f64::consts::PI / 2.0);
            let o = ss.o[[map.flat(j, p), map.flat(j + 1, p)]];
            acc.push(2.0 * (i * params.j_par * phase * o).re);
        }
    }
    let chiral = upper
        .iter()
        .zip(lower.iter())
        .map(|(u, d)| u - d)
        .sum::<f64>()
        / params.l as f64;
    Ok(CurrentProfile {
        upper,
        lower,
        chiral,
    })
}

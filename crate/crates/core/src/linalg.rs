//! Internal dense linear-algebra helpers shared across the crate.
//!
//! Everything here operates on `Array2<C64>` with LAPACK (via
//! `ndarray-linalg`) doing the heavy lifting. The matrix exponential uses
//! Higham's scaling-and-squaring Padé method; the matrix logarithm uses an
//! eigendecomposition with the principal branch, which is adequate for the
//! well-separated spectra produced by the steady-state transform.

use ndarray::{Array1, Array2, Axis};
use ndarray_linalg::{Eig, Inverse, Norm, OperationNorm, Solve, SVD};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Conjugate transpose A†.
pub fn dagger(a: &Array2<C64>) -> Array2<C64> {
    a.t().mapv(|z| z.conj())
}

/// Frobenius norm ‖A‖_F, the scale used for all relative tolerances.
pub fn fro(a: &Array2<C64>) -> f64 {
    a.opnorm_fro().expect("frobenius norm is always defined")
}

/// Relative deviation from Hermiticity, ‖A − A†‖_F / ‖A‖_F (0 for A = 0).
pub fn hermiticity_residual(a: &Array2<C64>) -> f64 {
    let scale = fro(a);
    if scale == 0.0 {
        return 0.0;
    }
    fro(&(a - &dagger(a))) / scale
}

/// Kronecker product A ⊗ B.
pub fn kron(a: &Array2<C64>, b: &Array2<C64>) -> Array2<C64> {
    let (ra, ca) = a.dim();
    let (rb, cb) = b.dim();
    let mut out = Array2::zeros((ra * rb, ca * cb));
    for i in 0..ra {
        for j in 0..ca {
            let aij = a[[i, j]];
            if aij == C64::new(0.0, 0.0) {
                continue;
            }
            let mut block = out.slice_mut(ndarray::s![i * rb..(i + 1) * rb, j * cb..(j + 1) * cb]);
            block.assign(&b.mapv(|x| aij * x));
        }
    }
    out
}

/// Spectral condition number σ_max/σ_min via SVD.
pub fn cond_2(a: &Array2<C64>) -> Result<f64> {
    let (_, s, _) = a.svd(false, false)?;
    let smax = s.iter().cloned().fold(0.0_f64, f64::max);
    let smin = s.iter().cloned().fold(f64::INFINITY, f64::min);
    if smin == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(smax / smin)
}

/// Matrix inverse, mapping backend failure to a singularity error.
pub fn inv(a: &Array2<C64>, context: &'static str) -> Result<Array2<C64>> {
    a.inv().map_err(|_| Error::Singular(context))
}

/// Eigendecomposition A = V diag(μ) V⁻¹ with eigenpairs sorted by
/// descending real part, ties broken by ascending imaginary part.
///
/// This ordering puts the slowest-decaying (least-negative real part) modes
/// first, which is the order used for rapidity reporting and CSV output.
pub fn eig_sorted(a: &Array2<C64>) -> Result<(Array1<C64>, Array2<C64>)> {
    let (vals, vecs) = a.eig()?;
    let mut order: Vec<usize> = (0..vals.len()).collect();
    order.sort_by(|&i, &j| {
        vals[j]
            .re
            .partial_cmp(&vals[i].re)
            .unwrap()
            .then(vals[i].im.partial_cmp(&vals[j].im).unwrap())
    });
    let sorted_vals = Array1::from_iter(order.iter().map(|&k| vals[k]));
    let mut sorted_vecs = Array2::zeros(vecs.dim());
    for (col, &k) in order.iter().enumerate() {
        let mut v = vecs.column(k).to_owned();
        // LAPACK returns unit-norm vectors; re-normalize to be safe and fix
        // the phase so the largest-magnitude entry is real positive. This
        // makes the eigenbasis deterministic up to the backend itself.
        let nrm = v.norm_l2();
        if nrm > 0.0 {
            v.mapv_inplace(|z| z / nrm);
        }
        let mut pivot = C64::new(0.0, 0.0);
        let mut best = -1.0;
        for &z in v.iter() {
            if z.norm() > best {
                best = z.norm();
                pivot = z;
            }
        }
        if best > 0.0 {
            let phase = pivot / pivot.norm();
            v.mapv_inplace(|z| z / phase);
        }
        sorted_vecs.column_mut(col).assign(&v);
    }
    Ok((sorted_vals, sorted_vecs))
}

/// 1-norm (maximum absolute column sum), used for exponential scaling.
fn norm_1(a: &Array2<C64>) -> f64 {
    a.axis_iter(Axis(1))
        .map(|col| col.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn eye(n: usize) -> Array2<C64> {
    Array2::eye(n)
}

/// Padé approximant of order (m, m) for exp(A); `b` are the coefficients.
fn pade_expm(a: &Array2<C64>, b: &[f64]) -> Result<Array2<C64>> {
    let n = a.nrows();
    let a2 = a.dot(a);
    // Even powers A^0, A^2, A^4, ... as needed by the degree.
    let mut pows = vec![eye(n), a2];
    while pows.len() < b.len() / 2 {
        let next = pows.last().unwrap().dot(&pows[1]);
        pows.push(next);
    }
    let mut u_inner = Array2::<C64>::zeros((n, n));
    let mut v = Array2::<C64>::zeros((n, n));
    for (k, p) in pows.iter().enumerate() {
        u_inner = u_inner + p.mapv(|z| z * b[2 * k + 1]);
        v = v + p.mapv(|z| z * b[2 * k]);
    }
    let u = a.dot(&u_inner);
    // exp(A) ≈ (V − U)⁻¹ (V + U)
    let denom = &v - &u;
    let numer = &v + &u;
    let dinv = denom
        .inv()
        .map_err(|_| Error::Singular("Padé denominator in matrix exponential"))?;
    Ok(dinv.dot(&numer))
}

/// Matrix exponential exp(A) by scaling-and-squaring with Padé approximants
/// (degrees 3/5/7/9/13 selected by the 1-norm of A).
pub fn expm(a: &Array2<C64>) -> Result<Array2<C64>> {
    const B3: [f64; 4] = [120., 60., 12., 1.];
    const B5: [f64; 6] = [30240., 15120., 3360., 420., 30., 1.];
    const B7: [f64; 8] = [17297280., 8648640., 1995840., 277200., 25200., 1512., 56., 1.];
    const B9: [f64; 10] = [
        17643225600.,
        8821612800.,
        2075673600.,
        302702400.,
        30270240.,
        2162160.,
        110880.,
        3960.,
        90.,
        1.,
    ];
    const B13: [f64; 14] = [
        64764752532480000.,
        32382376266240000.,
        7771770303897600.,
        1187353796428800.,
        129060195264000.,
        10559470521600.,
        670442572800.,
        33522128640.,
        1323241920.,
        40840800.,
        960960.,
        16380.,
        182.,
        1.,
    ];
    const THETA: [(f64, &[f64]); 4] = [
        (1.495585217958292e-2, &B3),
        (2.539398330063230e-1, &B5),
        (9.504178996162932e-1, &B7),
        (2.097847961257068e0, &B9),
    ];
    let nrm = norm_1(a);
    for (theta, b) in THETA {
        if nrm <= theta {
            return pade_expm(a, b);
        }
    }
    const THETA13: f64 = 5.371920351148152;
    let s = if nrm > THETA13 {
        (nrm / THETA13).log2().ceil() as u32
    } else {
        0
    };
    let scaled = a.mapv(|z| z / C64::new(2f64.powi(s as i32), 0.0));
    let mut x = pade_expm(&scaled, &B13)?;
    for _ in 0..s {
        x = x.dot(&x);
    }
    Ok(x)
}

/// Outcome of a principal-branch matrix logarithm.
pub struct MatrixLog {
    /// log(A) with every eigenvalue mapped by the principal branch.
    pub log: Array2<C64>,
    /// Smallest distance of any eigenvalue of A to the branch cut (the
    /// closed negative real axis); a warning-level diagnostic.
    pub branch_cut_distance: f64,
}

/// Principal matrix logarithm via eigendecomposition A = V diag(μ) V⁻¹,
/// log(A) = V diag(Log μ) V⁻¹.
///
/// Fails if A is singular or the eigenbasis is too ill-conditioned to trust
/// (cond(V) > 1e10, which signals a defective or nearly-defective input).
pub fn logm(a: &Array2<C64>) -> Result<MatrixLog> {
    const COND_LIMIT: f64 = 1e10;
    let (vals, vecs) = a.eig()?;
    let cond = cond_2(&vecs)?;
    if !cond.is_finite() || cond > COND_LIMIT {
        return Err(Error::NotDiagonalizable { cond });
    }
    let scale = vals.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut branch_cut_distance = f64::INFINITY;
    let mut logvals = Array1::<C64>::zeros(vals.len());
    for (k, &mu) in vals.iter().enumerate() {
        if mu.norm() <= 1e-14 * scale.max(1.0) {
            return Err(Error::Singular("matrix logarithm of a singular matrix"));
        }
        // Distance to the branch cut {x ≤ 0, Im = 0}.
        let dist = if mu.re < 0.0 { mu.im.abs() } else { mu.norm() };
        branch_cut_distance = branch_cut_distance.min(dist);
        logvals[k] = mu.ln();
    }
    let vinv = inv(&vecs, "eigenbasis in matrix logarithm")?;
    let mut scaled_cols = vecs.clone();
    for (k, mut col) in scaled_cols.columns_mut().into_iter().enumerate() {
        let lv = logvals[k];
        col.mapv_inplace(|z| z * lv);
    }
    Ok(MatrixLog {
        log: scaled_cols.dot(&vinv),
        branch_cut_distance,
    })
}

/// Solve A x = b for a single right-hand side.
pub fn solve_vec(a: &Array2<C64>, b: &Array1<C64>, context: &'static str) -> Result<Array1<C64>> {
    a.solve(b).map_err(|_| Error::Singular(context))
}

/// Globally greedy unique matching between two complex multisets.
///
/// Pairs are consumed in order of increasing |x_i − y_j| until one side is
/// exhausted; each element is used at most once. Returns `(pairs, leftover_x,
/// leftover_y)` where `pairs` is `(i, j, distance)`.
pub fn greedy_match(
    xs: &[C64],
    ys: &[C64],
) -> (Vec<(usize, usize, f64)>, Vec<usize>, Vec<usize>) {
    let mut edges: Vec<(f64, usize, usize)> = Vec::with_capacity(xs.len() * ys.len());
    for (i, &x) in xs.iter().enumerate() {
        for (j, &y) in ys.iter().enumerate() {
            edges.push(((x - y).norm(), i, j));
        }
    }
    edges.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let mut used_x = vec![false; xs.len()];
    let mut used_y = vec![false; ys.len()];
    let mut pairs = Vec::new();
    for (d, i, j) in edges {
        if !used_x[i] && !used_y[j] {
            used_x[i] = true;
            used_y[j] = true;
            pairs.push((i, j, d));
        }
    }
    let leftover_x = (0..xs.len()).filter(|&i| !used_x[i]).collect();
    let leftover_y = (0..ys.len()).filter(|&j| !used_y[j]).collect();
    (pairs, leftover_x, leftover_y)
}

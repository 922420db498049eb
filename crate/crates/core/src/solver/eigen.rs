use faer::linalg::solvers::DenseSolveCore;
use faer::linalg::triangular_solve::solve_lower_triangular_in_place;
use faer::prelude::*;
use faer::{c64, Mat, MatRef, Par, Side};
use serde::{Deserialize, Serialize};

use super::SolverOptions;
use crate::error::{Error, Result};

/// How the eigenpairs of -C⁻¹K are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EigenMethod {
    /// Symmetric route when K is symmetric, general otherwise.
    #[default]
    Auto,
    /// Always the dense nonsymmetric eigensolver on M = C⁻¹K.
    General,
}

/// -C⁻¹K = B diag(lambdas) B⁻¹.
#[derive(Debug, Clone)]
pub struct EigenFactorization {
    pub b: Mat<c64>,
    pub lambdas: Vec<c64>,
    pub b_inv: Mat<c64>,
    /// ‖B‖₁ ‖B⁻¹‖₁
    pub cond_estimate: f64,
    pub symmetric: bool,
}

impl EigenFactorization {
    /// (min, max) real parts of the eigenvalues.
    pub fn real_range(&self) -> (f64, f64) {
        self.lambdas
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), l| {
                (lo.min(l.re), hi.max(l.re))
            })
    }

    pub fn dim(&self) -> usize {
        self.lambdas.len()
    }
}

pub fn eigendecompose(
    c: &Mat<f64>,
    k: &Mat<f64>,
    opts: &SolverOptions,
) -> Result<EigenFactorization> {
    let n = c.nrows();
    if n == 0 || c.ncols() != n || k.nrows() != n || k.ncols() != n {
        return Err(Error::InvalidArgument(format!(
            "C is {}x{}, K is {}x{}",
            c.nrows(),
            c.ncols(),
            k.nrows(),
            k.ncols()
        )));
    }
    let llt = c
        .llt(Side::Lower)
        .map_err(|e| Error::SingularSystem(format!("C is not positive definite: {e:?}")))?;
    let m = llt.solve(k);
    let m_norm = max_abs(m.as_ref());
    if !m_norm.is_finite() {
        return Err(Error::EigenFailure("C⁻¹K has non-finite entries".into()));
    }

    let symmetric = opts.eigen_method == EigenMethod::Auto && is_symmetric(k);
    let (mut b, mut lambdas, b_inv) = if symmetric {
        symmetric_pairs(&llt, k)?
    } else {
        general_pairs(&m)?
    };

    // slowest mode first; conjugates adjacent
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        lambdas[j]
            .re
            .total_cmp(&lambdas[i].re)
            .then(lambdas[i].im.total_cmp(&lambdas[j].im))
    });
    let b_sorted = Mat::from_fn(n, n, |r, c| b[(r, order[c])]);
    let b_inv_sorted = Mat::from_fn(n, n, |r, c| b_inv[(order[r], c)]);
    lambdas = order.iter().map(|&i| lambdas[i]).collect();
    b = b_sorted;
    let b_inv = b_inv_sorted;

    let cond_estimate = norm1(b.as_ref()) * norm1(b_inv.as_ref());
    if !(cond_estimate <= opts.defect_cond_limit) {
        return Err(Error::Defective {
            cond: cond_estimate,
            limit: opts.defect_cond_limit,
        });
    }

    // (-M) B - B Λ
    let mc = Mat::from_fn(n, n, |r, c| c64::new(-m[(r, c)], 0.0));
    let mb = &mc * &b;
    let mut res = 0.0f64;
    for j in 0..n {
        for i in 0..n {
            res = res.max((mb[(i, j)] - b[(i, j)] * lambdas[j]).norm());
        }
    }
    if res > opts.eigen_residual_tol * m_norm {
        return Err(Error::EigenFailure(format!(
            "eigen residual {res:.3e} exceeds {:.1e}·‖M‖ = {:.3e}",
            opts.eigen_residual_tol,
            opts.eigen_residual_tol * m_norm
        )));
    }
    let bb = &b * &b_inv;
    let mut inv_res = 0.0f64;
    for j in 0..n {
        for i in 0..n {
            let target = if i == j { 1.0 } else { 0.0 };
            inv_res = inv_res.max((bb[(i, j)] - c64::new(target, 0.0)).norm());
        }
    }
    if inv_res > opts.eigen_residual_tol * cond_estimate {
        return Err(Error::EigenFailure(format!(
            "‖B B⁻¹ - I‖ = {inv_res:.3e} for cond {cond_estimate:.3e}"
        )));
    }

    if let Some(l) = lambdas.iter().find(|l| l.re > 1e-10) {
        log::warn!("unstable mode: eigenvalue {l} of -C⁻¹K has positive real part");
    }
    Ok(EigenFactorization {
        b,
        lambdas,
        b_inv,
        cond_estimate,
        symmetric,
    })
}

/// S = L⁻¹ K L⁻ᵀ = Q Θ Qᵀ gives B = L⁻ᵀ Q, B⁻¹ = Qᵀ Lᵀ, Λ = -Θ.
fn symmetric_pairs(
    llt: &faer::linalg::solvers::Llt<f64>,
    k: &Mat<f64>,
) -> Result<(Mat<c64>, Vec<c64>, Mat<c64>)> {
    let n = k.nrows();
    let l = llt.L();
    let mut y = k.clone();
    solve_lower_triangular_in_place(l, y.as_mut(), Par::Seq);
    let mut s = y.transpose().to_owned();
    solve_lower_triangular_in_place(l, s.as_mut(), Par::Seq);
    let s = Mat::from_fn(n, n, |i, j| 0.5 * (s[(i, j)] + s[(j, i)]));
    let evd = s
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::EigenFailure(format!("symmetric eigensolver: {e:?}")))?;
    let q = evd.U();
    let theta = evd.S().column_vector();
    // L⁻ᵀ Q: solve Lᵀ X = Q
    let mut x = q.to_owned();
    faer::linalg::triangular_solve::solve_upper_triangular_in_place(
        l.transpose(),
        x.as_mut(),
        Par::Seq,
    );
    let b_inv_real = q.transpose() * l.transpose();
    let b = Mat::from_fn(n, n, |i, j| c64::new(x[(i, j)], 0.0));
    let b_inv = Mat::from_fn(n, n, |i, j| c64::new(b_inv_real[(i, j)], 0.0));
    let lambdas = (0..n).map(|i| c64::new(-theta[i], 0.0)).collect();
    Ok((b, lambdas, b_inv))
}

fn general_pairs(m: &Mat<f64>) -> Result<(Mat<c64>, Vec<c64>, Mat<c64>)> {
    let n = m.nrows();
    let neg = Mat::from_fn(n, n, |i, j| -m[(i, j)]);
    let evd = neg
        .eigen()
        .map_err(|e| Error::EigenFailure(format!("nonsymmetric eigensolver: {e:?}")))?;
    let mut b = evd.U().to_owned();
    let s = evd.S().column_vector();
    let lambdas: Vec<c64> = (0..n).map(|i| s[i]).collect();
    for j in 0..n {
        let norm = (0..n).map(|i| b[(i, j)].norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::EigenFailure(format!(
                "eigenvector {j} has norm {norm}"
            )));
        }
        for i in 0..n {
            b[(i, j)] /= norm;
        }
    }
    let b_inv = b.partial_piv_lu().inverse();
    Ok((b, lambdas, b_inv))
}

fn is_symmetric(k: &Mat<f64>) -> bool {
    let scale = max_abs(k.as_ref());
    let n = k.nrows();
    (0..n).all(|i| (0..i).all(|j| (k[(i, j)] - k[(j, i)]).abs() <= 1e-14 * scale))
}

fn max_abs(m: MatRef<'_, f64>) -> f64 {
    let mut out = 0.0f64;
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            out = out.max(m[(i, j)].abs());
        }
    }
    out
}

fn norm1(m: MatRef<'_, c64>) -> f64 {
    (0..m.ncols())
        .map(|j| (0..m.nrows()).map(|i| m[(i, j)].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

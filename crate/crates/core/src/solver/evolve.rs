use faer::c64;
use serde::{Deserialize, Serialize};

use super::{check_gamma, EigenFactorization, SolverOptions};
use crate::assembly::ReducedRelaxation;
use crate::error::{Error, Result};
use crate::specfun::mittag_leffler;

/// Nodal values (Dirichlet nodes included) at each requested time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionSeries {
    pub times: Vec<f64>,
    pub values: Vec<Vec<f64>>,
    pub gamma: f64,
}

impl SolutionSeries {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Index of the stored time equal to `t` within 1e-12 relative.
    pub fn index_of(&self, t: f64) -> Option<usize> {
        self.times
            .iter()
            .position(|&s| (s - t).abs() <= 1e-12 * t.abs().max(1.0))
    }

    /// Time history of one node.
    pub fn node_history(&self, node: usize) -> Vec<f64> {
        self.values.iter().map(|v| v[node]).collect()
    }
}

/// Ũ_t = B diag(E_γ(Λ_i t^γ)) B⁻¹ Ũ₀, mapped back to nodal values.
pub fn evolve(
    fact: &EigenFactorization,
    reduced: &ReducedRelaxation,
    gamma: f64,
    times: &[f64],
    opts: &SolverOptions,
) -> Result<SolutionSeries> {
    check_gamma(gamma)?;
    let n = fact.dim();
    if reduced.u0_tilde.len() != n {
        return Err(Error::InvalidArgument(format!(
            "factorization has {n} modes, reduced system has {} free dofs",
            reduced.u0_tilde.len()
        )));
    }
    if let Some(t) = times.iter().find(|t| !(t.is_finite() && **t >= 0.0)) {
        return Err(Error::InvalidArgument(format!(
            "evaluation time must be finite and >= 0, got {t}"
        )));
    }
    let w: Vec<c64> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| fact.b_inv[(i, j)] * reduced.u0_tilde[j])
                .sum()
        })
        .collect();

    let mut values = Vec::with_capacity(times.len());
    for &t in times {
        if t == 0.0 {
            values.push(reduced.u0_full.clone());
            continue;
        }
        let tg = t.powf(gamma);
        let mut coef = Vec::with_capacity(n);
        for (l, wi) in fact.lambdas.iter().zip(&w) {
            coef.push(mittag_leffler(gamma, l * tg, &opts.ml)? * wi);
        }
        let mut u = vec![0.0; n];
        let mut max_im = 0.0f64;
        let mut max_abs = 0.0f64;
        for (r, ur) in u.iter_mut().enumerate() {
            let z: c64 = (0..n).map(|i| fact.b[(r, i)] * coef[i]).sum();
            max_im = max_im.max(z.im.abs());
            max_abs = max_abs.max(z.norm());
            *ur = z.re;
        }
        if max_im > opts.imag_residue_tol * max_abs {
            return Err(Error::ImaginaryResidue {
                residue: max_im,
                tolerance: opts.imag_residue_tol * max_abs,
            });
        }
        let e_b = reduced.dirichlet.time_factor(gamma, t, &opts.ml)?;
        values.push(reduced.reconstruct(&u, e_b));
    }
    Ok(SolutionSeries {
        times: times.to_vec(),
        values,
        gamma,
    })
}

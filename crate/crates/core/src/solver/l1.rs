use faer::prelude::*;
use faer::Mat;

use super::{check_gamma, SolutionSeries};
use crate::assembly::{DirichletMode, GlobalSystem};
use crate::error::{Error, Result};
use crate::specfun::{gamma_fn, mittag_leffler_real, MLConfig};

/// Right-hand side F(t) = constant + g E_γ(-λ t^γ).
#[derive(Debug, Clone, Default)]
pub struct Forcing {
    pub constant: Vec<f64>,
    pub separable: Option<(Vec<f64>, f64)>,
}

/// L1 weights b_j = (j+1)^{1-γ} - j^{1-γ}.
fn l1_weights(n: usize, gamma: f64) -> Vec<f64> {
    let p = 1.0 - gamma;
    (0..n)
        .map(|j| {
            if j == 0 {
                1.0
            } else {
                (j as f64 + 1.0).powf(p) - (j as f64).powf(p)
            }
        })
        .collect()
}

/// L1 approximation of the Caputo derivative at t_1..t_N from uniform samples
/// u(t_0..t_N).
pub fn l1_caputo_derivative(samples: &[f64], dt: f64, gamma: f64) -> Result<Vec<f64>> {
    check_gamma(gamma)?;
    let a0 = dt.powf(-gamma) / gamma_fn(2.0 - gamma)?;
    let b = l1_weights(samples.len(), gamma);
    Ok((1..samples.len())
        .map(|n| {
            a0 * (0..n)
                .map(|j| b[j] * (samples[n - j] - samples[n - j - 1]))
                .sum::<f64>()
        })
        .collect())
}

/// Steps C D^γu + K u = F(t) from u(0) = u0 with the L1 scheme. Returns the
/// free-dof state at t = 0, dt, ..., round(t_end/dt)·dt.
pub fn l1_oracle(
    c: &Mat<f64>,
    k: &Mat<f64>,
    u0: &[f64],
    gamma: f64,
    dt: f64,
    t_end: f64,
    forcing: &Forcing,
    ml: &MLConfig,
) -> Result<SolutionSeries> {
    check_gamma(gamma)?;
    if !(dt > 0.0 && dt.is_finite() && t_end >= 0.0 && t_end.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "need dt > 0 and t_end >= 0, got dt={dt}, t_end={t_end}"
        )));
    }
    let n = c.nrows();
    if u0.len() != n || k.nrows() != n {
        return Err(Error::InvalidArgument(
            "dimension mismatch in l1_oracle".into(),
        ));
    }
    let steps = (t_end / dt).round() as usize;
    let a0 = dt.powf(-gamma) / gamma_fn(2.0 - gamma)?;
    let b = l1_weights(steps + 1, gamma);
    let a = c * faer::Scale(a0) + k;
    let lu = a.partial_piv_lu();
    let u = lu.U();
    let (mut dmin, mut dmax) = (f64::INFINITY, 0.0f64);
    for i in 0..n {
        dmin = dmin.min(u[(i, i)].abs());
        dmax = dmax.max(u[(i, i)].abs());
    }
    if !(dmin > 1e-14 * dmax) {
        return Err(Error::SingularSystem(
            "L1 step matrix a0·C + K is singular".into(),
        ));
    }

    let mut states: Vec<Vec<f64>> = vec![u0.to_vec()];
    let mut diffs: Vec<Vec<f64>> = Vec::with_capacity(steps);
    let mut times = vec![0.0];
    for step in 1..=steps {
        let t = step as f64 * dt;
        // history H = Σ_{j>=1} b_j (u_{n-j} - u_{n-j-1}); diffs[m-1] = u_m - u_{m-1}
        let mut h = vec![0.0; n];
        for j in 1..step {
            let d = &diffs[step - j - 1];
            let bj = b[j];
            for (hi, di) in h.iter_mut().zip(d) {
                *hi += bj * di;
            }
        }
        let prev = &states[step - 1];
        let mut rhs = Mat::<f64>::from_fn(n, 1, |i, _| prev[i] - h[i]);
        rhs = c * &rhs * faer::Scale(a0);
        for i in 0..n {
            rhs[(i, 0)] += forcing.constant.get(i).copied().unwrap_or(0.0);
        }
        if let Some((g, lambda)) = &forcing.separable {
            let e = mittag_leffler_real(gamma, -lambda * t.powf(gamma), ml)?;
            for i in 0..n {
                rhs[(i, 0)] += g[i] * e;
            }
        }
        let x = lu.solve(&rhs);
        let next: Vec<f64> = (0..n).map(|i| x[(i, 0)]).collect();
        diffs.push(next.iter().zip(prev).map(|(a, b)| a - b).collect());
        states.push(next);
        times.push(t);
    }
    Ok(SolutionSeries {
        times,
        values: states,
        gamma,
    })
}

/// L1 run on an assembled system with Dirichlet data moved to the right-hand
/// side: F - K̄Ū(t) - C̄ D^γŪ(t). Returns nodal values.
pub fn l1_solve_system(
    system: &GlobalSystem,
    u0_full: &[f64],
    gamma: f64,
    dt: f64,
    t_end: f64,
    ml: &MLConfig,
) -> Result<SolutionSeries> {
    let map = &system.dof_map;
    let ub = &system.dirichlet.values;
    let kbar_u: Vec<f64> = (0..map.free.len())
        .map(|i| (0..ub.len()).map(|j| system.k_bar[(i, j)] * ub[j]).sum())
        .collect();
    let forcing = match system.dirichlet.mode {
        DirichletMode::Constant => Forcing {
            constant: system.f.iter().zip(&kbar_u).map(|(f, k)| f - k).collect(),
            separable: None,
        },
        DirichletMode::Separable { rate } => {
            let g = (0..map.free.len())
                .map(|i| {
                    rate * (0..ub.len())
                        .map(|j| system.c_bar[(i, j)] * ub[j])
                        .sum::<f64>()
                        - kbar_u[i]
                })
                .collect();
            Forcing {
                constant: system.f.clone(),
                separable: Some((g, rate)),
            }
        }
    };
    let free = l1_oracle(
        &system.c,
        &system.k,
        &map.restrict(u0_full),
        gamma,
        dt,
        t_end,
        &forcing,
        ml,
    )?;
    let mut values = Vec::with_capacity(free.len());
    for (i, (&t, v)) in free.times.iter().zip(&free.values).enumerate() {
        if i == 0 {
            values.push(u0_full.to_vec());
            continue;
        }
        let e_b = system.dirichlet.time_factor(gamma, t, ml)?;
        let fixed: Vec<f64> = ub.iter().map(|u| u * e_b).collect();
        values.push(map.expand(v, &fixed));
    }
    Ok(SolutionSeries {
        times: free.times,
        values,
        gamma,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_relaxation_matches_mittag_leffler() {
        let one = Mat::from_fn(1, 1, |_, _| 1.0);
        let ml = MLConfig::default();
        let s = l1_oracle(&one, &one, &[1.0], 0.8, 1e-3, 1.0, &Forcing::default(), &ml).unwrap();
        let exact = mittag_leffler_real(0.8, -1.0, &ml).unwrap();
        assert_eq!(s.len(), 1001);
        assert!((s.values[1000][0] - exact).abs() < 5e-4);
    }

    #[test]
    fn gamma_one_is_backward_euler() {
        let b = l1_weights(5, 1.0);
        assert_eq!(b, vec![1.0, 0.0, 0.0, 0.0, 0.0]);
        let one = Mat::from_fn(1, 1, |_, _| 1.0);
        let s = l1_oracle(
            &one,
            &one,
            &[1.0],
            1.0,
            0.1,
            0.3,
            &Forcing::default(),
            &MLConfig::default(),
        )
        .unwrap();
        for (i, v) in s.values.iter().enumerate() {
            assert!((v[0] - (1.0f64 / 1.1).powi(i as i32)).abs() < 1e-15);
        }
    }

    #[test]
    fn caputo_of_power_law() {
        // D^γ t = t^{1-γ}/Γ(2-γ): the L1 scheme is exact on linear data
        let dt = 0.01;
        let samples: Vec<f64> = (0..=100).map(|i| i as f64 * dt).collect();
        let d = l1_caputo_derivative(&samples, dt, 0.6).unwrap();
        let g = gamma_fn(1.4).unwrap();
        for (n, v) in d.iter().enumerate() {
            let t: f64 = (n + 1) as f64 * dt;
            assert!((v - t.powf(0.4) / g).abs() < 1e-12);
        }
    }

    #[test]
    fn bad_inputs() {
        let one = Mat::from_fn(1, 1, |_, _| 1.0);
        let ml = MLConfig::default();
        assert!(l1_oracle(&one, &one, &[1.0], 0.8, 0.0, 1.0, &Forcing::default(), &ml).is_err());
        assert!(l1_oracle(&one, &one, &[1.0], 1.2, 0.1, 1.0, &Forcing::default(), &ml).is_err());
        let zero = Mat::<f64>::zeros(1, 1);
        // a0·C + K = 0
        let err = l1_oracle(
            &zero,
            &zero,
            &[1.0],
            1.0,
            1.0,
            1.0,
            &Forcing::default(),
            &ml,
        )
        .unwrap_err();
        assert!(matches!(err, Error::SingularSystem(_)));
    }
}

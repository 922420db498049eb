use super::cases::BenchmarkCase;
use crate::error::{Error, Result};
use crate::mesh::Mesh;
use crate::problem::Simulation;
use crate::solver::{SolutionSeries, SolverOptions};
use crate::specfun::MLConfig;

fn values_at(numeric: &SolutionSeries, t: f64) -> Result<&[f64]> {
    numeric
        .index_of(t)
        .map(|i| numeric.values[i].as_slice())
        .ok_or_else(|| Error::InvalidArgument(format!("time {t} is not in the solution series")))
}

/// |(u_exact - u_h) / u_exact| at `probe`, interpolating u_h with the shape
/// functions.
pub fn normalized_error(
    case: &BenchmarkCase,
    mesh: &Mesh,
    numeric: &SolutionSeries,
    probe: [f64; 2],
    t: f64,
    ml: &MLConfig,
) -> Result<f64> {
    let exact = case.exact_solution(probe, t, numeric.gamma, ml)?;
    if exact == 0.0 {
        return Err(Error::DivisionByZero);
    }
    let u = mesh.interpolate(values_at(numeric, t)?, probe)?;
    Ok(((exact - u) / exact).abs())
}

/// max over nodes of |u_exact - u_h| at time t.
pub fn linf_error(
    case: &BenchmarkCase,
    mesh: &Mesh,
    numeric: &SolutionSeries,
    t: f64,
    ml: &MLConfig,
) -> Result<f64> {
    let u = values_at(numeric, t)?;
    let mut worst = 0.0f64;
    for (node, v) in mesh.nodes.iter().zip(u) {
        worst = worst.max((case.exact_solution(node.coords, t, numeric.gamma, ml)? - v).abs());
    }
    Ok(worst)
}

/// log(e1/e2) / log(h1/h2).
pub fn convergence_ratio(e1: f64, e2: f64, h1: f64, h2: f64) -> Result<f64> {
    if !(e1 > 0.0 && e2 > 0.0 && h1 > 0.0 && h2 > 0.0) || h1 == h2 {
        return Err(Error::InvalidArgument(format!(
            "convergence ratio needs positive errors and distinct positive spacings, got e=({e1}, {e2}), h=({h1}, {h2})"
        )));
    }
    Ok((e1 / e2).ln() / (h1 / h2).ln())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub h: f64,
    pub error: f64,
    pub ratio: Option<f64>,
}

/// L∞ errors at time t over a ladder of cases (coarse to fine).
pub fn convergence_study(
    cases: &[BenchmarkCase],
    gamma: f64,
    t: f64,
    opts: &SolverOptions,
) -> Result<Vec<ConvergenceRow>> {
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(cases.len());
    for case in cases {
        let sim = Simulation::new(case.problem()?, gamma, opts.clone())?;
        let series = sim.evaluate(&[t])?;
        let error = linf_error(case, sim.mesh(), &series, t, &opts.ml)?;
        let h = case.spacing();
        let ratio = match rows.last() {
            Some(prev) => Some(convergence_ratio(prev.error, error, prev.h, h)?),
            None => None,
        };
        rows.push(ConvergenceRow { h, error, ratio });
    }
    Ok(rows)
}

//! CSV reproductions of the verification tables.

use super::cases::BenchmarkCase;
use super::metrics::{convergence_study, normalized_error};
use crate::error::{Error, Result};
use crate::problem::Simulation;
use crate::solver::SolverOptions;
use crate::specfun::{mittag_leffler_real, MLConfig};

/// Probe points of the quarter-disk comparison.
pub const TABLE6_POINTS: [[f64; 2]; 8] = [
    [0.0, 0.0],
    [0.35355, 0.35355],
    [0.21339, 0.21339],
    [0.42678, 0.17678],
    [0.67533, 0.27973],
    [0.53033, 0.53033],
    [0.27973, 0.67533],
    [0.17678, 0.42678],
];

/// Value of the exact solution at the disk center used to recover the probe time.
const TABLE6_CENTER_VALUE: f64 = 0.38695;

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn cell(&self, row: usize, col: usize) -> Option<f64> {
        self.rows
            .get(row)
            .and_then(|r| r.get(col))
            .copied()
            .flatten()
    }

    /// Header row, '.' decimals, LF endings, empty cells for missing values.
    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| c.map(fmt_num).unwrap_or_default())
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

fn fmt_num(v: f64) -> String {
    if v == 0.0 || (1e-3..1e6).contains(&v.abs()) {
        format!("{v}")
    } else {
        format!("{v:.10e}")
    }
}

fn normalized_errors(
    case: &BenchmarkCase,
    gamma: f64,
    times: &[f64],
    opts: &SolverOptions,
) -> Result<Vec<f64>> {
    let sim = Simulation::new(case.problem()?, gamma, opts.clone())?;
    let series = sim.evaluate(times)?;
    times
        .iter()
        .map(|&t| {
            if t == 0.0 {
                Ok(0.0)
            } else {
                normalized_error(case, sim.mesh(), &series, case.probe(), t, &opts.ml)
            }
        })
        .collect()
}

/// Diffusion 1D, normalized error at x = L/2 for t = 0, 0.1, ..., 0.9.
pub fn table1(gamma: f64, opts: &SolverOptions) -> Result<Table> {
    let times: Vec<f64> = (0..10).map(|i| i as f64 / 10.0).collect();
    let cols = [
        normalized_errors(&BenchmarkCase::diffusion_1d(10, 1), gamma, &times, opts)?,
        normalized_errors(&BenchmarkCase::diffusion_1d(10, 2), gamma, &times, opts)?,
        normalized_errors(&BenchmarkCase::diffusion_1d(100, 1), gamma, &times, opts)?,
    ];
    let mut table = Table::new(&["t", "linear_h=L/10", "quadratic_h=L/10", "linear_h=L/100"]);
    for (i, &t) in times.iter().enumerate() {
        table.rows.push(vec![
            Some(t),
            Some(cols[0][i]),
            Some(cols[1][i]),
            Some(cols[2][i]),
        ]);
    }
    Ok(table)
}

fn spacing_table(
    cases: &[(String, BenchmarkCase)],
    gamma: f64,
    times: &[f64],
    opts: &SolverOptions,
) -> Result<Table> {
    let mut header = vec!["h".to_string()];
    header.extend(times.iter().map(|t| format!("t={t}")));
    let mut table = Table {
        header,
        rows: Vec::new(),
    };
    for (_, case) in cases {
        let mut row = vec![Some(case.spacing())];
        row.extend(
            normalized_errors(case, gamma, times, opts)?
                .into_iter()
                .map(Some),
        );
        table.rows.push(row);
    }
    Ok(table)
}

/// Advection-dispersion 1D (linear elements), normalized error at x = L/2.
pub fn table2(gamma: f64, opts: &SolverOptions) -> Result<Table> {
    let cases: Vec<_> = [10, 20, 40]
        .iter()
        .map(|&n| {
            (
                format!("L/{n}"),
                BenchmarkCase::advection_dispersion_1d(n, 1),
            )
        })
        .collect();
    spacing_table(&cases, gamma, &[2.0, 4.0, 6.0, 8.0], opts)
}

/// Diffusion 1D, L∞ errors and ratios at t for h = L/10 ... L/160.
pub fn table3(gamma: f64, t: f64, opts: &SolverOptions) -> Result<Table> {
    let ladder = [10, 20, 40, 80, 160];
    let lin: Vec<_> = ladder
        .iter()
        .map(|&n| BenchmarkCase::diffusion_1d(n, 1))
        .collect();
    let quad: Vec<_> = ladder
        .iter()
        .map(|&n| BenchmarkCase::diffusion_1d(n, 2))
        .collect();
    let lin = convergence_study(&lin, gamma, t, opts)?;
    let quad = convergence_study(&quad, gamma, t, opts)?;
    let mut table = Table::new(&[
        "h",
        "linf_linear",
        "ratio_linear",
        "linf_quadratic",
        "ratio_quadratic",
    ]);
    for (l, q) in lin.iter().zip(&quad) {
        table.rows.push(vec![
            Some(l.h),
            Some(l.error),
            l.ratio,
            Some(q.error),
            q.ratio,
        ]);
    }
    Ok(table)
}

/// Diffusion 1D, h = L/100, long-time normalized errors (rows: linear, quadratic).
pub fn table4(gamma: f64, opts: &SolverOptions) -> Result<Table> {
    let times = [10.0, 100.0, 1000.0, 10000.0];
    let mut table = Table::new(&["order", "t=10", "t=100", "t=1000", "t=10000"]);
    for order in [1, 2] {
        let mut row = vec![Some(order as f64)];
        let case = BenchmarkCase::diffusion_1d(100, order);
        row.extend(
            normalized_errors(&case, gamma, &times, opts)?
                .into_iter()
                .map(Some),
        );
        table.rows.push(row);
    }
    Ok(table)
}

/// Diffusion 2D (bilinear squares), normalized error at the center.
pub fn table5(gamma: f64, opts: &SolverOptions) -> Result<Table> {
    let cases: Vec<_> = [4, 8, 16]
        .iter()
        .map(|&n| (format!("L/{n}"), BenchmarkCase::diffusion_2d(n)))
        .collect();
    spacing_table(&cases, gamma, &[2.0, 4.0, 6.0, 8.0], opts)
}

/// Time at which E_γ(-t^γ) equals the tabulated center value.
pub fn quarter_disk_probe_time(gamma: f64, ml: &MLConfig) -> Result<f64> {
    let f = |t: f64| -> Result<f64> {
        Ok(mittag_leffler_real(gamma, -t.powf(gamma), ml)? - TABLE6_CENTER_VALUE)
    };
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while f(hi)? > 0.0 {
        hi *= 2.0;
        if hi > 1e6 {
            return Err(Error::NonConvergence("probe time bracket".into()));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Quarter disk at the probe points: 3-element, 48-element and exact columns.
/// The 3-element column is filled only where the point is a mesh node.
pub fn table6(gamma: f64, opts: &SolverOptions) -> Result<(f64, Table)> {
    let t = quarter_disk_probe_time(gamma, &opts.ml)?;
    let coarse_case = BenchmarkCase::quarter_disk(0);
    let fine_case = BenchmarkCase::quarter_disk(2);
    let coarse = Simulation::new(coarse_case.problem()?, gamma, opts.clone())?;
    let fine = Simulation::new(fine_case.problem()?, gamma, opts.clone())?;
    let uc = coarse.evaluate(&[t])?.values.remove(0);
    let uf = fine.evaluate(&[t])?.values.remove(0);
    let mut table = Table::new(&["x", "y", "elements_3", "elements_48", "exact"]);
    for p in TABLE6_POINTS {
        let c = coarse.mesh().find_node(p, 1e-5).map(|n| uc[n]);
        let f = fine.mesh().interpolate(&uf, p)?;
        let exact = fine_case.exact_solution(p, t, gamma, &opts.ml)?;
        table
            .rows
            .push(vec![Some(p[0]), Some(p[1]), c, Some(f), Some(exact)]);
    }
    Ok((t, table))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn probe_time_solves_center_equation() {
        let ml = MLConfig::default();
        let t = quarter_disk_probe_time(0.8, &ml).unwrap();
        let v = mittag_leffler_real(0.8, -t.powf(0.8), &ml).unwrap();
        assert!((v - TABLE6_CENTER_VALUE).abs() < 1e-12);
        assert!((t - 1.0).abs() < 1e-3, "{t}");
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new(&["h", "e", "r"]);
        t.rows.push(vec![Some(0.5), Some(1.25e-11), None]);
        assert_eq!(t.to_csv(), "h,e,r\n0.5,1.2500000000e-11,\n");
    }
}

//! A discretized problem and its factorized relaxation system.

use crate::assembly::{
    assemble_with_order, reduce, BoundaryConditions, GlobalSystem, ReducedRelaxation,
};
use crate::elements::CoefficientField;
use crate::error::{Error, Result};
use crate::mesh::Mesh;
use crate::solver::{
    eigendecompose, evolve, l1_solve_system, EigenFactorization, SolutionSeries, SolverOptions,
};

#[derive(Debug, Clone)]
pub struct Problem {
    pub mesh: Mesh,
    pub coeffs: CoefficientField,
    pub bcs: BoundaryConditions,
    /// Initial nodal values.
    pub u0: Vec<f64>,
    /// Overrides the per-element default Gauss order.
    pub quadrature_order: Option<usize>,
}

/// Assembled, reduced and eigen-factorized problem. Immutable; `evaluate`
/// may be called from several threads.
#[derive(Debug, Clone)]
pub struct Simulation {
    pub problem: Problem,
    pub gamma: f64,
    pub opts: SolverOptions,
    pub system: GlobalSystem,
    pub reduced: ReducedRelaxation,
    pub fact: EigenFactorization,
}

impl Simulation {
    pub fn new(problem: Problem, gamma: f64, opts: SolverOptions) -> Result<Self> {
        if !(gamma > 0.0 && gamma <= 1.0) {
            return Err(Error::InvalidOrder(gamma));
        }
        opts.validate()?;
        let system = assemble_with_order(
            &problem.mesh,
            &problem.coeffs,
            &problem.bcs,
            problem.quadrature_order,
        )?;
        let reduced = reduce(&system, &problem.u0)?;
        let fact = eigendecompose(&reduced.c, &reduced.k, &opts)?;
        log::debug!(
            "factorized {} free dofs, eigenvalue real parts in [{:.4e}, {:.4e}], cond {:.3e}",
            fact.dim(),
            fact.real_range().0,
            fact.real_range().1,
            fact.cond_estimate
        );
        Ok(Self {
            problem,
            gamma,
            opts,
            system,
            reduced,
            fact,
        })
    }

    pub fn evaluate(&self, times: &[f64]) -> Result<SolutionSeries> {
        evolve(&self.fact, &self.reduced, self.gamma, times, &self.opts)
    }

    /// Same problem stepped with the L1 scheme.
    pub fn l1_reference(&self, dt: f64, t_end: f64) -> Result<SolutionSeries> {
        l1_solve_system(
            &self.system,
            &self.problem.u0,
            self.gamma,
            dt,
            t_end,
            &self.opts.ml,
        )
    }

    pub fn mesh(&self) -> &Mesh {
        &self.problem.mesh
    }
}

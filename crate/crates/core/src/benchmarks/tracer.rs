use std::collections::BTreeSet;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::assembly::{BoundaryConditions, DirichletSpec};
use crate::elements::{CoefficientField, Field};
use crate::error::{Error, Result};
use crate::mesh::{generate_interval, Mesh, TAG_DIRICHLET, TAG_NEUMANN};
use crate::problem::{Problem, Simulation};
use crate::solver::SolverOptions;

/// Which of the two dispersion relations couples v0 and d0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DispersionRelation {
    /// d0 = a·v0
    #[default]
    DFromV,
    /// v0 = a·d0
    VFromD,
}

/// Radial tracer test between an injection well at r = r_c - R_i and an
/// extraction well of center r_c; the domain is r ∈ [0, R_e].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TracerScenario {
    /// Injected mass [kg].
    pub mass: f64,
    /// Injection period [d].
    pub t0: f64,
    pub r_i: f64,
    pub r_e: f64,
    pub r_c: f64,
    /// Screened interval [m].
    pub b: f64,
    pub theta: f64,
    /// Advection coefficient; defaults to 0.0564/θ when absent.
    pub v0: Option<f64>,
    pub dispersivity: f64,
    pub relation: DispersionRelation,
    /// Pumping rate [m³/d], informational.
    pub q_pump: f64,
    pub gamma: f64,
}

impl Default for TracerScenario {
    fn default() -> Self {
        Self {
            mass: 20.81,
            t0: 3.54,
            r_i: 30.0,
            r_e: 60.0,
            r_c: 60.127,
            b: 35.0,
            theta: 0.023,
            v0: None,
            dispersivity: 6.8,
            relation: DispersionRelation::DFromV,
            q_pump: 12.4,
            gamma: 0.92,
        }
    }
}

impl TracerScenario {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("mass", self.mass),
            ("t0", self.t0),
            ("r_i", self.r_i),
            ("r_e", self.r_e),
            ("r_c", self.r_c),
            ("b", self.b),
            ("theta", self.theta),
            ("dispersivity", self.dispersivity),
            ("q_pump", self.q_pump),
            ("v0", self.v0()),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "tracer `{name}` must be positive, got {v}"
                )));
            }
        }
        if !(self.r_i < self.r_e && self.r_e < self.r_c) {
            return Err(Error::InvalidArgument(format!(
                "tracer radii must satisfy r_i < r_e < r_c, got {} / {} / {}",
                self.r_i, self.r_e, self.r_c
            )));
        }
        if !(self.gamma > 0.0 && self.gamma <= 1.0) {
            return Err(Error::InvalidOrder(self.gamma));
        }
        Ok(())
    }

    pub fn v0(&self) -> f64 {
        self.v0.unwrap_or(0.0564 / self.theta)
    }

    pub fn d0(&self) -> f64 {
        match self.relation {
            DispersionRelation::DFromV => self.dispersivity * self.v0(),
            DispersionRelation::VFromD => self.v0() / self.dispersivity,
        }
    }

    /// Position of the injection well on the r axis.
    pub fn source_position(&self) -> f64 {
        self.r_c - self.r_i
    }

    /// ∫ f dr for the initial pulse f = M δ(r - (r_c - R_i)) / (2π (r_c - R_i) b θ T₀).
    pub fn pulse_strength(&self) -> f64 {
        self.mass / (2.0 * PI * self.source_position() * self.b * self.theta * self.t0)
    }
}

/// Line3 mesh on [0, R_e], zero concentration at r = 0, no diffusive flux at
/// r = R_e, and the initial pulse projected onto the mesh.
pub fn tracer_setup(scenario: &TracerScenario, n_elems: usize) -> Result<Problem> {
    scenario.validate()?;
    if n_elems < 4 {
        return Err(Error::InvalidArgument(format!(
            "tracer mesh needs at least 4 elements, got {n_elems}"
        )));
    }
    let base = generate_interval(scenario.r_e, n_elems, 2)?;
    let mut tags = base.boundary_tags.clone();
    tags.insert(TAG_DIRICHLET.into(), BTreeSet::from([(0, 0)]));
    tags.insert(TAG_NEUMANN.into(), BTreeSet::from([(n_elems - 1, 1)]));
    let coords = base.nodes.iter().map(|n| n.coords).collect();
    let elements = base
        .elements
        .iter()
        .map(|e| (e.kind, e.nodes.clone()))
        .collect();
    let mesh = Mesh::new(1, coords, elements, tags)?;

    let (rc, v0, d0) = (scenario.r_c, scenario.v0(), scenario.d0());
    let coeffs = CoefficientField {
        advection: Field::function(move |x| [v0 / (rc - x[0]), 0.0]),
        diffusion: Field::function(move |x| {
            let d = d0 / (rc - x[0]);
            [[d, 0.0], [0.0, d]]
        }),
        reaction: Field::Constant(0.0),
        source: Field::Constant(0.0),
        radial_weight: Some(Field::function(move |x| rc - x[0])),
    };
    let bcs = BoundaryConditions::dirichlet_only(DirichletSpec::homogeneous([0])?);
    let u0 = project_pulse(&mesh, scenario.source_position(), scenario.pulse_strength())?;
    Ok(Problem {
        mesh,
        coeffs,
        bcs,
        u0,
        quadrature_order: None,
    })
}

/// Nodal values approximating s·δ(r - center): the two nearest nodes of the
/// containing element share s by linear interpolation weights, each divided
/// by ∫N_i so that Σ U_i ∫N_i = s.
fn project_pulse(mesh: &Mesh, center: f64, s: f64) -> Result<Vec<f64>> {
    let n = mesh.node_count();
    let (lo, hi) = (mesh.nodes[0].coords[0], mesh.nodes[n - 1].coords[0]);
    if !(center > lo && center < hi) {
        return Err(Error::InvalidArgument(format!(
            "pulse center {center} outside ({lo}, {hi})"
        )));
    }
    let (e, _) = mesh.locate([center, 0.0]).ok_or_else(|| {
        Error::InvalidArgument(format!("pulse center {center} not inside any element"))
    })?;
    let mut nodes: Vec<(f64, usize)> = mesh.elements[e]
        .nodes
        .iter()
        .map(|&i| (mesh.nodes[i].coords[0], i))
        .collect();
    nodes.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (left, right) = nodes
        .windows(2)
        .map(|w| (w[0], w[1]))
        .find(|(a, b)| a.0 <= center && center <= b.0)
        .ok_or_else(|| Error::InvalidArgument("pulse center between nodes not found".into()))?;
    let frac = (center - left.0) / (right.0 - left.0);

    let integrals = node_integrals(mesh)?;
    let mut u = vec![0.0; n];
    u[left.1] += s * (1.0 - frac) / integrals[left.1];
    u[right.1] += s * frac / integrals[right.1];
    Ok(u)
}

/// ∫ N_i over the mesh.
fn node_integrals(mesh: &Mesh) -> Result<Vec<f64>> {
    use crate::elements::{gauss_legendre, jacobian, shape_values};
    let mut out = vec![0.0; mesh.node_count()];
    for elem in &mesh.elements {
        let rule = gauss_legendre(3, elem.kind.dim())?;
        let coords = mesh.element_coords(elem);
        for (p, w) in rule.points.iter().zip(&rule.weights) {
            let sh = shape_values(elem.kind, *p)?;
            let (det, _) = jacobian(elem.kind, &sh, &coords);
            for (a, &node) in elem.nodes.iter().enumerate() {
                out[node] += w * det * sh.n[a];
            }
        }
    }
    Ok(out)
}

/// Concentration at r = R_e on t = 0, dt, ..., ≤ t_end for each γ.
pub fn breakthrough_curves(
    scenario: &TracerScenario,
    n_elems: usize,
    gammas: &[f64],
    dt: f64,
    t_end: f64,
    opts: &SolverOptions,
) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    if !(dt > 0.0 && t_end >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "need dt > 0 and t_end >= 0, got {dt}, {t_end}"
        )));
    }
    let steps = (t_end / dt + 1e-9).floor() as usize;
    let times: Vec<f64> = (0..=steps).map(|i| i as f64 * dt).collect();
    let problem = tracer_setup(scenario, n_elems)?;
    let outlet = problem.mesh.node_count() - 1;
    let mut curves = Vec::with_capacity(gammas.len());
    for &g in gammas {
        let sim = Simulation::new(problem.clone(), g, opts.clone())?;
        curves.push(sim.evaluate(&times)?.node_history(outlet));
    }
    Ok((times, curves))
}

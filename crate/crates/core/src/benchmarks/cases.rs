use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::assembly::{BoundaryConditions, DirichletMode, DirichletSpec};
use crate::elements::{CoefficientField, Field};
use crate::error::{Error, Result};
use crate::mesh::{
    generate_interval, generate_quarter_disk, generate_rectangle, Mesh, TAG_DIRICHLET,
};
use crate::problem::Problem;
use crate::specfun::{bessel_j0, mittag_leffler_real, MLConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BenchmarkId {
    /// u_t^γ = k u_xx on (0, L), u = 0 at both ends, u₀ = sin(πx/L).
    Diffusion1D,
    /// u_t^γ = -a u_x + k u_xx, u₀ = eˣ, ends follow eˣ E_γ(-(a-k)t^γ).
    AdvectionDispersion1D,
    /// u_t^γ = k Δu on [0, L]², u = 0 on the boundary, u₀ = sin sin.
    Diffusion2D,
    /// u_t^γ = Δu on the unit quarter disk, u₀ = J₀(r), arc follows J₀(1) E_γ(-t^γ).
    QuarterDisk,
    /// Radial tracer test; see `TracerScenario`.
    TracerRadial,
}

impl BenchmarkId {
    pub fn parse(name: &str) -> Option<Self> {
        Some(match name {
            "diffusion1d" | "diffusion_1d" | "example1" => Self::Diffusion1D,
            "advection_dispersion1d" | "advection_dispersion_1d" | "example2" => {
                Self::AdvectionDispersion1D
            }
            "diffusion2d" | "diffusion_2d" | "example3" => Self::Diffusion2D,
            "quarter_disk" | "example4" => Self::QuarterDisk,
            "tracer_radial" | "tracer" => Self::TracerRadial,
            _ => return None,
        })
    }
}

/// `divisions` elements per side (1D/square) and element `order` (1D); the
/// quarter disk uses `refine` (3·4^refine elements).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeshSettings {
    pub divisions: usize,
    pub order: usize,
    pub refine: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkCase {
    pub id: BenchmarkId,
    pub length: f64,
    pub k: f64,
    pub a: f64,
    pub mesh: MeshSettings,
}

impl BenchmarkCase {
    pub fn diffusion_1d(divisions: usize, order: usize) -> Self {
        let length = 10.0;
        Self {
            id: BenchmarkId::Diffusion1D,
            length,
            k: length * length / (PI * PI),
            a: 0.0,
            mesh: MeshSettings {
                divisions,
                order,
                refine: 0,
            },
        }
    }

    pub fn advection_dispersion_1d(divisions: usize, order: usize) -> Self {
        Self {
            id: BenchmarkId::AdvectionDispersion1D,
            length: 1.0,
            k: 1.0,
            a: 2.0,
            mesh: MeshSettings {
                divisions,
                order,
                refine: 0,
            },
        }
    }

    pub fn diffusion_2d(divisions: usize) -> Self {
        Self {
            id: BenchmarkId::Diffusion2D,
            length: 1.0,
            k: 1.0 / (PI * PI),
            a: 0.0,
            mesh: MeshSettings {
                divisions,
                order: 1,
                refine: 0,
            },
        }
    }

    pub fn quarter_disk(refine: u32) -> Self {
        Self {
            id: BenchmarkId::QuarterDisk,
            length: 1.0,
            k: 1.0,
            a: 0.0,
            mesh: MeshSettings {
                divisions: 0,
                order: 1,
                refine,
            },
        }
    }

    /// Default case for an id at the coarsest tabulated resolution.
    pub fn default_for(id: BenchmarkId) -> Result<Self> {
        Ok(match id {
            BenchmarkId::Diffusion1D => Self::diffusion_1d(10, 1),
            BenchmarkId::AdvectionDispersion1D => Self::advection_dispersion_1d(10, 1),
            BenchmarkId::Diffusion2D => Self::diffusion_2d(4),
            BenchmarkId::QuarterDisk => Self::quarter_disk(2),
            BenchmarkId::TracerRadial => {
                return Err(Error::InvalidArgument(
                    "the tracer scenario is built with tracer_setup".into(),
                ))
            }
        })
    }

    /// Nodal spacing along one side (vertex to vertex).
    pub fn spacing(&self) -> f64 {
        self.length / self.mesh.divisions as f64
    }

    /// Point at which normalized errors are reported.
    pub fn probe(&self) -> [f64; 2] {
        match self.id {
            BenchmarkId::Diffusion2D => [self.length / 2.0, self.length / 2.0],
            BenchmarkId::QuarterDisk => [0.0, 0.0],
            _ => [self.length / 2.0, 0.0],
        }
    }

    /// Rate λ with u_exact(x, t) = u₀(x) E_γ(-λ t^γ).
    pub fn decay_rate(&self) -> Result<f64> {
        Ok(match self.id {
            BenchmarkId::Diffusion1D => self.k * (PI / self.length).powi(2),
            BenchmarkId::AdvectionDispersion1D => self.a - self.k,
            BenchmarkId::Diffusion2D => 2.0 * self.k * (PI / self.length).powi(2),
            BenchmarkId::QuarterDisk => self.k,
            BenchmarkId::TracerRadial => {
                return Err(Error::NoExactSolution("tracer_radial".into()))
            }
        })
    }

    pub fn initial(&self, x: [f64; 2]) -> Result<f64> {
        let l = self.length;
        match self.id {
            BenchmarkId::Diffusion1D => Ok((PI * x[0] / l).sin()),
            BenchmarkId::AdvectionDispersion1D => Ok(x[0].exp()),
            BenchmarkId::Diffusion2D => Ok((PI * x[0] / l).sin() * (PI * x[1] / l).sin()),
            BenchmarkId::QuarterDisk => bessel_j0(x[0].hypot(x[1])),
            BenchmarkId::TracerRadial => Err(Error::NoExactSolution("tracer_radial".into())),
        }
    }

    pub fn exact_solution(&self, x: [f64; 2], t: f64, gamma: f64, ml: &MLConfig) -> Result<f64> {
        let rate = self.decay_rate()?;
        let e = if t == 0.0 {
            1.0
        } else {
            mittag_leffler_real(gamma, -rate * t.powf(gamma), ml)?
        };
        Ok(self.initial(x)? * e)
    }

    pub fn build_mesh(&self) -> Result<Mesh> {
        let m = &self.mesh;
        match self.id {
            BenchmarkId::Diffusion1D | BenchmarkId::AdvectionDispersion1D => {
                generate_interval(self.length, m.divisions, m.order)
            }
            BenchmarkId::Diffusion2D => {
                generate_rectangle(self.length, self.length, m.divisions, m.divisions)
            }
            BenchmarkId::QuarterDisk => generate_quarter_disk(m.refine),
            BenchmarkId::TracerRadial => Err(Error::InvalidArgument(
                "the tracer scenario is built with tracer_setup".into(),
            )),
        }
    }

    pub fn problem(&self) -> Result<Problem> {
        let mesh = self.build_mesh()?;
        let coeffs = match self.id {
            BenchmarkId::AdvectionDispersion1D => {
                CoefficientField::diffusion(self.k).with_advection([self.a, 0.0])
            }
            _ => CoefficientField::diffusion(self.k),
        };
        let nodes: Vec<usize> = mesh.tag_nodes(TAG_DIRICHLET).into_iter().collect();
        let values = nodes
            .iter()
            .map(|&n| self.initial(mesh.nodes[n].coords))
            .collect::<Result<Vec<f64>>>()?;
        let mode = match self.id {
            BenchmarkId::Diffusion1D | BenchmarkId::Diffusion2D => DirichletMode::Constant,
            _ => DirichletMode::Separable {
                rate: self.decay_rate()?,
            },
        };
        // sin(π) is 1.2e-16, not zero
        let values = match self.id {
            BenchmarkId::Diffusion1D | BenchmarkId::Diffusion2D => vec![0.0; values.len()],
            _ => values,
        };
        let dirichlet = DirichletSpec::new(mode, nodes, values)?;
        let bcs = BoundaryConditions {
            dirichlet,
            neumann_flux: Field::Constant(0.0),
            convective: None,
        };
        let u0 = mesh
            .nodes
            .iter()
            .map(|n| self.initial(n.coords))
            .collect::<Result<Vec<f64>>>()?;
        Ok(Problem {
            mesh,
            coeffs,
            bcs,
            u0,
            quadrature_order: None,
        })
    }
}

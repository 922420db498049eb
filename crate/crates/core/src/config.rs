//! JSON run configuration.
//!
//! ```json
//! {
//!   "problem": { "type": "benchmark", "name": "example1", "divisions": 10, "order": 1 },
//!   "gamma": 0.8,
//!   "times": { "start": 0.0, "end": 0.9, "step": 0.1 },
//!   "tolerances": { "ml_abs_tol": 1e-12 },
//!   "output": { "dir": "out" }
//! }
//! ```
//!
//! `problem.type` is `benchmark`, `tracer` or `custom`; see [`ProblemSpec`].
//! `times` is either a list or a start/end/step range (end inclusive).

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::assembly::{BoundaryConditions, DirichletMode, DirichletSpec};
use crate::benchmarks::{tracer_setup, BenchmarkCase, BenchmarkId, TracerScenario};
use crate::elements::{CoefficientField, Field};
use crate::error::{Error, Result};
use crate::mesh::{load_mesh, Mesh, TAG_DIRICHLET};
use crate::problem::Problem;
use crate::solver::{EigenMethod, SolverOptions};
use crate::specfun::{bessel_j0, MLConfig};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub problem: ProblemSpec,
    pub gamma: f64,
    pub times: TimeSpec,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub output: OutputSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProblemSpec {
    Benchmark {
        name: String,
        #[serde(default)]
        divisions: Option<usize>,
        #[serde(default)]
        order: Option<usize>,
        #[serde(default)]
        refine: Option<u32>,
    },
    Tracer {
        #[serde(default)]
        scenario: TracerScenario,
        #[serde(default = "default_tracer_elements")]
        elements: usize,
    },
    Custom(CustomProblem),
}

fn default_tracer_elements() -> usize {
    20
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomProblem {
    /// Mesh JSON file, relative to the config file.
    pub mesh: PathBuf,
    pub coefficients: CoefficientSpec,
    #[serde(default)]
    pub boundary: BoundarySpec,
    pub initial: InitialSpec,
    #[serde(default)]
    pub quadrature_order: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DiffusionSpec {
    Scalar(f64),
    Tensor([[f64; 2]; 2]),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientSpec {
    pub diffusion: DiffusionSpec,
    #[serde(default)]
    pub advection: [f64; 2],
    #[serde(default)]
    pub reaction: f64,
    #[serde(default)]
    pub source: f64,
}

/// Analytic profiles for initial and boundary data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case", deny_unknown_fields)]
pub enum Profile {
    Constant {
        value: f64,
    },
    /// sin(πx/L)
    SinX {
        length: f64,
    },
    /// eˣ
    ExpX,
    /// sin(πx/L) sin(πy/L)
    SinXy {
        length: f64,
    },
    /// J₀(√(x²+y²))
    BesselR,
}

impl Profile {
    pub fn eval(&self, x: [f64; 2]) -> Result<f64> {
        use std::f64::consts::PI;
        Ok(match self {
            Profile::Constant { value } => *value,
            Profile::SinX { length } => (PI * x[0] / length).sin(),
            Profile::ExpX => x[0].exp(),
            Profile::SinXy { length } => (PI * x[0] / length).sin() * (PI * x[1] / length).sin(),
            Profile::BesselR => bessel_j0(x[0].hypot(x[1]))?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialSpec {
    Profile(Profile),
    /// JSON array with one value per node, relative to the config file.
    NodalFile(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundarySpec {
    /// Values on nodes of `dirichlet` faces.
    #[serde(default = "zero_profile")]
    pub dirichlet: Profile,
    /// Separable decay rate λ_b of the Dirichlet data (0: constant).
    #[serde(default)]
    pub dirichlet_rate: f64,
    #[serde(default)]
    pub neumann_flux: f64,
    #[serde(default)]
    pub convective: Option<ConvectiveSpec>,
}

impl Default for BoundarySpec {
    fn default() -> Self {
        Self {
            dirichlet: zero_profile(),
            dirichlet_rate: 0.0,
            neumann_flux: 0.0,
            convective: None,
        }
    }
}

fn zero_profile() -> Profile {
    Profile::Constant { value: 0.0 }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConvectiveSpec {
    pub h_c: f64,
    pub u_inf: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TimeSpec {
    List(Vec<f64>),
    Range { start: f64, end: f64, step: f64 },
}

impl TimeSpec {
    pub fn expand(&self) -> Vec<f64> {
        match self {
            TimeSpec::List(v) => v.clone(),
            TimeSpec::Range { start, end, step } => {
                let n = ((end - start) / step + 1e-9).floor().max(0.0) as usize;
                (0..=n).map(|i| start + i as f64 * step).collect()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub ml_abs_tol: f64,
    pub ml_max_series_terms: usize,
    pub eigen_residual: f64,
    pub imag_residue: f64,
    pub defect_cond_limit: f64,
    pub eigen_method: EigenMethod,
}

impl Default for Tolerances {
    fn default() -> Self {
        let o = SolverOptions::default();
        Self {
            ml_abs_tol: o.ml.target_abs_tol,
            ml_max_series_terms: o.ml.max_series_terms,
            eigen_residual: o.eigen_residual_tol,
            imag_residue: o.imag_residue_tol,
            defect_cond_limit: o.defect_cond_limit,
            eigen_method: o.eigen_method,
        }
    }
}

impl Tolerances {
    pub fn solver_options(&self) -> SolverOptions {
        SolverOptions {
            ml: MLConfig {
                target_abs_tol: self.ml_abs_tol,
                max_series_terms: self.ml_max_series_terms,
            },
            eigen_residual_tol: self.eigen_residual,
            imag_residue_tol: self.imag_residue,
            defect_cond_limit: self.defect_cond_limit,
            eigen_method: self.eigen_method,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSpec {
    pub dir: Option<PathBuf>,
}

/// A parsed config with the directory relative paths resolve against.
#[derive(Debug, Clone)]
pub struct LoadedConfig {
    pub config: RunConfig,
    pub base_dir: PathBuf,
    text: String,
}

impl LoadedConfig {
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config {
            field: "<file>".into(),
            msg: format!("{}: {e}", path.display()),
        })?;
        let base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Self::from_str(&text, base_dir)
    }

    pub fn from_str(text: &str, base_dir: PathBuf) -> Result<Self> {
        let config: RunConfig = serde_json::from_str(text).map_err(|e| {
            let msg = e.to_string();
            let field = msg
                .split('`')
                .nth(1)
                .filter(|_| msg.contains("field"))
                .unwrap_or("<document>")
                .to_string();
            Error::Config {
                field,
                msg: format!("line {}, column {}: {msg}", e.line(), e.column()),
            }
        })?;
        let loaded = Self {
            config,
            base_dir,
            text: text.to_string(),
        };
        loaded.validate()?;
        Ok(loaded)
    }

    fn field_error(&self, field: &str, msg: String) -> Error {
        let key = field.rsplit('.').next().unwrap_or(field);
        let at = locate_key(&self.text, key)
            .map(|(l, c)| format!("line {l}, column {c}: "))
            .unwrap_or_default();
        Error::Config {
            field: field.into(),
            msg: format!("{at}{msg}"),
        }
    }

    fn validate(&self) -> Result<()> {
        let c = &self.config;
        if !(c.gamma > 0.0 && c.gamma <= 1.0) {
            return Err(self.field_error("gamma", format!("must lie in (0, 1], got {}", c.gamma)));
        }
        if let TimeSpec::Range { start, end, step } = c.times {
            if !(step > 0.0
                && step.is_finite()
                && start.is_finite()
                && end.is_finite()
                && end >= start)
            {
                return Err(self.field_error(
                    "times",
                    format!("need step > 0 and end >= start, got {start}..{end} step {step}"),
                ));
            }
        }
        let times = c.times.expand();
        if times.is_empty() {
            return Err(self.field_error("times", "no output times".into()));
        }
        if let Some(t) = times.iter().find(|t| !(t.is_finite() && **t >= 0.0)) {
            return Err(
                self.field_error("times", format!("times must be finite and >= 0, got {t}"))
            );
        }
        if times.windows(2).any(|w| w[1] < w[0]) {
            return Err(self.field_error("times", "times must be sorted ascending".into()));
        }
        let opts = c.tolerances.solver_options();
        if let Err(e) = opts.validate() {
            return Err(self.field_error("tolerances", e.to_string()));
        }
        match &c.problem {
            ProblemSpec::Benchmark {
                name,
                divisions,
                order,
                ..
            } => {
                let id = BenchmarkId::parse(name).ok_or_else(|| {
                    self.field_error("problem.name", format!("unknown benchmark `{name}`"))
                })?;
                if id == BenchmarkId::TracerRadial {
                    return Err(self.field_error(
                        "problem.name",
                        "use `\"type\": \"tracer\"` for the tracer scenario".into(),
                    ));
                }
                if divisions == &Some(0) {
                    return Err(self.field_error("problem.divisions", "must be >= 1".into()));
                }
                if let Some(o) = order {
                    if !matches!(o, 1 | 2) {
                        return Err(
                            self.field_error("problem.order", format!("must be 1 or 2, got {o}"))
                        );
                    }
                }
            }
            ProblemSpec::Tracer { scenario, elements } => {
                if let Err(e) = scenario.validate() {
                    return Err(self.field_error("problem.scenario", e.to_string()));
                }
                if *elements < 4 {
                    return Err(self
                        .field_error("problem.elements", format!("must be >= 4, got {elements}")));
                }
            }
            ProblemSpec::Custom(p) => {
                let mesh = self.base_dir.join(&p.mesh);
                if !mesh.is_file() {
                    return Err(self.field_error(
                        "problem.mesh",
                        format!("file {} does not exist", mesh.display()),
                    ));
                }
                if let InitialSpec::NodalFile(f) = &p.initial {
                    let f = self.base_dir.join(f);
                    if !f.is_file() {
                        return Err(self.field_error(
                            "problem.initial",
                            format!("file {} does not exist", f.display()),
                        ));
                    }
                }
                if !(p.boundary.dirichlet_rate.is_finite() && p.boundary.dirichlet_rate >= 0.0) {
                    return Err(
                        self.field_error("problem.boundary.dirichlet_rate", "must be >= 0".into())
                    );
                }
            }
        }
        Ok(())
    }

    pub fn times(&self) -> Vec<f64> {
        self.config.times.expand()
    }

    pub fn solver_options(&self) -> SolverOptions {
        self.config.tolerances.solver_options()
    }

    /// SHA-256 over the canonical JSON of every field except `output`.
    pub fn hash(&self) -> String {
        let mut c = self.config.clone();
        c.output = OutputSpec::default();
        let canonical = serde_json::to_string(&c).expect("config serializes");
        hex::encode(Sha256::digest(canonical.as_bytes()))
    }

    pub fn build_problem(&self) -> Result<Problem> {
        match &self.config.problem {
            ProblemSpec::Benchmark {
                name,
                divisions,
                order,
                refine,
            } => {
                let id = BenchmarkId::parse(name).ok_or_else(|| {
                    self.field_error("problem.name", format!("unknown benchmark `{name}`"))
                })?;
                let mut case = BenchmarkCase::default_for(id)?;
                if let Some(d) = divisions {
                    case.mesh.divisions = *d;
                }
                if let Some(o) = order {
                    case.mesh.order = *o;
                }
                if let Some(r) = refine {
                    case.mesh.refine = *r;
                }
                case.problem()
            }
            ProblemSpec::Tracer { scenario, elements } => tracer_setup(scenario, *elements),
            ProblemSpec::Custom(p) => self.custom_problem(p),
        }
    }

    fn custom_problem(&self, p: &CustomProblem) -> Result<Problem> {
        let mesh = load_mesh(&self.base_dir.join(&p.mesh))?;
        let cs = &p.coefficients;
        let d = match cs.diffusion {
            DiffusionSpec::Scalar(k) => [[k, 0.0], [0.0, k]],
            DiffusionSpec::Tensor(t) => t,
        };
        let coeffs = CoefficientField::diffusion(0.0)
            .with_tensor(d)
            .with_advection(cs.advection)
            .with_reaction(cs.reaction)
            .with_source(cs.source);
        let nodes: Vec<usize> = mesh.tag_nodes(TAG_DIRICHLET).into_iter().collect();
        let values = nodes
            .iter()
            .map(|&n| p.boundary.dirichlet.eval(mesh.nodes[n].coords))
            .collect::<Result<Vec<f64>>>()?;
        let dirichlet = DirichletSpec::new(
            DirichletMode::Separable {
                rate: p.boundary.dirichlet_rate,
            },
            nodes,
            values,
        )?;
        let bcs = BoundaryConditions {
            dirichlet,
            neumann_flux: Field::Constant(p.boundary.neumann_flux),
            convective: p
                .boundary
                .convective
                .map(|c| (Field::Constant(c.h_c), Field::Constant(c.u_inf))),
        };
        let u0 = match &p.initial {
            InitialSpec::Profile(prof) => mesh
                .nodes
                .iter()
                .map(|n| prof.eval(n.coords))
                .collect::<Result<Vec<f64>>>()?,
            InitialSpec::NodalFile(f) => read_nodal(&self.base_dir.join(f), &mesh)?,
        };
        Ok(Problem {
            mesh,
            coeffs,
            bcs,
            u0,
            quadrature_order: p.quadrature_order,
        })
    }
}

fn read_nodal(path: &Path, mesh: &Mesh) -> Result<Vec<f64>> {
    let text = std::fs::read_to_string(path)?;
    let v: Vec<f64> = serde_json::from_str(&text).map_err(|e| Error::Parse {
        path: path.to_path_buf(),
        msg: format!("line {}, column {}: {e}", e.line(), e.column()),
    })?;
    if v.len() != mesh.node_count() {
        return Err(Error::Config {
            field: "problem.initial".into(),
            msg: format!(
                "{} has {} values, mesh has {} nodes",
                path.display(),
                v.len(),
                mesh.node_count()
            ),
        });
    }
    Ok(v)
}

/// 1-based (line, column) of the first `"key":` in a JSON text.
fn locate_key(text: &str, key: &str) -> Option<(usize, usize)> {
    let needle = format!("\"{key}\"");
    let mut from = 0;
    while let Some(pos) = text[from..].find(&needle) {
        let at = from + pos;
        let rest = text[at + needle.len()..].trim_start();
        if rest.starts_with(':') {
            let line = text[..at].matches('\n').count() + 1;
            let col = at - text[..at].rfind('\n').map_or(0, |i| i + 1) + 1;
            return Some((line, col));
        }
        from = at + needle.len();
    }
    None
}

//! Global assembly and reduction to a homogeneous relaxation system.
//!
//! Nodes are split into free and Dirichlet sets. Columns of the assembled
//! operators are partitioned accordingly, giving
//! `C D^γU + K U + C̄ D^γŪ + K̄ Ū = F` on the free rows.

use std::collections::BTreeSet;

use faer::prelude::*;
use faer::Mat;
use serde::{Deserialize, Serialize};

use crate::elements::{
    default_quadrature_order, element_matrices, gauss_legendre, CoefficientField, FaceCondition,
    FaceLoad, Field,
};
use crate::error::{Error, Result};
use crate::mesh::{Mesh, TAG_CONVECTIVE, TAG_DIRICHLET, TAG_NEUMANN};
use crate::specfun::{mittag_leffler_real, MLConfig};

/// Time dependence of the prescribed Dirichlet values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum DirichletMode {
    /// Ū(t) = Ū₀.
    Constant,
    /// Ū(t) = Ū₀ E_γ(-rate t^γ).
    Separable { rate: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct DirichletSpec {
    pub mode: DirichletMode,
    /// Sorted, distinct node ids.
    pub nodes: Vec<usize>,
    pub values: Vec<f64>,
}

impl DirichletSpec {
    pub fn none() -> Self {
        Self {
            mode: DirichletMode::Constant,
            nodes: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn homogeneous(nodes: impl IntoIterator<Item = usize>) -> Result<Self> {
        let nodes: Vec<usize> = nodes.into_iter().collect();
        let values = vec![0.0; nodes.len()];
        Self::new(DirichletMode::Constant, nodes, values)
    }

    /// Normalizes the node order and folds a zero separable rate into
    /// `Constant`.
    pub fn new(mode: DirichletMode, nodes: Vec<usize>, values: Vec<f64>) -> Result<Self> {
        if nodes.len() != values.len() {
            return Err(Error::InvalidArgument(format!(
                "{} Dirichlet nodes but {} values",
                nodes.len(),
                values.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "non-finite Dirichlet value {v}"
            )));
        }
        let mode = match mode {
            DirichletMode::Separable { rate } if !(rate.is_finite() && rate >= 0.0) => {
                return Err(Error::InvalidArgument(format!(
                    "separable rate must be finite and >= 0, got {rate}"
                )));
            }
            DirichletMode::Separable { rate: 0.0 } => DirichletMode::Constant,
            m => m,
        };
        let mut pairs: Vec<(usize, f64)> = nodes.into_iter().zip(values).collect();
        pairs.sort_by_key(|p| p.0);
        if pairs.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidArgument("duplicate Dirichlet node".into()));
        }
        let (nodes, values) = pairs.into_iter().unzip();
        Ok(Self {
            mode,
            nodes,
            values,
        })
    }

    /// Scalar multiplying Ū₀ at time t.
    pub fn time_factor(&self, gamma: f64, t: f64, ml: &MLConfig) -> Result<f64> {
        match self.mode {
            DirichletMode::Constant => Ok(1.0),
            DirichletMode::Separable { rate } => {
                if t == 0.0 {
                    Ok(1.0)
                } else {
                    mittag_leffler_real(gamma, -rate * t.powf(gamma), ml)
                }
            }
        }
    }

    pub fn rate(&self) -> f64 {
        match self.mode {
            DirichletMode::Constant => 0.0,
            DirichletMode::Separable { rate } => rate,
        }
    }
}

/// Boundary data. Neumann and convective data apply to the faces carrying the
/// matching tag.
#[derive(Debug, Clone)]
pub struct BoundaryConditions {
    pub dirichlet: DirichletSpec,
    pub neumann_flux: Field<f64>,
    /// (h_c, u_inf)
    pub convective: Option<(Field<f64>, Field<f64>)>,
}

impl BoundaryConditions {
    pub fn dirichlet_only(dirichlet: DirichletSpec) -> Self {
        Self {
            dirichlet,
            neumann_flux: Field::Constant(0.0),
            convective: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dof {
    Free(usize),
    Fixed(usize),
}

/// Bijection between mesh nodes and (free | Dirichlet) indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DofMap {
    pub free: Vec<usize>,
    pub fixed: Vec<usize>,
    pub of_node: Vec<Dof>,
}

impl DofMap {
    pub fn new(n_nodes: usize, fixed: &[usize]) -> Self {
        let mut of_node = vec![Dof::Free(0); n_nodes];
        for (j, &n) in fixed.iter().enumerate() {
            of_node[n] = Dof::Fixed(j);
        }
        let mut free = Vec::with_capacity(n_nodes - fixed.len());
        for (n, d) in of_node.iter_mut().enumerate() {
            if matches!(d, Dof::Free(_)) {
                *d = Dof::Free(free.len());
                free.push(n);
            }
        }
        Self {
            free,
            fixed: fixed.to_vec(),
            of_node,
        }
    }

    pub fn n_nodes(&self) -> usize {
        self.of_node.len()
    }

    /// Free-dof entries of a nodal vector.
    pub fn restrict(&self, full: &[f64]) -> Vec<f64> {
        self.free.iter().map(|&n| full[n]).collect()
    }

    /// Nodal vector from free and Dirichlet parts.
    pub fn expand(&self, free: &[f64], fixed: &[f64]) -> Vec<f64> {
        self.of_node
            .iter()
            .map(|d| match *d {
                Dof::Free(i) => free[i],
                Dof::Fixed(j) => fixed[j],
            })
            .collect()
    }
}

/// Assembled dense operators, partitioned by column.
#[derive(Debug, Clone)]
pub struct GlobalSystem {
    pub c: Mat<f64>,
    pub k: Mat<f64>,
    pub c_bar: Mat<f64>,
    pub k_bar: Mat<f64>,
    pub f: Vec<f64>,
    pub dof_map: DofMap,
    pub dirichlet: DirichletSpec,
}

pub fn assemble(
    mesh: &Mesh,
    coeffs: &CoefficientField,
    bcs: &BoundaryConditions,
) -> Result<GlobalSystem> {
    assemble_with_order(mesh, coeffs, bcs, None)
}

/// `order` overrides the per-kind default Gauss order.
pub fn assemble_with_order(
    mesh: &Mesh,
    coeffs: &CoefficientField,
    bcs: &BoundaryConditions,
    order: Option<usize>,
) -> Result<GlobalSystem> {
    let tagged: BTreeSet<usize> = mesh.tag_nodes(TAG_DIRICHLET);
    if let Some(n) = bcs.dirichlet.nodes.iter().find(|n| !tagged.contains(n)) {
        return Err(Error::InconsistentTags(format!(
            "Dirichlet value given for node {n}, which is not on a `{TAG_DIRICHLET}` face"
        )));
    }
    let convective_faces = mesh
        .boundary_tags
        .get(TAG_CONVECTIVE)
        .map_or(0, |s| s.len());
    if convective_faces > 0 && bcs.convective.is_none() {
        return Err(Error::InconsistentTags(format!(
            "{convective_faces} `{TAG_CONVECTIVE}` face(s) but no convective data"
        )));
    }

    let dof_map = DofMap::new(mesh.node_count(), &bcs.dirichlet.nodes);
    let (nf, nd) = (dof_map.free.len(), dof_map.fixed.len());
    if nf == 0 {
        return Err(Error::EmptyFreeDofs);
    }
    let mut c = Mat::<f64>::zeros(nf, nf);
    let mut k = Mat::<f64>::zeros(nf, nf);
    let mut c_bar = Mat::<f64>::zeros(nf, nd);
    let mut k_bar = Mat::<f64>::zeros(nf, nd);
    let mut f = vec![0.0; nf];

    let neumann = FaceCondition::Neumann {
        q: bcs.neumann_flux.clone(),
    };
    let convective = bcs
        .convective
        .as_ref()
        .map(|(h, u)| FaceCondition::Convective {
            h_c: h.clone(),
            u_inf: u.clone(),
        });
    let mut faces_of: Vec<Vec<FaceLoad<'_>>> = vec![Vec::new(); mesh.elements.len()];
    if let Some(set) = mesh.boundary_tags.get(TAG_NEUMANN) {
        for &(e, face) in set {
            faces_of[e].push(FaceLoad {
                face,
                condition: &neumann,
            });
        }
    }
    if let (Some(set), Some(cond)) = (mesh.boundary_tags.get(TAG_CONVECTIVE), convective.as_ref()) {
        for &(e, face) in set {
            faces_of[e].push(FaceLoad {
                face,
                condition: cond,
            });
        }
    }

    let mut rules = std::collections::HashMap::new();
    for (elem, faces) in mesh.elements.iter().zip(&faces_of) {
        let q = order.unwrap_or_else(|| default_quadrature_order(elem.kind));
        let rule = match rules.entry((q, elem.kind.dim())) {
            std::collections::hash_map::Entry::Occupied(o) => o.into_mut(),
            std::collections::hash_map::Entry::Vacant(v) => {
                v.insert(gauss_legendre(q, elem.kind.dim())?)
            }
        };
        let em = element_matrices(mesh, elem, coeffs, rule, faces)?;
        for (a, &na) in elem.nodes.iter().enumerate() {
            let Dof::Free(r) = dof_map.of_node[na] else {
                continue;
            };
            f[r] += em.fe[a];
            for (b, &nb) in elem.nodes.iter().enumerate() {
                match dof_map.of_node[nb] {
                    Dof::Free(col) => {
                        c[(r, col)] += em.ce[(a, b)];
                        k[(r, col)] += em.ke[(a, b)];
                    }
                    Dof::Fixed(col) => {
                        c_bar[(r, col)] += em.ce[(a, b)];
                        k_bar[(r, col)] += em.ke[(a, b)];
                    }
                }
            }
        }
    }
    Ok(GlobalSystem {
        c,
        k,
        c_bar,
        k_bar,
        f,
        dof_map,
        dirichlet: bcs.dirichlet.clone(),
    })
}

/// Homogeneous relaxation system `C D^γŨ + K Ũ = 0` plus the data needed to
/// recover nodal values: `U(t) = Ũ(t) - shift + V E_γ(-λ_b t^γ)`.
#[derive(Debug, Clone)]
pub struct ReducedRelaxation {
    pub c: Mat<f64>,
    pub k: Mat<f64>,
    pub u0_tilde: Vec<f64>,
    pub shift: Vec<f64>,
    /// (V, λ_b) in separable mode.
    pub particular: Option<(Vec<f64>, f64)>,
    pub dof_map: DofMap,
    pub dirichlet: DirichletSpec,
    /// Initial nodal values as supplied.
    pub u0_full: Vec<f64>,
}

impl ReducedRelaxation {
    /// Nodal values from the homogeneous free-dof state `u_tilde` and the
    /// boundary time factor `e_b = E_γ(-λ_b t^γ)` (1 in constant mode).
    pub fn reconstruct(&self, u_tilde: &[f64], e_b: f64) -> Vec<f64> {
        let mut free: Vec<f64> = u_tilde
            .iter()
            .zip(&self.shift)
            .map(|(u, s)| u - s)
            .collect();
        if let Some((v, _)) = &self.particular {
            for (x, vi) in free.iter_mut().zip(v) {
                *x += vi * e_b;
            }
        }
        let fixed: Vec<f64> = self.dirichlet.values.iter().map(|v| v * e_b).collect();
        self.dof_map.expand(&free, &fixed)
    }
}

pub fn reduce(system: &GlobalSystem, u0_full: &[f64]) -> Result<ReducedRelaxation> {
    let map = &system.dof_map;
    if u0_full.len() != map.n_nodes() {
        return Err(Error::InvalidArgument(format!(
            "initial condition has {} entries, mesh has {} nodes",
            u0_full.len(),
            map.n_nodes()
        )));
    }
    if let Some(v) = u0_full.iter().find(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "non-finite initial value {v}"
        )));
    }
    let nf = map.free.len();
    let ubar = col_from(&system.dirichlet.values);
    let (const_values, particular) = match system.dirichlet.mode {
        DirichletMode::Constant => (Some(&ubar), None),
        DirichletMode::Separable { rate } => (None, Some(rate)),
    };

    // K s = K̄ Ū_c - F, where Ū_c is the constant part of the boundary data
    let mut rhs = Mat::<f64>::zeros(nf, 1);
    if let Some(ub) = const_values {
        if ub.nrows() > 0 {
            rhs = &system.k_bar * ub;
        }
    }
    for i in 0..nf {
        rhs[(i, 0)] -= system.f[i];
    }
    let shift = if is_zero(&rhs) {
        vec![0.0; nf]
    } else {
        solve_checked(&system.k, &rhs, "K", map.fixed.is_empty())?
    };

    let mut u0_tilde: Vec<f64> = map
        .restrict(u0_full)
        .iter()
        .zip(&shift)
        .map(|(u, s)| u + s)
        .collect();
    let particular = match particular {
        None => None,
        Some(rate) => {
            // (K - λ_b C) V = (λ_b C̄ - K̄) Ū₀
            let f0 = if ubar.nrows() > 0 {
                (&system.c_bar * &ubar) * faer::Scale(rate) - &system.k_bar * &ubar
            } else {
                Mat::zeros(nf, 1)
            };
            let a = &system.k - &system.c * faer::Scale(rate);
            let v = if is_zero(&f0) {
                vec![0.0; nf]
            } else {
                solve_checked(&a, &f0, "K - λ_b C", false)?
            };
            for (u, vi) in u0_tilde.iter_mut().zip(&v) {
                *u -= vi;
            }
            Some((v, rate))
        }
    };
    Ok(ReducedRelaxation {
        c: system.c.clone(),
        k: system.k.clone(),
        u0_tilde,
        shift,
        particular,
        dof_map: map.clone(),
        dirichlet: system.dirichlet.clone(),
        u0_full: u0_full.to_vec(),
    })
}

fn col_from(v: &[f64]) -> Mat<f64> {
    Mat::from_fn(v.len(), 1, |i, _| v[i])
}

fn is_zero(m: &Mat<f64>) -> bool {
    (0..m.nrows()).all(|i| m[(i, 0)] == 0.0)
}

fn max_abs(m: faer::MatRef<'_, f64>) -> f64 {
    let mut out = 0.0f64;
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            out = out.max(m[(i, j)].abs());
        }
    }
    out
}

/// LU solve that refuses (near-)singular matrices.
fn solve_checked(a: &Mat<f64>, rhs: &Mat<f64>, name: &str, no_dirichlet: bool) -> Result<Vec<f64>> {
    let n = a.nrows();
    let lu = a.partial_piv_lu();
    let u = lu.U();
    let mut dmin = f64::INFINITY;
    let mut dmax = 0.0f64;
    for i in 0..n {
        let d = u[(i, i)].abs();
        dmin = dmin.min(d);
        dmax = dmax.max(d);
    }
    let singular = !(dmin > 1e-13 * dmax);
    let x = lu.solve(rhs);
    let residual = max_abs((a * &x - rhs).as_ref());
    let finite = (0..n).all(|i| x[(i, 0)].is_finite());
    if singular
        || !finite
        || residual > 1e-8 * (max_abs(a.as_ref()) * max_abs(x.as_ref()) + max_abs(rhs.as_ref()))
    {
        let ones = Mat::<f64>::from_fn(n, 1, |_, _| 1.0);
        let constant_null =
            max_abs((a * &ones).as_ref()) <= 1e-12 * max_abs(a.as_ref()).max(f64::MIN_POSITIVE);
        let what = if constant_null {
            "nullspace spanned by the constant vector".to_string()
        } else {
            format!("pivot ratio {:.3e}", dmin / dmax)
        };
        let hint = if no_dirichlet {
            "; no Dirichlet nodes fix the solution level"
        } else {
            ""
        };
        return Err(Error::SingularSystem(format!(
            "{name} is singular ({what}){hint}"
        )));
    }
    Ok((0..n).map(|i| x[(i, 0)]).collect())
}

//! Meshes: nodes, Line2/Line3/Quad4 elements and named boundary tags.
//!
//! Tags map a name to a set of `(element, local face)` entities. For line
//! elements face 0 is the ξ = -1 end and face 1 the ξ = +1 end; Quad4 faces
//! run counter-clockwise from the edge between local nodes 0 and 1.

mod generate;
mod io;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::elements::{gauss_legendre, jacobian, shape_values};
use crate::error::{Error, Result};

pub use generate::{generate_interval, generate_quarter_disk, generate_rectangle};
pub use io::{load_mesh, mesh_from_json, mesh_to_json, save_mesh};

pub const TAG_DIRICHLET: &str = "dirichlet";
pub const TAG_NEUMANN: &str = "neumann";
pub const TAG_CONVECTIVE: &str = "convective";

/// The three boundary-condition tags, which must not share an entity.
pub const EXCLUSIVE_TAGS: [&str; 3] = [TAG_DIRICHLET, TAG_NEUMANN, TAG_CONVECTIVE];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ElementKind {
    Line2,
    Line3,
    Quad4,
}

impl ElementKind {
    pub fn node_count(self) -> usize {
        match self {
            ElementKind::Line2 => 2,
            ElementKind::Line3 => 3,
            ElementKind::Quad4 => 4,
        }
    }

    pub fn dim(self) -> usize {
        match self {
            ElementKind::Line2 | ElementKind::Line3 => 1,
            ElementKind::Quad4 => 2,
        }
    }

    pub fn face_count(self) -> usize {
        match self {
            ElementKind::Line2 | ElementKind::Line3 => 2,
            ElementKind::Quad4 => 4,
        }
    }

    /// Local node indices lying on `face`.
    pub fn face_nodes(self, face: usize) -> &'static [usize] {
        match (self, face) {
            (ElementKind::Line2, 0) | (ElementKind::Line3, 0) => &[0],
            (ElementKind::Line2, 1) => &[1],
            (ElementKind::Line3, 1) => &[2],
            (ElementKind::Quad4, 0) => &[0, 1],
            (ElementKind::Quad4, 1) => &[1, 2],
            (ElementKind::Quad4, 2) => &[2, 3],
            (ElementKind::Quad4, 3) => &[3, 0],
            _ => &[],
        }
    }

    /// Natural coordinates of each local node.
    pub fn reference_nodes(self) -> &'static [[f64; 2]] {
        match self {
            ElementKind::Line2 => &[[-1.0, 0.0], [1.0, 0.0]],
            ElementKind::Line3 => &[[-1.0, 0.0], [0.0, 0.0], [1.0, 0.0]],
            ElementKind::Quad4 => &[[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    pub id: usize,
    /// x, y; y is 0 for 1D meshes.
    pub coords: [f64; 2],
}

#[derive(Debug, Clone, PartialEq)]
pub struct Element {
    pub id: usize,
    pub kind: ElementKind,
    pub nodes: Vec<usize>,
}

pub type BoundaryTags = BTreeMap<String, BTreeSet<(usize, usize)>>;

#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    pub dim: usize,
    pub nodes: Vec<Node>,
    pub elements: Vec<Element>,
    pub boundary_tags: BoundaryTags,
}

impl Mesh {
    pub fn new(
        dim: usize,
        coords: Vec<[f64; 2]>,
        elements: Vec<(ElementKind, Vec<usize>)>,
        tags: BoundaryTags,
    ) -> Result<Self> {
        let nodes = coords
            .into_iter()
            .enumerate()
            .map(|(id, coords)| Node { id, coords })
            .collect();
        let elements = elements
            .into_iter()
            .enumerate()
            .map(|(id, (kind, nodes))| Element { id, kind, nodes })
            .collect();
        let mesh = Mesh {
            dim,
            nodes,
            elements,
            boundary_tags: tags,
        };
        mesh.validate()?;
        Ok(mesh)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn element_coords(&self, elem: &Element) -> Vec<[f64; 2]> {
        elem.nodes.iter().map(|&n| self.nodes[n].coords).collect()
    }

    /// Global node ids touched by a tag.
    pub fn tag_nodes(&self, tag: &str) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        if let Some(set) = self.boundary_tags.get(tag) {
            for &(e, f) in set {
                let elem = &self.elements[e];
                for &local in elem.kind.face_nodes(f) {
                    out.insert(elem.nodes[local]);
                }
            }
        }
        out
    }

    /// Faces that belong to exactly one element.
    pub fn boundary_faces(&self) -> Vec<(usize, usize)> {
        let mut count: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
        for elem in &self.elements {
            for f in 0..elem.kind.face_count() {
                let mut key: Vec<usize> = elem
                    .kind
                    .face_nodes(f)
                    .iter()
                    .map(|&l| elem.nodes[l])
                    .collect();
                key.sort_unstable();
                count.entry(key).or_default().push((elem.id, f));
            }
        }
        let mut out: Vec<_> = count
            .into_values()
            .filter(|v| v.len() == 1)
            .map(|v| v[0])
            .collect();
        out.sort_unstable();
        out
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim != 1 && self.dim != 2 {
            return Err(Error::MeshValidation(format!(
                "dim must be 1 or 2, got {}",
                self.dim
            )));
        }
        if self.nodes.is_empty() || self.elements.is_empty() {
            return Err(Error::MeshValidation(
                "mesh has no nodes or no elements".into(),
            ));
        }
        for (i, node) in self.nodes.iter().enumerate() {
            if node.id != i {
                return Err(Error::MeshValidation(format!(
                    "node ids not dense: position {i} holds id {}",
                    node.id
                )));
            }
            if !node.coords.iter().all(|c| c.is_finite()) {
                return Err(Error::MeshValidation(format!(
                    "node {i} has non-finite coordinates"
                )));
            }
        }
        let rule = gauss_legendre(2, self.dim)?;
        for (i, elem) in self.elements.iter().enumerate() {
            if elem.id != i {
                return Err(Error::MeshValidation(format!(
                    "element ids not dense: position {i} holds id {}",
                    elem.id
                )));
            }
            if elem.kind.dim() != self.dim {
                return Err(Error::MeshValidation(format!(
                    "element {i}: {:?} in a {}D mesh",
                    elem.kind, self.dim
                )));
            }
            if elem.nodes.len() != elem.kind.node_count() {
                return Err(Error::MeshValidation(format!(
                    "element {i}: {:?} needs {} nodes, got {}",
                    elem.kind,
                    elem.kind.node_count(),
                    elem.nodes.len()
                )));
            }
            if let Some(&bad) = elem.nodes.iter().find(|&&n| n >= self.nodes.len()) {
                return Err(Error::MeshValidation(format!(
                    "element {i} references missing node {bad}"
                )));
            }
            let distinct: BTreeSet<_> = elem.nodes.iter().collect();
            if distinct.len() != elem.nodes.len() {
                return Err(Error::MeshValidation(format!("element {i} repeats a node")));
            }
            let coords = self.element_coords(elem);
            for p in &rule.points {
                let shape = shape_values(elem.kind, *p)?;
                let (det, _) = jacobian(elem.kind, &shape, &coords);
                if !(det > 0.0) {
                    return Err(Error::MeshValidation(format!(
                        "element {i}: non-positive Jacobian determinant {det:e} (check orientation)"
                    )));
                }
            }
        }
        for (name, set) in &self.boundary_tags {
            for &(e, f) in set {
                let Some(elem) = self.elements.get(e) else {
                    return Err(Error::MeshValidation(format!(
                        "tag `{name}` references missing element {e}"
                    )));
                };
                if f >= elem.kind.face_count() {
                    return Err(Error::MeshValidation(format!(
                        "tag `{name}` references face {f} of element {e}"
                    )));
                }
            }
        }
        for (i, a) in EXCLUSIVE_TAGS.iter().enumerate() {
            for b in &EXCLUSIVE_TAGS[i + 1..] {
                if let (Some(sa), Some(sb)) =
                    (self.boundary_tags.get(*a), self.boundary_tags.get(*b))
                {
                    if let Some(&(e, f)) = sa.intersection(sb).next() {
                        return Err(Error::MeshValidation(format!(
                            "face {f} of element {e} is tagged both `{a}` and `{b}`"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Finds an element containing `point` and the natural coordinates there.
    pub fn locate(&self, point: [f64; 2]) -> Option<(usize, [f64; 2])> {
        const TOL: f64 = 1e-10;
        for elem in &self.elements {
            let coords = self.element_coords(elem);
            let xi = match elem.kind {
                ElementKind::Line2 | ElementKind::Line3 => {
                    let (a, b) = (coords[0][0], coords[coords.len() - 1][0]);
                    let xi = inverse_line(elem.kind, &coords, point[0]);
                    if point[0] < a.min(b) - TOL * (b - a).abs()
                        || point[0] > a.max(b) + TOL * (b - a).abs()
                    {
                        continue;
                    }
                    xi
                }
                ElementKind::Quad4 => match inverse_quad(&coords, point) {
                    Some(xi) => xi,
                    None => continue,
                },
            };
            if xi
                .iter()
                .take(elem.kind.dim())
                .all(|v| v.abs() <= 1.0 + 1e-9)
            {
                return Some((elem.id, xi));
            }
        }
        None
    }

    /// Interpolates nodal `values` at `point` with the element shape functions.
    pub fn interpolate(&self, values: &[f64], point: [f64; 2]) -> Result<f64> {
        let (e, xi) = self.locate(point).ok_or_else(|| {
            Error::InvalidArgument(format!("point {point:?} lies outside the mesh"))
        })?;
        let elem = &self.elements[e];
        let shape = shape_values(elem.kind, xi)?;
        Ok(elem
            .nodes
            .iter()
            .zip(&shape.n)
            .map(|(&node, n)| n * values[node])
            .sum())
    }

    /// Node whose coordinates coincide with `point`, if any.
    pub fn find_node(&self, point: [f64; 2], tol: f64) -> Option<usize> {
        self.nodes
            .iter()
            .find(|n| {
                (n.coords[0] - point[0]).abs() <= tol && (n.coords[1] - point[1]).abs() <= tol
            })
            .map(|n| n.id)
    }
}

fn inverse_line(kind: ElementKind, coords: &[[f64; 2]], x: f64) -> [f64; 2] {
    // Newton on x(ξ) = x; affine elements converge in one step
    let mut xi = 0.0;
    for _ in 0..30 {
        let Ok(shape) = shape_values(kind, [xi, 0.0]) else {
            break;
        };
        let fx: f64 = shape
            .n
            .iter()
            .zip(coords)
            .map(|(n, c)| n * c[0])
            .sum::<f64>()
            - x;
        let dx: f64 = shape.dn.iter().zip(coords).map(|(d, c)| d[0] * c[0]).sum();
        let step = fx / dx;
        xi -= step;
        if step.abs() < 1e-15 {
            break;
        }
    }
    [xi, 0.0]
}

fn inverse_quad(coords: &[[f64; 2]], p: [f64; 2]) -> Option<[f64; 2]> {
    let mut xi = [0.0, 0.0];
    for _ in 0..50 {
        let shape = shape_values(ElementKind::Quad4, xi).ok()?;
        let mut r = [-p[0], -p[1]];
        let mut j = [[0.0; 2]; 2];
        for (i, c) in coords.iter().enumerate() {
            r[0] += shape.n[i] * c[0];
            r[1] += shape.n[i] * c[1];
            for a in 0..2 {
                for b in 0..2 {
                    j[a][b] += shape.dn[i][b] * c[a];
                }
            }
        }
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det.abs() < 1e-300 {
            return None;
        }
        let d0 = (j[1][1] * r[0] - j[0][1] * r[1]) / det;
        let d1 = (-j[1][0] * r[0] + j[0][0] * r[1]) / det;
        xi[0] -= d0;
        xi[1] -= d1;
        if !xi[0].is_finite() || xi[0].abs() > 10.0 || xi[1].abs() > 10.0 {
            return None;
        }
        if d0.abs().max(d1.abs()) < 1e-14 {
            return Some(xi);
        }
    }
    Some(xi)
}

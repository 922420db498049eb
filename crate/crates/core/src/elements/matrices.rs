use faer::Mat;

use super::coefficients::{CoefficientField, Field};
use super::quadrature::{gauss_legendre, QuadratureRule};
use super::shape::{jacobian, physical_gradients, shape_values};
use crate::error::{Error, Result};
use crate::mesh::{Element, ElementKind, Mesh};

/// Element mass (`ce`), stiffness (`ke`) and load (`fe`) contributions.
#[derive(Debug, Clone)]
pub struct ElementMatrices {
    pub ce: Mat<f64>,
    pub ke: Mat<f64>,
    pub fe: Vec<f64>,
}

/// Natural or convective data on one face of an element.
#[derive(Debug, Clone)]
pub enum FaceCondition {
    /// n·(D∇u) = q.
    Neumann { q: Field<f64> },
    /// -n·(D∇u) = h_c (u - u_inf): h_c ≥ 0 transfers mass out of the domain.
    Convective { h_c: Field<f64>, u_inf: Field<f64> },
}

#[derive(Debug, Clone, Copy)]
pub struct FaceLoad<'a> {
    pub face: usize,
    pub condition: &'a FaceCondition,
}

/// Default Gauss order: 2 for Line2/Quad4, 3 for Line3 (integrates the
/// quadratic mass matrix exactly).
pub fn default_quadrature_order(kind: ElementKind) -> usize {
    match kind {
        ElementKind::Line3 => 3,
        ElementKind::Line2 | ElementKind::Quad4 => 2,
    }
}

pub fn element_matrices(
    mesh: &Mesh,
    elem: &Element,
    coeffs: &CoefficientField,
    rule: &QuadratureRule,
    faces: &[FaceLoad<'_>],
) -> Result<ElementMatrices> {
    let kind = elem.kind;
    let n = kind.node_count();
    let coords = mesh.element_coords(elem);
    let mut ce = Mat::<f64>::zeros(n, n);
    let mut ke = Mat::<f64>::zeros(n, n);
    let mut fe = vec![0.0; n];

    for (p, &wq) in rule.points.iter().zip(&rule.weights) {
        let shape = shape_values(kind, *p)?;
        let (det, j) = jacobian(kind, &shape, &coords);
        if !(det > 0.0) {
            return Err(Error::SingularJacobian {
                element: elem.id,
                det,
            });
        }
        let grad = physical_gradients(kind, &shape, &j, det);
        let x = position(&shape.n, &coords);
        let a = coeffs.advection.at(x);
        let d = coeffs.diffusion.at(x);
        check_diffusion(d, x)?;
        let reaction = coeffs.reaction.at(x);
        let source = coeffs.source.at(x);
        let dv = wq * det * coeffs.weight_at(x);

        for r in 0..n {
            let nr = shape.n[r];
            let dgr = [
                d[0][0] * grad[r][0] + d[0][1] * grad[r][1],
                d[1][0] * grad[r][0] + d[1][1] * grad[r][1],
            ];
            for c in 0..n {
                let nc = shape.n[c];
                ce[(r, c)] += dv * nr * nc;
                let convect = nr * (a[0] * grad[c][0] + a[1] * grad[c][1]);
                let diffuse = dgr[0] * grad[c][0] + dgr[1] * grad[c][1];
                ke[(r, c)] += dv * (convect + diffuse - reaction * nr * nc);
            }
            fe[r] += dv * source * nr;
        }
    }

    if !faces.is_empty() {
        let order = match kind.dim() {
            1 => rule.points.len(),
            _ => (rule.points.len() as f64).sqrt().round() as usize,
        };
        let line = gauss_legendre(order.clamp(1, 5), 1)?;
        for load in faces {
            if load.face >= kind.face_count() {
                return Err(Error::InvalidArgument(format!(
                    "element {} has no face {}",
                    elem.id, load.face
                )));
            }
            for (s, ds) in face_points(kind, load.face, &line) {
                let shape = shape_values(kind, s)?;
                let x = position(&shape.n, &coords);
                let measure =
                    ds * face_length(kind, load.face, &shape, &coords) * coeffs.weight_at(x);
                match load.condition {
                    FaceCondition::Neumann { q } => {
                        let q = q.at(x);
                        for r in 0..n {
                            fe[r] += measure * q * shape.n[r];
                        }
                    }
                    FaceCondition::Convective { h_c, u_inf } => {
                        let (h, u) = (h_c.at(x), u_inf.at(x));
                        for r in 0..n {
                            fe[r] += measure * h * u * shape.n[r];
                            for c in 0..n {
                                ke[(r, c)] += measure * h * shape.n[r] * shape.n[c];
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(ElementMatrices { ce, ke, fe })
}

fn position(n: &[f64], coords: &[[f64; 2]]) -> [f64; 2] {
    let mut x = [0.0; 2];
    for (ni, c) in n.iter().zip(coords) {
        x[0] += ni * c[0];
        x[1] += ni * c[1];
    }
    x
}

fn check_diffusion(d: [[f64; 2]; 2], x: [f64; 2]) -> Result<()> {
    let scale = d
        .iter()
        .flatten()
        .fold(0.0f64, |m, v| m.max(v.abs()))
        .max(f64::MIN_POSITIVE);
    let tol = 1e-12 * scale;
    let finite = d.iter().flatten().all(|v| v.is_finite());
    let symmetric = (d[0][1] - d[1][0]).abs() <= tol;
    let psd =
        d[0][0] >= -tol && d[1][1] >= -tol && d[0][0] * d[1][1] - d[0][1] * d[1][0] >= -tol * scale;
    if finite && symmetric && psd {
        Ok(())
    } else {
        Err(Error::IndefiniteDiffusion { x: x[0], y: x[1] })
    }
}

/// Quadrature points on a face as natural coordinates with their weights.
fn face_points(kind: ElementKind, face: usize, line: &QuadratureRule) -> Vec<([f64; 2], f64)> {
    match kind.dim() {
        1 => vec![(if face == 0 { [-1.0, 0.0] } else { [1.0, 0.0] }, 1.0)],
        _ => line
            .points
            .iter()
            .zip(&line.weights)
            .map(|(p, &w)| {
                let s = p[0];
                let xi = match face {
                    0 => [s, -1.0],
                    1 => [1.0, s],
                    2 => [-s, 1.0],
                    _ => [-1.0, -s],
                };
                (xi, w)
            })
            .collect(),
    }
}

/// |dx/ds| along a Quad4 edge (1 for line end points).
fn face_length(
    kind: ElementKind,
    face: usize,
    shape: &super::ShapeEval,
    coords: &[[f64; 2]],
) -> f64 {
    if kind.dim() == 1 {
        return 1.0;
    }
    // d(ξ, η)/ds for each face parametrisation above
    let dir = match face {
        0 => [1.0, 0.0],
        1 => [0.0, 1.0],
        2 => [-1.0, 0.0],
        _ => [0.0, -1.0],
    };
    let mut t = [0.0; 2];
    for (d, c) in shape.dn.iter().zip(coords) {
        let ds = d[0] * dir[0] + d[1] * dir[1];
        t[0] += ds * c[0];
        t[1] += ds * c[1];
    }
    t[0].hypot(t[1])
}

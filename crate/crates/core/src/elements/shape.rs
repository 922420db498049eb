use crate::error::{Error, Result};
use crate::mesh::ElementKind;

/// Shape function values and natural-coordinate derivatives at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct ShapeEval {
    pub n: Vec<f64>,
    /// `dn[i] = [∂N_i/∂ξ, ∂N_i/∂η]` (η component is 0 for lines).
    pub dn: Vec<[f64; 2]>,
}

pub fn shape_values(kind: ElementKind, xi: [f64; 2]) -> Result<ShapeEval> {
    if !xi.iter().all(|v| v.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "non-finite natural coordinates {xi:?}"
        )));
    }
    let [s, t] = xi;
    Ok(match kind {
        ElementKind::Line2 => ShapeEval {
            n: vec![(1.0 - s) / 2.0, (1.0 + s) / 2.0],
            dn: vec![[-0.5, 0.0], [0.5, 0.0]],
        },
        ElementKind::Line3 => ShapeEval {
            n: vec![-s * (1.0 - s) / 2.0, 1.0 - s * s, s * (1.0 + s) / 2.0],
            dn: vec![[s - 0.5, 0.0], [-2.0 * s, 0.0], [s + 0.5, 0.0]],
        },
        ElementKind::Quad4 => ShapeEval {
            n: vec![
                (1.0 - s) * (1.0 - t) / 4.0,
                (1.0 + s) * (1.0 - t) / 4.0,
                (1.0 + s) * (1.0 + t) / 4.0,
                (1.0 - s) * (1.0 + t) / 4.0,
            ],
            dn: vec![
                [-(1.0 - t) / 4.0, -(1.0 - s) / 4.0],
                [(1.0 - t) / 4.0, -(1.0 + s) / 4.0],
                [(1.0 + t) / 4.0, (1.0 + s) / 4.0],
                [-(1.0 + t) / 4.0, (1.0 - s) / 4.0],
            ],
        },
    })
}

/// Jacobian determinant and the matrix J = [[∂x/∂ξ, ∂y/∂ξ], [∂x/∂η, ∂y/∂η]]
/// (for lines only J[0][0] is meaningful).
pub fn jacobian(kind: ElementKind, shape: &ShapeEval, coords: &[[f64; 2]]) -> (f64, [[f64; 2]; 2]) {
    let mut j = [[0.0; 2]; 2];
    for (d, c) in shape.dn.iter().zip(coords) {
        for a in 0..2 {
            for b in 0..2 {
                j[a][b] += d[a] * c[b];
            }
        }
    }
    let det = match kind.dim() {
        1 => j[0][0],
        _ => j[0][0] * j[1][1] - j[0][1] * j[1][0],
    };
    (det, j)
}

/// Physical gradients `[∂N_i/∂x, ∂N_i/∂y]` from J⁻¹ applied to the natural ones.
pub fn physical_gradients(
    kind: ElementKind,
    shape: &ShapeEval,
    j: &[[f64; 2]; 2],
    det: f64,
) -> Vec<[f64; 2]> {
    match kind.dim() {
        1 => shape.dn.iter().map(|d| [d[0] / det, 0.0]).collect(),
        _ => {
            let inv = [
                [j[1][1] / det, -j[0][1] / det],
                [-j[1][0] / det, j[0][0] / det],
            ];
            shape
                .dn
                .iter()
                .map(|d| {
                    [
                        inv[0][0] * d[0] + inv[0][1] * d[1],
                        inv[1][0] * d[0] + inv[1][1] * d[1],
                    ]
                })
                .collect()
        }
    }
}

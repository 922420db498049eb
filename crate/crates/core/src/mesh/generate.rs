use std::collections::HashMap;
use std::f64::consts::FRAC_PI_4;

use super::{BoundaryTags, ElementKind, Mesh, TAG_DIRICHLET, TAG_NEUMANN};
use crate::error::{Error, Result};

/// Uniform mesh of `[0, length]` with Line2 (`order` 1) or Line3 (`order` 2)
/// elements. Both end points are tagged `dirichlet`.
pub fn generate_interval(length: f64, n_elems: usize, order: usize) -> Result<Mesh> {
    if !(length > 0.0) || !length.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "interval length must be positive, got {length}"
        )));
    }
    if n_elems == 0 {
        return Err(Error::InvalidArgument(
            "interval needs at least one element".into(),
        ));
    }
    let (kind, per) = match order {
        1 => (ElementKind::Line2, 1),
        2 => (ElementKind::Line3, 2),
        _ => {
            return Err(Error::InvalidArgument(format!(
                "element order must be 1 or 2, got {order}"
            )))
        }
    };
    let n_nodes = per * n_elems + 1;
    let coords = (0..n_nodes)
        .map(|i| [length * i as f64 / (n_nodes - 1) as f64, 0.0])
        .collect();
    let elements = (0..n_elems)
        .map(|e| (kind, (0..=per).map(|l| per * e + l).collect()))
        .collect();
    let mut tags = BoundaryTags::new();
    tags.insert(
        TAG_DIRICHLET.into(),
        [(0, 0), (n_elems - 1, 1)].into_iter().collect(),
    );
    Mesh::new(1, coords, elements, tags)
}

/// Structured Quad4 grid on `[0, lx] x [0, ly]`, all four sides `dirichlet`.
pub fn generate_rectangle(lx: f64, ly: f64, nx: usize, ny: usize) -> Result<Mesh> {
    if !(lx > 0.0 && ly > 0.0) || !lx.is_finite() || !ly.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "rectangle sides must be positive, got {lx} x {ly}"
        )));
    }
    if nx == 0 || ny == 0 {
        return Err(Error::InvalidArgument(
            "rectangle needs at least one element per direction".into(),
        ));
    }
    let id = |i: usize, j: usize| j * (nx + 1) + i;
    let mut coords = Vec::with_capacity((nx + 1) * (ny + 1));
    for j in 0..=ny {
        for i in 0..=nx {
            coords.push([lx * i as f64 / nx as f64, ly * j as f64 / ny as f64]);
        }
    }
    let mut elements = Vec::with_capacity(nx * ny);
    let mut boundary = Vec::new();
    for j in 0..ny {
        for i in 0..nx {
            let e = elements.len();
            elements.push((
                ElementKind::Quad4,
                vec![id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)],
            ));
            if j == 0 {
                boundary.push((e, 0));
            }
            if i == nx - 1 {
                boundary.push((e, 1));
            }
            if j == ny - 1 {
                boundary.push((e, 2));
            }
            if i == 0 {
                boundary.push((e, 3));
            }
        }
    }
    let mut tags = BoundaryTags::new();
    tags.insert(TAG_DIRICHLET.into(), boundary.into_iter().collect());
    Mesh::new(2, coords, elements, tags)
}

/// Quarter of the unit disk (x, y ≥ 0) as three structured blocks: a
/// central quadrilateral with corners (0,0), (1/2,0), (b,b), (0,1/2),
/// b = 1/(2√2), and two rim blocks blending its straight edges into the
/// arc. Each block holds 2^refine x 2^refine elements. The arc is tagged
/// `dirichlet`, the straight edges on the axes `neumann`.
pub fn generate_quarter_disk(refine: u32) -> Result<Mesh> {
    if refine > 10 {
        return Err(Error::InvalidArgument(format!(
            "refine level {refine} is too large"
        )));
    }
    let m = 1usize << refine;
    let b = 0.5 * std::f64::consts::FRAC_1_SQRT_2;
    let p10 = [0.5, 0.0];
    let p11 = [b, b];
    let p01 = [0.0, 0.5];
    let lerp =
        |a: [f64; 2], c: [f64; 2], s: f64| [a[0] + s * (c[0] - a[0]), a[1] + s * (c[1] - a[1])];
    let arc = |angle: f64| [angle.cos(), angle.sin()];

    type BlockMap = Box<dyn Fn(f64, f64) -> [f64; 2]>;
    let blocks: [BlockMap; 3] = [
        // central block, bilinear
        Box::new(move |u, v| {
            let bottom = lerp([0.0, 0.0], p10, u);
            let top = lerp(p01, p11, u);
            lerp(bottom, top, v)
        }),
        // rim block along the x axis: u radial, v angular
        Box::new(move |u, v| {
            let inner = lerp(p10, p11, v);
            lerp(inner, arc(FRAC_PI_4 * v), u)
        }),
        // rim block along the y axis: u angular, v radial
        Box::new(move |u, v| {
            let inner = lerp(p01, p11, u);
            lerp(inner, arc(2.0 * FRAC_PI_4 - FRAC_PI_4 * u), v)
        }),
    ];

    let mut coords: Vec<[f64; 2]> = Vec::new();
    let mut index: HashMap<(i64, i64), usize> = HashMap::new();
    let mut elements = Vec::with_capacity(3 * m * m);
    for map in &blocks {
        let mut ids = vec![0usize; (m + 1) * (m + 1)];
        for j in 0..=m {
            for i in 0..=m {
                let mut p = map(i as f64 / m as f64, j as f64 / m as f64);
                // snap the exact zeros on the axes
                for c in p.iter_mut() {
                    if c.abs() < 1e-15 {
                        *c = 0.0;
                    }
                }
                let key = ((p[0] * 1e10).round() as i64, (p[1] * 1e10).round() as i64);
                ids[j * (m + 1) + i] = *index.entry(key).or_insert_with(|| {
                    coords.push(p);
                    coords.len() - 1
                });
            }
        }
        for j in 0..m {
            for i in 0..m {
                let n = |a: usize, c: usize| ids[c * (m + 1) + a];
                elements.push((
                    ElementKind::Quad4,
                    vec![n(i, j), n(i + 1, j), n(i + 1, j + 1), n(i, j + 1)],
                ));
            }
        }
    }

    let mut mesh = Mesh::new(2, coords, elements, BoundaryTags::new())?;
    let mut dirichlet = std::collections::BTreeSet::new();
    let mut neumann = std::collections::BTreeSet::new();
    for (e, f) in mesh.boundary_faces() {
        let elem = &mesh.elements[e];
        let pts: Vec<[f64; 2]> = elem
            .kind
            .face_nodes(f)
            .iter()
            .map(|&l| mesh.nodes[elem.nodes[l]].coords)
            .collect();
        let on_arc = pts.iter().all(|p| (p[0].hypot(p[1]) - 1.0).abs() < 1e-9);
        if on_arc {
            dirichlet.insert((e, f));
        } else {
            neumann.insert((e, f));
        }
    }
    mesh.boundary_tags.insert(TAG_DIRICHLET.into(), dirichlet);
    mesh.boundary_tags.insert(TAG_NEUMANN.into(), neumann);
    mesh.validate()?;
    Ok(mesh)
}

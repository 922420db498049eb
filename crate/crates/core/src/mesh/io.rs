//! JSON mesh files.
//!
//! ```json
//! {
//!   "dim": 2,
//!   "nodes": [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]],
//!   "elements": [{ "kind": "Quad4", "nodes": [0, 1, 2, 3] }],
//!   "tags": { "dirichlet": [[0, 0], [0, 1]], "neumann": [[0, 2]] }
//! }
//! ```
//!
//! Node and element ids are their positions in the arrays. 1D meshes list
//! one coordinate per node. Tag entries are `[element, local face]`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{BoundaryTags, ElementKind, Mesh};
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MeshFile {
    dim: usize,
    nodes: Vec<Vec<f64>>,
    elements: Vec<ElementRecord>,
    #[serde(default)]
    tags: BTreeMap<String, Vec<[usize; 2]>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ElementRecord {
    kind: ElementKind,
    nodes: Vec<usize>,
}

pub fn mesh_to_json(mesh: &Mesh) -> String {
    let file = MeshFile {
        dim: mesh.dim,
        nodes: mesh
            .nodes
            .iter()
            .map(|n| n.coords[..mesh.dim].to_vec())
            .collect(),
        elements: mesh
            .elements
            .iter()
            .map(|e| ElementRecord {
                kind: e.kind,
                nodes: e.nodes.clone(),
            })
            .collect(),
        tags: mesh
            .boundary_tags
            .iter()
            .map(|(k, v)| (k.clone(), v.iter().map(|&(e, f)| [e, f]).collect()))
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("mesh serialization cannot fail")
}

pub fn mesh_from_json(text: &str, origin: &Path) -> Result<Mesh> {
    let parse_err = |msg: String| Error::Parse {
        path: origin.to_path_buf(),
        msg,
    };
    let file: MeshFile = serde_json::from_str(text)
        .map_err(|e| parse_err(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    if file.dim != 1 && file.dim != 2 {
        return Err(parse_err(format!(
            "field `dim`: expected 1 or 2, got {}",
            file.dim
        )));
    }
    let mut coords = Vec::with_capacity(file.nodes.len());
    for (i, c) in file.nodes.iter().enumerate() {
        if c.len() != file.dim {
            return Err(parse_err(format!(
                "field `nodes[{i}]`: expected {} coordinate(s), got {}",
                file.dim,
                c.len()
            )));
        }
        coords.push([c[0], if file.dim == 2 { c[1] } else { 0.0 }]);
    }
    let elements = file
        .elements
        .into_iter()
        .map(|e| (e.kind, e.nodes))
        .collect();
    let tags: BoundaryTags = file
        .tags
        .into_iter()
        .map(|(k, v)| (k, v.into_iter().map(|[e, f]| (e, f)).collect()))
        .collect();
    Mesh::new(file.dim, coords, elements, tags)
}

pub fn load_mesh(path: &Path) -> Result<Mesh> {
    let text = std::fs::read_to_string(path)?;
    mesh_from_json(&text, path)
}

pub fn save_mesh(mesh: &Mesh, path: &Path) -> Result<()> {
    crate::io::write_atomic(path, mesh_to_json(mesh).as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{generate_interval, generate_quarter_disk};

    #[test]
    fn round_trip_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        for mesh in [
            generate_interval(10.0, 10, 1).unwrap(),
            generate_quarter_disk(2).unwrap(),
        ] {
            let path = dir.path().join("m.json");
            save_mesh(&mesh, &path).unwrap();
            assert_eq!(load_mesh(&path).unwrap(), mesh);
        }
    }

    #[test]
    fn missing_coordinate_is_a_parse_error() {
        let text = r#"{"dim": 2, "nodes": [[0,0],[1]], "elements": []}"#;
        let err = mesh_from_json(text, Path::new("x.json")).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
        assert!(err.to_string().contains("nodes[1]"), "{err}");
    }

    #[test]
    fn syntax_error_reports_line() {
        let text = "{\n\"dim\": 1,\n\"nodes\": [[0], [1]\n}";
        let err = mesh_from_json(text, Path::new("x.json")).unwrap_err();
        assert!(err.to_string().contains("line"), "{err}");
    }

    #[test]
    fn overlapping_tags_fail_validation() {
        let text = r#"{"dim": 1, "nodes": [[0],[1]], "elements": [{"kind":"Line2","nodes":[0,1]}],
                      "tags": {"dirichlet": [[0,0]], "neumann": [[0,0]]}}"#;
        let err = mesh_from_json(text, Path::new("x.json")).unwrap_err();
        assert!(matches!(err, Error::MeshValidation(_)), "{err}");
    }
}

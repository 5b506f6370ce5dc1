use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bezier_core::{BezierPatch, Point3, Side};
use crate::gcont::EdgeCorrespondence;

use super::format::to_json_string;
use super::IoError;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatchRecord {
    pub name: String,
    pub degree_u: usize,
    pub degree_v: usize,
    /// Row-major: entry i·(degree_v+1)+j is q_{i,j}.
    pub net: Vec<[f64; 3]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub a: String,
    pub a_side: Side,
    pub b: String,
    pub b_side: Side,
    #[serde(default)]
    pub reversed: bool,
}

/// Four patches around a vertex, in the order 1, 2, 3, 4 of
/// [`crate::gcont::CornerConfig`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexRecord {
    pub patches: [String; 4],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceDocument {
    pub version: u32,
    pub patches: Vec<PatchRecord>,
    #[serde(default)]
    pub edges: Vec<EdgeRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vertices: Vec<VertexRecord>,
    /// Optional constant link values, keyed by edge label.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub lambdas: BTreeMap<String, f64>,
}

impl PatchRecord {
    pub fn from_patch(name: impl Into<String>, p: &BezierPatch) -> Self {
        Self {
            name: name.into(),
            degree_u: p.degree_u(),
            degree_v: p.degree_v(),
            net: p.net().iter().map(|q| [q.x, q.y, q.z]).collect(),
        }
    }

    pub fn to_patch(&self) -> Result<BezierPatch, IoError> {
        let expected = (self.degree_u + 1) * (self.degree_v + 1);
        if self.net.len() != expected {
            return Err(IoError::Schema(format!(
                "patch '{}': net has {} points, degrees ({}, {}) need {expected}",
                self.name,
                self.net.len(),
                self.degree_u,
                self.degree_v
            )));
        }
        if let Some(k) = self
            .net
            .iter()
            .position(|c| c.iter().any(|x| !x.is_finite()))
        {
            return Err(IoError::Schema(format!(
                "patch '{}': net[{k}] is not finite",
                self.name
            )));
        }
        let net = self
            .net
            .iter()
            .map(|c| Point3::new(c[0], c[1], c[2]))
            .collect();
        BezierPatch::new(self.degree_u, self.degree_v, net)
            .map_err(|e| IoError::Schema(format!("patch '{}': {e}", self.name)))
    }
}

impl SurfaceDocument {
    pub fn new() -> Self {
        Self {
            version: FORMAT_VERSION,
            patches: Vec::new(),
            edges: Vec::new(),
            vertices: Vec::new(),
            lambdas: BTreeMap::new(),
        }
    }

    pub fn push_patch(&mut self, name: impl Into<String>, p: &BezierPatch) {
        self.patches.push(PatchRecord::from_patch(name, p));
    }

    pub fn push_edge(&mut self, a: &str, a_side: Side, b: &str, b_side: Side) {
        self.edges.push(EdgeRecord {
            a: a.into(),
            a_side,
            b: b.into(),
            b_side,
            reversed: false,
        });
    }

    pub fn push_vertex(&mut self, names: [&str; 4]) {
        self.vertices.push(VertexRecord {
            patches: names.map(String::from),
        });
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.patches.iter().position(|p| p.name == name)
    }

    pub fn patch(&self, name: &str) -> Result<BezierPatch, IoError> {
        let k = self
            .index_of(name)
            .ok_or_else(|| IoError::Schema(format!("no patch named '{name}'")))?;
        self.patches[k].to_patch()
    }

    /// All patches, in document order.
    pub fn bezier_patches(&self) -> Result<Vec<BezierPatch>, IoError> {
        self.patches.iter().map(PatchRecord::to_patch).collect()
    }

    /// Edge records resolved to patch indices.
    pub fn correspondences(&self) -> Result<Vec<EdgeCorrespondence>, IoError> {
        self.edges
            .iter()
            .enumerate()
            .map(|(k, e)| {
                let find = |n: &str| {
                    self.index_of(n)
                        .ok_or_else(|| IoError::Schema(format!("edges[{k}]: unknown patch '{n}'")))
                };
                Ok(EdgeCorrespondence::new(
                    find(&e.a)?,
                    e.a_side,
                    find(&e.b)?,
                    e.b_side,
                    e.reversed,
                ))
            })
            .collect()
    }

    /// Vertex records resolved to patch indices.
    pub fn vertex_indices(&self) -> Result<Vec<[usize; 4]>, IoError> {
        self.vertices
            .iter()
            .enumerate()
            .map(|(k, v)| {
                let mut out = [0; 4];
                for (slot, n) in out.iter_mut().zip(&v.patches) {
                    *slot = self.index_of(n).ok_or_else(|| {
                        IoError::Schema(format!("vertices[{k}]: unknown patch '{n}'"))
                    })?;
                }
                Ok(out)
            })
            .collect()
    }

    /// Structural checks beyond the JSON schema.
    pub fn validate(&self) -> Result<(), IoError> {
        if self.version != FORMAT_VERSION {
            return Err(IoError::Schema(format!(
                "unsupported version {} (expected {FORMAT_VERSION})",
                self.version
            )));
        }
        let mut seen = HashMap::new();
        for (k, p) in self.patches.iter().enumerate() {
            if let Some(prev) = seen.insert(p.name.as_str(), k) {
                return Err(IoError::Schema(format!(
                    "patches[{k}]: name '{}' already used by patches[{prev}]",
                    p.name
                )));
            }
            p.to_patch()?;
        }
        self.correspondences()?;
        self.vertex_indices()?;
        Ok(())
    }

    pub fn from_json(text: &str, origin: &str) -> Result<Self, IoError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let doc: Self = serde_path_to_error::deserialize(de).map_err(|e| IoError::Parse {
            path: origin.into(),
            field: e.path().to_string(),
            message: e.inner().to_string(),
        })?;
        doc.validate()?;
        Ok(doc)
    }

    pub fn to_json(&self) -> Result<String, IoError> {
        to_json_string(self).map_err(|e| IoError::Schema(e.to_string()))
    }
}

impl Default for SurfaceDocument {
    fn default() -> Self {
        Self::new()
    }
}

pub fn load_surface(path: &Path) -> Result<SurfaceDocument, IoError> {
    let text = fs::read_to_string(path).map_err(|e| IoError::io(path, e))?;
    SurfaceDocument::from_json(&text, &path.display().to_string())
}

pub fn save_surface(doc: &SurfaceDocument, path: &Path) -> Result<(), IoError> {
    fs::write(path, doc.to_json()?).map_err(|e| IoError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bilinear() -> BezierPatch {
        BezierPatch::new(
            1,
            1,
            vec![
                Point3::new(0.0, 0.0, 0.0),
                Point3::new(0.0, 1.0, 0.1),
                Point3::new(1.0, 0.0, 1.0 / 3.0),
                Point3::new(1.0, 1.0, 0.0),
            ],
        )
        .unwrap()
    }

    #[test]
    fn minimal_round_trip() {
        let mut doc = SurfaceDocument::new();
        doc.push_patch("p", &bilinear());
        let text = doc.to_json().unwrap();
        let back = SurfaceDocument::from_json(&text, "mem").unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_json().unwrap(), text);
    }

    #[test]
    fn net_size_error_names_patch() {
        let text = r#"{"version":1,"patches":[{"name":"lid","degree_u":1,"degree_v":1,"net":[[0,0,0]]}],"edges":[]}"#;
        let err = SurfaceDocument::from_json(text, "mem").unwrap_err();
        assert!(err.to_string().contains("lid"), "{err}");
    }

    #[test]
    fn parse_error_has_field_path() {
        let text =
            r#"{"version":1,"patches":[{"name":"a","degree_u":1,"degree_v":1,"net":[[0,0,"x"]]}]}"#;
        let err = SurfaceDocument::from_json(text, "mem").unwrap_err();
        assert!(err.to_string().contains("patches[0].net[0][2]"), "{err}");
    }

    #[test]
    fn unknown_edge_patch_rejected() {
        let mut doc = SurfaceDocument::new();
        doc.push_patch("a", &bilinear());
        doc.push_edge("a", Side::U1, "b", Side::U0);
        assert!(doc.validate().is_err());
    }

    #[test]
    fn wrong_version_rejected() {
        let text = r#"{"version":2,"patches":[]}"#;
        assert!(SurfaceDocument::from_json(text, "mem").is_err());
    }
}

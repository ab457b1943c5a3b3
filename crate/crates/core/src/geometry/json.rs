use serde::{Deserialize, Serialize};

use super::IncidenceGeometry;
use crate::error::Result;

/// On-disk form of a geometry:
///
/// ```json
/// { "points": ["a", "b", "c"],
///   "subspaces": [ { "dim": -1, "points": [] }, { "dim": 0, "points": ["a"] }, ... ],
///   "claimed_order": 2 }
/// ```
///
/// Every member of `L` is listed, including the empty set and the full
/// point set. Point lists are written sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryFile {
    pub points: Vec<String>,
    pub subspaces: Vec<SubspaceEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claimed_order: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceEntry {
    pub dim: i64,
    pub points: Vec<String>,
}

impl GeometryFile {
    pub fn from_geometry(g: &IncidenceGeometry) -> Self {
        let subspaces = (0..g.subspaces().len())
            .map(|i| {
                let mut points = g.subspace_names(i);
                points.sort();
                SubspaceEntry { dim: g.subspaces()[i].dim(), points }
            })
            .collect();
        GeometryFile { points: g.points().to_vec(), subspaces, claimed_order: g.claimed_order() }
    }

    pub fn into_geometry(self) -> Result<IncidenceGeometry> {
        let subspaces = self.subspaces.into_iter().map(|s| (s.points, s.dim)).collect();
        IncidenceGeometry::from_named(self.points, subspaces, self.claimed_order)
    }
}

impl IncidenceGeometry {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&GeometryFile::from_geometry(self)).expect("geometry serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GeometryFile = crate::error::from_json(text)?;
        file.into_geometry()
    }
}

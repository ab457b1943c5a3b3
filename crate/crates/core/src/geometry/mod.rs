//! Finite incidence geometries: a point set, a family of subspaces (subsets
//! of the points) and a dimension function. Constructors for projective
//! spaces over `F_q` and for Boolean algebras (the order-1 case), validators
//! for the six projective-geometry axioms and the counting results that
//! follow from them, and brute-force collineation counting.

mod build;
mod collineation;
mod json;
mod validate;

use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

pub use build::{
    affine_decomposition, affine_decomposition_with, build_boolean_geometry, build_boolean_geometry_with,
    build_projective_space, build_projective_space_with, point_name,
};
pub use collineation::{collineation_order, collineation_order_with};
pub use json::{GeometryFile, SubspaceEntry};
pub use validate::{
    check_lemma1, point_count_check, subspace_census, validate_axioms, AxiomReport, CensusReport, CensusRow,
    CheckVerdict, Lemma1Report, PointCountReport, Witness,
};

/// One member of the subspace family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    members: FixedBitSet,
    dim: i64,
}

impl Subspace {
    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn dim(&self) -> i64 {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_clear()
    }

    /// Member point indices in increasing order.
    pub fn point_indices(&self) -> Vec<usize> {
        self.members.ones().collect()
    }
}

/// A point set `P`, a family `L` of subsets of `P`, and `dim : L -> {-1, 0, 1, ...}`.
///
/// Construction only checks well-formedness (unique point names, known
/// points, no repeated point set in `L`, dimensions at least -1, a claimed
/// order of at least 1). Whether the structure satisfies the axioms is the
/// business of [`validate_axioms`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceGeometry {
    points: Vec<String>,
    subspaces: Vec<Subspace>,
    claimed_order: Option<u64>,
}

impl IncidenceGeometry {
    /// Builds a geometry from subspaces given as point-index lists.
    pub fn new(points: Vec<String>, subspaces: Vec<(Vec<usize>, i64)>, claimed_order: Option<u64>) -> Result<Self> {
        let mut seen = HashSet::new();
        for p in &points {
            if !seen.insert(p.as_str()) {
                return Err(Error::Format(format!("points: duplicate point \"{p}\"")));
            }
        }
        if claimed_order == Some(0) {
            return Err(Error::Format("claimed_order: order 0 is not supported".into()));
        }
        let n = points.len();
        let mut sets = HashSet::new();
        let mut out = Vec::with_capacity(subspaces.len());
        for (i, (members, dim)) in subspaces.into_iter().enumerate() {
            if dim < -1 {
                return Err(Error::Format(format!("subspaces[{i}].dim: {dim} is below -1")));
            }
            let mut bits = FixedBitSet::with_capacity(n);
            for m in members {
                if m >= n {
                    return Err(Error::Format(format!("subspaces[{i}].points: point index {m} out of range")));
                }
                if bits.put(m) {
                    return Err(Error::Format(format!(
                        "subspaces[{i}].points: point \"{}\" listed twice",
                        points[m]
                    )));
                }
            }
            if !sets.insert(bits.clone()) {
                return Err(Error::Format(format!(
                    "subspaces[{i}].points: the same point set appears twice in the subspace family"
                )));
            }
            out.push(Subspace { members: bits, dim });
        }
        Ok(IncidenceGeometry { points, subspaces: out, claimed_order })
    }

    /// Builds a geometry from subspaces given by point names.
    pub fn from_named(points: Vec<String>, subspaces: Vec<(Vec<String>, i64)>, claimed_order: Option<u64>) -> Result<Self> {
        let index: HashMap<&str, usize> = points.iter().enumerate().map(|(i, p)| (p.as_str(), i)).collect();
        let mut indexed = Vec::with_capacity(subspaces.len());
        for (i, (names, dim)) in subspaces.iter().enumerate() {
            let members = names
                .iter()
                .map(|name| {
                    index
                        .get(name.as_str())
                        .copied()
                        .ok_or_else(|| Error::Format(format!("subspaces[{i}].points: unknown point \"{name}\"")))
                })
                .collect::<Result<Vec<_>>>()?;
            indexed.push((members, *dim));
        }
        IncidenceGeometry::new(points, indexed, claimed_order)
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    pub fn claimed_order(&self) -> Option<u64> {
        self.claimed_order
    }

    /// Point names of subspace `i`, in point order.
    pub fn subspace_names(&self, i: usize) -> Vec<String> {
        self.names_of(&self.subspaces[i].members)
    }

    pub(crate) fn names_of(&self, bits: &FixedBitSet) -> Vec<String> {
        bits.ones().map(|p| self.points[p].clone()).collect()
    }

    /// Indices of the dimension-1 subspaces.
    pub fn lines(&self) -> Vec<usize> {
        (0..self.subspaces.len()).filter(|&i| self.subspaces[i].dim == 1).collect()
    }

    /// Index of the subspace holding every point, if present.
    pub fn full_subspace(&self) -> Option<usize> {
        let n = self.points.len();
        self.subspaces.iter().position(|s| s.members.count_ones(..) == n)
    }

    /// Number of subspaces in each dimension, sorted by dimension.
    pub fn dimension_counts(&self) -> Vec<(i64, usize)> {
        let mut counts = std::collections::BTreeMap::new();
        for s in &self.subspaces {
            *counts.entry(s.dim).or_insert(0) += 1;
        }
        counts.into_iter().collect()
    }

    /// The geometry induced on the points of subspace `i`: its points and
    /// every member of `L` contained in it.
    pub fn restrict_to(&self, i: usize, claimed_order: Option<u64>) -> IncidenceGeometry {
        let outer = &self.subspaces[i].members;
        let kept: Vec<usize> = outer.ones().collect();
        let mut remap = vec![usize::MAX; self.points.len()];
        for (new, &old) in kept.iter().enumerate() {
            remap[old] = new;
        }
        let points = kept.iter().map(|&p| self.points[p].clone()).collect();
        let subspaces = self
            .subspaces
            .iter()
            .filter(|s| s.members.is_subset(outer))
            .map(|s| {
                let mut bits = FixedBitSet::with_capacity(kept.len());
                for p in s.members.ones() {
                    bits.insert(remap[p]);
                }
                Subspace { members: bits, dim: s.dim }
            })
            .collect();
        IncidenceGeometry { points, subspaces, claimed_order }
    }

    // Corruptions, used to check that the validators notice damage.

    /// Drops subspace `i` from `L`.
    pub fn without_subspace(&self, i: usize) -> IncidenceGeometry {
        let mut g = self.clone();
        g.subspaces.remove(i);
        g
    }

    /// Reassigns the dimension of subspace `i`.
    pub fn with_dimension(&self, i: usize, dim: i64) -> IncidenceGeometry {
        let mut g = self.clone();
        g.subspaces[i].dim = dim;
        g
    }

    /// Removes point `p` from `P` and from every member of `L`. The singleton
    /// `{p}` collapses onto the empty set and is dropped; everything else in
    /// `L` keeps its dimension. Fails if two other members collapse together.
    pub fn without_point(&self, p: usize) -> Result<IncidenceGeometry> {
        let points: Vec<String> = self
            .points
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != p)
            .map(|(_, s)| s.clone())
            .collect();
        let subspaces = self
            .subspaces
            .iter()
            .filter(|s| !(s.members.contains(p) && s.members.count_ones(..) == 1))
            .map(|s| {
                let members = s.members.ones().filter(|&i| i != p).map(|i| if i > p { i - 1 } else { i }).collect();
                (members, s.dim)
            })
            .collect();
        IncidenceGeometry::new(points, subspaces, self.claimed_order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn well_formedness() {
        let pts = names(&["a", "b"]);
        assert!(IncidenceGeometry::new(names(&["a", "a"]), vec![], None).is_err());
        assert!(IncidenceGeometry::new(pts.clone(), vec![(vec![2], 0)], None).is_err());
        assert!(IncidenceGeometry::new(pts.clone(), vec![(vec![0, 0], 0)], None).is_err());
        assert!(IncidenceGeometry::new(pts.clone(), vec![(vec![0], 0), (vec![0], 1)], None).is_err());
        assert!(IncidenceGeometry::new(pts.clone(), vec![(vec![], -2)], None).is_err());
        assert!(IncidenceGeometry::new(pts.clone(), vec![], Some(0)).is_err());
        let err = IncidenceGeometry::from_named(pts, vec![(names(&["c"]), 0)], None).unwrap_err();
        assert!(err.to_string().contains("subspaces[0].points"));
    }

    #[test]
    fn restriction_and_mutations() {
        let g = build_projective_space(2, 2).unwrap();
        let line = g.lines()[0];
        let r = g.restrict_to(line, Some(2));
        assert_eq!(r.points().len(), 3);
        assert_eq!(r.subspaces().len(), 5);
        assert_eq!(g.without_subspace(line).subspaces().len(), g.subspaces().len() - 1);
        assert_eq!(g.with_dimension(line, 2).subspaces()[line].dim(), 2);
        let h = g.without_point(0).unwrap();
        assert_eq!(h.points().len(), 6);
        assert_eq!(h.subspaces().len(), g.subspaces().len() - 1);
    }
}

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;

use super::IncidenceGeometry;
use crate::error::{Error, Result};
use crate::fqlinalg::{combinations, enumerate_subspaces_in, subspace_count};
use crate::gfarith::make_field_with;
use crate::limits::Limits;

/// Homogeneous-coordinate name of a point, e.g. `[1,0,2]`. Coordinates are
/// field element codes.
pub fn point_name(coords: &[u32]) -> String {
    let parts: Vec<String> = coords.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}

pub fn build_projective_space(q: u64, n: u32) -> Result<IncidenceGeometry> {
    build_projective_space_with(q, n, &Limits::default())
}

/// `P^n(F_q)`: points are the 1-dimensional subspaces of `F_q^(n+1)`, each
/// named by its representative with first nonzero coordinate 1. Every
/// vector subspace `W` contributes the set of points inside it, with
/// dimension `dim W - 1`.
pub fn build_projective_space_with(q: u64, n: u32, limits: &Limits) -> Result<IncidenceGeometry> {
    let field = Arc::new(make_field_with(q, limits)?);
    let ambient = n + 1;
    let total: BigInt = (0..=ambient).map(|k| subspace_count(q, ambient, i64::from(k))).sum();
    if total > BigInt::from(limits.subspace_budget) {
        return Err(Error::budget("projective space construction", total, limits.subspace_budget));
    }

    let lines_through_origin = enumerate_subspaces_in(&field, ambient, 1, limits)?;
    let coords: Vec<Vec<u32>> = lines_through_origin
        .iter()
        .map(|s| s.basis_rows().next().expect("one basis row").to_vec())
        .collect();
    let index: HashMap<&[u32], usize> = coords.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect();

    let mut subspaces = Vec::with_capacity(total.try_into().unwrap_or(0));
    for k in 0..=ambient {
        for w in enumerate_subspaces_in(&field, ambient, i64::from(k), limits)? {
            let members = w
                .projective_points()
                .iter()
                .map(|v| index[v.as_slice()])
                .collect();
            subspaces.push((members, i64::from(k) - 1));
        }
    }
    let points = coords.iter().map(|c| point_name(c)).collect();
    IncidenceGeometry::new(points, subspaces, Some(q))
}

pub fn build_boolean_geometry(n_points: usize) -> Result<IncidenceGeometry> {
    build_boolean_geometry_with(n_points, &Limits::default())
}

/// The power set of an `n_points`-element set with `dim S = |S| - 1`, the
/// projective geometry of order 1. Subsets are listed by size, then
/// lexicographically.
pub fn build_boolean_geometry_with(n_points: usize, limits: &Limits) -> Result<IncidenceGeometry> {
    if n_points == 0 {
        return Err(Error::InvalidArgument("a Boolean geometry needs at least one point".into()));
    }
    if n_points > limits.boolean_points {
        return Err(Error::budget("Boolean geometry points", n_points, limits.boolean_points));
    }
    let points = (0..n_points).map(|i| format!("p{i}")).collect();
    let subspaces = (0..=n_points)
        .flat_map(|size| combinations(n_points, size).into_iter().map(move |c| (c, size as i64 - 1)))
        .collect();
    IncidenceGeometry::new(points, subspaces, Some(1))
}

pub fn affine_decomposition(q: u64, n: u32) -> Result<Vec<usize>> {
    affine_decomposition_with(q, n, &Limits::default())
}

/// Sizes of the pieces of `P^n(F_q)` grouped by the position of the first
/// nonzero homogeneous coordinate: the affine part `[1, x_1, ..., x_n]`,
/// then the affine part of the hyperplane at infinity, and so on.
pub fn affine_decomposition_with(q: u64, n: u32, limits: &Limits) -> Result<Vec<usize>> {
    let field = Arc::new(make_field_with(q, limits)?);
    let pts = enumerate_subspaces_in(&field, n + 1, 1, limits)?;
    let mut sizes = vec![0usize; n as usize + 1];
    for s in &pts {
        sizes[s.pivots()[0]] += 1;
    }
    Ok(sizes)
}

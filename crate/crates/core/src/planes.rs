//! Finite projective planes given directly as points and lines, and the
//! Bruck–Ryser restriction on their orders.

use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{CheckVerdict, IncidenceGeometry, Witness};

/// Points plus a family of subsets called lines. JSON form:
/// `{ "points": [...], "lines": [[...], ...] }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlaneStructure {
    pub points: Vec<String>,
    pub lines: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlaneReport {
    pub checks: Vec<CheckVerdict>,
    /// Common line size minus one, when line sizes are uniform.
    pub order: Option<u64>,
    pub uniform_line_size: bool,
    /// Whether every line has at least three points.
    pub lines_have_three_points: bool,
    /// Order 1: a triangle, valid under the plane conditions but outside the
    /// usual `q > 1` convention.
    pub degenerate: bool,
    pub valid: bool,
}

impl PlaneStructure {
    pub fn from_json(text: &str) -> Result<Self> {
        let plane: PlaneStructure = crate::error::from_json(text)?;
        plane.index()?;
        Ok(plane)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plane serializes")
    }

    /// Lines as bitsets over the point indices, rejecting unknown or
    /// repeated points.
    fn index(&self) -> Result<Vec<FixedBitSet>> {
        let mut index = HashMap::new();
        for (i, p) in self.points.iter().enumerate() {
            if index.insert(p.as_str(), i).is_some() {
                return Err(Error::Format(format!("points: duplicate point \"{p}\"")));
            }
        }
        self.lines
            .iter()
            .enumerate()
            .map(|(i, line)| {
                let mut bits = FixedBitSet::with_capacity(self.points.len());
                for name in line {
                    let &p = index
                        .get(name.as_str())
                        .ok_or_else(|| Error::Format(format!("lines[{i}]: unknown point \"{name}\"")))?;
                    if bits.put(p) {
                        return Err(Error::Format(format!("lines[{i}]: point \"{name}\" listed twice")));
                    }
                }
                Ok(bits)
            })
            .collect()
    }

    /// Completes the plane to a full subspace family: the empty set,
    /// singletons, lines and the whole point set, with dimensions -1..2.
    pub fn to_geometry(&self) -> Result<IncidenceGeometry> {
        let lines = self.index()?;
        let n = self.points.len();
        let mut subspaces: Vec<(Vec<usize>, i64)> = vec![(Vec::new(), -1)];
        subspaces.extend((0..n).map(|p| (vec![p], 0)));
        let mut seen = HashSet::new();
        for l in &lines {
            if seen.insert(l.clone()) {
                subspaces.push((l.ones().collect(), 1));
            }
        }
        subspaces.push(((0..n).collect(), 2));
        let order = lines.first().and_then(|l| (l.count_ones(..) as u64).checked_sub(1)).filter(|&q| q > 0);
        IncidenceGeometry::new(self.points.clone(), subspaces, order)
    }
}

/// Checks the plane conditions: not all points on one line, every line of
/// size `q + 1`, every two points on exactly one line, every two lines
/// meeting in exactly one point. Also records whether lines have at least
/// three points and whether line sizes are uniform.
pub fn validate_plane(p: &PlaneStructure) -> Result<PlaneReport> {
    let lines = p.index()?;
    let n = p.points.len();
    let sizes: Vec<usize> = lines.iter().map(|l| l.count_ones(..)).collect();
    let names = |bits: &FixedBitSet| -> Vec<String> { bits.ones().map(|i| p.points[i].clone()).collect() };
    let witness = |detail: String, subs: Vec<Vec<String>>, pts: Vec<String>| Witness {
        detail,
        subspaces: subs,
        points: pts,
    };

    let spread = if n == 0 {
        Some(witness("no points".into(), vec![], vec![]))
    } else {
        lines
            .iter()
            .position(|l| l.count_ones(..) == n)
            .map(|i| witness("every point lies on this line".into(), vec![names(&lines[i])], vec![]))
            .or_else(|| lines.is_empty().then(|| witness("no lines".into(), vec![], vec![])))
    };

    let uniform = sizes.windows(2).all(|w| w[0] == w[1]);
    let order = if uniform { sizes.first().and_then(|&s| (s as u64).checked_sub(1)) } else { None };
    let size_check = if let Some(i) = sizes.iter().position(|&s| s != sizes[0]) {
        Some(witness(
            format!("line sizes {} and {} differ", sizes[0], sizes[i]),
            vec![names(&lines[0]), names(&lines[i])],
            vec![],
        ))
    } else if order == Some(0) {
        Some(witness("lines with a single point".into(), vec![names(&lines[0])], vec![]))
    } else {
        None
    };

    let mut pairs = None;
    'pts: for x in 0..n {
        for y in x + 1..n {
            let count = lines.iter().filter(|l| l.contains(x) && l.contains(y)).count();
            if count != 1 {
                pairs = Some(witness(
                    format!("two distinct points lie on {count} lines"),
                    vec![],
                    vec![p.points[x].clone(), p.points[y].clone()],
                ));
                break 'pts;
            }
        }
    }

    let mut meets = None;
    'lines: for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let shared = lines[i].intersection(&lines[j]).count();
            if shared != 1 {
                meets = Some(witness(
                    format!("two distinct lines share {shared} points"),
                    vec![names(&lines[i]), names(&lines[j])],
                    vec![],
                ));
                break 'lines;
            }
        }
    }

    let checks = vec![
        CheckVerdict { id: 1, name: "not all points on one line", passed: spread.is_none(), witness: spread },
        CheckVerdict { id: 2, name: "every line has q + 1 points", passed: size_check.is_none(), witness: size_check },
        CheckVerdict { id: 3, name: "two points lie on a unique line", passed: pairs.is_none(), witness: pairs },
        CheckVerdict { id: 4, name: "two lines meet in a unique point", passed: meets.is_none(), witness: meets },
    ];
    let valid = checks.iter().all(|c| c.passed);
    Ok(PlaneReport {
        checks,
        order,
        uniform_line_size: uniform,
        lines_have_three_points: sizes.iter().all(|&s| s >= 3),
        degenerate: valid && order == Some(1),
        valid,
    })
}

/// The points and dimension-1 subspaces of a 2-dimensional geometry.
pub fn plane_from_geometry(g: &IncidenceGeometry) -> Result<PlaneStructure> {
    let dim = g.full_subspace().map(|i| g.subspaces()[i].dim());
    if dim != Some(2) {
        return Err(Error::DimensionMismatch(format!("expected a 2-dimensional geometry, found {dim:?}")));
    }
    Ok(PlaneStructure {
        points: g.points().to_vec(),
        lines: g.lines().into_iter().map(|l| g.subspace_names(l)).collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BruckRyser {
    /// The order is not 1 or 2 mod 4; the condition says nothing.
    NotApplicable,
    /// The order is 1 or 2 mod 4 and not a sum of two squares: no plane exists.
    Fails,
    /// The order is 1 or 2 mod 4 and a sum of two squares: not excluded.
    Passes,
}

/// Bruck–Ryser in sum-of-two-squares form.
pub fn bruck_ryser(order: u64) -> Result<BruckRyser> {
    if order < 2 {
        return Err(Error::InvalidArgument(format!("plane order must be at least 2, got {order}")));
    }
    if !matches!(order % 4, 1 | 2) {
        return Ok(BruckRyser::NotApplicable);
    }
    Ok(if sum_of_two_squares(order).is_some() { BruckRyser::Passes } else { BruckRyser::Fails })
}

/// Some `(a, b)` with `a <= b` and `a^2 + b^2 = n`.
pub fn sum_of_two_squares(n: u64) -> Option<(u64, u64)> {
    let mut a = 0u64;
    while 2 * a * a <= n {
        let rest = n - a * a;
        let b = rest.isqrt();
        if b * b == rest {
            return Some((a, b));
        }
        a += 1;
    }
    None
}

/// Orders ruled out by exhaustive computer search rather than by a
/// general theorem.
pub fn known_nonexistence(order: u64) -> Option<&'static str> {
    (order == 10).then_some(
        "no projective plane of order 10 exists (Lam, Swiercz and Thiel, exhaustive computer search)",
    )
}

//! Monotone lattice paths in an `m x n` box and their area statistic.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::qcalc::QPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    Right,
    Up,
}

/// A path from `(0, 0)` to `(m, n)` with exactly `m` Right and `n` Up steps.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePath {
    m: u32,
    n: u32,
    steps: Vec<Step>,
}

impl LatticePath {
    pub fn new(m: u32, n: u32, steps: Vec<Step>) -> Result<Self> {
        let rights = steps.iter().filter(|&&s| s == Step::Right).count();
        if rights != m as usize || steps.len() - rights != n as usize {
            return Err(Error::InvalidArgument(format!(
                "path with {rights} Right and {} Up steps does not fit a {m}x{n} box",
                steps.len() - rights
            )));
        }
        Ok(LatticePath { m, n, steps })
    }

    /// Parses a string of `R` and `U`.
    pub fn parse(m: u32, n: u32, text: &str) -> Result<Self> {
        let steps = text
            .chars()
            .map(|c| match c {
                'R' => Ok(Step::Right),
                'U' => Ok(Step::Up),
                other => Err(Error::InvalidArgument(format!("unknown step {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        LatticePath::new(m, n, steps)
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn box_size(&self) -> (u32, u32) {
        (self.m, self.n)
    }

    /// The path traversed backwards, i.e. rotated by 180 degrees inside the
    /// box. Its area is `mn` minus the original area.
    pub fn rotated(&self) -> LatticePath {
        let steps = self.steps.iter().rev().copied().collect();
        LatticePath { m: self.m, n: self.n, steps }
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(match s {
                Step::Right => "R",
                Step::Up => "U",
            })?;
        }
        Ok(())
    }
}

pub fn enumerate_paths(m: u32, n: u32) -> Result<Vec<LatticePath>> {
    enumerate_paths_with(m, n, &Limits::default())
}

/// All paths, lexicographic with Right before Up.
pub fn enumerate_paths_with(m: u32, n: u32, limits: &Limits) -> Result<Vec<LatticePath>> {
    check_box(m, n, limits)?;
    let mut out = Vec::new();
    let mut steps = Vec::with_capacity((m + n) as usize);
    walk(m, n, &mut steps, &mut out);
    Ok(out)
}

fn check_box(m: u32, n: u32, limits: &Limits) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument(format!("box sides must be positive, got {m}x{n}")));
    }
    if m + n > limits.path_steps {
        return Err(Error::budget("lattice path steps", m + n, limits.path_steps));
    }
    Ok(())
}

fn walk(rights: u32, ups: u32, steps: &mut Vec<Step>, out: &mut Vec<LatticePath>) {
    if rights == 0 && ups == 0 {
        let m = steps.iter().filter(|&&s| s == Step::Right).count() as u32;
        let n = steps.len() as u32 - m;
        out.push(LatticePath { m, n, steps: steps.clone() });
        return;
    }
    if rights > 0 {
        steps.push(Step::Right);
        walk(rights - 1, ups, steps, out);
        steps.pop();
    }
    if ups > 0 {
        steps.push(Step::Up);
        walk(rights, ups - 1, steps, out);
        steps.pop();
    }
}

/// Area between the path and the bottom and right walls: each Up step taken
/// at horizontal position `x` contributes the row segment from `x` to `m`.
pub fn path_area(p: &LatticePath) -> u64 {
    let mut x = 0u64;
    let mut area = 0u64;
    for s in &p.steps {
        match s {
            Step::Right => x += 1,
            Step::Up => area += u64::from(p.m) - x,
        }
    }
    area
}

/// `sum over paths of q^area`.
pub fn area_generating_function(m: u32, n: u32) -> Result<QPoly> {
    area_generating_function_with(m, n, &Limits::default())
}

pub fn area_generating_function_with(m: u32, n: u32, limits: &Limits) -> Result<QPoly> {
    let paths = enumerate_paths_with(m, n, limits)?;
    let mut counts = vec![0u64; (m * n) as usize + 1];
    for p in &paths {
        counts[path_area(p) as usize] += 1;
    }
    Ok(QPoly::from_coeffs(counts.into_iter().map(BigInt::from).collect()))
}

use std::collections::HashSet;

use num_bigint::BigInt;

use super::IncidenceGeometry;
use crate::error::{Error, Result};
use crate::limits::Limits;

pub fn collineation_order(g: &IncidenceGeometry) -> Result<BigInt> {
    collineation_order_with(g, &Limits::default())
}

/// Number of permutations of the points that map every member of `L` onto
/// a member of `L`.
///
/// Images are assigned point by point; a subspace is checked as soon as
/// the image of its largest point is fixed, which prunes most of the
/// `|P|!` candidates early without changing the count.
pub fn collineation_order_with(g: &IncidenceGeometry, limits: &Limits) -> Result<BigInt> {
    let n = g.points().len();
    if n > limits.collineation_points {
        return Err(Error::budget("collineation search points", n, limits.collineation_points));
    }
    let masks: Vec<u64> = g
        .subspaces()
        .iter()
        .map(|s| s.members().ones().fold(0u64, |m, p| m | (1 << p)))
        .collect();
    let family: HashSet<u64> = masks.iter().copied().collect();
    // due[t]: subspaces whose highest point is t (the empty set is fixed by
    // every permutation and needs no check).
    let mut due: Vec<Vec<u64>> = vec![Vec::new(); n];
    for &m in &masks {
        if m != 0 {
            due[63 - m.leading_zeros() as usize].push(m);
        }
    }
    let mut search = Search { n, family, due, image: vec![0; n], used: 0, count: 0 };
    search.extend(0);
    Ok(BigInt::from(search.count))
}

struct Search {
    n: usize,
    family: HashSet<u64>,
    due: Vec<Vec<u64>>,
    image: Vec<usize>,
    used: u64,
    count: u64,
}

impl Search {
    fn extend(&mut self, t: usize) {
        if t == self.n {
            self.count += 1;
            return;
        }
        for target in 0..self.n {
            if self.used & (1 << target) != 0 {
                continue;
            }
            self.image[t] = target;
            if self.due[t].iter().all(|&m| self.family.contains(&self.map(m))) {
                self.used |= 1 << target;
                self.extend(t + 1);
                self.used &= !(1 << target);
            }
        }
    }

    fn map(&self, mut m: u64) -> u64 {
        let mut out = 0;
        while m != 0 {
            let p = m.trailing_zeros() as usize;
            out |= 1 << self.image[p];
            m &= m - 1;
        }
        out
    }
}

use std::collections::{BTreeMap, HashMap};

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use serde::Serialize;

use super::IncidenceGeometry;
use crate::qcalc::{q_binomial_triangle, q_integer};

/// Evidence for a failed check: the offending subspaces (as point names)
/// and/or points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub detail: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub subspaces: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<String>,
}

/// Outcome of one numbered check. A failed check always carries a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckVerdict {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl CheckVerdict {
    fn new(id: u8, name: &'static str, witness: Option<Witness>) -> Self {
        CheckVerdict { id, name, passed: witness.is_none(), witness }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub axioms: Vec<CheckVerdict>,
    /// Order inferred from the lines (or the claimed order if there are none).
    pub order: Option<u64>,
    /// `dim(P)`, if `P` itself is a member of `L`.
    pub dimension: Option<i64>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.axioms.iter().all(|a| a.passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &CheckVerdict> {
        self.axioms.iter().filter(|a| !a.passed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma1Report {
    pub assertions: Vec<CheckVerdict>,
}

impl Lemma1Report {
    pub fn all_passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointCountReport {
    #[serde(serialize_with = "ser_opt_big")]
    pub expected: Option<BigInt>,
    pub actual: usize,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub dim: i64,
    pub actual: usize,
    #[serde(serialize_with = "ser_big")]
    pub expected: BigInt,
    /// `[n, k+1]_q + q^(n-k) [n, k]_q` at `q`, which must equal `expected`.
    #[serde(serialize_with = "ser_big")]
    pub recurrence: BigInt,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub dimension: Option<i64>,
    pub order: Option<u64>,
    pub rows: Vec<CensusRow>,
    pub passed: bool,
}

fn ser_big<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_opt_big<S: serde::Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

/// Meets and joins computed from `L` alone, under containment.
struct Lattice<'a> {
    g: &'a IncidenceGeometry,
    index: HashMap<&'a FixedBitSet, usize>,
    singletons: Vec<Option<usize>>,
}

impl<'a> Lattice<'a> {
    fn new(g: &'a IncidenceGeometry) -> Self {
        let index: HashMap<&FixedBitSet, usize> =
            g.subspaces.iter().enumerate().map(|(i, s)| (&s.members, i)).collect();
        let mut singletons = vec![None; g.points.len()];
        for (i, s) in g.subspaces.iter().enumerate() {
            if s.len() == 1 {
                singletons[s.members.ones().next().unwrap()] = Some(i);
            }
        }
        Lattice { g, index, singletons }
    }

    fn set(&self, i: usize) -> &FixedBitSet {
        &self.g.subspaces[i].members
    }

    fn dim(&self, i: usize) -> i64 {
        self.g.subspaces[i].dim
    }

    /// Greatest lower bound. It exists iff the union of all lower bounds is
    /// itself in `L`.
    fn meet(&self, i: usize, j: usize) -> Option<usize> {
        let mut inter = self.set(i).clone();
        inter.intersect_with(self.set(j));
        if let Some(&k) = self.index.get(&inter) {
            return Some(k);
        }
        let mut union = FixedBitSet::with_capacity(self.g.points.len());
        for s in &self.g.subspaces {
            if s.members.is_subset(&inter) {
                union.union_with(&s.members);
            }
        }
        self.index.get(&union).copied()
    }

    /// Least upper bound. It exists iff the intersection of all upper bounds
    /// is itself in `L`.
    fn join(&self, i: usize, j: usize) -> Option<usize> {
        let mut union = self.set(i).clone();
        union.union_with(self.set(j));
        if let Some(&k) = self.index.get(&union) {
            return Some(k);
        }
        let mut acc: Option<FixedBitSet> = None;
        for s in &self.g.subspaces {
            if union.is_subset(&s.members) {
                match acc.as_mut() {
                    Some(a) => a.intersect_with(&s.members),
                    None => acc = Some(s.members.clone()),
                }
            }
        }
        acc.and_then(|a| self.index.get(&a).copied())
    }
}

fn pair_witness(g: &IncidenceGeometry, detail: String, i: usize, j: usize) -> Witness {
    Witness {
        detail,
        subspaces: vec![g.subspace_names(i), g.subspace_names(j)],
        points: Vec::new(),
    }
}

fn subspace_witness(g: &IncidenceGeometry, detail: String, i: usize) -> Witness {
    Witness { detail, subspaces: vec![g.subspace_names(i)], points: Vec::new() }
}

/// `(dim(P), q)`: the dimension of the full point set when it is in `L`,
/// and the order read off the first line (falling back to the claimed order).
fn infer_parameters(g: &IncidenceGeometry) -> (Option<i64>, Option<u64>) {
    let dimension = g.full_subspace().map(|i| g.subspaces[i].dim);
    let order = g
        .lines()
        .first()
        .map(|&l| g.subspaces[l].len() as u64)
        .and_then(|size| size.checked_sub(1))
        .or(g.claimed_order);
    (dimension, order)
}

/// Checks the six axioms of a projective geometry of order `q`:
///
/// 1. `L` is a lattice under containment (every pair has a meet and a join);
/// 2. `dim` is strictly increasing along proper containment;
/// 3. the empty set and every singleton belong to `L`;
/// 4. `dim S = -1` iff `S` is empty, and `dim S = 0` iff `S` is a singleton;
/// 5. `dim S + dim T = dim(S meet T) + dim(S join T)`;
/// 6. every line (`dim = 1`) has exactly `q + 1` points.
///
/// For each axiom the first counterexample in subspace order is reported.
pub fn validate_axioms(g: &IncidenceGeometry) -> AxiomReport {
    let lat = Lattice::new(g);
    let m = g.subspaces.len();
    let (dimension, _) = infer_parameters(g);

    let mut ax1 = None;
    let mut ax5 = None;
    'pairs: for i in 0..m {
        for j in i..m {
            let meet = lat.meet(i, j);
            let join = lat.join(i, j);
            match (meet, join) {
                (Some(mt), Some(jn)) => {
                    if ax5.is_none() && lat.dim(i) + lat.dim(j) != lat.dim(mt) + lat.dim(jn) {
                        ax5 = Some(pair_witness(
                            g,
                            format!(
                                "dim {} + dim {} != dim(meet) {} + dim(join) {}",
                                lat.dim(i),
                                lat.dim(j),
                                lat.dim(mt),
                                lat.dim(jn)
                            ),
                            i,
                            j,
                        ));
                    }
                }
                _ if ax1.is_none() => {
                    let what = match (meet, join) {
                        (None, None) => "neither a greatest lower bound nor a least upper bound",
                        (None, _) => "no greatest lower bound",
                        _ => "no least upper bound",
                    };
                    ax1 = Some(pair_witness(g, format!("pair has {what} in L"), i, j));
                }
                _ => {}
            }
            if ax1.is_some() && ax5.is_some() {
                break 'pairs;
            }
        }
    }

    let mut ax2 = None;
    'outer: for i in 0..m {
        for j in 0..m {
            let (s, t) = (&g.subspaces[i], &g.subspaces[j]);
            if i != j && s.members.is_subset(&t.members) && s.dim >= t.dim {
                ax2 = Some(pair_witness(
                    g,
                    format!("proper containment but dim {} >= dim {}", s.dim, t.dim),
                    i,
                    j,
                ));
                break 'outer;
            }
        }
    }

    let ax3 = if !g.subspaces.iter().any(|s| s.is_empty()) {
        Some(Witness { detail: "the empty set is not in L".into(), subspaces: Vec::new(), points: Vec::new() })
    } else {
        lat.singletons.iter().position(Option::is_none).map(|p| Witness {
            detail: "singleton of this point is not in L".into(),
            subspaces: Vec::new(),
            points: vec![g.points[p].clone()],
        })
    };

    let ax4 = g.subspaces.iter().enumerate().find_map(|(i, s)| {
        let size = s.len();
        let bad = (s.dim == -1) != (size == 0) || (s.dim == 0) != (size == 1);
        bad.then(|| subspace_witness(g, format!("{size} point(s) with dim {}", s.dim), i))
    });

    let lines = g.lines();
    let mut order = lines.first().map(|&l| g.subspaces[l].len() as u64 - 1);
    let mut ax6 = None;
    if let Some(q) = order {
        if q == 0 {
            ax6 = Some(subspace_witness(g, "line with a single point (order 0)".into(), lines[0]));
        } else if let Some(&bad) = lines.iter().find(|&&l| g.subspaces[l].len() as u64 != q + 1) {
            ax6 = Some(subspace_witness(
                g,
                format!("line has {} points, expected q + 1 = {}", g.subspaces[bad].len(), q + 1),
                bad,
            ));
        } else if let Some(claimed) = g.claimed_order.filter(|&c| c != q) {
            ax6 = Some(subspace_witness(
                g,
                format!("lines have {} points but the claimed order is {claimed}", q + 1),
                lines[0],
            ));
        }
    } else {
        order = g.claimed_order;
    }

    let axioms = vec![
        CheckVerdict::new(1, "lattice: every pair has a meet and a join", ax1),
        CheckVerdict::new(2, "dim strictly increasing", ax2),
        CheckVerdict::new(3, "empty set and singletons present", ax3),
        CheckVerdict::new(4, "dim calibrated at -1 and 0", ax4),
        CheckVerdict::new(5, "modular law", ax5),
        CheckVerdict::new(6, "every line has q + 1 points", ax6),
    ];
    AxiomReport { axioms, order, dimension }
}

/// Checks the five consequences of the axioms:
///
/// 1. every member of `L` is itself a projective geometry of the same order;
/// 2. `S meet T = S ∩ T`;
/// 3. two distinct points lie on exactly one line, two distinct lines share
///    at most one point;
/// 4. `dim(S join {x}) = dim S + 1` for `x` outside `S`;
/// 5. for a hyperplane `S` (`dim n - 1`), every `T` is inside `S` or meets
///    it in dimension `dim T - 1`.
pub fn check_lemma1(g: &IncidenceGeometry) -> Lemma1Report {
    let lat = Lattice::new(g);
    let m = g.subspaces.len();
    let (dimension, order) = infer_parameters(g);

    let a1 = (0..m).find_map(|i| {
        let sub = g.restrict_to(i, order);
        let report = validate_axioms(&sub);
        let failed: Vec<String> = report.failed().map(|a| a.id.to_string()).collect();
        (!failed.is_empty()).then(|| {
            subspace_witness(g, format!("induced geometry fails axiom(s) {}", failed.join(", ")), i)
        })
    });

    let mut a2 = None;
    'a2: for i in 0..m {
        for j in i..m {
            let mut inter = lat.set(i).clone();
            inter.intersect_with(lat.set(j));
            let ok = lat.meet(i, j).is_some_and(|k| lat.set(k) == &inter);
            if !ok {
                a2 = Some(pair_witness(g, "meet differs from the intersection".into(), i, j));
                break 'a2;
            }
        }
    }

    let lines = g.lines();
    let mut a3 = None;
    let n_pts = g.points.len();
    'points: for x in 0..n_pts {
        for y in x + 1..n_pts {
            let count = lines
                .iter()
                .filter(|&&l| lat.set(l).contains(x) && lat.set(l).contains(y))
                .count();
            if count != 1 {
                a3 = Some(Witness {
                    detail: format!("two distinct points lie on {count} lines"),
                    subspaces: Vec::new(),
                    points: vec![g.points[x].clone(), g.points[y].clone()],
                });
                break 'points;
            }
        }
    }
    if a3.is_none() {
        'lines: for (a, &l1) in lines.iter().enumerate() {
            for &l2 in &lines[a + 1..] {
                let shared = lat.set(l1).intersection(lat.set(l2)).count();
                if shared > 1 {
                    a3 = Some(pair_witness(g, format!("two distinct lines share {shared} points"), l1, l2));
                    break 'lines;
                }
            }
        }
    }

    let mut a4 = None;
    'a4: for i in 0..m {
        for x in 0..n_pts {
            if lat.set(i).contains(x) {
                continue;
            }
            let Some(sx) = lat.singletons[x] else {
                a4 = Some(Witness {
                    detail: "singleton missing from L".into(),
                    subspaces: Vec::new(),
                    points: vec![g.points[x].clone()],
                });
                break 'a4;
            };
            let grown = lat.join(i, sx).map(|k| lat.dim(k));
            if grown != Some(lat.dim(i) + 1) {
                let mut w = subspace_witness(
                    g,
                    format!("join with an outside point has dim {grown:?}, expected {}", lat.dim(i) + 1),
                    i,
                );
                w.points.push(g.points[x].clone());
                a4 = Some(w);
                break 'a4;
            }
        }
    }

    let mut a5 = None;
    if let Some(n) = dimension {
        'a5: for s in (0..m).filter(|&s| lat.dim(s) == n - 1) {
            for t in 0..m {
                if lat.set(t).is_subset(lat.set(s)) {
                    continue;
                }
                let meet_dim = lat.meet(t, s).map(|k| lat.dim(k));
                if meet_dim != Some(lat.dim(t) - 1) {
                    a5 = Some(pair_witness(
                        g,
                        format!(
                            "subspace not in the hyperplane meets it in dim {meet_dim:?}, expected {}",
                            lat.dim(t) - 1
                        ),
                        t,
                        s,
                    ));
                    break 'a5;
                }
            }
        }
    } else {
        a5 = Some(Witness {
            detail: "the full point set is not in L, so dim(P) is undefined".into(),
            subspaces: Vec::new(),
            points: Vec::new(),
        });
    }

    Lemma1Report {
        assertions: vec![
            CheckVerdict::new(1, "every subspace is a projective geometry of order q", a1),
            CheckVerdict::new(2, "meet equals intersection", a2),
            CheckVerdict::new(3, "unique line through two points; lines share at most one point", a3),
            CheckVerdict::new(4, "adding an outside point raises dim by one", a4),
            CheckVerdict::new(5, "hyperplane meets every other subspace in codimension one", a5),
        ],
    }
}

/// Compares `|P|` with `[n+1]_q` at the inferred `n` and `q`.
pub fn point_count_check(g: &IncidenceGeometry) -> PointCountReport {
    let (dimension, order) = infer_parameters(g);
    let actual = g.points.len();
    let expected = match dimension {
        Some(n) if n >= -1 => Some(q_integer((n + 1) as u32).evaluate(&BigInt::from(order.unwrap_or(1)))),
        _ => None,
    };
    let passed = expected.as_ref() == Some(&BigInt::from(actual));
    PointCountReport { expected, actual, passed }
}

/// Counts subspaces per dimension and compares each count with
/// `[n+1, k+1]_q` at `q`, and that value with the recurrence
/// `[n, k+1]_q + q^(n-k) [n, k]_q`.
pub fn subspace_census(g: &IncidenceGeometry) -> CensusReport {
    let (dimension, order) = infer_parameters(g);
    let mut actual: BTreeMap<i64, usize> = g.dimension_counts().into_iter().collect();
    let Some(n) = dimension else {
        let rows = actual
            .into_iter()
            .map(|(dim, count)| CensusRow {
                dim,
                actual: count,
                expected: BigInt::default(),
                recurrence: BigInt::default(),
                passed: false,
            })
            .collect();
        return CensusReport { dimension, order, rows, passed: false };
    };
    let q = BigInt::from(order.unwrap_or(1));
    let top = (n + 1).max(0) as u32;
    let tri = q_binomial_triangle(top);
    let at = |row: u32, k: i64| -> BigInt {
        if k < 0 || k > i64::from(row) {
            BigInt::default()
        } else {
            tri[row as usize][k as usize].evaluate(&q)
        }
    };

    let mut rows = Vec::new();
    for k in -1..=n {
        let expected = at(top, k + 1);
        let recurrence = if n >= 0 {
            at(top - 1, k + 1) + q.pow((n - k) as u32) * at(top - 1, k)
        } else {
            expected.clone()
        };
        let count = actual.remove(&k).unwrap_or(0);
        let passed = BigInt::from(count) == expected && recurrence == expected;
        rows.push(CensusRow { dim: k, actual: count, expected, recurrence, passed });
    }
    // Dimensions outside -1..=n should not occur at all.
    for (dim, count) in actual {
        rows.push(CensusRow {
            dim,
            actual: count,
            expected: BigInt::default(),
            recurrence: BigInt::default(),
            passed: false,
        });
    }
    rows.sort_by_key(|r| r.dim);
    let passed = rows.iter().all(|r| r.passed);
    CensusReport { dimension, order, rows, passed }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_boolean_geometry, build_projective_space};

    fn census(g: &IncidenceGeometry) -> Vec<(i64, usize)> {
        subspace_census(g).rows.iter().map(|r| (r.dim, r.actual)).collect()
    }

    #[test]
    fn fano_passes_everything() {
        let g = build_projective_space(2, 2).unwrap();
        let r = validate_axioms(&g);
        assert!(r.all_passed(), "{r:?}");
        assert_eq!((r.order, r.dimension), (Some(2), Some(2)));
        assert!(check_lemma1(&g).all_passed());
        let pc = point_count_check(&g);
        assert!(pc.passed);
        assert_eq!(census(&g), vec![(-1, 1), (0, 7), (1, 7), (2, 1)]);
        assert!(subspace_census(&g).passed);
    }

    #[test]
    fn boolean_passes_everything() {
        let g = build_boolean_geometry(4).unwrap();
        let r = validate_axioms(&g);
        assert!(r.all_passed(), "{r:?}");
        assert_eq!((r.order, r.dimension), (Some(1), Some(3)));
        assert!(check_lemma1(&g).all_passed());
        assert_eq!(census(&g), vec![(-1, 1), (0, 4), (1, 6), (2, 4), (3, 1)]);
        let b5 = build_boolean_geometry(5).unwrap();
        let pc = point_count_check(&b5);
        assert_eq!((pc.expected, pc.actual, pc.passed), (Some(BigInt::from(5)), 5, true));
    }

    #[test]
    fn projective_line_over_f3() {
        let g = build_projective_space(3, 1).unwrap();
        assert!(validate_axioms(&g).all_passed());
        assert!(check_lemma1(&g).all_passed());
    }

    #[test]
    fn point_counts() {
        let p3 = build_projective_space(2, 3).unwrap();
        let pc = point_count_check(&p3);
        assert_eq!((pc.expected, pc.actual), (Some(BigInt::from(15)), 15));
        let p2f4 = build_projective_space(4, 2).unwrap();
        assert_eq!(point_count_check(&p2f4).expected, Some(BigInt::from(21)));
        let c = census(&p3);
        assert_eq!(&c[1..4], &[(0, 15), (1, 35), (2, 15)]);
    }

    #[test]
    fn removing_a_line_breaks_the_modular_law() {
        let g = build_projective_space(2, 2).unwrap();
        let line = g.lines()[0];
        let r = validate_axioms(&g.without_subspace(line));
        // Two points of the removed line now join to the whole plane.
        assert!(r.axioms[0].passed);
        let ax5 = &r.axioms[4];
        assert!(!ax5.passed);
        let w = ax5.witness.as_ref().unwrap();
        assert_eq!(w.subspaces.len(), 2);
        assert!(w.subspaces.iter().all(|s| s.len() == 1));
    }

    #[test]
    fn missing_top_breaks_the_lattice() {
        let g = build_projective_space(2, 2).unwrap();
        let top = g.full_subspace().unwrap();
        let r = validate_axioms(&g.without_subspace(top));
        assert!(!r.axioms[0].passed);
        assert!(r.axioms[0].witness.is_some());
        assert_eq!(r.dimension, None);
        assert!(!point_count_check(&g.without_subspace(top)).passed);
        assert!(!subspace_census(&g.without_subspace(top)).passed);
    }

    #[test]
    fn dimension_perturbations() {
        let g = build_projective_space(2, 2).unwrap();
        let line = g.lines()[0];
        let r = validate_axioms(&g.with_dimension(line, 2));
        assert!(!r.axioms[1].passed);
        let point = g.subspaces().iter().position(|s| s.len() == 1).unwrap();
        let r = validate_axioms(&g.with_dimension(point, 1));
        assert!(!r.axioms[3].passed);
    }

    #[test]
    fn wrong_claimed_order() {
        let g = build_projective_space(2, 2).unwrap();
        let mut h = g.clone();
        h.claimed_order = Some(3);
        let r = validate_axioms(&h);
        assert!(!r.axioms[5].passed);
        assert_eq!(r.order, Some(2));
    }

    #[test]
    fn deleting_a_point_is_noticed() {
        let g = build_projective_space(2, 2).unwrap();
        let h = g.without_point(0).unwrap();
        let r = validate_axioms(&h);
        assert!(!r.axioms[5].passed);
        assert!(!point_count_check(&h).passed);
    }

    #[test]
    fn lemma_failures_on_a_non_geometry() {
        // Two lines sharing two points; not a projective geometry.
        let pts: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        let subs = vec![
            (vec![], -1),
            (vec![0], 0),
            (vec![1], 0),
            (vec![2], 0),
            (vec![3], 0),
            (vec![0, 1, 2], 1),
            (vec![0, 1, 3], 1),
            (vec![0, 1, 2, 3], 2),
        ];
        let g = IncidenceGeometry::new(pts, subs, None).unwrap();
        assert!(!validate_axioms(&g).all_passed());
        let l1 = check_lemma1(&g);
        assert!(!l1.assertions[2].passed);
        assert!(l1.assertions.iter().filter(|a| !a.passed).all(|a| a.witness.is_some()));
    }

    #[test]
    fn empty_and_point_geometries() {
        let g = build_projective_space(5, 0).unwrap();
        let r = validate_axioms(&g);
        assert!(r.all_passed());
        assert_eq!(r.dimension, Some(0));
        assert!(point_count_check(&g).passed);
        assert!(subspace_census(&g).passed);
    }
}

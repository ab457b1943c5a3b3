//! Orders of `GL_n`, `SL_n`, `PGL_n` and `PSL_n` over `F_q`, by closed
//! formula and by brute-force matrix enumeration, and the comparison of the
//! alternating group with the collineations of a Boolean geometry.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{build_boolean_geometry_with, collineation_order_with};
use crate::gfarith::{make_field_with, prime_power, FiniteField};
use crate::limits::Limits;
use crate::qcalc::q_factorial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GroupFamily {
    GL,
    SL,
    PGL,
    PSL,
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupFamily::GL => "GL",
            GroupFamily::SL => "SL",
            GroupFamily::PGL => "PGL",
            GroupFamily::PSL => "PSL",
        })
    }
}

impl FromStr for GroupFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "GL" => Ok(GroupFamily::GL),
            "SL" => Ok(GroupFamily::SL),
            "PGL" => Ok(GroupFamily::PGL),
            "PSL" => Ok(GroupFamily::PSL),
            _ => Err(Error::InvalidArgument(format!("unknown group family {s:?} (expected GL, SL, PGL or PSL)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderMethod {
    Formula,
    BruteForce,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupOrderReport {
    pub family: GroupFamily,
    pub n: u32,
    pub q: u64,
    #[serde(serialize_with = "ser_big")]
    pub order: BigInt,
    pub method: OrderMethod,
}

fn ser_big<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn check_q(q: u64) -> Result<()> {
    prime_power(q).map(|_| ()).ok_or(Error::NotAPrimePower(q))
}

fn check_n(n: u32, min: u32) -> Result<()> {
    if n < min {
        return Err(Error::InvalidArgument(format!("n must be at least {min}, got {n}")));
    }
    Ok(())
}

/// `|GL_n(F_q)| = prod_{i=0..n-1} (q^n - q^i)`.
pub fn gl_order(n: u32, q: u64) -> Result<BigInt> {
    check_n(n, 1)?;
    check_q(q)?;
    let qb = BigInt::from(q);
    let qn = qb.pow(n);
    Ok((0..n).fold(BigInt::one(), |acc, i| acc * (&qn - qb.pow(i))))
}

/// `|SL_n(F_q)| = |GL_n(F_q)| / (q - 1)`.
pub fn sl_order(n: u32, q: u64) -> Result<BigInt> {
    Ok(gl_order(n, q)? / (q - 1))
}

/// `|PGL_n(F_q)| = |GL_n(F_q)| / (q - 1)`.
pub fn pgl_order(n: u32, q: u64) -> Result<BigInt> {
    sl_order(n, q)
}

/// `|PSL_n(F_q)| = q^C(n,2) (q-1)^(n-1) [n]_q! / gcd(n, q-1)`.
///
/// `q = 1` is refused: there the formula degenerates to `0/n`.
pub fn psl_order(n: u32, q: u64) -> Result<BigInt> {
    if q == 1 {
        return Err(Error::DegenerateQ);
    }
    check_n(n, 2)?;
    check_q(q)?;
    let qb = BigInt::from(q);
    let numerator = qb.pow(n * (n - 1) / 2) * BigInt::from(q - 1).pow(n - 1) * q_factorial(n).evaluate(&qb);
    let g = u64::from(n).gcd(&(q - 1));
    let (quot, rem) = numerator.div_rem(&BigInt::from(g));
    debug_assert!(rem == BigInt::default());
    Ok(quot)
}

/// `|PSL_n(F_q)|` is simple except for `n = 2, q in {2, 3}`.
pub fn psl_is_simple(n: u32, q: u64) -> bool {
    !(n == 2 && (q == 2 || q == 3))
}

pub fn formula_order(family: GroupFamily, n: u32, q: u64) -> Result<GroupOrderReport> {
    let order = match family {
        GroupFamily::GL => gl_order(n, q)?,
        GroupFamily::SL => sl_order(n, q)?,
        GroupFamily::PGL => pgl_order(n, q)?,
        GroupFamily::PSL => psl_order(n, q)?,
    };
    Ok(GroupOrderReport { family, n, q, order, method: OrderMethod::Formula })
}

pub fn brute_force_psl_order(n: u32, q: u64) -> Result<BigInt> {
    Ok(brute_force_order_with(GroupFamily::PSL, n, q, &Limits::default())?.order)
}

pub fn brute_force_order(family: GroupFamily, n: u32, q: u64) -> Result<GroupOrderReport> {
    brute_force_order_with(family, n, q, &Limits::default())
}

/// Counts matrices by determinant over every `n x n` matrix in `F_q`, and
/// divides by scalar subgroups that are themselves counted by enumeration:
/// nonzero scalars for `PGL`, scalars with `lambda^n = 1` for `PSL`.
pub fn brute_force_order_with(family: GroupFamily, n: u32, q: u64, limits: &Limits) -> Result<GroupOrderReport> {
    if q == 1 {
        return Err(Error::DegenerateQ);
    }
    check_n(n, 1)?;
    check_q(q)?;
    let space = BigInt::from(q).pow(n * n);
    if space > BigInt::from(limits.matrix_space) {
        return Err(Error::budget("matrix enumeration", space, limits.matrix_space));
    }
    let field = Arc::new(make_field_with(q, &Limits { max_field_q: q.max(limits.max_field_q), ..*limits })?);
    let (invertible, det_one) = count_by_determinant(&field, n as usize);
    let scalars = |pred: &dyn Fn(u32) -> bool| -> u64 { (1..field.order()).filter(|&l| pred(l)).count() as u64 };
    let order = match family {
        GroupFamily::GL => invertible,
        GroupFamily::SL => det_one,
        GroupFamily::PGL => invertible / scalars(&|_| true),
        GroupFamily::PSL => det_one / scalars(&|l| field.pow_raw(l, u64::from(n)) == 1),
    };
    Ok(GroupOrderReport { family, n, q, order: BigInt::from(order), method: OrderMethod::BruteForce })
}

fn count_by_determinant(field: &FiniteField, n: usize) -> (u64, u64) {
    let q = field.order();
    let mut entries = vec![0u32; n * n];
    let (mut invertible, mut det_one) = (0u64, 0u64);
    loop {
        let d = determinant(field, &entries, n);
        if d != 0 {
            invertible += 1;
        }
        if d == 1 {
            det_one += 1;
        }
        let mut i = entries.len();
        loop {
            if i == 0 {
                return (invertible, det_one);
            }
            i -= 1;
            entries[i] += 1;
            if entries[i] < q {
                break;
            }
            entries[i] = 0;
        }
    }
}

/// Determinant by elimination, tracking row swaps and pivot scalings.
fn determinant(field: &FiniteField, entries: &[u32], n: usize) -> u32 {
    let mut a = entries.to_vec();
    let mut det = 1u32;
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| a[r * n + c] != 0) else {
            return 0;
        };
        if p != c {
            for j in 0..n {
                a.swap(p * n + j, c * n + j);
            }
            det = field.neg_raw(det);
        }
        let pivot = a[c * n + c];
        det = field.mul_raw(det, pivot);
        let inv = field.inv_raw(pivot);
        for r in c + 1..n {
            let factor = field.mul_raw(a[r * n + c], inv);
            if factor == 0 {
                continue;
            }
            for j in c..n {
                let sub = field.mul_raw(factor, a[c * n + j]);
                a[r * n + j] = field.sub_raw(a[r * n + j], sub);
            }
        }
    }
    det
}

/// The order-1 side of the `PSL_n(F_1) = A_n` analogy, as numbers only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlternatingComparison {
    pub n: u32,
    #[serde(serialize_with = "ser_big")]
    pub alternating_order: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub symmetric_order: BigInt,
    /// Collineations of the Boolean geometry on `n` points, counted by search.
    #[serde(serialize_with = "ser_big")]
    pub boolean_collineations: BigInt,
    pub alternating_is_simple: bool,
    pub note: &'static str,
}

pub fn a_n_comparison(n: u32) -> Result<AlternatingComparison> {
    a_n_comparison_with(n, &Limits::default())
}

pub fn a_n_comparison_with(n: u32, limits: &Limits) -> Result<AlternatingComparison> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n must be at least 2, got {n}")));
    }
    let g = build_boolean_geometry_with(n as usize, limits)?;
    let boolean_collineations = collineation_order_with(&g, limits)?;
    let symmetric_order: BigInt = (1..=u64::from(n)).map(BigInt::from).product();
    Ok(AlternatingComparison {
        n,
        alternating_order: &symmetric_order / 2,
        symmetric_order,
        boolean_collineations,
        alternating_is_simple: n >= 5 || n == 3,
        note: "the collineation group of the order-1 geometry on n points is S_n; its commutator \
               subgroup A_n plays the role of PSL_n over the field with one element",
    })
}

//! Dense polynomials in `q` with big-integer coefficients, and the
//! q-analogues built from them: q-integers, q-factorials and Gaussian
//! binomial coefficients (by recurrence and by exact quotient).

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Polynomial in `q`; `coeffs[i]` is the coefficient of `q^i`.
///
/// Always trimmed: the last stored coefficient is nonzero, and the zero
/// polynomial has no coefficients at all.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        QPoly::from_coeffs(vec![c.into()])
    }

    /// `q^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        QPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        QPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `q^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        QPoly { coeffs }
    }

    /// Horner evaluation at an integer point.
    pub fn evaluate(&self, q0: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * q0 + c)
    }

    /// Exact division by `divisor`. Fails with [`Error::InexactDivision`]
    /// when the division leaves a remainder or a quotient coefficient is
    /// not integral.
    pub fn div_exact(&self, divisor: &QPoly) -> Result<QPoly> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::InvalidArgument("division by the zero polynomial".into()))?;
        let lead = &divisor.coeffs[dd];
        let Some(nd) = self.degree() else {
            return Ok(QPoly::zero());
        };
        if nd < dd {
            return Err(Error::InexactDivision);
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            quot[i] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision);
        }
        Ok(QPoly::from_coeffs(quot))
    }

    /// Space-separated coefficients from `q^0` upward; `0` for the zero
    /// polynomial.
    pub fn to_coeff_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly[{}]", self.to_coeff_string())
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &BigInt::zero();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = mag.is_one();
            match i {
                0 => write!(f, "{mag}")?,
                1 if unit => f.write_str("q")?,
                1 => write!(f, "{mag}q")?,
                _ if unit => write!(f, "q^{i}")?,
                _ => write!(f, "{mag}q^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for QPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        // Coefficients as decimal strings so big values survive JSON readers.
        s.collect_seq(self.coeffs.iter().map(ToString::to_string))
    }
}

impl Add for &QPoly {
    type Output = QPoly;

    fn add(self, rhs: &QPoly) -> QPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, d) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += d;
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl Add for QPoly {
    type Output = QPoly;

    fn add(self, rhs: QPoly) -> QPoly {
        &self + &rhs
    }
}

impl Sub for &QPoly {
    type Output = QPoly;

    fn sub(self, rhs: &QPoly) -> QPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        QPoly::from_coeffs(coeffs)
    }
}

impl Mul for &QPoly {
    type Output = QPoly;

    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl Mul for QPoly {
    type Output = QPoly;

    fn mul(self, rhs: QPoly) -> QPoly {
        &self * &rhs
    }
}

/// `[n]_q = 1 + q + ... + q^(n-1)`; the zero polynomial for `n = 0`.
pub fn q_integer(n: u32) -> QPoly {
    QPoly::from_coeffs(vec![BigInt::one(); n as usize])
}

/// `[n]_q! = [1]_q [2]_q ... [n]_q`, with `[0]_q! = 1`.
pub fn q_factorial(n: u32) -> QPoly {
    (1..=n).fold(QPoly::one(), |acc, i| &acc * &q_integer(i))
}

/// Rows `0..=n_max` of the Gaussian triangle, built with
/// `[n, k] = [n-1, k] + q^(n-k) [n-1, k-1]`. Row `n` has `n + 1` entries.
pub fn q_binomial_triangle(n_max: u32) -> Vec<Vec<QPoly>> {
    let mut rows: Vec<Vec<QPoly>> = Vec::with_capacity(n_max as usize + 1);
    rows.push(vec![QPoly::one()]);
    for n in 1..=n_max as usize {
        let prev = &rows[n - 1];
        let mut row = Vec::with_capacity(n + 1);
        row.push(QPoly::one());
        for k in 1..n {
            row.push(&prev[k] + &prev[k - 1].shift(n - k));
        }
        row.push(QPoly::one());
        rows.push(row);
    }
    rows
}

/// Gaussian binomial `[n choose k]_q` by the additive recurrence. Returns the
/// zero polynomial when `k < 0` or `k > n`.
pub fn q_binomial_recurrence(n: u32, k: i64) -> QPoly {
    if k < 0 || k > i64::from(n) {
        return QPoly::zero();
    }
    let k = k as usize;
    let k = k.min(n as usize - k);
    let n = n as usize;
    // Only columns 0..=k are needed; one rolling row keeps the work at O(n k).
    let mut row: Vec<QPoly> = vec![QPoly::one()];
    for m in 1..=n {
        let top = m.min(k);
        if top == m {
            row.push(QPoly::one());
        }
        let hi = if top == m { m - 1 } else { top };
        for j in (1..=hi).rev() {
            row[j] = &row[j] + &row[j - 1].shift(m - j);
        }
    }
    row.swap_remove(k)
}

/// Gaussian binomial as the exact quotient `[n]_q! / ([k]_q! [n-k]_q!)`.
/// An [`Error::InexactDivision`] here would mean an arithmetic bug.
pub fn q_binomial_quotient(n: u32, k: i64) -> Result<QPoly> {
    if k < 0 || k > i64::from(n) {
        return Ok(QPoly::zero());
    }
    let k = k as u32;
    let denom = &q_factorial(k) * &q_factorial(n - k);
    q_factorial(n).div_exact(&denom)
}

/// Value of `p` at `q = q0`.
pub fn evaluate(p: &QPoly, q0: &BigInt) -> BigInt {
    p.evaluate(q0)
}

/// Ordinary binomial coefficient, used as the `q = 1` reference.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

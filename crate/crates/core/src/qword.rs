//! Polynomials in noncommuting `x`, `y` with `yx = q xy`, `q` central.
//!
//! Every word is kept in normal order `x^a y^b`. Multiplying
//! `(x^a y^b)(x^c y^d)` moves each of the `b` y's past each of the `c` x's,
//! so the product is `q^(bc) x^(a+c) y^(b+d)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::qcalc::QPoly;

/// Finite sum of normal-ordered words `x^a y^b` with [`QPoly`] coefficients.
/// Keys are `(a, b)`; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NoncommPoly {
    terms: BTreeMap<(u32, u32), QPoly>,
}

impl NoncommPoly {
    pub fn zero() -> Self {
        NoncommPoly::default()
    }

    /// The empty word with coefficient 1.
    pub fn one() -> Self {
        NoncommPoly::term(0, 0, QPoly::one())
    }

    pub fn x() -> Self {
        NoncommPoly::term(1, 0, QPoly::one())
    }

    pub fn y() -> Self {
        NoncommPoly::term(0, 1, QPoly::one())
    }

    /// `coeff * x^a y^b`.
    pub fn term(a: u32, b: u32, coeff: QPoly) -> Self {
        let mut p = NoncommPoly::zero();
        p.add_term(a, b, coeff);
        p
    }

    fn add_term(&mut self, a: u32, b: u32, coeff: QPoly) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry((a, b)).or_default();
        *slot = &*slot + &coeff;
        if slot.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn add(&self, other: &NoncommPoly) -> NoncommPoly {
        let mut out = self.clone();
        for (&(a, b), c) in &other.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }

    /// Terms in lexicographic `(a, b)` order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &QPoly)> {
        self.terms.iter().map(|(&(a, b), c)| (a, b, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sets `q = q0` in every coefficient, giving an integer-coefficient
    /// (commutative when `q0 = 1`) expansion keyed by `(a, b)`.
    pub fn specialize(&self, q0: &BigInt) -> BTreeMap<(u32, u32), BigInt> {
        self.terms
            .iter()
            .map(|(&k, c)| (k, c.evaluate(q0)))
            .filter(|(_, v)| v != &BigInt::default())
            .collect()
    }
}

impl fmt::Display for NoncommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("0");
        }
        for (i, (a, b, c)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let word = word_string(a, b);
            match (c == &QPoly::one(), word.is_empty()) {
                (true, true) => f.write_str("1")?,
                (true, false) => f.write_str(&word)?,
                (false, true) => write!(f, "({c})")?,
                (false, false) => write!(f, "({c}){word}")?,
            }
        }
        Ok(())
    }
}

/// `x^a y^b` rendered as text, empty for the empty word.
pub fn word_string(a: u32, b: u32) -> String {
    let mut s = String::new();
    match a {
        0 => {}
        1 => s.push('x'),
        _ => s.push_str(&format!("x^{a}")),
    }
    match b {
        0 => {}
        1 => s.push('y'),
        _ => s.push_str(&format!("y^{b}")),
    }
    s
}

/// Product under `yx = q xy`.
pub fn nc_multiply(p: &NoncommPoly, r: &NoncommPoly) -> NoncommPoly {
    let mut out = NoncommPoly::zero();
    for (&(a, b), c1) in &p.terms {
        for (&(c, d), c2) in &r.terms {
            let coeff = (c1 * c2).shift((b as usize) * (c as usize));
            out.add_term(a + c, b + d, coeff);
        }
    }
    out
}

/// `(x + y)^n`, by `n` successive right multiplications.
pub fn expand_binomial(n: u32) -> NoncommPoly {
    let x_plus_y = NoncommPoly::x().add(&NoncommPoly::y());
    (0..n).fold(NoncommPoly::one(), |acc, _| nc_multiply(&acc, &x_plus_y))
}

/// Coefficient of `x^a y^b`, zero when absent.
pub fn nc_coefficient(p: &NoncommPoly, a: u32, b: u32) -> QPoly {
    p.terms.get(&(a, b)).cloned().unwrap_or_default()
}

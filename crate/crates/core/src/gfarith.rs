//! Finite fields `F_q`, `q = p^d`, as `F_p[x] / (m(x))`.
//!
//! An element is stored as an integer code `c_0 + c_1 p + ... + c_{d-1} p^(d-1)`
//! where `c_i` is the coefficient of `x^i`. Because the fields here are tiny
//! (`q` at most a few hundred), addition, multiplication, negation and
//! inversion are tabulated once at construction.

use std::fmt;

use crate::error::{Error, Result};
use crate::limits::Limits;

/// Identifies a field by its order and modulus, so elements from different
/// fields are never mixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldId {
    q: u32,
    modulus_code: u32,
}

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u32,
    d: u32,
    q: u32,
    /// Monic, low-to-high, length `d + 1`.
    modulus: Vec<u32>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    field: FieldId,
    code: u32,
}

impl FieldElement {
    pub fn code(&self) -> u32 {
        self.code
    }

    pub fn field_id(&self) -> FieldId {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}({})", self.field.q, self.code)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code)
    }
}

/// Builds `F_q` with the default size cap.
pub fn make_field(q: u64) -> Result<FiniteField> {
    make_field_with(q, &Limits::default())
}

/// Builds `F_q`. For `d > 1` the modulus is the smallest monic irreducible
/// polynomial of degree `d` over `F_p`, comparing coefficient vectors
/// lexicographically from the constant term upward.
pub fn make_field_with(q: u64, limits: &Limits) -> Result<FiniteField> {
    let (p, d) = prime_power(q).ok_or(Error::NotAPrimePower(q))?;
    if q > limits.max_field_q {
        return Err(Error::FieldTooLarge { q, cap: limits.max_field_q });
    }
    let p = p as u32;
    let modulus = if d == 1 {
        vec![0, 1]
    } else {
        smallest_irreducible(p, d).expect("an irreducible polynomial exists in every degree")
    };
    Ok(FiniteField::from_modulus(p, modulus))
}

/// `Some((p, d))` when `q = p^d` with `p` prime and `d >= 1`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let (mut rest, mut d) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        d += 1;
    }
    (rest == 1).then_some((p, d))
}

pub fn is_prime_power(q: u64) -> bool {
    prime_power(q).is_some()
}

fn smallest_irreducible(p: u32, d: u32) -> Option<Vec<u32>> {
    // Enumerate the d lower coefficients with the constant term varying slowest.
    let count = p.pow(d);
    (0..count).find_map(|idx| {
        let mut poly = vec![0; d as usize + 1];
        let mut rest = idx;
        for i in (0..d as usize).rev() {
            poly[i] = rest % p;
            rest /= p;
        }
        poly[d as usize] = 1;
        is_irreducible(&poly, p).then_some(poly)
    })
}

/// Irreducibility over `F_p` of a monic polynomial, by trial division by
/// every monic polynomial of degree up to half its degree.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let poly = trim(poly.to_vec());
    let Some(deg) = degree(&poly) else {
        return false;
    };
    if deg == 0 {
        return false;
    }
    for dd in 1..=deg / 2 {
        for idx in 0..p.pow(dd as u32) {
            let mut div = vec![0; dd + 1];
            let mut rest = idx;
            for c in div.iter_mut().take(dd) {
                *c = rest % p;
                rest /= p;
            }
            div[dd] = 1;
            if poly_rem(&poly, &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn degree(v: &[u32]) -> Option<usize> {
    v.iter().rposition(|&c| c != 0)
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    // p is prime and tiny: Fermat.
    let (mut base, mut exp, mut acc) = (u64::from(a % p), p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % u64::from(p);
        }
        base = base * base % u64::from(p);
        exp >>= 1;
    }
    acc as u32
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = trim(a.to_vec());
    let dm = degree(m).expect("nonzero divisor");
    let lead_inv = inv_mod_p(m[dm], p);
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let c = r[dr] * lead_inv % p;
        for (j, &mj) in m.iter().enumerate().take(dm + 1) {
            let idx = dr - dm + j;
            r[idx] = (r[idx] + p - c * mj % p) % p;
        }
        r = trim(r);
    }
    r
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

fn poly_sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

/// Quotient and remainder over `F_p`.
fn poly_divmod(a: &[u32], m: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
    let mut r = trim(a.to_vec());
    let dm = degree(m).expect("nonzero divisor");
    let lead_inv = inv_mod_p(m[dm], p);
    let mut quot = vec![0; r.len().saturating_sub(dm).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let c = r[dr] * lead_inv % p;
        quot[dr - dm] = c;
        for (j, &mj) in m.iter().enumerate().take(dm + 1) {
            let idx = dr - dm + j;
            r[idx] = (r[idx] + p - c * mj % p) % p;
        }
        r = trim(r);
    }
    (trim(quot), r)
}

/// Inverse of `a` modulo `m` over `F_p` by the extended Euclidean algorithm.
fn poly_inverse(a: &[u32], m: &[u32], p: u32) -> Option<Vec<u32>> {
    let (mut r0, mut r1) = (m.to_vec(), trim(a.to_vec()));
    let (mut s0, mut s1): (Vec<u32>, Vec<u32>) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (quot, rem) = poly_divmod(&r0, &r1, p);
        let s2 = poly_sub(&s0, &poly_mul(&quot, &s1, p), p);
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s2);
    }
    // r0 is the gcd; a unit iff a is invertible.
    if degree(&r0) != Some(0) {
        return None;
    }
    let c = inv_mod_p(r0[0], p);
    let inv: Vec<u32> = s0.iter().map(|&s| s * c % p).collect();
    Some(poly_rem(&inv, m, p))
}

impl FiniteField {
    /// Builds the field `F_p[x] / (modulus)`. `modulus` is low-to-high, monic
    /// and irreducible; this is checked.
    pub fn from_modulus(p: u32, modulus: Vec<u32>) -> Self {
        let modulus = trim(modulus);
        let d = degree(&modulus).expect("nonzero modulus") as u32;
        assert!(prime_power(u64::from(p)) == Some((u64::from(p), 1)), "{p} is not prime");
        assert_eq!(modulus[d as usize], 1, "modulus must be monic");
        assert!(d == 1 || is_irreducible(&modulus, p), "modulus must be irreducible");
        let q = p.pow(d);
        let mut field = FiniteField {
            p,
            d,
            q,
            modulus,
            add: Vec::new(),
            mul: Vec::new(),
            neg: Vec::new(),
            inv: Vec::new(),
        };
        field.build_tables();
        field
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        let polys: Vec<Vec<u32>> = (0..self.q).map(|c| self.decode(c)).collect();
        self.add = vec![0; q * q];
        self.mul = vec![0; q * q];
        self.neg = vec![0; q];
        self.inv = vec![0; q];
        for a in 0..q {
            let pa = &polys[a];
            let neg: Vec<u32> = pa.iter().map(|&c| (self.p - c) % self.p).collect();
            self.neg[a] = self.encode(&neg);
            for (b, pb) in polys.iter().enumerate() {
                let sum: Vec<u32> = (0..self.d as usize).map(|i| (pa[i] + pb[i]) % self.p).collect();
                self.add[a * q + b] = self.encode(&sum);
                let prod = poly_rem(&poly_mul(&trim(pa.clone()), &trim(pb.clone()), self.p), &self.modulus, self.p);
                self.mul[a * q + b] = self.encode(&prod);
            }
        }
        for (a, pa) in polys.iter().enumerate().skip(1) {
            self.inv[a] = if self.d == 1 {
                inv_mod_p(a as u32, self.p)
            } else {
                let inv = poly_inverse(&trim(pa.clone()), &self.modulus, self.p)
                    .expect("nonzero elements are invertible modulo an irreducible");
                self.encode(&inv)
            };
        }
    }

    /// Coefficient vector (length `d`, low-to-high) of a code.
    pub fn decode(&self, mut code: u32) -> Vec<u32> {
        (0..self.d)
            .map(|_| {
                let c = code % self.p;
                code /= self.p;
                c
            })
            .collect()
    }

    fn encode(&self, coeffs: &[u32]) -> u32 {
        coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn id(&self) -> FieldId {
        FieldId { q: self.q, modulus_code: self.encode(&self.modulus) }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Monic modulus, low-to-high.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn element(&self, code: u32) -> Result<FieldElement> {
        if code >= self.q {
            return Err(Error::InvalidArgument(format!("{code} is not an element code of F_{}", self.q)));
        }
        Ok(FieldElement { field: self.id(), code })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: self.id(), code: 0 }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { field: self.id(), code: 1 }
    }

    /// The class of `x` (a generator of the field over `F_p` when `d > 1`).
    pub fn generator(&self) -> FieldElement {
        let code = if self.d == 1 { 0 } else { self.p };
        FieldElement { field: self.id(), code }
    }

    /// All `q` elements, zero first, in increasing code order.
    pub fn elements(&self) -> Vec<FieldElement> {
        let id = self.id();
        (0..self.q).map(|code| FieldElement { field: id, code }).collect()
    }

    fn check(&self, a: &FieldElement) -> Result<()> {
        if a.field == self.id() {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn wrap(&self, code: u32) -> FieldElement {
        FieldElement { field: self.id(), code }
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check(&a)?;
        self.check(&b)?;
        Ok(self.wrap(self.add_raw(a.code, b.code)))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check(&a)?;
        self.check(&b)?;
        Ok(self.wrap(self.sub_raw(a.code, b.code)))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.check(&a)?;
        self.check(&b)?;
        Ok(self.wrap(self.mul_raw(a.code, b.code)))
    }

    pub fn neg(&self, a: FieldElement) -> Result<FieldElement> {
        self.check(&a)?;
        Ok(self.wrap(self.neg_raw(a.code)))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        self.check(&a)?;
        if a.code == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.wrap(self.inv_raw(a.code)))
    }

    pub fn pow(&self, a: FieldElement, exp: u64) -> Result<FieldElement> {
        self.check(&a)?;
        Ok(self.wrap(self.pow_raw(a.code, exp)))
    }

    // Code-level operations for the linear-algebra hot loops. Callers
    // guarantee codes are below q.

    #[inline]
    pub fn add_raw(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn sub_raw(&self, a: u32, b: u32) -> u32 {
        self.add_raw(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul_raw(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn neg_raw(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    /// Inverse of a nonzero code; `inv_raw(0)` returns 0.
    #[inline]
    pub fn inv_raw(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn pow_raw(&self, a: u32, mut exp: u64) -> u32 {
        let (mut base, mut acc) = (a, 1);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            exp >>= 1;
        }
        acc
    }
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteField")
            .field("p", &self.p)
            .field("d", &self.d)
            .field("modulus", &self.modulus)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_factorization() {
        assert_eq!(prime_power(5), Some((5, 1)));
        assert_eq!(prime_power(4), Some((2, 2)));
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(0), None);
    }

    #[test]
    fn construction() {
        let f5 = make_field(5).unwrap();
        assert_eq!((f5.characteristic(), f5.degree(), f5.order()), (5, 1, 5));
        let f4 = make_field(4).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        assert_eq!(make_field(6).unwrap_err(), Error::NotAPrimePower(6));
        assert_eq!(make_field(1).unwrap_err(), Error::NotAPrimePower(1));
        assert_eq!(make_field(32).unwrap_err(), Error::FieldTooLarge { q: 32, cap: 16 });
        // Smallest from the constant term upward: 1 + x^2 + x^3 precedes 1 + x + x^3.
        assert_eq!(make_field(8).unwrap().modulus(), &[1, 0, 1, 1]);
        assert_eq!(make_field(9).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn f4_is_the_only_quadratic_over_f2() {
        let irreducible: Vec<Vec<u32>> = [[0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1, 1]]
            .into_iter()
            .filter(|m| is_irreducible(m, 2))
            .map(|m| m.to_vec())
            .collect();
        assert_eq!(irreducible, vec![vec![1, 1, 1]]);
    }

    #[test]
    fn basic_arithmetic() {
        let f2 = make_field(2).unwrap();
        assert_eq!(f2.add(f2.one(), f2.one()).unwrap(), f2.zero());
        let f5 = make_field(5).unwrap();
        assert_eq!(f5.inv(f5.element(2).unwrap()).unwrap(), f5.element(3).unwrap());
        let f4 = make_field(4).unwrap();
        let g = f4.generator();
        let g_plus_1 = f4.add(g, f4.one()).unwrap();
        assert_eq!(f4.mul(g, g).unwrap(), g_plus_1);
    }

    #[test]
    fn errors() {
        let f5 = make_field(5).unwrap();
        let f7 = make_field(7).unwrap();
        assert_eq!(f5.inv(f5.zero()), Err(Error::DivisionByZero));
        assert_eq!(f5.add(f5.one(), f7.one()), Err(Error::FieldMismatch));
        assert!(f5.element(5).is_err());
    }

    #[test]
    fn element_listing() {
        let codes = |q| make_field(q).unwrap().elements().iter().map(|e| e.code()).collect::<Vec<_>>();
        assert_eq!(codes(2), vec![0, 1]);
        assert_eq!(codes(3), vec![0, 1, 2]);
        let f4 = make_field(4).unwrap();
        let els = f4.elements();
        assert_eq!(els.len(), 4);
        assert_eq!(els[2], f4.generator());
        assert_eq!(els[3], f4.add(f4.generator(), f4.one()).unwrap());
        assert_eq!(f4.decode(3), vec![1, 1]);
    }

    #[test]
    fn field_axioms_exhaustively() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let f = make_field(q).unwrap();
            let els = f.elements();
            let mut seen = std::collections::HashSet::new();
            assert!(els.iter().all(|e| seen.insert(*e)));
            for &a in &els {
                assert_eq!(f.add(a, f.zero()).unwrap(), a);
                assert_eq!(f.mul(a, f.one()).unwrap(), a);
                assert_eq!(f.add(a, f.neg(a).unwrap()).unwrap(), f.zero());
                if !a.is_zero() {
                    assert_eq!(f.pow(a, q - 1).unwrap(), f.one(), "Fermat in F_{q}");
                    assert_eq!(f.mul(f.inv(a).unwrap(), a).unwrap(), f.one());
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    if !a.is_zero() && !b.is_zero() {
                        assert!(!f.mul(a, b).unwrap().is_zero(), "no zero divisors");
                    }
                    for &c in &els {
                        let ab = f.add(a, b).unwrap();
                        assert_eq!(f.add(ab, c), f.add(a, f.add(b, c).unwrap()));
                        let mab = f.mul(a, b).unwrap();
                        assert_eq!(f.mul(mab, c), f.mul(a, f.mul(b, c).unwrap()));
                        let lhs = f.mul(a, f.add(b, c).unwrap()).unwrap();
                        let rhs = f.add(f.mul(a, b).unwrap(), f.mul(a, c).unwrap()).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn larger_cap() {
        let limits = Limits { max_field_q: 256, ..Limits::default() };
        let f = make_field_with(256, &limits).unwrap();
        for a in 1..256 {
            assert_eq!(f.mul_raw(a, f.inv_raw(a)), 1);
        }
    }
}

//! Finite fields F_q (q = p^e) and tower extensions F_{q^n} over F_q.
//!
//! Elements are coefficient vectors: an [`FFElement`] holds `e` residues
//! mod p (ascending powers of the generator), a [`TowerElement`] holds `n`
//! base-field elements (ascending powers of the tower generator). Moduli
//! are found by a deterministic scan so that every run of the tool builds
//! the same field representation: monic candidates are ordered by the value
//! of their non-leading coefficient vector read as a base-p (base-q for
//! towers) integer, and the first irreducible one wins.
//!
//! All types are immutable after construction and all operations are pure.

use crate::ring::Ring;
use serde::Serialize;
use std::fmt;

/// Hard cap on enumerable structure sizes (field orders, domain scans).
pub const ENUM_BUDGET: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    NotPrime(u64),
    InvalidDegree(usize),
    BudgetExceeded { requested: String, budget: u64 },
    ReducibleModulus,
    DivisionByZero,
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NotPrime(p) => write!(f, "{p} is not prime"),
            FieldError::InvalidDegree(d) => write!(f, "extension degree {d} must be >= 1"),
            FieldError::BudgetExceeded { requested, budget } => {
                write!(
                    f,
                    "structure of size {requested} exceeds enumeration budget {budget}"
                )
            }
            FieldError::ReducibleModulus => write!(f, "modulus is not irreducible"),
            FieldError::DivisionByZero => write!(f, "division by zero"),
        }
    }
}

impl std::error::Error for FieldError {}

/// An element of F_q, as `e` coefficients in `[0, p)` (ascending powers).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FFElement {
    coeffs: Vec<u64>,
}

impl FFElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
}

/// A finite field `F_q = F_p[x]/(modulus)`, q = p^e.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldSpec {
    p: u64,
    e: usize,
    /// Monic, length e+1, ascending powers, entries in [0, p).
    modulus: Vec<u64>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Writes `q` as `p^e` for prime `p`, if possible.
pub fn factor_prime_power(q: u64) -> Option<(u64, usize)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut rest = q;
            let mut e = 0usize;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            return if rest == 1 { Some((p, e)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

fn checked_order(base: u64, exp: usize) -> Result<u64, FieldError> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base).filter(|&v| v <= ENUM_BUDGET).ok_or(
            FieldError::BudgetExceeded {
                requested: format!("{base}^{exp}"),
                budget: ENUM_BUDGET,
            },
        )?;
    }
    Ok(acc)
}

/// Builds F_{p^e} with the deterministically chosen modulus (see module docs).
pub fn make_field(p: u64, e: usize) -> Result<FieldSpec, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    if e < 1 {
        return Err(FieldError::InvalidDegree(e));
    }
    checked_order(p, e)?;
    if e == 1 {
        // F_p = F_p[x]/(x); no scan needed.
        return Ok(FieldSpec {
            p,
            e,
            modulus: vec![0, 1],
        });
    }
    let prime = FieldSpec {
        p,
        e: 1,
        modulus: vec![0, 1],
    };
    let found = find_irreducible(&prime, e);
    let modulus = found.iter().map(|c| c.coeffs[0]).collect();
    Ok(FieldSpec { p, e, modulus })
}

impl FieldSpec {
    /// Builds a field from an explicit modulus, validating irreducibility.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<FieldSpec, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if modulus.len() < 2 {
            return Err(FieldError::InvalidDegree(0));
        }
        let e = modulus.len() - 1;
        checked_order(p, e)?;
        if modulus[e] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(FieldError::ReducibleModulus);
        }
        if e > 1 {
            let prime = FieldSpec {
                p,
                e: 1,
                modulus: vec![0, 1],
            };
            let as_elems: Vec<FFElement> = modulus
                .iter()
                .map(|&c| FFElement { coeffs: vec![c] })
                .collect();
            if !is_irreducible_over(&prime, &as_elems) {
                return Err(FieldError::ReducibleModulus);
            }
        }
        Ok(FieldSpec { p, e, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> usize {
        self.e
    }

    /// Field order q = p^e.
    pub fn q(&self) -> u64 {
        self.p.pow(self.e as u32)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    fn check(&self, a: &FFElement) {
        assert_eq!(
            a.coeffs.len(),
            self.e,
            "element does not belong to this field"
        );
    }

    pub fn zero(&self) -> FFElement {
        FFElement {
            coeffs: vec![0; self.e],
        }
    }

    pub fn one(&self) -> FFElement {
        self.from_u64(1)
    }

    /// The residue of the integer `c`.
    pub fn from_u64(&self, c: u64) -> FFElement {
        let mut coeffs = vec![0; self.e];
        coeffs[0] = c % self.p;
        FFElement { coeffs }
    }

    /// The generator symbol `t` (requires e >= 2).
    pub fn generator(&self) -> Option<FFElement> {
        if self.e < 2 {
            return None;
        }
        let mut coeffs = vec![0; self.e];
        coeffs[1] = 1;
        Some(FFElement { coeffs })
    }

    /// Builds an element from up to `e` coefficients (reduced mod p).
    pub fn element(&self, coeffs: &[u64]) -> FFElement {
        assert!(
            coeffs.len() <= self.e,
            "too many coefficients for this field"
        );
        let mut out = vec![0; self.e];
        for (i, &c) in coeffs.iter().enumerate() {
            out[i] = c % self.p;
        }
        FFElement { coeffs: out }
    }

    /// Canonical enumeration: index read as base-p digits, least significant
    /// digit first. Index 0 is 0 and index 1 is 1.
    pub fn element_from_index(&self, idx: u64) -> FFElement {
        debug_assert!(idx < self.q());
        let mut coeffs = vec![0; self.e];
        let mut v = idx;
        for c in coeffs.iter_mut() {
            *c = v % self.p;
            v /= self.p;
        }
        FFElement { coeffs }
    }

    pub fn index_of(&self, a: &FFElement) -> u64 {
        self.check(a);
        let mut idx = 0u64;
        for &c in a.coeffs.iter().rev() {
            idx = idx * self.p + c;
        }
        idx
    }

    /// All q elements in canonical order.
    pub fn elements(&self) -> Vec<FFElement> {
        (0..self.q()).map(|i| self.element_from_index(i)).collect()
    }

    pub fn add(&self, a: &FFElement, b: &FFElement) -> FFElement {
        self.check(a);
        self.check(b);
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        FFElement { coeffs }
    }

    pub fn neg(&self, a: &FFElement) -> FFElement {
        self.check(a);
        let coeffs = a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect();
        FFElement { coeffs }
    }

    pub fn sub(&self, a: &FFElement, b: &FFElement) -> FFElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FFElement, b: &FFElement) -> FFElement {
        self.check(a);
        self.check(b);
        let e = self.e;
        let mut buf = vec![0u64; 2 * e - 1];
        for i in 0..e {
            if a.coeffs[i] == 0 {
                continue;
            }
            for j in 0..e {
                buf[i + j] = (buf[i + j] + a.coeffs[i] * b.coeffs[j]) % self.p;
            }
        }
        // Reduce x^i = x^(i-e) * (x^e mod modulus) for i >= e.
        for i in (e..2 * e - 1).rev() {
            let c = buf[i];
            if c == 0 {
                continue;
            }
            buf[i] = 0;
            for j in 0..e {
                buf[i - e + j] = (buf[i - e + j] + (self.p - self.modulus[j]) * c) % self.p;
            }
        }
        buf.truncate(e);
        FFElement { coeffs: buf }
    }

    pub fn pow(&self, a: &FFElement, k: u64) -> FFElement {
        Ring::pow(self, a, k)
    }

    pub fn inv(&self, a: &FFElement) -> Result<FFElement, FieldError> {
        if self.is_zero(a) {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow(a, self.q() - 2))
    }

    pub fn div(&self, a: &FFElement, b: &FFElement) -> Result<FFElement, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Renders an element so that it re-parses: `0`, `2`, `t`, `t+1`,
    /// `2*t^2+1`, ... (no surrounding parentheses).
    pub fn format_element(&self, a: &FFElement) -> String {
        self.check(a);
        let mut parts = Vec::new();
        for j in (0..self.e).rev() {
            let c = a.coeffs[j];
            if c == 0 {
                continue;
            }
            let part = match (j, c) {
                (0, _) => format!("{c}"),
                (1, 1) => "t".to_string(),
                (1, _) => format!("{c}*t"),
                (_, 1) => format!("t^{j}"),
                (_, _) => format!("{c}*t^{j}"),
            };
            parts.push(part);
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }

    /// True when the element is an integer residue (no generator part).
    pub fn is_constant(&self, a: &FFElement) -> bool {
        a.coeffs[1..].iter().all(|&c| c == 0)
    }
}

impl Ring for FieldSpec {
    type Elem = FFElement;

    fn zero(&self) -> FFElement {
        FieldSpec::zero(self)
    }
    fn one(&self) -> FFElement {
        FieldSpec::one(self)
    }
    fn add(&self, a: &FFElement, b: &FFElement) -> FFElement {
        FieldSpec::add(self, a, b)
    }
    fn neg(&self, a: &FFElement) -> FFElement {
        FieldSpec::neg(self, a)
    }
    fn mul(&self, a: &FFElement, b: &FFElement) -> FFElement {
        FieldSpec::mul(self, a, b)
    }
    fn is_zero(&self, a: &FFElement) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }
}

// ---- univariate polynomial helpers over a field (for modulus search) ----

fn poly_trim(v: &mut Vec<FFElement>, field: &FieldSpec) {
    while v.last().is_some_and(|c| field.is_zero(c)) {
        v.pop();
    }
}

/// Remainder of `num` by a monic divisor of degree >= 1.
fn poly_rem(num: &[FFElement], div: &[FFElement], field: &FieldSpec) -> Vec<FFElement> {
    let d = div.len() - 1;
    let mut rem: Vec<FFElement> = num.to_vec();
    poly_trim(&mut rem, field);
    while rem.len() > d {
        let lead = rem.last().unwrap().clone();
        let shift = rem.len() - 1 - d;
        if !field.is_zero(&lead) {
            for j in 0..=d {
                let t = field.mul(&lead, &div[j]);
                rem[shift + j] = field.sub(&rem[shift + j], &t);
            }
        }
        rem.pop();
        poly_trim(&mut rem, field);
    }
    rem
}

/// Monic degree-`deg` polynomial whose non-leading coefficients are the
/// base-q digits of `value` (least significant digit = constant term).
fn monic_poly_from_value(field: &FieldSpec, deg: usize, value: u64) -> Vec<FFElement> {
    let q = field.q();
    let mut coeffs = Vec::with_capacity(deg + 1);
    let mut v = value;
    for _ in 0..deg {
        coeffs.push(field.element_from_index(v % q));
        v /= q;
    }
    coeffs.push(field.one());
    coeffs
}

/// Irreducibility by trial division against every monic polynomial of
/// degree up to deg/2. Exhaustive and exact at the sizes this crate allows.
fn is_irreducible_over(field: &FieldSpec, poly: &[FFElement]) -> bool {
    let deg = poly.len() - 1;
    if deg == 1 {
        return true;
    }
    let q = field.q();
    for d in 1..=deg / 2 {
        let count = q.pow(d as u32);
        for v in 0..count {
            let div = monic_poly_from_value(field, d, v);
            if poly_rem(poly, &div, field).is_empty() {
                return false;
            }
        }
    }
    true
}

/// First irreducible monic polynomial of the given degree in canonical order.
fn find_irreducible(field: &FieldSpec, deg: usize) -> Vec<FFElement> {
    let count = field.q().pow(deg as u32);
    for v in 0..count {
        let cand = monic_poly_from_value(field, deg, v);
        if is_irreducible_over(field, &cand) {
            return cand;
        }
    }
    unreachable!("irreducible polynomials exist in every degree over a finite field")
}

// ---- tower extension F_{q^n} over F_q ----

/// An element of F_{q^n}: `n` base-field coefficients, ascending powers of
/// the tower generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TowerElement {
    coeffs: Vec<FFElement>,
}

impl TowerElement {
    pub fn coeffs(&self) -> &[FFElement] {
        &self.coeffs
    }
}

/// The extension `F_{q^n} = F_q[t]/(ext_modulus)` with power basis
/// {1, t, ..., t^(n-1)}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerSpec {
    base: FieldSpec,
    n: usize,
    /// Monic over the base field, length n+1, ascending powers.
    ext_modulus: Vec<FFElement>,
}

/// Builds F_{q^n} over `base` with the deterministically chosen extension
/// modulus and the power basis.
pub fn make_tower(base: &FieldSpec, n: usize) -> Result<TowerSpec, FieldError> {
    if n < 1 {
        return Err(FieldError::InvalidDegree(n));
    }
    checked_order(base.q(), n)?;
    let ext_modulus = if n == 1 {
        vec![base.zero(), base.one()]
    } else {
        find_irreducible(base, n)
    };
    Ok(TowerSpec {
        base: base.clone(),
        n,
        ext_modulus,
    })
}

impl TowerSpec {
    pub fn base(&self) -> &FieldSpec {
        &self.base
    }

    /// Extension degree n over the base field.
    pub fn degree(&self) -> usize {
        self.n
    }

    /// Field order q^n.
    pub fn order(&self) -> u64 {
        self.base.q().pow(self.n as u32)
    }

    pub fn ext_modulus(&self) -> &[FFElement] {
        &self.ext_modulus
    }

    fn check(&self, a: &TowerElement) {
        assert_eq!(
            a.coeffs.len(),
            self.n,
            "element does not belong to this tower"
        );
    }

    pub fn zero(&self) -> TowerElement {
        TowerElement {
            coeffs: vec![self.base.zero(); self.n],
        }
    }

    pub fn one(&self) -> TowerElement {
        self.embed(&self.base.one())
    }

    /// The constant-polynomial embedding F_q -> F_{q^n}.
    pub fn embed(&self, a: &FFElement) -> TowerElement {
        let mut coeffs = vec![self.base.zero(); self.n];
        coeffs[0] = a.clone();
        TowerElement { coeffs }
    }

    /// Power-basis element e_{i+1} = t^i (0-indexed; i < n).
    pub fn basis_element(&self, i: usize) -> TowerElement {
        assert!(i < self.n, "basis index out of range");
        let mut coeffs = vec![self.base.zero(); self.n];
        coeffs[i] = self.base.one();
        TowerElement { coeffs }
    }

    /// Canonical enumeration: base-q digits of the index, least significant
    /// first, each digit an element index of the base field.
    pub fn element_from_index(&self, idx: u64) -> TowerElement {
        debug_assert!(idx < self.order());
        let q = self.base.q();
        let mut coeffs = Vec::with_capacity(self.n);
        let mut v = idx;
        for _ in 0..self.n {
            coeffs.push(self.base.element_from_index(v % q));
            v /= q;
        }
        TowerElement { coeffs }
    }

    pub fn index_of(&self, a: &TowerElement) -> u64 {
        self.check(a);
        let q = self.base.q();
        let mut idx = 0u64;
        for c in a.coeffs.iter().rev() {
            idx = idx * q + self.base.index_of(c);
        }
        idx
    }

    pub fn elements(&self) -> Vec<TowerElement> {
        (0..self.order())
            .map(|i| self.element_from_index(i))
            .collect()
    }

    pub fn add(&self, a: &TowerElement, b: &TowerElement) -> TowerElement {
        self.check(a);
        self.check(b);
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| self.base.add(x, y))
            .collect();
        TowerElement { coeffs }
    }

    pub fn neg(&self, a: &TowerElement) -> TowerElement {
        self.check(a);
        TowerElement {
            coeffs: a.coeffs.iter().map(|x| self.base.neg(x)).collect(),
        }
    }

    pub fn sub(&self, a: &TowerElement, b: &TowerElement) -> TowerElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &TowerElement, b: &TowerElement) -> TowerElement {
        self.check(a);
        self.check(b);
        let n = self.n;
        let mut buf = vec![self.base.zero(); 2 * n - 1];
        for i in 0..n {
            if self.base.is_zero(&a.coeffs[i]) {
                continue;
            }
            for j in 0..n {
                let t = self.base.mul(&a.coeffs[i], &b.coeffs[j]);
                buf[i + j] = self.base.add(&buf[i + j], &t);
            }
        }
        for i in (n..2 * n - 1).rev() {
            let c = buf[i].clone();
            if self.base.is_zero(&c) {
                continue;
            }
            buf[i] = self.base.zero();
            for j in 0..n {
                let t = self.base.mul(&c, &self.ext_modulus[j]);
                buf[i - n + j] = self.base.sub(&buf[i - n + j], &t);
            }
        }
        buf.truncate(n);
        TowerElement { coeffs: buf }
    }

    pub fn pow(&self, a: &TowerElement, k: u64) -> TowerElement {
        Ring::pow(self, a, k)
    }

    pub fn inv(&self, a: &TowerElement) -> Result<TowerElement, FieldError> {
        if self.is_zero(a) {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow(a, self.order() - 2))
    }

    pub fn div(&self, a: &TowerElement, b: &TowerElement) -> Result<TowerElement, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }
}

impl Ring for TowerSpec {
    type Elem = TowerElement;

    fn zero(&self) -> TowerElement {
        TowerSpec::zero(self)
    }
    fn one(&self) -> TowerElement {
        TowerSpec::one(self)
    }
    fn add(&self, a: &TowerElement, b: &TowerElement) -> TowerElement {
        TowerSpec::add(self, a, b)
    }
    fn neg(&self, a: &TowerElement) -> TowerElement {
        TowerSpec::neg(self, a)
    }
    fn mul(&self, a: &TowerElement, b: &TowerElement) -> TowerElement {
        TowerSpec::mul(self, a, b)
    }
    fn is_zero(&self, a: &TowerElement) -> bool {
        a.coeffs.iter().all(|c| FieldSpec::is_zero(&self.base, c))
    }
}

/// Iterates over all points of F_q^n in canonical order (coordinate 0 is
/// the fastest-varying digit), invoking `visit` with each point.
pub fn for_each_point<F: FnMut(&[FFElement])>(spec: &FieldSpec, n: usize, mut visit: F) {
    let q = spec.q();
    let elems = spec.elements();
    let total = q.pow(n as u32);
    let mut point: Vec<FFElement> = vec![elems[0].clone(); n];
    for idx in 0..total {
        let mut v = idx;
        for slot in point.iter_mut() {
            *slot = elems[(v % q) as usize].clone();
            v /= q;
        }
        visit(&point);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(spec: &FieldSpec, coeffs: &[u64]) -> FFElement {
        spec.element(coeffs)
    }

    /// Independent modulus oracle for quadratics/cubics: scan candidates in
    /// canonical order and accept the first with no root (valid up to
    /// degree 3, where a factor must be linear).
    fn first_rootless(spec: &FieldSpec, deg: usize) -> Vec<u64> {
        assert!(deg == 2 || deg == 3);
        let q = spec.q();
        'cand: for v in 0..q.pow(deg as u32) {
            let mut coeffs: Vec<FFElement> = Vec::new();
            let mut val = v;
            for _ in 0..deg {
                coeffs.push(spec.element_from_index(val % q));
                val /= q;
            }
            coeffs.push(spec.one());
            for x in spec.elements() {
                let mut acc = spec.zero();
                for c in coeffs.iter().rev() {
                    acc = spec.add(&spec.mul(&acc, &x), c);
                }
                if spec.is_zero(&acc) {
                    continue 'cand;
                }
            }
            return coeffs.iter().map(|c| spec.index_of(c)).collect();
        }
        panic!("no rootless candidate found");
    }

    #[test]
    fn make_field_prime() {
        let f3 = make_field(3, 1).unwrap();
        assert_eq!(f3.q(), 3);
        assert_eq!(f3.modulus(), &[0, 1]);
    }

    #[test]
    fn make_field_f4_unique_quadratic() {
        let f4 = make_field(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
    }

    #[test]
    fn make_field_f9_smallest_scan() {
        let f9 = make_field(3, 2).unwrap();
        // Oracle: first monic quadratic over F_3 without a root is x^2 + 1.
        let f3 = make_field(3, 1).unwrap();
        assert_eq!(first_rootless(&f3, 2), vec![1, 0, 1]);
        assert_eq!(f9.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn make_field_rejects_bad_input() {
        assert_eq!(make_field(4, 1), Err(FieldError::NotPrime(4)));
        assert_eq!(make_field(5, 0), Err(FieldError::InvalidDegree(0)));
        assert!(matches!(
            make_field(2, 21),
            Err(FieldError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn with_modulus_validates() {
        assert!(FieldSpec::with_modulus(2, vec![1, 1, 1]).is_ok());
        // x^2 + 1 = (x+1)^2 over F_2.
        assert_eq!(
            FieldSpec::with_modulus(2, vec![1, 0, 1]),
            Err(FieldError::ReducibleModulus)
        );
    }

    #[test]
    fn arithmetic_examples() {
        let f4 = make_field(2, 2).unwrap();
        let t = f4.generator().unwrap();
        // t * t = t + 1 mod t^2+t+1
        assert_eq!(f4.mul(&t, &t), f(&f4, &[1, 1]));
        // Frobenius^2 is the identity on F_4: t^4 = t.
        assert_eq!(f4.pow(&t, 4), t);

        let f3 = make_field(3, 1).unwrap();
        assert_eq!(f3.add(&f3.from_u64(2), &f3.from_u64(2)), f3.one());
    }

    #[test]
    fn division() {
        let f9 = make_field(3, 2).unwrap();
        let t = f9.generator().unwrap();
        let inv = f9.inv(&t).unwrap();
        assert_eq!(f9.mul(&t, &inv), f9.one());
        assert_eq!(f9.div(&t, &f9.zero()), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn enumeration_order() {
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(f2.elements(), vec![f2.zero(), f2.one()]);

        let f4 = make_field(2, 2).unwrap();
        let t = f4.generator().unwrap();
        assert_eq!(
            f4.elements(),
            vec![f4.zero(), f4.one(), t.clone(), f4.add(&t, &f4.one())]
        );
        for (i, a) in f4.elements().iter().enumerate() {
            assert_eq!(f4.index_of(a), i as u64);
        }
    }

    #[test]
    fn f9_closure_exhaustive() {
        let f9 = make_field(3, 2).unwrap();
        let elems = f9.elements();
        assert_eq!(elems.len(), 9);
        let set: std::collections::HashSet<_> = elems.iter().cloned().collect();
        assert_eq!(set.len(), 9);
        for a in &elems {
            for b in &elems {
                assert!(set.contains(&f9.add(a, b)));
                assert!(set.contains(&f9.mul(a, b)));
            }
        }
    }

    #[test]
    fn frobenius_fixed_points() {
        for (p, e) in [
            (2, 1),
            (3, 1),
            (2, 2),
            (5, 1),
            (2, 3),
            (3, 2),
            (5, 2),
            (3, 4),
        ] {
            let spec = make_field(p, e).unwrap();
            let q = spec.q();
            for a in spec.elements() {
                assert_eq!(spec.pow(&a, q), a, "a^q != a in F_{q}");
            }
        }
    }

    #[test]
    fn multiplicative_group_cyclic() {
        for (p, e) in [(2, 2), (3, 1), (2, 3), (3, 2), (5, 1), (7, 1)] {
            let spec = make_field(p, e).unwrap();
            let q = spec.q();
            let found = spec.elements().into_iter().any(|a| {
                if spec.is_zero(&a) {
                    return false;
                }
                let mut seen = std::collections::HashSet::new();
                let mut x = spec.one();
                for _ in 0..q - 1 {
                    seen.insert(x.clone());
                    x = spec.mul(&x, &a);
                }
                seen.len() as u64 == q - 1
            });
            assert!(found, "no generator found for q={q}");
        }
    }

    #[test]
    fn make_tower_examples() {
        let f2 = make_field(2, 1).unwrap();
        let t22 = make_tower(&f2, 2).unwrap();
        assert_eq!(
            t22.ext_modulus()
                .iter()
                .map(|c| f2.index_of(c))
                .collect::<Vec<_>>(),
            vec![1, 1, 1]
        );

        let f3 = make_field(3, 1).unwrap();
        let t32 = make_tower(&f3, 2).unwrap();
        assert_eq!(first_rootless(&f3, 2), vec![1, 0, 1]);
        assert_eq!(
            t32.ext_modulus()
                .iter()
                .map(|c| f3.index_of(c))
                .collect::<Vec<_>>(),
            vec![1, 0, 1]
        );

        let t23 = make_tower(&f2, 3).unwrap();
        assert_eq!(first_rootless(&f2, 3), vec![1, 1, 0, 1]);
        assert_eq!(
            t23.ext_modulus()
                .iter()
                .map(|c| f2.index_of(c))
                .collect::<Vec<_>>(),
            vec![1, 1, 0, 1]
        );
    }

    #[test]
    fn make_tower_over_extension_field() {
        // F_16 as a quadratic extension of F_4: first irreducible monic
        // quadratic in canonical order is y^2 + y + t.
        let f4 = make_field(2, 2).unwrap();
        let tower = make_tower(&f4, 2).unwrap();
        let idxs: Vec<u64> = tower.ext_modulus().iter().map(|c| f4.index_of(c)).collect();
        assert_eq!(idxs, vec![2, 1, 1]); // t, 1, 1
                                         // Oracle: a quadratic with no root in F_4 is irreducible there.
        assert_eq!(first_rootless(&f4, 2), vec![2, 1, 1]);
    }

    #[test]
    fn tower_embedding_commutes_with_arithmetic() {
        let f3 = make_field(3, 1).unwrap();
        let tower = make_tower(&f3, 2).unwrap();
        for a in f3.elements() {
            for b in f3.elements() {
                assert_eq!(
                    tower.add(&tower.embed(&a), &tower.embed(&b)),
                    tower.embed(&f3.add(&a, &b))
                );
                assert_eq!(
                    tower.mul(&tower.embed(&a), &tower.embed(&b)),
                    tower.embed(&f3.mul(&a, &b))
                );
            }
        }
    }

    #[test]
    fn tower_enumeration_and_frobenius() {
        let f3 = make_field(3, 1).unwrap();
        let tower = make_tower(&f3, 2).unwrap();
        let elems = tower.elements();
        assert_eq!(elems.len(), 9);
        let set: std::collections::HashSet<_> = elems.iter().cloned().collect();
        assert_eq!(set.len(), 9);
        for a in &elems {
            assert_eq!(tower.pow(a, tower.order()), *a);
        }
        for (i, a) in elems.iter().enumerate() {
            assert_eq!(tower.index_of(a), i as u64);
        }
    }

    #[test]
    fn trivial_tower_degree_one() {
        let f9 = make_field(3, 2).unwrap();
        let tower = make_tower(&f9, 1).unwrap();
        assert_eq!(tower.order(), 9);
        let t = f9.generator().unwrap();
        let emb = tower.embed(&t);
        assert_eq!(tower.mul(&emb, &emb), tower.embed(&f9.mul(&t, &t)));
    }

    #[test]
    fn prime_power_factoring() {
        assert_eq!(factor_prime_power(8), Some((2, 3)));
        assert_eq!(factor_prime_power(9), Some((3, 2)));
        assert_eq!(factor_prime_power(7), Some((7, 1)));
        assert_eq!(factor_prime_power(12), None);
        assert_eq!(factor_prime_power(1), None);
    }

    #[test]
    fn point_iteration_order() {
        let f2 = make_field(2, 1).unwrap();
        let mut pts = Vec::new();
        for_each_point(&f2, 2, |p| {
            pts.push((f2.index_of(&p[0]), f2.index_of(&p[1])))
        });
        assert_eq!(pts, vec![(0, 0), (1, 0), (0, 1), (1, 1)]);
    }
}

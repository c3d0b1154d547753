//! Truncated unramified p-adic arithmetic: the ring Z_Q mod p^N for
//! Q = q^n, Teichmueller lifts, the power sums S_k, and the invariant U.
//!
//! The ring mirrors the two-level field construction. Its elements are
//! `outer x inner` grids of residues mod p^N: the inner level is
//! `(Z/p^N)[s]/(m~)` for the coefficient-wise lift m~ of the base field
//! modulus, the outer level reduces by the lift of the tower modulus. A
//! base field alone is covered by the trivial outer level of degree 1.
//! Reducing everything mod p recovers the residue field, and any monic
//! lift of an irreducible modulus presents the same truncated unramified
//! ring, so nothing here depends on the particular lift.
//!
//! U is the first k >= 1 whose power sum survives mod p^(1 + v_p(k));
//! that exponent is exact because the ideal (pk) of Z_Q equals
//! (p^(1 + v_p(k))), the prime-to-p part of k being a unit.

use crate::fields::{FFElement, FieldSpec, TowerElement, TowerSpec};
use crate::poly::{construct_g, MultiPoly, PolyVector};
use crate::ring::Ring;
use serde::Serialize;
use std::collections::HashMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PadicError {
    BudgetExceeded {
        points: u64,
        budget: u64,
    },
    ScanExhausted {
        cap: u64,
    },
    ConstantMap,
    ComponentMismatch {
        components: usize,
        tower_degree: usize,
    },
}

impl fmt::Display for PadicError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PadicError::BudgetExceeded { points, budget } => {
                write!(
                    f,
                    "power-sum domain of {points} points exceeds budget {budget}"
                )
            }
            PadicError::ScanExhausted { cap } => {
                write!(
                    f,
                    "no nonvanishing power sum up to k = {cap}; is the map constant?"
                )
            }
            PadicError::ConstantMap => write!(f, "the invariant requires a nonconstant map"),
            PadicError::ComponentMismatch {
                components,
                tower_degree,
            } => {
                write!(
                    f,
                    "map has {components} components but the tower has degree {tower_degree}"
                )
            }
        }
    }
}

impl std::error::Error for PadicError {}

/// p-adic valuation of k >= 1.
pub fn v_p(p: u64, k: u64) -> u32 {
    debug_assert!(k >= 1);
    let mut v = 0;
    let mut k = k;
    while k.is_multiple_of(p) {
        v += 1;
        k /= p;
    }
    v
}

/// Closed form of the Teichmueller monomial sum over L_q:
/// 0 unless (q-1) | k; q-1 for nonzero multiples; q at k = 0.
pub fn charsum_oracle(q: u64, k: u64) -> u64 {
    if k == 0 {
        q
    } else if k.is_multiple_of(q - 1) {
        q - 1
    } else {
        0
    }
}

/// An element of the truncated ring: `outer x inner` residues mod p^N.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WittElem {
    coeffs: Vec<Vec<u64>>,
}

impl WittElem {
    pub fn coeffs(&self) -> &[Vec<u64>] {
        &self.coeffs
    }
}

/// The ring (Z/p^N)[s, t] / (inner modulus, outer modulus), a truncation
/// of the unramified extension with residue field of order p^(e*n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WittRing {
    p: u64,
    precision: u32,
    pn: u64,
    inner_deg: usize,
    outer_deg: usize,
    inner_modulus: Vec<u64>,
    outer_modulus: Vec<Vec<u64>>,
    /// Residue field order p^(inner_deg * outer_deg).
    order: u64,
}

impl WittRing {
    /// Ring covering the base field F_q at the given precision.
    pub fn lift_field(field: &FieldSpec, precision: u32) -> WittRing {
        assert!(precision >= 1, "precision must be at least 1");
        let p = field.p();
        let pn = p.pow(precision);
        let inner_deg = field.e();
        WittRing {
            p,
            precision,
            pn,
            inner_deg,
            outer_deg: 1,
            inner_modulus: field.modulus().to_vec(),
            outer_modulus: vec![vec![0; inner_deg], {
                let mut one = vec![0; inner_deg];
                one[0] = 1;
                one
            }],
            order: field.q(),
        }
    }

    /// Ring covering the tower extension F_{q^n} at the given precision.
    pub fn lift_tower(tower: &TowerSpec, precision: u32) -> WittRing {
        assert!(precision >= 1, "precision must be at least 1");
        let base = tower.base();
        let p = base.p();
        let pn = p.pow(precision);
        let inner_deg = base.e();
        let outer_modulus = tower
            .ext_modulus()
            .iter()
            .map(|c| c.coeffs().to_vec())
            .collect();
        WittRing {
            p,
            precision,
            pn,
            inner_deg,
            outer_deg: tower.degree(),
            inner_modulus: base.modulus().to_vec(),
            outer_modulus,
            order: tower.order(),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// p^N, the coefficient modulus.
    pub fn coeff_modulus(&self) -> u64 {
        self.pn
    }

    /// Residue field order Q.
    pub fn residue_order(&self) -> u64 {
        self.order
    }

    pub fn from_u64(&self, c: u64) -> WittElem {
        let mut coeffs = vec![vec![0; self.inner_deg]; self.outer_deg];
        coeffs[0][0] = c % self.pn;
        WittElem { coeffs }
    }

    /// Builds an element from coefficient rows, reducing entries mod p^N.
    pub fn element(&self, coeffs: Vec<Vec<u64>>) -> WittElem {
        assert_eq!(coeffs.len(), self.outer_deg, "outer degree mismatch");
        let coeffs = coeffs
            .into_iter()
            .map(|row| {
                assert_eq!(row.len(), self.inner_deg, "inner degree mismatch");
                row.into_iter().map(|c| c % self.pn).collect()
            })
            .collect();
        WittElem { coeffs }
    }

    fn check(&self, a: &WittElem) {
        assert_eq!(
            a.coeffs.len(),
            self.outer_deg,
            "element has wrong outer degree"
        );
        debug_assert!(a.coeffs.iter().all(|r| r.len() == self.inner_deg));
    }

    /// True when every coefficient vanishes mod `m` (for divisibility
    /// checks at lower precision than the ring's own).
    pub fn is_zero_mod(&self, a: &WittElem, m: u64) -> bool {
        a.coeffs.iter().flatten().all(|&c| c % m == 0)
    }

    /// Number of ring elements, p^(N * e * n).
    pub fn element_count(&self) -> u64 {
        self.pn
            .checked_pow((self.inner_deg * self.outer_deg) as u32)
            .expect("ring too large to enumerate")
    }

    pub fn element_from_index(&self, idx: u64) -> WittElem {
        let mut v = idx;
        let mut coeffs = vec![vec![0u64; self.inner_deg]; self.outer_deg];
        for row in coeffs.iter_mut() {
            for c in row.iter_mut() {
                *c = v % self.pn;
                v /= self.pn;
            }
        }
        WittElem { coeffs }
    }

    pub fn index_of(&self, a: &WittElem) -> u64 {
        self.check(a);
        let mut idx = 0u64;
        for row in a.coeffs.iter().rev() {
            for &c in row.iter().rev() {
                idx = idx * self.pn + c;
            }
        }
        idx
    }

    // ---- inner-level arithmetic: (Z/p^N)[s]/(inner_modulus) ----

    fn inner_add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| (x + y) % self.pn).collect()
    }

    fn inner_neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter().map(|&x| (self.pn - x) % self.pn).collect()
    }

    fn inner_sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| (x + self.pn - y) % self.pn)
            .collect()
    }

    fn inner_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let e = self.inner_deg;
        let mut buf = vec![0u64; 2 * e - 1];
        for i in 0..e {
            if a[i] == 0 {
                continue;
            }
            for j in 0..e {
                buf[i + j] = (buf[i + j] + a[i] * b[j]) % self.pn;
            }
        }
        for i in (e..2 * e - 1).rev() {
            let c = buf[i];
            if c == 0 {
                continue;
            }
            buf[i] = 0;
            for j in 0..e {
                buf[i - e + j] =
                    (buf[i - e + j] + (self.pn - self.inner_modulus[j] % self.pn) * c) % self.pn;
            }
        }
        buf.truncate(e);
        buf
    }

    /// The unique lift of `a` fixed by the Q-power map: start from the
    /// naive coefficient lift and iterate y -> y^Q, gaining one p-adic
    /// digit per step. Panics if the fixed-point equation fails afterwards,
    /// which would indicate an arithmetic bug.
    pub fn teichmuller(&self, a: &TowerElement) -> WittElem {
        assert_eq!(
            a.coeffs().len(),
            self.outer_deg,
            "element is not from the covered tower"
        );
        let coeffs = a.coeffs().iter().map(|c| c.coeffs().to_vec()).collect();
        self.teichmuller_from(WittElem { coeffs })
    }

    /// Teichmueller lift of a base-field element (embedded as a constant).
    pub fn teichmuller_base(&self, a: &FFElement) -> WittElem {
        assert_eq!(
            a.coeffs().len(),
            self.inner_deg,
            "element is not from the covered field"
        );
        let mut coeffs = vec![vec![0; self.inner_deg]; self.outer_deg];
        coeffs[0] = a.coeffs().to_vec();
        self.teichmuller_from(WittElem { coeffs })
    }

    fn teichmuller_from(&self, naive: WittElem) -> WittElem {
        let mut y = naive;
        for _ in 1..self.precision {
            y = self.pow(&y, self.order);
        }
        assert_eq!(
            self.pow(&y, self.order),
            y,
            "teichmuller postcondition failed"
        );
        y
    }
}

impl Ring for WittRing {
    type Elem = WittElem;

    fn zero(&self) -> WittElem {
        WittElem {
            coeffs: vec![vec![0; self.inner_deg]; self.outer_deg],
        }
    }

    fn one(&self) -> WittElem {
        self.from_u64(1)
    }

    fn add(&self, a: &WittElem, b: &WittElem) -> WittElem {
        self.check(a);
        self.check(b);
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| self.inner_add(x, y))
            .collect();
        WittElem { coeffs }
    }

    fn neg(&self, a: &WittElem) -> WittElem {
        self.check(a);
        WittElem {
            coeffs: a.coeffs.iter().map(|x| self.inner_neg(x)).collect(),
        }
    }

    fn mul(&self, a: &WittElem, b: &WittElem) -> WittElem {
        self.check(a);
        self.check(b);
        let n = self.outer_deg;
        let zero_inner = vec![0u64; self.inner_deg];
        let mut buf = vec![zero_inner.clone(); 2 * n - 1];
        for i in 0..n {
            if a.coeffs[i].iter().all(|&c| c == 0) {
                continue;
            }
            for j in 0..n {
                let t = self.inner_mul(&a.coeffs[i], &b.coeffs[j]);
                buf[i + j] = self.inner_add(&buf[i + j], &t);
            }
        }
        for i in (n..2 * n - 1).rev() {
            let c = buf[i].clone();
            if c.iter().all(|&x| x == 0) {
                continue;
            }
            buf[i] = zero_inner.clone();
            for j in 0..n {
                let t = self.inner_mul(&c, &self.outer_modulus[j]);
                buf[i - n + j] = self.inner_sub(&buf[i - n + j], &t);
            }
        }
        buf.truncate(n);
        WittElem { coeffs: buf }
    }

    fn is_zero(&self, a: &WittElem) -> bool {
        a.coeffs.iter().flatten().all(|&c| c == 0)
    }
}

/// A power sum together with the ring it lives in.
#[derive(Debug, Clone)]
pub struct PowerSum {
    pub k: u64,
    pub precision: u32,
    pub value: WittElem,
    pub ring: WittRing,
}

/// Sum of g~(x)^k over all tuples of Teichmueller lifts of base-field
/// elements, at precision 1 + v_p(k). The coefficients of g are lifted by
/// `teichmuller` first.
pub fn power_sum(
    g: &MultiPoly<TowerElement>,
    tower: &TowerSpec,
    k: u64,
    max_points: u64,
) -> Result<PowerSum, PadicError> {
    assert!(k >= 1, "power sums are defined for k >= 1");
    let precision = 1 + v_p(tower.base().p(), k);
    let ring = WittRing::lift_tower(tower, precision);
    let values = lifted_values(g, tower, &ring, max_points)?;
    let mut acc = ring.zero();
    for v in &values {
        acc = ring.add(&acc, &ring.pow(v, k));
    }
    Ok(PowerSum {
        k,
        precision,
        value: acc,
        ring,
    })
}

/// g~ evaluated at every point of L_q^nvars, in canonical point order.
fn lifted_values(
    g: &MultiPoly<TowerElement>,
    tower: &TowerSpec,
    ring: &WittRing,
    max_points: u64,
) -> Result<Vec<WittElem>, PadicError> {
    let base = tower.base();
    let q = base.q();
    let nvars = g.nvars();
    let points = q
        .checked_pow(nvars as u32)
        .ok_or(PadicError::BudgetExceeded {
            points: u64::MAX,
            budget: max_points,
        })?;
    if points > max_points {
        return Err(PadicError::BudgetExceeded {
            points,
            budget: max_points,
        });
    }

    let g_lift: MultiPoly<WittElem> = g.map_coeffs(ring, |c| ring.teichmuller(c));
    let base_lifts: Vec<WittElem> = base
        .elements()
        .iter()
        .map(|a| ring.teichmuller_base(a))
        .collect();

    let mut values = Vec::with_capacity(points as usize);
    let mut point: Vec<WittElem> = vec![ring.zero(); nvars];
    for idx in 0..points {
        let mut v = idx;
        for slot in point.iter_mut() {
            *slot = base_lifts[(v % q) as usize].clone();
            v /= q;
        }
        values.push(g_lift.evaluate(ring, &point));
    }
    Ok(values)
}

/// Constancy of g as a map on F_q^nvars. This is the notion that matters
/// for the invariant: a map that is constant as a function (even with a
/// nonconstant polynomial behind it, e.g. x^2 + x on F_2) has every power
/// sum vanishing at every precision, so no scan cap can terminate.
fn is_constant_function(g: &MultiPoly<TowerElement>, tower: &TowerSpec) -> bool {
    let base = tower.base();
    let q = base.q();
    let nvars = g.nvars();
    let embedded: Vec<TowerElement> = base.elements().iter().map(|a| tower.embed(a)).collect();
    let mut first: Option<TowerElement> = None;
    let mut point: Vec<TowerElement> = vec![tower.zero(); nvars];
    for idx in 0..q.pow(nvars as u32) {
        let mut v = idx;
        for slot in point.iter_mut() {
            *slot = embedded[(v % q) as usize].clone();
            v /= q;
        }
        let value = g.evaluate(tower, &point);
        match &first {
            None => first = Some(value),
            Some(f0) => {
                if value != *f0 {
                    return false;
                }
            }
        }
    }
    true
}

/// The invariant: smallest k and the certificate that S_k survives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UResult {
    /// The invariant itself.
    pub u: u64,
    /// The k achieving it (equal to `u`; kept for report symmetry).
    pub witness_k: u64,
    /// Precision 1 + v_p(k) at which the sum was taken.
    pub precision: u32,
    /// The nonvanishing sum, as coefficient rows mod p^precision.
    pub s_value: WittElem,
}

/// One row of the optional per-k trace.
#[derive(Debug, Clone, Serialize)]
pub struct UTraceRecord {
    pub k: u64,
    pub precision: u32,
    pub s_coeffs: Vec<Vec<u64>>,
    pub nonzero: bool,
}

/// Scans k = 1, 2, ... for the first nonvanishing power sum of the tower
/// encoding of `f`. The scan is capped at Q - 1 (Q the tower order), which
/// suffices for every nonconstant map; exhausting it signals a bug or a
/// constant map and errors out. Teichmueller data is cached per precision,
/// since the precision only changes with v_p(k).
pub fn compute_u(
    f: &PolyVector,
    tower: &TowerSpec,
    max_points: u64,
) -> Result<UResult, PadicError> {
    compute_u_traced(f, tower, max_points, None)
}

pub fn compute_u_traced(
    f: &PolyVector,
    tower: &TowerSpec,
    max_points: u64,
    mut trace: Option<&mut Vec<UTraceRecord>>,
) -> Result<UResult, PadicError> {
    let g = construct_g(f, tower).map_err(|_| PadicError::ComponentMismatch {
        components: f.len(),
        tower_degree: tower.degree(),
    })?;
    let order = tower.order();
    let domain =
        tower
            .base()
            .q()
            .checked_pow(f.nvars() as u32)
            .ok_or(PadicError::BudgetExceeded {
                points: u64::MAX,
                budget: max_points,
            })?;
    if order.max(domain) > max_points {
        return Err(PadicError::BudgetExceeded {
            points: order.max(domain),
            budget: max_points,
        });
    }
    if is_constant_function(&g, tower) {
        return Err(PadicError::ConstantMap);
    }
    let p = tower.base().p();

    let mut cache: HashMap<u32, (WittRing, Vec<WittElem>)> = HashMap::new();
    for k in 1..order {
        let precision = 1 + v_p(p, k);
        if let std::collections::hash_map::Entry::Vacant(e) = cache.entry(precision) {
            let ring = WittRing::lift_tower(tower, precision);
            let values = lifted_values(&g, tower, &ring, max_points)?;
            e.insert((ring, values));
        }
        let (ring, values) = &cache[&precision];
        let mut acc = ring.zero();
        for v in values {
            acc = ring.add(&acc, &ring.pow(v, k));
        }
        let nonzero = !ring.is_zero(&acc);
        if let Some(t) = trace.as_mut() {
            t.push(UTraceRecord {
                k,
                precision,
                s_coeffs: acc.coeffs().to_vec(),
                nonzero,
            });
        }
        if nonzero {
            return Ok(UResult {
                u: k,
                witness_k: k,
                precision,
                s_value: acc,
            });
        }
    }
    Err(PadicError::ScanExhausted { cap: order - 1 })
}

//! Newton polytopes, the exact gauge (minimal dilation containing a given
//! point), and the dilation invariant: the least k such that k times the
//! polytope contains a lattice point with all coordinates positive.
//!
//! The polytope is kept as its generating points; no convex hull is ever
//! extracted. The gauge of v is the exact linear program
//!
//! ```text
//! min sum(lambda)  s.t.  sum(lambda_j V_j) = v,  lambda >= 0
//! ```
//!
//! over the nonzero generators (the origin contributes nothing), which has
//! the same value over the generator set as over the hull vertices. The
//! invariant itself is found by a bounded search over positive lattice
//! points: the polytope lies inside the simplex `sum(x) <= d` where d is
//! the largest generator coordinate sum, so `gauge(v) >= sum(v)/d` and any
//! candidate beating the current best must satisfy `sum(v) <= d * best`.
//! Enumerating by increasing coordinate sum therefore terminates with the
//! exact minimum and its lexicographically smallest witness.

use crate::poly::{MultiPoly, PolyVector};
use crate::rational::ExtRat;
use crate::simplex::{solve_min, LpOutcome};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolytopeError {
    DimensionMismatch { expected: usize, got: usize },
    ZeroPolynomial,
    OracleBudget { detail: String },
}

impl fmt::Display for PolytopeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolytopeError::DimensionMismatch { expected, got } => {
                write!(
                    f,
                    "point has {got} coordinates, polytope lives in dimension {expected}"
                )
            }
            PolytopeError::ZeroPolynomial => {
                write!(f, "the zero polynomial has no Newton polytope")
            }
            PolytopeError::OracleBudget { detail } => {
                write!(f, "oracle budget exceeded: {detail}")
            }
        }
    }
}

impl std::error::Error for PolytopeError {}

/// Result of the dilation-invariant search: the exact value and, when
/// finite, the lexicographically smallest positive lattice point attaining
/// it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuResult {
    pub mu: ExtRat,
    pub witness: Option<Vec<u32>>,
}

/// Generating points of a lattice polytope in Z^n_{>=0}; the origin is
/// always a member of the hull whether or not it is listed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolytope {
    dim: usize,
    generators: Vec<Vec<u32>>,
}

/// Newton polytope of a single polynomial: its support plus the implicit
/// origin.
pub fn newton_polytope_of<C: Clone + PartialEq + fmt::Debug>(
    f: &MultiPoly<C>,
) -> Result<LatticePolytope, PolytopeError> {
    if f.is_zero() {
        return Err(PolytopeError::ZeroPolynomial);
    }
    LatticePolytope::new(
        f.nvars(),
        f.support().into_iter().map(|m| m.exponents().to_vec()),
    )
}

/// Newton polytope of a polynomial vector: generated by the union of the
/// component supports (the polytope of the tower encoding of the map,
/// which is basis independent).
pub fn newton_polytope(f: &PolyVector) -> Result<LatticePolytope, PolytopeError> {
    let support = f.support();
    if support.is_empty() {
        return Err(PolytopeError::ZeroPolynomial);
    }
    LatticePolytope::new(
        f.nvars(),
        support.into_iter().map(|m| m.exponents().to_vec()),
    )
}

impl LatticePolytope {
    pub fn new(
        dim: usize,
        points: impl IntoIterator<Item = Vec<u32>>,
    ) -> Result<LatticePolytope, PolytopeError> {
        let mut generators: Vec<Vec<u32>> = Vec::new();
        for p in points {
            if p.len() != dim {
                return Err(PolytopeError::DimensionMismatch {
                    expected: dim,
                    got: p.len(),
                });
            }
            generators.push(p);
        }
        if generators.is_empty() || dim == 0 {
            return Err(PolytopeError::ZeroPolynomial);
        }
        generators.sort();
        generators.dedup();
        Ok(LatticePolytope { dim, generators })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The stored generating points, sorted, origin included only if given.
    pub fn generators(&self) -> &[Vec<u32>] {
        &self.generators
    }

    fn nonzero_generators(&self) -> Vec<&Vec<u32>> {
        self.generators
            .iter()
            .filter(|g| g.iter().any(|&c| c > 0))
            .collect()
    }

    /// First coordinate that is zero in every generator, if any. The
    /// dilation invariant is infinite exactly when this returns `Some`.
    pub fn missing_coordinate(&self) -> Option<usize> {
        (0..self.dim).find(|&i| self.generators.iter().all(|g| g[i] == 0))
    }

    /// Largest coordinate sum over the generators.
    pub fn max_coordinate_sum(&self) -> u64 {
        self.generators
            .iter()
            .map(|g| g.iter().map(|&c| c as u64).sum())
            .max()
            .unwrap_or(0)
    }

    /// Minimal k >= 0 with `v` in k times the polytope, or infinity when
    /// `v` lies outside the cone spanned by the generators.
    pub fn gauge(&self, v: &[u32]) -> Result<ExtRat, PolytopeError> {
        if v.len() != self.dim {
            return Err(PolytopeError::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        let v64: Vec<u64> = v.iter().map(|&c| c as u64).collect();
        Ok(self.gauge_u64(&v64))
    }

    fn gauge_u64(&self, v: &[u64]) -> ExtRat {
        if v.iter().all(|&c| c == 0) {
            return ExtRat::Finite(BigRational::zero());
        }
        let gens = self.nonzero_generators();
        if gens.is_empty() {
            return ExtRat::Infinity;
        }
        let a: Vec<Vec<BigRational>> = (0..self.dim)
            .map(|i| {
                gens.iter()
                    .map(|g| BigRational::from_integer(BigInt::from(g[i])))
                    .collect()
            })
            .collect();
        let b: Vec<BigRational> = v
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        let c = vec![BigRational::from_integer(BigInt::from(1)); gens.len()];
        match solve_min(&a, &b, &c) {
            LpOutcome::Infeasible => ExtRat::Infinity,
            LpOutcome::Optimal { value, .. } => ExtRat::Finite(value),
            LpOutcome::Unbounded => unreachable!("gauge objective is bounded below by zero"),
        }
    }

    /// Coordinate-wise sum of all generators; strictly positive whenever no
    /// coordinate is missing, hence a finite-gauge starting candidate.
    fn generator_sum(&self) -> Vec<u64> {
        let mut sum = vec![0u64; self.dim];
        for g in &self.generators {
            for (s, &c) in sum.iter_mut().zip(g) {
                *s += c as u64;
            }
        }
        sum
    }

    /// Exact dilation invariant via the gauge LP over the bounded candidate
    /// region, with its lexicographically smallest witness.
    pub fn mu(&self) -> MuResult {
        self.mu_by(|v| self.gauge_u64(v))
    }

    /// Dilation invariant computed without the simplex: each candidate's
    /// gauge is found by enumerating generator subsets of size at most
    /// `dim` and solving the square systems exactly (an optimal basic
    /// solution is supported on such a subset). Cross-check only; refuses
    /// instances beyond a small budget.
    pub fn mu_oracle(&self) -> Result<ExtRat, PolytopeError> {
        if self.dim > 4 {
            return Err(PolytopeError::OracleBudget {
                detail: format!("dimension {} exceeds 4", self.dim),
            });
        }
        if self.nonzero_generators().len() > 16 {
            return Err(PolytopeError::OracleBudget {
                detail: format!("{} generators exceed 16", self.nonzero_generators().len()),
            });
        }
        if self.missing_coordinate().is_none() {
            let d = self.max_coordinate_sum();
            let b0 = self
                .oracle_gauge(&self.generator_sum())
                .as_finite()
                .expect("generator sum lies in the cone")
                .clone();
            let budget = BigRational::from_integer(BigInt::from(64));
            if BigRational::from_integer(BigInt::from(d)) * &b0 > budget {
                return Err(PolytopeError::OracleBudget {
                    detail: "search region larger than 64".to_string(),
                });
            }
        }
        Ok(self.mu_by(|v| self.oracle_gauge(v)).mu)
    }

    fn mu_by<F: Fn(&[u64]) -> ExtRat>(&self, gauge: F) -> MuResult {
        if self.missing_coordinate().is_some() {
            return MuResult {
                mu: ExtRat::Infinity,
                witness: None,
            };
        }
        let d = self.max_coordinate_sum();
        debug_assert!(d > 0);
        let sum = self.generator_sum();
        let b0 = match gauge(&sum) {
            ExtRat::Finite(r) => r,
            ExtRat::Infinity => unreachable!("generator sum lies in the cone"),
        };
        let d_rat = BigRational::from_integer(BigInt::from(d));

        let mut best = b0;
        let mut witness: Option<Vec<u32>> = None;
        let mut s = self.dim as u64;
        while BigRational::from_integer(BigInt::from(s)) <= &d_rat * &best {
            let mut v = vec![1u64; self.dim];
            v[self.dim - 1] = s - self.dim as u64 + 1;
            loop {
                if let ExtRat::Finite(g) = gauge(&v) {
                    let v32: Vec<u32> = v.iter().map(|&c| c as u32).collect();
                    match g.cmp(&best) {
                        std::cmp::Ordering::Less => {
                            best = g;
                            witness = Some(v32);
                        }
                        std::cmp::Ordering::Equal => match witness.as_mut() {
                            None => witness = Some(v32),
                            Some(w) => {
                                if v32 < *w {
                                    *w = v32;
                                }
                            }
                        },
                        std::cmp::Ordering::Greater => {}
                    }
                }
                if !next_composition(&mut v) {
                    break;
                }
            }
            s += 1;
        }
        debug_assert!(
            witness.is_some(),
            "the generator sum itself is always enumerated"
        );
        MuResult {
            mu: ExtRat::Finite(best),
            witness,
        }
    }

    /// Gauge by Caratheodory subset enumeration and exact elimination;
    /// independent of the simplex path.
    fn oracle_gauge(&self, v: &[u64]) -> ExtRat {
        if v.iter().all(|&c| c == 0) {
            return ExtRat::Finite(BigRational::zero());
        }
        let gens = self.nonzero_generators();
        let mut best: Option<BigRational> = None;
        let mut subset = Vec::new();
        self.oracle_subsets(&gens, 0, &mut subset, v, &mut best);
        match best {
            Some(b) => ExtRat::Finite(b),
            None => ExtRat::Infinity,
        }
    }

    fn oracle_subsets<'a>(
        &self,
        gens: &[&'a Vec<u32>],
        from: usize,
        subset: &mut Vec<&'a Vec<u32>>,
        v: &[u64],
        best: &mut Option<BigRational>,
    ) {
        if !subset.is_empty() {
            if let Some(lambda) = solve_square_exact(subset, v) {
                if lambda.iter().all(|l| *l >= BigRational::zero()) {
                    let total: BigRational = lambda.iter().sum();
                    if best.as_ref().is_none_or(|b| total < *b) {
                        *best = Some(total);
                    }
                }
            }
        }
        if subset.len() == self.dim {
            return;
        }
        for i in from..gens.len() {
            subset.push(gens[i]);
            self.oracle_subsets(gens, i + 1, subset, v, best);
            subset.pop();
        }
    }

    /// Generator coordinates as CSV: header row `v1,...,vn`, one row per
    /// generating point, in sorted order.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = (1..=self.dim).map(|i| format!("v{i}")).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for g in &self.generators {
            let row: Vec<String> = g.iter().map(|c| c.to_string()).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Advances `v` to the next vector with the same coordinate sum and all
/// entries >= 1, in lexicographic order; false when exhausted.
///
/// The successor increments the rightmost position whose suffix holds more
/// than its minimum, then resets that suffix to all ones with the leftover
/// in the final slot.
fn next_composition(v: &mut [u64]) -> bool {
    let n = v.len();
    if n <= 1 {
        return false;
    }
    let mut suffix_sum = v[n - 1];
    for i in (0..n - 1).rev() {
        let suffix_len = (n - 1 - i) as u64;
        if suffix_sum > suffix_len {
            v[i] += 1;
            for item in v.iter_mut().take(n - 1).skip(i + 1) {
                *item = 1;
            }
            v[n - 1] = suffix_sum - suffix_len;
            return true;
        }
        suffix_sum += v[i];
    }
    false
}

/// Solves `cols * lambda = v` exactly. Returns `None` when the columns are
/// linearly dependent or the system is inconsistent.
fn solve_square_exact(cols: &[&Vec<u32>], v: &[u64]) -> Option<Vec<BigRational>> {
    let nrows = v.len();
    let k = cols.len();
    let mut m: Vec<Vec<BigRational>> = (0..nrows)
        .map(|i| {
            let mut row: Vec<BigRational> = cols
                .iter()
                .map(|c| BigRational::from_integer(BigInt::from(c[i])))
                .collect();
            row.push(BigRational::from_integer(BigInt::from(v[i])));
            row
        })
        .collect();
    let mut pivot_row_of_col = vec![usize::MAX; k];
    let mut row = 0;
    for col in 0..k {
        let pivot = (row..nrows).find(|&r| !m[r][col].is_zero())?; // dependent column: skip subset
        m.swap(row, pivot);
        let p = m[row][col].clone();
        for x in m[row].iter_mut() {
            *x /= &p;
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r != row && !other[col].is_zero() {
                let f = other[col].clone();
                for (x, pv) in other.iter_mut().zip(&pivot_row) {
                    *x -= &f * pv;
                }
            }
        }
        pivot_row_of_col[col] = row;
        row += 1;
    }
    // Any leftover row must be 0 = 0, otherwise inconsistent.
    for leftover in m.iter().skip(row) {
        if !leftover[k].is_zero() {
            return None;
        }
    }
    Some(pivot_row_of_col.iter().map(|&r| m[r][k].clone()).collect())
}

//! Two-phase primal simplex over exact rationals.
//!
//! Solves min c.x subject to A x = b, x >= 0 with b >= 0, on a dense
//! tableau. Pivot selection follows Bland's rule (smallest eligible index
//! for both the entering column and the leaving row), which rules out
//! cycling; with `BigRational` entries there is no roundoff to worry
//! about either. Problem sizes in this crate are tiny (rows = ambient
//! dimension, columns = polytope generators), so no sparsity or
//! factorization tricks are needed.

use num_rational::BigRational;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal {
        value: BigRational,
        solution: Vec<BigRational>,
    },
}

struct Tableau {
    rows: Vec<Vec<BigRational>>, // each row: coefficients then rhs
    basis: Vec<usize>,
    ncols: usize, // structural + artificial columns (rhs excluded)
}

impl Tableau {
    fn rhs(&self, i: usize) -> &BigRational {
        &self.rows[i][self.ncols]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let piv = self.rows[row][col].clone();
        debug_assert!(!piv.is_zero());
        for x in self.rows[row].iter_mut() {
            *x /= &piv;
        }
        for i in 0..self.rows.len() {
            if i == row || self.rows[i][col].is_zero() {
                continue;
            }
            let factor = self.rows[i][col].clone();
            for j in 0..=self.ncols {
                let delta = &factor * &self.rows[row][j];
                self.rows[i][j] -= delta;
            }
        }
        self.basis[row] = col;
    }

    /// Runs the simplex loop for the given cost vector, entering only
    /// columns with `allowed[col]`. Returns false on unboundedness.
    fn optimize(&mut self, cost: &[BigRational], allowed: &[bool]) -> bool {
        loop {
            // Reduced costs r_j = c_j - y.A_j with y_i = c_{basis(i)}.
            let mut entering = None;
            for j in 0..self.ncols {
                if !allowed[j] || self.basis.contains(&j) {
                    continue;
                }
                let mut r = cost[j].clone();
                for (i, row) in self.rows.iter().enumerate() {
                    if !cost[self.basis[i]].is_zero() {
                        r -= &cost[self.basis[i]] * &row[j];
                    }
                }
                if r < BigRational::zero() {
                    entering = Some(j);
                    break; // Bland: smallest improving index
                }
            }
            let Some(col) = entering else { return true };

            let mut leaving: Option<(usize, BigRational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][col];
                if *a <= BigRational::zero() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leaving {
                    None => true,
                    Some((best_i, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*best_i])
                    }
                };
                if better {
                    leaving = Some((i, ratio));
                }
            }
            let Some((row, _)) = leaving else {
                return false;
            };
            self.pivot(row, col);
        }
    }

    fn objective(&self, cost: &[BigRational]) -> BigRational {
        let mut v = BigRational::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            v += &cost[b] * self.rhs(i);
        }
        v
    }
}

/// Minimizes `c.x` subject to `a x = b`, `x >= 0`. Every entry of `b` must
/// be nonnegative. `a` is row-major with rows of length `c.len()`.
pub(crate) fn solve_min(a: &[Vec<BigRational>], b: &[BigRational], c: &[BigRational]) -> LpOutcome {
    let nrows = a.len();
    let nvars = c.len();
    debug_assert!(b.iter().all(|x| *x >= BigRational::zero()));

    let ncols = nvars + nrows;
    let mut rows = Vec::with_capacity(nrows);
    for i in 0..nrows {
        debug_assert_eq!(a[i].len(), nvars);
        let mut row = Vec::with_capacity(ncols + 1);
        row.extend(a[i].iter().cloned());
        for k in 0..nrows {
            row.push(if k == i {
                BigRational::from_integer(1.into())
            } else {
                BigRational::zero()
            });
        }
        row.push(b[i].clone());
        rows.push(row);
    }
    let basis = (nvars..nvars + nrows).collect();
    let mut t = Tableau { rows, basis, ncols };

    // Phase 1: minimize the sum of artificial variables.
    let mut phase1_cost = vec![BigRational::zero(); ncols];
    for item in phase1_cost.iter_mut().skip(nvars) {
        *item = BigRational::from_integer(1.into());
    }
    let allowed = vec![true; ncols];
    let ok = t.optimize(&phase1_cost, &allowed);
    debug_assert!(ok, "phase 1 is always bounded below by zero");
    if !t.objective(&phase1_cost).is_zero() {
        return LpOutcome::Infeasible;
    }

    // Drive remaining artificials out of the basis; rows where that is
    // impossible are redundant (all structural entries zero) and dropped.
    let mut i = 0;
    while i < t.basis.len() {
        if t.basis[i] >= nvars {
            if let Some(col) = (0..nvars).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, col);
            } else {
                t.rows.remove(i);
                t.basis.remove(i);
                continue;
            }
        }
        i += 1;
    }

    // Phase 2 on the structural columns only.
    let mut phase2_cost = vec![BigRational::zero(); ncols];
    phase2_cost[..nvars].clone_from_slice(c);
    let mut allowed = vec![false; ncols];
    for item in allowed.iter_mut().take(nvars) {
        *item = true;
    }
    if !t.optimize(&phase2_cost, &allowed) {
        return LpOutcome::Unbounded;
    }

    let mut solution = vec![BigRational::zero(); nvars];
    for (i, &bv) in t.basis.iter().enumerate() {
        if bv < nvars {
            solution[bv] = t.rhs(i).clone();
        }
    }
    let value = t.objective(&phase2_cost);
    LpOutcome::Optimal { value, solution }
}

//! Scalar and matrix numerical kernels shared by the solver modules:
//! dense linear solves, spectral radius by power iteration, derivative-free
//! scalar maximization, and bracketed root finding.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Tolerances used across the solvers.
///
/// `solve_tol` is a relative residual bound for linear solves, `opt_tol` an
/// absolute argument tolerance for scalar optimizers, `root_tol` an absolute
/// bracket tolerance for root finding, and `tie_tol` the utility-equality
/// tolerance used when breaking ties.
#[derive(Debug, Clone, PartialEq)]
pub struct Tolerances {
    pub solve_tol: f64,
    pub opt_tol: f64,
    pub root_tol: f64,
    pub tie_tol: f64,
    pub max_iter: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            solve_tol: 1e-12,
            opt_tol: 1e-6,
            root_tol: 1e-8,
            tie_tol: 1e-9,
            max_iter: 10_000,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        let all_pos = self.solve_tol > 0.0
            && self.opt_tol > 0.0
            && self.root_tol > 0.0
            && self.tie_tol > 0.0;
        if !all_pos {
            return Err(Error::invalid("tolerances", "all tolerances must be strictly positive"));
        }
        if self.max_iter < 1 {
            return Err(Error::invalid("tolerances", "max_iter must be at least 1"));
        }
        Ok(())
    }
}

fn inf_norm(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0f64, |acc, v| acc.max(v.abs()))
}

/// Solve `M z = rhs` by LU factorization with partial pivoting.
///
/// The relative residual `|M z - rhs|_inf / max(1, |rhs|_inf)` is checked
/// against `solve_tol`; one step of iterative refinement is applied if the
/// first solve misses it.
pub fn solve_linear(m: &DMatrix<f64>, rhs: &DMatrix<f64>, tol: &Tolerances) -> Result<DMatrix<f64>> {
    assert_eq!(m.nrows(), m.ncols(), "coefficient matrix must be square");
    assert_eq!(m.nrows(), rhs.nrows(), "rhs row count must match the matrix");
    let lu = m.clone().lu();
    let mut z = lu.solve(rhs).ok_or(Error::SingularMatrix)?;
    if !z.iter().all(|v| v.is_finite()) {
        return Err(Error::SingularMatrix);
    }
    let scale = inf_norm(rhs).max(1.0);
    let residual = rhs - m * &z;
    if inf_norm(&residual) / scale > tol.solve_tol {
        let correction = lu.solve(&residual).ok_or(Error::SingularMatrix)?;
        z += correction;
        let residual = rhs - m * &z;
        if inf_norm(&residual) / scale > tol.solve_tol || !z.iter().all(|v| v.is_finite()) {
            return Err(Error::SingularMatrix);
        }
    }
    Ok(z)
}

/// Vector convenience wrapper around [`solve_linear`].
pub fn solve_linear_vec(m: &DMatrix<f64>, rhs: &DVector<f64>, tol: &Tolerances) -> Result<DVector<f64>> {
    let z = solve_linear(m, &DMatrix::from_column_slice(rhs.len(), 1, rhs.as_slice()), tol)?;
    Ok(DVector::from_column_slice(z.column(0).as_slice()))
}

/// Spectral radius of a non-negative matrix by power iteration.
///
/// A positive diagonal shift makes the iteration matrix primitive-like so the
/// iteration converges even for periodic structures (stars, cycles); the shift
/// is subtracted from the converged Rayleigh quotient.
pub fn spectral_radius(w: &DMatrix<f64>, tol: &Tolerances) -> Result<f64> {
    assert_eq!(w.nrows(), w.ncols(), "matrix must be square");
    let n = w.nrows();
    if n == 0 {
        return Ok(0.0);
    }
    debug_assert!(w.iter().all(|v| *v >= 0.0), "entries must be non-negative");
    let max_row_sum = (0..n)
        .map(|i| w.row(i).iter().sum::<f64>())
        .fold(0.0f64, f64::max);
    if max_row_sum == 0.0 {
        // zero matrix or strictly lower/upper structure with zero row sums
        if w.iter().all(|v| *v == 0.0) {
            return Ok(0.0);
        }
    }
    let shift = 0.5 * max_row_sum + 1e-6;
    let shifted = w + DMatrix::identity(n, n) * shift;

    let mut v = DVector::repeat(n, 1.0 / (n as f64).sqrt());
    let mut lambda = 0.0f64;
    let mut gap = f64::INFINITY;
    for _ in 0..tol.max_iter {
        let mut next = &shifted * &v;
        let norm = next.norm();
        if norm == 0.0 {
            return Ok(0.0);
        }
        next /= norm;
        // Rayleigh quotient of the shifted matrix
        let rq = next.dot(&(&shifted * &next)) / next.dot(&next);
        gap = (rq - lambda).abs();
        lambda = rq;
        let drift = (&next - &v).norm().min((&next + &v).norm());
        v = next;
        if gap <= 1e-14 * lambda.abs().max(1.0) && drift <= 1e-12 {
            return Ok((lambda - shift).max(0.0));
        }
    }
    Err(Error::NoConvergence { max_iter: tol.max_iter, best: (lambda - shift).max(0.0), gap })
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Maximize `g` on `[lo, hi]` by a uniform grid scan followed by golden-section
/// refinement of the bracketing cell.
///
/// Ties within `tie_tol` resolve to the largest argument, so a constant
/// function returns `hi`.
pub fn maximize_scalar(
    g: impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    grid_n: usize,
    tol: &Tolerances,
) -> (f64, f64) {
    assert!(lo < hi, "lo must be strictly below hi");
    let grid_n = grid_n.max(1);
    let h = (hi - lo) / grid_n as f64;
    let xs: Vec<f64> = (0..=grid_n)
        .map(|i| if i == grid_n { hi } else { lo + h * i as f64 })
        .collect();
    let vals: Vec<f64> = xs.iter().map(|&x| g(x)).collect();
    let best_val = vals.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
    // largest argument within tie_tol of the best
    let mut idx = 0;
    for (i, &v) in vals.iter().enumerate() {
        if v >= best_val - tol.tie_tol {
            idx = i;
        }
    }

    // golden-section inside the cells adjacent to the winning grid point
    let mut a = if idx == 0 { lo } else { xs[idx - 1] };
    let mut b = if idx == grid_n { hi } else { xs[idx + 1] };
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = g(x1);
    let mut f2 = g(x2);
    let mut iters = 0;
    while b - a > tol.opt_tol && iters < tol.max_iter {
        if f1 > f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = g(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = g(x2);
        }
        iters += 1;
    }

    // final tie-aware selection over the refined bracket and the grid winner
    let candidates = [xs[idx], x1, x2, a, b];
    let cand_vals = [vals[idx], f1, f2, g(a), g(b)];
    let top = cand_vals.iter().fold(f64::NEG_INFINITY, |acc, &v| acc.max(v));
    let mut best_x = candidates[0];
    let mut best_v = cand_vals[0];
    for (&x, &v) in candidates.iter().zip(cand_vals.iter()) {
        if v >= top - tol.tie_tol && x > best_x {
            best_x = x;
            best_v = v;
        }
    }
    (best_x, best_v)
}

/// Outcome of a bracketed root search on a decreasing function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RootVerdict {
    /// `g` crosses zero inside the bracket at the reported argument.
    Root(f64),
    /// `g(lo) <= 0`: the root (if any) lies below the bracket.
    BelowRange,
    /// `g(hi) > 0`: the root lies above the bracket.
    AboveRange,
}

/// Find the zero of a monotone-decreasing function on `[lo, hi]` by bisection.
pub fn find_root_decreasing(
    g: impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    tol: &Tolerances,
) -> Result<RootVerdict> {
    assert!(lo < hi, "lo must be strictly below hi");
    let g_lo = g(lo);
    let g_hi = g(hi);
    if g_lo <= 0.0 && g_hi > 0.0 {
        return Err(Error::NotDecreasing { g_lo, g_hi });
    }
    if g_lo <= 0.0 {
        return Ok(RootVerdict::BelowRange);
    }
    if g_hi > 0.0 {
        return Ok(RootVerdict::AboveRange);
    }
    // invariant: g(a) > 0 >= g(b)
    let (mut a, mut b) = (lo, hi);
    let mut iters = 0;
    while b - a > tol.root_tol && iters < tol.max_iter {
        let mid = 0.5 * (a + b);
        if g(mid) > 0.0 {
            a = mid;
        } else {
            b = mid;
        }
        iters += 1;
    }
    Ok(RootVerdict::Root(0.5 * (a + b)))
}

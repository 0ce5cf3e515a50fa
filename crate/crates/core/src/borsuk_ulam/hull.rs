//! Exact intersection test for convex hulls of lattice point sets.
//!
//! `conv(S) ∩ conv(R) ≠ ∅` iff the system
//! `Σ λ_i s_i = Σ μ_j r_j, Σ λ_i = 1, Σ μ_j = 1, λ, μ ≥ 0`
//! is feasible. Feasibility is decided by phase one of the simplex method
//! over exact rationals with Bland's rule, so the answer is exact and the
//! pivoting terminates.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::Point;

/// Whether the convex hulls of `sigma` and `rho` meet. Empty sets have empty hulls.
pub fn hulls_intersect(sigma: &[Point], rho: &[Point]) -> Result<bool> {
    let Some(first) = sigma.first().or_else(|| rho.first()) else {
        return Ok(false);
    };
    let d = first.dim();
    for p in sigma.iter().chain(rho) {
        if p.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: p.dim(),
            });
        }
    }
    if sigma.is_empty() || rho.is_empty() {
        return Ok(false);
    }
    Ok(intersect_unchecked(sigma, rho, d))
}

pub(crate) fn intersect_unchecked(sigma: &[Point], rho: &[Point], d: usize) -> bool {
    // bounding boxes
    for t in 0..d {
        let (slo, shi) = extent(sigma, t);
        let (rlo, rhi) = extent(rho, t);
        if shi < rlo || rhi < slo {
            return false;
        }
    }
    // one dimension: overlapping extents are overlapping intervals
    if d == 1 || sigma.iter().any(|s| rho.contains(s)) {
        return true;
    }
    lp_feasible(sigma, rho, d)
}

fn extent(points: &[Point], t: usize) -> (i64, i64) {
    points.iter().fold((i64::MAX, i64::MIN), |(lo, hi), p| {
        (lo.min(p.coord(t)), hi.max(p.coord(t)))
    })
}

fn lp_feasible(sigma: &[Point], rho: &[Point], d: usize) -> bool {
    let structural = sigma.len() + rho.len();
    let rows = d + 2;
    let cols = structural + rows;
    let rhs = cols;
    let int = |v: i64| BigRational::from_integer(BigInt::from(v));

    let mut tab = vec![vec![BigRational::zero(); cols + 1]; rows];
    // coordinate rows have right-hand side zero, so no sign flips are needed
    for (t, row) in tab.iter_mut().take(d).enumerate() {
        for (i, s) in sigma.iter().enumerate() {
            row[i] = int(s.coord(t));
        }
        for (j, r) in rho.iter().enumerate() {
            row[sigma.len() + j] = int(-r.coord(t));
        }
    }
    for entry in &mut tab[d][..sigma.len()] {
        *entry = BigRational::one();
    }
    for entry in &mut tab[d + 1][sigma.len()..structural] {
        *entry = BigRational::one();
    }
    tab[d][rhs] = BigRational::one();
    tab[d + 1][rhs] = BigRational::one();
    for (r, row) in tab.iter_mut().enumerate() {
        row[structural + r] = BigRational::one();
    }
    let mut basis: Vec<usize> = (structural..cols).collect();

    // reduced costs of "minimize the sum of artificials"; last entry is minus the objective
    let mut cost = vec![BigRational::zero(); cols + 1];
    for c in (0..structural).chain([rhs]) {
        cost[c] = -tab.iter().map(|row| row[c].clone()).sum::<BigRational>();
    }

    while let Some(enter) = (0..cols).find(|&c| cost[c].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for r in 0..rows {
            if tab[r][enter].is_positive() {
                let ratio = &tab[r][rhs] / &tab[r][enter];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        // the phase-one objective is bounded below by zero
        let (pr, _) = leave.expect("phase one is bounded");
        pivot(&mut tab, &mut cost, pr, enter);
        basis[pr] = enter;
    }
    cost[rhs].is_zero()
}

fn pivot(tab: &mut [Vec<BigRational>], cost: &mut [BigRational], pr: usize, pc: usize) {
    let p = tab[pr][pc].clone();
    for v in tab[pr].iter_mut() {
        *v /= &p;
    }
    let pivot_row = tab[pr].clone();
    let eliminate = |row: &mut [BigRational]| {
        let factor = row[pc].clone();
        if !factor.is_zero() {
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
        }
    };
    for (r, row) in tab.iter_mut().enumerate() {
        if r != pr {
            eliminate(row);
        }
    }
    eliminate(cost);
}

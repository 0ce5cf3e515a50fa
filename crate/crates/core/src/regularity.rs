//! Finite-window regularity checks for `c_k` on `Z^n`.
//!
//! An adjacency is regular when, for any two simplices `σ`, `ρ` whose convex
//! hulls meet, some vertex of `σ` is adjacent or equal to every vertex of `ρ`.
//! A `c_k`-clique has coordinate spread at most 1, so it sits in a unit box.
//! Up to translation `σ` lies in the unit box at the window origin, and any `ρ`
//! whose hull can meet it lies in a unit box at an offset in `{-1,0,1}^n`.
//! Checking those pairs decides regularity on all of `Z^n`.

use std::collections::BTreeSet;
use std::fmt;
use std::thread;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::borsuk_ulam::hulls_intersect;
use crate::error::{Error, Result};
use crate::lattice::{Adjacency, Point};

/// Largest supported dimension.
pub const MAX_DIMENSION: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "regular-in-window")]
    RegularInWindow,
    #[serde(rename = "violation")]
    Violation,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::RegularInWindow => "regular-in-window",
            Verdict::Violation => "violation",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationPair {
    pub sigma: Vec<Point>,
    pub rho: Vec<Point>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityStats {
    /// Cliques in the origin unit box.
    pub sigma_cliques: usize,
    /// Distinct cliques over all offset boxes.
    pub rho_cliques: usize,
    pub pairs_examined: u64,
    /// Pairs that needed the exact hull test (bounding boxes overlap and the
    /// vertex condition fails).
    pub hull_tests: u64,
    pub violations: u64,
    #[serde(skip)]
    pub runtime: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityFinding {
    pub dimension: usize,
    pub k: usize,
    pub origin: Point,
    pub verdict: Verdict,
    /// The first violation in enumeration order.
    pub violation: Option<ViolationPair>,
    pub statistics: RegularityStats,
}

/// Nonempty `c_k`-cliques of `{0,1}^n` as vertex bitmasks, each list sorted.
fn unit_box_cliques(n: usize, k: usize) -> Vec<Vec<u32>> {
    let corners = 1u32 << n;
    let ok = |a: u32, b: u32| (a ^ b).count_ones() as usize <= k;
    let mut out: Vec<Vec<u32>> = (1u64..(1u64 << corners))
        .map(|mask| (0..corners).filter(|&v| mask >> v & 1 == 1).collect::<Vec<u32>>())
        .filter(|c| c.iter().enumerate().all(|(i, &a)| c[i + 1..].iter().all(|&b| ok(a, b))))
        .collect();
    out.sort();
    out
}

fn corner(base: &[i64], v: u32) -> Point {
    Point::new(base.iter().enumerate().map(|(t, &b)| b + i64::from(v >> t & 1)))
}

fn offsets(n: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|o| {
                (-1..=1).map(move |d| {
                    let mut o = o.clone();
                    o.push(d);
                    o
                })
            })
            .collect();
    }
    out
}

fn bbox(points: &[Point]) -> Vec<(i64, i64)> {
    (0..points[0].dim())
        .map(|t| {
            let it = points.iter().map(|p| p.coord(t));
            (it.clone().min().unwrap(), it.max().unwrap())
        })
        .collect()
}

fn boxes_overlap(a: &[(i64, i64)], b: &[(i64, i64)]) -> bool {
    a.iter().zip(b).all(|(x, y)| x.0 <= y.1 && y.0 <= x.1)
}

fn vertex_condition(sigma: &[Point], rho: &[Point], adjacency: &Adjacency) -> bool {
    sigma
        .iter()
        .any(|x| rho.iter().all(|y| adjacency.adjacent_or_equal(x, y).unwrap()))
}

/// Rechecks a violation from scratch: both sets are `c_k`-cliques, their hulls
/// meet, and no vertex of `sigma` is adjacent or equal to all of `rho`.
pub fn is_violation(sigma: &[Point], rho: &[Point], k: usize) -> Result<bool> {
    let n = sigma
        .first()
        .or(rho.first())
        .map(Point::dim)
        .ok_or_else(|| Error::invalid("empty simplex"))?;
    let adjacency = Adjacency::ck(n, k)?;
    for set in [sigma, rho] {
        for (i, a) in set.iter().enumerate() {
            for b in &set[i + 1..] {
                if !adjacency.adjacent(a, b)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(!sigma.is_empty()
        && !rho.is_empty()
        && hulls_intersect(sigma, rho)?
        && !sigma.iter().any(|x| {
            rho.iter()
                .all(|y| x == y || adjacency.adjacent(x, y).unwrap())
        }))
}

struct OffsetResult {
    pairs: u64,
    hull_tests: u64,
    violations: u64,
    /// (σ index, ρ index within this offset) of the first violation.
    first: Option<(usize, usize)>,
}

pub fn check_regularity(n: usize, k: usize) -> Result<RegularityFinding> {
    check_regularity_at(n, k, &Point::new(vec![0; n]))
}

/// Runs the window check with `σ` in the unit box at `origin`.
pub fn check_regularity_at(n: usize, k: usize, origin: &Point) -> Result<RegularityFinding> {
    let started = Instant::now();
    if n == 0 || k == 0 || k > n {
        return Err(Error::invalid(format!("need 1 <= k <= n, got n = {n}, k = {k}")));
    }
    if n > MAX_DIMENSION {
        return Err(Error::Unsupported(format!(
            "regularity checks in dimension {n} (at most {MAX_DIMENSION})"
        )));
    }
    if origin.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: origin.dim(),
        });
    }
    let adjacency = Adjacency::ck(n, k)?;
    let masks = unit_box_cliques(n, k);
    let base = origin.coords();
    let sigmas: Vec<Vec<Point>> = masks
        .iter()
        .map(|c| c.iter().map(|&v| corner(base, v)).collect())
        .collect();
    let sigma_boxes: Vec<_> = sigmas.iter().map(|s| bbox(s)).collect();

    // Each ρ is owned by the least offset whose box contains it.
    let offsets = offsets(n);
    let rho_lists: Vec<Vec<Vec<Point>>> = offsets
        .iter()
        .map(|o| {
            let b: Vec<i64> = base.iter().zip(o).map(|(x, d)| x + d).collect();
            masks
                .iter()
                .map(|c| c.iter().map(|&v| corner(&b, v)).collect::<Vec<Point>>())
                .filter(|rho| {
                    (0..n).all(|t| {
                        let hi = rho.iter().map(|p| p.coord(t)).max().unwrap() - base[t];
                        (hi - 1).max(-1) == o[t]
                    })
                })
                .collect()
        })
        .collect();

    let results: Vec<OffsetResult> = thread::scope(|scope| {
        let handles: Vec<_> = rho_lists
            .iter()
            .map(|rhos| {
                let (sigmas, sigma_boxes, adjacency) = (&sigmas, &sigma_boxes, &adjacency);
                scope.spawn(move || {
                    let rho_boxes: Vec<_> = rhos.iter().map(|r| bbox(r)).collect();
                    let mut r = OffsetResult {
                        pairs: 0,
                        hull_tests: 0,
                        violations: 0,
                        first: None,
                    };
                    for (si, sigma) in sigmas.iter().enumerate() {
                        for (ri, rho) in rhos.iter().enumerate() {
                            r.pairs += 1;
                            if !boxes_overlap(&sigma_boxes[si], &rho_boxes[ri])
                                || vertex_condition(sigma, rho, adjacency)
                            {
                                continue;
                            }
                            r.hull_tests += 1;
                            if hulls_intersect(sigma, rho).unwrap() {
                                r.violations += 1;
                                r.first.get_or_insert((si, ri));
                            }
                        }
                    }
                    r
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });

    let first = results
        .iter()
        .enumerate()
        .filter_map(|(oi, r)| r.first.map(|(si, ri)| (si, oi, ri)))
        .min();
    let violation = match first {
        Some((si, oi, ri)) => {
            let pair = ViolationPair {
                sigma: sigmas[si].clone(),
                rho: rho_lists[oi][ri].clone(),
            };
            if !is_violation(&pair.sigma, &pair.rho, k)? {
                return Err(Error::TheoremViolation(format!(
                    "violation {:?} / {:?} failed re-verification",
                    pair.sigma, pair.rho
                )));
            }
            Some(pair)
        }
        None => None,
    };
    let distinct: BTreeSet<&Vec<Point>> = rho_lists.iter().flatten().collect();
    Ok(RegularityFinding {
        dimension: n,
        k,
        origin: origin.clone(),
        verdict: if violation.is_some() {
            Verdict::Violation
        } else {
            Verdict::RegularInWindow
        },
        violation,
        statistics: RegularityStats {
            sigma_cliques: sigmas.len(),
            rho_cliques: distinct.len(),
            pairs_examined: results.iter().map(|r| r.pairs).sum(),
            hull_tests: results.iter().map(|r| r.hull_tests).sum(),
            violations: results.iter().map(|r| r.violations).sum(),
            runtime: started.elapsed(),
        },
    })
}

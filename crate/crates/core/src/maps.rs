//! Functions between digital images: continuity, Lipschitz constants and the
//! arithmetic of Lipschitz constants.
//!
//! A function has Lipschitz constant `m` when adjacent domain points map to
//! values at codomain path distance at most `m`. Codomain distance is measured
//! in the whole codomain space (all of `Z^d`), not in the value set.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{Adjacency, DigitalImage, Point};

/// A total function from a digital image into `Z^d` with a codomain adjacency.
#[derive(Debug, Clone)]
pub struct GridFunction {
    domain: Arc<DigitalImage>,
    codomain: Adjacency,
    values: Vec<Point>,
}

impl GridFunction {
    /// `values[i]` is the image of `domain.point(i)`.
    pub fn new(domain: Arc<DigitalImage>, codomain: Adjacency, values: Vec<Point>) -> Result<Self> {
        if values.len() != domain.len() {
            return Err(Error::invalid(format!(
                "{} values for a domain of {} points",
                values.len(),
                domain.len()
            )));
        }
        for v in &values {
            codomain.check_point(v)?;
        }
        Ok(GridFunction {
            domain,
            codomain,
            values,
        })
    }

    pub fn from_fn(
        domain: Arc<DigitalImage>,
        codomain: Adjacency,
        f: impl Fn(&Point) -> Point,
    ) -> Result<Self> {
        let values = domain.points().iter().map(f).collect();
        GridFunction::new(domain, codomain, values)
    }

    pub fn from_map(
        domain: Arc<DigitalImage>,
        codomain: Adjacency,
        map: &BTreeMap<Point, Point>,
    ) -> Result<Self> {
        let values = domain
            .points()
            .iter()
            .map(|p| {
                map.get(p)
                    .cloned()
                    .ok_or_else(|| Error::invalid(format!("no value given for {p}")))
            })
            .collect::<Result<Vec<_>>>()?;
        GridFunction::new(domain, codomain, values)
    }

    /// An integer-valued function into `(Z, c_1)`.
    pub fn integer(domain: Arc<DigitalImage>, f: impl Fn(&Point) -> i64) -> Self {
        let values = domain.points().iter().map(|p| Point::scalar(f(p))).collect();
        GridFunction {
            domain,
            codomain: Adjacency::c1(1),
            values,
        }
    }

    /// Integer values listed in domain point order.
    pub fn integer_values(domain: Arc<DigitalImage>, values: &[i64]) -> Result<Self> {
        GridFunction::new(
            domain,
            Adjacency::c1(1),
            values.iter().copied().map(Point::scalar).collect(),
        )
    }

    pub fn domain(&self) -> &Arc<DigitalImage> {
        &self.domain
    }

    pub fn codomain(&self) -> &Adjacency {
        &self.codomain
    }

    pub fn codomain_dim(&self) -> Option<usize> {
        self.values
            .first()
            .map(Point::dim)
            .or_else(|| self.codomain.dim())
    }

    pub fn values(&self) -> &[Point] {
        &self.values
    }

    pub fn value_at(&self, i: usize) -> &Point {
        &self.values[i]
    }

    pub fn value(&self, p: &Point) -> Result<&Point> {
        Ok(&self.values[self.domain.require(p)?])
    }

    /// The integer value at index `i`; only meaningful when `d = 1`.
    pub fn scalar_at(&self, i: usize) -> i64 {
        self.values[i].coord(0)
    }

    pub(crate) fn require_scalar(&self) -> Result<()> {
        match self.codomain_dim() {
            Some(1) | None => Ok(()),
            Some(d) => Err(Error::DimensionMismatch {
                expected: 1,
                found: d,
            }),
        }
    }

    /// Same values, domain points re-read under another adjacency.
    pub fn with_domain_adjacency(&self, adjacency: Adjacency) -> Result<Self> {
        Ok(GridFunction {
            domain: Arc::new(self.domain.with_adjacency(adjacency)?),
            codomain: self.codomain.clone(),
            values: self.values.clone(),
        })
    }

    /// Same values, measured under another codomain adjacency.
    pub fn with_codomain(&self, codomain: Adjacency) -> Result<Self> {
        GridFunction::new(self.domain.clone(), codomain, self.values.clone())
    }

    /// True iff every adjacent pair maps to equal or adjacent values.
    pub fn is_continuous(&self) -> bool {
        self.discontinuity().is_none()
    }

    /// The lexicographically least adjacent pair whose values are neither
    /// equal nor adjacent.
    pub fn discontinuity(&self) -> Option<(Point, Point)> {
        self.domain
            .adjacent_pairs()
            .find(|&(i, j)| {
                let (a, b) = (&self.values[i], &self.values[j]);
                a != b && !self.codomain.adjacent_unchecked(a, b)
            })
            .map(|(i, j)| (self.domain.point(i).clone(), self.domain.point(j).clone()))
    }

    /// The least Lipschitz constant together with the lexicographically least
    /// adjacent pair realizing it.
    pub fn min_lipschitz(&self) -> Result<LipschitzReport> {
        let mut best: Option<LipschitzWitness> = None;
        for (i, j) in self.domain.adjacent_pairs() {
            let (a, b) = (self.domain.point(i), self.domain.point(j));
            let d = self
                .codomain
                .distance_unchecked(&self.values[i], &self.values[j])
                .ok_or_else(|| Error::DisconnectedCodomain {
                    a: a.clone(),
                    b: b.clone(),
                })?;
            if best.as_ref().is_none_or(|w| d > w.distance) {
                best = Some(LipschitzWitness {
                    a: a.clone(),
                    b: b.clone(),
                    distance: d,
                });
            }
        }
        Ok(LipschitzReport {
            constant: best.as_ref().map_or(0, |w| w.distance),
            witness: best,
        })
    }

    /// Whether `m` is a Lipschitz constant of this function.
    pub fn has_lipschitz(&self, m: u64) -> Result<bool> {
        Ok(self.min_lipschitz()?.constant <= m)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LipschitzWitness {
    pub a: Point,
    pub b: Point,
    pub distance: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LipschitzReport {
    pub constant: u64,
    /// `None` only when the domain has no adjacent pairs.
    pub witness: Option<LipschitzWitness>,
}

fn same_domain(f: &GridFunction, g: &GridFunction) -> bool {
    Arc::ptr_eq(&f.domain, &g.domain) || f.domain == g.domain
}

/// `x ↦ c1·f(x) + c2·g(x)` for integer-valued `f` and `g` on one domain.
pub fn pointwise_combine(f: &GridFunction, g: &GridFunction, c1: i64, c2: i64) -> Result<GridFunction> {
    if !same_domain(f, g) {
        return Err(Error::invalid("functions have different domains"));
    }
    f.require_scalar()?;
    g.require_scalar()?;
    let values = (0..f.domain.len())
        .map(|i| Point::scalar(c1 * f.scalar_at(i) + c2 * g.scalar_at(i)))
        .collect();
    GridFunction::new(f.domain.clone(), Adjacency::c1(1), values)
}

/// `f ∘ g`. The values of `g` must lie in the domain of `f`, and the domain
/// of `f` must carry the codomain adjacency of `g`.
pub fn compose(g: &GridFunction, f: &GridFunction) -> Result<GridFunction> {
    if f.domain.adjacency() != g.codomain() {
        return Err(Error::invalid(format!(
            "outer domain adjacency {} differs from inner codomain adjacency {}",
            f.domain.adjacency(),
            g.codomain()
        )));
    }
    let values = g
        .values
        .iter()
        .map(|y| {
            f.domain
                .index_of(y)
                .map(|k| f.values[k].clone())
                .ok_or_else(|| Error::invalid(format!("value {y} is outside the outer domain")))
        })
        .collect::<Result<Vec<_>>>()?;
    GridFunction::new(g.domain.clone(), f.codomain.clone(), values)
}

/// Checks that "Lipschitz constant `m`" and "continuous into `λ^m`" agree
/// for `f`. Always true for a correct implementation.
pub fn power_continuity_equivalent(f: &GridFunction, m: u32) -> Result<bool> {
    let lipschitz = match f.has_lipschitz(u64::from(m)) {
        Ok(b) => b,
        Err(Error::DisconnectedCodomain { .. }) => false,
        Err(e) => return Err(e),
    };
    let continuous = f.with_codomain(f.codomain.clone().power(m)?)?.is_continuous();
    Ok(lipschitz == continuous)
}

//! Free involutions: cycles with the half-turn, box boundaries with the
//! central reflection, and validation of arbitrary involutions.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{Adjacency, DigitalImage, ExplicitGraph, Point};

/// The cycle `C_n` on points `c_i = (i)`, `c_i ↔ c_j` iff `|i - j| ≡ 1 (mod n)`.
#[derive(Debug, Clone)]
pub struct Cycle {
    size: usize,
    image: Arc<DigitalImage>,
}

impl Cycle {
    pub fn new(size: usize) -> Result<Self> {
        if size < 4 {
            return Err(Error::invalid(format!("cycle size must be at least 4, got {size}")));
        }
        let n = size as i64;
        let vertices: Vec<Point> = (0..n).map(Point::scalar).collect();
        let edges = (0..n).map(|i| (Point::scalar(i), Point::scalar((i + 1) % n)));
        let graph = ExplicitGraph::new(vertices.iter().cloned(), edges)?;
        let image = DigitalImage::new(vertices, Adjacency::explicit(graph))?;
        Ok(Cycle {
            size,
            image: Arc::new(image),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn image(&self) -> &Arc<DigitalImage> {
        &self.image
    }

    /// `c_i`, index taken mod `n`.
    pub fn point(&self, i: usize) -> Point {
        Point::scalar((i % self.size) as i64)
    }
}

/// `c_i ↦ c_{i + n/2}`. Only an involution for even `n`.
pub fn cycle_antipode(cycle: &Cycle) -> Result<Involution> {
    let n = cycle.size();
    if n % 2 == 1 {
        // τ(τ(c_0)) = c_{2⌊n/2⌋} = c_{n-1}
        return Err(Error::NotAnInvolution(format!(
            "on C_{n} the half-turn sends c_0 to c_{} after two steps",
            n - 1
        )));
    }
    let half = n / 2;
    let map = (0..n).map(|i| (cycle.point(i), cycle.point(i + half))).collect();
    Ok(Involution::new(cycle.image().clone(), map))
}

/// `[a_1,b_1] × … × [a_n,b_n]` with `a_i < b_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NBox {
    bounds: Vec<(i64, i64)>,
}

impl NBox {
    pub fn new(bounds: Vec<(i64, i64)>) -> Result<Self> {
        if bounds.is_empty() {
            return Err(Error::invalid("a box needs at least one dimension"));
        }
        if let Some((i, (a, b))) = bounds.iter().enumerate().find(|(_, (a, b))| a >= b) {
            return Err(Error::invalid(format!(
                "box bounds must satisfy a < b, coordinate {i} has [{a},{b}]"
            )));
        }
        Ok(NBox { bounds })
    }

    /// `[lo, hi]^n`.
    pub fn cube(dim: usize, lo: i64, hi: i64) -> Result<Self> {
        NBox::new(vec![(lo, hi); dim])
    }

    pub fn bounds(&self) -> &[(i64, i64)] {
        &self.bounds
    }

    pub fn dim(&self) -> usize {
        self.bounds.len()
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.dim() == self.dim()
            && p.coords()
                .iter()
                .zip(&self.bounds)
                .all(|(&x, &(a, b))| a <= x && x <= b)
    }

    pub fn on_boundary(&self, p: &Point) -> bool {
        self.contains(p)
            && p.coords()
                .iter()
                .zip(&self.bounds)
                .any(|(&x, &(a, b))| x == a || x == b)
    }

    /// All points of the box in lexicographic order.
    pub fn points(&self) -> Vec<Point> {
        let mut out = vec![Point::new(Vec::new())];
        for &(a, b) in &self.bounds {
            out = out
                .into_iter()
                .flat_map(|p| (a..=b).map(move |x| Point::new(p.coords().iter().copied().chain([x]))))
                .collect();
        }
        out
    }

    pub fn boundary_points(&self) -> Vec<Point> {
        self.points()
            .into_iter()
            .filter(|p| self.on_boundary(p))
            .collect()
    }

    /// `x ↦ (a_1 + b_1 - x_1, …, a_n + b_n - x_n)`.
    pub fn reflect(&self, p: &Point) -> Point {
        Point::new(
            p.coords()
                .iter()
                .zip(&self.bounds)
                .map(|(&x, &(a, b))| a + b - x),
        )
    }
}

/// `∂B` under `c_k` restricted to the boundary.
pub fn box_boundary(bx: &NBox, k: usize) -> Result<DigitalImage> {
    DigitalImage::new(bx.boundary_points(), Adjacency::ck(bx.dim(), k)?)
}

/// The central reflection of `bx` restricted to `∂B` under `c_k`.
pub fn box_involution(bx: &NBox, k: usize) -> Result<Involution> {
    let image = Arc::new(box_boundary(bx, k)?);
    let map = image
        .points()
        .iter()
        .map(|p| (p.clone(), bx.reflect(p)))
        .collect();
    Ok(Involution::new(image, map))
}

/// A self-map of a digital image, intended to be a continuous free involution.
/// Construction does not validate; see [`Involution::validate`].
#[derive(Debug, Clone)]
pub struct Involution {
    carrier: Arc<DigitalImage>,
    map: BTreeMap<Point, Point>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct InvolutionReport {
    /// Carrier points without an image.
    pub undefined: Vec<Point>,
    /// Points mapped outside the carrier.
    pub escaping: Vec<(Point, Point)>,
    /// Points with `τ(τ(x)) ≠ x`.
    pub not_involutive: Vec<Point>,
    pub fixed_points: Vec<Point>,
    /// Adjacent pairs whose images are neither equal nor adjacent.
    pub discontinuities: Vec<(Point, Point)>,
}

impl InvolutionReport {
    pub fn is_total(&self) -> bool {
        self.undefined.is_empty() && self.escaping.is_empty()
    }

    pub fn is_involution(&self) -> bool {
        self.is_total() && self.not_involutive.is_empty() && self.discontinuities.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.fixed_points.is_empty()
    }

    pub fn is_valid(&self) -> bool {
        self.is_involution() && self.is_free()
    }
}

impl Involution {
    pub fn new(carrier: Arc<DigitalImage>, map: BTreeMap<Point, Point>) -> Self {
        Involution { carrier, map }
    }

    pub fn carrier(&self) -> &Arc<DigitalImage> {
        &self.carrier
    }

    pub fn apply(&self, p: &Point) -> Option<&Point> {
        self.map.get(p)
    }

    pub fn validate(&self) -> InvolutionReport {
        let mut report = InvolutionReport::default();
        for p in self.carrier.points() {
            match self.map.get(p) {
                None => report.undefined.push(p.clone()),
                Some(q) if !self.carrier.contains(q) => report.escaping.push((p.clone(), q.clone())),
                Some(q) => {
                    if q == p {
                        report.fixed_points.push(p.clone());
                    }
                    if self.map.get(q) != Some(p) {
                        report.not_involutive.push(p.clone());
                    }
                }
            }
        }
        if report.is_total() {
            for (i, j) in self.carrier.adjacent_pairs() {
                let a = &self.map[self.carrier.point(i)];
                let b = &self.map[self.carrier.point(j)];
                if a != b && !self.carrier.adjacent(a, b).unwrap_or(false) {
                    report
                        .discontinuities
                        .push((self.carrier.point(i).clone(), self.carrier.point(j).clone()));
                }
            }
        }
        report
    }

    /// `τ` as a table of carrier indices, after checking that it is a
    /// continuous free involution.
    pub fn index_table(&self) -> Result<Vec<usize>> {
        let report = self.validate();
        if !report.is_valid() {
            return Err(Error::NotAnInvolution(describe_failure(&report)));
        }
        Ok(self
            .carrier
            .points()
            .iter()
            .map(|p| self.carrier.index_of(&self.map[p]).unwrap())
            .collect())
    }
}

fn describe_failure(r: &InvolutionReport) -> String {
    if let Some(p) = r.undefined.first() {
        format!("undefined at {p}")
    } else if let Some((p, q)) = r.escaping.first() {
        format!("{p} maps to {q} outside the carrier")
    } else if let Some(p) = r.not_involutive.first() {
        format!("applying twice does not return {p}")
    } else if let Some(p) = r.fixed_points.first() {
        format!("fixed point {p}")
    } else if let Some((p, q)) = r.discontinuities.first() {
        format!("not continuous at adjacent pair {p}, {q}")
    } else {
        "valid".to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_structure() {
        for n in 4..10 {
            let c = Cycle::new(n).unwrap();
            assert!(c.image().is_connected());
            for i in 0..n {
                assert_eq!(c.image().neighbors(i).len(), 2);
            }
        }
        assert!(Cycle::new(3).is_err());
    }

    #[test]
    fn cycle_antipode_examples() {
        let c8 = Cycle::new(8).unwrap();
        let tau = cycle_antipode(&c8).unwrap();
        assert_eq!(tau.apply(&c8.point(0)), Some(&c8.point(4)));
        assert_eq!(tau.apply(&c8.point(3)), Some(&c8.point(7)));
        assert!(tau.validate().is_valid());

        let c4 = Cycle::new(4).unwrap();
        let tau = cycle_antipode(&c4).unwrap();
        for i in 0..4 {
            let once = tau.apply(&c4.point(i)).unwrap();
            assert_eq!(tau.apply(once), Some(&c4.point(i)));
        }

        assert!(matches!(
            cycle_antipode(&Cycle::new(5).unwrap()),
            Err(Error::NotAnInvolution(_))
        ));
    }

    #[test]
    fn cycle_antipode_is_an_automorphism() {
        for n in [4, 6, 8, 10, 12] {
            let c = Cycle::new(n).unwrap();
            let tau = cycle_antipode(&c).unwrap();
            for i in 0..n {
                let a = tau.apply(&c.point(i)).unwrap();
                let b = tau.apply(&c.point(i + 1)).unwrap();
                assert!(c.image().adjacent(a, b).unwrap());
            }
        }
    }

    #[test]
    fn boundary_sizes() {
        assert_eq!(box_boundary(&NBox::cube(3, -1, 1).unwrap(), 1).unwrap().len(), 26);
        assert_eq!(box_boundary(&NBox::cube(2, 0, 1).unwrap(), 2).unwrap().len(), 4);
        let grain = NBox::new(vec![(0, 149), (0, 117)]).unwrap();
        assert_eq!(box_boundary(&grain, 2).unwrap().len(), 532);
        assert!(NBox::new(vec![(0, 0)]).is_err());
        assert!(NBox::new(vec![(3, 1)]).is_err());
    }

    #[test]
    fn box_involution_examples() {
        let grain = NBox::new(vec![(0, 149), (0, 117)]).unwrap();
        let tau = box_involution(&grain, 2).unwrap();
        assert_eq!(tau.apply(&Point::from([0, 87])), Some(&Point::from([149, 30])));
        let b = NBox::new(vec![(-2, 3), (1, 4), (0, 1)]).unwrap();
        assert_eq!(b.reflect(&Point::from([-2, 1, 0])), Point::from([3, 4, 1]));
        let cube = NBox::cube(3, -1, 1).unwrap();
        assert_eq!(cube.reflect(&Point::from([1, 0, 0])), Point::from([-1, 0, 0]));
        assert!(box_involution(&NBox::cube(2, 0, 2).unwrap(), 1)
            .unwrap()
            .validate()
            .is_valid());
    }

    #[test]
    fn box_involutions_validate_under_every_ck() {
        let boxes = [
            vec![(0, 1), (0, 1)],
            vec![(0, 2), (-1, 1)],
            vec![(0, 3), (0, 1)],
            vec![(-1, 1), (-1, 1), (-1, 1)],
            vec![(0, 1), (0, 2), (0, 3)],
            vec![(0, 1), (0, 1), (0, 1)],
            vec![(0, 4)],
        ];
        for bounds in boxes {
            let bx = NBox::new(bounds).unwrap();
            for k in 1..=bx.dim() {
                let report = box_involution(&bx, k).unwrap().validate();
                assert!(report.is_valid(), "{bx:?} k={k}: {report:?}");
            }
        }
    }

    #[test]
    fn two_box_boundary_is_a_cycle() {
        for (w, h) in [(1, 1), (2, 2), (3, 5), (4, 4)] {
            let img = box_boundary(&NBox::new(vec![(0, w), (0, h)]).unwrap(), 1).unwrap();
            assert_eq!(img.len() as i64, 2 * (w + h));
            assert!(img.is_connected());
            assert!((0..img.len()).all(|i| img.neighbors(i).len() == 2));
        }
    }

    #[test]
    fn identity_is_not_free() {
        let c = Cycle::new(6).unwrap();
        let map = c.image().points().iter().map(|p| (p.clone(), p.clone())).collect();
        let report = Involution::new(c.image().clone(), map).validate();
        assert_eq!(report.fixed_points.len(), 6);
        assert!(report.is_involution());
        assert!(!report.is_valid());
    }

    #[test]
    fn broken_maps_are_reported() {
        let c = Cycle::new(6).unwrap();
        let shift: BTreeMap<Point, Point> =
            (0..6).map(|i| (c.point(i), c.point(i + 1))).collect();
        let report = Involution::new(c.image().clone(), shift).validate();
        assert_eq!(report.not_involutive.len(), 6);

        let partial: BTreeMap<Point, Point> = (0..3).map(|i| (c.point(i), c.point(i + 3))).collect();
        let inv = Involution::new(c.image().clone(), partial);
        assert_eq!(inv.validate().undefined.len(), 3);
        assert!(inv.index_table().is_err());

        // swapping c_0 and c_2 on C_6, fixing the rest, is an involution but
        // neither free nor continuous
        let mut swap: BTreeMap<Point, Point> = (0..6).map(|i| (c.point(i), c.point(i))).collect();
        swap.insert(c.point(0), c.point(2));
        swap.insert(c.point(2), c.point(0));
        let report = Involution::new(c.image().clone(), swap).validate();
        assert!(!report.discontinuities.is_empty());
        assert_eq!(report.fixed_points.len(), 4);
    }
}

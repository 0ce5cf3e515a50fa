//! Witness searches for the digital intermediate value theorem and the digital
//! Borsuk–Ulam theorems.
//!
//! The theorems only assert existence. Each search here returns the
//! lexicographically least witness, and reports an empty search as
//! [`Error::TheoremViolation`]. Hypotheses are checked first, so a violation
//! always means the conclusion failed on a valid input.

mod hull;

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use hull::hulls_intersect;

use crate::antipode::{box_boundary, box_involution, Involution, NBox};
use crate::error::{Error, Result};
use crate::lattice::{Adjacency, DigitalImage, Point};
use crate::maps::GridFunction;

/// A set of mutually adjacent points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Simplex {
    vertices: Vec<Point>,
}

impl Simplex {
    pub fn new(vertices: impl IntoIterator<Item = Point>, adjacency: &Adjacency) -> Result<Self> {
        let mut vertices: Vec<Point> = vertices.into_iter().collect();
        vertices.sort();
        vertices.dedup();
        if vertices.is_empty() {
            return Err(Error::invalid("a simplex needs at least one vertex"));
        }
        for (i, a) in vertices.iter().enumerate() {
            for b in &vertices[i + 1..] {
                if !adjacency.adjacent(a, b)? {
                    return Err(Error::invalid(format!("{a} and {b} are not adjacent")));
                }
            }
        }
        Ok(Simplex { vertices })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.vertices.binary_search(p).is_ok()
    }
}

/// Index lists of all cliques, in lexicographic order.
pub(crate) fn clique_indices(image: &DigitalImage) -> Vec<Vec<usize>> {
    fn extend(image: &DigitalImage, clique: &mut Vec<usize>, cands: &[usize], out: &mut Vec<Vec<usize>>) {
        out.push(clique.clone());
        for (t, &j) in cands.iter().enumerate() {
            let next: Vec<usize> = cands[t + 1..]
                .iter()
                .copied()
                .filter(|&c| image.is_adjacent_index(j, c))
                .collect();
            clique.push(j);
            extend(image, clique, &next, out);
            clique.pop();
        }
    }
    let mut out = Vec::new();
    for i in 0..image.len() {
        let cands: Vec<usize> = image.neighbors(i).iter().copied().filter(|&j| j > i).collect();
        extend(image, &mut vec![i], &cands, &mut out);
    }
    out
}

/// Every nonempty clique of the image, sorted lexicographically.
pub fn enumerate_simplices(image: &DigitalImage) -> Vec<Simplex> {
    clique_indices(image)
        .into_iter()
        .map(|idx| Simplex {
            vertices: idx.into_iter().map(|i| image.point(i).clone()).collect(),
        })
        .collect()
}

/// A point `x` together with `f(x)`, `f(-x)` and their codomain distance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AntipodalWitness {
    pub point: Point,
    pub antipode: Point,
    pub value: Point,
    pub antipodal_value: Point,
    pub distance: u64,
}

impl AntipodalWitness {
    /// The one-dimensional conclusion `|f(x) - f(-x)| < 2m`, for `m > 0`.
    pub fn within_dim1_bound(&self, m: u64) -> bool {
        self.distance < 2 * m
    }
}

fn require_integer_valued(f: &GridFunction) -> Result<()> {
    f.require_scalar()?;
    if f.codomain() != &Adjacency::c1(1) {
        return Err(Error::invalid(format!(
            "expected a function into (Z, c1), codomain is {}",
            f.codomain()
        )));
    }
    Ok(())
}

/// A point `z` with `|f(z) - c| < m`, given `f(x) <= c <= f(y)` and Lipschitz
/// constant `m > 0` on a connected domain.
///
/// Returns `x` or `y` when `c` equals an endpoint value. Otherwise walks a
/// shortest path from `x` to `y` and returns the first point at which `f`
/// reaches `c` from below.
pub fn ivt_witness(f: &GridFunction, m: u64, x: &Point, y: &Point, c: i64) -> Result<Point> {
    require_integer_valued(f)?;
    if m == 0 {
        return Err(Error::invalid("the Lipschitz constant must be positive"));
    }
    let domain = f.domain();
    let ix = domain.require(x)?;
    let iy = domain.require(y)?;
    if !domain.is_connected() {
        return Err(Error::invalid("the domain is not connected"));
    }
    let report = f.min_lipschitz()?;
    if report.constant > m {
        return Err(Error::invalid(format!(
            "f has least Lipschitz constant {}, not {m}",
            report.constant
        )));
    }
    let (fx, fy) = (f.scalar_at(ix), f.scalar_at(iy));
    if !(fx <= c && c <= fy) {
        return Err(Error::invalid(format!(
            "need f(x) <= c <= f(y), got {fx} <= {c} <= {fy}"
        )));
    }
    if c == fx {
        return Ok(x.clone());
    }
    if c == fy {
        return Ok(y.clone());
    }
    let path = domain
        .shortest_path_indices(ix, iy)
        .expect("connected domain");
    path.windows(2)
        .find(|w| f.scalar_at(w[0]) < c && c <= f.scalar_at(w[1]))
        .map(|w| domain.point(w[1]).clone())
        .ok_or_else(|| Error::TheoremViolation(format!("no crossing of {c} between {x} and {y}")))
}

/// The point minimizing `|f(x) - f(τ(x))|`, lexicographically least among
/// minimizers.
pub fn antipodal_witness_1d(inv: &Involution, f: &GridFunction) -> Result<AntipodalWitness> {
    require_integer_valued(f)?;
    let carrier = inv.carrier();
    if carrier.points() != f.domain().points() {
        return Err(Error::invalid("the function and involution have different domains"));
    }
    if carrier.is_empty() {
        return Err(Error::invalid("empty domain"));
    }
    if !carrier.is_connected() {
        return Err(Error::invalid("the domain is not connected"));
    }
    let tau = inv.index_table()?;
    let best = (0..carrier.len())
        .min_by_key(|&i| (f.scalar_at(i).abs_diff(f.scalar_at(tau[i])), i))
        .unwrap();
    Ok(AntipodalWitness {
        point: carrier.point(best).clone(),
        antipode: carrier.point(tau[best]).clone(),
        value: f.value_at(best).clone(),
        antipodal_value: f.value_at(tau[best]).clone(),
        distance: f.scalar_at(best).abs_diff(f.scalar_at(tau[best])),
    })
}

/// Checks the setting of the simplex lemma and returns the dimension `n`.
fn coincidence_setup(inv: &Involution, f: &GridFunction) -> Result<usize> {
    let carrier = inv.carrier();
    let n = carrier
        .dim()
        .ok_or_else(|| Error::invalid("empty boundary"))?;
    if n < 2 {
        return Err(Error::Unsupported("boxes of dimension 1".into()));
    }
    if carrier.adjacency() != &Adjacency::ck(n, n)? {
        return Err(Error::invalid(format!(
            "the boundary must carry c{n}, found {}",
            carrier.adjacency()
        )));
    }
    if carrier.points() != f.domain().points() {
        return Err(Error::invalid("the function and involution have different domains"));
    }
    match f.codomain_dim() {
        Some(d) if d == n - 1 => Ok(n),
        other => Err(Error::DimensionMismatch {
            expected: n - 1,
            found: other.unwrap_or(0),
        }),
    }
}

/// Index lists of every simplex `σ` with `conv f(σ) ∩ conv f(-σ) ≠ ∅`, in
/// lexicographic order.
fn coincidence_cliques<'a>(
    inv: &'a Involution,
    f: &'a GridFunction,
    n: usize,
    tau: &'a [usize],
) -> impl Iterator<Item = Vec<usize>> + 'a {
    let values = f.values();
    clique_indices(inv.carrier()).into_iter().filter(move |clique| {
        let image: Vec<Point> = clique.iter().map(|&i| values[i].clone()).collect();
        let opposite: Vec<Point> = clique.iter().map(|&i| values[tau[i]].clone()).collect();
        hull::intersect_unchecked(&image, &opposite, n - 1)
    })
}

/// The first `c_n`-simplex `σ ⊂ ∂B`, in lexicographic order, with
/// `conv f(σ) ∩ conv f(-σ) ≠ ∅`.
///
/// The involution's carrier must be a box boundary in `Z^n` under `c_n`, and
/// `f` must take values in `Z^{n-1}`. `f` need not be continuous.
pub fn simplex_coincidence_witness(inv: &Involution, f: &GridFunction) -> Result<Simplex> {
    let n = coincidence_setup(inv, f)?;
    let tau = inv.index_table()?;
    let carrier = inv.carrier();
    let first = coincidence_cliques(inv, f, n, &tau).next();
    first
        .map(|clique| Simplex {
            vertices: clique.iter().map(|&i| carrier.point(i).clone()).collect(),
        })
        .ok_or_else(|| {
            Error::TheoremViolation("no simplex of the boundary has intersecting image hulls".into())
        })
}

/// `T(σ)`: the anchor `p_σ` (coordinatewise minimum of `σ`) plus every
/// nonnegative offset with coordinate sum at most `m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TSimplex {
    pub anchor: Point,
    pub size: u32,
    pub vertices: Vec<Point>,
}

impl TSimplex {
    pub fn contains(&self, p: &Point) -> bool {
        p.dim() == self.anchor.dim()
            && p.coords()
                .iter()
                .zip(self.anchor.coords())
                .try_fold(0u64, |acc, (&x, &a)| (x >= a).then(|| acc + (x - a) as u64))
                .is_some_and(|s| s <= u64::from(self.size))
    }
}

/// Builds `T(σ)` for a `c_1^m`-simplex `σ` (points pairwise within `c_1`
/// distance `m`).
///
/// Vertices of `T(σ)` are pairwise within `c_1` distance `2m` once the
/// dimension is at least 2, so `T(σ)` is in general not itself a
/// `c_1^m`-simplex. `σ ⊆ T(σ)` is checked and a failure is reported as
/// [`Error::TheoremViolation`]; it holds in dimension 1 and for `m = 1`, and
/// fails e.g. for `{(0,1),(1,0),(1,2)}` with `m = 2`.
pub fn t_simplex(sigma: &[Point], m: u32) -> Result<TSimplex> {
    let first = sigma
        .first()
        .ok_or_else(|| Error::invalid("a simplex needs at least one vertex"))?;
    let n = first.dim();
    for (i, a) in sigma.iter().enumerate() {
        if a.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: a.dim(),
            });
        }
        for b in &sigma[i + 1..] {
            if a.l1_distance(b) > u64::from(m) {
                return Err(Error::invalid(format!(
                    "{a} and {b} are not c1^{m}-adjacent"
                )));
            }
        }
    }
    let anchor = Point::new((0..n).map(|t| sigma.iter().map(|p| p.coord(t)).min().unwrap()));
    let mut vertices = Vec::new();
    let mut offset = vec![0i64; n];
    fill_offsets(&anchor, &mut offset, 0, i64::from(m), &mut vertices);
    vertices.sort();
    let t = TSimplex {
        anchor,
        size: m,
        vertices,
    };
    if let Some(p) = sigma.iter().find(|p| !t.contains(p)) {
        return Err(Error::TheoremViolation(format!(
            "{p} lies outside T(σ) anchored at {}",
            t.anchor
        )));
    }
    Ok(t)
}

fn fill_offsets(anchor: &Point, offset: &mut Vec<i64>, t: usize, budget: i64, out: &mut Vec<Point>) {
    if t == offset.len() {
        out.push(anchor.offset(offset));
        return;
    }
    for v in 0..=budget {
        offset[t] = v;
        fill_offsets(anchor, offset, t + 1, budget - v, out);
    }
    offset[t] = 0;
}

/// Which higher-dimensional theorem to apply to `f : ∂B → Z^{n-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum HighDimVariant {
    /// `(c_n, c_1)`-continuous; witness with `f(x) ⟷⃰ f(-x)` under `c_1`.
    C1,
    /// `(c_n, c_1^m)`-continuous; witness under `c_1^{2m}`.
    C1Power(u32),
    /// `(c_n, c_{n-1})`-continuous; witness under `c_{n-1}`.
    CnMinus1,
}

impl HighDimVariant {
    /// The codomain adjacency assumed for continuity.
    pub fn hypothesis(self, d: usize) -> Result<Adjacency> {
        match self {
            HighDimVariant::C1 => Ok(Adjacency::c1(d)),
            HighDimVariant::C1Power(m) => Adjacency::c1(d).power(m),
            HighDimVariant::CnMinus1 => Adjacency::ck(d, d),
        }
    }

    /// Adjacency in which distances are reported.
    fn base(self, d: usize) -> Result<Adjacency> {
        match self {
            HighDimVariant::C1 | HighDimVariant::C1Power(_) => Ok(Adjacency::c1(d)),
            HighDimVariant::CnMinus1 => Adjacency::ck(d, d),
        }
    }

    /// Largest base distance the conclusion allows.
    pub fn allowed_distance(self) -> u64 {
        match self {
            HighDimVariant::C1 | HighDimVariant::CnMinus1 => 1,
            HighDimVariant::C1Power(m) => 2 * u64::from(m),
        }
    }
}

struct BoundarySetup {
    boundary: Arc<DigitalImage>,
    f: GridFunction,
    base: Adjacency,
}

fn setup_high_dim(bx: &NBox, f: &GridFunction, variant: HighDimVariant) -> Result<BoundarySetup> {
    let n = bx.dim();
    if n < 2 {
        return Err(Error::Unsupported("boxes of dimension 1".into()));
    }
    if let HighDimVariant::C1Power(0) = variant {
        return Err(Error::invalid("the power must be positive"));
    }
    let boundary = Arc::new(box_boundary(bx, n)?);
    if boundary.points() != f.domain().points() {
        return Err(Error::invalid("the function is not defined on the box boundary"));
    }
    let d = n - 1;
    if let Some(found) = f.codomain_dim().filter(|&k| k != d) {
        return Err(Error::DimensionMismatch { expected: d, found });
    }
    let g = GridFunction::new(boundary.clone(), variant.hypothesis(d)?, f.values().to_vec())?;
    if let Some((a, b)) = g.discontinuity() {
        return Err(Error::invalid(format!(
            "f is not (c{n}, {})-continuous: adjacent {a} and {b} map to {} and {}",
            g.codomain(),
            g.value(&a)?,
            g.value(&b)?
        )));
    }
    Ok(BoundarySetup {
        boundary,
        f: g,
        base: variant.base(d)?,
    })
}

fn witness_at(s: &BoundarySetup, bx: &NBox, i: usize) -> AntipodalWitness {
    let x = s.boundary.point(i);
    let neg = bx.reflect(x);
    let j = s.boundary.index_of(&neg).unwrap();
    let (v, w) = (s.f.value_at(i), s.f.value_at(j));
    AntipodalWitness {
        point: x.clone(),
        antipode: neg,
        value: v.clone(),
        antipodal_value: w.clone(),
        distance: s.base.distance_unchecked(v, w).unwrap(),
    }
}

/// Scans `∂B` for the least `x` meeting the conclusion of `variant`.
///
/// The witness distance is measured in `c_1` for [`HighDimVariant::C1`] and
/// [`HighDimVariant::C1Power`], and in `c_{n-1}` for
/// [`HighDimVariant::CnMinus1`].
pub fn antipodal_witness_high_dim(
    bx: &NBox,
    f: &GridFunction,
    variant: HighDimVariant,
) -> Result<AntipodalWitness> {
    let s = setup_high_dim(bx, f, variant)?;
    let limit = variant.allowed_distance();
    (0..s.boundary.len())
        .map(|i| witness_at(&s, bx, i))
        .find(|w| w.distance <= limit)
        .ok_or_else(|| {
            Error::TheoremViolation(format!(
                "no boundary point with f(x), f(-x) within distance {limit}"
            ))
        })
}

/// A witness rebuilt the way the existence proofs go: a coincidence simplex
/// `σ`, then a shared codomain point, then a vertex of `σ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProofReconstruction {
    pub simplex: Simplex,
    /// The codomain point `y` that links `f(x)` and `f(-x)`.
    pub link: Point,
    pub witness: AntipodalWitness,
    /// Earlier coincidence simplices on which a step of the argument failed,
    /// with the reason. Empty when the first simplex works.
    pub rejected: Vec<(Simplex, String)>,
}

/// Follows the existence proof of `variant` on `f`, checking every step.
///
/// Coincidence simplices are tried in lexicographic order. A simplex is
/// rejected, and the next one tried, when a step fails on it; for
/// [`HighDimVariant::C1Power`] this happens when `f(σ) ⊄ T(f(σ))`. Running out
/// of simplices is reported as [`Error::TheoremViolation`].
pub fn reconstruct_high_dim_witness(
    bx: &NBox,
    f: &GridFunction,
    variant: HighDimVariant,
) -> Result<ProofReconstruction> {
    let s = setup_high_dim(bx, f, variant)?;
    let inv = box_involution(bx, bx.dim())?;
    let n = coincidence_setup(&inv, &s.f)?;
    let tau = inv.index_table()?;
    let mut rejected = Vec::new();
    for clique in coincidence_cliques(&inv, &s.f, n, &tau) {
        let sigma = Simplex {
            vertices: clique.iter().map(|&i| s.boundary.point(i).clone()).collect(),
        };
        match follow_proof(&s, bx, &clique, &tau, variant) {
            Ok((link, witness)) => {
                return Ok(ProofReconstruction {
                    simplex: sigma,
                    link,
                    witness,
                    rejected,
                })
            }
            Err(reason) => rejected.push((sigma, reason)),
        }
    }
    Err(Error::TheoremViolation(match rejected.first() {
        Some((sigma, reason)) => format!(
            "all {} coincidence simplices rejected; first {:?}: {reason}",
            rejected.len(),
            sigma.vertices()
        ),
        None => "no simplex of the boundary has intersecting image hulls".into(),
    }))
}

/// The steps after the simplex lemma, on one simplex given by indices.
fn follow_proof(
    s: &BoundarySetup,
    bx: &NBox,
    clique: &[usize],
    tau: &[usize],
    variant: HighDimVariant,
) -> std::result::Result<(Point, AntipodalWitness), String> {
    let f = &s.f;
    let sorted_values = |idx: &mut dyn Iterator<Item = usize>| {
        let mut v: Vec<Point> = idx.map(|i| f.value_at(i).clone()).collect();
        v.sort();
        v.dedup();
        v
    };
    let image = sorted_values(&mut clique.iter().copied());
    let opposite = sorted_values(&mut clique.iter().map(|&i| tau[i]));

    // (link y, predicate a vertex i with antipode j must satisfy)
    let (link, accept): (Point, Box<dyn Fn(usize, usize) -> bool + '_>) = match variant {
        HighDimVariant::C1 => {
            let y = image
                .iter()
                .find(|v| opposite.contains(v))
                .cloned()
                .ok_or("c1 images with meeting hulls share no vertex")?;
            let yy = y.clone();
            (y, Box::new(move |i, _| f.value_at(i) == &yy))
        }
        HighDimVariant::CnMinus1 => {
            let y = image
                .iter()
                .find(|v| opposite.iter().all(|w| *v == w || s.base.adjacent_unchecked(v, w)))
                .cloned()
                .ok_or("no image vertex is adjacent to all opposite images")?;
            let yy = y.clone();
            (y, Box::new(move |i, _| f.value_at(i) == &yy))
        }
        HighDimVariant::C1Power(m) => {
            let t_image = t_simplex(&image, m).map_err(|e| e.to_string())?;
            let t_opposite = t_simplex(&opposite, m).map_err(|e| e.to_string())?;
            let y = Point::new(
                t_image
                    .anchor
                    .coords()
                    .iter()
                    .zip(t_opposite.anchor.coords())
                    .map(|(a, b)| *a.max(b)),
            );
            if !(t_image.contains(&y) && t_opposite.contains(&y)) {
                return Err("the T-simplices share no lattice point".into());
            }
            let yy = y.clone();
            let m = u64::from(m);
            (
                y,
                Box::new(move |i, j| {
                    f.value_at(i).l1_distance(&yy) <= m && f.value_at(j).l1_distance(&yy) <= m
                }),
            )
        }
    };
    let &i = clique
        .iter()
        .find(|&&i| accept(i, tau[i]))
        .ok_or_else(|| format!("no vertex of σ links through {link}"))?;
    let witness = witness_at(s, bx, i);
    if witness.distance > variant.allowed_distance() {
        return Err(format!(
            "reconstructed witness {} has distance {}",
            witness.point, witness.distance
        ));
    }
    Ok((link, witness))
}

/// The function on `∂([-1,1]^3)` into `Z^2` that is `(c_1, c_1)`-continuous
/// but has no `x` with `f(x) ⟷⃰ f(-x)` under `c_1`. The domain carries `c_1`.
pub fn counterexample_fixture() -> (NBox, GridFunction) {
    let bx = NBox::cube(3, -1, 1).unwrap();
    let boundary = Arc::new(box_boundary(&bx, 1).unwrap());
    let f = GridFunction::from_fn(boundary, Adjacency::c1(2), |p| {
        let (x, y, z) = (p.coord(0), p.coord(1), p.coord(2));
        let v = match z {
            -1 if (x, y) == (-1, -1) => [0, 1],
            -1 => [0, 0],
            0 if (x, y) == (-1, -1) => [1, 1],
            0 if (x, y) == (1, 1) => [0, 0],
            0 if y > x => [0, 1],
            0 => [1, 0],
            _ if (x, y) == (1, 1) => [1, 0],
            _ => [1, 1],
        };
        Point::from(v)
    })
    .unwrap();
    (bx, f)
}

/// A seeded random continuous function into `codomain`.
///
/// Starts from the constant zero function and applies `steps` random local
/// moves, each shifting one value by a vector in `{-1,0,1}^d` and kept only
/// when the function stays continuous.
pub fn sample_continuous(
    domain: Arc<DigitalImage>,
    codomain: Adjacency,
    steps: usize,
    seed: u64,
) -> Result<GridFunction> {
    let d = codomain
        .dim()
        .ok_or_else(|| Error::invalid("the codomain has no dimension"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = vec![Point::new(vec![0; d]); domain.len()];
    for _ in 0..steps {
        if domain.is_empty() {
            break;
        }
        let i = rng.gen_range(0..domain.len());
        let delta: Vec<i64> = (0..d).map(|_| rng.gen_range(-1..=1)).collect();
        let candidate = values[i].offset(&delta);
        if codomain.check_point(&candidate).is_err() {
            continue;
        }
        let ok = domain
            .neighbors(i)
            .iter()
            .all(|&j| values[j] == candidate || codomain.adjacent_unchecked(&values[j], &candidate));
        if ok {
            values[i] = candidate;
        }
    }
    GridFunction::new(domain, codomain, values)
}

#[cfg(test)]
mod tests;

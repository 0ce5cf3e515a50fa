//! Integer lattice points, adjacency relations and digital images.
//!
//! An [`Adjacency`] is a symmetric, antireflexive relation. Three kinds are
//! supported: the `c_k` relations on `Z^n` (points differing by at most one in
//! at most `k` coordinates), powers `λ^m` of another relation (distinct points
//! joined by a `λ`-path of length at most `m`), and explicit finite graphs.
//!
//! A [`DigitalImage`] pairs a finite point set with an adjacency. Its point list
//! is kept sorted lexicographically, and every set-valued result derived from
//! it inherits that order.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// A point of `Z^n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(SmallVec<[i64; 4]>);

impl Point {
    pub fn new(coords: impl IntoIterator<Item = i64>) -> Self {
        Point(coords.into_iter().collect())
    }

    pub fn scalar(v: i64) -> Self {
        Point(smallvec::smallvec![v])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn coord(&self, i: usize) -> i64 {
        self.0[i]
    }

    /// Coordinatewise sum. Dimensions must agree.
    pub fn offset(&self, by: &[i64]) -> Point {
        debug_assert_eq!(self.dim(), by.len());
        Point(self.0.iter().zip(by).map(|(a, b)| a + b).collect())
    }

    pub fn l1_distance(&self, other: &Point) -> u64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a.abs_diff(*b)).sum()
    }

    pub fn linf_distance(&self, other: &Point) -> u64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.abs_diff(*b))
            .max()
            .unwrap_or(0)
    }

    fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: self.dim(),
            });
        }
        Ok(())
    }
}

impl<const N: usize> From<[i64; N]> for Point {
    fn from(c: [i64; N]) -> Self {
        Point::new(c)
    }
}

impl From<Vec<i64>> for Point {
    fn from(c: Vec<i64>) -> Self {
        Point::new(c)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Path distance under `c_k` on all of `Z^n`.
///
/// One step moves at most `k` coordinates by one each, so the distance is
/// `max(|d|_inf, ceil(|d|_1 / k))`; decrementing the `k` largest remaining
/// offsets each step attains it.
pub fn ck_distance(p: &Point, q: &Point, k: usize) -> u64 {
    let linf = p.linf_distance(q);
    let l1 = p.l1_distance(q);
    linf.max(l1.div_ceil(k as u64))
}

/// A finite simple graph on lattice points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitGraph {
    vertices: BTreeSet<Point>,
    edges: BTreeSet<(Point, Point)>,
    neighbors: BTreeMap<Point, Vec<Point>>,
}

impl ExplicitGraph {
    pub fn new(
        vertices: impl IntoIterator<Item = Point>,
        edges: impl IntoIterator<Item = (Point, Point)>,
    ) -> Result<Self> {
        let vertices: BTreeSet<Point> = vertices.into_iter().collect();
        if let Some(first) = vertices.iter().next() {
            let d = first.dim();
            for v in &vertices {
                v.check_dim(d)?;
            }
        }
        let mut edge_set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::invalid(format!("self-loop at {a}")));
            }
            for v in [&a, &b] {
                if !vertices.contains(v) {
                    return Err(Error::invalid(format!("edge endpoint {v} is not a vertex")));
                }
            }
            edge_set.insert(if a < b { (a, b) } else { (b, a) });
        }
        let mut neighbors: BTreeMap<Point, Vec<Point>> =
            vertices.iter().map(|v| (v.clone(), Vec::new())).collect();
        for (a, b) in &edge_set {
            neighbors.get_mut(a).unwrap().push(b.clone());
            neighbors.get_mut(b).unwrap().push(a.clone());
        }
        for list in neighbors.values_mut() {
            list.sort();
        }
        Ok(ExplicitGraph {
            vertices,
            edges: edge_set,
            neighbors,
        })
    }

    pub fn vertices(&self) -> &BTreeSet<Point> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<(Point, Point)> {
        &self.edges
    }

    pub fn neighbors(&self, v: &Point) -> &[Point] {
        self.neighbors.get(v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn has_edge(&self, a: &Point, b: &Point) -> bool {
        if a < b {
            self.edges.contains(&(a.clone(), b.clone()))
        } else {
            self.edges.contains(&(b.clone(), a.clone()))
        }
    }

    fn distance(&self, p: &Point, q: &Point) -> Option<u64> {
        if p == q {
            return Some(0);
        }
        let mut dist: HashMap<&Point, u64> = HashMap::from([(p, 0)]);
        let mut queue = VecDeque::from([p]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v];
            for w in self.neighbors(v) {
                if !dist.contains_key(w) {
                    if w == q {
                        return Some(d + 1);
                    }
                    dist.insert(w, d + 1);
                    queue.push_back(w);
                }
            }
        }
        None
    }
}

/// A symmetric antireflexive relation on lattice points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Adjacency {
    /// `c_k` on `Z^dim`.
    Ck { dim: usize, k: usize },
    /// `base^exponent`: distinct points at `base`-path distance at most `exponent`.
    Power { base: Box<Adjacency>, exponent: u32 },
    Explicit(Arc<ExplicitGraph>),
}

impl Adjacency {
    pub fn ck(dim: usize, k: usize) -> Result<Self> {
        if dim == 0 || k == 0 || k > dim {
            return Err(Error::invalid(format!(
                "c_k needs 1 <= k <= n, got k={k}, n={dim}"
            )));
        }
        Ok(Adjacency::Ck { dim, k })
    }

    /// `c_1` on `Z^dim`.
    pub fn c1(dim: usize) -> Self {
        Adjacency::Ck { dim: dim.max(1), k: 1 }
    }

    pub fn power(self, exponent: u32) -> Result<Self> {
        if exponent == 0 {
            return Err(Error::invalid("adjacency exponent must be positive"));
        }
        Ok(Adjacency::Power {
            base: Box::new(self),
            exponent,
        })
    }

    pub fn explicit(graph: ExplicitGraph) -> Self {
        Adjacency::Explicit(Arc::new(graph))
    }

    /// Ambient dimension, when the relation has one.
    pub fn dim(&self) -> Option<usize> {
        match self {
            Adjacency::Ck { dim, .. } => Some(*dim),
            Adjacency::Power { base, .. } => base.dim(),
            Adjacency::Explicit(g) => g.vertices.iter().next().map(Point::dim),
        }
    }

    pub(crate) fn check_point(&self, p: &Point) -> Result<()> {
        match self {
            Adjacency::Ck { dim, .. } => p.check_dim(*dim),
            Adjacency::Power { base, .. } => base.check_point(p),
            Adjacency::Explicit(g) => {
                if g.vertices.contains(p) {
                    Ok(())
                } else {
                    Err(Error::NotInImage(p.clone()))
                }
            }
        }
    }

    pub fn adjacent(&self, p: &Point, q: &Point) -> Result<bool> {
        self.check_point(p)?;
        self.check_point(q)?;
        Ok(self.adjacent_unchecked(p, q))
    }

    pub fn adjacent_or_equal(&self, p: &Point, q: &Point) -> Result<bool> {
        Ok(p == q || self.adjacent(p, q)?)
    }

    pub(crate) fn adjacent_unchecked(&self, p: &Point, q: &Point) -> bool {
        if p == q {
            return false;
        }
        match self {
            Adjacency::Ck { k, .. } => {
                let mut differing = 0;
                for (a, b) in p.coords().iter().zip(q.coords()) {
                    match a.abs_diff(*b) {
                        0 => {}
                        1 => differing += 1,
                        _ => return false,
                    }
                }
                differing <= *k
            }
            Adjacency::Power { base, exponent } => base
                .distance_unchecked(p, q)
                .is_some_and(|d| d <= u64::from(*exponent)),
            Adjacency::Explicit(g) => g.has_edge(p, q),
        }
    }

    /// Shortest path length between `p` and `q` in the whole ambient space
    /// (all of `Z^n`, or the whole explicit graph). `None` when no path exists.
    pub fn distance(&self, p: &Point, q: &Point) -> Result<Option<u64>> {
        self.check_point(p)?;
        self.check_point(q)?;
        Ok(self.distance_unchecked(p, q))
    }

    pub(crate) fn distance_unchecked(&self, p: &Point, q: &Point) -> Option<u64> {
        match self {
            Adjacency::Ck { k, .. } => Some(ck_distance(p, q, *k)),
            Adjacency::Power { base, exponent } => base
                .distance_unchecked(p, q)
                .map(|d| d.div_ceil(u64::from(*exponent))),
            Adjacency::Explicit(g) => g.distance(p, q),
        }
    }
}

impl fmt::Display for Adjacency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Adjacency::Ck { dim, k } => write!(f, "c{k} on Z^{dim}"),
            Adjacency::Power { base, exponent } => write!(f, "({base})^{exponent}"),
            Adjacency::Explicit(g) => write!(
                f,
                "explicit graph ({} vertices, {} edges)",
                g.vertices.len(),
                g.edges.len()
            ),
        }
    }
}

#[derive(Debug, Clone)]
struct BfsTree {
    dist: Vec<Option<u32>>,
    parent: Vec<Option<usize>>,
}

/// A finite point set with an adjacency relation.
#[derive(Debug, Clone)]
pub struct DigitalImage {
    points: Vec<Point>,
    index: HashMap<Point, usize>,
    adjacency: Adjacency,
    neighbors: Vec<Vec<usize>>,
    bfs: Vec<OnceLock<BfsTree>>,
}

impl PartialEq for DigitalImage {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points && self.adjacency == other.adjacency
    }
}

impl Eq for DigitalImage {}

impl DigitalImage {
    pub fn new(points: impl IntoIterator<Item = Point>, adjacency: Adjacency) -> Result<Self> {
        let points: Vec<Point> = points
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        for p in &points {
            adjacency.check_point(p)?;
        }
        if let Some(first) = points.first() {
            for p in &points {
                p.check_dim(first.dim())?;
            }
        }
        let index: HashMap<Point, usize> = points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();

        let neighbors = match &adjacency {
            Adjacency::Ck { dim, k } => ck_neighbors(&points, &index, *dim, *k),
            Adjacency::Explicit(g) => points
                .iter()
                .map(|p| {
                    let mut n: Vec<usize> = g
                        .neighbors(p)
                        .iter()
                        .filter_map(|q| index.get(q).copied())
                        .collect();
                    n.sort_unstable();
                    n
                })
                .collect(),
            _ => {
                let mut n = vec![Vec::new(); points.len()];
                for i in 0..points.len() {
                    for j in i + 1..points.len() {
                        if adjacency.adjacent_unchecked(&points[i], &points[j]) {
                            n[i].push(j);
                            n[j].push(i);
                        }
                    }
                }
                n
            }
        };
        let bfs = (0..points.len()).map(|_| OnceLock::new()).collect();
        Ok(DigitalImage {
            points,
            index,
            adjacency,
            neighbors,
            bfs,
        })
    }

    /// The same point set under another adjacency.
    pub fn with_adjacency(&self, adjacency: Adjacency) -> Result<Self> {
        DigitalImage::new(self.points.iter().cloned(), adjacency)
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> Option<usize> {
        self.points.first().map(Point::dim)
    }

    pub fn adjacency(&self) -> &Adjacency {
        &self.adjacency
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.index.contains_key(p)
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub(crate) fn require(&self, p: &Point) -> Result<usize> {
        self.index_of(p).ok_or_else(|| Error::NotInImage(p.clone()))
    }

    /// Indices of the neighbors of point `i`, ascending.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    pub fn is_adjacent_index(&self, i: usize, j: usize) -> bool {
        self.neighbors[i].binary_search(&j).is_ok()
    }

    pub fn adjacent(&self, p: &Point, q: &Point) -> Result<bool> {
        let i = self.require(p)?;
        let j = self.require(q)?;
        Ok(self.is_adjacent_index(i, j))
    }

    /// All adjacent index pairs `(i, j)` with `i < j`, in lexicographic order.
    pub fn adjacent_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.neighbors
            .iter()
            .enumerate()
            .flat_map(|(i, ns)| ns.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
    }

    fn bfs_tree(&self, source: usize) -> &BfsTree {
        self.bfs[source].get_or_init(|| {
            let n = self.points.len();
            let mut dist = vec![None; n];
            let mut parent = vec![None; n];
            dist[source] = Some(0);
            let mut queue = VecDeque::from([source]);
            while let Some(v) = queue.pop_front() {
                let d = dist[v].unwrap();
                for &w in &self.neighbors[v] {
                    if dist[w].is_none() {
                        dist[w] = Some(d + 1);
                        parent[w] = Some(v);
                        queue.push_back(w);
                    }
                }
            }
            BfsTree { dist, parent }
        })
    }

    /// Length of a shortest path from `p` to `q` inside the image.
    pub fn path_distance(&self, p: &Point, q: &Point) -> Result<Option<usize>> {
        let i = self.require(p)?;
        let j = self.require(q)?;
        Ok(self.bfs_tree(i).dist[j].map(|d| d as usize))
    }

    pub(crate) fn shortest_path_indices(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let tree = self.bfs_tree(from);
        tree.dist[to]?;
        let mut path = vec![to];
        let mut at = to;
        while let Some(prev) = tree.parent[at] {
            path.push(prev);
            at = prev;
        }
        path.reverse();
        Some(path)
    }

    /// A shortest path from `p` to `q`. Ties are broken by breadth-first
    /// discovery order over the sorted neighbor lists, so the result is
    /// deterministic.
    pub fn shortest_path(&self, p: &Point, q: &Point) -> Result<Option<DigitalPath>> {
        let i = self.require(p)?;
        let j = self.require(q)?;
        Ok(self.shortest_path_indices(i, j).map(|idx| DigitalPath {
            steps: idx.into_iter().map(|k| self.points[k].clone()).collect(),
        }))
    }

    /// Component label per point index, labels numbered in order of each
    /// component's least point.
    pub(crate) fn component_labels(&self) -> (Vec<usize>, usize) {
        let n = self.points.len();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &w in &self.neighbors[v] {
                    if label[w] == usize::MAX {
                        label[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    /// Maximal connected subsets, each sorted, ordered by least member.
    pub fn connected_components(&self) -> Vec<Vec<Point>> {
        let (label, count) = self.component_labels();
        let mut blocks = vec![Vec::new(); count];
        for (i, p) in self.points.iter().enumerate() {
            blocks[label[i]].push(p.clone());
        }
        blocks
    }

    pub fn is_connected(&self) -> bool {
        self.component_labels().1 <= 1
    }
}

fn ck_neighbors(
    points: &[Point],
    index: &HashMap<Point, usize>,
    dim: usize,
    k: usize,
) -> Vec<Vec<usize>> {
    let mut offsets: Vec<Vec<i64>> = Vec::new();
    let mut cur = vec![-1i64; dim];
    loop {
        let nonzero = cur.iter().filter(|&&c| c != 0).count();
        if (1..=k).contains(&nonzero) {
            offsets.push(cur.clone());
        }
        // odometer over {-1, 0, 1}^dim
        let mut i = 0;
        while i < dim && cur[i] == 1 {
            cur[i] = -1;
            i += 1;
        }
        if i == dim {
            break;
        }
        cur[i] += 1;
    }
    points
        .iter()
        .map(|p| {
            let mut n: Vec<usize> = offsets
                .iter()
                .filter_map(|o| index.get(&p.offset(o)).copied())
                .collect();
            n.sort_unstable();
            n
        })
        .collect()
}

/// A sequence of points where consecutive entries are adjacent or equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitalPath {
    steps: Vec<Point>,
}

impl DigitalPath {
    pub fn new(image: &DigitalImage, steps: Vec<Point>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::invalid("a path needs at least one point"));
        }
        for p in &steps {
            image.require(p)?;
        }
        for w in steps.windows(2) {
            if w[0] != w[1] && !image.adjacent(&w[0], &w[1])? {
                return Err(Error::invalid(format!(
                    "path steps {} and {} are not adjacent",
                    w[0], w[1]
                )));
            }
        }
        Ok(DigitalPath { steps })
    }

    pub fn steps(&self) -> &[Point] {
        &self.steps
    }

    /// Number of steps, one less than the number of points.
    pub fn len(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn start(&self) -> &Point {
        &self.steps[0]
    }

    pub fn end(&self) -> &Point {
        self.steps.last().unwrap()
    }
}

/// The digital interval `[lo, hi]` as one-dimensional points.
pub fn interval(lo: i64, hi: i64) -> impl Iterator<Item = Point> {
    (lo..=hi).map(Point::scalar)
}

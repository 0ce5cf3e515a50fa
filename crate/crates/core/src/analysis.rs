//! Antipodal brightness analysis of the boundary of a grayscale image.
//!
//! The image is the box `[0, W-1] × [0, H-1]`; only its boundary pixels are
//! used. Brightness restricted to the boundary has some Lipschitz constant `m`,
//! and some pair of opposite boundary pixels must differ by less than `2m`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::antipode::{box_involution, NBox};
use crate::borsuk_ulam::antipodal_witness_1d;
use crate::error::{Error, Result};
use crate::lattice::Point;
use crate::maps::GridFunction;
use crate::pgm::GrayImage;

/// Adjacency used between boundary pixels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryAdjacency {
    C1,
    C2,
}

impl BoundaryAdjacency {
    pub fn k(self) -> usize {
        match self {
            BoundaryAdjacency::C1 => 1,
            BoundaryAdjacency::C2 => 2,
        }
    }
}

impl fmt::Display for BoundaryAdjacency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}", self.k())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LipschitzPair {
    pub a: Point,
    pub b: Point,
    pub gap: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BestPair {
    pub x: Point,
    pub antipode: Point,
    pub gap: u64,
}

/// Field names and order are the JSON report format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub image_size: [usize; 2],
    pub adjacency: BoundaryAdjacency,
    pub lipschitz_constant: u64,
    /// `None` only if the boundary has no adjacent pixels, which cannot happen
    /// for images of at least 2x2.
    pub lipschitz_witness: Option<LipschitzPair>,
    pub bound: u64,
    pub best_pair: BestPair,
    /// `best_pair.gap < bound`; vacuously true when the constant is 0.
    pub theorem_satisfied: bool,
}

impl AnalysisReport {
    pub fn summary(&self) -> String {
        let [w, h] = self.image_size;
        let mut s = format!(
            "image {w}x{h}, boundary of {} pixels under {}\n",
            2 * (w + h) - 4,
            self.adjacency
        );
        match &self.lipschitz_witness {
            Some(l) => s += &format!(
                "Lipschitz constant {} (between {} and {}, gap {})\n",
                self.lipschitz_constant, l.a, l.b, l.gap
            ),
            None => s += &format!("Lipschitz constant {}\n", self.lipschitz_constant),
        }
        s += &format!(
            "closest antipodal pair {} / {} with gap {} (bound {})\n",
            self.best_pair.x, self.best_pair.antipode, self.best_pair.gap, self.bound
        );
        s += if self.lipschitz_constant == 0 {
            "constant boundary: bound check skipped\n"
        } else if self.theorem_satisfied {
            "bound holds\n"
        } else {
            "BOUND VIOLATED\n"
        };
        s
    }
}

/// Boundary brightness of `image` as an integer function on `∂B`.
pub fn boundary_brightness(image: &GrayImage, adjacency: BoundaryAdjacency) -> Result<(NBox, GridFunction)> {
    if image.width() < 2 || image.height() < 2 {
        return Err(Error::invalid(format!(
            "image must be at least 2x2, got {}x{}",
            image.width(),
            image.height()
        )));
    }
    let bx = NBox::new(vec![
        (0, image.width() as i64 - 1),
        (0, image.height() as i64 - 1),
    ])?;
    let inv = box_involution(&bx, adjacency.k())?;
    let f = GridFunction::integer(Arc::clone(inv.carrier()), |p| {
        i64::from(image.get(p.coord(0) as usize, p.coord(1) as usize))
    });
    Ok((bx, f))
}

pub fn analyze(image: &GrayImage, adjacency: BoundaryAdjacency) -> Result<AnalysisReport> {
    let (bx, f) = boundary_brightness(image, adjacency)?;
    let inv = box_involution(&bx, adjacency.k())?;
    let lipschitz = f.min_lipschitz()?;
    let best = antipodal_witness_1d(&inv, &f)?;
    let m = lipschitz.constant;
    Ok(AnalysisReport {
        image_size: [image.width(), image.height()],
        adjacency,
        lipschitz_constant: m,
        lipschitz_witness: lipschitz.witness.map(|w| LipschitzPair {
            a: w.a,
            b: w.b,
            gap: w.distance,
        }),
        bound: 2 * m,
        theorem_satisfied: m == 0 || best.distance < 2 * m,
        best_pair: BestPair {
            x: best.point,
            antipode: best.antipode,
            gap: best.distance,
        },
    })
}

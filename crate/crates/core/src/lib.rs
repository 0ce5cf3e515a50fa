//! Digital topology on integer lattices: adjacency relations, digitally
//! continuous and Lipschitz maps, antipodal involutions, and witness searches
//! for the digital intermediate value and Borsuk–Ulam theorems.

pub mod analysis;
pub mod antipode;
pub mod borsuk_ulam;
pub mod error;
pub mod lattice;
pub mod maps;
pub mod pgm;
pub mod regularity;
pub mod verify;

pub use error::{Error, Result};
pub use lattice::{Adjacency, DigitalImage, Point};
pub use maps::GridFunction;

//! Grid homology for links in lens spaces.
//!
//! A twisted toroidal grid diagram for a link in L(p,q) is lifted to a
//! standard toroidal grid for a link in S³; parallelograms, gradings and
//! classical invariants are computed from that lift and pushed back down.

pub mod berge;
pub mod complex;
pub mod corpus;
pub mod cover;
pub mod format;
pub mod grid;
pub mod homology;
pub mod invariants;
pub mod legendrian;
pub mod rational;

pub use complex::{ChainElement, Complex, Parallelogram};
pub use cover::CoverGrid;
pub use grid::{Generator, GridDiagram, GridError};
pub use rational::Q;

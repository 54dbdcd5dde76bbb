//! Construction and exhaustive verification of the slim dense near hexagons
//! `Q(5,2) x L3` (81 points) and `Q(5,2) (x) Q(5,2)` (243 points), together
//! with exact arithmetic in extra-special 2-groups and the non-abelian
//! representations of both hexagons in `2^{1+12}_+` and `2^{1+18}_-`.
//!
//! Module map:
//! - [`fgeom`]: partial linear spaces, distances, convex closure, quads,
//!   near-polygon axioms, spreads, isomorphism search.
//! - [`gmodels`]: the duad and elliptic-quadric models of `Q(5,2)`, the
//!   canonical regular spread, the product hexagon.
//! - [`triples`]: the affine plane on the spread, the determinant map and
//!   admissible-triple checks and equivalences.
//! - [`stheta`]: the 243-point geometry with its nine line families.
//! - [`espgroup`]: extra-special 2-group descriptors and elements.
//! - [`reps`]: the two representations and their verifiers.
//! - [`cli`]: the command-line frontend.

pub mod bitset;
pub mod cli;
pub mod error;
pub mod espgroup;
pub mod fgeom;
pub mod gmodels;
pub mod report;
pub mod reps;
pub mod stheta;
pub mod triples;

pub use error::{Error, Result};

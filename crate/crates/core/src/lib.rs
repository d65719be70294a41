//! Exact-arithmetic verification engine for the Harder-Narasimhan
//! filtration of the normal bundle of trigonal canonical curves, together
//! with the tetragonal genus-6 analysis.
//!
//! The crate is organized around the computation, not the geometry: exact
//! rationals and polynomial identities (`exact`), intersection lattices on
//! the relevant rational surfaces (`surfaces`), splitting types of bundles
//! on the projective line via graded linear algebra (`pbundle`), a seeded
//! generic-position oracle (`genpos`), the adjusted-slope destabilizer
//! search on the nodal degeneration (`nodal`), the per-genus report
//! pipeline (`trigonal`), and the genus-6 tables (`genus6`). All arithmetic
//! is exact; no floating point appears anywhere.

pub mod error;
pub mod exact;
pub mod genpos;
pub mod genus6;
pub mod linalg;
pub mod nodal;
pub mod pbundle;
pub mod surfaces;
pub mod trigonal;

pub use error::{Error, Result};
pub use exact::{poly_identity_check, rat, Int, Rational, UniPoly};
pub use genpos::{GenericConfig, Subspace};
pub use nodal::{DegenerationData, StabilityReport, SubbundleCandidate};
pub use pbundle::{BinaryForm, GradedMap, ParityModel, SplitBundle};
pub use surfaces::{DivisorClass, IntersectionLattice};
pub use trigonal::{FiltrationStep, HNReport};

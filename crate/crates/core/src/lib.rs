//! Plane-geometry kernel for Miquel–Steiner points of a triangle.
//!
//! Given a triangle `ABC` and two cevians `B·B_A`, `C·C_A`, the circumcircles
//! of `ABB_A`, `ACC_A`, `CB_AN_A` and `BC_AN_A` (with `N_A` the cevian
//! intersection) meet in a single point `M_A`. This crate computes that map
//! and its inverse, the region of Miquel points reachable with internal
//! cevians, the auxiliary circles and Brocard objects attached to it, and
//! the coincidences with classical triangle centres.

pub mod error;
pub mod geom;
pub mod brocard;
pub mod centers;
pub mod locus;
pub mod miquel;
pub mod special;
pub mod symmedian;

pub use error::{Error, Result};
pub use geom::{Circle, Line, Point, Tolerance, Triangle, Vertex};
pub use miquel::{CevianKind, CevianPair, MiquelConfiguration};

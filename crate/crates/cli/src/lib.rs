//! Command-line front end: scene files, reports, sweeps, property checks and
//! SVG figures built on `miquel-core`.

pub mod check;
pub mod format;
pub mod report;
pub mod sample;
pub mod scene;
pub mod sweep;
pub mod svg;

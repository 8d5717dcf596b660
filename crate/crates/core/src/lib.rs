//! Homotopy, homology and persistence for finite closure spaces.
//!
//! A finite closure space is a reflexive relation on a finite set. This crate
//! builds such spaces (directly, from metrics, weighted digraphs or sublevel
//! functions), compares maps up to interval-based homotopy, computes cubical
//! and simplicial singular homology, and runs the persistence pipeline with
//! bottleneck and Gromov–Hausdorff comparisons.

pub mod complexes;
pub mod constructions;
pub mod error;
pub mod filtration;
pub mod hom;
pub mod homology;
pub mod homotopy;
pub mod interval;
pub mod io;
pub mod linalg;
pub mod maps;
pub mod persistence;
pub mod point;
pub mod space;

pub use constructions::{coequalizer, coproduct, product, pushout, ProductKind};
pub use error::{Error, Result};
pub use interval::{interval, IntervalFamily, IntervalSpec};
pub use maps::ContinuousMap;
pub use point::PointId;
pub use space::{is_continuous, ClosureSpace, PointSet};

//! Salient-set invariant of stacked curve diagrams.
//!
//! A stacked diagram is a cyclically ordered family of simple closed curves on
//! a closed oriented surface, encoded as a combinatorial map. From it we build
//! the integer grading system (one equation per face per labeling), solve it
//! exactly, and project the solution set onto the salient chords.

pub mod lattice;
pub mod diagram;
pub mod grading;
pub mod moves;
pub mod curves;
pub mod salient;

pub use curves::{CurveFile, PlCurve, PlanarModel};
pub use diagram::{parse_diagram, Chord, Corner, Dart, Direction, Labeling, Passage, StackedDiagram};
pub use lattice::{AffineLattice, IntMatrix, ModulusConstraint};
pub use salient::{compare, salient_set, SalientSet};

//! Rectilinear curves on a planar model of a closed surface.
//!
//! The surface is a rectangle (its outside capped by a disk) with rectangular
//! holes glued in pairs by reflection. Curves are closed axis-parallel
//! polylines with exact rational coordinates that may pass through the glued
//! holes.

mod arrangement;
mod complex;
mod format;
pub mod geom;
mod model;
pub mod pseudo;
mod plcurve;
mod respace;
pub mod sample;
mod tube;
mod twist;

pub use arrangement::{crossing_points, intersection_count, to_stacked_diagram, CurveCrossing, Embedded};
pub use complex::{find_bigons, minimal_position, minimal_position_seeded, Bigon};
pub use format::{parse_curve_file, CurveFile};
pub use geom::{Point, Seg, Q};
pub use model::{HolePair, HoleSide, Mirror, PlanarModel, Rect, Side};
pub use plcurve::{PlCurve, Vertex};
pub use respace::respace;
pub use tube::{find_transversal_arc, tube_substitute, Tube};
pub use twist::{apply_word, clearance, dehn_twist, twist_joint, TwistLetter, TwistWord};

use crate::diagram::DiagramError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CurveError {
    #[error("invalid model: {0}")]
    Model(String),
    #[error("curve {curve}: {message}")]
    Curve { curve: String, message: String },
    #[error("curves {a} and {b} are not transverse near {at}")]
    NotTransverse { a: String, b: String, at: String },
    #[error("triple point at {0}")]
    TriplePoint(String),
    #[error("curve {0} crosses no other curve")]
    CrossingFree(String),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unknown curve `{0}`")]
    UnknownCurve(String),
    #[error("twist word: {0}")]
    Word(String),
    #[error("no transversal arc meets each of the listed curves exactly once")]
    ArcNotFound,
    #[error("arc crosses curve {curve} {count} times")]
    ArcCrossings { curve: String, count: usize },
    #[error("curves do not fill the surface: model genus {model}, diagram genus {diagram}")]
    NotFilling { model: usize, diagram: usize },
    #[error("cell complex of the model has Euler characteristic {found}, expected {expected}")]
    Topology { expected: i64, found: i64 },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

//! Decides whether a plane algebraic curve of genus at least three is
//! trigonal and, when it is, constructs and verifies a degree-3 map to the
//! projective line.

mod error;
pub mod exactmath;
pub mod poly;
pub mod curve;
pub mod canonical;
pub mod liealg;
pub mod scroll;
pub mod pipeline;
pub mod bench;

pub use error::{Error, Result};
pub use exactmath::{FieldKind, Mat, Scalar};
pub use curve::{PlaneCurve, ProjPoint, SingularPoint};
pub use poly::{MPoly, UPoly};

pub mod curve;
pub mod distance;
pub mod error;
pub mod geometry;
pub mod io;
pub mod predicates;
pub mod range;
pub mod synth;
pub mod vc_lab;

pub use curve::Curve;
pub use distance::Measure;
pub use error::{Error, Result};
pub use geometry::{Point, Segment};
pub use range::{Dataset, RangeQuery, SampleSpec};

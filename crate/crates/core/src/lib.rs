//! Symbolic intersection theory for tangent-line skewness of projective curves.
//!
//! Chow rings of Grassmannians, formal Chern-class algebra, the blowup of
//! `Gr × Gr` along the diagonal, and the numerical pipelines that turn those
//! into counts of pairs of meeting tangent lines.

pub mod error;
pub mod param;
pub mod blowup;
pub mod bundles;
pub mod numerics;
pub mod pipeline;
pub mod quotient;
pub mod schubert;

pub use error::{Error, Result};
pub use param::ParamPoly;

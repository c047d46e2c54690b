//! Quasimonotonicity and quasithreshold functionals of graphs and step
//! kernels, with cut and L¹ norms, exact small-scale optimizers and seeded
//! samplers.

pub mod error;
pub mod experiment;
pub mod functionals;
pub mod graph;
pub mod io;
pub mod kernel;
pub mod limits;
pub mod norms;
pub mod quasithreshold;
pub mod report;
pub mod sampling;
pub mod suites;

pub use error::{Error, Result};
pub use graph::{CreationSequence, Graph, VertexOrder, VertexSet};
pub use limits::Limits;
pub use report::{BoundKind, EditReport, FunctionalReport, NormReport, Rational, Value};

//! Group loading, verification pipelines and reports behind the
//! `eigenspace` command.

pub mod pipeline;
pub mod report;
pub mod sampling;
pub mod source;

pub use pipeline::{run, Options, Stage};
pub use report::Report;
pub use source::{GroupSource, SourceError};

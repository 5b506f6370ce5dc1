//! Surface documents on disk, OBJ export, continuity reports and the
//! command implementations behind the `fourpatch` binary.

mod commands;
mod document;
mod format;
mod obj;
mod report;

pub use commands::{
    complete_corner_document, fill_hole_document, fillet_document, hole_ring_from_document,
    CommandError, CornerMode, CornerOptions, HoleOptions, EXIT_DISCONTINUOUS, EXIT_OK, EXIT_USAGE,
};
pub use document::{
    load_surface, save_surface, EdgeRecord, PatchRecord, SurfaceDocument, VertexRecord,
    FORMAT_VERSION,
};
pub use format::{g17, to_json_string, DocFormatter};
pub use obj::{export_obj, write_obj};
pub use report::{
    check_document, render_table, Continuity, EdgeEntry, ReportDocument, VertexEntry,
};

use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IoError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}: invalid document at '{field}': {message}")]
    Parse {
        path: String,
        field: String,
        message: String,
    },
    #[error("{0}")]
    Schema(String),
}

impl IoError {
    pub(crate) fn io(path: &Path, e: std::io::Error) -> Self {
        IoError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        }
    }
}

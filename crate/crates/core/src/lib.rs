//! Detection and removal of bloated dependencies in Maven-style projects.
//!
//! The pipeline: [`resolve::resolve_tree`] builds the dependency tree,
//! [`classfile`] extracts constant-pool references from every archive,
//! [`usage::used_dependencies`] propagates usage down tree paths,
//! [`usage::classify`] assigns the six usage labels and [`usage::debloat`]
//! plans manifest edits that [`manifest::write_debloated_manifest`] applies.

pub mod classfile;
pub mod cli;
pub mod manifest;
pub mod metrics;
pub mod model;
pub mod repo;
pub mod report;
pub mod resolve;
pub mod usage;

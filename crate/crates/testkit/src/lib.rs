//! Builders for test inputs: class files, jars, POMs and whole local
//! repositories, plus a seeded generator of random repositories with a
//! reference-chain oracle.

use std::path::PathBuf;

pub mod classfile;
pub mod random;
pub mod repo;
pub mod undertow;

pub use classfile::ClassBuilder;
pub use random::{GenArtifact, GenRepo};
pub use repo::{jar_bytes, Dep, Pom, RepoBuilder};

/// The checked-in fixtures directory.
pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

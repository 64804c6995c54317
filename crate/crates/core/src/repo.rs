//! Maven-layout local repository access and the class-name index.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io::{Cursor, Read};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::classfile::{scan_archive, ClassSummary, EntryWarning};
use crate::manifest::{parse_manifest, Manifest, ManifestError};
use crate::model::Coordinate;

#[derive(Debug, Error)]
pub enum RepoError {
    #[error("artifact {coordinate} not found: missing {}", path.display())]
    ArtifactNotFound {
        coordinate: Coordinate,
        path: PathBuf,
    },
    #[error("invalid manifest {}: {source}", path.display())]
    Manifest {
        path: PathBuf,
        #[source]
        source: ManifestError,
    },
    #[error("unreadable archive {}: {message}", path.display())]
    Archive { path: PathBuf, message: String },
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// `group/as/dirs/artifact/version/artifact-version<suffix>`
pub fn artifact_path(c: &Coordinate, suffix: &str) -> PathBuf {
    let mut p: PathBuf = c.group.split('.').collect();
    p.push(&c.artifact);
    p.push(&c.version);
    p.push(format!("{}-{}{}", c.artifact, c.version, suffix));
    p
}

/// A loaded artifact: its manifest and the classes of its archive.
#[derive(Debug, Clone)]
pub struct ArtifactBundle {
    pub coordinate: Coordinate,
    pub manifest: Manifest,
    pub classes: Vec<ClassSummary>,
    /// Class entries that failed to parse.
    pub warnings: Vec<EntryWarning>,
}

fn read(path: &Path) -> Result<Vec<u8>, RepoError> {
    fs::read(path).map_err(|source| RepoError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn read_manifest(path: &Path) -> Result<Manifest, RepoError> {
    parse_manifest(&read(path)?).map_err(|source| RepoError::Manifest {
        path: path.to_path_buf(),
        source,
    })
}

/// All entries of a ZIP archive in stored order, directories skipped.
pub fn read_archive(path: &Path) -> Result<Vec<(String, Vec<u8>)>, RepoError> {
    let bytes = read(path)?;
    let archive_err = |e: &dyn std::fmt::Display| RepoError::Archive {
        path: path.to_path_buf(),
        message: e.to_string(),
    };
    let mut zip = zip::ZipArchive::new(Cursor::new(bytes)).map_err(|e| archive_err(&e))?;
    let mut entries = Vec::with_capacity(zip.len());
    for i in 0..zip.len() {
        let mut file = zip.by_index(i).map_err(|e| archive_err(&e))?;
        if file.is_dir() {
            continue;
        }
        let mut data = Vec::with_capacity(file.size() as usize);
        file.read_to_end(&mut data).map_err(|e| archive_err(&e))?;
        entries.push((file.name().to_string(), data));
    }
    Ok(entries)
}

/// Every `.class` file under `dir`, as archive-style entries.
fn read_class_dir(dir: &Path) -> Result<Vec<(String, Vec<u8>)>, RepoError> {
    let mut entries = Vec::new();
    for e in walkdir::WalkDir::new(dir).sort_by_file_name() {
        let e = e.map_err(|e| RepoError::Io {
            path: dir.to_path_buf(),
            source: e.into(),
        })?;
        if e.file_type().is_file() {
            let rel = e.path().strip_prefix(dir).expect("walk stays under dir");
            let name = rel
                .components()
                .map(|c| c.as_os_str().to_string_lossy())
                .collect::<Vec<_>>()
                .join("/");
            entries.push((name, read(e.path())?));
        }
    }
    Ok(entries)
}

fn bundle(
    coordinate: Coordinate,
    manifest: Manifest,
    entries: &[(String, Vec<u8>)],
) -> ArtifactBundle {
    let scan = scan_archive(entries);
    ArtifactBundle {
        coordinate,
        manifest,
        classes: scan.classes,
        warnings: scan.warnings,
    }
}

/// Loads the manifest and archive of `c` from a repository directory.
pub fn load_artifact(repo_root: &Path, c: &Coordinate) -> Result<ArtifactBundle, RepoError> {
    let pom = repo_root.join(artifact_path(c, ".pom"));
    if !pom.is_file() {
        return Err(RepoError::ArtifactNotFound {
            coordinate: c.clone(),
            path: pom,
        });
    }
    let manifest = read_manifest(&pom)?;
    if manifest.packaging == "pom" {
        return Ok(bundle(c.clone(), manifest, &[]));
    }
    let jar = repo_root.join(artifact_path(c, ".jar"));
    if !jar.is_file() {
        return Err(RepoError::ArtifactNotFound {
            coordinate: c.clone(),
            path: jar,
        });
    }
    Ok(bundle(c.clone(), manifest, &read_archive(&jar)?))
}

/// Loads the project described by `pom`. Classes come from
/// `target/classes` next to it, else `target/<artifact>-<version>.jar`, else
/// a jar with the POM's file stem in the same directory.
pub fn load_project(pom: &Path) -> Result<ArtifactBundle, RepoError> {
    let manifest = read_manifest(pom)?;
    let coordinate = manifest.coordinate.clone();
    if manifest.packaging == "pom" {
        return Ok(bundle(coordinate, manifest, &[]));
    }
    let dir = pom.parent().unwrap_or(Path::new("."));
    let classes = dir.join("target").join("classes");
    if classes.is_dir() {
        let entries = read_class_dir(&classes)?;
        return Ok(bundle(coordinate, manifest, &entries));
    }
    let built = dir.join("target").join(format!(
        "{}-{}.jar",
        coordinate.artifact, coordinate.version
    ));
    let sibling = pom.with_extension("jar");
    for jar in [built, sibling] {
        if jar.is_file() {
            let entries = read_archive(&jar)?;
            return Ok(bundle(coordinate, manifest, &entries));
        }
    }
    Err(RepoError::ArtifactNotFound {
        coordinate,
        path: classes,
    })
}

/// Repository handle with a manifest cache, shareable across threads.
#[derive(Debug)]
pub struct LocalRepository {
    root: PathBuf,
    manifests: Mutex<HashMap<Coordinate, Arc<Manifest>>>,
}

impl LocalRepository {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        LocalRepository {
            root: root.into(),
            manifests: Mutex::new(HashMap::new()),
        }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn manifest(&self, c: &Coordinate) -> Result<Arc<Manifest>, RepoError> {
        if let Some(m) = self.manifests.lock().expect("cache lock").get(c) {
            return Ok(Arc::clone(m));
        }
        let pom = self.root.join(artifact_path(c, ".pom"));
        if !pom.is_file() {
            return Err(RepoError::ArtifactNotFound {
                coordinate: c.clone(),
                path: pom,
            });
        }
        let m = Arc::new(read_manifest(&pom)?);
        self.manifests
            .lock()
            .expect("cache lock")
            .insert(c.clone(), Arc::clone(&m));
        Ok(m)
    }

    pub fn load_artifact(&self, c: &Coordinate) -> Result<ArtifactBundle, RepoError> {
        load_artifact(&self.root, c)
    }
}

/// Class name to providing artifact, first provider in classpath order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClassIndex {
    pub mapping: BTreeMap<String, Coordinate>,
    /// Definitions shadowed by an earlier bundle.
    pub duplicates: Vec<(String, Coordinate)>,
}

impl ClassIndex {
    pub fn provider(&self, class: &str) -> Option<&Coordinate> {
        self.mapping.get(class)
    }
}

pub fn build_class_index<'a>(bundles: impl IntoIterator<Item = &'a ArtifactBundle>) -> ClassIndex {
    let mut index = ClassIndex::default();
    for b in bundles {
        for c in &b.classes {
            if index.mapping.contains_key(&c.name) {
                index
                    .duplicates
                    .push((c.name.clone(), b.coordinate.clone()));
            } else {
                index.mapping.insert(c.name.clone(), b.coordinate.clone());
            }
        }
    }
    index
}

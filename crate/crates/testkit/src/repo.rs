//! POM text, jar archives and Maven-layout repositories on disk.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use zip::write::SimpleFileOptions;

use crate::classfile::ClassBuilder;

/// One `<dependency>` element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dep {
    pub group: String,
    pub artifact: String,
    pub version: Option<String>,
    pub scope: Option<String>,
    pub optional: bool,
    pub exclusions: Vec<(String, String)>,
}

impl Dep {
    pub fn new(group: &str, artifact: &str, version: &str) -> Self {
        Dep {
            group: group.to_string(),
            artifact: artifact.to_string(),
            version: Some(version.to_string()),
            scope: None,
            optional: false,
            exclusions: Vec::new(),
        }
    }

    pub fn scope(mut self, scope: &str) -> Self {
        self.scope = Some(scope.to_string());
        self
    }

    pub fn optional(mut self) -> Self {
        self.optional = true;
        self
    }

    pub fn exclude(mut self, group: &str, artifact: &str) -> Self {
        self.exclusions
            .push((group.to_string(), artifact.to_string()));
        self
    }
}

/// Writes POM XML.
#[derive(Debug, Clone)]
pub struct Pom {
    pub group: String,
    pub artifact: String,
    pub version: String,
    pub packaging: Option<String>,
    pub parent: Option<(String, String, String)>,
    pub deps: Vec<Dep>,
    pub modules: Vec<String>,
}

impl Pom {
    pub fn new(group: &str, artifact: &str, version: &str) -> Self {
        Pom {
            group: group.to_string(),
            artifact: artifact.to_string(),
            version: version.to_string(),
            packaging: None,
            parent: None,
            deps: Vec::new(),
            modules: Vec::new(),
        }
    }

    pub fn packaging(mut self, p: &str) -> Self {
        self.packaging = Some(p.to_string());
        self
    }

    pub fn parent(mut self, group: &str, artifact: &str, version: &str) -> Self {
        self.parent = Some((group.to_string(), artifact.to_string(), version.to_string()));
        self
    }

    pub fn dep(mut self, d: Dep) -> Self {
        self.deps.push(d);
        self
    }

    pub fn module(mut self, m: &str) -> Self {
        self.modules.push(m.to_string());
        self
    }

    pub fn to_xml(&self) -> String {
        let mut s = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        s.push_str("<project xmlns=\"http://maven.apache.org/POM/4.0.0\">\n");
        s.push_str("  <modelVersion>4.0.0</modelVersion>\n");
        if let Some((g, a, v)) = &self.parent {
            let _ = writeln!(
                s,
                "  <parent>\n    <groupId>{g}</groupId>\n    <artifactId>{a}</artifactId>\n    <version>{v}</version>\n  </parent>"
            );
        }
        let _ = writeln!(s, "  <groupId>{}</groupId>", self.group);
        let _ = writeln!(s, "  <artifactId>{}</artifactId>", self.artifact);
        let _ = writeln!(s, "  <version>{}</version>", self.version);
        if let Some(p) = &self.packaging {
            let _ = writeln!(s, "  <packaging>{p}</packaging>");
        }
        if !self.modules.is_empty() {
            s.push_str("  <modules>\n");
            for m in &self.modules {
                let _ = writeln!(s, "    <module>{m}</module>");
            }
            s.push_str("  </modules>\n");
        }
        s.push_str("  <dependencies>\n");
        for d in &self.deps {
            s.push_str("    <dependency>\n");
            let _ = writeln!(s, "      <groupId>{}</groupId>", d.group);
            let _ = writeln!(s, "      <artifactId>{}</artifactId>", d.artifact);
            if let Some(v) = &d.version {
                let _ = writeln!(s, "      <version>{v}</version>");
            }
            if let Some(sc) = &d.scope {
                let _ = writeln!(s, "      <scope>{sc}</scope>");
            }
            if d.optional {
                s.push_str("      <optional>true</optional>\n");
            }
            if !d.exclusions.is_empty() {
                s.push_str("      <exclusions>\n");
                for (g, a) in &d.exclusions {
                    let _ = writeln!(
                        s,
                        "        <exclusion>\n          <groupId>{g}</groupId>\n          <artifactId>{a}</artifactId>\n        </exclusion>"
                    );
                }
                s.push_str("      </exclusions>\n");
            }
            s.push_str("    </dependency>\n");
        }
        s.push_str("  </dependencies>\n</project>\n");
        s
    }
}

/// Zip archive of `(entry name, bytes)` pairs.
pub fn jar_bytes(entries: &[(String, Vec<u8>)]) -> Vec<u8> {
    let mut w = zip::ZipWriter::new(std::io::Cursor::new(Vec::new()));
    let opts = SimpleFileOptions::default().compression_method(zip::CompressionMethod::Deflated);
    for (name, bytes) in entries {
        w.start_file(name.as_str(), opts).expect("zip entry");
        w.write_all(bytes).expect("zip write");
    }
    w.finish().expect("zip finish").into_inner()
}

fn class_entries(classes: &[ClassBuilder]) -> Vec<(String, Vec<u8>)> {
    classes
        .iter()
        .map(|c| (c.entry_name(), c.build()))
        .collect()
}

/// Maven-layout repository under a directory.
#[derive(Debug, Clone)]
pub struct RepoBuilder {
    pub root: PathBuf,
}

impl RepoBuilder {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        let root = root.into();
        fs::create_dir_all(&root).expect("create repo root");
        RepoBuilder { root }
    }

    fn dir(&self, group: &str, artifact: &str, version: &str) -> PathBuf {
        let mut p = self.root.clone();
        p.extend(group.split('.'));
        p.push(artifact);
        p.push(version);
        p
    }

    /// Writes the POM and, unless packaging is `pom`, a jar of `classes`.
    pub fn add(&self, pom: &Pom, classes: &[ClassBuilder]) -> PathBuf {
        let dir = self.dir(&pom.group, &pom.artifact, &pom.version);
        fs::create_dir_all(&dir).expect("create artifact dir");
        let stem = format!("{}-{}", pom.artifact, pom.version);
        let pom_path = dir.join(format!("{stem}.pom"));
        fs::write(&pom_path, pom.to_xml()).expect("write pom");
        if pom.packaging.as_deref() != Some("pom") {
            fs::write(
                dir.join(format!("{stem}.jar")),
                jar_bytes(&class_entries(classes)),
            )
            .expect("write jar");
        }
        pom_path
    }

    /// Writes a project checkout: `pom.xml` plus `target/classes`.
    pub fn add_project(dir: &Path, pom: &Pom, classes: &[ClassBuilder]) -> PathBuf {
        let out = dir.join("target").join("classes");
        fs::create_dir_all(&out).expect("create classes dir");
        for (name, bytes) in class_entries(classes) {
            let p = out.join(name);
            fs::create_dir_all(p.parent().expect("entry has a parent"))
                .expect("create package dir");
            fs::write(p, bytes).expect("write class");
        }
        let pom_path = dir.join("pom.xml");
        fs::write(&pom_path, pom.to_xml()).expect("write pom");
        pom_path
    }
}

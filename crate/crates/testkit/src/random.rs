//! Seeded random repositories together with the reference graph they encode.
//!
//! Class names are unique per GA (`gen.a3.C7`), and a GA's versions share
//! names, so the provider of a class on any resolved classpath is the single
//! node of that GA. References are recorded here as written, independently
//! of any class-file parser.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::classfile::ClassBuilder;
use crate::repo::{Dep, Pom, RepoBuilder};

pub const MAX_ARTIFACTS: usize = 8;
pub const MAX_CLASSES: usize = 10;

/// `(group, artifact, version)`.
pub type Gav = (String, String, String);

#[derive(Debug, Clone)]
pub struct GenArtifact {
    pub pom: Pom,
    pub classes: Vec<ClassBuilder>,
    /// Class name to every class name it references, platform and missing
    /// names included.
    pub refs: BTreeMap<String, BTreeSet<String>>,
}

impl GenArtifact {
    pub fn gav(&self) -> Gav {
        (
            self.pom.group.clone(),
            self.pom.artifact.clone(),
            self.pom.version.clone(),
        )
    }

    pub fn defines(&self, class: &str) -> bool {
        self.refs.contains_key(class)
    }
}

#[derive(Debug, Clone)]
pub struct GenRepo {
    pub seed: u64,
    pub project: GenArtifact,
    pub parent: Option<GenArtifact>,
    /// Dependency artifacts; at most one per GA and version.
    pub artifacts: Vec<GenArtifact>,
}

const PLATFORM: [&str; 4] = [
    "java.util.List",
    "java.lang.String",
    "javax.inject.Inject",
    "java.io.File",
];

fn is_platform(name: &str) -> bool {
    ["java.", "javax.", "jdk.", "sun."]
        .iter()
        .any(|p| name.starts_with(p))
}

fn ga_name(k: usize) -> (String, String) {
    (format!("gen.g{k}"), format!("a{k}"))
}

fn class_name(pkg: &str, j: usize) -> String {
    format!("gen.{pkg}.C{j}")
}

/// Writes one class with random references to `targets`.
fn gen_class(rng: &mut StdRng, name: &str, targets: &[String]) -> (ClassBuilder, BTreeSet<String>) {
    let mut b = ClassBuilder::new(name);
    let mut refs = BTreeSet::new();
    let mut extended = false;
    for _ in 0..rng.gen_range(0..=4) {
        let t = if rng.gen_bool(0.15) {
            PLATFORM.choose(rng).expect("non-empty").to_string()
        } else if rng.gen_bool(0.08) {
            format!("gen.missing.M{}", rng.gen_range(0..3))
        } else {
            targets.choose(rng).expect("non-empty").clone()
        };
        if t == name {
            continue;
        }
        let slashed = t.replace('.', "/");
        b = match rng.gen_range(0..8) {
            0 if !extended => {
                extended = true;
                b.extends(&t)
            }
            0 | 1 => b.class_ref(&t),
            2 => b.method_ref(&t, "run", "()V"),
            3 => b.field_ref(&t, "value", "I"),
            4 => b.string(&t),
            5 => b.annotation(&t),
            6 => b.implements(&t),
            _ => b.method_ref("java.lang.Object", "accept", &format!("([L{slashed};)V")),
        };
        refs.insert(t);
    }
    (b, refs)
}

fn gen_artifact(
    rng: &mut StdRng,
    pom: Pom,
    pkg: &str,
    n_classes: usize,
    targets: &[String],
) -> GenArtifact {
    let mut classes = Vec::new();
    let mut refs = BTreeMap::new();
    for j in 0..n_classes {
        let name = class_name(pkg, j);
        let (b, r) = gen_class(rng, &name, targets);
        classes.push(b);
        refs.insert(name, r);
    }
    GenArtifact { pom, classes, refs }
}

fn random_dep(rng: &mut StdRng, k: usize, versions: &[String], n_ga: usize) -> Dep {
    let (g, a) = ga_name(k);
    let mut d = Dep::new(&g, &a, versions.choose(rng).expect("a version"));
    if rng.gen_bool(0.15) {
        d = d.scope(
            ["test", "provided", "runtime"]
                .choose(rng)
                .expect("non-empty"),
        );
    }
    if rng.gen_bool(0.1) {
        d = d.optional();
    }
    if rng.gen_bool(0.15) {
        let (eg, ea) = ga_name(rng.gen_range(0..n_ga));
        d = d.exclude(&eg, &ea);
    }
    d
}

impl GenRepo {
    pub fn generate(seed: u64) -> GenRepo {
        let mut rng = StdRng::seed_from_u64(seed);
        let n_ga = rng.gen_range(1..=6);
        // (GA index, versions); total jars including the project stay <= MAX_ARTIFACTS
        let mut budget = MAX_ARTIFACTS - 1 - n_ga;
        let mut versions: Vec<Vec<String>> = Vec::new();
        let mut sizes: Vec<usize> = Vec::new();
        for _ in 0..n_ga {
            let mut vs = vec!["1.0".to_string()];
            if budget > 0 && rng.gen_bool(0.3) {
                vs.push("2.0".to_string());
                budget -= 1;
            }
            versions.push(vs);
            sizes.push(rng.gen_range(1..=MAX_CLASSES));
        }
        let root_size = rng.gen_range(1..=MAX_CLASSES);

        let mut targets: Vec<String> = (0..root_size).map(|j| class_name("root", j)).collect();
        for (k, &n) in sizes.iter().enumerate() {
            targets.extend((0..n).map(|j| class_name(&format!("a{k}"), j)));
        }

        let mut artifacts = Vec::new();
        for k in 0..n_ga {
            let (g, a) = ga_name(k);
            for v in &versions[k] {
                let mut pom = Pom::new(&g, &a, v);
                let mut others: Vec<usize> = (0..n_ga).filter(|&o| o != k).collect();
                others.shuffle(&mut rng);
                for &o in others.iter().take(rng.gen_range(0..=3)) {
                    pom = pom.dep(random_dep(&mut rng, o, &versions[o], n_ga));
                }
                // the second version may lose classes, leaving dangling references
                let n = if v == "1.0" {
                    sizes[k]
                } else {
                    sizes[k] - rng.gen_range(0..sizes[k]).min(1)
                };
                artifacts.push(gen_artifact(&mut rng, pom, &format!("a{k}"), n, &targets));
            }
        }

        let mut order: Vec<usize> = (0..n_ga).collect();
        order.shuffle(&mut rng);
        let n_direct = rng.gen_range(1..=n_ga.min(4));
        let mut project_pom = Pom::new("gen.root", "project", "1.0");
        for &k in &order[..n_direct] {
            let mut d = random_dep(&mut rng, k, &versions[k], n_ga);
            d.optional = false;
            if d.scope.as_deref() == Some("runtime") {
                d.scope = None;
            }
            project_pom = project_pom.dep(d);
        }

        let parent = if rng.gen_bool(0.3) {
            let mut pom = Pom::new("gen.root", "parent", "1.0").packaging("pom");
            for &k in order.iter().skip(n_direct.saturating_sub(1)).take(2) {
                let (g, a) = ga_name(k);
                pom = pom.dep(Dep::new(
                    &g,
                    &a,
                    versions[k].choose(&mut rng).expect("a version"),
                ));
            }
            project_pom = project_pom.parent("gen.root", "parent", "1.0");
            Some(GenArtifact {
                pom,
                classes: Vec::new(),
                refs: BTreeMap::new(),
            })
        } else {
            None
        };
        let project = gen_artifact(&mut rng, project_pom, "root", root_size, &targets);
        GenRepo {
            seed,
            project,
            parent,
            artifacts,
        }
    }

    /// Writes the repository to `dir/repo` and the project checkout to
    /// `dir/project`; returns the project's `pom.xml`.
    pub fn write(&self, dir: &Path) -> PathBuf {
        let repo = RepoBuilder::new(dir.join("repo"));
        if let Some(p) = &self.parent {
            repo.add(&p.pom, &[]);
        }
        for a in &self.artifacts {
            repo.add(&a.pom, &a.classes);
        }
        RepoBuilder::add_project(
            &dir.join("project"),
            &self.project.pom,
            &self.project.classes,
        )
    }

    pub fn repo_dir(dir: &Path) -> PathBuf {
        dir.join("repo")
    }

    /// The same repository with every exclusion dropped and only version
    /// 1.0 of each GA kept.
    pub fn simplified(&self) -> GenRepo {
        let strip = |a: &GenArtifact| {
            let mut a = a.clone();
            for d in &mut a.pom.deps {
                d.exclusions.clear();
                d.version = Some("1.0".to_string());
            }
            a
        };
        GenRepo {
            seed: self.seed,
            project: strip(&self.project),
            parent: self.parent.as_ref().map(strip),
            artifacts: self
                .artifacts
                .iter()
                .filter(|a| a.pom.version == "1.0")
                .map(strip)
                .collect(),
        }
    }

    pub fn artifact(&self, gav: &Gav) -> Option<&GenArtifact> {
        self.artifacts.iter().find(|a| &a.gav() == gav)
    }

    /// Classes of the last element of `path` reachable from the project's
    /// classes by a reference chain that walks `path` in order: every step
    /// stays in the current artifact or enters the next one.
    ///
    /// `path` lists the tree path below the root, nearest first.
    pub fn chain_oracle(&self, path: &[Gav]) -> BTreeSet<String> {
        let arts: Vec<&GenArtifact> = path
            .iter()
            .map(|g| self.artifact(g).expect("path artifact exists"))
            .collect();
        let at = |pos: usize| {
            if pos == 0 {
                &self.project
            } else {
                arts[pos - 1]
            }
        };
        let mut seen: BTreeSet<(usize, String)> = BTreeSet::new();
        let mut stack: Vec<(usize, String)> =
            self.project.refs.keys().map(|c| (0, c.clone())).collect();
        while let Some((pos, class)) = stack.pop() {
            if !seen.insert((pos, class.clone())) {
                continue;
            }
            let Some(targets) = at(pos).refs.get(&class) else {
                continue;
            };
            for t in targets.iter().filter(|t| !is_platform(t)) {
                if pos > 0 && at(pos).defines(t) {
                    stack.push((pos, t.clone()));
                }
                if pos < arts.len() && at(pos + 1).defines(t) {
                    stack.push((pos + 1, t.clone()));
                }
            }
        }
        seen.into_iter()
            .filter(|(p, _)| *p == arts.len())
            .map(|(_, c)| c)
            .collect()
    }
}

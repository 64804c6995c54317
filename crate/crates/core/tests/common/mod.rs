#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use debloat::manifest::apply_actions;
use debloat::model::{is_platform_class, Coordinate, Ga, RefKind};
use debloat::repo::{build_class_index, load_project, ArtifactBundle, LocalRepository};
use debloat::resolve::resolve_tree;
use debloat::usage::{analyze, debloat, AnalysisConfig, AnalysisError, Classpath, UsageReport};
use debloat_testkit::fixtures_dir;

pub fn jxls_dir() -> PathBuf {
    fixtures_dir().join("jxls")
}

pub fn jxls() -> (ArtifactBundle, LocalRepository) {
    let dir = jxls_dir();
    (
        load_project(&dir.join("project/pom.xml")).unwrap(),
        LocalRepository::new(dir.join("repo")),
    )
}

/// Project and repository written by a testkit generator into `dir`.
pub fn open(dir: &Path, pom: &Path) -> (ArtifactBundle, LocalRepository) {
    (
        load_project(pom).unwrap(),
        LocalRepository::new(dir.join("repo")),
    )
}

pub fn ga(s: &str) -> Ga {
    s.parse().unwrap()
}

pub fn gas<'a>(it: impl IntoIterator<Item = &'a str>) -> BTreeSet<Ga> {
    it.into_iter().map(ga).collect()
}

pub fn labelled(r: &UsageReport, code: &str) -> BTreeSet<Ga> {
    r.usages
        .iter()
        .filter(|u| u.label.code() == code)
        .map(|u| u.ga.clone())
        .collect()
}

fn bundles(repo: &LocalRepository, coords: &[Coordinate]) -> Vec<ArtifactBundle> {
    coords
        .iter()
        .map(|c| repo.load_artifact(c).unwrap())
        .collect()
}

/// Debloats `project`, applies the planned actions, re-resolves, and returns
/// the retained references that no longer resolve together with the report.
///
/// Retained references are the non-platform, non-string references of the
/// root classes and of every used part that resolved before debloating.
pub fn broken_after_debloat(
    project: &ArtifactBundle,
    repo: &LocalRepository,
    config: &AnalysisConfig,
) -> Result<(Vec<String>, UsageReport), AnalysisError> {
    let before = analyze(project, repo, config)?;
    let report = debloat(project, repo, config)?;
    let deps = bundles(repo, &before.tree.classpath());
    let cp = Classpath::new(project, deps.iter());
    let mut sources = vec![cp.root_classes()];
    sources.extend(before.used.parts.values().cloned());
    let mut retained = BTreeSet::new();
    for set in &sources {
        for class in &set.classes {
            let summary = cp
                .summary(&set.owner, class)
                .expect("used classes are defined");
            for r in &summary.refs {
                if r.kind != RefKind::StringLiteral
                    && !is_platform_class(&r.owner)
                    && cp.index().provider(&r.owner).is_some()
                {
                    retained.insert(r.owner.clone());
                }
            }
        }
    }
    let m = apply_actions(&project.manifest, &report.actions)?;
    let after = resolve_tree(&m, repo, &config.scopes)?;
    let deps = bundles(repo, &after.classpath());
    let index = build_class_index(std::iter::once(project).chain(deps.iter()));
    let broken = retained
        .into_iter()
        .filter(|c| index.provider(c).is_none())
        .collect();
    Ok((broken, report))
}

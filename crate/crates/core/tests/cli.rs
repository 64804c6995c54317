mod common;

use std::path::Path;
use std::process::Command;

use common::jxls_dir;
use debloat::cli::{run_with, EXIT_BLOAT, EXIT_OK, EXIT_USAGE};
use debloat::manifest::parse_manifest;
use debloat::report::from_machine;
use debloat_testkit::{ClassBuilder, Dep, Pom, RepoBuilder};

const JXLS_BLOATED: &str = "org.apache.commons:commons-jexl,org.slf4j:slf4j-api,commons-logging:commons-logging,commons-collections:commons-collections,commons-codec:commons-codec,org.apache.commons:commons-jexl3";

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with(
        std::iter::once("debloat").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn jxls_args<'a>(pom: &'a str, repo: &'a str, extra: &[&'a str]) -> Vec<&'a str> {
    let mut v = vec!["analyze", pom, "--repo", repo];
    v.extend_from_slice(extra);
    v
}

fn paths() -> (String, String) {
    let d = jxls_dir();
    (
        d.join("project/pom.xml").display().to_string(),
        d.join("repo").display().to_string(),
    )
}

#[test]
fn fail_on_bloat_exit_codes() {
    let (pom, repo) = paths();
    assert_eq!(run(&jxls_args(&pom, &repo, &[])).0, EXIT_OK);
    assert_eq!(
        run(&jxls_args(&pom, &repo, &["--fail-on-bloat"])).0,
        EXIT_BLOAT
    );
    assert_eq!(
        run(&jxls_args(
            &pom,
            &repo,
            &["--fail-on-bloat", "--ignore", JXLS_BLOATED]
        ))
        .0,
        EXIT_OK
    );
}

#[test]
fn usage_errors_exit_two() {
    let (pom, repo) = paths();
    let (code, _, err) = run(&jxls_args(&pom, "/nonexistent/repo", &["--fail-on-bloat"]));
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("not a directory"));
    assert_eq!(
        run(&jxls_args(&pom, &repo, &["--scopes", "bogus"])).0,
        EXIT_USAGE
    );
    assert_eq!(
        run(&jxls_args(&pom, &repo, &["--ignore", "no-colon"])).0,
        EXIT_USAGE
    );
    assert_eq!(
        run(&jxls_args(&pom, &repo, &["--frobnicate"])).0,
        EXIT_USAGE
    );
    assert_eq!(
        run(&jxls_args("/nonexistent/pom.xml", &repo, &[])).0,
        EXIT_USAGE
    );
    assert_eq!(run(&[]).0, EXIT_USAGE);
    assert_eq!(run(&["--help"]).0, EXIT_OK);
}

#[test]
fn clean_project_passes_fail_on_bloat() {
    let dir = tempfile::tempdir().unwrap();
    let repo = RepoBuilder::new(dir.path().join("repo"));
    repo.add(&Pom::new("x", "lib", "1"), &[ClassBuilder::new("com.x.A")]);
    let pom = RepoBuilder::add_project(
        &dir.path().join("project"),
        &Pom::new("p", "app", "1").dep(Dep::new("x", "lib", "1")),
        &[ClassBuilder::new("app.Main").class_ref("com.x.A")],
    );
    let (code, out, _) = run(&[
        "analyze",
        pom.to_str().unwrap(),
        "--repo",
        repo.root.to_str().unwrap(),
        "--fail-on-bloat",
    ]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("1 dependencies: 1 used, 0 bloated"));
}

#[test]
fn machine_report_parses_back() {
    let (pom, repo) = paths();
    let (code, out, _) = run(&jxls_args(&pom, &repo, &["--format", "machine"]));
    assert_eq!(code, EXIT_OK);
    let r = from_machine(&out).unwrap();
    let (project, repo) = common::jxls();
    let direct = debloat::usage::analyze(&project, &repo, &Default::default())
        .unwrap()
        .report;
    assert_eq!(r, direct);
    assert_eq!(r.usages.len(), 12);
}

fn snapshot(dir: &Path) -> Vec<(std::path::PathBuf, Vec<u8>)> {
    let mut files: Vec<_> = walk(dir)
        .into_iter()
        .map(|p| {
            let b = std::fs::read(&p).unwrap();
            (p, b)
        })
        .collect();
    files.sort();
    files
}

fn walk(dir: &Path) -> Vec<std::path::PathBuf> {
    let mut out = Vec::new();
    for e in std::fs::read_dir(dir).unwrap() {
        let p = e.unwrap().path();
        if p.is_dir() {
            out.extend(walk(&p));
        } else {
            out.push(p);
        }
    }
    out
}

#[test]
fn repository_is_left_untouched() {
    let (pom, repo) = paths();
    let before = snapshot(Path::new(&repo));
    let dir = tempfile::tempdir().unwrap();
    let dest = dir.path().join("pom.xml");
    assert_eq!(
        run(&[
            "debloat",
            &pom,
            "--repo",
            &repo,
            "--out",
            dest.to_str().unwrap()
        ])
        .0,
        EXIT_OK
    );
    assert_eq!(
        run(&jxls_args(&pom, &repo, &["--fail-on-bloat"])).0,
        EXIT_BLOAT
    );
    assert_eq!(snapshot(Path::new(&repo)), before);
}

#[test]
fn debloat_writes_the_manifest() {
    let (pom, repo) = paths();
    let dir = tempfile::tempdir().unwrap();
    let dest = dir.path().join("pom.debloated.xml");
    let (code, out, err) = run(&[
        "debloat",
        &pom,
        "--repo",
        &repo,
        "--out",
        dest.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(out.contains("remove-direct org.apache.commons:commons-jexl"));
    let m = parse_manifest(&std::fs::read(&dest).unwrap()).unwrap();
    assert!(!m.declares(&common::ga("org.apache.commons:commons-jexl")));
    let jxls = m
        .dependencies
        .iter()
        .find(|d| d.ga == common::ga("org.jxls:jxls"))
        .unwrap();
    assert_eq!(jxls.exclusions.len(), 2);
}

#[test]
fn metrics_aggregates_reports() {
    let (pom, repo) = paths();
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("jxls.json");
    let (code, _, _) = run(&jxls_args(
        &pom,
        &repo,
        &["--format", "machine", "--out", report.to_str().unwrap()],
    ));
    assert_eq!(code, EXIT_OK);
    let csv = dir.path().join("out.csv");
    let (code, out, err) = run(&[
        "metrics",
        dir.path().to_str().unwrap(),
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(out.starts_with("1 artifacts, 12 dependency relationships, 6 bloated"));
    let text = std::fs::read_to_string(csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("coordinate,ud,ui,ut,bd,bi,bt,height,transitive_ratio,bloat_ratio,multimodule")
    );
    assert!(lines
        .next()
        .unwrap()
        .starts_with("org.jxls:jxls-poi:1.0.15,2,1,3,1,1,4,3,"));
}

#[test]
fn binary_reports_exit_status() {
    let bin = Path::new(env!("CARGO_BIN_EXE_debloat"));
    let (pom, repo) = paths();
    let status = |args: &[&str]| {
        Command::new(bin)
            .args(args)
            .output()
            .unwrap()
            .status
            .code()
            .unwrap()
    };
    assert_eq!(status(&["analyze", &pom, "--repo", &repo]), 0);
    assert_eq!(
        status(&["analyze", &pom, "--repo", &repo, "--fail-on-bloat"]),
        1
    );
    assert_eq!(status(&["analyze", &pom, "--repo", "/nonexistent"]), 2);
}

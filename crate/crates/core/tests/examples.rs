mod common;

use std::collections::BTreeSet;

use common::{ga, gas, labelled, open};
use debloat::model::{Coordinate, Scope};
use debloat::repo::{build_class_index, ArtifactBundle};
use debloat::resolve::{effective_manifest, resolve_tree};
use debloat::usage::{analyze, extract_members, AnalysisConfig, ClassSet, Classpath};
use debloat_testkit::{ClassBuilder, Dep, Pom, RepoBuilder};

fn write_repo(
    dir: &std::path::Path,
    project: &Pom,
    root: &[ClassBuilder],
    deps: &[(Pom, Vec<ClassBuilder>)],
) -> (ArtifactBundle, debloat::repo::LocalRepository) {
    let repo = RepoBuilder::new(dir.join("repo"));
    for (pom, classes) in deps {
        repo.add(pom, classes);
    }
    let pom = RepoBuilder::add_project(&dir.join("project"), project, root);
    open(dir, &pom)
}

#[test]
fn child_redeclaration_shadows_the_parent() {
    let dir = tempfile::tempdir().unwrap();
    let parent = Pom::new("p", "parent", "1")
        .packaging("pom")
        .dep(Dep::new("x", "shared", "1"))
        .dep(Dep::new("x", "only-parent", "1"));
    let child = Pom::new("p", "child", "1")
        .parent("p", "parent", "1")
        .dep(Dep::new("x", "shared", "2"))
        .dep(Dep::new("x", "only-child", "1"));
    let (project, repo) = write_repo(dir.path(), &child, &[], &[(parent, vec![])]);
    let eff = effective_manifest(&project.manifest, &repo).unwrap();
    let own: BTreeSet<_> = eff.own.iter().map(|d| d.ga.clone()).collect();
    let inherited: BTreeSet<_> = eff.inherited.iter().map(|d| d.ga.clone()).collect();
    assert_eq!(own, gas(["x:shared", "x:only-child"]));
    assert_eq!(inherited, gas(["x:only-parent"]));
    assert_eq!(eff.own[0].version.as_deref(), Some("2"));
}

#[test]
fn string_literal_counts_as_a_reference() {
    let dir = tempfile::tempdir().unwrap();
    let project = Pom::new("p", "app", "1")
        .dep(Dep::new("x", "lib", "1"))
        .dep(Dep::new("x", "other", "1"));
    let root = [ClassBuilder::new("app.Main")
        .string("com.x.C")
        .string("not a class name")];
    let lib = (
        Pom::new("x", "lib", "1"),
        vec![ClassBuilder::new("com.x.C"), ClassBuilder::new("com.x.D")],
    );
    let other = (
        Pom::new("x", "other", "1"),
        vec![ClassBuilder::new("com.y.E")],
    );
    let (project, repo) = write_repo(dir.path(), &project, &root, &[lib, other]);
    let deps: Vec<_> = ["lib", "other"]
        .iter()
        .map(|a| repo.load_artifact(&Coordinate::new("x", *a, "1")).unwrap())
        .collect();
    let cp = Classpath::new(&project, deps.iter());
    let part = extract_members(&cp.root_classes(), &Coordinate::new("x", "lib", "1"), &cp);
    assert_eq!(part.classes, BTreeSet::from(["com.x.C".to_string()]));
    let none = extract_members(&cp.root_classes(), &Coordinate::new("x", "other", "1"), &cp);
    assert!(none.is_empty());

    let r = analyze(&project, &repo, &AnalysisConfig::default())
        .unwrap()
        .report;
    assert_eq!(labelled(&r, "ud"), gas(["x:lib"]));
    assert_eq!(labelled(&r, "bd"), gas(["x:other"]));
}

#[test]
fn used_part_is_closed_inside_the_artifact() {
    let dir = tempfile::tempdir().unwrap();
    let project = Pom::new("p", "app", "1").dep(Dep::new("x", "lib", "1"));
    let root = [ClassBuilder::new("app.Main").method_ref("com.x.Api", "call", "()V")];
    let lib = (
        Pom::new("x", "lib", "1").dep(Dep::new("x", "impl", "1")),
        vec![
            ClassBuilder::new("com.x.Api").field_ref("com.x.Helper", "h", "I"),
            ClassBuilder::new("com.x.Helper").class_ref("com.z.Impl"),
            ClassBuilder::new("com.x.Unused").class_ref("com.z.Other"),
        ],
    );
    let imp = (
        Pom::new("x", "impl", "1"),
        vec![
            ClassBuilder::new("com.z.Impl"),
            ClassBuilder::new("com.z.Other"),
        ],
    );
    let (project, repo) = write_repo(dir.path(), &project, &root, &[lib, imp]);
    let a = analyze(&project, &repo, &AnalysisConfig::default()).unwrap();
    let lib_id = a.tree.find(&ga("x:lib")).unwrap();
    let impl_id = a.tree.find(&ga("x:impl")).unwrap();
    assert_eq!(
        a.used.part(lib_id).unwrap().classes,
        BTreeSet::from(["com.x.Api".to_string(), "com.x.Helper".to_string()])
    );
    assert_eq!(
        a.used.part(impl_id).unwrap().classes,
        BTreeSet::from(["com.z.Impl".to_string()])
    );
    assert_eq!(labelled(&a.report, "ut"), gas(["x:impl"]));
}

#[test]
fn root_without_references_uses_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let project = Pom::new("p", "app", "1").dep(Dep::new("x", "lib", "1"));
    let root = [ClassBuilder::new("app.Main").class_ref("java.util.List")];
    let lib = (
        Pom::new("x", "lib", "1").dep(Dep::new("x", "t", "1")),
        vec![ClassBuilder::new("com.x.A")],
    );
    let t = (Pom::new("x", "t", "1"), vec![ClassBuilder::new("com.t.B")]);
    let (project, repo) = write_repo(dir.path(), &project, &root, &[lib, t]);
    let a = analyze(&project, &repo, &AnalysisConfig::default()).unwrap();
    assert!(a.used.parts.is_empty());
    assert_eq!(a.report.counts.bloated(), 2);
}

#[test]
fn ignore_list_forces_used() {
    let dir = tempfile::tempdir().unwrap();
    let project = Pom::new("p", "app", "1").dep(Dep::new("x", "lib", "1"));
    let lib = (
        Pom::new("x", "lib", "1"),
        vec![ClassBuilder::new("com.x.A")],
    );
    let (project, repo) = write_repo(
        dir.path(),
        &project,
        &[ClassBuilder::new("app.Main")],
        &[lib],
    );
    let config = AnalysisConfig {
        ignore: gas(["x:lib"]),
        ..AnalysisConfig::default()
    };
    let r = analyze(&project, &repo, &config).unwrap().report;
    assert_eq!(labelled(&r, "ud"), gas(["x:lib"]));
    assert!(r.usage(&ga("x:lib")).unwrap().forced);
}

#[test]
fn shadowed_class_is_provided_by_the_first_classpath_entry() {
    let dir = tempfile::tempdir().unwrap();
    let project = Pom::new("p", "app", "1")
        .dep(Dep::new("x", "first", "1"))
        .dep(Dep::new("x", "second", "1"));
    let root = [ClassBuilder::new("app.Main").class_ref("com.dup.C")];
    let first = (
        Pom::new("x", "first", "1"),
        vec![ClassBuilder::new("com.dup.C")],
    );
    let second = (
        Pom::new("x", "second", "1"),
        vec![ClassBuilder::new("com.dup.C")],
    );
    let (project, repo) = write_repo(dir.path(), &project, &root, &[first, second]);
    let tree = resolve_tree(&project.manifest, &repo, &BTreeSet::from([Scope::Compile])).unwrap();
    let deps: Vec<_> = tree
        .classpath()
        .iter()
        .map(|c| repo.load_artifact(c).unwrap())
        .collect();
    let index = build_class_index(std::iter::once(&project).chain(deps.iter()));
    assert_eq!(
        index.provider("com.dup.C"),
        Some(&Coordinate::new("x", "first", "1"))
    );
    assert_eq!(index.duplicates.len(), 1);
    let r = analyze(&project, &repo, &AnalysisConfig::default())
        .unwrap()
        .report;
    assert_eq!(labelled(&r, "bd"), gas(["x:second"]));
    let empty = ClassSet::empty(project.coordinate.clone());
    let cp = Classpath::new(&project, deps.iter());
    assert!(extract_members(&empty, &Coordinate::new("x", "first", "1"), &cp).is_empty());
}

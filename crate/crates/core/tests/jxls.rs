mod common;

use std::collections::BTreeSet;
use std::fs;
use std::io::Read;

use common::{ga, gas, jxls, jxls_dir, labelled};
use debloat::manifest::{apply_actions, parse_manifest, write_debloated_manifest, DebloatAction};
use debloat::model::{Coordinate, Scope};
use debloat::repo::artifact_path;
use debloat::resolve::{resolve_tree, NodeOrigin};
use debloat::usage::{analyze, debloat, AnalysisConfig};

fn compile() -> BTreeSet<Scope> {
    BTreeSet::from([Scope::Compile])
}

#[test]
fn tree_matches_golden_rendering() {
    let (project, repo) = jxls();
    let tree = resolve_tree(&project.manifest, &repo, &compile()).unwrap();
    let golden = fs::read_to_string(jxls_dir().join("expected/tree.txt")).unwrap();
    assert_eq!(tree.render(), golden);
    assert_eq!(tree.height(), 3);
}

#[test]
fn nearest_slf4j_api_wins() {
    let (project, repo) = jxls();
    let tree = resolve_tree(&project.manifest, &repo, &compile()).unwrap();
    let versions: Vec<_> = tree
        .dependencies()
        .filter(|(_, n)| n.coordinate.ga() == ga("org.slf4j:slf4j-api"))
        .map(|(_, n)| (n.coordinate.version.clone(), n.origin))
        .collect();
    assert_eq!(versions, [("1.7.12".to_string(), NodeOrigin::Inherited)]);
    assert!(!tree
        .classpath()
        .contains(&Coordinate::new("org.slf4j", "slf4j-api", "1.7.26")));
}

#[test]
fn test_scope_is_outside_the_compile_tree() {
    let (project, repo) = jxls();
    let tree = resolve_tree(&project.manifest, &repo, &compile()).unwrap();
    assert!(tree.find(&ga("junit:junit")).is_none());
    let with_test = resolve_tree(
        &project.manifest,
        &repo,
        &BTreeSet::from([Scope::Compile, Scope::Test]),
    )
    .unwrap();
    assert_eq!(
        with_test
            .node(with_test.find(&ga("junit:junit")).unwrap())
            .scope,
        Scope::Test
    );
}

#[test]
fn labels_follow_usage_table() {
    let (project, repo) = jxls();
    let r = analyze(&project, &repo, &AnalysisConfig::default())
        .unwrap()
        .report;
    assert_eq!(
        labelled(&r, "ud"),
        gas(["org.apache.poi:poi", "org.jxls:jxls"])
    );
    assert_eq!(labelled(&r, "ui"), gas(["org.slf4j:jcl-over-slf4j"]));
    assert_eq!(
        labelled(&r, "ut"),
        gas([
            "commons-beanutils:commons-beanutils",
            "ch.qos.logback:logback-core",
            "org.apache.commons:commons-collections4"
        ])
    );
    assert_eq!(labelled(&r, "bd"), gas(["org.apache.commons:commons-jexl"]));
    assert_eq!(labelled(&r, "bi"), gas(["org.slf4j:slf4j-api"]));
    assert_eq!(
        labelled(&r, "bt"),
        gas([
            "commons-logging:commons-logging",
            "commons-collections:commons-collections",
            "commons-codec:commons-codec",
            "org.apache.commons:commons-jexl3",
        ])
    );
    assert_eq!(r.counts.total(), r.usages.len());
    assert_eq!(r.tree_height, 3);
}

#[test]
fn debloat_plan_uses_the_post_removal_tree() {
    let (project, repo) = jxls();
    let r = debloat(&project, &repo, &AnalysisConfig::default()).unwrap();
    let expected = vec![
        DebloatAction::RemoveDirect {
            target: ga("org.apache.commons:commons-jexl"),
        },
        DebloatAction::AddExclusion {
            target: ga("commons-codec:commons-codec"),
            via: ga("org.apache.poi:poi"),
        },
        DebloatAction::AddExclusion {
            target: ga("org.apache.commons:commons-jexl3"),
            via: ga("org.jxls:jxls"),
        },
        DebloatAction::AddExclusion {
            target: ga("commons-collections:commons-collections"),
            via: ga("org.jxls:jxls"),
        },
    ];
    let got: BTreeSet<_> = r.actions.iter().cloned().collect();
    assert_eq!(got, expected.into_iter().collect());
    assert!(r
        .warnings
        .iter()
        .any(|w| w.contains("org.slf4j:slf4j-api") && w.contains("org.jxls:jxls-project:2.6.0")));
}

#[test]
fn debloated_manifest_resolves_without_bloat_except_inherited() {
    let (project, repo) = jxls();
    let r = debloat(&project, &repo, &AnalysisConfig::default()).unwrap();
    let original = fs::read(jxls_dir().join("project/pom.xml")).unwrap();
    let written = write_debloated_manifest(&original, &project.manifest, &r.actions).unwrap();
    let m = parse_manifest(&written).unwrap();
    assert_eq!(m, apply_actions(&project.manifest, &r.actions).unwrap());

    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("pom.xml"), &written).unwrap();
    let classes = dir.path().join("target/classes");
    copy_dir(&jxls_dir().join("project/target/classes"), &classes);
    let debloated = debloat::repo::load_project(&dir.path().join("pom.xml")).unwrap();
    let again = analyze(&debloated, &repo, &AnalysisConfig::default())
        .unwrap()
        .report;
    assert_eq!(again.counts.bloated(), again.counts.bi);
    assert_eq!(labelled(&again, "bi"), gas(["org.slf4j:slf4j-api"]));
    assert_eq!(again.counts.ud + again.counts.ui + again.counts.ut, 6);
}

fn copy_dir(from: &std::path::Path, to: &std::path::Path) {
    fs::create_dir_all(to).unwrap();
    for e in fs::read_dir(from).unwrap() {
        let e = e.unwrap();
        let dest = to.join(e.file_name());
        if e.file_type().unwrap().is_dir() {
            copy_dir(&e.path(), &dest);
        } else {
            fs::copy(e.path(), dest).unwrap();
        }
    }
}

#[test]
fn bundles_hold_one_summary_per_class_entry() {
    let (_, repo) = jxls();
    let listing = fs::read_to_string(jxls_dir().join("expected/class-counts.txt")).unwrap();
    for line in listing.lines() {
        let (coord, n) = line.split_once(' ').unwrap();
        let c: Coordinate = coord.parse().unwrap();
        let n: usize = n.parse().unwrap();
        if c.artifact == "jxls-poi" {
            continue;
        }
        let jar = repo.root().join(artifact_path(&c, ".jar"));
        let mut archive = zip::ZipArchive::new(fs::File::open(&jar).unwrap()).unwrap();
        let mut entries = 0;
        for i in 0..archive.len() {
            let mut f = archive.by_index(i).unwrap();
            if f.name().ends_with(".class") {
                let mut buf = Vec::new();
                f.read_to_end(&mut buf).unwrap();
                entries += 1;
            }
        }
        assert_eq!(entries, n, "{c}");
        let bundle = repo.load_artifact(&c).unwrap();
        assert_eq!(bundle.classes.len(), n, "{c}");
        assert!(bundle.warnings.is_empty());
    }
}

#[test]
fn closure_survives_debloating() {
    let (project, repo) = jxls();
    let (broken, _) =
        common::broken_after_debloat(&project, &repo, &AnalysisConfig::default()).unwrap();
    assert!(broken.is_empty(), "{broken:?}");
}

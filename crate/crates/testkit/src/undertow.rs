//! A benchmark project shaped like undertow-benchmarks: four used direct
//! dependencies and six bloated ones whose subtrees hold 17 nodes in total.

use std::path::{Path, PathBuf};

use crate::classfile::ClassBuilder;
use crate::repo::{Dep, Pom, RepoBuilder};

/// `(group, artifact, version, main class, dependencies)`.
type Spec = (
    &'static str,
    &'static str,
    &'static str,
    &'static str,
    &'static [&'static str],
);

const ARTIFACTS: &[Spec] = &[
    // used
    (
        "io.undertow",
        "undertow-core",
        "2.0.1.Final",
        "io.undertow.Undertow",
        &[
            "org.jboss.logging:jboss-logging",
            "org.jboss.xnio:xnio-api",
            "org.wildfly.common:wildfly-common",
        ],
    ),
    (
        "org.jboss.logging",
        "jboss-logging",
        "3.3.2.Final",
        "org.jboss.logging.Logger",
        &[],
    ),
    (
        "org.jboss.xnio",
        "xnio-api",
        "3.6.2.Final",
        "org.xnio.Xnio",
        &[],
    ),
    (
        "org.wildfly.common",
        "wildfly-common",
        "1.3.0.Final",
        "org.wildfly.common.Assert",
        &[],
    ),
    (
        "org.openjdk.jmh",
        "jmh-core",
        "1.21",
        "org.openjdk.jmh.runner.Runner",
        &[
            "net.sf.jopt-simple:jopt-simple",
            "org.apache.commons:commons-math3",
        ],
    ),
    (
        "net.sf.jopt-simple",
        "jopt-simple",
        "4.6",
        "joptsimple.OptionParser",
        &[],
    ),
    (
        "org.apache.commons",
        "commons-math3",
        "3.2",
        "org.apache.commons.math3.stat.StatUtils",
        &[],
    ),
    (
        "org.apache.httpcomponents",
        "httpclient",
        "4.5.5",
        "org.apache.http.impl.client.HttpClients",
        &[
            "org.apache.httpcomponents:httpcore",
            "commons-logging:commons-logging",
            "commons-codec:commons-codec",
        ],
    ),
    (
        "org.apache.httpcomponents",
        "httpcore",
        "4.4.9",
        "org.apache.http.HttpEntity",
        &[],
    ),
    (
        "commons-logging",
        "commons-logging",
        "1.2",
        "org.apache.commons.logging.LogFactory",
        &[],
    ),
    (
        "commons-codec",
        "commons-codec",
        "1.10",
        "org.apache.commons.codec.binary.Base64",
        &[],
    ),
    (
        "jakarta.annotation",
        "jakarta.annotation-api",
        "1.3.4",
        "jakarta.annotation.Resource",
        &[],
    ),
    // bloated direct, with their subtrees
    (
        "io.undertow",
        "undertow-servlet",
        "2.0.1.Final",
        "io.undertow.servlet.Servlets",
        &[
            "io.undertow:undertow-core",
            "org.jboss.spec.javax.annotation:jboss-annotations-api_1.2_spec",
            "org.jboss.spec.javax.servlet:jboss-servlet-api_4.0_spec",
            "org.jboss.spec.javax.el:jboss-el-api_3.0_spec",
        ],
    ),
    (
        "org.jboss.spec.javax.annotation",
        "jboss-annotations-api_1.2_spec",
        "1.0.2.Final",
        "org.jboss.spec.annotation.Marker",
        &[],
    ),
    (
        "org.jboss.spec.javax.servlet",
        "jboss-servlet-api_4.0_spec",
        "1.0.0.Final",
        "org.jboss.spec.servlet.Marker",
        &[],
    ),
    (
        "org.jboss.spec.javax.el",
        "jboss-el-api_3.0_spec",
        "1.0.11.Final",
        "org.jboss.spec.el.Marker",
        &[],
    ),
    (
        "io.undertow",
        "undertow-websockets-jsr",
        "2.0.1.Final",
        "io.undertow.websockets.jsr.Bootstrap",
        &[
            "org.jboss.spec.javax.websocket:jboss-websocket-api_1.1_spec",
            "io.undertow:undertow-websockets-core",
        ],
    ),
    (
        "org.jboss.spec.javax.websocket",
        "jboss-websocket-api_1.1_spec",
        "1.1.3.Final",
        "org.jboss.spec.websocket.Marker",
        &[],
    ),
    (
        "io.undertow",
        "undertow-websockets-core",
        "2.0.1.Final",
        "io.undertow.websockets.core.Frames",
        &[],
    ),
    (
        "org.jboss.logging",
        "jboss-logging-processor",
        "2.1.0.Final",
        "org.jboss.logging.processor.apt.Processor",
        &[
            "org.jboss.logging:jboss-logging-annotations",
            "org.jboss.jdeparser:jdeparser",
        ],
    ),
    (
        "org.jboss.logging",
        "jboss-logging-annotations",
        "2.1.0.Final",
        "org.jboss.logging.annotations.Message",
        &[],
    ),
    (
        "org.jboss.jdeparser",
        "jdeparser",
        "2.0.2.Final",
        "org.jboss.jdeparser.JDeparser",
        &["org.jboss:jandex"],
    ),
    (
        "org.jboss",
        "jandex",
        "2.0.5.Final",
        "org.jboss.jandex.Indexer",
        &[],
    ),
    (
        "org.jboss.xnio",
        "xnio-nio",
        "3.6.2.Final",
        "org.xnio.nio.NioXnio",
        &["org.jboss.xnio:xnio-api", "org.jboss.threads:jboss-threads"],
    ),
    (
        "org.jboss.threads",
        "jboss-threads",
        "2.3.0.Beta2",
        "org.jboss.threads.JBossExecutors",
        &["org.wildfly.client:wildfly-client-config"],
    ),
    (
        "org.wildfly.client",
        "wildfly-client-config",
        "1.0.0.Final",
        "org.wildfly.client.config.ClientConfiguration",
        &[],
    ),
    (
        "org.openjdk.jmh",
        "jmh-generator-annprocess",
        "1.21",
        "org.openjdk.jmh.generators.BenchmarkProcessor",
        &[
            "org.openjdk.jmh:jmh-core",
            "org.openjdk.jmh:jmh-generator-reflection",
        ],
    ),
    (
        "org.openjdk.jmh",
        "jmh-generator-reflection",
        "1.21",
        "org.openjdk.jmh.generators.reflection.RFGeneratorSource",
        &[],
    ),
    (
        "org.apache.httpcomponents",
        "httpmime",
        "4.5.5",
        "org.apache.http.entity.mime.MultipartEntityBuilder",
        &["org.apache.httpcomponents:httpclient"],
    ),
];

/// Declaration order of the project; used ones first.
pub const USED_DIRECT: [&str; 4] = [
    "io.undertow:undertow-core",
    "org.openjdk.jmh:jmh-core",
    "org.apache.httpcomponents:httpclient",
    "jakarta.annotation:jakarta.annotation-api",
];

pub const BLOATED_DIRECT: [&str; 6] = [
    "io.undertow:undertow-servlet",
    "io.undertow:undertow-websockets-jsr",
    "org.jboss.logging:jboss-logging-processor",
    "org.jboss.xnio:xnio-nio",
    "org.openjdk.jmh:jmh-generator-annprocess",
    "org.apache.httpcomponents:httpmime",
];

/// Non-omitted tree nodes that disappear with the bloated directs.
pub const REMOVED_NODES: usize = 17;

fn spec(ga: &str) -> &'static Spec {
    ARTIFACTS
        .iter()
        .find(|s| format!("{}:{}", s.0, s.1) == ga)
        .unwrap_or_else(|| panic!("unknown fixture artifact {ga}"))
}

/// Writes the repository under `dir/repo` and the project under
/// `dir/project`; returns the project's `pom.xml`.
pub fn write(dir: &Path) -> PathBuf {
    let repo = RepoBuilder::new(dir.join("repo"));
    for s in ARTIFACTS {
        let (g, a, v, main, deps) = *s;
        let mut pom = Pom::new(g, a, v);
        let mut class = ClassBuilder::new(main);
        let used = USED_DIRECT.iter().any(|u| *u == format!("{g}:{a}"));
        for d in deps {
            let t = spec(d);
            pom = pom.dep(Dep::new(t.0, t.1, t.2));
            // used subtrees are used all the way down
            if used {
                class = class.method_ref(t.3, "create", "()V");
            }
        }
        repo.add(&pom, &[class.method("create", "()V")]);
    }

    let mut pom = Pom::new("io.undertow", "undertow-benchmarks", "2.0.1.Final");
    for ga in USED_DIRECT.iter().chain(BLOATED_DIRECT.iter()) {
        let t = spec(ga);
        pom = pom.dep(Dep::new(t.0, t.1, t.2));
    }
    let mut bench = ClassBuilder::new("io.undertow.benchmarks.SimpleBenchmarks")
        .method("main", "([Ljava/lang/String;)V");
    for ga in USED_DIRECT {
        bench = bench.method_ref(spec(ga).3, "create", "()V");
    }
    RepoBuilder::add_project(&dir.join("project"), &pom, &[bench])
}

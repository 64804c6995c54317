#!/usr/bin/env python3
"""Regenerates the compiled fixtures (class files, jars, oracle dumps).

Needs a Java 25+ runtime and the Janino compiler:

    JAVA=/path/to/bin/java JANINO_CP=janino.jar:commons-compiler.jar \
        python3 build_fixtures.py
"""
import os
import shutil
import subprocess
import sys
import tempfile
import zipfile
from pathlib import Path

HERE = Path(__file__).resolve().parent
JAVA = os.environ.get("JAVA", "java")
JANINO_CP = os.environ["JANINO_CP"]
EPOCH = (1980, 1, 1, 0, 0, 0)

# (dir, group, artifact, versions, declared compile deps by dir)
JXLS = [
    ("commons-codec", "commons-codec", "commons-codec", ["1.10"], []),
    ("commons-collections4", "org.apache.commons", "commons-collections4", ["4.1"], []),
    ("commons-logging", "commons-logging", "commons-logging", ["1.1.1"], []),
    ("commons-collections", "commons-collections", "commons-collections", ["3.2.2"], []),
    ("logback-core", "ch.qos.logback", "logback-core", ["1.2.3"], []),
    ("slf4j-api", "org.slf4j", "slf4j-api", ["1.7.12", "1.7.26"], []),
    ("commons-jexl3", "org.apache.commons", "commons-jexl3", ["3.1"], []),
    ("junit", "junit", "junit", ["4.12"], []),
    ("poi", "org.apache.poi", "poi", ["3.17"], ["commons-codec", "commons-collections4"]),
    ("commons-jexl", "org.apache.commons", "commons-jexl", ["2.1.1"], ["commons-logging"]),
    ("commons-beanutils", "commons-beanutils", "commons-beanutils", ["1.9.3"], ["commons-collections"]),
    ("jcl-over-slf4j", "org.slf4j", "jcl-over-slf4j", ["1.7.12", "1.7.26"], ["slf4j-api"]),
    ("jxls", "org.jxls", "jxls", ["2.6.0"],
     ["commons-jexl3", "commons-beanutils", "logback-core", "slf4j-api"]),
    ("jxls-poi", "org.jxls", "jxls-poi", ["1.0.15"], ["poi", "jxls", "jcl-over-slf4j"]),
]
POM_ONLY = [("org.jxls", "jxls-project", "2.6.0")]


def compile_java(sources, out, classpath=()):
    out.mkdir(parents=True, exist_ok=True)
    cmd = [JAVA, "-cp", JANINO_CP, "org.codehaus.commons.compiler.samples.CompilerDemo",
           "-d", str(out)]
    if classpath:
        cmd += ["-classpath", os.pathsep.join(str(c) for c in classpath)]
    subprocess.run(cmd + [str(s) for s in sources], check=True)


def write_jar(classes_dir, jar_path):
    jar_path.parent.mkdir(parents=True, exist_ok=True)
    entries = sorted(p for p in classes_dir.rglob("*") if p.is_file())
    with zipfile.ZipFile(jar_path, "w", zipfile.ZIP_DEFLATED) as zf:
        manifest = zipfile.ZipInfo("META-INF/MANIFEST.MF", EPOCH)
        zf.writestr(manifest, "Manifest-Version: 1.0\r\nCreated-By: fixtures\r\n\r\n")
        for p in entries:
            info = zipfile.ZipInfo(p.relative_to(classes_dir).as_posix(), EPOCH)
            info.compress_type = zipfile.ZIP_DEFLATED
            zf.writestr(info, p.read_bytes())


def layout(group, artifact, version, suffix):
    return Path(*group.split(".")) / artifact / version / f"{artifact}-{version}{suffix}"


def build_jxls(tmp):
    root = HERE / "jxls"
    repo = root / "repo"
    if repo.exists():
        shutil.rmtree(repo)
    outs = {}
    listing = []
    for d, g, a, versions, cp in JXLS:
        out = tmp / "jxls" / d
        srcs = sorted((root / "src" / d).rglob("*.java"))
        # the whole compiled set is visible so that supertypes of dependencies resolve
        compile_java(srcs, out, list(outs.values()))
        outs[d] = out
        for v in versions:
            jar = repo / layout(g, a, v, ".jar")
            write_jar(out, jar)
            shutil.copy(root / "poms" / f"{a}-{v}.pom", repo / layout(g, a, v, ".pom"))
            with zipfile.ZipFile(jar) as zf:
                n = sum(1 for name in zf.namelist() if name.endswith(".class"))
            listing.append(f"{g}:{a}:{v} {n}")
    for g, a, v in POM_ONLY:
        dest = repo / layout(g, a, v, ".pom")
        dest.parent.mkdir(parents=True, exist_ok=True)
        shutil.copy(root / "poms" / f"{a}-{v}.pom", dest)
    (root / "expected").mkdir(exist_ok=True)
    (root / "expected" / "class-counts.txt").write_text("\n".join(listing) + "\n")

    # project checkout of the root module: pom.xml + target/classes
    project = root / "project"
    if project.exists():
        shutil.rmtree(project)
    shutil.copytree(outs["jxls-poi"], project / "target" / "classes")
    shutil.copy(root / "poms" / "jxls-poi-1.0.15.pom", project / "pom.xml")


def build_classfile_corpus(tmp):
    root = HERE / "classfile"
    classes = root / "classes"
    expected = root / "expected"
    for d in (classes, expected):
        if d.exists():
            shutil.rmtree(d)
    compile_java(sorted((root / "src").rglob("*.java")), classes)

    tools = tmp / "tools"
    compile_java([HERE / "tools" / "PoolDump.java"], tools)
    expected.mkdir()
    for cls in sorted(classes.rglob("*.class")):
        dump = subprocess.run([JAVA, "-cp", str(tools), "PoolDump", str(cls)],
                              check=True, capture_output=True, text=True).stdout
        rel = cls.relative_to(classes).with_suffix(".txt")
        (expected / rel.name).write_text(dump)


def main():
    with tempfile.TemporaryDirectory() as t:
        tmp = Path(t)
        build_jxls(tmp)
        build_classfile_corpus(tmp)
    return 0


if __name__ == "__main__":
    sys.exit(main())

//! Reading and writing the supported subset of POM XML.

mod write;
pub(crate) mod xml;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::model::{Coordinate, DependencyDecl, Ga, Scope};
use xml::Element;

pub use write::{apply_actions, write_debloated_manifest, DebloatAction};

#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("malformed XML: {0}")]
    MalformedXml(String),
    #[error("missing mandatory field `{0}`")]
    MissingMandatoryField(String),
    #[error("unsupported feature: {0}")]
    UnsupportedFeature(String),
    #[error("unresolved property `${{{0}}}`")]
    UnresolvedProperty(String),
    #[error("dependency {ga} declared twice with scope {scope}")]
    DuplicateDeclaration { ga: Ga, scope: Scope },
    #[error("debloat action target {0} is not declared in the manifest")]
    ActionTargetMissing(Ga),
}

/// A `dependencyManagement` entry. Only the version (and exclusions) are
/// applied to version-less declarations; the scope is recorded as written.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ManagedDependency {
    pub version: Option<String>,
    pub scope: Option<Scope>,
    pub exclusions: BTreeSet<Ga>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Manifest {
    pub coordinate: Coordinate,
    pub packaging: String,
    pub parent: Option<Coordinate>,
    pub dependencies: Vec<DependencyDecl>,
    pub dependency_management: BTreeMap<Ga, ManagedDependency>,
    pub properties: BTreeMap<String, String>,
    pub modules: Vec<String>,
}

impl Manifest {
    pub fn declares(&self, ga: &Ga) -> bool {
        self.dependencies.iter().any(|d| &d.ga == ga)
    }

    /// Part of a multi-module build: has a parent or aggregates modules.
    pub fn is_multimodule(&self) -> bool {
        self.parent.is_some() || !self.modules.is_empty()
    }
}

/// Property lookup used for `${...}` placeholders.
pub(crate) struct Interpolator<'a> {
    builtins: BTreeMap<&'static str, String>,
    properties: &'a BTreeMap<String, String>,
}

impl<'a> Interpolator<'a> {
    fn lookup(&self, key: &str) -> Option<&str> {
        self.builtins
            .get(key)
            .map(String::as_str)
            .or_else(|| self.properties.get(key).map(String::as_str))
    }

    /// Substitutes every `${key}` once. A substituted value that still
    /// contains a placeholder is an error: only one level is supported.
    pub fn apply(&self, text: &str) -> Result<String, ManifestError> {
        let mut out = String::with_capacity(text.len());
        let mut rest = text;
        while let Some(start) = rest.find("${") {
            out.push_str(&rest[..start]);
            let after = &rest[start + 2..];
            let end = after
                .find('}')
                .ok_or_else(|| ManifestError::UnresolvedProperty(after.to_string()))?;
            let key = &after[..end];
            let value = self
                .lookup(key)
                .ok_or_else(|| ManifestError::UnresolvedProperty(key.to_string()))?;
            if value.contains("${") {
                return Err(ManifestError::UnresolvedProperty(key.to_string()));
            }
            out.push_str(value);
            rest = &after[end + 1..];
        }
        out.push_str(rest);
        Ok(out)
    }
}

pub(crate) fn interpolator(manifest: &Manifest) -> Interpolator<'_> {
    let mut builtins = BTreeMap::new();
    builtins.insert("project.groupId", manifest.coordinate.group.clone());
    builtins.insert("project.artifactId", manifest.coordinate.artifact.clone());
    builtins.insert("project.version", manifest.coordinate.version.clone());
    builtins.insert("project.packaging", manifest.packaging.clone());
    if let Some(p) = &manifest.parent {
        builtins.insert("project.parent.groupId", p.group.clone());
        builtins.insert("project.parent.artifactId", p.artifact.clone());
        builtins.insert("project.parent.version", p.version.clone());
    }
    Interpolator {
        builtins,
        properties: &manifest.properties,
    }
}

fn mandatory(e: &Element, name: &str, context: &str) -> Result<String, ManifestError> {
    match e.child_text(name) {
        Some(t) if !t.is_empty() => Ok(t),
        _ => Err(ManifestError::MissingMandatoryField(format!(
            "{context}/{name}"
        ))),
    }
}

fn check_version(v: &str) -> Result<(), ManifestError> {
    if v.starts_with('[') || v.starts_with('(') || v.ends_with(']') || v.ends_with(')') {
        return Err(ManifestError::UnsupportedFeature(format!(
            "version range `{v}`"
        )));
    }
    if v.chars().any(char::is_whitespace) || v.contains(':') {
        return Err(ManifestError::MalformedXml(format!(
            "invalid version `{v}`"
        )));
    }
    Ok(())
}

fn check_id(id: &str, what: &str) -> Result<(), ManifestError> {
    if id.chars().any(char::is_whitespace) || id.contains(':') {
        return Err(ManifestError::MalformedXml(format!(
            "invalid {what} `{id}`"
        )));
    }
    Ok(())
}

struct RawDependency {
    ga: Ga,
    version: Option<String>,
    scope: Option<Scope>,
    optional: bool,
    exclusions: BTreeSet<Ga>,
}

fn read_dependency(e: &Element, interp: &Interpolator) -> Result<RawDependency, ManifestError> {
    let group = interp.apply(&mandatory(e, "groupId", "dependency")?)?;
    let artifact = interp.apply(&mandatory(e, "artifactId", "dependency")?)?;
    check_id(&group, "groupId")?;
    check_id(&artifact, "artifactId")?;
    let ga = Ga::new(group, artifact);
    if e.child("classifier").is_some() {
        return Err(ManifestError::UnsupportedFeature(format!(
            "classifier on {ga}"
        )));
    }
    let version = match e.child_text("version") {
        Some(v) if !v.is_empty() => {
            let v = interp.apply(&v)?;
            check_version(&v)?;
            Some(v)
        }
        _ => None,
    };
    let scope = match e.child_text("scope") {
        Some(s) if !s.is_empty() => Some(
            interp
                .apply(&s)?
                .parse::<Scope>()
                .map_err(|m| ManifestError::UnsupportedFeature(format!("{m} on {ga}")))?,
        ),
        _ => None,
    };
    let optional = match e.child_text("optional") {
        Some(o) => interp.apply(&o)?.eq_ignore_ascii_case("true"),
        None => false,
    };
    let mut exclusions = BTreeSet::new();
    if let Some(ex) = e.child("exclusions") {
        for x in ex.children_named("exclusion") {
            let g = interp.apply(&mandatory(x, "groupId", "exclusion")?)?;
            let a = interp.apply(&mandatory(x, "artifactId", "exclusion")?)?;
            exclusions.insert(Ga::new(g, a));
        }
    }
    Ok(RawDependency {
        ga,
        version,
        scope,
        optional,
        exclusions,
    })
}

/// Parses POM bytes into a [`Manifest`], interpolating `${...}` placeholders
/// from `project.*`, `project.parent.*` and the manifest's own properties.
pub fn parse_manifest(bytes: &[u8]) -> Result<Manifest, ManifestError> {
    let text =
        std::str::from_utf8(bytes).map_err(|e| ManifestError::MalformedXml(e.to_string()))?;
    let root = Element::parse(text).map_err(|e| ManifestError::MalformedXml(e.to_string()))?;
    if root.name != "project" {
        return Err(ManifestError::MalformedXml(format!(
            "root element is <{}>, expected <project>",
            root.name
        )));
    }

    let raw_properties: BTreeMap<String, String> = root
        .child("properties")
        .map(|p| p.elements().map(|e| (e.name.clone(), e.text())).collect())
        .unwrap_or_default();

    let parent = match root.child("parent") {
        Some(p) => {
            let no_props = BTreeMap::new();
            let bare = Interpolator {
                builtins: BTreeMap::new(),
                properties: &no_props,
            };
            let g = bare.apply(&mandatory(p, "groupId", "parent")?)?;
            let a = bare.apply(&mandatory(p, "artifactId", "parent")?)?;
            let v = bare.apply(&mandatory(p, "version", "parent")?)?;
            check_version(&v)?;
            Some(Coordinate::new(g, a, v))
        }
        None => None,
    };

    // Coordinates may themselves use user properties (e.g. ${revision}).
    let mut seed_builtins = BTreeMap::new();
    if let Some(p) = &parent {
        seed_builtins.insert("project.parent.groupId", p.group.clone());
        seed_builtins.insert("project.parent.artifactId", p.artifact.clone());
        seed_builtins.insert("project.parent.version", p.version.clone());
    }
    let seed = Interpolator {
        builtins: seed_builtins,
        properties: &raw_properties,
    };

    let artifact = seed.apply(&mandatory(&root, "artifactId", "project")?)?;
    let group = match root.child_text("groupId").filter(|g| !g.is_empty()) {
        Some(g) => seed.apply(&g)?,
        None => parent
            .as_ref()
            .map(|p| p.group.clone())
            .ok_or_else(|| ManifestError::MissingMandatoryField("project/groupId".into()))?,
    };
    let version = match root.child_text("version").filter(|v| !v.is_empty()) {
        Some(v) => seed.apply(&v)?,
        None => parent
            .as_ref()
            .map(|p| p.version.clone())
            .ok_or_else(|| ManifestError::MissingMandatoryField("project/version".into()))?,
    };
    check_id(&group, "groupId")?;
    check_id(&artifact, "artifactId")?;
    check_version(&version)?;
    let packaging = match root.child_text("packaging").filter(|p| !p.is_empty()) {
        Some(p) => seed.apply(&p)?,
        None => "jar".to_string(),
    };

    let mut manifest = Manifest {
        coordinate: Coordinate::new(group, artifact, version),
        packaging,
        parent,
        dependencies: Vec::new(),
        dependency_management: BTreeMap::new(),
        properties: BTreeMap::new(),
        modules: Vec::new(),
    };

    // Property values are interpolated against project.* and the raw
    // properties, one level deep.
    let mut properties = BTreeMap::new();
    {
        let mut probe = manifest.clone();
        probe.properties = raw_properties.clone();
        let interp = interpolator(&probe);
        for (k, v) in &raw_properties {
            properties.insert(k.clone(), interp.apply(v)?);
        }
    }
    manifest.properties = properties;

    let interp = interpolator(&manifest);
    let mut dependencies: Vec<DependencyDecl> = Vec::new();
    if let Some(deps) = root.child("dependencies") {
        for d in deps.children_named("dependency") {
            let raw = read_dependency(d, &interp)?;
            let scope = raw.scope.unwrap_or_default();
            if dependencies
                .iter()
                .any(|x| x.ga == raw.ga && x.scope == scope)
            {
                return Err(ManifestError::DuplicateDeclaration { ga: raw.ga, scope });
            }
            dependencies.push(DependencyDecl {
                ga: raw.ga,
                version: raw.version,
                scope,
                optional: raw.optional,
                exclusions: raw.exclusions,
            });
        }
    }

    let mut management = BTreeMap::new();
    if let Some(deps) = root
        .child("dependencyManagement")
        .and_then(|m| m.child("dependencies"))
    {
        for d in deps.children_named("dependency") {
            let raw = read_dependency(d, &interp)?;
            management.insert(
                raw.ga,
                ManagedDependency {
                    version: raw.version,
                    scope: raw.scope,
                    exclusions: raw.exclusions,
                },
            );
        }
    }

    let modules = root
        .child("modules")
        .map(|m| m.children_named("module").map(Element::text).collect())
        .unwrap_or_default();

    manifest.dependencies = dependencies;
    manifest.dependency_management = management;
    manifest.modules = modules;
    Ok(manifest)
}

#[cfg(test)]
mod tests {
    use super::*;

    const LISTING_1: &str = r#"<project>
<parent>
    <groupId>org.jxls</groupId>
    <artifactId>jxls-project</artifactId>
    <version>2.6.0</version>
</parent>
<artifactId>jxls-poi</artifactId>
<packaging>jar</packaging>
<version>1.0.15</version>
<dependencies>
    <dependency>
        <groupId>org.apache.poi</groupId>
        <artifactId>poi</artifactId>
        <version>3.17</version>
    </dependency>
</dependencies>
</project>"#;

    #[test]
    fn parses_listing_excerpt() {
        let m = parse_manifest(LISTING_1.as_bytes()).unwrap();
        assert_eq!(
            m.coordinate,
            Coordinate::new("org.jxls", "jxls-poi", "1.0.15")
        );
        assert_eq!(
            m.parent,
            Some(Coordinate::new("org.jxls", "jxls-project", "2.6.0"))
        );
        assert_eq!(m.packaging, "jar");
        let poi = &m.dependencies[0];
        assert_eq!(poi.ga, Ga::new("org.apache.poi", "poi"));
        assert_eq!(poi.version.as_deref(), Some("3.17"));
        assert_eq!(poi.scope, Scope::Compile);
        assert!(!poi.optional);
        assert!(m.is_multimodule());
    }

    #[test]
    fn empty_dependency_list() {
        let m = parse_manifest(
            b"<project><groupId>a</groupId><artifactId>b</artifactId><version>1</version><dependencies/></project>",
        )
        .unwrap();
        assert!(m.dependencies.is_empty());
        assert!(!m.is_multimodule());
    }

    #[test]
    fn interpolates_user_property_in_version() {
        let m = parse_manifest(
            br#"<project><groupId>a</groupId><artifactId>b</artifactId><version>${rev}</version>
                <properties><rev>1.0</rev></properties></project>"#,
        )
        .unwrap();
        // hand-resolved: ${rev} -> 1.0
        assert_eq!(m.coordinate.version, "1.0");
    }

    #[test]
    fn interpolates_project_placeholders() {
        let m = parse_manifest(
            br#"<project><groupId>g</groupId><artifactId>b</artifactId><version>2.1</version>
                <properties><dep.version>${project.version}</dep.version></properties>
                <dependencies><dependency><groupId>${project.groupId}</groupId>
                <artifactId>c</artifactId><version>${dep.version}</version></dependency></dependencies>
                </project>"#,
        )
        .unwrap();
        assert_eq!(m.dependencies[0].ga, Ga::new("g", "c"));
        assert_eq!(m.dependencies[0].version.as_deref(), Some("2.1"));
        assert_eq!(m.properties["dep.version"], "2.1");
    }

    #[test]
    fn nested_placeholder_is_rejected() {
        let err = parse_manifest(
            br#"<project><groupId>g</groupId><artifactId>b</artifactId><version>${a}</version>
                <properties><a>${b}</a><b>${c}</b><c>1</c></properties></project>"#,
        )
        .unwrap_err();
        assert!(matches!(err, ManifestError::UnresolvedProperty(_)), "{err}");
    }

    #[test]
    fn inherits_group_and_version_from_parent() {
        let m = parse_manifest(
            br#"<project><parent><groupId>p</groupId><artifactId>pp</artifactId><version>9</version></parent>
                <artifactId>child</artifactId></project>"#,
        )
        .unwrap();
        assert_eq!(m.coordinate, Coordinate::new("p", "child", "9"));
    }

    type ErrorCheck = fn(&ManifestError) -> bool;

    #[test]
    fn error_paths() {
        let cases: [(&[u8], ErrorCheck); 7] = [
            (b"<project>", |e| matches!(e, ManifestError::MalformedXml(_))),
            (b"<pom/>", |e| matches!(e, ManifestError::MalformedXml(_))),
            (b"<project><groupId>a</groupId><version>1</version></project>", |e| {
                matches!(e, ManifestError::MissingMandatoryField(_))
            }),
            (b"<project><groupId>a</groupId><artifactId>b</artifactId></project>", |e| {
                matches!(e, ManifestError::MissingMandatoryField(_))
            }),
            (
                b"<project><groupId>a</groupId><artifactId>b</artifactId><version>1</version>
                <dependencies><dependency><groupId>x</groupId><artifactId>y</artifactId>
                <version>[1.0,2.0)</version></dependency></dependencies></project>",
                |e| matches!(e, ManifestError::UnsupportedFeature(_)),
            ),
            (
                b"<project><groupId>a</groupId><artifactId>b</artifactId><version>1</version>
                <dependencies><dependency><groupId>x</groupId><artifactId>y</artifactId>
                <version>1</version><classifier>jdk8</classifier></dependency></dependencies></project>",
                |e| matches!(e, ManifestError::UnsupportedFeature(_)),
            ),
            (
                b"<project><groupId>a</groupId><artifactId>b</artifactId><version>1</version>
                <dependencies><dependency><groupId>x</groupId><artifactId>y</artifactId>
                <version>1</version><scope>system</scope></dependency></dependencies></project>",
                |e| matches!(e, ManifestError::UnsupportedFeature(_)),
            ),
        ];
        for (bytes, check) in cases {
            let err = parse_manifest(bytes).unwrap_err();
            assert!(
                check(&err),
                "unexpected error {err:?} for {}",
                String::from_utf8_lossy(bytes)
            );
        }
    }

    #[test]
    fn duplicate_ga_scope_rejected() {
        let err = parse_manifest(
            br#"<project><groupId>a</groupId><artifactId>b</artifactId><version>1</version>
            <dependencies>
              <dependency><groupId>x</groupId><artifactId>y</artifactId><version>1</version></dependency>
              <dependency><groupId>x</groupId><artifactId>y</artifactId><version>2</version></dependency>
            </dependencies></project>"#,
        )
        .unwrap_err();
        assert!(matches!(err, ManifestError::DuplicateDeclaration { .. }));
    }

    #[test]
    fn reads_management_exclusions_and_modules() {
        let m = parse_manifest(
            br#"<project><groupId>a</groupId><artifactId>b</artifactId><version>1</version>
            <packaging>pom</packaging>
            <modules><module>core</module><module>cli</module></modules>
            <dependencyManagement><dependencies>
              <dependency><groupId>junit</groupId><artifactId>junit</artifactId><version>4.12</version><scope>test</scope></dependency>
            </dependencies></dependencyManagement>
            <dependencies>
              <dependency><groupId>x</groupId><artifactId>y</artifactId><version>1</version>
                <optional>true</optional>
                <exclusions>
                  <exclusion><groupId>e</groupId><artifactId>f</artifactId></exclusion>
                  <exclusion><groupId>e</groupId><artifactId>f</artifactId></exclusion>
                </exclusions>
              </dependency>
              <dependency><groupId>junit</groupId><artifactId>junit</artifactId><scope>test</scope></dependency>
            </dependencies></project>"#,
        )
        .unwrap();
        assert_eq!(m.modules, ["core", "cli"]);
        let managed = &m.dependency_management[&Ga::new("junit", "junit")];
        assert_eq!(managed.version.as_deref(), Some("4.12"));
        assert_eq!(managed.scope, Some(Scope::Test));
        assert!(m.dependencies[0].optional);
        assert_eq!(m.dependencies[0].exclusions.len(), 1);
        assert_eq!(m.dependencies[1].version, None);
        assert_eq!(m.dependencies[1].scope, Scope::Test);
    }
}

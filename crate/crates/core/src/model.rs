//! Shared domain types: artifact coordinates, dependency declarations,
//! usage labels and bytecode member references.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoordinateError {
    #[error("malformed coordinate `{input}`: {reason}")]
    Malformed { input: String, reason: &'static str },
}

fn check_segment(input: &str, segment: &str) -> Result<(), CoordinateError> {
    if segment.is_empty() {
        return Err(CoordinateError::Malformed {
            input: input.to_string(),
            reason: "empty segment",
        });
    }
    if segment.chars().any(char::is_whitespace) {
        return Err(CoordinateError::Malformed {
            input: input.to_string(),
            reason: "embedded whitespace",
        });
    }
    Ok(())
}

fn split_exact(input: &str, n: usize) -> Result<Vec<&str>, CoordinateError> {
    let parts: Vec<&str> = input.split(':').collect();
    if parts.len() != n {
        return Err(CoordinateError::Malformed {
            input: input.to_string(),
            reason: "wrong number of ':'-separated segments",
        });
    }
    for p in &parts {
        check_segment(input, p)?;
    }
    Ok(parts)
}

/// Group and artifact id. One version per `Ga` survives mediation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ga {
    pub group: String,
    pub artifact: String,
}

impl Ga {
    pub fn new(group: impl Into<String>, artifact: impl Into<String>) -> Self {
        Ga {
            group: group.into(),
            artifact: artifact.into(),
        }
    }
}

impl fmt::Display for Ga {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.group, self.artifact)
    }
}

impl FromStr for Ga {
    type Err = CoordinateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts = split_exact(s, 2)?;
        Ok(Ga::new(parts[0], parts[1]))
    }
}

/// A `group:artifact:version` triple identifying one released artifact.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coordinate {
    pub group: String,
    pub artifact: String,
    pub version: String,
}

impl Coordinate {
    pub fn new(
        group: impl Into<String>,
        artifact: impl Into<String>,
        version: impl Into<String>,
    ) -> Self {
        Coordinate {
            group: group.into(),
            artifact: artifact.into(),
            version: version.into(),
        }
    }

    pub fn ga(&self) -> Ga {
        Ga::new(self.group.clone(), self.artifact.clone())
    }
}

impl fmt::Display for Coordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.group, self.artifact, self.version)
    }
}

impl FromStr for Coordinate {
    type Err = CoordinateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_coordinate(s)
    }
}

/// Parses `G:A:V`. Exactly three non-empty, whitespace-free segments.
pub fn parse_coordinate(text: &str) -> Result<Coordinate, CoordinateError> {
    let parts = split_exact(text, 3)?;
    Ok(Coordinate::new(parts[0], parts[1], parts[2]))
}

macro_rules! string_serde {
    ($ty:ty) => {
        impl Serialize for $ty {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                let text = String::deserialize(d)?;
                text.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

string_serde!(Ga);
string_serde!(Coordinate);

#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    #[default]
    Compile,
    Test,
    Provided,
    Runtime,
}

impl Scope {
    pub fn as_str(self) -> &'static str {
        match self {
            Scope::Compile => "compile",
            Scope::Test => "test",
            Scope::Provided => "provided",
            Scope::Runtime => "runtime",
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scope {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "compile" => Ok(Scope::Compile),
            "test" => Ok(Scope::Test),
            "provided" => Ok(Scope::Provided),
            "runtime" => Ok(Scope::Runtime),
            other => Err(format!("unsupported scope `{other}`")),
        }
    }
}

/// One `<dependency>` entry of a manifest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencyDecl {
    pub ga: Ga,
    /// `None` until filled from dependency management.
    pub version: Option<String>,
    pub scope: Scope,
    pub optional: bool,
    pub exclusions: BTreeSet<Ga>,
}

impl DependencyDecl {
    pub fn new(ga: Ga, version: Option<String>) -> Self {
        DependencyDecl {
            ga,
            version,
            scope: Scope::Compile,
            optional: false,
            exclusions: BTreeSet::new(),
        }
    }

    pub fn coordinate(&self) -> Option<Coordinate> {
        self.version
            .as_ref()
            .map(|v| Coordinate::new(self.ga.group.clone(), self.ga.artifact.clone(), v.clone()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UsageStatus {
    Used,
    Bloated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    Direct,
    Inherited,
    Transitive,
}

/// Usage status crossed with origin: the six `ud/ui/ut/bd/bi/bt` labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UsageLabel {
    pub status: UsageStatus,
    pub origin: Origin,
}

impl UsageLabel {
    pub const ALL: [UsageLabel; 6] = [
        UsageLabel::new(UsageStatus::Used, Origin::Direct),
        UsageLabel::new(UsageStatus::Used, Origin::Inherited),
        UsageLabel::new(UsageStatus::Used, Origin::Transitive),
        UsageLabel::new(UsageStatus::Bloated, Origin::Direct),
        UsageLabel::new(UsageStatus::Bloated, Origin::Inherited),
        UsageLabel::new(UsageStatus::Bloated, Origin::Transitive),
    ];

    pub const fn new(status: UsageStatus, origin: Origin) -> Self {
        UsageLabel { status, origin }
    }

    pub fn code(self) -> &'static str {
        match (self.status, self.origin) {
            (UsageStatus::Used, Origin::Direct) => "ud",
            (UsageStatus::Used, Origin::Inherited) => "ui",
            (UsageStatus::Used, Origin::Transitive) => "ut",
            (UsageStatus::Bloated, Origin::Direct) => "bd",
            (UsageStatus::Bloated, Origin::Inherited) => "bi",
            (UsageStatus::Bloated, Origin::Transitive) => "bt",
        }
    }

    pub fn from_code(code: &str) -> Option<Self> {
        UsageLabel::ALL.into_iter().find(|l| l.code() == code)
    }

    pub fn is_bloated(self) -> bool {
        self.status == UsageStatus::Bloated
    }
}

impl fmt::Display for UsageLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for UsageLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        UsageLabel::from_code(s).ok_or_else(|| format!("unknown usage label `{s}`"))
    }
}

string_serde!(UsageLabel);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RefKind {
    Class,
    Method,
    Field,
    Annotation,
    StringLiteral,
}

/// A reference from bytecode to an external class or one of its members.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MemberRef {
    /// Dot-form qualified class name.
    pub owner: String,
    pub kind: RefKind,
    pub name: Option<String>,
    pub descriptor: Option<String>,
}

impl MemberRef {
    pub fn class(owner: impl Into<String>) -> Self {
        MemberRef {
            owner: owner.into(),
            kind: RefKind::Class,
            name: None,
            descriptor: None,
        }
    }

    pub fn annotation(owner: impl Into<String>) -> Self {
        MemberRef {
            owner: owner.into(),
            kind: RefKind::Annotation,
            name: None,
            descriptor: None,
        }
    }

    pub fn member(
        owner: impl Into<String>,
        kind: RefKind,
        name: impl Into<String>,
        descriptor: impl Into<String>,
    ) -> Self {
        MemberRef {
            owner: owner.into(),
            kind,
            name: Some(name.into()),
            descriptor: Some(descriptor.into()),
        }
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' || c == '$' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_' || c == '$')
}

/// `identifier ("." identifier)*`
pub fn is_qualified_name(s: &str) -> bool {
    s.split('.').all(is_identifier)
}

/// `identifier ("." identifier)+`: what a string literal must look like to be
/// treated as a reflective class reference.
pub fn looks_like_class_name(s: &str) -> bool {
    s.contains('.') && is_qualified_name(s)
}

/// Classes of the Java platform; never provided by a manifest dependency.
pub fn is_platform_class(name: &str) -> bool {
    ["java.", "javax.", "jdk.", "sun."]
        .iter()
        .any(|p| name.starts_with(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_jxls_poi_coordinate() {
        let c = parse_coordinate("org.jxls:jxls-poi:1.0.15").unwrap();
        assert_eq!(c, Coordinate::new("org.jxls", "jxls-poi", "1.0.15"));
    }

    #[test]
    fn parses_minimal_triple() {
        assert_eq!(
            parse_coordinate("a:b:c").unwrap(),
            Coordinate::new("a", "b", "c")
        );
    }

    #[test]
    fn rejects_malformed_coordinates() {
        for bad in [
            "a:b", "a:b:c:d", "a::c", ":b:c", "a:b:", "a b:c:d", "a:b:1 .0", "",
        ] {
            assert!(
                matches!(
                    parse_coordinate(bad),
                    Err(CoordinateError::Malformed { .. })
                ),
                "{bad:?} should be rejected"
            );
        }
    }

    #[test]
    fn ga_text_form() {
        let ga: Ga = "org.slf4j:slf4j-api".parse().unwrap();
        assert_eq!(ga, Ga::new("org.slf4j", "slf4j-api"));
        assert!("org.slf4j".parse::<Ga>().is_err());
    }

    #[test]
    fn label_codes() {
        let codes: Vec<_> = UsageLabel::ALL.iter().map(|l| l.code()).collect();
        assert_eq!(codes, ["ud", "ui", "ut", "bd", "bi", "bt"]);
        assert_eq!(UsageLabel::from_code("xx"), None);
    }

    #[test]
    fn qualified_names() {
        assert!(looks_like_class_name("com.example.Foo"));
        assert!(looks_like_class_name("a.b$C"));
        assert!(!looks_like_class_name("Foo"));
        assert!(!looks_like_class_name("org.example."));
        assert!(!looks_like_class_name("not a class"));
        assert!(!looks_like_class_name("1.2.3"));
        assert!(is_qualified_name("Foo"));
    }

    fn segment() -> impl Strategy<Value = String> {
        "[a-zA-Z0-9._-]{1,12}"
    }

    proptest! {
        #[test]
        fn render_is_left_inverse_of_parse(g in segment(), a in segment(), v in segment()) {
            let text = format!("{g}:{a}:{v}");
            let parsed = parse_coordinate(&text).unwrap();
            prop_assert_eq!(parsed.to_string(), text);
        }

        #[test]
        fn label_codes_round_trip(i in 0usize..6) {
            let label = UsageLabel::ALL[i];
            prop_assert_eq!(UsageLabel::from_code(label.code()), Some(label));
        }
    }
}

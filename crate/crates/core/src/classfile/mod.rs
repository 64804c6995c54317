//! Constant-pool based extraction of what a compiled class defines and
//! references. No bytecode instructions are decoded: every external class,
//! field and method a class touches is listed in its constant pool.

pub mod descriptor;
mod reader;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::model::{looks_like_class_name, MemberRef, RefKind};
use reader::Reader;

pub const MAGIC: u32 = 0xCAFE_BABE;
pub const MIN_MAJOR: u16 = 45;
/// Java 26.
pub const MAX_MAJOR: u16 = 70;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassParseError {
    #[error("bad magic number {0:#010x}")]
    BadMagic(u32),
    #[error("unsupported class-file version {major}.{minor}")]
    UnsupportedVersion { major: u16, minor: u16 },
    #[error("constant pool truncated at entry {index}")]
    TruncatedPool { index: u16 },
    #[error("unknown constant-pool tag {tag} at entry {index}")]
    UnknownPoolTag { tag: u8, index: u16 },
    #[error("class file truncated at offset {0}")]
    Truncated(usize),
    #[error("constant-pool index {index} does not refer to a {expected} entry")]
    BadPoolIndex { index: u16, expected: &'static str },
    #[error("malformed descriptor or signature `{0}`")]
    BadDescriptor(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MemberKind {
    Field,
    Method,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DefinedMember {
    pub kind: MemberKind,
    pub name: String,
    pub descriptor: String,
}

/// One parsed class. All names are in dot form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassSummary {
    pub name: String,
    pub super_name: Option<String>,
    pub interfaces: Vec<String>,
    pub defined_members: Vec<DefinedMember>,
    /// External references; never owned by `name` itself.
    pub refs: BTreeSet<MemberRef>,
    /// String constants shaped like qualified class names.
    pub string_class_candidates: BTreeSet<String>,
}

impl ClassSummary {
    /// Owners of all bytecode references, string-literal candidates excluded.
    pub fn referenced_classes(&self) -> BTreeSet<&str> {
        self.refs
            .iter()
            .filter(|r| r.kind != RefKind::StringLiteral)
            .map(|r| r.owner.as_str())
            .collect()
    }
}

#[derive(Debug, Clone)]
enum Entry {
    Unusable,
    Utf8(String),
    Class(u16),
    String(u16),
    MemberRef {
        kind: RefKind,
        class: u16,
        name_and_type: u16,
    },
    NameAndType {
        name: u16,
        descriptor: u16,
    },
    MethodType(u16),
    Other,
}

struct Pool(Vec<Entry>);

impl Pool {
    fn get(&self, index: u16) -> Option<&Entry> {
        self.0.get(index as usize)
    }

    fn utf8(&self, index: u16) -> Result<&str, ClassParseError> {
        match self.get(index) {
            Some(Entry::Utf8(s)) => Ok(s),
            _ => Err(ClassParseError::BadPoolIndex {
                index,
                expected: "Utf8",
            }),
        }
    }

    fn class_name(&self, index: u16) -> Result<&str, ClassParseError> {
        match self.get(index) {
            Some(Entry::Class(n)) => self.utf8(*n),
            _ => Err(ClassParseError::BadPoolIndex {
                index,
                expected: "Class",
            }),
        }
    }
}

fn read_pool(r: &mut Reader) -> Result<Pool, ClassParseError> {
    let count = r.u16()?;
    let mut entries = Vec::with_capacity(count as usize);
    entries.push(Entry::Unusable);
    let mut index = 1u16;
    while index < count {
        let truncated = |_| ClassParseError::TruncatedPool { index };
        let tag = r.u8().map_err(truncated)?;
        let (entry, slots) = match tag {
            1 => {
                let len = r.u16().map_err(truncated)?;
                let bytes = r.bytes(len as usize).map_err(truncated)?;
                (Entry::Utf8(reader::decode_modified_utf8(bytes)), 1)
            }
            3 | 4 => {
                r.skip(4).map_err(truncated)?;
                (Entry::Other, 1)
            }
            5 | 6 => {
                r.skip(8).map_err(truncated)?;
                (Entry::Other, 2)
            }
            7 => (Entry::Class(r.u16().map_err(truncated)?), 1),
            8 => (Entry::String(r.u16().map_err(truncated)?), 1),
            9..=11 => {
                let kind = if tag == 9 {
                    RefKind::Field
                } else {
                    RefKind::Method
                };
                let class = r.u16().map_err(truncated)?;
                let name_and_type = r.u16().map_err(truncated)?;
                (
                    Entry::MemberRef {
                        kind,
                        class,
                        name_and_type,
                    },
                    1,
                )
            }
            12 => {
                let name = r.u16().map_err(truncated)?;
                let descriptor = r.u16().map_err(truncated)?;
                (Entry::NameAndType { name, descriptor }, 1)
            }
            15 => {
                r.skip(3).map_err(truncated)?;
                (Entry::Other, 1)
            }
            16 => (Entry::MethodType(r.u16().map_err(truncated)?), 1),
            17 | 18 => {
                r.skip(4).map_err(truncated)?;
                (Entry::Other, 1)
            }
            19 | 20 => {
                r.skip(2).map_err(truncated)?;
                (Entry::Other, 1)
            }
            tag => return Err(ClassParseError::UnknownPoolTag { tag, index }),
        };
        entries.push(entry);
        if slots == 2 {
            entries.push(Entry::Unusable);
        }
        index = index.saturating_add(slots);
    }
    Ok(Pool(entries))
}

/// Accumulates references while walking the class.
struct Collector {
    refs: BTreeSet<MemberRef>,
}

impl Collector {
    fn class_internal(&mut self, internal: &str) -> Result<(), ClassParseError> {
        if internal.starts_with('[') {
            self.descriptor(internal)
        } else {
            self.refs
                .insert(MemberRef::class(internal.replace('/', ".")));
            Ok(())
        }
    }

    fn descriptor(&mut self, text: &str) -> Result<(), ClassParseError> {
        let names =
            descriptor::class_names(text).map_err(|e| ClassParseError::BadDescriptor(e.text))?;
        for n in names {
            self.refs.insert(MemberRef::class(n.replace('/', ".")));
        }
        Ok(())
    }

    fn annotation_type(&mut self, text: &str) -> Result<(), ClassParseError> {
        let names =
            descriptor::class_names(text).map_err(|e| ClassParseError::BadDescriptor(e.text))?;
        for n in names {
            let dotted = n.replace('/', ".");
            self.refs.insert(MemberRef::annotation(dotted.clone()));
            self.refs.insert(MemberRef::class(dotted));
        }
        Ok(())
    }
}

fn element_value(r: &mut Reader, pool: &Pool, c: &mut Collector) -> Result<(), ClassParseError> {
    match r.u8()? {
        b'B' | b'C' | b'D' | b'F' | b'I' | b'J' | b'S' | b'Z' | b's' => {
            r.u16()?;
        }
        b'e' => {
            let type_name = r.u16()?;
            r.u16()?;
            c.descriptor(pool.utf8(type_name)?)?;
        }
        b'c' => {
            let class_info = r.u16()?;
            c.descriptor(pool.utf8(class_info)?)?;
        }
        b'@' => annotation(r, pool, c)?,
        b'[' => {
            for _ in 0..r.u16()? {
                element_value(r, pool, c)?;
            }
        }
        _ => return Err(ClassParseError::Truncated(r.offset())),
    }
    Ok(())
}

fn annotation(r: &mut Reader, pool: &Pool, c: &mut Collector) -> Result<(), ClassParseError> {
    let type_index = r.u16()?;
    c.annotation_type(pool.utf8(type_index)?)?;
    for _ in 0..r.u16()? {
        r.u16()?;
        element_value(r, pool, c)?;
    }
    Ok(())
}

fn attributes(r: &mut Reader, pool: &Pool, c: &mut Collector) -> Result<(), ClassParseError> {
    for _ in 0..r.u16()? {
        let name = pool.utf8(r.u16()?)?;
        let len = r.u32()? as usize;
        let body = r.bytes(len)?;
        let mut a = Reader::new(body);
        match name {
            "RuntimeVisibleAnnotations" | "RuntimeInvisibleAnnotations" => {
                for _ in 0..a.u16()? {
                    annotation(&mut a, pool, c)?;
                }
            }
            "RuntimeVisibleParameterAnnotations" | "RuntimeInvisibleParameterAnnotations" => {
                for _ in 0..a.u8()? {
                    for _ in 0..a.u16()? {
                        annotation(&mut a, pool, c)?;
                    }
                }
            }
            "AnnotationDefault" => element_value(&mut a, pool, c)?,
            "Signature" => c.descriptor(pool.utf8(a.u16()?)?)?,
            _ => {}
        }
    }
    Ok(())
}

fn members(
    r: &mut Reader,
    pool: &Pool,
    kind: MemberKind,
    c: &mut Collector,
    out: &mut Vec<DefinedMember>,
) -> Result<(), ClassParseError> {
    for _ in 0..r.u16()? {
        r.u16()?; // access flags
        let name = pool.utf8(r.u16()?)?.to_string();
        let descriptor = pool.utf8(r.u16()?)?.to_string();
        c.descriptor(&descriptor)?;
        attributes(r, pool, c)?;
        out.push(DefinedMember {
            kind,
            name,
            descriptor,
        });
    }
    Ok(())
}

/// Parses one class file.
pub fn parse_class(bytes: &[u8]) -> Result<ClassSummary, ClassParseError> {
    let mut r = Reader::new(bytes);
    let magic = r.u32().map_err(|_| ClassParseError::BadMagic(0))?;
    if magic != MAGIC {
        return Err(ClassParseError::BadMagic(magic));
    }
    let minor = r.u16()?;
    let major = r.u16()?;
    if !(MIN_MAJOR..=MAX_MAJOR).contains(&major) {
        return Err(ClassParseError::UnsupportedVersion { major, minor });
    }
    let pool = read_pool(&mut r)?;
    let mut c = Collector {
        refs: BTreeSet::new(),
    };
    let mut strings = BTreeSet::new();

    for entry in &pool.0 {
        match entry {
            Entry::Class(n) => c.class_internal(pool.utf8(*n)?)?,
            Entry::String(s) => {
                let s = pool.utf8(*s)?;
                if looks_like_class_name(s) {
                    strings.insert(s.to_string());
                }
            }
            Entry::MemberRef {
                kind,
                class,
                name_and_type,
            } => {
                let owner = pool.class_name(*class)?;
                let (name, desc) = match pool.get(*name_and_type) {
                    Some(Entry::NameAndType { name, descriptor }) => {
                        (pool.utf8(*name)?, pool.utf8(*descriptor)?)
                    }
                    _ => {
                        return Err(ClassParseError::BadPoolIndex {
                            index: *name_and_type,
                            expected: "NameAndType",
                        })
                    }
                };
                // members of array types (e.g. clone) have no class owner
                if !owner.starts_with('[') {
                    c.refs.insert(MemberRef::member(
                        owner.replace('/', "."),
                        *kind,
                        name,
                        desc,
                    ));
                }
            }
            Entry::NameAndType { descriptor, .. } => c.descriptor(pool.utf8(*descriptor)?)?,
            Entry::MethodType(d) => c.descriptor(pool.utf8(*d)?)?,
            Entry::Utf8(_) | Entry::Unusable | Entry::Other => {}
        }
    }

    r.u16()?; // access flags
    let name = pool.class_name(r.u16()?)?.replace('/', ".");
    let super_index = r.u16()?;
    let super_name = match super_index {
        0 => None,
        i => Some(pool.class_name(i)?.replace('/', ".")),
    };
    let mut interfaces = Vec::new();
    for _ in 0..r.u16()? {
        interfaces.push(pool.class_name(r.u16()?)?.replace('/', "."));
    }
    let mut defined_members = Vec::new();
    members(
        &mut r,
        &pool,
        MemberKind::Field,
        &mut c,
        &mut defined_members,
    )?;
    members(
        &mut r,
        &pool,
        MemberKind::Method,
        &mut c,
        &mut defined_members,
    )?;
    attributes(&mut r, &pool, &mut c)?;

    for s in &strings {
        c.refs.insert(MemberRef {
            owner: s.clone(),
            kind: RefKind::StringLiteral,
            name: None,
            descriptor: None,
        });
    }
    c.refs.retain(|m| m.owner != name);
    Ok(ClassSummary {
        name,
        super_name,
        interfaces,
        defined_members,
        refs: c.refs,
        string_class_candidates: strings,
    })
}

/// A class entry that could not be parsed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryWarning {
    pub entry: String,
    pub error: ClassParseError,
}

impl std::fmt::Display for EntryWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.entry, self.error)
    }
}

#[derive(Debug, Clone, Default)]
pub struct ArchiveScan {
    pub classes: Vec<ClassSummary>,
    pub warnings: Vec<EntryWarning>,
}

/// Parses every `.class` entry; other entries are ignored and per-class
/// failures become warnings.
pub fn scan_archive<N: AsRef<str>, B: AsRef<[u8]>>(entries: &[(N, B)]) -> ArchiveScan {
    let mut scan = ArchiveScan::default();
    for (name, bytes) in entries {
        let name = name.as_ref();
        if !name.ends_with(".class") {
            continue;
        }
        match parse_class(bytes.as_ref()) {
            Ok(c) => scan.classes.push(c),
            Err(error) => scan.warnings.push(EntryWarning {
                entry: name.to_string(),
                error,
            }),
        }
    }
    scan
}

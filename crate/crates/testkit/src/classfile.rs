//! Emits small but well-formed class files. Only the constant pool, the
//! class header, member declarations and class annotations are written;
//! methods carry no code.

use std::collections::HashMap;

#[derive(Default)]
struct Pool {
    bytes: Vec<u8>,
    count: u16,
    dedupe: HashMap<Vec<u8>, u16>,
}

impl Pool {
    fn entry(&mut self, raw: Vec<u8>) -> u16 {
        if let Some(&i) = self.dedupe.get(&raw) {
            return i;
        }
        self.count += 1;
        let index = self.count;
        self.bytes.extend_from_slice(&raw);
        self.dedupe.insert(raw, index);
        index
    }

    fn utf8(&mut self, s: &str) -> u16 {
        // test names are plain ASCII, so standard and modified UTF-8 agree
        let mut raw = vec![1];
        raw.extend_from_slice(&(s.len() as u16).to_be_bytes());
        raw.extend_from_slice(s.as_bytes());
        self.entry(raw)
    }

    fn tagged(&mut self, tag: u8, a: u16, b: Option<u16>) -> u16 {
        let mut raw = vec![tag];
        raw.extend_from_slice(&a.to_be_bytes());
        if let Some(b) = b {
            raw.extend_from_slice(&b.to_be_bytes());
        }
        self.entry(raw)
    }

    fn class(&mut self, internal: &str) -> u16 {
        let n = self.utf8(internal);
        self.tagged(7, n, None)
    }

    fn string(&mut self, s: &str) -> u16 {
        let n = self.utf8(s);
        self.tagged(8, n, None)
    }

    fn member(&mut self, tag: u8, owner: &str, name: &str, desc: &str) -> u16 {
        let c = self.class(owner);
        let n = self.utf8(name);
        let d = self.utf8(desc);
        let nat = self.tagged(12, n, Some(d));
        self.tagged(tag, c, Some(nat))
    }
}

fn internal(dotted: &str) -> String {
    dotted.replace('.', "/")
}

/// Builder for one class; names are given in dot form.
#[derive(Debug, Clone)]
pub struct ClassBuilder {
    name: String,
    super_name: String,
    interfaces: Vec<String>,
    class_refs: Vec<String>,
    method_refs: Vec<(String, String, String)>,
    field_refs: Vec<(String, String, String)>,
    strings: Vec<String>,
    fields: Vec<(String, String)>,
    methods: Vec<(String, String)>,
    annotations: Vec<String>,
}

impl ClassBuilder {
    pub fn new(name: &str) -> Self {
        ClassBuilder {
            name: name.to_string(),
            super_name: "java.lang.Object".to_string(),
            interfaces: Vec::new(),
            class_refs: Vec::new(),
            method_refs: Vec::new(),
            field_refs: Vec::new(),
            strings: Vec::new(),
            fields: Vec::new(),
            methods: vec![("<init>".to_string(), "()V".to_string())],
            annotations: Vec::new(),
        }
    }

    pub fn extends(mut self, super_name: &str) -> Self {
        self.super_name = super_name.to_string();
        self
    }

    pub fn implements(mut self, iface: &str) -> Self {
        self.interfaces.push(iface.to_string());
        self
    }

    pub fn class_ref(mut self, class: &str) -> Self {
        self.class_refs.push(class.to_string());
        self
    }

    pub fn method_ref(mut self, owner: &str, name: &str, desc: &str) -> Self {
        self.method_refs
            .push((owner.to_string(), name.to_string(), desc.to_string()));
        self
    }

    pub fn field_ref(mut self, owner: &str, name: &str, desc: &str) -> Self {
        self.field_refs
            .push((owner.to_string(), name.to_string(), desc.to_string()));
        self
    }

    pub fn string(mut self, literal: &str) -> Self {
        self.strings.push(literal.to_string());
        self
    }

    pub fn field(mut self, name: &str, desc: &str) -> Self {
        self.fields.push((name.to_string(), desc.to_string()));
        self
    }

    pub fn method(mut self, name: &str, desc: &str) -> Self {
        self.methods.push((name.to_string(), desc.to_string()));
        self
    }

    /// Adds a runtime-visible class annotation of type `class`.
    pub fn annotation(mut self, class: &str) -> Self {
        self.annotations.push(class.to_string());
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Archive entry name, e.g. `com/x/C.class`.
    pub fn entry_name(&self) -> String {
        format!("{}.class", internal(&self.name))
    }

    pub fn build(&self) -> Vec<u8> {
        let mut pool = Pool::default();
        let this = pool.class(&internal(&self.name));
        let sup = pool.class(&internal(&self.super_name));
        let ifaces: Vec<u16> = self
            .interfaces
            .iter()
            .map(|i| pool.class(&internal(i)))
            .collect();
        for c in &self.class_refs {
            pool.class(&internal(c));
        }
        for (o, n, d) in &self.method_refs {
            pool.member(10, &internal(o), n, d);
        }
        for (o, n, d) in &self.field_refs {
            pool.member(9, &internal(o), n, d);
        }
        for s in &self.strings {
            pool.string(s);
        }
        let members = |pool: &mut Pool, list: &[(String, String)]| {
            let mut out = Vec::new();
            out.extend_from_slice(&(list.len() as u16).to_be_bytes());
            for (n, d) in list {
                let ni = pool.utf8(n);
                let di = pool.utf8(d);
                out.extend_from_slice(&0x0001u16.to_be_bytes());
                out.extend_from_slice(&ni.to_be_bytes());
                out.extend_from_slice(&di.to_be_bytes());
                out.extend_from_slice(&0u16.to_be_bytes());
            }
            out
        };
        let fields = members(&mut pool, &self.fields);
        let methods = members(&mut pool, &self.methods);
        let mut attrs = Vec::new();
        if self.annotations.is_empty() {
            attrs.extend_from_slice(&0u16.to_be_bytes());
        } else {
            let name = pool.utf8("RuntimeVisibleAnnotations");
            let mut body = Vec::new();
            body.extend_from_slice(&(self.annotations.len() as u16).to_be_bytes());
            for a in &self.annotations {
                let t = pool.utf8(&format!("L{};", internal(a)));
                body.extend_from_slice(&t.to_be_bytes());
                body.extend_from_slice(&0u16.to_be_bytes());
            }
            attrs.extend_from_slice(&1u16.to_be_bytes());
            attrs.extend_from_slice(&name.to_be_bytes());
            attrs.extend_from_slice(&(body.len() as u32).to_be_bytes());
            attrs.extend_from_slice(&body);
        }

        let mut out = vec![0xCA, 0xFE, 0xBA, 0xBE, 0, 0, 0, 52];
        out.extend_from_slice(&(pool.count + 1).to_be_bytes());
        out.extend_from_slice(&pool.bytes);
        out.extend_from_slice(&0x0021u16.to_be_bytes());
        out.extend_from_slice(&this.to_be_bytes());
        out.extend_from_slice(&sup.to_be_bytes());
        out.extend_from_slice(&(ifaces.len() as u16).to_be_bytes());
        for i in ifaces {
            out.extend_from_slice(&i.to_be_bytes());
        }
        out.extend_from_slice(&fields);
        out.extend_from_slice(&methods);
        out.extend_from_slice(&attrs);
        out
    }
}

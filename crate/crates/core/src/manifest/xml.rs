//! Minimal owned XML element tree: enough to read a POM, edit it and write it
//! back with canonical indentation. Comments and processing instructions are
//! dropped; element order and attributes are kept.

use std::fmt::Write;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Node {
    Element(Element),
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Element {
    pub name: String,
    pub attrs: Vec<(String, String)>,
    pub children: Vec<Node>,
}

impl Element {
    pub fn new(name: &str) -> Self {
        Element {
            name: name.to_string(),
            attrs: Vec::new(),
            children: Vec::new(),
        }
    }

    pub fn with_text(name: &str, text: &str) -> Self {
        let mut e = Element::new(name);
        e.children.push(Node::Text(text.to_string()));
        e
    }

    pub fn parse(text: &str) -> Result<Element, roxmltree::Error> {
        let doc = roxmltree::Document::parse(text)?;
        Ok(convert(doc.root_element(), None))
    }

    pub fn elements(&self) -> impl Iterator<Item = &Element> {
        self.children.iter().filter_map(|n| match n {
            Node::Element(e) => Some(e),
            Node::Text(_) => None,
        })
    }

    pub fn children_named<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a Element> + 'a {
        self.elements().filter(move |e| e.name == name)
    }

    pub fn child(&self, name: &str) -> Option<&Element> {
        self.elements().find(|e| e.name == name)
    }

    pub fn child_mut(&mut self, name: &str) -> Option<&mut Element> {
        self.children.iter_mut().find_map(|n| match n {
            Node::Element(e) if e.name == name => Some(e),
            _ => None,
        })
    }

    /// Concatenated, trimmed character data of this element.
    pub fn text(&self) -> String {
        let mut out = String::new();
        for n in &self.children {
            if let Node::Text(t) = n {
                out.push_str(t);
            }
        }
        out.trim().to_string()
    }

    pub fn child_text(&self, name: &str) -> Option<String> {
        self.child(name).map(Element::text)
    }

    pub fn push(&mut self, e: Element) {
        self.children.push(Node::Element(e));
    }

    /// Serializes the document with an XML declaration and 2-space indent.
    pub fn to_document(&self) -> String {
        let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        self.write(&mut out, 0);
        out
    }

    fn write(&self, out: &mut String, depth: usize) {
        let indent = "  ".repeat(depth);
        out.push_str(&indent);
        out.push('<');
        out.push_str(&self.name);
        for (k, v) in &self.attrs {
            let _ = write!(out, " {}=\"{}\"", k, escape(v, true));
        }
        let has_elements = self.elements().next().is_some();
        if !has_elements {
            let text: String = self
                .children
                .iter()
                .filter_map(|n| match n {
                    Node::Text(t) => Some(t.as_str()),
                    Node::Element(_) => None,
                })
                .collect();
            if text.is_empty() {
                out.push_str("/>\n");
            } else {
                let _ = writeln!(out, ">{}</{}>", escape(&text, false), self.name);
            }
            return;
        }
        out.push_str(">\n");
        for n in &self.children {
            match n {
                Node::Element(e) => e.write(out, depth + 1),
                Node::Text(t) => {
                    let t = t.trim();
                    if !t.is_empty() {
                        let _ = writeln!(out, "{indent}  {}", escape(t, false));
                    }
                }
            }
        }
        let _ = writeln!(out, "{indent}</{}>", self.name);
    }
}

fn escape(s: &str, attr: bool) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' if attr => out.push_str("&quot;"),
            c => out.push(c),
        }
    }
    out
}

fn qualified(node: roxmltree::Node, ns: Option<&str>, local: &str) -> String {
    let prefix = ns.and_then(|uri| {
        node.namespaces()
            .find(|n| n.uri() == uri && n.name().is_some())
            .and_then(|n| n.name())
    });
    match prefix {
        Some(p) => format!("{p}:{local}"),
        None => local.to_string(),
    }
}

fn convert(node: roxmltree::Node, parent: Option<roxmltree::Node>) -> Element {
    let tag = node.tag_name();
    let mut e = Element::new(&qualified(node, tag.namespace(), tag.name()));
    // namespace declarations introduced at this element
    for ns in node.namespaces() {
        let inherited = parent
            .map(|p| {
                p.namespaces()
                    .any(|q| q.name() == ns.name() && q.uri() == ns.uri())
            })
            .unwrap_or(false);
        if inherited || ns.name() == Some("xml") {
            continue;
        }
        let key = match ns.name() {
            Some(p) => format!("xmlns:{p}"),
            None => "xmlns".to_string(),
        };
        e.attrs.push((key, ns.uri().to_string()));
    }
    for a in node.attributes() {
        e.attrs.push((
            qualified(node, a.namespace(), a.name()),
            a.value().to_string(),
        ));
    }
    for child in node.children() {
        if child.is_element() {
            e.children.push(Node::Element(convert(child, Some(node))));
        } else if child.is_text() {
            if let Some(t) = child.text() {
                e.children.push(Node::Text(t.to_string()));
            }
        }
    }
    e
}

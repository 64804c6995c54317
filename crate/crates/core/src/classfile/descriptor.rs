//! Class names embedded in field/method descriptors and generic signatures.
//!
//! Descriptors are a subset of the signature grammar, so one scanner serves
//! both. Names are returned in internal (`/`) form.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadSignature {
    pub text: String,
    pub offset: usize,
}

struct Scanner<'a> {
    s: &'a [u8],
    pos: usize,
    out: Vec<String>,
}

impl<'a> Scanner<'a> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn expect(&mut self, c: u8) -> Result<(), ()> {
        if self.bump() == Some(c) {
            Ok(())
        } else {
            Err(())
        }
    }

    /// Identifier up to (not including) one of the signature delimiters.
    fn identifier(&mut self) -> Result<&'a str, ()> {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if matches!(c, b';' | b'<' | b'>' | b'.' | b':' | b'/' | b'[') {
                break;
            }
            self.pos += 1;
        }
        if self.pos == start {
            return Err(());
        }
        std::str::from_utf8(&self.s[start..self.pos]).map_err(|_| ())
    }

    /// `<` FormalTypeParameter+ `>`
    fn formal_type_parameters(&mut self) -> Result<(), ()> {
        if self.peek() != Some(b'<') {
            return Ok(());
        }
        self.pos += 1;
        while self.peek() != Some(b'>') {
            self.identifier()?;
            self.expect(b':')?;
            // class bound may be empty
            if !matches!(self.peek(), Some(b':') | Some(b'>')) {
                self.reference_type()?;
            }
            while self.peek() == Some(b':') {
                self.pos += 1;
                self.reference_type()?;
            }
        }
        self.pos += 1;
        Ok(())
    }

    fn type_arguments(&mut self) -> Result<(), ()> {
        if self.peek() != Some(b'<') {
            return Ok(());
        }
        self.pos += 1;
        while self.peek() != Some(b'>') {
            match self.peek() {
                Some(b'*') => self.pos += 1,
                Some(b'+') | Some(b'-') => {
                    self.pos += 1;
                    self.reference_type()?;
                }
                _ => self.reference_type()?,
            }
        }
        self.pos += 1;
        Ok(())
    }

    /// `L` pkg/Name TypeArgs? (`.` Inner TypeArgs?)* `;`
    fn class_type(&mut self) -> Result<(), ()> {
        self.expect(b'L')?;
        let start = self.pos;
        loop {
            self.identifier()?;
            if self.peek() == Some(b'/') {
                self.pos += 1;
            } else {
                break;
            }
        }
        let name = std::str::from_utf8(&self.s[start..self.pos]).map_err(|_| ())?;
        self.out.push(name.to_string());
        self.type_arguments()?;
        // inner-class suffixes name the same outer type; the nested class
        // itself is listed by its own Class pool entry
        while self.peek() == Some(b'.') {
            self.pos += 1;
            self.identifier()?;
            self.type_arguments()?;
        }
        self.expect(b';')
    }

    fn reference_type(&mut self) -> Result<(), ()> {
        match self.peek() {
            Some(b'L') => self.class_type(),
            Some(b'T') => {
                self.pos += 1;
                self.identifier()?;
                self.expect(b';')
            }
            Some(b'[') => {
                self.pos += 1;
                self.any_type()
            }
            _ => Err(()),
        }
    }

    fn any_type(&mut self) -> Result<(), ()> {
        match self.peek() {
            Some(b'B' | b'C' | b'D' | b'F' | b'I' | b'J' | b'S' | b'Z') => {
                self.pos += 1;
                Ok(())
            }
            _ => self.reference_type(),
        }
    }

    fn return_type(&mut self) -> Result<(), ()> {
        if self.peek() == Some(b'V') {
            self.pos += 1;
            Ok(())
        } else {
            self.any_type()
        }
    }

    fn method(&mut self) -> Result<(), ()> {
        self.formal_type_parameters()?;
        self.expect(b'(')?;
        while self.peek() != Some(b')') {
            self.any_type()?;
        }
        self.pos += 1;
        self.return_type()?;
        while self.peek() == Some(b'^') {
            self.pos += 1;
            self.reference_type()?;
        }
        Ok(())
    }

    fn class_signature(&mut self) -> Result<(), ()> {
        self.formal_type_parameters()?;
        while self.peek().is_some() {
            self.class_type()?;
        }
        Ok(())
    }
}

fn scan(
    text: &str,
    f: impl FnOnce(&mut Scanner) -> Result<(), ()>,
) -> Result<Vec<String>, BadSignature> {
    let mut sc = Scanner {
        s: text.as_bytes(),
        pos: 0,
        out: Vec::new(),
    };
    match f(&mut sc) {
        Ok(()) if sc.pos == sc.s.len() => Ok(sc.out),
        _ => Err(BadSignature {
            text: text.to_string(),
            offset: sc.pos,
        }),
    }
}

/// Class names in any field type, method descriptor or signature,
/// class signatures included. Type variables contribute nothing.
pub fn class_names(text: &str) -> Result<Vec<String>, BadSignature> {
    let first = text.as_bytes().first().copied();
    scan(text, |sc| match first {
        Some(b'(') => sc.method(),
        Some(b'<') => {
            // generic method or class signature; decide after the parameters
            sc.formal_type_parameters()?;
            if sc.peek() == Some(b'(') {
                sc.method()
            } else {
                sc.class_signature()
            }
        }
        Some(b'V') if text.len() == 1 => sc.return_type(),
        _ => {
            sc.any_type()?;
            // a class signature without type parameters is a list of supertypes
            sc.class_signature()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(s: &str) -> Vec<String> {
        class_names(s).unwrap()
    }

    #[test]
    fn field_descriptors() {
        assert_eq!(names("I"), Vec::<String>::new());
        assert_eq!(names("Ljava/lang/String;"), ["java/lang/String"]);
        assert_eq!(names("[[[Ljava/awt/Rectangle;"), ["java/awt/Rectangle"]);
        assert_eq!(names("[[D"), Vec::<String>::new());
    }

    #[test]
    fn method_descriptors() {
        assert_eq!(
            names("([[I[Ljava/math/BigDecimal;)[Lfixture/cf/Shape;"),
            ["java/math/BigDecimal", "fixture/cf/Shape"]
        );
        assert_eq!(names("()V"), Vec::<String>::new());
    }

    #[test]
    fn generic_signatures() {
        assert_eq!(
            names("Ljava/util/Map<Ljava/lang/String;+Ljava/lang/Number;>;"),
            ["java/util/Map", "java/lang/String", "java/lang/Number"]
        );
        assert_eq!(
            names("<T:Ljava/lang/Object;LIST::Ljava/lang/Comparable<TT;>;>(TT;)TLIST;^Ljava/io/IOException;"),
            ["java/lang/Object", "java/lang/Comparable", "java/io/IOException"]
        );
        assert_eq!(
            names("<E:Ljava/lang/Object;>Ljava/util/AbstractList<TE;>;Ljava/util/RandomAccess;"),
            [
                "java/lang/Object",
                "java/util/AbstractList",
                "java/util/RandomAccess"
            ]
        );
        assert_eq!(
            names("La/Outer<Ljava/lang/String;>.Inner<[I>;"),
            ["a/Outer", "java/lang/String"]
        );
        assert_eq!(names("Ljava/util/List<*>;"), ["java/util/List"]);
    }

    #[test]
    fn malformed_input_is_rejected() {
        for bad in ["", "L;", "Ljava/lang/String", "(I", "Q", "(I)", "<T>()V"] {
            assert!(class_names(bad).is_err(), "{bad:?}");
        }
    }
}

//! Declaration-level Java parsing.
//!
//! Parses packages, imports, type declarations (nested included), fields,
//! methods, constructors and doc comments. Method bodies and initializers are
//! kept as verbatim text and skipped by bracket matching; no statement-level
//! tree is ever built.

mod lexer;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

pub use lexer::{tokenize_java, JavaToken, JavaTokenKind};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct JavaSyntaxError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TypeKind {
    Class,
    Interface,
    Enum,
    Record,
    Annotation,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Modifiers {
    pub words: Vec<String>,
}

impl Modifiers {
    pub fn has(&self, w: &str) -> bool {
        self.words.iter().any(|x| x == w)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawParam {
    pub ty: String,
    pub name: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawMethod {
    pub name: String,
    pub type_params: Vec<String>,
    /// `None` for constructors.
    pub return_type: Option<String>,
    pub params: Vec<RawParam>,
    pub throws: Vec<String>,
    pub modifiers: Modifiers,
    pub signature_text: String,
    pub source_text: String,
    pub doc: Option<String>,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawField {
    pub name: String,
    pub ty: String,
    pub modifiers: Modifiers,
    pub declaration_text: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawType {
    pub name: String,
    pub kind: TypeKind,
    pub modifiers: Modifiers,
    pub type_params: Vec<String>,
    pub extends: Vec<String>,
    pub implements: Vec<String>,
    pub declaration_text: String,
    pub fields: Vec<RawField>,
    pub methods: Vec<RawMethod>,
    pub nested: Vec<RawType>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawUnit {
    pub package: String,
    pub imports: Vec<String>,
    pub types: Vec<RawType>,
}

pub fn parse_compilation_unit(src: &str) -> Result<RawUnit, JavaSyntaxError> {
    let toks = tokenize_java(src)?;
    let mut p = Parser { src, toks, pos: 0, pending_doc: None };
    p.unit()
}

/// Parses a lone method or constructor signature such as
/// `public static byte[] encodeInteger(final BigInteger bigInteger)`.
/// A name followed directly by `(` is taken as a constructor.
pub fn parse_signature(text: &str) -> Result<RawMethod, JavaSyntaxError> {
    let src = format!("{} ;", text.trim().trim_end_matches(';'));
    let toks = tokenize_java(&src)?;
    let mut p = Parser { src: &src, toks, pos: 0, pending_doc: None };
    let start = p.pos;
    p.skip_annotations()?;
    let modifiers = p.modifiers()?;
    let type_params = if p.peek_is("<") { p.type_params()? } else { Vec::new() };
    let is_ctor = p.peek().is_some_and(|t| t.is_ident()) && p.peek_at(1).is_some_and(|t| t.is("("));
    let owner = if is_ctor { p.peek().map(|t| t.text.to_string()).unwrap_or_default() } else { String::new() };
    let member = p.method_rest(start, modifiers, type_params, is_ctor, &owner)?;
    if p.pos < p.toks.len() {
        return Err(p.error("trailing tokens after signature"));
    }
    Ok(member)
}

/// Parses a lone field declaration such as `public static final int MAX = 3`.
pub fn parse_field_declaration(text: &str) -> Result<Vec<RawField>, JavaSyntaxError> {
    let src = format!("{} ;", text.trim().trim_end_matches(';'));
    let toks = tokenize_java(&src)?;
    let mut p = Parser { src: &src, toks, pos: 0, pending_doc: None };
    let start = p.pos;
    p.skip_annotations()?;
    let modifiers = p.modifiers()?;
    let ty = p.type_text()?;
    p.field_rest(start, modifiers, ty)
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<JavaToken<'a>>,
    pos: usize,
    pending_doc: Option<usize>,
}

const MODIFIERS: &[&str] = &[
    "public", "protected", "private", "static", "final", "abstract", "native", "synchronized",
    "transient", "volatile", "strictfp", "default", "sealed",
];

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&JavaToken<'a>> {
        self.peek_at(0)
    }

    /// Lookahead skipping doc comments.
    fn peek_at(&self, n: usize) -> Option<&JavaToken<'a>> {
        self.toks[self.pos..].iter().filter(|t| t.kind != JavaTokenKind::DocComment).nth(n)
    }

    fn peek_is(&self, text: &str) -> bool {
        self.peek().is_some_and(|t| t.is(text))
    }

    fn line(&self) -> usize {
        self.toks.get(self.pos).or(self.toks.last()).map(|t| t.line).unwrap_or(1)
    }

    fn error(&self, msg: &str) -> JavaSyntaxError {
        let found = self.peek().map(|t| t.text).unwrap_or("end of input");
        JavaSyntaxError { line: self.line(), message: format!("{msg} (found `{found}`)") }
    }

    /// Advances over the next non-doc token, remembering the last doc comment.
    fn bump(&mut self) -> Option<JavaToken<'a>> {
        while let Some(t) = self.toks.get(self.pos) {
            self.pos += 1;
            if t.kind == JavaTokenKind::DocComment {
                self.pending_doc = Some(self.pos - 1);
                continue;
            }
            return Some(*t);
        }
        None
    }

    fn skip_docs(&mut self) {
        while let Some(t) = self.toks.get(self.pos) {
            if t.kind != JavaTokenKind::DocComment {
                break;
            }
            self.pending_doc = Some(self.pos);
            self.pos += 1;
        }
    }

    fn expect(&mut self, text: &str) -> Result<JavaToken<'a>, JavaSyntaxError> {
        if self.peek_is(text) {
            Ok(self.bump().expect("peeked"))
        } else {
            Err(self.error(&format!("expected `{text}`")))
        }
    }

    fn ident(&mut self) -> Result<JavaToken<'a>, JavaSyntaxError> {
        match self.peek() {
            Some(t) if t.is_ident() => Ok(self.bump().expect("peeked")),
            _ => Err(self.error("expected identifier")),
        }
    }

    fn qualified_name(&mut self) -> Result<String, JavaSyntaxError> {
        let mut name = String::from(self.ident()?.text);
        while self.peek_is(".") && self.peek_at(1).is_some_and(|t| t.is_ident()) {
            self.bump();
            name.push('.');
            name.push_str(self.ident()?.text);
        }
        Ok(name)
    }

    fn unit(&mut self) -> Result<RawUnit, JavaSyntaxError> {
        let mut unit = RawUnit::default();
        self.skip_docs();
        let save = self.pos;
        self.skip_annotations()?;
        if self.peek_is("package") {
            self.bump();
            unit.package = self.qualified_name()?;
            self.expect(";")?;
        } else {
            self.pos = save;
        }
        loop {
            self.skip_docs();
            if self.peek_is("import") {
                self.bump();
                let mut import = String::new();
                if self.peek_is("static") {
                    self.bump();
                    import.push_str("static ");
                }
                import.push_str(&self.qualified_name()?);
                if self.peek_is(".") {
                    self.bump();
                    self.expect("*")?;
                    import.push_str(".*");
                }
                self.expect(";")?;
                unit.imports.push(import);
            } else if self.peek_is(";") {
                self.bump();
            } else {
                break;
            }
        }
        while self.peek().is_some() {
            if self.peek_is(";") {
                self.bump();
                continue;
            }
            self.pending_doc = None;
            self.skip_docs();
            let start = self.pos;
            self.skip_annotations()?;
            let modifiers = self.modifiers()?;
            match self.type_declaration(start, modifiers)? {
                Some(t) => unit.types.push(t),
                None => return Err(self.error("expected type declaration")),
            }
        }
        Ok(unit)
    }

    fn skip_annotations(&mut self) -> Result<(), JavaSyntaxError> {
        while self.peek_is("@") && !self.peek_at(1).is_some_and(|t| t.is("interface")) {
            self.bump();
            self.qualified_name()?;
            if self.peek_is("(") {
                self.skip_balanced("(", ")")?;
            }
        }
        Ok(())
    }

    fn modifiers(&mut self) -> Result<Modifiers, JavaSyntaxError> {
        let mut m = Modifiers::default();
        loop {
            self.skip_annotations()?;
            match self.peek() {
                Some(t) if t.is_ident() && MODIFIERS.contains(&t.text) => {
                    // `default` inside an annotation body or switch is not ours to see
                    m.words.push(String::from(t.text));
                    self.bump();
                }
                Some(t) if t.is("non") && self.peek_at(1).is_some_and(|t| t.is("-")) => {
                    self.bump();
                    self.bump();
                    self.ident()?;
                    m.words.push(String::from("non-sealed"));
                }
                _ => return Ok(m),
            }
        }
    }

    fn skip_balanced(&mut self, open: &str, close: &str) -> Result<JavaToken<'a>, JavaSyntaxError> {
        let first = self.expect(open)?;
        let mut depth = 1usize;
        while depth > 0 {
            let t = self.bump().ok_or_else(|| JavaSyntaxError {
                line: first.line,
                message: format!("unbalanced `{open}`"),
            })?;
            if t.is(open) {
                depth += 1;
            } else if t.is(close) {
                depth -= 1;
                if depth == 0 {
                    return Ok(t);
                }
            }
        }
        unreachable!()
    }

    fn type_params(&mut self) -> Result<Vec<String>, JavaSyntaxError> {
        let open = self.pos;
        self.skip_balanced("<", ">")?;
        // names are the identifiers at nesting depth 1 directly after `<` or `,`
        let mut names = Vec::new();
        let mut depth = 0;
        let mut prev = "";
        for t in &self.toks[open..self.pos] {
            if t.kind == JavaTokenKind::DocComment {
                continue;
            }
            if t.is("<") {
                depth += 1;
            } else if t.is(">") {
                depth -= 1;
            } else if depth == 1 && t.is_ident() && (prev == "<" || prev == ",") {
                names.push(String::from(t.text));
            }
            prev = t.text;
        }
        Ok(names)
    }

    /// A type as text: `Map<String, List<Integer>>`, `int[]`, `T...`.
    fn type_text(&mut self) -> Result<String, JavaSyntaxError> {
        self.skip_annotations()?;
        let mut text = String::new();
        if self.peek_is("?") {
            self.bump();
            text.push('?');
        } else {
            text.push_str(self.ident()?.text);
        }
        loop {
            if self.peek_is("<") {
                let open = self.pos;
                self.skip_balanced("<", ">")?;
                for t in &self.toks[open..self.pos] {
                    if t.kind == JavaTokenKind::DocComment {
                        continue;
                    }
                    text.push_str(t.text);
                    if t.is(",") {
                        text.push(' ');
                    } else if t.is_ident() && (t.text == "extends" || t.text == "super") {
                        text.insert(text.len() - t.text.len(), ' ');
                        text.push(' ');
                    }
                }
            }
            if self.peek_is(".") && self.peek_at(1).is_some_and(|t| t.is_ident() || t.is("@")) {
                self.bump();
                self.skip_annotations()?;
                text.push('.');
                text.push_str(self.ident()?.text);
                continue;
            }
            break;
        }
        self.skip_annotations()?;
        while self.peek_is("[") && self.peek_at(1).is_some_and(|t| t.is("]")) {
            self.bump();
            self.bump();
            text.push_str("[]");
        }
        if self.peek_is("...") {
            self.bump();
            text.push_str("...");
        }
        Ok(text)
    }

    fn type_list(&mut self) -> Result<Vec<String>, JavaSyntaxError> {
        let mut out = alloc::vec![self.type_text()?];
        while self.peek_is(",") {
            self.bump();
            out.push(self.type_text()?);
        }
        Ok(out)
    }

    /// First byte of the first non-doc token at or after `idx`.
    fn start_byte(&self, idx: usize) -> usize {
        self.toks[idx..]
            .iter()
            .find(|t| t.kind != JavaTokenKind::DocComment)
            .map(|t| t.start)
            .unwrap_or(self.src.len())
    }

    fn prev_end(&self) -> usize {
        self.toks[..self.pos].iter().rev().find(|t| t.kind != JavaTokenKind::DocComment).map(|t| t.end).unwrap_or(0)
    }

    fn type_declaration(&mut self, start: usize, modifiers: Modifiers) -> Result<Option<RawType>, JavaSyntaxError> {
        let kind = match self.peek() {
            Some(t) if t.is("class") => TypeKind::Class,
            Some(t) if t.is("interface") => TypeKind::Interface,
            Some(t) if t.is("enum") => TypeKind::Enum,
            Some(t) if t.is("record") && self.peek_at(1).is_some_and(|n| n.is_ident()) => TypeKind::Record,
            Some(t) if t.is("@") && self.peek_at(1).is_some_and(|n| n.is("interface")) => {
                self.bump();
                TypeKind::Annotation
            }
            _ => return Ok(None),
        };
        self.bump();
        let name = String::from(self.ident()?.text);
        let type_params = if self.peek_is("<") { self.type_params()? } else { Vec::new() };
        let mut record_components = Vec::new();
        if kind == TypeKind::Record {
            record_components = self.params()?;
        }
        let mut extends = Vec::new();
        let mut implements = Vec::new();
        loop {
            if self.peek_is("extends") {
                self.bump();
                extends = self.type_list()?;
            } else if self.peek_is("implements") {
                self.bump();
                implements = self.type_list()?;
            } else if self.peek_is("permits") {
                self.bump();
                self.type_list()?;
            } else {
                break;
            }
        }
        let declaration_text = collapse_whitespace(&self.src[self.signature_start(start)..self.prev_end()]);
        let mut ty = RawType {
            name,
            kind,
            modifiers,
            type_params,
            extends,
            implements,
            declaration_text,
            fields: Vec::new(),
            methods: Vec::new(),
            nested: Vec::new(),
        };
        for c in &record_components {
            ty.fields.push(RawField {
                name: c.name.clone(),
                ty: c.ty.clone(),
                modifiers: Modifiers { words: alloc::vec![String::from("private"), String::from("final")] },
                declaration_text: format!("private final {} {}", c.ty, c.name),
            });
            let sig = format!("public {} {}()", c.ty, c.name);
            ty.methods.push(RawMethod {
                name: c.name.clone(),
                type_params: Vec::new(),
                return_type: Some(c.ty.clone()),
                params: Vec::new(),
                throws: Vec::new(),
                modifiers: Modifiers { words: alloc::vec![String::from("public")] },
                signature_text: sig.clone(),
                source_text: sig,
                doc: None,
                line: self.line(),
            });
        }
        self.class_body(&mut ty)?;
        Ok(Some(ty))
    }

    fn class_body(&mut self, ty: &mut RawType) -> Result<(), JavaSyntaxError> {
        self.expect("{")?;
        if ty.kind == TypeKind::Enum {
            self.enum_constants(ty)?;
        }
        loop {
            self.pending_doc = None;
            self.skip_docs();
            match self.peek() {
                None => return Err(self.error("unterminated class body")),
                Some(t) if t.is("}") => {
                    self.bump();
                    return Ok(());
                }
                Some(t) if t.is(";") => {
                    self.bump();
                    continue;
                }
                _ => {}
            }
            let doc = self.pending_doc.take();
            let start = self.pos;
            self.skip_annotations()?;
            let modifiers = self.modifiers()?;
            if self.peek_is("{") {
                self.skip_balanced("{", "}")?;
                continue;
            }
            if let Some(nested) = self.type_declaration(start, modifiers.clone())? {
                ty.nested.push(nested);
                continue;
            }
            let type_params = if self.peek_is("<") { self.type_params()? } else { Vec::new() };
            let is_ctor = self.peek().is_some_and(|t| t.text == ty.name) && self.peek_at(1).is_some_and(|t| t.is("("));
            // compact record constructor: `Name {`
            if ty.kind == TypeKind::Record
                && self.peek().is_some_and(|t| t.text == ty.name)
                && self.peek_at(1).is_some_and(|t| t.is("{"))
            {
                self.bump();
                self.skip_balanced("{", "}")?;
                continue;
            }
            if is_ctor {
                let mut m = self.method_rest(start, modifiers, type_params, true, &ty.name.clone())?;
                m.doc = doc.map(|i| self.doc_text(i));
                ty.methods.push(m);
                continue;
            }
            let member_type = self.type_text()?;
            if self.peek().is_some_and(|t| t.is_ident()) && self.peek_at(1).is_some_and(|t| t.is("(")) {
                let mut m = self.method_rest_after_type(start, modifiers, type_params, member_type)?;
                m.doc = doc.map(|i| self.doc_text(i));
                ty.methods.push(m);
            } else {
                let fields = self.field_rest(start, modifiers, member_type)?;
                ty.fields.extend(fields);
            }
        }
    }

    fn enum_constants(&mut self, ty: &mut RawType) -> Result<(), JavaSyntaxError> {
        loop {
            self.skip_docs();
            self.skip_annotations()?;
            match self.peek() {
                Some(t) if t.is(";") => {
                    self.bump();
                    return Ok(());
                }
                Some(t) if t.is("}") => return Ok(()),
                Some(t) if t.is(",") => {
                    self.bump();
                }
                Some(t) if t.is_ident() => {
                    let name = String::from(self.bump().expect("peeked").text);
                    if self.peek_is("(") {
                        self.skip_balanced("(", ")")?;
                    }
                    if self.peek_is("{") {
                        self.skip_balanced("{", "}")?;
                    }
                    ty.fields.push(RawField {
                        declaration_text: format!("public static final {} {}", ty.name, name),
                        name,
                        ty: ty.name.clone(),
                        modifiers: Modifiers {
                            words: alloc::vec!["public".into(), "static".into(), "final".into()],
                        },
                    });
                }
                _ => return Err(self.error("malformed enum constant")),
            }
        }
    }

    fn params(&mut self) -> Result<Vec<RawParam>, JavaSyntaxError> {
        self.expect("(")?;
        let mut params = Vec::new();
        if self.peek_is(")") {
            self.bump();
            return Ok(params);
        }
        loop {
            self.skip_annotations()?;
            while self.peek_is("final") {
                self.bump();
                self.skip_annotations()?;
            }
            let mut ty = self.type_text()?;
            let name_tok = self.ident()?;
            // receiver parameter `Foo this` / `Outer.this`
            let is_receiver = name_tok.text == "this" || (self.peek_is(".") && self.peek_at(1).is_some_and(|t| t.is("this")));
            if self.peek_is(".") {
                self.bump();
                self.bump();
            }
            while self.peek_is("[") {
                self.bump();
                self.expect("]")?;
                ty.push_str("[]");
            }
            if !is_receiver {
                params.push(RawParam { ty, name: String::from(name_tok.text) });
            }
            if self.peek_is(",") {
                self.bump();
                continue;
            }
            self.expect(")")?;
            return Ok(params);
        }
    }

    fn method_rest(
        &mut self,
        start: usize,
        modifiers: Modifiers,
        type_params: Vec<String>,
        is_ctor: bool,
        owner: &str,
    ) -> Result<RawMethod, JavaSyntaxError> {
        if is_ctor {
            let name = self.ident()?;
            if name.text != owner {
                return Err(self.error("constructor name mismatch"));
            }
            self.method_tail(start, modifiers, type_params, None, String::from(name.text))
        } else {
            let ret = self.type_text()?;
            self.method_rest_after_type(start, modifiers, type_params, ret)
        }
    }

    fn method_rest_after_type(
        &mut self,
        start: usize,
        modifiers: Modifiers,
        type_params: Vec<String>,
        return_type: String,
    ) -> Result<RawMethod, JavaSyntaxError> {
        let name = String::from(self.ident()?.text);
        self.method_tail(start, modifiers, type_params, Some(return_type), name)
    }

    fn method_tail(
        &mut self,
        start: usize,
        modifiers: Modifiers,
        type_params: Vec<String>,
        mut return_type: Option<String>,
        name: String,
    ) -> Result<RawMethod, JavaSyntaxError> {
        let line = self.line();
        let params = self.params()?;
        // legacy `int foo()[]`
        while self.peek_is("[") {
            self.bump();
            self.expect("]")?;
            if let Some(r) = return_type.as_mut() {
                r.push_str("[]");
            }
        }
        let mut throws = Vec::new();
        if self.peek_is("throws") {
            self.bump();
            throws = self.type_list()?;
        }
        let sig_start = self.signature_start(start);
        let signature_text = collapse_whitespace(&self.src[sig_start..self.prev_end()]);
        if self.peek_is("default") {
            // annotation element default value
            while !self.peek_is(";") {
                self.bump().ok_or_else(|| self.error("unterminated annotation default"))?;
            }
        }
        let end = if self.peek_is("{") {
            self.skip_balanced("{", "}")?.end
        } else {
            self.expect(";")?;
            self.prev_end()
        };
        let source_text = dedent_from(self.src, self.start_byte(start), end);
        Ok(RawMethod {
            name,
            type_params,
            return_type,
            params,
            throws,
            modifiers,
            signature_text,
            source_text,
            doc: None,
            line,
        })
    }

    /// Byte where the signature starts: after leading annotations.
    fn signature_start(&self, start: usize) -> usize {
        let mut i = start;
        let toks: Vec<&JavaToken> = self.toks[start..].iter().filter(|t| t.kind != JavaTokenKind::DocComment).collect();
        let mut k = 0;
        while k < toks.len() && toks[k].is("@") && !toks.get(k + 1).is_some_and(|t| t.is("interface")) {
            k += 2;
            while k + 1 < toks.len() && toks[k].is(".") && toks[k + 1].is_ident() {
                k += 2;
            }
            if k < toks.len() && toks[k].is("(") {
                let mut depth = 0;
                while k < toks.len() {
                    if toks[k].is("(") {
                        depth += 1;
                    } else if toks[k].is(")") {
                        depth -= 1;
                        if depth == 0 {
                            k += 1;
                            break;
                        }
                    }
                    k += 1;
                }
            }
        }
        if let Some(t) = toks.get(k) {
            i = t.start;
        }
        if i == start {
            self.start_byte(start)
        } else {
            i
        }
    }

    fn field_rest(&mut self, start: usize, modifiers: Modifiers, ty: String) -> Result<Vec<RawField>, JavaSyntaxError> {
        let mut names: Vec<(String, String)> = Vec::new();
        loop {
            let name = String::from(self.ident()?.text);
            let mut this_ty = ty.clone();
            while self.peek_is("[") {
                self.bump();
                self.expect("]")?;
                this_ty.push_str("[]");
            }
            names.push((name, this_ty));
            if self.peek_is("=") {
                self.skip_initializer()?;
            }
            if self.peek_is(",") {
                self.bump();
                continue;
            }
            self.expect(";")?;
            break;
        }
        let sig_start = self.signature_start(start);
        let declaration_text = collapse_whitespace(self.src[sig_start..self.prev_end()].trim_end_matches(';'));
        Ok(names
            .into_iter()
            .map(|(name, ty)| RawField { name, ty, modifiers: modifiers.clone(), declaration_text: declaration_text.clone() })
            .collect())
    }

    /// Skips `= expr` up to the `,` starting the next declarator or the `;`.
    fn skip_initializer(&mut self) -> Result<(), JavaSyntaxError> {
        self.expect("=")?;
        let mut depth = 0i32;
        loop {
            let t = match self.peek() {
                Some(t) => *t,
                None => return Err(self.error("unterminated field initializer")),
            };
            if depth == 0 && t.is(";") {
                return Ok(());
            }
            if depth == 0
                && t.is(",")
                && self.peek_at(1).is_some_and(|n| n.is_ident())
                && self.peek_at(2).is_some_and(|n| n.is("=") || n.is(",") || n.is(";") || n.is("["))
            {
                return Ok(());
            }
            if t.is("(") || t.is("{") || t.is("[") {
                depth += 1;
            } else if t.is(")") || t.is("}") || t.is("]") {
                depth -= 1;
            }
            self.bump();
        }
    }

    fn doc_text(&self, idx: usize) -> String {
        let t = &self.toks[idx];
        dedent_from(self.src, t.start, t.end)
    }
}

/// Collapses every whitespace run to a single space.
pub fn collapse_whitespace(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for word in s.split_whitespace() {
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(word);
    }
    out
}

/// Source slice `[start, end)` with continuation lines dedented by the column
/// of `start`.
fn dedent_from(src: &str, start: usize, end: usize) -> String {
    let line_start = src[..start].rfind('\n').map(|i| i + 1).unwrap_or(0);
    let indent = src[line_start..start].chars().take_while(|c| c.is_whitespace()).count();
    let mut out = String::new();
    for (i, line) in src[start..end].split('\n').enumerate() {
        if i > 0 {
            out.push('\n');
            let strip = line.chars().take(indent).take_while(|c| c.is_whitespace()).map(char::len_utf8).sum::<usize>();
            out.push_str(line[strip..].trim_end());
        } else {
            out.push_str(line.trim_end());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE64: &str = r#"
package org.apache.commons.codec.binary;

import java.math.BigInteger;
import java.util.*;

public class Base64 extends BaseNCodec {
    private static final int MIME_CHUNK_SIZE = 76, PEM_CHUNK_SIZE = 64;
    private final Map<String, Integer> cache = new HashMap<String, Integer>(), other = null;

    /**
     * Encodes to a byte64-encoded integer according to
     * crypto standards such as W3C's XML-Signature.
     *
     * @param bigInteger a BigInteger
     * @return A byte array containing base64 character
     * data
     * @throws NullPointerException if null is passed in
     * @since 1.4
     */
    public static byte[] encodeInteger(final BigInteger
          bigInteger) {
        Objects.requireNonNull(bigInteger, "bigInteger");
        return encodeBase64(toIntegerBytes(bigInteger), false);
    }

    public Base64(int lineLength) { this(lineLength, null); }

    @Override
    protected <T extends Comparable<T>> List<T> sorted(T[] xs, int... more) throws IllegalStateException { return null; }

    static class Inner implements Iterable<String> {
        abstract boolean ok();
    }

    enum Mode { A, B(1) { }, C; int code() { return 0; } }
}
"#;

    #[test]
    fn parses_members_nested_types_and_doc() {
        let unit = parse_compilation_unit(BASE64).unwrap();
        assert_eq!(unit.package, "org.apache.commons.codec.binary");
        assert_eq!(unit.imports, ["java.math.BigInteger", "java.util.*"]);
        let ty = &unit.types[0];
        assert_eq!(ty.name, "Base64");
        assert_eq!(ty.extends, ["BaseNCodec"]);
        let fields: Vec<_> = ty.fields.iter().map(|f| f.name.as_str()).collect();
        assert_eq!(fields, ["MIME_CHUNK_SIZE", "PEM_CHUNK_SIZE", "cache", "other"]);
        assert_eq!(ty.fields[2].ty, "Map<String, Integer>");
        let enc = &ty.methods[0];
        assert_eq!(enc.name, "encodeInteger");
        assert_eq!(enc.signature_text, "public static byte[] encodeInteger(final BigInteger bigInteger)");
        assert!(enc.doc.as_deref().unwrap().contains("@throws NullPointerException if null is passed in"));
        assert!(enc.source_text.starts_with("public static byte[] encodeInteger"));
        assert!(enc.source_text.ends_with('}'));
        let ctor = &ty.methods[1];
        assert_eq!(ctor.return_type, None);
        let sorted = &ty.methods[2];
        assert_eq!(sorted.type_params, ["T"]);
        assert_eq!(sorted.params[1].ty, "int...");
        assert_eq!(sorted.throws, ["IllegalStateException"]);
        assert!(sorted.signature_text.starts_with("protected <T"));
        assert_eq!(ty.nested.len(), 2);
        assert_eq!(ty.nested[0].implements, ["Iterable<String>"]);
        assert_eq!(ty.nested[1].fields.len(), 3);
        assert_eq!(ty.nested[1].methods[0].name, "code");
    }

    #[test]
    fn signature_round_trip() {
        let m = parse_signature("public native boolean isArray()").unwrap();
        assert_eq!((m.name.as_str(), m.params.len()), ("isArray", 0));
        let m = parse_signature("boolean isClosed() throws SQLException").unwrap();
        assert_eq!(m.return_type.as_deref(), Some("boolean"));
        let c = parse_signature("public ArrayListIterator(final Object array)").unwrap();
        assert_eq!(c.return_type, None);
        assert_eq!(c.params[0].name, "array");
    }

    #[test]
    fn records_expose_accessors() {
        let unit = parse_compilation_unit("record P(int x, String y) { P { } }").unwrap();
        let names: Vec<_> = unit.types[0].methods.iter().map(|m| m.name.as_str()).collect();
        assert_eq!(names, ["x", "y"]);
    }

    #[test]
    fn malformed_unit_reports_line() {
        let e = parse_compilation_unit("class A {\n  int x(\n}").unwrap_err();
        assert!(e.line >= 2);
    }
}

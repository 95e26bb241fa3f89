use alloc::string::String;
use alloc::vec::Vec;

use super::JavaSyntaxError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JavaTokenKind {
    Ident,
    Number,
    Str,
    Char,
    /// Single punctuation character, or `...`.
    Punct,
    /// `/** ... */`; ordinary comments are dropped.
    DocComment,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JavaToken<'a> {
    pub kind: JavaTokenKind,
    pub text: &'a str,
    /// Byte offsets into the source.
    pub start: usize,
    pub end: usize,
    /// 1-based.
    pub line: usize,
}

impl JavaToken<'_> {
    pub fn is(&self, text: &str) -> bool {
        self.text == text && self.kind != JavaTokenKind::Str && self.kind != JavaTokenKind::DocComment
    }

    pub fn is_ident(&self) -> bool {
        self.kind == JavaTokenKind::Ident
    }
}

pub fn tokenize_java(src: &str) -> Result<Vec<JavaToken<'_>>, JavaSyntaxError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let mut line = 1;
    let err = |line: usize, msg: &str| JavaSyntaxError { line, message: String::from(msg) };

    while i < bytes.len() {
        let c = bytes[i];
        if c == b'\n' {
            line += 1;
            i += 1;
            continue;
        }
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let start_line = line;
        if c == b'/' && bytes.get(i + 1) == Some(&b'/') {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        if c == b'/' && bytes.get(i + 1) == Some(&b'*') {
            let is_doc = bytes.get(i + 2) == Some(&b'*') && bytes.get(i + 3) != Some(&b'/');
            i += 2;
            loop {
                if i + 1 >= bytes.len() {
                    return Err(err(start_line, "unterminated comment"));
                }
                if bytes[i] == b'\n' {
                    line += 1;
                }
                if bytes[i] == b'*' && bytes[i + 1] == b'/' {
                    i += 2;
                    break;
                }
                i += 1;
            }
            if is_doc {
                out.push(tok(src, JavaTokenKind::DocComment, start, i, start_line));
            }
            continue;
        }
        if c == b'"' {
            if src[i..].starts_with("\"\"\"") {
                i += 3;
                loop {
                    if i >= bytes.len() {
                        return Err(err(start_line, "unterminated text block"));
                    }
                    if bytes[i] == b'\\' {
                        i += 2;
                        continue;
                    }
                    if bytes[i] == b'\n' {
                        line += 1;
                    }
                    if src[i..].starts_with("\"\"\"") {
                        i += 3;
                        break;
                    }
                    i += 1;
                }
            } else {
                i = scan_quoted(bytes, i, b'"').ok_or_else(|| err(start_line, "unterminated string literal"))?;
            }
            out.push(tok(src, JavaTokenKind::Str, start, i, start_line));
            continue;
        }
        if c == b'\'' {
            i = scan_quoted(bytes, i, b'\'').ok_or_else(|| err(start_line, "unterminated char literal"))?;
            out.push(tok(src, JavaTokenKind::Char, start, i, start_line));
            continue;
        }
        if c.is_ascii_digit() || (c == b'.' && bytes.get(i + 1).is_some_and(u8::is_ascii_digit)) {
            i += 1;
            while i < bytes.len() {
                let b = bytes[i];
                let exp_sign = (b == b'+' || b == b'-')
                    && matches!(bytes[i - 1], b'e' | b'E' | b'p' | b'P')
                    && !src[start..].starts_with("0x")
                    && !src[start..].starts_with("0X");
                let fraction = b == b'.' && bytes.get(i + 1).is_some_and(u8::is_ascii_digit);
                if b.is_ascii_alphanumeric() || b == b'_' || exp_sign || fraction {
                    i += 1;
                } else {
                    break;
                }
            }
            out.push(tok(src, JavaTokenKind::Number, start, i, start_line));
            continue;
        }
        let ch = src[i..].chars().next().unwrap_or('\0');
        if ch.is_alphabetic() || ch == '_' || ch == '$' {
            while i < bytes.len() {
                let ch = src[i..].chars().next().unwrap_or('\0');
                if ch.is_alphanumeric() || ch == '_' || ch == '$' {
                    i += ch.len_utf8();
                } else {
                    break;
                }
            }
            out.push(tok(src, JavaTokenKind::Ident, start, i, start_line));
            continue;
        }
        if src[i..].starts_with("...") {
            i += 3;
            out.push(tok(src, JavaTokenKind::Punct, start, i, start_line));
            continue;
        }
        if ch.is_ascii_punctuation() {
            i += 1;
            out.push(tok(src, JavaTokenKind::Punct, start, i, start_line));
            continue;
        }
        return Err(JavaSyntaxError { line, message: alloc::format!("unexpected character {ch:?}") });
    }
    Ok(out)
}

fn scan_quoted(bytes: &[u8], mut i: usize, quote: u8) -> Option<usize> {
    i += 1;
    while i < bytes.len() {
        match bytes[i] {
            b'\\' => i += 2,
            b'\n' => return None,
            b if b == quote => return Some(i + 1),
            _ => i += 1,
        }
    }
    None
}

fn tok(src: &str, kind: JavaTokenKind, start: usize, end: usize, line: usize) -> JavaToken<'_> {
    JavaToken { kind, text: &src[start..end], start, end, line }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn doc_comments_are_kept_and_plain_comments_dropped() {
        let toks = tokenize_java("/** doc */ /* no */ // no\nint x = 0x1F;").unwrap();
        let kinds: Vec<_> = toks.iter().map(|t| (t.kind, t.text)).collect();
        assert_eq!(kinds[0], (JavaTokenKind::DocComment, "/** doc */"));
        assert_eq!(kinds[1], (JavaTokenKind::Ident, "int"));
        assert_eq!(kinds[4], (JavaTokenKind::Number, "0x1F"));
        assert_eq!(toks[1].line, 2);
    }

    #[test]
    fn empty_block_comment_is_not_doc() {
        let toks = tokenize_java("/**/ class").unwrap();
        assert_eq!(toks.len(), 1);
    }

    #[test]
    fn strings_chars_and_varargs() {
        let toks = tokenize_java(r#"f("a\"b", 'c', 1.5e-3f, String... xs)"#).unwrap();
        let texts: Vec<_> = toks.iter().map(|t| t.text).collect();
        assert!(texts.contains(&r#""a\"b""#));
        assert!(texts.contains(&"'c'"));
        assert!(texts.contains(&"1.5e-3f"));
        assert!(texts.contains(&"..."));
    }

    #[test]
    fn unterminated_comment_reports_line() {
        let e = tokenize_java("\n\n/* open").unwrap_err();
        assert_eq!(e.line, 3);
    }
}

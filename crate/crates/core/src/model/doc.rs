//! Doc-comment parsing into block tags.

use alloc::string::String;
use alloc::vec::Vec;

use super::java::collapse_whitespace;
use super::{DocTag, DocTagKind};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParsedDoc {
    /// Main description, whitespace collapsed.
    pub description: String,
    /// `@param`, `@return`, `@throws`/`@exception` tags in source order.
    /// Other block tags (`@since`, `@see`, ...) are dropped.
    pub tags: Vec<DocTag>,
}

/// Parses a raw `/** ... */` comment. Inline tags such as `{@code x}` are
/// kept verbatim in the prose.
pub fn parse_doc_comment(raw: &str) -> ParsedDoc {
    let body = raw.trim();
    let body = body.strip_prefix("/**").unwrap_or(body);
    let body = body.strip_suffix("*/").unwrap_or(body);

    let mut blocks: Vec<String> = alloc::vec![String::new()];
    for line in body.lines() {
        let line = line.trim_start();
        let line = line.strip_prefix('*').unwrap_or(line);
        let trimmed = line.trim();
        if trimmed.starts_with('@') && trimmed[1..].starts_with(|c: char| c.is_ascii_alphabetic()) {
            blocks.push(String::new());
        }
        let cur = blocks.last_mut().expect("non-empty");
        cur.push_str(trimmed);
        cur.push(' ');
    }

    let mut doc = ParsedDoc { description: collapse_whitespace(&blocks[0]), tags: Vec::new() };
    for block in &blocks[1..] {
        let block = collapse_whitespace(block);
        let (name, rest) = split_word(&block[1..]);
        let kind = match name {
            "param" => DocTagKind::Param,
            "return" => DocTagKind::Return,
            "throws" | "exception" => DocTagKind::Throws,
            _ => continue,
        };
        let (target, text) = match kind {
            DocTagKind::Return => ("", rest),
            _ => split_word(rest),
        };
        doc.tags.push(DocTag { kind, target: target.into(), text: text.into(), dangling: false });
    }
    doc
}

fn split_word(s: &str) -> (&str, &str) {
    let s = s.trim_start();
    match s.find(char::is_whitespace) {
        Some(i) => (&s[..i], s[i..].trim_start()),
        None => (s, ""),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags_are_split_and_collapsed() {
        let doc = parse_doc_comment(
            "/**\n     * Sets the generator.\n     *\n     * @param series  the series index (zero\n     *      based).\n     * @param generator the generator ({@code null} permitted).\n     * @return the\n     *   result\n     * @exception IllegalArgumentException if bad\n     * @since 1.0\n     */",
        );
        assert_eq!(doc.description, "Sets the generator.");
        assert_eq!(doc.tags.len(), 4);
        assert_eq!(doc.tags[0].target, "series");
        assert_eq!(doc.tags[0].text, "the series index (zero based).");
        assert_eq!(doc.tags[1].text, "the generator ({@code null} permitted).");
        assert_eq!(doc.tags[2].kind, DocTagKind::Return);
        assert_eq!(doc.tags[2].text, "the result");
        assert_eq!(doc.tags[3].kind, DocTagKind::Throws);
        assert_eq!(doc.tags[3].target, "IllegalArgumentException");
    }

    #[test]
    fn single_line_comment() {
        let doc = parse_doc_comment("/** @throws NullPointerException if null is passed in */");
        assert_eq!(doc.tags[0].render(), "@throws NullPointerException if null is passed in");
        assert!(doc.description.is_empty());
    }

    #[test]
    fn inline_tags_do_not_start_blocks() {
        let doc = parse_doc_comment("/**\n * Returns {@link Foo}\n * {@code @param} text\n */");
        assert!(doc.tags.is_empty());
    }
}

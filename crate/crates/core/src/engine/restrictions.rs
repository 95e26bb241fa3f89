use alloc::string::String;
use core::fmt;

/// Where in an oracle a restriction applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Slot {
    OperandStart,
    Member,
    Argument,
    Comparison,
    Arithmetic,
    InstanceOf,
    Quantifier,
    Terminator,
    Any,
}

impl Slot {
    pub fn as_str(self) -> &'static str {
        match self {
            Slot::OperandStart => "operand start",
            Slot::Member => "member after `.`",
            Slot::Argument => "call argument",
            Slot::Comparison => "comparison operator",
            Slot::Arithmetic => "arithmetic operator",
            Slot::InstanceOf => "`instanceof`",
            Slot::Quantifier => "stream quantifier",
            Slot::Terminator => "`?`, `:`, `;`",
            Slot::Any => "any token",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RestrictionDescriptor {
    pub id: &'static str,
    pub description: &'static str,
    pub applicability: &'static [Slot],
}

impl fmt::Display for RestrictionDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.id, self.description)
    }
}

const fn r(id: &'static str, description: &'static str, applicability: &'static [Slot]) -> RestrictionDescriptor {
    RestrictionDescriptor { id, description, applicability }
}

static REGISTRY: &[RestrictionDescriptor] = &[
    r("R1", "`methodResultID` is unavailable when the method under test is void.", &[Slot::OperandStart, Slot::Argument]),
    r("R2", "`methodResultID` is unavailable in preconditions.", &[Slot::OperandStart, Slot::Argument]),
    r(
        "R3",
        "`instanceof` needs a reference or array operand on its left and a known, related class name on its right.",
        &[Slot::InstanceOf],
    ),
    r("R4", "Relational operators need numeric operands on both sides.", &[Slot::Comparison, Slot::OperandStart]),
    r("R5", "Arithmetic operators need numeric operands.", &[Slot::Arithmetic, Slot::OperandStart]),
    r(
        "R6",
        "`==` and `!=` need operands of the same category; `null` only compares with references and arrays.",
        &[Slot::Comparison, Slot::OperandStart],
    ),
    r("R7", "`.` only follows reference and array operands of a known type.", &[Slot::Member]),
    r("R8", "A member name must be an accessible member of the receiver's static type.", &[Slot::Member]),
    r("R9", "`this` is only available in instance methods.", &[Slot::OperandStart, Slot::Argument]),
    r("R10", "`jdVar` is only available inside a quantifier body, typed as the stream element.", &[Slot::OperandStart, Slot::Argument, Slot::Quantifier]),
    r("R11", "Quantifiers apply only to streams opened from an array or a collection.", &[Slot::Quantifier, Slot::Member]),
    r(
        "R12",
        "Calls are limited to zero-argument methods and methods whose every parameter can be filled by an in-scope identifier of matching category.",
        &[Slot::Member, Slot::Argument],
    ),
    r("R13", "A bare `true` or `false` cannot stand as a proposition or a left operand.", &[Slot::OperandStart]),
    r("R14", "The two sides of a comparison cannot be the same operand.", &[Slot::OperandStart, Slot::Comparison]),
    r("R15", "`?` only follows a complete boolean proposition at top level, once.", &[Slot::Terminator]),
    r("R16", "Literals cannot start the left operand of an atom.", &[Slot::OperandStart]),
    r("R17", "An atom without a comparison must be boolean.", &[Slot::Terminator]),
    r("R18", "Void methods cannot be called in an oracle.", &[Slot::Member]),
    r("R19", "Parentheses and quantifier bodies nest at most 8 deep.", &[Slot::OperandStart]),
    r("R20", "Class names appear only as receivers of static members or after `instanceof`.", &[Slot::OperandStart, Slot::Argument]),
    r("R21", "Identifiers must name a parameter of the method or a known class.", &[Slot::OperandStart, Slot::Argument]),
    r("R22", "Every prefix must still be completable within the token budget.", &[Slot::Any]),
];

/// The implemented restrictions, in id order.
pub fn list_restrictions() -> &'static [RestrictionDescriptor] {
    REGISTRY
}

pub fn restriction(id: &str) -> Option<&'static RestrictionDescriptor> {
    REGISTRY.iter().find(|r| r.id == id)
}

/// Markdown table of the registry.
pub fn restrictions_markdown() -> String {
    let mut out = String::from("| id | description | applies to |\n|---|---|---|\n");
    for d in REGISTRY {
        out.push_str("| ");
        out.push_str(d.id);
        out.push_str(" | ");
        out.push_str(&d.description.replace('|', "\\|"));
        out.push_str(" | ");
        for (i, s) in d.applicability.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            out.push_str(s.as_str());
        }
        out.push_str(" |\n");
    }
    out
}

/// A token or expression rejected by a restriction (or by the grammar,
/// with id `grammar`).
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{restriction}: {message}")]
pub struct Violation {
    pub restriction: &'static str,
    pub message: String,
}

impl Violation {
    pub fn new(restriction: &'static str, message: impl Into<String>) -> Violation {
        Violation { restriction, message: message.into() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    #[test]
    fn ids_are_unique_and_cover_the_minimum() {
        let ids: BTreeSet<&str> = REGISTRY.iter().map(|r| r.id).collect();
        assert_eq!(ids.len(), REGISTRY.len());
        for i in 1..=15 {
            assert!(ids.contains(alloc::format!("R{i}").as_str()));
        }
        assert!(restriction("R1").unwrap().description.contains("void"));
    }

    #[test]
    fn markdown_has_a_row_per_restriction() {
        let md = restrictions_markdown();
        assert_eq!(md.lines().count(), REGISTRY.len() + 2);
    }
}

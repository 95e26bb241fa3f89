//! Language-neutral model of a Java source tree: classes, members, types and
//! doc tags.
//!
//! The model is built from source text by [`ProjectModelBuilder`]; the
//! companion crate walks directories and reads signature files, this module
//! only ever sees strings.

mod build;
mod doc;
pub mod java;
mod resolve;
mod stubs;

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

pub use build::{ModelError, ProjectModelBuilder, SignatureClass};
pub use doc::{parse_doc_comment, ParsedDoc};
pub use resolve::{accessible_members, accessible_members_from, resolve_class, resolve_type, MemberError, Members};

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

/// Coarse category of a Java type, as far as oracle typing cares.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case", tag = "kind", content = "element"))]
pub enum TypeCategory {
    NumericIntegral,
    NumericFloating,
    Boolean,
    Char,
    Reference,
    Array(Box<TypeRef>),
    Void,
    Unknown,
}

/// A resolved type. Reference names are fully qualified when the class is
/// known to the model and kept as written otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct TypeRef {
    pub name: String,
    pub category: TypeCategory,
}

impl TypeRef {
    pub fn primitive(name: &str) -> Option<TypeRef> {
        let category = match name {
            "byte" | "short" | "int" | "long" => TypeCategory::NumericIntegral,
            "float" | "double" => TypeCategory::NumericFloating,
            "boolean" => TypeCategory::Boolean,
            "char" => TypeCategory::Char,
            "void" => TypeCategory::Void,
            _ => return None,
        };
        Some(TypeRef { name: name.into(), category })
    }

    pub fn reference(qualified: impl Into<String>) -> TypeRef {
        TypeRef { name: qualified.into(), category: TypeCategory::Reference }
    }

    pub fn unknown(name: impl Into<String>) -> TypeRef {
        TypeRef { name: name.into(), category: TypeCategory::Unknown }
    }

    pub fn array_of(element: TypeRef) -> TypeRef {
        let mut name = element.name.clone();
        name.push_str("[]");
        TypeRef { name, category: TypeCategory::Array(Box::new(element)) }
    }

    pub fn void() -> TypeRef {
        TypeRef { name: "void".into(), category: TypeCategory::Void }
    }

    pub fn is_numeric(&self) -> bool {
        matches!(
            self.category,
            TypeCategory::NumericIntegral | TypeCategory::NumericFloating | TypeCategory::Char
        )
    }

    pub fn is_void(&self) -> bool {
        self.category == TypeCategory::Void
    }

    pub fn element(&self) -> Option<&TypeRef> {
        match &self.category {
            TypeCategory::Array(elem) => Some(elem),
            _ => None,
        }
    }

    /// Last dotted segment of the name (`java.lang.String` -> `String`).
    pub fn simple_name(&self) -> &str {
        simple_name(&self.name)
    }
}

pub(crate) fn simple_name(qualified: &str) -> &str {
    qualified.rsplit('.').next().unwrap_or(qualified)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Visibility {
    Public,
    Protected,
    Package,
    Private,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "camelCase"))]
pub struct ParameterInfo {
    pub name: String,
    #[cfg_attr(feature = "serde", serde(rename = "type"))]
    pub ty: TypeRef,
    pub position: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "camelCase"))]
pub struct FieldInfo {
    pub name: String,
    #[cfg_attr(feature = "serde", serde(rename = "type"))]
    pub ty: TypeRef,
    pub visibility: Visibility,
    #[cfg_attr(feature = "serde", serde(rename = "static"))]
    pub is_static: bool,
    pub declaration_text: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum DocTagKind {
    Param,
    Return,
    Throws,
    FreeText,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "camelCase"))]
pub struct DocTag {
    pub kind: DocTagKind,
    /// Parameter name for `@param`, exception type for `@throws`, empty otherwise.
    pub target: String,
    /// Tag prose with whitespace collapsed.
    pub text: String,
    /// `@param` naming no parameter of the method. Kept, never dropped.
    #[cfg_attr(feature = "serde", serde(default))]
    pub dangling: bool,
}

impl DocTag {
    /// The tag as it reads in a prompt or dataset record, e.g.
    /// `@param series the series index (zero based).`
    pub fn render(&self) -> String {
        let mut out = String::new();
        match self.kind {
            DocTagKind::Param => out.push_str("@param "),
            DocTagKind::Return => out.push_str("@return "),
            DocTagKind::Throws => out.push_str("@throws "),
            DocTagKind::FreeText => {}
        }
        if !self.target.is_empty() {
            out.push_str(&self.target);
            if !self.text.is_empty() {
                out.push(' ');
            }
        }
        out.push_str(&self.text);
        String::from(out.trim_end())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "camelCase"))]
pub struct MethodInfo {
    pub name: String,
    pub parameters: Vec<ParameterInfo>,
    /// `void` for constructors.
    pub return_type: TypeRef,
    pub visibility: Visibility,
    #[cfg_attr(feature = "serde", serde(rename = "static"))]
    pub is_static: bool,
    pub is_constructor: bool,
    pub signature_text: String,
    pub source_text: String,
    pub doc_text: String,
    pub tags: Vec<DocTag>,
    pub throws: Vec<String>,
    /// Qualified name of the declaring class.
    pub owner: String,
}

impl MethodInfo {
    /// `name(T1, T2)` over erased parameter type names; stable identity for
    /// overload matching.
    pub fn erased_key(&self) -> String {
        let mut key = self.name.clone();
        key.push('(');
        for (i, p) in self.parameters.iter().enumerate() {
            if i > 0 {
                key.push_str(", ");
            }
            key.push_str(simple_name_of_type(&p.ty));
        }
        key.push(')');
        key
    }

    pub fn arity(&self) -> usize {
        self.parameters.len()
    }

    pub fn parameter(&self, name: &str) -> Option<&ParameterInfo> {
        self.parameters.iter().find(|p| p.name == name)
    }
}

fn simple_name_of_type(ty: &TypeRef) -> &str {
    // array names keep their brackets: `int[]`, `java.lang.Object[]` -> `Object[]`
    let name = ty.name.as_str();
    let base_end = name.find('[').unwrap_or(name.len());
    let start = name[..base_end].rfind('.').map(|i| i + 1).unwrap_or(0);
    &name[start..]
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "camelCase"))]
pub struct ClassInfo {
    pub name: String,
    pub qualified_name: String,
    pub package: String,
    pub imports: Vec<String>,
    pub type_parameters: Vec<String>,
    pub declaration_text: String,
    pub fields: Vec<FieldInfo>,
    pub methods: Vec<MethodInfo>,
    pub super_types: Vec<TypeRef>,
    pub is_interface: bool,
}

impl ClassInfo {
    pub fn method_named<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a MethodInfo> + 'a {
        self.methods.iter().filter(move |m| m.name == name)
    }

    pub fn field(&self, name: &str) -> Option<&FieldInfo> {
        self.fields.iter().find(|f| f.name == name)
    }
}

/// A diagnostic produced while ingesting sources; never fatal.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct ModelWarning {
    pub origin: String,
    pub line: usize,
    pub message: String,
}

/// Resolved classes of a source tree plus external classes (platform stubs
/// and signature files). Project classes shadow external ones.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "camelCase"))]
pub struct ProjectModel {
    pub source_root: String,
    pub classes: BTreeMap<String, ClassInfo>,
    pub external_classes: BTreeMap<String, ClassInfo>,
    #[cfg_attr(feature = "serde", serde(default))]
    pub warnings: Vec<ModelWarning>,
}

impl ProjectModel {
    /// Project first, external only on a project miss.
    pub fn class(&self, qualified: &str) -> Option<&ClassInfo> {
        self.classes.get(qualified).or_else(|| self.external_classes.get(qualified))
    }

    pub fn is_project_class(&self, qualified: &str) -> bool {
        self.classes.contains_key(qualified)
    }

    /// Looks a class up by qualified name, then by unique simple or dotted
    /// suffix (`Outer.Inner`), project classes first.
    pub fn find_class(&self, name: &str) -> Option<&ClassInfo> {
        if let Some(c) = self.class(name) {
            return Some(c);
        }
        let suffix_match = |c: &&ClassInfo| {
            c.qualified_name.len() > name.len()
                && c.qualified_name.ends_with(name)
                && c.qualified_name.as_bytes()[c.qualified_name.len() - name.len() - 1] == b'.'
        };
        self.classes
            .values()
            .find(suffix_match)
            .or_else(|| self.external_classes.values().find(suffix_match))
    }

    pub fn all_classes(&self) -> impl Iterator<Item = &ClassInfo> {
        self.classes.values().chain(self.external_classes.values())
    }

    pub fn method_count(&self) -> usize {
        self.classes.values().map(|c| c.methods.len()).sum()
    }

    /// Finds a method of `class_name` by signature text, matching on name and
    /// erased parameter types.
    pub fn find_method(&self, class_name: &str, signature: &str) -> Option<(&ClassInfo, &MethodInfo)> {
        let class = self.find_class(class_name)?;
        let raw = java::parse_signature(signature).ok()?;
        let want: Vec<String> = raw
            .params
            .iter()
            .map(|p| {
                let ty = resolve::resolve_in(self, &p.ty, class, &raw.type_params);
                String::from(simple_name_of_type(&ty))
            })
            .collect();
        class
            .methods
            .iter()
            .find(|m| {
                m.name == raw.name
                    && m.parameters.len() == want.len()
                    && m.parameters.iter().zip(&want).all(|(p, w)| simple_name_of_type(&p.ty) == w)
            })
            .map(|m| (class, m))
    }
}

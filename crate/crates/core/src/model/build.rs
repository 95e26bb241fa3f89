use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::doc::parse_doc_comment;
use super::java::{self, parse_compilation_unit, RawField, RawMethod, RawType, RawUnit, TypeKind};
use super::resolve::resolve_in;
use super::stubs::PLATFORM_UNITS;
use super::{
    ClassInfo, DocTagKind, FieldInfo, MethodInfo, ModelWarning, ParameterInfo, ProjectModel, TypeRef, Visibility,
};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("no compilation units under {0}")]
    NoCompilationUnits(String),
    #[error("{origin}:{line}: {message}")]
    Signature { origin: String, line: usize, message: String },
}

/// One class of an external signature file: members given as declaration
/// text, e.g. `boolean isClosed() throws SQLException`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "camelCase", deny_unknown_fields))]
pub struct SignatureClass {
    pub qualified_name: String,
    #[cfg_attr(feature = "serde", serde(default))]
    pub is_interface: bool,
    #[cfg_attr(feature = "serde", serde(default))]
    pub super_types: Vec<String>,
    #[cfg_attr(feature = "serde", serde(default))]
    pub fields: Vec<String>,
    #[cfg_attr(feature = "serde", serde(default))]
    pub methods: Vec<String>,
}

/// Collects sources and signature classes, then resolves them into a
/// [`ProjectModel`].
#[derive(Debug, Default)]
pub struct ProjectModelBuilder {
    source_root: String,
    units: Vec<(String, RawUnit)>,
    signatures: Vec<(String, RawType, String)>,
    warnings: Vec<ModelWarning>,
}

struct Pending {
    info: ClassInfo,
    raw: RawType,
    external: bool,
    signature_only: bool,
}

impl ProjectModelBuilder {
    pub fn new(source_root: impl Into<String>) -> Self {
        ProjectModelBuilder { source_root: source_root.into(), ..Default::default() }
    }

    /// Adds one compilation unit. Parse failures become warnings.
    pub fn add_source(&mut self, origin: &str, text: &str) {
        match parse_compilation_unit(text) {
            Ok(unit) => self.units.push((origin.to_string(), unit)),
            Err(e) => self.warnings.push(ModelWarning { origin: origin.into(), line: e.line, message: e.message }),
        }
    }

    /// Adds one external class; `line` locates it in its file for errors.
    pub fn add_signature_class(&mut self, origin: &str, line: usize, class: &SignatureClass) -> Result<(), ModelError> {
        let err = |message: String| ModelError::Signature { origin: origin.to_string(), line, message };
        let qname = class.qualified_name.trim();
        if qname.is_empty() || qname.split('.').any(|s| s.is_empty()) {
            return Err(err(format!("invalid qualified name `{qname}`")));
        }
        let (package, name) = match qname.rfind('.') {
            Some(i) => (&qname[..i], &qname[i + 1..]),
            None => ("", qname),
        };
        let mut raw = RawType {
            name: name.to_string(),
            kind: if class.is_interface { TypeKind::Interface } else { TypeKind::Class },
            modifiers: java::Modifiers { words: alloc::vec!["public".into()] },
            type_params: Vec::new(),
            extends: class.super_types.clone(),
            implements: Vec::new(),
            declaration_text: format!("public {} {name}", if class.is_interface { "interface" } else { "class" }),
            fields: Vec::new(),
            methods: Vec::new(),
            nested: Vec::new(),
        };
        for f in &class.fields {
            let fields = java::parse_field_declaration(f).map_err(|e| err(format!("field `{f}`: {}", e.message)))?;
            raw.fields.extend(fields);
        }
        for m in &class.methods {
            let mut parsed = java::parse_signature(m).map_err(|e| err(format!("method `{m}`: {}", e.message)))?;
            if parsed.return_type.is_none() && parsed.name != name {
                return Err(err(format!("method `{m}` has no return type")));
            }
            if class.is_interface && !parsed.modifiers.has("private") && !parsed.modifiers.has("public") {
                parsed.modifiers.words.push("public".into());
            }
            raw.methods.push(parsed);
        }
        self.signatures.push((origin.to_string(), raw, package.to_string()));
        Ok(())
    }

    pub fn build(self) -> Result<ProjectModel, ModelError> {
        if self.units.is_empty() {
            return Err(ModelError::NoCompilationUnits(self.source_root));
        }
        let mut model = ProjectModel { source_root: self.source_root, warnings: self.warnings, ..Default::default() };
        let mut pending: Vec<Pending> = Vec::new();

        for (_, unit) in &self.units {
            for t in &unit.types {
                flatten(t, &unit.package, &unit.package, &unit.imports, &[], false, false, &mut pending);
            }
        }
        for (_, raw, package) in &self.signatures {
            flatten(raw, package, package, &[], &[], true, true, &mut pending);
        }
        for (_, src) in PLATFORM_UNITS {
            let unit = parse_compilation_unit(src).expect("platform stubs parse");
            for t in &unit.types {
                flatten(t, &unit.package, &unit.package, &unit.imports, &[], true, true, &mut pending);
            }
        }

        // skeletons first so resolution sees every class
        let mut index: BTreeMap<String, usize> = BTreeMap::new();
        let mut kept = Vec::new();
        for p in pending {
            let q = p.info.qualified_name.clone();
            if index.contains_key(&q) {
                model.warnings.push(ModelWarning {
                    origin: q.clone(),
                    line: 0,
                    message: "duplicate class declaration ignored".into(),
                });
                continue;
            }
            index.insert(q.clone(), kept.len());
            let map = if p.external { &mut model.external_classes } else { &mut model.classes };
            map.insert(q, p.info.clone());
            kept.push(p);
        }

        let mut resolved = Vec::with_capacity(kept.len());
        for p in &kept {
            let mut info = p.info.clone();
            let ctx = info.clone();
            info.super_types = p
                .raw
                .extends
                .iter()
                .chain(&p.raw.implements)
                .map(|s| resolve_in(&model, s, &ctx, &[]))
                .filter(|t| t.name != info.qualified_name)
                .collect();
            resolved.push((info, p));
        }
        // members resolve against a model whose super types are known
        for (info, p) in &resolved {
            let map = if p.external { &mut model.external_classes } else { &mut model.classes };
            map.insert(info.qualified_name.clone(), info.clone());
        }
        for (mut info, p) in resolved {
            let interface = p.raw.kind == TypeKind::Interface || p.raw.kind == TypeKind::Annotation;
            info.fields = p.raw.fields.iter().map(|f| field_info(&model, &info, f, interface)).collect();
            info.methods = p
                .raw
                .methods
                .iter()
                .map(|m| method_info(&model, &info, m, interface, p.signature_only))
                .collect();
            let map = if p.external { &mut model.external_classes } else { &mut model.classes };
            map.insert(info.qualified_name.clone(), info);
        }
        Ok(model)
    }
}

#[allow(clippy::too_many_arguments)]
fn flatten(
    t: &RawType,
    package: &str,
    outer: &str,
    imports: &[String],
    outer_params: &[String],
    external: bool,
    signature_only: bool,
    out: &mut Vec<Pending>,
) {
    let qualified_name = if outer.is_empty() { t.name.clone() } else { format!("{outer}.{}", t.name) };
    let mut type_parameters: Vec<String> = t.type_params.clone();
    if !t.modifiers.has("static") && t.kind == TypeKind::Class {
        type_parameters.extend(outer_params.iter().cloned());
    }
    let info = ClassInfo {
        name: t.name.clone(),
        qualified_name: qualified_name.clone(),
        package: package.to_string(),
        imports: imports.to_vec(),
        type_parameters: type_parameters.clone(),
        declaration_text: t.declaration_text.clone(),
        fields: Vec::new(),
        methods: Vec::new(),
        super_types: Vec::new(),
        is_interface: matches!(t.kind, TypeKind::Interface | TypeKind::Annotation),
    };
    out.push(Pending { info, raw: t.clone(), external, signature_only });
    for n in &t.nested {
        flatten(n, package, &qualified_name, imports, &type_parameters, external, signature_only, out);
    }
}

fn visibility(m: &java::Modifiers, interface: bool) -> Visibility {
    if m.has("public") || (interface && !m.has("private")) {
        Visibility::Public
    } else if m.has("protected") {
        Visibility::Protected
    } else if m.has("private") {
        Visibility::Private
    } else {
        Visibility::Package
    }
}

fn field_info(model: &ProjectModel, class: &ClassInfo, f: &RawField, interface: bool) -> FieldInfo {
    FieldInfo {
        name: f.name.clone(),
        ty: resolve_in(model, &f.ty, class, &[]),
        visibility: visibility(&f.modifiers, interface),
        is_static: f.modifiers.has("static") || interface,
        declaration_text: f.declaration_text.clone(),
    }
}

fn method_info(model: &ProjectModel, class: &ClassInfo, m: &RawMethod, interface: bool, signature_only: bool) -> MethodInfo {
    let is_static = m.modifiers.has("static");
    let type_params = &m.type_params;
    let mut ctx = class.clone();
    if is_static {
        // class type variables are not in scope of static members
        ctx.type_parameters.clear();
    }
    let parameters: Vec<ParameterInfo> = m
        .params
        .iter()
        .enumerate()
        .map(|(position, p)| ParameterInfo {
            name: p.name.clone(),
            ty: resolve_in(model, &p.ty, &ctx, type_params),
            position,
        })
        .collect();
    let return_type = match &m.return_type {
        Some(r) => resolve_in(model, r, &ctx, type_params),
        None => TypeRef::void(),
    };
    let doc_text = m.doc.clone().unwrap_or_default();
    let mut tags = Vec::new();
    if !doc_text.is_empty() {
        let parsed = parse_doc_comment(&doc_text);
        if !parsed.description.is_empty() {
            tags.push(super::DocTag {
                kind: DocTagKind::FreeText,
                target: String::new(),
                text: parsed.description,
                dangling: false,
            });
        }
        for mut tag in parsed.tags {
            if tag.kind == DocTagKind::Param {
                tag.dangling = !parameters.iter().any(|p| p.name == tag.target);
            }
            tags.push(tag);
        }
    }
    MethodInfo {
        name: m.name.clone(),
        parameters,
        return_type,
        visibility: visibility(&m.modifiers, interface),
        is_static,
        is_constructor: m.return_type.is_none(),
        signature_text: m.signature_text.clone(),
        source_text: if signature_only { String::new() } else { m.source_text.clone() },
        doc_text,
        tags,
        throws: m.throws.clone(),
        owner: class.qualified_name.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{accessible_members, resolve_type, TypeCategory};

    fn model_of(src: &str) -> ProjectModel {
        let mut b = ProjectModelBuilder::new("mem");
        b.add_source("A.java", src);
        b.build().unwrap()
    }

    #[test]
    fn empty_builder_is_an_error() {
        let e = ProjectModelBuilder::new("empty").build().unwrap_err();
        assert!(e.to_string().contains("no compilation units"));
    }

    #[test]
    fn base64_throws_tag() {
        let m = model_of(
            "package c; import java.math.BigInteger; public class Base64 {\n/** Encodes.\n * @throws NullPointerException if null is passed in\n */\npublic static byte[] encodeInteger(BigInteger bigInteger) { return null; } }",
        );
        assert_eq!(m.classes.len(), 1);
        let c = m.class("c.Base64").unwrap();
        assert_eq!(c.methods.len(), 1);
        let throws: Vec<_> = c.methods[0].tags.iter().filter(|t| t.kind == DocTagKind::Throws).collect();
        assert_eq!(throws.len(), 1);
        assert_eq!(throws[0].render(), "@throws NullPointerException if null is passed in");
        assert_eq!(c.methods[0].parameters[0].ty.category, TypeCategory::Unknown);
        assert_eq!(c.methods[0].return_type.name, "byte[]");
    }

    #[test]
    fn signature_class_exposes_members() {
        let mut b = ProjectModelBuilder::new("mem");
        b.add_source("P.java", "package p; import java.sql.ResultSet; class P { void f(ResultSet resultSet) {} }");
        b.add_signature_class(
            "sql.sig.jsonl",
            1,
            &SignatureClass {
                qualified_name: "java.sql.ResultSet".into(),
                is_interface: true,
                methods: alloc::vec!["boolean isClosed() throws SQLException".into()],
                ..Default::default()
            },
        )
        .unwrap();
        let m = b.build().unwrap();
        let c = m.class("p.P").unwrap();
        let ty = resolve_type(&m, "ResultSet", c);
        assert_eq!(ty, TypeRef::reference("java.sql.ResultSet"));
        let members = accessible_members(&m, &ty).unwrap();
        let is_closed = members.methods.iter().find(|m| m.name == "isClosed").unwrap();
        assert_eq!(is_closed.return_type.category, TypeCategory::Boolean);
        assert_eq!(members.methods.last().unwrap().name, "hashCode");
    }

    #[test]
    fn malformed_signature_names_file_and_line() {
        let mut b = ProjectModelBuilder::new("mem");
        let e = b
            .add_signature_class(
                "bad.sig.jsonl",
                7,
                &SignatureClass { qualified_name: "x.Y".into(), methods: alloc::vec!["(((".into()], ..Default::default() },
            )
            .unwrap_err();
        assert!(e.to_string().starts_with("bad.sig.jsonl:7:"));
    }

    #[test]
    fn platform_members() {
        let m = model_of("class A {}");
        let a = m.class("A").unwrap();
        let class_ty = resolve_type(&m, "Class", a);
        let names: Vec<_> =
            accessible_members(&m, &class_ty).unwrap().methods.into_iter().map(|m| m.name).collect();
        assert!(names.contains(&"isArray".into()));
        let it = resolve_type(&m, "java.util.Iterator", a);
        let names: Vec<_> = accessible_members(&m, &it).unwrap().methods.into_iter().map(|m| m.name).collect();
        assert_eq!(names, ["hasNext", "next", "remove", "equals", "toString", "getClass", "hashCode"]);
        let arr = TypeRef::array_of(TypeRef::primitive("int").unwrap());
        let members = accessible_members(&m, &arr).unwrap();
        assert_eq!(members.fields[0].name, "length");
        assert_eq!(members.fields[0].ty.category, TypeCategory::NumericIntegral);
        assert!(accessible_members(&m, &TypeRef::primitive("int").unwrap()).is_err());
        assert_eq!(resolve_type(&m, "NoSuchClass99", a).category, TypeCategory::Unknown);
        assert_eq!(resolve_type(&m, "int", a).category, TypeCategory::NumericIntegral);
    }

    #[test]
    fn nested_generic_and_inherited() {
        let m = model_of(
            "package q; import java.util.*;\npublic class Box<T> implements Iterable<T> {\n  public T value;\n  public List<String> items;\n  public Iterator<T> iterator() { return null; }\n  public static class Inner extends Box<String> { public int size() { return 0; } }\n}",
        );
        let inner = m.class("q.Box.Inner").unwrap();
        assert_eq!(inner.super_types[0].name, "q.Box");
        let box_ = m.class("q.Box").unwrap();
        assert_eq!(box_.fields[0].ty.name, "java.lang.Object");
        assert_eq!(box_.fields[1].ty.name, "java.util.List");
        let members = accessible_members(&m, &TypeRef::reference("q.Box.Inner")).unwrap();
        let names: Vec<_> = members.methods.iter().map(|m| m.name.as_str()).collect();
        assert_eq!(names, ["size", "iterator", "equals", "toString", "getClass", "hashCode"]);
        assert_eq!(resolve_type(&m, "Inner", box_).name, "q.Box.Inner");
    }

    #[test]
    fn dangling_param_is_flagged() {
        let m = model_of("class A { /** @param nope gone\n @param x ok */ void f(int x) {} }");
        let tags = &m.class("A").unwrap().methods[0].tags;
        assert!(tags[0].dangling);
        assert!(!tags[1].dangling);
    }
}

//! Type-name resolution and member lookup.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{simple_name, ClassInfo, FieldInfo, MethodInfo, ProjectModel, TypeRef, Visibility};

pub(crate) const OBJECT: &str = "java.lang.Object";

/// Resolves `name` as written inside `context`. Total: names that match no
/// known class come back with category `unknown`.
pub fn resolve_type(model: &ProjectModel, name: &str, context: &ClassInfo) -> TypeRef {
    resolve_in(model, name, context, &[])
}

pub(crate) fn resolve_in(model: &ProjectModel, name: &str, context: &ClassInfo, type_params: &[String]) -> TypeRef {
    let name = name.trim();
    if let Some(base) = name.strip_suffix("...") {
        return TypeRef::array_of(resolve_in(model, base, context, type_params));
    }
    let erased = erase_generics(name);
    if let Some(base) = erased.strip_suffix("[]") {
        return TypeRef::array_of(resolve_in(model, base, context, type_params));
    }
    if let Some(p) = TypeRef::primitive(&erased) {
        return p;
    }
    if erased == "?" || type_params.contains(&erased) || context.type_parameters.contains(&erased) {
        return TypeRef::reference(OBJECT);
    }
    match resolve_class(model, &erased, context) {
        Some(q) => TypeRef::reference(q),
        None => TypeRef::unknown(erased),
    }
}

/// Qualified name of the class `name` denotes inside `context`.
pub fn resolve_class(model: &ProjectModel, name: &str, context: &ClassInfo) -> Option<String> {
    let exists = |q: &str| model.class(q).is_some();
    if name.is_empty() {
        return None;
    }
    if name.contains('.') && exists(name) {
        return Some(name.to_string());
    }
    let (head, tail) = match name.find('.') {
        Some(i) => (&name[..i], Some(&name[i..])),
        None => (name, None),
    };
    let with_tail = |q: String| match tail {
        Some(t) => format!("{q}{t}"),
        None => q,
    };

    // member types of the context and its enclosing classes
    let mut scope = context.qualified_name.clone();
    loop {
        let cand = with_tail(format!("{scope}.{head}"));
        if exists(&cand) {
            return Some(cand);
        }
        match scope.rfind('.') {
            Some(i) if scope.len() > context.package.len() && i >= context.package.len() => scope.truncate(i),
            _ => break,
        }
    }
    if let Some(c) = model.class(&context.qualified_name) {
        for sup in &c.super_types {
            let cand = with_tail(format!("{}.{head}", sup.name));
            if exists(&cand) {
                return Some(cand);
            }
        }
    }
    for imp in &context.imports {
        if imp.starts_with("static ") || imp.ends_with(".*") {
            continue;
        }
        if simple_name(imp) == head {
            let cand = with_tail(imp.clone());
            if exists(&cand) {
                return Some(cand);
            }
        }
    }
    let same_pkg = if context.package.is_empty() { name.to_string() } else { format!("{}.{name}", context.package) };
    if exists(&same_pkg) {
        return Some(same_pkg);
    }
    let lang = format!("java.lang.{name}");
    if exists(&lang) {
        return Some(lang);
    }
    for imp in &context.imports {
        if let Some(pkg) = imp.strip_suffix(".*") {
            if imp.starts_with("static ") {
                continue;
            }
            let cand = format!("{pkg}.{name}");
            if exists(&cand) {
                return Some(cand);
            }
        }
    }
    let unique = |map: &alloc::collections::BTreeMap<String, ClassInfo>| {
        let mut hits = map.keys().filter(|q| q.len() > name.len() && q.ends_with(name) && q.as_bytes().get(q.len() - name.len() - 1) == Some(&b'.'));
        match (hits.next(), hits.next()) {
            (Some(q), None) => Some(q.clone()),
            _ => None,
        }
    };
    if !name.contains('.') {
        if let Some(q) = unique(&model.classes).or_else(|| unique(&model.external_classes)) {
            return Some(q);
        }
    }
    None
}

/// Drops every `<...>` section: `Map<K, List<V>>[]` -> `Map[]`.
pub(crate) fn erase_generics(name: &str) -> String {
    let mut out = String::with_capacity(name.len());
    let mut depth = 0usize;
    for c in name.chars() {
        match c {
            '<' => depth += 1,
            '>' => depth = depth.saturating_sub(1),
            c if depth == 0 && !c.is_whitespace() => out.push(c),
            _ => {}
        }
    }
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Members {
    pub fields: Vec<FieldInfo>,
    pub methods: Vec<MethodInfo>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MemberError {
    #[error("type `{0}` has no members")]
    NotAReference(String),
}

/// Non-private members of `ty`, its resolvable supertypes, and `Object`.
/// Ordering: declaration order of the type, then supertypes depth-first in
/// declared order, then `Object`. Overridden methods keep the subtype entry.
pub fn accessible_members(model: &ProjectModel, ty: &TypeRef) -> Result<Members, MemberError> {
    members_visible(model, ty, None)
}

/// Like [`accessible_members`], seen from code in `package`: members that
/// are neither public nor private must be declared in that package.
pub fn accessible_members_from(model: &ProjectModel, ty: &TypeRef, package: &str) -> Result<Members, MemberError> {
    members_visible(model, ty, Some(package))
}

fn members_visible(model: &ProjectModel, ty: &TypeRef, viewer: Option<&str>) -> Result<Members, MemberError> {
    let mut out = Members::default();
    let mut seen_methods = BTreeSet::new();
    let mut seen_fields = BTreeSet::new();
    let mut visited = BTreeSet::new();
    match &ty.category {
        super::TypeCategory::Array(_) => {
            out.fields.push(FieldInfo {
                name: "length".into(),
                ty: TypeRef::primitive("int").expect("primitive"),
                visibility: Visibility::Public,
                is_static: false,
                declaration_text: "public final int length".into(),
            });
            seen_fields.insert(String::from("length"));
        }
        super::TypeCategory::Reference => {
            collect(model, viewer, &ty.name, &mut out, &mut seen_methods, &mut seen_fields, &mut visited);
        }
        _ => return Err(MemberError::NotAReference(ty.name.clone())),
    }
    collect(model, viewer, OBJECT, &mut out, &mut seen_methods, &mut seen_fields, &mut visited);
    Ok(out)
}

fn collect(
    model: &ProjectModel,
    viewer: Option<&str>,
    qualified: &str,
    out: &mut Members,
    seen_methods: &mut BTreeSet<String>,
    seen_fields: &mut BTreeSet<String>,
    visited: &mut BTreeSet<String>,
) {
    if !visited.insert(qualified.to_string()) {
        return;
    }
    let Some(class) = model.class(qualified) else { return };
    let visible = |v: Visibility| match v {
        Visibility::Public => true,
        Visibility::Private => false,
        _ => viewer.is_none_or(|p| p == class.package),
    };
    for f in &class.fields {
        if visible(f.visibility) && seen_fields.insert(f.name.clone()) {
            out.fields.push(f.clone());
        }
    }
    for m in &class.methods {
        if !m.is_constructor && visible(m.visibility) && seen_methods.insert(m.erased_key()) {
            out.methods.push(m.clone());
        }
    }
    for sup in &class.super_types {
        if sup.name != OBJECT {
            collect(model, viewer, &sup.name, out, seen_methods, seen_fields, visited);
        }
    }
}

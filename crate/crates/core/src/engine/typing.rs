//! Static typing of oracle expressions against the project model.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::rc::Rc;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cell::RefCell;

use super::context::{GenerationContext, OracleType};
use super::restrictions::Violation;
use super::types::{ExprType, Req, OBJECT, STREAM};
use crate::grammar::ast::{Arith, Atom, Chain, Operand, Prop, RelOp, Step};
use crate::grammar::{render_operand, OracleAst, Token};
use crate::model::{accessible_members_from, TypeRef};

pub(crate) const MAX_DEPTH: usize = 8;

const BOXES: &[(&str, bool)] = &[
    ("java.lang.Integer", true),
    ("java.lang.Long", true),
    ("java.lang.Short", true),
    ("java.lang.Byte", true),
    ("java.lang.Float", true),
    ("java.lang.Double", true),
    ("java.lang.Character", true),
    ("java.lang.Number", true),
    ("java.lang.Boolean", false),
];

#[derive(Clone, Debug)]
pub(crate) struct FieldSig {
    pub name: String,
    pub ty: ExprType,
    pub is_static: bool,
}

#[derive(Clone, Debug)]
pub(crate) struct MethodSig {
    pub name: String,
    pub params: Vec<ExprType>,
    pub ret: ExprType,
    pub is_static: bool,
}

#[derive(Debug, Default)]
pub(crate) struct MemberSet {
    pub fields: Vec<FieldSig>,
    pub methods: Vec<MethodSig>,
}

/// Names usable as chain bases and arguments.
#[derive(Clone, Debug)]
pub(crate) struct Scope {
    pub params: Vec<(String, ExprType)>,
    pub this_ty: Option<ExprType>,
    pub result_ty: Option<ExprType>,
    /// Simple name to qualified name.
    pub classes: BTreeMap<String, String>,
    /// Class simple names in collection order.
    pub class_order: Vec<String>,
    is_pre: bool,
    is_void: bool,
}

impl Scope {
    pub fn new(ctx: &GenerationContext<'_>) -> Scope {
        let unit = ctx.unit;
        let params = unit.parameters.iter().map(|p| (p.name.clone(), ExprType::from_type_ref(&p.ty))).collect();
        let this_ty = (!unit.is_static).then(|| ExprType::Reference(ctx.class.qualified_name.clone()));
        let is_void = unit.return_type.is_void();
        let is_pre = ctx.oracle_type == OracleType::Pre;
        let result_ty = (!is_void && !is_pre).then(|| ExprType::from_type_ref(&unit.return_type));
        let mut classes = BTreeMap::new();
        let mut class_order = Vec::new();
        let mut add = |simple: &str, q: &str| {
            if !classes.contains_key(simple) {
                classes.insert(simple.to_string(), q.to_string());
                class_order.push(simple.to_string());
            }
        };
        for c in ctx.model.classes.values().filter(|c| !c.name.contains('.')) {
            add(&c.name, &c.qualified_name);
        }
        for imp in &ctx.class.imports {
            if let Some(pkg) = imp.strip_suffix(".*") {
                for c in ctx.model.external_classes.values() {
                    if c.package == pkg && !c.name.contains('.') {
                        add(&c.name, &c.qualified_name);
                    }
                }
            } else if let Some(c) = ctx.model.external_classes.get(imp.as_str()) {
                add(&c.name, &c.qualified_name);
            }
        }
        Scope { params, this_ty, result_ty, classes, class_order, is_pre, is_void }
    }

    /// Identifiers that may be passed as arguments, with their types.
    pub fn identifiers<'a>(&'a self, jd: Option<&'a ExprType>) -> impl Iterator<Item = (&'a str, &'a ExprType)> + 'a {
        self.params
            .iter()
            .map(|(n, t)| (n.as_str(), t))
            .chain(self.this_ty.iter().map(|t| ("this", t)))
            .chain(self.result_ty.iter().map(|t| ("methodResultID", t)))
            .chain(jd.map(|t| ("jdVar", t)))
    }

    /// Type of a chain base word.
    pub fn base_type(&self, word: &str, jd: Option<&ExprType>) -> Result<ExprType, Violation> {
        match word {
            "this" => self.this_ty.clone().ok_or_else(|| Violation::new("R9", "`this` in a static method")),
            "methodResultID" => {
                if self.is_void {
                    Err(Violation::new("R1", "`methodResultID` of a void method"))
                } else if self.is_pre {
                    Err(Violation::new("R2", "`methodResultID` in a precondition"))
                } else {
                    Ok(self.result_ty.clone().expect("result type"))
                }
            }
            "jdVar" => jd.cloned().ok_or_else(|| Violation::new("R10", "`jdVar` outside a quantifier body")),
            _ => {
                if let Some((_, t)) = self.params.iter().find(|(n, _)| n == word) {
                    Ok(t.clone())
                } else if let Some(q) = self.classes.get(word) {
                    Ok(ExprType::StaticClass(q.clone()))
                } else {
                    Err(Violation::new("R21", format!("`{word}` is not a parameter or known class")))
                }
            }
        }
    }

    pub fn argument_type(&self, t: &Token, jd: Option<&ExprType>) -> Result<ExprType, Violation> {
        if let Some(ty) = ExprType::of_literal(t) {
            return Ok(ty);
        }
        match self.base_type(&t.text, jd)? {
            ExprType::StaticClass(_) => Err(Violation::new("R20", format!("class name `{}` as an argument", t.text))),
            ty => Ok(ty),
        }
    }
}

/// Type checker bound to one generation context.
pub(crate) struct Typer<'c, 'm> {
    pub ctx: &'c GenerationContext<'m>,
    pub scope: Scope,
    members: RefCell<BTreeMap<String, Rc<MemberSet>>>,
}

impl<'c, 'm> Typer<'c, 'm> {
    pub fn new(ctx: &'c GenerationContext<'m>) -> Self {
        Typer { ctx, scope: Scope::new(ctx), members: RefCell::new(BTreeMap::new()) }
    }

    fn member_set(&self, key: &str, ty: &TypeRef) -> Rc<MemberSet> {
        if let Some(m) = self.members.borrow().get(key) {
            return m.clone();
        }
        let set = match accessible_members_from(self.ctx.model, ty, &self.ctx.class.package) {
            Ok(m) => MemberSet {
                fields: m
                    .fields
                    .iter()
                    .map(|f| FieldSig { name: f.name.clone(), ty: ExprType::from_type_ref(&f.ty), is_static: f.is_static })
                    .collect(),
                methods: m
                    .methods
                    .iter()
                    .map(|m| MethodSig {
                        name: m.name.clone(),
                        params: m.parameters.iter().map(|p| ExprType::from_type_ref(&p.ty)).collect(),
                        ret: ExprType::from_type_ref(&m.return_type),
                        is_static: m.is_static,
                    })
                    .collect(),
            },
            Err(_) => MemberSet::default(),
        };
        let set = Rc::new(set);
        self.members.borrow_mut().insert(key.to_string(), set.clone());
        set
    }

    /// Members of a receiver, and whether only static ones apply. `None`
    /// when the type has no members.
    pub fn members_of(&self, recv: &ExprType) -> Option<(Rc<MemberSet>, bool)> {
        match recv {
            ExprType::Reference(q) => Some((self.member_set(q, &TypeRef::reference(q.clone())), false)),
            ExprType::StaticClass(q) => Some((self.member_set(q, &TypeRef::reference(q.clone())), true)),
            ExprType::Array(_) => {
                Some((self.member_set("[]", &TypeRef::array_of(TypeRef::reference(OBJECT))), false))
            }
            _ => None,
        }
    }

    /// Declaration text of the members of `recv` named `name`.
    pub fn member_declarations(&self, recv: &ExprType, name: &str) -> Vec<String> {
        let (ty, statics) = match recv {
            ExprType::Reference(q) => (TypeRef::reference(q.clone()), false),
            ExprType::StaticClass(q) => (TypeRef::reference(q.clone()), true),
            ExprType::Array(_) => (TypeRef::array_of(TypeRef::reference(OBJECT)), false),
            _ => return Vec::new(),
        };
        let Ok(m) = accessible_members_from(self.ctx.model, &ty, &self.ctx.class.package) else { return Vec::new() };
        let fields = m.fields.iter().filter(|f| f.name == name && f.is_static == statics).map(|f| f.declaration_text.clone());
        let methods = m.methods.iter().filter(|x| x.name == name && x.is_static == statics).map(|x| x.signature_text.clone());
        fields.chain(methods).collect()
    }

    pub fn is_interface(&self, q: &str) -> bool {
        self.ctx.model.class(q).is_some_and(|c| c.is_interface)
    }

    pub fn is_subtype(&self, a: &str, b: &str) -> bool {
        fn walk(t: &Typer<'_, '_>, a: &str, b: &str, depth: usize) -> bool {
            if a == b {
                return true;
            }
            if depth > 32 {
                return false;
            }
            t.ctx
                .model
                .class(a)
                .is_some_and(|c| c.super_types.iter().any(|s| walk(t, &s.name, b, depth + 1)))
        }
        b == OBJECT || walk(self, a, b, 0)
    }

    pub fn classes_related(&self, a: &str, b: &str) -> bool {
        a == b
            || a == OBJECT
            || b == OBJECT
            || self.is_subtype(a, b)
            || self.is_subtype(b, a)
            || self.is_interface(a)
            || self.is_interface(b)
    }

    /// Whether two reference-like types can be compared with `==`.
    pub fn refs_related(&self, l: &ExprType, r: &ExprType) -> bool {
        match (l, r) {
            (ExprType::Reference(a), ExprType::Reference(b)) => self.classes_related(a, b),
            (ExprType::Array(x), ExprType::Array(y)) => {
                if x.is_reference_like() && y.is_reference_like() {
                    self.refs_related(x, y)
                } else {
                    x == y
                }
            }
            (ExprType::Array(_), ExprType::Reference(o)) | (ExprType::Reference(o), ExprType::Array(_)) => o == OBJECT,
            _ => false,
        }
    }

    /// Whether `arg` can be passed where `param` is declared.
    pub fn assignable(&self, arg: &ExprType, param: &ExprType) -> bool {
        match param {
            p if p.is_numeric() => arg.is_numeric(),
            ExprType::Boolean => arg.is_boolean(),
            ExprType::Reference(q) => match arg {
                ExprType::Null => true,
                ExprType::Reference(r) => self.is_subtype(r, q),
                ExprType::Array(_) => q == OBJECT,
                a if a.is_numeric() => q == OBJECT || BOXES.iter().any(|(b, num)| *num && b == q),
                ExprType::Boolean => q == OBJECT || q == "java.lang.Boolean",
                _ => false,
            },
            ExprType::Array(p) => match arg {
                ExprType::Null => true,
                ExprType::Array(a) => match (&**a, &**p) {
                    (ExprType::Reference(_) | ExprType::Array(_), ExprType::Reference(_) | ExprType::Array(_)) => {
                        self.assignable(a, p)
                    }
                    (a, p) => a == p || matches!(p, ExprType::Unknown),
                },
                _ => false,
            },
            ExprType::Unknown => matches!(arg, ExprType::Null | ExprType::Reference(_) | ExprType::Array(_) | ExprType::Unknown),
            _ => false,
        }
    }

    pub fn satisfies(&self, t: &ExprType, req: &Req) -> bool {
        match req {
            Req::Numeric => t.is_numeric(),
            Req::Boolean => t.is_boolean(),
            Req::RefRelated(l) => *t == ExprType::Null || (t.is_reference_like() && self.refs_related(l, t)),
            Req::NullOnly => *t == ExprType::Null,
        }
    }

    /// What the right-hand side of `left op ...` must be.
    pub fn requirement(&self, left: &ExprType, op: RelOp) -> Result<Req, Violation> {
        if !op.is_equality() {
            return if left.is_numeric() {
                Ok(Req::Numeric)
            } else {
                Err(Violation::new("R4", format!("`{}` after a {left} operand", op.text())))
            };
        }
        match left {
            l if l.is_numeric() => Ok(Req::Numeric),
            l if l.is_boolean() => Ok(Req::Boolean),
            l if l.is_reference_like() => Ok(Req::RefRelated(l.clone())),
            ExprType::Unknown => Ok(Req::NullOnly),
            l => Err(Violation::new("R6", format!("`{}` after a {l} operand", op.text()))),
        }
    }

    /// Whether some class in scope may follow `left instanceof`.
    pub fn instanceof_target(&self, left: &ExprType, class: &str) -> Result<(), Violation> {
        if !left.is_reference_like() {
            return Err(Violation::new("R3", format!("`instanceof` after a {left} operand")));
        }
        let Some(q) = self.scope.classes.get(class) else {
            return Err(Violation::new("R3", format!("`{class}` is not a known class")));
        };
        if self.refs_related(left, &ExprType::Reference(q.clone())) {
            Ok(())
        } else {
            Err(Violation::new("R3", format!("{left} can never be a `{class}`")))
        }
    }

    /// Result type of calling `m` on `recv` with the given argument types.
    pub fn call_result(&self, recv: &ExprType, m: &MethodSig, args: &[ExprType]) -> ExprType {
        if m.ret == ExprType::Reference(STREAM.into()) {
            return match (recv, args) {
                (ExprType::StaticClass(_), [ExprType::Array(e)]) => ExprType::Stream(e.clone()),
                (ExprType::Reference(_), []) => ExprType::Stream(Box::new(ExprType::Reference(OBJECT.into()))),
                _ => ExprType::Stream(Box::new(ExprType::Unknown)),
            };
        }
        m.ret.clone()
    }

    /// Whether every parameter of `m` can be filled by an in-scope
    /// identifier.
    pub fn satisfiable(&self, m: &MethodSig, jd: Option<&ExprType>) -> bool {
        m.params.iter().all(|p| self.scope.identifiers(jd).any(|(_, t)| self.assignable(t, p)))
    }

    pub fn type_chain(&self, c: &Chain, jd: Option<&ExprType>, depth: usize) -> Result<ExprType, Violation> {
        let mut ty = self.scope.base_type(&c.base, jd)?;
        for s in &c.steps {
            ty = self.step_type(&ty, s, jd, depth)?;
        }
        Ok(ty)
    }

    pub fn field_type(&self, recv: &ExprType, name: &str) -> Result<ExprType, Violation> {
        let (set, statics) = self.receiver(recv)?;
        set.fields
            .iter()
            .find(|f| f.name == name && f.is_static == statics)
            .map(|f| f.ty.clone())
            .ok_or_else(|| Violation::new("R8", format!("{recv} has no field `{name}`")))
    }

    fn receiver(&self, recv: &ExprType) -> Result<(Rc<MemberSet>, bool), Violation> {
        match recv {
            ExprType::Stream(_) => Err(Violation::new("R11", "streams only take quantifiers")),
            _ => self.members_of(recv).ok_or_else(|| Violation::new("R7", format!("`.` after a {recv} operand"))),
        }
    }

    pub fn step_type(&self, recv: &ExprType, s: &Step, jd: Option<&ExprType>, depth: usize) -> Result<ExprType, Violation> {
        match s {
            Step::Field(name) => self.field_type(recv, name),
            Step::Call { name, args } => {
                let (set, statics) = self.receiver(recv)?;
                let arg_types =
                    args.iter().map(|a| self.scope.argument_type(a, jd)).collect::<Result<Vec<_>, _>>()?;
                let mut named = set.methods.iter().filter(|m| m.name == *name && m.is_static == statics).peekable();
                if named.peek().is_none() {
                    return Err(Violation::new("R8", format!("{recv} has no method `{name}`")));
                }
                let m = named
                    .find(|m| m.params.len() == arg_types.len() && m.params.iter().zip(&arg_types).all(|(p, a)| self.assignable(a, p)))
                    .ok_or_else(|| Violation::new("R12", format!("no `{name}` overload takes these arguments")))?;
                if m.ret == ExprType::Void {
                    return Err(Violation::new("R18", format!("`{name}` returns void")));
                }
                Ok(self.call_result(recv, m, &arg_types))
            }
            Step::Quantifier { name, body } => {
                let ExprType::Stream(elem) = recv else {
                    return Err(Violation::new("R11", format!("`{name}` on a {recv} receiver")));
                };
                if jd.is_some() {
                    return Err(Violation::new("R10", "nested quantifier"));
                }
                if depth + 1 > MAX_DEPTH {
                    return Err(Violation::new("R19", "nesting too deep"));
                }
                self.check_prop(body, Some(elem), depth + 1)?;
                Ok(ExprType::Boolean)
            }
        }
    }

    /// Raw type: class names and streams are returned as such.
    pub fn type_operand(&self, o: &Operand, jd: Option<&ExprType>, depth: usize) -> Result<ExprType, Violation> {
        match o {
            Operand::Literal(t) => Ok(ExprType::of_literal(t).unwrap_or(ExprType::Unknown)),
            Operand::Paren(p) => {
                if depth + 1 > MAX_DEPTH {
                    return Err(Violation::new("R19", "nesting too deep"));
                }
                self.check_prop(p, jd, depth + 1)?;
                Ok(ExprType::BooleanProposition)
            }
            Operand::Chain(c) => self.type_chain(c, jd, depth),
        }
    }

    /// Type of an operand used as a value.
    pub fn value_type(&self, o: &Operand, jd: Option<&ExprType>, depth: usize) -> Result<ExprType, Violation> {
        let t = self.type_operand(o, jd, depth)?;
        complete_value(t)
    }

    pub fn type_arith(&self, a: &Arith, jd: Option<&ExprType>, depth: usize) -> Result<ExprType, Violation> {
        if let Some(o) = a.as_single() {
            return self.value_type(o, jd, depth);
        }
        let mut floating = false;
        let operands =
            core::iter::once(&a.first).chain(a.rest.iter().map(|(_, t)| t)).flat_map(|t| {
                core::iter::once(&t.first).chain(t.rest.iter().map(|(_, o)| o))
            });
        for o in operands {
            let t = self.value_type(o, jd, depth)?;
            if !t.is_numeric() {
                return Err(Violation::new("R5", format!("arithmetic on a {t} operand")));
            }
            floating |= t == ExprType::NumericFloating;
        }
        Ok(if floating { ExprType::NumericFloating } else { ExprType::NumericIntegral })
    }

    pub fn check_prop(&self, p: &Prop, jd: Option<&ExprType>, depth: usize) -> Result<(), Violation> {
        for c in &p.disjuncts {
            for a in &c.atoms {
                self.check_atom(a, jd, depth)?;
            }
        }
        Ok(())
    }

    fn left_operand(&self, o: &Operand, jd: Option<&ExprType>, depth: usize) -> Result<ExprType, Violation> {
        if let Operand::Literal(t) = o {
            return Err(if t.is("true") || t.is("false") {
                Violation::new("R13", format!("`{}` as a proposition or left operand", t.text))
            } else {
                Violation::new("R16", format!("literal `{}` as a left operand", t.text))
            });
        }
        self.value_type(o, jd, depth)
    }

    pub fn check_atom(&self, a: &Atom, jd: Option<&ExprType>, depth: usize) -> Result<(), Violation> {
        match a {
            Atom::Operand(o) => {
                let t = self.left_operand(o, jd, depth)?;
                if t.is_boolean() {
                    Ok(())
                } else {
                    Err(Violation::new("R17", format!("a {t} operand is not a proposition")))
                }
            }
            Atom::InstanceOf { operand, class } => {
                let t = self.left_operand(operand, jd, depth)?;
                self.instanceof_target(&t, class)
            }
            Atom::Compare { left, op, right } => {
                let l = self.left_operand(left, jd, depth)?;
                let req = self.requirement(&l, *op)?;
                let r = self.type_arith(right, jd, depth)?;
                if right.as_single().is_none() && req != Req::Numeric {
                    return Err(Violation::new("R5", "arithmetic compared with a non-numeric operand"));
                }
                if !self.satisfies(&r, &req) {
                    let id = if op.is_equality() { "R6" } else { "R4" };
                    return Err(Violation::new(id, format!("{l} {} {r}", op.text())));
                }
                if let Some(o) = right.as_single() {
                    if render_operand(o) == render_operand(left) {
                        return Err(Violation::new("R14", format!("`{}` on both sides", render_operand(o))));
                    }
                }
                Ok(())
            }
        }
    }

    pub fn check_oracle(&self, ast: &OracleAst) -> Result<(), Violation> {
        match ast {
            OracleAst::Plain(p) => self.check_prop(p, None, 0),
            OracleAst::Guarded { cond, then, otherwise } => {
                self.check_prop(cond, None, 0)?;
                self.check_prop(then, None, 0)?;
                self.check_prop(otherwise, None, 0)
            }
        }
    }
}

pub(crate) fn complete_value(t: ExprType) -> Result<ExprType, Violation> {
    match t {
        ExprType::StaticClass(q) => Err(Violation::new("R20", format!("class `{q}` used as a value"))),
        ExprType::Stream(_) => Err(Violation::new("R11", "a stream must be closed by a quantifier")),
        ExprType::Void => Err(Violation::new("R18", "void value")),
        t => Ok(t),
    }
}

//! Canonical text for a document. Parsing the output gives the same
//! document back.

use std::fmt::Write;

use crate::ast::*;
use crate::lexer::{is_ident_char, is_ident_start};

/// A label as the parser reads it back.
fn label(l: &Ident) -> String {
    let t = &l.text;
    let ident = t.chars().next().is_some_and(is_ident_start) && t.chars().all(is_ident_char);
    let number = t.parse::<i64>().is_ok_and(|n| n >= 0 && n.to_string() == *t);
    if ident || number {
        t.clone()
    } else {
        format!("\"{}\"", t)
    }
}

fn ints(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn matrix(m: &[Vec<i64>]) -> String {
    let rows: Vec<String> = m.iter().map(|r| ints(r)).collect();
    format!("[{}]", rows.join(", "))
}

pub fn functor(e: &FunctorExpr) -> String {
    match e {
        FunctorExpr::Named(n) => n.text.clone(),
        FunctorExpr::Tensor(m) => format!("tensor({})", m),
        FunctorExpr::Reduce(p) => format!("reduce({})", p),
        FunctorExpr::Augmentation(r) => format!("augmentation({})", r),
        FunctorExpr::Identity(r) => format!("identity({})", r),
        FunctorExpr::Quotient(a, b, images) => format!("quotient({}, {}, {})", a, b, ints(images)),
        FunctorExpr::Compose(g, f) => format!("compose({}, {})", functor(g), functor(f)),
    }
}

fn value(v: &Value) -> String {
    match v {
        Value::Int(n) => n.to_string(),
        Value::Name(n) => n.text.clone(),
        Value::Functor(e) => functor(e),
        Value::List(items) => {
            let parts: Vec<String> = items.iter().map(value).collect();
            format!("[{}]", parts.join(", "))
        }
    }
}

fn bindings(out: &mut String, items: &[(Ident, Ident)]) {
    out.push_str(" {\n");
    for (k, v) in items {
        let _ = writeln!(out, "  {} = {}", label(k), v);
    }
    out.push('}');
}

pub fn decl(d: &Decl) -> String {
    let mut out = String::new();
    match &d.kind {
        DeclKind::Ring { name, expr } => {
            let e = match expr {
                RingExpr::Integers => "integers".to_string(),
                RingExpr::Field(p) => format!("field {}", p),
                RingExpr::Cyclic(p, n) => format!("cyclic {} {}", p, n),
                RingExpr::Abelian(p, os) => format!("abelian {} {}", p, ints(os)),
                RingExpr::Group(p, t) => format!("group {} {}", p, matrix(t)),
            };
            let _ = write!(out, "ring {} = {}", name, e);
        }
        DeclKind::Module { name, ring, expr } => {
            let e = match expr {
                ModuleExpr::Coker(m) => format!("coker {}", matrix(m)),
                ModuleExpr::Free(n) => format!("free {}", n),
                ModuleExpr::Trivial => "trivial".into(),
                ModuleExpr::Zero => "zero".into(),
                ModuleExpr::Cyclic(n) => format!("cyclic {}", n),
                ModuleExpr::Factors(fs) => format!("factors {}", ints(fs)),
            };
            let _ = write!(out, "module {} over {} = {}", name, ring, e);
        }
        DeclKind::Morphism {
            name,
            source,
            target,
            expr,
        } => {
            let e = match expr {
                MorphismExpr::Images(m) => matrix(m),
                MorphismExpr::Identity => "identity".into(),
                MorphismExpr::Zero => "zero".into(),
            };
            let _ = write!(out, "morphism {} : {} -> {} = {}", name, source, target, e);
        }
        DeclKind::Category { name, expr } => match expr {
            CategoryExpr::Standard(s) => {
                let _ = write!(out, "category {} = standard {}", name, s);
            }
            CategoryExpr::Explicit {
                objects,
                arrows,
                compositions,
            } => {
                let _ = writeln!(out, "category {} = {{", name);
                if !objects.is_empty() {
                    let os: Vec<String> = objects.iter().map(label).collect();
                    let _ = writeln!(out, "  objects {}", os.join(", "));
                }
                for (l, s, t) in arrows {
                    let _ = writeln!(out, "  arrow {} : {} -> {}", label(l), label(s), label(t));
                }
                for (g, f, h) in compositions {
                    let _ = writeln!(out, "  compose {} {} = {}", label(g), label(f), label(h));
                }
                out.push('}');
            }
        },
        DeclKind::Diagram {
            name,
            category,
            bindings: b,
        } => {
            let _ = write!(out, "diagram {} over {}", name, category);
            bindings(&mut out, b);
        }
        DeclKind::DiagMor {
            name,
            source,
            target,
            components,
        } => {
            let _ = write!(out, "diagmor {} : {} -> {}", name, source, target);
            bindings(&mut out, components);
        }
        DeclKind::Functor { name, expr } => {
            let _ = write!(out, "functor {} = {}", name, functor(expr));
        }
        DeclKind::Ses { name, mono, epi } => {
            let _ = write!(out, "ses {} = ({}, {})", name, mono, epi);
        }
        DeclKind::SesMor {
            name,
            source,
            target,
            maps,
        } => {
            let _ = write!(
                out,
                "sesmor {} : {} -> {} = ({}, {}, {})",
                name, source, target, maps[0], maps[1], maps[2]
            );
        }
        DeclKind::Task(t) => {
            out.push_str("task ");
            if let Some(n) = &t.name {
                let _ = write!(out, "{} = ", n);
            }
            out.push_str(t.kind.name());
            for a in &t.args {
                let _ = write!(out, " {}={}", a.key, value(&a.value));
            }
        }
    }
    out
}

pub fn print(doc: &Doc) -> String {
    let mut out = String::new();
    for d in &doc.decls {
        out.push_str(&decl(d));
        out.push('\n');
    }
    out
}

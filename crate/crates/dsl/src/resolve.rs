//! Name resolution and task argument typing.

use std::collections::HashMap;
use std::fmt;

use funcat_core::Suite;

use crate::ast::*;
use crate::diag::{Diagnostic, Span};
use crate::limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymKind {
    Ring,
    Module,
    Morphism,
    Category,
    Diagram,
    DiagMor,
    Functor,
    Ses,
    SesMor,
    Task,
}

impl fmt::Display for SymKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymKind::Ring => "ring",
            SymKind::Module => "module",
            SymKind::Morphism => "morphism",
            SymKind::Category => "category",
            SymKind::Diagram => "diagram",
            SymKind::DiagMor => "diagram morphism",
            SymKind::Functor => "functor",
            SymKind::Ses => "short exact sequence",
            SymKind::SesMor => "morphism of sequences",
            SymKind::Task => "task",
        })
    }
}

pub fn decl_kind(d: &Decl) -> SymKind {
    match &d.kind {
        DeclKind::Ring { .. } => SymKind::Ring,
        DeclKind::Module { .. } => SymKind::Module,
        DeclKind::Morphism { .. } => SymKind::Morphism,
        DeclKind::Category { .. } => SymKind::Category,
        DeclKind::Diagram { .. } => SymKind::Diagram,
        DeclKind::DiagMor { .. } => SymKind::DiagMor,
        DeclKind::Functor { .. } => SymKind::Functor,
        DeclKind::Ses { .. } => SymKind::Ses,
        DeclKind::SesMor { .. } => SymKind::SesMor,
        DeclKind::Task(_) => SymKind::Task,
    }
}

/// Names declared so far, with their kinds.
#[derive(Default)]
pub struct Table {
    names: HashMap<String, (SymKind, Span)>,
}

impl Table {
    pub fn kind(&self, name: &str) -> Option<SymKind> {
        self.names.get(name).map(|(k, _)| *k)
    }

    /// Requires `id` to name an earlier declaration of one of `kinds`.
    pub fn expect(&self, id: &Ident, kinds: &[SymKind]) -> Result<SymKind, Diagnostic> {
        match self.kind(&id.text) {
            None => Err(Diagnostic::new(id.span(), format!("unresolved name `{}`", id.text))),
            Some(k) if kinds.contains(&k) => Ok(k),
            Some(k) => {
                let wanted: Vec<String> = kinds.iter().map(|k| k.to_string()).collect();
                Err(Diagnostic::new(
                    id.span(),
                    format!("`{}` is a {}, expected a {}", id.text, k, wanted.join(" or ")),
                ))
            }
        }
    }

    fn declare(&mut self, id: &Ident, kind: SymKind) -> Result<(), Diagnostic> {
        if let Some((_, first)) = self.names.get(&id.text) {
            return Err(Diagnostic::new(
                id.span(),
                format!("`{}` is already declared at {}", id.text, first),
            ));
        }
        self.names.insert(id.text.clone(), (kind, id.span()));
        Ok(())
    }
}

/// Checks every reference against earlier declarations, and the arguments
/// of every task. Returns the table of all names.
pub fn resolve(doc: &Doc) -> Result<Table, Vec<Diagnostic>> {
    let mut table = Table::default();
    let mut diags = Vec::new();
    for (k, d) in doc.decls.iter().enumerate() {
        if let Err(mut e) = references(d, &table) {
            diags.append(&mut e);
        }
        let declared = match &d.kind {
            DeclKind::Task(t) if t.name.is_none() => Ident::new(task_label(k, t), d.span()),
            _ => d.name().cloned().expect("named declaration"),
        };
        if let Err(e) = table.declare(&declared, decl_kind(d)) {
            diags.push(e);
        }
    }
    if diags.is_empty() {
        Ok(table)
    } else {
        Err(diags)
    }
}

/// Name of a task: its own, or `<kind><position>` for unnamed tasks.
pub fn task_label(index: usize, t: &TaskDecl) -> String {
    match &t.name {
        Some(n) => n.text.clone(),
        None => format!("{}{}", t.kind.name(), index + 1),
    }
}

fn references(d: &Decl, table: &Table) -> Result<(), Vec<Diagnostic>> {
    let one = |r: Result<SymKind, Diagnostic>| r.map(|_| ()).map_err(|e| vec![e]);
    use SymKind as K;
    match &d.kind {
        DeclKind::Ring { .. } | DeclKind::Category { .. } => Ok(()),
        DeclKind::Module { ring, .. } => one(table.expect(ring, &[K::Ring])),
        DeclKind::Morphism { source, target, .. } => {
            one(table.expect(source, &[K::Module]))?;
            one(table.expect(target, &[K::Module]))
        }
        DeclKind::Diagram {
            category, bindings, ..
        } => {
            one(table.expect(category, &[K::Category]))?;
            for (_, v) in bindings {
                one(table.expect(v, &[K::Module, K::Morphism]))?;
            }
            Ok(())
        }
        DeclKind::DiagMor {
            source,
            target,
            components,
            ..
        } => {
            one(table.expect(source, &[K::Diagram]))?;
            one(table.expect(target, &[K::Diagram]))?;
            for (_, v) in components {
                one(table.expect(v, &[K::Morphism]))?;
            }
            Ok(())
        }
        DeclKind::Functor { expr, .. } => functor_refs(expr, table).map_err(|e| vec![e]),
        DeclKind::Ses { mono, epi, .. } => {
            let a = table.expect(mono, &[K::Morphism, K::DiagMor]).map_err(|e| vec![e])?;
            let b = table.expect(epi, &[K::Morphism, K::DiagMor]).map_err(|e| vec![e])?;
            if a != b {
                return Err(vec![Diagnostic::new(epi.span(), "both maps of a sequence must be of the same kind")]);
            }
            Ok(())
        }
        DeclKind::SesMor {
            source,
            target,
            maps,
            ..
        } => {
            one(table.expect(source, &[K::Ses]))?;
            one(table.expect(target, &[K::Ses]))?;
            let kinds = maps
                .iter()
                .map(|m| table.expect(m, &[K::Morphism, K::DiagMor]))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| vec![e])?;
            if kinds.iter().any(|k| *k != kinds[0]) {
                return Err(vec![Diagnostic::new(maps[0].span(), "all three maps must be of the same kind")]);
            }
            Ok(())
        }
        DeclKind::Task(t) => task_spec(t, d.span(), table).map(|_| ()),
    }
}

fn functor_refs(e: &FunctorExpr, table: &Table) -> Result<(), Diagnostic> {
    use SymKind as K;
    match e {
        FunctorExpr::Named(n) => table.expect(n, &[K::Functor]).map(|_| ()),
        FunctorExpr::Tensor(m) => table.expect(m, &[K::Module]).map(|_| ()),
        FunctorExpr::Reduce(_) => Ok(()),
        FunctorExpr::Augmentation(r) | FunctorExpr::Identity(r) => table.expect(r, &[K::Ring]).map(|_| ()),
        FunctorExpr::Quotient(a, b, _) => {
            table.expect(a, &[K::Ring])?;
            table.expect(b, &[K::Ring]).map(|_| ())
        }
        FunctorExpr::Compose(g, f) => {
            functor_refs(g, table)?;
            functor_refs(f, table)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variable {
    First,
    Second,
}

/// A task with typed arguments. Degrees left out come from the run options.
#[derive(Clone, Debug, PartialEq)]
pub enum TaskSpec {
    Validate,
    /// Homology of `A_0 → A_1 → … → A_k` at every position.
    Homology { maps: Vec<Ident> },
    Derive {
        functor: FunctorExpr,
        object: Ident,
        n: Option<usize>,
    },
    Les {
        functor: FunctorExpr,
        ses: Ident,
        n: Option<usize>,
    },
    /// Tensor ladder: the sequence morphism sits in `variable`, `map` in
    /// the other one.
    Ladder {
        sesmor: Ident,
        map: Ident,
        variable: Variable,
        n: Option<usize>,
    },
    Ss {
        f: FunctorExpr,
        g: FunctorExpr,
        object: Ident,
        n: Option<usize>,
    },
    Verify {
        suite: Suite,
        cases: Option<usize>,
        seed: Option<u64>,
    },
}

struct Args<'a> {
    span: Span,
    args: HashMap<&'a str, &'a Arg>,
    table: &'a Table,
}

impl<'a> Args<'a> {
    fn get(&self, key: &str) -> Option<&'a Arg> {
        self.args.get(key).copied()
    }

    fn required(&self, key: &str) -> Result<&'a Arg, Diagnostic> {
        self.get(key)
            .ok_or_else(|| Diagnostic::new(self.span, format!("missing argument `{}`", key)))
    }

    fn int(&self, key: &str, lo: i64, hi: i64) -> Result<Option<i64>, Diagnostic> {
        match self.get(key) {
            None => Ok(None),
            Some(Arg {
                value: Value::Int(n), ..
            }) if (lo..=hi).contains(n) => Ok(Some(*n)),
            Some(a) => Err(Diagnostic::new(
                a.key.span(),
                format!("`{}` must be an integer in {}..={}", key, lo, hi),
            )),
        }
    }

    fn degree(&self) -> Result<Option<usize>, Diagnostic> {
        Ok(self.int("n", 0, limits::MAX_DEGREE as i64)?.map(|n| n as usize))
    }

    fn name(&self, key: &str, kinds: &[SymKind]) -> Result<Ident, Diagnostic> {
        let a = self.required(key)?;
        match &a.value {
            Value::Name(id) => {
                self.table.expect(id, kinds)?;
                Ok(id.clone())
            }
            _ => Err(Diagnostic::new(a.key.span(), format!("`{}` must be a name", key))),
        }
    }

    fn word(&self, key: &str) -> Result<Option<&'a Ident>, Diagnostic> {
        match self.get(key) {
            None => Ok(None),
            Some(Arg {
                value: Value::Name(id), ..
            }) => Ok(Some(id)),
            Some(a) => Err(Diagnostic::new(a.key.span(), format!("`{}` must be a word", key))),
        }
    }

    fn functor(&self, key: &str) -> Result<FunctorExpr, Diagnostic> {
        let a = self.required(key)?;
        let e = match &a.value {
            Value::Functor(e) => e.clone(),
            Value::Name(id) => FunctorExpr::Named(id.clone()),
            _ => return Err(Diagnostic::new(a.key.span(), format!("`{}` must be a functor", key))),
        };
        functor_refs(&e, self.table)?;
        Ok(e)
    }
}

fn allowed_keys(kind: TaskKind) -> &'static [&'static str] {
    match kind {
        TaskKind::Validate => &[],
        TaskKind::Homology => &["complex"],
        TaskKind::Derive => &["F", "A", "n"],
        TaskKind::Les => &["F", "S", "n"],
        TaskKind::Ladder => &["X", "g", "n", "variable"],
        TaskKind::Ss => &["F", "G", "A", "n"],
        TaskKind::Verify => &["suite", "cases", "seed"],
    }
}

pub fn task_spec(t: &TaskDecl, span: Span, table: &Table) -> Result<TaskSpec, Vec<Diagnostic>> {
    let allowed = allowed_keys(t.kind);
    let mut args = HashMap::new();
    for a in &t.args {
        if !allowed.contains(&a.key.text.as_str()) {
            return Err(vec![Diagnostic::new(
                a.key.span(),
                format!("`{}` tasks take no argument `{}`", t.kind.name(), a.key.text),
            )]);
        }
        if args.insert(a.key.text.as_str(), a).is_some() {
            return Err(vec![Diagnostic::new(a.key.span(), format!("argument `{}` given twice", a.key.text))]);
        }
    }
    let args = Args { span, args, table };
    typed(t.kind, &args).map_err(|e| vec![e])
}

fn typed(kind: TaskKind, a: &Args) -> Result<TaskSpec, Diagnostic> {
    use SymKind as K;
    Ok(match kind {
        TaskKind::Validate => TaskSpec::Validate,
        TaskKind::Homology => {
            let arg = a.required("complex")?;
            let Value::List(items) = &arg.value else {
                return Err(Diagnostic::new(arg.key.span(), "`complex` must be a list of maps"));
            };
            if items.is_empty() || items.len() > limits::MAX_COMPLEX {
                return Err(Diagnostic::new(
                    arg.key.span(),
                    format!("`complex` needs 1 to {} maps", limits::MAX_COMPLEX),
                ));
            }
            let mut maps = Vec::new();
            let mut first = None;
            for v in items {
                let Value::Name(id) = v else {
                    return Err(Diagnostic::new(arg.key.span(), "`complex` must be a list of names"));
                };
                let k = a.table.expect(id, &[K::Morphism, K::DiagMor])?;
                if *first.get_or_insert(k) != k {
                    return Err(Diagnostic::new(id.span(), "maps of a complex must all be of the same kind"));
                }
                maps.push(id.clone());
            }
            TaskSpec::Homology { maps }
        }
        TaskKind::Derive => TaskSpec::Derive {
            functor: a.functor("F")?,
            object: a.name("A", &[K::Module, K::Diagram])?,
            n: a.degree()?,
        },
        TaskKind::Les => TaskSpec::Les {
            functor: a.functor("F")?,
            ses: a.name("S", &[K::Ses])?,
            n: a.degree()?,
        },
        TaskKind::Ladder => {
            let variable = match a.word("variable")? {
                None => Variable::First,
                Some(w) if w.text == "first" => Variable::First,
                Some(w) if w.text == "second" => Variable::Second,
                Some(w) => return Err(Diagnostic::new(w.span(), "`variable` is `first` or `second`")),
            };
            TaskSpec::Ladder {
                sesmor: a.name("X", &[K::SesMor])?,
                map: a.name("g", &[K::Morphism])?,
                variable,
                n: a.degree()?,
            }
        }
        TaskKind::Ss => TaskSpec::Ss {
            f: a.functor("F")?,
            g: a.functor("G")?,
            object: a.name("A", &[K::Module, K::Diagram])?,
            n: a.degree()?,
        },
        TaskKind::Verify => {
            let arg = a.required("suite")?;
            let suite = match a.word("suite")? {
                Some(w) => w
                    .text
                    .parse::<Suite>()
                    .map_err(|_| Diagnostic::new(w.span(), format!("unknown suite `{}`", w.text)))?,
                None => return Err(Diagnostic::new(arg.key.span(), "`suite` must be a suite name")),
            };
            TaskSpec::Verify {
                suite,
                cases: a.int("cases", 1, limits::MAX_CASES as i64)?.map(|c| c as usize),
                seed: a.int("seed", 0, i64::MAX)?.map(|s| s as u64),
            }
        }
    })
}

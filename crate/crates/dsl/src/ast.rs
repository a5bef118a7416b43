//! Syntax tree of a workbench document.

use std::fmt;

use crate::diag::{Loc, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ident {
    pub text: String,
    pub loc: Loc,
}

impl Ident {
    pub fn new(text: impl Into<String>, span: Span) -> Self {
        Ident {
            text: text.into(),
            loc: Loc(span),
        }
    }

    pub fn span(&self) -> Span {
        self.loc.0
    }
}

impl fmt::Display for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Doc {
    pub decls: Vec<Decl>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decl {
    pub loc: Loc,
    pub kind: DeclKind,
}

impl Decl {
    pub fn span(&self) -> Span {
        self.loc.0
    }

    /// The declared name; unnamed tasks have none.
    pub fn name(&self) -> Option<&Ident> {
        match &self.kind {
            DeclKind::Ring { name, .. }
            | DeclKind::Module { name, .. }
            | DeclKind::Morphism { name, .. }
            | DeclKind::Category { name, .. }
            | DeclKind::Diagram { name, .. }
            | DeclKind::DiagMor { name, .. }
            | DeclKind::Functor { name, .. }
            | DeclKind::Ses { name, .. }
            | DeclKind::SesMor { name, .. } => Some(name),
            DeclKind::Task(t) => t.name.as_ref(),
        }
    }

    pub fn keyword(&self) -> &'static str {
        match &self.kind {
            DeclKind::Ring { .. } => "ring",
            DeclKind::Module { .. } => "module",
            DeclKind::Morphism { .. } => "morphism",
            DeclKind::Category { .. } => "category",
            DeclKind::Diagram { .. } => "diagram",
            DeclKind::DiagMor { .. } => "diagmor",
            DeclKind::Functor { .. } => "functor",
            DeclKind::Ses { .. } => "ses",
            DeclKind::SesMor { .. } => "sesmor",
            DeclKind::Task(_) => "task",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeclKind {
    Ring {
        name: Ident,
        expr: RingExpr,
    },
    Module {
        name: Ident,
        ring: Ident,
        expr: ModuleExpr,
    },
    Morphism {
        name: Ident,
        source: Ident,
        target: Ident,
        expr: MorphismExpr,
    },
    Category {
        name: Ident,
        expr: CategoryExpr,
    },
    /// Binds every object and non-identity morphism label of the category.
    Diagram {
        name: Ident,
        category: Ident,
        bindings: Vec<(Ident, Ident)>,
    },
    /// Binds every object label to a component.
    DiagMor {
        name: Ident,
        source: Ident,
        target: Ident,
        components: Vec<(Ident, Ident)>,
    },
    Functor {
        name: Ident,
        expr: FunctorExpr,
    },
    Ses {
        name: Ident,
        mono: Ident,
        epi: Ident,
    },
    SesMor {
        name: Ident,
        source: Ident,
        target: Ident,
        maps: [Ident; 3],
    },
    Task(TaskDecl),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingExpr {
    Integers,
    /// `F_p`.
    Field(i64),
    /// `F_p[C_n]`.
    Cyclic(i64, i64),
    /// `F_p[C_{n1} × … × C_{nk}]`.
    Abelian(i64, Vec<i64>),
    /// `F_p[G]` from a multiplication table; element `i` is row `i`.
    Group(i64, Vec<Vec<i64>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleExpr {
    /// Rows are relations, written in the coordinates of the free module.
    Coker(Vec<Vec<i64>>),
    Free(i64),
    Trivial,
    Zero,
    Cyclic(i64),
    Factors(Vec<i64>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismExpr {
    /// Row `j` is the image of generator `j` of the source.
    Images(Vec<Vec<i64>>),
    Identity,
    Zero,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CategoryExpr {
    Standard(Ident),
    Explicit {
        objects: Vec<Ident>,
        /// `(label, source, target)`.
        arrows: Vec<(Ident, Ident, Ident)>,
        /// `(g, f, g∘f)`.
        compositions: Vec<(Ident, Ident, Ident)>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctorExpr {
    Named(Ident),
    /// `− ⊗ M`.
    Tensor(Ident),
    /// Base change `Z → F_p`.
    Reduce(i64),
    /// Base change along the augmentation of a group algebra.
    Augmentation(Ident),
    /// Base change along the group homomorphism sending element `i` to
    /// `images[i]`.
    Quotient(Ident, Ident, Vec<i64>),
    Identity(Ident),
    /// `outer ∘ inner`.
    Compose(Box<FunctorExpr>, Box<FunctorExpr>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TaskKind {
    Validate,
    Homology,
    Derive,
    Les,
    Ladder,
    Ss,
    Verify,
}

impl TaskKind {
    pub const ALL: [TaskKind; 7] = [
        TaskKind::Validate,
        TaskKind::Homology,
        TaskKind::Derive,
        TaskKind::Les,
        TaskKind::Ladder,
        TaskKind::Ss,
        TaskKind::Verify,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TaskKind::Validate => "validate",
            TaskKind::Homology => "homology",
            TaskKind::Derive => "derive",
            TaskKind::Les => "les",
            TaskKind::Ladder => "ladder",
            TaskKind::Ss => "ss",
            TaskKind::Verify => "verify",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaskDecl {
    pub name: Option<Ident>,
    pub kind: TaskKind,
    pub args: Vec<Arg>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arg {
    pub key: Ident,
    pub value: Value,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Int(i64),
    Name(Ident),
    /// A functor written in call form, e.g. `tensor(M)`.
    Functor(FunctorExpr),
    List(Vec<Value>),
}

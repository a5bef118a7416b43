//! Recursive-descent parser. Syntax errors are collected per declaration;
//! after an error the parser skips to the end of that declaration.

use crate::ast::*;
use crate::diag::{Diagnostic, Loc, Span};
use crate::lexer::{lex, Tok, Token};

/// Deepest nesting of lists and functor calls accepted.
pub const MAX_NESTING: usize = 32;
/// Parsing stops after this many diagnostics.
pub const MAX_DIAGNOSTICS: usize = 50;

type PResult<T> = Result<T, Diagnostic>;

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: Span,
    depth: usize,
}

/// Syntax only; see [`crate::parse`] for name resolution.
pub fn parse_syntax(src: &str) -> Result<Doc, Vec<Diagnostic>> {
    let toks = lex(src).map_err(|d| vec![d])?;
    let end = end_span(src);
    let mut p = Parser {
        toks,
        pos: 0,
        end,
        depth: 0,
    };
    let mut decls = Vec::new();
    let mut diags = Vec::new();
    loop {
        p.skip_separators();
        if p.peek().is_none() || diags.len() >= MAX_DIAGNOSTICS {
            break;
        }
        let start = p.pos;
        p.depth = 0;
        let res = p.decl().and_then(|d| {
            if p.at_separator() {
                Ok(d)
            } else {
                Err(p.unexpected("end of declaration"))
            }
        });
        match res {
            Ok(d) => decls.push(d),
            Err(e) => {
                diags.push(e);
                p.recover(start);
            }
        }
    }
    if diags.is_empty() {
        Ok(Doc { decls })
    } else {
        Err(diags)
    }
}

fn end_span(src: &str) -> Span {
    let line = src.matches('\n').count() + 1;
    let col = src.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    Span::new(line, col)
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|t| &t.tok)
    }

    fn span(&self) -> Span {
        self.toks.get(self.pos).map_or(self.end, |t| t.span)
    }

    fn at_separator(&self) -> bool {
        matches!(self.peek(), None | Some(Tok::Newline) | Some(Tok::Semi))
    }

    fn skip_separators(&mut self) {
        while matches!(self.peek(), Some(Tok::Newline) | Some(Tok::Semi)) {
            self.pos += 1;
        }
    }

    /// Moves past the declaration that started at `start`: the first
    /// separator outside braces.
    fn recover(&mut self, start: usize) {
        self.pos = start;
        let mut braces = 0usize;
        while let Some(t) = self.peek() {
            match t {
                Tok::LBrace => braces += 1,
                Tok::RBrace => braces = braces.saturating_sub(1),
                Tok::Newline | Tok::Semi if braces == 0 && self.pos > start => break,
                _ => {}
            }
            self.pos += 1;
        }
    }

    fn unexpected(&self, wanted: &str) -> Diagnostic {
        match self.peek() {
            Some(t) => Diagnostic::new(self.span(), format!("expected {}, found {}", wanted, t)),
            None => Diagnostic::new(self.span(), format!("expected {}, found end of input", wanted)),
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> PResult<()> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.unexpected(&tok.to_string()))
        }
    }

    fn ident(&mut self, what: &str) -> PResult<Ident> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let id = Ident::new(s.clone(), self.span());
                self.pos += 1;
                Ok(id)
            }
            _ => Err(self.unexpected(what)),
        }
    }

    /// A label in a category: identifier, integer or quoted string.
    fn label(&mut self, what: &str) -> PResult<Ident> {
        let span = self.span();
        let text = match self.peek() {
            Some(Tok::Ident(s)) | Some(Tok::Str(s)) => s.clone(),
            Some(Tok::Int(n)) => n.to_string(),
            _ => return Err(self.unexpected(what)),
        };
        self.pos += 1;
        Ok(Ident::new(text, span))
    }

    fn keyword(&mut self, kw: &str) -> PResult<()> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.unexpected(&format!("`{}`", kw))),
        }
    }

    fn int(&mut self, what: &str) -> PResult<i64> {
        match self.peek() {
            Some(&Tok::Int(n)) => {
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn nest(&mut self) -> PResult<()> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return Err(Diagnostic::new(self.span(), "nesting is too deep"));
        }
        Ok(())
    }

    /// `[a, b, …]` with `item` parsing each element.
    fn list<T>(&mut self, mut item: impl FnMut(&mut Self) -> PResult<T>) -> PResult<Vec<T>> {
        self.expect(Tok::LBracket)?;
        self.nest()?;
        let mut out = Vec::new();
        if !self.eat(&Tok::RBracket) {
            loop {
                out.push(item(self)?);
                if self.eat(&Tok::RBracket) {
                    break;
                }
                if !self.eat(&Tok::Comma) {
                    return Err(self.unexpected("`,` or `]`"));
                }
            }
        }
        self.depth -= 1;
        Ok(out)
    }

    fn int_list(&mut self) -> PResult<Vec<i64>> {
        self.list(|p| p.int("an integer"))
    }

    fn matrix(&mut self) -> PResult<Vec<Vec<i64>>> {
        self.list(|p| p.int_list())
    }

    fn decl(&mut self) -> PResult<Decl> {
        let span = self.span();
        let kw = self.ident("a declaration keyword")?;
        let kind = match kw.text.as_str() {
            "ring" => self.ring()?,
            "module" => self.module()?,
            "morphism" => self.morphism()?,
            "category" => self.category()?,
            "diagram" => self.diagram()?,
            "diagmor" => self.diagmor()?,
            "functor" => {
                let name = self.ident("a functor name")?;
                self.expect(Tok::Eq)?;
                DeclKind::Functor {
                    name,
                    expr: self.functor()?,
                }
            }
            "ses" => {
                let name = self.ident("a sequence name")?;
                self.expect(Tok::Eq)?;
                self.expect(Tok::LParen)?;
                let mono = self.ident("a morphism name")?;
                self.expect(Tok::Comma)?;
                let epi = self.ident("a morphism name")?;
                self.expect(Tok::RParen)?;
                DeclKind::Ses { name, mono, epi }
            }
            "sesmor" => {
                let name = self.ident("a name")?;
                self.expect(Tok::Colon)?;
                let source = self.ident("a sequence name")?;
                self.expect(Tok::Arrow)?;
                let target = self.ident("a sequence name")?;
                self.expect(Tok::Eq)?;
                self.expect(Tok::LParen)?;
                let a = self.ident("a morphism name")?;
                self.expect(Tok::Comma)?;
                let b = self.ident("a morphism name")?;
                self.expect(Tok::Comma)?;
                let c = self.ident("a morphism name")?;
                self.expect(Tok::RParen)?;
                DeclKind::SesMor {
                    name,
                    source,
                    target,
                    maps: [a, b, c],
                }
            }
            "task" => DeclKind::Task(self.task()?),
            other => {
                return Err(Diagnostic::new(
                    kw.span(),
                    format!("unknown declaration `{}`", other),
                ))
            }
        };
        Ok(Decl { loc: Loc(span), kind })
    }

    fn ring(&mut self) -> PResult<DeclKind> {
        let name = self.ident("a ring name")?;
        if !self.eat(&Tok::Eq) {
            return Ok(DeclKind::Ring {
                name,
                expr: RingExpr::Integers,
            });
        }
        let head = self.ident("a ring description")?;
        let expr = match head.text.as_str() {
            "integers" => RingExpr::Integers,
            "field" => RingExpr::Field(self.int("a prime")?),
            "cyclic" => {
                let p = self.int("a prime")?;
                RingExpr::Cyclic(p, self.int("a group order")?)
            }
            "abelian" => {
                let p = self.int("a prime")?;
                RingExpr::Abelian(p, self.int_list()?)
            }
            "group" => {
                let p = self.int("a prime")?;
                RingExpr::Group(p, self.matrix()?)
            }
            other => return Err(Diagnostic::new(head.span(), format!("unknown ring `{}`", other))),
        };
        Ok(DeclKind::Ring { name, expr })
    }

    fn module(&mut self) -> PResult<DeclKind> {
        let name = self.ident("a module name")?;
        self.keyword("over")?;
        let ring = self.ident("a ring name")?;
        self.expect(Tok::Eq)?;
        let head = self.ident("a module description")?;
        let expr = match head.text.as_str() {
            "coker" => ModuleExpr::Coker(self.matrix()?),
            "free" => ModuleExpr::Free(self.int("a rank")?),
            "trivial" => ModuleExpr::Trivial,
            "zero" => ModuleExpr::Zero,
            "cyclic" => ModuleExpr::Cyclic(self.int("an order")?),
            "factors" => ModuleExpr::Factors(self.int_list()?),
            other => {
                return Err(Diagnostic::new(
                    head.span(),
                    format!("unknown module description `{}`", other),
                ))
            }
        };
        Ok(DeclKind::Module { name, ring, expr })
    }

    fn morphism(&mut self) -> PResult<DeclKind> {
        let name = self.ident("a morphism name")?;
        self.expect(Tok::Colon)?;
        let source = self.ident("a module name")?;
        self.expect(Tok::Arrow)?;
        let target = self.ident("a module name")?;
        self.expect(Tok::Eq)?;
        let expr = match self.peek() {
            Some(Tok::LBracket) => MorphismExpr::Images(self.matrix()?),
            Some(Tok::Ident(s)) if s == "identity" => {
                self.pos += 1;
                MorphismExpr::Identity
            }
            Some(Tok::Ident(s)) if s == "zero" => {
                self.pos += 1;
                MorphismExpr::Zero
            }
            _ => return Err(self.unexpected("a matrix, `identity` or `zero`")),
        };
        Ok(DeclKind::Morphism {
            name,
            source,
            target,
            expr,
        })
    }

    fn block_items(&mut self, mut item: impl FnMut(&mut Self) -> PResult<()>) -> PResult<()> {
        self.expect(Tok::LBrace)?;
        loop {
            self.skip_separators();
            if self.eat(&Tok::RBrace) {
                return Ok(());
            }
            item(self)?;
            if !matches!(self.peek(), Some(Tok::Newline) | Some(Tok::Semi) | Some(Tok::RBrace)) {
                return Err(self.unexpected("`;`, a new line or `}`"));
            }
        }
    }

    fn category(&mut self) -> PResult<DeclKind> {
        let name = self.ident("a category name")?;
        self.expect(Tok::Eq)?;
        if self.peek() != Some(&Tok::LBrace) {
            self.keyword("standard")?;
            return Ok(DeclKind::Category {
                name,
                expr: CategoryExpr::Standard(self.ident("a standard category")?),
            });
        }
        let mut objects = Vec::new();
        let mut arrows = Vec::new();
        let mut compositions = Vec::new();
        self.block_items(|p| {
            let head = p.ident("`objects`, `arrow` or `compose`")?;
            match head.text.as_str() {
                "objects" => loop {
                    objects.push(p.label("an object label")?);
                    if !p.eat(&Tok::Comma) {
                        return Ok(());
                    }
                },
                "arrow" => {
                    let label = p.label("a morphism label")?;
                    p.expect(Tok::Colon)?;
                    let s = p.label("an object label")?;
                    p.expect(Tok::Arrow)?;
                    let t = p.label("an object label")?;
                    arrows.push((label, s, t));
                    Ok(())
                }
                "compose" => {
                    let g = p.label("a morphism label")?;
                    let f = p.label("a morphism label")?;
                    p.expect(Tok::Eq)?;
                    let h = p.label("a morphism label")?;
                    compositions.push((g, f, h));
                    Ok(())
                }
                other => Err(Diagnostic::new(
                    head.span(),
                    format!("unknown category item `{}`", other),
                )),
            }
        })?;
        Ok(DeclKind::Category {
            name,
            expr: CategoryExpr::Explicit {
                objects,
                arrows,
                compositions,
            },
        })
    }

    fn bindings(&mut self) -> PResult<Vec<(Ident, Ident)>> {
        let mut out = Vec::new();
        self.block_items(|p| {
            let label = p.label("a label")?;
            p.expect(Tok::Eq)?;
            out.push((label, p.ident("a name")?));
            Ok(())
        })?;
        Ok(out)
    }

    fn diagram(&mut self) -> PResult<DeclKind> {
        let name = self.ident("a diagram name")?;
        self.keyword("over")?;
        let category = self.ident("a category name")?;
        let bindings = self.bindings()?;
        Ok(DeclKind::Diagram {
            name,
            category,
            bindings,
        })
    }

    fn diagmor(&mut self) -> PResult<DeclKind> {
        let name = self.ident("a name")?;
        self.expect(Tok::Colon)?;
        let source = self.ident("a diagram name")?;
        self.expect(Tok::Arrow)?;
        let target = self.ident("a diagram name")?;
        let components = self.bindings()?;
        Ok(DeclKind::DiagMor {
            name,
            source,
            target,
            components,
        })
    }

    fn functor(&mut self) -> PResult<FunctorExpr> {
        let head = self.ident("a functor")?;
        if self.peek() != Some(&Tok::LParen) {
            return Ok(FunctorExpr::Named(head));
        }
        self.pos += 1;
        self.nest()?;
        let expr = match head.text.as_str() {
            "tensor" => FunctorExpr::Tensor(self.ident("a module name")?),
            "reduce" => FunctorExpr::Reduce(self.int("a prime")?),
            "augmentation" => FunctorExpr::Augmentation(self.ident("a ring name")?),
            "identity" => FunctorExpr::Identity(self.ident("a ring name")?),
            "quotient" => {
                let from = self.ident("a ring name")?;
                self.expect(Tok::Comma)?;
                let to = self.ident("a ring name")?;
                self.expect(Tok::Comma)?;
                FunctorExpr::Quotient(from, to, self.int_list()?)
            }
            "compose" => {
                let outer = self.functor()?;
                self.expect(Tok::Comma)?;
                let inner = self.functor()?;
                FunctorExpr::Compose(Box::new(outer), Box::new(inner))
            }
            other => return Err(Diagnostic::new(head.span(), format!("unknown functor `{}`", other))),
        };
        self.expect(Tok::RParen)?;
        self.depth -= 1;
        Ok(expr)
    }

    fn task(&mut self) -> PResult<TaskDecl> {
        let name = match (self.peek(), self.peek_at(1)) {
            (Some(Tok::Ident(_)), Some(Tok::Eq)) => {
                let n = self.ident("a task name")?;
                self.pos += 1;
                Some(n)
            }
            _ => None,
        };
        let k = self.ident("a task kind")?;
        let kind = TaskKind::from_name(&k.text)
            .ok_or_else(|| Diagnostic::new(k.span(), format!("unknown task kind `{}`", k.text)))?;
        let mut args = Vec::new();
        while !self.at_separator() {
            let key = self.ident("an argument name")?;
            self.expect(Tok::Eq)?;
            args.push(Arg {
                key,
                value: self.value()?,
            });
        }
        Ok(TaskDecl { name, kind, args })
    }

    fn value(&mut self) -> PResult<Value> {
        match self.peek() {
            Some(&Tok::Int(n)) => {
                self.pos += 1;
                Ok(Value::Int(n))
            }
            Some(Tok::LBracket) => Ok(Value::List(self.list(|p| p.value())?)),
            Some(Tok::Ident(_)) if self.peek_at(1) == Some(&Tok::LParen) => Ok(Value::Functor(self.functor()?)),
            Some(Tok::Ident(_)) => Ok(Value::Name(self.ident("a value")?)),
            _ => Err(self.unexpected("a value")),
        }
    }
}

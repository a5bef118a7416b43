//! Elaboration: turns a resolved document into objects of the core library,
//! running every validator on the way.

use std::collections::HashMap;
use std::sync::Arc;

use funcat_core::diagram::DiagramCat;
use funcat_core::functor::FunctorSpec;
use funcat_core::homology::{MorphismOfSes, Ses};
use funcat_core::module::{Coords, RingMap};
use funcat_core::smallcat::CatSpec;
use funcat_core::{AbelianCategory, DiagMor, Diagram, FinCat, ModCat, ModMor, Module, Ring};
use num_bigint::BigInt;

use crate::ast::*;
use crate::diag::{Diagnostic, Span};
use crate::limits::{self, is_prime};
use crate::resolve::{resolve, task_label, task_spec, TaskSpec};

/// A declared module with the free module its declaration is written over.
#[derive(Clone, Debug)]
pub struct ModuleValue {
    pub ring: String,
    pub module: Module,
    /// Epimorphism from the free module on the declared generators.
    pub cover: ModMor,
}

#[derive(Clone)]
pub struct DiagramValue {
    pub cat: DiagramCat<ModCat>,
    pub diagram: Diagram<ModCat>,
}

#[derive(Clone)]
pub enum SeqValue {
    Module(Ses<ModCat>),
    Diagram(DiagramCat<ModCat>, Ses<DiagramCat<ModCat>>),
}

#[derive(Clone)]
pub enum SeqMorValue {
    Module(MorphismOfSes<ModCat>),
    Diagram(DiagramCat<ModCat>, MorphismOfSes<DiagramCat<ModCat>>),
}

#[derive(Clone, Debug)]
pub struct TaskEntry {
    pub name: String,
    pub kind: TaskKind,
    pub spec: TaskSpec,
    pub span: Span,
}

/// Everything a document declares, built and validated.
#[derive(Default)]
pub struct Workbench {
    pub rings: HashMap<String, Ring>,
    pub modules: HashMap<String, ModuleValue>,
    pub morphisms: HashMap<String, ModMor>,
    pub categories: HashMap<String, Arc<FinCat>>,
    pub diagrams: HashMap<String, DiagramValue>,
    pub diagmors: HashMap<String, (DiagramCat<ModCat>, DiagMor<ModCat>)>,
    pub functors: HashMap<String, FunctorSpec>,
    pub sequences: HashMap<String, SeqValue>,
    pub seqmors: HashMap<String, SeqMorValue>,
    pub tasks: Vec<TaskEntry>,
    /// Declared names in order, with their keyword.
    pub order: Vec<(String, &'static str)>,
}

/// Why a declaration was not built.
enum Fail {
    Diag(Diagnostic),
    /// It depends on a declaration that already failed.
    Skip,
}

type EResult<T> = Result<T, Fail>;

fn at(span: Span) -> impl Fn(funcat_core::Error) -> Fail {
    move |e| Fail::Diag(Diagnostic::new(span, e.to_string()))
}

fn fail<T>(span: Span, msg: impl Into<String>) -> EResult<T> {
    Err(Fail::Diag(Diagnostic::new(span, msg)))
}

fn get<'a, T>(map: &'a HashMap<String, T>, id: &Ident) -> EResult<&'a T> {
    map.get(&id.text).ok_or(Fail::Skip)
}

/// Resolves and builds the whole document.
pub fn elaborate(doc: &Doc) -> Result<Workbench, Vec<Diagnostic>> {
    let table = resolve(doc)?;
    let mut wb = Workbench::default();
    let mut diags = Vec::new();
    for (k, d) in doc.decls.iter().enumerate() {
        if let Err(Fail::Diag(e)) = wb.declare(k, d, &table) {
            diags.push(e);
        }
    }
    if diags.is_empty() {
        Ok(wb)
    } else {
        Err(diags)
    }
}

fn check_prime(p: i64, span: Span) -> EResult<u64> {
    if p > limits::MAX_PRIME || !is_prime(p) {
        return fail(span, format!("{} is not a prime up to {}", p, limits::MAX_PRIME));
    }
    Ok(p as u64)
}

fn check_order(n: i64, span: Span) -> EResult<usize> {
    if !(1..=limits::MAX_GROUP_ORDER).contains(&n) {
        return fail(span, format!("group order must be in 1..={}", limits::MAX_GROUP_ORDER));
    }
    Ok(n as usize)
}

fn check_entries(rows: &[Vec<i64>], span: Span) -> EResult<()> {
    if rows.iter().flatten().any(|x| x.abs() > limits::MAX_ENTRY) {
        return fail(span, format!("matrix entries must be at most {} in absolute value", limits::MAX_ENTRY));
    }
    Ok(())
}

fn check_rank(n: i64, span: Span) -> EResult<usize> {
    if !(0..=limits::MAX_GENERATORS as i64).contains(&n) {
        return fail(span, format!("rank must be in 0..={}", limits::MAX_GENERATORS));
    }
    Ok(n as usize)
}

fn ring_from(expr: &RingExpr, span: Span) -> EResult<Ring> {
    let at = at(span);
    match expr {
        RingExpr::Integers => Ok(Ring::Integers),
        RingExpr::Field(p) => Ring::prime_field(check_prime(*p, span)?).map_err(at),
        RingExpr::Cyclic(p, n) => {
            let p = check_prime(*p, span)?;
            Ring::cyclic_group(p, check_order(*n, span)?).map_err(at)
        }
        RingExpr::Abelian(p, orders) => {
            let p = check_prime(*p, span)?;
            if orders.is_empty() {
                return fail(span, "an abelian group needs at least one cyclic factor");
            }
            let mut total = 1i64;
            let mut os = Vec::new();
            for &o in orders {
                os.push(check_order(o, span)?);
                total = total.saturating_mul(o);
            }
            check_order(total, span)?;
            Ring::abelian_group(p, &os).map_err(at)
        }
        RingExpr::Group(p, table) => {
            let p = check_prime(*p, span)?;
            let n = check_order(table.len() as i64, span)?;
            let mut t = Vec::new();
            for row in table {
                if row.len() != n || row.iter().any(|&x| x < 0 || x >= n as i64) {
                    return fail(span, "group table must be square with entries in 0..order");
                }
                t.push(row.iter().map(|&x| x as usize).collect::<Vec<_>>());
            }
            Ring::group_algebra(p, &t).map_err(at)
        }
    }
}

/// Coordinates of one element of `R^n`: `n` integers over `Z`, and
/// `n · dim R` entries (generator-major) over an algebra.
fn coords(ring: &Ring, row: &[i64]) -> Coords {
    match ring.as_algebra() {
        None => Coords::Int(row.iter().map(|&x| BigInt::from(x)).collect()),
        Some(a) => {
            let p = a.prime() as i64;
            Coords::Fp(row.iter().map(|&x| x.rem_euclid(p) as u64).collect())
        }
    }
}

fn coord_len(ring: &Ring, gens: usize) -> usize {
    gens * ring.as_algebra().map_or(1, |a| a.dim())
}

impl Workbench {
    fn declare(&mut self, index: usize, d: &Decl, table: &crate::resolve::Table) -> EResult<()> {
        let span = d.span();
        let at = at(span);
        match &d.kind {
            DeclKind::Ring { name, expr } => {
                let r = ring_from(expr, span)?;
                self.rings.insert(name.text.clone(), r);
            }
            DeclKind::Module { name, ring, expr } => {
                let r = get(&self.rings, ring)?.clone();
                let (module, cover) = self.module(&r, expr, span)?;
                self.modules.insert(
                    name.text.clone(),
                    ModuleValue {
                        ring: ring.text.clone(),
                        module,
                        cover,
                    },
                );
            }
            DeclKind::Morphism {
                name,
                source,
                target,
                expr,
            } => {
                let s = get(&self.modules, source)?;
                let t = get(&self.modules, target)?;
                let f = morphism(s, t, expr, span)?;
                self.morphisms.insert(name.text.clone(), f);
            }
            DeclKind::Category { name, expr } => {
                let c = category(expr, span)?;
                self.categories.insert(name.text.clone(), Arc::new(c));
            }
            DeclKind::Diagram {
                name,
                category,
                bindings,
            } => {
                let c = get(&self.categories, category)?.clone();
                let v = self.diagram(c, bindings, span)?;
                self.diagrams.insert(name.text.clone(), v);
            }
            DeclKind::DiagMor {
                name,
                source,
                target,
                components,
            } => {
                let s = get(&self.diagrams, source)?;
                let t = get(&self.diagrams, target)?;
                if s.cat.index() != t.cat.index() || s.cat.base().ring() != t.cat.base().ring() {
                    return fail(span, "source and target are diagrams over different categories or rings");
                }
                let index = s.cat.index().clone();
                let mut comps: Vec<Option<ModMor>> = vec![None; index.num_objects()];
                for (label, v) in components {
                    let i = index
                        .object_index(&label.text)
                        .map_err(|_| Fail::Diag(Diagnostic::new(label.span(), format!("no object `{}`", label.text))))?;
                    if comps[i].is_some() {
                        return fail(label.span(), format!("object `{}` bound twice", label.text));
                    }
                    comps[i] = Some(get(&self.morphisms, v)?.clone());
                }
                let comps = comps
                    .into_iter()
                    .enumerate()
                    .map(|(i, c)| c.ok_or(i))
                    .collect::<Result<Vec<_>, _>>()
                    .or_else(|i| fail(span, format!("no component for object `{}`", index.objects()[i])))?;
                let m = s.cat.morphism(&s.diagram, &t.diagram, comps).map_err(at)?;
                self.diagmors.insert(name.text.clone(), (s.cat.clone(), m));
            }
            DeclKind::Functor { name, expr } => {
                let f = self.functor_inner(expr, span)?;
                self.functors.insert(name.text.clone(), f);
            }
            DeclKind::Ses { name, mono, epi } => {
                let v = if let Some(i) = self.morphisms.get(&mono.text) {
                    let p = get(&self.morphisms, epi)?;
                    let cat = ModCat::new(i.source().ring());
                    check_same_ring(i, p, span)?;
                    SeqValue::Module(Ses::new(&cat, i.clone(), p.clone()).map_err(at)?)
                } else {
                    let (cat, i) = get(&self.diagmors, mono)?;
                    let (cat2, p) = get(&self.diagmors, epi)?;
                    if cat.index() != cat2.index() || cat.base().ring() != cat2.base().ring() {
                        return fail(span, "maps live in different diagram categories");
                    }
                    SeqValue::Diagram(cat.clone(), Ses::new(cat, i.clone(), p.clone()).map_err(at)?)
                };
                self.sequences.insert(name.text.clone(), v);
            }
            DeclKind::SesMor {
                name,
                source,
                target,
                maps,
            } => {
                let v = match (get(&self.sequences, source)?, get(&self.sequences, target)?) {
                    (SeqValue::Module(s), SeqValue::Module(t)) => {
                        let ms = maps
                            .iter()
                            .map(|m| self.morphisms.get(&m.text).cloned())
                            .collect::<Option<Vec<_>>>()
                            .ok_or_else(|| Fail::Diag(Diagnostic::new(span, "module sequences need module morphisms")))?;
                        check_same_ring(&ms[0], &s.i, span)?;
                        check_same_ring(&ms[0], &t.i, span)?;
                        check_same_ring(&ms[1], &ms[0], span)?;
                        check_same_ring(&ms[2], &ms[0], span)?;
                        let cat = ModCat::new(s.i.source().ring());
                        let [a, b, c] = [ms[0].clone(), ms[1].clone(), ms[2].clone()];
                        SeqMorValue::Module(MorphismOfSes::new(&cat, s.clone(), t.clone(), a, b, c).map_err(at)?)
                    }
                    (SeqValue::Diagram(cs, s), SeqValue::Diagram(ct, t)) => {
                        if cs.index() != ct.index() || cs.base().ring() != ct.base().ring() {
                            return fail(span, "sequences live in different diagram categories");
                        }
                        let ms = maps
                            .iter()
                            .map(|m| self.diagmors.get(&m.text).map(|(_, f)| f.clone()))
                            .collect::<Option<Vec<_>>>()
                            .ok_or_else(|| Fail::Diag(Diagnostic::new(span, "diagram sequences need diagram morphisms")))?;
                        let [a, b, c] = [ms[0].clone(), ms[1].clone(), ms[2].clone()];
                        SeqMorValue::Diagram(cs.clone(), MorphismOfSes::new(cs, s.clone(), t.clone(), a, b, c).map_err(at)?)
                    }
                    _ => return fail(span, "cannot map between module and diagram sequences"),
                };
                self.seqmors.insert(name.text.clone(), v);
            }
            DeclKind::Task(t) => {
                let spec = task_spec(t, span, table).map_err(|mut e| Fail::Diag(e.remove(0)))?;
                self.tasks.push(TaskEntry {
                    name: task_label(index, t),
                    kind: t.kind,
                    spec,
                    span,
                });
                return Ok(());
            }
        }
        let name = d.name().expect("named declaration");
        self.order.push((name.text.clone(), d.keyword()));
        Ok(())
    }

    fn module(&self, ring: &Ring, expr: &ModuleExpr, span: Span) -> EResult<(Module, ModMor)> {
        let cat = ModCat::new(ring.clone());
        let at = at(span);
        let over_z = |what: &str| -> EResult<()> {
            if ring.as_algebra().is_some() {
                return fail(span, format!("`{}` modules are only available over the integers", what));
            }
            Ok(())
        };
        let relations: Vec<Vec<i64>> = match expr {
            ModuleExpr::Free(n) => {
                let m = Module::free(ring, check_rank(*n, span)?);
                return Ok((m.clone(), cat.identity(&m)));
            }
            ModuleExpr::Zero => {
                let m = Module::zero(ring);
                return Ok((m.clone(), cat.identity(&m)));
            }
            ModuleExpr::Trivial => {
                let m = Module::trivial(ring).map_err(&at)?;
                let cover = cat.free_cover(&m).map_err(&at)?;
                return Ok((m, cover));
            }
            ModuleExpr::Cyclic(n) => {
                over_z("cyclic")?;
                vec![vec![*n]]
            }
            ModuleExpr::Factors(fs) => {
                over_z("factors")?;
                if fs.is_empty() {
                    return fail(span, "`factors` needs at least one factor");
                }
                (0..fs.len())
                    .map(|i| (0..fs.len()).map(|j| if i == j { fs[i] } else { 0 }).collect())
                    .collect()
            }
            ModuleExpr::Coker(rows) => rows.clone(),
        };
        check_entries(&relations, span)?;
        if relations.is_empty() || relations.len() > limits::MAX_RELATIONS {
            return fail(span, format!("a presentation needs 1 to {} relations", limits::MAX_RELATIONS));
        }
        let width = relations[0].len();
        if relations.iter().any(|r| r.len() != width) {
            return fail(span, "relations must all have the same length");
        }
        let step = coord_len(ring, 1);
        let gens = width / step;
        if width == 0 || width % step != 0 || gens > limits::MAX_GENERATORS {
            return fail(
                span,
                format!(
                    "relations must have {} entries per generator and at most {} generators",
                    step,
                    limits::MAX_GENERATORS
                ),
            );
        }
        let free = Module::free(ring, gens);
        let rel_source = Module::free(ring, relations.len());
        let images: Vec<Coords> = relations.iter().map(|r| coords(ring, r)).collect();
        let rel = cat.map_from_images(&rel_source, &free, &images).map_err(&at)?;
        let (m, q) = cat.cokernel(&rel).map_err(&at)?;
        Ok((m, q))
    }

    fn diagram(&self, index: Arc<FinCat>, bindings: &[(Ident, Ident)], span: Span) -> EResult<DiagramValue> {
        let mut objects: Vec<Option<(ModuleValue, &Ident)>> = vec![None; index.num_objects()];
        let mut maps: Vec<Option<ModMor>> = vec![None; index.num_morphisms()];
        for (label, v) in bindings {
            let dup = || fail(label.span(), format!("`{}` bound twice", label.text));
            if let Ok(i) = index.object_index(&label.text) {
                let m = self.modules.get(&v.text).ok_or_else(|| {
                    if self.morphisms.contains_key(&v.text) {
                        Fail::Diag(Diagnostic::new(v.span(), format!("object `{}` needs a module", label.text)))
                    } else {
                        Fail::Skip
                    }
                })?;
                if objects[i].is_some() {
                    return dup();
                }
                objects[i] = Some((m.clone(), v));
            } else if let Ok(k) = index.morphism_index(&label.text) {
                if index.is_identity(k) {
                    return fail(label.span(), format!("`{}` is an identity and is not bound", label.text));
                }
                let f = self.morphisms.get(&v.text).ok_or_else(|| {
                    if self.modules.contains_key(&v.text) {
                        Fail::Diag(Diagnostic::new(v.span(), format!("morphism `{}` needs a module morphism", label.text)))
                    } else {
                        Fail::Skip
                    }
                })?;
                if maps[k].is_some() {
                    return dup();
                }
                maps[k] = Some(f.clone());
            } else {
                return fail(label.span(), format!("the category has no object or morphism `{}`", label.text));
            }
        }
        let mut objs = Vec::new();
        for (i, o) in objects.into_iter().enumerate() {
            match o {
                Some((m, _)) => objs.push(m),
                None => return fail(span, format!("object `{}` is not bound", index.objects()[i])),
            }
        }
        let Some(first) = objs.first() else {
            return fail(span, "diagrams over an empty category are not supported");
        };
        let ring = first.module.ring();
        if objs.iter().any(|m| m.module.ring() != ring) {
            return fail(span, "all objects of a diagram must be modules over one ring");
        }
        let mut non_identity = Vec::new();
        for (k, m) in maps.into_iter().enumerate() {
            if index.is_identity(k) {
                continue;
            }
            match m {
                Some(f) => non_identity.push(f),
                None => return fail(span, format!("morphism `{}` is not bound", index.morphisms()[k].label)),
            }
        }
        let cat = DiagramCat::with_index(ModCat::new(ring), index);
        let diagram = cat
            .diagram_from(objs.into_iter().map(|m| m.module).collect(), non_identity)
            .map_err(at(span))?;
        Ok(DiagramValue { cat, diagram })
    }

    /// Builds a functor expression, from a declaration or a task argument.
    pub fn functor(&self, e: &FunctorExpr, span: Span) -> Result<FunctorSpec, Diagnostic> {
        match self.functor_inner(e, span) {
            Ok(f) => Ok(f),
            Err(Fail::Diag(d)) => Err(d),
            Err(Fail::Skip) => Err(Diagnostic::new(span, "functor refers to a declaration that failed")),
        }
    }

    fn functor_inner(&self, e: &FunctorExpr, span: Span) -> EResult<FunctorSpec> {
        let at = at(span);
        let algebra = |r: &Ident| -> EResult<Arc<funcat_core::module::Algebra>> {
            get(&self.rings, r)?
                .as_algebra()
                .cloned()
                .ok_or_else(|| Fail::Diag(Diagnostic::new(r.span(), format!("`{}` is not a group algebra", r.text))))
        };
        Ok(match e {
            FunctorExpr::Named(n) => get(&self.functors, n)?.clone(),
            FunctorExpr::Tensor(m) => FunctorSpec::tensor_with(&get(&self.modules, m)?.module).map_err(at)?,
            FunctorExpr::Reduce(p) => FunctorSpec::base_change(RingMap::reduction(check_prime(*p, span)?).map_err(at)?),
            FunctorExpr::Identity(r) => FunctorSpec::base_change(RingMap::identity(get(&self.rings, r)?)),
            FunctorExpr::Augmentation(r) => {
                let a = algebra(r)?;
                FunctorSpec::base_change(RingMap::augmentation(&a).map_err(at)?)
            }
            FunctorExpr::Quotient(r, s, images) => {
                let (a, b) = (algebra(r)?, algebra(s)?);
                if images.len() != a.dim() || images.iter().any(|&x| x < 0 || x as usize >= b.dim()) {
                    return fail(
                        span,
                        format!("`quotient` needs {} images in 0..{}", a.dim(), b.dim()),
                    );
                }
                let map: Vec<usize> = images.iter().map(|&x| x as usize).collect();
                FunctorSpec::base_change(RingMap::group_hom(&a, &b, &map).map_err(at)?)
            }
            FunctorExpr::Compose(g, f) => {
                let g = self.functor_inner(g, span)?;
                let f = self.functor_inner(f, span)?;
                FunctorSpec::compose(g, f).map_err(at)?
            }
        })
    }
}

fn check_same_ring(a: &ModMor, b: &ModMor, span: Span) -> EResult<()> {
    if a.source().ring() != b.source().ring() {
        return fail(span, "maps are over different rings");
    }
    Ok(())
}

fn morphism(s: &ModuleValue, t: &ModuleValue, expr: &MorphismExpr, span: Span) -> EResult<ModMor> {
    let ring = s.module.ring();
    if t.module.ring() != ring {
        return fail(span, "source and target are modules over different rings");
    }
    let cat = ModCat::new(ring.clone());
    let at = at(span);
    match expr {
        MorphismExpr::Identity => {
            if s.module != t.module {
                return fail(span, "`identity` needs the same source and target");
            }
            Ok(cat.identity(&s.module))
        }
        MorphismExpr::Zero => Ok(cat.zero_morphism(&s.module, &t.module)),
        MorphismExpr::Images(rows) => {
            check_entries(rows, span)?;
            let fs = cat.source(&s.cover);
            let ft = cat.source(&t.cover);
            let width = coord_len(&ring, ft.gens_count());
            if rows.len() != fs.gens_count() || rows.iter().any(|r| r.len() != width) {
                return fail(
                    span,
                    format!(
                        "expected {} rows of {} entries, one image per generator of the source",
                        fs.gens_count(),
                        width
                    ),
                );
            }
            let images: Vec<Coords> = rows.iter().map(|r| coords(&ring, r)).collect();
            let u0 = cat.map_from_images(&fs, &ft, &images).map_err(&at)?;
            let u = cat.compose(&t.cover, &u0).map_err(&at)?;
            cat.factor_through_epi(&s.cover, &u)
                .map_err(&at)?
                .ok_or_else(|| Fail::Diag(Diagnostic::new(span, "the images do not respect the relations of the source")))
        }
    }
}

fn category(expr: &CategoryExpr, span: Span) -> EResult<FinCat> {
    let at = at(span);
    match expr {
        CategoryExpr::Standard(n) => FinCat::standard(&n.text)
            .map_err(|_| Fail::Diag(Diagnostic::new(n.span(), format!("unknown standard category `{}`", n.text)))),
        CategoryExpr::Explicit {
            objects,
            arrows,
            compositions,
        } => {
            if objects.len() > limits::MAX_OBJECTS || arrows.len() > limits::MAX_ARROWS {
                return fail(
                    span,
                    format!(
                        "categories are limited to {} objects and {} arrows",
                        limits::MAX_OBJECTS,
                        limits::MAX_ARROWS
                    ),
                );
            }
            let spec = CatSpec {
                objects: objects.iter().map(|o| o.text.clone()).collect(),
                morphisms: arrows
                    .iter()
                    .map(|(l, s, t)| (l.text.clone(), s.text.clone(), t.text.clone()))
                    .collect(),
                compositions: compositions
                    .iter()
                    .map(|(g, f, h)| (g.text.clone(), f.text.clone(), h.text.clone()))
                    .collect(),
            };
            FinCat::new(&spec).map_err(at)
        }
    }
}

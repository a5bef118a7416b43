//! The functor category `C^I` for a finite index category `I`: diagrams,
//! natural transformations, and componentwise abelian structure.
//!
//! `DiagramCat<C>` is itself an `AbelianCategory`, so every generic
//! construction (homology, resolutions, connecting maps) runs unchanged on
//! diagrams, and `DiagramCat<DiagramCat<C>>` models `(C^I)^J`.

use std::fmt;
use std::sync::Arc;

use crate::abelian::{AbelianCategory, Biproduct};
use crate::error::{Error, Result};
use crate::smallcat::FinCat;

/// Bookkeeping for a free diagram `⊕_s Free(i_s, P_s)`, where
/// `Free(i, P)(j) = ⊕_{m : i → j} P`.
pub struct FreeData<C: AbelianCategory> {
    /// `(i_s, P_s)`.
    pub summands: Vec<(usize, C::Obj)>,
    /// `ι_s : P_s → F(i_s)`, the inclusion of the `id_{i_s}` summand.
    pub gens: Vec<C::Mor>,
    /// Per object `j`: `(s, m, π)` with `π : F(j) → P_s` the projection onto
    /// the summand indexed by `m : i_s → j`.
    pub proj: Vec<Vec<(usize, usize, C::Mor)>>,
}

struct DiagramData<C: AbelianCategory> {
    index: Arc<FinCat>,
    objects: Vec<C::Obj>,
    maps: Vec<C::Mor>,
    free: Option<Arc<FreeData<C>>>,
}

/// An object of `C^I`: one object per object of `I` and one map per
/// morphism of `I` (identities included).
pub struct Diagram<C: AbelianCategory>(Arc<DiagramData<C>>);

impl<C: AbelianCategory> Clone for Diagram<C> {
    fn clone(&self) -> Self {
        Diagram(self.0.clone())
    }
}

impl<C: AbelianCategory> PartialEq for Diagram<C> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.index == other.0.index
                && self.0.objects == other.0.objects
                && self.0.maps == other.0.maps)
    }
}

impl<C: AbelianCategory> fmt::Debug for Diagram<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.0.index.objects().iter().zip(&self.0.objects))
            .finish()
    }
}

impl<C: AbelianCategory> Diagram<C> {
    pub fn index(&self) -> &Arc<FinCat> {
        &self.0.index
    }

    pub fn objects(&self) -> &[C::Obj] {
        &self.0.objects
    }

    pub fn maps(&self) -> &[C::Mor] {
        &self.0.maps
    }

    pub fn object(&self, i: usize) -> &C::Obj {
        &self.0.objects[i]
    }

    pub fn map(&self, m: usize) -> &C::Mor {
        &self.0.maps[m]
    }

    pub fn free_data(&self) -> Option<&Arc<FreeData<C>>> {
        self.0.free.as_ref()
    }
}

/// A morphism of `C^I`: one component per object of `I`.
pub struct DiagMor<C: AbelianCategory> {
    source: Diagram<C>,
    target: Diagram<C>,
    components: Vec<C::Mor>,
}

impl<C: AbelianCategory> Clone for DiagMor<C> {
    fn clone(&self) -> Self {
        DiagMor {
            source: self.source.clone(),
            target: self.target.clone(),
            components: self.components.clone(),
        }
    }
}

impl<C: AbelianCategory> PartialEq for DiagMor<C> {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.components == other.components
    }
}

impl<C: AbelianCategory> fmt::Debug for DiagMor<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.components).finish()
    }
}

impl<C: AbelianCategory> DiagMor<C> {
    pub fn source(&self) -> &Diagram<C> {
        &self.source
    }

    pub fn target(&self) -> &Diagram<C> {
        &self.target
    }

    pub fn components(&self) -> &[C::Mor] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &C::Mor {
        &self.components[i]
    }
}

/// Componentwise and intrinsic exactness verdicts for a composable pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessReport {
    pub intrinsic: bool,
    pub componentwise: bool,
    /// Labels of objects where the component sequence is not exact.
    pub failing: Vec<String>,
}

impl ExactnessReport {
    pub fn agree(&self) -> bool {
        self.intrinsic == self.componentwise
    }
}

#[derive(Clone)]
pub struct DiagramCat<C: AbelianCategory> {
    base: C,
    index: Arc<FinCat>,
}

impl<C: AbelianCategory + fmt::Debug> fmt::Debug for DiagramCat<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiagramCat({:?}, {:?})", self.base, self.index)
    }
}

impl<C: AbelianCategory> DiagramCat<C> {
    pub fn new(base: C, index: FinCat) -> Self {
        DiagramCat {
            base,
            index: Arc::new(index),
        }
    }

    pub fn with_index(base: C, index: Arc<FinCat>) -> Self {
        DiagramCat { base, index }
    }

    pub fn base(&self) -> &C {
        &self.base
    }

    pub fn index(&self) -> &Arc<FinCat> {
        &self.index
    }

    fn make(&self, objects: Vec<C::Obj>, maps: Vec<C::Mor>, free: Option<Arc<FreeData<C>>>) -> Diagram<C> {
        Diagram(Arc::new(DiagramData {
            index: self.index.clone(),
            objects,
            maps,
            free,
        }))
    }

    fn mor(&self, source: &Diagram<C>, target: &Diagram<C>, components: Vec<C::Mor>) -> DiagMor<C> {
        DiagMor {
            source: source.clone(),
            target: target.clone(),
            components,
        }
    }

    /// Reports the first failure of the diagram axioms, if any.
    pub fn check_diagram(&self, objects: &[C::Obj], maps: &[C::Mor]) -> Result<Option<String>> {
        let idx = &self.index;
        if objects.len() != idx.num_objects() || maps.len() != idx.num_morphisms() {
            return Ok(Some("wrong number of objects or maps".into()));
        }
        for (m, mor) in idx.morphisms().iter().enumerate() {
            let f = &maps[m];
            if self.base.source(f) != objects[mor.source] || self.base.target(f) != objects[mor.target] {
                return Ok(Some(format!("map for {} has the wrong source or target", mor.label)));
            }
            if idx.is_identity(m) && !self.base.equal(f, &self.base.identity(&objects[mor.source]))? {
                return Ok(Some(format!("{} is not sent to an identity", mor.label)));
            }
        }
        for g in 0..idx.num_morphisms() {
            for f in 0..idx.num_morphisms() {
                let Some(gf) = idx.compose(g, f) else { continue };
                if idx.is_identity(g) || idx.is_identity(f) {
                    continue;
                }
                let composite = self.base.compose(&maps[g], &maps[f])?;
                if !self.base.equal(&maps[gf], &composite)? {
                    let l = |m: usize| idx.morphisms()[m].label.clone();
                    return Ok(Some(format!(
                        "map for {} differs from the composite of {} and {}",
                        l(gf),
                        l(g),
                        l(f)
                    )));
                }
            }
        }
        Ok(None)
    }

    /// Checked constructor for a diagram.
    pub fn diagram(&self, objects: Vec<C::Obj>, maps: Vec<C::Mor>) -> Result<Diagram<C>> {
        if let Some(v) = self.check_diagram(&objects, &maps)? {
            return Err(Error::InvalidDiagram(v));
        }
        Ok(self.make(objects, maps, None))
    }

    /// Diagram from the maps of non-identity morphisms only, in index order;
    /// identities are filled in.
    pub fn diagram_from(&self, objects: Vec<C::Obj>, mut non_identity: Vec<C::Mor>) -> Result<Diagram<C>> {
        let mut maps = Vec::new();
        non_identity.reverse();
        for m in 0..self.index.num_morphisms() {
            if self.index.is_identity(m) {
                maps.push(self.base.identity(&objects[self.index.source(m)]));
            } else {
                maps.push(
                    non_identity
                        .pop()
                        .ok_or_else(|| Error::InvalidDiagram("too few maps".into()))?,
                );
            }
        }
        if !non_identity.is_empty() {
            return Err(Error::InvalidDiagram("too many maps".into()));
        }
        self.diagram(objects, maps)
    }

    /// Reports the first failing naturality square, if any.
    pub fn check_morphism(&self, source: &Diagram<C>, target: &Diagram<C>, components: &[C::Mor]) -> Result<Option<String>> {
        let idx = &self.index;
        if components.len() != idx.num_objects() {
            return Ok(Some("wrong number of components".into()));
        }
        for (i, f) in components.iter().enumerate() {
            if self.base.source(f) != source.0.objects[i] || self.base.target(f) != target.0.objects[i] {
                return Ok(Some(format!(
                    "component at {} has the wrong source or target",
                    idx.objects()[i]
                )));
            }
        }
        for (m, mor) in idx.morphisms().iter().enumerate() {
            if idx.is_identity(m) {
                continue;
            }
            let lhs = self.base.compose(&target.0.maps[m], &components[mor.source])?;
            let rhs = self.base.compose(&components[mor.target], &source.0.maps[m])?;
            if !self.base.equal(&lhs, &rhs)? {
                return Ok(Some(format!("naturality square for {} does not commute", mor.label)));
            }
        }
        Ok(None)
    }

    pub fn morphism(&self, source: &Diagram<C>, target: &Diagram<C>, components: Vec<C::Mor>) -> Result<DiagMor<C>> {
        if let Some(v) = self.check_morphism(source, target, &components)? {
            return Err(Error::InvalidDiagram(v));
        }
        Ok(self.mor(source, target, components))
    }

    pub(crate) fn morphism_unchecked(&self, source: &Diagram<C>, target: &Diagram<C>, components: Vec<C::Mor>) -> DiagMor<C> {
        self.mor(source, target, components)
    }

    pub(crate) fn diagram_unchecked(&self, objects: Vec<C::Obj>, maps: Vec<C::Mor>) -> Diagram<C> {
        self.make(objects, maps, None)
    }

    /// All components `a`, all structure maps the identity.
    pub fn constant(&self, a: &C::Obj) -> Diagram<C> {
        let n = self.index.num_objects();
        let id = self.base.identity(a);
        self.make(vec![a.clone(); n], vec![id; self.index.num_morphisms()], None)
    }

    pub fn constant_morphism(&self, f: &C::Mor) -> DiagMor<C> {
        let s = self.constant(&self.base.source(f));
        let t = self.constant(&self.base.target(f));
        self.mor(&s, &t, vec![f.clone(); self.index.num_objects()])
    }

    pub fn projection(&self, d: &Diagram<C>, object: &str) -> Result<C::Obj> {
        Ok(d.0.objects[self.index.object_index(object)?].clone())
    }

    pub fn projection_mor(&self, f: &DiagMor<C>, object: &str) -> Result<C::Mor> {
        Ok(f.components[self.index.object_index(object)?].clone())
    }

    pub fn gamma(&self, d: &Diagram<C>, morphism: &str) -> Result<C::Mor> {
        Ok(d.0.maps[self.index.morphism_index(morphism)?].clone())
    }

    /// `Free(i, P)`: at `j` one copy of `P` per morphism `i → j`.
    pub fn free_diagram(&self, i: usize, p: &C::Obj) -> Result<Diagram<C>> {
        let idx = &self.index;
        let n = idx.num_objects();
        let homs: Vec<Vec<usize>> = (0..n).map(|j| idx.hom(i, j)).collect();
        let bps: Vec<Biproduct<C>> = homs
            .iter()
            .map(|h| self.base.biproduct(&vec![p.clone(); h.len()]))
            .collect::<Result<_>>()?;
        let mut maps = Vec::new();
        for (n_mor, mor) in idx.morphisms().iter().enumerate() {
            let (j, k) = (mor.source, mor.target);
            let parts = homs[j]
                .iter()
                .enumerate()
                .map(|(t, &m)| {
                    let nm = idx.compose(n_mor, m).expect("composable");
                    let pos = homs[k].iter().position(|&x| x == nm).expect("hom set");
                    self.base.compose(&bps[k].injections[pos], &bps[j].projections[t])
                })
                .collect::<Result<Vec<_>>>()?;
            maps.push(self.base.sum(&bps[j].object, &bps[k].object, &parts)?);
        }
        let id_pos = homs[i]
            .iter()
            .position(|&m| m == idx.identity(i))
            .expect("identity");
        let free = FreeData {
            summands: vec![(i, p.clone())],
            gens: vec![bps[i].injections[id_pos].clone()],
            proj: (0..n)
                .map(|j| {
                    homs[j]
                        .iter()
                        .enumerate()
                        .map(|(t, &m)| (0, m, bps[j].projections[t].clone()))
                        .collect()
                })
                .collect(),
        };
        let objects = bps.into_iter().map(|b| b.object).collect();
        Ok(self.make(objects, maps, Some(Arc::new(free))))
    }

    /// The unique morphism out of a free diagram with prescribed values
    /// `gens[s] : P_s → target(i_s)` on generators.
    pub fn map_from_free(&self, free: &Diagram<C>, target: &Diagram<C>, gens: &[C::Mor]) -> Result<DiagMor<C>> {
        let data = free
            .free_data()
            .ok_or_else(|| Error::NotProjective("diagram is not a free diagram".into()))?;
        if gens.len() != data.summands.len() {
            return Err(Error::DimensionMismatch("one map per free summand expected".into()));
        }
        let mut components = Vec::new();
        for j in 0..self.index.num_objects() {
            let parts = data.proj[j]
                .iter()
                .map(|(s, m, pi)| self.base.compose_all(&[&target.0.maps[*m], &gens[*s], pi]))
                .collect::<Result<Vec<_>>>()?;
            components.push(self.base.sum(&free.0.objects[j], &target.0.objects[j], &parts)?);
        }
        Ok(self.mor(free, target, components))
    }

    /// Sum of a list of parallel diagram morphisms.
    pub fn add_morphisms(&self, f: &DiagMor<C>, g: &DiagMor<C>) -> Result<DiagMor<C>> {
        self.add(f, g)
    }

    /// Exactness of `f` then `g`, decided both in `C^I` and objectwise.
    pub fn exactness(&self, f: &DiagMor<C>, g: &DiagMor<C>) -> Result<ExactnessReport> {
        let intrinsic = self.is_exact_at(f, g)?;
        let mut failing = Vec::new();
        for i in 0..self.index.num_objects() {
            if !self.base.is_exact_at(&f.components[i], &g.components[i])? {
                failing.push(self.index.objects()[i].clone());
            }
        }
        Ok(ExactnessReport {
            intrinsic,
            componentwise: failing.is_empty(),
            failing,
        })
    }

    /// `(f ∘ −)` on diagrams, but without the composability check; callers
    /// guarantee matching ends.
    fn componentwise(&self, f: &DiagMor<C>, g: &DiagMor<C>, op: impl Fn(&C::Mor, &C::Mor) -> Result<C::Mor>) -> Result<Vec<C::Mor>> {
        f.components
            .iter()
            .zip(&g.components)
            .map(|(a, b)| op(a, b))
            .collect()
    }
}

impl<C: AbelianCategory> AbelianCategory for DiagramCat<C> {
    type Obj = Diagram<C>;
    type Mor = DiagMor<C>;

    fn source(&self, f: &DiagMor<C>) -> Diagram<C> {
        f.source.clone()
    }

    fn target(&self, f: &DiagMor<C>) -> Diagram<C> {
        f.target.clone()
    }

    fn zero_object(&self) -> Diagram<C> {
        let z = self.base.zero_object();
        let n = self.index.num_objects();
        let free = FreeData {
            summands: vec![],
            gens: vec![],
            proj: vec![vec![]; n],
        };
        self.make(
            vec![z.clone(); n],
            vec![self.base.identity(&z); self.index.num_morphisms()],
            Some(Arc::new(free)),
        )
    }

    fn is_zero_object(&self, a: &Diagram<C>) -> bool {
        a.0.objects.iter().all(|o| self.base.is_zero_object(o))
    }

    fn identity(&self, a: &Diagram<C>) -> DiagMor<C> {
        let comps = a.0.objects.iter().map(|o| self.base.identity(o)).collect();
        self.mor(a, a, comps)
    }

    fn zero_morphism(&self, a: &Diagram<C>, b: &Diagram<C>) -> DiagMor<C> {
        let comps = a
            .0
            .objects
            .iter()
            .zip(&b.0.objects)
            .map(|(x, y)| self.base.zero_morphism(x, y))
            .collect();
        self.mor(a, b, comps)
    }

    fn compose(&self, g: &DiagMor<C>, f: &DiagMor<C>) -> Result<DiagMor<C>> {
        if f.target != g.source {
            return Err(Error::DimensionMismatch("diagram morphisms are not composable".into()));
        }
        let comps = self.componentwise(g, f, |a, b| self.base.compose(a, b))?;
        Ok(self.mor(&f.source, &g.target, comps))
    }

    fn add(&self, f: &DiagMor<C>, g: &DiagMor<C>) -> Result<DiagMor<C>> {
        if f.source != g.source || f.target != g.target {
            return Err(Error::DimensionMismatch("sum of non-parallel diagram morphisms".into()));
        }
        let comps = self.componentwise(f, g, |a, b| self.base.add(a, b))?;
        Ok(self.mor(&f.source, &f.target, comps))
    }

    fn negate(&self, f: &DiagMor<C>) -> DiagMor<C> {
        let comps = f.components.iter().map(|c| self.base.negate(c)).collect();
        self.mor(&f.source, &f.target, comps)
    }

    fn is_zero(&self, f: &DiagMor<C>) -> bool {
        f.components.iter().all(|c| self.base.is_zero(c))
    }

    fn kernel(&self, f: &DiagMor<C>) -> Result<(Diagram<C>, DiagMor<C>)> {
        let ks: Vec<(C::Obj, C::Mor)> = f
            .components
            .iter()
            .map(|c| self.base.kernel(c))
            .collect::<Result<_>>()?;
        let mut maps = Vec::new();
        for (m, mor) in self.index.morphisms().iter().enumerate() {
            let (i, j) = (mor.source, mor.target);
            let h = self.base.compose(&f.source.0.maps[m], &ks[i].1)?;
            let induced = self
                .base
                .factor_through_mono(&ks[j].1, &h)?
                .ok_or_else(|| Error::LiftFailed("structure map does not preserve kernels".into()))?;
            maps.push(induced);
        }
        let (objects, monos): (Vec<_>, Vec<_>) = ks.into_iter().unzip();
        let k = self.make(objects, maps, None);
        let mono = self.mor(&k, &f.source, monos);
        Ok((k, mono))
    }

    fn cokernel(&self, f: &DiagMor<C>) -> Result<(Diagram<C>, DiagMor<C>)> {
        let qs: Vec<(C::Obj, C::Mor)> = f
            .components
            .iter()
            .map(|c| self.base.cokernel(c))
            .collect::<Result<_>>()?;
        let mut maps = Vec::new();
        for (m, mor) in self.index.morphisms().iter().enumerate() {
            let (i, j) = (mor.source, mor.target);
            let h = self.base.compose(&qs[j].1, &f.target.0.maps[m])?;
            let induced = self
                .base
                .factor_through_epi(&qs[i].1, &h)?
                .ok_or_else(|| Error::LiftFailed("structure map does not preserve cokernels".into()))?;
            maps.push(induced);
        }
        let (objects, epis): (Vec<_>, Vec<_>) = qs.into_iter().unzip();
        let q = self.make(objects, maps, None);
        let epi = self.mor(&f.target, &q, epis);
        Ok((q, epi))
    }

    fn biproduct(&self, parts: &[Diagram<C>]) -> Result<Biproduct<Self>> {
        let n = self.index.num_objects();
        let bps: Vec<Biproduct<C>> = (0..n)
            .map(|j| {
                let objs: Vec<C::Obj> = parts.iter().map(|d| d.0.objects[j].clone()).collect();
                self.base.biproduct(&objs)
            })
            .collect::<Result<_>>()?;
        let mut maps = Vec::new();
        for (m, mor) in self.index.morphisms().iter().enumerate() {
            let (j, k) = (mor.source, mor.target);
            let terms = parts
                .iter()
                .enumerate()
                .map(|(r, d)| {
                    self.base
                        .compose_all(&[&bps[k].injections[r], &d.0.maps[m], &bps[j].projections[r]])
                })
                .collect::<Result<Vec<_>>>()?;
            maps.push(self.base.sum(&bps[j].object, &bps[k].object, &terms)?);
        }
        let free = if parts.iter().all(|d| d.0.free.is_some()) {
            let mut data = FreeData {
                summands: vec![],
                gens: vec![],
                proj: vec![vec![]; n],
            };
            for (r, d) in parts.iter().enumerate() {
                let fd = d.0.free.as_ref().expect("checked");
                let offset = data.summands.len();
                for (s, (i, p)) in fd.summands.iter().enumerate() {
                    data.summands.push((*i, p.clone()));
                    data.gens
                        .push(self.base.compose(&bps[*i].injections[r], &fd.gens[s])?);
                }
                for j in 0..n {
                    for (s, m, pi) in &fd.proj[j] {
                        data.proj[j].push((
                            s + offset,
                            *m,
                            self.base.compose(pi, &bps[j].projections[r])?,
                        ));
                    }
                }
            }
            Some(Arc::new(data))
        } else {
            None
        };
        let injections_c: Vec<Vec<C::Mor>> = (0..parts.len())
            .map(|r| bps.iter().map(|b| b.injections[r].clone()).collect())
            .collect();
        let projections_c: Vec<Vec<C::Mor>> = (0..parts.len())
            .map(|r| bps.iter().map(|b| b.projections[r].clone()).collect())
            .collect();
        let object = self.make(bps.into_iter().map(|b| b.object).collect(), maps, free);
        let injections = parts
            .iter()
            .zip(injections_c)
            .map(|(d, c)| self.mor(d, &object, c))
            .collect();
        let projections = parts
            .iter()
            .zip(projections_c)
            .map(|(d, c)| self.mor(&object, d, c))
            .collect();
        Ok(Biproduct {
            object,
            injections,
            projections,
        })
    }

    fn factor_through_mono(&self, mono: &DiagMor<C>, h: &DiagMor<C>) -> Result<Option<DiagMor<C>>> {
        let mut comps = Vec::new();
        for (m, x) in mono.components.iter().zip(&h.components) {
            match self.base.factor_through_mono(m, x)? {
                Some(u) => comps.push(u),
                None => return Ok(None),
            }
        }
        Ok(Some(self.mor(&h.source, &mono.source, comps)))
    }

    fn factor_through_epi(&self, epi: &DiagMor<C>, h: &DiagMor<C>) -> Result<Option<DiagMor<C>>> {
        let mut comps = Vec::new();
        for (e, x) in epi.components.iter().zip(&h.components) {
            match self.base.factor_through_epi(e, x)? {
                Some(u) => comps.push(u),
                None => return Ok(None),
            }
        }
        Ok(Some(self.mor(&epi.target, &h.target, comps)))
    }

    /// Biproduct over objects `i` of `Free(i, P_i)`, with `P_i → A^i` the
    /// free cover in `C`, mapping onto `A` by evaluation.
    fn free_cover(&self, a: &Diagram<C>) -> Result<DiagMor<C>> {
        let mut frees = Vec::new();
        let mut gens = Vec::new();
        for (i, obj) in a.0.objects.iter().enumerate() {
            let c = self.base.free_cover(obj)?;
            let p = self.base.source(&c);
            if self.base.is_zero_object(&p) {
                continue;
            }
            frees.push(self.free_diagram(i, &p)?);
            gens.push(c);
        }
        let free = self.biproduct(&frees)?.object;
        self.map_from_free(&free, a, &gens)
    }

    fn lift_through_epi(&self, epi: &DiagMor<C>, g: &DiagMor<C>) -> Result<Option<DiagMor<C>>> {
        let src = &g.source;
        let data = src
            .free_data()
            .ok_or_else(|| Error::NotProjective("lift from a diagram that is not free".into()))?;
        let mut gens = Vec::new();
        for (s, (i, _)) in data.summands.iter().enumerate() {
            let target = self.base.compose(&g.components[*i], &data.gens[s])?;
            match self.base.lift_through_epi(&epi.components[*i], &target)? {
                Some(h) => gens.push(h),
                None => return Ok(None),
            }
        }
        self.map_from_free(src, &epi.source, &gens).map(Some)
    }
}

/// Reads a diagram over `J` of diagrams over `I` as one diagram over `I × J`.
pub fn flatten<C: AbelianCategory>(inner: &DiagramCat<C>, d: &Diagram<DiagramCat<C>>) -> Result<Diagram<C>> {
    let i_cat = inner.index();
    let j_cat = d.index();
    let prod = Arc::new(i_cat.product(j_cat));
    let flat = DiagramCat::with_index(inner.base().clone(), prod.clone());
    let mut objects = vec![None; prod.num_objects()];
    for j in 0..j_cat.num_objects() {
        for i in 0..i_cat.num_objects() {
            objects[i_cat.product_object(j_cat, &prod, i, j)] = Some(d.object(j).object(i).clone());
        }
    }
    let mut maps = vec![None; prod.num_morphisms()];
    for n in 0..j_cat.num_morphisms() {
        let j2 = j_cat.target(n);
        for m in 0..i_cat.num_morphisms() {
            let i = i_cat.source(m);
            let map = inner
                .base()
                .compose(d.object(j2).map(m), d.map(n).component(i))?;
            maps[i_cat.product_morphism(j_cat, &prod, m, n)] = Some(map);
        }
    }
    let objects = objects.into_iter().map(|o| o.expect("all pairs")).collect();
    let maps = maps.into_iter().map(|o| o.expect("all pairs")).collect();
    Ok(flat.diagram_unchecked(objects, maps))
}

/// Morphism version of [`flatten`].
pub fn flatten_morphism<C: AbelianCategory>(inner: &DiagramCat<C>, f: &DiagMor<DiagramCat<C>>) -> Result<DiagMor<C>> {
    let s = flatten(inner, f.source())?;
    let t = flatten(inner, f.target())?;
    let i_cat = inner.index();
    let j_cat = f.source().index();
    let prod = s.index().clone();
    let mut comps = vec![None; prod.num_objects()];
    for j in 0..j_cat.num_objects() {
        for i in 0..i_cat.num_objects() {
            comps[i_cat.product_object(j_cat, &prod, i, j)] = Some(f.component(j).component(i).clone());
        }
    }
    let flat = DiagramCat::with_index(inner.base().clone(), prod);
    Ok(flat.morphism_unchecked(&s, &t, comps.into_iter().map(|c| c.expect("all pairs")).collect()))
}

#[cfg(test)]
mod tests;

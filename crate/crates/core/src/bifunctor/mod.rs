//! Bifunctors right-exact in each variable, their derived functors computed
//! from a resolution in one variable, and the ladders of long exact
//! sequences they induce, both in a module category and over products of
//! diagram categories.

use std::sync::Arc;

use crate::abelian::AbelianCategory;
use crate::diagram::{DiagMor, Diagram, DiagramCat};
use crate::error::{Error, Result};
use crate::functor::AdditiveFunctor;
use crate::homology::{
    apply_functor, homology_at, homology_map, ladder_between, les_from_complexes, les_of_ses, lift_chain_map, resolve,
    Complex, Homology, LadderResult, Les, MorphismOfSes, Ses, SesOfComplexes,
};
use crate::module::{tensor, tensor_mor, ModCat, ModMor, Module, Ring};
use crate::smallcat::FinCat;

pub trait Bifunctor: Send + Sync {
    type A: AbelianCategory;
    type B: AbelianCategory;
    type E: AbelianCategory;

    fn first_category(&self) -> Self::A;
    fn second_category(&self) -> Self::B;
    fn target_category(&self) -> Self::E;
    fn apply_obj(&self, a: &<Self::A as AbelianCategory>::Obj, b: &<Self::B as AbelianCategory>::Obj) -> Result<Obj<Self::E>>;
    fn apply_mor(&self, f: &<Self::A as AbelianCategory>::Mor, g: &<Self::B as AbelianCategory>::Mor) -> Result<Mor<Self::E>>;
}

type Obj<C> = <C as AbelianCategory>::Obj;
type Mor<C> = <C as AbelianCategory>::Mor;

/// `− ⊗_R −` over a commutative ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor {
    ring: Ring,
}

impl Tensor {
    pub fn new(ring: Ring) -> Result<Self> {
        if !ring.is_commutative() {
            return Err(Error::Unsupported("tensor over a noncommutative ring".into()));
        }
        Ok(Tensor { ring })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }
}

impl Bifunctor for Tensor {
    type A = ModCat;
    type B = ModCat;
    type E = ModCat;

    fn first_category(&self) -> ModCat {
        ModCat::new(self.ring.clone())
    }

    fn second_category(&self) -> ModCat {
        ModCat::new(self.ring.clone())
    }

    fn target_category(&self) -> ModCat {
        ModCat::new(self.ring.clone())
    }

    fn apply_obj(&self, a: &Module, b: &Module) -> Result<Module> {
        tensor(a, b)
    }

    fn apply_mor(&self, f: &ModMor, g: &ModMor) -> Result<ModMor> {
        tensor_mor(f, g)
    }
}

/// `F(−, b)`.
pub struct FixSecond<'a, F: Bifunctor> {
    pub functor: &'a F,
    pub b: Obj<F::B>,
}

/// `F(a, −)`.
pub struct FixFirst<'a, F: Bifunctor> {
    pub functor: &'a F,
    pub a: Obj<F::A>,
}

impl<F: Bifunctor> AdditiveFunctor for FixSecond<'_, F> {
    type Src = F::A;
    type Dst = F::E;

    fn source_category(&self) -> F::A {
        self.functor.first_category()
    }

    fn target_category(&self) -> F::E {
        self.functor.target_category()
    }

    fn apply_obj(&self, a: &Obj<F::A>) -> Result<Obj<F::E>> {
        self.functor.apply_obj(a, &self.b)
    }

    fn apply_mor(&self, f: &Mor<F::A>) -> Result<Mor<F::E>> {
        let id = self.functor.second_category().identity(&self.b);
        self.functor.apply_mor(f, &id)
    }
}

impl<F: Bifunctor> AdditiveFunctor for FixFirst<'_, F> {
    type Src = F::B;
    type Dst = F::E;

    fn source_category(&self) -> F::B {
        self.functor.second_category()
    }

    fn target_category(&self) -> F::E {
        self.functor.target_category()
    }

    fn apply_obj(&self, b: &Obj<F::B>) -> Result<Obj<F::E>> {
        self.functor.apply_obj(&self.a, b)
    }

    fn apply_mor(&self, g: &Mor<F::B>) -> Result<Mor<F::E>> {
        let id = self.functor.first_category().identity(&self.a);
        self.functor.apply_mor(&id, g)
    }
}

fn check_index<C: AbelianCategory>(d: &Diagram<C>, index: &FinCat) -> Result<()> {
    if **d.index() != *index {
        return Err(Error::InvalidDiagram("diagram over a different index".into()));
    }
    Ok(())
}

/// `F^{I×J} : C^I × D^J → E^{I×J}`, `(X, Y) ↦ ((i, j) ↦ F(X^i, Y^j))`.
#[derive(Clone, Debug)]
pub struct ProductExponent<F> {
    functor: F,
    first: Arc<FinCat>,
    second: Arc<FinCat>,
    product: Arc<FinCat>,
}

impl<F: Bifunctor> ProductExponent<F> {
    pub fn new(functor: F, first: Arc<FinCat>, second: Arc<FinCat>) -> Self {
        let product = Arc::new(first.product(&second));
        ProductExponent {
            functor,
            first,
            second,
            product,
        }
    }

    pub fn product_index(&self) -> &Arc<FinCat> {
        &self.product
    }
}

impl<F: Bifunctor> Bifunctor for ProductExponent<F> {
    type A = DiagramCat<F::A>;
    type B = DiagramCat<F::B>;
    type E = DiagramCat<F::E>;

    fn first_category(&self) -> Self::A {
        DiagramCat::with_index(self.functor.first_category(), self.first.clone())
    }

    fn second_category(&self) -> Self::B {
        DiagramCat::with_index(self.functor.second_category(), self.second.clone())
    }

    fn target_category(&self) -> Self::E {
        DiagramCat::with_index(self.functor.target_category(), self.product.clone())
    }

    fn apply_obj(&self, x: &Diagram<F::A>, y: &Diagram<F::B>) -> Result<Diagram<F::E>> {
        check_index(x, &self.first)?;
        check_index(y, &self.second)?;
        let (i_cat, j_cat, prod) = (&self.first, &self.second, &self.product);
        let mut objects = vec![None; prod.num_objects()];
        for i in 0..i_cat.num_objects() {
            for j in 0..j_cat.num_objects() {
                objects[i_cat.product_object(j_cat, prod, i, j)] = Some(self.functor.apply_obj(x.object(i), y.object(j))?);
            }
        }
        let mut maps = vec![None; prod.num_morphisms()];
        for f in 0..i_cat.num_morphisms() {
            for g in 0..j_cat.num_morphisms() {
                maps[i_cat.product_morphism(j_cat, prod, f, g)] = Some(self.functor.apply_mor(x.map(f), y.map(g))?);
            }
        }
        Ok(self.target_category().diagram_unchecked(
            objects.into_iter().map(|o| o.expect("all pairs")).collect(),
            maps.into_iter().map(|o| o.expect("all pairs")).collect(),
        ))
    }

    fn apply_mor(&self, phi: &DiagMor<F::A>, psi: &DiagMor<F::B>) -> Result<DiagMor<F::E>> {
        let s = self.apply_obj(phi.source(), psi.source())?;
        let t = self.apply_obj(phi.target(), psi.target())?;
        let (i_cat, j_cat, prod) = (&self.first, &self.second, &self.product);
        let mut comps = vec![None; prod.num_objects()];
        for i in 0..i_cat.num_objects() {
            for j in 0..j_cat.num_objects() {
                comps[i_cat.product_object(j_cat, prod, i, j)] =
                    Some(self.functor.apply_mor(phi.component(i), psi.component(j))?);
            }
        }
        Ok(self
            .target_category()
            .morphism_unchecked(&s, &t, comps.into_iter().map(|c| c.expect("all pairs")).collect()))
    }
}

/// `(F^I)^J : C^I × D^J → (E^I)^J`, with `(X, Y)^j = F^I(X, Y^j)`.
#[derive(Clone, Debug)]
pub struct NestedExponent<F> {
    functor: F,
    first: Arc<FinCat>,
    second: Arc<FinCat>,
}

impl<F: Bifunctor> NestedExponent<F> {
    pub fn new(functor: F, first: Arc<FinCat>, second: Arc<FinCat>) -> Self {
        NestedExponent { functor, first, second }
    }

    /// `E^I`, the base of the outer diagram category.
    pub fn inner_category(&self) -> DiagramCat<F::E> {
        DiagramCat::with_index(self.functor.target_category(), self.first.clone())
    }

    fn inner_obj(&self, x: &Diagram<F::A>, b: &Obj<F::B>) -> Result<Diagram<F::E>> {
        let id = self.functor.second_category().identity(b);
        let objects = x
            .objects()
            .iter()
            .map(|a| self.functor.apply_obj(a, b))
            .collect::<Result<Vec<_>>>()?;
        let maps = x
            .maps()
            .iter()
            .map(|m| self.functor.apply_mor(m, &id))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.inner_category().diagram_unchecked(objects, maps))
    }
}

impl<F: Bifunctor> Bifunctor for NestedExponent<F> {
    type A = DiagramCat<F::A>;
    type B = DiagramCat<F::B>;
    type E = DiagramCat<DiagramCat<F::E>>;

    fn first_category(&self) -> Self::A {
        DiagramCat::with_index(self.functor.first_category(), self.first.clone())
    }

    fn second_category(&self) -> Self::B {
        DiagramCat::with_index(self.functor.second_category(), self.second.clone())
    }

    fn target_category(&self) -> Self::E {
        DiagramCat::with_index(self.inner_category(), self.second.clone())
    }

    fn apply_obj(&self, x: &Diagram<F::A>, y: &Diagram<F::B>) -> Result<Diagram<DiagramCat<F::E>>> {
        check_index(x, &self.first)?;
        check_index(y, &self.second)?;
        let inner = self.inner_category();
        let objects = y
            .objects()
            .iter()
            .map(|b| self.inner_obj(x, b))
            .collect::<Result<Vec<_>>>()?;
        let mut maps = Vec::new();
        for (n, g) in y.maps().iter().enumerate() {
            let (j, k) = (self.second.source(n), self.second.target(n));
            let comps = x
                .objects()
                .iter()
                .map(|a| {
                    let id = self.functor.first_category().identity(a);
                    self.functor.apply_mor(&id, g)
                })
                .collect::<Result<Vec<_>>>()?;
            maps.push(inner.morphism_unchecked(&objects[j], &objects[k], comps));
        }
        Ok(self.target_category().diagram_unchecked(objects, maps))
    }

    fn apply_mor(&self, phi: &DiagMor<F::A>, psi: &DiagMor<F::B>) -> Result<DiagMor<DiagramCat<F::E>>> {
        let s = self.apply_obj(phi.source(), psi.source())?;
        let t = self.apply_obj(phi.target(), psi.target())?;
        let inner = self.inner_category();
        let mut comps = Vec::new();
        for j in 0..self.second.num_objects() {
            let c = phi
                .components()
                .iter()
                .map(|f| self.functor.apply_mor(f, psi.component(j)))
                .collect::<Result<Vec<_>>>()?;
            comps.push(inner.morphism_unchecked(s.object(j), t.object(j), c));
        }
        Ok(self.target_category().morphism_unchecked(&s, &t, comps))
    }
}

/// `F_n(A, B)` from a resolution of the first variable.
pub fn tor_first<F: Bifunctor>(f: &F, a: &Obj<F::A>, b: &Obj<F::B>, n: usize) -> Result<Homology<F::E>> {
    crate::homology::derived(&FixSecond { functor: f, b: b.clone() }, a, n)
}

/// `F_n(A, B)` from a resolution of the second variable.
pub fn tor_second<F: Bifunctor>(f: &F, a: &Obj<F::A>, b: &Obj<F::B>, n: usize) -> Result<Homology<F::E>> {
    crate::homology::derived(&FixFirst { functor: f, a: a.clone() }, b, n)
}

/// The two one-variable computations of `F_n(A, B)` and the canonical map
/// between them, through the total complex of `F(P_A, P_B)`.
pub struct Balance<E: AbelianCategory> {
    pub first: E::Obj,
    pub second: E::Obj,
    pub total: E::Obj,
    /// `H_n Tot → H_n F(P_A, B)` is an iso.
    pub to_first_iso: bool,
    /// `H_n Tot → H_n F(A, P_B)` is an iso.
    pub to_second_iso: bool,
    /// `F_n(A, B)_first → F_n(A, B)_second`, when the first leg inverts.
    pub comparison: Option<E::Mor>,
    pub comparison_iso: bool,
}

impl<E: AbelianCategory> Balance<E> {
    pub fn is_iso(&self) -> bool {
        self.to_first_iso && self.to_second_iso && self.comparison_iso
    }
}

pub fn balance<F: Bifunctor>(f: &F, a: &Obj<F::A>, b: &Obj<F::B>, n: usize) -> Result<Balance<F::E>> {
    let ca = f.first_category();
    let cb = f.second_category();
    let e = f.target_category();
    let p = resolve(&ca, a, n + 1)?;
    let q = resolve(&cb, b, n + 1)?;
    let top = n + 1;

    // Tot_k = ⊕_{r + s = k} F(P_r, Q_s), summands listed by r
    let mut bps = Vec::new();
    for k in 0..=top {
        let parts = (0..=k)
            .map(|r| f.apply_obj(p.complex.object(r), q.complex.object(k - r)))
            .collect::<Result<Vec<_>>>()?;
        bps.push(e.biproduct(&parts)?);
    }
    let mut diffs = Vec::new();
    for k in 1..=top {
        let (src, tgt) = (&bps[k], &bps[k - 1]);
        let mut terms = Vec::new();
        for r in 0..=k {
            let s = k - r;
            if r >= 1 {
                let h = f.apply_mor(p.complex.d(r), &cb.identity(q.complex.object(s)))?;
                terms.push(e.compose_all(&[&tgt.injections[r - 1], &h, &src.projections[r]])?);
            }
            if s >= 1 {
                let mut v = f.apply_mor(&ca.identity(p.complex.object(r)), q.complex.d(s))?;
                if r % 2 == 1 {
                    v = e.negate(&v);
                }
                terms.push(e.compose_all(&[&tgt.injections[r], &v, &src.projections[r]])?);
            }
        }
        diffs.push(e.sum(&src.object, &tgt.object, &terms)?);
    }
    let tot = Complex::new(&e, bps.iter().map(|bp| bp.object.clone()).collect(), diffs)?;

    let fix2 = FixSecond { functor: f, b: b.clone() };
    let fix1 = FixFirst { functor: f, a: a.clone() };
    let x1 = apply_functor(&fix2, &p.complex)?;
    let x2 = apply_functor(&fix1, &q.complex)?;
    let alpha = e.compose(
        &f.apply_mor(&ca.identity(p.complex.object(n)), &q.augmentation)?,
        &bps[n].projections[n],
    )?;
    let beta = e.compose(
        &f.apply_mor(&p.augmentation, &cb.identity(q.complex.object(n)))?,
        &bps[n].projections[0],
    )?;
    let ht = homology_at(&e, &tot, n)?;
    let h1 = homology_at(&e, &x1, n)?;
    let h2 = homology_at(&e, &x2, n)?;
    let ha = homology_map(&e, &ht, &h1, &alpha)?;
    let hb = homology_map(&e, &ht, &h2, &beta)?;
    let to_first_iso = e.is_iso(&ha)?;
    let to_second_iso = e.is_iso(&hb)?;
    let comparison = if to_first_iso {
        // the inverse of an iso u is the factorization of the identity through u
        let inv = e
            .factor_through_epi(&ha, &e.identity(&ht.object))?
            .ok_or_else(|| Error::LiftFailed("iso does not invert".into()))?;
        Some(e.compose(&hb, &inv)?)
    } else {
        None
    };
    let comparison_iso = match &comparison {
        Some(c) => e.is_iso(c)?,
        None => false,
    };
    Ok(Balance {
        first: h1.object,
        second: h2.object,
        total: ht.object,
        to_first_iso,
        to_second_iso,
        comparison,
        comparison_iso,
    })
}

/// `F(L, b) → F(M, b) → F(N, b) → 0` is exact.
pub fn right_exact_in_first<F: Bifunctor>(f: &F, s: &Ses<F::A>, b: &Obj<F::B>) -> Result<bool> {
    let fix = FixSecond { functor: f, b: b.clone() };
    right_exact(&f.target_category(), &fix.apply_mor(&s.i)?, &fix.apply_mor(&s.p)?)
}

/// `F(a, L) → F(a, M) → F(a, N) → 0` is exact.
pub fn right_exact_in_second<F: Bifunctor>(f: &F, a: &Obj<F::A>, s: &Ses<F::B>) -> Result<bool> {
    let fix = FixFirst { functor: f, a: a.clone() };
    right_exact(&f.target_category(), &fix.apply_mor(&s.i)?, &fix.apply_mor(&s.p)?)
}

fn right_exact<C: AbelianCategory>(cat: &C, i: &C::Mor, p: &C::Mor) -> Result<bool> {
    let exact = match cat.is_exact_at(i, p) {
        Ok(b) => b,
        Err(Error::CompositeNonzero(_)) => false,
        Err(e) => return Err(e),
    };
    Ok(exact && cat.is_epi(p)?)
}

/// A ladder of long exact sequences of `F_*` with its two rows.
pub struct BiLadder<E: AbelianCategory> {
    pub top: Les<E>,
    pub bottom: Les<E>,
    pub result: LadderResult<E>,
    /// For the switched ladder, whether `F(P_k, −)` kept each row's short
    /// exact sequence exact in every degree.
    pub degreewise_exact: Vec<bool>,
}

impl<E: AbelianCategory> BiLadder<E> {
    pub fn passed(&self) -> bool {
        self.result.passed() && self.degreewise_exact.iter().all(|b| *b)
    }
}

/// Ladder for a morphism of short exact sequences in the first variable and
/// a morphism `g : B → B'` in the second.
pub fn ladder<F: Bifunctor>(f: &F, mors: &MorphismOfSes<F::A>, g: &Mor<F::B>, n_max: usize) -> Result<BiLadder<F::E>> {
    let ca = f.first_category();
    let cb = f.second_category();
    let top_f = FixSecond { functor: f, b: cb.source(g) };
    let bottom_f = FixSecond { functor: f, b: cb.target(g) };
    let (top, rt) = les_of_ses(&top_f, &mors.source, n_max)?;
    let (bottom, rb) = les_of_ses(&bottom_f, &mors.target, n_max)?;
    let vertical = |p, q, m: &Mor<F::A>| -> Result<Vec<Mor<F::E>>> {
        lift_chain_map(&ca, p, q, m)?
            .iter()
            .map(|phi| f.apply_mor(phi, g))
            .collect()
    };
    let cl = vertical(&rt.l, &rb.l, &mors.l)?;
    let cm = vertical(&rt.m, &rb.m, &mors.m)?;
    let cn = vertical(&rt.n, &rb.n, &mors.n)?;
    let result = ladder_between(&f.target_category(), &top, &bottom, [&cl, &cm, &cn])?;
    Ok(BiLadder {
        top,
        bottom,
        result,
        degreewise_exact: Vec::new(),
    })
}

/// Ladder for a morphism of short exact sequences in the second variable
/// and `g : A → A'` in the first. Only the first variable is resolved; the
/// rows come from `F(P_*, −)` applied to the sequences, which stays exact
/// because each `P_k` is projective.
pub fn ladder_switched<F: Bifunctor>(
    f: &F,
    mors: &MorphismOfSes<F::B>,
    g: &Mor<F::A>,
    n_max: usize,
) -> Result<BiLadder<F::E>> {
    let ca = f.first_category();
    let cb = f.second_category();
    let e = f.target_category();
    let len = n_max + 2;
    let p = resolve(&ca, &ca.source(g), len)?;
    let pp = resolve(&ca, &ca.target(g), len)?;
    let phi = lift_chain_map(&ca, &p, &pp, g)?;

    let mut degreewise_exact = Vec::new();
    let mut row = |res: &crate::homology::Resolution<F::A>, s: &Ses<F::B>| -> Result<SesOfComplexes<F::E>> {
        let cx = |b: Obj<F::B>| apply_functor(&FixSecond { functor: f, b }, &res.complex);
        let over = |m: &Mor<F::B>| -> Result<Vec<Mor<F::E>>> {
            res.complex
                .objects()
                .iter()
                .map(|pk| f.apply_mor(&ca.identity(pk), m))
                .collect()
        };
        let ses = SesOfComplexes {
            a: cx(s.l(&cb))?,
            b: cx(s.m(&cb))?,
            c: cx(s.n(&cb))?,
            i: over(&s.i)?,
            p: over(&s.p)?,
        };
        for k in 0..ses.i.len() {
            degreewise_exact.push(match e.is_short_exact(&ses.i[k], &ses.p[k]) {
                Ok(b) => b,
                Err(Error::CompositeNonzero(_)) => false,
                Err(err) => return Err(err),
            });
        }
        Ok(ses)
    };
    let top_c = row(&p, &mors.source)?;
    let bottom_c = row(&pp, &mors.target)?;
    let top = les_from_complexes(&e, top_c, n_max)?;
    let bottom = les_from_complexes(&e, bottom_c, n_max)?;
    let vertical = |m: &Mor<F::B>| -> Result<Vec<Mor<F::E>>> { phi.iter().map(|x| f.apply_mor(x, m)).collect() };
    let cl = vertical(&mors.l)?;
    let cm = vertical(&mors.m)?;
    let cn = vertical(&mors.n)?;
    let result = ladder_between(&e, &top, &bottom, [&cl, &cm, &cn])?;
    Ok(BiLadder {
        top,
        bottom,
        result,
        degreewise_exact,
    })
}

//! The comparison `(L_nF)^I → L_n(F^I)` between componentwise derived
//! functors and derived functors of the exponent.

use crate::abelian::AbelianCategory;
use crate::diagram::{DiagMor, Diagram, DiagramCat};
use crate::error::Result;
use crate::functor::{AdditiveFunctor, Exponent};

use super::resolution::{lift_chain_map, resolve, Resolution};
use super::{apply_functor, homology_at, homology_map, Complex, Homology};

/// Per-component comparison maps `L_nF(A^i) → L_n(F^I)(A)^i` with verdicts.
pub struct ComparisonResult<C: AbelianCategory> {
    pub degree: usize,
    /// `L_n(F^I)(A)`, from a resolution in the diagram category.
    pub diagram_side: Diagram<C>,
    /// `L_nF(A^i)`, from independent component resolutions.
    pub component_side: Vec<C::Obj>,
    pub maps: Vec<C::Mor>,
    pub iso: Vec<bool>,
    /// One entry per non-identity index morphism `m : i → j`: the map
    /// `L_nF(A(m))` agrees with the structure map of `L_n(F^I)(A)`.
    pub index_squares: Vec<(String, bool)>,
}

impl<C: AbelianCategory> ComparisonResult<C> {
    pub fn is_iso(&self) -> bool {
        self.iso.iter().all(|b| *b)
    }

    pub fn is_natural(&self) -> bool {
        self.index_squares.iter().all(|(_, b)| *b)
    }
}

/// Component `i` of a homology computed in a diagram category.
fn component_homology<C: AbelianCategory>(h: &Homology<DiagramCat<C>>, i: usize) -> Homology<C> {
    Homology {
        object: h.object.object(i).clone(),
        cycles: h.cycles.object(i).clone(),
        cycle_mono: h.cycle_mono.component(i).clone(),
        proj: h.proj.component(i).clone(),
    }
}

fn component_complex<C: AbelianCategory>(c: &Complex<DiagramCat<C>>, i: usize) -> Complex<C> {
    Complex::unchecked(
        c.objects().iter().map(|d| d.object(i).clone()).collect(),
        c.diffs().iter().map(|d| d.component(i).clone()).collect(),
    )
}

fn component_resolution<C: AbelianCategory>(base: &C, r: &Resolution<DiagramCat<C>>, i: usize) -> Result<Resolution<C>> {
    Resolution::from_complex(base, component_complex(&r.complex, i), r.augmentation.component(i).clone())
}

struct Side<F: AdditiveFunctor> {
    diagram_res: Resolution<DiagramCat<F::Src>>,
    diagram_h: Homology<DiagramCat<F::Dst>>,
    comp_res: Vec<Resolution<F::Src>>,
    comp_h: Vec<Homology<F::Dst>>,
    maps: Vec<<F::Dst as AbelianCategory>::Mor>,
}

fn side<F: AdditiveFunctor>(f: &F, a: &Diagram<F::Src>, n: usize) -> Result<Side<F>> {
    let index = a.index().clone();
    let e = Exponent::new(FnRef(f), index.clone());
    let dsrc = e.source_category();
    let ddst = e.target_category();
    let src = f.source_category();
    let dst = f.target_category();

    let diagram_res = resolve(&dsrc, a, n + 1)?;
    let fp = apply_functor(&e, &diagram_res.complex)?;
    let diagram_h = homology_at(&ddst, &fp, n)?;

    let mut comp_res = Vec::new();
    let mut comp_h = Vec::new();
    let mut maps = Vec::new();
    for i in 0..index.num_objects() {
        let q = resolve(&src, a.object(i), n + 1)?;
        let fq = apply_functor(f, &q.complex)?;
        let hq = homology_at(&dst, &fq, n)?;
        let p = component_resolution(&src, &diagram_res, i)?;
        let phi = lift_chain_map(&src, &q, &p, &src.identity(a.object(i)))?;
        let map = homology_map(&dst, &hq, &component_homology(&diagram_h, i), &f.apply_mor(&phi[n])?)?;
        comp_res.push(q);
        comp_h.push(hq);
        maps.push(map);
    }
    Ok(Side {
        diagram_res,
        diagram_h,
        comp_res,
        comp_h,
        maps,
    })
}

/// Borrowing wrapper so `Exponent` can hold a reference.
struct FnRef<'a, F>(&'a F);

impl<F: AdditiveFunctor> AdditiveFunctor for FnRef<'_, F> {
    type Src = F::Src;
    type Dst = F::Dst;

    fn source_category(&self) -> F::Src {
        self.0.source_category()
    }

    fn target_category(&self) -> F::Dst {
        self.0.target_category()
    }

    fn apply_obj(&self, a: &<F::Src as AbelianCategory>::Obj) -> Result<<F::Dst as AbelianCategory>::Obj> {
        self.0.apply_obj(a)
    }

    fn apply_mor(&self, f: &<F::Src as AbelianCategory>::Mor) -> Result<<F::Dst as AbelianCategory>::Mor> {
        self.0.apply_mor(f)
    }
}

/// `L_nF(g)` between two independently resolved objects.
fn derived_between<F: AdditiveFunctor>(
    f: &F,
    p: &Resolution<F::Src>,
    hp: &Homology<F::Dst>,
    q: &Resolution<F::Src>,
    hq: &Homology<F::Dst>,
    g: &<F::Src as AbelianCategory>::Mor,
    n: usize,
) -> Result<<F::Dst as AbelianCategory>::Mor> {
    let phi = lift_chain_map(&f.source_category(), p, q, g)?;
    homology_map(&f.target_category(), hp, hq, &f.apply_mor(&phi[n])?)
}

pub fn comparison_iso<F: AdditiveFunctor>(f: &F, a: &Diagram<F::Src>, n: usize) -> Result<ComparisonResult<F::Dst>> {
    let dst = f.target_category();
    let s = side(f, a, n)?;
    let iso = s.maps.iter().map(|m| dst.is_iso(m)).collect::<Result<Vec<_>>>()?;
    let index = a.index();
    let mut index_squares = Vec::new();
    for (m, mor) in index.morphisms().iter().enumerate() {
        if index.is_identity(m) {
            continue;
        }
        let (i, j) = (mor.source, mor.target);
        let lf = derived_between(f, &s.comp_res[i], &s.comp_h[i], &s.comp_res[j], &s.comp_h[j], a.map(m), n)?;
        let lhs = dst.compose(&s.maps[j], &lf)?;
        let rhs = dst.compose(s.diagram_h.object.map(m), &s.maps[i])?;
        index_squares.push((mor.label.clone(), dst.equal(&lhs, &rhs)?));
    }
    Ok(ComparisonResult {
        degree: n,
        diagram_side: s.diagram_h.object.clone(),
        component_side: s.comp_h.iter().map(|h| h.object.clone()).collect(),
        maps: s.maps,
        iso,
        index_squares,
    })
}

/// Naturality in the diagram: for `g : A → B`, the comparison maps commute
/// with `L_n(F^I)(g)` and the componentwise `L_nF(g^i)`. One verdict per
/// component; also reports whether all comparison maps were isos.
pub fn comparison_naturality<F: AdditiveFunctor>(f: &F, g: &DiagMor<F::Src>, n: usize) -> Result<(Vec<bool>, bool)> {
    let dst = f.target_category();
    let sa = side(f, g.source(), n)?;
    let sb = side(f, g.target(), n)?;
    let e = Exponent::new(FnRef(f), g.source().index().clone());
    let dsrc = e.source_category();
    let ddst = e.target_category();
    let phi = lift_chain_map(&dsrc, &sa.diagram_res, &sb.diagram_res, g)?;
    let lg = homology_map(&ddst, &sa.diagram_h, &sb.diagram_h, &e.apply_mor(&phi[n])?)?;
    let mut verdicts = Vec::new();
    let mut all_iso = true;
    for i in 0..g.source().index().num_objects() {
        let li = derived_between(f, &sa.comp_res[i], &sa.comp_h[i], &sb.comp_res[i], &sb.comp_h[i], g.component(i), n)?;
        let lhs = dst.compose(&sb.maps[i], &li)?;
        let rhs = dst.compose(lg.component(i), &sa.maps[i])?;
        verdicts.push(dst.equal(&lhs, &rhs)?);
        all_iso &= dst.is_iso(&sa.maps[i])? && dst.is_iso(&sb.maps[i])?;
    }
    Ok((verdicts, all_iso))
}

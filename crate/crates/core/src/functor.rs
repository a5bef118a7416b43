//! Additive functors between the effective categories, their exponents on
//! diagram categories, and natural transformations between tensor functors.

use std::sync::Arc;

use crate::abelian::AbelianCategory;
use crate::diagram::{DiagMor, Diagram, DiagramCat};
use crate::error::{Error, Result};
use crate::module::{base_change, base_change_mor, tensor, tensor_mor, ModCat, ModMor, Module, Ring, RingMap};
use crate::smallcat::FinCat;

pub trait AdditiveFunctor: Send + Sync {
    type Src: AbelianCategory;
    type Dst: AbelianCategory;

    fn source_category(&self) -> Self::Src;
    fn target_category(&self) -> Self::Dst;
    fn apply_obj(&self, a: &<Self::Src as AbelianCategory>::Obj) -> Result<<Self::Dst as AbelianCategory>::Obj>;
    fn apply_mor(&self, f: &<Self::Src as AbelianCategory>::Mor) -> Result<<Self::Dst as AbelianCategory>::Mor>;
}

/// Right-exact additive functors between module categories.
#[derive(Clone, Debug, PartialEq)]
pub enum FunctorSpec {
    /// `− ⊗_R M` over a commutative ring.
    TensorWith(Module),
    /// `S ⊗_R −` along a ring map.
    BaseChange(RingMap),
    /// `outer ∘ inner`.
    Compose(Box<FunctorSpec>, Box<FunctorSpec>),
}

impl FunctorSpec {
    pub fn tensor_with(m: &Module) -> Result<Self> {
        if !m.ring().is_commutative() {
            return Err(Error::Unsupported("tensor over a noncommutative ring".into()));
        }
        Ok(FunctorSpec::TensorWith(m.clone()))
    }

    pub fn base_change(phi: RingMap) -> Self {
        FunctorSpec::BaseChange(phi)
    }

    pub fn compose(outer: FunctorSpec, inner: FunctorSpec) -> Result<Self> {
        if inner.target_ring() != outer.source_ring() {
            return Err(Error::RingMismatch(format!(
                "cannot compose a functor from {:?} after one into {:?}",
                outer.source_ring(),
                inner.target_ring()
            )));
        }
        Ok(FunctorSpec::Compose(Box::new(outer), Box::new(inner)))
    }

    pub fn source_ring(&self) -> Ring {
        match self {
            FunctorSpec::TensorWith(m) => m.ring(),
            FunctorSpec::BaseChange(phi) => phi.source().clone(),
            FunctorSpec::Compose(_, inner) => inner.source_ring(),
        }
    }

    pub fn target_ring(&self) -> Ring {
        match self {
            FunctorSpec::TensorWith(m) => m.ring(),
            FunctorSpec::BaseChange(phi) => phi.target().clone(),
            FunctorSpec::Compose(outer, _) => outer.target_ring(),
        }
    }

    fn check_source(&self, ring: &Ring) -> Result<()> {
        if *ring != self.source_ring() {
            return Err(Error::RingMismatch(format!(
                "functor expects modules over {:?}, got {:?}",
                self.source_ring(),
                ring
            )));
        }
        Ok(())
    }
}

impl AdditiveFunctor for FunctorSpec {
    type Src = ModCat;
    type Dst = ModCat;

    fn source_category(&self) -> ModCat {
        ModCat::new(self.source_ring())
    }

    fn target_category(&self) -> ModCat {
        ModCat::new(self.target_ring())
    }

    fn apply_obj(&self, a: &Module) -> Result<Module> {
        self.check_source(&a.ring())?;
        match self {
            FunctorSpec::TensorWith(m) => tensor(a, m),
            FunctorSpec::BaseChange(phi) => base_change(phi, a),
            FunctorSpec::Compose(outer, inner) => outer.apply_obj(&inner.apply_obj(a)?),
        }
    }

    fn apply_mor(&self, f: &ModMor) -> Result<ModMor> {
        self.check_source(&f.source().ring())?;
        match self {
            FunctorSpec::TensorWith(m) => {
                let id = ModCat::new(m.ring()).identity(m);
                tensor_mor(f, &id)
            }
            FunctorSpec::BaseChange(phi) => base_change_mor(phi, f),
            FunctorSpec::Compose(outer, inner) => outer.apply_mor(&inner.apply_mor(f)?),
        }
    }
}

/// `F^I : C^I → D^I`, applying `F` to every component and structure map.
#[derive(Clone, Debug)]
pub struct Exponent<F> {
    functor: F,
    index: Arc<FinCat>,
}

impl<F: AdditiveFunctor> Exponent<F> {
    pub fn new(functor: F, index: Arc<FinCat>) -> Self {
        Exponent { functor, index }
    }

    pub fn inner(&self) -> &F {
        &self.functor
    }

    pub fn index(&self) -> &Arc<FinCat> {
        &self.index
    }
}

impl<F: AdditiveFunctor> AdditiveFunctor for Exponent<F> {
    type Src = DiagramCat<F::Src>;
    type Dst = DiagramCat<F::Dst>;

    fn source_category(&self) -> Self::Src {
        DiagramCat::with_index(self.functor.source_category(), self.index.clone())
    }

    fn target_category(&self) -> Self::Dst {
        DiagramCat::with_index(self.functor.target_category(), self.index.clone())
    }

    fn apply_obj(&self, a: &Diagram<F::Src>) -> Result<Diagram<F::Dst>> {
        if **a.index() != *self.index {
            return Err(Error::InvalidDiagram("diagram over a different index".into()));
        }
        let objects = a
            .objects()
            .iter()
            .map(|o| self.functor.apply_obj(o))
            .collect::<Result<Vec<_>>>()?;
        let maps = a
            .maps()
            .iter()
            .map(|m| self.functor.apply_mor(m))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.target_category().diagram_unchecked(objects, maps))
    }

    fn apply_mor(&self, f: &DiagMor<F::Src>) -> Result<DiagMor<F::Dst>> {
        let s = self.apply_obj(f.source())?;
        let t = self.apply_obj(f.target())?;
        let comps = f
            .components()
            .iter()
            .map(|c| self.functor.apply_mor(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.target_category().morphism_unchecked(&s, &t, comps))
    }
}

/// `F^I` applied to a diagram.
pub fn exponent_apply<F: AdditiveFunctor>(functor: &F, d: &Diagram<F::Src>) -> Result<Diagram<F::Dst>>
where
    F: Clone,
{
    Exponent::new(functor.clone(), d.index().clone()).apply_obj(d)
}

/// Natural transformations between functor specs.
#[derive(Clone, Debug, PartialEq)]
pub enum NatSpec {
    /// `− ⊗ g : − ⊗ M ⇒ − ⊗ M'`.
    TensorMap(ModMor),
}

impl NatSpec {
    pub fn source_functor(&self) -> FunctorSpec {
        match self {
            NatSpec::TensorMap(g) => FunctorSpec::TensorWith(g.source().clone()),
        }
    }

    pub fn target_functor(&self) -> FunctorSpec {
        match self {
            NatSpec::TensorMap(g) => FunctorSpec::TensorWith(g.target().clone()),
        }
    }

    /// The component at `a`.
    pub fn component(&self, a: &Module) -> Result<ModMor> {
        match self {
            NatSpec::TensorMap(g) => {
                let cat = ModCat::new(a.ring());
                tensor_mor(&cat.identity(a), g)
            }
        }
    }
}

/// `η^I` at a diagram: the morphism `F^I(d) → G^I(d)` with components `η`.
pub fn exponent_nat(eta: &NatSpec, d: &Diagram<ModCat>) -> Result<DiagMor<ModCat>> {
    let f = Exponent::new(eta.source_functor(), d.index().clone());
    let g = Exponent::new(eta.target_functor(), d.index().clone());
    let s = f.apply_obj(d)?;
    let t = g.apply_obj(d)?;
    let comps = d
        .objects()
        .iter()
        .map(|o| eta.component(o))
        .collect::<Result<Vec<_>>>()?;
    f.target_category().morphism(&s, &t, comps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &Module, t: &Module, rows: &[Vec<i64>]) -> ModMor {
        ModMor::from_int_rows(s, t, rows).unwrap()
    }

    #[test]
    fn tensor_exponent_on_times_two() {
        let cat = DiagramCat::new(ModCat::integers(), FinCat::arrow());
        let z = Module::cyclic(0);
        let d = cat.diagram_from(vec![z.clone(), z.clone()], vec![m(&z, &z, &[vec![2]])]).unwrap();
        let f = FunctorSpec::tensor_with(&Module::cyclic(2)).unwrap();
        let fd = exponent_apply(&f, &d).unwrap();
        assert_eq!(fd.object(0).describe(), "Z/2");
        assert_eq!(fd.object(1).describe(), "Z/2");
        let a = cat.index().morphism_index("a").unwrap();
        assert!(ModCat::integers().is_zero(fd.map(a)));
    }

    #[test]
    fn exponent_nat_of_times_two() {
        let cat = DiagramCat::new(ModCat::integers(), FinCat::arrow());
        let z = Module::cyclic(0);
        let z4 = Module::cyclic(4);
        let d = cat.diagram_from(vec![z4.clone(), z.clone()], vec![m(&z4, &z, &[vec![0]])]).unwrap();
        let eta = NatSpec::TensorMap(m(&z, &z, &[vec![2]]));
        let t = exponent_nat(&eta, &d).unwrap();
        let c = ModCat::integers();
        // per-component tensor of maps: ×2 on Z/4 and on Z
        assert!(!c.is_zero(t.component(0)));
        let twice = c.add(&c.identity(&z4), &c.identity(&z4)).unwrap();
        assert!(c.equal(t.component(0), &twice).unwrap());
        let zero = NatSpec::TensorMap(m(&z, &z, &[vec![0]]));
        assert!(DiagramCat::new(c, FinCat::arrow()).is_zero(&exponent_nat(&zero, &d).unwrap()));
    }

    #[test]
    fn composite_rings_must_match() {
        let g = Ring::cyclic_group(2, 2).unwrap();
        let aug = FunctorSpec::base_change(RingMap::augmentation(g.as_algebra().unwrap()).unwrap());
        let z2 = FunctorSpec::tensor_with(&Module::cyclic(2)).unwrap();
        assert!(FunctorSpec::compose(z2, aug).is_err());
    }
}

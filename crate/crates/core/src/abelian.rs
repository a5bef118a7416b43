//! The interface every effective abelian category in this crate provides.
//!
//! Module categories implement it directly; the functor category of diagrams
//! over a finite index implements it componentwise on top of any base
//! implementation, so diagrams of diagrams come for free.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Biproduct<C: AbelianCategory + ?Sized> {
    pub object: C::Obj,
    pub injections: Vec<C::Mor>,
    pub projections: Vec<C::Mor>,
}

/// Image factorization `f = mono ∘ epi`.
#[derive(Clone, Debug)]
pub struct Image<C: AbelianCategory + ?Sized> {
    pub object: C::Obj,
    pub mono: C::Mor,
    pub epi: C::Mor,
}

pub trait AbelianCategory: Clone + Send + Sync {
    type Obj: Clone + PartialEq + fmt::Debug + Send + Sync;
    type Mor: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn source(&self, f: &Self::Mor) -> Self::Obj;
    fn target(&self, f: &Self::Mor) -> Self::Obj;

    fn zero_object(&self) -> Self::Obj;
    fn is_zero_object(&self, a: &Self::Obj) -> bool;
    fn identity(&self, a: &Self::Obj) -> Self::Mor;
    fn zero_morphism(&self, a: &Self::Obj, b: &Self::Obj) -> Self::Mor;

    /// `g ∘ f`.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor>;
    fn add(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor>;
    fn negate(&self, f: &Self::Mor) -> Self::Mor;
    fn is_zero(&self, f: &Self::Mor) -> bool;

    /// Kernel object with its monomorphism into the source of `f`.
    fn kernel(&self, f: &Self::Mor) -> Result<(Self::Obj, Self::Mor)>;
    /// Cokernel object with the epimorphism from the target of `f`.
    fn cokernel(&self, f: &Self::Mor) -> Result<(Self::Obj, Self::Mor)>;
    fn biproduct(&self, parts: &[Self::Obj]) -> Result<Biproduct<Self>>;

    /// The unique `u` with `mono ∘ u = h`, or `None` if `h` does not factor.
    fn factor_through_mono(&self, mono: &Self::Mor, h: &Self::Mor) -> Result<Option<Self::Mor>>;
    /// The unique `u` with `u ∘ epi = h`, or `None` if `h` does not vanish on
    /// the kernel of `epi`.
    fn factor_through_epi(&self, epi: &Self::Mor, h: &Self::Mor) -> Result<Option<Self::Mor>>;

    /// An epimorphism from a projective object produced by this category.
    fn free_cover(&self, a: &Self::Obj) -> Result<Self::Mor>;
    /// Some `h` with `epi ∘ h = g`. The source of `g` must be a projective
    /// object built by this category (a free cover, or biproducts of them).
    fn lift_through_epi(&self, epi: &Self::Mor, g: &Self::Mor) -> Result<Option<Self::Mor>>;

    fn sub(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Self::Mor> {
        self.add(f, &self.negate(g))
    }

    fn equal(&self, f: &Self::Mor, g: &Self::Mor) -> Result<bool> {
        Ok(self.is_zero(&self.sub(f, g)?))
    }

    fn compose_all(&self, maps: &[&Self::Mor]) -> Result<Self::Mor> {
        let (last, rest) = maps
            .split_last()
            .ok_or_else(|| Error::DimensionMismatch("empty composite".into()))?;
        let mut acc = (*last).clone();
        for g in rest.iter().rev() {
            acc = self.compose(g, &acc)?;
        }
        Ok(acc)
    }

    fn sum(&self, a: &Self::Obj, b: &Self::Obj, maps: &[Self::Mor]) -> Result<Self::Mor> {
        let mut acc = self.zero_morphism(a, b);
        for m in maps {
            acc = self.add(&acc, m)?;
        }
        Ok(acc)
    }

    /// Image computed as the kernel of the cokernel.
    fn image(&self, f: &Self::Mor) -> Result<Image<Self>> {
        let (_, q) = self.cokernel(f)?;
        let (object, mono) = self.kernel(&q)?;
        let epi = self
            .factor_through_mono(&mono, f)?
            .ok_or_else(|| Error::LiftFailed("morphism does not factor through its image".into()))?;
        Ok(Image { object, mono, epi })
    }

    fn is_mono(&self, f: &Self::Mor) -> Result<bool> {
        let (k, _) = self.kernel(f)?;
        Ok(self.is_zero_object(&k))
    }

    fn is_epi(&self, f: &Self::Mor) -> Result<bool> {
        let (c, _) = self.cokernel(f)?;
        Ok(self.is_zero_object(&c))
    }

    fn is_iso(&self, f: &Self::Mor) -> Result<bool> {
        Ok(self.is_mono(f)? && self.is_epi(f)?)
    }

    /// Exactness of `f` then `g` at their common object: the canonical map
    /// from the image of `f` to the kernel of `g` has zero kernel and cokernel.
    fn is_exact_at(&self, f: &Self::Mor, g: &Self::Mor) -> Result<bool> {
        let gf = self.compose(g, f)?;
        if !self.is_zero(&gf) {
            return Err(Error::CompositeNonzero(
                "exactness requires g ∘ f = 0".into(),
            ));
        }
        let im = self.image(f)?;
        let (_, kmono) = self.kernel(g)?;
        let canonical = self
            .factor_through_mono(&kmono, &im.mono)?
            .ok_or_else(|| Error::LiftFailed("image does not land in kernel".into()))?;
        self.is_iso(&canonical)
    }

    /// `0 → L → M → N → 0` is exact.
    fn is_short_exact(&self, i: &Self::Mor, p: &Self::Mor) -> Result<bool> {
        Ok(self.is_mono(i)? && self.is_epi(p)? && self.is_exact_at(i, p)?)
    }
}

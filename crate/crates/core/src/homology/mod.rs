//! Chain complexes and their homology in any `AbelianCategory`.

mod comparison;
mod connecting;
mod les;
mod resolution;

pub use comparison::{comparison_iso, comparison_naturality, ComparisonResult};
pub use connecting::{connecting, Perturbation, SesOfComplexes};
pub use les::{
    delta_axiom_suite, delta_ladder, diagram_les_components, ladder_between, les_from_complexes, les_of_ses,
    DeltaReport, LadderResult, Les, LesCheck, LesResolutions, MorphismOfSes, Ses,
};
pub use resolution::{derived, derived_all, derived_map, horseshoe, lift_chain_map, resolve, Horseshoe, Resolution};

use crate::abelian::AbelianCategory;
use crate::error::{Error, Result};
use crate::functor::AdditiveFunctor;

/// A bounded chain complex `C_len-1 → … → C_1 → C_0`, zero outside.
pub struct Complex<C: AbelianCategory> {
    objects: Vec<C::Obj>,
    /// `diffs[n - 1] = d_n : C_n → C_{n-1}`.
    diffs: Vec<C::Mor>,
}

impl<C: AbelianCategory> Clone for Complex<C> {
    fn clone(&self) -> Self {
        Complex {
            objects: self.objects.clone(),
            diffs: self.diffs.clone(),
        }
    }
}

impl<C: AbelianCategory> std::fmt::Debug for Complex<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Complex").field("objects", &self.objects).finish()
    }
}

impl<C: AbelianCategory> Complex<C> {
    /// Checked: shapes match and `d ∘ d = 0`.
    pub fn new(cat: &C, objects: Vec<C::Obj>, diffs: Vec<C::Mor>) -> Result<Self> {
        if diffs.len() + 1 != objects.len().max(1) {
            return Err(Error::DimensionMismatch("complex needs one differential per positive degree".into()));
        }
        for (k, d) in diffs.iter().enumerate() {
            if cat.source(d) != objects[k + 1] || cat.target(d) != objects[k] {
                return Err(Error::DimensionMismatch(format!("d_{} has the wrong ends", k + 1)));
            }
        }
        for k in 1..diffs.len() {
            if !cat.is_zero(&cat.compose(&diffs[k - 1], &diffs[k])?) {
                return Err(Error::CompositeNonzero(format!("d_{} ∘ d_{} ≠ 0", k, k + 1)));
            }
        }
        Ok(Complex { objects, diffs })
    }

    pub(crate) fn unchecked(objects: Vec<C::Obj>, diffs: Vec<C::Mor>) -> Self {
        Complex { objects, diffs }
    }

    /// Number of stored degrees.
    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn object(&self, n: usize) -> &C::Obj {
        &self.objects[n]
    }

    pub fn objects(&self) -> &[C::Obj] {
        &self.objects
    }

    /// `d_n : C_n → C_{n-1}` for `1 ≤ n < len`.
    pub fn d(&self, n: usize) -> &C::Mor {
        &self.diffs[n - 1]
    }

    pub fn diffs(&self) -> &[C::Mor] {
        &self.diffs
    }

    /// The outgoing differential at `n`, including `C_0 → 0`.
    pub fn outgoing(&self, cat: &C, n: usize) -> C::Mor {
        if n == 0 {
            cat.zero_morphism(&self.objects[0], &cat.zero_object())
        } else {
            self.diffs[n - 1].clone()
        }
    }

    /// The incoming differential at `n`, including `0 → C_top`.
    pub fn incoming(&self, cat: &C, n: usize) -> C::Mor {
        if n + 1 < self.objects.len() {
            self.diffs[n].clone()
        } else {
            cat.zero_morphism(&cat.zero_object(), &self.objects[n])
        }
    }
}

/// `H_n = ker(d_n) / im(d_{n+1})` with its canonical maps.
pub struct Homology<C: AbelianCategory> {
    pub object: C::Obj,
    pub cycles: C::Obj,
    /// `Z_n → C_n`.
    pub cycle_mono: C::Mor,
    /// `Z_n → H_n`.
    pub proj: C::Mor,
}

impl<C: AbelianCategory> Clone for Homology<C> {
    fn clone(&self) -> Self {
        Homology {
            object: self.object.clone(),
            cycles: self.cycles.clone(),
            cycle_mono: self.cycle_mono.clone(),
            proj: self.proj.clone(),
        }
    }
}

impl<C: AbelianCategory> std::fmt::Debug for Homology<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.object)
    }
}

pub fn homology_at<C: AbelianCategory>(cat: &C, c: &Complex<C>, n: usize) -> Result<Homology<C>> {
    if n >= c.len() {
        return Err(Error::DimensionMismatch(format!("degree {} outside the complex", n)));
    }
    let (cycles, cycle_mono) = cat.kernel(&c.outgoing(cat, n))?;
    let boundary = cat
        .factor_through_mono(&cycle_mono, &c.incoming(cat, n))?
        .ok_or_else(|| Error::CompositeNonzero(format!("boundaries at {} are not cycles", n)))?;
    let (object, proj) = cat.cokernel(&boundary)?;
    Ok(Homology {
        object,
        cycles,
        cycle_mono,
        proj,
    })
}

/// Homology in every stored degree.
pub fn all_homology<C: AbelianCategory>(cat: &C, c: &Complex<C>) -> Result<Vec<Homology<C>>> {
    (0..c.len()).map(|n| homology_at(cat, c, n)).collect()
}

/// The map `H(C) → H(D)` induced by a chain map with component `phi`.
pub fn homology_map<C: AbelianCategory>(cat: &C, hs: &Homology<C>, ht: &Homology<C>, phi: &C::Mor) -> Result<C::Mor> {
    let x = cat.compose(phi, &hs.cycle_mono)?;
    let u = cat
        .factor_through_mono(&ht.cycle_mono, &x)?
        .ok_or_else(|| Error::LiftFailed("chain map does not preserve cycles".into()))?;
    let y = cat.compose(&ht.proj, &u)?;
    cat.factor_through_epi(&hs.proj, &y)?
        .ok_or_else(|| Error::LiftFailed("chain map does not preserve boundaries".into()))
}

/// Checks that `maps` commute with the differentials.
pub fn is_chain_map<C: AbelianCategory>(cat: &C, s: &Complex<C>, t: &Complex<C>, maps: &[C::Mor]) -> Result<bool> {
    for n in 1..maps.len().min(s.len()).min(t.len()) {
        let lhs = cat.compose(t.d(n), &maps[n])?;
        let rhs = cat.compose(&maps[n - 1], s.d(n))?;
        if !cat.equal(&lhs, &rhs)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn apply_functor<F: AdditiveFunctor>(f: &F, c: &Complex<F::Src>) -> Result<Complex<F::Dst>> {
    let objects = c
        .objects
        .iter()
        .map(|o| f.apply_obj(o))
        .collect::<Result<Vec<_>>>()?;
    let diffs = c
        .diffs
        .iter()
        .map(|d| f.apply_mor(d))
        .collect::<Result<Vec<_>>>()?;
    Ok(Complex::unchecked(objects, diffs))
}

pub fn apply_functor_maps<F: AdditiveFunctor>(f: &F, maps: &[<F::Src as AbelianCategory>::Mor]) -> Result<Vec<<F::Dst as AbelianCategory>::Mor>> {
    maps.iter().map(|m| f.apply_mor(m)).collect()
}

#[cfg(test)]
mod tests;

//! The connecting map of a short exact sequence of complexes.

use crate::abelian::AbelianCategory;
use crate::error::{Error, Result};

use super::{Complex, Homology};

/// `0 → A → B → C → 0`, degreewise short exact, with chain maps `i`, `p`.
pub struct SesOfComplexes<C: AbelianCategory> {
    pub a: Complex<C>,
    pub b: Complex<C>,
    pub c: Complex<C>,
    pub i: Vec<C::Mor>,
    pub p: Vec<C::Mor>,
}

impl<C: AbelianCategory> Clone for SesOfComplexes<C> {
    fn clone(&self) -> Self {
        SesOfComplexes {
            a: self.a.clone(),
            b: self.b.clone(),
            c: self.c.clone(),
            i: self.i.clone(),
            p: self.p.clone(),
        }
    }
}

/// Hook for replacing the chosen lift `Q → B_n` by `lift + i_n ∘ t`;
/// receives `Q` and `A_n` and returns `t`.
pub type Perturbation<'a, C> =
    &'a dyn Fn(&<C as AbelianCategory>::Obj, &<C as AbelianCategory>::Obj) -> Result<<C as AbelianCategory>::Mor>;

/// `δ_n : H_n(C) → H_{n-1}(A)` by the zig-zag: cover the cycles of `C_n`
/// by a projective `Q`, lift to `B_n`, apply `d`, pull back along `i_{n-1}`,
/// and descend to homology.
pub fn connecting<C: AbelianCategory>(
    cat: &C,
    ses: &SesOfComplexes<C>,
    n: usize,
    h_c: &Homology<C>,
    h_a: &Homology<C>,
    perturb: Option<Perturbation<'_, C>>,
) -> Result<C::Mor> {
    if n == 0 {
        return Err(Error::DimensionMismatch("connecting map needs n ≥ 1".into()));
    }
    let cover = cat.free_cover(&h_c.cycles)?;
    let q = cat.source(&cover);
    let z = cat.compose(&h_c.cycle_mono, &cover)?;
    let mut b = cat
        .lift_through_epi(&ses.p[n], &z)?
        .ok_or_else(|| Error::LiftFailed(format!("p_{} is not epi", n)))?;
    if let Some(f) = perturb {
        let t = f(&q, ses.a.object(n))?;
        b = cat.add(&b, &cat.compose(&ses.i[n], &t)?)?;
    }
    let db = cat.compose(ses.b.d(n), &b)?;
    let a = cat
        .factor_through_mono(&ses.i[n - 1], &db)?
        .ok_or_else(|| Error::LiftFailed(format!("boundary does not come from A_{}", n - 1)))?;
    let a_cycle = cat
        .factor_through_mono(&h_a.cycle_mono, &a)?
        .ok_or_else(|| Error::LiftFailed("zig-zag does not end in a cycle".into()))?;
    let h = cat.compose(&h_a.proj, &a_cycle)?;
    let e = cat.compose(&h_c.proj, &cover)?;
    cat.factor_through_epi(&e, &h)?
        .ok_or_else(|| Error::LiftFailed("connecting map is not well defined".into()))
}

//! Projective resolutions, chain-map lifting, left derived functors, and the
//! horseshoe construction.

use crate::abelian::AbelianCategory;
use crate::error::{Error, Result};
use crate::functor::AdditiveFunctor;

use super::{apply_functor, homology_at, homology_map, Complex, Homology};

/// A projective resolution `P_len-1 → … → P_0 → A`, together with each
/// syzygy `K_{n-1} = ker(P_{n-1} → ·)` and the epi `P_n → K_{n-1}`.
pub struct Resolution<C: AbelianCategory> {
    pub object: C::Obj,
    pub complex: Complex<C>,
    pub augmentation: C::Mor,
    /// Entry `n - 1`: `(K_{n-1} → P_{n-1}, P_n → K_{n-1})`.
    syzygies: Vec<(C::Mor, C::Mor)>,
}

impl<C: AbelianCategory> Clone for Resolution<C> {
    fn clone(&self) -> Self {
        Resolution {
            object: self.object.clone(),
            complex: self.complex.clone(),
            augmentation: self.augmentation.clone(),
            syzygies: self.syzygies.clone(),
        }
    }
}

impl<C: AbelianCategory> Resolution<C> {
    /// Wraps a complex of projectives with an augmentation, recomputing the
    /// syzygy data. Fails unless the augmented complex is exact.
    pub fn from_complex(cat: &C, complex: Complex<C>, augmentation: C::Mor) -> Result<Self> {
        if !cat.is_epi(&augmentation)? {
            return Err(Error::InvalidFixture("augmentation is not epi".into()));
        }
        let mut syzygies = Vec::new();
        let mut prev = augmentation.clone();
        for n in 1..complex.len() {
            let (_, k) = cat.kernel(&prev)?;
            let e = cat
                .factor_through_mono(&k, complex.d(n))?
                .ok_or_else(|| Error::CompositeNonzero(format!("d_{} does not land in the syzygy", n)))?;
            if !cat.is_epi(&e)? {
                return Err(Error::InvalidFixture(format!("not exact in degree {}", n - 1)));
            }
            syzygies.push((k, e));
            prev = complex.d(n).clone();
        }
        Ok(Resolution {
            object: cat.target(&augmentation),
            complex,
            augmentation,
            syzygies,
        })
    }

    pub fn len(&self) -> usize {
        self.complex.len()
    }

    pub fn is_empty(&self) -> bool {
        self.complex.is_empty()
    }

    /// `(K_{n-1} → P_{n-1}, P_n → K_{n-1})` for `n ≥ 1`.
    pub fn syzygy(&self, n: usize) -> (&C::Mor, &C::Mor) {
        let (k, e) = &self.syzygies[n - 1];
        (k, e)
    }
}

/// Resolution with terms `P_0 … P_len`, by iterated free covers of kernels.
pub fn resolve<C: AbelianCategory>(cat: &C, a: &C::Obj, len: usize) -> Result<Resolution<C>> {
    let eps = cat.free_cover(a)?;
    let mut objects = vec![cat.source(&eps)];
    let mut diffs = Vec::new();
    let mut syzygies = Vec::new();
    let (_, mut k) = cat.kernel(&eps)?;
    for _ in 1..=len {
        let kobj = cat.source(&k);
        let c = cat.free_cover(&kobj)?;
        let d = cat.compose(&k, &c)?;
        objects.push(cat.source(&c));
        diffs.push(d);
        let (_, next) = cat.kernel(&c)?;
        syzygies.push((k, c));
        k = next;
    }
    Ok(Resolution {
        object: a.clone(),
        complex: Complex::unchecked(objects, diffs),
        augmentation: eps,
        syzygies,
    })
}

/// Comparison theorem: a chain map `P → Q` over `f : A → B`, degrees
/// `0 … min(len)`. `P` must consist of projectives built by the category.
pub fn lift_chain_map<C: AbelianCategory>(cat: &C, p: &Resolution<C>, q: &Resolution<C>, f: &C::Mor) -> Result<Vec<C::Mor>> {
    let top = p.len().min(q.len());
    let mut maps = Vec::with_capacity(top);
    let g = cat.compose(f, &p.augmentation)?;
    let phi0 = cat
        .lift_through_epi(&q.augmentation, &g)?
        .ok_or_else(|| Error::LiftFailed("no lift through the augmentation".into()))?;
    maps.push(phi0);
    for n in 1..top {
        let x = cat.compose(&maps[n - 1], p.complex.d(n))?;
        let (k, e) = q.syzygy(n);
        let x = cat
            .factor_through_mono(k, &x)?
            .ok_or_else(|| Error::LiftFailed(format!("degree {} does not land in the syzygy", n)))?;
        let phi = cat
            .lift_through_epi(e, &x)?
            .ok_or_else(|| Error::LiftFailed(format!("no lift in degree {}", n)))?;
        maps.push(phi);
    }
    Ok(maps)
}

/// `L_nF(A)`, from a resolution of length `n + 1`.
pub fn derived<F: AdditiveFunctor>(f: &F, a: &<F::Src as AbelianCategory>::Obj, n: usize) -> Result<Homology<F::Dst>> {
    let src = f.source_category();
    let res = resolve(&src, a, n + 1)?;
    let fc = apply_functor(f, &res.complex)?;
    homology_at(&f.target_category(), &fc, n)
}

/// `L_0F(A) … L_topF(A)` from one resolution.
pub fn derived_all<F: AdditiveFunctor>(f: &F, a: &<F::Src as AbelianCategory>::Obj, top: usize) -> Result<Vec<Homology<F::Dst>>> {
    let res = resolve(&f.source_category(), a, top + 1)?;
    let fc = apply_functor(f, &res.complex)?;
    let dst = f.target_category();
    (0..=top).map(|n| homology_at(&dst, &fc, n)).collect()
}

/// `L_nF(g) : L_nF(A) → L_nF(B)`, with the two derived objects.
pub fn derived_map<F: AdditiveFunctor>(
    f: &F,
    g: &<F::Src as AbelianCategory>::Mor,
    n: usize,
) -> Result<(Homology<F::Dst>, Homology<F::Dst>, <F::Dst as AbelianCategory>::Mor)> {
    let src = f.source_category();
    let dst = f.target_category();
    let p = resolve(&src, &src.source(g), n + 1)?;
    let q = resolve(&src, &src.target(g), n + 1)?;
    let phi = lift_chain_map(&src, &p, &q, g)?;
    let fp = apply_functor(f, &p.complex)?;
    let fq = apply_functor(f, &q.complex)?;
    let hs = homology_at(&dst, &fp, n)?;
    let ht = homology_at(&dst, &fq, n)?;
    let map = homology_map(&dst, &hs, &ht, &f.apply_mor(&phi[n])?)?;
    Ok((hs, ht, map))
}

/// A resolution of the middle term of `0 → L → M → N → 0` with
/// `P^M_n = P^L_n ⊕ P^N_n`, and the degreewise split chain maps.
pub struct Horseshoe<C: AbelianCategory> {
    pub resolution: Resolution<C>,
    pub inj: Vec<C::Mor>,
    pub proj: Vec<C::Mor>,
}

pub fn horseshoe<C: AbelianCategory>(
    cat: &C,
    i: &C::Mor,
    p: &C::Mor,
    res_l: &Resolution<C>,
    res_n: &Resolution<C>,
) -> Result<Horseshoe<C>> {
    let len = res_l.len().min(res_n.len());
    if len == 0 {
        return Err(Error::InvalidFixture("empty resolutions".into()));
    }
    let lift = |epi: &C::Mor, g: &C::Mor| -> Result<C::Mor> {
        cat.lift_through_epi(epi, g)?
            .ok_or_else(|| Error::LiftFailed("horseshoe lift failed".into()))
    };
    let mut objects = Vec::new();
    let mut diffs = Vec::new();
    let mut syzygies = Vec::new();
    let mut inj = Vec::new();
    let mut proj = Vec::new();

    // current SES of syzygies 0 → K_L → K_M → K_N → 0, starting with L, M, N
    let mut i_cur = i.clone();
    let mut p_cur = p.clone();
    let mut e_l = res_l.augmentation.clone();
    let mut e_n = res_n.augmentation.clone();
    let mut k_m_prev: Option<C::Mor> = None;
    let mut augmentation = None;
    for n in 0..len {
        let bp = cat.biproduct(&[res_l.complex.object(n).clone(), res_n.complex.object(n).clone()])?;
        let lambda = lift(&p_cur, &e_n)?;
        let eps = cat.add(
            &cat.compose_all(&[&i_cur, &e_l, &bp.projections[0]])?,
            &cat.compose(&lambda, &bp.projections[1])?,
        )?;
        objects.push(bp.object.clone());
        match &k_m_prev {
            None => augmentation = Some(eps.clone()),
            Some(k) => {
                diffs.push(cat.compose(k, &eps)?);
                syzygies.push((k.clone(), eps.clone()));
            }
        }
        if n + 1 < len {
            let (k_l, next_e_l) = res_l.syzygy(n + 1);
            let (k_n, next_e_n) = res_n.syzygy(n + 1);
            let (_, k_m) = cat.kernel(&eps)?;
            let i_next = cat
                .factor_through_mono(&k_m, &cat.compose(&bp.injections[0], k_l)?)?
                .ok_or_else(|| Error::LiftFailed("horseshoe: L-syzygy not in kernel".into()))?;
            let p_next = cat
                .factor_through_mono(k_n, &cat.compose(&bp.projections[1], &k_m)?)?
                .ok_or_else(|| Error::LiftFailed("horseshoe: N-syzygy mismatch".into()))?;
            i_cur = i_next;
            p_cur = p_next;
            e_l = next_e_l.clone();
            e_n = next_e_n.clone();
            k_m_prev = Some(k_m);
        }
        inj.push(bp.injections[0].clone());
        proj.push(bp.projections[1].clone());
    }
    Ok(Horseshoe {
        resolution: Resolution {
            object: cat.source(p),
            complex: Complex::unchecked(objects, diffs),
            augmentation: augmentation.expect("degree 0"),
            syzygies,
        },
        inj,
        proj,
    })
}

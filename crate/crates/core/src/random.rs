//! Seeded random fixtures: modules, diagrams, composable pairs, short exact
//! sequences and morphisms between them.
//!
//! Everything is built from free objects and maps out of them, so every
//! fixture is valid by construction. Objects come out as cokernels and
//! kernels of random maps and carry torsion and nontrivial structure maps.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::abelian::AbelianCategory;
use crate::diagram::{DiagMor, Diagram, DiagramCat};
use crate::error::{Error, Result};
use crate::homology::{MorphismOfSes, Ses};
use crate::linalg::{FpMatrix, IntMatrix};
use crate::module::{Matrix, ModCat, ModMor, Module, Ring};

/// A category with enough free objects to sample from.
pub trait Sampler: AbelianCategory {
    /// A small free object, occasionally zero.
    fn random_free(&self, rng: &mut ChaCha8Rng) -> Self::Obj;
    /// A random map out of a free object produced by [`Sampler::random_free`].
    fn random_from_free(&self, free: &Self::Obj, target: &Self::Obj, rng: &mut ChaCha8Rng) -> Result<Self::Mor>;
}

/// Entries of integer fixtures are drawn from `-ENTRY..=ENTRY`.
const ENTRY: i64 = 3;

impl Sampler for ModCat {
    fn random_free(&self, rng: &mut ChaCha8Rng) -> Module {
        let rank = if rng.gen_ratio(1, 8) {
            0
        } else {
            match self.ring() {
                Ring::Algebra(a) if a.dim() > 2 => 1,
                _ => rng.gen_range(1..=2),
            }
        };
        Module::free(self.ring(), rank)
    }

    fn random_from_free(&self, free: &Module, target: &Module, rng: &mut ChaCha8Rng) -> Result<ModMor> {
        match (free.int(), target.int(), target.alg()) {
            (Some(s), Some(t), _) => {
                let rows: Vec<Vec<i64>> = (0..t.gens())
                    .map(|_| (0..s.gens()).map(|_| rng.gen_range(-ENTRY..=ENTRY)).collect())
                    .collect();
                let m = IntMatrix::from_rows(&rows, s.gens())?;
                ModMor::new(free.clone(), target.clone(), Matrix::Int(m))
            }
            (None, None, Some(t)) => {
                let alg = t.algebra();
                let (p, d) = (alg.prime(), alg.dim());
                let rank = free
                    .alg()
                    .and_then(|f| f.free_rank())
                    .ok_or_else(|| Error::NotProjective("sampling from a module that is not free".into()))?;
                let mut cols = Vec::with_capacity(rank * d);
                for _ in 0..rank {
                    let y: Vec<u64> = (0..t.dim()).map(|_| rng.gen_range(0..p)).collect();
                    for e in 0..d {
                        cols.push(t.action(e).mul_vec(&y)?);
                    }
                }
                ModMor::new(free.clone(), target.clone(), Matrix::Fp(FpMatrix::from_columns(p, t.dim(), &cols)))
            }
            _ => Err(Error::RingMismatch("sampled map between different rings".into())),
        }
    }
}

impl<C: Sampler> Sampler for DiagramCat<C> {
    /// A biproduct of one or two free diagrams `Free(i, P)`.
    fn random_free(&self, rng: &mut ChaCha8Rng) -> Diagram<C> {
        let n = self.index().num_objects();
        let parts: Vec<Diagram<C>> = (0..rng.gen_range(1..=2))
            .map(|_| {
                let i = rng.gen_range(0..n);
                let p = self.base().random_free(rng);
                self.free_diagram(i, &p).expect("free diagram on a free object")
            })
            .collect();
        self.biproduct(&parts).expect("biproduct of free diagrams").object
    }

    fn random_from_free(&self, free: &Diagram<C>, target: &Diagram<C>, rng: &mut ChaCha8Rng) -> Result<DiagMor<C>> {
        let data = free
            .free_data()
            .ok_or_else(|| Error::NotProjective("sampling from a diagram that is not free".into()))?;
        let gens = data
            .summands
            .iter()
            .map(|(i, p)| self.base().random_from_free(p, target.object(*i), rng))
            .collect::<Result<Vec<_>>>()?;
        self.map_from_free(free, target, &gens)
    }
}

/// The cokernel of a random map between free objects.
pub fn random_object<C: Sampler>(cat: &C, rng: &mut ChaCha8Rng) -> Result<C::Obj> {
    let f0 = cat.random_free(rng);
    let f1 = cat.random_free(rng);
    let r = cat.random_from_free(&f1, &f0, rng)?;
    Ok(cat.cokernel(&r)?.0)
}

/// A random map into `b`. Its source is a quotient of a free object by a
/// random part of the kernel, so the map is rarely injective or surjective.
pub fn random_map_into<C: Sampler>(cat: &C, b: &C::Obj, rng: &mut ChaCha8Rng) -> Result<C::Mor> {
    let f0 = cat.random_free(rng);
    let u = cat.random_from_free(&f0, b, rng)?;
    let (k, kmono) = cat.kernel(&u)?;
    let f1 = cat.random_free(rng);
    let w = cat.random_from_free(&f1, &k, rng)?;
    let rel = cat.compose(&kmono, &w)?;
    let (_, q) = cat.cokernel(&rel)?;
    cat.factor_through_epi(&q, &u)?
        .ok_or_else(|| Error::InvalidFixture("sampled map does not descend".into()))
}

/// The quotient of `a` by the image of a random map into it.
pub fn random_quotient<C: Sampler>(cat: &C, a: &C::Obj, rng: &mut ChaCha8Rng) -> Result<C::Mor> {
    let h = random_map_into(cat, a, rng)?;
    Ok(cat.cokernel(&h)?.1)
}

/// A composable pair `f : A → B`, `g : B → C` with `g ∘ f = 0`, exact or not.
pub fn random_composable<C: Sampler>(cat: &C, rng: &mut ChaCha8Rng) -> Result<(C::Mor, C::Mor)> {
    let b = random_object(cat, rng)?;
    let h = random_map_into(cat, &b, rng)?;
    let f = match rng.gen_range(0..3) {
        0 => h.clone(),
        1 => {
            let t = random_map_into(cat, &cat.source(&h), rng)?;
            cat.compose(&h, &t)?
        }
        _ => cat.zero_morphism(&cat.source(&h), &b),
    };
    let g = match rng.gen_range(0..3) {
        0 => cat.cokernel(&h)?.1,
        _ => {
            let extra = random_map_into(cat, &b, rng)?;
            let bp = cat.biproduct(&[cat.source(&h), cat.source(&extra)])?;
            let both = cat.add(
                &cat.compose(&h, &bp.projections[0])?,
                &cat.compose(&extra, &bp.projections[1])?,
            )?;
            cat.cokernel(&both)?.1
        }
    };
    Ok((f, g))
}

/// `0 → im h → B → coker h → 0` for a random `h` into a random `B`. A few
/// draws are made to avoid a sequence with a zero end.
pub fn random_ses<C: Sampler>(cat: &C, rng: &mut ChaCha8Rng) -> Result<Ses<C>> {
    let mut attempt = 0;
    loop {
        let b = random_object(cat, rng)?;
        let h = random_map_into(cat, &b, rng)?;
        let im = cat.image(&h)?;
        let (_, q) = cat.cokernel(&h)?;
        let s = Ses::new(cat, im.mono, q)?;
        attempt += 1;
        if attempt == 4 || (!cat.is_zero(&s.i) && !cat.is_zero(&s.p)) {
            return Ok(s);
        }
    }
}

/// Pull `s` back along `c : N' → N`; the result maps to `s`.
pub fn pullback_ses<C: AbelianCategory>(cat: &C, s: &Ses<C>, c: &C::Mor) -> Result<MorphismOfSes<C>> {
    let bp = cat.biproduct(&[s.m(cat), cat.source(c)])?;
    let diff = cat.sub(&cat.compose(&s.p, &bp.projections[0])?, &cat.compose(c, &bp.projections[1])?)?;
    let (_, k) = cat.kernel(&diff)?;
    let l = s.l(cat);
    let into = cat.compose(&bp.injections[0], &s.i)?;
    let i2 = cat
        .factor_through_mono(&k, &into)?
        .ok_or_else(|| Error::InvalidFixture("pullback inclusion".into()))?;
    let p2 = cat.compose(&bp.projections[1], &k)?;
    let source = Ses::new(cat, i2, p2)?;
    let mm = cat.compose(&bp.projections[0], &k)?;
    MorphismOfSes::new(cat, source, s.clone(), cat.identity(&l), mm, c.clone())
}

/// Push `s` out along `a : L → L'`; `s` maps to the result.
pub fn pushout_ses<C: AbelianCategory>(cat: &C, s: &Ses<C>, a: &C::Mor) -> Result<MorphismOfSes<C>> {
    let bp = cat.biproduct(&[s.m(cat), cat.target(a)])?;
    let diff = cat.compose(&bp.injections[0], &s.i)?;
    let diff = cat.sub(&diff, &cat.compose(&bp.injections[1], a)?)?;
    let (_, q) = cat.cokernel(&diff)?;
    let i2 = cat.compose(&q, &bp.injections[1])?;
    let onto = cat.compose(&s.p, &bp.projections[0])?;
    let p2 = cat
        .factor_through_epi(&q, &onto)?
        .ok_or_else(|| Error::InvalidFixture("pushout projection".into()))?;
    let target = Ses::new(cat, i2, p2)?;
    let mm = cat.compose(&q, &bp.injections[0])?;
    MorphismOfSes::new(cat, s.clone(), target, a.clone(), mm, cat.identity(&s.n(cat)))
}

/// A random morphism of short exact sequences: a pullback along a random
/// map into the right end, followed by a pushout along a random quotient of
/// the left end.
pub fn random_ses_morphism<C: Sampler>(cat: &C, rng: &mut ChaCha8Rng) -> Result<MorphismOfSes<C>> {
    let s = random_ses(cat, rng)?;
    let c = random_map_into(cat, &s.n(cat), rng)?;
    let back = pullback_ses(cat, &s, &c)?;
    let a = random_quotient(cat, &s.l(cat), rng)?;
    let out = pushout_ses(cat, &s, &a)?;
    MorphismOfSes::new(
        cat,
        back.source.clone(),
        out.target.clone(),
        cat.compose(&out.l, &back.l)?,
        cat.compose(&out.m, &back.m)?,
        cat.compose(&out.n, &back.n)?,
    )
}

//! Short exact sequences, the long exact sequence of a derived functor, and
//! ladders of long exact sequences.

use crate::abelian::AbelianCategory;
use crate::diagram::DiagramCat;
use crate::error::{Error, Result};
use crate::functor::AdditiveFunctor;

use super::connecting::{connecting, SesOfComplexes};
use super::resolution::{horseshoe, lift_chain_map, resolve, Resolution};
use super::{apply_functor, apply_functor_maps, homology_at, homology_map, Homology};

/// `0 → L → M → N → 0`, checked exact on construction.
pub struct Ses<C: AbelianCategory> {
    pub i: C::Mor,
    pub p: C::Mor,
}

impl<C: AbelianCategory> Clone for Ses<C> {
    fn clone(&self) -> Self {
        Ses {
            i: self.i.clone(),
            p: self.p.clone(),
        }
    }
}

impl<C: AbelianCategory> std::fmt::Debug for Ses<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Ses").field("i", &self.i).field("p", &self.p).finish()
    }
}

impl<C: AbelianCategory> Ses<C> {
    pub fn new(cat: &C, i: C::Mor, p: C::Mor) -> Result<Self> {
        if cat.target(&i) != cat.source(&p) {
            return Err(Error::InvalidFixture("maps of the sequence do not compose".into()));
        }
        let exact = match cat.is_short_exact(&i, &p) {
            Ok(b) => b,
            Err(Error::CompositeNonzero(_)) => false,
            Err(e) => return Err(e),
        };
        if !exact {
            return Err(Error::InvalidFixture("sequence is not short exact".into()));
        }
        Ok(Ses { i, p })
    }

    pub fn l(&self, cat: &C) -> C::Obj {
        cat.source(&self.i)
    }

    pub fn m(&self, cat: &C) -> C::Obj {
        cat.target(&self.i)
    }

    pub fn n(&self, cat: &C) -> C::Obj {
        cat.target(&self.p)
    }
}

/// A morphism of short exact sequences, checked to commute.
pub struct MorphismOfSes<C: AbelianCategory> {
    pub source: Ses<C>,
    pub target: Ses<C>,
    pub l: C::Mor,
    pub m: C::Mor,
    pub n: C::Mor,
}

impl<C: AbelianCategory> Clone for MorphismOfSes<C> {
    fn clone(&self) -> Self {
        MorphismOfSes {
            source: self.source.clone(),
            target: self.target.clone(),
            l: self.l.clone(),
            m: self.m.clone(),
            n: self.n.clone(),
        }
    }
}

impl<C: AbelianCategory> MorphismOfSes<C> {
    pub fn new(cat: &C, source: Ses<C>, target: Ses<C>, l: C::Mor, m: C::Mor, n: C::Mor) -> Result<Self> {
        let ends = [
            (&l, source.l(cat), target.l(cat)),
            (&m, source.m(cat), target.m(cat)),
            (&n, source.n(cat), target.n(cat)),
        ];
        if ends.iter().any(|(f, s, t)| cat.source(f) != *s || cat.target(f) != *t) {
            return Err(Error::InvalidFixture("vertical map has the wrong ends".into()));
        }
        let left = cat.equal(&cat.compose(&target.i, &l)?, &cat.compose(&m, &source.i)?)?;
        let right = cat.equal(&cat.compose(&target.p, &m)?, &cat.compose(&n, &source.p)?)?;
        if !left || !right {
            return Err(Error::InvalidFixture("vertical maps do not commute with the sequences".into()));
        }
        Ok(MorphismOfSes {
            source,
            target,
            l,
            m,
            n,
        })
    }

    pub fn identity(cat: &C, s: &Ses<C>) -> Self {
        MorphismOfSes {
            source: s.clone(),
            target: s.clone(),
            l: cat.identity(&s.l(cat)),
            m: cat.identity(&s.m(cat)),
            n: cat.identity(&s.n(cat)),
        }
    }
}

/// `… → F_n(L) → F_n(M) → F_n(N) → F_{n-1}(L) → … → F_0(N) → 0`, computed
/// for `n ≤ n_max + 1`.
pub struct Les<C: AbelianCategory> {
    pub n_max: usize,
    pub complexes: SesOfComplexes<C>,
    /// Homology of the three complexes, indexed `[L, M, N][n]`.
    pub homology: [Vec<Homology<C>>; 3],
    /// `F_n(L) → F_n(M)`.
    pub f: Vec<C::Mor>,
    /// `F_n(M) → F_n(N)`.
    pub g: Vec<C::Mor>,
    /// `delta[n - 1] = δ_n : F_n(N) → F_{n-1}(L)`.
    pub delta: Vec<C::Mor>,
}

/// Exactness verdict per position of a long exact sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LesCheck {
    pub positions: Vec<(String, bool)>,
}

impl LesCheck {
    pub fn all_exact(&self) -> bool {
        self.positions.iter().all(|(_, ok)| *ok)
    }
}

fn exact_or_false<C: AbelianCategory>(cat: &C, f: &C::Mor, g: &C::Mor) -> Result<bool> {
    match cat.is_exact_at(f, g) {
        Ok(b) => Ok(b),
        Err(Error::CompositeNonzero(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

impl<C: AbelianCategory> Les<C> {
    pub fn object(&self, which: usize, n: usize) -> &C::Obj {
        &self.homology[which][n].object
    }

    /// Exactness at `F_n(L)`, `F_n(M)`, `F_n(N)` for `n ≤ n_max`.
    pub fn check(&self, cat: &C) -> Result<LesCheck> {
        let mut positions = Vec::new();
        for n in (0..=self.n_max).rev() {
            positions.push((format!("F{}(L)", n), exact_or_false(cat, &self.delta[n], &self.f[n])?));
            positions.push((format!("F{}(M)", n), exact_or_false(cat, &self.f[n], &self.g[n])?));
            let at_n = if n == 0 {
                cat.is_epi(&self.g[0])?
            } else {
                exact_or_false(cat, &self.g[n], &self.delta[n - 1])?
            };
            positions.push((format!("F{}(N)", n), at_n));
        }
        Ok(LesCheck { positions })
    }
}

/// The long exact homology sequence of a short exact sequence of complexes
/// (each of length at least `n_max + 2`).
pub fn les_from_complexes<C: AbelianCategory>(cat: &C, ses: SesOfComplexes<C>, n_max: usize) -> Result<Les<C>> {
    let top = n_max + 1;
    let hs = |c: &super::Complex<C>| -> Result<Vec<Homology<C>>> { (0..=top).map(|n| homology_at(cat, c, n)).collect() };
    let homology = [hs(&ses.a)?, hs(&ses.b)?, hs(&ses.c)?];
    let mut f = Vec::new();
    let mut g = Vec::new();
    let mut delta = Vec::new();
    for n in 0..=top {
        f.push(homology_map(cat, &homology[0][n], &homology[1][n], &ses.i[n])?);
        g.push(homology_map(cat, &homology[1][n], &homology[2][n], &ses.p[n])?);
        if n >= 1 {
            delta.push(connecting(cat, &ses, n, &homology[2][n], &homology[0][n - 1], None)?);
        }
    }
    Ok(Les {
        n_max,
        complexes: ses,
        homology,
        f,
        g,
        delta,
    })
}

/// The resolutions behind a long exact sequence of derived functors.
pub struct LesResolutions<C: AbelianCategory> {
    pub l: Resolution<C>,
    pub m: Resolution<C>,
    pub n: Resolution<C>,
}

/// Long exact sequence of `L_*F` on `s`, via the horseshoe resolution.
pub fn les_of_ses<F: AdditiveFunctor>(
    f: &F,
    s: &Ses<F::Src>,
    n_max: usize,
) -> Result<(Les<F::Dst>, LesResolutions<F::Src>)> {
    let src = f.source_category();
    let len = n_max + 2;
    let res_l = resolve(&src, &s.l(&src), len)?;
    let res_n = resolve(&src, &s.n(&src), len)?;
    let hs = horseshoe(&src, &s.i, &s.p, &res_l, &res_n)?;
    let ses = SesOfComplexes {
        a: apply_functor(f, &res_l.complex)?,
        b: apply_functor(f, &hs.resolution.complex)?,
        c: apply_functor(f, &res_n.complex)?,
        i: apply_functor_maps(f, &hs.inj)?,
        p: apply_functor_maps(f, &hs.proj)?,
    };
    let les = les_from_complexes(&f.target_category(), ses, n_max)?;
    Ok((
        les,
        LesResolutions {
            l: res_l,
            m: hs.resolution,
            n: res_n,
        },
    ))
}

/// Two long exact sequences joined by vertical maps induced from chain maps
/// between the underlying complexes.
pub struct LadderResult<C: AbelianCategory> {
    /// `[L, M, N][n]`.
    pub vertical: [Vec<C::Mor>; 3],
    pub squares: Vec<(String, bool)>,
    pub top: LesCheck,
    pub bottom: LesCheck,
}

impl<C: AbelianCategory> LadderResult<C> {
    pub fn rows_exact(&self) -> bool {
        self.top.all_exact() && self.bottom.all_exact()
    }

    pub fn squares_commute(&self) -> bool {
        self.squares.iter().all(|(_, ok)| *ok)
    }

    pub fn passed(&self) -> bool {
        self.rows_exact() && self.squares_commute()
    }
}

pub fn ladder_between<C: AbelianCategory>(
    cat: &C,
    top: &Les<C>,
    bottom: &Les<C>,
    chain: [&[C::Mor]; 3],
) -> Result<LadderResult<C>> {
    let n_top = top.n_max.min(bottom.n_max) + 1;
    let mut vertical: [Vec<C::Mor>; 3] = [vec![], vec![], vec![]];
    for (x, v) in vertical.iter_mut().enumerate() {
        for n in 0..=n_top {
            v.push(homology_map(cat, &top.homology[x][n], &bottom.homology[x][n], &chain[x][n])?);
        }
    }
    let mut squares = Vec::new();
    let commutes = |a: &C::Mor, b: &C::Mor, c: &C::Mor, d: &C::Mor| -> Result<bool> {
        // a ∘ b = c ∘ d
        cat.equal(&cat.compose(a, b)?, &cat.compose(c, d)?)
    };
    for n in 0..n_top {
        squares.push((
            format!("F{}(L) → F{}(M)", n, n),
            commutes(&bottom.f[n], &vertical[0][n], &vertical[1][n], &top.f[n])?,
        ));
        squares.push((
            format!("F{}(M) → F{}(N)", n, n),
            commutes(&bottom.g[n], &vertical[1][n], &vertical[2][n], &top.g[n])?,
        ));
    }
    for n in 1..=n_top {
        squares.push((
            format!("δ{} : F{}(N) → F{}(L)", n, n, n - 1),
            commutes(&bottom.delta[n - 1], &vertical[2][n], &vertical[0][n - 1], &top.delta[n - 1])?,
        ));
    }
    Ok(LadderResult {
        vertical,
        squares,
        top: top.check(cat)?,
        bottom: bottom.check(cat)?,
    })
}

/// Outcome of checking the δ-functor axioms on a list of fixtures.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DeltaReport {
    pub cases: usize,
    pub exact_sequences: usize,
    pub commuting_squares: usize,
    pub total_squares: usize,
    pub failures: Vec<String>,
}

impl DeltaReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(&mut self, other: DeltaReport) {
        self.cases += other.cases;
        self.exact_sequences += other.exact_sequences;
        self.commuting_squares += other.commuting_squares;
        self.total_squares += other.total_squares;
        self.failures.extend(other.failures);
    }
}

/// Ladder of `L_*F` along one morphism of short exact sequences.
pub fn delta_ladder<F: AdditiveFunctor>(f: &F, mor: &MorphismOfSes<F::Src>, n_max: usize) -> Result<LadderResult<F::Dst>> {
    let src = f.source_category();
    let (top, rt) = les_of_ses(f, &mor.source, n_max)?;
    let (bottom, rb) = les_of_ses(f, &mor.target, n_max)?;
    let lift = |p: &Resolution<F::Src>, q: &Resolution<F::Src>, g: &<F::Src as AbelianCategory>::Mor| {
        lift_chain_map(&src, p, q, g).and_then(|maps| apply_functor_maps(f, &maps))
    };
    let cl = lift(&rt.l, &rb.l, &mor.l)?;
    let cm = lift(&rt.m, &rb.m, &mor.m)?;
    let cn = lift(&rt.n, &rb.n, &mor.n)?;
    ladder_between(&f.target_category(), &top, &bottom, [&cl, &cm, &cn])
}

/// Axiom (ii): every long exact sequence is exact; axiom (iii): every
/// square induced by a morphism of short exact sequences commutes,
/// including the δ-squares. Axiom (i) holds by construction (no negative
/// degrees are ever produced).
pub fn delta_axiom_suite<F: AdditiveFunctor>(f: &F, fixtures: &[MorphismOfSes<F::Src>], n_max: usize) -> Result<DeltaReport> {
    let mut report = DeltaReport::default();
    for (k, mor) in fixtures.iter().enumerate() {
        let ladder = delta_ladder(f, mor, n_max)?;
        report.cases += 1;
        report.exact_sequences += ladder.top.all_exact() as usize + ladder.bottom.all_exact() as usize;
        report.total_squares += ladder.squares.len();
        report.commuting_squares += ladder.squares.iter().filter(|(_, ok)| *ok).count();
        if !ladder.rows_exact() {
            report.failures.push(format!("fixture {}: long exact sequence not exact", k));
        }
        for (name, ok) in &ladder.squares {
            if !ok {
                report.failures.push(format!("fixture {}: square {} does not commute", k, name));
            }
        }
    }
    Ok(report)
}

/// For a long exact sequence in `C^I`: each component sequence is exact in
/// `C`, and every map of the sequence is natural (the `γ^{ij}` squares).
pub fn diagram_les_components<C: AbelianCategory>(cat: &DiagramCat<C>, les: &Les<DiagramCat<C>>) -> Result<Vec<(String, bool)>> {
    let idx = cat.index().clone();
    let base = cat.base();
    let mut out = Vec::new();
    for (i, name) in idx.objects().iter().enumerate() {
        let mut ok = true;
        for n in 0..=les.n_max {
            let (d, f, g) = (les.delta[n].component(i), les.f[n].component(i), les.g[n].component(i));
            ok &= exact_or_false(base, d, f)? && exact_or_false(base, f, g)?;
            ok &= if n == 0 {
                base.is_epi(g)?
            } else {
                exact_or_false(base, g, les.delta[n - 1].component(i))?
            };
        }
        out.push((format!("component {}", name), ok));
    }
    let mut natural = true;
    for maps in [&les.f, &les.g, &les.delta] {
        for m in maps.iter() {
            natural &= cat
                .check_morphism(m.source(), m.target(), m.components())?
                .is_none();
        }
    }
    out.push(("structure-map squares".into(), natural));
    Ok(out)
}

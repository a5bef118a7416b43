//! Cartan–Eilenberg resolutions of bounded complexes and the Grothendieck
//! spectral sequence of a composite `G ∘ F`.

use crate::abelian::AbelianCategory;
use crate::error::{Error, Result};
use crate::functor::{AdditiveFunctor, FunctorSpec};
use crate::homology::{apply_functor, derived_all, horseshoe, resolve, Complex, Horseshoe};
use crate::linalg::FpMatrix;
use crate::module::{ModCat, ModMor, Module, Ring};

use super::double::{ss_pages_trusted, DoubleComplex, SSResult};

/// A first-quadrant grid `[p][q]` with `dh : (p, q) → (p-1, q)` and
/// `dv : (p, q) → (p, q-1)`; the edge maps go to the zero object.
pub struct Grid<C: AbelianCategory> {
    pub objects: Vec<Vec<C::Obj>>,
    pub dh: Vec<Vec<C::Mor>>,
    pub dv: Vec<Vec<C::Mor>>,
}

impl<C: AbelianCategory> Grid<C> {
    pub fn size(&self) -> usize {
        self.objects.len()
    }
}

/// Cartan–Eilenberg resolution of `x`, as the grid `Q_{s,t}` with the
/// resolution degree `s` as `p` and the complex degree `t` as `q`. Only
/// cells with `s + t ≤ total` are built; the rest are zero. Exact for
/// total degree ≤ `total` when `x` has at least `total + 2` terms.
pub fn cartan_eilenberg<C: AbelianCategory>(cat: &C, x: &Complex<C>, total: usize) -> Result<Grid<C>> {
    let tn = x.len().min(total + 1);
    let zero = cat.zero_object();
    let mut zm = Vec::new();
    for t in 0..x.len() {
        zm.push(cat.kernel(&x.outgoing(cat, t))?.1);
    }
    // B_t → Z_t and X_{t+1} → B_t
    let mut bm = Vec::new();
    let mut c_next = Vec::new();
    for t in 0..tn {
        if t + 1 < x.len() {
            let e = cat
                .factor_through_mono(&zm[t], x.d(t + 1))?
                .ok_or_else(|| Error::CompositeNonzero(format!("d_{} ∘ d_{} ≠ 0", t, t + 1)))?;
            let im = cat.image(&e)?;
            bm.push(im.mono);
            c_next.push(Some(im.epi));
        } else {
            bm.push(cat.zero_morphism(&zero, &cat.source(&zm[t])));
            c_next.push(None);
        }
    }
    let mut hs2: Vec<Horseshoe<C>> = Vec::new();
    let mut hs1: Vec<Horseshoe<C>> = Vec::new();
    let mut prev_rb = resolve(cat, &zero, total)?;
    for t in 0..tn {
        let len = total - t;
        let (_, q) = cat.cokernel(&bm[t])?;
        let rb = resolve(cat, &cat.source(&bm[t]), len)?;
        let rh = resolve(cat, &cat.target(&q), len)?;
        let h1 = horseshoe(cat, &bm[t], &q, &rb, &rh)?;
        let c_t = if t == 0 {
            cat.zero_morphism(x.object(0), &zero)
        } else {
            c_next[t - 1].clone().expect("image below the top")
        };
        let h2 = horseshoe(cat, &zm[t], &c_t, &h1.resolution, &prev_rb)?;
        hs1.push(h1);
        hs2.push(h2);
        prev_rb = rb;
    }

    let size = total + 1;
    let mut objects = vec![vec![zero.clone(); size]; size];
    for (t, h) in hs2.iter().enumerate() {
        for (s, row) in objects.iter_mut().enumerate().take(total - t + 1) {
            row[t] = h.resolution.complex.object(s).clone();
        }
    }
    let mut dh = Vec::new();
    let mut dv = Vec::new();
    for s in 0..size {
        let mut hrow = Vec::new();
        let mut vrow = Vec::new();
        for t in 0..size {
            let obj = &objects[s][t];
            let live = s + t <= total && t < tn;
            let below_s = if s == 0 { zero.clone() } else { objects[s - 1][t].clone() };
            let below_t = if t == 0 { zero.clone() } else { objects[s][t - 1].clone() };
            hrow.push(if live && s >= 1 {
                hs2[t].resolution.complex.d(s).clone()
            } else {
                cat.zero_morphism(obj, &below_s)
            });
            vrow.push(if live && t >= 1 {
                cat.compose_all(&[&hs2[t - 1].inj[s], &hs1[t - 1].inj[s], &hs2[t].proj[s]])?
            } else {
                cat.zero_morphism(obj, &below_t)
            });
        }
        dh.push(hrow);
        dv.push(vrow);
    }
    Ok(Grid { objects, dh, dv })
}

pub fn apply_grid<F: AdditiveFunctor>(f: &F, g: &Grid<F::Src>) -> Result<Grid<F::Dst>> {
    let objs = g
        .objects
        .iter()
        .map(|row| row.iter().map(|o| f.apply_obj(o)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let maps = |m: &Vec<Vec<<F::Src as AbelianCategory>::Mor>>| {
        m.iter()
            .map(|row| row.iter().map(|x| f.apply_mor(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
    };
    Ok(Grid {
        objects: objs,
        dh: maps(&g.dh)?,
        dv: maps(&g.dv)?,
    })
}

pub(crate) fn fp_dim(m: &Module) -> Result<usize> {
    m.vector_dim()
        .ok_or_else(|| Error::Unsupported("spectral sequences need modules over a prime field".into()))
}

pub(crate) fn fp_matrix(f: &ModMor) -> Result<FpMatrix> {
    f.matrix()
        .fp()
        .cloned()
        .ok_or_else(|| Error::Unsupported("spectral sequences need modules over a prime field".into()))
}

/// The double complex of vector spaces underlying a grid, read through
/// `obj` and `mor`.
pub fn grid_to_double<C: AbelianCategory>(
    prime: u64,
    g: &Grid<C>,
    obj: impl Fn(&C::Obj) -> Result<usize>,
    mor: impl Fn(&C::Mor) -> Result<FpMatrix>,
) -> Result<DoubleComplex> {
    let dims = g
        .objects
        .iter()
        .map(|row| row.iter().map(&obj).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let conv = |m: &Vec<Vec<C::Mor>>| {
        m.iter()
            .map(|row| row.iter().map(&mor).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
    };
    DoubleComplex::new(prime, dims, conv(&g.dh)?, conv(&g.dv)?)
}

fn field_prime(ring: &Ring) -> Result<u64> {
    ring.as_algebra()
        .map(|a| a.prime())
        .ok_or_else(|| Error::Unsupported("spectral sequences are only computed over prime-field-based rings".into()))
}

/// Whether `L_nG(F(P)) = 0` for `0 < n ≤ n_max` on each witness.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AcyclicReport {
    pub witnesses: usize,
    /// `(witness index, first n with L_nG(F(P)) ≠ 0)`.
    pub failures: Vec<(usize, usize)>,
}

impl AcyclicReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn check_acyclic_hypothesis(f: &FunctorSpec, g: &FunctorSpec, witnesses: &[Module], n_max: usize) -> Result<AcyclicReport> {
    let mut report = AcyclicReport {
        witnesses: witnesses.len(),
        failures: Vec::new(),
    };
    for (k, p) in witnesses.iter().enumerate() {
        let fp = f.apply_obj(p)?;
        let hs = derived_all(g, &fp, n_max)?;
        if let Some(n) = (1..=n_max).find(|&n| !hs[n].object.is_zero()) {
            report.failures.push((k, n));
        }
    }
    Ok(report)
}

/// `dim (L_pG)(L_qF)(A)` for `p + q ≤ n_max`, indexed `[p][q]`, and
/// `dim L_n(GF)(A)` for `n ≤ n_max`, each from its own resolutions.
pub fn independent_dims(f: &FunctorSpec, g: &FunctorSpec, a: &Module, n_max: usize) -> Result<(Vec<Vec<usize>>, Vec<usize>)> {
    let mut e2 = vec![vec![0; n_max + 1]; n_max + 1];
    let lf = derived_all(f, a, n_max)?;
    for (q, h) in lf.iter().enumerate() {
        let lg = derived_all(g, &h.object, n_max - q)?;
        for (p, x) in lg.iter().enumerate() {
            e2[p][q] = fp_dim(&x.object)?;
        }
    }
    let gf = FunctorSpec::compose(g.clone(), f.clone())?;
    let abut = derived_all(&gf, a, n_max)?
        .iter()
        .map(|h| fp_dim(&h.object))
        .collect::<Result<Vec<_>>>()?;
    Ok((e2, abut))
}

/// The spectral sequence `E²_{pq} = (L_pG)(L_qF)(A) ⇒ L_{p+q}(GF)(A)`
/// together with independent computations of both ends.
#[derive(Clone, Debug, PartialEq)]
pub struct GrothendieckSS {
    pub ss: SSResult,
    pub hypothesis: AcyclicReport,
    pub e2_independent: Vec<Vec<usize>>,
    pub abutment_independent: Vec<usize>,
}

impl GrothendieckSS {
    pub fn n_max(&self) -> usize {
        self.ss.trusted_degree
    }

    pub fn e2_matches(&self) -> bool {
        let n = self.n_max();
        (0..=n).all(|p| (0..=n - p).all(|q| self.ss.e2()[p][q] == self.e2_independent[p][q]))
    }

    pub fn abutment_matches(&self) -> bool {
        self.ss.abutment == self.abutment_independent
    }

    pub fn passed(&self) -> bool {
        self.hypothesis.passed() && self.ss.pages_consistent && self.ss.converges && self.e2_matches() && self.abutment_matches()
    }
}

pub(crate) fn check_composable(f: &FunctorSpec, g: &FunctorSpec, ring: &Ring) -> Result<u64> {
    if f.target_ring() != g.source_ring() {
        return Err(Error::RingMismatch("G does not start where F lands".into()));
    }
    if *ring != f.source_ring() {
        return Err(Error::RingMismatch("object is not in the source of F".into()));
    }
    field_prime(ring)?;
    field_prime(&f.target_ring())?;
    field_prime(&g.target_ring())
}

pub fn grothendieck_ss(f: &FunctorSpec, g: &FunctorSpec, a: &Module, n_max: usize) -> Result<GrothendieckSS> {
    let prime = check_composable(f, g, &a.ring())?;
    let total = n_max + 1;
    let src = f.source_category();
    let res = resolve(&src, a, total + 1)?;
    let x = apply_functor(f, &res.complex)?;
    let dcat: ModCat = f.target_category();
    let grid = apply_grid(g, &cartan_eilenberg(&dcat, &x, total)?)?;
    let dc = grid_to_double(prime, &grid, fp_dim, fp_matrix)?;
    let ss = ss_pages_trusted(&dc, n_max + 2, n_max)?;

    let mut witnesses: Vec<Module> = Vec::new();
    for p in res.complex.objects() {
        if !witnesses.contains(p) {
            witnesses.push(p.clone());
        }
    }
    let hypothesis = check_acyclic_hypothesis(f, g, &witnesses, n_max)?;
    let (e2_independent, abutment_independent) = independent_dims(f, g, a, n_max)?;
    Ok(GrothendieckSS {
        ss,
        hypothesis,
        e2_independent,
        abutment_independent,
    })
}

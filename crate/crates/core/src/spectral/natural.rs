//! The spectral sequence of a composite applied to a diagram: one spectral
//! sequence per object of the index, and the maps between them induced by
//! the structure maps.

use std::sync::Arc;

use crate::diagram::{Diagram, DiagramCat};
use crate::error::Result;
use crate::functor::{AdditiveFunctor, Exponent, FunctorSpec};
use crate::homology::{apply_functor, derived_map, resolve};
use crate::linalg::FpMatrix;
use crate::module::ModCat;
use crate::smallcat::FinCat;

use super::ce::{
    apply_grid, cartan_eilenberg, check_acyclic_hypothesis, check_composable, fp_dim, fp_matrix, grid_to_double,
    independent_dims, GrothendieckSS, Grid,
};
use super::double::{induced_cell_map, page_cells, ss_pages_trusted, total_map, DoubleComplex, DoubleMap, FilteredTotal};

/// Checks for one structure map `m : i → j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalityReport {
    pub morphism: String,
    /// The structure maps form a map of double complexes.
    pub chain_map: bool,
    /// `d² ∘ E²(m) = E²(m) ∘ d²` on every trusted cell.
    pub e2_squares: bool,
    /// The same for `r > 2`; recorded, not required.
    pub higher_squares: bool,
    /// `rank E²_{pq}(m) = rank (L_pG)(L_qF)(A(m))` from lifted chain maps.
    pub e2_ranks: bool,
    /// `rank` of the abutment map equals `rank L_n(GF)(A(m))`.
    pub abutment_ranks: bool,
    /// The abutment map sends `F_p H_n(i)` into `F_p H_n(j)`.
    pub filtration: bool,
}

impl NaturalityReport {
    pub fn passed(&self) -> bool {
        self.chain_map && self.e2_squares && self.e2_ranks && self.abutment_ranks && self.filtration
    }
}

pub struct ComponentwiseSS {
    pub index: Arc<FinCat>,
    pub components: Vec<GrothendieckSS>,
    pub naturality: Vec<NaturalityReport>,
}

impl ComponentwiseSS {
    pub fn passed(&self) -> bool {
        self.components.iter().all(GrothendieckSS::passed) && self.naturality.iter().all(NaturalityReport::passed)
    }
}

fn component_double(prime: u64, g: &Grid<DiagramCat<ModCat>>, i: usize) -> Result<DoubleComplex> {
    grid_to_double(prime, g, |d: &Diagram<ModCat>| fp_dim(d.object(i)), |f| fp_matrix(f.component(i)))
}

fn structure_map(g: &Grid<DiagramCat<ModCat>>, m: usize) -> Result<DoubleMap> {
    let maps = g
        .objects
        .iter()
        .map(|row| row.iter().map(|d| fp_matrix(d.map(m))).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(DoubleMap { maps })
}

fn map_rank(f: &crate::module::ModMor) -> Result<usize> {
    Ok(fp_matrix(f)?.rank())
}

fn naturality(
    label: &str,
    s: (&DoubleComplex, &FilteredTotal),
    t: (&DoubleComplex, &FilteredTotal),
    phi: &DoubleMap,
    n_max: usize,
    e2_ranks: &[Vec<usize>],
    abut_ranks: &[usize],
) -> Result<NaturalityReport> {
    let chain_map = phi.check(s.0, t.0)?;
    let (ts, tt) = (s.1, t.1);
    let rows = s.0.rows();
    let tmaps: Vec<FpMatrix> = (0..=(n_max + 1).min(ts.top_degree().unwrap_or(0)))
        .map(|n| total_map(ts, tt, phi, n))
        .collect();
    let mut e2_squares = true;
    let mut higher_squares = true;
    let mut e2_rank_ok = true;
    for r in 2..=ts.r_infinity() {
        let cs = page_cells(ts, rows, r)?;
        let ct = page_cells(tt, rows, r)?;
        let mut cell_maps = vec![vec![None; rows]; ts.cols()];
        for p in 0..ts.cols() {
            for q in 0..rows {
                if p + q <= n_max + 1 {
                    cell_maps[p][q] = Some(induced_cell_map(&tmaps[p + q], &cs[p][q], &ct[p][q])?);
                }
            }
        }
        for p in 0..ts.cols() {
            for q in 0..rows {
                let n = p + q;
                let Some(f) = &cell_maps[p][q] else { continue };
                if r == 2 && n <= n_max && f.rank() != e2_ranks[p][q] {
                    e2_rank_ok = false;
                }
                if n == 0 || p < r || q + r - 1 >= rows {
                    continue;
                }
                let Some(g) = &cell_maps[p - r][q + r - 1] else { continue };
                let ds = ts.page_differential(r, n, p, &cs[p][q], Some(&cs[p - r][q + r - 1]))?;
                let dt = tt.page_differential(r, n, p, &ct[p][q], Some(&ct[p - r][q + r - 1]))?;
                let ok = dt.mul(f)? == g.mul(&ds)?;
                if r == 2 {
                    e2_squares &= ok;
                } else {
                    higher_squares &= ok;
                }
            }
        }
    }

    let mut abutment_ranks = true;
    let mut filtration = true;
    for n in 0..=n_max {
        let boundaries_t = if n < tt.top_degree().unwrap_or(0) {
            tt.differential(n + 1).clone()
        } else {
            FpMatrix::zeros(tt.prime(), tt.dim(n), 0)
        };
        let rank_b = boundaries_t.rank();
        let cycles_s = ts.z(n, ts.cols() as isize, ts.cols() as isize + 1);
        let image = tmaps[n].mul(&cycles_s)?;
        if image.hstack(&boundaries_t)?.rank() - rank_b != abut_ranks[n] {
            abutment_ranks = false;
        }
        for p in 0..=n.min(ts.cols() - 1) {
            let zs = ts.z(n, p as isize, p as isize + 1);
            let zt = tt.z(n, p as isize, p as isize + 1);
            let span = zt.hstack(&boundaries_t)?;
            let with = span.hstack(&tmaps[n].mul(&zs)?)?;
            if with.rank() != span.rank() {
                filtration = false;
            }
        }
    }
    Ok(NaturalityReport {
        morphism: label.to_string(),
        chain_map,
        e2_squares,
        higher_squares,
        e2_ranks: e2_rank_ok,
        abutment_ranks,
        filtration,
    })
}

/// Builds everything inside `D^I` so the structure maps of the diagram
/// give maps between the component double complexes.
pub fn ss_componentwise(f: &FunctorSpec, g: &FunctorSpec, a: &Diagram<ModCat>, n_max: usize) -> Result<ComponentwiseSS> {
    let index = a.index().clone();
    let prime = check_composable(f, g, &f.source_ring())?;
    for o in a.objects() {
        check_composable(f, g, &o.ring())?;
    }
    let ef = Exponent::new(f.clone(), index.clone());
    let eg = Exponent::new(g.clone(), index.clone());
    let total = n_max + 1;
    let res = resolve(&ef.source_category(), a, total + 1)?;
    let x = apply_functor(&ef, &res.complex)?;
    let grid = apply_grid(&eg, &cartan_eilenberg(&ef.target_category(), &x, total)?)?;

    let mut doubles = Vec::new();
    let mut components = Vec::new();
    for i in 0..index.num_objects() {
        let dc = component_double(prime, &grid, i)?;
        let ss = ss_pages_trusted(&dc, n_max + 2, n_max)?;
        let mut witnesses = Vec::new();
        for p in res.complex.objects() {
            if !witnesses.contains(p.object(i)) {
                witnesses.push(p.object(i).clone());
            }
        }
        let hypothesis = check_acyclic_hypothesis(f, g, &witnesses, n_max)?;
        let (e2_independent, abutment_independent) = independent_dims(f, g, a.object(i), n_max)?;
        components.push(GrothendieckSS {
            ss,
            hypothesis,
            e2_independent,
            abutment_independent,
        });
        let t = FilteredTotal::new(&dc)?;
        doubles.push((dc, t));
    }

    let gf = FunctorSpec::compose(g.clone(), f.clone())?;
    let mut reports = Vec::new();
    for (m, mor) in index.morphisms().iter().enumerate() {
        if index.is_identity(m) {
            continue;
        }
        let (i, j) = (mor.source, mor.target);
        let phi = structure_map(&grid, m)?;
        let mut e2_ranks = vec![vec![0; n_max + 1]; n_max + 1];
        for q in 0..=n_max {
            let (_, _, lq) = derived_map(f, a.map(m), q)?;
            for (p, row) in e2_ranks.iter_mut().enumerate().take(n_max - q + 1) {
                let (_, _, lp) = derived_map(g, &lq, p)?;
                row[q] = map_rank(&lp)?;
            }
        }
        let abut_ranks = (0..=n_max)
            .map(|n| derived_map(&gf, a.map(m), n).and_then(|(_, _, h)| map_rank(&h)))
            .collect::<Result<Vec<_>>>()?;
        reports.push(naturality(
            &mor.label,
            (&doubles[i].0, &doubles[i].1),
            (&doubles[j].0, &doubles[j].1),
            &phi,
            n_max,
            &e2_ranks,
            &abut_ranks,
        )?);
    }
    Ok(ComponentwiseSS {
        index,
        components,
        naturality: reports,
    })
}

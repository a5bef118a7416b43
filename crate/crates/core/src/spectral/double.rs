//! First-quadrant double complexes of vector spaces over a prime field and
//! the spectral sequence of their column filtration.

use crate::error::{Error, Result};
use crate::linalg::{FpMatrix, FpVector};

/// `C_{p,q}` for `0 ≤ p < cols`, `0 ≤ q < rows`, with commuting
/// differentials `dh : C_{p,q} → C_{p-1,q}` and `dv : C_{p,q} → C_{p,q-1}`.
/// The total differential is `dh + (-1)^p dv`.
#[derive(Clone, Debug, PartialEq)]
pub struct DoubleComplex {
    prime: u64,
    dims: Vec<Vec<usize>>,
    dh: Vec<Vec<FpMatrix>>,
    dv: Vec<Vec<FpMatrix>>,
}

impl DoubleComplex {
    /// `dh[p][q]` has shape `dim C_{p-1,q} × dim C_{p,q}` (zero rows when
    /// `p = 0`); likewise `dv[p][q]`.
    pub fn new(prime: u64, dims: Vec<Vec<usize>>, dh: Vec<Vec<FpMatrix>>, dv: Vec<Vec<FpMatrix>>) -> Result<Self> {
        let dc = DoubleComplex { prime, dims, dh, dv };
        dc.validate()?;
        Ok(dc)
    }

    /// All differentials zero.
    pub fn zero(prime: u64, dims: Vec<Vec<usize>>) -> Self {
        let cols = dims.len();
        let rows = dims.first().map_or(0, |c| c.len());
        let dim = |p: Option<usize>, q: Option<usize>| match (p, q) {
            (Some(p), Some(q)) => dims[p][q],
            _ => 0,
        };
        let dh = (0..cols)
            .map(|p| (0..rows).map(|q| FpMatrix::zeros(prime, dim(p.checked_sub(1), Some(q)), dims[p][q])).collect())
            .collect();
        let dv = (0..cols)
            .map(|p| (0..rows).map(|q| FpMatrix::zeros(prime, dim(Some(p), q.checked_sub(1)), dims[p][q])).collect())
            .collect();
        DoubleComplex { prime, dims, dh, dv }
    }

    fn validate(&self) -> Result<()> {
        let cols = self.cols();
        let rows = self.rows();
        if self.dims.iter().any(|c| c.len() != rows) || self.dh.len() != cols || self.dv.len() != cols {
            return Err(Error::DimensionMismatch("double complex grid is not rectangular".into()));
        }
        for p in 0..cols {
            if self.dh[p].len() != rows || self.dv[p].len() != rows {
                return Err(Error::DimensionMismatch("double complex grid is not rectangular".into()));
            }
            for q in 0..rows {
                let h = &self.dh[p][q];
                let v = &self.dv[p][q];
                let h_rows = if p == 0 { 0 } else { self.dims[p - 1][q] };
                let v_rows = if q == 0 { 0 } else { self.dims[p][q - 1] };
                if h.cols() != self.dims[p][q] || h.rows() != h_rows || v.cols() != self.dims[p][q] || v.rows() != v_rows {
                    return Err(Error::DimensionMismatch(format!("differential shape at ({}, {})", p, q)));
                }
                if h.prime() != self.prime || v.prime() != self.prime {
                    return Err(Error::RingMismatch("differentials over different primes".into()));
                }
                if p >= 2 && !self.dh[p - 1][q].mul(h)?.is_zero() {
                    return Err(Error::CompositeNonzero(format!("dh ∘ dh at ({}, {})", p, q)));
                }
                if q >= 2 && !self.dv[p][q - 1].mul(v)?.is_zero() {
                    return Err(Error::CompositeNonzero(format!("dv ∘ dv at ({}, {})", p, q)));
                }
                if p >= 1 && q >= 1 {
                    let a = self.dv[p - 1][q].mul(h)?;
                    let b = self.dh[p][q - 1].mul(v)?;
                    if a != b {
                        return Err(Error::CompositeNonzero(format!("square at ({}, {}) does not commute", p, q)));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// Number of columns (`p` values).
    pub fn cols(&self) -> usize {
        self.dims.len()
    }

    /// Number of rows (`q` values).
    pub fn rows(&self) -> usize {
        self.dims.first().map_or(0, |c| c.len())
    }

    pub fn dim(&self, p: usize, q: usize) -> usize {
        self.dims[p][q]
    }

    pub fn dims(&self) -> &[Vec<usize>] {
        &self.dims
    }

    pub fn dh(&self, p: usize, q: usize) -> &FpMatrix {
        &self.dh[p][q]
    }

    pub fn dv(&self, p: usize, q: usize) -> &FpMatrix {
        &self.dv[p][q]
    }

    pub fn top_degree(&self) -> usize {
        (self.cols() + self.rows()).saturating_sub(2)
    }
}

/// A map of double complexes, one matrix per cell.
#[derive(Clone, Debug, PartialEq)]
pub struct DoubleMap {
    pub maps: Vec<Vec<FpMatrix>>,
}

impl DoubleMap {
    /// Checks shapes and commutation with both differentials.
    pub fn check(&self, s: &DoubleComplex, t: &DoubleComplex) -> Result<bool> {
        if s.cols() != t.cols() || s.rows() != t.rows() || self.maps.len() != s.cols() {
            return Ok(false);
        }
        for p in 0..s.cols() {
            for q in 0..s.rows() {
                let f = &self.maps[p][q];
                if f.rows() != t.dim(p, q) || f.cols() != s.dim(p, q) {
                    return Ok(false);
                }
                if p >= 1 && t.dh(p, q).mul(f)? != self.maps[p - 1][q].mul(s.dh(p, q))? {
                    return Ok(false);
                }
                if q >= 1 && t.dv(p, q).mul(f)? != self.maps[p][q - 1].mul(s.dv(p, q))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// The total complex with its column filtration; `F_p T_n` is spanned by
/// the first coordinates, since blocks are listed by increasing `p`.
pub struct FilteredTotal {
    prime: u64,
    cols: usize,
    /// `blocks[n]`: `(p, offset, dim)` by increasing `p`.
    blocks: Vec<Vec<(usize, usize, usize)>>,
    dims: Vec<usize>,
    /// `d[n] : T_n → T_{n-1}`; `d[0]` has no rows.
    d: Vec<FpMatrix>,
}

/// A cell `E^r_{p,q}` as a subquotient `num / den` of `T_n`, with chosen
/// representatives for a basis.
#[derive(Clone, Debug)]
pub struct Cell {
    pub den: FpMatrix,
    pub reps: FpMatrix,
    basis: FpMatrix,
}

impl Cell {
    fn new(den: FpMatrix, reps: FpMatrix) -> Result<Self> {
        let basis = den.hstack(&reps)?;
        Ok(Cell { den, reps, basis })
    }

    pub fn dim(&self) -> usize {
        self.reps.cols()
    }

    /// Coordinates of `v` in the basis, or `None` if `v` is not in the
    /// numerator.
    pub fn coords(&self, v: &[u64]) -> Result<Option<FpVector>> {
        Ok(self.basis.solve_vec(v)?.map(|x| x[self.den.cols()..].to_vec()))
    }

    /// Columnwise [`Cell::coords`]; `None` if some column is outside.
    pub fn coords_matrix(&self, vs: &FpMatrix) -> Result<Option<FpMatrix>> {
        let k = self.den.cols();
        let rows: Vec<usize> = (k..self.basis.cols()).collect();
        Ok(self.basis.solve(vs)?.map(|x| x.select_rows(&rows)))
    }
}

fn signed(m: &FpMatrix, negative: bool) -> FpMatrix {
    if negative {
        m.neg()
    } else {
        m.clone()
    }
}

impl FilteredTotal {
    pub fn new(dc: &DoubleComplex) -> Result<Self> {
        let p0 = dc.prime();
        let top = dc.top_degree();
        let (cols, rows) = (dc.cols(), dc.rows());
        let mut blocks = Vec::new();
        let mut dims = Vec::new();
        if cols > 0 && rows > 0 {
            for n in 0..=top {
                let mut list = Vec::new();
                let mut off = 0;
                for p in 0..cols {
                    if n >= p && n - p < rows {
                        let d = dc.dim(p, n - p);
                        list.push((p, off, d));
                        off += d;
                    }
                }
                blocks.push(list);
                dims.push(off);
            }
        }
        let mut d = Vec::new();
        for n in 0..dims.len() {
            let target = if n == 0 { 0 } else { dims[n - 1] };
            let mut m = FpMatrix::zeros(p0, target, dims[n]);
            if n > 0 {
                for &(p, off, _) in &blocks[n] {
                    let q = n - p;
                    if p >= 1 {
                        if let Some(&(_, toff, _)) = blocks[n - 1].iter().find(|b| b.0 == p - 1) {
                            m.paste(toff, off, dc.dh(p, q));
                        }
                    }
                    if q >= 1 {
                        if let Some(&(_, toff, _)) = blocks[n - 1].iter().find(|b| b.0 == p) {
                            m.paste(toff, off, &signed(dc.dv(p, q), p % 2 == 1));
                        }
                    }
                }
            }
            d.push(m);
        }
        let t = FilteredTotal {
            prime: p0,
            cols,
            blocks,
            dims,
            d,
        };
        for n in 2..t.d.len() {
            if !t.d[n - 1].mul(&t.d[n])?.is_zero() {
                return Err(Error::CompositeNonzero(format!("total differential squares to nonzero at {}", n)));
            }
        }
        Ok(t)
    }

    pub fn top_degree(&self) -> Option<usize> {
        self.dims.len().checked_sub(1)
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    pub fn differential(&self, n: usize) -> &FpMatrix {
        &self.d[n]
    }

    /// `dim F_p T_n`.
    pub fn prefix(&self, n: usize, p: isize) -> usize {
        if n >= self.dims.len() || p < 0 {
            return 0;
        }
        self.blocks[n]
            .iter()
            .filter(|b| b.0 as isize <= p)
            .map(|b| b.2)
            .sum()
    }

    /// Offset and size of the block `C_{p, n-p}` in `T_n`.
    pub fn block(&self, n: usize, p: usize) -> Option<(usize, usize)> {
        self.blocks
            .get(n)?
            .iter()
            .find(|b| b.0 == p)
            .map(|b| (b.1, b.2))
    }

    /// `Z^r_p = {x ∈ F_p T_n : D x ∈ F_{p-r} T_{n-1}}`, as columns.
    pub fn z(&self, n: usize, p: isize, r: isize) -> FpMatrix {
        let dim = self.dim(n);
        let k = self.prefix(n, p);
        let basis = if n == 0 {
            FpMatrix::identity(self.prime, k)
        } else {
            let start = self.prefix(n - 1, p - r);
            let m = self.d[n].submatrix(start..self.dims[n - 1], 0..k);
            m.kernel_matrix()
        };
        let mut out = FpMatrix::zeros(self.prime, dim, basis.cols());
        out.paste(0, 0, &basis);
        out
    }

    /// `D Z^{r-1}_{p+r-1}` inside `T_n`.
    pub fn b(&self, n: usize, p: isize, r: isize) -> Result<FpMatrix> {
        if n + 1 >= self.dims.len() {
            return Ok(FpMatrix::zeros(self.prime, self.dim(n), 0));
        }
        self.d[n + 1].mul(&self.z(n + 1, p + r - 1, r - 1))
    }

    /// `E^r_{p, n-p} = Z^r_p / (Z^{r-1}_{p-1} + D Z^{r-1}_{p+r-1})`.
    pub fn cell(&self, r: usize, n: usize, p: usize) -> Result<Cell> {
        let (r, pi) = (r as isize, p as isize);
        let num = self.z(n, pi, r);
        let den = self.z(n, pi - 1, r - 1).hstack(&self.b(n, pi, r)?)?;
        let joint = den.hstack(&num)?;
        let rr = joint.rref();
        let split = den.cols();
        let chosen: Vec<usize> = rr.pivots.iter().filter(|&&c| c >= split).map(|&c| c - split).collect();
        if den.rank() + chosen.len() != num.rank() {
            return Err(Error::DimensionMismatch(format!(
                "denominator not inside numerator at r = {}, n = {}, p = {}",
                r, n, p
            )));
        }
        Cell::new(den, num.select_cols(&chosen))
    }

    /// `d^r : E^r_{p,q} → E^r_{p-r,q+r-1}` as a matrix in the chosen bases.
    pub fn page_differential(&self, r: usize, n: usize, p: usize, source: &Cell, target: Option<&Cell>) -> Result<FpMatrix> {
        let Some(target) = target else {
            return Ok(FpMatrix::zeros(self.prime, 0, source.dim()));
        };
        let images = self.d[n].mul(&source.reps)?;
        target
            .coords_matrix(&images)?
            .ok_or_else(|| Error::LiftFailed(format!("d^{} leaves the target cell at n = {}, p = {}", r, n, p)))
    }

    /// `dim H_n(T)`.
    pub fn homology_dim(&self, n: usize) -> usize {
        let z = self.dim(n) - self.d[n].rank();
        let b = if n + 1 < self.d.len() { self.d[n + 1].rank() } else { 0 };
        z - b
    }

    /// Stable value of `r`: beyond it every page equals `E^∞`.
    pub fn r_infinity(&self) -> usize {
        self.cols + 1
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// Number of filtration degrees.
    pub fn cols(&self) -> usize {
        self.cols
    }
}

/// One page: dimensions `[p][q]` and the differentials out of each cell.
#[derive(Clone, Debug, PartialEq)]
pub struct Page {
    pub r: usize,
    pub dims: Vec<Vec<usize>>,
    pub differentials: Vec<Vec<FpMatrix>>,
}

impl Page {
    pub fn is_zero_differential(&self) -> bool {
        self.differentials.iter().flatten().all(|m| m.is_zero())
    }
}

/// Pages `E^1 … E^{r_stop}`, `E^∞`, and the abutment, with the internal
/// consistency checks. Only cells of total degree at most `trusted_degree`
/// are meaningful when the double complex is a truncation.
#[derive(Clone, Debug, PartialEq)]
pub struct SSResult {
    pub prime: u64,
    pub trusted_degree: usize,
    /// `pages[r - 1]` is `E^r`.
    pub pages: Vec<Page>,
    pub e_inf: Vec<Vec<usize>>,
    /// `dim H_n` of the total complex for `n ≤ trusted_degree`.
    pub abutment: Vec<usize>,
    /// Smallest `r ≥ 2` from which every trusted differential vanishes.
    pub stable_from: usize,
    /// `E^{r+1} = H(E^r, d^r)` on every trusted cell.
    pub pages_consistent: bool,
    /// `Σ_{p+q=n} dim E^∞_{p,q} = dim H_n` for `n ≤ trusted_degree`.
    pub converges: bool,
}

impl SSResult {
    pub fn page(&self, r: usize) -> &Page {
        &self.pages[r - 1]
    }

    pub fn e2(&self) -> &[Vec<usize>] {
        &self.pages[1].dims
    }

    pub fn degenerates_at_e2(&self) -> bool {
        self.stable_from == 2
    }

    /// `Σ_{p+q=n} dim` over a grid.
    pub fn total_dim(grid: &[Vec<usize>], n: usize) -> usize {
        (0..=n)
            .filter(|&p| p < grid.len() && n - p < grid[p].len())
            .map(|p| grid[p][n - p])
            .sum()
    }

    /// Alternating sum of all dimensions of a grid.
    pub fn euler_characteristic(grid: &[Vec<usize>]) -> i64 {
        let mut chi = 0i64;
        for (p, col) in grid.iter().enumerate() {
            for (q, &d) in col.iter().enumerate() {
                chi += if (p + q) % 2 == 0 { d as i64 } else { -(d as i64) };
            }
        }
        chi
    }
}

/// All cells of one page, indexed `[p][q]`.
pub fn page_cells(t: &FilteredTotal, rows: usize, r: usize) -> Result<Vec<Vec<Cell>>> {
    (0..t.cols())
        .map(|p| (0..rows).map(|q| t.cell(r, p + q, p)).collect())
        .collect()
}

fn differentials(t: &FilteredTotal, cells: &[Vec<Cell>], r: usize) -> Result<Vec<Vec<FpMatrix>>> {
    let rows = cells.first().map_or(0, |c| c.len());
    let mut out = Vec::new();
    for p in 0..cells.len() {
        let mut col = Vec::new();
        for q in 0..rows {
            let n = p + q;
            let target = if p >= r && q + r - 1 < rows { Some(&cells[p - r][q + r - 1]) } else { None };
            // a target outside the grid is a zero space
            col.push(if n == 0 {
                FpMatrix::zeros(t.prime(), 0, cells[p][q].dim())
            } else {
                t.page_differential(r, n, p, &cells[p][q], target)?
            });
        }
        out.push(col);
    }
    Ok(out)
}

/// Spectral sequence of the column filtration, pages `1 ..= r_stop`.
pub fn ss_pages(dc: &DoubleComplex, r_stop: usize) -> Result<SSResult> {
    ss_pages_trusted(dc, r_stop, dc.top_degree())
}

/// As [`ss_pages`], for a double complex that agrees with the intended one
/// only in total degrees `≤ trusted + 1`.
pub fn ss_pages_trusted(dc: &DoubleComplex, r_stop: usize, trusted: usize) -> Result<SSResult> {
    let t = FilteredTotal::new(dc)?;
    let rows = dc.rows();
    let r_inf = t.r_infinity().max(r_stop).max(2);
    let mut pages = Vec::new();
    let mut cells_by_page = Vec::new();
    for r in 1..=r_inf {
        let cells = page_cells(&t, rows, r)?;
        let diffs = differentials(&t, &cells, r)?;
        let dims = cells.iter().map(|c| c.iter().map(Cell::dim).collect()).collect();
        pages.push(Page {
            r,
            dims,
            differentials: diffs,
        });
        cells_by_page.push(cells);
    }
    let trusted_cell = |p: usize, q: usize| p + q <= trusted;
    let mut consistent = true;
    for r in 1..r_inf {
        let page = &pages[r - 1];
        let next = &pages[r];
        for p in 0..t.cols() {
            for q in 0..rows {
                if !trusted_cell(p, q) {
                    continue;
                }
                let out_rank = page.differentials[p][q].rank();
                let in_rank = if q + 1 >= r && p + r < t.cols() {
                    page.differentials[p + r][q + 1 - r].rank()
                } else {
                    0
                };
                if next.dims[p][q] + out_rank + in_rank != page.dims[p][q] {
                    consistent = false;
                }
            }
        }
    }
    let mut stable_from = 2;
    for r in (2..=r_inf).rev() {
        let page = &pages[r - 1];
        let nonzero = (0..t.cols()).any(|p| (0..rows).any(|q| p + q <= trusted + 1 && !page.differentials[p][q].is_zero()));
        if nonzero {
            stable_from = r + 1;
            break;
        }
    }
    let e_inf = pages[r_inf - 1].dims.clone();
    let abutment: Vec<usize> = (0..=trusted).map(|n| t.homology_dim(n)).collect();
    let converges = abutment
        .iter()
        .enumerate()
        .all(|(n, &h)| SSResult::total_dim(&e_inf, n) == h);
    pages.truncate(r_stop.max(2));
    Ok(SSResult {
        prime: dc.prime(),
        trusted_degree: trusted,
        pages,
        e_inf,
        abutment,
        stable_from,
        pages_consistent: consistent,
        converges,
    })
}

/// Matrix of the map `E^r_{p,q}(s) → E^r_{p,q}(t)` induced by a
/// filtration-preserving chain map of total complexes.
pub fn induced_cell_map(
    total_map: &FpMatrix,
    source: &Cell,
    target: &Cell,
) -> Result<FpMatrix> {
    let images = total_map.mul(&source.reps)?;
    target
        .coords_matrix(&images)?
        .ok_or_else(|| Error::LiftFailed("map does not preserve the filtration".into()))
}

/// The map `T_n(s) → T_n(t)` assembled from a double map.
pub fn total_map(s: &FilteredTotal, t: &FilteredTotal, f: &DoubleMap, n: usize) -> FpMatrix {
    let mut m = FpMatrix::zeros(s.prime(), t.dim(n), s.dim(n));
    for p in 0..=n {
        if let (Some((so, _)), Some((to, _))) = (s.block(n, p), t.block(n, p)) {
            m.paste(to, so, &f.maps[p][n - p]);
        }
    }
    m
}

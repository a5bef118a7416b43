//! Dense matrices over the integers with arbitrary-precision entries, Smith
//! normal form with unimodular transforms, and the integer solving routines
//! built on it.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type IntVector = Vec<BigInt>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from small-integer rows. All rows must have equal length;
    /// `cols` is needed to express matrices with zero rows.
    pub fn from_rows(rows: &[Vec<i64>], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {} columns",
                    r.len(),
                    cols
                )));
            }
            data.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_columns(rows: usize, columns: &[IntVector]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "column of length {} for {} rows",
                    c.len(),
                    rows
                )));
            }
            for (i, x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[BigInt]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate().take(rows.min(cols)) {
            m.data[i * cols + i] = d.clone();
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn row(&self, r: usize) -> IntVector {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn column(&self, c: usize) -> IntVector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<IntVector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut s = BigInt::zero();
                for (k, x) in v.iter().enumerate() {
                    let a = self.get(i, k);
                    if !a.is_zero() && !x.is_zero() {
                        s += a * x;
                    }
                }
                s
            })
            .collect())
    }

    fn check_same_shape(&self, other: &IntMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.check_same_shape(other)?;
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<IntMatrix> {
        self.check_same_shape(other)?;
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * k).collect(),
        }
    }

    pub fn hstack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "hstack of {} and {} rows",
                self.rows, other.rows
            )));
        }
        let cols = self.cols + other.cols;
        let mut out = Self::zeros(self.rows, cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[r * cols + c] = self.get(r, c).clone();
            }
            for c in 0..other.cols {
                out.data[r * cols + self.cols + c] = other.get(r, c).clone();
            }
        }
        Ok(out)
    }

    pub fn vstack(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "vstack of {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(IntMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn block_diag(blocks: &[&IntMatrix]) -> IntMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.paste(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &IntMatrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.data[(r0 + r) * self.cols + c0 + c] = block.get(r, c).clone();
            }
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (i, r) in rows.clone().enumerate() {
            for (j, c) in cols.clone().enumerate() {
                out.data[i * out.cols + j] = self.get(r, c).clone();
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(&self.data[r * self.cols..(r + 1) * self.cols]);
        }
        IntMatrix {
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn select_cols(&self, cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.data[r * cols.len() + j] = self.get(r, c).clone();
            }
        }
        out
    }

    /// Kronecker product; row `(i, k)` of the result has index `i * other.rows + k`.
    pub fn kron(&self, other: &IntMatrix) -> IntMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.data[(i * other.rows + k) * cols + j * other.cols + l] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                    return Ok(BigInt::zero());
                };
                a.swap_rows(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        Ok(sign * a.get(n - 1, n - 1))
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// row_dst += k * row_src
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let s = &self.data[src * self.cols + c];
            if !s.is_zero() {
                let v = s * k;
                self.data[dst * self.cols + c] += v;
            }
        }
    }

    /// col_dst += k * col_src
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let s = &self.data[r * self.cols + src];
            if !s.is_zero() {
                let v = s * k;
                self.data[r * self.cols + dst] += v;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -&self.data[r * self.cols + c];
            self.data[r * self.cols + c] = v;
        }
    }

    fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            let v = -&self.data[r * self.cols + c];
            self.data[r * self.cols + c] = v;
        }
    }

    pub fn snf(&self) -> SnfResult {
        SnfComputation::new(self.clone()).run()
    }

    /// Returns some integer `x` with `self * x = b`, or `None` when no integer
    /// solution exists.
    pub fn solve_int(&self, b: &[BigInt]) -> Result<Option<IntVector>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        Ok(self.snf().solve(b))
    }

    /// Basis of the integer kernel lattice, as the columns of the result.
    pub fn kernel_basis(&self) -> IntMatrix {
        let s = self.snf();
        let cols: Vec<usize> = (s.rank..self.cols).collect();
        s.v.select_cols(&cols)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// `u * a * v = d` with `u`, `v` unimodular. The inverses are tracked alongside
/// so that change-of-basis maps in both directions are available without
/// re-inversion.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
    /// `det(u)` and `det(v)`, each `+1` or `-1`.
    pub det_u: i8,
    pub det_v: i8,
}

impl SnfResult {
    /// The nonzero diagonal entries of `d`, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn solve(&self, b: &[BigInt]) -> Option<IntVector> {
        let c = self.u.mul_vec(b).ok()?;
        let n = self.v.rows();
        let mut y = vec![BigInt::zero(); n];
        for (k, ck) in c.iter().enumerate() {
            if k < self.rank {
                let (q, r) = ck.div_rem(self.d.get(k, k));
                if !r.is_zero() {
                    return None;
                }
                y[k] = q;
            } else if !ck.is_zero() {
                return None;
            }
        }
        self.v.mul_vec(&y).ok()
    }
}

struct SnfComputation {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
    det_u: i8,
    det_v: i8,
}

impl SnfComputation {
    fn new(a: IntMatrix) -> Self {
        let (m, n) = (a.rows, a.cols);
        SnfComputation {
            a,
            u: IntMatrix::identity(m),
            u_inv: IntMatrix::identity(m),
            v: IntMatrix::identity(n),
            v_inv: IntMatrix::identity(n),
            det_u: 1,
            det_v: 1,
        }
    }

    fn row_add(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_row_multiple(dst, src, k);
        self.u.add_row_multiple(dst, src, k);
        self.u_inv.add_col_multiple(src, dst, &-k);
    }

    fn col_add(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_col_multiple(dst, src, k);
        self.v.add_col_multiple(dst, src, k);
        self.v_inv.add_row_multiple(src, dst, &-k);
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap_rows(i, j);
            self.u.swap_rows(i, j);
            self.u_inv.swap_cols(i, j);
            self.det_u = -self.det_u;
        }
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap_cols(i, j);
            self.v.swap_cols(i, j);
            self.v_inv.swap_rows(i, j);
            self.det_v = -self.det_v;
        }
    }

    fn row_negate(&mut self, r: usize) {
        self.a.negate_row(r);
        self.u.negate_row(r);
        self.u_inv.negate_col(r);
        self.det_u = -self.det_u;
    }

    /// Smallest nonzero absolute value in the trailing submatrix; ties go to
    /// the leftmost column, then the topmost row.
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for c in t..self.a.cols {
            for r in t..self.a.rows {
                let x = self.a.get(r, c);
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                    best = Some((r, c, ax));
                }
            }
        }
        best.map(|(r, c, _)| (r, c))
    }

    fn run(mut self) -> SnfResult {
        let (m, n) = (self.a.rows, self.a.cols);
        let mut t = 0;
        while t < m.min(n) {
            let Some((pr, pc)) = self.find_pivot(t) else {
                break;
            };
            self.row_swap(t, pr);
            self.col_swap(t, pc);
            loop {
                let pivot = self.a.get(t, t).clone();
                let mut clean = true;
                for i in t + 1..m {
                    let x = self.a.get(i, t);
                    if x.is_zero() {
                        continue;
                    }
                    let q = x.div_floor(&pivot);
                    self.row_add(i, t, &-q);
                    if !self.a.get(i, t).is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..n {
                    let x = self.a.get(t, j);
                    if x.is_zero() {
                        continue;
                    }
                    let q = x.div_floor(&pivot);
                    self.col_add(j, t, &-q);
                    if !self.a.get(t, j).is_zero() {
                        clean = false;
                    }
                }
                if clean {
                    let bad_row = (t + 1..m).find(|&i| {
                        (t + 1..n).any(|j| !self.a.get(i, j).mod_floor(&pivot).is_zero())
                    });
                    match bad_row {
                        Some(i) => self.row_add(t, i, &BigInt::one()),
                        None => break,
                    }
                }
                let (pr, pc) = self
                    .find_pivot(t)
                    .expect("trailing submatrix has a nonzero entry");
                self.row_swap(t, pr);
                self.col_swap(t, pc);
            }
            if self.a.get(t, t).is_negative() {
                self.row_negate(t);
            }
            t += 1;
        }
        SnfResult {
            u: self.u,
            d: self.a,
            v: self.v,
            u_inv: self.u_inv,
            v_inv: self.v_inv,
            rank: t,
            det_u: self.det_u,
            det_v: self.det_v,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>], cols: usize) -> IntMatrix {
        IntMatrix::from_rows(rows, cols).unwrap()
    }

    fn check_snf(a: &IntMatrix) -> SnfResult {
        let s = a.snf();
        assert_eq!(s.u.mul(a).unwrap().mul(&s.v).unwrap(), s.d);
        assert_eq!(s.u.mul(&s.u_inv).unwrap(), IntMatrix::identity(a.rows()));
        assert_eq!(s.v.mul(&s.v_inv).unwrap(), IntMatrix::identity(a.cols()));
        assert_eq!(s.u.determinant().unwrap(), BigInt::from(s.det_u));
        assert_eq!(s.v.determinant().unwrap(), BigInt::from(s.det_v));
        s
    }

    #[test]
    fn identity_is_its_own_normal_form() {
        let s = check_snf(&IntMatrix::identity(3));
        assert_eq!(s.d, IntMatrix::identity(3));
    }

    #[test]
    fn zero_matrix_has_identity_transforms() {
        let s = check_snf(&IntMatrix::zeros(2, 2));
        assert_eq!(s.d, IntMatrix::zeros(2, 2));
        assert_eq!(s.u, IntMatrix::identity(2));
        assert_eq!(s.v, IntMatrix::identity(2));
    }

    #[test]
    fn diag_2_3_becomes_1_6() {
        let s = check_snf(&m(&[vec![2, 0], vec![0, 3]], 2));
        assert_eq!(s.d, m(&[vec![1, 0], vec![0, 6]], 2));
    }

    #[test]
    fn solve_examples() {
        let a = m(&[vec![2]], 1);
        assert_eq!(
            a.solve_int(&[BigInt::from(4)]).unwrap(),
            Some(vec![BigInt::from(2)])
        );
        assert_eq!(a.solve_int(&[BigInt::from(3)]).unwrap(), None);
        let a = m(&[vec![1, 2], vec![3, 4]], 2);
        let b = vec![BigInt::from(1), BigInt::from(1)];
        let x = a.solve_int(&b).unwrap().expect("solvable");
        assert_eq!(a.mul_vec(&x).unwrap(), b);
        assert!(a.solve_int(&[BigInt::from(1)]).is_err());
    }

    #[test]
    fn kernel_of_wide_matrix() {
        let a = m(&[vec![2, 4, 6]], 3);
        let k = a.kernel_basis();
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&k).unwrap().is_zero());
    }

    #[test]
    fn empty_shapes() {
        let a = IntMatrix::zeros(0, 3);
        let s = check_snf(&a);
        assert_eq!(s.rank, 0);
        assert_eq!(a.kernel_basis().cols(), 3);
        let b = IntMatrix::zeros(2, 0);
        assert_eq!(b.solve_int(&[BigInt::zero(), BigInt::zero()]).unwrap(), Some(vec![]));
        assert_eq!(b.solve_int(&[BigInt::one(), BigInt::zero()]).unwrap(), None);
    }
}

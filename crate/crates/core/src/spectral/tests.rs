use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::error::Error;
use crate::functor::FunctorSpec;
use crate::linalg::FpMatrix;
use crate::module::{Matrix, ModMor, Module, Ring, RingMap};
use crate::{DiagramCat, FinCat, ModCat};

// Small double complexes assembled from pieces whose spectral sequences are
// known, then disguised by a random change of basis in every cell.

#[derive(Clone, Copy, Debug)]
enum Piece {
    Dot(usize, usize),
    Horizontal(usize, usize),
    Vertical(usize, usize),
    Square(usize, usize),
    /// `a` at `(p, q)` linked to `e` at `(p - k, q + k - 1)` by `d^k`.
    Staircase(usize, usize, usize),
}

struct Assembly {
    prime: u64,
    cols: usize,
    rows: usize,
    /// basis elements per cell
    count: Vec<Vec<usize>>,
    /// `(source cell, index, target cell, index)`, all coefficients 1
    h: Vec<((usize, usize), usize, (usize, usize), usize)>,
    v: Vec<((usize, usize), usize, (usize, usize), usize)>,
}

impl Assembly {
    fn new(prime: u64, cols: usize, rows: usize) -> Self {
        Assembly {
            prime,
            cols,
            rows,
            count: vec![vec![0; rows]; cols],
            h: Vec::new(),
            v: Vec::new(),
        }
    }

    fn add(&mut self, p: usize, q: usize) -> usize {
        self.count[p][q] += 1;
        self.count[p][q] - 1
    }

    fn place(&mut self, piece: Piece) -> bool {
        let (c, r) = (self.cols, self.rows);
        match piece {
            Piece::Dot(p, q) if p < c && q < r => {
                self.add(p, q);
            }
            Piece::Horizontal(p, q) if p >= 1 && p < c && q < r => {
                let a = self.add(p, q);
                let b = self.add(p - 1, q);
                self.h.push(((p, q), a, (p - 1, q), b));
            }
            Piece::Vertical(p, q) if q >= 1 && p < c && q < r => {
                let a = self.add(p, q);
                let b = self.add(p, q - 1);
                self.v.push(((p, q), a, (p, q - 1), b));
            }
            Piece::Square(p, q) if p >= 1 && q >= 1 && p < c && q < r => {
                let a = self.add(p, q);
                let b = self.add(p - 1, q);
                let x = self.add(p, q - 1);
                let d = self.add(p - 1, q - 1);
                self.h.push(((p, q), a, (p - 1, q), b));
                self.v.push(((p, q), a, (p, q - 1), x));
                self.v.push(((p - 1, q), b, (p - 1, q - 1), d));
                self.h.push(((p, q - 1), x, (p - 1, q - 1), d));
            }
            Piece::Staircase(p, q, k) if k >= 2 && p >= k && p < c && q + k - 1 < r => {
                // a -dh-> c_1 <-dv- b_1 -dh-> c_2 <-dv- ... b_{k-1} -dh-> e
                let mut prev = ((p, q), self.add(p, q));
                for j in 1..k {
                    let cj = (p - j, q + j - 1);
                    let ci = self.add(cj.0, cj.1);
                    self.h.push((prev.0, prev.1, cj, ci));
                    let bj = (p - j, q + j);
                    let bi = self.add(bj.0, bj.1);
                    self.v.push((bj, bi, cj, ci));
                    prev = (bj, bi);
                }
                let e = (p - k, q + k - 1);
                let ei = self.add(e.0, e.1);
                self.h.push((prev.0, prev.1, e, ei));
            }
            _ => return false,
        }
        true
    }

    fn build(&self, rng: &mut ChaCha8Rng) -> DoubleComplex {
        let (cols, rows, prime) = (self.cols, self.rows, self.prime);
        let count = &self.count;
        let dim = |p: Option<usize>, q: Option<usize>| match (p, q) {
            (Some(p), Some(q)) => count[p][q],
            _ => 0,
        };
        let mut dh: Vec<Vec<FpMatrix>> = (0..cols)
            .map(|p| (0..rows).map(|q| FpMatrix::zeros(prime, dim(p.checked_sub(1), Some(q)), count[p][q])).collect())
            .collect();
        let mut dv: Vec<Vec<FpMatrix>> = (0..cols)
            .map(|p| (0..rows).map(|q| FpMatrix::zeros(prime, dim(Some(p), q.checked_sub(1)), count[p][q])).collect())
            .collect();
        for &((p, q), a, _, b) in &self.h {
            dh[p][q].set(b, a, 1);
        }
        for &((p, q), a, _, b) in &self.v {
            dv[p][q].set(b, a, 1);
        }
        let basis: Vec<Vec<(FpMatrix, FpMatrix)>> = (0..cols)
            .map(|p| (0..rows).map(|q| random_invertible(prime, count[p][q], rng)).collect())
            .collect();
        for p in 0..cols {
            for q in 0..rows {
                let inv = &basis[p][q].1;
                if p >= 1 {
                    dh[p][q] = basis[p - 1][q].0.mul(&dh[p][q]).unwrap().mul(inv).unwrap();
                }
                if q >= 1 {
                    dv[p][q] = basis[p][q - 1].0.mul(&dv[p][q]).unwrap().mul(inv).unwrap();
                }
            }
        }
        DoubleComplex::new(prime, self.count.clone(), dh, dv).unwrap()
    }

    /// `E^r` dimensions read off from the pieces.
    fn expected(&self, pieces: &[Piece], r: usize) -> Vec<Vec<usize>> {
        let mut e = vec![vec![0; self.rows]; self.cols];
        for piece in pieces {
            match *piece {
                Piece::Dot(p, q) => e[p][q] += 1,
                Piece::Horizontal(p, q) if r == 1 => {
                    e[p][q] += 1;
                    e[p - 1][q] += 1;
                }
                Piece::Staircase(p, q, k) if r <= k => {
                    e[p][q] += 1;
                    e[p - k][q + k - 1] += 1;
                }
                _ => {}
            }
        }
        e
    }
}

fn random_invertible(prime: u64, n: usize, rng: &mut ChaCha8Rng) -> (FpMatrix, FpMatrix) {
    loop {
        let data = (0..n * n).map(|_| rng.gen_range(0..prime)).collect();
        let m = FpMatrix::new(prime, n, n, data).unwrap();
        if m.rank() == n {
            let inv = m.solve(&FpMatrix::identity(prime, n)).unwrap().unwrap();
            return (m, inv);
        }
    }
}

fn random_piece(rng: &mut ChaCha8Rng, cols: usize, rows: usize) -> Piece {
    let p = rng.gen_range(0..cols);
    let q = rng.gen_range(0..rows);
    match rng.gen_range(0..5) {
        0 => Piece::Dot(p, q),
        1 => Piece::Horizontal(p, q),
        2 => Piece::Vertical(p, q),
        3 => Piece::Square(p, q),
        _ => Piece::Staircase(p, q, rng.gen_range(2..4)),
    }
}

fn random_assembly(prime: u64, size: usize, pieces: usize, seed: u64) -> (DoubleComplex, Assembly, Vec<Piece>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut asm = Assembly::new(prime, size, size);
    let mut placed = Vec::new();
    while placed.len() < pieces {
        let piece = random_piece(&mut rng, size, size);
        if asm.place(piece) {
            placed.push(piece);
        }
    }
    let dc = asm.build(&mut rng);
    (dc, asm, placed)
}

// Brute-force descriptions straight from the double complex.

fn kernel(m: &FpMatrix) -> FpMatrix {
    m.kernel_matrix()
}

fn e1_oracle(dc: &DoubleComplex) -> Vec<Vec<usize>> {
    (0..dc.cols())
        .map(|p| {
            (0..dc.rows())
                .map(|q| {
                    let z = dc.dim(p, q) - dc.dv(p, q).rank();
                    let b = if q + 1 < dc.rows() { dc.dv(p, q + 1).rank() } else { 0 };
                    z - b
                })
                .collect()
        })
        .collect()
}

/// `E²_{pq}` as `{x : dv x = 0, dh x ∈ im dv} / (im dv + dh(ker dv))`.
fn e2_oracle(dc: &DoubleComplex) -> Vec<Vec<usize>> {
    let pr = dc.prime();
    let mut out = vec![vec![0; dc.rows()]; dc.cols()];
    for p in 0..dc.cols() {
        for q in 0..dc.rows() {
            let n = dc.dim(p, q);
            let num = if p == 0 {
                kernel(dc.dv(p, q))
            } else {
                // [dv 0; dh -B] with B = dv into (p-1, q)
                let b = if q + 1 < dc.rows() {
                    dc.dv(p - 1, q + 1).clone()
                } else {
                    FpMatrix::zeros(pr, dc.dim(p - 1, q), 0)
                };
                let top = dc.dv(p, q).hstack(&FpMatrix::zeros(pr, dc.dv(p, q).rows(), b.cols())).unwrap();
                let bottom = dc.dh(p, q).hstack(&b.neg()).unwrap();
                let k = kernel(&top.vstack(&bottom).unwrap());
                k.submatrix(0..n, 0..k.cols())
            };
            let mut den = if q + 1 < dc.rows() {
                dc.dv(p, q + 1).clone()
            } else {
                FpMatrix::zeros(pr, n, 0)
            };
            if p + 1 < dc.cols() {
                let kv = kernel(dc.dv(p + 1, q));
                den = den.hstack(&dc.dh(p + 1, q).mul(&kv).unwrap()).unwrap();
            }
            out[p][q] = num.rank() - den.rank();
        }
    }
    out
}

/// Total complex with columns listed from high `p` to low, and the
/// dimensions of `F_p H_n / F_{p-1} H_n`.
fn filtration_oracle(dc: &DoubleComplex) -> Vec<Vec<usize>> {
    let pr = dc.prime();
    let (cols, rows) = (dc.cols(), dc.rows());
    let top = cols + rows - 2;
    let cells = |n: usize| -> Vec<usize> { (0..cols).rev().filter(|&p| n >= p && n - p < rows).collect() };
    let offsets = |n: usize| -> Vec<(usize, usize)> {
        let mut off = 0;
        cells(n)
            .into_iter()
            .map(|p| {
                let o = off;
                off += dc.dim(p, n - p);
                (p, o)
            })
            .collect()
    };
    let tdim = |n: usize| cells(n).iter().map(|&p| dc.dim(p, n - p)).sum::<usize>();
    let d = |n: usize| -> FpMatrix {
        let mut m = FpMatrix::zeros(pr, if n == 0 { 0 } else { tdim(n - 1) }, tdim(n));
        if n == 0 {
            return m;
        }
        let below = offsets(n - 1);
        for (p, o) in offsets(n) {
            let q = n - p;
            if let Some(&(_, t)) = below.iter().find(|b| p >= 1 && b.0 == p - 1) {
                m.paste(t, o, dc.dh(p, q));
            }
            if let Some(&(_, t)) = below.iter().find(|b| q >= 1 && b.0 == p) {
                let v = if p % 2 == 1 { dc.dv(p, q).neg() } else { dc.dv(p, q).clone() };
                m.paste(t, o, &v);
            }
        }
        m
    };
    let mut out = vec![vec![0; rows]; cols];
    for n in 0..=top {
        let dn = d(n);
        let bnd = if n < top { d(n + 1) } else { FpMatrix::zeros(pr, tdim(n), 0) };
        let rb = bnd.rank();
        let mut prev = 0;
        for p in 0..cols.min(n + 1) {
            // coordinates of columns > p come first
            let skip: usize = offsets(n).iter().filter(|b| b.0 > p).map(|b| dc.dim(b.0, n - b.0)).sum();
            let rest: Vec<usize> = (skip..tdim(n)).collect();
            let z = kernel(&dn.select_cols(&rest));
            let mut emb = FpMatrix::zeros(pr, tdim(n), z.cols());
            emb.paste(skip, 0, &z);
            let fp = emb.hstack(&bnd).unwrap().rank() - rb;
            if n - p < rows {
                out[p][n - p] = fp - prev;
            }
            prev = fp;
        }
    }
    out
}

#[test]
fn zero_differentials_never_change() {
    let dims = vec![vec![1, 2, 0], vec![3, 1, 1], vec![0, 2, 1]];
    let dc = DoubleComplex::zero(3, dims.clone());
    let ss = ss_pages(&dc, 4).unwrap();
    for r in 1..=4 {
        assert_eq!(ss.page(r).dims, dims);
        assert!(ss.page(r).is_zero_differential());
    }
    assert!(ss.degenerates_at_e2());
    assert_eq!(ss.abutment, vec![1, 5, 1, 3, 1]);
    assert!(ss.converges && ss.pages_consistent);
}

#[test]
fn horizontal_isomorphism_dies_on_second_page() {
    let mut asm = Assembly::new(2, 2, 1);
    asm.place(Piece::Horizontal(1, 0));
    let dc = asm.build(&mut ChaCha8Rng::seed_from_u64(1));
    let ss = ss_pages(&dc, 3).unwrap();
    assert_eq!(ss.page(1).dims, vec![vec![1], vec![1]]);
    assert!(!ss.page(1).is_zero_differential());
    assert_eq!(ss.e2(), &[vec![0], vec![0]]);
    assert_eq!(ss.abutment, vec![0, 0]);
}

#[test]
fn staircase_has_a_nonzero_second_differential() {
    let mut asm = Assembly::new(3, 3, 2);
    asm.place(Piece::Staircase(2, 0, 2));
    let dc = asm.build(&mut ChaCha8Rng::seed_from_u64(7));
    let ss = ss_pages(&dc, 3).unwrap();
    assert_eq!(ss.e2()[2][0], 1);
    assert_eq!(ss.e2()[0][1], 1);
    assert!(!ss.page(2).differentials[2][0].is_zero());
    assert_eq!(ss.page(3).dims, vec![vec![0; 2]; 3]);
    assert!(!ss.degenerates_at_e2());
    assert_eq!(ss.stable_from, 3);
    assert!(ss.abutment.iter().all(|&h| h == 0));
}

#[test]
fn malformed_double_complexes_rejected() {
    let one = FpMatrix::identity(2, 1);
    let z = |r, c| FpMatrix::zeros(2, r, c);
    // squares anticommute instead of commuting over F3
    let id3 = FpMatrix::identity(3, 1);
    let dims = vec![vec![1, 1], vec![1, 1]];
    let z3 = |r, c| FpMatrix::zeros(3, r, c);
    let dh = vec![vec![z3(0, 1), z3(0, 1)], vec![id3.clone(), id3.clone()]];
    let dv = vec![vec![z3(0, 1), id3.clone()], vec![z3(0, 1), id3.neg()]];
    assert!(matches!(DoubleComplex::new(3, dims, dh, dv), Err(Error::CompositeNonzero(_))));
    // wrong shape
    let dh = vec![vec![z(0, 1)], vec![one.clone()]];
    let dv = vec![vec![z(0, 1)], vec![z(1, 1)]];
    assert!(matches!(
        DoubleComplex::new(2, vec![vec![1], vec![1]], dh, dv),
        Err(Error::DimensionMismatch(_))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pages_match_brute_force(seed in any::<u64>(), pieces in 1usize..7, prime in prop::sample::select(vec![2u64, 3, 5])) {
        let (dc, asm, placed) = random_assembly(prime, 4, pieces, seed);
        let ss = ss_pages(&dc, 5).unwrap();
        prop_assert!(ss.pages_consistent);
        prop_assert!(ss.converges);
        prop_assert_eq!(&ss.page(1).dims, &e1_oracle(&dc));
        prop_assert_eq!(&ss.page(2).dims, &e2_oracle(&dc));
        prop_assert_eq!(&ss.e_inf, &filtration_oracle(&dc));
        for r in 1..=5 {
            prop_assert_eq!(&ss.page(r).dims, &asm.expected(&placed, r));
        }
    }

    #[test]
    fn euler_characteristic_is_constant(seed in any::<u64>(), pieces in 1usize..7) {
        let (dc, _, _) = random_assembly(3, 3, pieces, seed);
        let ss = ss_pages(&dc, 4).unwrap();
        let chi = SSResult::euler_characteristic(dc.dims());
        for r in 1..=4 {
            prop_assert_eq!(SSResult::euler_characteristic(&ss.page(r).dims), chi);
        }
        let h: i64 = ss.abutment.iter().enumerate().map(|(n, &d)| if n % 2 == 0 { d as i64 } else { -(d as i64) }).sum();
        prop_assert_eq!(h, chi);
    }

    #[test]
    fn identity_map_induces_identity_on_pages(seed in any::<u64>(), pieces in 1usize..6) {
        let (dc, _, _) = random_assembly(2, 3, pieces, seed);
        let t = FilteredTotal::new(&dc).unwrap();
        let id = DoubleMap {
            maps: dc.dims().iter().map(|c| c.iter().map(|&d| FpMatrix::identity(2, d)).collect()).collect(),
        };
        prop_assert!(id.check(&dc, &dc).unwrap());
        for r in 1..=3 {
            let cells = page_cells(&t, dc.rows(), r).unwrap();
            for p in 0..dc.cols() {
                for q in 0..dc.rows() {
                    let m = total_map(&t, &t, &id, p + q);
                    let f = induced_cell_map(&m, &cells[p][q], &cells[p][q]).unwrap();
                    prop_assert_eq!(f, FpMatrix::identity(2, cells[p][q].dim()));
                }
            }
        }
    }
}

fn group_fixture(ring: &Ring, quotient: &Ring, element_map: &[usize]) -> (FunctorSpec, FunctorSpec) {
    let f = FunctorSpec::base_change(
        RingMap::group_hom(ring.as_algebra().unwrap(), quotient.as_algebra().unwrap(), element_map).unwrap(),
    );
    let g = FunctorSpec::base_change(RingMap::augmentation(quotient.as_algebra().unwrap()).unwrap());
    (f, g)
}

#[test]
fn cyclic_extension_does_not_degenerate() {
    // C2 inside C4 with quotient C2, trivial coefficients mod 2
    let c4 = Ring::cyclic_group(2, 4).unwrap();
    let c2 = Ring::cyclic_group(2, 2).unwrap();
    let (f, g) = group_fixture(&c4, &c2, &[0, 1, 0, 1]);
    let a = Module::trivial(&c4).unwrap();
    let n = 5;
    let r = grothendieck_ss(&f, &g, &a, n).unwrap();
    assert!(r.passed(), "{:?}", r.hypothesis);
    for p in 0..=n {
        for q in 0..=n - p {
            assert_eq!(r.ss.e2()[p][q], 1);
        }
    }
    assert_eq!(r.ss.abutment, vec![1; n + 1]);
    assert!(!r.ss.degenerates_at_e2());
    // the bottom row survives only in degree 0 and 1
    assert_eq!(r.ss.e_inf[2][0], 0);
}

#[test]
fn product_of_two_groups_degenerates() {
    let v4 = Ring::abelian_group(2, &[2, 2]).unwrap();
    let c2 = Ring::cyclic_group(2, 2).unwrap();
    let (f, g) = group_fixture(&v4, &c2, &[0, 1, 0, 1]);
    let a = Module::trivial(&v4).unwrap();
    let n = 4;
    let r = grothendieck_ss(&f, &g, &a, n).unwrap();
    assert!(r.passed());
    assert!(r.ss.degenerates_at_e2());
    assert_eq!(r.ss.abutment, (1..=n + 1).collect::<Vec<_>>());
}

#[test]
fn integer_modules_rejected() {
    let f = FunctorSpec::tensor_with(&Module::cyclic(2)).unwrap();
    let r = grothendieck_ss(&f, &f, &Module::cyclic(4), 2);
    assert!(matches!(r, Err(Error::Unsupported(_))));
}

#[test]
fn non_acyclic_witness_is_reported() {
    let c4 = Ring::cyclic_group(2, 4).unwrap();
    let c2 = Ring::cyclic_group(2, 2).unwrap();
    let (f, g) = group_fixture(&c4, &c2, &[0, 1, 0, 1]);
    let free = Module::free(&c4, 2);
    let trivial = Module::trivial(&c4).unwrap();
    let ok = check_acyclic_hypothesis(&f, &g, &[free.clone()], 3).unwrap();
    assert!(ok.passed());
    let bad = check_acyclic_hypothesis(&f, &g, &[free, trivial], 3).unwrap();
    assert_eq!(bad.failures, vec![(1, 1)]);
}

#[test]
fn componentwise_on_an_arrow() {
    let c4 = Ring::cyclic_group(2, 4).unwrap();
    let c2 = Ring::cyclic_group(2, 2).unwrap();
    let (f, g) = group_fixture(&c4, &c2, &[0, 1, 0, 1]);
    let free = Module::free(&c4, 1);
    let trivial = Module::trivial(&c4).unwrap();
    let aug = ModMor::new(
        free.clone(),
        trivial.clone(),
        Matrix::Fp(FpMatrix::new(2, 1, 4, vec![1, 1, 1, 1]).unwrap()),
    )
    .unwrap();
    let cat = DiagramCat::with_index(ModCat::new(c4), Arc::new(FinCat::arrow()));
    let a = cat.diagram_from(vec![free, trivial], vec![aug]).unwrap();
    let r = ss_componentwise(&f, &g, &a, 3).unwrap();
    assert_eq!(r.components.len(), 2);
    assert_eq!(r.naturality.len(), 1);
    assert!(r.passed(), "{:?}", r.naturality);
    // a free module has nothing above degree zero
    assert_eq!(r.components[0].ss.abutment, vec![1, 0, 0, 0]);
    assert_eq!(r.components[1].ss.abutment, vec![1; 4]);
}

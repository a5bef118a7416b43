//! Acceptance run: one line per criterion, non-zero exit if any fails.

mod common;

use std::time::{Duration, Instant};

use funcat_core::functor::FunctorSpec;
use funcat_core::homology::derived_all;
use funcat_core::linalg::IntMatrix;
use funcat_core::module::RingMap;
use funcat_core::suites::augmentation_arrow;
use funcat_core::{grothendieck_ss, ss_componentwise, Module, Ring, SSResult, Suite};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 42;
const SNF_LIMIT: Duration = Duration::from_secs(5);
const LES_LIMIT: Duration = Duration::from_secs(30);
const TOR_LIMIT: Duration = Duration::from_secs(10);
const SS_LIMIT: Duration = Duration::from_secs(60);
const TOTAL_LIMIT: Duration = Duration::from_secs(180);

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------- 1: SNF

/// Fraction-free elimination; exact over the integers.
fn bareiss_det(m: &IntMatrix) -> BigInt {
    let n = m.rows();
    let mut a: Vec<Vec<BigInt>> = (0..n).map(|r| (0..n).map(|c| m.get(r, c).clone()).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        sign
    } else {
        sign * &a[n - 1][n - 1]
    }
}

fn snf_contract(a: &IntMatrix) -> Result<(), String> {
    let r = a.snf();
    let uav = r.u.mul(a).and_then(|x| x.mul(&r.v)).map_err(|e| e.to_string())?;
    ensure(uav == r.d, || format!("U·A·V ≠ D for {:?}", a))?;
    for (name, m) in [("U", &r.u), ("V", &r.v)] {
        let det = bareiss_det(m);
        ensure(det.abs().is_one(), || format!("|det {}| = {} for {:?}", name, det, a))?;
    }
    let (rows, cols) = (a.rows(), a.cols());
    let mut diag = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            let x = r.d.get(i, j);
            if i == j {
                diag.push(x.clone());
            } else {
                ensure(x.is_zero(), || format!("off-diagonal entry in D for {:?}", a))?;
            }
        }
    }
    let rank = diag.iter().take_while(|x| !x.is_zero()).count();
    ensure(rank == r.rank && diag[rank..].iter().all(Zero::is_zero), || format!("zeros not trailing for {:?}", a))?;
    ensure(diag.iter().all(|x| !x.is_negative()), || format!("negative invariant factor for {:?}", a))?;
    for w in diag[..rank].windows(2) {
        ensure(w[1].is_multiple_of(&w[0]), || format!("{} does not divide {} for {:?}", w[0], w[1], a))?;
    }
    Ok(())
}

fn snf() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let start = Instant::now();
    for _ in 0..1000 {
        let (rows, cols) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-10..=10)).collect()).collect();
        let a = IntMatrix::from_rows(&data, cols).map_err(|e| e.to_string())?;
        snf_contract(&a)?;
    }
    within(start, SNF_LIMIT, "1000/1000 matrices".into())
}

fn within(start: Instant, limit: Duration, detail: String) -> Outcome {
    let t = start.elapsed();
    ensure(t < limit, || format!("{} but took {:.2?} (limit {:?})", detail, t, limit))?;
    Ok(format!("{} in {:.2?}", detail, t))
}

// ---------------------------------------------------------------- suites

fn suite(s: Suite, cases: usize, limit: Option<Duration>) -> Outcome {
    let start = Instant::now();
    let r = s.run(SEED, cases);
    let detail = format!("{}/{} pass, seed {}", r.passed, r.cases, SEED);
    ensure(r.ok() && r.cases == cases, || format!("{}; first failures {:?}", detail, &r.failures[..r.failures.len().min(3)]))?;
    match limit {
        Some(l) => within(start, l, detail),
        None => Ok(format!("{} in {:.2?}", detail, start.elapsed())),
    }
}

// ---------------------------------------------------------------- 4: Tor

/// Tor_n(Z/m, Z/n) from `0 → Z --m--> Z → Z/m → 0` tensored with `Z/n`,
/// i.e. the complex `Z/n --m--> Z/n`, by counting residues.
fn tor_oracle(m: i64, n: i64, k: usize) -> String {
    let order = match k {
        0 => n / (0..n).map(|x| (m * x) % n).collect::<std::collections::BTreeSet<_>>().len() as i64,
        1 => (0..n).filter(|x| (m * x) % n == 0).count() as i64,
        _ => 1,
    };
    // both are subquotients of a cyclic group, so cyclic
    cyclic_name(order)
}

fn cyclic_name(order: i64) -> String {
    if order == 1 {
        "0".into()
    } else {
        format!("Z/{}", order)
    }
}

fn tor() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for m in 2..=12i64 {
        for n in 2..=12i64 {
            let f = FunctorSpec::tensor_with(&Module::cyclic(n)).map_err(|e| e.to_string())?;
            let h = derived_all(&f, &Module::cyclic(m), 3).map_err(|e| e.to_string())?;
            for (k, hk) in h.iter().enumerate() {
                let want = tor_oracle(m, n, k);
                ensure(hk.object.describe() == want, || format!("Tor_{}(Z/{}, Z/{}) = {}, expected {}", k, m, n, hk.object.describe(), want))?;
                checked += 1;
            }
            let g = m.gcd(&n);
            ensure(tor_oracle(m, n, 1) == cyclic_name(g) && tor_oracle(m, n, 0) == cyclic_name(g), || {
                format!("oracle disagrees with gcd({}, {}) = {}", m, n, g)
            })?;
        }
    }
    within(start, TOR_LIMIT, format!("{} groups, 2 ≤ m, n ≤ 12, degrees 0..3", checked))
}

// ---------------------------------------------------------------- 9: spectral sequence

type F2Mat = Vec<Vec<u8>>;

fn f2_rank(m: &F2Mat) -> usize {
    let mut a = m.clone();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| a[r][c] == 1) else { continue };
        a.swap(rank, p);
        for r in 0..a.len() {
            if r != rank && a[r][c] == 1 {
                let pivot = a[rank].clone();
                for (x, y) in a[r].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn f2_mul(a: &F2Mat, b: &F2Mat) -> F2Mat {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..cols).map(|c| (0..inner).fold(0, |s, k| s ^ (row[k] & b[k][c]))).collect())
        .collect()
}

/// An abelian 2-group: element count and the group law on indices.
struct Group {
    order: usize,
    law: fn(usize, usize) -> usize,
}

/// A free resolution over `F2[G]`: `d[k]` is `P_{k+1} → P_k` as a block
/// matrix of group-algebra elements, `[row][col][g]`.
struct Resolution {
    group: Group,
    ranks: Vec<usize>,
    d: Vec<Vec<Vec<Vec<u8>>>>,
}

impl Resolution {
    /// The differential over `F2`, each block as left multiplication.
    fn expanded(&self, k: usize) -> F2Mat {
        let n = self.group.order;
        let blocks = &self.d[k];
        let mut m = vec![vec![0u8; self.ranks[k + 1] * n]; self.ranks[k] * n];
        for (bi, brow) in blocks.iter().enumerate() {
            for (bj, x) in brow.iter().enumerate() {
                for (g, &c) in x.iter().enumerate() {
                    if c == 1 {
                        for h in 0..n {
                            m[bi * n + (self.group.law)(g, h)][bj * n + h] ^= 1;
                        }
                    }
                }
            }
        }
        m
    }

    /// `d ∘ d = 0` and homology `F2` in degree 0, zero above, up to `top`.
    fn is_resolution(&self, top: usize) -> bool {
        let n = self.group.order;
        let mats: Vec<F2Mat> = (0..=top).map(|k| self.expanded(k)).collect();
        let ranks: Vec<usize> = mats.iter().map(f2_rank).collect();
        let composites_vanish = mats.windows(2).all(|w| f2_mul(&w[0], &w[1]).iter().flatten().all(|&x| x == 0));
        let h0 = self.ranks[0] * n - ranks[0] == 1;
        let higher = (1..=top).all(|k| self.ranks[k] * n == ranks[k - 1] + ranks[k]);
        composites_vanish && h0 && higher
    }

    /// `dim H_k(P ⊗_G F2)` for `k ≤ top`: each block goes to its augmentation.
    fn coinvariant_homology(&self, top: usize) -> Vec<usize> {
        let aug = |k: usize| -> F2Mat {
            self.d[k].iter().map(|row| row.iter().map(|x| x.iter().fold(0, |s, c| s ^ c)).collect()).collect()
        };
        let ranks: Vec<usize> = (0..=top).map(|k| f2_rank(&aug(k))).collect();
        (0..=top).map(|k| self.ranks[k] - ranks[k] - if k == 0 { 0 } else { ranks[k - 1] }).collect()
    }
}

fn periodic(order: usize, law: fn(usize, usize) -> usize, odd: Vec<u8>, even: Vec<u8>, len: usize) -> Resolution {
    Resolution {
        group: Group { order, law },
        ranks: vec![1; len + 1],
        d: (0..len).map(|k| vec![vec![if k % 2 == 0 { odd.clone() } else { even.clone() }]]).collect(),
    }
}

fn c2_resolution(len: usize) -> Resolution {
    periodic(2, |a, b| (a + b) % 2, vec![1, 1], vec![1, 1], len)
}

fn c4_resolution(len: usize) -> Resolution {
    periodic(4, |a, b| (a + b) % 4, vec![1, 1, 0, 0], vec![1, 1, 1, 1], len)
}

/// Tensor product of two periodic `C2`-resolutions over `F2[C2 × C2]`,
/// elements indexed `2a + b`.
fn klein_resolution(len: usize) -> Resolution {
    let (one_plus_s, one_plus_t) = (vec![1, 0, 1, 0], vec![1, 1, 0, 0]);
    let zero = vec![0u8; 4];
    let d = (0..len)
        .map(|k| {
            let n = k + 1;
            // column i is e_{i, n-i}; row i' is e_{i', n-1-i'}
            (0..n)
                .map(|row| {
                    (0..=n)
                        .map(|col| {
                            if col >= 1 && row == col - 1 {
                                one_plus_s.clone()
                            } else if col < n && row == col {
                                one_plus_t.clone()
                            } else {
                                zero.clone()
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    Resolution {
        group: Group { order: 4, law: |a, b| a ^ b },
        ranks: (0..=len).map(|n| n + 1).collect(),
        d,
    }
}

const SS_DEGREE: usize = 8;

fn ss_oracle(abutment: &Resolution, top: usize) -> Result<(Vec<Vec<usize>>, Vec<usize>), String> {
    let c2 = c2_resolution(top + 2);
    ensure(c2.is_resolution(top + 1) && abutment.is_resolution(top + 1), || "oracle resolution not exact".into())?;
    let h = c2.coinvariant_homology(top);
    // each H_q(C2; F2) is one-dimensional, so the quotient acts trivially on it
    ensure(h.iter().all(|&d| d == 1), || "oracle C2 homology".into())?;
    let e2 = (0..=top).map(|p| (0..=top - p).map(|q| h[p] * h[q]).collect()).collect();
    Ok((e2, abutment.coinvariant_homology(top)))
}

fn ss_fixture(group: &Ring, oracle: &Resolution) -> Result<SSResult, String> {
    let c2 = Ring::cyclic_group(2, 2).map_err(|e| e.to_string())?;
    let to = c2.as_algebra().unwrap();
    let f = FunctorSpec::base_change(RingMap::group_hom(group.as_algebra().unwrap(), to, &[0, 1, 0, 1]).map_err(|e| e.to_string())?);
    let g = FunctorSpec::base_change(RingMap::augmentation(to).map_err(|e| e.to_string())?);
    let r = grothendieck_ss(&f, &g, &Module::trivial(group).map_err(|e| e.to_string())?, SS_DEGREE).map_err(|e| e.to_string())?;
    ensure(r.passed(), || "internal checks of the spectral sequence failed".into())?;
    let (e2, abutment) = ss_oracle(oracle, SS_DEGREE)?;
    for (p, col) in e2.iter().enumerate() {
        for (q, &want) in col.iter().enumerate() {
            let got = r.ss.e2().get(p).and_then(|c| c.get(q)).copied();
            ensure(got == Some(want), || format!("E2[{}][{}] = {:?}, expected {}", p, q, got, want))?;
        }
    }
    ensure(r.ss.abutment.len() > 4, || format!("abutment only to degree {}", r.ss.abutment.len()))?;
    for (n, &d) in r.ss.abutment.iter().enumerate() {
        ensure(d == abutment[n], || format!("abutment {} = {}, expected {}", n, d, abutment[n]))?;
    }
    Ok(r.ss)
}

fn spectral() -> Outcome {
    let start = Instant::now();
    let c4 = Ring::cyclic_group(2, 4).map_err(|e| e.to_string())?;
    let ss = ss_fixture(&c4, &c4_resolution(SS_DEGREE + 2))?;
    let forced = (0..ss.abutment.len()).any(|n| SSResult::total_dim(ss.e2(), n) > ss.abutment[n]);
    ensure(forced && !ss.degenerates_at_e2(), || "C4: expected a non-zero differential past E2".into())?;
    ensure(ss.abutment.iter().take(5).all(|&d| d == 1), || "C4 abutment".into())?;

    let v4 = Ring::abelian_group(2, &[2, 2]).map_err(|e| e.to_string())?;
    let ss = ss_fixture(&v4, &klein_resolution(SS_DEGREE + 2))?;
    ensure(ss.degenerates_at_e2(), || "C2 x C2: expected degeneration at E2".into())?;
    ensure(ss.abutment.iter().enumerate().all(|(n, &d)| d == n + 1), || "C2 x C2 abutment".into())?;
    within(
        start,
        SS_LIMIT,
        format!("C4: E2 = 1 for p + q ≤ {}, abutment 1, d2 ≠ 0; C2 x C2: degenerate, abutment n + 1", SS_DEGREE),
    )
}

// ---------------------------------------------------------------- 10: naturality

fn naturality() -> Outcome {
    let start = Instant::now();
    let c4 = Ring::cyclic_group(2, 4).map_err(|e| e.to_string())?;
    let c2 = Ring::cyclic_group(2, 2).map_err(|e| e.to_string())?;
    let to = c2.as_algebra().unwrap();
    let f = FunctorSpec::base_change(RingMap::group_hom(c4.as_algebra().unwrap(), to, &[0, 1, 0, 1]).map_err(|e| e.to_string())?);
    let g = FunctorSpec::base_change(RingMap::augmentation(to).map_err(|e| e.to_string())?);
    let d = augmentation_arrow(&c4).map_err(|e| e.to_string())?;
    let r = ss_componentwise(&f, &g, &d, 4).map_err(|e| e.to_string())?;
    ensure(!r.naturality.is_empty(), || "no morphisms checked".into())?;
    for n in &r.naturality {
        ensure(n.passed(), || format!("morphism {}: {:?}", n.morphism, (n.chain_map, n.e2_squares, n.e2_ranks, n.abutment_ranks, n.filtration)))?;
    }
    ensure(r.passed(), || "component spectral sequences failed their checks".into())?;
    Ok(format!("{} morphism(s), E2 and abutment squares commute, in {:.2?}", r.naturality.len(), start.elapsed()))
}

// ---------------------------------------------------------------- 11: language

fn language() -> Outcome {
    let start = Instant::now();
    let fixtures = common::fixtures();
    ensure(!fixtures.is_empty(), || "no fixtures".into())?;
    for (name, src) in &fixtures {
        let doc = funcat_dsl::parse(src).map_err(|e| format!("{}: {:?}", name, e))?;
        let again = funcat_dsl::parse(&funcat_dsl::print(&doc)).map_err(|e| format!("{}: {:?}", name, e))?;
        ensure(again == doc, || format!("{}: round trip changed the document", name))?;
    }
    let inputs = common::fuzz_inputs(SEED, 10_000);
    let hook = std::panic::take_hook();
    std::panic::set_hook(Box::new(|_| {}));
    let panics = common::fuzz_panics(&inputs);
    std::panic::set_hook(hook);
    ensure(panics == 0, || format!("{} of {} fuzz inputs panicked", panics, inputs.len()))?;
    for (name, src) in &fixtures {
        ensure(common::reports(src, SEED) == common::reports(src, SEED), || format!("{}: reports differ", name))?;
    }
    Ok(format!(
        "{} fixtures round trip, {} fuzz inputs without a panic, identical reports, in {:.2?}",
        fixtures.len(),
        inputs.len(),
        start.elapsed()
    ))
}

fn main() {
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("Smith normal form contract", Box::new(snf)),
        ("exactness in C^I is componentwise", Box::new(|| suite(Suite::Les, 200, Some(LES_LIMIT)))),
        ("kernels in C^I", Box::new(|| suite(Suite::Kernel, 100, None))),
        ("Tor table over Z", Box::new(tor)),
        ("delta-functor axioms for F^I", Box::new(|| suite(Suite::Delta, 100, None))),
        ("comparison (L_n F)^I -> L_n(F^I)", Box::new(|| suite(Suite::Iso, 100, None))),
        ("bifunctor ladders", Box::new(|| suite(Suite::Ladder, Suite::Ladder.default_cases(), None))),
        ("balance of Tor", Box::new(|| suite(Suite::Balance, 100, None))),
        ("spectral sequence desk check", Box::new(spectral)),
        ("spectral sequence naturality", Box::new(naturality)),
        ("language round trip, fuzz, determinism", Box::new(language)),
    ];
    let start = Instant::now();
    let mut passed = 0;
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => {
                passed += 1;
                println!("PASS {:>2} {}: {}", k + 1, name, detail);
            }
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {}: {}", k + 1, name, why);
            }
        }
    }
    let total = start.elapsed();
    if total >= TOTAL_LIMIT {
        failed += 1;
        println!("FAIL total time {:.2?} (limit {:?})", total, TOTAL_LIMIT);
    }
    println!("{} of {} criteria pass in {:.2?}", passed, criteria.len(), total);
    if failed > 0 {
        std::process::exit(1);
    }
}

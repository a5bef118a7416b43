//! Seeded randomized batteries. Each case draws its own stream from the
//! seed, so results do not depend on scheduling.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::abelian::AbelianCategory;
use crate::bifunctor::{balance, ladder, ladder_switched, NestedExponent, ProductExponent, Tensor};
use crate::diagram::{flatten, DiagramCat};
use crate::error::{Error, Result};
use crate::functor::{Exponent, FunctorSpec};
use crate::homology::{comparison_iso, comparison_naturality, delta_axiom_suite};
use crate::linalg::FpMatrix;
use crate::module::{Matrix, ModCat, ModMor, Module, Ring, RingMap};
use crate::random::{random_composable, random_map_into, random_object, random_ses_morphism, Sampler};
use crate::smallcat::FinCat;
use crate::spectral::{grothendieck_ss, ss_componentwise};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Les,
    Kernel,
    Delta,
    Iso,
    Ladder,
    Balance,
    Ss,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Les,
        Suite::Kernel,
        Suite::Delta,
        Suite::Iso,
        Suite::Ladder,
        Suite::Balance,
        Suite::Ss,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Les => "les",
            Suite::Kernel => "kernel",
            Suite::Delta => "delta",
            Suite::Iso => "iso",
            Suite::Ladder => "ladder",
            Suite::Balance => "balance",
            Suite::Ss => "ss",
        }
    }

    pub fn default_cases(self) -> usize {
        match self {
            Suite::Les => 200,
            Suite::Kernel | Suite::Delta | Suite::Iso | Suite::Balance => 100,
            Suite::Ladder => 24,
            Suite::Ss => 3,
        }
    }

    pub fn run(self, seed: u64, cases: usize) -> SuiteReport {
        match self {
            Suite::Les => les_suite(seed, cases),
            Suite::Kernel => kernel_suite(seed, cases),
            Suite::Delta => delta_suite(seed, cases),
            Suite::Iso => iso_suite(seed, cases),
            Suite::Ladder => ladder_suite(seed, cases),
            Suite::Balance => balance_suite(seed, cases),
            Suite::Ss => ss_suite(seed, cases),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Unknown {
                kind: "suite".into(),
                name: s.into(),
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub cases: usize,
    pub passed: usize,
    /// `(case, reason)` for each failing case.
    pub failures: Vec<(usize, String)>,
    /// Counters describing what the cases covered, by name.
    pub tallies: Vec<(String, usize)>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.passed == self.cases
    }
}

/// What one case found: `Err` for a failure, `Ok` with tally labels.
type CaseResult = std::result::Result<Vec<&'static str>, String>;

pub fn case_rng(seed: u64, case: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case as u64);
    rng
}

fn run_cases(suite: Suite, seed: u64, cases: usize, body: impl Fn(usize, &mut ChaCha8Rng) -> Result<CaseResult> + Sync) -> SuiteReport {
    let results: Vec<CaseResult> = (0..cases)
        .into_par_iter()
        .map(|k| {
            let mut rng = case_rng(seed, k);
            body(k, &mut rng).unwrap_or_else(|e| Err(format!("error: {}", e)))
        })
        .collect();
    let mut report = SuiteReport {
        suite,
        seed,
        cases,
        passed: 0,
        failures: Vec::new(),
        tallies: Vec::new(),
    };
    for (k, r) in results.into_iter().enumerate() {
        match r {
            Ok(labels) => {
                report.passed += 1;
                for l in labels {
                    match report.tallies.iter_mut().find(|(n, _)| n == l) {
                        Some((_, c)) => *c += 1,
                        None => report.tallies.push((l.to_string(), 1)),
                    }
                }
            }
            Err(msg) => report.failures.push((k, msg)),
        }
    }
    report.tallies.sort();
    report
}

fn index_for(case: usize, choices: &[fn() -> FinCat]) -> Arc<FinCat> {
    Arc::new(choices[case % choices.len()]())
}

fn integers() -> ModCat {
    ModCat::integers()
}

/// Intrinsic against componentwise exactness for composable diagram maps.
pub fn les_suite(seed: u64, cases: usize) -> SuiteReport {
    run_cases(Suite::Les, seed, cases, |k, rng| {
        let cat = DiagramCat::with_index(integers(), index_for(k, &[FinCat::arrow, FinCat::square, FinCat::parallel]));
        let (f, g) = random_composable(&cat, rng)?;
        let r = cat.exactness(&f, &g)?;
        if !r.agree() {
            return Ok(Err(format!(
                "intrinsic {} but componentwise {} (failing at {:?})",
                r.intrinsic, r.componentwise, r.failing
            )));
        }
        Ok(Ok(vec![if r.intrinsic { "exact" } else { "not exact" }]))
    })
}

/// Kernels of diagram maps: the composite vanishes, the structure maps of
/// the kernel fit over those of the source, and maps killed by `f` factor
/// uniquely.
pub fn kernel_suite(seed: u64, cases: usize) -> SuiteReport {
    run_cases(Suite::Kernel, seed, cases, |k, rng| {
        let cat = DiagramCat::with_index(integers(), index_for(k, &[FinCat::arrow, FinCat::square, FinCat::parallel]));
        let base = cat.base().clone();
        let b = random_object(&cat, rng)?;
        let f = random_map_into(&cat, &b, rng)?;
        let a = cat.source(&f);
        let (kd, mono) = cat.kernel(&f)?;
        let mut out = || -> Result<std::result::Result<(), String>> {
            if !cat.is_zero(&cat.compose(&f, &mono)?) {
                return Ok(Err("f ∘ mono ≠ 0".into()));
            }
            if !cat.is_mono(&mono)? {
                return Ok(Err("kernel map is not mono".into()));
            }
            for (m, mor) in cat.index().morphisms().iter().enumerate() {
                let left = base.compose(mono.component(mor.target), kd.map(m))?;
                let right = base.compose(a.map(m), mono.component(mor.source))?;
                if !base.equal(&left, &right)? {
                    return Ok(Err(format!("square for {} does not commute", mor.label)));
                }
            }
            for _ in 0..3 {
                let x = cat.random_free(rng);
                let data = x.free_data().expect("free");
                let mut gens = Vec::new();
                for (i, p) in &data.summands {
                    let (ki, kmono) = base.kernel(f.component(*i))?;
                    let t = base.random_from_free(p, &ki, rng)?;
                    gens.push(base.compose(&kmono, &t)?);
                }
                let h = cat.map_from_free(&x, &a, &gens)?;
                if !cat.is_zero(&cat.compose(&f, &h)?) {
                    return Ok(Err("test map not killed by f".into()));
                }
                match cat.factor_through_mono(&mono, &h)? {
                    Some(u) if cat.equal(&cat.compose(&mono, &u)?, &h)? => {}
                    _ => return Ok(Err("test map does not factor".into())),
                }
            }
            Ok(Ok(()))
        };
        Ok(out()?.map(|_| vec![if kd.objects().iter().all(|o| o.is_zero()) { "zero kernel" } else { "nonzero kernel" }]))
    })
}

fn functor_choice(k: usize) -> Result<(FunctorSpec, &'static str)> {
    Ok(match k % 3 {
        0 => (FunctorSpec::tensor_with(&Module::cyclic(2))?, "tensor Z/2"),
        1 => (FunctorSpec::tensor_with(&Module::cyclic(4))?, "tensor Z/4"),
        _ => (FunctorSpec::base_change(RingMap::reduction(2)?), "reduce mod 2"),
    })
}

/// Long exact sequences and δ-squares of `(L_*F)^I` on random morphisms of
/// short exact sequences of diagrams.
pub fn delta_suite(seed: u64, cases: usize) -> SuiteReport {
    run_cases(Suite::Delta, seed, cases, |k, rng| {
        let index = index_for(k / 3, &[FinCat::arrow, FinCat::square]);
        let cat = DiagramCat::with_index(integers(), index.clone());
        let (f, label) = functor_choice(k)?;
        let mor = random_ses_morphism(&cat, rng)?;
        let r = delta_axiom_suite(&Exponent::new(f, index), &[mor], 2)?;
        if !r.passed() {
            return Ok(Err(r.failures.join("; ")));
        }
        Ok(Ok(vec![label]))
    })
}

/// `(L_nF)^I → L_n(F^I)` is an isomorphism for `n ≤ 3` and natural in
/// random maps of diagrams.
pub fn iso_suite(seed: u64, cases: usize) -> SuiteReport {
    run_cases(Suite::Iso, seed, cases, |k, rng| {
        let index = index_for(k, &[FinCat::arrow, FinCat::square]);
        let cat = DiagramCat::with_index(integers(), index);
        let (f, label) = functor_choice(k / 2)?;
        let b = random_object(&cat, rng)?;
        let g = random_map_into(&cat, &b, rng)?;
        let a = cat.source(&g);
        for n in 0..=3 {
            let c = comparison_iso(&f, &a, n)?;
            if !c.is_iso() {
                return Ok(Err(format!("comparison not iso in degree {}", n)));
            }
            if !c.is_natural() {
                return Ok(Err(format!("structure maps disagree in degree {}", n)));
            }
            let (squares, iso) = comparison_naturality(&f, &g, n)?;
            if !iso || !squares.iter().all(|s| *s) {
                return Ok(Err(format!("naturality square fails in degree {}", n)));
            }
        }
        Ok(Ok(vec![label]))
    })
}

/// Ladders of `Tor` in both variable orders, over `Z` and over products of
/// index categories, and the nested against the product exponent.
pub fn ladder_suite(seed: u64, cases: usize) -> SuiteReport {
    run_cases(Suite::Ladder, seed, cases, |k, rng| {
        let tz = Tensor::new(Ring::Integers)?;
        let zc = integers();
        let n_max = 1;
        let (ok, label) = match k % 4 {
            0 => {
                let mors = random_ses_morphism(&zc, rng)?;
                let g = random_map_into(&zc, &random_object(&zc, rng)?, rng)?;
                (ladder(&tz, &mors, &g, 2)?.passed(), "base")
            }
            1 => {
                let mors = random_ses_morphism(&zc, rng)?;
                let g = random_map_into(&zc, &random_object(&zc, rng)?, rng)?;
                (ladder_switched(&tz, &mors, &g, 2)?.passed(), "base switched")
            }
            2 => {
                let (i, j) = (Arc::new(FinCat::arrow()), Arc::new(FinCat::point()));
                let ci = DiagramCat::with_index(zc.clone(), i.clone());
                let cj = DiagramCat::with_index(zc.clone(), j.clone());
                let f = ProductExponent::new(tz.clone(), i, j);
                let mors = random_ses_morphism(&ci, rng)?;
                let g = random_map_into(&cj, &random_object(&cj, rng)?, rng)?;
                let straight = ladder(&f, &mors, &g, n_max)?.passed();
                let mors2 = random_ses_morphism(&cj, rng)?;
                let g2 = random_map_into(&ci, &random_object(&ci, rng)?, rng)?;
                (straight && ladder_switched(&f, &mors2, &g2, n_max)?.passed(), "diagram")
            }
            _ => {
                let (i, j) = (Arc::new(FinCat::arrow()), Arc::new(FinCat::arrow()));
                let ci = DiagramCat::with_index(zc.clone(), i.clone());
                let cj = DiagramCat::with_index(zc.clone(), j.clone());
                let prod = ProductExponent::new(tz.clone(), i.clone(), j.clone());
                let nested = NestedExponent::new(tz.clone(), i, j);
                let mors = random_ses_morphism(&ci, rng)?;
                let g = random_map_into(&cj, &random_object(&cj, rng)?, rng)?;
                let lp = ladder(&prod, &mors, &g, n_max)?;
                let ln = ladder(&nested, &mors, &g, n_max)?;
                let inner = nested.inner_category();
                let mut same = true;
                for which in 0..3 {
                    for n in 0..=n_max + 1 {
                        same &= flatten(&inner, ln.top.object(which, n))? == *lp.top.object(which, n);
                        same &= flatten(&inner, ln.bottom.object(which, n))? == *lp.bottom.object(which, n);
                    }
                }
                if !same {
                    return Ok(Err("nested and product ladders differ".into()));
                }
                (lp.passed() && ln.passed(), "nested vs product")
            }
        };
        Ok(if ok { Ok(vec![label]) } else { Err(format!("{} ladder failed", label)) })
    })
}

/// `tor_first ≅ tor_second` through the canonical map, for `n ≤ 2`.
pub fn balance_suite(seed: u64, cases: usize) -> SuiteReport {
    run_cases(Suite::Balance, seed, cases, |k, rng| {
        let ring = if k % 2 == 0 { Ring::Integers } else { Ring::cyclic_group(2, 2)? };
        let label = if k % 2 == 0 { "Z" } else { "F2[C2]" };
        let cat = ModCat::new(ring.clone());
        let f = Tensor::new(ring)?;
        let a = random_object(&cat, rng)?;
        let b = random_object(&cat, rng)?;
        for n in 0..=2 {
            if !balance(&f, &a, &b, n)?.is_iso() {
                return Ok(Err(format!("not balanced in degree {} for {} and {}", n, a.describe(), b.describe())));
            }
        }
        Ok(Ok(vec![label]))
    })
}

/// The group-homology fixtures: `C2 ⊴ C4`, `C2 × C2`, and the
/// augmentation `F2[C4] → F2` as an arrow diagram. Case `k` runs fixture
/// `k mod 3`, with the degree range drawn from the case stream.
pub fn ss_suite(seed: u64, cases: usize) -> SuiteReport {
    run_cases(Suite::Ss, seed, cases, |k, rng| {
        let n_max = rng.gen_range(3..=6);
        let (c4, c2, v4) = (
            Ring::cyclic_group(2, 4)?,
            Ring::cyclic_group(2, 2)?,
            Ring::abelian_group(2, &[2, 2])?,
        );
        let pair = |from: &Ring| -> Result<(FunctorSpec, FunctorSpec)> {
            let to = c2.as_algebra().expect("group algebra");
            Ok((
                FunctorSpec::base_change(RingMap::group_hom(from.as_algebra().expect("group algebra"), to, &[0, 1, 0, 1])?),
                FunctorSpec::base_change(RingMap::augmentation(to)?),
            ))
        };
        match k % 3 {
            0 => {
                let (f, g) = pair(&c4)?;
                let r = grothendieck_ss(&f, &g, &Module::trivial(&c4)?, n_max)?;
                let ok = r.passed() && !r.ss.degenerates_at_e2() && r.ss.abutment.iter().all(|&d| d == 1);
                Ok(if ok { Ok(vec!["C2 in C4"]) } else { Err("C2 in C4 fixture".into()) })
            }
            1 => {
                let (f, g) = pair(&v4)?;
                let r = grothendieck_ss(&f, &g, &Module::trivial(&v4)?, n_max)?;
                let ok = r.passed() && r.ss.degenerates_at_e2() && r.ss.abutment.iter().enumerate().all(|(n, &d)| d == n + 1);
                Ok(if ok { Ok(vec!["C2 x C2"]) } else { Err("C2 x C2 fixture".into()) })
            }
            _ => {
                let (f, g) = pair(&c4)?;
                let a = augmentation_arrow(&c4)?;
                let r = ss_componentwise(&f, &g, &a, n_max.min(4))?;
                Ok(if r.passed() { Ok(vec!["arrow"]) } else { Err(format!("arrow naturality: {:?}", r.naturality)) })
            }
        }
    })
}

/// The augmentation `R → F_p` of a group algebra as an arrow diagram.
pub fn augmentation_arrow(ring: &Ring) -> Result<crate::diagram::Diagram<ModCat>> {
    let alg = ring
        .as_algebra()
        .ok_or_else(|| Error::Unsupported("augmentation of the integers".into()))?;
    let free = Module::free(ring, 1);
    let trivial = Module::trivial(ring)?;
    let aug = alg
        .augmentation()
        .ok_or_else(|| Error::Unsupported("algebra without augmentation".into()))?;
    let m = FpMatrix::new(alg.prime(), 1, alg.dim(), aug.clone())?;
    let map = ModMor::new(free.clone(), trivial.clone(), Matrix::Fp(m))?;
    DiagramCat::with_index(ModCat::new(ring.clone()), Arc::new(FinCat::arrow())).diagram_from(vec![free, trivial], vec![map])
}

/// Runs a suite with its default number of cases.
pub fn run_suite(suite: Suite, seed: u64) -> SuiteReport {
    suite.run(seed, suite.default_cases())
}

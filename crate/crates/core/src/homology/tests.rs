use super::*;
use crate::diagram::DiagramCat;
use crate::functor::{AdditiveFunctor, FunctorSpec};
use crate::module::{ModCat, ModMor, Module, Ring, RingMap};
use crate::smallcat::FinCat;

fn zc() -> ModCat {
    ModCat::integers()
}

fn mor(s: &Module, t: &Module, rows: &[Vec<i64>]) -> ModMor {
    ModMor::from_int_rows(s, t, rows).unwrap()
}

fn tensor_z(n: i64) -> FunctorSpec {
    FunctorSpec::tensor_with(&Module::cyclic(n)).unwrap()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn homology_of_times_six() {
    let c = zc();
    let z = Module::cyclic(0);
    let cx = Complex::new(&c, vec![z.clone(), z.clone()], vec![mor(&z, &z, &[vec![6]])]).unwrap();
    // the 1x1 Smith form of (6) is (6): coker Z/6, kernel 0
    assert_eq!(homology_at(&c, &cx, 0).unwrap().object.describe(), "Z/6");
    assert!(homology_at(&c, &cx, 1).unwrap().object.is_zero());
    assert!(homology_at(&c, &cx, 2).is_err());
}

#[test]
fn zero_differentials_give_the_terms() {
    let c = zc();
    let a = Module::int_factors(&[2, 0]);
    let b = Module::cyclic(3);
    let cx = Complex::new(&c, vec![a.clone(), b.clone()], vec![c.zero_morphism(&b, &a)]).unwrap();
    let hs = all_homology(&c, &cx).unwrap();
    assert_eq!(hs[0].object.describe(), a.describe());
    assert_eq!(hs[1].object.describe(), "Z/3");
}

#[test]
fn complex_rejects_nonzero_square() {
    let c = zc();
    let z = Module::cyclic(0);
    let one = c.identity(&z);
    let r = Complex::new(&c, vec![z.clone(), z.clone(), z.clone()], vec![one.clone(), one]);
    assert!(matches!(r, Err(crate::Error::CompositeNonzero(_))));
}

#[test]
fn tensoring_times_two_with_z2_kills_the_differential() {
    let c = zc();
    let z = Module::cyclic(0);
    let cx = Complex::new(&c, vec![z.clone(), z.clone()], vec![mor(&z, &z, &[vec![2]])]).unwrap();
    let f = tensor_z(2);
    let fc = apply_functor(&f, &cx).unwrap();
    assert!(c.is_zero(fc.d(1)));
    assert_eq!(fc.object(0).describe(), "Z/2");
}

#[test]
fn tor_one_of_z2_z2() {
    // by hand: 0 -> Z -2-> Z -> Z/2, tensored with Z/2 gives Z/2 -0-> Z/2
    let f = tensor_z(2);
    let t1 = derived(&f, &Module::cyclic(2), 1).unwrap();
    assert_eq!(t1.object.describe(), "Z/2");
    let t0 = derived(&f, &Module::cyclic(2), 0).unwrap();
    assert_eq!(t0.object.describe(), "Z/2");
    for n in 2..5 {
        assert!(derived(&f, &Module::cyclic(6), n).unwrap().object.is_zero());
    }
}

#[test]
fn projectives_are_acyclic() {
    let f = tensor_z(4);
    let free = Module::free(&Ring::Integers, 3);
    for n in 1..4 {
        assert!(derived(&f, &free, n).unwrap().object.is_zero());
    }
}

#[test]
fn resolution_of_z6_has_length_one() {
    let c = zc();
    let r = resolve(&c, &Module::cyclic(6), 3).unwrap();
    assert_eq!(r.complex.object(0).describe(), "Z");
    assert_eq!(r.complex.object(1).describe(), "Z");
    assert!(r.complex.object(2).is_zero());
    assert!(r.complex.object(3).is_zero());
    assert!(Resolution::from_complex(&c, r.complex.clone(), r.augmentation.clone()).is_ok());
}

#[test]
fn group_homology_of_c2_is_periodic() {
    // F2 over F2[C2] has the periodic resolution with d = 1 + g; after
    // applying the augmentation every differential becomes zero.
    let ring = Ring::cyclic_group(2, 2).unwrap();
    let cat = ModCat::new(ring.clone());
    let triv = Module::trivial(&ring).unwrap();
    let r = resolve(&cat, &triv, 4).unwrap();
    for n in 0..=4 {
        assert_eq!(r.complex.object(n).vector_dim(), Some(2), "degree {}", n);
    }
    let aug = FunctorSpec::base_change(RingMap::augmentation(ring.as_algebra().unwrap()).unwrap());
    for n in 0..4 {
        assert_eq!(derived(&aug, &triv, n).unwrap().object.vector_dim(), Some(1));
    }
}

#[test]
fn horseshoe_for_times_two() {
    let c = zc();
    let z = Module::cyclic(0);
    let z2 = Module::cyclic(2);
    let i = mor(&z, &z, &[vec![2]]);
    let p = mor(&z, &z2, &[vec![1]]);
    let rl = resolve(&c, &z, 3).unwrap();
    let rn = resolve(&c, &z2, 3).unwrap();
    let hs = horseshoe(&c, &i, &p, &rl, &rn).unwrap();
    let res = &hs.resolution;
    assert_eq!(res.complex.object(0).describe(), "Z^2");
    assert_eq!(res.complex.object(1).describe(), "Z");
    // exactness oracle: recompute the syzygies from scratch
    let checked = Resolution::from_complex(&c, res.complex.clone(), res.augmentation.clone()).unwrap();
    let hs0 = homology_at(&c, &checked.complex, 0).unwrap();
    assert_eq!(hs0.object.describe(), "Z");
    for n in 1..res.len() {
        assert!(homology_at(&c, &res.complex, n).unwrap().object.is_zero());
    }
    assert!(is_chain_map(&c, &rl.complex, &res.complex, &hs.inj).unwrap());
    assert!(is_chain_map(&c, &res.complex, &rn.complex, &hs.proj).unwrap());
    for n in 0..res.len() {
        assert!(c.is_short_exact(&hs.inj[n], &hs.proj[n]).unwrap());
    }
}

#[test]
fn horseshoe_with_zero_left_term() {
    let c = zc();
    let z3 = Module::cyclic(3);
    let zero = Module::zero(&Ring::Integers);
    let i = c.zero_morphism(&zero, &z3);
    let p = c.identity(&z3);
    let hs = horseshoe(&c, &i, &p, &resolve(&c, &zero, 2).unwrap(), &resolve(&c, &z3, 2).unwrap()).unwrap();
    assert_eq!(hs.resolution.complex.object(0).describe(), "Z");
    assert_eq!(hs.resolution.complex.object(1).describe(), "Z");
}

fn z2_z4_z2() -> Ses<ModCat> {
    let c = zc();
    let z2 = Module::cyclic(2);
    let z4 = Module::cyclic(4);
    Ses::new(&c, mor(&z2, &z4, &[vec![2]]), mor(&z4, &z2, &[vec![1]])).unwrap()
}

#[test]
fn bockstein_connecting_map_is_nonzero() {
    let c = zc();
    let (les, _) = les_of_ses(&tensor_z(2), &z2_z4_z2(), 1).unwrap();
    // enumerate Z/2 ⊗ Z/2 -> Z/4 ⊗ Z/2: the generator goes to 2 ⊗ 1 = 1 ⊗ 2 = 0
    assert!(c.is_zero(&les.f[0]));
    assert_eq!(les.object(2, 1).describe(), "Z/2");
    assert_eq!(les.object(0, 0).describe(), "Z/2");
    assert!(!c.is_zero(&les.delta[0]));
    assert!(c.is_iso(&les.delta[0]).unwrap());
    assert!(les.check(&c).unwrap().all_exact());
}

#[test]
fn split_sequence_has_zero_connecting_maps() {
    let c = zc();
    let z2 = Module::cyclic(2);
    let z3 = Module::cyclic(3);
    let bp = c.biproduct(&[z2.clone(), z3.clone()]).unwrap();
    let s = Ses::new(&c, bp.injections[0].clone(), bp.projections[1].clone()).unwrap();
    let (les, _) = les_of_ses(&tensor_z(6), &s, 2).unwrap();
    assert!(les.delta.iter().all(|d| c.is_zero(d)));
    assert!(les.check(&c).unwrap().all_exact());
}

#[test]
fn times_two_sequence_with_z2() {
    // Tor1(Z/2) -> Z/2 -> Z/2 -> Z/2 -> 0 over F2: dims 1,1,1,1 with the
    // middle map zero, so δ1 is onto and H_1 of Z vanishes
    let c = zc();
    let z = Module::cyclic(0);
    let s = Ses::new(&c, mor(&z, &z, &[vec![2]]), mor(&z, &Module::cyclic(2), &[vec![1]])).unwrap();
    let (les, _) = les_of_ses(&tensor_z(2), &s, 2).unwrap();
    assert_eq!(les.object(2, 1).describe(), "Z/2");
    assert!(les.object(0, 1).is_zero());
    assert!(les.object(1, 1).is_zero());
    for k in 0..3 {
        assert_eq!(les.object(k, 0).describe(), "Z/2");
    }
    assert!(c.is_zero(&les.f[0]));
    let check = les.check(&c).unwrap();
    assert!(check.all_exact(), "{:?}", check);
    assert_eq!(check.positions.len(), 9);
}

#[test]
fn planted_noncommuting_morphism_is_rejected() {
    let c = zc();
    let s = z2_z4_z2();
    let z2 = Module::cyclic(2);
    let z4 = Module::cyclic(4);
    let one2 = c.identity(&z2);
    let bad_m = mor(&z4, &z4, &[vec![3]]);
    // ×3 on Z/4 induces the identity on Z/2, not zero
    let r = MorphismOfSes::new(&c, s.clone(), s.clone(), one2.clone(), bad_m, c.zero_morphism(&z2, &z2));
    assert!(r.is_err());
    assert!(MorphismOfSes::new(&c, s.clone(), s.clone(), one2.clone(), c.identity(&z4), one2).is_ok());
}

#[test]
fn identity_morphism_of_ses_passes_axioms() {
    let c = zc();
    let s = z2_z4_z2();
    let id = MorphismOfSes::identity(&c, &s);
    let report = delta_axiom_suite(&tensor_z(2), &[id], 2).unwrap();
    assert!(report.passed(), "{:?}", report);
    assert_eq!(report.cases, 1);
    assert_eq!(report.exact_sequences, 2);
    assert_eq!(report.commuting_squares, report.total_squares);
}

#[test]
fn bockstein_ladder_to_split_sequence() {
    // (Z -2-> Z -> Z/2) maps to (Z/2 -> Z/4 -> Z/2) by reduction
    let c = zc();
    let z = Module::cyclic(0);
    let z2 = Module::cyclic(2);
    let z4 = Module::cyclic(4);
    let top = Ses::new(&c, mor(&z, &z, &[vec![2]]), mor(&z, &z2, &[vec![1]])).unwrap();
    let bottom = z2_z4_z2();
    let m = MorphismOfSes::new(&c, top, bottom, mor(&z, &z2, &[vec![1]]), mor(&z, &z4, &[vec![1]]), c.identity(&z2)).unwrap();
    let ladder = delta_ladder(&tensor_z(2), &m, 2).unwrap();
    assert!(ladder.passed(), "{:?}", ladder.squares);
    // δ1 on both rows is onto F0(L) = Z/2, and L_0 of Z -> Z/2 is the identity of Z/2
    assert!(c.is_iso(&ladder.vertical[0][0]).unwrap());
}

#[test]
fn connecting_map_ignores_perturbation() {
    let c = zc();
    let s = z2_z4_z2();
    let (les, _) = les_of_ses(&tensor_z(4), &s, 2).unwrap();
    for n in 1..=2 {
        let hc = &les.homology[2][n];
        let ha = &les.homology[0][n - 1];
        let plain = connecting(&c, &les.complexes, n, hc, ha, None).unwrap();
        for k in 1..4i64 {
            let t = move |q: &Module, a: &Module| -> crate::Result<ModMor> {
                let rows: Vec<Vec<i64>> = (0..q.gens_count())
                    .map(|r| (0..a.gens_count()).map(|s| (k * (r as i64 + 1) + s as i64) % 5).collect())
                    .collect();
                ModMor::from_int_rows(q, a, &rows)
            };
            let bent = connecting(&c, &les.complexes, n, hc, ha, Some(&t)).unwrap();
            assert!(c.equal(&plain, &bent).unwrap());
        }
        assert!(c.equal(&plain, &les.delta[n - 1]).unwrap());
    }
}

#[test]
fn comparison_on_arrow_z4_to_z2() {
    let cat = DiagramCat::new(zc(), FinCat::arrow());
    let z4 = Module::cyclic(4);
    let z2 = Module::cyclic(2);
    let a = cat.diagram_from(vec![z4.clone(), z2.clone()], vec![mor(&z4, &z2, &[vec![1]])]).unwrap();
    let r = comparison_iso(&tensor_z(2), &a, 1).unwrap();
    assert!(r.is_iso());
    assert!(r.is_natural());
    for (k, n) in [4i64, 2].iter().enumerate() {
        let expected = Module::cyclic(gcd(*n, 2));
        assert_eq!(r.component_side[k].describe(), expected.describe());
        assert_eq!(r.diagram_side.object(k).describe(), expected.describe());
    }
    let beyond = comparison_iso(&tensor_z(2), &a, 3).unwrap();
    assert!(beyond.is_iso());
    assert!(beyond.component_side.iter().all(|m| m.is_zero()));
    assert!(beyond.diagram_side.objects().iter().all(|m| m.is_zero()));
}

#[test]
fn comparison_is_natural_in_the_diagram() {
    let cat = DiagramCat::new(zc(), FinCat::arrow());
    let z = Module::cyclic(0);
    let z4 = Module::cyclic(4);
    let z2 = Module::cyclic(2);
    let a = cat.diagram_from(vec![z.clone(), z4.clone()], vec![mor(&z, &z4, &[vec![1]])]).unwrap();
    let b = cat.diagram_from(vec![z4.clone(), z2.clone()], vec![mor(&z4, &z2, &[vec![1]])]).unwrap();
    let g = cat.morphism(&a, &b, vec![mor(&z, &z4, &[vec![1]]), mor(&z4, &z2, &[vec![1]])]).unwrap();
    for n in 0..3 {
        let (squares, iso) = comparison_naturality(&tensor_z(2), &g, n).unwrap();
        assert!(iso);
        assert!(squares.iter().all(|b| *b));
    }
}

#[test]
fn diagram_les_over_arrow_is_componentwise_exact() {
    let base = zc();
    let cat = DiagramCat::new(base.clone(), FinCat::arrow());
    let z = Module::cyclic(0);
    let z2 = Module::cyclic(2);
    let z4 = Module::cyclic(4);
    // 0 -> (Z -> Z/2) -> (Z -> Z/4) -> (Z/2 -> Z/2) -> 0, constant-ish
    let l = cat.diagram_from(vec![z.clone(), z2.clone()], vec![mor(&z, &z2, &[vec![1]])]).unwrap();
    let m = cat.diagram_from(vec![z.clone(), z4.clone()], vec![mor(&z, &z4, &[vec![1]])]).unwrap();
    let n = cat.diagram_from(vec![z2.clone(), z2.clone()], vec![base.identity(&z2)]).unwrap();
    let i = cat.morphism(&l, &m, vec![mor(&z, &z, &[vec![2]]), mor(&z2, &z4, &[vec![2]])]).unwrap();
    let p = cat.morphism(&m, &n, vec![mor(&z, &z2, &[vec![1]]), mor(&z4, &z2, &[vec![1]])]).unwrap();
    let s = Ses::new(&cat, i, p).unwrap();
    let f = crate::functor::Exponent::new(tensor_z(2), cat.index().clone());
    let (les, _) = les_of_ses(&f, &s, 2).unwrap();
    let check = les.check(&f.target_category()).unwrap();
    assert!(check.all_exact(), "{:?}", check);
    let comps = diagram_les_components(&f.target_category(), &les).unwrap();
    assert!(comps.iter().all(|(_, ok)| *ok), "{:?}", comps);
}

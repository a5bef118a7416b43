use super::*;

fn z() -> ModCat {
    ModCat::integers()
}

fn mor(s: &Module, t: &Module, rows: &[Vec<i64>]) -> ModMor {
    ModMor::from_int_rows(s, t, rows).unwrap()
}

#[test]
fn describe_orders_invariant_factors() {
    assert_eq!(Module::int_factors(&[2, 3, 0]).describe(), "Z/6 ⊕ Z");
    assert_eq!(Module::int_factors(&[2, 6]).describe(), "Z/2 ⊕ Z/6");
    assert_eq!(Module::zero(&Ring::Integers).describe(), "0");
}

#[test]
fn multiplication_by_two_on_z() {
    let c = z();
    let zz = Module::cyclic(0);
    let f = mor(&zz, &zz, &[vec![2]]);
    let (k, _) = c.kernel(&f).unwrap();
    assert!(k.is_zero());
    let (q, _) = c.cokernel(&f).unwrap();
    assert_eq!(q.describe(), "Z/2");
}

#[test]
fn kernel_of_projection_z4_to_z2() {
    let c = z();
    let z4 = Module::cyclic(4);
    let z2 = Module::cyclic(2);
    let f = mor(&z4, &z2, &[vec![1]]);
    let (k, i) = c.kernel(&f).unwrap();
    assert_eq!(k.describe(), "Z/2");
    assert!(c.is_zero(&c.compose(&f, &i).unwrap()));
    assert!(c.is_mono(&i).unwrap());
    assert!(c.is_short_exact(&i, &f).unwrap());
}

#[test]
fn ill_defined_map_is_rejected() {
    let z2 = Module::cyclic(2);
    let z3 = Module::cyclic(3);
    assert!(ModMor::from_int_rows(&z2, &z3, &[vec![1]]).is_err());
    assert!(ModMor::from_int_rows(&z2, &Module::cyclic(4), &[vec![2]]).is_ok());
}

#[test]
fn exactness_fails_off_the_image() {
    let c = z();
    let zz = Module::cyclic(0);
    let two = mor(&zz, &zz, &[vec![2]]);
    let zero = c.zero_morphism(&zz, &zz);
    // 0 -> Z -2-> Z: the kernel of `two` is zero, so exact at the middle
    assert!(c.is_exact_at(&zero, &two).unwrap());
    // Z -0-> Z -0-> Z is not exact
    assert!(!c.is_exact_at(&zero, &zero).unwrap());
    assert!(matches!(c.is_exact_at(&two, &two), Err(Error::CompositeNonzero(_))));
}

#[test]
fn preimage_in_quotient() {
    let z6 = Module::cyclic(6);
    let z3 = Module::cyclic(3);
    let f = mor(&z6, &z3, &[vec![2]]);
    let y = z3.int_element(&[1]).unwrap();
    let x = preimage(&f, &y).unwrap().unwrap();
    assert_eq!(f.apply(&x).unwrap(), y);
}

#[test]
fn lift_through_epi_from_free() {
    let c = z();
    let z6 = Module::cyclic(6);
    let cover = c.free_cover(&z6).unwrap();
    let z2 = Module::cyclic(2);
    let g = mor(&Module::free(&Ring::Integers, 1), &z2, &[vec![1]]);
    let q = mor(&z6, &z2, &[vec![1]]);
    let _ = cover;
    let h = c.lift_through_epi(&q, &g).unwrap().unwrap();
    assert!(c.equal(&c.compose(&q, &h).unwrap(), &g).unwrap());
}

#[test]
fn factor_through_epi_detects_non_vanishing() {
    let c = z();
    let zz = Module::cyclic(0);
    let z2 = Module::cyclic(2);
    let q = mor(&zz, &z2, &[vec![1]]);
    let id = c.identity(&zz);
    assert!(c.factor_through_epi(&q, &id).unwrap().is_none());
    let two = mor(&zz, &Module::cyclic(4), &[vec![2]]);
    let u = c.factor_through_epi(&q, &two).unwrap().unwrap();
    assert!(c.equal(&c.compose(&u, &q).unwrap(), &two).unwrap());
}

#[test]
fn algebra_kernel_cokernel_of_norm_map() {
    let ring = Ring::cyclic_group(2, 2).unwrap();
    let c = ModCat::new(ring.clone());
    let a = Module::free(&ring, 1);
    // multiplication by 1 + g on F2[C2]
    let alg = ring.as_algebra().unwrap();
    let n = alg.right_mult_by(&[1, 1]);
    let f = ModMor::new(a.clone(), a.clone(), Matrix::Fp(n)).unwrap();
    let (k, i) = c.kernel(&f).unwrap();
    let (q, p) = c.cokernel(&f).unwrap();
    assert_eq!(k.vector_dim(), Some(1));
    assert_eq!(q.vector_dim(), Some(1));
    assert!(c.is_exact_at(&i, &f).unwrap());
    assert!(c.is_exact_at(&f, &p).unwrap());
    let cover = c.free_cover(&q).unwrap();
    assert!(c.is_epi(&cover).unwrap());
    assert_eq!(cover.source().gens_count(), 1);
}

#[test]
fn algebra_biproduct_of_free_is_free() {
    let ring = Ring::cyclic_group(3, 3).unwrap();
    let c = ModCat::new(ring.clone());
    let a = Module::free(&ring, 1);
    let b = c.biproduct(&[a.clone(), a.clone()]).unwrap();
    assert!(b.object.is_free());
    for (i, p) in b.injections.iter().zip(&b.projections) {
        assert!(c.equal(&c.compose(p, i).unwrap(), &c.identity(&a)).unwrap());
    }
}

use std::sync::Arc;

use funcat_core::random::{random_composable, random_object, random_ses_morphism};
use funcat_core::suites::{case_rng, run_suite, Suite};
use funcat_core::{AbelianCategory, DiagramCat, FinCat, ModCat, Ring};
use proptest::prelude::*;

#[test]
fn every_suite_passes_with_a_fixed_seed() {
    for suite in Suite::ALL {
        let r = run_suite(suite, 42);
        assert!(r.ok(), "{}: {:?}", suite, &r.failures[..r.failures.len().min(3)]);
        assert_eq!(r.cases, suite.default_cases());
    }
}

#[test]
fn reports_depend_only_on_the_seed() {
    for suite in [Suite::Les, Suite::Balance, Suite::Kernel] {
        assert_eq!(suite.run(7, 20), suite.run(7, 20));
    }
}

#[test]
fn exactness_suite_sees_both_verdicts() {
    let r = run_suite(Suite::Les, 3);
    let count = |l: &str| r.tallies.iter().find(|(n, _)| n == l).map_or(0, |(_, c)| *c);
    assert!(count("exact") >= 20 && count("not exact") >= 20, "{:?}", r.tallies);
}

#[test]
fn suite_names_round_trip() {
    for suite in Suite::ALL {
        assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
    }
    assert!("nope".parse::<Suite>().is_err());
}

fn index(k: u8) -> Arc<FinCat> {
    Arc::new(match k % 3 {
        0 => FinCat::arrow(),
        1 => FinCat::square(),
        _ => FinCat::parallel(),
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composable_pairs_compose_to_zero(seed in any::<u64>(), k in any::<u8>()) {
        let cat = DiagramCat::with_index(ModCat::integers(), index(k));
        let (f, g) = random_composable(&cat, &mut case_rng(seed, 0)).unwrap();
        prop_assert!(cat.is_zero(&cat.compose(&g, &f).unwrap()));
    }

    #[test]
    fn ses_morphisms_are_valid(seed in any::<u64>(), k in any::<u8>()) {
        // the constructor re-checks exactness of both rows and both squares
        let cat = DiagramCat::with_index(ModCat::integers(), index(k));
        let m = random_ses_morphism(&cat, &mut case_rng(seed, 1)).unwrap();
        prop_assert!(cat.is_short_exact(&m.target.i, &m.target.p).unwrap());
    }

    #[test]
    fn group_algebra_objects_are_modules(seed in any::<u64>()) {
        let cat = ModCat::new(Ring::cyclic_group(2, 2).unwrap());
        let a = random_object(&cat, &mut case_rng(seed, 2)).unwrap();
        prop_assert!(a.vector_dim().is_some());
    }
}

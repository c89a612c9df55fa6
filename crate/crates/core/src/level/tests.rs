use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::algebra::{make_ring, Ring};
use crate::complexes::sum_of;
use crate::modules::ModuleMap;

fn dual_numbers() -> Ring {
    make_ring("artin(F2; x | x^2)").unwrap()
}

fn koszul_x(r: &Ring) -> Complex {
    let a = FgModule::free(r, 1);
    let x = ModuleMap::from_matrix(&a, &a, r.artin_data().unwrap().actions[0].clone()).unwrap();
    Complex::new(r, 0, vec![a.clone(), a], vec![x]).unwrap()
}

fn opts() -> LevelOptions {
    LevelOptions::default()
}

#[test]
fn hom_from_a_free_module_is_homology() {
    let r = dual_numbers();
    let a = Complex::stalk(&FgModule::free(&r, 1), 0);
    let k = koszul_x(&r);
    let s = derived_hom(&a, &k).unwrap();
    assert_eq!(s.dim(), k.homology(0).unwrap().module().dim().unwrap());
    let e = Complex::stalk(&FgModule::injective_hull(&r).unwrap(), 0);
    assert_eq!(derived_hom(&a, &e).unwrap().dim(), 2);
}

#[test]
fn endomorphisms_of_the_residue_field() {
    let r = dual_numbers();
    let k = Complex::stalk(&FgModule::residue_field(&r), 0);
    let s = derived_hom(&k, &k).unwrap();
    assert_eq!(s.dim(), 1);
    // Ext^1(k, k) = Hom(k, Σk) is also one-dimensional
    assert_eq!(derived_hom(&k, &k.shift(1)).unwrap().dim(), 1);
    assert_eq!(derived_hom(&k, &k.shift(-1)).unwrap().dim(), 0);
}

#[test]
fn koszul_classes_vanish_on_homology() {
    let r = dual_numbers();
    let k = koszul_x(&r);
    let h = k.homology_complex().unwrap();
    let s = derived_hom(&k, &h).unwrap();
    for f in s.class_basis().unwrap() {
        assert!(f.homology_map(1).unwrap().is_zero());
    }
    assert!(matches!(level_one_test(&k, &opts()).unwrap(), LevelOne::No(_)));
}

#[test]
fn level_one_examples() {
    let r = dual_numbers();
    let k = FgModule::residue_field(&r);
    let z = Complex::graded(&r, 0, vec![k.clone(), k.clone()]);
    assert!(matches!(
        level_one_test(&z, &opts()).unwrap(),
        LevelOne::Yes(LevelOneWitness::ZeroDifferential)
    ));

    let p = make_ring("poly(F101; x,y)").unwrap();
    let a = FgModule::free(&p, 1);
    let b = FgModule::free_twisted(&p, &[0, 1]);
    let incl = ModuleMap::from_generator_images(
        &a,
        &b,
        &[b.minimal_generators()[0].0.clone()],
    )
    .unwrap();
    let c = Complex::new(&p, 0, vec![b, a], vec![incl]).unwrap();
    let LevelOne::Yes(w) = level_one_test(&c, &opts()).unwrap() else {
        panic!("split complex is formal");
    };
    assert!(matches!(w, LevelOneWitness::FromHomology(_)));
    assert!(w.verify().unwrap());
}

#[test]
fn koszul_levels() {
    let r = dual_numbers();
    let k = koszul_x(&r);
    for class in [LevelClass::Inj, LevelClass::GI, LevelClass::Proj] {
        let c = level_report(&k, class, &opts()).unwrap();
        assert_eq!(c.verdict, Some(2), "{class:?}: {:?}", c.summary());
        assert!(c.verify().unwrap());
    }
    let u = upper_certificate(&k, LevelClass::GI, &opts()).unwrap();
    assert_eq!(u.value, 2);
    assert!(u.verify().unwrap());
    let inj = upper_certificate(&k, LevelClass::Inj, &opts());
    assert!(matches!(inj, Err(Error::HypothesisNotMet(_))));
}

#[test]
fn residue_field_is_gorenstein_injective() {
    let r = dual_numbers();
    let k = Complex::stalk(&FgModule::residue_field(&r), 0);
    let c = level_report(&k, LevelClass::GI, &opts()).unwrap();
    assert_eq!(c.verdict, Some(1));
}

#[test]
fn regular_ring_residue_field() {
    let p = make_ring("poly(F101; x,y,z)").unwrap();
    let k = Complex::stalk(&FgModule::residue_field(&p), 0);
    let u = upper_certificate(&k, LevelClass::Proj, &opts()).unwrap();
    assert_eq!(u.value, 4);
    assert_eq!(u.theorem_bound, Some(4));
    assert!(u.verify().unwrap());
    let l = ghost_lower_bound(&k, LevelClass::Proj, 4, &opts()).unwrap();
    assert_eq!(l.value, 4);
    assert!(l.verify().unwrap());
}

#[test]
fn ghost_bounds_on_small_examples() {
    let p = make_ring("poly(F101; x)").unwrap();
    let a = Complex::stalk(&FgModule::free(&p, 2), 3);
    assert_eq!(ghost_lower_bound(&a, LevelClass::Proj, 3, &opts()).unwrap().value, 1);
    let k = Complex::stalk(&FgModule::residue_field(&p), 0);
    let l = ghost_lower_bound(&k, LevelClass::Proj, 3, &opts()).unwrap();
    assert_eq!(l.value, 2);

    let r = dual_numbers();
    let l = ghost_lower_bound(&koszul_x(&r), LevelClass::Inj, 3, &opts()).unwrap();
    assert_eq!(l.value, 2);
    assert!(l.verify().unwrap());
    assert!(matches!(
        ghost_lower_bound(&k, LevelClass::GI, 2, &opts()),
        Err(Error::HypothesisNotMet(_))
    ));
}

#[test]
fn two_layer_on_a_complex_of_frees() {
    let p = make_ring("poly(F101; x,y)").unwrap();
    let a = FgModule::free(&p, 1);
    let b = FgModule::free_twisted(&p, &[0, 1]);
    let incl = ModuleMap::from_generator_images(&a, &b, &[b.minimal_generators()[0].0.clone()]).unwrap();
    let c = Complex::new(&p, 0, vec![b, a], vec![incl]).unwrap();
    let u = upper_certificate(&c, LevelClass::Flat, &opts()).unwrap();
    assert_eq!(u.rule, UpperRule::TwoLayer);
    assert!(u.value <= 2);
    assert!(u.verify().unwrap());
}

#[test]
fn depths() {
    let p = make_ring("poly(F101; x,y)").unwrap();
    assert_eq!(depth_module(&FgModule::free(&p, 1)).unwrap(), Some(2));
    assert_eq!(depth_module(&FgModule::residue_field(&p)).unwrap(), Some(0));
    assert_eq!(depth_module(&FgModule::zero(&p)).unwrap(), None);
    let r = dual_numbers();
    assert_eq!(depth_module(&FgModule::free(&r, 1)).unwrap(), Some(0));
    assert_eq!(depth_module(&FgModule::residue_field(&r)).unwrap(), Some(0));
    // the ideal (x, y) has depth 1
    let m = crate::resolutions::minimal_free_resolution(&FgModule::residue_field(&p), 1).unwrap();
    assert_eq!(depth_module(&m.syzygies[1]).unwrap(), Some(1));
}

#[test]
fn bass_formula_at_depth_zero() {
    let r = dual_numbers();
    let e = Complex::stalk(&FgModule::injective_hull(&r).unwrap(), 0);
    let b = bass_check(&e, &opts()).unwrap();
    assert!(b.require().is_ok());
    assert_eq!(b.holds, Some(true));
    assert!(b.gi.consistent);

    let b = bass_check(&koszul_x(&r), &opts()).unwrap();
    assert!(matches!(b.require(), Err(Error::HypothesisNotMet(_))));
    assert_eq!(b.level.verdict, Some(2));
    assert_eq!(b.holds, None);

    let s = make_ring("artin(F2; x,y | x^2, xy, y^2)").unwrap();
    let e = Complex::stalk(&FgModule::injective_hull(&s).unwrap(), 0);
    let b = bass_check(&e, &opts()).unwrap();
    assert_eq!(b.level.verdict, Some(1));
}

#[test]
fn summaries_serialize() {
    let r = dual_numbers();
    let c = level_report(&koszul_x(&r), LevelClass::GI, &opts()).unwrap();
    let json = serde_json::to_string(&c.summary()).unwrap();
    assert!(json.contains("\"class\":\"GI\""));
    assert!(json.contains("\"verdict\":2"));
}

#[test]
fn exact_complexes_have_level_zero() {
    let r = dual_numbers();
    let a = FgModule::free(&r, 1);
    let c = Complex::new(&r, 0, vec![a.clone(), a.clone()], vec![ModuleMap::identity(&a)]).unwrap();
    let cert = level_report(&c, LevelClass::Proj, &opts()).unwrap();
    assert_eq!(cert.verdict, Some(0));
}

fn random_complex(r: &Ring, seed: u64) -> Complex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    crate::random::complex(r, 0, 2, 3, &mut rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn reports_are_sound_and_shift_invariant(seed in any::<u64>(), j in -2i32..=2) {
        let r = dual_numbers();
        let m = random_complex(&r, seed);
        for class in [LevelClass::Inj, LevelClass::GI, LevelClass::Flat] {
            let a = level_report(&m, class, &opts()).unwrap();
            prop_assert!(a.verify().unwrap());
            if let Some(u) = a.upper_value() {
                prop_assert!(a.lower_value() <= u);
            }
            let b = level_report(&m.shift(j), class, &opts()).unwrap();
            prop_assert_eq!(a.verdict, b.verdict);
            prop_assert_eq!(a.upper_value(), b.upper_value());
            prop_assert_eq!(a.lower_value(), b.lower_value());
        }
    }

    #[test]
    fn sums_do_not_raise_upper_bounds(s1 in any::<u64>(), s2 in any::<u64>()) {
        let r = dual_numbers();
        let (a, b) = (random_complex(&r, s1), random_complex(&r, s2));
        let (sum, _, _) = sum_of(&r, &[a.clone(), b.clone()]);
        let ua = level_report(&a, LevelClass::GI, &opts()).unwrap().upper_value();
        let ub = level_report(&b, LevelClass::GI, &opts()).unwrap().upper_value();
        let us = level_report(&sum, LevelClass::GI, &opts()).unwrap().upper_value();
        if let (Some(x), Some(y), Some(z)) = (ua, ub, us) {
            prop_assert!(z <= x.max(y));
        }
    }

    #[test]
    fn injective_upper_bounds_meet_the_theorem(seed in any::<u64>()) {
        let r = make_ring("artin(F3; x | x^3)").unwrap();
        let m = random_complex(&r, seed);
        for class in [LevelClass::Inj, LevelClass::GI] {
            if let Ok(u) = upper_certificate(&m, class, &opts()) {
                prop_assert!(u.verify().unwrap());
                if let Some(b) = u.theorem_bound {
                    prop_assert!(u.value <= b);
                }
            }
        }
    }
}

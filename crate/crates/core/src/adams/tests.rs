use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::algebra::{make_ring, Ring};
use crate::modules::isomorphism;

fn dual_numbers() -> Ring {
    make_ring("artin(F2; x | x^2)").unwrap()
}

fn koszul_x(r: &Ring) -> Complex {
    let a = FgModule::free(r, 1);
    let x = ModuleMap::from_matrix(&a, &a, r.artin_data().unwrap().actions[0].clone()).unwrap();
    Complex::new(r, 0, vec![a.clone(), a], vec![x]).unwrap()
}

fn iso(a: &FgModule, b: &FgModule) -> bool {
    isomorphism(a, b, 0).unwrap().is_iso()
}

fn homology_dims(c: &Complex) -> Vec<(i32, usize)> {
    c.degrees()
        .map(|i| (i, c.homology(i).unwrap().module().dim().unwrap()))
        .filter(|p| p.1 > 0)
        .collect()
}

#[test]
fn projective_step_on_a_free_module() {
    let r = dual_numbers();
    let a = FgModule::free(&r, 1);
    let s = adams_step_proj(&Complex::stalk(&a, 0)).unwrap();
    assert!(s.verified());
    assert_eq!(s.layer, Complex::stalk(&a, 0));
    assert!(s.next.is_exact().unwrap());
}

#[test]
fn projective_step_on_the_residue_field() {
    let r = dual_numbers();
    let k = FgModule::residue_field(&r);
    let s = adams_step_proj(&Complex::stalk(&k, 0)).unwrap();
    assert!(s.verified());
    assert!(iso(&s.layer.module(0), &FgModule::free(&r, 1)));
    assert_eq!(homology_dims(&s.next), vec![(0, 1)]);
    assert!(iso(s.next.homology(0).unwrap().module(), &k));
}

#[test]
fn projective_step_on_koszul() {
    let r = dual_numbers();
    let s = adams_step_proj(&koszul_x(&r)).unwrap();
    assert!(s.verified());
    let a = FgModule::free(&r, 1);
    assert_eq!(s.layer.window(), Some((0, 1)));
    for i in 0..=1 {
        assert!(iso(&s.layer.module(i), &a));
    }
    let k = FgModule::residue_field(&r);
    for i in 0..=1 {
        assert!(iso(s.next.homology(i).unwrap().module(), &k));
    }
    assert_eq!(s.layer_flat.module.dim(), Some(4));
}

#[test]
fn injective_steps() {
    let r = dual_numbers();
    let e = FgModule::injective_hull(&r).unwrap();
    let s = adams_step_inj(&Complex::stalk(&e, 0)).unwrap();
    assert!(s.verified());
    assert!(iso(&s.layer.module(0), &e));
    assert!(s.next.is_exact().unwrap());

    let k = FgModule::residue_field(&r);
    let s = adams_step_inj(&Complex::stalk(&k, 0)).unwrap();
    assert!(s.verified());
    assert!(iso(&s.layer.module(0), &FgModule::free(&r, 1)));
    assert_eq!(homology_dims(&s.next), vec![(0, 1)]);

    let t = adams_tower(&koszul_x(&r), TowerSide::Injective, 1).unwrap();
    assert!(t.verified());
    assert_eq!(t.steps[0].layer.window(), Some((0, 1)));
    assert!(verify_splice(&t).unwrap().exact());

    let p = make_ring("poly(F101; x)").unwrap();
    assert!(matches!(
        adams_step_inj(&Complex::stalk(&FgModule::residue_field(&p), 0)),
        Err(Error::WrongMode(_))
    ));
}

#[test]
fn towers() {
    let r = dual_numbers();
    let k = FgModule::residue_field(&r);
    let base = Complex::stalk(&k, 0);
    let t = adams_tower(&base, TowerSide::Projective, 0).unwrap();
    assert!(t.is_empty());
    assert_eq!(t.object(0), &base);

    let t = adams_tower(&base, TowerSide::Projective, 3).unwrap();
    assert!(t.verified());
    for n in 1..=3 {
        let o = t.object(n);
        assert_eq!(homology_dims(o), vec![(0, 1)]);
        assert!(iso(o.homology(0).unwrap().module(), &k));
    }

    let p = make_ring("poly(F101; x,y)").unwrap();
    let kp = FgModule::residue_field(&p);
    let t = adams_tower(&Complex::stalk(&kp, 0), TowerSide::Projective, 3).unwrap();
    assert!(t.verified());
    let h2 = t.object(2).homology(0).unwrap().module().clone();
    assert!(h2.is_free());
    assert_eq!(h2.num_generators(), 1);
    assert!(t.object(3).is_exact().unwrap());
    let json = serde_json::to_string(&t.summary().unwrap()).unwrap();
    assert!(json.contains("\"verified\":true"));
}

#[test]
fn splices() {
    let r = dual_numbers();
    let k = Complex::stalk(&FgModule::residue_field(&r), 0);
    let t = adams_tower(&k, TowerSide::Projective, 1).unwrap();
    let rep = verify_splice(&t).unwrap();
    assert_eq!(rep, SpliceReport { terms: 3, failure: None });
    // 0 → k → A → k → 0 by dimension count
    let dims: Vec<usize> = [t.object(1).homology(0).unwrap().module(), &t.steps[0].layer.module(0)]
        .iter()
        .map(|m| m.dim().unwrap())
        .collect();
    assert_eq!(dims, vec![1, 2]);

    let a = Complex::stalk(&FgModule::free(&r, 1), 0);
    let t = adams_tower(&a, TowerSide::Projective, 1).unwrap();
    assert!(verify_splice(&t).unwrap().exact());
    assert!(t.object(1).is_exact().unwrap());

    let t = adams_tower(&koszul_x(&r), TowerSide::Projective, 2).unwrap();
    let rep = verify_splice(&t).unwrap();
    assert_eq!(rep.terms, 4);
    assert!(rep.exact());
    // alternating sum of the flattened dimensions vanishes
    let h = |c: &Complex| -> i64 { homology_dims(c).iter().map(|p| p.1 as i64).sum() };
    let f1 = t.steps[1].layer_flat.module.dim().unwrap() as i64;
    let f0 = t.steps[0].layer_flat.module.dim().unwrap() as i64;
    assert_eq!(h(t.object(2)) - f1 + f0 - h(&t.base), 0);

    let t0 = adams_tower(&k, TowerSide::Projective, 0).unwrap();
    assert!(verify_splice(&t0).is_err());
}

fn random_complex(r: &Ring, seed: u64) -> Complex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    crate::random::complex(r, 0, 2, 3, &mut rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn projective_towers_splice_artin(seed in any::<u64>(), n in 1usize..=4) {
        let r = make_ring("artin(F3; x | x^3)").unwrap();
        let c = random_complex(&r, seed);
        let t = adams_tower(&c, TowerSide::Projective, n).unwrap();
        prop_assert!(t.verified());
        prop_assert!(verify_splice(&t).unwrap().exact());
    }

    #[test]
    fn injective_towers_splice(seed in any::<u64>(), n in 1usize..=4) {
        let r = make_ring("artin(F2; x | x^2)").unwrap();
        let c = random_complex(&r, seed);
        let t = adams_tower(&c, TowerSide::Injective, n).unwrap();
        prop_assert!(t.verified());
        prop_assert!(verify_splice(&t).unwrap().exact());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn projective_towers_splice_graded(seed in any::<u64>(), n in 1usize..=4) {
        let r = make_ring("poly(F101; x,y)").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = crate::random::complex(&r, 0, 2, 2, &mut rng);
        let t = adams_tower(&c, TowerSide::Projective, n).unwrap();
        prop_assert!(t.verified());
        prop_assert!(verify_splice(&t).unwrap().exact());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn homology_of_towers_is_independent_of_cycle_choice(seed in any::<u64>()) {
        let r = make_ring("artin(F3; x | x^3)").unwrap();
        let c = random_complex(&r, seed);
        let a = adams_tower(&c, TowerSide::Projective, 2).unwrap();
        let b = adams_tower_with(&c, TowerSide::Projective, 2, CycleChoice::Perturbed(seed)).unwrap();
        prop_assert!(b.verified());
        for n in 1..=2 {
            let (x, y) = (a.object(n), b.object(n));
            let (lo, hi) = all_degrees(&[x, y]).unwrap_or((0, -1));
            for i in lo..=hi {
                prop_assert!(iso(x.homology(i).unwrap().module(), y.homology(i).unwrap().module()));
            }
        }
    }
}

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::algebra::make_ring;
use crate::modules::{isomorphism, ModuleMap};
use crate::random;

fn dual_numbers() -> Ring {
    make_ring("artin(F2; x | x^2)").unwrap()
}

fn mult_by_x(r: &Ring) -> ModuleMap {
    let a = FgModule::free(r, 1);
    ModuleMap::from_matrix(&a, &a, r.artin_data().unwrap().actions[0].clone()).unwrap()
}

/// `A --x--> A` in degrees 1 and 0.
fn koszul(r: &Ring) -> Complex {
    let a = FgModule::free(r, 1);
    Complex::new(r, 0, vec![a.clone(), a], vec![mult_by_x(r)]).unwrap()
}

#[test]
fn identity_complex_is_exact() {
    let r = dual_numbers();
    let a = FgModule::free(&r, 1);
    let c = Complex::new(&r, 0, vec![a.clone(), a.clone()], vec![ModuleMap::identity(&a)]).unwrap();
    assert!(c.is_exact().unwrap());
    assert!(c.total_homology().unwrap().is_zero());
}

#[test]
fn zero_differential_homology_is_the_terms() {
    let r = dual_numbers();
    let k = FgModule::residue_field(&r);
    let a = FgModule::free(&r, 1);
    let c = Complex::graded(&r, -1, vec![k.clone(), a.clone()]);
    assert!(isomorphism(c.homology(-1).unwrap().module(), &k, 0).unwrap().is_iso());
    assert!(isomorphism(c.homology(0).unwrap().module(), &a, 0).unwrap().is_iso());
    let acc = c.acc_sequences(0).unwrap();
    let [b, m, q] = acc[1].modules();
    assert!(b.is_zero());
    assert_eq!(m.dim(), Some(2));
    assert_eq!(q.dim(), Some(2));
}

#[test]
fn koszul_homology() {
    let r = dual_numbers();
    let c = koszul(&r);
    let x = mult_by_x(&r);
    let rank = x.matrix().unwrap().rank();
    // 2×2 kernel and cokernel oracle
    assert_eq!(c.homology(0).unwrap().module().dim(), Some(2 - rank));
    assert_eq!(c.homology(1).unwrap().module().dim(), Some(2 - rank));
    let k = FgModule::residue_field(&r);
    for i in 0..2 {
        assert!(isomorphism(c.homology(i).unwrap().module(), &k, 0).unwrap().is_iso());
    }
    assert_eq!(c.total_homology().unwrap().dim(), Some(2));
    let acc3 = &c.acc_sequences(0).unwrap()[2];
    let dims: Vec<_> = acc3.modules().iter().map(|m| m.dim().unwrap()).collect();
    assert_eq!(dims, vec![rank, 2, 2 - rank]);
    assert_eq!(c.homology_window().unwrap(), Some((0, 1)));
}

#[test]
fn zero_complex_sequences() {
    let r = dual_numbers();
    let z = Complex::zero(&r);
    for s in z.acc_sequences(0).unwrap() {
        assert!(s.verify().unwrap());
        assert!(s.modules().iter().all(|m| m.is_zero()));
    }
    let k = Complex::stalk(&FgModule::residue_field(&r), 0);
    assert!(isomorphism(&k.total_homology().unwrap(), &FgModule::residue_field(&r), 0).unwrap().is_iso());
}

#[test]
fn cones_of_basic_maps() {
    let r = dual_numbers();
    let a = Complex::stalk(&FgModule::free(&r, 1), 0);
    let (c, t) = cone(&ChainMap::identity(&a));
    assert!(c.is_exact().unwrap());
    assert!(t.verify().unwrap());

    let k = Complex::stalk(&FgModule::residue_field(&r), 0);
    let (c, t) = cone(&ChainMap::zero(&k, &a));
    assert!(t.verify().unwrap());
    let expect = a.direct_sum(&k.shift(1));
    assert_eq!(c.window(), expect.window());
    for i in c.degrees() {
        assert!(isomorphism(&c.module(i), &expect.module(i), 0).unwrap().is_iso());
    }
    assert!(c.has_zero_differential());

    // cone of x is literally the Koszul complex
    let fx = ChainMap::new(&a, &a, vec![(0, mult_by_x(&r))]).unwrap();
    let (c, _) = cone(&fx);
    assert_eq!(c, koszul(&r));
}

#[test]
fn shifts_and_duals() {
    let r = dual_numbers();
    let c = koszul(&r);
    assert_eq!(c.shift(-1).shift(1), c);
    assert_eq!(c.shift(1).diff(2), c.diff(1).neg());
    let d = c.matlis_dual().unwrap();
    assert_eq!(d.window(), Some((-1, 0)));
    assert_eq!(d.matlis_dual().unwrap(), c);
    assert_eq!(c.truncate_hard(1, Side::Above).window(), Some((1, 1)));
    assert_eq!(c.truncate_hard(0, Side::Below).window(), Some((0, 0)));
}

#[test]
fn graded_koszul_homology() {
    let r = make_ring("poly(F101; x,y)").unwrap();
    let f = r.field;
    let vars = r.vars.clone();
    let p = |s: &str| crate::algebra::parse_poly(s, f, &vars).unwrap();
    let f0 = FgModule::free(&r, 1);
    let f1 = FgModule::free_twisted(&r, &[1, 1]);
    let f2 = FgModule::free_twisted(&r, &[2]);
    let d1 = ModuleMap::from_generator_images(&f1, &f0, &[Elem::Poly(p("x")), Elem::Poly(p("y"))]).unwrap();
    let syz = crate::grobner::PolyVec::from_components(f, 2, &[p("y"), p("x").neg()]);
    let d2 = ModuleMap::from_generator_images(&f2, &f1, &[Elem::Poly(syz)]).unwrap();
    let c = Complex::new(&r, 0, vec![f0, f1, f2], vec![d1, d2]).unwrap();
    assert_eq!(c.homology(0).unwrap().module(), &FgModule::residue_field(&r));
    assert!(c.homology(1).unwrap().module().is_zero());
    assert!(c.homology(2).unwrap().module().is_zero());
    for i in -1..=3 {
        for s in c.acc_sequences(i).unwrap() {
            assert!(s.verify().unwrap());
        }
    }
}

use crate::modules::Elem;

fn all_acc_exact(c: &Complex) -> bool {
    let (a, b) = c.window().unwrap_or((0, 0));
    (a - 1..=b + 1).all(|i| c.acc_sequences(i).unwrap().iter().all(|s| s.verify().unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn acc_sequences_are_exact_artin(seed in any::<u64>()) {
        let r = make_ring("artin(F2; x,y | (x,y)^2)").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random::complex(&r, -1, 3, 4, &mut rng);
        prop_assert!(all_acc_exact(&c));
    }

    #[test]
    fn acc_sequences_are_exact_graded(seed in any::<u64>()) {
        let r = make_ring("poly(F101; x,y)").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random::complex(&r, 0, 3, 4, &mut rng);
        prop_assert!(all_acc_exact(&c));
    }

    #[test]
    fn cone_long_exact_sequence(seed in any::<u64>()) {
        let r = make_ring("artin(F3; x | x^3)").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random::complex(&r, 0, 2, 3, &mut rng);
        let b = Complex::stalk(&random::artin_module(&r, 4, &mut rng), 0);
        let f0 = random::map(&a.module(0), &b.module(0), &mut rng);
        // a map killing ∂_1 extends to a chain map from a
        let f0 = if f0.compose(&a.diff(1)).is_zero() { f0 } else { ModuleMap::zero(&a.module(0), &b.module(0)) };
        let f = ChainMap::new(&a, &b, vec![(0, f0)]).unwrap();
        let (c, t) = cone(&f);
        prop_assert!(t.verify().unwrap());
        // … → H_i(A) → H_i(B) → H_i(C) → H_{i-1}(A) → …
        for i in -1..=3 {
            let fa = f.homology_map(i).unwrap();
            let gb = t.g.homology_map(i).unwrap();
            let hc = t.h.homology_map(i).unwrap();
            let fa1 = f.shift(1).homology_map(i).unwrap();
            prop_assert!(crate::modules::is_exact_at(&fa, &gb).unwrap());
            prop_assert!(crate::modules::is_exact_at(&gb, &hc).unwrap());
            prop_assert!(crate::modules::is_exact_at(&hc, &fa1).unwrap());
        }
        prop_assert!(c.homology_window().unwrap().is_none_or(|(lo, hi)| lo >= -1 && hi <= 2));
    }
}

//! One line per acceptance criterion, all run in a single process so that
//! the certificate audit in the last criterion covers every other one.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use homlev::adams::{adams_tower, verify_splice, TowerSide};
use homlev::algebra::{make_ring, Ring};
use homlev::complexes::{sum_of, Complex, Ses};
use homlev::level::{
    audit_counts, ghost_lower_bound, level_report, upper_certificate, LevelCertificate, LevelClass,
    LevelOptions, LowerWitness, UpperRule,
};
use homlev::modules::{direct_sum, isomorphism, DirectSum, FgModule, ModuleMap};
use homlev::random;
use homlev::resolutions::{
    check_ses_dimension_calculus, dimension, injective_dimension, minimal_free_resolution,
    projective_dimension, CheckOutcome, DimKind, DimValue,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn dual_numbers() -> Ring {
    make_ring("artin(F2; x | x^2)").unwrap()
}

fn koszul_x(r: &Ring) -> Complex {
    let a = FgModule::free(r, 1);
    let x = ModuleMap::from_matrix(&a, &a, r.artin_data().unwrap().actions[0].clone()).unwrap();
    Complex::new(r, 0, vec![a.clone(), a], vec![x]).unwrap()
}

fn certified(c: &LevelCertificate, verdict: usize) -> bool {
    c.verdict == Some(verdict) && c.upper.is_some() && c.verify().unwrap_or(false)
}

fn koszul_counterexamples() -> Outcome {
    let r = dual_numbers();
    let k = koszul_x(&r);
    let opts = LevelOptions::default();
    let mut parts = Vec::new();
    let mut pass = true;
    for class in [LevelClass::Inj, LevelClass::GI] {
        let (c, t) = timed(|| level_report(&k, class, &opts).unwrap());
        let ok = certified(&c, 2) && c.lower.value == 2 && t < Duration::from_secs(1);
        pass &= ok;
        parts.push(format!("{} verdict {:?} in {:.0?}", class.name(), c.verdict, t));
    }
    outcome(pass, parts.join(", "))
}

fn residue_field_gorenstein_injective() -> Outcome {
    let r = dual_numbers();
    let k = Complex::stalk(&FgModule::residue_field(&r), 0);
    let (c, t) = timed(|| level_report(&k, LevelClass::GI, &LevelOptions::default()).unwrap());
    outcome(
        certified(&c, 1) && t < Duration::from_secs(1),
        format!("GI verdict {:?} in {:.0?}", c.verdict, t),
    )
}

fn regular_ring_attainment() -> Outcome {
    let p = make_ring("poly(F101; x,y,z)").unwrap();
    let k = FgModule::residue_field(&p);
    let ((betti, pd, cert, ghost), t) = timed(|| {
        let res = minimal_free_resolution(&k, 4).unwrap();
        let pd = projective_dimension(&k, 4).unwrap();
        let opts = LevelOptions::default();
        let cert = level_report(&Complex::stalk(&k, 0), LevelClass::Proj, &opts).unwrap();
        let ghost = ghost_lower_bound(&Complex::stalk(&k, 0), LevelClass::Proj, 4, &opts).unwrap();
        (res.betti(), pd, cert, ghost)
    });
    let upper_rule = cert.upper.as_ref().map(|u| u.rule);
    let ghost_ok = matches!(&cert.lower.witness, LowerWitness::Ghost(g) if g.maps.len() == 3)
        && ghost.value == 4
        && ghost.verify().unwrap_or(false);
    let pass = betti == vec![1, 3, 3, 1]
        && pd.value == DimValue::Finite(3)
        && certified(&cert, 4)
        && upper_rule == Some(UpperRule::ProjectiveTower)
        && ghost_ok
        && t < Duration::from_secs(30);
    outcome(
        pass,
        format!("Betti {betti:?}, verdict {:?}, {:?} upper, ghost lower {} in {:.1?}", cert.verdict, upper_rule, ghost.value, t),
    )
}

/// A complex with injective homology: injective terms with zero
/// differential plus a contractible summand `A → A`.
fn injective_homology_complex(r: &Ring, rng: &mut ChaCha8Rng) -> Complex {
    let e = FgModule::injective_hull(r).unwrap();
    let n = rng.gen_range(1..=2);
    let mods: Vec<FgModule> = (0..n)
        .map(|_| {
            let copies = rng.gen_range(1..=2);
            direct_sum(r, &vec![e.clone(); copies]).unwrap().module
        })
        .collect();
    let inj = Complex::graded(r, 0, mods);
    let a = random::artin_module(r, 3, rng);
    let start = rng.gen_range(0..=1);
    let contractible = Complex::new(r, start, vec![a.clone(), a.clone()], vec![ModuleMap::identity(&a)]).unwrap();
    sum_of(r, &[inj, contractible]).0
}

fn bass_at_depth_zero() -> Outcome {
    let rings = [
        "artin(F2; x | x^2)",
        "artin(F3; x | x^3)",
        "artin(F2; x,y | x^2, xy, y^2)",
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let opts = LevelOptions::default();
    let (failures, t) = timed(|| {
        let mut failures = 0;
        for i in 0..10 {
            let r = make_ring(rings[i % rings.len()]).unwrap();
            let m = injective_homology_complex(&r, &mut rng);
            let id = dimension(&m.total_homology().unwrap(), DimKind::Id, 4).unwrap();
            let c = level_report(&m, LevelClass::Inj, &opts).unwrap();
            if !(id.value.is_finite() && certified(&c, r.depth() + 1)) {
                failures += 1;
            }
        }
        failures
    });
    outcome(
        failures == 0 && t < Duration::from_secs(10),
        format!("{failures} failures of 10 in {t:.1?}"),
    )
}

fn splice_suite() -> Outcome {
    let mut failures = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let cases = [
        ("artin(F3; x | x^3)", TowerSide::Projective, 20),
        ("artin(F2; x,y | x^2, y^2)", TowerSide::Projective, 10),
        ("artin(F2; x | x^2)", TowerSide::Injective, 10),
        ("poly(F101; x,y)", TowerSide::Projective, 10),
    ];
    for (ring, side, count) in cases {
        let r = make_ring(ring).unwrap();
        for _ in 0..count {
            let len = rng.gen_range(1..=3);
            let max_dim = if r.is_artin() { 6 } else { 2 };
            let c = random::complex(&r, 0, len, max_dim, &mut rng);
            let ok = adams_tower(&c, side, 4)
                .and_then(|t| Ok(t.verified() && verify_splice(&t)?.exact()))
                .unwrap_or(false);
            if !ok {
                failures += 1;
            }
        }
    }
    outcome(failures == 0, format!("{failures} failures of 50"))
}

fn random_ses(r: &Ring, rng: &mut ChaCha8Rng) -> Ses {
    let b = random::module(r, 6, rng);
    let rank = rng.gen_range(1..=2);
    let f = FgModule::free(r, rank);
    let g = random::map(&f, &b, rng);
    let (_, incl) = g.image().unwrap();
    let q = incl.cokernel().unwrap();
    Ses {
        first: incl,
        second: q,
    }
}

fn dimension_calculus_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let rings = ["artin(F2; x | x^2)", "artin(F3; x | x^3)", "artin(F2; x,y | x^2, xy, y^2)", "poly(F101; x,y)"];
    let mut checked = 0;
    let mut failures = 0;
    for i in 0..50 {
        let r = make_ring(rings[i % rings.len()]).unwrap();
        let ses = random_ses(&r, &mut rng);
        if !ses.verify().unwrap() {
            failures += 1;
            continue;
        }
        let kinds: &[DimKind] = if r.is_artin() {
            &[DimKind::Pd, DimKind::Id, DimKind::Gpd, DimKind::Gid]
        } else {
            &[DimKind::Pd, DimKind::Gpd]
        };
        for &kind in kinds {
            let (checks, _) = check_ses_dimension_calculus(&ses, kind, 6).unwrap();
            for c in checks {
                checked += 1;
                if c.outcome == CheckOutcome::Fails {
                    failures += 1;
                }
            }
        }
    }
    outcome(failures == 0, format!("{failures} failures in {checked} checks on 50 sequences"))
}

fn acc_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let rings = ["artin(F2; x | x^2)", "artin(F3; x,y | x^2, y^2)", "poly(F101; x,y)"];
    let mut failures = 0;
    for i in 0..100 {
        let r = make_ring(rings[i % rings.len()]).unwrap();
        let len = rng.gen_range(1..=3);
        let c = random::complex(&r, -1, len, 5, &mut rng);
        for d in c.degrees() {
            let ok = c
                .acc_sequences(d)
                .and_then(|s| s.iter().try_fold(true, |acc, x| Ok(acc && x.verify()?)))
                .unwrap_or(false);
            if !ok {
                failures += 1;
            }
        }
    }
    outcome(failures == 0, format!("{failures} failures on 100 complexes"))
}

fn duality_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let rings = ["artin(F2; x | x^2)", "artin(F3; x | x^3)", "artin(F2; x,y | x^2, xy, y^2)"];
    let opts = LevelOptions::default();
    let mut failures = Vec::new();
    for i in 0..20 {
        let r = make_ring(rings[i % rings.len()]).unwrap();
        let m = random::artin_module(&r, 5, &mut rng);
        let d = m.matlis_dual().unwrap();
        let pd = projective_dimension(&m, 6).unwrap();
        let id = injective_dimension(&d, 6).unwrap();
        let finite = |v: &DimValue| match v {
            DimValue::Vanishing => Some(0),
            DimValue::Finite(n) => Some(*n),
            _ => None,
        };
        // infinite values carry certificates that name the side they came from
        if finite(&pd.value) != finite(&id.value) || pd.value.is_finite() != id.value.is_finite() {
            failures.push(format!("{i}: pd/id"));
        }
        if !isomorphism(&d.matlis_dual().unwrap(), &m, 0).unwrap().is_iso() {
            failures.push(format!("{i}: biduality"));
        }
        let stalk = Complex::stalk(&m, 0);
        for class in [LevelClass::Flat, LevelClass::GF] {
            let c = level_report(&stalk, class, &opts).unwrap();
            let transported = match &c.lower.witness {
                LowerWitness::Transported { inner, .. } => inner.value == c.lower.value,
                _ => true,
            };
            let sound = c.verify().unwrap_or(false) && c.upper_value().is_none_or(|u| c.lower.value <= u);
            if !(transported && sound) {
                failures.push(format!("{i}: {}", class.name()));
            }
        }
        let flat = level_report(&stalk, LevelClass::Flat, &opts).unwrap();
        let inj = level_report(&Complex::stalk(&d, 0), LevelClass::Inj, &opts).unwrap();
        if flat.verdict.is_some() && inj.verdict.is_some() && flat.verdict != inj.verdict {
            failures.push(format!("{i}: Flat/Inj verdicts"));
        }
    }
    outcome(failures.is_empty(), format!("{} failures on 20 modules {:?}", failures.len(), failures))
}

/// `A → A ⊕ B` by `(1, φ)`: a complex of frees whose homology `B` is free.
fn split_free_complex(r: &Ring, rng: &mut ChaCha8Rng) -> Complex {
    let twists = |rng: &mut ChaCha8Rng| -> Vec<i32> {
        let n = rng.gen_range(1..=2);
        (0..n).map(|_| rng.gen_range(0..=2)).collect()
    };
    let a = FgModule::free_twisted(r, &twists(rng));
    let b = FgModule::free_twisted(r, &twists(rng));
    let phi = random::map(&a, &b, rng);
    let sum: DirectSum = direct_sum(r, &[a.clone(), b]).unwrap();
    let d = sum.incl[0].add(&sum.incl[1].compose(&phi));
    let start = rng.gen_range(0..=1);
    Complex::new(r, start, vec![sum.module.clone(), a], vec![d]).unwrap()
}

fn two_layer_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let r = make_ring("poly(F101; x,y)").unwrap();
    let opts = LevelOptions::default();
    let mut failures = 0;
    for _ in 0..10 {
        let c = split_free_complex(&r, &mut rng);
        let ok = upper_certificate(&c, LevelClass::Flat, &opts)
            .and_then(|u| Ok(u.rule == UpperRule::TwoLayer && u.value <= 2 && u.verify()?))
            .unwrap_or(false);
        if !ok {
            failures += 1;
        }
    }
    outcome(failures == 0, format!("{failures} failures of 10"))
}

fn certificate_audit() -> Outcome {
    let a = audit_counts();
    outcome(
        a.violations == 0 && a.certificates > 0 && a.triangles > 0 && a.ghost_maps > 0,
        format!(
            "{} certificates, {} triangles, {} ghost maps, {} violations",
            a.certificates, a.triangles, a.ghost_maps, a.violations
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Koszul counterexamples, Inj and GI levels 2", koszul_counterexamples),
        ("GI level of the residue field is 1", residue_field_gorenstein_injective),
        ("regular ring attainment, Proj level of k is 4", regular_ring_attainment),
        ("Bass formula at depth zero", bass_at_depth_zero),
        ("splice property suite", splice_suite),
        ("dimension calculus suite", dimension_calculus_suite),
        ("acc1-acc4 exactness", acc_suite),
        ("duality suite", duality_suite),
        ("two-layer construction for complexes of frees", two_layer_suite),
        ("certificate soundness audit", certificate_audit),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        println!(
            "criterion {:>2} {}: {} ({})",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            name,
            o.detail
        );
        if !o.pass {
            failed.push(i + 1);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}

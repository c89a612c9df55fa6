//! Seeded generators of random modules, maps and complexes for property
//! tests and benchmark suites.

use rand::Rng;

use crate::algebra::Ring;
use crate::linalg::{Field, Scalar};
use crate::complexes::Complex;
use crate::modules::{Elem, FgModule, ModuleMap};

pub fn scalar<R: Rng>(field: Field, rng: &mut R) -> Scalar {
    match field.order() {
        Some(q) => field.element(rng.gen_range(0..q)),
        None => field.from_i64(rng.gen_range(-3..=3)),
    }
}

/// A random element of `M` (graded mode: homogeneous of degree `d`).
pub fn element<R: Rng>(m: &FgModule, d: i32, rng: &mut R) -> Elem {
    let basis = m.component_basis(d);
    let c: Vec<Scalar> = basis.iter().map(|_| scalar(m.field(), rng)).collect();
    m.from_coords(d, &c)
}

/// A random R-linear map `M → N`, drawn from the hom space.
pub fn map<R: Rng>(m: &FgModule, n: &FgModule, rng: &mut R) -> ModuleMap {
    let basis = crate::modules::hom_space(m, n).expect("hom space");
    let c: Vec<Scalar> = basis.iter().map(|_| scalar(m.field(), rng)).collect();
    crate::modules::hom::combine(m, n, &basis, &c)
}

/// A random nonzero artinian module of dimension at most `max_dim`: a
/// quotient of `R` or `R^2` by random elements, sometimes followed by a
/// cyclic submodule.
pub fn artin_module<R: Rng>(ring: &Ring, max_dim: usize, rng: &mut R) -> FgModule {
    for _ in 0..200 {
        let s = rng.gen_range(1..=2);
        let free = FgModule::free(ring, s);
        let t = rng.gen_range(0..=3);
        let rels = FgModule::free(ring, t);
        let imgs: Vec<Elem> = (0..t).map(|_| element(&free, 0, rng)).collect();
        let f = ModuleMap::from_generator_images(&rels, &free, &imgs).expect("map from a free module");
        let mut q = f.cokernel().expect("cokernel").target().clone();
        if rng.gen_bool(0.3) && !q.is_zero() {
            let one = FgModule::free(ring, 1);
            let g = ModuleMap::from_generator_images(&one, &q, &[element(&q, 0, rng)])
                .expect("map from a free module");
            q = g.image().expect("image").0.target().clone();
        }
        let d = q.dim().unwrap();
        if d > 0 && d <= max_dim {
            return q;
        }
    }
    FgModule::residue_field(ring)
}

/// A random graded module: a quotient of `R(-a) ⊕ R(-b)` by up to two
/// random homogeneous elements.
pub fn graded_module<R: Rng>(ring: &Ring, rng: &mut R) -> FgModule {
    let rank = rng.gen_range(1..=2);
    let twists: Vec<i32> = (0..rank).map(|_| rng.gen_range(0..=1)).collect();
    let free = FgModule::free_twisted(ring, &twists);
    let t = rng.gen_range(0..=2);
    let degs: Vec<i32> = (0..t).map(|_| rng.gen_range(1..=3)).collect();
    let rels = FgModule::free_twisted(ring, &degs);
    let imgs: Vec<Elem> = degs.iter().map(|&d| element(&free, d, rng)).collect();
    let f = ModuleMap::from_generator_images(&rels, &free, &imgs).expect("map from a free module");
    f.cokernel().expect("cokernel").target().clone()
}

/// A random module in either ring mode.
pub fn module<R: Rng>(ring: &Ring, max_dim: usize, rng: &mut R) -> FgModule {
    if ring.is_artin() {
        artin_module(ring, max_dim, rng)
    } else {
        graded_module(ring, rng)
    }
}

/// A random bounded complex supported in `[lo, lo + len)`, built upwards:
/// each new term maps randomly into the cycles of the previous one. Artinian
/// terms are random modules of dimension at most `max_dim`; graded terms
/// above the bottom one are free.
pub fn complex<R: Rng>(ring: &Ring, lo: i32, len: usize, max_dim: usize, rng: &mut R) -> Complex {
    let mut mods = vec![module(ring, max_dim, rng)];
    let mut diffs: Vec<ModuleMap> = Vec::new();
    for _ in 1..len {
        let prev = mods.last().unwrap().clone();
        let z = match diffs.last() {
            Some(d) => d.kernel().expect("kernel"),
            None => ModuleMap::identity(&prev),
        };
        let (m, to_z) = if ring.is_artin() {
            let m = artin_module(ring, max_dim, rng);
            let g = map(&m, z.source(), rng);
            (m, g)
        } else {
            let zs = z.source();
            let base = zs.generator_degrees().into_iter().min().unwrap_or(0);
            let rank = rng.gen_range(1..=2);
            let twists: Vec<i32> = (0..rank).map(|_| base + rng.gen_range(0..=1)).collect();
            let m = FgModule::free_twisted(ring, &twists);
            let imgs: Vec<Elem> = twists.iter().map(|&t| element(zs, t, rng)).collect();
            let g = ModuleMap::from_generator_images(&m, zs, &imgs).expect("map from a free module");
            (m, g)
        };
        diffs.push(z.compose(&to_z));
        mods.push(m);
    }
    Complex::new(ring, lo, mods, diffs).expect("random complex")
}

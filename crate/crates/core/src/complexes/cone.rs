//! Mapping cones and the distinguished triangles they define.

use std::collections::BTreeMap;

use super::{ChainMap, Complex, Homotopy};
use crate::error::Result;
use crate::modules::{self, DirectSum, FgModule};

/// `A --f--> B --g--> C --h--> ΣA` with a quasi-isomorphism from `C` to
/// `Cone(f)` and null-homotopies for the composites `g∘f` and `Σf∘h`.
#[derive(Clone, Debug)]
pub struct Triangle {
    pub f: ChainMap,
    pub g: ChainMap,
    pub h: ChainMap,
    pub witness: ChainMap,
    pub gf_homotopy: Homotopy,
    pub fh_homotopy: Homotopy,
}

impl Triangle {
    pub fn verify(&self) -> Result<bool> {
        if !self.gf_homotopy.witnesses(&self.g.compose(&self.f)) {
            return Ok(false);
        }
        if !self.h.compose(&self.g).is_zero() {
            return Ok(false);
        }
        if !self.fh_homotopy.witnesses(&self.f.shift(1).compose(&self.h)) {
            return Ok(false);
        }
        let w = &self.witness;
        let is_identity = w.source() == w.target()
            && w.source()
                .degrees()
                .all(|i| w.comp(i) == modules::ModuleMap::identity(&w.source().module(i)));
        if is_identity {
            Ok(true)
        } else {
            w.is_quasi_iso()
        }
    }

    pub fn third(&self) -> &Complex {
        self.g.target()
    }
}

/// `Cone(f)` and the triangle `A → B → Cone(f) → ΣA`.
pub fn cone(f: &ChainMap) -> (Complex, Triangle) {
    let (a, b) = (f.source(), f.target());
    let ring = a.ring().clone();
    let lo = [a.window().map(|w| w.0 + 1), b.window().map(|w| w.0)]
        .into_iter()
        .flatten()
        .min();
    let hi = [a.window().map(|w| w.1 + 1), b.window().map(|w| w.1)]
        .into_iter()
        .flatten()
        .max();
    let (lo, hi) = match (lo, hi) {
        (Some(l), Some(h)) => (l, h),
        _ => (0, -1),
    };
    // sums[k] is Cone_{lo-1+k}; the outer entries are zero and only
    // support the homotopies
    let sums: Vec<DirectSum> = (lo - 1..=hi + 1)
        .map(|n| {
            let parts: Vec<FgModule> = vec![a.module(n - 1), b.module(n)];
            modules::direct_sum(&ring, &parts).expect("direct sum")
        })
        .collect();
    let at = |n: i32| &sums[(n - lo + 1) as usize];
    let diffs = (lo + 1..=hi)
        .map(|n| {
            DirectSum::block_map(at(n), at(n - 1), |r, c| match (r, c) {
                (0, 0) => Some(a.diff(n - 1).neg()),
                (1, 0) => Some(f.comp(n - 1)),
                (1, 1) => Some(b.diff(n)),
                _ => None,
            })
        })
        .collect();
    let mods = (lo..=hi).map(|n| at(n).module.clone()).collect();
    let c = if lo <= hi {
        Complex::new(&ring, lo, mods, diffs).expect("cone differential squares to zero")
    } else {
        Complex::zero(&ring)
    };
    let sa = a.shift(1);
    let sb = b.shift(1);
    let g = ChainMap::new(
        b,
        &c,
        (lo..=hi).map(|n| (n, at(n).incl[1].clone())).collect(),
    )
    .expect("inclusion into the cone");
    let h = ChainMap::new(
        &c,
        &sa,
        (lo..=hi).map(|n| (n, at(n).proj[0].clone())).collect(),
    )
    .expect("projection from the cone");
    let gf_homotopy = Homotopy {
        source: a.clone(),
        target: c.clone(),
        comps: (lo - 1..=hi)
            .map(|n| (n, at(n + 1).incl[0].clone()))
            .collect::<BTreeMap<_, _>>(),
    };
    let fh_homotopy = Homotopy {
        source: c.clone(),
        target: sb,
        comps: (lo..=hi)
            .map(|n| (n, at(n).proj[1].clone()))
            .collect::<BTreeMap<_, _>>(),
    };
    let t = Triangle {
        f: f.clone(),
        g,
        h,
        witness: ChainMap::identity(&c),
        gf_homotopy,
        fh_homotopy,
    };
    (c, t)
}

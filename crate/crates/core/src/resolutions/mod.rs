//! Minimal free resolutions of modules, semi-free resolutions of complexes,
//! and homological dimension reports.

mod dims;

use std::collections::BTreeMap;

use crate::complexes::{ChainMap, Complex};
use crate::error::{Error, Result};
use crate::modules::{self, DirectSum, Elem, FgModule, ModuleMap};

pub use dims::{
    check_ses_dimension_calculus, cosyzygy, dimension, ext_dims, ext_vanishes, gorenstein_dimension,
    injective_dimension, is_totally_reflexive, projective_dimension, Certificate, CheckOutcome,
    DimKind, DimValue, DimensionReport, InequalityCheck, Reflexivity, TOTAL_REFLEXIVITY_WINDOW,
};

/// `… → P_1 → P_0 → M → 0`, computed up to a cutoff.
#[derive(Clone, Debug)]
pub struct ModuleResolution {
    pub module: FgModule,
    /// `P_0, …, P_n` in degrees `0..=n`.
    pub complex: Complex,
    pub augmentation: ModuleMap,
    /// `syzygies[i]` is `Ω^i`, with `Ω^0 = M`; one more than the number of
    /// computed terms, so the last entry is the first uncovered syzygy.
    pub syzygies: Vec<FgModule>,
    /// Inclusions `Ω^i → P_{i-1}` for `i ≥ 1` (index `i - 1`).
    pub syzygy_inclusions: Vec<ModuleMap>,
    /// Whether the resolution stopped because a syzygy vanished.
    pub complete: bool,
}

impl ModuleResolution {
    pub fn betti(&self) -> Vec<usize> {
        self.complex
            .degrees()
            .map(|i| self.complex.module(i).num_generators())
            .collect()
    }

    /// Length when complete.
    pub fn length(&self) -> Option<usize> {
        self.complete
            .then(|| self.complex.window().map_or(0, |w| w.1 as usize))
    }

    pub fn syzygy(&self, i: usize) -> Option<&FgModule> {
        self.syzygies.get(i)
    }

    /// Exactness at every computed spot and minimality of every map.
    pub fn verify(&self) -> Result<bool> {
        let cover_is_minimal =
            self.augmentation.source().num_generators() == self.module.num_generators();
        if !self.augmentation.is_surjective()? || !cover_is_minimal {
            return Ok(false);
        }
        let c = &self.complex;
        if let Some((_, hi)) = c.window() {
            if !modules::is_exact_at(&c.diff(1), &self.augmentation)? {
                return Ok(false);
            }
            for i in 1..hi {
                if !modules::is_exact_at(&c.diff(i + 1), &c.diff(i))? {
                    return Ok(false);
                }
            }
            for i in 1..=hi {
                if !maps_into_radical(&c.diff(i))? {
                    return Ok(false);
                }
            }
            let top = if hi == 0 { self.augmentation.clone() } else { c.diff(hi) };
            if self.complete && !top.is_injective()? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Whether every generator of the source maps into `m` times the target,
/// i.e. the map vanishes after tensoring with `k`.
pub fn maps_into_radical(f: &ModuleMap) -> Result<bool> {
    let t = f.target();
    let top = radical_quotient(t)?;
    Ok(top.compose(f).is_zero())
}

/// `N → N/mN`.
pub fn radical_quotient(n: &FgModule) -> Result<ModuleMap> {
    let ring = n.ring().clone();
    let src = n.twist(if ring.is_artin() { 0 } else { 1 });
    let parts: Vec<FgModule> = (0..ring.nvars()).map(|_| src.clone()).collect();
    let sum = modules::direct_sum(&ring, &parts)?;
    let mut acc = ModuleMap::zero(&sum.module, n);
    for (i, p) in sum.proj.iter().enumerate() {
        acc = acc.add(&variable_map(n, &src, i)?.compose(p));
    }
    acc.cokernel()
}

/// Multiplication by `x_i` as a map `src → n`, where `src` is `n` (artinian
/// mode) or `n(-1)` (graded mode).
fn variable_map(n: &FgModule, src: &FgModule, i: usize) -> Result<ModuleMap> {
    if n.is_artin() {
        ModuleMap::from_matrix(src, n, n.actions()?[i].clone())
    } else {
        let imgs: Vec<Elem> = n
            .minimal_generators()
            .iter()
            .map(|g| n.act_var(i, &g.0))
            .collect();
        ModuleMap::from_generator_images(src, n, &imgs)
    }
}

/// Minimal free resolution of a module, computed through `P_cutoff`.
pub fn minimal_free_resolution(m: &FgModule, cutoff: usize) -> Result<ModuleResolution> {
    let ring = m.ring().clone();
    let cover = m.free_cover();
    let mut mods = vec![cover.source().clone()];
    let mut diffs: Vec<ModuleMap> = Vec::new();
    let mut syz = vec![m.clone()];
    let mut incls: Vec<ModuleMap> = Vec::new();
    let mut to_omega = cover.clone();
    let mut complete = m.is_zero();
    for i in 1..=cutoff + 1 {
        if complete {
            break;
        }
        let k = to_omega.kernel()?;
        syz.push(k.source().clone());
        incls.push(k.clone());
        if k.source().is_zero() {
            complete = true;
            break;
        }
        if i > cutoff {
            break;
        }
        let c = k.source().free_cover();
        diffs.push(k.compose(&c));
        mods.push(c.source().clone());
        to_omega = c;
    }
    if m.is_zero() {
        mods.clear();
    }
    let complex = if mods.is_empty() {
        Complex::zero(&ring)
    } else {
        Complex::new(&ring, 0, mods, diffs)?
    };
    Ok(ModuleResolution {
        module: m.clone(),
        complex,
        augmentation: cover,
        syzygies: syz,
        syzygy_inclusions: incls,
        complete,
    })
}

/// A semi-free resolution `P → M` of a bounded complex, built by killing
/// the homology of the mapping cone degree by degree.
#[derive(Clone, Debug)]
pub struct SemiFree {
    pub target: Complex,
    pub complex: Complex,
    pub map: ChainMap,
    /// The cone of `map` is exact in degrees `≤ top`.
    pub top: i32,
    /// The construction stopped: `map` is a quasi-isomorphism and `P` is
    /// bounded.
    pub complete: bool,
}

/// Semi-free resolution through degree `top`; stops early once the
/// resolution is complete.
pub fn semi_free_resolution(m: &Complex, top: i32) -> Result<SemiFree> {
    let ring = m.ring().clone();
    let Some((lo, hi)) = m.window() else {
        return Ok(SemiFree {
            target: m.clone(),
            complex: m.clone(),
            map: ChainMap::identity(m),
            top,
            complete: true,
        });
    };
    let mut p: BTreeMap<i32, FgModule> = BTreeMap::new();
    let mut dp: BTreeMap<i32, ModuleMap> = BTreeMap::new();
    let mut phi: BTreeMap<i32, ModuleMap> = BTreeMap::new();
    let zero = FgModule::zero(&ring);
    let pm = |p: &BTreeMap<i32, FgModule>, i: i32| p.get(&i).cloned().unwrap_or_else(|| zero.clone());
    let mut complete = false;
    let mut reached = top;
    for i in lo..=top {
        let cone_i = modules::direct_sum(&ring, &[pm(&p, i - 1), m.module(i)])?;
        let cone_prev = modules::direct_sum(&ring, &[pm(&p, i - 2), m.module(i - 1)])?;
        let d = DirectSum::block_map(&cone_i, &cone_prev, |r, c| match (r, c) {
            (0, 0) => dp.get(&(i - 1)).map(|x| x.neg()),
            (1, 0) => phi.get(&(i - 1)).cloned(),
            (1, 1) => Some(m.diff(i)),
            _ => None,
        });
        let z = d.kernel()?;
        let bmap = cone_i.incl[1].compose(&m.diff(i + 1));
        let b_to_z = z
            .lift_map(&bmap)?
            .ok_or_else(|| Error::Verification("cone boundaries are not cycles".into()))?;
        let h = b_to_z.cokernel()?;
        let gens = h.target().minimal_generators();
        let ys: Vec<Elem> = gens.iter().map(|g| g.0.clone()).collect();
        let lifts = h.lift_elements(&ys)?;
        let degs: Vec<i32> = gens.iter().map(|g| g.1).collect();
        let free = FgModule::free_twisted(&ring, &degs);
        let mut da = Vec::new();
        let mut db = Vec::new();
        for l in lifts {
            let v = z.apply(&l.expect("cokernel projection is surjective"));
            let a = cone_i.proj[0].apply(&v);
            da.push(pm(&p, i - 1).scale_elem(&-ring.field.one(), &a));
            db.push(cone_i.proj[1].apply(&v));
        }
        if !free.is_zero() {
            dp.insert(i, ModuleMap::from_generator_images(&free, &pm(&p, i - 1), &da)?);
            phi.insert(i, ModuleMap::from_generator_images(&free, &m.module(i), &db)?);
            p.insert(i, free);
        } else if i > hi {
            complete = true;
            reached = i;
            break;
        }
    }
    let top = if complete { i32::MAX } else { reached };
    let plo = p.keys().next().copied();
    let complex = match plo {
        None => Complex::zero(&ring),
        Some(plo) => {
            let phi_top = *p.keys().last().unwrap();
            let mods: Vec<FgModule> = (plo..=phi_top).map(|i| pm(&p, i)).collect();
            let diffs = (plo + 1..=phi_top)
                .map(|i| {
                    dp.get(&i)
                        .cloned()
                        .unwrap_or_else(|| ModuleMap::zero(&pm(&p, i), &pm(&p, i - 1)))
                })
                .collect();
            Complex::new(&ring, plo, mods, diffs)?
        }
    };
    let map = ChainMap::new(&complex, m, phi.into_iter().collect())?;
    Ok(SemiFree {
        target: m.clone(),
        complex,
        map,
        top,
        complete,
    })
}

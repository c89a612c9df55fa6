//! Bounded chain complexes of finitely generated modules, chain maps and
//! homotopies.
//!
//! Sign conventions, used everywhere:
//! * `(ΣM)_n = M_{n-1}` with `∂^{ΣM} = -∂^M`; `(Σf)_n = f_{n-1}` with no sign.
//! * `Cone(f: A → B)_n = A_{n-1} ⊕ B_n` with `d(a, b) = (-∂a, f(a) + ∂b)`.
//! * `(M^∨)_n = (M_{-n})^∨` with differential the dual of `∂_{-n+1}`.

mod cone;
mod homology;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::algebra::Ring;
use crate::error::{Error, Result};
use crate::linalg::Scalar;
use crate::modules::{self, FgModule, ModuleMap};

pub use cone::{cone, Triangle};
pub use homology::{Boundary, Homology, Ses};

#[derive(Clone)]
pub struct Complex {
    ring: Ring,
    lo: i32,
    modules: Vec<FgModule>,
    /// `diffs[k] = ∂_{lo+k}`; `diffs[0]` maps into the zero module.
    diffs: Vec<ModuleMap>,
    cache: Arc<Mutex<Cache>>,
}

#[derive(Default)]
struct Cache {
    boundaries: HashMap<i32, Arc<Boundary>>,
    homology: HashMap<i32, Arc<Homology>>,
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Complex")
            .field("lo", &self.lo)
            .field("modules", &self.modules)
            .field("diffs", &self.diffs)
            .finish()
    }
}

impl PartialEq for Complex {
    fn eq(&self, other: &Complex) -> bool {
        self.lo == other.lo && self.modules == other.modules && self.diffs == other.diffs
    }
}

/// Which part a brutal truncation keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Degrees `≥ i`.
    Above,
    /// Degrees `≤ i`.
    Below,
}

impl Complex {
    /// `modules[k]` sits in degree `lo + k`; `diffs[k]` is `∂_{lo+k+1}`.
    pub fn new(ring: &Ring, lo: i32, modules: Vec<FgModule>, diffs: Vec<ModuleMap>) -> Result<Complex> {
        if !modules.is_empty() && diffs.len() + 1 != modules.len() {
            return Err(Error::Shape(format!(
                "{} modules need {} differentials, got {}",
                modules.len(),
                modules.len() - 1,
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.source() != &modules[k + 1] || d.target() != &modules[k] {
                return Err(Error::Shape(format!(
                    "differential in degree {} has the wrong source or target",
                    lo + k as i32 + 1
                )));
            }
        }
        for k in 1..diffs.len() {
            if !diffs[k - 1].compose(&diffs[k]).is_zero() {
                return Err(Error::Verification(format!(
                    "∂∂ ≠ 0 at degree {}",
                    lo + k as i32 + 1
                )));
            }
        }
        let first = modules.iter().position(|m| !m.is_zero());
        let Some(first) = first else {
            return Ok(Complex::zero(ring));
        };
        let last = modules.iter().rposition(|m| !m.is_zero()).unwrap();
        let zero = FgModule::zero(ring);
        let mut ds = vec![ModuleMap::zero(&modules[first], &zero)];
        ds.extend(diffs[first..last].iter().cloned());
        Ok(Complex {
            ring: ring.clone(),
            lo: lo + first as i32,
            modules: modules[first..=last].to_vec(),
            diffs: ds,
            cache: Arc::default(),
        })
    }

    pub fn zero(ring: &Ring) -> Complex {
        Complex {
            ring: ring.clone(),
            lo: 0,
            modules: vec![],
            diffs: vec![],
            cache: Arc::default(),
        }
    }

    /// `m` concentrated in degree `d`.
    pub fn stalk(m: &FgModule, d: i32) -> Complex {
        Complex::new(m.ring(), d, vec![m.clone()], vec![]).expect("stalk complex")
    }

    /// A complex with zero differential.
    pub fn graded(ring: &Ring, lo: i32, modules: Vec<FgModule>) -> Complex {
        let diffs = modules
            .windows(2)
            .map(|w| ModuleMap::zero(&w[1], &w[0]))
            .collect();
        Complex::new(ring, lo, modules, diffs).expect("zero differentials")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.modules.is_empty()
    }

    /// `(lo, hi)` of the support, `None` for the zero complex.
    pub fn window(&self) -> Option<(i32, i32)> {
        (!self.modules.is_empty()).then(|| (self.lo, self.lo + self.modules.len() as i32 - 1))
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        match self.window() {
            Some((a, b)) => a..=b,
            #[allow(clippy::reversed_empty_ranges)]
            None => 0..=-1,
        }
    }

    /// `M_i`, the zero module outside the window.
    pub fn module(&self, i: i32) -> FgModule {
        match self.window() {
            Some((a, b)) if a <= i && i <= b => self.modules[(i - a) as usize].clone(),
            _ => FgModule::zero(&self.ring),
        }
    }

    /// `∂_i: M_i → M_{i-1}`.
    pub fn diff(&self, i: i32) -> ModuleMap {
        match self.window() {
            Some((a, b)) if a < i && i <= b => self.diffs[(i - a) as usize].clone(),
            Some((a, _)) if i == a => self.diffs[0].clone(),
            _ => ModuleMap::zero(&self.module(i), &self.module(i - 1)),
        }
    }

    pub fn has_zero_differential(&self) -> bool {
        self.diffs.iter().all(|d| d.is_zero())
    }

    /// `Σ^n M`.
    pub fn shift(&self, n: i32) -> Complex {
        if n == 0 || self.is_zero() {
            let mut c = self.clone();
            c.lo += n;
            c.cache = Arc::default();
            return c;
        }
        let diffs = if n % 2 == 0 {
            self.diffs.clone()
        } else {
            self.diffs.iter().map(|d| d.neg()).collect()
        };
        Complex {
            ring: self.ring.clone(),
            lo: self.lo + n,
            modules: self.modules.clone(),
            diffs,
            cache: Arc::default(),
        }
    }

    /// Brutal truncation keeping degrees `≥ i` or `≤ i`.
    pub fn truncate_hard(&self, i: i32, side: Side) -> Complex {
        let keep: Vec<i32> = self
            .degrees()
            .filter(|&d| match side {
                Side::Above => d >= i,
                Side::Below => d <= i,
            })
            .collect();
        let Some(&lo) = keep.first() else {
            return Complex::zero(&self.ring);
        };
        let mods = keep.iter().map(|&d| self.module(d)).collect();
        let diffs = keep[1..].iter().map(|&d| self.diff(d)).collect();
        Complex::new(&self.ring, lo, mods, diffs).expect("truncation of a complex")
    }

    /// Degreewise direct sum.
    pub fn direct_sum(&self, other: &Complex) -> Complex {
        sum_of(&self.ring, &[self.clone(), other.clone()]).0
    }

    /// `(M^∨)_n = (M_{-n})^∨` (artinian mode).
    pub fn matlis_dual(&self) -> Result<Complex> {
        let Some((a, b)) = self.window() else {
            return Ok(self.clone());
        };
        let mods: Vec<FgModule> = (-b..=-a)
            .map(|n| self.module(-n).matlis_dual())
            .collect::<Result<_>>()?;
        let diffs = (-b + 1..=-a)
            .map(|n| self.diff(-n + 1).matlis_dual())
            .collect::<Result<_>>()?;
        Complex::new(&self.ring, -b, mods, diffs)
    }

    /// `M^⊕ = ⊕_i M_i`, forgetting the homological grading.
    pub fn flatten(&self) -> Result<modules::DirectSum> {
        modules::direct_sum(&self.ring, &self.modules)
    }

    /// Total homology `⊕_i H_i(M)`.
    pub fn total_homology(&self) -> Result<FgModule> {
        let hs: Vec<FgModule> = self
            .degrees()
            .map(|i| self.homology(i).map(|h| h.module().clone()))
            .collect::<Result<_>>()?;
        Ok(modules::direct_sum(&self.ring, &hs)?.module)
    }

    /// The homology modules as a complex with zero differential.
    pub fn homology_complex(&self) -> Result<Complex> {
        let Some((a, _)) = self.window() else {
            return Ok(self.clone());
        };
        let hs: Vec<FgModule> = self
            .degrees()
            .map(|i| self.homology(i).map(|h| h.module().clone()))
            .collect::<Result<_>>()?;
        Ok(Complex::graded(&self.ring, a, hs))
    }

    /// `inf` and `sup` of the homology; `None` when exact.
    pub fn homology_window(&self) -> Result<Option<(i32, i32)>> {
        let mut nz = Vec::new();
        for i in self.degrees() {
            if !self.homology(i)?.module().is_zero() {
                nz.push(i);
            }
        }
        Ok(nz.first().map(|&a| (a, *nz.last().unwrap())))
    }

    pub fn is_exact(&self) -> Result<bool> {
        Ok(self.homology_window()?.is_none())
    }
}

/// Degreewise direct sum with the inclusion and projection chain maps.
pub fn sum_of(ring: &Ring, parts: &[Complex]) -> (Complex, Vec<ChainMap>, Vec<ChainMap>) {
    let lo = parts.iter().filter_map(|c| c.window()).map(|w| w.0).min();
    let hi = parts.iter().filter_map(|c| c.window()).map(|w| w.1).max();
    let (Some(lo), Some(hi)) = (lo, hi) else {
        let z = Complex::zero(ring);
        let inc = parts.iter().map(|p| ChainMap::zero(p, &z)).collect();
        let pr = parts.iter().map(|p| ChainMap::zero(&z, p)).collect();
        return (z, inc, pr);
    };
    let sums: Vec<modules::DirectSum> = (lo..=hi)
        .map(|i| {
            let ms: Vec<FgModule> = parts.iter().map(|p| p.module(i)).collect();
            modules::direct_sum(ring, &ms).expect("direct sum")
        })
        .collect();
    let diffs = (lo + 1..=hi)
        .map(|i| {
            let (s, t) = (&sums[(i - lo) as usize], &sums[(i - lo - 1) as usize]);
            modules::DirectSum::block_map(s, t, |r, c| (r == c).then(|| parts[r].diff(i)))
        })
        .collect();
    let mods = sums.iter().map(|s| s.module.clone()).collect();
    let total = Complex::new(ring, lo, mods, diffs).expect("sum of complexes");
    let mut incl = Vec::new();
    let mut proj = Vec::new();
    for (k, p) in parts.iter().enumerate() {
        let inc: Vec<(i32, ModuleMap)> = (lo..=hi)
            .map(|i| (i, sums[(i - lo) as usize].incl[k].clone()))
            .collect();
        let pr: Vec<(i32, ModuleMap)> = (lo..=hi)
            .map(|i| (i, sums[(i - lo) as usize].proj[k].clone()))
            .collect();
        incl.push(ChainMap::new(p, &total, inc).expect("inclusion"));
        proj.push(ChainMap::new(&total, p, pr).expect("projection"));
    }
    (total, incl, proj)
}

/// A degree-0 chain map, verified at construction.
#[derive(Clone, Debug)]
pub struct ChainMap {
    source: Complex,
    target: Complex,
    comps: BTreeMap<i32, ModuleMap>,
}

fn span(a: &Complex, b: &Complex) -> Vec<i32> {
    let mut ds: Vec<i32> = a.degrees().chain(b.degrees()).collect();
    ds.sort_unstable();
    ds.dedup();
    ds
}

impl ChainMap {
    /// Components outside the listed degrees are zero.
    pub fn new(source: &Complex, target: &Complex, comps: Vec<(i32, ModuleMap)>) -> Result<ChainMap> {
        let mut map = BTreeMap::new();
        for (i, f) in comps {
            if &source.module(i) != f.source() || &target.module(i) != f.target() {
                return Err(Error::Shape(format!("chain map component {i} has the wrong shape")));
            }
            if !f.is_zero() {
                map.insert(i, f);
            }
        }
        let c = ChainMap {
            source: source.clone(),
            target: target.clone(),
            comps: map,
        };
        for i in span(source, target) {
            for j in [i, i + 1] {
                let l = target.diff(j).compose(&c.comp(j));
                let r = c.comp(j - 1).compose(&source.diff(j));
                if l != r {
                    return Err(Error::Verification(format!(
                        "chain map does not commute with the differentials at degree {j}"
                    )));
                }
            }
        }
        Ok(c)
    }

    pub fn zero(source: &Complex, target: &Complex) -> ChainMap {
        ChainMap {
            source: source.clone(),
            target: target.clone(),
            comps: BTreeMap::new(),
        }
    }

    pub fn identity(c: &Complex) -> ChainMap {
        ChainMap {
            source: c.clone(),
            target: c.clone(),
            comps: c.degrees().map(|i| (i, ModuleMap::identity(&c.module(i)))).collect(),
        }
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn comp(&self, i: i32) -> ModuleMap {
        self.comps
            .get(&i)
            .cloned()
            .unwrap_or_else(|| ModuleMap::zero(&self.source.module(i), &self.target.module(i)))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(|f| f.is_zero())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ChainMap) -> ChainMap {
        let comps = span(&other.source, &self.target)
            .into_iter()
            .map(|i| (i, self.comp(i).compose(&other.comp(i))))
            .filter(|(_, f)| !f.is_zero())
            .collect();
        ChainMap {
            source: other.source.clone(),
            target: self.target.clone(),
            comps,
        }
    }

    fn combine(&self, other: &ChainMap, c: &Scalar) -> ChainMap {
        let comps = span(&self.source, &self.target)
            .into_iter()
            .map(|i| (i, self.comp(i).add(&other.comp(i).scale(c))))
            .filter(|(_, f)| !f.is_zero())
            .collect();
        ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            comps,
        }
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        self.combine(other, &self.source.ring.field.one())
    }

    pub fn sub(&self, other: &ChainMap) -> ChainMap {
        self.combine(other, &-self.source.ring.field.one())
    }

    pub fn scale(&self, c: &Scalar) -> ChainMap {
        ChainMap::zero(&self.source, &self.target).combine(self, c)
    }

    pub fn neg(&self) -> ChainMap {
        ChainMap::zero(&self.source, &self.target).sub(self)
    }

    /// `Σ^n f`, with `(Σf)_i = f_{i-1}`.
    pub fn shift(&self, n: i32) -> ChainMap {
        ChainMap {
            source: self.source.shift(n),
            target: self.target.shift(n),
            comps: self.comps.iter().map(|(&i, f)| (i + n, f.clone())).collect(),
        }
    }

    /// `H_i(f)`.
    pub fn homology_map(&self, i: i32) -> Result<ModuleMap> {
        let ha = self.source.homology(i)?;
        let hb = self.target.homology(i)?;
        let through = self.comp(i).compose(&ha.z);
        let lifted = hb
            .z
            .lift_map(&through)?
            .ok_or_else(|| Error::Verification("cycles do not map to cycles".into()))?;
        let g = hb.h_proj.compose(&lifted);
        modules::hom::solve_pre(&ha.h_proj, &g)?
            .ok_or_else(|| Error::Verification("boundaries do not map to boundaries".into()))
    }

    /// Whether `H(f)` is bijective in every degree.
    pub fn is_quasi_iso(&self) -> Result<bool> {
        cone(self).0.is_exact()
    }

    /// The dual chain map `N^∨ → M^∨` (artinian mode).
    pub fn matlis_dual(&self) -> Result<ChainMap> {
        let s = self.target.matlis_dual()?;
        let t = self.source.matlis_dual()?;
        let comps = self
            .comps
            .iter()
            .map(|(&i, f)| Ok((-i, f.matlis_dual()?)))
            .collect::<Result<Vec<_>>>()?;
        ChainMap::new(&s, &t, comps)
    }
}

/// Maps `h_i: M_i → N_{i+1}`.
#[derive(Clone, Debug)]
pub struct Homotopy {
    pub source: Complex,
    pub target: Complex,
    pub comps: BTreeMap<i32, ModuleMap>,
}

impl Homotopy {
    pub fn comp(&self, i: i32) -> ModuleMap {
        self.comps
            .get(&i)
            .cloned()
            .unwrap_or_else(|| ModuleMap::zero(&self.source.module(i), &self.target.module(i + 1)))
    }

    /// Whether `f = ∂h + h∂` degreewise.
    pub fn witnesses(&self, f: &ChainMap) -> bool {
        span(&self.source, &self.target).into_iter().all(|i| {
            let dh = self.target.diff(i + 1).compose(&self.comp(i));
            let hd = self.comp(i - 1).compose(&self.source.diff(i));
            dh.add(&hd) == f.comp(i)
        })
    }
}

#[cfg(test)]
mod tests;

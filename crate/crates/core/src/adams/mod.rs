//! Projective and injective Adams resolutions of bounded complexes.
//!
//! A projective step picks cycles whose classes minimally generate `H(M)`,
//! maps the free complex `F` on them (zero differential) to `M`, and sets
//! `Ω^1(M) = Σ^{-1} Cone(φ)`. The injective step is the Matlis dual of the
//! projective step of the dual, with `Θ^1(M) = Cone(ι)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::complexes::{cone, ChainMap, Complex, Ses, Triangle};
use crate::error::{Error, Result};
use crate::modules::{self, DirectSum, Elem, FgModule, ModuleMap};
use crate::random;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TowerSide {
    Projective,
    Injective,
}

/// How representing cycles are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycleChoice {
    /// Lifts of the minimal generators of homology.
    Minimal,
    /// The minimal lifts changed by random boundaries and by random
    /// multiples of earlier generators of the same degree.
    Perturbed(u64),
}

#[derive(Clone, Debug)]
pub struct AdamsStep {
    /// `F^n` or `I^n`, with zero differential.
    pub layer: Complex,
    /// `(F^n)^⊕` or `(I^n)^⊕`.
    pub layer_flat: DirectSum,
    /// `φ^n: F^n → Ω^n` or `ι^n: Θ^n → I^n`.
    pub map: ChainMap,
    /// `Ω^{n+1}` or `Θ^{n+1}`.
    pub next: Complex,
    /// `Ω^{n+1} → F^n` or `I^n → Θ^{n+1}`.
    pub connecting: ChainMap,
    /// The cone triangle of `map`.
    pub triangle: Triangle,
    /// `H(φ)` surjective or `H(ι)` injective.
    pub homology_condition: bool,
    /// `0 → H(Ω^{n+1}) → F^n → H(Ω^n) → 0` or
    /// `0 → H(Θ^n) → I^n → H(Θ^{n+1}) → 0` is exact in every degree.
    pub ses_exact: bool,
    pub triangle_verified: bool,
}

impl AdamsStep {
    pub fn verified(&self) -> bool {
        self.homology_condition && self.ses_exact && self.triangle_verified
    }
}

#[derive(Clone, Debug)]
pub struct AdamsTower {
    pub side: TowerSide,
    pub base: Complex,
    pub steps: Vec<AdamsStep>,
}

fn all_degrees(cs: &[&Complex]) -> Option<(i32, i32)> {
    let ws: Vec<(i32, i32)> = cs.iter().filter_map(|c| c.window()).collect();
    let lo = ws.iter().map(|w| w.0).min()?;
    let hi = ws.iter().map(|w| w.1).max()?;
    Some((lo, hi))
}

fn cycle_representatives(m: &Complex, i: i32, rng: Option<&mut ChaCha8Rng>) -> Result<Vec<(Elem, i32)>> {
    let h = m.homology(i)?;
    let gens = h.module().minimal_generators();
    let ys: Vec<Elem> = gens.iter().map(|g| g.0.clone()).collect();
    let mut cycles: Vec<(Elem, i32)> = h
        .h_proj
        .lift_elements(&ys)?
        .into_iter()
        .zip(&gens)
        .map(|(l, g)| (h.z.apply(&l.expect("homology is a quotient of the cycles")), g.1))
        .collect();
    if let Some(rng) = rng {
        let mi = m.module(i);
        let above = m.module(i + 1);
        let d = m.diff(i + 1);
        for j in 0..cycles.len() {
            let deg = cycles[j].1;
            let b = d.apply(&random::element(&above, deg, rng));
            let mut z = mi.add_elems(&cycles[j].0, &b);
            for k in 0..j {
                if cycles[k].1 == deg && rng.gen_bool(0.5) {
                    let c = random::scalar(mi.field(), rng);
                    z = mi.add_elems(&z, &mi.scale_elem(&c, &cycles[k].0));
                }
            }
            cycles[j].0 = z;
        }
    }
    Ok(cycles)
}

fn free_on(ring: &crate::algebra::Ring, degs: &[i32]) -> FgModule {
    if ring.is_artin() {
        FgModule::free(ring, degs.len())
    } else {
        FgModule::free_twisted(ring, degs)
    }
}

/// One projective Adams step with the given cycle choice.
pub fn adams_step_proj_with(m: &Complex, choice: CycleChoice) -> Result<AdamsStep> {
    let ring = m.ring().clone();
    let mut rng = match choice {
        CycleChoice::Minimal => None,
        CycleChoice::Perturbed(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
    };
    let mut comps: Vec<(i32, ModuleMap)> = Vec::new();
    let mut frees: Vec<(i32, FgModule)> = Vec::new();
    if let Some((lo, hi)) = m.window() {
        for i in lo..=hi {
            let cycles = cycle_representatives(m, i, rng.as_mut())?;
            if cycles.is_empty() {
                continue;
            }
            let degs: Vec<i32> = cycles.iter().map(|c| c.1).collect();
            let free = free_on(&ring, &degs);
            let imgs: Vec<Elem> = cycles.into_iter().map(|c| c.0).collect();
            comps.push((i, ModuleMap::from_generator_images(&free, &m.module(i), &imgs)?));
            frees.push((i, free));
        }
    }
    let layer = match (frees.first(), frees.last()) {
        (Some(&(lo, _)), Some(&(hi, _))) => {
            let mods = (lo..=hi)
                .map(|i| {
                    frees
                        .iter()
                        .find(|f| f.0 == i)
                        .map_or_else(|| FgModule::zero(&ring), |f| f.1.clone())
                })
                .collect();
            Complex::graded(&ring, lo, mods)
        }
        _ => Complex::zero(&ring),
    };
    let phi = ChainMap::new(&layer, m, comps)?;
    let (_, triangle) = cone(&phi);
    let connecting = triangle.h.shift(-1);
    let next = connecting.source().clone();
    let mut homology_condition = true;
    for i in m.degrees() {
        homology_condition &= phi.homology_map(i)?.is_surjective()?;
    }
    let mut ses_exact = true;
    if let Some((lo, hi)) = all_degrees(&[m, &layer, &next]) {
        for i in lo..=hi {
            let ses = Ses {
                first: connecting.homology_map(i)?,
                second: phi.homology_map(i)?,
            };
            ses_exact &= ses.verify()?;
        }
    }
    let triangle_verified = triangle.verify()?;
    Ok(AdamsStep {
        layer_flat: layer.flatten()?,
        layer,
        map: phi,
        next,
        connecting,
        triangle,
        homology_condition,
        ses_exact,
        triangle_verified,
    })
}

/// `F^0 → M → Cone → ΣF^0` with `Ω^1(M)` the desuspended cone.
pub fn adams_step_proj(m: &Complex) -> Result<AdamsStep> {
    adams_step_proj_with(m, CycleChoice::Minimal)
}

/// One injective Adams step with the given cycle choice (artinian mode).
pub fn adams_step_inj_with(m: &Complex, choice: CycleChoice) -> Result<AdamsStep> {
    if !m.ring().is_artin() {
        return Err(Error::WrongMode("injective Adams step".into()));
    }
    let dual = adams_step_proj_with(&m.matlis_dual()?, choice)?;
    let layer = dual.layer.matlis_dual()?;
    let iota = dual.map.matlis_dual()?;
    if iota.source() != m {
        return Err(Error::Verification("the double dual is not the original complex".into()));
    }
    let (next, triangle) = cone(&iota);
    let connecting = triangle.g.clone();
    let mut homology_condition = true;
    for i in m.degrees() {
        homology_condition &= iota.homology_map(i)?.is_injective()?;
    }
    let mut ses_exact = true;
    if let Some((lo, hi)) = all_degrees(&[m, &layer, &next]) {
        for i in lo..=hi {
            let ses = Ses {
                first: iota.homology_map(i)?,
                second: connecting.homology_map(i)?,
            };
            ses_exact &= ses.verify()?;
        }
    }
    let triangle_verified = triangle.verify()?;
    Ok(AdamsStep {
        layer_flat: layer.flatten()?,
        layer,
        map: iota,
        next,
        connecting,
        triangle,
        homology_condition,
        ses_exact,
        triangle_verified,
    })
}

/// `M → I^0 → Θ^1(M) → ΣM`.
pub fn adams_step_inj(m: &Complex) -> Result<AdamsStep> {
    adams_step_inj_with(m, CycleChoice::Minimal)
}

pub fn adams_tower_with(m: &Complex, side: TowerSide, n: usize, choice: CycleChoice) -> Result<AdamsTower> {
    let mut steps: Vec<AdamsStep> = Vec::with_capacity(n);
    let mut current = m.clone();
    for k in 0..n {
        let choice = match choice {
            CycleChoice::Perturbed(s) => CycleChoice::Perturbed(s.wrapping_add(k as u64)),
            c => c,
        };
        let step = match side {
            TowerSide::Projective => adams_step_proj_with(&current, choice)?,
            TowerSide::Injective => adams_step_inj_with(&current, choice)?,
        };
        current = step.next.clone();
        steps.push(step);
    }
    Ok(AdamsTower {
        side,
        base: m.clone(),
        steps,
    })
}

/// `n` steps, each applied to the object produced by the previous one.
pub fn adams_tower(m: &Complex, side: TowerSide, n: usize) -> Result<AdamsTower> {
    adams_tower_with(m, side, n, CycleChoice::Minimal)
}

impl AdamsTower {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `Ω^n` or `Θ^n`; the base for `n = 0`.
    pub fn object(&self, n: usize) -> &Complex {
        if n == 0 {
            &self.base
        } else {
            &self.steps[n - 1].next
        }
    }

    pub fn verified(&self) -> bool {
        self.steps.iter().all(|s| s.verified())
    }

    pub fn summary(&self) -> Result<TowerSummary> {
        let mut steps = Vec::new();
        for (n, s) in self.steps.iter().enumerate() {
            let layer_ranks = s
                .layer
                .degrees()
                .map(|i| (i, s.layer.module(i).num_generators()))
                .filter(|r| r.1 > 0)
                .collect();
            let obj = self.object(n);
            let mut homology = Vec::new();
            for i in obj.degrees() {
                let h = obj.homology(i)?;
                let hm = h.module();
                if !hm.is_zero() {
                    homology.push(HomologySummary {
                        degree: i,
                        dim: hm.dim(),
                        generators: hm.num_generators(),
                    });
                }
            }
            steps.push(StepSummary {
                layer_ranks,
                homology,
                verified: s.verified(),
            });
        }
        Ok(TowerSummary {
            side: self.side,
            steps,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologySummary {
    pub degree: i32,
    /// `k`-dimension (artinian mode).
    pub dim: Option<usize>,
    pub generators: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepSummary {
    /// `(degree, rank)` of the nonzero layer terms.
    pub layer_ranks: Vec<(i32, usize)>,
    /// Homology of the object the step was applied to.
    pub homology: Vec<HomologySummary>,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerSummary {
    pub side: TowerSide,
    pub steps: Vec<StepSummary>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpliceReport {
    /// Number of modules in the spliced sequence, the outer zeros excluded.
    pub terms: usize,
    /// Position of the first term where exactness fails.
    pub failure: Option<usize>,
}

impl SpliceReport {
    pub fn exact(&self) -> bool {
        self.failure.is_none()
    }
}

/// Exactness of the long sequence obtained by splicing the short exact
/// sequences of a tower, after flattening each term with `(-)^⊕`:
/// `0 → H(Ω^n) → F^{n-1} → … → F^0 → H(M) → 0` or
/// `0 → H(M) → I^0 → … → I^{n-1} → H(Θ^n) → 0`.
pub fn verify_splice(t: &AdamsTower) -> Result<SpliceReport> {
    let n = t.steps.len();
    if n == 0 {
        return Err(Error::HypothesisNotMet("splicing needs at least one step".into()));
    }
    let mut cs: Vec<&Complex> = vec![&t.base];
    for s in &t.steps {
        cs.push(&s.layer);
        cs.push(&s.next);
    }
    let ring = t.base.ring().clone();
    let Some((lo, hi)) = all_degrees(&cs) else {
        return Ok(SpliceReport {
            terms: n + 2,
            failure: None,
        });
    };
    // per-degree maps of the spliced sequence, in order
    let mut maps: Vec<Vec<ModuleMap>> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut per_degree = Vec::new();
        for i in lo..=hi {
            let s = &t.steps;
            let f = match t.side {
                TowerSide::Projective => {
                    if k == 0 {
                        s[n - 1].connecting.homology_map(i)?
                    } else if k == n {
                        s[0].map.homology_map(i)?
                    } else {
                        s[n - k - 1]
                            .connecting
                            .homology_map(i)?
                            .compose(&s[n - k].map.homology_map(i)?)
                    }
                }
                TowerSide::Injective => {
                    if k == 0 {
                        s[0].map.homology_map(i)?
                    } else if k == n {
                        s[n - 1].connecting.homology_map(i)?
                    } else {
                        s[k].map.homology_map(i)?.compose(&s[k - 1].connecting.homology_map(i)?)
                    }
                }
            };
            per_degree.push(f);
        }
        maps.push(per_degree);
    }
    let flat: Vec<ModuleMap> = maps
        .iter()
        .map(|per| {
            let src: Vec<FgModule> = per.iter().map(|f| f.source().clone()).collect();
            let tgt: Vec<FgModule> = per.iter().map(|f| f.target().clone()).collect();
            let s = modules::direct_sum(&ring, &src)?;
            let u = modules::direct_sum(&ring, &tgt)?;
            Ok(DirectSum::block_map(&s, &u, |r, c| (r == c).then(|| per[r].clone())))
        })
        .collect::<Result<_>>()?;
    let mut failure = None;
    if !flat[0].is_injective()? {
        failure = Some(0);
    } else if let Some(k) = (1..=n)
        .map(|k| modules::is_exact_at(&flat[k - 1], &flat[k]).map(|ok| (k, ok)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .find(|p| !p.1)
    {
        failure = Some(k.0);
    } else if !flat[n].is_surjective()? {
        failure = Some(n + 1);
    }
    Ok(SpliceReport {
        terms: n + 2,
        failure,
    })
}

#[cfg(test)]
mod tests;

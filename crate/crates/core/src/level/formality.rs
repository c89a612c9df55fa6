//! Deciding whether a complex is isomorphic in the derived category to its
//! homology, viewed as a complex with zero differential.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::derived::derived_hom;
use super::LevelOptions;
use crate::complexes::{ChainMap, Complex};
use crate::error::Result;
use crate::linalg::{Mat, Scalar};
use crate::modules::{hom, ModuleMap};

/// A quasi-isomorphism (or a roof of them) between `M` and `H(M)`.
#[derive(Clone, Debug)]
pub enum LevelOneWitness {
    /// `M` has zero differential.
    ZeroDifferential,
    /// A quasi-isomorphism `H(M) → M`, from splittings of `Z_i ↠ H_i`.
    FromHomology(ChainMap),
    /// A quasi-isomorphism `M → H(M)`, from retractions of `H_i ↪ C_i`.
    ToHomology(ChainMap),
    /// `M ← P → H(M)` with `P → M` a semi-free replacement, truncated so
    /// that both legs are quasi-isomorphisms in degrees `≤ through`, above
    /// which `M` and `H(M)` vanish.
    Roof { resolution: ChainMap, map: ChainMap, through: i32 },
}

impl LevelOneWitness {
    pub fn verify(&self) -> Result<bool> {
        match self {
            LevelOneWitness::ZeroDifferential => Ok(true),
            LevelOneWitness::FromHomology(f) | LevelOneWitness::ToHomology(f) => f.is_quasi_iso(),
            LevelOneWitness::Roof { resolution, map, through } => {
                Ok(quasi_iso_through(resolution, *through)? && quasi_iso_through(map, *through)?)
            }
        }
    }

    pub fn describe(&self) -> &'static str {
        match self {
            LevelOneWitness::ZeroDifferential => "zero differential",
            LevelOneWitness::FromHomology(_) => "section H(M) → M",
            LevelOneWitness::ToHomology(_) => "retraction M → H(M)",
            LevelOneWitness::Roof { .. } => "roof M ← P → H(M)",
        }
    }
}

/// `H_i(f)` is an isomorphism for every `i ≤ through`.
pub fn quasi_iso_through(f: &ChainMap, through: i32) -> Result<bool> {
    let lo = [f.source().window(), f.target().window()]
        .into_iter()
        .flatten()
        .map(|w| w.0)
        .min();
    let Some(lo) = lo else {
        return Ok(true);
    };
    for i in lo..=through {
        if !f.homology_map(i)?.is_iso()? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Why no morphism `M → H(M)` in the derived category is an isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NotFormal {
    /// `Hom_D(M, H(M)) = 0` although `H(M) ≠ 0`.
    NoMorphisms,
    /// The images of `H_i(f)` over a basis of classes span a proper
    /// subspace of `H_i(M)`.
    ProperImage { degree: i32, span: usize, dim: usize },
    /// Every class induces zero on `H_i`.
    ZeroOnHomology { degree: i32 },
    /// Every nonzero class was tried.
    Exhaustive { candidates: u64 },
}

#[derive(Clone, Debug)]
pub enum LevelOne {
    Yes(LevelOneWitness),
    No(NotFormal),
    Inconclusive(String),
}

impl LevelOne {
    pub fn is_yes(&self) -> bool {
        matches!(self, LevelOne::Yes(_))
    }
}

/// `H(M) → M` when every homology module is free.
pub fn section_from_homology(m: &Complex) -> Result<Option<ChainMap>> {
    let hc = m.homology_complex()?;
    let mut comps = Vec::new();
    for i in m.degrees() {
        let h = m.homology(i)?;
        if h.module().is_zero() {
            continue;
        }
        if !h.module().is_free() {
            return Ok(None);
        }
        let Some(s) = h.h_proj.lift_map(&ModuleMap::identity(h.module()))? else {
            return Ok(None);
        };
        comps.push((i, h.z.compose(&s)));
    }
    Ok(Some(ChainMap::new(&hc, m, comps)?))
}

/// `M → H(M)` when every homology module is injective (artinian mode).
pub fn retraction_to_homology(m: &Complex) -> Result<Option<ChainMap>> {
    if !m.ring().is_artin() {
        return Ok(None);
    }
    let hc = m.homology_complex()?;
    let mut comps = Vec::new();
    for i in m.degrees() {
        let h = m.homology(i)?;
        if h.module().is_zero() {
            continue;
        }
        if !h.module().matlis_dual()?.is_free() {
            return Ok(None);
        }
        let Some(r) = hom::solve_pre(&h.h_to_c, &ModuleMap::identity(h.module()))? else {
            return Ok(None);
        };
        comps.push((i, r.compose(&h.c_proj)));
    }
    Ok(Some(ChainMap::new(m, &hc, comps)?))
}

fn homology_maps(f: &ChainMap, degrees: &[i32]) -> Result<Vec<ModuleMap>> {
    degrees.iter().map(|&i| f.homology_map(i)).collect()
}

fn all_iso(maps: &[ModuleMap]) -> Result<bool> {
    for f in maps {
        if !f.is_iso()? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn combination(maps: &[Vec<ModuleMap>], coeffs: &[Scalar], k: usize) -> ModuleMap {
    let first = &maps[0][k];
    let mut acc = ModuleMap::zero(first.source(), first.target());
    for (b, c) in maps.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = acc.add(&b[k].scale(c));
        }
    }
    acc
}

fn chain_combination(basis: &[ChainMap], coeffs: &[Scalar]) -> ChainMap {
    let mut acc = ChainMap::zero(basis[0].source(), basis[0].target());
    for (b, c) in basis.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = acc.add(&b.scale(c));
        }
    }
    acc
}

/// Decide whether `M ≅ H(M)` in the derived category.
pub fn level_one_test(m: &Complex, opts: &LevelOptions) -> Result<LevelOne> {
    if m.has_zero_differential() {
        return Ok(LevelOne::Yes(LevelOneWitness::ZeroDifferential));
    }
    if let Some(f) = section_from_homology(m)? {
        return Ok(LevelOne::Yes(LevelOneWitness::FromHomology(f)));
    }
    if let Some(f) = retraction_to_homology(m)? {
        return Ok(LevelOne::Yes(LevelOneWitness::ToHomology(f)));
    }
    let hc = m.homology_complex()?;
    let degrees: Vec<i32> = m
        .degrees()
        .filter(|&i| !hc.module(i).is_zero())
        .collect();
    let space = derived_hom(m, &hc)?;
    let basis = space.class_basis()?;
    if basis.is_empty() {
        return Ok(LevelOne::No(NotFormal::NoMorphisms));
    }
    // H_i(f) for f out of P, pulled back along the quasi-isomorphism P → M
    let per_class: Vec<Vec<ModuleMap>> = basis
        .iter()
        .map(|f| homology_maps(f, &degrees))
        .collect::<Result<_>>()?;
    let field = m.ring().field;
    for (k, &i) in degrees.iter().enumerate() {
        if per_class.iter().all(|b| b[k].is_zero()) {
            return Ok(LevelOne::No(NotFormal::ZeroOnHomology { degree: i }));
        }
        if m.ring().is_artin() {
            let dim = hc.module(i).dim().unwrap_or(0);
            let mut span = Mat::zeros(field, dim, 0);
            for b in &per_class {
                span = span.hstack(b[k].matrix().expect("artinian map"));
            }
            let r = span.rank();
            if r < dim {
                return Ok(LevelOne::No(NotFormal::ProperImage { degree: i, span: r, dim }));
            }
        }
    }
    let found = |coeffs: &[Scalar]| -> Result<bool> {
        let maps: Vec<ModuleMap> = (0..degrees.len())
            .map(|k| combination(&per_class, coeffs, k))
            .collect();
        all_iso(&maps)
    };
    let yes = |coeffs: &[Scalar]| {
        LevelOne::Yes(LevelOneWitness::Roof {
            resolution: space.resolution.map.clone(),
            map: chain_combination(&basis, coeffs),
            through: space.resolution.top - 1,
        })
    };
    let d = basis.len() as u32;
    let total = field.order().and_then(|q| q.checked_pow(d));
    if let (Some(q), Some(total)) = (field.order(), total) {
        if total <= opts.search_budget {
            for idx in 1..total {
                let mut rest = idx;
                let coeffs: Vec<Scalar> = (0..d)
                    .map(|_| {
                        let c = field.element(rest % q);
                        rest /= q;
                        c
                    })
                    .collect();
                if found(&coeffs)? {
                    return Ok(yes(&coeffs));
                }
            }
            return Ok(LevelOne::No(NotFormal::Exhaustive { candidates: total - 1 }));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..32 {
        let coeffs: Vec<Scalar> = (0..d).map(|_| crate::random::scalar(field, &mut rng)).collect();
        if found(&coeffs)? {
            return Ok(yes(&coeffs));
        }
    }
    Ok(LevelOne::Inconclusive(format!(
        "no isomorphism among 32 random combinations of {d} classes"
    )))
}

//! Upper bounds on levels, each realized by explicit triangles whose outer
//! vertices are complexes of class modules with zero differential.

use crate::adams::{adams_step_inj, adams_step_proj};
use crate::complexes::{cone, ChainMap, Complex, Triangle};
use crate::error::{Error, Result};
use crate::modules::{hom, FgModule, ModuleMap};
use crate::resolutions::{dimension, semi_free_resolution, DimValue, DimensionReport};

use super::formality::{retraction_to_homology, section_from_homology, LevelOneWitness};
use super::{in_class, terms_in_class, LevelClass, LevelOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UpperRule {
    Zero,
    LevelOne,
    ProjectiveTower,
    InjectiveTower,
    TwoLayer,
    BrutalTruncation,
}

impl UpperRule {
    pub fn name(self) -> &'static str {
        match self {
            UpperRule::Zero => "zero",
            UpperRule::LevelOne => "level one",
            UpperRule::ProjectiveTower => "projective tower",
            UpperRule::InjectiveTower => "injective tower",
            UpperRule::TwoLayer => "two-layer",
            UpperRule::BrutalTruncation => "brutal truncation",
        }
    }
}

/// A triangle together with quasi-isomorphisms identifying its vertices
/// with the objects named in the label.
#[derive(Clone, Debug)]
pub struct CertStep {
    pub label: String,
    pub triangle: Triangle,
    pub identifications: Vec<ChainMap>,
}

#[derive(Clone, Debug)]
pub struct UpperCertificate {
    pub rule: UpperRule,
    pub value: usize,
    pub class: Option<LevelClass>,
    /// `M ≃ H(M)` for the object the construction bottoms out in.
    pub base: Option<LevelOneWitness>,
    pub steps: Vec<CertStep>,
    /// The complexes of level at most one the object is built from: zero
    /// differential and every term in the class.
    pub pieces: Vec<Complex>,
    pub theorem_bound: Option<usize>,
    pub dimension: Option<DimensionReport>,
}

impl UpperCertificate {
    pub fn zero() -> UpperCertificate {
        UpperCertificate {
            rule: UpperRule::Zero,
            value: 0,
            class: None,
            base: None,
            steps: vec![],
            pieces: vec![],
            theorem_bound: None,
            dimension: None,
        }
    }

    /// Requires the caller to have checked that the homology lies in the
    /// class; the piece is recorded without a class.
    pub fn level_one(w: LevelOneWitness) -> UpperCertificate {
        UpperCertificate {
            rule: UpperRule::LevelOne,
            value: 1,
            base: Some(w),
            ..UpperCertificate::zero()
        }
    }

    pub fn verify(&self) -> Result<bool> {
        if let Some(w) = &self.base {
            if !w.verify()? {
                return Ok(false);
            }
        }
        for s in &self.steps {
            if !s.triangle.verify()? {
                return Ok(false);
            }
            for f in &s.identifications {
                if !f.is_quasi_iso()? {
                    return Ok(false);
                }
            }
        }
        for p in &self.pieces {
            if !p.has_zero_differential() {
                return Ok(false);
            }
            if let Some(c) = self.class {
                if !terms_in_class(p, c)? {
                    return Ok(false);
                }
            }
        }
        let counted = match self.rule {
            UpperRule::LevelOne => 1,
            _ => self.pieces.len(),
        };
        Ok(counted == self.value)
    }
}

fn theorem_value(class: LevelClass, n: usize) -> usize {
    match class {
        LevelClass::Proj | LevelClass::Inj => n + 1,
        _ => (n + 1).max(2),
    }
}

/// Upper bound from the dimension of the total homology, realized by
/// Adams steps followed by a base case or a two-layer triangle.
pub fn upper_certificate(m: &Complex, class: LevelClass, opts: &LevelOptions) -> Result<UpperCertificate> {
    if m.is_exact()? {
        return Ok(UpperCertificate::zero());
    }
    let report = dimension(&m.total_homology()?, class.dim_kind(), opts.cutoff)?;
    let n = match &report.value {
        DimValue::Vanishing => 0,
        DimValue::Finite(n) => *n,
        DimValue::CertifiedInfinite(_) => {
            return Err(Error::HypothesisNotMet(format!(
                "{} of the total homology is infinite",
                class.dim_kind().name()
            )))
        }
        DimValue::AtLeast(_) | DimValue::Inconclusive { .. } => {
            return Err(Error::DimensionUnknown(format!(
                "{} of the total homology",
                class.dim_kind().name()
            )))
        }
    };
    let bound = theorem_value(class, n);
    let mut cert = match class {
        LevelClass::Proj | LevelClass::Inj => tower(m, class, n)?,
        _ => two_layer(m, class, n.saturating_sub(1))?,
    };
    cert.theorem_bound = Some(bound);
    cert.dimension = Some(report);
    if cert.value > bound {
        return Err(Error::Verification(format!(
            "construction reached {} above the bound {bound}",
            cert.value
        )));
    }
    Ok(cert)
}

/// Adams steps until the homology lies in the class.
fn tower(m: &Complex, class: LevelClass, n: usize) -> Result<UpperCertificate> {
    let projective = class == LevelClass::Proj;
    let mut cur = m.clone();
    let mut steps = Vec::new();
    let mut pieces = Vec::new();
    for k in 0..=n {
        if cur.is_exact()? {
            return Ok(tower_cert(class, pieces.len(), None, steps, pieces));
        }
        let base = if projective {
            section_from_homology(&cur)?.map(LevelOneWitness::FromHomology)
        } else {
            retraction_to_homology(&cur)?.map(LevelOneWitness::ToHomology)
        };
        let base = match (cur.has_zero_differential(), base) {
            (true, _) if terms_in_class(&cur, class)? => Some(LevelOneWitness::ZeroDifferential),
            (_, b) => b,
        };
        if let Some(w) = base {
            pieces.push(cur.homology_complex()?);
            return Ok(tower_cert(class, pieces.len(), Some(w), steps, pieces));
        }
        let step = if projective {
            adams_step_proj(&cur)?
        } else {
            adams_step_inj(&cur)?
        };
        if !step.verified() {
            return Err(Error::Verification(format!("Adams step {k} failed its checks")));
        }
        let label = if projective {
            format!("F^{k} -> Omega^{k} -> Sigma Omega^{}", k + 1)
        } else {
            format!("Theta^{k} -> I^{k} -> Theta^{}", k + 1)
        };
        steps.push(CertStep {
            label,
            triangle: step.triangle.clone(),
            identifications: vec![],
        });
        pieces.push(step.layer.clone());
        cur = step.next;
    }
    Err(Error::Verification(format!(
        "homology not in {} after {} Adams steps",
        class.name(),
        n + 1
    )))
}

fn tower_cert(
    class: LevelClass,
    value: usize,
    base: Option<LevelOneWitness>,
    steps: Vec<CertStep>,
    pieces: Vec<Complex>,
) -> UpperCertificate {
    UpperCertificate {
        rule: if class == LevelClass::Proj {
            UpperRule::ProjectiveTower
        } else {
            UpperRule::InjectiveTower
        },
        value,
        class: Some(class),
        base,
        steps,
        pieces,
        theorem_bound: None,
        dimension: None,
    }
}

/// `k` Adams steps (projective, or injective for GI), then a complex of
/// class modules `C ≃ Ω^k` split by `Z(C) → C → ΣB(C)` (or
/// `B(C) → C → C(C)` for GI).
fn two_layer(m: &Complex, class: LevelClass, k: usize) -> Result<UpperCertificate> {
    let injective = class == LevelClass::GI;
    let mut cur = m.clone();
    let mut steps = Vec::new();
    let mut pieces = Vec::new();
    for j in 0..k {
        if cur.is_exact()? {
            break;
        }
        let step = if injective {
            adams_step_inj(&cur)?
        } else {
            adams_step_proj(&cur)?
        };
        if !step.verified() {
            return Err(Error::Verification(format!("Adams step {j} failed its checks")));
        }
        if !terms_in_class(&step.layer, class)? {
            return Err(Error::Verification(format!("layer {j} is not in {}", class.name())));
        }
        steps.push(CertStep {
            label: format!("Adams step {j}"),
            triangle: step.triangle.clone(),
            identifications: vec![],
        });
        pieces.push(step.layer.clone());
        cur = step.next;
    }
    let mut cert = UpperCertificate {
        rule: UpperRule::TwoLayer,
        value: 0,
        class: Some(class),
        base: None,
        steps,
        pieces,
        theorem_bound: None,
        dimension: None,
    };
    if !cur.is_exact()? {
        let (c, ids) = class_replacement(&cur, class)?;
        if c.has_zero_differential() {
            cert.pieces.push(c.clone());
        } else {
            let (step, outer) = if injective {
                boundary_cokernel_triangle(&c)?
            } else {
                cycle_boundary_triangle(&c)?
            };
            for p in &outer {
                if !terms_in_class(p, class)? {
                    return Err(Error::Verification(format!(
                        "a layer of the two-layer triangle is not in {}",
                        class.name()
                    )));
                }
            }
            cert.steps.push(step);
            cert.pieces.extend(outer);
        }
        if let Some(last) = cert.steps.last_mut() {
            last.identifications.extend(ids);
        } else if !ids.is_empty() {
            cert.steps.push(identity_step(&c, ids));
        }
    }
    cert.value = cert.pieces.len();
    Ok(cert)
}

/// A step carrying only identifications, on the trivial triangle
/// `0 → C → C → 0`.
fn identity_step(c: &Complex, ids: Vec<ChainMap>) -> CertStep {
    let zero = Complex::zero(c.ring());
    let (_, triangle) = cone(&ChainMap::zero(&zero, c));
    CertStep {
        label: "replacement".into(),
        triangle,
        identifications: ids,
    }
}

/// A bounded complex of class modules quasi-isomorphic to `s`, with the
/// quasi-isomorphisms that connect them.
fn class_replacement(s: &Complex, class: LevelClass) -> Result<(Complex, Vec<ChainMap>)> {
    if terms_in_class(s, class)? {
        return Ok((s.clone(), vec![]));
    }
    if super::homology_in_class(s, class)? {
        if let Some(f) = section_from_homology(s)? {
            return Ok((f.source().clone(), vec![f]));
        }
        if let Some(f) = retraction_to_homology(s)? {
            return Ok((f.target().clone(), vec![f]));
        }
    }
    if class != LevelClass::GI && !s.ring().is_artin() {
        return soft_truncation(s, class);
    }
    Err(Error::OutOfScope(format!(
        "no bounded complex of {} modules quasi-isomorphic to the tower's last object",
        class.name()
    )))
}

/// `τ_{≤d} P` for a bounded semi-free resolution `P → S`, with `d ≥ sup H(S)`
/// least such that `coker(∂_{d+1})` is in the class.
fn soft_truncation(s: &Complex, class: LevelClass) -> Result<(Complex, Vec<ChainMap>)> {
    let hsup = s.homology_window()?.map_or(0, |w| w.1);
    let (_, top) = s.window().expect("nonzero complex");
    let mut limit = top + 2;
    let res = loop {
        let r = semi_free_resolution(s, limit)?;
        if r.complete {
            break r;
        }
        if limit > top + 2 + 4 * (s.ring().nvars() as i32 + 1) {
            return Err(Error::BudgetExceeded("semi-free resolution did not terminate".into()));
        }
        limit += 4;
    };
    let p = &res.complex;
    let (plo, phi) = p.window().expect("resolution of a non-exact complex");
    for d in hsup.max(plo)..=phi {
        let q = p.diff(d + 1).cokernel()?;
        if !in_class(q.target(), class)? {
            continue;
        }
        let below = q.target().clone();
        let mut mods: Vec<FgModule> = (plo..d).map(|i| p.module(i)).collect();
        mods.push(below.clone());
        let mut diffs: Vec<ModuleMap> = (plo + 1..d).map(|i| p.diff(i)).collect();
        if d > plo {
            let induced = hom::solve_pre(&q, &p.diff(d))?
                .ok_or_else(|| Error::Verification("differential does not factor".into()))?;
            diffs.push(induced);
        }
        let t = Complex::new(s.ring(), plo, mods, diffs)?;
        let mut comps: Vec<(i32, ModuleMap)> = (plo..d).map(|i| (i, ModuleMap::identity(&p.module(i)))).collect();
        comps.push((d, q));
        let proj = ChainMap::new(p, &t, comps)?;
        return Ok((t, vec![res.map.clone(), proj]));
    }
    Err(Error::Verification("no truncation degree with a class cokernel".into()))
}

/// `Z(C) → C → ΣB(C)`: the cone of the cycle inclusion maps to `ΣB(C)` by
/// `(z, c) ↦ ∂c`.
fn cycle_boundary_triangle(c: &Complex) -> Result<(CertStep, Vec<Complex>)> {
    let ring = c.ring().clone();
    let (lo, hi) = c.window().expect("nonzero complex");
    let hs: Vec<_> = (lo..=hi).map(|i| c.homology(i)).collect::<Result<_>>()?;
    let z = Complex::graded(&ring, lo, hs.iter().map(|h| h.cycles().clone()).collect());
    let incl = ChainMap::new(&z, c, (lo..=hi).zip(hs.iter()).map(|(i, h)| (i, h.z.clone())).collect())?;
    let bs: Vec<_> = (lo..=hi).map(|i| c.boundary(i)).collect::<Result<_>>()?;
    let sb = Complex::graded(&ring, lo + 1, bs.iter().map(|b| b.incl.source().clone()).collect());
    let (cn, triangle) = cone(&incl);
    let comps = cn
        .degrees()
        .filter(|&i| i - 1 >= lo && i - 1 <= hi)
        .map(|i| (i, bs[(i - 1 - lo) as usize].surj.compose(&triangle.fh_homotopy.comp(i))))
        .collect();
    let psi = ChainMap::new(&cn, &sb, comps)?;
    let step = CertStep {
        label: "Z(C) -> C -> Sigma B(C)".into(),
        triangle,
        identifications: vec![psi],
    };
    Ok((step, vec![z, sb]))
}

/// `B(C) → C → C(C)`: the cone of the boundary inclusion maps to the
/// cokernels by `(b, c) ↦ [c]`.
fn boundary_cokernel_triangle(c: &Complex) -> Result<(CertStep, Vec<Complex>)> {
    let ring = c.ring().clone();
    let (lo, hi) = c.window().expect("nonzero complex");
    let hs: Vec<_> = (lo..=hi).map(|i| c.homology(i)).collect::<Result<_>>()?;
    let b = Complex::graded(&ring, lo, hs.iter().map(|h| h.boundaries().clone()).collect());
    let incl = ChainMap::new(
        &b,
        c,
        (lo..=hi).zip(hs.iter()).map(|(i, h)| (i, h.boundary.incl.clone())).collect(),
    )?;
    let cc = Complex::graded(&ring, lo, hs.iter().map(|h| h.cokernel().clone()).collect());
    let (cn, triangle) = cone(&incl);
    let comps = (lo..=hi)
        .zip(hs.iter())
        .map(|(i, h)| (i, h.c_proj.compose(&triangle.fh_homotopy.comp(i))))
        .collect();
    let psi = ChainMap::new(&cn, &cc, comps)?;
    let step = CertStep {
        label: "B(C) -> C -> C(C)".into(),
        triangle,
        identifications: vec![psi],
    };
    Ok((step, vec![b, cc]))
}

/// When every term is in the class: peel off the top term, using
/// `σ_{<t} M → M → Σ^t M_t` with `Cone → Σ^t M_t` the projection.
pub fn brutal_truncation(m: &Complex, class: LevelClass) -> Result<UpperCertificate> {
    let mut cur = m.clone();
    let mut steps = Vec::new();
    let mut pieces = Vec::new();
    loop {
        let nz: Vec<i32> = cur.degrees().filter(|&i| !cur.module(i).is_zero()).collect();
        match nz.as_slice() {
            [] => break,
            [t] => {
                pieces.push(Complex::stalk(&cur.module(*t), *t));
                break;
            }
            _ => {}
        }
        let t = *nz.last().unwrap();
        let rest = cur.truncate_hard(t - 1, crate::complexes::Side::Below);
        let incl = ChainMap::new(
            &rest,
            &cur,
            rest.degrees().map(|i| (i, ModuleMap::identity(&rest.module(i)))).collect(),
        )?;
        let top = Complex::stalk(&cur.module(t), t);
        let (cn, triangle) = cone(&incl);
        let psi = ChainMap::new(&cn, &top, vec![(t, triangle.fh_homotopy.comp(t))])?;
        steps.push(CertStep {
            label: format!("truncation below {t}"),
            triangle,
            identifications: vec![psi],
        });
        pieces.push(top);
        cur = rest;
    }
    Ok(UpperCertificate {
        rule: UpperRule::BrutalTruncation,
        value: pieces.len(),
        class: Some(class),
        base: None,
        steps,
        pieces,
        theorem_bound: None,
        dimension: None,
    })
}

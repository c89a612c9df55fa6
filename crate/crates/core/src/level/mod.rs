//! Levels of bounded complexes with respect to classes of modules: certified
//! upper bounds built from distinguished triangles, lower bounds from ghost
//! chains and formality obstructions.

mod depth;
mod derived;
mod formality;
mod ghost;
mod upper;

use std::sync::atomic::{AtomicUsize, Ordering};

use serde::Serialize;

use crate::complexes::Complex;
use crate::error::{Error, Result};
use crate::modules::FgModule;
use crate::resolutions::DimKind;

pub use depth::{bass_check, depth_complex, depth_module, BassReport, GiCrossCheck};
pub use derived::{derived_hom, HomotopyClassSpace, DERIVED_HOM_BUDGET};
pub use formality::{
    level_one_test, quasi_iso_through, retraction_to_homology, section_from_homology, LevelOne,
    LevelOneWitness, NotFormal,
};
pub use ghost::{ghost_lower_bound, GhostChain, LowerCertificate, LowerWitness};
pub use upper::{upper_certificate, CertStep, UpperCertificate, UpperRule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LevelClass {
    Proj,
    Inj,
    Flat,
    GP,
    GI,
    GF,
}

impl LevelClass {
    pub const ALL: [LevelClass; 6] = [
        LevelClass::Proj,
        LevelClass::Inj,
        LevelClass::Flat,
        LevelClass::GP,
        LevelClass::GI,
        LevelClass::GF,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LevelClass::Proj => "Proj",
            LevelClass::Inj => "Inj",
            LevelClass::Flat => "Flat",
            LevelClass::GP => "GP",
            LevelClass::GI => "GI",
            LevelClass::GF => "GF",
        }
    }

    pub fn parse(s: &str) -> Result<LevelClass> {
        LevelClass::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown class `{s}`")))
    }

    /// The homological dimension governing the upper bound.
    pub fn dim_kind(self) -> DimKind {
        match self {
            LevelClass::Proj => DimKind::Pd,
            LevelClass::Inj => DimKind::Id,
            LevelClass::Flat => DimKind::Fd,
            LevelClass::GP => DimKind::Gpd,
            LevelClass::GI => DimKind::Gid,
            LevelClass::GF => DimKind::Gfd,
        }
    }

    /// The class reached by Matlis duality (artinian mode).
    pub fn dual(self) -> LevelClass {
        match self {
            LevelClass::Proj | LevelClass::Flat => LevelClass::Inj,
            LevelClass::Inj => LevelClass::Flat,
            LevelClass::GP | LevelClass::GF => LevelClass::GI,
            LevelClass::GI => LevelClass::GF,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelOptions {
    /// Resolution length used for dimension reports.
    pub cutoff: usize,
    /// Largest number of candidates tried exhaustively in searches.
    pub search_budget: u64,
    pub seed: u64,
    /// Longest ghost chain tried when no upper bound is known.
    pub ghost_depth: usize,
}

impl Default for LevelOptions {
    fn default() -> Self {
        LevelOptions {
            cutoff: 8,
            search_budget: 4096,
            seed: 0,
            ghost_depth: 3,
        }
    }
}

/// Membership of a finitely generated module in a class. Answers `false`
/// when membership cannot be certified: over a non-Gorenstein ring a
/// non-free module passing the bounded total reflexivity test is not
/// counted as Gorenstein projective.
pub fn in_class(m: &FgModule, class: LevelClass) -> Result<bool> {
    if m.is_zero() {
        return Ok(true);
    }
    let ring = m.ring();
    match class {
        LevelClass::Proj | LevelClass::Flat => Ok(m.is_free()),
        LevelClass::Inj => Ok(ring.is_artin() && m.matlis_dual()?.is_free()),
        LevelClass::GP | LevelClass::GF => {
            Ok(m.is_free() || (ring.is_artin() && ring.is_gorenstein()))
        }
        LevelClass::GI => {
            if !ring.is_artin() {
                return Ok(false);
            }
            if ring.is_gorenstein() {
                return Ok(true);
            }
            Ok(m.matlis_dual()?.is_free())
        }
    }
}

/// Every term of the complex lies in the class.
pub fn terms_in_class(c: &Complex, class: LevelClass) -> Result<bool> {
    for i in c.degrees() {
        if !in_class(&c.module(i), class)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every homology module lies in the class.
pub fn homology_in_class(c: &Complex, class: LevelClass) -> Result<bool> {
    for i in c.degrees() {
        if !in_class(c.homology(i)?.module(), class)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Bounds on `level_C(M)` with the certificates that justify them.
#[derive(Clone, Debug)]
pub struct LevelCertificate {
    pub class: LevelClass,
    pub upper: Option<UpperCertificate>,
    pub lower: LowerCertificate,
    pub verdict: Option<usize>,
    pub diagnostics: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UpperSummary {
    pub value: usize,
    pub rule: String,
    pub steps: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theorem_bound: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LowerSummary {
    pub value: usize,
    pub kind: String,
    pub chain: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateSummary {
    pub class: String,
    pub upper: Option<UpperSummary>,
    pub lower: LowerSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<usize>,
    pub diagnostics: Vec<String>,
}

impl LevelCertificate {
    pub fn upper_value(&self) -> Option<usize> {
        self.upper.as_ref().map(|u| u.value)
    }

    pub fn lower_value(&self) -> usize {
        self.lower.value
    }

    /// Re-checks every triangle, witness and ghost map, and that
    /// `lower ≤ upper`.
    pub fn verify(&self) -> Result<bool> {
        if let Some(u) = &self.upper {
            if u.value < self.lower.value || !u.verify()? {
                return Ok(false);
            }
        }
        self.lower.verify()
    }

    pub fn summary(&self) -> CertificateSummary {
        CertificateSummary {
            class: self.class.name().into(),
            upper: self.upper.as_ref().map(|u| UpperSummary {
                value: u.value,
                rule: u.rule.name().into(),
                steps: u.steps.iter().map(|s| s.label.clone()).collect(),
                theorem_bound: u.theorem_bound,
            }),
            lower: LowerSummary {
                value: self.lower.value,
                kind: self.lower.witness.name().into(),
                chain: self.lower.chain_labels(),
            },
            verdict: self.verdict,
            diagnostics: self.diagnostics.clone(),
        }
    }
}

static CERTIFICATES: AtomicUsize = AtomicUsize::new(0);
static TRIANGLES: AtomicUsize = AtomicUsize::new(0);
static GHOST_MAPS: AtomicUsize = AtomicUsize::new(0);
static VIOLATIONS: AtomicUsize = AtomicUsize::new(0);

/// Counts over every certificate emitted by [`level_report`] in this
/// process.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AuditCounts {
    pub certificates: usize,
    pub triangles: usize,
    pub ghost_maps: usize,
    pub violations: usize,
}

pub fn audit_counts() -> AuditCounts {
    AuditCounts {
        certificates: CERTIFICATES.load(Ordering::SeqCst),
        triangles: TRIANGLES.load(Ordering::SeqCst),
        ghost_maps: GHOST_MAPS.load(Ordering::SeqCst),
        violations: VIOLATIONS.load(Ordering::SeqCst),
    }
}

fn audit(cert: &LevelCertificate) -> Result<bool> {
    let ok = cert.verify()?;
    CERTIFICATES.fetch_add(1, Ordering::SeqCst);
    if let Some(u) = &cert.upper {
        TRIANGLES.fetch_add(u.steps.len(), Ordering::SeqCst);
    }
    GHOST_MAPS.fetch_add(cert.lower.chain_len(), Ordering::SeqCst);
    if !ok {
        VIOLATIONS.fetch_add(1, Ordering::SeqCst);
    }
    Ok(ok)
}

/// Upper and lower bounds on `level_C(M)`, with a verdict when they meet.
pub fn level_report(m: &Complex, class: LevelClass, opts: &LevelOptions) -> Result<LevelCertificate> {
    let mut diagnostics = Vec::new();
    if m.is_exact()? {
        let cert = LevelCertificate {
            class,
            upper: Some(UpperCertificate::zero()),
            lower: LowerCertificate::zero_object(),
            verdict: Some(0),
            diagnostics,
        };
        audit(&cert)?;
        return Ok(cert);
    }
    let formal = level_one_test(m, opts).unwrap_or_else(|e| LevelOne::Inconclusive(e.to_string()));
    let mut uppers: Vec<UpperCertificate> = Vec::new();
    if let LevelOne::Yes(w) = &formal {
        if homology_in_class(m, class)? {
            uppers.push(UpperCertificate::level_one(w.clone()));
        }
    }
    if uppers.is_empty() {
        match upper_certificate(m, class, opts) {
            Ok(u) => uppers.push(u),
            Err(e) => diagnostics.push(format!("theorem construction: {e}")),
        }
        if terms_in_class(m, class)? {
            uppers.push(upper::brutal_truncation(m, class)?);
        }
    }
    let upper = uppers.into_iter().min_by_key(|u| u.value);

    let mut lower = LowerCertificate::nonzero();
    match &formal {
        LevelOne::No(proof) => lower = LowerCertificate::not_formal(proof.clone()),
        LevelOne::Inconclusive(why) => diagnostics.push(format!("level-one test: {why}")),
        LevelOne::Yes(_) => {}
    }
    let n_max = upper.as_ref().map_or(opts.ghost_depth, |u| u.value.saturating_sub(1));
    if upper.as_ref().is_none_or(|u| u.value > lower.value) && n_max >= lower.value {
        match ghost::lower_for_class(m, class, n_max, opts) {
            Ok(Some(l)) if l.value > lower.value => lower = l,
            Ok(_) => {}
            Err(e) => diagnostics.push(format!("ghost search: {e}")),
        }
    }
    let verdict = upper
        .as_ref()
        .and_then(|u| (u.value == lower.value).then_some(u.value));
    let cert = LevelCertificate {
        class,
        upper,
        lower,
        verdict,
        diagnostics,
    };
    if !audit(&cert)? {
        return Err(Error::Verification(format!(
            "{} certificate failed its own checks",
            class.name()
        )));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests;

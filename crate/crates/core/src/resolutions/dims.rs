//! Homological and Gorenstein homological dimensions of modules, and the
//! inequalities they satisfy along short exact sequences.

use serde::Serialize;

use super::minimal_free_resolution;
use crate::complexes::Ses;
use crate::error::{Error, Result};
use crate::linalg::{Mat, Scalar};
use crate::modules::{self, hom, isomorphism, FgModule, IsoResult, ModuleMap};

/// Steps of the Ext-vanishing check used for total reflexivity.
pub const TOTAL_REFLEXIVITY_WINDOW: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum DimKind {
    Pd,
    Id,
    Fd,
    Gpd,
    Gid,
    Gfd,
}

impl DimKind {
    pub fn name(self) -> &'static str {
        match self {
            DimKind::Pd => "pd",
            DimKind::Id => "id",
            DimKind::Fd => "fd",
            DimKind::Gpd => "Gpd",
            DimKind::Gid => "Gid",
            DimKind::Gfd => "Gfd",
        }
    }

    /// Injective-type dimensions bound the cokernel of a sequence; the
    /// others bound the kernel.
    pub fn is_injective_type(self) -> bool {
        matches!(self, DimKind::Id | DimKind::Gid)
    }
}

/// Why a dimension is infinite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Certificate {
    /// `Ω^later ≅ (Ω^earlier)^{⊕copies}` with `Ω^earlier ≠ 0`, so the
    /// minimal resolution never stops. `of_dual` marks syzygies of the
    /// Matlis dual.
    Periodicity {
        earlier: usize,
        later: usize,
        copies: usize,
        of_dual: bool,
    },
    /// A finite Gorenstein dimension would force total reflexivity (depth
    /// zero), which fails as described.
    NotTotallyReflexive { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum DimValue {
    /// The zero module (dimension `-∞`).
    Vanishing,
    Finite(usize),
    CertifiedInfinite(Certificate),
    AtLeast(usize),
    Inconclusive { window: usize },
}

impl DimValue {
    pub fn is_finite(&self) -> bool {
        matches!(self, DimValue::Vanishing | DimValue::Finite(_))
    }

    fn extended(&self) -> Option<Extended> {
        match self {
            DimValue::Vanishing => Some(Extended::NegInf),
            DimValue::Finite(n) => Some(Extended::Fin(*n as i64)),
            DimValue::CertifiedInfinite(_) => Some(Extended::Inf),
            DimValue::AtLeast(_) | DimValue::Inconclusive { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub kind: DimKind,
    pub value: DimValue,
    /// Betti numbers of the minimal resolution that was used, if any.
    pub betti: Vec<usize>,
    /// The resolution was checked exact and minimal.
    pub verified: bool,
    pub notes: Vec<String>,
}

impl DimensionReport {
    fn new(kind: DimKind, value: DimValue) -> DimensionReport {
        DimensionReport {
            kind,
            value,
            betti: vec![],
            verified: true,
            notes: vec![],
        }
    }

    fn relabel(mut self, kind: DimKind, note: &str) -> DimensionReport {
        self.kind = kind;
        self.notes.push(note.to_string());
        self
    }
}

fn find_periodicity(syz: &[FgModule], seed: u64) -> Result<Option<(usize, usize, usize)>> {
    for i in 1..syz.len() {
        let later = &syz[i];
        if later.is_zero() {
            continue;
        }
        for (j, earlier) in syz[..i].iter().enumerate() {
            if earlier.is_zero() {
                continue;
            }
            let (dl, de) = (later.dim().unwrap_or(0), earlier.dim().unwrap_or(0));
            if de == 0 || dl % de != 0 {
                continue;
            }
            let copies = dl / de;
            if later.num_generators() != copies * earlier.num_generators() {
                continue;
            }
            let parts = vec![earlier.clone(); copies];
            let sum = modules::direct_sum(later.ring(), &parts)?.module;
            if let IsoResult::Iso(_) = isomorphism(later, &sum, seed)? {
                return Ok(Some((j, i, copies)));
            }
        }
    }
    Ok(None)
}

fn pd_report(m: &FgModule, cutoff: usize, of_dual: bool) -> Result<DimensionReport> {
    if m.is_zero() {
        return Ok(DimensionReport::new(DimKind::Pd, DimValue::Vanishing));
    }
    let res = minimal_free_resolution(m, cutoff)?;
    let verified = res.verify()?;
    let value = if let Some(n) = res.length() {
        DimValue::Finite(n)
    } else if m.is_artin() {
        match find_periodicity(&res.syzygies, 0)? {
            Some((earlier, later, copies)) => DimValue::CertifiedInfinite(Certificate::Periodicity {
                earlier,
                later,
                copies,
                of_dual,
            }),
            None => DimValue::AtLeast(cutoff),
        }
    } else {
        DimValue::AtLeast(cutoff)
    };
    Ok(DimensionReport {
        kind: DimKind::Pd,
        value,
        betti: res.betti(),
        verified,
        notes: vec![],
    })
}

/// `pd(M)`; infinite values carry a periodicity certificate.
pub fn projective_dimension(m: &FgModule, cutoff: usize) -> Result<DimensionReport> {
    pd_report(m, cutoff, false)
}

/// `id(M) = pd(M^∨)` (artinian mode).
pub fn injective_dimension(m: &FgModule, cutoff: usize) -> Result<DimensionReport> {
    if !m.is_artin() {
        return Err(Error::WrongMode("injective dimension".into()));
    }
    Ok(pd_report(&m.matlis_dual()?, cutoff, true)?
        .relabel(DimKind::Id, "computed as the projective dimension of the Matlis dual"))
}

/// Any of the six dimensions.
pub fn dimension(m: &FgModule, kind: DimKind, cutoff: usize) -> Result<DimensionReport> {
    match kind {
        DimKind::Pd => projective_dimension(m, cutoff),
        DimKind::Fd => Ok(projective_dimension(m, cutoff)?
            .relabel(DimKind::Fd, "fd = pd for finitely generated modules")),
        DimKind::Id => injective_dimension(m, cutoff),
        DimKind::Gpd | DimKind::Gid | DimKind::Gfd => gorenstein_dimension(m, kind, cutoff),
    }
}

/// `Gpd`, `Gid` or `Gfd`.
pub fn gorenstein_dimension(m: &FgModule, kind: DimKind, cutoff: usize) -> Result<DimensionReport> {
    let ring = m.ring().clone();
    if !matches!(kind, DimKind::Gpd | DimKind::Gid | DimKind::Gfd) {
        return Err(Error::HypothesisNotMet(format!("{} is not a Gorenstein dimension", kind.name())));
    }
    if m.is_zero() {
        return Ok(DimensionReport::new(kind, DimValue::Vanishing));
    }
    if !ring.is_artin() {
        if kind == DimKind::Gid {
            return Err(Error::OutOfScope(
                "Gorenstein injective dimension over a polynomial ring".into(),
            ));
        }
        return Ok(projective_dimension(m, cutoff)?
            .relabel(kind, "the ring is regular, so the Gorenstein dimension equals pd"));
    }
    if ring.is_gorenstein() {
        let mut r = DimensionReport::new(kind, DimValue::Finite(0));
        r.notes
            .push("every finitely generated module over an artinian Gorenstein ring is totally reflexive".into());
        return Ok(r);
    }
    let (subject, note) = match kind {
        DimKind::Gid => (m.matlis_dual()?, "computed as Gpd of the Matlis dual"),
        DimKind::Gfd => (m.clone(), "Gfd = Gpd for finitely generated modules"),
        _ => (m.clone(), "finite Gpd over a depth-zero ring must be zero"),
    };
    let mut r = if subject.is_free() {
        DimensionReport::new(kind, DimValue::Finite(0))
    } else {
        match is_totally_reflexive(&subject, TOTAL_REFLEXIVITY_WINDOW)? {
            Reflexivity::Fails(reason) => DimensionReport::new(
                kind,
                DimValue::CertifiedInfinite(Certificate::NotTotallyReflexive { reason }),
            ),
            Reflexivity::HoldsInWindow => DimensionReport::new(
                kind,
                DimValue::Inconclusive {
                    window: TOTAL_REFLEXIVITY_WINDOW,
                },
            ),
        }
    };
    r.notes.push(note.to_string());
    Ok(r)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reflexivity {
    Fails(String),
    HoldsInWindow,
}

/// `dim_k Ext^i_R(M, N)` for `i = 0..=upto` (artinian mode).
pub fn ext_dims(m: &FgModule, n: &FgModule, upto: usize) -> Result<Vec<usize>> {
    let res = minimal_free_resolution(m, upto + 1)?;
    let c = &res.complex;
    let hom_dim = |i: i32| -> Result<usize> { Ok(hom::hom_space(&c.module(i), n)?.len()) };
    // rank of Hom(∂_{i+1}, N): Hom(P_i, N) → Hom(P_{i+1}, N)
    let rank = |i: i32| -> Result<usize> {
        if i < 0 {
            return Ok(0);
        }
        Ok(hom::precomposition_matrix(&c.diff(i + 1), n)?.rank())
    };
    (0..=upto as i32)
        .map(|i| Ok(hom_dim(i)? - rank(i)? - rank(i - 1)?))
        .collect()
}

/// Whether `Ext^i(M, N) = 0` for `1 ≤ i ≤ upto`.
pub fn ext_vanishes(m: &FgModule, n: &FgModule, upto: usize) -> Result<bool> {
    Ok(ext_dims(m, n, upto)?.iter().skip(1).all(|&d| d == 0))
}

/// The biduality map `M → M**` for `(-)* = Hom_R(-, R)`.
fn biduality(m: &FgModule) -> Result<Mat> {
    let ring = m.ring().clone();
    let r = FgModule::free(&ring, 1);
    let (dual, dual_basis) = hom::hom_module(m, &r)?;
    let (bidual, bidual_basis) = hom::hom_module(&dual, &r)?;
    let f = ring.field;
    let dr = r.dim().unwrap();
    let coords: Vec<Vec<Scalar>> = bidual_basis.iter().map(hom::hom_coords).collect();
    let len = coords.first().map_or(0, |c| c.len());
    let cmat = Mat::from_columns(f, len, &coords);
    let mut cols = Vec::new();
    for e in m.component_basis(0) {
        // the functional φ ↦ φ(e) on M*
        let vals: Vec<Vec<Scalar>> = dual_basis.iter().map(|phi| phi.apply(&e).vector().to_vec()).collect();
        let mat = Mat::from_columns(f, dr, &vals);
        let ev = ModuleMap::from_matrix(&dual, &r, mat)?;
        let c = hom::hom_coords(&ev);
        let x = if bidual_basis.is_empty() {
            vec![]
        } else {
            cmat.solve(&Mat::from_columns(f, len, &[c]))
                .ok_or_else(|| Error::Verification("evaluation map outside M**".into()))?
                .column(0)
        };
        cols.push(x);
    }
    Ok(Mat::from_columns(f, bidual.dim().unwrap(), &cols))
}

/// Total reflexivity checked within a window: `M ≅ M**` through the
/// biduality map and `Ext^i(M, R) = Ext^i(M*, R) = 0` for `1 ≤ i ≤ window`.
pub fn is_totally_reflexive(m: &FgModule, window: usize) -> Result<Reflexivity> {
    let ring = m.ring().clone();
    let r = FgModule::free(&ring, 1);
    let theta = biduality(m)?;
    if !theta.is_invertible() {
        return Ok(Reflexivity::Fails("the biduality map is not bijective".into()));
    }
    let e = ext_dims(m, &r, window)?;
    if let Some(i) = (1..e.len()).find(|&i| e[i] != 0) {
        return Ok(Reflexivity::Fails(format!("Ext^{i}(M, R) has dimension {}", e[i])));
    }
    let (dual, _) = hom::hom_module(m, &r)?;
    let e = ext_dims(&dual, &r, window)?;
    if let Some(i) = (1..e.len()).find(|&i| e[i] != 0) {
        return Ok(Reflexivity::Fails(format!("Ext^{i}(M*, R) has dimension {}", e[i])));
    }
    Ok(Reflexivity::HoldsInWindow)
}

/// `i`-th cokernel of a minimal injective resolution: the dual of the
/// `i`-th syzygy of the dual (artinian mode).
pub fn cosyzygy(m: &FgModule, i: usize) -> Result<FgModule> {
    if !m.is_artin() {
        return Err(Error::WrongMode("cosyzygy".into()));
    }
    let d = m.matlis_dual()?;
    let res = minimal_free_resolution(&d, i)?;
    match res.syzygy(i) {
        Some(s) => s.matlis_dual(),
        None => Ok(FgModule::zero(m.ring())),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Extended {
    NegInf,
    Fin(i64),
    Inf,
}

impl Extended {
    fn minus_one(self) -> Extended {
        match self {
            Extended::Fin(n) => Extended::Fin(n - 1),
            e => e,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CheckOutcome {
    Holds,
    Fails,
    /// An operand is only bounded below or inconclusive.
    Vacuous,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InequalityCheck {
    pub name: String,
    pub outcome: CheckOutcome,
}

/// Evaluates, for `0 → L → M → N → 0`, the two-out-of-three finiteness
/// rule and the inequality of the given kind on computed reports.
pub fn check_ses_dimension_calculus(
    ses: &Ses,
    kind: DimKind,
    cutoff: usize,
) -> Result<(Vec<InequalityCheck>, [DimensionReport; 3])> {
    if !ses.verify()? {
        return Err(Error::HypothesisNotMet("the sequence is not short exact".into()));
    }
    let [l, m, n] = ses.modules();
    let reports = [
        dimension(l, kind, cutoff)?,
        dimension(m, kind, cutoff)?,
        dimension(n, kind, cutoff)?,
    ];
    let vals: Vec<Option<Extended>> = reports.iter().map(|r| r.value.extended()).collect();
    let mut out = Vec::new();
    let name = kind.name();
    let ineq = if kind.is_injective_type() {
        let outcome = match (vals[0], vals[1], vals[2]) {
            (Some(a), Some(b), Some(c)) => holds(c <= a.minus_one().max(b)),
            _ => CheckOutcome::Vacuous,
        };
        InequalityCheck {
            name: format!("{name}(N) <= max({name}(L) - 1, {name}(M))"),
            outcome,
        }
    } else {
        let outcome = match (vals[0], vals[1], vals[2]) {
            (Some(a), Some(b), Some(c)) => holds(a <= b.max(c.minus_one())),
            _ => CheckOutcome::Vacuous,
        };
        InequalityCheck {
            name: format!("{name}(L) <= max({name}(M), {name}(N) - 1)"),
            outcome,
        }
    };
    out.push(ineq);
    let finite: Vec<Option<bool>> = vals.iter().map(|v| v.map(|e| e != Extended::Inf)).collect();
    for (k, label) in ["L", "M", "N"].iter().enumerate() {
        let others: Vec<usize> = (0..3).filter(|&j| j != k).collect();
        let premise = others.iter().all(|&j| finite[j] == Some(true));
        let outcome = match (premise, finite[k]) {
            (true, Some(f)) => holds(f),
            _ => CheckOutcome::Vacuous,
        };
        out.push(InequalityCheck {
            name: format!("two of three finite implies {name}({label}) finite"),
            outcome,
        });
    }
    Ok((out, reports))
}

fn holds(b: bool) -> CheckOutcome {
    if b {
        CheckOutcome::Holds
    } else {
        CheckOutcome::Fails
    }
}

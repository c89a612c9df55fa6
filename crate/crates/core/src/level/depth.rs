//! Depth through Koszul homology, and the level form of the Bass formula in
//! artinian mode.

use crate::complexes::Complex;
use crate::error::{Error, Result};
use crate::modules::{direct_sum, DirectSum, Elem, FgModule, ModuleMap};
use crate::resolutions::{dimension, DimKind, DimensionReport};

use super::{level_report, LevelCertificate, LevelClass, LevelOptions};

/// All `p`-element subsets of `0..n` in lexicographic order.
fn subsets(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, p, &mut Vec::new(), &mut out);
    out
}

/// Multiplication by `x_i` from `src` (a copy of `tgt` twisted by one in
/// graded mode) to `tgt`.
fn variable_map(src: &FgModule, tgt: &FgModule, i: usize) -> Result<ModuleMap> {
    if tgt.is_artin() {
        ModuleMap::from_matrix(src, tgt, tgt.actions()?[i].clone())
    } else {
        let imgs: Vec<Elem> = tgt
            .minimal_generators()
            .iter()
            .map(|g| tgt.act_var(i, &g.0))
            .collect();
        ModuleMap::from_generator_images(src, tgt, &imgs)
    }
}

/// `K(x_1, …, x_n) ⊗ M`, the total complex with `M_q` twisted by `p` in
/// the summand indexed by a `p`-subset of the variables.
pub fn koszul_complex(m: &Complex) -> Result<Complex> {
    let ring = m.ring().clone();
    let n = ring.nvars();
    let Some((lo, hi)) = m.window() else {
        return Ok(m.clone());
    };
    let twist = |q: i32, p: usize| m.module(q).twist(p as i32);
    // (p, subset, q) for total degree t
    let index = |t: i32| -> Vec<(usize, Vec<usize>, i32)> {
        let mut v = Vec::new();
        for p in 0..=n {
            let q = t - p as i32;
            if q < lo || q > hi {
                continue;
            }
            for s in subsets(n, p) {
                v.push((p, s, q));
            }
        }
        v
    };
    let sums: Vec<(Vec<(usize, Vec<usize>, i32)>, DirectSum)> = (lo..=hi + n as i32)
        .map(|t| {
            let idx = index(t);
            let parts: Vec<FgModule> = idx.iter().map(|(p, _, q)| twist(*q, *p)).collect();
            direct_sum(&ring, &parts).map(|d| (idx, d))
        })
        .collect::<Result<_>>()?;
    let mut diffs = Vec::new();
    for t in lo + 1..=hi + n as i32 {
        let (src_idx, src) = &sums[(t - lo) as usize];
        let (tgt_idx, tgt) = &sums[(t - 1 - lo) as usize];
        let mut blocks: Vec<Vec<Option<ModuleMap>>> = vec![vec![None; src_idx.len()]; tgt_idx.len()];
        for (c, (p, s, q)) in src_idx.iter().enumerate() {
            for (j, &v) in s.iter().enumerate() {
                let mut rest = s.clone();
                rest.remove(j);
                let r = tgt_idx
                    .iter()
                    .position(|x| x.0 == p - 1 && x.1 == rest && x.2 == *q)
                    .expect("face of a subset");
                let f = variable_map(src.proj[c].target(), tgt.proj[r].target(), v)?;
                blocks[r][c] = Some(if j % 2 == 0 { f } else { f.neg() });
            }
            if *q > lo {
                let r = tgt_idx
                    .iter()
                    .position(|x| x.0 == *p && x.1 == *s && x.2 == q - 1)
                    .expect("same subset one degree down");
                let d = m.diff(*q).twist(*p as i32);
                blocks[r][c] = Some(if p % 2 == 0 { d } else { d.neg() });
            }
        }
        diffs.push(DirectSum::block_map(src, tgt, |r, c| blocks[r][c].clone()));
    }
    let mods = sums.iter().map(|(_, d)| d.module.clone()).collect();
    Complex::new(&ring, lo, mods, diffs)
}

/// `depth M = n − sup H(K ⊗ M)`; `None` for an exact complex.
pub fn depth_complex(m: &Complex) -> Result<Option<i32>> {
    if m.is_exact()? {
        return Ok(None);
    }
    let k = koszul_complex(m)?;
    let sup = k
        .homology_window()?
        .map(|w| w.1)
        .ok_or_else(|| Error::Verification("Koszul complex of a nonzero complex is exact".into()))?;
    Ok(Some(m.ring().nvars() as i32 - sup))
}

/// Depth of a nonzero module; `None` for the zero module.
pub fn depth_module(m: &FgModule) -> Result<Option<usize>> {
    Ok(depth_complex(&Complex::stalk(m, 0))?.map(|d| d.max(0) as usize))
}

/// Upper and lower Gorenstein injective bounds checked separately, since
/// the positive-depth hypothesis cannot hold in artinian mode.
#[derive(Clone, Debug)]
pub struct GiCrossCheck {
    pub note: String,
    pub certificate: LevelCertificate,
    pub theorem_bound: Option<usize>,
    pub consistent: bool,
}

#[derive(Clone, Debug)]
pub struct BassReport {
    pub ring_depth: usize,
    pub injective_dimension: DimensionReport,
    /// Set when `id(H(M)^⊕)` is not certified finite.
    pub hypothesis_failure: Option<String>,
    pub predicted: usize,
    pub level: LevelCertificate,
    /// Whether the verdict equals `depth(R) + 1`, when the hypothesis holds.
    pub holds: Option<bool>,
    pub gi: GiCrossCheck,
}

impl BassReport {
    pub fn require(&self) -> Result<()> {
        match &self.hypothesis_failure {
            Some(why) => Err(Error::HypothesisNotMet(why.clone())),
            None => Ok(()),
        }
    }
}

/// Checks `level_Inj(M) = depth(R) + 1` when `id(H(M)^⊕)` is finite, and
/// records the computed level either way.
pub fn bass_check(m: &Complex, opts: &LevelOptions) -> Result<BassReport> {
    let ring = m.ring().clone();
    if !ring.is_artin() {
        return Err(Error::WrongMode("Bass formula check".into()));
    }
    let ring_depth = ring.depth();
    let report = dimension(&m.total_homology()?, DimKind::Id, opts.cutoff)?;
    let hypothesis_failure = (!report.value.is_finite())
        .then(|| format!("id of the total homology is not finite: {:?}", report.value));
    let level = level_report(m, LevelClass::Inj, opts)?;
    let predicted = ring_depth + 1;
    let holds = hypothesis_failure
        .is_none()
        .then(|| level.verdict == Some(predicted));
    let gi_cert = level_report(m, LevelClass::GI, opts)?;
    let theorem_bound = gi_cert.upper.as_ref().and_then(|u| u.theorem_bound);
    let consistent = gi_cert.upper_value().is_none_or(|u| {
        gi_cert.lower_value() <= u && theorem_bound.is_none_or(|b| u <= b)
    });
    Ok(BassReport {
        ring_depth,
        injective_dimension: report,
        hypothesis_failure,
        predicted,
        level,
        holds,
        gi: GiCrossCheck {
            note: "the Gorenstein injective form needs positive depth, which artinian rings lack; \
                   the upper and lower bounds are checked separately"
                .into(),
            certificate: gi_cert,
            theorem_bound,
            consistent,
        },
    })
}

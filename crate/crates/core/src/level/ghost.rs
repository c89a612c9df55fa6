//! Lower bounds on levels: ghost chains through projective Adams towers,
//! coghost chains through injective ones, and their transport across Matlis
//! duality.

use crate::adams::{adams_step_inj, adams_step_proj, TowerSide};
use crate::complexes::{ChainMap, Complex};
use crate::error::{Error, Result};

use super::derived::derived_hom;
use super::formality::{level_one_test, LevelOne, NotFormal};
use super::{LevelClass, LevelOptions};

/// Maps inducing zero on homology whose composite is nonzero in the
/// derived category.
#[derive(Clone, Debug)]
pub struct GhostChain {
    pub side: TowerSide,
    /// In order of composition: for ghosts the first map has source `M`,
    /// for coghosts the first map has target `M`.
    pub maps: Vec<ChainMap>,
    pub composite: ChainMap,
    /// Dimension of the homotopy class space the composite was tested in.
    pub class_space_dim: usize,
}

impl GhostChain {
    fn fold(&self) -> Option<ChainMap> {
        let mut it = self.maps.iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, f| match self.side {
            TowerSide::Projective => f.compose(&acc),
            TowerSide::Injective => acc.compose(f),
        }))
    }

    pub fn verify(&self) -> Result<bool> {
        for f in &self.maps {
            let lo_hi = [f.source().window(), f.target().window()]
                .into_iter()
                .flatten()
                .fold(None, |acc: Option<(i32, i32)>, w| {
                    Some(acc.map_or(w, |a| (a.0.min(w.0), a.1.max(w.1))))
                });
            if let Some((lo, hi)) = lo_hi {
                for i in lo..=hi {
                    if !f.homology_map(i)?.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
        let Some(c) = self.fold() else {
            return Ok(false);
        };
        let same = c.source() == self.composite.source()
            && c.target() == self.composite.target()
            && c.source().degrees().all(|i| c.comp(i) == self.composite.comp(i));
        Ok(same && !self.composite.is_zero())
    }
}

#[derive(Clone, Debug)]
pub enum LowerWitness {
    ZeroObject,
    Nonzero,
    NotFormal(NotFormal),
    Ghost(GhostChain),
    Coghost(GhostChain),
    /// A bound for the dual class computed on the Matlis dual.
    Transported { from: LevelClass, inner: Box<LowerCertificate> },
}

impl LowerWitness {
    pub fn name(&self) -> &'static str {
        match self {
            LowerWitness::ZeroObject => "zero object",
            LowerWitness::Nonzero => "nonzero",
            LowerWitness::NotFormal(_) => "not isomorphic to homology",
            LowerWitness::Ghost(_) => "ghost chain",
            LowerWitness::Coghost(_) => "coghost chain",
            LowerWitness::Transported { .. } => "duality transport",
        }
    }
}

#[derive(Clone, Debug)]
pub struct LowerCertificate {
    pub value: usize,
    pub witness: LowerWitness,
}

impl LowerCertificate {
    pub fn zero_object() -> LowerCertificate {
        LowerCertificate {
            value: 0,
            witness: LowerWitness::ZeroObject,
        }
    }

    pub fn nonzero() -> LowerCertificate {
        LowerCertificate {
            value: 1,
            witness: LowerWitness::Nonzero,
        }
    }

    pub fn not_formal(proof: NotFormal) -> LowerCertificate {
        LowerCertificate {
            value: 2,
            witness: LowerWitness::NotFormal(proof),
        }
    }

    pub fn verify(&self) -> Result<bool> {
        match &self.witness {
            LowerWitness::Ghost(g) | LowerWitness::Coghost(g) => {
                Ok(g.maps.len() + 1 == self.value && g.verify()?)
            }
            LowerWitness::Transported { inner, .. } => Ok(inner.value == self.value && inner.verify()?),
            _ => Ok(true),
        }
    }

    /// Number of ghost or coghost maps in the witness.
    pub fn chain_len(&self) -> usize {
        match &self.witness {
            LowerWitness::Ghost(g) | LowerWitness::Coghost(g) => g.maps.len(),
            LowerWitness::Transported { inner, .. } => inner.chain_len(),
            _ => 0,
        }
    }

    pub fn chain_labels(&self) -> Vec<String> {
        match &self.witness {
            LowerWitness::Ghost(g) => (0..g.maps.len())
                .map(|k| format!("Sigma^{k} Omega^{k} -> Sigma^{} Omega^{}", k + 1, k + 1))
                .collect(),
            LowerWitness::Coghost(g) => (0..g.maps.len())
                .map(|k| format!("Sigma^-{} Theta^{} -> Sigma^-{k} Theta^{k}", k + 1, k + 1))
                .collect(),
            LowerWitness::Transported { from, inner } => {
                let mut v = vec![format!("dual, {}", from.name())];
                v.extend(inner.chain_labels());
                v
            }
            LowerWitness::NotFormal(p) => vec![serde_json::to_string(p).unwrap_or_default()],
            _ => vec![],
        }
    }
}

/// The longest ghost (Proj) or coghost (Inj) chain of length `≤ n_max`
/// along the Adams tower whose composite is nonzero; `lower = length + 1`.
pub fn ghost_lower_bound(
    m: &Complex,
    class: LevelClass,
    n_max: usize,
    _opts: &LevelOptions,
) -> Result<LowerCertificate> {
    let side = match class {
        LevelClass::Proj => TowerSide::Projective,
        LevelClass::Inj if m.ring().is_artin() => TowerSide::Injective,
        LevelClass::Inj => return Err(Error::WrongMode("coghost chains".into())),
        c => {
            return Err(Error::HypothesisNotMet(format!(
                "ghost chains are built for Proj and Inj, not {}",
                c.name()
            )))
        }
    };
    if m.is_exact()? {
        return Ok(LowerCertificate::zero_object());
    }
    let mut best = LowerCertificate::nonzero();
    let mut cur = m.clone();
    let mut maps: Vec<ChainMap> = Vec::new();
    let mut composite: Option<ChainMap> = None;
    for k in 0..n_max {
        if cur.is_exact()? {
            break;
        }
        let (map, next) = match side {
            TowerSide::Projective => {
                let s = adams_step_proj(&cur)?;
                (s.triangle.g.shift(k as i32), s.next)
            }
            TowerSide::Injective => {
                let s = adams_step_inj(&cur)?;
                (s.triangle.h.shift(-(k as i32) - 1), s.next)
            }
        };
        let c = match (&composite, side) {
            (None, _) => map.clone(),
            (Some(c), TowerSide::Projective) => map.compose(c),
            (Some(c), TowerSide::Injective) => c.compose(&map),
        };
        let space = match side {
            TowerSide::Projective => derived_hom(m, c.target())?,
            TowerSide::Injective => derived_hom(c.source(), m)?,
        };
        if space.is_zero_morphism(&c)? {
            break;
        }
        maps.push(map);
        let chain = GhostChain {
            side,
            maps: maps.clone(),
            composite: c.clone(),
            class_space_dim: space.dim(),
        };
        best = LowerCertificate {
            value: k + 2,
            witness: match side {
                TowerSide::Projective => LowerWitness::Ghost(chain),
                TowerSide::Injective => LowerWitness::Coghost(chain),
            },
        };
        composite = Some(c);
        cur = next;
    }
    Ok(best)
}

/// The best lower bound available for the class beyond formality, or
/// `None` when no further method applies.
pub(super) fn lower_for_class(
    m: &Complex,
    class: LevelClass,
    n_max: usize,
    opts: &LevelOptions,
) -> Result<Option<LowerCertificate>> {
    let artin = m.ring().is_artin();
    match class {
        LevelClass::Proj => ghost_lower_bound(m, class, n_max, opts).map(Some),
        LevelClass::Inj if artin => ghost_lower_bound(m, class, n_max, opts).map(Some),
        LevelClass::Flat if artin => {
            let inner = ghost_lower_bound(&m.matlis_dual()?, LevelClass::Inj, n_max, opts)?;
            Ok(Some(transported(LevelClass::Inj, inner)))
        }
        LevelClass::GP | LevelClass::GF if artin => match level_one_test(&m.matlis_dual()?, opts)? {
            LevelOne::No(p) => Ok(Some(transported(LevelClass::GI, LowerCertificate::not_formal(p)))),
            _ => Ok(None),
        },
        _ => Ok(None),
    }
}

fn transported(from: LevelClass, inner: LowerCertificate) -> LowerCertificate {
    LowerCertificate {
        value: inner.value,
        witness: LowerWitness::Transported {
            from,
            inner: Box::new(inner),
        },
    }
}

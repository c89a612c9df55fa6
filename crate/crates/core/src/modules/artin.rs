//! Modules over an artinian algebra, stored as vector spaces with one action
//! matrix per ring variable.

use std::sync::OnceLock;

use crate::algebra::RingDesc;
use crate::error::{Error, Result};
use crate::linalg::Mat;

pub(crate) struct ArtinModule {
    pub dim: usize,
    pub actions: Vec<Mat>,
    monos: OnceLock<Vec<Mat>>,
    gens: OnceLock<Generators>,
}

/// Minimal generators chosen among the standard basis vectors, together with
/// the free cover they define.
pub(crate) struct Generators {
    /// Basis positions of the generators.
    pub idx: Vec<usize>,
    /// Columns span the relations among the generators: the kernel of the
    /// `dim × (s·dim R)` cover whose column `j·dim R + b` is `basis_b · g_j`.
    pub relations: Mat,
    /// Right inverse of the cover.
    pub section: Mat,
}

impl ArtinModule {
    pub fn new(dim: usize, actions: Vec<Mat>) -> ArtinModule {
        ArtinModule {
            dim,
            actions,
            monos: OnceLock::new(),
            gens: OnceLock::new(),
        }
    }

    pub fn check(&self, ring: &RingDesc) -> Result<()> {
        let a = ring.artin_data()?;
        if self.actions.len() != ring.nvars() {
            return Err(Error::Shape(format!(
                "expected {} action matrices, got {}",
                ring.nvars(),
                self.actions.len()
            )));
        }
        for (i, x) in self.actions.iter().enumerate() {
            if x.rows() != self.dim || x.cols() != self.dim {
                return Err(Error::Shape(format!(
                    "action of {} is {}×{}, module has dimension {}",
                    ring.vars[i],
                    x.rows(),
                    x.cols(),
                    self.dim
                )));
            }
        }
        for i in 0..self.actions.len() {
            for j in 0..i {
                let l = self.actions[i].mul(&self.actions[j]);
                let r = self.actions[j].mul(&self.actions[i]);
                if l != r {
                    return Err(Error::Verification(format!(
                        "actions of {} and {} do not commute",
                        ring.vars[i], ring.vars[j]
                    )));
                }
            }
        }
        for g in &a.ideal {
            if !ring.poly_action(&self.actions, g, self.dim).is_zero() {
                return Err(Error::Verification(format!(
                    "relation {} does not act as zero",
                    g.fmt_with(&ring.vars)
                )));
            }
        }
        Ok(())
    }

    /// Action of every ring basis monomial, in ring basis order.
    pub fn monomial_actions(&self, ring: &RingDesc) -> &[Mat] {
        self.monos.get_or_init(|| {
            let a = ring.artin_data().expect("artinian ring");
            a.basis
                .iter()
                .map(|b| RingDesc::monomial_action(&self.actions, b, self.dim, ring.field))
                .collect()
        })
    }

    pub fn generators(&self, ring: &RingDesc) -> &Generators {
        self.gens.get_or_init(|| {
            let f = ring.field;
            let d = self.dim;
            let mut w = Mat::zeros(f, d, 0);
            for x in &self.actions {
                w = w.hstack(x);
            }
            let shift = w.cols();
            w = w.hstack(&Mat::identity(f, d));
            let idx: Vec<usize> = w
                .echelon()
                .pivots
                .into_iter()
                .filter(|&p| p >= shift)
                .map(|p| p - shift)
                .collect();
            let monos = self.monomial_actions(ring);
            let da = monos.len();
            let mut cover = Mat::zeros(f, d, idx.len() * da);
            for (j, &g) in idx.iter().enumerate() {
                for (b, m) in monos.iter().enumerate() {
                    for r in 0..d {
                        cover.set(r, j * da + b, m.get(r, g).clone());
                    }
                }
            }
            let relations = cover.kernel_basis();
            let section = cover
                .solve(&Mat::identity(f, d))
                .expect("generators span the module");
            Generators {
                idx,
                relations,
                section,
            }
        })
    }

    /// Matrix with generator images `imgs` (columns) extended R-linearly,
    /// via the section of the source's free cover. The caller verifies.
    pub fn extend_generator_images(
        &self,
        ring: &RingDesc,
        target: &ArtinModule,
        imgs: &Mat,
    ) -> Mat {
        let g = self.generators(ring);
        let tm = target.monomial_actions(ring);
        let da = tm.len();
        let f = ring.field;
        let mut cols = Mat::zeros(f, target.dim, g.idx.len() * da);
        for j in 0..g.idx.len() {
            let n = imgs.column(j);
            for (b, m) in tm.iter().enumerate() {
                let v = m.mul_vec(&n);
                for (r, x) in v.into_iter().enumerate() {
                    cols.set(r, j * da + b, x);
                }
            }
        }
        cols.mul(&g.section)
    }
}

/// `true` when `h` intertwines the actions.
pub(crate) fn intertwines(source: &ArtinModule, target: &ArtinModule, h: &Mat) -> bool {
    source
        .actions
        .iter()
        .zip(&target.actions)
        .all(|(a, b)| b.mul(h) == h.mul(a))
}

/// Restricts actions to an invariant subspace spanned by the columns of `basis`.
pub(crate) fn restrict_actions(actions: &[Mat], basis: &Mat) -> Result<Vec<Mat>> {
    actions
        .iter()
        .map(|a| {
            basis
                .solve(&a.mul(basis))
                .ok_or_else(|| Error::Verification("subspace is not a submodule".into()))
        })
        .collect()
}

/// Actions on a quotient, given a surjection `proj` and a right inverse.
pub(crate) fn quotient_actions(actions: &[Mat], proj: &Mat, right_inv: &Mat) -> Vec<Mat> {
    actions.iter().map(|a| proj.mul(a).mul(right_inv)).collect()
}

/// Regular representation `R^rank`, generators first in each block.
pub(crate) fn free_actions(ring: &RingDesc, rank: usize) -> Vec<Mat> {
    let a = ring.artin_data().expect("artinian ring");
    let da = a.basis.len();
    a.actions
        .iter()
        .map(|x| {
            let mut m = Mat::zeros(ring.field, da * rank, da * rank);
            for j in 0..rank {
                m.paste(j * da, j * da, x);
            }
            m
        })
        .collect()
}

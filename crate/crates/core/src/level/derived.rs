//! Morphisms in the derived category as homotopy classes of chain maps out
//! of a semi-free replacement.

use crate::complexes::{ChainMap, Complex};
use crate::error::{Error, Result};
use crate::linalg::{Mat, Scalar};
use crate::modules::{hom, ModuleMap};
use crate::resolutions::{semi_free_resolution, SemiFree};

/// `Hom_{D(R)}(M, N)` computed as chain maps `P → N` modulo null-homotopic
/// ones, where `P → M` is a semi-free replacement truncated above
/// `sup(N) + 1`.
#[derive(Clone, Debug)]
pub struct HomotopyClassSpace {
    pub source: Complex,
    pub target: Complex,
    pub resolution: SemiFree,
    degrees: Vec<i32>,
    /// `hom_space(P_i, N_i)` for each degree in `degrees`.
    bases: Vec<Vec<ModuleMap>>,
    /// Coordinates of every chain map, as columns.
    cycles: Mat,
    /// Coordinates of the null-homotopic maps spanned by the homotopy
    /// basis, as columns.
    nulls: Mat,
    null_rank: usize,
}

fn coordinate_matrix(field: crate::linalg::Field, basis: &[ModuleMap]) -> Option<Mat> {
    let cols: Vec<Vec<Scalar>> = basis.iter().map(hom::hom_coords).collect();
    let len = cols.first()?.len();
    Some(Mat::from_columns(field, len, &cols))
}

impl HomotopyClassSpace {
    /// Dimension of the space of chain maps `P → N`.
    pub fn chain_map_dim(&self) -> usize {
        self.cycles.cols()
    }

    pub fn null_dim(&self) -> usize {
        self.null_rank
    }

    /// `dim_k Hom_{D(R)}(M, N)` (degree-0 maps in graded mode).
    pub fn dim(&self) -> usize {
        self.chain_map_dim() - self.null_rank
    }

    fn total_len(&self) -> usize {
        self.bases.iter().map(|b| b.len()).sum()
    }

    fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.bases
            .iter()
            .map(|b| {
                let o = acc;
                acc += b.len();
                o
            })
            .collect()
    }

    fn chain_map_from(&self, coords: &[Scalar]) -> Result<ChainMap> {
        let p = &self.resolution.complex;
        let offs = self.offsets();
        let comps = self
            .degrees
            .iter()
            .enumerate()
            .map(|(k, &i)| {
                let b = &self.bases[k];
                let c = &coords[offs[k]..offs[k] + b.len()];
                (i, hom::combine(&p.module(i), &self.target.module(i), b, c))
            })
            .collect();
        ChainMap::new(p, &self.target, comps)
    }

    /// Coordinates of a chain map `P → N` in the concatenated hom bases.
    pub fn coordinates(&self, f: &ChainMap) -> Result<Vec<Scalar>> {
        let field = self.target.ring().field;
        let mut out = Vec::with_capacity(self.total_len());
        for (k, &i) in self.degrees.iter().enumerate() {
            let b = &self.bases[k];
            let Some(cm) = coordinate_matrix(field, b) else {
                continue;
            };
            let goal = hom::hom_coords(&f.comp(i));
            let x = cm
                .solve(&Mat::from_columns(field, goal.len(), &[goal]))
                .ok_or_else(|| Error::Verification(format!("component {i} is not a module map")))?;
            out.extend(x.column(0));
        }
        Ok(out)
    }

    /// Whether a chain map `P → N` is null-homotopic.
    pub fn is_null_homotopic(&self, f: &ChainMap) -> Result<bool> {
        let field = self.target.ring().field;
        let c = self.coordinates(f)?;
        if c.iter().all(|x| x.is_zero()) {
            return Ok(true);
        }
        if self.null_rank == 0 {
            return Ok(false);
        }
        let goal = Mat::from_columns(field, c.len(), &[c]);
        Ok(self.nulls.solve(&goal).is_some())
    }

    /// Whether the morphism `M → N` represented by a chain map is zero in
    /// the derived category.
    pub fn is_zero_morphism(&self, f: &ChainMap) -> Result<bool> {
        self.is_null_homotopic(&f.compose(&self.resolution.map))
    }

    /// Chain maps `P → N` whose classes form a basis of the quotient.
    pub fn class_basis(&self) -> Result<Vec<ChainMap>> {
        let field = self.target.ring().field;
        let len = self.total_len();
        let mut span = if self.null_rank == 0 {
            Mat::zeros(field, len, 0)
        } else {
            self.nulls.clone()
        };
        let mut rank = span.rank();
        let mut out = Vec::new();
        for col in self.cycles.columns() {
            let next = span.hstack(&Mat::from_columns(field, len, std::slice::from_ref(&col)));
            let r = next.rank();
            if r > rank {
                rank = r;
                span = next;
                out.push(self.chain_map_from(&col)?);
            }
        }
        Ok(out)
    }
}

/// Largest number of unknowns in the chain map system.
pub const DERIVED_HOM_BUDGET: usize = 2500;

/// `Hom_{D(R)}(M, N)` for bounded complexes.
pub fn derived_hom(m: &Complex, n: &Complex) -> Result<HomotopyClassSpace> {
    let ring = m.ring().clone();
    let field = ring.field;
    let top = n.window().map_or(i32::MIN / 2, |w| w.1 + 1);
    let resolution = match (m.window(), n.window()) {
        (Some(_), Some(_)) => semi_free_resolution(m, top)?,
        _ => semi_free_resolution(&Complex::zero(&ring), 0)?,
    };
    let p = resolution.complex.clone();
    let degrees: Vec<i32> = match (p.window(), n.window()) {
        (Some((a, b)), Some((c, d))) if a.max(c) <= b.min(d) => (a.max(c)..=b.min(d)).collect(),
        _ => vec![],
    };
    let bases: Vec<Vec<ModuleMap>> = degrees
        .iter()
        .map(|&i| hom::hom_space(&p.module(i), &n.module(i)))
        .collect::<Result<_>>()?;
    let offs: Vec<usize> = bases
        .iter()
        .scan(0, |acc, b| {
            let o = *acc;
            *acc += b.len();
            Some(o)
        })
        .collect();
    let unknowns: usize = bases.iter().map(|b| b.len()).sum();
    if unknowns > DERIVED_HOM_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "{unknowns} unknowns in the chain map system"
        )));
    }
    let index = |i: i32| degrees.iter().position(|&d| d == i);

    // chain condition ∂^N_i f_i = f_{i-1} ∂^P_i for every degree i
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    if let Some((&first, &last)) = degrees.first().zip(degrees.last()) {
        for i in first..=last + 1 {
            let mut block: Vec<Vec<Scalar>> = Vec::new();
            let mut put = |col: usize, v: Vec<Scalar>, sign: bool| {
                if block.is_empty() {
                    block = vec![vec![field.zero(); unknowns]; v.len()];
                }
                for (r, x) in v.into_iter().enumerate() {
                    block[r][col] = if sign { x } else { -x };
                }
            };
            if let Some(k) = index(i) {
                for (j, b) in bases[k].iter().enumerate() {
                    put(offs[k] + j, hom::hom_coords(&n.diff(i).compose(b)), true);
                }
            }
            if let Some(k) = index(i - 1) {
                for (j, b) in bases[k].iter().enumerate() {
                    put(offs[k] + j, hom::hom_coords(&b.compose(&p.diff(i))), false);
                }
            }
            rows.extend(block);
        }
    }
    let system = if rows.is_empty() {
        Mat::zeros(field, 0, unknowns)
    } else {
        Mat::from_rows(field, rows)
    };
    let cycles = system.kernel_basis();

    // f_i = ∂^N_{i+1} h_i + h_{i-1} ∂^P_i
    let coord_mats: Vec<Option<Mat>> = bases.iter().map(|b| coordinate_matrix(field, b)).collect();
    let express = |k: usize, g: &ModuleMap| -> Result<Vec<Scalar>> {
        let cm = coord_mats[k].as_ref().expect("nonzero map into an empty hom space");
        let goal = hom::hom_coords(g);
        Ok(cm
            .solve(&Mat::from_columns(field, goal.len(), &[goal]))
            .ok_or_else(|| Error::Verification("homotopy outside the hom space".into()))?
            .column(0))
    };
    let mut null_cols: Vec<Vec<Scalar>> = Vec::new();
    if let Some((&first, &last)) = degrees.first().zip(degrees.last()) {
        for i in first - 1..=last {
            let hs = hom::hom_space(&p.module(i), &n.module(i + 1))?;
            for h in hs {
                let mut col = vec![field.zero(); unknowns];
                if let Some(k) = index(i) {
                    let g = n.diff(i + 1).compose(&h);
                    if !g.is_zero() {
                        for (j, x) in express(k, &g)?.into_iter().enumerate() {
                            col[offs[k] + j] = x;
                        }
                    }
                }
                if let Some(k) = index(i + 1) {
                    let g = h.compose(&p.diff(i + 1));
                    if !g.is_zero() {
                        for (j, x) in express(k, &g)?.into_iter().enumerate() {
                            col[offs[k] + j] += &x;
                        }
                    }
                }
                if col.iter().any(|x| !x.is_zero()) {
                    null_cols.push(col);
                }
            }
        }
    }
    let nulls = if null_cols.is_empty() {
        Mat::zeros(field, unknowns, 0)
    } else {
        Mat::from_columns(field, unknowns, &null_cols)
    };
    let null_rank = nulls.rank();
    Ok(HomotopyClassSpace {
        source: m.clone(),
        target: n.clone(),
        resolution,
        degrees,
        bases,
        cycles,
        nulls,
        null_rank,
    })
}

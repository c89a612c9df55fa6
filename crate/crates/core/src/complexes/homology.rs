//! Cycles, boundaries, cokernels of the differential and homology, with the
//! four short exact sequences relating them.

use std::sync::Arc;

use super::Complex;
use crate::error::{Error, Result};
use crate::modules::{self, FgModule, ModuleMap};

/// `B_i = im ∂_{i+1}`.
#[derive(Debug)]
pub struct Boundary {
    /// `M_{i+1} → B_i`.
    pub surj: ModuleMap,
    /// `B_i → M_i`.
    pub incl: ModuleMap,
}

/// Everything attached to degree `i`.
#[derive(Debug)]
pub struct Homology {
    pub degree: i32,
    /// `Z_i → M_i`.
    pub z: ModuleMap,
    pub boundary: Arc<Boundary>,
    /// `B_{i-1}`, the image of `∂_i`.
    pub prev_boundary: Arc<Boundary>,
    /// `B_i → Z_i`.
    pub b_to_z: ModuleMap,
    /// `Z_i → H_i`.
    pub h_proj: ModuleMap,
    /// `M_i → C_i = M_i / B_i`.
    pub c_proj: ModuleMap,
    /// `H_i → C_i`.
    pub h_to_c: ModuleMap,
    /// `C_i → B_{i-1}`.
    pub c_to_b: ModuleMap,
}

impl Homology {
    pub fn module(&self) -> &FgModule {
        self.h_proj.target()
    }

    pub fn cycles(&self) -> &FgModule {
        self.z.source()
    }

    pub fn boundaries(&self) -> &FgModule {
        self.boundary.incl.source()
    }

    pub fn cokernel(&self) -> &FgModule {
        self.c_proj.target()
    }
}

/// `0 → A --first--> B --second--> C → 0`.
#[derive(Clone, Debug)]
pub struct Ses {
    pub first: ModuleMap,
    pub second: ModuleMap,
}

impl Ses {
    pub fn verify(&self) -> Result<bool> {
        Ok(self.first.is_injective()?
            && self.second.is_surjective()?
            && modules::is_exact_at(&self.first, &self.second)?)
    }

    pub fn modules(&self) -> [&FgModule; 3] {
        [self.first.source(), self.first.target(), self.second.target()]
    }
}

impl Complex {
    pub fn boundary(&self, i: i32) -> Result<Arc<Boundary>> {
        if let Some(b) = self.cache.lock().unwrap().boundaries.get(&i) {
            return Ok(b.clone());
        }
        let (surj, incl) = self.diff(i + 1).image()?;
        let b = Arc::new(Boundary { surj, incl });
        self.cache.lock().unwrap().boundaries.insert(i, b.clone());
        Ok(b)
    }

    /// `H_i` together with `Z_i`, `B_i`, `C_i` and the maps among them.
    pub fn homology(&self, i: i32) -> Result<Arc<Homology>> {
        if let Some(h) = self.cache.lock().unwrap().homology.get(&i) {
            return Ok(h.clone());
        }
        let boundary = self.boundary(i)?;
        let prev_boundary = self.boundary(i - 1)?;
        let z = self.diff(i).kernel()?;
        let b_to_z = z
            .lift_map(&boundary.incl)?
            .ok_or_else(|| Error::Verification(format!("boundaries are not cycles in degree {i}")))?;
        let h_proj = b_to_z.cokernel()?;
        let c_proj = self.diff(i + 1).cokernel()?;
        let h_to_c = modules::hom::solve_pre(&h_proj, &c_proj.compose(&z))?
            .ok_or_else(|| Error::Verification("H → C is not induced".into()))?;
        let c_to_b = modules::hom::solve_pre(&c_proj, &prev_boundary.surj)?
            .ok_or_else(|| Error::Verification("C → B is not induced".into()))?;
        let h = Arc::new(Homology {
            degree: i,
            z,
            boundary,
            prev_boundary,
            b_to_z,
            h_proj,
            c_proj,
            h_to_c,
            c_to_b,
        });
        if self.window().is_none_or(|(a, b)| i < a || i > b) {
            assert!(h.module().is_zero(), "homology outside the support");
        }
        self.cache.lock().unwrap().homology.insert(i, h.clone());
        Ok(h)
    }

    /// The four sequences
    /// `0→H_i→C_i→B_{i-1}→0`, `0→B_i→Z_i→H_i→0`, `0→B_i→M_i→C_i→0`,
    /// `0→Z_i→M_i→B_{i-1}→0`.
    pub fn acc_sequences(&self, i: i32) -> Result<[Ses; 4]> {
        let h = self.homology(i)?;
        Ok([
            Ses {
                first: h.h_to_c.clone(),
                second: h.c_to_b.clone(),
            },
            Ses {
                first: h.b_to_z.clone(),
                second: h.h_proj.clone(),
            },
            Ses {
                first: h.boundary.incl.clone(),
                second: h.c_proj.clone(),
            },
            Ses {
                first: h.z.clone(),
                second: h.prev_boundary.surj.clone(),
            },
        ])
    }
}

//! Graded modules over `k[x_1..x_n]` presented as `F / K` with `F` a twisted
//! free module. Presentations are kept minimal: no relation has a unit entry
//! and the relations form a minimal generating set of `K`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::grobner::{buchberger, minimal_subset, GroebnerBasis, Monomial, PolyVec, Term, TrackedBasis};
use crate::linalg::{Field, Scalar};

pub(crate) struct GradedModule {
    pub twists: Vec<i32>,
    pub relations: Vec<PolyVec>,
    pub gb: GroebnerBasis,
    comps: Mutex<HashMap<i32, Arc<Component>>>,
}

/// `k`-basis of one graded component: standard monomial vectors.
pub(crate) struct Component {
    pub basis: Vec<(usize, Monomial)>,
    pub index: HashMap<(usize, Monomial), usize>,
}

impl GradedModule {
    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn nf(&self, v: &PolyVec) -> PolyVec {
        if self.relations.is_empty() {
            v.clone()
        } else {
            self.gb.normal_form(v)
        }
    }

    pub fn component(&self, nvars: usize, d: i32) -> Arc<Component> {
        let mut cache = self.comps.lock().expect("component cache");
        if let Some(c) = cache.get(&d) {
            return c.clone();
        }
        let mut basis = Vec::new();
        for (i, &t) in self.twists.iter().enumerate() {
            if d < t {
                continue;
            }
            let mut monos = Monomial::of_degree(nvars, d - t);
            monos.sort_by(|a, b| b.cmp_grevlex(a));
            for m in monos {
                if !self.gb.is_leading_multiple(i, &m) {
                    basis.push((i, m));
                }
            }
        }
        let index = basis
            .iter()
            .enumerate()
            .map(|(k, b)| (b.clone(), k))
            .collect();
        let c = Arc::new(Component { basis, index });
        cache.insert(d, c.clone());
        c
    }

    /// Coordinates of the class of a homogeneous `v` of degree `d`.
    pub fn coords(&self, field: Field, nvars: usize, v: &PolyVec, d: i32) -> Vec<Scalar> {
        let c = self.component(nvars, d);
        let mut out = vec![field.zero(); c.basis.len()];
        for t in self.nf(v).terms() {
            let k = c.index[&(t.comp, t.mono.clone())];
            out[k] = t.coef.clone();
        }
        out
    }

    pub fn from_coords(&self, field: Field, nvars: usize, d: i32, coords: &[Scalar]) -> PolyVec {
        let c = self.component(nvars, d);
        let terms = c
            .basis
            .iter()
            .zip(coords)
            .filter(|(_, x)| !x.is_zero())
            .map(|((comp, mono), x)| Term {
                comp: *comp,
                mono: mono.clone(),
                coef: x.clone(),
            })
            .collect();
        PolyVec::from_terms(field, nvars, terms)
    }

    pub fn relation_degrees(&self) -> Vec<i32> {
        self.relations
            .iter()
            .map(|r| r.degree(&self.twists).expect("homogeneous relation"))
            .collect()
    }

    /// A module whose presentation is already minimal.
    pub fn from_parts(
        field: Field,
        nvars: usize,
        twists: Vec<i32>,
        relations: Vec<PolyVec>,
    ) -> Result<GradedModule> {
        let gb = buchberger(field, nvars, &twists, &relations)?;
        Ok(GradedModule {
            twists,
            relations,
            gb,
            comps: Mutex::new(HashMap::new()),
        })
    }

    pub fn with_twist(&self, shift: i32) -> GradedModule {
        let twists: Vec<i32> = self.twists.iter().map(|t| t + shift).collect();
        let mut gb = self.gb.clone();
        gb.twists = twists.clone();
        GradedModule {
            twists,
            relations: self.relations.clone(),
            gb,
            comps: Mutex::new(HashMap::new()),
        }
    }
}

/// A freshly built module with the comparison maps to the presentation it
/// was built from.
pub(crate) struct Built {
    pub module: GradedModule,
    /// Image of each original generator, as a vector in the new free module.
    pub to_new: Vec<PolyVec>,
    /// Image of each new generator, as a vector in the original free module.
    pub from_new: Vec<PolyVec>,
}

/// Builds `R^twists / <relations>`, removing generators that are units
/// multiples of others and redundant relations.
pub(crate) fn build(
    field: Field,
    nvars: usize,
    twists: Vec<i32>,
    relations: Vec<PolyVec>,
) -> Result<Built> {
    let r = twists.len();
    for v in &relations {
        if !v.is_homogeneous(&twists) {
            return Err(Error::Verification(format!(
                "relation {v:?} is not homogeneous for twists {twists:?}"
            )));
        }
        if v.max_comp().is_some_and(|c| c >= r) {
            return Err(Error::Shape("relation outside the free module".into()));
        }
    }
    let mut rels: Vec<PolyVec> = relations.into_iter().filter(|v| !v.is_zero()).collect();
    let mut img: Vec<PolyVec> = (0..r).map(|i| PolyVec::unit(field, nvars, i)).collect();
    let mut alive = vec![true; r];
    loop {
        let hit = rels.iter().enumerate().find_map(|(ri, v)| {
            v.terms()
                .iter()
                .find(|t| t.mono.is_one())
                .map(|t| (ri, t.comp, t.coef.clone()))
        });
        let Some((ri, c, a)) = hit else { break };
        let rho = rels.swap_remove(ri).scale(&a.inv().expect("nonzero"));
        let eliminate = |v: &PolyVec| -> PolyVec {
            let vc = v.component(c);
            if vc.is_zero() {
                v.clone()
            } else {
                v.sub(&rho.mul_poly(&vc))
            }
        };
        rels = rels.iter().map(eliminate).filter(|v| !v.is_zero()).collect();
        img = img.iter().map(eliminate).collect();
        alive[c] = false;
    }
    let mut renumber = Vec::with_capacity(r);
    let mut new_twists = Vec::new();
    let mut from_new = Vec::new();
    for i in 0..r {
        if alive[i] {
            renumber.push(PolyVec::unit(field, nvars, new_twists.len()));
            new_twists.push(twists[i]);
            from_new.push(PolyVec::unit(field, nvars, i));
        } else {
            renumber.push(PolyVec::zero(field, nvars));
        }
    }
    let rels: Vec<PolyVec> = rels.iter().map(|v| v.substitute(&renumber)).collect();
    let to_new: Vec<PolyVec> = img.iter().map(|v| v.substitute(&renumber)).collect();
    let keep = minimal_subset(field, nvars, &new_twists, &rels)?;
    let rels: Vec<PolyVec> = keep.into_iter().map(|k| rels[k].clone()).collect();
    let gb = buchberger(field, nvars, &new_twists, &rels)?;
    let module = GradedModule {
        twists: new_twists,
        relations: rels,
        gb,
        comps: Mutex::new(HashMap::new()),
    };
    let to_new = to_new.iter().map(|v| module.nf(v)).collect();
    Ok(Built {
        module,
        to_new,
        from_new,
    })
}

fn tracked(
    field: Field,
    nvars: usize,
    images: &[PolyVec],
    image_degrees: &[i32],
    target: &GradedModule,
) -> Result<TrackedBasis> {
    let mut gens = images.to_vec();
    gens.extend(target.relations.iter().cloned());
    let mut degs = image_degrees.to_vec();
    degs.extend(target.relation_degrees());
    TrackedBasis::new(field, nvars, &target.twists, &gens, &degs)
}

/// Generators of `{v ∈ F_X : Σ v_j u_j ∈ K_N}` where `u_j` are the images of
/// the source generators.
pub(crate) fn preimage_generators(
    field: Field,
    nvars: usize,
    source_twists: &[i32],
    images: &[PolyVec],
    target: &GradedModule,
) -> Result<Vec<PolyVec>> {
    let m = images.len();
    let tb = tracked(field, nvars, images, source_twists, target)?;
    Ok(tb
        .syzygies()
        .into_iter()
        .map(|s| s.restrict(0, m))
        .filter(|v| !v.is_zero())
        .collect())
}

/// For each `y`, some `x ∈ F_X` with `Σ x_j u_j ≡ y` modulo `K_N`.
pub(crate) fn lift(
    field: Field,
    nvars: usize,
    source_twists: &[i32],
    images: &[PolyVec],
    target: &GradedModule,
    ys: &[PolyVec],
) -> Result<Vec<Option<PolyVec>>> {
    let m = images.len();
    let tb = tracked(field, nvars, images, source_twists, target)?;
    Ok(ys
        .iter()
        .map(|y| tb.lift(y).map(|c| c.restrict(0, m)))
        .collect())
}

/// The submodule of `ambient` generated by homogeneous `elems` (vectors in
/// the ambient free module). Returns the new module and, for each of its
/// generators, its image in the ambient free module.
pub(crate) fn subquotient(
    field: Field,
    nvars: usize,
    ambient: &GradedModule,
    elems: &[PolyVec],
    degrees: &[i32],
) -> Result<(GradedModule, Vec<PolyVec>)> {
    let mut order: Vec<usize> = (0..elems.len()).collect();
    order.sort_by_key(|&i| (degrees[i], i));
    let mut kept: Vec<usize> = Vec::new();
    let mut span: Vec<PolyVec> = ambient.relations.clone();
    let mut gb = ambient.gb.clone();
    for i in order {
        let v = gb.normal_form(&elems[i]);
        if v.is_zero() {
            continue;
        }
        kept.push(i);
        span.push(elems[i].clone());
        gb = buchberger(field, nvars, &ambient.twists, &span)?;
    }
    let gens: Vec<PolyVec> = kept.iter().map(|&i| ambient.nf(&elems[i])).collect();
    let twists: Vec<i32> = kept.iter().map(|&i| degrees[i]).collect();
    let rels = preimage_generators(field, nvars, &twists, &gens, ambient)?;
    let built = build(field, nvars, twists, rels)?;
    let incl = built
        .from_new
        .iter()
        .map(|v| ambient.nf(&v.substitute(&gens)))
        .collect();
    Ok((built.module, incl))
}

//! Hom spaces, linear solves over them, and isomorphism search.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Elem, FgModule, ModuleMap, Repr};
use crate::error::{Error, Result};
use crate::linalg::{Field, Mat, Scalar};

/// A `k`-basis of `Hom_R(M, N)` (degree-0 maps in graded mode).
pub fn hom_space(m: &FgModule, n: &FgModule) -> Result<Vec<ModuleMap>> {
    if !m.same_ring(n) {
        return Err(Error::Shape("modules over different rings".into()));
    }
    let ring = m.ring().clone();
    let f = ring.field;
    match (&m.0.repr, &n.0.repr) {
        (Repr::Artin(a), Repr::Artin(b)) => {
            let g = a.generators(&ring);
            let s = g.idx.len();
            let monos = b.monomial_actions(&ring);
            let da = monos.len();
            let rels = &g.relations;
            let mut sys = Mat::zeros(f, rels.cols() * b.dim, s * b.dim);
            for r in 0..rels.cols() {
                for j in 0..s {
                    let mut block = Mat::zeros(f, b.dim, b.dim);
                    for (t, mono) in monos.iter().enumerate() {
                        let c = rels.get(j * da + t, r);
                        if !c.is_zero() {
                            block = block.add(&mono.scale(c));
                        }
                    }
                    sys.paste(r * b.dim, j * b.dim, &block);
                }
            }
            let ker = sys.kernel_basis();
            ker.columns()
                .into_iter()
                .map(|v| {
                    let imgs: Vec<Elem> = (0..s)
                        .map(|j| Elem::Vector(v[j * b.dim..(j + 1) * b.dim].to_vec()))
                        .collect();
                    ModuleMap::from_generator_images(m, n, &imgs)
                })
                .collect()
        }
        (Repr::Graded(a), Repr::Graded(_)) => {
            let bases: Vec<Vec<Elem>> = a.twists.iter().map(|&t| n.component_basis(t)).collect();
            let offs: Vec<usize> = bases
                .iter()
                .scan(0, |acc, b| {
                    let o = *acc;
                    *acc += b.len();
                    Some(o)
                })
                .collect();
            let unknowns: usize = bases.iter().map(|b| b.len()).sum();
            let mut rows: Vec<Vec<Scalar>> = Vec::new();
            for rho in &a.relations {
                let e = rho.degree(&a.twists).expect("homogeneous relation");
                let width = n.component_basis(e).len();
                let mut block = vec![vec![f.zero(); unknowns]; width];
                for (j, basis) in bases.iter().enumerate() {
                    let pj = rho.component(j);
                    if pj.is_zero() {
                        continue;
                    }
                    for (k, bv) in basis.iter().enumerate() {
                        let prod = n.normalize(&Elem::Poly(bv.poly().mul_poly(&pj)));
                        for (r, c) in n.coords(&prod, e).into_iter().enumerate() {
                            block[r][offs[j] + k] = c;
                        }
                    }
                }
                rows.extend(block);
            }
            let sys = if rows.is_empty() {
                Mat::zeros(f, 0, unknowns)
            } else {
                Mat::from_rows(f, rows)
            };
            let ker = sys.kernel_basis();
            ker.columns()
                .into_iter()
                .map(|v| {
                    let imgs: Vec<Elem> = a
                        .twists
                        .iter()
                        .enumerate()
                        .map(|(j, &t)| {
                            n.from_coords(t, &v[offs[j]..offs[j] + bases[j].len()])
                        })
                        .collect();
                    ModuleMap::from_generator_images(m, n, &imgs)
                })
                .collect()
        }
        _ => Err(Error::WrongMode("modules in different ring modes".into())),
    }
}

/// Coordinates of a map: the concatenated coordinates of its generator
/// images. Injective on `Hom_R(M, N)`.
pub(crate) fn hom_coords(h: &ModuleMap) -> Vec<Scalar> {
    let degs = h.source.generator_degrees();
    h.generator_images()
        .iter()
        .zip(degs)
        .flat_map(|(e, d)| h.target.coords(e, d))
        .collect()
}

/// `Σ λ_i basis_i`.
pub fn combine(source: &FgModule, target: &FgModule, basis: &[ModuleMap], coeffs: &[Scalar]) -> ModuleMap {
    let mut acc = ModuleMap::zero(source, target);
    for (b, c) in basis.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = acc.add(&b.scale(c));
        }
    }
    acc
}

fn solve_linear(
    field: Field,
    candidates: &[Vec<Scalar>],
    goal: Vec<Scalar>,
) -> Option<Vec<Scalar>> {
    let len = goal.len();
    if candidates.is_empty() {
        return goal.iter().all(|x| x.is_zero()).then(Vec::new);
    }
    let a = Mat::from_columns(field, len, candidates);
    let b = Mat::from_columns(field, len, &[goal]);
    a.solve(&b).map(|x| x.column(0))
}

/// Some `k: P → X` with `g ∘ k = h`, where `g: X → N` and `h: P → N`.
pub(crate) fn solve_post(g: &ModuleMap, h: &ModuleMap) -> Result<Option<ModuleMap>> {
    let basis = hom_space(&h.source, &g.source)?;
    let cands: Vec<Vec<Scalar>> = basis.iter().map(|k| hom_coords(&g.compose(k))).collect();
    let f = g.source.field();
    Ok(solve_linear(f, &cands, hom_coords(h)).map(|l| combine(&h.source, &g.source, &basis, &l)))
}

/// Some `k: B → Y` with `k ∘ g = f`, where `g: A → B` and `f: A → Y`.
pub fn solve_pre(g: &ModuleMap, f: &ModuleMap) -> Result<Option<ModuleMap>> {
    assert!(g.source == f.source, "extension along a map with another source");
    let basis = hom_space(&g.target, &f.target)?;
    let cands: Vec<Vec<Scalar>> = basis.iter().map(|k| hom_coords(&k.compose(g))).collect();
    let fld = g.source.field();
    Ok(solve_linear(fld, &cands, hom_coords(f)).map(|l| combine(&g.target, &f.target, &basis, &l)))
}

/// `Hom_R(M, N)` as an R-module (artinian mode), with the maps represented
/// by its standard basis vectors.
pub fn hom_module(m: &FgModule, n: &FgModule) -> Result<(FgModule, Vec<ModuleMap>)> {
    let b = n.artin()?;
    m.artin()?;
    let ring = m.ring().clone();
    let basis = hom_space(m, n)?;
    let f = ring.field;
    let cols: Vec<Vec<Scalar>> = basis.iter().map(hom_coords).collect();
    let len = cols.first().map_or(0, |c| c.len());
    let c = Mat::from_columns(f, len, &cols);
    let mut acts = Vec::new();
    for x in &b.actions {
        let xn = ModuleMap::from_matrix(n, n, x.clone())?;
        let imgs: Vec<Vec<Scalar>> = basis.iter().map(|k| hom_coords(&xn.compose(k))).collect();
        let rhs = Mat::from_columns(f, len, &imgs);
        let a = if basis.is_empty() {
            Mat::zeros(f, 0, 0)
        } else {
            c.solve(&rhs)
                .ok_or_else(|| Error::Verification("hom space not closed under the action".into()))?
        };
        acts.push(a);
    }
    Ok((FgModule::from_actions(&ring, basis.len(), acts)?, basis))
}

#[derive(Clone, Debug)]
pub enum IsoResult {
    Iso(ModuleMap),
    NotIso(String),
    Inconclusive,
}

impl IsoResult {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoResult::Iso(_))
    }
}

fn invariant_mismatch(m: &FgModule, n: &FgModule) -> Result<Option<String>> {
    if m.is_artin() {
        if m.dim() != n.dim() {
            return Ok(Some(format!("dimensions {:?} and {:?}", m.dim(), n.dim())));
        }
        if m.loewy_series()? != n.loewy_series()? {
            return Ok(Some("Loewy series differ".into()));
        }
        if m.socle_dim()? != n.socle_dim()? {
            return Ok(Some("socle dimensions differ".into()));
        }
    } else {
        let mut a = m.generator_degrees();
        let mut b = n.generator_degrees();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return Ok(Some("generator degrees differ".into()));
        }
        let mut ra: Vec<i32> = m.graded()?.relation_degrees();
        let mut rb: Vec<i32> = n.graded()?.relation_degrees();
        ra.sort_unstable();
        rb.sort_unstable();
        if ra != rb {
            return Ok(Some("relation degrees differ".into()));
        }
    }
    if m.num_generators() != n.num_generators() {
        return Ok(Some("numbers of generators differ".into()));
    }
    Ok(None)
}

/// Searches `Hom_R(M, N)` for an isomorphism: exhaustively when the hom
/// space has at most 65536 elements, otherwise by seeded random sampling.
pub fn isomorphism(m: &FgModule, n: &FgModule, seed: u64) -> Result<IsoResult> {
    if let Some(why) = invariant_mismatch(m, n)? {
        return Ok(IsoResult::NotIso(why));
    }
    if m.is_zero() {
        return Ok(IsoResult::Iso(ModuleMap::zero(m, n)));
    }
    if m == n {
        return Ok(IsoResult::Iso(ModuleMap::identity(m)));
    }
    let basis = hom_space(m, n)?;
    if basis.is_empty() {
        return Ok(IsoResult::NotIso("no nonzero maps".into()));
    }
    let f = m.field();
    let h = basis.len() as u32;
    let exhaustive = f.order().and_then(|q| q.checked_pow(h)).filter(|&t| t <= 65_536);
    if let Some(total) = exhaustive {
        let q = f.order().unwrap();
        for code in 1..total {
            let mut c = code;
            let coeffs: Vec<Scalar> = (0..h)
                .map(|_| {
                    let x = f.element(c % q);
                    c /= q;
                    x
                })
                .collect();
            let cand = combine(m, n, &basis, &coeffs);
            if cand.is_iso()? {
                return Ok(IsoResult::Iso(cand));
            }
        }
        return Ok(IsoResult::NotIso("no invertible map in the hom space".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let coeffs: Vec<Scalar> = (0..h)
            .map(|_| match f.order() {
                Some(q) => f.element(rng.gen_range(0..q)),
                None => f.from_i64(rng.gen_range(-50..=50)),
            })
            .collect();
        let cand = combine(m, n, &basis, &coeffs);
        if cand.is_iso()? {
            return Ok(IsoResult::Iso(cand));
        }
    }
    Ok(IsoResult::Inconclusive)
}

/// Matrix of `Hom(f, N): Hom(Y, N) → Hom(X, N)` for `f: X → Y`, in the
/// bases returned by [`hom_space`].
pub fn precomposition_matrix(f: &ModuleMap, n: &FgModule) -> Result<Mat> {
    let fld = n.field();
    let bx = hom_space(&f.source, n)?;
    let by = hom_space(&f.target, n)?;
    if bx.is_empty() || by.is_empty() {
        return Ok(Mat::zeros(fld, bx.len(), by.len()));
    }
    let cx: Vec<Vec<Scalar>> = bx.iter().map(hom_coords).collect();
    let len = cx[0].len();
    let cmat = Mat::from_columns(fld, len, &cx);
    let imgs: Vec<Vec<Scalar>> = by.iter().map(|b| hom_coords(&b.compose(f))).collect();
    cmat.solve(&Mat::from_columns(fld, len, &imgs))
        .ok_or_else(|| Error::Verification("precomposition leaves the hom space".into()))
}

//! Finitely generated modules and module maps in both ring modes.
//!
//! Artinian modules are finite-dimensional vector spaces with commuting
//! action matrices. Graded modules over a polynomial ring are cokernels of
//! homogeneous presentations; only degree-0 maps are represented.

mod artin;
mod graded;
pub mod hom;

use std::fmt;
use std::sync::Arc;

use crate::algebra::Ring;
use crate::error::{Error, Result};
use crate::grobner::PolyVec;
use crate::linalg::{Field, Mat, Scalar};

use artin::ArtinModule;
use graded::GradedModule;

pub use hom::{hom_module, hom_space, isomorphism, IsoResult};

#[derive(Clone)]
pub struct FgModule(Arc<Inner>);

struct Inner {
    ring: Ring,
    repr: Repr,
}

enum Repr {
    Artin(ArtinModule),
    Graded(GradedModule),
}

/// An element: coordinates in artinian mode, a vector of the ambient free
/// module (in normal form) in graded mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Elem {
    Vector(Vec<Scalar>),
    Poly(PolyVec),
}

impl Elem {
    pub fn is_zero(&self) -> bool {
        match self {
            Elem::Vector(v) => v.iter().all(|x| x.is_zero()),
            Elem::Poly(p) => p.is_zero(),
        }
    }

    pub fn vector(&self) -> &[Scalar] {
        match self {
            Elem::Vector(v) => v,
            Elem::Poly(_) => panic!("graded element used as a vector"),
        }
    }

    pub fn poly(&self) -> &PolyVec {
        match self {
            Elem::Poly(p) => p,
            Elem::Vector(_) => panic!("artinian element used as a polynomial vector"),
        }
    }
}

impl PartialEq for FgModule {
    fn eq(&self, other: &FgModule) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        if self.0.ring != other.0.ring {
            return false;
        }
        match (&self.0.repr, &other.0.repr) {
            (Repr::Artin(a), Repr::Artin(b)) => a.dim == b.dim && a.actions == b.actions,
            (Repr::Graded(a), Repr::Graded(b)) => a.twists == b.twists && a.gb.gens == b.gb.gens,
            _ => false,
        }
    }
}

impl Eq for FgModule {}

impl fmt::Debug for FgModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.repr {
            Repr::Artin(a) => write!(f, "ArtinModule(dim {}, {:?})", a.dim, a.actions),
            Repr::Graded(g) => write!(
                f,
                "GradedModule(twists {:?}, relations {:?})",
                g.twists, g.relations
            ),
        }
    }
}

impl FgModule {
    fn wrap(ring: &Ring, repr: Repr) -> FgModule {
        FgModule(Arc::new(Inner {
            ring: ring.clone(),
            repr,
        }))
    }

    /// Module given by variable actions on `k^dim` (artinian mode).
    pub fn from_actions(ring: &Ring, dim: usize, actions: Vec<Mat>) -> Result<FgModule> {
        let m = ArtinModule::new(dim, actions);
        m.check(ring)?;
        Ok(FgModule::wrap(ring, Repr::Artin(m)))
    }

    /// `⊕ R(-t_j) / <relations>` (graded mode); the presentation is minimised.
    pub fn from_presentation(
        ring: &Ring,
        twists: Vec<i32>,
        relations: Vec<PolyVec>,
    ) -> Result<FgModule> {
        if ring.is_artin() {
            return Err(Error::WrongMode("presentations are graded-mode input".into()));
        }
        let b = graded::build(ring.field, ring.nvars(), twists, relations)?;
        Ok(FgModule::wrap(ring, Repr::Graded(b.module)))
    }

    pub fn free(ring: &Ring, rank: usize) -> FgModule {
        FgModule::free_twisted(ring, &vec![0; rank])
    }

    /// `⊕ R(-t_j)`; twists are ignored in artinian mode.
    pub fn free_twisted(ring: &Ring, twists: &[i32]) -> FgModule {
        if ring.is_artin() {
            let rank = twists.len();
            let dim = ring.dim().unwrap() * rank;
            let acts = artin::free_actions(ring, rank);
            FgModule::wrap(ring, Repr::Artin(ArtinModule::new(dim, acts)))
        } else {
            let g = GradedModule::from_parts(ring.field, ring.nvars(), twists.to_vec(), vec![])
                .expect("free module");
            FgModule::wrap(ring, Repr::Graded(g))
        }
    }

    pub fn zero(ring: &Ring) -> FgModule {
        FgModule::free(ring, 0)
    }

    /// The residue field `k = R/m`.
    pub fn residue_field(ring: &Ring) -> FgModule {
        if ring.is_artin() {
            let acts = (0..ring.nvars())
                .map(|_| Mat::zeros(ring.field, 1, 1))
                .collect();
            FgModule::wrap(ring, Repr::Artin(ArtinModule::new(1, acts)))
        } else {
            let n = ring.nvars();
            let rels = (0..n)
                .map(|i| PolyVec::variable(ring.field, n, i))
                .collect();
            let g = GradedModule::from_parts(ring.field, n, vec![0], rels).expect("residue field");
            FgModule::wrap(ring, Repr::Graded(g))
        }
    }

    /// The injective hull `E` of `k`, i.e. the dual of `R` (artinian mode).
    pub fn injective_hull(ring: &Ring) -> Result<FgModule> {
        FgModule::free(ring, 1).matlis_dual()
    }

    pub fn ring(&self) -> &Ring {
        &self.0.ring
    }

    pub fn field(&self) -> Field {
        self.0.ring.field
    }

    fn nvars(&self) -> usize {
        self.0.ring.nvars()
    }

    pub fn is_artin(&self) -> bool {
        matches!(self.0.repr, Repr::Artin(_))
    }

    pub(crate) fn artin(&self) -> Result<&ArtinModule> {
        match &self.0.repr {
            Repr::Artin(a) => Ok(a),
            Repr::Graded(_) => Err(Error::WrongMode("artinian module data".into())),
        }
    }

    pub(crate) fn graded(&self) -> Result<&GradedModule> {
        match &self.0.repr {
            Repr::Graded(g) => Ok(g),
            Repr::Artin(_) => Err(Error::WrongMode("graded presentation".into())),
        }
    }

    /// `dim_k M` (artinian mode).
    pub fn dim(&self) -> Option<usize> {
        self.artin().ok().map(|a| a.dim)
    }

    pub fn actions(&self) -> Result<&[Mat]> {
        Ok(&self.artin()?.actions)
    }

    pub fn twists(&self) -> Option<&[i32]> {
        self.graded().ok().map(|g| g.twists.as_slice())
    }

    pub fn relations(&self) -> Option<&[PolyVec]> {
        self.graded().ok().map(|g| g.relations.as_slice())
    }

    pub fn is_zero(&self) -> bool {
        match &self.0.repr {
            Repr::Artin(a) => a.dim == 0,
            Repr::Graded(g) => g.rank() == 0,
        }
    }

    pub fn same_ring(&self, other: &FgModule) -> bool {
        Arc::ptr_eq(&self.0.ring, &other.0.ring) || self.0.ring == other.0.ring
    }

    /// Twist `M(-a)`: generators move up by `a` (graded mode); identity in
    /// artinian mode.
    pub fn twist(&self, a: i32) -> FgModule {
        match &self.0.repr {
            Repr::Artin(_) => self.clone(),
            Repr::Graded(g) => FgModule::wrap(&self.0.ring, Repr::Graded(g.with_twist(a))),
        }
    }

    pub fn zero_elem(&self) -> Elem {
        match &self.0.repr {
            Repr::Artin(a) => Elem::Vector(vec![self.field().zero(); a.dim]),
            Repr::Graded(_) => Elem::Poly(PolyVec::zero(self.field(), self.nvars())),
        }
    }

    pub fn add_elems(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Vector(u), Elem::Vector(v)) => {
                Elem::Vector(u.iter().zip(v).map(|(x, y)| x + y).collect())
            }
            (Elem::Poly(u), Elem::Poly(v)) => Elem::Poly(u.add(v)),
            _ => panic!("mixed element kinds"),
        }
    }

    pub fn scale_elem(&self, c: &Scalar, a: &Elem) -> Elem {
        match a {
            Elem::Vector(u) => Elem::Vector(u.iter().map(|x| x * c).collect()),
            Elem::Poly(u) => Elem::Poly(u.scale(c)),
        }
    }

    /// Multiplication by the `i`-th variable.
    pub fn act_var(&self, i: usize, a: &Elem) -> Elem {
        match (&self.0.repr, a) {
            (Repr::Artin(m), Elem::Vector(v)) => Elem::Vector(m.actions[i].mul_vec(v)),
            (Repr::Graded(g), Elem::Poly(p)) => {
                let x = PolyVec::variable(self.field(), self.nvars(), i);
                Elem::Poly(g.nf(&p.mul_poly(&x)))
            }
            _ => panic!("element does not belong to the module"),
        }
    }

    /// Canonical representative (normal form in graded mode).
    pub fn normalize(&self, a: &Elem) -> Elem {
        match (&self.0.repr, a) {
            (Repr::Graded(g), Elem::Poly(p)) => Elem::Poly(g.nf(p)),
            _ => a.clone(),
        }
    }

    /// `k`-basis of the degree-`d` component (graded mode), or of the whole
    /// module (artinian mode, `d` ignored).
    pub fn component_basis(&self, d: i32) -> Vec<Elem> {
        match &self.0.repr {
            Repr::Artin(a) => {
                let f = self.field();
                (0..a.dim)
                    .map(|i| {
                        let mut v = vec![f.zero(); a.dim];
                        v[i] = f.one();
                        Elem::Vector(v)
                    })
                    .collect()
            }
            Repr::Graded(g) => {
                let c = g.component(self.nvars(), d);
                let f = self.field();
                c.basis
                    .iter()
                    .map(|(comp, m)| Elem::Poly(PolyVec::term(f, *comp, m.clone(), f.one())))
                    .collect()
            }
        }
    }

    /// Coordinates of `a` on [`component_basis`](Self::component_basis).
    pub fn coords(&self, a: &Elem, d: i32) -> Vec<Scalar> {
        match (&self.0.repr, a) {
            (Repr::Artin(_), Elem::Vector(v)) => v.clone(),
            (Repr::Graded(g), Elem::Poly(p)) => g.coords(self.field(), self.nvars(), p, d),
            _ => panic!("element does not belong to the module"),
        }
    }

    pub fn from_coords(&self, d: i32, c: &[Scalar]) -> Elem {
        match &self.0.repr {
            Repr::Artin(_) => Elem::Vector(c.to_vec()),
            Repr::Graded(g) => Elem::Poly(g.from_coords(self.field(), self.nvars(), d, c)),
        }
    }

    /// Internal degree of a nonzero homogeneous element (graded mode).
    pub fn degree_of(&self, a: &Elem) -> Option<i32> {
        match (&self.0.repr, a) {
            (Repr::Graded(g), Elem::Poly(p)) => p.degree(&g.twists),
            _ => None,
        }
    }

    /// A minimal generating set with the degree of each generator (0 in
    /// artinian mode). Its size is `dim_k M/mM`.
    pub fn minimal_generators(&self) -> Vec<(Elem, i32)> {
        let f = self.field();
        match &self.0.repr {
            Repr::Artin(a) => a
                .generators(&self.0.ring)
                .idx
                .iter()
                .map(|&i| {
                    let mut v = vec![f.zero(); a.dim];
                    v[i] = f.one();
                    (Elem::Vector(v), 0)
                })
                .collect(),
            Repr::Graded(g) => g
                .twists
                .iter()
                .enumerate()
                .map(|(j, &t)| (Elem::Poly(PolyVec::unit(f, self.nvars(), j)), t))
                .collect(),
        }
    }

    pub fn num_generators(&self) -> usize {
        match &self.0.repr {
            Repr::Artin(a) => a.generators(&self.0.ring).idx.len(),
            Repr::Graded(g) => g.rank(),
        }
    }

    pub fn generator_degrees(&self) -> Vec<i32> {
        self.minimal_generators().into_iter().map(|g| g.1).collect()
    }

    /// The free module on the minimal generators, with the covering map.
    pub fn free_cover(&self) -> ModuleMap {
        let gens = self.minimal_generators();
        let degs: Vec<i32> = gens.iter().map(|g| g.1).collect();
        let free = FgModule::free_twisted(&self.0.ring, &degs);
        let imgs: Vec<Elem> = gens.into_iter().map(|g| g.0).collect();
        ModuleMap::from_generator_images(&free, self, &imgs).expect("cover of minimal generators")
    }

    /// When `M` is free, an isomorphism `R^s → M`.
    pub fn free_witness(&self) -> Option<ModuleMap> {
        match &self.0.repr {
            Repr::Artin(a) => {
                let s = a.generators(&self.0.ring).idx.len();
                if a.dim == s * self.0.ring.dim().unwrap() {
                    let c = self.free_cover();
                    debug_assert!(c.matrix().unwrap().is_invertible());
                    Some(c)
                } else {
                    None
                }
            }
            Repr::Graded(g) => g.relations.is_empty().then(|| self.free_cover()),
        }
    }

    pub fn is_free(&self) -> bool {
        self.free_witness().is_some()
    }

    /// `Hom_k(M, k)` with the contragredient actions (artinian mode).
    pub fn matlis_dual(&self) -> Result<FgModule> {
        let a = self.artin()?;
        let acts = a.actions.iter().map(|x| x.transpose()).collect();
        Ok(FgModule::wrap(
            &self.0.ring,
            Repr::Artin(ArtinModule::new(a.dim, acts)),
        ))
    }

    /// Dimensions of `m^i M / m^{i+1} M` (artinian mode).
    pub fn loewy_series(&self) -> Result<Vec<usize>> {
        let a = self.artin()?;
        let f = self.field();
        let mut cur = Mat::identity(f, a.dim);
        let mut out = Vec::new();
        let mut prev = a.dim;
        while prev > 0 {
            let mut next = Mat::zeros(f, a.dim, 0);
            for x in &a.actions {
                next = next.hstack(&x.mul(&cur));
            }
            let next = next.column_space_basis();
            out.push(prev - next.cols());
            prev = next.cols();
            cur = next;
        }
        Ok(out)
    }

    /// `dim_k soc M` (artinian mode).
    pub fn socle_dim(&self) -> Result<usize> {
        let a = self.artin()?;
        let mut st = Mat::zeros(self.field(), 0, a.dim);
        for x in &a.actions {
            st = st.vstack(x);
        }
        Ok(a.dim - st.rank())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum MapData {
    Artin(Mat),
    /// Images of the source generators, in normal form.
    Graded(Vec<PolyVec>),
}

/// An R-linear map (degree 0 in graded mode), verified at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    source: FgModule,
    target: FgModule,
    data: MapData,
}

impl ModuleMap {
    /// An artinian-mode map given by a matrix.
    pub fn from_matrix(source: &FgModule, target: &FgModule, m: Mat) -> Result<ModuleMap> {
        let (a, b) = (source.artin()?, target.artin()?);
        if m.rows() != b.dim || m.cols() != a.dim {
            return Err(Error::Shape(format!(
                "map matrix is {}×{}, expected {}×{}",
                m.rows(),
                m.cols(),
                b.dim,
                a.dim
            )));
        }
        if !artin::intertwines(a, b, &m) {
            return Err(Error::Verification("matrix is not R-linear".into()));
        }
        Ok(ModuleMap {
            source: source.clone(),
            target: target.clone(),
            data: MapData::Artin(m),
        })
    }

    /// The map sending the minimal generators of `source` (in the order of
    /// [`FgModule::minimal_generators`]) to `images`.
    pub fn from_generator_images(
        source: &FgModule,
        target: &FgModule,
        images: &[Elem],
    ) -> Result<ModuleMap> {
        if !source.same_ring(target) {
            return Err(Error::Shape("modules over different rings".into()));
        }
        if images.len() != source.num_generators() {
            return Err(Error::Shape(format!(
                "{} generator images for {} generators",
                images.len(),
                source.num_generators()
            )));
        }
        let ring = source.ring();
        match (&source.0.repr, &target.0.repr) {
            (Repr::Artin(a), Repr::Artin(b)) => {
                let cols: Vec<Vec<Scalar>> = images.iter().map(|e| e.vector().to_vec()).collect();
                if cols.iter().any(|c| c.len() != b.dim) {
                    return Err(Error::Shape("generator image of wrong length".into()));
                }
                let imgs = Mat::from_columns(ring.field, b.dim, &cols);
                let m = a.extend_generator_images(ring, b, &imgs);
                let g = a.generators(ring);
                let ok = g
                    .idx
                    .iter()
                    .enumerate()
                    .all(|(j, &i)| m.column(i) == cols[j]);
                if !ok || !artin::intertwines(a, b, &m) {
                    return Err(Error::Verification(
                        "generator images violate the source relations".into(),
                    ));
                }
                Ok(ModuleMap {
                    source: source.clone(),
                    target: target.clone(),
                    data: MapData::Artin(m),
                })
            }
            (Repr::Graded(a), Repr::Graded(b)) => {
                let mut imgs = Vec::with_capacity(images.len());
                for (j, e) in images.iter().enumerate() {
                    let p = b.nf(e.poly());
                    if p.max_comp().is_some_and(|c| c >= b.rank()) {
                        return Err(Error::Shape("image outside the target".into()));
                    }
                    let wrong_degree = !p.is_zero() && p.degree(&b.twists) != Some(a.twists[j]);
                    if wrong_degree || !p.is_homogeneous(&b.twists) {
                        return Err(Error::Verification(format!(
                            "image of generator {j} is not homogeneous of degree {}",
                            a.twists[j]
                        )));
                    }
                    imgs.push(p);
                }
                for r in &a.relations {
                    if !b.nf(&r.substitute(&imgs)).is_zero() {
                        return Err(Error::Verification(
                            "generator images violate the source relations".into(),
                        ));
                    }
                }
                Ok(ModuleMap {
                    source: source.clone(),
                    target: target.clone(),
                    data: MapData::Graded(imgs),
                })
            }
            _ => Err(Error::WrongMode("modules in different ring modes".into())),
        }
    }

    pub fn identity(m: &FgModule) -> ModuleMap {
        match &m.0.repr {
            Repr::Artin(a) => ModuleMap {
                source: m.clone(),
                target: m.clone(),
                data: MapData::Artin(Mat::identity(m.field(), a.dim)),
            },
            Repr::Graded(g) => ModuleMap {
                source: m.clone(),
                target: m.clone(),
                data: MapData::Graded(
                    (0..g.rank())
                        .map(|j| g.nf(&PolyVec::unit(m.field(), m.nvars(), j)))
                        .collect(),
                ),
            },
        }
    }

    pub fn zero(source: &FgModule, target: &FgModule) -> ModuleMap {
        let data = match (&source.0.repr, &target.0.repr) {
            (Repr::Artin(a), Repr::Artin(b)) => MapData::Artin(Mat::zeros(source.field(), b.dim, a.dim)),
            (Repr::Graded(a), _) => MapData::Graded(
                (0..a.rank())
                    .map(|_| PolyVec::zero(source.field(), source.nvars()))
                    .collect(),
            ),
            _ => panic!("modules in different ring modes"),
        };
        ModuleMap {
            source: source.clone(),
            target: target.clone(),
            data,
        }
    }

    pub fn source(&self) -> &FgModule {
        &self.source
    }

    pub fn target(&self) -> &FgModule {
        &self.target
    }

    pub fn matrix(&self) -> Option<&Mat> {
        match &self.data {
            MapData::Artin(m) => Some(m),
            MapData::Graded(_) => None,
        }
    }

    pub fn apply(&self, x: &Elem) -> Elem {
        match (&self.data, x) {
            (MapData::Artin(m), Elem::Vector(v)) => Elem::Vector(m.mul_vec(v)),
            (MapData::Graded(imgs), Elem::Poly(p)) => {
                let g = self.target.graded().unwrap();
                Elem::Poly(g.nf(&p.substitute(imgs)))
            }
            _ => panic!("element kind does not match the map"),
        }
    }

    /// Images of the minimal generators of the source.
    pub fn generator_images(&self) -> Vec<Elem> {
        match &self.data {
            MapData::Graded(imgs) => imgs.iter().cloned().map(Elem::Poly).collect(),
            MapData::Artin(_) => self
                .source
                .minimal_generators()
                .iter()
                .map(|g| self.apply(&g.0))
                .collect(),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleMap) -> ModuleMap {
        assert!(
            other.target == self.source,
            "composition of maps with mismatched modules"
        );
        let data = match (&self.data, &other.data) {
            (MapData::Artin(a), MapData::Artin(b)) => MapData::Artin(a.mul(b)),
            (MapData::Graded(_), MapData::Graded(b)) => MapData::Graded(
                b.iter()
                    .map(|p| self.apply(&Elem::Poly(p.clone())).poly().clone())
                    .collect(),
            ),
            _ => panic!("maps in different ring modes"),
        };
        ModuleMap {
            source: other.source.clone(),
            target: self.target.clone(),
            data,
        }
    }

    fn combine(&self, other: &ModuleMap, c: &Scalar) -> ModuleMap {
        assert!(
            self.source == other.source && self.target == other.target,
            "sum of maps with different source or target"
        );
        let data = match (&self.data, &other.data) {
            (MapData::Artin(a), MapData::Artin(b)) => MapData::Artin(a.add(&b.scale(c))),
            (MapData::Graded(a), MapData::Graded(b)) => {
                MapData::Graded(a.iter().zip(b).map(|(x, y)| x.add(&y.scale(c))).collect())
            }
            _ => panic!("maps in different ring modes"),
        };
        ModuleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            data,
        }
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        self.combine(other, &self.source.field().one())
    }

    pub fn sub(&self, other: &ModuleMap) -> ModuleMap {
        self.combine(other, &-self.source.field().one())
    }

    pub fn scale(&self, c: &Scalar) -> ModuleMap {
        let data = match &self.data {
            MapData::Artin(a) => MapData::Artin(a.scale(c)),
            MapData::Graded(a) => MapData::Graded(a.iter().map(|x| x.scale(c)).collect()),
        };
        ModuleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            data,
        }
    }

    pub fn neg(&self) -> ModuleMap {
        self.scale(&-self.source.field().one())
    }

    pub fn is_zero(&self) -> bool {
        match &self.data {
            MapData::Artin(a) => a.is_zero(),
            MapData::Graded(a) => a.iter().all(|x| x.is_zero()),
        }
    }

    /// The same map between re-twisted modules (graded mode).
    pub fn twist(&self, a: i32) -> ModuleMap {
        ModuleMap {
            source: self.source.twist(a),
            target: self.target.twist(a),
            data: self.data.clone(),
        }
    }

    /// `Hom_k(f, k): N^∨ → M^∨` (artinian mode).
    pub fn matlis_dual(&self) -> Result<ModuleMap> {
        let m = self
            .matrix()
            .ok_or_else(|| Error::WrongMode("matlis dual".into()))?;
        Ok(ModuleMap {
            source: self.target.matlis_dual()?,
            target: self.source.matlis_dual()?,
            data: MapData::Artin(m.transpose()),
        })
    }

    /// Inclusion of `ker f` into the source.
    pub fn kernel(&self) -> Result<ModuleMap> {
        let ring = self.source.ring();
        match (&self.data, &self.source.0.repr) {
            (MapData::Artin(m), Repr::Artin(a)) => {
                let k = m.kernel_basis();
                let acts = artin::restrict_actions(&a.actions, &k)?;
                let kmod = FgModule::wrap(ring, Repr::Artin(ArtinModule::new(k.cols(), acts)));
                ModuleMap::from_matrix(&kmod, &self.source, k)
            }
            (MapData::Graded(imgs), Repr::Graded(a)) => {
                let (f, n) = (ring.field, ring.nvars());
                let b = self.target.graded()?;
                let gens = graded::preimage_generators(f, n, &a.twists, imgs, b)?;
                let degs: Vec<i32> = gens
                    .iter()
                    .map(|v| v.degree(&a.twists).expect("homogeneous syzygy"))
                    .collect();
                let (k, incl) = graded::subquotient(f, n, a, &gens, &degs)?;
                let kmod = FgModule::wrap(ring, Repr::Graded(k));
                let imgs: Vec<Elem> = incl.into_iter().map(Elem::Poly).collect();
                ModuleMap::from_generator_images(&kmod, &self.source, &imgs)
            }
            _ => unreachable!(),
        }
    }

    /// Projection of the target onto `coker f`.
    pub fn cokernel(&self) -> Result<ModuleMap> {
        let ring = self.source.ring();
        match (&self.data, &self.target.0.repr) {
            (MapData::Artin(m), Repr::Artin(b)) => {
                let p = m.transpose().kernel_basis().transpose();
                let s = p
                    .solve(&Mat::identity(ring.field, p.rows()))
                    .expect("projection has full row rank");
                let acts = artin::quotient_actions(&b.actions, &p, &s);
                let c = FgModule::wrap(ring, Repr::Artin(ArtinModule::new(p.rows(), acts)));
                ModuleMap::from_matrix(&self.target, &c, p)
            }
            (MapData::Graded(imgs), Repr::Graded(b)) => {
                let mut rels = b.relations.clone();
                rels.extend(imgs.iter().filter(|v| !v.is_zero()).cloned());
                let built = graded::build(ring.field, ring.nvars(), b.twists.clone(), rels)?;
                let c = FgModule::wrap(ring, Repr::Graded(built.module));
                let imgs: Vec<Elem> = built.to_new.into_iter().map(Elem::Poly).collect();
                ModuleMap::from_generator_images(&self.target, &c, &imgs)
            }
            _ => unreachable!(),
        }
    }

    /// `(surjection onto im f, inclusion of im f)`.
    pub fn image(&self) -> Result<(ModuleMap, ModuleMap)> {
        let ring = self.source.ring();
        match (&self.data, &self.target.0.repr) {
            (MapData::Artin(m), Repr::Artin(b)) => {
                let c = m.column_space_basis();
                let acts = artin::restrict_actions(&b.actions, &c)?;
                let imod = FgModule::wrap(ring, Repr::Artin(ArtinModule::new(c.cols(), acts)));
                let surj = c.solve(m).expect("columns lie in the column space");
                Ok((
                    ModuleMap::from_matrix(&self.source, &imod, surj)?,
                    ModuleMap::from_matrix(&imod, &self.target, c)?,
                ))
            }
            (MapData::Graded(imgs), Repr::Graded(b)) => {
                let (f, n) = (ring.field, ring.nvars());
                let a = self.source.graded()?;
                let nz: Vec<usize> = (0..imgs.len()).filter(|&j| !imgs[j].is_zero()).collect();
                let elems: Vec<PolyVec> = nz.iter().map(|&j| imgs[j].clone()).collect();
                let degs: Vec<i32> = nz.iter().map(|&j| a.twists[j]).collect();
                let (im, incl) = graded::subquotient(f, n, b, &elems, &degs)?;
                let lifts = graded::lift(f, n, &im.twists, &incl, b, imgs)?;
                let surj_imgs: Vec<Elem> = lifts
                    .into_iter()
                    .map(|l| Elem::Poly(im.nf(&l.expect("image element lifts"))))
                    .collect();
                let imod = FgModule::wrap(ring, Repr::Graded(im));
                let incl: Vec<Elem> = incl.into_iter().map(Elem::Poly).collect();
                Ok((
                    ModuleMap::from_generator_images(&self.source, &imod, &surj_imgs)?,
                    ModuleMap::from_generator_images(&imod, &self.target, &incl)?,
                ))
            }
            _ => unreachable!(),
        }
    }

    /// Some `x` with `f(x) = y`.
    pub fn lift_element(&self, y: &Elem) -> Result<Option<Elem>> {
        Ok(self.lift_elements(std::slice::from_ref(y))?.pop().unwrap())
    }

    pub fn lift_elements(&self, ys: &[Elem]) -> Result<Vec<Option<Elem>>> {
        match &self.data {
            MapData::Artin(m) => Ok(ys
                .iter()
                .map(|y| {
                    let b = Mat::from_columns(m.field(), m.rows(), &[y.vector().to_vec()]);
                    m.solve(&b).map(|x| Elem::Vector(x.column(0)))
                })
                .collect()),
            MapData::Graded(imgs) => {
                let ring = self.source.ring();
                let a = self.source.graded()?;
                let b = self.target.graded()?;
                let polys: Vec<PolyVec> = ys.iter().map(|y| y.poly().clone()).collect();
                let l = graded::lift(ring.field, ring.nvars(), &a.twists, imgs, b, &polys)?;
                Ok(l.into_iter().map(|x| x.map(|v| Elem::Poly(a.nf(&v)))).collect())
            }
        }
    }

    pub fn is_injective(&self) -> Result<bool> {
        match &self.data {
            MapData::Artin(m) => Ok(m.rank() == m.cols()),
            MapData::Graded(_) => Ok(self.kernel()?.source().is_zero()),
        }
    }

    pub fn is_surjective(&self) -> Result<bool> {
        match &self.data {
            MapData::Artin(m) => Ok(m.rank() == m.rows()),
            MapData::Graded(_) => {
                let gens: Vec<Elem> = self
                    .target
                    .minimal_generators()
                    .into_iter()
                    .map(|g| g.0)
                    .collect();
                Ok(self.lift_elements(&gens)?.iter().all(|x| x.is_some()))
            }
        }
    }

    pub fn is_iso(&self) -> Result<bool> {
        Ok(self.is_surjective()? && self.is_injective()?)
    }

    /// Some `k` with `self ∘ k = h`, where `h` has the same target.
    /// Generator-wise lifting is tried first; a full linear solve over the
    /// hom space is the fallback.
    pub fn lift_map(&self, h: &ModuleMap) -> Result<Option<ModuleMap>> {
        assert!(h.target == self.target, "lift of a map with another target");
        let ys = h.generator_images();
        let xs = self.lift_elements(&ys)?;
        if xs.iter().all(|x| x.is_some()) {
            let xs: Vec<Elem> = xs.into_iter().map(|x| x.unwrap()).collect();
            if let Ok(k) = ModuleMap::from_generator_images(&h.source, &self.source, &xs) {
                return Ok(Some(k));
            }
        } else {
            return Ok(None);
        }
        hom::solve_post(self, h)
    }
}

/// `⊕ M_i` with its inclusions and projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: FgModule,
    pub incl: Vec<ModuleMap>,
    pub proj: Vec<ModuleMap>,
}

pub fn direct_sum(ring: &Ring, parts: &[FgModule]) -> Result<DirectSum> {
    let f = ring.field;
    let n = ring.nvars();
    if ring.is_artin() {
        let mut dims = Vec::new();
        let mut acts: Vec<Mat> = (0..n).map(|_| Mat::zeros(f, 0, 0)).collect();
        for p in parts {
            let a = p.artin()?;
            dims.push(a.dim);
            for (i, x) in a.actions.iter().enumerate() {
                acts[i] = acts[i].block_diag(x);
            }
        }
        let total: usize = dims.iter().sum();
        let module = FgModule::wrap(ring, Repr::Artin(ArtinModule::new(total, acts)));
        let mut incl = Vec::new();
        let mut proj = Vec::new();
        let mut off = 0;
        for (p, &d) in parts.iter().zip(&dims) {
            let mut i = Mat::zeros(f, total, d);
            i.paste(off, 0, &Mat::identity(f, d));
            proj.push(ModuleMap {
                source: module.clone(),
                target: p.clone(),
                data: MapData::Artin(i.transpose()),
            });
            incl.push(ModuleMap {
                source: p.clone(),
                target: module.clone(),
                data: MapData::Artin(i),
            });
            off += d;
        }
        Ok(DirectSum { module, incl, proj })
    } else {
        let mut twists = Vec::new();
        let mut rels = Vec::new();
        let mut offs = Vec::new();
        for p in parts {
            let g = p.graded()?;
            offs.push(twists.len());
            rels.extend(g.relations.iter().map(|r| r.shift_components(twists.len())));
            twists.extend_from_slice(&g.twists);
        }
        let total = twists.len();
        let module = FgModule::wrap(
            ring,
            Repr::Graded(GradedModule::from_parts(f, n, twists, rels)?),
        );
        let mut incl = Vec::new();
        let mut proj = Vec::new();
        for (p, &off) in parts.iter().zip(&offs) {
            let r = p.graded()?.rank();
            incl.push(ModuleMap {
                source: p.clone(),
                target: module.clone(),
                data: MapData::Graded((0..r).map(|j| PolyVec::unit(f, n, off + j)).collect()),
            });
            proj.push(ModuleMap {
                source: module.clone(),
                target: p.clone(),
                data: MapData::Graded(
                    (0..total)
                        .map(|j| {
                            if j >= off && j < off + r {
                                p.graded().unwrap().nf(&PolyVec::unit(f, n, j - off))
                            } else {
                                PolyVec::zero(f, n)
                            }
                        })
                        .collect(),
                ),
            });
        }
        Ok(DirectSum { module, incl, proj })
    }
}

impl DirectSum {
    /// The map `⊕ A_j → ⊕ B_i` with components `entry(i, j): A_j → B_i`.
    pub fn block_map(
        source: &DirectSum,
        target: &DirectSum,
        entry: impl Fn(usize, usize) -> Option<ModuleMap>,
    ) -> ModuleMap {
        let mut acc = ModuleMap::zero(&source.module, &target.module);
        for i in 0..target.incl.len() {
            for j in 0..source.proj.len() {
                if let Some(e) = entry(i, j) {
                    acc = acc.add(&target.incl[i].compose(&e).compose(&source.proj[j]));
                }
            }
        }
        acc
    }
}

/// `true` when `A --u--> B --v--> C` is exact at `B`.
pub fn is_exact_at(u: &ModuleMap, v: &ModuleMap) -> Result<bool> {
    if !v.compose(u).is_zero() {
        return Ok(false);
    }
    match (u.matrix(), v.matrix()) {
        (Some(a), Some(b)) => Ok(a.rank() + b.rank() == b.cols()),
        _ => {
            let k = v.kernel()?;
            let gens = k.generator_images();
            Ok(u.lift_elements(&gens)?.iter().all(|x| x.is_some()))
        }
    }
}

#[cfg(test)]
mod tests;

//! Ring presentations: artinian local algebras given by a monomial basis and
//! structure constants, and standard graded polynomial rings.

pub mod parse;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grobner::{buchberger, GroebnerBasis, Monomial, Poly, PolyVec};
use crate::linalg::{Field, Mat, Scalar};

pub use parse::{parse_field, parse_ideal, parse_poly};

/// Shared handle to a ring.
pub type Ring = Arc<RingDesc>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum RingMode {
    Artin,
    GradedPoly,
}

/// Finite-dimensional data of `k[x]/I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArtinData {
    pub ideal: Vec<Poly>,
    pub gb: GroebnerBasis,
    /// Standard monomials ordered by degree, then lexicographically with
    /// `x_1 > x_2 > ...`; the first entry is `1`.
    pub basis: Vec<Monomial>,
    /// Matrix of multiplication by each variable on the basis.
    pub actions: Vec<Mat>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingDesc {
    pub field: Field,
    pub vars: Vec<String>,
    pub artin: Option<ArtinData>,
}

impl RingDesc {
    pub fn mode(&self) -> RingMode {
        if self.artin.is_some() {
            RingMode::Artin
        } else {
            RingMode::GradedPoly
        }
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_artin(&self) -> bool {
        self.artin.is_some()
    }

    pub fn artin_data(&self) -> Result<&ArtinData> {
        self.artin
            .as_ref()
            .ok_or_else(|| Error::WrongMode("artinian ring data".into()))
    }

    /// `dim_k R` in artinian mode.
    pub fn dim(&self) -> Option<usize> {
        self.artin.as_ref().map(|a| a.basis.len())
    }

    /// Krull dimension.
    pub fn krull_dim(&self) -> usize {
        match self.mode() {
            RingMode::Artin => 0,
            RingMode::GradedPoly => self.nvars(),
        }
    }

    /// Coordinates of a polynomial's image on the monomial basis.
    pub fn element(&self, p: &Poly) -> Result<Vec<Scalar>> {
        let a = self.artin_data()?;
        let nf = a.gb.normal_form(p);
        let mut v = vec![self.field.zero(); a.basis.len()];
        for t in nf.terms() {
            let i = a
                .basis
                .iter()
                .position(|b| *b == t.mono)
                .expect("normal form is supported on standard monomials");
            v[i] = t.coef.clone();
        }
        Ok(v)
    }

    /// Matrix of multiplication by a monomial (artinian mode), given a
    /// family of variable actions on some module.
    pub fn monomial_action(actions: &[Mat], m: &Monomial, dim: usize, field: Field) -> Mat {
        let mut acc = Mat::identity(field, dim);
        for (i, &e) in m.0.iter().enumerate() {
            for _ in 0..e {
                acc = actions[i].mul(&acc);
            }
        }
        acc
    }

    /// Matrix of multiplication by a polynomial on a module with the given
    /// variable actions.
    pub fn poly_action(&self, actions: &[Mat], p: &Poly, dim: usize) -> Mat {
        let mut acc = Mat::zeros(self.field, dim, dim);
        for t in p.terms() {
            let m = RingDesc::monomial_action(actions, &t.mono, dim, self.field);
            acc = acc.add(&m.scale(&t.coef));
        }
        acc
    }

    /// Product of two basis elements expressed on the basis.
    pub fn basis_product(&self, i: usize, j: usize) -> Result<Vec<Scalar>> {
        let a = self.artin_data()?;
        let p = PolyVec::term(self.field, 0, a.basis[i].mul(&a.basis[j]), self.field.one());
        self.element(&p)
    }

    /// Independent check of the multiplication table: commutativity,
    /// associativity and the unit law on the monomial basis, and nilpotence of
    /// every variable.
    pub fn check_table(&self) -> Result<()> {
        let a = self.artin_data()?;
        let d = a.basis.len();
        let mul = |u: &[Scalar], v: &[Scalar]| -> Result<Vec<Scalar>> {
            let mut out = vec![self.field.zero(); d];
            for (i, ui) in u.iter().enumerate() {
                if ui.is_zero() {
                    continue;
                }
                for (j, vj) in v.iter().enumerate() {
                    if vj.is_zero() {
                        continue;
                    }
                    let p = self.basis_product(i, j)?;
                    let c = ui * vj;
                    for k in 0..d {
                        out[k] = &out[k] + &(&c * &p[k]);
                    }
                }
            }
            Ok(out)
        };
        let unit = self.element(&PolyVec::constant(self.field, self.nvars(), self.field.one()))?;
        let e = |i: usize| {
            let mut v = vec![self.field.zero(); d];
            v[i] = self.field.one();
            v
        };
        for i in 0..d {
            if mul(&unit, &e(i))? != e(i) {
                return Err(Error::Verification(format!("unit law fails at basis element {i}")));
            }
            for j in 0..d {
                if self.basis_product(i, j)? != self.basis_product(j, i)? {
                    return Err(Error::Verification(format!("not commutative at ({i},{j})")));
                }
                for k in 0..d {
                    let l = mul(&mul(&e(i), &e(j))?, &e(k))?;
                    let r = mul(&e(i), &mul(&e(j), &e(k))?)?;
                    if l != r {
                        return Err(Error::Verification(format!(
                            "not associative at ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        for (i, x) in a.actions.iter().enumerate() {
            let mut p = Mat::identity(self.field, d);
            for _ in 0..d {
                p = x.mul(&p);
            }
            if !p.is_zero() {
                return Err(Error::Verification(format!(
                    "variable {} is not nilpotent: the algebra is not local",
                    self.vars[i]
                )));
            }
        }
        Ok(())
    }

    /// Depth of the ring: 0 for artinian rings, the number of variables for
    /// polynomial rings (the variables form a regular sequence).
    pub fn depth(&self) -> usize {
        self.krull_dim()
    }

    /// Socle dimension and whether it is one (artinian Gorenstein test).
    pub fn socle(&self) -> Result<(bool, usize)> {
        let a = self.artin_data()?;
        let d = a.basis.len();
        let mut stacked = Mat::zeros(self.field, 0, d);
        for x in &a.actions {
            stacked = stacked.vstack(x);
        }
        let dim = stacked.kernel_basis().cols();
        Ok((dim == 1, dim))
    }

    pub fn is_gorenstein_artin(&self) -> Result<bool> {
        Ok(self.socle()?.0)
    }

    /// Whether the ring is Gorenstein (polynomial rings are regular).
    pub fn is_gorenstein(&self) -> bool {
        match self.mode() {
            RingMode::Artin => self.socle().map(|s| s.0).unwrap_or(false),
            RingMode::GradedPoly => true,
        }
    }

    pub fn is_regular(&self) -> bool {
        match self.mode() {
            RingMode::GradedPoly => true,
            // an artinian local ring is regular only when it is a field
            RingMode::Artin => self.dim() == Some(1),
        }
    }

    pub fn describe(&self) -> String {
        match &self.artin {
            Some(a) => {
                let names = &self.vars;
                let gens: Vec<String> = a.ideal.iter().map(|p| p.fmt_with(names)).collect();
                format!("artin({}; {} | {})", self.field, names.join(","), gens.join(", "))
            }
            None => format!("poly({}; {})", self.field, self.vars.join(", ")),
        }
    }
}

impl fmt::Display for RingDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// Builds `k[x]/I`, checking finite dimensionality and locality.
pub fn artin_ring(field: Field, vars: Vec<String>, ideal: Vec<Poly>) -> Result<Ring> {
    let n = vars.len();
    let gb = buchberger(field, n, &[0], &ideal)?;
    if gb.gens.iter().any(|g| g.leading().unwrap().mono.is_one()) {
        return Err(Error::Verification("the ideal is the whole ring".into()));
    }
    for i in 0..n {
        let has_power = gb.gens.iter().any(|g| {
            let m = &g.leading().unwrap().mono;
            m.0.iter().enumerate().all(|(j, &e)| (j == i) == (e > 0))
        });
        if !has_power {
            return Err(Error::InfiniteDimensional(format!(
                "no power of `{}` lies in the leading ideal",
                vars[i]
            )));
        }
    }
    // standard monomials, found by closing {1} under multiplication by variables
    let mut basis = vec![Monomial::one(n)];
    let mut frontier = basis.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for m in &frontier {
            for i in 0..n {
                let c = m.mul(&Monomial::var(n, i));
                if !gb.is_leading_multiple(0, &c) && !basis.contains(&c) && !next.contains(&c) {
                    next.push(c);
                }
            }
        }
        basis.extend(next.iter().cloned());
        frontier = next;
    }
    basis.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.0.cmp(&a.0)));
    let d = basis.len();
    let mut desc = RingDesc {
        field,
        vars,
        artin: Some(ArtinData {
            ideal,
            gb,
            basis,
            actions: Vec::new(),
        }),
    };
    let mut actions = Vec::with_capacity(n);
    for i in 0..n {
        let mut m = Mat::zeros(field, d, d);
        let basis = desc.artin.as_ref().unwrap().basis.clone();
        for (j, b) in basis.iter().enumerate() {
            let p = PolyVec::term(field, 0, b.mul(&Monomial::var(n, i)), field.one());
            let v = desc.element(&p)?;
            for (k, x) in v.into_iter().enumerate() {
                m.set(k, j, x);
            }
        }
        actions.push(m);
    }
    desc.artin.as_mut().unwrap().actions = actions;
    desc.check_table()?;
    Ok(Arc::new(desc))
}

pub fn poly_ring(field: Field, vars: Vec<String>) -> Ring {
    Arc::new(RingDesc {
        field,
        vars,
        artin: None,
    })
}

/// Parses `artin(F2; x | x^2)` or `poly(F101; x, y, z)`.
pub fn make_ring(text: &str) -> Result<Ring> {
    let t = text.trim();
    let (head, body) = t
        .split_once('(')
        .ok_or_else(|| Error::Parse(format!("expected `artin(...)` or `poly(...)`, got `{t}`")))?;
    let body = body
        .trim_end()
        .strip_suffix(')')
        .ok_or_else(|| Error::Parse("missing closing parenthesis".into()))?;
    let (field_s, rest) = body
        .split_once(';')
        .ok_or_else(|| Error::Parse("expected `;` after the field".into()))?;
    let field = parse_field(field_s)?;
    match head.trim() {
        "artin" => {
            let (vars_s, ideal_s) = rest
                .split_once('|')
                .ok_or_else(|| Error::Parse("expected `|` before the ideal".into()))?;
            let vars = parse_vars(vars_s)?;
            let ideal = parse_ideal(ideal_s, field, &vars)?;
            artin_ring(field, vars, ideal)
        }
        "poly" => Ok(poly_ring(field, parse_vars(rest)?)),
        other => Err(Error::Parse(format!("unknown ring constructor `{other}`"))),
    }
}

fn parse_vars(s: &str) -> Result<Vec<String>> {
    let vars: Vec<String> = s
        .split(',')
        .map(|v| v.trim().to_string())
        .filter(|v| !v.is_empty())
        .collect();
    for v in &vars {
        if !v.chars().all(|c| c.is_alphanumeric() || c == '_')
            || !v.chars().next().is_some_and(|c| c.is_alphabetic())
        {
            return Err(Error::Parse(format!("bad variable name `{v}`")));
        }
    }
    let mut sorted = vars.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != vars.len() {
        return Err(Error::Parse("repeated variable name".into()));
    }
    Ok(vars)
}

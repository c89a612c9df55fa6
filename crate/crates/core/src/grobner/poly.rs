//! Monomials and vectors of polynomials in a free module `R^s`,
//! `R = k[x_1..x_n]`.

use std::cmp::Ordering;
use std::fmt;

use crate::linalg::{Field, Scalar};

/// Exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> i32 {
        self.0.iter().map(|&e| e as i32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Graded reverse lexicographic comparison.
    pub fn cmp_grevlex(&self, other: &Monomial) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (0..self.0.len()).rev() {
            if self.0[i] != other.0[i] {
                // smaller exponent in the last differing variable wins
                return other.0[i].cmp(&self.0[i]);
            }
        }
        Ordering::Equal
    }

    /// Degree-then-lexicographic comparison (`x > y > z`), used to order
    /// monomial bases of artinian quotients.
    pub fn cmp_deglex(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }

    /// All monomials of total degree `d`, increasing in grevlex.
    pub fn of_degree(nvars: usize, d: i32) -> Vec<Monomial> {
        let mut out = Vec::new();
        if d < 0 {
            return out;
        }
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial(vec![]));
            }
            return out;
        }
        let mut cur = vec![0u16; nvars];
        fn rec(i: usize, left: u16, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(Monomial(cur.clone()));
                return;
            }
            for e in 0..=left {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
        }
        rec(0, d as u16, &mut cur, &mut out);
        out.sort_by(|a, b| a.cmp_grevlex(b));
        out
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    names[i].clone()
                } else {
                    format!("{}^{}", names[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// One term `c · m · e_comp`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Term {
    pub comp: usize,
    pub mono: Monomial,
    pub coef: Scalar,
}

/// Position-over-term order: a smaller component index dominates, then
/// grevlex on the monomial.
pub fn cmp_pot(ac: usize, am: &Monomial, bc: usize, bm: &Monomial) -> Ordering {
    bc.cmp(&ac).then_with(|| am.cmp_grevlex(bm))
}

/// Element of a free module `R^s`. Terms are kept sorted increasingly in the
/// position-over-term order (leading term last) with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyVec {
    nvars: usize,
    field: Field,
    terms: Vec<Term>,
}

/// A polynomial is a vector supported on component 0.
pub type Poly = PolyVec;

impl PolyVec {
    pub fn zero(field: Field, nvars: usize) -> PolyVec {
        PolyVec {
            nvars,
            field,
            terms: Vec::new(),
        }
    }

    pub fn from_terms(field: Field, nvars: usize, mut terms: Vec<Term>) -> PolyVec {
        terms.sort_by(|a, b| cmp_pot(a.comp, &a.mono, b.comp, &b.mono));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            if let Some(last) = out.last_mut() {
                if last.comp == t.comp && last.mono == t.mono {
                    last.coef = &last.coef + &t.coef;
                    if last.coef.is_zero() {
                        out.pop();
                    }
                    continue;
                }
            }
            if !t.coef.is_zero() {
                out.push(t);
            }
        }
        PolyVec {
            nvars,
            field,
            terms: out,
        }
    }

    pub fn term(field: Field, comp: usize, mono: Monomial, coef: Scalar) -> PolyVec {
        let nvars = mono.nvars();
        PolyVec::from_terms(field, nvars, vec![Term { comp, mono, coef }])
    }

    /// The basis vector `e_comp`.
    pub fn unit(field: Field, nvars: usize, comp: usize) -> PolyVec {
        PolyVec::term(field, comp, Monomial::one(nvars), field.one())
    }

    pub fn constant(field: Field, nvars: usize, c: Scalar) -> Poly {
        PolyVec::term(field, 0, Monomial::one(nvars), c)
    }

    pub fn variable(field: Field, nvars: usize, i: usize) -> Poly {
        PolyVec::term(field, 0, Monomial::var(nvars, i), field.one())
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&Term> {
        self.terms.last()
    }

    pub fn pop_leading(&mut self) -> Option<Term> {
        self.terms.pop()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree of the vector with generator `e_i` in degree `twists[i]`;
    /// `None` for the zero vector or when not homogeneous.
    pub fn degree(&self, twists: &[i32]) -> Option<i32> {
        let mut d = None;
        for t in &self.terms {
            let td = t.mono.degree() + twists[t.comp];
            match d {
                None => d = Some(td),
                Some(x) if x != td => return None,
                _ => {}
            }
        }
        d
    }

    pub fn is_homogeneous(&self, twists: &[i32]) -> bool {
        self.is_zero() || self.degree(twists).is_some()
    }

    pub fn max_comp(&self) -> Option<usize> {
        self.terms.iter().map(|t| t.comp).max()
    }

    fn merge(&self, other: &PolyVec, c: &Scalar, m: &Monomial) -> PolyVec {
        // self + c * m * other
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted: Vec<Term> = if c.is_zero() {
            Vec::new()
        } else {
            other
                .terms
                .iter()
                .map(|t| Term {
                    comp: t.comp,
                    mono: t.mono.mul(m),
                    coef: &t.coef * c,
                })
                .collect()
        };
        while i < self.terms.len() || j < shifted.len() {
            if j == shifted.len() {
                out.push(self.terms[i].clone());
                i += 1;
                continue;
            }
            if i == self.terms.len() {
                out.push(shifted[j].clone());
                j += 1;
                continue;
            }
            let a = &self.terms[i];
            let b = &shifted[j];
            match cmp_pot(a.comp, &a.mono, b.comp, &b.mono) {
                Ordering::Less => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let s = &a.coef + &b.coef;
                    if !s.is_zero() {
                        out.push(Term {
                            comp: a.comp,
                            mono: a.mono.clone(),
                            coef: s,
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        PolyVec {
            nvars: self.nvars,
            field: self.field,
            terms: out,
        }
    }

    /// `self + c · m · other`.
    pub fn add_scaled(&self, c: &Scalar, m: &Monomial, other: &PolyVec) -> PolyVec {
        self.merge(other, c, m)
    }

    pub fn add(&self, other: &PolyVec) -> PolyVec {
        self.merge(other, &self.field.one(), &Monomial::one(self.nvars))
    }

    pub fn sub(&self, other: &PolyVec) -> PolyVec {
        self.merge(other, &-self.field.one(), &Monomial::one(self.nvars))
    }

    pub fn neg(&self) -> PolyVec {
        self.scale(&-self.field.one())
    }

    pub fn scale(&self, c: &Scalar) -> PolyVec {
        if c.is_zero() {
            return PolyVec::zero(self.field, self.nvars);
        }
        PolyVec {
            nvars: self.nvars,
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    comp: t.comp,
                    mono: t.mono.clone(),
                    coef: &t.coef * c,
                })
                .collect(),
        }
    }

    pub fn mul_term(&self, c: &Scalar, m: &Monomial) -> PolyVec {
        PolyVec::zero(self.field, self.nvars).merge(self, c, m)
    }

    /// Multiplies every component by the polynomial `p` (a component-0
    /// vector).
    pub fn mul_poly(&self, p: &Poly) -> PolyVec {
        let mut acc = PolyVec::zero(self.field, self.nvars);
        for t in &p.terms {
            acc = acc.merge(self, &t.coef, &t.mono);
        }
        acc
    }

    /// Moves every component `i` to `i + offset`.
    pub fn shift_components(&self, offset: usize) -> PolyVec {
        PolyVec {
            nvars: self.nvars,
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    comp: t.comp + offset,
                    mono: t.mono.clone(),
                    coef: t.coef.clone(),
                })
                .collect(),
        }
    }

    /// Keeps components in `[lo, hi)` and renumbers them from 0.
    pub fn restrict(&self, lo: usize, hi: usize) -> PolyVec {
        let terms = self
            .terms
            .iter()
            .filter(|t| t.comp >= lo && t.comp < hi)
            .map(|t| Term {
                comp: t.comp - lo,
                mono: t.mono.clone(),
                coef: t.coef.clone(),
            })
            .collect();
        // order is preserved by a uniform shift of components
        PolyVec {
            nvars: self.nvars,
            field: self.field,
            terms,
        }
    }

    /// Applies a component substitution `e_i ↦ images[i]`.
    pub fn substitute(&self, images: &[PolyVec]) -> PolyVec {
        let mut acc = PolyVec::zero(self.field, self.nvars);
        for t in &self.terms {
            acc = acc.merge(&images[t.comp], &t.coef, &t.mono);
        }
        acc
    }

    /// The polynomial in component `i` (as a component-0 vector).
    pub fn component(&self, i: usize) -> Poly {
        self.restrict(i, i + 1)
    }

    /// Builds a vector from per-component polynomials.
    pub fn from_components(field: Field, nvars: usize, comps: &[Poly]) -> PolyVec {
        let mut terms = Vec::new();
        for (i, p) in comps.iter().enumerate() {
            for t in &p.terms {
                terms.push(Term {
                    comp: i,
                    mono: t.mono.clone(),
                    coef: t.coef.clone(),
                });
            }
        }
        PolyVec::from_terms(field, nvars, terms)
    }

    /// Value of the constant part (`x = 0`) of a polynomial.
    pub fn constant_coefficient(&self, comp: usize) -> Scalar {
        self.terms
            .iter()
            .find(|t| t.comp == comp && t.mono.is_one())
            .map(|t| t.coef.clone())
            .unwrap_or_else(|| self.field.zero())
    }

    /// Multiplies so that the leading coefficient becomes one.
    pub fn monic(&self) -> PolyVec {
        match self.leading() {
            None => self.clone(),
            Some(t) => self.scale(&t.coef.inv().expect("nonzero")),
        }
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let multi = self.terms.iter().any(|t| t.comp > 0);
        let mut s = String::new();
        for (k, t) in self.terms.iter().rev().enumerate() {
            let neg = t.coef.is_negative();
            let c = if neg { -&t.coef } else { t.coef.clone() };
            if k > 0 {
                s.push_str(if neg { " - " } else { " + " });
            } else if neg {
                s.push('-');
            }
            let m = t.mono.fmt_with(names);
            if m == "1" {
                s.push_str(&c.to_string());
            } else if c.is_one() {
                s.push_str(&m);
            } else {
                s.push_str(&format!("{c}*{m}"));
            }
            if multi {
                s.push_str(&format!("*e{}", t.comp));
            }
        }
        s
    }
}

impl fmt::Debug for PolyVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.fmt_with(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_orders_as_expected() {
        let xy = Monomial(vec![1, 1, 0]);
        let xz = Monomial(vec![1, 0, 1]);
        let yy = Monomial(vec![0, 2, 0]);
        // x*y > y^2 > x*z in grevlex with x > y > z
        assert_eq!(xy.cmp_grevlex(&yy), Ordering::Greater);
        assert_eq!(yy.cmp_grevlex(&xz), Ordering::Greater);
        assert_eq!(Monomial::of_degree(3, 2).len(), 6);
        assert_eq!(Monomial::of_degree(2, -1).len(), 0);
    }

    #[test]
    fn arithmetic_cancels() {
        let f = Field::Fp(101);
        let x = PolyVec::variable(f, 2, 0);
        let y = PolyVec::variable(f, 2, 1);
        let p = x.add(&y);
        assert!(p.sub(&p).is_zero());
        let sq = p.mul_poly(&p);
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.degree(&[0]), Some(2));
    }
}

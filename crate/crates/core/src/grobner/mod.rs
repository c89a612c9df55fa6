//! Gröbner bases of submodules of graded free modules over `k[x_1..x_n]`,
//! normal forms and Schreyer syzygies.
//!
//! The module order is position-over-term with grevlex on monomials. Pairs
//! are processed by the normal strategy (smallest lcm degree first, ties
//! broken by pair index), so every basis is a deterministic function of its
//! input.

mod poly;

use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

pub use poly::{cmp_pot, Monomial, Poly, PolyVec, Term};

use crate::error::{Error, Result};
use crate::linalg::Field;

static PAIR_BUDGET: AtomicU64 = AtomicU64::new(200_000);

/// Caps the number of S-pairs a single Buchberger run may reduce.
pub fn set_pair_budget(pairs: u64) {
    PAIR_BUDGET.store(pairs, AtomicOrdering::Relaxed);
}

pub fn pair_budget() -> u64 {
    PAIR_BUDGET.load(AtomicOrdering::Relaxed)
}

/// A reduced Gröbner basis of a submodule of `R^rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub field: Field,
    pub nvars: usize,
    pub rank: usize,
    pub twists: Vec<i32>,
    pub gens: Vec<PolyVec>,
}

fn leading_divisor<'a>(gens: &'a [PolyVec], t: &Term) -> Option<&'a PolyVec> {
    gens.iter().find(|g| {
        let l = g.leading().expect("basis elements are nonzero");
        l.comp == t.comp && l.mono.divides(&t.mono)
    })
}

/// Full reduction of `v` against `gens` (any list; a Gröbner basis gives
/// canonical remainders).
pub fn reduce(v: &PolyVec, gens: &[PolyVec]) -> PolyVec {
    let mut p = v.clone();
    let mut rem: Vec<Term> = Vec::new();
    while let Some(lt) = p.leading().cloned() {
        match leading_divisor(gens, &lt) {
            Some(g) => {
                let gl = g.leading().unwrap();
                let c = -(&lt.coef * &gl.coef.inv().unwrap());
                let m = gl.mono.quotient(&lt.mono);
                p = p.add_scaled(&c, &m, g);
            }
            None => {
                rem.push(p.pop_leading().unwrap());
            }
        }
    }
    PolyVec::from_terms(v.field(), v.nvars(), rem)
}

/// Division with quotients: returns `(q, r)` with `v = Σ q_i gens_i + r`.
pub fn divide(v: &PolyVec, gens: &[PolyVec]) -> (Vec<Poly>, PolyVec) {
    let f = v.field();
    let n = v.nvars();
    let mut q = vec![PolyVec::zero(f, n); gens.len()];
    let mut p = v.clone();
    let mut rem: Vec<Term> = Vec::new();
    while let Some(lt) = p.leading().cloned() {
        let hit = gens.iter().position(|g| {
            let l = g.leading().expect("nonzero divisor");
            l.comp == lt.comp && l.mono.divides(&lt.mono)
        });
        match hit {
            Some(i) => {
                let gl = gens[i].leading().unwrap();
                let c = &lt.coef * &gl.coef.inv().unwrap();
                let m = gl.mono.quotient(&lt.mono);
                p = p.add_scaled(&-c.clone(), &m, &gens[i]);
                q[i] = q[i].add(&PolyVec::term(f, 0, m, c));
            }
            None => rem.push(p.pop_leading().unwrap()),
        }
    }
    (q, PolyVec::from_terms(f, n, rem))
}

fn spoly(a: &PolyVec, b: &PolyVec) -> PolyVec {
    let la = a.leading().unwrap();
    let lb = b.leading().unwrap();
    let l = la.mono.lcm(&lb.mono);
    let ca = la.coef.inv().unwrap();
    let cb = lb.coef.inv().unwrap();
    let left = a.mul_term(&ca, &la.mono.quotient(&l));
    left.add_scaled(&-cb, &lb.mono.quotient(&l), b)
}

fn lcm_degree(a: &PolyVec, b: &PolyVec, twists: &[i32]) -> i32 {
    let la = a.leading().unwrap();
    let lb = b.leading().unwrap();
    la.mono.lcm(&lb.mono).degree() + twists[la.comp]
}

/// Buchberger's algorithm. The result is reduced, monic and sorted by
/// increasing leading term.
pub fn buchberger(
    field: Field,
    nvars: usize,
    twists: &[i32],
    gens: &[PolyVec],
) -> Result<GroebnerBasis> {
    let budget = pair_budget();
    let mut basis: Vec<PolyVec> = Vec::new();
    for g in gens {
        let r = reduce(g, &basis);
        if !r.is_zero() {
            basis.push(r.monic());
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut done: std::collections::HashSet<(usize, usize)> = Default::default();
    for j in 0..basis.len() {
        for i in 0..j {
            if basis[i].leading().unwrap().comp == basis[j].leading().unwrap().comp {
                pairs.push((i, j));
            }
        }
    }
    let mut processed = 0u64;
    while !pairs.is_empty() {
        let (idx, _) = pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, &(i, j))| (lcm_degree(&basis[i], &basis[j], twists), j, i))
            .unwrap();
        let (i, j) = pairs.swap_remove(idx);
        done.insert((i, j));
        let li = basis[i].leading().unwrap().clone();
        let lj = basis[j].leading().unwrap().clone();
        let l = li.mono.lcm(&lj.mono);
        // Buchberger's chain criterion
        let chain = (0..basis.len()).any(|k| {
            if k == i || k == j {
                return false;
            }
            let lk = basis[k].leading().unwrap();
            if lk.comp != li.comp || !lk.mono.divides(&l) {
                return false;
            }
            let key = |a: usize, b: usize| (a.min(b), a.max(b));
            done.contains(&key(i, k)) && done.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        processed += 1;
        if processed > budget {
            return Err(Error::BudgetExceeded(format!(
                "Buchberger exceeded {budget} S-pair reductions"
            )));
        }
        let r = reduce(&spoly(&basis[i], &basis[j]), &basis);
        if !r.is_zero() {
            let r = r.monic();
            let c = r.leading().unwrap().comp;
            let n = basis.len();
            basis.push(r);
            for k in 0..n {
                if basis[k].leading().unwrap().comp == c {
                    pairs.push((k, n));
                }
            }
        }
    }
    Ok(GroebnerBasis {
        field,
        nvars,
        rank: twists.len(),
        twists: twists.to_vec(),
        gens: interreduce(basis),
    })
}

fn interreduce(basis: Vec<PolyVec>) -> Vec<PolyVec> {
    // drop elements whose leading term is divisible by another's
    let mut keep: Vec<PolyVec> = Vec::new();
    let mut sorted = basis;
    sorted.sort_by(|a, b| {
        let la = a.leading().unwrap();
        let lb = b.leading().unwrap();
        cmp_pot(la.comp, &la.mono, lb.comp, &lb.mono)
    });
    for g in sorted {
        let lg = g.leading().unwrap().clone();
        if keep.iter().any(|h| {
            let lh = h.leading().unwrap();
            lh.comp == lg.comp && lh.mono.divides(&lg.mono)
        }) {
            continue;
        }
        keep.push(g);
    }
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<PolyVec> = keep
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        // the leading term is irreducible by construction; reduce the tail
        let mut g = keep[i].clone();
        let lt = g.pop_leading().unwrap();
        let tail = reduce(&g, &others);
        let head = PolyVec::term(g.field(), lt.comp, lt.mono, lt.coef);
        out.push(head.add(&tail).monic());
    }
    out
}

impl GroebnerBasis {
    pub fn normal_form(&self, v: &PolyVec) -> PolyVec {
        reduce(v, &self.gens)
    }

    pub fn contains(&self, v: &PolyVec) -> bool {
        self.normal_form(v).is_zero()
    }

    /// True when `c · m · e_comp` is a leading-term multiple.
    pub fn is_leading_multiple(&self, comp: usize, m: &Monomial) -> bool {
        self.gens.iter().any(|g| {
            let l = g.leading().unwrap();
            l.comp == comp && l.mono.divides(m)
        })
    }

    /// Schreyer generators of the syzygy module of `gens` (vectors in
    /// `R^{gens.len()}`), obtained by lifting every S-pair reduction.
    pub fn syzygies(&self) -> Vec<PolyVec> {
        let f = self.field;
        let mut out = Vec::new();
        for j in 0..self.gens.len() {
            for i in 0..j {
                let li = self.gens[i].leading().unwrap();
                let lj = self.gens[j].leading().unwrap();
                if li.comp != lj.comp {
                    continue;
                }
                let l = li.mono.lcm(&lj.mono);
                let ci = li.coef.inv().unwrap();
                let cj = lj.coef.inv().unwrap();
                let s = spoly(&self.gens[i], &self.gens[j]);
                let (q, r) = divide(&s, &self.gens);
                debug_assert!(r.is_zero(), "not a Gröbner basis");
                let mut syz = PolyVec::term(f, i, li.mono.quotient(&l), ci)
                    .add(&PolyVec::term(f, j, lj.mono.quotient(&l), -cj));
                for (k, qk) in q.iter().enumerate() {
                    syz = syz.sub(&qk.shift_components(k));
                }
                if !syz.is_zero() {
                    out.push(syz);
                }
            }
        }
        out
    }

    /// Twists of the generators, i.e. the twists of the syzygy module's
    /// ambient free module.
    pub fn generator_degrees(&self) -> Vec<i32> {
        self.gens
            .iter()
            .map(|g| g.degree(&self.twists).expect("homogeneous basis"))
            .collect()
    }
}

/// A submodule `N = <g_1..g_m> ⊆ R^r` together with a Gröbner basis of the
/// graph `{(Σ c_j g_j, c)}` in `R^r ⊕ R^m`. Because the order is
/// position-over-term with the `R^r` components first, the basis elements
/// with vanishing `R^r` part generate the syzygies of the `g_j`, and
/// reductions record how an element of `N` is expressed in the `g_j`.
#[derive(Clone, Debug)]
pub struct TrackedBasis {
    rank: usize,
    count: usize,
    graph: GroebnerBasis,
}

impl TrackedBasis {
    /// `gen_degrees[j]` is the degree of `g_j` (needed for zero generators).
    pub fn new(
        field: Field,
        nvars: usize,
        twists: &[i32],
        gens: &[PolyVec],
        gen_degrees: &[i32],
    ) -> Result<TrackedBasis> {
        let r = twists.len();
        let m = gens.len();
        let mut tw = twists.to_vec();
        tw.extend_from_slice(gen_degrees);
        let aug: Vec<PolyVec> = gens
            .iter()
            .enumerate()
            .map(|(j, g)| g.add(&PolyVec::unit(field, nvars, r + j)))
            .collect();
        let graph = buchberger(field, nvars, &tw, &aug)?;
        Ok(TrackedBasis {
            rank: r,
            count: m,
            graph,
        })
    }

    /// Reduces the `R^r` part of `(v, 0)`; returns the `R^r` remainder and
    /// the accumulated `R^m` part.
    fn reduce_graph(&self, v: &PolyVec) -> (PolyVec, PolyVec) {
        let f = self.graph.field;
        let n = self.graph.nvars;
        let mut p = v.clone();
        let mut rem: Vec<Term> = Vec::new();
        loop {
            let Some(lt) = p.leading().cloned() else { break };
            if lt.comp >= self.rank {
                break;
            }
            match leading_divisor(&self.graph.gens, &lt) {
                Some(g) => {
                    let gl = g.leading().unwrap();
                    let c = -(&lt.coef * &gl.coef.inv().unwrap());
                    let m = gl.mono.quotient(&lt.mono);
                    p = p.add_scaled(&c, &m, g);
                }
                None => rem.push(p.pop_leading().unwrap()),
            }
        }
        (
            PolyVec::from_terms(f, n, rem),
            p.restrict(self.rank, self.rank + self.count),
        )
    }

    pub fn contains(&self, v: &PolyVec) -> bool {
        self.reduce_graph(v).0.is_zero()
    }

    /// Normal form of `v` modulo the submodule.
    pub fn normal_form(&self, v: &PolyVec) -> PolyVec {
        self.reduce_graph(v).0
    }

    /// Coefficients `c` with `Σ c_j g_j = v`, as a vector in `R^m`.
    pub fn lift(&self, v: &PolyVec) -> Option<PolyVec> {
        let (rem, acc) = self.reduce_graph(v);
        if rem.is_zero() {
            Some(acc.neg())
        } else {
            None
        }
    }

    /// Generators of the syzygy module of the `g_j`.
    pub fn syzygies(&self) -> Vec<PolyVec> {
        self.graph
            .gens
            .iter()
            .filter(|g| g.leading().unwrap().comp >= self.rank)
            .map(|g| g.restrict(self.rank, self.rank + self.count))
            .collect()
    }

    /// A Gröbner basis of the submodule itself (the `R^r` parts of the graph
    /// basis elements with leading term in `R^r`).
    pub fn submodule_basis(&self) -> Vec<PolyVec> {
        self.graph
            .gens
            .iter()
            .filter(|g| g.leading().unwrap().comp < self.rank)
            .map(|g| g.restrict(0, self.rank))
            .collect()
    }
}

/// Indices of a minimal generating subset of the submodule generated by
/// homogeneous `gens` (graded Nakayama): generators are visited by degree and
/// kept only when not already in the span of those kept before.
pub fn minimal_subset(
    field: Field,
    nvars: usize,
    twists: &[i32],
    gens: &[PolyVec],
) -> Result<Vec<usize>> {
    let mut order: Vec<usize> = (0..gens.len()).filter(|&i| !gens[i].is_zero()).collect();
    order.sort_by_key(|&i| (gens[i].degree(twists).unwrap_or(i32::MAX), i));
    let mut kept: Vec<usize> = Vec::new();
    let mut gb: Option<GroebnerBasis> = None;
    for i in order {
        let redundant = gb.as_ref().is_some_and(|b| b.contains(&gens[i]));
        if redundant {
            continue;
        }
        kept.push(i);
        let cur: Vec<PolyVec> = kept.iter().map(|&k| gens[k].clone()).collect();
        gb = Some(buchberger(field, nvars, twists, &cur)?);
    }
    kept.sort_unstable();
    Ok(kept)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring3() -> (Field, usize) {
        (Field::Fp(101), 3)
    }

    fn var(i: usize) -> PolyVec {
        let (f, n) = ring3();
        PolyVec::variable(f, n, i)
    }

    fn mono(e: [u16; 3]) -> PolyVec {
        let (f, _) = ring3();
        PolyVec::term(f, 0, Monomial(e.to_vec()), f.one())
    }

    /// Naive closure: keep adding nonzero S-polynomial remainders until no
    /// pair produces anything new.
    fn naive_closure(gens: Vec<PolyVec>) -> Vec<PolyVec> {
        let mut g = gens;
        loop {
            let mut added = false;
            let n = g.len();
            'outer: for i in 0..n {
                for j in 0..i {
                    let r = reduce(&spoly(&g[i], &g[j]), &g);
                    if !r.is_zero() {
                        g.push(r);
                        added = true;
                        break 'outer;
                    }
                }
            }
            if !added {
                return g;
            }
        }
    }

    #[test]
    fn single_generator_and_monomials() {
        let f = Field::Fp(2);
        let x2 = PolyVec::term(f, 0, Monomial(vec![2]), f.one());
        let gb = buchberger(f, 1, &[0], &[x2.clone()]).unwrap();
        assert_eq!(gb.gens, vec![x2.clone()]);
        assert!(gb.normal_form(&x2).is_zero());

        let f = Field::Fp(101);
        let x = PolyVec::variable(f, 2, 0);
        let y = PolyVec::variable(f, 2, 1);
        let gb = buchberger(f, 2, &[0], &[x.clone(), y.clone()]).unwrap();
        assert_eq!(gb.gens.len(), 2);
        let one = PolyVec::constant(f, 2, f.one());
        assert_eq!(gb.normal_form(&one), one);
    }

    #[test]
    fn twisted_cubic_style_ideal() {
        let (f, n) = ring3();
        let g1 = mono([2, 0, 0]).sub(&mono([0, 1, 1]));
        let g2 = mono([1, 1, 0]).sub(&mono([0, 0, 2]));
        let gb = buchberger(f, n, &[0], &[g1.clone(), g2.clone()]).unwrap();
        let naive = naive_closure(vec![g1.clone(), g2.clone()]);
        // same ideal: each basis reduces the other's elements to zero
        for p in &naive {
            assert!(gb.contains(p));
        }
        for p in &gb.gens {
            assert!(reduce(p, &naive).is_zero());
        }
        assert!(gb.gens.len() >= 3, "the S-pair remainder joins the basis");
        assert!(gb.contains(&g1) && gb.contains(&g2));
        assert!(gb.syzygies().iter().all(|s| s.substitute(&gb.gens).is_zero()));
    }

    #[test]
    fn hand_reduction() {
        let f = Field::Fp(101);
        let x = PolyVec::variable(f, 2, 0);
        let y = PolyVec::variable(f, 2, 1);
        let x2 = x.mul_poly(&x);
        let gb = buchberger(f, 2, &[0], &[x2.sub(&y)]).unwrap();
        let x3 = x2.mul_poly(&x);
        assert_eq!(gb.normal_form(&x3), x.mul_poly(&y));
    }

    #[test]
    fn koszul_syzygies() {
        let f = Field::Fp(101);
        let x = PolyVec::variable(f, 1, 0);
        let gb = buchberger(f, 1, &[0], &[x]).unwrap();
        assert!(gb.syzygies().is_empty());

        let gb = buchberger(f, 3, &[0], &[var(0), var(1)]).unwrap();
        let s = gb.syzygies();
        assert_eq!(s.len(), 1);
        assert!(s[0].substitute(&gb.gens).is_zero());

        let gb = buchberger(f, 3, &[0], &[var(0), var(1), var(2)]).unwrap();
        let s = gb.syzygies();
        assert_eq!(s.len(), 3);
        for v in &s {
            assert!(v.substitute(&gb.gens).is_zero());
            assert_eq!(v.degree(&gb.generator_degrees()), Some(2));
        }
    }

    #[test]
    fn tracked_lift_and_syzygies() {
        let (f, n) = ring3();
        let gens = vec![var(0), var(1), var(0).add(&var(1))];
        let tb = TrackedBasis::new(f, n, &[0], &gens, &[1, 1, 1]).unwrap();
        let target = var(0).mul_poly(&var(2)).add(&var(1).mul_poly(&var(1)));
        let c = tb.lift(&target).unwrap();
        assert_eq!(c.substitute(&gens), target);
        assert!(tb.lift(&var(2)).is_none());
        let syz = tb.syzygies();
        assert!(!syz.is_empty());
        for s in &syz {
            assert!(s.substitute(&gens).is_zero());
        }
        // the linear relation e0 + e1 - e2 is among the generated syzygies
        let rel = PolyVec::unit(f, n, 0)
            .add(&PolyVec::unit(f, n, 1))
            .sub(&PolyVec::unit(f, n, 2));
        let syz_gb = buchberger(f, n, &[1, 1, 1], &syz).unwrap();
        assert!(syz_gb.contains(&rel));
    }

    #[test]
    fn minimal_subset_drops_redundant() {
        let (f, n) = ring3();
        let gens = vec![var(0).mul_poly(&var(1)), var(0), var(1), var(0).add(&var(1))];
        let keep = minimal_subset(f, n, &[0], &gens).unwrap();
        assert_eq!(keep, vec![1, 2]);
    }
}

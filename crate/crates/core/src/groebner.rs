//! Buchberger's algorithm and finite presentations of local quotients.
//!
//! A local quotient `O/I` (with `O` the convergent power series ring) is
//! computed globally: for increasing `N` we take a degrevlex Gröbner basis of
//! `I + m^N` and count standard monomials. Once the count agrees for `N` and
//! `N + 1` we have `m^N ⊆ I + m^(N+1)`, so `m^N ⊆ I·O` by Nakayama and the
//! global quotient by `I + m^N` *is* the local quotient. Normal forms in this
//! presentation are exact classes, not classes up to a unit.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, Polynomial, Term, VariableSet};
use crate::Rational;

/// Default hard cap on the truncation degree.
pub const DEFAULT_DEGREE_CAP: u32 = 128;

/// A reduced Gröbner basis.
///
/// When built with a truncation degree `N` the basis generates `I + m^N`;
/// the degree-`N` monomials it contains are kept explicitly, and every term
/// of degree `>= N` reduces to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    vars: VariableSet,
    order: MonomialOrder,
    // monic, ascending by leading monomial
    generators: Vec<Polynomial>,
    truncation: Option<u32>,
}

impl GroebnerBasis {
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn vars(&self) -> &VariableSet {
        &self.vars
    }

    pub fn truncation(&self) -> Option<u32> {
        self.truncation
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.generators
            .iter()
            .map(|g| g.leading_monomial().expect("nonzero generator").clone())
            .collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.generators
            .iter()
            .any(|g| g.leading_monomial().is_some_and(Monomial::is_one))
    }

    /// Generators that are not implied by the truncation.
    fn reducers(&self) -> Vec<&[Term]> {
        self.generators
            .iter()
            .filter(|g| match self.truncation {
                Some(n) => g.leading_monomial().unwrap().total_degree() < n,
                None => true,
            })
            .map(|g| g.terms())
            .collect()
    }

    /// True when `m` is divisible by no leading monomial.
    pub fn is_standard(&self, m: &Monomial) -> bool {
        if let Some(n) = self.truncation {
            if m.total_degree() >= n {
                return false;
            }
        }
        !self
            .generators
            .iter()
            .any(|g| g.leading_monomial().unwrap().divides(m))
    }
}

/// Computes the reduced Gröbner basis of the ideal generated by `generators`.
pub fn buchberger(generators: &[Polynomial], order: MonomialOrder) -> Result<GroebnerBasis> {
    let vars = generators.first().ok_or(Error::EmptyInput)?.vars().clone();
    for g in generators {
        if *g.vars() != vars {
            return Err(Error::InvalidVariables(
                "generators over different variable sets".into(),
            ));
        }
    }
    Ok(Engine::run(&vars, generators, None, order))
}

/// Gröbner basis of `(generators) + m^degree`.
pub fn buchberger_truncated(
    generators: &[Polynomial],
    degree: u32,
    order: MonomialOrder,
) -> Result<GroebnerBasis> {
    let vars = generators.first().ok_or(Error::EmptyInput)?.vars().clone();
    Ok(Engine::run(&vars, generators, Some(degree), order))
}

/// The unique remainder of `p` modulo `gb`.
pub fn normal_form(p: &Polynomial, gb: &GroebnerBasis) -> Polynomial {
    assert!(p.vars() == gb.vars(), "normal form across variable sets");
    let reducers = gb.reducers();
    let terms = reduce_full(p.terms().to_vec(), &reducers, gb.truncation);
    Polynomial::from_sorted_terms(p.vars(), terms)
}

/// `p - c * t * g`, dropping terms of degree `>= trunc` coming from `t * g`.
/// The leading term of `c*t*g` is assumed to cancel `p[0]` when `skip_lead`.
fn sub_scaled(p: &[Term], c: &Rational, t: &Monomial, g: &[Term], trunc: Option<u32>, skip_lead: bool) -> Vec<Term> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let (mut i, mut j) = if skip_lead { (1, 1) } else { (0, 0) };
    let limit = trunc.unwrap_or(u32::MAX);
    let next_g = |j: &mut usize| -> Option<(Monomial, Rational)> {
        while *j < g.len() {
            let (m, a) = &g[*j];
            *j += 1;
            if m.total_degree() + t.total_degree() < limit {
                return Some((m.mul(t), -(a * c)));
            }
        }
        None
    };
    let mut pending = next_g(&mut j);
    while i < p.len() {
        match &pending {
            None => {
                out.extend_from_slice(&p[i..]);
                return out;
            }
            Some((m, a)) => match p[i].0.cmp(m) {
                std::cmp::Ordering::Greater => {
                    out.push(p[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((m.clone(), a.clone()));
                    pending = next_g(&mut j);
                }
                std::cmp::Ordering::Equal => {
                    let s = &p[i].1 + a;
                    if !s.is_zero() {
                        out.push((m.clone(), s));
                    }
                    i += 1;
                    pending = next_g(&mut j);
                }
            },
        }
    }
    while let Some(term) = pending {
        out.push(term);
        pending = next_g(&mut j);
    }
    out
}

fn find_reducer<'a>(m: &Monomial, reducers: &[&'a [Term]]) -> Option<(&'a [Term], Monomial)> {
    reducers
        .iter()
        .find_map(|g| g[0].0.quotient_of(m).map(|t| (*g, t)))
}

/// Fully reduces `p` (sorted, descending) by monic `reducers`.
fn reduce_full(mut p: Vec<Term>, reducers: &[&[Term]], trunc: Option<u32>) -> Vec<Term> {
    let mut done: Vec<Term> = Vec::new();
    if let Some(n) = trunc {
        p.retain(|(m, _)| m.total_degree() < n);
    }
    let mut start = 0;
    while start < p.len() {
        let (m, c) = &p[start];
        match find_reducer(m, reducers) {
            Some((g, t)) => {
                let c = c.clone();
                p = sub_scaled(&p[start..], &c, &t, g, trunc, true);
                start = 0;
            }
            None => {
                done.push(p[start].clone());
                start += 1;
                // keep the unreduced tail compact
                if start > 32 && start * 2 > p.len() {
                    p.drain(..start);
                    start = 0;
                }
            }
        }
    }
    done
}

/// Reduces only until the leading term is irreducible.
fn reduce_lead(mut p: Vec<Term>, reducers: &[&[Term]], trunc: Option<u32>) -> Vec<Term> {
    if let Some(n) = trunc {
        p.retain(|(m, _)| m.total_degree() < n);
    }
    while let Some((m, c)) = p.first() {
        match find_reducer(m, reducers) {
            Some((g, t)) => {
                let c = c.clone();
                p = sub_scaled(&p, &c, &t, g, trunc, true);
            }
            None => break,
        }
    }
    p
}

fn make_monic(p: &mut [Term]) {
    let lc = p[0].1.clone();
    if !lc.is_one() {
        let inv = lc.recip();
        for (_, c) in p.iter_mut() {
            *c *= &inv;
        }
    }
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Engine {
    polys: Vec<Vec<Term>>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    trunc: Option<u32>,
}

impl Engine {
    fn run(
        vars: &VariableSet,
        generators: &[Polynomial],
        trunc: Option<u32>,
        order: MonomialOrder,
    ) -> GroebnerBasis {
        let mut engine = Engine {
            polys: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
            trunc,
        };
        if let Some(n) = trunc {
            for m in Monomial::all_of_degree(vars.arity(), n) {
                engine.insert(vec![(m, Rational::one())]);
            }
        }
        for g in generators {
            let reduced = engine.reduce(g.terms().to_vec(), false);
            if !reduced.is_empty() {
                engine.insert(reduced);
            }
        }
        while let Some(pair) = engine.select_pair() {
            let s = engine.s_polynomial(&pair);
            let h = engine.reduce(s, false);
            if !h.is_empty() {
                engine.insert(h);
            }
        }
        engine.finish(vars, order)
    }

    fn reducer_slices(&self) -> Vec<&[Term]> {
        let limit = self.trunc.unwrap_or(u32::MAX);
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(p, a)| **a && p[0].0.total_degree() < limit)
            .map(|(p, _)| p.as_slice())
            .collect()
    }

    fn reduce(&self, p: Vec<Term>, full: bool) -> Vec<Term> {
        let reducers = self.reducer_slices();
        if full {
            reduce_full(p, &reducers, self.trunc)
        } else {
            reduce_lead(p, &reducers, self.trunc)
        }
    }

    fn lm(&self, i: usize) -> &Monomial {
        &self.polys[i][0].0
    }

    fn s_polynomial(&self, pair: &Pair) -> Vec<Term> {
        let (f, g) = (&self.polys[pair.i], &self.polys[pair.j]);
        let tf = f[0].0.quotient_of(&pair.lcm).expect("lcm");
        let tg = g[0].0.quotient_of(&pair.lcm).expect("lcm");
        // both monic: S = tf*f - tg*g, leading terms cancel
        let shifted: Vec<Term> = f[1..]
            .iter()
            .filter(|(m, _)| match self.trunc {
                Some(n) => m.total_degree() + tf.total_degree() < n,
                None => true,
            })
            .map(|(m, c)| (m.mul(&tf), c.clone()))
            .collect();
        sub_scaled(&shifted, &Rational::one(), &tg, &g[1..], self.trunc, false)
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    /// Gebauer–Möller update with the new element `h`.
    fn insert(&mut self, mut h: Vec<Term>) {
        make_monic(&mut h);
        let k = self.polys.len();
        let h_lm = h[0].0.clone();
        let h_is_monomial = h.len() == 1;
        self.polys.push(h);
        self.active.push(false);

        let candidates: Vec<Pair> = (0..k)
            .filter(|&g| self.active[g])
            .filter(|&g| !(h_is_monomial && self.polys[g].len() == 1))
            .map(|g| Pair {
                i: g,
                j: k,
                lcm: self.lm(g).lcm(&h_lm),
            })
            .collect();

        // chain criterion among the new pairs
        let mut kept: Vec<Pair> = Vec::new();
        for (idx, p) in candidates.iter().enumerate() {
            let coprime = self.lm(p.i).is_coprime(&h_lm);
            let dominated = candidates
                .iter()
                .enumerate()
                .any(|(o, q)| {
                    o != idx
                        && q.lcm.divides(&p.lcm)
                        && (q.lcm != p.lcm || o < idx)
                });
            if coprime || !dominated {
                kept.push(p.clone());
            }
        }
        // product criterion
        kept.retain(|p| !self.lm(p.i).is_coprime(&h_lm));

        // drop old pairs made redundant by h
        let polys = &self.polys;
        self.pairs.retain(|p| {
            !(h_lm.divides(&p.lcm)
                && polys[p.i][0].0.lcm(&h_lm) != p.lcm
                && polys[p.j][0].0.lcm(&h_lm) != p.lcm)
        });
        self.pairs.extend(kept);

        for g in 0..k {
            if self.active[g] && h_lm.divides(&self.polys[g][0].0) {
                self.active[g] = false;
            }
        }
        self.active[k] = true;
    }

    fn select_pair(&mut self) -> Option<Pair> {
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| a.lcm.cmp(&b.lcm).then((a.i, a.j).cmp(&(b.i, b.j))))
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }

    fn finish(self, vars: &VariableSet, order: MonomialOrder) -> GroebnerBasis {
        let limit = self.trunc.unwrap_or(u32::MAX);
        let members: Vec<&Vec<Term>> = self
            .polys
            .iter()
            .zip(&self.active)
            .filter(|(_, a)| **a)
            .map(|(p, _)| p)
            .collect();
        let mut generators: Vec<Polynomial> = Vec::with_capacity(members.len());
        for (idx, g) in members.iter().enumerate() {
            let others: Vec<&[Term]> = members
                .iter()
                .enumerate()
                .filter(|(o, p)| *o != idx && p[0].0.total_degree() < limit)
                .map(|(_, p)| p.as_slice())
                .collect();
            let mut terms = vec![g[0].clone()];
            terms.extend(reduce_full(g[1..].to_vec(), &others, self.trunc));
            generators.push(Polynomial::from_sorted_terms(vars, terms));
        }
        generators.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
        GroebnerBasis {
            vars: vars.clone(),
            order,
            generators,
            truncation: self.trunc,
        }
    }
}

/// A finite-dimensional local quotient `O/I`, presented by the standard
/// monomials of a Gröbner basis of `I + m^N`.
#[derive(Debug, Clone)]
pub struct QuotientPresentation {
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    gb: GroebnerBasis,
    truncation: u32,
}

impl QuotientPresentation {
    fn from_basis(gb: GroebnerBasis, truncation: u32) -> Self {
        let arity = gb.vars().arity();
        let mut basis = Vec::new();
        if !gb.is_unit_ideal() {
            for d in 0..truncation {
                let level: Vec<Monomial> = Monomial::all_of_degree(arity, d)
                    .into_iter()
                    .filter(|m| gb.is_standard(m))
                    .collect();
                // the staircase is an order ideal: an empty degree ends it
                if level.is_empty() {
                    break;
                }
                basis.extend(level);
            }
        }
        let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        QuotientPresentation {
            basis,
            index,
            gb,
            truncation,
        }
    }

    /// Standard monomials, ascending.
    pub fn basis_monomials(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn gb(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn vars(&self) -> &VariableSet {
        self.gb.vars()
    }

    /// Position of a standard monomial in the basis.
    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        normal_form(p, &self.gb)
    }

    /// Coordinates of the class of `p` in the standard monomial basis.
    pub fn class_vector(&self, p: &Polynomial) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dimension()];
        for (m, c) in self.normal_form(p).terms() {
            let i = self.index[m];
            v[i] = c.clone();
        }
        v
    }
}

/// Presents `O/(generators)` for an ideal supported at the origin, using the
/// default degree cap.
pub fn local_quotient(generators: &[Polynomial]) -> Result<QuotientPresentation> {
    local_quotient_with_cap(generators, DEFAULT_DEGREE_CAP)
}

/// Start at `N = 2 + 2·maxdeg`; while `dim(I + m^N) != dim(I + m^(N+1))`,
/// grow `N` by half (rounded up). Fails with `NonIsolated` past `cap`.
pub fn local_quotient_with_cap(generators: &[Polynomial], cap: u32) -> Result<QuotientPresentation> {
    let first = generators.first().ok_or(Error::EmptyInput)?;
    let arity = first.arity();
    // an unused variable gives a whole line in the zero locus
    let mut used = vec![false; arity];
    for g in generators {
        for (m, _) in g.terms() {
            for (i, e) in m.exponents().iter().enumerate() {
                used[i] |= *e > 0;
            }
        }
    }
    let has_unit = generators
        .iter()
        .any(|g| g.terms().iter().any(|(m, _)| m.is_one()));
    if !has_unit && used.iter().any(|u| !u) {
        return Err(Error::NonIsolated { cap });
    }

    let max_degree = generators.iter().filter_map(Polynomial::total_degree).max().unwrap_or(0);
    let mut n = 2 + 2 * max_degree;
    loop {
        if n > cap {
            return Err(Error::NonIsolated { cap });
        }
        let at_n = QuotientPresentation::from_basis(
            buchberger_truncated(generators, n, MonomialOrder::DegRevLex)?,
            n,
        );
        let next = QuotientPresentation::from_basis(
            buchberger_truncated(generators, n + 1, MonomialOrder::DegRevLex)?,
            n + 1,
        );
        if at_n.dimension() == next.dimension() {
            return Ok(at_n);
        }
        n = (3 * n).div_ceil(2);
    }
}

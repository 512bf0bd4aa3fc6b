//! Sparse multivariate polynomials over the rationals.
//!
//! A [`Polynomial`] is a list of `(Monomial, coefficient)` pairs sorted in
//! descending degree-reverse-lexicographic order, with no zero coefficients
//! and no repeated monomials. Polynomials are immutable values: every
//! arithmetic operation returns a new polynomial.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::Rational;

/// An ordered list of distinct variable names.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VariableSet {
    names: Arc<[String]>,
}

impl VariableSet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::InvalidVariables(format!("`{name}` is not an identifier")));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidVariables(format!("`{name}` appears twice")));
            }
        }
        Ok(VariableSet { names: names.into() })
    }

    /// Parses a comma separated list such as `"x,y,z"`.
    pub fn parse(list: &str) -> Result<Self> {
        let list = list.trim();
        if list.is_empty() {
            return Self::new(Vec::<String>::new());
        }
        Self::new(list.split(',').map(|s| s.trim().to_string()))
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The variable set `self` followed by `other`. Names must stay distinct.
    pub fn concat(&self, other: &VariableSet) -> Result<Self> {
        Self::new(self.names.iter().chain(other.names.iter()).cloned())
    }
}

impl fmt::Debug for VariableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names.join(","))
    }
}

impl fmt::Display for VariableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names.join(","))
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// An exponent vector together with its cached total degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: SmallVec<[u32; 6]>,
    degree: u32,
}

impl Monomial {
    pub fn new(exponents: &[u32]) -> Self {
        Monomial {
            degree: exponents.iter().sum(),
            exponents: SmallVec::from_slice(exponents),
        }
    }

    pub fn one(arity: usize) -> Self {
        Monomial {
            exponents: SmallVec::from_elem(0, arity),
            degree: 0,
        }
    }

    pub fn variable(arity: usize, index: usize) -> Self {
        let mut m = Self::one(arity);
        m.exponents[index] = 1;
        m.degree = 1;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn total_degree(&self) -> u32 {
        self.degree
    }

    pub fn arity(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree
            && self
                .exponents
                .iter()
                .zip(&other.exponents)
                .all(|(a, b)| a <= b)
    }

    /// `other / self`, provided `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exponents: other
                .exponents
                .iter()
                .zip(&self.exponents)
                .map(|(a, b)| a - b)
                .collect(),
            degree: other.degree - self.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exponents: SmallVec<[u32; 6]> = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .map(|(a, b)| *a.max(b))
            .collect();
        Monomial {
            degree: exponents.iter().sum(),
            exponents,
        }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exponents
            .iter()
            .zip(&other.exponents)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Every monomial in `arity` variables of total degree exactly `degree`,
    /// in ascending degrevlex order.
    pub fn all_of_degree(arity: usize, degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut current = vec![0u32; arity];
        fn rec(pos: usize, left: u32, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if pos + 1 == current.len() {
                current[pos] = left;
                out.push(Monomial::new(current));
                return;
            }
            for e in 0..=left {
                current[pos] = e;
                rec(pos + 1, left - e, current, out);
            }
            current[pos] = 0;
        }
        if arity == 0 {
            if degree == 0 {
                out.push(Monomial::one(0));
            }
            return out;
        }
        rec(0, degree, &mut current, &mut out);
        out.sort_by(degrevlex);
        out
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents.as_slice())
    }
}

/// Degree-reverse-lexicographic comparison over the fixed variable order.
pub fn degrevlex(a: &Monomial, b: &Monomial) -> Ordering {
    match a.degree.cmp(&b.degree) {
        Ordering::Equal => {}
        other => return other,
    }
    for (x, y) in a.exponents.iter().zip(&b.exponents).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        degrevlex(self, other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The monomial order used throughout. Only degrevlex over the declared
/// variable order is supported; it is global, so Buchberger terminates.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum MonomialOrder {
    #[default]
    DegRevLex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::DegRevLex => degrevlex(a, b),
        }
    }
}

/// `sum_i w_i * e_i` for a monomial `x^e`.
pub fn weighted_degree(m: &Monomial, weights: &[Rational]) -> Result<Rational> {
    if weights.len() != m.arity() {
        return Err(Error::LengthMismatch {
            expected: m.arity(),
            got: weights.len(),
        });
    }
    Ok(m.exponents()
        .iter()
        .zip(weights)
        .filter(|(e, _)| **e != 0)
        .map(|(e, w)| w * Rational::from_integer(BigInt::from(*e)))
        .fold(Rational::zero(), |acc, x| acc + x))
}

pub type Term = (Monomial, Rational);

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    vars: VariableSet,
    // descending degrevlex, nonzero coefficients, distinct monomials
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero(vars: &VariableSet) -> Self {
        Polynomial {
            vars: vars.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(vars: &VariableSet, c: Rational) -> Self {
        Self::term(vars, Monomial::one(vars.arity()), c)
    }

    pub fn one(vars: &VariableSet) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn term(vars: &VariableSet, m: Monomial, c: Rational) -> Self {
        debug_assert_eq!(m.arity(), vars.arity());
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn variable(vars: &VariableSet, index: usize) -> Result<Self> {
        if index >= vars.arity() {
            return Err(Error::IndexOutOfRange {
                index,
                arity: vars.arity(),
            });
        }
        Ok(Self::term(
            vars,
            Monomial::variable(vars.arity(), index),
            Rational::one(),
        ))
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and
    /// dropping zeros.
    pub fn from_terms(vars: &VariableSet, terms: impl IntoIterator<Item = Term>) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.arity(), vars.arity());
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        let mut terms: Vec<Term> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Polynomial {
            vars: vars.clone(),
            terms,
        }
    }

    /// Trusts the caller that `terms` is already canonical.
    pub(crate) fn from_sorted_terms(vars: &VariableSet, terms: Vec<Term>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn vars(&self) -> &VariableSet {
        &self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.arity()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    /// Largest total degree of a term; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.total_degree()).max()
    }

    /// Smallest total degree of a term (the order of vanishing at 0).
    pub fn order(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.total_degree()).min()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to variable `index`.
    pub fn partial_derivative(&self, index: usize) -> Result<Self> {
        if index >= self.arity() {
            return Err(Error::IndexOutOfRange {
                index,
                arity: self.arity(),
            });
        }
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponents()[index] > 0)
            .map(|(m, c)| {
                let e = m.exponents()[index];
                let mut exps = m.exponents().to_vec();
                exps[index] -= 1;
                (
                    Monomial::new(&exps),
                    c * Rational::from_integer(BigInt::from(e)),
                )
            });
        // d/dx_i keeps distinct monomials distinct but may reorder them.
        let mut terms: Vec<Term> = terms.collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Ok(Polynomial {
            vars: self.vars.clone(),
            terms,
        })
    }

    /// All first partials, in variable order.
    pub fn jacobian(&self) -> Vec<Polynomial> {
        (0..self.arity())
            .map(|i| self.partial_derivative(i).expect("index in range"))
            .collect()
    }

    /// Re-expresses the polynomial over `vars`, mapping variable `i` of
    /// `self` to variable `positions[i]` of the target set.
    pub fn embed(&self, vars: &VariableSet, positions: &[usize]) -> Self {
        assert_eq!(positions.len(), self.arity());
        let terms = self.terms.iter().map(|(m, c)| {
            let mut exps = vec![0u32; vars.arity()];
            for (i, e) in m.exponents().iter().enumerate() {
                exps[positions[i]] += e;
            }
            (Monomial::new(&exps), c.clone())
        });
        Self::from_terms(vars, terms)
    }

    /// Drops every term of total degree `>= degree`.
    pub fn truncate(&self, degree: u32) -> Self {
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() < degree)
                .cloned()
                .collect(),
        }
    }

    fn check_vars(&self, other: &Polynomial) {
        assert!(
            self.vars == other.vars,
            "polynomials over different variable sets: {:?} vs {:?}",
            self.vars,
            other.vars
        );
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        self.check_vars(other);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|(m, c)| {
            let c = if negate { -c } else { c.clone() };
            (m.clone(), c)
        }));
        Polynomial {
            vars: self.vars.clone(),
            terms: out,
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, true)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.check_vars(rhs);
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                *acc.entry(m1.mul(m2)).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        let mut terms: Vec<Term> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Polynomial {
            vars: self.vars.clone(),
            terms,
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} over {:?}", self.vars)
    }
}

/// Canonical text form; [`parse_polynomial`] reads it back to the same value.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let factors: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(i, e)| {
                    let name = &self.vars.names()[i];
                    if *e == 1 {
                        name.clone()
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Parses germ text such as `y^4 - x^5 + x^3*y^2` over `vars`.
///
/// Grammar (whitespace ignored):
///
/// ```text
/// expr   := ['-'|'+'] term (('+'|'-') term)*
/// term   := coef ['*'] factor ('*' factor)* | coef | factor ('*' factor)*
/// factor := var ['^' uint]
/// coef   := uint | uint '/' uint
/// var    := [A-Za-z][A-Za-z0-9_]*
/// ```
pub fn parse_polynomial(text: &str, vars: &VariableSet) -> Result<Polynomial> {
    Parser::new(text, vars).parse()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a VariableSet,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, vars: &'a VariableSet) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
            vars,
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<Polynomial> {
        let mut terms = Vec::new();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            None => return self.err("empty expression"),
            _ => 1,
        };
        loop {
            let (m, c) = self.term()?;
            terms.push((m, if sign < 0 { -c } else { c }));
            match self.peek() {
                None => break,
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                Some(c) => return self.err(format!("unexpected `{}`", c as char)),
            }
            self.pos += 1;
        }
        Ok(Polynomial::from_terms(self.vars, terms))
    }

    fn term(&mut self) -> Result<Term> {
        let arity = self.vars.arity();
        let mut exps = vec![0u32; arity];
        let mut coef = Rational::one();
        let mut need_factor = false;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                coef = self.coefficient()?;
                match self.peek() {
                    Some(b'*') => {
                        self.pos += 1;
                        need_factor = true;
                    }
                    Some(c) if c.is_ascii_alphabetic() => need_factor = true,
                    _ => {}
                }
            }
            Some(c) if c.is_ascii_alphabetic() => need_factor = true,
            Some(c) => return self.err(format!("expected a term, found `{}`", c as char)),
            None => return self.err("expected a term, found end of input"),
        }
        if need_factor {
            loop {
                let (index, e) = self.factor()?;
                exps[index] += e;
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        Ok((Monomial::new(&exps), coef))
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an unsigned integer");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("validated digits"))
    }

    fn coefficient(&mut self) -> Result<Rational> {
        let num = self.uint()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let at = {
                self.skip_ws();
                self.pos
            };
            let den = self.uint()?;
            if den.is_zero() {
                return Err(Error::ZeroDenominator { position: at });
            }
            return Ok(Rational::new(num, den));
        }
        Ok(Rational::from_integer(num))
    }

    fn factor(&mut self) -> Result<(usize, u32)> {
        self.skip_ws();
        let start = self.pos;
        match self.src.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() => {}
            _ => return self.err("expected a variable"),
        }
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
        let index = self.vars.index_of(name).ok_or_else(|| Error::UnknownVariable {
            name: name.to_string(),
            position: start,
        })?;
        let mut e = 1u32;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let at = self.pos;
            let big = self.uint()?;
            e = u32::try_from(big).map_err(|_| Error::Syntax {
                position: at,
                message: "exponent too large".into(),
            })?;
        }
        Ok((index, e))
    }
}

const FRESH_NAMES: [&str; 8] = ["u", "v", "w", "s", "t", "r", "p", "q"];

/// Places `p` and `q` over one variable set with `p`'s variables first and
/// `q`'s after, renaming those of `q`'s variables that clash with a name of
/// `p`.
pub fn rename_into_disjoint(
    p: &Polynomial,
    q: &Polynomial,
) -> Result<(Polynomial, Polynomial, VariableSet)> {
    let left = p.vars().names();
    let right = q.vars().names();
    let mut taken: Vec<String> = left.iter().chain(right.iter()).cloned().collect();
    let mut renamed = Vec::with_capacity(right.len());
    let mut fresh = FRESH_NAMES
        .iter()
        .map(|s| s.to_string())
        .chain((1..).map(|k| format!("z{k}")));
    for name in right {
        if left.contains(name) {
            let new = fresh
                .by_ref()
                .find(|c| !taken.contains(c))
                .expect("infinite supply of names");
            taken.push(new.clone());
            renamed.push(new);
        } else {
            renamed.push(name.clone());
        }
    }
    let combined = VariableSet::new(left.iter().cloned().chain(renamed))?;
    let n = left.len();
    let p_pos: Vec<usize> = (0..n).collect();
    let q_pos: Vec<usize> = (n..n + right.len()).collect();
    Ok((p.embed(&combined, &p_pos), q.embed(&combined, &q_pos), combined))
}

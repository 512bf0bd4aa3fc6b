//! Semi-quasi-homogeneous deformations `yⁿ - xⁿ⁺¹ + g` with `g` a sum of
//! monomials of weighted degree above `n(n+1)` for the weights `(n, n+1)`.
//!
//! All members share `μ = (n-1)n`; the scan records `τ` for each and the
//! smallest value found. The reference value for the minimum is
//! `3n²/4 - 1` for even `n` and `3(n²-1)/4` for odd `n`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::{milnor_number, tjurina_number, Germ};
use crate::poly::{Monomial, Polynomial, VariableSet};
use crate::Rational;

pub const MIN_N: u32 = 3;
pub const MAX_N: u32 = 8;

/// Exponents `(a, b)` of `xᵃyᵇ` with `a <= n-1`, `b <= n-2` and
/// `na + (n+1)b > n(n+1)`, in lexicographic order.
pub fn deformation_monomials(n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n - 1 {
            if n * a + (n + 1) * b > n * (n + 1) {
                out.push((a, b));
            }
        }
    }
    out
}

/// Reference minimum of `τ` over the family.
pub fn tau_min_formula(n: u32) -> usize {
    let n = n as usize;
    if n % 2 == 0 {
        3 * n * n / 4 - 1
    } else {
        3 * (n * n - 1) / 4
    }
}

/// `yⁿ - xⁿ⁺¹ + Σ xᵃyᵇ` over `x, y`.
pub fn member(n: u32, terms: &[(u32, u32)]) -> Germ {
    let vars = VariableSet::parse("x,y").expect("valid variables");
    let one = || Rational::from_integer(1.into());
    let mut all = vec![
        (Monomial::new(&[0, n]), one()),
        (Monomial::new(&[n + 1, 0]), -one()),
    ];
    all.extend(terms.iter().map(|&(a, b)| (Monomial::new(&[a, b]), one())));
    Germ::new(Polynomial::from_terms(&vars, all)).expect("member lies in m^2")
}

pub fn describe(terms: &[(u32, u32)]) -> String {
    let mono = |&(a, b): &(u32, u32)| match (a, b) {
        (0, b) => format!("y^{b}"),
        (a, 0) => format!("x^{a}"),
        (a, b) => format!("x^{a}*y^{b}"),
    };
    if terms.is_empty() {
        return "0".to_string();
    }
    terms.iter().map(mono).collect::<Vec<_>>().join(" + ")
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyRow {
    pub deformation: String,
    #[serde(skip)]
    pub terms: Vec<(u32, u32)>,
    pub mu: usize,
    pub tau: usize,
    #[serde(serialize_with = "crate::ser::rational")]
    pub quotient: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyScan {
    pub n: u32,
    pub max_terms: usize,
    pub rows: Vec<FamilyRow>,
    pub min_tau: usize,
    /// Deformations attaining `min_tau`, in scan order.
    pub minimizers: Vec<String>,
    pub formula_tau_min: usize,
    pub formula_attained: bool,
}

impl FamilyScan {
    /// `μ/τ` at the minimizers.
    pub fn max_quotient(&self) -> Rational {
        let mu = self.rows.first().map_or(0, |r| r.mu);
        Rational::new(mu.into(), self.min_tau.into())
    }
}

/// Scans the principal part and all sums of `1..=max_terms` distinct
/// deformation monomials.
///
/// Fails with `Assertion` if some member has `μ != (n-1)n`.
pub fn scan(n: u32, max_terms: usize) -> Result<FamilyScan> {
    if !(MIN_N..=MAX_N).contains(&n) {
        return Err(Error::InvalidParameter(format!("n must lie in {MIN_N}..={MAX_N}, got {n}")));
    }
    if !(1..=2).contains(&max_terms) {
        return Err(Error::InvalidParameter(format!("max terms must be 1 or 2, got {max_terms}")));
    }
    let monos = deformation_monomials(n);
    let mut choices: Vec<Vec<(u32, u32)>> = vec![Vec::new()];
    choices.extend(monos.iter().map(|&m| vec![m]));
    if max_terms == 2 {
        for i in 0..monos.len() {
            for j in i + 1..monos.len() {
                choices.push(vec![monos[i], monos[j]]);
            }
        }
    }
    let expected_mu = ((n - 1) * n) as usize;
    let rows = choices
        .into_par_iter()
        .map(|terms| {
            let g = member(n, &terms);
            let mu = milnor_number(&g)?;
            if mu != expected_mu {
                return Err(Error::Assertion(format!(
                    "{}: mu = {mu}, expected {expected_mu}",
                    g
                )));
            }
            let tau = tjurina_number(&g)?;
            Ok(FamilyRow {
                deformation: describe(&terms),
                terms,
                mu,
                tau,
                quotient: Rational::new(mu.into(), tau.into()),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let min_tau = rows.iter().map(|r| r.tau).min().unwrap_or(expected_mu);
    let minimizers = rows
        .iter()
        .filter(|r| r.tau == min_tau)
        .map(|r| r.deformation.clone())
        .collect();
    let formula = tau_min_formula(n);
    Ok(FamilyScan {
        n,
        max_terms,
        rows,
        min_tau,
        minimizers,
        formula_tau_min: formula,
        formula_attained: min_tau == formula,
    })
}

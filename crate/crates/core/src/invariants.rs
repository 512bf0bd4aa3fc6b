//! Invariants of a single germ.
//!
//! The Milnor algebra `O/J_f` is presented by standard monomials, and
//! multiplication by `f` becomes a nilpotent matrix on it. Everything else
//! (the Tjurina number, `ν₁`, the Briançon–Skoda exponent, the subspaces
//! `Ker`, `Im`, `B`, `A`) is linear algebra on that matrix.
//!
//! ```
//! use tjurina::{Germ, invariants};
//!
//! let g = Germ::parse("x^3 + y^7", "x,y").unwrap();
//! assert_eq!(invariants::milnor_number(&g).unwrap(), 12);
//! assert_eq!(invariants::tjurina_number(&g).unwrap(), 12);
//! ```

use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{local_quotient_with_cap, QuotientPresentation, DEFAULT_DEGREE_CAP};
use crate::linalg::{complement_basis, lattice_dims, rank_kernel_image, RatMatrix, Subspace};
use crate::poly::{parse_polynomial, weighted_degree, Monomial, Polynomial, VariableSet};
use crate::Rational;

/// A polynomial in `m²`: no constant and no linear terms.
#[derive(Clone, PartialEq, Eq)]
pub struct Germ {
    poly: Polynomial,
}

impl Germ {
    pub fn new(poly: Polynomial) -> Result<Self> {
        if let Some((m, _)) = poly.terms().iter().find(|(m, _)| m.total_degree() < 2) {
            let what = if m.is_one() {
                "nonzero constant term"
            } else {
                "nonzero linear term, the germ is smooth"
            };
            return Err(Error::NotSingular(format!("{poly}: {what}")));
        }
        Ok(Germ { poly })
    }

    /// Parses `text` over a comma-separated variable list.
    pub fn parse(text: &str, vars: &str) -> Result<Self> {
        let vars = VariableSet::parse(vars)?;
        Germ::new(parse_polynomial(text, &vars)?)
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn vars(&self) -> &VariableSet {
        self.poly.vars()
    }

    pub fn arity(&self) -> usize {
        self.poly.arity()
    }
}

impl fmt::Display for Germ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

impl fmt::Debug for Germ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Germ({} over {})", self.poly, self.vars())
    }
}

/// The Milnor algebra with the matrix of multiplication by `f`.
///
/// Algebras built from a tensor product carry no monomial presentation; for
/// them `quotient` is `None` and index 0 is still the class of 1.
#[derive(Clone, Debug)]
pub struct MilnorAlgebra {
    quotient: Option<QuotientPresentation>,
    mult_f: RatMatrix,
    arity: usize,
}

impl MilnorAlgebra {
    /// Wraps an operator matrix whose basis vector 0 is the class of 1.
    pub fn from_operator(mult_f: RatMatrix, arity: usize) -> Result<Self> {
        if !mult_f.is_square() {
            return Err(Error::InvalidParameter("operator matrix must be square".into()));
        }
        Ok(MilnorAlgebra {
            quotient: None,
            mult_f,
            arity,
        })
    }

    pub fn quotient(&self) -> Option<&QuotientPresentation> {
        self.quotient.as_ref()
    }

    pub fn mult_f(&self) -> &RatMatrix {
        &self.mult_f
    }

    pub fn dimension(&self) -> usize {
        self.mult_f.rows()
    }

    /// Number of variables of the germ.
    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Matrix of multiplication by `p`; needs a monomial presentation.
    pub fn multiplication_matrix(&self, p: &Polynomial) -> Option<RatMatrix> {
        self.quotient.as_ref().map(|q| multiplication_matrix(q, p))
    }
}

fn multiplication_matrix(q: &QuotientPresentation, p: &Polynomial) -> RatMatrix {
    let columns: Vec<Vec<Rational>> = q
        .basis_monomials()
        .iter()
        .map(|b| q.class_vector(&p.mul_monomial(b)))
        .collect();
    RatMatrix::from_columns(q.dimension(), &columns).expect("class vectors have basis length")
}

/// `Ker ⊕ B ⊕ A` for the multiplication operator, with `B ⊕ (Ker ∩ Im) = Im`
/// and `A ⊕ (Ker + Im)` the whole algebra.
#[derive(Clone, Debug)]
pub struct SubspaceDecomposition {
    pub ker: Subspace,
    pub im: Subspace,
    pub ker_cap_im: Subspace,
    pub b: Subspace,
    pub a: Subspace,
    pub nu1: usize,
}

impl SubspaceDecomposition {
    pub fn mu(&self) -> usize {
        self.ker.ambient_dim()
    }

    pub fn tau(&self) -> usize {
        self.ker.dim()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub arity: usize,
    pub mu: usize,
    pub tau: usize,
    pub nu1: usize,
    pub ebs: usize,
    pub mu_minus_tau: usize,
    #[serde(serialize_with = "crate::ser::rational")]
    pub quotient_mu_tau: Rational,
    #[serde(serialize_with = "crate::ser::opt_rationals")]
    pub qh_weights: Option<Vec<Rational>>,
    #[serde(serialize_with = "crate::ser::opt_rationals")]
    pub qh_spectrum: Option<Vec<Rational>>,
    #[serde(serialize_with = "crate::ser::opt_rational")]
    pub alpha_min: Option<Rational>,
}

/// Everything computed for one germ.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub algebra: MilnorAlgebra,
    pub decomposition: SubspaceDecomposition,
    pub report: InvariantReport,
}

pub fn milnor_number(g: &Germ) -> Result<usize> {
    Ok(local_quotient_with_cap(&g.poly.jacobian(), DEFAULT_DEGREE_CAP)?.dimension())
}

fn tjurina_quotient(g: &Germ, cap: u32) -> Result<QuotientPresentation> {
    let mut gens = g.poly.jacobian();
    gens.push(g.poly.clone());
    local_quotient_with_cap(&gens, cap)
}

/// `τ` by the quotient `O/(f, J_f)`, cross-checked against `μ - rank(f·)`.
pub fn tjurina_number(g: &Germ) -> Result<usize> {
    let tau = tjurina_quotient(g, DEFAULT_DEGREE_CAP)?.dimension();
    let algebra = mult_by_f_matrix(g)?;
    let by_rank = algebra.dimension() - algebra.mult_f.rank();
    if tau != by_rank {
        return Err(Error::InternalMismatch(format!(
            "tau of {g}: quotient gives {tau}, cokernel of multiplication gives {by_rank}"
        )));
    }
    Ok(tau)
}

pub fn mult_by_f_matrix(g: &Germ) -> Result<MilnorAlgebra> {
    mult_by_f_matrix_with_cap(g, DEFAULT_DEGREE_CAP)
}

pub fn mult_by_f_matrix_with_cap(g: &Germ, cap: u32) -> Result<MilnorAlgebra> {
    let quotient = local_quotient_with_cap(&g.poly.jacobian(), cap)?;
    debug_assert!(quotient.basis_monomials().first().map_or(true, Monomial::is_one));
    let mult_f = multiplication_matrix(&quotient, &g.poly);
    Ok(MilnorAlgebra {
        quotient: Some(quotient),
        mult_f,
        arity: g.arity(),
    })
}

fn expect_dim(what: &str, expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::DimensionMismatch {
            what: what.into(),
            expected,
            got,
        });
    }
    Ok(())
}

pub fn decompose(algebra: &MilnorAlgebra) -> Result<SubspaceDecomposition> {
    let mu = algebra.dimension();
    let (rank, ker, im) = rank_kernel_image(&algebra.mult_f);
    let (dim_sum, nu1, ker_cap_im) = lattice_dims(&ker, &im)?;
    let b = complement_basis(&ker_cap_im, &im)?;
    let a = complement_basis(&ker.sum(&im)?, &Subspace::full(mu))?;
    expect_dim("Ker + Im", mu - nu1, dim_sum)?;
    expect_dim("B", rank - nu1, b.dim())?;
    expect_dim("A", nu1, a.dim())?;
    Ok(SubspaceDecomposition {
        ker,
        im,
        ker_cap_im,
        b,
        a,
        nu1,
    })
}

pub fn nu1(g: &Germ) -> Result<usize> {
    Ok(decompose(&mult_by_f_matrix(g)?)?.nu1)
}

/// Least `k` with `M^k e₀ = 0`, where `e₀` is the class of 1. Fails with
/// `BsViolation` if no `k ≤ arity` works.
pub fn nilpotency_on_unit(mult_f: &RatMatrix, arity: usize) -> Result<usize> {
    let n = mult_f.rows();
    if n == 0 {
        return Err(Error::InvalidParameter("empty algebra".into()));
    }
    let mut v = crate::linalg::unit_vector(n, 0);
    for k in 1..=arity {
        v = mult_f.mul_vec(&v);
        if v.iter().all(Zero::is_zero) {
            return Ok(k);
        }
    }
    Err(Error::BsViolation { arity })
}

pub fn bs_exponent(g: &Germ) -> Result<usize> {
    let algebra = mult_by_f_matrix(g)?;
    nilpotency_on_unit(&algebra.mult_f, g.arity())
}

/// Positive weights `w` with `w·a = 1` on every support exponent `a`, in the
/// given coordinates.
pub fn detect_quasihomogeneous(g: &Germ) -> Option<Vec<Rational>> {
    let n = g.arity();
    let rows: Vec<Vec<Rational>> = g
        .poly
        .terms()
        .iter()
        .map(|(m, _)| {
            m.exponents()
                .iter()
                .map(|&e| Rational::from_integer(e.into()))
                .chain(std::iter::once(Rational::one()))
                .collect()
        })
        .collect();
    if rows.is_empty() {
        return None;
    }
    let system = Subspace::span(n + 1, rows).expect("rows sized n + 1");
    if system.pivots().contains(&n) {
        return None;
    }
    let mut is_pivot = vec![None; n];
    for (r, &p) in system.pivots().iter().enumerate() {
        is_pivot[p] = Some(r);
    }
    let free: Vec<usize> = (0..n).filter(|&j| is_pivot[j].is_none()).collect();
    // each weight as an affine form in the free weights
    let forms: Vec<Affine> = (0..n)
        .map(|i| match is_pivot[i] {
            Some(r) => {
                let row = &system.basis()[r];
                Affine {
                    coeffs: free.iter().map(|&j| -row[j].clone()).collect(),
                    constant: row[n].clone(),
                }
            }
            None => Affine {
                coeffs: free.iter().map(|&j| Rational::from_integer((j == i).into())).collect(),
                constant: Rational::zero(),
            },
        })
        .collect();
    let t = positive_point(&forms, free.len())?;
    Some(forms.iter().map(|f| f.eval(&t)).collect())
}

#[derive(Clone, Debug)]
struct Affine {
    coeffs: Vec<Rational>,
    constant: Rational,
}

impl Affine {
    fn eval(&self, t: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .zip(t)
            .fold(self.constant.clone(), |acc, (c, x)| acc + c * x)
    }
}

/// A point where every form is strictly positive (Fourier–Motzkin).
fn positive_point(forms: &[Affine], vars: usize) -> Option<Vec<Rational>> {
    // levels[k] holds the constraints in t_0..t_{k-1}
    let mut levels: Vec<Vec<Affine>> = vec![Vec::new(); vars + 1];
    levels[vars] = forms.to_vec();
    for k in (0..vars).rev() {
        let (mut pos, mut neg, mut next) = (Vec::new(), Vec::new(), Vec::new());
        for f in &levels[k + 1] {
            let c = &f.coeffs[k];
            if c.is_positive() {
                pos.push(f);
            } else if c.is_negative() {
                neg.push(f);
            } else {
                next.push(f.clone());
            }
        }
        for p in &pos {
            for q in &neg {
                let (a, b) = (&p.coeffs[k], -&q.coeffs[k]);
                next.push(Affine {
                    coeffs: p.coeffs.iter().zip(&q.coeffs).map(|(x, y)| &b * x + a * y).collect(),
                    constant: &b * &p.constant + a * &q.constant,
                });
            }
        }
        levels[k] = next;
    }
    if levels[0].iter().any(|f| !f.constant.is_positive()) {
        return None;
    }
    let mut t: Vec<Rational> = Vec::with_capacity(vars);
    for k in 0..vars {
        let (mut lower, mut upper): (Option<Rational>, Option<Rational>) = (None, None);
        for f in &levels[k + 1] {
            let c = &f.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let rest = f.coeffs[..k]
                .iter()
                .zip(&t)
                .fold(f.constant.clone(), |acc, (x, y)| acc + x * y);
            let bound = -rest / c;
            if c.is_positive() {
                lower = Some(lower.map_or(bound.clone(), |l| l.max(bound)));
            } else {
                upper = Some(upper.map_or(bound.clone(), |u| u.min(bound)));
            }
        }
        let value = match (lower, upper) {
            (Some(l), Some(u)) => (l + u) / Rational::from_integer(2.into()),
            (Some(l), None) => l + Rational::one(),
            (None, Some(u)) => u - Rational::one(),
            (None, None) => Rational::zero(),
        };
        t.push(value);
    }
    Some(t)
}

/// `{ Σ (aᵢ + 1) wᵢ }` over the Milnor algebra basis, ascending.
pub fn qh_spectrum(g: &Germ, w: &[Rational]) -> Result<Vec<Rational>> {
    let on_support = g
        .poly
        .terms()
        .iter()
        .all(|(m, _)| weighted_degree(m, w).is_ok_and(|d| d.is_one()));
    if g.poly.is_zero() || !on_support || w.iter().any(|x| !x.is_positive()) {
        return Err(Error::NotQuasiHomogeneous);
    }
    let quotient = local_quotient_with_cap(&g.poly.jacobian(), DEFAULT_DEGREE_CAP)?;
    spectrum_of_basis(quotient.basis_monomials(), w, g.arity())
}

fn spectrum_of_basis(basis: &[Monomial], w: &[Rational], arity: usize) -> Result<Vec<Rational>> {
    let shift: Rational = w.iter().sum();
    let mut spectrum = basis
        .iter()
        .map(|m| Ok(weighted_degree(m, w)? + &shift))
        .collect::<Result<Vec<_>>>()?;
    spectrum.sort();
    let top = Rational::from_integer(arity.into());
    if let Some(bad) = spectrum.iter().find(|a| !a.is_positive() || **a >= top) {
        return Err(Error::Assertion(format!(
            "spectral number {bad} outside (0, {arity})"
        )));
    }
    Ok(spectrum)
}

/// Outcome of comparing `μ/τ` with the Briançon–Skoda exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BsVerdict {
    /// `e^BS ≥ 2` and `μ/τ < e^BS`.
    Strict,
    /// `e^BS = 1`, where `μ = τ`.
    EqualityCase,
}

impl fmt::Display for BsVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BsVerdict::Strict => "ok",
            BsVerdict::EqualityCase => "equality-case",
        })
    }
}

/// Checks `μ/τ < e^BS` (or `μ = τ` when `e^BS = 1`) and, when a spectrum is
/// known, `e^BS ≤ ⌊arity - 2α_min⌋ + 1`.
pub fn check_mu_tau_vs_bs(r: &InvariantReport) -> Result<BsVerdict> {
    let dump = || format!("mu={} tau={} ebs={} arity={}", r.mu, r.tau, r.ebs, r.arity);
    if let Some(alpha) = &r.alpha_min {
        let bound = (Rational::from_integer(r.arity.into()) - alpha * Rational::from_integer(2.into()))
            .floor()
            .to_integer()
            + 1;
        if num_bigint::BigInt::from(r.ebs) > bound {
            return Err(Error::Assertion(format!(
                "e^BS exceeds the spectral bound {bound} (alpha_min={alpha}): {}",
                dump()
            )));
        }
    }
    if r.ebs == 1 {
        if r.mu != r.tau {
            return Err(Error::Assertion(format!("e^BS = 1 but mu != tau: {}", dump())));
        }
        return Ok(BsVerdict::EqualityCase);
    }
    if r.quotient_mu_tau < Rational::from_integer(r.ebs.into()) {
        Ok(BsVerdict::Strict)
    } else {
        Err(Error::Assertion(format!("mu/tau >= e^BS: {}", dump())))
    }
}

pub fn analyze(g: &Germ) -> Result<Analysis> {
    analyze_with_cap(g, DEFAULT_DEGREE_CAP)
}

/// Full analysis with the given truncation degree cap.
pub fn analyze_with_cap(g: &Germ, cap: u32) -> Result<Analysis> {
    let algebra = mult_by_f_matrix_with_cap(g, cap)?;
    let tau_quotient = tjurina_quotient(g, cap)?.dimension();
    let decomposition = decompose(&algebra)?;
    if decomposition.tau() != tau_quotient {
        return Err(Error::InternalMismatch(format!(
            "tau of {g}: quotient gives {tau_quotient}, kernel of multiplication gives {}",
            decomposition.tau()
        )));
    }
    let ebs = nilpotency_on_unit(&algebra.mult_f, g.arity())?;
    let qh_weights = detect_quasihomogeneous(g);
    let qh_spectrum = match &qh_weights {
        Some(w) => Some(spectrum_of_basis(
            algebra.quotient.as_ref().expect("germ algebra").basis_monomials(),
            w,
            g.arity(),
        )?),
        None => None,
    };
    let alpha_min = qh_spectrum.as_ref().and_then(|s| s.first().cloned());
    let report = InvariantReport::new(
        g.arity(),
        algebra.dimension(),
        tau_quotient,
        decomposition.nu1,
        ebs,
        qh_weights,
        qh_spectrum,
        alpha_min,
    )?;
    Ok(Analysis {
        algebra,
        decomposition,
        report,
    })
}

/// Report of an algebra known only through its operator (e.g. a join).
pub fn analyze_operator(algebra: MilnorAlgebra) -> Result<Analysis> {
    let decomposition = decompose(&algebra)?;
    let ebs = nilpotency_on_unit(&algebra.mult_f, algebra.arity)?;
    let report = InvariantReport::new(
        algebra.arity,
        algebra.dimension(),
        decomposition.tau(),
        decomposition.nu1,
        ebs,
        None,
        None,
        None,
    )?;
    Ok(Analysis {
        algebra,
        decomposition,
        report,
    })
}

impl InvariantReport {
    #[allow(clippy::too_many_arguments)]
    fn new(
        arity: usize,
        mu: usize,
        tau: usize,
        nu1: usize,
        ebs: usize,
        qh_weights: Option<Vec<Rational>>,
        qh_spectrum: Option<Vec<Rational>>,
        alpha_min: Option<Rational>,
    ) -> Result<Self> {
        if tau == 0 || tau > mu || nu1 > mu - tau || ebs == 0 || ebs > arity {
            return Err(Error::InternalMismatch(format!(
                "inconsistent invariants mu={mu} tau={tau} nu1={nu1} ebs={ebs} arity={arity}"
            )));
        }
        Ok(InvariantReport {
            arity,
            mu,
            tau,
            nu1,
            ebs,
            mu_minus_tau: mu - tau,
            quotient_mu_tau: Rational::new(mu.into(), tau.into()),
            qh_weights,
            qh_spectrum,
            alpha_min,
        })
    }

    /// `μ/τ` as a float, for display only.
    pub fn quotient_f64(&self) -> f64 {
        let (n, d) = (self.quotient_mu_tau.numer(), self.quotient_mu_tau.denom());
        n.to_f64().unwrap_or(f64::NAN) / d.to_f64().unwrap_or(f64::NAN)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const G: &str = "y^4 - x^5 + x^3*y^2";

    fn germ(text: &str, vars: &str) -> Germ {
        Germ::parse(text, vars).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn germ_must_be_singular() {
        assert!(matches!(Germ::parse("x", "x"), Err(Error::NotSingular(_))));
        assert!(matches!(Germ::parse("1 + x^2", "x"), Err(Error::NotSingular(_))));
        assert!(Germ::parse("x^2", "x").is_ok());
        assert!(matches!(Germ::parse("x^", "x"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn milnor_numbers() {
        assert_eq!(milnor_number(&germ("x^2 + y^2", "x,y")).unwrap(), 1);
        assert_eq!(milnor_number(&germ(G, "x,y")).unwrap(), 12);
        assert_eq!(milnor_number(&germ("x^3 + y^7", "x,y")).unwrap(), 12);
        assert!(matches!(
            milnor_number(&germ("x^2", "x,y")),
            Err(Error::NonIsolated { .. })
        ));
    }

    #[test]
    fn tjurina_numbers() {
        assert_eq!(tjurina_number(&germ("x^3 + y^7", "x,y")).unwrap(), 12);
        assert_eq!(tjurina_number(&germ(G, "x,y")).unwrap(), 11);
        assert_eq!(tjurina_number(&germ("x^2 + y^2", "x,y")).unwrap(), 1);
    }

    #[test]
    fn multiplication_matrices() {
        let a = mult_by_f_matrix(&germ("x^2 + y^2", "x,y")).unwrap();
        assert_eq!(a.dimension(), 1);
        assert!(a.mult_f().is_zero());
        let a = mult_by_f_matrix(&germ(G, "x,y")).unwrap();
        assert_eq!((a.dimension(), a.mult_f().rank()), (12, 1));
        let a = mult_by_f_matrix(&germ("x^3 + y^4", "x,y")).unwrap();
        assert_eq!(a.dimension(), 6);
        assert!(a.mult_f().is_zero());
    }

    #[test]
    fn decompositions() {
        let d = decompose(&mult_by_f_matrix(&germ("x^2 + y^2", "x,y")).unwrap()).unwrap();
        assert_eq!((d.ker.dim(), d.im.dim(), d.nu1, d.b.dim(), d.a.dim()), (1, 0, 0, 0, 0));
        let d = decompose(&mult_by_f_matrix(&germ(G, "x,y")).unwrap()).unwrap();
        assert_eq!((d.ker.dim(), d.im.dim(), d.nu1, d.b.dim(), d.a.dim()), (11, 1, 1, 0, 1));
    }

    #[test]
    fn nu1_and_bs() {
        assert_eq!(nu1(&germ(G, "x,y")).unwrap(), 1);
        assert_eq!(nu1(&germ("x^2*y + y^5", "x,y")).unwrap(), 0);
        assert_eq!(bs_exponent(&germ("x^2 + y^2", "x,y")).unwrap(), 1);
        assert_eq!(bs_exponent(&germ(G, "x,y")).unwrap(), 2);
        assert_eq!(bs_exponent(&germ("x^3 + y^7", "x,y")).unwrap(), 1);
    }

    #[test]
    fn g_squared_is_in_the_jacobian_ideal() {
        // independent of the matrix route: reduce G and G^2 directly
        let g = germ(G, "x,y");
        let quotient = local_quotient_with_cap(&g.poly.jacobian(), DEFAULT_DEGREE_CAP).unwrap();
        assert!(!quotient.normal_form(g.poly()).is_zero());
        assert!(quotient.normal_form(&g.poly().pow(2)).is_zero());
    }

    #[test]
    fn quasihomogeneity() {
        assert_eq!(
            detect_quasihomogeneous(&germ("x^3 + y^7", "x,y")),
            Some(vec![q(1, 3), q(1, 7)])
        );
        assert_eq!(detect_quasihomogeneous(&germ(G, "x,y")), None);
        assert_eq!(
            detect_quasihomogeneous(&germ("x^2*y + y^5", "x,y")),
            Some(vec![q(2, 5), q(1, 5)])
        );
        // underdetermined: x*y alone fixes only w1 + w2
        assert_eq!(
            detect_quasihomogeneous(&germ("x*y", "x,y")),
            Some(vec![q(1, 2), q(1, 2)])
        );
        // consistent but not positive
        assert_eq!(detect_quasihomogeneous(&germ("x^2 + x^3*y", "x,y")), None);
        assert_eq!(detect_quasihomogeneous(&germ("x^2 - x^2", "x")), None);
    }

    #[test]
    fn fourier_motzkin_respects_all_constraints() {
        // t0 > 0, t1 > 0, 1 - t0 - t1 > 0
        let forms = vec![
            Affine { coeffs: vec![q(1, 1), q(0, 1)], constant: q(0, 1) },
            Affine { coeffs: vec![q(0, 1), q(1, 1)], constant: q(0, 1) },
            Affine { coeffs: vec![q(-1, 1), q(-1, 1)], constant: q(1, 1) },
        ];
        let t = positive_point(&forms, 2).unwrap();
        assert!(forms.iter().all(|f| f.eval(&t).is_positive()));
        let infeasible = vec![
            Affine { coeffs: vec![q(1, 1)], constant: q(0, 1) },
            Affine { coeffs: vec![q(-1, 1)], constant: q(0, 1) },
        ];
        assert!(positive_point(&infeasible, 1).is_none());
    }

    #[test]
    fn spectra() {
        let s = qh_spectrum(&germ("x^2 + y^2", "x,y"), &[q(1, 2), q(1, 2)]).unwrap();
        assert_eq!(s, vec![q(1, 1)]);
        let s = qh_spectrum(&germ("x^3 + y^3", "x,y"), &[q(1, 3), q(1, 3)]).unwrap();
        assert_eq!(s, vec![q(2, 3), q(1, 1), q(1, 1), q(4, 3)]);
        let s = qh_spectrum(&germ("x^2 + y^3", "x,y"), &[q(1, 2), q(1, 3)]).unwrap();
        assert_eq!(s, vec![q(5, 6), q(7, 6)]);
        assert_eq!(
            qh_spectrum(&germ(G, "x,y"), &[q(1, 5), q(1, 4)]),
            Err(Error::NotQuasiHomogeneous)
        );
    }

    #[test]
    fn spectrum_is_symmetric() {
        // a + a' = arity for the quasi-homogeneous spectrum
        let g = germ("x^2*y + y^5 + z^3", "x,y,z");
        let w = detect_quasihomogeneous(&g).unwrap();
        let s = qh_spectrum(&g, &w).unwrap();
        let three = Rational::from_integer(3.into());
        let mirrored: Vec<Rational> = s.iter().rev().map(|a| &three - a).collect();
        assert_eq!(s, mirrored);
    }

    #[test]
    fn mu_tau_against_bs() {
        let r = analyze(&germ(G, "x,y")).unwrap().report;
        assert_eq!(r.quotient_mu_tau, q(12, 11));
        assert_eq!(check_mu_tau_vs_bs(&r).unwrap(), BsVerdict::Strict);
        let r = analyze(&germ("x^3 + y^7", "x,y")).unwrap().report;
        assert_eq!(r.alpha_min, Some(q(10, 21)));
        assert_eq!(check_mu_tau_vs_bs(&r).unwrap(), BsVerdict::EqualityCase);
        let mut fake = r.clone();
        fake.ebs = 2;
        fake.alpha_min = None;
        fake.quotient_mu_tau = q(2, 1);
        assert!(matches!(check_mu_tau_vs_bs(&fake), Err(Error::Assertion(_))));
    }

    #[test]
    fn report_serializes_rationals_as_strings() {
        let r = analyze(&germ("x^2*y + y^5", "x,y")).unwrap().report;
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["qh_weights"], serde_json::json!(["2/5", "1/5"]));
        assert_eq!(json["quotient_mu_tau"], "1");
        assert_eq!(json["mu"], 6);
    }

    #[test]
    fn variable_multiplications_commute() {
        for (text, vars) in [(G, "x,y"), ("x^3 + y^3 + z^3 + x*y*z", "x,y,z")] {
            let g = germ(text, vars);
            let a = mult_by_f_matrix(&g).unwrap();
            let ms: Vec<RatMatrix> = (0..g.arity())
                .map(|i| a.multiplication_matrix(&Polynomial::variable(g.vars(), i).unwrap()).unwrap())
                .collect();
            for i in 0..ms.len() {
                for j in i + 1..ms.len() {
                    assert_eq!(ms[i].mul(&ms[j]), ms[j].mul(&ms[i]));
                }
            }
            // and multiplication by f is the matching polynomial in them
            assert_eq!(a.multiplication_matrix(g.poly()).unwrap(), *a.mult_f());
        }
    }

    fn arb_curve() -> impl Strategy<Value = Germ> {
        // x^a + y^b plus a few higher terms: always isolated
        (2u32..5, 2u32..6, prop::collection::vec((0u32..5, 0u32..5, -2i64..3), 0..3)).prop_map(
            |(a, b, extra)| {
                let mut text = format!("x^{a} + y^{b}");
                for (i, j, c) in extra {
                    if c != 0 && i * b + j * a > a * b {
                        let sign = if c < 0 { '-' } else { '+' };
                        text.push_str(&format!(" {sign} {}*x^{i}*y^{j}", c.abs()));
                    }
                }
                germ(&text, "x,y")
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn invariant_relations(g in arb_curve()) {
            let an = analyze(&g).unwrap();
            let r = &an.report;
            prop_assert_eq!(an.decomposition.ker.dim(), r.tau);
            prop_assert!(r.nu1 <= r.mu - r.tau);
            prop_assert_eq!(an.decomposition.a.dim(), r.nu1);
            prop_assert_eq!(r.ebs == 1, r.mu == r.tau);
            if r.ebs == 2 {
                prop_assert_eq!(r.nu1, r.mu - r.tau);
                prop_assert!(an.decomposition.b.is_zero());
            }
            if r.qh_weights.is_some() {
                prop_assert_eq!(r.mu, r.tau);
            }
            prop_assert!(check_mu_tau_vs_bs(r).is_ok());
        }
    }
}

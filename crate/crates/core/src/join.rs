//! Sebastiani–Thom joins `f₁(x) + f₂(y)`.
//!
//! The Milnor algebra of the join is `M₁ ⊗ M₂` and multiplication by the sum
//! is the Kronecker sum `F = M₁ ⊗ I + I ⊗ M₂`, so `τ = μ₁μ₂ - rank F`. The
//! image of `F` splits along the factor decompositions `Ker ⊕ B ⊕ A`; the
//! pieces that do not split cleanly are
//!
//! * `U = Ker₁ ⊗ Im₂ + Im₁ ⊗ Ker₂`,
//! * `b = dim F(B₁ ⊗ B₂)` and `u = dim(U ∩ F(B₁ ⊗ B₂))`,
//!
//! and the Tjurina number of the join is
//!
//! ```text
//! τ = τ₁τ₂ + (μ₁-τ₁)(μ₂-τ₂) - ν₂(μ₁-τ₁-ν₁) - ν₁(μ₂-τ₂-ν₂) - b + u
//! ```
//!
//! [`verify_theorem`] computes `τ` from the rank of `F` and checks it
//! against this expression together with the consequences listed on
//! [`JoinReport`].

use std::fmt;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::DEFAULT_DEGREE_CAP;
use crate::invariants::{
    analyze_operator, analyze_with_cap, Analysis,
    Germ, InvariantReport, MilnorAlgebra, SubspaceDecomposition,
};
use crate::linalg::modular::{modular_rank_kronecker_sum, random_primes};
use crate::linalg::{
    apply_kronecker_sum, kron_vec, kronecker_sum, lattice_dims, rank_kernel_image, solve,
    unit_vector, RatMatrix, Subspace, Vector,
};
use crate::poly::{rename_into_disjoint, Polynomial, VariableSet};
use crate::Rational;

/// Tensor dimensions up to which rank is computed exactly by default and
/// `U` is built explicitly.
pub const EXACT_LIMIT: usize = 300;

/// Default variable limit for the full-ring Tjurina computation.
pub const FULL_RING_MAX_ARITY: usize = 4;

/// Two germs over disjoint variable blocks and their sum.
#[derive(Clone, Debug)]
pub struct JoinGerm {
    left: Germ,
    right: Germ,
    sum: Germ,
}

impl JoinGerm {
    pub fn left(&self) -> &Germ {
        &self.left
    }

    pub fn right(&self) -> &Germ {
        &self.right
    }

    pub fn sum(&self) -> &Germ {
        &self.sum
    }
}

/// Renames the variables of `g2` away from those of `g1` and adds.
pub fn make_join(g1: &Germ, g2: &Germ) -> Result<JoinGerm> {
    let (p, q, combined) = rename_into_disjoint(g1.poly(), g2.poly())?;
    let n1 = g1.arity();
    let right_vars = VariableSet::new(combined.names()[n1..].iter().cloned())?;
    let right_poly = Polynomial::from_terms(
        &right_vars,
        q.terms().iter().map(|(m, c)| {
            (crate::Monomial::new(&m.exponents()[n1..]), c.clone())
        }),
    );
    Ok(JoinGerm {
        left: g1.clone(),
        right: Germ::new(right_poly)?,
        sum: Germ::new(&p + &q)?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RankMode {
    Exact,
    /// Maximum of ranks modulo random primes: a certified lower bound on the
    /// rank, so an upper bound on `τ`.
    Modular,
}

impl fmt::Display for RankMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RankMode::Exact => "exact",
            RankMode::Modular => "modular",
        })
    }
}

/// How to pick the rank computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModePolicy {
    /// Exact up to [`EXACT_LIMIT`] dimensions, modular above.
    Auto,
    Exact,
    Modular,
}

#[derive(Clone, Debug)]
pub struct JoinOptions {
    pub policy: ModePolicy,
    pub primes: usize,
    pub seed: u64,
    /// Also compute `τ` of the sum directly on the combined ring.
    pub oracle: bool,
    pub full_ring_max_arity: usize,
    pub degree_cap: u32,
}

impl Default for JoinOptions {
    fn default() -> Self {
        JoinOptions {
            policy: ModePolicy::Auto,
            primes: 3,
            seed: 0,
            oracle: false,
            full_ring_max_arity: FULL_RING_MAX_ARITY,
            degree_cap: DEFAULT_DEGREE_CAP,
        }
    }
}

/// `M₁ ⊗ M₂` with basis pairs `(i, j) ↦ i·μ₂ + j`.
#[derive(Clone, Copy)]
pub struct TensorAlgebra<'a> {
    left: &'a MilnorAlgebra,
    right: &'a MilnorAlgebra,
}

impl<'a> TensorAlgebra<'a> {
    pub fn new(left: &'a MilnorAlgebra, right: &'a MilnorAlgebra) -> Self {
        TensorAlgebra { left, right }
    }

    pub fn dimension(&self) -> usize {
        self.left.dimension() * self.right.dimension()
    }

    pub fn pair_index(&self, i: usize, j: usize) -> usize {
        i * self.right.dimension() + j
    }

    pub fn arity(&self) -> usize {
        self.left.arity() + self.right.arity()
    }

    /// The Kronecker sum as a dense matrix.
    pub fn operator(&self) -> Result<RatMatrix> {
        kronecker_sum(self.left.mult_f(), self.right.mult_f())
    }

    pub fn apply(&self, v: &[Rational]) -> Vector {
        apply_kronecker_sum(self.left.mult_f(), self.right.mult_f(), v)
    }

    /// `F(x ⊗ y)`.
    pub fn apply_pure(&self, x: &[Rational], y: &[Rational]) -> Vector {
        let fx = self.left.mult_f().mul_vec(x);
        let fy = self.right.mult_f().mul_vec(y);
        kron_vec(&fx, y)
            .into_iter()
            .zip(kron_vec(x, &fy))
            .map(|(a, b)| a + b)
            .collect()
    }

    /// Nilpotency index of `F` on `1 ⊗ 1`, i.e. the Briançon–Skoda exponent
    /// of the join.
    pub fn bs_exponent(&self) -> Result<usize> {
        let mut v = unit_vector(self.dimension(), 0);
        for k in 1..=self.arity() {
            v = self.apply(&v);
            if v.iter().all(Zero::is_zero) {
                return Ok(k);
            }
        }
        Err(Error::BsViolation {
            arity: self.arity(),
        })
    }
}

/// `τ` of the join with the method used to get it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TauJoin {
    pub tau: usize,
    pub rank_mode: RankMode,
    pub primes: Vec<u64>,
    pub prime_ranks: Vec<usize>,
}

/// The rank mode `policy` picks for a tensor space of `dimension`.
pub fn resolve_mode(policy: ModePolicy, dimension: usize) -> RankMode {
    match policy {
        ModePolicy::Exact => RankMode::Exact,
        ModePolicy::Modular => RankMode::Modular,
        ModePolicy::Auto if dimension <= EXACT_LIMIT => RankMode::Exact,
        ModePolicy::Auto => RankMode::Modular,
    }
}

/// `τ = μ₁μ₂ - rank F`. Exact mode returns the join's own analysis as well.
pub fn tau_join_algebras(
    left: &MilnorAlgebra,
    right: &MilnorAlgebra,
    mode: RankMode,
    primes: usize,
    seed: u64,
) -> Result<(TauJoin, Option<Analysis>)> {
    let tensor = TensorAlgebra::new(left, right);
    let n = tensor.dimension();
    match mode {
        RankMode::Exact => {
            let f = tensor.operator()?;
            let joined = analyze_operator(MilnorAlgebra::from_operator(f, tensor.arity())?)?;
            let tau = joined.report.tau;
            Ok((
                TauJoin {
                    tau,
                    rank_mode: mode,
                    primes: Vec::new(),
                    prime_ranks: Vec::new(),
                },
                Some(joined),
            ))
        }
        RankMode::Modular => {
            if primes < 3 {
                return Err(Error::InvalidParameter(format!(
                    "modular rank needs at least 3 primes, got {primes}"
                )));
            }
            let ps = random_primes(primes, seed);
            let (rank, ranks) = modular_rank_kronecker_sum(left.mult_f(), right.mult_f(), &ps)?;
            Ok((
                TauJoin {
                    tau: n - rank,
                    rank_mode: mode,
                    primes: ps,
                    prime_ranks: ranks,
                },
                None,
            ))
        }
    }
}

pub fn tau_join(j: &JoinGerm, policy: ModePolicy) -> Result<TauJoin> {
    let a1 = crate::invariants::mult_by_f_matrix(&j.left)?;
    let a2 = crate::invariants::mult_by_f_matrix(&j.right)?;
    let mode = resolve_mode(policy, a1.dimension() * a2.dimension());
    Ok(tau_join_algebras(&a1, &a2, mode, 3, 0)?.0)
}

/// `(μ, τ)` of the sum computed on the combined polynomial ring.
pub fn tau_join_fullring(j: &JoinGerm, max_arity: usize) -> Result<(usize, usize)> {
    if j.sum.arity() > max_arity {
        return Err(Error::TooLarge(format!(
            "full-ring computation limited to {max_arity} variables, join has {}",
            j.sum.arity()
        )));
    }
    let mu = crate::invariants::milnor_number(&j.sum)?;
    let tau = crate::invariants::tjurina_number(&j.sum)?;
    Ok((mu, tau))
}

/// `U = Ker₁ ⊗ Im₂ + Im₁ ⊗ Ker₂` as an explicit subspace.
pub fn compute_u(d1: &SubspaceDecomposition, d2: &SubspaceDecomposition) -> Result<Subspace> {
    let (mu1, mu2) = (d1.mu(), d2.mu());
    let mut gens: Vec<Vector> = Vec::new();
    for k in d1.ker.basis() {
        for i in d2.im.basis() {
            gens.push(kron_vec(k, i));
        }
    }
    for i in d1.im.basis() {
        for k in d2.ker.basis() {
            gens.push(kron_vec(i, k));
        }
    }
    let u = Subspace::span(mu1 * mu2, gens)?;
    let expected = expected_dim_u(d1, d2);
    if u.dim() != expected {
        return Err(Error::DimensionMismatch {
            what: "U".into(),
            expected,
            got: u.dim(),
        });
    }
    Ok(u)
}

/// `(μ₁-τ₁)τ₂ + (μ₂-τ₂)τ₁ - ν₁⁽¹⁾ν₁⁽²⁾`.
pub fn expected_dim_u(d1: &SubspaceDecomposition, d2: &SubspaceDecomposition) -> usize {
    let (g1, g2) = (d1.mu() - d1.tau(), d2.mu() - d2.tau());
    g1 * d2.tau() + g2 * d1.tau() - d1.nu1 * d2.nu1
}

/// A random complement of `Ker ∩ Im` inside `Im`: the graph of a random map
/// from the stored `B` into `Ker ∩ Im`.
fn rechoose_b(d: &SubspaceDecomposition, rng: &mut ChaCha8Rng) -> Result<Subspace> {
    let n = d.mu();
    let shifted: Vec<Vector> = d
        .b
        .basis()
        .iter()
        .map(|b| {
            let mut v = b.clone();
            for c in d.ker_cap_im.basis() {
                let r = Rational::from_integer(rng.gen_range(-3i64..=3).into());
                if !r.is_zero() {
                    for (x, y) in v.iter_mut().zip(c) {
                        *x += &r * y;
                    }
                }
            }
            v
        })
        .collect();
    let b = Subspace::span(n, shifted)?;
    if b.dim() != d.b.dim() || lattice_dims(&b, &d.ker_cap_im)?.1 != 0 {
        return Err(Error::InternalMismatch("re-chosen complement is not a complement".into()));
    }
    Ok(b)
}

/// `b` and `u` for one choice of complements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BuPair {
    pub b: usize,
    pub u: usize,
}

impl BuPair {
    pub fn difference(&self) -> i64 {
        self.b as i64 - self.u as i64
    }
}

/// `(b, u)` for the stored complements, or for complements re-chosen from
/// `seed`.
///
/// Both numbers are read off coordinates in `Im₁ ⊗ Im₂` with bases
/// `(Ker ∩ Im) ∪ B`: `F(B₁ ⊗ B₂)` lies there, and a vector in it belongs to
/// `U` exactly when its `B₁ ⊗ B₂` block vanishes. Up to [`EXACT_LIMIT`] the
/// values are also recomputed from an explicit `U` and must agree.
pub fn compute_b_u(
    a1: &MilnorAlgebra,
    d1: &SubspaceDecomposition,
    a2: &MilnorAlgebra,
    d2: &SubspaceDecomposition,
    seed: Option<u64>,
) -> Result<BuPair> {
    let (b1, b2) = match seed {
        None => (d1.b.clone(), d2.b.clone()),
        Some(s) => {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            (rechoose_b(d1, &mut rng)?, rechoose_b(d2, &mut rng)?)
        }
    };
    if b1.is_zero() || b2.is_zero() {
        return Ok(BuPair { b: 0, u: 0 });
    }
    let (z1, r1, nb1) = image_coordinates(a1, d1, &b1)?;
    let (z2, r2, nb2) = image_coordinates(a2, d2, &b2)?;
    let (nu1, nu2) = (d1.nu1, d2.nu1);
    let mut full = Vec::with_capacity(nb1 * nb2);
    let mut block = Vec::with_capacity(nb1 * nb2);
    for p in 0..nb1 {
        for q in 0..nb2 {
            // F(b_p ⊗ b_q) = (M b_p) ⊗ b_q + b_p ⊗ (M b_q)
            let ep = unit_vector(r1, nu1 + p);
            let eq = unit_vector(r2, nu2 + q);
            let v: Vector = kron_vec(&z1[p], &eq)
                .into_iter()
                .zip(kron_vec(&ep, &z2[q]))
                .map(|(x, y)| x + y)
                .collect();
            block.push(
                (0..nb1)
                    .flat_map(|s| (0..nb2).map(move |t| (nu1 + s) * r2 + nu2 + t))
                    .map(|i| v[i].clone())
                    .collect::<Vector>(),
            );
            full.push(v);
        }
    }
    let b = Subspace::span(r1 * r2, full)?.dim();
    let outside_u = Subspace::span(nb1 * nb2, block)?.dim();
    let pair = BuPair {
        b,
        u: b - outside_u,
    };

    if a1.dimension() * a2.dimension() <= EXACT_LIMIT {
        let explicit = b_u_explicit(a1, d1, &b1, a2, d2, &b2)?;
        if explicit != pair {
            return Err(Error::InternalMismatch(format!(
                "b, u from image coordinates {pair:?} differ from explicit U {explicit:?}"
            )));
        }
    }
    Ok(pair)
}

/// Coordinates of `M b` (for `b` in `B`) in the basis `(Ker ∩ Im) ∪ B` of `Im`.
fn image_coordinates(
    a: &MilnorAlgebra,
    d: &SubspaceDecomposition,
    b: &Subspace,
) -> Result<(Vec<Vector>, usize, usize)> {
    let basis: Vec<Vector> = d
        .ker_cap_im
        .basis()
        .iter()
        .chain(b.basis())
        .cloned()
        .collect();
    let rank = basis.len();
    let q = RatMatrix::from_columns(d.mu(), &basis)?;
    let coords = b
        .basis()
        .iter()
        .map(|v| {
            solve(&q, &a.mult_f().mul_vec(v))?.ok_or_else(|| {
                Error::InternalMismatch("image vector outside (Ker ∩ Im) + B".into())
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((coords, rank, b.dim()))
}

fn b_u_explicit(
    a1: &MilnorAlgebra,
    d1: &SubspaceDecomposition,
    b1: &Subspace,
    a2: &MilnorAlgebra,
    d2: &SubspaceDecomposition,
    b2: &Subspace,
) -> Result<BuPair> {
    let tensor = TensorAlgebra::new(a1, a2);
    let images: Vec<Vector> = b1
        .basis()
        .iter()
        .flat_map(|x| b2.basis().iter().map(move |y| tensor.apply_pure(x, y)))
        .collect();
    let w = Subspace::span(tensor.dimension(), images)?;
    let u = compute_u(d1, d2)?;
    let (_, meet, _) = lattice_dims(&u, &w)?;
    Ok(BuPair { b: w.dim(), u: meet })
}

/// Dimensions of the four summands of `Im F`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DirectSumCheck {
    pub dim_image: usize,
    pub aa: usize,
    pub ab: usize,
    pub ba: usize,
    pub u_plus_bb: usize,
    pub predicted: usize,
}

/// Checks that `F(A₁⊗A₂)`, `F(A₁⊗B₂)`, `F(B₁⊗A₂)` and `U + F(B₁⊗B₂)` have the
/// predicted dimensions, intersect trivially in pairs and span `Im F`.
pub fn verify_directsum(
    a1: &MilnorAlgebra,
    d1: &SubspaceDecomposition,
    a2: &MilnorAlgebra,
    d2: &SubspaceDecomposition,
    bu: &BuPair,
) -> Result<DirectSumCheck> {
    let tensor = TensorAlgebra::new(a1, a2);
    let n = tensor.dimension();
    let image_of = |x: &Subspace, y: &Subspace| -> Result<Subspace> {
        let v: Vec<Vector> = x
            .basis()
            .iter()
            .flat_map(|p| y.basis().iter().map(move |q| tensor.apply_pure(p, q)))
            .collect();
        Subspace::span(n, v)
    };
    let aa = image_of(&d1.a, &d2.a)?;
    let ab = image_of(&d1.a, &d2.b)?;
    let ba = image_of(&d1.b, &d2.a)?;
    let u_plus_bb = compute_u(d1, d2)?.sum(&image_of(&d1.b, &d2.b)?)?;
    let (rank, _, image) = rank_kernel_image(&tensor.operator()?);

    let (nu1, nu2) = (d1.nu1, d2.nu1);
    let (g1, g2) = (d1.mu() - d1.tau(), d2.mu() - d2.tau());
    let predicted = nu1 * nu2 + nu1 * (g2 - nu2) + nu2 * (g1 - nu1) + expected_dim_u(d1, d2) + bu.b
        - bu.u;
    let check = DirectSumCheck {
        dim_image: rank,
        aa: aa.dim(),
        ab: ab.dim(),
        ba: ba.dim(),
        u_plus_bb: u_plus_bb.dim(),
        predicted,
    };
    let fail = |what: &str| Err(Error::Assertion(format!("direct sum: {what}: {check:?}")));
    if (check.aa, check.ab, check.ba) != (nu1 * nu2, nu1 * (g2 - nu2), nu2 * (g1 - nu1)) {
        return fail("summand dimensions");
    }
    let parts = [&aa, &ab, &ba, &u_plus_bb];
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            if lattice_dims(parts[i], parts[j])?.1 != 0 {
                return fail("summands intersect");
            }
        }
    }
    let total = parts
        .iter()
        .skip(1)
        .try_fold(aa.clone(), |acc, p| acc.sum(p))?;
    if total != image || check.predicted != rank {
        return fail("summands do not add up to the image");
    }
    Ok(check)
}

/// The right-hand side of the Tjurina formula for the join.
pub fn closed_form(r1: &InvariantReport, r2: &InvariantReport, bu: &BuPair) -> i64 {
    let (m1, t1, n1) = (r1.mu as i64, r1.tau as i64, r1.nu1 as i64);
    let (m2, t2, n2) = (r2.mu as i64, r2.tau as i64, r2.nu1 as i64);
    t1 * t2 + (m1 - t1) * (m2 - t2) - n2 * (m1 - t1 - n1) - n1 * (m2 - t2 - n2) - bu.b as i64
        + bu.u as i64
}

/// Quasi-homogeneity of the factors against `τ` of the join.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CharQhVerdict {
    BothQuasiHomogeneous,
    OneQuasiHomogeneous,
    NeitherQuasiHomogeneous,
}

/// With both factors quasi-homogeneous (in the given coordinates) the join
/// has `τ = μ₁μ₂`; with exactly one, and `μ ≠ τ` for the other, `τ < μ₁μ₂`.
/// In all cases `τ = μ` for the join exactly when its Briançon–Skoda
/// exponent is 1, and exactly when both factors have `μ = τ`.
pub fn check_charqh(
    r1: &InvariantReport,
    r2: &InvariantReport,
    tau_join: usize,
    ebs_join: usize,
) -> Result<CharQhVerdict> {
    let mu = r1.mu * r2.mu;
    let (q1, q2) = (r1.qh_weights.is_some(), r2.qh_weights.is_some());
    let dump = || format!("mu1={} tau1={} mu2={} tau2={} tau={tau_join} ebs={ebs_join}", r1.mu, r1.tau, r2.mu, r2.tau);
    let verdict = match (q1, q2) {
        (true, true) => {
            if tau_join != mu {
                return Err(Error::Assertion(format!("quasi-homogeneous factors but tau < mu: {}", dump())));
            }
            CharQhVerdict::BothQuasiHomogeneous
        }
        (true, false) | (false, true) => {
            let other = if q1 { r2 } else { r1 };
            if other.mu != other.tau && tau_join >= mu {
                return Err(Error::Assertion(format!("one factor not quasi-homogeneous but tau = mu: {}", dump())));
            }
            CharQhVerdict::OneQuasiHomogeneous
        }
        (false, false) => CharQhVerdict::NeitherQuasiHomogeneous,
    };
    if (tau_join == mu) != (ebs_join == 1) {
        return Err(Error::Assertion(format!("tau = mu disagrees with e^BS = 1: {}", dump())));
    }
    if (tau_join == mu) != (r1.mu == r1.tau && r2.mu == r2.tau) {
        return Err(Error::Assertion(format!("tau = mu disagrees with the factors: {}", dump())));
    }
    Ok(verdict)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "verdict", content = "tau")]
pub enum MaximalTauVerdict {
    /// A factor has Briançon–Skoda exponent 2 and `τ = τ₁τ₂ + ν₁ν₂`.
    Holds(usize),
    NotApplicable,
}

/// `τ = τ₁τ₂ + ν₁⁽¹⁾ν₁⁽²⁾` when one factor has `e^BS = 2`.
pub fn check_maximaltau(
    r1: &InvariantReport,
    r2: &InvariantReport,
    tau_join: usize,
) -> Result<MaximalTauVerdict> {
    if r1.ebs != 2 && r2.ebs != 2 {
        return Ok(MaximalTauVerdict::NotApplicable);
    }
    let closed = r1.tau * r2.tau + r1.nu1 * r2.nu1;
    if closed != tau_join {
        return Err(Error::Assertion(format!(
            "tau = {tau_join} but tau1*tau2 + nu1*nu1' = {closed}"
        )));
    }
    Ok(MaximalTauVerdict::Holds(closed))
}

/// The factor patterns giving `μ - τ ∈ {1, 2}` for a join.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SmallGapCase {
    /// `μ₁ = τ₁ = 1`, `μ₂ - τ₂ = 1`.
    #[serde(rename = "1a")]
    OneA,
    /// `μ₂ = τ₂ = 1`, `μ₁ - τ₁ = 1`.
    #[serde(rename = "1b")]
    OneB,
    /// `μ₁ = τ₁ = 1`, `μ₂ - τ₂ = 2`.
    #[serde(rename = "2a")]
    TwoA,
    /// `μ₂ = τ₂ = 1`, `μ₁ - τ₁ = 2`.
    #[serde(rename = "2b")]
    TwoB,
    /// `μ₁ = μ₂ = 2`, `τ₁ = τ₂ = 1`.
    #[serde(rename = "2c")]
    TwoC,
    /// `μ₁ = τ₁ = 2`, `μ₂ - τ₂ = 1`.
    #[serde(rename = "2d")]
    TwoD,
    /// `μ₂ = τ₂ = 2`, `μ₁ - τ₁ = 1`.
    #[serde(rename = "2e")]
    TwoE,
}

impl SmallGapCase {
    pub const ALL: [SmallGapCase; 7] = [
        SmallGapCase::OneA,
        SmallGapCase::OneB,
        SmallGapCase::TwoA,
        SmallGapCase::TwoB,
        SmallGapCase::TwoC,
        SmallGapCase::TwoD,
        SmallGapCase::TwoE,
    ];

    pub fn gap(self) -> usize {
        match self {
            SmallGapCase::OneA | SmallGapCase::OneB => 1,
            _ => 2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            SmallGapCase::OneA => "1a",
            SmallGapCase::OneB => "1b",
            SmallGapCase::TwoA => "2a",
            SmallGapCase::TwoB => "2b",
            SmallGapCase::TwoC => "2c",
            SmallGapCase::TwoD => "2d",
            SmallGapCase::TwoE => "2e",
        }
    }

    /// Whether factors with these `(μ, τ)` fall under the case.
    pub fn matches(self, (m1, t1): (usize, usize), (m2, t2): (usize, usize)) -> bool {
        match self {
            SmallGapCase::OneA => m1 == 1 && t1 == 1 && m2 == t2 + 1,
            SmallGapCase::OneB => m2 == 1 && t2 == 1 && m1 == t1 + 1,
            SmallGapCase::TwoA => m1 == 1 && t1 == 1 && m2 == t2 + 2,
            SmallGapCase::TwoB => m2 == 1 && t2 == 1 && m1 == t1 + 2,
            SmallGapCase::TwoC => m1 == 2 && m2 == 2 && t1 == 1 && t2 == 1,
            SmallGapCase::TwoD => m1 == 2 && t1 == 2 && m2 == t2 + 1,
            SmallGapCase::TwoE => m2 == 2 && t2 == 2 && m1 == t1 + 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmallGapVerdict {
    pub gap: usize,
    pub cases: Vec<SmallGapCase>,
}

/// Classifies `μ - τ` of the join against the factor patterns: a gap of 1 or
/// 2 must match a case of that gap, and a matching case forces its gap.
pub fn classify_small_gap(
    (m1, t1): (usize, usize),
    (m2, t2): (usize, usize),
    tau_join: usize,
) -> Result<SmallGapVerdict> {
    let gap = m1 * m2 - tau_join;
    let cases: Vec<SmallGapCase> = SmallGapCase::ALL
        .into_iter()
        .filter(|c| c.matches((m1, t1), (m2, t2)))
        .collect();
    let dump = || format!("mu1={m1} tau1={t1} mu2={m2} tau2={t2} gap={gap} cases={cases:?}");
    if let Some(c) = cases.iter().find(|c| c.gap() != gap) {
        return Err(Error::Assertion(format!(
            "case {} forces gap {} but the join has: {}",
            c.label(),
            c.gap(),
            dump()
        )));
    }
    if (gap == 1 || gap == 2) && cases.is_empty() {
        return Err(Error::Assertion(format!("gap without a matching case: {}", dump())));
    }
    Ok(SmallGapVerdict { gap, cases })
}

/// Factor shapes with a known strict bound on `μ/τ` of the join.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuotientProfile {
    /// A plane curve joined with a quasi-homogeneous germ: `μ/τ < 4/3`.
    CurveQh,
    /// A surface in three variables joined with a quasi-homogeneous germ:
    /// `μ/τ < 3/2`.
    SurfaceQh,
    /// A surface joined with a plane curve: `μ/τ < 2`.
    SurfaceCurve,
}

impl QuotientProfile {
    pub const ALL: [QuotientProfile; 3] = [
        QuotientProfile::CurveQh,
        QuotientProfile::SurfaceQh,
        QuotientProfile::SurfaceCurve,
    ];

    pub fn bound(self) -> Rational {
        let (n, d) = match self {
            QuotientProfile::CurveQh => (4, 3),
            QuotientProfile::SurfaceQh => (3, 2),
            QuotientProfile::SurfaceCurve => (2, 1),
        };
        Rational::new(n.into(), d.into())
    }

    fn fits(self, first: &InvariantReport, second: &InvariantReport) -> bool {
        match self {
            QuotientProfile::CurveQh => first.arity == 2 && second.qh_weights.is_some(),
            QuotientProfile::SurfaceQh => first.arity == 3 && second.qh_weights.is_some(),
            QuotientProfile::SurfaceCurve => first.arity == 3 && second.arity == 2,
        }
    }

    /// Whether the factors fit the profile in either order.
    pub fn applies(self, r1: &InvariantReport, r2: &InvariantReport) -> bool {
        self.fits(r1, r2) || self.fits(r2, r1)
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "curve-qh" => Ok(QuotientProfile::CurveQh),
            "surface-qh" => Ok(QuotientProfile::SurfaceQh),
            "surface-curve" => Ok(QuotientProfile::SurfaceCurve),
            _ => Err(Error::InvalidParameter(format!("unknown profile `{s}`"))),
        }
    }
}

impl fmt::Display for QuotientProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuotientProfile::CurveQh => "curve-qh",
            QuotientProfile::SurfaceQh => "surface-qh",
            QuotientProfile::SurfaceCurve => "surface-curve",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientBoundVerdict {
    pub profile: QuotientProfile,
    #[serde(serialize_with = "crate::ser::rational")]
    pub quotient: Rational,
    #[serde(serialize_with = "crate::ser::rational")]
    pub bound: Rational,
}

/// Asserts the profile's strict bound on `μ/τ` of the join.
pub fn check_quotient_bounds(
    r1: &InvariantReport,
    r2: &InvariantReport,
    tau_join: usize,
    profile: QuotientProfile,
) -> Result<QuotientBoundVerdict> {
    if !profile.applies(r1, r2) {
        return Err(Error::ProfileMismatch(format!(
            "factors of arity {} and {} (quasi-homogeneous: {}, {}) do not fit {profile}",
            r1.arity,
            r2.arity,
            r1.qh_weights.is_some(),
            r2.qh_weights.is_some()
        )));
    }
    let quotient = Rational::new((r1.mu * r2.mu).into(), tau_join.into());
    let bound = profile.bound();
    if quotient >= bound {
        return Err(Error::Assertion(format!(
            "mu/tau = {quotient} is not below {bound} for {profile}"
        )));
    }
    Ok(QuotientBoundVerdict {
        profile,
        quotient,
        bound,
    })
}

/// Everything verified about one join.
#[derive(Clone, Debug, Serialize)]
pub struct JoinReport {
    pub left: InvariantReport,
    pub right: InvariantReport,
    pub mu_join: usize,
    pub tau_join_tensor: usize,
    pub tau_join_fullring: Option<usize>,
    pub rank_mode: RankMode,
    pub primes: Vec<u64>,
    pub prime_ranks: Vec<usize>,
    pub nu1_join: Option<usize>,
    pub ebs_join: usize,
    #[serde(rename = "dim_U")]
    pub dim_u: usize,
    pub b: usize,
    pub u: usize,
    pub theorem_residual: i64,
    pub bounds_ok: bool,
    pub directsum_ok: Option<bool>,
    pub charqh: CharQhVerdict,
    pub maximaltau: MaximalTauVerdict,
    pub small_gap: Option<SmallGapVerdict>,
    pub quotient_bounds: Vec<QuotientBoundVerdict>,
}

/// A join report together with the join's own analysis (exact mode only).
#[derive(Clone, Debug)]
pub struct JoinOutcome {
    pub report: JoinReport,
    pub joined: Option<Analysis>,
}

/// Analyzes both factors and verifies the join.
pub fn verify_theorem(j: &JoinGerm, opts: &JoinOptions) -> Result<JoinReport> {
    let a1 = analyze_with_cap(&j.left, opts.degree_cap)?;
    let a2 = analyze_with_cap(&j.right, opts.degree_cap)?;
    let mut outcome = verify_analyses(&a1, &a2, opts)?;
    if opts.oracle && j.sum.arity() <= opts.full_ring_max_arity {
        let (mu, tau) = tau_join_fullring(j, opts.full_ring_max_arity)?;
        let report = &mut outcome.report;
        if mu != report.mu_join || tau != report.tau_join_tensor {
            return Err(Error::InternalMismatch(format!(
                "full ring gives (mu, tau) = ({mu}, {tau}), tensor gives ({}, {})",
                report.mu_join, report.tau_join_tensor
            )));
        }
        report.tau_join_fullring = Some(tau);
    }
    Ok(outcome.report)
}

/// Verifies the join of two analyzed factors; these may come from germs or
/// from earlier joins.
pub fn verify_analyses(a1: &Analysis, a2: &Analysis, opts: &JoinOptions) -> Result<JoinOutcome> {
    let (r1, r2) = (&a1.report, &a2.report);
    let mu_join = r1.mu * r2.mu;
    let mode = resolve_mode(opts.policy, mu_join);
    let (tj, joined) = tau_join_algebras(&a1.algebra, &a2.algebra, mode, opts.primes, opts.seed)?;
    let tau = tj.tau;
    let tensor = TensorAlgebra::new(&a1.algebra, &a2.algebra);
    let ebs_join = match &joined {
        Some(j) => j.report.ebs,
        None => tensor.bs_exponent()?,
    };
    if mode == RankMode::Modular && tj.prime_ranks.iter().any(|&r| r != mu_join - tau) {
        return Err(Error::InternalMismatch(format!(
            "primes disagree on the rank: {:?}",
            tj.prime_ranks
        )));
    }

    let bu = compute_b_u(&a1.algebra, &a1.decomposition, &a2.algebra, &a2.decomposition, None)?;
    let dim_u = expected_dim_u(&a1.decomposition, &a2.decomposition);
    let residual = tau as i64 - closed_form(r1, r2, &bu);
    let bounds_ok = r1.tau * r2.tau <= tau
        && tau <= r1.tau * r2.tau + (r1.mu - r1.tau) * (r2.mu - r2.tau);
    let dump = || {
        format!(
            "tau={tau} ({mode}) mu1={} tau1={} nu1={} mu2={} tau2={} nu2={} b={} u={} residual={residual}",
            r1.mu, r1.tau, r1.nu1, r2.mu, r2.tau, r2.nu1, bu.b, bu.u
        )
    };
    if residual != 0 {
        return Err(Error::Assertion(format!("Tjurina formula residual: {}", dump())));
    }
    if !bounds_ok {
        return Err(Error::Assertion(format!("Tjurina bounds: {}", dump())));
    }
    let dimension_limit = bu.u > bu.b
        || bu.b
            > (r1.mu - r1.tau - r1.nu1) * (r2.mu - r2.tau - r2.nu1);
    if dimension_limit {
        return Err(Error::Assertion(format!("u <= b <= dim(B1 x B2) fails: {}", dump())));
    }

    let directsum_ok = if mode == RankMode::Exact && mu_join <= EXACT_LIMIT {
        verify_directsum(&a1.algebra, &a1.decomposition, &a2.algebra, &a2.decomposition, &bu)?;
        Some(true)
    } else {
        None
    };
    let charqh = check_charqh(r1, r2, tau, ebs_join)?;
    let maximaltau = check_maximaltau(r1, r2, tau)?;
    let small_gap = match mode {
        RankMode::Exact => Some(classify_small_gap((r1.mu, r1.tau), (r2.mu, r2.tau), tau)?),
        RankMode::Modular => None,
    };
    let quotient_bounds = QuotientProfile::ALL
        .into_iter()
        .filter(|p| p.applies(r1, r2))
        .map(|p| check_quotient_bounds(r1, r2, tau, p))
        .collect::<Result<Vec<_>>>()?;

    Ok(JoinOutcome {
        report: JoinReport {
            left: r1.clone(),
            right: r2.clone(),
            mu_join,
            tau_join_tensor: tau,
            tau_join_fullring: None,
            rank_mode: mode,
            primes: tj.primes,
            prime_ranks: tj.prime_ranks,
            nu1_join: joined.as_ref().map(|j| j.report.nu1),
            ebs_join,
            dim_u,
            b: bu.b,
            u: bu.u,
            theorem_residual: residual,
            bounds_ok,
            directsum_ok,
            charqh,
            maximaltau,
            small_gap,
            quotient_bounds,
        },
        joined,
    })
}

/// `b - u` for the stored complements and for each seeded re-choice.
pub fn b_minus_u_samples(a1: &Analysis, a2: &Analysis, seeds: impl IntoIterator<Item = u64>) -> Result<Vec<BuPair>> {
    std::iter::once(None)
        .chain(seeds.into_iter().map(Some))
        .map(|s| compute_b_u(&a1.algebra, &a1.decomposition, &a2.algebra, &a2.decomposition, s))
        .collect()
}

/// Exact nilpotency index of a square matrix (`None` if not nilpotent).
pub fn nilpotency_index(m: &RatMatrix) -> Option<usize> {
    let n = m.rows();
    let mut power = RatMatrix::identity(n);
    for k in 1..=n.max(1) {
        power = power.mul(m);
        if power.is_zero() {
            return Some(k);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{analyze, mult_by_f_matrix};
    use num_traits::One;
    use proptest::prelude::*;

    const G: &str = "y^4 - x^5 + x^3*y^2";

    fn germ(text: &str, vars: &str) -> Germ {
        Germ::parse(text, vars).unwrap()
    }

    fn join(a: (&str, &str), b: (&str, &str)) -> JoinGerm {
        make_join(&germ(a.0, a.1), &germ(b.0, b.1)).unwrap()
    }

    fn exact() -> JoinOptions {
        JoinOptions {
            policy: ModePolicy::Exact,
            ..JoinOptions::default()
        }
    }

    #[test]
    fn joins_rename_clashing_variables() {
        let j = join(("x^2", "x"), ("x^2", "x"));
        assert_eq!(j.sum().to_string(), "x^2 + u^2");
        assert_eq!(j.sum().vars().to_string(), "x,u");
        assert_eq!(j.right().vars().to_string(), "u");
        let j = join((G, "x,y"), (G, "x,y"));
        assert_eq!(j.sum().arity(), 4);
        assert_eq!(tau_join_fullring(&j, 4).unwrap().0, 144);
        let j = join((G, "x,y"), ("x^2", "x"));
        assert_eq!(j.sum().vars().to_string(), "x,y,u");
        assert_eq!(tau_join_fullring(&j, 4).unwrap().0, 12);
    }

    #[test]
    fn tau_of_joins() {
        assert_eq!(tau_join(&join(("x^2", "x"), ("x^2", "x")), ModePolicy::Exact).unwrap().tau, 1);
        let gg = join((G, "x,y"), (G, "x,y"));
        assert_eq!(tau_join(&gg, ModePolicy::Exact).unwrap().tau, 122);
        let modular = tau_join(&gg, ModePolicy::Modular).unwrap();
        assert_eq!((modular.tau, modular.rank_mode, modular.primes.len()), (122, RankMode::Modular, 3));
        assert!(modular.prime_ranks.iter().all(|&r| r == 22));
    }

    #[test]
    fn full_ring_oracle() {
        let j = join(("x^2", "x"), ("y^3", "y"));
        assert_eq!(tau_join_fullring(&j, 4).unwrap(), (2, 2));
        let j = join(("x^2 + y^3", "x,y"), ("z^2", "z"));
        assert_eq!(tau_join_fullring(&j, 4).unwrap(), (2, 2));
        let j = join((G, "x,y"), ("z^2", "z"));
        let (_, full) = tau_join_fullring(&j, 4).unwrap();
        let tensor = tau_join(&j, ModePolicy::Exact).unwrap().tau;
        assert_eq!((full, tensor), (11, 11));
        let big = join((G, "x,y"), ("z^2 + w^3 + t^2", "z,w,t"));
        assert!(matches!(tau_join_fullring(&big, 4), Err(Error::TooLarge(_))));
    }

    fn decomposition(text: &str, vars: &str) -> Analysis {
        analyze(&germ(text, vars)).unwrap()
    }

    #[test]
    fn u_dimensions() {
        let q = decomposition("x^3 + y^4", "x,y");
        assert!(compute_u(&q.decomposition, &q.decomposition).unwrap().is_zero());
        let g = decomposition(G, "x,y");
        assert_eq!(compute_u(&g.decomposition, &g.decomposition).unwrap().dim(), 21);
        let a1 = decomposition("x^2", "x");
        assert_eq!(compute_u(&g.decomposition, &a1.decomposition).unwrap().dim(), 1);
    }

    #[test]
    fn b_and_u_vanish_without_b() {
        let g = decomposition(G, "x,y");
        let q = decomposition("x^3 + y^4", "x,y");
        for (a, b) in [(&g, &g), (&g, &q), (&q, &g)] {
            let bu = compute_b_u(&a.algebra, &a.decomposition, &b.algebra, &b.decomposition, None).unwrap();
            assert_eq!(bu, BuPair { b: 0, u: 0 });
        }
    }

    #[test]
    fn direct_sums() {
        let g = decomposition(G, "x,y");
        let check = |a: &Analysis, b: &Analysis| {
            let bu = compute_b_u(&a.algebra, &a.decomposition, &b.algebra, &b.decomposition, None).unwrap();
            verify_directsum(&a.algebra, &a.decomposition, &b.algebra, &b.decomposition, &bu).unwrap()
        };
        let q = decomposition("x^2 + y^3", "x,y");
        assert_eq!(check(&q, &q).dim_image, 0);
        let gg = check(&g, &g);
        assert_eq!((gg.dim_image, gg.aa, gg.ab, gg.ba, gg.u_plus_bb), (22, 1, 0, 0, 21));
        let gq = check(&g, &q);
        assert_eq!((gq.dim_image, gq.aa, gq.u_plus_bb), (2, 0, 2));
    }

    #[test]
    fn theorem_on_small_pairs() {
        let r = verify_theorem(&join((G, "x,y"), (G, "x,y")), &exact()).unwrap();
        assert_eq!((r.tau_join_tensor, r.theorem_residual), (122, 0));
        assert_eq!((r.left.nu1, r.right.nu1, r.b, r.u), (1, 1, 0, 0));
        assert_eq!(r.nu1_join, Some(21));
        assert_eq!(r.directsum_ok, Some(true));
        let r = verify_theorem(&join(("x^2 + y^3", "x,y"), ("z^2 + w^5", "z,w")), &exact()).unwrap();
        assert_eq!((r.tau_join_tensor, r.mu_join, r.dim_u, r.b), (8, 8, 0, 0));
        assert_eq!(r.charqh, CharQhVerdict::BothQuasiHomogeneous);
    }

    #[test]
    fn oracle_flag_fills_full_ring_tau() {
        let opts = JoinOptions {
            oracle: true,
            ..exact()
        };
        let r = verify_theorem(&join((G, "x,y"), ("z^2", "z")), &opts).unwrap();
        assert_eq!(r.tau_join_fullring, Some(11));
        let r = verify_theorem(&join((G, "x,y"), ("z^2+w^2+t^2", "z,w,t")), &opts).unwrap();
        assert_eq!(r.tau_join_fullring, None);
    }

    #[test]
    fn quasihomogeneous_characterization() {
        let opts = exact();
        let r = verify_theorem(&join((G, "x,y"), ("z^2", "z")), &opts).unwrap();
        assert_eq!((r.tau_join_tensor, r.mu_join, r.charqh), (11, 12, CharQhVerdict::OneQuasiHomogeneous));
        let r = verify_theorem(&join((G, "x,y"), (G, "x,y")), &opts).unwrap();
        assert_eq!(r.charqh, CharQhVerdict::NeitherQuasiHomogeneous);
        let rep = |mu, tau, qh: bool| {
            let mut r = decomposition("x^2", "x").report;
            r.mu = mu;
            r.tau = tau;
            r.qh_weights = qh.then(Vec::new);
            r
        };
        assert!(check_charqh(&rep(2, 2, true), &rep(3, 3, true), 5, 2).is_err());
        assert!(check_charqh(&rep(2, 2, true), &rep(3, 2, false), 6, 1).is_err());
        assert!(check_charqh(&rep(2, 2, true), &rep(3, 2, false), 4, 1).is_err());
    }

    #[test]
    fn maximal_tau() {
        let g = decomposition(G, "x,y").report;
        assert_eq!(check_maximaltau(&g, &g, 122).unwrap(), MaximalTauVerdict::Holds(122));
        assert!(check_maximaltau(&g, &g, 121).is_err());
        let q = decomposition("x^2 + y^3", "x,y").report;
        let a = decomposition("z^2", "z").report;
        assert_eq!(check_maximaltau(&q, &a, 2).unwrap(), MaximalTauVerdict::NotApplicable);
        assert_eq!(q.tau * a.tau + q.nu1 * a.nu1, 2);
    }

    #[test]
    fn small_gaps() {
        let opts = exact();
        let r = verify_theorem(&join(("x^2", "x"), (G, "x,y")), &opts).unwrap();
        assert_eq!(r.small_gap.unwrap(), SmallGapVerdict { gap: 1, cases: vec![SmallGapCase::OneA] });
        let r = verify_theorem(&join(("x^3", "x"), (G, "x,y")), &opts).unwrap();
        assert_eq!(r.small_gap.unwrap(), SmallGapVerdict { gap: 2, cases: vec![SmallGapCase::TwoD] });
        let r = verify_theorem(&join(("x^2 + y^3", "x,y"), ("z^2 + w^5", "z,w")), &opts).unwrap();
        assert_eq!(r.small_gap.unwrap(), SmallGapVerdict { gap: 0, cases: vec![] });
        // a case forcing a gap the join does not have
        assert!(classify_small_gap((1, 1), (12, 11), 11 - 1).is_err());
        assert!(classify_small_gap((3, 3), (12, 11), 35).is_err());
    }

    #[test]
    fn quotient_bounds() {
        let g = decomposition(G, "x,y").report;
        let cusp = decomposition("z^2 + w^3", "z,w").report;
        let v = check_quotient_bounds(&g, &cusp, 22, QuotientProfile::CurveQh).unwrap();
        assert_eq!(v.quotient, Rational::new(12.into(), 11.into()));
        let a1 = decomposition("x^2 + y^2 + z^2", "x,y,z").report;
        let w = decomposition("w^2", "w").report;
        let v = check_quotient_bounds(&a1, &w, 1, QuotientProfile::SurfaceQh).unwrap();
        assert_eq!(v.quotient, Rational::one());
        let e6 = decomposition("x^3 + y^3 + z^3", "x,y,z").report;
        let cusp2 = decomposition("u^2 + v^3", "u,v").report;
        let v = check_quotient_bounds(&e6, &cusp2, 16, QuotientProfile::SurfaceCurve).unwrap();
        assert_eq!(v.quotient, Rational::one());
        assert!(matches!(
            check_quotient_bounds(&g, &g, 122, QuotientProfile::CurveQh),
            Err(Error::ProfileMismatch(_))
        ));
        assert!(matches!(
            check_quotient_bounds(&g, &cusp, 16, QuotientProfile::CurveQh),
            Err(Error::Assertion(_))
        ));
    }

    #[test]
    fn join_report_json_fields() {
        let r = verify_theorem(&join((G, "x,y"), (G, "x,y")), &exact()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["tau_join_tensor"], 122);
        assert_eq!(v["dim_U"], 21);
        assert_eq!(v["rank_mode"], "exact");
        assert_eq!(v["maximaltau"], serde_json::json!({"verdict": "holds", "tau": 122}));
        assert_eq!(v["left"]["quotient_mu_tau"], "12/11");
    }

    #[test]
    fn kronecker_operator_is_nilpotent() {
        let a = mult_by_f_matrix(&germ(G, "x,y")).unwrap();
        let b = mult_by_f_matrix(&germ("x^2*y + y^4", "x,y")).unwrap();
        let f = TensorAlgebra::new(&a, &b).operator().unwrap();
        assert!(nilpotency_index(&f).is_some());
        assert_eq!(TensorAlgebra::new(&a, &b).bs_exponent().unwrap(), 2);
    }

    fn arb_curve() -> impl Strategy<Value = Germ> {
        (2u32..4, 2u32..5, prop::collection::vec((0u32..4, 0u32..4), 0..2)).prop_map(|(a, b, extra)| {
            let mut text = format!("x^{a} + y^{b}");
            for (i, j) in extra {
                if i * b + j * a > a * b {
                    text.push_str(&format!(" + x^{i}*y^{j}"));
                }
            }
            germ(&text, "x,y")
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]
        #[test]
        fn tau_join_is_symmetric(g1 in arb_curve(), g2 in arb_curve()) {
            let t12 = tau_join(&make_join(&g1, &g2).unwrap(), ModePolicy::Exact).unwrap().tau;
            let t21 = tau_join(&make_join(&g2, &g1).unwrap(), ModePolicy::Exact).unwrap().tau;
            prop_assert_eq!(t12, t21);
        }
    }
}

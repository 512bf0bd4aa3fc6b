//! Germ files and the bundled catalog.
//!
//! A germ file holds one entry per line,
//!
//! ```text
//! # comment
//! name : vars : polynomial [: key=value ...]
//! ```
//!
//! where the optional keys `mu`, `tau`, `nu1` and `ebs` are expected values
//! checked against the computed invariants.

use std::fmt;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::{analyze_with_cap, check_mu_tau_vs_bs, Analysis, Germ, InvariantReport};
use crate::join::{
    b_minus_u_samples, make_join, tau_join_fullring, verify_analyses, BuPair, JoinOptions, JoinReport,
    EXACT_LIMIT,
};
use crate::Rational;

/// The catalog shipped with the crate.
pub const BUNDLED: &str = include_str!("../data/catalog.germ");

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expectations {
    pub mu: Option<usize>,
    pub tau: Option<usize>,
    pub nu1: Option<usize>,
    pub ebs: Option<usize>,
}

impl Expectations {
    pub fn is_empty(&self) -> bool {
        *self == Expectations::default()
    }

    /// Differences between expected and computed values, as `key: expected
    /// != computed` strings.
    pub fn mismatches(&self, r: &InvariantReport) -> Vec<String> {
        [
            ("mu", self.mu, r.mu),
            ("tau", self.tau, r.tau),
            ("nu1", self.nu1, r.nu1),
            ("ebs", self.ebs, r.ebs),
        ]
        .into_iter()
        .filter_map(|(key, want, got)| match want {
            Some(w) if w != got => Some(format!("{key}: expected {w}, got {got}")),
            _ => None,
        })
        .collect()
    }
}

impl fmt::Display for Expectations {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = [("mu", self.mu), ("tau", self.tau), ("nu1", self.nu1), ("ebs", self.ebs)]
            .into_iter()
            .filter_map(|(k, v)| v.map(|v| format!("{k}={v}")))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub text: String,
    pub germ: Germ,
    pub expected: Expectations,
    /// 1-based line in the source file.
    pub line: usize,
}

/// Parses germ-file text. Names must be unique.
pub fn parse_germ_file(text: &str) -> Result<Vec<CatalogEntry>> {
    let mut entries: Vec<CatalogEntry> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |message: String| Error::Catalog { line, message };
        let fields: Vec<&str> = content.split(':').map(str::trim).collect();
        if !(3..=4).contains(&fields.len()) {
            return Err(err(format!(
                "expected `name : vars : polynomial [: expectations]`, found {} fields",
                fields.len()
            )));
        }
        let name = fields[0];
        if name.is_empty() || name.chars().any(char::is_whitespace) {
            return Err(err(format!("invalid name `{name}`")));
        }
        if entries.iter().any(|e| e.name == name) {
            return Err(err(format!("duplicate name `{name}`")));
        }
        let germ = Germ::parse(fields[2], fields[1]).map_err(|e| err(e.to_string()))?;
        let expected = match fields.get(3) {
            Some(fields) => parse_expectations(fields).map_err(err)?,
            None => Expectations::default(),
        };
        entries.push(CatalogEntry {
            name: name.to_string(),
            text: fields[2].to_string(),
            germ,
            expected,
            line,
        });
    }
    Ok(entries)
}

fn parse_expectations(fields: &str) -> std::result::Result<Expectations, String> {
    let mut e = Expectations::default();
    for item in fields.split_whitespace() {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| format!("expected key=value, found `{item}`"))?;
        let value: usize = value
            .parse()
            .map_err(|_| format!("invalid count `{value}` for `{key}`"))?;
        let slot = match key {
            "mu" => &mut e.mu,
            "tau" => &mut e.tau,
            "nu1" => &mut e.nu1,
            "ebs" => &mut e.ebs,
            _ => return Err(format!("unknown key `{key}`")),
        };
        if slot.replace(value).is_some() {
            return Err(format!("repeated key `{key}`"));
        }
    }
    Ok(e)
}

pub fn load(path: impl AsRef<Path>) -> Result<Vec<CatalogEntry>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidParameter(format!("{}: {e}", path.display())))?;
    parse_germ_file(&text)
}

pub fn bundled() -> Vec<CatalogEntry> {
    parse_germ_file(BUNDLED).expect("bundled catalog parses")
}

/// Unordered pairs `(i, j)`, `i <= j`, with `μᵢ·μⱼ <= max_product`.
pub fn pairs(mus: &[usize], max_product: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..mus.len() {
        for j in i..mus.len() {
            if mus[i] * mus[j] <= max_product {
                out.push((i, j));
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Fail,
}

/// One line of a verification table.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRow {
    pub subject: String,
    pub check: &'static str,
    pub status: Status,
    pub detail: String,
}

impl CheckRow {
    fn new(subject: &str, check: &'static str, outcome: std::result::Result<String, String>) -> Self {
        let (status, detail) = match outcome {
            Ok(d) => (Status::Ok, d),
            Err(d) => (Status::Fail, d),
        };
        CheckRow {
            subject: subject.to_string(),
            check,
            status,
            detail,
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub join: JoinOptions,
    /// Pairs with `μ₁μ₂` above this are skipped by the join checks.
    pub max_pair_mu: usize,
    /// Seeded complement re-choices per pair with `B₁ ⊗ B₂ ≠ 0`.
    pub bu_seeds: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            join: JoinOptions {
                oracle: true,
                ..JoinOptions::default()
            },
            max_pair_mu: EXACT_LIMIT,
            bu_seeds: 20,
        }
    }
}

#[derive(Debug)]
pub struct GermRun {
    pub name: String,
    pub analysis: Result<Analysis>,
}

#[derive(Debug)]
pub struct PairRun {
    pub left: usize,
    pub right: usize,
    pub report: Result<JoinReport>,
}

/// `b` and `u` for the stored complements followed by the seeded re-choices.
#[derive(Debug)]
pub struct BuRun {
    pub left: usize,
    pub right: usize,
    pub samples: Result<Vec<BuPair>>,
}

#[derive(Debug)]
pub struct CatalogRun {
    pub entries: Vec<CatalogEntry>,
    pub germs: Vec<GermRun>,
    pub pairs: Vec<PairRun>,
    pub bu: Vec<BuRun>,
}

/// Analyzes every germ, verifies every pair under the size cap, and samples
/// `b - u` for every pair (any size) whose `B₁ ⊗ B₂` is nonzero.
pub fn verify_catalog(entries: &[CatalogEntry], opts: &VerifyOptions) -> CatalogRun {
    let germs: Vec<GermRun> = entries
        .par_iter()
        .map(|e| GermRun {
            name: e.name.clone(),
            analysis: analyze_with_cap(&e.germ, opts.join.degree_cap),
        })
        .collect();
    let ok: Vec<Option<&Analysis>> = germs.iter().map(|g| g.analysis.as_ref().ok()).collect();
    let mus: Vec<usize> = ok.iter().map(|a| a.map_or(usize::MAX, |a| a.report.mu)).collect();
    let mut all_pairs = Vec::new();
    for i in 0..entries.len() {
        for j in i..entries.len() {
            if let (Some(a), Some(b)) = (ok[i], ok[j]) {
                all_pairs.push((i, j, a, b));
            }
        }
    }
    let pairs = all_pairs
        .par_iter()
        .filter(|(i, j, ..)| mus[*i].saturating_mul(mus[*j]) <= opts.max_pair_mu)
        .map(|&(i, j, a, b)| PairRun {
            left: i,
            right: j,
            report: verify_pair(&entries[i].germ, &entries[j].germ, a, b, &opts.join),
        })
        .collect();
    let bu = all_pairs
        .par_iter()
        .filter(|(_, _, a, b)| !a.decomposition.b.is_zero() && !b.decomposition.b.is_zero())
        .map(|&(i, j, a, b)| BuRun {
            left: i,
            right: j,
            samples: b_minus_u_samples(a, b, 0..opts.bu_seeds),
        })
        .collect();
    CatalogRun {
        entries: entries.to_vec(),
        germs,
        pairs,
        bu,
    }
}

fn verify_pair(g1: &Germ, g2: &Germ, a1: &Analysis, a2: &Analysis, opts: &JoinOptions) -> Result<JoinReport> {
    let mut report = verify_analyses(a1, a2, opts)?.report;
    if opts.oracle && g1.arity() + g2.arity() <= opts.full_ring_max_arity {
        let (mu, tau) = tau_join_fullring(&make_join(g1, g2)?, opts.full_ring_max_arity)?;
        if (mu, tau) != (report.mu_join, report.tau_join_tensor) {
            return Err(Error::InternalMismatch(format!(
                "full ring gives (mu, tau) = ({mu}, {tau}), tensor gives ({}, {})",
                report.mu_join, report.tau_join_tensor
            )));
        }
        report.tau_join_fullring = Some(tau);
    }
    Ok(report)
}

impl CatalogRun {
    pub fn pair_name(&self, i: usize, j: usize) -> String {
        format!("{}+{}", self.entries[i].name, self.entries[j].name)
    }

    pub fn analysis(&self, name: &str) -> Option<&Analysis> {
        self.germs
            .iter()
            .find(|g| g.name == name)
            .and_then(|g| g.analysis.as_ref().ok())
    }

    /// Verification table in catalog order: germs first, then pairs.
    pub fn rows(&self) -> Vec<CheckRow> {
        let mut rows = Vec::new();
        for (e, g) in self.entries.iter().zip(&self.germs) {
            let r = match &g.analysis {
                Ok(a) => &a.report,
                Err(err) => {
                    rows.push(CheckRow::new(&e.name, "invariants", Err(err.to_string())));
                    continue;
                }
            };
            rows.push(CheckRow::new(
                &e.name,
                "invariants",
                Ok(format!("mu={} tau={} nu1={} ebs={}", r.mu, r.tau, r.nu1, r.ebs)),
            ));
            if !e.expected.is_empty() {
                let m = e.expected.mismatches(r);
                let outcome = if m.is_empty() { Ok(e.expected.to_string()) } else { Err(m.join("; ")) };
                rows.push(CheckRow::new(&e.name, "expectations", outcome));
            }
            rows.push(CheckRow::new(
                &e.name,
                "mu-tau-vs-ebs",
                check_mu_tau_vs_bs(r).map(|v| v.to_string()).map_err(|e| e.to_string()),
            ));
        }
        for p in &self.pairs {
            let name = self.pair_name(p.left, p.right);
            match &p.report {
                Ok(r) => {
                    rows.push(CheckRow::new(
                        &name,
                        "join",
                        Ok(format!(
                            "tau={} mode={} residual={} b={} u={}",
                            r.tau_join_tensor, r.rank_mode, r.theorem_residual, r.b, r.u
                        )),
                    ));
                    if let Some(t) = r.tau_join_fullring {
                        rows.push(CheckRow::new(&name, "oracle", Ok(format!("tau={t}"))));
                    }
                }
                Err(e) => rows.push(CheckRow::new(&name, "join", Err(e.to_string()))),
            }
        }
        for run in &self.bu {
            let name = self.pair_name(run.left, run.right);
            let outcome = match &run.samples {
                Ok(s) => {
                    let first = s[0].difference();
                    let values: Vec<String> = s.iter().map(|p| format!("{}/{}", p.b, p.u)).collect();
                    if s.iter().all(|p| p.difference() == first) {
                        Ok(format!("b-u={first} over {} complements", s.len()))
                    } else {
                        Err(format!("b/u per complement: {}", values.join(" ")))
                    }
                }
                Err(e) => Err(e.to_string()),
            };
            rows.push(CheckRow::new(&name, "b-u-invariance", outcome));
        }
        rows
    }

    pub fn all_ok(&self) -> bool {
        self.rows().iter().all(|r| r.status == Status::Ok)
    }
}

/// One row of the `μ/τ` against `e^BS` table.
#[derive(Clone, Debug, Serialize)]
pub struct QuotientRow {
    pub name: String,
    pub mu: usize,
    pub tau: usize,
    #[serde(serialize_with = "crate::ser::rational")]
    pub quotient: Rational,
    pub ebs: usize,
    pub verdict: String,
}

/// `μ/τ < e^BS` per entry; a failed analysis or check becomes a `fail`
/// verdict carrying the error.
pub fn quotient_rows(entries: &[CatalogEntry], degree_cap: u32) -> Vec<QuotientRow> {
    entries
        .par_iter()
        .map(|e| match analyze_with_cap(&e.germ, degree_cap) {
            Ok(a) => {
                let r = a.report;
                let verdict = match check_mu_tau_vs_bs(&r) {
                    Ok(v) => v.to_string(),
                    Err(err) => format!("fail: {err}"),
                };
                QuotientRow {
                    name: e.name.clone(),
                    mu: r.mu,
                    tau: r.tau,
                    quotient: r.quotient_mu_tau,
                    ebs: r.ebs,
                    verdict,
                }
            }
            Err(err) => QuotientRow {
                name: e.name.clone(),
                mu: 0,
                tau: 0,
                quotient: Rational::from_integer(0.into()),
                ebs: 0,
                verdict: format!("fail: {err}"),
            },
        })
        .collect()
}

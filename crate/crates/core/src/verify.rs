//! Exact identities between length tables, run over single inputs or over a
//! corpus. Every comparison is between integers.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::{recursion_sums, Engine, EstimateSequence, LengthTable};
use crate::error::{Error, Result};
use crate::monomial::MonomialSpec;
use crate::parse::parse_polynomial;
use crate::ring::{Polynomial, PrimeModulus};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

/// Where an identity breaks, with the integers on both sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub e: Option<u32>,
    pub t: Option<u64>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub subject: String,
    pub status: CheckStatus,
    /// Set for failures (the violation) and skips (the reason).
    pub witness: Option<Witness>,
}

impl CheckResult {
    fn pass(id: &str, subject: &str) -> Self {
        CheckResult {
            id: id.into(),
            subject: subject.into(),
            status: CheckStatus::Pass,
            witness: None,
        }
    }

    fn fail(id: &str, subject: &str, e: Option<u32>, t: Option<u64>, detail: String) -> Self {
        CheckResult {
            id: id.into(),
            subject: subject.into(),
            status: CheckStatus::Fail,
            witness: Some(Witness { e, t, detail }),
        }
    }

    fn skipped(id: &str, subject: &str, reason: String) -> Self {
        CheckResult {
            id: id.into(),
            subject: subject.into(),
            status: CheckStatus::Skipped,
            witness: Some(Witness {
                e: None,
                t: None,
                detail: reason,
            }),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == CheckStatus::Fail
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped => "skipped",
        };
        write!(f, "{status:7} {:24} {}", self.id, self.subject)?;
        if let Some(w) = &self.witness {
            write!(f, ": ")?;
            if let Some(e) = w.e {
                write!(f, "e={e} ")?;
            }
            if let Some(t) = w.t {
                write!(f, "t={t} ")?;
            }
            write!(f, "{}", w.detail)?;
        }
        Ok(())
    }
}

fn table_subject(t: &LengthTable) -> String {
    format!("p={} e={} nvars={}", t.p, t.e, t.nvars)
}

/// `Σ_t ℓ_{e,t} = p^{e(n+1)}`.
pub fn check_total_mass(table: &LengthTable) -> CheckResult {
    let id = "total-mass";
    let subject = table_subject(table);
    let total = table.total();
    let expect = table.total_size();
    if total == expect {
        CheckResult::pass(id, &subject)
    } else {
        CheckResult::fail(
            id,
            &subject,
            Some(table.e),
            None,
            format!("sum {total} != p^(e(n+1)) = {expect}"),
        )
    }
}

/// Lengths weakly decreasing, positive below `μ`, and `μ` equal to their
/// count.
pub fn check_monotone(table: &LengthTable) -> CheckResult {
    let id = "monotone";
    let subject = table_subject(table);
    let l = &table.lengths;
    if let Some(t) = (1..l.len()).find(|&t| l[t] > l[t - 1]) {
        return CheckResult::fail(
            id,
            &subject,
            Some(table.e),
            Some(t as u64),
            format!("length {} > previous {}", l[t], l[t - 1]),
        );
    }
    if let Some(t) = l.iter().position(|&x| x == 0) {
        return CheckResult::fail(
            id,
            &subject,
            Some(table.e),
            Some(t as u64),
            format!("zero length before mu = {}", table.mu),
        );
    }
    if table.mu != l.len() as u64 || table.mu > table.side() {
        return CheckResult::fail(
            id,
            &subject,
            Some(table.e),
            None,
            format!(
                "mu = {} with {} lengths, p^e = {}",
                table.mu,
                l.len(),
                table.side()
            ),
        );
    }
    CheckResult::pass(id, &subject)
}

fn consecutive(lo: &LengthTable, hi: &LengthTable) -> Result<()> {
    if lo.p != hi.p || lo.nvars != hi.nvars || lo.e + 1 != hi.e {
        return Err(Error::IncompatibleTables(format!(
            "need consecutive exponents of one ring, got (p={}, e={}, nvars={}) and (p={}, e={}, nvars={})",
            lo.p, lo.e, lo.nvars, hi.p, hi.e, hi.nvars
        )));
    }
    Ok(())
}

fn pair_subject(lo: &LengthTable, hi: &LengthTable) -> String {
    format!("p={} e={}->{} nvars={}", lo.p, lo.e, hi.e, lo.nvars)
}

/// `p^{n+1} ℓ_{e,t} = Σ_{i<p} ℓ_{e+1,pt+i}` for every `t < p^e`.
pub fn check_recursion(lo: &LengthTable, hi: &LengthTable) -> Result<CheckResult> {
    consecutive(lo, hi)?;
    let id = "recursion";
    let subject = pair_subject(lo, hi);
    for (t, left, right) in recursion_sums(lo, hi) {
        if left != right {
            return Ok(CheckResult::fail(
                id,
                &subject,
                Some(lo.e),
                Some(t),
                format!("p^(n+1) * length = {left} but the p lengths above sum to {right}"),
            ));
        }
    }
    Ok(CheckResult::pass(id, &subject))
}

/// `ℓ_{e+1,pt} >= p^n ℓ_{e,t} >= ℓ_{e+1,pt+p-1}` for every `t < p^e`.
pub fn check_sandwich(lo: &LengthTable, hi: &LengthTable) -> Result<CheckResult> {
    consecutive(lo, hi)?;
    let id = "sandwich";
    let subject = pair_subject(lo, hi);
    let p = lo.p;
    let scale = BigInt::from(p).pow(lo.nvars as u32 - 1);
    for t in 0..lo.side() {
        let mid = &scale * lo.length(t);
        let first = BigInt::from(hi.length(p * t));
        let last = BigInt::from(hi.length(p * t + p - 1));
        if !(first >= mid && mid >= last) {
            return Ok(CheckResult::fail(
                id,
                &subject,
                Some(lo.e),
                Some(t),
                format!("expected {first} >= {mid} >= {last}"),
            ));
        }
    }
    Ok(CheckResult::pass(id, &subject))
}

/// `μ_f(p^{e+1}) <= p μ_f(p^e)`.
pub fn check_mu_submultiplicative(lo: &LengthTable, hi: &LengthTable) -> Result<CheckResult> {
    consecutive(lo, hi)?;
    let id = "mu-submultiplicative";
    let subject = pair_subject(lo, hi);
    if hi.mu <= lo.p * lo.mu {
        Ok(CheckResult::pass(id, &subject))
    } else {
        Ok(CheckResult::fail(
            id,
            &subject,
            Some(lo.e),
            None,
            format!("mu(e+1) = {} > p * mu(e) = {}", hi.mu, lo.p * lo.mu),
        ))
    }
}

/// `dim f^{p^e-1} R_e`, computed separately, equals `ℓ_{e,p^e-1}`.
pub fn check_fedder(a_e: u64, table: &LengthTable) -> CheckResult {
    let id = "fedder";
    let subject = table_subject(table);
    let from_table = table.a_e();
    if a_e == from_table {
        CheckResult::pass(id, &subject)
    } else {
        CheckResult::fail(
            id,
            &subject,
            Some(table.e),
            Some(table.side() - 1),
            format!("dim f^(p^e-1) R = {a_e} but the table has {from_table}"),
        )
    }
}

/// Each estimate sequence moves in its expected direction.
pub fn check_estimate(seq: &EstimateSequence, subject: &str) -> CheckResult {
    let id = match seq.kind {
        crate::engine::EstimateKind::Ehk => "ehk-increasing",
        crate::engine::EstimateKind::Fsig => "fsig-decreasing",
        crate::engine::EstimateKind::Fpt => "fpt-decreasing",
        crate::engine::EstimateKind::Pair => "pair-decreasing",
    };
    match seq.violation() {
        None => CheckResult::pass(id, subject),
        Some((a, b)) => {
            let va = &seq.values.iter().find(|v| v.0 == a).expect("present").1;
            let vb = &seq.values.iter().find(|v| v.0 == b).expect("present").1;
            CheckResult::fail(
                id,
                subject,
                Some(a),
                None,
                format!("{va} at e={a}, {vb} at e={b}"),
            )
        }
    }
}

/// Closed-form lengths against the engine, entrywise, for `e <= e_max`.
pub fn check_monomial_agreement(engine: &Engine, spec: &MonomialSpec, e_max: u32) -> CheckResult {
    let id = "monomial-agreement";
    let subject = format!("alpha={spec} p={} e<={e_max}", spec.modulus());
    match engine.tower(&spec.polynomial(), 0, e_max) {
        Ok(tables) => check_monomial_tables(spec, &tables, &subject),
        Err(err) if err.is_capacity() => CheckResult::skipped(id, &subject, err.to_string()),
        Err(err) => CheckResult::fail(id, &subject, None, None, err.to_string()),
    }
}

/// Closed-form lengths against already computed tables of the monomial.
pub fn check_monomial_tables(
    spec: &MonomialSpec,
    tables: &[LengthTable],
    subject: &str,
) -> CheckResult {
    let id = "monomial-agreement";
    for table in tables {
        let e = table.e;
        if BigUint::from(table.mu) != spec.mu(e) {
            return CheckResult::fail(
                id,
                subject,
                Some(e),
                None,
                format!("engine mu {} but closed form {}", table.mu, spec.mu(e)),
            );
        }
        for (t, &l) in table.lengths.iter().enumerate() {
            let c = spec.closed_form_length(e, t as u64);
            if BigUint::from(l) != c {
                return CheckResult::fail(
                    id,
                    subject,
                    Some(e),
                    Some(t as u64),
                    format!("engine {l} but closed form {c}"),
                );
            }
        }
    }
    CheckResult::pass(id, subject)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub f: String,
    pub nvars: usize,
    pub p: u64,
    /// `None`: the largest `e` the capacity allows.
    pub e_max: Option<u32>,
}

impl CorpusEntry {
    pub fn new(f: &str, nvars: usize, p: u64) -> Self {
        CorpusEntry {
            f: f.into(),
            nvars,
            p,
            e_max: None,
        }
    }

    pub fn with_e_max(mut self, e: u32) -> Self {
        self.e_max = Some(e);
        self
    }

    fn subject(&self, e_max: u32) -> String {
        format!("f={} p={} e=0..{}", self.f, self.p, e_max)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
}

impl Corpus {
    pub fn new(entries: Vec<CorpusEntry>) -> Self {
        Corpus { entries }
    }

    /// The built-in corpus: monomials, a linear form, the cusp at four primes,
    /// a Fermat cubic and a three-variable Brieskorn–Pham polynomial.
    pub fn default_corpus() -> Self {
        let entries = [
            ("x*y", 2, 2),
            ("x*y", 2, 3),
            ("x", 2, 2),
            ("x^2", 2, 3),
            ("x^2 + y^3", 2, 2),
            ("x^2 + y^3", 2, 3),
            ("x^2 + y^3", 2, 5),
            ("x^2 + y^3", 2, 7),
            ("x^3 + y^3", 2, 2),
            ("x^3 + y^3", 2, 7),
            ("x*y^2*z^3", 3, 2),
            ("x^2 + y^3 + z^5", 3, 2),
        ]
        .into_iter()
        .map(|(f, n, p)| CorpusEntry::new(f, n, p))
        .collect();
        Corpus { entries }
    }
}

/// Runs every check on one input over `e = 0..=e_max`.
pub fn check_polynomial(
    engine: &Engine,
    f: &Polynomial,
    e_max: u32,
    subject: &str,
) -> Result<Vec<CheckResult>> {
    let tables = engine.tower(f, 0, e_max)?;
    let mut a_values = Vec::with_capacity(tables.len());
    for t in &tables {
        a_values.push(engine.fedder_ae(f, t.e)?);
    }
    Ok(check_tables(&tables, &a_values, subject))
}

/// The table checks on a precomputed tower (consecutive `e`), with
/// independently computed `a_e`.
pub fn check_tables(tables: &[LengthTable], a_values: &[u64], subject: &str) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let first_failure = |results: Vec<CheckResult>, id: &str| -> CheckResult {
        results
            .into_iter()
            .find(|r| !r.passed())
            .map(|mut r| {
                r.subject = subject.to_string();
                r
            })
            .unwrap_or_else(|| CheckResult::pass(id, subject))
    };
    out.push(first_failure(
        tables.iter().map(check_total_mass).collect(),
        "total-mass",
    ));
    out.push(first_failure(
        tables.iter().map(check_monotone).collect(),
        "monotone",
    ));
    let pairs = |check: fn(&LengthTable, &LengthTable) -> Result<CheckResult>, id: &str| {
        let results = tables
            .windows(2)
            .map(|w| {
                check(&w[0], &w[1]).unwrap_or_else(|e| {
                    CheckResult::fail(id, subject, Some(w[0].e), None, e.to_string())
                })
            })
            .collect();
        first_failure(results, id)
    };
    out.push(pairs(check_recursion, "recursion"));
    out.push(pairs(check_sandwich, "sandwich"));
    out.push(pairs(check_mu_submultiplicative, "mu-submultiplicative"));
    out.push(first_failure(
        tables
            .iter()
            .zip(a_values)
            .map(|(t, &a)| check_fedder(a, t))
            .collect(),
        "fedder",
    ));
    let from_one: Vec<LengthTable> = tables.iter().filter(|t| t.e >= 1).cloned().collect();
    for seq in [
        EstimateSequence::ehk(&from_one),
        EstimateSequence::fsig(&from_one),
        EstimateSequence::fpt(&from_one),
    ] {
        out.push(check_estimate(&seq, subject));
    }
    out
}

const TABLE_CHECKS: [&str; 9] = [
    "total-mass",
    "monotone",
    "recursion",
    "sandwich",
    "mu-submultiplicative",
    "fedder",
    "ehk-increasing",
    "fsig-decreasing",
    "fpt-decreasing",
];

fn run_entry(engine: &Engine, entry: &CorpusEntry, tamper: &Tamper) -> Vec<CheckResult> {
    let unparsed = |detail: String| {
        vec![CheckResult::fail(
            "parse",
            &format!("f={} p={}", entry.f, entry.p),
            None,
            None,
            detail,
        )]
    };
    let p = match PrimeModulus::new(entry.p) {
        Ok(p) => p,
        Err(e) => return unparsed(e.to_string()),
    };
    let f = match parse_polynomial(&entry.f, entry.nvars, p) {
        Ok(f) => f,
        Err(e) => return unparsed(e.to_string()),
    };
    let fits = engine.capacity.max_exponent(p, entry.nvars);
    let e_max = entry.e_max.unwrap_or(fits);
    let subject = entry.subject(e_max);
    if e_max > fits {
        let size = BigUint::from(entry.p).pow(e_max * entry.nvars as u32);
        let reason = format!(
            "p^(e(n+1)) = {size} exceeds the capacity {}",
            engine.capacity.0
        );
        return TABLE_CHECKS
            .iter()
            .map(|id| CheckResult::skipped(id, &subject, reason.clone()))
            .collect();
    }
    let mut tables = match engine.tower(&f, 0, e_max) {
        Ok(t) => t,
        Err(e) => {
            return vec![CheckResult::fail(
                "engine",
                &subject,
                None,
                None,
                e.to_string(),
            )]
        }
    };
    let mut a_values = Vec::with_capacity(tables.len());
    for t in &tables {
        match engine.fedder_ae(&f, t.e) {
            Ok(a) => a_values.push(a),
            Err(e) => {
                return vec![CheckResult::fail(
                    "engine",
                    &subject,
                    Some(t.e),
                    None,
                    e.to_string(),
                )]
            }
        }
    }
    tamper(&mut tables);
    let mut out = check_tables(&tables, &a_values, &subject);
    if let Some(spec) = MonomialSpec::from_polynomial(&f) {
        out.push(check_monomial_tables(&spec, &tables, &subject));
    }
    out
}

/// Hook applied to each entry's tables between computation and checking.
pub type Tamper = dyn Fn(&mut Vec<LengthTable>) + Sync;

/// All checks on all entries. Entries run in parallel; the output is in
/// corpus order.
pub fn run_corpus(engine: &Engine, corpus: &Corpus) -> Vec<CheckResult> {
    run_corpus_with(engine, corpus, &|_| {})
}

/// [`run_corpus`] with the tables of every entry passed through `tamper`
/// first. Used to show that the checks catch corrupted input.
pub fn run_corpus_with(engine: &Engine, corpus: &Corpus, tamper: &Tamper) -> Vec<CheckResult> {
    corpus
        .entries
        .par_iter()
        .map(|entry| run_entry(engine, entry, tamper))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

//! One function per subcommand, each producing a [`ReportDoc`].

use std::time::Instant;

use fxi_core::verify::{run_corpus, run_corpus_with, Corpus, CorpusEntry};
use fxi_core::{
    parse_polynomial, ChainStrategy, CheckStatus, Engine, EstimateSequence, FptEstimate,
    LengthTable, MonomialSpec, Polynomial, RationalValue,
};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{CommandKind, RunConfig};
use crate::report::{
    BenchRow, JsonInt, Metadata, MonomialReport, PairRow, ReportDoc, StepReport, TableReport,
    ENGINE_VERSION,
};
use crate::CliError;

/// A finished run: the document, plot files and the exit status.
#[derive(Debug)]
pub struct Outcome {
    pub doc: ReportDoc,
    /// `(file name, contents)`.
    pub dat_files: Vec<(String, String)>,
    /// 0, or 2 when a check or a strategy comparison failed.
    pub status: i32,
}

impl Outcome {
    fn ok(doc: ReportDoc) -> Self {
        Outcome {
            doc,
            dat_files: Vec::new(),
            status: 0,
        }
    }
}

pub fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    match config.command {
        CommandKind::Table => cmd_table(config),
        CommandKind::Xi => cmd_xi(config),
        CommandKind::Estimates => cmd_estimates(config),
        CommandKind::Pair => cmd_pair(config),
        CommandKind::Monomial => cmd_monomial(config),
        CommandKind::Verify => cmd_verify(config),
        CommandKind::Bench => cmd_bench(config),
    }
}

fn metadata(config: &RunConfig, f: Option<&str>, e: Option<(u32, u32)>) -> Metadata {
    Metadata {
        command: config.command.name().to_string(),
        f: f.map(str::to_string),
        nvars: f.map(|_| config.nvars),
        p: config.p.map(|p| p.get() as u64),
        e_range: e.map(|(a, b)| [a, b]),
        field: "F_p".to_string(),
        engine_version: ENGINE_VERSION.to_string(),
        capacity: JsonInt(config.capacity.0),
    }
}

fn polynomial(config: &RunConfig) -> Result<Polynomial, CliError> {
    let text = config.f.as_deref().expect("checked by RunConfig");
    Ok(parse_polynomial(text, config.nvars, config.modulus())?)
}

fn engine(config: &RunConfig) -> Engine {
    Engine::new(config.capacity)
}

pub fn cmd_table(config: &RunConfig) -> Result<Outcome, CliError> {
    let f = polynomial(config)?;
    let r = config.e_range();
    let tables = engine(config).tower(&f, r.lo, r.hi)?;
    let mut doc = ReportDoc {
        metadata: metadata(config, config.f.as_deref(), Some((r.lo, r.hi))),
        ..ReportDoc::default()
    };
    doc.tables = tables.iter().map(TableReport::from).collect();
    Ok(Outcome::ok(doc))
}

pub fn cmd_xi(config: &RunConfig) -> Result<Outcome, CliError> {
    let f = polynomial(config)?;
    let r = config.e_range();
    let tables = engine(config).tower(&f, r.lo, r.hi)?;
    let mut doc = ReportDoc {
        metadata: metadata(config, config.f.as_deref(), Some((r.lo, r.hi))),
        ..ReportDoc::default()
    };
    let mut dat_files = Vec::new();
    for table in &tables {
        let step = table.xi_step();
        let breakpoints = step.breakpoints();
        let header = format!(
            "xi_(f,{}) for f = {}, p = {}; value on [x_i, x_(i+1)), last point is x = 1",
            table.e,
            config.f.as_deref().unwrap_or_default(),
            table.p
        );
        dat_files.push((
            format!("xi_e{}.dat", table.e),
            crate::report::dat(&breakpoints, &header),
        ));
        doc.steps.push(StepReport {
            e: table.e,
            breakpoints,
            integral: step.integral(),
        });
    }
    for alpha in &config.alpha {
        for table in &tables {
            doc.brackets.push(table.bracket(alpha)?);
        }
    }
    Ok(Outcome {
        doc,
        dat_files,
        status: 0,
    })
}

/// A single `--e n` means `1..n` here.
pub fn cmd_estimates(config: &RunConfig) -> Result<Outcome, CliError> {
    let f = polynomial(config)?;
    let r = config.e_range();
    let (lo, hi) = if r.single {
        (1.min(r.hi), r.hi)
    } else {
        (r.lo, r.hi)
    };
    let tables = engine(config).tower(&f, lo, hi)?;
    let mut doc = ReportDoc {
        metadata: metadata(config, config.f.as_deref(), Some((lo, hi))),
        ..ReportDoc::default()
    };
    doc.estimates = vec![
        EstimateSequence::ehk(&tables),
        EstimateSequence::fsig(&tables),
    ];
    let fpt = FptEstimate::from_tables(&tables).expect("at least one table");
    if let Some(c) = &fpt.caveat {
        doc.notices.push(format!("fpt: {c}"));
    }
    doc.fpt = Some(fpt);
    let mut status = 0;
    for seq in doc
        .estimates
        .iter()
        .chain(doc.fpt.iter().map(|f| &f.sequence))
    {
        if let Some((a, b)) = seq.violation() {
            doc.notices.push(format!(
                "{:?} estimates break their direction between e={a} and e={b}",
                seq.kind
            ));
            status = 2;
        }
    }
    Ok(Outcome {
        doc,
        dat_files: Vec::new(),
        status,
    })
}

pub fn cmd_pair(config: &RunConfig) -> Result<Outcome, CliError> {
    let f = polynomial(config)?;
    let r = config.e_range();
    let engine = engine(config);
    let mut doc = ReportDoc {
        metadata: metadata(config, config.f.as_deref(), Some((r.lo, r.hi))),
        ..ReportDoc::default()
    };
    for e in r.lo..=r.hi {
        let table = engine.length_table(&f, e)?;
        for t in &config.t {
            let s = (t.clone() * RationalValue::from(table.side() - 1)).ceil();
            doc.pairs.push(PairRow {
                e,
                t: t.clone(),
                s: JsonInt(s.try_into().expect("s < p^e")),
                estimate: engine.pair_fsignature_estimate(&f, e, t)?,
                one_minus_phi: RationalValue::one() - table.phi_partial(t)?,
            });
        }
    }
    Ok(Outcome::ok(doc))
}

/// Points of the ξ polynomial on `[0, fpt]`.
const SAMPLES: u64 = 64;

pub fn cmd_monomial(config: &RunConfig) -> Result<Outcome, CliError> {
    let p = config.modulus();
    let spec = if config.exponents.is_empty() {
        MonomialSpec::from_polynomial(&polynomial(config)?)
            .ok_or_else(|| CliError::Usage("--f is not a single monomial".into()))?
    } else {
        MonomialSpec::new(config.exponents.clone(), p)?
    };
    let xi = spec.xi_polynomial();
    let class = spec.classify();
    let alpha_sum: u64 = spec.alphas().iter().map(|&a| a as u64).sum();
    let fpt = spec.exact_fpt();
    let report = MonomialReport {
        alphas: spec.alphas().to_vec(),
        p: p.get() as u64,
        betas: spec
            .elementary_symmetric()
            .iter()
            .map(|b| b.to_string())
            .collect(),
        xi_coefficients: xi.coefficients.iter().map(|c| c.to_string()).collect(),
        convergence_constant: spec.convergence_constant().to_string(),
        fpt: fpt.clone(),
        left_limit: spec.left_limit_at_fpt(),
        continuous: class.continuous,
        limit_exists_at_fpt: class.limit_exists_at_fpt,
        limsup_at_fpt: spec.limsup_at_fpt(),
        liminf_at_fpt_conjectural: spec.liminf_at_fpt_conjectural(),
        epsilon: class.analysis,
        corollary_ratio: RationalValue::from(alpha_sum) * fpt.clone(),
    };
    let samples: Vec<(RationalValue, RationalValue)> = (0..=SAMPLES)
        .map(|k| {
            let x = fpt.clone() * RationalValue::new(k, SAMPLES);
            let y = xi.eval(&x);
            (x, y)
        })
        .collect();
    let header = format!("xi polynomial for alpha = {spec}, sampled on [0, fpt]");
    let mut doc = ReportDoc {
        metadata: metadata(config, config.f.as_deref(), None),
        monomial: Some(report),
        ..ReportDoc::default()
    };
    doc.notices
        .push("liminf_at_fpt_conjectural is the symmetric counterpart of the limsup formula, not a proven value".into());
    Ok(Outcome {
        doc,
        dat_files: vec![(
            "monomial_xi.dat".into(),
            crate::report::dat(&samples, &header),
        )],
        status: 0,
    })
}

pub fn cmd_verify(config: &RunConfig) -> Result<Outcome, CliError> {
    let engine = engine(config);
    let corpus = match &config.f {
        None => Corpus::default_corpus(),
        Some(text) => {
            polynomial(config)?;
            let mut entry = CorpusEntry::new(text, config.nvars, config.modulus().get() as u64);
            entry.e_max = config.e.map(|r| r.hi);
            Corpus::new(vec![entry])
        }
    };
    let checks = if config.corrupt {
        run_corpus_with(&engine, &corpus, &|tables: &mut Vec<LengthTable>| {
            if let Some(last) = tables.last_mut() {
                last.lengths[0] += 1;
            }
        })
    } else {
        run_corpus(&engine, &corpus)
    };
    let status = if checks.iter().any(|c| c.failed()) {
        2
    } else {
        0
    };
    let e_range = config.f.as_ref().and_then(|_| config.e.map(|r| (0, r.hi)));
    let mut doc = ReportDoc {
        metadata: metadata(config, config.f.as_deref(), e_range),
        ..ReportDoc::default()
    };
    for c in checks.iter().filter(|c| c.status == CheckStatus::Skipped) {
        doc.notices.push(format!("skipped: {c}"));
    }
    doc.checks = checks;
    Ok(Outcome {
        doc,
        dat_files: Vec::new(),
        status,
    })
}

/// Random polynomial in the maximal ideal: 2 to 4 terms with exponents
/// below 4.
pub fn random_polynomial_text(seed: u64, nvars: usize, p: u64) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let terms = rng.gen_range(2..=4);
    let mut seen = std::collections::BTreeSet::new();
    let mut parts = Vec::new();
    while parts.len() < terms {
        let mut exps: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..4)).collect();
        if exps.iter().all(|&a| a == 0) {
            let i = rng.gen_range(0..nvars);
            exps[i] = 1;
        }
        if !seen.insert(exps.clone()) {
            continue;
        }
        let c = if p > 2 { rng.gen_range(1..p) } else { 1 };
        let mut factors: Vec<String> = Vec::new();
        if c != 1 {
            factors.push(c.to_string());
        }
        for (i, &a) in exps.iter().enumerate() {
            match a {
                0 => {}
                1 => factors.push(format!("x{}", i + 1)),
                _ => factors.push(format!("x{}^{a}", i + 1)),
            }
        }
        parts.push(factors.join("*"));
    }
    parts.join(" + ")
}

pub fn cmd_bench(config: &RunConfig) -> Result<Outcome, CliError> {
    let p = config.modulus();
    let text = match &config.f {
        Some(t) => t.clone(),
        None => random_polynomial_text(config.seed, config.nvars, p.get() as u64),
    };
    let f = parse_polynomial(&text, config.nvars, p)?;
    let r = config.e_range();
    let mut doc = ReportDoc {
        metadata: metadata(config, Some(&text), Some((r.lo, r.hi))),
        ..ReportDoc::default()
    };
    let spec = MonomialSpec::from_polynomial(&f);
    if spec.is_none() {
        doc.notices
            .push("f is not a monomial: the combinatorial counting strategy is skipped".into());
    }
    let mut status = 0;
    for e in r.lo..=r.hi {
        let mut runs: Vec<(String, u64, Vec<u64>)> = Vec::new();
        for (name, strategy) in [
            ("graded", ChainStrategy::Graded),
            ("incremental", ChainStrategy::Incremental),
            ("naive", ChainStrategy::Naive),
        ] {
            let start = Instant::now();
            let table = Engine::new(config.capacity)
                .with_strategy(strategy)
                .length_table(&f, e)?;
            runs.push((
                name.into(),
                start.elapsed().as_nanos() as u64,
                table.lengths,
            ));
        }
        if let Some(spec) = &spec {
            let start = Instant::now();
            let lengths = combinatorial_lengths(spec, e);
            runs.push((
                "combinatorial".into(),
                start.elapsed().as_nanos() as u64,
                lengths,
            ));
        }
        if config.corrupt {
            runs.last_mut().expect("three strategies").2[0] += 1;
        }
        let reference = runs[0].2.clone();
        for (strategy, nanos, lengths) in runs {
            let agrees = lengths == reference;
            if !agrees {
                status = 2;
                doc.notices.push(format!(
                    "e={e}: {strategy} disagrees with the graded strategy"
                ));
            }
            doc.bench.push(BenchRow {
                e,
                strategy,
                nanos: JsonInt(nanos),
                mu: JsonInt(lengths.len() as u64),
                agrees,
            });
        }
    }
    Ok(Outcome {
        doc,
        dat_files: Vec::new(),
        status,
    })
}

fn combinatorial_lengths(spec: &MonomialSpec, e: u32) -> Vec<u64> {
    let mu: u64 = spec.mu(e).try_into().expect("mu <= p^e");
    (0..mu)
        .map(|t| {
            let l: BigUint = spec.closed_form_length(e, t);
            l.try_into().expect("fits the ring")
        })
        .collect()
}

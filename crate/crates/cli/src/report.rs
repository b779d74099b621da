//! The report document and its CSV, JSON and dat renderings.

use std::fmt::Write as _;

use fxi_core::{
    Bracket, CheckResult, EpsilonAnalysis, EstimateSequence, FptEstimate, LengthTable,
    RationalValue,
};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Largest integer that JSON consumers read exactly as a double.
pub const JSON_SAFE: u64 = 1 << 53;

/// An integer written as a JSON number up to 2^53 and as a decimal string
/// above.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct JsonInt(pub u64);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0 <= JSON_SAFE {
            s.serialize_u64(self.0)
        } else {
            s.collect_str(&self.0)
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Number(u64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Number(n) => Ok(JsonInt(n)),
            Repr::Text(s) => s.parse().map(JsonInt).map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nvars: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e_range: Option<[u32; 2]>,
    /// Coefficient field; always the prime field.
    pub field: String,
    pub engine_version: String,
    pub capacity: JsonInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub e: u32,
    pub mu: JsonInt,
    pub a_e: JsonInt,
    /// `p^{en}`, the denominator of every `C_{e,t}`.
    pub denominator: String,
    pub lengths: Vec<JsonInt>,
    pub c: Vec<RationalValue>,
}

impl From<&LengthTable> for TableReport {
    fn from(t: &LengthTable) -> Self {
        TableReport {
            e: t.e,
            mu: JsonInt(t.mu),
            a_e: JsonInt(t.a_e()),
            denominator: t.c_denominator().to_string(),
            lengths: t.lengths.iter().map(|&l| JsonInt(l)).collect(),
            c: (0..t.mu).map(|i| t.c_value(i)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepReport {
    pub e: u32,
    pub breakpoints: Vec<(RationalValue, RationalValue)>,
    pub integral: RationalValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRow {
    pub e: u32,
    pub t: RationalValue,
    /// `⌈t (p^e - 1)⌉`.
    pub s: JsonInt,
    pub estimate: RationalValue,
    pub one_minus_phi: RationalValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialReport {
    pub alphas: Vec<u32>,
    pub p: u64,
    pub betas: Vec<String>,
    /// `c_0, c_1, ...` of `ξ_f(x) = Σ c_k x^k` below the fpt.
    pub xi_coefficients: Vec<String>,
    pub convergence_constant: String,
    pub fpt: RationalValue,
    pub left_limit: RationalValue,
    pub continuous: bool,
    pub limit_exists_at_fpt: bool,
    pub epsilon: EpsilonAnalysis,
    pub limsup_at_fpt: RationalValue,
    /// Not a proven value: the symmetric counterpart of the limsup formula.
    pub liminf_at_fpt_conjectural: RationalValue,
    pub corollary_ratio: RationalValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchRow {
    pub e: u32,
    pub strategy: String,
    pub nanos: JsonInt,
    pub mu: JsonInt,
    pub agrees: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub metadata: Metadata,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tables: Vec<TableReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub estimates: Vec<EstimateSequence>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fpt: Option<FptEstimate>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub steps: Vec<StepReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub brackets: Vec<Bracket>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pairs: Vec<PairRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monomial: Option<MonomialReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckResult>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bench: Vec<BenchRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notices: Vec<String>,
}

impl ReportDoc {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Rows `e,t,length,c_num,c_den` for every table.
    pub fn table_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["e", "t", "length", "c_num", "c_den"])
            .expect("in memory");
        for table in &self.tables {
            for (t, (l, c)) in table.lengths.iter().zip(&table.c).enumerate() {
                w.write_record([
                    table.e.to_string(),
                    t.to_string(),
                    l.0.to_string(),
                    c.numer().to_string(),
                    c.denom().to_string(),
                ])
                .expect("in memory");
            }
        }
        String::from_utf8(w.into_inner().expect("in memory")).expect("utf8")
    }

    /// Every number in the document as `section,e,key,value` rows.
    pub fn long_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["section", "e", "key", "value"])
            .expect("in memory");
        let mut row = |section: &str, e: Option<u32>, key: String, value: String| {
            let e = e.map(|e| e.to_string()).unwrap_or_default();
            w.write_record([section, &e, &key, &value])
                .expect("in memory");
        };
        for t in &self.tables {
            row("mu", Some(t.e), String::new(), t.mu.0.to_string());
            for (i, (l, c)) in t.lengths.iter().zip(&t.c).enumerate() {
                row("length", Some(t.e), i.to_string(), l.0.to_string());
                row("c", Some(t.e), i.to_string(), c.to_string());
            }
        }
        for seq in &self.estimates {
            let name = serde_json::to_value(seq.kind).expect("enum");
            for (e, v) in &seq.values {
                row(
                    name.as_str().unwrap_or("estimate"),
                    Some(*e),
                    String::new(),
                    v.to_string(),
                );
            }
        }
        if let Some(fpt) = &self.fpt {
            for (e, v) in &fpt.sequence.values {
                row("fpt", Some(*e), String::new(), v.to_string());
            }
            row(
                "fpt-upper-bound",
                Some(fpt.at_e),
                String::new(),
                fpt.upper_bound.to_string(),
            );
        }
        for s in &self.steps {
            for (x, y) in &s.breakpoints {
                row("xi", Some(s.e), x.to_string(), y.to_string());
            }
            row(
                "xi-integral",
                Some(s.e),
                String::new(),
                s.integral.to_string(),
            );
        }
        for b in &self.brackets {
            row(
                "bracket-lower",
                Some(b.e),
                b.alpha.to_string(),
                b.lower.to_string(),
            );
            if let Some(u) = &b.upper {
                row(
                    "bracket-upper",
                    Some(b.e),
                    b.alpha.to_string(),
                    u.to_string(),
                );
            }
        }
        for p in &self.pairs {
            row("pair", Some(p.e), p.t.to_string(), p.estimate.to_string());
            row(
                "one-minus-phi",
                Some(p.e),
                p.t.to_string(),
                p.one_minus_phi.to_string(),
            );
        }
        if let Some(m) = &self.monomial {
            for (j, b) in m.betas.iter().enumerate() {
                row("beta", None, (j + 1).to_string(), b.clone());
            }
            for (k, c) in m.xi_coefficients.iter().enumerate() {
                row("xi-coefficient", None, k.to_string(), c.clone());
            }
            row("fpt", None, String::new(), m.fpt.to_string());
            row("left-limit", None, String::new(), m.left_limit.to_string());
            row(
                "limsup-at-fpt",
                None,
                String::new(),
                m.limsup_at_fpt.to_string(),
            );
            row(
                "liminf-at-fpt-conjectural",
                None,
                String::new(),
                m.liminf_at_fpt_conjectural.to_string(),
            );
            row("continuous", None, String::new(), m.continuous.to_string());
            row(
                "limit-exists-at-fpt",
                None,
                String::new(),
                m.limit_exists_at_fpt.to_string(),
            );
            for (i, c) in m.epsilon.cycle.iter().enumerate() {
                row("epsilon-cycle", None, i.to_string(), c.to_string());
            }
        }
        for c in &self.checks {
            let status = serde_json::to_value(c.status).expect("enum");
            row(
                "check",
                None,
                format!("{} {}", c.id, c.subject),
                status.as_str().unwrap_or_default().to_string(),
            );
        }
        for b in &self.bench {
            row(
                "bench-nanos",
                Some(b.e),
                b.strategy.clone(),
                b.nanos.0.to_string(),
            );
        }
        String::from_utf8(w.into_inner().expect("in memory")).expect("utf8")
    }
}

/// Three columns `x_exact y_exact y_decimal`, one point per line.
pub fn dat(points: &[(RationalValue, RationalValue)], header: &str) -> String {
    let mut out = String::new();
    for line in header.lines() {
        let _ = writeln!(out, "# {line}");
    }
    let _ = writeln!(out, "# x_exact y_exact y_decimal");
    for (x, y) in points {
        let _ = writeln!(out, "{x} {y} {}", y.to_decimal(17));
    }
    out
}

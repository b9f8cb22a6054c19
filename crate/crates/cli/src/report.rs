//! Serializable per-graph reports and their JSON / CSV / text renderings.
//!
//! Field names of the verification record follow the published report
//! schema (`multL`, `nullityQ`, ...). Extra fields are additive.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use pendant_spectra_core::pendant::PendantProfile;
use pendant_spectra_core::verify::{ConjectureRow, ExactRow, TheoremRow, TightnessSummary};
use pendant_spectra_core::{Graph, LemmaReport, TheoremReport};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PathCounts {
    pub p: usize,
    pub q: usize,
}

pub fn profile_counts(profile: &PendantProfile) -> BTreeMap<usize, PathCounts> {
    profile
        .lengths()
        .map(|k| (k, PathCounts { p: profile.p(k), q: profile.q(k) }))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TheoremJson {
    pub k: usize,
    pub i: usize,
    pub target: f64,
    pub mult_l: usize,
    pub mult_q: usize,
    pub bound: usize,
    pub pass: bool,
}

impl From<&TheoremRow> for TheoremJson {
    fn from(r: &TheoremRow) -> Self {
        TheoremJson {
            k: r.k,
            i: r.i,
            target: r.target,
            mult_l: r.mult_l,
            mult_q: r.mult_q,
            bound: r.bound,
            pass: r.pass(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ExactJson {
    pub k: usize,
    pub nullity_l: usize,
    pub nullity_q: usize,
    pub bound: usize,
    pub pass: bool,
    pub numeric_l: usize,
    pub numeric_q: usize,
    pub discrepancy: bool,
}

impl From<&ExactRow> for ExactJson {
    fn from(r: &ExactRow) -> Self {
        ExactJson {
            k: r.check.k,
            nullity_l: r.check.nullity_l,
            nullity_q: r.check.nullity_q,
            bound: r.check.bound,
            pass: r.check.pass,
            numeric_l: r.numeric_sum_l,
            numeric_q: r.numeric_sum_q,
            discrepancy: r.discrepancy(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConjectureJson {
    pub k: usize,
    pub bound: usize,
    pub largest_cluster: usize,
    pub pass: bool,
}

impl From<&ConjectureRow> for ConjectureJson {
    fn from(r: &ConjectureRow) -> Self {
        ConjectureJson {
            k: r.k,
            bound: r.bound,
            largest_cluster: r.largest_cluster,
            pass: r.pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LemmaJson {
    pub lemma: u8,
    pub bipartite: bool,
    pub trials: usize,
    pub max_deviation: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl From<&LemmaReport> for LemmaJson {
    fn from(r: &LemmaReport) -> Self {
        LemmaJson {
            lemma: r.lemma.id(),
            bipartite: r.bipartite,
            trials: r.trials,
            max_deviation: r.max_deviation,
            threshold: r.threshold,
            pass: r.pass,
        }
    }
}

/// One verified graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyRecord {
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub profile: BTreeMap<usize, PathCounts>,
    pub theorem: Vec<TheoremJson>,
    pub exact: Vec<ExactJson>,
    pub conjecture: Vec<ConjectureJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lemma1: Option<LemmaJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lemma2: Option<LemmaJson>,
    pub pass: bool,
}

impl VerifyRecord {
    pub fn new(
        graph6: String,
        g: &Graph,
        report: &TheoremReport,
        lemmas: Option<(&LemmaReport, &LemmaReport)>,
    ) -> Self {
        let lemma_pass = lemmas.is_none_or(|(a, b)| a.pass && b.pass);
        VerifyRecord {
            graph6,
            n: g.order(),
            m: g.size(),
            profile: profile_counts(&report.profile),
            theorem: report.rows.iter().map(TheoremJson::from).collect(),
            exact: report.exact.iter().map(ExactJson::from).collect(),
            conjecture: report.conjecture.iter().map(ConjectureJson::from).collect(),
            lemma1: lemmas.map(|(a, _)| LemmaJson::from(a)),
            lemma2: lemmas.map(|(_, b)| LemmaJson::from(b)),
            pass: report.pass && lemma_pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathJson {
    pub leaf: usize,
    pub anchor: usize,
    pub length: usize,
}

/// Pendant structure and spectra of one graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AnalyzeRecord {
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub profile: BTreeMap<usize, PathCounts>,
    pub paths: Vec<PathJson>,
    pub spectrum_l: Vec<f64>,
    pub spectrum_q: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SurveyRowJson {
    pub k: usize,
    pub i: usize,
    pub target: f64,
    pub rows: usize,
    pub tight_l: usize,
    pub tight_q: usize,
    pub fraction_tight_l: f64,
    pub fraction_tight_q: f64,
    pub slack_l: BTreeMap<usize, usize>,
    pub slack_q: BTreeMap<usize, usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurveyJson {
    pub graphs: usize,
    pub skipped: usize,
    pub violations: usize,
    pub rows: Vec<SurveyRowJson>,
}

impl SurveyJson {
    pub fn new(summary: &TightnessSummary, skipped: usize) -> Self {
        SurveyJson {
            graphs: summary.graphs,
            skipped,
            violations: summary.violations,
            rows: summary
                .rows
                .values()
                .map(|r| SurveyRowJson {
                    k: r.k,
                    i: r.i,
                    target: r.target,
                    rows: r.rows,
                    tight_l: r.tight_l(),
                    tight_q: r.tight_q(),
                    fraction_tight_l: r.fraction_tight_l(),
                    fraction_tight_q: r.fraction_tight_q(),
                    slack_l: r.slack_l.clone(),
                    slack_q: r.slack_q.clone(),
                })
                .collect(),
        }
    }
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("report types serialize");
    s.push('\n');
    s
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn profile_text(profile: &BTreeMap<usize, PathCounts>) -> String {
    join(profile.iter().map(|(k, c)| format!("{k}:{}/{}", c.p, c.q)), ";")
}

pub const VERIFY_CSV_HEADER: &str = "index,graph6,n,m,k,i,target,multL,multQ,bound,pass\n";
pub const ANALYZE_CSV_HEADER: &str = "index,graph6,n,m,profile,spectrumL,spectrumQ\n";

pub fn render_verify(index: usize, rec: &VerifyRecord, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => json_line(rec),
        OutputFormat::Csv => {
            let mut s = String::new();
            if rec.theorem.is_empty() {
                writeln!(s, "{index},{},{},{},,,,,,,{}", rec.graph6, rec.n, rec.m, rec.pass).unwrap();
            }
            for r in &rec.theorem {
                writeln!(
                    s,
                    "{index},{},{},{},{},{},{},{},{},{},{}",
                    rec.graph6, rec.n, rec.m, r.k, r.i, r.target, r.mult_l, r.mult_q, r.bound, r.pass
                )
                .unwrap();
            }
            s
        }
        OutputFormat::Text => {
            let verdict = if rec.pass { "PASS" } else { "FAIL" };
            let mut s = format!(
                "graph {index} {}: n={} m={} profile[{}] {verdict}\n",
                rec.graph6,
                rec.n,
                rec.m,
                profile_text(&rec.profile)
            );
            for r in &rec.theorem {
                writeln!(
                    s,
                    "  k={} i={} target={:.10} multL={} multQ={} bound={} {}",
                    r.k,
                    r.i,
                    r.target,
                    r.mult_l,
                    r.mult_q,
                    r.bound,
                    if r.pass { "ok" } else { "FAIL" }
                )
                .unwrap();
            }
            for e in &rec.exact {
                writeln!(
                    s,
                    "  exact k={} nullityL={} nullityQ={} bound={} {}{}",
                    e.k,
                    e.nullity_l,
                    e.nullity_q,
                    e.bound,
                    if e.pass { "ok" } else { "FAIL" },
                    if e.discrepancy { " (numeric disagrees)" } else { "" }
                )
                .unwrap();
            }
            for l in rec.lemma1.iter().chain(&rec.lemma2) {
                writeln!(
                    s,
                    "  lemma{} deviation={:.3e} threshold={:.3e} {}",
                    l.lemma,
                    l.max_deviation,
                    l.threshold,
                    if l.pass { "ok" } else { "FAIL" }
                )
                .unwrap();
            }
            s
        }
    }
}

pub fn render_analyze(index: usize, rec: &AnalyzeRecord, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => json_line(rec),
        OutputFormat::Csv => format!(
            "{index},{},{},{},{},{},{}\n",
            rec.graph6,
            rec.n,
            rec.m,
            profile_text(&rec.profile),
            join(&rec.spectrum_l, ";"),
            join(&rec.spectrum_q, ";")
        ),
        OutputFormat::Text => {
            let fmt = |v: &[f64]| join(v.iter().map(|x| format!("{x:.10}")), " ");
            format!(
                "graph {index} {}: n={} m={}\n  pendant paths [{}]\n  L: {}\n  Q: {}\n",
                rec.graph6,
                rec.n,
                rec.m,
                profile_text(&rec.profile),
                fmt(&rec.spectrum_l),
                fmt(&rec.spectrum_q)
            )
        }
    }
}

pub fn render_survey(survey: &SurveyJson, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => json_line(survey),
        OutputFormat::Csv => {
            let mut s = String::from("k,i,target,rows,tightL,tightQ,fractionTightL,fractionTightQ,slackL,slackQ\n");
            let hist = |h: &BTreeMap<usize, usize>| join(h.iter().map(|(k, v)| format!("{k}:{v}")), ";");
            for r in &survey.rows {
                writeln!(
                    s,
                    "{},{},{},{},{},{},{},{},{},{}",
                    r.k,
                    r.i,
                    r.target,
                    r.rows,
                    r.tight_l,
                    r.tight_q,
                    r.fraction_tight_l,
                    r.fraction_tight_q,
                    hist(&r.slack_l),
                    hist(&r.slack_q)
                )
                .unwrap();
            }
            s
        }
        OutputFormat::Text => {
            let mut s = format!(
                "graphs={} skipped={} violations={}\n",
                survey.graphs, survey.skipped, survey.violations
            );
            for r in &survey.rows {
                writeln!(
                    s,
                    "  k={} i={} target={:.10} rows={} tightL={:.4} tightQ={:.4}",
                    r.k, r.i, r.target, r.rows, r.fraction_tight_l, r.fraction_tight_q
                )
                .unwrap();
            }
            s
        }
    }
}

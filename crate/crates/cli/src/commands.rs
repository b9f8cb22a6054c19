//! Subcommand implementations, independent of argument parsing and process IO.

use std::io::{self, Write};

use pendant_spectra_core::matrices::{
    adjacency, directed_incidence, incidence, laplacian, signed_subdivision_adjacency, signless_laplacian,
    subdivision_adjacency,
};
use pendant_spectra_core::generate::corpus_rng;
use pendant_spectra_core::spectra::int_spectrum;
use pendant_spectra_core::verify::{verify_lemma1, Lemma2Config, TightnessSummary, DEFAULT_SIZE_CAP};
use pendant_spectra_core::{
    find_pendant_paths, generate, verify_lemma2, verify_theorem, Error as CoreError, GeneratorRecipe,
    Graph, IntMatrix, Orientation, Tolerance, VerifyConfig,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::input::{graph6_or_empty, read_graphs, InputGraph};
use crate::report::{
    profile_counts, render_analyze, render_survey, render_verify, AnalyzeRecord, OutputFormat, PathJson, SurveyJson,
    VerifyRecord, ANALYZE_CSV_HEADER, VERIFY_CSV_HEADER,
};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// `n + m` at or below which exact checks run when not forced either way.
pub const AUTO_EXACT_LIMIT: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExactMode {
    Auto,
    On,
    Off,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CliConfig {
    /// Absolute tolerance; `None` keeps the norm-scaled default.
    pub tolerance: Option<f64>,
    pub kmax: Option<usize>,
    pub exact: ExactMode,
    pub lemmas: bool,
    pub format: OutputFormat,
    pub jobs: usize,
    pub seed: u64,
    pub force: bool,
    pub trials: usize,
}

impl Default for CliConfig {
    fn default() -> Self {
        CliConfig {
            tolerance: None,
            kmax: None,
            exact: ExactMode::Auto,
            lemmas: false,
            format: OutputFormat::Json,
            jobs: 1,
            seed: 0,
            force: false,
            trials: Lemma2Config::default().trials,
        }
    }
}

impl CliConfig {
    pub fn tolerance(&self) -> Tolerance {
        self.tolerance.map_or_else(Tolerance::default, Tolerance::Absolute)
    }

    pub fn verify_config(&self, g: &Graph) -> VerifyConfig {
        let exact = match self.exact {
            ExactMode::On => true,
            ExactMode::Off => false,
            ExactMode::Auto => g.order() + g.size() <= AUTO_EXACT_LIMIT,
        };
        VerifyConfig {
            tolerance: self.tolerance(),
            kmax: self.kmax,
            exact,
            size_cap: if self.force { usize::MAX } else { DEFAULT_SIZE_CAP },
            exact_order_cap: if self.force { usize::MAX } else { VerifyConfig::default().exact_order_cap },
        }
    }

    fn within_cap(&self, g: &Graph) -> bool {
        self.force || g.order() + g.size() <= DEFAULT_SIZE_CAP
    }
}

/// What happened to one input graph.
enum Outcome<T> {
    Done(T),
    Skipped(String),
    Failed(String),
}

/// Runs `work` over the parsed graphs on a pool of `jobs` threads and returns
/// results in input order.
fn run_pool<T: Send>(
    jobs: usize,
    graphs: &[InputGraph],
    work: impl Fn(usize, &InputGraph) -> T + Sync + Send,
) -> Vec<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| graphs.par_iter().enumerate().map(|(i, g)| work(i, g)).collect())
}

/// Parses the input, reporting every parse failure on `err`. Returns the
/// graphs and whether any line failed.
fn parse_input(text: &str, err: &mut dyn Write) -> io::Result<(Vec<InputGraph>, bool)> {
    let mut graphs = Vec::new();
    let mut failed = false;
    for item in read_graphs(text) {
        match item {
            Ok(g) => graphs.push(g),
            Err(e) => {
                writeln!(err, "error: {e}")?;
                failed = true;
            }
        }
    }
    Ok((graphs, failed))
}

fn size_warning(input: &InputGraph) -> String {
    let g = &input.graph;
    format!(
        "warning: line {}: skipped graph with n + m = {} above the cap {DEFAULT_SIZE_CAP} (use --force)",
        input.line,
        g.order() + g.size()
    )
}

fn exit_code(parse_failed: bool, verification_failed: bool) -> u8 {
    if parse_failed {
        EXIT_USAGE
    } else if verification_failed {
        EXIT_FAIL
    } else {
        EXIT_PASS
    }
}

fn emit<T>(
    outcomes: Vec<Outcome<T>>,
    out: &mut dyn Write,
    err: &mut dyn Write,
    mut render: impl FnMut(usize, &T) -> String,
) -> io::Result<usize> {
    let mut failures = 0;
    for (idx, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            Outcome::Done(rec) => out.write_all(render(idx + 1, &rec).as_bytes())?,
            Outcome::Skipped(msg) => writeln!(err, "{msg}")?,
            Outcome::Failed(msg) => {
                writeln!(err, "{msg}")?;
                failures += 1;
            }
        }
    }
    Ok(failures)
}

fn analyze_one(input: &InputGraph, config: &CliConfig) -> Outcome<AnalyzeRecord> {
    let g = &input.graph;
    if !config.within_cap(g) {
        return Outcome::Skipped(size_warning(input));
    }
    let profile = find_pendant_paths(g);
    let spectra = int_spectrum(&laplacian(g)).and_then(|l| Ok((l, int_spectrum(&signless_laplacian(g))?)));
    match spectra {
        Ok((l, q)) => Outcome::Done(AnalyzeRecord {
            graph6: graph6_or_empty(g),
            n: g.order(),
            m: g.size(),
            profile: profile_counts(&profile),
            paths: profile
                .paths
                .iter()
                .map(|p| PathJson {
                    leaf: p.leaf,
                    anchor: p.anchor,
                    length: p.length(),
                })
                .collect(),
            spectrum_l: l.values,
            spectrum_q: q.values,
        }),
        Err(e) => Outcome::Failed(format!("error: line {}: {e}", input.line)),
    }
}

pub fn cmd_analyze(text: &str, config: &CliConfig, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<u8> {
    let (graphs, parse_failed) = parse_input(text, err)?;
    let outcomes = run_pool(config.jobs, &graphs, |_, input| analyze_one(input, config));
    if config.format == OutputFormat::Csv {
        out.write_all(ANALYZE_CSV_HEADER.as_bytes())?;
    }
    let failures = emit(outcomes, out, err, |i, rec| render_analyze(i, rec, config.format))?;
    Ok(exit_code(parse_failed, failures > 0))
}

fn lemma_seed(config: &CliConfig, index: usize) -> u64 {
    config.seed.wrapping_add(index as u64)
}

fn verify_one(index: usize, input: &InputGraph, config: &CliConfig) -> Outcome<VerifyRecord> {
    let g = &input.graph;
    if !config.within_cap(g) {
        return Outcome::Skipped(size_warning(input));
    }
    let run = || -> Result<VerifyRecord, CoreError> {
        let report = verify_theorem(g, &config.verify_config(g))?;
        let lemmas = if config.lemmas {
            let seed = lemma_seed(config, index);
            let orientation = Orientation::random(g, &mut corpus_rng(seed));
            let l1 = verify_lemma1(g, &orientation, config.tolerance())?;
            let l2 = verify_lemma2(
                g,
                &Lemma2Config {
                    trials: config.trials.max(1),
                    tolerance: config.tolerance(),
                    seed,
                    ..Lemma2Config::default()
                },
            )?;
            Some((l1, l2))
        } else {
            None
        };
        Ok(VerifyRecord::new(
            graph6_or_empty(g),
            g,
            &report,
            lemmas.as_ref().map(|(a, b)| (a, b)),
        ))
    };
    match run() {
        Ok(rec) => Outcome::Done(rec),
        Err(e) => Outcome::Failed(format!("error: line {}: {e}", input.line)),
    }
}

pub fn cmd_verify(text: &str, config: &CliConfig, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<u8> {
    let (graphs, parse_failed) = parse_input(text, err)?;
    let outcomes = run_pool(config.jobs, &graphs, |i, input| verify_one(i, input, config));
    if config.format == OutputFormat::Csv {
        out.write_all(VERIFY_CSV_HEADER.as_bytes())?;
    }
    let mut failed = false;
    let errors = emit(outcomes, out, err, |i, rec| {
        failed |= !rec.pass;
        render_verify(i, rec, config.format)
    })?;
    Ok(exit_code(parse_failed, failed || errors > 0))
}

pub fn cmd_survey(text: &str, config: &CliConfig, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<u8> {
    let (graphs, parse_failed) = parse_input(text, err)?;
    let outcomes = run_pool(config.jobs, &graphs, |_, input| {
        let g = &input.graph;
        if !config.within_cap(g) {
            return Outcome::Skipped(size_warning(input));
        }
        match verify_theorem(g, &config.verify_config(g)) {
            Ok(report) => {
                let mut single = TightnessSummary::default();
                single.add(&report);
                Outcome::Done(single)
            }
            Err(e) => Outcome::Failed(format!("error: line {}: {e}", input.line)),
        }
    });
    // Fold serially in input order so the aggregate never depends on scheduling.
    let mut summary = TightnessSummary::default();
    let mut skipped = 0;
    let mut errors = 0;
    for outcome in outcomes {
        match outcome {
            Outcome::Done(s) => summary.merge(&s),
            Outcome::Skipped(msg) => {
                writeln!(err, "{msg}")?;
                skipped += 1;
            }
            Outcome::Failed(msg) => {
                writeln!(err, "{msg}")?;
                errors += 1;
            }
        }
    }
    out.write_all(render_survey(&SurveyJson::new(&summary, skipped), config.format).as_bytes())?;
    Ok(exit_code(parse_failed, summary.violations > 0 || errors > 0))
}

/// Graphs produced by `gen`: `count` copies of the recipe, random trees
/// reseeded with `seed`, `seed + 1`, ...
pub fn gen_graphs(kind: &str, params: &[usize], count: usize, seed: u64) -> Result<Vec<Graph>, CoreError> {
    let recipe = GeneratorRecipe::from_parts(kind, params, seed)?;
    (0..count as u64)
        .map(|i| generate(&recipe.with_seed(seed.wrapping_add(i))))
        .collect()
}

pub fn cmd_gen(
    kind: &str,
    params: &[usize],
    count: usize,
    seed: u64,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<u8> {
    match gen_graphs(kind, params, count, seed) {
        Ok(graphs) => {
            for g in &graphs {
                match crate::graph6::to_graph6(g) {
                    Ok(s) => writeln!(out, "{s}")?,
                    Err(e) => {
                        writeln!(err, "error: {e}")?;
                        return Ok(EXIT_USAGE);
                    }
                }
            }
            Ok(EXIT_PASS)
        }
        Err(e) => {
            writeln!(err, "error: invalid recipe: {e}")?;
            Ok(EXIT_USAGE)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum MatrixKind {
    Adjacency,
    Laplacian,
    Signless,
    Incidence,
    DirectedIncidence,
    Subdivision,
    SignedSubdivision,
}

pub fn export_matrix(g: &Graph, kind: MatrixKind) -> Result<IntMatrix, CoreError> {
    let o = Orientation::default_for(g);
    Ok(match kind {
        MatrixKind::Adjacency => adjacency(g),
        MatrixKind::Laplacian => laplacian(g),
        MatrixKind::Signless => signless_laplacian(g),
        MatrixKind::Incidence => incidence(g),
        MatrixKind::DirectedIncidence => directed_incidence(g, &o)?,
        MatrixKind::Subdivision => subdivision_adjacency(g),
        MatrixKind::SignedSubdivision => signed_subdivision_adjacency(g, &o)?,
    })
}

#[derive(Serialize)]
struct ExportJson {
    graph6: String,
    rows: Vec<Vec<i64>>,
}

pub fn cmd_export(
    text: &str,
    kind: MatrixKind,
    format: OutputFormat,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<u8> {
    let (graphs, parse_failed) = parse_input(text, err)?;
    for (idx, input) in graphs.iter().enumerate() {
        let m = match export_matrix(&input.graph, kind) {
            Ok(m) => m,
            Err(e) => {
                writeln!(err, "error: line {}: {e}", input.line)?;
                return Ok(EXIT_USAGE);
            }
        };
        match format {
            OutputFormat::Json => {
                let rec = ExportJson {
                    graph6: graph6_or_empty(&input.graph),
                    rows: m.to_rows(),
                };
                writeln!(out, "{}", serde_json::to_string(&rec).expect("matrix serializes"))?;
            }
            OutputFormat::Csv => {
                for row in m.to_rows() {
                    let cells: Vec<String> = row.iter().map(i64::to_string).collect();
                    writeln!(out, "{}", cells.join(","))?;
                }
                writeln!(out)?;
            }
            OutputFormat::Text => {
                writeln!(out, "# graph {} {}", idx + 1, graph6_or_empty(&input.graph))?;
                writeln!(out, "{m}")?;
            }
        }
    }
    Ok(exit_code(parse_failed, false))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(cmd: fn(&str, &CliConfig, &mut dyn Write, &mut dyn Write) -> io::Result<u8>, text: &str, config: &CliConfig) -> (u8, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = cmd(text, config, &mut out, &mut err).unwrap();
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn analyze_k2() {
        let (code, out, _) = run(cmd_analyze, "A_\n", &CliConfig::default());
        assert_eq!(code, EXIT_PASS);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["profile"], serde_json::json!({}));
        let l: Vec<f64> = serde_json::from_value(v["spectrumL"].clone()).unwrap();
        assert!(l[0].abs() < 1e-12 && (l[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let (code, out, err) = run(cmd_analyze, "A_\nE?\n", &CliConfig::default());
        assert_eq!(code, EXIT_USAGE);
        assert_eq!(out.lines().count(), 1);
        assert!(err.contains("line 2"), "{err}");
    }

    #[test]
    fn verify_spider_and_absurd_tolerance() {
        let spider = gen_graphs("spider", &[2, 2, 2], 1, 0).unwrap();
        let line = format!("{}\n", graph6_or_empty(&spider[0]));
        assert_eq!(run(cmd_verify, &line, &CliConfig::default()).0, EXIT_PASS);
        let loose = CliConfig {
            tolerance: Some(10.0),
            lemmas: true,
            ..CliConfig::default()
        };
        assert_eq!(run(cmd_verify, &line, &loose).0, EXIT_PASS);
    }

    #[test]
    fn size_cap_skips_with_warning() {
        let big = gen_graphs("path", &[1500], 1, 0).unwrap();
        let line = format!("{}\n", graph6_or_empty(&big[0]));
        let (code, out, err) = run(cmd_verify, &line, &CliConfig::default());
        assert_eq!(code, EXIT_PASS);
        assert!(out.is_empty());
        assert!(err.contains("warning"));
    }

    #[test]
    fn survey_empty_and_spider() {
        let (code, out, _) = run(cmd_survey, "", &CliConfig::default());
        assert_eq!(code, EXIT_PASS);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["graphs"], 0);
        assert_eq!(v["rows"], serde_json::json!([]));

        let spider = gen_graphs("spider", &[2, 2, 2], 1, 0).unwrap();
        let line = format!("{}\n", graph6_or_empty(&spider[0]));
        let (_, out, _) = run(cmd_survey, &line, &CliConfig::default());
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let rows = v["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows.iter().all(|r| r["k"] == 2));
    }

    #[test]
    fn gen_is_reproducible() {
        let a = gen_graphs("random-tree", &[12], 5, 7).unwrap();
        let b = gen_graphs("random-tree", &[12], 5, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 5);
        assert!(gen_graphs("spider", &[0], 1, 0).is_err());
    }

    #[test]
    fn export_shapes() {
        let g = gen_graphs("path", &[2], 1, 0).unwrap().remove(0);
        assert_eq!(export_matrix(&g, MatrixKind::Incidence).unwrap().cols(), 2);
        assert_eq!(export_matrix(&g, MatrixKind::SignedSubdivision).unwrap().rows(), 5);
        let mut out = Vec::new();
        let code = cmd_export("Bg\n", MatrixKind::Laplacian, OutputFormat::Text, &mut out, &mut Vec::new()).unwrap();
        assert_eq!(code, EXIT_PASS);
        assert!(String::from_utf8(out).unwrap().contains("1 -1 0"));
    }
}

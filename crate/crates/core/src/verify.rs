//! Per-graph verdicts for the pendant-path multiplicity bound, the two
//! subdivision lemmas it rests on, and the weaker cluster-size claim.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;

use crate::exact::{aggregate_multiplicity_check, AggregateCheck, DEFAULT_EXACT_ORDER_CAP};
use crate::generate::corpus_rng;
use crate::matrices::{
    laplacian, signed_subdivision_adjacency, signless_laplacian, subdivision_adjacency, Orientation,
};
use crate::pendant::{find_pendant_paths, pendant_bound, PendantProfile};
use crate::spectra::{int_spectrum, matching_distance, multiplicity_of, targets, Spectrum, Tolerance};
use crate::{Error, Graph, Result};

/// Default cap on `n + m` for dense eigensolves.
pub const DEFAULT_SIZE_CAP: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub tolerance: Tolerance,
    /// Only lengths `k <= kmax` are checked.
    pub kmax: Option<usize>,
    pub exact: bool,
    /// Largest `n + m` accepted.
    pub size_cap: usize,
    /// Largest `n` accepted by the exact checks.
    pub exact_order_cap: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            tolerance: Tolerance::default(),
            kmax: None,
            exact: true,
            size_cap: DEFAULT_SIZE_CAP,
            exact_order_cap: DEFAULT_EXACT_ORDER_CAP,
        }
    }
}

impl VerifyConfig {
    pub fn numeric(tolerance: Tolerance) -> Self {
        VerifyConfig {
            tolerance,
            exact: false,
            ..Self::default()
        }
    }
}

/// Numeric check of one target value `4cos²(πi/(2k+1))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TheoremRow {
    pub k: usize,
    pub i: usize,
    pub target: f64,
    pub mult_l: usize,
    pub mult_q: usize,
    /// `p_k − q_k`.
    pub bound: usize,
}

impl TheoremRow {
    pub fn pass_l(&self) -> bool {
        self.mult_l >= self.bound
    }

    pub fn pass_q(&self) -> bool {
        self.mult_q >= self.bound
    }

    pub fn pass(&self) -> bool {
        self.pass_l() && self.pass_q()
    }
}

/// Exact aggregate certificate for one length, with the numeric totals it
/// should reproduce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactRow {
    pub check: AggregateCheck,
    pub numeric_sum_l: usize,
    pub numeric_sum_q: usize,
}

impl ExactRow {
    /// The exact nullities disagree with the summed numeric multiplicities.
    pub fn discrepancy(&self) -> bool {
        self.check.nullity_l != self.numeric_sum_l || self.check.nullity_q != self.numeric_sum_q
    }
}

/// Whether some eigenvalue cluster of `L` reaches `p_k − q_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConjectureRow {
    pub k: usize,
    pub bound: usize,
    pub largest_cluster: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TheoremReport {
    pub profile: PendantProfile,
    pub spectrum_l: Spectrum,
    pub spectrum_q: Spectrum,
    pub rows: Vec<TheoremRow>,
    pub exact: Vec<ExactRow>,
    pub conjecture: Vec<ConjectureRow>,
    pub pass: bool,
}

impl TheoremReport {
    pub fn discrepancies(&self) -> usize {
        self.exact.iter().filter(|r| r.discrepancy()).count()
    }

    /// A passing theorem check must imply every conjecture row.
    pub fn implication_holds(&self) -> bool {
        !self.pass || self.conjecture.iter().all(|c| c.pass)
    }
}

fn check_size(g: &Graph, cap: usize) -> Result<()> {
    let order = g.order() + g.size();
    if order > cap {
        Err(Error::SizeLimit { order, limit: cap })
    } else {
        Ok(())
    }
}

/// Lengths `k` with `p_k − q_k >= 1`, honoring `kmax`.
fn qualifying(profile: &PendantProfile, kmax: Option<usize>) -> Vec<(usize, usize)> {
    profile
        .lengths()
        .filter(|&k| kmax.is_none_or(|cap| k <= cap))
        .map(|k| (k, pendant_bound(profile, k)))
        .filter(|&(_, b)| b >= 1)
        .collect()
}

/// Checks that every target of every qualifying length appears in both
/// `spec(L)` and `spec(Q)` at least `p_k − q_k` times, and optionally the
/// exact aggregate certificate per length.
pub fn verify_theorem(g: &Graph, config: &VerifyConfig) -> Result<TheoremReport> {
    check_size(g, config.size_cap)?;
    let profile = find_pendant_paths(g);
    let l = laplacian(g);
    let q = signless_laplacian(g);
    let tol_l = config.tolerance.resolve(l.norm_inf() as f64);
    let tol_q = config.tolerance.resolve(q.norm_inf() as f64);
    let spectrum_l = int_spectrum(&l)?.with_tol(tol_l);
    let spectrum_q = int_spectrum(&q)?.with_tol(tol_q);

    let mut rows = Vec::new();
    let mut exact = Vec::new();
    let mut conjecture = Vec::new();
    for (k, bound) in qualifying(&profile, config.kmax) {
        let first = rows.len();
        for t in targets(k) {
            rows.push(TheoremRow {
                k,
                i: t.i,
                target: t.value,
                mult_l: multiplicity_of(&spectrum_l, t.value, tol_l),
                mult_q: multiplicity_of(&spectrum_q, t.value, tol_q),
                bound,
            });
        }
        if config.exact {
            let check = aggregate_multiplicity_check(g, k, config.exact_order_cap)?;
            exact.push(ExactRow {
                check,
                numeric_sum_l: rows[first..].iter().map(|r| r.mult_l).sum(),
                numeric_sum_q: rows[first..].iter().map(|r| r.mult_q).sum(),
            });
        }
        conjecture.push(conjecture_row(&spectrum_l, k, bound, tol_l));
    }
    let pass = rows.iter().all(TheoremRow::pass) && exact.iter().all(|r| r.check.pass);
    Ok(TheoremReport {
        profile,
        spectrum_l,
        spectrum_q,
        rows,
        exact,
        conjecture,
        pass,
    })
}

fn conjecture_row(spectrum_l: &Spectrum, k: usize, bound: usize, tol: f64) -> ConjectureRow {
    let largest_cluster = spectrum_l.largest_cluster(tol);
    ConjectureRow {
        k,
        bound,
        largest_cluster,
        pass: largest_cluster >= bound,
    }
}

/// For every length with `p_k − q_k >= 1`: does some cluster of `spec(L)`
/// have at least that many eigenvalues?
pub fn verify_conjecture(g: &Graph, tolerance: Tolerance) -> Result<Vec<ConjectureRow>> {
    let profile = find_pendant_paths(g);
    let l = laplacian(g);
    let tol = tolerance.resolve(l.norm_inf() as f64);
    let spectrum = int_spectrum(&l)?;
    Ok(qualifying(&profile, None)
        .into_iter()
        .map(|(k, bound)| conjecture_row(&spectrum, k, bound, tol))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lemma {
    /// Nonzero `Q` (resp. `L`) eigenvalues are the squares of the positive
    /// eigenvalues of the unsigned (resp. signed) subdivision block matrix.
    SubdivisionSquares,
    /// Bipartite graphs: signed and unsigned principal submatrices are
    /// cospectral. Non-bipartite graphs: the full matrices are not.
    BipartiteSimilarity,
}

impl Lemma {
    pub fn id(self) -> u8 {
        match self {
            Lemma::SubdivisionSquares => 1,
            Lemma::BipartiteSimilarity => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LemmaReport {
    pub lemma: Lemma,
    pub descriptor: String,
    /// Largest optimal-matching distance observed.
    pub max_deviation: f64,
    /// Agreement requires `max_deviation <= threshold`; for the non-bipartite
    /// witness, separation requires `max_deviation > threshold`.
    pub threshold: f64,
    pub trials: usize,
    pub bipartite: bool,
    pub pass: bool,
}

fn descriptor(g: &Graph) -> String {
    format!("n={} m={}", g.order(), g.size())
}

/// Nonzero spectrum of a Gram-type matrix against the squared positive
/// spectrum of its block matrix. Also folds in the `±` pairing of the block
/// spectrum.
fn squares_deviation(gram: &Spectrum, block: &Spectrum, tol: f64) -> f64 {
    let nonzero = gram.nonzero(tol);
    let positive = block.positive(tol);
    let squares: Vec<f64> = positive.iter().map(|x| x * x).collect();
    let mut negated: Vec<f64> = block.values.iter().filter(|&&v| v < -tol).map(|v| -v).collect();
    negated.reverse();
    matching_distance(&nonzero, &squares).max(matching_distance(&positive, &negated))
}

/// Checks the subdivision-squares correspondence for `Q` and for `L` under
/// orientation `o`.
pub fn verify_lemma1(g: &Graph, o: &Orientation, tolerance: Tolerance) -> Result<LemmaReport> {
    let q = signless_laplacian(g);
    let tol = tolerance.resolve(q.norm_inf() as f64);
    let q_spec = int_spectrum(&q)?;
    let l_spec = int_spectrum(&laplacian(g))?;
    let unsigned = int_spectrum(&subdivision_adjacency(g))?;
    let signed = int_spectrum(&signed_subdivision_adjacency(g, o)?)?;
    let deviation = squares_deviation(&q_spec, &unsigned, tol).max(squares_deviation(&l_spec, &signed, tol));
    Ok(LemmaReport {
        lemma: Lemma::SubdivisionSquares,
        descriptor: descriptor(g),
        max_deviation: deviation,
        threshold: tol,
        trials: 1,
        bipartite: g.is_bipartite(),
        pass: deviation <= tol,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lemma2Config {
    pub trials: usize,
    pub tolerance: Tolerance,
    /// Minimum spectral distance demanded of non-bipartite graphs.
    pub separation: f64,
    pub seed: u64,
}

impl Default for Lemma2Config {
    fn default() -> Self {
        Lemma2Config {
            trials: 32,
            tolerance: Tolerance::default(),
            separation: 1e-4,
            seed: 0,
        }
    }
}

/// Bipartite graphs: random orientations and random deletion sets (the first
/// trial deletes nothing) give cospectral signed and unsigned principal
/// submatrices. Non-bipartite graphs: the full signed and unsigned block
/// matrices are at matching distance greater than `separation`.
pub fn verify_lemma2(g: &Graph, config: &Lemma2Config) -> Result<LemmaReport> {
    if config.trials == 0 {
        return Err(Error::Index { index: 0, max: usize::MAX });
    }
    let unsigned = subdivision_adjacency(g);
    let tol = config.tolerance.resolve(unsigned.norm_inf() as f64);
    let mut rng = corpus_rng(config.seed);
    let order = unsigned.rows();

    if !g.is_bipartite() {
        let signed = signed_subdivision_adjacency(g, &Orientation::default_for(g))?;
        let distance = matching_distance(&int_spectrum(&signed)?.values, &int_spectrum(&unsigned)?.values);
        return Ok(LemmaReport {
            lemma: Lemma::BipartiteSimilarity,
            descriptor: descriptor(g),
            max_deviation: distance,
            threshold: config.separation,
            trials: 1,
            bipartite: false,
            pass: distance > config.separation,
        });
    }

    let mut worst: f64 = 0.0;
    for trial in 0..config.trials {
        let o = Orientation::random(g, &mut rng);
        let removed: Vec<usize> = if trial == 0 {
            Vec::new()
        } else {
            let keep_prob: f64 = rng.gen_range(0.2..1.0);
            (0..order).filter(|_| !rng.gen_bool(keep_prob)).collect()
        };
        let signed = signed_subdivision_adjacency(g, &o)?.delete_vertices(&removed)?;
        let plain = unsigned.delete_vertices(&removed)?;
        let d = matching_distance(&int_spectrum(&signed)?.values, &int_spectrum(&plain)?.values);
        worst = worst.max(d);
    }
    Ok(LemmaReport {
        lemma: Lemma::BipartiteSimilarity,
        descriptor: descriptor(g),
        max_deviation: worst,
        threshold: tol,
        trials: config.trials,
        bipartite: true,
        pass: worst <= tol,
    })
}

/// Slack distribution of one target across a corpus.
#[derive(Debug, Clone, PartialEq)]
pub struct TightnessRow {
    pub k: usize,
    pub i: usize,
    pub target: f64,
    /// Qualifying (graph, k, i) occurrences.
    pub rows: usize,
    /// `multiplicity − (p_k − q_k)` → count, for `L` and `Q`.
    pub slack_l: BTreeMap<usize, usize>,
    pub slack_q: BTreeMap<usize, usize>,
}

impl TightnessRow {
    pub fn tight_l(&self) -> usize {
        self.slack_l.get(&0).copied().unwrap_or(0)
    }

    pub fn tight_q(&self) -> usize {
        self.slack_q.get(&0).copied().unwrap_or(0)
    }

    pub fn fraction_tight_l(&self) -> f64 {
        self.tight_l() as f64 / self.rows as f64
    }

    pub fn fraction_tight_q(&self) -> f64 {
        self.tight_q() as f64 / self.rows as f64
    }
}

/// Aggregated tightness of the bound over a stream of reports. Folding is
/// order-independent, so parallel producers give identical summaries.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TightnessSummary {
    pub graphs: usize,
    /// Multiplicities below the bound (should stay zero).
    pub violations: usize,
    pub rows: BTreeMap<(usize, usize), TightnessRow>,
}

impl TightnessSummary {
    pub fn add(&mut self, report: &TheoremReport) {
        self.graphs += 1;
        for r in &report.rows {
            let entry = self.rows.entry((r.k, r.i)).or_insert_with(|| TightnessRow {
                k: r.k,
                i: r.i,
                target: r.target,
                rows: 0,
                slack_l: BTreeMap::new(),
                slack_q: BTreeMap::new(),
            });
            entry.rows += 1;
            for (mult, hist) in [(r.mult_l, &mut entry.slack_l), (r.mult_q, &mut entry.slack_q)] {
                match mult.checked_sub(r.bound) {
                    Some(slack) => *hist.entry(slack).or_insert(0) += 1,
                    None => self.violations += 1,
                }
            }
        }
    }

    pub fn merge(&mut self, other: &TightnessSummary) {
        self.graphs += other.graphs;
        self.violations += other.violations;
        for (key, row) in &other.rows {
            match self.rows.get_mut(key) {
                None => {
                    self.rows.insert(*key, row.clone());
                }
                Some(mine) => {
                    mine.rows += row.rows;
                    for (s, c) in &row.slack_l {
                        *mine.slack_l.entry(*s).or_insert(0) += c;
                    }
                    for (s, c) in &row.slack_q {
                        *mine.slack_q.entry(*s).or_insert(0) += c;
                    }
                }
            }
        }
    }

    pub fn total_rows(&self) -> usize {
        self.rows.values().map(|r| r.rows).sum()
    }
}

/// Tightness statistics over a corpus.
pub fn tightness_statistics<'a>(
    corpus: impl IntoIterator<Item = &'a Graph>,
    config: &VerifyConfig,
) -> Result<TightnessSummary> {
    let mut summary = TightnessSummary::default();
    for g in corpus {
        summary.add(&verify_theorem(g, config)?);
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, random_tree, GeneratorRecipe};

    fn recipe(kind: &str, params: &[usize]) -> Graph {
        generate(&GeneratorRecipe::from_parts(kind, params, 0).unwrap()).unwrap()
    }

    #[test]
    fn spider_theorem() {
        let report = verify_theorem(&recipe("spider", &[2, 2, 2]), &VerifyConfig::default()).unwrap();
        assert_eq!(report.rows.len(), 2);
        for row in &report.rows {
            assert_eq!((row.k, row.bound), (2, 2));
            assert!(row.mult_l >= 2 && row.mult_q >= 2);
        }
        assert_eq!(report.exact.len(), 1);
        assert_eq!(report.exact[0].check.bound, 4);
        assert_eq!(report.discrepancies(), 0);
        assert!(report.pass && report.implication_holds());
        assert!(report.conjecture[0].pass);
    }

    #[test]
    fn star_theorem() {
        let report = verify_theorem(&recipe("star", &[3]), &VerifyConfig::default()).unwrap();
        assert_eq!(report.rows.len(), 1);
        let row = report.rows[0];
        assert!((row.target - 1.0).abs() < 1e-15);
        assert_eq!((row.mult_l, row.bound), (2, 2));
        assert!(report.pass);
    }

    #[test]
    fn path_theorem_is_vacuous() {
        let report = verify_theorem(&recipe("path", &[7]), &VerifyConfig::default()).unwrap();
        assert!(report.rows.is_empty() && report.exact.is_empty() && report.pass);
    }

    #[test]
    fn kmax_and_size_cap() {
        let g = recipe("spider", &[1, 1, 2, 2]);
        let all = verify_theorem(&g, &VerifyConfig::default()).unwrap();
        assert_eq!(all.rows.iter().map(|r| r.k).max(), Some(2));
        let capped = VerifyConfig {
            kmax: Some(1),
            ..VerifyConfig::default()
        };
        assert!(verify_theorem(&g, &capped).unwrap().rows.iter().all(|r| r.k == 1));
        let tiny = VerifyConfig {
            size_cap: 5,
            ..VerifyConfig::default()
        };
        assert!(matches!(verify_theorem(&g, &tiny), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn huge_tolerance_never_fails() {
        let g = recipe("caterpillar", &[3, 1, 2]);
        let cfg = VerifyConfig {
            tolerance: Tolerance::Absolute(10.0),
            ..VerifyConfig::default()
        };
        assert!(verify_theorem(&g, &cfg).unwrap().pass);
    }

    #[test]
    fn conjecture_examples() {
        assert!(verify_conjecture(&recipe("spider", &[2, 2, 2]), Tolerance::default())
            .unwrap()
            .iter()
            .all(|c| c.pass));
        assert!(verify_conjecture(&recipe("path", &[4]), Tolerance::default()).unwrap().is_empty());
        let broom = verify_conjecture(&recipe("broom", &[2, 3]), Tolerance::default()).unwrap();
        let k1 = broom.iter().find(|c| c.k == 1).unwrap();
        assert_eq!(k1.bound, 2);
        assert!(k1.pass && k1.largest_cluster >= 2);
    }

    #[test]
    fn lemma1_examples() {
        let k2 = recipe("path", &[1]);
        assert!(verify_lemma1(&k2, &Orientation::default_for(&k2), Tolerance::default()).unwrap().pass);
        let triangle = Graph::from_edge_list(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let r = verify_lemma1(&triangle, &Orientation::default_for(&triangle), Tolerance::default()).unwrap();
        assert!(r.pass, "{r:?}");
        let mut rng = corpus_rng(5);
        for _ in 0..100 {
            let n = rng.gen_range(2..=12);
            let g = random_tree(n, &mut rng);
            let o = Orientation::random(&g, &mut rng);
            assert!(verify_lemma1(&g, &o, Tolerance::default()).unwrap().pass);
        }
    }

    #[test]
    fn triangle_q_spectrum_squares() {
        // Q(K3) has spectrum {4, 1, 1}; C6 has adjacency spectrum 2cos(2πj/6).
        let triangle = Graph::from_edge_list(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let q = int_spectrum(&signless_laplacian(&triangle)).unwrap();
        assert!(matching_distance(&q.values, &[1.0, 1.0, 4.0]) < 1e-12);
        let c6 = int_spectrum(&subdivision_adjacency(&triangle)).unwrap();
        assert!(matching_distance(&c6.positive(1e-8), &[1.0, 1.0, 2.0]) < 1e-12);
    }

    #[test]
    fn lemma2_examples() {
        let cfg = Lemma2Config {
            trials: 10,
            ..Lemma2Config::default()
        };
        assert!(verify_lemma2(&recipe("path", &[1]), &cfg).unwrap().pass);
        let c4 = Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let r = verify_lemma2(&c4, &cfg).unwrap();
        assert!(r.pass && r.bipartite && r.trials == 10);
        let triangle = Graph::from_edge_list(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let r = verify_lemma2(&triangle, &cfg).unwrap();
        assert!(!r.bipartite && r.pass && r.max_deviation > 1e-4);
        assert!(verify_lemma2(&c4, &Lemma2Config { trials: 0, ..cfg }).is_err());
    }

    #[test]
    fn tightness_single_spider() {
        let g = recipe("spider", &[2, 2, 2]);
        let s = tightness_statistics([&g], &VerifyConfig::default()).unwrap();
        assert_eq!(s.rows.len(), 2);
        let report = verify_theorem(&g, &VerifyConfig::default()).unwrap();
        for row in s.rows.values() {
            let exact_mult = report.rows.iter().find(|r| r.i == row.i).unwrap().mult_l;
            assert_eq!(row.tight_l() == 1, exact_mult == 2);
        }
        let empty = tightness_statistics([&recipe("path", &[5])], &VerifyConfig::default()).unwrap();
        assert!(empty.rows.is_empty());
        assert_eq!(empty.graphs, 1);
    }

    #[test]
    fn tightness_merge_is_order_independent() {
        let mut rng = corpus_rng(11);
        let corpus: Vec<Graph> = (0..60).map(|_| random_tree(12, &mut rng)).collect();
        let cfg = VerifyConfig::numeric(Tolerance::Absolute(1e-8));
        let whole = tightness_statistics(corpus.iter(), &cfg).unwrap();
        let mut halves = tightness_statistics(corpus[30..].iter(), &cfg).unwrap();
        halves.merge(&tightness_statistics(corpus[..30].iter(), &cfg).unwrap());
        assert_eq!(whole, halves);
        let qualifying: usize = corpus
            .iter()
            .map(|g| verify_theorem(g, &cfg).unwrap().rows.len())
            .sum();
        assert_eq!(whole.total_rows(), qualifying);
        assert_eq!(whole.violations, 0);
    }

    #[test]
    fn relabeling_preserves_report() {
        use rand::seq::SliceRandom;
        let mut rng = corpus_rng(3);
        for _ in 0..50 {
            let g = random_tree(11, &mut rng);
            let mut perm: Vec<usize> = (0..11).collect();
            perm.shuffle(&mut rng);
            let h = g.relabel(&perm).unwrap();
            let a = verify_theorem(&g, &VerifyConfig::default()).unwrap();
            let b = verify_theorem(&h, &VerifyConfig::default()).unwrap();
            assert_eq!(a.rows, b.rows);
            assert_eq!(a.exact, b.exact);
            assert_eq!(a.pass, b.pass);
        }
    }
}

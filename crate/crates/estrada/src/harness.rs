//! Verification campaigns: evaluate every bound and lemma on a corpus of
//! graphs, stream the per-graph rows to a sink and fold them into a summary.
//!
//! Workers evaluate disjoint slices of the corpus in parallel; rows reach the
//! sink in corpus order, so reports are identical for any worker count.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use estrada_core::enumerate::LabeledGraphs;
use estrada_core::families::{bipartite_random, erdos_renyi};
use estrada_core::{
    check_lemmas, classify, estrada_index, evaluate_bound, graph_energy, invariant_set, spectrum,
    BoundId, BoundResult, Family, FamilyId, Graph, GraphError, InvariantSet, LemmaCheck,
    SpectralError, MAX_ENUMERATION_ORDER,
};

use crate::io::{write_graph6, FormatError};

/// Masks handed to the worker pool at a time during exhaustive runs.
const CHUNK: u64 = 1 << 14;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{graph6}: {source}")]
    Spectral {
        graph6: String,
        source: SpectralError,
    },
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("writing report: {0}")]
    Sink(String),
    #[error("building worker pool: {0}")]
    Pool(String),
}

/// Everything computed for one graph.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphRow {
    pub graph6: String,
    pub invariants: InvariantSet,
    pub ee: f64,
    pub energy: f64,
    pub lambda1: f64,
    /// One result per bound, in [`BoundId::ALL`] order.
    pub bounds: Vec<BoundResult>,
    pub lemmas: Vec<LemmaCheck>,
    /// Gaps of `B*` bounds evaluated on non-bipartite graphs where their
    /// other hypotheses hold. Exploration data; never counted as violations.
    pub probes: Vec<(BoundId, f64)>,
}

impl GraphRow {
    pub fn bound(&self, id: BoundId) -> &BoundResult {
        &self.bounds[id as usize]
    }
}

/// Evaluates all bounds and lemma checks on `g`.
pub fn verify_graph(g: &Graph, tol: f64) -> Result<GraphRow, HarnessError> {
    let graph6 = write_graph6(g)?;
    let invariants = invariant_set(g)?;
    let spec = match spectrum(g) {
        Ok(s) => s,
        Err(source) => return Err(HarnessError::Spectral { graph6, source }),
    };
    let ee = estrada_index(&spec);
    let lambda1 = spec.largest();
    let bounds = BoundId::ALL
        .iter()
        .map(|&id| evaluate_bound(id, &invariants, ee, tol))
        .collect();
    let lemmas = check_lemmas(&invariants, lambda1, tol);
    let probes = if invariants.classification.bipartite() {
        Vec::new()
    } else {
        BoundId::ALL
            .iter()
            .filter(|id| id.is_bipartite())
            .filter_map(|&id| id.unrestricted_value(&invariants).map(|v| (id, ee - v)))
            .collect()
    };
    Ok(GraphRow {
        graph6,
        invariants,
        ee,
        energy: graph_energy(&spec),
        lambda1,
        bounds,
        lemmas,
        probes,
    })
}

/// Minimum, 1%, median, 99% and maximum of a gap distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapQuantiles {
    pub min: f64,
    pub p01: f64,
    pub p50: f64,
    pub p99: f64,
    pub max: f64,
}

impl GapQuantiles {
    /// Nearest-rank quantiles; `None` for an empty sample.
    pub fn from_sample(mut gaps: Vec<f64>) -> Option<Self> {
        if gaps.is_empty() {
            return None;
        }
        gaps.sort_by(f64::total_cmp);
        let at = |q: f64| gaps[((gaps.len() - 1) as f64 * q).round() as usize];
        Some(GapQuantiles {
            min: gaps[0],
            p01: at(0.01),
            p50: at(0.5),
            p99: at(0.99),
            max: gaps[gaps.len() - 1],
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BoundTally {
    pub applicable: u64,
    pub held: u64,
    pub held_strictly: u64,
    pub equality: u64,
    pub violations: u64,
    pub min_gap: Option<f64>,
    pub max_gap: Option<f64>,
    /// Filled by random campaigns once all rows are in; `merge` leaves it alone.
    pub quantiles: Option<GapQuantiles>,
    /// Non-bipartite graphs on which the `Φ` form was probed.
    pub probed: u64,
    pub probe_held: u64,
}

fn merge_min(a: Option<f64>, b: Option<f64>) -> Option<f64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn merge_max(a: Option<f64>, b: Option<f64>) -> Option<f64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl BoundTally {
    fn merge(&mut self, other: &BoundTally) {
        self.applicable += other.applicable;
        self.held += other.held;
        self.held_strictly += other.held_strictly;
        self.equality += other.equality;
        self.violations += other.violations;
        self.min_gap = merge_min(self.min_gap, other.min_gap);
        self.max_gap = merge_max(self.max_gap, other.max_gap);
        self.probed += other.probed;
        self.probe_held += other.probe_held;
    }
}

/// Row-wise tallies; merging is commutative and associative.
#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub graphs: u64,
    /// Indexed like [`BoundId::ALL`].
    pub bounds: Vec<BoundTally>,
    pub lemma_checks: u64,
    pub lemma_violations: u64,
    pub violations: u64,
}

impl Default for Summary {
    fn default() -> Self {
        Summary {
            graphs: 0,
            bounds: vec![BoundTally::default(); BoundId::ALL.len()],
            lemma_checks: 0,
            lemma_violations: 0,
            violations: 0,
        }
    }
}

impl Summary {
    pub fn bound(&self, id: BoundId) -> &BoundTally {
        &self.bounds[id as usize]
    }

    pub fn merge(&mut self, other: &Summary) {
        self.graphs += other.graphs;
        for (a, b) in self.bounds.iter_mut().zip(&other.bounds) {
            a.merge(b);
        }
        self.lemma_checks += other.lemma_checks;
        self.lemma_violations += other.lemma_violations;
        self.violations += other.violations;
    }

    fn record(&mut self, row: &GraphRow, tol: f64) {
        self.graphs += 1;
        for (tally, r) in self.bounds.iter_mut().zip(&row.bounds) {
            let Some(gap) = r.gap else { continue };
            tally.applicable += 1;
            tally.held += u64::from(r.held(tol));
            tally.held_strictly += u64::from(r.held_strictly(tol));
            tally.equality += u64::from(r.equality_detected);
            tally.violations += u64::from(r.violated(tol));
            tally.min_gap = merge_min(tally.min_gap, Some(gap));
            tally.max_gap = merge_max(tally.max_gap, Some(gap));
        }
        for &(id, gap) in &row.probes {
            let tally = &mut self.bounds[id as usize];
            tally.probed += 1;
            tally.probe_held += u64::from(gap >= -tol);
        }
        for l in &row.lemmas {
            self.lemma_checks += u64::from(l.bound.is_some());
            self.lemma_violations += u64::from(l.violated(tol));
        }
        self.violations =
            self.bounds.iter().map(|t| t.violations).sum::<u64>() + self.lemma_violations;
    }
}

/// A failed check: a bound id (`G3`) or a lemma (`lemma:diameter`).
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub graph6: String,
    pub subject: String,
    pub gap: f64,
}

fn violations_of(row: &GraphRow, tol: f64) -> impl Iterator<Item = Violation> + '_ {
    let bounds = row
        .bounds
        .iter()
        .filter(move |r| r.violated(tol))
        .map(|r| Violation {
            graph6: row.graph6.clone(),
            subject: r.id.to_string(),
            gap: r.gap.unwrap_or(f64::NAN),
        });
    let lemmas = row
        .lemmas
        .iter()
        .filter(move |l| l.violated(tol))
        .map(|l| Violation {
            graph6: row.graph6.clone(),
            subject: format!("lemma:{}", l.id),
            gap: l.slack.unwrap_or(f64::NAN),
        });
    bounds.chain(lemmas)
}

/// Where the rows of a campaign came from.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CorpusDescriptor {
    pub source: String,
    pub filters: String,
    pub seed: Option<u64>,
    pub tolerance: f64,
    pub params: BTreeMap<String, String>,
}

/// Receives rows in corpus order.
pub trait RowSink {
    fn begin(&mut self, _corpus: &CorpusDescriptor) -> Result<(), HarnessError> {
        Ok(())
    }
    fn accept(&mut self, row: &GraphRow) -> Result<(), HarnessError>;
    fn finish(
        &mut self,
        _summary: &Summary,
        _violations: &[Violation],
    ) -> Result<(), HarnessError> {
        Ok(())
    }
}

impl RowSink for Vec<GraphRow> {
    fn accept(&mut self, row: &GraphRow) -> Result<(), HarnessError> {
        self.push(row.clone());
        Ok(())
    }
}

/// Drops rows; only the summary survives.
pub struct Discard;

impl RowSink for Discard {
    fn accept(&mut self, _row: &GraphRow) -> Result<(), HarnessError> {
        Ok(())
    }
}

/// Summary and violations of a streamed campaign.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub corpus: CorpusDescriptor,
    pub summary: Summary,
    pub violations: Vec<Violation>,
}

/// A fully materialized report.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub corpus: CorpusDescriptor,
    pub rows: Vec<GraphRow>,
    pub summary: Summary,
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn from_parts(outcome: Outcome, rows: Vec<GraphRow>) -> Self {
        VerificationReport {
            corpus: outcome.corpus,
            rows,
            summary: outcome.summary,
            violations: outcome.violations,
        }
    }
}

/// Runtime knobs shared by all campaigns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    pub tol: f64,
    /// Worker cap; `None` uses the available parallelism.
    pub jobs: Option<usize>,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            tol: estrada_core::DEFAULT_TOLERANCE,
            jobs: None,
        }
    }
}

impl Settings {
    fn pool(&self) -> Result<rayon::ThreadPool, HarnessError> {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(j) = self.jobs {
            b = b.num_threads(j.max(1));
        }
        b.build().map_err(|e| HarnessError::Pool(e.to_string()))
    }
}

/// Folds rows into a summary while forwarding them to a sink.
struct Collector<'a, S: RowSink + ?Sized> {
    sink: &'a mut S,
    summary: Summary,
    violations: Vec<Violation>,
    tol: f64,
    gaps: Option<Vec<Vec<f64>>>,
}

impl<'a, S: RowSink + ?Sized> Collector<'a, S> {
    fn new(
        sink: &'a mut S,
        corpus: &CorpusDescriptor,
        keep_gaps: bool,
    ) -> Result<Self, HarnessError> {
        sink.begin(corpus)?;
        Ok(Collector {
            sink,
            summary: Summary::default(),
            violations: Vec::new(),
            tol: corpus.tolerance,
            gaps: keep_gaps.then(|| vec![Vec::new(); BoundId::ALL.len()]),
        })
    }

    fn push(&mut self, row: &GraphRow) -> Result<(), HarnessError> {
        self.summary.record(row, self.tol);
        self.violations.extend(violations_of(row, self.tol));
        if let Some(gaps) = &mut self.gaps {
            for r in &row.bounds {
                if let Some(g) = r.gap {
                    gaps[r.id as usize].push(g);
                }
            }
        }
        self.sink.accept(row)
    }

    fn finish(mut self, corpus: CorpusDescriptor) -> Result<Outcome, HarnessError> {
        if let Some(gaps) = self.gaps.take() {
            for (tally, sample) in self.summary.bounds.iter_mut().zip(gaps) {
                tally.quantiles = GapQuantiles::from_sample(sample);
            }
        }
        self.sink.finish(&self.summary, &self.violations)?;
        Ok(Outcome {
            corpus,
            summary: self.summary,
            violations: self.violations,
        })
    }
}

/// Verifies a list of graphs in order.
pub fn verify_graphs<S: RowSink + ?Sized>(
    graphs: &[Graph],
    corpus: CorpusDescriptor,
    settings: Settings,
    sink: &mut S,
) -> Result<Outcome, HarnessError> {
    let pool = settings.pool()?;
    let rows: Vec<GraphRow> = pool.install(|| {
        graphs
            .par_iter()
            .map(|g| verify_graph(g, settings.tol))
            .collect::<Result<_, _>>()
    })?;
    let mut c = Collector::new(sink, &corpus, false)?;
    for row in &rows {
        c.push(row)?;
    }
    c.finish(corpus)
}

/// Which labeled graphs an exhaustive run visits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    All,
    Connected,
    BipartiteConnected,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::All => "all",
            Mode::Connected => "connected",
            Mode::BipartiteConnected => "bipartite-connected",
        }
    }

    pub fn admits(self, g: &Graph) -> bool {
        match self {
            Mode::All => true,
            Mode::Connected => g.is_connected(),
            Mode::BipartiteConnected => {
                let c = classify(g);
                c.connected && c.bipartite()
            }
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(Mode::All),
            "connected" => Ok(Mode::Connected),
            "bipartite-connected" => Ok(Mode::BipartiteConnected),
            other => Err(format!(
                "unknown mode `{other}` (expected all, connected or bipartite-connected)"
            )),
        }
    }
}

/// Visits every labeled graph of the mode's class on `1..=n_max` vertices,
/// ordered by `n` then adjacency bitmask.
pub fn exhaustive_verify<S: RowSink + ?Sized>(
    n_max: usize,
    mode: Mode,
    settings: Settings,
    sink: &mut S,
) -> Result<Outcome, HarnessError> {
    if n_max > MAX_ENUMERATION_ORDER {
        return Err(GraphError::Capacity {
            n: n_max,
            max: MAX_ENUMERATION_ORDER,
        }
        .into());
    }
    let corpus = CorpusDescriptor {
        source: "exhaustive".into(),
        filters: mode.to_string(),
        seed: None,
        tolerance: settings.tol,
        params: BTreeMap::from([("n_max".to_string(), n_max.to_string())]),
    };
    let pool = settings.pool()?;
    let mut c = Collector::new(sink, &corpus, false)?;
    for n in 1..=n_max {
        let total = 1u64 << estrada_core::graph::pair_count(n);
        let mut start = 0;
        while start < total {
            let end = (start + CHUNK).min(total);
            let rows: Vec<GraphRow> = pool.install(|| {
                (start..end)
                    .into_par_iter()
                    .filter_map(|mask| {
                        let g = Graph::from_mask(n, mask).expect("mask in range");
                        mode.admits(&g).then(|| verify_graph(&g, settings.tol))
                    })
                    .collect::<Result<_, _>>()
            })?;
            for row in &rows {
                c.push(row)?;
            }
            start = end;
        }
    }
    c.finish(corpus)
}

/// Bounds whose equality family a named family exercises.
pub fn designated_bounds(family: FamilyId) -> &'static [BoundId] {
    match family {
        FamilyId::Star => &[BoundId::B2, BoundId::B4],
        FamilyId::CompleteBipartite => &[BoundId::B1, BoundId::B3],
        FamilyId::Cycle => &[BoundId::B6],
        FamilyId::Path => &[BoundId::B7],
        FamilyId::Empty => &[BoundId::G5],
        _ => &[],
    }
}

/// Expands a family and parameter ranges into concrete members.
///
/// `complete`, `empty`, `star`, `path`, `cycle` take `n`;
/// `complete_bipartite` takes `p` and `q`; `regular_circulant` takes `n` and `r`.
pub fn sweep_points(
    family: FamilyId,
    params: &BTreeMap<String, Vec<usize>>,
) -> Result<Vec<Family>, GraphError> {
    let get = |name: &str| {
        params.get(name).ok_or_else(|| {
            GraphError::InvalidParameter(format!("family `{family}` needs parameter `{name}`"))
        })
    };
    let allowed: &[&str] = match family {
        FamilyId::CompleteBipartite => &["p", "q"],
        FamilyId::RegularCirculant => &["n", "r"],
        FamilyId::Complete
        | FamilyId::Empty
        | FamilyId::Star
        | FamilyId::Path
        | FamilyId::Cycle => &["n"],
        other => {
            return Err(GraphError::InvalidParameter(format!(
                "family `{other}` cannot be swept; use the random campaign for random models"
            )))
        }
    };
    if let Some(extra) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(GraphError::InvalidParameter(format!(
            "family `{family}` has no parameter `{extra}`"
        )));
    }
    let points = match family {
        FamilyId::CompleteBipartite => {
            let (ps, qs) = (get("p")?, get("q")?);
            ps.iter()
                .flat_map(|&p| qs.iter().map(move |&q| Family::CompleteBipartite { p, q }))
                .collect()
        }
        FamilyId::RegularCirculant => {
            let (ns, rs) = (get("n")?, get("r")?);
            ns.iter()
                .flat_map(|&n| rs.iter().map(move |&r| Family::RegularCirculant { n, r }))
                .collect()
        }
        _ => get("n")?
            .iter()
            .map(|&n| match family {
                FamilyId::Complete => Family::Complete { n },
                FamilyId::Empty => Family::Empty { n },
                FamilyId::Star => Family::Star { n },
                FamilyId::Path => Family::Path { n },
                _ => Family::Cycle { n },
            })
            .collect(),
    };
    Ok(points)
}

/// One row per family member, in the given order.
pub fn family_sweep<S: RowSink + ?Sized>(
    family: FamilyId,
    points: &[Family],
    settings: Settings,
    sink: &mut S,
) -> Result<Outcome, HarnessError> {
    let graphs = points
        .iter()
        .map(Family::generate)
        .collect::<Result<Vec<_>, _>>()?;
    let designated: Vec<&str> = designated_bounds(family)
        .iter()
        .map(|b| b.as_str())
        .collect();
    let corpus = CorpusDescriptor {
        source: format!("family:{family}"),
        filters: String::new(),
        seed: None,
        tolerance: settings.tol,
        params: BTreeMap::from([
            ("points".to_string(), points.len().to_string()),
            ("designated".to_string(), designated.join(",")),
        ]),
    };
    verify_graphs(&graphs, corpus, settings, sink)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RandomModel {
    ErdosRenyi { n: usize, p: f64 },
    Bipartite { p: usize, q: usize, prob: f64 },
}

impl RandomModel {
    fn sample(&self, seed: u64) -> Result<Graph, GraphError> {
        match *self {
            RandomModel::ErdosRenyi { n, p } => erdos_renyi(n, p, seed),
            RandomModel::Bipartite { p, q, prob } => bipartite_random(p, q, prob, seed),
        }
    }

    fn describe(&self) -> (String, BTreeMap<String, String>) {
        match *self {
            RandomModel::ErdosRenyi { n, p } => (
                "er".into(),
                BTreeMap::from([("n".into(), n.to_string()), ("p".into(), p.to_string())]),
            ),
            RandomModel::Bipartite { p, q, prob } => (
                "bipartite".into(),
                BTreeMap::from([
                    ("p".into(), p.to_string()),
                    ("q".into(), q.to_string()),
                    ("edge_prob".into(), prob.to_string()),
                ]),
            ),
        }
    }
}

/// SplitMix64 step; gives each trial an independent seed.
fn trial_seed(seed: u64, trial: u64) -> u64 {
    let mut z = seed.wrapping_add(trial.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `trials` samples of a random model; deterministic given `seed`. The
/// summary carries gap quantiles per bound.
pub fn random_campaign<S: RowSink + ?Sized>(
    model: RandomModel,
    trials: usize,
    seed: u64,
    settings: Settings,
    sink: &mut S,
) -> Result<Outcome, HarnessError> {
    if trials == 0 {
        return Err(GraphError::InvalidParameter("trials must be at least 1".into()).into());
    }
    let (name, mut params) = model.describe();
    params.insert("trials".into(), trials.to_string());
    let corpus = CorpusDescriptor {
        source: format!("random:{name}"),
        filters: String::new(),
        seed: Some(seed),
        tolerance: settings.tol,
        params,
    };
    let graphs = (0..trials as u64)
        .map(|t| model.sample(trial_seed(seed, t)))
        .collect::<Result<Vec<_>, _>>()?;
    let pool = settings.pool()?;
    let rows: Vec<GraphRow> = pool.install(|| {
        graphs
            .par_iter()
            .map(|g| verify_graph(g, settings.tol))
            .collect::<Result<_, _>>()
    })?;
    let mut c = Collector::new(sink, &corpus, true)?;
    for row in &rows {
        c.push(row)?;
    }
    c.finish(corpus)
}

/// graph6 strings of every labeled graph on `1..=n_max` vertices where bound
/// `id` applies and `|gap| < tol`, in enumeration order.
pub fn find_equality_cases(
    id: BoundId,
    n_max: usize,
    settings: Settings,
) -> Result<Vec<String>, HarnessError> {
    if n_max > MAX_ENUMERATION_ORDER {
        return Err(GraphError::Capacity {
            n: n_max,
            max: MAX_ENUMERATION_ORDER,
        }
        .into());
    }
    let pool = settings.pool()?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for n in 1..=n_max {
        let hits: Vec<String> = pool.install(|| {
            LabeledGraphs::new(n)
                .expect("order checked")
                .par_bridge()
                .filter_map(|(mask, g)| {
                    let inv = invariant_set(&g).ok()?;
                    id.value(&inv)?;
                    Some((mask, g, inv))
                })
                .map(|(mask, g, inv)| {
                    let ee = match spectrum(&g) {
                        Ok(s) => estrada_index(&s),
                        Err(source) => {
                            return Err(HarnessError::Spectral {
                                graph6: write_graph6(&g)?,
                                source,
                            })
                        }
                    };
                    let r = evaluate_bound(id, &inv, ee, settings.tol);
                    Ok(r.equality_detected.then_some((mask, g)))
                })
                .filter_map(Result::transpose)
                .collect::<Result<Vec<_>, HarnessError>>()
                .and_then(|mut hits| {
                    hits.sort_by_key(|(mask, _)| *mask);
                    hits.into_iter()
                        .map(|(_, g)| write_graph6(&g).map_err(HarnessError::from))
                        .collect()
                })
        })?;
        for s in hits {
            if seen.insert(s.clone()) {
                out.push(s);
            }
        }
    }
    Ok(out)
}

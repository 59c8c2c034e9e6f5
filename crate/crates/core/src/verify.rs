//! End-to-end numerical verification: Aldous' equality, the exclusion
//! process gap `k · λ₁(RW)`, the full chain of quotients behind it, and an
//! observation-only probe for block shuffles.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coset::{
    check_left_action_hypotheses, check_right_action_hypotheses, nested_quotient_morphism, quotient_from_partition,
    regularity_defect, DoubleCosetPartition, QuotientResult,
};
use crate::error::{Error, Result};
use crate::graph::{check_morphism_indices, multiset_contained, SpectralReport, StateLabel, WeightedDigraph};
use crate::perm::{Subgroup, WeightedGroup};
use crate::processes::{
    block_product, block_random_walk, block_shuffle_group, extended_graph, gep_graph, gep_quotient_iso,
    interchange_group, last_point_stabilizer, prefix_symmetric, probe_alpha, random_walk, suffix_symmetric,
    BaseGraph, GepConfig, RateMode,
};

/// Default absolute tolerance on gaps.
pub const DEFAULT_TOL: f64 = 1e-8;
/// Tolerance for eigenvalue containment along morphisms.
pub const CONTAINMENT_TOL: f64 = 1e-7;
/// Largest extended-graph size for full-chain checks.
pub const MAX_DIAGRAM_SITES: usize = 7;

/// A named comparison `lhs` against `rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub tol: f64,
    pub pass: bool,
}

impl Check {
    /// `|lhs - rhs| < tol`.
    pub fn close(name: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        Self { name: name.into(), lhs, rhs, tol, pass: (lhs - rhs).abs() < tol }
    }

    /// `lhs <= rhs + tol`.
    pub fn at_most(name: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        Self { name: name.into(), lhs, rhs, tol, pass: lhs <= rhs + tol }
    }

    /// A boolean outcome recorded as `1` or `0` against `1`.
    pub fn holds(name: impl Into<String>, ok: bool) -> Self {
        Self { name: name.into(), lhs: if ok { 1.0 } else { 0.0 }, rhs: 1.0, tol: 0.0, pass: ok }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportKind {
    Verify,
    /// Observations about an open question; never pass or fail.
    Probe,
}

impl ReportKind {
    pub fn label(self) -> &'static str {
        match self {
            Self::Verify => "VERIFY",
            Self::Probe => "PROBE",
        }
    }
}

/// A dense dump of a graph built during a run.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphDump {
    pub name: String,
    pub states: Vec<String>,
    /// Row-major rates.
    pub rates: Vec<f64>,
    pub gap: Option<f64>,
}

impl GraphDump {
    pub fn of<S: StateLabel>(name: impl Into<String>, g: &WeightedDigraph<S>, label: impl Fn(&S) -> String) -> Self {
        let n = g.len();
        Self {
            name: name.into(),
            states: g.states().iter().map(label).collect(),
            rates: (0..n).flat_map(|i| g.row(i).to_vec()).collect(),
            gap: g.spectrum().ok().map(|s| s.gap()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub instance: String,
    pub process: String,
    pub kind: ReportKind,
    pub state_count: usize,
    pub gap: f64,
    pub spectrum: Vec<f64>,
    /// Gating checks: the report passes iff all of these do.
    pub checks: Vec<Check>,
    /// Recorded for information only.
    pub observations: Vec<Check>,
    pub graphs: Vec<GraphDump>,
    pub seed: Option<u64>,
    pub elapsed_ms: u128,
}

impl VerificationReport {
    fn new(instance: String, process: &str, kind: ReportKind) -> Self {
        Self {
            instance,
            process: process.into(),
            kind,
            state_count: 0,
            gap: f64::NAN,
            spectrum: Vec::new(),
            checks: Vec::new(),
            observations: Vec::new(),
            graphs: Vec::new(),
            seed: None,
            elapsed_ms: 0,
        }
    }

    fn headline(&mut self, report: &SpectralReport) {
        self.state_count = report.spectrum().len();
        self.gap = report.gap();
        self.spectrum = report.spectrum().to_vec();
    }

    /// `None` for probes, otherwise the conjunction of all checks.
    pub fn overall_pass(&self) -> Option<bool> {
        match self.kind {
            ReportKind::Verify => Some(self.checks.iter().all(|c| c.pass)),
            ReportKind::Probe => None,
        }
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Short text form of a base graph, e.g. `V=[a,b] r={a-b:1}`.
pub fn describe_graph(x: &BaseGraph) -> String {
    let v = x.vertices();
    let edges: Vec<String> = x.edges().map(|(u, w, r)| format!("{}-{}:{}", v[u], v[w], r)).collect();
    format!("V=[{}] r={{{}}}", v.join(","), edges.join(","))
}

/// A complete graph on `n` vertices with each rate drawn from
/// `{0.5, 1.0, .., 4.0}`.
pub fn random_graph(n: usize, seed: u64) -> Result<BaseGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rates = vec![0.0; n * n];
    for u in 0..n {
        for w in u + 1..n {
            let r = rng.gen_range(1..=8) as f64 * 0.5;
            rates[u * n + w] = r;
            rates[w * n + u] = r;
        }
    }
    BaseGraph::new((0..n).map(|i| i.to_string()).collect(), rates)
}

fn containment(name: String, inner: &SpectralReport, outer: &SpectralReport) -> Check {
    let ok = multiset_contained(inner.spectrum(), outer.spectrum(), CONTAINMENT_TOL);
    Check::holds(name, ok)
}

/// Interchange gap against the gap of its right quotient by `H`, which
/// defaults to the stabilizer of the last vertex (the random walk).
pub fn verify_aldous(x: &BaseGraph, h: Option<&Subgroup>, tol: f64) -> Result<VerificationReport> {
    let start = Instant::now();
    let n = x.len();
    let stab = last_point_stabilizer(n)?;
    let h = h.unwrap_or(&stab);
    if !h.is_subgroup_of(&stab) {
        return Err(Error::InclusionViolated("H must fix the last vertex".into()));
    }
    let mut rep = VerificationReport::new(describe_graph(x), "ip", ReportKind::Verify);
    let group = interchange_group(x);
    let ip = group.cayley_graph()?;
    let ip_spec = ip.spectrum()?;
    rep.headline(&ip_spec);

    let q = quotient_from_partition(&group, DoubleCosetPartition::new(&Subgroup::trivial(n), h)?)?;
    let q_spec = q.graph().spectrum()?;
    rep.checks.push(Check::holds("morphism IP -> IP/H", check_morphism_indices(&ip, q.graph(), q.projection())?));
    rep.checks.push(Check::close("gap IP = gap IP/H", ip_spec.gap(), q_spec.gap(), tol));
    rep.checks.push(containment("spectrum IP/H in IP".into(), &q_spec, &ip_spec));

    if h == &stab {
        let rw = random_walk(x, 1.0)?;
        let map: Vec<usize> = q.partition().reps().iter().map(|p| p.apply(n - 1)).collect();
        rep.checks.push(Check::holds("IP/H_{n-1} isomorphic to RW", check_morphism_indices(q.graph(), &rw, &map)?));
        rep.checks.push(Check::close("gap IP = gap RW", ip_spec.gap(), rw.spectrum()?.gap(), tol));
    }
    rep.elapsed_ms = start.elapsed().as_millis();
    Ok(rep)
}

/// Exclusion-process gap against `k · gap(RW)` for each particle count in
/// `ls`, plus the spread over `ls` when more than one is given.
pub fn verify_gep_equals_k_rw(x: &BaseGraph, k: usize, ls: &[usize], tol: f64) -> Result<VerificationReport> {
    let start = Instant::now();
    if ls.is_empty() {
        return Err(Error::InvalidConfig("no particle counts given".into()));
    }
    let instance = format!("{} k={} l={:?}", describe_graph(x), k, ls);
    let mut rep = VerificationReport::new(instance, "gep", ReportKind::Verify);
    let rw_gap = random_walk(x, 1.0)?.spectrum()?.gap();
    let mut gaps = Vec::with_capacity(ls.len());
    for &l in ls {
        let cfg = GepConfig::uniform(x.clone(), k, l)?;
        let gep = gep_graph(&cfg, RateMode::Normal)?;
        rep.checks.push(Check::holds(format!("GEP(l={l}) irreducible"), gep.is_irreducible()));
        rep.checks.push(Check::holds(format!("GEP(l={l}) reversible"), gep.reversible_measure()?.is_some()));
        let spec = gep.spectrum()?;
        if gaps.is_empty() {
            rep.headline(&spec);
        }
        rep.checks.push(Check::close(format!("gap GEP(l={l}) = k * gap RW"), spec.gap(), k as f64 * rw_gap, tol));
        gaps.push(spec.gap());
    }
    if gaps.len() > 1 {
        let max = gaps.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let min = gaps.iter().copied().fold(f64::INFINITY, f64::min);
        rep.checks.push(Check::close("gap spread over l", max, min, tol));
    }
    rep.elapsed_ms = start.elapsed().as_millis();
    Ok(rep)
}

fn require_diagram_size(n: usize) -> Result<()> {
    if n > MAX_DIAGRAM_SITES {
        return Err(Error::CapExceeded { what: "extended graph sites", size: n, cap: MAX_DIAGRAM_SITES });
    }
    Ok(())
}

/// The subgroups used along the chain of quotients.
struct ChainSubgroups {
    trivial: Subgroup,
    blocks: Subgroup,
    prefix: Subgroup,
    last: Subgroup,
    gep_right: Subgroup,
}

impl ChainSubgroups {
    fn new(cfg: &GepConfig) -> Result<Self> {
        let eg = extended_graph(cfg.base(), cfg.k())?;
        let n = eg.sites();
        let prefix = prefix_symmetric(n, cfg.l())?;
        Ok(Self {
            trivial: Subgroup::trivial(n),
            blocks: block_product(&eg)?,
            gep_right: prefix.join(&suffix_symmetric(n, cfg.l())?)?,
            prefix,
            last: last_point_stabilizer(n)?,
        })
    }
}

struct Node {
    name: &'static str,
    quotient: QuotientResult,
    spectrum: SpectralReport,
}

/// Builds each named quotient, recording its regularity. Returns `None` for
/// irregular pairs.
fn build_nodes(
    group: &WeightedGroup,
    pairs: &[(&'static str, &Subgroup, &Subgroup)],
    record: &mut Vec<Check>,
) -> Result<Vec<Option<Node>>> {
    pairs
        .iter()
        .map(|&(name, h, hp)| {
            let partition = DoubleCosetPartition::new(h, hp)?;
            let defect = regularity_defect(group, &partition)?;
            record.push(Check { name: format!("regular {name}"), lhs: defect, rhs: 0.0, tol: 0.0, pass: defect == 0.0 });
            if defect != 0.0 {
                return Ok(None);
            }
            let quotient = quotient_from_partition(group, partition)?;
            let spectrum = quotient.graph().spectrum()?;
            Ok(Some(Node { name, quotient, spectrum }))
        })
        .collect()
}

/// Checks the full chain relating the interchange process on the extended
/// graph to the exclusion process.
///
/// The left-action hypotheses are checked for `({id}, ∏H^v, H_{N-1})`, the
/// pair sitting between `P̃/H_{N-1}` and `P̄`. The same check over `H_l` is
/// recorded as an observation.
pub fn verify_commutative_diagram(cfg: &GepConfig, tol: f64) -> Result<VerificationReport> {
    let start = Instant::now();
    let eg = extended_graph(cfg.base(), cfg.k())?;
    require_diagram_size(eg.sites())?;
    let instance = format!("{} k={:?} l={}", describe_graph(cfg.base()), cfg.k(), cfg.l());
    let mut rep = VerificationReport::new(instance, "diagram", ReportKind::Verify);
    let group = interchange_group(eg.graph());
    let s = ChainSubgroups::new(cfg)?;

    let pairs = [
        ("IP", &s.trivial, &s.trivial),
        ("IP/H_{N-1}", &s.trivial, &s.last),
        ("P1 = IP/H_l", &s.trivial, &s.prefix),
        ("P2 = prodH\\IP/H_l", &s.blocks, &s.prefix),
        ("P = prodH\\IP/H_{N-1}", &s.blocks, &s.last),
        ("P_GEP = prodH\\IP/H_lH_{l,N}", &s.blocks, &s.gep_right),
    ];
    let nodes = build_nodes(&group, &pairs, &mut rep.checks)?;
    let Some(nodes) = nodes.into_iter().collect::<Option<Vec<Node>>>() else {
        rep.elapsed_ms = start.elapsed().as_millis();
        return Ok(rep);
    };
    let [ip, ip_last, p1, p2, pbar, pgep] = &nodes[..] else { unreachable!() };
    rep.headline(&ip.spectrum);

    for (fine, coarse) in [(ip, ip_last), (ip, p1), (p1, ip_last), (p1, p2), (p2, pbar), (ip_last, pbar), (p2, pgep)] {
        let nested = nested_quotient_morphism(&fine.quotient, &coarse.quotient)?;
        rep.checks.push(Check::holds(format!("morphism {} -> {}", fine.name, coarse.name), nested.is_morphism));
        rep.checks.push(Check::at_most(
            format!("gap {} <= gap {}", fine.name, coarse.name),
            fine.spectrum.gap(),
            coarse.spectrum.gap(),
            tol,
        ));
        rep.checks.push(containment(format!("spectrum {} in {}", coarse.name, fine.name), &coarse.spectrum, &fine.spectrum));
    }

    let left = check_left_action_hypotheses(&group, &s.trivial, &s.blocks, &s.last)?;
    rep.checks.push(Check::holds("left action (1) equivariant [H'=H_{N-1}]", left.cond_equivariant));
    rep.checks.push(Check::holds("left action (2) large enough [H'=H_{N-1}]", left.cond_large_enough));
    rep.checks.push(Check::holds("left action no full class [H'=H_{N-1}]", left.no_full_class));
    let left_l = check_left_action_hypotheses(&group, &s.trivial, &s.blocks, &s.prefix)?;
    rep.observations.push(Check::holds("left action (1) equivariant [H'=H_l]", left_l.cond_equivariant));
    rep.observations.push(Check::holds("left action (2) large enough [H'=H_l]", left_l.cond_large_enough));

    let right = check_right_action_hypotheses(&s.last, &s.gep_right)?;
    rep.checks.push(Check::holds("right action (1) intersection", right.cond_intersection));
    rep.checks.push(Check::holds("right action (2) generation", right.cond_generate));
    rep.checks.push(Check::at_most("gap P_GEP <= gap P", pgep.spectrum.gap(), pbar.spectrum.gap(), tol));

    for node in [ip_last, p1, p2, pbar] {
        rep.checks.push(Check::close(format!("gap {} = gap IP", node.name), node.spectrum.gap(), ip.spectrum.gap(), tol));
    }
    rep.checks.push(Check::close("gap P_GEP = gap P", pgep.spectrum.gap(), pbar.spectrum.gap(), tol));

    let iso = gep_quotient_iso(cfg)?;
    rep.checks.push(Check::holds("P_GEP isomorphic to GEP", iso.is_isomorphism));
    let gep_gap = iso.direct.spectrum()?.gap();
    rep.checks.push(Check::close("gap GEP = gap P", gep_gap, pbar.spectrum.gap(), tol));
    let walk = block_random_walk(cfg.base(), cfg.k())?;
    let map: Vec<usize> = pbar.quotient.partition().reps().iter().map(|p| eg.block_of(p.apply(eg.sites() - 1))).collect();
    rep.checks.push(Check::holds("P isomorphic to block random walk", check_morphism_indices(pbar.quotient.graph(), &walk, &map)?));
    if let Some(k) = cfg.uniform_k() {
        let rw_gap = random_walk(cfg.base(), 1.0)?.spectrum()?.gap();
        rep.checks.push(Check::close("gap GEP = k * gap RW", gep_gap, k as f64 * rw_gap, tol));
    }
    rep.elapsed_ms = start.elapsed().as_millis();
    Ok(rep)
}

/// Builds the block-shuffle analogue of the exclusion chain for each value
/// of the full-block weight `M` and records what is observed: regularity,
/// the gaps of both quotients, and whether the quotients change with `M`.
pub fn probe_block_shuffle_conjecture(x: &BaseGraph, k: &[usize], l: usize, ms: &[f64], tol: f64) -> Result<VerificationReport> {
    let start = Instant::now();
    let cfg = GepConfig::new(x.clone(), k.to_vec(), l)?;
    let eg = extended_graph(x, k)?;
    require_diagram_size(eg.sites())?;
    if ms.is_empty() {
        return Err(Error::InvalidConfig("no block weights given".into()));
    }
    let instance = format!("{} k={:?} l={} M={:?}", describe_graph(x), k, l, ms);
    let mut rep = VerificationReport::new(instance, "bs", ReportKind::Probe);
    let s = ChainSubgroups::new(&cfg)?;
    let pairs = [
        ("P_GEP", &s.blocks, &s.gep_right),
        ("P", &s.blocks, &s.last),
        ("BS/H_{N-1}", &s.trivial, &s.last),
    ];
    let mut per_m: Vec<Vec<Option<Node>>> = Vec::new();
    for &m in ms {
        let (_, spec) = probe_alpha(x, k, m)?;
        let group = block_shuffle_group(&spec)?;
        let bs = group.cayley_graph()?;
        let bs_spec = bs.spectrum()?;
        if per_m.is_empty() {
            rep.headline(&bs_spec);
        }
        let mut regular = Vec::new();
        let nodes = build_nodes(&group, &pairs, &mut regular)?;
        for c in regular {
            rep.observations.push(Check { name: format!("[M={m}] {}", c.name), ..c });
        }
        if let [Some(gep), Some(pbar), Some(bs_last)] = &nodes[..] {
            rep.observations.push(Check::close(format!("[M={m}] gap P_GEP = gap P"), gep.spectrum.gap(), pbar.spectrum.gap(), tol));
            rep.observations.push(Check::close(format!("[M={m}] gap BS = gap BS/H_{{N-1}}"), bs_spec.gap(), bs_last.spectrum.gap(), tol));
        }
        for node in nodes.iter().take(2).flatten() {
            rep.graphs.push(GraphDump::of(format!("{} [M={m}]", node.name), node.quotient.graph(), |p| p.to_string()));
        }
        per_m.push(nodes);
    }
    for (idx, name) in ["P_GEP", "P"].into_iter().enumerate() {
        let graphs: Option<Vec<&WeightedDigraph<_>>> = per_m.iter().map(|n| n[idx].as_ref().map(|n| n.quotient.graph())).collect();
        if let Some(graphs) = graphs {
            let max_diff = graphs
                .windows(2)
                .map(|w| w[0].row_major().iter().zip(w[1].row_major()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
                .fold(0.0, f64::max);
            rep.observations.push(Check::close(format!("{name} independent of M"), max_diff, 0.0, tol));
        }
    }
    rep.elapsed_ms = start.elapsed().as_millis();
    Ok(rep)
}

//! Concrete processes on a symmetric base graph: random walk, interchange
//! process, generalized exclusion process (directly and as a double-coset
//! quotient), the extended graph, and block shuffles.
//!
//! A Cayley state `x` is read as a map from particle labels to positions.
//! An interchange configuration `η` maps positions to labels, so `x = η^-1`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::coset::{quotient_graph, QuotientResult};
use crate::error::{Error, Result};
use crate::graph::{check_morphism_indices, WeightedDigraph, DEFAULT_STATE_CAP};
use crate::perm::{factorial, Permutation, Subgroup, WeightedGroup};

/// A symmetric weighted complete graph `X = (V, r)`; absent edges have rate 0.
#[derive(Debug, Clone, PartialEq)]
pub struct BaseGraph {
    vertices: Vec<String>,
    rates: Vec<f64>,
}

impl BaseGraph {
    /// From a dense row-major matrix, which must be symmetric with zero diagonal.
    pub fn new(vertices: Vec<String>, rates: Vec<f64>) -> Result<Self> {
        let n = vertices.len();
        if n < 2 {
            return Err(Error::TooFewStates(n));
        }
        if rates.len() != n * n {
            return Err(Error::LengthMismatch { expected: n * n, got: rates.len() });
        }
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::DuplicateLabel(v.clone()));
            }
        }
        for u in 0..n {
            if rates[u * n + u] != 0.0 {
                return Err(Error::SelfLoop(vertices[u].clone()));
            }
            for w in 0..n {
                let r = rates[u * n + w];
                if !r.is_finite() || r < 0.0 || r != rates[w * n + u] {
                    return Err(Error::InvalidRate {
                        from: vertices[u].clone(),
                        to: vertices[w].clone(),
                        rate: r,
                    });
                }
            }
        }
        Ok(Self { vertices, rates })
    }

    /// From unordered edges, each mirrored. A pair may appear only once.
    pub fn from_edges(vertices: Vec<String>, edges: &[(String, String, f64)]) -> Result<Self> {
        let n = vertices.len();
        let index: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let lookup = |v: &String| index.get(v.as_str()).copied().ok_or_else(|| Error::UnknownLabel(v.clone()));
        let mut rates = vec![0.0; n * n];
        let mut seen = vec![false; n * n];
        for (u, w, r) in edges {
            let (i, j) = (lookup(u)?, lookup(w)?);
            if i == j {
                return Err(Error::SelfLoop(u.clone()));
            }
            if !r.is_finite() || *r < 0.0 {
                return Err(Error::InvalidRate { from: u.clone(), to: w.clone(), rate: *r });
            }
            if std::mem::replace(&mut seen[i * n + j], true) {
                return Err(Error::DuplicateEntry(u.clone(), w.clone()));
            }
            seen[j * n + i] = true;
            rates[i * n + j] = *r;
            rates[j * n + i] = *r;
        }
        Self::new(vertices, rates)
    }

    /// `n` vertices named `0..n` with rate `r` on every pair.
    pub fn complete(n: usize, r: f64) -> Result<Self> {
        let rates = (0..n * n).map(|i| if i / n == i % n { 0.0 } else { r }).collect();
        Self::new(numbered(n), rates)
    }

    /// A path `0 - 1 - .. - n` with the given consecutive rates.
    pub fn path(rates: &[f64]) -> Result<Self> {
        let n = rates.len() + 1;
        let names = numbered(n);
        let edges: Vec<_> = rates
            .iter()
            .enumerate()
            .map(|(i, &r)| (names[i].clone(), names[i + 1].clone(), r))
            .collect();
        Self::from_edges(names, &edges)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn rate(&self, u: usize, w: usize) -> f64 {
        self.rates[u * self.len() + w]
    }

    /// Total rate out of `u`.
    pub fn degree(&self, u: usize) -> f64 {
        (0..self.len()).map(|w| self.rate(u, w)).sum()
    }

    /// Positive-rate pairs `(u, w, r)` with `u < w`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |u| (u + 1..n).map(move |w| (u, w, self.rate(u, w)))).filter(|e| e.2 > 0.0)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for w in 0..n {
                if self.rate(u, w) > 0.0 && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn require_connected(x: &BaseGraph) -> Result<()> {
    if x.is_connected() {
        Ok(())
    } else {
        Err(Error::NotIrreducible)
    }
}

/// Single particle jumping `u -> w` at rate `scale · r(u, w)`.
pub fn random_walk(x: &BaseGraph, scale: f64) -> Result<WeightedDigraph<String>> {
    if !(scale.is_finite() && scale > 0.0) {
        return Err(Error::InvalidConfig(format!("scale must be positive, got {scale}")));
    }
    require_connected(x)?;
    let rates = x.rates.iter().map(|r| r * scale).collect();
    WeightedDigraph::from_dense(x.vertices.clone(), rates)
}

/// Random walk on the blocks of an occupancy vector: `v -> w` at rate
/// `k_w · r(v, w)`. For uniform `k` this is the random walk scaled by `k`.
pub fn block_random_walk(x: &BaseGraph, k: &[usize]) -> Result<WeightedDigraph<String>> {
    check_occupancies(x, k)?;
    require_connected(x)?;
    let n = x.len();
    let rates = (0..n * n).map(|i| k[i % n] as f64 * x.rates[i]).collect();
    WeightedDigraph::from_dense(x.vertices.clone(), rates)
}

/// Weight `r(i, j)` on each transposition `(i j)`.
pub fn interchange_group(x: &BaseGraph) -> WeightedGroup {
    let n = x.len();
    WeightedGroup::new(n, x.edges().map(|(u, w, r)| (Permutation::transposition(n, u, w), r)))
        .expect("transposition weights are valid")
}

/// The interchange process built from configurations `η` (position to
/// label), where edge `(u, w)` swaps the labels at `u` and `w`.
pub fn interchange_direct(x: &BaseGraph) -> Result<WeightedDigraph<Permutation>> {
    let n = x.len();
    let count = factorial(n).filter(|&c| c <= DEFAULT_STATE_CAP).ok_or(Error::CapExceeded {
        what: "interchange process",
        size: factorial(n).unwrap_or(usize::MAX),
        cap: DEFAULT_STATE_CAP,
    })?;
    let states: Vec<Permutation> = Permutation::all(n).collect();
    let mut rates = vec![0.0; count * count];
    for (i, eta) in states.iter().enumerate() {
        for (u, w, r) in x.edges() {
            let swapped = eta.then_after(&Permutation::transposition(n, u, w));
            rates[i * count + swapped.lex_rank()] += r;
        }
    }
    WeightedDigraph::from_dense(states, rates)
}

/// The Cayley state corresponding to an interchange configuration.
pub fn ip_bijection(eta: &Permutation) -> Permutation {
    eta.inverse()
}

fn check_occupancies(x: &BaseGraph, k: &[usize]) -> Result<()> {
    if k.len() != x.len() {
        return Err(Error::LengthMismatch { expected: x.len(), got: k.len() });
    }
    if k.contains(&0) {
        return Err(Error::InvalidConfig("maximal occupancies must be at least 1".into()));
    }
    Ok(())
}

/// Base graph, maximal occupancies `k_v` and particle count `l`.
#[derive(Debug, Clone, PartialEq)]
pub struct GepConfig {
    base: BaseGraph,
    k: Vec<usize>,
    l: usize,
}

impl GepConfig {
    pub fn new(base: BaseGraph, k: Vec<usize>, l: usize) -> Result<Self> {
        check_occupancies(&base, &k)?;
        let total: usize = k.iter().sum();
        if l == 0 || l >= total {
            return Err(Error::InvalidConfig(format!("particle count {l} must satisfy 1 <= l < {total}")));
        }
        Ok(Self { base, k, l })
    }

    /// Same occupancy `k` at every vertex.
    pub fn uniform(base: BaseGraph, k: usize, l: usize) -> Result<Self> {
        let n = base.len();
        Self::new(base, vec![k; n], l)
    }

    pub fn base(&self) -> &BaseGraph {
        &self.base
    }

    pub fn k(&self) -> &[usize] {
        &self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    /// `N = Σ k_v`.
    pub fn total_sites(&self) -> usize {
        self.k.iter().sum()
    }

    pub fn uniform_k(&self) -> Option<usize> {
        let k0 = self.k[0];
        self.k.iter().all(|&k| k == k0).then_some(k0)
    }
}

/// Particle counts per vertex. Ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OccupancyState(Vec<usize>);

impl OccupancyState {
    pub fn counts(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for OccupancyState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All occupancy vectors with `0 <= π(v) <= k_v` and `Σ π = l`, ascending.
pub fn occupancy_states(k: &[usize], l: usize) -> Vec<OccupancyState> {
    fn rec(k: &[usize], left: usize, prefix: &mut Vec<usize>, out: &mut Vec<OccupancyState>) {
        let Some((&first, rest)) = k.split_first() else {
            if left == 0 {
                out.push(OccupancyState(prefix.clone()));
            }
            return;
        };
        let room: usize = rest.iter().sum();
        for c in left.saturating_sub(room)..=first.min(left) {
            prefix.push(c);
            rec(rest, left - c, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, l, &mut Vec::new(), &mut out);
    out
}

/// How a move `u -> w` is weighted before multiplying by `r(u, w)`.
pub enum RateMode<'a> {
    /// `π(u) (k_w - π(w))`.
    Normal,
    /// Any nonnegative function of `(π, u, w)`; only applied to feasible moves.
    Custom(&'a dyn Fn(&[usize], usize, usize) -> f64),
}

/// The generalized exclusion process on occupancy states in lexicographic
/// order. Moves reaching the same target add up.
pub fn gep_graph(cfg: &GepConfig, mode: RateMode<'_>) -> Result<WeightedDigraph<OccupancyState>> {
    gep_graph_capped(cfg, mode, DEFAULT_STATE_CAP)
}

pub fn gep_graph_capped(cfg: &GepConfig, mode: RateMode<'_>, cap: usize) -> Result<WeightedDigraph<OccupancyState>> {
    let states = occupancy_states(&cfg.k, cfg.l);
    let m = states.len();
    if m > cap {
        return Err(Error::CapExceeded { what: "exclusion process", size: m, cap });
    }
    let index: HashMap<&OccupancyState, usize> = states.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let n = cfg.base.len();
    let mut rates = vec![0.0; m * m];
    for (i, pi) in states.iter().enumerate() {
        let counts = pi.counts();
        for u in 0..n {
            for w in 0..n {
                let r = cfg.base.rate(u, w);
                if u == w || r == 0.0 || counts[u] == 0 || counts[w] >= cfg.k[w] {
                    continue;
                }
                let mu = match mode {
                    RateMode::Normal => (counts[u] * (cfg.k[w] - counts[w])) as f64,
                    RateMode::Custom(f) => f(counts, u, w),
                };
                if !(mu.is_finite() && mu >= 0.0) {
                    return Err(Error::InvalidConfig(format!("custom rate {mu} at {pi} for move {u}->{w}")));
                }
                let mut target = counts.to_vec();
                target[u] -= 1;
                target[w] += 1;
                rates[i * m + index[&OccupancyState(target)]] += mu * r;
            }
        }
    }
    WeightedDigraph::from_dense(states, rates)
}

/// The graph obtained by blowing each vertex `v` up into `k_v` copies.
/// Sites are numbered block-major: block 0 first, then block 1, and so on.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtendedGraph {
    graph: BaseGraph,
    block_of: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl ExtendedGraph {
    pub fn graph(&self) -> &BaseGraph {
        &self.graph
    }

    /// Base vertex of each site.
    pub fn block_of(&self, site: usize) -> usize {
        self.block_of[site]
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn sites(&self) -> usize {
        self.block_of.len()
    }
}

/// Between blocks the rate is `r(u, w)`; within the block of `u` it is the
/// total rate `Σ_{v≠u} r(u, v)`.
pub fn extended_graph(x: &BaseGraph, k: &[usize]) -> Result<ExtendedGraph> {
    check_occupancies(x, k)?;
    let block_of: Vec<usize> = k.iter().enumerate().flat_map(|(v, &kv)| std::iter::repeat_n(v, kv)).collect();
    let mut blocks = vec![Vec::new(); x.len()];
    for (site, &v) in block_of.iter().enumerate() {
        blocks[v].push(site);
    }
    let big = block_of.len();
    let names = block_of
        .iter()
        .enumerate()
        .map(|(site, &v)| format!("{}#{}", x.vertices[v], site - blocks[v][0]))
        .collect();
    let mut rates = vec![0.0; big * big];
    for a in 0..big {
        for b in 0..big {
            let (u, w) = (block_of[a], block_of[b]);
            rates[a * big + b] = if a == b {
                0.0
            } else if u == w {
                x.degree(u)
            } else {
                x.rate(u, w)
            };
        }
    }
    Ok(ExtendedGraph { graph: BaseGraph::new(names, rates)?, block_of, blocks })
}

/// Permutations of `{0, .., l-1}`.
pub fn prefix_symmetric(degree: usize, l: usize) -> Result<Subgroup> {
    Subgroup::on_points(degree, &(0..l).collect::<Vec<_>>())
}

/// Permutations of `{l, .., N-1}`.
pub fn suffix_symmetric(degree: usize, l: usize) -> Result<Subgroup> {
    Subgroup::on_points(degree, &(l..degree).collect::<Vec<_>>())
}

/// Stabilizer of the last point.
pub fn last_point_stabilizer(degree: usize) -> Result<Subgroup> {
    Subgroup::point_stabilizer(degree, degree - 1)
}

/// Product of the symmetric groups on each block.
pub fn block_product(eg: &ExtendedGraph) -> Result<Subgroup> {
    let n = eg.sites();
    let gens = eg
        .blocks()
        .iter()
        .flat_map(|b| b.iter().skip(1).map(move |&s| Permutation::transposition(n, b[0], s)))
        .collect();
    Subgroup::generated(n, gens)
}

/// `(∏_v H^v, H_l · H_{l,N})`.
pub fn gep_quotient_subgroups(eg: &ExtendedGraph, l: usize) -> Result<(Subgroup, Subgroup)> {
    let n = eg.sites();
    if l == 0 || l >= n {
        return Err(Error::InvalidConfig(format!("particle count {l} must satisfy 1 <= l < {n}")));
    }
    let right = prefix_symmetric(n, l)?.join(&suffix_symmetric(n, l)?)?;
    Ok((block_product(eg)?, right))
}

/// Occupancy of a Cayley state: `π(v)` counts the labels `a < l` placed in block `v`.
pub fn gep_projection(eg: &ExtendedGraph, l: usize, x: &Permutation) -> OccupancyState {
    let mut counts = vec![0; eg.blocks().len()];
    for a in 0..l {
        counts[eg.block_of(x.apply(a))] += 1;
    }
    OccupancyState(counts)
}

/// The exclusion process as a quotient of the interchange process on the
/// extended graph, compared against the direct construction.
#[derive(Debug, Clone)]
pub struct GepQuotientIso {
    pub quotient: QuotientResult,
    pub direct: WeightedDigraph<OccupancyState>,
    /// Direct-state index of each quotient class.
    pub map: Vec<usize>,
    /// Every member of a class projects to the same occupancy.
    pub well_defined: bool,
    pub is_isomorphism: bool,
}

pub fn gep_quotient_iso(cfg: &GepConfig) -> Result<GepQuotientIso> {
    let eg = extended_graph(&cfg.base, &cfg.k)?;
    let group = interchange_group(eg.graph());
    let (left, right) = gep_quotient_subgroups(&eg, cfg.l)?;
    let quotient = quotient_graph(&group, &left, &right)?;
    let direct = gep_graph(cfg, RateMode::Normal)?;
    let well_defined = quotient.partition().classes().iter().all(|class| {
        let first = gep_projection(&eg, cfg.l, &class[0]);
        class.iter().all(|x| gep_projection(&eg, cfg.l, x) == first)
    });
    let map = quotient
        .partition()
        .reps()
        .iter()
        .map(|x| direct.index_of(&gep_projection(&eg, cfg.l, x)).expect("projection lands in a valid state"))
        .collect::<Vec<_>>();
    let is_isomorphism = well_defined && is_bijective_morphism(quotient.graph(), &direct, &map)?;
    Ok(GepQuotientIso { quotient, direct, map, well_defined, is_isomorphism })
}

pub fn gep_quotient_iso_check(cfg: &GepConfig) -> Result<bool> {
    Ok(gep_quotient_iso(cfg)?.is_isomorphism)
}

fn is_bijective_morphism<A: crate::graph::StateLabel, B: crate::graph::StateLabel>(
    from: &WeightedDigraph<A>,
    to: &WeightedDigraph<B>,
    map: &[usize],
) -> Result<bool> {
    if from.len() != to.len() {
        return Ok(false);
    }
    let mut inverse = vec![usize::MAX; to.len()];
    for (i, &j) in map.iter().enumerate() {
        if inverse[j] != usize::MAX {
            return Ok(false);
        }
        inverse[j] = i;
    }
    Ok(check_morphism_indices(from, to, map)? && check_morphism_indices(to, from, &inverse)?)
}

/// `∏_v H^v \ P̃_IP / H_{N-1}` compared with the block random walk via
/// `[x] -> block of x(N-1)`.
pub fn block_walk_quotient_iso_check(x: &BaseGraph, k: &[usize]) -> Result<bool> {
    let eg = extended_graph(x, k)?;
    let n = eg.sites();
    let group = interchange_group(eg.graph());
    let quotient = quotient_graph(&group, &block_product(&eg)?, &last_point_stabilizer(n)?)?;
    let walk = block_random_walk(x, k)?;
    let map: Vec<usize> = quotient.partition().reps().iter().map(|p| eg.block_of(p.apply(n - 1))).collect();
    is_bijective_morphism(quotient.graph(), &walk, &map)
}

/// Weights `α(A)` on vertex subsets of size at least 2, stored as bit masks.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockShuffleSpec {
    n: usize,
    alpha: BTreeMap<u64, f64>,
}

impl BlockShuffleSpec {
    pub fn new(n: usize, alpha: impl IntoIterator<Item = (Vec<usize>, f64)>) -> Result<Self> {
        if !(2..=64).contains(&n) {
            return Err(Error::InvalidConfig(format!("block shuffle needs 2..=64 vertices, got {n}")));
        }
        let mut map = BTreeMap::new();
        for (set, w) in alpha {
            let mut mask = 0u64;
            for &v in &set {
                if v >= n {
                    return Err(Error::InvalidConfig(format!("vertex {v} out of range")));
                }
                mask |= 1 << v;
            }
            if mask.count_ones() < 2 {
                return Err(Error::InvalidConfig(format!("subset {set:?} has fewer than 2 vertices")));
            }
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::InvalidWeight(format!("weight {w} on subset {set:?}")));
            }
            if map.insert(mask, w).is_some() {
                return Err(Error::InvalidWeight(format!("subset {set:?} listed twice")));
            }
        }
        Ok(Self { n, alpha: map })
    }

    /// `α({u, w}) = r(u, w)`, the interchange process as a block shuffle.
    pub fn from_pairs(x: &BaseGraph) -> Self {
        let alpha = x.edges().map(|(u, w, r)| (vec![u, w], r));
        Self::new(x.len(), alpha).expect("pair weights are valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `(subset, weight)` with subsets as sorted vertex lists.
    pub fn alpha(&self) -> impl Iterator<Item = (Vec<usize>, f64)> + '_ {
        self.alpha.iter().map(|(&m, &w)| ((0..64).filter(|b| m >> b & 1 == 1).collect(), w))
    }

    /// `Σ_{A ⊇ moved} α(A)` for a set of moved vertices.
    fn covering_weight(&self, moved: u64) -> f64 {
        self.alpha.iter().filter(|&(&a, _)| a & moved == moved).map(|(_, w)| w).sum()
    }
}

fn moved_mask(g: &Permutation) -> u64 {
    g.moved_points().into_iter().fold(0, |m, i| m | 1 << i)
}

/// `C(g) = Σ_{A ⊇ moved(g)} α(A)`: every non-identity permutation moving
/// points inside some weighted subset.
pub fn block_shuffle_group(spec: &BlockShuffleSpec) -> Result<WeightedGroup> {
    let n = spec.n;
    let mut support: BTreeMap<Permutation, f64> = BTreeMap::new();
    for (set, _) in spec.alpha() {
        if set.len() > 10 {
            return Err(Error::CapExceeded { what: "block shuffle subset", size: set.len(), cap: 10 });
        }
        for sigma in Permutation::all(set.len()) {
            if sigma.is_identity() {
                continue;
            }
            let mut images: Vec<usize> = (0..n).collect();
            for (i, &v) in set.iter().enumerate() {
                images[v] = set[sigma.apply(i)];
            }
            let g = Permutation::new(images)?;
            support.entry(g).or_insert(0.0);
        }
    }
    let weights: Vec<_> = support.into_keys().map(|g| {
        let w = spec.covering_weight(moved_mask(&g));
        (g, w)
    }).collect();
    WeightedGroup::new(n, weights)
}

/// The block shuffle built from configurations `η` (position to label) with
/// `C(η, η') = Σ_{A ⊇ {v : η(v) ≠ η'(v)}} α(A)`.
pub fn block_shuffle_direct(spec: &BlockShuffleSpec) -> Result<WeightedDigraph<Permutation>> {
    let n = spec.n;
    let count = factorial(n).filter(|&c| c <= DEFAULT_STATE_CAP).ok_or(Error::CapExceeded {
        what: "block shuffle",
        size: factorial(n).unwrap_or(usize::MAX),
        cap: DEFAULT_STATE_CAP,
    })?;
    let states: Vec<Permutation> = Permutation::all(n).collect();
    let mut rates = vec![0.0; count * count];
    for (i, a) in states.iter().enumerate() {
        for (j, b) in states.iter().enumerate() {
            if i != j {
                let diff = (0..n).filter(|&v| a.apply(v) != b.apply(v)).fold(0u64, |m, v| m | 1 << v);
                rates[i * count + j] = spec.covering_weight(diff);
            }
        }
    }
    WeightedDigraph::from_dense(states, rates)
}

/// Block-shuffle weights on the extended graph: `α(S_j ∪ {s}) = r(v_i, v_j)`
/// for a site `s` of block `i ≠ j`, and `α(S_i) = m` for blocks of size at
/// least 2.
pub fn probe_alpha(x: &BaseGraph, k: &[usize], m: f64) -> Result<(ExtendedGraph, BlockShuffleSpec)> {
    let eg = extended_graph(x, k)?;
    let mut alpha: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
    for (j, block_j) in eg.blocks().iter().enumerate() {
        for site in 0..eg.sites() {
            let i = eg.block_of(site);
            if i == j || x.rate(i, j) == 0.0 {
                continue;
            }
            let mut set = block_j.clone();
            set.push(site);
            set.sort_unstable();
            alpha.insert(set, x.rate(i, j));
        }
        if block_j.len() >= 2 {
            alpha.insert(block_j.clone(), m);
        }
    }
    let spec = BlockShuffleSpec::new(eg.sites(), alpha)?;
    Ok((eg, spec))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two() -> BaseGraph {
        BaseGraph::complete(2, 1.0).unwrap()
    }

    fn gap<S: crate::graph::StateLabel>(g: &WeightedDigraph<S>) -> f64 {
        g.spectrum().unwrap().gap()
    }

    #[test]
    fn base_graph_validation() {
        let v = |s: &[&str]| s.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        assert!(BaseGraph::new(v(&["a"]), vec![0.0]).is_err());
        assert!(BaseGraph::new(v(&["a", "b"]), vec![0.0, 1.0, 2.0, 0.0]).is_err());
        let e = |a: &str, b: &str, r: f64| (a.to_string(), b.to_string(), r);
        assert!(matches!(
            BaseGraph::from_edges(v(&["a", "b"]), &[e("a", "b", 1.0), e("b", "a", 1.0)]),
            Err(Error::DuplicateEntry(..))
        ));
        let x = BaseGraph::from_edges(v(&["a", "b", "c"]), &[e("a", "b", 2.0)]).unwrap();
        assert_eq!(x.rate(1, 0), 2.0);
        assert!(!x.is_connected());
        assert!(matches!(random_walk(&x, 1.0), Err(Error::NotIrreducible)));
    }

    #[test]
    fn random_walk_examples() {
        assert!((gap(&random_walk(&two(), 1.0).unwrap()) - 2.0).abs() < 1e-12);
        let k3 = BaseGraph::complete(3, 1.0).unwrap();
        assert!((gap(&random_walk(&k3, 1.0).unwrap()) - 3.0).abs() < 1e-12);
        assert!((gap(&random_walk(&k3, 2.0).unwrap()) - 6.0).abs() < 1e-12);
        assert!(random_walk(&k3, 0.0).is_err());
    }

    #[test]
    fn interchange_examples() {
        let g = interchange_group(&two());
        assert_eq!(g.support_len(), 1);
        assert!((gap(&g.cayley_graph().unwrap()) - 2.0).abs() < 1e-12);

        let k3 = interchange_group(&BaseGraph::complete(3, 1.0).unwrap());
        assert_eq!(k3.support_len(), 3);
        assert!((gap(&k3.cayley_graph().unwrap()) - 3.0).abs() < 1e-10);

        let path = BaseGraph::path(&[1.0, 1.0]).unwrap();
        assert_eq!(interchange_group(&path).support_len(), 2);
    }

    #[test]
    fn interchange_direct_matches_cayley() {
        let graphs = [
            BaseGraph::path(&[1.0, 2.0]).unwrap(),
            BaseGraph::path(&[1.0, 0.5, 3.0]).unwrap(),
            BaseGraph::complete(4, 1.5).unwrap(),
            BaseGraph::path(&[1.0, 2.0, 0.5, 4.0]).unwrap(),
        ];
        for x in &graphs {
            let direct = interchange_direct(x).unwrap();
            let cayley = interchange_group(x).cayley_graph().unwrap();
            let map: Vec<usize> = direct.states().iter().map(|eta| ip_bijection(eta).lex_rank()).collect();
            assert!(is_bijective_morphism(&direct, &cayley, &map).unwrap());
        }
    }

    #[test]
    fn occupancy_enumeration() {
        let s = occupancy_states(&[2, 2], 2);
        let counts: Vec<&[usize]> = s.iter().map(|p| p.counts()).collect();
        assert_eq!(counts, vec![&[0, 2][..], &[1, 1], &[2, 0]]);
        assert_eq!(occupancy_states(&[2, 2, 2], 3).len(), 7);
        assert!(GepConfig::uniform(two(), 2, 4).is_err());
        assert!(GepConfig::uniform(two(), 2, 0).is_err());
    }

    #[test]
    fn gep_examples() {
        let cfg = GepConfig::uniform(two(), 2, 2).unwrap();
        let g = gep_graph(&cfg, RateMode::Normal).unwrap();
        assert_eq!(g.len(), 3);
        let idx = |c: [usize; 2]| g.index_of(&OccupancyState(c.to_vec())).unwrap();
        assert_eq!(g.rate(idx([2, 0]), idx([1, 1])), 4.0);
        assert_eq!(g.rate(idx([1, 1]), idx([2, 0])), 1.0);
        assert_eq!(g.rate(idx([1, 1]), idx([0, 2])), 1.0);
        assert_eq!(g.rate(idx([0, 2]), idx([1, 1])), 4.0);
        assert!((gap(&g) - 4.0).abs() < 1e-10);

        let path = BaseGraph::path(&[1.0, 1.0]).unwrap();
        let g = gep_graph(&GepConfig::uniform(path.clone(), 2, 1).unwrap(), RateMode::Normal).unwrap();
        assert!((gap(&g) - 2.0).abs() < 1e-10);

        let rw = random_walk(&path, 1.0).unwrap();
        let g1 = gep_graph(&GepConfig::uniform(path, 1, 1).unwrap(), RateMode::Normal).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                // state (1,0,0) is vertex 0 but sorts last
                assert_eq!(g1.rate(2 - i, 2 - j), rw.rate(i, j));
            }
        }
    }

    #[test]
    fn gep_custom_rate() {
        let cfg = GepConfig::uniform(two(), 2, 2).unwrap();
        let unit = |_: &[usize], _: usize, _: usize| 1.0;
        let g = gep_graph(&cfg, RateMode::Custom(&unit)).unwrap();
        assert_eq!(g.rate(0, 1), 1.0);
        let bad = |_: &[usize], _: usize, _: usize| -1.0;
        assert!(gep_graph(&cfg, RateMode::Custom(&bad)).is_err());
    }

    #[test]
    fn extended_graph_examples() {
        let eg = extended_graph(&two(), &[2, 2]).unwrap();
        assert_eq!(eg.sites(), 4);
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(eg.graph().rate(a, b), if a == b { 0.0 } else { 1.0 });
            }
        }
        let k3 = BaseGraph::complete(3, 1.0).unwrap();
        assert_eq!(extended_graph(&k3, &[1, 1, 1]).unwrap().graph().rates, k3.rates);
        let eg = extended_graph(&k3, &[2, 1, 1]).unwrap();
        assert_eq!(eg.graph().rate(0, 1), 2.0);
        assert_eq!(eg.graph().rate(0, 2), 1.0);
        assert_eq!(eg.blocks(), &[vec![0, 1], vec![2], vec![3]]);
    }

    #[test]
    fn quotient_subgroup_examples() {
        let eg = extended_graph(&two(), &[2, 2]).unwrap();
        let (l, r) = gep_quotient_subgroups(&eg, 2).unwrap();
        assert_eq!((l.order(), r.order()), (4, 4));
        let (_, r) = gep_quotient_subgroups(&eg, 1).unwrap();
        assert_eq!(r.order(), 6);
        let eg1 = extended_graph(&BaseGraph::complete(3, 1.0).unwrap(), &[1, 1, 1]).unwrap();
        assert_eq!(gep_quotient_subgroups(&eg1, 1).unwrap().0.order(), 1);
        assert!(gep_quotient_subgroups(&eg, 4).is_err());
    }

    #[test]
    fn gep_quotient_iso_examples() {
        let iso = gep_quotient_iso(&GepConfig::uniform(two(), 2, 2).unwrap()).unwrap();
        assert_eq!(iso.quotient.graph().len(), 3);
        assert!(iso.well_defined && iso.is_isomorphism);
        for x in [
            BaseGraph::path(&[1.0, 2.0]).unwrap(),
            BaseGraph::path(&[0.5, 1.0, 3.0]).unwrap(),
            BaseGraph::complete(5, 1.0).unwrap(),
        ] {
            let cfg = GepConfig::uniform(x, 1, 1).unwrap();
            assert!(gep_quotient_iso_check(&cfg).unwrap());
        }
        let path = BaseGraph::path(&[1.0, 1.0]).unwrap();
        assert!(gep_quotient_iso_check(&GepConfig::uniform(path, 2, 2).unwrap()).unwrap());
    }

    #[test]
    fn block_walk_iso() {
        assert!(block_walk_quotient_iso_check(&two(), &[2, 2]).unwrap());
        assert!(block_walk_quotient_iso_check(&two(), &[2, 1]).unwrap());
        let path = BaseGraph::path(&[1.0, 2.0]).unwrap();
        assert!(block_walk_quotient_iso_check(&path, &[2, 1, 2]).unwrap());
        let k = block_random_walk(&path, &[2, 2, 2]).unwrap();
        let rw = random_walk(&path, 2.0).unwrap();
        assert_eq!(k, rw);
    }

    #[test]
    fn block_shuffle_examples() {
        let path = BaseGraph::path(&[1.0, 2.0, 0.5]).unwrap();
        assert_eq!(block_shuffle_group(&BlockShuffleSpec::from_pairs(&path)).unwrap(), interchange_group(&path));

        let full = BlockShuffleSpec::new(3, [(vec![0, 1, 2], 1.0)]).unwrap();
        let g = block_shuffle_group(&full).unwrap();
        assert_eq!(g.support_len(), 5);
        assert!(g.support().all(|(_, w)| w == 1.0));

        let spec = BlockShuffleSpec::new(3, [(vec![0, 1], 1.0), (vec![0, 1, 2], 1.0)]).unwrap();
        let g = block_shuffle_group(&spec).unwrap();
        // brute force over S_3: sum α over subsets containing the moved set
        for h in Permutation::all(3).filter(|h| !h.is_identity()) {
            let moved = h.moved_points();
            let expected: f64 = [(vec![0, 1], 1.0), (vec![0, 1, 2], 1.0)]
                .iter()
                .filter(|(a, _)| moved.iter().all(|p| a.contains(p)))
                .map(|(_, w)| w)
                .sum();
            assert_eq!(g.weight(&h), expected);
        }
        assert_eq!(g.weight(&Permutation::transposition(3, 0, 1)), 2.0);

        assert!(BlockShuffleSpec::new(3, [(vec![1], 1.0)]).is_err());
        assert!(BlockShuffleSpec::new(3, [(vec![0, 1], 0.0)]).is_err());
    }

    #[test]
    fn block_shuffle_direct_matches_cayley() {
        for spec in [
            BlockShuffleSpec::new(3, [(vec![0, 1], 1.0), (vec![0, 1, 2], 1.0)]).unwrap(),
            BlockShuffleSpec::new(4, [(vec![0, 1, 2], 2.0), (vec![2, 3], 0.5), (vec![0, 3], 1.0)]).unwrap(),
            probe_alpha(&two(), &[2, 2], 10.0).unwrap().1,
        ] {
            let direct = block_shuffle_direct(&spec).unwrap();
            let cayley = block_shuffle_group(&spec).unwrap().cayley_graph().unwrap();
            let map: Vec<usize> = direct.states().iter().map(|eta| ip_bijection(eta).lex_rank()).collect();
            assert!(is_bijective_morphism(&direct, &cayley, &map).unwrap());
        }
    }

    #[test]
    fn probe_alpha_shape() {
        let (_, spec) = probe_alpha(&two(), &[2, 2], 3.0).unwrap();
        let alpha: Vec<_> = spec.alpha().collect();
        assert!(alpha.contains(&(vec![0, 1], 3.0)));
        assert!(alpha.contains(&(vec![2, 3], 3.0)));
        assert!(alpha.contains(&(vec![0, 2, 3], 1.0)));
        assert!(alpha.contains(&(vec![0, 1, 3], 1.0)));
        assert_eq!(alpha.len(), 6);
        // singleton blocks give plain pair weights
        let k3 = BaseGraph::complete(3, 1.0).unwrap();
        let (_, spec) = probe_alpha(&k3, &[1, 1, 1], 5.0).unwrap();
        assert_eq!(spec, BlockShuffleSpec::from_pairs(&k3));
    }
}

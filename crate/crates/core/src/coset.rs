//! Double cosets `H x H'` in a symmetric group, regular pairs, quotient
//! graphs of weighted Cayley graphs and brute-force checkers for the
//! hypotheses under which quotients keep their spectral gap.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{check_morphism_indices, WeightedDigraph, DEFAULT_STATE_CAP};
use crate::perm::{factorial, Permutation, Subgroup, WeightedGroup};
use crate::tol::approx_eq;

/// Largest group order for which a partition is enumerated (9!).
pub const PARTITION_CAP: usize = 362_880;

/// The double cosets of `H` (acting on the left) and `H'` (on the right).
/// Classes are ordered by their representative, the lexicographically
/// smallest member.
#[derive(Debug, Clone)]
pub struct DoubleCosetPartition {
    degree: usize,
    left: Subgroup,
    right: Subgroup,
    reps: Vec<Permutation>,
    classes: Vec<Vec<Permutation>>,
    class_of: Vec<usize>,
}

impl DoubleCosetPartition {
    pub fn new(left: &Subgroup, right: &Subgroup) -> Result<Self> {
        let degree = left.degree();
        if right.degree() != degree {
            return Err(Error::DegreeMismatch(degree, right.degree()));
        }
        let order = factorial(degree)
            .filter(|&n| n <= PARTITION_CAP)
            .ok_or(Error::CapExceeded {
                what: "double coset partition",
                size: factorial(degree).unwrap_or(usize::MAX),
                cap: PARTITION_CAP,
            })?;
        let mut class_of = vec![usize::MAX; order];
        let mut reps = Vec::new();
        let mut classes = Vec::new();
        for rank in 0..order {
            if class_of[rank] != usize::MAX {
                continue;
            }
            let id = reps.len();
            let start = Permutation::from_lex_rank(degree, rank);
            class_of[rank] = id;
            let mut members = vec![start.clone()];
            let mut stack = vec![start.clone()];
            while let Some(x) = stack.pop() {
                let lefts = left.generators().iter().map(|h| h.then_after(&x));
                let rights = right.generators().iter().map(|h| x.then_after(h));
                for y in lefts.chain(rights) {
                    let r = y.lex_rank();
                    if class_of[r] == usize::MAX {
                        class_of[r] = id;
                        members.push(y.clone());
                        stack.push(y);
                    }
                }
            }
            members.sort();
            reps.push(start);
            classes.push(members);
        }
        Ok(Self { degree, left: left.clone(), right: right.clone(), reps, classes, class_of })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn left(&self) -> &Subgroup {
        &self.left
    }

    pub fn right(&self) -> &Subgroup {
        &self.right
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn reps(&self) -> &[Permutation] {
        &self.reps
    }

    pub fn classes(&self) -> &[Vec<Permutation>] {
        &self.classes
    }

    pub fn class_of(&self, g: &Permutation) -> usize {
        self.class_of[g.lex_rank()]
    }

    /// Class index of the permutation with the given lexicographic rank.
    pub fn class_of_rank(&self, rank: usize) -> usize {
        self.class_of[rank]
    }

    /// Class index of every group element, by lexicographic rank.
    pub fn class_map(&self) -> &[usize] {
        &self.class_of
    }
}

/// Left-multiplication tables for the support of a weighted group:
/// `steps[s] = (C(g_s), [rank(g_s ∘ z) for z in lex order])`.
struct CayleyTables {
    order: usize,
    steps: Vec<(f64, Vec<u32>)>,
}

impl CayleyTables {
    fn new(group: &WeightedGroup) -> Result<Self> {
        let order = factorial(group.degree())
            .filter(|&n| n <= PARTITION_CAP)
            .ok_or(Error::CapExceeded {
                what: "Cayley tables",
                size: factorial(group.degree()).unwrap_or(usize::MAX),
                cap: PARTITION_CAP,
            })?;
        let elems: Vec<Permutation> = Permutation::all(group.degree()).collect();
        let steps = group
            .support()
            .map(|(g, w)| (w, elems.iter().map(|z| g.then_after(z).lex_rank() as u32).collect()))
            .collect();
        Ok(Self { order, steps })
    }

    /// Dense row `R(z)[Y] = Σ_g C(g)·1[class(g∘z) = Y]` written into `out`.
    fn fill_row(&self, class_of: &[usize], z: usize, out: &mut [f64]) {
        out.iter_mut().for_each(|v| *v = 0.0);
        for (w, table) in &self.steps {
            out[class_of[table[z] as usize]] += w;
        }
    }

    /// Total rate from `z` into elements outside its own class.
    fn escape_rate(&self, class_of: &[usize], z: usize) -> f64 {
        self.steps
            .iter()
            .filter(|(_, t)| class_of[t[z] as usize] != class_of[z])
            .map(|(w, _)| w)
            .sum()
    }
}

/// `rank(h ∘ z)` for every element `h` of `sub` and every `z`.
fn left_action_table(sub: &Subgroup, order: usize) -> Vec<Vec<u32>> {
    let elems: Vec<Permutation> = Permutation::all(sub.degree()).collect();
    debug_assert_eq!(elems.len(), order);
    sub.elements()
        .par_iter()
        .map(|h| elems.iter().map(|z| h.then_after(z).lex_rank() as u32).collect())
        .collect()
}

fn row_mismatch(a: &[f64], b: &[f64], skip: usize) -> f64 {
    a.iter()
        .zip(b)
        .enumerate()
        .filter(|&(c, (x, y))| c != skip && !approx_eq(*x, *y))
        .map(|(_, (x, y))| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Largest violation of `R(h∘x)[Y] = R(x)[Y]` over all `x`, all `h` in the
/// left subgroup and all classes `Y ≠ [x]`. Zero means the pair is regular.
pub fn regularity_defect(group: &WeightedGroup, partition: &DoubleCosetPartition) -> Result<f64> {
    check_degree(group, partition.degree())?;
    let tables = CayleyTables::new(group)?;
    let lmul = left_action_table(partition.left(), tables.order);
    let class_of = partition.class_map();
    let m = partition.len();
    Ok((0..tables.order)
        .into_par_iter()
        .map_init(
            || (vec![0.0; m], vec![0.0; m]),
            |(rx, rhx), x| {
                tables.fill_row(class_of, x, rx);
                lmul.iter()
                    .map(|table| {
                        tables.fill_row(class_of, table[x] as usize, rhx);
                        row_mismatch(rx, rhx, class_of[x])
                    })
                    .fold(0.0, f64::max)
            },
        )
        .reduce(|| 0.0, f64::max))
}

/// Exhaustive check that `(H, H')` is a regular pair for `group`.
pub fn is_regular_pair(group: &WeightedGroup, h: &Subgroup, h_prime: &Subgroup) -> Result<bool> {
    let partition = DoubleCosetPartition::new(h, h_prime)?;
    Ok(regularity_defect(group, &partition)? == 0.0)
}

/// Largest difference between the outgoing class rates computed from a
/// class member and from the class representative.
pub fn representative_defect(group: &WeightedGroup, partition: &DoubleCosetPartition) -> Result<f64> {
    check_degree(group, partition.degree())?;
    let tables = CayleyTables::new(group)?;
    let class_of = partition.class_map();
    let m = partition.len();
    Ok((0..m)
        .into_par_iter()
        .map(|c| {
            let mut rep_row = vec![0.0; m];
            let mut row = vec![0.0; m];
            tables.fill_row(class_of, partition.reps()[c].lex_rank(), &mut rep_row);
            partition.classes()[c]
                .iter()
                .map(|z| {
                    tables.fill_row(class_of, z.lex_rank(), &mut row);
                    rep_row
                        .iter()
                        .zip(&row)
                        .enumerate()
                        .filter(|&(d, _)| d != c)
                        .map(|(_, (a, b))| (a - b).abs())
                        .fold(0.0, f64::max)
                })
                .fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max))
}

fn check_degree(group: &WeightedGroup, degree: usize) -> Result<()> {
    if group.degree() != degree {
        return Err(Error::DegreeMismatch(group.degree(), degree));
    }
    Ok(())
}

/// A quotient `H \ P̂(G) / H'` with its partition and the projection from
/// Cayley states (by lexicographic rank) to quotient states.
#[derive(Debug, Clone)]
pub struct QuotientResult {
    partition: DoubleCosetPartition,
    graph: WeightedDigraph<Permutation>,
}

impl QuotientResult {
    pub fn partition(&self) -> &DoubleCosetPartition {
        &self.partition
    }

    /// States are the class representatives.
    pub fn graph(&self) -> &WeightedDigraph<Permutation> {
        &self.graph
    }

    /// Quotient state index for every Cayley state, in lexicographic order.
    pub fn projection(&self) -> &[usize] {
        self.partition.class_map()
    }

    pub fn project(&self, g: &Permutation) -> usize {
        self.partition.class_of(g)
    }
}

/// Builds the quotient graph, failing if the pair is not regular.
pub fn quotient_graph(group: &WeightedGroup, h: &Subgroup, h_prime: &Subgroup) -> Result<QuotientResult> {
    check_degree(group, h.degree())?;
    let partition = DoubleCosetPartition::new(h, h_prime)?;
    quotient_from_partition(group, partition)
}

pub fn quotient_from_partition(group: &WeightedGroup, partition: DoubleCosetPartition) -> Result<QuotientResult> {
    if regularity_defect(group, &partition)? != 0.0 {
        return Err(Error::NotRegular);
    }
    let m = partition.len();
    if m > DEFAULT_STATE_CAP {
        return Err(Error::CapExceeded { what: "quotient graph", size: m, cap: DEFAULT_STATE_CAP });
    }
    let tables = CayleyTables::new(group)?;
    let mut rates = vec![0.0; m * m];
    for (c, row) in rates.chunks_mut(m).enumerate() {
        tables.fill_row(partition.class_map(), partition.reps()[c].lex_rank(), row);
        row[c] = 0.0;
    }
    let graph = WeightedDigraph::from_dense(partition.reps().to_vec(), rates)?;
    Ok(QuotientResult { partition, graph })
}

/// The natural map `[x]_1 -> [x]_2` between nested quotients.
#[derive(Debug, Clone, PartialEq)]
pub struct NestedMorphism {
    pub map: Vec<usize>,
    pub is_morphism: bool,
}

/// Requires `H_1 ⊆ H_2` and `H'_1 ⊆ H'_2`, checked elementwise.
pub fn nested_quotient_morphism(fine: &QuotientResult, coarse: &QuotientResult) -> Result<NestedMorphism> {
    let (f, c) = (fine.partition(), coarse.partition());
    if !f.left().is_subgroup_of(c.left()) {
        return Err(Error::InclusionViolated("left subgroups are not nested".into()));
    }
    if !f.right().is_subgroup_of(c.right()) {
        return Err(Error::InclusionViolated("right subgroups are not nested".into()));
    }
    let map: Vec<usize> = f.reps().iter().map(|x| c.class_of(x)).collect();
    let is_morphism = check_morphism_indices(fine.graph(), coarse.graph(), &map)?;
    Ok(NestedMorphism { map, is_morphism })
}

/// Compares `H_1 \ P̂ / H_2` with `H_1 \ P̂ / h0 H_2 h0^-1` along
/// `[x] -> [x h0^-1]'`, checking a weight-preserving bijection.
pub fn conjugate_quotient_isomorphic(
    group: &WeightedGroup,
    h1: &Subgroup,
    h2: &Subgroup,
    h0: &Permutation,
) -> Result<bool> {
    let base = quotient_graph(group, h1, h2)?;
    let conj = quotient_graph(group, h1, &h2.conjugate_by(h0)?)?;
    if base.graph().len() != conj.graph().len() {
        return Ok(false);
    }
    let h0_inv = h0.inverse();
    let forward: Vec<usize> = base.partition().reps().iter().map(|x| conj.project(&x.then_after(&h0_inv))).collect();
    let backward: Vec<usize> = conj.partition().reps().iter().map(|y| base.project(&y.then_after(h0))).collect();
    let bijective = forward.iter().enumerate().all(|(i, &j)| backward[j] == i);
    Ok(bijective
        && check_morphism_indices(base.graph(), conj.graph(), &forward)?
        && check_morphism_indices(conj.graph(), base.graph(), &backward)?)
}

/// Outcome of the left-action hypothesis checks for `H_1 ⊆ H_2` over a
/// common right subgroup.
#[derive(Debug, Clone, PartialEq)]
pub struct LeftActionReport {
    pub cond_equivariant: bool,
    pub cond_large_enough: bool,
    pub no_full_class: bool,
    /// `min_z Σ_{y ∉ [z]_2} C(y z^-1)`, the right side of the second condition.
    pub min_escape: f64,
}

impl LeftActionReport {
    pub fn all_hold(&self) -> bool {
        self.cond_equivariant && self.cond_large_enough && self.no_full_class
    }
}

/// Evaluates both conditions by brute force over all `x`, `y` and `h_2`.
///
/// The count of `H_1`-classes inside `[x]_2` is taken as the number of
/// classes of the finer quotient contained in `[x]_2`.
pub fn check_left_action_hypotheses(
    group: &WeightedGroup,
    h1: &Subgroup,
    h2: &Subgroup,
    h_prime: &Subgroup,
) -> Result<LeftActionReport> {
    check_degree(group, h1.degree())?;
    if !h1.is_subgroup_of(h2) {
        return Err(Error::InclusionViolated("H1 is not contained in H2".into()));
    }
    let p1 = DoubleCosetPartition::new(h1, h_prime)?;
    let p2 = DoubleCosetPartition::new(h2, h_prime)?;
    if regularity_defect(group, &p1)? != 0.0 || regularity_defect(group, &p2)? != 0.0 {
        return Err(Error::NotRegular);
    }
    let tables = CayleyTables::new(group)?;
    let lmul = left_action_table(h2, tables.order);
    let (c1, c2) = (p1.class_map(), p2.class_map());
    let m1 = p1.len();

    let mut fine_per_coarse = vec![0usize; p2.len()];
    for rep in p1.reps() {
        fine_per_coarse[p2.class_of(rep)] += 1;
    }
    let min_escape = (0..tables.order)
        .into_par_iter()
        .map(|z| tables.escape_rate(c2, z))
        .reduce(|| f64::INFINITY, f64::min);

    let (cond_equivariant, cond_large_enough) = (0..tables.order)
        .into_par_iter()
        .map_init(
            || vec![0.0; m1],
            |row, x| {
                tables.fill_row(c1, x, row);
                let cx = c1[x];
                let equivariant = (0..tables.order).all(|y| {
                    let cy = c1[y];
                    cy == cx
                        || lmul.iter().all(|t| {
                            let ch = c1[t[y] as usize];
                            ch == cx || approx_eq(row[cy], row[ch])
                        })
                });
                let count = fine_per_coarse[c2[x]] as f64;
                let large = lmul.iter().all(|t| {
                    let ch = c1[t[x] as usize];
                    ch == cx || count * row[ch] >= min_escape || approx_eq(count * row[ch], min_escape)
                });
                (equivariant, large)
            },
        )
        .reduce(|| (true, true), |a, b| (a.0 && b.0, a.1 && b.1));

    Ok(LeftActionReport { cond_equivariant, cond_large_enough, no_full_class: p2.len() > 1, min_escape })
}

/// Outcome of the right-action hypothesis checks.
#[derive(Debug, Clone, PartialEq)]
pub struct RightActionReport {
    /// Number of distinct conjugates `h H' h^-1`, `h ∈ H_a`.
    pub family_size: usize,
    pub cond_intersection: bool,
    pub cond_generate: bool,
}

impl RightActionReport {
    pub fn all_hold(&self) -> bool {
        self.cond_intersection && self.cond_generate
    }
}

/// Builds the conjugate family of `H'` under `H_a`, checks that its
/// intersection lies in `H_a`, and that each member together with the
/// intersection of the others generates the whole group. An empty
/// intersection family counts as the whole group.
pub fn check_right_action_hypotheses(h_prime: &Subgroup, h_a: &Subgroup) -> Result<RightActionReport> {
    let degree = h_prime.degree();
    if h_a.degree() != degree {
        return Err(Error::DegreeMismatch(degree, h_a.degree()));
    }
    let mut family: Vec<Subgroup> = Vec::new();
    for h in h_a.elements() {
        let c = h_prime.conjugate_by(h)?;
        if !family.contains(&c) {
            family.push(c);
        }
    }
    let intersect_all = |members: &mut dyn Iterator<Item = &Subgroup>| -> Result<Option<Subgroup>> {
        let mut acc: Option<Subgroup> = None;
        for s in members {
            acc = Some(match acc {
                None => s.clone(),
                Some(a) => a.intersection(s)?,
            });
        }
        Ok(acc)
    };
    let h_b = intersect_all(&mut family.iter())?.expect("family contains H' itself");
    let cond_intersection = h_b.is_subgroup_of(h_a);
    let mut cond_generate = true;
    for (i, alpha) in family.iter().enumerate() {
        let generated = match intersect_all(&mut family.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, s)| s))? {
            None => true,
            Some(rest) => alpha.join(&rest)?.is_full(),
        };
        if !generated {
            cond_generate = false;
            break;
        }
    }
    Ok(RightActionReport { family_size: family.len(), cond_intersection, cond_generate })
}

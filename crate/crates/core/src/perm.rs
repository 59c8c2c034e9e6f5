//! Permutations of `{0, .., N-1}`, weighted groups over the symmetric group,
//! subgroup closure and weighted Cayley graphs.
//!
//! Composition is right-to-left: `(g ∘ h)(i) = g(h(i))`. Cayley edges use left
//! multiplication, `x -> g ∘ x` with rate `C_G(g)`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{WeightedDigraph, DEFAULT_STATE_CAP};
use crate::tol::approx_eq;

/// Default bound on enumerated subgroup orders (10!).
pub const DEFAULT_CLOSURE_CAP: usize = 3_628_800;

/// A bijection of `{0, .., N-1}` in one-line notation. Ordered lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || i > u8::MAX as usize || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPermutation(images));
            }
        }
        Ok(Self(images.into_iter().map(|i| i as u8).collect()))
    }

    pub fn identity(degree: usize) -> Self {
        Self((0..degree as u8).collect())
    }

    /// The transposition `(a b)`.
    pub fn transposition(degree: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(degree);
        p.0.swap(a, b);
        p
    }

    /// The cycle `c[0] -> c[1] -> .. -> c[0]`.
    pub fn cycle(degree: usize, c: &[usize]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        for (k, &a) in c.iter().enumerate() {
            if a >= degree {
                return Err(Error::InvalidPermutation(c.to_vec()));
            }
            images[a] = c[(k + 1) % c.len()];
        }
        Self::new(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|&i| i as usize).collect()
    }

    /// `self ∘ other`, failing on a degree mismatch.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.then_after(other))
    }

    /// `self ∘ other` for permutations already known to share a degree.
    #[inline]
    pub(crate) fn then_after(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Self(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.degree()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        Self(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// Points with `g(i) != i`.
    pub fn moved_points(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.apply(i) != i).collect()
    }

    /// Position in the lexicographic order of all permutations of this degree.
    pub fn lex_rank(&self) -> usize {
        let n = self.degree();
        let mut rank = 0;
        for i in 0..n {
            let smaller_later = self.0[i + 1..].iter().filter(|&&x| x < self.0[i]).count();
            rank = rank * (n - i) + smaller_later;
        }
        rank
    }

    /// Inverse of [`Permutation::lex_rank`].
    pub fn from_lex_rank(degree: usize, mut rank: usize) -> Self {
        let mut digits = vec![0usize; degree];
        for i in (0..degree).rev() {
            let base = degree - i;
            digits[i] = rank % base;
            rank /= base;
        }
        let mut pool: Vec<u8> = (0..degree as u8).collect();
        Self(digits.into_iter().map(|d| pool.remove(d)).collect())
    }

    /// All permutations of `degree` points in lexicographic order.
    pub fn all(degree: usize) -> impl Iterator<Item = Self> {
        let count = factorial(degree).expect("degree too large to enumerate");
        (0..count).map(move |r| Self::from_lex_rank(degree, r))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

pub fn factorial(n: usize) -> Option<usize> {
    (1..=n).try_fold(1usize, |acc, k| acc.checked_mul(k))
}

/// A subgroup of the symmetric group, stored by generators and its full
/// element list in lexicographic order.
#[derive(Debug, Clone)]
pub struct Subgroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    members: HashSet<Permutation>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Subgroup {
    /// Breadth-first closure of `generators` under composition.
    pub fn generated(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        Self::generated_capped(degree, generators, DEFAULT_CLOSURE_CAP)
    }

    pub fn generated_capped(degree: usize, generators: Vec<Permutation>, cap: usize) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch(degree, g.degree()));
        }
        let id = Permutation::identity(degree);
        let mut members: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut frontier = vec![id];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for x in &frontier {
                for g in &generators {
                    let y = g.then_after(x);
                    if !members.contains(&y) {
                        if members.len() >= cap {
                            return Err(Error::CapExceeded {
                                what: "subgroup closure",
                                size: members.len() + 1,
                                cap,
                            });
                        }
                        members.insert(y.clone());
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        let mut elements: Vec<Permutation> = members.iter().cloned().collect();
        elements.sort();
        Ok(Self { degree, generators, elements, members })
    }

    pub fn trivial(degree: usize) -> Self {
        Self::generated(degree, Vec::new()).expect("trivial group")
    }

    /// The whole symmetric group, generated by adjacent transpositions.
    pub fn symmetric(degree: usize) -> Result<Self> {
        let gens = (1..degree).map(|i| Permutation::transposition(degree, i - 1, i)).collect();
        Self::generated(degree, gens)
    }

    /// All permutations of `points` fixing everything else.
    pub fn on_points(degree: usize, points: &[usize]) -> Result<Self> {
        if let Some(&p) = points.iter().find(|&&p| p >= degree) {
            return Err(Error::InvalidConfig(format!("point {p} out of range for degree {degree}")));
        }
        let gens = points
            .iter()
            .skip(1)
            .map(|&p| Permutation::transposition(degree, points[0], p))
            .collect();
        Self::generated(degree, gens)
    }

    /// Stabilizer of a single point.
    pub fn point_stabilizer(degree: usize, point: usize) -> Result<Self> {
        let others: Vec<usize> = (0..degree).filter(|&p| p != point).collect();
        Self::on_points(degree, &others)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.members.contains(g)
    }

    pub fn is_subgroup_of(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements.iter().all(|g| other.contains(g))
    }

    pub fn is_full(&self) -> bool {
        factorial(self.degree) == Some(self.order())
    }

    /// `h0 H h0^-1`.
    pub fn conjugate_by(&self, h0: &Permutation) -> Result<Self> {
        if h0.degree() != self.degree {
            return Err(Error::DegreeMismatch(self.degree, h0.degree()));
        }
        let inv = h0.inverse();
        let conj = |g: &Permutation| h0.then_after(g).then_after(&inv);
        let generators = self.generators.iter().map(conj).collect();
        let mut elements: Vec<Permutation> = self.elements.iter().map(conj).collect();
        elements.sort();
        let members = elements.iter().cloned().collect();
        Ok(Self { degree: self.degree, generators, elements, members })
    }

    /// Elementwise intersection. Generators are the intersection's elements.
    pub fn intersection(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        let common: Vec<Permutation> =
            self.elements.iter().filter(|g| other.contains(g)).cloned().collect();
        Self::generated(self.degree, common)
    }

    /// The subgroup generated by both.
    pub fn join(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        let gens = self.generators.iter().chain(&other.generators).cloned().collect();
        Self::generated(self.degree, gens)
    }
}

/// A symmetric group `S_N` with a nonnegative weight that vanishes at the
/// identity. Only the support is stored.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGroup {
    degree: usize,
    weights: BTreeMap<Permutation, f64>,
}

impl WeightedGroup {
    /// Zero weights are dropped; the identity may not carry weight.
    pub fn new(degree: usize, weights: impl IntoIterator<Item = (Permutation, f64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (g, w) in weights {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
            if !w.is_finite() || w < 0.0 {
                return Err(Error::InvalidWeight(format!("weight {w} on {g}")));
            }
            if w == 0.0 {
                continue;
            }
            if g.is_identity() {
                return Err(Error::InvalidWeight("identity must have weight 0".into()));
            }
            if map.insert(g.clone(), w).is_some() {
                return Err(Error::InvalidWeight(format!("{g} listed twice")));
            }
        }
        Ok(Self { degree, weights: map })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn weight(&self, g: &Permutation) -> f64 {
        self.weights.get(g).copied().unwrap_or(0.0)
    }

    /// Elements of positive weight, in lexicographic order.
    pub fn support(&self) -> impl Iterator<Item = (&Permutation, f64)> {
        self.weights.iter().map(|(g, &w)| (g, w))
    }

    pub fn support_len(&self) -> usize {
        self.weights.len()
    }

    /// Every element reachable from every other along positive-weight steps,
    /// i.e. the support generates the whole group.
    pub fn is_irreducible(&self) -> Result<bool> {
        if self.weights.is_empty() {
            return Ok(false);
        }
        let cap = factorial(self.degree).unwrap_or(usize::MAX).min(DEFAULT_CLOSURE_CAP);
        let closure = Subgroup::generated_capped(self.degree, self.weights.keys().cloned().collect(), cap)?;
        Ok(closure.is_full())
    }

    /// For an irreducible weighted group, reversibility is `C(g) = C(g^-1)`.
    pub fn is_reversible(&self) -> Result<bool> {
        if !self.is_irreducible()? {
            return Err(Error::NotIrreducible);
        }
        Ok(self.support().all(|(g, w)| approx_eq(w, self.weight(&g.inverse()))))
    }

    /// The image weight `C_2(g) = sum_{hom(g') = g} C_1(g')` under a map into
    /// a symmetric group of degree `target_degree`.
    pub fn pushforward(
        &self,
        target_degree: usize,
        hom: impl Fn(&Permutation) -> Permutation,
    ) -> Result<Self> {
        let mut acc: BTreeMap<Permutation, f64> = BTreeMap::new();
        for (g, w) in self.support() {
            *acc.entry(hom(g)).or_insert(0.0) += w;
        }
        Self::new(target_degree, acc)
    }

    /// The weighted Cayley graph on all `N!` permutations in lexicographic
    /// order, with `rate(x, y) = C(y ∘ x^-1)`.
    pub fn cayley_graph(&self) -> Result<WeightedDigraph<Permutation>> {
        self.cayley_graph_capped(DEFAULT_STATE_CAP)
    }

    pub fn cayley_graph_capped(&self, cap: usize) -> Result<WeightedDigraph<Permutation>> {
        let n = factorial(self.degree)
            .filter(|&n| n <= cap)
            .ok_or(Error::CapExceeded {
                what: "Cayley graph",
                size: factorial(self.degree).unwrap_or(usize::MAX),
                cap,
            })?;
        let states: Vec<Permutation> = Permutation::all(self.degree).collect();
        let mut rates = vec![0.0; n * n];
        for (i, x) in states.iter().enumerate() {
            for (g, w) in self.support() {
                rates[i * n + g.then_after(x).lex_rank()] = w;
            }
        }
        WeightedDigraph::from_dense(states, rates)
    }
}

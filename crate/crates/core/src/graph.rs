//! Weighted complete directed graphs and their Laplacian-type generators.
//!
//! A [`WeightedDigraph`] is a finite state set with a nonnegative rate on every
//! ordered pair of distinct states. Its generator acts on real functions of
//! the states by `(L f)(x) = sum_y C(x, y) (f(y) - f(x))`. For irreducible
//! reversible graphs `-L` is similar to a symmetric matrix, so the spectrum is
//! real and nonnegative with a simple zero eigenvalue; the second smallest
//! eigenvalue is the spectral gap.

use std::collections::{HashMap, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::tol::{approx_eq, REL_TOL};

/// Largest state count accepted by the dense eigensolver unless overridden.
pub const DEFAULT_STATE_CAP: usize = 10_000;

/// Bound on state labels. Any cloneable, hashable, printable value works.
pub trait StateLabel: Clone + Eq + Hash + Debug {}
impl<T: Clone + Eq + Hash + Debug> StateLabel for T {}

#[derive(Debug, Clone)]
pub struct WeightedDigraph<S> {
    states: Vec<S>,
    index: HashMap<S, usize>,
    /// Row-major `n x n` rate matrix with zero diagonal.
    rates: Vec<f64>,
}

fn label<S: Debug>(s: &S) -> String {
    format!("{s:?}")
}

impl<S: StateLabel> PartialEq for WeightedDigraph<S> {
    fn eq(&self, other: &Self) -> bool {
        self.states == other.states && self.rates == other.rates
    }
}

impl<S: StateLabel> WeightedDigraph<S> {
    /// Builds a graph from labels and sparse `(from, to, rate)` entries.
    /// Pairs not mentioned get rate 0.
    pub fn build(labels: Vec<S>, entries: &[(S, S, f64)]) -> Result<Self> {
        let n = labels.len();
        let index = Self::index_labels(&labels)?;
        let mut rates = vec![0.0; n * n];
        let mut seen = vec![false; n * n];
        for (from, to, rate) in entries {
            let i = *index.get(from).ok_or_else(|| Error::UnknownLabel(label(from)))?;
            let j = *index.get(to).ok_or_else(|| Error::UnknownLabel(label(to)))?;
            if i == j {
                return Err(Error::SelfLoop(label(from)));
            }
            if !rate.is_finite() || *rate < 0.0 {
                return Err(Error::InvalidRate { from: label(from), to: label(to), rate: *rate });
            }
            if std::mem::replace(&mut seen[i * n + j], true) {
                return Err(Error::DuplicateEntry(label(from), label(to)));
            }
            rates[i * n + j] = *rate;
        }
        Ok(Self { states: labels, index, rates })
    }

    /// Builds a graph from a dense row-major rate matrix.
    pub fn from_dense(labels: Vec<S>, rates: Vec<f64>) -> Result<Self> {
        let n = labels.len();
        let index = Self::index_labels(&labels)?;
        if rates.len() != n * n {
            return Err(Error::LengthMismatch { expected: n * n, got: rates.len() });
        }
        for i in 0..n {
            for j in 0..n {
                let r = rates[i * n + j];
                if i == j && r != 0.0 {
                    return Err(Error::SelfLoop(label(&labels[i])));
                }
                if !r.is_finite() || r < 0.0 {
                    return Err(Error::InvalidRate {
                        from: label(&labels[i]),
                        to: label(&labels[j]),
                        rate: r,
                    });
                }
            }
        }
        Ok(Self { states: labels, index, rates })
    }

    fn index_labels(labels: &[S]) -> Result<HashMap<S, usize>> {
        if labels.len() < 2 {
            return Err(Error::TooFewStates(labels.len()));
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, s) in labels.iter().enumerate() {
            if index.insert(s.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(label(s)));
            }
        }
        Ok(index)
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[S] {
        &self.states
    }

    pub fn index_of(&self, s: &S) -> Option<usize> {
        self.index.get(s).copied()
    }

    #[inline]
    /// The full `n x n` rate matrix, row-major.
    pub fn row_major(&self) -> &[f64] {
        &self.rates
    }

    pub fn rate(&self, i: usize, j: usize) -> f64 {
        self.rates[i * self.len() + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let n = self.len();
        &self.rates[i * n..(i + 1) * n]
    }

    /// Rate between two labelled states; `None` if either label is unknown.
    pub fn rate_between(&self, from: &S, to: &S) -> Option<f64> {
        Some(self.rate(self.index_of(from)?, self.index_of(to)?))
    }

    /// Total outgoing rate of state `i`.
    pub fn out_rate(&self, i: usize) -> f64 {
        self.row(i).iter().sum()
    }

    /// Replaces the labels, keeping the rates.
    pub fn relabel<T: StateLabel>(&self, f: impl Fn(&S) -> T) -> Result<WeightedDigraph<T>> {
        WeightedDigraph::from_dense(self.states.iter().map(f).collect(), self.rates.clone())
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (i + 1..n).all(|j| approx_eq(self.rate(i, j), self.rate(j, i))))
    }

    /// `(L f)(x) = sum_y C(x, y) (f(y) - f(x))`.
    pub fn apply_generator(&self, f: &[f64]) -> Result<Vec<f64>> {
        self.check_len(f.len())?;
        Ok((0..self.len())
            .map(|x| self.row(x).iter().zip(f).map(|(c, fy)| c * (fy - f[x])).sum())
            .collect())
    }

    fn check_len(&self, got: usize) -> Result<()> {
        if got != self.len() {
            return Err(Error::LengthMismatch { expected: self.len(), got });
        }
        Ok(())
    }

    fn reaches_all(&self, forward: bool) -> bool {
        let n = self.len();
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        let mut count = 1;
        while let Some(x) = queue.pop_front() {
            for y in 0..n {
                let r = if forward { self.rate(x, y) } else { self.rate(y, x) };
                if r > 0.0 && !seen[y] {
                    seen[y] = true;
                    count += 1;
                    queue.push_back(y);
                }
            }
        }
        count == n
    }

    /// Strong connectivity of the positive-rate digraph.
    pub fn is_irreducible(&self) -> bool {
        self.reaches_all(true) && self.reaches_all(false)
    }

    /// The normalized measure with `mu(x) C(x, y) = mu(y) C(y, x)` for all
    /// pairs, or `None` if the graph admits none.
    ///
    /// Log-potentials are propagated along a breadth-first spanning tree of
    /// the positive-rate graph; every remaining pair is then checked, which is
    /// the cycle criterion in disguise.
    pub fn reversible_measure(&self) -> Result<Option<StationaryMeasure>> {
        if !self.is_irreducible() {
            return Err(Error::NotIrreducible);
        }
        let n = self.len();
        let mut log_mu = vec![f64::NAN; n];
        log_mu[0] = 0.0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for y in 0..n {
                let (fwd, back) = (self.rate(x, y), self.rate(y, x));
                if fwd > 0.0 && log_mu[y].is_nan() {
                    if back == 0.0 {
                        return Ok(None);
                    }
                    log_mu[y] = log_mu[x] + fwd.ln() - back.ln();
                    queue.push_back(y);
                }
            }
        }
        let top = log_mu.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mut mu: Vec<f64> = log_mu.iter().map(|l| (l - top).exp()).collect();
        let total: f64 = mu.iter().sum();
        mu.iter_mut().for_each(|m| *m /= total);
        for x in 0..n {
            for y in x + 1..n {
                if !approx_eq(mu[x] * self.rate(x, y), mu[y] * self.rate(y, x)) {
                    return Ok(None);
                }
            }
        }
        Ok(Some(StationaryMeasure(mu)))
    }

    /// Spectrum of `-L` with the default state cap.
    pub fn spectrum(&self) -> Result<SpectralReport> {
        self.spectrum_capped(DEFAULT_STATE_CAP)
    }

    /// Spectrum of `-L`, computed by conjugating with `diag(sqrt(mu))` and
    /// running a dense symmetric eigensolver.
    pub fn spectrum_capped(&self, cap: usize) -> Result<SpectralReport> {
        let n = self.len();
        if n > cap {
            return Err(Error::CapExceeded { what: "state space", size: n, cap });
        }
        let measure = self.reversible_measure()?.ok_or(Error::NotReversible)?;
        let sqrt_mu: Vec<f64> = measure.0.iter().map(|m| m.sqrt()).collect();
        let conjugated = DMatrix::from_fn(n, n, |x, y| {
            if x == y {
                self.out_rate(x)
            } else {
                -self.rate(x, y) * sqrt_mu[x] / sqrt_mu[y]
            }
        });
        // Detailed balance makes this symmetric up to rounding.
        let sym = (&conjugated + conjugated.transpose()) * 0.5;
        let mut spectrum: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
        spectrum.sort_by(f64::total_cmp);

        let scale = (0..n).map(|x| self.out_rate(x)).fold(1.0, f64::max);
        if spectrum[0].abs() > 1e-8 * scale {
            return Err(Error::Numerical(format!(
                "smallest eigenvalue {} is not zero",
                spectrum[0]
            )));
        }
        if spectrum[1] <= 1e-8 * scale {
            return Err(Error::Numerical(format!("gap {} is not positive", spectrum[1])));
        }
        Ok(SpectralReport { gap: spectrum[1], spectrum, measure })
    }

    /// `-<f, L f>_mu / <f, f>_mu` for `f` centered under `mu`.
    pub fn rayleigh_quotient(&self, f: &[f64], mu: &StationaryMeasure) -> Result<f64> {
        self.check_len(f.len())?;
        self.check_len(mu.0.len())?;
        let mean: f64 = f.iter().zip(&mu.0).map(|(v, m)| v * m).sum();
        let scale: f64 = f.iter().zip(&mu.0).map(|(v, m)| v.abs() * m).sum();
        if mean.abs() > REL_TOL * scale.max(1.0) {
            return Err(Error::NotCentered(mean));
        }
        let norm: f64 = f.iter().zip(&mu.0).map(|(v, m)| v * v * m).sum();
        if norm <= 0.0 {
            return Err(Error::ZeroFunction);
        }
        let lf = self.apply_generator(f)?;
        let energy: f64 = f.iter().zip(&lf).zip(&mu.0).map(|((v, l), m)| v * l * m).sum();
        Ok(-energy / norm)
    }
}

/// Strictly positive probability vector aligned with a graph's state order.
#[derive(Debug, Clone, PartialEq)]
pub struct StationaryMeasure(Vec<f64>);

impl StationaryMeasure {
    /// Normalizes `weights`; fails unless every entry is positive and finite.
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() || weights.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(Error::Numerical("measure weights must be positive".into()));
        }
        let total: f64 = weights.iter().sum();
        Ok(Self(weights.into_iter().map(|w| w / total).collect()))
    }

    pub fn uniform(n: usize) -> Self {
        Self(vec![1.0 / n as f64; n])
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }
}

#[derive(Debug, Clone)]
pub struct SpectralReport {
    spectrum: Vec<f64>,
    gap: f64,
    measure: StationaryMeasure,
}

impl SpectralReport {
    /// Eigenvalues of `-L` in ascending order.
    pub fn spectrum(&self) -> &[f64] {
        &self.spectrum
    }

    pub fn gap(&self) -> f64 {
        self.gap
    }

    pub fn measure(&self) -> &StationaryMeasure {
        &self.measure
    }
}

/// Checks the morphism criterion for a state map given by a closure.
pub fn check_morphism<A: StateLabel, B: StateLabel>(
    source: &WeightedDigraph<A>,
    target: &WeightedDigraph<B>,
    phi: impl Fn(&A) -> B,
) -> Result<bool> {
    let map = source
        .states()
        .iter()
        .map(|s| {
            let t = phi(s);
            target.index_of(&t).ok_or_else(|| Error::UnknownLabel(label(&t)))
        })
        .collect::<Result<Vec<_>>>()?;
    check_morphism_indices(source, target, &map)
}

/// Checks `C2(phi(x), y) = sum_{phi(y') = y} C1(x, y')` for every `x` and
/// every `y != phi(x)`, with `phi` given as a state-index map.
pub fn check_morphism_indices<A: StateLabel, B: StateLabel>(
    source: &WeightedDigraph<A>,
    target: &WeightedDigraph<B>,
    map: &[usize],
) -> Result<bool> {
    Ok(morphism_mismatches(source, target, map)? == 0)
}

/// Number of `(x, y)` pairs violating the morphism criterion.
pub fn morphism_mismatches<A: StateLabel, B: StateLabel>(
    source: &WeightedDigraph<A>,
    target: &WeightedDigraph<B>,
    map: &[usize],
) -> Result<usize> {
    source.check_len(map.len())?;
    let m = target.len();
    if let Some(&bad) = map.iter().find(|&&t| t >= m) {
        return Err(Error::UnknownLabel(format!("target index {bad}")));
    }
    let mut mismatches = 0;
    let mut pushed = vec![0.0; m];
    for x in 0..source.len() {
        pushed.iter_mut().for_each(|p| *p = 0.0);
        for (y1, &c) in source.row(x).iter().enumerate() {
            pushed[map[y1]] += c;
        }
        let fx = map[x];
        mismatches += (0..m)
            .filter(|&y| y != fx && !approx_eq(target.rate(fx, y), pushed[y]))
            .count();
    }
    Ok(mismatches)
}

/// Whether `map` hits every one of `n_target` states.
pub fn is_surjective(map: &[usize], n_target: usize) -> bool {
    let mut hit = vec![false; n_target];
    for &t in map {
        if t < n_target {
            hit[t] = true;
        }
    }
    hit.into_iter().all(|h| h)
}

/// Whether the eigenvalues of `inner` embed into those of `outer`.
pub fn spectrum_contained(inner: &SpectralReport, outer: &SpectralReport, tol: f64) -> bool {
    multiset_contained(inner.spectrum(), outer.spectrum(), tol)
}

/// Greedy matching of two ascending lists: each inner value takes the first
/// unused outer value within `tol`.
pub fn multiset_contained(inner: &[f64], outer: &[f64], tol: f64) -> bool {
    let mut j = 0;
    for &a in inner {
        while j < outer.len() && outer[j] < a - tol {
            j += 1;
        }
        if j == outer.len() || outer[j] > a + tol {
            return false;
        }
        j += 1;
    }
    true
}

/// Largest detailed-balance residual `|mu(x) C(x,y) - mu(y) C(y,x)| / max(1, mu(y) C(y,x))`.
pub fn detailed_balance_residual<S: StateLabel>(g: &WeightedDigraph<S>, mu: &StationaryMeasure) -> f64 {
    let n = g.len();
    let mu = mu.values();
    let mut worst: f64 = 0.0;
    for x in 0..n {
        for y in 0..n {
            let lhs = mu[x] * g.rate(x, y);
            let rhs = mu[y] * g.rate(y, x);
            worst = worst.max((lhs - rhs).abs() / rhs.max(1.0));
        }
    }
    worst
}

#[cfg(test)]
#[path = "../tests/common/oracle.rs"]
mod oracle;

#[cfg(test)]
mod tests {
    use super::*;

    fn two_state() -> WeightedDigraph<&'static str> {
        WeightedDigraph::build(vec!["a", "b"], &[("a", "b", 1.0), ("b", "a", 1.0)]).unwrap()
    }

    fn path3() -> WeightedDigraph<&'static str> {
        let e = [("a", "b", 1.0), ("b", "a", 1.0), ("b", "c", 1.0), ("c", "b", 1.0)];
        WeightedDigraph::build(vec!["a", "b", "c"], &e).unwrap()
    }

    fn complete3() -> WeightedDigraph<usize> {
        let e: Vec<_> = (0..3)
            .flat_map(|i| (0..3).filter(move |&j| j != i).map(move |j| (i, j, 1.0)))
            .collect();
        WeightedDigraph::build(vec![0, 1, 2], &e).unwrap()
    }

    #[test]
    fn build_fills_defaults() {
        let g = two_state();
        assert_eq!(g.row(0), &[0.0, 1.0]);
        assert_eq!(g.row(1), &[1.0, 0.0]);

        let empty = WeightedDigraph::build(vec!["a", "b"], &[]).unwrap();
        assert!(empty.row(0).iter().chain(empty.row(1)).all(|&r| r == 0.0));

        let g = WeightedDigraph::build(vec!["a", "b", "c"], &[("a", "b", 2.0), ("b", "a", 2.0)]).unwrap();
        assert_eq!(g.rate_between(&"a", &"c"), Some(0.0));
        assert_eq!(g.rate_between(&"c", &"a"), Some(0.0));
        assert_eq!(g.rate_between(&"a", &"b"), Some(2.0));
    }

    #[test]
    fn build_rejects_bad_input() {
        assert!(matches!(
            WeightedDigraph::build(vec!["a", "a"], &[]),
            Err(Error::DuplicateLabel(_))
        ));
        assert!(matches!(
            WeightedDigraph::build(vec!["a", "b"], &[("a", "b", -1.0)]),
            Err(Error::InvalidRate { .. })
        ));
        assert!(matches!(
            WeightedDigraph::build(vec!["a", "b"], &[("a", "a", 1.0)]),
            Err(Error::SelfLoop(_))
        ));
        assert!(matches!(WeightedDigraph::build(vec!["a"], &[]), Err(Error::TooFewStates(1))));
        assert!(matches!(
            WeightedDigraph::build(vec!["a", "b"], &[("a", "b", 1.0), ("a", "b", 2.0)]),
            Err(Error::DuplicateEntry(..))
        ));
        assert!(matches!(
            WeightedDigraph::build(vec!["a", "b"], &[("a", "z", 1.0)]),
            Err(Error::UnknownLabel(_))
        ));
    }

    #[test]
    fn generator_examples() {
        let g = two_state();
        assert_eq!(g.apply_generator(&[3.0, 3.0]).unwrap(), vec![0.0, 0.0]);
        assert_eq!(g.apply_generator(&[1.0, 0.0]).unwrap(), vec![-1.0, 1.0]);

        let cycle = WeightedDigraph::build(
            vec![0, 1, 2],
            &[(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0)],
        )
        .unwrap();
        assert_eq!(cycle.apply_generator(&[1.0, 0.0, 0.0]).unwrap(), vec![-1.0, 0.0, 1.0]);
        assert!(matches!(
            g.apply_generator(&[1.0]),
            Err(Error::LengthMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn irreducibility_examples() {
        assert!(two_state().is_irreducible());
        assert!(!WeightedDigraph::build(vec!["a", "b"], &[]).unwrap().is_irreducible());
        let partial =
            WeightedDigraph::build(vec!["a", "b", "c"], &[("a", "b", 1.0), ("b", "a", 1.0)]).unwrap();
        assert!(!partial.is_irreducible());
        // one-way edges are not enough
        let oneway = WeightedDigraph::build(vec!["a", "b"], &[("a", "b", 1.0)]).unwrap();
        assert!(!oneway.is_irreducible());
    }

    #[test]
    fn measure_examples() {
        let mu = complete3().reversible_measure().unwrap().unwrap();
        for m in mu.values() {
            assert!((m - 1.0 / 3.0).abs() < 1e-15);
        }

        let g = WeightedDigraph::build(vec!["a", "b"], &[("a", "b", 2.0), ("b", "a", 1.0)]).unwrap();
        let mu = g.reversible_measure().unwrap().unwrap();
        assert!((mu.values()[0] - 1.0 / 3.0).abs() < 1e-15);
        assert!((mu.values()[1] - 2.0 / 3.0).abs() < 1e-15);

        let cycle = WeightedDigraph::build(
            vec![0, 1, 2],
            &[(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0)],
        )
        .unwrap();
        assert_eq!(cycle.reversible_measure().unwrap(), None);

        // irreducible, both directions present, but Kolmogorov fails around the cycle
        let skew = WeightedDigraph::build(
            vec![0, 1, 2],
            &[(0, 1, 2.0), (1, 0, 1.0), (1, 2, 2.0), (2, 1, 1.0), (2, 0, 2.0), (0, 2, 1.0)],
        )
        .unwrap();
        assert_eq!(skew.reversible_measure().unwrap(), None);

        let dead = WeightedDigraph::build(vec!["a", "b"], &[]).unwrap();
        assert_eq!(dead.reversible_measure(), Err(Error::NotIrreducible));
    }

    #[test]
    fn spectrum_examples() {
        let rep = two_state().spectrum().unwrap();
        assert!(rep.spectrum()[0].abs() < 1e-12);
        assert!((rep.gap() - 2.0).abs() < 1e-12);

        // frozen from the Jacobi oracle: {0, 1, 3}
        let rep = path3().spectrum().unwrap();
        let frozen = [0.0, 1.0, 3.0];
        for (a, b) in rep.spectrum().iter().zip(frozen) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
        assert!((complete3().spectrum().unwrap().gap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn frozen_values_agree_with_oracle() {
        let path = oracle::reversible_spectrum(3, &path3().rates);
        for (a, b) in path.iter().zip([0.0, 1.0, 3.0]) {
            assert!((a - b).abs() < 1e-12);
        }
        let k3 = oracle::reversible_spectrum(3, &complete3().rates);
        assert!((k3[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn spectrum_errors() {
        let dead = WeightedDigraph::build(vec!["a", "b"], &[]).unwrap();
        assert_eq!(dead.spectrum().unwrap_err(), Error::NotIrreducible);
        let skew = WeightedDigraph::build(
            vec![0, 1, 2],
            &[(0, 1, 2.0), (1, 0, 1.0), (1, 2, 2.0), (2, 1, 1.0), (2, 0, 2.0), (0, 2, 1.0)],
        )
        .unwrap();
        assert_eq!(skew.spectrum().unwrap_err(), Error::NotReversible);
        assert!(matches!(
            complete3().spectrum_capped(2),
            Err(Error::CapExceeded { size: 3, cap: 2, .. })
        ));
    }

    #[test]
    fn nonsymmetric_reversible_spectrum() {
        // 2-state chain with rates 2 and 1 has spectrum {0, 3}
        let g = WeightedDigraph::build(vec!["a", "b"], &[("a", "b", 2.0), ("b", "a", 1.0)]).unwrap();
        let rep = g.spectrum().unwrap();
        assert!((rep.gap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn rayleigh_examples() {
        let g = two_state();
        let mu = StationaryMeasure::uniform(2);
        assert!((g.rayleigh_quotient(&[1.0, -1.0], &mu).unwrap() - 2.0).abs() < 1e-12);

        let p = path3();
        let mu = StationaryMeasure::uniform(3);
        assert!((p.rayleigh_quotient(&[1.0, 0.0, -1.0], &mu).unwrap() - 1.0).abs() < 1e-12);
        // (1, -2, 1) is the top eigenvector: quotient 3
        assert!((p.rayleigh_quotient(&[1.0, -2.0, 1.0], &mu).unwrap() - 3.0).abs() < 1e-12);

        assert!(matches!(p.rayleigh_quotient(&[1.0, 0.0, 0.0], &mu), Err(Error::NotCentered(_))));
        assert_eq!(p.rayleigh_quotient(&[0.0, 0.0, 0.0], &mu), Err(Error::ZeroFunction));
    }

    #[test]
    fn morphism_examples() {
        let g = path3();
        assert!(check_morphism(&g, &g, |s| *s).unwrap());
        // a -> x, b -> y, c -> x: row sums from b to {a, c} = 2
        let target =
            WeightedDigraph::build(vec!["x", "y"], &[("x", "y", 1.0), ("y", "x", 2.0)]).unwrap();
        let fold = |s: &&str| if *s == "b" { "y" } else { "x" };
        assert!(check_morphism(&g, &target, fold).unwrap());
        let wrong =
            WeightedDigraph::build(vec!["x", "y"], &[("x", "y", 1.0), ("y", "x", 1.0)]).unwrap();
        assert!(!check_morphism(&g, &wrong, fold).unwrap());
        assert!(matches!(
            check_morphism(&g, &target, |_| "zz"),
            Err(Error::UnknownLabel(_))
        ));
    }

    #[test]
    fn containment_examples() {
        let rep = path3().spectrum().unwrap();
        assert!(spectrum_contained(&rep, &rep, 1e-8));
        assert!(!multiset_contained(&[0.0, 1.0], &[0.0, 2.0], 1e-8));
        assert!(multiset_contained(&[0.0, 3.0, 3.0], &[0.0, 1.0, 3.0, 3.0, 4.0], 1e-8));
        assert!(!multiset_contained(&[0.0, 3.0, 3.0], &[0.0, 1.0, 3.0, 4.0], 1e-8));
    }
}

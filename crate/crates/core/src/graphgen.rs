//! Uniform sampling of simple graphs with a prescribed degree sequence.
//!
//! Two samplers are provided. [`sample_configuration_rejection`] pairs
//! half-edges uniformly at random and restarts as soon as the pairing creates
//! a loop or a repeated edge; conditioned on success the result is uniform
//! over simple realizations. [`sample_switch_mcmc`] starts from a greedy
//! realization and runs the lazy switching chain, whose stationary law is
//! uniform because every switch is undone by the reverse switch.
//!
//! Vertex `i` receives the `i`-th smallest degree of the sequence.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::degseq::DegreeSequence;
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::rng::stream_rng;

/// Default cap on failed pairings before giving up.
pub const DEFAULT_MAX_ATTEMPTS: u64 = 1_000_000;
/// Default bound on `sum d^2 / sum d` for the rejection sampler.
pub const DEFAULT_REJECTION_BOUND: f64 = 6.0;
/// Default vertex cap for [`count_disconnecting_switch_pairs`].
pub const DEFAULT_BRUTE_FORCE_CAP: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Configuration model with rejection.
    Config,
    /// Switching chain.
    Mcmc,
    /// Rejection when `max_degree^2 <= degree_sum` and the rejection guard
    /// passes, otherwise the switching chain.
    #[default]
    Auto,
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "config" => Ok(Method::Config),
            "mcmc" => Ok(Method::Mcmc),
            "auto" => Ok(Method::Auto),
            _ => Err(Error::Value(format!("unknown sampler {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplerConfig {
    pub max_attempts: u64,
    pub rejection_bound: f64,
    /// `None` selects [`default_burn_in`].
    pub burn_in: Option<u64>,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        Self {
            max_attempts: DEFAULT_MAX_ATTEMPTS,
            rejection_bound: DEFAULT_REJECTION_BOUND,
            burn_in: None,
        }
    }
}

/// Heuristic burn-in: `50 m ln m` switch proposals for `m` edges.
pub fn default_burn_in(edge_count: u64) -> u64 {
    if edge_count < 2 {
        return 0;
    }
    let m = edge_count as f64;
    (50.0 * m * m.ln()).ceil() as u64
}

/// Samples with the requested method.
pub fn sample<R: Rng>(d: &DegreeSequence, method: Method, cfg: &SamplerConfig, rng: &mut R) -> Result<SimpleGraph> {
    let method = match method {
        Method::Auto => {
            let md = d.max_degree() as u64;
            if md * md <= d.degree_sum() && rejection_ratio(d) <= cfg.rejection_bound {
                Method::Config
            } else {
                Method::Mcmc
            }
        }
        m => m,
    };
    match method {
        Method::Config => configuration_rejection(d, cfg, rng),
        _ => {
            let burn = cfg.burn_in.unwrap_or_else(|| default_burn_in(d.degree_sum() / 2));
            switch_mcmc(d, burn, rng)
        }
    }
}

fn rejection_ratio(d: &DegreeSequence) -> f64 {
    d.sum_of_squares() as f64 / d.degree_sum() as f64
}

/// Uniform simple graph by rejection from the pairing model, seeded.
pub fn sample_configuration_rejection(d: &DegreeSequence, seed: u64) -> Result<SimpleGraph> {
    configuration_rejection(d, &SamplerConfig::default(), &mut stream_rng(seed, 0))
}

/// Rejection sampler over uniform perfect matchings of half-edges.
pub fn configuration_rejection<R: Rng>(
    d: &DegreeSequence,
    cfg: &SamplerConfig,
    rng: &mut R,
) -> Result<SimpleGraph> {
    if !d.is_feasible() {
        return Err(Error::InfeasibleSequence);
    }
    let ratio = rejection_ratio(d);
    if ratio > cfg.rejection_bound {
        return Err(Error::RejectionUnsuitable { ratio, bound: cfg.rejection_bound });
    }
    let degrees = d.to_list();
    let n = degrees.len();
    let mut stubs: Vec<u32> = Vec::with_capacity(d.degree_sum() as usize);
    for (v, &deg) in degrees.iter().enumerate() {
        stubs.extend(std::iter::repeat(v as u32).take(deg as usize));
    }
    let mut adjacency: Vec<Vec<u32>> = degrees.iter().map(|&k| Vec::with_capacity(k as usize)).collect();
    let mut touched: Vec<u32> = Vec::new();
    let len = stubs.len();

    'attempt: for _ in 0..cfg.max_attempts {
        for &v in &touched {
            adjacency[v as usize].clear();
        }
        touched.clear();
        let mut i = 0;
        while i < len {
            let j = rng.gen_range(i + 1..len);
            stubs.swap(i + 1, j);
            let (a, b) = (stubs[i], stubs[i + 1]);
            if a == b {
                continue 'attempt;
            }
            let (short, other) = if adjacency[a as usize].len() <= adjacency[b as usize].len() {
                (a, b)
            } else {
                (b, a)
            };
            if adjacency[short as usize].contains(&other) {
                continue 'attempt;
            }
            if adjacency[a as usize].is_empty() {
                touched.push(a);
            }
            if adjacency[b as usize].is_empty() {
                touched.push(b);
            }
            adjacency[a as usize].push(b);
            adjacency[b as usize].push(a);
            i += 2;
        }
        return Ok(finish(n, adjacency));
    }
    Err(Error::RejectionBudgetExceeded { attempts: cfg.max_attempts })
}

fn finish(n: usize, mut adjacency: Vec<Vec<u32>>) -> SimpleGraph {
    let mut edges = Vec::new();
    for (u, a) in adjacency.iter_mut().enumerate() {
        a.sort_unstable();
        edges.extend(a.iter().filter(|&&v| v as usize > u).map(|&v| (u as u32, v)));
    }
    SimpleGraph::from_sorted_parts(n, adjacency, edges)
}

/// Greedy Havel–Hakimi realization: repeatedly join a vertex of largest
/// residual degree to the vertices of next-largest residual degree.
/// Returns `None` if the sequence is not graphical.
pub fn havel_hakimi(d: &DegreeSequence) -> Option<SimpleGraph> {
    let degrees = d.to_list();
    let n = degrees.len();
    let max = d.max_degree() as usize;
    let mut residual: Vec<usize> = degrees.iter().map(|&k| k as usize).collect();
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); max + 1];
    for v in (0..n).rev() {
        buckets[residual[v]].push(v as u32);
    }
    let mut adjacency: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut top = max;
    let mut picked: Vec<u32> = Vec::new();
    loop {
        while top > 0 && buckets[top].is_empty() {
            top -= 1;
        }
        if top == 0 {
            break;
        }
        let v = buckets[top].pop().expect("nonempty bucket");
        let need = residual[v as usize];
        residual[v as usize] = 0;
        picked.clear();
        let mut level = top;
        while picked.len() < need {
            if level == 0 {
                return None;
            }
            match buckets[level].pop() {
                Some(w) => picked.push(w),
                None => level -= 1,
            }
        }
        for &w in &picked {
            adjacency[v as usize].push(w);
            adjacency[w as usize].push(v);
            residual[w as usize] -= 1;
            if residual[w as usize] > 0 {
                buckets[residual[w as usize]].push(w);
            }
        }
    }
    Some(finish(n, adjacency))
}

/// An ordered pair of oriented edges `(u, v)`, `(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OrientedEdgePair {
    pub e1: (u32, u32),
    pub e2: (u32, u32),
}

impl OrientedEdgePair {
    pub fn new(e1: (u32, u32), e2: (u32, u32)) -> Self {
        Self { e1, e2 }
    }
}

/// Deletes `uv`, `xy` and adds `ux`, `vy`. Returns `None` when the result
/// would not be simple. When `u = y` or `v = x` the switch leaves the graph
/// unchanged.
pub fn switch(g: &SimpleGraph, pair: OrientedEdgePair) -> Result<Option<SimpleGraph>> {
    let ((u, v), (x, y)) = (pair.e1, pair.e2);
    if !g.has_edge(u, v) {
        return Err(Error::EdgeNotPresent(u, v));
    }
    if !g.has_edge(x, y) {
        return Err(Error::EdgeNotPresent(x, y));
    }
    if (u.min(v), u.max(v)) == (x.min(y), x.max(y)) {
        return Err(Error::EdgeNotPresent(x, y));
    }
    if u == x || v == y {
        return Ok(None);
    }
    if u == y || v == x {
        return Ok(Some(g.clone()));
    }
    if g.has_edge(u, x) || g.has_edge(v, y) {
        return Ok(None);
    }
    let key = |a: u32, b: u32| (a.min(b), a.max(b));
    let (r1, r2) = (key(u, v), key(x, y));
    let edges = g
        .edges()
        .iter()
        .copied()
        .filter(|&e| e != r1 && e != r2)
        .chain([key(u, x), key(v, y)]);
    Ok(Some(SimpleGraph::from_edges(g.n(), edges)?))
}

/// Lazy switching chain, seeded.
pub fn sample_switch_mcmc(d: &DegreeSequence, seed: u64, burn_in: u64) -> Result<SimpleGraph> {
    switch_mcmc(d, burn_in, &mut stream_rng(seed, 0))
}

/// Starts from the Havel–Hakimi realization and performs `burn_in` proposals.
/// Each proposal picks an ordered pair of distinct edges and an orientation
/// of each uniformly; invalid proposals leave the state unchanged.
pub fn switch_mcmc<R: Rng>(d: &DegreeSequence, burn_in: u64, rng: &mut R) -> Result<SimpleGraph> {
    let start = havel_hakimi(d).ok_or(Error::InfeasibleSequence)?;
    let n = start.n();
    let mut adjacency: Vec<Vec<u32>> = (0..n as u32).map(|v| start.neighbors(v).to_vec()).collect();
    let mut edges: Vec<(u32, u32)> = start.edges().to_vec();
    let m = edges.len();
    if m < 2 {
        return Ok(start);
    }
    let has = |adj: &Vec<Vec<u32>>, a: u32, b: u32| {
        let (s, o) = if adj[a as usize].len() <= adj[b as usize].len() { (a, b) } else { (b, a) };
        adj[s as usize].contains(&o)
    };
    let replace = |adj: &mut Vec<Vec<u32>>, at: u32, old: u32, new: u32| {
        let slot = adj[at as usize].iter_mut().find(|w| **w == old).expect("edge present");
        *slot = new;
    };
    for _ in 0..burn_in {
        let i = rng.gen_range(0..m);
        let mut j = rng.gen_range(0..m - 1);
        if j >= i {
            j += 1;
        }
        let bits: u8 = rng.gen();
        let (mut u, mut v) = edges[i];
        if bits & 1 == 1 {
            std::mem::swap(&mut u, &mut v);
        }
        let (mut x, mut y) = edges[j];
        if bits & 2 == 2 {
            std::mem::swap(&mut x, &mut y);
        }
        if u == x || v == y || u == y || v == x {
            continue;
        }
        if has(&adjacency, u, x) || has(&adjacency, v, y) {
            continue;
        }
        replace(&mut adjacency, u, v, x);
        replace(&mut adjacency, v, u, y);
        replace(&mut adjacency, x, y, u);
        replace(&mut adjacency, y, x, v);
        edges[i] = (u, x);
        edges[j] = (v, y);
    }
    Ok(finish(n, adjacency))
}

/// Counts switches that leave a simple graph with more components than `g`.
///
/// Each unordered pair of distinct edges `{e, f}` (with `e` before `f` in the
/// sorted edge list) is tried in its four orientation combinations
/// `(uv, xy), (uv, yx), (vu, xy), (vu, yx)`. The ordered pair `(f, e)` performs
/// the same switch and is not counted again.
pub fn count_disconnecting_switch_pairs(g: &SimpleGraph, cap: usize) -> Result<u64> {
    if g.n() > cap {
        return Err(Error::TooLarge { n: g.n(), cap });
    }
    let base = g.component_count();
    let edges = g.edges();
    let mut count = 0;
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, e) in &edges[i + 1..] {
            for e1 in [(a, b), (b, a)] {
                for e2 in [(c, e), (e, c)] {
                    if let Some(h) = switch(g, OrientedEdgePair::new(e1, e2))? {
                        if h.component_count() > base {
                            count += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream_rng;

    fn seq(pairs: &[(u32, u64)]) -> DegreeSequence {
        DegreeSequence::from_counts(pairs.iter().copied()).unwrap()
    }

    fn cycle(n: u32) -> SimpleGraph {
        SimpleGraph::from_edges(n as usize, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn unique_realizations() {
        for seed in 0..5 {
            let g = sample_configuration_rejection(&seq(&[(1, 2)]), seed).unwrap();
            assert_eq!(g.edges(), &[(0, 1)]);
            let g = sample_configuration_rejection(&seq(&[(2, 3)]), seed).unwrap();
            assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
            let g = sample_switch_mcmc(&seq(&[(3, 4)]), seed, 100).unwrap();
            assert_eq!(g.edge_count(), 6);
        }
    }

    #[test]
    fn samplers_respect_degrees() {
        let d = seq(&[(1, 30), (2, 10), (3, 20), (5, 4)]);
        let want = d.to_list();
        let g = sample_configuration_rejection(&d, 11).unwrap();
        assert_eq!(g.degrees(), want);
        let g = sample_switch_mcmc(&d, 11, 5000).unwrap();
        assert_eq!(g.degrees(), want);
        let g = havel_hakimi(&d).unwrap();
        assert_eq!(g.degrees(), want);
    }

    #[test]
    fn infeasible_is_rejected() {
        let d = seq(&[(1, 3)]);
        assert_eq!(sample_configuration_rejection(&d, 0), Err(Error::InfeasibleSequence));
        assert_eq!(sample_switch_mcmc(&d, 0, 10), Err(Error::InfeasibleSequence));
        assert!(havel_hakimi(&seq(&[(4, 1), (1, 2)])).is_none());
    }

    #[test]
    fn rejection_guard() {
        let d = seq(&[(7, 2000)]);
        assert!(matches!(
            sample_configuration_rejection(&d, 0),
            Err(Error::RejectionUnsuitable { .. })
        ));
        let cfg = SamplerConfig { max_attempts: 1, rejection_bound: 100.0, burn_in: None };
        let r = configuration_rejection(&seq(&[(9, 10)]), &cfg, &mut stream_rng(1, 0));
        assert!(matches!(r, Err(Error::RejectionBudgetExceeded { attempts: 1 }) | Ok(_)));
    }

    #[test]
    fn deterministic_given_seed() {
        let d = seq(&[(1, 40), (3, 20)]);
        assert_eq!(
            sample_switch_mcmc(&d, 9, 2000).unwrap(),
            sample_switch_mcmc(&d, 9, 2000).unwrap()
        );
        assert_eq!(
            sample_configuration_rejection(&d, 9).unwrap(),
            sample_configuration_rejection(&d, 9).unwrap()
        );
    }

    #[test]
    fn switch_on_c4() {
        // 1-2-3-4-1 with 0-based labels
        let g = cycle(4);
        let h = switch(&g, OrientedEdgePair::new((0, 1), (2, 3))).unwrap().unwrap();
        assert_eq!(h.edges(), &[(0, 2), (0, 3), (1, 2), (1, 3)]);
        assert_eq!(switch(&g, OrientedEdgePair::new((0, 1), (3, 2))).unwrap(), None);
        assert!(switch(&g, OrientedEdgePair::new((0, 1), (0, 1))).is_err());
        assert!(switch(&g, OrientedEdgePair::new((0, 1), (1, 0))).is_err());
        assert!(switch(&g, OrientedEdgePair::new((0, 2), (1, 2))).is_err());
        // inverse switch restores the graph
        let back = switch(&h, OrientedEdgePair::new((0, 2), (1, 3))).unwrap().unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn disconnecting_pair_counts() {
        assert_eq!(count_disconnecting_switch_pairs(&cycle(3), 14).unwrap(), 0);
        let two = SimpleGraph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(count_disconnecting_switch_pairs(&two, 14).unwrap(), 0);
        let c6 = cycle(6);
        // (1,2) with (5,4) splits into triangles {1,5,6}... in 1-based labels
        let split = switch(&c6, OrientedEdgePair::new((0, 1), (4, 3))).unwrap().unwrap();
        assert_eq!(split.component_count(), 2);
        let c = count_disconnecting_switch_pairs(&c6, 14).unwrap();
        assert!(c > 0 && c <= 8 * 36, "{c}");
        assert!(matches!(
            count_disconnecting_switch_pairs(&cycle(15), 14),
            Err(Error::TooLarge { n: 15, cap: 14 })
        ));
    }
}

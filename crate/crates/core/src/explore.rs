//! The exploration process on a kernel multigraph.
//!
//! Starting from a set `S_0`, each step adds one vertex `w_t` to the explored
//! set. While edges leave `S_{t-1}`, `v_t` is the smallest explored vertex
//! with such an edge and `w_t` is the far end of a uniformly random one of
//! them (the random adjacency order, generated by deferred decisions).
//! Otherwise `w_t` is drawn from the unexplored vertices with probability
//! proportional to degree.
//!
//! `X_t` counts edges between `S_t` and its complement; `X'_t` is the
//! optimistic count `X'_0 + sum (d(w_i) - 2)` with `X'_0 = sum_{u in S_0} d(u)`.
//! On steps with `X_{t-1} > 0`:
//!
//! ```text
//! X_t = X_{t-1} + (d(w_t) - 2) - 2 d'_t(w_t)
//! ```
//!
//! where `d'_t(w)` counts loops at `w`, edges from `w` to `S_{t-1} \ {v_t}`,
//! and any further edges parallel to the exposed `v_t w_t` edge.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::KernelMultigraph;
use crate::rng::stream_rng;

/// Default `omega` for [`priming_set`].
pub const DEFAULT_OMEGA: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StopReason {
    /// Every vertex outside `S_0` was explored.
    Exhausted,
    /// `X_t` reached zero with stop-at-zero enabled.
    XZero,
    /// The step budget ran out.
    Budget,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExploreStep {
    pub t: usize,
    /// `None` on restart steps.
    pub v: Option<u32>,
    pub w: u32,
    pub deg_w: usize,
    pub dprime: usize,
    pub x: i64,
    pub x_prime: i64,
    /// Degree mass outside `S_t`.
    pub remaining_mass: u64,
}

impl ExploreStep {
    /// Raw increment `X'_t - X'_{t-1}`.
    pub fn increment(&self) -> i64 {
        self.deg_w as i64 - 2
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExplorationTrace {
    pub s0: Vec<u32>,
    pub x0: i64,
    pub x_prime0: i64,
    pub steps: Vec<ExploreStep>,
    pub stop_reason: StopReason,
}

impl ExplorationTrace {
    /// CSV with header `t,v,w,deg_w,dprime,X,Xprime`, 1-indexed labels and
    /// an empty `v` on restart steps.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,v,w,deg_w,dprime,X,Xprime\n");
        for s in &self.steps {
            let v = s.v.map(|v| (v + 1).to_string()).unwrap_or_default();
            writeln!(out, "{},{},{},{},{},{},{}", s.t, v, s.w + 1, s.deg_w, s.dprime, s.x, s.x_prime).unwrap();
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ExploreOptions {
    /// Maximum number of steps; `None` means `|V(H)|`.
    pub budget: Option<usize>,
    pub stop_at_zero: bool,
}

/// Highest-degree vertices (ties by label) until their degree sum reaches
/// `5 omega^{1/4} M`, where `M` is the kernel degree sum.
pub fn priming_set(h: &KernelMultigraph, omega: f64) -> Vec<u32> {
    let deg = h.degrees();
    let m = h.degree_sum() as f64;
    let target = 5.0 * omega.powf(0.25) * m * (1.0 - 1e-12);
    let mut order: Vec<u32> = h.vertices().to_vec();
    order.sort_by_key(|&v| (std::cmp::Reverse(deg[v as usize]), v));
    let mut total = 0.0;
    let mut out = Vec::new();
    for v in order {
        if total >= target && !out.is_empty() {
            break;
        }
        total += deg[v as usize] as f64;
        out.push(v);
    }
    if m == 0.0 {
        out.clear();
    }
    out.sort_unstable();
    out
}

/// Fenwick tree over vertex weights for degree-proportional draws.
struct Fenwick {
    tree: Vec<u64>,
}

impl Fenwick {
    fn new(weights: &[u64]) -> Self {
        let mut tree = vec![0; weights.len() + 1];
        for (i, &w) in weights.iter().enumerate() {
            let mut j = i + 1;
            while j < tree.len() {
                tree[j] += w;
                j += j & j.wrapping_neg();
            }
        }
        Self { tree }
    }

    fn sub(&mut self, i: usize, w: u64) {
        let mut j = i + 1;
        while j < self.tree.len() {
            self.tree[j] -= w;
            j += j & j.wrapping_neg();
        }
    }

    fn total(&self) -> u64 {
        let mut j = self.tree.len() - 1;
        let mut s = 0;
        while j > 0 {
            s += self.tree[j];
            j &= j - 1;
        }
        s
    }

    /// Index whose cumulative weight interval contains `target`.
    fn find(&self, mut target: u64) -> usize {
        let mut pos = 0;
        let mut step = (self.tree.len() - 1).next_power_of_two();
        while step > 0 {
            let next = pos + step;
            if next < self.tree.len() && self.tree[next] <= target {
                target -= self.tree[next];
                pos = next;
            }
            step >>= 1;
        }
        pos
    }
}

/// Runs the exploration with a seeded generator.
pub fn explore_seeded(h: &KernelMultigraph, s0: &[u32], seed: u64, opts: ExploreOptions) -> Result<ExplorationTrace> {
    explore(h, s0, opts, &mut stream_rng(seed, 0))
}

/// Runs the exploration from `s0`.
pub fn explore<R: Rng>(h: &KernelMultigraph, s0: &[u32], opts: ExploreOptions, rng: &mut R) -> Result<ExplorationTrace> {
    if s0.is_empty() {
        return Err(Error::EmptyS0);
    }
    let n = h.n();
    let deg = h.degrees();
    let mut is_vertex = vec![false; n];
    for &v in h.vertices() {
        is_vertex[v as usize] = true;
    }
    let mut loops = vec![0usize; n];
    // non-loop incidences: (other endpoint)
    let mut inc: Vec<Vec<u32>> = vec![Vec::new(); n];
    for e in h.edges() {
        if e.is_loop() {
            loops[e.u as usize] += 1;
        } else {
            inc[e.u as usize].push(e.v);
            inc[e.v as usize].push(e.u);
        }
    }

    let mut in_s = vec![false; n];
    let mut s0_sorted = s0.to_vec();
    s0_sorted.sort_unstable();
    s0_sorted.dedup();
    for &v in &s0_sorted {
        if (v as usize) >= n || !is_vertex[v as usize] {
            return Err(Error::Value(format!("vertex {} of S0 is not a kernel vertex", v + 1)));
        }
        in_s[v as usize] = true;
    }

    let weights: Vec<u64> = (0..n).map(|v| if is_vertex[v] && !in_s[v] { deg[v] as u64 } else { 0 }).collect();
    let mut outside = Fenwick::new(&weights);
    let mut out_count = vec![0usize; n];
    let mut frontier: BTreeSet<u32> = BTreeSet::new();
    let mut x: i64 = 0;
    for &v in &s0_sorted {
        out_count[v as usize] = inc[v as usize].iter().filter(|&&z| !in_s[z as usize]).count();
        x += out_count[v as usize] as i64;
        if out_count[v as usize] > 0 {
            frontier.insert(v);
        }
    }
    let x_prime0: i64 = s0_sorted.iter().map(|&v| deg[v as usize] as i64).sum();
    let x0 = x;
    let mut x_prime = x_prime0;

    let unexplored = h.vertices().len() - s0_sorted.len();
    let budget = opts.budget.unwrap_or(h.vertices().len());
    let mut steps = Vec::new();
    let mut t = 0;
    let stop_reason = loop {
        if t >= unexplored {
            break StopReason::Exhausted;
        }
        if t >= budget {
            break StopReason::Budget;
        }
        t += 1;
        let (v_t, w) = match frontier.first().copied() {
            Some(v) => {
                let candidates: Vec<u32> = inc[v as usize].iter().copied().filter(|&z| !in_s[z as usize]).collect();
                (Some(v), candidates[rng.gen_range(0..candidates.len())])
            }
            None => {
                let total = outside.total();
                let pick = outside.find(rng.gen_range(0..total));
                (None, pick as u32)
            }
        };
        let wu = w as usize;
        let to_s = inc[wu].iter().filter(|&&z| in_s[z as usize]).count();
        let dprime = loops[wu] + to_s - usize::from(v_t.is_some());

        // update frontier bookkeeping
        for &z in &inc[wu] {
            if in_s[z as usize] {
                out_count[z as usize] -= 1;
                if out_count[z as usize] == 0 {
                    frontier.remove(&z);
                }
            } else {
                out_count[wu] += 1;
            }
        }
        in_s[wu] = true;
        outside.sub(wu, deg[wu] as u64);
        if out_count[wu] > 0 {
            frontier.insert(w);
        }

        x = match v_t {
            Some(_) => x + (deg[wu] as i64 - 2) - 2 * dprime as i64,
            None => (deg[wu] - 2 * loops[wu]) as i64,
        };
        x_prime += deg[wu] as i64 - 2;
        steps.push(ExploreStep {
            t,
            v: v_t,
            w,
            deg_w: deg[wu],
            dprime,
            x,
            x_prime,
            remaining_mass: outside.total(),
        });
        if opts.stop_at_zero && x == 0 {
            break StopReason::XZero;
        }
    };

    Ok(ExplorationTrace { s0: s0_sorted, x0, x_prime0, steps, stop_reason })
}

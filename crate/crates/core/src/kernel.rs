//! The kernel multigraph of a simple graph.
//!
//! Deleting the cyclic components of `G` (components that are cycles) and
//! suppressing every remaining degree-2 vertex yields a multigraph `H` with
//! no degree-2 vertices, possibly with loops and parallel edges. Each edge of
//! `H` remembers the path of `G` it replaces, so `G` can be rebuilt exactly.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::degseq::DegreeSequence;
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::unionfind::UnionFind;

/// One kernel edge and the `G`-path realizing it.
///
/// `path[0] == u` and `path.last() == v` with `u <= v`. Loops (`u == v`)
/// are stored so that `path[1] < path[len - 2]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KernelEdge {
    pub u: u32,
    pub v: u32,
    pub path: Vec<u32>,
}

impl KernelEdge {
    /// Canonicalizes an arbitrary walk between two kernel vertices.
    pub fn from_walk(mut path: Vec<u32>) -> Self {
        let (a, b) = (path[0], *path.last().expect("nonempty path"));
        let flip = if a == b {
            path.len() > 2 && path[1] > path[path.len() - 2]
        } else {
            a > b
        };
        if flip {
            path.reverse();
        }
        Self { u: path[0], v: *path.last().unwrap(), path }
    }

    /// Number of `G`-edges on the path.
    pub fn length(&self) -> usize {
        self.path.len() - 1
    }

    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    pub fn interior(&self) -> &[u32] {
        &self.path[1..self.path.len() - 1]
    }

    /// The walk in the requested direction.
    pub fn walk(&self, reversed: bool) -> Vec<u32> {
        let mut w = self.path.clone();
        if reversed {
            w.reverse();
        }
        w
    }
}

/// `H(G)` together with the path correspondence and the deleted cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelMultigraph {
    n: usize,
    vertices: Vec<u32>,
    edges: Vec<KernelEdge>,
    deleted_cycles: Vec<Vec<u32>>,
}

impl KernelMultigraph {
    /// Assembles a kernel from parts; edges are canonicalized and sorted.
    /// No validation happens here, see [`subdivide`].
    pub fn from_parts(
        n: usize,
        mut vertices: Vec<u32>,
        edges: Vec<KernelEdge>,
        deleted_cycles: Vec<Vec<u32>>,
    ) -> Self {
        vertices.sort_unstable();
        let mut edges: Vec<KernelEdge> = edges.into_iter().map(|e| KernelEdge::from_walk(e.path)).collect();
        edges.sort();
        Self { n, vertices, edges, deleted_cycles }
    }

    /// Size of the vertex label space of the underlying `G`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn edges(&self) -> &[KernelEdge] {
        &self.edges
    }

    /// Each cycle in cyclic order, starting at its smallest vertex.
    pub fn deleted_cycles(&self) -> &[Vec<u32>] {
        &self.deleted_cycles
    }

    /// Degree of every label; loops count twice. Non-kernel labels get 0.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            deg[e.u as usize] += 1;
            deg[e.v as usize] += 1;
        }
        deg
    }

    /// Sum of kernel degrees, `2|E(H)|`.
    pub fn degree_sum(&self) -> u64 {
        2 * self.edges.len() as u64
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        let deg = self.degrees();
        DegreeSequence::from_counts(self.vertices.iter().map(|&v| (deg[v as usize] as u32, 1)))
            .expect("kernel vertices have positive degree")
    }

    /// Loops at `v`.
    pub fn loops_at(&self, v: u32) -> usize {
        self.edges.iter().filter(|e| e.u == v && e.v == v).count()
    }

    /// Endpoint pairs `(min, max)` of all edges, sorted.
    pub fn endpoint_multiset(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = self.edges.iter().map(|e| (e.u, e.v)).collect();
        out.sort_unstable();
        out
    }

    /// JSON with 1-indexed vertices, `(u, v, path_length, loop)` edge records
    /// and the sizes of the deleted cycles.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct EdgeRec {
            u: u32,
            v: u32,
            path_length: usize,
            #[serde(rename = "loop")]
            is_loop: bool,
        }
        #[derive(Serialize)]
        struct Doc {
            n: usize,
            vertices: Vec<u32>,
            edges: Vec<EdgeRec>,
            deleted_cycles: Vec<usize>,
        }
        let doc = Doc {
            n: self.n,
            vertices: self.vertices.iter().map(|v| v + 1).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeRec { u: e.u + 1, v: e.v + 1, path_length: e.length(), is_loop: e.is_loop() })
                .collect(),
            deleted_cycles: self.deleted_cycles.iter().map(Vec::len).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("kernel serializes")
    }
}

/// Deletes cyclic components and suppresses degree-2 vertices.
pub fn build_kernel(g: &SimpleGraph) -> Result<KernelMultigraph> {
    let n = g.n();
    if let Some(v) = (0..n as u32).find(|&v| g.degree(v) == 0) {
        return Err(Error::IsolatedVertex(v));
    }
    let labels = g.component_labels();
    let mut all_two = vec![true; n];
    for v in 0..n {
        if g.degree(v as u32) != 2 {
            all_two[labels[v] as usize] = false;
        }
    }

    let mut deleted_cycles = Vec::new();
    for v in 0..n as u32 {
        if labels[v as usize] == v && all_two[v as usize] {
            deleted_cycles.push(trace_cycle(g, v));
        }
    }

    let vertices: Vec<u32> = (0..n as u32).filter(|&v| g.degree(v) != 2).collect();
    let mut used: HashSet<(u32, u32)> = HashSet::new();
    let key = |a: u32, b: u32| (a.min(b), a.max(b));
    let mut edges = Vec::new();
    for &v in &vertices {
        for &w in g.neighbors(v) {
            if !used.insert(key(v, w)) {
                continue;
            }
            let mut path = vec![v, w];
            let (mut prev, mut cur) = (v, w);
            while g.degree(cur) == 2 {
                let nb = g.neighbors(cur);
                let next = if nb[0] == prev { nb[1] } else { nb[0] };
                used.insert(key(cur, next));
                path.push(next);
                prev = cur;
                cur = next;
            }
            edges.push(KernelEdge::from_walk(path));
        }
    }
    Ok(KernelMultigraph::from_parts(n, vertices, edges, deleted_cycles))
}

fn trace_cycle(g: &SimpleGraph, start: u32) -> Vec<u32> {
    let mut cycle = vec![start];
    let (mut prev, mut cur) = (start, g.neighbors(start)[0]);
    while cur != start {
        cycle.push(cur);
        let nb = g.neighbors(cur);
        let next = if nb[0] == prev { nb[1] } else { nb[0] };
        prev = cur;
        cur = next;
    }
    cycle
}

/// Re-inserts every path and deleted cycle; the inverse of [`build_kernel`].
pub fn subdivide(h: &KernelMultigraph) -> Result<SimpleGraph> {
    let bad = |m: String| Err(Error::InconsistentPaths(m));
    let n = h.n;
    let mut seen = vec![false; n];
    for &v in &h.vertices {
        if v as usize >= n || std::mem::replace(&mut seen[v as usize], true) {
            return bad(format!("kernel vertex {v} repeated or out of range"));
        }
    }
    let is_kernel = seen.clone();
    let mut short_parallel: BTreeMap<(u32, u32), usize> = BTreeMap::new();
    let mut edges = Vec::new();
    for e in &h.edges {
        if e.path.len() < 2 || e.path[0] != e.u || *e.path.last().unwrap() != e.v {
            return bad(format!("path {:?} does not join {}-{}", e.path, e.u, e.v));
        }
        if !is_kernel[e.u as usize] || !is_kernel[e.v as usize] {
            return bad(format!("endpoint of {}-{} is not a kernel vertex", e.u, e.v));
        }
        if e.is_loop() && e.length() < 3 {
            return bad(format!("loop at {} is subdivided fewer than twice", e.u));
        }
        if e.length() == 1 {
            let c = short_parallel.entry((e.u, e.v)).or_insert(0);
            *c += 1;
            if *c > 1 {
                return bad(format!("two unsubdivided parallel edges {}-{}", e.u, e.v));
            }
        }
        for &w in e.interior() {
            if w as usize >= n || std::mem::replace(&mut seen[w as usize], true) {
                return bad(format!("interior vertex {w} reused or out of range"));
            }
        }
        edges.extend(e.path.windows(2).map(|p| (p[0], p[1])));
    }
    for c in &h.deleted_cycles {
        if c.len() < 3 {
            return bad(format!("deleted cycle {c:?} shorter than 3"));
        }
        for &w in c {
            if w as usize >= n || std::mem::replace(&mut seen[w as usize], true) {
                return bad(format!("cycle vertex {w} reused or out of range"));
            }
        }
        edges.extend((0..c.len()).map(|i| (c[i], c[(i + 1) % c.len()])));
    }
    let deg = h.degrees();
    if let Some(&v) = h.vertices.iter().find(|&&v| deg[v as usize] == 2) {
        return bad(format!("kernel vertex {v} has degree 2"));
    }
    SimpleGraph::from_edges(n, edges).map_err(|e| Error::InconsistentPaths(e.to_string()))
}

/// Order, size, excess and near-excess of one component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ComponentInfo {
    /// Smallest vertex of the component.
    pub root: u32,
    pub order: usize,
    pub size: usize,
    /// `size - order`
    pub excess: i64,
    /// `excess` plus the number of vertices of the component in `L`.
    pub near_excess: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentStats {
    /// Sorted by root.
    pub components: Vec<ComponentInfo>,
    pub largest_order: usize,
    pub largest_size: usize,
    pub count: usize,
    /// Vertices of degree strictly above this value form `L`.
    pub l_threshold: f64,
}

impl ComponentStats {
    pub fn total_order(&self) -> usize {
        self.components.iter().map(|c| c.order).sum()
    }

    pub fn total_size(&self) -> usize {
        self.components.iter().map(|c| c.size).sum()
    }
}

/// `sqrt(M) / ln M`; infinite when `M < 2`.
pub fn high_degree_threshold(m: u64) -> f64 {
    if m < 2 {
        return f64::INFINITY;
    }
    let m = m as f64;
    m.sqrt() / m.ln()
}

/// Component statistics of a simple graph. `M` is the degree sum over
/// vertices whose degree is not 2.
pub fn component_stats(g: &SimpleGraph) -> ComponentStats {
    let deg: Vec<usize> = (0..g.n() as u32).map(|v| g.degree(v)).collect();
    let m: u64 = deg.iter().filter(|&&d| d != 2).map(|&d| d as u64).sum();
    stats(g.n(), (0..g.n() as u32).collect(), g.edges().iter().copied(), &deg, m)
}

/// Component statistics of a kernel; loops add one to size.
pub fn kernel_component_stats(h: &KernelMultigraph) -> ComponentStats {
    let deg = h.degrees();
    stats(h.n, h.vertices.clone(), h.edges.iter().map(|e| (e.u, e.v)), &deg, h.degree_sum())
}

fn stats(
    n: usize,
    vertices: Vec<u32>,
    edges: impl Iterator<Item = (u32, u32)> + Clone,
    deg: &[usize],
    m: u64,
) -> ComponentStats {
    let threshold = high_degree_threshold(m);
    let mut uf = UnionFind::new(n);
    for (u, v) in edges.clone() {
        uf.union(u as usize, v as usize);
    }
    let mut by_root: BTreeMap<usize, ComponentInfo> = BTreeMap::new();
    for &v in &vertices {
        let r = uf.find(v as usize);
        let c = by_root.entry(r).or_insert(ComponentInfo { root: v, order: 0, size: 0, excess: 0, near_excess: 0 });
        c.root = c.root.min(v);
        c.order += 1;
        if deg[v as usize] as f64 > threshold {
            c.near_excess += 1;
        }
    }
    for (u, _) in edges {
        let r = uf.find(u as usize);
        by_root.get_mut(&r).expect("edge endpoint is a vertex").size += 1;
    }
    let mut components: Vec<ComponentInfo> = by_root
        .into_values()
        .map(|mut c| {
            c.excess = c.size as i64 - c.order as i64;
            c.near_excess += c.excess;
            c
        })
        .collect();
    components.sort_by_key(|c| c.root);
    ComponentStats {
        largest_order: components.iter().map(|c| c.order).max().unwrap_or(0),
        largest_size: components.iter().map(|c| c.size).max().unwrap_or(0),
        count: components.len(),
        components,
        l_threshold: threshold,
    }
}

/// An oriented kernel edge: index into [`KernelMultigraph::edges`] and
/// whether its stored path is traversed backwards.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrientedKernelEdge {
    pub index: usize,
    pub reversed: bool,
}

/// Endpoint multiset of the plain multigraph switch of `h` on `(uv, xy)`.
pub fn multigraph_switch(h: &KernelMultigraph, e1: OrientedKernelEdge, e2: OrientedKernelEdge) -> Result<Vec<(u32, u32)>> {
    let ends = |e: OrientedKernelEdge| -> Result<(u32, u32)> {
        let k = h.edges.get(e.index).ok_or(Error::EdgeNotPresent(e.index as u32, e.index as u32))?;
        Ok(if e.reversed { (k.v, k.u) } else { (k.u, k.v) })
    };
    let ((u, v), (x, y)) = (ends(e1)?, ends(e2)?);
    let mut out: Vec<(u32, u32)> = h
        .edges
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != e1.index && *i != e2.index)
        .map(|(_, e)| (e.u, e.v))
        .chain([(u.min(x), u.max(x)), (v.min(y), v.max(y))])
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Switches the `G`-walks of two distinct oriented kernel edges `e1 = uv`
/// and `e2 = xy`.
///
/// With `u = w_0 .. w_r = v` and `x = z_0 .. z_s = y`, the edges `w_{r-1} v`
/// and `x z_1` are replaced by `w_{r-1} x` and `v z_1`. Returns `None` when
/// one of the blocking conditions holds:
///
/// 1. `r = 1` and `G` has an edge `ux` other than `e1`, `e2`;
/// 2. `s = 1` and `G` has an edge `vy` other than `e1`, `e2`;
/// 3. `u = x` and `r <= 2`;
/// 4. `v = y` and `s <= 2`.
///
/// Otherwise the kernel of the new graph is the multigraph switch of `h`.
pub fn extended_switch(
    g: &SimpleGraph,
    h: &KernelMultigraph,
    e1: OrientedKernelEdge,
    e2: OrientedKernelEdge,
) -> Result<Option<(SimpleGraph, KernelMultigraph)>> {
    let get = |e: OrientedKernelEdge| {
        h.edges
            .get(e.index)
            .ok_or(Error::EdgeNotPresent(e.index as u32, e.index as u32))
    };
    let (k1, k2) = (get(e1)?, get(e2)?);
    if e1.index == e2.index {
        return Err(Error::EdgeNotPresent(k1.u, k1.v));
    }
    let w = k1.walk(e1.reversed);
    let z = k2.walk(e2.reversed);
    for walk in [&w, &z] {
        if let Some(p) = walk.windows(2).find(|p| !g.has_edge(p[0], p[1])) {
            return Err(Error::EdgeNotPresent(p[0], p[1]));
        }
    }
    let (r, s) = (w.len() - 1, z.len() - 1);
    let (u, v, x, y) = (w[0], w[r], z[0], z[s]);

    let blocked_i = r == 1 && g.has_edge(u, x) && x != v && !(s == 1 && u == y);
    let blocked_ii = s == 1 && g.has_edge(v, y) && v != x && !(r == 1 && y == u);
    let blocked_iii = u == x && r <= 2;
    let blocked_iv = v == y && s <= 2;
    if blocked_i || blocked_ii || blocked_iii || blocked_iv {
        return Ok(None);
    }

    let key = |a: u32, b: u32| (a.min(b), a.max(b));
    let (wl, z1) = (w[r - 1], z[1]);
    let (d1, d2) = (key(wl, v), key(x, z1));
    let new_g = SimpleGraph::from_edges(
        g.n(),
        g.edges()
            .iter()
            .copied()
            .filter(|&e| e != d1 && e != d2)
            .chain([key(wl, x), key(v, z1)]),
    )
    .map_err(|e| Error::InconsistentPaths(format!("switch produced a non-simple graph: {e}")))?;

    let mut p1 = w[..r].to_vec();
    p1.push(x);
    let mut p2 = vec![v];
    p2.extend_from_slice(&z[1..]);
    let edges = h
        .edges
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != e1.index && *i != e2.index)
        .map(|(_, e)| e.clone())
        .chain([KernelEdge::from_walk(p1), KernelEdge::from_walk(p2)])
        .collect();
    let new_h = KernelMultigraph::from_parts(h.n, h.vertices.clone(), edges, h.deleted_cycles.clone());
    Ok(Some((new_g, new_h)))
}

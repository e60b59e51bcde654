//! Labeled simple graphs and the edge-list file format.

use std::fmt::Write as _;

use crate::degseq::DegreeSequence;
use crate::error::{Error, Result};
use crate::unionfind::UnionFind;

/// A simple graph on vertices `0..n`.
///
/// Adjacency lists are sorted and `edges` holds each edge once as `(u, v)`
/// with `u < v`, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    adjacency: Vec<Vec<u32>>,
    edges: Vec<(u32, u32)>,
}

impl SimpleGraph {
    /// Builds a graph, rejecting loops, repeated pairs and out-of-range labels.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut list: Vec<(u32, u32)> = Vec::new();
        for (a, b) in edges {
            if a as usize >= n || b as usize >= n {
                return Err(Error::Value(format!("edge {a}-{b} out of range for n={n}")));
            }
            if a == b {
                return Err(Error::Value(format!("loop at {a}")));
            }
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Value(format!("repeated edge {}-{}", w[0].0, w[0].1)));
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &list {
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        for a in &mut adjacency {
            a.sort_unstable();
        }
        Ok(Self { n, adjacency, edges: list })
    }

    pub fn empty(n: usize) -> Self {
        Self { n, adjacency: vec![Vec::new(); n], edges: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adjacency[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adjacency[v as usize].len()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.adjacency.iter().map(|a| a.len() as u32).collect()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adjacency
            .get(u as usize)
            .is_some_and(|a| a.binary_search(&v).is_ok())
    }

    /// Degree multiset; fails if some vertex is isolated.
    pub fn degree_sequence(&self) -> Result<DegreeSequence> {
        DegreeSequence::from_degrees(&self.degrees())
    }

    /// Component label per vertex (the smallest vertex of its component).
    pub fn component_labels(&self) -> Vec<u32> {
        let mut uf = UnionFind::new(self.n);
        for &(u, v) in &self.edges {
            uf.union(u as usize, v as usize);
        }
        let mut smallest = vec![u32::MAX; self.n];
        (0..self.n)
            .map(|v| {
                let r = uf.find(v);
                if smallest[r] == u32::MAX {
                    smallest[r] = v as u32;
                }
                smallest[r]
            })
            .collect()
    }

    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.n);
        for &(u, v) in &self.edges {
            uf.union(u as usize, v as usize);
        }
        uf.count()
    }

    /// Order of the largest connected component.
    pub fn largest_component_order(&self) -> usize {
        let mut uf = UnionFind::new(self.n);
        for &(u, v) in &self.edges {
            uf.union(u as usize, v as usize);
        }
        (0..self.n).map(|v| uf.size(v)).max().unwrap_or(0)
    }

    /// Writes the edge-list format: `n <N>` then one `u v` pair per line,
    /// 1-indexed, `u < v`, sorted.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(8 * self.edges.len() + 16);
        writeln!(out, "n {}", self.n).unwrap();
        for &(u, v) in &self.edges {
            writeln!(out, "{} {}", u + 1, v + 1).unwrap();
        }
        out
    }

    /// Parses the edge-list format written by [`SimpleGraph::to_edge_list`].
    /// Pairs need not be sorted on input.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing `n <N>` header".into(),
        })?;
        let n = header
            .strip_prefix("n ")
            .and_then(|s| s.trim().parse::<usize>().ok())
            .ok_or(Error::Parse { line: hline, message: format!("bad header {header:?}") })?;
        let mut edges = Vec::new();
        for (line, l) in lines {
            let mut it = l.split_whitespace().map(|s| s.parse::<u32>());
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(u)), Some(Ok(v)), None) if u >= 1 && v >= 1 => edges.push((u - 1, v - 1)),
                _ => {
                    return Err(Error::Parse {
                        line,
                        message: format!("expected `u v` with 1-indexed labels, found {l:?}"),
                    })
                }
            }
        }
        Self::from_edges(n, edges)
    }

    pub(crate) fn from_sorted_parts(n: usize, adjacency: Vec<Vec<u32>>, edges: Vec<(u32, u32)>) -> Self {
        Self { n, adjacency, edges }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_and_duplicates() {
        assert!(SimpleGraph::from_edges(3, [(0, 0)]).is_err());
        assert!(SimpleGraph::from_edges(3, [(0, 1), (1, 0)]).is_err());
        assert!(SimpleGraph::from_edges(3, [(0, 3)]).is_err());
    }

    #[test]
    fn edge_list_format() {
        let g = SimpleGraph::from_edges(4, [(2, 1), (0, 3), (1, 0)]).unwrap();
        let text = g.to_edge_list();
        assert_eq!(text, "n 4\n1 2\n1 4\n2 3\n");
        assert_eq!(SimpleGraph::parse_edge_list(&text).unwrap(), g);
        assert!(matches!(
            SimpleGraph::parse_edge_list("n 3\n1 2\n0 1\n"),
            Err(Error::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn components() {
        let g = SimpleGraph::from_edges(5, [(0, 1), (3, 4)]).unwrap();
        assert_eq!(g.component_count(), 3);
        assert_eq!(g.largest_component_order(), 2);
        assert_eq!(g.component_labels(), vec![0, 0, 2, 3, 3]);
    }
}

//! Decorated plumbing trees.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lens::cf_expand;
use crate::matrix::{leading_minors, IntMatrix};

/// A connected, negative-definite plumbing tree with genus-zero vertices.
///
/// Vertices keep their declaration order; every matrix and vector in the
/// crate is indexed by it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlumbingGraph {
    ids: Vec<String>,
    euler: Vec<i64>,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl PlumbingGraph {
    pub fn new(vertices: Vec<(String, i64)>, edges: Vec<(String, String)>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut ids: Vec<String> = Vec::with_capacity(vertices.len());
        let mut euler = Vec::with_capacity(vertices.len());
        for (id, e) in vertices {
            if ids.contains(&id) {
                return Err(Error::DuplicateVertex(id));
            }
            ids.push(id);
            euler.push(e);
        }
        let n = ids.len();
        let find = |id: &str| ids.iter().position(|x| x == id);
        let mut idx_edges = Vec::with_capacity(edges.len());
        for (a, b) in &edges {
            let i = find(a).ok_or_else(|| Error::UnknownVertex(a.clone()))?;
            let j = find(b).ok_or_else(|| Error::UnknownVertex(b.clone()))?;
            if i == j {
                return Err(Error::SelfLoop(a.clone()));
            }
            idx_edges.push((i, j));
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn root(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut adj = vec![Vec::new(); n];
        for &(i, j) in &idx_edges {
            let (ri, rj) = (root(&mut parent, i), root(&mut parent, j));
            if ri == rj {
                return Err(Error::Cyclic(ids[i].clone(), ids[j].clone()));
            }
            parent[ri] = rj;
            adj[i].push(j);
            adj[j].push(i);
        }
        if idx_edges.len() + 1 != n {
            return Err(Error::Disconnected);
        }
        let g = PlumbingGraph {
            ids,
            euler,
            edges: idx_edges,
            adj,
        };
        g.check_definite()?;
        Ok(g)
    }

    /// Convenience constructor from `&str` ids.
    pub fn from_parts(vertices: &[(&str, i64)], edges: &[(&str, &str)]) -> Result<Self> {
        PlumbingGraph::new(
            vertices.iter().map(|(a, e)| (a.to_string(), *e)).collect(),
            edges.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        )
    }

    fn check_definite(&self) -> Result<()> {
        let neg: IntMatrix = self
            .intersection_matrix()
            .into_iter()
            .map(|r| r.into_iter().map(|x| -x).collect())
            .collect();
        for (k, &m) in leading_minors(&neg).iter().enumerate() {
            if m <= 0 {
                return Err(Error::NotNegativeDefinite { size: k + 1, det: m });
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|x| x == id)
    }

    pub fn euler(&self, v: usize) -> i64 {
        self.euler[v]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Vertices of valency at least three.
    pub fn nodes(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.degree(v) >= 3).collect()
    }

    /// Vertices of valency at most one.
    pub fn ends(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.degree(v) <= 1).collect()
    }

    /// The denominator factors `(1 - t^{E*_v})`: each vertex of degree `δ < 2`
    /// repeated `2 - δ` times, so an isolated vertex counts twice.
    pub fn end_factors(&self) -> Vec<usize> {
        (0..self.len()).flat_map(|v| core::iter::repeat_n(v, 2usize.saturating_sub(self.degree(v)))).collect()
    }

    pub fn intersection_matrix(&self) -> IntMatrix {
        let n = self.len();
        let mut m = vec![vec![0i128; n]; n];
        for v in 0..n {
            m[v][v] = self.euler[v] as i128;
        }
        for &(i, j) in &self.edges {
            m[i][j] = 1;
            m[j][i] = 1;
        }
        m
    }

    /// Walks the string starting at `start`, coming from `from`, until it
    /// reaches a vertex of valency other than two (which is included) or runs
    /// out. Returns the visited vertices in order.
    pub fn walk(&self, from: usize, start: usize) -> Vec<usize> {
        let mut out = vec![start];
        let (mut prev, mut cur) = (from, start);
        while self.degree(cur) == 2 {
            let next = if self.adj[cur][0] == prev { self.adj[cur][1] } else { self.adj[cur][0] };
            out.push(next);
            prev = cur;
            cur = next;
        }
        out
    }
}

/// Star-shaped graph with central decoration `b` and one leg per Seifert
/// pair `(α, ω)`, the leg being the string `-b_1, ..., -b_ν` read off
/// `α/ω = [b_1, ..., b_ν]` with `b_1` next to the centre.
pub fn seifert_to_graph(b: i64, legs: &[(i128, i128)]) -> Result<PlumbingGraph> {
    let mut vertices = vec![("v0".to_string(), b)];
    let mut edges = Vec::new();
    add_legs(&mut vertices, &mut edges, "v0", "v", legs)?;
    PlumbingGraph::new(vertices, edges)
}

/// Two stars `b_0; legs` and `b̃_0; legs_t` whose centres are joined by a
/// chain with decorations `chain` (empty for adjacent nodes).
pub fn two_node_to_graph(
    b0: i64,
    legs: &[(i128, i128)],
    chain: &[i64],
    b0_t: i64,
    legs_t: &[(i128, i128)],
) -> Result<PlumbingGraph> {
    let mut vertices = vec![("n".to_string(), b0)];
    let mut edges = Vec::new();
    add_legs(&mut vertices, &mut edges, "n", "a", legs)?;
    let mut prev = "n".to_string();
    for (j, &k) in chain.iter().enumerate() {
        let id = format!("m{}", j + 1);
        vertices.push((id.clone(), k));
        edges.push((prev, id.clone()));
        prev = id;
    }
    vertices.push(("nt".to_string(), b0_t));
    edges.push((prev, "nt".to_string()));
    add_legs(&mut vertices, &mut edges, "nt", "b", legs_t)?;
    PlumbingGraph::new(vertices, edges)
}

fn add_legs(
    vertices: &mut Vec<(String, i64)>,
    edges: &mut Vec<(String, String)>,
    centre: &str,
    prefix: &str,
    legs: &[(i128, i128)],
) -> Result<()> {
    for (i, &(alpha, omega)) in legs.iter().enumerate() {
        if !(0 < omega && omega < alpha) || crate::rational::gcd(alpha, omega) != 1 {
            return Err(Error::InvalidSeifertPair { alpha, omega });
        }
        let cf = cf_expand(alpha, omega)?;
        let mut prev = centre.to_string();
        for (j, k) in cf.iter().enumerate() {
            let id = format!("{prefix}{}_{}", i + 1, j + 1);
            vertices.push((id.clone(), -(*k as i64)));
            edges.push((prev, id.clone()));
            prev = id;
        }
    }
    Ok(())
}

//! Immutable weighted directed graph with forward and reverse adjacency.
//!
//! Vertices are dense ids `0..n`; edges keep their input order as ids so that
//! parallel edges stay distinguishable. Self-loops are allowed and count twice
//! towards the degree of their vertex.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default upper bound on edge weights.
pub const DEFAULT_MAX_WEIGHT: u64 = 1 << 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Distances measured from the center.
    Out,
    /// Distances measured to the center.
    In,
}

impl Direction {
    pub fn reverse(self) -> Self {
        match self {
            Direction::Out => Direction::In,
            Direction::In => Direction::Out,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub tail: u32,
    pub head: u32,
    pub weight: u64,
}

#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    out_offsets: Vec<u32>,
    out_edges: Vec<u32>,
    in_offsets: Vec<u32>,
    in_edges: Vec<u32>,
    degree: Vec<u32>,
    max_weight: u64,
}

impl Graph {
    /// Builds a graph from `(tail, head, weight)` triples; edge ids follow input order.
    pub fn new(n: usize, edges: &[(usize, usize, i64)]) -> Result<Self> {
        Self::with_max_weight(n, edges, DEFAULT_MAX_WEIGHT)
    }

    pub fn with_max_weight(n: usize, edges: &[(usize, usize, i64)], max_weight: u64) -> Result<Self> {
        if n > u32::MAX as usize || edges.len() > u32::MAX as usize {
            return Err(Error::Config(format!("graph too large: n={n}, m={}", edges.len())));
        }
        let mut list = Vec::with_capacity(edges.len());
        for (index, &(tail, head, weight)) in edges.iter().enumerate() {
            for v in [tail, head] {
                if v >= n {
                    return Err(Error::EndpointOutOfRange { index, vertex: v as i64, n });
                }
            }
            if weight < 0 {
                return Err(Error::NegativeWeight { index, weight });
            }
            if weight as u64 > max_weight {
                return Err(Error::WeightTooLarge { index, weight, max: max_weight });
            }
            list.push(Edge { tail: tail as u32, head: head as u32, weight: weight as u64 });
        }
        Ok(Self::from_edge_vec(n, list, max_weight))
    }

    /// Assembles adjacency for already validated edges.
    pub(crate) fn from_edge_vec(n: usize, edges: Vec<Edge>, max_weight: u64) -> Self {
        let (out_offsets, out_edges) = bucket(n, &edges, |e| e.tail);
        let (in_offsets, in_edges) = bucket(n, &edges, |e| e.head);
        let mut degree = vec![0u32; n];
        for e in &edges {
            degree[e.tail as usize] += 1;
            degree[e.head as usize] += 1;
        }
        Graph { n, edges, out_offsets, out_edges, in_offsets, in_edges, degree, max_weight }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn max_weight(&self) -> u64 {
        self.max_weight
    }

    pub fn edge(&self, id: usize) -> Edge {
        self.edges[id]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degree[v] as usize
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.degree.iter().map(|&d| d as usize)
    }

    /// Ids of edges leaving `v`.
    pub fn out_edge_ids(&self, v: usize) -> &[u32] {
        &self.out_edges[self.out_offsets[v] as usize..self.out_offsets[v + 1] as usize]
    }

    /// Ids of edges entering `v`.
    pub fn in_edge_ids(&self, v: usize) -> &[u32] {
        &self.in_edges[self.in_offsets[v] as usize..self.in_offsets[v + 1] as usize]
    }

    /// Neighbors of `v` in the given direction as `(neighbor, weight)`.
    /// `Out` follows edges forward, `In` follows them backwards.
    pub fn neighbors(&self, v: usize, dir: Direction) -> impl Iterator<Item = (usize, u64)> + '_ {
        let (ids, forward) = match dir {
            Direction::Out => (self.out_edge_ids(v), true),
            Direction::In => (self.in_edge_ids(v), false),
        };
        ids.iter().map(move |&id| {
            let e = self.edges[id as usize];
            let other = if forward { e.head } else { e.tail };
            (other as usize, e.weight)
        })
    }

    pub fn volume(&self, s: &VertexSet) -> usize {
        s.iter().map(|v| self.degree(v)).sum()
    }

    /// Number of edges with both endpoints in `s`.
    pub fn induced_edge_count(&self, s: &VertexSet) -> usize {
        s.iter()
            .map(|v| {
                self.out_edge_ids(v).iter().filter(|&&id| s.contains(self.edges[id as usize].head as usize)).count()
            })
            .sum()
    }

    /// Returns `G[s]` together with the translation back to this graph's ids.
    pub fn induced_subgraph(&self, s: &VertexSet) -> (Graph, IdMap) {
        let mut local = vec![u32::MAX; self.n];
        let mut vertices = Vec::with_capacity(s.len());
        for v in s.iter() {
            local[v] = vertices.len() as u32;
            vertices.push(v);
        }
        let mut edges = Vec::new();
        let mut edge_ids = Vec::new();
        // Scan in edge-id order so child ids preserve the parent's relative order.
        for (id, e) in self.edges.iter().enumerate() {
            let (t, h) = (local[e.tail as usize], local[e.head as usize]);
            if t != u32::MAX && h != u32::MAX {
                edges.push(Edge { tail: t, head: h, weight: e.weight });
                edge_ids.push(id);
            }
        }
        let sub = Graph::from_edge_vec(vertices.len(), edges, self.max_weight);
        (sub, IdMap { vertices, edges: edge_ids })
    }

    /// Induced subgraphs of pairwise disjoint vertex sets, built in one pass
    /// over the edges. Equivalent to calling `induced_subgraph` on each part.
    pub fn split_induced(&self, parts: &[Vec<usize>]) -> Vec<(Graph, IdMap)> {
        let mut owner = vec![u32::MAX; self.n];
        let mut local = vec![0u32; self.n];
        let mut maps: Vec<IdMap> = Vec::with_capacity(parts.len());
        for (p, members) in parts.iter().enumerate() {
            let mut vertices = members.clone();
            vertices.sort_unstable();
            vertices.dedup();
            for (i, &v) in vertices.iter().enumerate() {
                assert_eq!(owner[v], u32::MAX, "parts must be disjoint");
                owner[v] = p as u32;
                local[v] = i as u32;
            }
            maps.push(IdMap { vertices, edges: Vec::new() });
        }
        let mut edges: Vec<Vec<Edge>> = vec![Vec::new(); parts.len()];
        for (id, e) in self.edges.iter().enumerate() {
            let (t, h) = (e.tail as usize, e.head as usize);
            let p = owner[t];
            if p != u32::MAX && owner[h] == p {
                edges[p as usize].push(Edge { tail: local[t], head: local[h], weight: e.weight });
                maps[p as usize].edges.push(id);
            }
        }
        maps.into_iter()
            .zip(edges)
            .map(|(map, es)| (Graph::from_edge_vec(map.vertices.len(), es, self.max_weight), map))
            .collect()
    }
}

fn bucket(n: usize, edges: &[Edge], key: impl Fn(&Edge) -> u32) -> (Vec<u32>, Vec<u32>) {
    let mut offsets = vec![0u32; n + 1];
    for e in edges {
        offsets[key(e) as usize + 1] += 1;
    }
    for i in 0..n {
        offsets[i + 1] += offsets[i];
    }
    let mut fill = offsets.clone();
    let mut ids = vec![0u32; edges.len()];
    for (id, e) in edges.iter().enumerate() {
        let k = key(e) as usize;
        ids[fill[k] as usize] = id as u32;
        fill[k] += 1;
    }
    (offsets, ids)
}

/// Translation from an induced subgraph's ids to its parent's ids.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IdMap {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

/// Bitmap vertex set with a cached cardinality.
#[derive(Clone, PartialEq, Eq)]
pub struct VertexSet {
    words: Vec<u64>,
    universe: usize,
    len: usize,
}

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        VertexSet { words: vec![0; universe.div_ceil(64)], universe, len: 0 }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::new(universe);
        for v in 0..universe {
            s.insert(v);
        }
        s
    }

    pub fn from_iter(universe: usize, vertices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::new(universe);
        for v in vertices {
            s.insert(v);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    /// Returns true if `v` was newly inserted.
    pub fn insert(&mut self, v: usize) -> bool {
        assert!(v < self.universe, "vertex {v} outside universe {}", self.universe);
        let (w, b) = (v / 64, 1u64 << (v % 64));
        let fresh = self.words[w] & b == 0;
        self.words[w] |= b;
        self.len += fresh as usize;
        fresh
    }

    /// Returns true if `v` was present.
    pub fn remove(&mut self, v: usize) -> bool {
        if v >= self.universe {
            return false;
        }
        let (w, b) = (v / 64, 1u64 << (v % 64));
        let present = self.words[w] & b != 0;
        self.words[w] &= !b;
        self.len -= present as usize;
        present
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(other.words.iter().chain(std::iter::repeat(&0))).all(|(a, b)| a & !b == 0)
    }
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

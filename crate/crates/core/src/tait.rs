//! Signed Tait graphs.
//!
//! Vertices are the white regions of a checkerboard-coloured link diagram
//! (including the unbounded one, `outer`); every crossing is an edge between
//! the two white regions meeting at it, carrying the Goeritz sign of the
//! crossing. Parallel edges and loops are allowed.
//!
//! Smoothing a crossing one way keeps its two white regions apart (edge
//! deletion), the other way merges them (edge contraction). Both operations
//! are pure and return new values.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::IntMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("index {index} out of range for {vertex_count} vertices")]
    IndexOutOfRange { index: usize, vertex_count: usize },
    #[error("edge sign must be +1 or -1, got {0}")]
    BadSign(i64),
    #[error("no edge with id {0}")]
    NoSuchEdge(usize),
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("graph file: {0}")]
    Format(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl TryFrom<i64> for Sign {
    type Error = GraphError;
    fn try_from(v: i64) -> Result<Self, GraphError> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(GraphError::BadSign(v)),
        }
    }
}

/// An edge with `u <= v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub sign: Sign,
}

impl Edge {
    pub fn new(a: usize, b: usize, sign: Sign) -> Self {
        Self { u: a.min(b), v: a.max(b), sign }
    }

    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }
}

pub type EdgeId = usize;

/// Signed plane multigraph of white regions.
///
/// Edge ids are positions in [`edges`](Self::edges). Deleting or contracting
/// edge `e` removes it and shifts the ids of later edges down by one; all
/// other edges keep their relative order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedTaitGraph {
    vertex_count: usize,
    outer: usize,
    edges: Vec<Edge>,
}

/// Result of smoothing a crossing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResolutionOutcome {
    Graph(SignedTaitGraph),
    /// The smoothing produced a split link; its determinant is zero.
    Split,
}

impl ResolutionOutcome {
    pub fn graph(&self) -> Option<&SignedTaitGraph> {
        match self {
            ResolutionOutcome::Graph(g) => Some(g),
            ResolutionOutcome::Split => None,
        }
    }

    pub fn into_graph(self) -> Option<SignedTaitGraph> {
        match self {
            ResolutionOutcome::Graph(g) => Some(g),
            ResolutionOutcome::Split => None,
        }
    }

    pub fn is_split(&self) -> bool {
        matches!(self, ResolutionOutcome::Split)
    }
}

impl SignedTaitGraph {
    /// Validated constructor. Edges are `(u, v, sign)` with sign `1` or `-1`.
    pub fn new(vertex_count: usize, outer: usize, edges: &[(usize, usize, i64)]) -> Result<Self, GraphError> {
        if vertex_count == 0 {
            return Err(GraphError::Empty);
        }
        let check = |index: usize| {
            if index < vertex_count {
                Ok(index)
            } else {
                Err(GraphError::IndexOutOfRange { index, vertex_count })
            }
        };
        check(outer)?;
        let edges = edges
            .iter()
            .map(|&(u, v, s)| Ok(Edge::new(check(u)?, check(v)?, Sign::try_from(s)?)))
            .collect::<Result<Vec<_>, GraphError>>()?;
        Ok(Self { vertex_count, outer, edges })
    }

    pub(crate) fn from_parts(vertex_count: usize, outer: usize, edges: Vec<Edge>) -> Self {
        debug_assert!(outer < vertex_count);
        debug_assert!(edges.iter().all(|e| e.v < vertex_count));
        Self { vertex_count, outer, edges }
    }

    /// The one-vertex, edgeless graph of the crossingless unknot diagram.
    pub fn unknot() -> Self {
        Self { vertex_count: 1, outer: 0, edges: Vec::new() }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn outer(&self) -> usize {
        self.outer
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> Result<Edge, GraphError> {
        self.edges.get(e).copied().ok_or(GraphError::NoSuchEdge(e))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn with_outer(&self, outer: usize) -> Result<Self, GraphError> {
        if outer >= self.vertex_count {
            return Err(GraphError::IndexOutOfRange { index: outer, vertex_count: self.vertex_count });
        }
        Ok(Self { outer, ..self.clone() })
    }

    /// Same graph with every sign flipped (the mirror diagram).
    pub fn mirrored(&self) -> Self {
        let edges = self.edges.iter().map(|e| Edge { sign: e.sign.flip(), ..*e }).collect();
        Self { edges, ..self.clone() }
    }

    /// Smoothing that keeps the two white regions at the crossing apart.
    pub fn delete_edge(&self, e: EdgeId) -> Result<ResolutionOutcome, GraphError> {
        self.edge(e)?;
        let g = self.without_edge(e);
        Ok(if g.is_connected() { ResolutionOutcome::Graph(g) } else { ResolutionOutcome::Split })
    }

    /// Smoothing that merges the two white regions at the crossing.
    ///
    /// The merged vertex keeps the smaller index; higher indices shift down.
    /// Contracting a loop splits off a circle, so it yields `Split`.
    pub fn contract_edge(&self, e: EdgeId) -> Result<ResolutionOutcome, GraphError> {
        let edge = self.edge(e)?;
        if edge.is_loop() {
            return Ok(ResolutionOutcome::Split);
        }
        Ok(ResolutionOutcome::Graph(self.without_edge(e).merge(edge.u, edge.v)))
    }

    fn without_edge(&self, e: EdgeId) -> Self {
        let mut edges = self.edges.clone();
        edges.remove(e);
        Self { edges, ..self.clone() }
    }

    /// Identify vertex `drop` with `keep` (`keep < drop`).
    fn merge(&self, keep: usize, drop: usize) -> Self {
        debug_assert!(keep < drop);
        let remap = |w: usize| match w.cmp(&drop) {
            std::cmp::Ordering::Less => w,
            std::cmp::Ordering::Equal => keep,
            std::cmp::Ordering::Greater => w - 1,
        };
        let edges = self.edges.iter().map(|e| Edge::new(remap(e.u), remap(e.v), e.sign)).collect();
        Self { vertex_count: self.vertex_count - 1, outer: remap(self.outer), edges }
    }

    fn remove_edges(&self, mut ids: Vec<EdgeId>) -> Self {
        ids.sort_unstable();
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| ids.binary_search(i).is_err())
            .map(|(_, e)| *e)
            .collect();
        Self { edges, ..self.clone() }
    }

    pub fn is_alternating(&self) -> bool {
        self.edges.windows(2).all(|w| w[0].sign == w[1].sign)
    }

    pub fn is_connected(&self) -> bool {
        let mut uf = UnionFind::new(self.vertex_count);
        let mut parts = self.vertex_count;
        for e in &self.edges {
            if uf.union(e.u, e.v) {
                parts -= 1;
            }
        }
        parts == 1
    }

    /// Ids of non-loop edges whose removal disconnects their component.
    pub fn cut_edges(&self) -> Vec<EdgeId> {
        let n = self.vertex_count;
        let mut adj: Vec<Vec<(usize, EdgeId)>> = vec![Vec::new(); n];
        for (id, e) in self.edges.iter().enumerate() {
            if !e.is_loop() {
                adj[e.u].push((e.v, id));
                adj[e.v].push((e.u, id));
            }
        }
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut bridges = Vec::new();
        let mut clock = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            // iterative DFS: (vertex, edge used to enter, next adjacency index)
            let mut stack = vec![(root, usize::MAX, 0usize)];
            disc[root] = clock;
            low[root] = clock;
            clock += 1;
            while let Some(&mut (v, via, ref mut next)) = stack.last_mut() {
                if let Some(&(w, id)) = adj[v].get(*next) {
                    *next += 1;
                    if id == via {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = clock;
                        low[w] = clock;
                        clock += 1;
                        stack.push((w, id, 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(parent, _, _)) = stack.last() {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] > disc[parent] {
                            bridges.push(via);
                        }
                    }
                }
            }
        }
        bridges.sort_unstable();
        bridges
    }

    /// Undo Reidemeister-I twists: delete loops and contract cut edges until
    /// none remain. Preserves the link determinant; idempotent.
    pub fn reduce_nugatory(&self) -> Self {
        let mut g = self.clone();
        loop {
            if let Some(id) = g.edges.iter().position(Edge::is_loop) {
                g = g.without_edge(id);
                continue;
            }
            if let Some(&id) = g.cut_edges().first() {
                let e = g.edges[id];
                g = g.without_edge(id).merge(e.u, e.v);
                continue;
            }
            return g;
        }
    }

    /// Nugatory reduction plus removal of Reidemeister-II bigons.
    ///
    /// A bigon shows up either as two parallel edges of opposite sign (both
    /// are deleted; the Goeritz matrix is unchanged) or as a white region
    /// of degree two whose two crossings have opposite signs (both edges are
    /// contracted, merging the three regions). Each step preserves `|det|`.
    /// The result may be disconnected, in which case the link is split.
    pub fn simplify(&self) -> Self {
        let mut g = self.reduce_nugatory();
        loop {
            if let Some((i, j)) = g.opposite_parallel_pair() {
                g = g.remove_edges(vec![i, j]).reduce_nugatory();
                continue;
            }
            if let Some((i, j)) = g.opposite_series_pair() {
                let (a, b) = (g.edges[i], g.edges[j]);
                let w = if a.u == b.u || a.u == b.v { a.u } else { a.v };
                let x = if a.u == w { a.v } else { a.u };
                let y = if b.u == w { b.v } else { b.u };
                let h = g.remove_edges(vec![i, j]);
                let (lo, hi) = (w.min(x), w.max(x));
                let h = h.merge(lo, hi);
                let shift = |t: usize| if t == hi { lo } else if t > hi { t - 1 } else { t };
                let (w2, y2) = (shift(w), shift(y));
                g = if w2 == y2 { h } else { h.merge(w2.min(y2), w2.max(y2)) };
                g = g.reduce_nugatory();
                continue;
            }
            return g;
        }
    }

    fn opposite_parallel_pair(&self) -> Option<(EdgeId, EdgeId)> {
        for (i, a) in self.edges.iter().enumerate() {
            if a.is_loop() {
                continue;
            }
            if let Some(j) = self.edges[i + 1..]
                .iter()
                .position(|b| b.u == a.u && b.v == a.v && b.sign != a.sign)
            {
                return Some((i, i + 1 + j));
            }
        }
        None
    }

    fn opposite_series_pair(&self) -> Option<(EdgeId, EdgeId)> {
        let mut incident: Vec<Vec<EdgeId>> = vec![Vec::new(); self.vertex_count];
        for (id, e) in self.edges.iter().enumerate() {
            incident[e.u].push(id);
            if !e.is_loop() {
                incident[e.v].push(id);
            }
        }
        incident.iter().find_map(|ids| match ids.as_slice() {
            &[i, j] if !self.edges[i].is_loop()
                && !self.edges[j].is_loop()
                && self.edges[i].sign != self.edges[j].sign =>
            {
                Some((i, j))
            }
            _ => None,
        })
    }

    /// Goeritz matrix over all regions: off-diagonal `(i, j)` is the signed
    /// count of crossings between `i` and `j`; the diagonal makes every row sum
    /// vanish. Loops contribute nothing.
    pub fn goeritz_unreduced(&self) -> IntMatrix {
        let n = self.vertex_count;
        let mut m = vec![vec![0i64; n]; n];
        for e in self.edges.iter().filter(|e| !e.is_loop()) {
            let s = e.sign.value();
            m[e.u][e.v] += s;
            m[e.v][e.u] += s;
            m[e.u][e.u] -= s;
            m[e.v][e.v] -= s;
        }
        IntMatrix::from_i64(&m).expect("square")
    }

    /// Goeritz matrix with region `drop` ignored.
    pub fn goeritz_reduced(&self, drop: usize) -> Result<IntMatrix, GraphError> {
        if drop >= self.vertex_count {
            return Err(GraphError::IndexOutOfRange { index: drop, vertex_count: self.vertex_count });
        }
        Ok(self.goeritz_unreduced().without(drop))
    }

    /// Goeritz matrix with the unbounded region ignored.
    pub fn goeritz(&self) -> IntMatrix {
        self.goeritz_unreduced().without(self.outer)
    }

    /// `|det|` of the reduced Goeritz matrix: the link determinant.
    pub fn determinant(&self) -> BigInt {
        use num_traits::Signed;
        self.goeritz().det().abs()
    }

    /// Serialized form with edges sorted; identical graphs (up to edge order)
    /// give identical text.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphFile::from(self)).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, GraphError> {
        let file: GraphFile = serde_json::from_str(s).map_err(|e| GraphError::Format(e.to_string()))?;
        Self::try_from(file)
    }

    /// Same graph with edges in sorted order.
    pub fn sorted(&self) -> Self {
        let mut edges = self.edges.clone();
        edges.sort();
        Self { edges, ..self.clone() }
    }
}

impl fmt::Display for SignedTaitGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

impl FromStr for SignedTaitGraph {
    type Err = GraphError;
    fn from_str(s: &str) -> Result<Self, GraphError> {
        Self::from_json(s)
    }
}

/// On-disk graph layout: `{"vertices": n, "outer": k, "edges": [[u, v, s], ...]}`.
#[derive(Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: usize,
    pub outer: usize,
    pub edges: Vec<(usize, usize, i64)>,
}

impl From<&SignedTaitGraph> for GraphFile {
    fn from(g: &SignedTaitGraph) -> Self {
        let mut edges: Vec<(usize, usize, i64)> =
            g.edges.iter().map(|e| (e.u, e.v, e.sign.value())).collect();
        edges.sort_unstable();
        GraphFile { vertices: g.vertex_count, outer: g.outer, edges }
    }
}

impl TryFrom<GraphFile> for SignedTaitGraph {
    type Error = GraphError;
    fn try_from(f: GraphFile) -> Result<Self, GraphError> {
        Ok(SignedTaitGraph::new(f.vertices, f.outer, &f.edges)?.sorted())
    }
}

impl Serialize for SignedTaitGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphFile::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for SignedTaitGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let f = GraphFile::deserialize(d)?;
        SignedTaitGraph::try_from(f).map_err(serde::de::Error::custom)
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true if `a` and `b` were in different sets.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

//! Quasi-alternating certificates.
//!
//! A certificate is a binary tree of link diagrams (as Tait graphs). Every
//! internal node names a crossing whose two smoothings are its children and
//! whose determinant is the sum of theirs; every leaf is the crossingless
//! unknot or a connected alternating diagram. Graphs are stored after
//! [`reduced_form`], i.e. simplified and canonically relabelled.
//!
//! The search is sound but not complete: it never changes diagrams beyond
//! Reidemeister I/II cancellation, so a failure says nothing about whether
//! the link is quasi-alternating.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::families::{resolve_family, Eps, FamilyError, ResolutionSpec};
use crate::iso::{canonical_form, canonical_key, CanonicalKey};
use crate::tait::{Edge, ResolutionOutcome, SignedTaitGraph};

/// Simplify, then relabel canonically.
///
/// The input is canonicalised first so that the result depends only on the
/// isomorphism class of `g`.
pub fn reduced_form(g: &SignedTaitGraph) -> SignedTaitGraph {
    canonical_form(&canonical_form(g).simplify())
}

/// `|det|` of the reduced Goeritz matrix; zero for split outcomes.
pub fn link_det(g: &SignedTaitGraph) -> BigInt {
    g.goeritz().det().abs()
}

pub fn outcome_det(o: &ResolutionOutcome) -> BigInt {
    o.graph().map(link_det).unwrap_or_default()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    BaseUnknot,
    BaseAlternating,
    Branch,
}

/// Leaf test on an already reduced graph.
pub fn base_case(g: &SignedTaitGraph) -> Option<NodeKind> {
    if g.vertex_count() == 1 && g.edge_count() == 0 {
        Some(NodeKind::BaseUnknot)
    } else if g.edge_count() > 0 && g.is_connected() && g.is_alternating() {
        Some(NodeKind::BaseAlternating)
    } else {
        None
    }
}

/// A crossing of a node graph: the `index`-th edge (counting from zero)
/// among the parallel edges `(u, v, sign)` in sorted edge order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "(usize, usize, i64, usize)", into = "(usize, usize, i64, usize)")]
pub struct BranchEdge {
    pub u: usize,
    pub v: usize,
    pub sign: i64,
    pub index: usize,
}

impl From<(usize, usize, i64, usize)> for BranchEdge {
    fn from((u, v, sign, index): (usize, usize, i64, usize)) -> Self {
        Self { u, v, sign, index }
    }
}

impl From<BranchEdge> for (usize, usize, i64, usize) {
    fn from(e: BranchEdge) -> Self {
        (e.u, e.v, e.sign, e.index)
    }
}

impl BranchEdge {
    fn first_of(e: Edge) -> Self {
        Self { u: e.u, v: e.v, sign: e.sign.value(), index: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertNode {
    pub graph: SignedTaitGraph,
    #[serde(with = "decimal")]
    pub det: BigInt,
    pub kind: NodeKind,
    #[serde(flatten, default, skip_serializing_if = "Option::is_none")]
    pub branch: Option<Box<Branch>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Branch {
    pub edge: BranchEdge,
    /// Child for the smoothing that deletes the edge.
    pub delete: CertNode,
    /// Child for the smoothing that contracts the edge.
    pub contract: CertNode,
}

impl CertNode {
    fn leaf(graph: SignedTaitGraph, det: BigInt, kind: NodeKind) -> Self {
        Self { graph, det, kind, branch: None }
    }

    fn branch(graph: SignedTaitGraph, det: BigInt, edge: BranchEdge, delete: CertNode, contract: CertNode) -> Self {
        Self { graph, det, kind: NodeKind::Branch, branch: Some(Box::new(Branch { edge, delete, contract })) }
    }

    pub fn node_count(&self) -> usize {
        1 + self.branch.as_ref().map_or(0, |b| b.delete.node_count() + b.contract.node_count())
    }

    pub fn depth(&self) -> usize {
        self.branch.as_ref().map_or(0, |b| 1 + b.delete.depth().max(b.contract.depth()))
    }
}

pub const CERTIFICATE_FORMAT: &str = "goeritz-qa-certificate";

/// Certificate file: `{"format": ..., "version": 1, "root": node}` where a
/// node is `{"graph": <graph file>, "det": "<decimal>", "kind": ...}` plus,
/// for `"kind": "branch"`, the keys `edge` (`[u, v, sign, index]`),
/// `delete` and `contract`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub format: String,
    pub version: u32,
    pub root: CertNode,
}

impl Certificate {
    pub fn new(root: CertNode) -> Self {
        Self { format: CERTIFICATE_FORMAT.to_string(), version: 1, root }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

mod decimal {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Maximum number of branch nodes expanded.
    pub max_nodes: usize,
    /// Maximum number of nested smoothings.
    pub max_depth: usize,
}

impl SearchBudget {
    pub fn new(max_nodes: usize, max_depth: usize) -> Self {
        assert!(max_nodes > 0 && max_depth > 0, "budget must be positive");
        Self { max_nodes, max_depth }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self { max_nodes: 100_000, max_depth: 256 }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertifyFailure {
    #[error("search budget exhausted (a failed search does not show the link is not quasi-alternating)")]
    BudgetExhausted,
    #[error("no crossing splits the determinant into two positive parts within this diagram (the search only uses this diagram, so this does not show the link is not quasi-alternating)")]
    NoAdmissibleEdge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub budget: SearchBudget,
    pub memoize: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { budget: SearchBudget::default(), memoize: true }
    }
}

/// Search statistics of a finished run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub expanded: usize,
    pub memo_hits: usize,
}

enum Fail {
    /// The node cannot be certified; `constrained` if a depth cutoff was involved.
    Dead { constrained: bool },
    Abort,
}

struct Found {
    node: CertNode,
    constrained: bool,
}

struct Searcher {
    options: SearchOptions,
    // only entries found without any depth cutoff, so reuse is transparent
    proven: HashMap<CanonicalKey, CertNode>,
    // None: fails at any depth; Some(d): fails with d or fewer levels left
    refuted: HashMap<CanonicalKey, Option<usize>>,
    stats: SearchStats,
}

struct Candidate {
    edge: BranchEdge,
    order: usize,
    delete: (SignedTaitGraph, BigInt),
    contract: (SignedTaitGraph, BigInt),
}

/// Admissible crossings of a reduced graph: both smoothings non-split with
/// positive determinants adding up to `det`. Sorted by the larger child
/// determinant, then by edge order.
fn candidates(g: &SignedTaitGraph, det: &BigInt) -> Vec<Candidate> {
    let mut out = Vec::new();
    let edges = g.edges();
    for (id, e) in edges.iter().enumerate() {
        if id > 0 && edges[id - 1] == *e {
            continue;
        }
        let (Some(d), Some(c)) = (
            g.delete_edge(id).expect("edge exists").into_graph(),
            g.contract_edge(id).expect("edge exists").into_graph(),
        ) else {
            continue;
        };
        let (d, c) = (reduced_form(&d), reduced_form(&c));
        let (dd, dc) = (link_det(&d), link_det(&c));
        if dd.is_zero() || dc.is_zero() || &(&dd + &dc) != det {
            continue;
        }
        out.push(Candidate { edge: BranchEdge::first_of(*e), order: id, delete: (d, dd), contract: (c, dc) });
    }
    out.sort_by(|x, y| {
        let mx = (&x.delete.1).max(&x.contract.1);
        let my = (&y.delete.1).max(&y.contract.1);
        mx.cmp(my).then(x.order.cmp(&y.order))
    });
    out
}

impl Searcher {
    fn new(options: SearchOptions) -> Self {
        Self { options, proven: HashMap::new(), refuted: HashMap::new(), stats: SearchStats::default() }
    }

    fn solve(&mut self, g: SignedTaitGraph, det: BigInt, depth_left: usize) -> Result<Found, Fail> {
        if det.is_zero() {
            return Err(Fail::Dead { constrained: false });
        }
        if let Some(kind) = base_case(&g) {
            return Ok(Found { node: CertNode::leaf(g, det, kind), constrained: false });
        }
        let key = canonical_key(&g);
        if self.options.memoize {
            if let Some(node) = self.proven.get(&key) {
                if node.depth() <= depth_left {
                    self.stats.memo_hits += 1;
                    return Ok(Found { node: node.clone(), constrained: false });
                }
            }
            match self.refuted.get(&key) {
                Some(None) => return Err(Fail::Dead { constrained: false }),
                Some(Some(d)) if *d >= depth_left => return Err(Fail::Dead { constrained: true }),
                _ => {}
            }
        }
        if depth_left == 0 {
            return Err(Fail::Dead { constrained: true });
        }
        self.stats.expanded += 1;
        if self.stats.expanded > self.options.budget.max_nodes {
            return Err(Fail::Abort);
        }

        let mut constrained = false;
        for cand in candidates(&g, &det) {
            let left = match self.solve(cand.delete.0, cand.delete.1, depth_left - 1) {
                Ok(f) => f,
                Err(Fail::Abort) => return Err(Fail::Abort),
                Err(Fail::Dead { constrained: c }) => {
                    constrained |= c;
                    continue;
                }
            };
            let right = match self.solve(cand.contract.0, cand.contract.1, depth_left - 1) {
                Ok(f) => f,
                Err(Fail::Abort) => return Err(Fail::Abort),
                Err(Fail::Dead { constrained: c }) => {
                    constrained |= c;
                    continue;
                }
            };
            let constrained = constrained || left.constrained || right.constrained;
            let node = CertNode::branch(g, det, cand.edge, left.node, right.node);
            if self.options.memoize && !constrained {
                self.proven.insert(key, node.clone());
            }
            return Ok(Found { node, constrained });
        }
        if self.options.memoize {
            let entry = if constrained { Some(depth_left) } else { None };
            let slot = self.refuted.entry(key).or_insert(entry);
            *slot = match (*slot, entry) {
                (None, _) | (_, None) => None,
                (Some(x), Some(y)) => Some(x.max(y)),
            };
        }
        Err(Fail::Dead { constrained })
    }
}

/// Search for a certificate for the link of `g`.
pub fn certify(g: &SignedTaitGraph, budget: SearchBudget) -> Result<Certificate, CertifyFailure> {
    certify_with(g, SearchOptions { budget, memoize: true }).map(|(c, _)| c)
}

/// [`certify`] with explicit options, also returning search statistics.
pub fn certify_with(
    g: &SignedTaitGraph,
    options: SearchOptions,
) -> Result<(Certificate, SearchStats), CertifyFailure> {
    let root = reduced_form(g);
    let det = link_det(&root);
    let mut s = Searcher::new(options);
    match s.solve(root, det, options.budget.max_depth) {
        Ok(found) => Ok((Certificate::new(found.node), s.stats)),
        Err(Fail::Abort) => Err(CertifyFailure::BudgetExhausted),
        Err(Fail::Dead { constrained: true }) => Err(CertifyFailure::BudgetExhausted),
        Err(Fail::Dead { constrained: false }) => Err(CertifyFailure::NoAdmissibleEdge),
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GuidedError {
    #[error("guided certification starts from L(a: *,*,*), L(a: 0,*,*) or L(a: inf,*,*), not {0}")]
    UnsupportedSpec(ResolutionSpec),
    #[error("internal mismatch at {spec}: {detail}")]
    InternalMismatch { spec: ResolutionSpec, detail: String },
    #[error("search below {spec} failed: {failure}")]
    Search { spec: ResolutionSpec, failure: CertifyFailure },
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// How the inductive argument treats one member of the family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Step {
    /// Smooth the designated crossing `c_i`.
    Branch(usize),
    /// Expected to be a base case after reduction.
    Leaf,
    /// Same reduced diagram as another member.
    SameAs(ResolutionSpec),
    /// Hand the node to the unguided search.
    Search,
}

fn plan(spec: &ResolutionSpec) -> Step {
    use Eps::{Inf as I, Keep as K, Zero as Z};
    let a = spec.a;
    let lower = |eps| Step::SameAs(spec.with_a(a - 1).with_eps(eps));
    match spec.eps {
        [K, K, K] => Step::Branch(0),
        [Z, K, K] | [I, K, K] => Step::Branch(1),
        [Z, I, K] | [I, Z, K] | [I, I, K] => Step::Branch(2),
        [Z, Z, K] | [Z, I, Z] | [I, Z, Z] => Step::Leaf,
        [Z, I, I] | [I, Z, I] | [I, I, Z] if a > 1 => lower([Z, K, K]),
        [I, I, I] if a > 1 => lower([K, K, K]),
        // alternating (or quasi-alternating) only after moves beyond R1/R2
        _ => Step::Search,
    }
}

struct Guide {
    budget: SearchBudget,
    done: HashMap<ResolutionSpec, CertNode>,
}

impl Guide {
    fn reduced(&self, spec: &ResolutionSpec) -> Result<SignedTaitGraph, GuidedError> {
        match resolve_family(spec)? {
            ResolutionOutcome::Graph(g) => Ok(reduced_form(&g)),
            ResolutionOutcome::Split => Err(GuidedError::InternalMismatch {
                spec: *spec,
                detail: "resolution is split".into(),
            }),
        }
    }

    fn node(&mut self, spec: &ResolutionSpec) -> Result<CertNode, GuidedError> {
        if let Some(n) = self.done.get(spec) {
            return Ok(n.clone());
        }
        let g = self.reduced(spec)?;
        let det = link_det(&g);
        let mismatch = |detail: String| GuidedError::InternalMismatch { spec: *spec, detail };
        let node = match plan(spec) {
            Step::Leaf => {
                let kind = base_case(&g).ok_or_else(|| mismatch("expected a base case".into()))?;
                CertNode::leaf(g, det, kind)
            }
            Step::SameAs(other) => {
                let n = self.node(&other)?;
                if n.graph != g {
                    return Err(mismatch(format!("reduced diagram differs from {other}")));
                }
                n
            }
            Step::Search => certify(&g, self.budget)
                .map_err(|failure| GuidedError::Search { spec: *spec, failure })?
                .root,
            Step::Branch(i) => {
                let mut zero = *spec;
                zero.eps[i] = Eps::Zero;
                let mut inf = *spec;
                inf.eps[i] = Eps::Inf;
                let left = self.node(&zero)?;
                let right = self.node(&inf)?;
                if det != &left.det + &right.det {
                    return Err(mismatch(format!("{det} != {} + {}", left.det, right.det)));
                }
                let edge = matching_edge(&g, &left.graph, &right.graph)
                    .ok_or_else(|| mismatch(format!("no crossing of the reduced diagram realises c{}", i + 1)))?;
                CertNode::branch(g, det, edge, left, right)
            }
        };
        self.done.insert(*spec, node.clone());
        Ok(node)
    }
}

/// An edge of `g` whose deletion and contraction reduce to the given graphs.
fn matching_edge(g: &SignedTaitGraph, deleted: &SignedTaitGraph, contracted: &SignedTaitGraph) -> Option<BranchEdge> {
    let edges = g.edges();
    (0..edges.len())
        .filter(|&id| id == 0 || edges[id - 1] != edges[id])
        .find(|&id| {
            let d = g.delete_edge(id).expect("edge exists").into_graph();
            let c = g.contract_edge(id).expect("edge exists").into_graph();
            matches!((d, c), (Some(d), Some(c)) if reduced_form(&d) == *deleted && reduced_form(&c) == *contracted)
        })
        .map(|id| BranchEdge::first_of(edges[id]))
}

/// Certificate following the inductive argument on `a`: smooth `c_1`, then
/// `c_2`, then `c_3`, and reuse the certificate for `a - 1` wherever the
/// reduced diagrams coincide. Every determinant sum is checked.
pub fn certify_guided(spec: &ResolutionSpec, budget: SearchBudget) -> Result<Certificate, GuidedError> {
    use Eps::{Inf as I, Keep as K, Zero as Z};
    if !matches!(spec.eps, [K, K, K] | [Z, K, K] | [I, K, K]) {
        return Err(GuidedError::UnsupportedSpec(*spec));
    }
    let mut guide = Guide { budget, done: HashMap::new() };
    Ok(Certificate::new(guide.node(spec)?))
}

/// Determinant of the link named by a family spec.
pub fn family_det(spec: &ResolutionSpec) -> Result<BigInt, FamilyError> {
    Ok(outcome_det(&resolve_family(spec)?))
}

impl Default for CertNode {
    fn default() -> Self {
        CertNode::leaf(SignedTaitGraph::unknot(), BigInt::one(), NodeKind::BaseUnknot)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::paper_family;
    use crate::verify::verify_certificate;

    fn trefoil() -> SignedTaitGraph {
        SignedTaitGraph::new(2, 0, &[(0, 1, -1), (0, 1, -1), (0, 1, -1)]).unwrap()
    }

    #[test]
    fn base_cases() {
        assert_eq!(base_case(&SignedTaitGraph::unknot()), Some(NodeKind::BaseUnknot));
        assert_eq!(base_case(&trefoil()), Some(NodeKind::BaseAlternating));
        let mixed = SignedTaitGraph::new(3, 0, &[(0, 1, 1), (1, 2, -1), (0, 2, 1), (0, 2, 1)]).unwrap();
        assert_eq!(base_case(&mixed), None);
    }

    #[test]
    fn link_determinants() {
        assert_eq!(link_det(&SignedTaitGraph::unknot()), BigInt::from(1));
        assert_eq!(link_det(&trefoil()), BigInt::from(3));
        assert_eq!(link_det(&paper_family(1, 1, 1).unwrap().graph), BigInt::from(400));
        assert_eq!(outcome_det(&ResolutionOutcome::Split), BigInt::from(0));
    }

    #[test]
    fn trefoil_is_a_single_leaf() {
        let cert = certify(&trefoil(), SearchBudget::default()).unwrap();
        assert_eq!(cert.root.kind, NodeKind::BaseAlternating);
        assert_eq!(cert.root.det, BigInt::from(3));
        assert!(verify_certificate(&cert));
    }

    #[test]
    fn split_graph_has_no_admissible_edge() {
        let unlink = SignedTaitGraph::new(3, 0, &[(0, 1, 1), (0, 1, 1), (1, 2, 1), (1, 2, -1)]).unwrap();
        assert_eq!(link_det(&unlink), BigInt::from(0));
        assert_eq!(certify(&unlink, SearchBudget::default()), Err(CertifyFailure::NoAdmissibleEdge));
    }

    #[test]
    fn tiny_budget_is_reported() {
        let g = paper_family(1, 1, 1).unwrap().graph;
        assert_eq!(certify(&g, SearchBudget::new(1, 64)), Err(CertifyFailure::BudgetExhausted));
    }

    #[test]
    fn guided_rejects_deeper_specs() {
        let spec: ResolutionSpec = "L(a=1,b=1,c=1:0,0,*)".parse().unwrap();
        assert!(matches!(certify_guided(&spec, SearchBudget::default()), Err(GuidedError::UnsupportedSpec(_))));
    }

    #[test]
    fn certificate_json_roundtrip() {
        let spec = ResolutionSpec::link(1, 1, 1).unwrap();
        let cert = certify_guided(&spec, SearchBudget::default()).unwrap();
        let text = cert.to_json();
        assert_eq!(Certificate::from_json(&text).unwrap(), cert);
    }
}

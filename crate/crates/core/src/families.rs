//! Pretzel links and the family `L(a: e1, e2, e3)`.
//!
//! The family graph is built matrix-first. Its Goeritz matrix over the
//! bounded white regions `alpha_1 .. alpha_{3a+6}` is block tridiagonal:
//!
//! ```text
//!  -2I   I
//!   I  -2I   I
//!          ...
//!          I  -2I   I
//!               I  [ G1 ]      (G1 is 9x9 and occupies the last three blocks)
//! ```
//!
//! with
//!
//! ```text
//!       -I      -I       I
//! G1 =  -I   (b+1)I      M         M = [[0,-b,0],[0,0,-b],[-b,0,0]]
//!        I      M^T      N         N = (b+2c+1) on the diagonal, -(c+1) off it
//! ```
//!
//! Every off-diagonal entry `m` between two regions becomes `|m|` parallel
//! edges of sign `sign(m)`; edges to the unbounded region (vertex 0) are
//! whatever makes each row of the unreduced matrix sum to zero. That leaves a
//! single `+1` edge from each of `alpha_1, alpha_2, alpha_3` to the outside:
//! these are the designated crossings `c_1, c_2, c_3`. Resolving `c_i` with
//! `0` deletes the edge (the diagonal entry of `alpha_i` goes up by one);
//! resolving with `inf` contracts it (row and column `alpha_i` disappear).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::linalg::{PolyMatrix, PolyZ};
use crate::tait::{GraphError, ResolutionOutcome, SignedTaitGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unknown formula {0:?}")]
    UnknownFormula(String),
    #[error("cannot parse family spec {0:?}")]
    Parse(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Resolution type at one designated crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Eps {
    /// `*`: crossing kept.
    Keep,
    /// `0`: regions kept apart (edge deleted).
    Zero,
    /// `inf`: regions merged (edge contracted).
    Inf,
}

impl fmt::Display for Eps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Eps::Keep => "*",
            Eps::Zero => "0",
            Eps::Inf => "inf",
        })
    }
}

impl FromStr for Eps {
    type Err = FamilyError;
    fn from_str(s: &str) -> Result<Self, FamilyError> {
        match s.trim() {
            "*" => Ok(Eps::Keep),
            "0" => Ok(Eps::Zero),
            "inf" | "∞" | "oo" => Ok(Eps::Inf),
            other => Err(FamilyError::Parse(format!("resolution symbol {other:?}"))),
        }
    }
}

/// Selects the member `L(a: e1, e2, e3)` of the family with twist
/// parameters `a, b, c >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ResolutionSpec {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub eps: [Eps; 3],
}

impl ResolutionSpec {
    pub fn new(a: u32, b: u32, c: u32, eps: [Eps; 3]) -> Result<Self, FamilyError> {
        if a == 0 || b == 0 || c == 0 {
            return Err(FamilyError::BadParameter(format!(
                "a, b, c must be positive (got {a}, {b}, {c})"
            )));
        }
        Ok(Self { a, b, c, eps })
    }

    /// The unresolved link `L(a: *, *, *)`.
    pub fn link(a: u32, b: u32, c: u32) -> Result<Self, FamilyError> {
        Self::new(a, b, c, [Eps::Keep; 3])
    }

    pub fn with_eps(self, eps: [Eps; 3]) -> Self {
        Self { eps, ..self }
    }

    pub fn with_a(self, a: u32) -> Self {
        Self { a, ..self }
    }
}

impl fmt::Display for ResolutionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [e1, e2, e3] = self.eps;
        write!(f, "L(a={},b={},c={}:{e1},{e2},{e3})", self.a, self.b, self.c)
    }
}

impl FromStr for ResolutionSpec {
    type Err = FamilyError;

    /// Grammar: `L(a=<n>,b=<n>,c=<n>:<e>,<e>,<e>)` with `<e>` one of `*`,
    /// `0`, `inf` (also `∞`). Whitespace is ignored; the resolution part may
    /// be omitted, meaning `*,*,*`.
    fn from_str(s: &str) -> Result<Self, FamilyError> {
        let bad = || FamilyError::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let body = compact
            .strip_prefix("L(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (params, eps_part) = match body.split_once(':') {
            Some((p, e)) => (p, Some(e)),
            None => (body, None),
        };
        let mut vals = [None; 3];
        for item in params.split(',') {
            let (k, v) = item.split_once('=').ok_or_else(bad)?;
            let slot = match k {
                "a" => 0,
                "b" => 1,
                "c" => 2,
                _ => return Err(bad()),
            };
            if vals[slot].is_some() {
                return Err(bad());
            }
            vals[slot] = Some(v.parse::<u32>().map_err(|_| bad())?);
        }
        let [Some(a), Some(b), Some(c)] = vals else { return Err(bad()) };
        let eps = match eps_part {
            None => [Eps::Keep; 3],
            Some(e) => {
                let parts: Vec<Eps> = e.split(',').map(str::parse).collect::<Result<_, _>>()?;
                parts.try_into().map_err(|_| bad())?
            }
        };
        ResolutionSpec::new(a, b, c, eps)
    }
}

/// Family graph together with the ids of the designated crossings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyGraph {
    pub graph: SignedTaitGraph,
    pub designated: [usize; 3],
}

/// Tait graph of the pretzel link `P(p_1, ..., p_n)`.
///
/// Vertices are the `n` white regions lying between consecutive twist columns
/// (vertex 0 is taken as the unbounded one); column `i` contributes `|p_i|`
/// parallel edges between regions `i` and `i + 1 (mod n)`, all of sign
/// `-sign(p_i)`. For `n = 2` both columns join the same two regions. Its
/// determinant is `|sum_i prod_{j != i} p_j|`.
pub fn pretzel_graph(p: &[i64]) -> Result<SignedTaitGraph, FamilyError> {
    if p.len() < 2 {
        return Err(FamilyError::BadParameter("a pretzel link needs at least two columns".into()));
    }
    if p.contains(&0) {
        return Err(FamilyError::BadParameter("pretzel twist counts must be nonzero".into()));
    }
    let n = p.len();
    let regions = if n == 2 { 2 } else { n };
    let mut edges = Vec::new();
    for (i, &twists) in p.iter().enumerate() {
        let (u, v) = (i % regions, (i + 1) % regions);
        for _ in 0..twists.unsigned_abs() {
            edges.push((u, v, -twists.signum()));
        }
    }
    Ok(SignedTaitGraph::new(regions, 0, &edges)?)
}

/// Entry `k0 + kb*b + kc*c` of the symbolic matrices.
type Linear = (i64, i64, i64);

fn g1_entries() -> [[Linear; 9]; 9] {
    const Z: Linear = (0, 0, 0);
    const ONE: Linear = (1, 0, 0);
    const NEG: Linear = (-1, 0, 0);
    const MB: Linear = (0, -1, 0);
    const BP1: Linear = (1, 1, 0);
    const DIAG: Linear = (1, 1, 2);
    const OFF: Linear = (-1, 0, -1);
    [
        [NEG, Z, Z, NEG, Z, Z, ONE, Z, Z],
        [Z, NEG, Z, Z, NEG, Z, Z, ONE, Z],
        [Z, Z, NEG, Z, Z, NEG, Z, Z, ONE],
        [NEG, Z, Z, BP1, Z, Z, Z, MB, Z],
        [Z, NEG, Z, Z, BP1, Z, Z, Z, MB],
        [Z, Z, NEG, Z, Z, BP1, MB, Z, Z],
        [ONE, Z, Z, Z, Z, MB, DIAG, OFF, OFF],
        [Z, ONE, Z, MB, Z, Z, OFF, DIAG, OFF],
        [Z, Z, ONE, Z, MB, Z, OFF, OFF, DIAG],
    ]
}

fn linear_poly((k0, kb, kc): Linear) -> PolyZ {
    let b = &PolyZ::b() * &PolyZ::constant(kb);
    let c = &PolyZ::c() * &PolyZ::constant(kc);
    &(&PolyZ::constant(k0) + &b) + &c
}

/// Reduced Goeritz matrix of `L(a: *, *, *)` over the bounded regions.
pub fn family_matrix(a: u32, b: u32, c: u32) -> Vec<Vec<i64>> {
    let a = a as usize;
    let n = 3 * a + 6;
    let mut m = vec![vec![0i64; n]; n];
    for k in 0..a - 1 {
        for j in 0..3 {
            let r = 3 * k + j;
            m[r][r] = -2;
            m[r][r + 3] = 1;
            m[r + 3][r] = 1;
        }
    }
    let off = 3 * (a - 1);
    let (b, c) = (b as i64, c as i64);
    for (i, row) in g1_entries().iter().enumerate() {
        for (j, &(k0, kb, kc)) in row.iter().enumerate() {
            m[off + i][off + j] = k0 + kb * b + kc * c;
        }
    }
    m
}

/// Tait graph of `L(a: *, *, *)` and its designated crossings.
///
/// Vertex 0 is the unbounded region and vertex `i` is `alpha_i`, so dropping
/// the outer region reproduces [`family_matrix`] entry for entry. The
/// designated crossings are edges 0, 1, 2.
pub fn paper_family(a: u32, b: u32, c: u32) -> Result<FamilyGraph, FamilyError> {
    ResolutionSpec::link(a, b, c)?;
    let m = family_matrix(a, b, c);
    let n = m.len();
    let mut to_outer = vec![0i64; n];
    for (i, row) in m.iter().enumerate() {
        // diagonal = -(sum of incident signs), so the outer weight closes the row
        to_outer[i] = -row.iter().sum::<i64>();
    }
    for (i, &w) in to_outer.iter().enumerate() {
        let expected = i64::from(i < 3);
        assert_eq!(w, expected, "unexpected outer weight at region {}", i + 1);
    }
    let mut edges: Vec<(usize, usize, i64)> = (1..=3).map(|i| (0, i, 1)).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            let w = m[i][j];
            for _ in 0..w.unsigned_abs() {
                edges.push((i + 1, j + 1, w.signum()));
            }
        }
    }
    let graph = SignedTaitGraph::new(n + 1, 0, &edges)?;
    Ok(FamilyGraph { graph, designated: [0, 1, 2] })
}

/// Apply the resolutions of `spec` at `c_1`, `c_2`, `c_3` in that order.
pub fn resolve_family(spec: &ResolutionSpec) -> Result<ResolutionOutcome, FamilyError> {
    let FamilyGraph { mut graph, mut designated } = paper_family(spec.a, spec.b, spec.c)?;
    for i in 0..3 {
        let id = designated[i];
        let outcome = match spec.eps[i] {
            Eps::Keep => continue,
            Eps::Zero => graph.delete_edge(id)?,
            Eps::Inf => graph.contract_edge(id)?,
        };
        match outcome {
            ResolutionOutcome::Graph(g) => graph = g,
            ResolutionOutcome::Split => return Ok(ResolutionOutcome::Split),
        }
        for d in designated.iter_mut().skip(i + 1) {
            if *d > id {
                *d -= 1;
            }
        }
    }
    Ok(ResolutionOutcome::Graph(graph))
}

/// The 9x9 matrix `G1` over `Z[b, c]` with the resolutions of `spec` applied:
/// `0` at `c_i` raises the `(i, i)` entry by one, `inf` drops row and column
/// `i`. Only `a = 1` is supported.
pub fn symbolic_goeritz(spec: &ResolutionSpec) -> Result<PolyMatrix, FamilyError> {
    if spec.a != 1 {
        return Err(FamilyError::Unsupported(format!("symbolic matrix needs a = 1, got a = {}", spec.a)));
    }
    let mut rows: Vec<Vec<PolyZ>> = g1_entries()
        .iter()
        .map(|r| r.iter().map(|&e| linear_poly(e)).collect())
        .collect();
    for i in 0..3 {
        if spec.eps[i] == Eps::Zero {
            rows[i][i] = &rows[i][i] + &PolyZ::one();
        }
    }
    let mut m = PolyMatrix::new(rows).expect("square");
    for i in (0..3).rev() {
        if spec.eps[i] == Eps::Inf {
            m = m.without(i);
        }
    }
    Ok(m)
}

/// The catalog of closed-form determinants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormulaId {
    /// `det G1` for `a = 1`.
    G1,
    /// Determinants of the resolutions at `a = 1`, indexed by the resolution triple.
    SingleTwist([Eps; 3]),
    /// Determinants valid for every `a`: the link, its two smoothings at
    /// `c1`, and `L(a: 0,0,*)`, `L(a: 0,inf,*)`, `L(a: inf,inf,*)`.
    General([Eps; 3]),
}

use Eps::{Inf as I, Keep as K, Zero as Z};

const SINGLE_TWIST: [([Eps; 3], &str); 9] = [
    ([Z, K, K], "2*(b+c+1)*(3*b*c+6*b+6*c+5)"),
    ([I, K, K], "(3*b*c+4*b+4*c+3)*(3*b*c+6*b+6*c+5)"),
    ([Z, Z, K], "3*(b+c+1)^2"),
    ([Z, I, K], "(b+c+1)*(6*b*c+9*b+9*c+7)"),
    ([I, Z, K], "(b+c+1)*(6*b*c+9*b+9*c+7)"),
    ([I, I, K], "(3*b*c+3*b+3*c+2)*(3*b*c+5*b+5*c+4)"),
    ([Z, I, Z], "3*(b+c+1)^2"),
    ([Z, I, I], "2*(b+c+1)*(3*b*c+3*b+3*c+2)"),
    ([I, I, I], "(3*b*c+3*b+3*c+2)^2"),
];

const GENERAL: [([Eps; 3], &str); 6] = [
    ([K, K, K], "(3*a*b+3*b*c+3*c*a+3*a+3*b+3*c+2)^2"),
    ([Z, K, K], "2*(b+c+1)*(3*a*b+3*b*c+3*c*a+3*a+3*b+3*c+2)"),
    ([I, K, K], "(3*a*b+3*b*c+3*c*a+3*a+b+c)*(3*a*b+3*b*c+3*c*a+3*a+3*b+3*c+2)"),
    ([Z, Z, K], "3*(b+c+1)^2"),
    ([Z, I, K], "(b+c+1)*(6*a*b+6*b*c+6*c*a+6*a+3*b+3*c+1)"),
    ([I, I, K], "(3*a*b+3*b*c+3*c*a+3*a+2*b+2*c+1)*(3*a*b+3*b*c+3*c*a+3*a-1)"),
];

const G1_DET: &str = "(3*b*c+6*b+6*c+5)^2";

fn eps_name(eps: [Eps; 3]) -> String {
    eps.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
}

impl FormulaId {
    pub fn all() -> Vec<FormulaId> {
        let mut out = vec![FormulaId::G1];
        out.extend(SINGLE_TWIST.iter().map(|(e, _)| FormulaId::SingleTwist(*e)));
        out.extend(GENERAL.iter().map(|(e, _)| FormulaId::General(*e)));
        out
    }

    /// The closed form as an expression in `a`, `b`, `c`.
    pub fn expression(&self) -> &'static str {
        let find = |table: &[([Eps; 3], &'static str)], eps: &[Eps; 3]| {
            table.iter().find(|(e, _)| e == eps).map(|(_, s)| *s)
        };
        match self {
            FormulaId::G1 => Some(G1_DET),
            FormulaId::SingleTwist(e) => find(&SINGLE_TWIST, e),
            FormulaId::General(e) => find(&GENERAL, e),
        }
        .expect("FormulaId values come from the catalog")
    }

    /// Resolution triple of the link whose determinant this formula gives.
    pub fn eps(&self) -> [Eps; 3] {
        match self {
            FormulaId::G1 => [K, K, K],
            FormulaId::SingleTwist(e) | FormulaId::General(e) => *e,
        }
    }

    /// Whether the formula is only stated for `a = 1`.
    pub fn fixes_a(&self) -> bool {
        matches!(self, FormulaId::G1 | FormulaId::SingleTwist(_))
    }

    /// The formula as a polynomial in `b, c` at a fixed `a`.
    pub fn polynomial(&self, a: u32) -> PolyZ {
        let text = self.expression().replace('a', &format!("({a})"));
        text.parse().expect("catalog expressions parse")
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormulaId::G1 => write!(f, "g1"),
            FormulaId::SingleTwist(e) => write!(f, "a1:{}", eps_name(*e)),
            FormulaId::General(e) => write!(f, "general:{}", eps_name(*e)),
        }
    }
}

impl FromStr for FormulaId {
    type Err = FamilyError;

    /// `g1`, or `a1:` or `general:` followed by a resolution triple.
    fn from_str(s: &str) -> Result<Self, FamilyError> {
        let unknown = || FamilyError::UnknownFormula(s.to_string());
        let id = if s.trim() == "g1" {
            FormulaId::G1
        } else {
            let (table, eps) = s.trim().split_once(':').ok_or_else(unknown)?;
            let eps: Vec<Eps> = eps.split(',').map(str::parse).collect::<Result<_, _>>().map_err(|_| unknown())?;
            let eps: [Eps; 3] = eps.try_into().map_err(|_| unknown())?;
            match table {
                "a1" => FormulaId::SingleTwist(eps),
                "general" => FormulaId::General(eps),
                _ => return Err(unknown()),
            }
        };
        if FormulaId::all().contains(&id) {
            Ok(id)
        } else {
            Err(unknown())
        }
    }
}

/// Evaluate a catalog formula at `(a, b, c)`.
pub fn closed_form(id: FormulaId, a: u32, b: u32, c: u32) -> Result<BigInt, FamilyError> {
    ResolutionSpec::link(a, b, c)?;
    Ok(id.polynomial(a).eval_i64(b as i64, c as i64))
}

/// Look a formula up by name and evaluate it.
pub fn closed_form_by_name(name: &str, a: u32, b: u32, c: u32) -> Result<BigInt, FamilyError> {
    closed_form(name.parse()?, a, b, c)
}

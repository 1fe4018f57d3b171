//! Matrix-tree oracle: determinants by brute-force spanning tree enumeration.
//!
//! This path never touches a matrix, so it is an independent check on the
//! Goeritz/Bareiss route.

use num_bigint::BigInt;
use num_traits::Zero;

use super::LinalgError;
use crate::tait::{SignedTaitGraph, UnionFind};

/// Largest non-loop edge count accepted by the enumerators.
pub const TREE_SUM_MAX_EDGES: usize = 22;

/// Sum over spanning trees of the product of their edge signs.
///
/// Equals the reduced Goeritz determinant up to sign.
pub fn signed_tree_sum(g: &SignedTaitGraph) -> Result<BigInt, LinalgError> {
    enumerate(g, |edges| edges.iter().map(|&(_, _, s)| s).product::<i64>())
}

/// Number of spanning trees, ignoring signs.
pub fn spanning_tree_count(g: &SignedTaitGraph) -> Result<BigInt, LinalgError> {
    enumerate(g, |_| 1)
}

fn enumerate(
    g: &SignedTaitGraph,
    weight: impl Fn(&[(usize, usize, i64)]) -> i64,
) -> Result<BigInt, LinalgError> {
    if !g.is_connected() {
        return Err(LinalgError::Disconnected);
    }
    let edges: Vec<(usize, usize, i64)> = g
        .edges()
        .iter()
        .filter(|e| !e.is_loop())
        .map(|e| (e.u, e.v, e.sign.value()))
        .collect();
    if edges.len() > TREE_SUM_MAX_EDGES {
        return Err(LinalgError::TooLarge { edges: edges.len(), max: TREE_SUM_MAX_EDGES });
    }
    let need = g.vertex_count() - 1;
    let mut total = BigInt::zero();
    let mut chosen = Vec::with_capacity(need);
    choose(&edges, 0, need, &mut chosen, &mut |pick| {
        let mut uf = UnionFind::new(g.vertex_count());
        if pick.iter().all(|&(u, v, _)| uf.union(u, v)) {
            total += weight(pick);
        }
    });
    Ok(total)
}

fn choose<F: FnMut(&[(usize, usize, i64)])>(
    edges: &[(usize, usize, i64)],
    start: usize,
    need: usize,
    chosen: &mut Vec<(usize, usize, i64)>,
    visit: &mut F,
) {
    if chosen.len() == need {
        visit(chosen);
        return;
    }
    let remaining = need - chosen.len();
    for i in start..edges.len() {
        if edges.len() - i < remaining {
            break;
        }
        chosen.push(edges[i]);
        choose(edges, i + 1, need, chosen, visit);
        chosen.pop();
    }
}

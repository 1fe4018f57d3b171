//! Independent checking of quasi-alternating certificates.
//!
//! Nothing here trusts the search: every determinant is recomputed from the
//! stored graph and every child is matched against a freshly computed
//! smoothing of its parent.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

use crate::certify::{BranchEdge, CertNode, Certificate, NodeKind, CERTIFICATE_FORMAT};
use crate::iso::{canonical_form, find_isomorphism};
use crate::tait::{SignedTaitGraph, Sign};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FailureReason {
    UnknownFormat(String),
    NonPositiveDeterminant,
    AdditivityViolation { det: BigInt, delete: BigInt, contract: BigInt },
    DeterminantMismatch { claimed: BigInt, actual: BigInt },
    NotABaseCase(NodeKind),
    MissingChildren,
    UnexpectedChildren,
    NoSuchEdge(BranchEdge),
    SplitSmoothing { contract: bool },
    ChildMismatch { contract: bool },
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FailureReason::*;
        match self {
            UnknownFormat(s) => write!(f, "unknown certificate format {s:?}"),
            NonPositiveDeterminant => write!(f, "determinant must be positive"),
            AdditivityViolation { det, delete, contract } => {
                write!(f, "AdditivityViolation: {det} != {delete} + {contract}")
            }
            DeterminantMismatch { claimed, actual } => {
                write!(f, "DeterminantMismatch: claimed {claimed}, graph has {actual}")
            }
            NotABaseCase(k) => write!(f, "leaf marked {k:?} is not such a diagram"),
            MissingChildren => write!(f, "branch node without children"),
            UnexpectedChildren => write!(f, "leaf node with children"),
            NoSuchEdge(e) => write!(f, "no edge ({}, {}, {}) #{}", e.u, e.v, e.sign, e.index),
            SplitSmoothing { contract } => write!(f, "{} smoothing is split", side(*contract)),
            ChildMismatch { contract } => {
                write!(f, "{} child is not the reduced smoothing", side(*contract))
            }
        }
    }
}

fn side(contract: bool) -> &'static str {
    if contract {
        "contract"
    } else {
        "delete"
    }
}

/// A rejected certificate. `path` lists the child choices from the root,
/// `d` for delete and `c` for contract; the empty path is the root.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("at node {}: {reason}", if path.is_empty() { "root" } else { path.as_str() })]
pub struct VerifyFailure {
    pub path: String,
    pub reason: FailureReason,
}

pub fn verify_certificate(cert: &Certificate) -> bool {
    verify(cert).is_ok()
}

/// Check every node of `cert`, stopping at the first failure (preorder).
pub fn verify(cert: &Certificate) -> Result<(), VerifyFailure> {
    if cert.format != CERTIFICATE_FORMAT || cert.version != 1 {
        return Err(VerifyFailure {
            path: String::new(),
            reason: FailureReason::UnknownFormat(format!("{} v{}", cert.format, cert.version)),
        });
    }
    let mut path = String::new();
    check(&cert.root, &mut path)
}

/// Check that `cert` certifies the link of `g`.
pub fn verify_for(g: &SignedTaitGraph, cert: &Certificate) -> Result<(), VerifyFailure> {
    verify(cert)?;
    if find_isomorphism(&normal(g), &cert.root.graph).is_none() {
        return Err(VerifyFailure {
            path: String::new(),
            reason: FailureReason::ChildMismatch { contract: false },
        });
    }
    Ok(())
}

fn normal(g: &SignedTaitGraph) -> SignedTaitGraph {
    canonical_form(g).simplify()
}

fn check(node: &CertNode, path: &mut String) -> Result<(), VerifyFailure> {
    let fail = |reason| Err(VerifyFailure { path: path.clone(), reason });
    if !node.det.is_positive() {
        return fail(FailureReason::NonPositiveDeterminant);
    }
    if let Some(b) = &node.branch {
        if node.det != &b.delete.det + &b.contract.det {
            return fail(FailureReason::AdditivityViolation {
                det: node.det.clone(),
                delete: b.delete.det.clone(),
                contract: b.contract.det.clone(),
            });
        }
    }
    let actual = node.graph.goeritz().det().abs();
    if actual != node.det {
        return fail(FailureReason::DeterminantMismatch { claimed: node.det.clone(), actual });
    }
    let g = &node.graph;
    match (node.kind, &node.branch) {
        (NodeKind::Branch, None) => return fail(FailureReason::MissingChildren),
        (NodeKind::BaseUnknot | NodeKind::BaseAlternating, Some(_)) => {
            return fail(FailureReason::UnexpectedChildren)
        }
        (NodeKind::BaseUnknot, None) => {
            if g.vertex_count() != 1 || g.edge_count() != 0 {
                return fail(FailureReason::NotABaseCase(node.kind));
            }
        }
        (NodeKind::BaseAlternating, None) => {
            let first = g.edges().first().map(|e| e.sign);
            let same = g.edges().iter().all(|e| Some(e.sign) == first);
            if first.is_none() || !same || !g.is_connected() {
                return fail(FailureReason::NotABaseCase(node.kind));
            }
        }
        (NodeKind::Branch, Some(b)) => {
            let Some(id) = locate(g, b.edge) else {
                return fail(FailureReason::NoSuchEdge(b.edge));
            };
            for (contract, child) in [(false, &b.delete), (true, &b.contract)] {
                let outcome = if contract { g.contract_edge(id) } else { g.delete_edge(id) };
                let Some(smoothed) = outcome.expect("located edge").into_graph() else {
                    return fail(FailureReason::SplitSmoothing { contract });
                };
                if find_isomorphism(&normal(&smoothed), &child.graph).is_none() {
                    return fail(FailureReason::ChildMismatch { contract });
                }
            }
            path.push('d');
            check(&b.delete, path)?;
            path.pop();
            path.push('c');
            check(&b.contract, path)?;
            path.pop();
        }
    }
    Ok(())
}

fn locate(g: &SignedTaitGraph, e: BranchEdge) -> Option<usize> {
    let sign = match e.sign {
        1 => Sign::Plus,
        -1 => Sign::Minus,
        _ => return None,
    };
    g.edges()
        .iter()
        .enumerate()
        .filter(|(_, x)| x.u == e.u.min(e.v) && x.v == e.u.max(e.v) && x.sign == sign)
        .nth(e.index)
        .map(|(id, _)| id)
}

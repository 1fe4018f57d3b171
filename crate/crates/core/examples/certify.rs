//! Quasi-alternating certificates: guided by the induction on `a`, and by
//! plain search, both checked by the independent verifier.

use goeritz::certify::{certify, certify_guided, CertNode, SearchBudget};
use goeritz::families::{paper_family, ResolutionSpec};
use goeritz::verify::verify;

fn outline(node: &CertNode, depth: usize, limit: usize) {
    if depth > limit {
        return;
    }
    println!("{:indent$}{:?} det {} ({} regions)", "", node.kind, node.det, node.graph.vertex_count(), indent = 2 * depth);
    if let Some(b) = &node.branch {
        outline(&b.delete, depth + 1, limit);
        outline(&b.contract, depth + 1, limit);
    }
}

fn main() {
    let budget = SearchBudget::default();
    let spec = ResolutionSpec::link(3, 2, 1).unwrap();
    let cert = certify_guided(&spec, budget).unwrap();
    println!("guided {spec}: {} nodes, depth {}, verified: {:?}", cert.root.node_count(), cert.root.depth(), verify(&cert));
    outline(&cert.root, 0, 3);

    let g = paper_family(1, 1, 1).unwrap().graph;
    let cert = certify(&g, budget).unwrap();
    println!("search L(1,1,1): {} nodes, verified: {:?}", cert.root.node_count(), verify(&cert));

    let mut broken = cert.clone();
    broken.root.det += 1;
    println!("after bumping the root determinant: {}", verify(&broken).unwrap_err());
}

//! Canonical forms: smoothing three crossings of L(a) gives back L(a - 1).

use goeritz::families::{paper_family, resolve_family, Eps, ResolutionSpec};
use goeritz::iso::{canonical_form, find_isomorphism};

fn main() {
    let spec = ResolutionSpec::new(3, 1, 2, [Eps::Inf; 3]).unwrap();
    let smoothed = resolve_family(&spec).unwrap().into_graph().unwrap();
    let lower = paper_family(2, 1, 2).unwrap().graph;
    println!("{spec}: {} regions, {} crossings", smoothed.vertex_count(), smoothed.edge_count());
    println!("L(a=2,b=1,c=2): {} regions, {} crossings", lower.vertex_count(), lower.edge_count());
    println!("vertex map: {:?}", find_isomorphism(&smoothed, &lower));
    println!("same canonical form: {}", canonical_form(&smoothed) == canonical_form(&lower));
}

//! Determinant of a link from its signed Tait graph, two ways.

use goeritz::{signed_tree_sum, SignedTaitGraph};

fn main() {
    // figure-eight knot: a triangle with one doubled side, mixed signs
    let g = SignedTaitGraph::new(3, 0, &[(0, 1, 1), (0, 1, 1), (1, 2, -1), (0, 2, -1)]).unwrap();
    let m = g.goeritz();
    println!("reduced Goeritz matrix:\n{m}");
    println!("det (Bareiss)       = {}", m.det());
    println!("signed tree sum     = {}", signed_tree_sum(&g).unwrap());
    println!("graph file: {}", g.to_json());
}

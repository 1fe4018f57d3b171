//! Invariant factors of the double branched cover's first homology.

use goeritz::families::{paper_family, pretzel_graph};
use goeritz::smith_normal_form;

fn show(name: &str, g: &goeritz::SignedTaitGraph) {
    let f: Vec<String> = smith_normal_form(&g.goeritz()).iter().map(ToString::to_string).collect();
    println!("{name:<16} det {:>6}  invariant factors [{}]", g.determinant(), f.join(", "));
}

fn main() {
    show("P(3,3,3)", &pretzel_graph(&[3, 3, 3]).unwrap());
    show("P(-2,3,7)", &pretzel_graph(&[-2, 3, 7]).unwrap());
    for (a, b, c) in [(1, 1, 1), (2, 1, 1), (2, 3, 1)] {
        show(&format!("L({a},{b},{c})"), &paper_family(a, b, c).unwrap().graph);
    }
}

#![allow(dead_code)]

use goeritz::families::pretzel_graph;
use goeritz::pd::PdDiagram;
use goeritz::SignedTaitGraph;
use rand::rngs::StdRng;
use rand::Rng;

/// PD code of a braid closure. Generator `i` (1-based) is `σ_i`, `-i` its
/// inverse. Every strand must take part in some crossing.
pub fn braid_closure(strands: usize, word: &[i32]) -> PdDiagram {
    let mut current: Vec<u64> = (1..=strands as u64).collect();
    let mut next = strands as u64 + 1;
    let mut crossings = Vec::new();
    for &g in word {
        let i = g.unsigned_abs() as usize - 1;
        assert!(i + 1 < strands, "generator {g} needs more strands");
        let (x, y) = (current[i], current[i + 1]);
        let (p, q) = (next, next + 1);
        next += 2;
        crossings.push(if g > 0 { [y, q, p, x] } else { [x, y, q, p] });
        current[i] = p;
        current[i + 1] = q;
    }
    // close up: the top label of position j becomes the bottom label j + 1
    let rename = |l: u64| current.iter().position(|&t| t == l).map_or(l, |j| j as u64 + 1);
    let crossings = crossings.into_iter().map(|x| x.map(rename)).collect();
    PdDiagram::new(crossings).expect("braid closure is a valid code")
}

/// Plane embedding of the pretzel graph: bundle `i` joins regions `i` and
/// `i + 1`.
pub fn pretzel_pd(p: &[usize]) -> PdDiagram {
    let n = p.len();
    let mut edges = Vec::new();
    let mut bundles = Vec::new();
    for (i, &k) in p.iter().enumerate() {
        bundles.push((edges.len()..edges.len() + k).collect::<Vec<_>>());
        edges.extend(std::iter::repeat_n((i, (i + 1) % n, -1), k));
    }
    let rotation: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            let mut r = bundles[i].clone();
            r.extend(bundles[(i + n - 1) % n].iter().rev());
            r
        })
        .collect();
    PdDiagram::from_plane_graph(n, &edges, &rotation).expect("pretzel embedding")
}

/// Small alternating diagrams with their determinants.
pub fn alternating_corpus() -> Vec<(&'static str, PdDiagram, u64)> {
    let turks_head = |n: usize| [1, -2].repeat(n);
    let mut out: Vec<(&'static str, PdDiagram, u64)> = vec![
        ("T(2,2)", braid_closure(2, &[1, 1]), 2),
        ("T(2,3)", braid_closure(2, &[1; 3]), 3),
        ("T(2,4)", braid_closure(2, &[1; 4]), 4),
        ("T(2,5)", braid_closure(2, &[1; 5]), 5),
        ("T(2,6)", braid_closure(2, &[1; 6]), 6),
        ("T(2,7)", braid_closure(2, &[1; 7]), 7),
        ("figure eight", braid_closure(3, &turks_head(2)), 5),
        ("Borromean rings", braid_closure(3, &turks_head(3)), 16),
        ("Turk's head 4", braid_closure(3, &turks_head(4)), 45),
        ("Turk's head 5", braid_closure(3, &turks_head(5)), 121),
        ("square knot", braid_closure(3, &[1, 1, 1, -2, -2, -2]), 9),
        ("stabilised trefoil", braid_closure(3, &[1, 1, 1, -2]), 3),
        ("stabilised cinquefoil", braid_closure(3, &[1, 1, 1, 1, 1, -2]), 5),
        ("twice stabilised trefoil", braid_closure(4, &[1, 1, 1, -2, 3]), 3),
        ("trefoil # cinquefoil", braid_closure(3, &[1, 1, 1, -2, -2, -2, -2, -2]), 15),
        ("Hopf # Hopf", braid_closure(3, &[1, 1, -2, -2]), 4),
        ("trefoil # Hopf", braid_closure(3, &[1, 1, 1, -2, -2]), 6),
        ("Hopf # Hopf # Hopf", braid_closure(4, &[1, 1, -2, -2, 3, 3]), 8),
    ];
    out.push(("P(3,3,3)", pretzel_pd(&[3, 3, 3]), 27));
    out.push(("P(2,3,4)", pretzel_pd(&[2, 3, 4]), 26));
    out
}

/// Non-alternating braid closures with known determinants.
pub fn non_alternating_corpus() -> Vec<(&'static str, PdDiagram, u64)> {
    vec![
        ("granny knot", braid_closure(3, &[1, 1, 1, 2, 2, 2]), 9),
        ("positively stabilised trefoil", braid_closure(3, &[1, 1, 1, 2]), 3),
        ("trefoil # Hopf, same handedness", braid_closure(3, &[1, 1, 1, 2, 2]), 6),
        ("T(3,4)", braid_closure(3, &[1, 2, 1, 2, 1, 2, 1, 2]), 3),
        ("T(3,5)", braid_closure(3, &[1, 2, 1, 2, 1, 2, 1, 2, 1, 2]), 1),
    ]
}

/// A random connected signed multigraph, loops included.
pub fn random_graph(rng: &mut StdRng, max_vertices: usize, max_edges: usize) -> SignedTaitGraph {
    let n = rng.gen_range(1..=max_vertices);
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v, if rng.gen_bool(0.5) { 1 } else { -1 }));
    }
    let target = rng.gen_range(edges.len().max(1)..=max_edges.max(edges.len()));
    while edges.len() < target {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        edges.push((u, v, if rng.gen_bool(0.5) { 1 } else { -1 }));
    }
    SignedTaitGraph::new(n, rng.gen_range(0..n), &edges).unwrap()
}

/// A random connected all-positive multigraph without loops.
pub fn random_positive_graph(rng: &mut StdRng, max_vertices: usize, max_edges: usize) -> SignedTaitGraph {
    let n = rng.gen_range(2..=max_vertices);
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v, 1));
    }
    let target = rng.gen_range(edges.len()..=max_edges.max(edges.len()));
    while edges.len() < target {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u != v {
            edges.push((u, v, 1));
        }
    }
    SignedTaitGraph::new(n, 0, &edges).unwrap()
}

pub fn pretzel(p: &[i64]) -> SignedTaitGraph {
    pretzel_graph(p).unwrap()
}

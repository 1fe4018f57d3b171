//! Isomorphism of signed multigraphs.
//!
//! Two graphs are isomorphic when a vertex bijection carries the multiset of
//! `(endpoints, sign)` edges of one onto the other; the `outer` marking is
//! ignored. [`canonical_form`] is computed by colour refinement plus
//! individualisation, exploring the whole search tree and keeping the
//! lexicographically least relabelled edge list, so it is an exact invariant:
//! equal forms if and only if isomorphic. [`find_isomorphism`] is a separate
//! backtracking matcher used to cross-check it.

use crate::tait::{Edge, Sign, SignedTaitGraph};

/// Exact isomorphism invariant of a signed multigraph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    vertices: usize,
    edges: Vec<Edge>,
}

impl CanonicalKey {
    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// The canonical representative, with `outer = 0`.
    pub fn to_graph(&self) -> SignedTaitGraph {
        SignedTaitGraph::from_parts(self.vertices, 0, self.edges.clone())
    }
}

struct Counts {
    n: usize,
    // [minus, plus] edge counts per ordered vertex pair; the diagonal holds loops
    pair: Vec<[u32; 2]>,
}

impl Counts {
    fn new(g: &SignedTaitGraph) -> Self {
        let n = g.vertex_count();
        let mut pair = vec![[0u32; 2]; n * n];
        for e in g.edges() {
            let s = usize::from(e.sign == Sign::Plus);
            pair[e.u * n + e.v][s] += 1;
            if !e.is_loop() {
                pair[e.v * n + e.u][s] += 1;
            }
        }
        Self { n, pair }
    }

    fn disjoint_union(a: &Counts, b: &Counts) -> Self {
        let n = a.n + b.n;
        let mut pair = vec![[0u32; 2]; n * n];
        for i in 0..a.n {
            for j in 0..a.n {
                pair[i * n + j] = a.at(i, j);
            }
        }
        for i in 0..b.n {
            for j in 0..b.n {
                pair[(a.n + i) * n + a.n + j] = b.at(i, j);
            }
        }
        Self { n, pair }
    }

    fn at(&self, i: usize, j: usize) -> [u32; 2] {
        self.pair[i * self.n + j]
    }
}

/// Replace colour values by their rank among the distinct values.
fn rank<T: Ord + Clone>(keys: &[T]) -> Vec<usize> {
    let mut sorted: Vec<T> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(k).expect("present")).collect()
}

fn class_count(colors: &[usize]) -> usize {
    colors.iter().max().map_or(0, |m| m + 1)
}

/// Equitable refinement. The new colour of a vertex is the rank of
/// (old colour, multiset of (neighbour colour, edge counts)); ranks depend
/// only on colours, never on vertex numbering.
fn refine(counts: &Counts, mut colors: Vec<usize>) -> Vec<usize> {
    let n = counts.n;
    loop {
        let before = class_count(&colors);
        let sigs: Vec<(usize, Vec<(usize, [u32; 2])>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<(usize, [u32; 2])> = (0..n)
                    .filter(|&w| w != v && counts.at(v, w) != [0, 0])
                    .map(|w| (colors[w], counts.at(v, w)))
                    .collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        colors = rank(&sigs);
        if class_count(&colors) == before {
            return colors;
        }
    }
}

fn initial_colors(counts: &Counts) -> Vec<usize> {
    let loops: Vec<[u32; 2]> = (0..counts.n).map(|v| counts.at(v, v)).collect();
    rank(&loops)
}

fn individualize(colors: &[usize], target: usize, v: usize) -> Vec<usize> {
    let keyed: Vec<(usize, bool)> = colors
        .iter()
        .enumerate()
        .map(|(u, &c)| (c, c == target && u != v))
        .collect();
    rank(&keyed)
}

fn relabel(g: &SignedTaitGraph, perm: &[usize]) -> Vec<Edge> {
    let mut edges: Vec<Edge> = g.edges().iter().map(|e| Edge::new(perm[e.u], perm[e.v], e.sign)).collect();
    edges.sort_unstable();
    edges
}

fn search(g: &SignedTaitGraph, counts: &Counts, colors: Vec<usize>, best: &mut Option<Vec<Edge>>) {
    let colors = refine(counts, colors);
    let n = counts.n;
    if class_count(&colors) == n {
        let code = relabel(g, &colors);
        if best.as_ref().is_none_or(|b| code < *b) {
            *best = Some(code);
        }
        return;
    }
    let mut sizes = vec![0usize; n];
    for &c in &colors {
        sizes[c] += 1;
    }
    let target = (0..n).find(|&c| sizes[c] > 1).expect("not discrete");
    for v in (0..n).filter(|&v| colors[v] == target) {
        search(g, counts, individualize(&colors, target, v), best);
    }
}

/// Canonical key; equal for two graphs exactly when they are isomorphic.
pub fn canonical_key(g: &SignedTaitGraph) -> CanonicalKey {
    let counts = Counts::new(g);
    let mut best = None;
    search(g, &counts, initial_colors(&counts), &mut best);
    CanonicalKey { vertices: g.vertex_count(), edges: best.expect("search visits a leaf") }
}

/// Canonically relabelled copy of `g` (with `outer = 0`).
pub fn canonical_form(g: &SignedTaitGraph) -> SignedTaitGraph {
    canonical_key(g).to_graph()
}

/// A vertex map `m` with `m[v]` in `h` for each `v` in `g`, if one exists.
pub fn find_isomorphism(g: &SignedTaitGraph, h: &SignedTaitGraph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    if n != h.vertex_count() || g.edge_count() != h.edge_count() {
        return None;
    }
    let (cg, ch) = (Counts::new(g), Counts::new(h));
    let joint = Counts::disjoint_union(&cg, &ch);
    let colors = refine(&joint, initial_colors(&joint));
    let (left, right) = colors.split_at(n);
    let mut hist_l = left.to_vec();
    let mut hist_r = right.to_vec();
    hist_l.sort_unstable();
    hist_r.sort_unstable();
    if hist_l != hist_r {
        return None;
    }
    // assign rarest colour classes first
    let mut freq = vec![0usize; 2 * n];
    for &c in left {
        freq[c] += 1;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (freq[left[v]], v));

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        k: usize,
        order: &[usize],
        left: &[usize],
        right: &[usize],
        cg: &Counts,
        ch: &Counts,
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let Some(&v) = order.get(k) else { return true };
        for w in 0..right.len() {
            if used[w] || right[w] != left[v] || cg.at(v, v) != ch.at(w, w) {
                continue;
            }
            let consistent = order[..k].iter().all(|&u| cg.at(v, u) == ch.at(w, map[u]));
            if !consistent {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if extend(k + 1, order, left, right, cg, ch, map, used) {
                return true;
            }
            used[w] = false;
            map[v] = usize::MAX;
        }
        false
    }
    extend(0, &order, left, right, &cg, &ch, &mut map, &mut used).then_some(map)
}

pub fn is_isomorphic(g: &SignedTaitGraph, h: &SignedTaitGraph) -> bool {
    find_isomorphism(g, h).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn graph(n: usize, edges: &[(usize, usize, i64)]) -> SignedTaitGraph {
        SignedTaitGraph::new(n, 0, edges).unwrap()
    }

    fn permuted(g: &SignedTaitGraph, perm: &[usize]) -> SignedTaitGraph {
        let edges: Vec<(usize, usize, i64)> =
            g.edges().iter().rev().map(|e| (perm[e.u], perm[e.v], e.sign.value())).collect();
        SignedTaitGraph::new(g.vertex_count(), perm[g.outer()], &edges).unwrap()
    }

    /// Brute force over all vertex permutations.
    fn brute_isomorphic(g: &SignedTaitGraph, h: &SignedTaitGraph) -> bool {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for i in 0..n {
                    let mut q = p.clone();
                    q.insert(i, n - 1);
                    out.push(q);
                }
            }
            out
        }
        if g.vertex_count() != h.vertex_count() {
            return false;
        }
        let target = relabel(h, &(0..h.vertex_count()).collect::<Vec<_>>());
        perms(g.vertex_count()).iter().any(|p| relabel(g, p) == target)
    }

    #[test]
    fn permuted_labels_are_isomorphic() {
        let g = graph(4, &[(0, 1, 1), (1, 2, -1), (2, 3, 1), (3, 0, 1), (0, 2, -1), (1, 1, 1)]);
        let h = permuted(&g, &[2, 0, 3, 1]);
        assert!(is_isomorphic(&g, &h));
        assert_eq!(canonical_key(&g), canonical_key(&h));
        let m = find_isomorphism(&g, &h).unwrap();
        assert_eq!(relabel(&g, &m), relabel(&h, &[0, 1, 2, 3]));
    }

    #[test]
    fn signs_are_preserved() {
        let neg = graph(2, &[(0, 1, -1), (0, 1, -1), (0, 1, -1)]);
        let pos = graph(2, &[(0, 1, 1), (0, 1, 1), (0, 1, 1)]);
        assert!(!is_isomorphic(&neg, &pos));
        assert_ne!(canonical_key(&neg), canonical_key(&pos));
        assert!(is_isomorphic(&neg.mirrored(), &pos));
    }

    #[test]
    fn outer_is_ignored() {
        let g = graph(3, &[(0, 1, 1), (1, 2, 1)]);
        assert!(is_isomorphic(&g, &g.with_outer(2).unwrap()));
        assert_eq!(canonical_form(&g), canonical_form(&g.with_outer(1).unwrap()));
    }

    #[test]
    fn regular_graphs_that_refinement_cannot_split() {
        // 6-cycle versus two triangles: both 2-regular, not isomorphic
        let c6 = graph(6, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (4, 5, 1), (5, 0, 1)]);
        let tt = graph(6, &[(0, 1, 1), (1, 2, 1), (2, 0, 1), (3, 4, 1), (4, 5, 1), (5, 3, 1)]);
        assert!(!is_isomorphic(&c6, &tt));
        assert_ne!(canonical_key(&c6), canonical_key(&tt));
        let c6b = permuted(&c6, &[3, 5, 1, 0, 2, 4]);
        assert_eq!(canonical_key(&c6), canonical_key(&c6b));
    }

    fn small_graph() -> impl Strategy<Value = SignedTaitGraph> {
        (1usize..=5).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n, prop::bool::ANY), 0..8).prop_map(move |es| {
                let edges: Vec<(usize, usize, i64)> =
                    es.into_iter().map(|(u, v, s)| (u, v, if s { 1 } else { -1 })).collect();
                SignedTaitGraph::new(n, 0, &edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn key_agrees_with_brute_force(g in small_graph(), h in small_graph()) {
            let brute = brute_isomorphic(&g, &h);
            prop_assert_eq!(is_isomorphic(&g, &h), brute);
            prop_assert_eq!(canonical_key(&g) == canonical_key(&h), brute);
        }

        #[test]
        fn key_is_invariant_under_relabelling(g in small_graph(), seed in any::<u64>()) {
            use rand::{seq::SliceRandom, SeedableRng};
            let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
            perm.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
            let h = permuted(&g, &perm);
            prop_assert_eq!(canonical_key(&g), canonical_key(&h));
            prop_assert!(is_isomorphic(&g, &h));
        }
    }
}

//! Graph isomorphism by colour refinement with individualization.
//!
//! Both graphs are refined in lockstep with a shared colour naming, so a
//! colour means the same thing on either side. When refinement stalls the
//! lowest vertex of the smallest non-singleton cell of `G` is individualized
//! and every vertex of the matching cell of `H` is tried in increasing order.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::Graph;
use crate::Error;

pub const DEFAULT_MAX_ISO_VERTICES: usize = 300;

type Signature = (u32, Vec<(u32, u32)>);

struct Pair<'a> {
    g: &'a Graph,
    h: &'a Graph,
    g_adj: Vec<Vec<usize>>,
    h_adj: Vec<Vec<usize>>,
}

fn adjacency_lists(g: &Graph) -> Vec<Vec<usize>> {
    (0..g.order()).map(|i| g.neighbors(i).collect()).collect()
}

fn signatures(adj: &[Vec<usize>], colors: &[u32]) -> Vec<Signature> {
    adj.iter()
        .enumerate()
        .map(|(x, nbrs)| {
            let mut counts = BTreeMap::new();
            for &y in nbrs {
                *counts.entry(colors[y]).or_insert(0u32) += 1;
            }
            (colors[x], counts.into_iter().collect())
        })
        .collect()
}

fn class_sizes(colors: &[u32], n_colors: usize) -> Vec<usize> {
    let mut sizes = vec![0; n_colors];
    for &c in colors {
        sizes[c as usize] += 1;
    }
    sizes
}

impl Pair<'_> {
    /// Refines to the coarsest equitable colouring; `None` when the two
    /// sides disagree on some class size.
    fn refine(&self, mut gc: Vec<u32>, mut hc: Vec<u32>) -> Option<(Vec<u32>, Vec<u32>, usize)> {
        let mut n_colors = gc.iter().max().map_or(0, |&c| c as usize + 1);
        loop {
            let gs = signatures(&self.g_adj, &gc);
            let hs = signatures(&self.h_adj, &hc);
            let mut all: Vec<&Signature> = gs.iter().chain(&hs).collect();
            all.sort();
            all.dedup();
            let index = |s: &Signature| all.binary_search(&s).unwrap() as u32;
            let ng: Vec<u32> = gs.iter().map(index).collect();
            let nh: Vec<u32> = hs.iter().map(index).collect();
            let count = all.len();
            if class_sizes(&ng, count) != class_sizes(&nh, count) {
                return None;
            }
            gc = ng;
            hc = nh;
            if count == n_colors {
                return Some((gc, hc, count));
            }
            n_colors = count;
        }
    }

    fn search(&self, gc: Vec<u32>, hc: Vec<u32>) -> Option<Vec<usize>> {
        let (gc, hc, n_colors) = self.refine(gc, hc)?;
        let n = gc.len();
        if n_colors == n {
            let mut by_color = vec![0; n];
            for (y, &c) in hc.iter().enumerate() {
                by_color[c as usize] = y;
            }
            let map: Vec<usize> = gc.iter().map(|&c| by_color[c as usize]).collect();
            return is_isomorphism(self.g, self.h, &map).then_some(map);
        }
        let sizes = class_sizes(&gc, n_colors);
        let target = (0..n_colors as u32)
            .filter(|&c| sizes[c as usize] > 1)
            .min_by_key(|&c| (sizes[c as usize], c))?;
        let x = gc.iter().position(|&c| c == target)?;
        let fresh = n_colors as u32;
        for y in (0..n).filter(|&y| hc[y] == target) {
            let mut g2 = gc.clone();
            let mut h2 = hc.clone();
            g2[x] = fresh;
            h2[y] = fresh;
            if let Some(map) = self.search(g2, h2) {
                return Some(map);
            }
        }
        None
    }
}

/// Whether `map` (vertex `i` of `g` to `map[i]` of `h`) preserves adjacency
/// and non-adjacency.
pub fn is_isomorphism(g: &Graph, h: &Graph, map: &[usize]) -> bool {
    let n = g.order();
    if h.order() != n || map.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &y in map {
        if y >= n || core::mem::replace(&mut seen[y], true) {
            return false;
        }
    }
    (0..n).all(|i| (i + 1..n).all(|j| g.adjacent(i, j) == h.adjacent(map[i], map[j])))
}

/// Cheap invariants that decide non-isomorphism without search.
pub fn invariant_mismatch(g: &Graph, h: &Graph) -> Option<&'static str> {
    if g.order() != h.order() {
        return Some("vertex counts differ");
    }
    if g.edge_count() != h.edge_count() {
        return Some("edge counts differ");
    }
    if g.degree_sequence() != h.degree_sequence() {
        return Some("degree sequences differ");
    }
    match (g.srg_params(), h.srg_params()) {
        (Ok(a), Ok(b)) if a != b => Some("strongly regular parameters differ"),
        (Ok(_), Err(_)) | (Err(_), Ok(_)) => Some("only one graph is strongly regular"),
        _ => None,
    }
}

/// An explicit vertex bijection from `g` onto `h`.
pub fn isomorphism(g: &Graph, h: &Graph, max_vertices: usize) -> Result<Vec<usize>, Error> {
    for n in [g.order(), h.order()] {
        if n > max_vertices {
            return Err(Error::BoundExceeded {
                what: "isomorphism test vertices",
                size: n as u64,
                limit: max_vertices as u64,
            });
        }
    }
    if let Some(reason) = invariant_mismatch(g, h) {
        return Err(Error::NotIsomorphic(reason));
    }
    let pair = Pair { g, h, g_adj: adjacency_lists(g), h_adj: adjacency_lists(h) };
    let n = g.order();
    pair.search(vec![0; n], vec![0; n]).ok_or(Error::NotIsomorphic("search exhausted"))
}

/// [`isomorphism`] with the default vertex bound.
pub fn isomorphic(g: &Graph, h: &Graph) -> Result<Vec<usize>, Error> {
    isomorphism(g, h, DEFAULT_MAX_ISO_VERTICES)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::ChaCha8Rng;
    use rand_core::{RngCore, SeedableRng};

    fn shuffled(n: usize, seed: u64) -> Vec<usize> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut p: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = (rng.next_u64() % (i as u64 + 1)) as usize;
            p.swap(i, j);
        }
        p
    }

    fn petersen() -> Graph {
        // Kneser graph K(5,2): 2-subsets adjacent when disjoint.
        let pairs: Vec<(usize, usize)> =
            (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
        Graph::from_fn(10, |i, j| {
            let (a, b) = pairs[i];
            let (c, d) = pairs[j];
            a != c && a != d && b != c && b != d
        })
    }

    #[test]
    fn relabelled_graph_is_found() {
        let g = petersen();
        for seed in 0..5 {
            let perm = shuffled(10, seed);
            let h = g.relabel(&perm);
            let map = isomorphic(&g, &h).unwrap();
            assert!(is_isomorphism(&g, &h, &map));
        }
    }

    #[test]
    fn invariants_short_circuit() {
        let g = petersen();
        assert_eq!(isomorphic(&g, &g.complement()), Err(Error::NotIsomorphic("edge counts differ")));
        let small = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(isomorphic(&g, &small), Err(Error::NotIsomorphic("vertex counts differ")));
    }

    #[test]
    fn regular_non_isomorphic_graphs() {
        // C8 versus two 4-cycles: same degree sequence, refinement alone is stuck.
        let c8 = Graph::from_fn(8, |i, j| j - i == 1 || j - i == 7);
        let two_c4 = Graph::from_fn(8, |i, j| i / 4 == j / 4 && (j - i) % 2 == 1);
        assert_eq!(isomorphic(&c8, &two_c4), Err(Error::NotIsomorphic("search exhausted")));
    }

    #[test]
    fn bound_is_enforced() {
        let g = Graph::empty(12);
        assert!(matches!(isomorphism(&g, &g, 10), Err(Error::BoundExceeded { .. })));
    }
}

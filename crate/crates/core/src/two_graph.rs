//! Two-graphs of graphs, regularity, descendants and switching equivalence.
//!
//! A triple of vertices is a block when it spans an odd number of edges.
//! This is the obtuse-angle reading for Gram matrices whose adjacent pairs
//! carry the negative inner product.

use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::graph::Graph;
use crate::iso::isomorphism;
use crate::Error;

/// Exhaustive two-graph axiom checks up to this many vertices.
pub const EXHAUSTIVE_AXIOM_LIMIT: usize = 60;
const AXIOM_SAMPLES: usize = 200_000;
pub const DEFAULT_MAX_SWITCHING_VERTICES: usize = 140;

fn binom(n: usize, k: usize) -> usize {
    match k {
        1 => n,
        2 => n * n.saturating_sub(1) / 2,
        3 => n * n.saturating_sub(1) * n.saturating_sub(2) / 6,
        _ => unreachable!(),
    }
}

fn sort3(mut t: [usize; 3]) -> [usize; 3] {
    t.sort_unstable();
    t
}

/// Triple system stored as one bit per 3-subset in combinatorial order.
#[derive(Clone, PartialEq, Eq)]
pub struct TwoGraph {
    n: usize,
    bits: Vec<u64>,
}

impl core::fmt::Debug for TwoGraph {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("TwoGraph").field("n", &self.n).field("blocks", &self.block_count()).finish()
    }
}

impl TwoGraph {
    fn index(t: [usize; 3]) -> usize {
        let [a, b, c] = sort3(t);
        a + binom(b, 2) + binom(c, 3)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn is_block(&self, a: usize, b: usize, c: usize) -> bool {
        let i = Self::index([a, b, c]);
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn block_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Number of blocks containing both `x` and `y`.
    pub fn pair_count(&self, x: usize, y: usize) -> usize {
        (0..self.n).filter(|&z| z != x && z != y && self.is_block(x, y, z)).count()
    }

    /// The constant `a` such that every pair lies in exactly `a` blocks.
    pub fn is_regular(&self) -> Result<usize, Error> {
        if self.n < 3 {
            return Ok(0);
        }
        let a = self.pair_count(0, 1);
        for x in 0..self.n {
            for y in x + 1..self.n {
                if self.pair_count(x, y) != a {
                    return Err(Error::NotRegular(x, y));
                }
            }
        }
        Ok(a)
    }

    fn four_set_ok(&self, q: [usize; 4]) -> bool {
        let [a, b, c, d] = q;
        let blocks = self.is_block(a, b, c) as u8
            + self.is_block(a, b, d) as u8
            + self.is_block(a, c, d) as u8
            + self.is_block(b, c, d) as u8;
        blocks % 2 == 0
    }

    /// Checks that every 4-set contains an even number of blocks, exhaustively
    /// up to [`EXHAUSTIVE_AXIOM_LIMIT`] vertices and on seeded random 4-sets
    /// above. Returns a violating 4-set if one is found.
    pub fn axiom_violation(&self, seed: u64) -> Option<[usize; 4]> {
        let n = self.n;
        if n < 4 {
            return None;
        }
        if n <= EXHAUSTIVE_AXIOM_LIMIT {
            for a in 0..n {
                for b in a + 1..n {
                    for c in b + 1..n {
                        for d in c + 1..n {
                            if !self.four_set_ok([a, b, c, d]) {
                                return Some([a, b, c, d]);
                            }
                        }
                    }
                }
            }
            return None;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..AXIOM_SAMPLES {
            let mut q = [0usize; 4];
            let mut filled = 0;
            while filled < 4 {
                let x = (rng.next_u64() % n as u64) as usize;
                if !q[..filled].contains(&x) {
                    q[filled] = x;
                    filled += 1;
                }
            }
            q.sort_unstable();
            if !self.four_set_ok(q) {
                return Some(q);
            }
        }
        None
    }
}

/// Blocks are the triples spanning an odd number of edges.
pub fn two_graph_of(g: &Graph) -> TwoGraph {
    let n = g.order();
    let mut bits = vec![0u64; binom(n, 3).div_ceil(64)];
    for c in 2..n {
        for b in 1..c {
            let bc = g.adjacent(b, c) as u8;
            let base = binom(b, 2) + binom(c, 3);
            for a in 0..b {
                if (g.adjacent(a, b) as u8 + g.adjacent(a, c) as u8 + bc) % 2 == 1 {
                    let i = a + base;
                    bits[i / 64] |= 1 << (i % 64);
                }
            }
        }
    }
    TwoGraph { n, bits }
}

/// Number of blocks of the two-graph of `g` through the pair `{x, y}`,
/// computed from adjacency rows without building the triple table.
pub fn graph_pair_count(g: &Graph, x: usize, y: usize) -> usize {
    let differ: usize =
        g.row(x).iter().zip(g.row(y)).map(|(a, b)| (a ^ b).count_ones() as usize).sum();
    if g.adjacent(x, y) {
        // z = x and z = y both differ; a block then needs a_xz = a_yz.
        g.order() - 2 - (differ - 2)
    } else {
        differ
    }
}

/// Regularity constant of the two-graph of `g`.
pub fn regular_constant(g: &Graph) -> Result<usize, Error> {
    let n = g.order();
    if n < 3 {
        return Ok(0);
    }
    let a = graph_pair_count(g, 0, 1);
    for x in 0..n {
        for y in x + 1..n {
            if graph_pair_count(g, x, y) != a {
                return Err(Error::NotRegular(x, y));
            }
        }
    }
    Ok(a)
}

/// Sorted pair counts, a switching invariant.
pub fn pair_count_profile(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut out = Vec::with_capacity(binom(n, 2));
    for x in 0..n {
        for y in x + 1..n {
            out.push(graph_pair_count(g, x, y));
        }
    }
    out.sort_unstable();
    out
}

/// Switches `g` so that `x` becomes isolated, then deletes `x`.
pub fn isolate_and_delete(g: &Graph, x: usize) -> Graph {
    let nbrs: Vec<usize> = g.neighbors(x).collect();
    g.switch(&nbrs).delete_vertex(x)
}

/// Descendant of the regular two-graph of `g` at vertex `x`.
pub fn descendant_at(g: &Graph, x: usize) -> Result<Graph, Error> {
    if x >= g.order() {
        return Err(Error::Invalid(alloc::format!("vertex {x} out of range")));
    }
    regular_constant(g)?;
    Ok(isolate_and_delete(g, x))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Switching {
    /// `map` sends vertex `0` of `G` to `w` and carries the two-graph of `G`
    /// onto that of `H`.
    Equivalent { w: usize, map: Vec<usize> },
    NotEquivalent(&'static str),
}

/// Decides whether `g` and `h` lie in the same switching class, by comparing
/// `g` isolated at vertex 0 with `h` isolated at each of its vertices.
pub fn switching_equivalent(g: &Graph, h: &Graph, max_vertices: usize) -> Result<Switching, Error> {
    let n = g.order();
    if h.order() != n {
        return Err(Error::SizeMismatch(n, h.order()));
    }
    if n > max_vertices {
        return Err(Error::BoundExceeded {
            what: "switching test vertices",
            size: n as u64,
            limit: max_vertices as u64,
        });
    }
    if pair_count_profile(g) != pair_count_profile(h) {
        return Ok(Switching::NotEquivalent("two-graph pair statistics differ"));
    }
    let g0 = isolate_and_delete(g, 0);
    for w in 0..n {
        let hw = isolate_and_delete(h, w);
        match isomorphism(&g0, &hw, max_vertices) {
            Ok(inner) => {
                let h_rest: Vec<usize> = (0..n).filter(|&y| y != w).collect();
                let mut map = vec![w];
                map.extend(inner.iter().map(|&j| h_rest[j]));
                return Ok(Switching::Equivalent { w, map });
            }
            Err(Error::NotIsomorphic(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(Switching::NotEquivalent("no isolated representative of the second graph matches"))
}

/// Whether `map` carries every triple's block status in `g` to `h`.
pub fn preserves_two_graph(g: &Graph, h: &Graph, map: &[usize]) -> bool {
    let (tg, th) = (two_graph_of(g), two_graph_of(h));
    let n = g.order();
    (0..n).all(|a| {
        (a + 1..n).all(|b| {
            (b + 1..n).all(|c| tg.is_block(a, b, c) == th.is_block(map[a], map[b], map[c]))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build, Family, FamilySpec};

    fn path4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap()
    }

    /// Oracle: triple parity straight from the definition.
    fn is_block_direct(g: &Graph, a: usize, b: usize, c: usize) -> bool {
        (g.adjacent(a, b) as u8 + g.adjacent(a, c) as u8 + g.adjacent(b, c) as u8) % 2 == 1
    }

    #[test]
    fn edgeless_graph_has_no_blocks() {
        let t = two_graph_of(&Graph::empty(7));
        assert_eq!(t.block_count(), 0);
        assert_eq!(t.is_regular(), Ok(0));
    }

    #[test]
    fn table_matches_definition() {
        let g = build(FamilySpec::new(Family::Paley, 13)).unwrap();
        let t = two_graph_of(&g);
        for a in 0..13 {
            for b in a + 1..13 {
                assert_eq!(t.pair_count(a, b), graph_pair_count(&g, a, b));
                for c in b + 1..13 {
                    assert_eq!(t.is_block(c, a, b), is_block_direct(&g, a, b, c));
                }
            }
        }
        assert_eq!(t.axiom_violation(0), None);
    }

    #[test]
    fn path_is_not_regular() {
        let t = two_graph_of(&path4());
        assert!(matches!(t.is_regular(), Err(Error::NotRegular(..))));
        assert!(matches!(regular_constant(&path4()), Err(Error::NotRegular(..))));
    }

    #[test]
    fn switching_preserves_two_graph() {
        let g = build(FamilySpec::new(Family::Paley, 5)).unwrap().with_isolated_vertex();
        let nbrs: Vec<usize> = g.neighbors(1).collect();
        assert_eq!(two_graph_of(&g.switch(&nbrs)), two_graph_of(&g));
        assert_eq!(two_graph_of(&g.switch(&[0, 2, 3])), two_graph_of(&g));
    }

    #[test]
    fn no6_plus_descendants() {
        let g = build(FamilySpec::new(Family::NoPlus2n2, 3)).unwrap();
        assert!(two_graph_of(&g).is_regular().is_ok());
        let d = descendant_at(&g, 0).unwrap();
        assert_eq!(d.srg_params().unwrap(), crate::SrgParams::new(27, 10, 1, 5));
        assert!(descendant_at(&path4(), 0).is_err());
    }

    #[test]
    fn switching_class_is_recognised() {
        let g = build(FamilySpec::new(Family::Paley, 9)).unwrap().with_isolated_vertex();
        let h = g.switch(&[1, 4, 7]).relabel(&[3, 1, 4, 0, 5, 9, 2, 6, 8, 7]);
        match switching_equivalent(&g, &h, 140).unwrap() {
            Switching::Equivalent { map, .. } => assert!(preserves_two_graph(&g, &h, &map)),
            other => panic!("{other:?}"),
        }
        let c6 = Graph::from_fn(6, |i, j| j - i == 1 || j - i == 5);
        assert_eq!(switching_equivalent(&c6, &Graph::empty(5), 140), Err(Error::SizeMismatch(6, 5)));
    }

    #[test]
    fn axiom_sampling_above_the_exhaustive_limit() {
        let g = build(FamilySpec::new(Family::Paley, 61)).unwrap().with_isolated_vertex();
        assert_eq!(two_graph_of(&g).axiom_violation(7), None);
    }
}

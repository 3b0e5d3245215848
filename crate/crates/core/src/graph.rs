//! Simple graphs as packed symmetric bit matrices.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::ExactMatrix;
use crate::spectrum::SrgParams;
use crate::Error;

/// Equality compares adjacency only; labels are ignored.
#[derive(Clone)]
pub struct Graph {
    v: usize,
    words: usize,
    bits: Vec<u64>,
    label: Option<String>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v && self.bits == other.bits
    }
}

impl Eq for Graph {}

impl core::fmt::Debug for Graph {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Graph")
            .field("v", &self.v)
            .field("edges", &self.edge_count())
            .field("label", &self.label)
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `v` vertices.
    pub fn empty(v: usize) -> Self {
        let words = v.div_ceil(64);
        Self { v, words, bits: vec![0; v * words], label: None }
    }

    /// Graph with `i ~ j` iff `adjacent(i, j)` for `i < j`.
    pub fn from_fn(v: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Self::empty(v);
        for i in 0..v {
            for j in i + 1..v {
                if adjacent(i, j) {
                    g.set(i, j, true);
                }
            }
        }
        g
    }

    pub fn from_edges(v: usize, edges: &[(usize, usize)]) -> Result<Self, Error> {
        if v < 2 {
            return Err(Error::Invalid(String::from("a graph needs at least two vertices")));
        }
        let mut g = Self::empty(v);
        for &(a, b) in edges {
            if a >= v || b >= v || a == b {
                return Err(Error::Invalid(alloc::format!("bad edge ({a}, {b})")));
            }
            g.set(a, b, true);
        }
        Ok(g)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn order(&self) -> usize {
        self.v
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, on: bool) {
        let (wi, bi) = (i * self.words + j / 64, 1u64 << (j % 64));
        let (wj, bj) = (j * self.words + i / 64, 1u64 << (i % 64));
        if on {
            self.bits[wi] |= bi;
            self.bits[wj] |= bj;
        } else {
            self.bits[wi] &= !bi;
            self.bits[wj] &= !bj;
        }
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    /// Packed adjacency row of `i`.
    pub fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.v).filter(move |&j| self.adjacent(i, j))
    }

    /// Number of common neighbours of `i` and `j`.
    pub fn common(&self, i: usize, j: usize) -> usize {
        self.row(i).iter().zip(self.row(j)).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    /// Sorted edge list with `a < b`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.v {
            for j in i + 1..self.v {
                if self.adjacent(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        (0..self.v).map(|i| self.degree(i)).sum::<usize>() / 2
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.v).map(|i| self.degree(i)).collect();
        d.sort_unstable();
        d
    }

    pub fn complement(&self) -> Self {
        let mut g = Self::from_fn(self.v, |i, j| !self.adjacent(i, j));
        g.label = self.label.as_ref().map(|l| alloc::format!("complement of {l}"));
        g
    }

    /// Seidel switching: complements every edge between `set` and the rest.
    pub fn switch(&self, set: &[usize]) -> Self {
        let mut inside = vec![false; self.v];
        for &x in set {
            inside[x] = true;
        }
        Self::from_fn(self.v, |i, j| self.adjacent(i, j) ^ (inside[i] != inside[j]))
    }

    pub fn delete_vertex(&self, x: usize) -> Self {
        let keep: Vec<usize> = (0..self.v).filter(|&i| i != x).collect();
        self.induced(&keep)
    }

    pub fn induced(&self, vertices: &[usize]) -> Self {
        Self::from_fn(vertices.len(), |i, j| self.adjacent(vertices[i], vertices[j]))
    }

    /// Disjoint union with an isolated vertex placed first.
    pub fn with_isolated_vertex(&self) -> Self {
        let mut g = Self::from_fn(self.v + 1, |i, j| i > 0 && self.adjacent(i - 1, j - 1));
        g.label = self.label.as_ref().map(|l| alloc::format!("K1 + {l}"));
        g
    }

    /// The graph with old vertex `i` renamed `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let mut g = Self::empty(self.v);
        for (a, b) in self.edges() {
            g.set(perm[a], perm[b], true);
        }
        g.label = self.label.clone();
        g
    }

    pub fn adjacency_matrix(&self) -> ExactMatrix {
        let values: Vec<i64> =
            (0..self.v * self.v).map(|t| self.adjacent(t / self.v, t % self.v) as i64).collect();
        ExactMatrix::from_ints(self.v, self.v, &values).expect("integer entries")
    }

    /// Certifies `A² = kI + λA + μĀ` entry by entry; `A²[i][j]` is the
    /// common-neighbour count. Reports the first violating pair in row-major
    /// order (a diagonal pair signals irregularity).
    pub fn srg_params(&self) -> Result<SrgParams, Error> {
        let v = self.v;
        if v < 2 {
            return Err(Error::NotStronglyRegular(0, 0));
        }
        let k = self.degree(0);
        let mut lambda = None;
        let mut mu = None;
        for i in 0..v {
            if self.degree(i) != k {
                return Err(Error::NotStronglyRegular(i, i));
            }
            for j in i + 1..v {
                let c = self.common(i, j);
                let slot = if self.adjacent(i, j) { &mut lambda } else { &mut mu };
                match *slot {
                    None => *slot = Some(c),
                    Some(x) if x == c => {}
                    Some(_) => return Err(Error::NotStronglyRegular(i, j)),
                }
            }
        }
        Ok(SrgParams::new(v as u64, k as u64, lambda.unwrap_or(0) as u64, mu.unwrap_or(0) as u64))
    }
}

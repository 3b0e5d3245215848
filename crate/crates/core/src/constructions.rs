//! Builders for the graph families, each checked against its closed-form
//! parameters before being returned.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::field::{prime_power, FieldSpec, MAX_FIELD_ORDER};
use crate::geometry::{
    enumerate, nullspace, standard_space, FormKind, QuadraticSpace, RestrictionClass,
    RestrictionClassifier, Selector,
};
use crate::graph::Graph;
use crate::spectrum::SrgParams;
use crate::{Error, Limits};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    NoPlus2n2,
    NoMinus2n2Comp,
    NoPlusOdd4,
    NoMinusOdd4Comp,
    VoPlus,
    VoMinusComp,
    G22Comp,
    M22Comp,
    Paley,
    Peisert,
    Triangular,
    Lattice,
    Sp2n2,
    OPlus2n2,
    OMinus2n2,
}

/// Which table a family feeds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    Table3,
    Table4,
    /// Used only in isomorphism cross-checks.
    CrossCheck,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Table3 => "table3",
            Self::Table4 => "table4",
            Self::CrossCheck => "cross-check",
        }
    }
}

impl Family {
    /// Registry order.
    pub const ALL: [Family; 15] = [
        Family::NoPlus2n2,
        Family::NoMinus2n2Comp,
        Family::NoPlusOdd4,
        Family::NoMinusOdd4Comp,
        Family::VoPlus,
        Family::VoMinusComp,
        Family::G22Comp,
        Family::M22Comp,
        Family::Paley,
        Family::Peisert,
        Family::Triangular,
        Family::Lattice,
        Family::Sp2n2,
        Family::OPlus2n2,
        Family::OMinus2n2,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Self::NoPlus2n2 => "NOplus2n_2",
            Self::NoMinus2n2Comp => "NOminus2n_2_comp",
            Self::NoPlusOdd4 => "NOplusOdd_4",
            Self::NoMinusOdd4Comp => "NOminusOdd_4_comp",
            Self::VoPlus => "VOplus",
            Self::VoMinusComp => "VOminus_comp",
            Self::G22Comp => "G2_2_comp",
            Self::M22Comp => "M22_comp",
            Self::Paley => "Paley",
            Self::Peisert => "Peisert",
            Self::Triangular => "Triangular",
            Self::Lattice => "Lattice",
            Self::Sp2n2 => "Sp2n_2",
            Self::OPlus2n2 => "Oplus2n_2",
            Self::OMinus2n2 => "Ominus2n_2",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.id().eq_ignore_ascii_case(id))
    }

    /// Conventional name with the size parameter left symbolic.
    pub fn name(self) -> &'static str {
        match self {
            Self::NoPlus2n2 => "NO+_{2n}(2)",
            Self::NoMinus2n2Comp => "complement of NO-_{2n}(2)",
            Self::NoPlusOdd4 => "NO+_{2n+1}(4)",
            Self::NoMinusOdd4Comp => "complement of NO-_{2n+1}(4)",
            Self::VoPlus => "VO+_{2n}(2)",
            Self::VoMinusComp => "complement of VO-_{2n}(2)",
            Self::G22Comp => "complement of G2(2)",
            Self::M22Comp => "complement of M22",
            Self::Paley => "P(q)",
            Self::Peisert => "P*(q)",
            Self::Triangular => "T(n)",
            Self::Lattice => "L2(m)",
            Self::Sp2n2 => "Sp_{2n}(2)",
            Self::OPlus2n2 => "O+_{2n}(2)",
            Self::OMinus2n2 => "O-_{2m}(2)",
        }
    }

    /// Name of the size parameter, `None` for sporadic graphs.
    pub fn size_name(self) -> Option<&'static str> {
        match self {
            Self::G22Comp | Self::M22Comp => None,
            Self::Paley | Self::Peisert => Some("q"),
            Self::Lattice | Self::OMinus2n2 => Some("m"),
            _ => Some("n"),
        }
    }

    pub fn provenance(self) -> Provenance {
        match self {
            Self::NoPlus2n2
            | Self::NoMinus2n2Comp
            | Self::NoPlusOdd4
            | Self::NoMinusOdd4Comp
            | Self::VoPlus
            | Self::VoMinusComp
            | Self::G22Comp
            | Self::M22Comp => Provenance::Table3,
            Self::Paley | Self::Peisert | Self::Sp2n2 | Self::OPlus2n2 | Self::OMinus2n2 => {
                Provenance::Table4
            }
            Self::Triangular | Self::Lattice => Provenance::CrossCheck,
        }
    }

    /// Smallest admissible size.
    pub fn min_size(self) -> u32 {
        match self {
            Self::NoPlus2n2 | Self::OMinus2n2 | Self::Lattice => 3,
            Self::NoPlusOdd4 | Self::G22Comp | Self::M22Comp => 1,
            Self::Paley | Self::Triangular => 5,
            Self::Peisert => 9,
            _ => 2,
        }
    }

    /// Largest size built by default.
    pub fn default_max_size(self) -> u32 {
        match self {
            Self::NoPlus2n2 => 5,
            Self::NoMinus2n2Comp => 4,
            Self::NoPlusOdd4 | Self::NoMinusOdd4Comp => 2,
            Self::VoPlus | Self::VoMinusComp => 4,
            Self::G22Comp | Self::M22Comp => 1,
            Self::Paley | Self::Peisert => 121,
            Self::Triangular | Self::Lattice => 10,
            Self::Sp2n2 | Self::OPlus2n2 => 4,
            Self::OMinus2n2 => 5,
        }
    }

    pub fn is_sporadic(self) -> bool {
        self.size_name().is_none()
    }

    /// Admissible sizes in `min_size..=max`, increasing.
    pub fn sizes_up_to(self, max: u32) -> Vec<u32> {
        if self.is_sporadic() {
            return vec![1];
        }
        (self.min_size()..=max).filter(|&s| self.check_size(s).is_ok()).collect()
    }

    fn out_of_range(self, reason: impl Into<String>) -> Error {
        Error::OutOfRange { family: self.id(), reason: reason.into() }
    }

    pub fn check_size(self, size: u32) -> Result<(), Error> {
        if self.is_sporadic() {
            return Ok(());
        }
        if size < self.min_size() {
            return Err(self.out_of_range(format!("size must be at least {}", self.min_size())));
        }
        match self {
            Self::Paley => {
                if prime_power(size as u64).is_none() || size % 4 != 1 || size > MAX_FIELD_ORDER {
                    return Err(self.out_of_range("q must be a prime power with q ≡ 1 (mod 4)"));
                }
            }
            Self::Peisert => match prime_power(size as u64) {
                Some((p, e)) if p % 4 == 3 && e % 2 == 0 && size <= MAX_FIELD_ORDER => {}
                _ => return Err(self.out_of_range("q must be an even power of a prime p ≡ 3 (mod 4)")),
            },
            // Keep every closed form well inside u64.
            _ if size > 14 && !matches!(self, Self::Triangular | Self::Lattice) => {
                return Err(self.out_of_range("size too large"));
            }
            _ if size > 1 << 16 => return Err(self.out_of_range("size too large")),
            _ => {}
        }
        Ok(())
    }

    /// Closed-form parameters of the family member of the given size.
    pub fn expected_params(self, size: u32) -> Result<SrgParams, Error> {
        self.check_size(size)?;
        let n = size;
        let p2 = |e: u32| 1u64 << e;
        let p4 = |e: u32| 1u64 << (2 * e);
        let q = size as u64;
        let params = match self {
            Self::NoPlus2n2 => SrgParams::new(
                p2(n - 1) * (p2(n) - 1),
                p2(2 * n - 2) - 1,
                p2(2 * n - 3) - 2,
                p2(n - 2) * (p2(n - 1) + 1),
            ),
            Self::NoMinus2n2Comp => SrgParams::new(
                p2(n - 1) * (p2(n) + 1),
                p2(n - 1) * (p2(n - 1) + 1),
                p2(n - 2) * (p2(n - 1) + 1),
                p2(n - 1) * (p2(n - 2) + 1),
            ),
            Self::NoPlusOdd4 => SrgParams::new(
                p4(n) * (p4(n) + 1) / 2,
                (p4(n - 1) + 1) * (p4(n) - 1),
                (p4(n - 1) + 2) * (p4(n) - 2) / 2,
                p4(n) * (p4(n - 1) + 1) / 2,
            ),
            Self::NoMinusOdd4Comp => SrgParams::new(
                p4(n) * (p4(n) - 1) / 2,
                p4(n - 1) * (p4(n) + 1),
                p4(n) * (p4(n - 1) + 1) / 2,
                p4(n - 1) * (p4(n) + 2) / 2,
            ),
            Self::VoPlus => SrgParams::new(
                p2(2 * n),
                (p2(n - 1) + 1) * (p2(n) - 1),
                (p2(n - 1) + 2) * (p2(n - 1) - 1),
                p2(n - 1) * (p2(n - 1) + 1),
            ),
            Self::VoMinusComp => SrgParams::new(
                p2(2 * n),
                p2(n - 1) * (p2(n) + 1),
                p2(n - 1) * (p2(n - 1) + 1),
                p2(n - 1) * (p2(n - 1) + 1),
            ),
            Self::G22Comp => SrgParams::new(36, 21, 12, 12),
            Self::M22Comp => SrgParams::new(176, 105, 68, 54),
            Self::Paley | Self::Peisert => SrgParams::new(q, (q - 1) / 2, (q - 5) / 4, (q - 1) / 4),
            Self::Triangular => SrgParams::new(q * (q - 1) / 2, 2 * (q - 2), q - 2, 4),
            Self::Lattice => SrgParams::new(q * q, 2 * (q - 1), q - 2, 2),
            Self::Sp2n2 => SrgParams::new(
                p2(2 * n) - 1,
                p2(2 * n - 1) - 2,
                p2(2 * n - 2) - 3,
                p2(2 * n - 2) - 1,
            ),
            Self::OPlus2n2 => {
                let v = (p2(n) - 1) * (p2(n - 1) + 1);
                let mu = (p2(n - 1) - 1) * (p2(n - 2) + 1);
                with_lambda_from_feasibility(v, 2 * mu, mu)
            }
            Self::OMinus2n2 => {
                let v = (p2(n) + 1) * (p2(n - 1) - 1);
                let mu = (p2(n - 1) + 1) * (p2(n - 2) - 1);
                with_lambda_from_feasibility(v, 2 * mu, mu)
            }
        };
        Ok(params)
    }
}

/// `λ = k − 1 − (v − k − 1)μ / k`.
fn with_lambda_from_feasibility(v: u64, k: u64, mu: u64) -> SrgParams {
    SrgParams::new(v, k, k - 1 - (v - k - 1) * mu / k, mu)
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// A family together with its size parameter (ignored for sporadic graphs).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub family: Family,
    pub size: u32,
}

impl FamilySpec {
    pub fn new(family: Family, size: u32) -> Self {
        let size = if family.is_sporadic() { 1 } else { size };
        Self { family, size }
    }

    pub fn sporadic(family: Family) -> Self {
        Self::new(family, 1)
    }

    pub fn expected_params(&self) -> Result<SrgParams, Error> {
        self.family.expected_params(self.size)
    }

    /// Human-readable label, for example `NOplus2n_2(n=3)`.
    pub fn label(&self) -> String {
        match self.family.size_name() {
            Some(name) => format!("{}({}={})", self.family.id(), name, self.size),
            None => String::from(self.family.id()),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Builds the graph with default limits.
pub fn build(spec: FamilySpec) -> Result<Graph, Error> {
    build_with(spec, &Limits::default())
}

pub fn build_with(spec: FamilySpec, limits: &Limits) -> Result<Graph, Error> {
    let expected = spec.expected_params()?;
    if expected.v > limits.max_vertices as u64 {
        return Err(Error::BoundExceeded {
            what: "graph vertices",
            size: expected.v,
            limit: limits.max_vertices as u64,
        });
    }
    let g = raw_build(spec, limits.max_ambient_vectors)?;
    let found = g.srg_params()?;
    if found != expected {
        return Err(Error::ParameterMismatch { family: spec.family.id(), expected, found });
    }
    Ok(g.with_label(spec.label()))
}

fn gf(q: u32) -> FieldSpec {
    FieldSpec::of_order(q).expect("family fields are valid")
}

fn raw_build(spec: FamilySpec, max_ambient: u64) -> Result<Graph, Error> {
    let n = spec.size as usize;
    let g = match spec.family {
        Family::NoPlus2n2 => nonsingular_point_graph(&standard_space(&gf(2), 2 * n, FormKind::Plus)?, true, max_ambient)?,
        Family::NoMinus2n2Comp => {
            nonsingular_point_graph(&standard_space(&gf(2), 2 * n, FormKind::Minus)?, false, max_ambient)?
        }
        Family::NoPlusOdd4 => hyperplane_graph(n, RestrictionClass::Hyperbolic, max_ambient)?,
        Family::NoMinusOdd4Comp => hyperplane_graph(n, RestrictionClass::Elliptic, max_ambient)?,
        Family::VoPlus => vector_graph(&standard_space(&gf(2), 2 * n, FormKind::Plus)?, true, max_ambient)?,
        Family::VoMinusComp => vector_graph(&standard_space(&gf(2), 2 * n, FormKind::Minus)?, false, max_ambient)?,
        Family::G22Comp => g2_2_complement(),
        Family::M22Comp => m22_complement()?,
        Family::Paley => {
            let f = gf(spec.size);
            Graph::from_fn(spec.size as usize, |i, j| f.is_nonzero_square(f.sub(j as u32, i as u32)))
        }
        Family::Peisert => {
            let f = gf(spec.size);
            Graph::from_fn(spec.size as usize, |i, j| {
                f.log(f.sub(j as u32, i as u32)).is_some_and(|l| l % 4 <= 1)
            })
        }
        Family::Triangular => {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
            Graph::from_fn(pairs.len(), |i, j| {
                let (a, b) = pairs[i];
                let (c, d) = pairs[j];
                a == c || a == d || b == c || b == d
            })
        }
        Family::Lattice => Graph::from_fn(n * n, |i, j| i / n == j / n || i % n == j % n),
        Family::Sp2n2 => {
            let space = standard_space(&gf(2), 2 * n, FormKind::Plus)?;
            let size = space.ambient_size();
            if size > max_ambient {
                return Err(Error::BoundExceeded { what: "ambient vectors", size, limit: max_ambient });
            }
            let vectors: Vec<Vec<u32>> = (1..size).map(|i| space.vector(i)).collect();
            orthogonality_graph(&space, &vectors, true)
        }
        Family::OPlus2n2 | Family::OMinus2n2 => {
            let kind = if spec.family == Family::OPlus2n2 { FormKind::Plus } else { FormKind::Minus };
            let space = standard_space(&gf(2), 2 * n, kind)?;
            let points = enumerate(&space, Selector::SingularPoints, max_ambient)?;
            orthogonality_graph(&space, &points, true)
        }
    };
    Ok(g)
}

/// Vertices adjacent iff `B(x, y) = 0` (or `≠ 0` when `orthogonal` is false).
fn orthogonality_graph(space: &QuadraticSpace, points: &[Vec<u32>], orthogonal: bool) -> Graph {
    Graph::from_fn(points.len(), |i, j| (space.polar(&points[i], &points[j]) == 0) == orthogonal)
}

fn nonsingular_point_graph(space: &QuadraticSpace, orthogonal: bool, max_ambient: u64) -> Result<Graph, Error> {
    let points = enumerate(space, Selector::NonsingularPoints, max_ambient)?;
    Ok(orthogonality_graph(space, &points, orthogonal))
}

/// All vectors, adjacent iff `q(x + y) = 0` (or `≠ 0` when `isotropic` is false).
fn vector_graph(space: &QuadraticSpace, isotropic: bool, max_ambient: u64) -> Result<Graph, Error> {
    let size = space.ambient_size();
    if size > max_ambient {
        return Err(Error::BoundExceeded { what: "ambient vectors", size, limit: max_ambient });
    }
    let vectors: Vec<Vec<u32>> = (0..size).map(|i| space.vector(i)).collect();
    Ok(Graph::from_fn(vectors.len(), |i, j| {
        (space.eval(&space.add_vectors(&vectors[i], &vectors[j])) == 0) == isotropic
    }))
}

/// Nonsingular hyperplanes of the given class in the parabolic space
/// `F_4^{2n+1}`. Hyperbolic hyperplanes are adjacent when their intersection
/// carries a degenerate form, elliptic ones when it carries a nondegenerate one.
fn hyperplane_graph(n: usize, class: RestrictionClass, max_ambient: u64) -> Result<Graph, Error> {
    let dim = 2 * n + 1;
    let space = standard_space(&gf(4), dim, FormKind::Parabolic)?;
    let field = space.field().clone();
    let classifier = RestrictionClassifier::new(&field, dim - 1, max_ambient)?;
    let mut vertices = Vec::new();
    for h in enumerate(&space, Selector::Hyperplanes, max_ambient)? {
        let basis = nullspace(&field, core::slice::from_ref(&h), dim);
        if classifier.classify(&space, &basis)? == class {
            vertices.push(h);
        }
    }
    let want_degenerate = class == RestrictionClass::Hyperbolic;
    let mut err = None;
    let g = Graph::from_fn(vertices.len(), |i, j| {
        let basis = nullspace(&field, &[vertices[i].clone(), vertices[j].clone()], dim);
        match classifier.classify(&space, &basis) {
            Ok(c) => c.is_degenerate() == want_degenerate,
            Err(e) => {
                err.get_or_insert(e);
                false
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(g),
    }
}

/// Points, lines and flags of the Fano plane with lines `{i, i+1, i+3} mod 7`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fano {
    pub lines: Vec<[usize; 3]>,
    /// Incident `(point, line)` pairs in lexicographic order.
    pub flags: Vec<(usize, usize)>,
}

impl Fano {
    pub const POINTS: usize = 7;

    pub fn incident(&self, point: usize, line: usize) -> bool {
        self.lines[line].contains(&point)
    }
}

pub fn fano_flags() -> Fano {
    let lines: Vec<[usize; 3]> = (0..7).map(|i| [i, (i + 1) % 7, (i + 3) % 7]).collect();
    let mut flags = Vec::new();
    for p in 0..7 {
        for (l, line) in lines.iter().enumerate() {
            if line.contains(&p) {
                flags.push((p, l));
            }
        }
    }
    Fano { lines, flags }
}

/// Vertex order: points 0–6, lines 7–13, flags 14–34, then `∞`.
fn g2_2_complement() -> Graph {
    let fano = fano_flags();
    #[derive(Clone, Copy)]
    enum V {
        Point(usize),
        Line(usize),
        Flag(usize, usize),
        Infinity,
    }
    let mut vs: Vec<V> = (0..7).map(V::Point).collect();
    vs.extend((0..7).map(V::Line));
    vs.extend(fano.flags.iter().map(|&(p, l)| V::Flag(p, l)));
    vs.push(V::Infinity);
    let adjacent = |a: V, b: V| match (a, b) {
        (V::Infinity, V::Flag(..)) => true,
        (V::Point(_), V::Point(_)) | (V::Line(_), V::Line(_)) => true,
        (V::Point(p), V::Line(l)) => fano.incident(p, l),
        (V::Point(p), V::Flag(_, m)) => !fano.incident(p, m),
        (V::Line(l), V::Flag(q, _)) => !fano.incident(q, l),
        (V::Flag(p, l), V::Flag(q, m)) => {
            p == q || l == m || (!fano.incident(p, m) && !fano.incident(q, l))
        }
        _ => false,
    };
    Graph::from_fn(vs.len(), |i, j| adjacent(vs[i], vs[j]) || adjacent(vs[j], vs[i]))
}

/// Quadratic residues modulo 23.
fn quadratic_residues_23() -> Vec<u32> {
    let mut r: Vec<u32> = (1..23).map(|x| x * x % 23).collect();
    r.sort_unstable();
    r.dedup();
    r
}

// GF(2)[x] polynomials as bit masks, bit i = coefficient of x^i.

fn poly_degree(a: u64) -> i32 {
    63 - a.leading_zeros() as i32
}

fn poly_mod(mut a: u64, b: u64) -> u64 {
    let db = poly_degree(b);
    while a != 0 && poly_degree(a) >= db {
        a ^= b << (poly_degree(a) - db);
    }
    a
}

fn poly_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = poly_mod(a, b);
        a = b;
        b = r;
    }
    a
}

fn poly_mul(a: u64, b: u64) -> u64 {
    let mut out = 0;
    for i in 0..64 {
        if b >> i & 1 == 1 {
            out ^= a << i;
        }
    }
    out
}

/// The 253 weight-7 words of the binary quadratic-residue code of length 23,
/// as 23-bit masks in increasing order.
pub fn golay_heptads() -> Result<Vec<u32>, Error> {
    let modulus = (1u64 << 23) | 1;
    let residues: u64 = quadratic_residues_23().iter().map(|&r| 1u64 << r).sum();
    let generator = [residues, residues | 1]
        .into_iter()
        .map(|e| poly_gcd(modulus, e))
        .find(|&g| poly_degree(g) == 11)
        .ok_or(Error::Internal("no degree-11 factor of x^23 - 1"))?;
    let mut heptads: Vec<u32> = (0u64..1 << 12)
        .map(|m| poly_mul(m, generator) as u32)
        .filter(|w| w.count_ones() == 7)
        .collect();
    heptads.sort_unstable();
    if heptads.len() != 253 {
        return Err(Error::Internal("wrong number of weight-7 codewords"));
    }
    Ok(heptads)
}

/// The 176 heptads avoiding point 0, as 22-bit masks on points 1..=22.
pub fn m22_blocks() -> Result<Vec<u32>, Error> {
    Ok(golay_heptads()?.into_iter().filter(|h| h & 1 == 0).map(|h| h >> 1).collect())
}

fn m22_complement() -> Result<Graph, Error> {
    let blocks = m22_blocks()?;
    Ok(Graph::from_fn(blocks.len(), |i, j| (blocks[i] & blocks[j]).count_ones() == 3))
}

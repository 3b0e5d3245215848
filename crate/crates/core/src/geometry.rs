//! Quadratic forms on `F_q^d`: standard forms, point enumeration and the
//! classification of restricted forms by counting singular vectors.
//!
//! Ambient vectors are addressed by an index in `0..q^d` whose base-`q`
//! digits are the coordinates with `x_1` most significant, so increasing
//! index order is lexicographic order on coordinate tuples.

use alloc::vec;
use alloc::vec::Vec;

use crate::field::FieldSpec;
use crate::Error;

/// Default cap on the number of ambient vectors enumerated.
pub const DEFAULT_MAX_AMBIENT: u64 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FormKind {
    /// Hyperbolic, maximal Witt index.
    Plus,
    /// Elliptic, Witt index one less than maximal.
    Minus,
    /// Odd dimension.
    Parabolic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selector {
    NonsingularPoints,
    SingularPoints,
    Hyperplanes,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RestrictionClass {
    Hyperbolic,
    Elliptic,
    /// Nondegenerate in odd dimension.
    Parabolic,
    Degenerate,
}

impl RestrictionClass {
    pub fn is_degenerate(self) -> bool {
        self == Self::Degenerate
    }
}

/// Number of nonzero singular vectors of a nondegenerate form.
pub fn singular_count(q: u64, dim: usize, kind: FormKind) -> Option<u64> {
    let n = (dim / 2) as u32;
    match kind {
        FormKind::Plus if dim % 2 == 0 && dim > 0 => {
            Some((q.pow(n) - 1) * (q.pow(n - 1) + 1))
        }
        FormKind::Minus if dim % 2 == 0 && dim > 0 => {
            Some((q.pow(n) + 1) * (q.pow(n - 1) - 1))
        }
        FormKind::Parabolic if dim % 2 == 1 => Some(q.pow(2 * n) - 1),
        _ => None,
    }
}

#[derive(Clone, Debug)]
pub struct QuadraticSpace {
    field: FieldSpec,
    dim: usize,
    /// `c_ij` for `i <= j`, row-major `dim × dim`; lower triangle is zero.
    coeffs: Vec<u32>,
    /// Symmetric Gram matrix of the polar form.
    polar: Vec<u32>,
    kind: FormKind,
}

impl QuadraticSpace {
    /// Wraps the form `q(x) = Σ_{i≤j} c_ij x_i x_j` and checks its declared type
    /// against the number of nonzero singular vectors.
    pub fn new(
        field: FieldSpec,
        dim: usize,
        coeffs: Vec<u32>,
        kind: FormKind,
    ) -> Result<Self, Error> {
        if coeffs.len() != dim * dim || dim == 0 {
            return Err(Error::InvalidForm("coefficient array must be dim × dim"));
        }
        if (0..dim).any(|i| (0..i).any(|j| coeffs[i * dim + j] != 0)) {
            return Err(Error::InvalidForm("coefficients must be upper triangular"));
        }
        let mut polar = vec![0u32; dim * dim];
        for i in 0..dim {
            for j in i..dim {
                let c = coeffs[i * dim + j];
                if i == j {
                    polar[i * dim + i] = field.add(c, c);
                } else {
                    polar[i * dim + j] = c;
                    polar[j * dim + i] = c;
                }
            }
        }
        let space = Self { field, dim, coeffs, polar, kind };
        space.check_polar()?;
        let expected = singular_count(space.field.order() as u64, dim, kind)
            .ok_or(Error::InvalidForm("dimension parity does not match the form type"))?;
        if space.count_singular_nonzero(DEFAULT_MAX_AMBIENT)? != expected {
            return Err(Error::InvalidForm("singular vector count does not match the form type"));
        }
        Ok(space)
    }

    /// `B(x, y) = q(x + y) − q(x) − q(y)` on basis vectors and their sums.
    fn check_polar(&self) -> Result<(), Error> {
        let f = &self.field;
        let unit = |i: usize| {
            let mut v = vec![0u32; self.dim];
            v[i] = 1;
            v
        };
        for i in 0..self.dim {
            for j in i..self.dim {
                let (x, y) = (unit(i), unit(j));
                let sum: Vec<u32> = x.iter().zip(&y).map(|(&a, &b)| f.add(a, b)).collect();
                let direct = f.sub(f.sub(self.eval(&sum), self.eval(&x)), self.eval(&y));
                if direct != self.polar(&x, &y) {
                    return Err(Error::InvalidForm("polar form is not bilinear"));
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    pub fn coefficients(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn eval(&self, x: &[u32]) -> u32 {
        let f = &self.field;
        let mut acc = 0;
        for i in 0..self.dim {
            if x[i] == 0 {
                continue;
            }
            for j in i..self.dim {
                let c = self.coeffs[i * self.dim + j];
                if c != 0 && x[j] != 0 {
                    acc = f.add(acc, f.mul(c, f.mul(x[i], x[j])));
                }
            }
        }
        acc
    }

    pub fn polar(&self, x: &[u32], y: &[u32]) -> u32 {
        let f = &self.field;
        let mut acc = 0;
        for i in 0..self.dim {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.dim {
                let b = self.polar[i * self.dim + j];
                if b != 0 && y[j] != 0 {
                    acc = f.add(acc, f.mul(x[i], f.mul(b, y[j])));
                }
            }
        }
        acc
    }

    pub fn ambient_size(&self) -> u64 {
        (self.field.order() as u64).pow(self.dim as u32)
    }

    /// Coordinates of the ambient vector with the given index.
    pub fn vector(&self, index: u64) -> Vec<u32> {
        index_to_vector(index, self.field.order(), self.dim)
    }

    pub fn add_vectors(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        x.iter().zip(y).map(|(&a, &b)| self.field.add(a, b)).collect()
    }

    fn check_bound(&self, max_ambient: u64) -> Result<(), Error> {
        let size = self.ambient_size();
        if size > max_ambient {
            return Err(Error::BoundExceeded { what: "ambient vectors", size, limit: max_ambient });
        }
        Ok(())
    }

    pub fn count_singular_nonzero(&self, max_ambient: u64) -> Result<u64, Error> {
        self.check_bound(max_ambient)?;
        Ok((1..self.ambient_size()).filter(|&i| self.eval(&self.vector(i)) == 0).count() as u64)
    }
}

pub(crate) fn index_to_vector(mut index: u64, q: u32, dim: usize) -> Vec<u32> {
    let mut v = vec![0u32; dim];
    for slot in v.iter_mut().rev() {
        *slot = (index % q as u64) as u32;
        index /= q as u64;
    }
    v
}

fn is_projective_rep(v: &[u32]) -> bool {
    v.iter().find(|&&c| c != 0) == Some(&1)
}

/// Standard nondegenerate form of the requested type.
///
/// Plus: `x1x2 + … + x_{d−1}x_d`. Minus: the last hyperbolic pair becomes
/// `x² + xy + δy²` with the first `δ` (index order) making it anisotropic.
/// Parabolic: a hyperbolic sum on the first `d − 1` coordinates plus `x_d²`.
pub fn standard_space(field: &FieldSpec, dim: usize, kind: FormKind) -> Result<QuadraticSpace, Error> {
    let parity_ok = match kind {
        FormKind::Plus | FormKind::Minus => dim % 2 == 0 && dim >= 2,
        FormKind::Parabolic => dim % 2 == 1,
    };
    if !parity_ok {
        return Err(Error::InvalidForm("dimension parity does not match the form type"));
    }
    let mut coeffs = vec![0u32; dim * dim];
    for pair in 0..dim / 2 {
        coeffs[2 * pair * dim + 2 * pair + 1] = 1;
    }
    match kind {
        FormKind::Plus => {}
        FormKind::Minus => {
            let delta = anisotropic_delta(field).ok_or(Error::Internal("no anisotropic binary form"))?;
            let i = dim - 2;
            coeffs[i * dim + i] = 1;
            coeffs[(i + 1) * dim + i + 1] = delta;
        }
        FormKind::Parabolic => {
            coeffs[(dim - 1) * dim + dim - 1] = 1;
        }
    }
    QuadraticSpace::new(field.clone(), dim, coeffs, kind)
}

fn anisotropic_delta(field: &FieldSpec) -> Option<u32> {
    field.elements().find(|&delta| {
        field.elements().all(|x| {
            field.elements().all(|y| {
                if x == 0 && y == 0 {
                    return true;
                }
                let v = field.add(field.add(field.mul(x, x), field.mul(x, y)), field.mul(delta, field.mul(y, y)));
                v != 0
            })
        })
    })
}

/// Projective points (first nonzero coordinate 1) selected by the form, or
/// hyperplanes given by their dual coordinate vectors; lexicographic order.
pub fn enumerate(
    space: &QuadraticSpace,
    selector: Selector,
    max_ambient: u64,
) -> Result<Vec<Vec<u32>>, Error> {
    space.check_bound(max_ambient)?;
    let mut out = Vec::new();
    for i in 1..space.ambient_size() {
        let v = space.vector(i);
        if !is_projective_rep(&v) {
            continue;
        }
        let keep = match selector {
            Selector::Hyperplanes => true,
            Selector::SingularPoints => space.eval(&v) == 0,
            Selector::NonsingularPoints => space.eval(&v) != 0,
        };
        if keep {
            out.push(v);
        }
    }
    Ok(out)
}

/// Rank of a list of vectors over the field.
pub fn vector_rank(field: &FieldSpec, vectors: &[Vec<u32>]) -> usize {
    let Some(dim) = vectors.first().map(Vec::len) else {
        return 0;
    };
    let mut rows: Vec<Vec<u32>> = vectors.to_vec();
    let mut rank = 0;
    for col in 0..dim {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = field.inv(rows[rank][col]).unwrap();
        let pivot: Vec<u32> = rows[rank].iter().map(|&x| field.mul(x, inv)).collect();
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let c = rows[r][col];
                for j in 0..dim {
                    rows[r][j] = field.sub(rows[r][j], field.mul(c, pivot[j]));
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

/// Basis of `{x : r · x = 0 for every row r}` (standard dot product).
pub fn nullspace(field: &FieldSpec, rows: &[Vec<u32>], dim: usize) -> Vec<Vec<u32>> {
    let mut m: Vec<Vec<u32>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..dim {
        let Some(p) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let inv = field.inv(m[rank][col]).unwrap();
        let pivot: Vec<u32> = m[rank].iter().map(|&x| field.mul(x, inv)).collect();
        for r in 0..m.len() {
            if r != rank && m[r][col] != 0 {
                let c = m[r][col];
                for j in 0..dim {
                    m[r][j] = field.sub(m[r][j], field.mul(c, pivot[j]));
                }
            }
        }
        m[rank] = pivot;
        pivots.push(col);
        rank += 1;
    }
    let free: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u32; dim];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(m[r][fc]);
            }
            v
        })
        .collect()
}

/// Classifies restricted forms, with the hyperbolic/elliptic/parabolic
/// singular-vector counts for each subspace dimension taken from brute-force
/// counts on standard spaces.
#[derive(Clone, Debug)]
pub struct RestrictionClassifier {
    field: FieldSpec,
    /// Indexed by dimension: (plus, minus) for even, parabolic for odd.
    counts: Vec<(Option<u64>, Option<u64>)>,
    max_ambient: u64,
}

impl RestrictionClassifier {
    pub fn new(field: &FieldSpec, max_dim: usize, max_ambient: u64) -> Result<Self, Error> {
        let mut counts = vec![(None, None)];
        for m in 1..=max_dim {
            let entry = if m % 2 == 0 {
                let plus = standard_space(field, m, FormKind::Plus)?.count_singular_nonzero(max_ambient)?;
                let minus = standard_space(field, m, FormKind::Minus)?.count_singular_nonzero(max_ambient)?;
                (Some(plus), Some(minus))
            } else {
                let par = standard_space(field, m, FormKind::Parabolic)?.count_singular_nonzero(max_ambient)?;
                (Some(par), None)
            };
            counts.push(entry);
        }
        Ok(Self { field: field.clone(), counts, max_ambient })
    }

    /// A restriction is degenerate when some nonzero vector of the subspace is
    /// singular and lies in the radical of the restricted polar form.
    pub fn classify(&self, space: &QuadraticSpace, basis: &[Vec<u32>]) -> Result<RestrictionClass, Error> {
        let f = &self.field;
        let m = basis.len();
        if m == 0 || m >= self.counts.len() {
            return Err(Error::InvalidForm("subspace dimension out of range"));
        }
        if vector_rank(f, basis) != m {
            return Err(Error::DependentBasis);
        }
        let q = f.order();
        let size = (q as u64).pow(m as u32);
        if size > self.max_ambient {
            return Err(Error::BoundExceeded { what: "subspace vectors", size, limit: self.max_ambient });
        }
        let gram: Vec<u32> = (0..m * m).map(|t| space.polar(&basis[t / m], &basis[t % m])).collect();
        let mut singular = 0u64;
        for idx in 1..size {
            let c = index_to_vector(idx, q, m);
            let mut w = vec![0u32; space.dim()];
            for (ci, b) in c.iter().zip(basis) {
                if *ci != 0 {
                    for (slot, &x) in w.iter_mut().zip(b) {
                        *slot = f.add(*slot, f.mul(*ci, x));
                    }
                }
            }
            if space.eval(&w) != 0 {
                continue;
            }
            singular += 1;
            let in_radical = (0..m).all(|j| {
                (0..m).fold(0, |acc, i| f.add(acc, f.mul(c[i], gram[i * m + j]))) == 0
            });
            if in_radical {
                return Ok(RestrictionClass::Degenerate);
            }
        }
        let (first, second) = self.counts[m];
        if m % 2 == 1 {
            if Some(singular) == first {
                return Ok(RestrictionClass::Parabolic);
            }
        } else if Some(singular) == first {
            return Ok(RestrictionClass::Hyperbolic);
        } else if Some(singular) == second {
            return Ok(RestrictionClass::Elliptic);
        }
        Err(Error::Internal("restricted form matches no class"))
    }
}

/// One-shot classification of `space` restricted to `span(basis)`.
pub fn classify_restriction(space: &QuadraticSpace, basis: &[Vec<u32>]) -> Result<RestrictionClass, Error> {
    RestrictionClassifier::new(space.field(), basis.len().max(1), DEFAULT_MAX_AMBIENT)?.classify(space, basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> FieldSpec {
        FieldSpec::of_order(q).unwrap()
    }

    /// Independent oracle: count zeros of the form by direct evaluation of
    /// the coefficient formula over every vector.
    fn brute_singular(space: &QuadraticSpace) -> (u64, u64) {
        let f = space.field();
        let d = space.dim();
        let mut zero = 0;
        let mut nonzero = 0;
        for i in 1..space.ambient_size() {
            let x = index_to_vector(i, f.order(), d);
            let mut acc = 0;
            for a in 0..d {
                for b in a..d {
                    let c = space.coefficients()[a * d + b];
                    acc = f.add(acc, f.mul(c, f.mul(x[a], x[b])));
                }
            }
            if acc == 0 {
                zero += 1
            } else {
                nonzero += 1
            }
        }
        (zero, nonzero)
    }

    #[test]
    fn gf2_dim4_plus_counts() {
        let s = standard_space(&gf(2), 4, FormKind::Plus).unwrap();
        // 9 nonzero singular vectors, 6 nonsingular (the NO+_4(2) vertex count).
        assert_eq!(brute_singular(&s), (9, 6));
        assert_eq!(enumerate(&s, Selector::NonsingularPoints, DEFAULT_MAX_AMBIENT).unwrap().len(), 6);
    }

    #[test]
    fn gf2_dim4_minus_has_ten_nonsingular_points() {
        let s = standard_space(&gf(2), 4, FormKind::Minus).unwrap();
        assert_eq!(brute_singular(&s).1, 10);
        assert_eq!(enumerate(&s, Selector::NonsingularPoints, DEFAULT_MAX_AMBIENT).unwrap().len(), 10);
    }

    #[test]
    fn gf2_dim2_plus() {
        let s = standard_space(&gf(2), 2, FormKind::Plus).unwrap();
        let singular = enumerate(&s, Selector::SingularPoints, DEFAULT_MAX_AMBIENT).unwrap();
        assert_eq!(singular, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn point_and_hyperplane_counts() {
        let s = standard_space(&gf(2), 6, FormKind::Plus).unwrap();
        assert_eq!(enumerate(&s, Selector::NonsingularPoints, DEFAULT_MAX_AMBIENT).unwrap().len(), 28);
        let s = standard_space(&gf(4), 3, FormKind::Parabolic).unwrap();
        assert_eq!(enumerate(&s, Selector::Hyperplanes, DEFAULT_MAX_AMBIENT).unwrap().len(), 21);
        let err = enumerate(&s, Selector::Hyperplanes, 10).unwrap_err();
        assert!(matches!(err, Error::BoundExceeded { .. }));
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let s = standard_space(&gf(4), 3, FormKind::Parabolic).unwrap();
        let pts = enumerate(&s, Selector::SingularPoints, DEFAULT_MAX_AMBIENT).unwrap();
        assert_eq!(pts.len(), 5);
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
        assert!(pts.iter().all(|p| is_projective_rep(p)));
    }

    #[test]
    fn standard_counts_match_classical_formulas() {
        for q in [2u32, 3, 4, 5] {
            for dim in 1..=5usize {
                let kinds: &[FormKind] = if dim % 2 == 0 {
                    &[FormKind::Plus, FormKind::Minus]
                } else {
                    &[FormKind::Parabolic]
                };
                for &kind in kinds {
                    if (q as u64).pow(dim as u32) > 4096 {
                        continue;
                    }
                    let s = standard_space(&gf(q), dim, kind).unwrap();
                    assert_eq!(Some(brute_singular(&s).0), singular_count(q as u64, dim, kind));
                }
            }
        }
    }

    #[test]
    fn polar_form_axioms() {
        for (q, dim, kind) in [(2, 4, FormKind::Minus), (4, 3, FormKind::Parabolic), (2, 5, FormKind::Parabolic)] {
            let s = standard_space(&gf(q), dim, kind).unwrap();
            let f = s.field().clone();
            for i in 0..s.ambient_size() {
                let x = s.vector(i);
                assert_eq!(s.polar(&x, &x), 0, "alternating in characteristic 2");
                for c in f.elements() {
                    let cx: Vec<u32> = x.iter().map(|&t| f.mul(c, t)).collect();
                    assert_eq!(s.eval(&cx), f.mul(f.mul(c, c), s.eval(&x)));
                }
                for j in 0..s.ambient_size() {
                    let y = s.vector(j);
                    assert_eq!(s.polar(&x, &y), s.polar(&y, &x));
                    let sum = s.add_vectors(&x, &y);
                    assert_eq!(s.polar(&x, &y), f.sub(f.sub(s.eval(&sum), s.eval(&x)), s.eval(&y)));
                }
            }
        }
    }

    #[test]
    fn wrong_declared_type_is_rejected() {
        let plus = standard_space(&gf(2), 4, FormKind::Plus).unwrap();
        let err = QuadraticSpace::new(gf(2), 4, plus.coefficients().to_vec(), FormKind::Minus);
        assert!(err.is_err());
        assert!(standard_space(&gf(2), 3, FormKind::Plus).is_err());
        assert!(standard_space(&gf(2), 4, FormKind::Parabolic).is_err());
    }

    #[test]
    fn full_space_restriction_is_itself() {
        let s = standard_space(&gf(2), 4, FormKind::Plus).unwrap();
        let basis: Vec<Vec<u32>> = (0..4).map(|i| (0..4).map(|j| (i == j) as u32).collect()).collect();
        assert_eq!(classify_restriction(&s, &basis).unwrap(), RestrictionClass::Hyperbolic);
        let s = standard_space(&gf(4), 4, FormKind::Minus).unwrap();
        let basis: Vec<Vec<u32>> = (0..4).map(|i| (0..4).map(|j| (i == j) as u32).collect()).collect();
        assert_eq!(classify_restriction(&s, &basis).unwrap(), RestrictionClass::Elliptic);
    }

    #[test]
    fn singular_point_span_is_degenerate() {
        let s = standard_space(&gf(4), 3, FormKind::Parabolic).unwrap();
        let p = enumerate(&s, Selector::SingularPoints, DEFAULT_MAX_AMBIENT).unwrap()[0].clone();
        assert_eq!(classify_restriction(&s, &[p]).unwrap(), RestrictionClass::Degenerate);
        let n = enumerate(&s, Selector::NonsingularPoints, DEFAULT_MAX_AMBIENT).unwrap()[0].clone();
        assert_eq!(classify_restriction(&s, &[n]).unwrap(), RestrictionClass::Parabolic);
    }

    #[test]
    fn hyperplanes_of_parabolic_gf4_space() {
        // Secant, external and tangent lines of the conic in PG(2,4): 10, 6, 5.
        let s = standard_space(&gf(4), 3, FormKind::Parabolic).unwrap();
        let classifier = RestrictionClassifier::new(s.field(), 3, DEFAULT_MAX_AMBIENT).unwrap();
        let mut tally = [0; 3];
        for h in enumerate(&s, Selector::Hyperplanes, DEFAULT_MAX_AMBIENT).unwrap() {
            let basis = nullspace(s.field(), &[h], 3);
            match classifier.classify(&s, &basis).unwrap() {
                RestrictionClass::Hyperbolic => tally[0] += 1,
                RestrictionClass::Elliptic => tally[1] += 1,
                RestrictionClass::Degenerate => tally[2] += 1,
                RestrictionClass::Parabolic => unreachable!(),
            }
        }
        assert_eq!(tally, [10, 6, 5]);
    }

    #[test]
    fn dependent_basis_is_rejected() {
        let s = standard_space(&gf(2), 4, FormKind::Plus).unwrap();
        let v = vec![1, 0, 1, 0];
        assert_eq!(classify_restriction(&s, &[v.clone(), v]).unwrap_err(), Error::DependentBasis);
    }

    #[test]
    fn nullspace_is_orthogonal_and_full() {
        let f = gf(4);
        let rows = vec![vec![1, 2, 3, 0, 1], vec![0, 1, 1, 2, 3]];
        let ns = nullspace(&f, &rows, 5);
        assert_eq!(ns.len(), 3);
        assert_eq!(vector_rank(&f, &ns), 3);
        for v in &ns {
            for r in &rows {
                let dot = v.iter().zip(r).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
                assert_eq!(dot, 0);
            }
        }
    }
}

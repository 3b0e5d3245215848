//! Dense matrices over `Q(√D)` with exact products and fraction-free rank.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{AlgebraError, QuadExt};

/// Row-major matrix of exact scalars sharing one radicand.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    d: u64,
    entries: Vec<QuadExt>,
}

impl core::fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        writeln!(f, "ExactMatrix {}x{} (D = {})", self.rows, self.cols, self.d)?;
        for r in 0..self.rows {
            f.debug_list().entries(self.row(r)).finish()?;
            writeln!(f)?;
        }
        Ok(())
    }
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<QuadExt>) -> Result<Self, AlgebraError> {
        if entries.len() != rows * cols {
            return Err(AlgebraError::DimensionMismatch {
                expected: (rows, cols),
                found: (entries.len(), 1),
            });
        }
        let mut d = 0;
        for e in &entries {
            match (d, e.radicand()) {
                (_, 0) => {}
                (0, x) => d = x,
                (x, y) if x == y => {}
                (x, y) => return Err(AlgebraError::IncompatibleRadicand { left: x, right: y }),
            }
        }
        Ok(Self { rows, cols, d, entries })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> QuadExt,
    ) -> Result<Self, AlgebraError> {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self::new(rows, cols, entries)
    }

    pub fn from_ints(rows: usize, cols: usize, values: &[i64]) -> Result<Self, AlgebraError> {
        Self::new(rows, cols, values.iter().map(|&v| QuadExt::from_int(v)).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, d: 0, entries: vec![QuadExt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = QuadExt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Common radicand of the non-rational entries (0 if all are rational).
    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn entries(&self) -> &[QuadExt] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &QuadExt {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[QuadExt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        Self { rows: self.cols, cols: self.rows, d: self.d, entries }
    }

    pub fn map(&self, f: impl FnMut(&QuadExt) -> QuadExt) -> Result<Self, AlgebraError> {
        Self::new(self.rows, self.cols, self.entries.iter().map(f).collect())
    }

    pub fn scale(&self, factor: &QuadExt) -> Result<Self, AlgebraError> {
        let entries =
            self.entries.iter().map(|e| e.try_mul(factor)).collect::<Result<Vec<_>, _>>()?;
        Self::new(self.rows, self.cols, entries)
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&QuadExt, &QuadExt) -> Result<QuadExt, AlgebraError>,
    ) -> Result<Self, AlgebraError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(AlgebraError::DimensionMismatch {
                expected: (self.rows, self.cols),
                found: (other.rows, other.cols),
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(x, y)| f(x, y))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(self.rows, self.cols, entries)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.zip_with(other, QuadExt::try_add)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.zip_with(other, QuadExt::try_sub)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(QuadExt::is_zero)
    }

    pub fn mat_mul(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        mat_mul(self, rhs)
    }

    pub fn rank(&self) -> usize {
        mat_rank(self)
    }
}

/// Entry-wise `(a + b·√d) / denom` with integer `a`, `b`.
struct Scaled {
    denom: BigInt,
    a: Vec<BigInt>,
    b: Vec<BigInt>,
}

impl Scaled {
    fn of(m: &ExactMatrix) -> Self {
        let mut denom = BigInt::one();
        for e in &m.entries {
            denom = denom.lcm(e.rational_part().denom());
            denom = denom.lcm(e.irrational_part().denom());
        }
        let lift = |r: &BigRational| r.numer() * (&denom / r.denom());
        let a = m.entries.iter().map(|e| lift(e.rational_part())).collect();
        let b = m.entries.iter().map(|e| lift(e.irrational_part())).collect();
        Self { denom, a, b }
    }

    fn max_abs(&self) -> Option<i64> {
        let mut best = 0i64;
        for x in self.a.iter().chain(&self.b) {
            best = best.max(x.abs().to_i64()?);
        }
        Some(best)
    }

    fn small(&self) -> (Vec<i64>, Vec<i64>) {
        let conv = |v: &Vec<BigInt>| v.iter().map(|x| x.to_i64().unwrap()).collect();
        (conv(&self.a), conv(&self.b))
    }
}

/// Exact matrix product.
pub fn mat_mul(lhs: &ExactMatrix, rhs: &ExactMatrix) -> Result<ExactMatrix, AlgebraError> {
    if lhs.cols != rhs.rows {
        return Err(AlgebraError::DimensionMismatch {
            expected: (lhs.cols, rhs.cols),
            found: (rhs.rows, rhs.cols),
        });
    }
    let d = match (lhs.d, rhs.d) {
        (0, x) | (x, 0) => x,
        (x, y) if x == y => x,
        (x, y) => return Err(AlgebraError::IncompatibleRadicand { left: x, right: y }),
    };
    let (n, inner, m) = (lhs.rows, lhs.cols, rhs.cols);
    let left = Scaled::of(lhs);
    let right = Scaled::of(&rhs.transpose());
    let denom = &left.denom * &right.denom;
    let denom = BigRational::from_integer(denom);
    let dr = BigRational::from_integer(BigInt::from(d));

    let fits = match (left.max_abs(), right.max_abs()) {
        (Some(x), Some(y)) => {
            let bound = (x as u128)
                .checked_mul(y as u128)
                .and_then(|p| p.checked_mul(inner as u128 + 1))
                .and_then(|p| p.checked_mul(d as u128 + 1))
                .and_then(|p| p.checked_mul(2));
            matches!(bound, Some(b) if b < i128::MAX as u128)
        }
        _ => false,
    };

    let mut entries = Vec::with_capacity(n * m);
    if fits {
        let (la, lb) = left.small();
        let (ra, rb) = right.small();
        let irrational = d != 0;
        for i in 0..n {
            let (xa, xb) = (&la[i * inner..(i + 1) * inner], &lb[i * inner..(i + 1) * inner]);
            for j in 0..m {
                let (ya, yb) = (&ra[j * inner..(j + 1) * inner], &rb[j * inner..(j + 1) * inner]);
                let mut aa: i128 = 0;
                for t in 0..inner {
                    aa += xa[t] as i128 * ya[t] as i128;
                }
                let mut bb: i128 = 0;
                let mut ab: i128 = 0;
                if irrational {
                    for t in 0..inner {
                        bb += xb[t] as i128 * yb[t] as i128;
                        ab += xa[t] as i128 * yb[t] as i128 + xb[t] as i128 * ya[t] as i128;
                    }
                }
                let a = BigRational::from_integer(BigInt::from(aa + d as i128 * bb)) / &denom;
                let b = BigRational::from_integer(BigInt::from(ab)) / &denom;
                entries.push(QuadExt::new(a, b, d)?);
            }
        }
    } else {
        for i in 0..n {
            for j in 0..m {
                let mut aa = BigInt::zero();
                let mut bb = BigInt::zero();
                let mut ab = BigInt::zero();
                for t in 0..inner {
                    let (xa, xb) = (&left.a[i * inner + t], &left.b[i * inner + t]);
                    let (ya, yb) = (&right.a[j * inner + t], &right.b[j * inner + t]);
                    aa += xa * ya;
                    if d != 0 {
                        bb += xb * yb;
                        ab += xa * yb + xb * ya;
                    }
                }
                let a = (BigRational::from_integer(aa) + BigRational::from_integer(bb) * &dr) / &denom;
                let b = BigRational::from_integer(ab) / &denom;
                entries.push(QuadExt::new(a, b, d)?);
            }
        }
    }
    ExactMatrix::new(n, m, entries)
}

/// Ring in which Bareiss' update `(p·x − c·y) / prev` divides exactly.
trait BareissRing: Clone {
    fn is_nil(&self) -> bool;
    fn unit() -> Self;
    fn step(p: &Self, x: &Self, c: &Self, y: &Self, prev: &Self) -> Self;
}

impl BareissRing for BigInt {
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }

    fn unit() -> Self {
        BigInt::one()
    }

    fn step(p: &Self, x: &Self, c: &Self, y: &Self, prev: &Self) -> Self {
        let mut t = p * x;
        if !Zero::is_zero(c) && !Zero::is_zero(y) {
            t -= c * y;
        }
        if !prev.is_one() {
            t /= prev;
        }
        t
    }
}

/// Element `a + b·√d` of the order `Z[√d]`.
#[derive(Clone)]
struct ZSqrt {
    a: BigInt,
    b: BigInt,
    d: BigInt,
}

impl ZSqrt {
    fn mul(&self, o: &Self) -> Self {
        Self {
            a: &self.a * &o.a + &self.b * &o.b * &self.d,
            b: &self.a * &o.b + &self.b * &o.a,
            d: self.d.clone(),
        }
    }
}

impl BareissRing for ZSqrt {
    fn is_nil(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn unit() -> Self {
        Self { a: BigInt::one(), b: BigInt::zero(), d: BigInt::zero() }
    }

    fn step(p: &Self, x: &Self, c: &Self, y: &Self, prev: &Self) -> Self {
        let px = p.mul(x);
        let cy = c.mul(y);
        let t = Self { a: px.a - cy.a, b: px.b - cy.b, d: p.d.clone() };
        if prev.b.is_zero() && prev.a.is_one() {
            return t;
        }
        // Multiply by the conjugate, then divide by the (integer) norm.
        let conj = Self { a: prev.a.clone(), b: -prev.b.clone(), d: p.d.clone() };
        let norm = &prev.a * &prev.a - &prev.b * &prev.b * &p.d;
        let num = t.mul(&conj);
        debug_assert!((&num.a % &norm).is_zero() && (&num.b % &norm).is_zero());
        Self { a: num.a / &norm, b: num.b / &norm, d: p.d.clone() }
    }
}

/// Fraction-free elimination; pivots are chosen as the lowest-index row with
/// a nonzero entry in the current column.
fn bareiss_rank<R: BareissRing>(mut rows: Vec<Vec<R>>, cols: usize) -> usize {
    let n = rows.len();
    let mut prev = R::unit();
    let mut rank = 0;
    for col in 0..cols {
        if rank == n {
            break;
        }
        let Some(p) = (rank..n).find(|&i| !rows[i][col].is_nil()) else {
            continue;
        };
        rows.swap(rank, p);
        let (top, bottom) = rows.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = &pivot_row[col];
        for row in bottom.iter_mut() {
            let c = row[col].clone();
            for j in col + 1..cols {
                row[j] = R::step(pivot, &row[j], &c, &pivot_row[j], &prev);
            }
            row[col] = R::step(pivot, &row[col], &c, pivot, &prev);
            debug_assert!(row[col].is_nil());
        }
        prev = rows[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Rank over `Q(√D)`.
pub fn mat_rank(m: &ExactMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    let scaled = Scaled::of(m);
    let cols = m.cols;
    if m.d == 0 {
        let rows = scaled.a.chunks(cols).map(<[BigInt]>::to_vec).collect();
        bareiss_rank(rows, cols)
    } else {
        let d = BigInt::from(m.d);
        let rows = (0..m.rows)
            .map(|i| {
                (0..cols)
                    .map(|j| ZSqrt {
                        a: scaled.a[i * cols + j].clone(),
                        b: scaled.b[i * cols + j].clone(),
                        d: d.clone(),
                    })
                    .collect()
            })
            .collect();
        bareiss_rank(rows, cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_neutral() {
        let m = ExactMatrix::from_ints(3, 2, &[1, -2, 3, 4, 0, 7]).unwrap();
        assert_eq!(mat_mul(&ExactMatrix::identity(3), &m).unwrap(), m);
    }

    #[test]
    fn swap_squares_to_identity() {
        let s = ExactMatrix::from_ints(2, 2, &[0, 1, 1, 0]).unwrap();
        assert_eq!(mat_mul(&s, &s).unwrap(), ExactMatrix::identity(2));
    }

    #[test]
    fn dimension_and_radicand_errors() {
        let a = ExactMatrix::zeros(2, 3);
        assert!(matches!(mat_mul(&a, &a), Err(AlgebraError::DimensionMismatch { .. })));
        let r2 = ExactMatrix::new(1, 1, vec![QuadExt::sqrt_of(2)]).unwrap();
        let r3 = ExactMatrix::new(1, 1, vec![QuadExt::sqrt_of(3)]).unwrap();
        assert!(matches!(mat_mul(&r2, &r3), Err(AlgebraError::IncompatibleRadicand { .. })));
        assert!(ExactMatrix::new(1, 2, vec![QuadExt::sqrt_of(2), QuadExt::sqrt_of(3)]).is_err());
    }

    #[test]
    fn irrational_product() {
        let r5 = QuadExt::sqrt_of(5);
        let m = ExactMatrix::new(1, 2, vec![r5.clone(), QuadExt::one()]).unwrap();
        let p = mat_mul(&m, &m.transpose()).unwrap();
        assert_eq!(p.get(0, 0), &QuadExt::from_int(6));
    }

    #[test]
    fn big_integer_fallback_matches() {
        let big = 1i64 << 61;
        let m = ExactMatrix::from_ints(2, 2, &[big, 1, -1, big]).unwrap();
        let p = mat_mul(&m, &m).unwrap();
        let expected = BigRational::from_integer(BigInt::from(big) * BigInt::from(big) - 1);
        assert_eq!(p.get(0, 0), &QuadExt::rational(expected));
        assert_eq!(p.get(0, 1), &QuadExt::from_int(2 * big));
    }

    #[test]
    fn rank_of_zero_and_small_cases() {
        assert_eq!(mat_rank(&ExactMatrix::zeros(4, 4)), 0);
        assert_eq!(mat_rank(&ExactMatrix::identity(5)), 5);
        let m = ExactMatrix::from_ints(3, 3, &[1, 2, 3, 2, 4, 6, 0, 1, 1]).unwrap();
        assert_eq!(mat_rank(&m), 2);
        // Column without pivot in the middle.
        let m = ExactMatrix::from_ints(2, 3, &[0, 0, 1, 0, 0, 2]).unwrap();
        assert_eq!(mat_rank(&m), 1);
    }

    #[test]
    fn rank_over_quadratic_field() {
        // [[1, √2], [√2, 2]] is singular over Q(√2), though not over Q entrywise.
        let r2 = QuadExt::sqrt_of(2);
        let m = ExactMatrix::new(2, 2, vec![QuadExt::one(), r2.clone(), r2, QuadExt::from_int(2)])
            .unwrap();
        assert_eq!(mat_rank(&m), 1);
        let golden = (QuadExt::one() + QuadExt::sqrt_of(5)) * QuadExt::from_ratio(1, 2);
        let m = ExactMatrix::new(
            2,
            2,
            vec![QuadExt::one(), golden.clone(), golden.clone(), golden.square()],
        )
        .unwrap();
        assert_eq!(mat_rank(&m), 1);
        let m = ExactMatrix::new(
            2,
            2,
            vec![QuadExt::one(), golden.clone(), golden, QuadExt::one()],
        )
        .unwrap();
        assert_eq!(mat_rank(&m), 2);
    }
}

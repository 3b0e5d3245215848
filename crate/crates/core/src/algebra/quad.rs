//! Scalars of the form `a + b·√D` with rational `a`, `b` and square-free `D`.

use alloc::format;
use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::AlgebraError;

/// Splits `n` as `m² · d` with `d` square-free.
pub fn squarefree_decompose(n: u64) -> (u64, u64) {
    if n == 0 {
        return (0, 0);
    }
    let mut rest = n;
    let mut square_root = 1u64;
    let mut free = 1u64;
    let mut p = 2u64;
    while p * p <= rest {
        let mut exp = 0;
        while rest % p == 0 {
            rest /= p;
            exp += 1;
        }
        for _ in 0..exp / 2 {
            square_root *= p;
        }
        if exp % 2 == 1 {
            free *= p;
        }
        p += 1;
    }
    free *= rest;
    (square_root, free)
}

pub fn is_squarefree(n: u64) -> bool {
    n == 0 || squarefree_decompose(n).0 == 1
}

/// Exact element of `Q(√D)`.
///
/// Values are kept canonical: whenever the irrational part vanishes the
/// radicand is reset to zero, so `a + 0·√D` and the plain rational `a` are
/// structurally identical. `D = 1` is folded into the rational part.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: BigRational,
    b: BigRational,
    d: u64,
}

impl QuadExt {
    /// Builds `a + b·√d`; `d` must be square-free.
    pub fn new(a: BigRational, b: BigRational, d: u64) -> Result<Self, AlgebraError> {
        if !is_squarefree(d) {
            return Err(AlgebraError::NotSquareFree(d));
        }
        Ok(Self::canonical(a, b, d))
    }

    fn canonical(a: BigRational, b: BigRational, d: u64) -> Self {
        match d {
            0 => Self { a, b: BigRational::zero(), d: 0 },
            1 => Self { a: a + b, b: BigRational::zero(), d: 0 },
            _ if b.is_zero() => Self { a, b, d: 0 },
            _ => Self { a, b, d },
        }
    }

    pub fn zero() -> Self {
        Self { a: BigRational::zero(), b: BigRational::zero(), d: 0 }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn rational(a: BigRational) -> Self {
        Self { a, b: BigRational::zero(), d: 0 }
    }

    /// The exact square root of a non-negative integer, `√n = m·√D`.
    pub fn sqrt_of(n: u64) -> Self {
        let (m, d) = squarefree_decompose(n);
        let m = BigRational::from_integer(BigInt::from(m));
        if d <= 1 {
            Self::rational(m)
        } else {
            Self::canonical(BigRational::zero(), m, d)
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.b
    }

    /// Radicand; zero for rational values.
    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.b.is_zero() && self.a.is_one()
    }

    /// Rational value, if the irrational part is zero.
    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.a.clone())
    }

    /// Integer value, if the scalar is a rational integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        (self.is_rational() && self.a.is_integer()).then(|| self.a.to_integer())
    }

    fn joint_radicand(&self, other: &Self) -> Result<u64, AlgebraError> {
        match (self.d, other.d) {
            (0, d) | (d, 0) => Ok(d),
            (x, y) if x == y => Ok(x),
            (x, y) => Err(AlgebraError::IncompatibleRadicand { left: x, right: y }),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        let d = self.joint_radicand(other)?;
        Ok(Self::canonical(&self.a + &other.a, &self.b + &other.b, d))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        let d = self.joint_radicand(other)?;
        Ok(Self::canonical(&self.a - &other.a, &self.b - &other.b, d))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        let d = self.joint_radicand(other)?;
        let dr = BigRational::from_integer(BigInt::from(d));
        let a = &self.a * &other.a + &self.b * &other.b * dr;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Self::canonical(a, b, d))
    }

    /// Field norm `a² − D·b²`.
    pub fn norm(&self) -> BigRational {
        let dr = BigRational::from_integer(BigInt::from(self.d));
        &self.a * &self.a - &self.b * &self.b * dr
    }

    pub fn conjugate(&self) -> Self {
        Self::canonical(self.a.clone(), -self.b.clone(), self.d)
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let n = self.norm();
        let c = self.conjugate();
        Ok(Self::canonical(c.a / &n, c.b / n, self.d))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.try_mul(&other.inv()?)
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        Self::canonical(&self.a * factor, &self.b * factor, self.d)
    }

    pub fn square(&self) -> Self {
        self.try_mul(self).expect("a scalar is compatible with itself")
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Sign of the real number `a + b·√D`: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        fn sgn(x: &BigRational) -> i32 {
            match x.numer().sign() {
                Sign::Minus => -1,
                Sign::NoSign => 0,
                Sign::Plus => 1,
            }
        }
        let (sa, sb) = (sgn(&self.a), sgn(&self.b));
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // Opposite signs: the larger magnitude wins, compared on squares.
        let dr = BigRational::from_integer(BigInt::from(self.d));
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * dr;
        if lhs > rhs {
            sa
        } else {
            sb
        }
    }

    pub fn try_cmp(&self, other: &Self) -> Result<Ordering, AlgebraError> {
        let diff = self.try_sub(other)?;
        Ok(diff.signum().cmp(&0))
    }
}

impl PartialOrd for QuadExt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(other).ok()
    }
}

impl From<i64> for QuadExt {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for QuadExt {
    fn from(a: BigRational) -> Self {
        Self::rational(a)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&QuadExt> for &QuadExt {
            type Output = QuadExt;
            /// Panics when the radicands are incompatible; use the `try_`
            /// variant when mixing fields is possible.
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        Self::canonical(-self.a, -self.b, self.d)
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -self.clone()
    }
}

fn write_ratio(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    write!(f, "{}/{}", r.numer(), r.denom())
}

/// Serialization: `"a/b"` for rationals, `"a/b+c/d*sqrt(D)"` otherwise,
/// all fractions in lowest terms with positive denominators.
impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_ratio(f, &self.a)?;
        if !self.b.is_zero() {
            f.write_str("+")?;
            write_ratio(f, &self.b)?;
            write!(f, "*sqrt({})", self.d)?;
        }
        Ok(())
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_ratio(s: &str) -> Result<BigRational, AlgebraError> {
    let bad = || AlgebraError::Parse(s.to_string());
    let (num, den) = s.split_once('/').ok_or_else(bad)?;
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if !den.is_positive() || !num.gcd(&den).is_one() {
        return Err(bad());
    }
    Ok(BigRational::new_raw(num, den))
}

/// Strict inverse of `Display`: non-canonical spellings are rejected so the
/// round-trip is bit-exact in both directions.
impl FromStr for QuadExt {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AlgebraError::Parse(s.to_string());
        // The rational part may itself start with '-', so split on the
        // first '+' after position 0.
        let split = s.char_indices().skip(1).find(|&(_, c)| c == '+').map(|(i, _)| i);
        let Some(i) = split else {
            return parse_ratio(s).map(Self::rational);
        };
        let a = parse_ratio(&s[..i])?;
        let rest = &s[i + 1..];
        let (b, radical) = rest.split_once("*sqrt(").ok_or_else(bad)?;
        let d = radical.strip_suffix(')').ok_or_else(bad)?;
        let d: u64 = d.parse().map_err(|_| bad())?;
        let b = parse_ratio(b)?;
        if b.is_zero() || d <= 1 || !is_squarefree(d) {
            return Err(bad());
        }
        Ok(Self { a, b, d })
    }
}

impl QuadExt {
    /// Convenience: string form, identical to `Display`.
    pub fn to_canonical_string(&self) -> String {
        format!("{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64, d: u64) -> QuadExt {
        QuadExt::new(BigRational::from_integer(a.into()), BigRational::from_integer(b.into()), d)
            .unwrap()
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_decompose(28), (2, 7));
        assert_eq!(squarefree_decompose(2209), (47, 1));
        assert_eq!(squarefree_decompose(5), (1, 5));
        assert_eq!(squarefree_decompose(72), (6, 2));
        assert!(!is_squarefree(12));
    }

    #[test]
    fn zero_irrational_part_is_plain_rational() {
        let x = QuadExt::new(BigRational::new(3.into(), 4.into()), BigRational::zero(), 5).unwrap();
        assert_eq!(x, QuadExt::from_ratio(3, 4));
        assert_eq!(x.radicand(), 0);
        assert_eq!(q(2, 3, 1), QuadExt::from_int(5));
    }

    #[test]
    fn mismatched_radicands_are_errors() {
        let err = q(0, 1, 2).try_add(&q(0, 1, 3)).unwrap_err();
        assert_eq!(err, AlgebraError::IncompatibleRadicand { left: 2, right: 3 });
        assert!(q(1, 1, 2).try_mul(&QuadExt::from_int(7)).is_ok());
        assert!(QuadExt::new(BigRational::one(), BigRational::one(), 8).is_err());
    }

    #[test]
    fn sqrt_and_inverse() {
        let r5 = QuadExt::sqrt_of(5);
        assert_eq!(r5.square(), QuadExt::from_int(5));
        let golden = (QuadExt::from_int(-1) + r5) * QuadExt::from_ratio(1, 2);
        assert_eq!(&golden * &golden.inv().unwrap(), QuadExt::one());
        assert_eq!(QuadExt::sqrt_of(28), q(0, 2, 7));
        assert_eq!(QuadExt::zero().inv(), Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn sign_of_mixed_terms() {
        assert_eq!(q(3, -1, 5).signum(), 1); // 3 - 2.236
        assert_eq!(q(2, -1, 5).signum(), -1); // 2 - 2.236
        assert_eq!(q(-3, 2, 2).signum(), -1);
        assert!(q(0, 1, 2) > QuadExt::from_ratio(7, 5));
        assert!(q(0, 1, 2) < QuadExt::from_ratio(3, 2));
    }

    #[test]
    fn serialization_round_trip() {
        let x = QuadExt::from_ratio(-1, 2) + QuadExt::sqrt_of(5) * QuadExt::from_ratio(-1, 2);
        assert_eq!(x.to_string(), "-1/2+-1/2*sqrt(5)");
        assert_eq!("-1/2+-1/2*sqrt(5)".parse::<QuadExt>().unwrap(), x);
        assert_eq!(QuadExt::from_int(3).to_string(), "3/1");
        assert_eq!("3/1".parse::<QuadExt>().unwrap(), QuadExt::from_int(3));
        assert!("2/4".parse::<QuadExt>().is_err());
        assert!("1/2+1/1*sqrt(4)".parse::<QuadExt>().is_err());
        assert!("1/2+0/1*sqrt(5)".parse::<QuadExt>().is_err());
        assert!("1/-2".parse::<QuadExt>().is_err());
    }
}

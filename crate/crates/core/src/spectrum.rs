//! Parameters, eigenvalues and eigenmatrices of strongly regular graphs.

use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::{ExactMatrix, QuadExt};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SrgParams {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
}

impl fmt::Display for SrgParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.v, self.k, self.lambda, self.mu)
    }
}

impl SrgParams {
    pub const fn new(v: u64, k: u64, lambda: u64, mu: u64) -> Self {
        Self { v, k, lambda, mu }
    }

    /// `k(k − λ − 1) = (v − k − 1)μ`.
    pub fn is_feasible(&self) -> bool {
        let (v, k, l, m) = (self.v as i128, self.k as i128, self.lambda as i128, self.mu as i128);
        k < v && k * (k - l - 1) == (v - k - 1) * m
    }

    /// `0 < μ < k`: neither the graph nor its complement is disconnected.
    pub fn is_primitive(&self) -> bool {
        0 < self.mu && self.mu < self.k
    }

    /// Parameters of the complementary graph.
    pub fn complement(&self) -> Option<Self> {
        let (v, k, l, m) = (self.v as i128, self.k as i128, self.lambda as i128, self.mu as i128);
        let kb = v - k - 1;
        let lb = v - 2 * k + m - 2;
        let mb = v - 2 * k + l;
        (kb >= 0 && lb >= 0 && mb >= 0).then(|| Self::new(self.v, kb as u64, lb as u64, mb as u64))
    }

    /// `(λ − μ)² + 4(k − μ)`, whose square-free part is the radicand of the spectrum.
    pub fn discriminant(&self) -> u64 {
        let d = self.lambda as i128 - self.mu as i128;
        (d * d + 4 * (self.k as i128 - self.mu as i128)) as u64
    }

    /// Parameters `(v − 1, 2(k − μ), k + λ − 2μ, k − μ)` of a descendant.
    pub fn descendant(&self) -> Option<Self> {
        let (k, l, m) = (self.k as i128, self.lambda as i128, self.mu as i128);
        let dk = 2 * (k - m);
        let dl = k + l - 2 * m;
        let dm = k - m;
        (self.v >= 2 && dk >= 0 && dl >= 0 && dm >= 0)
            .then(|| Self::new(self.v - 1, dk as u64, dl as u64, dm as u64))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    pub params: SrgParams,
    /// Larger restricted eigenvalue.
    pub r: QuadExt,
    pub s: QuadExt,
    pub f: u64,
    pub g: u64,
    pub k_bar: u64,
    pub lambda_bar: u64,
    pub mu_bar: u64,
    /// `−s − 1`.
    pub r_bar: QuadExt,
    /// `−r − 1`.
    pub s_bar: QuadExt,
}

impl Spectrum {
    /// Square-free radicand shared by `r` and `s` (0 for integral eigenvalues).
    pub fn radicand(&self) -> u64 {
        self.r.radicand()
    }
}

fn int(n: i128) -> QuadExt {
    QuadExt::rational(BigRational::from_integer(BigInt::from(n)))
}

/// Eigenvalues and multiplicities of a primitive parameter set.
///
/// `r, s = ((λ − μ) ± √Δ) / 2` are the roots of `ξ² + (μ − λ)ξ + (μ − k) = 0`,
/// and `f, g` solve `k + f·r + g·s = 0`, `f + g = v − 1`.
pub fn spectrum(p: &SrgParams) -> Result<Spectrum, Error> {
    if !p.is_primitive() {
        return Err(Error::NotPrimitive(*p));
    }
    if !p.is_feasible() {
        return Err(Error::Infeasible(*p, "k(k − λ − 1) ≠ (v − k − 1)μ"));
    }
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let centre = int(p.lambda as i128 - p.mu as i128).scale(&half);
    let root = QuadExt::sqrt_of(p.discriminant()).scale(&half);
    let r = centre.try_add(&root)?;
    let s = centre.try_sub(&root)?;

    // f = −(k + (v − 1)s) / (r − s)
    let num = int(p.k as i128).try_add(&int(p.v as i128 - 1).try_mul(&s)?)?;
    let f = (-num).try_div(&r.try_sub(&s)?)?;
    let f = f
        .to_integer()
        .and_then(|x| u64::try_from(x).ok())
        .ok_or(Error::Infeasible(*p, "multiplicity f is not a non-negative integer"))?;
    if f > p.v - 1 {
        return Err(Error::Infeasible(*p, "multiplicity f exceeds v − 1"));
    }
    let g = p.v - 1 - f;
    let comp = p.complement().ok_or(Error::Infeasible(*p, "negative complement parameters"))?;
    let minus_one = QuadExt::from_int(-1);
    Ok(Spectrum {
        params: *p,
        r_bar: (-&s).try_add(&minus_one)?,
        s_bar: (-&r).try_add(&minus_one)?,
        r,
        s,
        f,
        g,
        k_bar: comp.k,
        lambda_bar: comp.lambda,
        mu_bar: comp.mu,
    })
}

/// First and second eigenmatrices `P`, `Q` of the association scheme.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenmatrices {
    pub p: ExactMatrix,
    pub q: ExactMatrix,
}

pub fn eigenmatrices(params: &SrgParams) -> Result<Eigenmatrices, Error> {
    let sp = spectrum(params)?;
    let k = int(params.k as i128);
    let kb = int(sp.k_bar as i128);
    let f = int(sp.f as i128);
    let g = int(sp.g as i128);
    let one = QuadExt::one();
    let p = ExactMatrix::new(
        3,
        3,
        alloc::vec![
            one.clone(), k.clone(), kb.clone(),
            one.clone(), sp.r.clone(), sp.s_bar.clone(),
            one.clone(), sp.s.clone(), sp.r_bar.clone(),
        ],
    )?;
    let q = ExactMatrix::new(
        3,
        3,
        alloc::vec![
            one.clone(), f.clone(), g.clone(),
            one.clone(), f.try_mul(&sp.r)?.try_div(&k)?, g.try_mul(&sp.s)?.try_div(&k)?,
            one, f.try_mul(&sp.s_bar)?.try_div(&kb)?, g.try_mul(&sp.r_bar)?.try_div(&kb)?,
        ],
    )?;
    Ok(Eigenmatrices { p, q })
}

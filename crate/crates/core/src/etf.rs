//! Spherical embeddings of strongly regular graphs and exact certification
//! of equiangular tight frames through their Gram matrices.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::algebra::{mat_rank, ExactMatrix, QuadExt};
use crate::geometry::{enumerate, standard_space, FormKind, Selector};
use crate::graph::Graph;
use crate::spectrum::{spectrum, SrgParams};
use crate::{Error, FieldSpec};

/// Symmetric exact matrix with unit diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    entries: ExactMatrix,
}

impl GramMatrix {
    pub fn new(entries: ExactMatrix) -> Result<Self, Error> {
        if !entries.is_square() {
            return Err(Error::Invalid("Gram matrix must be square".into()));
        }
        if !(0..entries.rows()).all(|i| entries.get(i, i).is_one()) {
            return Err(Error::Invalid("Gram matrix must have unit diagonal".into()));
        }
        if !entries.is_symmetric() {
            return Err(Error::Invalid("Gram matrix must be symmetric".into()));
        }
        Ok(Self { entries })
    }

    /// Number of vectors `M`.
    pub fn size(&self) -> usize {
        self.entries.rows()
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &QuadExt {
        self.entries.get(i, j)
    }

    /// Whether `G² = c·G` exactly.
    pub fn squares_to(&self, c: &QuadExt) -> Result<bool, Error> {
        let sq = self.entries.mat_mul(&self.entries)?;
        Ok(sq == self.entries.scale(c)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EtfStatus {
    Etf,
    /// Two off-diagonal entries of different absolute value.
    NotEquiangular { first: (usize, usize), witness: (usize, usize) },
    /// First entry where `G²` and `(M/N)·G` differ.
    NotTight { witness: (usize, usize) },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtfCertificate {
    pub m: usize,
    pub n: usize,
    /// Largest squared off-diagonal entry; the common value when equiangular.
    pub alpha_sq: QuadExt,
    /// `M / N`.
    pub tight_const: BigRational,
    pub status: EtfStatus,
}

impl EtfCertificate {
    pub fn is_etf(&self) -> bool {
        self.status == EtfStatus::Etf
    }

    /// `(M − N) / (N(M − 1))`, zero for a single vector.
    pub fn welch_bound_sq(&self) -> BigRational {
        welch_bound_sq(self.m as u64, self.n as u64)
    }

    pub fn meets_welch_bound(&self) -> bool {
        self.alpha_sq == QuadExt::rational(self.welch_bound_sq())
    }

    pub fn exceeds_welch_bound(&self) -> bool {
        self.alpha_sq > QuadExt::rational(self.welch_bound_sq())
    }
}

pub fn welch_bound_sq(m: u64, n: u64) -> BigRational {
    if m <= 1 || n == 0 {
        return BigRational::zero();
    }
    BigRational::new(BigInt::from(m - n), BigInt::from(n * (m - 1)))
}

fn ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Gram matrix of the spherical embedding: `1` on the diagonal, `s/k` for
/// adjacent and `r̄/k̄` for distinct non-adjacent vertices.
pub fn embedding_gram(g: &Graph) -> Result<GramMatrix, Error> {
    let p = g.srg_params()?;
    let sp = spectrum(&p)?;
    let adj = sp.s.try_div(&QuadExt::from_int(p.k as i64))?;
    let non = sp.r_bar.try_div(&QuadExt::from_int(sp.k_bar as i64))?;
    let one = QuadExt::one();
    let m = ExactMatrix::from_fn(g.order(), g.order(), |i, j| {
        if i == j {
            one.clone()
        } else if g.adjacent(i, j) {
            adj.clone()
        } else {
            non.clone()
        }
    })?;
    GramMatrix::new(m)
}

/// Certifies a Gram matrix. Equiangularity is checked entry by entry. When
/// `G² = c·G` the matrix is `c` times an orthogonal projection, so `N = M/c`
/// is read off the trace; otherwise `N` is the exact rank and tightness
/// `G² = (M/N)·G` fails at the reported witness.
pub fn verify_etf(gram: &GramMatrix) -> Result<EtfCertificate, Error> {
    let m = gram.size();
    if m == 0 {
        return Err(Error::Invalid("empty Gram matrix".into()));
    }
    let mut alpha_sq = QuadExt::zero();
    let mut first: Option<((usize, usize), QuadExt)> = None;
    let mut status = EtfStatus::Etf;
    for i in 0..m {
        for j in i + 1..m {
            let sq = gram.get(i, j).square();
            if sq.try_cmp(&alpha_sq)?.is_gt() {
                alpha_sq = sq.clone();
            }
            match &first {
                None => first = Some(((i, j), sq)),
                Some((pair, val)) => {
                    if status == EtfStatus::Etf && *val != sq {
                        status = EtfStatus::NotEquiangular { first: *pair, witness: (i, j) };
                    }
                }
            }
        }
    }

    let sq = gram.matrix().mat_mul(gram.matrix())?;
    let c = sq.get(0, 0).clone();
    let projection = c
        .to_rational()
        .filter(|c| c.is_positive() && (BigRational::from_integer(BigInt::from(m)) / c).is_integer());
    let n = match projection {
        Some(c) if sq == gram.matrix().scale(&QuadExt::rational(c.clone()))? => {
            let n = BigRational::from_integer(BigInt::from(m)) / c;
            usize::try_from(n.to_integer()).map_err(|_| Error::Internal("rank overflow"))?
        }
        _ => {
            let n = mat_rank(gram.matrix());
            if status == EtfStatus::Etf {
                let target = gram.matrix().scale(&QuadExt::rational(ratio(m as u64, n as u64)))?;
                let t = (0..m * m).find(|&t| sq.get(t / m, t % m) != target.get(t / m, t % m));
                let t = t.ok_or(Error::Internal("tightness holds but trace test failed"))?;
                status = EtfStatus::NotTight { witness: (t / m, t % m) };
            }
            n
        }
    };
    let tight_const = if n == 0 { BigRational::zero() } else { ratio(m as u64, n as u64) };
    let cert = EtfCertificate { m, n, alpha_sq, tight_const, status };
    if cert.is_etf() && !cert.meets_welch_bound() {
        return Err(Error::Internal("equiangular tight Gram matrix violates Welch equality"));
    }
    Ok(cert)
}

/// The two arithmetic criteria on parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Criteria {
    /// `s/k = −r̄/k̄`.
    pub equiangular: bool,
    /// `v = 2(2k − λ − μ)`.
    pub two_graph: bool,
}

pub fn criteria(p: &SrgParams) -> Result<Criteria, Error> {
    let sp = spectrum(p)?;
    let lhs = sp.s.try_div(&QuadExt::from_int(p.k as i64))?;
    let rhs = (-&sp.r_bar).try_div(&QuadExt::from_int(sp.k_bar as i64))?;
    let two_graph = p.v as i128 == 2 * (2 * p.k as i128 - p.lambda as i128 - p.mu as i128);
    Ok(Criteria { equiangular: lhs == rhs, two_graph })
}

/// `(M/(M − N))·(I − (N/M)·G)` for a certified ETF with `N < M`.
pub fn naimark(gram: &GramMatrix, cert: &EtfCertificate) -> Result<GramMatrix, Error> {
    if !cert.is_etf() || cert.m != gram.size() || cert.n >= cert.m {
        return Err(Error::NotEtf);
    }
    let (m, n) = (cert.m as u64, cert.n as u64);
    let scaled = gram.matrix().scale(&QuadExt::rational(ratio(n, m)))?;
    let inner = ExactMatrix::identity(cert.m).try_sub(&scaled)?;
    GramMatrix::new(inner.scale(&QuadExt::rational(ratio(m, m - n)))?)
}

/// `I + (1/(1 + 2r))·[[0, 𝟙ᵀ], [𝟙, J − I − 2A]]`, an ETF Gram matrix of size
/// `v + 1` when `k = 2μ`.
pub fn descendant_gram(g: &Graph) -> Result<GramMatrix, Error> {
    let p = g.srg_params()?;
    if p.k != 2 * p.mu {
        return Err(Error::NotDescendantSource(p));
    }
    let sp = spectrum(&p)?;
    let c = QuadExt::one().try_add(&sp.r.try_add(&sp.r)?)?.inv()?;
    let minus_c = -&c;
    let one = QuadExt::one();
    let size = g.order() + 1;
    let m = ExactMatrix::from_fn(size, size, |i, j| {
        if i == j {
            one.clone()
        } else if i == 0 || j == 0 || !g.adjacent(i - 1, j - 1) {
            c.clone()
        } else {
            minus_c.clone()
        }
    })?;
    GramMatrix::new(m)
}

/// Graph on the frame vectors, adjacent where the inner product is negative.
pub fn sign_graph(gram: &GramMatrix) -> Graph {
    Graph::from_fn(gram.size(), |i, j| gram.get(i, j).signum() < 0)
}

/// Character-sum coordinates for the vector graphs over `F_2^{2n}`: the
/// column of `x` is `((−1)^{B(x,z)} / √N)` over the nonsingular points `z`.
/// `Plus` gives `VO⁺_{2n}(2)`, `Minus` the complement of `VO⁻_{2n}(2)`.
pub fn vo_vectors(n: usize, kind: FormKind, max_ambient: u64) -> Result<ExactMatrix, Error> {
    if kind == FormKind::Parabolic || n < 1 {
        return Err(Error::InvalidForm("vector coordinates need a plus or minus form"));
    }
    let field = FieldSpec::new(2, 1)?;
    let space = standard_space(&field, 2 * n, kind)?;
    let points = enumerate(&space, Selector::NonsingularPoints, max_ambient)?;
    let count = points.len();
    let unit = QuadExt::sqrt_of(count as u64).scale(&ratio(1, count as u64));
    let neg = -&unit;
    let vectors: Vec<Vec<u32>> = (0..space.ambient_size()).map(|i| space.vector(i)).collect();
    Ok(ExactMatrix::from_fn(count, vectors.len(), |z, x| {
        if space.polar(&vectors[x], &points[z]) == 0 {
            unit.clone()
        } else {
            neg.clone()
        }
    })?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build, Family, FamilySpec};
    use core::str::FromStr;

    fn qe(s: &str) -> QuadExt {
        QuadExt::from_str(s).unwrap()
    }

    #[test]
    fn no6_plus_is_an_etf() {
        let g = build(FamilySpec::new(Family::NoPlus2n2, 3)).unwrap();
        let gram = embedding_gram(&g).unwrap();
        let (i, j) = g.edges()[0];
        assert_eq!(gram.get(i, j), &qe("-1/3"));
        let (a, b) = (0..28)
            .flat_map(|a| (a + 1..28).map(move |b| (a, b)))
            .find(|&(a, b)| !g.adjacent(a, b))
            .unwrap();
        assert_eq!(gram.get(a, b), &qe("1/3"));
        let cert = verify_etf(&gram).unwrap();
        assert!(cert.is_etf());
        assert_eq!((cert.m, cert.n), (28, 7));
        assert_eq!(cert.alpha_sq, qe("1/9"));
        assert!(cert.meets_welch_bound());
    }

    #[test]
    fn identity_is_a_trivial_etf() {
        let gram = GramMatrix::new(ExactMatrix::identity(5)).unwrap();
        let cert = verify_etf(&gram).unwrap();
        assert!(cert.is_etf());
        assert_eq!((cert.m, cert.n), (5, 5));
        assert!(cert.alpha_sq.is_zero());
    }

    #[test]
    fn sp6_is_not_equiangular() {
        let g = build(FamilySpec::new(Family::Sp2n2, 3)).unwrap();
        let cert = verify_etf(&embedding_gram(&g).unwrap()).unwrap();
        assert!(matches!(cert.status, EtfStatus::NotEquiangular { .. }));
        assert!(cert.exceeds_welch_bound());
        let c = criteria(&g.srg_params().unwrap()).unwrap();
        assert_eq!(c, Criteria { equiangular: false, two_graph: false });
    }

    #[test]
    fn criteria_on_parameters() {
        let yes = Criteria { equiangular: true, two_graph: true };
        assert_eq!(criteria(&SrgParams::new(28, 15, 6, 10)).unwrap(), yes);
        assert_eq!(criteria(&SrgParams::new(176, 105, 68, 54)).unwrap(), yes);
        assert_eq!(
            criteria(&SrgParams::new(63, 30, 13, 15)).unwrap(),
            Criteria { equiangular: false, two_graph: false }
        );
    }

    #[test]
    fn naimark_complement() {
        let g = build(FamilySpec::new(Family::NoPlus2n2, 3)).unwrap();
        let gram = embedding_gram(&g).unwrap();
        let cert = verify_etf(&gram).unwrap();
        let comp = naimark(&gram, &cert).unwrap();
        let cert2 = verify_etf(&comp).unwrap();
        assert!(cert2.is_etf());
        assert_eq!((cert2.m, cert2.n), (28, 21));
        assert_eq!(naimark(&comp, &cert2).unwrap(), gram);
        let not_etf = EtfCertificate { status: EtfStatus::NotTight { witness: (0, 0) }, ..cert };
        assert_eq!(naimark(&gram, &not_etf), Err(Error::NotEtf));
    }

    #[test]
    fn descendant_grams() {
        let cases = [
            (FamilySpec::new(Family::Sp2n2, 2), 16, 6, "1/9"),
            (FamilySpec::new(Family::Paley, 5), 6, 3, "1/5"),
            (FamilySpec::new(Family::OPlus2n2, 2), 10, 5, "1/9"),
        ];
        for (spec, m, n, alpha_sq) in cases {
            let g = build(spec).unwrap();
            let cert = verify_etf(&descendant_gram(&g).unwrap()).unwrap();
            assert!(cert.is_etf(), "{spec}");
            assert_eq!((cert.m, cert.n), (m, n), "{spec}");
            assert_eq!(cert.alpha_sq, qe(alpha_sq));
        }
        let g = build(FamilySpec::new(Family::NoPlus2n2, 3)).unwrap();
        assert!(matches!(descendant_gram(&g), Err(Error::NotDescendantSource(_))));
    }

    #[test]
    fn vo_coordinates_match_embedding() {
        let v = vo_vectors(2, FormKind::Plus, 1 << 20).unwrap();
        assert_eq!((v.rows(), v.cols()), (6, 16));
        assert!(v.entries().iter().all(|e| e.square() == qe("1/6")));
        let gram = v.transpose().mat_mul(&v).unwrap();
        let g = build(FamilySpec::new(Family::VoPlus, 2)).unwrap();
        assert_eq!(&gram, embedding_gram(&g).unwrap().matrix());
    }
}

//! Small finite fields `GF(p^e)` with table-driven multiplication.
//!
//! Elements are indices `0..q` encoding the coefficient vector of a
//! polynomial of degree `< e` in base `p`, constant term least significant.
//! The modulus is the lexicographically smallest irreducible monic
//! polynomial of degree `e` (for `GF(4)` this is `x² + x + 1`), and the
//! stored primitive element is the smallest index of multiplicative order
//! `q − 1`.

use alloc::vec;
use alloc::vec::Vec;

use crate::Error;

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u32 = 1 << 16;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FieldSpec {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    primitive: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Decomposes `q = p^e` with `p` prime.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p as u32, e))
}

// Polynomials over GF(p), coefficient vectors with the constant term first.

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    // m is monic.
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            let t = (r[shift + i] + p - (lead * c) % p) % p;
            r[shift + i] = t;
        }
        r = trim(r);
    }
    r
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

fn digits(mut x: u32, p: u32, e: u32) -> Vec<u32> {
    (0..e)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(c: &[u32], p: u32) -> u32 {
    c.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn monic(low: u32, p: u32, deg: u32) -> Vec<u32> {
    let mut c = digits(low, p, deg);
    c.push(1);
    c
}

fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = (m.len() - 1) as u32;
    for dd in 1..=deg / 2 {
        for low in 0..p.pow(dd) {
            if poly_rem(m, &monic(low, p, dd), p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    /// Builds `GF(p^e)`.
    pub fn new(p: u32, e: u32) -> Result<Self, Error> {
        if !is_prime(p as u64) || e == 0 {
            return Err(Error::InvalidField { p, e });
        }
        let q = (p as u64).checked_pow(e).filter(|&q| q <= MAX_FIELD_ORDER as u64);
        let Some(q) = q else {
            return Err(Error::InvalidField { p, e });
        };
        let q = q as u32;
        let modulus = (0..p.pow(e))
            .map(|low| monic(low, p, e))
            .find(|m| e == 1 || is_irreducible(m, p))
            .ok_or(Error::Internal("no irreducible polynomial found"))?;

        let mul_raw = |a: u32, b: u32| -> u32 {
            let prod = poly_mul(&trim(digits(a, p, e)), &trim(digits(b, p, e)), p);
            undigits(&poly_rem(&prod, &modulus, p), p)
        };

        let mut primitive = None;
        for g in 1..q {
            let mut x = g;
            let mut order = 1;
            while x != 1 {
                x = mul_raw(x, g);
                order += 1;
            }
            if order == q - 1 {
                primitive = Some(g);
                break;
            }
        }
        let primitive = primitive.ok_or(Error::Internal("no primitive element found"))?;

        let mut exp = vec![0u32; (q - 1) as usize];
        let mut log = vec![0u32; q as usize];
        let mut x = 1;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = x;
            log[x as usize] = i as u32;
            x = mul_raw(x, primitive);
        }
        Ok(Self { p, e, q, modulus, primitive, exp, log })
    }

    /// `GF(q)` for a prime power `q`.
    pub fn of_order(q: u32) -> Result<Self, Error> {
        let (p, e) = prime_power(q as u64).ok_or(Error::InvalidField { p: q, e: 1 })?;
        Self::new(p, e)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Coefficients of the monic modulus, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn primitive_element(&self) -> u32 {
        self.primitive
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    pub fn add(&self, x: u32, y: u32) -> u32 {
        if self.p == 2 {
            return x ^ y;
        }
        if self.e == 1 {
            return (x + y) % self.p;
        }
        let (mut x, mut y) = (x, y);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.e {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, x: u32) -> u32 {
        if self.p == 2 {
            return x;
        }
        let mut x = x;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.e {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, x: u32, y: u32) -> u32 {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        if x == 0 || y == 0 {
            return 0;
        }
        let n = self.q - 1;
        self.exp[((self.log[x as usize] + self.log[y as usize]) % n) as usize]
    }

    pub fn inv(&self, x: u32) -> Option<u32> {
        if x == 0 {
            return None;
        }
        let n = self.q - 1;
        Some(self.exp[((n - self.log[x as usize]) % n) as usize])
    }

    /// `g^k` for the stored primitive element `g`.
    pub fn primitive_power(&self, k: u64) -> u32 {
        self.exp[(k % (self.q as u64 - 1)) as usize]
    }

    /// Discrete logarithm to the base of the stored primitive element.
    pub fn log(&self, x: u32) -> Option<u32> {
        (x != 0).then(|| self.log[x as usize])
    }

    pub fn pow(&self, x: u32, k: u64) -> u32 {
        if k == 0 {
            return 1;
        }
        match self.log(x) {
            None => 0,
            Some(l) => self.primitive_power(l as u64 * k),
        }
    }

    /// Nonzero squares (in odd characteristic: even discrete logarithm).
    pub fn is_nonzero_square(&self, x: u32) -> bool {
        match self.log(x) {
            None => false,
            Some(_) if self.p == 2 => true,
            Some(l) => l % 2 == 0,
        }
    }
}

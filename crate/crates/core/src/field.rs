//! Small finite fields `F_q` by lookup tables.
//!
//! Element `x` of `F_{p^k}` is the polynomial whose base-`p` digits are the
//! coefficients, reduced modulo a fixed irreducible polynomial.

use crate::error::{Error, Result};

/// Supported field sizes with the monic irreducible polynomial used for
/// `k > 1` (coefficients ascending, leading 1 included).
const SUPPORTED: &[(u32, u32, u32, &[u32])] = &[
    (2, 2, 1, &[]),
    (3, 3, 1, &[]),
    (4, 2, 2, &[1, 1, 1]),
    (5, 5, 1, &[]),
    (7, 7, 1, &[]),
    (8, 2, 3, &[1, 1, 0, 1]),
    (9, 3, 2, &[1, 0, 1]),
    (11, 11, 1, &[]),
    (13, 13, 1, &[]),
    (16, 2, 4, &[1, 1, 0, 0, 1]),
    (25, 5, 2, &[2, 1, 1]),
    (27, 3, 3, &[1, 2, 0, 1]),
];

pub fn supported_sizes() -> Vec<u32> {
    SUPPORTED.iter().map(|s| s.0).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field {
    q: u32,
    p: u32,
    k: u32,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl Field {
    pub fn new(q: u32) -> Result<Self> {
        let &(_, p, k, modulus) = SUPPORTED.iter().find(|s| s.0 == q).ok_or(Error::UnsupportedField(q))?;
        let digits = |x: u32| -> Vec<u32> { (0..k).map(|i| (x / p.pow(i)) % p).collect() };
        let undigits = |d: &[u32]| -> u32 { d.iter().rev().fold(0, |acc, &c| acc * p + c) };
        let qs = q as usize;
        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = undigits(&sum) as u8;
                let mut prod = vec![0u32; (2 * k) as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                // reduce modulo the monic irreducible
                for deg in (k as usize..prod.len()).rev() {
                    let c = prod[deg];
                    if c != 0 {
                        for (i, m) in modulus.iter().enumerate() {
                            let idx = deg - k as usize + i;
                            prod[idx] = (prod[idx] + p * p - (c * m) % p) % p;
                        }
                    }
                }
                mul[(a * q + b) as usize] = undigits(&prod[..k as usize]) as u8;
            }
        }
        let neg = (0..q).map(|a| (0..q).find(|&b| add[(a * q + b) as usize] == 0).unwrap() as u8).collect();
        let mut inv = vec![0u8; qs];
        for a in 1..q {
            inv[a as usize] = (1..q).find(|&b| mul[(a * q + b) as usize] == 1).unwrap() as u8;
        }
        Ok(Field { q, p, k, add, mul, neg, inv })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `a` must be nonzero.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        0..self.q as u8
    }

    /// A basis of `F_q` over `F_p`: `1, x, .., x^{k-1}`.
    pub fn additive_basis(&self) -> Vec<u8> {
        (0..self.k).map(|i| self.p.pow(i) as u8).collect()
    }
}

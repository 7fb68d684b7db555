//! Linear algebra over `F_q` on the truncated module `eps^{-n} cl / eps^{n+1} cl`.
//!
//! Every lattice `M` with `eps^{n+1} cl ⊆ M ⊆ eps^{-n} cl` is determined by its
//! image there, an `F_q`-subspace stable under multiplication by `eps`.
//! Coordinates: component `c ∈ {0,1}` and power `p ∈ -n..=n` live at index
//! `c * (2n+1) + (p + n)`.

use crate::field::Field;

/// A vector of `F_q((eps))^2` truncated to powers `-n..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentVec {
    pub n: usize,
    /// `coeffs[c][p + n]`
    pub coeffs: [Vec<u8>; 2],
}

impl LaurentVec {
    pub fn zero(n: usize) -> Self {
        LaurentVec { n, coeffs: [vec![0; 2 * n + 1], vec![0; 2 * n + 1]] }
    }

    /// `eps^power e_c`.
    pub fn unit(n: usize, c: usize, power: i64) -> Self {
        let mut v = Self::zero(n);
        v.coeffs[c][(power + n as i64) as usize] = 1;
        v
    }

    pub fn width(&self) -> usize {
        2 * self.n + 1
    }

    pub fn get(&self, c: usize, power: i64) -> u8 {
        let idx = power + self.n as i64;
        if idx < 0 || idx as usize >= self.width() {
            0
        } else {
            self.coeffs[c][idx as usize]
        }
    }

    /// Multiply by `eps^k` (k >= 0), dropping powers above `n`.
    pub fn shift(&self, k: usize) -> Self {
        let w = self.width();
        let mut out = Self::zero(self.n);
        for c in 0..2 {
            for i in 0..w.saturating_sub(k) {
                out.coeffs[c][i + k] = self.coeffs[c][i];
            }
        }
        out
    }

    pub fn axpy(&self, f: &Field, a: u8, other: &LaurentVec) -> Self {
        let mut out = self.clone();
        for c in 0..2 {
            for (x, &y) in out.coeffs[c].iter_mut().zip(&other.coeffs[c]) {
                *x = f.add(*x, f.mul(a, y));
            }
        }
        out
    }

    pub fn scale(&self, f: &Field, a: u8) -> Self {
        Self::zero(self.n).axpy(f, a, self)
    }

    /// Flattened coordinates.
    pub fn flat(&self) -> Vec<u8> {
        let mut v = self.coeffs[0].clone();
        v.extend_from_slice(&self.coeffs[1]);
        v
    }
}

/// A 2x2 matrix whose entries are polynomials in `eps` (ascending
/// coefficients), acting on [`LaurentVec`]s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMat {
    pub entries: [[Vec<u8>; 2]; 2],
}

impl PolyMat {
    pub fn apply(&self, f: &Field, v: &LaurentVec) -> LaurentVec {
        let mut out = LaurentVec::zero(v.n);
        for r in 0..2 {
            for c in 0..2 {
                for (k, &a) in self.entries[r][c].iter().enumerate() {
                    if a == 0 {
                        continue;
                    }
                    let shifted = LaurentVec { n: v.n, coeffs: [v.coeffs[c].clone(), vec![0; v.width()]] }.shift(k);
                    for (x, &y) in out.coeffs[r].iter_mut().zip(&shifted.coeffs[0]) {
                        *x = f.add(*x, f.mul(a, y));
                    }
                }
            }
        }
        out
    }

    /// Constant term, as a matrix over `F_q`.
    pub fn constant(&self) -> [[u8; 2]; 2] {
        let c = |r: usize, s: usize| self.entries[r][s].first().copied().unwrap_or(0);
        [[c(0, 0), c(0, 1)], [c(1, 0), c(1, 1)]]
    }
}

/// A subspace of `F_q^dim` in reduced row echelon form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    dim: usize,
    rows: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(dim: usize) -> Self {
        Subspace { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn span<I: IntoIterator<Item = Vec<u8>>>(f: &Field, dim: usize, vectors: I) -> Self {
        let mut s = Self::zero(dim);
        for v in vectors {
            s.insert(f, v);
        }
        s
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<u8>] {
        &self.rows
    }

    fn reduce(&self, f: &Field, v: &mut [u8]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
    }

    pub fn contains(&self, f: &Field, v: &[u8]) -> bool {
        let mut w = v.to_vec();
        self.reduce(f, &mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Add `v` to the span, keeping the rows fully reduced and sorted by pivot.
    pub fn insert(&mut self, f: &Field, mut v: Vec<u8>) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        self.reduce(f, &mut v);
        let Some(p) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let s = f.inv(v[p]);
        for x in v.iter_mut() {
            *x = f.mul(*x, s);
        }
        for row in self.rows.iter_mut() {
            let c = row[p];
            if c != 0 {
                for (x, &y) in row.iter_mut().zip(&v) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    pub fn sum(&self, f: &Field, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for v in &other.rows {
            s.insert(f, v.clone());
        }
        s
    }

    /// Annihilator under the standard dot product.
    pub fn annihilator(&self, f: &Field) -> Subspace {
        let free: Vec<usize> = (0..self.dim).filter(|c| !self.pivots.contains(c)).collect();
        let vecs = free.iter().map(|&fc| {
            let mut x = vec![0u8; self.dim];
            x[fc] = 1;
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                x[p] = f.neg(row[fc]);
            }
            x
        });
        Subspace::span(f, self.dim, vecs.collect::<Vec<_>>())
    }

    pub fn intersect(&self, f: &Field, other: &Subspace) -> Subspace {
        self.annihilator(f).sum(f, &other.annihilator(f)).annihilator(f)
    }

    pub fn is_subspace_of(&self, f: &Field, other: &Subspace) -> bool {
        self.rows.iter().all(|v| other.contains(f, v))
    }
}

/// The image in the level-`n` module of the lattice spanned by `basis`.
pub fn lattice_span(f: &Field, basis: &[LaurentVec]) -> Subspace {
    let n = basis[0].n;
    let dim = 2 * (2 * n + 1);
    let mut s = Subspace::zero(dim);
    for b in basis {
        for k in 0..=2 * n {
            s.insert(f, b.shift(k).flat());
        }
    }
    s
}

//! Volume-one lattices at tree distance `2n` from the base lattice.

use serde::{Serialize, Serializer};

use super::space::{lattice_span, LaurentVec, Subspace};
use super::Line;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::field::Field;

/// Refuse enumerations with more lattices than this.
pub const MAX_LATTICES: usize = 1 << 20;

/// A lattice `cl'` with elementary divisors `(eps^{-n}, eps^n)` relative to
/// `cl`, identified by the non-backtracking tree walk of length `2n` that
/// reaches `eps^n cl'` from `cl`.
///
/// Walk letters: `t < q` replaces the basis `(b1, b2)` by `(b1 + t b2, eps b2)`
/// and `q` replaces it by `(b2, -eps b1)`. Only the first letter may be `q`.
/// The resulting basis, scaled by `eps^{-n}`, is the canonical basis of `cl'`.
#[derive(Debug, Clone)]
pub struct LatticeClass {
    pub n: usize,
    pub walk: Vec<u8>,
    pub basis: [LaurentVec; 2],
    /// Image of `cl'` in `eps^{-n} cl / eps^{n+1} cl`.
    pub span: Subspace,
    /// Image of `eps cl'`.
    pub eps_span: Subspace,
}

impl PartialEq for LatticeClass {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.span == other.span
    }
}

impl Eq for LatticeClass {}

impl Serialize for LatticeClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("LatticeClass", 3)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("divisors", &self.divisors())?;
        st.serialize_field("walk", &self.walk)?;
        st.end()
    }
}

impl LatticeClass {
    pub fn base(f: &Field, n: usize) -> LatticeClass {
        Self::from_basis(f, n, Vec::new(), [LaurentVec::unit(n, 0, 0), LaurentVec::unit(n, 1, 0)])
    }

    pub fn from_walk(f: &Field, n: usize, walk: &[u8]) -> Result<LatticeClass> {
        let q = f.q() as u8;
        if walk.len() != 2 * n {
            return Err(Error::Precondition(format!("walk of length {} at level {n}", walk.len())));
        }
        for (i, &s) in walk.iter().enumerate() {
            if s > q || (i > 0 && s == q) {
                return Err(Error::Precondition(format!("letter {s} at position {i} backtracks or is out of range")));
            }
        }
        let n_i = n as i64;
        let mut b = [LaurentVec::unit(n, 0, -n_i), LaurentVec::unit(n, 1, -n_i)];
        for &s in walk {
            b = if s == q {
                let neg = b[0].shift(1).scale(f, f.neg(1));
                [b[1].clone(), neg]
            } else {
                [b[0].axpy(f, s, &b[1]), b[1].shift(1)]
            };
        }
        Ok(Self::from_basis(f, n, walk.to_vec(), b))
    }

    fn from_basis(f: &Field, n: usize, walk: Vec<u8>, basis: [LaurentVec; 2]) -> LatticeClass {
        let span = lattice_span(f, &basis);
        let eps_span = lattice_span(f, &[basis[0].shift(1), basis[1].shift(1)]);
        LatticeClass { n, walk, basis, span, eps_span }
    }

    /// Exponents `(a, b)` of the elementary divisors.
    pub fn divisors(&self) -> (i64, i64) {
        (-(self.n as i64), self.n as i64)
    }

    /// Coordinates of `v` (which must lie in `cl'`) in `cl'/eps cl'`.
    pub fn reduce(&self, f: &Field, v: &LaurentVec) -> Option<(u8, u8)> {
        let flat = v.flat();
        let b0 = self.basis[0].flat();
        let b1 = self.basis[1].flat();
        for x in f.elements() {
            for y in f.elements() {
                let w: Vec<u8> = flat
                    .iter()
                    .zip(b0.iter().zip(&b1))
                    .map(|(&a, (&c, &d))| f.sub(a, f.add(f.mul(x, c), f.mul(y, d))))
                    .collect();
                if self.eps_span.contains(f, &w) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// `dim cl/(cl ∩ cl')`.
    pub fn colength(&self, f: &Field) -> usize {
        let cl = LatticeClass::base(f, self.n);
        cl.span.dim() - cl.span.intersect(f, &self.span).dim()
    }
}

fn walks(q: u8, n: usize) -> Vec<Vec<u8>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out: Vec<Vec<u8>> = (0..=q).map(|s| vec![s]).collect();
    for _ in 1..2 * n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..q).map(move |s| {
                    let mut v = w.clone();
                    v.push(s);
                    v
                })
            })
            .collect();
    }
    out
}

/// Every `cl'` with `dim cl/(cl ∩ cl') = n`, in lexicographic walk order.
pub fn enumerate_lattices(q: u32, n: usize) -> Result<Vec<LatticeClass>> {
    enumerate_lattices_with(q, n, Exec::default())
}

pub fn enumerate_lattices_with(q: u32, n: usize, exec: Exec) -> Result<Vec<LatticeClass>> {
    let f = Field::new(q)?;
    let count = if n == 0 {
        Some(1)
    } else {
        (q as usize + 1).checked_mul((q as usize).checked_pow(2 * n as u32 - 1).unwrap_or(usize::MAX))
    };
    match count {
        Some(c) if c <= MAX_LATTICES => {}
        _ => return Err(Error::TooLarge(format!("level {n} over F_{q} exceeds {MAX_LATTICES} lattices"))),
    }
    let ws = walks(q as u8, n);
    Ok(exec.map(&ws, |w| LatticeClass::from_walk(&f, n, w).expect("generated walks are valid")))
}

/// Image of `base ∩ other` in `base / eps base`, a line when the two
/// lattices are distinct with the same volume.
pub fn reduction_line(f: &Field, base: &LatticeClass, other: &LatticeClass) -> Result<Line> {
    let meet = base.span.intersect(f, &other.span);
    let w = base.basis[0].width();
    let mut image = Subspace::zero(2);
    for v in meet.basis() {
        let lv = LaurentVec { n: base.n, coeffs: [v[..w].to_vec(), v[w..].to_vec()] };
        let (x, y) =
            base.reduce(f, &lv).ok_or_else(|| Error::Precondition("intersection leaves the lattice".into()))?;
        image.insert(f, vec![x, y]);
    }
    if image.dim() != 1 {
        return Err(Error::Precondition(format!("reduction of the intersection has dimension {}", image.dim())));
    }
    let v = &image.basis()[0];
    Ok(Line::from_vector(f, v[0], v[1]).expect("nonzero"))
}

/// `(cl̄_1, cl̄_2)`: the lines cut out by `cl ∩ cl'` in `cl/eps cl` and in
/// `cl'/eps cl'`, the latter in the canonical basis of `cl'`.
pub fn boundary_lines(f: &Field, lattice: &LatticeClass) -> Result<(Line, Line)> {
    if lattice.n == 0 {
        return Err(Error::Precondition("boundary lines need n >= 1".into()));
    }
    let cl = LatticeClass::base(f, lattice.n);
    Ok((reduction_line(f, &cl, lattice)?, reduction_line(f, lattice, &cl)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn poly_vec(n: usize, e1: &[u8], e2: &[u8], shift: i64) -> LaurentVec {
        let mut v = LaurentVec::zero(n);
        for (k, &c) in e1.iter().enumerate() {
            let idx = k as i64 + shift + n as i64;
            if c != 0 {
                v.coeffs[0][idx as usize] = c;
            }
        }
        for (k, &c) in e2.iter().enumerate() {
            let idx = k as i64 + shift + n as i64;
            if c != 0 {
                v.coeffs[1][idx as usize] = c;
            }
        }
        v
    }

    /// Hermite representatives `span(eps^a e1, c e1 + eps^b e2)` with
    /// `a + b = 2n`, `deg c < a`, not inside `eps cl`, scaled by `eps^{-n}`.
    fn hermite_oracle(f: &Field, n: usize) -> HashSet<Subspace> {
        let q = f.q() as usize;
        let mut out = HashSet::new();
        for a in 0..=2 * n {
            let b = 2 * n - a;
            for code in 0..q.pow(a as u32) {
                let c: Vec<u8> = (0..a).map(|i| ((code / q.pow(i as u32)) % q) as u8).collect();
                let vc = c.iter().position(|&x| x != 0).unwrap_or(usize::MAX);
                if a.min(b).min(vc) != 0 {
                    continue;
                }
                let mut e1 = vec![0u8; a + 1];
                e1[a] = 1;
                let mut e2 = vec![0u8; b + 1];
                e2[b] = 1;
                let v1 = poly_vec(n, &e1, &[], -(n as i64));
                let v2 = poly_vec(n, &c, &e2, -(n as i64));
                out.insert(lattice_span(f, &[v1, v2]));
            }
        }
        out
    }

    #[test]
    fn base_level_is_single() {
        for q in [2, 3, 4, 5] {
            let l = enumerate_lattices(q, 0).unwrap();
            assert_eq!(l.len(), 1);
            assert!(l[0].walk.is_empty());
        }
    }

    #[test]
    fn counts_match_hermite_oracle() {
        for (q, n, expect) in [(2, 1, 6), (3, 2, 108), (2, 2, 24), (4, 1, 20), (5, 1, 30)] {
            let f = Field::new(q).unwrap();
            let lats = enumerate_lattices(q, n).unwrap();
            assert_eq!(lats.len(), expect, "q={q} n={n}");
            let tree: HashSet<Subspace> = lats.iter().map(|l| l.span.clone()).collect();
            assert_eq!(tree.len(), expect, "walks repeat a lattice");
            assert_eq!(tree, hermite_oracle(&f, n), "q={q} n={n}");
            for l in &lats {
                assert_eq!(l.colength(&f), n);
                assert_eq!(l.span.dim(), 2 * (2 * n + 1) - 2 * n);
            }
        }
    }

    #[test]
    fn unsupported_and_oversized_rejected() {
        assert_eq!(enumerate_lattices(6, 1).unwrap_err(), Error::UnsupportedField(6));
        assert!(matches!(enumerate_lattices(5, 9), Err(Error::TooLarge(_))));
        let f = Field::new(2).unwrap();
        assert!(LatticeClass::from_walk(&f, 1, &[0, 2]).is_err());
        assert!(boundary_lines(&f, &LatticeClass::base(&f, 0)).is_err());
    }

    #[test]
    fn first_line_is_unique_codim_one_overlattice() {
        for (q, n) in [(2, 1), (2, 2), (3, 1), (3, 2), (4, 1)] {
            let f = Field::new(q).unwrap();
            let cl = LatticeClass::base(&f, n);
            for l in enumerate_lattices(q, n).unwrap() {
                let (l1, _) = boundary_lines(&f, &l).unwrap();
                let meet = cl.span.intersect(&f, &l.span);
                // the q+1 index-q sublattices span(v, eps cl)
                let hits: Vec<Line> = Line::all(&f)
                    .filter(|line| {
                        let (x, y) = line.vector(&f);
                        let v = LaurentVec::unit(n, 0, 0).scale(&f, x).axpy(&f, y, &LaurentVec::unit(n, 1, 0));
                        let sub = lattice_span(&f, &[v, LaurentVec::unit(n, 0, 1), LaurentVec::unit(n, 1, 1)]);
                        meet.is_subspace_of(&f, &sub)
                    })
                    .collect();
                assert_eq!(hits, vec![l1], "q={q} walk={:?}", l.walk);
                // the first step of the walk picks the same line
                assert_eq!(l1, Line(l.walk[0]));
            }
        }
    }

    #[test]
    fn second_line_is_vertical_in_canonical_basis() {
        for (q, n) in [(2, 1), (2, 3), (3, 2), (5, 1)] {
            let f = Field::new(q).unwrap();
            for l in enumerate_lattices(q, n).unwrap() {
                let (_, l2) = boundary_lines(&f, &l).unwrap();
                assert_eq!(l2, Line(q as u8));
            }
        }
    }

    #[test]
    fn swapping_roles_swaps_lines() {
        let f = Field::new(2).unwrap();
        for n in 1..=2 {
            let cl = LatticeClass::base(&f, n);
            for l in enumerate_lattices(2, n).unwrap() {
                let (l1, l2) = boundary_lines(&f, &l).unwrap();
                assert_eq!(reduction_line(&f, &l, &cl).unwrap(), l2);
                assert_eq!(reduction_line(&f, &cl, &l).unwrap(), l1);
                // cl is at the same distance from cl'
                let meet = cl.span.intersect(&f, &l.span);
                assert_eq!(l.span.dim() - meet.dim(), n);
            }
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let a = enumerate_lattices_with(3, 2, Exec::Sequential).unwrap();
        let b = enumerate_lattices_with(3, 2, Exec::Parallel).unwrap();
        assert_eq!(a, b);
        assert!(a.windows(2).all(|w| w[0].walk < w[1].walk));
    }
}

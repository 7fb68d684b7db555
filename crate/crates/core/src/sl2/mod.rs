//! Finite-field model of `SL_2` lattice pairs.
//!
//! `cl = F_q[[eps]]^2` is the base lattice. A point is a pair `(cl', g)` with
//! `cl'` a volume-one lattice and `g: cl/eps cl -> cl'/eps cl'` a
//! volume-preserving isomorphism, written as a matrix in `SL_2(F_q)` in the
//! canonical bases. Points with `dim cl/(cl ∩ cl') = n` split into `Y0`
//! (`n = 0`), `Y'_n` and `Y''_n` according to whether `g` carries the
//! boundary line of `cl` to that of `cl'`.

mod census;
mod lattice;
mod orbit;
pub mod space;

use std::fmt;

use serde::{Serialize, Serializer};

use crate::field::Field;

pub use census::{
    census, census_with, classify_pair, label_with_lines, match_pieces, match_pieces_with, CensusRow, MatchReport,
    MatchRow, PairPoint,
};
pub use lattice::{
    boundary_lines, enumerate_lattices, enumerate_lattices_with, reduction_line, LatticeClass, MAX_LATTICES,
};
pub use orbit::{finite_part_inverts, orbit_census, predicted_orbits, OrbitCensus, OrbitStatus, MAX_ORBIT_LEVEL};

/// A 2x2 matrix over `F_q`, row major.
pub type Mat2 = [[u8; 2]; 2];

pub fn mat_mul(f: &Field, a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[0u8; 2]; 2];
    for (r, row) in out.iter_mut().enumerate() {
        for (c, x) in row.iter_mut().enumerate() {
            *x = f.add(f.mul(a[r][0], b[0][c]), f.mul(a[r][1], b[1][c]));
        }
    }
    out
}

pub fn det(f: &Field, a: &Mat2) -> u8 {
    f.sub(f.mul(a[0][0], a[1][1]), f.mul(a[0][1], a[1][0]))
}

/// Inverse of a determinant-one matrix.
pub fn sl2_inverse(f: &Field, a: &Mat2) -> Mat2 {
    [[a[1][1], f.neg(a[0][1])], [f.neg(a[1][0]), a[0][0]]]
}

/// All of `SL_2(F_q)`, in lexicographic order of `(a, b, c, d)`.
pub fn sl2_elements(f: &Field) -> Vec<Mat2> {
    let mut out = Vec::new();
    for a in f.elements() {
        for b in f.elements() {
            for c in f.elements() {
                for d in f.elements() {
                    let m = [[a, b], [c, d]];
                    if det(f, &m) == 1 {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

/// Index of an element in the list returned by [`sl2_elements`].
pub(crate) fn mat_key(f: &Field, m: &Mat2) -> usize {
    let q = f.q() as usize;
    ((m[0][0] as usize * q + m[0][1] as usize) * q + m[1][0] as usize) * q + m[1][1] as usize
}

/// A point of `P^1(F_q)`: `Line(t)` for `t < q` is `[1 : t]`, `Line(q)` is `[0 : 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Line(pub u8);

impl Line {
    pub fn from_vector(f: &Field, x: u8, y: u8) -> Option<Line> {
        if x != 0 {
            Some(Line(f.mul(y, f.inv(x))))
        } else if y != 0 {
            Some(Line(f.q() as u8))
        } else {
            None
        }
    }

    pub fn vector(self, f: &Field) -> (u8, u8) {
        if u32::from(self.0) == f.q() {
            (0, 1)
        } else {
            (1, self.0)
        }
    }

    pub fn all(f: &Field) -> impl Iterator<Item = Line> {
        (0..=f.q() as u8).map(Line)
    }

    pub fn image(self, f: &Field, m: &Mat2) -> Line {
        let (x, y) = self.vector(f);
        let nx = f.add(f.mul(m[0][0], x), f.mul(m[0][1], y));
        let ny = f.add(f.mul(m[1][0], x), f.mul(m[1][1], y));
        Line::from_vector(f, nx, ny).expect("invertible matrix")
    }
}

/// The piece a pair belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PieceLabel {
    Y0,
    YPrime(usize),
    YDoublePrime(usize),
}

impl PieceLabel {
    pub fn level(self) -> usize {
        match self {
            PieceLabel::Y0 => 0,
            PieceLabel::YPrime(n) | PieceLabel::YDoublePrime(n) => n,
        }
    }

    /// Closed-form size over `F_q`.
    pub fn formula(self, q: u64) -> u64 {
        let base = q * q - 1;
        match self {
            PieceLabel::Y0 => q * base,
            PieceLabel::YPrime(n) => q.pow(2 * n as u32) * base,
            PieceLabel::YDoublePrime(n) => q.pow(2 * n as u32 + 1) * base,
        }
    }

    /// The length of the matching affine Weyl group element for type `A1~`.
    pub fn weyl_length(self) -> usize {
        match self {
            PieceLabel::Y0 => 0,
            PieceLabel::YPrime(n) => 2 * n - 1,
            PieceLabel::YDoublePrime(n) => 2 * n,
        }
    }

    pub fn from_weyl_length(l: usize) -> PieceLabel {
        match l {
            0 => PieceLabel::Y0,
            l if l % 2 == 1 => PieceLabel::YPrime(l.div_ceil(2)),
            l => PieceLabel::YDoublePrime(l / 2),
        }
    }

    pub fn parse(s: &str) -> Option<PieceLabel> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("y0") {
            return Some(PieceLabel::Y0);
        }
        let (tag, n) = s.split_once(':').or_else(|| s.split_once('_'))?;
        let n: usize = n.parse().ok().filter(|&n| n >= 1)?;
        match tag.to_ascii_lowercase().as_str() {
            "yprime" | "y'" => Some(PieceLabel::YPrime(n)),
            "ydoubleprime" | "y''" => Some(PieceLabel::YDoublePrime(n)),
            _ => None,
        }
    }
}

impl fmt::Display for PieceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PieceLabel::Y0 => write!(f, "Y0"),
            PieceLabel::YPrime(n) => write!(f, "Yprime({n})"),
            PieceLabel::YDoublePrime(n) => write!(f, "Ydoubleprime({n})"),
        }
    }
}

impl Serialize for PieceLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

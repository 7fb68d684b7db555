//! Orbits of `SL_2(F_q[eps])` on a piece, by increasing `eps`-precision.
//!
//! `p` acts by `(cl', g) -> (p cl', M g p_0^{-1})` where `p_0 = p mod eps` and
//! `M` writes `p c_i` in the canonical basis of `p cl'` modulo `eps`. The group
//! at precision `N` is generated by the elementary matrices
//! `[[1, c eps^k], [0, 1]]` and `[[1, 0], [c eps^k, 1]]`, `k < N`, `c` running
//! over an additive basis of `F_q`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::lattice::{boundary_lines, enumerate_lattices, LatticeClass};
use super::space::{lattice_span, PolyMat, Subspace};
use super::{mat_key, mat_mul, sl2_elements, sl2_inverse, Mat2, PieceLabel};
use crate::bitorsor::{twisted_classes, Automorphism, FiniteGroup, TwistedComponent};
use crate::cartan::CartanSpec;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::weyl::WeylElement;

/// Highest level accepted by [`orbit_census`].
pub const MAX_ORBIT_LEVEL: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum OrbitStatus {
    Stable { count: usize, precision: usize },
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitCensus {
    pub q: u32,
    pub label: PieceLabel,
    pub points: usize,
    /// Orbit counts at precision `1, 2, ..`.
    pub counts_by_precision: Vec<usize>,
    #[serde(flatten)]
    pub status: OrbitStatus,
}

impl OrbitCensus {
    pub fn count(&self) -> Option<usize> {
        match self.status {
            OrbitStatus::Stable { count, .. } => Some(count),
            OrbitStatus::Inconclusive => None,
        }
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        self.0[a.max(b)] = a.min(b);
        true
    }
}

fn elementary(q_basis_elt: u8, k: usize, upper: bool) -> PolyMat {
    let mut x = vec![0u8; k + 1];
    x[k] = q_basis_elt;
    let one = vec![1u8];
    let entries = if upper { [[one.clone(), x], [vec![], one]] } else { [[one.clone(), vec![]], [x, one]] };
    PolyMat { entries }
}

/// Count orbits on the piece `label` at precisions `1..=max_precision`,
/// stopping once two consecutive precisions agree.
pub fn orbit_census(q: u32, label: PieceLabel, max_precision: usize) -> Result<OrbitCensus> {
    let f = Field::new(q)?;
    let n = label.level();
    if n > MAX_ORBIT_LEVEL {
        return Err(Error::TooLarge(format!("orbit census above level {MAX_ORBIT_LEVEL}")));
    }
    if max_precision == 0 {
        return Err(Error::Precondition("precision must be positive".into()));
    }
    let lattices = enumerate_lattices(q, n)?;
    let index: HashMap<&Subspace, usize> = lattices.iter().enumerate().map(|(i, l)| (&l.span, i)).collect();
    let group = sl2_elements(&f);
    let keys = (q as usize).pow(4);

    // point id of (lattice, g), or usize::MAX outside the piece
    let mut point = vec![usize::MAX; lattices.len() * keys];
    let mut members: Vec<Vec<Mat2>> = Vec::with_capacity(lattices.len());
    let mut total = 0;
    for (i, l) in lattices.iter().enumerate() {
        let lines = if n == 0 { None } else { Some(boundary_lines(&f, l)?) };
        let mine: Vec<Mat2> =
            group.iter().copied().filter(|g| super::census::label_with_lines(&f, n, lines, g) == label).collect();
        for g in &mine {
            point[i * keys + mat_key(&f, g)] = total;
            total += 1;
        }
        members.push(mine);
    }

    let mut uf = UnionFind((0..total).collect());
    let mut orbits = total;
    let mut counts = Vec::new();
    let mut status = OrbitStatus::Inconclusive;
    for k in 0..max_precision {
        for c in f.additive_basis() {
            for upper in [true, false] {
                let p = elementary(c, k, upper);
                let p0_inv = sl2_inverse(&f, &p.constant());
                for (i, l) in lattices.iter().enumerate() {
                    let (j, m) = act(&f, &p, l, &lattices, &index)?;
                    for g in &members[i] {
                        let h = mat_mul(&f, &mat_mul(&f, &m, g), &p0_inv);
                        let target = point[j * keys + mat_key(&f, &h)];
                        if target == usize::MAX {
                            return Err(Error::SequenceInvariant(format!("{label} is not stable under the action")));
                        }
                        if uf.union(point[i * keys + mat_key(&f, g)], target) {
                            orbits -= 1;
                        }
                    }
                }
            }
        }
        counts.push(orbits);
        if counts.len() >= 2 && counts[counts.len() - 2] == orbits {
            status = OrbitStatus::Stable { count: orbits, precision: k + 1 };
            break;
        }
    }
    Ok(OrbitCensus { q, label, points: total, counts_by_precision: counts, status })
}

/// Index of `p cl'` and the matrix of `p` from `cl'/eps cl'` to `p cl'/eps p cl'`.
fn act(
    f: &Field,
    p: &PolyMat,
    l: &LatticeClass,
    lattices: &[LatticeClass],
    index: &HashMap<&Subspace, usize>,
) -> Result<(usize, Mat2)> {
    let images = [p.apply(f, &l.basis[0]), p.apply(f, &l.basis[1])];
    let span = lattice_span(f, &images);
    let &j = index.get(&span).ok_or_else(|| Error::SequenceInvariant("image lattice left its level".into()))?;
    let mut m = [[0u8; 2]; 2];
    for (c, v) in images.iter().enumerate() {
        let (x, y) = lattices[j].reduce(f, v).ok_or_else(|| Error::SequenceInvariant("image outside p cl'".into()))?;
        m[0][c] = x;
        m[1][c] = y;
    }
    Ok((j, m))
}

/// Whether the finite part of `w` acts on the torus by inversion, read off
/// from `w(alpha_1)` modulo the null root of `A1~`.
pub fn finite_part_inverts(w: &WeylElement) -> bool {
    let col = w.root_image(1);
    col[1] < col[0]
}

/// Number of orbits predicted by twisted conjugacy: conjugacy classes of
/// `SL_2(F_q)` on `Y0`, and twisted classes of the torus `F_q^x` on `Y'_n`,
/// `Y''_n` with the twist of the matching `A1~` piece.
pub fn predicted_orbits(q: u32, label: PieceLabel) -> Result<usize> {
    let f = Field::new(q)?;
    match label {
        PieceLabel::Y0 => {
            let elems = sl2_elements(&f);
            let pos: HashMap<Mat2, usize> = elems.iter().enumerate().map(|(i, m)| (*m, i)).collect();
            let table = elems.iter().map(|a| elems.iter().map(|b| pos[&mat_mul(&f, a, b)]).collect()).collect();
            Ok(FiniteGroup::from_table(table)?.conjugacy_classes().len())
        }
        _ => {
            let spec = Arc::new(CartanSpec::affine("A", 1)?);
            let l = label.weyl_length();
            // the element of length l with no left descent at 0
            let word: Vec<usize> = (0..l).map(|i| if i % 2 == 0 { 1 } else { 0 }).collect();
            let w = WeylElement::from_word(&spec, &word)?;
            debug_assert!(!w.has_left_descent(0));
            let m = q as usize - 1;
            let theta = if finite_part_inverts(&w) {
                Automorphism((0..m).map(|x| (m - x) % m).collect())
            } else {
                Automorphism((0..m).collect())
            };
            let tc = TwistedComponent::new(FiniteGroup::cyclic(m), theta, None)?;
            Ok(twisted_classes(&tc).len())
        }
    }
}

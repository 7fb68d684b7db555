//! Exhaustive counts of `Y0`, `Y'_n`, `Y''_n` and their match with point-count
//! polynomials of the `A1~` pieces.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::lattice::{boundary_lines, enumerate_lattices_with, LatticeClass};
use super::{sl2_elements, Line, Mat2, PieceLabel};
use crate::bedard::{default_rank, enumerate_sequences_with, point_count, DiagramAut, PieceDescriptor};
use crate::cartan::CartanSpec;
use crate::error::Result;
use crate::exec::Exec;
use crate::field::Field;
use crate::nodeset::NodeSet;

/// A pair `(cl', g)`.
#[derive(Debug, Clone, Serialize)]
pub struct PairPoint {
    pub lattice: LatticeClass,
    pub g: Mat2,
}

/// Label of a pair whose boundary lines are already known (`None` at `n = 0`).
pub fn label_with_lines(f: &Field, n: usize, lines: Option<(Line, Line)>, g: &Mat2) -> PieceLabel {
    match lines {
        None => PieceLabel::Y0,
        Some((l1, l2)) if l1.image(f, g) == l2 => PieceLabel::YPrime(n),
        Some(_) => PieceLabel::YDoublePrime(n),
    }
}

pub fn classify_pair(f: &Field, p: &PairPoint) -> Result<PieceLabel> {
    let lines = if p.lattice.n == 0 { None } else { Some(boundary_lines(f, &p.lattice)?) };
    Ok(label_with_lines(f, p.lattice.n, lines, &p.g))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub q: u32,
    pub n: usize,
    pub label: PieceLabel,
    pub count: u64,
    pub formula_value: u64,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// Count every pair at levels `0..=n_max` by brute force.
pub fn census(q: u32, n_max: usize) -> Result<Vec<CensusRow>> {
    census_with(q, n_max, Exec::default())
}

pub fn census_with(q: u32, n_max: usize, exec: Exec) -> Result<Vec<CensusRow>> {
    let f = Field::new(q)?;
    let group = sl2_elements(&f);
    let mut rows = Vec::new();
    for n in 0..=n_max {
        let lattices = enumerate_lattices_with(q, n, exec)?;
        let per_lattice = exec.map(&lattices, |l| -> Result<BTreeMap<PieceLabel, u64>> {
            let lines = if n == 0 { None } else { Some(boundary_lines(&f, l)?) };
            let mut counts = BTreeMap::new();
            for g in &group {
                *counts.entry(label_with_lines(&f, n, lines, g)).or_insert(0) += 1;
            }
            Ok(counts)
        });
        let mut totals: BTreeMap<PieceLabel, u64> = BTreeMap::new();
        if n > 0 {
            totals.insert(PieceLabel::YPrime(n), 0);
            totals.insert(PieceLabel::YDoublePrime(n), 0);
        }
        for c in per_lattice {
            for (label, k) in c? {
                *totals.entry(label).or_insert(0) += k;
            }
        }
        for (label, count) in totals {
            let formula_value = label.formula(u64::from(q));
            rows.push(CensusRow { q, n, label, count, formula_value, matches: count == formula_value });
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, Serialize)]
pub struct MatchRow {
    pub w_inf: Vec<usize>,
    pub length: usize,
    pub label: PieceLabel,
    pub point_count: String,
    pub predicted: i128,
    pub census: Option<u64>,
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MatchReport {
    pub q: u32,
    pub max_len: usize,
    pub rows: Vec<MatchRow>,
    /// Every census count is hit by exactly one length.
    pub assignment_unique: bool,
    pub mismatches: Vec<String>,
}

impl MatchReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.assignment_unique && self.rows.iter().all(|r| r.matches)
    }
}

/// Compare point counts of the `A1~` pieces with `J = {0}`, `delta = id` and
/// `l(w_inf) <= max_len` against the census.
pub fn match_pieces(q: u32, max_len: usize) -> Result<MatchReport> {
    match_pieces_with(q, max_len, Exec::default())
}

pub fn match_pieces_with(q: u32, max_len: usize, exec: Exec) -> Result<MatchReport> {
    let spec = Arc::new(CartanSpec::affine("A", 1)?);
    let rank = default_rank(&spec);
    let nodes = NodeSet::singleton(0);
    let seqs = enumerate_sequences_with(&spec, nodes, &DiagramAut::identity(2), max_len, exec)?;
    let n_max = max_len.div_ceil(2);
    let census_rows = census_with(q, n_max, exec)?;
    let by_label: BTreeMap<PieceLabel, u64> = census_rows.iter().map(|r| (r.label, r.count)).collect();

    let mut rows = Vec::new();
    let mut mismatches = Vec::new();
    let mut predicted_all = Vec::new();
    for s in seqs {
        let desc = PieceDescriptor::new(s)?;
        let poly = point_count(&desc, rank)?;
        let predicted = poly.eval(i128::from(q)).expect("small q");
        let label = PieceLabel::from_weyl_length(desc.w_inf_length);
        let census = by_label.get(&label).copied();
        let matches = census.map(i128::from) == Some(predicted);
        if !matches {
            mismatches.push(format!("l={} ({label}): predicted {predicted}, census {census:?}", desc.w_inf_length));
        }
        predicted_all.push(predicted);
        rows.push(MatchRow {
            w_inf: desc.sequence.w_inf().reduced_word().0,
            length: desc.w_inf_length,
            label,
            point_count: poly.to_string(),
            predicted,
            census,
            matches,
        });
    }
    // one piece per length; the census labels in range must be hit exactly once
    let mut lengths: Vec<usize> = rows.iter().map(|r| r.length).collect();
    lengths.dedup();
    if lengths.len() != rows.len() || lengths != (0..=max_len).collect::<Vec<_>>() {
        mismatches.push(format!("expected one piece per length 0..={max_len}, got lengths {lengths:?}"));
    }
    let counts: Vec<u64> = census_rows.iter().filter(|r| r.label.weyl_length() <= max_len).map(|r| r.count).collect();
    let assignment_unique = predicted_all.iter().all(|&p| counts.iter().filter(|&&c| i128::from(c) == p).count() == 1);
    Ok(MatchReport { q, max_len, rows, assignment_unique, mismatches })
}

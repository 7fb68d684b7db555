//! Finite parabolic subgroups, minimal coset representatives and the action
//! of Weyl group elements on simple reflections by conjugation.

use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;

use crate::cartan::CartanSpec;
use crate::error::{Error, Result};
use crate::nodeset::NodeSet;
use crate::poly::Polynomial;
use crate::weyl::WeylElement;

/// Full enumeration of a finite parabolic subgroup `W'_J`.
#[derive(Debug, Clone, Serialize)]
pub struct ParabolicTable {
    pub nodes: NodeSet,
    #[serde(skip)]
    pub elements: Vec<WeylElement>,
    pub order: usize,
    pub longest: WeylElement,
    /// Length of the longest element.
    pub n_positive: usize,
    /// Coefficients of `sum_y q^{l(y)}`, ascending degree.
    pub poincare: Polynomial,
}

pub fn is_finite_parabolic(spec: &CartanSpec, nodes: NodeSet) -> bool {
    if nodes.iter().any(|i| i >= spec.size()) {
        return false;
    }
    spec.is_positive_definite(&nodes.to_vec())
}

/// Enumerate `W'_J` breadth first; elements come out sorted by length and
/// then by their smallest reduced word.
pub fn enumerate_parabolic(spec: &Arc<CartanSpec>, nodes: NodeSet) -> Result<ParabolicTable> {
    spec.check_nodes(nodes)?;
    if !is_finite_parabolic(spec, nodes) {
        return Err(Error::InfiniteParabolic(nodes.to_string()));
    }
    let mut seen: HashSet<WeylElement> = HashSet::new();
    let id = WeylElement::identity(spec);
    seen.insert(id.clone());
    let mut layers = vec![vec![id]];
    loop {
        let mut next = Vec::new();
        for w in layers.last().unwrap() {
            for j in nodes.iter() {
                if !w.has_right_descent(j) {
                    let x = w.mul_simple_right(j);
                    if seen.insert(x.clone()) {
                        next.push(x);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort_by_cached_key(|x| x.reduced_word());
        layers.push(next);
    }
    let n_positive = layers.len() - 1;
    let poincare = Polynomial::new(layers.iter().map(|l| l.len() as i64).collect());
    let longest = layers.last().unwrap()[0].clone();
    let elements: Vec<WeylElement> = layers.into_iter().flatten().collect();
    Ok(ParabolicTable { nodes, order: elements.len(), elements, longest, n_positive, poincare })
}

/// Minimal element of `w W'_J`.
pub fn min_right(w: &WeylElement, nodes: NodeSet) -> WeylElement {
    let mut x = w.clone();
    while let Some(j) = nodes.iter().find(|&j| x.has_right_descent(j)) {
        x = x.mul_simple_right(j);
    }
    x
}

/// Minimal element of `W'_K w`.
pub fn min_left(w: &WeylElement, nodes: NodeSet) -> WeylElement {
    min_right(&w.inverse(), nodes).inverse()
}

/// Minimal element of `W'_K w W'_J`, by alternating one-sided stripping.
pub fn min_double(w: &WeylElement, left: NodeSet, right: NodeSet) -> WeylElement {
    let mut x = w.clone();
    loop {
        let y = min_left(&min_right(&x, right), left);
        if y == x {
            return x;
        }
        x = y;
    }
}

pub fn is_min_double_rep(w: &WeylElement, left: NodeSet, right: NodeSet) -> bool {
    left.iter().all(|k| !w.has_left_descent(k)) && right.iter().all(|j| !w.has_right_descent(j))
}

/// The node `j'` with `w s_j w^{-1} = s_{j'}`, i.e. `w(alpha_j) = +-alpha_{j'}`.
pub fn ad_simple(w: &WeylElement, j: usize) -> Option<usize> {
    let col = w.root_image(j);
    let mut hit = None;
    for (k, &x) in col.iter().enumerate() {
        match x {
            0 => {}
            1 | -1 if hit.is_none() => hit = Some(k),
            _ => return None,
        }
    }
    hit
}

/// Image of `J` under `Ad(w)`, keeping only nodes whose image is simple.
pub fn ad_subset(w: &WeylElement, nodes: NodeSet) -> NodeSet {
    nodes.iter().filter_map(|j| ad_simple(w, j)).collect()
}

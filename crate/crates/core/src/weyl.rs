//! Elements of an affine Weyl group in the geometric representation on the
//! root basis.
//!
//! An element is stored as its integer matrix together with the matrix of its
//! inverse; column `j` of the matrix is `w(alpha_j)`. Equality and hashing use
//! the matrix alone. All arithmetic is checked and aborts on overflow.

use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::cartan::CartanSpec;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::nodeset::NodeSet;

#[inline]
fn add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("integer overflow in Weyl group arithmetic")
}

#[inline]
fn mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("integer overflow in Weyl group arithmetic")
}

#[derive(Clone)]
pub struct WeylElement {
    spec: Arc<CartanSpec>,
    mat: Box<[i64]>,
    inv: Box<[i64]>,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.mat == other.mat && (Arc::ptr_eq(&self.spec, &other.spec) || self.spec == other.spec)
    }
}

impl Eq for WeylElement {}

impl Hash for WeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.mat.hash(state);
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W{}", self.reduced_word())
    }
}

/// A sequence of simple reflections.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct ReducedWord(pub Vec<usize>);

impl ReducedWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        write!(f, "[")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "]")
    }
}

impl WeylElement {
    pub fn identity(spec: &Arc<CartanSpec>) -> Self {
        let n = spec.size();
        let mut mat = vec![0i64; n * n].into_boxed_slice();
        for i in 0..n {
            mat[i * n + i] = 1;
        }
        WeylElement { spec: Arc::clone(spec), inv: mat.clone(), mat }
    }

    pub fn simple_reflection(spec: &Arc<CartanSpec>, i: usize) -> Result<Self> {
        spec.check_node(i)?;
        Ok(Self::identity(spec).mul_simple_right(i))
    }

    /// Evaluate a word of simple reflections.
    pub fn from_word(spec: &Arc<CartanSpec>, word: &[usize]) -> Result<Self> {
        let mut w = Self::identity(spec);
        for &i in word {
            spec.check_node(i)?;
            w = w.mul_simple_right(i);
        }
        Ok(w)
    }

    pub fn spec(&self) -> &Arc<CartanSpec> {
        &self.spec
    }

    fn n(&self) -> usize {
        self.spec.size()
    }

    /// Row-major matrix in the root basis.
    pub fn matrix(&self) -> &[i64] {
        &self.mat
    }

    pub fn matrix_rows(&self) -> Vec<Vec<i64>> {
        self.mat.chunks(self.n()).map(|r| r.to_vec()).collect()
    }

    /// `w(alpha_j)` as coordinates in the root basis.
    pub fn root_image(&self, j: usize) -> Vec<i64> {
        let n = self.n();
        (0..n).map(|i| self.mat[i * n + j]).collect()
    }

    /// Apply the element to an arbitrary vector in root coordinates.
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let n = self.n();
        (0..n).map(|i| (0..n).fold(0i64, |acc, j| add(acc, mul(self.mat[i * n + j], v[j])))).collect()
    }

    pub fn is_identity(&self) -> bool {
        let n = self.n();
        self.mat.iter().enumerate().all(|(k, &x)| x == i64::from(k / n == k % n))
    }

    /// Sign of column `j` of `m`: +1 positive root, -1 negative root.
    fn column_sign(m: &[i64], n: usize, j: usize) -> i8 {
        for i in 0..n {
            let x = m[i * n + j];
            if x != 0 {
                return if x > 0 { 1 } else { -1 };
            }
        }
        unreachable!("zero column in a Weyl group matrix")
    }

    /// True when every column is a nonzero vector with entries of one sign.
    pub fn is_sign_coherent(&self) -> bool {
        let n = self.n();
        (0..n).all(|j| {
            let col: Vec<i64> = (0..n).map(|i| self.mat[i * n + j]).collect();
            (col.iter().all(|&x| x >= 0) || col.iter().all(|&x| x <= 0)) && col.iter().any(|&x| x != 0)
        })
    }

    pub fn has_right_descent(&self, i: usize) -> bool {
        Self::column_sign(&self.mat, self.n(), i) < 0
    }

    pub fn has_left_descent(&self, i: usize) -> bool {
        Self::column_sign(&self.inv, self.n(), i) < 0
    }

    pub fn right_descents(&self) -> NodeSet {
        (0..self.n()).filter(|&i| self.has_right_descent(i)).collect()
    }

    pub fn left_descents(&self) -> NodeSet {
        (0..self.n()).filter(|&i| self.has_left_descent(i)).collect()
    }

    /// `self * s_i`.
    pub fn mul_simple_right(&self, i: usize) -> Self {
        let n = self.n();
        let a = self.spec.matrix();
        // columns: (w s_i)(alpha_j) = w(alpha_j) - A[i][j] w(alpha_i)
        let mut mat = self.mat.clone();
        for j in 0..n {
            let c = a[i][j];
            if c != 0 && j != i {
                for r in 0..n {
                    mat[r * n + j] = add(mat[r * n + j], -mul(c, self.mat[r * n + i]));
                }
            }
        }
        for r in 0..n {
            mat[r * n + i] = -self.mat[r * n + i];
        }
        // inverse gets s_i on the left: row i becomes row_i - sum_k A[i][k] row_k
        let mut inv = self.inv.clone();
        for j in 0..n {
            let mut acc = self.inv[i * n + j];
            for (k, &c) in a[i].iter().enumerate() {
                if c != 0 {
                    acc = add(acc, -mul(c, self.inv[k * n + j]));
                }
            }
            inv[i * n + j] = acc;
        }
        WeylElement { spec: Arc::clone(&self.spec), mat, inv }
    }

    /// `s_i * self`.
    pub fn mul_simple_left(&self, i: usize) -> Self {
        self.inverse().mul_simple_right(i).inverse()
    }

    pub fn inverse(&self) -> Self {
        WeylElement { spec: Arc::clone(&self.spec), mat: self.inv.clone(), inv: self.mat.clone() }
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if !(Arc::ptr_eq(&self.spec, &other.spec) || self.spec == other.spec) {
            return Err(Error::SpecMismatch);
        }
        let n = self.n();
        let prod = |x: &[i64], y: &[i64]| -> Box<[i64]> {
            let mut out = vec![0i64; n * n];
            for i in 0..n {
                for k in 0..n {
                    let xik = x[i * n + k];
                    if xik != 0 {
                        for j in 0..n {
                            out[i * n + j] = add(out[i * n + j], mul(xik, y[k * n + j]));
                        }
                    }
                }
            }
            out.into_boxed_slice()
        };
        Ok(WeylElement {
            spec: Arc::clone(&self.spec),
            mat: prod(&self.mat, &other.mat),
            inv: prod(&other.inv, &self.inv),
        })
    }

    /// Number of right-descent stripping steps needed to reach the identity.
    pub fn length(&self) -> usize {
        let mut w = self.clone();
        let mut steps = 0;
        loop {
            match (0..self.n()).find(|&i| w.has_right_descent(i)) {
                Some(i) => {
                    w = w.mul_simple_right(i);
                    steps += 1;
                }
                None => return steps,
            }
        }
    }

    /// The lexicographically smallest reduced word.
    pub fn reduced_word(&self) -> ReducedWord {
        let mut w = self.clone();
        let mut word = Vec::new();
        while let Some(i) = (0..self.n()).find(|&i| w.has_left_descent(i)) {
            word.push(i);
            // s_i w: strip the left descent through the inverse
            w = w.inverse().mul_simple_right(i).inverse();
        }
        ReducedWord(word)
    }
}

impl Serialize for WeylElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("WeylElement", 3)?;
        st.serialize_field("matrix", &self.matrix_rows())?;
        st.serialize_field("word", &self.reduced_word())?;
        st.serialize_field("length", &self.length())?;
        st.end()
    }
}

/// All elements of length at most `radius`, grouped by length.
#[derive(Debug, Clone)]
pub struct Ball {
    pub radius: usize,
    layers: Vec<Vec<WeylElement>>,
}

impl Ball {
    pub fn layers(&self) -> &[Vec<WeylElement>] {
        &self.layers
    }

    pub fn counts(&self) -> Vec<usize> {
        self.layers.iter().map(Vec::len).collect()
    }

    pub fn len(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = &WeylElement> {
        self.layers.iter().flatten()
    }
}

/// Breadth-first enumeration of the ball of radius `radius`.
///
/// Each layer is sorted by the lexicographically smallest reduced word, so the
/// output does not depend on the execution mode.
pub fn ball_enumerate(spec: &Arc<CartanSpec>, radius: usize) -> Ball {
    ball_enumerate_with(spec, radius, Exec::default())
}

pub fn ball_enumerate_with(spec: &Arc<CartanSpec>, radius: usize, exec: Exec) -> Ball {
    let n = spec.size();
    let mut layers = vec![vec![WeylElement::identity(spec)]];
    for _ in 0..radius {
        let last = layers.last().unwrap();
        let candidates = exec
            .flat_map(last, |w| (0..n).filter(|&i| !w.has_right_descent(i)).map(|i| w.mul_simple_right(i)).collect());
        let mut seen = HashSet::with_capacity(candidates.len());
        let unique: Vec<WeylElement> = candidates.into_iter().filter(|w| seen.insert(w.clone())).collect();
        let mut keyed = exec.map(&unique, |w| (w.reduced_word(), w.clone()));
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        layers.push(keyed.into_iter().map(|(_, w)| w).collect());
    }
    Ball { radius, layers }
}

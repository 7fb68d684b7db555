//! Affine Cartan matrices and their validity checks.
//!
//! Convention: `A[i][j] = <alpha_j, alpha_i^vee>`, so the simple reflection
//! `s_i` acts on the root basis by `s_i(alpha_j) = alpha_j - A[i][j] alpha_i`.
//! Node 0 of every built-in type is the affine node; the remaining nodes use
//! Bourbaki numbering of the underlying finite type.

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nodeset::{NodeSet, MAX_NODES};

/// A validated affine Cartan matrix on the node set `I = {0, .., n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CartanSpec {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    cartan: Vec<Vec<i64>>,
    /// Positive integers `d_i` with `d_i A[i][j] = d_j A[j][i]`.
    #[serde(skip)]
    symmetrizer: Vec<i64>,
}

#[derive(Deserialize)]
struct RawSpec {
    cartan: Vec<Vec<i64>>,
}

impl<'de> Deserialize<'de> for CartanSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawSpec::deserialize(d)?;
        CartanSpec::from_matrix(raw.cartan).map_err(serde::de::Error::custom)
    }
}

impl CartanSpec {
    /// Validate an arbitrary matrix as an affine Cartan matrix.
    pub fn from_matrix(cartan: Vec<Vec<i64>>) -> Result<Self> {
        let n = cartan.len();
        if n < 2 {
            return Err(Error::InvalidCartan("an affine diagram needs at least two nodes".into()));
        }
        if n > MAX_NODES {
            return Err(Error::InvalidCartan(format!("at most {MAX_NODES} nodes supported")));
        }
        if cartan.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidCartan("matrix is not square".into()));
        }
        for i in 0..n {
            if cartan[i][i] != 2 {
                return Err(Error::InvalidCartan(format!("diagonal entry A[{i}][{i}] is not 2")));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if cartan[i][j] > 0 {
                    return Err(Error::InvalidCartan(format!("off-diagonal entry A[{i}][{j}] is positive")));
                }
                if (cartan[i][j] == 0) != (cartan[j][i] == 0) {
                    return Err(Error::InvalidCartan(format!("A[{i}][{j}] and A[{j}][{i}] must vanish together")));
                }
            }
        }
        let symmetrizer = symmetrizer(&cartan)?;
        let spec = CartanSpec { family: None, rank: None, cartan, symmetrizer };
        let all: Vec<usize> = (0..n).collect();
        if spec.symmetrized_minor(&all) != 0 {
            return Err(Error::InvalidCartan("symmetrized matrix is nonsingular; not affine".into()));
        }
        for drop in 0..n {
            let rest: Vec<usize> = all.iter().copied().filter(|&k| k != drop).collect();
            if !spec.is_positive_definite(&rest) {
                return Err(Error::InvalidCartan(format!(
                    "principal submatrix without node {drop} is not positive definite"
                )));
            }
        }
        Ok(spec)
    }

    /// Untwisted affine Cartan matrix of type `family` with finite rank `rank`.
    pub fn affine(family: &str, rank: usize) -> Result<Self> {
        let bad = || Error::InvalidFamily { family: family.to_string(), rank };
        let fam = family.trim().to_ascii_uppercase();
        let n = rank + 1;
        let mut edges: Vec<(usize, usize, i64, i64)> = Vec::new();
        // (i, j, A[i][j], A[j][i]); for a multiple bond the long root comes first.
        let simple = |i, j| (i, j, -1, -1);
        match fam.as_str() {
            "A" => {
                if rank == 0 {
                    return Err(bad());
                }
                if rank == 1 {
                    edges.push((0, 1, -2, -2));
                } else {
                    for i in 1..rank {
                        edges.push(simple(i, i + 1));
                    }
                    edges.push(simple(0, 1));
                    edges.push(simple(0, rank));
                }
            }
            "B" => {
                if rank < 3 {
                    return Err(bad());
                }
                for i in 1..rank - 1 {
                    edges.push(simple(i, i + 1));
                }
                edges.push((rank - 1, rank, -1, -2));
                edges.push(simple(0, 2));
            }
            "C" => {
                if rank < 2 {
                    return Err(bad());
                }
                for i in 1..rank - 1 {
                    edges.push(simple(i, i + 1));
                }
                edges.push((rank, rank - 1, -1, -2));
                edges.push((0, 1, -1, -2));
            }
            "D" => {
                if rank < 4 {
                    return Err(bad());
                }
                for i in 1..rank - 1 {
                    edges.push(simple(i, i + 1));
                }
                edges.push(simple(rank - 2, rank));
                edges.push(simple(0, 2));
            }
            "E" => {
                if !(6..=8).contains(&rank) {
                    return Err(bad());
                }
                edges.push(simple(1, 3));
                edges.push(simple(2, 4));
                for i in 3..rank {
                    edges.push(simple(i, i + 1));
                }
                let attach = match rank {
                    6 => 2,
                    7 => 1,
                    _ => 8,
                };
                edges.push(simple(0, attach));
            }
            "F" => {
                if rank != 4 {
                    return Err(bad());
                }
                edges.push(simple(1, 2));
                edges.push((2, 3, -1, -2));
                edges.push(simple(3, 4));
                edges.push(simple(0, 1));
            }
            "G" => {
                if rank != 2 {
                    return Err(bad());
                }
                edges.push((2, 1, -1, -3));
                edges.push(simple(0, 2));
            }
            _ => return Err(bad()),
        }
        let mut cartan = vec![vec![0i64; n]; n];
        for (i, row) in cartan.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (i, j, aij, aji) in edges {
            cartan[i][j] = aij;
            cartan[j][i] = aji;
        }
        let mut spec = CartanSpec::from_matrix(cartan)?;
        spec.family = Some(fam);
        spec.rank = Some(rank);
        Ok(spec)
    }

    /// Number of nodes `|I|`.
    pub fn size(&self) -> usize {
        self.cartan.len()
    }

    pub fn nodes(&self) -> NodeSet {
        NodeSet::full(self.size())
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    /// A short label such as `A1~`, or `custom` for user-supplied matrices.
    pub fn label(&self) -> String {
        match (&self.family, self.rank) {
            (Some(f), Some(r)) => format!("{f}{r}~"),
            _ => "custom".to_string(),
        }
    }

    pub fn check_node(&self, i: usize) -> Result<()> {
        if i < self.size() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange { node: i, size: self.size() })
        }
    }

    pub fn check_nodes(&self, set: NodeSet) -> Result<()> {
        match set.iter().find(|&i| i >= self.size()) {
            Some(i) => Err(Error::NodeOutOfRange { node: i, size: self.size() }),
            None => Ok(()),
        }
    }

    /// Determinant of the symmetrized principal submatrix on `idx`.
    fn symmetrized_minor(&self, idx: &[usize]) -> i128 {
        let m: Vec<Vec<i128>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| (self.symmetrizer[i] * self.cartan[i][j]) as i128).collect())
            .collect();
        bareiss_det(m)
    }

    /// Sylvester's criterion on the symmetrized principal submatrix.
    pub fn is_positive_definite(&self, idx: &[usize]) -> bool {
        (1..=idx.len()).all(|k| self.symmetrized_minor(&idx[..k]) > 0)
    }

    /// Primitive positive integer vector `a` with `A a = 0`; the imaginary
    /// root is `sum_i a_i alpha_i`.
    pub fn marks(&self) -> Vec<i64> {
        kernel_vector(&self.cartan)
    }

    /// Primitive positive integer vector `c` with `c^T A = 0`.
    pub fn comarks(&self) -> Vec<i64> {
        let n = self.size();
        let t: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| self.cartan[j][i]).collect()).collect();
        kernel_vector(&t)
    }
}

/// Bond weights: Coxeter exponent `m_ij` from the Cartan product, `None` for infinity.
pub fn coxeter_exponent(spec: &CartanSpec, i: usize, j: usize) -> Option<u32> {
    if i == j {
        return Some(1);
    }
    match spec.entry(i, j) * spec.entry(j, i) {
        0 => Some(2),
        1 => Some(3),
        2 => Some(4),
        3 => Some(6),
        _ => None,
    }
}

fn symmetrizer(a: &[Vec<i64>]) -> Result<Vec<i64>> {
    let n = a.len();
    let mut w: Vec<Option<Ratio<i64>>> = vec![None; n];
    for start in 0..n {
        if w[start].is_some() {
            continue;
        }
        w[start] = Some(Ratio::from_integer(1));
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let wi = w[i].unwrap();
            for j in 0..n {
                if i == j || a[i][j] == 0 {
                    continue;
                }
                // d_i A[i][j] = d_j A[j][i]
                let wj = wi * Ratio::new(a[i][j], a[j][i]);
                match w[j] {
                    None => {
                        w[j] = Some(wj);
                        stack.push(j);
                    }
                    Some(existing) if existing != wj => {
                        return Err(Error::InvalidCartan("matrix is not symmetrizable".into()));
                    }
                    _ => {}
                }
            }
        }
    }
    let w: Vec<Ratio<i64>> = w.into_iter().map(Option::unwrap).collect();
    let den = w.iter().fold(1i64, |acc, r| acc.lcm(r.denom()));
    let ints: Vec<i64> = w.iter().map(|r| (r * den).to_integer()).collect();
    let g = ints.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    Ok(ints.into_iter().map(|x| x / g).collect())
}

/// Fraction-free determinant.
pub(crate) fn bareiss_det(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j]
                    .checked_mul(m[k][k])
                    .and_then(|x| x.checked_sub(m[i][k].checked_mul(m[k][j])?))
                    .expect("determinant overflow");
                m[i][j] = num / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Positive primitive kernel vector of a corank-1 matrix whose proper
/// principal minors are nonsingular.
fn kernel_vector(a: &[Vec<i64>]) -> Vec<i64> {
    let n = a.len();
    // Fix x_0 = 1 and solve rows 1..n for x_1..x_{n-1}.
    let m = n - 1;
    let mut aug: Vec<Vec<Ratio<i64>>> = (1..n)
        .map(|i| {
            let mut row: Vec<Ratio<i64>> = (1..n).map(|j| Ratio::from_integer(a[i][j])).collect();
            row.push(Ratio::from_integer(-a[i][0]));
            row
        })
        .collect();
    for col in 0..m {
        let piv = (col..m).find(|&r| aug[r][col] != Ratio::from_integer(0)).expect("singular proper minor");
        aug.swap(col, piv);
        let p = aug[col][col];
        for x in aug[col].iter_mut() {
            *x /= p;
        }
        for r in 0..m {
            if r != col {
                let f = aug[r][col];
                if f != Ratio::from_integer(0) {
                    for c in 0..=m {
                        let v = aug[col][c];
                        aug[r][c] -= f * v;
                    }
                }
            }
        }
    }
    let mut x = vec![Ratio::from_integer(1)];
    x.extend(aug.iter().map(|row| row[m]));
    let den = x.iter().fold(1i64, |acc, r| acc.lcm(r.denom()));
    let ints: Vec<i64> = x.iter().map(|r| (r * den).to_integer()).collect();
    let g = ints.iter().fold(0i64, |acc, &v| acc.gcd(&v));
    let sign = if ints[0] < 0 { -1 } else { 1 };
    ints.into_iter().map(|v| sign * v / g).collect()
}

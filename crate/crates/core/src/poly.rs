use std::fmt;

use serde::Serialize;

/// Polynomial in `q` with exact integer coefficients, ascending degree.
/// Trailing zero coefficients are trimmed; the zero polynomial is `[]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct Polynomial(Vec<i64>);

impl Polynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Polynomial(coeffs)
    }

    pub fn one() -> Self {
        Polynomial(vec![1])
    }

    /// `q^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![0; k + 1];
        c[k] = 1;
        Polynomial(c)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> i64 {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.0.is_empty() || other.0.is_empty() {
            return Polynomial::default();
        }
        let mut out = vec![0i64; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in other.0.iter().enumerate() {
                let t = a.checked_mul(b).expect("polynomial coefficient overflow");
                out[i + j] = out[i + j].checked_add(t).expect("polynomial coefficient overflow");
            }
        }
        Polynomial::new(out)
    }

    pub fn pow(&self, k: usize) -> Polynomial {
        (0..k).fold(Polynomial::one(), |acc, _| acc.mul(self))
    }

    /// Exact evaluation; `None` on overflow.
    pub fn eval(&self, q: i128) -> Option<i128> {
        self.0.iter().rev().try_fold(0i128, |acc, &c| acc.checked_mul(q)?.checked_add(c as i128))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            first = false;
            match (k, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "q")?,
                (1, m) => write!(f, "{m}q")?,
                (k, 1) => write!(f, "q^{k}")?,
                (k, m) => write!(f, "{m}q^{k}")?,
            }
        }
        Ok(())
    }
}

//! Membership in `Omega_b`: symmetric, zero row sums, and every circular minor
//! `(-1)^k det C[p; q]` nonnegative.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::algebra::linalg::{det, Matrix};
use crate::algebra::scalar::format_rational;
use crate::algebra::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OmegaViolation {
    NotSquare,
    NotSymmetric { row: usize, col: usize },
    RowSum { row: usize, sum: Rational },
    /// `(-1)^k det C[p; q] < 0` for the circular pair `(p, q)`.
    CircularMinor { p: Vec<usize>, q: Vec<usize>, det: Rational },
}

impl fmt::Display for OmegaViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaViolation::NotSquare => f.write_str("matrix is not square"),
            OmegaViolation::NotSymmetric { row, col } => {
                write!(f, "not symmetric: entries ({row},{col}) and ({col},{row}) differ")
            }
            OmegaViolation::RowSum { row, sum } => {
                write!(f, "row {row} sums to {}, not 0", format_rational(sum))
            }
            OmegaViolation::CircularMinor { p, q, det } => write!(
                f,
                "circular minor p = {p:?}, q = {q:?} has determinant {} of the wrong sign",
                format_rational(det)
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaReport {
    pub violation: Option<OmegaViolation>,
    /// Number of circular minors evaluated.
    pub minors_checked: usize,
}

impl OmegaReport {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// Subsets of `0..b` of size `r`, in lexicographic order.
fn subsets(b: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(start: usize, b: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..b {
            if b - i < r - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, b, r, cur, out);
            cur.pop();
        }
    }
    rec(0, b, r, &mut cur, &mut out);
    out
}

/// All circular pairs `(p, q)`: `p_1..p_k, q_k..q_1` runs counterclockwise
/// through `2k` distinct boundary vertices.
pub fn circular_pairs(b: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for k in 1..=b / 2 {
        for s in subsets(b, 2 * k) {
            for r in 0..2 * k {
                let t: Vec<usize> = (0..2 * k).map(|j| s[(r + j) % (2 * k)]).collect();
                let p = t[..k].to_vec();
                let q = t[k..].iter().rev().copied().collect();
                out.push((p, q));
            }
        }
    }
    out
}

/// Checks membership in `Omega_b` exactly, reporting the first violation.
pub fn omega_check(m: &Matrix<Rational>) -> OmegaReport {
    let b = m.len();
    let fail = |v| OmegaReport {
        violation: Some(v),
        minors_checked: 0,
    };
    if m.iter().any(|row| row.len() != b) {
        return fail(OmegaViolation::NotSquare);
    }
    for i in 0..b {
        for j in i + 1..b {
            if m[i][j] != m[j][i] {
                return fail(OmegaViolation::NotSymmetric { row: i, col: j });
            }
        }
    }
    for (i, row) in m.iter().enumerate() {
        let sum: Rational = row.iter().fold(Rational::zero(), |s, x| s + x);
        if !sum.is_zero() {
            return fail(OmegaViolation::RowSum { row: i, sum });
        }
    }
    let mut checked = 0;
    for (p, q) in circular_pairs(b) {
        let k = p.len();
        let minor: Matrix<Rational> = p
            .iter()
            .map(|&i| q.iter().map(|&j| m[i][j].clone()).collect())
            .collect();
        let d = det(&minor);
        checked += 1;
        let signed = if k % 2 == 1 { -d.clone() } else { d.clone() };
        if signed.is_negative() {
            return OmegaReport {
                violation: Some(OmegaViolation::CircularMinor { p, q, det: d }),
                minors_checked: checked,
            };
        }
    }
    OmegaReport {
        violation: None,
        minors_checked: checked,
    }
}

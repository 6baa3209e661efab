//! Real-root isolation by Sturm sequences, with rational bisection refinement.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::poly::Polynomial;
use super::scalar::{q, sign, Rational};
use super::AlgebraError;

/// Half-open interval `(lo, hi]` containing exactly one real root of `polynomial`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatingInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub polynomial: Polynomial,
}

#[derive(Clone, Debug)]
pub struct SturmChain {
    seq: Vec<Polynomial>,
}

impl SturmChain {
    pub fn new(p: &Polynomial) -> Self {
        let mut seq = vec![p.clone()];
        let d = p.derivative();
        if !d.is_zero() {
            seq.push(d);
            loop {
                let n = seq.len();
                let r = seq[n - 2].rem(&seq[n - 1]);
                if r.is_zero() {
                    break;
                }
                seq.push(-r);
            }
        }
        SturmChain { seq }
    }

    fn count_changes(signs: impl Iterator<Item = Ordering>) -> usize {
        let mut last = Ordering::Equal;
        let mut changes = 0;
        for s in signs.filter(|s| *s != Ordering::Equal) {
            if last != Ordering::Equal && s != last {
                changes += 1;
            }
            last = s;
        }
        changes
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        Self::count_changes(self.seq.iter().map(|p| sign(&p.eval(x))))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        Self::count_changes(self.seq.iter().map(|p| sign(&p.lc())))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        Self::count_changes(self.seq.iter().map(|p| {
            let s = sign(&p.lc());
            if p.degree().unwrap_or(0) % 2 == 1 {
                s.reverse()
            } else {
                s
            }
        }))
    }

    /// Distinct real roots in `(lo, hi]`.
    pub fn count_in(&self, lo: &Rational, hi: &Rational) -> usize {
        self.variations_at(lo).saturating_sub(self.variations_at(hi))
    }

    pub fn count_all(&self) -> usize {
        self.variations_at_neg_inf()
            .saturating_sub(self.variations_at_pos_inf())
    }

    /// Distinct real roots in `(lo, +inf)`.
    pub fn count_above(&self, lo: &Rational) -> usize {
        self.variations_at(lo)
            .saturating_sub(self.variations_at_pos_inf())
    }

    /// Distinct real roots in `(-inf, hi]`.
    pub fn count_below(&self, hi: &Rational) -> usize {
        self.variations_at_neg_inf()
            .saturating_sub(self.variations_at(hi))
    }
}

fn check_squarefree(p: &Polynomial) -> Result<(), AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    if !p.is_squarefree() {
        return Err(AlgebraError::NotSquarefree(p.clone()));
    }
    Ok(())
}

/// Isolates every real root of a squarefree polynomial. Intervals are
/// returned in increasing order and are pairwise disjoint.
pub fn sturm_isolate(p: &Polynomial) -> Result<Vec<IsolatingInterval>, AlgebraError> {
    check_squarefree(p)?;
    let chain = SturmChain::new(p);
    let bound = p.root_bound();
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        let n = chain.count_in(&lo, &hi);
        match n {
            0 => {}
            1 => out.push(IsolatingInterval {
                lo,
                hi,
                polynomial: p.clone(),
            }),
            _ => {
                let mid = (&lo + &hi) / q(2, 1);
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(out)
}

/// Number of distinct real roots of `p` in `(lo, hi]`.
pub fn count_roots(p: &Polynomial, lo: &Rational, hi: &Rational) -> usize {
    SturmChain::new(p).count_in(lo, hi)
}

impl IsolatingInterval {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// Sign of the polynomial immediately to the right of `lo`.
    fn sign_right_of_lo(&self) -> Ordering {
        let v = self.polynomial.eval(&self.lo);
        if v.is_zero() {
            sign(&self.polynomial.derivative().eval(&self.lo))
        } else {
            sign(&v)
        }
    }

    /// Halves the interval, keeping the root.
    pub fn bisect(&self) -> IsolatingInterval {
        let mid = (&self.lo + &self.hi) / q(2, 1);
        let v = self.polynomial.eval(&mid);
        let (lo, hi) = if v.is_zero() {
            let half = (&self.hi - &mid) / q(2, 1);
            (&mid - &half, mid)
        } else if sign(&v) == self.sign_right_of_lo() {
            (mid, self.hi.clone())
        } else {
            (self.lo.clone(), mid)
        };
        IsolatingInterval {
            lo,
            hi,
            polynomial: self.polynomial.clone(),
        }
    }

    /// Refines until the width is strictly below `width`.
    pub fn refine(&self, width: &Rational) -> IsolatingInterval {
        let mut cur = self.clone();
        while &cur.width() >= width {
            cur = cur.bisect();
        }
        cur
    }

    /// Whether the isolated root is exactly `hi`.
    pub fn root_is_hi(&self) -> bool {
        self.polynomial.eval(&self.hi).is_zero()
    }

    /// Exact comparison of the isolated root against a rational.
    pub fn cmp_root_with(&self, x: &Rational) -> Ordering {
        let mut cur = self.clone();
        loop {
            if x <= &cur.lo {
                return Ordering::Greater;
            }
            if x > &cur.hi {
                return Ordering::Less;
            }
            if cur.polynomial.eval(x).is_zero() {
                return Ordering::Equal;
            }
            cur = cur.bisect();
        }
    }

    /// Midpoint, for presentation.
    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / q(2, 1)
    }

    /// Smallest integer strictly greater than the root.
    pub fn next_integer_above(&self) -> Rational {
        let cur = self.refine(&Rational::one());
        let mut n = cur.lo.floor() + Rational::one();
        while cur.cmp_root_with(&n) != Ordering::Less {
            n += Rational::one();
        }
        n
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::qi;

    #[test]
    fn no_real_roots() {
        assert!(sturm_isolate(&Polynomial::from_i64(&[1, 0, 1]))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn sqrt_two() {
        let iv = sturm_isolate(&Polynomial::from_i64(&[-2, 0, 1])).unwrap();
        assert_eq!(iv.len(), 2);
        assert_eq!(iv[0].cmp_root_with(&qi(-2)), Ordering::Greater);
        assert_eq!(iv[0].cmp_root_with(&qi(0)), Ordering::Less);
        assert_eq!(iv[1].cmp_root_with(&qi(0)), Ordering::Greater);
        assert_eq!(iv[1].cmp_root_with(&qi(2)), Ordering::Less);
        assert!(iv[0].hi <= iv[1].lo);
    }

    #[test]
    fn two_plus_sqrt_two() {
        let p = Polynomial::from_i64(&[2, -4, 1]);
        let iv = sturm_isolate(&p).unwrap();
        assert_eq!(iv.len(), 2);
        let a = iv[0].refine(&qi(1));
        let b = iv[1].refine(&qi(1));
        assert_eq!(a.cmp_root_with(&qi(0)), Ordering::Greater);
        assert_eq!(a.cmp_root_with(&qi(1)), Ordering::Less);
        assert_eq!(b.cmp_root_with(&qi(3)), Ordering::Greater);
        assert_eq!(b.cmp_root_with(&qi(4)), Ordering::Less);
    }

    #[test]
    fn rejects_repeated_roots() {
        assert!(matches!(
            sturm_isolate(&Polynomial::from_i64(&[1, -2, 1])),
            Err(AlgebraError::NotSquarefree(_))
        ));
    }

    #[test]
    fn refinement_and_exact_roots() {
        let p = Polynomial::from_i64(&[-1, 0, 4]); // roots ±1/2
        let iv = sturm_isolate(&p).unwrap();
        let r = iv[1].refine(&q(1, 1000));
        assert!(r.width() < q(1, 1000));
        assert_eq!(r.cmp_root_with(&q(1, 2)), Ordering::Equal);
        assert_eq!(r.next_integer_above(), qi(1));
        let iv = sturm_isolate(&Polynomial::from_i64(&[-2, 0, 1])).unwrap();
        assert_eq!(iv[1].next_integer_above(), qi(2));
        let iv = sturm_isolate(&Polynomial::from_i64(&[-3, 1])).unwrap();
        assert_eq!(iv[0].next_integer_above(), qi(4));
    }

    #[test]
    fn counts_half_open() {
        let p = Polynomial::from_i64(&[0, -1, 0, 1]); // -1, 0, 1
        let c = SturmChain::new(&p);
        assert_eq!(c.count_all(), 3);
        assert_eq!(c.count_in(&qi(-1), &qi(1)), 2);
        assert_eq!(c.count_in(&qi(0), &qi(2)), 1);
        assert_eq!(c.count_above(&qi(0)), 1);
        assert_eq!(c.count_below(&qi(0)), 2);
    }
}

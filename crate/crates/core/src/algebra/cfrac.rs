//! Euclidean expansion of odd rational functions into continued fractions
//! `d_1 z + 1/(d_2 z + 1/(... + 1/(d_m z)))`.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::poly::Polynomial;
use super::ratfunc::RationalFunction;
use super::scalar::{format_rational, Rational, Scalar};
use super::AlgebraError;

/// `d_1 z + 1/(d_2 z + ...)`, or its reciprocal when `inverted`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContinuedFraction {
    pub inverted: bool,
    #[serde(with = "crate::io::rational_vec")]
    pub coefficients: Vec<Rational>,
}

/// Why the Euclidean chain did not produce a positive expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CfracFailure {
    /// Step `index` (1-based) produced a quotient that is not `d·z`.
    QuotientNotMonomial { index: usize, quotient: Polynomial },
    /// Step `index` produced `d_index = value <= 0`.
    NonPositiveCoefficient { index: usize, value: Rational },
}

impl fmt::Display for CfracFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CfracFailure::QuotientNotMonomial { index, quotient } => {
                write!(f, "quotient {index} is {quotient}, not of the form d*z")
            }
            CfracFailure::NonPositiveCoefficient { index, value } => {
                write!(f, "d_{index} = {} <= 0", format_rational(value))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CfracOutcome {
    Expansion(ContinuedFraction),
    Failure(CfracFailure),
}

impl CfracOutcome {
    pub fn expansion(&self) -> Option<&ContinuedFraction> {
        match self {
            CfracOutcome::Expansion(cf) => Some(cf),
            CfracOutcome::Failure(_) => None,
        }
    }
}

/// Runs the Euclidean quotient chain on an odd rational function.
///
/// Numerator and denominator of an odd function have opposite parity, so their
/// degrees differ; the expansion is taken of whichever of `C`, `1/C` has the
/// larger numerator degree.
pub fn euclid_cfrac(c: &RationalFunction) -> Result<CfracOutcome, AlgebraError> {
    if c.num().is_zero() {
        return Err(AlgebraError::ZeroFunction);
    }
    if !c.is_odd() {
        return Err(AlgebraError::NotOdd(c.clone()));
    }
    let inverted = c.num().degree() < c.den().degree();
    let (mut a, mut b) = if inverted {
        (c.den().clone(), c.num().clone())
    } else {
        (c.num().clone(), c.den().clone())
    };
    let mut coefficients = Vec::new();
    loop {
        let index = coefficients.len() + 1;
        let (quot, rem) = a.div_rem(&b);
        if quot.degree() != Some(1) {
            return Ok(CfracOutcome::Failure(CfracFailure::QuotientNotMonomial {
                index,
                quotient: quot,
            }));
        }
        assert!(
            quot.coeff(0).is_zero(),
            "odd rational function produced a quotient with a constant term"
        );
        let d = quot.coeff(1);
        if !d.is_positive() {
            return Ok(CfracOutcome::Failure(CfracFailure::NonPositiveCoefficient {
                index,
                value: d,
            }));
        }
        coefficients.push(d);
        if rem.is_zero() {
            break;
        }
        a = std::mem::replace(&mut b, rem);
    }
    Ok(CfracOutcome::Expansion(ContinuedFraction {
        inverted,
        coefficients,
    }))
}

impl ContinuedFraction {
    /// Evaluates `d_1 x + 1/(d_2 x + ...)` in any exact field, ignoring the
    /// `inverted` flag. `None` if an intermediate value is not invertible.
    pub fn eval_plain<S: Scalar>(&self, x: &S) -> Option<S> {
        let mut acc: Option<S> = None;
        for d in self.coefficients.iter().rev() {
            let term = S::from_rational(d) * x.clone();
            acc = Some(match acc {
                None => term,
                Some(inner) => term + inner.inv()?,
            });
        }
        acc
    }

    /// Evaluates the represented function, honoring `inverted`.
    pub fn eval<S: Scalar>(&self, x: &S) -> Option<S> {
        let v = self.eval_plain(x)?;
        if self.inverted {
            v.inv()
        } else {
            Some(v)
        }
    }

    /// Rebuilds the rational function the expansion represents.
    pub fn rebuild(&self) -> RationalFunction {
        self.eval(&RationalFunction::z())
            .expect("positive continued fractions never vanish identically")
    }

    pub fn all_positive(&self) -> bool {
        self.coefficients.iter().all(|d| d.is_positive())
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ds: Vec<String> = self.coefficients.iter().map(format_rational).collect();
        if self.inverted {
            write!(f, "1/[{}]", ds.join(", "))
        } else {
            write!(f, "[{}]", ds.join(", "))
        }
    }
}

/// `d·z` as a rational function.
pub fn monomial_function(d: Rational) -> RationalFunction {
    RationalFunction::from_poly(Polynomial::monomial(d, 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{q, qi};

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(Polynomial::from_i64(n), Polynomial::from_i64(d)).unwrap()
    }

    fn expansion(c: &RationalFunction) -> ContinuedFraction {
        euclid_cfrac(c).unwrap().expansion().cloned().unwrap()
    }

    #[test]
    fn inverted_two_term() {
        let cf = expansion(&rf(&[0, 4], &[2, 0, 1]));
        assert!(cf.inverted);
        assert_eq!(cf.coefficients, vec![q(1, 4), qi(2)]);
    }

    #[test]
    fn single_edge() {
        let cf = expansion(&monomial_function(q(5, 3)));
        assert!(!cf.inverted);
        assert_eq!(cf.coefficients, vec![q(5, 3)]);
    }

    #[test]
    fn negative_coefficient_fails() {
        let out = euclid_cfrac(&rf(&[0, 1], &[-1, 0, 1])).unwrap();
        assert_eq!(
            out,
            CfracOutcome::Failure(CfracFailure::NonPositiveCoefficient {
                index: 2,
                value: qi(-1)
            })
        );
    }

    #[test]
    fn three_term() {
        let cf = expansion(&rf(&[0, 2, 0, 1], &[2, 0, 2]));
        assert!(!cf.inverted);
        assert_eq!(cf.coefficients, vec![q(1, 2), qi(2), q(1, 2)]);
    }

    #[test]
    fn high_degree_quotient_fails() {
        let out = euclid_cfrac(&rf(&[0, 0, 0, 1], &[1])).unwrap();
        assert!(matches!(
            out,
            CfracOutcome::Failure(CfracFailure::QuotientNotMonomial { index: 1, .. })
        ));
    }

    #[test]
    fn rejects_non_odd_and_zero() {
        assert!(matches!(
            euclid_cfrac(&rf(&[1, 1], &[1])),
            Err(AlgebraError::NotOdd(_))
        ));
        assert!(matches!(
            euclid_cfrac(&rf(&[0], &[1])),
            Err(AlgebraError::ZeroFunction)
        ));
    }

    #[test]
    fn rebuild_round_trip() {
        for c in [
            rf(&[0, 4], &[2, 0, 1]),
            rf(&[0, 2, 0, 1], &[2, 0, 2]),
            monomial_function(q(7, 2)),
        ] {
            assert_eq!(expansion(&c).rebuild(), c);
        }
    }
}

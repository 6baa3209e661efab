//! The exact field abstraction shared by the circuit solver and the geometry code.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary precision rational number.
pub type Rational = BigRational;

/// Complex number with rational real and imaginary parts.
pub type GaussianRational = Complex<BigRational>;

/// An exact field containing `Q`.
///
/// Every implementation is exact: equality is structural after normalization
/// and `is_zero` never rounds. Division by zero panics, as it does for
/// [`BigRational`]; callers that cannot rule it out use [`Scalar::inv`].
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    fn from_rational(q: &Rational) -> Self;

    /// Multiplicative inverse, `None` for zero (and for zero divisors in
    /// quotient rings with a reducible modulus).
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one() / self.clone())
        }
    }

    /// Sign of the real part, or `None` when it is not decidable
    /// (symbolic values).
    fn real_part_sign(&self) -> Option<Ordering>;

    /// Coefficient-wise complex conjugation. Identity on real fields.
    fn conj(&self) -> Self {
        self.clone()
    }

    /// Real part, embedded back into the field. Identity on real fields.
    fn re(&self) -> Self {
        self.clone()
    }

    /// Size of the representation; the solver pivots on the smallest.
    fn weight(&self) -> usize;
}

pub(crate) fn rational_bits(q: &Rational) -> usize {
    (q.numer().bits() + q.denom().bits()) as usize
}

impl Scalar for Rational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn real_part_sign(&self) -> Option<Ordering> {
        Some(self.cmp(&Zero::zero()))
    }
    fn weight(&self) -> usize {
        rational_bits(self)
    }
}

impl Scalar for GaussianRational {
    fn from_rational(q: &Rational) -> Self {
        Complex::new(q.clone(), Zero::zero())
    }
    fn real_part_sign(&self) -> Option<Ordering> {
        Some(self.re.cmp(&Zero::zero()))
    }
    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }
    fn re(&self) -> Self {
        Complex::new(self.re.clone(), Zero::zero())
    }
    fn weight(&self) -> usize {
        rational_bits(&self.re) + rational_bits(&self.im)
    }
}

/// `n/d` as a rational. Panics if `d == 0`.
pub fn q(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as a rational.
pub fn qi(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Gaussian rational `re + i·im`.
pub fn gauss(re: Rational, im: Rational) -> GaussianRational {
    Complex::new(re, im)
}

/// Sign of a rational as an `Ordering` against zero.
pub fn sign(q: &Rational) -> Ordering {
    if q.is_positive() {
        Ordering::Greater
    } else if q.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

/// Parses `"a"` or `"a/b"` into a rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Formats as `"a"` or `"a/b"`.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Nearest `f64`; presentation only.
pub fn rational_to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

//! Rational functions in one variable over `Q`, kept reduced with a monic
//! denominator so that equality is structural.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::Polynomial;
use super::scalar::{rational_bits, Rational, Scalar};
use super::AlgebraError;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// Reduces `num/den`. Errors if `den` is zero.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return RationalFunction {
                num,
                den: Polynomial::one(),
            };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lc = den.lc();
        if !lc.is_one() {
            let inv = Rational::one() / lc;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RationalFunction { num, den }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    /// The variable `z`.
    pub fn z() -> Self {
        Self::from_poly(Polynomial::z())
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_odd(&self) -> bool {
        // reduced form: odd iff one part is odd and the other even
        (self.num.is_odd() && self.den.is_even()) || (self.num.is_even() && self.den.is_odd())
    }

    pub fn reciprocal(&self) -> Result<Self, AlgebraError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::reduced(n, &self.den * &self.den)
    }

    /// Value at a rational point; `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    /// `C(1/z)`.
    pub fn invert_argument(&self) -> Self {
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap_or(0);
        let rev = |p: &Polynomial, d: usize| {
            let mut c: Vec<Rational> = (0..=d).map(|i| p.coeff(i)).collect();
            c.reverse();
            Polynomial::new(c)
        };
        let (mut n, mut d) = (rev(&self.num, dn), rev(&self.den, dd));
        match dn.cmp(&dd) {
            Ordering::Greater => d = &d * &Polynomial::monomial(Rational::one(), dn - dd),
            Ordering::Less => n = &n * &Polynomial::monomial(Rational::one(), dd - dn),
            Ordering::Equal => {}
        }
        Self::reduced(n, d)
    }

    /// Sum of numerator and denominator degrees.
    pub fn height(&self) -> usize {
        self.num.degree().unwrap_or(0) + self.den.degree().unwrap_or(0)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Add for RationalFunction {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        if self.den == rhs.den {
            return Self::reduced(&self.num + &rhs.num, self.den);
        }
        let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        Self::reduced(n, &self.den * &rhs.den)
    }
}

impl Sub for RationalFunction {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for RationalFunction {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for RationalFunction {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.num.is_zero(), "rational function division by zero");
        Self::reduced(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for RationalFunction {
    type Output = Self;
    fn neg(self) -> Self {
        RationalFunction {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }
}

impl Scalar for RationalFunction {
    fn from_rational(q: &Rational) -> Self {
        Self::constant(q.clone())
    }
    fn real_part_sign(&self) -> Option<Ordering> {
        if self.num.is_constant() && self.den.is_constant() {
            Some(self.num.coeff(0).cmp(&Rational::zero()))
        } else {
            None
        }
    }
    fn weight(&self) -> usize {
        let bits: usize = self
            .num
            .coeffs()
            .iter()
            .chain(self.den.coeffs())
            .map(rational_bits)
            .sum();
        self.height() * 64 + bits
    }
}

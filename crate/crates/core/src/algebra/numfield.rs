//! Arithmetic in `Q[x]/(p)` for squarefree `p`, with an optional designated
//! real root that fixes the real embedding used for sign tests.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::poly::Polynomial;
use super::ratfunc::RationalFunction;
use super::scalar::{q, rational_bits, sign, Rational, Scalar};
use super::sturm::{sturm_isolate, IsolatingInterval, SturmChain};
use super::AlgebraError;

/// The quotient ring `Q[x]/(modulus)` together with a real root `x -> alpha`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberField {
    modulus: Polynomial,
    root: Option<IsolatingInterval>,
}

impl NumberField {
    /// Field whose embedding sends `x` to the root isolated by `root`.
    pub fn new(modulus: Polynomial, root: Option<IsolatingInterval>) -> Result<Arc<Self>, AlgebraError> {
        check_modulus(&modulus)?;
        if let Some(r) = &root {
            assert_eq!(r.polynomial, modulus, "root interval belongs to another polynomial");
        }
        let root = root.map(|r| r.refine(&q(1, 1 << 20)));
        Ok(Arc::new(NumberField { modulus, root }))
    }

    /// Embedding at the largest positive root; falls back to the largest real
    /// root, or to no embedding when `modulus` has no real roots.
    pub fn with_default_root(modulus: Polynomial) -> Result<Arc<Self>, AlgebraError> {
        check_modulus(&modulus)?;
        let roots = sturm_isolate(&modulus)?;
        Self::new(modulus, roots.last().cloned())
    }

    /// Embedding at the largest positive root; errors when there is none.
    pub fn at_largest_positive_root(modulus: Polynomial) -> Result<Arc<Self>, AlgebraError> {
        check_modulus(&modulus)?;
        let roots = sturm_isolate(&modulus)?;
        match roots.last() {
            Some(r) if r.cmp_root_with(&Rational::zero()) == Ordering::Greater => {
                Self::new(modulus, Some(r.clone()))
            }
            _ => Err(AlgebraError::NoPositiveRoot(modulus)),
        }
    }

    pub fn modulus(&self) -> &Polynomial {
        &self.modulus
    }

    pub fn root(&self) -> Option<&IsolatingInterval> {
        self.root.as_ref()
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }

    /// The class of `x`.
    pub fn generator(self: &Arc<Self>) -> NumberFieldElement {
        self.element(Polynomial::z())
    }

    /// The class of `repr` modulo the defining polynomial.
    pub fn element(self: &Arc<Self>, repr: Polynomial) -> NumberFieldElement {
        NumberFieldElement::in_field(self.clone(), repr)
    }

    /// Sign of `r(alpha)` in the designated embedding.
    pub fn sign_at_root(&self, r: &Polynomial) -> Option<Ordering> {
        if r.is_constant() {
            return Some(sign(&r.coeff(0)));
        }
        let root = self.root.as_ref()?;
        let g = r.gcd(&self.modulus);
        if !g.is_constant() && SturmChain::new(&g).count_in(&root.lo, &root.hi) == 1 {
            return Some(Ordering::Equal);
        }
        // r(alpha) != 0: shrink until r has no root in (lo, hi]
        let chain = SturmChain::new(&r.squarefree_part());
        let mut cur = root.clone();
        while chain.count_in(&cur.lo, &cur.hi) > 0 {
            cur = cur.bisect();
        }
        Some(sign(&r.eval(&cur.hi)))
    }

    /// Rational enclosure `[lo, hi]` of `r(alpha)` with width below `width`.
    pub fn enclose(&self, r: &Polynomial, width: &Rational) -> Option<(Rational, Rational)> {
        if r.is_constant() {
            let c = r.coeff(0);
            return Some((c.clone(), c));
        }
        let mut cur = self.root.clone()?;
        loop {
            let (lo, hi) = interval_horner(r, &cur.lo, &cur.hi);
            if &(&hi - &lo) < width {
                return Some((lo, hi));
            }
            cur = cur.bisect();
        }
    }
}

fn check_modulus(m: &Polynomial) -> Result<(), AlgebraError> {
    if m.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    if !m.is_squarefree() {
        return Err(AlgebraError::NotSquarefree(m.clone()));
    }
    Ok(())
}

fn interval_mul(a: (&Rational, &Rational), b: (&Rational, &Rational)) -> (Rational, Rational) {
    let ps = [a.0 * b.0, a.0 * b.1, a.1 * b.0, a.1 * b.1];
    let lo = ps.iter().min().unwrap().clone();
    let hi = ps.iter().max().unwrap().clone();
    (lo, hi)
}

fn interval_horner(p: &Polynomial, lo: &Rational, hi: &Rational) -> (Rational, Rational) {
    let mut acc = (Rational::zero(), Rational::zero());
    for c in p.coeffs().iter().rev() {
        let (l, h) = interval_mul((&acc.0, &acc.1), (lo, hi));
        acc = (l + c, h + c);
    }
    acc
}

/// Element of a number field. Elements without a field are rational constants
/// and mix freely with elements of any field.
#[derive(Clone)]
pub struct NumberFieldElement {
    field: Option<Arc<NumberField>>,
    repr: Polynomial,
}

impl NumberFieldElement {
    pub fn rational(c: Rational) -> Self {
        NumberFieldElement {
            field: None,
            repr: Polynomial::constant(c),
        }
    }

    pub fn in_field(field: Arc<NumberField>, repr: Polynomial) -> Self {
        let repr = repr.rem(field.modulus());
        NumberFieldElement {
            field: Some(field),
            repr,
        }
    }

    pub fn repr(&self) -> &Polynomial {
        &self.repr
    }

    pub fn field(&self) -> Option<&Arc<NumberField>> {
        self.field.as_ref()
    }

    /// The rational value, if the element is a constant.
    pub fn as_rational(&self) -> Option<Rational> {
        self.repr.is_constant().then(|| self.repr.coeff(0))
    }

    /// Sign in the designated real embedding; `None` without one.
    pub fn sign(&self) -> Option<Ordering> {
        match &self.field {
            None => Some(sign(&self.repr.coeff(0))),
            Some(f) => f.sign_at_root(&self.repr),
        }
    }

    /// Exact comparison in the designated real embedding.
    pub fn cmp_real(&self, other: &Self) -> Option<Ordering> {
        (self.clone() - other.clone()).sign()
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Some(Ordering::Greater)
    }

    /// Certified midpoint of an enclosure of width below `width`.
    pub fn approx(&self, width: &Rational) -> Option<Rational> {
        match &self.field {
            None => Some(self.repr.coeff(0)),
            Some(f) => f.enclose(&self.repr, width).map(|(lo, hi)| (lo + hi) / q(2, 1)),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.approx(&q(1, 1_000_000_000_000))
            .map(|r| super::scalar::rational_to_f64(&r))
            .unwrap_or(f64::NAN)
    }

    fn join(a: &Option<Arc<NumberField>>, b: &Option<Arc<NumberField>>) -> Option<Arc<NumberField>> {
        match (a, b) {
            (Some(x), Some(y)) => {
                assert!(
                    Arc::ptr_eq(x, y) || x.modulus == y.modulus,
                    "mixing elements of different number fields"
                );
                Some(x.clone())
            }
            (Some(x), None) | (None, Some(x)) => Some(x.clone()),
            (None, None) => None,
        }
    }

    fn build(field: Option<Arc<NumberField>>, repr: Polynomial) -> Self {
        match field {
            Some(f) => Self::in_field(f, repr),
            None => NumberFieldElement { field: None, repr },
        }
    }

    /// Inverse via the extended Euclidean algorithm; `None` for zero divisors.
    pub fn try_inv(&self) -> Option<Self> {
        if self.repr.is_zero() {
            return None;
        }
        match &self.field {
            None => Some(Self::rational(Rational::one() / self.repr.coeff(0))),
            Some(f) => {
                let (g, s, _) = self.repr.ext_gcd(f.modulus());
                if !g.is_constant() {
                    return None;
                }
                let s = s.scale(&(Rational::one() / g.coeff(0)));
                Some(Self::in_field(f.clone(), s))
            }
        }
    }
}

impl PartialEq for NumberFieldElement {
    fn eq(&self, other: &Self) -> bool {
        if self.repr != other.repr {
            return false;
        }
        match (&self.field, &other.field) {
            (Some(a), Some(b)) => Arc::ptr_eq(a, b) || a.modulus == b.modulus,
            _ => true,
        }
    }
}

impl Eq for NumberFieldElement {}

impl fmt::Debug for NumberFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for NumberFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.repr.to_string().replace('z', "x"))
    }
}

impl Add for NumberFieldElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let f = Self::join(&self.field, &rhs.field);
        Self::build(f, &self.repr + &rhs.repr)
    }
}

impl Sub for NumberFieldElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let f = Self::join(&self.field, &rhs.field);
        Self::build(f, &self.repr - &rhs.repr)
    }
}

impl Mul for NumberFieldElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let f = Self::join(&self.field, &rhs.field);
        Self::build(f, &self.repr * &rhs.repr)
    }
}

impl Div for NumberFieldElement {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let inv = rhs.try_inv().expect("division by zero or a zero divisor");
        self * inv
    }
}

impl Neg for NumberFieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        NumberFieldElement {
            field: self.field,
            repr: -self.repr,
        }
    }
}

impl Zero for NumberFieldElement {
    fn zero() -> Self {
        Self::rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.repr.is_zero()
    }
}

impl One for NumberFieldElement {
    fn one() -> Self {
        Self::rational(Rational::one())
    }
}

impl Scalar for NumberFieldElement {
    fn from_rational(q: &Rational) -> Self {
        Self::rational(q.clone())
    }
    fn inv(&self) -> Option<Self> {
        self.try_inv()
    }
    fn real_part_sign(&self) -> Option<Ordering> {
        self.sign()
    }
    fn weight(&self) -> usize {
        self.repr.coeffs().iter().map(rational_bits).sum()
    }
}

/// `C(x)` in `field`: numerator times the modular inverse of the denominator.
pub fn nf_eval_in(
    c: &RationalFunction,
    field: &Arc<NumberField>,
) -> Result<NumberFieldElement, AlgebraError> {
    let g = c.den().gcd(field.modulus());
    if !g.is_constant() {
        return Err(AlgebraError::NotInvertible(g));
    }
    let num = field.element(c.num().clone());
    let den = field.element(c.den().clone());
    Ok(num * den.try_inv().expect("coprime denominator is invertible"))
}

/// `C(x)` in `Q[x]/(p)`, with the default embedding of [`NumberField::with_default_root`].
pub fn nf_eval(c: &RationalFunction, p: &Polynomial) -> Result<NumberFieldElement, AlgebraError> {
    let field = NumberField::with_default_root(p.clone())?;
    nf_eval_in(c, &field)
}

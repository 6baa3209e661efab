//! Positive-real odd rational functions: the Euclidean continued fraction is
//! the decision procedure, the root conditions are cross-checks.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::sturm::{sturm_isolate, SturmChain};
use crate::algebra::{
    euclid_cfrac, AlgebraError, CfracFailure, CfracOutcome, ContinuedFraction, NumberField,
    Polynomial, Rational, RationalFunction,
};

/// Divisor search bound for the rational root theorem.
const ROOT_SEARCH_LIMIT: u64 = 1 << 40;

/// `d_1 z prod (z^2 + a_k^2)/(z^2 + b_k^2)` for `C` or `1/C`, with
/// `a_1^2 > b_1^2 > a_2^2 > ... > b_n^2 >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub inverted: bool,
    #[serde(with = "crate::io::rational")]
    pub d1: Rational,
    #[serde(with = "crate::io::rational_vec")]
    pub a2: Vec<Rational>,
    #[serde(with = "crate::io::rational_vec")]
    pub b2: Vec<Rational>,
}

impl Factorization {
    /// Strict interlacing, with `b_n^2 = 0` allowed.
    pub fn interlaces(&self) -> bool {
        if self.a2.len() != self.b2.len() || !self.d1.is_positive() {
            return false;
        }
        let mut seq = Vec::new();
        for (a, b) in self.a2.iter().zip(&self.b2) {
            seq.push(a);
            seq.push(b);
        }
        seq.windows(2).all(|w| w[0] > w[1]) && seq.last().is_none_or(|x| !x.is_negative())
    }

    pub fn rebuild(&self) -> RationalFunction {
        let mut num = Polynomial::monomial(self.d1.clone(), 1);
        let mut den = Polynomial::one();
        for a in &self.a2 {
            num = &num * &Polynomial::new(vec![a.clone(), Rational::zero(), Rational::one()]);
        }
        for b in &self.b2 {
            den = &den * &Polynomial::new(vec![b.clone(), Rational::zero(), Rational::one()]);
        }
        let f = RationalFunction::new(num, den).expect("nonzero denominator");
        if self.inverted {
            f.reciprocal().expect("nonzero")
        } else {
            f
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosRealVerdict {
    pub is_positive_real: bool,
    pub cfrac: Option<ContinuedFraction>,
    pub factorization: Option<Factorization>,
    pub failure: Option<CfracFailure>,
}

/// Decides positive-reality of an odd rational function by Euclid.
pub fn classify(c: &RationalFunction) -> Result<PosRealVerdict, AlgebraError> {
    match euclid_cfrac(c)? {
        CfracOutcome::Expansion(cf) => {
            let factorization = factorize(c);
            Ok(PosRealVerdict {
                is_positive_real: true,
                cfrac: Some(cf),
                factorization,
                failure: None,
            })
        }
        CfracOutcome::Failure(f) => Ok(PosRealVerdict {
            is_positive_real: false,
            cfrac: None,
            factorization: None,
            failure: Some(f),
        }),
    }
}

/// `e(z)` even, or `z e(z)` for odd input: returns `(e(w) with w = z^2, whether a z was removed)`.
fn split_square(p: &Polynomial) -> (Polynomial, bool) {
    if p.is_even() {
        (p.even_part_in_square(), false)
    } else {
        (p.div_rem(&Polynomial::z()).0.even_part_in_square(), true)
    }
}

/// Exact factorization when every pole and zero has a rational square.
fn factorize(c: &RationalFunction) -> Option<Factorization> {
    let inverted = c.num().degree() < c.den().degree();
    let (num, den) = if inverted {
        (c.den(), c.num())
    } else {
        (c.num(), c.den())
    };
    let d1 = num.lc() / den.lc();
    let (n_even, n_had_z) = split_square(num);
    let (d_even, d_had_z) = split_square(den);
    let neg_all = |p: &Polynomial| -> Option<Vec<Rational>> {
        let roots = p.rational_roots(ROOT_SEARCH_LIMIT)?;
        (roots.len() == p.degree().unwrap_or(0)).then(|| roots.into_iter().rev().map(|r| -r).collect())
    };
    let a2: Vec<Rational> = neg_all(&n_even)?;
    let mut b2: Vec<Rational> = neg_all(&d_even)?;
    match (n_had_z, d_had_z) {
        (true, false) => {}
        (false, true) => b2.push(Rational::zero()),
        _ => return None,
    }
    let f = Factorization {
        inverted,
        d1,
        a2,
        b2,
    };
    Some(f)
}

/// Outcome of checking "every zero of C is imaginary with C' > 0 there".
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootCondition {
    Holds,
    Fails(String),
    Unavailable(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub continued_fraction: bool,
    pub root_condition: RootCondition,
    /// `C'(infinity)` when `C(infinity) = 0`.
    pub derivative_at_infinity: Option<Rational>,
    /// `None` when the root condition could not be evaluated.
    pub consistent: Option<bool>,
}

/// Cross-checks the Euclid verdict against the zero/derivative condition,
/// including the point at infinity.
pub fn verify_equivalences(
    c: &RationalFunction,
    degree_bound: usize,
) -> Result<EquivalenceReport, AlgebraError> {
    let verdict = classify(c)?;
    let (root_condition, at_inf) = if c.height() > degree_bound {
        (
            RootCondition::Unavailable(format!(
                "degree {} exceeds bound {degree_bound}",
                c.height()
            )),
            None,
        )
    } else {
        root_condition(c)
    };
    let consistent = match &root_condition {
        RootCondition::Holds => Some(verdict.is_positive_real),
        RootCondition::Fails(_) => Some(!verdict.is_positive_real),
        RootCondition::Unavailable(_) => None,
    };
    Ok(EquivalenceReport {
        continued_fraction: verdict.is_positive_real,
        root_condition,
        derivative_at_infinity: at_inf,
        consistent,
    })
}

fn root_condition(c: &RationalFunction) -> (RootCondition, Option<Rational>) {
    let (n, d) = (c.num(), c.den());
    // zero at infinity
    let mut at_inf = None;
    if n.degree() < d.degree() {
        let k = c.invert_argument().derivative();
        let v = k.eval(&Rational::zero()).expect("C(1/z) is regular at 0");
        at_inf = Some(v.clone());
        if !v.is_positive() {
            return (
                RootCondition::Fails(format!("C'(inf) = {v} is not positive")),
                at_inf,
            );
        }
    }
    // finite zeros: n(z) = z^e A(z^2)
    let mut e = 0;
    let mut rest = n.clone();
    while rest.coeff(0).is_zero() {
        rest = rest.div_rem(&Polynomial::z()).0;
        e += 1;
    }
    let dn = n.derivative();
    if e >= 2 {
        return (
            RootCondition::Fails(format!("zero of order {e} at 0, so C'(0) = 0")),
            at_inf,
        );
    }
    if e == 1 {
        let v = dn.eval(&Rational::zero()) / d.eval(&Rational::zero());
        if !v.is_positive() {
            return (RootCondition::Fails(format!("C'(0) = {v} is not positive")), at_inf);
        }
    }
    let a = rest.even_part_in_square();
    let Some(deg_a) = a.degree().filter(|&k| k > 0) else {
        return (RootCondition::Holds, at_inf);
    };
    if !a.is_squarefree() {
        return (
            RootCondition::Fails("repeated nonzero zero, so C' vanishes there".into()),
            at_inf,
        );
    }
    // z^2 = w must be a negative real for every root w of A
    let chain = SturmChain::new(&a);
    let negative = chain.count_below(&Rational::zero());
    if negative != deg_a {
        return (
            RootCondition::Fails(format!(
                "{} of {deg_a} zeros in z^2 are not negative reals",
                deg_a - negative
            )),
            at_inf,
        );
    }
    // C'(z) = n'(z)/d(z) at a zero; as an even function it is G(z^2)
    let (mut p1, mut p2) = (dn, d.clone());
    if p1.is_odd() && p2.is_odd() {
        p1 = p1.div_rem(&Polynomial::z()).0;
        p2 = p2.div_rem(&Polynomial::z()).0;
    }
    let (g_num, g_den) = (p1.even_part_in_square(), p2.even_part_in_square());
    let roots = sturm_isolate(&a).expect("squarefree");
    for r in roots {
        let f = NumberField::new(a.clone(), Some(r.clone())).expect("squarefree");
        let s = match (f.sign_at_root(&g_num), f.sign_at_root(&g_den)) {
            (Some(x), Some(y)) => mul_sign(x, y),
            _ => unreachable!("designated root present"),
        };
        if s != Ordering::Greater {
            return (
                RootCondition::Fails(format!(
                    "C' is not positive at the zero with z^2 in ({}, {}]",
                    r.lo, r.hi
                )),
                at_inf,
            );
        }
    }
    (RootCondition::Holds, at_inf)
}

fn mul_sign(a: Ordering, b: Ordering) -> Ordering {
    match (a, b) {
        (Ordering::Equal, _) | (_, Ordering::Equal) => Ordering::Equal,
        _ if a == b => Ordering::Greater,
        _ => Ordering::Less,
    }
}

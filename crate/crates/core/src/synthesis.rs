//! Decision procedures with witnesses: tilings of a square by ratios `c`, `1/c`;
//! tilings of a ratio-`c` rectangle by the same; series-parallel synthesis.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::algebra::numfield::nf_eval_in;
use crate::algebra::sturm::{sturm_isolate, IsolatingInterval, SturmChain};
use crate::algebra::{
    euclid_cfrac, AlgebraError, CfracFailure, CfracOutcome, ContinuedFraction, NumberField,
    NumberFieldElement, Polynomial, Rational, RationalFunction, Scalar,
};
use crate::circuit::SeriesParallel;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthesisError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("function is not positive real: {0}")]
    NotPositiveReal(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateKind {
    /// `d_1 c + 1/(d_2 c + ...) = 1`: a square.
    Square,
    /// `1/(d_1 c + ...) = c`: a ratio-`c` rectangle.
    SelfSimilar,
}

impl fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CertificateKind::Square => "square",
            CertificateKind::SelfSimilar => "self-similar",
        })
    }
}

/// Why a verdict is negative without an Euclid witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Degeneracy {
    /// `p` is even, so `p(-z) - p(z)` vanishes.
    EvenPolynomial,
    /// `p` is odd, so `p(-z) + p(z)` vanishes.
    OddPolynomial,
    /// A root of `p2` other than `c^2` is not a negative real.
    BadConjugate {
        reason: String,
        interval: Option<IsolatingInterval>,
    },
    /// The continued fraction failed the exact number-field check.
    CertificateMismatch,
}

impl fmt::Display for Degeneracy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degeneracy::EvenPolynomial => f.write_str("p is even: C = 0 identically"),
            Degeneracy::OddPolynomial => f.write_str("p is odd: p(-z) + p(z) = 0"),
            Degeneracy::BadConjugate { reason, .. } => f.write_str(reason),
            Degeneracy::CertificateMismatch => f.write_str("certificate mismatch in Q[x]/(p)"),
        }
    }
}

/// Rational `a_k^2` interlaced with the isolated `b_k^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interlacing {
    pub a2: Vec<Rational>,
    pub b2: Vec<IsolatingInterval>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingVerdict {
    pub tileable: bool,
    pub kind: CertificateKind,
    pub defining_polynomial: Polynomial,
    /// The odd function whose expansion is the witness.
    pub function: Option<RationalFunction>,
    pub cfrac: Option<ContinuedFraction>,
    pub failure: Option<CfracFailure>,
    pub degeneracy: Option<Degeneracy>,
    pub interlacing: Option<Interlacing>,
    /// Modulus of the ring where the identity was certified.
    pub certificate_modulus: Option<Polynomial>,
}

impl TilingVerdict {
    fn negative(kind: CertificateKind, p: &Polynomial) -> Self {
        TilingVerdict {
            tileable: false,
            kind,
            defining_polynomial: p.clone(),
            function: None,
            cfrac: None,
            failure: None,
            degeneracy: None,
            interlacing: None,
            certificate_modulus: None,
        }
    }

    /// The number field `Q(c)` with `c` the designated positive root, used for
    /// the certificate and for tiling coordinates.
    pub fn field(&self) -> Option<Arc<NumberField>> {
        let m = self.certificate_modulus.clone()?;
        NumberField::at_largest_positive_root(m).ok()
    }

    /// Human-readable reason for a negative verdict.
    pub fn reason(&self) -> Option<String> {
        if self.tileable {
            return None;
        }
        if let Some(f) = &self.failure {
            return Some(f.to_string());
        }
        self.degeneracy.as_ref().map(|d| d.to_string())
    }
}

fn check_input(p: &Polynomial) -> Result<(), AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    if !p.is_squarefree() {
        return Err(AlgebraError::NotSquarefree(p.clone()));
    }
    Ok(())
}

/// Whether `x` satisfies `cf(x) = target` in `field`.
fn certify(
    cf: &ContinuedFraction,
    field: &Arc<NumberField>,
    target: &NumberFieldElement,
) -> bool {
    let x = field.generator();
    let value = match cf.eval(&x) {
        Some(v) => v,
        None => match nf_eval_in(&cf.rebuild(), field) {
            Ok(v) => v,
            Err(_) => return false,
        },
    };
    &value == target
}

/// Decides whether a square can be tiled by rectangles of ratios `c` and
/// `1/c`, `c` a positive root of the squarefree polynomial `p`.
pub fn decide_square(p: &Polynomial) -> Result<TilingVerdict, SynthesisError> {
    check_input(p)?;
    if SturmChain::new(p).count_above(&Rational::zero()) == 0 {
        return Err(AlgebraError::NoPositiveRoot(p.clone()).into());
    }
    let kind = CertificateKind::Square;
    let mut verdict = TilingVerdict::negative(kind, p);
    let pm = p.reflect();
    let num = &pm - p;
    let den = &pm + p;
    if num.is_zero() {
        verdict.degeneracy = Some(Degeneracy::EvenPolynomial);
        return Ok(verdict);
    }
    if den.is_zero() {
        verdict.degeneracy = Some(Degeneracy::OddPolynomial);
        return Ok(verdict);
    }
    let c = RationalFunction::new(num, den)?;
    verdict.function = Some(c.clone());
    let cf = match euclid_cfrac(&c)? {
        CfracOutcome::Expansion(cf) => cf,
        CfracOutcome::Failure(f) => {
            verdict.failure = Some(f);
            return Ok(verdict);
        }
    };
    // roots shared with p(-z) make the denominator vanish there
    let shared = p.gcd(&pm);
    let modulus = if shared.is_constant() {
        p.monic()
    } else {
        p.div_rem(&shared).0.monic()
    };
    let certified = NumberField::at_largest_positive_root(modulus.clone())
        .map(|f| certify(&cf, &f, &NumberFieldElement::one()))
        .unwrap_or(false);
    verdict.cfrac = Some(cf);
    if certified {
        verdict.tileable = true;
        verdict.certificate_modulus = Some(modulus);
    } else {
        verdict.degeneracy = Some(Degeneracy::CertificateMismatch);
    }
    Ok(verdict)
}

/// A rational strictly between the roots isolated by `below` and `above`.
fn rational_between(below: &IsolatingInterval, above: &IsolatingInterval) -> Rational {
    let (mut lo, mut hi) = (below.clone(), above.clone());
    loop {
        let m = (&lo.hi + &hi.lo) / Rational::from_integer(2.into());
        if lo.cmp_root_with(&m) == Ordering::Less && hi.cmp_root_with(&m) == Ordering::Greater {
            return m;
        }
        lo = lo.bisect();
        hi = hi.bisect();
    }
}

/// Decides whether a rectangle of ratio `c` can be tiled by rectangles of
/// ratios `c` and `1/c` (at least one of the latter), where `c^2` is the
/// designated positive root of the squarefree polynomial `p2`.
pub fn decide_self_similar(p2: &Polynomial) -> Result<TilingVerdict, SynthesisError> {
    check_input(p2)?;
    let p2 = p2.monic();
    let kind = CertificateKind::SelfSimilar;
    let mut verdict = TilingVerdict::negative(kind, &p2);
    let bad = |reason: String, interval: Option<IsolatingInterval>| Degeneracy::BadConjugate {
        reason,
        interval,
    };
    let deg = p2.degree().unwrap_or(0);
    if deg == 0 {
        verdict.degeneracy = Some(bad("p2 has no positive real root".into(), None));
        return Ok(verdict);
    }
    if p2.coeff(0).is_zero() {
        verdict.degeneracy = Some(bad("p2 has the root 0".into(), None));
        return Ok(verdict);
    }
    let roots = sturm_isolate(&p2)?;
    let positive: Vec<&IsolatingInterval> = roots
        .iter()
        .filter(|r| r.cmp_root_with(&Rational::zero()) == Ordering::Greater)
        .collect();
    if positive.is_empty() {
        verdict.degeneracy = Some(bad("p2 has no positive real root".into(), None));
        return Ok(verdict);
    }
    if positive.len() > 1 {
        verdict.degeneracy = Some(bad(
            "p2 has a second positive root".into(),
            Some(positive[0].clone()),
        ));
        return Ok(verdict);
    }
    if roots.len() < deg {
        verdict.degeneracy = Some(bad(
            format!("p2 has {} nonreal roots", deg - roots.len()),
            None,
        ));
        return Ok(verdict);
    }
    // b_k^2 are the positive roots of p2(-w), largest first
    let mut b2: Vec<IsolatingInterval> = sturm_isolate(&p2.reflect())?
        .into_iter()
        .filter(|r| r.cmp_root_with(&Rational::zero()) == Ordering::Greater)
        .collect();
    b2.reverse();
    let mut a2 = Vec::with_capacity(b2.len());
    for k in 0..b2.len() {
        a2.push(if k == 0 {
            b2[0].next_integer_above()
        } else {
            rational_between(&b2[k], &b2[k - 1])
        });
    }
    let mut q = Polynomial::z();
    for a in &a2 {
        q = &q * &Polynomial::new(vec![a.clone(), Rational::zero(), Rational::one()]);
    }
    let big_p = p2.compose_square();
    let c = RationalFunction::new(q.clone(), &(&Polynomial::z() * &q) - &big_p)?;
    verdict.function = Some(c.clone());
    verdict.interlacing = Some(Interlacing { a2, b2 });
    let cf = match euclid_cfrac(&c)? {
        CfracOutcome::Expansion(cf) => cf,
        CfracOutcome::Failure(f) if deg == 1 => {
            // c^2 = r rational: 1/(2rc) + 1/(2c) = 1/c
            verdict.failure = Some(f);
            let r = -p2.coeff(0);
            ContinuedFraction {
                inverted: false,
                coefficients: vec![Rational::one() / (r * Rational::from_integer(2.into())), Rational::from_integer(2.into())],
            }
        }
        CfracOutcome::Failure(f) => {
            verdict.failure = Some(f);
            return Ok(verdict);
        }
    };
    let field = NumberField::at_largest_positive_root(big_p.clone())?;
    let inv_c = field.generator().try_inv().expect("c is nonzero");
    if certify(&cf, &field, &inv_c) {
        verdict.tileable = true;
        verdict.failure = None;
        verdict.certificate_modulus = Some(big_p);
    } else {
        verdict.degeneracy = Some(Degeneracy::CertificateMismatch);
    }
    verdict.cfrac = Some(cf);
    Ok(verdict)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symbol {
    C1,
    C2,
}

/// Edge of conductance `weight * symbol`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicEdge {
    pub symbol: Symbol,
    pub weight: Rational,
}

impl fmt::Display for SymbolicEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.symbol {
            Symbol::C1 => "c1",
            Symbol::C2 => "c2",
        };
        write!(f, "{}*{s}", crate::algebra::scalar::format_rational(&self.weight))
    }
}

/// Alternating series-parallel tree whose two-variable conductance
/// `C(c1, c2)` satisfies `C(z, 1/z) = C(z)`.
pub fn synthesize_series_parallel(
    c: &RationalFunction,
) -> Result<SeriesParallel<SymbolicEdge>, SynthesisError> {
    let cf = match euclid_cfrac(c)? {
        CfracOutcome::Expansion(cf) => cf,
        CfracOutcome::Failure(f) => return Err(SynthesisError::NotPositiveReal(f.to_string())),
    };
    let ds = &cf.coefficients;
    // level k is a conductance d_k c1 in parallel, or a resistance d_k / c2 in series
    let mut tree: Option<SeriesParallel<SymbolicEdge>> = None;
    let parallel_at = |k: usize| (k % 2 == 0) != cf.inverted;
    for k in (0..ds.len()).rev() {
        let leaf = if parallel_at(k) {
            SymbolicEdge {
                symbol: Symbol::C1,
                weight: ds[k].clone(),
            }
        } else {
            SymbolicEdge {
                symbol: Symbol::C2,
                weight: Rational::one() / ds[k].clone(),
            }
        };
        let leaf = SeriesParallel::leaf(leaf);
        tree = Some(match tree {
            None => leaf,
            Some(rest) if parallel_at(k) => SeriesParallel::parallel(leaf, rest),
            Some(rest) => SeriesParallel::series(leaf, rest),
        });
    }
    Ok(tree.expect("expansions are nonempty"))
}

/// Substitutes values for the two symbols.
pub fn instantiate<S: Scalar>(tree: &SeriesParallel<SymbolicEdge>, c1: &S, c2: &S) -> SeriesParallel<S> {
    tree.map(&mut |e: &SymbolicEdge| {
        let base = match e.symbol {
            Symbol::C1 => c1.clone(),
            Symbol::C2 => c2.clone(),
        };
        S::from_rational(&e.weight) * base
    })
}

/// `true` iff every coefficient is positive; convenience for callers holding a verdict.
pub fn all_positive(d: &[Rational]) -> bool {
    d.iter().all(|x| x.is_positive())
}

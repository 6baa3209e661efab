//! Realizing complex 2- and 3-terminal responses by networks whose edge
//! conductances have positive real part.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::algebra::linalg::Matrix;
use crate::algebra::scalar::{format_rational, gauss};
use crate::algebra::{GaussianRational, Rational};
use crate::circuit::{laplacian, response, ydelta, CircuitError, Edge, Network};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizeError {
    #[error("response must be 2x2 or 3x3, got {0} rows")]
    Size(usize),
    #[error("response is not square")]
    NotSquare,
    #[error("response is not symmetric: entries ({0},{1}) and ({1},{0}) differ")]
    NotSymmetric(usize, usize),
    #[error("row {0} of the response does not sum to zero")]
    RowSum(usize),
    #[error("real part of the response is not nonnegatively definite")]
    NotNonnegative,
    #[error("real part of the response vanishes on nonconstant voltages")]
    DegenerateQuotient,
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error("realized network has response different from the input")]
    Mismatch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// `b = 2`: one edge.
    Edge,
    /// All shifted `r_uv` positive: the triangle on the boundary.
    Triangle,
    /// One shifted `r_uv` nonpositive: complete graph on 3 boundary vertices
    /// and one interior vertex.
    FourVertex,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Realization {
    pub network: Network<GaussianRational>,
    pub branch: Branch,
    pub delta: Option<Rational>,
    pub m: Option<Rational>,
}

/// Symmetry, zero row sums, and definiteness of the real part modulo constants.
fn check(c: &Matrix<GaussianRational>) -> Result<(), RealizeError> {
    let b = c.len();
    if c.iter().any(|r| r.len() != b) {
        return Err(RealizeError::NotSquare);
    }
    if b != 2 && b != 3 {
        return Err(RealizeError::Size(b));
    }
    for i in 0..b {
        for j in i + 1..b {
            if c[i][j] != c[j][i] {
                return Err(RealizeError::NotSymmetric(i, j));
            }
        }
    }
    for (i, row) in c.iter().enumerate() {
        if !row.iter().fold(GaussianRational::zero(), |s, x| s + x).is_zero() {
            return Err(RealizeError::RowSum(i));
        }
    }
    // with zero row sums the real form is sum a_uv (U_u - U_v)^2
    if b == 2 {
        let a = -c[0][1].re.clone();
        if a.is_negative() {
            return Err(RealizeError::NotNonnegative);
        }
        if a.is_zero() {
            return Err(RealizeError::DegenerateQuotient);
        }
        return Ok(());
    }
    let a01 = -c[0][1].re.clone();
    let a12 = -c[1][2].re.clone();
    let a20 = -c[2][0].re.clone();
    // Gram matrix after fixing U_2 = 0
    let d0 = a20.clone() + a01.clone();
    let d1 = a01.clone() + a12.clone();
    let det = pair_products(&a01, &a12, &a20);
    if d0.is_negative() || d1.is_negative() || det.is_negative() {
        return Err(RealizeError::NotNonnegative);
    }
    if det.is_zero() || d0.is_zero() || d1.is_zero() {
        return Err(RealizeError::DegenerateQuotient);
    }
    Ok(())
}

fn pair_products(x: &Rational, y: &Rational, z: &Rational) -> Rational {
    x.clone() * y + y.clone() * z + z.clone() * x
}

/// Conductances `c_01, c_12, c_20` a triangle must have to produce `c`.
/// They are forced: the response of a triangle has off-diagonal entries `-c_uv`.
pub fn triangle_conductances(c: &Matrix<GaussianRational>) -> Result<[GaussianRational; 3], RealizeError> {
    check(c).or_else(|e| match e {
        RealizeError::NotNonnegative | RealizeError::DegenerateQuotient => Ok(()),
        e => Err(e),
    })?;
    if c.len() != 3 {
        return Err(RealizeError::Size(c.len()));
    }
    Ok([-c[0][1].clone(), -c[1][2].clone(), -c[2][0].clone()])
}

/// Largest `delta = 2^-k` with all pairwise sums and the pair-product sum of
/// `r_uv = a_uv - delta` strictly positive.
fn choose_delta(a: &[Rational; 3]) -> Rational {
    let two = Rational::from_integer(2.into());
    let mut delta = Rational::one();
    loop {
        let r: Vec<Rational> = a.iter().map(|x| x.clone() - &delta).collect();
        let sums_ok = (0..3).all(|i| (r[i].clone() + &r[(i + 1) % 3]).is_positive());
        if sums_ok && pair_products(&r[0], &r[1], &r[2]).is_positive() {
            return delta;
        }
        delta /= &two;
    }
}

/// Smallest positive integer `M` with `M^2 > bound`.
fn choose_m(bound: &Rational) -> Rational {
    let mut m = Rational::one();
    while !(m.clone() * &m > *bound) {
        m += Rational::one();
    }
    m
}

/// A network with response exactly `c` for `b = 2` or `b = 3`, after checking
/// symmetry, zero row sums and definiteness of the real part on nonconstant
/// voltages.
///
/// The 3-terminal case shifts `r_uv = -Re C_uv - delta`. If every `r_uv` is
/// positive the triangle `c_uv = -C_uv` works. Otherwise exactly one is
/// nonpositive, and an interior vertex is added whose star reduces by Y-Delta
/// to a triangle `(r_uv)` plus a complex correction `iM` on one side.
pub fn realize_response_b3(c: &Matrix<GaussianRational>) -> Result<Realization, RealizeError> {
    check(c)?;
    let b = c.len();
    let (network, branch, delta, m) = if b == 2 {
        let net = Network::new(2, 2, vec![Edge::new(0, 1, c[0][0].clone())])?;
        (net, Branch::Edge, None, None)
    } else {
        let pairs = [(0, 1), (1, 2), (2, 0)];
        let a: [Rational; 3] = pairs.map(|(u, v)| -c[u][v].re.clone());
        let mi: [Rational; 3] = pairs.map(|(u, v)| -c[u][v].im.clone());
        let delta = choose_delta(&a);
        let r: [Rational; 3] = a.clone().map(|x| x - &delta);
        match r.iter().position(|x| !x.is_positive()) {
            None => {
                let edges = pairs
                    .iter()
                    .map(|&(u, v)| Edge::new(u, v, -c[u][v].clone()))
                    .collect();
                (Network::new(3, 3, edges)?, Branch::Triangle, Some(delta), None)
            }
            Some(k) => {
                // pair k = (z, x) is the nonpositive one; y is the opposite vertex
                let (z, x) = pairs[k];
                let y = 3 - z - x;
                let idx = |u: usize, v: usize| {
                    pairs
                        .iter()
                        .position(|&(p, q)| (p, q) == (u, v) || (q, p) == (u, v))
                        .expect("pair of distinct boundary vertices")
                };
                let (r_xy, r_yz, r_zx) = (
                    r[idx(x, y)].clone(),
                    r[idx(y, z)].clone(),
                    r[idx(z, x)].clone(),
                );
                let p = pair_products(&r_xy, &r_yz, &r_zx);
                let m = choose_m(&(p.clone() * r_zx.abs() / (r_yz.clone() + &r_xy)));
                let big = gauss(p, m.clone() * (r_yz.clone() + &r_xy));
                let side = |u: usize, v: usize, shift: Rational| {
                    Edge::new(u, v, gauss(delta.clone(), mi[idx(u, v)].clone() - shift))
                };
                let real = |q: &Rational| gauss(q.clone(), Rational::zero());
                let edges = vec![
                    side(x, y, Rational::zero()),
                    side(y, z, Rational::zero()),
                    side(z, x, m.clone()),
                    Edge::new(x, 3, big.clone() / real(&r_yz)),
                    Edge::new(z, 3, big.clone() / real(&r_xy)),
                    Edge::new(y, 3, big / gauss(r_zx, m.clone())),
                ];
                (Network::new(4, 3, edges)?, Branch::FourVertex, Some(delta), Some(m))
            }
        }
    };
    network.check_conductances()?;
    if response(&network)? != *c {
        return Err(RealizeError::Mismatch);
    }
    if branch == Branch::FourVertex {
        // the reduced triangle is the forced one, with a nonpositive real
        // part, so its response is read off the Laplacian directly
        let reduced = ydelta(&network, 3, true)?;
        if laplacian(&reduced) != *c {
            return Err(RealizeError::Mismatch);
        }
    }
    Ok(Realization {
        network,
        branch,
        delta,
        m,
    })
}

impl Realization {
    pub fn describe(&self) -> String {
        let f = |q: &Option<Rational>| q.as_ref().map(format_rational).unwrap_or_else(|| "-".into());
        format!(
            "{:?} branch, {} vertices, delta = {}, M = {}",
            self.branch,
            self.network.n(),
            f(&self.delta),
            f(&self.m)
        )
    }
}

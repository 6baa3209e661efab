//! Generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rectcircuit::algebra::scalar::{gauss, q};
use rectcircuit::algebra::{GaussianRational, Rational, Scalar};
use rectcircuit::circuit::{Edge, Network};

// ---------------------------------------------------------------------------
// Multivariate rational functions over Q, for symbolic derivatives.

/// Sparse polynomial in `Q[c_0, .., c_{m-1}]`; exponent vectors of fixed length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    vars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MPoly {
    pub fn constant(vars: usize, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; vars], c);
        }
        MPoly { vars, terms }
    }

    pub fn var(vars: usize, i: usize) -> Self {
        let mut e = vec![0; vars];
        e[i] = 1;
        MPoly {
            vars,
            terms: BTreeMap::from([(e, Rational::one())]),
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(e, _)| e.iter().all(|&x| x == 0))
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        let entry = self.terms.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    fn plus(&self, o: &Self, sign: i64) -> Self {
        let (mut r, o) = MPoly::aligned(self, o);
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone() * Rational::from_integer(sign.into()));
        }
        r
    }

    fn times(&self, o: &Self) -> Self {
        let (a, o) = MPoly::aligned(self, o);
        let mut r = MPoly::constant(a.vars, Rational::zero());
        for (e1, c1) in &a.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1.clone() * c2);
            }
        }
        r
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut r = MPoly::constant(self.vars, Rational::zero());
        for (e, c) in &self.terms {
            if e.get(i).is_some_and(|&k| k > 0) {
                let mut e2 = e.clone();
                e2[i] -= 1;
                r.add_term(e2, c.clone() * Rational::from_integer(e[i].into()));
            }
        }
        r
    }

    fn term_count(&self) -> usize {
        self.terms.len()
    }
}

/// `num / den` without reduction; equality by cross-multiplication.
#[derive(Clone, Debug)]
pub struct MRat {
    num: MPoly,
    den: MPoly,
}

impl MRat {
    pub fn var(vars: usize, i: usize) -> Self {
        MRat {
            num: MPoly::var(vars, i),
            den: MPoly::constant(vars, Rational::one()),
        }
    }

    pub fn constant(vars: usize, c: Rational) -> Self {
        MRat {
            num: MPoly::constant(vars, c),
            den: MPoly::constant(vars, Rational::one()),
        }
    }

    fn make(num: MPoly, den: MPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return MRat {
                den: MPoly::constant(num.vars, Rational::one()),
                num,
            };
        }
        if let Some(d) = den.as_constant() {
            let inv = MPoly::constant(den.vars, d.recip());
            return MRat {
                num: num.times(&inv),
                den: MPoly::constant(den.vars, Rational::one()),
            };
        }
        MRat { num, den }
    }

    /// Quotient rule.
    pub fn derivative(&self, i: usize) -> Self {
        let top = self
            .num
            .derivative(i)
            .times(&self.den)
            .plus(&self.num.times(&self.den.derivative(i)), -1);
        MRat::make(top, self.den.times(&self.den))
    }
}

impl PartialEq for MRat {
    fn eq(&self, o: &Self) -> bool {
        let (a, b) = MPoly::aligned(&self.num.times(&o.den), &o.num.times(&self.den));
        a == b
    }
}

impl Add for MRat {
    type Output = MRat;
    fn add(self, o: MRat) -> MRat {
        let (d1, d2) = MPoly::aligned(&self.den, &o.den);
        if d1 == d2 {
            return MRat::make(self.num.plus(&o.num, 1), d1);
        }
        MRat::make(
            self.num.times(&o.den).plus(&o.num.times(&self.den), 1),
            self.den.times(&o.den),
        )
    }
}

impl Sub for MRat {
    type Output = MRat;
    fn sub(self, o: MRat) -> MRat {
        self + (-o)
    }
}

impl Neg for MRat {
    type Output = MRat;
    fn neg(self) -> MRat {
        let zero = MPoly::constant(self.num.vars, Rational::zero());
        MRat::make(zero.plus(&self.num, -1), self.den)
    }
}

impl Mul for MRat {
    type Output = MRat;
    fn mul(self, o: MRat) -> MRat {
        MRat::make(self.num.times(&o.num), self.den.times(&o.den))
    }
}

impl Div for MRat {
    type Output = MRat;
    fn div(self, o: MRat) -> MRat {
        MRat::make(self.num.times(&o.den), self.den.times(&o.num))
    }
}

impl Zero for MRat {
    fn zero() -> Self {
        MRat::constant(0, Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for MRat {
    fn one() -> Self {
        MRat::constant(0, Rational::one())
    }
}

impl Scalar for MRat {
    fn from_rational(q: &Rational) -> Self {
        MRat::constant(0, q.clone())
    }
    fn real_part_sign(&self) -> Option<Ordering> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some((n / d).cmp(&Rational::zero()))
    }
    fn weight(&self) -> usize {
        self.num.term_count() + self.den.term_count()
    }
}

// Constants from `Zero::zero()` and `One::one()` have no variables; operands
// are padded to a common length before combining.
impl MPoly {
    fn pad(&mut self, vars: usize) {
        if self.vars < vars {
            let terms = std::mem::take(&mut self.terms);
            for (mut e, c) in terms {
                e.resize(vars, 0);
                self.terms.insert(e, c);
            }
            self.vars = vars;
        }
    }

    fn aligned(a: &Self, b: &Self) -> (Self, Self) {
        let v = a.vars.max(b.vars);
        let (mut a, mut b) = (a.clone(), b.clone());
        a.pad(v);
        b.pad(v);
        (a, b)
    }
}

// ---------------------------------------------------------------------------
// Random values.

pub fn pos_rational(rng: &mut ChaCha8Rng) -> Rational {
    q(rng.random_range(1..=9), rng.random_range(1..=9))
}

pub fn any_rational(rng: &mut ChaCha8Rng) -> Rational {
    q(rng.random_range(-9..=9), rng.random_range(1..=9))
}

/// Positive real part, arbitrary imaginary part.
pub fn pos_gaussian(rng: &mut ChaCha8Rng) -> GaussianRational {
    gauss(pos_rational(rng), q(rng.random_range(-5..=5), rng.random_range(1..=5)))
}

pub fn any_gaussian(rng: &mut ChaCha8Rng) -> GaussianRational {
    gauss(any_rational(rng), any_rational(rng))
}

// ---------------------------------------------------------------------------
// Random networks.

/// Edge list of a random connected planar graph: a subgraph of a grid with
/// some cell diagonals, containing a random spanning tree. Returns the vertex
/// count, the edges, and the outer-face vertices in counterclockwise order.
pub fn planar_graph(rng: &mut ChaCha8Rng, max_n: usize) -> (usize, Vec<(usize, usize)>, Vec<usize>) {
    let rows = rng.random_range(1..=3usize);
    let max_cols = (max_n / rows).max(2);
    let cols = rng.random_range(2..=max_cols);
    let id = |r: usize, c: usize| r * cols + c;
    let mut all = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                all.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                all.push((id(r, c), id(r + 1, c)));
            }
            if r + 1 < rows && c + 1 < cols && rng.random_bool(0.3) {
                all.push((id(r, c), id(r + 1, c + 1)));
            }
        }
    }
    let n = rows * cols;
    all.shuffle(rng);
    // Kruskal with random order gives a random spanning tree
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    let mut edges = Vec::new();
    for &(u, v) in &all {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            edges.push((u, v));
        } else if rng.random_bool(0.5) {
            edges.push((u, v));
        }
    }
    // occasional parallel edge
    if rng.random_bool(0.2) {
        let e = edges[rng.random_range(0..edges.len())];
        edges.push(e);
    }
    let mut outer = Vec::new();
    for c in 0..cols {
        outer.push(id(0, c));
    }
    for r in 1..rows {
        outer.push(id(r, cols - 1));
    }
    if rows > 1 {
        for c in (0..cols - 1).rev() {
            outer.push(id(rows - 1, c));
        }
        for r in (1..rows - 1).rev() {
            outer.push(id(r, 0));
        }
    }
    (n, edges, outer)
}

/// Relabels so that `boundary` (in the given order) becomes `0..b`.
pub fn with_boundary<S: Scalar>(
    n: usize,
    edges: &[(usize, usize)],
    boundary: &[usize],
    mut conductance: impl FnMut() -> S,
) -> Network<S> {
    let mut label = vec![usize::MAX; n];
    for (i, &v) in boundary.iter().enumerate() {
        label[v] = i;
    }
    let mut next = boundary.len();
    for l in label.iter_mut() {
        if *l == usize::MAX {
            *l = next;
            next += 1;
        }
    }
    let edges = edges
        .iter()
        .map(|&(u, v)| Edge::new(label[u], label[v], conductance()))
        .collect();
    Network::new(n, boundary.len(), edges).expect("connected graph")
}

/// Random planar network with `b` boundary vertices in counterclockwise
/// order on the outer face; `b` is capped by the outer-face size.
pub fn planar_network<S: Scalar>(
    rng: &mut ChaCha8Rng,
    max_n: usize,
    b: usize,
    mut conductance: impl FnMut(&mut ChaCha8Rng) -> S,
) -> Network<S> {
    let (n, edges, outer) = planar_graph(rng, max_n);
    let b = b.min(outer.len());
    let mut pick: Vec<usize> = (0..outer.len()).collect();
    pick.shuffle(rng);
    let mut chosen: Vec<usize> = pick[..b].to_vec();
    chosen.sort_unstable();
    let boundary: Vec<usize> = chosen.into_iter().map(|i| outer[i]).collect();
    let mut vals: Vec<S> = (0..edges.len()).map(|_| conductance(rng)).collect();
    vals.reverse();
    with_boundary(n, &edges, &boundary, || vals.pop().unwrap())
}

/// Random connected multigraph on `n` vertices with boundary `{0, 1}`.
pub fn connected_network(rng: &mut ChaCha8Rng, n: usize, extra: usize) -> Network<Rational> {
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.random_range(0..v);
        edges.push(Edge::new(u, v, pos_rational(rng)));
    }
    for _ in 0..extra {
        let u = rng.random_range(0..n);
        let mut v = rng.random_range(0..n);
        if u == v {
            v = (v + 1) % n;
        }
        edges.push(Edge::new(u, v, pos_rational(rng)));
    }
    Network::new(n, 2, edges).expect("tree plus edges is connected")
}

pub fn is_nonnegative(x: &Rational) -> bool {
    !x.is_negative()
}

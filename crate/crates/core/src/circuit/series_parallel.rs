//! Series-parallel networks built from a composition tree, with the planar
//! embedding of the corresponding stacked-and-juxtaposed rectangle picture.

use crate::algebra::Scalar;

use super::network::{Edge, Embedding, Network};

#[derive(Clone, Debug, PartialEq)]
pub enum SeriesParallel<L> {
    Leaf(L),
    /// First operand on top, second below.
    Series(Box<SeriesParallel<L>>, Box<SeriesParallel<L>>),
    /// First operand on the left, second on the right.
    Parallel(Box<SeriesParallel<L>>, Box<SeriesParallel<L>>),
}

impl<L> SeriesParallel<L> {
    pub fn leaf(l: L) -> Self {
        SeriesParallel::Leaf(l)
    }

    pub fn series(a: Self, b: Self) -> Self {
        SeriesParallel::Series(Box::new(a), Box::new(b))
    }

    pub fn parallel(a: Self, b: Self) -> Self {
        SeriesParallel::Parallel(Box::new(a), Box::new(b))
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            SeriesParallel::Leaf(_) => 1,
            SeriesParallel::Series(a, b) | SeriesParallel::Parallel(a, b) => {
                a.leaf_count() + b.leaf_count()
            }
        }
    }

    pub fn leaves(&self) -> Vec<&L> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a L>) {
        match self {
            SeriesParallel::Leaf(l) => out.push(l),
            SeriesParallel::Series(a, b) | SeriesParallel::Parallel(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
        }
    }

    pub fn map<T>(&self, f: &mut impl FnMut(&L) -> T) -> SeriesParallel<T> {
        match self {
            SeriesParallel::Leaf(l) => SeriesParallel::Leaf(f(l)),
            SeriesParallel::Series(a, b) => SeriesParallel::series(a.map(f), b.map(f)),
            SeriesParallel::Parallel(a, b) => SeriesParallel::parallel(a.map(f), b.map(f)),
        }
    }
}

impl<S: Scalar> SeriesParallel<S> {
    /// Tree-evaluated conductance: harmonic sum in series, sum in parallel.
    pub fn conductance(&self) -> S {
        match self {
            SeriesParallel::Leaf(c) => c.clone(),
            SeriesParallel::Series(a, b) => {
                let (x, y) = (a.conductance(), b.conductance());
                x.clone() * y.clone() / (x + y)
            }
            SeriesParallel::Parallel(a, b) => a.conductance() + b.conductance(),
        }
    }
}

struct Builder<S> {
    n: usize,
    edges: Vec<Edge<S>>,
    rotation: Vec<Vec<usize>>,
}

impl<S: Scalar> Builder<S> {
    /// Returns the edges at `s` (left to right) and at `t` (right to left).
    fn build(&mut self, node: &SeriesParallel<S>, s: usize, t: usize) -> (Vec<usize>, Vec<usize>) {
        match node {
            SeriesParallel::Leaf(c) => {
                let id = self.edges.len();
                self.edges.push(Edge::new(s, t, c.clone()));
                (vec![id], vec![id])
            }
            SeriesParallel::Parallel(a, b) => {
                let (a_s, a_t) = self.build(a, s, t);
                let (b_s, b_t) = self.build(b, s, t);
                ([a_s, b_s].concat(), [b_t, a_t].concat())
            }
            SeriesParallel::Series(a, b) => {
                let m = self.n;
                self.n += 1;
                self.rotation.push(Vec::new());
                let (a_s, a_t) = self.build(a, s, m);
                let (b_s, b_t) = self.build(b, m, t);
                self.rotation[m] = [a_t, b_s].concat();
                (a_s, b_t)
            }
        }
    }
}

/// Two-terminal network of the tree, top terminal 0 and bottom terminal 1,
/// with its planar embedding.
pub fn build_series_parallel<S: Scalar>(spec: &SeriesParallel<S>) -> Network<S> {
    let mut bld = Builder {
        n: 2,
        edges: Vec::new(),
        rotation: vec![Vec::new(), Vec::new()],
    };
    let (s, t) = bld.build(spec, 0, 1);
    bld.rotation[0] = s;
    bld.rotation[1] = t;
    Network::from_parts_unchecked(bld.n, 2, bld.edges, Some(Embedding { rotation: bld.rotation }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{q, qi, Rational};
    use crate::circuit::{conductance, essential_edges};

    type Sp = SeriesParallel<Rational>;

    #[test]
    fn examples() {
        let leaf = |x: Rational| Sp::leaf(x);
        let net = build_series_parallel(&leaf(q(2, 3)));
        assert_eq!(net.edges().len(), 1);
        assert_eq!(conductance(&net).unwrap(), q(2, 3));
        let s = Sp::series(leaf(qi(2)), leaf(qi(3)));
        assert_eq!(conductance(&build_series_parallel(&s)).unwrap(), q(6, 5));
        let t = Sp::parallel(Sp::series(leaf(qi(1)), leaf(qi(1))), leaf(qi(1)));
        assert_eq!(t.conductance(), q(3, 2));
        let net = build_series_parallel(&t);
        assert_eq!(conductance(&net).unwrap(), q(3, 2));
        assert_eq!(essential_edges(&net, None).unwrap().len(), 3);
        assert_eq!(net.embedding().unwrap().rotation[0], vec![0, 2]);
        assert_eq!(net.embedding().unwrap().rotation[1], vec![2, 1]);
    }
}

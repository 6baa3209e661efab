use std::cmp::Ordering;

use thiserror::Error;

use crate::algebra::{AlgebraError, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("boundary count {b} must satisfy 1 <= b <= n = {n}")]
    BoundaryCount { n: usize, b: usize },
    #[error("edge {edge} joins vertex {vertex}, which is out of range")]
    VertexOutOfRange { edge: usize, vertex: usize },
    #[error("edge {0} is a loop")]
    Loop(usize),
    #[error("edge {0} has a conductance with nonpositive real part")]
    NonPositiveConductance(usize),
    #[error("vertex {0} lies in a component without boundary vertices")]
    NoBoundaryInComponent(usize),
    #[error("conductance needs exactly 2 boundary vertices, network has {0}; use response()")]
    NotTwoTerminal(usize),
    #[error("expected {expected} boundary voltages, got {got}")]
    VoltageCount { expected: usize, got: usize },
    #[error("unknown edge {0}")]
    UnknownEdge(usize),
    #[error("invalid embedding: {0}")]
    BadEmbedding(String),
    #[error("vertex {0} cannot be a Y-Delta center: {1}")]
    BadCenter(usize, String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Edge<S> {
    pub u: usize,
    pub v: usize,
    pub c: S,
}

impl<S> Edge<S> {
    pub fn new(u: usize, v: usize, c: S) -> Self {
        Edge { u, v, c }
    }

    /// Endpoints ordered by vertex id; currents flow positive from the first to the second.
    pub fn oriented(&self) -> (usize, usize) {
        (self.u.min(self.v), self.u.max(self.v))
    }

    pub fn other(&self, w: usize) -> usize {
        if w == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// Rotation system: for each vertex, incident edge ids in counterclockwise order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub rotation: Vec<Vec<usize>>,
}

/// Multigraph with boundary vertices `0..b` and conductances in an exact field.
#[derive(Clone, Debug, PartialEq)]
pub struct Network<S> {
    n: usize,
    b: usize,
    edges: Vec<Edge<S>>,
    embedding: Option<Embedding>,
}

impl<S: Scalar> Network<S> {
    /// Checks the structural invariants; conductance signs are checked by [`Network::check_conductances`].
    pub fn new(n: usize, b: usize, edges: Vec<Edge<S>>) -> Result<Self, CircuitError> {
        if b == 0 || b > n {
            return Err(CircuitError::BoundaryCount { n, b });
        }
        for (i, e) in edges.iter().enumerate() {
            for w in [e.u, e.v] {
                if w >= n {
                    return Err(CircuitError::VertexOutOfRange { edge: i, vertex: w });
                }
            }
            if e.u == e.v {
                return Err(CircuitError::Loop(i));
            }
        }
        let net = Network {
            n,
            b,
            edges,
            embedding: None,
        };
        if let Some(v) = net.vertex_without_boundary() {
            return Err(CircuitError::NoBoundaryInComponent(v));
        }
        Ok(net)
    }

    pub fn with_embedding(mut self, emb: Embedding) -> Result<Self, CircuitError> {
        self.check_embedding(&emb)?;
        self.embedding = Some(emb);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn edges(&self) -> &[Edge<S>] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Result<&Edge<S>, CircuitError> {
        self.edges.get(id).ok_or(CircuitError::UnknownEdge(id))
    }

    pub fn embedding(&self) -> Option<&Embedding> {
        self.embedding.as_ref()
    }

    pub fn is_boundary(&self, v: usize) -> bool {
        v < self.b
    }

    /// Edge ids incident to each vertex, in edge order.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            inc[e.u].push(i);
            inc[e.v].push(i);
        }
        inc
    }

    fn vertex_without_boundary(&self) -> Option<usize> {
        let inc = self.incidence();
        let mut seen = vec![false; self.n];
        let mut stack: Vec<usize> = (0..self.b).collect();
        for &v in &stack {
            seen[v] = true;
        }
        while let Some(v) = stack.pop() {
            for &e in &inc[v] {
                let w = self.edges[e].other(v);
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().position(|s| !s)
    }

    /// Connected when every vertex is reachable from vertex 0.
    pub fn is_connected(&self) -> bool {
        let inc = self.incidence();
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &e in &inc[v] {
                let w = self.edges[e].other(v);
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Rejects conductances whose real part is provably nonpositive.
    /// Symbolic conductances, whose sign is undecidable, pass.
    pub fn check_conductances(&self) -> Result<(), CircuitError> {
        for (i, e) in self.edges.iter().enumerate() {
            if let Some(s) = e.c.real_part_sign() {
                if s != Ordering::Greater {
                    return Err(CircuitError::NonPositiveConductance(i));
                }
            }
        }
        Ok(())
    }

    fn check_embedding(&self, emb: &Embedding) -> Result<(), CircuitError> {
        if emb.rotation.len() != self.n {
            return Err(CircuitError::BadEmbedding(format!(
                "rotation given for {} vertices, network has {}",
                emb.rotation.len(),
                self.n
            )));
        }
        let inc = self.incidence();
        for (v, rot) in emb.rotation.iter().enumerate() {
            let mut a = rot.clone();
            let mut b = inc[v].clone();
            a.sort_unstable();
            b.sort_unstable();
            if a != b {
                return Err(CircuitError::BadEmbedding(format!(
                    "rotation at vertex {v} is not a permutation of its incident edges"
                )));
            }
        }
        Ok(())
    }

    /// Same graph with conductances mapped through `f`.
    pub fn map_conductances<T: Scalar>(&self, mut f: impl FnMut(usize, &S) -> T) -> Network<T> {
        Network {
            n: self.n,
            b: self.b,
            edges: self
                .edges
                .iter()
                .enumerate()
                .map(|(i, e)| Edge::new(e.u, e.v, f(i, &e.c)))
                .collect(),
            embedding: self.embedding.clone(),
        }
    }

    /// Removes the listed edges, renumbering the rest and keeping the embedding.
    /// Vertices left isolated stay.
    pub(crate) fn without_edges_unchecked(&self, drop: &[usize]) -> (Network<S>, Vec<usize>) {
        let mut new_id = vec![usize::MAX; self.edges.len()];
        let mut kept = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if !drop.contains(&i) {
                new_id[i] = kept.len();
                kept.push(e.clone());
            }
        }
        let embedding = self.embedding.as_ref().map(|emb| Embedding {
            rotation: emb
                .rotation
                .iter()
                .map(|r| r.iter().filter(|&&e| new_id[e] != usize::MAX).map(|&e| new_id[e]).collect())
                .collect(),
        });
        let old_ids = (0..self.edges.len()).filter(|i| !drop.contains(i)).collect();
        (
            Network {
                n: self.n,
                b: self.b,
                edges: kept,
                embedding,
            },
            old_ids,
        )
    }

    pub(crate) fn from_parts_unchecked(
        n: usize,
        b: usize,
        edges: Vec<Edge<S>>,
        embedding: Option<Embedding>,
    ) -> Self {
        Network {
            n,
            b,
            edges,
            embedding,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{qi, Rational};

    #[test]
    fn rejects_bad_structure() {
        let e = |u, v| Edge::new(u, v, qi(1));
        assert_eq!(
            Network::<Rational>::new(2, 0, vec![]).unwrap_err(),
            CircuitError::BoundaryCount { n: 2, b: 0 }
        );
        assert_eq!(Network::new(2, 2, vec![e(0, 0)]).unwrap_err(), CircuitError::Loop(0));
        assert_eq!(
            Network::new(3, 2, vec![e(0, 1)]).unwrap_err(),
            CircuitError::NoBoundaryInComponent(2)
        );
        let net = Network::new(2, 2, vec![Edge::new(0, 1, qi(-1))]).unwrap();
        assert_eq!(net.check_conductances(), Err(CircuitError::NonPositiveConductance(0)));
    }

    #[test]
    fn disconnected_components_need_boundary() {
        let e = |u, v| Edge::new(u, v, qi(1));
        let net = Network::new(4, 2, vec![e(0, 2), e(1, 3)]).unwrap();
        assert!(!net.is_connected());
    }

    #[test]
    fn embedding_must_match_incidence() {
        let e = |u, v| Edge::new(u, v, qi(1));
        let net = Network::new(2, 2, vec![e(0, 1), e(0, 1)]).unwrap();
        let ok = Embedding {
            rotation: vec![vec![1, 0], vec![0, 1]],
        };
        assert!(net.clone().with_embedding(ok).is_ok());
        let bad = Embedding {
            rotation: vec![vec![0], vec![0, 1]],
        };
        assert!(net.with_embedding(bad).is_err());
    }
}

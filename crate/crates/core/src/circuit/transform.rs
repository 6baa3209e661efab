//! Response-preserving rewrites: Y-Delta and merging of parallel edges.

use std::collections::BTreeMap;

use crate::algebra::Scalar;

use super::network::{CircuitError, Edge, Network};

/// Replaces the degree-3 interior star at `center` by a triangle with
/// conductances `xy/(x+y+z)`, `yz/(x+y+z)`, `zx/(x+y+z)`. Vertices above
/// `center` shift down by one; the embedding is dropped. With `merge`, the
/// result has its parallel edges combined.
pub fn ydelta<S: Scalar>(net: &Network<S>, center: usize, merge: bool) -> Result<Network<S>, CircuitError> {
    if center >= net.n() {
        return Err(CircuitError::BadCenter(center, "no such vertex".into()));
    }
    if net.is_boundary(center) {
        return Err(CircuitError::BadCenter(center, "boundary vertex".into()));
    }
    let star: Vec<usize> = (0..net.edges().len())
        .filter(|&i| {
            let e = &net.edges()[i];
            e.u == center || e.v == center
        })
        .collect();
    if star.len() != 3 {
        return Err(CircuitError::BadCenter(
            center,
            format!("degree {} instead of 3", star.len()),
        ));
    }
    let arms: Vec<(usize, S)> = star
        .iter()
        .map(|&i| {
            let e = &net.edges()[i];
            (e.other(center), e.c.clone())
        })
        .collect();
    let total = arms.iter().fold(S::zero(), |s, (_, c)| s + c.clone());
    let relabel = |v: usize| if v > center { v - 1 } else { v };
    let mut edges: Vec<Edge<S>> = net
        .edges()
        .iter()
        .enumerate()
        .filter(|(i, _)| !star.contains(i))
        .map(|(_, e)| Edge::new(relabel(e.u), relabel(e.v), e.c.clone()))
        .collect();
    for (a, b) in [(0, 1), (1, 2), (2, 0)] {
        let (va, ca) = &arms[a];
        let (vb, cb) = &arms[b];
        // two arms to the same neighbour would give a loop, which carries no current
        if va != vb {
            let c = ca.clone() * cb.clone() / total.clone();
            edges.push(Edge::new(relabel(*va), relabel(*vb), c));
        }
    }
    let out = Network::new(net.n() - 1, net.b(), edges)?;
    Ok(if merge { merge_parallel(&out) } else { out })
}

/// Combines edges with the same endpoints by adding conductances. Edges keep
/// the order of their first occurrence; the embedding is dropped.
pub fn merge_parallel<S: Scalar>(net: &Network<S>) -> Network<S> {
    let mut index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut edges: Vec<Edge<S>> = Vec::new();
    for e in net.edges() {
        let key = e.oriented();
        match index.get(&key) {
            Some(&i) => edges[i].c = edges[i].c.clone() + e.c.clone(),
            None => {
                index.insert(key, edges.len());
                edges.push(Edge::new(key.0, key.1, e.c.clone()));
            }
        }
    }
    Network::from_parts_unchecked(net.n(), net.b(), edges, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{q, qi, Rational};
    use crate::circuit::response;

    fn star(x: Rational, y: Rational, z: Rational) -> Network<Rational> {
        Network::new(
            4,
            3,
            vec![Edge::new(3, 0, x), Edge::new(3, 1, y), Edge::new(3, 2, z)],
        )
        .unwrap()
    }

    #[test]
    fn unit_star() {
        let s = star(qi(1), qi(1), qi(1));
        let t = ydelta(&s, 3, false).unwrap();
        assert_eq!(t.n(), 3);
        assert!(t.edges().iter().all(|e| e.c == q(1, 3)));
        assert_eq!(response(&s).unwrap(), response(&t).unwrap());
    }

    #[test]
    fn weighted_star() {
        let s = star(qi(1), qi(2), qi(3));
        let t = ydelta(&s, 3, false).unwrap();
        let cs: Vec<_> = t.edges().iter().map(|e| e.c.clone()).collect();
        assert_eq!(cs, vec![q(1, 3), qi(1), q(1, 2)]);
        assert_eq!(response(&s).unwrap(), response(&t).unwrap());
    }

    #[test]
    fn merges_with_existing_triangle() {
        let mut edges = star(qi(1), qi(2), qi(3)).edges().to_vec();
        edges.push(Edge::new(0, 1, qi(5)));
        let s = Network::new(4, 3, edges).unwrap();
        let t = ydelta(&s, 3, true).unwrap();
        assert_eq!(t.edges().len(), 3);
        assert_eq!(response(&s).unwrap(), response(&t).unwrap());
    }

    #[test]
    fn rejects_bad_centers() {
        let s = star(qi(1), qi(1), qi(1));
        assert!(ydelta(&s, 0, false).is_err());
        let p = Network::new(3, 2, vec![Edge::new(0, 2, qi(1)), Edge::new(2, 1, qi(1))]).unwrap();
        assert!(ydelta(&p, 2, false).is_err());
    }
}

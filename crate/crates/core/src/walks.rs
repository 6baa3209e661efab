//! Random walks on positive-rational networks: the escape probability from
//! vertex 0 to vertex 1 equals `C / (total conductance at 0)`.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::linalg::{self, Matrix};
use crate::algebra::scalar::rational_to_f64;
use crate::algebra::Rational;
use crate::circuit::{conductance, CircuitError, Network};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WalkError {
    #[error("edge {0} has a nonpositive conductance")]
    NonPositive(usize),
    #[error("vertex {0} has no incident edges")]
    Isolated(usize),
    #[error("escape probability needs boundary {{start, target}} = {{0, 1}}, network has {0} boundary vertices")]
    NotTwoTerminal(usize),
    #[error("conductance formula gives {formula}, absorbing chain gives {chain}")]
    Disagree { formula: String, chain: String },
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

/// Walk with `P_kl = c_kl / w_k`, `w_k = sum_j c_jk`, from `start` until it
/// hits `target` or comes back to `start`.
#[derive(Clone, Debug, PartialEq)]
pub struct MarkovChain {
    pub transitions: Matrix<Rational>,
    pub weights: Vec<Rational>,
    pub start: usize,
    pub target: usize,
}

impl MarkovChain {
    pub fn from_network(net: &Network<Rational>, start: usize, target: usize) -> Result<Self, WalkError> {
        let n = net.n();
        let mut c: Matrix<Rational> = linalg::zeros(n, n);
        for (i, e) in net.edges().iter().enumerate() {
            if !e.c.is_positive() {
                return Err(WalkError::NonPositive(i));
            }
            c[e.u][e.v] += &e.c;
            c[e.v][e.u] += &e.c;
        }
        let weights: Vec<Rational> = c.iter().map(|row| row.iter().sum()).collect();
        if let Some(k) = weights.iter().position(|w| w.is_zero()) {
            return Err(WalkError::Isolated(k));
        }
        let transitions = c
            .into_iter()
            .zip(&weights)
            .map(|(row, w)| row.into_iter().map(|x| x / w).collect())
            .collect();
        Ok(MarkovChain {
            transitions,
            weights,
            start,
            target,
        })
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn rows_sum_to_one(&self) -> bool {
        self.transitions
            .iter()
            .all(|row| row.iter().sum::<Rational>().is_one())
    }

    /// `w_k P_kl = w_l P_lk` for all `k, l`.
    pub fn is_reversible(&self) -> bool {
        let n = self.n();
        (0..n).all(|k| {
            (k + 1..n).all(|l| {
                self.weights[k].clone() * &self.transitions[k][l]
                    == self.weights[l].clone() * &self.transitions[l][k]
            })
        })
    }

    /// First-step analysis: `h_target = 1`, `h_start = 0`, `h = P h` elsewhere;
    /// the escape probability is `(P h)_start`.
    pub fn absorbing_escape(&self) -> Result<Rational, WalkError> {
        let n = self.n();
        let free: Vec<usize> = (0..n).filter(|&k| k != self.start && k != self.target).collect();
        let mut h = vec![Rational::zero(); n];
        h[self.target] = Rational::one();
        if !free.is_empty() {
            let a: Matrix<Rational> = free
                .iter()
                .map(|&k| {
                    free.iter()
                        .map(|&l| {
                            let id = if k == l { Rational::one() } else { Rational::zero() };
                            id - &self.transitions[k][l]
                        })
                        .collect()
                })
                .collect();
            let rhs: Matrix<Rational> = free
                .iter()
                .map(|&k| vec![self.transitions[k][self.target].clone()])
                .collect();
            let x = linalg::solve(&a, &rhs).map_err(CircuitError::from)?;
            for (i, &k) in free.iter().enumerate() {
                h[k] = x[i][0].clone();
            }
        }
        Ok(self.transitions[self.start]
            .iter()
            .zip(&h)
            .map(|(p, v)| p.clone() * v)
            .sum())
    }
}

/// Probability that the walk from vertex 0 reaches vertex 1 before returning
/// to 0, computed as `C / w_0` and checked against the absorbing chain.
pub fn escape_probability(net: &Network<Rational>) -> Result<Rational, WalkError> {
    if net.b() != 2 {
        return Err(WalkError::NotTwoTerminal(net.b()));
    }
    let chain = MarkovChain::from_network(net, 0, 1)?;
    let formula = conductance(net)? / &chain.weights[0];
    let other = chain.absorbing_escape()?;
    if formula != other {
        return Err(WalkError::Disagree {
            formula: formula.to_string(),
            chain: other.to_string(),
        });
    }
    Ok(formula)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WalkEstimate {
    pub estimate: f64,
    /// `4 sqrt(p (1 - p) / trials)` at the estimate.
    pub radius: f64,
    pub trials: u64,
    pub seed: u64,
    pub hits: u64,
}

/// Monte Carlo escape frequency. Deterministic in `seed`.
pub fn simulate_walk(chain: &MarkovChain, trials: u64, seed: u64) -> WalkEstimate {
    let cumulative: Vec<Vec<(usize, f64)>> = chain
        .transitions
        .iter()
        .map(|row| {
            let mut acc = 0.0;
            row.iter()
                .enumerate()
                .filter(|(_, p)| p.is_positive())
                .map(|(l, p)| {
                    acc += rational_to_f64(p);
                    (l, acc)
                })
                .collect()
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut step = |k: usize| -> usize {
        let row = &cumulative[k];
        let u: f64 = rng.random::<f64>() * row.last().map_or(1.0, |&(_, a)| a);
        row.iter().find(|&&(_, a)| u < a).unwrap_or(&row[row.len() - 1]).0
    };
    let mut hits = 0;
    for _ in 0..trials.max(1) {
        let mut k = step(chain.start);
        while k != chain.target && k != chain.start {
            k = step(k);
        }
        if k == chain.target {
            hits += 1;
        }
    }
    let trials = trials.max(1);
    let p = hits as f64 / trials as f64;
    WalkEstimate {
        estimate: p,
        radius: 4.0 * (p * (1.0 - p) / trials as f64).sqrt(),
        trials,
        seed,
        hits,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{q, qi};
    use crate::circuit::Edge;

    fn net(n: usize, edges: &[(usize, usize, i64)]) -> Network<Rational> {
        Network::new(n, 2, edges.iter().map(|&(u, v, c)| Edge::new(u, v, qi(c))).collect()).unwrap()
    }

    #[test]
    fn worked_values() {
        assert_eq!(escape_probability(&net(2, &[(0, 1, 7)])).unwrap(), qi(1));
        assert_eq!(escape_probability(&net(3, &[(0, 2, 1), (2, 1, 1)])).unwrap(), q(1, 2));
        let five_sixths = net(3, &[(0, 1, 1), (0, 1, 1), (0, 2, 1), (2, 1, 1)]);
        assert_eq!(escape_probability(&five_sixths).unwrap(), q(5, 6));
    }

    #[test]
    fn chain_invariants() {
        let n = net(4, &[(0, 2, 1), (2, 3, 3), (3, 1, 2), (2, 1, 5), (0, 3, 1)]);
        let ch = MarkovChain::from_network(&n, 0, 1).unwrap();
        assert!(ch.rows_sum_to_one());
        assert!(ch.is_reversible());
    }

    #[test]
    fn simulation_is_deterministic() {
        let ch = MarkovChain::from_network(&net(3, &[(0, 2, 1), (2, 1, 1)]), 0, 1).unwrap();
        let a = simulate_walk(&ch, 2000, 7);
        assert_eq!(a, simulate_walk(&ch, 2000, 7));
        assert!((a.estimate - 0.5).abs() < 0.1);
        let one = MarkovChain::from_network(&net(2, &[(0, 1, 3)]), 0, 1).unwrap();
        assert_eq!(simulate_walk(&one, 10, 1).estimate, 1.0);
    }

    #[test]
    fn rejects_bad_conductance() {
        let n = Network::new(2, 2, vec![Edge::new(0, 1, qi(-1))]).unwrap();
        assert_eq!(escape_probability(&n).unwrap_err(), WalkError::NonPositive(0));
    }
}

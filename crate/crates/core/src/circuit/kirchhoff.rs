//! Laws (C) and (I): Ohm's law on every edge, current conservation at every
//! interior vertex. Solved once for the voltage-transfer matrix.

use std::collections::BTreeSet;

use crate::algebra::linalg::{self, Matrix};
use crate::algebra::Scalar;

use super::network::{CircuitError, Network};

#[derive(Clone, Debug, PartialEq)]
pub struct KirchhoffSolution<S> {
    /// `U_k` for every vertex.
    pub voltages: Vec<S>,
    /// `I_e`, positive when current flows from the lower vertex id to the higher.
    pub currents: Vec<S>,
    /// `I_u = sum_k I_uk` for every boundary vertex.
    pub incoming: Vec<S>,
    /// `n x b` matrix with `U = V (U_1..U_b)`.
    pub transfer: Matrix<S>,
}

/// Full Laplacian `L` with `(L U)_k = sum_l c_kl (U_k - U_l)`.
pub fn laplacian<S: Scalar>(net: &Network<S>) -> Matrix<S> {
    let mut l: Matrix<S> = linalg::zeros(net.n(), net.n());
    for e in net.edges() {
        l[e.u][e.u] = l[e.u][e.u].clone() + e.c.clone();
        l[e.v][e.v] = l[e.v][e.v].clone() + e.c.clone();
        l[e.u][e.v] = l[e.u][e.v].clone() - e.c.clone();
        l[e.v][e.u] = l[e.v][e.u].clone() - e.c.clone();
    }
    l
}

/// The `n x b` voltage-transfer matrix `V_pq`.
pub fn transfer_matrix<S: Scalar>(net: &Network<S>) -> Result<Matrix<S>, CircuitError> {
    net.check_conductances()?;
    let (n, b) = (net.n(), net.b());
    let l = laplacian(net);
    let mut v = linalg::zeros(n, b);
    for (u, row) in v.iter_mut().take(b).enumerate() {
        row[u] = S::one();
    }
    if n > b {
        let l_ii: Matrix<S> = (b..n).map(|i| l[i][b..n].to_vec()).collect();
        let rhs: Matrix<S> = (b..n)
            .map(|i| l[i][..b].iter().map(|x| -x.clone()).collect())
            .collect();
        let x = linalg::solve(&l_ii, &rhs)?;
        for (i, row) in x.into_iter().enumerate() {
            v[b + i] = row;
        }
    }
    Ok(v)
}

fn check_voltages<S: Scalar>(net: &Network<S>, u: &[S]) -> Result<(), CircuitError> {
    if u.len() != net.b() {
        return Err(CircuitError::VoltageCount {
            expected: net.b(),
            got: u.len(),
        });
    }
    Ok(())
}

/// The unique solution of laws (C), (I) for the given boundary voltages.
pub fn solve<S: Scalar>(
    net: &Network<S>,
    boundary_voltages: &[S],
) -> Result<KirchhoffSolution<S>, CircuitError> {
    check_voltages(net, boundary_voltages)?;
    let transfer = transfer_matrix(net)?;
    Ok(solution_from_transfer(net, transfer, boundary_voltages))
}

pub(crate) fn solution_from_transfer<S: Scalar>(
    net: &Network<S>,
    transfer: Matrix<S>,
    ub: &[S],
) -> KirchhoffSolution<S> {
    let voltages: Vec<S> = transfer
        .iter()
        .map(|row| {
            row.iter()
                .zip(ub)
                .fold(S::zero(), |s, (v, u)| s + v.clone() * u.clone())
        })
        .collect();
    let currents: Vec<S> = net
        .edges()
        .iter()
        .map(|e| {
            let (k, l) = e.oriented();
            e.c.clone() * (voltages[k].clone() - voltages[l].clone())
        })
        .collect();
    let mut incoming = vec![S::zero(); net.b()];
    for (e, i) in net.edges().iter().zip(&currents) {
        let (k, l) = e.oriented();
        if k < net.b() {
            incoming[k] = incoming[k].clone() + i.clone();
        }
        if l < net.b() {
            incoming[l] = incoming[l].clone() - i.clone();
        }
    }
    KirchhoffSolution {
        voltages,
        currents,
        incoming,
        transfer,
    }
}

/// Response matrix `C_uv`: incoming currents are `I_v = sum_u C_uv U_u`.
pub fn response<S: Scalar>(net: &Network<S>) -> Result<Matrix<S>, CircuitError> {
    let v = transfer_matrix(net)?;
    Ok(response_from_transfer(net, &v))
}

pub(crate) fn response_from_transfer<S: Scalar>(net: &Network<S>, v: &Matrix<S>) -> Matrix<S> {
    let b = net.b();
    let l = laplacian(net);
    // C = L_B* V, restricted to boundary rows
    (0..b)
        .map(|u| {
            (0..b)
                .map(|w| {
                    (0..net.n()).fold(S::zero(), |s, k| s + l[u][k].clone() * v[k][w].clone())
                })
                .collect()
        })
        .collect()
}

/// `I_1 / (U_1 - U_2)` of a two-terminal network.
pub fn conductance<S: Scalar>(net: &Network<S>) -> Result<S, CircuitError> {
    if net.b() != 2 {
        return Err(CircuitError::NotTwoTerminal(net.b()));
    }
    Ok(response(net)?[0][0].clone())
}

/// Edges carrying nonzero current. For two terminals the voltages default to
/// `(1, 0)`; otherwise they must be supplied.
pub fn essential_edges<S: Scalar>(
    net: &Network<S>,
    boundary_voltages: Option<&[S]>,
) -> Result<BTreeSet<usize>, CircuitError> {
    let default;
    let u = match boundary_voltages {
        Some(u) => u,
        None if net.b() == 2 => {
            default = [S::one(), S::zero()];
            &default[..]
        }
        None => {
            return Err(CircuitError::VoltageCount {
                expected: net.b(),
                got: 0,
            })
        }
    };
    let sol = solve(net, u)?;
    Ok(sol
        .currents
        .iter()
        .enumerate()
        .filter(|(_, i)| !i.is_zero())
        .map(|(e, _)| e)
        .collect())
}

/// `dC_uv/dc_j = (V_ku - V_lu)(V_kv - V_lv)` for edge `j = kl`.
pub fn sensitivity<S: Scalar>(net: &Network<S>, edge: usize) -> Result<Matrix<S>, CircuitError> {
    let e = net.edge(edge)?;
    let v = transfer_matrix(net)?;
    let b = net.b();
    let d: Vec<S> = (0..b).map(|u| v[e.u][u].clone() - v[e.v][u].clone()).collect();
    Ok((0..b)
        .map(|u| (0..b).map(|w| d[u].clone() * d[w].clone()).collect())
        .collect())
}

/// Bilinear forms for which the energy identity is checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnergyForm {
    /// `E(U, I) = U I`.
    Product,
    /// `E(U, I) = Re(U conj(I))`.
    Dissipation,
    /// `E((U, U'), (I, I')) = U' I - U I'`, pairing the solution with its
    /// derivative in the conductance of `edge`.
    Sensitivity { edge: usize },
}

fn derivative_solution<S: Scalar>(
    net: &Network<S>,
    sol: &KirchhoffSolution<S>,
    edge: usize,
) -> Result<(Vec<S>, Vec<S>, Vec<S>), CircuitError> {
    let (n, b) = (net.n(), net.b());
    let ej = net.edge(edge)?;
    // L' U has entries +-(U_k - U_l) at the endpoints of edge j
    let du = sol.voltages[ej.u].clone() - sol.voltages[ej.v].clone();
    let mut rhs = vec![S::zero(); n];
    rhs[ej.u] = -du.clone();
    rhs[ej.v] = du;
    let mut dv = vec![S::zero(); n];
    if n > b {
        let l = laplacian(net);
        let l_ii: Matrix<S> = (b..n).map(|i| l[i][b..n].to_vec()).collect();
        let r: Matrix<S> = (b..n).map(|i| vec![rhs[i].clone()]).collect();
        let x = linalg::solve(&l_ii, &r)?;
        for (i, row) in x.into_iter().enumerate() {
            dv[b + i] = row[0].clone();
        }
    }
    let di: Vec<S> = net
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let (k, l) = e.oriented();
            let mut x = e.c.clone() * (dv[k].clone() - dv[l].clone());
            if i == edge {
                x = x + (sol.voltages[k].clone() - sol.voltages[l].clone());
            }
            x
        })
        .collect();
    let mut d_in = vec![S::zero(); b];
    for (e, i) in net.edges().iter().zip(&di) {
        let (k, l) = e.oriented();
        if k < b {
            d_in[k] = d_in[k].clone() + i.clone();
        }
        if l < b {
            d_in[l] = d_in[l].clone() - i.clone();
        }
    }
    Ok((dv, di, d_in))
}

/// Whether `sum_{k<l} E(U_k - U_l, I_kl) = sum_u E(U_u, I_u)` holds exactly for `sol`.
pub fn energy_identity_check<S: Scalar>(
    net: &Network<S>,
    sol: &KirchhoffSolution<S>,
    form: EnergyForm,
) -> Result<bool, CircuitError> {
    let (lhs, rhs) = match form {
        EnergyForm::Product | EnergyForm::Dissipation => {
            let f = |u: &S, i: &S| match form {
                EnergyForm::Product => u.clone() * i.clone(),
                _ => (u.clone() * i.conj()).re(),
            };
            let lhs = net.edges().iter().zip(&sol.currents).fold(S::zero(), |s, (e, i)| {
                let (k, l) = e.oriented();
                s + f(&(sol.voltages[k].clone() - sol.voltages[l].clone()), i)
            });
            let rhs = (0..net.b()).fold(S::zero(), |s, u| s + f(&sol.voltages[u], &sol.incoming[u]));
            (lhs, rhs)
        }
        EnergyForm::Sensitivity { edge } => {
            let (dv, di, d_in) = derivative_solution(net, sol, edge)?;
            let f = |u: &S, du: &S, i: &S, dii: &S| du.clone() * i.clone() - u.clone() * dii.clone();
            let lhs = net
                .edges()
                .iter()
                .enumerate()
                .fold(S::zero(), |s, (j, e)| {
                    let (k, l) = e.oriented();
                    let u = sol.voltages[k].clone() - sol.voltages[l].clone();
                    let du = dv[k].clone() - dv[l].clone();
                    s + f(&u, &du, &sol.currents[j], &di[j])
                });
            let rhs = (0..net.b()).fold(S::zero(), |s, u| {
                s + f(&sol.voltages[u], &dv[u], &sol.incoming[u], &d_in[u])
            });
            (lhs, rhs)
        }
    };
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{gauss, q, qi, Rational};
    use crate::algebra::{GaussianRational, RationalFunction};
    use crate::circuit::network::Edge;

    fn rnet(n: usize, b: usize, edges: &[(usize, usize, Rational)]) -> Network<Rational> {
        Network::new(n, b, edges.iter().map(|(u, v, c)| Edge::new(*u, *v, c.clone())).collect()).unwrap()
    }

    fn series() -> Network<Rational> {
        rnet(3, 2, &[(0, 2, qi(1)), (2, 1, qi(1))])
    }

    fn bridge<S: Scalar>(c1: S, c2: S, c3: S) -> Network<S> {
        // boundary 0, 1; interior 2, 3; bridge edge 2-3 is edge 4
        Network::new(
            4,
            2,
            vec![
                Edge::new(0, 2, c1.clone()),
                Edge::new(0, 3, c2.clone()),
                Edge::new(2, 1, c2),
                Edge::new(3, 1, c1),
                Edge::new(2, 3, c3),
            ],
        )
        .unwrap()
    }

    #[test]
    fn single_edge() {
        let net = rnet(2, 2, &[(0, 1, q(3, 2))]);
        let sol = solve(&net, &[qi(1), qi(0)]).unwrap();
        assert_eq!(sol.currents, vec![q(3, 2)]);
        assert_eq!(response(&net).unwrap(), vec![vec![q(3, 2), q(-3, 2)], vec![q(-3, 2), q(3, 2)]]);
        assert_eq!(sensitivity(&net, 0).unwrap()[0][0], qi(1));
    }

    #[test]
    fn series_chain() {
        let net = series();
        let sol = solve(&net, &[qi(1), qi(0)]).unwrap();
        assert_eq!(sol.voltages[2], q(1, 2));
        assert_eq!(sol.incoming, vec![q(1, 2), q(-1, 2)]);
        assert_eq!(conductance(&net).unwrap(), q(1, 2));
        assert_eq!(sensitivity(&net, 0).unwrap()[0][0], q(1, 4));
        assert_eq!(essential_edges(&net, None).unwrap().len(), 2);
    }

    #[test]
    fn parallel_and_gaussian() {
        let net = rnet(2, 2, &[(0, 1, qi(2)), (1, 0, qi(3))]);
        assert_eq!(conductance(&net).unwrap(), qi(5));
        let z = gauss(qi(1), qi(2));
        let g: Network<GaussianRational> = Network::new(2, 2, vec![Edge::new(0, 1, z.clone())]).unwrap();
        assert_eq!(conductance(&g).unwrap(), z);
    }

    #[test]
    fn star_and_triangle() {
        let star = rnet(4, 3, &[(3, 0, qi(1)), (3, 1, qi(1)), (3, 2, qi(1))]);
        let r = response(&star).unwrap();
        for u in 0..3 {
            for v in 0..3 {
                assert_eq!(r[u][v], if u == v { q(2, 3) } else { q(-1, 3) });
            }
        }
        let tri = rnet(3, 3, &[(0, 1, qi(1)), (1, 2, qi(2)), (2, 0, qi(3))]);
        let r = response(&tri).unwrap();
        assert_eq!(r[0], vec![qi(4), qi(-1), qi(-3)]);
        assert_eq!(r[1][2], qi(-2));
    }

    #[test]
    fn balanced_bridge() {
        let net = bridge(qi(1), qi(1), q(7, 3));
        let sol = solve(&net, &[qi(1), qi(0)]).unwrap();
        assert_eq!(sol.voltages[2], sol.voltages[3]);
        assert!(!essential_edges(&net, None).unwrap().contains(&4));
        assert!(sensitivity(&net, 4).unwrap().iter().flatten().all(|x| x == &qi(0)));
        // symbolic in c3
        let z = RationalFunction::z();
        let one = RationalFunction::constant(qi(1));
        let sym = bridge(one.clone(), one, z);
        assert_eq!(conductance(&sym).unwrap(), RationalFunction::constant(qi(1)));
    }

    #[test]
    fn pendant_edge_is_inessential() {
        let net = rnet(3, 2, &[(0, 1, qi(1)), (1, 2, qi(1))]);
        assert_eq!(essential_edges(&net, None).unwrap().into_iter().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn energy_forms() {
        let net = bridge(qi(1), qi(2), qi(3));
        let mut sol = solve(&net, &[qi(1), qi(0)]).unwrap();
        for form in [
            EnergyForm::Product,
            EnergyForm::Dissipation,
            EnergyForm::Sensitivity { edge: 4 },
            EnergyForm::Sensitivity { edge: 0 },
        ] {
            assert!(energy_identity_check(&net, &sol, form).unwrap());
        }
        let series_sol = solve(&series(), &[qi(1), qi(0)]).unwrap();
        let lhs: Rational = series_sol.incoming[0].clone();
        assert_eq!(lhs, q(1, 2));
        sol.currents[1] = sol.currents[1].clone() + qi(1);
        assert!(!energy_identity_check(&net, &sol, EnergyForm::Product).unwrap());
    }

    #[test]
    fn rejects_nonpositive_and_wrong_b() {
        let net = rnet(2, 2, &[(0, 1, qi(0))]);
        assert_eq!(solve(&net, &[qi(1), qi(0)]).unwrap_err(), CircuitError::NonPositiveConductance(0));
        let star = rnet(4, 3, &[(3, 0, qi(1)), (3, 1, qi(1)), (3, 2, qi(1))]);
        assert_eq!(conductance(&star).unwrap_err(), CircuitError::NotTwoTerminal(3));
    }
}

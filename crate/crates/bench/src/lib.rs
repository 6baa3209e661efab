//! Shared inputs for the benchmarks.

use rectcircuit::algebra::scalar::{gauss, q, qi};
use rectcircuit::algebra::{GaussianRational, Polynomial, Rational};
use rectcircuit::circuit::{Edge, Network};
use rectcircuit::synthesis::decide_square;
use rectcircuit::tiling::{tiling_for_verdict, Tiling};

/// `rows x cols` grid of unit conductances with terminals at opposite corners.
pub fn grid(rows: usize, cols: usize) -> Network<Rational> {
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    // terminals are the first two labels
    let far = id(rows - 1, cols - 1);
    let relabel = |v: usize| match v {
        v if v == far => 1,
        1 => far,
        v => v,
    };
    let edges = edges
        .into_iter()
        .map(|(u, v)| Edge::new(relabel(u), relabel(v), qi(1)))
        .collect();
    Network::new(rows * cols, 2, edges).expect("grid is connected")
}

/// The same grid with conductances `1 + i/k` cycling through a few values.
pub fn complex_grid(rows: usize, cols: usize) -> Network<GaussianRational> {
    let base = grid(rows, cols);
    let edges = base
        .edges()
        .iter()
        .enumerate()
        .map(|(k, e)| Edge::new(e.u, e.v, gauss(qi(1), q(1, (k % 5 + 1) as i64))))
        .collect();
    Network::new(base.n(), base.b(), edges).expect("same topology")
}

/// `z^2 - a z + b` with both roots positive and irrational.
pub fn quadratics() -> Vec<Polynomial> {
    let mut out = Vec::new();
    for a in 3..=9i64 {
        for b in 1..=6i64 {
            let disc = a * a - 4 * b;
            let square = (disc as f64).sqrt().round() as i64;
            if disc > 0 && square * square != disc {
                out.push(Polynomial::from_i64(&[b, -a, 1]));
            }
        }
    }
    out
}

/// The witness tiling of `z^2 - 4z + 2`.
pub fn six_tile_square() -> Tiling {
    let v = decide_square(&Polynomial::from_i64(&[2, -4, 1])).expect("squarefree");
    tiling_for_verdict(&v).expect("tileable")
}

//! Square tilings of orthogonal polygons: from a network realizing the side
//! data, and by copies of a square tiling for polygons with rational vertices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::linalg::Matrix;
use crate::algebra::{Polynomial, Rational};
use crate::circuit::{solve, CircuitError, Network};
use crate::synthesis::{decide_square, SynthesisError, TilingVerdict};
use crate::tiling::{
    chop_grid, network_to_tiling_at, tiling_for_verdict, validate, RatioLabel, Region, Tile,
    Tiling, TilingError,
};

use super::{coord, extract_sides, omega_check, Coord, OrthogonalPolygon, PolygonError, SideData};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SquaringError {
    #[error(transparent)]
    Tiling(#[from] TilingError),
    #[error(transparent)]
    Polygon(#[from] PolygonError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Synthesis(#[from] SynthesisError),
    #[error("the polygon is not generic")]
    Nongeneric,
    #[error("incoming current at side {side} is {got}, but the side has signed length {expected}")]
    CurrentMismatch { side: usize, expected: Coord, got: Coord },
    #[error("the network tiles a different region than the polygon")]
    RegionMismatch,
    #[error("tile {0} does not have a rational ratio")]
    IrrationalRatio(usize),
    #[error("vertex {0} is not rational")]
    IrrationalVertex(usize),
    #[error("a square cannot be tiled: {}", .0.reason().unwrap_or_default())]
    NotTileable(Box<TilingVerdict>),
    #[error("the y-coordinates of the sides are linearly dependent over Q")]
    DependentHeights,
}

/// Cuts every tile of rational ratio `p/q` into a `p x q` grid of squares.
pub fn chop_into_squares(t: &Tiling) -> Result<Tiling, SquaringError> {
    let mut tiles = Vec::new();
    for (i, s) in t.tiles.iter().enumerate() {
        let r = (s.w.clone() / s.h.clone())
            .as_rational()
            .ok_or(SquaringError::IrrationalRatio(i))?;
        let to_u64 = |v: &BigInt| u64::try_from(v).expect("grid size exceeds u64");
        tiles.extend(chop_grid(
            &s.x,
            &s.y,
            &s.w,
            &s.h,
            to_u64(r.numer()),
            to_u64(r.denom()),
            RatioLabel::Rational(Rational::one()),
        ));
    }
    Ok(Tiling {
        field: t.field.clone(),
        region: t.region.clone(),
        tiles,
    })
}

/// Tiles `p` by squares using a planar network with rational conductances whose
/// incoming currents at the side heights are the signed side lengths.
pub fn tile_polygon_from_network(
    p: &OrthogonalPolygon,
    net: &Network<Rational>,
) -> Result<Tiling, SquaringError> {
    let sides = extract_sides(p);
    if !sides.is_generic() {
        return Err(SquaringError::Nongeneric);
    }
    let net = net.map_conductances(|_, c| coord(c.clone()));
    let sol = solve(&net, &sides.u)?;
    for (side, (got, expected)) in sol.incoming.iter().zip(&sides.i).enumerate() {
        if got != expected {
            return Err(SquaringError::CurrentMismatch {
                side,
                expected: expected.clone(),
                got: got.clone(),
            });
        }
    }
    let t = network_to_tiling_at(&net, &sides.u, &p.min_x()?)?;
    if !t.region.polygon().same_cycle(p) {
        return Err(SquaringError::RegionMismatch);
    }
    let squares = chop_into_squares(&t)?;
    finish(squares.field, Region::Polygon(p.clone()), squares.tiles)
}

fn finish(
    field: Option<std::sync::Arc<crate::algebra::NumberField>>,
    region: Region,
    tiles: Vec<Tile>,
) -> Result<Tiling, SquaringError> {
    let t = Tiling { field, region, tiles };
    match validate(&t).violation {
        Some(v) => Err(TilingError::Invalid(v).into()),
        None => Ok(t),
    }
}

/// Tiles a polygon with rational vertices by rectangles of ratios `c` and
/// `1/c`: a grid of congruent squares, each filled with the square tiling
/// witnessing the positive verdict for `c`.
pub fn tile_rational_polygon_by_ratio(
    p: &OrthogonalPolygon,
    c_poly: &Polynomial,
) -> Result<Tiling, SquaringError> {
    let mut den = BigInt::one();
    for (i, (x, y)) in p.vertices().iter().enumerate() {
        let (Some(x), Some(y)) = (x.as_rational(), y.as_rational()) else {
            return Err(SquaringError::IrrationalVertex(i));
        };
        den = den.lcm(x.denom()).lcm(y.denom());
    }
    let verdict = decide_square(c_poly)?;
    if !verdict.tileable {
        return Err(SquaringError::NotTileable(Box::new(verdict)));
    }
    let base = tiling_for_verdict(&verdict)?;
    let side = Rational::new(BigInt::one(), den);
    let s = coord(side.clone());
    let (x0, y0, x1, y1) = p.bounding_box()?;
    let (x0, y0) = (x0.as_rational().expect("rational"), y0.as_rational().expect("rational"));
    let cols = ((x1.as_rational().expect("rational") - &x0) / &side).to_integer();
    let rows = ((y1.as_rational().expect("rational") - &y0) / &side).to_integer();
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let mut tiles = Vec::new();
    let mut j = BigInt::zero();
    while j < rows {
        let mut i = BigInt::zero();
        while i < cols {
            let cx = &x0 + &side * Rational::from_integer(i.clone());
            let cy = &y0 + &side * Rational::from_integer(j.clone());
            let centre = (
                coord(&cx + &side * &half),
                coord(&cy + &side * &half),
            );
            if p.contains_point(&centre)? {
                let (dx, dy) = (coord(cx), coord(cy));
                tiles.extend(base.tiles.iter().map(|t| Tile {
                    x: dx.clone() + s.clone() * t.x.clone(),
                    y: dy.clone() + s.clone() * t.y.clone(),
                    w: s.clone() * t.w.clone(),
                    h: s.clone() * t.h.clone(),
                    ratio: t.ratio.clone(),
                }));
            }
            i += 1;
        }
        j += 1;
    }
    finish(base.field, Region::Polygon(p.clone()), tiles)
}

/// Coordinates of an exact value in the power basis of its field, padded to `dim`.
fn coordinates(v: &Coord, dim: usize) -> Vec<Rational> {
    (0..dim).map(|i| v.repr().coeff(i)).collect()
}

/// Writes each `I_v` as `sum_u C_uv U_u` with rational `C`, when the heights
/// `U_u` are linearly independent over `Q`. `Ok(None)` when some `I_v` is not
/// a rational combination of the heights, so no rational `C` exists.
pub fn linear_decomposition(sides: &SideData) -> Result<Option<Matrix<Rational>>, SquaringError> {
    let b = sides.b();
    let dim = sides
        .u
        .iter()
        .chain(&sides.i)
        .filter_map(|v| v.field().map(|f| f.degree()))
        .max()
        .unwrap_or(1)
        .max(1);
    // augmented system [U | I], one row per basis coordinate
    let us: Vec<Vec<Rational>> = sides.u.iter().map(|u| coordinates(u, dim)).collect();
    let is: Vec<Vec<Rational>> = sides.i.iter().map(|i| coordinates(i, dim)).collect();
    let mut rows: Vec<Vec<Rational>> = (0..dim)
        .map(|r| {
            us.iter()
                .map(|u| u[r].clone())
                .chain(is.iter().map(|i| i[r].clone()))
                .collect()
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..b {
        let Some(p) = (pivot_row..dim).find(|&r| !rows[r][col].is_zero()) else {
            return Err(SquaringError::DependentHeights);
        };
        rows.swap(pivot_row, p);
        let inv = Rational::one() / rows[pivot_row][col].clone();
        for x in rows[pivot_row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..dim {
            if r != pivot_row && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for k in 0..2 * b {
                    let sub = &f * &rows[pivot_row][k];
                    rows[r][k] = &rows[r][k] - sub;
                }
            }
        }
        pivot_row += 1;
    }
    if rows[b..].iter().any(|row| row[b..].iter().any(|x| !x.is_zero())) {
        return Ok(None);
    }
    // C[u][v] is the coefficient of U_u in I_v
    Ok(Some(
        (0..b)
            .map(|u| (0..b).map(|v| rows[u][b + v].clone()).collect())
            .collect(),
    ))
}

/// Square-tileability of a generic polygon whose side heights are linearly
/// independent over `Q`: the decomposition matrix, when it exists, is the only
/// candidate and must lie in `Omega_b`.
pub fn decide_squaring_independent(p: &OrthogonalPolygon) -> Result<bool, SquaringError> {
    let sides = extract_sides(p);
    if !sides.is_generic() {
        return Err(SquaringError::Nongeneric);
    }
    Ok(match linear_decomposition(&sides)? {
        Some(c) => omega_check(&c).holds(),
        None => false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{q, qi};
    use crate::algebra::NumberField;
    use crate::circuit::{build_series_parallel, Edge, Embedding, SeriesParallel};
    use crate::polygon::OrthogonalPolygon;

    fn l_hexagon() -> OrthogonalPolygon {
        OrthogonalPolygon::from_i64(&[(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]).unwrap()
    }

    /// The network of the L-hexagon tiled by three unit squares.
    fn l_network() -> Network<Rational> {
        // vertices: 0 bottom side, 1 the cut y = 1, 2 top side
        let one = qi(1);
        let edges = vec![
            Edge::new(1, 0, one.clone()),
            Edge::new(1, 0, one.clone()),
            Edge::new(2, 1, one),
        ];
        let emb = Embedding {
            rotation: vec![vec![1, 0], vec![2, 0, 1], vec![2]],
        };
        Network::new(3, 3, edges).unwrap().with_embedding(emb).unwrap()
    }

    #[test]
    fn unit_square_from_single_edge() {
        let sq = OrthogonalPolygon::from_i64(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap();
        let net = build_series_parallel(&SeriesParallel::leaf(qi(1)));
        // vertex 0 must be the bottom side here, and a single edge is symmetric
        let t = tile_polygon_from_network(&sq, &net).unwrap();
        assert_eq!(t.tiles.len(), 1);
    }

    #[test]
    fn l_hexagon_from_network() {
        let t = tile_polygon_from_network(&l_hexagon(), &l_network()).unwrap();
        assert_eq!(t.tiles.len(), 3);
        assert!(validate(&t).is_valid());
    }

    #[test]
    fn one_by_two_from_series() {
        let p = OrthogonalPolygon::from_i64(&[(0, 0), (1, 0), (1, 2), (0, 2)]).unwrap();
        let sp = SeriesParallel::series(SeriesParallel::leaf(qi(1)), SeriesParallel::leaf(qi(1)));
        let t = tile_polygon_from_network(&p, &build_series_parallel(&sp)).unwrap();
        assert_eq!(t.tiles.len(), 2);
        // one edge of conductance 1/2 gives one 1x2 tile, chopped into 2 squares
        let net = build_series_parallel(&SeriesParallel::leaf(q(1, 2)));
        let t = tile_polygon_from_network(&p, &net).unwrap();
        assert_eq!(t.tiles.len(), 2);
        assert!(t.tiles.iter().all(|s| s.w == s.h));
    }

    #[test]
    fn current_mismatch_names_the_side() {
        let p = OrthogonalPolygon::from_i64(&[(0, 0), (1, 0), (1, 2), (0, 2)]).unwrap();
        let net = build_series_parallel(&SeriesParallel::leaf(qi(1)));
        assert!(matches!(
            tile_polygon_from_network(&p, &net),
            Err(SquaringError::CurrentMismatch { side: 0, .. })
        ));
    }

    #[test]
    fn ratio_tilings_of_rational_polygons() {
        let p = Polynomial::from_i64(&[2, -4, 1]);
        let sq = OrthogonalPolygon::from_i64(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap();
        assert_eq!(tile_rational_polygon_by_ratio(&sq, &p).unwrap().tiles.len(), 6);
        let rect = OrthogonalPolygon::from_i64(&[(0, 0), (1, 0), (1, 2), (0, 2)]).unwrap();
        assert_eq!(tile_rational_polygon_by_ratio(&rect, &p).unwrap().tiles.len(), 12);
        let t = tile_rational_polygon_by_ratio(&l_hexagon(), &p).unwrap();
        assert_eq!(t.tiles.len(), 18);
        assert_eq!(t.label_counts(), (12, 6, 0));
        let half = OrthogonalPolygon::from_rationals(&[
            (qi(0), qi(0)),
            (q(1, 2), qi(0)),
            (q(1, 2), qi(1)),
            (qi(0), qi(1)),
        ])
        .unwrap();
        assert_eq!(tile_rational_polygon_by_ratio(&half, &p).unwrap().tiles.len(), 12);
        assert!(matches!(
            tile_rational_polygon_by_ratio(&sq, &Polynomial::from_i64(&[-1, -1, 1])),
            Err(SquaringError::NotTileable(_))
        ));
    }

    #[test]
    fn decomposition_over_independent_heights() {
        let f = NumberField::at_largest_positive_root(Polynomial::from_i64(&[-2, 0, 1])).unwrap();
        let r2 = f.generator();
        let one = coord(qi(1));
        // a 1 x sqrt2 rectangle shifted up by 1: heights 1 and 1 + sqrt2
        let rect = OrthogonalPolygon::rectangle(coord(qi(0)), one.clone(), one.clone(), r2.clone()).unwrap();
        let c = linear_decomposition(&extract_sides(&rect)).unwrap().unwrap();
        assert_eq!(c, vec![vec![qi(-1), qi(1)], vec![qi(0), qi(0)]]);
        assert!(!decide_squaring_independent(&rect).unwrap());
        // the square [0, sqrt2 - 1] x [1, sqrt2]
        let side = r2.clone() - one.clone();
        let sq = OrthogonalPolygon::rectangle(coord(qi(0)), one, side.clone(), side).unwrap();
        let c = linear_decomposition(&extract_sides(&sq)).unwrap().unwrap();
        assert_eq!(c, vec![vec![qi(1), qi(-1)], vec![qi(-1), qi(1)]]);
        assert!(decide_squaring_independent(&sq).unwrap());
        // heights 0 and 1 are dependent
        let sq = OrthogonalPolygon::from_i64(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap();
        assert_eq!(
            linear_decomposition(&extract_sides(&sq)).unwrap_err(),
            SquaringError::DependentHeights
        );
    }
}

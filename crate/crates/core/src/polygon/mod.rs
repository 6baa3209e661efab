//! Orthogonal polygons with exact coordinates, their horizontal side data,
//! circular-minor checks and square tilings.

mod omega;
mod squares;

pub use omega::{omega_check, OmegaReport, OmegaViolation};
pub use squares::{
    chop_into_squares, decide_squaring_independent, linear_decomposition, tile_polygon_from_network,
    tile_rational_polygon_by_ratio, SquaringError,
};

use std::cmp::Ordering;

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{NumberFieldElement, Rational};

/// Exact coordinate; rational coordinates are elements without a field.
pub type Coord = NumberFieldElement;
pub type Point = (Coord, Coord);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolygonError {
    #[error("an orthogonal polygon needs an even number of at least 4 vertices, got {0}")]
    VertexCount(usize),
    #[error("edge {0} is not axis-parallel or has zero length")]
    BadEdge(usize),
    #[error("edges {0} and {1} are consecutive and parallel")]
    NotAlternating(usize, usize),
    #[error("edges {0} and {1} intersect")]
    SelfIntersecting(usize, usize),
    #[error("vertices are listed clockwise")]
    Clockwise,
    #[error("a coordinate comparison needs a real embedding of the number field")]
    Undecidable,
    #[error("side data lists {0} y-coordinates but {1} signed lengths")]
    LengthMismatch(usize, usize),
    #[error("signed lengths sum to {0}, so the boundary does not close")]
    OpenBoundary(Coord),
}

/// Exact comparison in the designated real embedding.
pub fn cmp_coord(a: &Coord, b: &Coord) -> Result<Ordering, PolygonError> {
    if let (Some(x), Some(y)) = (a.as_rational(), b.as_rational()) {
        return Ok(x.cmp(&y));
    }
    if a == b {
        return Ok(Ordering::Equal);
    }
    a.cmp_real(b).ok_or(PolygonError::Undecidable)
}

pub(crate) fn coord(r: Rational) -> Coord {
    NumberFieldElement::rational(r)
}

fn lt(a: &Coord, b: &Coord) -> Result<bool, PolygonError> {
    Ok(cmp_coord(a, b)? == Ordering::Less)
}

fn le(a: &Coord, b: &Coord) -> Result<bool, PolygonError> {
    Ok(cmp_coord(a, b)? != Ordering::Greater)
}

fn min_max(a: &Coord, b: &Coord) -> Result<(Coord, Coord), PolygonError> {
    if le(a, b)? {
        Ok((a.clone(), b.clone()))
    } else {
        Ok((b.clone(), a.clone()))
    }
}

/// Simple polygon with axis-parallel sides, vertices counterclockwise.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthogonalPolygon {
    vertices: Vec<Point>,
}

impl OrthogonalPolygon {
    /// Validates orthogonality, alternation, simplicity and orientation.
    pub fn new(vertices: Vec<Point>) -> Result<Self, PolygonError> {
        let n = vertices.len();
        if n < 4 || n % 2 == 1 {
            return Err(PolygonError::VertexCount(n));
        }
        let poly = OrthogonalPolygon { vertices };
        let mut horizontal = Vec::with_capacity(n);
        for i in 0..n {
            let (a, b) = poly.edge(i);
            let h = a.1 == b.1 && a.0 != b.0;
            let v = a.0 == b.0 && a.1 != b.1;
            if !h && !v {
                return Err(PolygonError::BadEdge(i));
            }
            horizontal.push(h);
        }
        for i in 0..n {
            if horizontal[i] == horizontal[(i + 1) % n] {
                return Err(PolygonError::NotAlternating(i, (i + 1) % n));
            }
        }
        for i in 0..n {
            for j in i + 2..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                if poly.edges_meet(i, j)? {
                    return Err(PolygonError::SelfIntersecting(i, j));
                }
            }
        }
        if poly.area().sign() != Some(Ordering::Greater) {
            return match poly.area().sign() {
                None => Err(PolygonError::Undecidable),
                _ => Err(PolygonError::Clockwise),
            };
        }
        Ok(poly)
    }

    pub fn from_rationals(points: &[(Rational, Rational)]) -> Result<Self, PolygonError> {
        Self::new(
            points
                .iter()
                .map(|(x, y)| (coord(x.clone()), coord(y.clone())))
                .collect(),
        )
    }

    pub fn from_i64(points: &[(i64, i64)]) -> Result<Self, PolygonError> {
        Self::new(
            points
                .iter()
                .map(|&(x, y)| (coord(Rational::from_integer(x.into())), coord(Rational::from_integer(y.into()))))
                .collect(),
        )
    }

    /// `[x, x + w] x [y, y + h]`, listed from the lower-left corner.
    pub fn rectangle(x: Coord, y: Coord, w: Coord, h: Coord) -> Result<Self, PolygonError> {
        let x1 = x.clone() + w;
        let y1 = y.clone() + h;
        Self::new(vec![
            (x.clone(), y.clone()),
            (x1.clone(), y),
            (x1, y1.clone()),
            (x, y1),
        ])
    }

    pub(crate) fn from_vertices_unchecked(vertices: Vec<Point>) -> Self {
        OrthogonalPolygon { vertices }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edge `i` runs from vertex `i` to vertex `i + 1`.
    pub fn edge(&self, i: usize) -> (&Point, &Point) {
        let n = self.vertices.len();
        (&self.vertices[i], &self.vertices[(i + 1) % n])
    }

    pub fn is_horizontal(&self, i: usize) -> bool {
        let (a, b) = self.edge(i);
        a.1 == b.1
    }

    fn edges_meet(&self, i: usize, j: usize) -> Result<bool, PolygonError> {
        let (a, b) = self.edge(i);
        let (c, d) = self.edge(j);
        let (ax0, ax1) = min_max(&a.0, &b.0)?;
        let (ay0, ay1) = min_max(&a.1, &b.1)?;
        let (cx0, cx1) = min_max(&c.0, &d.0)?;
        let (cy0, cy1) = min_max(&c.1, &d.1)?;
        Ok(le(&ax0, &cx1)? && le(&cx0, &ax1)? && le(&ay0, &cy1)? && le(&cy0, &ay1)?)
    }

    /// Shoelace area; positive for counterclockwise order.
    pub fn area(&self) -> Coord {
        let n = self.vertices.len();
        let mut acc = Coord::zero();
        for i in 0..n {
            let (a, b) = self.edge(i);
            acc = acc + (a.0.clone() * b.1.clone() - b.0.clone() * a.1.clone());
        }
        acc / coord(Rational::from_integer(2.into()))
    }

    pub fn min_x(&self) -> Result<Coord, PolygonError> {
        let mut m = self.vertices[0].0.clone();
        for p in &self.vertices[1..] {
            if lt(&p.0, &m)? {
                m = p.0.clone();
            }
        }
        Ok(m)
    }

    /// `(min_x, min_y, max_x, max_y)`.
    pub fn bounding_box(&self) -> Result<(Coord, Coord, Coord, Coord), PolygonError> {
        let (mut x0, mut y0) = self.vertices[0].clone();
        let (mut x1, mut y1) = self.vertices[0].clone();
        for (x, y) in &self.vertices[1..] {
            if lt(x, &x0)? {
                x0 = x.clone();
            }
            if lt(&x1, x)? {
                x1 = x.clone();
            }
            if lt(y, &y0)? {
                y0 = y.clone();
            }
            if lt(&y1, y)? {
                y1 = y.clone();
            }
        }
        Ok((x0, y0, x1, y1))
    }

    /// Whether a point not on the boundary lies inside (ray cast to the right).
    pub fn contains_point(&self, p: &Point) -> Result<bool, PolygonError> {
        let mut inside = false;
        for i in 0..self.vertices.len() {
            if self.is_horizontal(i) {
                continue;
            }
            let (a, b) = self.edge(i);
            let (y0, y1) = min_max(&a.1, &b.1)?;
            // half-open in y so that a ray through a vertex counts once
            if lt(&p.0, &a.0)? && le(&y0, &p.1)? && lt(&p.1, &y1)? {
                inside = !inside;
            }
        }
        Ok(inside)
    }

    /// Whether some boundary edge meets the open rectangle `(x0, x1) x (y0, y1)`.
    pub fn crosses_open_rect(
        &self,
        x0: &Coord,
        x1: &Coord,
        y0: &Coord,
        y1: &Coord,
    ) -> Result<bool, PolygonError> {
        for i in 0..self.vertices.len() {
            let (a, b) = self.edge(i);
            if self.is_horizontal(i) {
                let (ex0, ex1) = min_max(&a.0, &b.0)?;
                if lt(y0, &a.1)? && lt(&a.1, y1)? && lt(&ex0, x1)? && lt(x0, &ex1)? {
                    return Ok(true);
                }
            } else {
                let (ey0, ey1) = min_max(&a.1, &b.1)?;
                if lt(x0, &a.0)? && lt(&a.0, x1)? && lt(&ey0, y1)? && lt(y0, &ey1)? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// Same polygon moved by `(dx, dy)`.
    pub fn translate(&self, dx: &Coord, dy: &Coord) -> Self {
        OrthogonalPolygon {
            vertices: self
                .vertices
                .iter()
                .map(|(x, y)| (x.clone() + dx.clone(), y.clone() + dy.clone()))
                .collect(),
        }
    }

    /// The vertex list rotated to start at the first horizontal edge.
    fn horizontal_start(&self) -> usize {
        if self.is_horizontal(0) {
            0
        } else {
            1
        }
    }

    /// Equality of the point cycles, ignoring the starting vertex.
    pub fn same_cycle(&self, other: &Self) -> bool {
        let n = self.len();
        n == other.len()
            && (0..n).any(|s| (0..n).all(|i| self.vertices[(s + i) % n] == other.vertices[i]))
    }
}

/// `U_u` and `I_u` for the horizontal sides in counterclockwise order.
#[derive(Clone, Debug, PartialEq)]
pub struct SideData {
    /// y-coordinates.
    pub u: Vec<Coord>,
    /// Signed lengths: positive when the polygon lies locally below the side.
    pub i: Vec<Coord>,
}

impl SideData {
    pub fn b(&self) -> usize {
        self.u.len()
    }

    pub fn is_generic(&self) -> bool {
        (0..self.u.len()).all(|a| (a + 1..self.u.len()).all(|b| self.u[a] != self.u[b]))
    }

    /// `sum_u I_u U_u`, the area of the polygon.
    pub fn energy(&self) -> Coord {
        self.u
            .iter()
            .zip(&self.i)
            .fold(Coord::zero(), |s, (u, i)| s + u.clone() * i.clone())
    }
}

/// Horizontal sides counterclockwise, starting at the first horizontal edge of
/// the vertex list.
pub fn extract_sides(p: &OrthogonalPolygon) -> SideData {
    let n = p.len();
    let start = p.horizontal_start();
    let mut u = Vec::with_capacity(n / 2);
    let mut i = Vec::with_capacity(n / 2);
    for k in (0..n).step_by(2) {
        let (a, b) = p.edge((start + k) % n);
        u.push(a.1.clone());
        i.push(a.0.clone() - b.0.clone());
    }
    SideData { u, i }
}

pub fn is_generic(p: &OrthogonalPolygon) -> bool {
    extract_sides(p).is_generic()
}

/// The polygon whose horizontal sides are `sides`, with side 0 starting at `x = 0`.
pub fn polygon_from_sides(sides: &SideData) -> Result<OrthogonalPolygon, PolygonError> {
    if sides.u.len() != sides.i.len() {
        return Err(PolygonError::LengthMismatch(sides.u.len(), sides.i.len()));
    }
    let total = sides.i.iter().fold(Coord::zero(), |s, i| s + i.clone());
    if !total.is_zero() {
        return Err(PolygonError::OpenBoundary(total));
    }
    let mut x = Coord::zero();
    let mut vertices = Vec::with_capacity(2 * sides.b());
    for (u, i) in sides.u.iter().zip(&sides.i) {
        vertices.push((x.clone(), u.clone()));
        x = x - i.clone();
        vertices.push((x.clone(), u.clone()));
    }
    OrthogonalPolygon::new(vertices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{q, qi};
    use crate::algebra::{NumberField, Polynomial};

    fn c(n: i64) -> Coord {
        coord(qi(n))
    }

    fn l_hexagon() -> OrthogonalPolygon {
        OrthogonalPolygon::from_i64(&[(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn unit_square_sides() {
        let sq = OrthogonalPolygon::from_i64(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap();
        let s = extract_sides(&sq);
        assert_eq!(s.u, vec![c(0), c(1)]);
        assert_eq!(s.i, vec![c(-1), c(1)]);
        assert!(s.is_generic());
        assert_eq!(s.energy(), sq.area());
    }

    #[test]
    fn l_hexagon_sides() {
        let l = l_hexagon();
        let s = extract_sides(&l);
        assert_eq!(s.u, vec![c(0), c(1), c(2)]);
        assert_eq!(s.i, vec![c(-2), c(1), c(1)]);
        assert_eq!(l.area(), c(3));
        assert_eq!(s.energy(), c(3));
        assert!(is_generic(&l));
    }

    #[test]
    fn starts_at_first_horizontal_edge() {
        let sq = OrthogonalPolygon::from_i64(&[(1, 0), (1, 1), (0, 1), (0, 0)]).unwrap();
        let s = extract_sides(&sq);
        assert_eq!(s.u, vec![c(1), c(0)]);
        assert_eq!(s.i, vec![c(1), c(-1)]);
    }

    #[test]
    fn nongeneric_example_round_trips() {
        let f = NumberField::with_default_root(Polynomial::from_i64(&[-2, 0, 1])).unwrap();
        let r2 = f.generator();
        let sides = SideData {
            u: vec![c(0), c(2), c(0), c(-4)],
            i: vec![r2.clone(), c(2), c(2) - r2, c(-4)],
        };
        let p = polygon_from_sides(&sides).unwrap();
        assert_eq!(extract_sides(&p), sides);
        assert!(!is_generic(&p));
        assert_eq!(p.area(), c(20));
    }

    #[test]
    fn rejects_bad_polygons() {
        assert_eq!(
            OrthogonalPolygon::from_i64(&[(0, 0), (1, 0), (1, 1)]).unwrap_err(),
            PolygonError::VertexCount(3)
        );
        assert_eq!(
            OrthogonalPolygon::from_i64(&[(0, 0), (0, 1), (1, 1), (1, 0)]).unwrap_err(),
            PolygonError::Clockwise
        );
        assert_eq!(
            OrthogonalPolygon::from_i64(&[(0, 0), (1, 1), (1, 2), (0, 2)]).unwrap_err(),
            PolygonError::BadEdge(0)
        );
        // a bow tie made of two squares touching at a corner
        assert!(matches!(
            OrthogonalPolygon::from_i64(&[
                (0, 0),
                (1, 0),
                (1, 2),
                (2, 2),
                (2, 1),
                (0, 1)
            ]),
            Err(PolygonError::SelfIntersecting(..))
        ));
        assert!(matches!(
            polygon_from_sides(&SideData {
                u: vec![c(0), c(1)],
                i: vec![c(-1), c(2)]
            }),
            Err(PolygonError::OpenBoundary(_))
        ));
    }

    #[test]
    fn containment_queries() {
        let l = l_hexagon();
        let half = coord(q(1, 2));
        let three_half = coord(q(3, 2));
        assert!(l.contains_point(&(half.clone(), three_half.clone())).unwrap());
        assert!(!l.contains_point(&(three_half.clone(), three_half.clone())).unwrap());
        assert!(l.contains_point(&(three_half.clone(), half.clone())).unwrap());
        assert!(!l.crosses_open_rect(&c(0), &c(1), &c(0), &c(2)).unwrap());
        assert!(l.crosses_open_rect(&c(0), &c(2), &c(0), &c(2)).unwrap());
        assert_eq!(l.bounding_box().unwrap(), (c(0), c(0), c(2), c(2)));
        assert_eq!(l.min_x().unwrap(), c(0));
    }
}

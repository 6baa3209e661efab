//! Tilings by axis-parallel rectangles with exact coordinates, their exact
//! validation, and both directions of the tiling/network correspondence.

mod correspondence;
mod cut;

pub use correspondence::{network_to_tiling, network_to_tiling_at, tiling_to_network, TilingNetwork};
pub use cut::{cfrac_to_tiling, chop_grid, tiling_for_verdict, Target};

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::scalar::format_rational;
use crate::algebra::{AlgebraError, NumberField, Rational};
use crate::circuit::CircuitError;
use crate::polygon::{cmp_coord, coord, Coord, OrthogonalPolygon, PolygonError};

/// Declared ratio (width / height) of a tile.
#[derive(Clone, Debug, PartialEq)]
pub enum RatioLabel {
    /// The designated generator `c` of the field.
    C,
    /// `1/c`.
    InvC,
    Rational(Rational),
    /// Any other exact value.
    Value(Coord),
}

impl RatioLabel {
    /// Classifies an exact ratio against the generator `c`.
    pub fn classify(ratio: &Coord, field: Option<&Arc<NumberField>>) -> Self {
        if let Some(r) = ratio.as_rational() {
            return RatioLabel::Rational(r);
        }
        if let Some(f) = field {
            let c = f.generator();
            if ratio == &c {
                return RatioLabel::C;
            }
            if &(ratio.clone() * c) == &Coord::rational(Rational::from_integer(1.into())) {
                return RatioLabel::InvC;
            }
        }
        RatioLabel::Value(ratio.clone())
    }
}

impl fmt::Display for RatioLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RatioLabel::C => f.write_str("c"),
            RatioLabel::InvC => f.write_str("1/c"),
            RatioLabel::Rational(r) => f.write_str(&format_rational(r)),
            RatioLabel::Value(v) => write!(f, "{v}"),
        }
    }
}

/// `[x, x + w] x [y, y + h]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tile {
    pub x: Coord,
    pub y: Coord,
    pub w: Coord,
    pub h: Coord,
    pub ratio: RatioLabel,
}

impl Tile {
    pub fn x1(&self) -> Coord {
        self.x.clone() + self.w.clone()
    }

    pub fn y1(&self) -> Coord {
        self.y.clone() + self.h.clone()
    }

    pub fn area(&self) -> Coord {
        self.w.clone() * self.h.clone()
    }

    pub fn translate(&self, dx: &Coord, dy: &Coord) -> Tile {
        Tile {
            x: self.x.clone() + dx.clone(),
            y: self.y.clone() + dy.clone(),
            ..self.clone()
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Region {
    Rectangle { x: Coord, y: Coord, w: Coord, h: Coord },
    Polygon(OrthogonalPolygon),
}

impl Region {
    pub fn rectangle(w: Coord, h: Coord) -> Region {
        Region::Rectangle {
            x: Coord::zero(),
            y: Coord::zero(),
            w,
            h,
        }
    }

    /// The boundary as a polygon, starting at the lower-left corner for rectangles.
    pub fn polygon(&self) -> OrthogonalPolygon {
        match self {
            Region::Polygon(p) => p.clone(),
            Region::Rectangle { x, y, w, h } => {
                let x1 = x.clone() + w.clone();
                let y1 = y.clone() + h.clone();
                OrthogonalPolygon::from_vertices_unchecked(vec![
                    (x.clone(), y.clone()),
                    (x1.clone(), y.clone()),
                    (x1, y1.clone()),
                    (x.clone(), y1),
                ])
            }
        }
    }

    pub fn area(&self) -> Coord {
        match self {
            Region::Rectangle { w, h, .. } => w.clone() * h.clone(),
            Region::Polygon(p) => p.area(),
        }
    }

    /// Width over height, for rectangles.
    pub fn ratio(&self) -> Option<Coord> {
        match self {
            Region::Rectangle { w, h, .. } => Some(w.clone() / h.clone()),
            Region::Polygon(_) => None,
        }
    }

    pub fn translate(&self, dx: &Coord, dy: &Coord) -> Region {
        match self {
            Region::Rectangle { x, y, w, h } => Region::Rectangle {
                x: x.clone() + dx.clone(),
                y: y.clone() + dy.clone(),
                w: w.clone(),
                h: h.clone(),
            },
            Region::Polygon(p) => Region::Polygon(p.translate(dx, dy)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Tiling {
    /// `Q(c)` with its designated real embedding; `None` for rational tilings.
    pub field: Option<Arc<NumberField>>,
    pub region: Region,
    pub tiles: Vec<Tile>,
}

impl Tiling {
    pub fn translate(&self, dx: &Coord, dy: &Coord) -> Tiling {
        Tiling {
            field: self.field.clone(),
            region: self.region.translate(dx, dy),
            tiles: self.tiles.iter().map(|t| t.translate(dx, dy)).collect(),
        }
    }

    /// Equality up to tile order and a horizontal translation.
    pub fn congruent_by_horizontal_shift(&self, other: &Tiling) -> bool {
        if self.tiles.len() != other.tiles.len() {
            return false;
        }
        let (Ok(a), Ok(b)) = (self.region.polygon().min_x(), other.region.polygon().min_x()) else {
            return false;
        };
        let moved = other.translate(&(a - b), &Coord::zero());
        let mut used = vec![false; self.tiles.len()];
        for t in &self.tiles {
            let hit = moved.tiles.iter().enumerate().find(|(j, s)| {
                !used[*j] && s.x == t.x && s.y == t.y && s.w == t.w && s.h == t.h
            });
            match hit {
                Some((j, _)) => used[j] = true,
                None => return false,
            }
        }
        self.region.polygon().same_cycle(&moved.region.polygon())
    }

    /// Tiles per ratio label, as `(c, 1/c, other)` counts.
    pub fn label_counts(&self) -> (usize, usize, usize) {
        let mut counts = (0, 0, 0);
        for t in &self.tiles {
            match t.ratio {
                RatioLabel::C => counts.0 += 1,
                RatioLabel::InvC => counts.1 += 1,
                _ => counts.2 += 1,
            }
        }
        counts
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TilingError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Polygon(#[from] PolygonError),
    #[error("continued fraction coefficient d_{0} is not positive")]
    NonPositiveCoefficient(usize),
    #[error("certificate mismatch: the continued fraction does not reach the target in Q[x]/(p)")]
    CertificateMismatch,
    #[error("a ratio-c rectangle tiling must use at least one tile of ratio 1/c")]
    NoInverseTile,
    #[error("the region is not generic: horizontal sides {0} and {1} share a y-coordinate")]
    NongenericRegion(usize, usize),
    #[error("the network has no planar embedding")]
    MissingEmbedding,
    #[error("the network needs at least 2 boundary vertices to carry current")]
    TooFewBoundaryVertices,
    #[error("edge {0} joins vertices of equal voltage")]
    DegenerateEdge(usize),
    #[error("edge {0} has a non-positive width in the real embedding")]
    NegativeWidth(usize),
    #[error("face potentials are inconsistent around edge {0}; the embedding is not planar")]
    InconsistentFaces(usize),
    #[error("boundary arc {0} borders no tile")]
    DetachedArc(usize),
    #[error("tiling is invalid: {0}")]
    Invalid(Violation),
    #[error("tile {0} does not lie on the horizontal cuts of the tiling")]
    LooseTile(usize),
}

/// First violated predicate found by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A coordinate has no real embedding to compare in.
    Undecidable,
    DegenerateRegion,
    Degenerate { tile: usize },
    RatioMismatch { tile: usize },
    OutsideRegion { tile: usize },
    Overlap { first: usize, second: usize },
    AreaMismatch { tiles: Coord, region: Coord },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Undecidable => f.write_str("coordinates cannot be compared without a real embedding"),
            Violation::DegenerateRegion => f.write_str("region has non-positive area"),
            Violation::Degenerate { tile } => write!(f, "tile {tile} has non-positive width or height"),
            Violation::RatioMismatch { tile } => write!(f, "tile {tile} does not have its declared ratio"),
            Violation::OutsideRegion { tile } => write!(f, "tile {tile} is not contained in the region"),
            Violation::Overlap { first, second } => write!(f, "tiles {first} and {second} overlap"),
            Violation::AreaMismatch { tiles, region } => {
                write!(f, "tile areas sum to {tiles} but the region has area {region}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Validation {
    pub violation: Option<Violation>,
    pub tile_area: Coord,
    pub region_area: Coord,
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        self.violation.is_none()
    }
}

fn lt(a: &Coord, b: &Coord) -> bool {
    cmp_coord(a, b) == Ok(Ordering::Less)
}

fn le(a: &Coord, b: &Coord) -> bool {
    matches!(cmp_coord(a, b), Ok(Ordering::Less | Ordering::Equal))
}

fn decidable(t: &Tiling) -> bool {
    let ok = |c: &Coord| c.as_rational().is_some() || c.field().is_some_and(|f| f.root().is_some());
    t.tiles.iter().all(|s| ok(&s.x) && ok(&s.y) && ok(&s.w) && ok(&s.h))
        && t.region.polygon().vertices().iter().all(|(x, y)| ok(x) && ok(y))
}

fn ratio_holds(t: &Tile, field: Option<&Arc<NumberField>>) -> bool {
    let value = match &t.ratio {
        RatioLabel::C => match field {
            Some(f) => f.generator(),
            None => return false,
        },
        RatioLabel::InvC => match field {
            Some(f) => return t.h == f.generator() * t.w.clone(),
            None => return false,
        },
        RatioLabel::Rational(r) => coord(r.clone()),
        RatioLabel::Value(v) => v.clone(),
    };
    t.w == value * t.h.clone()
}

/// Exact check that the tiles are nondegenerate rectangles with their declared
/// ratios, inside the region, pairwise interior-disjoint, with total area equal
/// to the region's. Together these imply that the tiles cover the region.
pub fn validate(t: &Tiling) -> Validation {
    let tile_area = t.tiles.iter().fold(Coord::zero(), |s, x| s + x.area());
    let region_area = t.region.area();
    let violation = first_violation(t, &tile_area, &region_area);
    Validation {
        violation,
        tile_area,
        region_area,
    }
}

fn first_violation(t: &Tiling, tile_area: &Coord, region_area: &Coord) -> Option<Violation> {
    if !decidable(t) {
        return Some(Violation::Undecidable);
    }
    let zero = Coord::zero();
    if !lt(&zero, region_area) {
        return Some(Violation::DegenerateRegion);
    }
    for (i, s) in t.tiles.iter().enumerate() {
        if !lt(&zero, &s.w) || !lt(&zero, &s.h) {
            return Some(Violation::Degenerate { tile: i });
        }
        if !ratio_holds(s, t.field.as_ref()) {
            return Some(Violation::RatioMismatch { tile: i });
        }
        if !inside(&t.region, s) {
            return Some(Violation::OutsideRegion { tile: i });
        }
    }
    if let Some((first, second)) = find_overlap(&t.tiles) {
        return Some(Violation::Overlap { first, second });
    }
    if tile_area != region_area {
        return Some(Violation::AreaMismatch {
            tiles: tile_area.clone(),
            region: region_area.clone(),
        });
    }
    None
}

fn inside(region: &Region, s: &Tile) -> bool {
    match region {
        Region::Rectangle { x, y, w, h } => {
            le(x, &s.x)
                && le(y, &s.y)
                && le(&s.x1(), &(x.clone() + w.clone()))
                && le(&s.y1(), &(y.clone() + h.clone()))
        }
        Region::Polygon(p) => {
            let two = coord(Rational::from_integer(2.into()));
            let centre = (
                s.x.clone() + s.w.clone() / two.clone(),
                s.y.clone() + s.h.clone() / two,
            );
            p.contains_point(&centre) == Ok(true)
                && p.crosses_open_rect(&s.x, &s.x1(), &s.y, &s.y1()) == Ok(false)
        }
    }
}

/// Integer ranks of `values` under the exact order; equal values share a rank.
fn ranks(values: &[Coord]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| cmp_coord(&values[a], &values[b]).unwrap_or(Ordering::Equal));
    let mut out = vec![0; values.len()];
    let mut rank = 0;
    for k in 1..order.len() {
        if values[order[k]] != values[order[k - 1]] {
            rank += 1;
        }
        out[order[k]] = rank;
    }
    out
}

/// Sweep in order of left edges over ranked coordinates; only tiles starting
/// before the current tile ends can meet it.
fn find_overlap(tiles: &[Tile]) -> Option<(usize, usize)> {
    let n = tiles.len();
    let xs: Vec<Coord> = tiles.iter().map(|t| t.x.clone()).chain(tiles.iter().map(Tile::x1)).collect();
    let ys: Vec<Coord> = tiles.iter().map(|t| t.y.clone()).chain(tiles.iter().map(Tile::y1)).collect();
    let (rx, ry) = (ranks(&xs), ranks(&ys));
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (rx[i], ry[i]));
    for (k, &i) in order.iter().enumerate() {
        for &j in &order[k + 1..] {
            if rx[j] >= rx[n + i] {
                break;
            }
            if ry[j] < ry[n + i] && ry[i] < ry[n + j] {
                return Some((i.min(j), i.max(j)));
            }
        }
    }
    None
}

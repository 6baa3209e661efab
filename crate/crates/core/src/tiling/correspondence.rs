//! Tilings as planar networks: one vertex per maximal horizontal cut, one edge
//! per tile. The way back assigns potentials to the faces of the embedded
//! network and reads off each tile from its two faces and two endpoints.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::NumberField;
use crate::circuit::{solve, Edge, Embedding, Network};
use crate::polygon::{cmp_coord, extract_sides, Coord, OrthogonalPolygon};

use super::{validate, RatioLabel, Region, Tile, Tiling, TilingError};

/// A tiling's network with the boundary data of its region.
#[derive(Clone, Debug, PartialEq)]
pub struct TilingNetwork {
    /// Edge `i` is tile `i`, joining its top cut to its bottom cut.
    pub network: Network<Coord>,
    /// `U_u`: y-coordinates of the horizontal sides.
    pub voltages: Vec<Coord>,
    /// `I_u`: signed lengths of the horizontal sides.
    pub currents: Vec<Coord>,
    /// y-coordinate of every vertex's cut.
    pub heights: Vec<Coord>,
}

struct Cut {
    level: usize,
    lo: Coord,
    hi: Coord,
    /// Tiles whose bottom edge lies on the cut.
    upper: Vec<usize>,
    /// Tiles whose top edge lies on the cut.
    lower: Vec<usize>,
}

fn cmp(a: &Coord, b: &Coord) -> Ordering {
    cmp_coord(a, b).unwrap_or(Ordering::Equal)
}

fn level_of(levels: &mut Vec<Coord>, y: &Coord) -> usize {
    match levels.iter().position(|l| l == y) {
        Some(i) => i,
        None => {
            levels.push(y.clone());
            levels.len() - 1
        }
    }
}

/// Builds the planar network of a valid tiling. Boundary vertex `u` is the cut
/// through horizontal side `u` of the region, sides numbered counterclockwise.
pub fn tiling_to_network(t: &Tiling) -> Result<TilingNetwork, TilingError> {
    if let Some(v) = validate(t).violation {
        return Err(TilingError::Invalid(v));
    }
    let poly = t.region.polygon();
    let sides = extract_sides(&poly);
    let b = sides.b();
    for a in 0..b {
        for c in a + 1..b {
            if sides.u[a] == sides.u[c] {
                return Err(TilingError::NongenericRegion(a, c));
            }
        }
    }

    let mut levels = Vec::new();
    let m = t.tiles.len();
    let bottoms: Vec<usize> = t.tiles.iter().map(|s| level_of(&mut levels, &s.y)).collect();
    let tops: Vec<usize> = t.tiles.iter().map(|s| level_of(&mut levels, &s.y1())).collect();

    // merge the tile edges on each level into maximal segments
    let mut cuts: Vec<Cut> = Vec::new();
    let mut bottom_cut = vec![usize::MAX; m];
    let mut top_cut = vec![usize::MAX; m];
    for level in 0..levels.len() {
        let mut spans: Vec<(usize, bool)> = (0..m)
            .filter(|&i| bottoms[i] == level)
            .map(|i| (i, true))
            .chain((0..m).filter(|&i| tops[i] == level).map(|i| (i, false)))
            .collect();
        spans.sort_by(|a, b| cmp(&t.tiles[a.0].x, &t.tiles[b.0].x));
        for (i, is_upper) in spans {
            let s = &t.tiles[i];
            let joins = cuts
                .last()
                .is_some_and(|c| c.level == level && cmp(&s.x, &c.hi) != Ordering::Greater);
            if !joins {
                cuts.push(Cut {
                    level,
                    lo: s.x.clone(),
                    hi: s.x1(),
                    upper: Vec::new(),
                    lower: Vec::new(),
                });
            }
            let k = cuts.len() - 1;
            let cut = &mut cuts[k];
            if cmp(&cut.hi, &s.x1()) == Ordering::Less {
                cut.hi = s.x1();
            }
            if is_upper {
                cut.upper.push(i);
                bottom_cut[i] = k;
            } else {
                cut.lower.push(i);
                top_cut[i] = k;
            }
        }
    }

    // side u -> its cut, with the side's x-range
    let mut vertex_of = vec![usize::MAX; cuts.len()];
    let mut side_range = Vec::with_capacity(b);
    for u in 0..b {
        let (p, q) = poly.edge(side_edge_index(&poly, u));
        let (a, e) = if cmp(&p.0, &q.0) == Ordering::Less {
            (p.0.clone(), q.0.clone())
        } else {
            (q.0.clone(), p.0.clone())
        };
        let k = cuts
            .iter()
            .position(|c| {
                levels[c.level] == sides.u[u]
                    && cmp(&c.lo, &a) != Ordering::Greater
                    && cmp(&e, &c.hi) != Ordering::Greater
            })
            .ok_or(TilingError::LooseTile(0))?;
        vertex_of[k] = u;
        side_range.push((k, a, e));
    }
    let mut interior: Vec<usize> = (0..cuts.len()).filter(|&k| vertex_of[k] == usize::MAX).collect();
    interior.sort_by(|&a, &c| {
        cmp(&levels[cuts[a].level], &levels[cuts[c].level]).then_with(|| cmp(&cuts[a].lo, &cuts[c].lo))
    });
    for (j, &k) in interior.iter().enumerate() {
        vertex_of[k] = b + j;
    }
    let n = cuts.len();

    let edges: Vec<Edge<Coord>> = t
        .tiles
        .iter()
        .enumerate()
        .map(|(i, s)| {
            Edge::new(
                vertex_of[top_cut[i]],
                vertex_of[bottom_cut[i]],
                s.w.clone() / s.h.clone(),
            )
        })
        .collect();

    let mut rotation = vec![Vec::new(); n];
    let by_x = |ids: &mut Vec<usize>| ids.sort_by(|&a, &c| cmp(&t.tiles[a].x, &t.tiles[c].x));
    for (k, cut) in cuts.iter().enumerate() {
        let mut upper = cut.upper.clone();
        let mut lower = cut.lower.clone();
        by_x(&mut upper);
        by_x(&mut lower);
        upper.reverse();
        let v = vertex_of[k];
        rotation[v] = if v < b {
            let (_, a, e) = &side_range[v];
            let left = |i: &usize| cmp(&t.tiles[*i].x1(), a) != Ordering::Greater;
            let right = |i: &usize| cmp(&t.tiles[*i].x, e) != Ordering::Less;
            if sides.i[v].is_positive() {
                // region below the side: the outside gap sits among the upper tiles
                let ul: Vec<usize> = upper.iter().copied().filter(left).collect();
                let ur: Vec<usize> = upper.iter().copied().filter(right).collect();
                [ul, lower, ur].concat()
            } else {
                let ll: Vec<usize> = lower.iter().copied().filter(left).collect();
                let lr: Vec<usize> = lower.iter().copied().filter(right).collect();
                [lr, upper, ll].concat()
            }
        } else {
            [upper, lower].concat()
        };
    }

    let network = Network::new(n, b, edges)?.with_embedding(Embedding { rotation })?;
    let mut heights = vec![Coord::zero(); n];
    for (k, cut) in cuts.iter().enumerate() {
        heights[vertex_of[k]] = levels[cut.level].clone();
    }
    Ok(TilingNetwork {
        network,
        voltages: sides.u,
        currents: sides.i,
        heights,
    })
}

/// Index of the polygon edge that is horizontal side `u`.
fn side_edge_index(p: &OrthogonalPolygon, u: usize) -> usize {
    let start = if p.is_horizontal(0) { 0 } else { 1 };
    (start + 2 * u) % p.len()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Item {
    Edge(usize),
    /// Boundary arc `a` runs from boundary vertex `a - 1` to `a`.
    Arc(usize),
}

/// [`network_to_tiling_at`] with the leftmost point at `x = 0`.
pub fn network_to_tiling(net: &Network<Coord>, boundary_voltages: &[Coord]) -> Result<Tiling, TilingError> {
    network_to_tiling_at(net, boundary_voltages, &Coord::zero())
}

/// Tiles the region swept by the network's currents: edge `e` becomes
/// `[I_west, I_east] x [U_low, U_high]`, where the face potentials `I_f` are
/// shifted so that the smallest equals `min_x`. Edges without current are
/// deleted first.
pub fn network_to_tiling_at(
    net: &Network<Coord>,
    boundary_voltages: &[Coord],
    min_x: &Coord,
) -> Result<Tiling, TilingError> {
    let b = net.b();
    if b < 2 {
        return Err(TilingError::TooFewBoundaryVertices);
    }
    if net.embedding().is_none() {
        return Err(TilingError::MissingEmbedding);
    }
    let sol = solve(net, boundary_voltages)?;
    let drop: Vec<usize> = (0..net.edges().len())
        .filter(|&e| sol.currents[e].is_zero())
        .collect();
    let (reduced, old_ids) = net.without_edges_unchecked(&drop);
    let volts = &sol.voltages;
    let rotation = &reduced.embedding().expect("embedding kept").rotation;

    // endpoints as (high, low) and tile widths
    let mut ends = Vec::with_capacity(reduced.edges().len());
    let mut widths = Vec::with_capacity(reduced.edges().len());
    for (k, e) in reduced.edges().iter().enumerate() {
        let (hi, lo) = match cmp_coord(&volts[e.u], &volts[e.v])? {
            Ordering::Greater => (e.u, e.v),
            Ordering::Less => (e.v, e.u),
            Ordering::Equal => return Err(TilingError::DegenerateEdge(old_ids[k])),
        };
        let w = e.c.clone() * (volts[hi].clone() - volts[lo].clone());
        if !w.is_positive() {
            return Err(TilingError::NegativeWidth(old_ids[k]));
        }
        ends.push((hi, lo));
        widths.push(w);
    }

    let aug: Vec<Vec<Item>> = (0..reduced.n())
        .map(|v| {
            let inner = rotation[v].iter().map(|&e| Item::Edge(e));
            if v < b {
                std::iter::once(Item::Arc((v + 1) % b))
                    .chain(inner)
                    .chain(std::iter::once(Item::Arc(v)))
                    .collect()
            } else {
                inner.collect()
            }
        })
        .collect();
    let mut pos: HashMap<(usize, Item), usize> = HashMap::new();
    for (v, list) in aug.iter().enumerate() {
        for (i, &it) in list.iter().enumerate() {
            pos.insert((v, it), i);
        }
    }
    let endpoints = |it: Item| match it {
        Item::Edge(k) => (reduced.edges()[k].u, reduced.edges()[k].v),
        Item::Arc(a) => ((a + b - 1) % b, a),
    };
    let head = |it: Item, tail: usize| {
        let (p, q) = endpoints(it);
        if tail == p {
            q
        } else {
            p
        }
    };

    // trace the face to the left of every dart
    let mut face: HashMap<(Item, usize), usize> = HashMap::new();
    let mut faces = 0;
    let darts: Vec<(Item, usize)> = (0..reduced.edges().len())
        .map(Item::Edge)
        .chain((0..b).map(Item::Arc))
        .flat_map(|it| {
            let (p, q) = endpoints(it);
            [(it, p), (it, q)]
        })
        .collect();
    for &start in &darts {
        if face.contains_key(&start) {
            continue;
        }
        let mut d = start;
        loop {
            face.insert(d, faces);
            let w = head(d.0, d.1);
            let list = &aug[w];
            let i = pos[&(w, d.0)];
            let prev = list[(i + list.len() - 1) % list.len()];
            d = (prev, w);
            if d == start {
                break;
            }
        }
        faces += 1;
    }

    // potentials across edges: east = west + width
    let mut adj: Vec<Vec<(usize, usize, bool)>> = vec![Vec::new(); faces];
    for (k, &(hi, lo)) in ends.iter().enumerate() {
        let east = face[&(Item::Edge(k), hi)];
        let west = face[&(Item::Edge(k), lo)];
        adj[west].push((east, k, true));
        adj[east].push((west, k, false));
    }
    let mut pot: Vec<Option<Coord>> = vec![None; faces];
    if let Some(k) = (0..ends.len()).next() {
        let root = face[&(Item::Edge(k), ends[k].1)];
        pot[root] = Some(Coord::zero());
        let mut queue = VecDeque::from([root]);
        while let Some(f) = queue.pop_front() {
            let base = pot[f].clone().expect("queued faces have potentials");
            for &(g, k, forward) in &adj[f] {
                let val = if forward {
                    base.clone() + widths[k].clone()
                } else {
                    base.clone() - widths[k].clone()
                };
                match &pot[g] {
                    Some(old) if old != &val => return Err(TilingError::InconsistentFaces(old_ids[k])),
                    Some(_) => {}
                    None => {
                        pot[g] = Some(val);
                        queue.push_back(g);
                    }
                }
            }
        }
    }
    let mut least: Option<Coord> = None;
    for p in pot.iter().flatten() {
        if least.as_ref().is_none_or(|l| cmp_coord(p, l) == Ok(Ordering::Less)) {
            least = Some(p.clone());
        }
    }
    let Some(least) = least else {
        return Err(TilingError::DetachedArc(0));
    };
    let shift = min_x.clone() - least;

    let field = find_field(reduced.edges().iter().map(|e| &e.c).chain(boundary_voltages));
    let tiles: Vec<Tile> = ends
        .iter()
        .enumerate()
        .map(|(k, &(hi, lo))| {
            let west = face[&(Item::Edge(k), lo)];
            Tile {
                x: pot[west].clone().expect("edge faces are reached") + shift.clone(),
                y: volts[lo].clone(),
                w: widths[k].clone(),
                h: volts[hi].clone() - volts[lo].clone(),
                ratio: RatioLabel::classify(&reduced.edges()[k].c, field.as_ref()),
            }
        })
        .collect();

    let mut arc_x = Vec::with_capacity(b);
    for a in 0..b {
        let f = face[&(Item::Arc(a), (a + b - 1) % b)];
        let x = pot[f].clone().ok_or(TilingError::DetachedArc(a))?;
        arc_x.push(x + shift.clone());
    }
    let mut points = Vec::with_capacity(2 * b);
    for a in 0..b {
        points.push((arc_x[a].clone(), boundary_voltages[a].clone()));
        points.push((arc_x[(a + 1) % b].clone(), boundary_voltages[a].clone()));
    }
    let region = region_from_points(simplify(points))?;
    let tiling = Tiling { field, region, tiles };
    if let Some(v) = validate(&tiling).violation {
        return Err(TilingError::Invalid(v));
    }
    Ok(tiling)
}

fn find_field<'a>(values: impl Iterator<Item = &'a Coord>) -> Option<Arc<NumberField>> {
    values.filter_map(|v| v.field()).next().cloned()
}

/// Drops repeated points and the middle points of straight runs.
fn simplify(mut pts: Vec<(Coord, Coord)>) -> Vec<(Coord, Coord)> {
    loop {
        let n = pts.len();
        if n < 3 {
            return pts;
        }
        let drop = (0..n).find(|&i| {
            let prev = &pts[(i + n - 1) % n];
            let cur = &pts[i];
            let next = &pts[(i + 1) % n];
            cur == prev || (prev.0 == cur.0 && cur.0 == next.0) || (prev.1 == cur.1 && cur.1 == next.1)
        });
        match drop {
            Some(i) => {
                pts.remove(i);
            }
            None => return pts,
        }
    }
}

fn region_from_points(pts: Vec<(Coord, Coord)>) -> Result<Region, TilingError> {
    let poly = OrthogonalPolygon::new(pts)?;
    if poly.len() == 4 {
        let (x0, y0, x1, y1) = poly.bounding_box()?;
        return Ok(Region::Rectangle {
            w: x1 - x0.clone(),
            h: y1 - y0.clone(),
            x: x0,
            y: y0,
        });
    }
    Ok(Region::Polygon(poly))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{q, qi};
    use crate::algebra::{ContinuedFraction, Polynomial};
    use crate::circuit::{build_series_parallel, conductance, SeriesParallel};
    use crate::polygon::coord;
    use crate::tiling::{cfrac_to_tiling, Target};

    fn r(n: i64, d: i64) -> Coord {
        coord(q(n, d))
    }

    fn grid(cols: i64, rows: i64) -> Tiling {
        let mut tiles = Vec::new();
        for j in 0..rows {
            for i in 0..cols {
                tiles.push(Tile {
                    x: r(i, 1),
                    y: r(j, 1),
                    w: r(1, 1),
                    h: r(1, 1),
                    ratio: RatioLabel::Rational(qi(1)),
                });
            }
        }
        Tiling {
            field: None,
            region: Region::rectangle(r(cols, 1), r(rows, 1)),
            tiles,
        }
    }

    fn round_trip(t: &Tiling) -> Tiling {
        let tn = tiling_to_network(t).unwrap();
        let sol = solve(&tn.network, &tn.voltages).unwrap();
        assert_eq!(sol.incoming, tn.currents);
        assert_eq!(sol.voltages, tn.heights);
        let min_x = t.region.polygon().min_x().unwrap();
        network_to_tiling_at(&tn.network, &tn.voltages, &min_x).unwrap()
    }

    #[test]
    fn single_square() {
        let t = grid(1, 1);
        let tn = tiling_to_network(&t).unwrap();
        assert_eq!(tn.network.edges().len(), 1);
        assert_eq!(conductance(&tn.network).unwrap(), r(1, 1));
        assert_eq!(round_trip(&t), t);
    }

    #[test]
    fn parallel_halves() {
        let t = Tiling {
            field: None,
            region: Region::rectangle(r(1, 1), r(1, 1)),
            tiles: vec![
                Tile { x: r(0, 1), y: r(0, 1), w: r(1, 2), h: r(1, 1), ratio: RatioLabel::Rational(q(1, 2)) },
                Tile { x: r(1, 2), y: r(0, 1), w: r(1, 2), h: r(1, 1), ratio: RatioLabel::Rational(q(1, 2)) },
            ],
        };
        let tn = tiling_to_network(&t).unwrap();
        assert_eq!(tn.network.n(), 2);
        assert!(tn.network.edges().iter().all(|e| e.c == r(1, 2)));
        assert_eq!(conductance(&tn.network).unwrap(), r(1, 1));
        assert!(round_trip(&t).congruent_by_horizontal_shift(&t));
    }

    #[test]
    fn grids_round_trip() {
        for (c, rw) in [(2, 3), (3, 1), (4, 4)] {
            let t = grid(c, rw);
            let tn = tiling_to_network(&t).unwrap();
            assert_eq!(conductance(&tn.network).unwrap(), r(c, rw));
            assert!(round_trip(&t).congruent_by_horizontal_shift(&t));
        }
    }

    #[test]
    fn l_hexagon_round_trip() {
        let l = OrthogonalPolygon::from_i64(&[(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]).unwrap();
        let sq = |x, y| Tile { x: r(x, 1), y: r(y, 1), w: r(1, 1), h: r(1, 1), ratio: RatioLabel::Rational(qi(1)) };
        let t = Tiling {
            field: None,
            region: Region::Polygon(l),
            tiles: vec![sq(0, 0), sq(1, 0), sq(0, 1)],
        };
        let tn = tiling_to_network(&t).unwrap();
        assert_eq!(tn.network.b(), 3);
        assert_eq!(tn.voltages, vec![r(0, 1), r(1, 1), r(2, 1)]);
        assert_eq!(tn.currents, vec![r(-2, 1), r(1, 1), r(1, 1)]);
        let back = round_trip(&t);
        assert_eq!(back.region, t.region);
        assert!(back.congruent_by_horizontal_shift(&t));
    }

    #[test]
    fn six_tile_round_trip() {
        let f = NumberField::at_largest_positive_root(Polynomial::from_i64(&[2, -4, 1])).unwrap();
        let cf = ContinuedFraction { inverted: true, coefficients: vec![q(1, 4), qi(2)] };
        let t = cfrac_to_tiling(&cf, &f, Target::Square).unwrap();
        let tn = tiling_to_network(&t).unwrap();
        assert_eq!(conductance(&tn.network).unwrap(), r(1, 1));
        let back = round_trip(&t);
        assert!(back.congruent_by_horizontal_shift(&t));
        assert_eq!(back.label_counts(), (4, 2, 0));
    }

    #[test]
    fn series_chain_stacks() {
        let sp = SeriesParallel::series(SeriesParallel::leaf(r(1, 1)), SeriesParallel::leaf(r(1, 1)));
        let net = build_series_parallel(&sp);
        let t = network_to_tiling(&net, &[r(1, 1), r(0, 1)]).unwrap();
        assert_eq!(t.tiles.len(), 2);
        assert_eq!(t.region, Region::rectangle(r(1, 2), r(1, 1)));
        for s in &t.tiles {
            assert_eq!(s.w, r(1, 2));
            assert_eq!(s.h, r(1, 2));
        }
    }

    #[test]
    fn single_edge_ratio_c() {
        let f = NumberField::at_largest_positive_root(Polynomial::from_i64(&[-2, 0, 1])).unwrap();
        let c = f.generator();
        let net = build_series_parallel(&SeriesParallel::leaf(c.clone()));
        let t = network_to_tiling(&net, &[r(1, 1), r(0, 1)]).unwrap();
        assert_eq!(t.tiles[0].w, c);
        assert_eq!(t.tiles[0].h, r(1, 1));
        assert_eq!(t.tiles[0].ratio, RatioLabel::C);
    }

    #[test]
    fn balanced_bridge_drops_its_middle_edge() {
        // 0 top, 1 bottom, 2 and 3 middle; the 2-3 edge carries no current
        let one = r(1, 1);
        let edges = vec![
            Edge::new(0, 2, one.clone()),
            Edge::new(0, 3, one.clone()),
            Edge::new(2, 1, one.clone()),
            Edge::new(3, 1, one.clone()),
            Edge::new(2, 3, one),
        ];
        let emb = Embedding {
            rotation: vec![vec![0, 1], vec![3, 2], vec![4, 0, 2], vec![1, 4, 3]],
        };
        let net = Network::new(4, 2, edges).unwrap().with_embedding(emb).unwrap();
        let t = network_to_tiling(&net, &[r(1, 1), r(0, 1)]).unwrap();
        assert_eq!(t.tiles.len(), 4);
        assert_eq!(t.region, Region::rectangle(r(1, 1), r(1, 1)));
    }

    #[test]
    fn requires_embedding() {
        let net = Network::new(2, 2, vec![Edge::new(0, 1, r(1, 1))]).unwrap();
        assert_eq!(
            network_to_tiling(&net, &[r(1, 1), r(0, 1)]).unwrap_err(),
            TilingError::MissingEmbedding
        );
    }

    #[test]
    fn nongeneric_region_rejected() {
        // U-shape: two sides at y = 2
        let u = OrthogonalPolygon::from_i64(&[(0, 0), (3, 0), (3, 2), (2, 2), (2, 1), (1, 1), (1, 2), (0, 2)]).unwrap();
        let sq = |x, y| Tile { x: r(x, 1), y: r(y, 1), w: r(1, 1), h: r(1, 1), ratio: RatioLabel::Rational(qi(1)) };
        let t = Tiling {
            field: None,
            region: Region::Polygon(u),
            tiles: vec![sq(0, 0), sq(1, 0), sq(2, 0), sq(0, 1), sq(2, 1)],
        };
        assert!(matches!(tiling_to_network(&t), Err(TilingError::NongenericRegion(..))));
    }
}

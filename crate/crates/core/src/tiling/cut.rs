//! Cut-sequence tilings from positive continued fractions, refined into
//! ratio-`c` and ratio-`1/c` tiles by rational grids.

use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::algebra::{ContinuedFraction, NumberField, Rational};
use crate::polygon::{coord, Coord};
use crate::synthesis::{CertificateKind, TilingVerdict};

use super::{validate, RatioLabel, Region, Tile, Tiling, TilingError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    /// The unit square.
    Square,
    /// The `c x 1` rectangle.
    RatioC,
}

/// Splits `[x, x + w] x [y, y + h]` into `cols x rows` congruent tiles.
pub fn chop_grid(
    x: &Coord,
    y: &Coord,
    w: &Coord,
    h: &Coord,
    cols: u64,
    rows: u64,
    ratio: RatioLabel,
) -> Vec<Tile> {
    let tw = w.clone() / coord(Rational::from_integer(cols.into()));
    let th = h.clone() / coord(Rational::from_integer(rows.into()));
    let mut out = Vec::with_capacity((cols * rows) as usize);
    for j in 0..rows {
        for i in 0..cols {
            out.push(Tile {
                x: x.clone() + tw.clone() * coord(Rational::from_integer(i.into())),
                y: y.clone() + th.clone() * coord(Rational::from_integer(j.into())),
                w: tw.clone(),
                h: th.clone(),
                ratio: ratio.clone(),
            });
        }
    }
    out
}

fn parts(d: &Rational) -> (u64, u64) {
    let to_u64 = |v: &num_bigint::BigInt| u64::try_from(v).expect("grid size exceeds u64");
    (to_u64(d.numer()), to_u64(d.denom()))
}

/// Lays out the coarse rectangles of ratios `d_1 c, 1/(d_2 c), ...` by
/// alternating vertical and horizontal cuts, then chops each one into tiles of
/// ratio `c` (from `d c`) or `1/c` (from `1/(d c)`).
///
/// The last rectangle is whatever remains, so the result is a tiling exactly
/// when the continued fraction reaches the target value at `c`; otherwise
/// [`TilingError::CertificateMismatch`].
pub fn cfrac_to_tiling(
    cf: &ContinuedFraction,
    field: &Arc<NumberField>,
    target: Target,
) -> Result<Tiling, TilingError> {
    if let Some(k) = cf.coefficients.iter().position(|d| !d.is_positive()) {
        return Err(TilingError::NonPositiveCoefficient(k + 1));
    }
    if cf.coefficients.is_empty() {
        return Err(TilingError::CertificateMismatch);
    }
    let c = field.generator();
    let one = coord(Rational::from_integer(1.into()));
    // `vertical` holds when width / height equals the current tail of the fraction
    let (w0, h0, mut vertical) = match target {
        Target::Square => (one.clone(), one.clone(), true),
        Target::RatioC => (c.clone(), one.clone(), cf.inverted),
    };
    let (mut x, mut y, mut w, mut h) = (Coord::zero(), Coord::zero(), w0.clone(), h0.clone());
    let mut tiles = Vec::new();
    let m = cf.coefficients.len();
    for (k, d) in cf.coefficients.iter().enumerate() {
        let (p, q) = parts(d);
        let dc = coord(d.clone()) * c.clone();
        let last = k + 1 == m;
        if vertical {
            let pw = dc * h.clone();
            if last && pw != w {
                return Err(TilingError::CertificateMismatch);
            }
            tiles.extend(chop_grid(&x, &y, &pw, &h, p, q, RatioLabel::C));
            x = x + pw.clone();
            w = w - pw;
        } else {
            let ph = dc * w.clone();
            if last && ph != h {
                return Err(TilingError::CertificateMismatch);
            }
            tiles.extend(chop_grid(&x, &y, &w, &ph, q, p, RatioLabel::InvC));
            y = y + ph.clone();
            h = h - ph;
        }
        if !last && !(w.is_positive() && h.is_positive()) {
            return Err(TilingError::CertificateMismatch);
        }
        vertical = !vertical;
    }
    let tiling = Tiling {
        field: Some(field.clone()),
        region: Region::rectangle(w0, h0),
        tiles,
    };
    if target == Target::RatioC && tiling.label_counts().1 == 0 {
        return Err(TilingError::NoInverseTile);
    }
    if let Some(v) = validate(&tiling).violation {
        return Err(TilingError::Invalid(v));
    }
    Ok(tiling)
}

/// The witness tiling of a positive verdict: the unit square for the square
/// criterion, the `c x 1` rectangle for the self-similar one.
pub fn tiling_for_verdict(v: &TilingVerdict) -> Result<Tiling, TilingError> {
    let (Some(cf), Some(field)) = (v.cfrac.as_ref().filter(|_| v.tileable), v.field()) else {
        return Err(TilingError::CertificateMismatch);
    };
    let target = match v.kind {
        CertificateKind::Square => Target::Square,
        CertificateKind::SelfSimilar => Target::RatioC,
    };
    cfrac_to_tiling(cf, &field, target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{q, qi};
    use crate::algebra::Polynomial;
    use crate::synthesis::{decide_self_similar, decide_square};

    fn field(p: &[i64]) -> Arc<NumberField> {
        NumberField::at_largest_positive_root(Polynomial::from_i64(p)).unwrap()
    }

    #[test]
    fn six_tile_square() {
        let f = field(&[2, -4, 1]);
        let cf = ContinuedFraction {
            inverted: true,
            coefficients: vec![q(1, 4), qi(2)],
        };
        let t = cfrac_to_tiling(&cf, &f, Target::Square).unwrap();
        assert_eq!(t.tiles.len(), 6);
        assert_eq!(t.label_counts(), (4, 2, 0));
        let c = f.generator();
        let col = c.clone() / coord(qi(4));
        for s in &t.tiles[..4] {
            assert_eq!(s.x, Coord::zero());
            assert_eq!(s.w, col);
        }
        for s in &t.tiles[4..] {
            assert_eq!(s.x, col);
        }
        assert_eq!(validate(&t).tile_area, coord(qi(1)));
    }

    #[test]
    fn verdicts_give_tilings() {
        let t = tiling_for_verdict(&decide_square(&Polynomial::from_i64(&[2, -4, 1])).unwrap()).unwrap();
        assert_eq!(t.tiles.len(), 6);
        let t = tiling_for_verdict(&decide_self_similar(&Polynomial::from_i64(&[-2, 0, 1])).unwrap()).unwrap();
        assert!(t.label_counts().1 > 0);
        assert_eq!(t.region.ratio().unwrap(), t.field.as_ref().unwrap().generator());
        let golden = decide_square(&Polynomial::from_i64(&[-1, -1, 1])).unwrap();
        assert!(tiling_for_verdict(&golden).is_err());
    }

    #[test]
    fn dehn_grid() {
        // c = 3/5, d = [5/3]
        let f = field(&[-3, 5]);
        let cf = ContinuedFraction {
            inverted: false,
            coefficients: vec![q(5, 3)],
        };
        let t = cfrac_to_tiling(&cf, &f, Target::Square).unwrap();
        assert_eq!(t.tiles.len(), 15);
        assert_eq!(t.tiles[0].w, coord(q(1, 5)));
        assert_eq!(t.tiles[0].h, coord(q(1, 3)));
    }

    #[test]
    fn mismatches_are_rejected() {
        let f = field(&[2, -4, 1]);
        let cf = ContinuedFraction {
            inverted: true,
            coefficients: vec![q(1, 3), qi(2)],
        };
        assert_eq!(
            cfrac_to_tiling(&cf, &f, Target::Square).unwrap_err(),
            TilingError::CertificateMismatch
        );
        let cf = ContinuedFraction {
            inverted: false,
            coefficients: vec![q(-1, 3)],
        };
        assert_eq!(
            cfrac_to_tiling(&cf, &f, Target::Square).unwrap_err(),
            TilingError::NonPositiveCoefficient(1)
        );
        // c x 1 tiled by a single ratio-c tile has no 1/c tile
        let cf = ContinuedFraction {
            inverted: true,
            coefficients: vec![qi(1)],
        };
        assert_eq!(
            cfrac_to_tiling(&cf, &f, Target::RatioC).unwrap_err(),
            TilingError::NoInverseTile
        );
    }
}

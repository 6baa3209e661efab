//! SVG output. Coordinates are certified midpoints of enclosures narrower than
//! `1e-12`, printed to nine decimals; nothing here feeds back into decisions.

use std::f64::consts::PI;
use std::fmt::Write;

use rectcircuit::polygon::Coord;
use rectcircuit::tiling::{RatioLabel, Tiling};

fn num(c: &Coord) -> f64 {
    c.to_f64()
}

fn fill(r: &RatioLabel) -> &'static str {
    match r {
        RatioLabel::C => "#9ecae1",
        RatioLabel::InvC => "#fdae6b",
        RatioLabel::Rational(_) => "#c7e9c0",
        RatioLabel::Value(_) => "#dadaeb",
    }
}

pub fn tiling_svg(t: &Tiling, scale: f64) -> String {
    let region = t.region.polygon();
    let xs: Vec<f64> = region.vertices().iter().map(|p| num(&p.0)).collect();
    let ys: Vec<f64> = region.vertices().iter().map(|p| num(&p.1)).collect();
    let x0 = xs.iter().cloned().fold(f64::INFINITY, f64::min);
    let y1 = ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let w = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max) - x0;
    let h = y1 - ys.iter().cloned().fold(f64::INFINITY, f64::min);
    let sx = |x: f64| (x - x0) * scale;
    let sy = |y: f64| (y1 - y) * scale;
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.9}" height="{:.9}" viewBox="0 0 {:.9} {:.9}">"#,
        w * scale,
        h * scale,
        w * scale,
        h * scale
    )
    .unwrap();
    for tile in &t.tiles {
        writeln!(
            s,
            r#"  <rect x="{:.9}" y="{:.9}" width="{:.9}" height="{:.9}" fill="{}" stroke="black" stroke-width="1"><title>{}</title></rect>"#,
            sx(num(&tile.x)),
            sy(num(&tile.y1())),
            num(&tile.w) * scale,
            num(&tile.h) * scale,
            fill(&tile.ratio),
            tile.ratio
        )
        .unwrap();
    }
    let mut d = String::new();
    for (i, (x, y)) in xs.iter().zip(&ys).enumerate() {
        write!(d, "{}{:.9} {:.9} ", if i == 0 { "M" } else { "L" }, sx(*x), sy(*y)).unwrap();
    }
    d.push('Z');
    writeln!(s, r#"  <path d="{d}" fill="none" stroke="black" stroke-width="2"/>"#).unwrap();
    s.push_str("</svg>\n");
    s
}

/// Vertices on a circle, boundary vertices first; edges as straight segments.
pub fn network_svg(n: usize, b: usize, edges: &[(usize, usize)], scale: f64) -> String {
    let r = scale;
    let margin = 20.0;
    let pos: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let a = 2.0 * PI * k as f64 / n as f64;
            (margin + r + r * a.cos(), margin + r - r * a.sin())
        })
        .collect();
    let size = 2.0 * (r + margin);
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size:.9}" height="{size:.9}" viewBox="0 0 {size:.9} {size:.9}">"#
    )
    .unwrap();
    for &(u, v) in edges {
        writeln!(
            s,
            r#"  <line x1="{:.9}" y1="{:.9}" x2="{:.9}" y2="{:.9}" stroke="black" stroke-width="1.5"/>"#,
            pos[u].0, pos[u].1, pos[v].0, pos[v].1
        )
        .unwrap();
    }
    for (k, (x, y)) in pos.iter().enumerate() {
        let fill = if k < b { "white" } else { "black" };
        writeln!(
            s,
            r#"  <circle cx="{x:.9}" cy="{y:.9}" r="5" fill="{fill}" stroke="black"><title>{k}</title></circle>"#
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}

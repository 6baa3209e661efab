//! JSON encodings. Rationals are `{"num": "..", "den": ".."}` with decimal
//! integer strings, polynomials are ascending coefficient arrays, Gaussian
//! rationals are `{"re", "im"}`, and number-field elements are `{"repr": poly}`
//! read in the document's top-level `"field"`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Map, Value};

use crate::algebra::linalg::Matrix;
use crate::algebra::sturm::{count_roots, IsolatingInterval};
use crate::algebra::{
    CfracFailure, GaussianRational, NumberField, NumberFieldElement, Polynomial, Rational, Scalar,
};
use crate::circuit::{Edge, Embedding, KirchhoffSolution, Network};
use crate::polygon::{Coord, OmegaReport, OmegaViolation, OrthogonalPolygon, SideData};
use crate::synthesis::{Degeneracy, TilingVerdict};
use crate::tiling::{RatioLabel, Region, Tile, Tiling, Validation};

#[derive(Serialize, Deserialize)]
struct RationalRepr {
    num: String,
    #[serde(default = "one_string")]
    den: String,
}

fn one_string() -> String {
    "1".to_string()
}

impl From<&Rational> for RationalRepr {
    fn from(q: &Rational) -> Self {
        RationalRepr {
            num: q.numer().to_string(),
            den: q.denom().to_string(),
        }
    }
}

impl RationalRepr {
    fn into_rational<E: serde::de::Error>(self) -> Result<Rational, E> {
        let n: BigInt = self.num.trim().parse().map_err(E::custom)?;
        let d: BigInt = self.den.trim().parse().map_err(E::custom)?;
        if d.is_zero() {
            return Err(E::custom("zero denominator"));
        }
        Ok(Rational::new(n, d))
    }
}

/// Accepts `{"num","den"}`, a bare integer, or a `"a/b"` string.
#[derive(Deserialize)]
#[serde(untagged)]
enum RationalInput {
    Pair(RationalRepr),
    Int(i64),
    Text(String),
}

impl RationalInput {
    fn into_rational<E: serde::de::Error>(self) -> Result<Rational, E> {
        match self {
            RationalInput::Pair(p) => p.into_rational(),
            RationalInput::Int(i) => Ok(Rational::from_integer(i.into())),
            RationalInput::Text(s) => crate::algebra::scalar::parse_rational(&s)
                .ok_or_else(|| E::custom(format!("invalid rational {s:?}"))),
        }
    }
}

pub fn rational_to_json(q: &Rational) -> serde_json::Value {
    serde_json::to_value(RationalRepr::from(q)).expect("rational serializes")
}

pub fn rational_from_json(v: &serde_json::Value) -> Result<Rational, serde_json::Error> {
    RationalInput::deserialize(v)?.into_rational()
}

pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        RationalRepr::from(q).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        RationalInput::deserialize(d)?.into_rational()
    }
}

pub mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let reprs: Vec<RationalRepr> = v.iter().map(RationalRepr::from).collect();
        reprs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<RationalInput>::deserialize(d)?
            .into_iter()
            .map(RationalInput::into_rational)
            .collect()
    }
}

pub mod polynomial {
    use super::*;

    pub fn serialize<S: Serializer>(p: &Polynomial, s: S) -> Result<S::Ok, S::Error> {
        rational_vec::serialize(p.coeffs(), s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Polynomial, D::Error> {
        Ok(Polynomial::new(rational_vec::deserialize(d)?))
    }
}

pub fn polynomial_to_json(p: &Polynomial) -> serde_json::Value {
    serde_json::Value::Array(p.coeffs().iter().map(rational_to_json).collect())
}

pub fn polynomial_from_json(v: &serde_json::Value) -> Result<Polynomial, serde_json::Error> {
    let coeffs: Vec<RationalInput> = Vec::deserialize(v)?;
    let coeffs = coeffs
        .into_iter()
        .map(RationalInput::into_rational::<serde_json::Error>)
        .collect::<Result<Vec<_>, _>>()?;
    if coeffs.is_empty() {
        return Err(serde_json::Error::custom("empty coefficient array"));
    }
    Ok(Polynomial::new(coeffs))
}


fn bad(msg: impl std::fmt::Display) -> serde_json::Error {
    serde_json::Error::custom(msg)
}

fn field_of<'a>(v: &'a Value, key: &str) -> Result<&'a Value, serde_json::Error> {
    v.get(key).ok_or_else(|| bad(format!("missing field {key:?}")))
}

fn usize_of(v: &Value, key: &str) -> Result<usize, serde_json::Error> {
    field_of(v, key)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| bad(format!("field {key:?} must be a nonnegative integer")))
}

fn array_of<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, serde_json::Error> {
    v.as_array().ok_or_else(|| bad(format!("{what} must be an array")))
}

pub fn field_to_json(f: &NumberField) -> Value {
    let mut m = Map::new();
    m.insert("modulus".into(), polynomial_to_json(f.modulus()));
    if let Some(r) = f.root() {
        m.insert("root".into(), json!({"lo": rational_to_json(&r.lo), "hi": rational_to_json(&r.hi)}));
    }
    Value::Object(m)
}

/// Without `"root"`, the embedding is at the largest real root.
pub fn field_from_json(v: &Value) -> Result<Arc<NumberField>, serde_json::Error> {
    let modulus = polynomial_from_json(field_of(v, "modulus")?)?;
    match v.get("root") {
        None | Some(Value::Null) => NumberField::with_default_root(modulus).map_err(bad),
        Some(r) => {
            let lo = rational_from_json(field_of(r, "lo")?)?;
            let hi = rational_from_json(field_of(r, "hi")?)?;
            let iv = IsolatingInterval {
                lo,
                hi,
                polynomial: modulus.clone(),
            };
            if !modulus.is_squarefree() || count_roots(&modulus, &iv.lo, &iv.hi) != 1 {
                return Err(bad("root interval does not isolate exactly one root"));
            }
            NumberField::new(modulus, Some(iv)).map_err(bad)
        }
    }
}

/// Optional top-level `"field"` of a document.
pub fn document_field(v: &Value) -> Result<Option<Arc<NumberField>>, serde_json::Error> {
    match v.get("field") {
        None | Some(Value::Null) => Ok(None),
        Some(f) => field_from_json(f).map(Some),
    }
}

/// Scalars with a JSON encoding.
pub trait JsonScalar: Scalar {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value, field: Option<&Arc<NumberField>>) -> Result<Self, serde_json::Error>;
    /// The field the value lives in, if any.
    fn number_field(&self) -> Option<Arc<NumberField>> {
        None
    }
}

impl JsonScalar for Rational {
    fn to_json(&self) -> Value {
        rational_to_json(self)
    }
    fn from_json(v: &Value, _: Option<&Arc<NumberField>>) -> Result<Self, serde_json::Error> {
        rational_from_json(v)
    }
}

/// Accepts a plain rational as a Gaussian rational with zero imaginary part.
impl JsonScalar for GaussianRational {
    fn to_json(&self) -> Value {
        json!({"re": rational_to_json(&self.re), "im": rational_to_json(&self.im)})
    }
    fn from_json(v: &Value, _: Option<&Arc<NumberField>>) -> Result<Self, serde_json::Error> {
        if v.get("re").is_some() || v.get("im").is_some() {
            let part = |k| v.get(k).map_or(Ok(Rational::zero()), rational_from_json);
            Ok(GaussianRational::new(part("re")?, part("im")?))
        } else {
            Ok(GaussianRational::new(rational_from_json(v)?, Rational::zero()))
        }
    }
}

impl JsonScalar for NumberFieldElement {
    fn to_json(&self) -> Value {
        match self.as_rational() {
            Some(r) => rational_to_json(&r),
            None => json!({"repr": polynomial_to_json(self.repr())}),
        }
    }
    fn from_json(v: &Value, field: Option<&Arc<NumberField>>) -> Result<Self, serde_json::Error> {
        match v.get("repr") {
            Some(r) => {
                let f = field.ok_or_else(|| bad("\"repr\" value without a \"field\""))?;
                Ok(NumberFieldElement::in_field(f.clone(), polynomial_from_json(r)?))
            }
            None => Ok(NumberFieldElement::rational(rational_from_json(v)?)),
        }
    }
    fn number_field(&self) -> Option<Arc<NumberField>> {
        self.field().cloned()
    }
}

pub fn scalars_to_json<S: JsonScalar>(v: &[S]) -> Value {
    Value::Array(v.iter().map(S::to_json).collect())
}

pub fn scalars_from_json<S: JsonScalar>(
    v: &Value,
    field: Option<&Arc<NumberField>>,
) -> Result<Vec<S>, serde_json::Error> {
    array_of(v, "value list")?.iter().map(|x| S::from_json(x, field)).collect()
}

pub fn matrix_to_json<S: JsonScalar>(m: &Matrix<S>) -> Value {
    Value::Array(m.iter().map(|r| scalars_to_json(r)).collect())
}

pub fn matrix_from_json<S: JsonScalar>(
    v: &Value,
    field: Option<&Arc<NumberField>>,
) -> Result<Matrix<S>, serde_json::Error> {
    array_of(v, "matrix")?.iter().map(|r| scalars_from_json(r, field)).collect()
}

fn first_field<'a, S: JsonScalar + 'a>(xs: impl IntoIterator<Item = &'a S>) -> Option<Arc<NumberField>> {
    xs.into_iter().find_map(|x| x.number_field())
}

/// `{"n", "b", "edges": [{"u", "v", "c"}], "rotation"?, "field"?}`.
pub fn network_to_json<S: JsonScalar>(net: &Network<S>) -> Value {
    let mut m = Map::new();
    if let Some(f) = first_field(net.edges().iter().map(|e| &e.c)) {
        m.insert("field".into(), field_to_json(&f));
    }
    m.insert("n".into(), json!(net.n()));
    m.insert("b".into(), json!(net.b()));
    m.insert(
        "edges".into(),
        Value::Array(
            net.edges()
                .iter()
                .map(|e| json!({"u": e.u, "v": e.v, "c": e.c.to_json()}))
                .collect(),
        ),
    );
    if let Some(emb) = net.embedding() {
        m.insert("rotation".into(), json!(emb.rotation));
    }
    Value::Object(m)
}

pub fn network_from_json<S: JsonScalar>(v: &Value) -> Result<Network<S>, serde_json::Error> {
    let field = document_field(v)?;
    let n = usize_of(v, "n")?;
    let b = usize_of(v, "b")?;
    let edges = array_of(field_of(v, "edges")?, "\"edges\"")?
        .iter()
        .map(|e| {
            Ok(Edge::new(
                usize_of(e, "u")?,
                usize_of(e, "v")?,
                S::from_json(field_of(e, "c")?, field.as_ref())?,
            ))
        })
        .collect::<Result<Vec<_>, serde_json::Error>>()?;
    let net = Network::new(n, b, edges).map_err(bad)?;
    match v.get("rotation") {
        None | Some(Value::Null) => Ok(net),
        Some(r) => {
            let rotation: Vec<Vec<usize>> = serde_json::from_value(r.clone())?;
            net.with_embedding(Embedding { rotation }).map_err(bad)
        }
    }
}

pub fn solution_to_json<S: JsonScalar>(sol: &KirchhoffSolution<S>) -> Value {
    let mut m = Map::new();
    if let Some(f) = first_field(sol.voltages.iter().chain(&sol.currents)) {
        m.insert("field".into(), field_to_json(&f));
    }
    m.insert("voltages".into(), scalars_to_json(&sol.voltages));
    m.insert("currents".into(), scalars_to_json(&sol.currents));
    m.insert("incoming".into(), scalars_to_json(&sol.incoming));
    Value::Object(m)
}

fn point_to_json(p: &(Coord, Coord)) -> Value {
    json!([p.0.to_json(), p.1.to_json()])
}

fn point_from_json(v: &Value, field: Option<&Arc<NumberField>>) -> Result<(Coord, Coord), serde_json::Error> {
    match array_of(v, "vertex")?.as_slice() {
        [x, y] => Ok((Coord::from_json(x, field)?, Coord::from_json(y, field)?)),
        _ => Err(bad("vertex must be a pair [x, y]")),
    }
}

fn vertices_to_json(p: &OrthogonalPolygon) -> Value {
    Value::Array(p.vertices().iter().map(point_to_json).collect())
}

fn vertices_from_json(
    v: &Value,
    field: Option<&Arc<NumberField>>,
) -> Result<OrthogonalPolygon, serde_json::Error> {
    let pts = array_of(v, "vertex list")?
        .iter()
        .map(|p| point_from_json(p, field))
        .collect::<Result<Vec<_>, _>>()?;
    OrthogonalPolygon::new(pts).map_err(bad)
}

/// `{"vertices": [[x, y], ...], "field"?}`, counterclockwise.
pub fn polygon_to_json(p: &OrthogonalPolygon) -> Value {
    let mut m = Map::new();
    if let Some(f) = first_field(p.vertices().iter().flat_map(|(x, y)| [x, y])) {
        m.insert("field".into(), field_to_json(&f));
    }
    m.insert("vertices".into(), vertices_to_json(p));
    Value::Object(m)
}

pub fn polygon_from_json(v: &Value) -> Result<OrthogonalPolygon, serde_json::Error> {
    let field = document_field(v)?;
    vertices_from_json(field_of(v, "vertices")?, field.as_ref())
}

pub fn sides_to_json(s: &SideData) -> Value {
    let mut m = Map::new();
    if let Some(f) = first_field(s.u.iter().chain(&s.i)) {
        m.insert("field".into(), field_to_json(&f));
    }
    m.insert("U".into(), scalars_to_json(&s.u));
    m.insert("I".into(), scalars_to_json(&s.i));
    m.insert("generic".into(), json!(s.is_generic()));
    Value::Object(m)
}

pub fn sides_from_json(v: &Value) -> Result<SideData, serde_json::Error> {
    let field = document_field(v)?;
    let u = scalars_from_json(field_of(v, "U")?, field.as_ref())?;
    let i = scalars_from_json(field_of(v, "I")?, field.as_ref())?;
    if u.len() != i.len() {
        return Err(bad("\"U\" and \"I\" have different lengths"));
    }
    Ok(SideData { u, i })
}

fn ratio_to_json(r: &RatioLabel) -> Value {
    match r {
        RatioLabel::C => json!("c"),
        RatioLabel::InvC => json!("1/c"),
        RatioLabel::Rational(q) => json!({"rational": rational_to_json(q)}),
        RatioLabel::Value(v) => json!({"value": v.to_json()}),
    }
}

fn ratio_from_json(v: &Value, field: Option<&Arc<NumberField>>) -> Result<RatioLabel, serde_json::Error> {
    match v {
        Value::String(s) if s == "c" => Ok(RatioLabel::C),
        Value::String(s) if s == "1/c" => Ok(RatioLabel::InvC),
        _ => {
            if let Some(q) = v.get("rational") {
                Ok(RatioLabel::Rational(rational_from_json(q)?))
            } else if let Some(x) = v.get("value") {
                Ok(RatioLabel::Value(Coord::from_json(x, field)?))
            } else {
                Err(bad("ratio must be \"c\", \"1/c\", {\"rational\"} or {\"value\"}"))
            }
        }
    }
}

/// `{"field"?, "region": {"rectangle": {x, y, w, h}} | {"polygon": [...]}, "tiles": [...]}`.
pub fn tiling_to_json(t: &Tiling) -> Value {
    let mut m = Map::new();
    if let Some(f) = &t.field {
        m.insert("field".into(), field_to_json(f));
    }
    let region = match &t.region {
        Region::Rectangle { x, y, w, h } => json!({"rectangle": {
            "x": x.to_json(), "y": y.to_json(), "w": w.to_json(), "h": h.to_json()
        }}),
        Region::Polygon(p) => json!({"polygon": vertices_to_json(p)}),
    };
    m.insert("region".into(), region);
    m.insert(
        "tiles".into(),
        Value::Array(
            t.tiles
                .iter()
                .map(|s| {
                    json!({
                        "x": s.x.to_json(), "y": s.y.to_json(),
                        "w": s.w.to_json(), "h": s.h.to_json(),
                        "ratio": ratio_to_json(&s.ratio),
                    })
                })
                .collect(),
        ),
    );
    Value::Object(m)
}

pub fn tiling_from_json(v: &Value) -> Result<Tiling, serde_json::Error> {
    let field = document_field(v)?;
    let f = field.as_ref();
    let coord = |o: &Value, k: &str| Coord::from_json(field_of(o, k)?, f);
    let region_v = field_of(v, "region")?;
    let region = if let Some(r) = region_v.get("rectangle") {
        Region::Rectangle {
            x: coord(r, "x")?,
            y: coord(r, "y")?,
            w: coord(r, "w")?,
            h: coord(r, "h")?,
        }
    } else if let Some(p) = region_v.get("polygon") {
        Region::Polygon(vertices_from_json(p, f)?)
    } else {
        return Err(bad("region must have \"rectangle\" or \"polygon\""));
    };
    let tiles = array_of(field_of(v, "tiles")?, "\"tiles\"")?
        .iter()
        .map(|s| {
            Ok(Tile {
                x: coord(s, "x")?,
                y: coord(s, "y")?,
                w: coord(s, "w")?,
                h: coord(s, "h")?,
                ratio: ratio_from_json(field_of(s, "ratio")?, f)?,
            })
        })
        .collect::<Result<Vec<_>, serde_json::Error>>()?;
    Ok(Tiling { field, region, tiles })
}

pub fn validation_to_json(v: &Validation) -> Value {
    json!({
        "valid": v.is_valid(),
        "violation": v.violation.as_ref().map(|x| x.to_string()),
        "tile_area": v.tile_area.to_json(),
        "region_area": v.region_area.to_json(),
    })
}

pub fn verdict_to_json(v: &TilingVerdict) -> Value {
    let mut m = Map::new();
    m.insert("tileable".into(), json!(v.tileable));
    m.insert("kind".into(), json!(v.kind.to_string()));
    m.insert("polynomial".into(), polynomial_to_json(&v.defining_polynomial));
    if let Some(cf) = &v.cfrac {
        m.insert("inverted".into(), json!(cf.inverted));
        m.insert(
            "d".into(),
            Value::Array(cf.coefficients.iter().map(rational_to_json).collect()),
        );
    }
    if let Some(f) = &v.function {
        m.insert(
            "function".into(),
            json!({"num": polynomial_to_json(f.num()), "den": polynomial_to_json(f.den())}),
        );
    }
    if let Some(f) = &v.failure {
        let w = match f {
            CfracFailure::NonPositiveCoefficient { index, value } => {
                json!({"index": index, "d": rational_to_json(value)})
            }
            CfracFailure::QuotientNotMonomial { index, quotient } => {
                json!({"index": index, "quotient": polynomial_to_json(quotient)})
            }
        };
        m.insert("witness".into(), w);
    }
    if let Some(Degeneracy::BadConjugate {
        interval: Some(iv), ..
    }) = &v.degeneracy
    {
        m.insert(
            "conjugate".into(),
            json!({"lo": rational_to_json(&iv.lo), "hi": rational_to_json(&iv.hi)}),
        );
    }
    if let Some(il) = &v.interlacing {
        m.insert(
            "interlacing".into(),
            json!({
                "a2": il.a2.iter().map(rational_to_json).collect::<Vec<_>>(),
                "b2": il.b2.iter().map(|iv| json!({
                    "lo": rational_to_json(&iv.lo), "hi": rational_to_json(&iv.hi)
                })).collect::<Vec<_>>(),
            }),
        );
    }
    if let Some(p) = &v.certificate_modulus {
        m.insert("certificate_modulus".into(), polynomial_to_json(p));
    }
    if let Some(r) = v.reason() {
        m.insert("reason".into(), json!(r));
    }
    Value::Object(m)
}

pub fn omega_report_to_json(r: &OmegaReport) -> Value {
    let violation = r.violation.as_ref().map(|v| {
        let kind = match v {
            OmegaViolation::NotSquare => "not_square",
            OmegaViolation::NotSymmetric { .. } => "not_symmetric",
            OmegaViolation::RowSum { .. } => "row_sum",
            OmegaViolation::CircularMinor { .. } => "circular_minor",
        };
        json!({"condition": kind, "message": v.to_string()})
    });
    json!({"holds": r.holds(), "minors_checked": r.minors_checked, "violation": violation})
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{q, qi};
    use serde_json::json;

    #[test]
    fn rational_round_trip() {
        let v = rational_to_json(&q(-3, 4));
        assert_eq!(v, json!({"num": "-3", "den": "4"}));
        assert_eq!(rational_from_json(&v).unwrap(), q(-3, 4));
        assert_eq!(rational_from_json(&json!(5)).unwrap(), qi(5));
        assert_eq!(rational_from_json(&json!("1/4")).unwrap(), q(1, 4));
        assert!(rational_from_json(&json!({"num": "1", "den": "0"})).is_err());
    }

    #[test]
    fn big_values_survive() {
        let big = "123456789012345678901234567891";
        let v = json!({"num": big, "den": "2"});
        let r = rational_from_json(&v).unwrap();
        assert_eq!(rational_to_json(&r), v);
    }

    #[test]
    fn polynomial_round_trip() {
        let p = Polynomial::from_i64(&[2, -4, 1]);
        let v = polynomial_to_json(&p);
        assert_eq!(polynomial_from_json(&v).unwrap(), p);
        assert_eq!(polynomial_from_json(&json!([2, -4, 1])).unwrap(), p);
    }

    #[test]
    fn network_round_trip() {
        use crate::algebra::scalar::gauss;
        let net = Network::new(
            3,
            2,
            vec![Edge::new(0, 2, gauss(qi(1), q(1, 2))), Edge::new(2, 1, gauss(qi(2), qi(0)))],
        )
        .unwrap()
        .with_embedding(Embedding {
            rotation: vec![vec![0], vec![1], vec![1, 0]],
        })
        .unwrap();
        let v = network_to_json(&net);
        assert_eq!(network_from_json::<GaussianRational>(&v).unwrap(), net);
        let plain = json!({"n": 2, "b": 2, "edges": [{"u": 0, "v": 1, "c": "3/2"}]});
        let r: Network<Rational> = network_from_json(&plain).unwrap();
        assert_eq!(r.edges()[0].c, q(3, 2));
        let g: Network<GaussianRational> = network_from_json(&plain).unwrap();
        assert_eq!(g.edges()[0].c.re, q(3, 2));
        assert!(network_from_json::<Rational>(&json!({"n": 2, "b": 2})).is_err());
    }

    #[test]
    fn tiling_round_trip() {
        use crate::synthesis::decide_square;
        use crate::tiling::tiling_for_verdict;
        let verdict = decide_square(&Polynomial::from_i64(&[2, -4, 1])).unwrap();
        let t = tiling_for_verdict(&verdict).unwrap();
        let v = tiling_to_json(&t);
        let back = tiling_from_json(&v).unwrap();
        assert_eq!(back.tiles, t.tiles);
        assert_eq!(back.region, t.region);
        assert_eq!(tiling_to_json(&back), v);
        let vj = verdict_to_json(&verdict);
        assert_eq!(vj["d"], json!([{"num": "1", "den": "4"}, {"num": "2", "den": "1"}]));
    }

    #[test]
    fn polygon_and_sides() {
        let p = OrthogonalPolygon::from_i64(&[(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]).unwrap();
        let v = polygon_to_json(&p);
        assert_eq!(polygon_from_json(&v).unwrap(), p);
        let s = crate::polygon::extract_sides(&p);
        assert_eq!(sides_from_json(&sides_to_json(&s)).unwrap(), s);
        assert!(polygon_from_json(&json!({"vertices": [[0, 0], [1, 1], [0, 1]]})).is_err());
    }
}

//! Subcommand dispatch. Each command is a pure function of the input text and
//! the options.

use rectcircuit::algebra::{GaussianRational, NumberFieldElement, Polynomial, Rational};
use rectcircuit::circuit::{conductance, response, solve, Network};
use rectcircuit::io::{self, JsonScalar};
use rectcircuit::polygon::omega_check;
use rectcircuit::synthesis::{decide_self_similar, decide_square, TilingVerdict};
use rectcircuit::tiling::{network_to_tiling_at, tiling_for_verdict, tiling_to_network, validate};
use rectcircuit::tomography::realize_response_b3;
use rectcircuit::walks::{escape_probability, simulate_walk, MarkovChain};
use serde_json::{json, Map, Value};

use crate::render;
use crate::{Command, Options};

pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Debug)]
pub enum CliError {
    /// Exit 2.
    Malformed(String),
    /// Exit 1.
    Domain(String),
    /// Exit 1, still writing a report.
    Failed { output: Option<String>, message: String },
}

fn malformed(e: serde_json::Error) -> CliError {
    if e.line() > 0 {
        CliError::Malformed(format!("line {}, column {}: {e}", e.line(), e.column()))
    } else {
        CliError::Malformed(e.to_string())
    }
}

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Rational,
    Gaussian,
    Field,
}

/// Scalar type of a network document: number-field when it carries a
/// `"field"`, Gaussian when any conductance has `"re"`/`"im"`.
fn network_kind(doc: &Value) -> Kind {
    if doc.get("field").is_some_and(|f| !f.is_null()) {
        return Kind::Field;
    }
    let complex = doc
        .get("edges")
        .and_then(Value::as_array)
        .is_some_and(|es| {
            es.iter()
                .any(|e| e.get("c").is_some_and(|c| c.get("re").is_some() || c.get("im").is_some()))
        });
    if complex {
        Kind::Gaussian
    } else {
        Kind::Rational
    }
}

fn solve_doc<S: JsonScalar>(doc: &Value) -> Result<Value, CliError> {
    let net: Network<S> = io::network_from_json(doc).map_err(malformed)?;
    let field = io::document_field(doc).map_err(malformed)?;
    let u: Vec<S> = match doc.get("voltages") {
        Some(v) => io::scalars_from_json(v, field.as_ref()).map_err(malformed)?,
        None => return Err(CliError::Malformed("missing field \"voltages\"".into())),
    };
    let sol = solve(&net, &u).map_err(domain)?;
    Ok(io::solution_to_json(&sol))
}

fn response_doc<S: JsonScalar>(doc: &Value) -> Result<Value, CliError> {
    let net: Network<S> = io::network_from_json(doc).map_err(malformed)?;
    let c = response(&net).map_err(domain)?;
    let mut m = Map::new();
    if let Some(f) = doc.get("field") {
        m.insert("field".into(), f.clone());
    }
    m.insert("response".into(), io::matrix_to_json(&c));
    Ok(Value::Object(m))
}

fn conductance_doc<S: JsonScalar>(doc: &Value) -> Result<Value, CliError> {
    let net: Network<S> = io::network_from_json(doc).map_err(malformed)?;
    let c = conductance(&net).map_err(domain)?;
    let mut m = Map::new();
    if let Some(f) = doc.get("field") {
        m.insert("field".into(), f.clone());
    }
    m.insert("conductance".into(), c.to_json());
    Ok(Value::Object(m))
}

fn topology<S: JsonScalar>(doc: &Value) -> Result<(usize, usize, Vec<(usize, usize)>), CliError> {
    let net: Network<S> = io::network_from_json(doc).map_err(malformed)?;
    Ok((net.n(), net.b(), net.edges().iter().map(|e| (e.u, e.v)).collect()))
}

macro_rules! by_kind {
    ($f:ident, $doc:expr) => {
        match network_kind($doc) {
            Kind::Rational => $f::<Rational>($doc),
            Kind::Gaussian => $f::<GaussianRational>($doc),
            Kind::Field => $f::<NumberFieldElement>($doc),
        }
    };
}

/// A bare coefficient array or `{"polynomial": [...]}`.
fn polynomial_of(doc: &Value, opts: &Options) -> Result<Polynomial, CliError> {
    let v = if doc.is_array() {
        doc
    } else {
        doc.get("polynomial")
            .ok_or_else(|| CliError::Malformed("expected a coefficient array or {\"polynomial\": [...]}".into()))?
    };
    let p = io::polynomial_from_json(v).map_err(malformed)?;
    if let (Some(max), Some(d)) = (opts.max_degree, p.degree()) {
        if d > max {
            return Err(CliError::Domain(format!("degree {d} exceeds --max-degree {max}")));
        }
    }
    Ok(p)
}

fn verdict_of(doc: &Value, self_similar: bool, opts: &Options) -> Result<TilingVerdict, CliError> {
    let p = polynomial_of(doc, opts)?;
    let decided = if self_similar {
        decide_self_similar(&p)
    } else {
        decide_square(&p)
    };
    decided.map_err(domain)
}

pub fn run(cmd: Command, text: &str, opts: &Options) -> Result<String, CliError> {
    let doc: Value = serde_json::from_str(text).map_err(malformed)?;
    if cmd == Command::Render {
        return if doc.get("tiles").is_some() {
            let t = io::tiling_from_json(&doc).map_err(malformed)?;
            Ok(render::tiling_svg(&t, opts.scale))
        } else {
            let (n, b, edges) = by_kind!(topology, &doc)?;
            Ok(render::network_svg(n, b, &edges, opts.scale))
        };
    }
    let out = match cmd {
        Command::Solve => by_kind!(solve_doc, &doc)?,
        Command::Response => by_kind!(response_doc, &doc)?,
        Command::Conductance => by_kind!(conductance_doc, &doc)?,
        Command::DecideSquare => io::verdict_to_json(&verdict_of(&doc, false, opts)?),
        Command::DecideSelfSimilar => io::verdict_to_json(&verdict_of(&doc, true, opts)?),
        Command::Tile => {
            let self_similar = match doc.get("kind").and_then(Value::as_str) {
                None | Some("square") => false,
                Some("self-similar") => true,
                Some(k) => return Err(CliError::Malformed(format!("unknown kind {k:?}"))),
            };
            let v = verdict_of(&doc, self_similar, opts)?;
            if !v.tileable {
                return Err(CliError::Failed {
                    output: Some(pretty(&io::verdict_to_json(&v))),
                    message: format!("not tileable: {}", v.reason().unwrap_or_default()),
                });
            }
            io::tiling_to_json(&tiling_for_verdict(&v).map_err(domain)?)
        }
        Command::Net2tile => {
            let net: Network<NumberFieldElement> = io::network_from_json(&doc).map_err(malformed)?;
            let field = io::document_field(&doc).map_err(malformed)?;
            let u: Vec<NumberFieldElement> = io::scalars_from_json(
                doc.get("voltages")
                    .ok_or_else(|| CliError::Malformed("missing field \"voltages\"".into()))?,
                field.as_ref(),
            )
            .map_err(malformed)?;
            let min_x = match doc.get("min_x") {
                Some(x) => NumberFieldElement::from_json(x, field.as_ref()).map_err(malformed)?,
                None => NumberFieldElement::rational(Rational::from_integer(0.into())),
            };
            io::tiling_to_json(&network_to_tiling_at(&net, &u, &min_x).map_err(domain)?)
        }
        Command::Tile2net => {
            let t = io::tiling_from_json(&doc).map_err(malformed)?;
            let tn = tiling_to_network(&t).map_err(domain)?;
            let mut v = io::network_to_json(&tn.network);
            let m = v.as_object_mut().expect("network json is an object");
            if let Some(f) = &t.field {
                m.insert("field".into(), io::field_to_json(f));
            }
            m.insert("voltages".into(), io::scalars_to_json(&tn.voltages));
            m.insert("currents".into(), io::scalars_to_json(&tn.currents));
            m.insert("heights".into(), io::scalars_to_json(&tn.heights));
            v
        }
        Command::Validate => {
            let t = io::tiling_from_json(&doc).map_err(malformed)?;
            let report = validate(&t);
            let v = io::validation_to_json(&report);
            if let Some(bad) = &report.violation {
                return Err(CliError::Failed {
                    output: Some(pretty(&v)),
                    message: format!("invalid tiling: {bad}"),
                });
            }
            v
        }
        Command::OmegaCheck => {
            let m = doc.get("response").unwrap_or(&doc);
            let c: Vec<Vec<Rational>> = io::matrix_from_json(m, None).map_err(malformed)?;
            io::omega_report_to_json(&omega_check(&c))
        }
        Command::RealizeB3 => {
            let m = doc.get("response").unwrap_or(&doc);
            let c: Vec<Vec<GaussianRational>> = io::matrix_from_json(m, None).map_err(malformed)?;
            let r = realize_response_b3(&c).map_err(domain)?;
            let mut v = io::network_to_json(&r.network);
            let obj = v.as_object_mut().expect("network json is an object");
            obj.insert("branch".into(), json!(format!("{:?}", r.branch)));
            obj.insert("delta".into(), r.delta.as_ref().map_or(Value::Null, io::rational_to_json));
            obj.insert("M".into(), r.m.as_ref().map_or(Value::Null, io::rational_to_json));
            v
        }
        Command::Walk => {
            let net: Network<Rational> = io::network_from_json(&doc).map_err(malformed)?;
            let exact = escape_probability(&net).map_err(domain)?;
            let chain = MarkovChain::from_network(&net, 0, 1).map_err(domain)?;
            let est = simulate_walk(&chain, opts.trials, opts.seed);
            json!({
                "exact": io::rational_to_json(&exact),
                "estimate": est.estimate,
                "radius": est.radius,
                "hits": est.hits,
                "trials": est.trials,
                "seed": est.seed,
                "reversible": chain.is_reversible(),
            })
        }
        Command::Render => unreachable!("handled above"),
    };
    Ok(pretty(&out))
}

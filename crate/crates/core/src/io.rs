//! Text formats for spaces, metrics, digraphs, sublevel functions,
//! simplicial complexes, maps and diagrams.
//!
//! Every loader reports problems as [`Error::Parse`] with a 1-based line.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde_json::{Map, Value};

use crate::complexes::SimplicialComplex;
use crate::error::{Error, Result};
use crate::filtration::{FiniteMetric, WeightedDigraph};
use crate::maps::ContinuousMap;
use crate::persistence::PersistenceDiagram;
use crate::point::PointId;
use crate::space::ClosureSpace;

/// Labels are compared after normalising, so `"3"` and `3` name the same
/// point.
fn id_of(value: &Value) -> Option<PointId> {
    match value {
        Value::Number(n) => n.as_i64().map(PointId::Int),
        Value::String(s) => Some(PointId::parse_token(s)),
        _ => None,
    }
}

/// First line mentioning `needle`, for diagnostics on semantic errors.
fn line_of(text: &str, needle: &str) -> usize {
    text.lines().position(|l| l.contains(needle)).map_or(1, |i| i + 1)
}

fn parse_json(text: &str) -> Result<Value> {
    if text.trim().is_empty() {
        return Err(Error::parse(1, "empty input"));
    }
    serde_json::from_str(text).map_err(|e| Error::parse(e.line().max(1), e.to_string()))
}

/// Re-labels a semantic error with the line where the offending point is
/// first written.
fn locate(text: &str, err: Error) -> Error {
    let (point, keyed) = match &err {
        Error::MissingPoint(p) | Error::DuplicatePoint(p) => (p.to_string(), false),
        Error::NotReflexive(p) | Error::NotContinuous(p) => (p.to_string(), true),
        _ => return err,
    };
    let quoted = format!("\"{point}\"");
    // A closure or map entry is the line where the point is a key.
    let key_line = text.lines().position(|l| {
        l.match_indices(&quoted).any(|(i, _)| l[i + quoted.len()..].trim_start().starts_with(':'))
    });
    let line = match key_line {
        Some(i) if keyed => i + 1,
        _ if text.contains(&quoted) => line_of(text, &quoted),
        _ => line_of(text, &point),
    };
    Error::parse(line, err.to_string())
}

/// `{ "points": [ids], "closure": { id: [ids] } }`. Points without a
/// closure entry get the singleton closure; listed closures must contain
/// their own point.
pub fn parse_space(text: &str) -> Result<ClosureSpace> {
    space_from_json(&parse_json(text)?).map_err(|e| locate(text, e))
}

pub fn space_from_json(value: &Value) -> Result<ClosureSpace> {
    let points = value
        .get("points")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::parse(1, "missing array field 'points'"))?;
    let labels = points
        .iter()
        .map(|p| id_of(p).ok_or_else(|| Error::parse(1, format!("point {p} is neither an integer nor a string"))))
        .collect::<Result<Vec<_>>>()?;
    let empty = Map::new();
    let closure = match value.get("closure") {
        None => &empty,
        Some(v) => v.as_object().ok_or_else(|| Error::parse(1, "'closure' must be an object"))?,
    };
    let mut table: HashMap<PointId, Vec<PointId>> = HashMap::new();
    for (key, members) in closure {
        let list = members
            .as_array()
            .ok_or_else(|| Error::parse(1, format!("closure of {key} must be an array")))?
            .iter()
            .map(|p| id_of(p).ok_or_else(|| Error::parse(1, format!("bad point {p} in closure of {key}"))))
            .collect::<Result<Vec<_>>>()?;
        let id = PointId::parse_token(key);
        if !labels.contains(&id) {
            return Err(Error::MissingPoint(id));
        }
        table.insert(id, list);
    }
    let entries: Vec<(PointId, Vec<PointId>)> = labels
        .iter()
        .map(|l| (l.clone(), table.remove(l).unwrap_or_else(|| vec![l.clone()])))
        .collect();
    ClosureSpace::build(labels, entries)
}

pub fn space_to_json(space: &ClosureSpace) -> Value {
    let mut closure = Map::new();
    for (p, c) in space.closure_table() {
        closure.insert(p.to_string(), serde_json::to_value(c).expect("labels serialise"));
    }
    serde_json::json!({ "points": space.labels(), "closure": closure })
}

fn parse_number(token: &str, line: usize) -> Result<f64> {
    let t = token.trim();
    match t {
        "inf" | "+inf" | "infinity" => Ok(f64::INFINITY),
        _ => t.parse::<f64>().map_err(|_| Error::parse(line, format!("'{t}' is not a number"))),
    }
}

fn csv_rows(text: &str) -> Result<Vec<(usize, Vec<String>)>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(1, |p| p.line() as usize);
            Error::parse(line, e.to_string())
        })?;
        let line = record.position().map_or(1, |p| p.line() as usize);
        if record.iter().all(str::is_empty) {
            continue;
        }
        rows.push((line, record.iter().map(str::to_string).collect()));
    }
    if rows.is_empty() {
        return Err(Error::parse(1, "empty input"));
    }
    Ok(rows)
}

/// Square CSV distance matrix. A first row that is not numeric is taken as
/// the point labels; otherwise points are `0..n`.
pub fn parse_distance_csv(text: &str, pseudo: bool) -> Result<FiniteMetric> {
    let mut rows = csv_rows(text)?;
    let header = rows[0].1.iter().any(|f| f.parse::<f64>().is_err());
    let labels: Vec<PointId> = if header {
        let (_, names) = rows.remove(0);
        names.iter().map(|n| PointId::parse_token(n)).collect()
    } else {
        (0..rows[0].1.len()).map(PointId::from).collect()
    };
    let n = labels.len();
    if rows.len() != n {
        let line = rows.last().map_or(1, |r| r.0);
        return Err(Error::parse(line, format!("expected {n} rows of distances, found {}", rows.len())));
    }
    let mut dist = Vec::with_capacity(n);
    for (line, fields) in &rows {
        if fields.len() != n {
            return Err(Error::parse(*line, format!("expected {n} entries, found {}", fields.len())));
        }
        dist.push(fields.iter().map(|f| parse_number(f, *line)).collect::<Result<Vec<_>>>()?);
    }
    let built = if pseudo {
        FiniteMetric::new_pseudo(labels, dist)
    } else {
        FiniteMetric::new(labels, dist)
    };
    built.map_err(|e| match e {
        Error::Parse { .. } => e,
        other => Error::parse(rows[0].0, other.to_string()),
    })
}

/// Writes a header row unless the points are `0..n`.
pub fn metric_to_csv(metric: &FiniteMetric) -> String {
    let mut out = String::new();
    if metric.labels().iter().enumerate().any(|(i, l)| *l != PointId::from(i)) {
        out = metric.labels().iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        out.push('\n');
    }
    for row in metric.matrix() {
        out.push_str(&row.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    out
}

/// Lines `src dst weight`; a line with a single token declares an isolated
/// point. Blank lines and `#` comments are skipped.
pub fn parse_digraph(text: &str) -> Result<WeightedDigraph> {
    let mut labels: Vec<PointId> = Vec::new();
    let mut index: HashMap<PointId, usize> = HashMap::new();
    let mut edges = Vec::new();
    let mut intern = |p: PointId, labels: &mut Vec<PointId>| {
        *index.entry(p.clone()).or_insert_with(|| {
            labels.push(p);
            labels.len() - 1
        })
    };
    let mut seen = HashMap::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens.as_slice() {
            [p] => {
                intern(PointId::parse_token(p), &mut labels);
            }
            [a, b, w] => {
                let weight = parse_number(w, line)?;
                if !weight.is_finite() || weight < 0.0 {
                    return Err(Error::parse(line, format!("weight {weight} must be finite and non-negative")));
                }
                if a == b {
                    return Err(Error::parse(line, format!("self-loop at {a}")));
                }
                if let Some(first) = seen.insert((a.to_string(), b.to_string()), line) {
                    return Err(Error::parse(line, format!("edge {a} {b} already given on line {first}")));
                }
                let a = intern(PointId::parse_token(a), &mut labels);
                let b = intern(PointId::parse_token(b), &mut labels);
                edges.push((a, b, weight));
            }
            _ => return Err(Error::parse(line, format!("expected 'src dst weight', found '{content}'"))),
        }
    }
    if labels.is_empty() {
        return Err(Error::parse(1, "empty input"));
    }
    WeightedDigraph::new(labels, edges).map_err(|e| Error::parse(1, e.to_string()))
}

/// CSV lines `point,value` with an optional header.
pub fn parse_sublevel_csv(text: &str) -> Result<Vec<(PointId, f64)>> {
    let rows = csv_rows(text)?;
    let mut out = Vec::with_capacity(rows.len());
    for (k, (line, fields)) in rows.iter().enumerate() {
        if fields.len() != 2 {
            return Err(Error::parse(*line, format!("expected 'point,value', found {} fields", fields.len())));
        }
        match fields[1].parse::<f64>() {
            Ok(v) if v.is_finite() => out.push((PointId::parse_token(&fields[0]), v)),
            Err(_) if k == 0 => continue,
            _ => return Err(Error::parse(*line, format!("'{}' is not a finite number", fields[1]))),
        }
    }
    let mut seen = HashMap::new();
    for (k, (p, _)) in out.iter().enumerate() {
        if seen.insert(p.clone(), k).is_some() {
            return Err(Error::parse(line_of(text, &p.to_string()), format!("duplicate value for point {p}")));
        }
    }
    if out.is_empty() {
        return Err(Error::parse(1, "no values"));
    }
    Ok(out)
}

/// One simplex per line, vertices separated by whitespace. Vertices are
/// numbered in order of first appearance. Without `close_downward` the
/// listed simplices must already be closed under faces.
pub fn parse_complex(text: &str, close_downward: bool) -> Result<SimplicialComplex> {
    let mut labels: Vec<PointId> = Vec::new();
    let mut simplices: Vec<Vec<PointId>> = Vec::new();
    for raw in text.lines() {
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let simplex: Vec<PointId> = content.split_whitespace().map(PointId::parse_token).collect();
        for p in &simplex {
            if !labels.contains(p) {
                labels.push(p.clone());
            }
        }
        simplices.push(simplex);
    }
    if simplices.is_empty() {
        return Err(Error::parse(1, "empty input"));
    }
    SimplicialComplex::from_labelled(labels, &simplices, close_downward).map_err(|e| {
        let line = match &e {
            Error::DuplicatePoint(p) => line_of(text, &p.to_string()),
            _ => 1,
        };
        Error::parse(line, e.to_string())
    })
}

pub fn complex_to_text(complex: &SimplicialComplex) -> String {
    let mut simplices = complex.labelled_simplices();
    simplices.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    simplices
        .iter()
        .map(|s| s.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ") + "\n")
        .collect()
}

/// `{ source_point: target_point, … }` covering every source point.
pub fn parse_map(text: &str, source: Arc<ClosureSpace>, target: Arc<ClosureSpace>) -> Result<ContinuousMap> {
    let value = parse_json(text)?;
    let object = value.as_object().ok_or_else(|| Error::parse(1, "a map is a JSON object"))?;
    let pairs = object
        .iter()
        .map(|(k, v)| {
            let y = id_of(v).ok_or_else(|| Error::parse(line_of(text, k), format!("bad image {v} for {k}")))?;
            Ok((PointId::parse_token(k), y))
        })
        .collect::<Result<Vec<_>>>()?;
    ContinuousMap::from_labels(source, target, &pairs).map_err(|e| locate(text, e))
}

pub fn map_to_json(map: &ContinuousMap) -> Value {
    let object: BTreeMap<String, Value> = (0..map.source().len())
        .map(|x| {
            let y = map.target().label(map.apply(x));
            (map.source().label(x).to_string(), serde_json::to_value(y).expect("labels serialise"))
        })
        .collect();
    serde_json::to_value(object).expect("map serialises")
}

/// One diagram object or an array of them.
pub fn parse_diagrams(text: &str) -> Result<Vec<PersistenceDiagram>> {
    let value = parse_json(text)?;
    match &value {
        Value::Array(items) => items.iter().map(PersistenceDiagram::from_json).collect(),
        _ => Ok(vec![PersistenceDiagram::from_json(&value)?]),
    }
}

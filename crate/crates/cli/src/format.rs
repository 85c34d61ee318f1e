//! JSON file formats.
//!
//! Coordinates are exact: integers are written as JSON numbers, everything
//! else as `"p/q"` strings. On input decimal strings and JSON numbers with a
//! fractional part are also accepted and read exactly as written.

use std::path::Path;

use mutvis_core::geometry::{Point, Rational, Segment};
use mutvis_core::instance::{Instance, Robot};
use mutvis_core::polygon::SimplePolygon;
use mutvis_core::scheduler::{CaseTag, Schedule, Trajectory};
use serde_json::{json, Value};

use crate::CliError;

pub fn rational_to_json(r: &Rational) -> Value {
    if r.is_integer() {
        if let Ok(v) = r.numer().to_string().parse::<i64>() {
            return Value::from(v);
        }
    }
    Value::String(r.to_string())
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.')?;
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int}{frac}");
    let digits = if digits.is_empty() {
        "0".to_string()
    } else {
        digits
    };
    let den = format!("1{}", "0".repeat(frac.len()));
    let r: Rational = format!("{digits}/{den}").parse().ok()?;
    Some(if neg { -r } else { r })
}

pub fn rational_from_json(v: &Value) -> Result<Rational, CliError> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.trim().to_string(),
        other => return Err(CliError::parse(format!("expected a number, got {other}"))),
    };
    if let Ok(r) = text.parse::<Rational>() {
        return Ok(r);
    }
    parse_decimal(&text).ok_or_else(|| CliError::parse(format!("not an exact number: {text:?}")))
}

pub fn point_to_json(p: &Point) -> Value {
    json!([rational_to_json(p.x()), rational_to_json(p.y())])
}

pub fn point_from_json(v: &Value) -> Result<Point, CliError> {
    match v.as_array().map(Vec::as_slice) {
        Some([x, y]) => Ok(Point::new(rational_from_json(x)?, rational_from_json(y)?)),
        _ => Err(CliError::parse(format!("expected [x, y], got {v}"))),
    }
}

pub fn segment_to_json(s: &Segment) -> Value {
    json!({ "a": point_to_json(&s.a), "b": point_to_json(&s.b) })
}

pub fn segment_from_json(v: &Value) -> Result<Segment, CliError> {
    Ok(Segment::new(
        point_from_json(field(v, "a")?)?,
        point_from_json(field(v, "b")?)?,
    ))
}

fn field<'v>(v: &'v Value, key: &str) -> Result<&'v Value, CliError> {
    v.get(key)
        .ok_or_else(|| CliError::parse(format!("missing field {key:?}")))
}

fn array<'v>(v: &'v Value, key: &str) -> Result<&'v Vec<Value>, CliError> {
    field(v, key)?
        .as_array()
        .ok_or_else(|| CliError::parse(format!("field {key:?} must be an array")))
}

fn points(vs: &[Value]) -> Result<Vec<Point>, CliError> {
    vs.iter().map(point_from_json).collect()
}

pub fn instance_to_json(inst: &Instance) -> Value {
    let robots: Vec<Value> = inst
        .robots()
        .iter()
        .map(|r| json!({ "start": point_to_json(&r.start), "target": point_to_json(&r.target) }))
        .collect();
    json!({
        "polygon": inst.polygon().vertices().iter().map(point_to_json).collect::<Vec<_>>(),
        "S": segment_to_json(inst.start_segment()),
        "T": segment_to_json(inst.target_segment()),
        "robots": robots,
    })
}

pub fn instance_from_json(v: &Value) -> Result<Instance, CliError> {
    let polygon = points(array(v, "polygon")?)?;
    let s = segment_from_json(field(v, "S")?)?;
    let t = segment_from_json(field(v, "T")?)?;
    let robots = array(v, "robots")?
        .iter()
        .map(|r| {
            Ok(Robot {
                start: point_from_json(field(r, "start")?)?,
                target: point_from_json(field(r, "target")?)?,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let poly = SimplePolygon::new(polygon).map_err(|e| CliError::Invalid(e.to_string()))?;
    Instance::new(poly, s, t, robots).map_err(|e| CliError::Invalid(e.to_string()))
}

/// Contents of a solution file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionFile {
    pub schedule: Schedule,
    pub trajectories: Vec<Trajectory>,
    pub m: usize,
}

impl SolutionFile {
    pub fn steps(&self) -> usize {
        self.schedule.steps()
    }
}

pub fn solution_to_json(sol: &SolutionFile) -> Value {
    json!({
        "sweeps": sol.schedule.sweeps.iter().map(segment_to_json).collect::<Vec<_>>(),
        "case_tags": sol.schedule.case_tags.iter().map(|t| t.as_str()).collect::<Vec<_>>(),
        "trajectories": sol
            .trajectories
            .iter()
            .map(|t| t.waypoints.iter().map(point_to_json).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "meta": { "steps": sol.steps(), "n": sol.trajectories.len(), "m": sol.m },
    })
}

pub fn solution_from_json(v: &Value) -> Result<SolutionFile, CliError> {
    let sweeps = array(v, "sweeps")?
        .iter()
        .map(segment_from_json)
        .collect::<Result<Vec<_>, _>>()?;
    let case_tags = array(v, "case_tags")?
        .iter()
        .map(|t| {
            t.as_str()
                .and_then(CaseTag::parse)
                .ok_or_else(|| CliError::parse(format!("unknown case tag {t}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let trajectories = array(v, "trajectories")?
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let wp = t
                .as_array()
                .ok_or_else(|| CliError::parse("trajectory must be an array of points"))?;
            Ok(Trajectory {
                robot_index: i,
                waypoints: points(wp)?,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let meta = field(v, "meta")?;
    let count = |key| {
        field(meta, key)?
            .as_u64()
            .map(|x| x as usize)
            .ok_or_else(|| CliError::parse(format!("meta.{key} must be a non-negative integer")))
    };
    let (steps, n, m) = (count("steps")?, count("n")?, count("m")?);
    if sweeps.is_empty() || steps + 1 != sweeps.len() || case_tags.len() != steps {
        return Err(CliError::parse("sweeps, case_tags and meta.steps disagree"));
    }
    if n != trajectories.len() {
        return Err(CliError::parse(
            "meta.n does not match the trajectory count",
        ));
    }
    Ok(SolutionFile {
        schedule: Schedule { sweeps, case_tags },
        trajectories,
        m,
    })
}

pub fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))
}

pub fn read_instance(path: &Path) -> Result<Instance, CliError> {
    instance_from_json(&read_json(path)?)
}

pub fn read_solution(path: &Path) -> Result<SolutionFile, CliError> {
    solution_from_json(&read_json(path)?)
}

/// Indented JSON with arrays of scalars kept on one line, plus a newline.
pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out.push('\n');
    out
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|x| !x.is_array() && !x.is_object()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = |d: usize| "  ".repeat(d);
    match v {
        _ if is_flat(v) => out.push_str(&v.to_string()),
        Value::Array(items) => {
            out.push('[');
            for (i, x) in items.iter().enumerate() {
                out.push_str(if i == 0 { "\n" } else { ",\n" });
                out.push_str(&pad(depth + 1));
                write_value(out, x, depth + 1);
            }
            out.push('\n');
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push('{');
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(if i == 0 { "\n" } else { ",\n" });
                out.push_str(&pad(depth + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(out, x, depth + 1);
            }
            out.push('\n');
            out.push_str(&pad(depth));
            out.push('}');
        }
        _ => unreachable!(),
    }
}

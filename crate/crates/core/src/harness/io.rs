//! JSON and CSV formats: curves, point sets, configs, scenarios, isometries
//! and run reports.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{HarnessError, Regime, RunReport, Scenario, Template};
use crate::algebra::scalar::parse_rational;
use crate::algebra::{parse_poly_in, Scalar};
use crate::curves::{generate_points, xy, CurveFamily, Family, PlaneCurve, Point, PointSet, Sampling};
use crate::elekes::Config;
use crate::symmetry::{Isometry, SymmetryList};

fn bad(msg: impl Into<String>) -> HarnessError {
    HarnessError::Input(msg.into())
}

/// A coordinate: integer, `"p/q"` string, or `[num, den]`.
pub fn coord_from_json(v: &Value) -> Result<BigRational, HarnessError> {
    let int = |v: &Value| -> Option<BigInt> {
        match v {
            Value::Number(n) => n.as_i64().map(BigInt::from),
            Value::String(s) => s.trim().parse().ok(),
            _ => None,
        }
    };
    match v {
        Value::Number(_) => int(v).map(BigRational::from_integer).ok_or_else(|| bad(format!("coordinate {v} is not an integer"))),
        Value::String(s) => parse_rational(s).ok_or_else(|| bad(format!("bad rational literal '{s}'"))),
        Value::Array(a) if a.len() == 2 => {
            let (n, d) = (int(&a[0]), int(&a[1]));
            match (n, d) {
                (Some(n), Some(d)) if !d.is_zero() => Ok(BigRational::new(n, d)),
                _ => Err(bad(format!("bad [num, den] pair {v}"))),
            }
        }
        _ => Err(bad(format!("unrecognized coordinate {v}"))),
    }
}

fn int_json(n: &BigInt) -> Value {
    n.to_i64().map_or_else(|| Value::String(n.to_string()), Value::from)
}

/// An integer when the value is one (a string beyond 64 bits), otherwise
/// `"p/q"`.
pub fn coord_to_json(q: &BigRational) -> Value {
    if q.is_integer() {
        int_json(q.numer())
    } else {
        Value::String(q.to_string())
    }
}

pub fn point_from_json(v: &Value) -> Result<Point, HarnessError> {
    match v {
        Value::Array(a) if a.len() == 2 => Ok(Point::from_rationals(coord_from_json(&a[0])?, coord_from_json(&a[1])?)),
        _ => Err(bad(format!("a point is a two-element array, got {v}"))),
    }
}

pub fn point_to_json(p: &Point) -> Value {
    let c = |s: &Scalar| s.as_rational().map_or_else(|| scalar_to_json(s), coord_to_json);
    json!([c(&p.x), c(&p.y)])
}

/// `"p/q"`, or `{"a", "b", "k"}` for `a + b·√k`.
pub fn scalar_to_json(s: &Scalar) -> Value {
    match s.radicand() {
        None => Value::String(s.to_string()),
        Some(k) => json!({
            "a": Scalar::from_rational(s.rational_part().clone()).to_string(),
            "b": Scalar::from_rational(s.surd_coeff()).to_string(),
            "k": int_json(k),
        }),
    }
}

pub fn isometry_to_json(t: &Isometry) -> Value {
    let m = t.matrix();
    let tr = t.translation();
    json!({
        "matrix": [[scalar_to_json(&m[0][0]), scalar_to_json(&m[0][1])], [scalar_to_json(&m[1][0]), scalar_to_json(&m[1][1])]],
        "translation": [scalar_to_json(&tr[0]), scalar_to_json(&tr[1])],
        "kind": t.kind().name(),
    })
}

pub fn symmetries_to_json(list: &SymmetryList) -> Value {
    match list {
        SymmetryList::Finite { group, unrepresentable } => json!({
            "finite": group.iter().map(isometry_to_json).collect::<Vec<_>>(),
            "unrepresentable": unrepresentable.iter().map(|u| u.to_string()).collect::<Vec<_>>(),
        }),
        SymmetryList::InfiniteFamily { kind, description } => json!({
            "infinite": format!("{kind:?}").to_lowercase(),
            "description": description,
        }),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurveJson {
    pub poly: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub irreducible: Option<bool>,
    /// A rational point, needed to generate points on a conic.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<Value>,
}

/// A curve given as JSON or as a bare polynomial string.
pub fn curve_from_value(v: &Value) -> Result<(PlaneCurve, Option<Point>), HarnessError> {
    let cj: CurveJson = match v {
        Value::String(s) => CurveJson { poly: s.clone(), family: None, irreducible: None, point: None },
        _ => serde_json::from_value(v.clone()).map_err(|e| bad(format!("curve: {e}")))?,
    };
    let poly = parse_poly_in(&cj.poly, xy())?;
    let mut c = PlaneCurve::from_poly(poly)?;
    if let Some(f) = &cj.family {
        if f != c.family().name() {
            return Err(bad(format!("curve '{}' is a {}, not a {f}", cj.poly, c.family().name())));
        }
    }
    if let Some(flag) = cj.irreducible {
        c = c.with_irreducible(flag);
    }
    let point = cj.point.as_ref().map(point_from_json).transpose()?;
    Ok((c, point))
}

pub fn curve_to_json(c: &PlaneCurve) -> Value {
    json!({"poly": c.poly().to_string(), "family": c.family().name(), "irreducible": c.irreducible()})
}

/// A generating family for the curve's rational points.
pub fn family_of(c: &PlaneCurve, base: Option<&Point>) -> Result<CurveFamily, HarnessError> {
    let q = |s: &Scalar| s.as_rational().cloned().ok_or_else(|| bad("curve coefficients must be rational"));
    match c.family() {
        Family::Line => {
            let (a, b, cc) = c.line_coeffs().expect("line");
            Ok(CurveFamily::Line { a: q(&a)?, b: q(&b)?, c: q(&cc)? })
        }
        Family::Circle => {
            let (o, r2) = c.circle().expect("circle");
            let r = Scalar::sqrt_rational(&q(&r2)?)?;
            let r = r.as_rational().cloned().ok_or_else(|| bad(format!("circle radius² {r2} is not a rational square")))?;
            Ok(CurveFamily::Circle { center: (q(&o.x)?, q(&o.y)?), radius: r })
        }
        Family::Graph(p) => Ok(CurveFamily::Graph(p.clone())),
        Family::Conic => {
            let p = base.ok_or_else(|| bad("points on a conic need a rational base point (\"point\")"))?;
            Ok(CurveFamily::Conic { poly: c.poly().clone(), point: (q(&p.x)?, q(&p.y)?) })
        }
        Family::General => Err(bad("cannot generate points on a general curve; list them explicitly")),
    }
}

pub fn sampling_from_json(v: Option<&Value>, seed: u64) -> Result<Sampling, HarnessError> {
    let Some(v) = v else {
        return Ok(Sampling::Arithmetic { start: BigRational::one(), step: BigRational::one() });
    };
    let obj = v.as_object().filter(|o| o.len() == 1).ok_or_else(|| bad("sampling is an object with one key"))?;
    let (k, body) = obj.iter().next().unwrap();
    match k.as_str() {
        "arithmetic" => Ok(Sampling::Arithmetic {
            start: body.get("start").map(coord_from_json).transpose()?.unwrap_or_else(BigRational::one),
            step: body.get("step").map(coord_from_json).transpose()?.unwrap_or_else(BigRational::one),
        }),
        "explicit" => {
            let ts = body.as_array().ok_or_else(|| bad("explicit sampling takes an array"))?;
            Ok(Sampling::Explicit(ts.iter().map(coord_from_json).collect::<Result<_, _>>()?))
        }
        "random" => {
            let get = |name: &str, default: i64| body.get(name).and_then(Value::as_i64).unwrap_or(default);
            Ok(Sampling::Random { seed, bound: get("bound", 100), max_den: get("max_den", 1) })
        }
        other => Err(bad(format!("unknown sampling '{other}'"))),
    }
}

/// Explicit points (array) or `{"count": n, "sampling": …}`.
pub fn points_from_value(v: &Value, curve: &PlaneCurve, base: Option<&Point>, seed: u64) -> Result<PointSet, HarnessError> {
    match v {
        Value::Array(a) => {
            let pts = a.iter().map(point_from_json).collect::<Result<Vec<_>, _>>()?;
            Ok(PointSet::from_points(curve.clone(), pts)?)
        }
        Value::Object(o) => {
            let count = o.get("count").and_then(Value::as_u64).ok_or_else(|| bad("generated points need \"count\""))?;
            let sampling = sampling_from_json(o.get("sampling"), seed)?;
            let fam = family_of(curve, base)?;
            let ps = generate_points(&fam, count as usize, &sampling)?;
            // keep the caller's curve (and irreducibility flag)
            Ok(ps.remap(curve.clone(), |p| p.clone())?)
        }
        _ => Err(bad("a points spec is an array of points or a generator object")),
    }
}

pub fn points_to_json(s: &PointSet) -> Value {
    Value::Array(s.coords().map(point_to_json).collect())
}

/// `{"c1", "c2", "s1", "s2", "seed"}`; without `s2` the single set `s1`
/// on `c1` is split in two.
pub fn config_from_json(text: &str) -> Result<(Config, u64), HarnessError> {
    let v: Value = serde_json::from_str(text).map_err(|e| bad(format!("config: {e}")))?;
    let seed = v.get("seed").and_then(Value::as_u64).unwrap_or(0);
    let field = |k: &str| v.get(k).ok_or_else(|| bad(format!("config is missing \"{k}\"")));
    let (c1, b1) = curve_from_value(field("c1")?)?;
    let s1 = points_from_value(field("s1")?, &c1, b1.as_ref(), seed)?;
    match v.get("s2") {
        None => Ok((Config::same_curve(&s1), seed)),
        Some(s2v) => {
            let (c2, b2) = match v.get("c2") {
                Some(c) => curve_from_value(c)?,
                None => (c1.clone(), b1.clone()),
            };
            let s2 = points_from_value(s2v, &c2, b2.as_ref(), seed.wrapping_add(1))?;
            Ok((Config::new(s1, s2), seed))
        }
    }
}

pub fn config_to_json(c: &Config, seed: u64) -> Value {
    json!({
        "c1": curve_to_json(c.c1()),
        "c2": curve_to_json(c.c2()),
        "s1": points_to_json(c.s1()),
        "s2": points_to_json(c.s2()),
        "seed": seed,
    })
}

pub fn scenario_from_json(text: &str) -> Result<Scenario, HarnessError> {
    let v: Value = serde_json::from_str(text).map_err(|e| bad(format!("scenario: {e}")))?;
    let name = v.get("name").and_then(Value::as_str).ok_or_else(|| bad("scenario needs a \"name\""))?.to_string();
    let seed = v.get("seed").and_then(Value::as_u64).unwrap_or(0);
    let regime = match v.get("regime").and_then(Value::as_str) {
        Some("exceptional-linear") => Regime::ExceptionalLinear,
        Some("superlinear") => Regime::Superlinear,
        other => return Err(bad(format!("regime must be exceptional-linear or superlinear, got {other:?}"))),
    };
    let ladder = v
        .get("ladder")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("scenario needs a \"ladder\" of [m, n] sizes"))?
        .iter()
        .map(|e| match e.as_array().map(|a| (a.first().and_then(Value::as_u64), a.get(1).and_then(Value::as_u64))) {
            Some((Some(m), Some(n))) => Ok((m as usize, n as usize)),
            _ => Err(bad(format!("ladder entry {e} is not [m, n]"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let t = v.get("template").ok_or_else(|| bad("scenario needs a \"template\""))?;
    let sampling = t.get("sampling").cloned();
    let template = if let Some(c) = t.get("curve") {
        let (curve, base) = curve_from_value(c)?;
        Template::OneCurve { curve, base, sampling }
    } else {
        let (c1, b1) = curve_from_value(t.get("c1").ok_or_else(|| bad("template needs \"curve\" or \"c1\"/\"c2\""))?)?;
        let (c2, b2) = curve_from_value(t.get("c2").ok_or_else(|| bad("template needs \"c2\""))?)?;
        Template::TwoCurves { c1, b1, c2, b2, sampling }
    };
    Scenario::new(name, template, ladder, seed, regime)
}

pub const CSV_HEADER: [&str; 8] = ["m", "n", "|D|", "|Q|", "bound", "I", "classes", "gamma0_size"];

pub fn report_to_csv(r: &RunReport) -> Result<String, HarnessError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| HarnessError::Io(e.to_string());
    w.write_record(CSV_HEADER).map_err(io)?;
    let opt = |v: Option<String>| v.unwrap_or_default();
    for row in &r.rows {
        w.write_record([
            row.m.to_string(),
            row.n.to_string(),
            row.distinct.to_string(),
            row.quadruples.to_string(),
            row.bound.clone(),
            opt(row.incidences.map(|v| v.to_string())),
            opt(row.classes.map(|v| v.to_string())),
            opt(row.gamma0_size.map(|v| v.to_string())),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| HarnessError::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("ascii"))
}

pub fn report_to_json(r: &RunReport) -> String {
    serde_json::to_string_pretty(r).expect("serializable") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::rat;

    #[test]
    fn coordinates() {
        assert_eq!(coord_from_json(&json!(3)).unwrap(), rat(3, 1));
        assert_eq!(coord_from_json(&json!("-2/6")).unwrap(), rat(-1, 3));
        assert_eq!(coord_from_json(&json!([4, 10])).unwrap(), rat(2, 5));
        assert!(coord_from_json(&json!([1, 0])).is_err());
        assert_eq!(coord_to_json(&rat(-2, 5)), json!("-2/5"));
        assert_eq!(coord_to_json(&rat(7, 1)), json!(7));
        let big = BigRational::from_integer(BigInt::from(1u8) << 80u32);
        assert_eq!(coord_from_json(&coord_to_json(&big)).unwrap(), big);
    }

    #[test]
    fn scalars_and_isometries() {
        assert_eq!(scalar_to_json(&Scalar::from_ratio(3, 5)), json!("3/5"));
        let s = Scalar::quadratic(rat(1, 2), rat(-1, 2), BigInt::from(3)).unwrap();
        assert_eq!(scalar_to_json(&s), json!({"a": "1/2", "b": "-1/2", "k": 3}));
        let t = Isometry::new(Scalar::zero(), Scalar::one(), 1, [Scalar::from_int(1), Scalar::zero()]).unwrap();
        let v = isometry_to_json(&t);
        assert_eq!(v["kind"], json!("rotation"));
        assert_eq!(v["matrix"], json!([["0", "-1"], ["1", "0"]]));
    }

    #[test]
    fn config_roundtrip() {
        let text = r#"{"c1": {"poly": "y - x^2", "family": "graph", "irreducible": true},
                       "c2": "y",
                       "s1": [[0, 0], [[1, 2], "1/4"]],
                       "s2": {"count": 3, "sampling": {"arithmetic": {"start": 2}}},
                       "seed": 9}"#;
        let (c, seed) = config_from_json(text).unwrap();
        assert_eq!((c.m(), c.n(), seed), (2, 3, 9));
        assert_eq!(c.q(0).unwrap(), &Point::from_ints(2, 0));
        let again = config_from_json(&config_to_json(&c, seed).to_string()).unwrap();
        assert_eq!(again.0, c);
    }

    #[test]
    fn family_mismatch_and_missing_fields() {
        assert!(config_from_json(r#"{"c1": {"poly": "y - x^2", "family": "line"}, "s1": []}"#).is_err());
        assert!(config_from_json(r#"{"s1": []}"#).is_err());
        let single = r#"{"c1": "y - x^3", "s1": {"count": 5}}"#;
        let (c, _) = config_from_json(single).unwrap();
        assert_eq!((c.m(), c.n()), (3, 2));
    }
}

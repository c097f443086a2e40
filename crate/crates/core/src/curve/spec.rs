//! JSON curve specification files.
//!
//! ```json
//! {"type": "trigonometric", "m": 3,
//!  "x": {"const": "0", "cos": ["1","0","0"], "sin": ["0","0","0"]}, "y": {...}, "z": {...}}
//! {"type": "binary_forms", "d": 6, "F0": "...", "F1": "...", "F2": "...", "F3": "..."}
//! {"type": "quadric_pencil", "Q1": [[...], ...], "Q2": [[...], ...]}
//! ```
//!
//! Rationals may be JSON integers or strings `"p/q"`.

use serde_json::Value;

use super::{ProjectiveCurve, QuadricPencilSpec, TrigCoordinate, TrigCurveSpec};
use crate::error::{Error, Result};
use crate::polyring::{parse_rational, Polynomial, Rational};

#[derive(Clone, Debug, PartialEq)]
pub enum CurveSpec {
    Trigonometric(TrigCurveSpec),
    BinaryForms(ProjectiveCurve),
    QuadricPencil(QuadricPencilSpec),
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

fn rational(v: &Value, what: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap().into())),
        _ => Err(invalid(format!(
            "{what}: expected a rational as integer or \"p/q\" string"
        ))),
    }
}

fn rational_list(v: Option<&Value>, what: &str) -> Result<Vec<Rational>> {
    match v {
        None => Ok(Vec::new()),
        Some(Value::Array(items)) => items
            .iter()
            .enumerate()
            .map(|(i, x)| rational(x, &format!("{what}[{i}]")))
            .collect(),
        Some(_) => Err(invalid(format!("{what}: expected an array"))),
    }
}

fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| invalid(format!("missing field `{key}`")))
}

fn coordinate(obj: &Value, name: &str, m: usize) -> Result<TrigCoordinate> {
    let c = field(obj, name)?;
    let constant = match c.get("const") {
        Some(v) => rational(v, &format!("{name}.const"))?,
        None => Rational::from_integer(0.into()),
    };
    let pad = |mut v: Vec<Rational>, what: &str| -> Result<Vec<Rational>> {
        if v.len() > m {
            return Err(invalid(format!(
                "{name}.{what} has more than m = {m} entries"
            )));
        }
        v.resize(m, Rational::from_integer(0.into()));
        Ok(v)
    };
    let cos = pad(rational_list(c.get("cos"), &format!("{name}.cos"))?, "cos")?;
    let sin = pad(rational_list(c.get("sin"), &format!("{name}.sin"))?, "sin")?;
    Ok(TrigCoordinate::new(constant, cos, sin))
}

fn matrix(v: &Value, name: &str) -> Result<[[Rational; 4]; 4]> {
    let rows = v
        .as_array()
        .filter(|r| r.len() == 4)
        .ok_or_else(|| invalid(format!("{name}: expected a 4x4 matrix")))?;
    let mut out: [[Rational; 4]; 4] = Default::default();
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .filter(|r| r.len() == 4)
            .ok_or_else(|| invalid(format!("{name}: expected a 4x4 matrix")))?;
        for (j, x) in row.iter().enumerate() {
            out[i][j] = rational(x, &format!("{name}[{i}][{j}]"))?;
        }
    }
    Ok(out)
}

pub fn parse_curve_spec(text: &str) -> Result<CurveSpec> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let kind = field(&v, "type")?
        .as_str()
        .ok_or_else(|| invalid("`type` must be a string"))?;
    match kind {
        "trigonometric" => {
            let m = field(&v, "m")?
                .as_u64()
                .ok_or_else(|| invalid("`m` must be a positive integer"))?
                as usize;
            let coords = [
                coordinate(&v, "x", m)?,
                coordinate(&v, "y", m)?,
                coordinate(&v, "z", m)?,
            ];
            Ok(CurveSpec::Trigonometric(TrigCurveSpec::new(m, coords)?))
        }
        "binary_forms" => {
            let ring = super::binary_ring();
            let mut forms = Vec::with_capacity(4);
            for k in 0..4 {
                let key = format!("F{k}");
                let s = field(&v, &key)?
                    .as_str()
                    .ok_or_else(|| invalid(format!("`{key}` must be a polynomial string")))?;
                forms.push(Polynomial::parse(&ring, s)?);
            }
            let curve = ProjectiveCurve::new(forms.try_into().unwrap())?;
            if let Some(d) = v.get("d") {
                let d = d
                    .as_u64()
                    .ok_or_else(|| invalid("`d` must be an integer"))?;
                if d != curve.degree() as u64 {
                    return Err(Error::DegreeMismatch {
                        expected: d as usize,
                        found: curve.degree() as usize,
                    });
                }
            }
            Ok(CurveSpec::BinaryForms(curve))
        }
        "quadric_pencil" => {
            let q1 = matrix(field(&v, "Q1")?, "Q1")?;
            let q2 = matrix(field(&v, "Q2")?, "Q2")?;
            Ok(CurveSpec::QuadricPencil(QuadricPencilSpec::new(q1, q2)?))
        }
        other => Err(invalid(format!("unknown curve type `{other}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trigonometric_spec() {
        let text = r#"{"type":"trigonometric","m":3,
            "x":{"const":"0","cos":["1","0","0"],"sin":["0","0","0"]},
            "y":{"cos":["0","0","0"],"sin":["0","1","0"]},
            "z":{"const":0,"cos":["0","0","1"]}}"#;
        let CurveSpec::Trigonometric(t) = parse_curve_spec(text).unwrap() else {
            panic!("wrong kind");
        };
        assert_eq!(t.degree(), 6);
        assert_eq!(t.coordinates()[2].cos[2], Rational::from_integer(1.into()));
    }

    #[test]
    fn binary_forms_with_degree_check() {
        let text = r#"{"type":"binary_forms","d":3,"F0":"x0^3","F1":"x0^2*x1","F2":"x0*x1^2","F3":"x1^3"}"#;
        assert!(matches!(
            parse_curve_spec(text).unwrap(),
            CurveSpec::BinaryForms(_)
        ));
        let wrong = text.replace("\"d\":3", "\"d\":4");
        assert!(matches!(
            parse_curve_spec(&wrong),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn pencil_spec_and_errors() {
        let text = r#"{"type":"quadric_pencil",
            "Q1":[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,-1]],
            "Q2":[["1","0","0","0"],["0","2","0","0"],["0","0","3","0"],["0","0","0","-1"]]}"#;
        assert!(matches!(
            parse_curve_spec(text).unwrap(),
            CurveSpec::QuadricPencil(_)
        ));
        assert!(matches!(
            parse_curve_spec("{\"type\":"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_curve_spec("{\"type\":\"spiral\"}"),
            Err(Error::Invalid(_))
        ));
    }
}

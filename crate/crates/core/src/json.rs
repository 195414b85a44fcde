//! JSON encodings of reports and inputs.
//!
//! Rationals are `"num/den"` strings, polynomials are canonical strings with
//! descending exponents and no spaces, and objects serialize with sorted keys.

use phantom_arith::{
    format_rational, parse_rational, BigRational, Fp, MultiPoly, QPoly, RatMatrix,
};
use serde_json::{json, Map, Value};

use crate::honda_tate::{PhantomDecision, SimpleIsogenyClass};
use crate::projector::{LefschetzData, PolarizedPair};
use crate::quadric::SymmetricFormMatrix;
use crate::weil::Polygon;
use crate::{CoreError, Result};

fn invalid(msg: impl Into<String>) -> CoreError {
    CoreError::Invalid(msg.into())
}

pub fn rational(x: &BigRational) -> Value {
    Value::String(format_rational(x))
}

/// Canonical compact form of a polynomial in `T`.
pub fn poly_string(f: &QPoly) -> String {
    f.to_string().replace(' ', "")
}

pub fn poly(f: &QPoly) -> Value {
    Value::String(poly_string(f))
}

pub fn polygon(p: &Polygon) -> Value {
    json!({
        "vertices": p.vertices.iter().map(|(x, y)| json!([rational(x), rational(y)])).collect::<Vec<_>>(),
        "slopes": p.slopes.iter().map(|(s, l)| json!([rational(s), rational(l)])).collect::<Vec<_>>(),
    })
}

pub fn matrix(m: &RatMatrix) -> Value {
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": (0..m.rows()).map(|i| m.row(i).iter().map(rational).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

fn rational_value(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => Ok(parse_rational(s)?),
        Value::Number(n) if n.is_i64() => Ok(BigRational::from_integer(
            n.as_i64().expect("checked").into(),
        )),
        other => Err(invalid(format!("expected a rational string, got {other}"))),
    }
}

/// Parses `{"rows", "cols", "entries"}`; a bare array of rows is also accepted.
pub fn parse_matrix(v: &Value) -> Result<RatMatrix> {
    let (entries, shape) = match v {
        Value::Array(_) => (v, None),
        Value::Object(o) => {
            let rows = o.get("rows").and_then(Value::as_u64);
            let cols = o.get("cols").and_then(Value::as_u64);
            let e = o
                .get("entries")
                .ok_or_else(|| invalid("matrix needs \"entries\""))?;
            (e, rows.zip(cols))
        }
        other => return Err(invalid(format!("expected a matrix, got {other}"))),
    };
    let rows = entries
        .as_array()
        .ok_or_else(|| invalid("matrix entries must be an array of rows"))?;
    let parsed: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| invalid("matrix row must be an array"))?
                .iter()
                .map(rational_value)
                .collect()
        })
        .collect::<Result<_>>()?;
    let (nr, nc) = match shape {
        Some((r, c)) => (r as usize, c as usize),
        None => (parsed.len(), parsed.first().map_or(0, Vec::len)),
    };
    if parsed.len() != nr || parsed.iter().any(|r| r.len() != nc) {
        return Err(invalid(format!(
            "matrix entries do not form a {nr}x{nc} grid"
        )));
    }
    Ok(RatMatrix::new(
        nr,
        nc,
        parsed.into_iter().flatten().collect(),
    )?)
}

fn class_summary(c: &SimpleIsogenyClass, mult: u64) -> Value {
    json!({ "m": poly(&c.m), "mult": mult })
}

pub fn simple_class(c: &SimpleIsogenyClass) -> Value {
    json!({
        "m": poly(&c.m),
        "q": c.q.q.to_string(),
        "n": c.n,
        "slopes": c.slopes.iter().map(rational).collect::<Vec<_>>(),
        "invariants": c.local_invariants.iter().map(|li| {
            let place = match li.place {
                crate::honda_tate::Place::Padic(i) => format!("p{i}"),
                crate::honda_tate::Place::Infinity(i) => format!("inf{i}"),
            };
            json!({ "place": place, "inv": rational(&li.invariant), "local_degree": li.local_degree })
        }).collect::<Vec<_>>(),
        "e": c.e,
        "dim": c.d,
        "frobenius_charpoly": poly(&crate::honda_tate::frobenius_charpoly(c)),
    })
}

pub fn phantom_decision(d: &PhantomDecision) -> Value {
    json!({
        "realizable": d.realizable,
        "factors": d.factors.iter().map(|f| json!({
            "m": poly(&f.class.m),
            "e": f.multiplicity,
            "required": f.required,
            "ok": f.ok,
        })).collect::<Vec<_>>(),
        "witness": d.witness.as_ref().map(|w| w.iter().map(|(c, k)| class_summary(c, *k)).collect::<Vec<_>>()),
        "minimal_containing": d.minimal_containing.iter().map(|(c, k)| class_summary(c, *k)).collect::<Vec<_>>(),
    })
}

/// Input of the projector commands: `{"Q", "Qp", "gamma"}` plus an optional `"weight"`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjInput {
    pub src: PolarizedPair,
    pub tgt: PolarizedPair,
    pub gamma: RatMatrix,
}

pub fn parse_proj(v: &Value) -> Result<ProjInput> {
    let get = |k: &str| {
        v.get(k)
            .ok_or_else(|| invalid(format!("projector input needs \"{k}\"")))
    };
    let weight = v.get("weight").and_then(Value::as_i64).unwrap_or(1);
    Ok(ProjInput {
        src: PolarizedPair::infer(parse_matrix(get("Q")?)?, weight)?,
        tgt: PolarizedPair::infer(parse_matrix(get("Qp")?)?, weight)?,
        gamma: parse_matrix(get("gamma")?)?,
    })
}

/// `{"d", "dims", "ops": [matrix...], "pairings"?: [matrix...]}`.
pub fn parse_lefschetz(v: &Value) -> Result<LefschetzData> {
    let d = v
        .get("d")
        .and_then(Value::as_u64)
        .ok_or_else(|| invalid("lefschetz input needs \"d\""))?;
    let dims = v
        .get("dims")
        .and_then(Value::as_array)
        .ok_or_else(|| invalid("lefschetz input needs \"dims\""))?
        .iter()
        .map(|x| {
            x.as_u64()
                .map(|k| k as usize)
                .ok_or_else(|| invalid("dims must be integers"))
        })
        .collect::<Result<Vec<_>>>()?;
    let mats = |key: &str| -> Result<Option<Vec<RatMatrix>>> {
        match v.get(key) {
            None | Some(Value::Null) => Ok(None),
            Some(Value::Array(a)) => a
                .iter()
                .map(parse_matrix)
                .collect::<Result<Vec<_>>>()
                .map(Some),
            Some(_) => Err(invalid(format!("\"{key}\" must be an array of matrices"))),
        }
    };
    let ops = mats("ops")?.ok_or_else(|| invalid("lefschetz input needs \"ops\""))?;
    LefschetzData::new(d as usize, dims, ops, mats("pairings")?)
}

/// A symmetric matrix of forms over `Q` or a prime field.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyForm {
    Q(SymmetricFormMatrix<BigRational>),
    Fp(SymmetricFormMatrix<Fp>, u64),
}

impl AnyForm {
    pub fn field_json(&self) -> Value {
        match self {
            AnyForm::Q(_) => json!("Q"),
            AnyForm::Fp(_, p) => json!({ "Fp": p }),
        }
    }
}

/// `{"vars", "field": "Q" | {"Fp": p}, "weights", "twist", "entries"}`.
pub fn parse_form(v: &Value) -> Result<AnyForm> {
    let vars: Vec<String> = match v.get("vars") {
        None => vec!["x".into(), "y".into(), "z".into()],
        Some(a) => a
            .as_array()
            .ok_or_else(|| invalid("\"vars\" must be an array of names"))?
            .iter()
            .map(|s| {
                s.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| invalid("variable names must be strings"))
            })
            .collect::<Result<_>>()?,
    };
    let names: Vec<&str> = vars.iter().map(String::as_str).collect();
    let rows = v
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| invalid("form input needs \"entries\""))?;
    let entries: Vec<Vec<MultiPoly<BigRational>>> = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| invalid("each row must be an array"))?
                .iter()
                .map(|e| match e {
                    Value::String(s) => Ok(MultiPoly::parse(s, &names)?),
                    Value::Number(n) => Ok(MultiPoly::parse(&n.to_string(), &names)?),
                    other => Err(invalid(format!(
                        "entry must be a polynomial string, got {other}"
                    ))),
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let size = entries.len();
    let weights: Vec<i64> = match v.get("weights") {
        None => vec![0; size],
        Some(a) => a
            .as_array()
            .ok_or_else(|| invalid("\"weights\" must be an array"))?
            .iter()
            .map(|w| {
                w.as_i64()
                    .ok_or_else(|| invalid("weights must be integers"))
            })
            .collect::<Result<_>>()?,
    };
    let twist = match v.get("twist") {
        None => 1,
        Some(t) => t
            .as_i64()
            .ok_or_else(|| invalid("\"twist\" must be an integer"))?,
    };
    let q = SymmetricFormMatrix::new(vars, entries, weights, twist)?;
    match v.get("field") {
        None => Ok(AnyForm::Q(q)),
        Some(Value::String(s)) if s == "Q" => Ok(AnyForm::Q(q)),
        Some(Value::Object(o)) => {
            let p = o
                .get("Fp")
                .and_then(Value::as_u64)
                .ok_or_else(|| invalid("field must be \"Q\" or {\"Fp\": p}"))?;
            if !phantom_arith::rational::is_prime_u64(p) {
                return Err(phantom_arith::ArithError::NotPrime(p.to_string()).into());
            }
            let red = q.reduce_mod(p).ok_or_else(|| {
                invalid(format!("a coefficient has a denominator divisible by {p}"))
            })?;
            SymmetricFormMatrix::new(
                red.vars().to_vec(),
                red.entries().to_vec(),
                red.weights().to_vec(),
                red.twist(),
            )?;
            Ok(AnyForm::Fp(red, p))
        }
        Some(other) => Err(invalid(format!(
            "field must be \"Q\" or {{\"Fp\": p}}, got {other}"
        ))),
    }
}

/// Sorted-key object from pairs.
pub fn object<'a>(pairs: impl IntoIterator<Item = (&'a str, Value)>) -> Value {
    Value::Object(
        pairs
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect::<Map<_, _>>(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::honda_tate::phantom_exists;
    use crate::weil::{hodge_polygon, HodgeNumbers, PrimePower};
    use phantom_arith::{parse_poly, rat};

    #[test]
    fn polygon_schema() {
        let hp = hodge_polygon(&HodgeNumbers::new(vec![0, 5, 5, 0]).unwrap());
        assert_eq!(
            polygon(&hp).to_string(),
            r#"{"slopes":[["1","5"],["2","5"]],"vertices":[["0","0"],["5","5"],["10","15"]]}"#
        );
    }

    #[test]
    fn matrix_round_trip() {
        let m = RatMatrix::from_rows(vec![
            vec![rat(1, 1), rat(0, 1)],
            vec![rat(-3, 4), rat(1, 2)],
        ])
        .unwrap();
        let v = matrix(&m);
        assert_eq!(
            v.to_string(),
            r#"{"cols":2,"entries":[["1","0"],["-3/4","1/2"]],"rows":2}"#
        );
        assert_eq!(parse_matrix(&v).unwrap(), m);
        assert_eq!(
            parse_matrix(&json!([["1", 0], ["-3/4", "1/2"]])).unwrap(),
            m
        );
        assert!(parse_matrix(&json!({"rows": 2, "cols": 2, "entries": [["1"]]})).is_err());
        let empty = RatMatrix::zeros(0, 0);
        assert_eq!(parse_matrix(&matrix(&empty)).unwrap(), empty);
    }

    #[test]
    fn phantom_schema() {
        let d = phantom_exists(
            &parse_poly("T^2 - 2*T + 8").unwrap(),
            &PrimePower::new(8).unwrap(),
        )
        .unwrap();
        assert_eq!(
            phantom_decision(&d).to_string(),
            r#"{"factors":[{"e":1,"m":"T^2-2*T+8","ok":false,"required":3}],"minimal_containing":[{"m":"T^2-2*T+8","mult":1}],"realizable":false,"witness":null}"#
        );
    }

    #[test]
    fn form_parsing() {
        let v = json!({
            "vars": ["x", "y", "z"], "field": {"Fp": 101}, "weights": [0, 0, 0], "twist": 1,
            "entries": [["x", "0", "0"], ["0", "y", "0"], ["0", "0", "z"]]
        });
        assert!(matches!(parse_form(&v).unwrap(), AnyForm::Fp(_, 101)));
        let mut bad = v.clone();
        bad["field"] = json!({"Fp": 100});
        assert!(parse_form(&bad).is_err());
        let mut q = v;
        q["field"] = json!("Q");
        assert!(matches!(parse_form(&q).unwrap(), AnyForm::Q(_)));
    }

    #[test]
    fn proj_parsing() {
        let v = json!({"Q": [["0", "1"], ["-1", "0"]], "Qp": [["0", "1"], ["-1", "0"]], "gamma": [["1", "0"], ["0", "1"]]});
        let p = parse_proj(&v).unwrap();
        assert_eq!(p.src.symmetry, -1);
        assert_eq!(p.gamma, RatMatrix::identity(2));
    }
}

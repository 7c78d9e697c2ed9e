//! JSON encodings shared by the library and the command line.
//!
//! Polynomials use `{"vars":["kl","ks"],"terms":[{"kl":a,"ks":b,"coeff":c}]}`
//! with terms sorted by `(kl, ks)` descending. Rationals are `"p/q"` strings.

use serde_json::{json, Value};

use crate::ehrhart::EhrhartPoly;
use crate::exactla::Rat;
use crate::rootsys::Weight;
use crate::{Error, Result};

pub fn poly_to_json(p: &EhrhartPoly) -> Value {
    let terms: Vec<Value> = p
        .terms
        .iter()
        .rev()
        .map(|(&(a, b), &c)| json!({"kl": a, "ks": b, "coeff": c}))
        .collect();
    json!({"vars": ["kl", "ks"], "terms": terms})
}

pub fn poly_from_json(v: &Value) -> Result<EhrhartPoly> {
    let bad = || Error::Parse(format!("not a polynomial: {v}"));
    let terms = v.get("terms").and_then(Value::as_array).ok_or_else(bad)?;
    let mut p = EhrhartPoly::zero();
    for t in terms {
        let get = |k: &str| t.get(k).and_then(Value::as_i64).ok_or_else(bad);
        let (a, b, c) = (get("kl")?, get("ks")?, get("coeff")?);
        if a < 0 || b < 0 {
            return Err(bad());
        }
        p.add_term(a as u32, b as u32, c);
    }
    Ok(p)
}

pub fn rat_to_json(r: &Rat) -> Value {
    Value::String(format!("{}/{}", r.numer(), r.denom()))
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn rat_from_json(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => parse_rat(s),
        Value::Number(n) => n
            .as_i64()
            .map(Rat::from_integer)
            .ok_or_else(|| Error::Parse(format!("not a rational: {v}"))),
        _ => Err(Error::Parse(format!("not a rational: {v}"))),
    }
}

pub fn rat_vec_to_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat_to_json).collect())
}

pub fn weight_to_json(w: &Weight) -> Value {
    json!(w.0)
}

pub fn weight_from_json(v: &Value) -> Result<Weight> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))
}

/// Parses comma-separated integers such as `1,0,-1`.
pub fn parse_ints(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("not an integer list: {s:?}")))
        })
        .collect()
}

pub fn parse_weight(s: &str, rank: usize) -> Result<Weight> {
    let v = parse_ints(s)?;
    if v.len() != rank {
        return Err(Error::Parse(format!("expected {rank} coordinates, got {}", v.len())));
    }
    Ok(Weight(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_schema_order() {
        let mut p = EhrhartPoly::monomial(1, 0, 4);
        p.add_term(0, 1, 2);
        p.add_term(0, 0, 1);
        let v = poly_to_json(&p);
        assert_eq!(
            v.to_string(),
            r#"{"terms":[{"coeff":4,"kl":1,"ks":0},{"coeff":2,"kl":0,"ks":1},{"coeff":1,"kl":0,"ks":0}],"vars":["kl","ks"]}"#
        );
        assert_eq!(poly_from_json(&v).unwrap(), p);
    }

    #[test]
    fn rationals() {
        let r = Rat::new(59, 30);
        assert_eq!(rat_to_json(&r), Value::String("59/30".into()));
        assert_eq!(rat_from_json(&rat_to_json(&r)).unwrap(), r);
        assert_eq!(parse_rat("-4/6").unwrap(), Rat::new(-2, 3));
        assert!(parse_rat("1/0").is_err());
    }

    #[test]
    fn weights() {
        let w = parse_weight("1, -2,0", 3).unwrap();
        assert_eq!(weight_from_json(&weight_to_json(&w)).unwrap(), w);
        assert!(parse_weight("1,2", 3).is_err());
        assert!(parse_ints("1,x").is_err());
    }
}

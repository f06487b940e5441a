//! JSON encodings of the exact types.
//!
//! Polynomials serialize as `{"coeffs":[c0,c1,...]}` with ascending
//! exponents; matrices as arrays of rows of such objects. Coefficients are
//! emitted as JSON numbers of arbitrary size, never floats.

use crate::poly::{FactoredRational, IntPoly, PolyMatrix, Recurrence, TruncatedSeries};
use crate::series::{ClosedForm, IntRecurrence};
use num_bigint::BigInt;
use serde_json::{json, Number, Value};
use std::str::FromStr;

fn bigint_to_number(value: &BigInt) -> Value {
    Value::Number(Number::from_str(&value.to_string()).expect("integer literal"))
}

fn number_to_bigint(value: &Value) -> Option<BigInt> {
    BigInt::from_str(&value.as_number()?.to_string()).ok()
}

pub fn poly_to_json(p: &IntPoly) -> Value {
    let coeffs: Vec<Value> = p.coeffs().iter().map(bigint_to_number).collect();
    json!({ "coeffs": coeffs })
}

pub fn poly_from_json(value: &Value) -> Option<IntPoly> {
    let coeffs = value.get("coeffs")?.as_array()?;
    let coeffs: Option<Vec<BigInt>> = coeffs.iter().map(number_to_bigint).collect();
    Some(IntPoly::from_coeffs(coeffs?))
}

pub fn matrix_to_json(m: &PolyMatrix) -> Value {
    let rows: Vec<Value> = (0..m.dim())
        .map(|i| Value::Array((0..m.dim()).map(|j| poly_to_json(m.entry(i, j))).collect()))
        .collect();
    Value::Array(rows)
}

pub fn matrix_from_json(value: &Value) -> Option<PolyMatrix> {
    let rows = value.as_array()?;
    let rows: Option<Vec<Vec<IntPoly>>> = rows
        .iter()
        .map(|row| row.as_array()?.iter().map(poly_from_json).collect())
        .collect();
    PolyMatrix::from_rows(rows?).ok()
}

pub fn series_to_json(s: &TruncatedSeries) -> Value {
    let coeffs: Vec<Value> = s.coeffs().iter().map(bigint_to_number).collect();
    json!({ "order": s.order(), "coeffs": coeffs })
}

pub fn series_from_json(value: &Value) -> Option<TruncatedSeries> {
    let order = value.get("order")?.as_u64()? as usize;
    let coeffs = value.get("coeffs")?.as_array()?;
    let coeffs: Option<Vec<BigInt>> = coeffs.iter().map(number_to_bigint).collect();
    Some(TruncatedSeries::new(order, coeffs?))
}

pub fn rational_to_json(r: &FactoredRational) -> Value {
    let denominator: Vec<Value> = r
        .denominator()
        .flat_map(|(e, m)| std::iter::repeat_n(json!(e), m))
        .collect();
    json!({ "numerator": poly_to_json(r.numerator()), "denominator": denominator })
}

pub fn closed_form_to_json(cf: &ClosedForm) -> Value {
    let terms: Vec<Value> = cf
        .terms()
        .iter()
        .map(|(r, c)| json!({ "c": c, "rational": rational_to_json(r) }))
        .collect();
    json!({
        "prefactor_exponent": cf.prefactor_exponent(),
        "period": cf.period(),
        "terms": terms,
    })
}

pub fn recurrence_to_json(rec: &Recurrence) -> Value {
    let coeffs: Vec<Value> = rec.coeffs().iter().map(poly_to_json).collect();
    json!({ "order": rec.order(), "coefficients": coeffs })
}

pub fn int_recurrence_to_json(rec: &IntRecurrence) -> Value {
    let coeffs: Vec<Value> = rec.coeffs().iter().map(bigint_to_number).collect();
    json!({ "order": rec.order(), "coefficients": coeffs, "valid_from": rec.valid_from() })
}

pub fn bigints_to_json(values: &[BigInt]) -> Value {
    Value::Array(values.iter().map(bigint_to_number).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn poly_round_trip_basic() {
        let p = IntPoly::from_ints(&[1, 0, -3, 7]);
        let v = poly_to_json(&p);
        assert_eq!(v.to_string(), r#"{"coeffs":[1,0,-3,7]}"#);
        assert_eq!(poly_from_json(&v), Some(p));
    }

    #[test]
    fn huge_coefficients_survive() {
        let big = BigInt::from_str("123456789012345678901234567890123456789").unwrap();
        let p = IntPoly::from_coeffs(vec![big.clone(), -big.clone()]);
        let v = poly_to_json(&p);
        let text = serde_json::to_string(&v).unwrap();
        let parsed: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(poly_from_json(&parsed), Some(p));
    }

    #[test]
    fn matrix_round_trip() {
        let m = PolyMatrix::from_rows(vec![
            vec![IntPoly::one(), IntPoly::from_ints(&[0, 1])],
            vec![IntPoly::zero(), IntPoly::one()],
        ])
        .unwrap();
        let v = matrix_to_json(&m);
        assert_eq!(matrix_from_json(&v), Some(m));
    }

    proptest! {
        #[test]
        fn poly_round_trip(coeffs in proptest::collection::vec(-1000i64..1000, 0..12)) {
            let p = IntPoly::from_ints(&coeffs);
            let text = serde_json::to_string(&poly_to_json(&p)).unwrap();
            let parsed: Value = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(poly_from_json(&parsed), Some(p));
        }
    }
}

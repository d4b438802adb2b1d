//! Deterministic JSON machine forms shared by the Hecke and KL modules.
//!
//! Records are rendered by hand so that key order and spacing are fixed;
//! parsing goes through `serde_json` with arbitrary-precision numbers.

use serde_json::Value;

use crate::laurent::LaurentPoly;
use crate::scalar::Coefficient;

/// `[[k,c],...]`, ascending `k`, no zero `c`.
pub fn laurent_to_json<C: Coefficient>(p: &LaurentPoly<C>) -> String {
    let parts: Vec<String> = p.terms().iter().map(|(k, c)| format!("[{k},{c}]")).collect();
    format!("[{}]", parts.join(","))
}

/// Inverse of [`laurent_to_json`] on a parsed value. Rejects unsorted or
/// zero entries so that the machine form stays canonical.
pub fn laurent_from_value<C: Coefficient>(value: &Value) -> Result<LaurentPoly<C>, String> {
    let items = value.as_array().ok_or("coefficient is not an array")?;
    let mut terms = Vec::with_capacity(items.len());
    for item in items {
        let pair = item.as_array().filter(|p| p.len() == 2).ok_or("term is not a [k,c] pair")?;
        let k = pair[0].as_i64().ok_or("exponent is not an integer")?;
        let k = i32::try_from(k).map_err(|_| "exponent out of range")?;
        let c = big_int::<C>(&pair[1]).ok_or("coefficient is not an integer")?;
        if c.is_zero() {
            return Err("zero coefficient stored".into());
        }
        if let Some((last, _)) = terms.last() {
            if *last >= k {
                return Err("exponents not strictly ascending".into());
            }
        }
        terms.push((k, c));
    }
    Ok(LaurentPoly::from_terms(terms))
}

pub fn laurent_from_json<C: Coefficient>(text: &str) -> Result<LaurentPoly<C>, String> {
    let value: Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    laurent_from_value(&value)
}

fn big_int<C: Coefficient>(value: &Value) -> Option<C> {
    let n = value.as_number()?;
    n.to_string().parse::<C>().ok()
}

pub(crate) fn int_array(value: &Value) -> Option<Vec<i64>> {
    value.as_array()?.iter().map(|x| x.as_i64()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    #[test]
    fn forms() {
        let p = LaurentPoly::<BigInt>::from_ints(&[(2, 1), (0, -1)]);
        assert_eq!(laurent_to_json(&p), "[[0,-1],[2,1]]");
        assert_eq!(laurent_from_json::<BigInt>("[[0,-1],[2,1]]").unwrap(), p);
        assert_eq!(laurent_to_json(&LaurentPoly::<BigInt>::zero()), "[]");
        assert!(laurent_from_json::<BigInt>("[[2,1],[0,-1]]").is_err());
        assert!(laurent_from_json::<BigInt>("[[0,0]]").is_err());
    }

    #[test]
    fn big_coefficients_survive() {
        let huge: BigInt = "123456789012345678901234567890".parse().unwrap();
        let p = LaurentPoly::monomial(huge, -3);
        let text = laurent_to_json(&p);
        assert_eq!(text, "[[-3,123456789012345678901234567890]]");
        assert_eq!(laurent_from_json::<BigInt>(&text).unwrap(), p);
    }

    proptest! {
        #[test]
        fn roundtrip(terms in prop::collection::vec((-6i32..=6, -9i64..=9), 0..8)) {
            let p = LaurentPoly::<BigInt>::from_ints(&terms);
            prop_assert_eq!(laurent_from_json::<BigInt>(&laurent_to_json(&p)).unwrap(), p);
        }
    }
}

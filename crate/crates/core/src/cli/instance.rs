//! JSON instances: a base field, a curve model and a list of elements.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::BaseField;
use crate::error::{Error, Result};
use crate::function_field::Curve;
use crate::subspace::Subspace;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    pub field: BaseField,
    pub curve: String,
    pub elements: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl InstanceSpec {
    pub fn new(field: BaseField, curve: impl Into<String>, elements: Vec<String>) -> Self {
        InstanceSpec {
            field,
            curve: curve.into(),
            elements,
            seed: None,
        }
    }

    pub fn build_curve(&self) -> Result<Arc<Curve>> {
        Curve::parse(&self.curve, self.field.validated()?)
    }

    /// The curve and the span of the elements.
    pub fn build(&self) -> Result<(Arc<Curve>, Subspace)> {
        if self.elements.is_empty() {
            return Err(Error::Invalid(
                "an instance needs at least one element".into(),
            ));
        }
        let curve = self.build_curve()?;
        let exprs: Vec<&str> = self.elements.iter().map(String::as_str).collect();
        let s = Subspace::parse(&curve, &exprs)?;
        Ok((curve, s))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instances always serialize")
    }
}

/// Parses and validates an instance document.
pub fn parse_instance(text: &[u8]) -> Result<InstanceSpec> {
    let text = std::str::from_utf8(text)
        .map_err(|e| Error::Invalid(format!("instance is not UTF-8: {e}")))?;
    let spec: InstanceSpec = serde_json::from_str(text).map_err(|e| Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    spec.build()?;
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elliptic_instance() {
        let text = br#"{"field":{"kind":"Fp","p":10007},"curve":"y^2 = x^3 - x","elements":["1","x","y","x^2","x*y"]}"#;
        let spec = parse_instance(text).unwrap();
        assert_eq!(spec.build().unwrap().1.dim(), 5);
        assert_eq!(parse_instance(spec.to_json().as_bytes()).unwrap(), spec);
    }

    #[test]
    fn rational_instance() {
        let text =
            br#"{"field":{"kind":"Q"},"curve":"rational","elements":["1","x","x^2","x^3 + 1/x"]}"#;
        assert_eq!(parse_instance(text).unwrap().build().unwrap().1.dim(), 4);
    }

    #[test]
    fn rejections() {
        let bad = [
            &br#"{"field":{"kind":"Q"},"curve":"y^2 = x^2","elements":["1"]}"#[..],
            br#"{"field":{"kind":"Q"},"curve":"rational","elements":["y"]}"#,
            br#"{"field":{"kind":"Fp","p":2},"curve":"rational","elements":["1"]}"#,
            br#"{"field":{"kind":"Q"},"curve":"rational","elements":[]}"#,
        ];
        for b in bad {
            assert!(
                matches!(parse_instance(b), Err(Error::Invalid(_))),
                "{}",
                String::from_utf8_lossy(b)
            );
        }
        let e = parse_instance(b"{\n  \"field\": oops}").unwrap_err();
        assert!(matches!(e, Error::Syntax { line: 2, .. }), "{e:?}");
        assert!(parse_instance(&[0xff, 0xfe]).is_err());
    }
}

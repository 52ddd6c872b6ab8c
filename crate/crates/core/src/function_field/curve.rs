//! Curve models: the rational function field K(x), or K(x, y) with
//! `y^2 = D(x)`, `D` squarefree of degree 1 to 4.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{BaseField, Poly};
use crate::error::{Error, Result};

use super::element::FFElement;
use super::expr::parse_expr;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Curve {
    field: BaseField,
    /// `None` for the rational function field.
    d: Option<Poly>,
}

impl Curve {
    pub fn rational(field: BaseField) -> Arc<Curve> {
        Arc::new(Curve { field, d: None })
    }

    pub fn quadratic(d: Poly) -> Result<Arc<Curve>> {
        let field = d.field();
        if field.characteristic() == 2 {
            return Err(Error::invalid("characteristic 2 is not supported"));
        }
        match d.degree() {
            Some(1..=4) => {}
            _ => {
                return Err(Error::invalid(format!(
                    "D(x) = {d} must have degree between 1 and 4"
                )))
            }
        }
        if !d.is_squarefree() {
            return Err(Error::invalid(format!("D(x) = {d} is not squarefree")));
        }
        Ok(Arc::new(Curve { field, d: Some(d) }))
    }

    /// Parses `rational` or `y^2 = <polynomial in x>`.
    pub fn parse(s: &str, field: BaseField) -> Result<Arc<Curve>> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("rational") || t == "K(x)" {
            return Ok(Curve::rational(field));
        }
        let (lhs, rhs) = t.split_once('=').ok_or_else(|| {
            Error::invalid(format!(
                "curve must be `rational` or `y^2 = D(x)`, got `{s}`"
            ))
        })?;
        let lhs: String = lhs.chars().filter(|c| !c.is_whitespace()).collect();
        if lhs != "y^2" {
            return Err(Error::invalid(format!(
                "left-hand side must be `y^2`, got `{lhs}`"
            )));
        }
        let e = parse_expr(rhs)?;
        if e.mentions_y() {
            return Err(Error::invalid("D(x) must not mention y"));
        }
        let f = FFElement::from_expr(&Curve::rational(field), &e)?;
        if !f.a().den().is_one() {
            return Err(Error::invalid(format!(
                "D(x) = {} is not a polynomial",
                f.a()
            )));
        }
        Curve::quadratic(f.a().num().clone())
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn is_rational(&self) -> bool {
        self.d.is_none()
    }

    pub fn d(&self) -> Option<&Poly> {
        self.d.as_ref()
    }

    pub fn deg_d(&self) -> usize {
        self.d.as_ref().and_then(|d| d.degree()).unwrap_or(0)
    }

    pub fn genus(&self) -> usize {
        match self.deg_d() {
            3 | 4 => 1,
            _ => 0,
        }
    }

    /// Ramification index of the places at infinity over K(x).
    pub fn e_inf(&self) -> i64 {
        if self.deg_d() % 2 == 1 {
            2
        } else {
            1
        }
    }

    /// Pole order of `y` at a place at infinity.
    pub fn pole_y(&self) -> i64 {
        self.e_inf() * self.deg_d() as i64 / 2
    }

    /// The model string accepted by [`Curve::parse`].
    pub fn model(&self) -> String {
        match &self.d {
            None => "rational".into(),
            Some(d) => format!("y^2 = {d}"),
        }
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self.model(), self.field)
    }
}

impl fmt::Debug for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_models() {
        let q = BaseField::Rational;
        let c = Curve::parse("y^2 = x^3 - x", q).unwrap();
        assert_eq!(c.genus(), 1);
        assert_eq!(c.model(), "y^2 = x^3 - x");
        assert_eq!(c.pole_y(), 3);
        let c = Curve::parse("y^2 = -x^2 - 1", q).unwrap();
        assert_eq!(c.genus(), 0);
        assert_eq!(c.pole_y(), 1);
        assert!(Curve::parse("rational", q).unwrap().is_rational());
    }

    #[test]
    fn rejects_bad_models() {
        let q = BaseField::Rational;
        assert!(Curve::parse("y^2 = x^2", q).is_err());
        assert!(Curve::parse("y^2 = x^5 + 1", q).is_err());
        assert!(Curve::parse("y^2 = 1/x", q).is_err());
        assert!(Curve::parse("y^3 = x", q).is_err());
        assert!(Curve::parse("y^2 = 3", q).is_err());
    }
}

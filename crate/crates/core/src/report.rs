//! Result records shared by the graph, kernel and norm computations.

use num_rational::Ratio;
use num_traits::ToPrimitive;
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::graph::{CreationSequence, VertexOrder};

pub type Rational = Ratio<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundKind {
    #[serde(rename = "exact")]
    Exact,
    #[serde(rename = "lower")]
    LowerBound,
    #[serde(rename = "upper")]
    UpperBound,
}

impl BoundKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundKind::Exact => "exact",
            BoundKind::LowerBound => "lower",
            BoundKind::UpperBound => "upper",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Value {
    Rational(Rational),
    Float(f64),
}

impl Value {
    pub fn to_f64(self) -> f64 {
        match self {
            Value::Rational(r) => ratio_to_f64(r),
            Value::Float(x) => x,
        }
    }

    pub fn as_rational(self) -> Option<Rational> {
        match self {
            Value::Rational(r) => Some(r),
            Value::Float(_) => None,
        }
    }
}

pub fn ratio_to_f64(r: Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[derive(Clone, Debug, PartialEq)]
pub struct FunctionalReport {
    pub value: Value,
    pub bound: BoundKind,
    pub order: Option<VertexOrder>,
    pub subset: Option<Vec<usize>>,
    pub method: String,
}

impl FunctionalReport {
    pub fn rational(&self) -> Option<Rational> {
        self.value.as_rational()
    }

    pub fn value_f64(&self) -> f64 {
        self.value.to_f64()
    }
}

impl Serialize for FunctionalReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        if let Value::Rational(r) = self.value {
            m.serialize_entry("value_num", r.numer())?;
            m.serialize_entry("value_den", r.denom())?;
        }
        m.serialize_entry("value", &self.value.to_f64())?;
        m.serialize_entry("bound", &self.bound)?;
        if let Some(o) = &self.order {
            m.serialize_entry("order", o)?;
        }
        if let Some(a) = &self.subset {
            m.serialize_entry("subset", a)?;
        }
        m.serialize_entry("method", &self.method)?;
        m.end()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormReport {
    pub value: f64,
    pub bound: BoundKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_f: Option<Vec<i8>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_g: Option<Vec<i8>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_perm: Option<Vec<usize>>,
    pub method: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EditReport {
    pub distance: usize,
    pub witness: CreationSequence,
    pub bound: BoundKind,
    pub method: String,
}

impl Serialize for EditReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("distance", &self.distance)?;
        m.serialize_entry("bound", &self.bound)?;
        m.serialize_entry("order", &self.witness.order)?;
        let roles: Vec<u8> = self.witness.roles.iter().map(|&r| r as u8).collect();
        m.serialize_entry("roles", &roles)?;
        m.serialize_entry("method", &self.method)?;
        m.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn functional_report_json_shape() {
        let r = FunctionalReport {
            value: Value::Rational(Rational::new(8, 64)),
            bound: BoundKind::Exact,
            order: Some(VertexOrder::identity(3)),
            subset: Some(vec![2]),
            method: "exact".into(),
        };
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["value_num"], 1);
        assert_eq!(v["value_den"], 8);
        assert_eq!(v["bound"], "exact");
        assert_eq!(v["order"], serde_json::json!([0, 1, 2]));
        assert_eq!(v["subset"], serde_json::json!([2]));
        assert!((v["value"].as_f64().unwrap() - 0.125).abs() < 1e-15);
    }

    #[test]
    fn float_report_has_no_fraction() {
        let r = FunctionalReport {
            value: Value::Float(0.25),
            bound: BoundKind::LowerBound,
            order: None,
            subset: None,
            method: "local_search".into(),
        };
        let v = serde_json::to_value(&r).unwrap();
        assert!(v.get("value_num").is_none());
        assert_eq!(v["bound"], "lower");
    }
}

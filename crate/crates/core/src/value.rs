//! Tagged argument and result values flowing through intercepted calls.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::corpus::{Parcel, ViewportRendering};
use crate::geometry::{CrsTag, Polygon, PositionFix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArgKind {
    Number,
    Polygon,
    Other,
}

impl ArgKind {
    pub fn name(self) -> &'static str {
        match self {
            ArgKind::Number => "Number",
            ArgKind::Polygon => "Polygon",
            ArgKind::Other => "Other",
        }
    }

    pub fn from_name(name: &str) -> Option<ArgKind> {
        match name {
            "Number" => Some(ArgKind::Number),
            "Polygon" => Some(ArgKind::Polygon),
            "Other" => Some(ArgKind::Other),
            _ => None,
        }
    }
}

impl fmt::Display for ArgKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Number(f64),
    Polygon(Polygon),
    Other(Datum),
}

/// Payloads that are neither numbers nor polygons.
#[derive(Debug, Clone, PartialEq)]
pub enum Datum {
    Unit,
    Bool(bool),
    Text(String),
    Fix(PositionFix),
    Crs(CrsTag),
    Ids(Vec<String>),
    Rendering(ViewportRendering),
    Parcel(Parcel),
}

impl Value {
    pub fn kind(&self) -> ArgKind {
        match self {
            Value::Number(_) => ArgKind::Number,
            Value::Polygon(_) => ArgKind::Polygon,
            Value::Other(_) => ArgKind::Other,
        }
    }

    pub fn as_number(&self) -> Option<f64> {
        match self {
            Value::Number(n) => Some(*n),
            _ => None,
        }
    }

    pub fn as_polygon(&self) -> Option<&Polygon> {
        match self {
            Value::Polygon(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_datum(&self) -> Option<&Datum> {
        match self {
            Value::Other(d) => Some(d),
            _ => None,
        }
    }

    pub fn text(s: impl Into<String>) -> Value {
        Value::Other(Datum::Text(s.into()))
    }
}

impl From<f64> for Value {
    fn from(n: f64) -> Self {
        Value::Number(n)
    }
}

impl From<Polygon> for Value {
    fn from(p: Polygon) -> Self {
        Value::Polygon(p)
    }
}

impl From<Datum> for Value {
    fn from(d: Datum) -> Self {
        Value::Other(d)
    }
}

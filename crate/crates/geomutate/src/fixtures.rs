//! JSON fixture formats.
//!
//! A geometry literal is `{"crs": "<id>", "ring": [[x, y], ...]}` with a
//! closed ring. Fixture files bundle geofences, parcels, probe points and
//! constraint checks for the corpus SUTs.

use std::path::Path;

use geomutate_core::corpus::{Geofence, Parcel};
use geomutate_core::geometry::{rebuild_polygon, Coordinate, CrsTag, Polygon, PositionFix};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeometryLiteral {
    pub crs: String,
    pub ring: Vec<[f64; 2]>,
}

impl GeometryLiteral {
    pub fn to_polygon(&self) -> Result<Polygon> {
        let crs = CrsTag::from_id(&self.crs).ok_or_else(|| Error::UnknownCrs(self.crs.clone()))?;
        let ring = self.ring.iter().map(|[x, y]| Coordinate::new(*x, *y)).collect();
        Ok(rebuild_polygon(ring, crs)?)
    }
}

impl From<&Polygon> for GeometryLiteral {
    fn from(p: &Polygon) -> Self {
        GeometryLiteral {
            crs: p.crs().id().to_string(),
            ring: p.ring().iter().map(|c| [c.x, c.y]).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GeofenceLiteral {
    pub id: String,
    pub lat: f64,
    pub lon: f64,
    pub radius_meters: f64,
}

impl GeofenceLiteral {
    pub fn to_geofence(&self) -> Result<Geofence> {
        Ok(Geofence::new(&self.id, PositionFix::new(self.lat, self.lon), self.radius_meters)?)
    }
}

/// A raw location as the device would report it, and the geofences it is
/// expected to fall in.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeLiteral {
    pub name: String,
    pub axis0: f64,
    pub axis1: f64,
    pub inside: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParcelLiteral {
    pub id: String,
    pub owner: String,
    pub shape: GeometryLiteral,
}

impl ParcelLiteral {
    pub fn to_parcel(&self) -> Result<Parcel> {
        Ok(Parcel::new(&self.id, &self.owner, self.shape.to_polygon()?))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstraintLiteral {
    pub name: String,
    pub predicate: String,
    pub a: GeometryLiteral,
    pub b: GeometryLiteral,
    pub expected: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum MergeExpectation {
    /// The merged parcel's shape.
    Shape(GeometryLiteral),
    /// Name of the expected error, e.g. `DifferentOwner`.
    Error(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MergeLiteral {
    pub name: String,
    pub a: String,
    pub b: String,
    pub expect: MergeExpectation,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FixtureSet {
    #[serde(default)]
    pub viewport: Option<String>,
    #[serde(default)]
    pub geofences: Vec<GeofenceLiteral>,
    #[serde(default)]
    pub probes: Vec<ProbeLiteral>,
    #[serde(default)]
    pub parcels: Vec<ParcelLiteral>,
    #[serde(default)]
    pub constraints: Vec<ConstraintLiteral>,
    #[serde(default)]
    pub merges: Vec<MergeLiteral>,
}

impl FixtureSet {
    pub fn from_json(text: &str) -> Result<Self> {
        let set: FixtureSet =
            serde_json::from_str(text).map_err(|e| Error::MalformedFixture(e.to_string()))?;
        set.validate()?;
        Ok(set)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| Error::Io { path: path.display().to_string(), source })?;
        Self::from_json(&text)
    }

    /// Checks every geometry and geofence converts cleanly.
    pub fn validate(&self) -> Result<()> {
        if let Some(v) = &self.viewport {
            CrsTag::from_id(v).ok_or_else(|| Error::UnknownCrs(v.clone()))?;
        }
        for g in &self.geofences {
            g.to_geofence()?;
        }
        for p in &self.parcels {
            p.to_parcel()?;
        }
        for c in &self.constraints {
            c.a.to_polygon()?;
            c.b.to_polygon()?;
        }
        for m in &self.merges {
            if let MergeExpectation::Shape(s) = &m.expect {
                s.to_polygon()?;
            }
        }
        Ok(())
    }

    pub fn viewport_crs(&self) -> CrsTag {
        self.viewport.as_deref().and_then(CrsTag::from_id).unwrap_or_else(CrsTag::lonlat)
    }
}

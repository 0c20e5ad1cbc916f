//! The two bundled systems under test: a geofencing app and a land
//! re-parcelling app. Both are headless; what a user would see on screen is
//! returned as data.

mod geofence;
mod reparcel;

use alloc::string::String;
use alloc::vec::Vec;

use crate::catalog::PREDICATE_OPERATIONS;
use crate::error::{Error, Result};
use crate::geometry::{Coordinate, Polygon, PositionFix};
use crate::interception::OperationDescriptor;
use crate::value::ArgKind;

pub use geofence::GeofenceApp;
pub use reparcel::ReparcelApp;

pub const GEOFENCE_SUT: &str = "geofence";
pub const REPARCEL_SUT: &str = "reparcel";

pub const SUT_IDS: [&str; 2] = [GEOFENCE_SUT, REPARCEL_SUT];

/// Interceptable operations of a bundled SUT, in registration order.
pub fn operations_of(sut_id: &str) -> Result<Vec<OperationDescriptor>> {
    use ArgKind::*;
    match sut_id {
        GEOFENCE_SUT => Ok(alloc::vec![
            OperationDescriptor::new(GEOFENCE_SUT, "getFromLocation", &[Number, Number]),
            OperationDescriptor::new(GEOFENCE_SUT, "geofencesContaining", &[Other]),
            OperationDescriptor::new(GEOFENCE_SUT, "renderGeofences", &[Other]),
        ]),
        REPARCEL_SUT => {
            let mut ops: Vec<OperationDescriptor> = PREDICATE_OPERATIONS
                .iter()
                .map(|name| OperationDescriptor::new(REPARCEL_SUT, name, &[Polygon, Polygon]))
                .collect();
            ops.push(OperationDescriptor::new(REPARCEL_SUT, "mergeParcels", &[Other, Other]));
            Ok(ops)
        }
        other => Err(Error::UnknownSut(other.into())),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Geofence {
    pub id: String,
    pub center: PositionFix,
    pub radius_meters: f64,
}

impl Geofence {
    pub fn new(id: impl Into<String>, center: PositionFix, radius_meters: f64) -> Result<Self> {
        if !(radius_meters > 0.0 && radius_meters.is_finite()) {
            return Err(Error::InvalidRadius);
        }
        Ok(Geofence { id: id.into(), center, radius_meters })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Parcel {
    pub id: String,
    pub owner_id: String,
    pub shape: Polygon,
}

impl Parcel {
    pub fn new(id: impl Into<String>, owner_id: impl Into<String>, shape: Polygon) -> Self {
        Parcel { id: id.into(), owner_id: owner_id.into(), shape }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DrawnGeofence {
    pub geofence_id: String,
    pub screen_center: Coordinate,
    pub screen_radius: f64,
}

/// What the map viewer would draw, one entry per registered geofence.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ViewportRendering {
    pub drawn: Vec<DrawnGeofence>,
}

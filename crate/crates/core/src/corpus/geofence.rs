use alloc::string::String;
use alloc::vec::Vec;

use super::{operations_of, DrawnGeofence, Geofence, ViewportRendering, GEOFENCE_SUT};
use crate::error::{Error, Result};
use crate::geometry::{haversine_distance, AxisOrder, Coordinate, CrsTag, PositionFix, EARTH_RADIUS_M};
use crate::interception::{OperationDescriptor, Sut, Weaver};
use crate::value::{Datum, Value};

const GET_FROM_LOCATION: usize = 0;
const GEOFENCES_CONTAINING: usize = 1;
const RENDER_GEOFENCES: usize = 2;

/// Screen units per degree of the fixed viewport.
pub const VIEWPORT_SCALE: f64 = 10.0;
/// Screen position of the (0, 0) map origin on both axes.
pub const VIEWPORT_OFFSET: f64 = 500.0;

/// Headless stand-in for a mobile app that registers places of interest as
/// circular geofences and draws them on a map.
#[derive(Debug)]
pub struct GeofenceApp {
    operations: Vec<OperationDescriptor>,
    weaver: Weaver,
    fences: Vec<Geofence>,
}

impl Default for GeofenceApp {
    fn default() -> Self {
        Self::new()
    }
}

impl GeofenceApp {
    pub fn new() -> Self {
        GeofenceApp {
            operations: operations_of(GEOFENCE_SUT).expect("bundled SUT"),
            weaver: Weaver::new(),
            fences: Vec::new(),
        }
    }

    pub fn add_geofence(&mut self, fence: Geofence) -> Result<()> {
        if self.fences.iter().any(|f| f.id == fence.id) {
            return Err(Error::DuplicateId(fence.id));
        }
        self.fences.push(fence);
        Ok(())
    }

    pub fn geofences(&self) -> &[Geofence] {
        &self.fences
    }

    /// Builds a fix from `(axis0, axis1)` read as `(lat, lon)`. Out-of-range
    /// values pass through unchecked.
    pub fn get_from_location(&self, axis0: f64, axis1: f64) -> Result<PositionFix> {
        self.weaver.guarded(|| self.fix_from(axis0, axis1))
    }

    fn fix_from(&self, axis0: f64, axis1: f64) -> Result<PositionFix> {
        let args = self.weaver.before(
            &self.operations[GET_FROM_LOCATION],
            alloc::vec![Value::Number(axis0), Value::Number(axis1)],
        )?;
        match args.as_slice() {
            [Value::Number(lat), Value::Number(lon)] => Ok(PositionFix::new(*lat, *lon)),
            _ => Err(Error::ArgumentKindMismatch { operation: "getFromLocation".into() }),
        }
    }

    /// Ids of every geofence whose circle contains `fix`, in registration order.
    pub fn geofences_containing(&self, fix: PositionFix) -> Result<Vec<String>> {
        self.weaver.guarded(|| {
            let args = self.weaver.before(
                &self.operations[GEOFENCES_CONTAINING],
                alloc::vec![Value::Other(Datum::Fix(fix))],
            )?;
            let fix = match args.as_slice() {
                [Value::Other(Datum::Fix(f))] => *f,
                _ => {
                    return Err(Error::ArgumentKindMismatch {
                        operation: "geofencesContaining".into(),
                    })
                }
            };
            Ok(self
                .fences
                .iter()
                .filter(|g| haversine_distance(g.center, fix) <= g.radius_meters)
                .map(|g| g.id.clone())
                .collect())
        })
    }

    /// Projects each geofence centre, obtained through `getFromLocation`, onto
    /// the fixed viewport `screen = (x * 10 + 500, -y * 10 + 500)`.
    pub fn render_geofences(&self, viewport: &CrsTag) -> Result<ViewportRendering> {
        self.weaver.guarded(|| {
            let args = self.weaver.before(
                &self.operations[RENDER_GEOFENCES],
                alloc::vec![Value::Other(Datum::Crs(viewport.clone()))],
            )?;
            let viewport = match args.as_slice() {
                [Value::Other(Datum::Crs(c))] => c.clone(),
                _ => {
                    return Err(Error::ArgumentKindMismatch { operation: "renderGeofences".into() })
                }
            };
            let meters_per_degree = 2.0 * core::f64::consts::PI * EARTH_RADIUS_M / 360.0;
            let mut drawn = Vec::with_capacity(self.fences.len());
            for fence in &self.fences {
                let fix = self.fix_from(fence.center.lat, fence.center.lon)?;
                drawn.push(DrawnGeofence {
                    geofence_id: fence.id.clone(),
                    screen_center: to_screen(fix, &viewport),
                    screen_radius: fence.radius_meters / meters_per_degree * VIEWPORT_SCALE,
                });
            }
            Ok(ViewportRendering { drawn })
        })
    }
}

fn to_screen(fix: PositionFix, viewport: &CrsTag) -> Coordinate {
    let (x, y) = match viewport.axis_order() {
        AxisOrder::XY => (fix.lon, fix.lat),
        AxisOrder::YX => (fix.lat, fix.lon),
    };
    Coordinate::new(x * VIEWPORT_SCALE + VIEWPORT_OFFSET, -y * VIEWPORT_SCALE + VIEWPORT_OFFSET)
}

impl Sut for GeofenceApp {
    fn sut_id(&self) -> &str {
        GEOFENCE_SUT
    }

    fn operations(&self) -> &[OperationDescriptor] {
        &self.operations
    }

    fn weaver(&self) -> &Weaver {
        &self.weaver
    }

    fn weaver_mut(&mut self) -> &mut Weaver {
        &mut self.weaver
    }

    fn dispatch(&mut self, name: &str, args: Vec<Value>) -> Result<Value> {
        let mismatch = || Error::ArgumentKindMismatch { operation: name.into() };
        match name {
            "getFromLocation" => match args.as_slice() {
                [Value::Number(a), Value::Number(b)] => {
                    Ok(Value::Other(Datum::Fix(self.get_from_location(*a, *b)?)))
                }
                _ => Err(mismatch()),
            },
            "geofencesContaining" => match args.as_slice() {
                [Value::Other(Datum::Fix(f))] => {
                    Ok(Value::Other(Datum::Ids(self.geofences_containing(*f)?)))
                }
                _ => Err(mismatch()),
            },
            "renderGeofences" => match args.as_slice() {
                [Value::Other(Datum::Crs(c))] => {
                    Ok(Value::Other(Datum::Rendering(self.render_geofences(c)?)))
                }
                _ => Err(mismatch()),
            },
            other => Err(Error::UnknownOperation(other.into())),
        }
    }
}

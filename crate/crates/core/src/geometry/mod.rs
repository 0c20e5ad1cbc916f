//! Minimal geometry kernel: coordinates, exterior-ring polygons, centroid,
//! great-circle distance and the ten polygon/polygon topological predicates.

mod predicates;

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub use predicates::{locate, relate, topological_predicate, Location, Predicate, Relation};

/// Absolute tolerance used when deciding whether a point lies on a boundary.
pub const BOUNDARY_EPSILON: f64 = 1e-9;

/// Mean Earth radius used by [`haversine_distance`], in meters.
pub const EARTH_RADIUS_M: f64 = 6_371_000.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coordinate {
    pub x: f64,
    pub y: f64,
}

impl Coordinate {
    pub const fn new(x: f64, y: f64) -> Self {
        Coordinate { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub(crate) fn sub(self, other: Coordinate) -> Coordinate {
        Coordinate::new(self.x - other.x, self.y - other.y)
    }

    pub(crate) fn cross(self, other: Coordinate) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub(crate) fn dot(self, other: Coordinate) -> f64 {
        self.x * other.x + self.y * other.y
    }
}

impl From<(f64, f64)> for Coordinate {
    fn from((x, y): (f64, f64)) -> Self {
        Coordinate::new(x, y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AxisOrder {
    /// First component is easting/longitude.
    XY,
    /// First component is northing/latitude.
    YX,
}

/// Identifies the coordinate system a geometry is expressed in.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CrsTag {
    id: String,
    axis_order: AxisOrder,
}

impl CrsTag {
    /// Returns `None` for an empty id.
    pub fn new(id: impl Into<String>, axis_order: AxisOrder) -> Option<Self> {
        let id = id.into();
        if id.is_empty() {
            return None;
        }
        Some(CrsTag { id, axis_order })
    }

    pub fn lonlat() -> Self {
        CrsTag { id: "lonlat".into(), axis_order: AxisOrder::XY }
    }

    pub fn latlon() -> Self {
        CrsTag { id: "latlon".into(), axis_order: AxisOrder::YX }
    }

    pub fn planar() -> Self {
        CrsTag { id: "planar".into(), axis_order: AxisOrder::XY }
    }

    /// Resolves one of the well-known ids (`lonlat`, `latlon`, `planar`).
    pub fn from_id(id: &str) -> Option<Self> {
        match id {
            "lonlat" => Some(Self::lonlat()),
            "latlon" => Some(Self::latlon()),
            "planar" => Some(Self::planar()),
            _ => None,
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn axis_order(&self) -> AxisOrder {
        self.axis_order
    }
}

/// A polygon described by its closed exterior ring.
///
/// Self-intersecting and repeated-vertex rings are accepted; containment is
/// decided with the even-odd rule.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    ring: Vec<Coordinate>,
    crs: CrsTag,
}

impl Polygon {
    pub fn ring(&self) -> &[Coordinate] {
        &self.ring
    }

    pub fn crs(&self) -> &CrsTag {
        &self.crs
    }

    pub fn into_ring(self) -> Vec<Coordinate> {
        self.ring
    }

    /// Axis-aligned rectangle, counter-clockwise from the lower-left corner.
    pub fn rectangle(min_x: f64, min_y: f64, max_x: f64, max_y: f64, crs: CrsTag) -> Result<Self> {
        rebuild_polygon(
            alloc::vec![
                Coordinate::new(min_x, min_y),
                Coordinate::new(max_x, min_y),
                Coordinate::new(max_x, max_y),
                Coordinate::new(min_x, max_y),
                Coordinate::new(min_x, min_y),
            ],
            crs,
        )
    }

    /// Signed shoelace area; positive for counter-clockwise rings.
    pub fn signed_area(&self) -> f64 {
        let origin = self.ring[0];
        let twice: f64 = self
            .ring
            .windows(2)
            .map(|w| w[0].sub(origin).cross(w[1].sub(origin)))
            .sum();
        twice / 2.0
    }

    pub fn area(&self) -> f64 {
        libm::fabs(self.signed_area())
    }

    /// `(min_x, min_y, max_x, max_y)`
    pub fn bounds(&self) -> (f64, f64, f64, f64) {
        self.ring.iter().fold(
            (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY),
            |(x0, y0, x1, y1), c| (x0.min(c.x), y0.min(c.y), x1.max(c.x), y1.max(c.y)),
        )
    }
}

/// Wraps `coords` into a polygon verbatim. No validity repair is attempted, so
/// collapsed or self-intersecting rings are kept as given.
pub fn rebuild_polygon(coords: Vec<Coordinate>, crs: CrsTag) -> Result<Polygon> {
    if coords.len() < 4 {
        return Err(Error::TooFewCoordinates { len: coords.len() });
    }
    if coords.iter().any(|c| !c.is_finite()) {
        return Err(Error::NonFiniteCoordinate);
    }
    if coords[0] != coords[coords.len() - 1] {
        return Err(Error::RingNotClosed);
    }
    Ok(Polygon { ring: coords, crs })
}

/// Area-weighted centroid of the ring. Zero-area rings fall back to the mean
/// of their distinct vertices.
pub fn centroid(p: &Polygon) -> Coordinate {
    let ring = p.ring();
    let origin = ring[0];
    let (min_x, min_y, max_x, max_y) = p.bounds();
    let extent = (max_x - min_x).max(max_y - min_y);

    let mut twice_area = 0.0;
    let mut cx = 0.0;
    let mut cy = 0.0;
    for w in ring.windows(2) {
        let a = w[0].sub(origin);
        let b = w[1].sub(origin);
        let cross = a.cross(b);
        twice_area += cross;
        cx += (a.x + b.x) * cross;
        cy += (a.y + b.y) * cross;
    }

    if libm::fabs(twice_area) <= 1e-12 * extent * extent || extent == 0.0 {
        return distinct_vertex_mean(ring);
    }
    Coordinate::new(origin.x + cx / (3.0 * twice_area), origin.y + cy / (3.0 * twice_area))
}

fn distinct_vertex_mean(ring: &[Coordinate]) -> Coordinate {
    let mut distinct: Vec<Coordinate> = Vec::with_capacity(ring.len());
    for c in &ring[..ring.len() - 1] {
        if !distinct.contains(c) {
            distinct.push(*c);
        }
    }
    let n = distinct.len() as f64;
    let (sx, sy) = distinct.iter().fold((0.0, 0.0), |(sx, sy), c| (sx + c.x, sy + c.y));
    Coordinate::new(sx / n, sy / n)
}

/// A latitude/longitude position in degrees. Out-of-range values are
/// representable so that mutated fixes can flow through the corpus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositionFix {
    pub lat: f64,
    pub lon: f64,
}

impl PositionFix {
    pub const fn new(lat: f64, lon: f64) -> Self {
        PositionFix { lat, lon }
    }

    pub fn is_valid(&self) -> bool {
        (-90.0..=90.0).contains(&self.lat) && (-180.0..=180.0).contains(&self.lon)
    }
}

/// Great-circle distance in meters on a sphere of radius [`EARTH_RADIUS_M`].
pub fn haversine_distance(a: PositionFix, b: PositionFix) -> f64 {
    let lat1 = a.lat.to_radians();
    let lat2 = b.lat.to_radians();
    let dlat = (b.lat - a.lat).to_radians();
    let dlon = (b.lon - a.lon).to_radians();

    let s_lat = libm::sin(dlat / 2.0);
    let s_lon = libm::sin(dlon / 2.0);
    let h = s_lat * s_lat + libm::cos(lat1) * libm::cos(lat2) * s_lon * s_lon;
    2.0 * EARTH_RADIUS_M * libm::asin(libm::sqrt(h.clamp(0.0, 1.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn poly(coords: &[(f64, f64)]) -> Polygon {
        rebuild_polygon(coords.iter().copied().map(Coordinate::from).collect(), CrsTag::planar())
            .unwrap()
    }

    #[test]
    fn centroid_of_squares_and_triangle() {
        let sq = poly(&[(0., 0.), (4., 0.), (4., 4.), (0., 4.), (0., 0.)]);
        assert_eq!(centroid(&sq), Coordinate::new(2.0, 2.0));
        let unit = poly(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.), (0., 0.)]);
        assert_eq!(centroid(&unit), Coordinate::new(0.5, 0.5));
        let tri = poly(&[(0., 0.), (3., 0.), (0., 3.), (0., 0.)]);
        assert_eq!(centroid(&tri), Coordinate::new(1.0, 1.0));
    }

    #[test]
    fn centroid_is_orientation_independent() {
        let cw = poly(&[(0., 0.), (0., 4.), (4., 4.), (4., 0.), (0., 0.)]);
        assert_eq!(centroid(&cw), Coordinate::new(2.0, 2.0));
    }

    #[test]
    fn degenerate_centroid_uses_distinct_vertex_mean() {
        // collinear ring, zero area
        let line = poly(&[(0., 0.), (2., 0.), (6., 0.), (2., 0.), (0., 0.)]);
        let c = centroid(&line);
        assert!((c.x - 8.0 / 3.0).abs() < 1e-12 && c.y == 0.0);

        let point = poly(&[(1., 1.), (1., 1.), (1., 1.), (1., 1.)]);
        assert_eq!(centroid(&point), Coordinate::new(1.0, 1.0));
    }

    #[test]
    fn rebuild_accepts_collapsed_ring() {
        let p = poly(&[(2., 2.), (4., 0.), (4., 4.), (0., 4.), (2., 2.)]);
        assert_eq!(p.ring().len(), 5);
    }

    #[test]
    fn rebuild_errors() {
        let short = vec![Coordinate::new(0., 0.), Coordinate::new(4., 0.), Coordinate::new(4., 4.)];
        assert_eq!(
            rebuild_polygon(short, CrsTag::planar()),
            Err(Error::TooFewCoordinates { len: 3 })
        );
        let open = vec![
            Coordinate::new(0., 0.),
            Coordinate::new(4., 0.),
            Coordinate::new(4., 4.),
            Coordinate::new(0., 4.),
        ];
        assert_eq!(rebuild_polygon(open, CrsTag::planar()), Err(Error::RingNotClosed));
        let nan = vec![
            Coordinate::new(0., 0.),
            Coordinate::new(f64::NAN, 0.),
            Coordinate::new(4., 4.),
            Coordinate::new(0., 0.),
        ];
        assert_eq!(rebuild_polygon(nan, CrsTag::planar()), Err(Error::NonFiniteCoordinate));
    }

    #[test]
    fn haversine_reference_values() {
        let origin = PositionFix::new(0.0, 0.0);
        assert_eq!(haversine_distance(origin, origin), 0.0);
        // one degree of arc and half a circumference on the mean sphere
        let one_degree = 2.0 * core::f64::consts::PI * EARTH_RADIUS_M / 360.0;
        let d1 = haversine_distance(origin, PositionFix::new(0.0, 1.0));
        assert!((d1 - one_degree).abs() < 1e-6, "{d1}");
        assert!((d1 - 111_195.0).abs() < 1.0);
        let d180 = haversine_distance(origin, PositionFix::new(0.0, 180.0));
        assert!((d180 - core::f64::consts::PI * EARTH_RADIUS_M).abs() < 1e-6);
        assert!((d180 - 20_015_087.0).abs() < 1.0);
    }

    #[test]
    fn crs_tag_rejects_empty_id() {
        assert!(CrsTag::new("", AxisOrder::XY).is_none());
        assert_eq!(CrsTag::from_id("latlon").unwrap().axis_order(), AxisOrder::YX);
        assert!(CrsTag::from_id("EPSG:9999").is_none());
    }

    #[test]
    fn fix_validity() {
        assert!(PositionFix::new(43.36, -8.41).is_valid());
        assert!(!PositionFix::new(-8.41, 243.36).is_valid());
    }
}

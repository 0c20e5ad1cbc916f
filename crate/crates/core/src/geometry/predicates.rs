//! Polygon/polygon topological relations.
//!
//! Both rings are split at every mutual and self intersection. Each resulting
//! boundary piece is located against the other polygon, and every face of the
//! arrangement is probed by stepping off a piece's midpoint to either side.
//! That yields the interior/boundary/exterior intersection pattern from which
//! the named predicates are read.

use alloc::string::ToString;
use alloc::vec::Vec;

use super::{Coordinate, Polygon, BOUNDARY_EPSILON};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Location {
    Interior,
    Boundary,
    Exterior,
}

/// Locates `p` against `poly`: on the ring (within [`BOUNDARY_EPSILON`]) is
/// boundary, otherwise the even-odd rule decides.
pub fn locate(p: Coordinate, poly: &Polygon) -> Location {
    let ring = poly.ring();
    if ring
        .windows(2)
        .any(|w| segment_distance(p, w[0], w[1]) <= BOUNDARY_EPSILON)
    {
        return Location::Boundary;
    }
    if even_odd_inside(p, ring) {
        Location::Interior
    } else {
        Location::Exterior
    }
}

fn even_odd_inside(p: Coordinate, ring: &[Coordinate]) -> bool {
    let mut inside = false;
    for w in ring.windows(2) {
        let (a, b) = (w[0], w[1]);
        if (a.y > p.y) != (b.y > p.y) {
            let x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if p.x < x_cross {
                inside = !inside;
            }
        }
    }
    inside
}

fn segment_distance(p: Coordinate, a: Coordinate, b: Coordinate) -> f64 {
    let ab = b.sub(a);
    let ap = p.sub(a);
    let len2 = ab.dot(ab);
    let t = if len2 == 0.0 { 0.0 } else { (ap.dot(ab) / len2).clamp(0.0, 1.0) };
    let proj = Coordinate::new(a.x + t * ab.x, a.y + t * ab.y);
    let d = p.sub(proj);
    libm::sqrt(d.dot(d))
}

/// Which parts of `a` (rows) meet which parts of `b` (columns). The
/// exterior/exterior cell is always non-empty and omitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Relation {
    pub ii: bool,
    pub ib: bool,
    pub ie: bool,
    pub bi: bool,
    pub bb: bool,
    pub be: bool,
    pub ei: bool,
    pub eb: bool,
}

impl Relation {
    pub fn transpose(self) -> Relation {
        Relation {
            ii: self.ii,
            ib: self.bi,
            ie: self.ei,
            bi: self.ib,
            bb: self.bb,
            be: self.eb,
            ei: self.ie,
            eb: self.be,
        }
    }

    fn mark(&mut self, of_a: Location, of_b: Location) {
        use Location::*;
        match (of_a, of_b) {
            (Interior, Interior) => self.ii = true,
            (Interior, Boundary) => self.ib = true,
            (Interior, Exterior) => self.ie = true,
            (Boundary, Interior) => self.bi = true,
            (Boundary, Boundary) => self.bb = true,
            (Boundary, Exterior) => self.be = true,
            (Exterior, Interior) => self.ei = true,
            (Exterior, Boundary) => self.eb = true,
            (Exterior, Exterior) => {}
        }
    }

    pub fn intersects(&self) -> bool {
        self.ii || self.ib || self.bi || self.bb
    }

    pub fn contains(&self) -> bool {
        self.ii && !self.ei && !self.eb
    }

    pub fn covers(&self) -> bool {
        self.intersects() && !self.ei && !self.eb
    }

    pub fn touches(&self) -> bool {
        !self.ii && (self.ib || self.bi || self.bb)
    }

    pub fn overlaps(&self) -> bool {
        self.ii && self.ie && self.ei
    }

    pub fn equals(&self) -> bool {
        self.ii && !self.ie && !self.be && !self.ei && !self.eb
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Predicate {
    Contains,
    CoveredBy,
    Covers,
    Crosses,
    Disjoint,
    Touches,
    EqualsTop,
    Intersects,
    Overlaps,
    Within,
}

impl Predicate {
    pub const ALL: [Predicate; 10] = [
        Predicate::Contains,
        Predicate::CoveredBy,
        Predicate::Covers,
        Predicate::Crosses,
        Predicate::Disjoint,
        Predicate::Touches,
        Predicate::EqualsTop,
        Predicate::Intersects,
        Predicate::Overlaps,
        Predicate::Within,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Predicate::Contains => "contains",
            Predicate::CoveredBy => "coveredBy",
            Predicate::Covers => "covers",
            Predicate::Crosses => "crosses",
            Predicate::Disjoint => "disjoint",
            Predicate::Touches => "touches",
            Predicate::EqualsTop => "equalsTop",
            Predicate::Intersects => "intersects",
            Predicate::Overlaps => "overlaps",
            Predicate::Within => "within",
        }
    }

    pub fn from_name(name: &str) -> Option<Predicate> {
        Self::ALL.into_iter().find(|p| p.name() == name)
    }

    /// Reads the predicate off a precomputed relation of `(a, b)`.
    pub fn holds(self, r: &Relation) -> bool {
        match self {
            Predicate::Contains => r.contains(),
            Predicate::CoveredBy => r.transpose().covers(),
            Predicate::Covers => r.covers(),
            // crossing needs an operand of lower dimension; two areas never cross
            Predicate::Crosses => false,
            Predicate::Disjoint => !r.intersects(),
            Predicate::Touches => r.touches(),
            Predicate::EqualsTop => r.equals(),
            Predicate::Intersects => r.intersects(),
            Predicate::Overlaps => r.overlaps(),
            Predicate::Within => r.transpose().contains(),
        }
    }

    pub fn evaluate(self, a: &Polygon, b: &Polygon) -> bool {
        self.holds(&relate(a, b))
    }
}

impl core::str::FromStr for Predicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Predicate::from_name(s).ok_or_else(|| Error::UnknownPredicate(s.to_string()))
    }
}

/// Evaluates one of the ten named predicates on `(a, b)`.
pub fn topological_predicate(name: &str, a: &Polygon, b: &Polygon) -> Result<bool> {
    let predicate: Predicate = name.parse()?;
    Ok(predicate.evaluate(a, b))
}

#[derive(Debug, Clone, Copy)]
struct Piece {
    start: Coordinate,
    end: Coordinate,
    from_a: bool,
}

impl Piece {
    fn midpoint(&self) -> Coordinate {
        Coordinate::new((self.start.x + self.end.x) / 2.0, (self.start.y + self.end.y) / 2.0)
    }

    fn length(&self) -> f64 {
        let d = self.end.sub(self.start);
        libm::sqrt(d.dot(d))
    }
}

/// Computes the intersection pattern of `a` against `b`.
pub fn relate(a: &Polygon, b: &Polygon) -> Relation {
    let segments: Vec<(Coordinate, Coordinate, bool)> = a
        .ring()
        .windows(2)
        .map(|w| (w[0], w[1], true))
        .chain(b.ring().windows(2).map(|w| (w[0], w[1], false)))
        .collect();

    let mut pieces = Vec::new();
    for (i, &(p, q, from_a)) in segments.iter().enumerate() {
        let mut params: Vec<f64> = alloc::vec![0.0, 1.0];
        for (j, &(r, u, _)) in segments.iter().enumerate() {
            if i != j {
                split_params(p, q, r, u, &mut params);
            }
        }
        params.sort_by(f64::total_cmp);
        let points = dedup_points(p, q, &params);
        if points.len() == 1 {
            pieces.push(Piece { start: points[0], end: points[0], from_a });
        }
        for w in points.windows(2) {
            pieces.push(Piece { start: w[0], end: w[1], from_a });
        }
    }

    let mut rel = Relation::default();

    // boundary pieces and their end points
    for piece in &pieces {
        let other = if piece.from_a { b } else { a };
        for pt in [piece.start, piece.midpoint(), piece.end] {
            let loc = locate(pt, other);
            if piece.from_a {
                rel.mark(Location::Boundary, loc);
            } else {
                rel.mark(loc, Location::Boundary);
            }
        }
    }

    // faces: step off each piece's midpoint into the faces on either side
    for (k, piece) in pieces.iter().enumerate() {
        let len = piece.length();
        if len <= BOUNDARY_EPSILON {
            continue;
        }
        let m = piece.midpoint();
        let mut clearance = len / 2.0;
        for (j, other) in pieces.iter().enumerate() {
            if j == k {
                continue;
            }
            let d = segment_distance(m, other.start, other.end);
            if d > BOUNDARY_EPSILON {
                clearance = clearance.min(d);
            }
        }
        let step = clearance / 2.0;
        let dir = piece.end.sub(piece.start);
        let normal = Coordinate::new(-dir.y / len, dir.x / len);
        for side in [1.0, -1.0] {
            let probe = Coordinate::new(m.x + side * step * normal.x, m.y + side * step * normal.y);
            let in_a = even_odd_inside(probe, a.ring());
            let in_b = even_odd_inside(probe, b.ring());
            rel.mark(face_location(in_a), face_location(in_b));
        }
    }

    rel
}

fn face_location(inside: bool) -> Location {
    if inside {
        Location::Interior
    } else {
        Location::Exterior
    }
}

/// Parameters along `p→q` where segment `r→u` touches or crosses it.
fn split_params(p: Coordinate, q: Coordinate, r: Coordinate, u: Coordinate, out: &mut Vec<f64>) {
    let pq = q.sub(p);
    let len2 = pq.dot(pq);
    if len2 == 0.0 {
        return;
    }
    for end in [r, u] {
        if segment_distance(end, p, q) <= BOUNDARY_EPSILON {
            out.push((end.sub(p).dot(pq) / len2).clamp(0.0, 1.0));
        }
    }
    let ru = u.sub(r);
    let denom = pq.cross(ru);
    if libm::fabs(denom) > f64::EPSILON * libm::sqrt(len2 * ru.dot(ru)) {
        let rp = r.sub(p);
        let t = rp.cross(ru) / denom;
        let s = rp.cross(pq) / denom;
        if (0.0..=1.0).contains(&t) && (0.0..=1.0).contains(&s) {
            out.push(t);
        }
    }
}

fn dedup_points(p: Coordinate, q: Coordinate, params: &[f64]) -> Vec<Coordinate> {
    let pq = q.sub(p);
    let mut points: Vec<Coordinate> = Vec::with_capacity(params.len());
    for &t in params {
        let pt = if t == 1.0 { q } else { Coordinate::new(p.x + t * pq.x, p.y + t * pq.y) };
        match points.last_mut() {
            Some(last) if segment_distance(pt, *last, *last) <= BOUNDARY_EPSILON => {
                if t == 1.0 {
                    *last = q;
                }
            }
            _ => points.push(pt),
        }
    }
    points
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{rebuild_polygon, CrsTag};

    fn square(x0: f64, y0: f64, x1: f64, y1: f64) -> Polygon {
        Polygon::rectangle(x0, y0, x1, y1, CrsTag::planar()).unwrap()
    }

    fn poly(coords: &[(f64, f64)]) -> Polygon {
        rebuild_polygon(coords.iter().copied().map(Coordinate::from).collect(), CrsTag::planar())
            .unwrap()
    }

    fn eval(name: &str, a: &Polygon, b: &Polygon) -> bool {
        topological_predicate(name, a, b).unwrap()
    }

    #[test]
    fn separated_boxes() {
        let a = square(0., 0., 1., 1.);
        let b = square(5., 5., 6., 6.);
        assert!(eval("disjoint", &a, &b));
        assert!(!eval("intersects", &a, &b));
        assert!(!eval("touches", &a, &b));
    }

    #[test]
    fn strict_nesting() {
        let outer = square(0., 0., 4., 4.);
        let inner = square(1., 1., 2., 2.);
        assert!(eval("contains", &outer, &inner));
        assert!(eval("within", &inner, &outer));
        assert!(eval("covers", &outer, &inner));
        assert!(eval("coveredBy", &inner, &outer));
        assert!(!eval("overlaps", &outer, &inner));
        assert!(!eval("contains", &inner, &outer));
    }

    #[test]
    fn partial_overlap() {
        let a = square(0., 0., 2., 2.);
        let b = square(1., 1., 3., 3.);
        assert!(eval("overlaps", &a, &b));
        assert!(eval("overlaps", &b, &a));
        assert!(eval("intersects", &a, &b));
        assert!(!eval("contains", &a, &b));
        assert!(!eval("touches", &a, &b));
        assert!(!eval("crosses", &a, &b));
    }

    #[test]
    fn shared_edge_touches() {
        let a = square(0., 0., 2., 2.);
        let b = square(2., 0., 4., 2.);
        assert!(eval("touches", &a, &b));
        assert!(eval("intersects", &a, &b));
        assert!(!eval("overlaps", &a, &b));
        // corner contact only
        let c = square(2., 2., 3., 3.);
        assert!(eval("touches", &a, &c));
    }

    #[test]
    fn covers_but_not_contains_with_shared_boundary() {
        let a = square(0., 0., 4., 4.);
        let b = square(0., 0., 2., 2.);
        assert!(eval("covers", &a, &b));
        assert!(eval("contains", &a, &b));
        let r = relate(&a, &b);
        assert!(r.bb && r.ii && !r.ei && !r.eb);
    }

    #[test]
    fn rotated_ring_is_topologically_equal() {
        let a = poly(&[(0., 0.), (4., 0.), (4., 4.), (0., 4.), (0., 0.)]);
        let b = poly(&[(4., 0.), (4., 4.), (0., 4.), (0., 0.), (4., 0.)]);
        assert!(eval("equalsTop", &a, &b));
        let reversed = poly(&[(0., 0.), (0., 4.), (4., 4.), (4., 0.), (0., 0.)]);
        assert!(eval("equalsTop", &a, &reversed));
        assert!(!eval("equalsTop", &a, &square(0., 0., 4., 5.)));
    }

    #[test]
    fn collapsed_ring_still_evaluates() {
        // centroid-collapsed [0,4]^2: (2,2) lies on the diagonal, leaving the x+y>=4 triangle
        let collapsed = poly(&[(2., 2.), (4., 0.), (4., 4.), (0., 4.), (2., 2.)]);
        assert!(!eval("contains", &collapsed, &square(1., 1., 2., 2.)));
        assert!(eval("contains", &collapsed, &square(3., 3., 3.5, 3.5)));
        assert!(eval("disjoint", &collapsed, &square(0.2, 0.2, 0.8, 0.5)));
    }

    #[test]
    fn bow_tie_even_odd() {
        let bow = poly(&[(0., 0.), (4., 4.), (4., 0.), (0., 4.), (0., 0.)]);
        assert_eq!(locate(Coordinate::new(3.5, 2.0), &bow), Location::Interior);
        assert_eq!(locate(Coordinate::new(2.0, 3.5), &bow), Location::Exterior);
        assert_eq!(locate(Coordinate::new(2.0, 2.0), &bow), Location::Boundary);
        assert!(eval("intersects", &bow, &square(3., 1., 3.5, 1.5)));
    }

    #[test]
    fn unknown_predicate() {
        let a = square(0., 0., 1., 1.);
        assert_eq!(
            topological_predicate("near", &a, &a),
            Err(Error::UnknownPredicate("near".into()))
        );
    }

    #[test]
    fn names_round_trip() {
        for p in Predicate::ALL {
            assert_eq!(Predicate::from_name(p.name()), Some(p));
        }
    }
}

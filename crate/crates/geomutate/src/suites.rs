//! Bundled test suites for the corpus SUTs, generated from fixture sets.

use std::sync::Arc;

use geomutate_core::corpus::{GeofenceApp, ReparcelApp};
use geomutate_core::geometry::AxisOrder;

use crate::error::{Error, Result};
use crate::fixtures::{FixtureSet, MergeExpectation};
use crate::harness::{ensure, Suite, TestCase, TestFailure};

pub const GEOFENCE_STRONG: &str = include_str!("../fixtures/geofence-strong.json");
pub const GEOFENCE_WEAK: &str = include_str!("../fixtures/geofence-weak.json");
pub const REPARCEL_STRONG: &str = include_str!("../fixtures/reparcel-strong.json");
pub const REPARCEL_WEAK: &str = include_str!("../fixtures/reparcel-weak.json");

pub const SUITE_NAMES: [&str; 2] = ["strong", "weak"];

/// Fixture set behind a bundled suite.
pub fn bundled_fixtures(sut_id: &str, suite: &str) -> Result<FixtureSet> {
    let text = match (sut_id, suite) {
        ("geofence", "strong") => GEOFENCE_STRONG,
        ("geofence", "weak") => GEOFENCE_WEAK,
        ("reparcel", "strong") => REPARCEL_STRONG,
        ("reparcel", "weak") => REPARCEL_WEAK,
        ("geofence" | "reparcel", other) => return Err(Error::UnknownSuite(other.into())),
        (sut, _) => return Err(geomutate_core::Error::UnknownSut(sut.into()).into()),
    };
    FixtureSet::from_json(text)
}

/// One test per probe point, plus one checking where each geofence is drawn.
pub fn geofence_suite(name: &str, fixtures: &FixtureSet) -> Suite<GeofenceApp> {
    let fixtures = Arc::new(fixtures.clone());
    let mut suite = Suite::new(name);

    for (i, probe) in fixtures.probes.iter().enumerate() {
        let fx = Arc::clone(&fixtures);
        suite.push(TestCase::new(format!("probe:{}", probe.name), move |app: &mut GeofenceApp| {
            load_geofences(app, &fx)?;
            let probe = &fx.probes[i];
            let fix = app.get_from_location(probe.axis0, probe.axis1)?;
            let inside = app.geofences_containing(fix)?;
            ensure(inside == probe.inside, || {
                format!("{} is inside {:?}, expected {:?}", probe.name, inside, probe.inside)
            })
        }));
    }

    if !fixtures.geofences.is_empty() {
        let fx = Arc::clone(&fixtures);
        suite.push(TestCase::new("render:true-centres", move |app: &mut GeofenceApp| {
            load_geofences(app, &fx)?;
            let viewport = fx.viewport_crs();
            let rendering = app.render_geofences(&viewport)?;
            ensure(rendering.drawn.len() == fx.geofences.len(), || "one entry per geofence".into())?;
            for (drawn, fence) in rendering.drawn.iter().zip(&fx.geofences) {
                let (x, y) = match viewport.axis_order() {
                    AxisOrder::XY => (fence.lon, fence.lat),
                    AxisOrder::YX => (fence.lat, fence.lon),
                };
                let (sx, sy) = (x * 10.0 + 500.0, -y * 10.0 + 500.0);
                let c = drawn.screen_center;
                ensure((c.x - sx).abs() < 1e-9 && (c.y - sy).abs() < 1e-9, || {
                    format!("{} drawn at ({}, {}), expected ({sx}, {sy})", fence.id, c.x, c.y)
                })?;
            }
            Ok(())
        }));
    }
    suite
}

fn load_geofences(app: &mut GeofenceApp, fixtures: &FixtureSet) -> std::result::Result<(), TestFailure> {
    for g in &fixtures.geofences {
        let fence = g.to_geofence().map_err(|e| TestFailure::Assertion(e.to_string()))?;
        app.add_geofence(fence)?;
    }
    Ok(())
}

fn load_parcels(app: &mut ReparcelApp, fixtures: &FixtureSet) -> std::result::Result<(), TestFailure> {
    for p in &fixtures.parcels {
        let parcel = p.to_parcel().map_err(|e| TestFailure::Assertion(e.to_string()))?;
        app.add_parcel(parcel)?;
    }
    Ok(())
}

/// Variant name of an error, e.g. `NotAdjacent` for `NotAdjacent` or
/// `UnknownParcel("Z")`.
pub fn error_kind(e: &geomutate_core::Error) -> String {
    let debug = format!("{e:?}");
    debug.split(['(', ' ', '{']).next().unwrap_or_default().to_string()
}

/// One test per merge scenario and one per constraint check.
pub fn reparcel_suite(name: &str, fixtures: &FixtureSet) -> Suite<ReparcelApp> {
    let fixtures = Arc::new(fixtures.clone());
    let mut suite = Suite::new(name);

    for (i, merge) in fixtures.merges.iter().enumerate() {
        let fx = Arc::clone(&fixtures);
        suite.push(TestCase::new(format!("merge:{}", merge.name), move |app: &mut ReparcelApp| {
            load_parcels(app, &fx)?;
            let merge = &fx.merges[i];
            let result = app.merge_parcels(&merge.a, &merge.b);
            match (&merge.expect, result) {
                (MergeExpectation::Shape(shape), Ok(parcel)) => {
                    let expected = shape.to_polygon().map_err(|e| TestFailure::Assertion(e.to_string()))?;
                    ensure(parcel.shape == expected, || {
                        format!("merged shape {:?}, expected {:?}", parcel.shape.ring(), expected.ring())
                    })?;
                    ensure(app.parcels().len() == fx.parcels.len() - 1, || {
                        "merge must replace both inputs by one parcel".into()
                    })
                }
                (MergeExpectation::Shape(_), Err(e)) => Err(TestFailure::Error(e)),
                (MergeExpectation::Error(kind), Ok(parcel)) => Err(TestFailure::Assertion(format!(
                    "expected {kind}, merge produced {}",
                    parcel.id
                ))),
                (MergeExpectation::Error(kind), Err(e)) => {
                    ensure(error_kind(e.cause()) == *kind, || format!("expected {kind}, got {e}"))?;
                    ensure(app.parcels().len() == fx.parcels.len(), || {
                        "a rejected merge must leave the parcels untouched".into()
                    })
                }
            }
        }));
    }

    for (i, check) in fixtures.constraints.iter().enumerate() {
        let fx = Arc::clone(&fixtures);
        suite.push(TestCase::new(format!("constraint:{}", check.name), move |app: &mut ReparcelApp| {
            let check = &fx.constraints[i];
            let a = check.a.to_polygon().map_err(|e| TestFailure::Assertion(e.to_string()))?;
            let b = check.b.to_polygon().map_err(|e| TestFailure::Assertion(e.to_string()))?;
            let holds = app.check_constraint(&check.predicate, &a, &b)?;
            ensure(holds == check.expected, || {
                format!("{} is {holds}, expected {}", check.predicate, check.expected)
            })
        }));
    }
    suite
}

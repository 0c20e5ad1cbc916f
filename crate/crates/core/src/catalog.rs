//! The GIS mutation operators.
//!
//! An operator is plain data: an argument transform plus the names of the
//! operations it targets. Adding an operator means adding an entry to
//! [`OPERATORS`]; the engine needs no change.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geometry::{centroid, rebuild_polygon};
use crate::interception::{self, Advice, JoinPoint, OperationDescriptor, Transform};
use crate::value::Value;

pub const CHANGE_COORD_SYS: &str = "ChangeCoordSys";
pub const BOOLEAN_POLYGON_CONSTRAINT: &str = "BooleanPolygonConstraint";

/// Operation names targeted by [`BOOLEAN_POLYGON_CONSTRAINT`].
pub const PREDICATE_OPERATIONS: [&str; 10] = [
    "contains",
    "coveredBy",
    "covers",
    "crosses",
    "disjoint",
    "touches",
    "equalsTop",
    "intersects",
    "overlaps",
    "within",
];

#[derive(Debug, Clone, Copy)]
pub struct MutationOperator {
    pub id: &'static str,
    pub description: &'static str,
    pub transform: Transform,
    pub target_operation_names: &'static [&'static str],
}

impl MutationOperator {
    pub fn targets(&self, operation: &str) -> bool {
        self.target_operation_names.contains(&operation)
    }

    /// Advice for this operator restricted to the given operation names.
    pub fn advice_for<'a>(&self, targets: impl IntoIterator<Item = &'a str>) -> Advice {
        Advice {
            operator_id: self.id.into(),
            transform: self.transform,
            target_names: targets.into_iter().map(String::from).collect::<BTreeSet<_>>(),
        }
    }

    /// Advice covering every operation the operator names.
    pub fn advice(&self) -> Advice {
        self.advice_for(self.target_operation_names.iter().copied())
    }
}

pub static OPERATORS: [MutationOperator; 2] = [
    MutationOperator {
        id: CHANGE_COORD_SYS,
        description: "swaps the first two numeric arguments, exchanging the axis order of a location",
        transform: change_coord_sys_transform,
        target_operation_names: &["getFromLocation"],
    },
    MutationOperator {
        id: BOOLEAN_POLYGON_CONSTRAINT,
        description: "moves the first and last ring vertex of the first polygon argument to its centroid",
        transform: boolean_polygon_constraint_transform,
        target_operation_names: &PREDICATE_OPERATIONS,
    },
];

/// Exchanges `args[0]` and `args[1]`; any further arguments pass through.
pub fn change_coord_sys_transform(jp: &JoinPoint) -> Result<JoinPoint> {
    let (Some(Value::Number(first)), Some(Value::Number(second))) = (jp.args.first(), jp.args.get(1))
    else {
        return Err(Error::InapplicableArguments {
            operator: CHANGE_COORD_SYS,
            reason: "first two arguments must be numbers",
        });
    };
    let mut out = jp.clone();
    out.args[0] = Value::Number(*second);
    out.args[1] = Value::Number(*first);
    Ok(out)
}

/// Replaces the first and closing coordinate of the first polygon argument by
/// that polygon's centroid and rebuilds it without repair. The second
/// argument is left alone.
pub fn boolean_polygon_constraint_transform(jp: &JoinPoint) -> Result<JoinPoint> {
    let Some(Value::Polygon(first)) = jp.args.first() else {
        return Err(Error::InapplicableArguments {
            operator: BOOLEAN_POLYGON_CONSTRAINT,
            reason: "first argument must be a polygon",
        });
    };
    let c = centroid(first);
    let mut ring = first.ring().to_vec();
    let last = ring.len() - 1;
    ring[0] = c;
    ring[last] = c;
    let collapsed = rebuild_polygon(ring, first.crs().clone())?;

    let mut out = jp.clone();
    out.args[0] = Value::Polygon(collapsed);
    Ok(out)
}

pub fn list_operators() -> &'static [MutationOperator] {
    &OPERATORS
}

pub fn find_operator(id: &str) -> Result<&'static MutationOperator> {
    OPERATORS
        .iter()
        .find(|op| op.id == id)
        .ok_or_else(|| Error::UnknownOperator(id.into()))
}

/// SUT operations the operator can be woven onto, in registration order.
pub fn applicable_targets(op: &MutationOperator, sut_id: &str) -> Result<Vec<OperationDescriptor>> {
    Ok(interception::list_interceptable_operations(sut_id)?
        .into_iter()
        .filter(|d| op.targets(&d.name))
        .collect())
}

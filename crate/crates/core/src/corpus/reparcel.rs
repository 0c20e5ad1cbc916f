use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{operations_of, Parcel, REPARCEL_SUT};
use crate::error::{Error, Result};
use crate::geometry::{relate, Polygon, Predicate, BOUNDARY_EPSILON};
use crate::interception::{OperationDescriptor, Sut, Weaver};
use crate::value::{Datum, Value};

const MERGE_PARCELS: usize = 10;

/// Headless stand-in for a land re-parcelling tool: keeps an owner's parcels
/// and merges adjacent ones after checking topological constraints.
#[derive(Debug)]
pub struct ReparcelApp {
    operations: Vec<OperationDescriptor>,
    weaver: Weaver,
    parcels: Vec<Parcel>,
}

impl Default for ReparcelApp {
    fn default() -> Self {
        Self::new()
    }
}

impl ReparcelApp {
    pub fn new() -> Self {
        ReparcelApp {
            operations: operations_of(REPARCEL_SUT).expect("bundled SUT"),
            weaver: Weaver::new(),
            parcels: Vec::new(),
        }
    }

    pub fn add_parcel(&mut self, parcel: Parcel) -> Result<()> {
        if self.parcels.iter().any(|p| p.id == parcel.id) {
            return Err(Error::DuplicateId(parcel.id));
        }
        self.parcels.push(parcel);
        Ok(())
    }

    pub fn parcels(&self) -> &[Parcel] {
        &self.parcels
    }

    pub fn parcel(&self, id: &str) -> Option<&Parcel> {
        self.parcels.iter().find(|p| p.id == id)
    }

    /// Evaluates the named topological constraint through its interceptable
    /// operation.
    pub fn check_constraint(&self, predicate: &str, a: &Polygon, b: &Polygon) -> Result<bool> {
        let predicate: Predicate = predicate.parse()?;
        self.weaver.guarded(|| self.constraint(predicate, a, b))
    }

    fn constraint(&self, predicate: Predicate, a: &Polygon, b: &Polygon) -> Result<bool> {
        let index = Predicate::ALL.iter().position(|p| *p == predicate).expect("listed");
        let args = self.weaver.before(
            &self.operations[index],
            alloc::vec![Value::Polygon(a.clone()), Value::Polygon(b.clone())],
        )?;
        match args.as_slice() {
            [Value::Polygon(a), Value::Polygon(b)] => Ok(predicate.holds(&relate(a, b))),
            _ => Err(Error::ArgumentKindMismatch { operation: predicate.name().into() }),
        }
    }

    /// Merges two adjacent parcels of one owner into their rectangular union.
    /// The merged parcel takes the place of the first input.
    pub fn merge_parcels(&mut self, a_id: &str, b_id: &str) -> Result<Parcel> {
        self.weaver.enter();
        let result = self.merge(a_id, b_id);
        let result = self.weaver.exit(result)?;
        let at = self.parcels.iter().position(|p| p.id == a_id).expect("checked");
        self.parcels[at] = result.clone();
        self.parcels.retain(|p| p.id != b_id);
        Ok(result)
    }

    fn merge(&self, a_id: &str, b_id: &str) -> Result<Parcel> {
        let args = self.weaver.before(
            &self.operations[MERGE_PARCELS],
            alloc::vec![Value::text(a_id), Value::text(b_id)],
        )?;
        let (a_id, b_id) = match args.as_slice() {
            [Value::Other(Datum::Text(a)), Value::Other(Datum::Text(b))] => (a.as_str(), b.as_str()),
            _ => return Err(Error::ArgumentKindMismatch { operation: "mergeParcels".into() }),
        };
        let a = self.parcel(a_id).ok_or_else(|| Error::UnknownParcel(a_id.into()))?;
        let b = self.parcel(b_id).ok_or_else(|| Error::UnknownParcel(b_id.into()))?;
        if a_id == b_id {
            return Err(Error::NotAdjacent);
        }
        if a.owner_id != b.owner_id {
            return Err(Error::DifferentOwner);
        }
        if !self.constraint(Predicate::Touches, &a.shape, &b.shape)? {
            return Err(Error::NotAdjacent);
        }
        let merged = rectangle_union(&a.shape, &b.shape).ok_or(Error::NotMergeable)?;
        if !(self.constraint(Predicate::Covers, &merged, &a.shape)?
            && self.constraint(Predicate::Covers, &merged, &b.shape)?)
        {
            return Err(Error::MergeInconsistent);
        }
        Ok(Parcel { id: merged_id(a_id, b_id), owner_id: a.owner_id.clone(), shape: merged })
    }
}

fn merged_id(a: &str, b: &str) -> String {
    format!("{a}+{b}")
}

fn close(a: f64, b: f64) -> bool {
    libm::fabs(a - b) <= BOUNDARY_EPSILON
}

fn is_axis_aligned_rectangle(p: &Polygon) -> bool {
    let (x0, y0, x1, y1) = p.bounds();
    let box_area = (x1 - x0) * (y1 - y0);
    box_area > 0.0
        && libm::fabs(p.area() - box_area) <= BOUNDARY_EPSILON * (1.0 + box_area)
        && p.ring()
            .iter()
            .all(|c| close(c.x, x0) || close(c.x, x1) || close(c.y, y0) || close(c.y, y1))
}

/// Bounding union of two axis-aligned rectangles that share a full edge.
fn rectangle_union(a: &Polygon, b: &Polygon) -> Option<Polygon> {
    if !is_axis_aligned_rectangle(a) || !is_axis_aligned_rectangle(b) {
        return None;
    }
    let (ax0, ay0, ax1, ay1) = a.bounds();
    let (bx0, by0, bx1, by1) = b.bounds();
    let side_by_side = (close(ax1, bx0) || close(bx1, ax0)) && close(ay0, by0) && close(ay1, by1);
    let stacked = (close(ay1, by0) || close(by1, ay0)) && close(ax0, bx0) && close(ax1, bx1);
    if !(side_by_side || stacked) {
        return None;
    }
    Polygon::rectangle(ax0.min(bx0), ay0.min(by0), ax1.max(bx1), ay1.max(by1), a.crs().clone()).ok()
}

impl Sut for ReparcelApp {
    fn sut_id(&self) -> &str {
        REPARCEL_SUT
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
        if name == "mergeParcels" {
            return match args.as_slice() {
                [Value::Other(Datum::Text(a)), Value::Other(Datum::Text(b))] => {
                    let (a, b) = (a.clone(), b.clone());
                    Ok(Value::Other(Datum::Parcel(self.merge_parcels(&a, &b)?)))
                }
                _ => Err(mismatch()),
            };
        }
        let predicate =
            Predicate::from_name(name).ok_or_else(|| Error::UnknownOperation(name.into()))?;
        match args.as_slice() {
            [Value::Polygon(a), Value::Polygon(b)] => {
                let holds = self.weaver.guarded(|| self.constraint(predicate, a, b))?;
                Ok(Value::Other(Datum::Bool(holds)))
            }
            _ => Err(mismatch()),
        }
    }
}

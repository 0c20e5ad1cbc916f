//! Mutant enumeration and activation.
//!
//! One mutant is one (operator, target operation) pair. Activation weaves the
//! operator's transform restricted to that single operation, so an operator
//! naming ten operations yields ten independently killable mutants.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::catalog::{applicable_targets, find_operator};
use crate::error::{Error, Result};
use crate::interception::{self, OperationDescriptor, Sut, WeaveHandle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MutantStatus {
    Pending,
    Active,
    Done,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mutant {
    pub id: String,
    pub operator_id: String,
    pub sut_id: String,
    pub target_operation: OperationDescriptor,
    status: MutantStatus,
    handle: Option<WeaveHandle>,
}

impl Mutant {
    /// A pending mutant. Checks that the operator exists and targets the
    /// operation, and that the SUT registers that exact operation.
    pub fn new(id: impl Into<String>, operator_id: &str, target: OperationDescriptor) -> Result<Self> {
        let op = find_operator(operator_id)?;
        if !op.targets(&target.name) {
            return Err(Error::UnknownTargetName(target.name));
        }
        let registered = interception::list_interceptable_operations(&target.sut_id)?;
        if !registered.contains(&target) {
            return Err(Error::UnknownTargetName(target.name));
        }
        Ok(Mutant {
            id: id.into(),
            operator_id: op.id.into(),
            sut_id: target.sut_id.clone(),
            target_operation: target,
            status: MutantStatus::Pending,
            handle: None,
        })
    }

    pub fn status(&self) -> MutantStatus {
        self.status
    }

    /// A pending copy of this mutant, for running it again in a fresh context.
    pub fn fresh(&self) -> Mutant {
        Mutant { status: MutantStatus::Pending, handle: None, ..self.clone() }
    }
}

/// One mutant per (operator, applicable target) pair, in operator order then
/// registration order, numbered from `M1`.
pub fn enumerate_mutants<S: AsRef<str>>(
    sut_id: &str,
    operator_ids: &[S],
    target_filter: Option<&[S]>,
) -> Result<Vec<Mutant>> {
    let registered = interception::list_interceptable_operations(sut_id)?;
    if let Some(filter) = target_filter {
        for name in filter {
            if !registered.iter().any(|d| d.name == name.as_ref()) {
                return Err(Error::UnknownTargetName(name.as_ref().into()));
            }
        }
    }
    let operators = operator_ids
        .iter()
        .map(|id| find_operator(id.as_ref()))
        .collect::<Result<Vec<_>>>()?;

    let mut mutants = Vec::new();
    for op in operators {
        for target in applicable_targets(op, sut_id)? {
            let selected = target_filter
                .is_none_or(|filter| filter.iter().any(|n| n.as_ref() == target.name));
            if selected {
                mutants.push(Mutant {
                    id: format!("M{}", mutants.len() + 1),
                    operator_id: op.id.into(),
                    sut_id: sut_id.into(),
                    target_operation: target,
                    status: MutantStatus::Pending,
                    handle: None,
                });
            }
        }
    }
    Ok(mutants)
}

pub fn activate(m: &mut Mutant, sut: &mut dyn Sut) -> Result<WeaveHandle> {
    if sut.weaver().is_woven() {
        return Err(Error::AlreadyWoven);
    }
    if m.status != MutantStatus::Pending {
        return Err(Error::NotPending);
    }
    if sut.sut_id() != m.sut_id {
        return Err(Error::UnknownSut(m.sut_id.clone()));
    }
    let op = find_operator(&m.operator_id)?;
    let advice = op.advice_for([m.target_operation.name.as_str()]);
    let handle = interception::weave(sut, advice)?;
    m.status = MutantStatus::Active;
    m.handle = Some(handle.clone());
    Ok(handle)
}

pub fn deactivate(m: &mut Mutant, sut: &mut dyn Sut) -> Result<()> {
    if m.status != MutantStatus::Active {
        return Err(Error::NotActive);
    }
    let handle = m.handle.take().ok_or(Error::NotActive)?;
    interception::unweave(sut, &handle)?;
    m.status = MutantStatus::Done;
    Ok(())
}

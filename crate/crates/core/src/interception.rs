//! Introspection and weaving.
//!
//! Every corpus SUT publishes a registration-ordered list of
//! [`OperationDescriptor`]s and routes the arguments of those operations
//! through its [`Weaver`]. Weaving installs one [`Advice`] into that context;
//! matching calls then see their arguments rewritten before the body runs.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::cell::Cell;

use crate::error::{Error, Result};
use crate::value::{ArgKind, Value};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OperationDescriptor {
    pub name: String,
    pub arg_kinds: Vec<ArgKind>,
    pub sut_id: String,
}

impl OperationDescriptor {
    pub fn new(sut_id: &str, name: &str, arg_kinds: &[ArgKind]) -> Self {
        OperationDescriptor {
            name: name.into(),
            arg_kinds: arg_kinds.to_vec(),
            sut_id: sut_id.into(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arg_kinds.len()
    }

    pub fn accepts(&self, args: &[Value]) -> bool {
        args.len() == self.arity() && args.iter().zip(&self.arg_kinds).all(|(v, k)| v.kind() == *k)
    }
}

/// An intercepted call: the operation and its arguments.
#[derive(Debug, Clone, PartialEq)]
pub struct JoinPoint {
    pub operation: OperationDescriptor,
    pub args: Vec<Value>,
}

/// Rewrites a join point. Must be a pure function of its input.
pub type Transform = fn(&JoinPoint) -> Result<JoinPoint>;

#[derive(Debug, Clone)]
pub struct Advice {
    pub operator_id: String,
    pub transform: Transform,
    pub target_names: BTreeSet<String>,
}

impl Advice {
    pub fn applies_to(&self, operation: &str) -> bool {
        self.target_names.contains(operation)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeaveHandle {
    token: u64,
    operator_id: String,
}

impl WeaveHandle {
    pub fn operator_id(&self) -> &str {
        &self.operator_id
    }
}

#[derive(Debug)]
struct Woven {
    token: u64,
    advice: Advice,
}

/// A weave context. Holds at most one advice at a time.
#[derive(Debug, Default)]
pub struct Weaver {
    active: Option<Woven>,
    next_token: u64,
    fired: Cell<u32>,
    depth: Cell<u32>,
}

impl Weaver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_woven(&self) -> bool {
        self.active.is_some()
    }

    pub fn active_advice(&self) -> Option<&Advice> {
        self.active.as_ref().map(|w| &w.advice)
    }

    fn install(&mut self, advice: Advice) -> Result<WeaveHandle> {
        if self.active.is_some() {
            return Err(Error::AlreadyWoven);
        }
        self.next_token += 1;
        let handle = WeaveHandle { token: self.next_token, operator_id: advice.operator_id.clone() };
        self.active = Some(Woven { token: self.next_token, advice });
        Ok(handle)
    }

    fn remove(&mut self, handle: &WeaveHandle) -> Result<()> {
        match &self.active {
            Some(w) if w.token == handle.token => {
                self.active = None;
                Ok(())
            }
            _ => Err(Error::StaleHandle),
        }
    }

    /// Passes `args` through the woven advice when it targets `op`.
    pub fn before(&self, op: &OperationDescriptor, args: Vec<Value>) -> Result<Vec<Value>> {
        let Some(woven) = &self.active else {
            return Ok(args);
        };
        if !woven.advice.applies_to(&op.name) {
            return Ok(args);
        }
        self.fired.set(self.fired.get() + 1);
        let jp = JoinPoint { operation: op.clone(), args };
        let out = (woven.advice.transform)(&jp)?;
        if !op.accepts(&out.args) {
            return Err(Error::KindViolation { operation: op.name.clone() });
        }
        Ok(out.args)
    }

    /// Runs an operation body. An error escaping the outermost call after the
    /// advice fired is tagged [`Error::MutantRuntime`].
    pub fn guarded<T>(&self, body: impl FnOnce() -> Result<T>) -> Result<T> {
        self.enter();
        self.exit(body())
    }

    pub fn enter(&self) {
        if self.depth.get() == 0 {
            self.fired.set(0);
        }
        self.depth.set(self.depth.get() + 1);
    }

    pub fn exit<T>(&self, result: Result<T>) -> Result<T> {
        let depth = self.depth.get().saturating_sub(1);
        self.depth.set(depth);
        match result {
            Err(e) if depth == 0 && self.fired.get() > 0 && !e.is_mutant_runtime() => {
                Err(Error::MutantRuntime(alloc::boxed::Box::new(e)))
            }
            other => other,
        }
    }
}

/// A system under test whose operations can be introspected and intercepted.
pub trait Sut {
    fn sut_id(&self) -> &str;

    /// Interceptable operations, in registration order.
    fn operations(&self) -> &[OperationDescriptor];

    fn weaver(&self) -> &Weaver;

    fn weaver_mut(&mut self) -> &mut Weaver;

    /// Runs operation `name` with already kind-checked arguments.
    fn dispatch(&mut self, name: &str, args: Vec<Value>) -> Result<Value>;
}

/// Lists the interceptable operations of a bundled SUT.
pub fn list_interceptable_operations(sut_id: &str) -> Result<Vec<OperationDescriptor>> {
    crate::corpus::operations_of(sut_id)
}

pub fn weave(sut: &mut dyn Sut, advice: Advice) -> Result<WeaveHandle> {
    if sut.weaver().is_woven() {
        return Err(Error::AlreadyWoven);
    }
    if !sut.operations().iter().any(|op| advice.applies_to(&op.name)) {
        return Err(Error::NoMatchingTarget { operator: advice.operator_id });
    }
    sut.weaver_mut().install(advice)
}

pub fn unweave(sut: &mut dyn Sut, handle: &WeaveHandle) -> Result<()> {
    sut.weaver_mut().remove(handle)
}

/// Invokes an operation by name, applying any woven advice that targets it.
pub fn invoke(sut: &mut dyn Sut, operation: &str, args: Vec<Value>) -> Result<Value> {
    let descriptor = sut
        .operations()
        .iter()
        .find(|op| op.name == operation)
        .ok_or_else(|| Error::UnknownOperation(operation.into()))?;
    if !descriptor.accepts(&args) {
        return Err(Error::ArgumentKindMismatch { operation: operation.into() });
    }
    sut.dispatch(operation, args)
}

//! Runs test suites against the unmutated SUT and against each mutant, and
//! turns the observations into verdicts and a mutation score.
//!
//! Every test body gets its own freshly constructed SUT. For a mutant run the
//! mutant is activated on that instance before the body runs and deactivated
//! afterwards, so no state leaks between tests or between mutants.

use std::panic::{self, AssertUnwindSafe};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::sync::Arc;
use std::thread;
use std::time::{Duration, Instant};

use geomutate_core::engine::{activate, deactivate, Mutant};
use geomutate_core::interception::Sut;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_TIMEOUT_MS: u64 = 5000;

/// Why a test body did not pass.
#[derive(Debug, Clone, PartialEq)]
pub enum TestFailure {
    Assertion(String),
    Error(geomutate_core::Error),
}

impl From<geomutate_core::Error> for TestFailure {
    fn from(e: geomutate_core::Error) -> Self {
        TestFailure::Error(e)
    }
}

pub type TestResult = std::result::Result<(), TestFailure>;

/// Fails the test with `message` unless `condition` holds.
pub fn ensure(condition: bool, message: impl FnOnce() -> String) -> TestResult {
    if condition {
        Ok(())
    } else {
        Err(TestFailure::Assertion(message()))
    }
}

type Body<S> = dyn Fn(&mut S) -> TestResult + Send + Sync;

pub struct TestCase<S> {
    pub name: String,
    body: Arc<Body<S>>,
}

impl<S> Clone for TestCase<S> {
    fn clone(&self) -> Self {
        TestCase { name: self.name.clone(), body: Arc::clone(&self.body) }
    }
}

impl<S> TestCase<S> {
    pub fn new(
        name: impl Into<String>,
        body: impl Fn(&mut S) -> TestResult + Send + Sync + 'static,
    ) -> Self {
        TestCase { name: name.into(), body: Arc::new(body) }
    }
}

impl<S> std::fmt::Debug for TestCase<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TestCase").field("name", &self.name).finish_non_exhaustive()
    }
}

pub struct Suite<S> {
    pub name: String,
    pub tests: Vec<TestCase<S>>,
}

impl<S> Clone for Suite<S> {
    fn clone(&self) -> Self {
        Suite { name: self.name.clone(), tests: self.tests.clone() }
    }
}

impl<S> Suite<S> {
    pub fn new(name: impl Into<String>) -> Self {
        Suite { name: name.into(), tests: Vec::new() }
    }

    pub fn with(mut self, test: TestCase<S>) -> Self {
        self.tests.push(test);
        self
    }

    pub fn push(&mut self, test: TestCase<S>) {
        self.tests.push(test);
    }
}

/// Outcome of one test body on one fresh instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TestStatus {
    Passed,
    Failed(String),
    /// The body hit an error raised while mutant advice was active.
    MutantError(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestRecord {
    pub name: String,
    pub status: TestStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaselineResult {
    pub tests: Vec<TestRecord>,
}

impl BaselineResult {
    pub fn is_green(&self) -> bool {
        !self.tests.is_empty() && self.tests.iter().all(|t| t.status == TestStatus::Passed)
    }

    pub fn failing(&self) -> Vec<String> {
        self.tests
            .iter()
            .filter(|t| t.status != TestStatus::Passed)
            .map(|t| t.name.clone())
            .collect()
    }
}

fn run_test<S: Sut + Default>(test: &TestCase<S>, mutant: Option<&Mutant>) -> TestStatus {
    let mut sut = S::default();
    let mut active = match mutant {
        Some(m) => {
            let mut m = m.fresh();
            if let Err(e) = activate(&mut m, &mut sut) {
                return TestStatus::MutantError(format!("activation failed: {e}"));
            }
            Some(m)
        }
        None => None,
    };

    let outcome = panic::catch_unwind(AssertUnwindSafe(|| (test.body)(&mut sut)));

    if let Some(m) = active.as_mut() {
        // the instance is discarded right after, so a failed teardown only matters for reporting
        let _ = deactivate(m, &mut sut);
    }

    match outcome {
        Ok(Ok(())) => TestStatus::Passed,
        Ok(Err(TestFailure::Assertion(msg))) => TestStatus::Failed(msg),
        Ok(Err(TestFailure::Error(e))) if e.is_mutant_runtime() => TestStatus::MutantError(e.to_string()),
        Ok(Err(TestFailure::Error(e))) => TestStatus::Failed(e.to_string()),
        Err(payload) => TestStatus::Failed(panic_message(payload.as_ref())),
    }
}

fn panic_message(payload: &(dyn std::any::Any + Send)) -> String {
    if let Some(s) = payload.downcast_ref::<&str>() {
        format!("panicked: {s}")
    } else if let Some(s) = payload.downcast_ref::<String>() {
        format!("panicked: {s}")
    } else {
        "panicked".to_string()
    }
}

/// Runs every test unmutated and reports each result; never fails.
pub fn baseline_results<S: Sut + Default>(suite: &Suite<S>) -> BaselineResult {
    BaselineResult {
        tests: suite
            .tests
            .iter()
            .map(|t| TestRecord { name: t.name.clone(), status: run_test(t, None) })
            .collect(),
    }
}

/// Runs the suite unmutated. Any failing test, or an empty suite, is
/// [`Error::BaselineRed`].
pub fn run_baseline<S: Sut + Default>(suite: &Suite<S>) -> Result<BaselineResult> {
    let result = baseline_results(suite);
    if result.is_green() {
        Ok(result)
    } else {
        Err(Error::BaselineRed { failing: result.failing() })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Killed,
    Survived,
    ErrorKilled,
    Timeout,
}

impl Verdict {
    pub fn is_kill(self) -> bool {
        self != Verdict::Survived
    }

    pub fn name(self) -> &'static str {
        match self {
            Verdict::Killed => "Killed",
            Verdict::Survived => "Survived",
            Verdict::ErrorKilled => "ErrorKilled",
            Verdict::Timeout => "Timeout",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MutantOutcome {
    pub id: String,
    pub operator: String,
    pub target: String,
    pub verdict: Verdict,
    pub failed_tests: Vec<String>,
    pub wall_time_ms: u64,
}

/// Runs the suite against one mutant. The tests run on a worker thread; if
/// they have not finished within `timeout` the verdict is
/// [`Verdict::Timeout`] and the worker is abandoned.
pub fn run_mutant<S>(mutant: &Mutant, suite: &Arc<Suite<S>>, timeout: Duration) -> MutantOutcome
where
    S: Sut + Default + 'static,
{
    let started = Instant::now();
    let deadline = started + timeout;
    let (tx, rx) = mpsc::channel();
    {
        let suite = Arc::clone(suite);
        let mutant = mutant.clone();
        thread::spawn(move || {
            for test in &suite.tests {
                let status = run_test(test, Some(&mutant));
                if tx.send((test.name.clone(), status)).is_err() {
                    return;
                }
            }
        });
    }

    let mut first_event: Option<Verdict> = None;
    let mut failed_tests = Vec::new();
    let mut finished = 0;
    while finished < suite.tests.len() {
        let remaining = deadline.saturating_duration_since(Instant::now());
        match rx.recv_timeout(remaining) {
            Ok((name, status)) => {
                finished += 1;
                let kind = match status {
                    TestStatus::Passed => continue,
                    TestStatus::Failed(_) => Verdict::Killed,
                    TestStatus::MutantError(_) => Verdict::ErrorKilled,
                };
                first_event.get_or_insert(kind);
                failed_tests.push(name);
            }
            Err(mpsc::RecvTimeoutError::Timeout) => {
                first_event.get_or_insert(Verdict::Timeout);
                break;
            }
            Err(mpsc::RecvTimeoutError::Disconnected) => {
                first_event.get_or_insert(Verdict::ErrorKilled);
                break;
            }
        }
    }
    let elapsed = started.elapsed();
    if elapsed > timeout {
        first_event.get_or_insert(Verdict::Timeout);
    }

    MutantOutcome {
        id: mutant.id.clone(),
        operator: mutant.operator_id.clone(),
        target: mutant.target_operation.name.clone(),
        verdict: first_event.unwrap_or(Verdict::Survived),
        failed_tests,
        wall_time_ms: elapsed.as_millis() as u64,
    }
}

/// Runs every mutant, `jobs` at a time. Outcomes come back in mutant order
/// whatever the completion order.
pub fn run_mutants<S>(
    mutants: &[Mutant],
    suite: &Arc<Suite<S>>,
    timeout: Duration,
    jobs: usize,
) -> Vec<MutantOutcome>
where
    S: Sut + Default + 'static,
{
    let jobs = jobs.clamp(1, mutants.len().max(1));
    let next = AtomicUsize::new(0);
    let mut slots: Vec<Option<MutantOutcome>> = vec![None; mutants.len()];
    thread::scope(|scope| {
        let workers: Vec<_> = (0..jobs)
            .map(|_| {
                scope.spawn(|| {
                    let mut done = Vec::new();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        if i >= mutants.len() {
                            return done;
                        }
                        done.push((i, run_mutant(&mutants[i], suite, timeout)));
                    }
                })
            })
            .collect();
        for worker in workers {
            for (i, outcome) in worker.join().expect("worker thread panicked") {
                slots[i] = Some(outcome);
            }
        }
    });
    slots.into_iter().map(|o| o.expect("every mutant ran")).collect()
}

/// `(Killed + ErrorKilled + Timeout) / total`
pub fn mutation_score(outcomes: &[MutantOutcome]) -> Result<f64> {
    if outcomes.is_empty() {
        return Err(Error::NoMutants);
    }
    let killed = outcomes.iter().filter(|o| o.verdict.is_kill()).count();
    Ok(killed as f64 / outcomes.len() as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MutationReport {
    pub run: String,
    pub sut: String,
    pub total: usize,
    pub killed: usize,
    pub survived: usize,
    pub score: f64,
    pub mutants: Vec<MutantOutcome>,
}

impl MutationReport {
    pub fn from_outcomes(run: &str, sut: &str, outcomes: Vec<MutantOutcome>) -> Result<Self> {
        let score = mutation_score(&outcomes)?;
        let killed = outcomes.iter().filter(|o| o.verdict.is_kill()).count();
        Ok(MutationReport {
            run: run.into(),
            sut: sut.into(),
            total: outcomes.len(),
            killed,
            survived: outcomes.len() - killed,
            score,
            mutants: outcomes,
        })
    }

    /// The same report with every wall time zeroed, for comparing runs.
    pub fn without_timings(&self) -> Self {
        let mut r = self.clone();
        r.mutants.iter_mut().for_each(|m| m.wall_time_ms = 0);
        r
    }
}

#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    pub timeout: Duration,
    pub jobs: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { timeout: Duration::from_millis(DEFAULT_TIMEOUT_MS), jobs: 1 }
    }
}

/// Baseline, then every mutant, then the report.
pub fn run_analysis<S>(
    run: &str,
    mutants: &[Mutant],
    suite: Suite<S>,
    options: RunOptions,
) -> Result<MutationReport>
where
    S: Sut + Default + 'static,
{
    if mutants.is_empty() {
        return Err(Error::NoMutants);
    }
    run_baseline(&suite)?;
    let suite = Arc::new(suite);
    let outcomes = run_mutants(mutants, &suite, options.timeout, options.jobs);
    MutationReport::from_outcomes(run, &mutants[0].sut_id, outcomes)
}

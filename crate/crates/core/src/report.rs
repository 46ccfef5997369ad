//! Verification reports and the bookkeeping shared by all verifiers.

use std::fmt;
use std::time::Instant;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::chern::QuillenClass;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

/// How a verifier builds its identity. `Perturbed` flips one sign so the
/// identity is false; used as a negative control.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Faithful,
    Perturbed,
}

impl Mode {
    /// `+1` or `-1` as a residue mod `p`, for the sign that gets flipped.
    pub fn sign(self, p: u32) -> u32 {
        match self {
            Mode::Faithful => 1,
            Mode::Perturbed => p - 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// Which sub-check failed.
    pub check: String,
    pub lagrangian_index: Option<usize>,
    /// The nonzero difference component, or a description for
    /// non-polynomial checks.
    pub polynomial: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub paper_ref: String,
    pub params: Map<String, Value>,
    pub status: Status,
    pub counterexample: Option<Counterexample>,
    pub elapsed_ms: u64,
    pub seed: Option<u64>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// The report as JSON with the timing field removed.
    pub fn stable_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("plain data serializes");
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(
            f,
            "{} {} [{}] ({} ms)",
            self.status,
            self.identity,
            params.join(", "),
            self.elapsed_ms
        )?;
        if let Some(c) = &self.counterexample {
            write!(f, "\n    failed check: {}", c.check)?;
            if let Some(i) = c.lagrangian_index {
                write!(f, "\n    lagrangian: {i}")?;
            }
            write!(f, "\n    difference: {}", c.polynomial)?;
        }
        Ok(())
    }
}

/// Collects sub-checks of one verification and keeps the first failure.
pub struct Checker {
    identity: String,
    paper_ref: String,
    params: Map<String, Value>,
    seed: Option<u64>,
    start: Instant,
    failure: Option<Counterexample>,
    checks: usize,
}

impl Checker {
    pub fn new(identity: &str, paper_ref: &str) -> Checker {
        Checker {
            identity: identity.to_string(),
            paper_ref: paper_ref.to_string(),
            params: Map::new(),
            seed: None,
            start: Instant::now(),
            failure: None,
            checks: 0,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn set_param(&mut self, key: &str, value: impl Into<Value>) {
        self.params.insert(key.to_string(), value.into());
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn failed(&self) -> bool {
        self.failure.is_some()
    }

    pub fn checks(&self) -> usize {
        self.checks
    }

    pub fn fail(&mut self, counterexample: Counterexample) {
        if self.failure.is_none() {
            self.failure = Some(counterexample);
        }
    }

    /// Record one sub-check that has already been evaluated.
    pub fn record(&mut self, failure: Option<Counterexample>) {
        self.checks += 1;
        if let Some(c) = failure {
            self.fail(c);
        }
    }

    /// Record a boolean fact.
    pub fn fact(&mut self, check: impl Into<String>, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.fail(Counterexample {
                check: check.into(),
                lagrangian_index: None,
                polynomial: detail(),
            });
        }
    }

    /// `lhs == rhs` componentwise.
    pub fn equal(&mut self, check: impl Into<String>, lhs: &QuillenClass, rhs: &QuillenClass) -> Result<()> {
        self.checks += 1;
        if let Some(c) = difference(check, lhs, rhs)? {
            self.fail(c);
        }
        Ok(())
    }

    pub fn zero(&mut self, check: impl Into<String>, class: &QuillenClass) -> Result<()> {
        self.equal(check, class, &class.context().zero())
    }

    pub fn finish(mut self) -> VerificationReport {
        self.params.insert("checks".into(), self.checks.into());
        VerificationReport {
            identity: self.identity,
            paper_ref: self.paper_ref,
            params: self.params,
            status: if self.failure.is_some() { Status::Fail } else { Status::Pass },
            counterexample: self.failure,
            elapsed_ms: self.start.elapsed().as_millis() as u64,
            seed: self.seed,
        }
    }
}

/// First Lagrangian where the classes differ, with `lhs - rhs` there.
pub fn difference(
    check: impl Into<String>,
    lhs: &QuillenClass,
    rhs: &QuillenClass,
) -> Result<Option<Counterexample>> {
    Ok(lhs.first_difference(rhs)?.map(|i| Counterexample {
        check: check.into(),
        lagrangian_index: Some(i),
        polynomial: (lhs.component(i) - rhs.component(i)).to_string(),
    }))
}

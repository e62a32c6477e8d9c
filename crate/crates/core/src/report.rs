//! Structured pass/fail records produced by the axiom checkers.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::exactlin::{Field, Matrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
    NoWitness,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
            Status::NoWitness => "no-witness",
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// A numeric witness attached to a check record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessValue {
    Int(i64),
    Ints(Vec<i64>),
    Bool(bool),
    Text(String),
    /// Matrix rows, entries separated by single spaces.
    Matrix(Vec<String>),
}

impl WitnessValue {
    pub fn matrix<F: Field>(m: &Matrix<F>) -> Self {
        let f = m.field();
        WitnessValue::Matrix(
            (0..m.rows())
                .map(|r| m.row(r).iter().map(|e| f.format(e)).collect::<Vec<_>>().join(" "))
                .collect(),
        )
    }

    pub fn dims(d: &[usize]) -> Self {
        WitnessValue::Ints(d.iter().map(|&x| x as i64).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    /// The mathematical statement this record tests.
    pub anchor: String,
    pub witnesses: Vec<(String, WitnessValue)>,
    pub elapsed_micros: Option<u64>,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, anchor: impl Into<String>, status: Status) -> Self {
        CheckRecord {
            name: name.into(),
            status,
            anchor: anchor.into(),
            witnesses: Vec::new(),
            elapsed_micros: None,
        }
    }

    pub fn with(mut self, label: &str, value: WitnessValue) -> Self {
        self.witnesses.push((label.to_string(), value));
        self
    }

    pub fn witness(&mut self, label: &str, value: WitnessValue) {
        self.witnesses.push((label.to_string(), value));
    }
}

/// Source of wall-clock timestamps. The core crate has no clock of its own.
pub trait Clock {
    fn now_micros(&self) -> Option<u64>;
}

/// A clock that never reports time.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoClock;

impl Clock for NoClock {
    fn now_micros(&self) -> Option<u64> {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CheckReport {
    pub tool_version: String,
    pub seed: Option<u64>,
    /// Sample inventory: category label and count.
    pub samples: Vec<(String, usize)>,
    pub records: Vec<CheckRecord>,
    /// Statements about what the checker deliberately does not verify.
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(seed: Option<u64>) -> Self {
        CheckReport {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            samples: Vec::new(),
            records: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.records.push(record);
    }

    /// Runs `check`, stamping the elapsed time when the clock provides one.
    pub fn timed(&mut self, clock: &dyn Clock, check: impl FnOnce() -> CheckRecord) {
        let start = clock.now_micros();
        let mut record = check();
        if let (Some(s), Some(e)) = (start, clock.now_micros()) {
            record.elapsed_micros = Some(e.saturating_sub(s));
        }
        self.records.push(record);
    }

    pub fn add_samples(&mut self, label: &str, count: usize) {
        self.samples.push((label.to_string(), count));
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.samples.extend(other.samples);
        self.records.extend(other.records);
        self.notes.extend(other.notes);
    }

    pub fn count(&self, status: Status) -> usize {
        self.records.iter().filter(|r| r.status == status).count()
    }

    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.status != Status::Fail && r.status != Status::Inconclusive)
    }

    pub fn has_failures(&self) -> bool {
        self.records.iter().any(|r| r.status == Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }

    /// Records whose name starts with `prefix`.
    pub fn named<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a CheckRecord> + 'a {
        self.records.iter().filter(move |r| r.name.starts_with(prefix))
    }

    /// Drops all timing information, for byte-stable comparisons.
    pub fn strip_timing(&mut self) {
        for r in &mut self.records {
            r.elapsed_micros = None;
        }
    }
}

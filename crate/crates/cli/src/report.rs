//! JSON rendering of check reports and a wall clock.

use std::time::Instant;

use serde_json::{json, Map, Value};
use trimat_core::report::{CheckReport, Clock, Status, WitnessValue};

/// Microseconds since construction.
pub struct WallClock(Instant);

impl WallClock {
    pub fn new() -> Self {
        WallClock(Instant::now())
    }
}

impl Default for WallClock {
    fn default() -> Self {
        Self::new()
    }
}

impl Clock for WallClock {
    fn now_micros(&self) -> Option<u64> {
        Some(self.0.elapsed().as_micros() as u64)
    }
}

fn witness(v: &WitnessValue) -> Value {
    match v {
        WitnessValue::Int(i) => json!(i),
        WitnessValue::Ints(v) => json!(v),
        WitnessValue::Bool(b) => json!(b),
        WitnessValue::Text(s) => json!(s),
        WitnessValue::Matrix(rows) => json!({ "matrix": rows }),
    }
}

pub fn report_value(r: &CheckReport) -> Value {
    let records: Vec<Value> = r
        .records
        .iter()
        .map(|rec| {
            let mut o = Map::new();
            o.insert("anchor".into(), json!(rec.anchor));
            if let Some(t) = rec.elapsed_micros {
                o.insert("elapsed_micros".into(), json!(t));
            }
            o.insert("name".into(), json!(rec.name));
            o.insert("status".into(), json!(rec.status.as_str()));
            let w: Map<String, Value> = rec.witnesses.iter().map(|(k, v)| (k.clone(), witness(v))).collect();
            o.insert("witnesses".into(), Value::Object(w));
            Value::Object(o)
        })
        .collect();
    let samples: Map<String, Value> = r.samples.iter().map(|(k, n)| (k.clone(), json!(n))).collect();
    let mut summary = Map::new();
    for s in [Status::Pass, Status::Fail, Status::Inconclusive, Status::NoWitness] {
        summary.insert(s.as_str().into(), json!(r.count(s)));
    }
    json!({
        "notes": r.notes,
        "records": records,
        "samples": samples,
        "seed": r.seed,
        "summary": summary,
        "tool_version": r.tool_version,
    })
}

pub fn render(r: &CheckReport) -> String {
    let mut s = serde_json::to_string_pretty(&report_value(r)).expect("values serialize");
    s.push('\n');
    s
}

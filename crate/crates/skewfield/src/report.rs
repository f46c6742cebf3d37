//! Versioned run reports. Output is deterministic: inputs and verdicts keep
//! insertion order and no wall-clock data appears unless requested.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: u32 = 1;

/// One named result. `pass` is absent for informational values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub operation: String,
    pub instance: String,
    pub name: String,
    pub value: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub verdicts: Vec<Verdict>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport {
            schema: SCHEMA,
            command: command.into(),
            inputs: BTreeMap::new(),
            verdicts: Vec::new(),
            pass: true,
            timings: None,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) {
        self.inputs.insert(key.to_string(), value.into());
    }

    /// Records a pass/fail verdict.
    pub fn check(&mut self, operation: &str, instance: &str, name: &str, value: impl Into<Value>, pass: bool) {
        self.pass &= pass;
        self.push(operation, instance, name, value.into(), Some(pass));
    }

    /// Records an informational value.
    pub fn value(&mut self, operation: &str, instance: &str, name: &str, value: impl Into<Value>) {
        self.push(operation, instance, name, value.into(), None);
    }

    fn push(&mut self, operation: &str, instance: &str, name: &str, value: Value, pass: Option<bool>) {
        self.verdicts.push(Verdict {
            operation: operation.into(),
            instance: instance.into(),
            name: name.into(),
            value,
            pass,
        });
    }

    pub fn time(&mut self, key: &str, secs: f64) {
        self.timings.get_or_insert_with(BTreeMap::new).insert(key.into(), secs);
    }

    pub fn failures(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| v.pass == Some(false))
    }

    /// 0 when every verdict passes, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

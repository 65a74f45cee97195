//! Verification reports: named assertions with pass/fail, details and
//! optional witnesses, serialized as JSON.

use std::fmt::Display;

use serde::{Serialize, Serializer};
use serde_json::Value;

/// Serializes any `Display` value (typically a big integer) as a JSON string.
pub fn as_string<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Clone, Debug, Serialize)]
pub struct Assertion {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub detail: Value,
    /// Offending inputs, e.g. functionals, for failed assertions.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub params: Value,
    pub pass: bool,
    pub assertions: Vec<Assertion>,
}

impl Report {
    pub fn new(suite: impl Into<String>, params: Value) -> Self {
        Report {
            suite: suite.into(),
            params,
            pass: true,
            assertions: Vec::new(),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, detail: Value) -> &mut Assertion {
        self.pass &= pass;
        self.assertions.push(Assertion {
            name: name.into(),
            pass,
            detail,
            witnesses: Vec::new(),
        });
        self.assertions.last_mut().unwrap()
    }

    pub fn check_with_witnesses(
        &mut self,
        name: impl Into<String>,
        witnesses: Vec<String>,
        detail: Value,
    ) {
        let pass = witnesses.is_empty();
        self.check(name, pass, detail).witnesses = witnesses;
    }

    /// Absorbs another report's assertions, prefixing their names.
    pub fn merge(&mut self, other: Report) {
        self.pass &= other.pass;
        for mut a in other.assertions {
            a.name = format!("{}/{}", other.suite, a.name);
            self.assertions.push(a);
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Assertion> {
        self.assertions.iter().filter(|a| !a.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

/// Caps witness lists so a systematic failure does not flood the report.
pub(crate) const MAX_WITNESSES: usize = 8;

pub(crate) fn push_witness(list: &mut Vec<String>, w: impl FnOnce() -> String) {
    if list.len() < MAX_WITNESSES {
        list.push(w());
    }
}

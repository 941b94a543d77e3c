//! Check reporting: named assertions with values and bounds, grouped into
//! suite reports that serialize to deterministic JSON. Configuration is kept
//! in an ordered map and no timestamps are recorded, so rerunning a suite
//! with the same inputs produces byte-identical output.

use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// One checked inequality or predicate.
#[derive(Debug, Clone, Serialize)]
pub struct Assertion {
    pub id: String,
    pub description: String,
    pub value: f64,
    pub bound: f64,
    pub pass: bool,
}

/// Passes when `value <= bound`.
pub fn assert_le(id: &str, description: &str, value: f64, bound: f64) -> Assertion {
    Assertion {
        id: id.to_string(),
        description: description.to_string(),
        value,
        bound,
        pass: value <= bound,
    }
}

/// Passes when `value >= bound`.
pub fn assert_ge(id: &str, description: &str, value: f64, bound: f64) -> Assertion {
    Assertion {
        id: id.to_string(),
        description: description.to_string(),
        value,
        bound,
        pass: value >= bound,
    }
}

/// Records a boolean outcome, with value 1 for true and 0 for false.
pub fn assert_true(id: &str, description: &str, ok: bool) -> Assertion {
    Assertion {
        id: id.to_string(),
        description: description.to_string(),
        value: if ok { 1.0 } else { 0.0 },
        bound: 1.0,
        pass: ok,
    }
}

impl fmt::Display for Assertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} (value {:.6e}, bound {:.6e})",
            if self.pass { "pass" } else { "FAIL" },
            self.id,
            self.description,
            self.value,
            self.bound
        )
    }
}

/// A named batch of assertions with the inputs that produced them.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub config: BTreeMap<String, String>,
    pub assertions: Vec<Assertion>,
    pub pass: bool,
}

impl SuiteReport {
    pub fn new(suite: &str, seed: u64) -> Self {
        Self {
            suite: suite.to_string(),
            seed,
            config: BTreeMap::new(),
            assertions: Vec::new(),
            pass: true,
        }
    }

    pub fn set_config(&mut self, key: &str, value: impl fmt::Display) {
        self.config.insert(key.to_string(), value.to_string());
    }

    pub fn push(&mut self, assertion: Assertion) {
        self.pass &= assertion.pass;
        self.assertions.push(assertion);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

//! Suite reports. Everything except `timings` is a function of the input.

use serde::Serialize;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    /// What was computed, for checks whose result is an outcome rather than a yes/no.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub outcome: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Library call that recomputes this check.
    pub reproduce: String,
}

impl Check {
    pub fn new(id: impl Into<String>, status: Status, reproduce: impl Into<String>) -> Check {
        Check { id: id.into(), status, outcome: None, witness: None, reproduce: reproduce.into() }
    }

    /// Pass when `ok`, otherwise Fail with the witness.
    pub fn expect(id: impl Into<String>, ok: bool, witness: impl FnOnce() -> String, reproduce: impl Into<String>) -> Check {
        let mut c = Check::new(id, if ok { Status::Pass } else { Status::Fail }, reproduce);
        if !ok {
            c.witness = Some(witness());
        }
        c
    }

    pub fn with_outcome<T: Serialize>(mut self, v: &T) -> Check {
        self.outcome = Some(serde_json::to_value(v).expect("serializable outcome"));
        self
    }

    pub fn with_witness(mut self, w: impl Into<String>) -> Check {
        self.witness = Some(w.into());
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool_version: String,
    pub input_digest: String,
    pub suite: String,
    pub params: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    /// Wall-clock seconds per check id; not part of the comparable output.
    pub timings: BTreeMap<String, f64>,
}

pub fn digest(suite: &str, params: &BTreeMap<String, String>, input: Option<&str>) -> String {
    let mut h = Sha256::new();
    h.update(suite.as_bytes());
    for (k, v) in params {
        h.update([0]);
        h.update(k.as_bytes());
        h.update([b'=']);
        h.update(v.as_bytes());
    }
    if let Some(t) = input {
        h.update([1]);
        h.update(t.as_bytes());
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

impl Report {
    pub fn new(suite: &str, params: BTreeMap<String, String>, input: Option<&str>) -> Report {
        Report {
            tool_version: env!("CARGO_PKG_VERSION").into(),
            input_digest: digest(suite, &params, input),
            suite: suite.into(),
            params,
            checks: Vec::new(),
            timings: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    /// Sort checks by id; called once all checks are in.
    pub fn finish(&mut self) {
        self.checks.sort_by(|a, b| a.id.cmp(&b.id));
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| c.status == Status::Fail).count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    /// The report without timings.
    pub fn comparable_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("serializable report");
        v.as_object_mut().unwrap().remove("timings");
        v
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable report")
    }

    /// One line per check, then a summary.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s += &format!("{:<13} {}\n", format!("[{}]", c.status), c.id);
            if let Some(w) = &c.witness {
                s += &format!("              witness: {w}\n");
            }
        }
        let count = |st: Status| self.checks.iter().filter(|c| c.status == st).count();
        s += &format!(
            "{}: {} checks, {} pass, {} fail, {} inconclusive\n",
            self.suite,
            self.checks.len(),
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Inconclusive)
        );
        s
    }
}

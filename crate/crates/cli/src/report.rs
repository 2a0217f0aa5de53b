use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub check: &'static str,
    /// The claim this check reproduces.
    pub anchor: &'static str,
    pub status: Status,
    pub value: Value,
    pub expected: Value,
}

impl Check {
    pub fn compare<T: Serialize + PartialEq>(check: &'static str, anchor: &'static str, value: T, expected: T) -> Self {
        let status = if value == expected { Status::Pass } else { Status::Fail };
        Check { check, anchor, status, value: to_value(&value), expected: to_value(&expected) }
    }

    pub fn holds(check: &'static str, anchor: &'static str, ok: bool, value: Value, expected: Value) -> Self {
        Check { check, anchor, status: if ok { Status::Pass } else { Status::Fail }, value, expected }
    }

    pub fn failed(check: &'static str, anchor: &'static str, err: impl std::fmt::Display) -> Self {
        Check {
            check,
            anchor,
            status: Status::Fail,
            value: Value::String(format!("error: {err}")),
            expected: Value::Null,
        }
    }

    pub fn skipped(check: &'static str, anchor: &'static str, why: String) -> Self {
        Check { check, anchor, status: Status::Skipped, value: Value::String(why), expected: Value::Null }
    }
}

pub fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or_else(|e| Value::String(format!("unserializable: {e}")))
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl Report {
    pub fn new(checks: Vec<Check>) -> Self {
        let count = |s| checks.iter().filter(|c| c.status == s).count();
        let (passed, failed, skipped) = (count(Status::Pass), count(Status::Fail), count(Status::Skipped));
        Report { checks, passed, failed, skipped }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            out.push_str(&format!("{status}  {:<34} {}  [{}]\n", c.check, compact(&c.value), c.anchor));
            if c.status == Status::Fail && !c.expected.is_null() {
                out.push_str(&format!("      expected {}\n", compact(&c.expected)));
            }
        }
        out.push_str(&format!("{} passed, {} failed, {} skipped\n", self.passed, self.failed, self.skipped));
        out
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

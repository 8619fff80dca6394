use serde::Serialize;

/// Outcome of one named check inside a suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// Number of individual identities verified under this name.
    pub count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// A machine-readable verification report: `{suite, checks: [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report { suite: suite.into(), checks: Vec::new() }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    /// Folds another report's checks in, prefixing their names.
    pub fn extend_prefixed(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            self.checks.push(c);
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// Accumulates many instances of one identity; keeps the first failure.
#[derive(Debug)]
pub struct Tally {
    name: String,
    count: usize,
    witness: Option<String>,
}

impl Tally {
    pub fn new(name: impl Into<String>) -> Self {
        Tally { name: name.into(), count: 0, witness: None }
    }

    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.count += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    pub fn finish(self) -> Check {
        Check { pass: self.witness.is_none(), name: self.name, count: self.count, witness: self.witness }
    }
}

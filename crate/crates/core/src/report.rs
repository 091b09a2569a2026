//! Per-instance check results.

use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceResult {
    pub axiom: String,
    pub indices: Vec<String>,
    pub status: Status,
    /// Least degree at which the instance certified; 0 for exact identities.
    #[serde(rename = "minimal_N")]
    pub minimal_n: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
pub struct Report {
    pub suite: String,
    pub degree: usize,
    pub instances: Vec<InstanceResult>,
    pub notices: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub unknown: usize,
    pub max_minimal_n: usize,
}

impl Report {
    pub fn new(suite: &str, degree: usize) -> Self {
        Report { suite: suite.into(), degree, ..Default::default() }
    }

    pub fn push(&mut self, axiom: &str, indices: Vec<String>, status: Status, minimal_n: Option<usize>) {
        self.instances.push(InstanceResult { axiom: axiom.into(), indices, status, minimal_n });
    }

    /// Records an exact identity check.
    pub fn exact(&mut self, axiom: &str, indices: Vec<String>, ok: bool) {
        let (s, n) = if ok { (Status::Pass, Some(0)) } else { (Status::Fail, None) };
        self.push(axiom, indices, s, n);
    }

    pub fn notice(&mut self, msg: impl Into<String>) {
        self.notices.push(msg.into());
    }

    pub fn merge(&mut self, other: Report) {
        self.instances.extend(other.instances);
        self.notices.extend(other.notices);
    }

    pub fn summary(&self) -> Summary {
        let mut s = Summary::default();
        for i in &self.instances {
            match i.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Unknown => s.unknown += 1,
            }
            s.max_minimal_n = s.max_minimal_n.max(i.minimal_n.unwrap_or(0));
        }
        s
    }

    pub fn all_pass(&self) -> bool {
        self.instances.iter().all(|i| i.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &InstanceResult> {
        self.instances.iter().filter(|i| i.status != Status::Pass)
    }

    /// 0 all pass, 1 some definite failure, 2 some unknown.
    pub fn exit_code(&self) -> i32 {
        let s = self.summary();
        if s.fail > 0 {
            1
        } else if s.unknown > 0 {
            2
        } else {
            0
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.summary();
        write!(
            f,
            "{}: {} pass, {} fail, {} unknown (max minimal N {})",
            self.suite, s.pass, s.fail, s.unknown, s.max_minimal_n
        )
    }
}

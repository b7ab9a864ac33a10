//! Check results and machine-readable reports.
//!
//! Every checker returns [`Check`]s built with a [`Tally`]. A report is a
//! list of checks; its canonical JSON omits timings so that reruns with the
//! same seed are byte-identical.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    PassExhaustive,
    PassSampled,
    Fail,
    Untested,
}

impl Status {
    pub fn passed(self) -> bool {
        matches!(self, Status::PassExhaustive | Status::PassSampled)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::PassExhaustive => "pass",
            Status::PassSampled => "pass (sampled)",
            Status::Fail => "FAIL",
            Status::Untested => "untested",
        })
    }
}

/// The verdict of one universally quantified statement on a finite domain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    /// short machine name, e.g. `law.c`
    pub name: String,
    /// human label, e.g. `(c) lax P-multiplication law`
    pub label: String,
    pub status: Status,
    /// equality held at every tested point
    pub strict: bool,
    /// description of the quantification domain
    pub domain: String,
    pub points: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.status.passed()
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }

    /// A check that holds or fails without a domain to speak of.
    pub fn fact(name: &str, label: &str, holds: bool, witness: Option<String>) -> Check {
        Check {
            name: name.into(),
            label: label.into(),
            status: if holds { Status::PassExhaustive } else { Status::Fail },
            strict: holds,
            domain: String::new(),
            points: 1,
            witness: if holds { None } else { witness },
        }
    }

    pub fn untested(name: &str, label: &str, why: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            label: label.into(),
            status: Status::Untested,
            strict: false,
            domain: why.into(),
            points: 0,
            witness: None,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<24} {:<44} {}", self.name, self.label, self.status)?;
        if self.passed() {
            write!(f, "{}", if self.strict { ", strict" } else { ", lax" })?;
        }
        if self.points > 0 {
            write!(f, " [{} point{}", self.points, if self.points == 1 { "" } else { "s" })?;
            if !self.domain.is_empty() {
                write!(f, "; {}", self.domain)?;
            }
            write!(f, "]")?;
        } else if !self.domain.is_empty() {
            write!(f, " [{}]", self.domain)?;
        }
        if let Some(w) = &self.witness {
            write!(f, "\n    witness: {w}")?;
        }
        Ok(())
    }
}

/// Accumulates pointwise comparisons into a [`Check`].
pub struct Tally {
    name: String,
    label: String,
    holds: bool,
    strict: bool,
    sampled: bool,
    points: u64,
    domain: Vec<String>,
    witness: Option<String>,
}

impl Tally {
    pub fn new(name: impl Into<String>, label: impl Into<String>) -> Self {
        Tally {
            name: name.into(),
            label: label.into(),
            holds: true,
            strict: true,
            sampled: false,
            points: 0,
            domain: Vec::new(),
            witness: None,
        }
    }

    /// Records one point where `leq` is the inequality and `eq` the equality.
    pub fn see(&mut self, leq: bool, eq: bool, witness: impl FnOnce() -> String) {
        self.points += 1;
        if !eq {
            self.strict = false;
        }
        if !leq && self.holds {
            self.holds = false;
            self.witness = Some(witness());
        }
    }

    /// Records a point of an equality check.
    pub fn same(&mut self, eq: bool, witness: impl FnOnce() -> String) {
        self.see(eq, eq, witness)
    }

    pub fn holds(&self) -> bool {
        self.holds
    }

    pub fn mark_sampled(&mut self) {
        self.sampled = true;
    }

    pub fn domain(&mut self, d: impl Into<String>) {
        let d = d.into();
        if !self.domain.contains(&d) {
            self.domain.push(d);
        }
    }

    pub fn merge(&mut self, other: Check) {
        self.points += other.points;
        match other.status {
            Status::Fail => {
                if self.holds {
                    self.holds = false;
                    self.witness = other.witness;
                }
            }
            Status::PassSampled => self.sampled = true,
            _ => {}
        }
        if !other.strict {
            self.strict = false;
        }
        if !other.domain.is_empty() {
            self.domain(other.domain);
        }
    }

    pub fn finish(self) -> Check {
        let status = if !self.holds {
            Status::Fail
        } else if self.points == 0 {
            Status::Untested
        } else if self.sampled {
            Status::PassSampled
        } else {
            Status::PassExhaustive
        };
        Check {
            name: self.name,
            label: self.label,
            status,
            strict: self.holds && self.strict && self.points > 0,
            domain: self.domain.join("; "),
            points: self.points,
            witness: self.witness,
        }
    }
}

/// A full run: what was asked and every check performed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// the arguments that reproduce this report
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub args: Vec<String>,
    pub seed: u64,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    /// a structure produced by the command
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<Vec<(String, u64)>>,
}

impl Report {
    pub fn new(command: impl Into<String>, seed: u64) -> Self {
        Report {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            args: Vec::new(),
            seed,
            checks: Vec::new(),
            notes: Vec::new(),
            output: None,
            timings_ms: None,
        }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, cs: impl IntoIterator<Item = Check>) {
        self.checks.extend(cs);
    }

    pub fn note(&mut self, n: impl Into<String>) {
        self.notes.push(n.into());
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Pretty JSON without the timings field.
    pub fn to_canonical_json(&self) -> String {
        let mut r = self.clone();
        r.timings_ms = None;
        serde_json::to_string_pretty(&r).expect("reports serialize")
    }

    pub fn to_human(&self) -> String {
        let mut out = format!("{} {}: {}\n", self.tool, self.version, self.command);
        for c in &self.checks {
            out.push_str(&format!("  {c}\n"));
        }
        for n in &self.notes {
            out.push_str(&format!("  note: {n}\n"));
        }
        let failed = self.checks.iter().filter(|c| c.failed()).count();
        out.push_str(&format!("{} checks, {} failed\n", self.checks.len(), failed));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tally_statuses() {
        let mut t = Tally::new("x", "x");
        t.see(true, false, || unreachable!());
        let c = t.finish();
        assert_eq!(c.status, Status::PassExhaustive);
        assert!(!c.strict);

        let mut t = Tally::new("y", "y");
        t.mark_sampled();
        t.see(false, false, || "here".into());
        t.see(false, false, || "not recorded".into());
        let c = t.finish();
        assert_eq!(c.status, Status::Fail);
        assert_eq!(c.witness.as_deref(), Some("here"));

        assert_eq!(Tally::new("z", "z").finish().status, Status::Untested);
    }

    #[test]
    fn canonical_json_drops_timings() {
        let mut r = Report::new("t", 1);
        r.push(Check::fact("a", "a", true, None));
        let plain = r.to_canonical_json();
        r.timings_ms = Some(vec![("a".into(), 5)]);
        assert_eq!(plain, r.to_canonical_json());
        let back: Report = serde_json::from_str(&plain).unwrap();
        assert_eq!(back.checks, r.checks);
    }
}

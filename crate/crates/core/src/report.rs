//! Suite reports: one JSON document per suite, one CSV row per check.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::estimate::{Budget, Direction};

/// `Assert` checks are contracts and decide the exit status; `Observe`
/// checks record empirical constants only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tier {
    Assert,
    Observe,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub tier: Tier,
    pub inputs: BTreeMap<String, String>,
    pub measured: BTreeMap<String, f64>,
    pub bounds: BTreeMap<String, f64>,
    pub direction: Option<Direction>,
    pub verdict: bool,
    pub seed: u64,
    pub budget: Option<Budget>,
    /// Wall clock; the only field allowed to differ between reruns.
    pub runtime_ms: u64,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, tier: Tier, seed: u64) -> Self {
        Self {
            name: name.into(),
            tier,
            inputs: BTreeMap::new(),
            measured: BTreeMap::new(),
            bounds: BTreeMap::new(),
            direction: None,
            verdict: true,
            seed,
            budget: None,
            runtime_ms: 0,
        }
    }

    pub fn input(mut self, key: &str, value: impl ToString) -> Self {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    pub fn measured(mut self, key: &str, value: f64) -> Self {
        self.measured.insert(key.to_string(), value);
        self
    }

    pub fn bound(mut self, key: &str, value: f64) -> Self {
        self.bounds.insert(key.to_string(), value);
        self
    }

    pub fn direction(mut self, d: Direction) -> Self {
        self.direction = Some(d);
        self
    }

    pub fn budget(mut self, b: Budget) -> Self {
        self.budget = Some(b);
        self
    }

    pub fn verdict(mut self, ok: bool) -> Self {
        self.verdict = ok;
        self
    }

    fn same_numbers(&self, other: &Self) -> bool {
        let bits = |m: &BTreeMap<String, f64>| m.iter().map(|(k, v)| (k.clone(), v.to_bits())).collect::<Vec<_>>();
        self.name == other.name
            && self.tier == other.tier
            && self.inputs == other.inputs
            && bits(&self.measured) == bits(&other.measured)
            && bits(&self.bounds) == bits(&other.bounds)
            && self.direction == other.direction
            && self.verdict == other.verdict
            && self.seed == other.seed
            && self.budget == other.budget
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub version: String,
    pub master_seed: u64,
    pub checks: Vec<CheckRecord>,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    suite: &'a str,
    check: &'a str,
    tier: Tier,
    verdict: bool,
    seed: u64,
    starts: Option<usize>,
    polish: Option<usize>,
    direction: Option<Direction>,
    inputs: String,
    measured: String,
    bounds: String,
    runtime_ms: u64,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, master_seed: u64) -> Self {
        Self { suite: suite.into(), version: env!("CARGO_PKG_VERSION").to_string(), master_seed, checks: Vec::new() }
    }

    /// Runs `f`, stamps its wall time, appends the record.
    pub fn run(&mut self, f: impl FnOnce() -> Result<CheckRecord>) -> Result<()> {
        let start = std::time::Instant::now();
        let mut rec = f()?;
        rec.runtime_ms = start.elapsed().as_millis() as u64;
        self.checks.push(rec);
        Ok(())
    }

    /// All assert-tier checks hold.
    pub fn passed(&self) -> bool {
        self.checks.iter().filter(|c| c.tier == Tier::Assert).all(|c| c.verdict)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.tier == Tier::Assert && !c.verdict)
    }

    /// Equal up to `runtime_ms`, comparing floats bit for bit.
    pub fn same_numbers(&self, other: &Self) -> bool {
        self.suite == other.suite
            && self.master_seed == other.master_seed
            && self.checks.len() == other.checks.len()
            && self.checks.iter().zip(&other.checks).all(|(a, b)| a.same_numbers(b))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for c in &self.checks {
            w.serialize(CsvRow {
                suite: &self.suite,
                check: &c.name,
                tier: c.tier,
                verdict: c.verdict,
                seed: c.seed,
                starts: c.budget.map(|b| b.starts),
                polish: c.budget.map(|b| b.polish),
                direction: c.direction,
                inputs: serde_json::to_string(&c.inputs)?,
                measured: serde_json::to_string(&c.measured)?,
                bounds: serde_json::to_string(&c.bounds)?,
                runtime_ms: c.runtime_ms,
            })?;
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> SuiteReport {
        let mut r = SuiteReport::new("demo", 3);
        r.run(|| Ok(CheckRecord::new("a", Tier::Assert, 3).measured("x", 0.1 + 0.2).bound("x", 1.0))).unwrap();
        r.run(|| Ok(CheckRecord::new("b", Tier::Observe, 3).verdict(false))).unwrap();
        r
    }

    #[test]
    fn observe_never_fails() {
        assert!(sample().passed());
    }

    #[test]
    fn json_round_trip_and_csv() {
        let r = sample();
        let back = SuiteReport::from_json(&r.to_json().unwrap()).unwrap();
        assert!(back.same_numbers(&r));
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 3);
        assert!(text.starts_with("suite,check,tier"));
    }

    #[test]
    fn runtime_ignored() {
        let a = sample();
        let mut b = a.clone();
        b.checks[0].runtime_ms += 17;
        assert!(a.same_numbers(&b));
        b.checks[0].measured.insert("x".into(), 0.3);
        assert!(!a.same_numbers(&b));
    }
}

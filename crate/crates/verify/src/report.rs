use std::fmt::Write;

use serde::{Deserialize, Serialize};

use quintic_core::report::{CheckRecord, Status};

use crate::config::{ReportFormat, RunConfig, Suite};

/// A claim record as it appears in a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimRecord {
    pub suite: Suite,
    #[serde(flatten)]
    pub check: CheckRecord,
    /// Wall time of the job that produced the record.
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub toolkit_version: String,
    pub seed: u64,
    pub config: RunConfig,
    pub records: Vec<ClaimRecord>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub soft_pass: usize,
    pub soft_fail: usize,
}

impl VerificationReport {
    pub fn tally(&self) -> Tally {
        let mut t = Tally::default();
        for r in &self.records {
            match r.check.status {
                Status::Pass => t.pass += 1,
                Status::Fail => t.fail += 1,
                Status::SoftPass => t.soft_pass += 1,
                Status::SoftFail => t.soft_fail += 1,
            }
        }
        t
    }

    /// Hard failures, plus soft failures when `strict`.
    pub fn failures(&self, strict: bool) -> usize {
        let t = self.tally();
        t.fail + if strict { t.soft_fail } else { 0 }
    }

    pub fn exit_code(&self, strict: bool) -> i32 {
        i32::from(self.failures(strict) > 0)
    }

    /// Claim ids, statuses and witnesses: the parts that must not depend on
    /// timing.
    pub fn fingerprint(&self) -> Vec<(String, Status, serde_json::Value)> {
        self.records.iter().map(|r| (r.check.id.clone(), r.check.status, r.check.witness.clone())).collect()
    }

    /// The report with every timing field zeroed.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        for c in &mut r.records {
            c.elapsed_ms = 0;
        }
        r
    }

    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            ReportFormat::Markdown => self.markdown(),
        }
    }

    pub fn parse_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    fn markdown(&self) -> String {
        let t = self.tally();
        let mut s = String::new();
        let _ = writeln!(s, "# Verification report\n");
        let _ = writeln!(s, "- toolkit version: {}", self.toolkit_version);
        let _ = writeln!(s, "- seed: {}", self.seed);
        let primes: Vec<String> = self.config.primes.iter().map(u64::to_string).collect();
        let _ = writeln!(s, "- primes: {}", primes.join(", "));
        let pairs: Vec<String> = self.config.pairs().iter().map(|(p, a)| format!("(p={p}, a={a})")).collect();
        let _ = writeln!(s, "- parameters: {}", pairs.join(", "));
        let _ = writeln!(
            s,
            "- claims: {} ({} pass, {} hard failures, {} soft pass, {} soft outside envelope)\n",
            self.records.len(),
            t.pass,
            t.fail,
            t.soft_pass,
            t.soft_fail
        );
        for suite in Suite::ALL {
            let recs: Vec<&ClaimRecord> = self.records.iter().filter(|r| r.suite == suite).collect();
            if recs.is_empty() {
                continue;
            }
            let _ = writeln!(s, "## {suite}\n");
            for r in recs {
                let c = &r.check;
                let _ = writeln!(s, "- **{}** `{}`: {}", c.status.label(), c.id, c.statement);
                if c.status.is_soft() {
                    let envelope = c.witness.get("envelope").map(|e| e.to_string()).unwrap_or_else(|| "n/a".into());
                    let _ = writeln!(s, "  - SOFT statistical check, envelope {envelope}");
                }
                for n in &c.notes {
                    let _ = writeln!(s, "  - note: {n}");
                }
            }
            s.push('\n');
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn report(records: Vec<CheckRecord>) -> VerificationReport {
        VerificationReport {
            toolkit_version: "0.1.0".into(),
            seed: 7,
            config: RunConfig::default(),
            records: records
                .into_iter()
                .map(|check| ClaimRecord { suite: Suite::Lattice, check, elapsed_ms: 3 })
                .collect(),
        }
    }

    #[test]
    fn pass_only_markdown_has_no_fail_token() {
        let r = report(vec![CheckRecord::new("a.b", "a claim", true, json!({}))]);
        let md = r.render(ReportFormat::Markdown);
        assert!(!md.contains("FAIL"));
        assert!(md.contains("## lattice"));
        assert_eq!(r.exit_code(false), 0);
    }

    #[test]
    fn soft_records_show_marker_and_envelope() {
        let r = report(vec![CheckRecord::soft("s", "a heuristic", true, json!({ "envelope": [1.0, 2.0] }))]);
        let md = r.render(ReportFormat::Markdown);
        assert!(md.contains("SOFT PASS"));
        assert!(md.contains("envelope [1.0,2.0]"));
    }

    #[test]
    fn exit_code_contract() {
        let soft = report(vec![CheckRecord::soft("s", "h", false, json!({}))]);
        assert_eq!(soft.exit_code(false), 0);
        assert_eq!(soft.exit_code(true), 1);
        let hard = report(vec![CheckRecord::new("h", "h", false, json!({}))]);
        assert_eq!(hard.exit_code(false), 1);
    }

    #[test]
    fn json_round_trips() {
        let r = report(vec![
            CheckRecord::new("a", "x", true, json!({ "n": 5, "v": [1, -2], "f": 0.1 })).with_note("n"),
            CheckRecord::soft("b", "y", false, json!(null)),
        ]);
        let text = r.render(ReportFormat::Json);
        assert_eq!(VerificationReport::parse_json(&text).unwrap(), r);
    }
}

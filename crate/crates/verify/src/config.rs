use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use quintic_core::moore::ExcludedModuli;
use quintic_core::scalars::DEFAULT_PRIMES;

/// Environment variable that overrides the cache directory.
pub const CACHE_DIR_ENV: &str = "QUINTIC_CACHE_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Heisenberg,
    Sections,
    Hesse,
    Torsion,
    Moore,
    Lattice,
    Scan,
    Secants,
    Incidence,
    Cremona,
}

impl Suite {
    /// Every suite in run order; scans come before the checks that use them.
    pub const ALL: [Suite; 10] = [
        Suite::Heisenberg,
        Suite::Sections,
        Suite::Hesse,
        Suite::Torsion,
        Suite::Moore,
        Suite::Lattice,
        Suite::Scan,
        Suite::Secants,
        Suite::Incidence,
        Suite::Cremona,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Heisenberg => "heisenberg",
            Suite::Sections => "sections",
            Suite::Hesse => "hesse",
            Suite::Torsion => "torsion",
            Suite::Moore => "moore",
            Suite::Lattice => "lattice",
            Suite::Scan => "scan",
            Suite::Secants => "secants",
            Suite::Incidence => "incidence",
            Suite::Cremona => "cremona",
        }
    }

    /// Suites that run once per `(p, a)`.
    pub fn needs_scan(self) -> bool {
        matches!(self, Suite::Scan | Suite::Secants | Suite::Incidence | Suite::Cremona)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| format!("unknown suite '{s}'"))
    }
}

/// Parses `all`, `none` or a comma-separated list.
pub fn parse_suites(list: &str) -> Result<BTreeSet<Suite>, String> {
    match list.trim() {
        "all" => Ok(Suite::ALL.into_iter().collect()),
        "" | "none" => Ok(BTreeSet::new()),
        list => list.split(',').map(|s| s.trim().parse()).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AValues {
    /// The two smallest admissible values for each prime.
    Auto,
    /// The same values for every prime.
    All(Vec<u64>),
    PerPrime(BTreeMap<u64, Vec<u64>>),
}

impl AValues {
    /// Parses `auto`, `2,4` or `31=2,4;61=2,3`.
    pub fn parse(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s == "auto" {
            return Ok(AValues::Auto);
        }
        let nums = |t: &str| -> Result<Vec<u64>, String> {
            t.split(',').map(|v| v.trim().parse::<u64>().map_err(|_| format!("bad value '{v}'"))).collect()
        };
        if s.contains('=') {
            let mut map = BTreeMap::new();
            for part in s.split(';') {
                let (p, vals) = part.split_once('=').ok_or_else(|| format!("bad entry '{part}'"))?;
                let p = p.trim().parse::<u64>().map_err(|_| format!("bad prime '{p}'"))?;
                map.insert(p, nums(vals)?);
            }
            Ok(AValues::PerPrime(map))
        } else {
            Ok(AValues::All(nums(s)?))
        }
    }

    pub fn for_prime(&self, p: u64) -> Vec<u64> {
        match self {
            AValues::Auto => ExcludedModuli::new().admissible_mod(p, 2),
            AValues::All(v) => v.clone(),
            AValues::PerPrime(m) => m.get(&p).cloned().unwrap_or_default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Json,
    Markdown,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            _ => Err(format!("unknown format '{s}'")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub primes: Vec<u64>,
    pub a_values: AValues,
    pub seed: u64,
    /// Run the Moore suite with `a` as an indeterminate.
    pub symbolic_a: bool,
    pub suites: BTreeSet<Suite>,
    pub cache_dir: Option<PathBuf>,
    pub report_format: ReportFormat,
    /// Promote soft failures to hard ones for the exit code.
    pub strict: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            primes: vec![31, 61],
            a_values: AValues::Auto,
            seed: 42,
            symbolic_a: true,
            suites: Suite::ALL.into_iter().collect(),
            cache_dir: None,
            report_format: ReportFormat::Json,
            strict: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        for p in &self.primes {
            if !DEFAULT_PRIMES.contains(p) {
                return Err(format!("p = {p} is not supported; choose from {DEFAULT_PRIMES:?}"));
            }
        }
        Ok(())
    }

    /// `(p, a)` pairs in a fixed order.
    pub fn pairs(&self) -> Vec<(u64, u64)> {
        self.primes.iter().flat_map(|&p| self.a_values.for_prime(p).into_iter().map(move |a| (p, a))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_lists() {
        assert_eq!(parse_suites("all").unwrap().len(), 10);
        assert!(parse_suites("none").unwrap().is_empty());
        let s = parse_suites("lattice, moore").unwrap();
        assert_eq!(s.into_iter().collect::<Vec<_>>(), [Suite::Moore, Suite::Lattice]);
        assert!(parse_suites("lattice,bogus").is_err());
    }

    #[test]
    fn a_value_forms() {
        assert_eq!(AValues::parse("auto").unwrap(), AValues::Auto);
        assert_eq!(AValues::parse("2,4").unwrap().for_prime(61), [2, 4]);
        let per = AValues::parse("31=2,4;61=3").unwrap();
        assert_eq!(per.for_prime(31), [2, 4]);
        assert_eq!(per.for_prime(61), [3]);
        assert!(per.for_prime(151).is_empty());
        assert_eq!(AValues::Auto.for_prime(31).len(), 2);
    }

    #[test]
    fn unsupported_prime_is_invalid() {
        let c = RunConfig { primes: vec![37], ..RunConfig::default() };
        assert!(c.validate().is_err());
        assert!(RunConfig::default().validate().is_ok());
    }
}

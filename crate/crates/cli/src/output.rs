//! Score tables, manifests and number formatting.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rsp_core::{CentralityVector, Graph};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// Significant digits of every printed score.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Everything needed to rerun an invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    pub directed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measure: Option<String>,
    pub betas: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub policy: Option<String>,
    pub cost_policy: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    pub outputs: Vec<String>,
    pub seed: u64,
    pub rng: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
}

impl RunManifest {
    pub fn new(command: &str) -> Self {
        RunManifest {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            input: None,
            generator: None,
            directed: false,
            measure: None,
            betas: Vec::new(),
            policy: None,
            cost_policy: "unit".to_string(),
            group: None,
            outputs: Vec::new(),
            seed: 0,
            rng: rsp_core::generators::RNG_NAME.to_string(),
            threads: None,
        }
    }
}

/// `%.12g`-style formatting: 12 significant digits, trailing zeros dropped,
/// exponent form outside `[1e-5, 1e12)`.
pub fn fmt_sig(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= SIGNIFICANT_DIGITS as i32 {
        let m = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{m}e{sign}{:02}", exp.abs());
    }
    let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
    strip_zeros(&format!("{v:.decimals$}")).to_string()
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `node_id,score,rank` sorted by rank.
pub fn score_csv(g: &Graph, v: &CentralityVector) -> String {
    let mut out = String::from("node_id,score,rank\n");
    let ranks = v.ranks();
    for &node in v.ranking() {
        let _ = writeln!(out, "{},{},{}", g.label(node), fmt_sig(v.scores()[node]), ranks[node]);
    }
    out
}

#[derive(Debug, Serialize)]
pub struct ScoreRow<'a> {
    pub node_id: &'a str,
    pub score: f64,
    pub rank: usize,
}

pub fn score_rows<'a>(g: &'a Graph, v: &CentralityVector) -> Vec<ScoreRow<'a>> {
    let ranks = v.ranks();
    v.ranking()
        .iter()
        .map(|&node| ScoreRow {
            node_id: g.label(node),
            score: v.scores()[node],
            rank: ranks[node],
        })
        .collect()
}

pub fn output_path(prefix: &Path, ext: &str) -> PathBuf {
    let mut name = prefix.as_os_str().to_owned();
    name.push(ext);
    PathBuf::from(name)
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|e| CliError::validation("io-error", format!("{}: {e}", path.display())))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Score table read back from a CSV written by `compute`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreTable {
    pub labels: Vec<String>,
    pub scores: Vec<f64>,
}

impl ScoreTable {
    pub fn read(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::validation("io-error", format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|msg| CliError::validation("malformed-scores", format!("{}: {msg}", path.display())))
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or("empty score file")?;
        let cols: Vec<&str> = header.split(',').map(str::trim).collect();
        let id_col = cols.iter().position(|&c| c == "node_id").ok_or("no node_id column")?;
        let score_col = cols.iter().position(|&c| c == "score").ok_or("no score column")?;
        let mut table = ScoreTable {
            labels: Vec::new(),
            scores: Vec::new(),
        };
        for (k, line) in lines.enumerate() {
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != cols.len() {
                return Err(format!("row {}: expected {} fields", k + 2, cols.len()));
            }
            let score: f64 = fields[score_col]
                .parse()
                .map_err(|_| format!("row {}: bad score `{}`", k + 2, fields[score_col]))?;
            if table.labels.iter().any(|l| l == fields[id_col]) {
                return Err(format!("row {}: duplicate node `{}`", k + 2, fields[id_col]));
            }
            table.labels.push(fields[id_col].to_string());
            table.scores.push(score);
        }
        Ok(table)
    }

    /// Scores reordered to follow `labels`; `None` when the node sets differ.
    pub fn aligned_to(&self, labels: &[String]) -> Option<Vec<f64>> {
        if labels.len() != self.labels.len() {
            return None;
        }
        labels
            .iter()
            .map(|l| self.labels.iter().position(|x| x == l).map(|k| self.scores[k]))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(fmt_sig(4.0), "4");
        assert_eq!(fmt_sig(0.5), "0.5");
        assert_eq!(fmt_sig(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_sig(2.0 / 3.0 * 1000.0), "666.666666667");
        assert_eq!(fmt_sig(123456789012.0), "123456789012");
        assert_eq!(fmt_sig(1234567890123.0), "1.23456789012e+12");
        assert_eq!(fmt_sig(1.25e-7), "1.25e-07");
        assert_eq!(fmt_sig(0.0001), "0.0001");
        assert_eq!(fmt_sig(-2.5), "-2.5");
        assert_eq!(fmt_sig(9.9999999999996), "10");
        assert_eq!(fmt_sig(0.0), "0");
    }

    #[test]
    fn score_table_round_trip() {
        let t = ScoreTable::parse("node_id,score,rank\nb,8,1\na,4,2\nc,4,3\n").unwrap();
        assert_eq!(t.labels, ["b", "a", "c"]);
        let order: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        assert_eq!(t.aligned_to(&order), Some(vec![4.0, 8.0, 4.0]));
        assert_eq!(t.aligned_to(&order[..2]), None);
        assert!(ScoreTable::parse("node_id,score\na,x\n").is_err());
        assert!(ScoreTable::parse("node_id,score\na,1\na,2\n").is_err());
    }
}

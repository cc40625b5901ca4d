//! Time-ordered records of chain configurations, with a line-oriented file
//! format shared by every simulation command.
//!
//! Format: a header `S=<int> M=<int|na> steps=<int>`, optional `#`-prefixed
//! metadata lines, then one line of space-separated integers per time slice
//! (site order 1..2S). Integers only; byte-exact and locale independent.

use crate::error::{Error, Result};

/// Time-ordered sequence of chain configurations.
///
/// `level_bound` is `None` for two-valued (±1) spin chains and `Some(M)` for
/// generalized chains with values in `-M..=M`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpacetimeTrace {
    half_sites: usize,
    level_bound: Option<i64>,
    dt: f64,
    meta: String,
    states: Vec<Vec<i64>>,
}

impl SpacetimeTrace {
    pub fn new(half_sites: usize, level_bound: Option<i64>, dt: f64, meta: &str) -> Self {
        Self {
            half_sites,
            level_bound,
            dt,
            meta: meta.to_string(),
            states: Vec::new(),
        }
    }

    pub fn half_sites(&self) -> usize {
        self.half_sites
    }

    pub fn sites(&self) -> usize {
        2 * self.half_sites
    }

    pub fn level_bound(&self) -> Option<i64> {
        self.level_bound
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn meta(&self) -> &str {
        &self.meta
    }

    /// Number of recorded steps; one less than the number of slices.
    pub fn steps(&self) -> usize {
        self.states.len().saturating_sub(1)
    }

    pub fn slices(&self) -> &[Vec<i64>] {
        &self.states
    }

    pub fn slice(&self, n: usize) -> &[i64] {
        &self.states[n]
    }

    pub fn push(&mut self, row: Vec<i64>) -> Result<()> {
        if row.len() != self.sites() {
            return Err(Error::SizeMismatch {
                left: row.len(),
                right: self.sites(),
            });
        }
        for &v in &row {
            match self.level_bound {
                Some(m) if v.abs() > m => return Err(Error::ValueOutOfRange { value: v, m }),
                None if v != 1 && v != -1 => return Err(Error::ValueOutOfRange { value: v, m: 1 }),
                _ => {}
            }
        }
        self.states.push(row);
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let m = match self.level_bound {
            Some(m) => m.to_string(),
            None => "na".to_string(),
        };
        let mut out = format!("S={} M={} steps={}\n", self.half_sites, m, self.steps());
        if !self.meta.is_empty() {
            for line in self.meta.lines() {
                out.push_str(&format!("# {line}\n"));
            }
        }
        for row in &self.states {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::TraceFormat("missing header".into()))?;
        let mut s = None;
        let mut m_field = None;
        let mut steps = None;
        for field in header.split_whitespace() {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| Error::TraceFormat(format!("bad header field `{field}`")))?;
            match key {
                "S" => {
                    s = Some(
                        value
                            .parse::<usize>()
                            .map_err(|e| Error::TraceFormat(format!("bad S `{value}`: {e}")))?,
                    )
                }
                "M" => m_field = Some(value.to_string()),
                "steps" => {
                    steps = Some(
                        value
                            .parse::<usize>()
                            .map_err(|e| Error::TraceFormat(format!("bad steps `{value}`: {e}")))?,
                    )
                }
                other => return Err(Error::TraceFormat(format!("unknown header key `{other}`"))),
            }
        }
        let s = s.ok_or_else(|| Error::TraceFormat("header missing S".into()))?;
        if s == 0 {
            return Err(Error::TraceFormat("S must be positive".into()));
        }
        let m_field = m_field.ok_or_else(|| Error::TraceFormat("header missing M".into()))?;
        let steps = steps.ok_or_else(|| Error::TraceFormat("header missing steps".into()))?;
        let level_bound = if m_field == "na" {
            None
        } else {
            let m = m_field
                .parse::<i64>()
                .map_err(|e| Error::TraceFormat(format!("bad M `{m_field}`: {e}")))?;
            if m < 1 {
                return Err(Error::TraceFormat("M must be >= 1".into()));
            }
            Some(m)
        };

        let mut meta_lines = Vec::new();
        let mut trace = SpacetimeTrace::new(s, level_bound, 1.0, "");
        for line in lines {
            if let Some(rest) = line.strip_prefix('#') {
                meta_lines.push(rest.trim().to_string());
                continue;
            }
            if line.trim().is_empty() {
                continue;
            }
            let row: Result<Vec<i64>> = line
                .split_whitespace()
                .map(|cell| {
                    cell.parse::<i64>()
                        .map_err(|e| Error::TraceFormat(format!("bad value `{cell}`: {e}")))
                })
                .collect();
            trace.push(row?)?;
        }
        trace.meta = meta_lines.join("\n");
        if trace.steps() != steps {
            return Err(Error::TraceFormat(format!(
                "header says steps={steps} but found {}",
                trace.steps()
            )));
        }
        Ok(trace)
    }

    pub fn save(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        Self::from_text(&std::fs::read_to_string(path)?)
    }
}

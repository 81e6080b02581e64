//! Trace files: one line per iteration, byte-deterministic.
//!
//! Format: `t=<iteration> states=<v0>,<v1>,...`, newline-terminated.
//! Boolean states serialize as 0/1 for uniformity with integer domains.

use std::fs;
use std::path::Path;

use crate::metamodel::Trajectory;

use super::error::HarnessError;

/// Renders a trajectory in the trace format.
pub fn render_trace(trajectory: &Trajectory) -> String {
    let mut out = String::new();
    for (iteration, row) in trajectory.rows().iter().enumerate() {
        out.push_str(&format!("t={iteration} states="));
        for (index, value) in row.iter().enumerate() {
            if index > 0 {
                out.push(',');
            }
            out.push_str(&value.as_numeric().to_string());
        }
        out.push('\n');
    }
    out
}

/// Parses one trace line back into numeric states.
pub fn parse_trace_line(line: &str) -> Option<(u64, Vec<i64>)> {
    let rest = line.strip_prefix("t=")?;
    let (iteration, states) = rest.split_once(" states=")?;
    let iteration = iteration.parse().ok()?;
    let states = states
        .split(',')
        .map(|cell| cell.parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .ok()?;
    Some((iteration, states))
}

/// Writes a trajectory to `path`. Refuses empty trajectories and writes
/// nothing in that case.
pub fn write_trace(trajectory: &Trajectory, path: impl AsRef<Path>) -> Result<(), HarnessError> {
    if trajectory.is_empty() {
        return Err(HarnessError::EmptyTrajectory);
    }
    let path = path.as_ref();
    fs::write(path, render_trace(trajectory)).map_err(HarnessError::io(path.display().to_string()))
}

/// The first difference between two line-oriented files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceDiff {
    Identical,
    /// 1-based line number plus both lines (`None` = file ended early).
    Differs {
        line: usize,
        left: Option<String>,
        right: Option<String>,
    },
}

/// Compares two trace (or lineage) files line by line.
pub fn trace_diff(
    left_path: impl AsRef<Path>,
    right_path: impl AsRef<Path>,
) -> Result<TraceDiff, HarnessError> {
    let left_path = left_path.as_ref();
    let right_path = right_path.as_ref();
    let left =
        fs::read_to_string(left_path).map_err(HarnessError::io(left_path.display().to_string()))?;
    let right = fs::read_to_string(right_path)
        .map_err(HarnessError::io(right_path.display().to_string()))?;
    let mut left_lines = left.lines();
    let mut right_lines = right.lines();
    let mut line = 0;
    loop {
        line += 1;
        match (left_lines.next(), right_lines.next()) {
            (None, None) => return Ok(TraceDiff::Identical),
            (a, b) if a == b => continue,
            (a, b) => {
                return Ok(TraceDiff::Differs {
                    line,
                    left: a.map(str::to_owned),
                    right: b.map(str::to_owned),
                })
            }
        }
    }
}

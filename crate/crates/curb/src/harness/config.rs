//! Line-oriented system configuration files.
//!
//! ```text
//! # rule 110 on a ring
//! [system]
//! entities = 64
//! state_domain = int 0 1
//! topology = ring 1
//! include_self = false
//! iterations = 100
//! seed = 42
//! mode = faithful
//!
//! [init]
//! states = impulse 63
//!
//! [rules]
//! file = rule110.curb
//! shared = true
//!
//! [adaptation]
//! schedule = every 10 for 3
//! ```
//!
//! `states` also accepts a comma-separated vector. `topology` accepts
//! `ring <radius>`, `grid <w> <h> moore|vonneumann wrap|nowrap`, and
//! `explicit <file>` (one comma-separated neighbor list per line).
//! Relative file references resolve against the config's directory.

use std::fs;
use std::path::{Path, PathBuf};

use crate::lang::RuleSource;
use crate::metamodel::{
    ExecutionMode, Neighborhood, RuleAssignment, StateDomain, StateValue, TopologySpec,
};

use super::error::HarnessError;

/// When to adapt during a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdaptationSchedule {
    None,
    /// After every `k`-th iteration, for at most `events` events.
    Every { k: u64, events: u64 },
}

/// A fully loaded and cross-validated run description.
#[derive(Debug, Clone)]
pub struct SystemSpec {
    pub entity_count: usize,
    pub state_domain: StateDomain,
    pub topology: TopologySpec,
    pub iterations: u64,
    pub seed: u64,
    pub mode: ExecutionMode,
    pub initial_states: Vec<StateValue>,
    pub rules: RuleAssignment,
    pub schedule: AdaptationSchedule,
    /// Where `run` writes the trace.
    pub trace_path: PathBuf,
    /// Where `run` and `adapt` write lineage records.
    pub lineage_path: PathBuf,
    /// Where `adapt` writes the final child rule source.
    pub child_rule_path: PathBuf,
}

const SECTIONS: &[(&str, &[&str])] = &[
    (
        "system",
        &[
            "entities",
            "state_domain",
            "topology",
            "include_self",
            "iterations",
            "seed",
            "mode",
        ],
    ),
    ("init", &["states"]),
    ("rules", &["file", "shared"]),
    ("adaptation", &["schedule"]),
];

fn parse_error(line: usize, message: impl Into<String>) -> HarnessError {
    HarnessError::ConfigParse {
        line,
        message: message.into(),
    }
}

fn semantic_error(message: impl Into<String>) -> HarnessError {
    HarnessError::ConfigSemantic {
        message: message.into(),
    }
}

/// One `key = value` with its source line, grouped by section.
struct RawConfig {
    entries: Vec<(String, String, String, usize)>, // section, key, value, line
}

impl RawConfig {
    fn get(&self, section: &str, key: &str) -> Option<(&str, usize)> {
        self.entries
            .iter()
            .find(|(s, k, _, _)| s == section && k == key)
            .map(|(_, _, value, line)| (value.as_str(), *line))
    }

    fn require(&self, section: &str, key: &str) -> Result<(&str, usize), HarnessError> {
        self.get(section, key)
            .ok_or_else(|| semantic_error(format!("missing key `{key}` in section [{section}]")))
    }
}

fn parse_raw(text: &str) -> Result<RawConfig, HarnessError> {
    let mut entries: Vec<(String, String, String, usize)> = Vec::new();
    let mut section: Option<String> = None;
    for (index, raw_line) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let Some(name) = name.strip_suffix(']') else {
                return Err(parse_error(line_no, "unterminated section header"));
            };
            if !SECTIONS.iter().any(|(s, _)| *s == name) {
                return Err(parse_error(line_no, format!("unknown section [{name}]")));
            }
            section = Some(name.to_owned());
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(parse_error(line_no, "expected `key = value`"));
        };
        let key = key.trim();
        let value = value.trim();
        let Some(section) = section.as_deref() else {
            return Err(parse_error(line_no, "key outside of any section"));
        };
        let allowed = SECTIONS
            .iter()
            .find(|(s, _)| *s == section)
            .map(|(_, keys)| *keys)
            .unwrap_or_default();
        if !allowed.contains(&key) {
            return Err(parse_error(
                line_no,
                format!("unknown key `{key}` in section [{section}]"),
            ));
        }
        if entries.iter().any(|(s, k, _, _)| s == section && k == key) {
            return Err(parse_error(line_no, format!("duplicate key `{key}`")));
        }
        entries.push((section.to_owned(), key.to_owned(), value.to_owned(), line_no));
    }
    Ok(RawConfig { entries })
}

fn parse_usize(value: &str, line: usize, key: &str) -> Result<usize, HarnessError> {
    value
        .parse()
        .map_err(|_| parse_error(line, format!("`{key}` expects a non-negative integer")))
}

fn parse_u64(value: &str, line: usize, key: &str) -> Result<u64, HarnessError> {
    value
        .parse()
        .map_err(|_| parse_error(line, format!("`{key}` expects a non-negative integer")))
}

fn parse_bool(value: &str, line: usize, key: &str) -> Result<bool, HarnessError> {
    match value {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(parse_error(line, format!("`{key}` expects true or false"))),
    }
}

/// Parses a domain description: `bool` or `int <lo> <hi>`.
pub fn parse_domain(value: &str) -> Result<StateDomain, String> {
    let parts: Vec<&str> = value.split_whitespace().collect();
    match parts.as_slice() {
        ["bool"] => Ok(StateDomain::Boolean),
        ["int", lo, hi] => {
            let lo: i64 = lo.parse().map_err(|_| "invalid integer bound".to_owned())?;
            let hi: i64 = hi.parse().map_err(|_| "invalid integer bound".to_owned())?;
            StateDomain::integer_range(lo, hi).map_err(|e| e.to_string())
        }
        _ => Err("expected `bool` or `int <lo> <hi>`".to_owned()),
    }
}

fn parse_topology(
    value: &str,
    include_self: bool,
    line: usize,
    base: &Path,
) -> Result<TopologySpec, HarnessError> {
    let parts: Vec<&str> = value.split_whitespace().collect();
    let spec = match parts.as_slice() {
        ["ring", radius] => TopologySpec::ring(parse_usize(radius, line, "topology")?),
        ["grid", w, h, shape, wrapping] => {
            let neighborhood = match *shape {
                "moore" => Neighborhood::Moore,
                "vonneumann" => Neighborhood::VonNeumann,
                _ => return Err(parse_error(line, "expected `moore` or `vonneumann`")),
            };
            let wrap = match *wrapping {
                "wrap" => true,
                "nowrap" => false,
                _ => return Err(parse_error(line, "expected `wrap` or `nowrap`")),
            };
            TopologySpec::grid(
                parse_usize(w, line, "topology")?,
                parse_usize(h, line, "topology")?,
                neighborhood,
                wrap,
            )
        }
        ["explicit", file] => {
            let path = base.join(file);
            let text = fs::read_to_string(&path).map_err(|_| {
                parse_error(line, format!("file not found: {}", path.display()))
            })?;
            let mut adjacency: Vec<Vec<usize>> = Vec::new();
            for (row_index, row) in text.lines().enumerate() {
                let row = row.trim();
                if row.is_empty() {
                    adjacency.push(Vec::new());
                    continue;
                }
                let indices = row
                    .split(',')
                    .map(|cell| cell.trim().parse::<usize>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| {
                        parse_error(
                            line,
                            format!("bad adjacency row {} in {}", row_index + 1, path.display()),
                        )
                    })?;
                adjacency.push(indices);
            }
            TopologySpec::explicit(adjacency)
        }
        _ => {
            return Err(parse_error(
                line,
                "expected `ring <r>`, `grid <w> <h> <shape> <wrapping>`, or `explicit <file>`",
            ))
        }
    };
    Ok(spec.with_include_self(include_self))
}

fn parse_states(
    value: &str,
    line: usize,
    entity_count: usize,
    domain: &StateDomain,
) -> Result<Vec<StateValue>, HarnessError> {
    let parts: Vec<&str> = value.split_whitespace().collect();
    if let ["impulse", index] = parts.as_slice() {
        let index = parse_usize(index, line, "states")?;
        if index >= entity_count {
            return Err(semantic_error(format!(
                "impulse index {index} out of range for {entity_count} entities"
            )));
        }
        let mut states = vec![domain.lowest(); entity_count];
        states[index] = domain.impulse_value();
        return Ok(states);
    }
    let states = value
        .split(',')
        .map(|cell| parse_state_value(cell.trim(), domain))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|message| parse_error(line, message))?;
    if states.len() != entity_count {
        return Err(semantic_error(format!(
            "states length {} does not match entities {entity_count}",
            states.len()
        )));
    }
    Ok(states)
}

fn parse_state_value(cell: &str, domain: &StateDomain) -> Result<StateValue, String> {
    match domain {
        StateDomain::Boolean => match cell {
            "true" | "1" => Ok(StateValue::Bool(true)),
            "false" | "0" => Ok(StateValue::Bool(false)),
            _ => Err(format!("bad boolean state `{cell}`")),
        },
        StateDomain::IntegerRange { .. } => cell
            .parse::<i64>()
            .map(StateValue::Int)
            .map_err(|_| format!("bad integer state `{cell}`")),
    }
}

/// Loads and cross-validates a config file.
pub fn load_config(path: impl AsRef<Path>) -> Result<SystemSpec, HarnessError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(HarnessError::io(path.display().to_string()))?;
    let base = path.parent().unwrap_or_else(|| Path::new(".")).to_owned();
    let raw = parse_raw(&text)?;

    let (value, line) = raw.require("system", "entities")?;
    let entity_count = parse_usize(value, line, "entities")?;
    if entity_count == 0 {
        return Err(semantic_error("entities must be positive"));
    }

    let (value, line) = raw.require("system", "state_domain")?;
    let state_domain = parse_domain(value).map_err(|message| parse_error(line, message))?;

    let include_self = match raw.get("system", "include_self") {
        Some((value, line)) => parse_bool(value, line, "include_self")?,
        None => false,
    };
    let (value, line) = raw.require("system", "topology")?;
    let topology = parse_topology(value, include_self, line, &base)?;

    let (value, line) = raw.require("system", "iterations")?;
    let iterations = parse_u64(value, line, "iterations")?;

    let (value, line) = raw.require("system", "seed")?;
    let seed = parse_u64(value, line, "seed")?;

    let mode = match raw.get("system", "mode") {
        Some(("faithful", _)) | None => ExecutionMode::Faithful,
        Some(("bound", _)) => ExecutionMode::Bound,
        Some((_, line)) => return Err(parse_error(line, "`mode` expects faithful or bound")),
    };

    let (value, line) = raw.require("init", "states")?;
    let initial_states = parse_states(value, line, entity_count, &state_domain)?;
    if let Some(bad) = initial_states.iter().find(|v| !state_domain.contains(v)) {
        return Err(semantic_error(format!(
            "initial state {bad} lies outside the domain {state_domain}"
        )));
    }

    let (value, line) = raw.require("rules", "file")?;
    let rule_path = base.join(value);
    let rule_text = fs::read_to_string(&rule_path)
        .map_err(|_| parse_error(line, format!("file not found: {}", rule_path.display())))?;
    let shared = match raw.get("rules", "shared") {
        Some((value, line)) => parse_bool(value, line, "shared")?,
        None => true,
    };
    let rules = if shared {
        RuleAssignment::Shared(RuleSource::new(rule_text))
    } else {
        RuleAssignment::PerEntity(vec![RuleSource::new(rule_text); entity_count])
    };

    let schedule = match raw.get("adaptation", "schedule") {
        None => AdaptationSchedule::None,
        Some((value, line)) => {
            let parts: Vec<&str> = value.split_whitespace().collect();
            match parts.as_slice() {
                ["every", k, "for", m] => {
                    let k = parse_u64(k, line, "schedule")?;
                    let events = parse_u64(m, line, "schedule")?;
                    if k == 0 {
                        return Err(semantic_error("schedule period must be at least 1"));
                    }
                    AdaptationSchedule::Every { k, events }
                }
                _ => return Err(parse_error(line, "expected `every <k> for <m>`")),
            }
        }
    };

    Ok(SystemSpec {
        entity_count,
        state_domain,
        topology,
        iterations,
        seed,
        mode,
        initial_states,
        rules,
        schedule,
        trace_path: path.with_extension("trace"),
        lineage_path: path.with_extension("lineage"),
        child_rule_path: path.with_extension("child.curb"),
    })
}

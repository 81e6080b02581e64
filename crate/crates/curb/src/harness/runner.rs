//! Batch orchestration: the regime pipeline, scheduled adaptation, and
//! output files.

use std::fs;
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::adapt::{adapt, IdentifierCounter, MutationPolicy};
use crate::lang::{compile, parse, tokenize, Program, RuleProgram, Vocabulary};
use crate::metamodel::{define_virtual, MetastableParams, StateDomain, Trajectory};

use super::config::{AdaptationSchedule, SystemSpec};
use super::error::HarnessError;
use super::trace::write_trace;

/// What a completed run produced.
#[derive(Debug, Clone)]
pub struct RunSummary {
    pub trace_path: PathBuf,
    pub lineage_path: Option<PathBuf>,
    pub trace_rows: usize,
    pub adaptations: usize,
}

fn concretized(spec: &SystemSpec) -> Result<crate::metamodel::MetastableSystem, HarnessError> {
    let virtual_system = define_virtual(spec.state_domain.kind(), Vocabulary::standard());
    Ok(virtual_system.concretize(MetastableParams {
        entity_count: spec.entity_count,
        state_domain: spec.state_domain.clone(),
        topology: spec.topology.clone(),
        initial_states: spec.initial_states.clone(),
        rules: spec.rules.clone(),
        rng_seed: spec.seed,
    })?)
}

fn counter_for(sources: &[crate::lang::RuleSource]) -> Result<IdentifierCounter, HarnessError> {
    let programs: Vec<Program> = sources
        .iter()
        .map(|source| Ok(parse(&tokenize(source)?)?))
        .collect::<Result<_, crate::lang::LangError>>()
        .map_err(crate::metamodel::ModelError::from)?;
    Ok(IdentifierCounter::after_programs(programs.iter()))
}

/// Executes a loaded spec end to end: concretize, actualize, run (with the
/// adaptation schedule interleaved), then write the trace and lineage
/// files. Nothing is written until the whole run has succeeded.
pub fn run_spec(spec: &SystemSpec) -> Result<RunSummary, HarnessError> {
    let meta = concretized(spec)?;
    let mut actual = meta.actualize()?;
    let mut counter = counter_for(meta.rules().sources())?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let policy = MutationPolicy::default();

    let mut trajectory = Trajectory::new();
    trajectory.push(actual.states());
    let mut lineage_lines: Vec<String> = Vec::new();
    let mut events_done: u64 = 0;

    for iteration in 1..=spec.iterations {
        actual.step(spec.mode)?;
        trajectory.push(actual.states());
        if let AdaptationSchedule::Every { k, events } = spec.schedule {
            if events_done < events && iteration % k == 0 {
                let resume_states = actual.states();
                let projected = actual.deactualize();
                let child = adapt(&projected, &policy, &mut rng, &mut counter)?;
                let mut record = child
                    .lineage()
                    .records()
                    .last()
                    .expect("adapt appends a record")
                    .clone();
                record.iteration = Some(iteration);
                lineage_lines.push(record.log_line());
                actual = child.actualize_from(resume_states, iteration)?;
                events_done += 1;
            }
        }
    }

    write_trace(&trajectory, &spec.trace_path)?;
    let lineage_path = match spec.schedule {
        AdaptationSchedule::None => None,
        AdaptationSchedule::Every { .. } => {
            write_lines(&spec.lineage_path, &lineage_lines)?;
            Some(spec.lineage_path.clone())
        }
    };
    Ok(RunSummary {
        trace_path: spec.trace_path.clone(),
        lineage_path,
        trace_rows: trajectory.len(),
        adaptations: events_done as usize,
    })
}

/// What an adapt-only invocation produced.
#[derive(Debug, Clone)]
pub struct AdaptSummary {
    pub child_rule_path: PathBuf,
    pub lineage_path: PathBuf,
    pub adaptations: usize,
}

/// Runs `events` adaptations without simulating, then writes the final
/// child rule source and the lineage log.
pub fn adapt_spec(spec: &SystemSpec, events: u64) -> Result<AdaptSummary, HarnessError> {
    let meta = concretized(spec)?;
    // Surfaces rule-language errors before any adaptation happens.
    meta.actualize()?;
    let mut counter = counter_for(meta.rules().sources())?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let policy = MutationPolicy::default();

    let mut system = meta;
    for _ in 0..events {
        system = adapt(&system, &policy, &mut rng, &mut counter)?;
    }
    let lines: Vec<String> = system
        .lineage()
        .records()
        .iter()
        .map(|record| record.log_line())
        .collect();
    write_lines(&spec.lineage_path, &lines)?;

    let child_slot = match system.lineage().records().last() {
        Some(record) => match record.target {
            crate::adapt::AdaptedTarget::Shared => 0,
            crate::adapt::AdaptedTarget::Entity(index) => index,
        },
        None => 0,
    };
    let child_source = &system.rules().sources()[child_slot];
    fs::write(&spec.child_rule_path, format!("{child_source}\n"))
        .map_err(HarnessError::io(spec.child_rule_path.display().to_string()))?;
    Ok(AdaptSummary {
        child_rule_path: spec.child_rule_path.clone(),
        lineage_path: spec.lineage_path.clone(),
        adaptations: events as usize,
    })
}

/// Compiles a rule file against a domain and milieu size.
pub fn validate_rule_file(
    path: impl AsRef<Path>,
    domain: &StateDomain,
    milieu_count: usize,
) -> Result<RuleProgram, HarnessError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(HarnessError::io(path.display().to_string()))?;
    let program = compile(&text.into(), domain, milieu_count)
        .map_err(crate::metamodel::ModelError::from)?;
    Ok(program)
}

fn write_lines(path: &Path, lines: &[String]) -> Result<(), HarnessError> {
    let mut text = lines.join("\n");
    if !lines.is_empty() {
        text.push('\n');
    }
    fs::write(path, text).map_err(HarnessError::io(path.display().to_string()))
}

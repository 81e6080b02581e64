//! Acceptance suite: one test per criterion, each printing a pass line.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

mod common;

use std::fs;
use std::path::Path;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use curb::adapt::{adapt, AdaptedTarget, IdentifierCounter, MutationPolicy};
use curb::bridge::{
    execute_bound, execute_bound_into, execute_closed, interpolate, BindingSet, CaptureChannel,
};
use curb::harness::{load_config, run_spec};
use curb::lang::{parse, render, tokenize, validate, Expr, LangError, Stmt, ValidationError};
use curb::metamodel::{
    build_topology, define_virtual, ExecutionMode, MetastableParams, MetastableSystem,
    Neighborhood, RuleAssignment, StateDomain, StateValue, TopologySpec,
};
use curb::lang::Vocabulary;

use common::{
    gen_bindings, gen_domain, gen_program, game_of_life_source, place_glider, rule110_source,
    ConwayTorus, ElementaryCa, GenConfig,
};

fn write_config(dir: &Path, config: &str, rule: &str) -> std::path::PathBuf {
    fs::write(dir.join("rule.curb"), rule).unwrap();
    let path = dir.join("system.conf");
    fs::write(&path, config).unwrap();
    path
}

fn int01() -> StateDomain {
    StateDomain::integer_range(0, 1).unwrap()
}

#[test]
fn criterion_1_rule110_oracle_equivalence_faithful() {
    let dir = tempfile::tempdir().unwrap();
    let config = "[system]\n\
         entities = 64\n\
         state_domain = int 0 1\n\
         topology = ring 1\n\
         include_self = false\n\
         iterations = 100\n\
         seed = 42\n\
         mode = faithful\n\
         [init]\n\
         states = impulse 63\n\
         [rules]\n\
         file = rule.curb\n\
         shared = true\n";
    let path = write_config(dir.path(), config, rule110_source());
    let spec = load_config(&path).unwrap();

    let started = Instant::now();
    let summary = run_spec(&spec).unwrap();
    let elapsed = started.elapsed();

    // Independent truth-table oracle over the same initial condition.
    let mut initial = vec![0u8; 64];
    initial[63] = 1;
    let oracle = ElementaryCa::trajectory(110, initial, 100);

    // Hand-derived one-step check: the impulse at 63 turns on 62 (pattern
    // 001) and keeps 63 (pattern 010); everything else stays 0.
    let mut after_one = vec![0u8; 64];
    after_one[62] = 1;
    after_one[63] = 1;
    assert_eq!(oracle[1], after_one, "oracle sanity");

    let trace = fs::read_to_string(&summary.trace_path).unwrap();
    let lines: Vec<&str> = trace.lines().collect();
    assert_eq!(lines.len(), 101, "one trace row per iteration 0..=100");
    for (iteration, row) in oracle.iter().enumerate() {
        let expected = format!(
            "t={iteration} states={}",
            row.iter()
                .map(u8::to_string)
                .collect::<Vec<_>>()
                .join(",")
        );
        assert_eq!(lines[iteration], expected, "trace row {iteration}");
    }
    assert!(
        elapsed.as_secs_f64() < 5.0,
        "faithful run took {elapsed:?}, budget 5s"
    );
    println!(
        "acceptance 1 (rule 110 faithful vs truth-table oracle, T=100): PASS in {elapsed:?}"
    );
}

#[test]
fn criterion_2_game_of_life_oracle_equivalence_bound() {
    let (width, height, iterations) = (16usize, 16usize, 50usize);
    let mut board = ConwayTorus::new(width, height);
    place_glider(&mut board, 1, 1);
    let initial: Vec<u8> = board.cells.clone();
    let oracle = board.trajectory(iterations);

    let virtual_system =
        define_virtual(curb::metamodel::StateDomainKind::IntegerRange, Vocabulary::standard());
    let meta = virtual_system
        .concretize(MetastableParams {
            entity_count: width * height,
            state_domain: int01(),
            topology: TopologySpec::grid(width, height, Neighborhood::Moore, true),
            initial_states: initial.iter().map(|b| StateValue::Int(*b as i64)).collect(),
            rules: RuleAssignment::Shared(game_of_life_source().into()),
            rng_seed: 7,
        })
        .unwrap();
    let mut actual = meta.actualize().unwrap();

    let started = Instant::now();
    let trajectory = actual.run(iterations as u64, ExecutionMode::Bound).unwrap();
    let elapsed = started.elapsed();

    for (iteration, row) in trajectory.rows().iter().enumerate() {
        let got: Vec<u8> = row.iter().map(|v| v.as_numeric() as u8).collect();
        assert_eq!(got, oracle[iteration], "generation {iteration}");
    }
    // The glider translates one cell down-right every four generations.
    for t in (0..=iterations - 4).step_by(4) {
        let shifted = ConwayTorus::shifted(&oracle[t], width, height, 1, 1);
        assert_eq!(oracle[t + 4], shifted, "period-4 translation at t={t}");
    }
    assert!(
        elapsed.as_secs_f64() < 2.0,
        "bound run took {elapsed:?}, budget 2s"
    );
    println!(
        "acceptance 2 (Game of Life bound vs Conway oracle, glider, T=50): PASS in {elapsed:?}"
    );
}

#[test]
fn criterion_3_mode_equivalence_on_random_programs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0DE);
    let mut checked = 0usize;
    let mut successes = 0usize;
    while checked < 1000 {
        let domain = gen_domain(&mut rng);
        let milieu_count = rng.random_range(0..5usize);
        let config = GenConfig::new(domain.clone(), milieu_count);
        let program = gen_program(&mut rng, &config);
        let validated = validate(program, &domain, milieu_count)
            .expect("generator only emits valid programs");
        let (entity, milieu) = gen_bindings(&mut rng, &config);
        let bindings = BindingSet::new(entity, milieu);

        let bound = execute_bound(&validated, &bindings);
        let closed = interpolate(&render(validated.ast()), &bindings)
            .and_then(|closed| execute_closed(&closed, &domain));
        assert_eq!(
            bound, closed,
            "modes disagree on {} with {bindings:?}",
            render(validated.ast())
        );
        successes += usize::from(bound.is_ok());
        checked += 1;
    }
    assert!(
        successes * 2 >= checked,
        "generator should execute cleanly most of the time ({successes}/{checked})"
    );
    println!(
        "acceptance 3 (faithful/bound equivalence on {checked} random pairs, {successes} clean): PASS"
    );
}

fn random_system(rng: &mut ChaCha8Rng) -> MetastableSystem {
    let domain = gen_domain(rng);
    let (entity_count, topology) = match rng.random_range(0..3u8) {
        0 => {
            let n = rng.random_range(2..8usize);
            (n, TopologySpec::ring(rng.random_range(0..3usize)))
        }
        1 => {
            let w = rng.random_range(2..4usize);
            let h = rng.random_range(2..4usize);
            let neighborhood = if rng.random_range(0..2) == 0 {
                Neighborhood::Moore
            } else {
                Neighborhood::VonNeumann
            };
            let wrap = rng.random_range(0..2) == 0;
            (w * h, TopologySpec::grid(w, h, neighborhood, wrap))
        }
        _ => {
            let n = rng.random_range(1..6usize);
            let adjacency = (0..n)
                .map(|_| {
                    (0..rng.random_range(0..3usize))
                        .map(|_| rng.random_range(0..n))
                        .collect()
                })
                .collect();
            (n, TopologySpec::explicit(adjacency))
        }
    };
    let milieus = build_topology(&topology, entity_count).unwrap();
    let milieu_count = milieus.iter().map(|m| m.len()).min().unwrap();
    let config = GenConfig::new(domain.clone(), milieu_count);
    let source = render(&gen_program(rng, &config));
    let shared = rng.random_range(0..2) == 0;
    let rules = if shared {
        RuleAssignment::Shared(source)
    } else {
        RuleAssignment::PerEntity(vec![source; entity_count])
    };
    let values = domain.values();
    let initial_states = (0..entity_count)
        .map(|_| values[rng.random_range(0..values.len())])
        .collect();
    define_virtual(domain.kind(), Vocabulary::standard())
        .concretize(MetastableParams {
            entity_count,
            state_domain: domain,
            topology,
            initial_states,
            rules,
            rng_seed: rng.random(),
        })
        .unwrap()
}

#[test]
fn criterion_4_adaptation_confined_to_rules_and_lineage() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xADAF);
    let policy = MutationPolicy::default();
    let mut calls = 0usize;
    let mut accepted = 0usize;
    while calls < 10_000 {
        let system = random_system(&mut rng);
        let mut counter = IdentifierCounter::new(1000);
        let mut current = system;
        for _ in 0..10 {
            let before = current.clone();
            calls += 1;
            match adapt(&current, &policy, &mut rng, &mut counter) {
                Ok(child) => {
                    assert_eq!(child.virtual_system(), before.virtual_system());
                    assert_eq!(child.entity_count(), before.entity_count());
                    assert_eq!(child.state_domain(), before.state_domain());
                    assert_eq!(child.topology(), before.topology());
                    assert_eq!(child.initial_states(), before.initial_states());
                    assert_eq!(child.rng_seed(), before.rng_seed());
                    assert_eq!(child.rules().is_shared(), before.rules().is_shared());

                    let record = child.lineage().records().last().unwrap();
                    let slot = match record.target {
                        AdaptedTarget::Shared => 0,
                        AdaptedTarget::Entity(index) => index,
                    };
                    let (old_sources, new_sources) =
                        (before.rules().sources(), child.rules().sources());
                    assert_eq!(old_sources.len(), new_sources.len());
                    for index in 0..old_sources.len() {
                        if index == slot {
                            assert_ne!(
                                old_sources[index], new_sources[index],
                                "the adapted slot must change"
                            );
                        } else {
                            assert_eq!(
                                old_sources[index], new_sources[index],
                                "untouched slots must stay bit-identical"
                            );
                        }
                    }
                    assert_eq!(child.lineage().len(), before.lineage().len() + 1);
                    assert_eq!(
                        child.lineage().records()[..before.lineage().len()],
                        before.lineage().records()[..],
                        "earlier lineage records are append-only"
                    );
                    accepted += 1;
                    current = child;
                }
                Err(_) => {
                    assert_eq!(current, before, "a failed adapt leaves the system alone");
                }
            }
        }
    }
    assert!(
        accepted * 2 >= calls,
        "most adaptations should succeed ({accepted}/{calls})"
    );
    println!(
        "acceptance 4 (region restriction over {calls} seeded adaptations, {accepted} accepted): PASS"
    );
}

const FOREIGN_WORDS: &[&str] = &[
    "launchMissiles",
    "system",
    "exec",
    "eval",
    "Emit",
    "LET",
    "entitystate",
    "identifier",
    "identifier1x",
    "identifierX",
    "Identifier3",
    "milieusum",
    "x",
    "foo_bar",
    "@",
    "$",
    "&&",
    "||",
    "::",
    "\"quoted\"",
    "2abc",
    "emit2x",
];

#[test]
fn criterion_5_injection_resistance() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1127);
    let mut rejected = 0usize;
    for _ in 0..1000 {
        let domain = gen_domain(&mut rng);
        let milieu_count = rng.random_range(0..4usize);
        let config = GenConfig::new(domain.clone(), milieu_count);
        let program = gen_program(&mut rng, &config);
        let mut tokens: Vec<String> = render(&program)
            .as_str()
            .split_whitespace()
            .map(str::to_owned)
            .collect();
        let word = FOREIGN_WORDS[rng.random_range(0..FOREIGN_WORDS.len())].to_owned();
        let position = rng.random_range(0..=tokens.len());
        if position < tokens.len() && rng.random_range(0..2) == 0 {
            tokens[position] = word;
        } else {
            tokens.insert(position.min(tokens.len()), word);
        }
        let source = curb::lang::RuleSource::new(tokens.join(" "));

        let lexed = tokenize(&source);
        assert!(
            matches!(
                lexed,
                Err(LangError::VocabularyViolation { .. }) | Err(LangError::MalformedLiteral { .. })
            ),
            "fuzzed source must die in the lexer: {source}"
        );
        // Nothing reaches execution either: the closed-execution front door
        // runs the same lexer.
        assert!(execute_closed(&source, &domain).is_err());
        rejected += 1;
    }
    println!("acceptance 5 (injection resistance, {rejected}/1000 fuzzed sources rejected): PASS");
}

#[test]
fn criterion_6_render_parse_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x2070);
    for index in 0..1000 {
        let domain = gen_domain(&mut rng);
        let milieu_count = rng.random_range(0..5usize);
        let config = GenConfig::new(domain, milieu_count);
        let program = gen_program(&mut rng, &config);
        let text = render(&program);
        let reparsed = parse(&tokenize(&text).unwrap())
            .unwrap_or_else(|e| panic!("round trip {index} failed to parse: {e}\n{text}"));
        assert_eq!(reparsed, program, "round trip {index} changed structure:\n{text}");
    }
    println!("acceptance 6 (render/parse round trip on 1000 random trees): PASS");
}

#[test]
fn criterion_7_byte_identical_reruns_with_adaptation() {
    let config = "[system]\n\
         entities = 64\n\
         state_domain = int 0 1\n\
         topology = ring 1\n\
         iterations = 40\n\
         seed = 3\n\
         mode = faithful\n\
         [init]\n\
         states = impulse 63\n\
         [rules]\n\
         file = rule.curb\n\
         [adaptation]\n\
         schedule = every 10 for 3\n";
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    let spec_a = load_config(write_config(dir_a.path(), config, rule110_source())).unwrap();
    let spec_b = load_config(write_config(dir_b.path(), config, rule110_source())).unwrap();
    let summary_a = run_spec(&spec_a).unwrap();
    let summary_b = run_spec(&spec_b).unwrap();

    let trace_a = fs::read(&summary_a.trace_path).unwrap();
    let trace_b = fs::read(&summary_b.trace_path).unwrap();
    assert_eq!(trace_a, trace_b, "traces must be byte-identical");

    let lineage_a = fs::read(summary_a.lineage_path.as_ref().unwrap()).unwrap();
    let lineage_b = fs::read(summary_b.lineage_path.as_ref().unwrap()).unwrap();
    assert_eq!(lineage_a, lineage_b, "lineages must be byte-identical");

    let lineage = String::from_utf8(lineage_a).unwrap();
    assert_eq!(lineage.lines().count(), 3, "three scheduled events");
    assert_eq!(summary_a.trace_rows, 41);
    println!("acceptance 7 (byte-identical reruns, schedule every 10 for 3): PASS");
}

#[test]
fn criterion_8_emit_discipline() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xE317);
    let mut executed = 0usize;
    let mut clean = 0usize;
    for _ in 0..1000 {
        let domain = gen_domain(&mut rng);
        let milieu_count = rng.random_range(0..5usize);
        let config = GenConfig::new(domain.clone(), milieu_count);
        let program = gen_program(&mut rng, &config);
        let validated = validate(program, &domain, milieu_count).expect("generator soundness");
        let (entity, milieu) = gen_bindings(&mut rng, &config);
        let bindings = BindingSet::new(entity, milieu);
        let mut channel = CaptureChannel::new();
        let result = execute_bound_into(&validated, &bindings, &mut channel);
        executed += 1;
        if result.is_ok() {
            assert_eq!(
                channel.values().len(),
                1,
                "successful executions capture exactly one value"
            );
            clean += 1;
        } else {
            assert!(
                channel.values().len() <= 1,
                "even failing executions never capture twice"
            );
        }
    }
    assert!(clean * 2 >= executed, "mostly clean executions ({clean}/{executed})");

    // Programs whose final statement chain cannot emit die at validation,
    // never at runtime.
    let mut rejected = 0usize;
    for _ in 0..300 {
        let domain = gen_domain(&mut rng);
        let milieu_count = rng.random_range(0..5usize);
        let config = GenConfig::new(domain.clone(), milieu_count);
        let mut program = gen_program(&mut rng, &config);
        program.statements.push(Stmt::Let {
            name: "identifier999".to_owned(),
            value: Expr::MilieuCount,
        });
        match validate(program, &domain, milieu_count) {
            Err(ValidationError::NoEmit) => rejected += 1,
            other => panic!("expected NoEmit, got {other:?}"),
        }
    }
    println!(
        "acceptance 8 (emit discipline: {clean}/{executed} clean single captures, {rejected}/300 emit-less tails rejected): PASS"
    );
}

//! curb — a simulation kernel for networks of entities whose update rules
//! are code-as-data in a restricted, self-modifiable rule language.
//!
//! Systems move through three regimes. A *virtual* system declares only a
//! state-domain kind and the rule vocabulary. *Concretization* binds
//! parameters (entity count, state domain, topology, initial states, rule
//! sources, seed) into a *metastable* system whose rules are still plain
//! text. *Actualization* compiles the rules and instantiates entities; the
//! *actual* system then iterates synchronously: each entity's next state is
//! computed by its rules from its own state and its milieu's states.
//!
//! Self-modification is curbed twice over:
//!
//! * **Region**: adaptation ([`adapt::adapt`]) rewrites exactly one rule
//!   source and appends a lineage record; every other field of the system
//!   is untouched.
//! * **Transitions**: values enter rules only by token-level interpolation
//!   ([`bridge::interpolate`]) and leave only as captured text re-parsed
//!   into a domain-checked state ([`bridge::capture_parse`]). The rule
//!   language itself is loop-free, call-free, and closed over a fixed
//!   vocabulary plus counter-generated `identifier<N>` names, so foreign
//!   code cannot be injected via rule text or identifier names.
//!
//! # Examples
//!
//! Each major capability has a runnable example:
//!
//! ```bash
//! cargo run -p curb --example rule110           # elementary CA, faithful mode
//! cargo run -p curb --example game_of_life      # totalistic CA, bound mode
//! cargo run -p curb --example rule_language     # lexer, parser, validator, renderer
//! cargo run -p curb --example code_data_duality # interpolation and capture, both modes
//! cargo run -p curb --example adaptation        # seeded mutation with lineage
//! cargo run -p curb --example regime_pipeline   # virtual -> metastable -> actual
//! ```
//!
//! A small quickstart:
//!
//! ```
//! use curb::adapt::{adapt, IdentifierCounter, MutationPolicy};
//! use curb::metamodel::{
//!     define_virtual, ExecutionMode, MetastableParams, RuleAssignment, StateDomain,
//!     StateDomainKind, StateValue, TopologySpec,
//! };
//! use curb::lang::Vocabulary;
//!
//! let virtual_system = define_virtual(StateDomainKind::IntegerRange, Vocabulary::standard());
//! let meta = virtual_system
//!     .concretize(MetastableParams {
//!         entity_count: 8,
//!         state_domain: StateDomain::integer_range(0, 1)?,
//!         topology: TopologySpec::ring(1),
//!         initial_states: vec![StateValue::Int(1); 8],
//!         rules: RuleAssignment::Shared("emit milieu [ 0 ] ;".into()),
//!         rng_seed: 7,
//!     })?;
//! let mut actual = meta.actualize()?;
//! let trajectory = actual.run(10, ExecutionMode::Bound)?;
//! assert_eq!(trajectory.len(), 11);
//! # Ok::<(), curb::metamodel::ModelError>(())
//! ```
//!
//! The `curb` binary drives the same pipeline from config files; see the
//! crate README for the file formats.

pub mod adapt;
pub mod bridge;
pub mod harness;
pub mod lang;
pub mod metamodel;

pub use adapt::{adapt as adapt_system, IdentifierCounter, MutationPolicy, RuleLineage};
pub use bridge::{execute_bound, execute_closed, interpolate, BindingSet};
pub use lang::{parse, render, tokenize, validate, RuleProgram, RuleSource, Vocabulary};
pub use metamodel::{
    define_virtual, ActualSystem, ExecutionMode, MetastableParams, MetastableSystem, StateDomain,
    StateValue, TopologySpec, Trajectory, VirtualSystem,
};

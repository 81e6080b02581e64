//! The regime pipeline: virtual, metastable, and actual systems.
//!
//! Regime transitions are one-way and enforced by the type system: a
//! [`VirtualSystem`] concretizes into a [`MetastableSystem`], which
//! actualizes into an [`ActualSystem`]. De-actualization projects an actual
//! system back onto its stored metastable parameters; there is no way to
//! move a system into an earlier regime in place.

use crate::adapt::RuleLineage;
use crate::bridge::{execute_bound, execute_closed, interpolate, BindingSet};
use crate::lang::{compile, RuleProgram, RuleSource, Vocabulary};

use super::domain::{StateDomain, StateDomainKind, StateValue};
use super::error::ModelError;
use super::topology::{build_topology, Milieu, TopologySpec};

/// Concept names declared by the metamodel in the virtual regime.
pub const DECLARED_CONCEPTS: &[&str] = &[
    "entity",
    "state",
    "milieu",
    "update-function",
    "update-rules",
    "adaptation-function",
];

/// How rules execute: textual interpolation plus per-call re-compilation,
/// or direct evaluation of the validated syntax tree. Both produce
/// identical state vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExecutionMode {
    Faithful,
    Bound,
}

/// The most abstract description of a system: a state-domain kind, the rule
/// vocabulary, and the declared concepts. No parameters are bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirtualSystem {
    domain_kind: StateDomainKind,
    vocabulary: &'static Vocabulary,
    concepts: Vec<&'static str>,
}

/// Creates a virtual system. The vocabulary must be the rule-language
/// vocabulary; there is only one, so this is enforced by construction.
pub fn define_virtual(domain_kind: StateDomainKind, vocabulary: &'static Vocabulary) -> VirtualSystem {
    VirtualSystem {
        domain_kind,
        vocabulary,
        concepts: DECLARED_CONCEPTS.to_vec(),
    }
}

impl VirtualSystem {
    pub fn domain_kind(&self) -> StateDomainKind {
        self.domain_kind
    }

    pub fn vocabulary(&self) -> &'static Vocabulary {
        self.vocabulary
    }

    pub fn concepts(&self) -> &[&'static str] {
        &self.concepts
    }

    /// Binds all model parameters, moving the system into the metastable
    /// regime. Rule sources are stored verbatim and are not yet validated.
    pub fn concretize(&self, params: MetastableParams) -> Result<MetastableSystem, ModelError> {
        if params.entity_count == 0 {
            return Err(ModelError::ZeroEntities);
        }
        if params.state_domain.kind() != self.domain_kind {
            return Err(ModelError::DomainKindMismatch {
                domain: params.state_domain.clone(),
            });
        }
        if params.initial_states.len() != params.entity_count {
            return Err(ModelError::CountMismatch {
                what: "initial states",
                expected: params.entity_count,
                found: params.initial_states.len(),
            });
        }
        for (index, value) in params.initial_states.iter().enumerate() {
            if !params.state_domain.contains(value) {
                return Err(ModelError::DomainMismatch {
                    index,
                    value: *value,
                    domain: params.state_domain.clone(),
                });
            }
        }
        match &params.rules {
            RuleAssignment::Shared(_) => {}
            RuleAssignment::PerEntity(sources) => {
                if sources.is_empty() {
                    return Err(ModelError::EmptyRuleSources);
                }
                if sources.len() != params.entity_count {
                    return Err(ModelError::CountMismatch {
                        what: "per-entity rule sources",
                        expected: params.entity_count,
                        found: sources.len(),
                    });
                }
            }
        }
        // Surface topology errors at concretization rather than at
        // actualization; milieus themselves are rebuilt (identically) later.
        build_topology(&params.topology, params.entity_count)?;
        Ok(MetastableSystem {
            virtual_system: self.clone(),
            entity_count: params.entity_count,
            state_domain: params.state_domain,
            topology: params.topology,
            initial_states: params.initial_states,
            rules: params.rules,
            rng_seed: params.rng_seed,
            lineage: RuleLineage::new(),
        })
    }
}

/// Update rules for the whole system: one shared source, or one per entity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleAssignment {
    Shared(RuleSource),
    PerEntity(Vec<RuleSource>),
}

impl RuleAssignment {
    pub fn is_shared(&self) -> bool {
        matches!(self, RuleAssignment::Shared(_))
    }

    /// All distinct source slots (one for shared, n for per-entity).
    pub fn sources(&self) -> &[RuleSource] {
        match self {
            RuleAssignment::Shared(source) => std::slice::from_ref(source),
            RuleAssignment::PerEntity(sources) => sources,
        }
    }

    /// Index into `sources()` for a given entity.
    pub fn slot_for_entity(&self, entity: usize) -> usize {
        match self {
            RuleAssignment::Shared(_) => 0,
            RuleAssignment::PerEntity(_) => entity,
        }
    }

    pub(crate) fn replace_slot(&mut self, slot: usize, source: RuleSource) {
        match self {
            RuleAssignment::Shared(current) => *current = source,
            RuleAssignment::PerEntity(sources) => sources[slot] = source,
        }
    }
}

/// Parameters bound at concretization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetastableParams {
    pub entity_count: usize,
    pub state_domain: StateDomain,
    pub topology: TopologySpec,
    pub initial_states: Vec<StateValue>,
    pub rules: RuleAssignment,
    pub rng_seed: u64,
}

/// A fully parameterized system, not yet executable: the rules are still
/// plain text. Adaptation operates in this regime.
#[derive(Debug, Clone, PartialEq)]
pub struct MetastableSystem {
    virtual_system: VirtualSystem,
    entity_count: usize,
    state_domain: StateDomain,
    topology: TopologySpec,
    initial_states: Vec<StateValue>,
    rules: RuleAssignment,
    rng_seed: u64,
    lineage: RuleLineage,
}

impl MetastableSystem {
    pub fn virtual_system(&self) -> &VirtualSystem {
        &self.virtual_system
    }

    pub fn entity_count(&self) -> usize {
        self.entity_count
    }

    pub fn state_domain(&self) -> &StateDomain {
        &self.state_domain
    }

    pub fn topology(&self) -> &TopologySpec {
        &self.topology
    }

    pub fn initial_states(&self) -> &[StateValue] {
        &self.initial_states
    }

    pub fn rules(&self) -> &RuleAssignment {
        &self.rules
    }

    pub fn rng_seed(&self) -> u64 {
        self.rng_seed
    }

    pub fn lineage(&self) -> &RuleLineage {
        &self.lineage
    }

    /// The milieu size rules are validated against: the smallest milieu of
    /// any entity, so that constant indices are valid everywhere.
    pub fn validation_milieu_count(&self) -> Result<usize, ModelError> {
        let milieus = build_topology(&self.topology, self.entity_count)?;
        Ok(milieus.iter().map(Milieu::len).min().unwrap_or(0))
    }

    pub(crate) fn replace_rule_slot(&mut self, slot: usize, source: RuleSource) {
        self.rules.replace_slot(slot, source);
    }

    pub(crate) fn lineage_mut(&mut self) -> &mut RuleLineage {
        &mut self.lineage
    }

    /// Compiles every rule source and instantiates the entities at the
    /// initial states, moving the system into the actual regime at
    /// iteration 0.
    pub fn actualize(&self) -> Result<ActualSystem, ModelError> {
        self.actualize_from(self.initial_states.clone(), 0)
    }

    /// Actualizes with an explicit starting state vector and iteration
    /// counter. Used to resume a run after an adaptation event.
    pub fn actualize_from(
        &self,
        states: Vec<StateValue>,
        iteration: u64,
    ) -> Result<ActualSystem, ModelError> {
        if states.len() != self.entity_count {
            return Err(ModelError::CountMismatch {
                what: "states",
                expected: self.entity_count,
                found: states.len(),
            });
        }
        for (index, value) in states.iter().enumerate() {
            if !self.state_domain.contains(value) {
                return Err(ModelError::DomainMismatch {
                    index,
                    value: *value,
                    domain: self.state_domain.clone(),
                });
            }
        }
        let milieus = build_topology(&self.topology, self.entity_count)?;
        let milieu_count = milieus.iter().map(Milieu::len).min().unwrap_or(0);
        let programs = self
            .rules
            .sources()
            .iter()
            .map(|source| compile(source, &self.state_domain, milieu_count))
            .collect::<Result<Vec<_>, _>>()?;
        let entities = states
            .iter()
            .zip(milieus)
            .enumerate()
            .map(|(index, (state, milieu))| Entity {
                index,
                state: *state,
                milieu,
                rule_slot: self.rules.slot_for_entity(index),
            })
            .collect();
        Ok(ActualSystem {
            meta: self.clone(),
            entities,
            programs,
            iteration,
        })
    }
}

/// A node of the system network: its state, its milieu, and a reference to
/// its rules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entity {
    index: usize,
    state: StateValue,
    milieu: Milieu,
    rule_slot: usize,
}

impl Entity {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn state(&self) -> StateValue {
        self.state
    }

    pub fn milieu(&self) -> &Milieu {
        &self.milieu
    }

    /// Index into the system's rule sources.
    pub fn rule_slot(&self) -> usize {
        self.rule_slot
    }
}

/// A fully concretized, executable system.
#[derive(Debug, Clone, PartialEq)]
pub struct ActualSystem {
    meta: MetastableSystem,
    entities: Vec<Entity>,
    programs: Vec<RuleProgram>,
    iteration: u64,
}

impl ActualSystem {
    pub fn entities(&self) -> &[Entity] {
        &self.entities
    }

    pub fn programs(&self) -> &[RuleProgram] {
        &self.programs
    }

    pub fn iteration(&self) -> u64 {
        self.iteration
    }

    pub fn state_domain(&self) -> &StateDomain {
        &self.meta.state_domain
    }

    /// The current state vector, one value per entity.
    pub fn states(&self) -> Vec<StateValue> {
        self.entities.iter().map(Entity::state).collect()
    }

    /// Projects the system back onto its metastable parameters (initial
    /// states, not current ones). The projection is pure: it carries the
    /// lineage but forgets entities, compiled programs, and the iteration
    /// counter.
    pub fn deactualize(&self) -> MetastableSystem {
        self.meta.clone()
    }

    /// Advances the whole system by one iteration. The update is
    /// synchronous: every rule reads the pre-step snapshot, so the result
    /// is independent of entity evaluation order.
    pub fn step(&mut self, mode: ExecutionMode) -> Result<(), ModelError> {
        let snapshot = self.states();
        let domain = self.meta.state_domain.clone();
        let mut next = Vec::with_capacity(self.entities.len());
        for entity in &self.entities {
            let milieu_states: Vec<StateValue> = entity
                .milieu
                .neighbors()
                .iter()
                .map(|&n| snapshot[n])
                .collect();
            let bindings = BindingSet::new(snapshot[entity.index], milieu_states);
            let result = match mode {
                ExecutionMode::Faithful => {
                    let source = &self.meta.rules.sources()[entity.rule_slot];
                    interpolate(source, &bindings)
                        .and_then(|closed| execute_closed(&closed, &domain))
                }
                ExecutionMode::Bound => execute_bound(&self.programs[entity.rule_slot], &bindings),
            };
            match result {
                Ok(value) => next.push(value),
                Err(source) => {
                    return Err(ModelError::Step {
                        entity: entity.index,
                        iteration: self.iteration,
                        source,
                    })
                }
            }
        }
        for (entity, value) in self.entities.iter_mut().zip(next) {
            entity.state = value;
        }
        self.iteration += 1;
        Ok(())
    }

    /// Runs `iterations` synchronous steps and records the state vector at
    /// every iteration, including the starting one. A failing step aborts
    /// the run; the error names the failing iteration.
    pub fn run(&mut self, iterations: u64, mode: ExecutionMode) -> Result<Trajectory, ModelError> {
        let mut trajectory = Trajectory::new();
        trajectory.push(self.states());
        for _ in 0..iterations {
            self.step(mode)?;
            trajectory.push(self.states());
        }
        Ok(trajectory)
    }
}

/// State vectors over time: entry `k` is the state vector at iteration `k`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Trajectory {
    rows: Vec<Vec<StateValue>>,
}

impl Trajectory {
    pub fn new() -> Self {
        Trajectory::default()
    }

    pub fn push(&mut self, states: Vec<StateValue>) {
        self.rows.push(states);
    }

    pub fn rows(&self) -> &[Vec<StateValue>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

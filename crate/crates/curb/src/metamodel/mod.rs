//! The system metamodel: entities, states, milieus, regimes, and
//! synchronous iteration.

mod domain;
mod error;
mod system;
mod topology;

pub use domain::{StateDomain, StateDomainKind, StateValue};
pub use error::ModelError;
pub use system::{
    define_virtual, ActualSystem, Entity, ExecutionMode, MetastableParams, MetastableSystem,
    RuleAssignment, Trajectory, VirtualSystem, DECLARED_CONCEPTS,
};
pub use topology::{build_topology, Milieu, Neighborhood, TopologyKind, TopologySpec};

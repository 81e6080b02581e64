//! The adaptation function: type-guided, vocabulary-restricted mutation of
//! update rules — and nothing else.
//!
//! Mutation draws one operator per adaptation, generates replacement
//! material only from the vocabulary, domain literals, and counter-issued
//! `identifier<N>` names, and re-validates every candidate before it is
//! installed. Invalid candidates are redrawn up to a retry budget.

mod engine;
mod error;
mod generate;
mod identifier;
mod lineage;
mod mutate;
mod policy;
mod pool;
mod visit;

pub use engine::adapt;
pub use error::AdaptError;
pub use identifier::IdentifierCounter;
pub use lineage::{source_digest, AdaptedTarget, LineageRecord, RuleLineage};
pub use mutate::{mutate, MutationDescriptor, MutationTarget};
pub use policy::{MutationOperatorKind, MutationPolicy};
pub use pool::{operator_pool, OperatorPool};

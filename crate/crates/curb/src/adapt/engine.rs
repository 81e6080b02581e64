//! The adaptation function: rewrite one rule source, leave everything else
//! untouched.

use rand::Rng;

use crate::lang::{compile, render, RuleSource};
use crate::metamodel::{MetastableSystem, RuleAssignment};

use super::error::AdaptError;
use super::identifier::IdentifierCounter;
use super::lineage::{source_digest, AdaptedTarget, LineageRecord};
use super::mutate::mutate;
use super::policy::MutationPolicy;

/// Performs one adaptation on a metastable system.
///
/// Exactly one rule source is replaced by the rendering of a mutated,
/// re-validated candidate; a lineage record is appended. Every other field
/// of the system is copied bit-identically. Candidates failing validation
/// are redrawn up to the policy's retry budget, after which the call fails
/// and the input system is left as it was.
pub fn adapt<R: Rng>(
    system: &MetastableSystem,
    policy: &MutationPolicy,
    rng: &mut R,
    counter: &mut IdentifierCounter,
) -> Result<MetastableSystem, AdaptError> {
    let (target, slot) = match system.rules() {
        RuleAssignment::Shared(_) => (AdaptedTarget::Shared, 0),
        RuleAssignment::PerEntity(_) => {
            let entity = rng.random_range(0..system.entity_count());
            (AdaptedTarget::Entity(entity), entity)
        }
    };
    let milieu_count = system.validation_milieu_count()?;
    let domain = system.state_domain().clone();
    let parent_source = system.rules().sources()[slot].clone();
    let parent = compile(&parent_source, &domain, milieu_count)?;

    let mut failures = 0;
    while failures < policy.max_retries() {
        let candidate = match mutate(&parent, policy, rng, counter) {
            Ok((candidate, descriptor)) => {
                match crate::lang::validate(candidate, &domain, milieu_count) {
                    Ok(valid) => Some((valid, descriptor)),
                    Err(_) => None,
                }
            }
            Err(AdaptError::NoApplicableOperator) => None,
            Err(other) => return Err(other),
        };
        let Some((valid, descriptor)) = candidate else {
            failures += 1;
            continue;
        };
        let child_source: RuleSource = render(valid.ast());
        let mut child = system.clone();
        child.replace_rule_slot(slot, child_source.clone());
        let record = LineageRecord {
            generation: child.lineage().next_generation(),
            parent_hash: source_digest(&parent_source),
            child_hash: source_digest(&child_source),
            operator: descriptor.operator,
            target,
            seed: system.rng_seed(),
            iteration: None,
            descriptor,
        };
        child.lineage_mut().push(record);
        return Ok(child);
    }
    Err(AdaptError::AdaptationFailed {
        retries: policy.max_retries(),
    })
}

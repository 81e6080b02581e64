//! Seeded self-modification: a chain of adaptations on a shared rule
//! source, with the lineage log and the region-restriction guarantee on
//! display.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use curb::adapt::{adapt, IdentifierCounter, MutationPolicy};
use curb::lang::Vocabulary;
use curb::metamodel::{
    define_virtual, MetastableParams, RuleAssignment, StateDomain, StateDomainKind, StateValue,
    TopologySpec,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut initial = vec![StateValue::Int(0); 16];
    initial[15] = StateValue::Int(1);
    let virtual_system = define_virtual(StateDomainKind::IntegerRange, Vocabulary::standard());
    let meta = virtual_system.concretize(MetastableParams {
        entity_count: 16,
        state_domain: StateDomain::integer_range(0, 1)?,
        topology: TopologySpec::ring(1),
        initial_states: initial,
        rules: RuleAssignment::Shared("emit entityState ;".into()),
        rng_seed: 42,
    })?;

    println!("generation 0:\n{}\n", meta.rules().sources()[0]);

    let policy = MutationPolicy::default();
    let mut rng = ChaCha8Rng::seed_from_u64(meta.rng_seed());
    let mut counter = IdentifierCounter::new(0);
    let mut system = meta;

    for generation in 1..=6 {
        match adapt(&system, &policy, &mut rng, &mut counter) {
            Ok(child) => {
                let record = child.lineage().records().last().unwrap();
                println!("{}", record.log_line());
                println!(
                    "  {} at {:?}: `{}` -> `{}`",
                    record.descriptor.operator,
                    record.descriptor.target,
                    record.descriptor.before,
                    record.descriptor.after
                );
                println!("generation {generation}:\n{}\n", child.rules().sources()[0]);
                // Everything except the rules and the lineage is untouched.
                assert_eq!(child.initial_states(), system.initial_states());
                assert_eq!(child.topology(), system.topology());
                assert_eq!(child.rng_seed(), system.rng_seed());
                system = child;
            }
            Err(error) => println!("generation {generation}: retry exhausted ({error})"),
        }
    }

    println!(
        "lineage holds {} records; every child still actualizes: {}",
        system.lineage().len(),
        system.actualize().is_ok()
    );
    Ok(())
}

//! The three regimes, one-way: a virtual system declares concepts, a
//! metastable system binds parameters, an actual system executes. The only
//! way back is a pure projection onto the stored metastable parameters.

use curb::lang::Vocabulary;
use curb::metamodel::{
    define_virtual, ExecutionMode, MetastableParams, RuleAssignment, StateDomain, StateDomainKind,
    StateValue, TopologySpec,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Virtual: the most abstract description. A state-domain kind, the
    // rule vocabulary, declared concepts. Nothing is bound.
    let virtual_system = define_virtual(StateDomainKind::Boolean, Vocabulary::standard());
    println!("virtual regime:");
    println!("  domain kind: {:?}", virtual_system.domain_kind());
    println!("  concepts:    {}\n", virtual_system.concepts().join(", "));

    // Metastable: parameters bound, rules still plain text, nothing
    // executable yet. This is where adaptation operates.
    let meta = virtual_system.concretize(MetastableParams {
        entity_count: 5,
        state_domain: StateDomain::Boolean,
        topology: TopologySpec::ring(1),
        initial_states: vec![
            StateValue::Bool(true),
            StateValue::Bool(false),
            StateValue::Bool(false),
            StateValue::Bool(true),
            StateValue::Bool(false),
        ],
        // Majority-ish rule: alive iff any neighbor is alive.
        rules: RuleAssignment::Shared("emit milieu [ 0 ] or milieu [ 1 ] ;".into()),
        rng_seed: 1,
    })?;
    println!("metastable regime:");
    println!("  entities:  {}", meta.entity_count());
    println!("  domain:    {}", meta.state_domain());
    println!("  rules (text, not yet compiled): {}\n", meta.rules().sources()[0]);

    // Actual: rules compiled, entities instantiated, iteration counting.
    let mut actual = meta.actualize()?;
    println!("actual regime at iteration {}:", actual.iteration());
    for entity in actual.entities() {
        println!(
            "  entity {}: state={} milieu={:?}",
            entity.index(),
            entity.state(),
            entity.milieu().neighbors()
        );
    }

    let trajectory = actual.run(4, ExecutionMode::Bound)?;
    println!("\nfive iterations (1 = alive):");
    for (iteration, row) in trajectory.rows().iter().enumerate() {
        let bits: Vec<String> = row.iter().map(|v| v.as_numeric().to_string()).collect();
        println!("  t={iteration}: {}", bits.join(" "));
    }

    // De-actualization is a projection onto the stored parameters.
    let projected = actual.deactualize();
    println!(
        "\nde-actualized == original metastable system: {}",
        projected == meta
    );
    Ok(())
}

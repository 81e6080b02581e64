//! Elementary cellular automaton rule 110 on a 64-cell ring, executed in
//! faithful mode: every update interpolates the entity's state values into
//! the rule text, then re-lexes, re-parses, re-validates, and runs the
//! closed source.

use curb::lang::Vocabulary;
use curb::metamodel::{
    define_virtual, ExecutionMode, MetastableParams, RuleAssignment, StateDomain, StateDomainKind,
    StateValue, TopologySpec,
};

const RULE_110: &str = "\
let identifier0 = milieu [ 0 ] * 4 + entityState * 2 + milieu [ 1 ] ;
if identifier0 == 6 or identifier0 == 5 or identifier0 == 3 or identifier0 == 2 or identifier0 == 1 { emit 1 ; }
emit 0 ;";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cells = 64usize;
    let mut initial = vec![StateValue::Int(0); cells];
    initial[cells - 1] = StateValue::Int(1);

    let virtual_system = define_virtual(StateDomainKind::IntegerRange, Vocabulary::standard());
    let meta = virtual_system.concretize(MetastableParams {
        entity_count: cells,
        state_domain: StateDomain::integer_range(0, 1)?,
        topology: TopologySpec::ring(1),
        initial_states: initial,
        rules: RuleAssignment::Shared(RULE_110.into()),
        rng_seed: 42,
    })?;
    let mut actual = meta.actualize()?;

    println!("rule 110, {cells}-cell ring, faithful mode (re-compile per update):\n");
    let trajectory = actual.run(40, ExecutionMode::Faithful)?;
    for row in trajectory.rows() {
        let line: String = row
            .iter()
            .map(|v| if v.as_numeric() == 1 { '#' } else { '.' })
            .collect();
        println!("{line}");
    }
    println!("\n{} iterations, {} entities each", trajectory.len() - 1, cells);
    Ok(())
}

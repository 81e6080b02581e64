//! Conway's Game of Life on a wrapped 16x16 Moore grid, executed in bound
//! mode (direct evaluation of the validated syntax tree). A glider crosses
//! the torus; `milieuSum` expresses the totalistic rule without loops.

use curb::lang::Vocabulary;
use curb::metamodel::{
    define_virtual, ExecutionMode, MetastableParams, Neighborhood, RuleAssignment, StateDomain,
    StateDomainKind, StateValue, TopologySpec,
};

const LIFE: &str = "\
let identifier0 = milieuSum ;
if entityState == 1 and ( identifier0 == 2 or identifier0 == 3 ) { emit 1 ; }
if entityState == 0 and identifier0 == 3 { emit 1 ; }
emit 0 ;";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (width, height) = (16usize, 16usize);
    let mut initial = vec![StateValue::Int(0); width * height];
    for (row, col) in [(1, 2), (2, 3), (3, 1), (3, 2), (3, 3)] {
        initial[row * width + col] = StateValue::Int(1);
    }

    let virtual_system = define_virtual(StateDomainKind::IntegerRange, Vocabulary::standard());
    let meta = virtual_system.concretize(MetastableParams {
        entity_count: width * height,
        state_domain: StateDomain::integer_range(0, 1)?,
        topology: TopologySpec::grid(width, height, Neighborhood::Moore, true),
        initial_states: initial,
        rules: RuleAssignment::Shared(LIFE.into()),
        rng_seed: 7,
    })?;
    let mut actual = meta.actualize()?;
    let trajectory = actual.run(24, ExecutionMode::Bound)?;

    for generation in [0usize, 8, 16, 24] {
        println!("generation {generation}:");
        let row = &trajectory.rows()[generation];
        for r in 0..height {
            let line: String = (0..width)
                .map(|c| {
                    if row[r * width + c].as_numeric() == 1 {
                        'O'
                    } else {
                        '.'
                    }
                })
                .collect();
            println!("  {line}");
        }
        println!();
    }
    println!("the glider translates one cell down-right every 4 generations");
    Ok(())
}

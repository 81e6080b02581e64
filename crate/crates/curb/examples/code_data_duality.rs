//! The two controlled transitions between code and data.
//!
//! Code→data: the rule text is closed over concrete state values by
//! token-level interpolation. Data→code: the closed text is compiled and
//! run; its single emitted value is captured as text and parsed back into
//! a domain-checked state.

use curb::bridge::{
    capture_parse, execute_bound, execute_closed, execute_closed_into, interpolate, BindingSet,
    CaptureChannel,
};
use curb::lang::{compile, RuleSource};
use curb::metamodel::{StateDomain, StateValue};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let domain = StateDomain::integer_range(0, 1)?;
    let source = RuleSource::from(
        "let identifier0 = milieu [ 0 ] * 4 + entityState * 2 + milieu [ 1 ] ;\n\
         if identifier0 == 6 or identifier0 == 5 or identifier0 == 3 or identifier0 == 2 or identifier0 == 1 { emit 1 ; }\n\
         emit 0 ;",
    );
    let bindings = BindingSet::new(
        StateValue::Int(1),
        vec![StateValue::Int(1), StateValue::Int(0)],
    );

    println!("rules as data:\n{source}\n");
    println!(
        "bindings: entityState={}, milieu=[{}, {}], milieuSum={}, milieuCount={}\n",
        bindings.entity_state(),
        bindings.milieu_states()[0],
        bindings.milieu_states()[1],
        bindings.milieu_sum(),
        bindings.milieu_count()
    );

    // Code -> data: close the text over the values.
    let closed = interpolate(&source, &bindings)?;
    println!("closed source (no free references):\n{closed}\n");

    // Data -> code: compile and run the closed text, capture the output.
    let mut channel = CaptureChannel::new();
    let faithful = execute_closed_into(&closed, &domain, &mut channel)?;
    println!("faithful execution captured {:?} -> {faithful}", channel.values());

    // The bound mode evaluates the validated tree directly; same result.
    let program = compile(&source, &domain, 2)?;
    let bound = execute_bound(&program, &bindings)?;
    println!("bound execution -> {bound} (modes agree: {})", faithful == bound);

    // The capture wire format is a single text line.
    println!("\ncapture_parse(\"1\")    -> {:?}", capture_parse("1", &domain));
    println!("capture_parse(\"7\")    -> {:?}", capture_parse("7", &domain).err());
    println!(
        "capture_parse(\"true\") -> {:?}",
        capture_parse("true", &StateDomain::Boolean)
    );

    // Out-of-domain emissions die at the capture boundary.
    let overflow = execute_closed(&"emit 1 + 1 ;".into(), &domain);
    println!("\n`emit 1 + 1 ;` under {domain} -> {:?}", overflow.err());
    Ok(())
}

//! The data→code transition: executing rules and capturing their output.
//!
//! Two modes share one evaluator core:
//!
//! * [`execute_closed`] — the reference semantics. Takes a fully
//!   interpolated source, re-tokenizes, re-parses, re-validates, and
//!   evaluates it, mirroring a per-invocation compile-and-run.
//! * [`execute_bound`] — evaluates a validated syntax tree directly against
//!   a binding set. Faster, supports non-constant milieu indices, and
//!   produces identical results on identical inputs.
//!
//! In both modes the emitted value travels as text through a
//! [`CaptureChannel`] and is re-parsed by [`capture_parse`], so the
//! data→code return transition is exercised on every path.

use std::collections::HashMap;

use crate::lang::{parse, tokenize, RuleProgram, RuleSource, Stmt, TokenClass, UnaryOp};
use crate::lang::{validate, BinaryOp, Expr};
use crate::metamodel::{StateDomain, StateValue};

use super::binding::BindingSet;
use super::capture::{capture_parse, CaptureChannel};
use super::error::{BridgeError, RuleRuntimeError};

/// Fuel per syntax-tree node. Termination is already guaranteed by the
/// loop-free grammar; the budget is defense in depth.
const FUEL_PER_NODE: u64 = 10;

/// Executes a closed rule source (no state or milieu references left)
/// against a domain. The full front end runs on every call.
pub fn execute_closed(
    closed: &RuleSource,
    domain: &StateDomain,
) -> Result<StateValue, BridgeError> {
    let mut channel = CaptureChannel::new();
    execute_closed_into(closed, domain, &mut channel)
}

/// As [`execute_closed`], but captures into a caller-provided channel so
/// the capture discipline is observable.
pub fn execute_closed_into(
    closed: &RuleSource,
    domain: &StateDomain,
    channel: &mut CaptureChannel,
) -> Result<StateValue, BridgeError> {
    let tokens = tokenize(closed)?;
    if let Some(free) = tokens
        .iter()
        .find(|t| matches!(t.class, TokenClass::StateRef | TokenClass::MilieuRef))
    {
        return Err(BridgeError::UnresolvedReference {
            token: free.text.clone(),
        });
    }
    let ast = parse(&tokens)?;
    // A closed source has no milieu accesses, so the milieu size it is
    // validated against is irrelevant.
    let program = validate(ast, domain, 0).map_err(crate::lang::LangError::from)?;
    evaluate(&program, None, channel)
}

/// Executes a validated program directly against a binding set.
pub fn execute_bound(
    program: &RuleProgram,
    bindings: &BindingSet,
) -> Result<StateValue, BridgeError> {
    let mut channel = CaptureChannel::new();
    execute_bound_into(program, bindings, &mut channel)
}

/// As [`execute_bound`], with an observable capture channel.
pub fn execute_bound_into(
    program: &RuleProgram,
    bindings: &BindingSet,
    channel: &mut CaptureChannel,
) -> Result<StateValue, BridgeError> {
    if bindings.milieu_count() != program.milieu_count() {
        return Err(BridgeError::BindingMismatch {
            detail: format!(
                "program validated for milieu of {}, bindings carry {}",
                program.milieu_count(),
                bindings.milieu_count()
            ),
        });
    }
    let domain = program.state_domain();
    if !domain.contains(&bindings.entity_state()) {
        return Err(BridgeError::BindingMismatch {
            detail: format!(
                "entity state {} outside program domain {domain}",
                bindings.entity_state()
            ),
        });
    }
    if let Some(bad) = bindings.milieu_states().iter().find(|v| !domain.contains(v)) {
        return Err(BridgeError::BindingMismatch {
            detail: format!("milieu state {bad} outside program domain {domain}"),
        });
    }
    evaluate(program, Some(bindings), channel)
}

/// Runs a validated program to its first emit and parses the captured
/// value.
fn evaluate(
    program: &RuleProgram,
    bindings: Option<&BindingSet>,
    channel: &mut CaptureChannel,
) -> Result<StateValue, BridgeError> {
    let budget = FUEL_PER_NODE * program.node_count() as u64;
    let mut machine = Evaluator {
        bindings,
        fuel: budget,
        budget,
        scopes: vec![HashMap::new()],
    };
    let outcome = machine.run_sequence(&program.ast().statements, channel)?;
    match outcome {
        Flow::Emitted => {
            let raw = channel.single()?;
            capture_parse(raw, program.state_domain())
        }
        Flow::Completed => Err(BridgeError::NoEmitExecuted),
    }
}

/// Runtime values. Validation guarantees every operator sees the types it
/// expects; the `expect_*` helpers stay as a backstop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Value {
    Int(i64),
    Bool(bool),
}

impl Value {
    fn from_state(state: StateValue) -> Self {
        match state {
            StateValue::Bool(v) => Value::Bool(v),
            StateValue::Int(v) => Value::Int(v),
        }
    }

    fn wire_text(self) -> String {
        match self {
            Value::Bool(v) => v.to_string(),
            Value::Int(v) => v.to_string(),
        }
    }

    fn expect_int(self) -> Result<i64, BridgeError> {
        match self {
            Value::Int(v) => Ok(v),
            Value::Bool(_) => Err(RuleRuntimeError::Internal("expected integer value").into()),
        }
    }

    fn expect_bool(self) -> Result<bool, BridgeError> {
        match self {
            Value::Bool(v) => Ok(v),
            Value::Int(_) => Err(RuleRuntimeError::Internal("expected boolean value").into()),
        }
    }
}

#[derive(Debug)]
enum Flow {
    /// An emit fired; execution stops.
    Emitted,
    /// The sequence ran out of statements without emitting.
    Completed,
}

struct Evaluator<'a> {
    bindings: Option<&'a BindingSet>,
    fuel: u64,
    budget: u64,
    scopes: Vec<HashMap<String, Value>>,
}

impl<'a> Evaluator<'a> {
    fn burn(&mut self) -> Result<(), BridgeError> {
        if self.fuel == 0 {
            return Err(RuleRuntimeError::FuelExhausted {
                budget: self.budget,
            }
            .into());
        }
        self.fuel -= 1;
        Ok(())
    }

    fn bindings(&self) -> Result<&'a BindingSet, BridgeError> {
        self.bindings.ok_or_else(|| BridgeError::UnresolvedReference {
            token: "entityState".to_owned(),
        })
    }

    fn run_sequence(
        &mut self,
        statements: &[Stmt],
        channel: &mut CaptureChannel,
    ) -> Result<Flow, BridgeError> {
        for statement in statements {
            if let Flow::Emitted = self.run_statement(statement, channel)? {
                return Ok(Flow::Emitted);
            }
        }
        Ok(Flow::Completed)
    }

    fn run_statement(
        &mut self,
        statement: &Stmt,
        channel: &mut CaptureChannel,
    ) -> Result<Flow, BridgeError> {
        self.burn()?;
        match statement {
            Stmt::Let { name, value } => {
                let value = self.eval(value)?;
                self.scopes
                    .last_mut()
                    .expect("scope stack never empty")
                    .insert(name.clone(), value);
                Ok(Flow::Completed)
            }
            Stmt::If {
                condition,
                then_branch,
                else_branch,
            } => {
                let taken = self.eval(condition)?.expect_bool()?;
                let branch = if taken {
                    Some(then_branch)
                } else {
                    else_branch.as_ref()
                };
                match branch {
                    Some(statements) => {
                        self.scopes.push(HashMap::new());
                        let flow = self.run_sequence(statements, channel);
                        self.scopes.pop();
                        flow
                    }
                    None => Ok(Flow::Completed),
                }
            }
            Stmt::Emit(value) => {
                let value = self.eval(value)?;
                channel.push(value.wire_text());
                Ok(Flow::Emitted)
            }
        }
    }

    fn eval(&mut self, expr: &Expr) -> Result<Value, BridgeError> {
        self.burn()?;
        match expr {
            Expr::Int(v) => Ok(Value::Int(*v)),
            Expr::Bool(v) => Ok(Value::Bool(*v)),
            Expr::EntityState => Ok(Value::from_state(self.bindings()?.entity_state())),
            Expr::MilieuSum => Ok(Value::Int(self.bindings()?.milieu_sum())),
            Expr::MilieuCount => Ok(Value::Int(self.bindings()?.milieu_count() as i64)),
            Expr::Milieu(index) => {
                let index = self.eval(index)?.expect_int()?;
                let milieu = self.bindings()?.milieu_states();
                if index < 0 {
                    return Err(RuleRuntimeError::NegativeMilieuIndex { index }.into());
                }
                if index as usize >= milieu.len() {
                    return Err(BridgeError::MilieuIndexOutOfRange {
                        index,
                        milieu_count: milieu.len(),
                    });
                }
                Ok(Value::from_state(milieu[index as usize]))
            }
            Expr::Ident(name) => self
                .scopes
                .iter()
                .rev()
                .find_map(|scope| scope.get(name))
                .copied()
                .ok_or_else(|| RuleRuntimeError::Internal("unbound identifier").into()),
            Expr::Unary(op, operand) => match op {
                UnaryOp::Not => Ok(Value::Bool(!self.eval(operand)?.expect_bool()?)),
                UnaryOp::Neg => {
                    let value = self.eval(operand)?.expect_int()?;
                    value
                        .checked_neg()
                        .map(Value::Int)
                        .ok_or_else(|| RuleRuntimeError::ArithmeticOverflow.into())
                }
            },
            Expr::Binary(op, lhs, rhs) => self.eval_binary(*op, lhs, rhs),
        }
    }

    fn eval_binary(&mut self, op: BinaryOp, lhs: &Expr, rhs: &Expr) -> Result<Value, BridgeError> {
        // `or` and `and` short-circuit; everything else is strict.
        match op {
            BinaryOp::Or => {
                if self.eval(lhs)?.expect_bool()? {
                    return Ok(Value::Bool(true));
                }
                return Ok(Value::Bool(self.eval(rhs)?.expect_bool()?));
            }
            BinaryOp::And => {
                if !self.eval(lhs)?.expect_bool()? {
                    return Ok(Value::Bool(false));
                }
                return Ok(Value::Bool(self.eval(rhs)?.expect_bool()?));
            }
            _ => {}
        }
        let lhs = self.eval(lhs)?;
        let rhs = self.eval(rhs)?;
        match op {
            BinaryOp::Or | BinaryOp::And => unreachable!("handled above"),
            BinaryOp::Eq => Ok(Value::Bool(lhs == rhs)),
            BinaryOp::Ne => Ok(Value::Bool(lhs != rhs)),
            BinaryOp::Lt => Ok(Value::Bool(lhs.expect_int()? < rhs.expect_int()?)),
            BinaryOp::Le => Ok(Value::Bool(lhs.expect_int()? <= rhs.expect_int()?)),
            BinaryOp::Gt => Ok(Value::Bool(lhs.expect_int()? > rhs.expect_int()?)),
            BinaryOp::Ge => Ok(Value::Bool(lhs.expect_int()? >= rhs.expect_int()?)),
            BinaryOp::Add => checked(lhs.expect_int()?.checked_add(rhs.expect_int()?)),
            BinaryOp::Sub => checked(lhs.expect_int()?.checked_sub(rhs.expect_int()?)),
            BinaryOp::Mul => checked(lhs.expect_int()?.checked_mul(rhs.expect_int()?)),
            BinaryOp::Div => {
                let (a, b) = (lhs.expect_int()?, rhs.expect_int()?);
                if b == 0 {
                    return Err(RuleRuntimeError::DivisionByZero.into());
                }
                checked(a.checked_div(b))
            }
            BinaryOp::Mod => {
                let (a, b) = (lhs.expect_int()?, rhs.expect_int()?);
                if b == 0 {
                    return Err(RuleRuntimeError::DivisionByZero.into());
                }
                checked(a.checked_rem(b))
            }
        }
    }
}

fn checked(value: Option<i64>) -> Result<Value, BridgeError> {
    value
        .map(Value::Int)
        .ok_or_else(|| RuleRuntimeError::ArithmeticOverflow.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::compile;

    fn int01() -> StateDomain {
        StateDomain::integer_range(0, 1).unwrap()
    }

    fn int_bindings(entity: i64, milieu: &[i64]) -> BindingSet {
        BindingSet::new(
            StateValue::Int(entity),
            milieu.iter().copied().map(StateValue::Int).collect(),
        )
    }

    #[test]
    fn closed_constant_emission() {
        let value = execute_closed(&"emit 1 ;".into(), &int01()).unwrap();
        assert_eq!(value, StateValue::Int(1));
    }

    #[test]
    fn closed_out_of_domain_emission() {
        let err = execute_closed(&"emit 1 + 1 ;".into(), &int01()).unwrap_err();
        assert!(matches!(err, BridgeError::EmittedValueOutOfDomain { .. }));
    }

    #[test]
    fn first_emit_wins() {
        let value =
            execute_closed(&"if 1 == 1 { emit 0 ; } emit 1 ;".into(), &int01()).unwrap();
        assert_eq!(value, StateValue::Int(0));
    }

    #[test]
    fn closed_sources_may_not_contain_references() {
        let err = execute_closed(&"emit entityState ;".into(), &int01()).unwrap_err();
        assert!(matches!(
            err,
            BridgeError::UnresolvedReference { token } if token == "entityState"
        ));
    }

    #[test]
    fn exactly_one_value_is_captured() {
        let mut channel = CaptureChannel::new();
        execute_closed_into(
            &"if 1 == 1 { emit 0 ; } emit 1 ;".into(),
            &int01(),
            &mut channel,
        )
        .unwrap();
        assert_eq!(channel.values(), ["0"]);
    }

    #[test]
    fn bound_rule_110_neighborhood() {
        // Left neighbor 1, own state 1, right neighbor 0: pattern 110 of
        // rule 110 maps to 1.
        let source = "let identifier0 = milieu [ 0 ] * 4 + entityState * 2 + milieu [ 1 ] ;\n\
             if identifier0 == 6 or identifier0 == 5 or identifier0 == 3 or identifier0 == 2 or identifier0 == 1 { emit 1 ; }\n\
             emit 0 ;";
        let program = compile(&source.into(), &int01(), 2).unwrap();
        let value = execute_bound(&program, &int_bindings(1, &[1, 0])).unwrap();
        assert_eq!(value, StateValue::Int(1));
    }

    #[test]
    fn bound_conway_birth() {
        let source = "if entityState == 1 and ( milieuSum == 2 or milieuSum == 3 ) { emit 1 ; }\n\
             if entityState == 0 and milieuSum == 3 { emit 1 ; }\n\
             emit 0 ;";
        let program = compile(&source.into(), &int01(), 8).unwrap();
        let dead_with_three = int_bindings(0, &[1, 1, 1, 0, 0, 0, 0, 0]);
        assert_eq!(
            execute_bound(&program, &dead_with_three).unwrap(),
            StateValue::Int(1)
        );
        let dead_with_two = int_bindings(0, &[1, 1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(
            execute_bound(&program, &dead_with_two).unwrap(),
            StateValue::Int(0)
        );
    }

    #[test]
    fn bound_boolean_identity() {
        let program = compile(&"emit entityState ;".into(), &StateDomain::Boolean, 0).unwrap();
        let bindings = BindingSet::new(StateValue::Bool(false), vec![]);
        assert_eq!(
            execute_bound(&program, &bindings).unwrap(),
            StateValue::Bool(false)
        );
    }

    #[test]
    fn bound_supports_dynamic_milieu_indices() {
        let program = compile(
            &"emit milieu [ milieuCount - 1 ] ;".into(),
            &int01(),
            3,
        )
        .unwrap();
        assert_eq!(
            execute_bound(&program, &int_bindings(0, &[0, 0, 1])).unwrap(),
            StateValue::Int(1)
        );
    }

    #[test]
    fn dynamic_index_bounds_are_runtime_errors() {
        let program = compile(&"emit milieu [ milieuCount ] ;".into(), &int01(), 2).unwrap();
        let err = execute_bound(&program, &int_bindings(0, &[0, 1])).unwrap_err();
        assert!(matches!(
            err,
            BridgeError::MilieuIndexOutOfRange {
                index: 2,
                milieu_count: 2
            }
        ));
    }

    #[test]
    fn negative_dynamic_index_is_reported() {
        let program = compile(&"emit milieu [ 0 - 1 ] ;".into(), &int01(), 2).unwrap();
        let err = execute_bound(&program, &int_bindings(0, &[0, 1])).unwrap_err();
        assert!(matches!(
            err,
            BridgeError::Runtime(RuleRuntimeError::NegativeMilieuIndex { index: -1 })
        ));
    }

    #[test]
    fn division_by_zero_is_a_runtime_error() {
        let program = compile(&"emit entityState / milieu [ 0 ] ;".into(), &int01(), 1).unwrap();
        let err = execute_bound(&program, &int_bindings(1, &[0])).unwrap_err();
        assert!(matches!(
            err,
            BridgeError::Runtime(RuleRuntimeError::DivisionByZero)
        ));
    }

    #[test]
    fn short_circuit_skips_the_right_operand() {
        // 1/0 on the right of a decided `or` must not fire.
        let source = "if 1 == 1 or 1 / 0 == 1 { emit 1 ; } emit 0 ;";
        let program = compile(&source.into(), &int01(), 0).unwrap();
        let bindings = int_bindings(0, &[]);
        assert_eq!(execute_bound(&program, &bindings).unwrap(), StateValue::Int(1));
    }

    #[test]
    fn binding_mismatch_is_rejected() {
        let program = compile(&"emit entityState ;".into(), &int01(), 2).unwrap();
        let err = execute_bound(&program, &int_bindings(0, &[0])).unwrap_err();
        assert!(matches!(err, BridgeError::BindingMismatch { .. }));
    }

    #[test]
    fn evaluation_cost_is_bounded_by_node_count() {
        // The budget is 10x node count; a straight-line program consumes
        // at most one fuel per node, so a fraction of the budget remains.
        let source = "let identifier0 = milieuSum + milieuCount ;\n\
             if identifier0 > 1 { emit 1 ; } else { emit entityState ; }";
        let program = compile(&source.into(), &int01(), 2).unwrap();
        let mut channel = CaptureChannel::new();
        let budget = FUEL_PER_NODE * program.node_count() as u64;
        let mut machine = Evaluator {
            bindings: Some(&int_bindings(0, &[1, 1])),
            fuel: budget,
            budget,
            scopes: vec![HashMap::new()],
        };
        machine
            .run_sequence(&program.ast().statements, &mut channel)
            .unwrap();
        let consumed = budget - machine.fuel;
        assert!(consumed <= program.node_count() as u64);
    }

    #[test]
    fn fuel_exhaustion_is_reported() {
        let program = compile(&"emit milieuSum + milieuCount ;".into(), &int01(), 2).unwrap();
        let mut channel = CaptureChannel::new();
        let bindings = int_bindings(0, &[0, 0]);
        let mut machine = Evaluator {
            bindings: Some(&bindings),
            fuel: 2,
            budget: 2,
            scopes: vec![HashMap::new()],
        };
        let err = machine
            .run_sequence(&program.ast().statements, &mut channel)
            .unwrap_err();
        assert!(matches!(
            err,
            BridgeError::Runtime(RuleRuntimeError::FuelExhausted { budget: 2 })
        ));
    }
}

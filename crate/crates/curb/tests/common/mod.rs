//! Shared test support: independent cellular-automaton oracles and a
//! self-contained random program generator.
//!
//! Everything here is deliberately written against the problem definition,
//! not against the library: the oracles update plain arrays via direct
//! table lookups and neighbor counting, and the generator assembles syntax
//! trees with its own typing discipline.

#![allow(dead_code)]

use rand::Rng;

use curb::lang::{BinaryOp, Expr, Program, Stmt, UnaryOp};
use curb::metamodel::{StateDomain, StateValue};

/// Elementary cellular automaton on a ring, driven by the 8-entry truth
/// table of a Wolfram rule number.
pub struct ElementaryCa {
    table: [u8; 8],
    pub cells: Vec<u8>,
}

impl ElementaryCa {
    pub fn new(rule: u8, cells: Vec<u8>) -> Self {
        let mut table = [0u8; 8];
        for (pattern, entry) in table.iter_mut().enumerate() {
            *entry = (rule >> pattern) & 1;
        }
        ElementaryCa { table, cells }
    }

    pub fn step(&mut self) {
        let n = self.cells.len();
        let mut next = vec![0u8; n];
        for i in 0..n {
            let left = self.cells[(i + n - 1) % n];
            let center = self.cells[i];
            let right = self.cells[(i + 1) % n];
            let pattern = (left << 2) | (center << 1) | right;
            next[i] = self.table[pattern as usize];
        }
        self.cells = next;
    }

    /// All state vectors from iteration 0 through `iterations`.
    pub fn trajectory(rule: u8, cells: Vec<u8>, iterations: usize) -> Vec<Vec<u8>> {
        let mut ca = ElementaryCa::new(rule, cells);
        let mut rows = vec![ca.cells.clone()];
        for _ in 0..iterations {
            ca.step();
            rows.push(ca.cells.clone());
        }
        rows
    }
}

/// Conway's Game of Life on a wrapped grid, by direct neighbor counting.
pub struct ConwayTorus {
    pub width: usize,
    pub height: usize,
    pub cells: Vec<u8>,
}

impl ConwayTorus {
    pub fn new(width: usize, height: usize) -> Self {
        ConwayTorus {
            width,
            height,
            cells: vec![0; width * height],
        }
    }

    pub fn set(&mut self, row: usize, col: usize) {
        self.cells[row * self.width + col] = 1;
    }

    pub fn step(&mut self) {
        let (w, h) = (self.width as i64, self.height as i64);
        let mut next = vec![0u8; self.cells.len()];
        for row in 0..h {
            for col in 0..w {
                let mut alive = 0;
                for dr in -1..=1i64 {
                    for dc in -1..=1i64 {
                        if dr == 0 && dc == 0 {
                            continue;
                        }
                        let r = (row + dr).rem_euclid(h) as usize;
                        let c = (col + dc).rem_euclid(w) as usize;
                        alive += self.cells[r * self.width + c];
                    }
                }
                let index = (row * w + col) as usize;
                next[index] = match (self.cells[index], alive) {
                    (1, 2) | (1, 3) => 1,
                    (0, 3) => 1,
                    _ => 0,
                };
            }
        }
        self.cells = next;
    }

    pub fn trajectory(mut self, iterations: usize) -> Vec<Vec<u8>> {
        let mut rows = vec![self.cells.clone()];
        for _ in 0..iterations {
            self.step();
            rows.push(self.cells.clone());
        }
        rows
    }

    /// The same grid translated by (dr, dc) with wraparound.
    pub fn shifted(cells: &[u8], width: usize, height: usize, dr: usize, dc: usize) -> Vec<u8> {
        let mut out = vec![0u8; cells.len()];
        for row in 0..height {
            for col in 0..width {
                let nr = (row + dr) % height;
                let nc = (col + dc) % width;
                out[nr * width + nc] = cells[row * width + col];
            }
        }
        out
    }
}

/// The canonical glider, northwest corner at (row, col), traveling
/// down-right one cell every four generations.
pub fn place_glider(board: &mut ConwayTorus, row: usize, col: usize) {
    board.set(row, col + 1);
    board.set(row + 1, col + 2);
    board.set(row + 2, col);
    board.set(row + 2, col + 1);
    board.set(row + 2, col + 2);
}

/// The update rules used by the acceptance systems, written in the rule
/// language.
pub fn rule110_source() -> &'static str {
    "let identifier0 = milieu [ 0 ] * 4 + entityState * 2 + milieu [ 1 ] ;\n\
     if identifier0 == 6 or identifier0 == 5 or identifier0 == 3 or identifier0 == 2 or identifier0 == 1 { emit 1 ; }\n\
     emit 0 ;"
}

pub fn game_of_life_source() -> &'static str {
    "let identifier0 = milieuSum ;\n\
     if entityState == 1 and ( identifier0 == 2 or identifier0 == 3 ) { emit 1 ; }\n\
     if entityState == 0 and identifier0 == 3 { emit 1 ; }\n\
     emit 0 ;"
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum GenTy {
    Int,
    Bool,
}

/// Tuning knobs for the random program generator.
#[derive(Debug, Clone)]
pub struct GenConfig {
    pub domain: StateDomain,
    pub milieu_count: usize,
    pub max_statements: usize,
    pub max_depth: usize,
}

impl GenConfig {
    pub fn new(domain: StateDomain, milieu_count: usize) -> Self {
        GenConfig {
            domain,
            milieu_count,
            max_statements: 4,
            max_depth: 3,
        }
    }

    fn domain_ty(&self) -> GenTy {
        match self.domain {
            StateDomain::Boolean => GenTy::Bool,
            StateDomain::IntegerRange { .. } => GenTy::Int,
        }
    }
}

struct GenState {
    scope: Vec<(String, GenTy)>,
    next_ident: u64,
}

/// Generates a program that passes `validate` for the config's domain and
/// milieu count: identifiers are counter-named and let-bound before use,
/// expressions are fully typed, milieu indices are literal and in range,
/// and the final statement emits on every path.
pub fn gen_program<R: Rng>(rng: &mut R, config: &GenConfig) -> Program {
    let mut state = GenState {
        scope: Vec::new(),
        next_ident: 0,
    };
    let mut statements = Vec::new();
    let body = rng.random_range(0..config.max_statements);
    for _ in 0..body {
        statements.push(gen_body_stmt(rng, config, &mut state, 1));
    }
    statements.push(gen_emitting_stmt(rng, config, &mut state, 1));
    Program { statements }
}

fn gen_body_stmt<R: Rng>(
    rng: &mut R,
    config: &GenConfig,
    state: &mut GenState,
    depth: usize,
) -> Stmt {
    match rng.random_range(0..3u8) {
        0 => {
            let ty = if rng.random_range(0..2) == 0 {
                GenTy::Int
            } else {
                GenTy::Bool
            };
            let value = gen_expr(rng, config, state, ty, config.max_depth);
            let name = format!("identifier{}", state.next_ident);
            state.next_ident += 1;
            state.scope.push((name.clone(), ty));
            Stmt::Let { name, value }
        }
        1 if depth < 3 => {
            let condition = gen_expr(rng, config, state, GenTy::Bool, config.max_depth);
            // Block-scoped: bindings made inside must not leak out.
            let outer = state.scope.len();
            let then_branch = vec![gen_body_stmt(rng, config, state, depth + 1)];
            state.scope.truncate(outer);
            Stmt::If {
                condition,
                then_branch,
                else_branch: None,
            }
        }
        _ => Stmt::Emit(gen_expr(
            rng,
            config,
            state,
            config.domain_ty(),
            config.max_depth,
        )),
    }
}

/// A statement that emits on every path: an emit, or an if/else whose
/// branches both do.
fn gen_emitting_stmt<R: Rng>(
    rng: &mut R,
    config: &GenConfig,
    state: &mut GenState,
    depth: usize,
) -> Stmt {
    if depth < 3 && rng.random_range(0..4u8) == 0 {
        let condition = gen_expr(rng, config, state, GenTy::Bool, config.max_depth);
        let outer = state.scope.len();
        let then_branch = vec![gen_emitting_stmt(rng, config, state, depth + 1)];
        state.scope.truncate(outer);
        let else_branch = vec![gen_emitting_stmt(rng, config, state, depth + 1)];
        state.scope.truncate(outer);
        Stmt::If {
            condition,
            then_branch,
            else_branch: Some(else_branch),
        }
    } else {
        Stmt::Emit(gen_expr(
            rng,
            config,
            state,
            config.domain_ty(),
            config.max_depth,
        ))
    }
}

fn domain_literal<R: Rng>(rng: &mut R, domain: &StateDomain) -> Expr {
    let values = domain.values();
    match values[rng.random_range(0..values.len())] {
        StateValue::Bool(v) => Expr::Bool(v),
        StateValue::Int(v) if v < 0 => Expr::Unary(UnaryOp::Neg, Box::new(Expr::Int(-v))),
        StateValue::Int(v) => Expr::Int(v),
    }
}

fn gen_expr<R: Rng>(
    rng: &mut R,
    config: &GenConfig,
    state: &GenState,
    ty: GenTy,
    depth: usize,
) -> Expr {
    if depth == 0 {
        return gen_atom(rng, config, state, ty);
    }
    match ty {
        GenTy::Int => match rng.random_range(0..4u8) {
            0 => gen_atom(rng, config, state, ty),
            1 => Expr::Unary(
                UnaryOp::Neg,
                Box::new(gen_expr(rng, config, state, GenTy::Int, depth - 1)),
            ),
            _ => {
                let ops = [
                    BinaryOp::Add,
                    BinaryOp::Sub,
                    BinaryOp::Mul,
                    BinaryOp::Div,
                    BinaryOp::Mod,
                ];
                let op = ops[rng.random_range(0..ops.len())];
                Expr::Binary(
                    op,
                    Box::new(gen_expr(rng, config, state, GenTy::Int, depth - 1)),
                    Box::new(gen_expr(rng, config, state, GenTy::Int, depth - 1)),
                )
            }
        },
        GenTy::Bool => match rng.random_range(0..5u8) {
            0 => gen_atom(rng, config, state, ty),
            1 => Expr::Unary(
                UnaryOp::Not,
                Box::new(gen_expr(rng, config, state, GenTy::Bool, depth - 1)),
            ),
            2 => {
                let op = if rng.random_range(0..2) == 0 {
                    BinaryOp::And
                } else {
                    BinaryOp::Or
                };
                Expr::Binary(
                    op,
                    Box::new(gen_expr(rng, config, state, GenTy::Bool, depth - 1)),
                    Box::new(gen_expr(rng, config, state, GenTy::Bool, depth - 1)),
                )
            }
            3 => {
                let ops = [
                    BinaryOp::Lt,
                    BinaryOp::Le,
                    BinaryOp::Gt,
                    BinaryOp::Ge,
                    BinaryOp::Eq,
                    BinaryOp::Ne,
                ];
                let op = ops[rng.random_range(0..ops.len())];
                Expr::Binary(
                    op,
                    Box::new(gen_expr(rng, config, state, GenTy::Int, depth - 1)),
                    Box::new(gen_expr(rng, config, state, GenTy::Int, depth - 1)),
                )
            }
            _ => {
                let op = if rng.random_range(0..2) == 0 {
                    BinaryOp::Eq
                } else {
                    BinaryOp::Ne
                };
                let atom_ty = config.domain_ty();
                Expr::Binary(
                    op,
                    Box::new(gen_atom(rng, config, state, atom_ty)),
                    Box::new(gen_atom(rng, config, state, atom_ty)),
                )
            }
        },
    }
}

fn gen_atom<R: Rng>(rng: &mut R, config: &GenConfig, state: &GenState, ty: GenTy) -> Expr {
    let mut pool: Vec<Expr> = Vec::new();
    let domain_ty = config.domain_ty();
    match ty {
        GenTy::Int => {
            pool.push(domain_literal_int(rng, config));
            pool.push(Expr::MilieuSum);
            pool.push(Expr::MilieuCount);
            if domain_ty == GenTy::Int {
                pool.push(Expr::EntityState);
                if config.milieu_count > 0 {
                    pool.push(Expr::Milieu(Box::new(Expr::Int(
                        rng.random_range(0..config.milieu_count) as i64,
                    ))));
                }
            }
        }
        GenTy::Bool => {
            pool.push(Expr::Bool(rng.random_range(0..2) == 0));
            if domain_ty == GenTy::Bool {
                pool.push(Expr::EntityState);
                if config.milieu_count > 0 {
                    pool.push(Expr::Milieu(Box::new(Expr::Int(
                        rng.random_range(0..config.milieu_count) as i64,
                    ))));
                }
            }
        }
    }
    let idents: Vec<&(String, GenTy)> = state
        .scope
        .iter()
        .filter(|(_, t)| *t == ty)
        .collect();
    if !idents.is_empty() {
        let (name, _) = idents[rng.random_range(0..idents.len())];
        pool.push(Expr::Ident(name.clone()));
    }
    pool.swap_remove(rng.random_range(0..pool.len()))
}

/// Integer literal for a value position: in-domain when the domain is an
/// integer range, a small milieu-ish count otherwise.
fn domain_literal_int<R: Rng>(rng: &mut R, config: &GenConfig) -> Expr {
    match config.domain {
        StateDomain::IntegerRange { .. } => domain_literal(rng, &config.domain),
        StateDomain::Boolean => Expr::Int(rng.random_range(0..=config.milieu_count as i64)),
    }
}

/// A random binding set matching the config's domain and milieu size.
pub fn gen_bindings<R: Rng>(rng: &mut R, config: &GenConfig) -> (StateValue, Vec<StateValue>) {
    let values = config.domain.values();
    let entity = values[rng.random_range(0..values.len())];
    let milieu = (0..config.milieu_count)
        .map(|_| values[rng.random_range(0..values.len())])
        .collect();
    (entity, milieu)
}

/// A random small state domain.
pub fn gen_domain<R: Rng>(rng: &mut R) -> StateDomain {
    match rng.random_range(0..3u8) {
        0 => StateDomain::Boolean,
        1 => StateDomain::integer_range(0, 1).unwrap(),
        _ => {
            let lo = rng.random_range(-2..=0);
            let hi = lo + rng.random_range(1..=4);
            StateDomain::integer_range(lo, hi).unwrap()
        }
    }
}

//! Controlled transitions between code and data.
//!
//! Rules live as text. Before execution their free references are closed
//! over concrete state values (code→data); after execution the emitted
//! value is captured as text and parsed back into the running program
//! (data→code). Rules can read nothing but their bindings and write
//! nothing but their capture channel.

mod binding;
mod capture;
mod error;
mod eval;
mod interpolate;

pub use binding::BindingSet;
pub use capture::{capture_parse, CaptureChannel};
pub use error::{BridgeError, RuleRuntimeError};
pub use eval::{execute_bound, execute_bound_into, execute_closed, execute_closed_into};
pub use interpolate::interpolate;

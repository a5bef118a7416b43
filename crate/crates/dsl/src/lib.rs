//! A small declarative language for functor-category computations, and the
//! machinery behind the `funcat` command.
//!
//! A document is a list of declarations separated by new lines or `;`:
//! rings, modules, morphisms, finite categories, diagrams, diagram
//! morphisms, functors, short exact sequences, morphisms of sequences and
//! tasks. Every name must be declared before it is used.

pub mod ast;
pub mod diag;
pub mod eval;
pub mod lexer;
pub mod limits;
pub mod parser;
pub mod printer;
pub mod report;
pub mod resolve;
pub mod run;

pub use ast::Doc;
pub use diag::{Diagnostic, Span};
pub use eval::{elaborate, Workbench};
pub use printer::print;
pub use report::{Report, Status};
pub use run::{run, RunOptions};

/// Parses and resolves names. Unresolved or duplicate names and badly
/// typed task arguments are reported with their positions.
pub fn parse(src: &str) -> Result<Doc, Vec<Diagnostic>> {
    let doc = parser::parse_syntax(src)?;
    resolve::resolve(&doc)?;
    Ok(doc)
}

/// Parses and builds every declaration, running all validators.
pub fn check(src: &str) -> Result<Workbench, Vec<Diagnostic>> {
    elaborate(&parse(src)?)
}

//! Concrete syntax, abstract syntax, well-formedness and flattening.

mod ast;
mod flatten;
mod guard;
pub(crate) mod lexer;
mod parser;
mod printer;
mod signature;
mod wellformed;

pub use ast::{is_reduced, Ast, ConcreteModel, StateNode, Stereotype, Transition};
pub use flatten::{flatten, FlatAst, FlatTransition, FlattenError};
pub use guard::{normalize_guard, Guard, GuardError, GuardExpr, GuardLanguage};
pub use parser::{parse, ParseError, ParseErrors};
pub use printer::pretty_print;
pub use signature::{is_usable_name, is_valid_name, Signature, SignatureError, MAX_FLAGS, RESERVED};
pub use wellformed::{check_wellformed, Diagnostic, Diagnostics};

//! Text formats: a shared lexer, expression parsers and file readers/writers.

mod files;
mod lexer;
mod parse;

pub use files::{
    builtin_structure, parse_algebra, parse_axiom, parse_proof, parse_prop_proof, parse_signature,
    parse_structure, parse_theory, write_proof, write_prop_proof, write_signature, write_theory,
    ProofFile, PropProofFile,
};
pub use lexer::ParseError;
pub use parse::{parse_env, parse_formula, parse_prop, parse_substitution, parse_term};

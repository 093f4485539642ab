//! Error types shared across the crate.

use thiserror::Error;

/// Errors raised while parsing or validating a `.hdq` automaton.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: syntax error: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: unknown letter '{letter}'")]
    UnknownLetter { line: usize, letter: String },
    #[error("line {line}: bad weight '{text}'")]
    BadWeight { line: usize, text: String },
    #[error("missing header '{0}'")]
    MissingHeader(&'static str),
    #[error("line {line}: duplicate header '{header}'")]
    DuplicateHeader { line: usize, header: &'static str },
    #[error("non-total at ({state},{letter})")]
    NonTotal { state: String, letter: char },
    #[error("unknown state '{0}'")]
    UnknownState(String),
    #[error("bad discount {0}: must satisfy 0 < lambda < 1")]
    BadDiscount(String),
    #[error("value function {value_fn} cannot be used with mode {mode}")]
    ModeMismatch { value_fn: String, mode: String },
    #[error("{value_fn} automata use weights 0 and 1 only, found {weight}")]
    BooleanWeights { value_fn: String, weight: String },
}

/// Errors raised when evaluating runs, words, or automaton values.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("word is not compatible with automaton mode {0}")]
    IncompatibleMode(String),
    #[error("empty run has no {0} value")]
    EmptyRun(String),
    #[error("empty word")]
    EmptyWord,
    #[error("run is not a valid run of the automaton: {0}")]
    InvalidRun(String),
}

/// Errors raised while building a token-game arena.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("builder {builder} expects {expected}, got {found}")]
    WrongClass {
        builder: &'static str,
        expected: &'static str,
        found: String,
    },
    #[error("sink-shape validation failed: {0}")]
    SinkShape(String),
    #[error("token count {0} out of range (supported: 1..=3)")]
    TokensOutOfRange(usize),
}

/// Errors raised by the top-level decision procedure.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecideError {
    #[error("history-determinism of {class} automata on {mode} words is out of scope")]
    OutOfScope { class: String, mode: String },
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error("internal error: {0}")]
    Internal(String),
}

/// Errors raised during resolver extraction or checking.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResolverError {
    #[error("route {0} does not support resolver extraction")]
    Unsupported(String),
    #[error("resolver undefined on (memory {memory}, state {state}, letter {letter})")]
    Undefined {
        memory: usize,
        state: String,
        letter: char,
    },
    #[error("verdict is NOT-HD; no resolver exists")]
    NotHd,
}

/// Errors raised by the oracle machinery.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle size guard exceeded: {0} positions")]
    SizeGuard(usize),
    #[error("oracle supports Sup/Inf/Reachability/Safety on finite words, got {0}")]
    UnsupportedClass(String),
    #[error("generator config invalid: {0}")]
    BadConfig(String),
    #[error(transparent)]
    Resolver(#[from] ResolverError),
}

//! Nondeterministic quantitative automata.
//!
//! An automaton is a total transition system over a finite alphabet whose
//! transitions carry exact rational weights, together with a value function
//! that maps the weight sequence of a run to a value. The value of the
//! automaton on a word is the supremum of its runs' values.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::ParseError;
use crate::weight::{format_weight, is_valid_discount, weight_int, Weight};

/// Index of a state in [`Automaton::states`].
pub type StateId = usize;
/// Index of a letter in [`Automaton::alphabet`].
pub type LetterId = usize;
/// Index of a transition in [`Automaton::transitions`].
pub type TransId = usize;

/// A single weighted transition `source --letter:weight--> target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    pub source: StateId,
    pub letter: LetterId,
    pub weight: Weight,
    pub target: StateId,
}

/// Word mode: does the automaton read finite or infinite words?
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WordMode {
    Finite,
    Infinite,
}

impl fmt::Display for WordMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordMode::Finite => write!(f, "finite"),
            WordMode::Infinite => write!(f, "infinite"),
        }
    }
}

/// The value function attached to an automaton.
///
/// `Reachability` and `Safety` are the Boolean classes: they behave as
/// `Sup` and `Inf` over weights {0,1} for evaluation purposes, but carry
/// a structural sink-shape requirement and get their own decision routes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValueFn {
    Inf,
    Sup,
    LimInf,
    LimSup,
    DSum { discount: Weight },
    Sum,
    Avg,
    Reachability,
    Safety,
}

impl ValueFn {
    /// The value function actually applied to weight sequences.
    /// Boolean classes evaluate as their quantitative counterpart.
    pub fn semantics(&self) -> &ValueFn {
        match self {
            ValueFn::Reachability => &ValueFn::Sup,
            ValueFn::Safety => &ValueFn::Inf,
            other => other,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ValueFn::Inf => "Inf",
            ValueFn::Sup => "Sup",
            ValueFn::LimInf => "LimInf",
            ValueFn::LimSup => "LimSup",
            ValueFn::DSum { .. } => "DSum",
            ValueFn::Sum => "Sum",
            ValueFn::Avg => "Avg",
            ValueFn::Reachability => "Reachability",
            ValueFn::Safety => "Safety",
        }
    }

    /// Modes this value function is defined for.
    pub fn allows_mode(&self, mode: WordMode) -> bool {
        match self {
            ValueFn::Sum | ValueFn::Avg => mode == WordMode::Finite,
            ValueFn::LimInf | ValueFn::LimSup => mode == WordMode::Infinite,
            _ => true,
        }
    }

    pub fn is_boolean(&self) -> bool {
        matches!(self, ValueFn::Reachability | ValueFn::Safety)
    }
}

impl fmt::Display for ValueFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueFn::DSum { discount } => write!(f, "DSum {}", format_weight(discount)),
            other => write!(f, "{}", other.name()),
        }
    }
}

/// A nondeterministic quantitative automaton.
///
/// Immutable after construction; build one with [`Automaton::new`], which
/// validates totality and the per-class invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automaton {
    alphabet: Vec<char>,
    states: Vec<String>,
    initial: StateId,
    transitions: Vec<Transition>,
    value_fn: ValueFn,
    mode: WordMode,
    /// `outgoing[q][a]` lists the transitions from state `q` on letter `a`.
    outgoing: Vec<Vec<Vec<TransId>>>,
}

impl Automaton {
    /// Validates and indexes an automaton.
    ///
    /// Checks: state/letter ids in range, totality (at least one transition
    /// per state and letter), discount range, mode/value-function
    /// compatibility, and {0,1} weights for the Boolean classes.
    pub fn new(
        alphabet: Vec<char>,
        states: Vec<String>,
        initial: StateId,
        transitions: Vec<Transition>,
        value_fn: ValueFn,
        mode: WordMode,
    ) -> Result<Self, ParseError> {
        if alphabet.is_empty() {
            return Err(ParseError::Syntax {
                line: 0,
                msg: "empty alphabet".into(),
            });
        }
        if states.is_empty() {
            return Err(ParseError::Syntax {
                line: 0,
                msg: "no states".into(),
            });
        }
        if initial >= states.len() {
            return Err(ParseError::UnknownState(format!("#{initial}")));
        }
        if !value_fn.allows_mode(mode) {
            return Err(ParseError::ModeMismatch {
                value_fn: value_fn.name().into(),
                mode: mode.to_string(),
            });
        }
        if let ValueFn::DSum { discount } = &value_fn {
            if !is_valid_discount(discount) {
                return Err(ParseError::BadDiscount(format_weight(discount)));
            }
        }
        let zero = weight_int(0);
        let one = weight_int(1);
        for t in &transitions {
            if t.source >= states.len() || t.target >= states.len() {
                return Err(ParseError::UnknownState(format!(
                    "#{}",
                    t.source.max(t.target)
                )));
            }
            if t.letter >= alphabet.len() {
                return Err(ParseError::UnknownLetter {
                    line: 0,
                    letter: format!("#{}", t.letter),
                });
            }
            if value_fn.is_boolean() && t.weight != zero && t.weight != one {
                return Err(ParseError::BooleanWeights {
                    value_fn: value_fn.name().into(),
                    weight: format_weight(&t.weight),
                });
            }
        }
        let mut outgoing = vec![vec![Vec::new(); alphabet.len()]; states.len()];
        for (i, t) in transitions.iter().enumerate() {
            outgoing[t.source][t.letter].push(i);
        }
        for (q, per_letter) in outgoing.iter().enumerate() {
            for (a, ts) in per_letter.iter().enumerate() {
                if ts.is_empty() {
                    return Err(ParseError::NonTotal {
                        state: states[q].clone(),
                        letter: alphabet[a],
                    });
                }
            }
        }
        Ok(Automaton {
            alphabet,
            states,
            initial,
            transitions,
            value_fn,
            mode,
            outgoing,
        })
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn transition(&self, t: TransId) -> &Transition {
        &self.transitions[t]
    }

    pub fn value_fn(&self) -> &ValueFn {
        &self.value_fn
    }

    pub fn mode(&self) -> WordMode {
        self.mode
    }

    /// Transitions available from `q` on letter `a` (never empty).
    pub fn transitions_from(&self, q: StateId, a: LetterId) -> &[TransId] {
        &self.outgoing[q][a]
    }

    pub fn letter_id(&self, c: char) -> Option<LetterId> {
        self.alphabet.iter().position(|&x| x == c)
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|x| x == name)
    }

    pub fn state_name(&self, q: StateId) -> &str {
        &self.states[q]
    }

    /// True iff every `(state, letter)` pair has exactly one transition.
    pub fn is_deterministic(&self) -> bool {
        self.outgoing
            .iter()
            .all(|per| per.iter().all(|ts| ts.len() == 1))
    }

    /// The sorted set of distinct weights.
    pub fn weight_set(&self) -> Vec<Weight> {
        let set: BTreeSet<&Weight> = self.transitions.iter().map(|t| &t.weight).collect();
        set.into_iter().cloned().collect()
    }

    /// Same automaton under a different value function. Used by the
    /// cross-decider agreement checks (e.g. a Reachability automaton
    /// reinterpreted as a Sup automaton computes the same word function).
    pub fn reinterpret(&self, value_fn: ValueFn) -> Result<Automaton, ParseError> {
        Automaton::new(
            self.alphabet.clone(),
            self.states.clone(),
            self.initial,
            self.transitions.clone(),
            value_fn,
            self.mode,
        )
    }

    /// Like [`reinterpret`](Self::reinterpret) but also replaces the
    /// transition weights (same shape, new labels).
    pub fn with_weights(
        &self,
        weights: Vec<Weight>,
        value_fn: ValueFn,
    ) -> Result<Automaton, ParseError> {
        assert_eq!(weights.len(), self.transitions.len());
        let transitions = self
            .transitions
            .iter()
            .zip(weights)
            .map(|(t, w)| Transition {
                weight: w,
                ..t.clone()
            })
            .collect();
        Automaton::new(
            self.alphabet.clone(),
            self.states.clone(),
            self.initial,
            transitions,
            value_fn,
            self.mode,
        )
    }
}

/// Dense weight ranking: distinct weights mapped, order-preserving, to 1..=k.
#[derive(Debug, Clone)]
pub struct WeightRanking {
    /// `by_rank[r-1]` is the original weight of rank `r`.
    pub by_rank: Vec<Weight>,
    /// Rank (1-based) of each transition's weight.
    pub rank_of_transition: Vec<u32>,
}

impl WeightRanking {
    pub fn of(a: &Automaton) -> WeightRanking {
        let by_rank = a.weight_set();
        let rank_of_transition = a
            .transitions()
            .iter()
            .map(|t| {
                let idx = by_rank.binary_search(&t.weight).expect("weight in set");
                (idx + 1) as u32
            })
            .collect();
        WeightRanking {
            by_rank,
            rank_of_transition,
        }
    }

    /// Number of distinct weights.
    pub fn count(&self) -> u32 {
        self.by_rank.len() as u32
    }

    pub fn rank_of_weight(&self, w: &Weight) -> Option<u32> {
        self.by_rank.binary_search(w).ok().map(|i| (i + 1) as u32)
    }

    /// Original weight for a rank.
    pub fn weight_of_rank(&self, rank: u32) -> &Weight {
        &self.by_rank[(rank - 1) as usize]
    }
}

/// Replaces weights by their dense ranks `1..=k`, preserving order.
///
/// Returns the ranked automaton and the bijective map from ranks back to the
/// original weights. Value evaluation must keep using the original automaton;
/// the ranked copy exists for the game builders, whose arenas depend only on
/// the weight order.
pub fn normalize_weights(a: &Automaton) -> (Automaton, WeightRanking) {
    let ranking = WeightRanking::of(a);
    let weights = ranking
        .rank_of_transition
        .iter()
        .map(|&r| weight_int(r as i64))
        .collect();
    let ranked = a
        .with_weights(weights, a.value_fn().semantics().clone())
        .expect("ranked copy of a valid automaton is valid");
    (ranked, ranking)
}

/// Structural check for the Boolean classes.
///
/// For `Reachability`: every weight-1 transition leads to a sink whose
/// transitions are all weight-1 self-loops (the target). For `Safety`:
/// every weight-0 transition leads to a sink whose transitions are all
/// weight-0 self-loops. Returns the set of sink states.
pub fn check_sink_shape(a: &Automaton) -> Result<Vec<StateId>, crate::error::BuildError> {
    use crate::error::BuildError;
    let sink_weight = match a.value_fn() {
        ValueFn::Reachability => weight_int(1),
        ValueFn::Safety => weight_int(0),
        other => {
            return Err(BuildError::WrongClass {
                builder: "check_sink_shape",
                expected: "Reachability or Safety",
                found: other.name().into(),
            })
        }
    };
    let is_sink = |q: StateId| {
        a.transitions()
            .iter()
            .filter(|t| t.source == q)
            .all(|t| t.target == q && t.weight == sink_weight)
    };
    let mut sinks = Vec::new();
    for q in 0..a.state_count() {
        if is_sink(q) {
            sinks.push(q);
        }
    }
    for t in a.transitions() {
        if t.weight == sink_weight && !sinks.contains(&t.target) {
            return Err(BuildError::SinkShape(format!(
                "transition {} --{}:{}--> {} does not lead to a sink",
                a.state_name(t.source),
                a.alphabet()[t.letter],
                format_weight(&t.weight),
                a.state_name(t.target),
            )));
        }
    }
    Ok(sinks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::weight_ratio;

    fn letters(n: usize) -> Vec<char> {
        "abcdefgh".chars().take(n).collect()
    }

    pub(crate) fn tr(source: StateId, letter: LetterId, w: i64, target: StateId) -> Transition {
        Transition {
            source,
            letter,
            weight: weight_int(w),
            target,
        }
    }

    #[test]
    fn one_state_self_loop_is_total() {
        let a = Automaton::new(
            letters(1),
            vec!["s0".into()],
            0,
            vec![tr(0, 0, 1, 0)],
            ValueFn::Sup,
            WordMode::Finite,
        )
        .unwrap();
        assert_eq!(a.state_count(), 1);
        assert!(a.is_deterministic());
    }

    #[test]
    fn missing_letter_is_non_total() {
        let err = Automaton::new(
            letters(2),
            vec!["s0".into()],
            0,
            vec![tr(0, 0, 1, 0)],
            ValueFn::Sup,
            WordMode::Finite,
        )
        .unwrap_err();
        assert_eq!(
            err,
            ParseError::NonTotal {
                state: "s0".into(),
                letter: 'b'
            }
        );
    }

    #[test]
    fn limsup_needs_infinite_mode() {
        let err = Automaton::new(
            letters(1),
            vec!["s0".into()],
            0,
            vec![tr(0, 0, 1, 0)],
            ValueFn::LimSup,
            WordMode::Finite,
        )
        .unwrap_err();
        assert!(matches!(err, ParseError::ModeMismatch { .. }));
    }

    #[test]
    fn sum_needs_finite_mode() {
        let err = Automaton::new(
            letters(1),
            vec!["s0".into()],
            0,
            vec![tr(0, 0, 1, 0)],
            ValueFn::Sum,
            WordMode::Infinite,
        )
        .unwrap_err();
        assert!(matches!(err, ParseError::ModeMismatch { .. }));
    }

    #[test]
    fn dsum_discount_must_be_in_unit_interval() {
        for bad in [weight_int(1), weight_int(0), weight_ratio(5, 4)] {
            let err = Automaton::new(
                letters(1),
                vec!["s0".into()],
                0,
                vec![tr(0, 0, 1, 0)],
                ValueFn::DSum { discount: bad },
                WordMode::Infinite,
            )
            .unwrap_err();
            assert!(matches!(err, ParseError::BadDiscount(_)));
        }
    }

    #[test]
    fn reachability_rejects_non_boolean_weights() {
        let err = Automaton::new(
            letters(1),
            vec!["s0".into()],
            0,
            vec![tr(0, 0, 2, 0)],
            ValueFn::Reachability,
            WordMode::Finite,
        )
        .unwrap_err();
        assert!(matches!(err, ParseError::BooleanWeights { .. }));
    }

    #[test]
    fn ranking_is_dense_and_order_preserving() {
        // weights {0,3,7} -> ranks {1,2,3}
        let a = Automaton::new(
            letters(3),
            vec!["s0".into()],
            0,
            vec![tr(0, 0, 0, 0), tr(0, 1, 3, 0), tr(0, 2, 7, 0)],
            ValueFn::Sup,
            WordMode::Finite,
        )
        .unwrap();
        let (ranked, map) = normalize_weights(&a);
        assert_eq!(map.count(), 3);
        assert_eq!(*map.weight_of_rank(1), weight_int(0));
        assert_eq!(*map.weight_of_rank(2), weight_int(3));
        assert_eq!(*map.weight_of_rank(3), weight_int(7));
        let ws: Vec<Weight> = ranked.transitions().iter().map(|t| t.weight.clone()).collect();
        assert_eq!(ws, vec![weight_int(1), weight_int(2), weight_int(3)]);
    }

    #[test]
    fn ranking_identity_when_already_dense() {
        let a = Automaton::new(
            letters(2),
            vec!["s0".into()],
            0,
            vec![tr(0, 0, 1, 0), tr(0, 1, 2, 0)],
            ValueFn::Sup,
            WordMode::Finite,
        )
        .unwrap();
        let (ranked, map) = normalize_weights(&a);
        assert_eq!(ranked.weight_set(), a.weight_set());
        assert_eq!(*map.weight_of_rank(1), weight_int(1));
        assert_eq!(*map.weight_of_rank(2), weight_int(2));
    }

    #[test]
    fn sink_shape_accepts_proper_reachability() {
        // s0 --a:0--> s0, s0 --a:1--> s1(sink)
        let a = Automaton::new(
            letters(1),
            vec!["s0".into(), "t".into()],
            0,
            vec![tr(0, 0, 0, 0), tr(0, 0, 1, 1), tr(1, 0, 1, 1)],
            ValueFn::Reachability,
            WordMode::Finite,
        )
        .unwrap();
        assert_eq!(check_sink_shape(&a).unwrap(), vec![1]);
    }

    #[test]
    fn sink_shape_rejects_accepting_non_sink_edge() {
        // weight-1 transition into a state that is not a sink
        let a = Automaton::new(
            letters(1),
            vec!["s0".into(), "s1".into()],
            0,
            vec![tr(0, 0, 1, 1), tr(1, 0, 0, 1)],
            ValueFn::Reachability,
            WordMode::Finite,
        )
        .unwrap();
        assert!(check_sink_shape(&a).is_err());
    }
}

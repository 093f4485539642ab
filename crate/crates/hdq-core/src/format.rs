//! The `.hdq` text format.
//!
//! Line-based, UTF-8, `#` starts a comment. Header lines come first:
//!
//! ```text
//! valuefn: <Inf|Sup|LimInf|LimSup|DSum p/q|Sum|Avg|Reachability|Safety>
//! mode: <finite|infinite>
//! alphabet: <single-character symbols, optionally space-separated>
//! initial: <state>
//! ```
//!
//! followed by transition lines `<src> <letter> <weight> <dst>` where the
//! weight is an integer or `p/q`. States are declared implicitly by the
//! `initial:` header and the transition lines, in order of first appearance.

use crate::automaton::{Automaton, Transition, ValueFn, WordMode};
use crate::error::ParseError;
use crate::weight::{format_weight, parse_weight};

/// Parses a `.hdq` document into a validated automaton.
pub fn parse_automaton(text: &str) -> Result<Automaton, ParseError> {
    let mut value_fn: Option<ValueFn> = None;
    let mut mode: Option<WordMode> = None;
    let mut alphabet: Option<Vec<char>> = None;
    let mut initial_name: Option<String> = None;

    let mut states: Vec<String> = Vec::new();
    let mut state_id = |name: &str, states: &mut Vec<String>| -> usize {
        match states.iter().position(|s| s == name) {
            Some(i) => i,
            None => {
                states.push(name.to_string());
                states.len() - 1
            }
        }
    };
    let mut transitions: Vec<Transition> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }

        if let Some((key, rest)) = line.split_once(':') {
            let key = key.trim();
            let rest = rest.trim();
            match key {
                "valuefn" => {
                    if value_fn.is_some() {
                        return Err(ParseError::DuplicateHeader {
                            line: line_no,
                            header: "valuefn",
                        });
                    }
                    value_fn = Some(parse_value_fn(rest, line_no)?);
                }
                "mode" => {
                    if mode.is_some() {
                        return Err(ParseError::DuplicateHeader {
                            line: line_no,
                            header: "mode",
                        });
                    }
                    mode = Some(match rest {
                        "finite" => WordMode::Finite,
                        "infinite" => WordMode::Infinite,
                        other => {
                            return Err(ParseError::Syntax {
                                line: line_no,
                                msg: format!("unknown mode '{other}'"),
                            })
                        }
                    });
                }
                "alphabet" => {
                    if alphabet.is_some() {
                        return Err(ParseError::DuplicateHeader {
                            line: line_no,
                            header: "alphabet",
                        });
                    }
                    let mut syms = Vec::new();
                    for tok in rest.split_whitespace() {
                        for c in tok.chars() {
                            if c == '(' || c == ')' || c == '#' {
                                return Err(ParseError::Syntax {
                                    line: line_no,
                                    msg: format!("letter '{c}' is reserved"),
                                });
                            }
                            if syms.contains(&c) {
                                return Err(ParseError::Syntax {
                                    line: line_no,
                                    msg: format!("duplicate letter '{c}'"),
                                });
                            }
                            syms.push(c);
                        }
                    }
                    if syms.is_empty() {
                        return Err(ParseError::Syntax {
                            line: line_no,
                            msg: "empty alphabet".into(),
                        });
                    }
                    alphabet = Some(syms);
                }
                "initial" => {
                    if initial_name.is_some() {
                        return Err(ParseError::DuplicateHeader {
                            line: line_no,
                            header: "initial",
                        });
                    }
                    if rest.is_empty() || rest.contains(char::is_whitespace) {
                        return Err(ParseError::Syntax {
                            line: line_no,
                            msg: "initial expects one state name".into(),
                        });
                    }
                    state_id(rest, &mut states);
                    initial_name = Some(rest.to_string());
                }
                other => {
                    return Err(ParseError::Syntax {
                        line: line_no,
                        msg: format!("unknown header '{other}'"),
                    })
                }
            }
            continue;
        }

        // Transition line.
        let alphabet_ref = alphabet.as_ref().ok_or(ParseError::MissingHeader("alphabet"))?;
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 4 {
            return Err(ParseError::Syntax {
                line: line_no,
                msg: format!("expected '<src> <letter> <weight> <dst>', got {} fields", parts.len()),
            });
        }
        let mut chars = parts[1].chars();
        let letter_char = chars.next().unwrap();
        if chars.next().is_some() {
            return Err(ParseError::Syntax {
                line: line_no,
                msg: format!("letter '{}' must be a single character", parts[1]),
            });
        }
        let letter = alphabet_ref
            .iter()
            .position(|&c| c == letter_char)
            .ok_or(ParseError::UnknownLetter {
                line: line_no,
                letter: letter_char.to_string(),
            })?;
        let weight = parse_weight(parts[2]).ok_or(ParseError::BadWeight {
            line: line_no,
            text: parts[2].to_string(),
        })?;
        let source = state_id(parts[0], &mut states);
        let target = state_id(parts[3], &mut states);
        transitions.push(Transition {
            source,
            letter,
            weight,
            target,
        });
    }

    let value_fn = value_fn.ok_or(ParseError::MissingHeader("valuefn"))?;
    let mode = mode.ok_or(ParseError::MissingHeader("mode"))?;
    let alphabet = alphabet.ok_or(ParseError::MissingHeader("alphabet"))?;
    let initial_name = initial_name.ok_or(ParseError::MissingHeader("initial"))?;
    let initial = states
        .iter()
        .position(|s| *s == initial_name)
        .ok_or_else(|| ParseError::UnknownState(initial_name.clone()))?;

    Automaton::new(alphabet, states, initial, transitions, value_fn, mode)
}

fn parse_value_fn(s: &str, line: usize) -> Result<ValueFn, ParseError> {
    let mut it = s.split_whitespace();
    let head = it.next().unwrap_or("");
    let arg = it.next();
    if it.next().is_some() {
        return Err(ParseError::Syntax {
            line,
            msg: format!("trailing tokens after value function '{s}'"),
        });
    }
    let vf = match (head, arg) {
        ("Inf", None) => ValueFn::Inf,
        ("Sup", None) => ValueFn::Sup,
        ("LimInf", None) => ValueFn::LimInf,
        ("LimSup", None) => ValueFn::LimSup,
        ("Sum", None) => ValueFn::Sum,
        ("Avg", None) => ValueFn::Avg,
        ("Reachability", None) => ValueFn::Reachability,
        ("Safety", None) => ValueFn::Safety,
        ("DSum", Some(d)) => {
            let discount = parse_weight(d).ok_or(ParseError::BadDiscount(d.to_string()))?;
            ValueFn::DSum { discount }
        }
        ("DSum", None) => {
            return Err(ParseError::Syntax {
                line,
                msg: "DSum requires a discount factor, e.g. 'DSum 1/2'".into(),
            })
        }
        _ => {
            return Err(ParseError::Syntax {
                line,
                msg: format!("unknown value function '{s}'"),
            })
        }
    };
    Ok(vf)
}

/// Serializes an automaton back to the `.hdq` format.
///
/// Parsing the output reproduces the automaton exactly (same state order,
/// same transition order, same weights).
pub fn serialize_automaton(a: &Automaton) -> String {
    let mut out = String::new();
    out.push_str(&format!("valuefn: {}\n", a.value_fn()));
    out.push_str(&format!("mode: {}\n", a.mode()));
    let alphabet: Vec<String> = a.alphabet().iter().map(|c| c.to_string()).collect();
    out.push_str(&format!("alphabet: {}\n", alphabet.join(" ")));
    out.push_str(&format!("initial: {}\n", a.state_name(a.initial())));
    for t in a.transitions() {
        out.push_str(&format!(
            "{} {} {} {}\n",
            a.state_name(t.source),
            a.alphabet()[t.letter],
            format_weight(&t.weight),
            a.state_name(t.target),
        ));
    }
    out
}

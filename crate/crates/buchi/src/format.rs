//! Line-oriented text formats for automata and lasso words.
//!
//! Automaton files:
//!
//! ```text
//! # comments start with '#'
//! buchi                     (or: rabin state | rabin trans)
//! alphabet a b
//! states 2
//! initial 0
//! accepting 1               (Büchi; omitted when empty)
//! pair E: 1 F: 0            (Rabin; one line per pair)
//! trans 0 a 1
//! trans 1 b 0
//! ```
//!
//! Indices are decimal. For `rabin trans`, pair entries refer to transitions
//! by their ordinal among the `trans` lines of the file (0-based). Lassos are
//! written `stem letters ; period letters`, e.g. `a b ; a`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::automata::{
    Alphabet, AnyAutomaton, BuchiAutomaton, LassoWord, RabinAcceptance, RabinAutomaton, RabinPair,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing {0} declaration")]
    Missing(&'static str),
    #[error("invalid automaton: {0}")]
    Invalid(String),
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        msg: msg.into(),
    }
}

/// Serialises a Büchi automaton; parse-able back by [`parse_automaton`].
pub fn buchi_to_text(aut: &BuchiAutomaton) -> String {
    let mut out = String::from("buchi\n");
    write_alphabet(&mut out, aut.alphabet());
    let _ = writeln!(out, "states {}", aut.state_count());
    let _ = writeln!(out, "initial {}", aut.initial());
    let accepting: Vec<String> = aut.accepting_states().map(|q| q.to_string()).collect();
    if !accepting.is_empty() {
        let _ = writeln!(out, "accepting {}", accepting.join(" "));
    }
    for (src, letter, dst) in aut.transitions() {
        let _ = writeln!(out, "trans {} {} {}", src, aut.alphabet().name(letter), dst);
    }
    out
}

/// Serialises a Rabin automaton; transition-based pair entries are rewritten
/// to ordinals of the emitted `trans` lines.
pub fn rabin_to_text(aut: &RabinAutomaton) -> String {
    let mut out = String::new();
    let transitions: Vec<(usize, usize, usize)> = aut.transitions().collect();
    match aut.acceptance() {
        RabinAcceptance::State(pairs) => {
            out.push_str("rabin state\n");
            write_alphabet(&mut out, aut.alphabet());
            let _ = writeln!(out, "states {}", aut.state_count());
            let _ = writeln!(out, "initial {}", aut.initial());
            for p in pairs {
                write_pair(&mut out, p, |i| i);
            }
        }
        RabinAcceptance::Transition(pairs) => {
            out.push_str("rabin trans\n");
            write_alphabet(&mut out, aut.alphabet());
            let _ = writeln!(out, "states {}", aut.state_count());
            let _ = writeln!(out, "initial {}", aut.initial());
            // internal tid -> ordinal among the emitted trans lines
            let ordinal_of = |tid: usize| {
                transitions
                    .iter()
                    .position(|&(src, letter, _)| aut.transition_id(src, letter) == tid)
                    .expect("pair refers to an existing transition")
            };
            for p in pairs {
                write_pair(&mut out, p, ordinal_of);
            }
        }
    }
    for &(src, letter, dst) in &transitions {
        let _ = writeln!(out, "trans {} {} {}", src, aut.alphabet().name(letter), dst);
    }
    out
}

fn write_alphabet(out: &mut String, alphabet: &Alphabet) {
    out.push_str("alphabet");
    for name in alphabet.names() {
        out.push(' ');
        out.push_str(name);
    }
    out.push('\n');
}

fn write_pair(out: &mut String, pair: &RabinPair, map: impl Fn(usize) -> usize) {
    out.push_str("pair E:");
    let mut fin: Vec<usize> = pair.fin.iter().map(|&i| map(i)).collect();
    let mut inf: Vec<usize> = pair.inf.iter().map(|&i| map(i)).collect();
    fin.sort_unstable();
    inf.sort_unstable();
    for i in fin {
        let _ = write!(out, " {i}");
    }
    out.push_str(" F:");
    for i in inf {
        let _ = write!(out, " {i}");
    }
    out.push('\n');
}

enum Header {
    Buchi,
    RabinState,
    RabinTrans,
}

/// Parses either automaton kind from its text form.
pub fn parse_automaton(text: &str) -> Result<AnyAutomaton, ParseError> {
    let mut header: Option<Header> = None;
    let mut alphabet: Option<Alphabet> = None;
    let mut states: Option<usize> = None;
    let mut initial: Option<usize> = None;
    let mut accepting: Vec<usize> = Vec::new();
    let mut raw_pairs: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let mut transitions: Vec<(usize, usize, usize)> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut tokens = content.split_whitespace();
        let keyword = tokens.next().expect("nonempty line has a token");
        if header.is_none() {
            header = Some(match (keyword, tokens.next()) {
                ("buchi", None) => Header::Buchi,
                ("rabin", Some("state")) => Header::RabinState,
                ("rabin", Some("trans")) => Header::RabinTrans,
                _ => return Err(syntax(line, "expected header: buchi | rabin state | rabin trans")),
            });
            continue;
        }
        match keyword {
            "alphabet" => {
                let names: Vec<&str> = tokens.collect();
                if names.is_empty() {
                    return Err(syntax(line, "alphabet must be nonempty"));
                }
                let mut sorted = names.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != names.len() {
                    return Err(syntax(line, "duplicate letter name"));
                }
                alphabet = Some(Alphabet::new(names));
            }
            "states" => {
                states = Some(parse_number(line, tokens.next())?);
            }
            "initial" => {
                initial = Some(parse_number(line, tokens.next())?);
            }
            "accepting" => {
                for t in tokens {
                    accepting.push(parse_number(line, Some(t))?);
                }
            }
            "pair" => {
                let rest: Vec<&str> = tokens.collect();
                let epos = rest
                    .iter()
                    .position(|&t| t == "E:")
                    .ok_or_else(|| syntax(line, "pair line needs E:"))?;
                let fpos = rest
                    .iter()
                    .position(|&t| t == "F:")
                    .ok_or_else(|| syntax(line, "pair line needs F:"))?;
                if epos != 0 || fpos < epos {
                    return Err(syntax(line, "pair line must be: pair E: <i...> F: <i...>"));
                }
                let fin = rest[epos + 1..fpos]
                    .iter()
                    .map(|t| parse_number(line, Some(t)))
                    .collect::<Result<Vec<usize>, _>>()?;
                let inf = rest[fpos + 1..]
                    .iter()
                    .map(|t| parse_number(line, Some(t)))
                    .collect::<Result<Vec<usize>, _>>()?;
                raw_pairs.push((fin, inf));
            }
            "trans" => {
                let src = parse_number(line, tokens.next())?;
                let letter_name = tokens
                    .next()
                    .ok_or_else(|| syntax(line, "trans needs <src> <letter> <dst>"))?;
                let dst = parse_number(line, tokens.next())?;
                let al = alphabet
                    .as_ref()
                    .ok_or_else(|| syntax(line, "trans before alphabet declaration"))?;
                let letter = al
                    .index_of(letter_name)
                    .ok_or_else(|| syntax(line, format!("unknown letter {letter_name:?}")))?;
                transitions.push((src, letter, dst));
            }
            other => return Err(syntax(line, format!("unknown directive {other:?}"))),
        }
    }

    let header = header.ok_or(ParseError::Missing("header"))?;
    let alphabet = alphabet.ok_or(ParseError::Missing("alphabet"))?;
    let states = states.ok_or(ParseError::Missing("states"))?;
    let initial = initial.ok_or(ParseError::Missing("initial"))?;

    match header {
        Header::Buchi => {
            if !raw_pairs.is_empty() {
                return Err(ParseError::Invalid("buchi automata have no pairs".into()));
            }
            let aut = BuchiAutomaton::new(alphabet, states, initial, accepting, transitions)
                .map_err(|e| ParseError::Invalid(e.to_string()))?;
            Ok(AnyAutomaton::Buchi(aut))
        }
        Header::RabinState | Header::RabinTrans => {
            if !accepting.is_empty() {
                return Err(ParseError::Invalid(
                    "rabin automata use pair lines, not accepting".into(),
                ));
            }
            let acceptance = match header {
                Header::RabinState => RabinAcceptance::State(
                    raw_pairs
                        .into_iter()
                        .map(|(fin, inf)| RabinPair {
                            fin: fin.into_iter().collect(),
                            inf: inf.into_iter().collect(),
                        })
                        .collect(),
                ),
                _ => {
                    // Ordinals refer to trans lines; rewrite to internal ids.
                    let tid_of_ordinal = |o: usize| -> Result<usize, ParseError> {
                        let &(src, letter, _) = transitions.get(o).ok_or_else(|| {
                            ParseError::Invalid(format!("pair refers to transition {o} of {}", transitions.len()))
                        })?;
                        Ok(src * alphabet.len() + letter)
                    };
                    let mut pairs = Vec::new();
                    for (fin, inf) in raw_pairs {
                        pairs.push(RabinPair {
                            fin: fin
                                .into_iter()
                                .map(tid_of_ordinal)
                                .collect::<Result<_, _>>()?,
                            inf: inf
                                .into_iter()
                                .map(tid_of_ordinal)
                                .collect::<Result<_, _>>()?,
                        });
                    }
                    RabinAcceptance::Transition(pairs)
                }
            };
            let aut = RabinAutomaton::new(alphabet, states, initial, transitions, acceptance)
                .map_err(|e| ParseError::Invalid(e.to_string()))?;
            Ok(AnyAutomaton::Rabin(aut))
        }
    }
}

fn parse_number(line: usize, token: Option<&str>) -> Result<usize, ParseError> {
    let t = token.ok_or_else(|| syntax(line, "expected a number"))?;
    t.parse()
        .map_err(|_| syntax(line, format!("not a number: {t:?}")))
}

/// Parses a lasso `stem ; period` against an alphabet.
pub fn parse_lasso(alphabet: &Alphabet, text: &str) -> Result<LassoWord, ParseError> {
    let parts: Vec<&str> = text.split(';').collect();
    if parts.len() != 2 {
        return Err(syntax(1, "lasso must be: <stem letters> ; <period letters>"));
    }
    let read = |side: &str| -> Result<Vec<usize>, ParseError> {
        side.split_whitespace()
            .map(|name| {
                alphabet
                    .index_of(name)
                    .ok_or_else(|| syntax(1, format!("unknown letter {name:?}")))
            })
            .collect()
    };
    let stem = read(parts[0])?;
    let period = read(parts[1])?;
    if period.is_empty() {
        return Err(syntax(1, "lasso period must be nonempty"));
    }
    Ok(LassoWord::new(stem, period))
}

pub fn lasso_to_text(alphabet: &Alphabet, word: &LassoWord) -> String {
    word.display(alphabet).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::RabinPair;
    use crate::sample;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn roundtrip_buchi(aut: &BuchiAutomaton) -> BuchiAutomaton {
        match parse_automaton(&buchi_to_text(aut)).unwrap() {
            AnyAutomaton::Buchi(b) => b,
            _ => panic!("expected buchi"),
        }
    }

    #[test]
    fn buchi_round_trip_is_structural() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for _ in 0..50 {
            let aut = sample::random_buchi(&mut rng, 1..=4, 2, 0.4);
            let back = roundtrip_buchi(&aut);
            assert_eq!(back.state_count(), aut.state_count());
            assert_eq!(back.initial(), aut.initial());
            assert!(back.alphabet().same_as(aut.alphabet()));
            assert_eq!(
                back.transitions().collect::<Vec<_>>(),
                aut.transitions().collect::<Vec<_>>()
            );
            let acc: Vec<usize> = aut.accepting_states().collect();
            let acc_back: Vec<usize> = back.accepting_states().collect();
            assert_eq!(acc, acc_back);
            // Byte-identical re-serialisation.
            assert_eq!(buchi_to_text(&back), buchi_to_text(&aut));
        }
    }

    #[test]
    fn rabin_round_trip_with_transition_pairs() {
        let al = Alphabet::new(["a", "b"]);
        let aut = RabinAutomaton::new(
            al,
            2,
            0,
            [(0, 0, 1), (1, 0, 0), (1, 1, 1)],
            RabinAcceptance::Transition(vec![RabinPair {
                fin: [2].into_iter().collect(),  // tid of (1, a)
                inf: [0].into_iter().collect(),  // tid of (0, a)
            }]),
        )
        .unwrap();
        let text = rabin_to_text(&aut);
        let AnyAutomaton::Rabin(back) = parse_automaton(&text).unwrap() else {
            panic!("expected rabin");
        };
        assert_eq!(back.acceptance(), aut.acceptance());
        assert_eq!(rabin_to_text(&back), text);
        // Behavioural check on a couple of lassos.
        for (stem, period) in [(vec![], vec![0]), (vec![0], vec![0, 1])] {
            let w = LassoWord::new(stem, period);
            assert_eq!(back.accepts_lasso(&w), aut.accepts_lasso(&w));
        }
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# a Büchi automaton\nbuchi\n\nalphabet a\nstates 1\ninitial 0  # start\naccepting 0\ntrans 0 a 0\n";
        let AnyAutomaton::Buchi(aut) = parse_automaton(text).unwrap() else {
            panic!()
        };
        assert!(aut.accepts_lasso(&LassoWord::new(vec![], vec![0])));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let bad = "buchi\nalphabet a\nstates x\n";
        match parse_automaton(bad) {
            Err(ParseError::Syntax { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn lasso_round_trip() {
        let al = Alphabet::new(["a", "b"]);
        let w = parse_lasso(&al, "a b ; a").unwrap();
        assert_eq!(w, LassoWord::new(vec![0, 1], vec![0]));
        assert_eq!(lasso_to_text(&al, &w), "a b ; a");
        let empty_stem = parse_lasso(&al, "; b").unwrap();
        assert_eq!(empty_stem, LassoWord::new(vec![], vec![1]));
        assert_eq!(lasso_to_text(&al, &empty_stem), "; b");
        assert!(parse_lasso(&al, "a ; ").is_err());
        assert!(parse_lasso(&al, "a b").is_err());
    }
}

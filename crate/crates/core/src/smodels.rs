//! The smodels intermediate format, restricted to basic (type 1) and
//! disjunctive (type 8) rules.
//!
//! ```text
//! 1 head #lits #neg neg... pos...
//! 8 #heads heads... #lits #neg neg... pos...
//! 0
//! id name
//! 0
//! B+
//! id
//! 0
//! B-
//! id
//! 0
//! models
//! ```
//!
//! Integrity constraints are written with a hidden "false" head atom that
//! is listed under `B-`. On reading, a head atom with no name that occurs in
//! `B-` and nowhere else except as the sole head of rules is taken to be
//! such a marker, and its rules become constraints with an empty head.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{self, Read, Write};

use indexmap::IndexSet;
use thiserror::Error;

use crate::program::{AtomId, Program, Rule};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: unsupported rule type {kind} ({})", rule_type_name(*kind))]
    UnsupportedRuleType { line: usize, kind: u64 },
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn rule_type_name(kind: u64) -> &'static str {
    match kind {
        2 => "constraint rule",
        3 => "choice rule",
        5 => "weight rule",
        6 => "minimize statement",
        _ => "unknown",
    }
}

fn malformed(line: usize, reason: impl Into<String>) -> ParseError {
    ParseError::Malformed {
        line,
        reason: reason.into(),
    }
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
            last: 0,
        }
    }

    /// Next non-blank line with its 1-based number.
    fn next_line(&mut self) -> Option<(usize, &'a str)> {
        for (i, line) in self.inner.by_ref() {
            self.last = i + 1;
            let line = line.trim();
            if !line.is_empty() {
                return Some((i + 1, line));
            }
        }
        None
    }

    fn expect(&mut self, what: &str) -> Result<(usize, &'a str), ParseError> {
        self.next_line().ok_or_else(|| {
            malformed(
                self.last + 1,
                format!("unexpected end of file, expected {what}"),
            )
        })
    }
}

fn numbers(line: usize, text: &str) -> Result<Vec<u64>, ParseError> {
    text.split_ascii_whitespace()
        .map(|tok| {
            tok.parse::<u64>().map_err(|_| {
                malformed(
                    line,
                    format!("expected a non-negative integer, found {tok:?}"),
                )
            })
        })
        .collect()
}

fn atom(line: usize, n: u64) -> Result<AtomId, ParseError> {
    u32::try_from(n)
        .ok()
        .and_then(AtomId::new)
        .ok_or_else(|| malformed(line, format!("invalid atom id {n}")))
}

fn atoms(line: usize, ns: &[u64]) -> Result<Vec<AtomId>, ParseError> {
    ns.iter().map(|&n| atom(line, n)).collect()
}

/// Body part `#lits #neg neg... pos...`, which must use up `toks` exactly.
fn body(line: usize, toks: &[u64]) -> Result<(Vec<AtomId>, Vec<AtomId>), ParseError> {
    let [lits, neg, rest @ ..] = toks else {
        return Err(malformed(line, "missing body counts"));
    };
    let (lits, neg) = (*lits as usize, *neg as usize);
    if neg > lits {
        return Err(malformed(line, "more negative literals than literals"));
    }
    if rest.len() != lits {
        return Err(malformed(
            line,
            format!("body declares {lits} literals but lists {}", rest.len()),
        ));
    }
    Ok((atoms(line, &rest[neg..])?, atoms(line, &rest[..neg])?))
}

pub fn read_smodels(mut reader: impl Read) -> Result<Program, ParseError> {
    let mut bytes = Vec::new();
    reader.read_to_end(&mut bytes)?;
    parse_smodels(&bytes)
}

pub fn parse_smodels(bytes: &[u8]) -> Result<Program, ParseError> {
    let text =
        std::str::from_utf8(bytes).map_err(|e| malformed(1, format!("not valid UTF-8: {e}")))?;
    let mut lines = Lines::new(text);

    let mut raw: Vec<Rule> = Vec::new();
    loop {
        let (no, line) = lines.expect("a rule or 0")?;
        let toks = numbers(no, line)?;
        match toks.as_slice() {
            [0] => break,
            [1, head, rest @ ..] => {
                let (pos, neg) = body(no, rest)?;
                raw.push(Rule::new([atom(no, *head)?], pos, neg));
            }
            [8, k, rest @ ..] => {
                let k = *k as usize;
                if rest.len() < k {
                    return Err(malformed(no, "disjunctive rule is missing head atoms"));
                }
                if k == 0 {
                    return Err(malformed(no, "disjunctive rule with empty head"));
                }
                let head = atoms(no, &rest[..k])?;
                let (pos, neg) = body(no, &rest[k..])?;
                raw.push(Rule::new(head, pos, neg));
            }
            [kind @ (2 | 3 | 5 | 6), ..] => {
                return Err(ParseError::UnsupportedRuleType {
                    line: no,
                    kind: *kind,
                })
            }
            [kind, ..] => return Err(malformed(no, format!("unknown rule type {kind}"))),
            [] => unreachable!("blank lines are skipped"),
        }
    }

    let mut symbols = BTreeMap::new();
    loop {
        let (no, line) = lines.expect("a symbol table entry or 0")?;
        if line == "0" {
            break;
        }
        let (id, name) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| malformed(no, "symbol table entry without a name"))?;
        let id = id
            .parse::<u64>()
            .map_err(|_| malformed(no, format!("invalid atom id {id:?}")))?;
        symbols.insert(atom(no, id)?, name.trim().to_owned());
    }

    let mut compute = [Vec::new(), Vec::new()];
    for (section, header) in compute.iter_mut().zip(["B+", "B-"]) {
        let (no, line) = lines.expect(header)?;
        if line != header {
            return Err(malformed(no, format!("expected {header}, found {line:?}")));
        }
        loop {
            let (no, line) = lines.expect("an atom id or 0")?;
            match numbers(no, line)?.as_slice() {
                [0] => break,
                [id] => section.push(atom(no, *id)?),
                _ => return Err(malformed(no, "expected one atom id per line")),
            }
        }
    }
    let [compute_pos, compute_neg] = compute;

    let (no, line) = lines.expect("the number of models")?;
    let models = match numbers(no, line)?.as_slice() {
        [m] => *m,
        _ => return Err(malformed(no, "expected the number of models")),
    };
    if let Some((no, _)) = lines.next_line() {
        return Err(malformed(no, "trailing content after the number of models"));
    }

    let markers = false_markers(&raw, &symbols, &compute_neg);
    let rules: IndexSet<Rule> = raw
        .into_iter()
        .map(|r| match r.head() {
            [h] if markers.contains(h) => {
                Rule::constraint(r.body_pos().to_vec(), r.body_neg().to_vec())
            }
            _ => r,
        })
        .collect();
    let false_atom = markers.first().copied();
    Ok(Program::from_parts(
        rules,
        symbols,
        compute_pos,
        compute_neg,
        models,
        false_atom,
    ))
}

/// Unnamed atoms listed in `B-` that occur only as the sole head of rules.
fn false_markers(
    rules: &[Rule],
    symbols: &BTreeMap<AtomId, String>,
    compute_neg: &[AtomId],
) -> BTreeSet<AtomId> {
    let mut candidates: BTreeSet<AtomId> = rules
        .iter()
        .filter_map(|r| match r.head() {
            [h] => Some(*h),
            _ => None,
        })
        .filter(|h| !symbols.contains_key(h) && compute_neg.contains(h))
        .collect();
    for r in rules {
        for a in r.body_pos().iter().chain(r.body_neg()) {
            candidates.remove(a);
        }
        if r.head().len() > 1 {
            for a in r.head() {
                candidates.remove(a);
            }
        }
    }
    candidates
}

pub fn write_smodels(program: &Program) -> Vec<u8> {
    let mut out = Vec::new();
    write_smodels_to(program, &mut out).expect("writing to a Vec cannot fail");
    out
}

pub fn write_smodels_to(program: &Program, mut out: impl Write) -> io::Result<()> {
    let owned;
    let program = if program.false_atom().is_none() && program.has_constraints() {
        owned = program.clone().with_false_atom();
        &owned
    } else {
        program
    };
    let mut buf = String::new();
    for rule in program.rules() {
        let head = rule.head();
        match head {
            [] => buf.push_str(&format!(
                "1 {}",
                program.false_atom().expect("allocated above")
            )),
            [h] => buf.push_str(&format!("1 {h}")),
            _ => {
                buf.push_str(&format!("8 {}", head.len()));
                for h in head {
                    buf.push_str(&format!(" {h}"));
                }
            }
        }
        buf.push_str(&format!(" {} {}", rule.body_len(), rule.body_neg().len()));
        for a in rule.body_neg().iter().chain(rule.body_pos()) {
            buf.push_str(&format!(" {a}"));
        }
        buf.push('\n');
    }
    buf.push_str("0\n");
    for (id, name) in program.symbols() {
        buf.push_str(&format!("{id} {name}\n"));
    }
    buf.push_str("0\nB+\n");
    for a in program.compute_pos() {
        buf.push_str(&format!("{a}\n"));
    }
    buf.push_str("0\nB-\n");
    for a in program.compute_neg() {
        buf.push_str(&format!("{a}\n"));
    }
    buf.push_str(&format!("0\n{}\n", program.models_to_compute()));
    out.write_all(buf.as_bytes())
}

//! Exhaustive answer-set enumeration for small programs.
//!
//! Candidates are enumerated by a depth-first search over truth
//! assignments. A branch is cut as soon as some rule whose atoms are all
//! assigned is violated, or some true atom has no rule left that could
//! support it (body true, it the only true head atom). Both conditions are
//! necessary for answer sets, so the cut is exact; every surviving leaf is
//! then checked for minimality against its reduct by the same search.
//! Atoms are visited in dependency order (rule bodies before heads) so
//! derived atoms are decided right after the atoms they depend on.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::ControlFlow;

use thiserror::Error;

use crate::program::{AtomId, Program, Rule};

/// Largest number of atoms the oracle accepts.
pub const ORACLE_ATOM_LIMIT: usize = 128;

pub type AnswerSet = BTreeSet<AtomId>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("program has {0} atoms; the enumeration oracle is limited to {ORACLE_ATOM_LIMIT}")]
    TooLarge(usize),
}

/// `P^M`: rules whose negative body misses `M`, with negative bodies removed.
pub fn reduct(program: &Program, model: &BTreeSet<AtomId>) -> Program {
    let rules = program
        .rules()
        .filter(|r| r.body_neg().iter().all(|a| !model.contains(a)))
        .map(|r| Rule::new(r.head().to_vec(), r.body_pos().to_vec(), []));
    let mut out = program.clone_without_rules();
    out.extend_rules(rules);
    out
}

/// Whether `model` satisfies every rule of `program` classically.
pub fn is_model(program: &Program, model: &BTreeSet<AtomId>) -> bool {
    program.rules().all(|r| {
        let body = r.body_pos().iter().all(|a| model.contains(a))
            && r.body_neg().iter().all(|a| !model.contains(a));
        !body || r.head().iter().any(|a| model.contains(a))
    })
}

pub fn is_answer_set(program: &Program, model: &BTreeSet<AtomId>) -> Result<bool, OracleError> {
    let atoms = program.atoms();
    guard(atoms.len())?;
    if !model.is_subset(&atoms) || !is_model(program, model) {
        return Ok(false);
    }
    Ok(is_minimal(program, model))
}

/// All answer sets, sorted.
pub fn answer_sets(program: &Program) -> Result<BTreeSet<AnswerSet>, OracleError> {
    let atoms: Vec<AtomId> = program.atoms().into_iter().collect();
    guard(atoms.len())?;
    let rules: Vec<&Rule> = program.rules().collect();
    let search = Search::new(&atoms, &rules);
    let mut found = BTreeSet::new();
    let _ = search.run(|model| {
        if is_minimal(program, &model) {
            found.insert(model);
        }
        ControlFlow::Continue(())
    });
    Ok(found)
}

/// Answer sets restricted to `atoms`, deduplicated.
pub fn project(sets: &BTreeSet<AnswerSet>, atoms: &BTreeSet<AtomId>) -> BTreeSet<AnswerSet> {
    sets.iter()
        .map(|m| m.intersection(atoms).copied().collect())
        .collect()
}

fn guard(n: usize) -> Result<(), OracleError> {
    if n > ORACLE_ATOM_LIMIT {
        return Err(OracleError::TooLarge(n));
    }
    Ok(())
}

/// Assumes `model` is a model of `program`: checks that no proper subset
/// is a model of the reduct.
fn is_minimal(program: &Program, model: &BTreeSet<AtomId>) -> bool {
    let atoms: Vec<AtomId> = model.iter().copied().collect();
    // Reduct rules that can still fire inside `model`, with head atoms
    // outside `model` dropped (they are false in every subset).
    let rules: Vec<Rule> = program
        .rules()
        .filter(|r| r.body_neg().iter().all(|a| !model.contains(a)))
        .filter(|r| r.body_pos().iter().all(|a| model.contains(a)))
        .map(|r| {
            let head: Vec<AtomId> = r
                .head()
                .iter()
                .copied()
                .filter(|a| model.contains(a))
                .collect();
            Rule::new(head, r.body_pos().to_vec(), [])
        })
        .collect();
    let refs: Vec<&Rule> = rules.iter().collect();
    let search = Search::new(&atoms, &refs);
    let smaller = search.run(|sub| {
        if sub.len() < model.len() {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    smaller.is_continue()
}

struct IndexedRule {
    head: Vec<usize>,
    pos: Vec<usize>,
    neg: Vec<usize>,
}

impl IndexedRule {
    fn body_true(&self, v: &[bool]) -> bool {
        self.pos.iter().all(|&i| v[i]) && self.neg.iter().all(|&i| !v[i])
    }

    fn violated(&self, v: &[bool]) -> bool {
        self.body_true(v) && self.head.iter().all(|&i| !v[i])
    }

    fn supports(&self, atom: usize, v: &[bool]) -> bool {
        self.body_true(v) && self.head.iter().all(|&i| i == atom || !v[i])
    }
}

/// Depth-first search over supported models. Positions are atoms in
/// visiting order.
struct Search {
    atoms: Vec<AtomId>,
    rules: Vec<IndexedRule>,
    /// Rules to check once position `i` is assigned.
    rule_checks: Vec<Vec<usize>>,
    /// Atoms whose support to check once position `i` is assigned.
    support_checks: Vec<Vec<usize>>,
    heads_of: Vec<Vec<usize>>,
    always_violated: bool,
}

impl Search {
    fn new(atoms: &[AtomId], rules: &[&Rule]) -> Search {
        let order = dependency_order(atoms, rules);
        let position: BTreeMap<AtomId, usize> =
            order.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let idx = |xs: &[AtomId]| -> Vec<usize> { xs.iter().map(|a| position[a]).collect() };
        let rules: Vec<IndexedRule> = rules
            .iter()
            .map(|r| IndexedRule {
                head: idx(r.head()),
                pos: idx(r.body_pos()),
                neg: idx(r.body_neg()),
            })
            .collect();
        let n = order.len();
        let mut rule_checks = vec![Vec::new(); n];
        let mut heads_of = vec![Vec::new(); n];
        let mut always_violated = false;
        for (ri, r) in rules.iter().enumerate() {
            let last = r.head.iter().chain(&r.pos).chain(&r.neg).copied().max();
            match last {
                Some(last) => rule_checks[last].push(ri),
                None => always_violated = true,
            }
            for &h in &r.head {
                heads_of[h].push(ri);
            }
        }
        let mut support_checks = vec![Vec::new(); n];
        for (a, rs) in heads_of.iter().enumerate() {
            let last = rs
                .iter()
                .flat_map(|&ri| {
                    let r = &rules[ri];
                    r.head.iter().chain(&r.pos).chain(&r.neg).copied()
                })
                .fold(a, usize::max);
            support_checks[last].push(a);
        }
        Search {
            atoms: order,
            rules,
            rule_checks,
            support_checks,
            heads_of,
            always_violated,
        }
    }

    /// Calls `visit` with each supported model; stops early on `Break`.
    fn run(&self, mut visit: impl FnMut(BTreeSet<AtomId>) -> ControlFlow<()>) -> ControlFlow<()> {
        if self.always_violated {
            return ControlFlow::Continue(());
        }
        let mut values = vec![false; self.atoms.len()];
        self.step(0, &mut values, &mut visit)
    }

    fn step(
        &self,
        i: usize,
        values: &mut [bool],
        visit: &mut impl FnMut(BTreeSet<AtomId>) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if i == self.atoms.len() {
            let model = (0..i)
                .filter(|&j| values[j])
                .map(|j| self.atoms[j])
                .collect();
            return visit(model);
        }
        for value in [false, true] {
            values[i] = value;
            if self.consistent(i, values) {
                self.step(i + 1, values, visit)?;
            }
        }
        values[i] = false;
        ControlFlow::Continue(())
    }

    fn consistent(&self, i: usize, values: &[bool]) -> bool {
        self.rule_checks[i]
            .iter()
            .all(|&ri| !self.rules[ri].violated(values))
            && self.support_checks[i].iter().all(|&a| {
                !values[a]
                    || self.heads_of[a]
                        .iter()
                        .any(|&ri| self.rules[ri].supports(a, values))
            })
    }
}

/// Atoms ordered so that, outside of dependency cycles, every atom comes
/// after the body atoms of the rules defining it. Strongly connected
/// components are ordered topologically; atoms within one by id.
fn dependency_order(atoms: &[AtomId], rules: &[&Rule]) -> Vec<AtomId> {
    let index: BTreeMap<AtomId, usize> = atoms.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let n = atoms.len();
    let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for r in rules {
        for b in r.body_pos().iter().chain(r.body_neg()) {
            for h in r.head() {
                if b != h {
                    succ[index[b]].insert(index[h]);
                }
            }
        }
    }
    let succ: Vec<Vec<usize>> = succ.into_iter().map(|s| s.into_iter().collect()).collect();
    // Tarjan, iterative. Components come out in reverse topological order.
    let mut comp = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut num = vec![usize::MAX; n];
    let mut stack = Vec::new();
    let mut on_stack = vec![false; n];
    let mut counter = 0;
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for root in 0..n {
        if num[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        num[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut next)) = call.last_mut() {
            if *next < succ[v].len() {
                let w = succ[v][*next];
                *next += 1;
                if num[w] == usize::MAX {
                    num[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(num[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == num[v] {
                    let mut members = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp[w] = comps.len();
                        members.push(w);
                        if w == v {
                            break;
                        }
                    }
                    members.sort_unstable();
                    comps.push(members);
                }
            }
        }
    }
    comps
        .into_iter()
        .rev()
        .flatten()
        .map(|i| atoms[i])
        .collect()
}

/// Effect of symmetry breaking on the number of answer sets.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CompressionReport {
    pub total_models: usize,
    pub surviving_models: usize,
    /// `1 - surviving / total`, or 0 when there are no models.
    pub compression: f64,
}

impl CompressionReport {
    pub fn new(total_models: usize, surviving_models: usize) -> CompressionReport {
        let compression = if total_models == 0 {
            0.0
        } else {
            1.0 - surviving_models as f64 / total_models as f64
        };
        CompressionReport {
            total_models,
            surviving_models,
            compression,
        }
    }
}

/// Answer sets of `original` against those of `augmented` projected back
/// onto the atoms of `original`.
pub fn compression(
    original: &Program,
    augmented: &Program,
) -> Result<CompressionReport, OracleError> {
    let total = answer_sets(original)?;
    let surviving = project(&answer_sets(augmented)?, &original.atoms());
    Ok(CompressionReport::new(total.len(), surviving.len()))
}

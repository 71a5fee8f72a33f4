//! Ground disjunctive logic programs.
//!
//! A [`Program`] is a *set* of [`Rule`]s over numbered atoms. Rules keep
//! insertion order for output, but equality between programs is set
//! equality on rules, which is what symmetry checking relies on.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use indexmap::IndexSet;
use thiserror::Error;

use crate::symmetry::AtomPermutation;

/// Atom number as used in the smodels format. Always at least 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomId(u32);

impl AtomId {
    pub fn new(id: u32) -> Option<AtomId> {
        (id >= 1).then_some(AtomId(id))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for AtomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `head₁ ; … ; headₗ ← pos₁, …, posₘ, not neg₁, …, not negₙ`.
///
/// All three parts are sorted and duplicate-free. An empty head is an
/// integrity constraint.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    head: Vec<AtomId>,
    pos: Vec<AtomId>,
    neg: Vec<AtomId>,
}

fn normalize(mut atoms: Vec<AtomId>) -> Vec<AtomId> {
    atoms.sort_unstable();
    atoms.dedup();
    atoms
}

impl Rule {
    pub fn new(
        head: impl IntoIterator<Item = AtomId>,
        pos: impl IntoIterator<Item = AtomId>,
        neg: impl IntoIterator<Item = AtomId>,
    ) -> Rule {
        Rule {
            head: normalize(head.into_iter().collect()),
            pos: normalize(pos.into_iter().collect()),
            neg: normalize(neg.into_iter().collect()),
        }
    }

    pub fn fact(atom: AtomId) -> Rule {
        Rule::new([atom], [], [])
    }

    pub fn constraint(
        pos: impl IntoIterator<Item = AtomId>,
        neg: impl IntoIterator<Item = AtomId>,
    ) -> Rule {
        Rule::new([], pos, neg)
    }

    pub fn head(&self) -> &[AtomId] {
        &self.head
    }

    pub fn body_pos(&self) -> &[AtomId] {
        &self.pos
    }

    pub fn body_neg(&self) -> &[AtomId] {
        &self.neg
    }

    pub fn is_constraint(&self) -> bool {
        self.head.is_empty()
    }

    pub fn is_fact(&self) -> bool {
        self.head.len() == 1 && self.pos.is_empty() && self.neg.is_empty()
    }

    pub fn body_len(&self) -> usize {
        self.pos.len() + self.neg.len()
    }

    /// Number of literal occurrences in head and body.
    pub fn literal_count(&self) -> usize {
        self.head.len() + self.body_len()
    }

    pub fn atoms(&self) -> impl Iterator<Item = AtomId> + '_ {
        self.head.iter().chain(&self.pos).chain(&self.neg).copied()
    }

    /// Image of the rule under an atom mapping.
    pub fn map_atoms(&self, mut f: impl FnMut(AtomId) -> AtomId) -> Rule {
        Rule::new(
            self.head.iter().map(|&a| f(a)).collect::<Vec<_>>(),
            self.pos.iter().map(|&a| f(a)).collect::<Vec<_>>(),
            self.neg.iter().map(|&a| f(a)).collect::<Vec<_>>(),
        )
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head: Vec<String> = self.head.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", head.join(" ; "))?;
        if self.body_len() == 0 {
            return write!(f, " <-.");
        }
        let body: Vec<String> = self
            .pos
            .iter()
            .map(|a| a.to_string())
            .chain(self.neg.iter().map(|a| format!("not {a}")))
            .collect();
        write!(f, " <- {}.", body.join(", "))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProgramError {
    #[error("permutation has no image for atom {0}")]
    PermutationDomain(AtomId),
}

/// A ground disjunctive program together with the smodels side sections
/// (symbol table, compute statement, model count), which are carried
/// through unchanged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Program {
    rules: IndexSet<Rule>,
    symbols: BTreeMap<AtomId, String>,
    compute_pos: Vec<AtomId>,
    compute_neg: Vec<AtomId>,
    models: u64,
    false_atom: Option<AtomId>,
}

impl Default for Program {
    fn default() -> Self {
        Program::new()
    }
}

impl Program {
    pub fn new() -> Program {
        Program {
            rules: IndexSet::new(),
            symbols: BTreeMap::new(),
            compute_pos: Vec::new(),
            compute_neg: Vec::new(),
            models: 1,
            false_atom: None,
        }
    }

    pub fn from_rules(rules: impl IntoIterator<Item = Rule>) -> Program {
        let mut p = Program::new();
        p.extend_rules(rules);
        p
    }

    /// Adds a rule; returns `false` if it was already present.
    pub fn add_rule(&mut self, rule: Rule) -> bool {
        self.rules.insert(rule)
    }

    pub fn extend_rules(&mut self, rules: impl IntoIterator<Item = Rule>) {
        for r in rules {
            self.rules.insert(r);
        }
    }

    pub fn rules(&self) -> impl ExactSizeIterator<Item = &Rule> + '_ {
        self.rules.iter()
    }

    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    pub fn contains_rule(&self, rule: &Rule) -> bool {
        self.rules.contains(rule)
    }

    pub fn has_constraints(&self) -> bool {
        self.rules.iter().any(Rule::is_constraint)
    }

    pub fn set_name(&mut self, atom: AtomId, name: impl Into<String>) {
        self.symbols.insert(atom, name.into());
    }

    pub fn name(&self, atom: AtomId) -> Option<&str> {
        self.symbols.get(&atom).map(String::as_str)
    }

    pub fn symbols(&self) -> &BTreeMap<AtomId, String> {
        &self.symbols
    }

    pub fn compute_pos(&self) -> &[AtomId] {
        &self.compute_pos
    }

    pub fn compute_neg(&self) -> &[AtomId] {
        &self.compute_neg
    }

    pub fn push_compute_pos(&mut self, atom: AtomId) {
        self.compute_pos.push(atom);
    }

    pub fn push_compute_neg(&mut self, atom: AtomId) {
        self.compute_neg.push(atom);
    }

    pub fn models_to_compute(&self) -> u64 {
        self.models
    }

    pub fn set_models_to_compute(&mut self, models: u64) {
        self.models = models;
    }

    /// Hidden atom used to encode integrity constraints in the smodels file.
    pub fn false_atom(&self) -> Option<AtomId> {
        self.false_atom
    }

    /// Declares `atom` as the false marker and lists it in the compute-negative
    /// section if it is not there yet.
    pub fn set_false_atom(&mut self, atom: AtomId) {
        if !self.compute_neg.contains(&atom) {
            self.compute_neg.push(atom);
        }
        self.false_atom = Some(atom);
    }

    /// Ensures a false marker exists whenever the program has constraints,
    /// allocating `max_atom_id + 1` if needed.
    pub fn with_false_atom(mut self) -> Program {
        if self.false_atom.is_none() && self.has_constraints() {
            let fresh = AtomId(self.max_atom_id() + 1);
            self.set_false_atom(fresh);
        }
        self
    }

    /// Atoms occurring in some rule, ascending.
    pub fn atoms(&self) -> BTreeSet<AtomId> {
        self.rules.iter().flat_map(Rule::atoms).collect()
    }

    /// Largest atom number mentioned anywhere (rules, symbols, compute
    /// sections, false marker); 0 for an empty program.
    pub fn max_atom_id(&self) -> u32 {
        let in_rules = self.rules.iter().flat_map(Rule::atoms);
        let others = self
            .symbols
            .keys()
            .chain(&self.compute_pos)
            .chain(&self.compute_neg)
            .copied()
            .chain(self.false_atom);
        in_rules.chain(others).map(AtomId::get).max().unwrap_or(0)
    }

    /// `P^π`: every rule mapped elementwise, duplicates merged. Side
    /// sections are kept as they are.
    pub fn apply_permutation(&self, perm: &AtomPermutation) -> Result<Program, ProgramError> {
        self.check_domain(perm)?;
        let rules = self.rules.iter().map(|r| r.map_atoms(|a| perm.apply(a)));
        Ok(Program {
            rules: rules.collect(),
            ..self.clone_without_rules()
        })
    }

    /// Whether `perm` maps the rule set onto itself.
    pub fn is_symmetry(&self, perm: &AtomPermutation) -> Result<bool, ProgramError> {
        self.check_domain(perm)?;
        // The mapping is injective on rules, so image ⊆ rules implies equality.
        Ok(self
            .rules
            .iter()
            .all(|r| self.rules.contains(&r.map_atoms(|a| perm.apply(a)))))
    }

    fn check_domain(&self, perm: &AtomPermutation) -> Result<(), ProgramError> {
        match self.atoms().into_iter().find(|&a| !perm.covers(a)) {
            Some(a) => Err(ProgramError::PermutationDomain(a)),
            None => Ok(()),
        }
    }

    pub(crate) fn clone_without_rules(&self) -> Program {
        Program {
            rules: IndexSet::new(),
            symbols: self.symbols.clone(),
            compute_pos: self.compute_pos.clone(),
            compute_neg: self.compute_neg.clone(),
            models: self.models,
            false_atom: self.false_atom,
        }
    }

    pub(crate) fn from_parts(
        rules: IndexSet<Rule>,
        symbols: BTreeMap<AtomId, String>,
        compute_pos: Vec<AtomId>,
        compute_neg: Vec<AtomId>,
        models: u64,
        false_atom: Option<AtomId>,
    ) -> Program {
        Program {
            rules,
            symbols,
            compute_pos,
            compute_neg,
            models,
            false_atom,
        }
    }

    /// Human-readable atom label: its symbol if it has one, else its number.
    pub fn label(&self, atom: AtomId) -> String {
        self.name(atom)
            .map(str::to_owned)
            .unwrap_or_else(|| atom.to_string())
    }
}

//! Lex-leader permutation constraints.
//!
//! Atoms are ordered by ascending id, the smallest id being the most
//! significant position, with false < true. For a symmetry `π` the
//! constraint keeps exactly the assignments that are lexicographically no
//! greater than their image under `π`, restricted to the positions in
//! [`lex_index`]. With positions `p₁ … pₘ` and fresh chain atoms `v₂ … vₘ`:
//!
//! ```text
//! ← p₁, not π(p₁).
//! ← v₂.
//! vᵢ ← pᵢ₋₁, pᵢ, not π(pᵢ).
//! vᵢ ← pᵢ, not π(pᵢ₋₁), not π(pᵢ).
//! vᵢ ← pᵢ₋₁, vᵢ₊₁.               (i < m)
//! vᵢ ← vᵢ₊₁, not π(pᵢ₋₁).         (i < m)
//! ```
//!
//! `vᵢ` is derivable exactly when `p₁ … pᵢ₋₁` compare `≥` position-wise
//! and some later position compares `>`. The chain has no terminator: once
//! the positions run out (or are truncated at `k`), nothing more is
//! derivable, which keeps the truncated constraint a weakening of the full
//! one.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::program::{AtomId, Program, Rule};
use crate::symmetry::{AtomPermutation, GeneratorSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SbcError {
    #[error("identity permutation has no lex index")]
    EmptyIndex,
}

/// How many lex-index positions each permutation constraint covers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TruncationK {
    Limited(usize),
    #[default]
    Unbounded,
}

impl TruncationK {
    /// `Limited(k)` for `k ≥ 1`.
    pub fn limited(k: usize) -> Option<TruncationK> {
        (k >= 1).then_some(TruncationK::Limited(k))
    }

    pub fn cap(self, m: usize) -> usize {
        match self {
            TruncationK::Limited(k) => k.min(m),
            TruncationK::Unbounded => m,
        }
    }
}

impl fmt::Display for TruncationK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TruncationK::Limited(k) => write!(f, "{k}"),
            TruncationK::Unbounded => f.write_str("inf"),
        }
    }
}

impl FromStr for TruncationK {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "inf" | "unbounded" | "∞" => Ok(TruncationK::Unbounded),
            _ => s
                .parse::<usize>()
                .ok()
                .and_then(TruncationK::limited)
                .ok_or_else(|| format!("expected a positive integer or `inf`, found {s:?}")),
        }
    }
}

/// Support of `π` without the largest atom of each cycle, ascending.
pub fn lex_index(perm: &AtomPermutation) -> Result<Vec<AtomId>, SbcError> {
    let cycles = perm.cycle_form().cycles;
    if cycles.is_empty() {
        return Err(SbcError::EmptyIndex);
    }
    let mut positions: Vec<AtomId> = cycles
        .into_iter()
        .flat_map(|mut c| {
            let max = c.iter().copied().max().expect("cycles have length ≥ 2");
            c.retain(|&a| a != max);
            c
        })
        .collect();
    positions.sort_unstable();
    Ok(positions)
}

/// Hands out consecutive unused atom ids.
#[derive(Clone, Debug)]
pub struct FreshAtoms {
    next: u32,
}

impl FreshAtoms {
    /// Allocator whose first id is `max_atom_id + 1`.
    pub fn after(max_atom_id: u32) -> FreshAtoms {
        FreshAtoms {
            next: max_atom_id + 1,
        }
    }

    pub fn allocate(&mut self) -> AtomId {
        let id = AtomId::new(self.next).expect("fresh ids are positive");
        self.next += 1;
        id
    }
}

/// Rules realizing one permutation constraint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SbcRuleSet {
    pub rules: Vec<Rule>,
    /// Chain atoms `v₂ … vₘ`, in order.
    pub fresh_atoms: Vec<AtomId>,
    pub generator_tag: usize,
}

pub fn permutation_constraint(
    perm: &AtomPermutation,
    k: TruncationK,
    alloc: &mut FreshAtoms,
) -> Result<SbcRuleSet, SbcError> {
    permutation_constraint_tagged(perm, k, alloc, 0)
}

fn permutation_constraint_tagged(
    perm: &AtomPermutation,
    k: TruncationK,
    alloc: &mut FreshAtoms,
    tag: usize,
) -> Result<SbcRuleSet, SbcError> {
    let mut positions = lex_index(perm)?;
    positions.truncate(k.cap(positions.len()));
    let m = positions.len();
    let img = |a: AtomId| perm.apply(a);

    let mut rules = vec![Rule::constraint([positions[0]], [img(positions[0])])];
    // chain[i] is vᵢ for i in 2..=m, stored at index i - 2
    let chain: Vec<AtomId> = (2..=m).map(|_| alloc.allocate()).collect();
    if m >= 2 {
        rules.push(Rule::constraint([chain[0]], []));
    }
    for i in 2..=m {
        let v = chain[i - 2];
        let (prev, cur) = (positions[i - 2], positions[i - 1]);
        rules.push(Rule::new([v], [prev, cur], [img(cur)]));
        rules.push(Rule::new([v], [cur], [img(prev), img(cur)]));
        if let Some(&next) = chain.get(i - 1) {
            rules.push(Rule::new([v], [prev, next], []));
            rules.push(Rule::new([v], [next], [img(prev)]));
        }
    }
    Ok(SbcRuleSet {
        rules,
        fresh_atoms: chain,
        generator_tag: tag,
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SbcOptions {
    pub k: TruncationK,
    /// Give chain atoms symbol-table names `_sbc(g,i)`.
    pub name_atoms: bool,
}

/// `program` plus one permutation constraint per generator. Chain atoms
/// are numbered after every id already used, in generator order.
pub fn build_sbc(program: &Program, gens: &GeneratorSet, k: TruncationK) -> Program {
    build_sbc_with(
        program,
        gens,
        SbcOptions {
            k,
            name_atoms: false,
        },
    )
    .0
}

/// Like [`build_sbc`], also returning the per-generator rule sets.
pub fn build_sbc_with(
    program: &Program,
    gens: &GeneratorSet,
    opts: SbcOptions,
) -> (Program, Vec<SbcRuleSet>) {
    let mut out = program.clone();
    let mut alloc = FreshAtoms::after(program.max_atom_id());
    let mut sets = Vec::new();
    for (tag, g) in gens.generators().iter().enumerate() {
        let Ok(set) = permutation_constraint_tagged(g, opts.k, &mut alloc, tag) else {
            continue;
        };
        if opts.name_atoms {
            for (i, &v) in set.fresh_atoms.iter().enumerate() {
                out.set_name(v, format!("_sbc({},{})", tag + 1, i + 2));
            }
        }
        out.extend_rules(set.rules.iter().cloned());
        sets.push(set);
    }
    (out, sets)
}

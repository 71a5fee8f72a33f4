//! Atom permutations, their cycle structure, and generator sets verified
//! against a program.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::aut::VertexPermutation;
use crate::graph::VertexMap;
use crate::perm::{self, Closure, Perm};
use crate::program::{AtomId, Program};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SymmetryError {
    #[error("automorphism maps {from}+ to {to}+ but {from}- elsewhere")]
    InconsistentAutomorphism { from: AtomId, to: AtomId },
    #[error("not a bijection on atoms")]
    NotABijection,
}

/// Bijection on atom ids `1..=degree`; ids above `degree` are fixed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomPermutation(Perm);

impl AtomPermutation {
    pub fn identity(degree: u32) -> AtomPermutation {
        AtomPermutation(Perm::identity(degree as usize + 1))
    }

    /// Builds a permutation from an explicit mapping; unmapped atoms are fixed.
    pub fn from_map(
        degree: u32,
        mapping: impl IntoIterator<Item = (AtomId, AtomId)>,
    ) -> Result<AtomPermutation, SymmetryError> {
        let mut images: Vec<u32> = (0..=degree).collect();
        for (from, to) in mapping {
            if from.get() > degree || to.get() > degree {
                return Err(SymmetryError::NotABijection);
            }
            images[from.index()] = to.get();
        }
        Perm::from_images(images)
            .map(AtomPermutation)
            .ok_or(SymmetryError::NotABijection)
    }

    /// Product of the given disjoint cycles.
    pub fn from_cycles(
        degree: u32,
        cycles: &[Vec<AtomId>],
    ) -> Result<AtomPermutation, SymmetryError> {
        let pairs = cycles.iter().flat_map(|c| {
            c.iter()
                .zip(c.iter().cycle().skip(1))
                .map(|(&x, &y)| (x, y))
        });
        let mut seen = BTreeSet::new();
        let mut mapping = Vec::new();
        for (x, y) in pairs {
            if !seen.insert(x) {
                return Err(SymmetryError::NotABijection);
            }
            mapping.push((x, y));
        }
        AtomPermutation::from_map(degree, mapping)
    }

    pub fn as_perm(&self) -> &Perm {
        &self.0
    }

    /// Largest atom id in the explicit domain.
    pub fn degree(&self) -> u32 {
        (self.0.degree() - 1) as u32
    }

    #[inline]
    pub fn apply(&self, atom: AtomId) -> AtomId {
        AtomId::new(self.0.apply(atom.get())).expect("atom 0 is never an image")
    }

    pub fn covers(&self, atom: AtomId) -> bool {
        atom.get() <= self.degree()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    pub fn inverse(&self) -> AtomPermutation {
        AtomPermutation(self.0.inverse())
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &AtomPermutation) -> AtomPermutation {
        AtomPermutation(self.0.then(&other.0))
    }

    pub fn support(&self) -> BTreeSet<AtomId> {
        self.0
            .support()
            .into_iter()
            .filter_map(AtomId::new)
            .collect()
    }

    pub fn cycle_form(&self) -> CycleForm {
        CycleForm {
            cycles: self
                .0
                .cycles()
                .into_iter()
                .map(|c| c.into_iter().filter_map(AtomId::new).collect())
                .collect(),
        }
    }

    pub fn map_set(&self, atoms: &BTreeSet<AtomId>) -> BTreeSet<AtomId> {
        atoms.iter().map(|&a| self.apply(a)).collect()
    }
}

/// Disjoint cycles, each rotated to start at its smallest atom and sorted
/// by that atom. Fixed points are omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleForm {
    pub cycles: Vec<Vec<AtomId>>,
}

impl CycleForm {
    /// Renders e.g. `(2 3)(5 7 9)`, labelling atoms with `label`.
    pub fn render_with(&self, mut label: impl FnMut(AtomId) -> String) -> String {
        if self.cycles.is_empty() {
            return "()".to_owned();
        }
        let mut out = String::new();
        for c in &self.cycles {
            let items: Vec<String> = c.iter().map(|&a| label(a)).collect();
            out.push('(');
            out.push_str(&items.join(" "));
            out.push(')');
        }
        out
    }
}

impl fmt::Display for CycleForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(|a| a.to_string()))
    }
}

/// Atom permutation induced by a graph automorphism: `a ↦ b` where the
/// automorphism sends `a⁺` to `b⁺`.
pub fn project(
    gamma: &VertexPermutation,
    vm: &VertexMap,
) -> Result<AtomPermutation, SymmetryError> {
    let degree = vm.atom_pos.keys().next_back().map_or(0, |a| a.get());
    let mut mapping = Vec::with_capacity(vm.atom_pos.len());
    for (&atom, &pos) in &vm.atom_pos {
        let image_vertex = gamma.apply(pos);
        let image = vm
            .atom_at(image_vertex)
            .ok_or(SymmetryError::InconsistentAutomorphism {
                from: atom,
                to: atom,
            })?;
        if gamma.apply(vm.atom_neg[&atom]) != vm.atom_neg[&image] {
            return Err(SymmetryError::InconsistentAutomorphism {
                from: atom,
                to: image,
            });
        }
        mapping.push((atom, image));
    }
    AtomPermutation::from_map(degree, mapping)
}

/// Ordered list of verified, non-identity program symmetries.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeneratorSet {
    generators: Vec<AtomPermutation>,
}

impl GeneratorSet {
    pub fn empty() -> GeneratorSet {
        GeneratorSet::default()
    }

    /// Keeps the candidates that are non-identity symmetries of `program`.
    /// Returns the set and the number of rejected non-identity candidates.
    pub fn verified(program: &Program, candidates: Vec<AtomPermutation>) -> (GeneratorSet, usize) {
        let mut rejected = 0;
        let generators = candidates
            .into_iter()
            .filter(|g| !g.is_identity())
            .filter(|g| {
                let ok = program.is_symmetry(g).unwrap_or(false);
                rejected += usize::from(!ok);
                ok
            })
            .collect();
        (GeneratorSet { generators }, rejected)
    }

    /// Wraps generators without re-checking them; identities are dropped.
    pub fn new_unchecked(generators: Vec<AtomPermutation>) -> GeneratorSet {
        GeneratorSet {
            generators: generators
                .into_iter()
                .filter(|g| !g.is_identity())
                .collect(),
        }
    }

    pub fn generators(&self) -> &[AtomPermutation] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    fn degree(&self) -> u32 {
        self.generators
            .iter()
            .map(AtomPermutation::degree)
            .max()
            .unwrap_or(0)
    }

    /// Removes generators expressible through the others, when the group
    /// has at most `bound` elements.
    pub fn reduce_redundant(self, bound: usize) -> GeneratorSet {
        let degree = self.degree() as usize + 1;
        let perms = self.generators.into_iter().map(|g| g.0).collect();
        GeneratorSet {
            generators: perm::reduce_redundant(perms, degree, bound)
                .into_iter()
                .map(AtomPermutation)
                .collect(),
        }
    }

    pub fn closure(&self, bound: usize) -> GroupClosure {
        self.closure_on(self.degree(), bound)
    }

    /// Closure with every element on the explicit domain `1..=degree`.
    pub fn closure_on(&self, degree: u32, bound: usize) -> GroupClosure {
        let perms: Vec<Perm> = self.generators.iter().map(|g| g.0.clone()).collect();
        match perm::closure(&perms, degree as usize + 1, bound) {
            Closure::Overflow => GroupClosure::Overflow,
            Closure::Group(elems) => {
                GroupClosure::Group(elems.into_iter().map(AtomPermutation).collect())
            }
        }
    }
}

/// Bounded group closure over atom permutations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupClosure {
    Group(BTreeSet<AtomPermutation>),
    Overflow,
}

impl GroupClosure {
    pub fn order(&self) -> Option<usize> {
        match self {
            GroupClosure::Group(g) => Some(g.len()),
            GroupClosure::Overflow => None,
        }
    }

    pub fn elements(&self) -> Option<&BTreeSet<AtomPermutation>> {
        match self {
            GroupClosure::Group(g) => Some(g),
            GroupClosure::Overflow => None,
        }
    }
}

/// Splits a collection of atom sets into orbits under the group generated
/// by `gens`. Images falling outside `sets` are ignored. Orbits come out
/// sorted, each one sorted internally.
pub fn orbit_of_set(
    sets: &BTreeSet<BTreeSet<AtomId>>,
    gens: &GeneratorSet,
) -> Vec<Vec<BTreeSet<AtomId>>> {
    let items: Vec<&BTreeSet<AtomId>> = sets.iter().collect();
    let index: BTreeMap<&BTreeSet<AtomId>, usize> =
        items.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut parent: Vec<usize> = (0..items.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (i, set) in items.iter().enumerate() {
        for g in gens.generators() {
            let image = g.map_set(set);
            if let Some(&j) = index.get(&image) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut orbits: BTreeMap<usize, Vec<BTreeSet<AtomId>>> = BTreeMap::new();
    for (i, set) in items.iter().enumerate() {
        let root = find(&mut parent, i);
        orbits.entry(root).or_default().push((*set).clone());
    }
    orbits.into_values().collect()
}

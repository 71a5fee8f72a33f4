//! Colour-preserving automorphisms of coloured digraphs.
//!
//! [`automorphism_generators`] runs an individualization-refinement search:
//! the first root-to-leaf path fixes a base `v₁, v₂, …`; for every level,
//! deepest first, each vertex of the target cell that is not yet known to
//! be in the orbit of `vᵢ` is tried, and the subtree below it is searched
//! for a leaf equivalent to the first leaf. Each success is an automorphism
//! fixing `v₁ … vᵢ₋₁`, so the result is a strong generating set for the
//! whole group.

mod brute;
mod partition;

use thiserror::Error;

use crate::graph::{ColouredDigraph, VertexId};
use crate::perm::Perm;
use partition::{Partition, Scratch};

pub use brute::{brute_force_automorphisms, BRUTE_FORCE_LIMIT};

/// Default cap on refinement calls per search.
pub const DEFAULT_NODE_BUDGET: u64 = 2_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AutError {
    #[error("automorphism search exceeded its budget of {0} nodes")]
    SearchBudgetExceeded(u64),
    #[error("graph has {0} vertices; brute force is limited to {BRUTE_FORCE_LIMIT}")]
    TooLarge(usize),
}

/// Ordered list of disjoint, non-empty vertex cells covering the graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedPartition {
    pub cells: Vec<Vec<VertexId>>,
}

impl OrderedPartition {
    pub fn unit(n: usize) -> OrderedPartition {
        OrderedPartition {
            cells: vec![(0..n as VertexId).collect()],
        }
    }

    /// One cell per colour, ascending by colour.
    pub fn by_colour(g: &ColouredDigraph) -> OrderedPartition {
        OrderedPartition {
            cells: Partition::by_colour(g).cells(),
        }
    }

    pub fn is_discrete(&self) -> bool {
        self.cells.iter().all(|c| c.len() == 1)
    }
}

/// Coarsest equitable refinement of `p`: afterwards all vertices of a cell
/// have the same number of out-edges into, and in-edges from, every cell.
/// Cells split in place, fragments ordered by ascending `(in, out)` count.
pub fn refine(g: &ColouredDigraph, p: &OrderedPartition) -> OrderedPartition {
    let mut part = Partition::from_cells(g.vertex_count(), &p.cells);
    let starts: Vec<u32> = part.cell_starts().collect();
    let mut scratch = Scratch::new(g.vertex_count());
    part.refine(g, starts, &mut scratch);
    OrderedPartition {
        cells: part.cells(),
    }
}

/// Bijection on the vertices of one graph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexPermutation(Perm);

impl VertexPermutation {
    pub fn identity(n: usize) -> VertexPermutation {
        VertexPermutation(Perm::identity(n))
    }

    pub fn from_images(images: Vec<VertexId>) -> Option<VertexPermutation> {
        Perm::from_images(images).map(VertexPermutation)
    }

    #[inline]
    pub fn apply(&self, v: VertexId) -> VertexId {
        self.0.apply(v)
    }

    pub fn as_perm(&self) -> &Perm {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    /// Whether this maps `g` onto itself, colours included.
    pub fn is_automorphism_of(&self, g: &ColouredDigraph) -> bool {
        if self.0.degree() != g.vertex_count() {
            return false;
        }
        (0..g.vertex_count() as VertexId).all(|v| {
            let w = self.apply(v);
            g.colour(v) == g.colour(w)
                && g.out_neighbours(v).len() == g.out_neighbours(w).len()
                && g.out_neighbours(v)
                    .iter()
                    .all(|&t| g.has_edge(w, self.apply(t)))
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub node_budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

/// Generators of the colour-preserving automorphism group of `g`.
pub fn automorphism_generators(g: &ColouredDigraph) -> Result<Vec<VertexPermutation>, AutError> {
    automorphism_generators_with(g, SearchOptions::default())
}

pub fn automorphism_generators_with(
    g: &ColouredDigraph,
    opts: SearchOptions,
) -> Result<Vec<VertexPermutation>, AutError> {
    let mut search = Search::new(g, opts);
    search.run()?;
    Ok(search.generators)
}

/// Node of the first path: the partition before individualizing, the target
/// cell and the base vertex chosen from it.
struct Level {
    partition: Partition,
    cell: u32,
    base: VertexId,
}

struct Search<'g> {
    g: &'g ColouredDigraph,
    budget: u64,
    nodes: u64,
    scratch: Scratch,
    levels: Vec<Level>,
    /// Refinement trace hash of the first path after each individualization.
    traces: Vec<u64>,
    first_leaf: Vec<VertexId>,
    generators: Vec<VertexPermutation>,
}

impl<'g> Search<'g> {
    fn new(g: &'g ColouredDigraph, opts: SearchOptions) -> Search<'g> {
        Search {
            g,
            budget: opts.node_budget,
            nodes: 0,
            scratch: Scratch::new(g.vertex_count()),
            levels: Vec::new(),
            traces: Vec::new(),
            first_leaf: Vec::new(),
            generators: Vec::new(),
        }
    }

    fn tick(&mut self) -> Result<(), AutError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(AutError::SearchBudgetExceeded(self.budget));
        }
        Ok(())
    }

    fn child(&mut self, parent: &Partition, v: VertexId) -> Result<(Partition, u64), AutError> {
        self.tick()?;
        let mut p = parent.clone();
        let cell = p.individualize(v);
        let trace = p.refine(self.g, [cell], &mut self.scratch);
        Ok((p, trace))
    }

    fn run(&mut self) -> Result<(), AutError> {
        let n = self.g.vertex_count();
        if n == 0 {
            return Ok(());
        }
        self.tick()?;
        let mut p = Partition::by_colour(self.g);
        let starts: Vec<u32> = p.cell_starts().collect();
        p.refine(self.g, starts, &mut self.scratch);

        while let Some(cell) = p.target_cell() {
            let base = *p.cell(cell).iter().min().expect("non-empty cell");
            let (next, trace) = self.child(&p, base)?;
            self.levels.push(Level {
                partition: std::mem::replace(&mut p, next),
                cell,
                base,
            });
            self.traces.push(trace);
        }
        self.first_leaf = p.labelling().to_vec();

        let mut orbits = Orbits::new(n);
        for depth in (0..self.levels.len()).rev() {
            let level = &self.levels[depth];
            let base = level.base;
            let mut candidates: Vec<VertexId> = level.partition.cell(level.cell).to_vec();
            candidates.sort_unstable();
            let partition = level.partition.clone();
            let mut failed: Vec<VertexId> = Vec::new();
            for w in candidates {
                if w == base || orbits.same(w, base) {
                    continue;
                }
                if failed.iter().any(|&f| orbits.same(w, f)) {
                    continue;
                }
                match self.find_automorphism(&partition, depth, w)? {
                    Some(gamma) => {
                        orbits.absorb(&gamma);
                        self.generators.push(gamma);
                    }
                    None => failed.push(w),
                }
            }
        }
        Ok(())
    }

    /// Searches the subtree obtained by individualizing `w` at `depth` for
    /// a leaf that yields an automorphism with the first leaf.
    fn find_automorphism(
        &mut self,
        parent: &Partition,
        depth: usize,
        w: VertexId,
    ) -> Result<Option<VertexPermutation>, AutError> {
        let (p, trace) = self.child(parent, w)?;
        if trace != self.traces[depth] {
            return Ok(None);
        }
        self.descend(p, depth + 1)
    }

    fn descend(
        &mut self,
        p: Partition,
        depth: usize,
    ) -> Result<Option<VertexPermutation>, AutError> {
        if p.is_discrete() {
            if depth != self.levels.len() {
                return Ok(None);
            }
            return Ok(self.leaf_automorphism(&p));
        }
        let Some(first) = self.levels.get(depth) else {
            return Ok(None);
        };
        let cell = first.cell;
        if p.target_cell() != Some(cell) {
            return Ok(None);
        }
        let mut candidates: Vec<VertexId> = p.cell(cell).to_vec();
        candidates.sort_unstable();
        for u in candidates {
            let (child, trace) = self.child(&p, u)?;
            if trace != self.traces[depth] {
                continue;
            }
            if let Some(gamma) = self.descend(child, depth + 1)? {
                return Ok(Some(gamma));
            }
        }
        Ok(None)
    }

    fn leaf_automorphism(&self, leaf: &Partition) -> Option<VertexPermutation> {
        let mut images = vec![0; self.first_leaf.len()];
        for (&from, &to) in self.first_leaf.iter().zip(leaf.labelling()) {
            images[from as usize] = to;
        }
        let gamma = VertexPermutation(Perm::from_images(images)?);
        gamma.is_automorphism_of(self.g).then_some(gamma)
    }
}

/// Union-find over vertices, merged along the cycles of found generators.
struct Orbits {
    parent: Vec<u32>,
}

impl Orbits {
    fn new(n: usize) -> Orbits {
        Orbits {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let up = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = up;
            x = up;
        }
        x
    }

    fn same(&mut self, x: u32, y: u32) -> bool {
        self.find(x) == self.find(y)
    }

    fn absorb(&mut self, gamma: &VertexPermutation) {
        for v in 0..self.parent.len() as u32 {
            let (a, b) = (self.find(v), self.find(gamma.apply(v)));
            if a != b {
                self.parent[a.max(b) as usize] = a.min(b);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Colour;
    use crate::perm::closure;
    use std::collections::BTreeSet;

    fn uniform(n: usize, edges: &[(u32, u32)]) -> ColouredDigraph {
        ColouredDigraph::new(vec![Colour(1); n], edges.iter().copied())
    }

    fn group_order(g: &ColouredDigraph) -> usize {
        let gens = automorphism_generators(g).unwrap();
        for gamma in &gens {
            assert!(gamma.is_automorphism_of(g));
        }
        let perms: Vec<Perm> = gens.iter().map(|x| x.0.clone()).collect();
        closure(&perms, g.vertex_count(), 1_000_000)
            .order()
            .unwrap()
    }

    #[test]
    fn path_refines_to_singletons() {
        let g = uniform(3, &[(0, 1), (1, 2)]);
        let r = refine(&g, &OrderedPartition::unit(3));
        // (in, out): u = (0,1), w = (1,0), v = (1,1)
        assert_eq!(r.cells, vec![vec![0], vec![2], vec![1]]);
    }

    #[test]
    fn cycle_is_not_split() {
        let g = uniform(3, &[(0, 1), (1, 2), (2, 0)]);
        let r = refine(&g, &OrderedPartition::unit(3));
        assert_eq!(r.cells.len(), 1);
        assert_eq!(group_order(&g), 3);
    }

    #[test]
    fn distinct_colours_give_no_generators() {
        let g = ColouredDigraph::new((1..=5).map(Colour).collect(), [(0, 1), (2, 3)]);
        assert!(automorphism_generators(&g).unwrap().is_empty());
    }

    #[test]
    fn empty_graph() {
        let g = uniform(0, &[]);
        assert!(automorphism_generators(&g).unwrap().is_empty());
    }

    #[test]
    fn complete_graph_gives_symmetric_group() {
        let edges: Vec<(u32, u32)> = (0..5)
            .flat_map(|i| (0..5).filter(move |&j| j != i).map(move |j| (i, j)))
            .collect();
        assert_eq!(group_order(&uniform(5, &edges)), 120);
        assert_eq!(group_order(&uniform(6, &[])), 720);
    }

    #[test]
    fn petersen_graph() {
        let mut edges = Vec::new();
        for i in 0..5u32 {
            for (s, t) in [(i, (i + 1) % 5), (i, i + 5), (i + 5, (i + 2) % 5 + 5)] {
                edges.push((s, t));
                edges.push((t, s));
            }
        }
        assert_eq!(group_order(&uniform(10, &edges)), 120);
    }

    #[test]
    fn budget_is_enforced() {
        let g = uniform(8, &[]);
        let err = automorphism_generators_with(&g, SearchOptions { node_budget: 3 }).unwrap_err();
        assert_eq!(err, AutError::SearchBudgetExceeded(3));
    }

    #[test]
    fn refine_respects_input_cells() {
        let g = uniform(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let p = OrderedPartition {
            cells: vec![vec![2], vec![0, 1, 3]],
        };
        let r = refine(&g, &p);
        assert!(r.is_discrete());
        assert_eq!(r.cells[0], vec![2]);
        let flat: BTreeSet<u32> = r.cells.concat().into_iter().collect();
        assert_eq!(flat.len(), 4);
    }
}

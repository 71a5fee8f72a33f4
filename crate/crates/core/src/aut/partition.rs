use std::collections::hash_map::DefaultHasher;
use std::collections::VecDeque;
use std::hash::{Hash, Hasher};

use crate::graph::{ColouredDigraph, VertexId};

/// Ordered partition stored as one vertex array cut into contiguous cells.
/// A cell is named by the index of its first element.
#[derive(Clone, Debug)]
pub(crate) struct Partition {
    pub elems: Vec<VertexId>,
    pos: Vec<u32>,
    cell_of: Vec<u32>,
    /// `cell_end[start]` is the end of the cell starting at `start`.
    cell_end: Vec<u32>,
    cells: usize,
}

/// Scratch buffers reused across refinements.
#[derive(Default)]
pub(crate) struct Scratch {
    in_count: Vec<u32>,
    out_count: Vec<u32>,
    touched: Vec<VertexId>,
    touched_cells: Vec<u32>,
    in_queue: Vec<bool>,
    keyed: Vec<((u32, u32), VertexId)>,
}

impl Scratch {
    pub fn new(n: usize) -> Scratch {
        Scratch {
            in_count: vec![0; n],
            out_count: vec![0; n],
            in_queue: vec![false; n],
            ..Scratch::default()
        }
    }
}

impl Partition {
    pub fn from_cells(n: usize, cells: &[Vec<VertexId>]) -> Partition {
        let mut p = Partition {
            elems: Vec::with_capacity(n),
            pos: vec![0; n],
            cell_of: vec![0; n],
            cell_end: vec![0; n],
            cells: 0,
        };
        for cell in cells {
            let start = p.elems.len() as u32;
            for &v in cell {
                p.pos[v as usize] = p.elems.len() as u32;
                p.cell_of[v as usize] = start;
                p.elems.push(v);
            }
            p.cell_end[start as usize] = p.elems.len() as u32;
            p.cells += 1;
        }
        assert_eq!(
            p.elems.len(),
            n,
            "cells must cover every vertex exactly once"
        );
        p
    }

    /// Cells grouped by colour, in ascending colour order.
    pub fn by_colour(g: &ColouredDigraph) -> Partition {
        let mut order: Vec<VertexId> = (0..g.vertex_count() as VertexId).collect();
        order.sort_by_key(|&v| (g.colour(v), v));
        let mut cells: Vec<Vec<VertexId>> = Vec::new();
        for v in order {
            match cells.last_mut() {
                Some(cell) if g.colour(cell[0]) == g.colour(v) => cell.push(v),
                _ => cells.push(vec![v]),
            }
        }
        Partition::from_cells(g.vertex_count(), &cells)
    }

    pub fn is_discrete(&self) -> bool {
        self.cells == self.elems.len()
    }

    pub fn cell_starts(&self) -> impl Iterator<Item = u32> + '_ {
        let mut start = 0u32;
        std::iter::from_fn(move || {
            if start as usize >= self.elems.len() {
                return None;
            }
            let s = start;
            start = self.cell_end[s as usize];
            Some(s)
        })
    }

    pub fn cell(&self, start: u32) -> &[VertexId] {
        &self.elems[start as usize..self.cell_end[start as usize] as usize]
    }

    pub fn cells(&self) -> Vec<Vec<VertexId>> {
        self.cell_starts().map(|s| self.cell(s).to_vec()).collect()
    }

    /// First cell with more than one vertex.
    pub fn target_cell(&self) -> Option<u32> {
        self.cell_starts()
            .find(|&s| self.cell_end[s as usize] - s > 1)
    }

    /// Moves `v` to the front of its cell and splits it off as a singleton.
    /// Returns the start of the new singleton cell.
    pub fn individualize(&mut self, v: VertexId) -> u32 {
        let start = self.cell_of[v as usize];
        let end = self.cell_end[start as usize];
        debug_assert!(end - start > 1);
        let at = self.pos[v as usize];
        let first = self.elems[start as usize];
        self.elems.swap(start as usize, at as usize);
        self.pos[first as usize] = at;
        self.pos[v as usize] = start;
        self.cell_end[start as usize] = start + 1;
        self.cell_end[start as usize + 1] = end;
        for i in start + 1..end {
            self.cell_of[self.elems[i as usize] as usize] = start + 1;
        }
        self.cells += 1;
        start
    }

    /// Refines to the coarsest equitable partition finer than `self`, using
    /// the cells in `splitters` as the initial work queue. Returns a hash of
    /// the refinement trace, which depends only on the isomorphism class of
    /// the (graph, partition) pair.
    pub fn refine(
        &mut self,
        g: &ColouredDigraph,
        splitters: impl IntoIterator<Item = u32>,
        scratch: &mut Scratch,
    ) -> u64 {
        let mut hasher = DefaultHasher::new();
        let mut queue: VecDeque<u32> = VecDeque::new();
        for s in splitters {
            if !scratch.in_queue[s as usize] {
                scratch.in_queue[s as usize] = true;
                queue.push_back(s);
            }
        }
        while let Some(w) = queue.pop_front() {
            scratch.in_queue[w as usize] = false;
            let w_end = self.cell_end[w as usize];
            for i in w..w_end {
                let v = self.elems[i as usize];
                for &t in g.out_neighbours(v) {
                    if scratch.in_count[t as usize] == 0 && scratch.out_count[t as usize] == 0 {
                        scratch.touched.push(t);
                    }
                    scratch.in_count[t as usize] += 1;
                }
                for &s in g.in_neighbours(v) {
                    if scratch.in_count[s as usize] == 0 && scratch.out_count[s as usize] == 0 {
                        scratch.touched.push(s);
                    }
                    scratch.out_count[s as usize] += 1;
                }
            }
            scratch.touched_cells.clear();
            for &t in &scratch.touched {
                scratch.touched_cells.push(self.cell_of[t as usize]);
            }
            scratch.touched_cells.sort_unstable();
            scratch.touched_cells.dedup();
            (w, w_end - w).hash(&mut hasher);

            let touched_cells = std::mem::take(&mut scratch.touched_cells);
            for &c in &touched_cells {
                self.split_cell(c, scratch, &mut queue, &mut hasher);
            }
            scratch.touched_cells = touched_cells;

            for &t in &scratch.touched {
                scratch.in_count[t as usize] = 0;
                scratch.out_count[t as usize] = 0;
            }
            scratch.touched.clear();
        }
        self.cells.hash(&mut hasher);
        hasher.finish()
    }

    fn split_cell(
        &mut self,
        start: u32,
        scratch: &mut Scratch,
        queue: &mut VecDeque<u32>,
        hasher: &mut DefaultHasher,
    ) {
        let end = self.cell_end[start as usize];
        if end - start == 1 {
            return;
        }
        scratch.keyed.clear();
        for i in start..end {
            let v = self.elems[i as usize];
            let key = (scratch.in_count[v as usize], scratch.out_count[v as usize]);
            scratch.keyed.push((key, v));
        }
        let first_key = scratch.keyed[0].0;
        if scratch.keyed.iter().all(|&(k, _)| k == first_key) {
            return;
        }
        scratch.keyed.sort_unstable();

        let was_queued = scratch.in_queue[start as usize];
        let mut fragments: Vec<(u32, u32)> = Vec::new();
        let mut frag_start = start;
        for (offset, &(key, v)) in scratch.keyed.iter().enumerate() {
            let i = start + offset as u32;
            if offset > 0 && key != scratch.keyed[offset - 1].0 {
                fragments.push((frag_start, i));
                frag_start = i;
            }
            self.elems[i as usize] = v;
            self.pos[v as usize] = i;
        }
        fragments.push((frag_start, end));

        start.hash(hasher);
        let mut prev_key = None;
        for &(key, _) in scratch.keyed.iter() {
            if prev_key != Some(key) {
                key.hash(hasher);
                prev_key = Some(key);
            }
        }
        for &(s, e) in &fragments {
            (e - s).hash(hasher);
            self.cell_end[s as usize] = e;
            for i in s..e {
                self.cell_of[self.elems[i as usize] as usize] = s;
            }
        }
        self.cells += fragments.len() - 1;

        // Hopcroft: if the parent was not waiting to be used as a splitter,
        // one fragment (the first largest) can be left out.
        let skip = if was_queued {
            None
        } else {
            fragments
                .iter()
                .enumerate()
                .max_by(|a, b| {
                    (a.1 .1 - a.1 .0)
                        .cmp(&(b.1 .1 - b.1 .0))
                        .then(b.0.cmp(&a.0))
                })
                .map(|(i, _)| i)
        };
        for (i, &(s, _)) in fragments.iter().enumerate() {
            if Some(i) != skip && !scratch.in_queue[s as usize] {
                scratch.in_queue[s as usize] = true;
                queue.push_back(s);
            }
        }
    }

    /// Discrete partitions only: vertex at each position.
    pub fn labelling(&self) -> &[VertexId] {
        debug_assert!(self.is_discrete());
        &self.elems
    }
}

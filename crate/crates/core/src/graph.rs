//! Coloured digraph encoding of a program whose colour-preserving
//! automorphisms are exactly the program's symmetries.
//!
//! Each atom `a` gets a positive vertex `a⁺` and a negative vertex `a⁻`
//! joined by `a⁺ → a⁻`. Each rule gets a body vertex `β` with edges from
//! its body literals and edges to the positive vertices of its head atoms;
//! a constraint points at a shared `⊥` vertex instead.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::program::{AtomId, Program, Rule};

/// Vertex colour. Program graphs only use the five named constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Colour(pub u32);

impl Colour {
    pub const POS_LIT: Colour = Colour(1);
    pub const NEG_LIT: Colour = Colour(2);
    pub const BODY: Colour = Colour(3);
    pub const FACT: Colour = Colour(4);
    pub const BOTTOM: Colour = Colour(5);
}

pub type VertexId = u32;

/// Directed graph with coloured vertices `0..vertex_count`, no self-loops
/// and no parallel edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColouredDigraph {
    colours: Vec<Colour>,
    out_adj: Vec<Vec<VertexId>>,
    in_adj: Vec<Vec<VertexId>>,
    edge_count: usize,
}

impl ColouredDigraph {
    /// Builds a graph, dropping self-loops and duplicate edges.
    pub fn new(
        colours: Vec<Colour>,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Self {
        let n = colours.len();
        let edges: BTreeSet<(VertexId, VertexId)> = edges
            .into_iter()
            .filter(|&(s, t)| s != t)
            .inspect(|&(s, t)| assert!((s as usize) < n && (t as usize) < n, "edge out of range"))
            .collect();
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(s, t) in &edges {
            out_adj[s as usize].push(t);
            in_adj[t as usize].push(s);
        }
        ColouredDigraph {
            colours,
            out_adj,
            in_adj,
            edge_count: edges.len(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.colours.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn colour(&self, v: VertexId) -> Colour {
        self.colours[v as usize]
    }

    pub fn colours(&self) -> &[Colour] {
        &self.colours
    }

    /// Sorted out-neighbours.
    pub fn out_neighbours(&self, v: VertexId) -> &[VertexId] {
        &self.out_adj[v as usize]
    }

    /// Sorted in-neighbours.
    pub fn in_neighbours(&self, v: VertexId) -> &[VertexId] {
        &self.in_adj[v as usize]
    }

    pub fn has_edge(&self, s: VertexId, t: VertexId) -> bool {
        self.out_adj[s as usize].binary_search(&t).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(s, ts)| ts.iter().map(move |&t| (s as VertexId, t)))
    }

    /// Line format for external tools: `v <id> <colour>` per vertex, then
    /// `e <src> <dst>` per edge.
    pub fn to_debug_text(&self) -> String {
        let mut out = String::new();
        for (v, c) in self.colours.iter().enumerate() {
            let _ = writeln!(out, "v {} {}", v, c.0);
        }
        for (s, t) in self.edges() {
            let _ = writeln!(out, "e {s} {t}");
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    /// Encode facts by recolouring the head atom instead of a body vertex.
    pub opt_facts: bool,
    /// Encode single-literal bodies by a direct edge.
    pub opt_unary: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            opt_facts: true,
            opt_unary: true,
        }
    }
}

impl BuildOptions {
    pub const PLAIN: BuildOptions = BuildOptions {
        opt_facts: false,
        opt_unary: false,
    };
}

/// Where each atom and rule ended up in the graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VertexMap {
    pub atom_pos: BTreeMap<AtomId, VertexId>,
    pub atom_neg: BTreeMap<AtomId, VertexId>,
    pub body_of_rule: BTreeMap<Rule, VertexId>,
    pub bottom: Option<VertexId>,
    atom_of_pos: BTreeMap<VertexId, AtomId>,
}

impl VertexMap {
    /// Atom whose positive vertex is `v`.
    pub fn atom_at(&self, v: VertexId) -> Option<AtomId> {
        self.atom_of_pos.get(&v).copied()
    }
}

pub fn build_graph(program: &Program, opts: BuildOptions) -> (ColouredDigraph, VertexMap) {
    let mut vm = VertexMap::default();
    let mut colours = Vec::new();
    let mut edges = Vec::new();

    for atom in program.atoms() {
        let pos = colours.len() as VertexId;
        colours.push(Colour::POS_LIT);
        colours.push(Colour::NEG_LIT);
        vm.atom_pos.insert(atom, pos);
        vm.atom_neg.insert(atom, pos + 1);
        vm.atom_of_pos.insert(pos, atom);
        edges.push((pos, pos + 1));
    }

    fn bottom(slot: &mut Option<VertexId>, colours: &mut Vec<Colour>) -> VertexId {
        *slot.get_or_insert_with(|| {
            colours.push(Colour::BOTTOM);
            (colours.len() - 1) as VertexId
        })
    }

    for rule in program.rules() {
        if opts.opt_facts && rule.is_fact() {
            colours[vm.atom_pos[&rule.head()[0]] as usize] = Colour::FACT;
            continue;
        }
        if opts.opt_unary && rule.head().len() <= 1 && rule.body_len() == 1 {
            let source = match (rule.body_pos(), rule.body_neg()) {
                ([b], []) => vm.atom_pos[b],
                ([], [c]) => vm.atom_neg[c],
                _ => unreachable!(),
            };
            let target = match rule.head() {
                [h] => vm.atom_pos[h],
                _ => bottom(&mut vm.bottom, &mut colours),
            };
            // `a ← a` would become a self-loop; it keeps its body vertex.
            if source != target {
                edges.push((source, target));
                continue;
            }
        }
        let beta = colours.len() as VertexId;
        colours.push(Colour::BODY);
        for b in rule.body_pos() {
            edges.push((vm.atom_pos[b], beta));
        }
        for c in rule.body_neg() {
            edges.push((vm.atom_neg[c], beta));
        }
        for h in rule.head() {
            edges.push((beta, vm.atom_pos[h]));
        }
        if rule.is_constraint() {
            let bot = bottom(&mut vm.bottom, &mut colours);
            edges.push((beta, bot));
        }
        vm.body_of_rule.insert(rule.clone(), beta);
    }

    (ColouredDigraph::new(colours, edges), vm)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("size formula does not cover programs with integrity constraints")]
    FormulaInapplicable,
}

/// `(m + 2n, l + n)` for `m` rules and `l` literal occurrences over `n`
/// atoms: the vertex and edge counts of the unoptimized graph.
pub fn graph_size_check(program: &Program) -> Result<(usize, usize), GraphError> {
    if program.has_constraints() {
        return Err(GraphError::FormulaInapplicable);
    }
    let m = program.rule_count();
    let n = program.atoms().len();
    let l: usize = program.rules().map(Rule::literal_count).sum();
    Ok((m + 2 * n, l + n))
}

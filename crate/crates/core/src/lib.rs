//! Symmetry detection and lex-leader symmetry breaking for ground
//! disjunctive logic programs in smodels format.
//!
//! The pipeline reads a program ([`smodels`]), encodes it as a coloured
//! digraph ([`graph`]), computes automorphism group generators ([`aut`]),
//! projects and verifies them as atom permutations ([`symmetry`]) and
//! appends permutation constraints ([`sbc`]). [`oracle`] is a brute-force
//! answer-set enumerator used to check all of this on small programs, and
//! [`bench`] generates the Pigeon Hole and All-interval Series encodings.

pub mod aut;
pub mod bench;
pub mod graph;
pub mod oracle;
pub mod perm;
pub mod pipeline;
pub mod program;
pub mod sbc;
pub mod smodels;
pub mod symmetry;

pub use graph::{build_graph, BuildOptions, ColouredDigraph, VertexMap};
pub use pipeline::{detect_symmetries, preprocess, Config, Detection, Outcome};
pub use program::{AtomId, Program, Rule};
pub use sbc::{build_sbc, TruncationK};
pub use smodels::{parse_smodels, write_smodels};
pub use symmetry::{AtomPermutation, GeneratorSet};

//! End-to-end preprocessing: graph, automorphisms, verified generators,
//! symmetry-breaking constraints.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use crate::aut::{self, AutError, SearchOptions};
use crate::graph::{build_graph, BuildOptions};
use crate::oracle::{self, AnswerSet, CompressionReport, OracleError};
use crate::perm::DEFAULT_CLOSURE_BOUND;
use crate::program::Program;
use crate::sbc::{build_sbc_with, SbcOptions, TruncationK};
use crate::symmetry::{self, orbit_of_set, AtomPermutation, GeneratorSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    pub build: BuildOptions,
    pub search: SearchOptions,
    pub k: TruncationK,
    pub name_sbc_atoms: bool,
    /// Largest group enumerated when reducing generators.
    pub closure_bound: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            build: BuildOptions::default(),
            search: SearchOptions::default(),
            k: TruncationK::Unbounded,
            name_sbc_atoms: false,
            closure_bound: DEFAULT_CLOSURE_BOUND,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StageTimes {
    pub graph: Duration,
    pub search: Duration,
    pub verify: Duration,
    pub sbc: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Detection {
    pub generators: GeneratorSet,
    pub graph_vertices: usize,
    pub graph_edges: usize,
    /// Generators returned by the automorphism search.
    pub raw_generators: usize,
    /// Generators that projected to the identity on atoms.
    pub identity_generators: usize,
    /// Projected generators that failed the symmetry check or could not be
    /// projected. Always zero unless the graph encoding is broken.
    pub rejected_generators: usize,
    pub times: StageTimes,
}

/// Verified, irredundancy-reduced generators of the symmetry group of
/// `program`.
pub fn detect_symmetries(program: &Program, config: &Config) -> Result<Detection, AutError> {
    let mut times = StageTimes::default();
    let t = Instant::now();
    let (graph, vm) = build_graph(program, config.build);
    times.graph = t.elapsed();

    let t = Instant::now();
    let vertex_gens = aut::automorphism_generators_with(&graph, config.search)?;
    times.search = t.elapsed();

    let t = Instant::now();
    let mut identity_generators = 0;
    let mut rejected = 0;
    let mut candidates: Vec<AtomPermutation> = Vec::new();
    for gamma in &vertex_gens {
        match symmetry::project(gamma, &vm) {
            Ok(p) if p.is_identity() => identity_generators += 1,
            Ok(p) => candidates.push(p),
            Err(_) => rejected += 1,
        }
    }
    let (generators, failed) = GeneratorSet::verified(program, candidates);
    let generators = generators.reduce_redundant(config.closure_bound);
    times.verify = t.elapsed();

    Ok(Detection {
        generators,
        graph_vertices: graph.vertex_count(),
        graph_edges: graph.edge_count(),
        raw_generators: vertex_gens.len(),
        identity_generators,
        rejected_generators: rejected + failed,
        times,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub program: Program,
    pub detection: Detection,
    /// Rules added per generator, in generator order.
    pub sbc_rule_counts: Vec<usize>,
}

/// Detects symmetries and appends their permutation constraints.
pub fn preprocess(program: &Program, config: &Config) -> Result<Outcome, AutError> {
    let mut detection = detect_symmetries(program, config)?;
    let t = Instant::now();
    let (augmented, sets) = build_sbc_with(
        program,
        &detection.generators,
        SbcOptions {
            k: config.k,
            name_atoms: config.name_sbc_atoms,
        },
    );
    detection.times.sbc = t.elapsed();
    Ok(Outcome {
        program: augmented,
        detection,
        sbc_rule_counts: sets.iter().map(|s| s.rules.len()).collect(),
    })
}

/// Oracle comparison of a program with its symmetry-broken version.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub compression: CompressionReport,
    /// Every surviving answer set (projected) is an original answer set.
    pub sound: bool,
    /// Every orbit of original answer sets keeps at least one member.
    pub orbits_preserved: bool,
    pub existence_preserved: bool,
    pub orbits: usize,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.sound && self.orbits_preserved && self.existence_preserved
    }
}

fn plural(n: usize) -> &'static str {
    if n == 1 {
        "model"
    } else {
        "models"
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.compression;
        write!(
            f,
            "{} {} → {} {}, compression {:.0}%, sound: {}, orbits preserved: {}, existence preserved: {}",
            c.total_models,
            plural(c.total_models),
            c.surviving_models,
            plural(c.surviving_models),
            c.compression * 100.0,
            yes_no(self.sound),
            yes_no(self.orbits_preserved),
            yes_no(self.existence_preserved),
        )
    }
}

/// Enumerates the answer sets of `original` and `augmented` and checks
/// soundness, orbit completeness and existence preservation.
pub fn verify_sbc(
    original: &Program,
    gens: &GeneratorSet,
    augmented: &Program,
) -> Result<VerifyReport, OracleError> {
    let before = oracle::answer_sets(original)?;
    let after = oracle::project(&oracle::answer_sets(augmented)?, &original.atoms());
    let orbits = orbit_of_set(&before, gens);
    let orbits_preserved = orbits
        .iter()
        .all(|orbit| orbit.iter().any(|m| after.contains(m)));
    Ok(VerifyReport {
        compression: CompressionReport::new(before.len(), after.len()),
        sound: after.is_subset(&before),
        orbits_preserved,
        existence_preserved: before.is_empty() == after.is_empty(),
        orbits: orbits.len(),
    })
}

/// Answer sets of `augmented` restricted to the atoms of `original`.
pub fn survivors(
    original: &Program,
    augmented: &Program,
) -> Result<BTreeSet<AnswerSet>, OracleError> {
    Ok(oracle::project(
        &oracle::answer_sets(augmented)?,
        &original.atoms(),
    ))
}

//! Shared test corpus.

#![allow(dead_code)]

use std::path::PathBuf;

use lpsym::bench::{allint, pigeon, random_program_with};
use lpsym::{parse_smodels, Program};

/// `a ← not b.  b ← not a.`
pub const P1: &[u8] = b"1 2 1 1 3\n1 3 1 1 2\n0\n2 a\n3 b\n0\nB+\n0\nB-\n0\n1\n";

/// `a ; b ←.  ← a, b.` with atom 1 as the false marker.
pub const P2: &[u8] = b"8 2 2 3 0 0\n1 1 2 0 2 3\n0\n2 a\n3 b\n0\nB+\n0\nB-\n1\n0\n1\n";

pub struct Case {
    pub name: String,
    pub program: Program,
}

fn case(name: impl Into<String>, program: Program) -> Case {
    Case {
        name: name.into(),
        program,
    }
}

/// Seeded random programs. The later seeds in each list give programs
/// with two or more answer sets in one orbit.
pub fn random_cases() -> Vec<Case> {
    let with_constraints = [0, 1, 2, 3, 4, 16, 43, 44, 65, 89];
    let without_constraints = [100, 101, 5, 26, 117, 161, 207];
    let mut out = Vec::new();
    for seed in with_constraints {
        out.push(case(
            format!("random{seed}"),
            random_program_with(seed, 8, 12, true),
        ));
    }
    for seed in without_constraints {
        out.push(case(
            format!("random{seed}n"),
            random_program_with(seed, 8, 12, false),
        ));
    }
    out
}

/// Programs small enough for the enumeration oracle.
pub fn micro_corpus() -> Vec<Case> {
    let mut out = vec![
        case("p1", parse_smodels(P1).unwrap()),
        case("p2", parse_smodels(P2).unwrap()),
    ];
    for n in 2..=4 {
        out.push(case(format!("pigeon{n}"), pigeon(n)));
    }
    for n in 4..=5 {
        out.push(case(format!("allint{n}"), allint(n)));
    }
    out.extend(random_cases());
    out
}

/// Micro corpus plus the larger benchmark instances.
pub fn full_corpus() -> Vec<Case> {
    let mut out = micro_corpus();
    for n in 5..=12 {
        out.push(case(format!("pigeon{n}"), pigeon(n)));
    }
    for n in 6..=8 {
        out.push(case(format!("allint{n}"), allint(n)));
    }
    out
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
}

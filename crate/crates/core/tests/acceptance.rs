//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::fs;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use itertools::Itertools;
use lpsym::bench::{allint, pigeon};
use lpsym::graph::graph_size_check;
use lpsym::oracle::{self, AnswerSet};
use lpsym::perm::DEFAULT_CLOSURE_BOUND;
use lpsym::pipeline::{survivors, verify_sbc};
use lpsym::symmetry::GroupClosure;
use lpsym::{
    build_graph, build_sbc, detect_symmetries, parse_smodels, preprocess, write_smodels, AtomId,
    AtomPermutation, BuildOptions, Config, GeneratorSet, Program, Rule, TruncationK,
};

use common::{full_corpus, golden_dir, micro_corpus, Case, P1};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:.1?}, limit {limit:?}"))
}

fn generators(p: &Program) -> GeneratorSet {
    detect_symmetries(p, &Config::default())
        .expect("search within budget")
        .generators
}

fn max_atom(p: &Program) -> u32 {
    p.atoms().last().map_or(0, |a| a.get())
}

fn order(gens: &GeneratorSet, degree: u32) -> Option<usize> {
    gens.closure_on(degree, DEFAULT_CLOSURE_BOUND).order()
}

/// Every permutation of the program's atoms that maps its rules onto
/// themselves, found by trying all of them.
fn brute_force_group(p: &Program) -> BTreeSet<AtomPermutation> {
    let atoms: Vec<AtomId> = p.atoms().into_iter().collect();
    let degree = max_atom(p);
    atoms
        .iter()
        .copied()
        .permutations(atoms.len())
        .map(|image| AtomPermutation::from_map(degree, atoms.iter().copied().zip(image)).unwrap())
        .filter(|g| p.is_symmetry(g).unwrap())
        .collect()
}

fn a1_generator_soundness() -> Check {
    let start = Instant::now();
    let corpus = full_corpus();
    let mut total = 0;
    for Case { name, program } in &corpus {
        for g in generators(program).generators() {
            total += 1;
            ensure(program.is_symmetry(g).unwrap(), || {
                format!("{name}: {} is not a symmetry", g.cycle_form())
            })?;
        }
    }
    within(Duration::from_secs(60), start)?;
    Ok(format!(
        "{total} generators on {} programs verified in {:.1?}",
        corpus.len(),
        start.elapsed()
    ))
}

fn a2_detection_completeness() -> Check {
    let start = Instant::now();
    let mut checked = 0;
    for Case { name, program } in micro_corpus() {
        if program.atoms().len() > 8 {
            continue;
        }
        let expected = brute_force_group(&program);
        let found = generators(&program).closure_on(max_atom(&program), DEFAULT_CLOSURE_BOUND);
        ensure(found.elements() == Some(&expected), || {
            format!(
                "{name}: closure order {:?}, brute force {}",
                found.order(),
                expected.len()
            )
        })?;
        checked += 1;
    }
    within(Duration::from_secs(300), start)?;
    Ok(format!("{checked} programs match brute force exactly"))
}

fn a3_graph_size() -> Check {
    let mut checked = 0;
    for Case { name, program } in full_corpus() {
        match graph_size_check(&program) {
            Ok(expected) => {
                let (g, _) = build_graph(&program, BuildOptions::PLAIN);
                let actual = (g.vertex_count(), g.edge_count());
                ensure(actual == expected, || {
                    format!("{name}: graph {actual:?}, formula {expected:?}")
                })?;
                checked += 1;
            }
            Err(_) => ensure(program.has_constraints(), || {
                format!("{name}: formula rejected a program without constraints")
            })?,
        }
    }
    let p1 = parse_smodels(P1).unwrap();
    let (g, _) = build_graph(&p1, BuildOptions::PLAIN);
    ensure((g.vertex_count(), g.edge_count()) == (6, 6), || {
        format!("P1 graph {:?}", (g.vertex_count(), g.edge_count()))
    })?;
    Ok(format!(
        "{checked} constraint-free programs match; P1 gives (6, 6)"
    ))
}

fn a4_sbc_soundness() -> Check {
    let start = Instant::now();
    let ks = [
        TruncationK::Limited(1),
        TruncationK::Limited(2),
        TruncationK::Unbounded,
    ];
    let mut runs = 0;
    for Case { name, program } in micro_corpus() {
        let gens = generators(&program);
        for k in ks {
            let augmented = build_sbc(&program, &gens, k);
            let report = verify_sbc(&program, &gens, &augmented).map_err(|e| e.to_string())?;
            ensure(report.ok(), || format!("{name}, k = {k}: {report}"))?;
            runs += 1;
        }
    }
    within(Duration::from_secs(600), start)?;
    Ok(format!(
        "{runs} program/k runs sound, orbit-complete and existence-preserving in {:.1?}",
        start.elapsed()
    ))
}

fn a5_pigeon_group() -> Check {
    for (n, expected) in [(3, 12), (4, 144), (5, 2880)] {
        let p = pigeon(n);
        let actual = order(&generators(&p), max_atom(&p));
        ensure(actual == Some(expected), || {
            format!("pigeon({n}): order {actual:?}, expected {expected}")
        })?;
    }
    let p3 = pigeon(3);
    let brute = brute_force_group(&p3);
    ensure(brute.len() == 12, || {
        format!("pigeon(3) brute force order {}", brute.len())
    })?;
    let found = generators(&p3).closure_on(max_atom(&p3), DEFAULT_CLOSURE_BOUND);
    ensure(found.elements() == Some(&brute), || {
        "pigeon(3) group differs from brute force".into()
    })?;
    for n in 2..=4 {
        let p = pigeon(n);
        let out = preprocess(&p, &Config::default()).map_err(|e| e.to_string())?;
        let models = oracle::answer_sets(&out.program).map_err(|e| e.to_string())?;
        ensure(models.is_empty(), || {
            format!("pigeon({n}) with SBC has {} models", models.len())
        })?;
    }
    Ok("orders 12, 144, 2880; n = 3 matches brute force; unsatisfiable with SBC for n ≤ 4".into())
}

fn a6_allint_group() -> Check {
    let mut counts = Vec::new();
    for n in 5..=8 {
        let p = allint(n);
        let gens = generators(&p);
        let actual = order(&gens, max_atom(&p));
        ensure(actual == Some(4), || {
            format!("allint({n}): order {actual:?}")
        })?;
        ensure(gens.len() <= 2, || {
            format!("allint({n}): {} generators", gens.len())
        })?;
        counts.push(gens.len());
    }
    Ok(format!(
        "order 4 for n = 5..8 with generator counts {counts:?}"
    ))
}

fn a7_lex_leader() -> Check {
    let p1 = parse_smodels(P1).unwrap();
    let (a, b) = (AtomId::new(2).unwrap(), AtomId::new(3).unwrap());
    let out = preprocess(&p1, &Config::default()).map_err(|e| e.to_string())?;
    let added: Vec<&Rule> = out
        .program
        .rules()
        .filter(|r| !p1.contains_rule(r))
        .collect();
    let expected = Rule::constraint([a], [b]);
    ensure(added == [&expected], || format!("added rules {added:?}"))?;
    let surviving = survivors(&p1, &out.program).map_err(|e| e.to_string())?;
    let lex_min: AnswerSet = [b].into();
    ensure(surviving == BTreeSet::from([lex_min]), || {
        format!("survivors {surviving:?}")
    })?;
    Ok("single constraint ← a, not b; only {b} survives".into())
}

fn a8_log_bound() -> Check {
    let mut checked = 0;
    for Case { name, program } in full_corpus() {
        let gens = generators(&program);
        if let GroupClosure::Group(elems) =
            gens.closure_on(max_atom(&program), DEFAULT_CLOSURE_BOUND)
        {
            let bound = (elems.len() as f64).log2();
            ensure(gens.len() as f64 <= bound, || {
                format!("{name}: {} generators, order {}", gens.len(), elems.len())
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} enumerable groups within the bound"))
}

/// `(program, total models, surviving models)` at k = ∞.
const COMPRESSION: &[(&str, usize, usize)] = &[
    ("p1", 2, 1),
    ("p2", 2, 1),
    ("pigeon2", 0, 0),
    ("pigeon3", 0, 0),
    ("pigeon4", 0, 0),
    ("allint4", 4, 2),
    ("allint5", 8, 4),
    ("random0", 0, 0),
    ("random1", 1, 1),
    ("random2", 1, 1),
    ("random3", 1, 1),
    ("random4", 1, 1),
    ("random16", 3, 1),
    ("random43", 2, 1),
    ("random44", 3, 2),
    ("random65", 2, 1),
    ("random89", 3, 1),
    ("random100n", 1, 1),
    ("random101n", 1, 1),
    ("random5n", 2, 1),
    ("random26n", 4, 2),
    ("random117n", 2, 1),
    ("random161n", 2, 1),
    ("random207n", 3, 2),
];

fn a9_compression() -> Check {
    let mut seen = 0;
    for Case { name, program } in micro_corpus() {
        let gens = generators(&program);
        let augmented = build_sbc(&program, &gens, TruncationK::Unbounded);
        let report = verify_sbc(&program, &gens, &augmented).map_err(|e| e.to_string())?;
        let c = report.compression;
        if let Some(&(_, total, surviving)) = COMPRESSION.iter().find(|e| e.0 == name) {
            ensure(
                (c.total_models, c.surviving_models) == (total, surviving),
                || {
                    format!(
                        "{name}: {} → {}, frozen {total} → {surviving}",
                        c.total_models, c.surviving_models
                    )
                },
            )?;
            seen += 1;
        }
        let before = oracle::answer_sets(&program).map_err(|e| e.to_string())?;
        let collapsible = lpsym::symmetry::orbit_of_set(&before, &gens)
            .iter()
            .any(|orbit| orbit.len() >= 2);
        ensure(!collapsible || c.compression > 0.0, || {
            format!("{name}: symmetric models but no compression")
        })?;
    }
    ensure(seen == COMPRESSION.len(), || {
        "frozen table names a missing program".into()
    })?;
    Ok(format!(
        "{seen} frozen values reproduced; compression wherever an orbit has two models"
    ))
}

fn a10_format_fidelity() -> Check {
    let dir = golden_dir();
    let mut files = 0;
    for Case { name, program } in micro_corpus() {
        let bytes = write_smodels(&program);
        let golden =
            fs::read(dir.join(format!("{name}.sm"))).map_err(|e| format!("{name}: {e}"))?;
        ensure(bytes == golden, || {
            format!("{name}: output differs from golden file")
        })?;
        let back = parse_smodels(&bytes).map_err(|e| format!("{name}: {e}"))?;
        ensure(back == program, || {
            format!("{name}: round trip changed the program")
        })?;
        ensure(write_smodels(&back) == bytes, || {
            format!("{name}: rewrite changed bytes")
        })?;
        files += 1;
    }
    let p1 = parse_smodels(P1).unwrap();
    ensure(write_smodels(&p1) == P1, || "P1 bytes differ".into())?;
    Ok(format!(
        "{files} golden files byte-equal and round-trip exact"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("A1 generator soundness", a1_generator_soundness),
        ("A2 detection completeness", a2_detection_completeness),
        ("A3 graph size formula", a3_graph_size),
        ("A4 SBC soundness and orbit completeness", a4_sbc_soundness),
        ("A5 pigeon hole group", a5_pigeon_group),
        ("A6 all-interval group", a6_allint_group),
        ("A7 lex-leader example", a7_lex_leader),
        ("A8 generator count bound", a8_log_bound),
        ("A9 compression regression", a9_compression),
        ("A10 format fidelity", a10_format_fidelity),
    ];
    let mut failed = 0;
    for (label, check) in criteria {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        match result {
            Ok(detail) => println!("PASS {label}: {detail} [{took:.2?}]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {label}: {detail} [{took:.2?}]");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

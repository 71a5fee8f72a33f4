//! Benchmark encodings: Pigeon Hole and All-interval Series, plus seeded
//! random programs with planted symmetries for testing.
//!
//! Generated programs carry a symbol table and a false marker atom numbered
//! after all problem atoms, so they round-trip through the smodels writer
//! unchanged.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::program::{AtomId, Program, Rule};

fn atom(id: u32) -> AtomId {
    AtomId::new(id).expect("generated ids start at 1")
}

fn finish(mut p: Program, atoms: u32) -> Program {
    if p.has_constraints() {
        p.set_false_atom(atom(atoms + 1));
    }
    p
}

/// `n` pigeons, `n - 1` holes; `p(i,j)` means pigeon `i` sits in hole `j`.
///
/// ```text
/// p(i,1) ; … ; p(i,n-1) ←.          i ∈ 1..n
/// ← p(i,j), p(k,j).                 i < k, j ∈ 1..n-1
/// ```
pub fn pigeon(n: u32) -> Program {
    assert!(n >= 2, "pigeon needs at least two pigeons");
    let holes = n - 1;
    let p = |i: u32, j: u32| atom((i - 1) * holes + j);
    let mut prog = Program::new();
    for i in 1..=n {
        for j in 1..=holes {
            prog.set_name(p(i, j), format!("p({i},{j})"));
        }
        prog.add_rule(Rule::new((1..=holes).map(|j| p(i, j)), [], []));
    }
    for j in 1..=holes {
        for i in 1..=n {
            for k in i + 1..=n {
                prog.add_rule(Rule::constraint([p(i, j), p(k, j)], []));
            }
        }
    }
    finish(prog, n * holes)
}

/// All-interval Series of length `n`: `v(i,j)` says position `i` holds
/// value `j`, `d(i,l)` says the `i`-th adjacent difference is `l`.
///
/// ```text
/// v(i,0) ; … ; v(i,n-1) ←.             i ∈ 1..n
/// ← v(i,j), v(i,k).                    j < k
/// ← v(i,j), v(k,j).                    i < k
/// d(i,|j-k|) ← v(i,j), v(i+1,k).       j ≠ k
/// ← d(i,j), d(i,k).                    j < k
/// ← d(i,l), d(k,l).                    i < k
/// ```
///
/// v-atoms are numbered first (row-major), then d-atoms.
pub fn allint(n: u32) -> Program {
    assert!(n >= 3, "allint needs n ≥ 3");
    let v = |i: u32, j: u32| atom((i - 1) * n + j + 1);
    let d = |i: u32, l: u32| atom(n * n + (i - 1) * (n - 1) + l);
    let mut prog = Program::new();
    for i in 1..=n {
        for j in 0..n {
            prog.set_name(v(i, j), format!("v({i},{j})"));
        }
    }
    for i in 1..n {
        for l in 1..n {
            prog.set_name(d(i, l), format!("d({i},{l})"));
        }
    }
    for i in 1..=n {
        prog.add_rule(Rule::new((0..n).map(|j| v(i, j)), [], []));
    }
    for i in 1..=n {
        for j in 0..n {
            for k in j + 1..n {
                prog.add_rule(Rule::constraint([v(i, j), v(i, k)], []));
            }
        }
    }
    for j in 0..n {
        for i in 1..=n {
            for k in i + 1..=n {
                prog.add_rule(Rule::constraint([v(i, j), v(k, j)], []));
            }
        }
    }
    for i in 1..n {
        for j in 0..n {
            for k in 0..n {
                if j != k {
                    prog.add_rule(Rule::new([d(i, j.abs_diff(k))], [v(i, j), v(i + 1, k)], []));
                }
            }
        }
    }
    for i in 1..n {
        for j in 1..n {
            for k in j + 1..n {
                prog.add_rule(Rule::constraint([d(i, j), d(i, k)], []));
            }
        }
    }
    for l in 1..n {
        for i in 1..n {
            for k in i + 1..n {
                prog.add_rule(Rule::constraint([d(i, l), d(k, l)], []));
            }
        }
    }
    finish(prog, n * n + (n - 1) * (n - 1))
}

/// Random program over at most `max_atoms` atoms with at most `max_rules`
/// rules. A random atom permutation is planted: rules are added together
/// with their images under it, so the result often has nontrivial
/// symmetries. Deterministic in `seed`.
pub fn random_program(seed: u64, max_atoms: u32, max_rules: usize) -> Program {
    random_program_with(seed, max_atoms, max_rules, true)
}

pub fn random_program_with(
    seed: u64,
    max_atoms: u32,
    max_rules: usize,
    constraints: bool,
) -> Program {
    assert!(max_atoms >= 1 && max_rules >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(max_atoms.min(2)..=max_atoms);
    let mut planted: Vec<u32> = (1..=n).collect();
    if rng.gen_bool(0.3) {
        planted.shuffle(&mut rng);
    } else {
        // a single transposition or 3-cycle keeps orbits short
        let mut pts: Vec<u32> = (1..=n).collect();
        pts.shuffle(&mut rng);
        let len = rng.gen_range(2..=3usize).min(n as usize);
        let moved = &pts[..len];
        for (i, &x) in moved.iter().enumerate() {
            planted[x as usize - 1] = moved[(i + 1) % len];
        }
    }
    let image = |a: AtomId| atom(planted[a.index() - 1]);

    let mut prog = Program::new();
    let mut attempts = 0;
    while prog.rule_count() < max_rules && attempts < 10 * max_rules {
        attempts += 1;
        let pick = |rng: &mut ChaCha8Rng, k: usize| -> Vec<AtomId> {
            (0..k).map(|_| atom(rng.gen_range(1..=n))).collect()
        };
        let head_len = match rng.gen_range(0..10) {
            0 if constraints => 0,
            0..=6 => 1,
            _ => 2,
        };
        let pos_len = rng.gen_range(0..=2);
        let neg_len = rng.gen_range(0..=2);
        let head = pick(&mut rng, head_len);
        let pos = pick(&mut rng, pos_len);
        let neg = pick(&mut rng, neg_len);
        let mut rule = Rule::new(head, pos, neg);
        if rule.is_constraint() && rule.body_len() == 0 {
            continue;
        }
        let mut orbit = Vec::new();
        while !orbit.contains(&rule) {
            orbit.push(rule.clone());
            rule = rule.map_atoms(image);
        }
        if prog.rule_count() + orbit.len() <= max_rules {
            prog.extend_rules(orbit);
        }
    }
    for a in prog.atoms() {
        prog.set_name(a, format!("x{}", a.get()));
    }
    let max = prog.atoms().last().map_or(0, |a| a.get());
    finish(prog, max)
}

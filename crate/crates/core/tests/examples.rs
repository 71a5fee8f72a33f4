mod common;

use std::collections::BTreeSet;

use lpsym::aut::automorphism_generators;
use lpsym::bench::{allint, pigeon};
use lpsym::oracle::{answer_sets, project};
use lpsym::sbc::{build_sbc_with, SbcOptions};
use lpsym::symmetry::{orbit_of_set, project as project_perm};
use lpsym::{
    build_graph, build_sbc, detect_symmetries, parse_smodels, write_smodels, AtomId,
    AtomPermutation, BuildOptions, Config, GeneratorSet, Program, Rule, TruncationK,
};

use common::{P1, P2};

fn a(n: u32) -> AtomId {
    AtomId::new(n).unwrap()
}

fn gens(p: &Program) -> GeneratorSet {
    detect_symmetries(p, &Config::default()).unwrap().generators
}

#[test]
fn p1_graph_swaps_atoms_and_bodies() {
    let p1 = parse_smodels(P1).unwrap();
    let (g, vm) = build_graph(&p1, BuildOptions::PLAIN);
    let found = automorphism_generators(&g).unwrap();
    assert_eq!(found.len(), 1);
    let gamma = &found[0];
    let bodies: Vec<u32> = vm.body_of_rule.values().copied().collect();
    assert_eq!(gamma.apply(vm.atom_pos[&a(2)]), vm.atom_pos[&a(3)]);
    assert_eq!(gamma.apply(vm.atom_neg[&a(2)]), vm.atom_neg[&a(3)]);
    assert_eq!(gamma.apply(bodies[0]), bodies[1]);
    let pi = project_perm(gamma, &vm).unwrap();
    assert_eq!(pi.cycle_form().render_with(|x| p1.label(x)), "(a b)");
}

#[test]
fn p2_projects_to_the_swap() {
    let p2 = parse_smodels(P2).unwrap();
    let found = gens(&p2);
    assert_eq!(found.len(), 1);
    assert_eq!(found.generators()[0].cycle_form().to_string(), "(2 3)");
}

/// The permutation constraint for `(1 2)(3 4)` must exclude exactly the
/// assignments violating `x1 ≤ x2 ∧ (x1 ≥ x2 → x3 ≤ x4)`.
#[test]
fn permutation_constraint_matches_lex_formula() {
    let pi = AtomPermutation::from_cycles(4, &[vec![a(1), a(2)], vec![a(3), a(4)]]).unwrap();
    let mut base = Program::new();
    for x in 1..=4 {
        base.add_rule(Rule::new([a(x)], [], [a(x + 10)]));
        base.add_rule(Rule::new([a(x + 10)], [], [a(x)]));
    }
    let augmented = build_sbc(
        &base,
        &GeneratorSet::new_unchecked(vec![pi]),
        TruncationK::Unbounded,
    );
    let originals: BTreeSet<AtomId> = (1..=4).map(a).collect();
    let surviving = project(&answer_sets(&augmented).unwrap(), &originals);
    let expected: BTreeSet<BTreeSet<AtomId>> = (0u32..16)
        .filter(|bits| {
            let x = |i: u32| bits >> (i - 1) & 1;
            x(1) <= x(2) && (x(1) < x(2) || x(3) <= x(4))
        })
        .map(|bits| {
            (1..=4)
                .filter(|i| bits >> (i - 1) & 1 == 1)
                .map(a)
                .collect()
        })
        .collect();
    assert_eq!(surviving, expected);
}

/// Position reversal and value reflection of the all-interval encoding.
fn allint_maps(n: u32) -> (AtomPermutation, AtomPermutation) {
    let v = |i: u32, j: u32| a((i - 1) * n + j + 1);
    let d = |i: u32, l: u32| a(n * n + (i - 1) * (n - 1) + l);
    let degree = n * n + (n - 1) * (n - 1);
    let mut reverse = Vec::new();
    let mut reflect = Vec::new();
    for i in 1..=n {
        for j in 0..n {
            reverse.push((v(i, j), v(n + 1 - i, j)));
            reflect.push((v(i, j), v(i, n - 1 - j)));
        }
    }
    for i in 1..n {
        for l in 1..n {
            reverse.push((d(i, l), d(n - i, l)));
        }
    }
    (
        AtomPermutation::from_map(degree, reverse).unwrap(),
        AtomPermutation::from_map(degree, reflect).unwrap(),
    )
}

#[test]
fn allint_group_is_reversal_and_reflection() {
    for n in 5..=7 {
        let p = allint(n);
        let (reverse, reflect) = allint_maps(n);
        assert!(p.is_symmetry(&reverse).unwrap());
        assert!(p.is_symmetry(&reflect).unwrap());
        let degree = reverse.degree();
        let expected = GeneratorSet::new_unchecked(vec![reverse, reflect]).closure_on(degree, 100);
        assert_eq!(gens(&p).closure_on(degree, 100), expected);
        assert_eq!(expected.order(), Some(4));
    }
}

#[test]
fn allint_partial_constraints_stay_small() {
    let p = allint(5);
    let found = gens(&p);
    let options = SbcOptions {
        k: TruncationK::Limited(2),
        name_atoms: false,
    };
    let (_, sets) = build_sbc_with(&p, &found, options);
    assert_eq!(sets.len(), found.len());
    for set in &sets {
        assert!(
            !set.rules.is_empty() && set.rules.len() <= 10,
            "{} rules",
            set.rules.len()
        );
    }
}

#[test]
fn allint5_full_breaking_at_least_halves_models() {
    let p = allint(5);
    let found = gens(&p);
    let total = answer_sets(&p).unwrap();
    let surviving = project(
        &answer_sets(&build_sbc(&p, &found, TruncationK::Unbounded)).unwrap(),
        &p.atoms(),
    );
    assert_eq!(total.len(), 8);
    assert!(surviving.len() * 2 <= total.len());
}

/// Orbits computed from generators agree with orbits obtained by applying
/// every element of the enumerated group.
#[test]
fn orbits_agree_with_full_group_action() {
    let p = pigeon(3);
    let mut relaxed = Program::new();
    for r in p.rules().filter(|r| !r.is_constraint()) {
        relaxed.add_rule(r.clone());
    }
    let found = gens(&p);
    let models = answer_sets(&relaxed).unwrap();
    let orbits = orbit_of_set(&models, &found);
    let group = found.closure_on(6, 1000);
    let group = group.elements().unwrap();
    let mut by_group: BTreeSet<BTreeSet<BTreeSet<AtomId>>> = BTreeSet::new();
    for m in &models {
        by_group.insert(
            group
                .iter()
                .map(|g| g.map_set(m))
                .filter(|s| models.contains(s))
                .collect(),
        );
    }
    let by_gens: BTreeSet<BTreeSet<BTreeSet<AtomId>>> = orbits
        .into_iter()
        .map(|o| o.into_iter().collect())
        .collect();
    assert_eq!(by_gens, by_group);
    assert_eq!(models.len(), 8);
}

#[test]
fn constraints_without_marker_get_a_fresh_one() {
    let p = Program::from_rules([
        Rule::new([a(1), a(2)], [], []),
        Rule::constraint([a(1), a(2)], []),
    ]);
    let bytes = write_smodels(&p);
    let back = parse_smodels(&bytes).unwrap();
    assert_eq!(back.false_atom(), Some(a(3)));
    assert!(back.contains_rule(&Rule::constraint([a(1), a(2)], [])));
    assert_eq!(back, p.with_false_atom());
}

#[test]
fn pipeline_output_is_deterministic() {
    let p = allint(6);
    let run = || {
        let out = lpsym::preprocess(&p, &Config::default()).unwrap();
        write_smodels(&out.program)
    };
    assert_eq!(run(), run());
}

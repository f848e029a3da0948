use rsat_core::sampler::{sample_formula, GenConfig};
use rsat_core::{
    find_bicycle, find_snake, solve_2rsat_scc, solve_complete, verify_bicycle, verify_snake,
    Clause, Formula, SearchOutcome, TruthValueSpec,
};

const BUDGET: u64 = 50_000_000;

fn unsat_instances(n: u32, m: usize, distinct: bool, want: usize) -> Vec<Formula> {
    let mut out = Vec::new();
    let mut seed = 0;
    while out.len() < want {
        let f = sample_formula(&GenConfig::new(2, n, m, TruthValueSpec::Continuous, distinct, seed)).unwrap();
        seed += 1;
        if !solve_complete(&f).unwrap().is_sat() {
            out.push(f);
        }
    }
    out
}

#[test]
fn unsat_formulas_contain_bicycles() {
    for (n, m) in [(8, 24), (10, 30), (6, 18)] {
        for f in unsat_instances(n, m, true, 40) {
            match find_bicycle(&f, BUDGET).unwrap() {
                SearchOutcome::Found(c) => assert_eq!(verify_bicycle(&f, &c), Ok(true)),
                other => panic!("no bicycle in an unsat formula: {other:?}"),
            }
        }
    }
}

#[test]
fn bicycle_misses_need_repeated_variable_clauses() {
    // a clause such as (x <= a or x >= b) can make a formula unsat without any
    // chain through distinct variables; dropping such clauses must then leave
    // a satisfiable formula
    let mut missed = 0;
    for f in unsat_instances(8, 24, false, 100) {
        if let SearchOutcome::Found(c) = find_bicycle(&f, BUDGET).unwrap() {
            assert_eq!(verify_bicycle(&f, &c), Ok(true));
            continue;
        }
        missed += 1;
        let kept: Vec<Clause> =
            f.clauses().iter().filter(|c| !c.has_repeated_variable()).cloned().collect();
        let g = Formula::new(2, f.n(), f.vspec(), false, kept).unwrap();
        assert!(solve_complete(&g).unwrap().is_sat());
    }
    eprintln!("no bicycle in {missed}/100 unsat formulas with repeated variables");
}

#[test]
fn no_bicycle_means_sat() {
    for seed in 0..300 {
        let f = sample_formula(&GenConfig::new(2, 8, 10, TruthValueSpec::Finite(3), true, seed)).unwrap();
        if find_bicycle(&f, BUDGET).unwrap() == SearchOutcome::NotFound {
            assert!(solve_complete(&f).unwrap().is_sat(), "seed {seed}");
        }
    }
}

#[test]
fn found_snakes_are_sound() {
    let mut found = 0;
    for seed in 0..40 {
        let f = sample_formula(&GenConfig::new(2, 60, 180, TruthValueSpec::Continuous, false, seed)).unwrap();
        if let SearchOutcome::Found(s) = find_snake(&f, 5_000_000).unwrap() {
            found += 1;
            assert_eq!(verify_snake(&f, &s), Ok(true));
            assert!(!solve_2rsat_scc(&f).unwrap().is_sat());
            assert!(!solve_complete(&f).unwrap().is_sat());
        }
    }
    eprintln!("snakes found in {found}/40 formulas at n = 60, c = 3");
}

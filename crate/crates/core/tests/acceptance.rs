//! Acceptance criteria, one line each. Exact equality throughout; each
//! criterion also has a wall-clock budget.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hecke2::verify::*;
use hecke2::MTable;

struct Criterion {
    id: u32,
    name: &'static str,
    budget_secs: u64,
    run: fn() -> Vec<Check>,
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        id: 1,
        name: "m-table reproduction",
        budget_secs: 60,
        run: || vec![check_m_table(&mut MTable::new())],
    },
    Criterion {
        id: 2,
        name: "dim A(n) = n, n ≤ 64; extra T_p, p ≤ 31",
        budget_secs: 60,
        run: || vec![check_algebra_dimension(64, 31)],
    },
    Criterion {
        id: 3,
        name: "commutant dimension n, n ≤ 32",
        budget_secs: 60,
        run: || vec![check_commutant(32)],
    },
    Criterion {
        id: 4,
        name: "T7, T11, T13, T17 expansions",
        budget_secs: 120,
        run: || vec![check_reference_tp(&mut MTable::new())],
    },
    Criterion {
        id: 5,
        name: "parity pattern and coefficient criteria, p < 1000",
        budget_secs: 300,
        run: || {
            let mut t = MTable::new();
            vec![check_parity_pattern(&mut t, 1000, 8), check_frobenian_criteria(&mut t, 1000)]
        },
    },
    Criterion {
        id: 6,
        name: "theta tables n ≤ 3; identities n ≤ 6 at precision 4096",
        budget_secs: 60,
        run: || vec![check_theta_tables(), check_theta_identities(6, 4096)],
    },
    Criterion {
        id: 7,
        name: "theta and m spans, c=2 n ≤ 4, c=4 n ≤ 3",
        budget_secs: 120,
        run: || vec![check_span_equality(&mut MTable::new(), 4, 3)],
    },
    Criterion {
        id: 8,
        name: "Hecke action on theta, n ≤ 4, p ≤ 100; special relations n ≤ 3",
        budget_secs: 300,
        run: || vec![check_hecke_on_theta(4, 100, 1024), check_special_relations(3, 1024)],
    },
    Criterion {
        id: 9,
        name: "composition groups cyclic of order 2^n, n ≤ 10",
        budget_secs: 10,
        run: || vec![check_composition_groups(10)],
    },
    Criterion {
        id: 10,
        name: "shift/uniqueness, duality roundtrip, Hecke word witnesses, divisibility",
        budget_secs: 120,
        run: || {
            let mut t = MTable::new();
            vec![
                check_shift_action(&mut t, 6),
                check_duality_roundtrip(&mut t, 100, 16, VerifyConfig::default().seed),
                check_hecke_word_witnesses(8),
                check_divisibility(3, 64),
            ]
        },
    },
];

fn main() -> ExitCode {
    let mut failed = 0;
    for c in CRITERIA {
        let start = Instant::now();
        let checks = (c.run)();
        let elapsed = start.elapsed();
        let in_budget = elapsed <= Duration::from_secs(c.budget_secs);
        let ok = in_budget && checks.iter().all(|k| k.passed);
        let status = if ok { "PASS" } else { "FAIL" };
        println!(
            "{status} criterion {:>2}: {} [{:.2?} of {} s]",
            c.id, c.name, elapsed, c.budget_secs
        );
        for k in &checks {
            println!("      {k}");
        }
        if !in_budget {
            println!("      over the time budget");
        }
        if !ok {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

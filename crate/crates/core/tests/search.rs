use kempe_core::generate::{catlin, cycle, random_gnp, wheel};
use kempe_core::search::{search_correct_coloring, SearchBudget, SearchConfig, SearchStatus, Strategy};

fn config(strategy: Strategy, seed: u64, workers: Option<usize>) -> SearchConfig {
    SearchConfig {
        strategy,
        budget: SearchBudget {
            max_swaps: 20_000,
            max_restarts: 8,
            ..SearchBudget::default()
        },
        seed,
        workers,
    }
}

#[test]
fn reports_do_not_depend_on_worker_count() {
    let graphs = [catlin(2, 2).unwrap(), wheel(7).unwrap(), random_gnp(11, 0.5, 3).unwrap()];
    for g in &graphs {
        for strategy in [Strategy::Exhaustive, Strategy::KempeWalk] {
            for q in 3..=6 {
                let one = search_correct_coloring(g, q, &config(strategy, 9, Some(1)));
                let four = search_correct_coloring(g, q, &config(strategy, 9, Some(4)));
                assert_eq!(serde_json::to_string(&one).unwrap(), serde_json::to_string(&four).unwrap());
            }
        }
    }
}

#[test]
fn walk_is_reproducible_for_a_seed() {
    let g = catlin(2, 2).unwrap();
    let a = search_correct_coloring(&g, 6, &config(Strategy::KempeWalk, 5, None));
    let b = search_correct_coloring(&g, 6, &config(Strategy::KempeWalk, 5, None));
    // Wall time is not serialized, so the reports must match byte for byte.
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    assert_eq!(a.status, b.status);
}

#[test]
fn walk_results_are_checked_colorings() {
    for seed in 0..20 {
        let g = random_gnp(10, 0.5, seed).unwrap();
        for q in 2..=5 {
            let out = search_correct_coloring(&g, q, &config(Strategy::KempeWalk, seed, None));
            if let Some((c, k)) = out.found() {
                assert!(c.check_proper(&g).is_ok());
                assert_eq!(c.colors_used(), q);
                assert!(k.validate(&g).is_ok());
            }
        }
    }
}

#[test]
fn exhaustive_budget_is_respected() {
    let g = catlin(2, 2).unwrap();
    let mut cfg = config(Strategy::Exhaustive, 0, None);
    cfg.budget.max_colorings = 3;
    let out = search_correct_coloring(&g, 5, &cfg);
    assert_eq!(out.status, SearchStatus::BudgetExhausted);
    assert!(out.stats.colorings_examined <= 3);
}

#[test]
fn odd_cycles_have_correct_three_colorings() {
    for n in [5, 7, 9, 11] {
        let out = search_correct_coloring(&cycle(n).unwrap(), 3, &config(Strategy::Exhaustive, 0, None));
        assert!(out.found().is_some(), "C{n}");
    }
}

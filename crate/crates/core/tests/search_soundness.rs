//! Screens and grid pruning never lose a quandle; search output is stable.

use std::time::Duration;

use quandle_lab::analysis::{self, Profile};
use quandle_lab::quandle::validate_axioms;
use quandle_lab::search::{
    build_problem, enumerate, exists_profile, prefilter, Certificate, Existence, SearchError, SearchOptions,
    SearchStatus,
};

fn raw() -> SearchOptions {
    SearchOptions {
        prefilter: false,
        use_grid: false,
        ..SearchOptions::default()
    }
}

fn run(key: &str, opts: &SearchOptions) -> quandle_lab::search::SearchOutcome {
    let p: Profile = key.parse().unwrap();
    enumerate(&build_problem(&p, opts)).unwrap()
}

#[test]
fn screened_profiles_are_really_empty() {
    let mut screened = 0;
    for n in 1..=9 {
        for p in Profile::all_of_order(n) {
            if prefilter(&build_problem(&p, &SearchOptions::default())).is_some() {
                screened += 1;
                let out = enumerate(&build_problem(&p, &raw())).unwrap();
                assert!(out.complete(), "{p}");
                assert!(out.quandles.is_empty(), "{p} screened but has a quandle");
            }
        }
    }
    assert_eq!(screened, 12);
}

#[test]
fn grid_search_matches_raw_search() {
    let grid_only = SearchOptions {
        prefilter: false,
        ..SearchOptions::default()
    };
    for n in 1..=9 {
        for p in Profile::all_of_order(n) {
            let a = enumerate(&build_problem(&p, &grid_only)).unwrap();
            let b = enumerate(&build_problem(&p, &raw())).unwrap();
            assert!(a.complete() && b.complete(), "{p}");
            assert_eq!(a.quandles, b.quandles, "{p}");
            assert!(a.nodes_explored <= b.nodes_explored, "{p}");
        }
    }
}

#[test]
fn emitted_quandles_meet_the_contract() {
    for key in ["1,2,6", "1,1,4", "1,3,3", "1,4,4", "1,1,2,2,2"] {
        let out = run(key, &SearchOptions::default());
        for q in &out.quandles {
            assert!(validate_axioms(&q.rows()).valid());
            assert!(analysis::is_connected(q));
            assert_eq!(analysis::profile(q).unwrap().key(), key);
            assert!(analysis::is_canonical(q));
        }
        for (k, q) in out.quandles.iter().enumerate() {
            assert!(out.quandles[..k].iter().all(|p| !analysis::are_isomorphic(p, q)), "{key}");
        }
    }
}

#[test]
fn worker_count_does_not_change_output() {
    for key in ["1,2,6", "1,4,4,4", "1,5,5"] {
        let outs: Vec<String> = [1, 2, 8]
            .iter()
            .map(|&w| {
                run(
                    key,
                    &SearchOptions {
                        workers: w,
                        ..SearchOptions::default()
                    },
                )
                .to_string()
            })
            .collect();
        assert!(outs.windows(2).all(|w| w[0] == w[1]), "{key}");
    }
}

#[test]
fn two_fixed_point_shapes_are_empty() {
    // (1,1,2,3,6) is the only (1,1,2,3,x) within the default bound that
    // survives the screens
    let survivors: Vec<usize> = (3..=6)
        .filter(|x| {
            let p: Profile = format!("1,1,2,3,{x}").parse().unwrap();
            prefilter(&build_problem(&p, &SearchOptions::default())).is_none()
        })
        .collect();
    assert_eq!(survivors, [6]);
    let out = run("1,1,2,3,6", &SearchOptions::default());
    assert!(out.complete() && out.quandles.is_empty());
    assert!(matches!(out.certificate, Some(Certificate::Exhaustive { .. })));
    for opts in [raw(), SearchOptions { prefilter: false, ..SearchOptions::default() }] {
        let out = run("1,1,2,3,5", &opts);
        assert!(out.complete() && out.quandles.is_empty());
        assert!(matches!(out.certificate, Some(Certificate::Exhaustive { .. })));
    }
    // two fixed points and three mutually non-dividing lengths: passes every screen, above the default bound
    let big = SearchOptions {
        max_order: 33,
        ..SearchOptions::default()
    };
    let p: Profile = "1,1,6,10,15".parse().unwrap();
    assert!(prefilter(&build_problem(&p, &big)).is_none());
    assert!(matches!(exists_profile(&p, &big).unwrap(), Existence::No(Certificate::Exhaustive { .. })));
}

#[test]
fn budgets_are_reported_not_hidden() {
    let tight = SearchOptions {
        node_limit: 50,
        max_order: 15,
        ..SearchOptions::default()
    };
    let out = run("1,2,4,4,4", &tight);
    assert_eq!(out.status, SearchStatus::BudgetExhausted);
    assert!(out.certificate.is_none());
    assert!(out.to_string().contains("status: budget-exhausted"));
    let p: Profile = "1,2,4,4,4".parse().unwrap();
    assert_eq!(exists_profile(&p, &tight).unwrap(), Existence::Unknown);
    let timed = SearchOptions {
        time_limit: Duration::ZERO,
        max_order: 15,
        ..SearchOptions::default()
    };
    assert_eq!(run("1,2,4,4,4", &timed).status, SearchStatus::BudgetExhausted);
}

#[test]
fn order_bound_is_enforced() {
    let p: Profile = "1,2,3,4,5".parse().unwrap();
    assert_eq!(
        enumerate(&build_problem(&p, &SearchOptions::default())),
        Err(SearchError::OrderTooLarge { order: 15, bound: 13 })
    );
}

#[test]
fn existence_verdicts() {
    let d = SearchOptions::default();
    let p = |k: &str| k.parse::<Profile>().unwrap();
    assert_eq!(exists_profile(&p("1,2,3,5"), &d).unwrap(), Existence::No(Certificate::QuasiHayashi));
    match exists_profile(&p("1,2,6"), &d).unwrap() {
        Existence::Yes(q) => assert_eq!(analysis::profile(&q).unwrap().key(), "1,2,6"),
        other => panic!("{other:?}"),
    }
    let out = run("1,2,3", &raw());
    assert!(out.complete() && out.quandles.is_empty());
}

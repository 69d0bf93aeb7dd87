//! Record enumeration results in the append-only store and read them back.
//!
//! Uses $QUANDLE_LAB_STORE when set, otherwise a temporary file.

use quandle_lab::search::{build_problem, enumerate, SearchOptions};
use quandle_lab::store::{ResultRecord, ResultStore};

fn main() {
    let dir = std::env::temp_dir().join("quandle-lab-example");
    std::fs::create_dir_all(&dir).unwrap();
    let fallback = dir.join("results.log");
    let store = ResultStore::locate(None).unwrap_or_else(|_| ResultStore::open(&fallback));
    println!("store: {}", store.path().display());

    for key in ["1,2,6", "1,1,4"] {
        let tight = SearchOptions { node_limit: 3, ..SearchOptions::default() };
        let p = key.parse().unwrap();
        let partial = enumerate(&build_problem(&p, &tight)).unwrap();
        store.store_result(&ResultRecord::from_outcome(&partial)).unwrap();
        let full = enumerate(&build_problem(&p, &SearchOptions::default())).unwrap();
        store.store_result(&ResultRecord::from_outcome(&full)).unwrap();

        let best = &store.query_results(key).unwrap()[0];
        println!("{}", best.to_line());
        println!("digests match a fresh run: {}", best.matches(&full.quandles));
    }
}

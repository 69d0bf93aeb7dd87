//! Audit every profile up to an order, first with the screens and then with
//! plain search.
//!
//! cargo run --release --example hayashi_audit -- 9

use quandle_lab::search::{audit_hayashi, SearchOptions};

fn main() {
    let max_n = std::env::args().nth(1).map_or(9, |s| s.parse().expect("an order"));
    let screened = audit_hayashi(max_n, &SearchOptions::default()).unwrap();
    print!("{screened}");
    let raw = SearchOptions {
        prefilter: false,
        use_grid: false,
        ..SearchOptions::default()
    };
    println!("\nwithout screens:");
    println!("{}", audit_hayashi(max_n, &raw).unwrap().verdict_line());
}

//! Enumerate connected quandles with a profile.
//!
//! cargo run --release --example enumerate_profile -- 1,2,3,6

use quandle_lab::analysis::Profile;
use quandle_lab::search::{build_problem, enumerate, presentation_check, SearchOptions};

fn main() {
    let p: Profile = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "1,1,4".into())
        .parse()
        .expect("profile like 1,1,4");
    let options = SearchOptions {
        max_order: p.order().max(13),
        ..SearchOptions::default()
    };
    let out = enumerate(&build_problem(&p, &options)).expect("order within bound");
    print!("{out}");
    for q in &out.quandles {
        presentation_check(q).expect("presentation identities hold");
    }
}

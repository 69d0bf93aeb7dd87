//! Derive the block grid for a profile and check it against a concrete
//! quandle.
//!
//! cargo run --example cycle_table -- 1,2,6

use quandle_lab::analysis::{self, Profile};
use quandle_lab::constraints::{derive_cycle_table, observed_cycle_table, verify_cycle_table};
use quandle_lab::fixtures;

fn main() {
    let p: Profile = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "1,2,6".into())
        .parse()
        .expect("profile like 1,2,6");
    let latin = p.pairwise_distinct();
    let grid = derive_cycle_table(&p, latin);
    println!("derived grid for {p} (latin = {latin}):\n{grid}");

    let q = fixtures::q_9_4();
    println!("published grid:\n{}", fixtures::q_9_4_cycle_table());
    println!("observed products:\n{}", observed_cycle_table(&q).unwrap());
    if analysis::profile(&q).unwrap() == p {
        match verify_cycle_table(&q, &grid).unwrap() {
            None => println!("the order 9 table satisfies the derived grid"),
            Some(cx) => println!("counterexample: {cx}"),
        }
    }
}

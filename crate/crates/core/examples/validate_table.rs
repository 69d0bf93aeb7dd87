//! Parse a table file (or the built-in order 9 table) and report the axioms.
//!
//! cargo run --example validate_table -- [path]

use quandle_lab::{fixtures, validate_axioms, QuandleTable};

fn main() {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(&path).expect("readable file"),
        None => fixtures::Q_9_4_TEXT.to_string(),
    };
    match QuandleTable::parse(&text) {
        Ok(q) => println!("valid, order {}", q.order()),
        Err(e) => println!("rejected: {e}"),
    }

    // break idempotency on purpose
    let mut rows = fixtures::q_9_4().rows();
    rows[0][0] = 2;
    println!("edited diagonal: {}", validate_axioms(&rows));
}

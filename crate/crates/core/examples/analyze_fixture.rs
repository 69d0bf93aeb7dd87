//! Structure report for every embedded fixture.

use quandle_lab::analysis::AnalysisReport;
use quandle_lab::fixtures;

fn main() {
    for fx in fixtures::all_fixtures() {
        println!("## {} ({})", fx.name, fx.source);
        print!("{}", AnalysisReport::of(&fx.table).expect("fixture analyses"));
        let r1 = fx.table.right_translation(1).unwrap();
        println!("R_1: {r1}");
        println!("L_1: {:?}", fx.table.left_translation_map(1).unwrap());
        println!();
    }
}

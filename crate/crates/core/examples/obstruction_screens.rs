//! The arithmetic screens on a few profiles, plus the case count formula.

use quandle_lab::analysis::Profile;
use quandle_lab::constraints::{case_count, lcm_screen, prop3_hypothesis_match, quasi_hayashi};

fn main() {
    for s in ["1,2,3", "1,2,2,3", "1,2,3,5", "1,2,6", "1,2,3,6", "1,2,4,4,4", "1,1,6,10,15", "1,2,2,3,5"] {
        let p: Profile = s.parse().unwrap();
        let lcm = match lcm_screen(&p) {
            None => "no obstructing split".to_string(),
            Some(part) => format!("P={:?} Q={:?} gives p={} q={}", part.p_set, part.q_set, part.p, part.q),
        };
        println!(
            "{s:<14} quasi-Hayashi: {:<18} lcm: {lcm:<40} single-repeat shape: {}",
            quasi_hayashi(&p).to_string(),
            prop3_hypothesis_match(&p)
        );
    }
    for c in 3..=6 {
        println!("c = {c}: {} cases", case_count(c));
    }
}

//! Scramble a quandle, recover its canonical form and test isomorphism.

use quandle_lab::analysis::{are_isomorphic, canonical_relabel, find_isomorphism};
use quandle_lab::{fixtures, Permutation, QuandleTable};
use rand::seq::SliceRandom;
use rand::SeedableRng;

fn main() {
    let q = fixtures::q_9_4();
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    let mut images: Vec<usize> = (1..=9).collect();
    images.shuffle(&mut rng);
    let sigma = Permutation::from_images(&images).unwrap();
    let scrambled = q.relabel(&sigma);
    println!("relabeling {sigma}\n{scrambled}");

    let (c1, _) = canonical_relabel(&q).unwrap();
    let (c2, map) = canonical_relabel(&scrambled).unwrap();
    println!("canonical form (relabeling {map}):\n{c2}");
    println!("same canonical form: {}", c1 == c2);
    println!("R_1 of the canonical form: {}", c2.right_translation(1).unwrap());

    let trivial = QuandleTable::trivial(3);
    let other = trivial.relabel(&Permutation::from_cycles(3, &[vec![1, 3]]).unwrap());
    println!("trivial quandles isomorphic: {}", are_isomorphic(&trivial, &other));
    println!("order 9 vs trivial: {}", are_isomorphic(&q, &QuandleTable::trivial(9)));
    println!("explicit isomorphism: {:?}", find_isomorphism(&q, &scrambled).map(|p| p.to_string()));
}

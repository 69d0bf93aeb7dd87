//! Shared corpus and property checks for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::OnceLock;

use quandle_lab::analysis::{self, Profile};
use quandle_lab::constraints::{self, block_layout, derive_cycle_table};
use quandle_lab::fixtures;
use quandle_lab::search::{self, SearchOptions};
use quandle_lab::{ElementSet, QuandleTable};

/// Profiles above order 9 whose classes join the corpus. Each completes in
/// well under a second.
pub const EXTRA_PROFILES: &[&str] = &["1,5,5", "1,10", "1,2,3,6", "1,1,1,1,4,4", "1,12", "1,6,6"];

pub fn options() -> SearchOptions {
    SearchOptions::default()
}

/// Every connected fixture plus every enumerated class of order at most 9
/// and of [`EXTRA_PROFILES`].
pub fn corpus() -> &'static [(String, QuandleTable)] {
    static CORPUS: OnceLock<Vec<(String, QuandleTable)>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let mut out = Vec::new();
        for fx in fixtures::all_fixtures() {
            if analysis::is_connected(&fx.table) {
                out.push((format!("fixture {}", fx.name), fx.table));
            }
        }
        for n in 1..=9 {
            let (qs, complete) = search::enumerate_order(n, &options()).unwrap();
            assert!(complete, "order {n} enumeration incomplete");
            for (k, q) in qs.into_iter().enumerate() {
                out.push((format!("order {n} #{}", k + 1), q));
            }
        }
        for key in EXTRA_PROFILES {
            let p: Profile = key.parse().unwrap();
            let res = search::enumerate(&search::build_problem(&p, &options())).unwrap();
            assert!(res.complete(), "{key} enumeration incomplete");
            for (k, q) in res.quandles.into_iter().enumerate() {
                out.push((format!("profile {key} #{}", k + 1), q));
            }
        }
        out
    })
}

/// Right translations all share one cycle structure and rows all share one
/// injectivity pattern.
pub fn uniformity(q: &QuandleTable) -> Result<(), String> {
    let shapes: BTreeSet<_> = q.right_translations().iter().map(|r| r.cycle_structure()).collect();
    if shapes.len() != 1 {
        return Err(format!("{} distinct cycle structures", shapes.len()));
    }
    let patterns: BTreeSet<_> = (1..=q.order())
        .map(|i| analysis::InjectivityPattern::of_map(&q.left_translation_map(i).unwrap()))
        .collect();
    if patterns.len() != 1 {
        return Err(format!("{} distinct injectivity patterns", patterns.len()));
    }
    Ok(())
}

/// `R_{R_i(j)} = R_i R_j R_i^{-1}` for all `i, j`.
pub fn conjugation(q: &QuandleTable) -> Result<(), String> {
    let r = q.right_translations();
    let n = q.order();
    for i in 1..=n {
        let inv = r[i - 1].inverse();
        for j in 1..=n {
            let rhs = r[i - 1].compose(&r[j - 1]).unwrap().compose(&inv).unwrap();
            if r[q.op(j, i) - 1] != rhs {
                return Err(format!("fails at i={i}, j={j}"));
            }
        }
    }
    Ok(())
}

fn canonical(q: &QuandleTable) -> (QuandleTable, Profile) {
    let (c, _) = analysis::canonical_relabel(q).unwrap();
    let p = analysis::profile(&c).unwrap();
    (c, p)
}

/// The block of `x * y` has a length dividing lcm of the lengths of the
/// blocks of `x` and `y`.
pub fn divisibility(q: &QuandleTable) -> Result<(), String> {
    let (c, p) = canonical(q);
    let lay = block_layout(&p);
    let len = |x: usize| p.length(lay.block_of(x));
    for x in 1..=c.order() {
        for y in 1..=c.order() {
            let m = constraints::lcm(len(x), len(y));
            if !m.is_multiple_of(len(c.op(x, y))) {
                return Err(format!("{x}*{y}={} breaks divisibility", c.op(x, y)));
            }
        }
    }
    Ok(())
}

/// For a singleton block `{i_t}` and any block `C_u`, each image `i_t * x`
/// with `x` in `C_u` lies in a block `C_v` and has exactly `l_u / l_v`
/// preimages in `C_u`. Returns how many `(t, u)` pairs had images in more
/// than one block.
pub fn singleton_preimages(q: &QuandleTable) -> Result<usize, String> {
    let (c, p) = canonical(q);
    let lay = block_layout(&p);
    let mut spanning = 0;
    for t in (1..=p.cycles()).filter(|&t| p.length(t) == 1) {
        let it = *lay.block(t).start();
        for u in 1..=p.cycles() {
            let mut hits = vec![0usize; c.order() + 1];
            for x in lay.block(u) {
                hits[c.op(it, x)] += 1;
            }
            let blocks: BTreeSet<usize> = (1..=c.order()).filter(|&v| hits[v] > 0).map(|v| lay.block_of(v)).collect();
            if blocks.len() > 1 {
                spanning += 1;
            }
            for v in (1..=c.order()).filter(|&v| hits[v] > 0) {
                let lv = p.length(lay.block_of(v));
                if p.length(u) % lv != 0 || hits[v] != p.length(u) / lv {
                    return Err(format!("{it}*C_{u} hits {v} {} times", hits[v]));
                }
            }
        }
    }
    Ok(spanning)
}

/// If two subquandles cover the quandle, one of them is everything.
pub fn union_property(q: &QuandleTable) -> Result<(), String> {
    let subs = q.all_subquandles().map_err(|e| e.to_string())?;
    let full = ElementSet::full(q.order());
    for (a, y) in subs.iter().enumerate() {
        for z in &subs[a..] {
            if y.union(*z) == full && *y != full && *z != full {
                return Err(format!("{y:?} and {z:?} cover"));
            }
        }
    }
    Ok(())
}

/// The fixed set of `R_x^p` is a nonempty subquandle for every `x` and
/// `0 <= p <= n`.
pub fn fixed_point_closure(q: &QuandleTable) -> Result<(), String> {
    for x in 1..=q.order() {
        for p in 0..=q.order() as i64 {
            let f = q.fixed_point_subquandle(x, p).map_err(|e| e.to_string())?;
            if !f.contains(x) || !q.is_subquandle(f).map_err(|e| e.to_string())? {
                return Err(format!("Fix(R_{x}^{p}) not closed"));
            }
        }
    }
    Ok(())
}

/// Pairwise distinct cycle lengths force a latin quandle.
pub fn distinct_lengths_latin(q: &QuandleTable) -> Result<(), String> {
    let p = analysis::profile(q).map_err(|e| e.to_string())?;
    if p.pairwise_distinct() && !analysis::is_latin(q) {
        return Err(format!("profile {p} but not latin"));
    }
    Ok(())
}

/// The canonical form lies inside the derived cycle grid for its profile.
pub fn grid_containment(q: &QuandleTable) -> Result<(), String> {
    let (c, p) = canonical(q);
    let grid = derive_cycle_table(&p, analysis::is_latin(&c));
    match constraints::verify_cycle_table(&c, &grid).map_err(|e| e.to_string())? {
        None => Ok(()),
        Some(bad) => Err(bad.to_string()),
    }
}

/// A profile of the equal-pair shape forces a pattern with maximum at
/// most 2.
pub fn equal_pair_pattern(q: &QuandleTable) -> Result<(), String> {
    let p = analysis::profile(q).map_err(|e| e.to_string())?;
    let pat = analysis::injectivity_pattern(q).map_err(|e| e.to_string())?;
    if constraints::prop3_hypothesis_match(&p) && pat.largest() > 2 {
        return Err(format!("profile {p} with pattern {pat:?}"));
    }
    Ok(())
}

pub fn presentation(q: &QuandleTable) -> Result<(), String> {
    let (c, _) = canonical(q);
    search::presentation_check(&c)
}

pub type Check = fn(&QuandleTable) -> Result<(), String>;

/// The property suite, by name.
pub fn suite() -> Vec<(&'static str, Check)> {
    vec![
        ("uniformity", uniformity),
        ("conjugation", conjugation),
        ("divisibility", divisibility),
        ("singleton preimages", |q| singleton_preimages(q).map(|_| ())),
        ("union property", union_property),
        ("fixed-point closure", fixed_point_closure),
        ("distinct lengths latin", distinct_lengths_latin),
    ]
}

/// Runs `checks` on every corpus member and returns the failures.
pub fn failures(checks: &[(&'static str, Check)]) -> Vec<String> {
    let mut bad = Vec::new();
    for (name, q) in corpus() {
        for (prop, check) in checks {
            if let Err(e) = check(q) {
                bad.push(format!("{name}: {prop}: {e}"));
            }
        }
    }
    bad
}

//! Block layouts, lcm obstructions and cycle quandle tables.
//!
//! Blocks are the cycles of the canonical `R_1`, numbered `1..=c` in profile
//! order. A cycle quandle table bounds, for every pair of blocks `(t, u)`, the
//! blocks that products `x * y` with `x` in `C_t` and `y` in `C_u` can land in.

use std::fmt;
use std::ops::RangeInclusive;

use thiserror::Error;

use crate::analysis::{self, Profile};
use crate::quandle::{ElementSet, QuandleTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstraintError {
    #[error("block index {index} out of range (profile has {blocks} blocks)")]
    BlockOutOfRange { index: usize, blocks: usize },
    #[error("l_{v} = {lv} does not divide l_{u} = {lu}")]
    Divisibility { u: usize, v: usize, lu: usize, lv: usize },
    #[error("table is not in canonical block form: {0}")]
    LabelForm(String),
    #[error("P and Q do not cover the length set")]
    NotAPartition,
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// lcm of a list, 1 for the empty list.
pub fn lcm_of(xs: &[usize]) -> usize {
    xs.iter().fold(1, |acc, &x| lcm(acc, x))
}

fn divides(a: usize, b: usize) -> bool {
    b.is_multiple_of(a)
}

/// The partition of `{1..n}` into the cycles of the canonical `R_1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockLayout {
    pub profile: Profile,
    /// `a_0 .. a_c`, partial sums of the lengths.
    pub a: Vec<usize>,
    /// `a_1' .. a_c'`, first element of each block.
    pub a_prime: Vec<usize>,
    pub blocks: Vec<RangeInclusive<usize>>,
}

pub fn block_layout(p: &Profile) -> BlockLayout {
    let mut a = vec![0];
    for &l in p.lengths() {
        a.push(a.last().unwrap() + l);
    }
    let a_prime: Vec<usize> = a[..p.cycles()].iter().map(|x| x + 1).collect();
    let blocks: Vec<_> = (0..p.cycles()).map(|s| a_prime[s]..=a[s + 1]).collect();
    let layout = BlockLayout {
        profile: p.clone(),
        a,
        a_prime,
        blocks,
    };
    debug_assert!(layout.is_partition());
    layout
}

impl BlockLayout {
    pub fn cycles(&self) -> usize {
        self.blocks.len()
    }

    pub fn order(&self) -> usize {
        self.a[self.cycles()]
    }

    /// `C_s` for 1-based `s`.
    pub fn block(&self, s: usize) -> RangeInclusive<usize> {
        self.blocks[s - 1].clone()
    }

    /// The block containing label `x`.
    pub fn block_of(&self, x: usize) -> usize {
        self.a.partition_point(|&a| a < x)
    }

    /// Labels in the union of the given blocks.
    pub fn elements(&self, blocks: BlockSet) -> ElementSet {
        blocks.iter().flat_map(|s| self.block(s)).collect()
    }

    fn is_partition(&self) -> bool {
        let mut next = 1;
        for (s, b) in self.blocks.iter().enumerate() {
            if *b.start() != next || b.clone().count() != self.profile.lengths()[s] {
                return false;
            }
            next = b.end() + 1;
        }
        next == self.order() + 1
    }
}

/// A set of 1-based block indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct BlockSet(u64);

impl BlockSet {
    pub fn empty() -> Self {
        BlockSet(0)
    }

    /// `{1..c}`.
    pub fn full(c: usize) -> Self {
        if c == 64 {
            BlockSet(u64::MAX)
        } else {
            BlockSet((1u64 << c) - 1)
        }
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, s: usize) -> bool {
        (1..=64).contains(&s) && self.0 >> (s - 1) & 1 == 1
    }

    pub fn insert(&mut self, s: usize) {
        self.0 |= 1 << (s - 1);
    }

    pub fn remove(&mut self, s: usize) {
        self.0 &= !(1 << (s - 1));
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn intersect(self, other: BlockSet) -> BlockSet {
        BlockSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: BlockSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (1..=64).filter(move |&s| self.contains(s))
    }
}

impl FromIterator<usize> for BlockSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut b = BlockSet::empty();
        for s in iter {
            b.insert(s);
        }
        b
    }
}

impl fmt::Debug for BlockSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// `C_{s1,...,sr}` notation; the empty set prints as `∅`.
impl fmt::Display for BlockSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<usize> = self.iter().collect();
        match v.len() {
            0 => f.write_str("∅"),
            1 => write!(f, "C_{}", v[0]),
            _ => {
                f.write_str("C_{")?;
                for (k, s) in v.iter().enumerate() {
                    if k > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{s}")?;
                }
                f.write_str("}")
            }
        }
    }
}

/// A split of the distinct lengths into `P` and `Q` with `P ∪ Q = L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcmPartition {
    pub p_set: Vec<usize>,
    pub q_set: Vec<usize>,
    pub p: usize,
    pub q: usize,
}

impl LcmPartition {
    pub fn new(profile: &Profile, p_set: Vec<usize>, q_set: Vec<usize>) -> Result<Self, ConstraintError> {
        let covered = profile
            .distinct_lengths()
            .iter()
            .all(|l| p_set.contains(l) || q_set.contains(l));
        let inside = p_set.iter().chain(&q_set).all(|l| profile.lengths().contains(l));
        if !covered || !inside {
            return Err(ConstraintError::NotAPartition);
        }
        let (p, q) = (lcm_of(&p_set), lcm_of(&q_set));
        Ok(LcmPartition { p_set, q_set, p, q })
    }
}

/// Every `(P, Q)` with `P ∪ Q = L`: each length goes to `P`, `Q` or both.
pub fn lcm_partitions(profile: &Profile) -> Vec<LcmPartition> {
    let lengths = profile.distinct_lengths();
    let k = lengths.len();
    let mut out = Vec::with_capacity(3usize.pow(k as u32));
    for code in 0..3usize.pow(k as u32) {
        let (mut ps, mut qs) = (Vec::new(), Vec::new());
        let mut c = code;
        for &l in &lengths {
            match c % 3 {
                0 => ps.push(l),
                1 => qs.push(l),
                _ => {
                    ps.push(l);
                    qs.push(l);
                }
            }
            c /= 3;
        }
        out.push(LcmPartition::new(profile, ps, qs).expect("covers by construction"));
    }
    out
}

/// Necessary condition for existence: `p | q` or `q | p`. True means the
/// partition does not obstruct.
pub fn lcm_obstruction(_profile: &Profile, part: &LcmPartition) -> bool {
    divides(part.p, part.q) || divides(part.q, part.p)
}

/// First partition that obstructs the profile.
pub fn lcm_screen(profile: &Profile) -> Option<LcmPartition> {
    lcm_partitions(profile)
        .into_iter()
        .find(|part| !lcm_obstruction(profile, part))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuasiHayashi {
    HayashiHolds,
    EllCDividesEll,
    Rejected,
}

impl QuasiHayashi {
    pub fn name(self) -> &'static str {
        match self {
            QuasiHayashi::HayashiHolds => "hayashi-holds",
            QuasiHayashi::EllCDividesEll => "ell-c-divides-ell",
            QuasiHayashi::Rejected => "rejected",
        }
    }
}

impl fmt::Display for QuasiHayashi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Screens with `l = lcm{l_i : l_i ∤ l_c}`.
pub fn quasi_hayashi(p: &Profile) -> QuasiHayashi {
    let top = p.largest();
    let off: Vec<usize> = p
        .distinct_lengths()
        .into_iter()
        .filter(|&l| !divides(l, top))
        .collect();
    let ell = lcm_of(&off);
    if divides(ell, top) {
        QuasiHayashi::HayashiHolds
    } else if divides(top, ell) {
        QuasiHayashi::EllCDividesEll
    } else {
        QuasiHayashi::Rejected
    }
}

fn check_block(p: &Profile, s: usize) -> Result<(), ConstraintError> {
    if s == 0 || s > p.cycles() {
        return Err(ConstraintError::BlockOutOfRange {
            index: s,
            blocks: p.cycles(),
        });
    }
    Ok(())
}

fn blocks_where(p: &Profile, pred: impl Fn(usize) -> bool) -> BlockSet {
    (1..=p.cycles()).filter(|&w| pred(p.length(w))).collect()
}

/// `{w : l_w | lcm(l_t, l_u)}`.
pub fn lcm_blocks(p: &Profile, t: usize, u: usize) -> BlockSet {
    let m = lcm(p.length(t), p.length(u));
    blocks_where(p, |lw| divides(lw, m))
}

/// The injectivity of `R_y` restricted set; `None` when `l_t | l_u`.
pub fn content_blocks(p: &Profile, t: usize, u: usize) -> Option<BlockSet> {
    let (lt, lu) = (p.length(t), p.length(u));
    if divides(lt, lu) {
        return None;
    }
    Some(blocks_where(p, |lw| {
        !divides(lw, lu) && (!divides(lu, lw) || divides(lt, lw))
    }))
}

/// The latin sharpening; `None` unless `l_t ∤ l_u` and `l_u ∤ l_t`.
pub fn latin_blocks(p: &Profile, t: usize, u: usize) -> Option<BlockSet> {
    let (lt, lu) = (p.length(t), p.length(u));
    if divides(lt, lu) || divides(lu, lt) {
        return None;
    }
    Some(blocks_where(p, |lw| {
        !divides(lw, lu)
            && !divides(lw, lt)
            && (!divides(lu, lw) || divides(lt, lw))
            && (!divides(lt, lw) || divides(lu, lw))
    }))
}

/// Blocks whose length divides `l_u`; `None` unless `l_t = 1`.
pub fn singleton_row_blocks(p: &Profile, t: usize, u: usize) -> Option<BlockSet> {
    if p.length(t) != 1 {
        return None;
    }
    let lu = p.length(u);
    Some(blocks_where(p, |lv| divides(lv, lu)))
}

/// Orbit-size rules: `R_y` is injective and commutes with `R_1^{l_u}`, so
/// `lcm(l_v, l_u) = lcm(l_t, l_u)`; when latin, `L_x` likewise gives
/// `lcm(l_v, l_t) = lcm(l_u, l_t)`.
pub fn orbit_blocks(p: &Profile, t: usize, u: usize, latin: bool) -> BlockSet {
    let (lt, lu) = (p.length(t), p.length(u));
    blocks_where(p, |lv| {
        lcm(lv, lu) == lcm(lt, lu) && (!latin || lcm(lv, lt) == lcm(lu, lt))
    })
}

/// Blocks that can contain `x * y` for `x` in `C_t`, `y` in `C_u`.
pub fn admissible_blocks(p: &Profile, t: usize, u: usize, latin: bool) -> Result<BlockSet, ConstraintError> {
    check_block(p, t)?;
    check_block(p, u)?;
    if u == 1 {
        return Ok([t].into_iter().collect());
    }
    let mut set = lcm_blocks(p, t, u);
    if let Some(b) = content_blocks(p, t, u) {
        set = set.intersect(b);
    }
    if latin {
        if let Some(b) = latin_blocks(p, t, u) {
            set = set.intersect(b);
        }
    }
    if let Some(b) = singleton_row_blocks(p, t, u) {
        set = set.intersect(b);
    }
    set = set.intersect(orbit_blocks(p, t, u, latin));
    // x * y = x makes x a fixed point of R_y, and R_y fixes only y
    if p.fixed_points() == 1 && t == 1 {
        set.remove(1);
    }
    Ok(set)
}

/// Number of `x` in `C_u` with `i_t * x = i_v` when `C_t` is a singleton.
pub fn byone_solution_count(p: &Profile, u: usize, v: usize) -> Result<usize, ConstraintError> {
    check_block(p, u)?;
    check_block(p, v)?;
    let (lu, lv) = (p.length(u), p.length(v));
    if !divides(lv, lu) {
        return Err(ConstraintError::Divisibility { u, v, lu, lv });
    }
    Ok(lu / lv)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CellBound {
    /// No information beyond `X`.
    Unconstrained,
    Within(BlockSet),
}

impl CellBound {
    /// Normalises a full set to `Unconstrained`.
    pub fn of(set: BlockSet, c: usize) -> CellBound {
        if set == BlockSet::full(c) {
            CellBound::Unconstrained
        } else {
            CellBound::Within(set)
        }
    }

    pub fn blocks(self, c: usize) -> BlockSet {
        match self {
            CellBound::Unconstrained => BlockSet::full(c),
            CellBound::Within(b) => b,
        }
    }
}

/// A `c x c` grid of block bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleQuandleTable {
    c: usize,
    cells: Vec<CellBound>,
}

impl CycleQuandleTable {
    pub fn unconstrained(c: usize) -> Self {
        CycleQuandleTable {
            c,
            cells: vec![CellBound::Unconstrained; c * c],
        }
    }

    /// Builds a grid from rows of optional block lists (`None` is a blank).
    pub fn from_rows(rows: &[Vec<Option<Vec<usize>>>]) -> Result<Self, ConstraintError> {
        let c = rows.len();
        let mut tab = CycleQuandleTable::unconstrained(c);
        for (t, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(ConstraintError::BlockOutOfRange { index: row.len(), blocks: c });
            }
            for (u, cell) in row.iter().enumerate() {
                if let Some(list) = cell {
                    if let Some(&bad) = list.iter().find(|&&s| s == 0 || s > c) {
                        return Err(ConstraintError::BlockOutOfRange { index: bad, blocks: c });
                    }
                    tab.set(t + 1, u + 1, CellBound::of(list.iter().copied().collect(), c));
                }
            }
        }
        Ok(tab)
    }

    pub fn cycles(&self) -> usize {
        self.c
    }

    pub fn cell(&self, t: usize, u: usize) -> CellBound {
        self.cells[(t - 1) * self.c + u - 1]
    }

    pub fn blocks(&self, t: usize, u: usize) -> BlockSet {
        self.cell(t, u).blocks(self.c)
    }

    pub fn set(&mut self, t: usize, u: usize, bound: CellBound) {
        self.cells[(t - 1) * self.c + u - 1] = bound;
    }

    /// First `(t, u)` whose bound is empty.
    pub fn empty_cell(&self) -> Option<(usize, usize)> {
        (1..=self.c)
            .flat_map(|t| (1..=self.c).map(move |u| (t, u)))
            .find(|&(t, u)| self.blocks(t, u).is_empty())
    }

    /// Cell-wise containment; blanks in `other` accept anything.
    pub fn contained_in(&self, other: &CycleQuandleTable) -> bool {
        self.c == other.c
            && (1..=self.c).all(|t| {
                (1..=self.c).all(|u| self.blocks(t, u).is_subset(other.blocks(t, u)))
            })
    }

    fn label(&self, t: usize, u: usize) -> String {
        match self.cell(t, u) {
            CellBound::Unconstrained => "-".to_string(),
            CellBound::Within(b) => b.to_string(),
        }
    }
}

/// Aligned grid with `C_1 .. C_c` headers; blanks print as `-`.
impl fmt::Display for CycleQuandleTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.c;
        let mut grid = vec![vec![String::new(); c + 1]; c + 1];
        grid[0][0] = "*".to_string();
        for s in 1..=c {
            grid[0][s] = format!("C_{s}");
            grid[s][0] = format!("C_{s}");
        }
        for t in 1..=c {
            for u in 1..=c {
                grid[t][u] = self.label(t, u);
            }
        }
        let widths: Vec<usize> = (0..=c)
            .map(|col| grid.iter().map(|r| r[col].chars().count()).max().unwrap())
            .collect();
        for row in &grid {
            let mut line = String::new();
            for (col, s) in row.iter().enumerate() {
                if col > 0 {
                    line.push_str("  ");
                }
                line.push_str(s);
                if col < c {
                    line.extend(std::iter::repeat_n(' ', widths[col] - s.chars().count()));
                }
            }
            writeln!(f, "{}", line.trim_end())?;
        }
        Ok(())
    }
}

/// Fills every cell with [`admissible_blocks`].
pub fn derive_cycle_table(p: &Profile, latin: bool) -> CycleQuandleTable {
    let c = p.cycles();
    let mut tab = CycleQuandleTable::unconstrained(c);
    for t in 1..=c {
        for u in 1..=c {
            let set = admissible_blocks(p, t, u, latin).expect("indices in range");
            tab.set(t, u, CellBound::of(set, c));
        }
    }
    tab
}

/// A product that escapes its cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Counterexample {
    pub t: usize,
    pub u: usize,
    pub x: usize,
    pub y: usize,
    pub product: usize,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}*{}={} escapes cell ({},{})",
            self.x, self.y, self.product, self.t, self.u
        )
    }
}

fn require_block_form(q: &QuandleTable) -> Result<Profile, ConstraintError> {
    let p = analysis::profile(q).map_err(|e| ConstraintError::LabelForm(e.to_string()))?;
    let r1 = q.right_translation(1).expect("order >= 1");
    if r1 != analysis::canonical_r1(&p) {
        return Err(ConstraintError::LabelForm(format!("R_1 = {r1}")));
    }
    Ok(p)
}

/// The exact block sets `R_{t,u}` of a canonically labelled quandle.
pub fn observed_cycle_table(q: &QuandleTable) -> Result<CycleQuandleTable, ConstraintError> {
    let p = require_block_form(q)?;
    let layout = block_layout(&p);
    let c = p.cycles();
    let mut tab = CycleQuandleTable::unconstrained(c);
    for t in 1..=c {
        for u in 1..=c {
            let set: BlockSet = layout
                .block(t)
                .flat_map(|x| layout.block(u).map(move |y| (x, y)))
                .map(|(x, y)| layout.block_of(q.op(x, y)))
                .collect();
            tab.set(t, u, CellBound::Within(set));
        }
    }
    Ok(tab)
}

/// Checks every `R_{t,u}` against `tab`. `Ok(None)` means containment holds;
/// otherwise the first escaping product in `(t, u, x, y)` order.
pub fn verify_cycle_table(q: &QuandleTable, tab: &CycleQuandleTable) -> Result<Option<Counterexample>, ConstraintError> {
    let p = require_block_form(q)?;
    if tab.cycles() != p.cycles() {
        return Err(ConstraintError::LabelForm(format!(
            "grid has {} blocks, profile has {}",
            tab.cycles(),
            p.cycles()
        )));
    }
    let layout = block_layout(&p);
    for t in 1..=p.cycles() {
        for u in 1..=p.cycles() {
            let allowed = tab.blocks(t, u);
            for x in layout.block(t) {
                for y in layout.block(u) {
                    let product = q.op(x, y);
                    if !allowed.contains(layout.block_of(product)) {
                        return Ok(Some(Counterexample { t, u, x, y, product }));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Profile shape `1 < l_2 < ... < l_i = l_{i+1} < ... < l_c` with
/// `l_j ∤ l_k` for distinct `j, k` in `{2..c} \ {i+1}`.
pub fn prop3_hypothesis_match(p: &Profile) -> bool {
    let l = p.lengths();
    let c = l.len();
    if c < 3 || l[1] == 1 {
        return false;
    }
    let equal: Vec<usize> = (1..c - 1).filter(|&k| l[k] == l[k + 1]).collect();
    // 0-based position k is the 1-based index i = k + 1
    let [k] = equal[..] else {
        return false;
    };
    if (1..c - 1).any(|j| j != k && l[j] >= l[j + 1]) {
        return false;
    }
    let idx: Vec<usize> = (1..c).filter(|&j| j != k + 1).collect();
    idx.iter()
        .all(|&j| idx.iter().all(|&m| j == m || !divides(l[j], l[m])))
}

/// Profile shapes left after the generic screens, for `c` blocks.
pub fn case_count(c: usize) -> i64 {
    let c = c as i64;
    (1i64 << (c - 1)) - (c - 1) * (c - 2) / 2 - c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn prof(s: &str) -> Profile {
        s.parse().unwrap()
    }

    fn set(v: &[usize]) -> BlockSet {
        v.iter().copied().collect()
    }

    #[test]
    fn layouts() {
        let l = block_layout(&prof("1,2,6"));
        assert_eq!(l.blocks, vec![1..=1, 2..=3, 4..=9]);
        assert_eq!(l.a_prime, vec![1, 2, 4]);
        assert_eq!(block_layout(&prof("1,2,3,6")).a, vec![0, 1, 3, 6, 12]);
        assert_eq!(block_layout(&prof("1")).blocks, vec![1..=1]);
        assert_eq!(l.block_of(1), 1);
        assert_eq!(l.block_of(3), 2);
        assert_eq!(l.block_of(9), 3);
        assert_eq!(l.elements(set(&[1, 2])).iter().collect::<Vec<_>>(), vec![1, 2, 3]);
    }

    #[test]
    fn lcm_partition_checks() {
        let p = prof("1,2,6");
        let part = LcmPartition::new(&p, vec![1, 2], vec![6]).unwrap();
        assert_eq!((part.p, part.q), (2, 6));
        assert!(lcm_obstruction(&p, &part));
        let p = prof("1,2,3,5");
        let part = LcmPartition::new(&p, vec![1, 5], vec![2, 3]).unwrap();
        assert_eq!((part.p, part.q), (5, 6));
        assert!(!lcm_obstruction(&p, &part));
        let all = LcmPartition::new(&p, vec![1, 2, 3, 5], vec![]).unwrap();
        assert_eq!(all.q, 1);
        assert!(lcm_obstruction(&p, &all));
        assert!(LcmPartition::new(&p, vec![1], vec![2]).is_err());
        assert_eq!(lcm_partitions(&prof("1,2,6")).len(), 27);
        assert!(lcm_screen(&prof("1,2,6")).is_none());
        assert!(lcm_screen(&prof("1,2,3,5")).is_some());
    }

    #[test]
    fn quasi_hayashi_verdicts() {
        use QuasiHayashi::*;
        assert_eq!(quasi_hayashi(&prof("1,2,6")), HayashiHolds);
        assert_eq!(quasi_hayashi(&prof("1,2,3,5")), Rejected);
        assert_eq!(quasi_hayashi(&prof("1,2,2,3")), Rejected);
        assert_eq!(quasi_hayashi(&prof("1,2,3")), Rejected);
        // non-divisors of 6 are {4}; lcm 4 and 6 are incomparable
        assert_eq!(quasi_hayashi(&prof("1,4,6")), Rejected);
        assert_eq!(quasi_hayashi(&prof("1,2,3,6")), HayashiHolds);
        assert_eq!(quasi_hayashi(&prof("1,1,6,10,15")), EllCDividesEll);
    }

    #[test]
    fn component_rules() {
        let p = prof("1,2,6");
        assert_eq!(lcm_blocks(&p, 3, 2), set(&[1, 2, 3]));
        assert_eq!(content_blocks(&p, 3, 2), Some(set(&[3])));
        assert_eq!(admissible_blocks(&p, 3, 2, false).unwrap(), set(&[3]));
        assert_eq!(admissible_blocks(&p, 3, 2, true).unwrap(), set(&[3]));
        let p5 = prof("1,4,6,9,10");
        assert!(admissible_blocks(&p5, 2, 5, true).unwrap().is_subset(set(&[3, 4])));
        for p in ["1,2,6", "1,2,3,6", "1,2,4,4,4", "1,1,4"] {
            let p = prof(p);
            for t in 1..=p.cycles() {
                assert_eq!(admissible_blocks(&p, t, 1, true).unwrap(), set(&[t]));
            }
        }
        assert!(admissible_blocks(&p, 0, 1, true).is_err());
        assert!(admissible_blocks(&p, 1, 4, true).is_err());
    }

    #[test]
    fn solution_counts() {
        let p = prof("1,2,6");
        assert_eq!(byone_solution_count(&p, 3, 3).unwrap(), 1);
        assert_eq!(byone_solution_count(&p, 3, 2).unwrap(), 3);
        assert_eq!(byone_solution_count(&p, 2, 2).unwrap(), 1);
        assert!(byone_solution_count(&p, 2, 3).is_err());
    }

    #[test]
    fn table_two_reproduced() {
        let grid = fixtures::q_9_4_cycle_table();
        let q = fixtures::q_9_4();
        assert_eq!(verify_cycle_table(&q, &grid).unwrap(), None);
        let derived = derive_cycle_table(&prof("1,2,6"), true);
        assert!(derived.contained_in(&grid));
        assert_eq!(verify_cycle_table(&q, &derived).unwrap(), None);
        let mut bad = grid.clone();
        bad.set(3, 2, CellBound::Within(set(&[1])));
        let cx = verify_cycle_table(&q, &bad).unwrap().unwrap();
        assert_eq!((cx.x, cx.y, cx.product), (4, 2, 7));
    }

    #[test]
    fn verify_rejects_non_canonical_labels() {
        let q = fixtures::q_9_4();
        let sigma = crate::perm::Permutation::from_cycles(9, &[vec![1, 2]]).unwrap();
        let moved = q.relabel(&sigma);
        let grid = derive_cycle_table(&prof("1,2,6"), true);
        assert!(matches!(
            verify_cycle_table(&moved, &grid),
            Err(ConstraintError::LabelForm(_))
        ));
        let small = derive_cycle_table(&prof("1,2"), true);
        assert!(verify_cycle_table(&q, &small).is_err());
    }

    #[test]
    fn latin_grid_refines_general_grid() {
        for n in 1..=14 {
            for p in Profile::all_of_order(n) {
                let a = derive_cycle_table(&p, true);
                let b = derive_cycle_table(&p, false);
                assert!(a.contained_in(&b), "{p}");
            }
        }
    }

    #[test]
    fn grid_rendering() {
        let text = derive_cycle_table(&prof("1,2,6"), true).to_string();
        assert_eq!(
            text,
            "*    C_1  C_2      C_3\n\
             C_1  C_1  C_2      C_3\n\
             C_2  C_2  C_{1,2}  C_3\n\
             C_3  C_3  C_3      -\n"
        );
        assert_eq!(BlockSet::empty().to_string(), "∅");
    }

    #[test]
    fn prop3_shapes() {
        assert!(prop3_hypothesis_match(&prof("1,2,2,3,5")));
        assert!(prop3_hypothesis_match(&prof("1,2,2")));
        assert!(prop3_hypothesis_match(&prof("1,3,3")));
        assert!(!prop3_hypothesis_match(&prof("1,2,6")));
        assert!(!prop3_hypothesis_match(&prof("1,2,4,4,4")));
        assert!(!prop3_hypothesis_match(&prof("1,1,2")));
        assert!(!prop3_hypothesis_match(&prof("1,2,2,4")));
    }

    #[test]
    fn case_counts() {
        assert_eq!(case_count(3), 0);
        assert_eq!(case_count(4), 1);
        assert_eq!(case_count(5), 5);
    }
}

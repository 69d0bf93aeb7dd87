//! Profile-constrained enumeration of connected quandles.
//!
//! The search fixes `R_1` to the block-cycle permutation of the profile and
//! fills the right translations `R_{a_s}` of the last element of every block,
//! largest block first. Every assignment is propagated through right
//! self-distributivity, which fills the remaining columns of each block by
//! conjugation with `R_1` and forces many generator images on the way.
//! Assignments are also checked against the block grid of
//! [`derive_cycle_table`] and against the profile's cycle multiset.
//! Complete tables are validated, tested for connectivity, canonicalised and
//! deduplicated.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::analysis::{self, Profile};
use crate::constraints::{
    self, block_layout, derive_cycle_table, BlockLayout, CycleQuandleTable, LcmPartition, QuasiHayashi,
};
use crate::perm::Permutation;
use crate::quandle::QuandleTable;

/// Default largest order accepted by [`enumerate`].
pub const DEFAULT_ORDER_BOUND: usize = 13;

/// Largest order accepted by [`cross_check_naive`].
pub const NAIVE_ORDER_BOUND: usize = 6;

const UNSET: u8 = u8::MAX;
const FLUSH_EVERY: u64 = 1 << 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("order {order} exceeds the search bound {bound}")]
    OrderTooLarge { order: usize, bound: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    pub max_order: usize,
    pub node_limit: u64,
    pub time_limit: Duration,
    pub workers: usize,
    /// Apply the quasi-Hayashi, lcm-partition and empty-cell screens first.
    pub prefilter: bool,
    /// Restrict assignments to the derived block grid.
    pub use_grid: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_order: DEFAULT_ORDER_BOUND,
            node_limit: 2_000_000_000,
            time_limit: Duration::from_secs(3600),
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            prefilter: true,
            use_grid: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchProblem {
    pub profile: Profile,
    pub layout: BlockLayout,
    pub canonical_r1: Permutation,
    pub constraint_grid: CycleQuandleTable,
    /// Whether the grid assumes latin (lengths pairwise distinct).
    pub latin: bool,
    pub options: SearchOptions,
}

/// Canonical `R_1` plus a grid. Pairwise distinct lengths force latin, so
/// the latin grid is used; otherwise the general grid covers both cases.
pub fn build_problem(p: &Profile, options: &SearchOptions) -> SearchProblem {
    let latin = p.pairwise_distinct();
    SearchProblem {
        profile: p.clone(),
        layout: block_layout(p),
        canonical_r1: analysis::canonical_r1(p),
        constraint_grid: derive_cycle_table(p, latin),
        latin,
        options: options.clone(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SearchStatus {
    Complete,
    BudgetExhausted,
}

impl fmt::Display for SearchStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchStatus::Complete => "complete",
            SearchStatus::BudgetExhausted => "budget-exhausted",
        })
    }
}

/// Why a profile has no connected quandle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    QuasiHayashi,
    Lcm(LcmPartition),
    EmptyCell { t: usize, u: usize },
    Exhaustive { nodes: u64 },
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("no connected quandle with this profile exists (")?;
        match self {
            Certificate::QuasiHayashi => f.write_str("quasi-Hayashi screen")?,
            Certificate::Lcm(part) => write!(
                f,
                "lcm screen: P={:?} Q={:?} p={} q={}",
                part.p_set, part.q_set, part.p, part.q
            )?,
            Certificate::EmptyCell { t, u } => write!(f, "empty cycle table cell ({t},{u})")?,
            Certificate::Exhaustive { nodes } => write!(f, "exhaustive search, {nodes} nodes")?,
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub profile: Profile,
    pub status: SearchStatus,
    /// Canonical tables in increasing row-major order.
    pub quandles: Vec<QuandleTable>,
    pub nodes_explored: u64,
    pub certificate: Option<Certificate>,
}

impl SearchOutcome {
    pub fn complete(&self) -> bool {
        self.status == SearchStatus::Complete
    }
}

/// Status block followed by the tables in file format.
impl fmt::Display for SearchOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "profile: {}", self.profile)?;
        writeln!(f, "status: {}", self.status)?;
        writeln!(f, "count: {}", self.quandles.len())?;
        writeln!(f, "nodes: {}", self.nodes_explored)?;
        if let Some(c) = &self.certificate {
            writeln!(f, "certificate: {c}")?;
        }
        for (k, q) in self.quandles.iter().enumerate() {
            writeln!(f, "# quandle {}", k + 1)?;
            write!(f, "{}", q.to_text())?;
        }
        Ok(())
    }
}

/// Screens that refute a profile without search.
pub fn prefilter(prob: &SearchProblem) -> Option<Certificate> {
    if constraints::quasi_hayashi(&prob.profile) == QuasiHayashi::Rejected {
        return Some(Certificate::QuasiHayashi);
    }
    if let Some(part) = constraints::lcm_screen(&prob.profile) {
        return Some(Certificate::Lcm(part));
    }
    prob.constraint_grid
        .empty_cell()
        .map(|(t, u)| Certificate::EmptyCell { t, u })
}

struct Budget {
    nodes: AtomicU64,
    limit: u64,
    deadline: Instant,
    exhausted: AtomicBool,
}

impl Budget {
    fn charge(&self, k: u64) -> bool {
        let total = self.nodes.fetch_add(k, Ordering::Relaxed) + k;
        if total > self.limit || Instant::now() > self.deadline {
            self.exhausted.store(true, Ordering::Relaxed);
        }
        !self.exhausted.load(Ordering::Relaxed)
    }
}

/// Immutable per-problem data shared by all workers.
struct Shape {
    n: usize,
    /// Allowed values for cell `(x, y)` as a 0-based element bitmask.
    allowed: Vec<u64>,
    /// Profile length counts, indexed by length.
    length_counts: Vec<u8>,
    max_length: usize,
    /// Generator cells in branching order.
    order: Vec<(usize, usize)>,
    r1: Vec<usize>,
    profile: Profile,
}

impl Shape {
    fn new(prob: &SearchProblem) -> Shape {
        let n = prob.profile.order();
        let layout = &prob.layout;
        let c = layout.cycles();
        let c_of: Vec<usize> = (1..=n).map(|x| layout.block_of(x)).collect();
        let mut allowed = vec![0u64; n * n];
        for x in 0..n {
            for y in 0..n {
                let blocks = if prob.options.use_grid {
                    prob.constraint_grid.blocks(c_of[x], c_of[y])
                } else {
                    constraints::BlockSet::full(c)
                };
                let mut mask = 0u64;
                for s in blocks.iter() {
                    for e in layout.block(s) {
                        mask |= 1 << (e - 1);
                    }
                }
                allowed[x * n + y] = mask;
            }
        }
        let mut length_counts = vec![0u8; n + 1];
        for &l in prob.profile.lengths() {
            length_counts[l] += 1;
        }
        let mut order = Vec::new();
        for s in (2..=c).rev() {
            let col = layout.a[s] - 1;
            order.extend((0..n).map(|x| (x, col)));
        }
        Shape {
            n,
            allowed,
            length_counts,
            max_length: prob.profile.largest(),
            order,
            r1: prob.canonical_r1.zero_based().to_vec(),
            profile: prob.profile.clone(),
        }
    }
}

/// Partial table with column inverses and an undo trail.
#[derive(Clone)]
struct State {
    n: usize,
    cell: Vec<u8>,
    colinv: Vec<u8>,
    known: Vec<u8>,
    trail: Vec<u16>,
    queue: Vec<u16>,
}

impl State {
    fn new(n: usize) -> State {
        State {
            n,
            cell: vec![UNSET; n * n],
            colinv: vec![UNSET; n * n],
            known: vec![0; n],
            trail: Vec::with_capacity(n * n),
            queue: Vec::with_capacity(n * n),
        }
    }

    #[inline]
    fn get(&self, x: usize, y: usize) -> usize {
        self.cell[x * self.n + y] as usize
    }

    #[inline]
    fn pre(&self, y: usize, v: usize) -> usize {
        self.colinv[y * self.n + v] as usize
    }

    fn assign(&mut self, shape: &Shape, x: usize, y: usize, v: usize) -> bool {
        let n = self.n;
        let cur = self.cell[x * n + y];
        if cur != UNSET {
            return cur as usize == v;
        }
        if self.colinv[y * n + v] != UNSET || shape.allowed[x * n + y] >> v & 1 == 0 {
            return false;
        }
        self.cell[x * n + y] = v as u8;
        self.colinv[y * n + v] = x as u8;
        self.known[y] += 1;
        self.trail.push((x * n + y) as u16);
        self.queue.push((x * n + y) as u16);
        self.column_feasible(shape, y)
    }

    fn undo_to(&mut self, mark: usize) {
        let n = self.n;
        while self.trail.len() > mark {
            let idx = self.trail.pop().unwrap() as usize;
            let y = idx % n;
            let v = self.cell[idx] as usize;
            self.cell[idx] = UNSET;
            self.colinv[y * n + v] = UNSET;
            self.known[y] -= 1;
        }
        self.queue.clear();
    }

    /// Can the partial column `y` still be completed to a permutation with
    /// the profile's cycle multiset?
    fn column_feasible(&self, shape: &Shape, y: usize) -> bool {
        let n = self.n;
        let mut counts = [0u8; 65];
        counts[..=n].copy_from_slice(&shape.length_counts);
        let mut seen = 0u64;
        let mut max_chain = 0;
        let mut chains = 0;
        // chains start at elements without a known preimage
        for s in 0..n {
            if self.pre(y, s) != UNSET as usize {
                continue;
            }
            chains += 1;
            let mut x = s;
            let mut len = 1;
            seen |= 1 << s;
            loop {
                let v = self.get(x, y);
                if v == UNSET as usize {
                    break;
                }
                x = v;
                seen |= 1 << x;
                len += 1;
            }
            max_chain = max_chain.max(len);
        }
        // everything else lies on closed cycles
        for s in 0..n {
            if seen >> s & 1 == 1 {
                continue;
            }
            let mut x = s;
            let mut len = 0;
            loop {
                seen |= 1 << x;
                len += 1;
                x = self.get(x, y);
                if x == s {
                    break;
                }
            }
            if len > n || counts[len] == 0 {
                return false;
            }
            counts[len] -= 1;
        }
        if chains == 0 {
            return true;
        }
        let remaining: usize = counts[..=n].iter().map(|&c| c as usize).sum();
        let largest = (1..=shape.max_length.min(n)).rev().find(|&l| counts[l] > 0);
        match largest {
            None => false,
            Some(l) => max_chain <= l && chains >= remaining,
        }
    }

    /// Distributivity `(a*b)*z = (a*z)*(b*z)` on one triple.
    #[inline]
    fn triple(&mut self, shape: &Shape, a: usize, b: usize, z: usize) -> bool {
        const U: usize = UNSET as usize;
        let ab = self.get(a, b);
        let az = self.get(a, z);
        let bz = self.get(b, z);
        if az != U && bz != U {
            let r = self.get(az, bz);
            if ab != U {
                let l = self.get(ab, z);
                return match (l == U, r == U) {
                    (false, false) => l == r,
                    (false, true) => self.assign(shape, az, bz, l),
                    (true, false) => self.assign(shape, ab, z, r),
                    (true, true) => true,
                };
            }
            if r != U {
                let w = self.pre(z, r);
                if w != U {
                    return self.assign(shape, a, b, w);
                }
            }
        } else if ab != U && az == U && bz != U {
            let l = self.get(ab, z);
            if l != U {
                let w = self.pre(bz, l);
                if w != U {
                    return self.assign(shape, a, z, w);
                }
            }
        }
        true
    }

    fn propagate(&mut self, shape: &Shape) -> bool {
        let n = self.n;
        const U: usize = UNSET as usize;
        while let Some(idx) = self.queue.pop() {
            let (x, y) = (idx as usize / n, idx as usize % n);
            for z in 0..n {
                if !self.triple(shape, x, y, z) {
                    return false;
                }
            }
            for k in 0..n {
                let a = self.pre(k, x);
                if a != U && !self.triple(shape, a, k, y) {
                    return false;
                }
                if !self.triple(shape, x, k, y) || !self.triple(shape, k, x, y) {
                    return false;
                }
                let (a, b) = (self.pre(k, x), self.pre(k, y));
                if a != U && b != U && !self.triple(shape, a, b, k) {
                    return false;
                }
            }
            if self.known[y] as usize == n - 1 {
                let row = (0..n).find(|&r| self.get(r, y) == U).unwrap();
                let val = (0..n).find(|&v| self.pre(y, v) == U).unwrap();
                if !self.assign(shape, row, y, val) {
                    return false;
                }
            }
        }
        true
    }

    fn next_cell(&self, shape: &Shape) -> Option<(usize, usize)> {
        const U: usize = UNSET as usize;
        shape
            .order
            .iter()
            .copied()
            .find(|&(x, y)| self.get(x, y) == U)
            .or_else(|| (0..self.n * self.n).find(|&k| self.cell[k] == UNSET).map(|k| (k / self.n, k % self.n)))
    }

    fn candidates(&self, shape: &Shape, x: usize, y: usize) -> Vec<usize> {
        let mask = shape.allowed[x * self.n + y];
        (0..self.n)
            .filter(|&v| mask >> v & 1 == 1 && self.pre(y, v) == UNSET as usize)
            .collect()
    }
}

fn initial_state(shape: &Shape) -> Option<State> {
    let n = shape.n;
    let mut st = State::new(n);
    for x in 0..n {
        if !st.assign(shape, x, x, x) || !st.assign(shape, x, 0, shape.r1[x]) {
            return None;
        }
    }
    if !st.propagate(shape) {
        return None;
    }
    Some(st)
}

#[derive(Default)]
struct Branch {
    found: BTreeSet<Vec<u8>>,
    nodes: u64,
    pending: u64,
}

struct Worker<'a> {
    shape: &'a Shape,
    budget: &'a Budget,
    out: Branch,
}

impl Worker<'_> {
    fn tick(&mut self) -> bool {
        self.out.nodes += 1;
        self.out.pending += 1;
        if self.out.pending >= FLUSH_EVERY {
            let k = std::mem::take(&mut self.out.pending);
            return self.budget.charge(k);
        }
        !self.budget.exhausted.load(Ordering::Relaxed)
    }

    fn dfs(&mut self, st: &mut State) -> bool {
        let Some((x, y)) = st.next_cell(self.shape) else {
            self.leaf(st);
            return true;
        };
        for v in st.candidates(self.shape, x, y) {
            if !self.tick() {
                return false;
            }
            let mark = st.trail.len();
            if st.assign(self.shape, x, y, v) && st.propagate(self.shape) && !self.dfs(st) {
                st.undo_to(mark);
                return false;
            }
            st.undo_to(mark);
        }
        true
    }

    fn leaf(&mut self, st: &State) {
        let q = QuandleTable::from_raw_unchecked(st.n, st.cell.clone());
        if let Some(c) = accept(&q, &self.shape.profile) {
            self.out.found.insert(c.raw().to_vec());
        }
    }
}

/// Validates a complete table and returns its canonical form when it is a
/// connected quandle with profile `p`.
fn accept(q: &QuandleTable, p: &Profile) -> Option<QuandleTable> {
    if !crate::quandle::validate_axioms(&q.rows()).valid() || !analysis::is_connected(q) {
        return None;
    }
    if analysis::profile(q).ok()? != *p {
        return None;
    }
    analysis::canonical_relabel(q).ok().map(|(c, _)| c)
}

/// Enumerates connected quandles with the problem's profile up to
/// isomorphism.
pub fn enumerate(prob: &SearchProblem) -> Result<SearchOutcome, SearchError> {
    let n = prob.profile.order();
    if n > prob.options.max_order {
        return Err(SearchError::OrderTooLarge {
            order: n,
            bound: prob.options.max_order,
        });
    }
    let done = |quandles: Vec<QuandleTable>, nodes: u64, status: SearchStatus, cert: Option<Certificate>| {
        SearchOutcome {
            profile: prob.profile.clone(),
            status,
            quandles,
            nodes_explored: nodes,
            certificate: cert,
        }
    };
    if prob.options.prefilter {
        if let Some(cert) = prefilter(prob) {
            return Ok(done(Vec::new(), 0, SearchStatus::Complete, Some(cert)));
        }
    }
    let shape = Shape::new(prob);
    let budget = Budget {
        nodes: AtomicU64::new(0),
        limit: prob.options.node_limit,
        deadline: Instant::now() + prob.options.time_limit,
        exhausted: AtomicBool::new(false),
    };
    let mut found = BTreeSet::new();
    let mut nodes = 0u64;
    if let Some(root) = initial_state(&shape) {
        match root.next_cell(&shape) {
            None => {
                let mut w = Worker { shape: &shape, budget: &budget, out: Branch::default() };
                w.leaf(&root);
                found = w.out.found;
            }
            Some((x, y)) => {
                let tops = root.candidates(&shape, x, y);
                let run = |&v: &usize| {
                    let mut w = Worker { shape: &shape, budget: &budget, out: Branch::default() };
                    let mut st = root.clone();
                    if w.tick() && st.assign(&shape, x, y, v) && st.propagate(&shape) {
                        w.dfs(&mut st);
                    }
                    budget.charge(w.out.pending);
                    w.out
                };
                let workers = prob.options.workers.max(1);
                let branches: Vec<Branch> = if workers == 1 {
                    tops.iter().map(run).collect()
                } else {
                    rayon::ThreadPoolBuilder::new()
                        .num_threads(workers)
                        .build()
                        .expect("thread pool")
                        .install(|| tops.par_iter().map(run).collect())
                };
                for b in branches {
                    nodes += b.nodes;
                    found.extend(b.found);
                }
            }
        }
    }
    let status = if budget.exhausted.load(Ordering::Relaxed) {
        SearchStatus::BudgetExhausted
    } else {
        SearchStatus::Complete
    };
    let quandles: Vec<QuandleTable> = found
        .into_iter()
        .map(|cells| QuandleTable::from_raw_unchecked(n, cells))
        .collect();
    let cert = (status == SearchStatus::Complete && quandles.is_empty())
        .then_some(Certificate::Exhaustive { nodes });
    Ok(done(quandles, nodes, status, cert))
}

/// Union of [`enumerate`] over every profile of order `n`, sorted.
pub fn enumerate_order(n: usize, options: &SearchOptions) -> Result<(Vec<QuandleTable>, bool), SearchError> {
    let mut all = Vec::new();
    let mut complete = true;
    for p in Profile::all_of_order(n) {
        let out = enumerate(&build_problem(&p, options))?;
        complete &= out.complete();
        all.extend(out.quandles);
    }
    all.sort_by(|a, b| a.raw().cmp(b.raw()));
    Ok((all, complete))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Existence {
    Yes(QuandleTable),
    No(Certificate),
    Unknown,
}

pub fn exists_profile(p: &Profile, options: &SearchOptions) -> Result<Existence, SearchError> {
    let out = enumerate(&build_problem(p, options))?;
    Ok(match (out.quandles.first(), out.certificate) {
        (Some(q), _) => Existence::Yes(q.clone()),
        (None, Some(c)) => Existence::No(c),
        (None, None) => Existence::Unknown,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AuditVerdict {
    /// Already satisfies the divisibility condition.
    Hayashi,
    Screened(Certificate),
    Searched { status: SearchStatus, count: usize, nodes: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditEntry {
    pub profile: Profile,
    pub verdict: AuditVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub max_n: usize,
    pub entries: Vec<AuditEntry>,
    pub counterexamples: Vec<QuandleTable>,
}

impl AuditReport {
    pub fn unresolved(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| matches!(e.verdict, AuditVerdict::Searched { status: SearchStatus::BudgetExhausted, .. }))
            .count()
    }

    pub fn verdict_line(&self) -> String {
        if !self.counterexamples.is_empty() {
            format!("Hayashi counterexample found up to order {}", self.max_n)
        } else if self.unresolved() > 0 {
            format!(
                "audit incomplete up to order {}: {} profiles unresolved",
                self.max_n,
                self.unresolved()
            )
        } else {
            format!("no Hayashi counterexample up to order {}", self.max_n)
        }
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.entries.iter().map(|e| e.profile.key().len()).max().unwrap_or(7).max(7);
        writeln!(f, "{:<width$}  status", "profile")?;
        for e in &self.entries {
            let status = match &e.verdict {
                AuditVerdict::Hayashi => "skipped (divisibility holds)".to_string(),
                AuditVerdict::Screened(c) => match c {
                    Certificate::QuasiHayashi => "screened (quasi-Hayashi)".to_string(),
                    Certificate::Lcm(_) => "screened (lcm partition)".to_string(),
                    Certificate::EmptyCell { t, u } => format!("screened (empty cell {t},{u})"),
                    Certificate::Exhaustive { .. } => "screened".to_string(),
                },
                AuditVerdict::Searched { status, count, nodes } => {
                    format!("searched {status}, {count} found, {nodes} nodes")
                }
            };
            writeln!(f, "{:<width$}  {status}", e.profile.key())?;
        }
        writeln!(f, "{}", self.verdict_line())
    }
}

/// Searches every profile of order at most `max_n` that violates the
/// divisibility condition.
pub fn audit_hayashi(max_n: usize, options: &SearchOptions) -> Result<AuditReport, SearchError> {
    let mut entries = Vec::new();
    let mut counterexamples = Vec::new();
    for n in 1..=max_n {
        for p in Profile::all_of_order(n) {
            let verdict = if analysis::check_hayashi(&p) {
                AuditVerdict::Hayashi
            } else {
                let out = enumerate(&build_problem(&p, options))?;
                match out.certificate {
                    Some(c) if !matches!(c, Certificate::Exhaustive { .. }) => AuditVerdict::Screened(c),
                    _ => {
                        counterexamples.extend(out.quandles.iter().cloned());
                        AuditVerdict::Searched {
                            status: out.status,
                            count: out.quandles.len(),
                            nodes: out.nodes_explored,
                        }
                    }
                }
            };
            entries.push(AuditEntry { profile: p, verdict });
        }
    }
    Ok(AuditReport {
        max_n,
        entries,
        counterexamples,
    })
}

/// Connected quandles of order `n` by plain cell-by-cell table search with
/// axiom checks only, canonicalised and sorted.
pub fn cross_check_naive(n: usize) -> Result<Vec<QuandleTable>, SearchError> {
    if n > NAIVE_ORDER_BOUND {
        return Err(SearchError::OrderTooLarge {
            order: n,
            bound: NAIVE_ORDER_BOUND,
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut t = vec![vec![0usize; n]; n];
    for (i, row) in t.iter_mut().enumerate() {
        row[i] = i + 1;
    }
    let mut found = BTreeSet::new();
    naive_fill(&mut t, 0, &mut found);
    Ok(found
        .into_iter()
        .map(|cells| QuandleTable::from_raw_unchecked(n, cells))
        .collect())
}

fn naive_fill(t: &mut Vec<Vec<usize>>, k: usize, found: &mut BTreeSet<Vec<u8>>) {
    let n = t.len();
    if k == n * n {
        let q = QuandleTable::from_rows(t).expect("checked during search");
        if analysis::is_connected(&q) {
            let (c, _) = analysis::canonical_relabel(&q).expect("connected");
            found.insert(c.raw().to_vec());
        }
        return;
    }
    let (j, i) = (k / n, k % n);
    if i == j {
        naive_fill(t, k + 1, found);
        return;
    }
    for v in 1..=n {
        if (0..n).any(|r| r != i && t[r][j] == v) {
            continue;
        }
        t[i][j] = v;
        if naive_consistent(t, i, j) {
            naive_fill(t, k + 1, found);
        }
        t[i][j] = 0;
    }
}

/// Every fully determined distributivity instance through cell `(i, j)`
/// holds. Column injectivity makes the row of a given value in a column
/// unique, so each of the five positions costs at most `O(n^2)`.
fn naive_consistent(t: &[Vec<usize>], i: usize, j: usize) -> bool {
    let n = t.len();
    let at = |a: usize, b: usize| if a == 0 || b == 0 { 0 } else { t[a - 1][b - 1] };
    let holds = |a: usize, b: usize, z: usize| {
        let l = at(at(a, b), z);
        let r = at(at(a, z), at(b, z));
        l == 0 || r == 0 || l == r
    };
    let row_of = |v: usize, col: usize| (1..=n).find(|&r| t[r - 1][col - 1] == v);
    let (i, j) = (i + 1, j + 1);
    for k in 1..=n {
        // (i,j) as a*b, a*z and b*z
        if !holds(i, j, k) || !holds(i, k, j) || !holds(k, i, j) {
            return false;
        }
        // (i,j) as (a*b)*z with a*b = i
        if let Some(a) = row_of(i, k) {
            if !holds(a, k, j) {
                return false;
            }
        }
        // (i,j) as (a*z)*(b*z)
        if let (Some(a), Some(b)) = (row_of(i, k), row_of(j, k)) {
            if !holds(a, b, k) {
                return false;
            }
        }
    }
    true
}

/// Checks the presentation identities of a canonically labelled connected
/// quandle: block conjugation of the generators, the image-of-1 relation,
/// commuting translations at fixed points, and the preimage-of-1 relation.
pub fn presentation_check(q: &QuandleTable) -> Result<(), String> {
    let p = analysis::profile(q).map_err(|e| e.to_string())?;
    let layout = block_layout(&p);
    let r: Vec<Permutation> = q.right_translations();
    let rt = |i: usize| &r[i - 1];
    let r1 = rt(1);
    if *r1 != analysis::canonical_r1(&p) {
        return Err(format!("R_1 = {r1} is not in block form"));
    }
    let conj = |f: &Permutation, g: &Permutation| f.conjugate(g).expect("same degree");
    let c = p.cycles();
    for s in 1..=c {
        let gen = rt(layout.a[s]);
        for k in 1..=p.length(s) {
            let lhs = rt(layout.a[s - 1] + k);
            if *lhs != conj(&r1.power(k as i64), gen) {
                return Err(format!("R_{} is not R_1^{k} R_{} R_1^-{k}", layout.a[s - 1] + k, layout.a[s]));
            }
        }
    }
    for s in 1..=c {
        let gen = rt(layout.a[s]);
        let img = gen.apply(1);
        let t = layout.block_of(img);
        let m = (img - layout.a[t - 1]) as i64;
        let lhs = conj(&r1.power(m), rt(layout.a[t]));
        if lhs != conj(gen, r1) {
            return Err(format!("image-of-1 relation fails for s={s}, t={t}"));
        }
    }
    let n = q.order();
    for i in 1..=n {
        for j in 1..=n {
            if rt(j).apply(i) == i {
                let a = rt(i).compose(rt(j)).expect("same degree");
                let b = rt(j).compose(rt(i)).expect("same degree");
                if a != b {
                    return Err(format!("R_{i} and R_{j} do not commute although R_{j} fixes {i}"));
                }
            }
        }
    }
    for t in 1..=c {
        let gen = rt(layout.a[t]);
        let pre = gen.inverse().apply(1);
        let s = layout.block_of(pre);
        let k = (pre - layout.a[s - 1]) as i64;
        let lhs = conj(&gen.inverse(), r1);
        if lhs != conj(&r1.power(k), rt(layout.a[s])) {
            return Err(format!("preimage-of-1 relation fails for t={t}, s={s}"));
        }
    }
    Ok(())
}

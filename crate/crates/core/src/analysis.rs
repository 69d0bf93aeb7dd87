//! Structural invariants of quandles: orbits, latin-ness, profiles,
//! injectivity patterns, canonical relabeling and isomorphism.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::perm::{write_joined, Permutation};
use crate::quandle::{ElementSet, QuandleTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("quandle is not connected ({orbits} orbits)")]
    NotConnected { orbits: usize },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("profile must be nonempty")]
    Empty,
    #[error("profile must start with 1")]
    NoLeadingOne,
    #[error("profile lengths must be positive and nondecreasing")]
    NotSorted,
    #[error("cannot parse profile {0:?}")]
    Syntax(String),
}

/// Common cycle structure `(l_1, ..., l_c)` of the right translations of a
/// connected quandle, nondecreasing with `l_1 = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Profile(Vec<usize>);

impl Profile {
    pub fn new(lengths: Vec<usize>) -> Result<Profile, ProfileError> {
        match lengths.first() {
            None => return Err(ProfileError::Empty),
            Some(&1) => {}
            Some(_) => return Err(ProfileError::NoLeadingOne),
        }
        if lengths.windows(2).any(|w| w[0] > w[1]) {
            return Err(ProfileError::NotSorted);
        }
        Ok(Profile(lengths))
    }

    pub fn lengths(&self) -> &[usize] {
        &self.0
    }

    /// `l_s` for the 1-based block index `s`.
    pub fn length(&self, s: usize) -> usize {
        self.0[s - 1]
    }

    /// Number of cycles `c`.
    pub fn cycles(&self) -> usize {
        self.0.len()
    }

    pub fn order(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn largest(&self) -> usize {
        *self.0.last().unwrap()
    }

    /// Distinct length values, increasing.
    pub fn distinct_lengths(&self) -> Vec<usize> {
        let mut v = self.0.clone();
        v.dedup();
        v
    }

    pub fn pairwise_distinct(&self) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1])
    }

    /// Number of length-1 cycles, i.e. fixed points of every right translation.
    pub fn fixed_points(&self) -> usize {
        self.0.iter().take_while(|&&l| l == 1).count()
    }

    /// Comma-joined lengths, as used in reports and result-store keys.
    pub fn key(&self) -> String {
        self.to_string()
    }

    /// All profiles of total `n`: a leading 1 followed by a partition of
    /// `n - 1`, in lexicographic order.
    pub fn all_of_order(n: usize) -> Vec<Profile> {
        fn parts(rest: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if rest == 0 {
                out.push(cur.clone());
                return;
            }
            for p in min..=rest {
                cur.push(p);
                parts(rest - p, p, cur, out);
                cur.pop();
            }
        }
        if n == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        parts(n - 1, 1, &mut vec![1], &mut out);
        out.sort();
        out.into_iter().map(Profile).collect()
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.0)
    }
}

impl FromStr for Profile {
    type Err = ProfileError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let lengths = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .ok()
                    .filter(|&l| l > 0)
                    .ok_or_else(|| ProfileError::Syntax(s.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Profile::new(lengths)
    }
}

/// Sorted preimage sizes of a map.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InjectivityPattern(Vec<usize>);

impl InjectivityPattern {
    /// Pattern of a 1-based image list on `{1..n}`.
    pub fn of_map(images: &[usize]) -> InjectivityPattern {
        let mut counts = vec![0; images.len()];
        for &v in images {
            counts[v - 1] += 1;
        }
        counts.sort_unstable();
        InjectivityPattern(counts)
    }

    pub fn of_counts(mut counts: Vec<usize>) -> InjectivityPattern {
        counts.sort_unstable();
        InjectivityPattern(counts)
    }

    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    pub fn largest(&self) -> usize {
        self.0.last().copied().unwrap_or(0)
    }
}

impl fmt::Display for InjectivityPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.0)
    }
}

/// Orbits of the right multiplication group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectivityResult {
    /// Ordered by smallest element.
    pub orbits: Vec<ElementSet>,
}

impl ConnectivityResult {
    pub fn connected(&self) -> bool {
        self.orbits.len() == 1
    }
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller root so orbit order is by minimum
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Orbit partition under the group generated by all right translations.
pub fn orbits(q: &QuandleTable) -> ConnectivityResult {
    let n = q.order();
    let mut sets = DisjointSets::new(n);
    for x in 0..n {
        for y in 0..n {
            sets.union(x, q.op0(x, y));
        }
    }
    let mut by_root: Vec<ElementSet> = vec![ElementSet::empty(); n];
    for x in 0..n {
        let r = sets.find(x);
        by_root[r].insert(x + 1);
    }
    ConnectivityResult {
        orbits: by_root.into_iter().filter(|s| !s.is_empty()).collect(),
    }
}

pub fn is_connected(q: &QuandleTable) -> bool {
    orbits(q).connected()
}

/// Every row is a bijection.
pub fn is_latin(q: &QuandleTable) -> bool {
    let n = q.order();
    (0..n).all(|i| {
        let mut seen = 0u64;
        (0..n).all(|j| {
            let bit = 1u64 << q.op0(i, j);
            let fresh = seen & bit == 0;
            seen |= bit;
            fresh
        })
    })
}

fn require_connected(q: &QuandleTable) -> Result<(), AnalysisError> {
    let o = orbits(q);
    if !o.connected() {
        return Err(AnalysisError::NotConnected {
            orbits: o.orbits.len(),
        });
    }
    Ok(())
}

/// Profile of a connected quandle. Verifies that every right translation has
/// the same cycle structure.
pub fn profile(q: &QuandleTable) -> Result<Profile, AnalysisError> {
    require_connected(q)?;
    let first = q.right0(0).cycle_structure();
    for i in 1..q.order() {
        let cs = q.right0(i).cycle_structure();
        if cs != first {
            return Err(AnalysisError::Inconsistent(format!(
                "R_1 has cycle structure {first} but R_{} has {cs}",
                i + 1
            )));
        }
    }
    Profile::new(first.into_lengths()).map_err(|e| AnalysisError::Inconsistent(e.to_string()))
}

/// Injectivity pattern of a connected quandle. Verifies that every left
/// translation has the same pattern.
pub fn injectivity_pattern(q: &QuandleTable) -> Result<InjectivityPattern, AnalysisError> {
    require_connected(q)?;
    let of_row = |i: usize| InjectivityPattern::of_map(&q.left_translation_map(i).unwrap());
    let first = of_row(1);
    for i in 2..=q.order() {
        let p = of_row(i);
        if p != first {
            return Err(AnalysisError::Inconsistent(format!(
                "L_1 has injectivity pattern {first} but L_{i} has {p}"
            )));
        }
    }
    Ok(first)
}

/// The largest length is a multiple of every length.
pub fn check_hayashi(p: &Profile) -> bool {
    let top = p.largest();
    p.lengths().iter().all(|&l| top.is_multiple_of(l))
}

/// The block-cycle permutation `(1)(2 .. a_2)(a_3' .. a_3)...` for a profile.
pub fn canonical_r1(p: &Profile) -> Permutation {
    let n = p.order();
    let mut image = vec![0; n];
    let mut start = 0;
    for &len in p.lengths() {
        for k in 0..len {
            image[start + k] = start + (k + 1) % len;
        }
        start += len;
    }
    Permutation::from_zero_based(image)
}

/// Relabels a connected quandle so that `R_1` is the canonical block-cycle
/// permutation of its profile, choosing the base point, the order of
/// equal-length cycles and the rotation of each cycle that minimise the
/// row-major table. Also returns the relabeling (old label to new label).
pub fn canonical_relabel(q: &QuandleTable) -> Result<(QuandleTable, Permutation), AnalysisError> {
    let prof = profile(q)?;
    let n = q.order();
    let lengths = prof.lengths().to_vec();
    let starts: Vec<usize> = lengths
        .iter()
        .scan(0, |acc, &l| {
            let s = *acc;
            *acc += l;
            Some(s)
        })
        .collect();

    let mut search = Canonicalizer {
        q,
        n,
        lengths: &lengths,
        starts: &starts,
        sigma: vec![usize::MAX; n],
        inv: vec![usize::MAX; n],
        best: None,
        best_sigma: Vec::new(),
    };
    for base in 0..n {
        let r = q.right0(base);
        let cycles = r.cycles_zero_based();
        let mut used = vec![false; cycles.len()];
        let base_cycle = cycles.iter().position(|c| c[0] == base && c.len() == 1);
        let Some(bc) = base_cycle else {
            return Err(AnalysisError::Inconsistent(format!(
                "R_{} does not fix {}",
                base + 1,
                base + 1
            )));
        };
        used[bc] = true;
        search.sigma[base] = 0;
        search.inv[0] = base;
        search.place(1, &cycles, &mut used);
        search.sigma[base] = usize::MAX;
        search.inv[0] = usize::MAX;
    }
    let best = search.best.expect("at least one relabeling exists");
    let sigma = Permutation::from_zero_based(search.best_sigma);
    Ok((QuandleTable::from_raw_unchecked(n, best), sigma))
}

struct Canonicalizer<'a> {
    q: &'a QuandleTable,
    n: usize,
    lengths: &'a [usize],
    starts: &'a [usize],
    sigma: Vec<usize>,
    inv: Vec<usize>,
    best: Option<Vec<u8>>,
    best_sigma: Vec<usize>,
}

impl Canonicalizer<'_> {
    fn place(&mut self, block: usize, cycles: &[Vec<usize>], used: &mut [bool]) {
        if block == self.lengths.len() {
            self.consider();
            return;
        }
        let len = self.lengths[block];
        let start = self.starts[block];
        for ci in 0..cycles.len() {
            if used[ci] || cycles[ci].len() != len {
                continue;
            }
            used[ci] = true;
            let cycle = &cycles[ci];
            for rot in 0..len {
                for k in 0..len {
                    let old = cycle[(rot + k) % len];
                    self.sigma[old] = start + k;
                    self.inv[start + k] = old;
                }
                self.place(block + 1, cycles, used);
            }
            for &old in cycle {
                self.inv[self.sigma[old]] = usize::MAX;
                self.sigma[old] = usize::MAX;
            }
            used[ci] = false;
        }
    }

    fn consider(&mut self) {
        let n = self.n;
        let cell = |r: usize, c: usize| self.sigma[self.q.op0(self.inv[r], self.inv[c])] as u8;
        if let Some(best) = &self.best {
            // lexicographic comparison with early exit
            let mut less = false;
            'cmp: for r in 0..n {
                for c in 0..n {
                    let v = cell(r, c);
                    let b = best[r * n + c];
                    if v != b {
                        less = v < b;
                        break 'cmp;
                    }
                }
            }
            if !less {
                return;
            }
        }
        let table: Vec<u8> = (0..n * n).map(|k| cell(k / n, k % n)).collect();
        self.best = Some(table);
        self.best_sigma = self.sigma.clone();
    }
}

/// Whether a connected quandle equals its own canonical relabeling.
pub fn is_canonical(q: &QuandleTable) -> bool {
    match canonical_relabel(q) {
        Ok((c, _)) => &c == q,
        Err(_) => false,
    }
}

/// Whether some relabeling carries `a` onto `b`.
pub fn are_isomorphic(a: &QuandleTable, b: &QuandleTable) -> bool {
    if a.order() != b.order() {
        return false;
    }
    let (ca, cb) = (is_connected(a), is_connected(b));
    if ca != cb {
        return false;
    }
    if ca {
        return match (canonical_relabel(a), canonical_relabel(b)) {
            (Ok((x, _)), Ok((y, _))) => x == y,
            _ => false,
        };
    }
    find_isomorphism(a, b).is_some()
}

/// Backtracking search for a bijection `phi` with
/// `phi(x * y) = phi(x) * phi(y)`.
pub fn find_isomorphism(a: &QuandleTable, b: &QuandleTable) -> Option<Permutation> {
    let n = a.order();
    if n != b.order() {
        return None;
    }
    let invariant = |q: &QuandleTable, x: usize| {
        (
            q.right0(x).cycle_structure(),
            InjectivityPattern::of_map(&q.left_translation_map(x + 1).unwrap()),
        )
    };
    let inv_a: Vec<_> = (0..n).map(|x| invariant(a, x)).collect();
    let inv_b: Vec<_> = (0..n).map(|x| invariant(b, x)).collect();
    let mut sa = inv_a.clone();
    let mut sb = inv_b.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }
    let mut phi = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn extend(
        x: usize,
        a: &QuandleTable,
        b: &QuandleTable,
        phi: &mut [usize],
        used: &mut [bool],
        ok: &dyn Fn(usize, usize) -> bool,
    ) -> bool {
        let n = a.order();
        if x == n {
            return true;
        }
        for y in 0..n {
            if used[y] || !ok(x, y) {
                continue;
            }
            phi[x] = y;
            used[y] = true;
            let consistent = (0..=x).all(|u| {
                [(u, x), (x, u)].iter().all(|&(s, t)| {
                    let p = a.op0(s, t);
                    p > x || b.op0(phi[s], phi[t]) == phi[p]
                })
            }) && (0..x).all(|u| {
                (0..x).all(|v| {
                    let p = a.op0(u, v);
                    p != x || b.op0(phi[u], phi[v]) == y
                })
            });
            if consistent && extend(x + 1, a, b, phi, used, ok) {
                return true;
            }
            used[y] = false;
            phi[x] = usize::MAX;
        }
        false
    }

    let ok = |x: usize, y: usize| inv_a[x] == inv_b[y];
    if extend(0, a, b, &mut phi, &mut used, &ok) {
        Some(Permutation::from_zero_based(phi))
    } else {
        None
    }
}

/// Key/value summary used by the `analyze` command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisReport {
    pub order: usize,
    pub connected: bool,
    pub latin: bool,
    pub profile: Option<Profile>,
    pub injectivity_pattern: Option<InjectivityPattern>,
    pub hayashi: Option<bool>,
    pub canonical: bool,
}

impl AnalysisReport {
    pub fn of(q: &QuandleTable) -> Result<AnalysisReport, AnalysisError> {
        let connected = is_connected(q);
        let (profile, pattern, canonical) = if connected {
            (
                Some(profile(q)?),
                Some(injectivity_pattern(q)?),
                canonical_relabel(q)?.0 == *q,
            )
        } else {
            (None, None, false)
        };
        Ok(AnalysisReport {
            order: q.order(),
            connected,
            latin: is_latin(q),
            hayashi: profile.as_ref().map(check_hayashi),
            profile,
            injectivity_pattern: pattern,
            canonical,
        })
    }
}

impl fmt::Display for AnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn opt<T: fmt::Display>(v: &Option<T>) -> String {
            v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
        }
        writeln!(f, "order: {}", self.order)?;
        writeln!(f, "connected: {}", self.connected)?;
        writeln!(f, "latin: {}", self.latin)?;
        writeln!(f, "profile: {}", opt(&self.profile))?;
        writeln!(f, "injectivity_pattern: {}", opt(&self.injectivity_pattern))?;
        writeln!(f, "hayashi: {}", opt(&self.hayashi))?;
        writeln!(f, "canonical: {}", self.canonical)
    }
}

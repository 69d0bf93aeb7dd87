//! Quandle operation tables.
//!
//! A table of order `n` stores `i * j` for all labels `i, j` in `1..=n`.
//! Rows are left translations and columns are right translations.

use std::fmt;

use thiserror::Error;

use crate::perm::{PermError, Permutation};

/// Largest order a [`QuandleTable`] may have. Element sets are `u64` bitmasks.
pub const MAX_ORDER: usize = 64;

/// Default order bound for [`QuandleTable::all_subquandles`].
pub const SUBQUANDLE_SCAN_BOUND: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    Idempotency,
    RightInvertibility,
    RightSelfDistributivity,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::Idempotency => "idempotency",
            Axiom::RightInvertibility => "right-invertibility",
            Axiom::RightSelfDistributivity => "right-self-distributivity",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One failed axiom with its lexicographically smallest witness.
///
/// Witness layouts: idempotency `[i]` with `i*i != i`; right-invertibility
/// `[i, i', j]` with `i < i'` and `i*j = i'*j`; distributivity `[i, j, k]`
/// with `(i*j)*k != (i*k)*(j*k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violation(&self, axiom: Axiom) -> Option<&Violation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valid() {
            return f.write_str("valid");
        }
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{} witness", v.axiom)?;
            for x in &v.witness {
                write!(f, " {x}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuandleError {
    #[error("malformed table (line {line}): {message}")]
    Malformed { line: usize, message: String },
    #[error("not a quandle: {0}")]
    Axioms(AxiomReport),
    #[error("label {label} out of range 1..={order}")]
    OutOfRange { label: usize, order: usize },
    #[error("order {order} exceeds the bound {bound}")]
    OrderTooLarge { order: usize, bound: usize },
    #[error("subset must be nonempty")]
    EmptySubset,
    #[error("R_{0} does not fix {0}")]
    FixedPoint(usize),
    #[error("R_(R_{i}({j})) differs from R_{i} R_{j} R_{i}^-1")]
    Closure { i: usize, j: usize },
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// A set of 1-based labels, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ElementSet(u64);

impl ElementSet {
    pub fn empty() -> Self {
        ElementSet(0)
    }

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            ElementSet(u64::MAX)
        } else {
            ElementSet((1u64 << n) - 1)
        }
    }

    pub fn from_bits(bits: u64) -> Self {
        ElementSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, x: usize) -> bool {
        (1..=64).contains(&x) && self.0 >> (x - 1) & 1 == 1
    }

    pub fn insert(&mut self, x: usize) {
        assert!((1..=64).contains(&x));
        self.0 |= 1 << (x - 1);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: ElementSet) -> ElementSet {
        ElementSet(self.0 | other.0)
    }

    pub fn is_subset(self, other: ElementSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Labels in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |b| self.0 >> b & 1 == 1).map(|b| b + 1)
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ElementSet::empty();
        for x in iter {
            s.insert(x);
        }
        s
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, x) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

/// Checks the three quandle axioms on a 1-based grid.
///
/// The grid must be square with entries in `1..=n`; use [`QuandleTable::parse`]
/// or [`QuandleTable::from_rows`] when that is not already known.
pub fn validate_axioms(grid: &[Vec<usize>]) -> AxiomReport {
    let n = grid.len();
    let at = |i: usize, j: usize| grid[i - 1][j - 1];
    let mut report = AxiomReport::default();

    if let Some(i) = (1..=n).find(|&i| at(i, i) != i) {
        report.violations.push(Violation {
            axiom: Axiom::Idempotency,
            witness: vec![i],
        });
    }

    'inv: for i in 1..=n {
        for i2 in i + 1..=n {
            for j in 1..=n {
                if at(i, j) == at(i2, j) {
                    report.violations.push(Violation {
                        axiom: Axiom::RightInvertibility,
                        witness: vec![i, i2, j],
                    });
                    break 'inv;
                }
            }
        }
    }

    'dist: for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                if at(at(i, j), k) != at(at(i, k), at(j, k)) {
                    report.violations.push(Violation {
                        axiom: Axiom::RightSelfDistributivity,
                        witness: vec![i, j, k],
                    });
                    break 'dist;
                }
            }
        }
    }
    report
}

/// A validated quandle table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuandleTable {
    n: usize,
    // row-major, 0-based values
    cells: Vec<u8>,
}

impl QuandleTable {
    /// Builds a table from 1-based rows (`rows[i-1][j-1] = i*j`) and checks
    /// the axioms.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<QuandleTable, QuandleError> {
        let n = rows.len();
        if n == 0 {
            return Err(QuandleError::Malformed {
                line: 0,
                message: "order must be at least 1".into(),
            });
        }
        if n > MAX_ORDER {
            return Err(QuandleError::OrderTooLarge {
                order: n,
                bound: MAX_ORDER,
            });
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(QuandleError::Malformed {
                    line: r + 1,
                    message: format!("row {} has {} entries, expected {n}", r + 1, row.len()),
                });
            }
            if let Some(&v) = row.iter().find(|&&v| v == 0 || v > n) {
                return Err(QuandleError::Malformed {
                    line: r + 1,
                    message: format!("entry {v} out of range 1..={n}"),
                });
            }
        }
        let report = validate_axioms(rows);
        if !report.valid() {
            return Err(QuandleError::Axioms(report));
        }
        Ok(Self::from_raw_unchecked(
            n,
            rows.iter().flatten().map(|&v| (v - 1) as u8).collect(),
        ))
    }

    /// Parses the plain-text format: first line `n`, then `n` rows of `n`
    /// space-separated labels. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<QuandleTable, QuandleError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (first, header) = lines.next().ok_or(QuandleError::Malformed {
            line: 0,
            message: "empty input".into(),
        })?;
        let n: usize = header.parse().map_err(|_| QuandleError::Malformed {
            line: first,
            message: format!("expected the order, found {header:?}"),
        })?;
        if n == 0 {
            return Err(QuandleError::Malformed {
                line: first,
                message: "order must be at least 1".into(),
            });
        }
        let mut rows = Vec::with_capacity(n);
        for (line, l) in lines {
            if rows.len() == n {
                return Err(QuandleError::Malformed {
                    line,
                    message: format!("more than {n} rows"),
                });
            }
            let row = l
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>().map_err(|_| QuandleError::Malformed {
                        line,
                        message: format!("non-integer entry {t:?}"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            if row.len() != n {
                return Err(QuandleError::Malformed {
                    line,
                    message: format!("row has {} entries, expected {n}", row.len()),
                });
            }
            if let Some(&v) = row.iter().find(|&&v| v == 0 || v > n) {
                return Err(QuandleError::Malformed {
                    line,
                    message: format!("entry {v} out of range 1..={n}"),
                });
            }
            rows.push(row);
        }
        if rows.len() != n {
            return Err(QuandleError::Malformed {
                line: text.lines().count(),
                message: format!("expected {n} rows, found {}", rows.len()),
            });
        }
        Self::from_rows(&rows)
    }

    /// Builds the table whose column `i` is `perms[i-1]`, after checking
    /// `R_i(i) = i` and `R_{R_i(j)} = R_i R_j R_i^-1` for all `i, j`.
    pub fn from_translations(perms: &[Permutation]) -> Result<QuandleTable, QuandleError> {
        let n = perms.len();
        if n == 0 {
            return Err(QuandleError::Malformed {
                line: 0,
                message: "need at least one translation".into(),
            });
        }
        if n > MAX_ORDER {
            return Err(QuandleError::OrderTooLarge {
                order: n,
                bound: MAX_ORDER,
            });
        }
        if let Some(p) = perms.iter().find(|p| p.degree() != n) {
            return Err(PermError::DegreeMismatch(p.degree(), n).into());
        }
        for i in 1..=n {
            for j in 1..=n {
                let lhs = &perms[perms[i - 1].apply(j) - 1];
                let rhs = perms[i - 1].conjugate(&perms[j - 1])?;
                if *lhs != rhs {
                    return Err(QuandleError::Closure { i, j });
                }
            }
        }
        if let Some(i) = (1..=n).find(|&i| perms[i - 1].apply(i) != i) {
            return Err(QuandleError::FixedPoint(i));
        }
        let mut cells = vec![0u8; n * n];
        for (col, p) in perms.iter().enumerate() {
            for (row, &v) in p.zero_based().iter().enumerate() {
                cells[row * n + col] = v as u8;
            }
        }
        Ok(Self::from_raw_unchecked(n, cells))
    }

    /// The trivial quandle `i * j = i`.
    pub fn trivial(n: usize) -> QuandleTable {
        assert!((1..=MAX_ORDER).contains(&n));
        let cells = (0..n).flat_map(|i| std::iter::repeat_n(i as u8, n)).collect();
        Self::from_raw_unchecked(n, cells)
    }

    pub(crate) fn from_raw_unchecked(n: usize, cells: Vec<u8>) -> QuandleTable {
        debug_assert_eq!(cells.len(), n * n);
        QuandleTable { n, cells }
    }

    /// Row-major 0-based cells.
    pub(crate) fn raw(&self) -> &[u8] {
        &self.cells
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// `i * j` for 1-based labels. Panics when out of range.
    pub fn op(&self, i: usize, j: usize) -> usize {
        assert!(i >= 1 && i <= self.n && j >= 1 && j <= self.n);
        self.cells[(i - 1) * self.n + (j - 1)] as usize + 1
    }

    #[inline]
    pub(crate) fn op0(&self, i: usize, j: usize) -> usize {
        self.cells[i * self.n + j] as usize
    }

    /// 1-based rows.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        (1..=self.n).map(|i| self.row(i)).collect()
    }

    fn row(&self, i: usize) -> Vec<usize> {
        self.cells[(i - 1) * self.n..i * self.n]
            .iter()
            .map(|&v| v as usize + 1)
            .collect()
    }

    fn check_label(&self, x: usize) -> Result<(), QuandleError> {
        if x == 0 || x > self.n {
            return Err(QuandleError::OutOfRange {
                label: x,
                order: self.n,
            });
        }
        Ok(())
    }

    /// `R_i : j ↦ j * i`, the column at `i`.
    pub fn right_translation(&self, i: usize) -> Result<Permutation, QuandleError> {
        self.check_label(i)?;
        Ok(self.right0(i - 1))
    }

    pub(crate) fn right0(&self, i: usize) -> Permutation {
        Permutation::from_zero_based((0..self.n).map(|j| self.op0(j, i)).collect())
    }

    /// All right translations `R_1..R_n`.
    pub fn right_translations(&self) -> Vec<Permutation> {
        (0..self.n).map(|i| self.right0(i)).collect()
    }

    /// `L_i : j ↦ i * j`, the row at `i`, as a 1-based image list. Need not
    /// be a bijection.
    pub fn left_translation_map(&self, i: usize) -> Result<Vec<usize>, QuandleError> {
        self.check_label(i)?;
        Ok(self.row(i))
    }

    /// Relabels by `sigma`: the result satisfies
    /// `sigma(i) *' sigma(j) = sigma(i * j)`.
    pub fn relabel(&self, sigma: &Permutation) -> QuandleTable {
        assert_eq!(sigma.degree(), self.n);
        let s = sigma.zero_based();
        let n = self.n;
        let mut cells = vec![0u8; n * n];
        for i in 0..n {
            for j in 0..n {
                cells[s[i] * n + s[j]] = s[self.op0(i, j)] as u8;
            }
        }
        Self::from_raw_unchecked(n, cells)
    }

    /// Disjoint union where elements of different summands act trivially on
    /// each other. The labels of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &QuandleTable) -> Result<QuandleTable, QuandleError> {
        let n = self.n + other.n;
        if n > MAX_ORDER {
            return Err(QuandleError::OrderTooLarge {
                order: n,
                bound: MAX_ORDER,
            });
        }
        let mut cells = vec![0u8; n * n];
        for i in 0..n {
            for j in 0..n {
                cells[i * n + j] = match (i < self.n, j < self.n) {
                    (true, true) => self.op0(i, j) as u8,
                    (false, false) => (other.op0(i - self.n, j - self.n) + self.n) as u8,
                    _ => i as u8,
                };
            }
        }
        Ok(Self::from_raw_unchecked(n, cells))
    }

    /// Whether `y` is closed under `*`.
    pub fn is_subquandle(&self, y: ElementSet) -> Result<bool, QuandleError> {
        if y.is_empty() {
            return Err(QuandleError::EmptySubset);
        }
        if let Some(x) = y.iter().find(|&x| x > self.n) {
            return Err(QuandleError::OutOfRange {
                label: x,
                order: self.n,
            });
        }
        Ok(y.iter().all(|a| y.iter().all(|b| y.contains(self.op(a, b)))))
    }

    /// Fixed set of `R_x^p`, always a subquandle.
    pub fn fixed_point_subquandle(&self, x: usize, p: i64) -> Result<ElementSet, QuandleError> {
        let rx = self.right_translation(x)?.power(p);
        let fixed: ElementSet = rx.fixed_points().into_iter().collect();
        assert!(
            self.is_subquandle(fixed)?,
            "fixed points of a power of R_{x} must be closed"
        );
        Ok(fixed)
    }

    /// Every nonempty closed subset, ordered by size then by elements.
    pub fn all_subquandles(&self) -> Result<Vec<ElementSet>, QuandleError> {
        self.all_subquandles_bounded(SUBQUANDLE_SCAN_BOUND)
    }

    pub fn all_subquandles_bounded(&self, bound: usize) -> Result<Vec<ElementSet>, QuandleError> {
        if self.n > bound {
            return Err(QuandleError::OrderTooLarge {
                order: self.n,
                bound,
            });
        }
        let mut out = Vec::new();
        self.closed_subsets(0, 0, 0, &mut out);
        out.retain(|s| !s.is_empty());
        out.sort_by_key(|s| (s.len(), s.iter().collect::<Vec<_>>()));
        Ok(out)
    }

    // Decides element k. `chosen` is the included set among 0..k, `required`
    // holds products of chosen elements that are not yet decided.
    fn closed_subsets(&self, k: usize, chosen: u64, required: u64, out: &mut Vec<ElementSet>) {
        if k == self.n {
            debug_assert_eq!(required & !chosen, 0);
            out.push(ElementSet(chosen));
            return;
        }
        let bit = 1u64 << k;
        if required & bit == 0 {
            self.closed_subsets(k + 1, chosen, required, out);
        }
        let with = chosen | bit;
        let mut req = required;
        let mut a_bits = with;
        while a_bits != 0 {
            let a = a_bits.trailing_zeros() as usize;
            a_bits &= a_bits - 1;
            req |= 1 << self.op0(a, k);
            req |= 1 << self.op0(k, a);
        }
        // products at or below k must already be chosen
        let decided = if k + 1 >= 64 { u64::MAX } else { (1u64 << (k + 1)) - 1 };
        if req & decided & !with == 0 {
            self.closed_subsets(k + 1, with, req, out);
        }
    }

    /// Serialized table text in the file format.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for QuandleTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for i in 0..self.n {
            for j in 0..self.n {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self.op0(i, j) + 1)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for QuandleTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuandleTable(order {}) ", self.n)?;
        f.debug_list().entries(self.rows()).finish()
    }
}

//! Permutations of `{1..n}`.
//!
//! Labels are 1-based at every public entry point; the image vector is kept
//! 0-based internally.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("permutation degree must be at least 1")]
    EmptyDegree,
    #[error("label {label} out of range 1..={degree}")]
    OutOfRange { label: usize, degree: usize },
    #[error("label {0} appears more than once")]
    Repeated(usize),
    #[error("malformed cycle notation: {0}")]
    Syntax(String),
}

/// A bijection of `{1..n}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "permutation degree must be at least 1");
        Permutation {
            image: (0..n).collect(),
        }
    }

    /// Builds a permutation from its 1-based image list: `images[i - 1]` is the
    /// image of `i`.
    pub fn from_images(images: &[usize]) -> Result<Self, PermError> {
        let n = images.len();
        if n == 0 {
            return Err(PermError::EmptyDegree);
        }
        let mut seen = vec![false; n];
        let mut image = Vec::with_capacity(n);
        for &v in images {
            if v == 0 || v > n {
                return Err(PermError::OutOfRange {
                    label: v,
                    degree: n,
                });
            }
            if std::mem::replace(&mut seen[v - 1], true) {
                return Err(PermError::Repeated(v));
            }
            image.push(v - 1);
        }
        Ok(Permutation { image })
    }

    /// Builds a permutation of degree `n` from disjoint cycles given in 1-based
    /// labels. Elements not mentioned are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        if n == 0 {
            return Err(PermError::EmptyDegree);
        }
        let mut image: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for cycle in cycles {
            for &x in cycle {
                if x == 0 || x > n {
                    return Err(PermError::OutOfRange {
                        label: x,
                        degree: n,
                    });
                }
                if std::mem::replace(&mut seen[x - 1], true) {
                    return Err(PermError::Repeated(x));
                }
            }
            for (k, &x) in cycle.iter().enumerate() {
                image[x - 1] = cycle[(k + 1) % cycle.len()] - 1;
            }
        }
        Ok(Permutation { image })
    }

    pub(crate) fn from_zero_based(image: Vec<usize>) -> Self {
        debug_assert!({
            let mut s = image.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &v)| i == v)
        });
        Permutation { image }
    }

    pub(crate) fn zero_based(&self) -> &[usize] {
        &self.image
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    /// Image of the 1-based label `x`.
    ///
    /// Panics if `x` is outside `1..=n`.
    pub fn apply(&self, x: usize) -> usize {
        assert!(
            x >= 1 && x <= self.degree(),
            "label {x} out of range 1..={}",
            self.degree()
        );
        self.image[x - 1] + 1
    }

    /// 1-based image list.
    pub fn images(&self) -> Vec<usize> {
        self.image.iter().map(|&v| v + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self ∘ g`: apply `g` first, then `self`.
    pub fn compose(&self, g: &Permutation) -> Result<Permutation, PermError> {
        self.check_degree(g)?;
        Ok(Permutation {
            image: g.image.iter().map(|&x| self.image[x]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (x, &y) in self.image.iter().enumerate() {
            inv[y] = x;
        }
        Permutation { image: inv }
    }

    /// `self ∘ g ∘ self⁻¹`.
    pub fn conjugate(&self, g: &Permutation) -> Result<Permutation, PermError> {
        self.check_degree(g)?;
        let mut image = vec![0; self.degree()];
        for (x, &gx) in g.image.iter().enumerate() {
            image[self.image[x]] = self.image[gx];
        }
        Ok(Permutation { image })
    }

    /// `k`-fold composition; negative `k` uses the inverse.
    pub fn power(&self, k: i64) -> Permutation {
        let n = self.degree();
        let base = if k < 0 { self.inverse() } else { self.clone() };
        // Reduce the exponent per element by its cycle length.
        let mut image = vec![0; n];
        let e = k.unsigned_abs();
        for cycle in base.cycles_zero_based() {
            let len = cycle.len() as u64;
            let shift = (e % len) as usize;
            for (pos, &x) in cycle.iter().enumerate() {
                image[x] = cycle[(pos + shift) % cycle.len()];
            }
        }
        Permutation { image }
    }

    /// Disjoint cycles with fixed points included, each starting at its
    /// minimal element, ordered by that minimal element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.cycles_zero_based()
            .into_iter()
            .map(|c| c.into_iter().map(|x| x + 1).collect())
            .collect()
    }

    pub(crate) fn cycles_zero_based(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.image[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_structure(&self) -> CycleStructure {
        let mut lengths: Vec<usize> = self.cycles_zero_based().iter().map(Vec::len).collect();
        lengths.sort_unstable();
        CycleStructure(lengths)
    }

    /// Sorted 1-based fixed points.
    pub fn fixed_points(&self) -> Vec<usize> {
        self.image
            .iter()
            .enumerate()
            .filter(|&(i, &v)| i == v)
            .map(|(i, _)| i + 1)
            .collect()
    }

    fn check_degree(&self, g: &Permutation) -> Result<(), PermError> {
        if self.degree() != g.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), g.degree()));
        }
        Ok(())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in self.cycles() {
            write!(f, "(")?;
            for (k, x) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{self}")
    }
}

/// Parses full cycle notation such as `(1)(2 3)(4 5 6 7 8 9)`. Every label in
/// `1..=n` must appear, where `n` is the largest label.
impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cycles = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| PermError::Syntax(format!("expected '(' at {rest:?}")))?;
            let close = body
                .find(')')
                .ok_or_else(|| PermError::Syntax("unclosed cycle".into()))?;
            let cycle = body[..close]
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| PermError::Syntax(format!("bad label {t:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if cycle.is_empty() {
                return Err(PermError::Syntax("empty cycle".into()));
            }
            cycles.push(cycle);
            rest = body[close + 1..].trim_start();
        }
        let n = cycles.iter().flatten().copied().max().ok_or(PermError::EmptyDegree)?;
        let count: usize = cycles.iter().map(Vec::len).sum();
        let perm = Permutation::from_cycles(n, &cycles)?;
        if count != n {
            return Err(PermError::Syntax(format!(
                "cycle notation must list all {n} labels, found {count}"
            )));
        }
        Ok(perm)
    }
}

/// Multiset of cycle lengths, sorted nondecreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleStructure(Vec<usize>);

impl CycleStructure {
    pub fn lengths(&self) -> &[usize] {
        &self.0
    }

    pub fn into_lengths(self) -> Vec<usize> {
        self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

impl fmt::Display for CycleStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.0)
    }
}

pub(crate) fn write_joined(f: &mut fmt::Formatter<'_>, xs: &[usize]) -> fmt::Result {
    for (k, x) in xs.iter().enumerate() {
        if k > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}


#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(Permutation::from_zero_based)
    }

    fn pair() -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
        (1usize..12).prop_flat_map(|n| (perm(n), perm(n), perm(n)))
    }

    proptest! {
        #[test]
        fn conjugation_preserves_cycle_structure((f, g, _) in pair()) {
            prop_assert_eq!(f.conjugate(&g).unwrap().cycle_structure(), g.cycle_structure());
        }

        #[test]
        fn compose_is_associative((f, g, h) in pair()) {
            let left = f.compose(&g).unwrap().compose(&h).unwrap();
            let right = f.compose(&g.compose(&h).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn power_adds_exponents((f, _, _) in pair(), a in -20i64..20, b in -20i64..20) {
            prop_assert_eq!(f.power(a + b), f.power(a).compose(&f.power(b)).unwrap());
        }

        #[test]
        fn cycle_structure_sums_to_degree((f, _, _) in pair()) {
            let cs = f.cycle_structure();
            prop_assert_eq!(cs.total(), f.degree());
            prop_assert!(cs.lengths().windows(2).all(|w| w[0] <= w[1]));
        }

        #[test]
        fn display_parse_round_trip((f, _, _) in pair()) {
            prop_assert_eq!(f.to_string().parse::<Permutation>().unwrap(), f);
        }
    }
}

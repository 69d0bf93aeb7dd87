//! Embedded tables: the order 9 table from the literature, tables pinned from
//! enumeration runs, and a few constructed families.

use std::fmt;

use thiserror::Error;

use crate::analysis::{self, AnalysisError, InjectivityPattern, Profile};
use crate::constraints::CycleQuandleTable;
use crate::quandle::QuandleTable;

/// The order 9 connected latin quandle with profile (1,2,6).
pub const Q_9_4_TEXT: &str = "\
# Q_9_4
9
1 3 2 7 8 9 4 5 6
3 2 1 9 6 5 8 7 4
2 1 3 5 4 7 6 9 8
5 7 9 4 1 8 2 6 3
6 4 8 2 5 1 9 3 7
7 9 5 8 3 6 1 4 2
8 6 4 3 9 2 7 1 5
9 5 7 6 2 4 3 8 1
4 8 6 1 7 3 5 2 9
";

/// Canonical connected quandle of order 12 with profile (1,2,3,6), pinned
/// from `enumerate` (smallest canonical table for that profile).
pub const Q_12_4_TEXT: &str = include_str!("../data/q_12_4.qnd");

/// Canonical connected quandle of order 15 with profile (1,2,4,4,4), pinned
/// from `enumerate` (smallest canonical table for that profile).
pub const Q_15_3_TEXT: &str = include_str!("../data/q_15_3.qnd");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixtureError {
    #[error("unknown fixture {0:?}")]
    Unknown(String),
}

/// Expected analysis of a fixture.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expected {
    pub connected: bool,
    pub latin: bool,
    pub profile: Option<Profile>,
    pub injectivity_pattern: Option<InjectivityPattern>,
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub source: &'static str,
    pub table: QuandleTable,
    pub expected: Expected,
}

impl Fixture {
    /// Compares the fixture's analysis against its expectations and returns
    /// the first mismatch.
    pub fn check(&self) -> Result<(), String> {
        let q = &self.table;
        let connected = analysis::is_connected(q);
        let latin = analysis::is_latin(q);
        let (profile, pattern) = if connected {
            let p = analysis::profile(q).map_err(|e: AnalysisError| e.to_string())?;
            let i = analysis::injectivity_pattern(q).map_err(|e| e.to_string())?;
            (Some(p), Some(i))
        } else {
            (None, None)
        };
        let got = Expected {
            connected,
            latin,
            profile,
            injectivity_pattern: pattern,
        };
        if got != self.expected {
            return Err(format!(
                "{}: expected {:?}, got {:?}",
                self.name, self.expected, got
            ));
        }
        Ok(())
    }
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# {} ({})", self.name, self.source)?;
        write!(f, "{}", self.table)
    }
}

/// Names accepted by [`load_fixture`].
pub const FIXTURE_NAMES: &[&str] = &[
    "Q_9_4",
    "Q_12_4",
    "Q_15_3",
    "trivial_3",
    "dihedral_3",
    "dihedral_5",
    "dihedral_7",
    "tetrahedral_4",
    "alexander_5_2",
    "alexander_7_2",
    "alexander_7_3",
    "alexander_11_3",
];

pub fn q_9_4() -> QuandleTable {
    QuandleTable::parse(Q_9_4_TEXT).expect("embedded table is valid")
}

/// Published block grid for [`q_9_4`]; the `(3,3)` cell is blank.
pub fn q_9_4_cycle_table() -> CycleQuandleTable {
    let b = |v: &[usize]| Some(v.to_vec());
    CycleQuandleTable::from_rows(&[
        vec![b(&[1]), b(&[2]), b(&[3])],
        vec![b(&[2]), b(&[1, 2]), b(&[3])],
        vec![b(&[3]), b(&[3]), None],
    ])
    .expect("3x3 grid")
}

pub fn q_12_4() -> QuandleTable {
    QuandleTable::parse(Q_12_4_TEXT).expect("embedded table is valid")
}

pub fn q_15_3() -> QuandleTable {
    QuandleTable::parse(Q_15_3_TEXT).expect("embedded table is valid")
}

/// Dihedral quandle on `Z_n`: `i * j = 2j - i`.
pub fn dihedral(n: usize) -> QuandleTable {
    let rows: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).map(|j| (2 * j + n - i) % n + 1).collect())
        .collect();
    QuandleTable::from_rows(&rows).expect("dihedral quandle")
}

/// Alexander quandle on `Z_p`: `i * j = t i + (1 - t) j`.
pub fn alexander(p: usize, t: usize) -> QuandleTable {
    let rows: Vec<Vec<usize>> = (0..p)
        .map(|i| {
            (0..p)
                .map(|j| (t * i + (p + 1 - t % p) * j) % p + 1)
                .collect()
        })
        .collect();
    QuandleTable::from_rows(&rows).expect("alexander quandle")
}

/// Alexander quandle on GF(4) with `t = w`, `w^2 = w + 1`.
pub fn tetrahedral() -> QuandleTable {
    // elements 0, 1, w, w^2 encoded as bit pairs; addition is xor
    fn mul(a: usize, b: usize) -> usize {
        if a == 0 || b == 0 {
            return 0;
        }
        let log = [usize::MAX, 0, 1, 2];
        let exp = [1, 2, 3];
        exp[(log[a] + log[b]) % 3]
    }
    let (t, one_minus_t) = (2, 3);
    let rows: Vec<Vec<usize>> = (0..4)
        .map(|i| (0..4).map(|j| (mul(t, i) ^ mul(one_minus_t, j)) + 1).collect())
        .collect();
    QuandleTable::from_rows(&rows).expect("tetrahedral quandle")
}

fn expected(connected: bool, latin: bool, profile: Option<&str>, pattern: Option<Vec<usize>>) -> Expected {
    Expected {
        connected,
        latin,
        profile: profile.map(|p| p.parse().expect("profile literal")),
        injectivity_pattern: pattern.map(InjectivityPattern::of_counts),
    }
}

pub fn load_fixture(name: &str) -> Result<Fixture, FixtureError> {
    let latin = |n: usize, p: &str| expected(true, true, Some(p), Some(vec![1; n]));
    let fx = match name {
        "Q_9_4" => Fixture {
            name: "Q_9_4",
            source: "published quandle table of order 9",
            table: q_9_4(),
            expected: latin(9, "1,2,6"),
        },
        "Q_12_4" => Fixture {
            name: "Q_12_4",
            source: "pinned canonical enumeration result for profile 1,2,3,6",
            table: q_12_4(),
            expected: latin(12, "1,2,3,6"),
        },
        "Q_15_3" => Fixture {
            name: "Q_15_3",
            source: "pinned canonical enumeration result for profile 1,2,4,4,4",
            table: q_15_3(),
            expected: latin(15, "1,2,4,4,4"),
        },
        "trivial_3" => Fixture {
            name: "trivial_3",
            source: "constructed: i*j = i",
            table: QuandleTable::trivial(3),
            expected: expected(false, false, None, None),
        },
        "dihedral_3" => Fixture {
            name: "dihedral_3",
            source: "constructed: i*j = 2j - i mod 3",
            table: dihedral(3),
            expected: latin(3, "1,2"),
        },
        "dihedral_5" => Fixture {
            name: "dihedral_5",
            source: "constructed: i*j = 2j - i mod 5",
            table: dihedral(5),
            expected: latin(5, "1,2,2"),
        },
        "dihedral_7" => Fixture {
            name: "dihedral_7",
            source: "constructed: i*j = 2j - i mod 7",
            table: dihedral(7),
            expected: latin(7, "1,2,2,2"),
        },
        "tetrahedral_4" => Fixture {
            name: "tetrahedral_4",
            source: "constructed: Alexander quandle over GF(4), t = w",
            table: tetrahedral(),
            expected: latin(4, "1,3"),
        },
        "alexander_5_2" => Fixture {
            name: "alexander_5_2",
            source: "constructed: i*j = 2i - j mod 5",
            table: alexander(5, 2),
            expected: latin(5, "1,4"),
        },
        "alexander_7_2" => Fixture {
            name: "alexander_7_2",
            source: "constructed: i*j = 2i - j mod 7",
            table: alexander(7, 2),
            expected: latin(7, "1,3,3"),
        },
        "alexander_7_3" => Fixture {
            name: "alexander_7_3",
            source: "constructed: i*j = 3i - 2j mod 7",
            table: alexander(7, 3),
            expected: latin(7, "1,6"),
        },
        "alexander_11_3" => Fixture {
            name: "alexander_11_3",
            source: "constructed: i*j = 3i - 2j mod 11",
            table: alexander(11, 3),
            expected: latin(11, "1,5,5"),
        },
        other => return Err(FixtureError::Unknown(other.to_string())),
    };
    Ok(fx)
}

pub fn all_fixtures() -> Vec<Fixture> {
    FIXTURE_NAMES
        .iter()
        .map(|n| load_fixture(n).expect("listed fixture"))
        .collect()
}

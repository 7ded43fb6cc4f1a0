//! Directed 3-cycle counts and the classical bounds on them.

use std::fmt;

use num_integer::binomial;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tournament::{ScoreVector, Tournament};

/// Number of directed 3-cycles of a tournament.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycleCount(pub u64);

impl CycleCount {
    pub fn get(self) -> u64 {
        self.0
    }
}

impl fmt::Display for CycleCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `C(n,3) - sum C(s_i,2)`.
pub fn c3_from_scores(s: &ScoreVector) -> CycleCount {
    let n = s.len() as u64;
    let total = binomial(n, 3);
    let transitive_triples: u64 = s.raw().iter().map(|&v| binomial(u64::from(v), 2)).sum();
    CycleCount(total - transitive_triples)
}

/// Counts 3-cycles by testing every triple `i < j < k` for one of the two
/// cyclic orientations.
pub fn c3_direct(t: &Tournament) -> CycleCount {
    let n = t.order();
    let mut count = 0;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let forward = t.beats(i, j) && t.beats(j, k) && t.beats(k, i);
                let backward = t.beats(i, k) && t.beats(k, j) && t.beats(j, i);
                if forward || backward {
                    count += 1;
                }
            }
        }
    }
    CycleCount(count)
}

/// 3-cycle count from the score formula, the fast path used during search.
pub fn c3(t: &Tournament) -> CycleCount {
    c3_from_scores(&t.score_vector())
}

/// Change in the 3-cycle count when the arc `i -> j` is reversed, given the
/// raw scores before the reversal: `s_i - s_j - 1`.
pub fn reversal_delta(s: &ScoreVector, i: usize, j: usize) -> Result<i64> {
    if i == j {
        return Err(Error::SameVertex(i));
    }
    let n = s.len();
    for v in [i, j] {
        if v >= n {
            return Err(Error::NoSuchVertex(v, n));
        }
    }
    Ok(i64::from(s.raw()[i]) - i64::from(s.raw()[j]) - 1)
}

/// Maximum number of 3-cycles over all order-`n` tournaments:
/// `C(n+1,3)/4` for odd `n` and `2 C(n/2+1,3)` for even `n`.
pub fn moon_bound(n: usize) -> u64 {
    let n = n as u64;
    if n % 2 == 1 {
        let b = binomial(n + 1, 3);
        debug_assert_eq!(b % 4, 0);
        b / 4
    } else {
        2 * binomial(n / 2 + 1, 3)
    }
}

/// The exact quarter-integer `C(n,3)/4`; singular tournament matrices never
/// exceed it.
pub fn shader_threshold(n: usize) -> Ratio<u64> {
    Ratio::new(binomial(n as u64, 3), 4)
}

/// Both bounds for one order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundPair {
    pub moon: u64,
    pub shader: Ratio<u64>,
}

impl BoundPair {
    pub fn for_order(n: usize) -> Self {
        BoundPair {
            moon: moon_bound(n),
            shader: shader_threshold(n),
        }
    }

    /// True iff `c` exceeds the singular threshold, i.e. a tournament with
    /// this many 3-cycles is forced to be nonsingular.
    pub fn forces_nonsingular(&self, c: CycleCount) -> bool {
        Ratio::from_integer(c.0) > self.shader
    }
}

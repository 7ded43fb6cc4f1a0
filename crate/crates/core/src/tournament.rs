//! Bit-packed tournament representation, text and code formats, the
//! standard constructions and elementary mutations.
//!
//! Row `i` of a [`Tournament`] is a word whose bit `j` is set iff vertex `i`
//! beats vertex `j`. Vertices are 0-based.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported order; one row fits a `u32`.
pub const MAX_ORDER: usize = 32;

/// A set of vertices of a tournament, as a bit mask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u32);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        VertexSet(low_mask(n))
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_ORDER && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Smallest vertex in the set.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Vertices in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

pub(crate) fn low_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Number of unordered vertex pairs of an order-`n` tournament.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// A labeled tournament on `1..=32` vertices.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Tournament {
    n: usize,
    rows: [u32; MAX_ORDER],
}

impl fmt::Debug for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tournament({})", self.encode())
    }
}

fn check_order(n: usize, min: usize) -> Result<()> {
    if n < min || n > MAX_ORDER {
        return Err(Error::OrderOutOfRange {
            n,
            min,
            max: MAX_ORDER,
        });
    }
    Ok(())
}

impl Tournament {
    /// Builds a tournament from adjacency rows, checking every invariant.
    pub fn from_rows(rows: &[u32]) -> Result<Self> {
        let n = rows.len();
        check_order(n, 1)?;
        let mut t = Tournament {
            n,
            rows: [0; MAX_ORDER],
        };
        t.rows[..n].copy_from_slice(rows);
        t.validate()?;
        Ok(t)
    }

    /// Builds a tournament from its pair bits: bit `k` of `bits` orients the
    /// `k`-th pair `(i, j)`, `i < j`, as `i -> j` when set.
    ///
    /// Only orders with at most 64 pairs (`n <= 11`) fit.
    pub fn from_pair_bits(n: usize, bits: u64) -> Result<Self> {
        check_order(n, 1)?;
        if pair_count(n) > 64 {
            return Err(Error::OrderTooLarge { n, max: 11 });
        }
        let mut rows = [0u32; MAX_ORDER];
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if bits >> k & 1 == 1 {
                    rows[i] |= 1 << j;
                } else {
                    rows[j] |= 1 << i;
                }
                k += 1;
            }
        }
        Ok(Tournament { n, rows })
    }

    pub(crate) fn from_rows_unchecked(n: usize, rows: [u32; MAX_ORDER]) -> Self {
        let t = Tournament { n, rows };
        debug_assert!(t.validate().is_ok());
        t
    }

    /// Checks the tournament invariants: zero diagonal, exactly one arc per
    /// pair, and no bits beyond column `n - 1`.
    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        check_order(n, 1)?;
        let mask = low_mask(n);
        for i in 0..n {
            let row = self.rows[i];
            if row & !mask != 0 {
                return Err(Error::NotTournament(format!(
                    "row {i} has bits beyond column {}",
                    n - 1
                )));
            }
            if row >> i & 1 == 1 {
                return Err(Error::NotTournament(format!("nonzero diagonal at {i}")));
            }
            for j in i + 1..n {
                let ij = row >> j & 1;
                let ji = self.rows[j] >> i & 1;
                if ij + ji != 1 {
                    return Err(Error::NotTournament(format!(
                        "entries ({i},{j}) and ({j},{i}) sum to {}",
                        ij + ji
                    )));
                }
            }
        }
        if self.rows[n..].iter().any(|&r| r != 0) {
            return Err(Error::NotTournament("rows beyond the order".into()));
        }
        Ok(())
    }

    /// Parses a square 0/1 grid, one row per non-empty line. Whitespace
    /// inside a line is ignored.
    pub fn from_matrix_text(text: &str) -> Result<Self> {
        let mut grid: Vec<(usize, Vec<(usize, char)>)> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let cells: Vec<(usize, char)> = line
                .chars()
                .enumerate()
                .filter(|(_, c)| !c.is_whitespace())
                .collect();
            if !cells.is_empty() {
                grid.push((lineno + 1, cells));
            }
        }
        let n = grid.len();
        check_order(n, 1)?;
        let mut rows = [0u32; MAX_ORDER];
        for (i, (lineno, cells)) in grid.iter().enumerate() {
            if cells.len() != n {
                return Err(Error::NonSquare {
                    rows: n,
                    row: i,
                    len: cells.len(),
                });
            }
            for (j, &(col, ch)) in cells.iter().enumerate() {
                match ch {
                    '0' => {}
                    '1' => rows[i] |= 1 << j,
                    _ => {
                        return Err(Error::BadChar {
                            line: *lineno,
                            column: col + 1,
                            ch,
                        })
                    }
                }
            }
        }
        let t = Tournament { n, rows };
        t.validate()?;
        Ok(t)
    }

    /// Renders the adjacency matrix, one row per line, no separators.
    pub fn to_matrix_text(&self) -> String {
        let mut out = String::with_capacity(self.n * (self.n + 1));
        for i in 0..self.n {
            for j in 0..self.n {
                out.push(if self.beats(i, j) { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows[..self.n]
    }

    /// True iff `i -> j`.
    #[inline]
    pub fn beats(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    /// Vertices beaten by `v`.
    #[inline]
    pub fn out_set(&self, v: usize) -> VertexSet {
        VertexSet(self.rows[v])
    }

    /// Vertices that beat `v`.
    #[inline]
    pub fn in_set(&self, v: usize) -> VertexSet {
        VertexSet(!self.rows[v] & low_mask(self.n) & !(1 << v))
    }

    pub fn score(&self, v: usize) -> u32 {
        self.rows[v].count_ones()
    }

    pub fn score_vector(&self) -> ScoreVector {
        ScoreVector::new(self.rows().iter().map(|r| r.count_ones()).collect())
    }

    /// Transitive tournament: `i -> j` iff `i > j`, so vertex `i` has score `i`.
    pub fn transitive(n: usize) -> Result<Self> {
        check_order(n, 1)?;
        let mut rows = [0u32; MAX_ORDER];
        for (i, row) in rows.iter_mut().enumerate().take(n) {
            *row = low_mask(i);
        }
        Ok(Tournament { n, rows })
    }

    /// Upset tournament: the transitive tournament with the arc from the top
    /// vertex `n-1` to the bottom vertex `0` reversed.
    pub fn upset(n: usize) -> Result<Self> {
        check_order(n, 3)?;
        let t = Tournament::transitive(n)?;
        t.reverse_arc(n - 1, 0)
    }

    /// Rotational tournament on odd `n`: `i -> i+k (mod n)` for `k = 1..=(n-1)/2`.
    pub fn regular(n: usize) -> Result<Self> {
        check_order(n, 1)?;
        if n.is_multiple_of(2) {
            return Err(Error::EvenOrder(n));
        }
        Ok(Self::circulant(n, (n - 1) / 2))
    }

    /// Almost regular tournament on even `n`: the circulant with steps
    /// `1..n/2`, plus the diameter arcs `i -> i + n/2` for `i < n/2`.
    pub fn almost_regular(n: usize) -> Result<Self> {
        check_order(n, 2)?;
        if n % 2 == 1 {
            return Err(Error::OddOrder(n));
        }
        let mut t = Self::circulant(n, n / 2 - 1);
        let half = n / 2;
        for i in 0..half {
            t.rows[i] |= 1 << (i + half);
        }
        Ok(t)
    }

    fn circulant(n: usize, steps: usize) -> Self {
        let mut rows = [0u32; MAX_ORDER];
        for (i, row) in rows.iter_mut().enumerate().take(n) {
            for k in 1..=steps {
                *row |= 1 << ((i + k) % n);
            }
        }
        Tournament { n, rows }
    }

    /// Appends vertex `n`, beaten by every other vertex.
    pub fn with_sink(&self) -> Result<Self> {
        check_order(self.n + 1, 2)?;
        let mut t = *self;
        for i in 0..self.n {
            t.rows[i] |= 1 << self.n;
        }
        t.n += 1;
        Ok(t)
    }

    /// Appends vertex `n`, beating every other vertex.
    pub fn with_source(&self) -> Result<Self> {
        check_order(self.n + 1, 2)?;
        let mut t = *self;
        t.rows[self.n] = low_mask(self.n);
        t.n += 1;
        Ok(t)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::NoSuchVertex(v, self.n));
        }
        Ok(())
    }

    /// Reverses the existing arc `i -> j`.
    pub fn reverse_arc(&self, i: usize, j: usize) -> Result<Self> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        if i == j {
            return Err(Error::SameVertex(i));
        }
        if !self.beats(i, j) {
            return Err(Error::NoSuchArc { from: i, to: j });
        }
        let mut t = *self;
        t.rows[i] &= !(1 << j);
        t.rows[j] |= 1 << i;
        Ok(t)
    }

    /// Relabels vertices: new vertex `p` is old vertex `perm[p]`.
    ///
    /// Panics if `perm` is not a permutation of `0..n`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n, "permutation length");
        let seen: VertexSet = perm.iter().copied().collect();
        assert_eq!(seen, VertexSet::full(self.n), "not a permutation");
        let mut rows = [0u32; MAX_ORDER];
        for (p, row) in rows.iter_mut().enumerate().take(self.n) {
            let old = self.rows[perm[p]];
            for (q, &oq) in perm.iter().enumerate() {
                *row |= (old >> oq & 1) << q;
            }
        }
        Tournament { n: self.n, rows }
    }

    pub fn encode(&self) -> UpperTriangleCode {
        let n = self.n;
        let mut code = UpperTriangleCode::zeros(n);
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.beats(i, j) {
                    code.set(k);
                }
                k += 1;
            }
        }
        code
    }

    pub fn decode(code: &UpperTriangleCode) -> Self {
        let n = code.order();
        let mut rows = [0u32; MAX_ORDER];
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if code.bit(k) {
                    rows[i] |= 1 << j;
                } else {
                    rows[j] |= 1 << i;
                }
                k += 1;
            }
        }
        Tournament { n, rows }
    }
}

/// Out-degrees in vertex order together with their nondecreasing rearrangement.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ScoreVector {
    raw: Vec<u32>,
    sorted: Vec<u32>,
}

impl ScoreVector {
    pub fn new(raw: Vec<u32>) -> Self {
        let mut sorted = raw.clone();
        sorted.sort_unstable();
        ScoreVector { raw, sorted }
    }

    /// Accepts only sequences that are score vectors of some tournament
    /// (Landau's condition on the sorted sequence).
    pub fn try_new(raw: Vec<u32>) -> Result<Self> {
        let s = ScoreVector::new(raw);
        let mut prefix = 0u64;
        for (k, &v) in s.sorted.iter().enumerate() {
            prefix += u64::from(v);
            let need = pair_count(k + 1) as u64;
            if prefix < need {
                return Err(Error::NotTournament(format!(
                    "score sequence fails Landau's condition at length {}",
                    k + 1
                )));
            }
        }
        if prefix != pair_count(s.len()) as u64 {
            return Err(Error::NotTournament(
                "scores do not sum to n(n-1)/2".into(),
            ));
        }
        Ok(s)
    }

    pub fn raw(&self) -> &[u32] {
        &self.raw
    }

    pub fn sorted(&self) -> &[u32] {
        &self.sorted
    }

    pub fn len(&self) -> usize {
        self.raw.len()
    }

    pub fn is_empty(&self) -> bool {
        self.raw.is_empty()
    }
}

/// Pair-lexicographic bit encoding of a tournament: bit `k` describes the
/// `k`-th pair `(i, j)`, `i < j`, in the order `(0,1), (0,2), .., (1,2), ..`,
/// and is set iff `i -> j`.
///
/// Text form is `T<n>:<hex>` where the hex number is `sum bit_k * 2^k`,
/// written most significant digit first with exactly `max(1, ceil(m/4))`
/// lowercase digits for `m = n(n-1)/2` pairs.
///
/// The ordering compares `n` first and then the bit sequences
/// lexicographically starting from bit 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UpperTriangleCode {
    n: usize,
    words: Vec<u64>,
}

impl UpperTriangleCode {
    fn zeros(n: usize) -> Self {
        UpperTriangleCode {
            n,
            words: vec![0; pair_count(n).div_ceil(64)],
        }
    }

    /// Builds a code from raw words (bit `k` of the sequence is bit `k % 64`
    /// of word `k / 64`). Bits beyond the pair count must be zero.
    pub fn from_words(n: usize, words: &[u64]) -> Result<Self> {
        check_order(n, 1)?;
        let mut code = Self::zeros(n);
        if words.len() != code.words.len() {
            return Err(Error::BadLength(format!(
                "expected {} words, got {}",
                code.words.len(),
                words.len()
            )));
        }
        code.words.copy_from_slice(words);
        code.check_padding()?;
        Ok(code)
    }

    fn check_padding(&self) -> Result<()> {
        let m = self.len();
        if !m.is_multiple_of(64) {
            if let Some(&last) = self.words.last() {
                if last >> (m % 64) != 0 {
                    return Err(Error::BadLength(format!(
                        "bits set beyond the {m} pairs of order {}",
                        self.n
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of bits, `n(n-1)/2`.
    pub fn len(&self) -> usize {
        pair_count(self.n)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn bit(&self, k: usize) -> bool {
        self.words[k / 64] >> (k % 64) & 1 == 1
    }

    fn set(&mut self, k: usize) {
        self.words[k / 64] |= 1 << (k % 64);
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    fn hex_digits(&self) -> usize {
        self.len().div_ceil(4).max(1)
    }

    fn nibble(&self, t: usize) -> u8 {
        let k = 4 * t;
        if k >= self.words.len() * 64 {
            return 0;
        }
        // a nibble never straddles a word boundary since 64 % 4 == 0
        (self.words[k / 64] >> (k % 64) & 0xf) as u8
    }
}

impl Ord for UpperTriangleCode {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.n.cmp(&other.n).then_with(|| {
            for (a, b) in self.words.iter().zip(&other.words) {
                let diff = a ^ b;
                if diff != 0 {
                    let low = diff & diff.wrapping_neg();
                    return if a & low == 0 {
                        std::cmp::Ordering::Less
                    } else {
                        std::cmp::Ordering::Greater
                    };
                }
            }
            std::cmp::Ordering::Equal
        })
    }
}

impl PartialOrd for UpperTriangleCode {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for UpperTriangleCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}:", self.n)?;
        for t in (0..self.hex_digits()).rev() {
            write!(f, "{:x}", self.nibble(t))?;
        }
        Ok(())
    }
}

impl fmt::Debug for UpperTriangleCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for UpperTriangleCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let rest = s
            .strip_prefix('T')
            .ok_or_else(|| Error::BadHex(format!("{s:?} does not start with 'T'")))?;
        let (n_txt, hex) = rest
            .split_once(':')
            .ok_or_else(|| Error::BadHex(format!("{s:?} has no ':'")))?;
        let n: usize = n_txt
            .parse()
            .map_err(|_| Error::BadHex(format!("bad order {n_txt:?}")))?;
        check_order(n, 1)?;
        let mut code = Self::zeros(n);
        let digits = code.hex_digits();
        if hex.len() != digits {
            return Err(Error::BadLength(format!(
                "order {n} needs {digits} hex digits, got {}",
                hex.len()
            )));
        }
        for (pos, ch) in hex.chars().enumerate() {
            let v = ch
                .to_digit(16)
                .ok_or_else(|| Error::BadHex(format!("bad hex digit {ch:?}")))?
                as u64;
            let t = digits - 1 - pos;
            let k = 4 * t;
            if v != 0 && k / 64 >= code.words.len() {
                return Err(Error::BadLength(format!(
                    "bits set beyond the {} pairs of order {n}",
                    code.len()
                )));
            }
            if v != 0 {
                code.words[k / 64] |= v << (k % 64);
            }
        }
        code.check_padding()?;
        Ok(code)
    }
}

impl Serialize for UpperTriangleCode {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for UpperTriangleCode {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

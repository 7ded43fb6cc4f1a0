//! Canonical labeling and generation of tournaments up to isomorphism.
//!
//! The canonical code of a tournament is its lexicographically smallest
//! [`UpperTriangleCode`] over all relabelings. It is found by a backtracking
//! search that places vertices one position at a time: the unplaced vertices
//! are kept in an ordered partition by their relation to the placed ones, the
//! next position must come from the first cell, and a branch survives only
//! while its rows stay minimal.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::is_singular;
use crate::structure::is_strong;
use crate::tournament::{low_mask, pair_count, Tournament, UpperTriangleCode, MAX_ORDER};

/// Largest order accepted by canonical labeling.
pub const CANON_MAX_ORDER: usize = 10;
/// Largest order accepted by class enumeration.
pub const ENUM_MAX_ORDER: usize = 9;

/// Label-invariant encoding of an isomorphism class.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(UpperTriangleCode);

impl CanonicalCode {
    pub fn code(&self) -> &UpperTriangleCode {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.order()
    }

    /// The canonical representative.
    pub fn tournament(&self) -> Tournament {
        Tournament::decode(&self.0)
    }

    /// Sort key equivalent to the code order for a fixed order `n`: pair `k`
    /// sits at bit `m - 1 - k`, so the first pair is most significant.
    pub fn key(&self) -> u64 {
        let m = self.0.len();
        (0..m).fold(0u64, |acc, k| acc << 1 | self.0.bit(k) as u64)
    }

    /// Wraps a tournament already in canonical form.
    pub(crate) fn of_representative(t: &Tournament) -> Self {
        CanonicalCode(t.encode())
    }

    fn from_key(n: usize, key: u64) -> Self {
        let m = pair_count(n);
        let mut bits = 0u64;
        for k in 0..m {
            bits |= (key >> (m - 1 - k) & 1) << k;
        }
        let t = Tournament::from_pair_bits(n, bits).expect("canonical orders fit 64 pairs");
        CanonicalCode(t.encode())
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.0)
    }
}

struct Search<'a> {
    t: &'a Tournament,
    n: usize,
    rows: [u32; MAX_ORDER],
    perm: [usize; MAX_ORDER],
    best_rows: [u32; MAX_ORDER],
    best_perm: [usize; MAX_ORDER],
    have_best: bool,
}

impl Search<'_> {
    fn run(&mut self, depth: usize, cells: &[u32]) {
        if depth == self.n {
            if !self.have_best || self.rows[..depth] < self.best_rows[..depth] {
                self.best_rows = self.rows;
                self.best_perm = self.perm;
                self.have_best = true;
            }
            return;
        }
        let first = cells[0];
        let mut candidates: Vec<(u32, usize, Vec<u32>)> = Vec::with_capacity(first.count_ones() as usize);
        let mut min_row = u32::MAX;
        let mut bits = first;
        while bits != 0 {
            let x = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let out = self.t.rows()[x];
            let mut refined = Vec::with_capacity(cells.len() + 1);
            let mut row = 0u32;
            for (ci, &cell) in cells.iter().enumerate() {
                let cell = if ci == 0 { cell & !(1 << x) } else { cell };
                let losers_to_x = cell & out;
                let beaters_of_x = cell & !out;
                if beaters_of_x != 0 {
                    refined.push(beaters_of_x);
                    row <<= beaters_of_x.count_ones();
                }
                if losers_to_x != 0 {
                    refined.push(losers_to_x);
                    let k = losers_to_x.count_ones();
                    row = row << k | low_mask(k as usize);
                }
            }
            if row < min_row {
                min_row = row;
                candidates.clear();
            }
            if row == min_row {
                candidates.push((row, x, refined));
            }
        }
        if self.have_best {
            // rows before `depth` never exceed the best prefix on a live branch
            let prefix = self.rows[..depth].cmp(&self.best_rows[..depth]);
            if prefix == std::cmp::Ordering::Equal && min_row > self.best_rows[depth] {
                return;
            }
        }
        for (row, x, refined) in candidates {
            self.rows[depth] = row;
            self.perm[depth] = x;
            if self.have_best && self.rows[..=depth] > self.best_rows[..=depth] {
                continue;
            }
            self.run(depth + 1, &refined);
        }
    }
}

fn check_canon_order(n: usize) -> Result<()> {
    if n > CANON_MAX_ORDER {
        return Err(Error::OrderTooLarge {
            n,
            max: CANON_MAX_ORDER,
        });
    }
    Ok(())
}

/// Canonical relabeling: position `p` of the result is vertex `perm[p]` of `t`.
fn canonical_search(t: &Tournament) -> ([u32; MAX_ORDER], [usize; MAX_ORDER]) {
    let n = t.order();
    let mut s = Search {
        t,
        n,
        rows: [0; MAX_ORDER],
        perm: [0; MAX_ORDER],
        best_rows: [0; MAX_ORDER],
        best_perm: [0; MAX_ORDER],
        have_best: false,
    };
    s.run(0, &[low_mask(n)]);
    (s.best_rows, s.best_perm)
}

fn key_from_rows(n: usize, rows: &[u32]) -> u64 {
    let mut key = 0u64;
    for (p, &row) in rows.iter().enumerate().take(n) {
        key = key << (n - 1 - p) | u64::from(row);
    }
    key
}

/// Canonical key of a tournament of order at most [`CANON_MAX_ORDER`].
pub(crate) fn canonical_key(t: &Tournament) -> u64 {
    let (rows, _) = canonical_search(t);
    key_from_rows(t.order(), &rows)
}

pub fn canonical_code(t: &Tournament) -> Result<CanonicalCode> {
    check_canon_order(t.order())?;
    Ok(CanonicalCode::from_key(t.order(), canonical_key(t)))
}

/// The canonical representative of the class of `t`.
pub fn canonical_form(t: &Tournament) -> Result<Tournament> {
    check_canon_order(t.order())?;
    let (_, perm) = canonical_search(t);
    Ok(t.permuted(&perm[..t.order()]))
}

pub fn are_isomorphic(a: &Tournament, b: &Tournament) -> Result<bool> {
    check_canon_order(a.order())?;
    check_canon_order(b.order())?;
    if a.order() != b.order() || a.score_vector().sorted() != b.score_vector().sorted() {
        return Ok(false);
    }
    Ok(canonical_key(a) == canonical_key(b))
}

/// Every labeled tournament of order `n` (`2^(n(n-1)/2)` of them).
pub fn all_labeled(n: usize) -> Result<impl Iterator<Item = Tournament>> {
    if n == 0 || pair_count(n) > 40 {
        return Err(Error::OrderTooLarge { n, max: 9 });
    }
    Ok((0..1u64 << pair_count(n)).map(move |b| {
        Tournament::from_pair_bits(n, b).expect("order checked above")
    }))
}

fn check_enum_order(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::OrderOutOfRange {
            n,
            min: 1,
            max: ENUM_MAX_ORDER,
        });
    }
    if n > ENUM_MAX_ORDER {
        return Err(Error::OrderTooLarge {
            n,
            max: ENUM_MAX_ORDER,
        });
    }
    Ok(())
}

/// Canonical representatives of the order-`n` classes, generated from the
/// order-`n-1` representatives by adding one vertex in every possible way.
/// Sorted by canonical code.
fn extend_level(parents: &[Tournament]) -> Vec<Tournament> {
    let m = parents[0].order();
    let n = m + 1;
    let keys: HashSet<u64> = parents
        .par_iter()
        .fold(HashSet::new, |mut acc, p| {
            let mut rows = [0u32; MAX_ORDER];
            rows[..m].copy_from_slice(p.rows());
            for pattern in 0..1u32 << m {
                // the new vertex m beats exactly the vertices in `pattern`
                let mut r = rows;
                for (i, row) in r.iter_mut().enumerate().take(m) {
                    if pattern >> i & 1 == 0 {
                        *row |= 1 << m;
                    }
                }
                r[m] = pattern;
                acc.insert(canonical_key(&Tournament::from_rows_unchecked(n, r)));
            }
            acc
        })
        .reduce(HashSet::new, |mut a, b| {
            if a.len() < b.len() {
                return b.into_iter().chain(a).collect();
            }
            a.extend(b);
            a
        });
    let mut keys: Vec<u64> = keys.into_iter().collect();
    keys.sort_unstable();
    keys.into_iter()
        .map(|k| CanonicalCode::from_key(n, k).tournament())
        .collect()
}

/// Canonical representatives of every isomorphism class of order `n`,
/// sorted by canonical code.
pub fn enumerate_iso_classes(n: usize) -> Result<Vec<Tournament>> {
    let mut catalog = Catalog::default();
    catalog.classes(n).map(<[Tournament]>::to_vec)
}

/// Lazily built class lists for successive orders.
#[derive(Default)]
pub struct Catalog {
    levels: Vec<Vec<Tournament>>,
}

impl Catalog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn classes(&mut self, n: usize) -> Result<&[Tournament]> {
        check_enum_order(n)?;
        if self.levels.is_empty() {
            self.levels.push(vec![Tournament::transitive(1)?]);
        }
        while self.levels.len() < n {
            let next = extend_level(self.levels.last().expect("level 1 present"));
            self.levels.push(next);
        }
        Ok(&self.levels[n - 1])
    }
}

/// Optional predicates applied to enumerated classes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassFilter {
    pub singular: bool,
    pub strong: bool,
    pub sorted_scores: Option<Vec<u32>>,
}

impl ClassFilter {
    pub fn matches(&self, t: &Tournament) -> bool {
        if let Some(scores) = &self.sorted_scores {
            if t.score_vector().sorted() != scores.as_slice() {
                return false;
            }
        }
        (!self.strong || is_strong(t)) && (!self.singular || is_singular(t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use std::collections::BTreeSet;

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        fn rec(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
            if prefix.len() == n {
                out.push(prefix.clone());
                return;
            }
            for v in 0..n {
                if !prefix.contains(&v) {
                    prefix.push(v);
                    rec(prefix, n, out);
                    prefix.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), n, &mut out);
        out
    }

    /// Minimum encoding over every relabeling.
    fn brute_canonical(t: &Tournament) -> UpperTriangleCode {
        permutations(t.order())
            .iter()
            .map(|p| t.permuted(p).encode())
            .min()
            .unwrap()
    }

    #[test]
    fn canonical_matches_brute_force() {
        for n in 1..=5 {
            for t in all_labeled(n).unwrap() {
                let c = canonical_code(&t).unwrap();
                assert_eq!(c.code(), &brute_canonical(&t), "{}", t.encode());
                assert_eq!(canonical_form(&t).unwrap().encode(), *c.code());
            }
        }
        for t in fixtures::order7_examples() {
            assert_eq!(canonical_code(&t).unwrap().code(), &brute_canonical(&t));
        }
        let r7 = Tournament::regular(7).unwrap();
        assert_eq!(canonical_code(&r7).unwrap().code(), &brute_canonical(&r7));
    }

    #[test]
    fn key_round_trip() {
        for t in all_labeled(4).unwrap() {
            let c = canonical_code(&t).unwrap();
            assert_eq!(CanonicalCode::from_key(4, c.key()), c);
        }
    }

    #[test]
    fn fixtures_are_told_apart() {
        let f1 = fixtures::f1();
        for p in permutations(3) {
            assert_eq!(
                canonical_code(&f1).unwrap(),
                canonical_code(&f1.permuted(&p)).unwrap()
            );
        }
        assert_ne!(
            canonical_code(&fixtures::f3()).unwrap(),
            canonical_code(&fixtures::f4()).unwrap()
        );
        let codes: BTreeSet<_> = fixtures::order7_examples()
            .iter()
            .map(|t| canonical_code(t).unwrap())
            .collect();
        assert_eq!(codes.len(), 3);
    }

    #[test]
    fn isomorphism() {
        assert!(are_isomorphic(&fixtures::f2(), &Tournament::upset(4).unwrap()).unwrap());
        assert!(are_isomorphic(&fixtures::f1(), &Tournament::upset(3).unwrap()).unwrap());
        assert!(!are_isomorphic(&fixtures::f3(), &fixtures::f4()).unwrap());
        assert!(!are_isomorphic(&fixtures::f1(), &fixtures::f2()).unwrap());
        let big = Tournament::transitive(11).unwrap();
        assert!(matches!(
            are_isomorphic(&big, &big),
            Err(Error::OrderTooLarge { .. })
        ));
        assert!(canonical_code(&big).is_err());
    }

    #[test]
    fn small_class_counts() {
        let mut cat = Catalog::new();
        let counts: Vec<usize> = (1..=6).map(|n| cat.classes(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 12, 56]);
        assert!(cat.classes(10).is_err());
        assert!(cat.classes(0).is_err());
    }

    #[test]
    fn classes_match_brute_force() {
        let mut cat = Catalog::new();
        for n in 1..=6 {
            let brute: BTreeSet<CanonicalCode> = all_labeled(n)
                .unwrap()
                .map(|t| CanonicalCode(brute_canonical_fast(&t)))
                .collect();
            let generated: Vec<CanonicalCode> = cat
                .classes(n)
                .unwrap()
                .iter()
                .map(|t| CanonicalCode(t.encode()))
                .collect();
            // representatives are canonical, sorted and distinct
            assert!(generated.windows(2).all(|w| w[0] < w[1]));
            for (t, c) in cat.classes(n).unwrap().iter().zip(&generated) {
                assert_eq!(&canonical_code(t).unwrap(), c);
            }
            assert_eq!(generated.into_iter().collect::<BTreeSet<_>>(), brute);
        }
    }

    /// Brute force restricted to relabelings for n <= 6; 720 permutations.
    fn brute_canonical_fast(t: &Tournament) -> UpperTriangleCode {
        thread_local! {
            static PERMS: std::cell::RefCell<Vec<Vec<Vec<usize>>>> = const { std::cell::RefCell::new(Vec::new()) };
        }
        PERMS.with(|cell| {
            let mut perms = cell.borrow_mut();
            while perms.len() <= t.order() {
                let k = perms.len();
                perms.push(permutations(k));
            }
            perms[t.order()]
                .iter()
                .map(|p| t.permuted(p).encode())
                .min()
                .unwrap()
        })
    }

    #[test]
    fn filters() {
        let classes = enumerate_iso_classes(5).unwrap();
        let strong = ClassFilter {
            strong: true,
            ..Default::default()
        };
        let brute_strong = classes.iter().filter(|t| is_strong(t)).count();
        assert_eq!(classes.iter().filter(|t| strong.matches(t)).count(), brute_strong);
        let upset_scores = ClassFilter {
            sorted_scores: Some(vec![1, 1, 2, 3, 3]),
            ..Default::default()
        };
        assert_eq!(classes.iter().filter(|t| upset_scores.matches(t)).count(), 2);
    }
}

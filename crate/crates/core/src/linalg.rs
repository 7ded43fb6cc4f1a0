//! Exact determinants of tournament matrices.
//!
//! Determinants are computed by fraction-free (Bareiss) elimination over any
//! exact integer type implementing [`ExactInt`]. Every multiplication and
//! subtraction is checked; overflow surfaces as [`Error::Overflow`].

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{CheckedDiv, CheckedMul, CheckedSub, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::structure::SccDecomposition;
use crate::tournament::{Tournament, VertexSet, MAX_ORDER};

/// Exact signed integers usable for elimination.
pub trait ExactInt:
    Clone + fmt::Debug + Ord + Zero + One + Signed + CheckedMul + CheckedSub + CheckedDiv
{
}

impl<T> ExactInt for T where
    T: Clone + fmt::Debug + Ord + Zero + One + Signed + CheckedMul + CheckedSub + CheckedDiv
{
}

/// An exact determinant value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactDet<T>(pub T);

impl<T: ExactInt> ExactDet<T> {
    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn value(&self) -> &T {
        &self.0
    }
}

impl<T: fmt::Display> fmt::Display for ExactDet<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Determinant of the adjacency matrix in the scalar type `T`.
pub fn determinant_in<T: ExactInt>(t: &Tournament) -> Result<ExactDet<T>> {
    let n = t.order();
    let mut a: Vec<Vec<T>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if t.beats(i, j) { T::one() } else { T::zero() })
                .collect()
        })
        .collect();
    bareiss(&mut a).map(ExactDet)
}

/// In-place fraction-free elimination; returns the determinant.
fn bareiss<T: ExactInt>(a: &mut [Vec<T>]) -> Result<T> {
    let n = a.len();
    if n == 0 {
        return Ok(T::one());
    }
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    negate = !negate;
                }
                None => return Ok(T::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let lhs = a[k][k].checked_mul(&a[i][j]).ok_or(Error::Overflow)?;
                let rhs = a[i][k].checked_mul(&a[k][j]).ok_or(Error::Overflow)?;
                let num = lhs.checked_sub(&rhs).ok_or(Error::Overflow)?;
                let q = num.checked_div(&prev).ok_or(Error::Overflow)?;
                debug_assert!(q.checked_mul(&prev) == Some(num), "inexact Bareiss step");
                a[i][j] = q;
            }
            a[i][k] = T::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

/// Determinant in `i128`.
///
/// Bareiss intermediates are minors of a 0/1 matrix, each bounded by the
/// Hadamard bound `(m+1)^((m+1)/2) / 2^m` (about `2.6e15` at `m = 32`), so the
/// products formed during elimination stay below `i128::MAX` for every
/// supported order.
pub fn determinant(t: &Tournament) -> ExactDet<i128> {
    determinant_in::<i128>(t).expect("0/1 minors of order <= 32 fit in i128")
}

pub fn is_singular(t: &Tournament) -> bool {
    determinant(t).is_zero()
}

/// Product of the determinants of the strong components.
pub fn det_via_scc(t: &Tournament, d: &SccDecomposition) -> Result<ExactDet<i128>> {
    d.check(t)
        .map_err(|e| Error::DecompositionMismatch(e.to_string()))?;
    let mut product = 1i128;
    for &comp in d.components() {
        let sub = subtournament(t, comp)?;
        product = product
            .checked_mul(determinant(&sub).0)
            .ok_or(Error::Overflow)?;
    }
    Ok(ExactDet(product))
}

/// Induced subtournament on `keep`, relabeled in increasing vertex order.
pub fn subtournament(t: &Tournament, keep: VertexSet) -> Result<Tournament> {
    if keep.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = t.order();
    if let Some(v) = keep.iter().find(|&v| v >= n) {
        return Err(Error::NoSuchVertex(v, n));
    }
    let verts: Vec<usize> = keep.iter().collect();
    let mut rows = [0u32; MAX_ORDER];
    for (p, &u) in verts.iter().enumerate() {
        for (q, &w) in verts.iter().enumerate() {
            if t.beats(u, w) {
                rows[p] |= 1 << q;
            }
        }
    }
    Ok(Tournament::from_rows_unchecked(verts.len(), rows))
}

/// Largest order accepted by [`subdeterminant_spectrum`].
pub const SPECTRUM_MAX_ORDER: usize = 12;

/// Set of determinants of all nonempty induced subtournaments (principal minors).
pub fn subdeterminant_spectrum(t: &Tournament) -> Result<BTreeSet<i128>> {
    let n = t.order();
    if n > SPECTRUM_MAX_ORDER {
        return Err(Error::OrderTooLarge {
            n,
            max: SPECTRUM_MAX_ORDER,
        });
    }
    let mut out = BTreeSet::new();
    for mask in 1u32..1 << n {
        let sub = subtournament(t, VertexSet(mask))?;
        out.insert(determinant(&sub).0);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::structure::scc;

    /// Cofactor expansion along the first row; independent of elimination.
    fn cofactor(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        let mut total = 0;
        for c in 0..n {
            if m[0][c] == 0 {
                continue;
            }
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != c)
                        .map(|(_, &v)| v)
                        .collect()
                })
                .collect();
            let sign = if c % 2 == 0 { 1 } else { -1 };
            total += sign * m[0][c] * cofactor(&minor);
        }
        total
    }

    fn matrix(t: &Tournament) -> Vec<Vec<i64>> {
        let n = t.order();
        (0..n)
            .map(|i| (0..n).map(|j| t.beats(i, j) as i64).collect())
            .collect()
    }

    #[test]
    fn fixture_determinants() {
        assert_eq!(determinant(&fixtures::f1()).0, 1);
        assert_eq!(determinant(&fixtures::f2()).0, -1);
        assert_eq!(determinant(&fixtures::f3()).0, 1);
        assert_eq!(determinant(&fixtures::f4()).0, 1);
        let [m1, m2, m3] = fixtures::order7_examples();
        assert_eq!(determinant(&m1).0, 1);
        assert_eq!(cofactor(&matrix(&m1)), 1);
        assert_eq!(determinant(&m2).0, 0);
        assert_eq!(determinant(&m3).0, 0);
    }

    #[test]
    fn transitive_is_singular() {
        for n in 1..=32 {
            assert!(is_singular(&Tournament::transitive(n).unwrap()));
        }
        assert!(!is_singular(&fixtures::f1()));
        assert!(is_singular(&fixtures::f1().with_sink().unwrap()));
        assert!(is_singular(&fixtures::f2().with_source().unwrap()));
    }

    #[test]
    fn elimination_matches_cofactor_exhaustive() {
        for n in 1..=5 {
            for b in 0..1u64 << (n * (n - 1) / 2) {
                let t = Tournament::from_pair_bits(n, b).unwrap();
                assert_eq!(determinant(&t).0 as i64, cofactor(&matrix(&t)));
            }
        }
    }

    #[test]
    fn scalar_types_agree() {
        let t = Tournament::regular(31).unwrap();
        let wide = determinant(&t).0;
        let big = determinant_in::<num_bigint::BigInt>(&t).unwrap().0;
        assert_eq!(big, num_bigint::BigInt::from(wide));
        let r9 = Tournament::regular(9).unwrap();
        assert_eq!(
            i128::from(determinant_in::<i64>(&r9).unwrap().0),
            determinant(&r9).0
        );
    }

    #[test]
    fn narrow_scalar_overflow_is_reported() {
        // any tournament whose determinant itself leaves the i8 range
        let mut state = 0x9e37_79b9_7f4a_7c15u64;
        let t = std::iter::from_fn(|| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            Some(Tournament::from_pair_bits(11, state >> 9).unwrap())
        })
        .find(|t| determinant(t).0.abs() > 127)
        .unwrap();
        assert_eq!(determinant_in::<i8>(&t), Err(Error::Overflow));
    }

    #[test]
    fn scc_product() {
        let t = fixtures::f1().with_sink().unwrap();
        assert_eq!(det_via_scc(&t, &scc(&t)).unwrap().0, 0);
        let f2 = fixtures::f2();
        assert_eq!(det_via_scc(&f2, &scc(&f2)).unwrap(), determinant(&f2));
        let two = fixtures::f1_then_f1();
        let d = scc(&two);
        assert_eq!(d.components().len(), 2);
        assert_eq!(determinant(&two).0, 1);
        assert_eq!(det_via_scc(&two, &d).unwrap().0, 1);
    }

    #[test]
    fn scc_product_rejects_mismatched_decomposition() {
        let t = fixtures::f2();
        let wrong = scc(&Tournament::transitive(4).unwrap());
        assert!(matches!(
            det_via_scc(&t, &wrong),
            Err(Error::DecompositionMismatch(_))
        ));
    }

    #[test]
    fn subtournaments() {
        let f3 = fixtures::f3();
        assert_eq!(subtournament(&f3, VertexSet::full(5)).unwrap(), f3);
        let sub = subtournament(&f3, VertexSet::full(4)).unwrap();
        let brute: Vec<u32> = (0..4)
            .map(|i| (0..4).filter(|&j| f3.beats(i, j)).count() as u32)
            .collect();
        assert_eq!(sub.score_vector().raw(), brute.as_slice());
        let pair = subtournament(&f3, [1, 3].into_iter().collect()).unwrap();
        assert_eq!(pair.order(), 2);
        assert_eq!(pair.beats(0, 1), f3.beats(1, 3));
        assert_eq!(subtournament(&f3, VertexSet::EMPTY), Err(Error::EmptySet));
    }

    #[test]
    fn spectra() {
        // oracle: cofactor expansion over every principal submatrix
        let f1 = fixtures::f1();
        let mut oracle = BTreeSet::new();
        for mask in 1u32..8 {
            let verts: Vec<usize> = VertexSet(mask).iter().collect();
            let m: Vec<Vec<i64>> = verts
                .iter()
                .map(|&i| verts.iter().map(|&j| f1.beats(i, j) as i64).collect())
                .collect();
            oracle.insert(cofactor(&m) as i128);
        }
        let spec = subdeterminant_spectrum(&f1).unwrap();
        assert_eq!(spec, oracle);
        assert_eq!(spec, BTreeSet::from([0, 1]));

        let f2 = subdeterminant_spectrum(&fixtures::f2()).unwrap();
        assert!(f2.is_subset(&BTreeSet::from([-1, 0, 1])));
        let tr = subdeterminant_spectrum(&Tournament::transitive(4).unwrap()).unwrap();
        assert_eq!(tr, BTreeSet::from([0]));
        assert!(matches!(
            subdeterminant_spectrum(&Tournament::transitive(13).unwrap()),
            Err(Error::OrderTooLarge { n: 13, .. })
        ));
    }
}

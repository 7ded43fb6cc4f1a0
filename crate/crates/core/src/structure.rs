//! Strong components, condensation order and structural recognizers.

use serde::{Deserialize, Serialize};

use crate::cycles::c3_direct;
use crate::error::{Error, Result};
use crate::linalg::{is_singular, subtournament};
use crate::tournament::{Tournament, VertexSet};

/// Strong components listed in dominance order: every vertex of an earlier
/// component beats every vertex of a later one. Vertices are ascending
/// within each component.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SccDecomposition {
    n: usize,
    components: Vec<VertexSet>,
}

impl SccDecomposition {
    pub fn new(n: usize, components: Vec<VertexSet>) -> Self {
        SccDecomposition { n, components }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[VertexSet] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.len()).collect()
    }

    /// Checks that this is the decomposition of `t`: a partition into
    /// strongly connected parts, in dominance order.
    pub fn check(&self, t: &Tournament) -> Result<()> {
        let mismatch = |msg: String| Err(Error::DecompositionMismatch(msg));
        if self.n != t.order() {
            return mismatch(format!("order {} vs {}", self.n, t.order()));
        }
        let mut seen = VertexSet::EMPTY;
        for &c in &self.components {
            if c.is_empty() {
                return mismatch("empty component".into());
            }
            if seen.0 & c.0 != 0 {
                return mismatch("components overlap".into());
            }
            seen.0 |= c.0;
            if !is_strong_within(t, c) {
                return mismatch(format!("component {:?} is not strong", c.iter().collect::<Vec<_>>()));
            }
        }
        if seen != VertexSet::full(self.n) {
            return mismatch("components do not cover every vertex".into());
        }
        let mut later = seen;
        for &c in &self.components {
            later.0 &= !c.0;
            for v in c.iter() {
                if t.out_set(v).0 & later.0 != later.0 {
                    return mismatch(format!("vertex {v} does not beat every later component"));
                }
            }
        }
        Ok(())
    }
}

/// Mutual reachability of all of `set` inside the subgraph it induces.
fn is_strong_within(t: &Tournament, set: VertexSet) -> bool {
    let Some(root) = set.first() else {
        return false;
    };
    let reach = |forward: bool| {
        let mut seen = VertexSet::singleton(root);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = 0u32;
            for v in frontier.iter() {
                let nbrs = if forward { t.out_set(v) } else { t.in_set(v) };
                next |= nbrs.0 & set.0;
            }
            frontier = VertexSet(next & !seen.0);
            seen.0 |= next;
        }
        seen == set
    };
    reach(true) && reach(false)
}

/// Strong components by an iterative lowlink search.
pub fn scc(t: &Tournament) -> SccDecomposition {
    const UNSEEN: usize = usize::MAX;
    let n = t.order();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = VertexSet::EMPTY;
    let mut stack: Vec<usize> = Vec::with_capacity(n);
    // (vertex, successors not yet explored)
    let mut calls: Vec<(usize, u32)> = Vec::with_capacity(n);
    let mut next_index = 0;
    let mut found: Vec<VertexSet> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack.insert(root);
        calls.push((root, t.out_set(root).0));

        while let Some(&mut (v, ref mut pending)) = calls.last_mut() {
            if *pending != 0 {
                let w = pending.trailing_zeros() as usize;
                *pending &= *pending - 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack.insert(w);
                    calls.push((w, t.out_set(w).0));
                } else if on_stack.contains(w) {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            calls.pop();
            if let Some(&(parent, _)) = calls.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = VertexSet::EMPTY;
                loop {
                    let w = stack.pop().expect("lowlink stack underflow");
                    on_stack.0 &= !(1 << w);
                    comp.insert(w);
                    if w == v {
                        break;
                    }
                }
                found.push(comp);
            }
        }
    }
    // components complete in reverse topological order
    found.reverse();
    SccDecomposition::new(n, found)
}

pub fn is_strong(t: &Tournament) -> bool {
    scc(t).len() == 1
}

/// Acyclic, equivalently free of 3-cycles.
pub fn is_transitive(t: &Tournament) -> bool {
    c3_direct(t).get() == 0
}

pub fn is_regular(t: &Tournament) -> bool {
    let s = t.score_vector();
    s.sorted().first() == s.sorted().last()
}

/// Even order with scores differing by at most one.
pub fn is_almost_regular(t: &Tournament) -> bool {
    let n = t.order();
    let s = t.score_vector();
    let (lo, hi) = (s.sorted()[0], s.sorted()[n - 1]);
    n.is_multiple_of(2) && hi - lo <= 1
}

pub fn is_regular_or_almost_regular(t: &Tournament) -> bool {
    is_regular(t) || is_almost_regular(t)
}

/// Strong with exactly `n - 2` three-cycles; these are exactly the upset
/// tournaments.
pub fn is_upset(t: &Tournament) -> Result<bool> {
    let n = t.order();
    if n < 3 {
        return Err(Error::OrderOutOfRange {
            n,
            min: 3,
            max: crate::tournament::MAX_ORDER,
        });
    }
    Ok(is_strong(t) && c3_direct(t).get() == n as u64 - 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MaximizerKind {
    TrivialSink,
    TrivialSource,
    Nontrivial,
}

/// Shape of a singular maximizer of the 3-cycle count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximizerClass {
    pub kind: MaximizerKind,
    /// The regular or almost regular tournament left after removing the
    /// sink or source.
    pub base: Option<Tournament>,
}

impl MaximizerClass {
    pub fn is_trivial(&self) -> bool {
        self.kind != MaximizerKind::Nontrivial
    }
}

/// Classifies a singular tournament attaining `max_value`, the maximum
/// 3-cycle count over singular tournaments of its order.
///
/// A maximizer with a singleton strong component must be a regular or almost
/// regular tournament extended by a sink or a source; anything else is
/// reported as [`Error::UnexpectedMaximizerShape`].
pub fn classify_singular_maximizer(t: &Tournament, max_value: u64) -> Result<MaximizerClass> {
    if !is_singular(t) {
        return Err(Error::NotSingular);
    }
    let found = c3_direct(t).get();
    if found != max_value {
        return Err(Error::NotMaximizer {
            found,
            expected: max_value,
        });
    }
    let d = scc(t);
    let comps = d.components();
    let singleton_at = comps.iter().position(|c| c.len() == 1);
    let Some(pos) = singleton_at else {
        return Ok(MaximizerClass {
            kind: MaximizerKind::Nontrivial,
            base: None,
        });
    };
    let n = t.order();
    let last = comps.len() - 1;
    let (kind, vertex) = if comps[last].len() == 1 {
        (MaximizerKind::TrivialSink, comps[last])
    } else if comps[0].len() == 1 {
        (MaximizerKind::TrivialSource, comps[0])
    } else {
        return Err(Error::UnexpectedMaximizerShape(format!(
            "singleton component at position {pos} of {} is neither first nor last",
            comps.len()
        )));
    };
    if n == 1 {
        return Err(Error::UnexpectedMaximizerShape(
            "order 1 has no base tournament".into(),
        ));
    }
    let base = subtournament(t, VertexSet(VertexSet::full(n).0 & !vertex.0))?;
    if !is_regular_or_almost_regular(&base) {
        return Err(Error::UnexpectedMaximizerShape(format!(
            "base {} is neither regular nor almost regular",
            base.encode()
        )));
    }
    Ok(MaximizerClass {
        kind,
        base: Some(base),
    })
}

/// Vertices whose deletion leaves a regular or almost regular tournament.
pub fn regular_deletion_points(t: &Tournament) -> VertexSet {
    let n = t.order();
    if n < 2 {
        return VertexSet::EMPTY;
    }
    (0..n)
        .filter(|&v| {
            let rest = VertexSet(VertexSet::full(n).0 & !(1 << v));
            subtournament(t, rest)
                .map(|s| is_regular_or_almost_regular(&s))
                .unwrap_or(false)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::tournament::pair_count;

    fn all(n: usize) -> impl Iterator<Item = Tournament> {
        (0..1u64 << pair_count(n)).map(move |b| Tournament::from_pair_bits(n, b).unwrap())
    }

    /// Arc-triple definition of transitivity.
    fn transitive_by_definition(t: &Tournament) -> bool {
        let n = t.order();
        (0..n).all(|u| {
            (0..n).all(|v| {
                (0..n).all(|w| !(t.beats(u, v) && t.beats(v, w)) || u == w || t.beats(u, w))
            })
        })
    }

    #[test]
    fn scc_examples() {
        let f1 = fixtures::f1();
        assert_eq!(scc(&f1).components(), &[VertexSet::full(3)]);

        let t = f1.with_sink().unwrap();
        assert_eq!(
            scc(&t).components(),
            &[VertexSet::full(3), VertexSet::singleton(3)]
        );

        let tr = Tournament::transitive(4).unwrap();
        let comps: Vec<Vec<usize>> = scc(&tr).components().iter().map(|c| c.iter().collect()).collect();
        assert_eq!(comps, vec![vec![3], vec![2], vec![1], vec![0]]);
    }

    #[test]
    fn scc_golden_order() {
        // F1 beaten entirely by a source at index 3
        let t = fixtures::f1().with_source().unwrap();
        let d = scc(&t);
        assert_eq!(d.components(), &[VertexSet::singleton(3), VertexSet::full(3)]);
        assert_eq!(d.sizes(), vec![1, 3]);
    }

    #[test]
    fn scc_invariants_exhaustive() {
        for n in 1..=6 {
            for t in all(n) {
                let d = scc(&t);
                d.check(&t).unwrap();
                assert!(d.sizes().iter().all(|&s| s != 2));
                assert_eq!(d.sizes().iter().sum::<usize>(), n);
            }
        }
    }

    #[test]
    fn check_rejects_bad_decompositions() {
        let t = fixtures::f1().with_sink().unwrap();
        let swapped = SccDecomposition::new(4, vec![VertexSet::singleton(3), VertexSet::full(3)]);
        assert!(swapped.check(&t).is_err());
        let split = SccDecomposition::new(
            4,
            vec![
                VertexSet::singleton(0),
                [1, 2].into_iter().collect(),
                VertexSet::singleton(3),
            ],
        );
        assert!(split.check(&t).is_err());
        let short = SccDecomposition::new(4, vec![VertexSet::full(3)]);
        assert!(short.check(&t).is_err());
    }

    #[test]
    fn recognizers() {
        assert!(is_regular(&Tournament::regular(7).unwrap()));
        let a6 = Tournament::almost_regular(6).unwrap();
        assert!(is_almost_regular(&a6));
        assert!(!is_regular(&a6));
        assert!(is_strong(&fixtures::f2()));
        assert!(!is_strong(&Tournament::transitive(5).unwrap()));
        assert!(!is_almost_regular(&Tournament::regular(5).unwrap()));
    }

    #[test]
    fn transitive_matches_definition_exhaustive() {
        for n in 1..=5 {
            for t in all(n) {
                assert_eq!(is_transitive(&t), transitive_by_definition(&t));
            }
        }
    }

    #[test]
    fn upsets() {
        assert!(is_upset(&fixtures::f3()).unwrap());
        assert!(is_upset(&fixtures::f4()).unwrap());
        assert!(!is_upset(&Tournament::regular(5).unwrap()).unwrap());
        assert!(!is_upset(&Tournament::transitive(5).unwrap()).unwrap());
        assert!(is_upset(&Tournament::transitive(2).unwrap()).is_err());
        for n in 3..=32 {
            let u = Tournament::upset(n).unwrap();
            assert!(is_strong(&u), "n = {n}");
            assert_eq!(c3_direct(&u).get(), n as u64 - 2);
            assert!(is_upset(&u).unwrap());
        }
    }

    #[test]
    fn classify_trivial_maximizers() {
        let t = Tournament::regular(5).unwrap().with_sink().unwrap();
        let c = classify_singular_maximizer(&t, 5).unwrap();
        assert_eq!(c.kind, MaximizerKind::TrivialSink);
        assert!(is_regular(&c.base.unwrap()));

        let t = Tournament::almost_regular(6).unwrap().with_source().unwrap();
        let c = classify_singular_maximizer(&t, 8).unwrap();
        assert_eq!(c.kind, MaximizerKind::TrivialSource);
        assert!(is_almost_regular(&c.base.unwrap()));
    }

    #[test]
    fn classify_published_maximizers() {
        let [m1, m2, m3] = fixtures::order7_examples();
        for m in [m2, m3] {
            let c = classify_singular_maximizer(&m, 8).unwrap();
            assert_eq!(c.kind, MaximizerKind::Nontrivial);
            assert!(c.base.is_none());
        }
        // the first matrix is nonsingular as transcribed
        assert_eq!(classify_singular_maximizer(&m1, 8), Err(Error::NotSingular));
        let third: crate::tournament::UpperTriangleCode = "T7:1b1220".parse().unwrap();
        let c = classify_singular_maximizer(&Tournament::decode(&third), 8).unwrap();
        assert_eq!(c.kind, MaximizerKind::Nontrivial);
    }

    #[test]
    fn classify_errors() {
        assert_eq!(
            classify_singular_maximizer(&fixtures::f1(), 1),
            Err(Error::NotSingular)
        );
        let t = Tournament::regular(5).unwrap().with_sink().unwrap();
        assert_eq!(
            classify_singular_maximizer(&t, 6),
            Err(Error::NotMaximizer {
                found: 5,
                expected: 6
            })
        );
    }

    #[test]
    fn deletion_points() {
        let t = Tournament::regular(5).unwrap().with_sink().unwrap();
        assert!(regular_deletion_points(&t).contains(5));
        assert!(regular_deletion_points(&Tournament::transitive(1).unwrap()).is_empty());
    }
}

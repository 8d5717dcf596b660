//! Backtracking enumeration of continuous maps between finite spaces.
//!
//! Continuity is a binary constraint on every related pair of source points,
//! so the search assigns one source point at a time, picking the point with
//! the fewest remaining candidates, and filters the candidates of the
//! unassigned neighbours after every assignment.

use std::ops::ControlFlow;

use fixedbitset::FixedBitSet;

use crate::space::{ClosureSpace, PointSet};

struct Search<'a> {
    source: &'a ClosureSpace,
    target: &'a ClosureSpace,
    /// `in_rows[y]` is the local base of `y` in the target.
    in_rows: Vec<FixedBitSet>,
    /// Source neighbours of each point (related in either direction).
    neighbours: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(source: &'a ClosureSpace, target: &'a ClosureSpace) -> Self {
        let in_rows = (0..target.len()).map(|y| target.local_base_set(y)).collect();
        let neighbours = (0..source.len())
            .map(|v| {
                (0..source.len())
                    .filter(|&u| u != v && (source.related(v, u) || source.related(u, v)))
                    .collect()
            })
            .collect();
        Search {
            source,
            target,
            in_rows,
            neighbours,
        }
    }

    fn run<F>(&self, domains: &mut Vec<FixedBitSet>, assigned: &mut Vec<Option<usize>>, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let next = (0..assigned.len())
            .filter(|&v| assigned[v].is_none())
            .min_by_key(|&v| domains[v].count_ones(..));
        let Some(v) = next else {
            let images: Vec<usize> = assigned.iter().map(|a| a.unwrap()).collect();
            return visit(&images);
        };
        let candidates: Vec<usize> = domains[v].ones().collect();
        for y in candidates {
            let mut saved = Vec::new();
            let mut dead = false;
            for &u in &self.neighbours[v] {
                if assigned[u].is_some() {
                    continue;
                }
                let before = domains[u].clone();
                if self.source.related(v, u) {
                    domains[u].intersect_with(self.target.closure_of_point(y));
                }
                if self.source.related(u, v) {
                    domains[u].intersect_with(&self.in_rows[y]);
                }
                let empty = domains[u].is_clear();
                saved.push((u, before));
                if empty {
                    dead = true;
                    break;
                }
            }
            if !dead {
                assigned[v] = Some(y);
                let flow = self.run(domains, assigned, visit);
                assigned[v] = None;
                if flow.is_break() {
                    for (u, before) in saved {
                        domains[u] = before;
                    }
                    return flow;
                }
            }
            for (u, before) in saved.into_iter().rev() {
                domains[u] = before;
            }
        }
        ControlFlow::Continue(())
    }
}

/// Candidate sets allowing every target point for every source point.
pub fn full_domains(source: &ClosureSpace, target: &ClosureSpace) -> Vec<PointSet> {
    vec![target.full_set(); source.len()]
}

/// Visits every continuous map whose value at each source point lies in the
/// matching candidate set. Visiting order is unspecified.
pub fn visit_homomorphisms<F>(source: &ClosureSpace, target: &ClosureSpace, domains: Vec<PointSet>, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    assert_eq!(domains.len(), source.len());
    let search = Search::new(source, target);
    let mut domains = domains;
    // Reflexive loops impose no constraint; self-consistency of fixed values
    // between already-fixed points is checked by the propagation below.
    let mut assigned = vec![None; source.len()];
    search.run(&mut domains, &mut assigned, &mut visit)
}

/// All continuous maps subject to `domains`, sorted lexicographically.
pub fn homomorphisms_with(source: &ClosureSpace, target: &ClosureSpace, domains: Vec<PointSet>) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let _ = visit_homomorphisms(source, target, domains, |m| {
        out.push(m.to_vec());
        ControlFlow::Continue(())
    });
    out.sort_unstable();
    out
}

/// All continuous maps `source → target`, sorted lexicographically.
pub fn homomorphisms(source: &ClosureSpace, target: &ClosureSpace) -> Vec<Vec<usize>> {
    homomorphisms_with(source, target, full_domains(source, target))
}

/// Some continuous map subject to `domains`, if one exists.
pub fn find_homomorphism(source: &ClosureSpace, target: &ClosureSpace, domains: Vec<PointSet>) -> Option<Vec<usize>> {
    let mut found = None;
    let _ = visit_homomorphisms(source, target, domains, |m| {
        found = Some(m.to_vec());
        ControlFlow::Break(())
    });
    found
}

/// Every map `source → target` as an image vector, in lexicographic order.
pub fn all_functions(source_len: usize, target_len: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = if source_len == 0 { 1 } else { target_len.checked_pow(source_len as u32).unwrap_or(usize::MAX) };
    let total = if target_len == 0 && source_len > 0 { 0 } else { total };
    (0..total).map(move |mut code| {
        let mut images = vec![0; source_len];
        for slot in images.iter_mut().rev() {
            *slot = code % target_len;
            code /= target_len;
        }
        images
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::{interval, IntervalSpec};
    use crate::space::is_continuous;

    fn brute(source: &ClosureSpace, target: &ClosureSpace) -> Vec<Vec<usize>> {
        all_functions(source.len(), target.len())
            .filter(|m| is_continuous(source, target, m))
            .collect()
    }

    #[test]
    fn matches_brute_force() {
        let spaces = [
            ClosureSpace::point(),
            ClosureSpace::discrete(2),
            ClosureSpace::indiscrete(3),
            interval(IntervalSpec::j_plus()).unwrap(),
            interval(IntervalSpec::plain(2)).unwrap(),
            interval(IntervalSpec::bits(3, 5)).unwrap(),
            interval(IntervalSpec::leq(2)).unwrap(),
        ];
        for s in &spaces {
            for t in &spaces {
                assert_eq!(homomorphisms(s, t), brute(s, t), "{s:?} -> {t:?}");
            }
        }
    }

    #[test]
    fn constrained_search() {
        let j2 = interval(IntervalSpec::plain(2)).unwrap();
        let mut domains = full_domains(&j2, &j2);
        domains[0] = {
            let mut d = j2.empty_set();
            d.insert(0);
            d
        };
        domains[2] = {
            let mut d = j2.empty_set();
            d.insert(2);
            d
        };
        assert_eq!(homomorphisms_with(&j2, &j2, domains.clone()), vec![vec![0, 1, 2]]);
        domains[1] = j2.empty_set();
        assert_eq!(find_homomorphism(&j2, &j2, domains), None);
    }

    #[test]
    fn function_enumeration() {
        assert_eq!(all_functions(2, 2).collect::<Vec<_>>(), vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(all_functions(0, 3).count(), 1);
        assert_eq!(all_functions(2, 0).count(), 0);
    }
}

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::triple::{Axis, RatePair, RateTriple};

#[derive(Debug, Clone, Copy)]
struct Key(f64);

impl PartialEq for Key {
    fn eq(&self, other: &Self) -> bool {
        self.0.total_cmp(&other.0) == Ordering::Equal
    }
}

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Two-dimensional maximal set kept as a staircase: `r2` strictly decreases
/// as `r1` increases.
#[derive(Default)]
struct Staircase {
    steps: BTreeMap<Key, f64>,
}

impl Staircase {
    fn dominated(&self, a: f64, b: f64) -> bool {
        // The first step at or right of `a` carries the largest `b` there.
        self.steps
            .range(Key(a)..)
            .next()
            .is_some_and(|(_, &sb)| sb >= b)
    }

    fn insert(&mut self, a: f64, b: f64) {
        let stale: Vec<Key> = self
            .steps
            .range(..=Key(a))
            .rev()
            .take_while(|(_, &sb)| sb <= b)
            .map(|(k, _)| *k)
            .collect();
        for k in stale {
            self.steps.remove(&k);
        }
        self.steps.insert(Key(a), b);
    }
}

/// Indices of the Pareto-maximal entries of `points`, in `(r0, r1, r2)`
/// ascending order. Exact duplicates keep their first occurrence.
pub fn pareto_indices(points: &[RateTriple]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    // r0 descending; ties broken so that no later point can dominate an
    // earlier one unless they are equal.
    order.sort_by(|&i, &j| points[j].lex_cmp(&points[i]).then(i.cmp(&j)));
    let mut stairs = Staircase::default();
    let mut keep = Vec::new();
    for i in order {
        let p = &points[i];
        if stairs.dominated(p.r1, p.r2) {
            continue;
        }
        stairs.insert(p.r1, p.r2);
        keep.push(i);
    }
    keep.sort_by(|&i, &j| points[i].lex_cmp(&points[j]));
    keep
}

/// Points of `points` not dominated component-wise by any other, sorted by
/// `(r0, r1, r2)`.
pub fn pareto_frontier(points: &[RateTriple]) -> Vec<RateTriple> {
    pareto_indices(points).into_iter().map(|i| points[i]).collect()
}

/// Two-dimensional Pareto frontier, sorted by `a` ascending.
pub fn pareto_frontier_2d(points: &[RatePair]) -> Vec<RatePair> {
    let mut sorted = points.to_vec();
    sorted.sort_by(|p, q| q.a.total_cmp(&p.a).then(q.b.total_cmp(&p.b)));
    let mut out: Vec<RatePair> = Vec::new();
    let mut best_b = f64::NEG_INFINITY;
    for p in sorted {
        if p.b > best_b {
            best_b = p.b;
            out.push(p);
        }
    }
    out.reverse();
    out
}

/// Drops `axis` and returns the 2-D frontier of what remains. The remaining
/// coordinates keep their order, so projecting out `R0` yields `(R1, R2)`.
pub fn project(points: &[RateTriple], axis: Axis) -> Vec<RatePair> {
    let pairs: Vec<RatePair> = points
        .iter()
        .map(|p| match axis {
            Axis::R0 => RatePair::new(p.r1, p.r2),
            Axis::R1 => RatePair::new(p.r0, p.r2),
            Axis::R2 => RatePair::new(p.r0, p.r1),
        })
        .collect();
    pareto_frontier_2d(&pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mutually_non_dominated_kept() {
        let pts = [
            RateTriple::new(1.0, 0.0, 0.0),
            RateTriple::new(0.0, 1.0, 0.0),
            RateTriple::new(0.5, 0.5, 0.0),
        ];
        let f = pareto_frontier(&pts);
        assert_eq!(f.len(), 3);
        assert_eq!(f[0], pts[1]);
    }

    #[test]
    fn strict_domination_removed() {
        let pts = [RateTriple::new(1.0, 1.0, 1.0), RateTriple::new(0.5, 0.5, 0.5)];
        assert_eq!(pareto_frontier(&pts), vec![pts[0]]);
    }

    #[test]
    fn duplicates_and_ties() {
        let pts = [
            RateTriple::new(1.0, 0.5, 0.0),
            RateTriple::new(1.0, 0.5, 0.0),
            RateTriple::new(1.0, 0.5, 0.2),
            RateTriple::new(1.0, 0.2, 0.9),
        ];
        let f = pareto_frontier(&pts);
        assert_eq!(f, vec![pts[3], pts[2]]);
    }

    #[test]
    fn projection() {
        let f = project(&[RateTriple::new(0.1, 0.2, 0.3)], Axis::R0);
        assert_eq!(f, vec![RatePair::new(0.2, 0.3)]);
        let f = project(
            &[
                RateTriple::new(0.0, 1.0, 0.0),
                RateTriple::new(5.0, 0.5, 0.5),
                RateTriple::new(0.0, 0.4, 0.4),
            ],
            Axis::R0,
        );
        assert_eq!(f, vec![RatePair::new(0.5, 0.5), RatePair::new(1.0, 0.0)]);
    }
}

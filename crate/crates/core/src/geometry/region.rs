use alloc::vec::Vec;

use super::bounds::RateBounds;
use super::frontier::pareto_indices;
use super::triple::RateTriple;

/// Which bound a region represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundKind {
    DmInner,
    DmOuter,
    GInner,
    GOuter,
    Cmac,
}

impl BoundKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundKind::DmInner => "dm_inner",
            BoundKind::DmOuter => "dm_outer",
            BoundKind::GInner => "g_inner",
            BoundKind::GOuter => "g_outer",
            BoundKind::Cmac => "cmac",
        }
    }
}

/// The sweep parameters that produced a point or member polytope.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Provenance {
    /// Index of the auxiliary chain in sweep order.
    Chain(u64),
    Gaussian {
        beta1: f64,
        beta2: f64,
        rho: Option<f64>,
    },
}

/// One polytope of the union a region is swept from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Member {
    pub bounds: RateBounds,
    pub provenance: Provenance,
}

/// Whether a region keeps every member polytope or only the ones that
/// contribute a frontier point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Retention {
    All,
    FrontierOnly,
}

/// A swept rate region: the Pareto frontier of all member vertices together
/// with (some of) the member polytopes themselves.
///
/// Membership is downward closed: a triple belongs to the region if a
/// frontier point dominates it or a kept member polytope contains it.
#[derive(Debug, Clone, PartialEq)]
pub struct RateRegion {
    kind: BoundKind,
    frontier: Vec<RateTriple>,
    /// Index into `members` for each frontier point.
    sources: Vec<usize>,
    members: Vec<Member>,
}

impl RateRegion {
    pub fn kind(&self) -> BoundKind {
        self.kind
    }

    pub fn frontier(&self) -> &[RateTriple] {
        &self.frontier
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    /// Frontier points paired with the parameters that produced them.
    pub fn records(&self) -> impl Iterator<Item = (&RateTriple, &Provenance)> + '_ {
        self.frontier
            .iter()
            .zip(&self.sources)
            .map(|(p, &s)| (p, &self.members[s].provenance))
    }

    pub fn contains(&self, p: &RateTriple, tol: f64) -> bool {
        if p.r0 < -tol || p.r1 < -tol || p.r2 < -tol {
            return false;
        }
        self.frontier.iter().any(|f| f.dominates(p, tol))
            || self.members.iter().any(|m| m.bounds.contains(p, tol))
    }

    /// The frontier point maximizing `score`, with its provenance.
    pub fn argmax<F: Fn(&RateTriple) -> f64>(&self, score: F) -> Option<(RateTriple, Provenance)> {
        self.records()
            .max_by(|(a, _), (b, _)| score(a).total_cmp(&score(b)))
            .map(|(p, s)| (*p, *s))
    }

    pub fn max_of<F: Fn(&RateTriple) -> f64>(&self, score: F) -> f64 {
        self.frontier
            .iter()
            .map(score)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Set union of two regions of the same kind.
    pub fn merge(self, other: RateRegion, retention: Retention) -> RateRegion {
        debug_assert_eq!(self.kind, other.kind);
        let mut builder = RegionBuilder::new(self.kind, retention);
        builder.absorb(self);
        builder.absorb(other);
        builder.finish()
    }
}

/// Free-function form of [`RateRegion::contains`].
pub fn contains(outer: &RateRegion, p: &RateTriple, tol: f64) -> bool {
    outer.contains(p, tol)
}

const COMPACT_AT: usize = 1 << 16;

/// Streams member polytopes and their vertices into a [`RateRegion`],
/// compacting to the running frontier so memory stays bounded.
pub struct RegionBuilder {
    kind: BoundKind,
    retention: Retention,
    points: Vec<RateTriple>,
    sources: Vec<usize>,
    members: Vec<Member>,
    frontier_len: usize,
}

impl RegionBuilder {
    pub fn new(kind: BoundKind, retention: Retention) -> Self {
        Self {
            kind,
            retention,
            points: Vec::new(),
            sources: Vec::new(),
            members: Vec::new(),
            frontier_len: 0,
        }
    }

    /// Adds one member polytope and the vertices it contributes.
    pub fn add(&mut self, member: Member, vertices: &[RateTriple]) {
        let idx = self.members.len();
        self.members.push(member);
        for v in vertices {
            self.points.push(*v);
            self.sources.push(idx);
        }
        if self.points.len() - self.frontier_len >= COMPACT_AT {
            self.compact();
        }
    }

    /// Adds every member and frontier point of an already swept region.
    pub fn absorb(&mut self, region: RateRegion) {
        let offset = self.members.len();
        self.members.extend(region.members);
        self.points.extend(region.frontier);
        self.sources.extend(region.sources.iter().map(|s| s + offset));
        self.compact();
    }

    fn compact(&mut self) {
        let keep = pareto_indices(&self.points);
        self.points = keep.iter().map(|&i| self.points[i]).collect();
        self.sources = keep.iter().map(|&i| self.sources[i]).collect();
        if self.retention == Retention::FrontierOnly {
            let mut remap = alloc::vec![usize::MAX; self.members.len()];
            let mut members = Vec::new();
            for s in self.sources.iter_mut() {
                if remap[*s] == usize::MAX {
                    remap[*s] = members.len();
                    members.push(self.members[*s]);
                }
                *s = remap[*s];
            }
            self.members = members;
        }
        self.frontier_len = self.points.len();
    }

    pub fn finish(mut self) -> RateRegion {
        self.compact();
        RateRegion {
            kind: self.kind,
            frontier: self.points,
            sources: self.sources,
            members: self.members,
        }
    }
}

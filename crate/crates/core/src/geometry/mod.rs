//! Rate-region geometry in `(R0, R1, R2)`: polytopes and their vertices,
//! Pareto frontiers, projections, Fourier–Motzkin elimination and swept
//! regions.

mod bounds;
mod frontier;
mod halfspace;
mod polytope;
mod region;
mod triple;

pub use bounds::{RateBounds, CLAMP_TOL};
pub use frontier::{pareto_frontier, pareto_frontier_2d, pareto_indices, project};
pub use halfspace::{fm_eliminate, Constraint, HalfspaceSystem, Relation};
pub use polytope::{
    enumerate_vertices, non_negativity, vertices, Halfspace3, Polytope3, GEOM_TOL, SANITY_BOX,
    SINGULAR_TOL,
};
pub use region::{contains, BoundKind, Member, Provenance, RateRegion, RegionBuilder, Retention};
pub use triple::{Axis, RatePair, RateTriple};

use alloc::vec::Vec;

use super::bounds::ChainInformation;
use crate::error::Result;
use crate::geometry::{HalfspaceSystem, Polytope3, RateTriple, GEOM_TOL};
use crate::info::{AuxiliaryChain, DiscreteChannel};

/// Variable order of the raw achievability system.
pub const RAW_VARIABLES: [&str; 5] = ["R0", "R1", "R2", "R1p", "R2p"];

/// The raw achievability constraints of one chain before the bin-index rates
/// `R1p`, `R2p` are projected out, with all slack terms at zero:
///
/// ```text
/// R1p + R2p = I(V1V2;Y2|U)
/// R0 <= I(U;Y2)
/// R1 + R1p <= I(V1;Y1|V2U)          R2 + R2p <= I(V2;Y1|V1U)
/// R1 + R1p + R2 + R2p <= I(V1V2;Y1|U)
/// R0 + R1 + R1p + R2 + R2p <= I(UV1V2;Y1)
/// R1p <= I(V1;Y2|V2U)   R2p <= I(V2;Y2|V1U)   R1p + R2p <= I(V1V2;Y2|U)
/// all rates >= 0
/// ```
pub fn achievability_system(info: &ChainInformation) -> Result<HalfspaceSystem> {
    let mut sys = HalfspaceSystem::new(&RAW_VARIABLES);
    sys.add_eq(&[("R1p", 1.0), ("R2p", 1.0)], info.v12_y2_u)?;
    sys.add_le(&[("R0", 1.0)], info.u_y2)?;
    sys.add_le(&[("R1", 1.0), ("R1p", 1.0)], info.v1_y1_v2u)?;
    sys.add_le(&[("R2", 1.0), ("R2p", 1.0)], info.v2_y1_v1u)?;
    sys.add_le(
        &[("R1", 1.0), ("R1p", 1.0), ("R2", 1.0), ("R2p", 1.0)],
        info.v12_y1_u,
    )?;
    sys.add_le(
        &[("R0", 1.0), ("R1", 1.0), ("R1p", 1.0), ("R2", 1.0), ("R2p", 1.0)],
        info.uv12_y1,
    )?;
    sys.add_le(&[("R1p", 1.0)], info.v1_y2_v2u)?;
    sys.add_le(&[("R2p", 1.0)], info.v2_y2_v1u)?;
    sys.add_le(&[("R1p", 1.0), ("R2p", 1.0)], info.v12_y2_u)?;
    sys.non_negative();
    Ok(sys)
}

/// Eliminates `R1p` then `R2p` and returns the projected polytope.
pub fn project_achievability(sys: &HalfspaceSystem) -> Result<Polytope3> {
    sys.fm_eliminate("R1p")?
        .fm_eliminate("R2p")?
        .to_polytope(["R0", "R1", "R2"])
}

/// Outcome of comparing the projected raw system with the direct
/// five-inequality polytope of the same chain.
#[derive(Debug, Clone, PartialEq)]
pub struct FmComparison {
    pub equal: bool,
    pub direct_vertices: Vec<RateTriple>,
    pub projected_vertices: Vec<RateTriple>,
}

/// Compares the two polytopes by mutual vertex containment within `tol`.
///
/// The direct polytope uses the unclamped bounds, which coincide with the
/// clamped ones whenever every bound is non-negative.
pub fn compare_with_direct(info: &ChainInformation, tol: f64) -> Result<FmComparison> {
    let projected = project_achievability(&achievability_system(info)?)?;
    let direct = info.inner_bounds().polytope()?;
    Ok(FmComparison {
        equal: projected.same_set(&direct, tol),
        direct_vertices: direct.vertices().to_vec(),
        projected_vertices: projected.vertices().to_vec(),
    })
}

/// [`compare_with_direct`] for one chain and channel at the geometric
/// tolerance.
pub fn fm_check(aux: &AuxiliaryChain, ch: &DiscreteChannel) -> Result<FmComparison> {
    compare_with_direct(&ChainInformation::evaluate(aux, ch)?, GEOM_TOL)
}

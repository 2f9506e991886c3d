use alloc::vec::Vec;
use core::ops::Range;

use super::bounds::ChainInformation;
use super::grid::{ChainGrid, GridSpec};
use crate::error::{Error, Result};
use crate::geometry::{BoundKind, Member, Provenance, RateRegion, RegionBuilder, Retention};
use crate::info::{ChainClass, DiscreteChannel, TableLayout};

pub fn bound_kind(class: ChainClass) -> BoundKind {
    match class {
        ChainClass::Inner => BoundKind::DmInner,
        ChainClass::Outer => BoundKind::DmOuter,
    }
}

/// Sweeps the chains with indices in `range` and returns their union.
pub fn sweep_range(ch: &DiscreteChannel, grid: &ChainGrid, range: Range<u64>) -> Result<RateRegion> {
    if (range.end as u128) > grid.len() {
        return Err(Error::InvalidParameter {
            name: "chain index",
            value: range.end as f64,
        });
    }
    let class = grid.class();
    let mut builder = RegionBuilder::new(bound_kind(class), Retention::FrontierOnly);
    let mut mass = Vec::new();
    let mut layout: Option<TableLayout> = None;
    for idx in range {
        let aux = grid.chain(idx)?;
        aux.fill_output_joint(ch, &mut mass)?;
        let layout = layout.get_or_insert_with(|| TableLayout::new(&aux.output_sizes(ch)));
        let info = ChainInformation::from_output_joint(layout, &mass);
        let bounds = match class {
            ChainClass::Inner => info.inner_bounds(),
            ChainClass::Outer => info.outer_bounds(),
        }
        .clamped();
        let member = Member {
            bounds,
            provenance: Provenance::Chain(idx),
        };
        builder.add(member, &bounds.vertices()?);
    }
    Ok(builder.finish())
}

/// Sweeps every chain of the grid on one thread.
pub fn sweep_region(ch: &DiscreteChannel, class: ChainClass, spec: GridSpec) -> Result<RateRegion> {
    let grid = ChainGrid::new(ch.shape(), class, spec)?;
    sweep_range(ch, &grid, 0..grid.len() as u64)
}

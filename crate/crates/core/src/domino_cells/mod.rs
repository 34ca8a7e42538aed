//! Rank-`r` domino tableaux, moving through cycles, and the equivalence
//! classes on `P_r(n)` that these moves generate.

mod moves;
mod ribbon;
mod tableau;

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use serde::Serialize;

pub use moves::{elementary_moves, forward_witness, witness, Direction, ElementaryMove, Witness};
pub use ribbon::{check_tiling_properties, move_through, tile_rim_ribbon, RimRibbon};
pub use tableau::{check_p_r, enumerate_tableaux, removable_dominoes, some_tableau, DominoTableau};

use crate::cores_quotients::enumerate_p_r_bounded;
use crate::error::{Error, Result};
use crate::partitions::{
    addable_boxes, j_heart, Box, Partition, ResidueClass, TypeJ, DEFAULT_MAX_PARTITION_SIZE,
};

/// An edge of the move graph on `P_r(n)`, oriented forward.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CellEdge {
    pub from: Partition,
    pub to: Partition,
    pub removed: Box,
    pub added: Box,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CellPartition {
    pub n: usize,
    pub r: usize,
    /// Each cell in canonical order; cells ordered by their first member.
    pub cells: Vec<Vec<Partition>>,
    pub edges: Vec<CellEdge>,
}

impl CellPartition {
    /// The cells as sorted sets, for comparison with other partitions of `P_r(n)`.
    pub fn set_partition(&self) -> Vec<Vec<Partition>> {
        self.cells.clone()
    }

    pub fn cell_of(&self, lambda: &Partition) -> Option<usize> {
        self.cells.iter().position(|c| c.contains(lambda))
    }
}

pub fn r_cells(n: usize, rank: usize) -> Result<CellPartition> {
    r_cells_bounded(n, rank, DEFAULT_MAX_PARTITION_SIZE)
}

/// Classes of `P_r(n)` under elementary moves. Every edge is witnessed by
/// an explicit pair of tableaux before it is used.
pub fn r_cells_bounded(n: usize, rank: usize, bound: usize) -> Result<CellPartition> {
    let shapes = enumerate_p_r_bounded(n, rank, bound)?;
    let j = ResidueClass::new(rank, 2);
    let per_shape: Vec<Vec<CellEdge>> = shapes
        .par_iter()
        .map(|lambda| {
            elementary_moves(lambda, rank)?
                .into_iter()
                .filter(|mv| mv.direction == Direction::Forward)
                .map(|mv| {
                    debug_assert_eq!(mv.removed.residue(2), j);
                    forward_witness(&mv, rank)?;
                    Ok(CellEdge {
                        to: mv.target(),
                        from: mv.source,
                        removed: mv.removed,
                        added: mv.added,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let edges: Vec<CellEdge> = per_shape.into_iter().flatten().collect();

    let index = |lambda: &Partition| {
        shapes
            .binary_search_by(|x| x.cmp(lambda))
            .map_err(|_| Error::Internal(format!("{lambda} is not in P_{rank}({n})")))
    };
    let mut uf = UnionFind::<usize>::new(shapes.len());
    for e in &edges {
        uf.union(index(&e.from)?, index(&e.to)?);
    }
    let labels = uf.into_labeling();
    let mut cells: Vec<Vec<Partition>> = Vec::new();
    let mut slot_of_root = std::collections::HashMap::new();
    for (i, lambda) in shapes.iter().enumerate() {
        let slot = *slot_of_root.entry(labels[i]).or_insert_with(|| {
            cells.push(Vec::new());
            cells.len() - 1
        });
        cells[slot].push(lambda.clone());
    }
    Ok(CellPartition {
        n,
        r: rank,
        cells,
        edges,
    })
}

/// A sequence of elementary moves from `lambda` to `mu`.
///
/// Both shapes are brought to the one whose boxes outside the common heart
/// are packed to the left: `lambda` is moved there by reverse moves, then
/// its boxes are slid right one slot at a time, rightmost first, until they
/// sit where `mu` has them.
pub fn path_between(
    lambda: &Partition,
    mu: &Partition,
    rank: usize,
) -> Result<Vec<ElementaryMove>> {
    let n = check_p_r(lambda, rank)?;
    if check_p_r(mu, rank)? != n {
        return Err(Error::InvalidParameter(format!(
            "{lambda} and {mu} have different sizes"
        )));
    }
    if lambda == mu {
        return Ok(Vec::new());
    }
    let j = ResidueClass::new(rank, 2);
    let types = TypeJ::singleton(j);
    let heart = j_heart(lambda, &types);
    if j_heart(mu, &types) != heart {
        return Err(Error::NoPath {
            from: lambda.clone(),
            to: mu.clone(),
        });
    }
    let mut slots = addable_boxes(&heart, j);
    slots.sort_by_key(|b| b.q);
    let occupancy = |shape: &Partition| -> Result<Vec<usize>> {
        let occupied: Vec<usize> = (0..slots.len())
            .filter(|&i| shape.contains(slots[i]))
            .collect();
        if heart.size() + occupied.len() != shape.size() {
            return Err(Error::Internal(format!(
                "{shape} is not its heart plus addable boxes"
            )));
        }
        Ok(occupied)
    };
    let from = occupancy(lambda)?;
    let to = occupancy(mu)?;
    let packed: Vec<usize> = (0..from.len()).collect();
    let mut packed_shape = heart.clone();
    for &i in &packed {
        packed_shape = packed_shape.add_box(slots[i])?;
    }

    let mut into_lambda = slide(&packed_shape, &packed, &from, &slots);
    into_lambda.reverse();
    let mut path: Vec<ElementaryMove> = into_lambda.iter().map(ElementaryMove::reversed).collect();
    path.extend(slide(&packed_shape, &packed, &to, &slots));
    Ok(path)
}

/// Forward moves taking the occupied slots `start` to `goal`, moving the
/// rightmost box first.
fn slide(shape: &Partition, start: &[usize], goal: &[usize], slots: &[Box]) -> Vec<ElementaryMove> {
    let mut shape = shape.clone();
    let mut out = Vec::new();
    for (&s, &g) in start.iter().zip(goal).rev() {
        for x in s..g {
            let mv = ElementaryMove {
                source: shape.clone(),
                removed: slots[x],
                added: slots[x + 1],
                direction: Direction::Forward,
            };
            shape = mv.target();
            out.push(mv);
        }
    }
    out
}

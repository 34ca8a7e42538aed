//! Cross-check of block partitions against domino cells for `l = 2`.
//!
//! For each `(n, r)` the point `(-r, r + 1)` is reduced into the closed
//! fundamental alcove (which lands in the alcove `A_{-r}`); its blocks are
//! carried to `P_r(n)` by `tau_s(w . -)` and compared with [`r_cells`].
//! Every other alcove adjacent to the point must give the same blocks.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::alcoves::{reduce_to_fundamental, ThetaPoint};
use crate::cm_blocks::{
    cm_partitions_for_all_adjacent, partition_from_data, transport, BlockPartition,
};
use crate::cores_quotients::enumerate_p_r;
use crate::domino_cells::r_cells;
use crate::error::{Error, Result};
use crate::partitions::{Partition, TypeJ};
use crate::Rational;

/// Deliberate defects for exercising the harness.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    #[default]
    None,
    /// Use residues `j + 1` in place of `j` on the block side.
    ResidueShift,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceReport {
    pub n: usize,
    pub r: usize,
    pub shapes: usize,
    pub blocks: usize,
    pub cells: usize,
    pub adjacent_alcoves: usize,
    pub equal: bool,
    pub wall_invariant: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub n: usize,
    pub r: usize,
    pub kind: &'static str,
    pub expected: Vec<Vec<Partition>>,
    pub found: Vec<Vec<Partition>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub max_n: usize,
    pub max_r: usize,
    pub fault: Fault,
    pub instances: Vec<InstanceReport>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

type SetPartition = BTreeSet<BTreeSet<Partition>>;

fn to_lists(sp: &SetPartition) -> Vec<Vec<Partition>> {
    let mut out: Vec<Vec<Partition>> = sp.iter().map(|s| s.iter().cloned().collect()).collect();
    out.sort_by(|a, b| a[0].cmp(&b[0]));
    out
}

/// The point `(-r, r + 1)` on `Theta_1`.
pub fn wall_point(r: usize) -> ThetaPoint<Rational> {
    let r = r as i64;
    ThetaPoint::on_theta1(vec![
        Rational::from_integer(-r),
        Rational::from_integer(r + 1),
    ])
    .expect("coordinates sum to 1")
}

/// Blocks of `P(2,n)` at the wall point, carried to `P_r(n)`.
pub fn transported_blocks(
    n: usize,
    r: usize,
    fault: Fault,
) -> Result<(BlockPartition, SetPartition)> {
    let reduction = reduce_to_fundamental(&wall_point(r))?;
    let types = match fault {
        Fault::None => reduction.type_j.clone(),
        Fault::ResidueShift => TypeJ::new(reduction.type_j.members().map(|j| (j + 1) % 2), 2)?,
    };
    let bp = partition_from_data(2, n, &reduction.element, &types)?;
    let sp = bp
        .blocks
        .iter()
        .map(|b| {
            b.members
                .iter()
                .map(|mp| transport(&reduction.element, mp))
                .collect::<Result<BTreeSet<Partition>>>()
        })
        .collect::<Result<SetPartition>>()?;
    Ok((bp, sp))
}

/// Compares both sides for one `(n, r)`.
pub fn verify_instance(
    n: usize,
    r: usize,
    fault: Fault,
) -> Result<(InstanceReport, Option<Counterexample>)> {
    let shapes = enumerate_p_r(n, r)?;
    let (bp, blocks) = transported_blocks(n, r, fault)?;
    let covered: BTreeSet<Partition> = blocks.iter().flatten().cloned().collect();
    if covered != shapes.iter().cloned().collect::<BTreeSet<_>>() {
        return Err(Error::Internal(format!(
            "transport at r = {r} does not land on P_{r}({n})"
        )));
    }
    let cells: SetPartition = r_cells(n, r)?
        .cells
        .into_iter()
        .map(|c| c.into_iter().collect())
        .collect();

    let adjacent = cm_partitions_for_all_adjacent(n, &wall_point(r))?;
    let reference = bp.set_partition();
    let mut wall_invariant = true;
    let mut wall_counterexample = None;
    if fault == Fault::None {
        for (red, other) in &adjacent {
            if other.set_partition() != reference {
                wall_invariant = false;
                let carried = |b: &BlockPartition| -> Result<SetPartition> {
                    b.blocks
                        .iter()
                        .map(|blk| {
                            blk.members
                                .iter()
                                .map(|mp| transport(&red.element, mp))
                                .collect()
                        })
                        .collect()
                };
                wall_counterexample.get_or_insert(Counterexample {
                    n,
                    r,
                    kind: "wall-choice",
                    expected: to_lists(&carried(&bp)?),
                    found: to_lists(&carried(other)?),
                });
            }
        }
    }

    let equal = blocks == cells;
    let report = InstanceReport {
        n,
        r,
        shapes: shapes.len(),
        blocks: blocks.len(),
        cells: cells.len(),
        adjacent_alcoves: adjacent.len(),
        equal,
        wall_invariant,
    };
    let counterexample = if equal {
        wall_counterexample
    } else {
        Some(Counterexample {
            n,
            r,
            kind: "blocks-vs-cells",
            expected: to_lists(&cells),
            found: to_lists(&blocks),
        })
    };
    Ok((report, counterexample))
}

/// Runs every instance with `1 <= n <= max_n` and `r <= max_r`.
pub fn run(max_n: usize, max_r: usize, fault: Fault) -> Result<VerifyReport> {
    let grid: Vec<(usize, usize)> = (1..=max_n)
        .flat_map(|n| (0..=max_r).map(move |r| (n, r)))
        .collect();
    let results: Vec<(InstanceReport, Option<Counterexample>)> = grid
        .par_iter()
        .map(|&(n, r)| verify_instance(n, r, fault))
        .collect::<Result<_>>()?;
    let counterexample = results.iter().find_map(|(_, c)| c.clone());
    let instances: Vec<InstanceReport> = results.into_iter().map(|(i, _)| i).collect();
    let note = instances.is_empty().then(|| "0 instances".to_string());
    Ok(VerifyReport {
        max_n,
        max_r,
        fault,
        passed: counterexample.is_none(),
        instances,
        counterexample,
        note,
    })
}

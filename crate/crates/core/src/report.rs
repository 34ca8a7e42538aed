//! Serializable reports and their plain-text renderings.

use std::fmt::Write as _;

use serde::Serialize;

use crate::alcoves::{Permutation, ReductionResult, ThetaPoint};
use crate::cm_blocks::{Block, BlockContext, BlockPartition};
use crate::cores_quotients::{Charge, Multipartition};
use crate::domino_cells::CellPartition;
use crate::partitions::Partition;
use crate::verify::VerifyReport;
use crate::Rational;

pub trait Table {
    fn to_table(&self) -> String;
}

#[derive(Clone, Debug, Serialize)]
pub struct BlocksReport {
    pub ell: usize,
    pub n: usize,
    pub theta: ThetaPoint<Rational>,
    pub charge: Charge,
    pub permutation: Permutation,
    #[serde(rename = "typeJ")]
    pub type_j: Vec<usize>,
    pub blocks: Vec<Block>,
}

impl BlocksReport {
    pub fn new(context: &BlockContext<Rational>, bp: BlockPartition) -> Self {
        Self {
            ell: context.ell,
            n: context.n,
            theta: context.theta.clone(),
            charge: context.reduction.element.translation().clone(),
            permutation: context.reduction.element.permutation().clone(),
            type_j: context.reduction.type_j.members().collect(),
            blocks: bp.blocks,
        }
    }
}

fn join<T: std::fmt::Display>(items: &[T], sep: &str) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

fn multipartition(mp: &Multipartition) -> String {
    format!("({})", join(mp.components(), ", "))
}

impl Table for BlocksReport {
    fn to_table(&self) -> String {
        let mut s = String::new();
        let theta = join(self.theta.coords(), ", ");
        let _ = writeln!(s, "ell = {}, n = {}, theta = ({theta})", self.ell, self.n);
        let _ = writeln!(
            s,
            "charge = {:?}, permutation = {:?}, typeJ = {:?}",
            self.charge.entries(),
            self.permutation.images(),
            self.type_j
        );
        let _ = writeln!(s, "{} blocks", self.blocks.len());
        for b in &self.blocks {
            let members: Vec<String> = b.members.iter().map(multipartition).collect();
            let _ = writeln!(
                s,
                "{:>4}  heart {:<12} {}",
                b.members.len(),
                b.heart.to_string(),
                members.join(" ")
            );
        }
        s
    }
}

impl Table for CellPartition {
    fn to_table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "n = {}, r = {}: {} cells",
            self.n,
            self.r,
            self.cells.len()
        );
        for cell in &self.cells {
            let _ = writeln!(s, "{:>4}  {}", cell.len(), join(cell, " "));
        }
        let _ = writeln!(s, "{} edges", self.edges.len());
        for e in &self.edges {
            let _ = writeln!(s, "  {} -> {}  (-{} +{})", e.from, e.to, e.removed, e.added);
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TauReport {
    pub charge: Charge,
    pub multipartition: Multipartition,
    pub partition: Partition,
    pub core: Partition,
}

impl Table for TauReport {
    fn to_table(&self) -> String {
        format!(
            "charge {:?}\nmultipartition {}\npartition {}\ncore {}\n",
            self.charge.entries(),
            multipartition(&self.multipartition),
            self.partition,
            self.core
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReduceReport {
    pub theta: ThetaPoint<Rational>,
    #[serde(flatten)]
    pub reduction: ReductionResult<Rational>,
}

impl Table for ReduceReport {
    fn to_table(&self) -> String {
        let red = &self.reduction;
        format!(
            "theta ({})\nword {:?}\ncharge {:?}\npermutation {:?}\nreduced ({})\ntypeJ {:?}\n",
            join(self.theta.coords(), ", "),
            red.word,
            red.element.translation().entries(),
            red.element.permutation().images(),
            join(red.reduced.coords(), ", "),
            red.type_j.members().collect::<Vec<_>>()
        )
    }
}

impl Table for VerifyReport {
    fn to_table(&self) -> String {
        let mut s = String::new();
        for i in &self.instances {
            let _ = writeln!(
                s,
                "n={} r={}  shapes {:>3}  blocks {:>3}  cells {:>3}  alcoves {}  {}",
                i.n,
                i.r,
                i.shapes,
                i.blocks,
                i.cells,
                i.adjacent_alcoves,
                if i.equal && i.wall_invariant {
                    "ok"
                } else {
                    "MISMATCH"
                }
            );
        }
        if let Some(note) = &self.note {
            let _ = writeln!(s, "{note}");
        }
        if let Some(c) = &self.counterexample {
            let _ = writeln!(s, "counterexample ({}) at n={} r={}", c.kind, c.n, c.r);
            let _ = writeln!(s, "  expected: {}", render_sets(&c.expected));
            let _ = writeln!(s, "  found:    {}", render_sets(&c.found));
        }
        let _ = writeln!(s, "{}", if self.passed { "PASS" } else { "FAIL" });
        s
    }
}

fn render_sets(sets: &[Vec<Partition>]) -> String {
    sets.iter()
        .map(|c| format!("{{{}}}", join(c, ", ")))
        .collect::<Vec<_>>()
        .join(" ")
}

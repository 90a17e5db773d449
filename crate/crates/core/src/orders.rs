//! Symbolic surface-order descriptors.
//!
//! Each σ-cycle `σᵢ` of length `nᵢ` carries a hereditary block: the
//! `nᵢ × nᵢ` pattern with `R` on and below the diagonal and `m` above it.
//! Slot `k` of block `i` is the `k`-th dart of `σᵢ` read from its minimal
//! dart. Every edge `(d₁, d₂)` glues the diagonal slots of its two darts
//! into a pullback ring. The block sizes form the normalization type and the
//! number of blocks is the rank of the center.
//!
//! Everything here is pattern-level: no ring elements are ever built.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::constellation::{Constellation, Edge};
use crate::error::{Error, Result};
use crate::permutation::Partition;

/// Matrix pattern symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Entry {
    /// The full ring `Rᵢ`.
    R,
    /// Its maximal ideal `mᵢ`.
    M,
    Zero,
    One,
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Entry::R => "R",
            Entry::M => "m",
            Entry::Zero => "0",
            Entry::One => "1",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexOrderBlock {
    /// 1-based position of the σ-cycle in canonical cycle order.
    pub id: usize,
    pub size: usize,
    pub slot_darts: Vec<usize>,
}

impl VertexOrderBlock {
    /// Pattern entry at 1-based `(row, col)`: `R` on or below the diagonal.
    pub fn entry(&self, row: usize, col: usize) -> Entry {
        if row >= col {
            Entry::R
        } else {
            Entry::M
        }
    }

    pub fn pattern(&self) -> Vec<Vec<Entry>> {
        (1..=self.size)
            .map(|r| (1..=self.size).map(|c| self.entry(r, c)).collect())
            .collect()
    }

    pub fn slot_of(&self, dart: usize) -> Option<usize> {
        self.slot_darts.iter().position(|&d| d == dart).map(|i| i + 1)
    }

    pub fn companion(&self) -> SigmaCompanion {
        SigmaCompanion {
            block_id: self.id,
            size: self.size,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlotRef {
    pub block: usize,
    pub slot: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gluing {
    pub edge: Edge,
    pub first: SlotRef,
    pub second: SlotRef,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceOrderDescriptor {
    pub blocks: Vec<VertexOrderBlock>,
    pub gluings: Vec<Gluing>,
    pub center_rank: usize,
    pub normalization_type: Partition,
}

/// Companion automorphism of a block: ones on the sub-diagonal and `m` in
/// the top-right corner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaCompanion {
    pub block_id: usize,
    pub size: usize,
}

impl SigmaCompanion {
    pub fn matrix(&self) -> Vec<Vec<Entry>> {
        let n = self.size;
        (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        if r == 0 && c == n - 1 {
                            Entry::M
                        } else if r == c + 1 {
                            Entry::One
                        } else {
                            Entry::Zero
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

/// Result of stepping a projective column with the companion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlotStep {
    pub slot: usize,
    /// Set when the step wraps from the last slot to the first, which is
    /// multiplication by `m`.
    pub twisted: bool,
}

/// Pattern of the projective column `P_{i,k}`: `k − 1` copies of `m`, then `R`.
pub fn projective_column(block: &VertexOrderBlock, k: usize) -> Result<Vec<Entry>> {
    check_slot(block, k)?;
    Ok((1..=block.size)
        .map(|r| if r < k { Entry::M } else { Entry::R })
        .collect())
}

/// `P_{i,k} ↦ P_{i,k+1}`, with `P_{i,n+1} = P_{i,1}` twisted by `m`.
pub fn apply_sigma_companion(block: &VertexOrderBlock, k: usize) -> Result<SlotStep> {
    check_slot(block, k)?;
    Ok(if k == block.size {
        SlotStep { slot: 1, twisted: true }
    } else {
        SlotStep {
            slot: k + 1,
            twisted: false,
        }
    })
}

fn check_slot(block: &VertexOrderBlock, k: usize) -> Result<()> {
    if k == 0 || k > block.size {
        return Err(Error::SlotOutOfRange {
            slot: k,
            size: block.size,
        });
    }
    Ok(())
}

pub fn build_surface_order(c: &Constellation) -> Result<SurfaceOrderDescriptor> {
    c.require_map()?;
    let blocks: Vec<VertexOrderBlock> = c
        .sigma()
        .cycles()
        .into_iter()
        .enumerate()
        .map(|(i, cycle)| VertexOrderBlock {
            id: i + 1,
            size: cycle.len(),
            slot_darts: cycle,
        })
        .collect();

    let mut slot_of = vec![SlotRef { block: 0, slot: 0 }; c.n_darts()];
    for b in &blocks {
        for (k, &d) in b.slot_darts.iter().enumerate() {
            slot_of[d - 1] = SlotRef {
                block: b.id,
                slot: k + 1,
            };
        }
    }
    let gluings = c
        .edges()
        .into_iter()
        .map(|edge| Gluing {
            edge,
            first: slot_of[edge.darts.0 - 1],
            second: slot_of[edge.darts.1 - 1],
        })
        .collect();

    Ok(SurfaceOrderDescriptor {
        center_rank: blocks.len(),
        normalization_type: Partition::new(blocks.iter().map(|b| b.size).collect()),
        blocks,
        gluings,
    })
}

/// One entry of the glued order, rows and columns indexed by edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GluedEntry {
    /// Diagonal pullback ring `R_{i,j}` of the blocks holding the two darts.
    Pullback(usize, usize),
    /// Contributions `(symbol, block)` from blocks meeting both edges.
    Blocks(Vec<(Entry, usize)>),
    Zero,
}

impl fmt::Display for GluedEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GluedEntry::Pullback(i, j) => write!(f, "R{i},{j}"),
            GluedEntry::Zero => f.write_str("0"),
            GluedEntry::Blocks(parts) => {
                for (n, (e, b)) in parts.iter().enumerate() {
                    if n > 0 {
                        f.write_str("+")?;
                    }
                    write!(f, "{e}{b}")?;
                }
                Ok(())
            }
        }
    }
}

impl SurfaceOrderDescriptor {
    /// The order as a matrix over edges: pullback rings on the diagonal and
    /// block entries wherever one block holds darts of both edges.
    pub fn glued_matrix(&self) -> Vec<Vec<GluedEntry>> {
        let edges: Vec<&Gluing> = self.gluings.iter().collect();
        let ends = |g: &Gluing| [g.first, g.second];
        edges
            .iter()
            .map(|row| {
                edges
                    .iter()
                    .map(|col| {
                        if row.edge.id == col.edge.id {
                            return GluedEntry::Pullback(row.first.block, row.second.block);
                        }
                        let mut parts = Vec::new();
                        for r in ends(row) {
                            for c in ends(col) {
                                if r.block == c.block {
                                    let block = &self.blocks[r.block - 1];
                                    parts.push((block.entry(r.slot, c.slot), r.block));
                                }
                            }
                        }
                        if parts.is_empty() {
                            GluedEntry::Zero
                        } else {
                            GluedEntry::Blocks(parts)
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// True when the gluing chords connect all blocks.
    pub fn is_connected(&self) -> bool {
        let n = self.blocks.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for g in &self.gluings {
            let (a, b) = (
                find(&mut parent, g.first.block - 1),
                find(&mut parent, g.second.block - 1),
            );
            parent[a] = b;
        }
        let root = find(&mut parent, 0);
        (0..n).all(|i| find(&mut parent, i) == root)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagramFormat {
    Json,
    Text,
    Dot,
}

impl FromStr for DiagramFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(DiagramFormat::Json),
            "text" => Ok(DiagramFormat::Text),
            "dot" => Ok(DiagramFormat::Dot),
            other => Err(Error::UnsupportedFormat(other.to_string())),
        }
    }
}

fn fmt_darts(darts: &[usize]) -> String {
    let inner: Vec<String> = darts.iter().map(ToString::to_string).collect();
    format!("({})", inner.join(","))
}

pub fn export_gluing_diagram(d: &SurfaceOrderDescriptor, format: DiagramFormat) -> String {
    match format {
        DiagramFormat::Json => serde_json::to_string_pretty(d).expect("descriptor serialises") + "\n",
        DiagramFormat::Text => {
            let mut out = String::new();
            for b in &d.blocks {
                let _ = writeln!(out, "block {} size {} darts {}", b.id, b.size, fmt_darts(&b.slot_darts));
                for row in b.pattern() {
                    let cells: Vec<String> = row.iter().map(|e| format!("{e}{}", b.id)).collect();
                    let _ = writeln!(out, "  {}", cells.join(" "));
                }
            }
            out.push_str("gluings\n");
            for g in &d.gluings {
                let _ = writeln!(
                    out,
                    "  edge {}: block {} slot {} ~ block {} slot {}",
                    g.edge, g.first.block, g.first.slot, g.second.block, g.second.slot
                );
            }
            out.push_str("glued order\n");
            for row in d.glued_matrix() {
                let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                let _ = writeln!(out, "  {}", cells.join(" "));
            }
            let _ = writeln!(out, "center_rank: {}", d.center_rank);
            let _ = writeln!(out, "normalization_type: {}", d.normalization_type);
            out
        }
        DiagramFormat::Dot => {
            let mut out = String::from("graph surface_order {\n");
            for b in &d.blocks {
                let _ = writeln!(out, "  subgraph cluster_{} {{", b.id);
                let _ = writeln!(out, "    label=\"block {}\";", b.id);
                for (k, dart) in b.slot_darts.iter().enumerate() {
                    let _ = writeln!(out, "    b{}s{} [label=\"{}\"];", b.id, k + 1, dart);
                }
                out.push_str("  }\n");
            }
            for g in &d.gluings {
                let _ = writeln!(
                    out,
                    "  b{}s{} -- b{}s{} [label=\"{}\"];",
                    g.first.block, g.first.slot, g.second.block, g.second.slot, g.edge
                );
            }
            out.push_str("}\n");
            out
        }
    }
}

//! Bipartite "cell" view of tripartite kets and the plane-structure grids.
//!
//! A bipartition splits the three parties into one row party and one fused
//! column party, cyclically: A|BC keeps A as the row index and fuses (B,C);
//! B|CA keeps B and fuses (C,A); C|AB keeps C and fuses (A,B). The fused
//! column index is always reported as an ordered pair, never flattened, so
//! every report reads like the entry names m_{20,02}; flattening happens only
//! inside the verifier's unknown indexing.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::field::CycNum;
use crate::states::{Dims, Ket, StateSet};
use crate::Error;

/// One of the three bipartitions, named by its row (single) party.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Bipartition {
    /// A|BC
    A,
    /// B|CA
    B,
    /// C|AB
    C,
}

impl Bipartition {
    pub const ALL: [Bipartition; 3] = [Bipartition::A, Bipartition::B, Bipartition::C];

    /// Row dimension and fused column dimensions under `dims`.
    pub fn shape(self, dims: Dims) -> (u32, (u32, u32)) {
        match self {
            Bipartition::A => (dims.d1, (dims.d2, dims.d3)),
            Bipartition::B => (dims.d2, (dims.d3, dims.d1)),
            Bipartition::C => (dims.d3, (dims.d1, dims.d2)),
        }
    }

    /// Joint dimension of the fused column party.
    pub fn joint_dim(self, dims: Dims) -> u32 {
        let (_, (c1, c2)) = self.shape(dims);
        c1 * c2
    }

    fn split(self, idx: (u32, u32, u32)) -> (u32, (u32, u32)) {
        let (i, j, k) = idx;
        match self {
            Bipartition::A => (i, (j, k)),
            Bipartition::B => (j, (k, i)),
            Bipartition::C => (k, (i, j)),
        }
    }

    /// One cell per nonzero amplitude, in lexicographic ket-index order.
    pub fn cells(self, x: &Ket) -> Vec<Cell> {
        x.amps()
            .map(|(idx, amp)| {
                let (row, col) = self.split(*idx);
                Cell {
                    row,
                    col,
                    amp: amp.clone(),
                }
            })
            .collect()
    }

    /// Parse the hyphenated CLI spelling (`A-BC`, `B-CA`, `C-AB`).
    pub fn from_flag(s: &str) -> Result<Self, Error> {
        match s {
            "A-BC" => Ok(Bipartition::A),
            "B-CA" => Ok(Bipartition::B),
            "C-AB" => Ok(Bipartition::C),
            other => Err(Error::Parse(format!(
                "unknown bipartition {other:?}; expected A-BC, B-CA, or C-AB"
            ))),
        }
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bipartition::A => write!(f, "A|BC"),
            Bipartition::B => write!(f, "B|CA"),
            Bipartition::C => write!(f, "C|AB"),
        }
    }
}

/// A (row, fused column) coordinate of one basis component of a ket.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cell {
    pub row: u32,
    pub col: (u32, u32),
    pub amp: CycNum,
}

/// All cell pairs of `x` and `y` sharing a row index; the driver for the
/// deduction rules on state pairs.
pub fn matched_row_pairs(x: &Ket, y: &Ket, b: Bipartition) -> Vec<(Cell, Cell)> {
    let xs = b.cells(x);
    let ys = b.cells(y);
    let mut out = Vec::new();
    for cx in &xs {
        for cy in &ys {
            if cx.row == cy.row {
                out.push((cx.clone(), cy.clone()));
            }
        }
    }
    out
}

/// Occupied grid of a state set under one bipartition. The stopper has full
/// support and is omitted; for the constructed sets every remaining slot
/// belongs to at most one state.
#[derive(Clone, Debug)]
pub struct PlaneStructure {
    pub bipartition: Bipartition,
    pub rows: u32,
    pub cols: (u32, u32),
    /// (row, fused col) -> state label, lexicographically ordered.
    pub slots: BTreeMap<(u32, (u32, u32)), String>,
}

pub fn plane_structure(s: &StateSet, b: Bipartition) -> Result<PlaneStructure, Error> {
    let (rows, cols) = b.shape(s.dims());
    let mut slots: BTreeMap<(u32, (u32, u32)), String> = BTreeMap::new();
    for (idx, (label, ket)) in s.iter().enumerate() {
        if Some(idx) == s.stopper_index() {
            continue;
        }
        for cell in b.cells(ket) {
            if let Some(prev) = slots.insert((cell.row, cell.col), label.to_owned()) {
                return Err(Error::SlotCollision {
                    row: cell.row,
                    c1: cell.col.0,
                    c2: cell.col.1,
                    a: prev,
                    b: label.to_owned(),
                });
            }
        }
    }
    Ok(PlaneStructure {
        bipartition: b,
        rows,
        cols,
        slots,
    })
}

#[derive(Serialize)]
struct SlotJson {
    row: u32,
    col: [u32; 2],
    label: String,
}

#[derive(Serialize)]
struct PlaneJson {
    bipartition: String,
    rows: u32,
    cols: [u32; 2],
    slots: Vec<SlotJson>,
}

impl PlaneStructure {
    pub fn to_json(&self) -> String {
        let doc = PlaneJson {
            bipartition: self.bipartition.to_string(),
            rows: self.rows,
            cols: [self.cols.0, self.cols.1],
            slots: self
                .slots
                .iter()
                .map(|((row, col), label)| SlotJson {
                    row: *row,
                    col: [col.0, col.1],
                    label: label.clone(),
                })
                .collect(),
        };
        let mut out = serde_json::to_string_pretty(&doc).expect("serializable");
        out.push('\n');
        out
    }

    /// Terminal rendering: rows downward, fused columns in lexicographic
    /// order, each occupied slot showing the label's subscript.
    pub fn ascii(&self) -> String {
        let short = |label: &str| -> String {
            label
                .strip_prefix('φ')
                .map(str::to_owned)
                .unwrap_or_else(|| label.to_owned())
        };
        let mut width = 2;
        for label in self.slots.values() {
            width = width.max(short(label).len());
        }
        let mut out = String::new();
        out.push_str(&format!(
            "{} plane ({} x {}·{})\n",
            self.bipartition, self.rows, self.cols.0, self.cols.1
        ));
        out.push_str(&" ".repeat(4));
        for c1 in 0..self.cols.0 {
            for c2 in 0..self.cols.1 {
                out.push_str(&format!(" {:>width$}", format!("{c1}{c2}")));
            }
        }
        out.push('\n');
        for row in 0..self.rows {
            out.push_str(&format!("{row:>3} "));
            for c1 in 0..self.cols.0 {
                for c2 in 0..self.cols.1 {
                    match self.slots.get(&(row, (c1, c2))) {
                        Some(label) => out.push_str(&format!(" {:>width$}", short(label))),
                        None => out.push_str(&format!(" {:>width$}", ".")),
                    }
                }
            }
            out.push('\n');
        }
        out
    }
}

//! Joint probability distribution diagrams.
//!
//! The products `p_i q_j` of two descending probability vectors form a d x d
//! grid whose entries decrease along rows and columns. Optimal sums of `k`
//! cells can be taken over top-left anchored Young-diagram shapes, which are
//! encoded here as integer partitions fitting in the d x d box.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Row lengths `k_1 >= k_2 >= ... >= k_n >= 1` of a Young diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("no parts".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} has a zero part"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not non-increasing"
            )));
        }
        Ok(Self(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Number of rows `n`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of boxes `k`.
    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn fits(&self, dim: usize) -> bool {
        self.0.len() <= dim && self.0[0] <= dim
    }

    /// All parts equal.
    pub fn is_rectangular(&self) -> bool {
        self.0.iter().all(|&k| k == self.0[0])
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

/// A JPDD cell. Stored 0-based, displayed 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row + 1, self.col + 1)
    }
}

/// A non-empty set of distinct cells.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IndexRegion {
    cells: BTreeSet<Cell>,
}

impl IndexRegion {
    pub fn new(cells: impl IntoIterator<Item = Cell>) -> Result<Self> {
        let cells: BTreeSet<Cell> = cells.into_iter().collect();
        if cells.is_empty() {
            return Err(Error::InvalidParameter(
                "region must contain at least one cell".into(),
            ));
        }
        Ok(Self { cells })
    }

    /// Every cell of the d x d grid.
    pub fn full(dim: usize) -> Self {
        Self {
            cells: (0..dim)
                .flat_map(|r| (0..dim).map(move |c| Cell::new(r, c)))
                .collect(),
        }
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.cells.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.cells.contains(&cell)
    }

    pub fn fits(&self, dim: usize) -> bool {
        self.cells.iter().all(|c| c.row < dim && c.col < dim)
    }

    /// Distinct rows touched, ascending.
    pub fn rows(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.cells.iter().map(|c| c.row).collect();
        set.into_iter().collect()
    }

    /// Distinct columns touched, ascending.
    pub fn cols(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.cells.iter().map(|c| c.col).collect();
        set.into_iter().collect()
    }

    /// True when some row and column relabeling turns the region into a
    /// top-left anchored Young diagram, i.e. the column sets of the occupied
    /// rows form a chain under inclusion.
    pub fn is_partition_shaped(&self) -> bool {
        let mut row_sets: Vec<BTreeSet<usize>> = self
            .rows()
            .into_iter()
            .map(|r| {
                self.cells
                    .iter()
                    .filter(|c| c.row == r)
                    .map(|c| c.col)
                    .collect()
            })
            .collect();
        row_sets.sort_by_key(|s| std::cmp::Reverse(s.len()));
        row_sets.windows(2).all(|w| w[1].is_subset(&w[0]))
    }
}

impl fmt::Display for IndexRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.cells.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// Partitions of `k` with at most `dim` parts, each at most `dim`, in
/// lexicographically descending order.
pub fn partitions_of(k: usize, dim: usize) -> Result<Vec<Partition>> {
    if k < 1 || k > dim * dim {
        return Err(Error::OutOfRange(format!(
            "k = {k} outside [1, {}] for dimension {dim}",
            dim * dim
        )));
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill_partitions(k, dim.min(k), dim, &mut current, &mut out);
    Ok(out)
}

fn fill_partitions(
    remaining: usize,
    max_part: usize,
    max_rows: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        out.push(Partition(current.clone()));
        return;
    }
    if current.len() == max_rows {
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        current.push(part);
        fill_partitions(remaining - part, part, max_rows, current, out);
        current.pop();
    }
}

/// One-box extensions: grow any row by one or open a new row of length one,
/// keeping the shape valid inside the d x d box.
pub fn successors(p: &Partition, dim: usize) -> Vec<Partition> {
    let parts = p.parts();
    let mut out: Vec<Partition> = Vec::new();
    for i in 0..parts.len() {
        let grown = parts[i] + 1;
        if grown > dim || (i > 0 && parts[i - 1] < grown) {
            continue;
        }
        let mut next = parts.to_vec();
        next[i] = grown;
        out.push(Partition(next));
    }
    if parts.len() < dim {
        let mut next = parts.to_vec();
        next.push(1);
        out.push(Partition(next));
    }
    out.dedup();
    out
}

/// Cells `{(i, j) : j < k_i}` of the diagram.
pub fn region_of_partition(p: &Partition) -> IndexRegion {
    IndexRegion {
        cells: p
            .parts()
            .iter()
            .enumerate()
            .flat_map(|(i, &k)| (0..k).map(move |j| Cell::new(i, j)))
            .collect(),
    }
}

fn is_descending(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[0] >= w[1])
}

/// Connectedness test for a region of the product grid of descending `p`, `q`.
///
/// Every cell attaining the region's maximum product needs its upper or left
/// neighbour inside the region. Cells on the first row or first column are
/// accepted as anchored.
pub fn is_connected_region(region: &IndexRegion, p: &[f64], q: &[f64]) -> Result<bool> {
    if !is_descending(p) || !is_descending(q) {
        return Err(Error::UnsortedInput);
    }
    for c in region.cells() {
        if c.row >= p.len() {
            return Err(Error::IndexOutOfRange {
                index: c.row,
                dim: p.len(),
            });
        }
        if c.col >= q.len() {
            return Err(Error::IndexOutOfRange {
                index: c.col,
                dim: q.len(),
            });
        }
    }
    let value = |c: Cell| p[c.row] * q[c.col];
    let max = region.cells().map(value).fold(f64::NEG_INFINITY, f64::max);
    Ok(region.cells().filter(|&c| value(c) == max).all(|c| {
        c.row == 0
            || c.col == 0
            || region.contains(Cell::new(c.row - 1, c.col))
            || region.contains(Cell::new(c.row, c.col - 1))
    }))
}

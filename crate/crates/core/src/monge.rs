//! Column minima of totally monotone matrices (SMAWK) and min-plus products
//! of Monge matrices with unreachable entries.
//!
//! Convention: a matrix `M` is Monge when
//! `M[i][j] + M[i'][j'] <= M[i][j'] + M[i'][j]` for all `i < i'`, `j < j'`.
//! For such matrices the topmost minimum of each column moves down (weakly)
//! as the column index grows, which is what SMAWK exploits. Indices are
//! zero-based throughout.
//!
//! Unreachable entries must form a *staircase*: every row has a non-empty
//! contiguous finite range `lo[i]..=hi[i]`, and both endpoints are
//! non-decreasing in `i`. [`Staircase`] replaces the unreachable entries by
//! finite penalties that keep the matrix Monge, so SMAWK still applies.

use std::cell::Cell;
use std::fmt;

use crate::error::{Error, Result};

/// Exact path cost. [`UNREACHABLE`] stands for infinity.
pub type Cost = u64;

pub const UNREACHABLE: Cost = Cost::MAX;

/// Documented bound on SMAWK oracle queries: at most
/// `SMAWK_QUERY_FACTOR * (rows + cols)` for any input.
pub const SMAWK_QUERY_FACTOR: u64 = 6;

/// Sum where either operand being [`UNREACHABLE`] yields [`UNREACHABLE`].
#[inline]
pub fn add(a: Cost, b: Cost) -> Cost {
    if a == UNREACHABLE || b == UNREACHABLE {
        UNREACHABLE
    } else {
        a + b
    }
}

/// Dense row-major matrix of costs.
#[derive(Clone, PartialEq, Eq)]
pub struct CostMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Cost>,
}

impl CostMatrix {
    pub fn filled(rows: usize, cols: usize, value: Cost) -> Self {
        CostMatrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows(rows: Vec<Vec<Cost>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        CostMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Cost) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CostMatrix { rows, cols, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Cost {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: Cost) {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j] = value;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[Cost] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub(crate) fn row_mut(&mut self, i: usize) -> &mut [Cost] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Cost>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Largest finite entry, if any.
    pub fn max_finite(&self) -> Option<Cost> {
        self.data.iter().copied().filter(|&v| v != UNREACHABLE).max()
    }

    /// Checks the Monge inequality on every quadruple whose four entries are
    /// finite. `O(rows² cols²)`; meant for tests and diagnostics.
    pub fn is_monge(&self) -> bool {
        for i in 0..self.rows {
            for i2 in i + 1..self.rows {
                for j in 0..self.cols {
                    for j2 in j + 1..self.cols {
                        let q = [self.get(i, j), self.get(i2, j2), self.get(i, j2), self.get(i2, j)];
                        if q.contains(&UNREACHABLE) {
                            continue;
                        }
                        if q[0] + q[1] > q[2] + q[3] {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Text grid, one row per line, unreachable entries as `inf`.
    pub fn to_grid_string(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            let line: Vec<String> = self
                .row(i)
                .iter()
                .map(|&v| {
                    if v == UNREACHABLE {
                        "inf".to_string()
                    } else {
                        v.to_string()
                    }
                })
                .collect();
            out.push_str(&line.join("\t"));
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for CostMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CostMatrix {}x{}", self.rows, self.cols)?;
        f.write_str(&self.to_grid_string())
    }
}

/// Minimum of one column and the smallest row attaining it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColumnMin {
    pub value: Cost,
    pub row: usize,
}

/// Column minima by scanning every entry. Ties go to the smallest row.
pub fn brute_column_minima(m: &CostMatrix) -> Vec<ColumnMin> {
    brute_column_minima_fn(m.rows(), m.cols(), |i, j| m.get(i, j))
}

pub(crate) fn brute_column_minima_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Cost) -> Vec<ColumnMin> {
    let mut out = vec![
        ColumnMin {
            value: UNREACHABLE,
            row: 0
        };
        cols
    ];
    for i in 0..rows {
        for (j, best) in out.iter_mut().enumerate() {
            let v = f(i, j);
            if v < best.value {
                *best = ColumnMin { value: v, row: i };
            }
        }
    }
    out
}

/// Column minima of a totally monotone `rows x cols` matrix given by an
/// element oracle. Ties go to the smallest row. Issues at most
/// [`SMAWK_QUERY_FACTOR`]` * (rows + cols)` oracle calls.
///
/// The result is unspecified if the matrix is not totally monotone.
pub fn smawk_column_minima<F>(rows: usize, cols: usize, f: F) -> Vec<ColumnMin>
where
    F: Fn(usize, usize) -> Cost,
{
    let mut out = Vec::new();
    smawk_into(rows, cols, f, &mut SmawkScratch::default(), &mut out);
    out
}

/// Buffers reused across SMAWK runs.
#[derive(Debug, Default)]
pub(crate) struct SmawkScratch {
    /// Reduced candidate lists of every level, back to back.
    stacks: Vec<usize>,
    /// `(offset, len)` of each level's list in `stacks`.
    levels: Vec<(usize, usize)>,
}

/// Column `t` of level `level` is `((t + 1) << level) - 1`; level `l + 1`
/// holds the odd columns of level `l`.
#[inline]
fn level_col(level: usize, t: usize) -> usize {
    ((t + 1) << level) - 1
}

pub(crate) fn smawk_into<F>(rows: usize, cols: usize, f: F, scratch: &mut SmawkScratch, out: &mut Vec<ColumnMin>)
where
    F: Fn(usize, usize) -> Cost,
{
    out.clear();
    out.resize(
        cols,
        ColumnMin {
            value: UNREACHABLE,
            row: 0,
        },
    );
    if rows == 0 || cols == 0 {
        return;
    }
    let SmawkScratch { stacks, levels } = scratch;
    stacks.clear();
    levels.clear();

    // REDUCE at every level: keep at most one candidate row per column.
    let mut level = 0;
    while cols >> level > 0 {
        let n = cols >> level;
        let start = stacks.len();
        let (prev_off, prev_len) = if level == 0 { (0, rows) } else { levels[level - 1] };
        for idx in 0..prev_len {
            let c = if level == 0 { idx } else { stacks[prev_off + idx] };
            while stacks.len() > start {
                let top = stacks[stacks.len() - 1];
                let col = level_col(level, stacks.len() - start - 1);
                if f(top, col) > f(c, col) {
                    stacks.pop();
                } else {
                    break;
                }
            }
            if stacks.len() - start < n {
                stacks.push(c);
            }
        }
        levels.push((start, stacks.len() - start));
        level += 1;
    }

    // Each even column's minimum lies between its odd neighbours' minima.
    for level in (0..levels.len()).rev() {
        let (off, len) = levels[level];
        let cand = &stacks[off..off + len];
        let n = cols >> level;
        let mut k = 0;
        for t in (0..n).step_by(2) {
            let col = level_col(level, t);
            let stop = if t + 1 < n {
                out[level_col(level, t + 1)].row
            } else {
                cand[len - 1]
            };
            let mut best = ColumnMin {
                value: f(cand[k], col),
                row: cand[k],
            };
            while cand[k] != stop {
                k += 1;
                let v = f(cand[k], col);
                if v < best.value {
                    best = ColumnMin { value: v, row: cand[k] };
                }
            }
            out[col] = best;
        }
    }
}

/// Finite-region shape of a matrix whose unreachable entries sit in the
/// lower-left and upper-right corners.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Staircase {
    lo: Vec<usize>,
    hi: Vec<usize>,
    cols: usize,
}

impl Staircase {
    /// `lo[i]..=hi[i]` is the finite range of row `i`.
    pub fn new(lo: Vec<usize>, hi: Vec<usize>, cols: usize) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch("staircase bounds differ in length".into()));
        }
        for i in 0..lo.len() {
            if lo[i] > hi[i] || hi[i] >= cols {
                return Err(Error::InvalidArgument(format!(
                    "row {i} range {}..={} invalid for {cols} columns",
                    lo[i], hi[i]
                )));
            }
            if i > 0 && (lo[i] < lo[i - 1] || hi[i] < hi[i - 1]) {
                return Err(Error::InvalidArgument(format!("row {i} range is not monotone")));
            }
        }
        Ok(Self::new_unchecked(lo, hi, cols))
    }

    pub(crate) fn new_unchecked(lo: Vec<usize>, hi: Vec<usize>, cols: usize) -> Self {
        Staircase { lo, hi, cols }
    }

    /// Rebuilds in place from `(lo, hi)` row ranges, keeping allocations.
    pub(crate) fn refill(&mut self, ranges: impl Iterator<Item = (usize, usize)>, cols: usize) {
        self.lo.clear();
        self.hi.clear();
        for (a, b) in ranges {
            self.lo.push(a);
            self.hi.push(b);
        }
        self.cols = cols;
    }

    pub(crate) fn is_monotone(&self) -> bool {
        self.lo.windows(2).all(|w| w[0] <= w[1]) && self.hi.windows(2).all(|w| w[0] <= w[1])
    }

    /// Reads the finite pattern off a materialized matrix.
    pub fn from_matrix(m: &CostMatrix) -> Result<Self> {
        let mut lo = Vec::with_capacity(m.rows());
        let mut hi = Vec::with_capacity(m.rows());
        for i in 0..m.rows() {
            let (a, b) = finite_range(m.row(i))
                .ok_or_else(|| Error::InvalidArgument(format!("row {i} is not a non-empty contiguous finite range")))?;
            lo.push(a);
            hi.push(b);
        }
        Staircase::new(lo, hi, m.cols())
    }

    pub fn rows(&self) -> usize {
        self.lo.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_finite(&self, i: usize, j: usize) -> bool {
        self.lo[i] <= j && j <= self.hi[i]
    }

    /// Manhattan-style distance of `(i, j)` from the finite region, 0 inside.
    /// Grows by at least one per step away from the region in either
    /// direction, which is what keeps the penalized matrix Monge.
    #[inline]
    pub fn excess(&self, i: usize, j: usize) -> u64 {
        if j > self.hi[i] {
            // rows between `i` and the first one reaching column `j`
            let reaching = self.hi.partition_point(|&h| h < j);
            ((j - self.hi[i]) + (reaching - i)) as u64
        } else if j < self.lo[i] {
            // rows between the last one started by column `j` and `i`
            let started = self.lo.partition_point(|&l| l <= j);
            ((self.lo[i] - j) + (i + 1 - started)) as u64
        } else {
            0
        }
    }

    /// Penalty scale for finite entries lying in `[min, max]`.
    pub fn penalty_unit(&self, min: Cost, max: Cost) -> Cost {
        let span = max.saturating_sub(min);
        span.saturating_add(1).saturating_mul((self.rows() + self.cols) as Cost)
    }

    /// Column minima of the matrix `f` restricted to this staircase, via
    /// SMAWK on the penalized matrix. `bounds` must enclose every finite
    /// entry. Columns without any finite entry report [`UNREACHABLE`].
    pub fn column_minima<F>(&self, bounds: (Cost, Cost), f: F) -> Vec<ColumnMin>
    where
        F: Fn(usize, usize) -> Cost,
    {
        self.column_minima_counted(bounds, f, &Cell::new(0))
    }

    /// [`Staircase::column_minima`] that adds the number of matrix entries
    /// SMAWK looked at, penalized ones included, to `queries`.
    pub(crate) fn column_minima_counted<F>(&self, bounds: (Cost, Cost), f: F, queries: &Cell<u64>) -> Vec<ColumnMin>
    where
        F: Fn(usize, usize) -> Cost,
    {
        let mut out = Vec::new();
        self.column_minima_into(bounds, f, queries, &mut SmawkScratch::default(), &mut out);
        out
    }

    pub(crate) fn column_minima_into<F>(
        &self,
        bounds: (Cost, Cost),
        f: F,
        queries: &Cell<u64>,
        scratch: &mut SmawkScratch,
        out: &mut Vec<ColumnMin>,
    ) where
        F: Fn(usize, usize) -> Cost,
    {
        let (min, max) = bounds;
        let unit = self.penalty_unit(min, max);
        let oracle = |i: usize, j: usize| {
            queries.set(queries.get() + 1);
            if self.is_finite(i, j) {
                f(i, j)
            } else {
                min.saturating_add(unit.saturating_mul(self.excess(i, j)))
            }
        };
        smawk_into(self.rows(), self.cols, oracle, scratch, out);
        for (j, m) in out.iter_mut().enumerate() {
            if !self.is_finite(m.row, j) {
                m.value = UNREACHABLE;
            }
        }
    }
}

/// Contiguous finite range of a row, or `None` if it is empty or has holes.
pub(crate) fn finite_range(row: &[Cost]) -> Option<(usize, usize)> {
    let lo = row.iter().position(|&v| v != UNREACHABLE)?;
    let hi = row.iter().rposition(|&v| v != UNREACHABLE)?;
    if row[lo..=hi].contains(&UNREACHABLE) {
        return None;
    }
    Some((lo, hi))
}

/// A matrix whose unreachable entries were replaced by staircase penalties.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substituted {
    pub matrix: CostMatrix,
    pub staircase: Staircase,
}

impl Substituted {
    /// SMAWK column minima; columns that were entirely unreachable report
    /// [`UNREACHABLE`].
    pub fn column_minima(&self) -> Vec<ColumnMin> {
        let mut minima = smawk_column_minima(self.matrix.rows(), self.matrix.cols(), |i, j| self.matrix.get(i, j));
        for (j, m) in minima.iter_mut().enumerate() {
            if !self.staircase.is_finite(m.row, j) {
                m.value = UNREACHABLE;
            }
        }
        minima
    }
}

/// Replaces every unreachable entry of a staircase-shaped Monge matrix by a
/// finite penalty `min + unit * excess(i, j)`, where `unit` is
/// `(max - min + 1) * (rows + cols)` over the finite entries. The result is
/// Monge, every penalty exceeds every finite entry, and finite entries are
/// untouched.
pub fn substitute_infinities(m: &CostMatrix) -> Result<Substituted> {
    let staircase = Staircase::from_matrix(m)?;
    let finite = m.data.iter().copied().filter(|&v| v != UNREACHABLE);
    let min = finite.clone().min().unwrap_or(0);
    let max = finite.max().unwrap_or(0);
    let unit = staircase.penalty_unit(min, max);
    let matrix = CostMatrix::from_fn(m.rows(), m.cols(), |i, j| {
        let v = m.get(i, j);
        if v == UNREACHABLE {
            min.saturating_add(unit.saturating_mul(staircase.excess(i, j)))
        } else {
            v
        }
    });
    Ok(Substituted { matrix, staircase })
}

/// Min-plus product `C[i][j] = min_k d1[i][k] + d2[k][j]`.
///
/// Both factors must be staircase-shaped Monge matrices. Each output row is
/// one SMAWK pass over the implicit matrix `d1[i][k] + d2[k][j]`, restricted
/// to the rows `k` where `d1[i][k]` is finite. Rows whose shape is not a
/// staircase fall back to a full scan.
pub fn minplus_multiply(d1: &CostMatrix, d2: &CostMatrix) -> Result<CostMatrix> {
    minplus_multiply_counted(d1, d2, &Cell::new(0))
}

/// [`minplus_multiply`] that adds the number of element queries to `queries`.
pub fn minplus_multiply_counted(d1: &CostMatrix, d2: &CostMatrix, queries: &Cell<u64>) -> Result<CostMatrix> {
    minplus_windows(Window::full(d1), Window::full(d2), queries)
}

/// Rectangular window into a [`CostMatrix`].
#[derive(Debug, Clone, Copy)]
pub(crate) struct Window<'a> {
    m: &'a CostMatrix,
    row0: usize,
    col0: usize,
    rows: usize,
    cols: usize,
}

impl<'a> Window<'a> {
    pub(crate) fn new(m: &'a CostMatrix, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        assert!(rows.end <= m.rows() && cols.end <= m.cols());
        Window {
            m,
            row0: rows.start,
            col0: cols.start,
            rows: rows.len(),
            cols: cols.len(),
        }
    }

    fn full(m: &'a CostMatrix) -> Self {
        Window::new(m, 0..m.rows(), 0..m.cols())
    }

    #[inline]
    fn row(&self, i: usize) -> &'a [Cost] {
        &self.m.row(self.row0 + i)[self.col0..self.col0 + self.cols]
    }
}

pub(crate) fn minplus_windows(d1: Window, d2: Window, queries: &Cell<u64>) -> Result<CostMatrix> {
    if d1.cols != d2.rows {
        return Err(Error::DimensionMismatch(format!(
            "cannot multiply {}x{} by {}x{}",
            d1.rows, d1.cols, d2.rows, d2.cols
        )));
    }
    let (rows, inner, cols) = (d1.rows, d1.cols, d2.cols);
    let mut out = CostMatrix::filled(rows, cols, UNREACHABLE);
    if rows == 0 || inner == 0 || cols == 0 {
        return Ok(out);
    }

    // Shape of the right factor, row by row. `None` marks an empty row;
    // a row with holes forces the scan fallback.
    let right: Vec<&[Cost]> = (0..inner).map(|k| d2.row(k)).collect();
    let nonempty: Vec<bool> = right.iter().map(|row| row.iter().any(|&v| v != UNREACHABLE)).collect();
    let ranges: Vec<Option<(usize, usize)>> = right.iter().map(|row| finite_range(row)).collect();
    let shape_ok = (0..inner).all(|k| ranges[k].is_some() || !nonempty[k]);
    let max_right = right
        .iter()
        .flat_map(|row| row.iter())
        .filter(|&&v| v != UNREACHABLE)
        .max()
        .copied()
        .unwrap_or(0);

    let mut ks = Vec::with_capacity(inner);
    let mut stair = Staircase::new_unchecked(Vec::new(), Vec::new(), cols);
    let mut scratch = SmawkScratch::default();
    let mut minima = Vec::with_capacity(cols);
    for i in 0..rows {
        let left = d1.row(i);
        ks.clear();
        ks.extend((0..inner).filter(|&k| left[k] != UNREACHABLE && nonempty[k]));
        if ks.is_empty() {
            continue;
        }
        let entry = |r: usize, j: usize| {
            let k = ks[r];
            add(left[k], right[k][j])
        };
        let staircase_row = shape_ok && {
            stair.refill(ks.iter().map(|&k| ranges[k].expect("non-empty row")), cols);
            stair.is_monotone()
        };
        if staircase_row {
            let min_left = ks.iter().map(|&k| left[k]).min().unwrap();
            let max_left = ks.iter().map(|&k| left[k]).max().unwrap();
            stair.column_minima_into(
                (min_left, max_left + max_right),
                entry,
                queries,
                &mut scratch,
                &mut minima,
            );
        } else {
            queries.set(queries.get() + (ks.len() * cols) as u64);
            minima = brute_column_minima_fn(ks.len(), cols, entry);
        }
        for (slot, m) in out.row_mut(i).iter_mut().zip(&minima) {
            *slot = m.value;
        }
    }
    Ok(out)
}

/// Reference min-plus product by triple loop.
pub fn brute_minplus(d1: &CostMatrix, d2: &CostMatrix) -> Result<CostMatrix> {
    if d1.cols() != d2.rows() {
        return Err(Error::DimensionMismatch("inner dimensions differ".into()));
    }
    Ok(CostMatrix::from_fn(d1.rows(), d2.cols(), |i, j| {
        (0..d1.cols())
            .map(|k| add(d1.get(i, k), d2.get(k, j)))
            .min()
            .unwrap_or(UNREACHABLE)
    }))
}

//! The block sweep over the edit-distance grid, and the plain dynamic
//! program it must agree with.

use std::cell::Cell;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use crate::dist::{Repository, Segment};
use crate::error::{Error, Result};
use crate::monge::{add, Cost};
use crate::partition::partition;
use crate::scoring::ScoringFunction;
use crate::slp::Slp;

/// Edit distance by the full `(|a|+1) x (|b|+1)` table, one row at a time.
pub fn wagner_fischer(a: &str, b: &str, sf: &ScoringFunction) -> Result<Cost> {
    let a = sf.encode(a.chars())?;
    let b = sf.encode(b.chars())?;
    // keep the shorter string along the row
    let transposed = b.len() > a.len();
    let (rows, cols) = if transposed { (&b, &a) } else { (&a, &b) };
    let del = |r: u32| if transposed { sf.ins_sym(r) } else { sf.del_sym(r) };
    let ins = |c: u32| if transposed { sf.del_sym(c) } else { sf.ins_sym(c) };
    let sub = |r: u32, c: u32| if transposed { sf.sub_sym(c, r) } else { sf.sub_sym(r, c) };

    let mut row: Vec<Cost> = Vec::with_capacity(cols.len() + 1);
    row.push(0);
    for &c in cols.iter() {
        row.push(add(*row.last().unwrap(), ins(c)));
    }
    for &r in rows.iter() {
        let mut diag = row[0];
        row[0] = add(row[0], del(r));
        for (j, &c) in cols.iter().enumerate() {
            let up = row[j + 1];
            row[j + 1] = add(up, del(r)).min(add(row[j], ins(c))).min(add(diag, sub(r, c)));
            diag = up;
        }
    }
    Ok(row[cols.len()])
}

/// `max(2, round((N/n)^(2/3)))` clamped to `[2, N]`, with `N` and `n` the
/// total string length and total grammar size of both inputs.
pub fn default_block_size(total_len: u64, total_size: usize) -> u64 {
    if total_size == 0 {
        return 2;
    }
    let ratio = total_len as f64 / total_size as f64;
    let x = ratio.powf(2.0 / 3.0).round() as u64;
    x.clamp(2, total_len.max(2))
}

/// Counters and timings of one [`block_edit_distance`] run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunStats {
    pub len_a: u64,
    pub len_b: u64,
    pub size_a: usize,
    pub size_b: usize,
    pub x: u64,
    pub parts_a: usize,
    pub parts_b: usize,
    pub block_count: u64,
    pub memo_size: usize,
    pub direct_builds: u64,
    pub merges: u64,
    pub cache_hits: u64,
    /// SMAWK oracle calls while merging tables.
    pub repository_queries: u64,
    /// Grid cells evaluated while building single-character tables.
    pub direct_cells: u64,
    /// Sum of boundary sizes over all blocks swept.
    pub boundary_cells_propagated: u64,
    /// SMAWK oracle calls during the sweep.
    pub sweep_queries: u64,
    pub partition_time: Duration,
    pub repository_time: Duration,
    pub sweep_time: Duration,
}

impl RunStats {
    /// Everything counted: merge queries, direct cells and sweep queries.
    pub fn total_work(&self) -> u64 {
        self.repository_queries + self.direct_cells + self.sweep_queries
    }

    /// `key=value` lines, one per field.
    pub fn to_record(&self) -> String {
        let mut out = String::new();
        let mut put = |k: &str, v: &dyn std::fmt::Display| {
            let _ = writeln!(out, "{k}={v}");
        };
        put("N_A", &self.len_a);
        put("N_B", &self.len_b);
        put("n_A", &self.size_a);
        put("n_B", &self.size_b);
        put("x", &self.x);
        put("parts_A", &self.parts_a);
        put("parts_B", &self.parts_b);
        put("block_count", &self.block_count);
        put("memo_size", &self.memo_size);
        put("direct_builds", &self.direct_builds);
        put("merges", &self.merges);
        put("cache_hits", &self.cache_hits);
        put("repository_queries", &self.repository_queries);
        put("direct_cells", &self.direct_cells);
        put("boundary_cells_propagated", &self.boundary_cells_propagated);
        put("sweep_queries", &self.sweep_queries);
        put("total_work", &self.total_work());
        put("partition_seconds", &self.partition_time.as_secs_f64());
        put("repository_seconds", &self.repository_time.as_secs_f64());
        put("sweep_seconds", &self.sweep_time.as_secs_f64());
        out
    }
}

/// Edit distance between the strings derived by `a` and `b`, computed over
/// an `x`-partition of the grid. `x` defaults to [`default_block_size`].
pub fn block_edit_distance(a: &Slp, b: &Slp, sf: &ScoringFunction, x: Option<u64>) -> Result<(Cost, RunStats)> {
    let (len_a, len_b) = (a.derived_len(), b.derived_len());
    let x = match x {
        Some(x) if x < 2 => {
            return Err(Error::InvalidArgument(format!(
                "block size x must be at least 2, got {x}"
            )))
        }
        Some(x) => x,
        None => default_block_size(len_a + len_b, a.size() + b.size()),
    };
    let mut stats = RunStats {
        len_a,
        len_b,
        size_a: a.size(),
        size_b: b.size(),
        x,
        ..RunStats::default()
    };

    let clock = Instant::now();
    let part_a = partition(a, x)?;
    let part_b = partition(b, x)?;
    stats.parts_a = part_a.len();
    stats.parts_b = part_b.len();
    stats.block_count = (part_a.len() * part_b.len()) as u64;
    stats.partition_time = clock.elapsed();

    let clock = Instant::now();
    let repo = Repository::build(a, &part_a, b, &part_b, sf)?;
    let counters = repo.counters();
    stats.memo_size = repo.len();
    stats.direct_builds = counters.direct_builds;
    stats.merges = counters.merges;
    stats.cache_hits = counters.cache_hits;
    stats.repository_queries = counters.queries;
    stats.direct_cells = counters.direct_cells;
    stats.repository_time = clock.elapsed();

    let clock = Instant::now();
    let text_a = a.expand_chars(a.root())?;
    let text_b = b.expand_chars(b.root())?;
    let sa = sf.encode(text_a.iter().copied())?;
    let sb = sf.encode(text_b.iter().copied())?;

    // Values on the top row of the current block row.
    let mut row_vals: Vec<Cost> = Vec::with_capacity(sb.len() + 1);
    row_vals.push(0);
    for &c in &sb {
        row_vals.push(add(*row_vals.last().unwrap(), sf.ins_sym(c)));
    }
    let mut column_base: Cost = 0;
    let queries = Cell::new(0);
    let mut inputs: Vec<Cost> = Vec::new();
    // Values on the left column of the current block, top to bottom.
    let mut left: Vec<Cost> = Vec::new();

    for pa in part_a.parts() {
        let (ra, h) = (pa.start as usize, pa.len as usize);
        // first grid column by the deletion rule
        left.clear();
        left.push(column_base);
        for &r in &sa[ra..ra + h] {
            left.push(add(*left.last().unwrap(), sf.del_sym(r)));
        }
        column_base = left[h];

        for pb in part_b.parts() {
            let (cb, w) = (pb.start as usize, pb.len as usize);
            let table = repo
                .get(
                    Segment {
                        var: pa.var,
                        kind: pa.kind,
                    },
                    Segment {
                        var: pb.var,
                        kind: pb.kind,
                    },
                )
                .ok_or_else(|| Error::Invariant(format!("no table for block ({}, {})", pa.var, pb.var)))?;
            if table.a().len() != h || table.b().len() != w {
                return Err(Error::Invariant(format!(
                    "table for block ({}, {}) is {}x{}, block is {h}x{w}",
                    pa.var,
                    pb.var,
                    table.a().len(),
                    table.b().len()
                )));
            }
            debug_assert_eq!(table.a(), &text_a[ra..ra + h]);
            debug_assert_eq!(table.b(), &text_b[cb..cb + w]);

            inputs.clear();
            inputs.extend(left.iter().rev());
            inputs.extend_from_slice(&row_vals[cb + 1..=cb + w]);
            stats.boundary_cells_propagated += inputs.len() as u64;
            let out = table.apply_inputs_counted(&inputs, &queries)?;

            row_vals[cb..=cb + w].copy_from_slice(&out[..=w]);
            left[h] = out[w];
            for r in 0..h {
                left[r] = out[w + h - r];
            }
        }
    }
    stats.sweep_queries = queries.get();
    stats.sweep_time = clock.elapsed();
    Ok((row_vals[sb.len()], stats))
}

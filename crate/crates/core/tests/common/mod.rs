//! Test-side oracles, written without touching the library's algorithms.

#![allow(dead_code)]

use slp_edit::partition::association_map;
use slp_edit::{partition, Cost, CostMatrix, PartKind, ScoringFunction, Slp, UNREACHABLE};

pub const INF: Cost = UNREACHABLE;

fn del(sf: &ScoringFunction, c: char) -> Cost {
    sf.del(c).expect("character in alphabet")
}

fn ins(sf: &ScoringFunction, c: char) -> Cost {
    sf.ins(c).expect("character in alphabet")
}

fn sub(sf: &ScoringFunction, a: char, b: char) -> Cost {
    sf.sub(a, b).expect("characters in alphabet")
}

/// Full-table edit distance.
pub fn edit_distance(a: &str, b: &str, sf: &ScoringFunction) -> Cost {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut t = vec![vec![0; b.len() + 1]; a.len() + 1];
    for i in 1..=a.len() {
        t[i][0] = t[i - 1][0] + del(sf, a[i - 1]);
    }
    for j in 1..=b.len() {
        t[0][j] = t[0][j - 1] + ins(sf, b[j - 1]);
    }
    for i in 1..=a.len() {
        for j in 1..=b.len() {
            t[i][j] = (t[i - 1][j] + del(sf, a[i - 1]))
                .min(t[i][j - 1] + ins(sf, b[j - 1]))
                .min(t[i - 1][j - 1] + sub(sf, a[i - 1], b[j - 1]));
        }
    }
    t[a.len()][b.len()]
}

/// Boundary vertex `i` of an `h x w` block, inputs: bottom-left corner up the
/// first column, then along the first row.
pub fn input_vertex(h: usize, i: usize) -> (usize, usize) {
    if i <= h {
        (h - i, 0)
    } else {
        (0, i - h)
    }
}

/// Outputs: along the last row, then up the last column.
pub fn output_vertex(h: usize, w: usize, j: usize) -> (usize, usize) {
    if j <= w {
        (h, j)
    } else {
        (h - (j - w), w)
    }
}

/// Cheapest path weight from `from` to `to` by enumerating every monotone
/// path. Exponential; only for tiny blocks.
pub fn path_min(a: &[char], b: &[char], sf: &ScoringFunction, from: (usize, usize), to: (usize, usize)) -> Cost {
    if from.0 > to.0 || from.1 > to.1 {
        return INF;
    }
    if from == to {
        return 0;
    }
    let (r, c) = from;
    let mut best = INF;
    if r < to.0 {
        let rest = path_min(a, b, sf, (r + 1, c), to);
        if rest != INF {
            best = best.min(rest + del(sf, a[r]));
        }
    }
    if c < to.1 {
        let rest = path_min(a, b, sf, (r, c + 1), to);
        if rest != INF {
            best = best.min(rest + ins(sf, b[c]));
        }
    }
    if r < to.0 && c < to.1 {
        let rest = path_min(a, b, sf, (r + 1, c + 1), to);
        if rest != INF {
            best = best.min(rest + sub(sf, a[r], b[c]));
        }
    }
    best
}

/// DIST table by path enumeration.
pub fn dist_by_paths(a: &[char], b: &[char], sf: &ScoringFunction) -> Vec<Vec<Cost>> {
    let (h, w) = (a.len(), b.len());
    let s = h + w + 1;
    (0..s)
        .map(|i| {
            (0..s)
                .map(|j| path_min(a, b, sf, input_vertex(h, i), output_vertex(h, w, j)))
                .collect()
        })
        .collect()
}

/// Output values of a block by a grid pass seeded with boundary input values.
pub fn grid_outputs(a: &[char], b: &[char], sf: &ScoringFunction, inputs: &[Cost]) -> Vec<Cost> {
    let (h, w) = (a.len(), b.len());
    let mut v = vec![vec![INF; w + 1]; h + 1];
    for (i, &val) in inputs.iter().enumerate() {
        let (r, c) = input_vertex(h, i);
        v[r][c] = v[r][c].min(val);
    }
    for r in 0..=h {
        for c in 0..=w {
            let mut best = v[r][c];
            if r > 0 && v[r - 1][c] != INF {
                best = best.min(v[r - 1][c] + del(sf, a[r - 1]));
            }
            if c > 0 && v[r][c - 1] != INF {
                best = best.min(v[r][c - 1] + ins(sf, b[c - 1]));
            }
            if r > 0 && c > 0 && v[r - 1][c - 1] != INF {
                best = best.min(v[r - 1][c - 1] + sub(sf, a[r - 1], b[c - 1]));
            }
            v[r][c] = best;
        }
    }
    (0..h + w + 1)
        .map(|j| {
            let (r, c) = output_vertex(h, w, j);
            v[r][c]
        })
        .collect()
}

/// Column minima over finite entries, ties to the smallest row.
pub fn column_minima(m: &[Vec<Cost>]) -> Vec<(Cost, Option<usize>)> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| {
            let mut best = (INF, None);
            for (i, row) in m.iter().enumerate() {
                if row[j] != INF && (best.1.is_none() || row[j] < best.0) {
                    best = (row[j], Some(i));
                }
            }
            best
        })
        .collect()
}

/// Monge check over finite quadruples of adjacent rows and columns.
pub fn is_monge_adjacent(m: &[Vec<Cost>]) -> bool {
    for i in 0..m.len().saturating_sub(1) {
        for j in 0..m[i].len().saturating_sub(1) {
            let (a, b, c, d) = (m[i][j], m[i][j + 1], m[i + 1][j], m[i + 1][j + 1]);
            if [a, b, c, d].contains(&INF) {
                continue;
            }
            if a + d > b + c {
                return false;
            }
        }
    }
    true
}

/// `M[i][j] = sum of w[p][q] for p >= i, q <= j, plus f[i] + g[j]`, with
/// non-negative `w`: a Monge matrix.
pub fn monge_from_weights(w: &[Vec<u64>], f: &[u64], g: &[u64]) -> Vec<Vec<Cost>> {
    let rows = w.len();
    let cols = w.first().map_or(0, Vec::len);
    let mut m = vec![vec![0; cols]; rows];
    for i in (0..rows).rev() {
        for j in 0..cols {
            let below = if i + 1 < rows { m[i + 1][j] } else { 0 };
            let left = if j > 0 { m[i][j - 1] } else { 0 };
            let diag = if i + 1 < rows && j > 0 { m[i + 1][j - 1] } else { 0 };
            m[i][j] = w[i][j] + below + left - diag;
        }
    }
    for i in 0..rows {
        for j in 0..cols {
            m[i][j] += f[i] + g[j];
        }
    }
    m
}

/// Blanks out everything outside `lo[i]..=hi[i]`.
pub fn apply_staircase(m: &mut [Vec<Cost>], lo: &[usize], hi: &[usize]) {
    for (i, row) in m.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            if j < lo[i] || j > hi[i] {
                *v = INF;
            }
        }
    }
}

pub fn matrix(rows: &[Vec<Cost>]) -> CostMatrix {
    CostMatrix::from_rows(rows.to_vec())
}

/// Every non-empty word over `{a, b}` up to length `max`.
pub fn words(max: usize) -> Vec<Vec<char>> {
    let mut out = vec![];
    let mut level: Vec<Vec<char>> = vec![vec![]];
    for _ in 0..max {
        level = level
            .iter()
            .flat_map(|w| ['a', 'b'].map(|c| w.iter().copied().chain([c]).collect::<Vec<char>>()))
            .collect();
        out.extend(level.iter().cloned());
    }
    out
}

/// DIST table by one seeded grid pass per input.
pub fn dist_by_grid(a: &[char], b: &[char], sf: &ScoringFunction) -> Vec<Vec<Cost>> {
    let s = a.len() + b.len() + 1;
    (0..s)
        .map(|i| {
            let mut inputs = vec![INF; s];
            inputs[i] = 0;
            grid_outputs(a, b, sf, &inputs)
        })
        .collect()
}

/// Partition invariants for every `x` in `2..=N`.
pub fn check_partition_all_x(slp: &Slp) -> Result<(), String> {
    let text: Vec<char> = slp.text().chars().collect();
    let n = text.len() as u64;
    let ensure = |ok: bool, msg: String| if ok { Ok(()) } else { Err(msg) };
    for x in 2..=n.max(2) {
        let p = partition(slp, x).map_err(|e| e.to_string())?;
        ensure(
            p == partition(slp, x).unwrap(),
            format!("x={x}: partition not deterministic"),
        )?;
        let mut at = 0u64;
        for part in p.parts() {
            ensure(part.start == at, format!("x={x}: gap before {part:?}"))?;
            ensure(
                part.len >= 1 && part.len <= 2 * x,
                format!("x={x}: bad length {part:?}"),
            )?;
            let slice = &text[part.start as usize..(part.start + part.len) as usize];
            ensure(
                p.piece_text(slp, part.var, part.kind).unwrap() == slice,
                format!("x={x}: content of {part:?}"),
            )?;
            if part.kind == PartKind::Exact {
                ensure(
                    part.len == slp.var_length(part.var).unwrap(),
                    format!("x={x}: {part:?} not exact"),
                )?;
                if n >= x {
                    ensure(part.len >= x && part.len < 2 * x, format!("x={x}: key piece {part:?}"))?;
                }
            }
            at += part.len;
        }
        ensure(at == n, format!("x={x}: parts cover {at} of {n}"))?;
        ensure(
            p.len() as u64 <= 3 * n.div_ceil(x) + 2,
            format!("x={x}: {} parts for N={n}", p.len()),
        )?;
        // one entry per distinct piece, and the same entries every time
        let map = association_map(&p, &text).map_err(|e| format!("x={x}: {e}"))?;
        ensure(
            map == association_map(&p, &text).unwrap(),
            format!("x={x}: association not deterministic"),
        )?;
        ensure(
            map.len() <= p.len() && map.len() <= 2 * slp.size(),
            format!("x={x}: {} associations", map.len()),
        )?;
    }
    Ok(())
}

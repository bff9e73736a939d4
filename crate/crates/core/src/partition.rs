//! Cutting a grammar-compressed string into pieces of length below `2x`,
//! each tied to a grammar variable.
//!
//! Call a variable *large* when it derives at least `x` characters. The
//! large variables form the top of the parse tree. Its lowest members, whose
//! children are both small, are the *key-vertices*; each contributes its full
//! derivation as one [`PartKind::Exact`] piece, of length in `[x, 2x)`.
//!
//! Everything else hangs off the large part of the tree as small subtrees.
//! A large variable with one large and one small child is a *path vertex*:
//! going up from a key-vertex, the small right children of path vertices
//! follow the key-vertex in the text; going down to the next key-vertex,
//! the small left children precede it. Consecutive hanging strings are
//! glued bottom-up until the run reaches length `x`, and the run is
//! emitted as a [`PartKind::Assoc`] piece tied to the last path vertex
//! consumed. Runs are determined by the subtree of that vertex alone, so
//! every occurrence of a variable carries the same piece.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::slp::{Production, Slp, VarId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PartKind {
    /// The piece is the full derivation of the variable.
    Exact,
    /// The piece is the run of hanging strings glued up to a path vertex.
    Assoc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AssociatedSubstring {
    pub var: VarId,
    pub kind: PartKind,
    pub start: u64,
    pub len: u64,
}

/// Which child of a path vertex hangs off the path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HangSide {
    /// Right child is small; the run grows to the right.
    Right,
    /// Left child is small; the run grows to the left.
    Left,
}

/// How the [`PartKind::Assoc`] piece of a path vertex is assembled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathVertex {
    pub side: HangSide,
    /// The small child.
    pub hang: VarId,
    /// Previous path vertex in the same run, if the run did not start here.
    pub prev: Option<VarId>,
    /// Length of the run ending here.
    pub len: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Class {
    Small,
    Key,
    /// Both children large.
    Fork,
    Path(HangSide),
}

fn classify(slp: &Slp, v: VarId, x: u64) -> Class {
    if slp.len_of(v) < x {
        return Class::Small;
    }
    match slp.prod_of(v) {
        Production::Terminal(_) => Class::Small,
        Production::Pair(p, q) => match (slp.len_of(p) >= x, slp.len_of(q) >= x) {
            (false, false) => Class::Key,
            (true, true) => Class::Fork,
            (true, false) => Class::Path(HangSide::Right),
            (false, true) => Class::Path(HangSide::Left),
        },
    }
}

fn check_x(x: u64) -> Result<()> {
    if x < 2 {
        return Err(Error::InvalidArgument(format!(
            "block size x must be at least 2, got {x}"
        )));
    }
    Ok(())
}

/// Variables deriving at least `x` characters whose children both derive
/// fewer. Falls back to `{root}` when the whole string is shorter than `x`.
pub fn find_key_vertices(slp: &Slp, x: u64) -> Result<BTreeSet<VarId>> {
    check_x(x)?;
    let keys: BTreeSet<VarId> = slp.vars().filter(|&v| classify(slp, v, x) == Class::Key).collect();
    if keys.is_empty() {
        return Ok(BTreeSet::from([slp.root()]));
    }
    Ok(keys)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XPartition {
    x: u64,
    len: u64,
    parts: Vec<AssociatedSubstring>,
    path_vertices: Vec<Option<PathVertex>>,
}

impl XPartition {
    pub fn x(&self) -> u64 {
        self.x
    }

    /// Length of the partitioned string.
    pub fn text_len(&self) -> u64 {
        self.len
    }

    pub fn parts(&self) -> &[AssociatedSubstring] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn path_vertex(&self, var: VarId) -> Option<&PathVertex> {
        self.path_vertices.get(var.index()).and_then(Option::as_ref)
    }

    /// Length of the piece `(var, kind)` stands for.
    pub fn piece_len(&self, slp: &Slp, var: VarId, kind: PartKind) -> Result<u64> {
        match kind {
            PartKind::Exact => slp.var_length(var),
            PartKind::Assoc => self
                .path_vertex(var)
                .map(|pv| pv.len)
                .ok_or_else(|| Error::Invariant(format!("{var} is not a path vertex"))),
        }
    }

    /// Content of the piece `(var, kind)`, rebuilt from the grammar.
    pub fn piece_text(&self, slp: &Slp, var: VarId, kind: PartKind) -> Result<Vec<char>> {
        let mut out = Vec::new();
        self.piece_into(slp, var, kind, &mut out)?;
        Ok(out)
    }

    fn piece_into(&self, slp: &Slp, var: VarId, kind: PartKind, out: &mut Vec<char>) -> Result<()> {
        match kind {
            PartKind::Exact => {
                slp.var_length(var)?;
                slp.expand_into(var, out);
            }
            PartKind::Assoc => {
                // collect the run top-down, then emit in text order
                let mut run = Vec::new();
                let mut cur = Some(var);
                while let Some(v) = cur {
                    let pv = self
                        .path_vertex(v)
                        .ok_or_else(|| Error::Invariant(format!("{v} is not a path vertex")))?;
                    run.push(pv);
                    cur = pv.prev;
                }
                if run[0].side == HangSide::Right {
                    run.reverse();
                }
                for pv in run {
                    slp.expand_into(pv.hang, out);
                }
            }
        }
        Ok(())
    }
}

/// Path-vertex runs for every large variable with exactly one large child.
fn path_vertices(slp: &Slp, x: u64) -> Vec<Option<PathVertex>> {
    let n = slp.size();
    // nearest path vertex of each side on the rightmost (leftmost) large path
    let mut right_member: Vec<Option<VarId>> = vec![None; n];
    let mut left_member: Vec<Option<VarId>> = vec![None; n];
    let mut out: Vec<Option<PathVertex>> = vec![None; n];
    for v in slp.vars() {
        let Production::Pair(p, q) = slp.prod_of(v) else {
            continue;
        };
        let i = v.index();
        match classify(slp, v, x) {
            Class::Small | Class::Key => {}
            Class::Fork => {
                right_member[i] = right_member[q.index()];
                left_member[i] = left_member[p.index()];
            }
            Class::Path(side) => {
                let (hang, below) = match side {
                    HangSide::Right => {
                        right_member[i] = Some(v);
                        left_member[i] = left_member[p.index()];
                        (q, right_member[p.index()])
                    }
                    HangSide::Left => {
                        left_member[i] = Some(v);
                        right_member[i] = right_member[q.index()];
                        (p, left_member[q.index()])
                    }
                };
                let hang_len = slp.len_of(hang);
                let (prev, len) = match below.and_then(|b| out[b.index()].map(|pv| (b, pv.len))) {
                    Some((b, run)) if run < x => (Some(b), run + hang_len),
                    _ => (None, hang_len),
                };
                out[i] = Some(PathVertex { side, hang, prev, len });
            }
        }
    }
    out
}

enum Step {
    Visit(VarId),
    /// Left subtree of a right-hanging path vertex is done.
    HangRight(VarId),
}

/// Splits the string derived by `slp` into key-vertex pieces and glued runs
/// of hanging strings. Walks only the large part of the parse tree, with an
/// explicit stack.
pub fn partition(slp: &Slp, x: u64) -> Result<XPartition> {
    check_x(x)?;
    let n_len = slp.derived_len();
    let root = slp.root();
    if n_len < x || classify(slp, root, x) == Class::Key {
        return Ok(XPartition {
            x,
            len: n_len,
            parts: vec![AssociatedSubstring {
                var: root,
                kind: PartKind::Exact,
                start: 0,
                len: n_len,
            }],
            path_vertices: vec![None; slp.size()],
        });
    }

    let pvs = path_vertices(slp, x);
    let path = |v: VarId| pvs[v.index()].expect("path vertex has run data");
    let mut parts = Vec::new();
    let mut offset = 0u64;
    // right-growing run still waiting for its last member: (start, last member)
    let mut open: Option<(u64, VarId)> = None;
    // end of the text already covered by a left-growing run
    let mut covered = 0u64;

    let flush = |open: &mut Option<(u64, VarId)>, parts: &mut Vec<AssociatedSubstring>| {
        if let Some((start, var)) = open.take() {
            parts.push(AssociatedSubstring {
                var,
                kind: PartKind::Assoc,
                start,
                len: path(var).len,
            });
        }
    };

    let mut stack = vec![Step::Visit(root)];
    while let Some(step) = stack.pop() {
        match step {
            Step::Visit(v) => {
                let Production::Pair(p, q) = slp.prod_of(v) else {
                    return Err(Error::Invariant(format!("terminal {v} reached as a large vertex")));
                };
                match classify(slp, v, x) {
                    Class::Small => return Err(Error::Invariant(format!("small {v} reached as a large vertex"))),
                    Class::Key => {
                        flush(&mut open, &mut parts);
                        let len = slp.len_of(v);
                        parts.push(AssociatedSubstring {
                            var: v,
                            kind: PartKind::Exact,
                            start: offset,
                            len,
                        });
                        offset += len;
                    }
                    Class::Fork => {
                        stack.push(Step::Visit(q));
                        stack.push(Step::Visit(p));
                    }
                    Class::Path(HangSide::Right) => {
                        stack.push(Step::HangRight(v));
                        stack.push(Step::Visit(p));
                    }
                    Class::Path(HangSide::Left) => {
                        flush(&mut open, &mut parts);
                        if offset >= covered {
                            let run = path(v).len;
                            parts.push(AssociatedSubstring {
                                var: v,
                                kind: PartKind::Assoc,
                                start: offset,
                                len: run,
                            });
                            covered = offset + run;
                        }
                        offset += slp.len_of(p);
                        stack.push(Step::Visit(q));
                    }
                }
            }
            Step::HangRight(v) => {
                let pv = path(v);
                match (pv.prev, open) {
                    (None, None) => open = Some((offset, v)),
                    (Some(prev), Some((start, last))) if prev == last => open = Some((start, v)),
                    _ => {
                        return Err(Error::Invariant(format!(
                            "run bookkeeping diverged at {v}: expected {:?}, open {:?}",
                            pv.prev, open
                        )))
                    }
                }
                offset += slp.len_of(pv.hang);
                if pv.len >= x {
                    flush(&mut open, &mut parts);
                }
            }
        }
    }
    flush(&mut open, &mut parts);

    if offset != n_len {
        return Err(Error::Invariant(format!(
            "partition covers {offset} of {n_len} characters"
        )));
    }
    Ok(XPartition {
        x,
        len: n_len,
        parts,
        path_vertices: pvs,
    })
}

/// Where one `(var, kind)` association first occurs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AssociationEntry {
    pub start: u64,
    pub len: u64,
}

/// Deduplicated `(var, kind)` associations of a partition of `text`. Fails
/// if two occurrences of the same association differ in content.
pub fn association_map(partition: &XPartition, text: &[char]) -> Result<BTreeMap<(VarId, PartKind), AssociationEntry>> {
    let mut map: BTreeMap<(VarId, PartKind), AssociationEntry> = BTreeMap::new();
    for part in partition.parts() {
        let slice = |start: u64, len: u64| -> Result<&[char]> {
            text.get(start as usize..(start + len) as usize)
                .ok_or_else(|| Error::Invariant(format!("piece {start}+{len} outside the text")))
        };
        let here = slice(part.start, part.len)?;
        match map.get(&(part.var, part.kind)) {
            Some(first) => {
                if slice(first.start, first.len)? != here {
                    return Err(Error::Invariant(format!(
                        "association conflict for ({}, {:?}) at offsets {} and {}",
                        part.var, part.kind, first.start, part.start
                    )));
                }
            }
            None => {
                map.insert(
                    (part.var, part.kind),
                    AssociationEntry {
                        start: part.start,
                        len: part.len,
                    },
                );
            }
        }
    }
    Ok(map)
}

//! Path surgeries. Each one rewrites a single family member (two for the
//! switch) and never lowers `family_ell`.

use serde::Serialize;

use super::{pt, LatticePath, PathFamily, Point};
use crate::error::{Error, Result};

/// Moves the cells `(column, a+1..=top)` of a vertical run one column left,
/// where `(column - 1, a)` is the path's only cell in the previous column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LeftShift {
    pub column: usize,
    pub top: usize,
}

/// The horizontal run `(from, row) .. (to, row)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Segment {
    pub row: usize,
    pub from: usize,
    pub to: usize,
}

impl Segment {
    fn cells(&self) -> impl Iterator<Item = Point> + '_ {
        (self.from..=self.to).map(move |c| pt(c, self.row))
    }
}

fn pre<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}

fn check_pair(f: &PathFamily, p: usize, q: usize) -> Result<()> {
    if p >= f.len() || q >= f.len() {
        return pre(format!(
            "path index out of range for a family of {}",
            f.len()
        ));
    }
    if p == q {
        return pre("the two paths must be distinct family members");
    }
    Ok(())
}

fn before(p: &LatticePath, col: usize) -> impl Iterator<Item = Point> + '_ {
    p.cells().iter().copied().take_while(move |c| c.col < col)
}

fn after(p: &LatticePath, col: usize) -> impl Iterator<Item = Point> + '_ {
    p.cells().iter().copied().skip_while(move |c| c.col <= col)
}

fn vertical(col: usize, lo: usize, hi: usize) -> impl Iterator<Item = Point> {
    (lo..=hi).map(move |r| pt(col, r))
}

/// Exchanges the continuations of `P = f[p]` and `Q = f[q]` at `column`,
/// where `P` enters weakly lower and leaves weakly higher than `Q`. The
/// new `f[q]` takes the upper continuation.
pub fn top_down_switch(f: &PathFamily, p: usize, q: usize, column: usize) -> Result<PathFamily> {
    check_pair(f, p, q)?;
    let (pp, qq) = (f.path(p), f.path(q));
    let (Some((lp, hp)), Some((lq, hq))) = (pp.span(column), qq.span(column)) else {
        return pre(format!("both paths must occupy column {column}"));
    };
    if lp > lq || hp < hq {
        return pre(format!(
            "no crossing at column {column}: rows {lp}..{hp} against {lq}..{hq}"
        ));
    }
    let new_p: Vec<Point> = before(pp, column)
        .chain(vertical(column, lp, hq))
        .chain(after(qq, column))
        .collect();
    let new_q: Vec<Point> = before(qq, column)
        .chain(vertical(column, lq, hp))
        .chain(after(pp, column))
        .collect();
    let mut out = f.clone();
    out.set(p, LatticePath::new(new_p)?);
    out.set(q, LatticePath::new(new_q)?);
    Ok(out)
}

/// A top-down switch as `(column, upper, lower)`.
pub type Switch = (usize, usize, usize);

/// Applies top-down switches column by column until every path lies weakly
/// above the next. All paths must start in the same column. Returns the
/// reordered family and the switches applied.
pub fn uncross(f: &PathFamily) -> Result<(PathFamily, Vec<Switch>)> {
    if f.is_empty() {
        return Ok((f.clone(), Vec::new()));
    }
    let start = f.path(0).start().col;
    if f.paths().iter().any(|p| p.start().col != start) {
        return pre("all paths must start in the same column");
    }
    let mut paths = f.paths().to_vec();
    paths.sort_by_key(|p| std::cmp::Reverse(p.span(start)));
    let mut fam = PathFamily::new(paths);
    let end = fam.paths().iter().map(|p| p.end().col).max().unwrap();
    let mut log = Vec::new();
    for col in start..=end {
        loop {
            let mut changed = false;
            for a in 0..fam.len() {
                for b in a + 1..fam.len() {
                    let (Some((la, ha)), Some((lb, hb))) =
                        (fam.path(a).span(col), fam.path(b).span(col))
                    else {
                        continue;
                    };
                    if ha < hb {
                        if lb > la {
                            return pre(format!(
                                "paths {a} and {b} are out of order at column {col}"
                            ));
                        }
                        fam = top_down_switch(&fam, b, a, col)?;
                        log.push((col, a, b));
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }
    debug_assert!(fam.is_top_down());
    Ok((fam, log))
}

/// One left-shift of `f[idx]`. The cells moved into must be free of every
/// other path, and the path's cell in column `column - 1` and its new top
/// cell `(column, top)` must not be shared.
pub fn left_shift(f: &PathFamily, idx: usize, shift: LeftShift) -> Result<PathFamily> {
    shift_path(f, idx, shift, true)
}

/// A left-shift that only requires the cells moved into to be free. Unlike
/// [`left_shift`] this can lower `family_ell` when another path uses the
/// letters of the new top cell.
pub fn left_shift_unshared(f: &PathFamily, idx: usize, shift: LeftShift) -> Result<PathFamily> {
    shift_path(f, idx, shift, false)
}

fn shift_path(f: &PathFamily, idx: usize, shift: LeftShift, exclusive: bool) -> Result<PathFamily> {
    if idx >= f.len() {
        return pre("path index out of range");
    }
    let p = f.path(idx);
    let LeftShift { column: j, top: t } = shift;
    if j == 0 {
        return pre("column 0 has no column to its left");
    }
    let Some((a, a2)) = p.span(j - 1).filter(|(a, b)| a == b) else {
        return pre(format!(
            "the path must have exactly one cell in column {}",
            j - 1
        ));
    };
    debug_assert_eq!(a, a2);
    let Some((_, h)) = p.span(j) else {
        return pre(format!("the path does not reach column {j}"));
    };
    if t <= a || t > h {
        return pre(format!("top {t} must lie in {}..={h}", a + 1));
    }
    if let Some(r) = (a + 1..=t).find(|&r| f.occupied_by_other(pt(j - 1, r), idx)) {
        return Err(Error::Blocked(format!(
            "cell ({},{r}) is taken by another path",
            j - 1
        )));
    }
    // The letters of the corner cell and of the new top cell get reassigned,
    // so no other path may use them.
    for c in [pt(j - 1, a), pt(j, t)] {
        if exclusive && f.occupied_by_other(c, idx) {
            return Err(Error::Blocked(format!(
                "cell {c} is shared with another path"
            )));
        }
    }
    let cells: Vec<Point> = before(p, j - 1)
        .chain(vertical(j - 1, a, t))
        .chain(vertical(j, t, h))
        .chain(after(p, j))
        .collect();
    let mut out = f.clone();
    out.set(idx, LatticePath::new(cells)?);
    Ok(out)
}

/// Repeats the leftmost available left-shift of `f[idx]`, each as tall as
/// possible, until none remains. With `keep_below = Some(u)` the path also
/// stays weakly below `f[u]`. `exclusive` selects [`left_shift`] over
/// [`left_shift_unshared`].
pub fn maximal_left_shifts(
    f: &PathFamily,
    idx: usize,
    keep_below: Option<usize>,
    exclusive: bool,
) -> (PathFamily, Vec<LeftShift>) {
    let mut fam = f.clone();
    let mut log = Vec::new();
    'outer: loop {
        let p = fam.path(idx);
        for j in p.start().col + 1..=p.end().col {
            let Some((a, b)) = p.span(j - 1) else {
                continue;
            };
            let Some((_, h)) = p.span(j) else { continue };
            if a != b || h == a {
                continue;
            }
            let bound = keep_below.and_then(|u| {
                let u = fam.path(u);
                let hi = u.span(j - 1).map(|s| s.1);
                let lo = u.span(j).map(|s| s.0);
                match (hi, lo) {
                    (Some(x), Some(y)) => Some(x.min(y)),
                    (Some(x), None) | (None, Some(x)) => Some(x),
                    (None, None) => None,
                }
            });
            if exclusive && fam.occupied_by_other(pt(j - 1, a), idx) {
                continue;
            }
            let mut reach = a;
            while reach < h
                && bound.is_none_or(|b| reach < b)
                && !fam.occupied_by_other(pt(j - 1, reach + 1), idx)
            {
                reach += 1;
            }
            let t = (a + 1..=reach)
                .rev()
                .find(|&t| !exclusive || !fam.occupied_by_other(pt(j, t), idx))
                .unwrap_or(a);
            if t > a {
                let shift = LeftShift { column: j, top: t };
                fam = shift_path(&fam, idx, shift, exclusive).expect("shift was checked");
                log.push(shift);
                continue 'outer;
            }
        }
        break;
    }
    (fam, log)
}

/// Reroutes `P = f[p]` over a run it shares with `Q = f[q]`: from
/// `(from, row)` straight up, then along `row + 1` to `(to, row + 1)`.
/// `P` must leave the run upward at `(to, row)` and lie weakly above `Q`.
pub fn rectangular_flip(f: &PathFamily, p: usize, q: usize, seg: Segment) -> Result<PathFamily> {
    check_pair(f, p, q)?;
    let (pp, qq) = (f.path(p), f.path(q));
    if seg.from > seg.to {
        return pre("segment runs right to left");
    }
    if !seg.cells().all(|c| pp.contains(c) && qq.contains(c)) {
        return pre("both paths must contain the segment");
    }
    let (Some(end), Some(up)) = (
        pp.index_of(pt(seg.to, seg.row)),
        pp.index_of(pt(seg.to, seg.row + 1)),
    ) else {
        return pre("P must continue upward from the end of the segment");
    };
    if up != end + 1 {
        return pre("P must continue upward from the end of the segment");
    }
    if !pp.weakly_above(qq) {
        return pre("P must lie weakly above Q");
    }
    let first = pp.index_of(pt(seg.from, seg.row)).unwrap();
    let cells: Vec<Point> = pp.cells()[..=first]
        .iter()
        .copied()
        .chain((seg.from..=seg.to).map(|c| pt(c, seg.row + 1)))
        .chain(pp.cells()[up + 1..].iter().copied())
        .collect();
    let mut out = f.clone();
    out.set(p, LatticePath::new(cells)?);
    Ok(out)
}

/// Reroutes `P = f[p]`, which enters the shared run at `(from, row)` from
/// below, along `row - 1` to `(to, row - 1)` and then up. `P` must lie
/// weakly below `Q = f[q]`.
pub fn reverse_rectangular_flip(
    f: &PathFamily,
    p: usize,
    q: usize,
    seg: Segment,
) -> Result<PathFamily> {
    check_pair(f, p, q)?;
    let (pp, qq) = (f.path(p), f.path(q));
    if seg.from > seg.to || seg.row < 2 {
        return pre("segment must run left to right above the bottom row");
    }
    if !seg.cells().all(|c| pp.contains(c) && qq.contains(c)) {
        return pre("both paths must contain the segment");
    }
    let (Some(below), Some(first)) = (
        pp.index_of(pt(seg.from, seg.row - 1)),
        pp.index_of(pt(seg.from, seg.row)),
    ) else {
        return pre("P must enter the segment from below");
    };
    if first != below + 1 {
        return pre("P must enter the segment from below");
    }
    if !qq.weakly_above(pp) {
        return pre("P must lie weakly below Q");
    }
    let last = pp.index_of(pt(seg.to, seg.row)).unwrap();
    let cells: Vec<Point> = pp.cells()[..=below]
        .iter()
        .copied()
        .chain((seg.from + 1..=seg.to).map(|c| pt(c, seg.row - 1)))
        .chain(pp.cells()[last..].iter().copied())
        .collect();
    let mut out = f.clone();
    out.set(p, LatticePath::new(cells)?);
    Ok(out)
}

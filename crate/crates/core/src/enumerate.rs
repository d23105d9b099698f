//! Exhaustive enumeration of standard skew tableaux with weakly decreasing
//! row sizes, and the checks run over them.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::jdt::rectify;
use crate::stab::{increment, search_cap};
use crate::tableau::{Letter, Shape, SkewTableau};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EnumerationConfig {
    pub max_n: usize,
    pub max_rows: usize,
    /// Bound on every inner part.
    pub max_inner: usize,
}

impl EnumerationConfig {
    /// Stops runaway requests; the full default run is `(8, 4, 4)`.
    pub const MAX_N: usize = 12;

    pub fn check(&self) -> Result<()> {
        if self.max_n > Self::MAX_N {
            return Err(Error::Resource(format!(
                "max-n {} exceeds the limit {}",
                self.max_n,
                Self::MAX_N
            )));
        }
        if self.max_rows == 0 || self.max_n == 0 {
            return Err(Error::Domain("bounds must be positive".into()));
        }
        Ok(())
    }
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig {
            max_n: 8,
            max_rows: 4,
            max_inner: 4,
        }
    }
}

/// A skew shape `outer / inner` given by its inner offsets and row sizes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SkewShape {
    pub inner: Vec<usize>,
    pub row_sizes: Vec<usize>,
}

impl SkewShape {
    pub fn outer(&self) -> Vec<usize> {
        self.inner
            .iter()
            .zip(&self.row_sizes)
            .map(|(a, b)| a + b)
            .collect()
    }
}

fn partitions(
    n: usize,
    max_part: usize,
    max_len: usize,
    prefix: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if n == 0 {
        out.push(prefix.clone());
        return;
    }
    if max_len == 0 {
        return;
    }
    for p in (1..=max_part.min(n)).rev() {
        prefix.push(p);
        partitions(n - p, p, max_len - 1, prefix, out);
        prefix.pop();
    }
}

/// Every skew shape with weakly decreasing nonempty rows, at most
/// `max_rows` rows, `1..=max_n` cells and inner parts at most `max_inner`.
/// The last inner part is zero, which removes shapes that differ only by
/// empty leading columns.
pub fn skew_shapes(cfg: &EnumerationConfig) -> Vec<SkewShape> {
    let mut out = Vec::new();
    for n in 1..=cfg.max_n {
        let mut lambdas = Vec::new();
        partitions(n, n, cfg.max_rows, &mut Vec::new(), &mut lambdas);
        for lambda in lambdas {
            let r = lambda.len();
            let mut inner = vec![0; r];
            inner_offsets(&lambda, cfg.max_inner, 0, &mut inner, &mut out);
        }
    }
    out
}

fn inner_offsets(
    lambda: &[usize],
    max_inner: usize,
    i: usize,
    inner: &mut Vec<usize>,
    out: &mut Vec<SkewShape>,
) {
    let r = lambda.len();
    if i == r {
        out.push(SkewShape {
            inner: inner.clone(),
            row_sizes: lambda.to_vec(),
        });
        return;
    }
    let hi = if i == 0 { max_inner } else { inner[i - 1] };
    let candidates = if i + 1 == r { 0..=0 } else { 0..=hi };
    for a in candidates {
        if i > 0 && inner[i - 1] + lambda[i - 1] < a + lambda[i] {
            continue;
        }
        inner[i] = a;
        inner_offsets(lambda, max_inner, i + 1, inner, out);
    }
}

/// All standard fillings of `shape`, in lexicographic order of the
/// sequence of rows receiving `1, 2, …`.
pub fn standard_fillings(shape: &SkewShape) -> Vec<SkewTableau> {
    let r = shape.row_sizes.len();
    let n: usize = shape.row_sizes.iter().sum();
    let mut rows: Vec<Vec<Letter>> = vec![Vec::new(); r];
    let mut out = Vec::new();
    fill(shape, n, 1, &mut rows, &mut out);
    out
}

fn fill(
    shape: &SkewShape,
    n: usize,
    next: usize,
    rows: &mut Vec<Vec<Letter>>,
    out: &mut Vec<SkewTableau>,
) {
    if next > n {
        out.push(SkewTableau::raw(shape.inner.clone(), rows.clone()));
        return;
    }
    for i in 0..rows.len() {
        let filled = rows[i].len();
        if filled == shape.row_sizes[i] {
            continue;
        }
        let col = shape.inner[i] + filled;
        // The cell above is either inner or already filled.
        if i > 0 && col >= shape.inner[i - 1] && col >= shape.inner[i - 1] + rows[i - 1].len() {
            continue;
        }
        rows[i].push(next as Letter);
        fill(shape, n, next + 1, rows, out);
        rows[i].pop();
    }
}

/// Every tableau of the enumeration, in shape order then filling order.
pub fn tableaux(cfg: &EnumerationConfig) -> Result<Vec<SkewTableau>> {
    cfg.check()?;
    Ok(skew_shapes(cfg)
        .par_iter()
        .flat_map_iter(standard_fillings)
        .collect())
}

/// Per-tableau outcome of [`verify_main_theorem`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableauRecord {
    pub tableau: SkewTableau,
    pub rows: usize,
    /// `None` when no `k` up to the search cap stabilizes.
    pub stab: Option<usize>,
    pub monotone: bool,
    pub shape_increment: bool,
}

impl TableauRecord {
    pub fn within_bound(&self) -> bool {
        self.stab.is_some_and(|s| s <= self.rows.max(1))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TheoremSummary {
    pub tableaux: usize,
    pub shapes: usize,
    /// Largest observed stabilization index for each row count.
    pub max_stab_by_rows: BTreeMap<usize, usize>,
    /// `histogram[r][s]`: how many tableaux with `r` rows have stab `s`.
    pub histogram: BTreeMap<usize, BTreeMap<usize, usize>>,
    pub stab_violations: Vec<SkewTableau>,
    pub monotonicity_violations: Vec<SkewTableau>,
    pub shape_increment_violations: Vec<SkewTableau>,
}

impl TheoremSummary {
    pub fn is_clean(&self) -> bool {
        self.stab_violations.is_empty()
            && self.monotonicity_violations.is_empty()
            && self.shape_increment_violations.is_empty()
    }

    fn add(&mut self, rec: &TableauRecord) {
        self.tableaux += 1;
        if let Some(s) = rec.stab {
            let m = self.max_stab_by_rows.entry(rec.rows).or_insert(0);
            *m = (*m).max(s);
            *self
                .histogram
                .entry(rec.rows)
                .or_default()
                .entry(s)
                .or_insert(0) += 1;
        }
        if !rec.within_bound() {
            self.stab_violations.push(rec.tableau.clone());
        }
        if !rec.monotone {
            self.monotonicity_violations.push(rec.tableau.clone());
        }
        if !rec.shape_increment {
            self.shape_increment_violations.push(rec.tableau.clone());
        }
    }

    fn merge(mut self, other: TheoremSummary) -> TheoremSummary {
        self.tableaux += other.tableaux;
        self.shapes += other.shapes;
        for (r, s) in other.max_stab_by_rows {
            let m = self.max_stab_by_rows.entry(r).or_insert(0);
            *m = (*m).max(s);
        }
        for (r, counts) in other.histogram {
            let mine = self.histogram.entry(r).or_default();
            for (s, c) in counts {
                *mine.entry(s).or_insert(0) += c;
            }
        }
        self.stab_violations.extend(other.stab_violations);
        self.monotonicity_violations
            .extend(other.monotonicity_violations);
        self.shape_increment_violations
            .extend(other.shape_increment_violations);
        self
    }
}

/// Computes verdicts for `k = 1..=r + 2` (continuing to the search cap if
/// none holds) and the shape increment between `T^(r-1)` and `T^(r)`.
pub fn analyze(t: &SkewTableau) -> TableauRecord {
    let r = t.num_rows();
    let n = t.n();
    let k_max = (r + 2).max(search_cap(r));
    let mut verdicts = Vec::new();
    let mut shapes = vec![Shape::default()];
    for k in 1..=k_max {
        let rect = rectify(&t.attach_copies_unchecked(k));
        let lo = ((k - 1) * n + 1) as Letter;
        let v = (lo..=(k * n) as Letter).all(|e| rect.row_of(e) == rect.origin_row_of(e));
        verdicts.push(v);
        shapes.push(rect.shape());
        if k >= r + 2 && verdicts.contains(&true) {
            break;
        }
    }
    let stab = verdicts.iter().position(|&v| v).map(|i| i + 1);
    let monotone = verdicts.windows(2).all(|w| !w[0] || w[1]);
    let shape_increment = increment(
        t.row_sizes(),
        shapes[r].clone(),
        shapes[r.saturating_sub(1)].clone(),
    )
    .holds;
    TableauRecord {
        tableau: t.clone(),
        rows: r,
        stab,
        monotone,
        shape_increment,
    }
}

/// Runs [`analyze`] over the whole enumeration in parallel.
pub fn verify_main_theorem(cfg: &EnumerationConfig) -> Result<TheoremSummary> {
    cfg.check()?;
    Ok(skew_shapes(cfg)
        .par_iter()
        .map(|s| {
            let mut acc = TheoremSummary {
                shapes: 1,
                ..Default::default()
            };
            for t in standard_fillings(s) {
                acc.add(&analyze(&t));
            }
            acc
        })
        .reduce(TheoremSummary::default, TheoremSummary::merge))
}

/// Like [`verify_main_theorem`], also collecting every record in
/// enumeration order.
pub fn verify_with_records(
    cfg: &EnumerationConfig,
) -> Result<(TheoremSummary, Vec<TableauRecord>)> {
    cfg.check()?;
    let shapes = skew_shapes(cfg);
    let per_shape: Vec<Vec<TableauRecord>> = shapes
        .par_iter()
        .map(|s| standard_fillings(s).iter().map(analyze).collect())
        .collect();
    let mut summary = TheoremSummary {
        shapes: shapes.len(),
        ..Default::default()
    };
    for rec in per_shape.iter().flatten() {
        summary.add(rec);
    }
    Ok((summary, per_shape.into_iter().flatten().collect()))
}

/// A stable 64-bit FNV-1a digest of the tableau's text encoding.
pub fn entries_hash(t: &SkewTableau) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in t.to_text().bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    format!("{h:016x}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_have_zero_last_offset() {
        let cfg = EnumerationConfig {
            max_n: 4,
            max_rows: 3,
            max_inner: 2,
        };
        for s in skew_shapes(&cfg) {
            assert_eq!(*s.inner.last().unwrap(), 0);
            assert!(s.inner.windows(2).all(|w| w[0] >= w[1]));
            assert!(s.outer().windows(2).all(|w| w[0] >= w[1]));
            assert!(s.row_sizes.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn straight_fillings_match_hook_lengths() {
        // f^(3,2) = 5, f^(2,2) = 2, f^(3,2,1) = 16
        for (rows, count) in [(vec![3, 2], 5), (vec![2, 2], 2), (vec![3, 2, 1], 16)] {
            let s = SkewShape {
                inner: vec![0; rows.len()],
                row_sizes: rows,
            };
            let all = standard_fillings(&s);
            assert_eq!(all.len(), count);
            assert!(all.iter().all(SkewTableau::is_standard));
        }
    }

    #[test]
    fn skew_fillings_are_standard() {
        let s = SkewShape {
            inner: vec![2, 1, 0],
            row_sizes: vec![2, 2, 1],
        };
        let all = standard_fillings(&s);
        assert!(all.iter().all(SkewTableau::is_standard));
        // Rows (3..4), (2..3), (1): count by brute force over all orderings.
        let brute = brute_count(&s);
        assert_eq!(all.len(), brute);
    }

    fn brute_count(s: &SkewShape) -> usize {
        let n: usize = s.row_sizes.iter().sum();
        let mut perm: Vec<Letter> = (1..=n as Letter).collect();
        let mut count = 0;
        loop {
            let mut it = perm.iter().copied();
            let rows = s
                .row_sizes
                .iter()
                .map(|&len| it.by_ref().take(len).collect())
                .collect();
            if SkewTableau::raw(s.inner.clone(), rows).is_standard() {
                count += 1;
            }
            // next lexicographic permutation
            let Some(i) = (0..n - 1).rev().find(|&i| perm[i] < perm[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
        count
    }

    #[test]
    fn square_shape_is_clean() {
        let s = SkewShape {
            inner: vec![0, 0],
            row_sizes: vec![2, 2],
        };
        for t in standard_fillings(&s) {
            let rec = analyze(&t);
            assert!(rec.within_bound() && rec.monotone && rec.shape_increment);
        }
    }

    #[test]
    fn single_rows_stabilize_immediately() {
        let cfg = EnumerationConfig {
            max_n: 6,
            max_rows: 1,
            max_inner: 3,
        };
        let summary = verify_main_theorem(&cfg).unwrap();
        assert_eq!(summary.tableaux, 6);
        assert_eq!(summary.max_stab_by_rows.get(&1), Some(&1));
        assert!(summary.is_clean());
    }

    #[test]
    fn resource_limit() {
        let cfg = EnumerationConfig {
            max_n: 40,
            max_rows: 2,
            max_inner: 1,
        };
        assert!(matches!(verify_main_theorem(&cfg), Err(Error::Resource(_))));
    }
}

//! The matrix `M(q, T)`, monotone lattice paths through it, and the number
//! of letters a family of paths can carry as disjoint increasing sequences.
//!
//! Coordinates are Cartesian and 1-based: `(col, row)` with row 1 at the
//! bottom. Column 0 is an optional auxiliary column of empty cells.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::greene::{ell_multi, SubsequenceFamily};
use crate::tableau::{Letter, SkewTableau, Word};

mod bounding;
mod normalize;
mod surgery;

pub use bounding::{bounding_paths, BoundingPath};
pub use normalize::{check_normalized, normalize_family, Normalized, Step};
pub use surgery::{
    left_shift, left_shift_unshared, maximal_left_shifts, rectangular_flip,
    reverse_rectangular_flip, top_down_switch, uncross, LeftShift, Segment,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Point {
    pub col: usize,
    pub row: usize,
}

pub const fn pt(col: usize, row: usize) -> Point {
    Point { col, row }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.col, self.row)
    }
}

/// `r` rows by `q` columns; cell `(i, j)` holds row `r - j + 1` of `T`
/// with every letter raised by `(i - 1) n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathMatrix {
    q: usize,
    r: usize,
    n: usize,
    /// `cells[i - 1][j - 1]`.
    cells: Vec<Vec<Vec<Letter>>>,
    auxiliary: bool,
}

impl PathMatrix {
    pub fn build(t: &SkewTableau, q: usize) -> Result<Self> {
        if q == 0 {
            return Err(Error::Domain("the matrix needs at least one column".into()));
        }
        t.validate().map_err(Error::NotStandard)?;
        if !t.has_weakly_decreasing_rows() {
            return Err(Error::RowsNotWeaklyDecreasing(
                t.row_sizes().parts().to_vec(),
            ));
        }
        let (r, n) = (t.num_rows(), t.n());
        let cells = (0..q)
            .map(|i| {
                (1..=r)
                    .map(|j| {
                        t.row(r - j)
                            .iter()
                            .map(|&e| e + (i * n) as Letter)
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(PathMatrix {
            q,
            r,
            n,
            cells,
            auxiliary: false,
        })
    }

    /// The same matrix with an empty column 0 prepended.
    pub fn with_auxiliary_column(mut self) -> Self {
        self.auxiliary = true;
        self
    }

    pub fn without_auxiliary_column(mut self) -> Self {
        self.auxiliary = false;
        self
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_auxiliary_column(&self) -> bool {
        self.auxiliary
    }

    pub fn contains(&self, p: Point) -> bool {
        let min_col = if self.auxiliary { 0 } else { 1 };
        (min_col..=self.q).contains(&p.col) && (1..=self.r).contains(&p.row)
    }

    pub fn cell(&self, p: Point) -> Result<&[Letter]> {
        if !self.contains(p) {
            return Err(Error::OutOfBounds {
                col: p.col,
                row: p.row,
            });
        }
        if p.col == 0 {
            return Ok(&[]);
        }
        Ok(&self.cells[p.col - 1][p.row - 1])
    }

    fn word_of(&self, cells: impl Iterator<Item = Point>) -> Result<Word> {
        let mut letters = Vec::new();
        for p in cells {
            letters.extend_from_slice(self.cell(p)?);
        }
        Ok(Word::from_vec_unchecked(letters))
    }

    /// Cell words concatenated in path order.
    pub fn path_word(&self, p: &LatticePath) -> Result<Word> {
        self.word_of(p.cells().iter().copied())
    }

    /// The part of `path_word` coming from column `col`.
    pub fn column_word(&self, p: &LatticePath, col: usize) -> Result<Word> {
        self.word_of(p.cells().iter().copied().filter(|c| c.col == col))
    }

    fn check_in_bounds(&self, f: &PathFamily) -> Result<()> {
        for p in f.paths() {
            for &c in p.cells() {
                if !self.contains(c) {
                    return Err(Error::OutOfBounds {
                        col: c.col,
                        row: c.row,
                    });
                }
            }
        }
        Ok(())
    }
}

/// A nonempty sequence of cells, each step going one column right or one
/// row up.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct LatticePath {
    cells: Vec<Point>,
}

impl LatticePath {
    pub fn new(cells: Vec<Point>) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::Path("a path needs at least one cell".into()));
        }
        for w in cells.windows(2) {
            let (a, b) = (w[0], w[1]);
            let right = b.col == a.col + 1 && b.row == a.row;
            let up = b.col == a.col && b.row == a.row + 1;
            if !right && !up {
                return Err(Error::Path(format!(
                    "step {a} -> {b} is neither right nor up"
                )));
            }
        }
        Ok(LatticePath { cells })
    }

    /// Expands a list of corner points joined by straight runs.
    pub fn from_corners(corners: &[(usize, usize)]) -> Result<Self> {
        let Some(&(c0, r0)) = corners.first() else {
            return Err(Error::Path("a path needs at least one cell".into()));
        };
        let mut cells = vec![pt(c0, r0)];
        for w in corners.windows(2) {
            let ((c1, r1), (c2, r2)) = (w[0], w[1]);
            if (c1 == c2 && r2 >= r1) || (r1 == r2 && c2 >= c1) {
                for c in c1 + 1..=c2 {
                    cells.push(pt(c, r1));
                }
                for r in r1 + 1..=r2 {
                    cells.push(pt(c1, r));
                }
            } else {
                return Err(Error::Path(format!(
                    "({c1},{r1}) -> ({c2},{r2}) is not a straight right or up run"
                )));
            }
        }
        LatticePath::new(cells)
    }

    pub fn cells(&self) -> &[Point] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn start(&self) -> Point {
        self.cells[0]
    }

    pub fn end(&self) -> Point {
        *self.cells.last().unwrap()
    }

    pub fn contains(&self, p: Point) -> bool {
        self.index_of(p).is_some()
    }

    pub fn index_of(&self, p: Point) -> Option<usize> {
        self.cells.binary_search(&p).ok()
    }

    /// Lowest and highest row the path occupies in `col`.
    pub fn span(&self, col: usize) -> Option<(usize, usize)> {
        let start = self.cells.partition_point(|p| p.col < col);
        let end = self.cells.partition_point(|p| p.col <= col);
        (start < end).then(|| (self.cells[start].row, self.cells[end - 1].row))
    }

    /// In every column both paths occupy, `self` starts and ends weakly higher.
    pub fn weakly_above(&self, other: &LatticePath) -> bool {
        let lo = self.start().col.max(other.start().col);
        let hi = self.end().col.min(other.end().col);
        (lo..=hi).all(|c| match (self.span(c), other.span(c)) {
            (Some((a, b)), Some((x, y))) => a >= x && b >= y,
            _ => true,
        })
    }

    /// Start, turning points and end.
    pub fn corners(&self) -> Vec<Point> {
        let c = &self.cells;
        let mut out = vec![c[0]];
        for i in 1..c.len().saturating_sub(1) {
            let turn_in = c[i].col != c[i - 1].col;
            let turn_out = c[i + 1].col != c[i].col;
            if turn_in != turn_out {
                out.push(c[i]);
            }
        }
        if c.len() > 1 {
            out.push(c[c.len() - 1]);
        }
        out
    }

    pub(crate) fn from_cells_unchecked(cells: Vec<Point>) -> Self {
        debug_assert!(LatticePath::new(cells.clone()).is_ok());
        LatticePath { cells }
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.corners().iter().enumerate() {
            if i > 0 {
                f.write_str("-")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Parses corner lists such as `(1,1)-(4,1)-(4,3)`.
impl FromStr for LatticePath {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let corners = s
            .split('-')
            .map(|tok| {
                let inner = tok
                    .trim()
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or_else(|| Error::Path(format!("malformed point '{tok}'")))?;
                let (a, b) = inner
                    .split_once(',')
                    .ok_or_else(|| Error::Path(format!("malformed point '{tok}'")))?;
                let parse = |x: &str| {
                    x.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Path(format!("malformed point '{tok}'")))
                };
                Ok((parse(a)?, parse(b)?))
            })
            .collect::<Result<Vec<_>>>()?;
        LatticePath::from_corners(&corners)
    }
}

/// An ordered list of paths `P_1, …, P_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct PathFamily {
    paths: Vec<LatticePath>,
}

impl PathFamily {
    pub fn new(paths: Vec<LatticePath>) -> Self {
        PathFamily { paths }
    }

    pub fn paths(&self) -> &[LatticePath] {
        &self.paths
    }

    pub fn path(&self, i: usize) -> &LatticePath {
        &self.paths[i]
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn into_paths(self) -> Vec<LatticePath> {
        self.paths
    }

    pub(crate) fn set(&mut self, i: usize, p: LatticePath) {
        self.paths[i] = p;
    }

    /// Whether `p` lies on any path other than the one at `except`.
    pub fn occupied_by_other(&self, p: Point, except: usize) -> bool {
        self.paths
            .iter()
            .enumerate()
            .any(|(i, q)| i != except && q.contains(p))
    }

    /// Whether each path lies weakly above the next.
    pub fn is_top_down(&self) -> bool {
        self.paths.windows(2).all(|w| w[0].weakly_above(&w[1]))
    }

    fn column_range(&self) -> Option<(usize, usize)> {
        let lo = self.paths.iter().map(|p| p.start().col).min()?;
        let hi = self.paths.iter().map(|p| p.end().col).max()?;
        Some((lo, hi))
    }
}

impl fmt::Display for PathFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.paths {
            writeln!(f, "{p}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColumnEll {
    pub col: usize,
    pub value: usize,
    pub witness: SubsequenceFamily,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyEll {
    pub value: usize,
    pub columns: Vec<ColumnEll>,
}

/// `ℓ(P_1, …, P_k)`, computed column by column and summed.
pub fn family_ell(m: &PathMatrix, f: &PathFamily) -> Result<FamilyEll> {
    m.check_in_bounds(f)?;
    let mut columns = Vec::new();
    if let Some((lo, hi)) = f.column_range() {
        for col in lo..=hi {
            let words = f
                .paths()
                .iter()
                .map(|p| m.column_word(p, col))
                .collect::<Result<Vec<_>>>()?;
            if words.iter().all(Word::is_empty) {
                continue;
            }
            let r = ell_multi(&words)?;
            columns.push(ColumnEll {
                col,
                value: r.value,
                witness: r.witness,
            });
        }
    }
    Ok(FamilyEll {
        value: columns.iter().map(|c| c.value).sum(),
        columns,
    })
}

/// `ℓ` over whole path words, without splitting into columns.
pub fn family_ell_direct(m: &PathMatrix, f: &PathFamily) -> Result<usize> {
    m.check_in_bounds(f)?;
    let words = f
        .paths()
        .iter()
        .map(|p| m.path_word(p))
        .collect::<Result<Vec<_>>>()?;
    Ok(ell_multi(&words)?.value)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ColumnSplit {
    pub per_column: usize,
    pub direct: usize,
}

impl ColumnSplit {
    pub fn holds(&self) -> bool {
        self.per_column == self.direct
    }
}

/// Compares the column-by-column sum with the direct value.
pub fn column_split_check(m: &PathMatrix, f: &PathFamily) -> Result<ColumnSplit> {
    Ok(ColumnSplit {
        per_column: family_ell(m, f)?.value,
        direct: family_ell_direct(m, f)?,
    })
}

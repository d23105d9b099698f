use serde::Serialize;

use super::{pt, LatticePath};
use crate::error::{Error, Result};

/// The lower boundary `L_i` for the `i`-th of `k` paths in a `q`-column,
/// `r`-row matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundingPath {
    pub index: usize,
    pub q: usize,
    pub r: usize,
    pub k: usize,
    pub path: LatticePath,
}

impl BoundingPath {
    /// Column where the final horizontal run in row `r - i + 1` begins.
    pub fn run_start(&self) -> usize {
        (self.r + self.index).saturating_sub(self.k + 1).max(1)
    }

    pub fn run_row(&self) -> usize {
        self.r + 1 - self.index
    }
}

/// `L_1, …, L_k`, top to bottom. `L_i` runs along row `k - i + 1` to column
/// `i`, climbs a unit staircase (up first) to `(r - k + i - 1, r - i + 1)`,
/// then runs along that row to column `q`.
pub fn bounding_paths(q: usize, r: usize, k: usize) -> Result<Vec<BoundingPath>> {
    if !(k >= 1 && r >= k && q >= r) {
        return Err(Error::Domain(format!(
            "bounding paths need q >= r >= k >= 1, got q={q}, r={r}, k={k}"
        )));
    }
    (1..=k)
        .map(|i| {
            let base = k - i + 1;
            let mut cells: Vec<_> = (1..=i).map(|c| pt(c, base)).collect();
            let (mut c, mut row) = (i, base);
            let top = r - i + 1;
            while row < top {
                row += 1;
                cells.push(pt(c, row));
                if row < top {
                    c += 1;
                    cells.push(pt(c, row));
                }
            }
            cells.extend((c + 1..=q).map(|c| pt(c, top)));
            Ok(BoundingPath {
                index: i,
                q,
                r,
                k,
                path: LatticePath::new(cells)?,
            })
        })
        .collect()
}

use serde::Serialize;

use super::surgery::{
    maximal_left_shifts, rectangular_flip, reverse_rectangular_flip, uncross, LeftShift, Segment,
};
use super::{bounding_paths, pt, LatticePath, PathFamily, PathMatrix, Point};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum Step {
    Extend,
    Switch {
        column: usize,
        upper: usize,
        lower: usize,
    },
    Flip {
        path: usize,
        against: usize,
        segment: Segment,
    },
    DropAuxiliaryColumn,
    LeftShift {
        path: usize,
        shift: LeftShift,
    },
    ReverseFlip {
        path: usize,
        against: usize,
        segment: Segment,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Normalized {
    pub family: PathFamily,
    pub steps: Vec<Step>,
}

/// Rewrites `f` into the normal form used to bound `ℓ`: `P_i` starts at
/// `(1, k + 1 - i)`, the paths are ordered top to bottom, `P_i` lies weakly
/// above `L_i`, and `P_i` runs along row `r - i + 1` from column
/// `r - k + i - 1` to column `q`. Every step keeps or raises `ℓ`.
///
/// Paths are first extended to run from `(0, 1)` to `(q, r)` through an
/// empty auxiliary column, so every result ends at `(q, r)`.
///
/// Left-shifts here only require the cells moved into to be free; the top
/// cell in column `q` is shared by every path, so the stricter
/// [`left_shift`](super::left_shift) could never finish a path.
pub fn normalize_family(m: &PathMatrix, f: &PathFamily) -> Result<Normalized> {
    let (q, r, k) = (m.q(), m.r(), f.len());
    if k == 0 {
        return Ok(Normalized {
            family: f.clone(),
            steps: Vec::new(),
        });
    }
    if !(r >= k && q >= r) {
        return Err(Error::Domain(format!(
            "normalization needs q >= r >= k, got q={q}, r={r}, k={k}"
        )));
    }
    let plain = m.clone().without_auxiliary_column();
    for p in f.paths() {
        if let Some(c) = p.cells().iter().find(|c| !plain.contains(**c)) {
            return Err(Error::OutOfBounds {
                col: c.col,
                row: c.row,
            });
        }
    }
    let mut steps = vec![Step::Extend];
    let extended = PathFamily::new(f.paths().iter().map(|p| extend(p, q, r)).collect());

    let (mut fam, switches) = uncross(&extended)?;
    steps.extend(
        switches
            .into_iter()
            .map(|(column, upper, lower)| Step::Switch {
                column,
                upper,
                lower,
            }),
    );

    // Lift P_1..P_{k-j-1} off row j + 1 of the auxiliary column, top first,
    // using P_{k-j} as the partner that keeps the row.
    for j in 0..k - 1 {
        let row = j + 1;
        let against = k - 1 - j;
        for path in 0..against {
            let exit = fam
                .path(path)
                .cells()
                .iter()
                .filter(|c| c.row == row)
                .map(|c| c.col)
                .max()
                .expect("path runs along this row");
            let segment = Segment {
                row,
                from: 0,
                to: exit,
            };
            fam = rectangular_flip(&fam, path, against, segment)?;
            steps.push(Step::Flip {
                path,
                against,
                segment,
            });
        }
    }

    fam = PathFamily::new(
        fam.paths()
            .iter()
            .map(|p| {
                LatticePath::from_cells_unchecked(
                    p.cells().iter().copied().filter(|c| c.col > 0).collect(),
                )
            })
            .collect(),
    );
    steps.push(Step::DropAuxiliaryColumn);

    for i in 0..k {
        let (g, shifts) = maximal_left_shifts(&fam, i, i.checked_sub(1), false);
        fam = g;
        steps.extend(
            shifts
                .into_iter()
                .map(|shift| Step::LeftShift { path: i, shift }),
        );
    }

    // Paths below P_i that climb into P_i's row before column q are moved
    // down onto the row of P_{i+1}; bottom path first.
    for i in 1..k {
        let row = r - i + 1;
        for path in (i..k).rev() {
            let Some(from) = fam
                .path(path)
                .cells()
                .iter()
                .find(|c| c.row == row)
                .map(|c| c.col)
            else {
                continue;
            };
            if from >= q {
                continue;
            }
            let segment = Segment { row, from, to: q };
            fam = reverse_rectangular_flip(&fam, path, i - 1, segment)?;
            steps.push(Step::ReverseFlip {
                path,
                against: i - 1,
                segment,
            });
        }
    }
    Ok(Normalized { family: fam, steps })
}

/// Prepends `(0,1) → (c,1) → (c,start row)` and appends `→ (q, end row) → (q, r)`.
fn extend(p: &LatticePath, q: usize, r: usize) -> LatticePath {
    let (s, e) = (p.start(), p.end());
    let mut cells: Vec<Point> = (0..=s.col).map(|c| pt(c, 1)).collect();
    cells.extend((2..s.row).map(|row| pt(s.col, row)));
    if s.row > 1 {
        cells.push(pt(s.col, s.row));
    }
    cells.extend(p.cells()[1..].iter().copied());
    cells.extend((e.col + 1..=q).map(|c| pt(c, e.row)));
    cells.extend((e.row + 1..=r).map(|row| pt(q, row)));
    LatticePath::from_cells_unchecked(cells)
}

/// Lists every normal-form condition `f` violates; empty when it is normal.
pub fn check_normalized(q: usize, r: usize, f: &PathFamily) -> Result<Vec<String>> {
    let k = f.len();
    if k == 0 {
        return Ok(Vec::new());
    }
    let bounds = bounding_paths(q, r, k)?;
    let mut out = Vec::new();
    for (i, (p, l)) in f.paths().iter().zip(&bounds).enumerate() {
        let name = format!("P_{}", i + 1);
        if p.start() != pt(1, k - i) {
            out.push(format!(
                "{name} starts at {} instead of (1,{})",
                p.start(),
                k - i
            ));
        }
        if !p.weakly_above(&l.path) {
            out.push(format!("{name} dips below L_{}", i + 1));
        }
        let row = l.run_row();
        if let Some(c) = (l.run_start()..=q).find(|&c| !p.contains(pt(c, row))) {
            out.push(format!("{name} misses ({c},{row}) of its final run"));
        }
        if let Some(next) = f.paths().get(i + 1) {
            if !p.weakly_above(next) {
                out.push(format!("{name} is not weakly above P_{}", i + 2));
            }
        }
    }
    Ok(out)
}

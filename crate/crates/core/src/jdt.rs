use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::tableau::{Letter, Shape, SkewTableau};

/// A rectified tableau together with where each entry started and ended.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RectifiedTableau {
    tableau: SkewTableau,
    #[serde(skip)]
    row_of: Vec<usize>,
    #[serde(skip)]
    origin_row_of: Vec<usize>,
}

impl RectifiedTableau {
    pub fn tableau(&self) -> &SkewTableau {
        &self.tableau
    }

    pub fn into_tableau(self) -> SkewTableau {
        self.tableau
    }

    pub fn shape(&self) -> Shape {
        self.tableau.row_sizes()
    }

    /// 1-based row of `e` after rectification.
    pub fn row_of(&self, e: Letter) -> usize {
        self.row_of[e as usize]
    }

    /// 1-based row of `e` in the input tableau.
    pub fn origin_row_of(&self, e: Letter) -> usize {
        self.origin_row_of[e as usize]
    }

    /// Entries whose row changed, in increasing order.
    pub fn moved_entries(&self) -> Vec<Letter> {
        (1..self.row_of.len() as Letter)
            .filter(|&e| self.row_of(e) != self.origin_row_of(e))
            .collect()
    }
}

/// Mutable working copy: `cells[i]` spans columns `0..outer[i]` and holds 0
/// in inner positions.
struct Grid {
    inner: Vec<usize>,
    cells: Vec<Vec<Letter>>,
}

impl Grid {
    fn new(t: &SkewTableau) -> Self {
        let cells = t
            .inner()
            .iter()
            .zip(t.rows())
            .map(|(&i, row)| {
                let mut v = vec![0; i];
                v.extend_from_slice(row);
                v
            })
            .collect();
        Grid {
            inner: t.inner().to_vec(),
            cells,
        }
    }

    fn at(&self, row: usize, col: usize) -> Letter {
        self.cells
            .get(row)
            .and_then(|r| r.get(col))
            .copied()
            .unwrap_or(0)
    }

    /// 0-based rows holding an inner corner, top to bottom.
    fn corners(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.inner.len()).filter(move |&i| {
            self.inner[i] > 0 && self.inner.get(i + 1).is_none_or(|&b| b < self.inner[i])
        })
    }

    fn is_corner(&self, row: usize, col: usize) -> bool {
        row < self.inner.len()
            && self.inner[row] == col + 1
            && self.inner.get(row + 1).is_none_or(|&b| b <= col)
    }

    fn slide(&mut self, row: usize) {
        let (mut i, mut c) = (row, self.inner[row] - 1);
        self.inner[row] -= 1;
        loop {
            let right = self.at(i, c + 1);
            let below = self.at(i + 1, c);
            if right == 0 && below == 0 {
                break;
            }
            if below == 0 || (right != 0 && right < below) {
                self.cells[i][c] = right;
                c += 1;
            } else {
                self.cells[i][c] = below;
                i += 1;
            }
        }
        debug_assert_eq!(c + 1, self.cells[i].len());
        self.cells[i].pop();
    }

    fn into_tableau(self) -> SkewTableau {
        let rows = self
            .cells
            .into_iter()
            .zip(&self.inner)
            .map(|(mut r, &i)| r.split_off(i))
            .collect();
        SkewTableau::raw(self.inner, rows)
    }
}

/// Inner corners as 1-based (row, column) pairs, top to bottom.
pub fn inner_corners(t: &SkewTableau) -> Vec<(usize, usize)> {
    let g = Grid::new(t);
    g.corners().map(|i| (i + 1, g.inner[i])).collect()
}

/// One slide into the inner corner at 1-based (row, column).
pub fn inner_slide(t: &SkewTableau, row: usize, col: usize) -> Result<SkewTableau> {
    let mut g = Grid::new(t);
    if row == 0 || col == 0 || !g.is_corner(row - 1, col - 1) {
        return Err(Error::NotInnerCorner { row, col });
    }
    g.slide(row - 1);
    Ok(g.into_tableau())
}

fn rectify_by(t: &SkewTableau, mut choose: impl FnMut(&[usize]) -> usize) -> RectifiedTableau {
    let mut g = Grid::new(t);
    let mut corners = Vec::new();
    loop {
        corners.clear();
        corners.extend(g.corners());
        if corners.is_empty() {
            break;
        }
        let row = corners[choose(&corners)];
        g.slide(row);
    }
    let tableau = g.into_tableau();
    RectifiedTableau {
        row_of: tableau.row_index(),
        origin_row_of: t.row_index(),
        tableau,
    }
}

/// Rectifies by always sliding into the topmost inner corner.
pub fn rectify(t: &SkewTableau) -> RectifiedTableau {
    rectify_by(t, |_| 0)
}

/// Rectifies choosing each inner corner uniformly at random.
pub fn rectify_random<R: Rng + ?Sized>(t: &SkewTableau, rng: &mut R) -> RectifiedTableau {
    rectify_by(t, |c| rng.gen_range(0..c.len()))
}

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jdt::{rectify, RectifiedTableau};
use crate::tableau::{Letter, Shape, SkewTableau};

fn check_input(t: &SkewTableau) -> Result<()> {
    t.validate().map_err(Error::NotStandard)?;
    if !t.has_weakly_decreasing_rows() {
        return Err(Error::RowsNotWeaklyDecreasing(
            t.row_sizes().parts().to_vec(),
        ));
    }
    Ok(())
}

fn last_copy_stays(rect: &RectifiedTableau, n: usize, k: usize) -> bool {
    let lo = ((k - 1) * n + 1) as Letter;
    let hi = (k * n) as Letter;
    (lo..=hi).all(|e| rect.row_of(e) == rect.origin_row_of(e))
}

/// Whether every entry of the `k`-th copy keeps its row when `T^(k)` is
/// rectified.
pub fn stabilizes_at(t: &SkewTableau, k: usize) -> Result<bool> {
    check_input(t)?;
    if k == 0 {
        return Err(Error::ZeroK);
    }
    let rect = rectify(&t.attach_copies_unchecked(k));
    Ok(last_copy_stays(&rect, t.n(), k))
}

/// Largest `k` tried by [`stab`] for a tableau with `r` rows: one more than
/// the older `max(1, 2r - 2)` bound.
pub fn search_cap(r: usize) -> usize {
    (2 * r).saturating_sub(2).max(r).max(1) + 1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabReport {
    pub tableau: SkewTableau,
    pub rows: usize,
    /// `verdicts[k - 1]`: whether `T` stabilizes at `k`.
    pub verdicts: Vec<bool>,
    pub stab: usize,
    /// `shapes[k - 1]` is the shape of `Rect(T^(k))`.
    pub shapes: Vec<Shape>,
    /// `stab <= max(1, r)`.
    pub within_bound: bool,
}

impl StabReport {
    /// Whether stabilizing at `k` implies stabilizing at `k + 1` over the
    /// verdicts computed.
    pub fn is_monotone(&self) -> bool {
        self.verdicts.windows(2).all(|w| !w[0] || w[1])
    }
}

fn report(t: &SkewTableau, k_max: usize, stop_at_first: bool) -> Result<StabReport> {
    check_input(t)?;
    let rows = t.num_rows();
    let mut verdicts = Vec::new();
    let mut shapes = Vec::new();
    let mut stab = None;
    for k in 1..=k_max {
        let rect = rectify(&t.attach_copies_unchecked(k));
        let v = last_copy_stays(&rect, t.n(), k);
        verdicts.push(v);
        shapes.push(rect.shape());
        if v && stab.is_none() {
            stab = Some(k);
            if stop_at_first {
                break;
            }
        }
    }
    let stab = stab.ok_or(Error::StabCap { cap: k_max })?;
    Ok(StabReport {
        tableau: t.clone(),
        rows,
        verdicts,
        stab,
        shapes,
        within_bound: stab <= rows.max(1),
    })
}

/// The least `k` at which `t` stabilizes, searched up to [`search_cap`].
pub fn stab(t: &SkewTableau) -> Result<StabReport> {
    report(t, search_cap(t.num_rows()), true)
}

/// Verdicts and shapes for every `k` in `1..=k_max`, with `stab` the least
/// stabilizing `k` among them.
pub fn stab_report(t: &SkewTableau, k_max: usize) -> Result<StabReport> {
    report(t, k_max, false)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShapeIncrement {
    pub row_sizes: Shape,
    /// Shape of `Rect(T^(r))`.
    pub upper: Shape,
    /// Shape of `Rect(T^(r-1))`, empty when `r = 1`.
    pub lower: Shape,
    pub holds: bool,
}

/// Checks that the rows of `Rect(T^(r))` exceed those of `Rect(T^(r-1))`
/// by exactly the row sizes of `T`.
pub fn shape_increment_check(t: &SkewTableau) -> Result<ShapeIncrement> {
    check_input(t)?;
    let r = t.num_rows();
    let shape_at = |k: usize| {
        if k == 0 {
            Shape::default()
        } else {
            rectify(&t.attach_copies_unchecked(k)).shape()
        }
    };
    let upper = shape_at(r);
    let lower = shape_at(r.saturating_sub(1));
    Ok(increment(t.row_sizes(), upper, lower))
}

pub(crate) fn increment(row_sizes: Shape, upper: Shape, lower: Shape) -> ShapeIncrement {
    let len = upper.len().max(lower.len()).max(row_sizes.len());
    let holds = (1..=len).all(|j| upper.part(j) == lower.part(j) + row_sizes.part(j));
    ShapeIncrement {
        row_sizes,
        upper,
        lower,
        holds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_s() -> SkewTableau {
        SkewTableau::new(vec![2, 2, 0], vec![vec![1, 3], vec![5, 6], vec![2, 4]]).unwrap()
    }

    fn sample_t() -> SkewTableau {
        SkewTableau::new(vec![3, 2, 0], vec![vec![4, 5, 6], vec![3, 7], vec![1, 2]]).unwrap()
    }

    fn tableau_432() -> SkewTableau {
        SkewTableau::new(
            vec![2, 1, 0],
            vec![vec![1, 4, 6, 8], vec![3, 5, 9], vec![2, 7]],
        )
        .unwrap()
    }

    #[test]
    fn worked_examples() {
        assert!(!stabilizes_at(&sample_s(), 1).unwrap());
        assert!(stabilizes_at(&sample_s(), 2).unwrap());
        assert!(stabilizes_at(&sample_s(), 3).unwrap());
        assert_eq!(stab(&sample_s()).unwrap().stab, 2);
        assert!(!stabilizes_at(&sample_t(), 2).unwrap());
        assert!(stabilizes_at(&sample_t(), 3).unwrap());
        assert_eq!(stab(&sample_t()).unwrap().stab, 3);
    }

    #[test]
    fn single_row() {
        let t = SkewTableau::new(vec![3], vec![vec![1, 2, 3]]).unwrap();
        assert!(stabilizes_at(&t, 1).unwrap());
        let rep = stab(&t).unwrap();
        assert_eq!((rep.stab, rep.within_bound), (1, true));
        assert_eq!(shape_increment_check(&t).unwrap().upper.parts(), &[3]);
    }

    #[test]
    fn report_shapes() {
        let rep = stab_report(&sample_s(), 3).unwrap();
        assert_eq!(rep.verdicts, vec![false, true, true]);
        assert_eq!(rep.shapes[2].parts(), &[8, 6, 4]);
        assert!(rep.is_monotone());
        for (k, s) in rep.shapes.iter().enumerate() {
            assert_eq!(s.size(), (k + 1) * 6);
        }
    }

    #[test]
    fn increment_for_432() {
        let inc = shape_increment_check(&tableau_432()).unwrap();
        assert_eq!(inc.upper.parts(), &[13, 9, 5]);
        assert!(inc.holds);
        assert_eq!(inc.lower.parts(), &[9, 6, 3]);
    }

    #[test]
    fn search_caps() {
        assert_eq!(search_cap(1), 2);
        assert_eq!(search_cap(2), 3);
        assert_eq!(search_cap(3), 5);
        assert_eq!(search_cap(4), 7);
    }

    #[test]
    fn rejects_increasing_rows() {
        let t = SkewTableau::new(vec![1, 0], vec![vec![2], vec![1, 3]]).unwrap();
        assert!(stab(&t).is_err());
        assert!(stabilizes_at(&sample_s(), 0).is_err());
    }
}

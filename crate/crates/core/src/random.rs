//! Seeded generators for words, skew tableaux and lattice paths.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::lattice::{pt, LatticePath, PathFamily, PathMatrix, Point};
use crate::tableau::{Letter, SkewTableau, Word};

/// The generator for trial `trial` of a run seeded with `seed`. Each trial
/// gets its own stream, so results do not depend on scheduling.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// A word on `len` distinct letters drawn from `1..=universe`.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, universe: usize, len: usize) -> Word {
    let mut all: Vec<Letter> = (1..=universe as Letter).collect();
    all.shuffle(rng);
    all.truncate(len.min(universe));
    Word::from_vec_unchecked(all)
}

/// A random partition of `n` into exactly `r` positive parts.
pub fn random_partition<R: Rng + ?Sized>(rng: &mut R, n: usize, r: usize) -> Vec<usize> {
    assert!(r >= 1 && n >= r);
    let mut parts = vec![1; r];
    for _ in r..n {
        let i = rng.gen_range(0..r);
        parts[i] += 1;
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

/// A random standard filling of the skew shape with the given inner
/// offsets and row sizes; the shape must have weakly decreasing inner and
/// outer boundaries.
pub fn random_filling<R: Rng + ?Sized>(
    rng: &mut R,
    inner: &[usize],
    sizes: &[usize],
) -> SkewTableau {
    let r = sizes.len();
    let n: usize = sizes.iter().sum();
    let mut rows: Vec<Vec<Letter>> = vec![Vec::new(); r];
    for e in 1..=n {
        let open: Vec<usize> = (0..r)
            .filter(|&i| {
                let col = inner[i] + rows[i].len();
                rows[i].len() < sizes[i]
                    && (i == 0 || col < inner[i - 1] || col < inner[i - 1] + rows[i - 1].len())
            })
            .collect();
        let i = *open
            .choose(rng)
            .expect("a skew shape always has an open cell");
        rows[i].push(e as Letter);
    }
    SkewTableau::raw(inner.to_vec(), rows)
}

/// Inner offsets for `sizes` keeping both boundaries weakly decreasing,
/// with the last offset zero and every offset at most `max_inner`.
pub fn random_inner<R: Rng + ?Sized>(rng: &mut R, sizes: &[usize], max_inner: usize) -> Vec<usize> {
    let r = sizes.len();
    let mut inner = vec![0; r];
    for i in (0..r.saturating_sub(1)).rev() {
        // inner[i] >= inner[i+1] and inner[i] + sizes[i] >= inner[i+1] + sizes[i+1]
        let lo = inner[i + 1].max((inner[i + 1] + sizes[i + 1]).saturating_sub(sizes[i]));
        let hi = lo.max(max_inner);
        inner[i] = rng.gen_range(lo..=hi);
    }
    inner
}

/// A standard skew tableau with weakly decreasing row sizes, `r` rows and
/// `n` cells.
pub fn random_tableau<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    r: usize,
    max_inner: usize,
) -> SkewTableau {
    let sizes = random_partition(rng, n, r);
    let inner = random_inner(rng, &sizes, max_inner);
    random_filling(rng, &inner, &sizes)
}

/// A standard skew tableau of arbitrary skew shape (row sizes need not
/// decrease) with `n` cells, at most `max_rows` rows and inner parts at most
/// `max_inner`.
pub fn random_skew_tableau<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    max_rows: usize,
    max_inner: usize,
) -> SkewTableau {
    let max_rows = max_rows.max(1);
    let mut inner: Vec<usize> = (0..max_rows)
        .map(|_| rng.gen_range(0..=max_inner))
        .collect();
    inner.sort_unstable_by(|a, b| b.cmp(a));
    let mut outer = inner.clone();
    for _ in 0..n {
        let open: Vec<usize> = (0..max_rows)
            .filter(|&i| i == 0 || outer[i] < outer[i - 1])
            .collect();
        let i = *open.choose(rng).expect("the first row is always open");
        outer[i] += 1;
    }
    let sizes: Vec<usize> = outer.iter().zip(&inner).map(|(o, i)| o - i).collect();
    let t = random_filling(rng, &inner, &sizes);
    // Drop empty top rows and empty leading columns.
    let skip = sizes.iter().take_while(|&&s| s == 0).count();
    let rows = t.rows().get(skip..).unwrap_or_default().to_vec();
    let inner = t.inner().get(skip..).unwrap_or_default().to_vec();
    let shift = inner
        .iter()
        .zip(&rows)
        .filter(|(_, r)| !r.is_empty())
        .map(|(a, _)| *a)
        .min()
        .unwrap_or(0);
    SkewTableau::raw(
        inner.iter().map(|a| a.saturating_sub(shift)).collect(),
        rows,
    )
}

/// A right/up path from `from` to `to`, with the steps in random order.
pub fn random_path_between<R: Rng + ?Sized>(rng: &mut R, from: Point, to: Point) -> LatticePath {
    let mut steps = vec![true; to.col - from.col];
    steps.extend(vec![false; to.row - from.row]);
    steps.shuffle(rng);
    let mut cells = vec![from];
    let mut cur = from;
    for right in steps {
        if right {
            cur.col += 1;
        } else {
            cur.row += 1;
        }
        cells.push(cur);
    }
    LatticePath::new(cells).expect("unit steps")
}

/// A random path inside the matrix (without auxiliary column).
pub fn random_path<R: Rng + ?Sized>(rng: &mut R, m: &PathMatrix) -> LatticePath {
    let (q, r) = (m.q(), m.r());
    let c1 = rng.gen_range(1..=q);
    let r1 = rng.gen_range(1..=r);
    let c2 = rng.gen_range(c1..=q);
    let r2 = rng.gen_range(r1..=r);
    random_path_between(rng, pt(c1, r1), pt(c2, r2))
}

pub fn random_family<R: Rng + ?Sized>(rng: &mut R, m: &PathMatrix, k: usize) -> PathFamily {
    PathFamily::new((0..k).map(|_| random_path(rng, m)).collect())
}

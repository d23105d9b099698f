use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::greene::rsk_recording;
use crate::stab::stab;
use crate::tableau::{Letter, SkewTableau, Word};

/// A permutation of `1..=n` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Letter>", into = "Vec<Letter>")]
pub struct Permutation(Vec<Letter>);

impl Permutation {
    pub fn new(values: Vec<Letter>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            let i = v as usize;
            if i == 0 || i > n || seen[i] {
                return Err(Error::Word(format!(
                    "{values:?} is not a permutation of 1..={n}"
                )));
            }
            seen[i] = true;
        }
        Ok(Permutation(values))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as Letter).collect())
    }

    pub fn values(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn ascents(&self) -> usize {
        self.0.windows(2).filter(|w| w[0] < w[1]).count()
    }

    pub fn word(&self) -> Word {
        Word::from_vec_unchecked(self.0.clone())
    }

    /// All permutations of `1..=n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut cur: Vec<Letter> = (1..=n as Letter).collect();
        let mut out = vec![Permutation(cur.clone())];
        while let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| cur[i] < cur[i + 1])
        {
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
            out.push(Permutation(cur.clone()));
        }
        out
    }
}

impl TryFrom<Vec<Letter>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<Letter>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<Letter> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `1 3 2`, `1,3,2`, or `132` when every value is a single digit.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let values = if !s.contains(|c: char| c.is_whitespace() || c == ',') {
            Word::from_digits(s)?.letters().to_vec()
        } else {
            s.parse::<Word>()?.letters().to_vec()
        };
        Permutation::new(values)
    }
}

/// One box per row on the antidiagonal, the bottom row in column 1, so the
/// reading word is `w`.
pub fn tableau_from_permutation(w: &Permutation) -> SkewTableau {
    let n = w.len();
    let rows = (0..n).map(|i| vec![w.0[n - 1 - i]]).collect();
    let inner = (0..n).map(|i| n - 1 - i).collect();
    SkewTableau::raw(inner, rows)
}

pub fn stab_perm(w: &Permutation) -> usize {
    if w.is_empty() {
        return 1;
    }
    stab(&tableau_from_permutation(w))
        .expect("one box per row is standard with weakly decreasing rows")
        .stab
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PermRecord {
    pub permutation: Permutation,
    pub stab: usize,
    /// Recording tableau in the text format, rows joined by `/`.
    pub q_tableau: String,
    pub ascents: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QClass {
    pub q_tableau: String,
    pub size: usize,
    /// Distinct stab values seen in the class; one when constant.
    pub stabs: Vec<usize>,
    pub min_ascents: usize,
}

impl QClass {
    pub fn is_constant(&self) -> bool {
        self.stabs.len() == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QClassSummary {
    pub n: usize,
    pub permutations: usize,
    pub classes: Vec<QClass>,
    /// Classes on which stab is not constant.
    pub violations: Vec<QClass>,
    /// Classes whose stab does not exceed the least ascent count among their
    /// members; recorded as data, not asserted.
    pub ascent_exceptions: usize,
}

/// Largest `n` accepted by [`q_class_check`].
pub const MAX_PERM_N: usize = 8;

pub fn q_string(t: &SkewTableau) -> String {
    t.rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join(" / ")
}

/// Every permutation of size `n` with its stab, recording tableau and
/// ascent count, in lexicographic order.
pub fn perm_records(n: usize) -> Result<Vec<PermRecord>> {
    if n > MAX_PERM_N {
        return Err(Error::Resource(format!(
            "n = {n} exceeds the exhaustive limit {MAX_PERM_N}"
        )));
    }
    Ok(Permutation::all(n)
        .into_par_iter()
        .map(|w| PermRecord {
            stab: stab_perm(&w),
            q_tableau: q_string(&rsk_recording(&w.word())),
            ascents: w.ascents(),
            permutation: w,
        })
        .collect())
}

/// Groups `S_n` by recording tableau and checks that stab is constant on
/// each group.
pub fn q_class_check(n: usize) -> Result<QClassSummary> {
    let records = perm_records(n)?;
    let mut groups: BTreeMap<String, Vec<&PermRecord>> = BTreeMap::new();
    for r in &records {
        groups.entry(r.q_tableau.clone()).or_default().push(r);
    }
    let classes: Vec<QClass> = groups
        .into_iter()
        .map(|(q, members)| {
            let mut stabs: Vec<usize> = members.iter().map(|r| r.stab).collect();
            stabs.sort_unstable();
            stabs.dedup();
            QClass {
                q_tableau: q,
                size: members.len(),
                stabs,
                min_ascents: members.iter().map(|r| r.ascents).min().unwrap_or(0),
            }
        })
        .collect();
    let violations = classes
        .iter()
        .filter(|c| !c.is_constant())
        .cloned()
        .collect();
    let ascent_exceptions = classes
        .iter()
        .filter(|c| c.stabs.iter().any(|&s| s <= c.min_ascents))
        .count();
    Ok(QClassSummary {
        n,
        permutations: records.len(),
        classes,
        violations,
        ascent_exceptions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn antidiagonal_examples() {
        let s = tableau_from_permutation(&p("132"));
        assert_eq!(s.rows(), &[vec![2], vec![3], vec![1]]);
        assert_eq!(s.inner(), &[2, 1, 0]);
        let q = tableau_from_permutation(&p("123"));
        assert_eq!(q.rows(), &[vec![3], vec![2], vec![1]]);
        assert_eq!(stab_perm(&p("132")), 2);
        assert_eq!(stab_perm(&p("123")), 3);
        assert_eq!(stab_perm(&p("1")), 1);
    }

    #[test]
    fn reading_word_round_trip() {
        for n in 0..=5 {
            for w in Permutation::all(n) {
                let t = tableau_from_permutation(&w);
                assert!(t.is_standard() && t.has_weakly_decreasing_rows());
                assert_eq!(t.reading_word().letters(), w.values());
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(Permutation::all(0).len(), 1);
        assert_eq!(Permutation::all(4).len(), 24);
        assert_eq!(Permutation::all(3)[1], p("132"));
    }

    #[test]
    fn rejects_non_permutations() {
        assert!("122".parse::<Permutation>().is_err());
        assert!("1 4".parse::<Permutation>().is_err());
        assert_eq!(p("2,1,3").ascents(), 1);
    }

    #[test]
    fn small_classes() {
        let one = q_class_check(1).unwrap();
        assert_eq!(one.classes.len(), 1);
        assert_eq!(one.classes[0].stabs, vec![1]);
        let three = q_class_check(3).unwrap();
        assert_eq!(three.classes.len(), 4);
        assert!(three.violations.is_empty());
        assert!(q_class_check(MAX_PERM_N + 1).is_err());
    }
}

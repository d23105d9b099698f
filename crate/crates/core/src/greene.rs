use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tableau::{Letter, Shape, SkewTableau, Word};

/// Default bound on the number of distinct letters the exact oracle accepts.
pub const ORACLE_CAP: usize = 24;

/// Schensted row insertion of `w`, returning the insertion and recording
/// tableaux as rows.
pub fn rsk(w: &Word) -> (Vec<Vec<Letter>>, Vec<Vec<Letter>>) {
    let mut p: Vec<Vec<Letter>> = Vec::new();
    let mut q: Vec<Vec<Letter>> = Vec::new();
    for (step, &x) in w.letters().iter().enumerate() {
        let mut x = x;
        let mut row = 0;
        loop {
            if row == p.len() {
                p.push(vec![x]);
                q.push(vec![step as Letter + 1]);
                break;
            }
            let r = &mut p[row];
            match r.iter().position(|&y| y > x) {
                Some(i) => {
                    std::mem::swap(&mut r[i], &mut x);
                    row += 1;
                }
                None => {
                    r.push(x);
                    q[row].push(step as Letter + 1);
                    break;
                }
            }
        }
    }
    (p, q)
}

pub fn rsk_shape(w: &Word) -> Shape {
    Shape::new(rsk(w).0.iter().map(Vec::len).collect())
}

/// The insertion tableau. Its entries are the letters of `w`, so it is a
/// standard tableau only when `w` is a permutation.
pub fn rsk_insertion(w: &Word) -> SkewTableau {
    SkewTableau::raw(Vec::new(), rsk(w).0)
}

pub fn rsk_recording(w: &Word) -> SkewTableau {
    SkewTableau::raw(Vec::new(), rsk(w).1)
}

/// Maximum combined length of `k` disjoint increasing subsequences of `w`.
pub fn ell_k(w: &Word, k: usize) -> usize {
    rsk_shape(w).prefix_sum(k)
}

/// Disjoint increasing subsequences, the `i`-th drawn from the `i`-th word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubsequenceFamily {
    pub sequences: Vec<Word>,
}

impl SubsequenceFamily {
    pub fn total_len(&self) -> usize {
        self.sequences.iter().map(Word::len).sum()
    }

    /// Checks that the family is a legal witness for `words`.
    pub fn validate(&self, words: &[Word]) -> std::result::Result<(), String> {
        if self.sequences.len() != words.len() {
            return Err(format!(
                "{} sequences for {} words",
                self.sequences.len(),
                words.len()
            ));
        }
        let mut used = std::collections::HashSet::new();
        for (i, (s, w)) in self.sequences.iter().zip(words).enumerate() {
            if !s.is_increasing() {
                return Err(format!("sequence {i} is not increasing"));
            }
            let mut it = w.letters().iter();
            if !s.letters().iter().all(|x| it.any(|y| y == x)) {
                return Err(format!("sequence {i} is not a subsequence of word {i}"));
            }
            for &x in s.letters() {
                if !used.insert(x) {
                    return Err(format!("letter {x} is used twice"));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiEll {
    pub value: usize,
    pub witness: SubsequenceFamily,
}

/// Exact `ℓ(A_1, …, A_k)` by memoized search, with the default cap.
pub fn ell_multi(words: &[Word]) -> Result<MultiEll> {
    ell_multi_with_cap(words, ORACLE_CAP)
}

pub fn ell_multi_with_cap(words: &[Word], cap: usize) -> Result<MultiEll> {
    let mut oracle = Oracle::new(words, cap)?;
    let value = oracle.best(0, &mut vec![0; words.len()]) as usize;
    let witness = oracle.witness(words.len());
    debug_assert_eq!(witness.total_len(), value);
    Ok(MultiEll { value, witness })
}

/// Letters are decided in increasing order; each one is either skipped or
/// appended to one sequence whose last letter sits earlier in its word.
struct Oracle {
    letters: Vec<Letter>,
    /// `pos[j][t]`: 1-based position of letter `t` in word `j`, 0 if absent.
    pos: Vec<Vec<u8>>,
    /// Indices of identical words; their sequences are interchangeable.
    groups: Vec<Vec<usize>>,
    memo: HashMap<Vec<u8>, u8>,
}

impl Oracle {
    fn new(words: &[Word], cap: usize) -> Result<Self> {
        let mut letters: Vec<Letter> = words.iter().flat_map(|w| w.letters()).copied().collect();
        letters.sort_unstable();
        letters.dedup();
        if letters.len() > cap || letters.len() > u8::MAX as usize {
            return Err(Error::OracleCap {
                letters: letters.len(),
                cap,
            });
        }
        let index: HashMap<Letter, usize> =
            letters.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let pos = words
            .iter()
            .map(|w| {
                let mut p = vec![0u8; letters.len()];
                for (i, x) in w.letters().iter().enumerate() {
                    p[index[x]] = i as u8 + 1;
                }
                p
            })
            .collect();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for (j, w) in words.iter().enumerate() {
            match groups.iter_mut().find(|g| words[g[0]] == *w) {
                Some(g) => g.push(j),
                None => groups.push(vec![j]),
            }
        }
        Ok(Oracle {
            letters,
            pos,
            groups,
            memo: HashMap::new(),
        })
    }

    fn key(&self, t: usize, last: &[u8]) -> Vec<u8> {
        let mut key = Vec::with_capacity(last.len() + 1);
        key.push(t as u8);
        for g in &self.groups {
            let start = key.len();
            key.extend(g.iter().map(|&j| last[j]));
            key[start..].sort_unstable();
        }
        key
    }

    fn best(&mut self, t: usize, last: &mut Vec<u8>) -> u8 {
        if t == self.letters.len() {
            return 0;
        }
        let key = self.key(t, last);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let mut res = self.best(t + 1, last);
        let mut tried: Vec<(usize, u8)> = Vec::new();
        for j in 0..last.len() {
            let p = self.pos[j][t];
            if p == 0 || p <= last[j] {
                continue;
            }
            let group = self.groups.iter().position(|g| g.contains(&j)).unwrap();
            if tried.contains(&(group, last[j])) {
                continue;
            }
            tried.push((group, last[j]));
            let old = last[j];
            last[j] = p;
            res = res.max(1 + self.best(t + 1, last));
            last[j] = old;
        }
        self.memo.insert(key, res);
        res
    }

    fn witness(&mut self, k: usize) -> SubsequenceFamily {
        let mut last = vec![0u8; k];
        let mut seqs: Vec<Vec<Letter>> = vec![Vec::new(); k];
        for t in 0..self.letters.len() {
            let target = self.best(t, &mut last);
            let mut placed = false;
            for j in 0..k {
                let p = self.pos[j][t];
                if p == 0 || p <= last[j] {
                    continue;
                }
                let old = last[j];
                last[j] = p;
                if 1 + self.best(t + 1, &mut last) == target {
                    seqs[j].push(self.letters[t]);
                    placed = true;
                    break;
                }
                last[j] = old;
            }
            if !placed {
                debug_assert_eq!(self.best(t + 1, &mut last), target);
            }
        }
        SubsequenceFamily {
            sequences: seqs.into_iter().map(Word::from_vec_unchecked).collect(),
        }
    }
}

/// Whether every letter at positions `1..=k` is smaller than every later one.
pub fn is_splitting_point(w: &Word, k: usize) -> bool {
    let l = w.letters();
    if k == 0 || k >= l.len() {
        return false;
    }
    l[..k].iter().max() < l[k..].iter().min()
}

/// A splitting point of `w`, given as a shuffle of increasing words `a` and
/// `b` with `a` holding the first and last letters of `w`. Returned 1-based.
///
/// Scans prefixes for the first one whose maximum belongs to `b`; the index
/// just before it splits `w`. If every prefix maximum lies in `a`, the last
/// letter is the overall maximum and `n - 1` splits.
pub fn splitting_point(w: &Word, a: &Word, b: &Word) -> Result<usize> {
    let l = w.letters();
    let n = l.len();
    let pre = |m: &str| Err(Error::Precondition(m.to_string()));
    if n < 2 {
        return pre("the word needs at least two letters");
    }
    if !a.is_increasing() || !b.is_increasing() {
        return pre("both parts must be increasing");
    }
    if a.len() + b.len() != n {
        return pre("the parts do not partition the word");
    }
    let in_a: std::collections::HashSet<Letter> = a.letters().iter().copied().collect();
    let in_b: std::collections::HashSet<Letter> = b.letters().iter().copied().collect();
    if in_a.iter().any(|x| in_b.contains(x))
        || !l.iter().all(|x| in_a.contains(x) || in_b.contains(x))
    {
        return pre("the parts do not partition the word");
    }
    let sub_a: Vec<Letter> = l.iter().copied().filter(|x| in_a.contains(x)).collect();
    let sub_b: Vec<Letter> = l.iter().copied().filter(|x| in_b.contains(x)).collect();
    if sub_a != a.letters() || sub_b != b.letters() {
        return pre("the parts are not subsequences of the word");
    }
    if !in_a.contains(&l[0]) || !in_a.contains(&l[n - 1]) {
        return pre("the first part must contain the first and last letters");
    }
    let mut max = 0;
    for (i, &x) in l.iter().enumerate() {
        max = max.max(x);
        if in_b.contains(&max) {
            debug_assert!(is_splitting_point(w, i));
            return Ok(i);
        }
    }
    debug_assert!(is_splitting_point(w, n - 1));
    Ok(n - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::from_digits(s).unwrap()
    }

    #[test]
    fn shape_of_sample_reading_word() {
        assert_eq!(rsk_shape(&w("273591468")).parts(), &[5, 3, 1]);
        assert_eq!(ell_k(&w("273591468"), 2), 8);
        assert_eq!(ell_k(&w("273591468"), 3), 9);
        assert_eq!(ell_k(&w("12345"), 4), 5);
    }

    #[test]
    fn recording_tableaux() {
        assert_eq!(rsk_recording(&w("123")).rows(), &[vec![1, 2, 3]]);
        assert_eq!(
            rsk_recording(&w("321")).rows(),
            &[vec![1], vec![2], vec![3]]
        );
        assert_eq!(rsk_recording(&w("132")).rows(), &[vec![1, 2], vec![3]]);
    }

    #[test]
    fn oracle_examples() {
        let r = ell_multi(&[w("152643"), w("13497")]).unwrap();
        assert_eq!(r.value, 6);
        r.witness.validate(&[w("152643"), w("13497")]).unwrap();
        let abc = w("135294768");
        assert_eq!(ell_multi(&[abc, w("52947")]).unwrap().value, 8);
        let empty = ell_multi(&[Word::empty(), w("273591468")]).unwrap();
        assert_eq!(empty.value, 5);
    }

    #[test]
    fn oracle_witness_for_two_copies() {
        let word = w("273591468");
        let r = ell_multi(&[word.clone(), word.clone()]).unwrap();
        assert_eq!(r.value, 8);
        r.witness.validate(&[word.clone(), word]).unwrap();
    }

    #[test]
    fn oracle_cap_is_enforced() {
        let long = Word::new((1..=25).collect()).unwrap();
        assert_eq!(
            ell_multi(&[long]).unwrap_err(),
            Error::OracleCap {
                letters: 25,
                cap: 24
            }
        );
    }

    #[test]
    fn splitting_points() {
        assert_eq!(
            splitting_point(&w("231547968"), &w("23568"), &w("1479")).unwrap(),
            5
        );
        assert_eq!(
            splitting_point(&w("13524768"), &w("13568"), &w("247")).unwrap(),
            5
        );
        let k = splitting_point(&w("12345"), &w("135"), &w("24")).unwrap();
        assert!(is_splitting_point(&w("12345"), k));
        assert!(splitting_point(&w("213"), &w("13"), &w("2")).is_err());
    }
}

//! Randomized checks of the inequalities behind the bound: each trial
//! draws a legal instance, applies the word identity or path surgery, and
//! compares `ℓ` before and after with the exact oracle.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::greene::ell_multi;
use crate::jdt::{rectify, rectify_random};
use crate::lattice::{
    check_normalized, column_split_check, family_ell, left_shift, normalize_family,
    rectangular_flip, reverse_rectangular_flip, top_down_switch, LeftShift, PathFamily, PathMatrix,
    Segment,
};
use crate::random::{random_family, random_skew_tableau, random_tableau, trial_rng};
use crate::tableau::{Letter, SkewTableau, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Lemma {
    /// `ℓ(ABC, B, D…) <= ℓ(AB, BC, D…)`.
    Lis1,
    /// `ℓ(ABC, AB, D…) <= ℓ(AB, BC, D…)` for increasing `A`.
    StartSplit,
    /// `ℓ(ABC, BC, D…) <= ℓ(AB, BC, D…)` for increasing `C`.
    EndSplit,
    Tds,
    LeftShift,
    RectFlip,
    RevRectFlip,
    /// Column-by-column and whole-path values agree.
    ColumnSplit,
    Normalize,
}

impl Lemma {
    pub const ALL: [Lemma; 9] = [
        Lemma::Lis1,
        Lemma::StartSplit,
        Lemma::EndSplit,
        Lemma::Tds,
        Lemma::LeftShift,
        Lemma::RectFlip,
        Lemma::RevRectFlip,
        Lemma::ColumnSplit,
        Lemma::Normalize,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Lemma::Lis1 => "lis1",
            Lemma::StartSplit => "start-split",
            Lemma::EndSplit => "end-split",
            Lemma::Tds => "tds",
            Lemma::LeftShift => "left-shift",
            Lemma::RectFlip => "rect-flip",
            Lemma::RevRectFlip => "rev-rect-flip",
            Lemma::ColumnSplit => "column-split",
            Lemma::Normalize => "normalize",
        }
    }

    fn is_word_lemma(self) -> bool {
        matches!(self, Lemma::Lis1 | Lemma::StartSplit | Lemma::EndSplit)
    }
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Lemma {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Lemma::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown lemma {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LemmaConfig {
    pub trials: usize,
    pub seed: u64,
    /// Total distinct letters for the word lemmas.
    pub max_letters: usize,
    /// Cells of the random tableau behind each matrix.
    pub max_n: usize,
}

impl Default for LemmaConfig {
    fn default() -> Self {
        LemmaConfig {
            trials: 1000,
            seed: 0,
            max_letters: 12,
            max_n: 6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaReport {
    pub lemma: Lemma,
    pub trials: usize,
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    /// Trials for which no legal instance turned up within the attempt
    /// budget.
    pub skipped: usize,
    pub first_counterexample: Option<Value>,
}

impl LemmaReport {
    pub fn holds(&self) -> bool {
        self.failed == 0
    }
}

enum Outcome {
    Pass,
    Fail(Value),
    Skip,
}

/// Draws attempts for one trial before giving up.
const ATTEMPTS: usize = 200;

pub fn check_lemma(lemma: Lemma, cfg: &LemmaConfig) -> Result<LemmaReport> {
    if cfg.max_letters > crate::greene::ORACLE_CAP {
        return Err(Error::Resource(format!(
            "max-letters {} exceeds the oracle cap {}",
            cfg.max_letters,
            crate::greene::ORACLE_CAP
        )));
    }
    if lemma.is_word_lemma() && cfg.max_letters < 3 {
        return Err(Error::Domain("word lemmas need at least 3 letters".into()));
    }
    if cfg.max_n == 0 || cfg.max_n > 8 {
        return Err(Error::Resource(format!(
            "tableau size {} outside 1..=8",
            cfg.max_n
        )));
    }
    let outcomes: Vec<Outcome> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| run_trial(lemma, cfg, trial as u64))
        .collect();
    let mut report = LemmaReport {
        lemma,
        trials: cfg.trials,
        seed: cfg.seed,
        passed: 0,
        failed: 0,
        skipped: 0,
        first_counterexample: None,
    };
    for o in outcomes {
        match o {
            Outcome::Pass => report.passed += 1,
            Outcome::Skip => report.skipped += 1,
            Outcome::Fail(v) => {
                report.failed += 1;
                report.first_counterexample.get_or_insert(v);
            }
        }
    }
    Ok(report)
}

fn run_trial(lemma: Lemma, cfg: &LemmaConfig, trial: u64) -> Outcome {
    let mut rng = trial_rng(cfg.seed, trial);
    let result = match lemma {
        Lemma::Lis1 | Lemma::StartSplit | Lemma::EndSplit => word_trial(lemma, cfg, &mut rng),
        Lemma::ColumnSplit => column_split_trial(cfg, &mut rng),
        Lemma::Normalize => normalize_trial(cfg, &mut rng),
        _ => surgery_trial(lemma, cfg, &mut rng),
    };
    result.unwrap_or_else(|e| Outcome::Fail(json!({ "error": e.to_string() })))
}

fn words_json(words: &[Word]) -> Value {
    Value::Array(words.iter().map(|w| Value::String(w.to_string())).collect())
}

fn word_trial<R: Rng>(lemma: Lemma, cfg: &LemmaConfig, rng: &mut R) -> Result<Outcome> {
    let u = rng.gen_range(3..=cfg.max_letters);
    let mut letters: Vec<Letter> = (1..=u as Letter).collect();
    letters.shuffle(rng);
    // A, B, C take a prefix of the shuffled letters; the D words may reuse
    // any letter.
    let used = rng.gen_range(1..=u);
    let cut1 = rng.gen_range(0..=used);
    let cut2 = rng.gen_range(cut1..=used);
    let mut a = letters[..cut1].to_vec();
    let b = letters[cut1..cut2].to_vec();
    let mut c = letters[cut2..used].to_vec();
    match lemma {
        Lemma::StartSplit => a.sort_unstable(),
        Lemma::EndSplit => c.sort_unstable(),
        _ => {}
    }
    let (a, b, c) = (
        Word::from_vec_unchecked(a),
        Word::from_vec_unchecked(b),
        Word::from_vec_unchecked(c),
    );
    let m = rng.gen_range(0..=2);
    let ds: Vec<Word> = (0..m)
        .map(|_| {
            let mut d: Vec<Letter> = (1..=u as Letter).filter(|_| rng.gen_bool(0.4)).collect();
            d.shuffle(rng);
            Word::from_vec_unchecked(d)
        })
        .collect();
    let ab = a.concat(&b)?;
    let bc = b.concat(&c)?;
    let abc = ab.concat(&c)?;
    let second = match lemma {
        Lemma::Lis1 => b.clone(),
        Lemma::StartSplit => ab.clone(),
        _ => bc.clone(),
    };
    let mut lhs_words = vec![abc, second];
    lhs_words.extend(ds.iter().cloned());
    let mut rhs_words = vec![ab, bc];
    rhs_words.extend(ds.iter().cloned());
    let lhs = ell_multi(&lhs_words)?.value;
    let rhs = ell_multi(&rhs_words)?.value;
    Ok(if lhs <= rhs {
        Outcome::Pass
    } else {
        Outcome::Fail(json!({
            "A": a.to_string(), "B": b.to_string(), "C": c.to_string(),
            "D": words_json(&ds), "lhs": lhs, "rhs": rhs,
        }))
    })
}

/// A matrix `M(q, T)` from a random tableau with decreasing row sizes.
fn random_matrix<R: Rng>(
    rng: &mut R,
    max_n: usize,
    max_rows: usize,
    max_q: usize,
) -> Result<(SkewTableau, PathMatrix)> {
    let n = rng.gen_range(1..=max_n);
    let r = rng.gen_range(1..=n.min(max_rows));
    let t = random_tableau(rng, n, r, 3);
    let q = rng.gen_range(1..=max_q);
    let m = PathMatrix::build(&t, q)?;
    Ok((t, m))
}

fn instance_json(m: &PathMatrix, t: &SkewTableau, f: &PathFamily) -> Value {
    json!({
        "tableau": t.to_text(),
        "q": m.q(),
        "family": f.paths().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
    })
}

/// Every legal application of the surgery to `f`.
fn candidates(lemma: Lemma, m: &PathMatrix, f: &PathFamily) -> Vec<(PathFamily, Value)> {
    let k = f.len();
    let mut out = Vec::new();
    for p in 0..k {
        if lemma == Lemma::LeftShift {
            for column in 1..=m.q() {
                for top in 1..=m.r() {
                    let shift = LeftShift { column, top };
                    if let Ok(g) = left_shift(f, p, shift) {
                        out.push((g, json!({ "path": p, "shift": shift })));
                    }
                }
            }
            continue;
        }
        for q in 0..k {
            if p == q {
                continue;
            }
            if lemma == Lemma::Tds {
                for column in 1..=m.q() {
                    if let Ok(g) = top_down_switch(f, p, q, column) {
                        out.push((g, json!({ "p": p, "q": q, "column": column })));
                    }
                }
                continue;
            }
            for row in 1..=m.r() {
                for from in 1..=m.q() {
                    for to in from..=m.q() {
                        let seg = Segment { row, from, to };
                        let g = if lemma == Lemma::RectFlip {
                            rectangular_flip(f, p, q, seg)
                        } else {
                            reverse_rectangular_flip(f, p, q, seg)
                        };
                        if let Ok(g) = g {
                            out.push((g, json!({ "p": p, "q": q, "segment": seg })));
                        }
                    }
                }
            }
        }
    }
    out
}

fn surgery_trial<R: Rng>(lemma: Lemma, cfg: &LemmaConfig, rng: &mut R) -> Result<Outcome> {
    for _ in 0..ATTEMPTS {
        let (t, m) = random_matrix(rng, cfg.max_n, 4, 4)?;
        let k = rng.gen_range(2..=3);
        let f = random_family(rng, &m, k);
        let options = candidates(lemma, &m, &f);
        let Some((g, op)) = options.choose(rng) else {
            continue;
        };
        let before = family_ell(&m, &f)?.value;
        let after = family_ell(&m, g)?.value;
        if after >= before {
            return Ok(Outcome::Pass);
        }
        return Ok(Outcome::Fail(json!({
            "instance": instance_json(&m, &t, &f),
            "operation": op,
            "after": g.paths().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "ell_before": before,
            "ell_after": after,
        })));
    }
    Ok(Outcome::Skip)
}

fn column_split_trial<R: Rng>(cfg: &LemmaConfig, rng: &mut R) -> Result<Outcome> {
    let (t, m) = random_matrix(rng, cfg.max_n, 4, 3)?;
    let k = rng.gen_range(1..=3);
    let f = random_family(rng, &m, k);
    let split = column_split_check(&m, &f)?;
    Ok(if split.holds() {
        Outcome::Pass
    } else {
        Outcome::Fail(json!({
            "instance": instance_json(&m, &t, &f),
            "per_column": split.per_column,
            "direct": split.direct,
        }))
    })
}

fn normalize_trial<R: Rng>(cfg: &LemmaConfig, rng: &mut R) -> Result<Outcome> {
    let n = rng.gen_range(1..=cfg.max_n);
    let r = rng.gen_range(1..=n.min(4));
    let t = random_tableau(rng, n, r, 3);
    let q = rng.gen_range(r..=5.max(r));
    let k = rng.gen_range(1..=r.min(3));
    let m = PathMatrix::build(&t, q)?;
    let f = random_family(rng, &m, k);
    let out = normalize_family(&m, &f)?;
    let problems = check_normalized(q, r, &out.family)?;
    let before = family_ell(&m, &f)?.value;
    let after = family_ell(&m, &out.family)?.value;
    Ok(if problems.is_empty() && after >= before {
        Outcome::Pass
    } else {
        Outcome::Fail(json!({
            "instance": instance_json(&m, &t, &f),
            "normalized": out.family.paths().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "problems": problems,
            "ell_before": before,
            "ell_after": after,
        }))
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfluenceReport {
    pub trials: usize,
    pub seed: u64,
    pub agreed: usize,
    pub first_disagreement: Option<Value>,
}

/// Rectifies random skew tableaux with two independent random slide orders
/// and with the default order, and compares the results.
pub fn check_confluence(trials: usize, seed: u64, max_n: usize) -> ConfluenceReport {
    let results: Vec<Option<Value>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial as u64);
            let n = rng.gen_range(1..=max_n.max(1));
            let t = random_skew_tableau(&mut rng, n, 5, 4);
            let a = rectify_random(&t, &mut rng);
            let b = rectify_random(&t, &mut rng);
            let c = rectify(&t);
            if a.tableau() == b.tableau() && b.tableau() == c.tableau() {
                None
            } else {
                Some(json!({
                    "tableau": t.to_text(),
                    "first": a.tableau().to_text(),
                    "second": b.tableau().to_text(),
                }))
            }
        })
        .collect();
    ConfluenceReport {
        trials,
        seed,
        agreed: results.iter().filter(|r| r.is_none()).count(),
        first_disagreement: results.into_iter().flatten().next(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for l in Lemma::ALL {
            assert_eq!(l.name().parse::<Lemma>().unwrap(), l);
        }
        assert!("lemma-x".parse::<Lemma>().is_err());
    }

    #[test]
    fn small_runs_pass() {
        let cfg = LemmaConfig {
            trials: 40,
            ..Default::default()
        };
        for l in Lemma::ALL {
            let rep = check_lemma(l, &cfg).unwrap();
            assert!(rep.holds(), "{l}: {:?}", rep.first_counterexample);
            assert_eq!(rep.passed + rep.skipped, 40);
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let cfg = LemmaConfig {
            trials: 30,
            seed: 5,
            ..Default::default()
        };
        let a = check_lemma(Lemma::Tds, &cfg).unwrap();
        let b = check_lemma(Lemma::Tds, &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn confluence_small() {
        let rep = check_confluence(50, 1, 10);
        assert_eq!(rep.agreed, 50);
    }

    #[test]
    fn cap_is_checked() {
        let cfg = LemmaConfig {
            max_letters: 30,
            ..Default::default()
        };
        assert!(matches!(
            check_lemma(Lemma::Lis1, &cfg),
            Err(Error::Resource(_))
        ));
    }
}

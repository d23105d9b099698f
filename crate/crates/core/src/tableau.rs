use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Letter = u32;

/// A finite sequence of distinct positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(try_from = "Vec<Letter>", into = "Vec<Letter>")]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.contains(&0) {
            return Err(Error::Word("letters must be positive".into()));
        }
        let mut sorted = letters.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Word(format!("letter {} repeats", w[0])));
        }
        Ok(Word(letters))
    }

    /// Builds a word from single-digit letters, e.g. `"273591468"`.
    pub fn from_digits(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .filter(|&d| d > 0)
                    .ok_or_else(|| Error::Word(format!("'{c}' is not a nonzero digit")))
            })
            .collect::<Result<Vec<_>>>()?;
        Word::new(letters)
    }

    pub(crate) fn from_vec_unchecked(letters: Vec<Letter>) -> Self {
        debug_assert!(Word::new(letters.clone()).is_ok());
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1])
    }

    /// Concatenation; fails if the two words share a letter.
    pub fn concat(&self, other: &Word) -> Result<Word> {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word::new(v)
    }

    pub fn shifted(&self, by: Letter) -> Word {
        Word(self.0.iter().map(|&x| x + by).collect())
    }
}

impl TryFrom<Vec<Letter>> for Word {
    type Error = Error;
    fn try_from(v: Vec<Letter>) -> Result<Self> {
        Word::new(v)
    }
}

impl From<Word> for Vec<Letter> {
    fn from(w: Word) -> Self {
        w.0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// Parses whitespace- or comma-separated positive integers.
impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<Letter>()
                    .map_err(|_| Error::Word(format!("'{t}' is not a positive integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        Word::new(letters)
    }
}

/// Row lengths listed top to bottom.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct Shape(Vec<usize>);

impl Shape {
    pub fn new(parts: Vec<usize>) -> Self {
        Shape(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// The `i`-th part (1-based); zero past the end.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.0.get(i - 1).copied().unwrap_or(0)
        }
    }

    /// Sum of the first `k` parts.
    pub fn prefix_sum(&self, k: usize) -> usize {
        self.0.iter().take(k).sum()
    }

    pub fn is_weakly_decreasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// The first condition a filling fails to satisfy. Rows and columns are
/// 1-based, columns measured from the left margin.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Row {
        row: usize,
        col: usize,
        entry: Letter,
        left: Letter,
    },
    Column {
        row: usize,
        col: usize,
        entry: Letter,
        above: Letter,
    },
    Content {
        detail: String,
    },
    Shape {
        row: usize,
        detail: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Row {
                row,
                col,
                entry,
                left,
            } => write!(
                f,
                "row {row} not increasing at column {col}: {entry} follows {left}"
            ),
            Violation::Column {
                row,
                col,
                entry,
                above,
            } => write!(
                f,
                "column {col} not increasing at row {row}: {entry} lies below {above}"
            ),
            Violation::Content { detail } => write!(f, "entries are not 1..n: {detail}"),
            Violation::Shape { row, detail } => {
                write!(f, "not a skew shape at row {row}: {detail}")
            }
        }
    }
}

/// A skew tableau stored row by row: `inner[i]` empty cells followed by the
/// entries `rows[i]`. Row 0 is the top row.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SkewTableau {
    inner: Vec<usize>,
    rows: Vec<Vec<Letter>>,
    n: usize,
}

impl SkewTableau {
    /// Builds and validates a standard skew tableau.
    pub fn new(inner: Vec<usize>, rows: Vec<Vec<Letter>>) -> Result<Self> {
        if inner.len() > rows.len() && inner[rows.len()..].iter().any(|&x| x > 0) {
            return Err(Error::Shape(
                "inner shape has more nonzero rows than the tableau".into(),
            ));
        }
        let t = SkewTableau::raw(inner, rows);
        t.validate().map_err(Error::NotStandard)?;
        Ok(t)
    }

    /// Builds a filling without checking anything; the inner list is padded
    /// or truncated to the number of rows and empty bottom rows are dropped.
    pub fn raw(mut inner: Vec<usize>, mut rows: Vec<Vec<Letter>>) -> Self {
        while rows.last().is_some_and(|r| r.is_empty()) {
            rows.pop();
        }
        inner.resize(rows.len(), 0);
        let n = rows.iter().map(Vec::len).sum();
        SkewTableau { inner, rows, n }
    }

    /// A tableau of straight shape.
    pub fn straight(rows: Vec<Vec<Letter>>) -> Result<Self> {
        let r = rows.len();
        SkewTableau::new(vec![0; r], rows)
    }

    pub fn empty() -> Self {
        SkewTableau::raw(Vec::new(), Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn inner(&self) -> &[usize] {
        &self.inner
    }

    pub fn outer(&self) -> Vec<usize> {
        self.inner
            .iter()
            .zip(&self.rows)
            .map(|(i, r)| i + r.len())
            .collect()
    }

    pub fn rows(&self) -> &[Vec<Letter>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[Letter] {
        &self.rows[i]
    }

    pub fn is_straight(&self) -> bool {
        self.inner.iter().all(|&x| x == 0)
    }

    pub fn row_sizes(&self) -> Shape {
        Shape(self.rows.iter().map(Vec::len).collect())
    }

    pub fn has_weakly_decreasing_rows(&self) -> bool {
        self.row_sizes().is_weakly_decreasing()
    }

    /// The entry in ambient position (row, col), both 0-based.
    pub fn get(&self, row: usize, col: usize) -> Option<Letter> {
        let r = self.rows.get(row)?;
        let inner = self.inner[row];
        if col < inner {
            None
        } else {
            r.get(col - inner).copied()
        }
    }

    /// For each entry `e` in `1..=n`, the 1-based row holding it (index 0 unused).
    pub fn row_index(&self) -> Vec<usize> {
        let mut out = vec![0; self.n + 1];
        for (i, row) in self.rows.iter().enumerate() {
            for &e in row {
                if let Some(slot) = out.get_mut(e as usize) {
                    *slot = i + 1;
                }
            }
        }
        out
    }

    pub fn is_standard(&self) -> bool {
        self.validate().is_ok()
    }

    /// Checks row strictness, column strictness, content and shape, in that
    /// order, reporting the first failure.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        for (i, row) in self.rows.iter().enumerate() {
            for (j, w) in row.windows(2).enumerate() {
                if w[1] <= w[0] {
                    return Err(Violation::Row {
                        row: i + 1,
                        col: self.inner[i] + j + 2,
                        entry: w[1],
                        left: w[0],
                    });
                }
            }
        }
        for i in 1..self.rows.len() {
            for (j, &e) in self.rows[i].iter().enumerate() {
                let col = self.inner[i] + j;
                if let Some(above) = self.get(i - 1, col) {
                    if e <= above {
                        return Err(Violation::Column {
                            row: i + 1,
                            col: col + 1,
                            entry: e,
                            above,
                        });
                    }
                }
            }
        }
        let mut seen = vec![false; self.n + 1];
        for &e in self.rows.iter().flatten() {
            let e = e as usize;
            if e == 0 || e > self.n {
                return Err(Violation::Content {
                    detail: format!("{e} is outside 1..{}", self.n),
                });
            }
            if seen[e] {
                return Err(Violation::Content {
                    detail: format!("{e} appears twice"),
                });
            }
            seen[e] = true;
        }
        let outer = self.outer();
        for i in 1..self.rows.len() {
            if self.inner[i] > self.inner[i - 1] {
                return Err(Violation::Shape {
                    row: i + 1,
                    detail: format!(
                        "inner part {} exceeds {} above it",
                        self.inner[i],
                        self.inner[i - 1]
                    ),
                });
            }
            if outer[i] > outer[i - 1] {
                return Err(Violation::Shape {
                    row: i + 1,
                    detail: format!("outer part {} exceeds {} above it", outer[i], outer[i - 1]),
                });
            }
        }
        Ok(())
    }

    /// Rows concatenated from the bottom row up, each read left to right.
    pub fn reading_word(&self) -> Word {
        Word(self.rows.iter().rev().flatten().copied().collect())
    }

    /// `T^(k)`: each row followed by `k - 1` copies of itself, copy `j`
    /// shifted up by `(j - 1) n`. Requires weakly decreasing row sizes.
    pub fn attach_copies(&self, k: usize) -> Result<SkewTableau> {
        if k == 0 {
            return Err(Error::ZeroK);
        }
        if !self.has_weakly_decreasing_rows() {
            return Err(Error::RowsNotWeaklyDecreasing(self.row_sizes().0));
        }
        Ok(self.attach_copies_unchecked(k))
    }

    /// The same construction without the row-size check; the result need
    /// not be standard.
    pub fn attach_copies_unchecked(&self, k: usize) -> SkewTableau {
        let n = self.n as Letter;
        let rows = self
            .rows
            .iter()
            .map(|row| {
                (0..k as Letter)
                    .flat_map(|j| row.iter().map(move |&e| e + j * n))
                    .collect()
            })
            .collect();
        SkewTableau::raw(self.inner.clone(), rows)
    }

    /// Renders the text format: one line per row, `.` for inner cells.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (inner, row) in self.inner.iter().zip(&self.rows) {
            let cells: Vec<String> = std::iter::repeat_n(".".to_string(), *inner)
                .chain(row.iter().map(|e| e.to_string()))
                .collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the text format without validating the filling.
    pub fn parse_raw(s: &str) -> Result<Self> {
        let mut inner = Vec::new();
        let mut rows = Vec::new();
        for (lineno, line) in s.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let mut dots = 0;
            let mut row = Vec::new();
            let mut pos = 0;
            for token in line.split(' ') {
                let column = pos + 1;
                pos += token.len() + 1;
                let token = token.trim_end_matches('\r');
                if token.is_empty() {
                    continue;
                }
                if token == "." {
                    if !row.is_empty() {
                        return Err(Error::Parse {
                            line: lineno + 1,
                            column,
                            message: "'.' after an entry".into(),
                        });
                    }
                    dots += 1;
                } else {
                    let e = token
                        .parse::<Letter>()
                        .ok()
                        .filter(|&e| e > 0)
                        .ok_or_else(|| Error::Parse {
                            line: lineno + 1,
                            column,
                            message: format!("expected '.' or a positive integer, found '{token}'"),
                        })?;
                    row.push(e);
                }
            }
            inner.push(dots);
            rows.push(row);
        }
        Ok(SkewTableau::raw(inner, rows))
    }

    pub fn to_json_value(&self) -> TableauJson {
        TableauJson {
            inner: self.inner.clone(),
            rows: self.rows.clone(),
        }
    }
}

impl FromStr for SkewTableau {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = SkewTableau::parse_raw(s)?;
        t.validate().map_err(Error::NotStandard)?;
        Ok(t)
    }
}

impl fmt::Display for SkewTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// JSON form of a tableau: `{"inner":[...],"rows":[[...],...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableauJson {
    pub inner: Vec<usize>,
    pub rows: Vec<Vec<Letter>>,
}

impl TryFrom<TableauJson> for SkewTableau {
    type Error = Error;
    fn try_from(j: TableauJson) -> Result<Self> {
        SkewTableau::new(j.inner, j.rows)
    }
}

impl Serialize for SkewTableau {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_value().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SkewTableau {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = TableauJson::deserialize(d)?;
        SkewTableau::try_from(j).map_err(serde::de::Error::custom)
    }
}

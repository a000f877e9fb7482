//! Ballot and Dyck paths with marked returns.
//!
//! A path is a word over `u`/`d`. Step positions are 1-based and the point
//! reached after step `i` has x-coordinate `i`. Position `i` is a valley when
//! step `i` is `d` and step `i + 1` is `u`; a valley at height 0 is a return.
//! A marked object pairs a path with a subset of its returns.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::qseries::QSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    // `D` sorts before `U`, which gives the enumeration order.
    D,
    U,
}

impl Step {
    pub fn letter(self) -> char {
        match self {
            Step::U => 'u',
            Step::D => 'd',
        }
    }
}

/// A ballot path together with a set of marked returns.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkedBallotPath {
    steps: Vec<Step>,
    marks: Vec<usize>,
}

fn heights(steps: &[Step]) -> impl Iterator<Item = i64> + '_ {
    steps.iter().scan(0i64, |h, s| {
        *h += if *s == Step::U { 1 } else { -1 };
        Some(*h)
    })
}

/// x-coordinates of the valleys of a step word.
pub fn valleys(steps: &[Step]) -> Vec<usize> {
    (1..steps.len())
        .filter(|&i| steps[i - 1] == Step::D && steps[i] == Step::U)
        .collect()
}

/// x-coordinates of the returns of a step word.
pub fn returns(steps: &[Step]) -> Vec<usize> {
    let h: Vec<i64> = heights(steps).collect();
    valleys(steps).into_iter().filter(|&x| h[x - 1] == 0).collect()
}

impl MarkedBallotPath {
    pub fn new(steps: Vec<Step>, marks: Vec<usize>) -> Result<Self> {
        if let Some(pos) = heights(&steps).position(|h| h < 0) {
            return Err(Error::InvalidPath(format!(
                "path goes below the axis at step {}",
                pos + 1
            )));
        }
        if marks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPath(format!(
                "marks must be strictly increasing: {marks:?}"
            )));
        }
        let rets = returns(&steps);
        if let Some(bad) = marks.iter().find(|x| !rets.contains(x)) {
            return Err(Error::InvalidPath(format!("mark at x={bad} is not a return")));
        }
        Ok(MarkedBallotPath { steps, marks })
    }

    pub fn unmarked(steps: Vec<Step>) -> Result<Self> {
        Self::new(steps, Vec::new())
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn marks(&self) -> &[usize] {
        &self.marks
    }

    /// Number of up steps.
    pub fn s(&self) -> usize {
        self.steps.iter().filter(|&&s| s == Step::U).count()
    }

    /// Number of down steps.
    pub fn t(&self) -> usize {
        self.steps.len() - self.s()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn valleys(&self) -> Vec<usize> {
        valleys(&self.steps)
    }

    pub fn returns(&self) -> Vec<usize> {
        returns(&self.steps)
    }

    /// The bare step word, without marks.
    pub fn word(&self) -> String {
        self.steps.iter().map(|s| s.letter()).collect()
    }
}

impl fmt::Display for MarkedBallotPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut marks = self.marks.iter().peekable();
        for (i, s) in self.steps.iter().enumerate() {
            write!(f, "{}", s.letter())?;
            if marks.peek() == Some(&&(i + 1)) {
                f.write_str("|")?;
                marks.next();
            }
        }
        Ok(())
    }
}

impl FromStr for MarkedBallotPath {
    type Err = Error;

    /// Parses the bar notation, e.g. `"ud|udu"`.
    fn from_str(s: &str) -> Result<Self> {
        let mut steps = Vec::new();
        let mut marks = Vec::new();
        for c in s.chars().filter(|c| !c.is_whitespace()) {
            match c {
                'u' | 'U' => steps.push(Step::U),
                'd' | 'D' => steps.push(Step::D),
                '|' => marks.push(steps.len()),
                other => return Err(Error::Parse(format!("unexpected character {other:?} in path"))),
            }
        }
        MarkedBallotPath::new(steps, marks)
    }
}

#[derive(Serialize, Deserialize)]
struct PathJson {
    steps: String,
    marks: Vec<usize>,
}

impl Serialize for MarkedBallotPath {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PathJson {
            steps: self.word(),
            marks: self.marks.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MarkedBallotPath {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = PathJson::deserialize(deserializer)?;
        let bare: MarkedBallotPath = raw.steps.parse().map_err(D::Error::custom)?;
        MarkedBallotPath::new(bare.steps, raw.marks).map_err(D::Error::custom)
    }
}

/// All ballot words with `s` ups and `t` downs, in lexicographic order with
/// `d < u`.
pub fn ballot_words(s: usize, t: usize) -> Vec<Vec<Step>> {
    fn rec(ups: usize, downs: usize, s: usize, t: usize, cur: &mut Vec<Step>, out: &mut Vec<Vec<Step>>) {
        if ups == s && downs == t {
            out.push(cur.clone());
            return;
        }
        if downs < t && downs < ups {
            cur.push(Step::D);
            rec(ups, downs + 1, s, t, cur, out);
            cur.pop();
        }
        if ups < s {
            cur.push(Step::U);
            rec(ups + 1, downs, s, t, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if t <= s {
        rec(0, 0, s, t, &mut Vec::with_capacity(s + t), &mut out);
    }
    out
}

/// Expands each word into its marked objects. Mark subsets follow a binary
/// counter over the path's returns, lowest return in the lowest bit.
fn marked_objects<F: Fn(usize) -> bool>(words: Vec<Vec<Step>>, keep: F) -> Vec<MarkedBallotPath> {
    let mut out = Vec::new();
    for steps in words {
        let rets = returns(&steps);
        for mask in 0u64..(1u64 << rets.len()) {
            if !keep(mask.count_ones() as usize) {
                continue;
            }
            let marks = rets
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &x)| x)
                .collect();
            out.push(MarkedBallotPath {
                steps: steps.clone(),
                marks,
            });
        }
    }
    out
}

/// `D_{s,t}^{(r)}`: marked ballot paths from `(0,0)` to `(s+t, s-t)` with at
/// least `r` marked returns.
pub fn enumerate_marked_paths(s: usize, t: usize, min_marks: usize) -> Result<Vec<MarkedBallotPath>> {
    if s < t {
        return Err(Error::InvalidParameters(format!(
            "ballot paths need s >= t, got s={s}, t={t}"
        )));
    }
    Ok(marked_objects(ballot_words(s, t), |k| k >= min_marks))
}

/// `E_s^{(r)}`: Dyck paths of length `2s` with exactly `r` marked returns.
pub fn enumerate_exact_marks(s: usize, r: usize) -> Vec<MarkedBallotPath> {
    marked_objects(ballot_words(s, s), |k| k == r)
}

/// `E_d(r_1, ..., r_{m-1})`: Dyck paths of length `2d` marked exactly at
/// `2 r_1, ..., 2 r_{m-1}`, each of which must be a return.
pub fn enumerate_fixed_returns(d: usize, positions: &[usize]) -> Result<Vec<MarkedBallotPath>> {
    if positions.windows(2).any(|w| w[0] >= w[1])
        || positions.iter().any(|&r| r == 0 || r >= d)
    {
        return Err(Error::InvalidParameters(format!(
            "positions must satisfy 0 < r_1 < ... < d, got {positions:?} with d={d}"
        )));
    }
    let marks: Vec<usize> = positions.iter().map(|r| 2 * r).collect();
    let want: BTreeSet<usize> = marks.iter().copied().collect();
    Ok(ballot_words(d, d)
        .into_iter()
        .filter(|w| {
            let rets: BTreeSet<usize> = returns(w).into_iter().collect();
            want.is_subset(&rets)
        })
        .map(|steps| MarkedBallotPath {
            steps,
            marks: marks.clone(),
        })
        .collect())
}

/// Sum of valley x-coordinates.
pub fn maj(p: &MarkedBallotPath) -> u64 {
    p.valleys().iter().map(|&x| x as u64).sum()
}

/// `maj` minus half the sum of marked x-coordinates.
pub fn vmr(p: &MarkedBallotPath) -> u64 {
    let half: u64 = p.marks.iter().map(|&x| x as u64).sum::<u64>() / 2;
    maj(p) - half
}

/// `sum q^{vmr}` over a finite collection, keeping exponents up to
/// `precision`.
pub fn gf_vmr(objects: &[MarkedBallotPath], precision: usize) -> QSeries {
    gf_by(objects, precision, vmr)
}

/// `sum q^{stat(p)}` for an arbitrary statistic.
pub fn gf_by<F: Fn(&MarkedBallotPath) -> u64>(
    objects: &[MarkedBallotPath],
    precision: usize,
    stat: F,
) -> QSeries {
    let mut coeffs = vec![BigInt::from(0); precision + 1];
    for p in objects {
        let e = stat(p) as usize;
        if e <= precision {
            coeffs[e] += BigInt::one();
        }
    }
    QSeries::from_coeffs(coeffs, precision)
}

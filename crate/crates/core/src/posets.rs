//! The poset `S_β`, an ordinal sum of `2 × b_l` grids indexed by a
//! composition `β`, together with its linear extensions and order-reversing
//! maps (poset partitions).
//!
//! Element `(i, j)` belongs to block `l` when `i ∈ {l, l+1}` and
//! `r_{l-1} < j ≤ r_l`. Elements are ordered coordinatewise and carry the
//! natural labeling `ν(i, j) = r_{l-1} + j + (i - l) b_l`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice_paths::{MarkedBallotPath, Step};

/// A sequence of positive integers `(b_1, ..., b_m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidComposition("composition must be nonempty".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidComposition(format!(
                "parts must be positive: {parts:?}"
            )));
        }
        Ok(Composition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of parts `m`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Sum of the parts `d`.
    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `(r_0, r_1, ..., r_m)` with `r_0 = 0` and `r_m = d`.
    pub fn partial_sums(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.parts.len() + 1);
        out.push(0);
        for b in &self.parts {
            out.push(out.last().unwrap() + b);
        }
        out
    }

    /// `r_1, ..., r_{m-1}`: where consecutive blocks meet.
    pub fn interior_sums(&self) -> Vec<usize> {
        let r = self.partial_sums();
        r[1..r.len() - 1].to_vec()
    }

    /// Every composition of `d`, ordered by the binary word of cut points.
    pub fn all_of(d: usize) -> Vec<Composition> {
        if d == 0 {
            return Vec::new();
        }
        (0u64..(1u64 << (d - 1)))
            .map(|cuts| {
                let mut parts = Vec::new();
                let mut len = 1;
                for k in 0..d - 1 {
                    if cuts >> k & 1 == 1 {
                        parts.push(len);
                        len = 1;
                    } else {
                        len += 1;
                    }
                }
                parts.push(len);
                Composition { parts }
            })
            .collect()
    }

    /// Compositions of `d` with exactly `m` parts.
    pub fn with_parts(d: usize, m: usize) -> Vec<Composition> {
        Composition::all_of(d)
            .into_iter()
            .filter(|c| c.len() == m)
            .collect()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|b| b.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for Composition {
    type Err = Error;

    /// Accepts `2,3,1,2`, `(2,3,1,2)` or `[2, 3, 1, 2]`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_matches(|c| matches!(c, '(' | ')' | '[' | ']'));
        let parts = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Composition::new(parts)
    }
}

impl Serialize for Composition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Composition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Composition::new(Vec::deserialize(d)?).map_err(D::Error::custom)
    }
}

/// `S_β` with its elements stored in label order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SBetaStructure {
    beta: Composition,
    /// `coords[ν - 1] = (i, j)`.
    coords: Vec<(usize, usize)>,
    /// `below[ν - 1]`: labels of the elements strictly below, ascending.
    below: Vec<Vec<usize>>,
}

impl SBetaStructure {
    pub fn new(beta: Composition) -> Self {
        let r = beta.partial_sums();
        let d = beta.total();
        let mut coords = vec![(0, 0); 2 * d];
        for (l0, &b) in beta.parts().iter().enumerate() {
            let l = l0 + 1;
            for i in [l, l + 1] {
                for j in r[l0] + 1..=r[l] {
                    let nu = r[l0] + j + (i - l) * b;
                    coords[nu - 1] = (i, j);
                }
            }
        }
        let below = coords
            .iter()
            .map(|&(i, j)| {
                coords
                    .iter()
                    .enumerate()
                    .filter(|&(_, &(a, b))| (a, b) != (i, j) && a <= i && b <= j)
                    .map(|(k, _)| k + 1)
                    .collect()
            })
            .collect();
        SBetaStructure { beta, coords, below }
    }

    pub fn beta(&self) -> &Composition {
        &self.beta
    }

    pub fn size(&self) -> usize {
        self.coords.len()
    }

    /// `(i, j)` of the element with label `nu`.
    pub fn coords(&self, nu: usize) -> (usize, usize) {
        self.coords[nu - 1]
    }

    pub fn label(&self, i: usize, j: usize) -> Option<usize> {
        self.coords.iter().position(|&c| c == (i, j)).map(|k| k + 1)
    }

    /// `(i, j, ν)` triples in label order.
    pub fn labels(&self) -> Vec<(usize, usize, usize)> {
        self.coords
            .iter()
            .enumerate()
            .map(|(k, &(i, j))| (i, j, k + 1))
            .collect()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        let (i1, j1) = self.coords(a);
        let (i2, j2) = self.coords(b);
        i1 <= i2 && j1 <= j2
    }

    /// Labels strictly below `nu`.
    pub fn below(&self, nu: usize) -> &[usize] {
        &self.below[nu - 1]
    }

    /// Number of rows, `m + 1`.
    pub fn row_count(&self) -> usize {
        self.beta.len() + 1
    }

    /// Labels of row `i` (1-based) from left to right.
    pub fn row_labels(&self, i: usize) -> Vec<usize> {
        let mut row: Vec<(usize, usize)> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| c.0 == i)
            .map(|(k, c)| (c.1, k + 1))
            .collect();
        row.sort();
        row.into_iter().map(|(_, nu)| nu).collect()
    }

    /// Whether the labeling is natural: `x < y` implies `ν(x) < ν(y)`.
    pub fn is_naturally_labeled(&self) -> bool {
        (1..=self.size()).all(|b| self.below(b).iter().all(|&a| a < b))
    }
}

impl Serialize for SBetaStructure {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Json<'a> {
            beta: &'a Composition,
            labels: Vec<[usize; 3]>,
        }
        Json {
            beta: &self.beta,
            labels: self.labels().into_iter().map(|(i, j, n)| [i, j, n]).collect(),
        }
        .serialize(s)
    }
}

pub fn build_s_beta(beta: Composition) -> SBetaStructure {
    SBetaStructure::new(beta)
}

/// A linear extension of `S_β`, written as the sequence of labels in the
/// order they are visited.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearExtensionWord {
    beta: Composition,
    word: Vec<usize>,
}

impl LinearExtensionWord {
    pub fn new(s: &SBetaStructure, word: Vec<usize>) -> Result<Self> {
        if !is_linear_extension(s, &word) {
            return Err(Error::InvalidParameters(format!(
                "{word:?} is not a linear extension of S_{}",
                s.beta()
            )));
        }
        Ok(LinearExtensionWord {
            beta: s.beta().clone(),
            word,
        })
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn beta(&self) -> &Composition {
        &self.beta
    }
}

impl Serialize for LinearExtensionWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.word.serialize(s)
    }
}

impl fmt::Display for LinearExtensionWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.word.iter().map(|v| v.to_string()).collect();
        f.write_str(&s.join(" "))
    }
}

pub fn is_linear_extension(s: &SBetaStructure, word: &[usize]) -> bool {
    let n = s.size();
    if word.len() != n {
        return false;
    }
    let mut pos = vec![usize::MAX; n + 1];
    for (k, &v) in word.iter().enumerate() {
        if v == 0 || v > n || pos[v] != usize::MAX {
            return false;
        }
        pos[v] = k;
    }
    (1..=n).all(|b| s.below(b).iter().all(|&a| pos[a] < pos[b]))
}

/// Dyck words of semilength `b` in lexicographic order with `d < u`.
fn dyck_words(b: usize) -> Vec<Vec<Step>> {
    crate::lattice_paths::ballot_words(b, b)
}

/// Linear extensions of `2 × b` on local labels: the `k`-th up step takes
/// top label `k`, the `k`-th down step bottom label `b + k`.
fn block_extensions(b: usize) -> Vec<Vec<usize>> {
    dyck_words(b)
        .into_iter()
        .map(|w| {
            let (mut top, mut bottom) = (0, b);
            w.into_iter()
                .map(|s| match s {
                    Step::U => {
                        top += 1;
                        top
                    }
                    Step::D => {
                        bottom += 1;
                        bottom
                    }
                })
                .collect()
        })
        .collect()
}

/// All linear extensions, built as concatenations of per-block extensions
/// shifted by `2 r_{i-1}`. The first block varies slowest.
pub fn linear_extensions(s: &SBetaStructure) -> Vec<LinearExtensionWord> {
    let r = s.beta().partial_sums();
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    for (i, &b) in s.beta().parts().iter().enumerate() {
        let shift = 2 * r[i];
        let blocks = block_extensions(b);
        words = words
            .into_iter()
            .flat_map(|prefix| {
                blocks.iter().map(move |blk| {
                    let mut w = prefix.clone();
                    w.extend(blk.iter().map(|v| v + shift));
                    w
                })
            })
            .collect();
    }
    words
        .into_iter()
        .map(|word| LinearExtensionWord {
            beta: s.beta().clone(),
            word,
        })
        .collect()
}

/// Linear extensions by plain backtracking over the whole poset, in
/// lexicographic order of words. Used to cross-check the blockwise generator.
pub fn linear_extensions_generic(s: &SBetaStructure) -> Vec<Vec<usize>> {
    fn rec(s: &SBetaStructure, used: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let n = s.size();
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 1..=n {
            if !used[v] && s.below(v).iter().all(|&a| used[a]) {
                used[v] = true;
                cur.push(v);
                rec(s, used, cur, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(s, &mut vec![false; s.size() + 1], &mut Vec::new(), &mut out);
    out
}

/// Sum of the 1-based positions `k` with `w_k > w_{k+1}`.
pub fn maj_word(w: &[usize]) -> u64 {
    w.windows(2)
        .enumerate()
        .filter(|(_, p)| p[0] > p[1])
        .map(|(k, _)| k as u64 + 1)
        .sum()
}

/// `Σ_w q^{maj(w)}` over all linear extensions, as a polynomial.
pub fn extension_maj_polynomial(s: &SBetaStructure) -> Vec<BigInt> {
    let mut poly: Vec<BigInt> = Vec::new();
    for w in linear_extensions(s) {
        let e = maj_word(w.word()) as usize;
        if poly.len() <= e {
            poly.resize(e + 1, BigInt::from(0));
        }
        poly[e] += 1;
    }
    poly
}

/// Reads each block of `w` as a Dyck word (`u` for top-row labels, `d` for
/// bottom-row labels) and joins the blocks with marks at `2 r_i`, `i < m`.
pub fn word_to_dyck(w: &LinearExtensionWord) -> MarkedBallotPath {
    let beta = w.beta();
    let r = beta.partial_sums();
    let mut steps = Vec::with_capacity(w.word.len());
    let mut k = 0;
    for (i, &b) in beta.parts().iter().enumerate() {
        for &v in &w.word[k..k + 2 * b] {
            let local = v - 2 * r[i];
            steps.push(if local <= b { Step::U } else { Step::D });
        }
        k += 2 * b;
    }
    let marks = beta.interior_sums().iter().map(|x| 2 * x).collect();
    MarkedBallotPath::new(steps, marks).expect("block boundaries of a Dyck concatenation are returns")
}

/// An order-reversing map from `S_β` to the nonnegative integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PosetPartition {
    beta: Composition,
    /// `values[ν - 1]`.
    values: Vec<u64>,
}

impl PosetPartition {
    /// Builds from values indexed by label, checking the order condition.
    pub fn from_values(s: &SBetaStructure, values: Vec<u64>) -> Result<Self> {
        if values.len() != s.size() {
            return Err(Error::InvalidPosetPartition(format!(
                "expected {} values, got {}",
                s.size(),
                values.len()
            )));
        }
        for b in 1..=s.size() {
            for &a in s.below(b) {
                if values[a - 1] < values[b - 1] {
                    let (i1, j1) = s.coords(a);
                    let (i2, j2) = s.coords(b);
                    return Err(Error::InvalidPosetPartition(format!(
                        "value at ({i1},{j1}) is {} but ({i2},{j2}) above it has {}",
                        values[a - 1],
                        values[b - 1]
                    )));
                }
            }
        }
        Ok(PosetPartition {
            beta: s.beta().clone(),
            values,
        })
    }

    /// Builds from rows listed top to bottom, left to right.
    pub fn from_rows(beta: Composition, rows: &[Vec<u64>]) -> Result<Self> {
        let s = SBetaStructure::new(beta);
        if rows.len() != s.row_count() {
            return Err(Error::InvalidPosetPartition(format!(
                "expected {} rows, got {}",
                s.row_count(),
                rows.len()
            )));
        }
        let mut values = vec![0; s.size()];
        for (i, row) in rows.iter().enumerate() {
            let labels = s.row_labels(i + 1);
            if labels.len() != row.len() {
                return Err(Error::InvalidPosetPartition(format!(
                    "row {} should have {} entries, got {}",
                    i + 1,
                    labels.len(),
                    row.len()
                )));
            }
            for (nu, &v) in labels.iter().zip(row) {
                values[nu - 1] = v;
            }
        }
        PosetPartition::from_values(&s, values)
    }

    pub fn beta(&self) -> &Composition {
        &self.beta
    }

    pub fn structure(&self) -> SBetaStructure {
        SBetaStructure::new(self.beta.clone())
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn value(&self, nu: usize) -> u64 {
        self.values[nu - 1]
    }

    pub fn weight(&self) -> u64 {
        self.values.iter().sum()
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        let s = self.structure();
        (1..=s.row_count())
            .map(|i| s.row_labels(i).iter().map(|&nu| self.values[nu - 1]).collect())
            .collect()
    }
}

impl fmt::Display for PosetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        f.write_str(&rows.join(" / "))
    }
}

#[derive(Serialize, Deserialize)]
struct PosetPartitionJson {
    beta: Composition,
    rows: Vec<Vec<u64>>,
}

impl Serialize for PosetPartition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PosetPartitionJson {
            beta: self.beta.clone(),
            rows: self.rows(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PosetPartition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PosetPartitionJson::deserialize(d)?;
        PosetPartition::from_rows(raw.beta, &raw.rows).map_err(D::Error::custom)
    }
}

/// Depth-first search over order-reversing maps of weight at most
/// `max_weight`, assigning values in label order. Each element is bounded by
/// the smallest value below it and by the weight still available.
fn search<F: FnMut(&[u64], u64)>(s: &SBetaStructure, max_weight: u64, mut leaf: F) {
    fn rec<F: FnMut(&[u64], u64)>(
        s: &SBetaStructure,
        k: usize,
        remaining: u64,
        values: &mut Vec<u64>,
        leaf: &mut F,
        max_weight: u64,
    ) {
        if k == s.size() {
            leaf(values, max_weight - remaining);
            return;
        }
        let cap = s
            .below(k + 1)
            .iter()
            .map(|&a| values[a - 1])
            .min()
            .unwrap_or(u64::MAX)
            .min(remaining);
        for v in 0..=cap {
            values.push(v);
            rec(s, k + 1, remaining - v, values, leaf, max_weight);
            values.pop();
        }
    }
    rec(s, 0, max_weight, &mut Vec::with_capacity(s.size()), &mut leaf, max_weight);
}

/// Number of poset partitions of each weight `0..=max_weight`.
pub fn enumerate_poset_partitions(s: &SBetaStructure, max_weight: usize) -> Vec<u64> {
    let mut hist = vec![0u64; max_weight + 1];
    search(s, max_weight as u64, |_, w| hist[w as usize] += 1);
    hist
}

/// Every poset partition of weight at most `max_weight`, materialized.
pub fn list_poset_partitions(s: &SBetaStructure, max_weight: usize) -> Vec<PosetPartition> {
    let mut out = Vec::new();
    search(s, max_weight as u64, |v, _| {
        out.push(PosetPartition {
            beta: s.beta().clone(),
            values: v.to_vec(),
        })
    });
    out
}

//! Integer partitions, Frobenius symbols, successive ranks and parity blocks,
//! plus the brute-force counts `a^±_m(n; d)` and their marginals.
//!
//! Counting enumerates Frobenius symbols directly: two strictly decreasing
//! rows of length `d` whose entries sum to `n - d`. Nothing here consults a
//! closed form.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::sign::{sign_word, Sign};

/// A weakly decreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition("parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "parts must be weakly decreasing: {parts:?}"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The number being partitioned.
    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Column lengths of the Ferrers graph.
    pub fn conjugate(&self) -> Partition {
        let largest = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=largest)
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Side of the largest square fitting in the Ferrers graph.
    pub fn durfee_side(&self) -> usize {
        self.parts
            .iter()
            .enumerate()
            .take_while(|(i, &p)| p as usize > *i)
            .count()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("()");
        }
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        f.write_str(&s.join("+"))
    }
}

/// All partitions of `n` in reverse-lexicographic order.
pub fn enumerate_partitions(n: u32) -> Vec<Partition> {
    fn rec(remaining: u32, max_part: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=max_part.min(remaining)).rev() {
            cur.push(p);
            rec(remaining - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Two strictly decreasing rows of nonnegative integers of equal length.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FrobeniusSymbol {
    top: Vec<u32>,
    bottom: Vec<u32>,
}

fn strictly_decreasing(row: &[u32]) -> bool {
    row.windows(2).all(|w| w[0] > w[1])
}

impl FrobeniusSymbol {
    pub fn new(top: Vec<u32>, bottom: Vec<u32>) -> Result<Self> {
        if top.is_empty() || top.len() != bottom.len() {
            return Err(Error::InvalidSymbol(format!(
                "rows must be nonempty and of equal length, got {} and {}",
                top.len(),
                bottom.len()
            )));
        }
        if !strictly_decreasing(&top) || !strictly_decreasing(&bottom) {
            return Err(Error::InvalidSymbol(format!(
                "rows must be strictly decreasing: {top:?} / {bottom:?}"
            )));
        }
        Ok(FrobeniusSymbol { top, bottom })
    }

    pub fn top(&self) -> &[u32] {
        &self.top
    }

    pub fn bottom(&self) -> &[u32] {
        &self.bottom
    }

    /// Number of columns, equal to the Durfee side of the partition.
    pub fn columns(&self) -> usize {
        self.top.len()
    }

    /// Size of the represented partition, `sum(x) + sum(y) + d`.
    pub fn size(&self) -> u64 {
        let s: u64 = self.top.iter().chain(&self.bottom).map(|&v| v as u64).sum();
        s + self.columns() as u64
    }

    pub fn successive_ranks(&self) -> Vec<i64> {
        successive_ranks(self)
    }

    pub fn parity_blocks(&self) -> ParityBlocks {
        parity_blocks(self)
    }

    /// Renders the symbol with bars between parity blocks, e.g.
    /// `(3 | 2 1 / 5 | 1 0)`.
    pub fn to_block_notation(&self) -> String {
        let blocks = self.parity_blocks();
        let row = |r: &[u32]| {
            let mut out = Vec::new();
            let mut start = 0;
            for &size in blocks.sizes() {
                let chunk: Vec<String> =
                    r[start..start + size].iter().map(|v| v.to_string()).collect();
                out.push(chunk.join(" "));
                start += size;
            }
            out.join(" | ")
        };
        format!("({} / {})", row(&self.top), row(&self.bottom))
    }
}

impl fmt::Display for FrobeniusSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |r: &[u32]| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
        write!(f, "({} / {})", row(&self.top), row(&self.bottom))
    }
}

impl FromStr for FrobeniusSymbol {
    type Err = Error;

    /// Accepts `"6 3 2 / 6 4 1"` (bars and parentheses ignored) or the JSON
    /// form `{"top": [...], "bottom": [...]}`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.starts_with('{') {
            #[derive(Deserialize)]
            struct Raw {
                top: Vec<u32>,
                bottom: Vec<u32>,
            }
            let raw: Raw = serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()))?;
            return FrobeniusSymbol::new(raw.top, raw.bottom);
        }
        let cleaned: String = t
            .chars()
            .map(|c| if matches!(c, '(' | ')' | '|' | ',') { ' ' } else { c })
            .collect();
        let mut rows = cleaned.split('/');
        let (Some(a), Some(b), None) = (rows.next(), rows.next(), rows.next()) else {
            return Err(Error::Parse(format!("expected `top / bottom`, got {s:?}")));
        };
        let parse_row = |r: &str| {
            r.split_whitespace()
                .map(|v| v.parse::<u32>().map_err(|e| Error::Parse(format!("{v:?}: {e}"))))
                .collect::<Result<Vec<_>>>()
        };
        FrobeniusSymbol::new(parse_row(a)?, parse_row(b)?)
    }
}

/// Reads arms and legs along the main diagonal.
pub fn to_frobenius(p: &Partition) -> Result<FrobeniusSymbol> {
    if p.is_empty() {
        return Err(Error::EmptyPartition);
    }
    let d = p.durfee_side();
    let conj = p.conjugate();
    let top = (0..d).map(|i| p.parts[i] - (i as u32 + 1)).collect();
    let bottom = (0..d).map(|i| conj.parts[i] - (i as u32 + 1)).collect();
    FrobeniusSymbol::new(top, bottom)
}

/// Rebuilds the partition from its diagonal arms and legs.
pub fn from_frobenius(f: &FrobeniusSymbol) -> Partition {
    let d = f.columns();
    let mut parts: Vec<u32> = (0..d).map(|i| f.top[i] + i as u32 + 1).collect();
    // Column i has length y_i + i (1-based); rows below the diagonal count
    // the columns reaching them.
    let col_len: Vec<u32> = (0..d).map(|i| f.bottom[i] + i as u32 + 1).collect();
    let depth = col_len[0];
    for row in (d as u32 + 1)..=depth {
        parts.push(col_len.iter().filter(|&&c| c >= row).count() as u32);
    }
    Partition { parts }
}

pub fn successive_ranks(f: &FrobeniusSymbol) -> Vec<i64> {
    f.top
        .iter()
        .zip(&f.bottom)
        .map(|(&x, &y)| x as i64 - y as i64)
        .collect()
}

/// Maximal runs of same-sign columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParityBlocks {
    sizes: Vec<usize>,
    #[serde(serialize_with = "serialize_signs")]
    signs: Vec<Sign>,
    #[serde(skip)]
    column_ranks: Vec<i64>,
}

fn serialize_signs<S: Serializer>(signs: &[Sign], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&sign_word(signs))
}

impl ParityBlocks {
    /// Decomposes a rank sequence into maximal same-sign runs.
    pub fn from_ranks(ranks: &[i64]) -> Self {
        let mut sizes = Vec::new();
        let mut signs: Vec<Sign> = Vec::new();
        for &r in ranks {
            let s = Sign::of_rank(r);
            match signs.last() {
                Some(&last) if last == s => *sizes.last_mut().unwrap() += 1,
                _ => {
                    signs.push(s);
                    sizes.push(1);
                }
            }
        }
        ParityBlocks {
            sizes,
            signs,
            column_ranks: ranks.to_vec(),
        }
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn column_ranks(&self) -> &[i64] {
        &self.column_ranks
    }

    /// Number of blocks `m`.
    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    pub fn last_sign(&self) -> Option<Sign> {
        self.signs.last().copied()
    }

    pub fn sign_word(&self) -> String {
        sign_word(&self.signs)
    }
}

pub fn parity_blocks(f: &FrobeniusSymbol) -> ParityBlocks {
    ParityBlocks::from_ranks(&successive_ranks(f))
}

/// Calls `visit` on every strictly decreasing sequence of `len` values below
/// `bound` summing to `sum`, largest first entry first.
fn for_each_strict<F: FnMut(&[u32])>(len: usize, sum: u32, bound: u32, visit: &mut F) {
    fn rec<F: FnMut(&[u32])>(len: usize, sum: u32, bound: u32, cur: &mut Vec<u32>, visit: &mut F) {
        if len == 0 {
            if sum == 0 {
                visit(cur);
            }
            return;
        }
        // Remaining entries after this one need at least 0 + 1 + ... + (len - 2).
        let tail_min = ((len - 1) * (len.saturating_sub(2)) / 2) as u32;
        if sum < tail_min + (len as u32 - 1) {
            return;
        }
        let hi = bound.saturating_sub(1).min(sum - tail_min);
        let lo = len as u32 - 1;
        if hi < lo {
            return;
        }
        for v in (lo..=hi).rev() {
            // The remaining len-1 entries are < v, so they sum to at most
            // (v-1) + (v-2) + ... + (v-len+1).
            let k = len as u32 - 1;
            let tail_max = k * v - k * (k + 1) / 2;
            if sum - v > tail_max {
                break;
            }
            cur.push(v);
            rec(len - 1, sum - v, v, cur, visit);
            cur.pop();
        }
    }
    rec(len, sum, bound, &mut Vec::with_capacity(len), visit);
}

/// Visits every Frobenius symbol of size `n` with `d` columns, as borrowed
/// rows. Order: reverse-lexicographic on the top row, then the bottom row.
pub fn for_each_symbol<F: FnMut(&[u32], &[u32])>(n: u64, d: usize, mut visit: F) {
    if d == 0 || n < (d * d) as u64 {
        return;
    }
    let total = (n - d as u64) as u32;
    let min_row = (d * (d - 1) / 2) as u32;
    if total < 2 * min_row {
        return;
    }
    for top_sum in (min_row..=total - min_row).rev() {
        let mut tops: Vec<Vec<u32>> = Vec::new();
        for_each_strict(d, top_sum, u32::MAX, &mut |t| tops.push(t.to_vec()));
        let bottom_sum = total - top_sum;
        let mut bottoms: Vec<Vec<u32>> = Vec::new();
        for_each_strict(d, bottom_sum, u32::MAX, &mut |b| bottoms.push(b.to_vec()));
        for t in &tops {
            for b in &bottoms {
                visit(t, b);
            }
        }
    }
}

/// All Frobenius symbols of size `n` with exactly `d` columns.
pub fn frobenius_symbols(n: u64, d: usize) -> Vec<FrobeniusSymbol> {
    let mut out = Vec::new();
    for_each_symbol(n, d, |t, b| {
        out.push(FrobeniusSymbol {
            top: t.to_vec(),
            bottom: b.to_vec(),
        })
    });
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Block count and last-block sign computed from borrowed rows.
fn block_signature(top: &[u32], bottom: &[u32]) -> (usize, Sign) {
    let mut blocks = 0;
    let mut last = None;
    for (&x, &y) in top.iter().zip(bottom) {
        let s = Sign::of_rank(x as i64 - y as i64);
        if last != Some(s) {
            blocks += 1;
            last = Some(s);
        }
    }
    (blocks, last.expect("symbols have at least one column"))
}

/// Census of symbols of size `n` with `d` columns by block count and
/// last-block sign. Entry `[m][sign]` with `sign` 0 = plus, 1 = minus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockCensus {
    counts: Vec<[u64; 2]>,
}

impl BlockCensus {
    pub fn of(n: u64, d: usize) -> Self {
        let mut counts = vec![[0u64; 2]; d + 1];
        for_each_symbol(n, d, |t, b| {
            let (m, s) = block_signature(t, b);
            counts[m][sign_index(s)] += 1;
        });
        BlockCensus { counts }
    }

    pub fn get(&self, m: usize, sign: Sign) -> u64 {
        self.counts.get(m).map_or(0, |c| c[sign_index(sign)])
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().map(|c| c[0] + c[1]).sum()
    }

    pub fn by_sign(&self, sign: Sign) -> u64 {
        self.counts.iter().map(|c| c[sign_index(sign)]).sum()
    }
}

fn sign_index(s: Sign) -> usize {
    match s {
        Sign::Plus => 0,
        Sign::Minus => 1,
    }
}

/// Largest possible column count for a partition of `n`.
pub fn durfee_bound(n: u64) -> usize {
    let mut d = 0usize;
    while ((d + 1) * (d + 1)) as u64 <= n {
        d += 1;
    }
    d
}

/// `a^±_m(n; d)`: partitions of `n` with exactly `d` columns and `m` parity
/// blocks, the last block having the given sign.
pub fn count_a(n: u64, d: usize, m: usize, sign: Sign) -> u64 {
    if m == 0 || m > d || n == 0 {
        return 0;
    }
    let mut count = 0;
    for_each_symbol(n, d, |t, b| {
        if block_signature(t, b) == (m, sign) {
            count += 1;
        }
    });
    count
}

/// `a^±_m(n)`, summed over all column counts.
pub fn count_a_by_blocks(n: u64, m: usize, sign: Sign) -> u64 {
    (1..=durfee_bound(n)).map(|d| count_a(n, d, m, sign)).sum()
}

/// `a^±(n; d)`, summed over all block counts.
pub fn count_a_by_columns(n: u64, d: usize, sign: Sign) -> u64 {
    if n == 0 {
        return 0;
    }
    BlockCensus::of(n, d).by_sign(sign)
}

/// Partitions of `n` with exactly `d` columns, including the empty partition
/// as the single partition of 0 with 0 columns.
pub fn count_all_columns(n: u64, d: usize) -> u64 {
    if d == 0 {
        return u64::from(n == 0);
    }
    let mut count = 0;
    for_each_symbol(n, d, |_, _| count += 1);
    count
}

fn check_alternating(pattern: &[Sign]) -> Result<()> {
    if pattern.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidPattern(format!(
            "pattern {} does not alternate",
            sign_word(pattern)
        )));
    }
    Ok(())
}

/// Partitions of `n >= 1` whose block sign word starts with `pattern`.
pub fn count_prefix_pattern(n: u64, pattern: &[Sign]) -> Result<u64> {
    check_alternating(pattern)?;
    let mut count = 0;
    for d in 1..=durfee_bound(n) {
        for_each_symbol(n, d, |t, b| {
            if sign_word_starts_with(t, b, pattern) {
                count += 1;
            }
        });
    }
    Ok(count)
}

fn sign_word_starts_with(top: &[u32], bottom: &[u32], pattern: &[Sign]) -> bool {
    let mut k = 0;
    let mut last = None;
    for (&x, &y) in top.iter().zip(bottom) {
        let s = Sign::of_rank(x as i64 - y as i64);
        if last != Some(s) {
            if k == pattern.len() {
                return true;
            }
            if pattern[k] != s {
                return false;
            }
            k += 1;
            last = Some(s);
        }
    }
    k == pattern.len()
}

/// Symbols of size `n` with `d` columns, `m` blocks and the given last sign.
pub fn list_a(n: u64, d: usize, m: usize, sign: Sign) -> Vec<FrobeniusSymbol> {
    frobenius_symbols(n, d)
        .into_iter()
        .filter(|f| {
            let b = f.parity_blocks();
            b.count() == m && b.last_sign() == Some(sign)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(t: &[u32], b: &[u32]) -> FrobeniusSymbol {
        FrobeniusSymbol::new(t.to_vec(), b.to_vec()).unwrap()
    }

    #[test]
    fn enumerate_small() {
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        let p4: Vec<Vec<u32>> = enumerate_partitions(4).into_iter().map(|p| p.parts).collect();
        assert_eq!(p4, vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]);
        assert_eq!(enumerate_partitions(10).len(), 42);
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![2, 3]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(Partition::new(vec![3, 1]).unwrap().size(), 4);
    }

    #[test]
    fn frobenius_of_worked_partition() {
        let p = Partition::new(vec![7, 5, 5, 3, 2, 2, 1]).unwrap();
        let f = to_frobenius(&p).unwrap();
        assert_eq!(f, sym(&[6, 3, 2], &[6, 4, 1]));
        assert_eq!(from_frobenius(&f), p);
        assert_eq!(f.size(), 25);
        assert_eq!(f.successive_ranks(), vec![0, -1, 1]);
        let b = f.parity_blocks();
        assert_eq!(b.sizes(), &[2, 1]);
        assert_eq!(b.sign_word(), "NP");
        assert_eq!(f.to_block_notation(), "(6 3 | 2 / 6 4 | 1)");
    }

    #[test]
    fn frobenius_edge_cases() {
        assert!(matches!(to_frobenius(&Partition::empty()), Err(Error::EmptyPartition)));
        let one = to_frobenius(&Partition::new(vec![1]).unwrap()).unwrap();
        assert_eq!(one, sym(&[0], &[0]));
        assert_eq!(one.successive_ranks(), vec![0]);
        assert_eq!(from_frobenius(&sym(&[1], &[0])).parts(), &[2]);
        assert!(FrobeniusSymbol::new(vec![2, 2], vec![1, 0]).is_err());
        assert!(FrobeniusSymbol::new(vec![2], vec![1, 0]).is_err());
        assert!(FrobeniusSymbol::new(vec![], vec![]).is_err());
    }

    #[test]
    fn blocks_of_listed_symbols() {
        let f = sym(&[3, 2, 1], &[4, 2, 0]);
        let b = f.parity_blocks();
        assert_eq!(b.sizes(), &[2, 1]);
        assert_eq!(b.sign_word(), "NP");
        let all_pos = sym(&[5, 3, 1], &[2, 1, 0]);
        assert_eq!(all_pos.parity_blocks().sign_word(), "P");
        assert_eq!(
            serde_json::to_string(&b).unwrap(),
            r#"{"sizes":[2,1],"signs":"NP"}"#
        );
    }

    #[test]
    fn symbol_parsing() {
        let f: FrobeniusSymbol = "(3 | 2 1 / 5 | 1 0)".parse().unwrap();
        assert_eq!(f, sym(&[3, 2, 1], &[5, 1, 0]));
        let g: FrobeniusSymbol = r#"{"top":[1],"bottom":[0]}"#.parse().unwrap();
        assert_eq!(g, sym(&[1], &[0]));
        assert!("1 2".parse::<FrobeniusSymbol>().is_err());
        assert_eq!(serde_json::to_string(&g).unwrap(), r#"{"top":[1],"bottom":[0]}"#);
    }

    #[test]
    fn symbol_enumeration_matches_partition_filter() {
        for n in 1..=18u32 {
            let parts = enumerate_partitions(n);
            for d in 1..=4 {
                let mut from_parts: Vec<FrobeniusSymbol> = parts
                    .iter()
                    .filter(|p| p.durfee_side() == d)
                    .map(|p| to_frobenius(p).unwrap())
                    .collect();
                from_parts.sort_by(|a, b| b.cmp(a));
                assert_eq!(frobenius_symbols(n as u64, d), from_parts, "n={n} d={d}");
            }
        }
    }

    #[test]
    fn worked_count() {
        assert_eq!(count_a(15, 3, 2, Sign::Plus), 3);
        let listed = list_a(15, 3, 2, Sign::Plus);
        let mut expect = vec![
            sym(&[3, 2, 1], &[5, 1, 0]),
            sym(&[4, 2, 1], &[4, 1, 0]),
            sym(&[3, 2, 1], &[4, 2, 0]),
        ];
        expect.sort_by(|a, b| b.cmp(a));
        assert_eq!(listed, expect);
        assert_eq!(count_a(2, 1, 1, Sign::Plus), 1);
        assert_eq!(count_a(1, 1, 1, Sign::Minus), 1);
        assert_eq!(count_a(10, 2, 3, Sign::Plus), 0);
    }

    #[test]
    fn census_agrees_with_count_a() {
        for n in 1..=20 {
            for d in 1..=4 {
                let c = BlockCensus::of(n, d);
                for m in 1..=d {
                    for s in Sign::BOTH {
                        assert_eq!(c.get(m, s), count_a(n, d, m, s));
                    }
                }
                assert_eq!(c.total(), count_all_columns(n, d));
            }
        }
    }

    #[test]
    fn prefix_patterns() {
        use Sign::*;
        assert!(count_prefix_pattern(5, &[Plus, Plus]).is_err());
        // The empty pattern matches every nonempty partition.
        assert_eq!(count_prefix_pattern(6, &[]).unwrap(), 11);
        assert_eq!(count_prefix_pattern(1, &[Minus]).unwrap(), 1);
        assert_eq!(count_prefix_pattern(2, &[Plus]).unwrap(), 1);
    }

    #[test]
    fn count_all_columns_zero() {
        assert_eq!(count_all_columns(0, 0), 1);
        assert_eq!(count_all_columns(3, 0), 0);
        assert_eq!(count_all_columns(4, 2), 1);
        assert_eq!(count_a_by_columns(0, 1, Sign::Plus), 0);
    }
}

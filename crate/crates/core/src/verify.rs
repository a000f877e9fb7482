//! Named checks pairing a brute-force enumeration with a closed form.
//!
//! Every [`Check`] computes its two sides through separate code: counts come
//! from [`crate::partitions`], [`crate::lattice_paths`] and [`crate::posets`],
//! series from [`crate::qseries`]. A run produces a [`VerificationReport`]
//! locating the first coefficient where the sides disagree.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::bijections;
use crate::error::{Error, Result};
use crate::lattice_paths::{self, MarkedBallotPath};
use crate::partitions::{self, BlockCensus};
use crate::posets::{self, Composition, LinearExtensionWord, SBetaStructure};
use crate::qseries::{self, QSeries};
use crate::sign::{sign_word, Sign};

/// Number of enumeration-side objects attached to a failing report.
pub const MAX_WITNESSES: usize = 5;

/// The families of claims that can be checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    /// Counts by columns and blocks against the main product formula.
    BlocksColumns,
    /// Counts by blocks against the truncated pentagonal series and its
    /// finite partition-number form.
    Blocks,
    /// Counts by columns against `q^e / ((q;q)_d^2 (1+q^d))`.
    Columns,
    /// Truncated Euler series against the sum of main closed forms over `d`.
    EulerTruncated,
    /// The alternating q-binomial sum identity.
    QbinomialSum,
    /// `vmr` over marked ballot paths with `s > t`.
    VmrBallot,
    /// `vmr` over marked Dyck paths.
    VmrDyck,
    /// `vmr` over Dyck paths with an exact number of marks.
    VmrExactMarks,
    /// Poset partition histogram against the `maj` series of extensions.
    PosetPartitions,
    /// `maj` of linear extensions against corrected `maj` of Dyck paths.
    ExtensionMaj,
    /// `word_to_dyck` is a bijection onto paths with fixed marked returns.
    ExtensionDyck,
    /// Sign-word prefix classes counted by shifted partition numbers.
    PrefixPatterns,
    /// `a^-_m(n) - a^+_m(n)` as a difference of partition numbers.
    BlocksDifference,
    /// `a^-_m(n; d) = a^+_m(n + d; d)`.
    ShiftByColumns,
    /// `a^-(n; d) - a^+(n; d)` as a sum of counts with one column fewer.
    ColumnsDifference,
    /// Every nonempty partition is counted exactly once.
    PartitionTotal,
    /// Weight bookkeeping, inversion and injectivity of the bijection chain.
    BijectionChain,
}

impl Target {
    pub const ALL: [Target; 17] = [
        Target::BlocksColumns,
        Target::Blocks,
        Target::Columns,
        Target::EulerTruncated,
        Target::QbinomialSum,
        Target::VmrBallot,
        Target::VmrDyck,
        Target::VmrExactMarks,
        Target::PosetPartitions,
        Target::ExtensionMaj,
        Target::ExtensionDyck,
        Target::PrefixPatterns,
        Target::BlocksDifference,
        Target::ShiftByColumns,
        Target::ColumnsDifference,
        Target::PartitionTotal,
        Target::BijectionChain,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::BlocksColumns => "blocks-columns",
            Target::Blocks => "blocks",
            Target::Columns => "columns",
            Target::EulerTruncated => "euler-truncated",
            Target::QbinomialSum => "qbinomial-sum",
            Target::VmrBallot => "vmr-ballot",
            Target::VmrDyck => "vmr-dyck",
            Target::VmrExactMarks => "vmr-exact-marks",
            Target::PosetPartitions => "poset-partitions",
            Target::ExtensionMaj => "extension-maj",
            Target::ExtensionDyck => "extension-dyck",
            Target::PrefixPatterns => "prefix-patterns",
            Target::BlocksDifference => "blocks-difference",
            Target::ShiftByColumns => "shift-by-columns",
            Target::ColumnsDifference => "columns-difference",
            Target::PartitionTotal => "partition-total",
            Target::BijectionChain => "bijection-chain",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        if key == "main" || key == "thm-main" {
            return Ok(Target::BlocksColumns);
        }
        Target::ALL
            .into_iter()
            .find(|t| t.name() == key)
            .ok_or_else(|| {
                let names: Vec<&str> = Target::ALL.iter().map(|t| t.name()).collect();
                Error::Parse(format!("unknown target {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

/// Grid bounds for the full suite. The defaults finish in seconds in release
/// builds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyConfig {
    pub precision: usize,
    pub max_d: usize,
    pub max_m: usize,
    pub qbinomial_sum_max_d: usize,
    pub path_max_len: usize,
    pub path_max_r: usize,
    pub dyck_max_s: usize,
    pub exact_marks_precision: usize,
    pub poset_max_d: usize,
    pub poset_precision: usize,
    pub extension_max_d: usize,
    pub relations_max: usize,
    pub relations_precision: usize,
    pub partition_total_n: usize,
    pub bijection_max_n: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            precision: qseries::DEFAULT_PRECISION,
            max_d: 5,
            max_m: 5,
            qbinomial_sum_max_d: 10,
            path_max_len: 12,
            path_max_r: 6,
            dyck_max_s: 6,
            exact_marks_precision: 60,
            poset_max_d: 4,
            poset_precision: 20,
            extension_max_d: 5,
            relations_max: 4,
            relations_precision: 30,
            partition_total_n: 30,
            bijection_max_n: 22,
        }
    }
}

/// Optional pins narrowing the grid to particular parameter values. A pinned
/// `n` replaces the precision of every selected check.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Selection {
    pub d: Option<usize>,
    pub m: Option<usize>,
    pub sign: Option<Sign>,
    pub s: Option<usize>,
    pub t: Option<usize>,
    pub r: Option<usize>,
    pub beta: Option<Composition>,
    pub n: Option<usize>,
}

impl Selection {
    /// Rejects pins that no check could satisfy.
    pub fn validate(&self) -> Result<()> {
        if let (Some(d), Some(m)) = (self.d, self.m) {
            if m > d {
                return Err(Error::InvalidParameters(format!("m = {m} exceeds d = {d}")));
            }
        }
        if self.d == Some(0) || self.m == Some(0) || self.n == Some(0) {
            return Err(Error::InvalidParameters("d, m and n must be positive".into()));
        }
        if let (Some(s), Some(t)) = (self.s, self.t) {
            if s <= t {
                return Err(Error::InvalidParameters(format!(
                    "ballot checks need s > t, got s = {s}, t = {t}"
                )));
            }
        }
        Ok(())
    }
}

fn span(pin: Option<usize>, lo: usize, hi: usize) -> Vec<usize> {
    match pin {
        Some(v) => vec![v],
        None => (lo..=hi).collect(),
    }
}

fn signs(pin: Option<Sign>) -> Vec<Sign> {
    pin.map_or_else(|| Sign::BOTH.to_vec(), |s| vec![s])
}

/// One grid point of one target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Check {
    BlocksColumns { d: usize, m: usize, sign: Sign, n: usize },
    Blocks { m: usize, sign: Sign, n: usize },
    Columns { d: usize, sign: Sign, n: usize },
    EulerTruncated { m: usize, sign: Sign, n: usize },
    QbinomialSum { d: usize },
    VmrBallot { s: usize, t: usize, r: usize },
    VmrDyck { s: usize, r: usize },
    VmrExactMarks { s: usize, r: usize, n: usize },
    PosetPartitions { beta: Composition, n: usize },
    ExtensionMaj { beta: Composition },
    ExtensionDyck { beta: Composition },
    PrefixPatterns { m: usize, sign: Sign, n: usize },
    BlocksDifference { m: usize, n: usize },
    ShiftByColumns { d: usize, m: usize, n: usize },
    ColumnsDifference { d: usize, n: usize },
    PartitionTotal { n: usize },
    BijectionChain { n: usize },
}

/// The parameters of a report, with absent coordinates omitted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct GridPoint {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign: Option<Sign>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<Composition>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let mut push = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                parts.push(format!("{k}={v}"));
            }
        };
        push("d", self.d.map(|v| v.to_string()));
        push("m", self.m.map(|v| v.to_string()));
        push("sign", self.sign.map(|v| v.to_string()));
        push("s", self.s.map(|v| v.to_string()));
        push("t", self.t.map(|v| v.to_string()));
        push("r", self.r.map(|v| v.to_string()));
        push("beta", self.beta.as_ref().map(|v| v.to_string()));
        push("N", self.n.map(|v| v.to_string()));
        f.write_str(&parts.join(" "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Where two sides first disagree. `expected` is the closed-form side and
/// `actual` the enumeration side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponent: Option<usize>,
    pub expected: String,
    pub actual: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub target: Target,
    pub parameters: GridPoint,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_discrepancy: Option<Discrepancy>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
    /// Number of coefficients or objects compared.
    pub compared: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl VerificationReport {
    fn new(target: Target, parameters: GridPoint, outcome: Outcome) -> Self {
        VerificationReport {
            target,
            parameters,
            status: if outcome.discrepancy.is_none() { Status::Pass } else { Status::Fail },
            first_discrepancy: outcome.discrepancy,
            witnesses: outcome.witnesses,
            compared: outcome.compared,
            elapsed_ms: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// The report with its timing removed, for byte-stable output.
    pub fn without_timing(mut self) -> Self {
        self.elapsed_ms = None;
        self
    }

    /// A one-line summary such as `PASS blocks-columns d=3 m=2 sign=plus N=20`.
    pub fn summary_line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let mut line = format!("{status} {} {}", self.target, self.parameters);
        if let Some(d) = &self.first_discrepancy {
            match d.exponent {
                Some(e) => line.push_str(&format!(
                    " at q^{e}: expected {}, got {}",
                    d.expected, d.actual
                )),
                None => line.push_str(&format!(": expected {}, got {}", d.expected, d.actual)),
            }
            if let Some(detail) = &d.detail {
                line.push_str(&format!(" ({detail})"));
            }
        }
        line
    }
}

/// Totals over a batch of reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub failed_targets: Vec<Target>,
}

impl SuiteSummary {
    pub fn of(reports: &[VerificationReport]) -> Self {
        let failed: BTreeSet<Target> = reports
            .iter()
            .filter(|r| !r.passed())
            .map(|r| r.target)
            .collect();
        let passed = reports.iter().filter(|r| r.passed()).count();
        SuiteSummary {
            total: reports.len(),
            passed,
            failed: reports.len() - passed,
            failed_targets: failed.into_iter().collect(),
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

struct Outcome {
    discrepancy: Option<Discrepancy>,
    witnesses: Vec<String>,
    compared: usize,
}

impl Outcome {
    fn pass(compared: usize) -> Self {
        Outcome {
            discrepancy: None,
            witnesses: Vec::new(),
            compared,
        }
    }
}

/// First exponent in `range` where the two coefficient sequences differ.
fn first_mismatch(
    expected: &QSeries,
    actual: &[BigInt],
    range: std::ops::RangeInclusive<usize>,
) -> Option<(usize, BigInt, BigInt)> {
    range.into_iter().find_map(|k| {
        let e = expected.coeff(k);
        let a = actual.get(k).cloned().unwrap_or_else(BigInt::zero);
        (e != a).then_some((k, e, a))
    })
}

fn compare<W: Fn(usize) -> Vec<String>>(
    expected: &QSeries,
    actual: &[BigInt],
    range: std::ops::RangeInclusive<usize>,
    detail: Option<&str>,
    witnesses: W,
) -> Outcome {
    let compared = range.clone().count();
    match first_mismatch(expected, actual, range) {
        None => Outcome::pass(compared),
        Some((k, e, a)) => Outcome {
            discrepancy: Some(Discrepancy {
                exponent: Some(k),
                expected: e.to_string(),
                actual: a.to_string(),
                detail: detail.map(str::to_string),
            }),
            witnesses: witnesses(k),
            compared,
        },
    }
}

fn no_witnesses(_: usize) -> Vec<String> {
    Vec::new()
}

fn counts_to_coeffs<F: Fn(u64) -> u64>(n: usize, f: F) -> Vec<BigInt> {
    (0..=n).map(|k| BigInt::from(f(k as u64))).collect()
}

fn binom2(r: usize) -> usize {
    r * r.saturating_sub(1) / 2
}

/// Degree of `[n over k]`, or `None` when it vanishes.
fn qbinomial_degree(n: usize, k: usize) -> Option<usize> {
    (k <= n).then(|| k * (n - k))
}

fn path_witnesses(objects: &[MarkedBallotPath], exponent: usize) -> Vec<String> {
    objects
        .iter()
        .filter(|p| lattice_paths::vmr(p) as usize == exponent)
        .take(MAX_WITNESSES)
        .map(|p| p.to_string())
        .collect()
}

fn symbol_witnesses(n: usize, d: usize, keep: impl Fn(&partitions::FrobeniusSymbol) -> bool) -> Vec<String> {
    partitions::frobenius_symbols(n as u64, d)
        .into_iter()
        .filter(|f| keep(f))
        .take(MAX_WITNESSES)
        .map(|f| f.to_block_notation())
        .collect()
}

fn blocks_columns_outcome(d: usize, m: usize, sign: Sign, n: usize, expected: &QSeries) -> Outcome {
    let actual = counts_to_coeffs(n, |k| partitions::count_a(k, d, m, sign));
    compare(expected, &actual, 1..=n, None, |k| {
        symbol_witnesses(k, d, |f| {
            let b = f.parity_blocks();
            b.count() == m && b.last_sign() == Some(sign)
        })
    })
}

/// Blocks-and-columns counts against a caller-supplied series in place of
/// the closed form.
pub fn check_blocks_columns_against(
    d: usize,
    m: usize,
    sign: Sign,
    n: usize,
    expected: &QSeries,
) -> VerificationReport {
    let check = Check::BlocksColumns { d, m, sign, n };
    VerificationReport::new(
        Target::BlocksColumns,
        check.parameters(),
        blocks_columns_outcome(d, m, sign, n, expected),
    )
}

/// The blocks-and-columns check with an arbitrary leading exponent in the
/// closed form, used to confirm that a wrong formula is caught.
pub fn verify_blocks_columns_with_exponent(
    d: usize,
    m: usize,
    sign: Sign,
    n: usize,
    exponent: usize,
) -> Result<VerificationReport> {
    let series = qseries::closed_form_main_with_exponent(d, m, exponent, n)?;
    Ok(check_blocks_columns_against(d, m, sign, n, &series))
}

pub fn verify_blocks_columns(d: usize, m: usize, sign: Sign, n: usize) -> Result<VerificationReport> {
    Check::BlocksColumns { d, m, sign, n }.run()
}

/// `a^±_m(n)` from alternating differences of partition numbers.
pub fn blocks_finite_form(m: usize, sign: Sign, n: usize, table: &[num_bigint::BigUint]) -> BigInt {
    let n = n as i64;
    let mut acc = BigInt::zero();
    for l in 0..m as i64 {
        let (a, b) = match sign {
            Sign::Plus => ((3 * l * l + l) / 2, (3 * (l + 1) * (l + 1) - (l + 1)) / 2),
            Sign::Minus => ((3 * l * l - l) / 2, (3 * (l + 1) * (l + 1) + (l + 1)) / 2),
        };
        let term = qseries::partition_number_shifted(table, n, a)
            - qseries::partition_number_shifted(table, n, b);
        if l % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    if m.is_multiple_of(2) {
        -acc
    } else {
        acc
    }
}

/// Alternating sign pattern of length `len` ending in `last`.
pub fn alternating_pattern(len: usize, last: Sign) -> Vec<Sign> {
    (0..len)
        .map(|k| if (len - 1 - k).is_multiple_of(2) { last } else { last.flip() })
        .collect()
}

/// Partition number shift for the prefix class with `m` and final letter
/// `last`: `(3m^2 - m)/2` for `N`, `(3m^2 + m)/2` for `P`.
pub fn prefix_shift(m: usize, last: Sign) -> usize {
    match last {
        Sign::Minus => (3 * m * m - m) / 2,
        Sign::Plus => (3 * m * m + m) / 2,
    }
}

impl Check {
    pub fn target(&self) -> Target {
        match self {
            Check::BlocksColumns { .. } => Target::BlocksColumns,
            Check::Blocks { .. } => Target::Blocks,
            Check::Columns { .. } => Target::Columns,
            Check::EulerTruncated { .. } => Target::EulerTruncated,
            Check::QbinomialSum { .. } => Target::QbinomialSum,
            Check::VmrBallot { .. } => Target::VmrBallot,
            Check::VmrDyck { .. } => Target::VmrDyck,
            Check::VmrExactMarks { .. } => Target::VmrExactMarks,
            Check::PosetPartitions { .. } => Target::PosetPartitions,
            Check::ExtensionMaj { .. } => Target::ExtensionMaj,
            Check::ExtensionDyck { .. } => Target::ExtensionDyck,
            Check::PrefixPatterns { .. } => Target::PrefixPatterns,
            Check::BlocksDifference { .. } => Target::BlocksDifference,
            Check::ShiftByColumns { .. } => Target::ShiftByColumns,
            Check::ColumnsDifference { .. } => Target::ColumnsDifference,
            Check::PartitionTotal { .. } => Target::PartitionTotal,
            Check::BijectionChain { .. } => Target::BijectionChain,
        }
    }

    pub fn parameters(&self) -> GridPoint {
        let mut g = GridPoint::default();
        match self.clone() {
            Check::BlocksColumns { d, m, sign, n } => {
                (g.d, g.m, g.sign, g.n) = (Some(d), Some(m), Some(sign), Some(n))
            }
            Check::Blocks { m, sign, n }
            | Check::EulerTruncated { m, sign, n }
            | Check::PrefixPatterns { m, sign, n } => (g.m, g.sign, g.n) = (Some(m), Some(sign), Some(n)),
            Check::Columns { d, sign, n } => (g.d, g.sign, g.n) = (Some(d), Some(sign), Some(n)),
            Check::QbinomialSum { d } => g.d = Some(d),
            Check::VmrBallot { s, t, r } => (g.s, g.t, g.r) = (Some(s), Some(t), Some(r)),
            Check::VmrDyck { s, r } => (g.s, g.r) = (Some(s), Some(r)),
            Check::VmrExactMarks { s, r, n } => (g.s, g.r, g.n) = (Some(s), Some(r), Some(n)),
            Check::PosetPartitions { beta, n } => (g.beta, g.n) = (Some(beta), Some(n)),
            Check::ExtensionMaj { beta } | Check::ExtensionDyck { beta } => g.beta = Some(beta),
            Check::BlocksDifference { m, n } => (g.m, g.n) = (Some(m), Some(n)),
            Check::ShiftByColumns { d, m, n } => (g.d, g.m, g.n) = (Some(d), Some(m), Some(n)),
            Check::ColumnsDifference { d, n } => (g.d, g.n) = (Some(d), Some(n)),
            Check::PartitionTotal { n } | Check::BijectionChain { n } => g.n = Some(n),
        }
        g
    }

    /// Runs the check, timing it.
    pub fn run(&self) -> Result<VerificationReport> {
        let start = Instant::now();
        let outcome = self.evaluate()?;
        let mut report = VerificationReport::new(self.target(), self.parameters(), outcome);
        report.elapsed_ms = Some(start.elapsed().as_secs_f64() * 1000.0);
        Ok(report)
    }

    fn evaluate(&self) -> Result<Outcome> {
        match self.clone() {
            Check::BlocksColumns { d, m, sign, n } => {
                let series = qseries::closed_form_main(d, m, sign, n)?;
                Ok(blocks_columns_outcome(d, m, sign, n, &series))
            }
            Check::Blocks { m, sign, n } => {
                if m == 0 {
                    return Err(Error::InvalidParameters("need m >= 1".into()));
                }
                let actual = counts_to_coeffs(n, |k| {
                    if k == 0 {
                        0
                    } else {
                        partitions::count_a_by_blocks(k, m, sign)
                    }
                });
                let series = qseries::closed_form_by_blocks(m, sign, n)?;
                let witnesses = |k: usize| {
                    (1..=partitions::durfee_bound(k as u64))
                        .flat_map(|d| partitions::list_a(k as u64, d, m, sign))
                        .take(MAX_WITNESSES)
                        .map(|f| f.to_block_notation())
                        .collect()
                };
                let o = compare(&series, &actual, 1..=n, Some("against the series"), witnesses);
                if o.discrepancy.is_some() {
                    return Ok(o);
                }
                let table = qseries::partition_table(n);
                let finite = QSeries::from_coeffs(
                    (0..=n).map(|k| if k == 0 { BigInt::zero() } else { blocks_finite_form(m, sign, k, &table) }),
                    n,
                );
                let o2 = compare(&finite, &actual, 1..=n, Some("against the partition-number form"), witnesses);
                Ok(Outcome {
                    compared: o.compared + o2.compared,
                    ..o2
                })
            }
            Check::Columns { d, sign, n } => {
                let actual = counts_to_coeffs(n, |k| partitions::count_a_by_columns(k, d, sign));
                let series = qseries::closed_form_by_columns(d, sign, n)?;
                Ok(compare(&series, &actual, 1..=n, None, |k| {
                    symbol_witnesses(k, d, |f| f.parity_blocks().last_sign() == Some(sign))
                }))
            }
            Check::EulerTruncated { m, sign, n } => {
                if m == 0 {
                    return Err(Error::InvalidParameters("need m >= 1".into()));
                }
                let p = n;
                let lhs = qseries::euler_inverse(p).mul(&qseries::truncated_pentagonal_sum(m, sign, p));
                let rhs_upto = |cutoff: usize| -> Result<QSeries> {
                    let mut acc = QSeries::zero(p);
                    for d in m..=cutoff {
                        acc = acc.add(&qseries::closed_form_main(d, m, sign, p)?);
                    }
                    if m % 2 == 0 {
                        acc = -acc;
                    }
                    Ok(QSeries::one(p).add(&acc))
                };
                let cutoff = partitions::durfee_bound(n as u64) + 1;
                let rhs = rhs_upto(cutoff)?;
                let o = compare(&lhs, rhs.coeffs(), 0..=n, None, no_witnesses);
                if o.discrepancy.is_some() {
                    return Ok(o);
                }
                let wider = rhs_upto(cutoff + 1)?;
                Ok(compare(&wider, rhs.coeffs(), 0..=n, Some("raising the column cutoff changed the sum"), no_witnesses))
            }
            Check::QbinomialSum { d } => {
                if d == 0 {
                    return Err(Error::InvalidParameters("need d >= 1".into()));
                }
                let (lhs, rhs) = qseries::qbinomial_sum_sides(d);
                let top = lhs.precision() - 1;
                Ok(compare(&rhs, lhs.coeffs(), 0..=top, None, no_witnesses))
            }
            Check::VmrBallot { s, t, r } => {
                if s <= t {
                    return Err(Error::InvalidParameters(format!("need s > t, got s = {s}, t = {t}")));
                }
                let objects = lattice_paths::enumerate_marked_paths(s, t, r)?;
                let closed_deg = qbinomial_degree(s + t, s + r).map(|k| k + binom2(r + 1));
                Ok(path_check(&objects, closed_deg, |p| {
                    qseries::qbinomial(s + t, (s + r) as i64, p).shift(binom2(r + 1))
                }))
            }
            Check::VmrDyck { s, r } => {
                if s == 0 {
                    return Err(Error::InvalidParameters("need s >= 1".into()));
                }
                let objects = lattice_paths::enumerate_marked_paths(s, s, r)?;
                let closed_deg = qbinomial_degree(2 * s - 1, s + r).map(|k| k + binom2(r + 1));
                Ok(path_check(&objects, closed_deg, |p| {
                    qseries::qbinomial(2 * s - 1, (s + r) as i64, p).shift(binom2(r + 1))
                }))
            }
            Check::VmrExactMarks { s, r, n } => {
                if s == 0 {
                    return Err(Error::InvalidParameters("need s >= 1".into()));
                }
                let objects = lattice_paths::enumerate_exact_marks(s, r);
                let p = n;
                let series = qseries::one_minus_q_pow(r + 1, p)
                    .div_unit(&qseries::one_minus_q_pow(s, p))?
                    .mul(&qseries::qbinomial(2 * s, (s + r + 1) as i64, p))
                    .shift(binom2(r + 1));
                let actual = lattice_paths::gf_vmr(&objects, p);
                Ok(compare(&series, actual.coeffs(), 0..=n, None, |k| path_witnesses(&objects, k)))
            }
            Check::PosetPartitions { beta, n } => {
                let s = SBetaStructure::new(beta);
                let hist = posets::enumerate_poset_partitions(&s, n);
                let actual: Vec<BigInt> = hist.into_iter().map(BigInt::from).collect();
                let p = n;
                let maj = QSeries::from_poly(&posets::extension_maj_polynomial(&s), p);
                let series = maj.div_unit(&qseries::pochhammer(1, s.size(), p))?;
                let witnesses = |k: usize| {
                    posets::list_poset_partitions(&s, k)
                        .into_iter()
                        .filter(|pp| pp.weight() as usize == k)
                        .take(MAX_WITNESSES)
                        .map(|pp| pp.to_string())
                        .collect()
                };
                Ok(compare(&series, &actual, 0..=n, None, witnesses))
            }
            Check::ExtensionMaj { beta } => {
                let s = SBetaStructure::new(beta.clone());
                let words = posets::extension_maj_polynomial(&s);
                let paths = lattice_paths::enumerate_fixed_returns(beta.total(), &beta.interior_sums())?;
                let correction: u64 = 2 * beta.interior_sums().iter().map(|&x| x as u64).sum::<u64>();
                let mut path_poly: Vec<BigInt> = Vec::new();
                for pth in &paths {
                    let e = (lattice_paths::maj(pth) - correction) as usize;
                    if path_poly.len() <= e {
                        path_poly.resize(e + 1, BigInt::zero());
                    }
                    path_poly[e] += 1;
                }
                let top = words.len().max(path_poly.len()).max(1);
                let expected = QSeries::from_poly(&path_poly, top);
                let witnesses = |k: usize| {
                    posets::linear_extensions(&s)
                        .into_iter()
                        .filter(|w| posets::maj_word(w.word()) as usize == k)
                        .take(MAX_WITNESSES)
                        .map(|w| w.to_string())
                        .collect()
                };
                Ok(compare(&expected, &words, 0..=top - 1, None, witnesses))
            }
            Check::ExtensionDyck { beta } => {
                let s = SBetaStructure::new(beta.clone());
                let exts: Vec<LinearExtensionWord> = posets::linear_extensions(&s);
                let images: Vec<MarkedBallotPath> = exts.iter().map(posets::word_to_dyck).collect();
                let distinct: BTreeSet<&MarkedBallotPath> = images.iter().collect();
                let target: BTreeSet<MarkedBallotPath> =
                    lattice_paths::enumerate_fixed_returns(beta.total(), &beta.interior_sums())?
                        .into_iter()
                        .collect();
                let compared = exts.len();
                if distinct.len() != images.len() {
                    return Ok(Outcome {
                        discrepancy: Some(Discrepancy {
                            exponent: None,
                            expected: images.len().to_string(),
                            actual: distinct.len().to_string(),
                            detail: Some("distinct images of linear extensions".into()),
                        }),
                        witnesses: Vec::new(),
                        compared,
                    });
                }
                let image_set: BTreeSet<MarkedBallotPath> = images.into_iter().collect();
                if image_set != target {
                    let missing: Vec<String> = target
                        .difference(&image_set)
                        .chain(image_set.difference(&target))
                        .take(MAX_WITNESSES)
                        .map(|p| p.to_string())
                        .collect();
                    return Ok(Outcome {
                        discrepancy: Some(Discrepancy {
                            exponent: None,
                            expected: target.len().to_string(),
                            actual: image_set.len().to_string(),
                            detail: Some("image differs from paths with the prescribed marks".into()),
                        }),
                        witnesses: missing,
                        compared,
                    });
                }
                Ok(Outcome::pass(compared))
            }
            Check::PrefixPatterns { m, sign, n } => {
                if m == 0 {
                    return Err(Error::InvalidParameters("need m >= 1".into()));
                }
                let short = alternating_pattern(m, sign);
                let long = alternating_pattern(m + 1, sign);
                let mut actual = vec![BigInt::zero()];
                for k in 1..=n as u64 {
                    let c = partitions::count_prefix_pattern(k, &short)?
                        + partitions::count_prefix_pattern(k, &long)?;
                    actual.push(BigInt::from(c));
                }
                let table = qseries::partition_table(n);
                let shift = prefix_shift(m, sign) as i64;
                let expected = QSeries::from_coeffs(
                    (0..=n as i64).map(|k| qseries::partition_number_shifted(&table, k, shift)),
                    n,
                );
                let detail = format!("prefixes {} and {}", sign_word(&short), sign_word(&long));
                Ok(compare(&expected, &actual, 1..=n, Some(&detail), no_witnesses))
            }
            Check::BlocksDifference { m, n } => {
                if m == 0 {
                    return Err(Error::InvalidParameters("need m >= 1".into()));
                }
                let mut actual = vec![BigInt::zero()];
                for k in 1..=n as u64 {
                    let minus = partitions::count_a_by_blocks(k, m, Sign::Minus) as i64;
                    let plus = partitions::count_a_by_blocks(k, m, Sign::Plus) as i64;
                    actual.push(BigInt::from(minus - plus));
                }
                let table = qseries::partition_table(n);
                let (a, b) = ((3 * m * m - m) as i64 / 2, (3 * m * m + m) as i64 / 2);
                let expected = QSeries::from_coeffs(
                    (0..=n as i64).map(|k| {
                        qseries::partition_number_shifted(&table, k, a)
                            - qseries::partition_number_shifted(&table, k, b)
                    }),
                    n,
                );
                Ok(compare(&expected, &actual, 1..=n, None, no_witnesses))
            }
            Check::ShiftByColumns { d, m, n } => {
                if m == 0 || m > d {
                    return Err(Error::InvalidParameters(format!("need d >= m >= 1, got d = {d}, m = {m}")));
                }
                let actual = counts_to_coeffs(n, |k| partitions::count_a(k, d, m, Sign::Minus));
                let expected = QSeries::from_coeffs(
                    (0..=n as u64).map(|k| {
                        if k == 0 {
                            0
                        } else {
                            partitions::count_a(k + d as u64, d, m, Sign::Plus)
                        }
                    }),
                    n,
                );
                Ok(compare(&expected, &actual, 1..=n, None, |k| {
                    symbol_witnesses(k, d, |f| {
                        let b = f.parity_blocks();
                        b.count() == m && b.last_sign() == Some(Sign::Minus)
                    })
                }))
            }
            Check::ColumnsDifference { d, n } => {
                if d == 0 {
                    return Err(Error::InvalidParameters("need d >= 1".into()));
                }
                let mut actual = vec![BigInt::zero()];
                for k in 1..=n as u64 {
                    let c = BlockCensus::of(k, d);
                    actual.push(BigInt::from(c.by_sign(Sign::Minus) as i64 - c.by_sign(Sign::Plus) as i64));
                }
                let expected = QSeries::from_coeffs(
                    (0..=n as i64).map(|k| {
                        let mut sum = 0u64;
                        let mut j = 1i64;
                        while k - 2 * d as i64 * j + 1 >= 0 {
                            sum += partitions::count_all_columns((k - 2 * d as i64 * j + 1) as u64, d - 1);
                            j += 1;
                        }
                        sum
                    }),
                    n,
                );
                Ok(compare(&expected, &actual, 1..=n, None, no_witnesses))
            }
            Check::PartitionTotal { n } => {
                let table = qseries::partition_table(n);
                let mut by_blocks = vec![BigInt::zero()];
                let mut by_columns = vec![BigInt::zero()];
                for k in 1..=n as u64 {
                    let dmax = partitions::durfee_bound(k);
                    let mut b = 0;
                    for m in 1..=dmax {
                        for sign in Sign::BOTH {
                            b += partitions::count_a_by_blocks(k, m, sign);
                        }
                    }
                    by_blocks.push(BigInt::from(b));
                    let c: u64 = (1..=dmax)
                        .flat_map(|d| Sign::BOTH.map(|s| partitions::count_a_by_columns(k, d, s)))
                        .sum();
                    by_columns.push(BigInt::from(c));
                }
                let expected = QSeries::from_coeffs(table.iter().map(|p| BigInt::from(p.clone())), n);
                let o = compare(&expected, &by_blocks, 1..=n, Some("summed by blocks"), no_witnesses);
                if o.discrepancy.is_some() {
                    return Ok(o);
                }
                let o2 = compare(&expected, &by_columns, 1..=n, Some("summed by columns"), no_witnesses);
                Ok(Outcome {
                    compared: o.compared + o2.compared,
                    ..o2
                })
            }
            Check::BijectionChain { n } => bijection_chain(n),
        }
    }
}

fn path_check<F: Fn(usize) -> QSeries>(
    objects: &[MarkedBallotPath],
    closed_degree: Option<usize>,
    closed: F,
) -> Outcome {
    let enum_degree = objects.iter().map(|p| lattice_paths::vmr(p) as usize).max();
    let top = enum_degree.max(closed_degree).unwrap_or(0);
    let p = top;
    let expected = if closed_degree.is_some() { closed(p) } else { QSeries::zero(p) };
    let actual = lattice_paths::gf_vmr(objects, p);
    compare(&expected, actual.coeffs(), 0..=top, None, |k| path_witnesses(objects, k))
}

fn failure(detail: String, witness: String, compared: usize) -> Outcome {
    Outcome {
        discrepancy: Some(Discrepancy {
            exponent: None,
            expected: "consistent".into(),
            actual: "inconsistent".into(),
            detail: Some(detail),
        }),
        witnesses: vec![witness],
        compared,
    }
}

fn bijection_chain(max_n: usize) -> Result<Outcome> {
    let mut compared = 0;
    for n in 1..=max_n as u64 {
        for d in 1..=partitions::durfee_bound(n) {
            let mut seen = BTreeSet::new();
            for f in partitions::frobenius_symbols(n, d) {
                compared += 1;
                let w = f.to_block_notation();
                let mu = bijections::symbol_to_array(&f);
                if mu.weight() + (d * d) as u64 != n {
                    return Ok(failure(format!("|lambda| - |mu| != {}", d * d), w, compared));
                }
                if bijections::array_to_symbol(&mu)? != f {
                    return Ok(failure("staircase removal does not invert".into(), w, compared));
                }
                let gamma = bijections::array_to_gamma(&mu)?;
                if gamma.weight() != mu.weight() {
                    return Ok(failure("|gamma| != |mu|".into(), w, compared));
                }
                let (pi, sign) = bijections::lambda_to_pi(&f)?;
                if gamma.weight() - pi.weight() != bijections::weight_drop(pi.beta(), sign) {
                    return Ok(failure("|gamma| - |pi| differs from the row-sum drop".into(), w, compared));
                }
                if bijections::pi_to_lambda(&pi, sign)? != f {
                    return Ok(failure("inverse chain does not return the symbol".into(), w, compared));
                }
                if !seen.insert((pi.beta().clone(), pi.values().to_vec(), sign)) {
                    return Ok(failure("two symbols share an image".into(), w, compared));
                }
            }
        }
    }
    Ok(Outcome::pass(compared))
}

/// Every check of the selected targets, in canonical order.
pub fn plan(config: &VerifyConfig, targets: &[Target], pins: &Selection) -> Vec<Check> {
    let mut targets = targets.to_vec();
    targets.sort();
    targets.dedup();
    let mut out = Vec::new();
    for t in targets {
        plan_target(config, t, pins, &mut out);
    }
    out
}

fn compositions(pins: &Selection, max_d: usize) -> Vec<Composition> {
    match &pins.beta {
        Some(b) => vec![b.clone()],
        None => span(pins.d, 1, max_d)
            .into_iter()
            .flat_map(Composition::all_of)
            .filter(|c| pins.m.is_none_or(|m| c.len() == m))
            .collect(),
    }
}

fn plan_target(c: &VerifyConfig, t: Target, pins: &Selection, out: &mut Vec<Check>) {
    let n_or = |default: usize| pins.n.unwrap_or(default);
    match t {
        Target::BlocksColumns => {
            for d in span(pins.d, 1, c.max_d) {
                for m in span(pins.m, 1, d).into_iter().filter(|&m| m <= d) {
                    for sign in signs(pins.sign) {
                        out.push(Check::BlocksColumns { d, m, sign, n: n_or(c.precision) });
                    }
                }
            }
        }
        Target::Blocks => {
            for m in span(pins.m, 1, c.max_m) {
                for sign in signs(pins.sign) {
                    out.push(Check::Blocks { m, sign, n: n_or(c.precision) });
                }
            }
        }
        Target::Columns => {
            for d in span(pins.d, 1, c.max_d) {
                for sign in signs(pins.sign) {
                    out.push(Check::Columns { d, sign, n: n_or(c.precision) });
                }
            }
        }
        Target::EulerTruncated => {
            for m in span(pins.m, 1, c.max_m) {
                for sign in signs(pins.sign) {
                    out.push(Check::EulerTruncated { m, sign, n: n_or(c.precision) });
                }
            }
        }
        Target::QbinomialSum => {
            for d in span(pins.d, 1, c.qbinomial_sum_max_d) {
                out.push(Check::QbinomialSum { d });
            }
        }
        Target::VmrBallot => {
            for s in span(pins.s, 1, c.path_max_len) {
                for t in span(pins.t, 0, s.saturating_sub(1)) {
                    let pinned = pins.s.is_some() || pins.t.is_some();
                    if t >= s || (!pinned && s + t > c.path_max_len) {
                        continue;
                    }
                    for r in span(pins.r, 0, c.path_max_r) {
                        out.push(Check::VmrBallot { s, t, r });
                    }
                }
            }
        }
        Target::VmrDyck => {
            for s in span(pins.s, 1, c.dyck_max_s) {
                for r in span(pins.r, 0, c.path_max_r) {
                    out.push(Check::VmrDyck { s, r });
                }
            }
        }
        Target::VmrExactMarks => {
            for s in span(pins.s, 1, c.dyck_max_s) {
                for r in span(pins.r, 0, c.path_max_r) {
                    out.push(Check::VmrExactMarks { s, r, n: n_or(c.exact_marks_precision) });
                }
            }
        }
        Target::PosetPartitions => {
            for beta in compositions(pins, c.poset_max_d) {
                out.push(Check::PosetPartitions { beta, n: n_or(c.poset_precision) });
            }
        }
        Target::ExtensionMaj => {
            for beta in compositions(pins, c.extension_max_d) {
                out.push(Check::ExtensionMaj { beta });
            }
        }
        Target::ExtensionDyck => {
            for beta in compositions(pins, c.extension_max_d) {
                out.push(Check::ExtensionDyck { beta });
            }
        }
        Target::PrefixPatterns => {
            for m in span(pins.m, 1, c.relations_max) {
                for sign in signs(pins.sign) {
                    out.push(Check::PrefixPatterns { m, sign, n: n_or(c.relations_precision) });
                }
            }
        }
        Target::BlocksDifference => {
            for m in span(pins.m, 1, c.relations_max) {
                out.push(Check::BlocksDifference { m, n: n_or(c.relations_precision) });
            }
        }
        Target::ShiftByColumns => {
            for d in span(pins.d, 1, c.relations_max) {
                for m in span(pins.m, 1, d).into_iter().filter(|&m| m <= d) {
                    out.push(Check::ShiftByColumns { d, m, n: n_or(c.relations_precision) });
                }
            }
        }
        Target::ColumnsDifference => {
            for d in span(pins.d, 1, c.relations_max) {
                out.push(Check::ColumnsDifference { d, n: n_or(c.relations_precision) });
            }
        }
        Target::PartitionTotal => out.push(Check::PartitionTotal { n: n_or(c.partition_total_n) }),
        Target::BijectionChain => out.push(Check::BijectionChain { n: n_or(c.bijection_max_n) }),
    }
}

/// Runs a plan sequentially.
pub fn run_plan(checks: &[Check]) -> Result<Vec<VerificationReport>> {
    checks.iter().map(Check::run).collect()
}

/// Runs every target on the default grids.
pub fn suite(config: &VerifyConfig) -> Result<Vec<VerificationReport>> {
    run_plan(&plan(config, &Target::ALL, &Selection::default()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(c: Check) -> VerificationReport {
        c.run().unwrap()
    }

    #[test]
    fn anchored_points_pass() {
        let r = run(Check::BlocksColumns { d: 3, m: 2, sign: Sign::Plus, n: 20 });
        assert!(r.passed(), "{}", r.summary_line());
        let r = run(Check::BlocksColumns { d: 1, m: 1, sign: Sign::Minus, n: 20 });
        assert!(r.passed());
        assert!(run(Check::Blocks { m: 1, sign: Sign::Minus, n: 20 }).passed());
        assert!(run(Check::VmrBallot { s: 3, t: 2, r: 1 }).passed());
        assert!(run(Check::VmrBallot { s: 1, t: 0, r: 0 }).passed());
        assert!(run(Check::ExtensionMaj { beta: "2,3,1,2".parse().unwrap() }).passed());
        assert!(run(Check::PrefixPatterns { m: 1, sign: Sign::Minus, n: 15 }).passed());
    }

    #[test]
    fn perturbed_exponent_is_caught() {
        let r = verify_blocks_columns_with_exponent(3, 2, Sign::Plus, 20, 3 * 3 + 3 + 1 + 1).unwrap();
        assert!(!r.passed());
        let e = r.first_discrepancy.as_ref().unwrap().exponent.unwrap();
        assert!(e <= 20);
        assert!(!r.witnesses.is_empty());
    }

    #[test]
    fn finite_form_small_values() {
        let table = qseries::partition_table(10);
        // p(n) - p(n-2) for a single negative block.
        assert_eq!(blocks_finite_form(1, Sign::Minus, 2, &table), BigInt::from(1));
        assert_eq!(blocks_finite_form(1, Sign::Minus, 5, &table), BigInt::from(7 - 3));
        assert_eq!(blocks_finite_form(1, Sign::Plus, 5, &table), BigInt::from(7 - 5));
    }

    #[test]
    fn patterns() {
        assert_eq!(sign_word(&alternating_pattern(3, Sign::Minus)), "NPN");
        assert_eq!(sign_word(&alternating_pattern(2, Sign::Minus)), "PN");
        assert_eq!(prefix_shift(1, Sign::Minus), 1);
        assert_eq!(prefix_shift(1, Sign::Plus), 2);
    }

    #[test]
    fn plan_respects_pins() {
        let pins = Selection { d: Some(3), m: Some(2), ..Default::default() };
        let checks = plan(&VerifyConfig::default(), &[Target::BlocksColumns], &pins);
        assert_eq!(checks.len(), 2);
        assert!(Selection { d: Some(2), m: Some(3), ..Default::default() }.validate().is_err());
        let all = plan(&VerifyConfig::default(), &Target::ALL, &Selection::default());
        assert!(all.len() > 100);
    }

    #[test]
    fn target_names_round_trip() {
        for t in Target::ALL {
            assert_eq!(t.name().parse::<Target>().unwrap(), t);
        }
        assert!("nonsense".parse::<Target>().is_err());
    }

    #[test]
    fn report_json_shape() {
        let r = run(Check::QbinomialSum { d: 2 }).without_timing();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["target"], "qbinomial-sum");
        assert_eq!(v["status"], "pass");
        assert_eq!(v["parameters"]["d"], 2);
        assert!(v.get("first_discrepancy").is_none());
    }
}

//! Truncated power series in `q` with exact big-integer coefficients, and the
//! closed-form generating functions for parity-block counts.
//!
//! A [`QSeries`] tracks the coefficients of `q^0 ..= q^N`. Every binary
//! operation truncates to the smaller of the two precisions, so a result never
//! claims knowledge of coefficients that one of its inputs did not carry.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sign::Sign;

/// Precision used by the verification sweeps unless overridden.
pub const DEFAULT_PRECISION: usize = 40;

/// A power series `c_0 + c_1 q + ... + c_N q^N + O(q^{N+1})`.
#[derive(Debug, Clone)]
pub struct QSeries {
    precision: usize,
    coeffs: Vec<BigInt>,
}

impl QSeries {
    pub fn zero(precision: usize) -> Self {
        QSeries {
            precision,
            coeffs: vec![BigInt::zero(); precision + 1],
        }
    }

    pub fn one(precision: usize) -> Self {
        QSeries::monomial(0, BigInt::one(), precision)
    }

    /// `coeff * q^exp`, which is the zero series when `exp > precision`.
    pub fn monomial(exp: usize, coeff: BigInt, precision: usize) -> Self {
        let mut s = QSeries::zero(precision);
        if exp <= precision {
            s.coeffs[exp] = coeff;
        }
        s
    }

    /// Builds a series from leading coefficients; missing entries are zero and
    /// entries beyond `precision` are dropped.
    pub fn from_coeffs<I, T>(coeffs: I, precision: usize) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut s = QSeries::zero(precision);
        for (k, c) in coeffs.into_iter().enumerate().take(precision + 1) {
            s.coeffs[k] = c.into();
        }
        s
    }

    /// Embeds an exact polynomial (coefficient list) at the given precision.
    pub fn from_poly(poly: &[BigInt], precision: usize) -> Self {
        QSeries::from_coeffs(poly.iter().cloned(), precision)
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `q^k`; zero past the precision.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Lowers the precision. Requests above the current precision are clamped,
    /// since raising it would invent coefficients.
    pub fn truncate(&self, precision: usize) -> Self {
        let p = precision.min(self.precision);
        QSeries {
            precision: p,
            coeffs: self.coeffs[..=p].to_vec(),
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut out = QSeries::zero(self.precision);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i + k > self.precision {
                break;
            }
            out.coeffs[i + k] = c.clone();
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        QSeries {
            precision: self.precision,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let p = self.precision.min(other.precision);
        QSeries {
            precision: p,
            coeffs: (0..=p).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect(),
        }
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        let p = self.precision.min(other.precision);
        QSeries {
            precision: p,
            coeffs: (0..=p).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect(),
        }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let p = self.precision.min(other.precision);
        let mut out = QSeries::zero(p);
        for (i, a) in self.coeffs.iter().enumerate().take(p + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(p + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }

    /// Multiplicative inverse for a series whose constant term is `1` or `-1`.
    pub fn invert_unit(&self) -> Result<QSeries> {
        let c0 = &self.coeffs[0];
        if c0.abs() != BigInt::one() {
            return Err(Error::NonUnitConstant(c0.to_string()));
        }
        // c0 is its own inverse when it is ±1.
        let p = self.precision;
        let mut inv = QSeries::zero(p);
        inv.coeffs[0] = c0.clone();
        for k in 1..=p {
            let mut acc = BigInt::zero();
            for j in 1..=k {
                let a = &self.coeffs[j];
                if !a.is_zero() {
                    acc += a * &inv.coeffs[k - j];
                }
            }
            inv.coeffs[k] = -(acc * c0);
        }
        Ok(inv)
    }

    /// Divides by a unit series.
    pub fn div_unit(&self, denominator: &QSeries) -> Result<QSeries> {
        Ok(self.mul(&denominator.invert_unit()?))
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Comma-separated coefficient list, e.g. `1,1,2,1,1`.
    pub fn to_csv(&self) -> String {
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl PartialEq for QSeries {
    /// Coefficient-wise equality up to the common precision.
    fn eq(&self, other: &Self) -> bool {
        let p = self.precision.min(other.precision);
        self.coeffs[..=p] == other.coeffs[..=p]
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("q")?,
                (1, false) => write!(f, "{mag}q")?,
                (_, true) => write!(f, "q^{k}")?,
                (_, false) => write!(f, "{mag}q^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.precision + 1)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&QSeries> for &QSeries {
            type Output = QSeries;
            fn $method(self, rhs: &QSeries) -> QSeries {
                QSeries::$method(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries {
            precision: self.precision,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        -&self
    }
}

impl Serialize for QSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        let mut st = serializer.serialize_struct("QSeries", 2)?;
        st.serialize_field("precision", &self.precision)?;
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for QSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            precision: usize,
            coeffs: Vec<String>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.coeffs.len() != raw.precision + 1 {
            return Err(de::Error::custom(format!(
                "expected {} coefficients, found {}",
                raw.precision + 1,
                raw.coeffs.len()
            )));
        }
        let coeffs = raw
            .coeffs
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(QSeries {
            precision: raw.precision,
            coeffs,
        })
    }
}

/// `(1 - q^a)` at the given precision.
pub fn one_minus_q_pow(a: usize, precision: usize) -> QSeries {
    one_plus_sign_q_pow(a, -1, precision)
}

/// `(1 + q^a)` at the given precision.
pub fn one_plus_q_pow(a: usize, precision: usize) -> QSeries {
    one_plus_sign_q_pow(a, 1, precision)
}

fn one_plus_sign_q_pow(a: usize, sign: i64, precision: usize) -> QSeries {
    let mut s = QSeries::one(precision);
    if a <= precision {
        s.coeffs[a] += BigInt::from(sign);
    }
    s
}

/// `(q^a; q)_n = (1 - q^a)(1 - q^{a+1}) ... (1 - q^{a+n-1})`.
pub fn pochhammer(start_exp: usize, count: usize, precision: usize) -> QSeries {
    let mut acc = QSeries::one(precision);
    for j in 0..count {
        let e = start_exp + j;
        if e > precision {
            break;
        }
        // In-place multiply by (1 - q^e), highest index first.
        for k in (e..=precision).rev() {
            let t = acc.coeffs[k - e].clone();
            acc.coeffs[k] -= t;
        }
    }
    acc
}

/// Exact Gaussian binomial polynomial; empty (the zero polynomial) unless
/// `0 <= k <= n`.
///
/// Uses the recurrence `[n, k] = [n-1, k] + q^{n-k} [n-1, k-1]`, keeping
/// one row of the triangle at a time.
pub fn qbinomial_poly(n: usize, k: i64) -> Vec<BigInt> {
    if k < 0 || k as usize > n {
        return Vec::new();
    }
    let k = k as usize;
    // row[j] holds [i, j] for the current i.
    let mut row: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for i in 1..=n {
        let top = k.min(i);
        let mut next: Vec<Vec<BigInt>> = Vec::with_capacity(top + 1);
        for j in 0..=top {
            // [i-1, j]
            let keep: &[BigInt] = row.get(j).map(|v| v.as_slice()).unwrap_or(&[]);
            let mut poly = keep.to_vec();
            if j >= 1 {
                // q^{i-j} [i-1, j-1]
                let shift = i - j;
                let lower = &row[j - 1];
                if poly.len() < lower.len() + shift {
                    poly.resize(lower.len() + shift, BigInt::zero());
                }
                for (e, c) in lower.iter().enumerate() {
                    poly[e + shift] += c;
                }
            }
            next.push(poly);
        }
        row = next;
    }
    row.swap_remove(k)
}

/// Gaussian binomial `[n over k]` truncated to `precision`; zero unless
/// `0 <= k <= n`.
pub fn qbinomial(n: usize, k: i64, precision: usize) -> QSeries {
    QSeries::from_poly(&qbinomial_poly(n, k), precision)
}

/// `1 / (q; q)_inf`, built as a product of geometric series `1/(1 - q^j)`
/// for `j <= precision`.
pub fn euler_inverse(precision: usize) -> QSeries {
    let mut acc = QSeries::one(precision);
    for j in 1..=precision {
        for k in j..=precision {
            let t = acc.coeffs[k - j].clone();
            acc.coeffs[k] += t;
        }
    }
    acc
}

/// Generalized pentagonal numbers paired with their signs, in the order
/// `1, 2, 5, 7, 12, 15, ...` and not exceeding `limit`.
fn pentagonal_terms(limit: usize) -> Vec<(usize, bool)> {
    let mut out = Vec::new();
    for l in 1usize.. {
        let a = l * (3 * l - 1) / 2;
        if a > limit {
            break;
        }
        let positive = l % 2 == 1;
        out.push((a, positive));
        let b = l * (3 * l + 1) / 2;
        if b <= limit {
            out.push((b, positive));
        }
    }
    out
}

/// `p(0), ..., p(n)` by the pentagonal-number recurrence.
pub fn partition_table(n: usize) -> Vec<BigUint> {
    let terms = pentagonal_terms(n);
    let mut p: Vec<BigInt> = Vec::with_capacity(n + 1);
    p.push(BigInt::one());
    for k in 1..=n {
        let mut acc = BigInt::zero();
        for &(g, positive) in &terms {
            if g > k {
                break;
            }
            if positive {
                acc += &p[k - g];
            } else {
                acc -= &p[k - g];
            }
        }
        p.push(acc);
    }
    p.into_iter()
        .map(|x| x.to_biguint().expect("partition numbers are nonnegative"))
        .collect()
}

/// The partition number `p(n)`.
pub fn partition_number(n: usize) -> BigUint {
    partition_table(n).pop().expect("table is nonempty")
}

/// `p(n - k)` with the convention `p(negative) = 0`.
pub fn partition_number_shifted(table: &[BigUint], n: i64, k: i64) -> BigInt {
    let idx = n - k;
    if idx < 0 {
        BigInt::zero()
    } else {
        BigInt::from(table[idx as usize].clone())
    }
}

fn binom2(m: usize) -> usize {
    m * m.saturating_sub(1) / 2
}

/// Exponent of the leading monomial of the blocks-and-columns closed form:
/// `d^2 + d + C(m, 2)` for a positive last block, `d^2 + C(m, 2)` otherwise.
pub fn main_prefactor_exponent(d: usize, m: usize, sign: Sign) -> usize {
    let base = d * d + binom2(m);
    match sign {
        Sign::Plus => base + d,
        Sign::Minus => base,
    }
}

fn check_main_params(d: usize, m: usize) -> Result<()> {
    if m < 1 || d < m {
        return Err(Error::InvalidParameters(format!(
            "need d >= m >= 1, got d = {d}, m = {m}"
        )));
    }
    Ok(())
}

/// Generating function of partitions with `d` columns, `m` parity blocks and
/// last block of the given sign:
///
/// `q^e / (q;q)_{2d} * (1 - q^m)/(1 - q^d) * [2d over d+m]`
/// with `e` from [`main_prefactor_exponent`].
pub fn closed_form_main(d: usize, m: usize, sign: Sign, precision: usize) -> Result<QSeries> {
    closed_form_main_with_exponent(d, m, main_prefactor_exponent(d, m, sign), precision)
}

/// [`closed_form_main`] with an explicit leading exponent. Exposed so that
/// tests can perturb the exponent and confirm the checks notice.
pub fn closed_form_main_with_exponent(
    d: usize,
    m: usize,
    exponent: usize,
    precision: usize,
) -> Result<QSeries> {
    check_main_params(d, m)?;
    let n = precision;
    let lead = QSeries::monomial(exponent, BigInt::one(), n);
    let denom = pochhammer(1, 2 * d, n).invert_unit()?;
    let ratio = one_minus_q_pow(m, n).mul(&one_minus_q_pow(d, n).invert_unit()?);
    let bracket = qbinomial(2 * d, (d + m) as i64, n);
    Ok(lead.mul(&denom).mul(&ratio).mul(&bracket))
}

/// `l(3l+1)/2` and `2l+1` for a positive last block; `l(3l-1)/2` and
/// `4l+2` for a negative one.
fn truncated_euler_term(l: usize, sign: Sign) -> (usize, usize) {
    match sign {
        Sign::Plus => (l * (3 * l + 1) / 2, 2 * l + 1),
        Sign::Minus => ((3 * l * l).saturating_sub(l) / 2, 4 * l + 2),
    }
}

/// `sum_{l<m} (-1)^l q^{a_l} (1 - q^{b_l})` for the truncated pentagonal
/// sums that appear in the by-blocks generating functions.
pub fn truncated_pentagonal_sum(m: usize, sign: Sign, precision: usize) -> QSeries {
    let mut acc = QSeries::zero(precision);
    for l in 0..m {
        let (a, b) = truncated_euler_term(l, sign);
        let term = one_minus_q_pow(b, precision).shift(a);
        acc = if l % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

fn parity_sign(e: usize) -> BigInt {
    if e.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Generating function of partitions with exactly `m` parity blocks and last
/// block of the given sign:
///
/// `(-1)^m + (-1)^{m-1} / (q;q)_inf * sum_{l<m} (-1)^l q^{a_l} (1 - q^{b_l})`.
pub fn closed_form_by_blocks(m: usize, sign: Sign, precision: usize) -> Result<QSeries> {
    if m < 1 {
        return Err(Error::InvalidParameters("need m >= 1".into()));
    }
    let n = precision;
    let sum = truncated_pentagonal_sum(m, sign, n);
    let body = euler_inverse(n).mul(&sum).scale(&parity_sign(m - 1));
    Ok(QSeries::monomial(0, parity_sign(m), n).add(&body))
}

/// Generating function of partitions with `d` columns whose last block has
/// the given sign: `q^e / ((q;q)_d^2 (1 + q^d))`, `e = d^2 + d` or `d^2`.
pub fn closed_form_by_columns(d: usize, sign: Sign, precision: usize) -> Result<QSeries> {
    if d < 1 {
        return Err(Error::InvalidParameters("need d >= 1".into()));
    }
    let n = precision;
    let e = match sign {
        Sign::Plus => d * d + d,
        Sign::Minus => d * d,
    };
    let poch = pochhammer(1, d, n);
    let denom = poch.mul(&poch).mul(&one_plus_q_pow(d, n));
    QSeries::monomial(e, BigInt::one(), n).div_unit(&denom)
}

/// Checks, as exact polynomials, that
/// `sum_{m=1}^{d} q^{C(m,2)} (1 - q^m) [2d over d+m] * (1 + q^d)`
/// equals `(1 - q^d) [2d over d]`.
pub fn qbinomial_sum_identity(d: usize) -> bool {
    let (lhs, rhs) = qbinomial_sum_sides(d);
    lhs == rhs
}

/// Both sides of [`qbinomial_sum_identity`], multiplied through by
/// `(1 + q^d)`, at a precision above either degree.
pub fn qbinomial_sum_sides(d: usize) -> (QSeries, QSeries) {
    // LHS degree <= C(d,2) + d + d^2 + d; RHS degree <= d + d^2.
    let n = 3 * d * d + 2 * d + 1;
    let mut lhs = QSeries::zero(n);
    for m in 1..=d {
        let term = one_minus_q_pow(m, n)
            .mul(&qbinomial(2 * d, (d + m) as i64, n))
            .shift(binom2(m));
        lhs = lhs.add(&term);
    }
    let lhs = lhs.mul(&one_plus_q_pow(d, n));
    let rhs = one_minus_q_pow(d, n).mul(&qbinomial(2 * d, d as i64, n));
    (lhs, rhs)
}

/// Evaluates an exact polynomial at `q = 1`.
pub fn eval_at_one(poly: &[BigInt]) -> BigInt {
    poly.iter().sum()
}

/// Converts a coefficient to `u64` when it fits.
pub fn to_u64(c: &BigInt) -> Option<u64> {
    c.to_u64()
}

//! The weight-tracking chain from Frobenius symbols to poset partitions.
//!
//! ```text
//! λ  --subtract staircase-->  μ  --flip negative blocks-->  μ̂
//!    --place in S_β-->  γ  --subtract row constants-->  π
//! ```
//!
//! Each arrow is invertible once `β` and the last-block sign are known, and
//! [`pi_to_lambda`] undoes them one at a time.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::{FrobeniusSymbol, ParityBlocks};
use crate::posets::{Composition, PosetPartition, SBetaStructure};
use crate::sign::Sign;

/// Two weakly decreasing rows of equal length, remembering the parity
/// blocks of the symbol they came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrobeniusArray {
    top: Vec<u32>,
    bottom: Vec<u32>,
    blocks: ParityBlocks,
}

impl FrobeniusArray {
    pub fn top(&self) -> &[u32] {
        &self.top
    }

    pub fn bottom(&self) -> &[u32] {
        &self.bottom
    }

    pub fn columns(&self) -> usize {
        self.top.len()
    }

    pub fn blocks(&self) -> &ParityBlocks {
        &self.blocks
    }

    pub fn weight(&self) -> u64 {
        self.top.iter().chain(&self.bottom).map(|&v| v as u64).sum()
    }

    /// The composition of block sizes.
    pub fn beta(&self) -> Composition {
        Composition::new(self.blocks.sizes().to_vec()).expect("symbols have at least one block")
    }
}

fn staircase(d: usize) -> impl Iterator<Item = u32> {
    (0..d).map(move |i| (d - 1 - i) as u32)
}

/// Subtracts `d-1, d-2, ..., 0` from both rows.
pub fn symbol_to_array(f: &FrobeniusSymbol) -> FrobeniusArray {
    let d = f.columns();
    let sub = |row: &[u32]| row.iter().zip(staircase(d)).map(|(v, s)| v - s).collect();
    FrobeniusArray {
        top: sub(f.top()),
        bottom: sub(f.bottom()),
        blocks: f.parity_blocks(),
    }
}

/// Adds the staircase back.
pub fn array_to_symbol(a: &FrobeniusArray) -> Result<FrobeniusSymbol> {
    let d = a.columns();
    let add = |row: &[u32]| row.iter().zip(staircase(d)).map(|(v, s)| v + s).collect();
    FrobeniusSymbol::new(add(&a.top), add(&a.bottom))
}

/// `μ̂`: top and bottom entries exchanged inside every negative block.
pub fn flip_negative_blocks(a: &FrobeniusArray) -> (Vec<u32>, Vec<u32>) {
    let (mut top, mut bottom) = (a.top.clone(), a.bottom.clone());
    let mut start = 0;
    for (&size, &sign) in a.blocks.sizes().iter().zip(a.blocks.signs()) {
        if sign == Sign::Minus {
            for k in start..start + size {
                std::mem::swap(&mut top[k], &mut bottom[k]);
            }
        }
        start += size;
    }
    (top, bottom)
}

/// Places block `l` of a two-row array on rows `l` and `l + 1` of `S_β`.
fn place(s: &SBetaStructure, top: &[u32], bottom: &[u32]) -> Vec<u64> {
    let r = s.beta().partial_sums();
    let mut values = vec![0u64; s.size()];
    for l in 1..=s.beta().len() {
        for j in r[l - 1] + 1..=r[l] {
            values[s.label(l, j).unwrap() - 1] = top[j - 1] as u64;
            values[s.label(l + 1, j).unwrap() - 1] = bottom[j - 1] as u64;
        }
    }
    values
}

/// Inverse of [`place`].
fn unplace(s: &SBetaStructure, values: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let r = s.beta().partial_sums();
    let d = s.beta().total();
    let (mut top, mut bottom) = (vec![0; d], vec![0; d]);
    for l in 1..=s.beta().len() {
        for j in r[l - 1] + 1..=r[l] {
            top[j - 1] = values[s.label(l, j).unwrap() - 1];
            bottom[j - 1] = values[s.label(l + 1, j).unwrap() - 1];
        }
    }
    (top, bottom)
}

/// `γ`: the flipped array laid out on `S_β` with `β` the block sizes.
pub fn array_to_gamma(a: &FrobeniusArray) -> Result<PosetPartition> {
    let s = SBetaStructure::new(a.beta());
    let (top, bottom) = flip_negative_blocks(a);
    PosetPartition::from_values(&s, place(&s, &top, &bottom))
}

/// Constants subtracted from rows `1..=m+1` of `γ`, listed top to bottom.
///
/// For the plus case row `i` loses `⌊(m + 2 - i) / 2⌋`. For the minus case
/// the `i`-th row from the bottom loses `⌊(i - 1) / 2⌋`.
pub fn row_offsets(m: usize, sign: Sign) -> Vec<u64> {
    (1..=m + 1)
        .map(|i| match sign {
            Sign::Plus => ((m + 2 - i) / 2) as u64,
            Sign::Minus => {
                let from_bottom = m + 2 - i;
                ((from_bottom - 1) / 2) as u64
            }
        })
        .collect()
}

/// `|γ| - |π|`: `r_1 + ... + r_m` for plus, `r_1 + ... + r_{m-1}` for minus.
pub fn weight_drop(beta: &Composition, sign: Sign) -> u64 {
    let r = beta.partial_sums();
    let upto = match sign {
        Sign::Plus => beta.len(),
        Sign::Minus => beta.len() - 1,
    };
    r[1..=upto].iter().map(|&x| x as u64).sum()
}

fn shift_rows(g: &PosetPartition, sign: Sign, subtract: bool) -> Result<PosetPartition> {
    let s = g.structure();
    let offsets = row_offsets(s.beta().len(), sign);
    let mut values = g.values().to_vec();
    for (i, &off) in offsets.iter().enumerate() {
        for nu in s.row_labels(i + 1) {
            let v = &mut values[nu - 1];
            if subtract {
                *v = v.checked_sub(off).ok_or_else(|| {
                    let (a, b) = s.coords(nu);
                    Error::InvalidPosetPartition(format!(
                        "entry {} at ({a},{b}) is smaller than the row constant {off}",
                        *v
                    ))
                })?;
            } else {
                *v += off;
            }
        }
    }
    PosetPartition::from_values(&s, values)
}

/// `π`: `γ` with the row constants of [`row_offsets`] removed.
pub fn gamma_to_pi(g: &PosetPartition, sign: Sign) -> Result<PosetPartition> {
    shift_rows(g, sign, true)
}

/// `γ` recovered from `π` by adding the row constants back.
pub fn pi_to_gamma(p: &PosetPartition, sign: Sign) -> Result<PosetPartition> {
    shift_rows(p, sign, false)
}

/// The full forward map, returning `π` and the last-block sign of `λ`.
pub fn lambda_to_pi(f: &FrobeniusSymbol) -> Result<(PosetPartition, Sign)> {
    let mu = symbol_to_array(f);
    let sign = mu.blocks.last_sign().expect("nonempty symbol");
    let gamma = array_to_gamma(&mu)?;
    Ok((gamma_to_pi(&gamma, sign)?, sign))
}

/// Block signs alternating and ending in `last`.
fn alternating_signs(m: usize, last: Sign) -> Vec<Sign> {
    (0..m)
        .map(|l| if (m - 1 - l).is_multiple_of(2) { last } else { last.flip() })
        .collect()
}

/// Inverts the chain, checking that the result really maps back to `p`.
pub fn pi_to_lambda(p: &PosetPartition, sign: Sign) -> Result<FrobeniusSymbol> {
    let gamma = pi_to_gamma(p, sign)?;
    let s = gamma.structure();
    let (mut top, mut bottom) = unplace(&s, gamma.values());
    let signs = alternating_signs(s.beta().len(), sign);
    let r = s.beta().partial_sums();
    for (l, &bs) in signs.iter().enumerate() {
        if bs == Sign::Minus {
            for k in r[l]..r[l + 1] {
                std::mem::swap(&mut top[k], &mut bottom[k]);
            }
        }
    }
    let narrow = |row: Vec<u64>| -> Result<Vec<u32>> {
        row.into_iter()
            .map(|v| u32::try_from(v).map_err(|_| Error::NotInImage(format!("entry {v} too large"))))
            .collect()
    };
    let (top, bottom) = (narrow(top)?, narrow(bottom)?);
    for (name, row) in [("top", &top), ("bottom", &bottom)] {
        if row.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotInImage(format!(
                "recovered {name} row {row:?} is not weakly decreasing"
            )));
        }
    }
    let d = top.len();
    let add = |row: &[u32]| row.iter().zip(staircase(d)).map(|(v, s)| v + s).collect::<Vec<_>>();
    let lambda = FrobeniusSymbol::new(add(&top), add(&bottom))
        .map_err(|e| Error::NotInImage(e.to_string()))?;
    let blocks = lambda.parity_blocks();
    if blocks.sizes() != s.beta().parts() || blocks.signs() != signs.as_slice() {
        return Err(Error::NotInImage(format!(
            "recovered symbol {lambda} has blocks {:?} {} instead of {} ending in {}",
            blocks.sizes(),
            blocks.sign_word(),
            s.beta(),
            sign.letter()
        )));
    }
    Ok(lambda)
}

/// One stage of a chain trace, serialized with a `stage` tag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "stage", rename_all = "snake_case")]
pub enum Stage {
    Lambda {
        top: Vec<u32>,
        bottom: Vec<u32>,
        sizes: Vec<usize>,
        signs: String,
        weight: u64,
    },
    Mu {
        top: Vec<u32>,
        bottom: Vec<u32>,
        weight: u64,
    },
    MuHat {
        top: Vec<u32>,
        bottom: Vec<u32>,
        weight: u64,
    },
    Gamma {
        beta: Vec<usize>,
        rows: Vec<Vec<u64>>,
        weight: u64,
    },
    Pi {
        beta: Vec<usize>,
        rows: Vec<Vec<u64>>,
        sign: Sign,
        weight: u64,
    },
}

impl Stage {
    pub fn name(&self) -> &'static str {
        match self {
            Stage::Lambda { .. } => "lambda",
            Stage::Mu { .. } => "mu",
            Stage::MuHat { .. } => "mu_hat",
            Stage::Gamma { .. } => "gamma",
            Stage::Pi { .. } => "pi",
        }
    }

    pub fn weight(&self) -> u64 {
        match self {
            Stage::Lambda { weight, .. }
            | Stage::Mu { weight, .. }
            | Stage::MuHat { weight, .. }
            | Stage::Gamma { weight, .. }
            | Stage::Pi { weight, .. } => *weight,
        }
    }

    /// A one-line human-readable rendering.
    pub fn describe(&self) -> String {
        let row = |r: &[u32]| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
        let grid = |rows: &[Vec<u64>]| {
            rows.iter()
                .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
                .collect::<Vec<_>>()
                .join(" / ")
        };
        match self {
            Stage::Lambda { top, bottom, signs, weight, .. } => {
                format!("lambda  ({} / {})  blocks {signs}  weight {weight}", row(top), row(bottom))
            }
            Stage::Mu { top, bottom, weight } => {
                format!("mu      ({} / {})  weight {weight}", row(top), row(bottom))
            }
            Stage::MuHat { top, bottom, weight } => {
                format!("mu_hat  ({} / {})  weight {weight}", row(top), row(bottom))
            }
            Stage::Gamma { rows, weight, .. } => format!("gamma   {}  weight {weight}", grid(rows)),
            Stage::Pi { rows, weight, .. } => format!("pi      {}  weight {weight}", grid(rows)),
        }
    }
}

/// Every intermediate object of the forward chain.
pub fn trace(f: &FrobeniusSymbol) -> Result<Vec<Stage>> {
    let blocks = f.parity_blocks();
    let mu = symbol_to_array(f);
    let (ht, hb) = flip_negative_blocks(&mu);
    let gamma = array_to_gamma(&mu)?;
    let sign = blocks.last_sign().expect("nonempty symbol");
    let pi = gamma_to_pi(&gamma, sign)?;
    let weight2 = |t: &[u32], b: &[u32]| t.iter().chain(b).map(|&v| v as u64).sum();
    Ok(vec![
        Stage::Lambda {
            top: f.top().to_vec(),
            bottom: f.bottom().to_vec(),
            sizes: blocks.sizes().to_vec(),
            signs: blocks.sign_word(),
            weight: f.size(),
        },
        Stage::Mu {
            top: mu.top.clone(),
            bottom: mu.bottom.clone(),
            weight: mu.weight(),
        },
        Stage::MuHat {
            weight: weight2(&ht, &hb),
            top: ht,
            bottom: hb,
        },
        Stage::Gamma {
            beta: gamma.beta().parts().to_vec(),
            rows: gamma.rows(),
            weight: gamma.weight(),
        },
        Stage::Pi {
            beta: pi.beta().parts().to_vec(),
            rows: pi.rows(),
            sign,
            weight: pi.weight(),
        },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn worked() -> FrobeniusSymbol {
        FrobeniusSymbol::new(
            vec![16, 14, 13, 12, 10, 4, 3, 1],
            vec![17, 14, 12, 11, 8, 6, 1, 0],
        )
        .unwrap()
    }

    #[test]
    fn worked_chain() {
        let f = worked();
        assert_eq!(f.size(), 150);
        assert_eq!(f.parity_blocks().sign_word(), "NPNP");
        let mu = symbol_to_array(&f);
        assert_eq!(mu.top(), &[9, 8, 8, 8, 7, 2, 2, 1]);
        assert_eq!(mu.bottom(), &[10, 8, 7, 7, 5, 4, 0, 0]);
        assert_eq!(mu.weight(), 150 - 64);
        let (ht, hb) = flip_negative_blocks(&mu);
        assert_eq!(ht, vec![10, 8, 8, 8, 7, 4, 2, 1]);
        assert_eq!(hb, vec![9, 8, 7, 7, 5, 2, 0, 0]);
        let gamma = array_to_gamma(&mu).unwrap();
        assert_eq!(
            gamma.rows(),
            vec![vec![10, 8], vec![9, 8, 8, 8, 7], vec![7, 7, 5, 4], vec![2, 2, 1], vec![0, 0]]
        );
        assert_eq!(gamma.weight(), 86);
        let pi = gamma_to_pi(&gamma, Sign::Plus).unwrap();
        assert_eq!(
            pi.rows(),
            vec![vec![8, 6], vec![7, 6, 6, 6, 5], vec![6, 6, 4, 3], vec![1, 1, 0], vec![0, 0]]
        );
        assert_eq!(pi.weight(), 65);
        assert_eq!(weight_drop(pi.beta(), Sign::Plus), 21);
        assert_eq!(pi_to_lambda(&pi, Sign::Plus).unwrap(), f);
    }

    #[test]
    fn offsets() {
        assert_eq!(row_offsets(4, Sign::Plus), vec![2, 2, 1, 1, 0]);
        assert_eq!(row_offsets(1, Sign::Plus), vec![1, 0]);
        assert_eq!(row_offsets(1, Sign::Minus), vec![0, 0]);
        assert_eq!(row_offsets(3, Sign::Minus), vec![1, 1, 0, 0]);
    }

    #[test]
    fn single_column() {
        let f = FrobeniusSymbol::new(vec![5], vec![2]).unwrap();
        let mu = symbol_to_array(&f);
        assert_eq!((mu.top(), mu.bottom()), (&[5][..], &[2][..]));
        let g = array_to_gamma(&mu).unwrap();
        assert_eq!(g.rows(), vec![vec![5], vec![2]]);
        let (pi, sign) = lambda_to_pi(&f).unwrap();
        assert_eq!(sign, Sign::Plus);
        assert_eq!(pi.rows(), vec![vec![4], vec![2]]);
        assert_eq!(pi_to_lambda(&pi, Sign::Plus).unwrap(), f);
    }

    #[test]
    fn rejects_negative_entries() {
        let beta = Composition::new(vec![1]).unwrap();
        assert!(PosetPartition::from_rows(beta.clone(), &[vec![2], vec![3]]).is_err());
        let zero = PosetPartition::from_rows(beta, &[vec![0], vec![0]]).unwrap();
        assert!(gamma_to_pi(&zero, Sign::Plus).is_err());
        assert!(gamma_to_pi(&zero, Sign::Minus).is_ok());
    }

    #[test]
    fn every_small_poset_partition_inverts() {
        for d in 1..=3 {
            for beta in Composition::all_of(d) {
                let s = SBetaStructure::new(beta);
                for p in crate::posets::list_poset_partitions(&s, 6) {
                    for sign in Sign::BOTH {
                        let lambda = pi_to_lambda(&p, sign).unwrap();
                        assert_eq!(lambda_to_pi(&lambda).unwrap(), (p.clone(), sign));
                    }
                }
            }
        }
    }

    #[test]
    fn trace_json() {
        let stages = trace(&worked()).unwrap();
        let names: Vec<&str> = stages.iter().map(|s| s.name()).collect();
        assert_eq!(names, vec!["lambda", "mu", "mu_hat", "gamma", "pi"]);
        let weights: Vec<u64> = stages.iter().map(|s| s.weight()).collect();
        assert_eq!(weights, vec![150, 86, 86, 86, 65]);
        let json = serde_json::to_value(&stages).unwrap();
        assert_eq!(json[2]["stage"], "mu_hat");
        assert_eq!(json[4]["sign"], "plus");
    }
}

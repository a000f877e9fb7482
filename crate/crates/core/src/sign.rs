use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Sign of a Frobenius column or parity block.
///
/// A column `(x, y)` is positive when `x - y >= 1` and negative when
/// `x - y <= 0`. The same type selects the last-block sign in counts and
/// closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    /// Sign of a column with the given successive rank.
    pub fn of_rank(rank: i64) -> Sign {
        if rank >= 1 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// The block letter, `P` or `N`.
    pub fn letter(self) -> char {
        match self {
            Sign::Plus => 'P',
            Sign::Minus => 'N',
        }
    }

    pub fn from_letter(c: char) -> Option<Sign> {
        match c {
            'P' | 'p' | '+' => Some(Sign::Plus),
            'N' | 'n' | '-' => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "plus" | "p" | "+" | "positive" => Ok(Sign::Plus),
            "minus" | "n" | "-" | "negative" => Ok(Sign::Minus),
            other => Err(Error::Parse(format!("unknown sign {other:?}"))),
        }
    }
}

/// Renders a sign word such as `NPNP`.
pub fn sign_word(signs: &[Sign]) -> String {
    signs.iter().map(|s| s.letter()).collect()
}

/// Parses a sign word over `{P, N}`.
pub fn parse_sign_word(word: &str) -> Result<Vec<Sign>, Error> {
    word.chars()
        .map(|c| Sign::from_letter(c).ok_or_else(|| Error::Parse(format!("bad sign letter {c:?}"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_zero_is_negative() {
        assert_eq!(Sign::of_rank(0), Sign::Minus);
        assert_eq!(Sign::of_rank(-3), Sign::Minus);
        assert_eq!(Sign::of_rank(1), Sign::Plus);
    }

    #[test]
    fn words_round_trip() {
        let w = parse_sign_word("NPNP").unwrap();
        assert_eq!(sign_word(&w), "NPNP");
        assert!(parse_sign_word("NX").is_err());
    }
}

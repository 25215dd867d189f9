use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::word::{Letter, Word};
use crate::error::Error;

/// A composition `(k₁, …, k_r)` of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Index(Vec<u32>);

impl Index {
    pub fn new(parts: Vec<u32>) -> Result<Index, Error> {
        if parts.is_empty() {
            return Err(Error::EmptyIndex);
        }
        if parts.contains(&0) {
            return Err(Error::ZeroPart(format!("{parts:?}")));
        }
        Ok(Index(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn max_part(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Last part at least 2.
    pub fn is_admissible(&self) -> bool {
        self.0.last().is_some_and(|&k| k >= 2)
    }

    /// `y x^{k₁-1} ⋯ y x^{k_r-1}`.
    pub fn to_word(&self) -> Word {
        let mut w = Word::empty();
        for &k in &self.0 {
            w = w.push(Letter::Y);
            for _ in 1..k {
                w = w.push(Letter::X);
            }
        }
        w
    }

    /// Inverse of [`Index::to_word`] on words beginning with `y`.
    pub fn from_word(w: Word) -> Result<Index, Error> {
        if !w.starts_with(Letter::Y) {
            return Err(Error::NotInYH(w.to_string()));
        }
        let mut parts = Vec::new();
        for l in w.letters() {
            match l {
                Letter::Y => parts.push(1),
                Letter::X => *parts.last_mut().unwrap() += 1,
            }
        }
        Ok(Index(parts))
    }

    /// All compositions of `n`, lexicographic.
    pub fn compositions(n: u32) -> Vec<Index> {
        fn go(rest: u32, cur: &mut Vec<u32>, out: &mut Vec<Index>) {
            if rest == 0 {
                out.push(Index(cur.clone()));
                return;
            }
            for k in 1..=rest {
                cur.push(k);
                go(rest - k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            go(n, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Index {
    type Err = Error;

    fn from_str(s: &str) -> Result<Index, Error> {
        let s = s.trim();
        let inner = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s);
        if inner.trim().is_empty() {
            return Err(Error::EmptyIndex);
        }
        let parts = inner
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad index {s:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Index::new(parts)
    }
}

impl Serialize for Index {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Index {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Index, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

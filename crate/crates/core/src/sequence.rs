//! One-sided binary sequences with computable tails.
//!
//! A sequence is a finite prefix followed by either a constant tail or a
//! shifted copy of the stream `s*`, the concatenation of every finite binary
//! word in length-lexicographic order (`0 1 00 01 10 11 000 ...`). Every
//! word occurs in `s*`, so its shift orbit is dense.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bit `n` of `s*`.
pub fn stream_bit(n: u64) -> bool {
    let mut start = 0u64;
    let mut len = 1u32;
    loop {
        let block = u64::from(len) << len;
        if n < start + block {
            let off = n - start;
            let word = off / u64::from(len);
            let pos = (off % u64::from(len)) as u32;
            return (word >> (len - 1 - pos)) & 1 == 1;
        }
        start += block;
        len += 1;
    }
}

/// First offset `m >= from` such that `s*[m + i] == word[i]` for all `i`.
pub fn stream_find(word: &[bool], from: u64, cap: u64) -> Option<u64> {
    (from..from.saturating_add(cap)).find(|&m| {
        word.iter().enumerate().all(|(i, &b)| stream_bit(m + i as u64) == b)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tail {
    Zeros,
    Ones,
    /// `s*` shifted left by the offset.
    Stream(u64),
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BinarySeq {
    prefix: Vec<bool>,
    tail: Tail,
}

impl BinarySeq {
    pub fn new(prefix: Vec<bool>, tail: Tail) -> BinarySeq {
        let mut s = BinarySeq { prefix, tail };
        s.canonicalize();
        s
    }

    pub fn constant(bit: bool) -> BinarySeq {
        BinarySeq { prefix: Vec::new(), tail: if bit { Tail::Ones } else { Tail::Zeros } }
    }

    /// `σ^offset(s*)`.
    pub fn stream(offset: u64) -> BinarySeq {
        BinarySeq { prefix: Vec::new(), tail: Tail::Stream(offset) }
    }

    /// Parses `"0110"` followed by an optional tail marker: `"0110|0"`,
    /// `"0110|1"` or `"0110|s5"`. No marker means a zero tail.
    pub fn parse(text: &str) -> Result<BinarySeq> {
        let (word, tail) = text.split_once('|').unwrap_or((text, "0"));
        let prefix = word
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Domain(format!("bad bit {c:?} in {text:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let tail = match tail {
            "0" => Tail::Zeros,
            "1" => Tail::Ones,
            s if s.starts_with('s') => Tail::Stream(
                s[1..].parse().map_err(|_| Error::Domain(format!("bad stream offset in {text:?}")))?,
            ),
            _ => return Err(Error::Domain(format!("bad tail in {text:?}"))),
        };
        Ok(BinarySeq::new(prefix, tail))
    }

    // Absorb trailing prefix bits into the tail so equal sequences have
    // equal representations (s* is not eventually periodic).
    fn canonicalize(&mut self) {
        loop {
            let Some(&last) = self.prefix.last() else { return };
            match self.tail {
                Tail::Zeros if !last => {}
                Tail::Ones if last => {}
                Tail::Stream(o) if o > 0 && stream_bit(o - 1) == last => self.tail = Tail::Stream(o - 1),
                _ => return,
            }
            self.prefix.pop();
        }
    }

    pub fn prefix(&self) -> &[bool] {
        &self.prefix
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    pub fn bit(&self, n: u64) -> bool {
        let p = self.prefix.len() as u64;
        if n < p {
            return self.prefix[n as usize];
        }
        match self.tail {
            Tail::Zeros => false,
            Tail::Ones => true,
            Tail::Stream(o) => stream_bit(o + n - p),
        }
    }

    pub fn shift_by(&self, k: u64) -> BinarySeq {
        let p = self.prefix.len() as u64;
        if k <= p {
            return BinarySeq { prefix: self.prefix[k as usize..].to_vec(), tail: self.tail };
        }
        let tail = match self.tail {
            Tail::Stream(o) => Tail::Stream(o + k - p),
            t => t,
        };
        BinarySeq { prefix: Vec::new(), tail }
    }

    pub fn shift(&self) -> BinarySeq {
        self.shift_by(1)
    }

    pub fn is_eventually_constant(&self) -> bool {
        !matches!(self.tail, Tail::Stream(_))
    }

    /// Membership in the shift-invariant set of eventually constant
    /// sequences together with the orbit of `s*`.
    pub fn in_subsystem(&self) -> bool {
        self.is_eventually_constant() || self.prefix.is_empty()
    }

    pub fn starts_with(&self, word: &[bool]) -> bool {
        self.matches_at(0, word)
    }

    pub fn matches_at(&self, start: u64, word: &[bool]) -> bool {
        word.iter().enumerate().all(|(i, &b)| self.bit(start + i as u64) == b)
    }

    /// Least index where the sequences differ, `None` if equal.
    pub fn first_difference(&self, other: &BinarySeq, lookahead: u64) -> Result<Option<u64>> {
        if self == other {
            return Ok(None);
        }
        let both_const = self.is_eventually_constant() && other.is_eventually_constant();
        let horizon = if both_const {
            self.prefix.len().max(other.prefix.len()) as u64 + 1
        } else {
            lookahead
        };
        (0..horizon)
            .find(|&n| self.bit(n) != other.bit(n))
            .map(Some)
            .ok_or_else(|| Error::Budget(format!("sequences agree on the first {lookahead} coordinates")))
    }

    /// Least period under the shift, if the sequence is periodic.
    pub fn shift_period(&self) -> Option<u64> {
        match self.tail {
            Tail::Stream(_) => None,
            _ if self.prefix.is_empty() => Some(1),
            _ => None,
        }
    }
}

impl fmt::Display for BinarySeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.prefix {
            f.write_str(if b { "1" } else { "0" })?;
        }
        match self.tail {
            Tail::Zeros => f.write_str("|0"),
            Tail::Ones => f.write_str("|1"),
            Tail::Stream(o) => write!(f, "|s{o}"),
        }
    }
}

impl fmt::Debug for BinarySeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

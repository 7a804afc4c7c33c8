use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Rat;

/// Search limits for every detector. Exact computations never consult the
/// clock unless `wall_clock_ms` is set, so default runs are reproducible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub k_max: u32,
    pub p_max: u32,
    pub epsilon: Rat,
    pub samples: usize,
    pub wall_clock_ms: Option<u64>,
    pub max_pieces: usize,
    pub lookahead: u64,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget {
            k_max: 64,
            p_max: 16,
            epsilon: Rat::dyadic(10),
            samples: 10_000,
            wall_clock_ms: None,
            max_pieces: 1 << 17,
            lookahead: 1 << 16,
        }
    }
}

impl Budget {
    pub fn validate(&self) -> Result<()> {
        if self.k_max == 0 || self.p_max == 0 || self.samples == 0 || self.max_pieces == 0 || self.lookahead == 0 {
            return Err(Error::Config("budget limits must be positive".into()));
        }
        if !self.epsilon.is_positive() {
            return Err(Error::Config("net epsilon must be positive".into()));
        }
        Ok(())
    }

    pub fn with_k_max(mut self, k: u32) -> Budget {
        self.k_max = k;
        self
    }

    pub fn with_p_max(mut self, p: u32) -> Budget {
        self.p_max = p;
        self
    }

    pub fn deadline(&self) -> Deadline {
        Deadline(self.wall_clock_ms.map(|ms| Instant::now() + Duration::from_millis(ms)))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Deadline(Option<Instant>);

impl Deadline {
    pub fn expired(&self) -> bool {
        self.0.is_some_and(|t| Instant::now() >= t)
    }
}

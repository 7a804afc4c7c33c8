use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::catalog::CatalogMap;
use crate::error::{Error, Result};
use crate::scalar::Rat;
use crate::space::{PhasePoint, PhaseSpace};

/// Which `ε`-cells an orbit segment visits. This is coverage evidence
/// only; it never claims density.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    pub start: PhasePoint,
    pub steps: u64,
    pub epsilon: Rat,
    /// Number of cells covering the space, when it is bounded.
    pub cells: Option<u64>,
    /// Indices of visited cells in increasing order; cell `i` is
    /// `[lo + iε, lo + (i+1)ε)`.
    pub visited: Vec<i64>,
    /// Longest run of consecutive unvisited cells, when bounded.
    pub largest_gap: Option<u64>,
    /// Step at which the orbit first repeated, if it did.
    pub cycle_at: Option<u64>,
}

impl GapReport {
    pub fn coverage(&self) -> Option<f64> {
        self.cells.map(|c| self.visited.len() as f64 / c as f64)
    }
}

/// Visits `p, f(p), …, f^{n−1}(p)` and records the cells they fall in.
pub fn orbit_density_probe(map: &CatalogMap, p: &PhasePoint, n: u64, epsilon: &Rat) -> Result<GapReport> {
    if n == 0 {
        return Err(Error::Config("orbit length must be at least 1".into()));
    }
    if !epsilon.is_positive() {
        return Err(Error::Config(format!("cell size must be positive, got {epsilon}")));
    }
    let space = map.space();
    let (lo, cells) = match &space {
        PhaseSpace::Interval { lo, hi } => (lo.clone(), Some(ceil(&((hi - lo) / epsilon)))),
        PhaseSpace::Circle => (Rat::zero(), Some(ceil(&(Rat::one() / epsilon)))),
        PhaseSpace::RealLine => (Rat::zero(), None),
        other => return Err(Error::Domain(format!("no cell grid on {other}"))),
    };
    let cell = |x: &PhasePoint| -> Result<i64> {
        let v = match x {
            PhasePoint::Real(v) => v.clone(),
            PhasePoint::Circle(a) => a.as_rational().cloned().unwrap_or_else(|| approx_rat(a.to_f64())),
            _ => return Err(Error::Domain(format!("{x} is not a point of the line or circle"))),
        };
        let i = ((&v - &lo) / epsilon).floor().to_f64() as i64;
        // the right endpoint of a closed interval falls into the last cell
        Ok(match cells {
            Some(c) => i.min(c as i64 - 1),
            None => i,
        })
    };
    let mut visited = BTreeSet::new();
    let mut seen = HashSet::new();
    let mut cycle_at = None;
    let mut x = p.clone();
    for step in 0..n {
        visited.insert(cell(&x)?);
        if !seen.insert(x.clone()) {
            // from here on the orbit only revisits cells
            cycle_at = Some(step);
            break;
        }
        if step + 1 < n {
            x = map.eval(&x)?;
        }
    }
    let visited: Vec<i64> = visited.into_iter().collect();
    let largest_gap = cells.map(|c| {
        let mut best = 0u64;
        let mut prev = -1i64;
        for &v in visited.iter().chain(std::iter::once(&(c as i64))) {
            best = best.max((v - prev - 1).max(0) as u64);
            prev = v;
        }
        best
    });
    Ok(GapReport { start: p.clone(), steps: n, epsilon: epsilon.clone(), cells, visited, largest_gap, cycle_at })
}

fn ceil(x: &Rat) -> u64 {
    let f = x.floor();
    let c = if &f == x { f } else { f + Rat::one() };
    c.to_f64() as u64
}

fn approx_rat(v: f64) -> Rat {
    Rat::new((v * (1u64 << 40) as f64).floor() as i64, 1 << 40)
}

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard resource limits. Every potentially runaway computation takes a
/// budget and converts exhaustion into a clean [`Error::Budget`] naming
/// the stage, so published scenarios stay reproducible and honest about
/// what they can afford.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Budget {
    /// Maximum number of S-pairs processed in one Buchberger run.
    pub max_pairs: usize,
    /// Maximum total degree (in the ring variables) any intermediate
    /// polynomial may reach during basis computation.
    pub max_degree: u32,
    /// Maximum number of coset representatives enumerated at once.
    pub max_cosets: usize,
    /// Maximum number of group points enumerated in one ball.
    pub max_points: usize,
    /// Maximum jet order accepted by prolongation.
    pub max_jet_order: usize,
    /// Maximum rounds of the linear-locus iteration.
    pub max_iterations: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_pairs: 200_000,
            max_degree: 96,
            max_cosets: 4_096,
            max_points: 20_000,
            max_jet_order: 3,
            max_iterations: 8,
        }
    }
}

impl Budget {
    pub fn check_degree(&self, deg: u32, stage: &'static str) -> Result<()> {
        if deg > self.max_degree {
            return Err(Error::Budget {
                stage,
                detail: format!("total degree {deg} exceeds limit {}", self.max_degree),
            });
        }
        Ok(())
    }

    pub fn check_count(&self, count: usize, limit: usize, stage: &'static str) -> Result<()> {
        if count > limit {
            return Err(Error::Budget {
                stage,
                detail: format!("count {count} exceeds limit {limit}"),
            });
        }
        Ok(())
    }
}

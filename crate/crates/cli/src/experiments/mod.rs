//! The experiment harness: E1–E8 reproduce the calculus identities and
//! convergence claims as tables with pass/fail thresholds pinned in code.

pub mod data;
mod e1;
mod e2;
mod e3;
mod e4;
mod e5;
mod e6;
mod e7;
mod e8;

use crate::table::ExperimentTable;
use chainlet_core::error::{ChainletError, Result};
use chainlet_core::exterior::DIM_CAP;

/// Residual threshold for algebraically exact identities.
pub const EXACT_TOL: f64 = 1e-12;
/// Residual threshold for flow-based identities.
pub const FLOW_TOL: f64 = 1e-8;
/// Slope threshold certifying first-order convergence on a log₂ scale.
pub const FIRST_ORDER_SLOPE: f64 = -0.9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentId {
    E1,
    E2,
    E3,
    E4,
    E5,
    E6,
    E7,
    E8,
}

impl ExperimentId {
    pub fn parse(text: &str) -> Option<Self> {
        match text.to_ascii_uppercase().as_str() {
            "E1" => Some(ExperimentId::E1),
            "E2" => Some(ExperimentId::E2),
            "E3" => Some(ExperimentId::E3),
            "E4" => Some(ExperimentId::E4),
            "E5" => Some(ExperimentId::E5),
            "E6" => Some(ExperimentId::E6),
            "E7" => Some(ExperimentId::E7),
            "E8" => Some(ExperimentId::E8),
            _ => None,
        }
    }

    pub fn all() -> [ExperimentId; 8] {
        use ExperimentId::*;
        [E1, E2, E3, E4, E5, E6, E7, E8]
    }

    pub fn name(&self) -> &'static str {
        match self {
            ExperimentId::E1 => "E1",
            ExperimentId::E2 => "E2",
            ExperimentId::E3 => "E3",
            ExperimentId::E4 => "E4",
            ExperimentId::E5 => "E5",
            ExperimentId::E6 => "E6",
            ExperimentId::E7 => "E7",
            ExperimentId::E8 => "E8",
        }
    }
}

/// What to run and how: dimension/degree caps, level range, and the seed.
#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub id: ExperimentId,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub levels: (u32, u32),
    pub seed: u64,
    /// Maximum monomial degree of the form dictionary (capped at 2, where
    /// the exact closed-form norms live).
    pub dict_degree: u32,
}

impl ExperimentSpec {
    pub fn new(id: ExperimentId) -> Self {
        ExperimentSpec {
            id,
            n: None,
            k: None,
            levels: default_levels(id),
            seed: 0,
            dict_degree: 2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.levels.0 > self.levels.1 {
            return Err(ChainletError::InvalidInput(
                "levels must be increasing".into(),
            ));
        }
        if let Some(n) = self.n {
            if n == 0 || n > DIM_CAP {
                return Err(ChainletError::DimensionCap { n, cap: DIM_CAP });
            }
            if let Some(k) = self.k {
                if k > n {
                    return Err(ChainletError::GradeMismatch { expected: n, got: k });
                }
            }
        }
        Ok(())
    }

    pub fn level_range(&self) -> std::ops::RangeInclusive<u32> {
        self.levels.0..=self.levels.1
    }
}

fn default_levels(id: ExperimentId) -> (u32, u32) {
    match id {
        ExperimentId::E1 | ExperimentId::E6 | ExperimentId::E7 => (0, 0),
        ExperimentId::E2 => (0, 8),
        ExperimentId::E3 | ExperimentId::E4 => (0, 7),
        ExperimentId::E5 => (0, 5),
        ExperimentId::E8 => (2, 7),
    }
}

pub fn run(spec: &ExperimentSpec) -> Result<ExperimentTable> {
    spec.validate()?;
    match spec.id {
        ExperimentId::E1 => e1::run(spec),
        ExperimentId::E2 => e2::run(spec),
        ExperimentId::E3 => e3::run(spec),
        ExperimentId::E4 => e4::run(spec),
        ExperimentId::E5 => e5::run(spec),
        ExperimentId::E6 => e6::run(spec),
        ExperimentId::E7 => e7::run(spec),
        ExperimentId::E8 => e8::run(spec),
    }
}

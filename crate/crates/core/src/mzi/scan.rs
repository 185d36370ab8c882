use rayon::prelude::*;

use super::{delta_limit_oracle, MziPhases, MziScheme, SppParams};
use crate::error::{Error, Result};

/// Coincidence probability without two-photon interference.
pub const REFERENCE_PC: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScanParameter {
    Zeta,
    AlphaPlus,
}

impl ScanParameter {
    pub fn name(self) -> &'static str {
        match self {
            ScanParameter::Zeta => "zeta",
            ScanParameter::AlphaPlus => "alpha_plus",
        }
    }
}

impl std::str::FromStr for ScanParameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zeta" => Ok(ScanParameter::Zeta),
            "alpha_plus" | "alpha-plus" => Ok(ScanParameter::AlphaPlus),
            _ => Err(Error::param(
                "parameter",
                format!("expected zeta or alpha_plus, got `{s}`"),
            )),
        }
    }
}

/// A uniform scan over `steps` values from `lo` to `hi` inclusive, with the
/// other parameter held at its value in `spp` / `phases`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanSpec {
    pub parameter: ScanParameter,
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
    pub spp: SppParams,
    pub phases: MziPhases,
}

impl ScanSpec {
    pub fn validate(&self) -> Result<()> {
        if self.steps < 2 {
            return Err(Error::param("steps", format!("need at least 2, got {}", self.steps)));
        }
        if !(self.lo.is_finite() && self.hi.is_finite() && self.lo < self.hi) {
            return Err(Error::param(
                "range",
                format!("need lo < hi, got [{}, {}]", self.lo, self.hi),
            ));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.hi
                } else {
                    self.lo + (self.hi - self.lo) * i as f64 / last
                }
            })
            .collect()
    }

    fn point(&self, value: f64) -> (SppParams, MziPhases) {
        match self.parameter {
            ScanParameter::Zeta => (SppParams::new(value), self.phases),
            ScanParameter::AlphaPlus => (
                self.spp,
                MziPhases {
                    alpha_plus: value,
                    ..self.phases
                },
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowFlag {
    Ok,
    Degenerate,
}

impl RowFlag {
    pub fn name(self) -> &'static str {
        match self {
            RowFlag::Ok => "ok",
            RowFlag::Degenerate => "degenerate",
        }
    }
}

/// One scan point. Values are absent on degenerate rows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub parameter: f64,
    pub conditional_pc: Option<f64>,
    pub oracle_pc: Option<f64>,
    pub throughput: Option<f64>,
    pub flag: RowFlag,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult {
    pub spec: ScanSpec,
    pub rows: Vec<ScanRow>,
    pub reference_pc: f64,
}

impl ScanResult {
    /// Largest `|full - oracle|` over the non-degenerate rows.
    pub fn max_oracle_deviation(&self) -> f64 {
        self.rows
            .iter()
            .filter_map(|r| Some((r.conditional_pc? - r.oracle_pc?).abs()))
            .fold(0.0, f64::max)
    }
}

fn degenerate<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_degenerate() => Ok(None),
        Err(e) => Err(e),
    }
}

/// Evaluates the scheme and the δ-limit oracle at every scan value. Rows are
/// computed in parallel and returned in parameter order.
pub fn scan(scheme: &MziScheme, spec: &ScanSpec) -> Result<ScanResult> {
    spec.validate()?;
    let rows = spec
        .values()
        .into_par_iter()
        .map(|value| {
            let (spp, phases) = spec.point(value);
            let full = degenerate(scheme.evaluate(spp, phases))?;
            let oracle = degenerate(delta_limit_oracle(spp, phases))?;
            Ok(ScanRow {
                parameter: value,
                conditional_pc: full.map(|r| r.conditional_pc),
                oracle_pc: oracle,
                throughput: full.map(|r| r.throughput),
                flag: if full.is_some() && oracle.is_some() {
                    RowFlag::Ok
                } else {
                    RowFlag::Degenerate
                },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanResult {
        spec: *spec,
        rows,
        reference_pc: REFERENCE_PC,
    })
}

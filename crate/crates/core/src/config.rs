//! Run-time defaults shared by the command-line front end.

use std::fmt;

use crate::error::{Error, Result};
use crate::isotopy::VerifyOptions;

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    /// Truncation precision `T` applied to every parsed branch.
    pub precision: u32,
    /// RK4 step.
    pub step: f64,
    pub samples: usize,
    pub radius: f64,
    pub tol: f64,
    pub exit_status: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            precision: 64,
            step: 1e-3,
            samples: 40,
            radius: 0.05,
            tol: 1e-3,
            exit_status: false,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidArgument(format!("{what} must be positive")));
        if self.precision == 0 {
            return bad("precision");
        }
        if !(self.step > 0.0 && self.step <= 1.0) {
            return Err(Error::InvalidArgument("step must lie in (0, 1]".into()));
        }
        if self.samples == 0 {
            return bad("samples");
        }
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return bad("radius");
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return bad("tol");
        }
        Ok(())
    }

    /// Size of the global RK4 error at this step, up to a constant.
    pub fn integrator_budget(&self) -> f64 {
        self.step.powi(4)
    }

    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.tol <= self.integrator_budget() {
            out.push(format!(
                "tolerance {:e} is below the integrator error budget {:e}",
                self.tol,
                self.integrator_budget()
            ));
        }
        out
    }

    pub fn verify_options(&self) -> VerifyOptions {
        VerifyOptions {
            samples: self.samples,
            radius: self.radius,
            tol: self.tol,
            step: self.step,
        }
    }
}

impl fmt::Display for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "precision={}", self.precision)?;
        writeln!(f, "step={:e}", self.step)?;
        writeln!(f, "samples={}", self.samples)?;
        writeln!(f, "radius={}", self.radius)?;
        writeln!(f, "tol={:e}", self.tol)?;
        writeln!(f, "exit_status={}", self.exit_status)
    }
}

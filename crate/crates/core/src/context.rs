use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Acceleration {
    None,
    AlternatingAverage,
    EulerMaclaurin,
}

/// Numeric settings threaded through every evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrecisionContext {
    pub target_digits: u32,
    pub guard_digits: u32,
    pub max_terms: u64,
    pub acceleration: Acceleration,
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext {
            target_digits: 30,
            guard_digits: 15,
            max_terms: 1_000_000,
            acceleration: Acceleration::EulerMaclaurin,
        }
    }
}

impl PrecisionContext {
    pub fn new(target_digits: u32) -> Self {
        PrecisionContext { target_digits, ..Default::default() }
    }

    pub fn with_acceleration(mut self, acceleration: Acceleration) -> Self {
        self.acceleration = acceleration;
        self
    }

    pub fn with_max_terms(mut self, max_terms: u64) -> Self {
        self.max_terms = max_terms;
        self
    }

    pub fn with_guard_digits(mut self, guard_digits: u32) -> Self {
        self.guard_digits = guard_digits;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.target_digits == 0 {
            return Err(Error::InvalidContext("target_digits must be positive".into()));
        }
        if self.guard_digits < 10 {
            return Err(Error::InvalidContext("guard_digits must be at least 10".into()));
        }
        if self.max_terms < 1000 {
            return Err(Error::InvalidContext("max_terms must be at least 1000".into()));
        }
        Ok(())
    }

    /// Working precision in bits.
    pub fn bits(&self) -> u32 {
        let digits = f64::from(self.target_digits + self.guard_digits);
        (digits * std::f64::consts::LOG2_10).ceil() as u32 + 8
    }

    /// Bits corresponding to the target accuracy alone.
    pub fn target_bits(&self) -> u32 {
        (f64::from(self.target_digits) * std::f64::consts::LOG2_10).ceil() as u32 + 4
    }

    /// 10^-target_digits as a low precision float.
    pub fn target_radius(&self) -> Float {
        let ten = Float::with_val(64, 10);
        ten.pow(-(self.target_digits as i32))
    }
}

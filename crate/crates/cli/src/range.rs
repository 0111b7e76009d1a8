use std::str::FromStr;

use anyhow::{bail, Context};

/// Inclusive range `a:b:step` of indices `n >= 1`. `a` alone and `a:b`
/// (step 1) are accepted too.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NRange {
    pub start: u64,
    pub end: u64,
    pub step: u64,
}

impl NRange {
    pub fn values(&self) -> Vec<u64> {
        (self.start..=self.end).step_by(self.step as usize).collect()
    }
}

impl FromStr for NRange {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |p: &str| -> anyhow::Result<u64> {
            p.trim()
                .parse::<u64>()
                .with_context(|| format!("range component {p:?} is not a non-negative integer"))
        };
        let (start, end, step) = match parts.as_slice() {
            [a] => (num(a)?, num(a)?, 1),
            [a, b] => (num(a)?, num(b)?, 1),
            [a, b, c] => (num(a)?, num(b)?, num(c)?),
            _ => bail!("range must look like a:b:step, got {s:?}"),
        };
        if start == 0 {
            bail!("range must start at 1 or later");
        }
        if end < start {
            bail!("range end {end} is before its start {start}");
        }
        if step == 0 {
            bail!("range step must be positive");
        }
        Ok(Self { start, end, step })
    }
}

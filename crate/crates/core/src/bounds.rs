//! Desk-scale resource bounds.
//!
//! `QWREATH_MAX_LETTERS` overrides the moment-length, ν-letter and u-letter
//! bounds at once; the partition bound is fixed.

use crate::error::{QwError, Result};

pub const MAX_PARTITION_K: usize = 12;
pub const DEFAULT_MOMENT_LEN: usize = 8;
pub const DEFAULT_NU_LETTERS: usize = 8;
pub const DEFAULT_U_LETTERS: usize = 10;

fn env_override() -> Option<usize> {
    std::env::var("QWREATH_MAX_LETTERS").ok()?.trim().parse().ok()
}

pub fn max_moment_len() -> usize {
    env_override().unwrap_or(DEFAULT_MOMENT_LEN)
}

pub fn max_nu_letters() -> usize {
    env_override().unwrap_or(DEFAULT_NU_LETTERS)
}

pub fn max_u_letters() -> usize {
    env_override().unwrap_or(DEFAULT_U_LETTERS)
}

pub fn check(what: &str, value: usize, limit: usize) -> Result<()> {
    if value > limit {
        return Err(QwError::Bound(format!("{what} = {value} exceeds {limit}")));
    }
    Ok(())
}

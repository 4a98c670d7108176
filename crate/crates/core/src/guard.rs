//! Enumeration size guards, overridable through `SNT_MAX_ENUM`.

use crate::error::{Error, Result};

pub const ENV_VAR: &str = "SNT_MAX_ENUM";

/// The guard limit: `SNT_MAX_ENUM` if set to a positive integer, otherwise `default`.
pub fn enum_limit(default: u128) -> u128 {
    std::env::var(ENV_VAR).ok().and_then(|s| s.trim().parse::<u128>().ok()).filter(|&x| x > 0).unwrap_or(default)
}

pub fn check_size(what: &str, size: u128, limit: u128) -> Result<()> {
    if size > limit {
        return Err(Error::SizeGuard { what: what.to_string(), size, limit });
    }
    Ok(())
}

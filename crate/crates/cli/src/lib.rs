//! Reports, JSON/CSV file formats and experiments built on
//! [`rank3_etf_core`].

pub mod experiment;
pub mod io;
pub mod report;

use anyhow::{bail, Context};
use rank3_etf_core::Limits;

/// Environment variable that raises every vertex guard.
pub const MAX_VERTICES_ENV: &str = "ETF_RANK3_MAX_VERTICES";

/// Default limits, with the vertex guards overridden from
/// [`MAX_VERTICES_ENV`] when it is set.
pub fn limits_from_env() -> anyhow::Result<Limits> {
    match std::env::var(MAX_VERTICES_ENV) {
        Ok(raw) => {
            let n: usize = raw
                .trim()
                .parse()
                .with_context(|| format!("{MAX_VERTICES_ENV} must be a positive integer, got {raw:?}"))?;
            if n == 0 {
                bail!("{MAX_VERTICES_ENV} must be positive");
            }
            Ok(Limits::with_max_vertices(n))
        }
        Err(std::env::VarError::NotPresent) => Ok(Limits::default()),
        Err(e) => Err(e).context(MAX_VERTICES_ENV),
    }
}

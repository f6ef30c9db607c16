//! Command implementations behind the `weyl` binary: operator I/O,
//! the deterministic verification suite, and the benchmark harness.

pub mod bench;
pub mod commands;
pub mod verify;

use weyl::{Result, WeylError};

/// Parses a comma-separated profile grid like `8x8,16x4`.
pub fn parse_profiles(s: &str) -> Result<Vec<(usize, usize)>> {
    s.split(',')
        .map(|item| {
            let item = item.trim();
            let (d, r) = item
                .split_once('x')
                .ok_or_else(|| WeylError::Parse(format!("bad profile {item:?}; expected DxR")))?;
            let d = d
                .trim()
                .parse()
                .map_err(|_| WeylError::Parse(format!("bad profile {item:?}")))?;
            let r = r
                .trim()
                .parse()
                .map_err(|_| WeylError::Parse(format!("bad profile {item:?}")))?;
            Ok((d, r))
        })
        .collect()
}

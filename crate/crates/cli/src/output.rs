use std::io::Write;
use std::path::Path;

use tempfile::NamedTempFile;

/// Error with the process exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

pub const EXIT_UNKNOWN_SUITE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_SIZE_LIMIT: u8 = 3;
pub const EXIT_VIOLATIONS: u8 = 4;

impl Failure {
    pub fn usage(msg: impl Into<String>) -> Self {
        Failure { code: EXIT_INPUT, message: msg.into() }
    }

    pub fn input(msg: impl Into<String>) -> Self {
        Failure { code: EXIT_INPUT, message: msg.into() }
    }

    pub fn unknown_suite(msg: impl Into<String>) -> Self {
        Failure { code: EXIT_UNKNOWN_SUITE, message: msg.into() }
    }

    pub fn violations(count: usize) -> Self {
        Failure {
            code: EXIT_VIOLATIONS,
            message: format!("{count} violations"),
        }
    }
}

impl From<qm_core::Error> for Failure {
    fn from(e: qm_core::Error) -> Self {
        let code = match e {
            qm_core::Error::SizeLimit { .. } => EXIT_SIZE_LIMIT,
            _ => EXIT_INPUT,
        };
        let mut message = e.to_string();
        if code == EXIT_SIZE_LIMIT {
            message.push_str(" (raise the limit or pass --allow-heuristic)");
        }
        Failure { code, message }
    }
}

/// Writes to `path` through a temporary file in the same directory, so a
/// failed run never leaves a partial file; stdout if `path` is `None`.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    let Some(path) = path else {
        print!("{text}");
        return Ok(());
    };
    let io = |e: std::io::Error| Failure::input(format!("{}: {e}", path.display()));
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(text.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

use std::fmt;
use std::path::Path;

use scaling_witness::Error;

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_IO: u8 = 3;
pub const EXIT_MALFORMED: u8 = 4;
pub const EXIT_COMPUTE: u8 = 5;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn malformed(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_MALFORMED,
            message: message.into(),
        }
    }

    pub fn io(path: &Path, err: std::io::Error) -> Self {
        Self {
            code: EXIT_IO,
            message: format!("{}: {err}", path.display()),
        }
    }

    /// Library error, attributed to whichever flag supplied the bad input.
    pub fn core(context: &str, err: Error) -> Self {
        let code = match err {
            Error::Malformed(_) => EXIT_MALFORMED,
            Error::NoConvergence { .. } | Error::NotUnitary { .. } => EXIT_COMPUTE,
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: format!("{context}: {err}"),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

pub type CliResult<T> = std::result::Result<T, Failure>;

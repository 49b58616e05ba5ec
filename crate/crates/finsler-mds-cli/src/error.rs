use finsler_mds::Error;

/// Exit code for command-line and configuration mistakes.
pub const EXIT_USAGE: i32 = 2;
/// Exit code for numeric failures (divergence, non-finite values, data
/// that violates a numeric precondition).
pub const EXIT_NUMERIC: i32 = 3;
/// Exit code for file-system and parse failures.
pub const EXIT_IO: i32 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        let code = match &err {
            Error::InvalidArgument(_) | Error::DimensionMismatch { .. } => EXIT_USAGE,
            Error::Io { .. } | Error::Parse { .. } => EXIT_IO,
            _ => EXIT_NUMERIC,
        };
        CliError {
            code,
            message: err.to_string(),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
